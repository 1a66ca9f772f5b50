//! Reference states: Schmidt-form pure states, pure state vectors, density
//! operators, spectral mixtures and Werner-like mixtures.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    cr, hermitian_eigenvalues, Operator4, HERMITIAN_TOL, TRACE_TOL,
};

const NORM_TOL: f64 = 1e-12;

/// Pure two-qubit state in Schmidt form `alpha |00> + beta |11>`.
///
/// The coefficients are accepted as complex, but every derived quantity in
/// this crate depends only on `|alpha|^2` and `|beta|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtState {
    alpha: Complex64,
    beta: Complex64,
}

impl SchmidtState {
    /// Requires `|alpha|^2 + |beta|^2 = 1` within 1e-12.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite()) {
            return Err(Error::NonFiniteInput("SchmidtState"));
        }
        if (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized("SchmidtState"));
        }
        Ok(Self { alpha, beta })
    }

    /// Real parameterization `alpha = sqrt(a)`, `beta = sqrt(1 - a)`.
    pub fn from_alpha_sq(alpha_sq: f64) -> Result<Self> {
        if !alpha_sq.is_finite() || !(0.0..=1.0).contains(&alpha_sq) {
            return Err(Error::ParameterOutOfRange {
                name: "alpha_sq",
                value: alpha_sq,
            });
        }
        Ok(Self {
            alpha: cr(alpha_sq.sqrt()),
            beta: cr((1.0 - alpha_sq).sqrt()),
        })
    }

    pub fn bell() -> Self {
        Self::from_alpha_sq(0.5).expect("0.5 is in range")
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn beta_sq(&self) -> f64 {
        self.beta.norm_sqr()
    }

    /// Entanglement degree `Delta = |alpha|^2 - |beta|^2` (0 at a Bell state,
    /// +-1 at a product state). Derived, never stored.
    pub fn delta(&self) -> f64 {
        self.alpha_sq() - self.beta_sq()
    }

    /// Amplitude vector `(alpha, 0, 0, beta)` in the fixed ordering.
    pub fn to_vector(&self) -> PureState {
        PureState::new([
            self.alpha,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            self.beta,
        ])
        .expect("Schmidt coefficients are normalized")
    }
}

/// Normalized four-amplitude state vector in the fixed ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amplitudes: [Complex64; 4],
}

impl PureState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteInput("PureState"));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized("PureState"));
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|^2`.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Rank-1 projector `|psi><psi|`.
    pub fn projector(&self) -> DensityMatrix {
        let mut m = Operator4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix::new(m).expect("projector of a normalized vector")
    }

    /// Applies a 4x4 operator, renormalizing is not needed for unitaries.
    pub fn apply(&self, op: &Operator4) -> Result<Self> {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *slot += op.entries[i][j] * self.amplitudes[j];
            }
        }
        Self::new(out)
    }
}

/// Validated two-qubit density operator.
///
/// Construction checks hermiticity (1e-10) and unit trace (1e-9); the
/// positivity of the spectrum down to -1e-10 is covered by the property
/// tests rather than re-diagonalizing on every build.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    op: Operator4,
}

impl DensityMatrix {
    pub fn new(op: Operator4) -> Result<Self> {
        if !op.is_finite() {
            return Err(Error::NonFiniteInput("DensityMatrix"));
        }
        if !op.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::NonHermitianInput);
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace);
        }
        Ok(Self { op })
    }

    pub fn operator(&self) -> &Operator4 {
        &self.op
    }

    pub fn maximally_mixed() -> Self {
        Self {
            op: Operator4::identity().scale(cr(0.25)),
        }
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.op.mul(&self.op).trace().re
    }

    pub fn spectrum(&self) -> crate::linalg::HermitianSpectrum {
        hermitian_eigenvalues(&self.op).expect("density matrices are Hermitian")
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        crate::linalg::von_neumann_entropy(self.spectrum().values())
            .expect("density spectra are probability spectra")
    }

    /// Convex combination `sum_k w_k rho_k`; weights must sum to 1.
    pub fn mix(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let mut acc = Operator4::zero();
        for (w, rho) in parts {
            if !w.is_finite() || *w < -1e-12 {
                return Err(Error::InvalidPrior);
            }
            acc = acc.add(&rho.op.scale(cr(*w)));
        }
        Self::new(acc)
    }
}

/// Rank-4 spectral mixture over a fixed orthonormal eigenbasis built from
/// two Schmidt pairs: `(alpha, beta)` spanning the `{|00>, |11>}` block and
/// `(gamma, delta)` spanning the `{|01>, |10>}` block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMixture {
    lambdas: [f64; 4],
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
}

impl SpectralMixture {
    pub fn new(
        lambdas: [f64; 4],
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
    ) -> Result<Self> {
        if lambdas.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteInput("SpectralMixture"));
        }
        if lambdas.iter().any(|&x| x < 0.0) {
            return Err(Error::NotAProbabilitySpectrum);
        }
        let total: f64 = lambdas.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::NotAProbabilitySpectrum);
        }
        if (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized("SpectralMixture alpha/beta"));
        }
        if (gamma.norm_sqr() + delta.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized("SpectralMixture gamma/delta"));
        }
        Ok(Self {
            lambdas,
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn lambdas(&self) -> &[f64; 4] {
        &self.lambdas
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// The four orthonormal eigenvectors, in the fixed amplitude ordering
    /// `(|00>, |10>, |01>, |11>)`:
    ///
    /// ```text
    /// chi_1 = alpha |00> + beta |11>
    /// chi_2 = beta* |00> - alpha* |11>
    /// chi_3 = gamma |01> + delta |10>
    /// chi_4 = delta* |01> - gamma* |10>
    /// ```
    pub fn eigenvectors(&self) -> [PureState; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let chi1 = PureState::new([self.alpha, zero, zero, self.beta]);
        let chi2 = PureState::new([self.beta.conj(), zero, zero, -self.alpha.conj()]);
        let chi3 = PureState::new([zero, self.delta, self.gamma, zero]);
        let chi4 = PureState::new([zero, -self.gamma.conj(), self.delta.conj(), zero]);
        [
            chi1.expect("normalized"),
            chi2.expect("normalized"),
            chi3.expect("normalized"),
            chi4.expect("normalized"),
        ]
    }

    /// `rho = sum_j lambda_j |chi_j><chi_j|`.
    pub fn density(&self) -> DensityMatrix {
        let chis = self.eigenvectors();
        let mut acc = Operator4::zero();
        for (l, chi) in self.lambdas.iter().zip(chis.iter()) {
            acc = acc.add(&chi.projector().operator().scale(cr(*l)));
        }
        DensityMatrix::new(acc).expect("convex mix of projectors")
    }
}

/// `s |psi_1><psi_1| + (1 - s)/4 * 1` for a pure Schmidt reference.
pub fn werner_like(s: f64, reference: &SchmidtState) -> Result<DensityMatrix> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::ParameterOutOfRange { name: "s", value: s });
    }
    let pure = reference.to_vector().projector();
    let op = pure
        .operator()
        .scale(cr(s))
        .add(&Operator4::identity().scale(cr((1.0 - s) / 4.0)));
    DensityMatrix::new(op)
}
