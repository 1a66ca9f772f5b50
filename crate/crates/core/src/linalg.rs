//! Dense complex kernel for 2x2 and 4x4 operators.
//!
//! Two-qubit operators use the fixed product-basis ordering
//! `{|00>, |10>, |01>, |11>}` with `index(a, b) = a + 2b`, where `a` is
//! Alice's bit and `b` is Bob's. Every module in this crate inherits that
//! ordering; nothing reorders it.
//!
//! The Pauli y operator follows the sign `sigma_y = i(|0><1| - |1><0|)`,
//! i.e. the matrix `[[0, i], [-i, 0]]`. With that choice the product rule
//! reads `sigma_mu sigma_nu = delta_mu_nu 1 - i eps_mu_nu_kappa sigma_kappa`.
//! The sign is unobservable in overlaps, spectra and channel outputs.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance below which a matrix counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance on the unit-trace check for density operators.
pub const TRACE_TOL: f64 = 1e-9;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub(crate) fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Basis index of the product ket `|a>_A |b>_B`.
#[inline]
pub const fn basis_index(a: usize, b: usize) -> usize {
    a + 2 * b
}

/// A 2x2 complex operator acting on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator2 {
    pub entries: [[Complex64; 2]; 2],
}

impl Operator2 {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); 2]; 2],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.entries[0][0] = cr(1.0);
        m.entries[1][1] = cr(1.0);
        m
    }

    /// `sigma_x = |0><1| + |1><0|`.
    pub fn pauli_x() -> Self {
        let mut m = Self::zero();
        m.entries[0][1] = cr(1.0);
        m.entries[1][0] = cr(1.0);
        m
    }

    /// `sigma_y = i(|0><1| - |1><0|)`; see the module docs for the sign.
    pub fn pauli_y() -> Self {
        let mut m = Self::zero();
        m.entries[0][1] = c(0.0, 1.0);
        m.entries[1][0] = c(0.0, -1.0);
        m
    }

    /// `sigma_z = |0><0| - |1><1|`.
    pub fn pauli_z() -> Self {
        let mut m = Self::zero();
        m.entries[0][0] = cr(1.0);
        m.entries[1][1] = cr(-1.0);
        m
    }

    /// The three Pauli operators indexed by axis `(x, y, z)`.
    pub fn paulis() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += self.entries[i][k] * rhs.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= factor;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - rhs.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_finite() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_finite() && self.mul(&self.adjoint()).max_abs_diff(&Self::identity()) <= tol
    }

    /// Eigenvalues of a Hermitian 2x2 operator, descending (closed form).
    pub fn hermitian_eigenvalues(&self) -> Result<[f64; 2]> {
        if !self.is_finite() {
            return Err(Error::NonFiniteInput("Operator2"));
        }
        if !self.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::NonHermitianInput);
        }
        let mean = 0.5 * (self.entries[0][0].re + self.entries[1][1].re);
        let half_gap = 0.5 * (self.entries[0][0].re - self.entries[1][1].re);
        let radius = (half_gap * half_gap + self.entries[0][1].norm_sqr()).sqrt();
        Ok([mean + radius, mean - radius])
    }
}

/// A 4x4 complex operator on the two-qubit space, in the fixed ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator4 {
    pub entries: [[Complex64; 4]; 4],
}

impl Operator4 {
    pub fn zero() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = cr(1.0);
        }
        m
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.entries[i][i] = cr(d[i]);
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let aik = self.entries[i][k];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    out.entries[i][j] += aik * rhs.entries[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] -= rhs.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= factor;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - rhs.entries[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_finite() && self.max_abs_diff(&self.adjoint()) <= tol
    }
}

/// Lift of a single-qubit operator to Alice's side: `u (x) 1_B`.
pub fn tensor_with_identity_on_b(u: &Operator2) -> Operator4 {
    let mut out = Operator4::zero();
    for a in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                out.entries[basis_index(a, b)][basis_index(a2, b)] = u.entries[a][a2];
            }
        }
    }
    out
}

/// Reduced operator on Alice's qubit, `Tr_B rho`.
///
/// `rho` must be Hermitian within [`HERMITIAN_TOL`] and have unit trace
/// within [`TRACE_TOL`].
pub fn partial_trace_b(rho: &Operator4) -> Result<Operator2> {
    validate_density_like(rho)?;
    let mut out = Operator2::zero();
    for a in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                out.entries[a][a2] += rho.entries[basis_index(a, b)][basis_index(a2, b)];
            }
        }
    }
    Ok(out)
}

/// Reduced operator on Bob's qubit, `Tr_A rho`.
pub fn partial_trace_a(rho: &Operator4) -> Result<Operator2> {
    validate_density_like(rho)?;
    let mut out = Operator2::zero();
    for b in 0..2 {
        for b2 in 0..2 {
            for a in 0..2 {
                out.entries[b][b2] += rho.entries[basis_index(a, b)][basis_index(a, b2)];
            }
        }
    }
    Ok(out)
}

fn validate_density_like(rho: &Operator4) -> Result<()> {
    if !rho.is_finite() {
        return Err(Error::NonFiniteInput("Operator4"));
    }
    if !rho.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitianInput);
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::NotUnitTrace);
    }
    Ok(())
}

/// Eigenvalues of a Hermitian two-qubit operator, sorted descending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianSpectrum {
    eigenvalues: [f64; 4],
}

impl HermitianSpectrum {
    /// Sorts the given values descending.
    pub fn new(mut eigenvalues: [f64; 4]) -> Self {
        eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        Self { eigenvalues }
    }

    pub fn values(&self) -> &[f64; 4] {
        &self.eigenvalues
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(other.eigenvalues.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a Hermitian 4x4 operator via cyclic Jacobi sweeps on the
/// 8x8 real-symmetric embedding `[[X, -Y], [Y, X]]` of `X + iY`.
///
/// The input must be Hermitian within [`HERMITIAN_TOL`] (max entry deviation
/// from its adjoint); otherwise [`Error::NonHermitianInput`] is returned.
pub fn hermitian_eigenvalues(m: &Operator4) -> Result<HermitianSpectrum> {
    if !m.is_finite() {
        return Err(Error::NonFiniteInput("Operator4"));
    }
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::NonHermitianInput);
    }
    // Symmetrize first so floating-point asymmetry cannot leak into the
    // real embedding.
    let h = m.add(&m.adjoint()).scale(cr(0.5));

    let mut a = [[0.0f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = h.entries[i][j];
            a[i][j] = z.re;
            a[i + 4][j + 4] = z.re;
            a[i][j + 4] = -z.im;
            a[i + 4][j] = z.im;
        }
    }
    let mut eig = jacobi_symmetric_eigenvalues(&mut a);
    eig.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    // Each eigenvalue of the complex matrix appears twice in the embedding.
    Ok(HermitianSpectrum::new([eig[0], eig[2], eig[4], eig[6]]))
}

/// Cyclic Jacobi on a real symmetric matrix; runs until the off-diagonal
/// Frobenius norm drops below 1e-14 (relative to the matrix scale), at most
/// 100 sweeps. Returns the diagonal.
fn jacobi_symmetric_eigenvalues(a: &mut [[f64; 8]; 8]) -> [f64; 8] {
    let n = 8;
    let scale = {
        let mut s = 0.0;
        for row in a.iter() {
            for &x in row.iter() {
                s += x * x;
            }
        }
        s.sqrt().max(1.0)
    };

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < 1e-14 * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = cos * aip - sin * aiq;
                    a[i][q] = sin * aip + cos * aiq;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = cos * apj - sin * aqj;
                    a[q][j] = sin * apj + cos * aqj;
                }
            }
        }
    }

    let mut d = [0.0f64; 8];
    for i in 0..n {
        d[i] = a[i][i];
    }
    d
}

/// Von Neumann entropy in bits, `-sum lambda log2 lambda` with `0 log 0 = 0`.
///
/// Accepts spectra of any length (a 2-spectrum for reduced states, a
/// 4-spectrum for two-qubit states). Weights in `[-1e-12, 0)` are clamped to
/// zero; anything more negative, or a total differing from 1 by more than
/// 1e-9, is rejected as [`Error::NotAProbabilitySpectrum`].
pub fn von_neumann_entropy(spectrum: &[f64]) -> Result<f64> {
    if spectrum.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteInput("spectrum"));
    }
    if spectrum.iter().any(|&x| x < -1e-12) {
        return Err(Error::NotAProbabilitySpectrum);
    }
    let clamped: Vec<f64> = spectrum.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotAProbabilitySpectrum);
    }
    Ok(clamped
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum())
}
