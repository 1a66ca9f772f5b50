//! Four-letter signal alphabets generated by local unitaries on Alice's
//! qubit: the standard Pauli family and the equally-distant family, their
//! overlap structure, the closure (product) table, and a brute-force search
//! that re-derives the equally-distant construction numerically.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{c, cr, tensor_with_identity_on_b, Operator2};
use crate::states::{DensityMatrix, PureState, SchmidtState};

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    nx: f64,
    ny: f64,
    nz: f64,
}

impl BlochVector {
    /// Requires unit norm within 1e-12.
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        if !(nx.is_finite() && ny.is_finite() && nz.is_finite()) {
            return Err(Error::NonFiniteInput("BlochVector"));
        }
        let norm_sq = nx * nx + ny * ny + nz * nz;
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized("BlochVector"));
        }
        Ok(Self { nx, ny, nz })
    }

    /// `(sin theta cos phi, sin theta sin phi, cos theta)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            nx: theta.sin() * phi.cos(),
            ny: theta.sin() * phi.sin(),
            nz: theta.cos(),
        }
    }

    pub fn x_axis() -> Self {
        Self { nx: 1.0, ny: 0.0, nz: 0.0 }
    }

    pub fn y_axis() -> Self {
        Self { nx: 0.0, ny: 1.0, nz: 0.0 }
    }

    pub fn z_axis() -> Self {
        Self { nx: 0.0, ny: 0.0, nz: 1.0 }
    }

    pub fn components(&self) -> (f64, f64, f64) {
        (self.nx, self.ny, self.nz)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.nx * other.nx + self.ny * other.ny + self.nz * other.nz
    }

    pub fn cross(&self, other: &Self) -> (f64, f64, f64) {
        (
            self.ny * other.nz - self.nz * other.ny,
            self.nz * other.nx - self.nx * other.nz,
            self.nx * other.ny - self.ny * other.nx,
        )
    }

    /// `n . sigma` with this module's Pauli convention.
    pub fn dot_sigma(&self) -> Operator2 {
        let mut m = Operator2::zero();
        m.entries[0][0] = cr(self.nz);
        m.entries[0][1] = c(self.nx, self.ny);
        m.entries[1][0] = c(self.nx, -self.ny);
        m.entries[1][1] = cr(-self.nz);
        m
    }
}

/// Element of U(2) in the four-parameter form
/// `exp(i varphi) [cos(psi) 1 + i sin(psi) (n . sigma)]`, kept together with
/// its matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitary {
    varphi: f64,
    psi: f64,
    axis: BlochVector,
    matrix: Operator2,
}

impl LocalUnitary {
    pub fn from_parameters(varphi: f64, psi: f64, axis: BlochVector) -> Self {
        let phase = c(varphi.cos(), varphi.sin());
        let matrix = Operator2::identity()
            .scale(cr(psi.cos()))
            .add(&axis.dot_sigma().scale(c(0.0, psi.sin())))
            .scale(phase);
        Self { varphi, psi, axis, matrix }
    }

    pub fn identity() -> Self {
        Self::from_parameters(0.0, 0.0, BlochVector::z_axis())
    }

    pub fn varphi(&self) -> f64 {
        self.varphi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn axis(&self) -> &BlochVector {
        &self.axis
    }

    pub fn matrix(&self) -> &Operator2 {
        &self.matrix
    }
}

/// General U(2) element from the four angles; the rotation axis is
/// `(sin theta cos phi, sin theta sin phi, cos theta)`.
pub fn general_u2(varphi: f64, psi: f64, theta: f64, phi_axis: f64) -> LocalUnitary {
    LocalUnitary::from_parameters(varphi, psi, BlochVector::from_angles(theta, phi_axis))
}

/// The standard generators `{1, sigma_x, sigma_y, sigma_z}`.
pub fn standard_generators() -> [LocalUnitary; 4] {
    [
        LocalUnitary::identity(),
        LocalUnitary::from_parameters(-FRAC_PI_2, FRAC_PI_2, BlochVector::x_axis()),
        LocalUnitary::from_parameters(-FRAC_PI_2, FRAC_PI_2, BlochVector::y_axis()),
        LocalUnitary::from_parameters(-FRAC_PI_2, FRAC_PI_2, BlochVector::z_axis()),
    ]
}

/// The orthonormal axis triad of the equally-distant generators.
pub fn canonical_axes() -> [BlochVector; 3] {
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    let s2 = 2f64.sqrt();
    [
        BlochVector::new(2.0 / s6, 0.0, 1.0 / s3).expect("unit"),
        BlochVector::new(-1.0 / s6, 1.0 / s2, 1.0 / s3).expect("unit"),
        BlochVector::new(1.0 / s6, 1.0 / s2, -1.0 / s3).expect("unit"),
    ]
}

/// The equally-distant generators `{1, n_2.sigma, n_3.sigma, n_4.sigma}`.
pub fn equally_distant_generators() -> [LocalUnitary; 4] {
    let axes = canonical_axes();
    [
        LocalUnitary::identity(),
        LocalUnitary::from_parameters(-FRAC_PI_2, FRAC_PI_2, axes[0]),
        LocalUnitary::from_parameters(-FRAC_PI_2, FRAC_PI_2, axes[1]),
        LocalUnitary::from_parameters(-FRAC_PI_2, FRAC_PI_2, axes[2]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphabetKind {
    Standard,
    EquallyDistant,
    Custom,
}

/// Letter states: pure vectors for a pure reference, density matrices
/// otherwise.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // a handful of alphabets exist at a time
pub enum Letters {
    Pure([PureState; 4]),
    Mixed([DensityMatrix; 4]),
}

/// Four generating local unitaries together with the four letter states they
/// produce from a shared reference.
#[derive(Debug, Clone)]
pub struct Alphabet {
    generators: [LocalUnitary; 4],
    letters: Letters,
    kind: AlphabetKind,
}

impl Alphabet {
    /// Applies each generator (lifted to Alice's side) to a pure reference.
    pub fn from_pure_reference(
        generators: [LocalUnitary; 4],
        kind: AlphabetKind,
        reference: &PureState,
    ) -> Result<Self> {
        let mut letters = Vec::with_capacity(4);
        for g in &generators {
            let lifted = tensor_with_identity_on_b(g.matrix());
            letters.push(reference.apply(&lifted)?);
        }
        let letters: [PureState; 4] = letters.try_into().expect("four letters");
        Ok(Self {
            generators,
            letters: Letters::Pure(letters),
            kind,
        })
    }

    /// Conjugates a mixed reference by each lifted generator.
    pub fn from_mixed_reference(
        generators: [LocalUnitary; 4],
        kind: AlphabetKind,
        reference: &DensityMatrix,
    ) -> Result<Self> {
        let mut letters = Vec::with_capacity(4);
        for g in &generators {
            let lifted = tensor_with_identity_on_b(g.matrix());
            let rotated = lifted.mul(reference.operator()).mul(&lifted.adjoint());
            letters.push(DensityMatrix::new(rotated)?);
        }
        let letters: [DensityMatrix; 4] = letters.try_into().expect("four letters");
        Ok(Self {
            generators,
            letters: Letters::Mixed(letters),
            kind,
        })
    }

    pub fn standard(reference: &SchmidtState) -> Self {
        Self::from_pure_reference(standard_generators(), AlphabetKind::Standard, &reference.to_vector())
            .expect("unitary generators preserve normalization")
    }

    pub fn equally_distant(reference: &SchmidtState) -> Self {
        Self::from_pure_reference(
            equally_distant_generators(),
            AlphabetKind::EquallyDistant,
            &reference.to_vector(),
        )
        .expect("unitary generators preserve normalization")
    }

    pub fn generators(&self) -> &[LocalUnitary; 4] {
        &self.generators
    }

    pub fn letters(&self) -> &Letters {
        &self.letters
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.letters, Letters::Pure(_))
    }

    /// Letters as density operators (projectors for pure letters).
    pub fn letter_densities(&self) -> [DensityMatrix; 4] {
        match &self.letters {
            Letters::Pure(vs) => [
                vs[0].projector(),
                vs[1].projector(),
                vs[2].projector(),
                vs[3].projector(),
            ],
            Letters::Mixed(ds) => *ds,
        }
    }

    /// Pure-state overlap matrix `O_kl = |<psi_k|psi_l>|^2`.
    ///
    /// Mixed letters have no pure overlap; use [`mixed_overlap`] instead.
    pub fn overlap_matrix(&self) -> Result<[[f64; 4]; 4]> {
        let vs = match &self.letters {
            Letters::Pure(vs) => vs,
            Letters::Mixed(_) => return Err(Error::MixedLettersUseMixedOverlap),
        };
        let mut o = [[0.0f64; 4]; 4];
        for k in 0..4 {
            for l in 0..4 {
                o[k][l] = vs[k].overlap(&vs[l]);
            }
        }
        Ok(o)
    }
}

/// `Tr(rho_k rho_l)`.
pub fn mixed_overlap(rho_k: &DensityMatrix, rho_l: &DensityMatrix) -> f64 {
    rho_k.operator().mul(rho_l.operator()).trace().re
}

/// One entry of the closure table: `g_k g_l = phase * g_index` with the
/// 1-based letter index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureEntry {
    pub index: usize,
    pub phase: Complex64,
}

/// For each ordered pair `(k, l)` finds the member (smallest index on a tie)
/// and unimodular phase with `g_k g_l = phase * g_m`, or [`Error::NotClosed`]
/// if some product differs from every member by more than 1e-9.
pub fn closure_table(generators: &[LocalUnitary; 4]) -> Result<[[ClosureEntry; 4]; 4]> {
    let mut table = [[ClosureEntry { index: 0, phase: cr(0.0) }; 4]; 4];
    for k in 0..4 {
        for l in 0..4 {
            let product = generators[k].matrix().mul(generators[l].matrix());
            table[k][l] = match_member(&product, generators)?;
        }
    }
    Ok(table)
}

fn match_member(product: &Operator2, generators: &[LocalUnitary; 4]) -> Result<ClosureEntry> {
    for (m, g) in generators.iter().enumerate() {
        // Fix the phase against the largest entry of the candidate.
        let mut pivot = (0usize, 0usize);
        let mut pivot_mag = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mag = g.matrix().entries[i][j].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot = (i, j);
                }
            }
        }
        if pivot_mag < 1e-12 {
            continue;
        }
        let phase = product.entries[pivot.0][pivot.1] / g.matrix().entries[pivot.0][pivot.1];
        if product.max_abs_diff(&g.matrix().scale(phase)) <= 1e-9 && (phase.norm() - 1.0).abs() <= 1e-12 {
            return Ok(ClosureEntry { index: m + 1, phase });
        }
    }
    Err(Error::NotClosed)
}

/// Outcome of the numerical minimization of the worst pairwise overlap.
#[derive(Debug, Clone, Copy)]
pub struct SearchReport {
    /// `(psi, theta, phi)` for each of the three searched generators.
    pub angles: [[f64; 3]; 3],
    /// Worst pairwise overlap achieved.
    pub achieved_overlap: f64,
    /// `Delta^2 / 3`, the overlap of the closed-form construction.
    pub target_overlap: f64,
    /// `cos^2 theta` reported for each searched generator.
    pub cos_sq_theta: [f64; 3],
}

/// Minimizes `max_{k != l} |<psi_k|psi_l>|^2` over the nine angles of three
/// generators (the first generator stays the identity), for the Schmidt
/// reference with `Delta^2 = delta_sq`.
///
/// Multi-start seeded random initialization followed by coordinate-wise
/// golden-section refinement with span halving; deterministic for a fixed
/// seed; best restart wins, earlier restart on a tie.
pub fn search_min_max_overlap(delta_sq: f64, restarts: u32, seed: u64) -> Result<SearchReport> {
    if !delta_sq.is_finite() || !(0.0..=1.0).contains(&delta_sq) {
        return Err(Error::ParameterOutOfRange { name: "delta_sq", value: delta_sq });
    }
    if restarts == 0 {
        return Err(Error::ParameterOutOfRange { name: "restarts", value: 0.0 });
    }
    let alpha_sq = (1.0 + delta_sq.sqrt()) / 2.0;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_angles = [0.0f64; 9];
    let mut best_value = f64::INFINITY;
    for _ in 0..restarts {
        let mut angles = [0.0f64; 9];
        for k in 0..3 {
            angles[3 * k] = rng.gen_range(0.0..PI);
            angles[3 * k + 1] = rng.gen_range(0.0..PI);
            angles[3 * k + 2] = rng.gen_range(0.0..(2.0 * PI));
        }
        let value = refine(&mut angles, alpha_sq);
        if value < best_value {
            best_value = value;
            best_angles = angles;
        }
    }

    let mut angles = [[0.0f64; 3]; 3];
    let mut cos_sq_theta = [0.0f64; 3];
    for k in 0..3 {
        angles[k] = [best_angles[3 * k], best_angles[3 * k + 1], best_angles[3 * k + 2]];
        cos_sq_theta[k] = best_angles[3 * k + 1].cos().powi(2);
    }
    debug_assert!((best_value - worst_overlap(&best_angles, alpha_sq)).abs() < 1e-15);
    Ok(SearchReport {
        angles,
        achieved_overlap: worst_overlap(&best_angles, alpha_sq),
        target_overlap: delta_sq / 3.0,
        cos_sq_theta,
    })
}

/// The six pairwise overlaps of the four letters for the given nine angles.
/// Overlaps only need the diagonal of the 2x2 pair products:
/// `<psi_k|psi_l> = |alpha|^2 W_00 + |beta|^2 W_11` with `W = U_k^dag U_l`.
fn pair_overlaps(angles: &[f64; 9], alpha_sq: f64) -> [f64; 6] {
    let beta_sq = 1.0 - alpha_sq;
    let mut mats = [Operator2::identity(); 4];
    for k in 0..3 {
        let u = general_u2(0.0, angles[3 * k], angles[3 * k + 1], angles[3 * k + 2]);
        mats[k + 1] = *u.matrix();
    }
    let mut out = [0.0f64; 6];
    let mut idx = 0;
    for k in 0..4 {
        for l in (k + 1)..4 {
            let w = mats[k].adjoint().mul(&mats[l]);
            let amp = w.entries[0][0] * alpha_sq + w.entries[1][1] * beta_sq;
            out[idx] = amp.norm_sqr();
            idx += 1;
        }
    }
    out
}

fn worst_overlap(angles: &[f64; 9], alpha_sq: f64) -> f64 {
    pair_overlaps(angles, alpha_sq).iter().fold(0.0, |a, &b| a.max(b))
}

/// Coordinate-wise golden-section descent with span halving on either the
/// true worst overlap or a p-norm smoothing of it.
fn descend(
    angles: &mut [f64; 9],
    alpha_sq: f64,
    power: Option<i32>,
    max_sweeps: usize,
    span_floor: f64,
) -> f64 {
    let objective = |x: &[f64; 9]| -> f64 {
        let o = pair_overlaps(x, alpha_sq);
        match power {
            Some(p) => o.iter().map(|v| v.powi(p)).sum::<f64>().powf(1.0 / p as f64),
            None => o.iter().fold(0.0f64, |a, &b| a.max(b)),
        }
    };
    let mut best = objective(angles);
    let mut span = FRAC_PI_2;
    let mut sweeps = 0;
    while span > span_floor && sweeps < max_sweeps {
        sweeps += 1;
        let mut improved = false;
        for i in 0..9 {
            let center = angles[i];
            let eval = |x: f64| {
                let mut trial = *angles;
                trial[i] = x;
                objective(&trial)
            };
            let (x, v) = golden_min(eval, center - span, center + span);
            if v < best - 1e-16 {
                angles[i] = x;
                best = v;
                improved = true;
            }
        }
        if !improved {
            span *= 0.5;
        }
    }
    best
}

fn refine(angles: &mut [f64; 9], alpha_sq: f64) -> f64 {
    // The worst-pair objective has non-smooth ridges where two overlaps
    // cross; annealed p-norm smoothing steers the coordinate search into
    // the equalizing basin before the exact objective takes over.
    for power in [2, 8, 32] {
        descend(angles, alpha_sq, Some(power), 40, 1e-3);
    }
    descend(angles, alpha_sq, None, 200, 1e-9)
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..60 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
