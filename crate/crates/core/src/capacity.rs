//! Holevo quantity, closed-form channel capacities and prior optimization.

use crate::alphabets::Alphabet;
use crate::channels::{apply_pauli_channel, PauliChannelParams};
use crate::error::{Error, Result};
use crate::linalg::{cr, hermitian_eigenvalues, von_neumann_entropy, HermitianSpectrum, Operator4};
use crate::states::{DensityMatrix, SchmidtState, SpectralMixture};

/// Input distribution over the four letters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorDistribution {
    pi: [f64; 4],
}

impl PriorDistribution {
    /// Requires nonnegative weights summing to 1 within 1e-12.
    pub fn new(pi: [f64; 4]) -> Result<Self> {
        if pi.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteInput("PriorDistribution"));
        }
        if pi.iter().any(|&x| x < -1e-15) {
            return Err(Error::InvalidPrior);
        }
        let total: f64 = pi.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPrior);
        }
        Ok(Self {
            pi: [pi[0].max(0.0), pi[1].max(0.0), pi[2].max(0.0), pi[3].max(0.0)],
        })
    }

    pub fn uniform() -> Self {
        Self { pi: [0.25; 4] }
    }

    pub fn weights(&self) -> &[f64; 4] {
        &self.pi
    }
}

/// Holevo quantity of a four-letter ensemble, with the spectra and
/// entropies that went into it.
#[derive(Debug, Clone)]
pub struct CapacityReport {
    pub chi: f64,
    pub prior: PriorDistribution,
    pub avg_entropy: f64,
    pub letter_entropies: [f64; 4],
    pub letter_spectra: [HermitianSpectrum; 4],
}

/// Binary entropy `-p log2 p - (1-p) log2 (1-p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let q = 1.0 - p;
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.log2();
    }
    if q > 0.0 {
        h -= q * q.log2();
    }
    h
}

fn mixture_operator(letters: &[DensityMatrix; 4], prior: &PriorDistribution) -> Operator4 {
    let mut acc = Operator4::zero();
    for (rho, w) in letters.iter().zip(prior.weights().iter()) {
        acc = acc.add(&rho.operator().scale(cr(*w)));
    }
    acc
}

fn entropy_of(op: &Operator4) -> f64 {
    let spec = hermitian_eigenvalues(op).expect("Hermitian by construction");
    von_neumann_entropy(spec.values()).expect("density spectrum")
}

/// `chi(pi) = S(sum_k pi_k rho_k) - sum_k pi_k S(rho_k)` in bits.
pub fn holevo_quantity(letters: &[DensityMatrix; 4], prior: &PriorDistribution) -> CapacityReport {
    let avg = mixture_operator(letters, prior);
    let avg_entropy = entropy_of(&avg);
    let mut letter_entropies = [0.0f64; 4];
    let mut spectra = Vec::with_capacity(4);
    for (i, rho) in letters.iter().enumerate() {
        let spec = rho.spectrum();
        letter_entropies[i] = von_neumann_entropy(spec.values()).expect("density spectrum");
        spectra.push(spec);
    }
    let weighted: f64 = prior
        .weights()
        .iter()
        .zip(letter_entropies.iter())
        .map(|(w, s)| w * s)
        .sum();
    let mut chi = avg_entropy - weighted;
    // Floating-point noise on degenerate ensembles can land a hair below 0.
    if chi < 0.0 && chi > -1e-10 {
        chi = 0.0;
    }
    CapacityReport {
        chi,
        prior: *prior,
        avg_entropy,
        letter_entropies,
        letter_spectra: spectra.try_into().expect("four spectra"),
    }
}

/// Ideal-channel capacity for a pure Schmidt reference:
/// `C = 1 - |alpha|^2 log2 |alpha|^2 - |beta|^2 log2 |beta|^2`.
pub fn ideal_capacity_pure(reference: &SchmidtState) -> f64 {
    1.0 + binary_entropy(reference.alpha_sq())
}

/// Ideal-channel capacity for a spectral-mixture reference at the uniform
/// prior: `C = 1 + S(rho_second) - S(rho)`.
///
/// Averaging the four rotated copies of any state leaves `(1/2) (x) rho_B`,
/// so the ensemble entropy is one bit plus the entropy of the marginal of
/// the qubit that stays behind (the second qubit), while every letter keeps
/// the entropy of the reference mixture.
pub fn ideal_capacity_mixed(mixture: &SpectralMixture) -> f64 {
    let a = mixture.alpha().norm_sqr();
    let g = mixture.gamma().norm_sqr();
    let l = mixture.lambdas();
    // Diagonal of the second qubit's reduced state.
    let x = l[0] * a + l[1] * (1.0 - a) + l[2] * (1.0 - g) + l[3] * g;
    let mixture_entropy: f64 = l
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.log2())
        .sum();
    1.0 + binary_entropy(x) - mixture_entropy
}

/// Closed-form output spectrum of a depolarizing channel with strength `q`
/// acting on any letter generated from the pure Schmidt reference, sorted
/// descending:
///
/// ```text
/// eta_1 = 2 q |alpha|^2
/// eta_2 = 2 q |beta|^2
/// eta_3,4 = (1 - 2q +- sqrt((1 - 2q)^2 - 16 q |alpha|^2 |beta|^2 (1 - 3q))) / 2
/// ```
pub fn depolarizing_spectrum_closed_form(q: f64, reference: &SchmidtState) -> Result<HermitianSpectrum> {
    if !q.is_finite() || !(0.0..=1.0 / 3.0 + 1e-15).contains(&q) {
        return Err(Error::ParameterOutOfRange { name: "q", value: q });
    }
    let a = reference.alpha_sq();
    let b = reference.beta_sq();
    let disc = (1.0 - 2.0 * q).powi(2) - 16.0 * q * a * b * (1.0 - 3.0 * q);
    // The discriminant is a squared eigenvalue gap; clamp fp dust.
    let root = disc.max(0.0).sqrt();
    Ok(HermitianSpectrum::new([
        2.0 * q * a,
        2.0 * q * b,
        0.5 * ((1.0 - 2.0 * q) + root),
        0.5 * ((1.0 - 2.0 * q) - root),
    ]))
}

/// `delta_k^2 = 1 - <psi_k| sigma_x |psi_k>^2` for the equally-distant
/// letters (1-based letter index):
/// `delta_1^2 = 1`, `delta_2^2 = 1 - 8 Delta^2 / 9`,
/// `delta_3^2 = delta_4^2 = 1 - 2 Delta^2 / 9`.
pub fn xpauli_delta_sq(k: usize, delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta.abs() > 1.0 {
        return Err(Error::ParameterOutOfRange { name: "delta", value: delta });
    }
    let d2 = delta * delta;
    match k {
        1 => Ok(1.0),
        2 => Ok(1.0 - 8.0 * d2 / 9.0),
        3 | 4 => Ok(1.0 - 2.0 * d2 / 9.0),
        _ => Err(Error::IndexOutOfRange(k)),
    }
}

/// Holevo quantity of the alphabet pushed through the channel, at the
/// uniform prior. Letter spectra come from direct diagonalization; the
/// letter entropies are averaged because they differ between letters under
/// anisotropic noise.
pub fn noisy_capacity_uniform(alphabet: &Alphabet, params: &PauliChannelParams) -> CapacityReport {
    let letters = alphabet.letter_densities();
    let outputs: [DensityMatrix; 4] = [
        apply_pauli_channel(params, &letters[0]),
        apply_pauli_channel(params, &letters[1]),
        apply_pauli_channel(params, &letters[2]),
        apply_pauli_channel(params, &letters[3]),
    ];
    holevo_quantity(&outputs, &PriorDistribution::uniform())
}

/// `C_standard - C_equally_distant` at the uniform prior under an x-Pauli
/// channel with flip probability `px`.
pub fn capacity_difference_xpauli(alpha_sq: f64, px: f64) -> Result<f64> {
    let reference = SchmidtState::from_alpha_sq(alpha_sq)?;
    let params = PauliChannelParams::x_pauli(px)?;
    let c_standard = noisy_capacity_uniform(&Alphabet::standard(&reference), &params).chi;
    let c_equally_distant =
        noisy_capacity_uniform(&Alphabet::equally_distant(&reference), &params).chi;
    Ok(c_standard - c_equally_distant)
}

/// Maximizes the Holevo quantity over the prior simplex: exhaustive grid at
/// resolution 1/50, then deterministic pairwise coordinate ascent with step
/// halving down to 1e-7. The objective is concave in the prior, so the
/// refined local maximum is global.
pub fn optimize_prior(letters: &[DensityMatrix; 4]) -> CapacityReport {
    let mut letter_entropies = [0.0f64; 4];
    for (i, rho) in letters.iter().enumerate() {
        letter_entropies[i] = rho.entropy();
    }
    let chi_of = |pi: &[f64; 4]| -> f64 {
        let mut acc = Operator4::zero();
        for (rho, w) in letters.iter().zip(pi.iter()) {
            acc = acc.add(&rho.operator().scale(cr(*w)));
        }
        let weighted: f64 = pi.iter().zip(letter_entropies.iter()).map(|(w, s)| w * s).sum();
        entropy_of(&acc) - weighted
    };

    let mut best_pi = [0.25f64; 4];
    let mut best = chi_of(&best_pi);

    const N: usize = 50;
    for i in 0..=N {
        for j in 0..=(N - i) {
            for k in 0..=(N - i - j) {
                let l = N - i - j - k;
                let pi = [
                    i as f64 / N as f64,
                    j as f64 / N as f64,
                    k as f64 / N as f64,
                    l as f64 / N as f64,
                ];
                let v = chi_of(&pi);
                if v > best + 1e-15 {
                    best = v;
                    best_pi = pi;
                }
            }
        }
    }

    let mut step = 1.0 / N as f64;
    while step > 1e-7 {
        let mut improved = false;
        for from in 0..4 {
            for to in 0..4 {
                if from == to || best_pi[from] < step {
                    continue;
                }
                let mut trial = best_pi;
                trial[from] -= step;
                trial[to] += step;
                let v = chi_of(&trial);
                if v > best + 1e-15 {
                    best = v;
                    best_pi = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let total: f64 = best_pi.iter().sum();
    for w in best_pi.iter_mut() {
        *w /= total;
    }
    let prior = PriorDistribution::new(best_pi).expect("normalized simplex point");
    holevo_quantity(letters, &prior)
}
