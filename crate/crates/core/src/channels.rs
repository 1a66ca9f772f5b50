//! Pauli channels acting on Alice's qubit only; Bob's qubit is left intact.

use crate::capacity::PriorDistribution;
use crate::error::{Error, Result};
use crate::linalg::{cr, tensor_with_identity_on_b, Operator2, Operator4};
use crate::states::DensityMatrix;
use crate::alphabets::Alphabet;

/// Flip probabilities `(p_x, p_y, p_z)` of a Pauli channel; each must be
/// nonnegative with `p_x + p_y + p_z <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannelParams {
    px: f64,
    py: f64,
    pz: f64,
}

impl PauliChannelParams {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        let all_finite = px.is_finite() && py.is_finite() && pz.is_finite();
        if !all_finite || px < 0.0 || py < 0.0 || pz < 0.0 || px + py + pz > 1.0 + 1e-12 {
            return Err(Error::InvalidChannelParams);
        }
        Ok(Self { px, py, pz })
    }

    pub fn noiseless() -> Self {
        Self { px: 0.0, py: 0.0, pz: 0.0 }
    }

    /// Depolarizing channel `p_x = p_y = p_z = q` with `0 <= q <= 1/3`.
    pub fn depolarizing(q: f64) -> Result<Self> {
        if !q.is_finite() || !(0.0..=1.0 / 3.0 + 1e-15).contains(&q) {
            return Err(Error::ParameterOutOfRange { name: "q", value: q });
        }
        Ok(Self { px: q, py: q, pz: q })
    }

    /// Bit-flip-only channel `(p_x, 0, 0)` with `0 <= p_x <= 1`.
    pub fn x_pauli(px: f64) -> Result<Self> {
        if !px.is_finite() || !(0.0..=1.0).contains(&px) {
            return Err(Error::ParameterOutOfRange { name: "px", value: px });
        }
        Ok(Self { px, py: 0.0, pz: 0.0 })
    }

    pub fn px(&self) -> f64 {
        self.px
    }

    pub fn py(&self) -> f64 {
        self.py
    }

    pub fn pz(&self) -> f64 {
        self.pz
    }

    /// Total flip probability `p = p_x + p_y + p_z`.
    pub fn total(&self) -> f64 {
        self.px + self.py + self.pz
    }
}

/// `rho' = (1 - p) rho + sum_mu p_mu (sigma_mu (x) 1) rho (sigma_mu (x) 1)`.
///
/// Trace-preserving and Hermiticity-preserving by construction.
pub fn apply_pauli_channel(params: &PauliChannelParams, rho: &DensityMatrix) -> DensityMatrix {
    let weights = [params.px, params.py, params.pz];
    let mut out = rho.operator().scale(cr(1.0 - params.total()));
    for (sigma, w) in Operator2::paulis().iter().zip(weights.iter()) {
        if *w == 0.0 {
            continue;
        }
        let lifted = tensor_with_identity_on_b(sigma);
        let term = lifted.mul(rho.operator()).mul(&lifted);
        out = out.add(&term.scale(cr(*w)));
    }
    DensityMatrix::new(out).expect("Pauli channels preserve density operators")
}

/// Prior-weighted ensemble average `sum_k pi_k rho_k` of the alphabet's
/// letters.
pub fn averaged_state(alphabet: &Alphabet, prior: &PriorDistribution) -> DensityMatrix {
    let letters = alphabet.letter_densities();
    let mut acc = Operator4::zero();
    for (rho, w) in letters.iter().zip(prior.weights().iter()) {
        acc = acc.add(&rho.operator().scale(cr(*w)));
    }
    DensityMatrix::new(acc).expect("convex combination of density operators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabets::{equally_distant_generators, Alphabet, AlphabetKind};
    use crate::linalg::hermitian_eigenvalues;
    use crate::states::{PureState, SchmidtState};
    use approx::assert_abs_diff_eq;

    fn ket00() -> DensityMatrix {
        SchmidtState::from_alpha_sq(1.0).unwrap().to_vector().projector()
    }

    #[test]
    fn parameter_validation() {
        assert!(PauliChannelParams::new(0.2, 0.3, 0.4).is_ok());
        assert!(PauliChannelParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(PauliChannelParams::new(0.5, 0.4, 0.2).is_err());
        assert!(PauliChannelParams::depolarizing(0.4).is_err());
        assert!(PauliChannelParams::depolarizing(1.0 / 3.0).is_ok());
        assert!(PauliChannelParams::x_pauli(1.0).is_ok());
        assert!(PauliChannelParams::x_pauli(1.1).is_err());
    }

    #[test]
    fn noiseless_channel_is_identity() {
        let rho = SchmidtState::from_alpha_sq(0.3).unwrap().to_vector().projector();
        let out = apply_pauli_channel(&PauliChannelParams::noiseless(), &rho);
        assert!(out.operator().max_abs_diff(rho.operator()) < 1e-15);
    }

    #[test]
    fn deterministic_bit_flip() {
        let out = apply_pauli_channel(&PauliChannelParams::x_pauli(1.0).unwrap(), &ket00());
        // |00><00| -> |10><10| (index 1 in the fixed ordering).
        assert_abs_diff_eq!(out.operator().entries[1][1].re, 1.0, epsilon = 1e-15);
        assert!(out.operator().entries[0][0].norm() < 1e-15);
    }

    #[test]
    fn uniform_flips_on_ket00() {
        let params = PauliChannelParams::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        let out = apply_pauli_channel(&params, &ket00());
        let spec = hermitian_eigenvalues(out.operator()).unwrap();
        assert_abs_diff_eq!(spec.values()[0], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values()[1], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values()[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn quarter_depolarizing_fully_mixes_bell_letters() {
        let bell = SchmidtState::bell().to_vector().projector();
        let out = apply_pauli_channel(&PauliChannelParams::depolarizing(0.25).unwrap(), &bell);
        assert!(out.operator().max_abs_diff(DensityMatrix::maximally_mixed().operator()) < 1e-14);
    }

    #[test]
    fn x_pauli_spectra_for_fully_flipping_letters() {
        // delta_k^2 = 1 letters: equal mixture weights become eigenvalues.
        let rho = ket00();
        let half = apply_pauli_channel(&PauliChannelParams::x_pauli(0.5).unwrap(), &rho);
        let spec = hermitian_eigenvalues(half.operator()).unwrap();
        assert_abs_diff_eq!(spec.values()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values()[1], 0.5, epsilon = 1e-12);
        let tilted = apply_pauli_channel(&PauliChannelParams::x_pauli(0.3).unwrap(), &rho);
        let spec = hermitian_eigenvalues(tilted.operator()).unwrap();
        assert_abs_diff_eq!(spec.values()[0], 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.values()[1], 0.3, epsilon = 1e-12);
    }

    #[test]
    fn averaged_state_is_block_diagonal() {
        for &alpha_sq in &[0.25, 0.5, 0.9] {
            let reference = SchmidtState::from_alpha_sq(alpha_sq).unwrap();
            for alphabet in [Alphabet::equally_distant(&reference), Alphabet::standard(&reference)] {
                let avg = averaged_state(&alphabet, &PriorDistribution::uniform());
                let want = Operator4::diagonal([
                    alpha_sq / 2.0,
                    alpha_sq / 2.0,
                    (1.0 - alpha_sq) / 2.0,
                    (1.0 - alpha_sq) / 2.0,
                ]);
                assert!(avg.operator().max_abs_diff(&want) < 1e-13);
            }
        }
    }

    #[test]
    fn averaged_bell_reference_is_maximally_mixed() {
        let alphabet = Alphabet::equally_distant(&SchmidtState::bell());
        let avg = averaged_state(&alphabet, &PriorDistribution::uniform());
        assert!(avg.operator().max_abs_diff(DensityMatrix::maximally_mixed().operator()) < 1e-14);
    }

    #[test]
    fn averaged_state_is_a_channel_fixed_point() {
        let reference = SchmidtState::from_alpha_sq(0.3).unwrap();
        let alphabet = Alphabet::equally_distant(&reference);
        let avg = averaged_state(&alphabet, &PriorDistribution::uniform());
        let params = PauliChannelParams::new(0.2, 0.1, 0.35).unwrap();
        let pushed = apply_pauli_channel(&params, &avg);
        assert!(pushed.operator().max_abs_diff(avg.operator()) < 1e-13);
    }

    #[test]
    fn channel_leaves_bobs_qubit_intact() {
        let mixture = crate::states::SpectralMixture::new(
            [0.4, 0.3, 0.2, 0.1],
            cr(0.6),
            cr(0.8),
            cr(0.3),
            cr((1.0f64 - 0.09).sqrt()),
        )
        .unwrap();
        let rho = mixture.density();
        let params = PauliChannelParams::new(0.3, 0.2, 0.1).unwrap();
        let out = apply_pauli_channel(&params, &rho);
        let bob_before = crate::linalg::partial_trace_a(rho.operator()).unwrap();
        let bob_after = crate::linalg::partial_trace_a(out.operator()).unwrap();
        assert!(bob_before.max_abs_diff(&bob_after) < 1e-13);
    }

    #[test]
    fn mixed_alphabet_letters_average_like_pure_ones() {
        // Uniform average over a mixed-reference alphabet stays the twirled
        // block-diagonal form with Bob's marginal unchanged.
        let reference = SchmidtState::from_alpha_sq(0.25).unwrap();
        let rho = crate::states::werner_like(0.6, &reference).unwrap();
        let alphabet = Alphabet::from_mixed_reference(
            equally_distant_generators(),
            AlphabetKind::EquallyDistant,
            &rho,
        )
        .unwrap();
        let avg = averaged_state(&alphabet, &PriorDistribution::uniform());
        let bob = crate::linalg::partial_trace_a(rho.operator()).unwrap();
        let mut want = Operator4::zero();
        for a in 0..2 {
            for b in 0..2 {
                for b2 in 0..2 {
                    want.entries[crate::linalg::basis_index(a, b)][crate::linalg::basis_index(a, b2)] =
                        bob.entries[b][b2] * 0.5;
                }
            }
        }
        assert!(avg.operator().max_abs_diff(&want) < 1e-13);
    }

    #[test]
    fn averaged_state_respects_arbitrary_priors() {
        let reference = SchmidtState::from_alpha_sq(0.7).unwrap();
        let alphabet = Alphabet::standard(&reference);
        let prior = PriorDistribution::new([0.4, 0.3, 0.2, 0.1]).unwrap();
        let avg = averaged_state(&alphabet, &prior);
        let letters = alphabet.letter_densities();
        let mut want = Operator4::zero();
        for (w, rho) in prior.weights().iter().zip(letters.iter()) {
            want = want.add(&rho.operator().scale(cr(*w)));
        }
        assert!(avg.operator().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn pure_state_can_be_fed_through_projector_path() {
        let v = PureState::new([cr(1.0), cr(0.0), cr(0.0), cr(0.0)]).unwrap();
        let out = apply_pauli_channel(&PauliChannelParams::x_pauli(0.5).unwrap(), &v.projector());
        assert_abs_diff_eq!(out.operator().trace().re, 1.0, epsilon = 1e-14);
    }
}
