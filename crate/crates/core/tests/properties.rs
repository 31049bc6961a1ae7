//! Property tests for the spec-level invariants that random inputs probe
//! better than fixed oracles: canonical-form soundness, divergence axioms,
//! transform identities, and shift invariance of the smoothed divergence.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codesmooth_core::*;

fn arb_pmf(n: u32) -> impl Strategy<Value = Pmf> {
    prop::collection::vec(0.01f64..1.0, 1usize << n).prop_map(move |raw| {
        let total: f64 = raw.iter().sum();
        Pmf::from_values(raw.into_iter().map(|v| v / total).collect(), LogBase::Nats).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Distinct generators of the same subspace canonicalize identically;
    /// the canonical code always contains the original rows.
    #[test]
    fn canonical_form_is_sound(seed in 0u64..1000, n in 2usize..10, kx in 1usize..9) {
        let k = 1 + kx % n.min(8).max(1);
        let k = k.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = sample_full_rank_code(n, k, &mut rng);
        // re-generate from random invertible combinations of the rows
        let words = code.codewords();
        let mut rows: Vec<PackedVector> = Vec::new();
        while rows.len() < k {
            let w = words[rng.gen_range(0..words.len())].clone();
            rows.push(w);
            if rank_of_set(&rows) < rows.len() {
                rows.pop();
            }
        }
        let rebuilt = LinearCode::from_generator(PackedMatrix::from_rows(rows).unwrap()).unwrap();
        prop_assert_eq!(code.generator().rows(), rebuilt.generator().rows());
        for w in &words {
            prop_assert!(rebuilt.contains(w));
        }
    }

    /// Renyi divergence is nonnegative, zero on identical arguments, and
    /// non-decreasing in the order.
    #[test]
    fn divergence_axioms(p in arb_pmf(5), q in arb_pmf(5)) {
        let orders = [0.5f64, 0.9, 1.0 + 1e-9, 1.3, 2.0, 4.0];
        let mut prev = f64::NEG_INFINITY;
        for &a in &orders {
            let d = renyi_divergence(&p, &q, a).unwrap().value;
            prop_assert!(d >= -1e-10);
            prop_assert!(d >= prev - 1e-10);
            prev = d;
            prop_assert!(renyi_divergence(&p, &p, a).unwrap().value.abs() <= 1e-10);
        }
    }

    /// Renyi entropy is non-increasing in the order.
    #[test]
    fn entropy_monotone_in_order(p in arb_pmf(5)) {
        let orders = [0.5f64, 0.9, 1.0 + 1e-9, 1.3, 2.0, 4.0];
        let mut prev = f64::INFINITY;
        for &a in &orders {
            let h = renyi_entropy(&p, a).unwrap();
            prop_assert!(h <= prev + 1e-10);
            prev = h;
        }
    }

    /// Convolving with a point mass translates the distribution.
    #[test]
    fn point_mass_convolution_translates(p in arb_pmf(5), shift in 0u64..32) {
        let delta = Pmf::point_mass(shift, 5, LogBase::Nats);
        let shifted = convolve(&p, &delta).unwrap();
        for y in 0..32u64 {
            prop_assert!((shifted.get(y) - p.get(y ^ shift)).abs() <= 1e-12);
        }
    }

    /// The smoothed divergence is invariant under shifting the code by any
    /// fixed vector (additive noise sees only the coset structure).
    #[test]
    fn smoothing_is_shift_invariant(seed in 0u64..1000, shift in 1u64..64) {
        let (n, k) = (6usize, 3usize);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = sample_full_rank_code(n, k, &mut rng);
        let noise = NoiseModel::BernoulliProduct { r: 0.2 };
        let base = smoothed_pmf(&code, &noise).unwrap();
        let uniform = Pmf::uniform(n as u32, LogBase::Bits);
        let d0 = renyi_divergence(&base, &uniform, 1.5).unwrap().value;

        // shift the smoothed law directly: U_{C+s} + N = shift of U_C + N
        let shifted_values: Vec<f64> =
            (0..1u64 << n).map(|y| base.get(y ^ shift)).collect();
        let shifted = Pmf::from_values(shifted_values, LogBase::Bits).unwrap();
        let d1 = renyi_divergence(&shifted, &uniform, 1.5).unwrap().value;
        prop_assert!((d0 - d1).abs() <= 1e-12);
    }

    /// Membership counts over the full linear family are uniform across
    /// nonzero vectors: gaussian_binomial(n-1, k-1) codes contain any v != 0.
    #[test]
    fn linear_family_is_balanced(n in 2usize..6, kx in 1usize..6, v in 1u64..16) {
        let k = 1 + kx % n;
        let v = PackedVector::from_index(v % ((1 << n) - 1) + 1, n);
        let spec = EnsembleSpec::AllLinear { n, k, q: 2 };
        let count = membership_count(&v, &spec).unwrap();
        let expected = gaussian_binomial(n as u32 - 1, k as u32 - 1, 2).unwrap();
        prop_assert_eq!(num_bigint::BigUint::from(count), expected);
    }
}
