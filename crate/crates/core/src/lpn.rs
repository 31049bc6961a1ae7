//! LPN-from-decoding reduction machinery: instance generation, the
//! Bernoulli-multiplier transform, exact joint-law divergence measurement,
//! the parity-entropy comparison, and the parameter calculator.
//!
//! The exact joint accumulates the law of (vG^T, <v,e>) over all 2^n
//! multipliers v, walking them in Gray-code order so each step updates the
//! output pair in O(1) from precomputed column masks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::dist::{
    binary_entropy, parity_conditioned, parity_forced, renyi_divergence, shannon_entropy,
    statistical_distance, DivergenceValue, LogBase, NoiseModel, Pmf,
};
use crate::error::{Error, Result};
use crate::gf2::{PackedMatrix, PackedVector};
use crate::smoothing::smoothed_pmf;

const MAX_JOINT_N: usize = 22;
const MAX_JOINT_K: usize = 16;

/// An average-case decoding instance y = xG + e with wt(e) = t.
#[derive(Debug, Clone)]
pub struct AdpInstance {
    pub g: PackedMatrix,
    pub x: PackedVector,
    pub e: PackedVector,
    pub y: PackedVector,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpnSample {
    pub a: PackedVector,
    pub b: u8,
}

/// G uniform over full-rank k x n matrices (rejection), x uniform, e uniform
/// over weight-t vectors; fully determined by the seed.
pub fn sample_adp_instance(n: usize, k: usize, t: usize, seed: u64) -> Result<AdpInstance> {
    if k > n || t > n || n > 63 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 0 < k <= n <= 63 and t <= n, got n={n} k={k} t={t}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = (1u64 << n) - 1;
    let g = loop {
        let rows: Vec<PackedVector> = (0..k)
            .map(|_| PackedVector::from_index(rng.gen::<u64>() & mask, n))
            .collect();
        let m = PackedMatrix::from_rows(rows)?;
        if m.rank() == k {
            break m;
        }
    };
    let x = PackedVector::from_index(rng.gen::<u64>() & ((1u64 << k) - 1), k);
    // weight-t error: partial Fisher-Yates over positions
    let mut positions: Vec<usize> = (0..n).collect();
    let mut e_bits = 0u64;
    for i in 0..t {
        let j = rng.gen_range(i..n);
        positions.swap(i, j);
        e_bits |= 1 << positions[i];
    }
    let e = PackedVector::from_index(e_bits, n);
    let y = g.left_mul(&x).add(&e);
    Ok(AdpInstance { g, x, e, y, seed })
}

/// One reduction draw: v ~ Ber(r)^n, a = vG^T, b = <v, y>. The identity
/// b = <a, x> + <v, e> holds pointwise.
pub fn reduce_sample<R: Rng>(inst: &AdpInstance, r: f64, rng: &mut R) -> Result<LpnSample> {
    if !(0.0..=0.5).contains(&r) {
        return Err(Error::InvalidParameter(format!("r={r} outside [0, 1/2]")));
    }
    let n = inst.g.ncols();
    let mut v_bits = 0u64;
    for j in 0..n {
        if rng.gen::<f64>() < r {
            v_bits |= 1 << j;
        }
    }
    let v = PackedVector::from_index(v_bits, n);
    let a = inst.g.right_mul(&v);
    let b = v.dot(&inst.y) as u8;
    Ok(LpnSample { a, b })
}

/// Piling-up: the parity of t independent Ber(r) bits is Ber of this.
pub fn flip_probability(r: f64, t: u32) -> f64 {
    (1.0 - (1.0 - 2.0 * r).powi(t as i32)) / 2.0
}

/// Column masks: bit i of mask j is G[i][j]; flipping multiplier bit j
/// toggles the output by mask j.
fn column_masks(g: &PackedMatrix) -> Vec<u64> {
    (0..g.ncols())
        .map(|j| {
            let mut m = 0u64;
            for i in 0..g.nrows() {
                m |= (g.get(i, j) as u64) << i;
            }
            m
        })
        .collect()
}

/// The exact joint law of (vG^T, <v,e>) over v ~ Ber(r)^n, as 2^{k+1} cells
/// indexed (a << 1) | b, plus the reference law U x Ber(p).
pub fn reduction_joint_pmfs(
    g: &PackedMatrix,
    e: &PackedVector,
    r: f64,
) -> Result<(Pmf, Pmf)> {
    let (k, n) = (g.nrows(), g.ncols());
    if n > MAX_JOINT_N || k > MAX_JOINT_K {
        return Err(Error::DenseLimitExceeded {
            size: n.max(k),
            limit: MAX_JOINT_N as u32,
        });
    }
    if e.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "e has length {}, G has {n} columns",
            e.len()
        )));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("r={r} outside [0,1]")));
    }
    let masks = column_masks(g);
    let e_bits = e.to_index();
    let by_weight: Vec<f64> = (0..=n)
        .map(|w| r.powi(w as i32) * (1.0 - r).powi((n - w) as i32))
        .collect();

    let mut cells = vec![0.0f64; 1usize << (k + 1)];
    // Gray walk: state (v, a, b, wt) updates in O(1) per step
    let (mut v, mut a, mut b, mut wt) = (0u64, 0u64, 0u32, 0usize);
    cells[0] += by_weight[0];
    for m in 1u64..(1 << n) {
        let j = m.trailing_zeros() as usize;
        v ^= 1 << j;
        a ^= masks[j];
        b ^= ((e_bits >> j) & 1) as u32;
        wt = if (v >> j) & 1 == 1 { wt + 1 } else { wt - 1 };
        cells[((a << 1) | b as u64) as usize] += by_weight[wt];
    }
    let joint = Pmf::from_values(cells, LogBase::Bits)?;

    let p = flip_probability(r, e.weight() as u32);
    let cell_even = (1.0 - p) * 0.5f64.powi(k as i32);
    let cell_odd = p * 0.5f64.powi(k as i32);
    let reference: Vec<f64> = (0..1u64 << (k + 1))
        .map(|i| if i & 1 == 1 { cell_odd } else { cell_even })
        .collect();
    Ok((joint, Pmf::from_values(reference, LogBase::Bits)?))
}

/// D_alpha of the exact reduction joint against U_{F_2^k} x Ber(p), in bits
/// (KL when alpha is within 1e-6 of 1).
pub fn exact_reduction_divergence(
    g: &PackedMatrix,
    e: &PackedVector,
    r: f64,
    alpha: f64,
) -> Result<DivergenceValue> {
    let (joint, reference) = reduction_joint_pmfs(g, e, r)?;
    renyi_divergence(&joint, &reference, alpha)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub divergence_direct: f64,
    pub divergence_mixture: f64,
    pub max_cell_diff: f64,
    pub agrees: bool,
}

/// Second computation path for the reduction joint: condition v on the
/// parity <v,e> = b, push each conditional law through the syndrome map via
/// dual-code smoothing (the fibers of v -> vG^T are cosets of the dual
/// code), and mix with the piling-up weights. Must agree with the direct
/// Gray-walk joint.
pub fn conditional_decomposition_check(
    g: &PackedMatrix,
    e: &PackedVector,
    r: f64,
    alpha: f64,
) -> Result<DecompositionReport> {
    let (k, n) = (g.nrows(), g.ncols());
    let code = LinearCode::from_generator(g.clone())?;
    // canonical map first: both paths below use G' = RREF(G); the divergence
    // is invariant since a -> aT for invertible T fixes the reference law
    let (joint_direct, reference) = reduction_joint_pmfs(code.generator(), e, r)?;
    let direct = renyi_divergence(&joint_direct, &reference, alpha)?;

    let p = flip_probability(r, e.weight() as u32);
    let dual = code.dual()?;
    let mut mixture = vec![0.0f64; 1usize << (k + 1)];
    for parity in 0..2u8 {
        let weight = if parity == 1 { p } else { 1.0 - p };
        if weight == 0.0 {
            continue;
        }
        let conditional = parity_conditioned(r, n as u32, e, parity)?;
        // law of vG'^T under the conditional: fiber mass x fiber count
        let smoothed = smoothed_pmf(&dual, &NoiseModel::General(conditional))?;
        let fiber = 2f64.powi((n - k) as i32);
        for a in 0..1u64 << k {
            // representative with v G'^T = a: put a's bits on the pivots
            let mut rep = 0u64;
            for (i, &piv) in code.pivots().iter().enumerate() {
                rep |= ((a >> i) & 1) << piv;
            }
            mixture[((a << 1) | parity as u64) as usize] =
                weight * smoothed.get(rep) * fiber;
        }
    }
    let mixture = Pmf::from_values(mixture, LogBase::Bits)?;
    let max_cell_diff = joint_direct
        .values()
        .iter()
        .zip(mixture.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let mixed = renyi_divergence(&mixture, &reference, alpha)?;
    // also cross-check against the original (non-canonical) map
    let original = exact_reduction_divergence(g, e, r, alpha)?;
    let agrees = max_cell_diff <= 1e-12
        && close(direct.value, mixed.value, 1e-10)
        && close(direct.value, original.value, 1e-10);
    Ok(DecompositionReport {
        divergence_direct: direct.value,
        divergence_mixture: mixed.value,
        max_cell_diff,
        agrees,
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyRateRow {
    pub parity: u8,
    pub forced_entropy: f64,
    pub forced_expected: f64,
    pub conditional_entropy: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyRateReport {
    pub n: usize,
    pub support_weight: usize,
    pub r: f64,
    pub rows: Vec<EntropyRateRow>,
    /// forced entropy equals (n-1) h(r) for both parities, to 1e-10
    pub identity_holds: bool,
}

/// Compares the parity-forced construction's entropy (provably (n-1) h(r))
/// with the true conditional entropy; the gap is reported, not asserted.
pub fn entropy_rate_check(n: usize, support: &PackedVector, r: f64) -> Result<EntropyRateReport> {
    let expected = (n as f64 - 1.0) * binary_entropy(r);
    let mut rows = Vec::with_capacity(2);
    for parity in 0..2u8 {
        let forced = parity_forced(r, n as u32, support, parity)?;
        let forced_entropy = shannon_entropy(&forced);
        let conditional_entropy = match parity_conditioned(r, n as u32, support, parity) {
            Ok(pmf) => shannon_entropy(&pmf),
            Err(_) => f64::NAN, // probability-zero conditioning event
        };
        rows.push(EntropyRateRow {
            parity,
            forced_entropy,
            forced_expected: expected,
            conditional_entropy,
            difference: conditional_entropy - forced_entropy,
        });
    }
    let identity_holds = rows
        .iter()
        .all(|row| (row.forced_entropy - expected).abs() <= 1e-10);
    Ok(EntropyRateReport {
        n,
        support_weight: support.weight(),
        r,
        rows,
        identity_holds,
    })
}

/// The unique r in [0, 1/2] with h(r) = y bits, by bisection.
pub fn binary_entropy_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::InvalidParameter(format!("y={y} outside [0,1]")));
    }
    // h flattens quadratically at 1/2, so bisection loses half the digits
    // near the top; pin the exact endpoints
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionParams {
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    pub eta: f64,
    pub c: f64,
    /// multiplier bias r = h^{-1}(k/n)
    pub r: f64,
    /// solved sample weight before rounding
    pub t_exact: f64,
    pub t: u64,
    /// output flip probability (piling-up at weight t)
    pub p: f64,
    /// asymptotic target noise 1/2 - 1/(2 n^C); compared, never asserted
    pub target_noise: f64,
    /// (1/2 - p) / (1/2 - target_noise), an order-of-magnitude diagnostic
    pub gap_ratio: f64,
    /// false when the solved t exceeds n
    pub feasible: bool,
}

/// Solves 2 ln2 ((1+eta)/(1-eps)) (1/log2(n/k)) (k/n) t = C log2(n) for t
/// and fills in the derived noise quantities.
pub fn reduction_param_calculator(
    n: usize,
    k: usize,
    eps: f64,
    eta: f64,
    c: f64,
) -> Result<ReductionParams> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("need 0 < k < n, got k={k} n={n}")));
    }
    if !(0.0..1.0).contains(&eps) || !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidParameter("eps, eta must lie in [0,1)".into()));
    }
    let nf = n as f64;
    let kf = k as f64;
    let log_nk = (nf / kf).log2();
    let t_exact = c * nf.log2() * (1.0 - eps) * log_nk * nf
        / (2.0 * std::f64::consts::LN_2 * (1.0 + eta) * kf);
    let t = t_exact.ceil() as u64;
    let r = binary_entropy_inverse(kf / nf)?;
    let p = flip_probability(r, t as u32);
    let target_gap = 1.0 / (2.0 * nf.powf(c));
    Ok(ReductionParams {
        n,
        k,
        eps,
        eta,
        c,
        r,
        t_exact,
        t,
        p,
        target_noise: 0.5 - target_gap,
        gap_ratio: (0.5 - p) / target_gap,
        feasible: t <= n as u64,
    })
}

/// Statistical distance of the reduction joint from U x Ber(p), same joint
/// as the divergence path.
pub fn reduction_statistical_distance(
    g: &PackedMatrix,
    e: &PackedVector,
    r: f64,
) -> Result<f64> {
    let (joint, reference) = reduction_joint_pmfs(g, e, r)?;
    statistical_distance(&joint, &reference)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_joint_oracle(g: &PackedMatrix, e: &PackedVector, r: f64) -> Vec<f64> {
        let (k, n) = (g.nrows(), g.ncols());
        let mut cells = vec![0.0f64; 1 << (k + 1)];
        for v_bits in 0..1u64 << n {
            let v = PackedVector::from_index(v_bits, n);
            let a = g.right_mul(&v).to_index();
            let b = v.dot(e) as u64;
            let w = v.weight() as i32;
            cells[((a << 1) | b) as usize] +=
                r.powi(w) * (1.0 - r).powi(n as i32 - w);
        }
        cells
    }

    #[test]
    fn instance_is_deterministic_and_consistent() {
        let a = sample_adp_instance(12, 5, 3, 99).unwrap();
        let b = sample_adp_instance(12, 5, 3, 99).unwrap();
        assert_eq!(a.g, b.g);
        assert_eq!(a.x, b.x);
        assert_eq!(a.e, b.e);
        assert_eq!(a.y, b.y);
        assert_eq!(a.e.weight(), 3);
        // y - xG = e
        assert_eq!(a.y.add(&a.g.left_mul(&a.x)), a.e);
    }

    #[test]
    fn error_weight_exact_over_seeds() {
        for seed in 0..300 {
            let inst = sample_adp_instance(10, 4, 4, seed).unwrap();
            assert_eq!(inst.e.weight(), 4);
            assert_eq!(inst.y.add(&inst.g.left_mul(&inst.x)), inst.e);
        }
    }

    #[test]
    fn t_zero_gives_noiseless_instance() {
        let inst = sample_adp_instance(8, 3, 0, 5).unwrap();
        assert!(inst.e.is_zero());
        assert_eq!(inst.y, inst.g.left_mul(&inst.x));
    }

    #[test]
    fn reduction_correctness_identity() {
        let inst = sample_adp_instance(14, 6, 4, 21).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10_000 {
            let v_probe_rng = rng.clone();
            let sample = reduce_sample(&inst, 0.3, &mut rng).unwrap();
            // re-derive v with a cloned rng to check b = <a,x> + <v,e>
            let mut probe = v_probe_rng;
            let mut v_bits = 0u64;
            for j in 0..14 {
                if probe.gen::<f64>() < 0.3 {
                    v_bits |= 1 << j;
                }
            }
            let v = PackedVector::from_index(v_bits, 14);
            let expect = sample.a.dot(&inst.x) ^ v.dot(&inst.e);
            assert_eq!(sample.b as u32, expect);
        }
    }

    #[test]
    fn reduce_sample_degenerate_r() {
        let inst = sample_adp_instance(8, 3, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = reduce_sample(&inst, 0.0, &mut rng).unwrap();
        assert!(s.a.is_zero());
        assert_eq!(s.b, 0);
    }

    #[test]
    fn flip_probability_examples() {
        assert_eq!(flip_probability(0.5, 7), 0.5);
        assert_eq!(flip_probability(0.3, 1), 0.3);
        assert!((flip_probability(0.25, 2) - 0.375).abs() < 1e-15);
        assert_eq!(flip_probability(0.2, 0), 0.0);
    }

    #[test]
    fn joint_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.gen_range(4..=10);
            let k = rng.gen_range(1..=n.min(5));
            let t = rng.gen_range(0..=n);
            let inst = sample_adp_instance(n, k, t, rng.gen()).unwrap();
            let r = rng.gen_range(0.05..0.5);
            let (joint, _) = reduction_joint_pmfs(&inst.g, &inst.e, r).unwrap();
            let oracle = dense_joint_oracle(&inst.g, &inst.e, r);
            for (a, b) in joint.values().iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn b_marginal_is_piling_up() {
        let inst = sample_adp_instance(12, 4, 5, 3).unwrap();
        for r in [0.05, 0.2, 0.35, 0.5] {
            let (joint, _) = reduction_joint_pmfs(&inst.g, &inst.e, r).unwrap();
            let odd: f64 = joint
                .values()
                .iter()
                .enumerate()
                .filter(|(i, _)| i & 1 == 1)
                .map(|(_, v)| v)
                .sum();
            assert!((odd - flip_probability(r, 5)).abs() < 1e-14, "r={r}");
        }
    }

    #[test]
    fn half_bias_full_rank_gives_zero_divergence() {
        let inst = sample_adp_instance(10, 4, 3, 8).unwrap();
        let d = exact_reduction_divergence(&inst.g, &inst.e, 0.5, 1.5).unwrap();
        assert!(d.value.abs() < 1e-12);
        assert!(reduction_statistical_distance(&inst.g, &inst.e, 0.5).unwrap() < 1e-12);
    }

    #[test]
    fn identity_code_zero_error_is_infinite() {
        let g = PackedMatrix::from_rows(
            (0..4).map(|i| PackedVector::from_index(1 << i, 4)).collect(),
        )
        .unwrap();
        let e = PackedVector::zero(4, 2).unwrap();
        let (joint, _) = reduction_joint_pmfs(&g, &e, 0.2).unwrap();
        // with G = I the a-marginal is the Ber(r) law and b = 0 always
        let ber = crate::dist::bernoulli_product(0.2, 4).unwrap();
        for a in 0..16u64 {
            assert!((joint.get(a << 1) - ber.get(a)).abs() < 1e-15);
            assert_eq!(joint.get((a << 1) | 1), 0.0);
        }
        // against a reference with p > 0 the support mismatch blows up
        let p = 0.1;
        let reference = Pmf::from_values(
            (0..32u64)
                .map(|i| if i & 1 == 1 { p / 16.0 } else { (1.0 - p) / 16.0 })
                .collect(),
            LogBase::Bits,
        )
        .unwrap();
        let d = renyi_divergence(&joint, &reference, 1.5).unwrap();
        assert!(d.value.is_finite()); // joint support is a subset, so finite
        let d_rev = renyi_divergence(&reference, &joint, 1.5).unwrap();
        assert!(d_rev.value.is_infinite());
    }

    #[test]
    fn decomposition_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..15 {
            let n = rng.gen_range(5..=10);
            let k = rng.gen_range(1..=4.min(n - 1));
            let t = rng.gen_range(1..=n);
            let inst = sample_adp_instance(n, k, t, rng.gen()).unwrap();
            let r = rng.gen_range(0.05..0.45);
            let alpha = [1.0, 1.5, 2.0][rng.gen_range(0..3)];
            let report =
                conditional_decomposition_check(&inst.g, &inst.e, r, alpha).unwrap();
            assert!(report.agrees, "n={n} k={k} t={t} r={r} alpha={alpha}: {report:?}");
        }
    }

    #[test]
    fn entropy_rate_examples() {
        let t = PackedVector::from_index(0b111, 6);
        let report = entropy_rate_check(6, &t, 0.3).unwrap();
        assert!(report.identity_holds);
        for row in &report.rows {
            assert!((row.forced_entropy - 5.0 * binary_entropy(0.3)).abs() < 1e-12);
        }

        // r = 1/2: everything is uniform on a half-space
        let half = entropy_rate_check(6, &t, 0.5).unwrap();
        for row in &half.rows {
            assert!((row.forced_entropy - 5.0).abs() < 1e-12);
            assert!((row.conditional_entropy - 5.0).abs() < 1e-12);
        }

        // n=2, full support, b=1: conditional entropy 1 bit, forced h(r)
        let t2 = PackedVector::from_index(0b11, 2);
        let small = entropy_rate_check(2, &t2, 0.25).unwrap();
        let row = &small.rows[1];
        assert!((row.conditional_entropy - 1.0).abs() < 1e-12);
        assert!((row.forced_entropy - binary_entropy(0.25)).abs() < 1e-12);
        assert!(row.difference > 0.0);
    }

    #[test]
    fn entropy_inverse() {
        assert!((binary_entropy_inverse(1.0).unwrap() - 0.5).abs() < 1e-12);
        assert!(binary_entropy_inverse(0.0).unwrap() < 1e-12);
        let r = binary_entropy_inverse(0.5).unwrap();
        assert!((r - 0.110027864438359551261811704335).abs() < 1e-12);
        assert!((binary_entropy(r) - 0.5).abs() < 1e-12);
        assert!(binary_entropy_inverse(1.5).is_err());
    }

    #[test]
    fn param_calculator_round_trip() {
        // pick C so the exact t equals n/2 at k/n = 1/4, then re-derive C
        let (n, k) = (64usize, 16usize);
        let t_target = 32.0;
        let c = 2.0 * std::f64::consts::LN_2 * (16.0 / 64.0) * t_target
            / ((64f64 / 16.0).log2() * (64f64).log2());
        let params = reduction_param_calculator(n, k, 0.0, 0.0, c).unwrap();
        assert!((params.t_exact - t_target).abs() < 1e-9);
        // plug back
        let c_back = 2.0 * std::f64::consts::LN_2 * (1.0 + 0.0) / (1.0 - 0.0)
            / (64f64 / 16.0).log2()
            * (16.0 / 64.0)
            * params.t_exact
            / (64f64).log2();
        assert!((c_back - c).abs() < 1e-10);
    }

    #[test]
    fn param_calculator_asymptotic_gap() {
        let params = reduction_param_calculator(1024, 32, 1e-9, 1e-9, 1.0).unwrap();
        assert!(!params.feasible); // t > n in this regime
        assert!(params.gap_ratio > 0.5 && params.gap_ratio < 2.0);
        assert!((params.r - binary_entropy_inverse(32.0 / 1024.0).unwrap()).abs() < 1e-15);
    }
}
