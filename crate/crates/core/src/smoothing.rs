//! Smoothing engine: exact smoothed laws U_C + N, ensemble-averaged
//! exponential divergences, bound evaluation, and the averaging-lemma
//! verifiers for the linear, extended, self-dual, and quasi-cyclic families.
//!
//! The per-code fast path never materializes the 2^n smoothed law. With
//! Whit(s) = sum_y (-1)^{s.y} W(y), the smoothed density ratio against
//! uniform is g(sigma) where g is the 2^{n-k}-point WHT of the spectrum
//! gathered over the dual code, and every divergence is a sum over the
//! 2^{n-k} syndrome cells. Per-code cost is O((n-k) 2^{n-k}).

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::codes::{
    enumerate_linear_codes, enumerate_quasi_cyclic, enumerate_self_dual_doubly_even,
    EnsembleSpec, LinearCode,
};
use crate::dist::{
    convolve, renyi_entropy, KahanSum, LogBase, NoiseModel, Pmf, walsh_hadamard,
};
use crate::error::{Error, Result};
use crate::gf2::{all_vectors, PackedVector};

/// Largest ensemble an exact expectation will iterate.
pub const DEFAULT_ENSEMBLE_BUDGET: u64 = 4_000_000;

const IDENTITY_TOL: f64 = 1e-12;

/// Uniform distribution over the codewords of a binary code.
pub fn code_uniform_pmf(code: &LinearCode, base: LogBase) -> Result<Pmf> {
    if code.q() != 2 {
        return Err(Error::UnsupportedAlphabet(code.q()));
    }
    let n = code.n() as u32;
    let mut values = vec![0.0; 1usize << n];
    let mass = 0.5f64.powi(code.k() as i32);
    for w in codeword_indices(code) {
        values[w as usize] = mass;
    }
    Pmf::from_values(values, base)
}

/// All 2^k codeword bitmasks in Gray order (constant work per step).
fn codeword_indices(code: &LinearCode) -> Vec<u64> {
    let masks = code.row_masks();
    let mut out = Vec::with_capacity(1 << masks.len());
    let mut w = 0u64;
    out.push(0);
    for m in 1u64..(1 << masks.len()) {
        w ^= masks[m.trailing_zeros() as usize];
        out.push(w);
    }
    out
}

/// Exact law of U_C + N, computed by convolution.
pub fn smoothed_pmf(code: &LinearCode, noise: &NoiseModel) -> Result<Pmf> {
    let indicator = code_uniform_pmf(code, LogBase::Bits)?;
    let noise_pmf = noise.materialize(code.n() as u32, LogBase::Bits)?;
    convolve(&indicator, &noise_pmf)
}

/// The Fourier spectrum of a noise law, evaluable at any frequency.
/// Bernoulli noise has the closed form (1-2r)^{wt(s)} and needs no table.
pub enum NoiseSpectrum {
    Bernoulli { bias: f64 },
    Table(Vec<f64>),
}

impl NoiseSpectrum {
    pub fn of(noise: &NoiseModel, n: u32) -> Result<Self> {
        if let NoiseModel::BernoulliProduct { r } = noise {
            if !(0.0..=1.0).contains(r) {
                return Err(Error::InvalidParameter(format!("r={r} outside [0,1]")));
            }
            return Ok(NoiseSpectrum::Bernoulli { bias: 1.0 - 2.0 * r });
        }
        let pmf = noise.materialize(n, LogBase::Bits)?;
        let mut table = pmf.values().to_vec();
        walsh_hadamard(&mut table)?;
        Ok(NoiseSpectrum::Table(table))
    }

    #[inline]
    pub fn eval(&self, s: u64) -> f64 {
        match self {
            NoiseSpectrum::Bernoulli { bias } => bias.powi(s.count_ones() as i32),
            NoiseSpectrum::Table(t) => t[s as usize],
        }
    }
}

/// Divergence of one smoothed code law against uniform, in bits.
#[derive(Debug, Clone, Copy)]
pub struct PerCodeDivergence {
    /// 2^{(alpha-1) D_alpha} - 1, accumulated with expm1 so tiny values
    /// survive. Meaningless at alpha = 1 (set to 0 there).
    pub exp_minus_1: f64,
    /// D_alpha in bits (KL when alpha is within 1e-6 of 1).
    pub divergence: f64,
}

/// Syndrome-space divergence computation; see module docs.
pub fn per_code_divergence(
    code: &LinearCode,
    spectrum: &NoiseSpectrum,
    alpha: f64,
) -> Result<PerCodeDivergence> {
    if code.q() != 2 {
        return Err(Error::UnsupportedAlphabet(code.q()));
    }
    let (n, k) = (code.n(), code.k());
    if k == n {
        return Ok(PerCodeDivergence {
            exp_minus_1: 0.0,
            divergence: 0.0,
        });
    }
    let d = n - k;
    let h_masks: Vec<u64> = code
        .parity_check()?
        .rows()
        .iter()
        .map(|r| r.to_index())
        .collect();
    // gather the spectrum over dual codewords, indexed by dual message
    let mut a = vec![0.0; 1usize << d];
    a[0] = spectrum.eval(0);
    let mut u = 0u64;
    for m in 1u64..(1 << d) {
        u ^= h_masks[m.trailing_zeros() as usize];
        a[(m ^ (m >> 1)) as usize] = spectrum.eval(u);
    }
    walsh_hadamard(&mut a)?;
    // a[sigma] is now the density ratio (smoothed / uniform) on that cell
    let cell = 0.5f64.powi(d as i32);
    let kl_mode = (alpha - 1.0).abs() < 1e-6;
    let mut acc = KahanSum::default();
    for &g in &a {
        let g = g.max(0.0);
        if kl_mode {
            if g > 0.0 {
                acc.add(cell * g * g.ln());
            }
        } else if g > 0.0 {
            acc.add(cell * (alpha * g.ln()).exp_m1());
        } else {
            acc.add(-cell);
        }
    }
    if kl_mode {
        return Ok(PerCodeDivergence {
            exp_minus_1: 0.0,
            divergence: acc.value() / std::f64::consts::LN_2,
        });
    }
    let x_minus_1 = acc.value();
    let divergence = x_minus_1.ln_1p() / (alpha - 1.0) / std::f64::consts::LN_2;
    Ok(PerCodeDivergence {
        exp_minus_1: x_minus_1,
        divergence,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum EnsembleMode {
    Exact { codes: u64 },
    MonteCarlo { samples: u64, std_error: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothingReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub alpha: f64,
    pub rate: f64,
    pub noise: String,
    /// E_C 2^{(alpha-1) D_alpha} - 1; absent in KL mode (alpha ~ 1).
    pub expected_exp_minus_1: Option<f64>,
    /// The bound's right-hand side minus 1, for alpha > 1.
    pub bound_minus_1: Option<f64>,
    pub divergence_min: f64,
    pub divergence_mean: f64,
    pub divergence_max: f64,
    #[serde(flatten)]
    pub mode: EnsembleMode,
    pub base: LogBase,
}

/// Ensemble mean of 2^{(alpha-1) D_alpha(U_C + N || U)} (its excess over 1)
/// together with per-code divergence statistics. Exhaustive families iterate
/// in enumeration order; the sampled family reports the standard error of
/// the mean.
pub fn ensemble_expected_exp_divergence(
    ensemble: &EnsembleSpec,
    noise: &NoiseModel,
    alpha: f64,
) -> Result<SmoothingReport> {
    let (n, k) = (ensemble.n(), ensemble.k());
    if ensemble.q() != 2 {
        return Err(Error::UnsupportedAlphabet(ensemble.q()));
    }
    if ensemble.is_exhaustive() {
        let count = ensemble.count()?;
        if count > BigUint::from(DEFAULT_ENSEMBLE_BUDGET) {
            return Err(Error::DenseLimitExceeded {
                size: count.to_usize().unwrap_or(usize::MAX),
                limit: DEFAULT_ENSEMBLE_BUDGET.ilog2(),
            });
        }
    }
    let spectrum = NoiseSpectrum::of(noise, n as u32)?;
    let kl_mode = (alpha - 1.0).abs() < 1e-6;

    let mut sum_x = KahanSum::default();
    let mut sum_x_sq = KahanSum::default();
    let mut sum_d = KahanSum::default();
    let mut d_min = f64::INFINITY;
    let mut d_max = f64::NEG_INFINITY;
    let mut codes = 0u64;
    for code in ensemble.iter()? {
        let pc = per_code_divergence(&code, &spectrum, alpha)?;
        sum_x.add(pc.exp_minus_1);
        sum_x_sq.add(pc.exp_minus_1 * pc.exp_minus_1);
        sum_d.add(pc.divergence);
        d_min = d_min.min(pc.divergence);
        d_max = d_max.max(pc.divergence);
        codes += 1;
    }
    if codes == 0 {
        return Err(Error::InvalidParameter("empty ensemble".into()));
    }
    let m = codes as f64;
    let mean_x = sum_x.value() / m;
    let mode = if ensemble.is_exhaustive() {
        EnsembleMode::Exact { codes }
    } else {
        let var = (sum_x_sq.value() / m - mean_x * mean_x).max(0.0);
        EnsembleMode::MonteCarlo {
            samples: codes,
            std_error: (var / m).sqrt(),
        }
    };
    let bound_minus_1 = if kl_mode {
        None
    } else {
        Some(theorem31_bound(n, k, alpha, noise)? - 1.0)
    };
    Ok(SmoothingReport {
        n,
        k,
        q: 2,
        alpha,
        rate: k as f64 / n as f64,
        noise: noise.describe(),
        expected_exp_minus_1: if kl_mode { None } else { Some(mean_x) },
        bound_minus_1,
        divergence_min: d_min,
        divergence_mean: sum_d.value() / m,
        divergence_max: d_max,
        mode,
        base: LogBase::Bits,
    })
}

/// Right-hand side q^{(alpha-1) n (1 - R - H_alpha(W)/n)} + 1, base q = 2.
pub fn theorem31_bound(n: usize, k: usize, alpha: f64, noise: &NoiseModel) -> Result<f64> {
    if alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!("alpha={alpha} <= 1")));
    }
    let w = noise.materialize(n as u32, LogBase::Bits)?;
    let h = renyi_entropy(&w, alpha)?;
    Ok(((alpha - 1.0) * (n as f64 - k as f64 - h)).exp2() + 1.0)
}

/// True when the bound is nontrivial: R >= 1 - H_alpha(W)/n.
pub fn rate_condition_holds(n: usize, k: usize, alpha: f64, noise: &NoiseModel) -> Result<bool> {
    let w = noise.materialize(n as u32, LogBase::Bits)?;
    let h = renyi_entropy(&w, alpha)?;
    Ok(k as f64 / n as f64 >= 1.0 - h / n as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct AveragingCheck {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    /// identity families: |lhs-rhs| <= 1e-12; inequality families:
    /// lhs <= rhs + 1e-12
    pub holds: bool,
}

/// Averaging identity for the full linear family:
/// E_C sum_{c in C, c != 0} f(c) = (q^k-1)/(q^n-1) sum_{v != 0} f(v).
pub fn verify_averaging_linear(
    n: usize,
    k: usize,
    q: u32,
    f: &dyn Fn(&PackedVector) -> f64,
) -> Result<AveragingCheck> {
    let mut lhs_total = KahanSum::default();
    let mut codes = 0u64;
    for code in enumerate_linear_codes(n, k, q)? {
        for w in code.codewords() {
            if !w.is_zero() {
                lhs_total.add(f(&w));
            }
        }
        codes += 1;
    }
    let lhs = lhs_total.value() / codes as f64;
    let qn = (q as f64).powi(n as i32);
    let qk = (q as f64).powi(k as i32);
    let mut rhs_sum = KahanSum::default();
    for v in all_vectors(n, q) {
        if !v.is_zero() {
            rhs_sum.add(f(&v));
        }
    }
    let rhs = if n == 0 {
        0.0
    } else {
        (qk - 1.0) / (qn - 1.0) * rhs_sum.value()
    };
    let abs_diff = (lhs - rhs).abs();
    Ok(AveragingCheck {
        family: "linear".into(),
        n,
        k,
        lhs,
        rhs,
        abs_diff,
        holds: abs_diff <= IDENTITY_TOL,
    })
}

/// Rank-stratified extended averaging inequality for ordered tuples of
/// distinct nonzero messages:
/// E_C sum_tuples prod_i f(F(a_i))^{e_i}
///   <= sum_j ((q^k-1)/(q^n-1))^{r-j} sum_{rank r-j tuples} prod_i f(c_i)^{e_i}.
pub fn verify_extended_averaging(
    n: usize,
    k: usize,
    q: u32,
    exponents: &[f64],
    f: &dyn Fn(&PackedVector) -> f64,
) -> Result<AveragingCheck> {
    let r = exponents.len();
    if r == 0 || r > 3 {
        return Err(Error::InvalidParameter(format!(
            "tuple size {r} not in 1..=3"
        )));
    }
    // lhs: average over codes of the ordered distinct nonzero-message sum
    let mut lhs_total = KahanSum::default();
    let mut codes = 0u64;
    for code in enumerate_linear_codes(n, k, q)? {
        let words = code.codewords();
        // f^{e_i} evaluated on each codeword, message-indexed
        let powers: Vec<Vec<f64>> = exponents
            .iter()
            .map(|&e| words.iter().map(|w| f(w).powf(e)).collect())
            .collect();
        let msgs = words.len();
        let mut code_sum = KahanSum::default();
        for_each_distinct_tuple(msgs, r, &mut |tuple| {
            let mut prod = 1.0;
            for (i, &a) in tuple.iter().enumerate() {
                prod *= powers[i][a];
            }
            code_sum.add(prod);
        });
        lhs_total.add(code_sum.value());
        codes += 1;
    }
    let lhs = lhs_total.value() / codes as f64;

    // rhs: stratify ordered distinct nonzero-vector tuples by rank
    let ratio = ((q as f64).powi(k as i32) - 1.0) / ((q as f64).powi(n as i32) - 1.0);
    let vectors: Vec<PackedVector> = all_vectors(n, q).filter(|v| !v.is_zero()).collect();
    let fpow: Vec<Vec<f64>> = exponents
        .iter()
        .map(|&e| vectors.iter().map(|v| f(v).powf(e)).collect())
        .collect();
    let mut by_rank = vec![KahanSum::default(); r + 1];
    for_each_distinct_tuple(vectors.len() + 1, r, &mut |tuple| {
        // shift by one: tuples over 1..=len, skipping the zero vector slot
        if tuple.iter().any(|&i| i == 0) {
            return;
        }
        let vs: Vec<PackedVector> = tuple.iter().map(|&i| vectors[i - 1].clone()).collect();
        let rank = crate::gf2::rank_of_set(&vs);
        let mut prod = 1.0;
        for (i, &idx) in tuple.iter().enumerate() {
            prod *= fpow[i][idx - 1];
        }
        by_rank[rank].add(prod);
    });
    let mut rhs = KahanSum::default();
    for j in 0..r {
        rhs.add(ratio.powi((r - j) as i32) * by_rank[r - j].value());
    }
    let rhs = rhs.value();
    Ok(AveragingCheck {
        family: "extended".into(),
        n,
        k,
        lhs,
        rhs,
        abs_diff: (lhs - rhs).abs(),
        holds: lhs <= rhs + IDENTITY_TOL,
    })
}

/// Calls `body` with every ordered tuple of r distinct indices drawn from
/// 1..count (index 0, the zero message, is excluded).
fn for_each_distinct_tuple(count: usize, r: usize, body: &mut dyn FnMut(&[usize])) {
    let mut tuple = vec![0usize; r];
    fill_tuple(count, r, 0, &mut tuple, body);
}

fn fill_tuple(
    count: usize,
    r: usize,
    depth: usize,
    tuple: &mut Vec<usize>,
    body: &mut dyn FnMut(&[usize]),
) {
    if depth == r {
        body(tuple);
        return;
    }
    for i in 1..count {
        if tuple[..depth].contains(&i) {
            continue;
        }
        tuple[depth] = i;
        fill_tuple(count, r, depth + 1, tuple, body);
    }
}

/// Self-dual averaging identity at n = 2t:
/// E_B sum_{c in C \ {0,1}} f(c) = (1/(2^{t-2}+1)) sum_{doubly-even v not in
/// {0,1}} f(v).
pub fn verify_averaging_self_dual(
    t: usize,
    f: &dyn Fn(&PackedVector) -> f64,
) -> Result<AveragingCheck> {
    let n = 2 * t;
    let codes = enumerate_self_dual_doubly_even(t)?;
    let ones = (1u64 << n) - 1;
    let mut lhs_total = KahanSum::default();
    for code in &codes {
        for w in codeword_indices(code) {
            if w != 0 && w != ones {
                lhs_total.add(f(&PackedVector::from_index(w, n)));
            }
        }
    }
    let lhs = lhs_total.value() / codes.len() as f64;
    let mut rhs_sum = KahanSum::default();
    for v in 1..ones {
        if v.count_ones() % 4 == 0 {
            rhs_sum.add(f(&PackedVector::from_index(v, n)));
        }
    }
    let rhs = rhs_sum.value() / (2f64.powi(t as i32 - 2) + 1.0);
    let abs_diff = (lhs - rhs).abs();
    Ok(AveragingCheck {
        family: "self_dual".into(),
        n,
        k: t,
        lhs,
        rhs,
        abs_diff,
        holds: abs_diff <= IDENTITY_TOL,
    })
}

/// Quasi-cyclic averaging comparison at n = 2t:
/// lhs = E_B sum_{c in C \ {0,1}} f(c), rhs = (1/(2^{t-1}-1)) sum over
/// even-weight v not in {0,1}. Both sides are computed and recorded; the
/// family is not balanced over all even-weight vectors, so `holds` reports
/// what the numbers say rather than assuming the identity.
pub fn verify_averaging_qc(t: usize, f: &dyn Fn(&PackedVector) -> f64) -> Result<AveragingCheck> {
    if !crate::codes::qc_balance_condition(t as u64) {
        return Err(Error::InvalidParameter(format!(
            "balance condition fails at t={t}"
        )));
    }
    let n = 2 * t;
    let codes = enumerate_quasi_cyclic(t)?;
    let ones = (1u64 << n) - 1;
    let mut lhs_total = KahanSum::default();
    for qc in &codes {
        for w in codeword_indices(qc.code()) {
            if w != 0 && w != ones {
                lhs_total.add(f(&PackedVector::from_index(w, n)));
            }
        }
    }
    let lhs = lhs_total.value() / codes.len() as f64;
    let mut rhs_sum = KahanSum::default();
    for v in 1..ones {
        if v.count_ones() % 2 == 0 {
            rhs_sum.add(f(&PackedVector::from_index(v, n)));
        }
    }
    let rhs = rhs_sum.value() / (2f64.powi(t as i32 - 1) - 1.0);
    let abs_diff = (lhs - rhs).abs();
    Ok(AveragingCheck {
        family: "quasi_cyclic".into(),
        n,
        k: t,
        lhs,
        rhs,
        abs_diff,
        holds: abs_diff <= IDENTITY_TOL,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossEntropyReport {
    pub h_alpha: f64,
    pub h_alpha_prime: f64,
    pub base: LogBase,
}

/// H'_alpha(W) = (1/(1-alpha)) log sum_y W(y) W(y + ones)^{alpha-1}, in
/// bits, together with the plain Renyi entropy for comparison
/// (rearrangement gives H_alpha <= H'_alpha). The channel form averages the
/// identical per-x terms, so the single shifted sum is exact.
pub fn self_dual_cross_entropy(noise: &NoiseModel, alpha: f64, n: u32) -> Result<CrossEntropyReport> {
    if (alpha - 1.0).abs() < 1e-6 || alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!("alpha={alpha}")));
    }
    let w = noise.materialize(n, LogBase::Bits)?;
    let ones = (1u64 << n) - 1;
    let mut acc = KahanSum::default();
    for (y, &wy) in w.values().iter().enumerate() {
        let partner = w.get(y as u64 ^ ones);
        if wy > 0.0 && partner > 0.0 {
            acc.add(wy * partner.powf(alpha - 1.0));
        }
    }
    let h_prime = acc.value().ln() / (1.0 - alpha) / std::f64::consts::LN_2;
    Ok(CrossEntropyReport {
        h_alpha: renyi_entropy(&w, alpha)?,
        h_alpha_prime: h_prime,
        base: LogBase::Bits,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub e_minus_1: Option<f64>,
    pub bound_minus_1: Option<f64>,
    pub ratio: Option<f64>,
    pub std_error: Option<f64>,
    pub mode: String,
    pub skipped: Option<String>,
}

/// Runs the smoothing expectation over a list of (n, k) points, exact where
/// the full linear ensemble fits the budget and Monte Carlo otherwise.
pub fn smoothing_scan(
    points: &[(usize, usize)],
    alpha: f64,
    noise: &NoiseModel,
    seed: u64,
    mc_samples: usize,
) -> Vec<ScanRow> {
    points
        .iter()
        .map(|&(n, k)| {
            let exhaustive = EnsembleSpec::AllLinear { n, k, q: 2 };
            let within_budget = exhaustive
                .count()
                .map(|c| c <= BigUint::from(DEFAULT_ENSEMBLE_BUDGET))
                .unwrap_or(false);
            let ensemble = if within_budget {
                exhaustive
            } else {
                EnsembleSpec::SampledLinear {
                    n,
                    k,
                    count: mc_samples,
                    seed: seed ^ ((n as u64) << 32 | k as u64),
                }
            };
            match ensemble_expected_exp_divergence(&ensemble, noise, alpha) {
                Ok(report) => {
                    let e = report.expected_exp_minus_1;
                    let b = report.bound_minus_1;
                    ScanRow {
                        n,
                        k,
                        e_minus_1: e,
                        bound_minus_1: b,
                        ratio: match (e, b) {
                            (Some(e), Some(b)) if b != 0.0 => Some(e / b),
                            _ => None,
                        },
                        std_error: match report.mode {
                            EnsembleMode::MonteCarlo { std_error, .. } => Some(std_error),
                            EnsembleMode::Exact { .. } => None,
                        },
                        mode: match report.mode {
                            EnsembleMode::Exact { .. } => "exact".into(),
                            EnsembleMode::MonteCarlo { .. } => "monte_carlo".into(),
                        },
                        skipped: None,
                    }
                }
                Err(e) => ScanRow {
                    n,
                    k,
                    e_minus_1: None,
                    bound_minus_1: None,
                    ratio: None,
                    std_error: None,
                    mode: "skipped".into(),
                    skipped: Some(e.to_string()),
                },
            }
        })
        .collect()
}
