//! Dominant-exponent analysis of the smoothing bound: the single-letter
//! exponent f(x) = (1-x)(1-R) - log sum p_i^x, its concavity, and the
//! minimum over integer partitions of alpha, both brute-force and in
//! closed form.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::LogBase;
use crate::error::{Error, Result};

/// A single-symbol distribution with strictly positive probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolDistribution {
    p: Vec<f64>,
    base: LogBase,
}

impl SymbolDistribution {
    pub fn new(p: Vec<f64>, base: LogBase) -> Result<Self> {
        if p.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "probabilities must be strictly positive".into(),
            ));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(total));
        }
        Ok(Self { p, base })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn base(&self) -> LogBase {
        self.base
    }

    fn log_moment(&self, x: f64) -> f64 {
        let s: f64 = self.p.iter().map(|&pi| pi.powf(x)).sum();
        s.ln() / self.base.ln()
    }
}

/// f(x) = (1-x)(1-R) - log_b sum p_i^x. Vanishes identically at x = 1.
pub fn exponent_f(x: f64, rate: f64, p: &SymbolDistribution) -> f64 {
    (1.0 - x) * (1.0 - rate) - p.log_moment(x)
}

/// Analytic f'(x) = -(1-R) - (sum p^x ln p)/(sum p^x) / ln b.
pub fn exponent_f_prime(x: f64, rate: f64, p: &SymbolDistribution) -> f64 {
    let s: f64 = p.p.iter().map(|&pi| pi.powf(x)).sum();
    let ds: f64 = p.p.iter().map(|&pi| pi.powf(x) * pi.ln()).sum();
    -(1.0 - rate) - ds / s / p.base.ln()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConcavityRow {
    pub x: f64,
    pub f: f64,
    pub f_prime: f64,
    pub f_prime_numeric: f64,
    pub f_second_numeric: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConcavityReport {
    pub rows: Vec<ConcavityRow>,
    /// every finite-difference second derivative <= 1e-8
    pub concave: bool,
    /// analytic f' matches finite differences within 1e-6
    pub derivative_consistent: bool,
}

/// Central finite-difference diagnostics over a grid.
pub fn concavity_report(rate: f64, p: &SymbolDistribution, grid: &[f64]) -> Result<ConcavityReport> {
    if grid.iter().any(|&x| x <= 0.0) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "grid must be sorted and positive".into(),
        ));
    }
    // two step sizes: a small one for f' (truncation-limited) and a larger
    // one for f'' so roundoff in the double difference stays below 1e-8
    let h1 = 1e-5;
    let h2 = 5e-3;
    let rows: Vec<ConcavityRow> = grid
        .iter()
        .map(|&x| {
            let f0 = exponent_f(x, rate, p);
            ConcavityRow {
                x,
                f: f0,
                f_prime: exponent_f_prime(x, rate, p),
                f_prime_numeric: (exponent_f(x + h1, rate, p) - exponent_f(x - h1, rate, p))
                    / (2.0 * h1),
                f_second_numeric: (exponent_f(x + h2, rate, p) - 2.0 * f0
                    + exponent_f(x - h2, rate, p))
                    / (h2 * h2),
            }
        })
        .collect();
    let concave = rows.iter().all(|r| r.f_second_numeric <= 1e-8);
    let derivative_consistent = rows
        .iter()
        .all(|r| (r.f_prime - r.f_prime_numeric).abs() <= 1e-6);
    Ok(ConcavityReport {
        rows,
        concave,
        derivative_consistent,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionResult {
    pub alpha: u32,
    pub rate: f64,
    /// argmin partition (empty when only the closed form ran)
    pub partition: Vec<u32>,
    pub minimum: f64,
    /// min of the two closed-form candidates (f(2), f(alpha))
    pub closed_form: f64,
    pub candidates: (f64, f64),
    /// brute force agrees with the closed form within 1e-10 (always true
    /// when both ran)
    pub agreement: bool,
}

const BRUTEFORCE_MAX_ALPHA: u32 = 12;

/// Minimum of sum f(a_i) over integer partitions of alpha, excluding the
/// all-ones partition (parts equal to 1 contribute f(1) = 0; the all-ones
/// term is the main term of the bound, not an error exponent).
pub fn dominant_exponent_bruteforce(
    alpha: u32,
    rate: f64,
    p: &SymbolDistribution,
) -> Result<PartitionResult> {
    if !(2..=BRUTEFORCE_MAX_ALPHA).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "brute force handles 2 <= alpha <= {BRUTEFORCE_MAX_ALPHA}, got {alpha}"
        )));
    }
    let mut best = f64::INFINITY;
    let mut best_partition = Vec::new();
    let mut parts: Vec<u32> = Vec::new();
    partitions(alpha, alpha, &mut parts, &mut |parts| {
        if parts.iter().all(|&a| a == 1) {
            return;
        }
        let value: f64 = parts
            .iter()
            .filter(|&&a| a >= 2)
            .map(|&a| exponent_f(a as f64, rate, p))
            .sum();
        if value < best {
            best = value;
            best_partition = parts.to_vec();
        }
    });
    let closed = closed_candidates(alpha, rate, p);
    let closed_min = closed.0.min(closed.1);
    Ok(PartitionResult {
        alpha,
        rate,
        partition: best_partition,
        minimum: best,
        closed_form: closed_min,
        candidates: closed,
        agreement: (best - closed_min).abs() <= 1e-10,
    })
}

fn partitions(remaining: u32, max_part: u32, parts: &mut Vec<u32>, body: &mut dyn FnMut(&[u32])) {
    if remaining == 0 {
        body(parts);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        parts.push(part);
        partitions(remaining - part, part, parts, body);
        parts.pop();
    }
}

fn closed_candidates(alpha: u32, rate: f64, p: &SymbolDistribution) -> (f64, f64) {
    (
        exponent_f(2.0, rate, p),
        exponent_f(alpha as f64, rate, p),
    )
}

/// Closed-form minimum min( f(2), f(alpha) ); f(2) = R + H_2 - 1 in the
/// configured base. Cross-checked against the partition brute force when
/// alpha is small enough.
pub fn dominant_exponent_closed(
    alpha: u32,
    rate: f64,
    p: &SymbolDistribution,
) -> Result<PartitionResult> {
    if alpha < 2 {
        return Err(Error::InvalidParameter(format!("alpha={alpha} < 2")));
    }
    let candidates = closed_candidates(alpha, rate, p);
    let minimum = candidates.0.min(candidates.1);
    if alpha <= BRUTEFORCE_MAX_ALPHA {
        let brute = dominant_exponent_bruteforce(alpha, rate, p)?;
        return Ok(PartitionResult {
            alpha,
            rate,
            partition: brute.partition,
            minimum,
            closed_form: minimum,
            candidates,
            agreement: (brute.minimum - minimum).abs() <= 1e-10,
        });
    }
    Ok(PartitionResult {
        alpha,
        rate,
        partition: Vec::new(),
        minimum,
        closed_form: minimum,
        candidates,
        agreement: true,
    })
}

/// sum a_i b_i >= sum a_i b_{sigma(i)} for `trials` random permutations of
/// the (sorted, same-order) inputs.
pub fn rearrangement_check(a: &[f64], b: &[f64], trials: u32, seed: u64) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "lengths {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let sorted_dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..b.len()).collect();
    Ok((0..trials).all(|_| {
        perm.shuffle(&mut rng);
        let dot: f64 = a.iter().zip(&perm).map(|(x, &j)| x * b[j]).sum();
        dot <= sorted_dot + 1e-12 * sorted_dot.abs().max(1.0)
    }))
}

/// sum_i prod_j x_{sigma_j(i)}^{p_j} <= sum_i x_i^p for random permutations
/// sigma_j, where p = sum of splits.
pub fn amgm_split_check(x: &[f64], splits: &[f64], trials: u32, seed: u64) -> Result<bool> {
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidParameter("inputs must be nonnegative".into()));
    }
    let p: f64 = splits.iter().sum();
    let rhs: f64 = x.iter().map(|&v| v.powf(p)).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perms: Vec<Vec<usize>> = splits.iter().map(|_| (0..x.len()).collect()).collect();
    Ok((0..trials).all(|_| {
        for perm in perms.iter_mut() {
            perm.shuffle(&mut rng);
        }
        let lhs: f64 = (0..x.len())
            .map(|i| {
                splits
                    .iter()
                    .zip(&perms)
                    .map(|(&pj, perm)| x[perm[i]].powf(pj))
                    .product::<f64>()
            })
            .sum();
        lhs <= rhs + 1e-12 * rhs.abs().max(1.0)
    }))
}
