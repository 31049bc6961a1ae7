//! Dense probability mass functions over F_2^n and their information
//! measures: Renyi/KL divergence, Renyi/Shannon entropy, statistical
//! distance, and additive convolution via the Walsh-Hadamard transform.
//!
//! Index convention: bit j of array index i is coordinate j of the vector.
//! Long sums use compensated (Kahan) accumulation so the 1e-12 tolerances
//! stay honest at large n.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::gf2::PackedVector;

/// Largest n for which dense 2^n arrays are materialized by default.
pub const DEFAULT_DENSE_LIMIT: u32 = 26;

const NORMALIZATION_TOL: f64 = 1e-12;
const ALPHA_ONE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    Bits,
    Nats,
    BaseQ(u32),
}

impl LogBase {
    /// ln of the base; divergences computed in nats divide by this.
    pub fn ln(self) -> f64 {
        match self {
            LogBase::Bits => std::f64::consts::LN_2,
            LogBase::Nats => 1.0,
            LogBase::BaseQ(q) => (q as f64).ln(),
        }
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Bits => write!(f, "bits"),
            LogBase::Nats => write!(f, "nats"),
            LogBase::BaseQ(q) => write!(f, "base{q}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A dense pmf over F_2^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    n: u32,
    values: Vec<f64>,
    base: LogBase,
}

impl Pmf {
    pub fn from_values(values: Vec<f64>, base: LogBase) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "pmf length {} is not a power of two",
                values.len()
            )));
        }
        if values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidParameter("negative or non-finite mass".into()));
        }
        let mut total = KahanSum::default();
        values.iter().for_each(|&v| total.add(v));
        if (total.value() - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(total.value()));
        }
        let n = values.len().trailing_zeros();
        Ok(Self { n, values, base })
    }

    pub fn uniform(n: u32, base: LogBase) -> Self {
        let len = 1usize << n;
        Self {
            n,
            values: vec![1.0 / len as f64; len],
            base,
        }
    }

    pub fn point_mass(index: u64, n: u32, base: LogBase) -> Self {
        let mut values = vec![0.0; 1usize << n];
        values[index as usize] = 1.0;
        Self { n, values, base }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base(&self) -> LogBase {
        self.base
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, index: u64) -> f64 {
        self.values[index as usize]
    }

    pub fn with_base(mut self, base: LogBase) -> Self {
        self.base = base;
        self
    }

    /// CSV rows `index,value`, full precision.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            s.push_str(&format!("{i},{v:.17e}\n"));
        }
        s
    }

    /// Binary dump: u64 LE length prefix, then little-endian f64 values.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&(self.values.len() as u64).to_le_bytes())?;
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R, base: LogBase) -> Result<Self> {
        let mut len_buf = [0u8; 8];
        r.read_exact(&mut len_buf)?;
        let len = u64::from_le_bytes(len_buf) as usize;
        let mut values = Vec::with_capacity(len);
        let mut buf = [0u8; 8];
        for _ in 0..len {
            r.read_exact(&mut buf)?;
            values.push(f64::from_le_bytes(buf));
        }
        Self::from_values(values, base)
    }
}

/// Additive noise over F_2^n.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseModel {
    BernoulliProduct { r: f64 },
    PointMass { index: u64 },
    General(Pmf),
    ParityConditioned { r: f64, support: PackedVector, parity: u8 },
    ParityForced { r: f64, support: PackedVector, parity: u8 },
}

impl NoiseModel {
    pub fn materialize(&self, n: u32, base: LogBase) -> Result<Pmf> {
        match self {
            NoiseModel::BernoulliProduct { r } => bernoulli_product(*r, n).map(|p| p.with_base(base)),
            NoiseModel::PointMass { index } => {
                if *index >= (1u64 << n) {
                    return Err(Error::InvalidParameter("point mass outside F_2^n".into()));
                }
                Ok(Pmf::point_mass(*index, n, base))
            }
            NoiseModel::General(pmf) => {
                if pmf.n() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "noise has n={}, requested n={n}",
                        pmf.n()
                    )));
                }
                Ok(pmf.clone().with_base(base))
            }
            NoiseModel::ParityConditioned { r, support, parity } => {
                parity_conditioned(*r, n, support, *parity).map(|p| p.with_base(base))
            }
            NoiseModel::ParityForced { r, support, parity } => {
                parity_forced(*r, n, support, *parity).map(|p| p.with_base(base))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            NoiseModel::BernoulliProduct { r } => format!("bernoulli(r={r})"),
            NoiseModel::PointMass { index } => format!("point_mass({index})"),
            NoiseModel::General(p) => format!("general(n={})", p.n()),
            NoiseModel::ParityConditioned { r, support, parity } => format!(
                "parity_conditioned(r={r}, support={:#x}, b={parity})",
                support.to_index()
            ),
            NoiseModel::ParityForced { r, support, parity } => format!(
                "parity_forced(r={r}, support={:#x}, b={parity})",
                support.to_index()
            ),
        }
    }
}

/// A divergence together with its order and units.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DivergenceValue {
    pub value: f64,
    pub alpha: f64,
    pub base: LogBase,
}

fn check_pair(p: &Pmf, q: &Pmf) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch(format!(
            "pmf dimensions {} vs {}",
            p.n(),
            q.n()
        )));
    }
    if p.base() != q.base() {
        return Err(Error::DimensionMismatch(format!(
            "log bases {} vs {}",
            p.base(),
            q.base()
        )));
    }
    Ok(())
}

/// Renyi entropy H_alpha = (1/(1-alpha)) log sum p^alpha, in the pmf's base.
/// Routed to Shannon entropy when alpha is within 1e-6 of 1.
pub fn renyi_entropy(p: &Pmf, alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!("alpha={alpha} <= 0")));
    }
    if (alpha - 1.0).abs() < ALPHA_ONE_TOL {
        return Ok(shannon_entropy(p));
    }
    let mut acc = KahanSum::default();
    for &v in p.values() {
        if v > 0.0 {
            acc.add(v.powf(alpha));
        }
    }
    Ok(acc.value().ln() / (1.0 - alpha) / p.base().ln())
}

pub fn shannon_entropy(p: &Pmf) -> f64 {
    let mut acc = KahanSum::default();
    for &v in p.values() {
        if v > 0.0 {
            acc.add(-v * v.ln());
        }
    }
    acc.value() / p.base().ln()
}

/// D_alpha(P||Q) = (1/(alpha-1)) log sum P^alpha Q^(1-alpha). +inf is a
/// legitimate value (alpha > 1 with Q missing mass where P has some).
pub fn renyi_divergence(p: &Pmf, q: &Pmf, alpha: f64) -> Result<DivergenceValue> {
    check_pair(p, q)?;
    if alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!("alpha={alpha} <= 0")));
    }
    if (alpha - 1.0).abs() < ALPHA_ONE_TOL {
        return kl_divergence(p, q);
    }
    let mut acc = KahanSum::default();
    for (&pv, &qv) in p.values().iter().zip(q.values()) {
        if pv == 0.0 {
            continue;
        }
        if qv == 0.0 {
            if alpha > 1.0 {
                return Ok(DivergenceValue {
                    value: f64::INFINITY,
                    alpha,
                    base: p.base(),
                });
            }
            continue;
        }
        acc.add(pv.powf(alpha) * qv.powf(1.0 - alpha));
    }
    Ok(DivergenceValue {
        value: acc.value().ln() / (alpha - 1.0) / p.base().ln(),
        alpha,
        base: p.base(),
    })
}

/// KL divergence sum P log(P/Q), with 0 log 0 := 0.
pub fn kl_divergence(p: &Pmf, q: &Pmf) -> Result<DivergenceValue> {
    check_pair(p, q)?;
    let mut acc = KahanSum::default();
    for (&pv, &qv) in p.values().iter().zip(q.values()) {
        if pv == 0.0 {
            continue;
        }
        if qv == 0.0 {
            return Ok(DivergenceValue {
                value: f64::INFINITY,
                alpha: 1.0,
                base: p.base(),
            });
        }
        acc.add(pv * (pv / qv).ln());
    }
    Ok(DivergenceValue {
        value: acc.value() / p.base().ln(),
        alpha: 1.0,
        base: p.base(),
    })
}

/// (1/2) sum |P - Q|.
pub fn statistical_distance(p: &Pmf, q: &Pmf) -> Result<f64> {
    check_pair(p, q)?;
    let mut acc = KahanSum::default();
    for (&pv, &qv) in p.values().iter().zip(q.values()) {
        acc.add((pv - qv).abs());
    }
    Ok(acc.value() / 2.0)
}

/// Binary entropy in bits, h(0) = h(1) = 0.
pub fn binary_entropy(r: f64) -> f64 {
    if r <= 0.0 || r >= 1.0 {
        return 0.0;
    }
    -(r * r.log2() + (1.0 - r) * (1.0 - r).log2())
}

/// Ber(r)^n: P(x) = r^wt(x) (1-r)^(n-wt(x)).
pub fn bernoulli_product(r: f64, n: u32) -> Result<Pmf> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("r={r} outside [0,1]")));
    }
    check_dense(n, DEFAULT_DENSE_LIMIT)?;
    // precompute per-weight masses to keep the fill exact and fast
    let by_weight: Vec<f64> = (0..=n)
        .map(|w| r.powi(w as i32) * (1.0 - r).powi((n - w) as i32))
        .collect();
    let values = (0..1u64 << n)
        .map(|i| by_weight[i.count_ones() as usize])
        .collect();
    Pmf::from_values(values, LogBase::Bits)
}

/// Exact conditional law of Ber(r)^n given <x, support> = parity.
pub fn parity_conditioned(r: f64, n: u32, support: &PackedVector, parity: u8) -> Result<Pmf> {
    let (mask, w) = parity_support(n, support)?;
    check_dense(n, DEFAULT_DENSE_LIMIT)?;
    let p_odd = flip_prob(r, w);
    let normalizer = if parity == 1 { p_odd } else { 1.0 - p_odd };
    if normalizer == 0.0 {
        return Err(Error::InvalidParameter(
            "conditioning event has probability zero".into(),
        ));
    }
    let by_weight: Vec<f64> = (0..=n)
        .map(|w| r.powi(w as i32) * (1.0 - r).powi((n - w) as i32) / normalizer)
        .collect();
    let values = (0..1u64 << n)
        .map(|i| {
            if (i & mask).count_ones() % 2 == parity as u32 {
                by_weight[i.count_ones() as usize]
            } else {
                0.0
            }
        })
        .collect();
    Pmf::from_values(values, LogBase::Bits)
}

/// The reordered construction: all bits i.i.d. Ber(r) except the highest
/// in-support position, which is forced so the support parity comes out
/// right. Its Shannon entropy is exactly (n-1) h(r).
pub fn parity_forced(r: f64, n: u32, support: &PackedVector, parity: u8) -> Result<Pmf> {
    let (mask, _) = parity_support(n, support)?;
    check_dense(n, DEFAULT_DENSE_LIMIT)?;
    let forced_bit = 63 - mask.leading_zeros() as u64;
    let free_mask = ((1u64 << n) - 1) & !(1 << forced_bit);
    let by_weight: Vec<f64> = (0..n)
        .map(|w| r.powi(w as i32) * (1.0 - r).powi((n - 1 - w) as i32))
        .collect();
    let values = (0..1u64 << n)
        .map(|i| {
            let need = parity as u32 ^ ((i & mask & free_mask).count_ones() % 2);
            if (i >> forced_bit) & 1 == need as u64 {
                by_weight[(i & free_mask).count_ones() as usize]
            } else {
                0.0
            }
        })
        .collect();
    Pmf::from_values(values, LogBase::Bits)
}

fn parity_support(n: u32, support: &PackedVector) -> Result<(u64, u32)> {
    if support.len() != n as usize {
        return Err(Error::DimensionMismatch(format!(
            "support length {} vs n={n}",
            support.len()
        )));
    }
    if support.is_zero() {
        return Err(Error::InvalidParameter("empty parity support".into()));
    }
    Ok((support.to_index(), support.weight() as u32))
}

fn flip_prob(r: f64, t: u32) -> f64 {
    (1.0 - (1.0 - 2.0 * r).powi(t as i32)) / 2.0
}

fn check_dense(n: u32, limit: u32) -> Result<()> {
    if n > limit {
        return Err(Error::DenseLimitExceeded {
            size: n as usize,
            limit,
        });
    }
    Ok(())
}

/// In-place Walsh-Hadamard butterfly. Applying it twice multiplies by 2^n.
pub fn walsh_hadamard(values: &mut [f64]) -> Result<()> {
    if !values.len().is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "length {} is not a power of two",
            values.len()
        )));
    }
    let mut h = 1;
    while h < values.len() {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// Distribution of X + Y (XOR) for independent X ~ P, Y ~ Q, via WHT.
pub fn convolve(p: &Pmf, q: &Pmf) -> Result<Pmf> {
    convolve_with_limit(p, q, DEFAULT_DENSE_LIMIT)
}

pub fn convolve_with_limit(p: &Pmf, q: &Pmf, limit: u32) -> Result<Pmf> {
    check_pair(p, q)?;
    check_dense(p.n(), limit)?;
    let mut a = p.values().to_vec();
    let mut b = q.values().to_vec();
    walsh_hadamard(&mut a)?;
    walsh_hadamard(&mut b)?;
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    walsh_hadamard(&mut a)?;
    let scale = 1.0 / a.len() as f64;
    for x in a.iter_mut() {
        // exact zeros can come out as tiny negatives; clamp before validation
        *x = (*x * scale).max(0.0);
    }
    Pmf::from_values(a, p.base())
}
