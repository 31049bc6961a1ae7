//! Code families: all [n,k] linear codes over small prime fields, doubly-even
//! self-dual binary codes, and (2t,t) quasi-cyclic codes.
//!
//! A `LinearCode` is canonical: the generator is kept in reduced row echelon
//! form, so two values compare equal exactly when they generate the same
//! subspace. All enumerators yield each distinct code once.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::{PackedMatrix, PackedVector};

pub use crate::gf2::rank_of_set;

/// Number of k-dimensional subspaces of F_q^n, exactly.
pub fn gaussian_binomial(n: u32, k: u32, q: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "gaussian binomial needs 0 <= k <= n, got k={k}, n={n}"
        )));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n - i) - BigUint::one();
        den *= q.pow(k - i) - BigUint::one();
    }
    // The product is always an integer; division checks itself.
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// An [n,k] linear code over F_q in canonical (RREF generator) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    generator: PackedMatrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Canonicalizes an arbitrary generator matrix. Fails if rows are not
    /// linearly independent.
    pub fn from_generator(mut generator: PackedMatrix) -> Result<Self> {
        let k = generator.nrows();
        let pivots = generator.rref();
        if pivots.len() != k {
            return Err(Error::InvalidParameter(format!(
                "generator has rank {} < {} rows",
                pivots.len(),
                k
            )));
        }
        Ok(Self { generator, pivots })
    }

    pub fn n(&self) -> usize {
        self.generator.ncols()
    }

    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn q(&self) -> u32 {
        self.generator.q()
    }

    pub fn generator(&self) -> &PackedMatrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Encodes a length-k message: `m * G`.
    pub fn encode(&self, message: &PackedVector) -> PackedVector {
        self.generator.left_mul(message)
    }

    /// Membership by reduction against the RREF rows.
    pub fn contains(&self, v: &PackedVector) -> bool {
        let mut rem = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = rem.get(p);
            if c != 0 {
                rem.add_scaled(self.generator.row(i), self.q() - c);
            }
        }
        rem.is_zero()
    }

    /// Generator rows as integer bitmasks (q = 2, n <= 64 only).
    pub fn row_masks(&self) -> Vec<u64> {
        assert!(self.q() == 2 && self.n() <= 64);
        self.generator.rows().iter().map(|r| r.to_index()).collect()
    }

    /// All q^k codewords, enumerated in message order.
    pub fn codewords(&self) -> Vec<PackedVector> {
        let (k, q) = (self.k(), self.q());
        let total = (q as u64).pow(k as u32);
        let mut msg = vec![0u32; k];
        let mut out = Vec::with_capacity(total as usize);
        for _ in 0..total {
            let m = PackedVector::from_symbols(&msg, q).expect("valid q");
            out.push(self.encode(&m));
            for digit in msg.iter_mut() {
                *digit += 1;
                if *digit < q {
                    break;
                }
                *digit = 0;
            }
        }
        out
    }

    /// Canonical parity-check matrix read off the RREF pivots: for each
    /// non-pivot column j, the row with a 1 at j and -G[i][j] at pivot i.
    pub fn parity_check(&self) -> Result<PackedMatrix> {
        let (n, k, q) = (self.n(), self.k(), self.q());
        if k == n {
            return Err(Error::InvalidParameter(
                "full space has an empty parity check".into(),
            ));
        }
        let mut rows = Vec::with_capacity(n - k);
        for j in 0..n {
            if self.pivots.contains(&j) {
                continue;
            }
            let mut row = PackedVector::zero(n, q)?;
            row.set(j, 1);
            for (i, &p) in self.pivots.iter().enumerate() {
                let g = self.generator.get(i, j);
                if g != 0 {
                    row.set(p, q - g);
                }
            }
            rows.push(row);
        }
        PackedMatrix::from_rows(rows)
    }

    /// The dual code C^perp, as a canonical LinearCode.
    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::from_generator(self.parity_check()?)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next k-combination of {0..n}
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lazily yields every k-dimensional subspace of F_q^n exactly once, by
/// walking Schubert cells: fix the pivot columns, then run an odometer over
/// the free RREF entries.
pub struct LinearCodeEnumerator {
    n: usize,
    k: usize,
    q: u32,
    pivot_sets: Vec<Vec<usize>>,
    set_idx: usize,
    free: Vec<(usize, usize)>,
    odometer: Vec<u32>,
    exhausted_cell: bool,
}

impl LinearCodeEnumerator {
    fn new(n: usize, k: usize, q: u32) -> Self {
        let pivot_sets = combinations(n, k);
        let mut e = Self {
            n,
            k,
            q,
            pivot_sets,
            set_idx: 0,
            free: Vec::new(),
            odometer: Vec::new(),
            exhausted_cell: true,
        };
        e.load_cell();
        e
    }

    fn load_cell(&mut self) {
        let Some(pivots) = self.pivot_sets.get(self.set_idx) else {
            return;
        };
        // In RREF, row i may have a nonzero entry at a non-pivot column j
        // only when j > pivots[i].
        self.free = (0..self.k)
            .flat_map(|i| {
                let p = pivots[i];
                (p + 1..self.n)
                    .filter(|j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        self.odometer = vec![0; self.free.len()];
        self.exhausted_cell = false;
    }

    fn build_current(&self) -> LinearCode {
        let pivots = &self.pivot_sets[self.set_idx];
        let mut g = PackedMatrix::zero(self.k, self.n, self.q).expect("valid q");
        for (i, &p) in pivots.iter().enumerate() {
            g.set(i, p, 1);
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.odometer) {
            g.set(i, j, v);
        }
        LinearCode {
            generator: g,
            pivots: pivots.clone(),
        }
    }
}

impl Iterator for LinearCodeEnumerator {
    type Item = LinearCode;

    fn next(&mut self) -> Option<LinearCode> {
        if self.set_idx >= self.pivot_sets.len() || self.exhausted_cell {
            return None;
        }
        let code = self.build_current();
        // advance the odometer; on wrap, move to the next pivot set
        let mut pos = 0;
        loop {
            if pos == self.odometer.len() {
                self.set_idx += 1;
                if self.set_idx >= self.pivot_sets.len() {
                    self.exhausted_cell = true;
                } else {
                    self.load_cell();
                }
                break;
            }
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.q {
                break;
            }
            self.odometer[pos] = 0;
            pos += 1;
        }
        Some(code)
    }
}

pub fn enumerate_linear_codes(n: usize, k: usize, q: u32) -> Result<LinearCodeEnumerator> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k={k} > n={n}")));
    }
    PackedVector::zero(1, q)?; // validate q
    Ok(LinearCodeEnumerator::new(n, k, q))
}

/// All (2t,t) doubly-even self-dual binary codes, by depth-first extension of
/// doubly-even self-orthogonal subspaces with basis vectors in increasing
/// integer order, de-duplicated by canonical form.
pub fn enumerate_self_dual_doubly_even(t: usize) -> Result<Vec<LinearCode>> {
    if t == 0 || t % 4 != 0 {
        return Err(Error::InvalidParameter(format!(
            "doubly-even self-dual codes need t = 0 mod 4, got t={t}"
        )));
    }
    let n = 2 * t;
    if n > 24 {
        return Err(Error::InvalidParameter(format!(
            "enumeration budget exceeded at t={t}"
        )));
    }
    let candidates: Vec<u64> = (1..(1u64 << n))
        .filter(|v| v.count_ones() % 4 == 0)
        .collect();
    let mut found = HashSet::new();
    let mut basis: Vec<u64> = Vec::new();
    dfs_self_dual(n, t, &candidates, 0, &mut basis, &mut found);
    let mut out: Vec<LinearCode> = found.into_iter().collect();
    out.sort_by(|a, b| a.row_masks().cmp(&b.row_masks()));
    Ok(out)
}

fn dfs_self_dual(
    n: usize,
    t: usize,
    candidates: &[u64],
    start: usize,
    basis: &mut Vec<u64>,
    found: &mut HashSet<LinearCode>,
) {
    if basis.len() == t {
        let rows = basis
            .iter()
            .map(|&m| PackedVector::from_index(m, n))
            .collect();
        let code = LinearCode::from_generator(
            PackedMatrix::from_rows(rows).expect("nonempty basis"),
        )
        .expect("independent basis");
        found.insert(code);
        return;
    }
    for (idx, &v) in candidates.iter().enumerate().skip(start) {
        // self-orthogonality: <v, b> = 0 for all chosen b; doubly-even weight
        // is guaranteed by the candidate list. The pair condition keeps sums
        // doubly-even too: wt(a+b) = wt(a)+wt(b)-2|a&b| and <a,b>=0 makes
        // |a&b| even.
        if basis.iter().any(|&b| (b & v).count_ones() % 2 == 1) {
            continue;
        }
        if in_span(basis, v) {
            continue;
        }
        basis.push(v);
        dfs_self_dual(n, t, candidates, idx + 1, basis, found);
        basis.pop();
    }
}

fn in_span(basis: &[u64], v: u64) -> bool {
    // echelonize (distinct leading bits, sorted descending), then reduce v
    let mut echelon: Vec<u64> = Vec::new();
    for &b in basis {
        let r = reduce_by(&echelon, b);
        if r != 0 {
            echelon.push(r);
            echelon.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    reduce_by(&echelon, v) == 0
}

fn reduce_by(echelon: &[u64], mut x: u64) -> u64 {
    for &e in echelon {
        if x ^ e < x {
            x ^= e;
        }
    }
    x
}

/// A (2t,t) quasi-cyclic code: codewords [l(x), l(x)a(x)] mod x^t + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiCyclicCode {
    t: usize,
    /// Multiplier a(x), bit i = coefficient of x^i.
    multiplier: u64,
    code: LinearCode,
}

impl QuasiCyclicCode {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }
}

/// Carry-less multiplication of polynomials over F_2, reduced mod x^t + 1.
fn polymul_mod(a: u64, b: u64, t: usize) -> u64 {
    let mut acc = 0u64;
    for i in 0..t {
        if (a >> i) & 1 == 1 {
            acc ^= b << i;
        }
    }
    // fold the high part back: x^t = 1
    let mask = (1u64 << t) - 1;
    (acc & mask) ^ (acc >> t)
}

fn poly_invertible_mod(a: u64, t: usize) -> bool {
    // gcd(a(x), x^t + 1) over F_2[x]
    let mut x = a;
    let mut y = (1u64 << t) | 1;
    while x != 0 {
        let (dx, dy) = (63 - x.leading_zeros(), 63 - y.leading_zeros());
        if dx < dy {
            std::mem::swap(&mut x, &mut y);
            continue;
        }
        x ^= y << (dx - dy);
    }
    y == 1
}

/// Yields the distinct (2t,t) quasi-cyclic codes with odd-weight multiplier.
///
/// Only invertible multipliers are kept: under the balance conditions the
/// sole non-invertible odd-weight polynomial is the all-ones one, and the
/// family of size 2^{t-1} - 1 is exactly the invertible orbit. Codes are
/// de-duplicated as subspaces regardless.
pub fn enumerate_quasi_cyclic(t: usize) -> Result<Vec<QuasiCyclicCode>> {
    if t < 3 || t % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "quasi-cyclic family needs odd t >= 3, got t={t}"
        )));
    }
    if 2 * t > 32 {
        return Err(Error::InvalidParameter(format!(
            "enumeration budget exceeded at t={t}"
        )));
    }
    let n = 2 * t;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 1u64..(1 << t) {
        if a.count_ones() % 2 == 0 || !poly_invertible_mod(a, t) {
            continue;
        }
        let rows = (0..t)
            .map(|i| {
                let left = 1u64 << i;
                let right = polymul_mod(left, a, t);
                PackedVector::from_index(left | (right << t), n)
            })
            .collect();
        let code = LinearCode::from_generator(
            PackedMatrix::from_rows(rows).expect("t >= 3"),
        )
        .expect("identity left half has full rank");
        if seen.insert(code.clone()) {
            out.push(QuasiCyclicCode {
                t,
                multiplier: a,
                code,
            });
        }
    }
    Ok(out)
}

/// True iff t is prime, 2 is a primitive root mod t, and t = ±3 mod 8.
pub fn qc_balance_condition(t: u64) -> bool {
    if t < 2 || !is_prime(t) {
        return false;
    }
    if !matches!(t % 8, 3 | 5) {
        return false;
    }
    multiplicative_order_2(t) == t - 1
}

fn is_prime(t: u64) -> bool {
    if t < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= t {
        if t % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn multiplicative_order_2(t: u64) -> u64 {
    let mut pow = 2 % t;
    let mut ord = 1;
    while pow != 1 {
        pow = (pow * 2) % t;
        ord += 1;
    }
    ord
}

/// A code ensemble: exhaustive families iterate each distinct code once;
/// the sampled family draws uniformly over k-dimensional subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnsembleSpec {
    AllLinear { n: usize, k: usize, q: u32 },
    SelfDualDoublyEven { t: usize },
    QuasiCyclic { t: usize },
    SampledLinear { n: usize, k: usize, count: usize, seed: u64 },
}

impl EnsembleSpec {
    pub fn is_exhaustive(&self) -> bool {
        !matches!(self, EnsembleSpec::SampledLinear { .. })
    }

    pub fn n(&self) -> usize {
        match *self {
            EnsembleSpec::AllLinear { n, .. } | EnsembleSpec::SampledLinear { n, .. } => n,
            EnsembleSpec::SelfDualDoublyEven { t } | EnsembleSpec::QuasiCyclic { t } => 2 * t,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            EnsembleSpec::AllLinear { k, .. } | EnsembleSpec::SampledLinear { k, .. } => k,
            EnsembleSpec::SelfDualDoublyEven { t } | EnsembleSpec::QuasiCyclic { t } => t,
        }
    }

    pub fn q(&self) -> u32 {
        match *self {
            EnsembleSpec::AllLinear { q, .. } => q,
            _ => 2,
        }
    }

    /// Exact family size (exhaustive families only).
    pub fn count(&self) -> Result<BigUint> {
        match *self {
            EnsembleSpec::AllLinear { n, k, q } => gaussian_binomial(n as u32, k as u32, q),
            EnsembleSpec::SelfDualDoublyEven { t } => {
                if t % 4 != 0 {
                    return Err(Error::InvalidParameter("t must be 0 mod 4".into()));
                }
                let mut c = BigUint::from(2u32);
                for i in 1..=(t.saturating_sub(2)) {
                    c *= BigUint::from(2u32).pow(i as u32) + BigUint::one();
                }
                Ok(c)
            }
            EnsembleSpec::QuasiCyclic { t } => {
                Ok(BigUint::from(2u32).pow(t as u32 - 1) - BigUint::one())
            }
            EnsembleSpec::SampledLinear { count, .. } => Ok(BigUint::from(count)),
        }
    }

    pub fn iter(&self) -> Result<Box<dyn Iterator<Item = LinearCode>>> {
        match *self {
            EnsembleSpec::AllLinear { n, k, q } => {
                Ok(Box::new(enumerate_linear_codes(n, k, q)?))
            }
            EnsembleSpec::SelfDualDoublyEven { t } => {
                Ok(Box::new(enumerate_self_dual_doubly_even(t)?.into_iter()))
            }
            EnsembleSpec::QuasiCyclic { t } => Ok(Box::new(
                enumerate_quasi_cyclic(t)?.into_iter().map(|c| c.code),
            )),
            EnsembleSpec::SampledLinear { n, k, count, seed } => {
                Ok(Box::new(SampledCodeIter::new(n, k, count, seed)))
            }
        }
    }
}

struct SampledCodeIter {
    n: usize,
    k: usize,
    remaining: usize,
    rng: rand_chacha::ChaCha8Rng,
}

impl SampledCodeIter {
    fn new(n: usize, k: usize, count: usize, seed: u64) -> Self {
        use rand::SeedableRng;
        Self {
            n,
            k,
            remaining: count,
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for SampledCodeIter {
    type Item = LinearCode;

    fn next(&mut self) -> Option<LinearCode> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(sample_full_rank_code(self.n, self.k, &mut self.rng))
    }
}

/// Uniform over k-dim subspaces: i.i.d. uniform generator entries, rejected
/// until full rank, then canonicalized (every subspace has the same number of
/// full-rank generators).
pub fn sample_full_rank_code<R: Rng>(n: usize, k: usize, rng: &mut R) -> LinearCode {
    loop {
        let rows: Vec<PackedVector> = (0..k)
            .map(|_| {
                let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                PackedVector::from_index(rng.gen::<u64>() & mask, n)
            })
            .collect();
        let m = PackedMatrix::from_rows(rows).expect("k >= 1");
        if let Ok(code) = LinearCode::from_generator(m) {
            return code;
        }
    }
}

/// Number of ensemble codes containing `v`. Exhaustive families only.
pub fn membership_count(v: &PackedVector, ensemble: &EnsembleSpec) -> Result<u64> {
    if !ensemble.is_exhaustive() {
        return Err(Error::InvalidParameter(
            "membership counts are defined for exhaustive families only".into(),
        ));
    }
    if v.len() != ensemble.n() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs ensemble length {}",
            v.len(),
            ensemble.n()
        )));
    }
    Ok(ensemble.iter()?.filter(|c| c.contains(v)).count() as u64)
}

/// Text format: header `n k q`, then k rows of concatenated symbol digits.
pub fn code_to_text(code: &LinearCode) -> String {
    let mut s = format!("{} {} {}\n", code.n(), code.k(), code.q());
    for row in code.generator().rows() {
        for sym in row.iter() {
            s.push(char::from_digit(sym, 10).expect("q < 10"));
        }
        s.push('\n');
    }
    s
}

pub fn code_from_text(text: &str) -> Result<LinearCode> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty code block".into()))?;
    let parts: Vec<usize> = header
        .split_whitespace()
        .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad header `{header}`"))))
        .collect::<Result<_>>()?;
    let [n, k, q] = parts[..] else {
        return Err(Error::Parse(format!("bad header `{header}`")));
    };
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated code block".into()))?;
        let symbols: Vec<u32> = line
            .trim()
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad symbol `{c}`"))))
            .collect::<std::result::Result<_, _>>()?;
        if symbols.len() != n {
            return Err(Error::Parse(format!(
                "row has {} symbols, expected {n}",
                symbols.len()
            )));
        }
        rows.push(PackedVector::from_symbols(&symbols, q as u32)?);
    }
    LinearCode::from_generator(PackedMatrix::from_rows(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomial_small() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(7, 0, 3).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(5, 5, 2).unwrap(), BigUint::one());
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn enumerate_matches_gaussian_binomial() {
        for n in 0..=6usize {
            for k in 0..=n {
                let count = enumerate_linear_codes(n, k, 2).unwrap().count();
                let expect = gaussian_binomial(n as u32, k as u32, 2).unwrap();
                assert_eq!(BigUint::from(count), expect, "n={n} k={k}");
            }
        }
        let count3 = enumerate_linear_codes(4, 2, 3).unwrap().count();
        assert_eq!(
            BigUint::from(count3),
            gaussian_binomial(4, 2, 3).unwrap()
        );
    }

    #[test]
    fn enumerate_n2_k1() {
        let codes: Vec<_> = enumerate_linear_codes(2, 1, 2).unwrap().collect();
        assert_eq!(codes.len(), 3);
        let mut gens: Vec<u64> = codes.iter().map(|c| c.row_masks()[0]).collect();
        gens.sort();
        assert_eq!(gens, vec![0b01, 0b10, 0b11]);
    }

    #[test]
    fn enumerated_codes_are_distinct_and_closed() {
        let codes: Vec<_> = enumerate_linear_codes(4, 2, 2).unwrap().collect();
        let set: HashSet<_> = codes.iter().cloned().collect();
        assert_eq!(set.len(), 35);
        for code in &codes {
            let words = code.codewords();
            assert_eq!(words.len(), 4);
            for a in &words {
                for b in &words {
                    assert!(code.contains(&a.add(b)));
                }
            }
        }
    }

    #[test]
    fn canonicalization_is_stable() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let code = sample_full_rank_code(6, 3, &mut rng);
            // scramble: random invertible message-space change of basis
            let scramble = sample_full_rank_code(3, 3, &mut rng);
            let rows = (0..3)
                .map(|i| code.encode(scramble.generator().row(i)))
                .collect();
            let re = LinearCode::from_generator(PackedMatrix::from_rows(rows).unwrap()).unwrap();
            assert_eq!(re, code);
        }
    }

    #[test]
    fn self_dual_census_t4() {
        let codes = enumerate_self_dual_doubly_even(4).unwrap();
        assert_eq!(codes.len(), 30);
        let ones = PackedVector::from_index(0xff, 8);
        for code in &codes {
            assert!(code.contains(&ones));
            for w in code.codewords() {
                assert_eq!(w.weight() % 4, 0);
            }
            // G G^T = 0
            for a in code.generator().rows() {
                for b in code.generator().rows() {
                    assert_eq!(a.dot(b), 0);
                }
            }
        }
    }

    #[test]
    fn self_dual_membership_multiplicity() {
        let ensemble = EnsembleSpec::SelfDualDoublyEven { t: 4 };
        for idx in 1..256u64 {
            let v = PackedVector::from_index(idx, 8);
            if v.weight() % 4 != 0 || idx == 0xff {
                continue;
            }
            assert_eq!(membership_count(&v, &ensemble).unwrap(), 6, "v={idx:08b}");
        }
    }

    #[test]
    fn qc_counts() {
        assert_eq!(enumerate_quasi_cyclic(3).unwrap().len(), 3);
        assert_eq!(enumerate_quasi_cyclic(5).unwrap().len(), 15);
        assert_eq!(enumerate_quasi_cyclic(11).unwrap().len(), 1023);
        assert_eq!(enumerate_quasi_cyclic(13).unwrap().len(), 4095);
    }

    #[test]
    fn qc_codes_have_even_weights() {
        for qc in enumerate_quasi_cyclic(3).unwrap() {
            for w in qc.code().codewords() {
                assert_eq!(w.weight() % 2, 0);
            }
        }
    }

    #[test]
    fn qc_balance_condition_examples() {
        assert!(qc_balance_condition(3));
        assert!(!qc_balance_condition(7));
        assert!(qc_balance_condition(13));
        assert!(qc_balance_condition(5));
        assert!(qc_balance_condition(11));
        assert!(!qc_balance_condition(9));
        assert!(!qc_balance_condition(17));
    }

    #[test]
    fn membership_count_examples() {
        let ens = EnsembleSpec::AllLinear { n: 2, k: 1, q: 2 };
        let zero = PackedVector::zero(2, 2).unwrap();
        assert_eq!(membership_count(&zero, &ens).unwrap(), 3);
        let e0 = PackedVector::from_index(1, 2);
        assert_eq!(membership_count(&e0, &ens).unwrap(), 1);
    }

    #[test]
    fn rank_of_set_matches_span_oracle() {
        // all subsets of size <= 3 of F_2^4
        let all: Vec<u64> = (0..16).collect();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    let vs = [
                        PackedVector::from_index(a, 4),
                        PackedVector::from_index(b, 4),
                        PackedVector::from_index(c, 4),
                    ];
                    let span: HashSet<u64> = (0..8u64)
                        .map(|m| {
                            let mut acc = 0;
                            for (bit, &v) in [a, b, c].iter().enumerate() {
                                if (m >> bit) & 1 == 1 {
                                    acc ^= v;
                                }
                            }
                            acc
                        })
                        .collect();
                    let expected = (span.len() as f64).log2().round() as usize;
                    assert_eq!(rank_of_set(&vs), expected);
                }
            }
        }
    }

    #[test]
    fn dual_code_relation() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let code = sample_full_rank_code(7, 3, &mut rng);
            let dual = code.dual().unwrap();
            assert_eq!(dual.k(), 4);
            for c in code.generator().rows() {
                for d in dual.generator().rows() {
                    assert_eq!(c.dot(d), 0);
                }
            }
            assert_eq!(dual.dual().unwrap(), code);
        }
    }

    #[test]
    fn text_roundtrip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let code = sample_full_rank_code(6, 2, &mut rng);
        let text = code_to_text(&code);
        assert_eq!(code_from_text(&text).unwrap(), code);
    }
}
