//! Packed vectors and matrices over small prime fields.
//!
//! `q = 2` is the workhorse and is stored one bit per coordinate in `u64`
//! words; odd primes fall back to a byte per symbol. All row reduction is
//! plain Gauss-Jordan; the sizes in play never justify anything cleverer.

use crate::error::{Error, Result};

const SUPPORTED_Q: &[u32] = &[2, 3, 5, 7];

fn check_q(q: u32) -> Result<()> {
    if SUPPORTED_Q.contains(&q) {
        Ok(())
    } else {
        Err(Error::UnsupportedAlphabet(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Payload {
    /// Bit-packed, least significant bit of word 0 = coordinate 0.
    Bits(Vec<u64>),
    /// One symbol per byte, always reduced mod q.
    Symbols(Vec<u8>),
}

/// A length-`n` vector over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedVector {
    len: usize,
    q: u32,
    payload: Payload,
}

impl PackedVector {
    pub fn zero(len: usize, q: u32) -> Result<Self> {
        check_q(q)?;
        let payload = if q == 2 {
            Payload::Bits(vec![0u64; len.div_ceil(64)])
        } else {
            Payload::Symbols(vec![0u8; len])
        };
        Ok(Self { len, q, payload })
    }

    pub fn from_symbols(symbols: &[u32], q: u32) -> Result<Self> {
        let mut v = Self::zero(symbols.len(), q)?;
        for (i, &s) in symbols.iter().enumerate() {
            v.set(i, s % q);
        }
        Ok(v)
    }

    /// Builds a binary vector from an integer index: bit `j` of `index`
    /// becomes coordinate `j`.
    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Self {
            len,
            q: 2,
            payload: Payload::Bits(vec![index & mask]),
        }
    }

    /// Inverse of [`from_index`]; only valid for q = 2 and n <= 64.
    pub fn to_index(&self) -> u64 {
        assert!(self.q == 2 && self.len <= 64);
        match &self.payload {
            Payload::Bits(w) => w.first().copied().unwrap_or(0),
            Payload::Symbols(_) => unreachable!(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn get(&self, i: usize) -> u32 {
        assert!(i < self.len);
        match &self.payload {
            Payload::Bits(w) => ((w[i / 64] >> (i % 64)) & 1) as u32,
            Payload::Symbols(s) => s[i] as u32,
        }
    }

    pub fn set(&mut self, i: usize, value: u32) {
        assert!(i < self.len);
        let value = value % self.q;
        match &mut self.payload {
            Payload::Bits(w) => {
                let bit = 1u64 << (i % 64);
                if value == 1 {
                    w[i / 64] |= bit;
                } else {
                    w[i / 64] &= !bit;
                }
            }
            Payload::Symbols(s) => s[i] = value as u8,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Bits(w) => w.iter().all(|&x| x == 0),
            Payload::Symbols(s) => s.iter().all(|&x| x == 0),
        }
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        match &self.payload {
            Payload::Bits(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Payload::Symbols(s) => s.iter().filter(|&&x| x != 0).count(),
        }
    }

    /// In-place `self += c * other` over F_q.
    pub fn add_scaled(&mut self, other: &Self, c: u32) {
        assert_eq!(self.len, other.len);
        assert_eq!(self.q, other.q);
        let c = c % self.q;
        if c == 0 {
            return;
        }
        match (&mut self.payload, &other.payload) {
            (Payload::Bits(a), Payload::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
            (Payload::Symbols(a), Payload::Symbols(b)) => {
                let q = self.q as u16;
                for (x, y) in a.iter_mut().zip(b) {
                    *x = ((*x as u16 + c as u16 * *y as u16) % q) as u8;
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.len, self.q).expect("q already validated");
        out.add_scaled(self, c);
        out
    }

    /// Inner product `<self, other>` in F_q.
    pub fn dot(&self, other: &Self) -> u32 {
        assert_eq!(self.len, other.len);
        assert_eq!(self.q, other.q);
        match (&self.payload, &other.payload) {
            (Payload::Bits(a), Payload::Bits(b)) => {
                let ones: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
                ones & 1
            }
            (Payload::Symbols(a), Payload::Symbols(b)) => {
                let mut acc = 0u64;
                for (x, y) in a.iter().zip(b) {
                    acc += *x as u64 * *y as u64;
                }
                (acc % self.q as u64) as u32
            }
            _ => unreachable!(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Mixed-radix ordinal sum_j v_j q^j; coincides with `to_index` at q = 2.
    pub fn ordinal(&self) -> u64 {
        let mut acc = 0u64;
        for i in (0..self.len).rev() {
            acc = acc * self.q as u64 + self.get(i) as u64;
        }
        acc
    }
}

/// All q^n vectors of F_q^n in ordinal order.
pub fn all_vectors(n: usize, q: u32) -> impl Iterator<Item = PackedVector> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = PackedVector::zero(n, q).expect("valid q");
        for i in 0..n {
            v.set(i, (idx % q as u64) as u32);
            idx /= q as u64;
        }
        v
    })
}

/// A dense matrix over F_q, stored row-major as packed vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedMatrix {
    rows: Vec<PackedVector>,
    ncols: usize,
    q: u32,
}

impl PackedMatrix {
    pub fn zero(nrows: usize, ncols: usize, q: u32) -> Result<Self> {
        check_q(q)?;
        let rows = (0..nrows)
            .map(|_| PackedVector::zero(ncols, q))
            .collect::<Result<_>>()?;
        Ok(Self { rows, ncols, q })
    }

    pub fn from_rows(rows: Vec<PackedVector>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidParameter("matrix needs at least one row".into()))?;
        let (ncols, q) = (first.len(), first.q());
        if rows.iter().any(|r| r.len() != ncols || r.q() != q) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows, ncols, q })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn row(&self, i: usize) -> &PackedVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[PackedVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.rows[i].set(j, value);
    }

    /// Row-vector times matrix: `v * M`, where `v` has `nrows` coordinates.
    pub fn left_mul(&self, v: &PackedVector) -> PackedVector {
        assert_eq!(v.len(), self.nrows());
        let mut out = PackedVector::zero(self.ncols, self.q).expect("q already validated");
        for (i, row) in self.rows.iter().enumerate() {
            out.add_scaled(row, v.get(i));
        }
        out
    }

    /// Matrix times column vector: `M * v`, where `v` has `ncols` coordinates.
    pub fn right_mul(&self, v: &PackedVector) -> PackedVector {
        assert_eq!(v.len(), self.ncols);
        let mut out = PackedVector::zero(self.nrows(), self.q).expect("q already validated");
        for (i, row) in self.rows.iter().enumerate() {
            out.set(i, row.dot(v));
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let q = self.q;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            let Some(pivot_row) = (r..self.rows.len()).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            self.rows.swap(r, pivot_row);
            let inv = mod_inverse(self.get(r, col), q);
            if inv != 1 {
                self.rows[r] = self.rows[r].scale(inv);
            }
            for i in 0..self.rows.len() {
                if i != r {
                    let c = self.get(i, col);
                    if c != 0 {
                        let (head, tail) = self.rows.split_at_mut(r.max(i));
                        let (src, dst) = if i < r {
                            (&tail[0], &mut head[i])
                        } else {
                            (&head[r], &mut tail[0])
                        };
                        dst.add_scaled(src, q - c);
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

/// Rank of a set of vectors over their common field.
pub fn rank_of_set(vectors: &[PackedVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    PackedMatrix::from_rows(vectors.to_vec())
        .expect("uniform vectors")
        .rank()
}

fn mod_inverse(a: u32, q: u32) -> u32 {
    // q is a small prime, so Fermat by trial is fine.
    (1..q).find(|&x| (a * x) % q == 1).expect("nonzero element")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        for idx in [0u64, 1, 5, 0b101101, 63] {
            let v = PackedVector::from_index(idx, 6);
            assert_eq!(v.to_index(), idx);
            assert_eq!(v.weight(), idx.count_ones() as usize);
        }
    }

    #[test]
    fn dot_product_gf2() {
        let a = PackedVector::from_index(0b1011, 4);
        let b = PackedVector::from_index(0b1101, 4);
        // overlap = {0, 3}, even
        assert_eq!(a.dot(&b), 0);
        let c = PackedVector::from_index(0b0001, 4);
        assert_eq!(a.dot(&c), 1);
    }

    #[test]
    fn gf3_arithmetic() {
        let a = PackedVector::from_symbols(&[1, 2, 0, 1], 3).unwrap();
        let b = PackedVector::from_symbols(&[2, 2, 1, 0], 3).unwrap();
        let s = a.add(&b);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 1, 1]);
        assert_eq!(a.dot(&b), (2 + 4) % 3);
    }

    #[test]
    fn rref_gf2() {
        let rows = vec![
            PackedVector::from_index(0b0111, 4),
            PackedVector::from_index(0b0110, 4),
            PackedVector::from_index(0b0001, 4),
        ];
        let mut m = PackedMatrix::from_rows(rows).unwrap();
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_gf3_identity_block() {
        let rows = vec![
            PackedVector::from_symbols(&[2, 1, 1], 3).unwrap(),
            PackedVector::from_symbols(&[1, 1, 2], 3).unwrap(),
        ];
        let mut m = PackedMatrix::from_rows(rows).unwrap();
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.get(0, 0), 1);
        assert_eq!(m.get(1, 1), 1);
        assert_eq!(m.get(0, 1), 0);
        assert_eq!(m.get(1, 0), 0);
    }

    #[test]
    fn rank_of_dependent_set() {
        let v1 = PackedVector::from_index(0b110, 3);
        let v2 = PackedVector::from_index(0b011, 3);
        let v3 = v1.add(&v2);
        assert_eq!(rank_of_set(&[v1, v2, v3]), 2);
    }
}
