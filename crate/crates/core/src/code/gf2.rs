//! Bit-packed vectors and matrices over GF(2).

use std::fmt;

use crate::error::{check_len, param, Result};

/// A fixed-length vector over GF(2), packed 64 bits per word.
///
/// Bits beyond `len` in the last word are always zero, so equality and
/// hashing work on the raw words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Builds a vector from a slice of 0/1 values. Any nonzero entry is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of '0'/'1' characters.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => param(format!("not a bit: {other:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Indicator vector with ones at `positions`.
    pub fn indicator(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in positions {
            v.set(i, true);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        self.get(i) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Element-wise XOR. Fails on unequal lengths.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<()> {
        check_len(self.len, other.len)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Hamming distance. Fails on unequal lengths.
    pub fn distance(&self, other: &Self) -> Result<usize> {
        check_len(self.len, other.len)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> Result<bool> {
        check_len(self.len, other.len)?;
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones & 1 == 1)
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    /// The subvector on positions `range`.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        let mut v = Self::zeros(end - start);
        for i in self.ones().filter(|&i| i >= start && i < end) {
            v.set(i - start, true);
        }
        v
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense binary matrix stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BinaryVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BinaryVector::zeros(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BinaryVector>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(Self { cols, rows })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BinaryVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn column(&self, c: usize) -> BinaryVector {
        let mut v = BinaryVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    /// `self · vᵀ`: one output bit per row.
    pub fn mul_vec(&self, v: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.cols, v.len())?;
        let mut out = BinaryVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v)? {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `u · self`: XOR of the rows selected by `u`.
    pub fn vec_mul(&self, u: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.rows.len(), u.len())?;
        let mut out = BinaryVector::zeros(self.cols);
        for r in u.ones() {
            out.xor_assign(&self.rows[r])?;
        }
        Ok(out)
    }

    /// `self · otherᵀ`.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.cols)?;
        let mut out = BitMatrix::zeros(self.rows.len(), other.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b)? {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.weight() == 0)
    }

    pub fn rank(&self) -> usize {
        self.row_reduced().num_rows()
    }

    /// Gauss-Jordan elimination; returns the nonzero rows of the reduced
    /// echelon form (a basis of the row space).
    pub fn row_reduced(&self) -> BitMatrix {
        let mut rows = self.rows.clone();
        let mut pivot_row = 0;
        for c in 0..self.cols {
            let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(pivot_row, p);
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row.get(c) {
                    row.xor_assign(&pivot).expect("equal lengths");
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivot_row);
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    /// Given a full-rank `r × n` parity-check matrix whose last `r` columns
    /// are linearly independent, returns the `(n − r) × n` generator
    /// `[I | P]` with the message in the first `n − r` positions.
    pub fn systematic_generator(&self) -> Result<BitMatrix> {
        let r = self.rows.len();
        let n = self.cols;
        if r > n {
            return param("parity-check matrix has more rows than columns");
        }
        let k = n - r;
        // Reduce the trailing r×r block to the identity.
        let mut rows = self.rows.clone();
        for j in 0..r {
            let c = k + j;
            let Some(p) = (j..r).find(|&i| rows[i].get(c)) else {
                return param("trailing columns of the parity-check matrix are singular");
            };
            rows.swap(j, p);
            let pivot = rows[j].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != j && row.get(c) {
                    row.xor_assign(&pivot)?;
                }
            }
        }
        // Now row j reads [A_j | e_j]; the parity bits are p_j = A_j · u.
        let mut g = BitMatrix::zeros(k, n);
        for i in 0..k {
            g.set(i, i, true);
            for (j, row) in rows.iter().enumerate() {
                if row.get(i) {
                    g.set(i, k + j, true);
                }
            }
        }
        Ok(g)
    }
}
