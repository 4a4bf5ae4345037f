//! Component codes: construction, encoding, syndromes and bounded-distance
//! decoding.
//!
//! Every code keeps two syndrome views. `parity_check` is a full-rank
//! `(n−k)×n` matrix used for the public [`ComponentCode::syndrome`]. The
//! decoder additionally packs one `u64` "decoder column" per position, so
//! the decoder syndrome of a word is the XOR of the columns at its ones.
//! Chase decoding updates that packed syndrome one flip at a time.

pub mod gf2;
pub mod gf2m;
mod product;

use std::collections::HashMap;

use smallvec::SmallVec;

pub use gf2::{BinaryVector, BitMatrix};
pub use gf2m::GaloisField;
pub use product::{transpose, ProductCode};

use crate::error::{check_len, param, Error, Result};

/// Positions flipped by a bounded-distance decoder, at most `t` of them.
pub type ErrorPattern = SmallVec<[u16; 4]>;

/// Largest `k` for which the codebook may be enumerated.
pub const MAX_ENUMERABLE_K: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    ExtendedHamming,
    ExtendedBch,
    Repetition,
    Custom,
}

#[derive(Clone, Debug)]
enum BddEngine {
    /// Decoder columns are `value | 1 << m`, the last position is `1 << m`.
    ExtendedHamming { m: u32, position_of: Vec<u16> },
    /// Decoder columns are `α^j | α^{3j} << m | 1 << 2m`, the last position
    /// is `1 << 2m`.
    ExtendedBch { field: GaloisField },
    /// Coset-leader table over all patterns of weight ≤ t.
    Table { leaders: HashMap<u64, ErrorPattern> },
}

/// An `(n, k, d_min)` binary linear code with a bounded-distance decoder of
/// capability `t = ⌊(d_min − 1)/2⌋`.
#[derive(Clone, Debug)]
pub struct ComponentCode {
    n: usize,
    k: usize,
    d_min: usize,
    t: usize,
    kind: CodeKind,
    parity_check: BitMatrix,
    generator: BitMatrix,
    columns: Vec<u64>,
    engine: BddEngine,
}

impl ComponentCode {
    /// The `(2^m, 2^m − 1 − m, 4)` extended Hamming code.
    ///
    /// Positions `0..k` carry the message, `k..k+m` the Hamming checks
    /// (columns with a single one), and position `n − 1` the overall parity.
    pub fn extended_hamming(m: u32) -> Result<Self> {
        if !(3..=12).contains(&m) {
            return param(format!("extended Hamming needs 3 ≤ m ≤ 12, got {m}"));
        }
        let n = 1usize << m;
        let k = n - 1 - m as usize;
        let mut values: Vec<u64> = (1..(n as u64)).filter(|v| !v.is_power_of_two()).collect();
        values.extend((0..m).map(|b| 1u64 << b));
        debug_assert_eq!(values.len(), n - 1);
        let parity_bit = 1u64 << m;
        let mut columns: Vec<u64> = values.iter().map(|v| v | parity_bit).collect();
        columns.push(parity_bit);
        let mut position_of = vec![u16::MAX; n];
        for (pos, &v) in values.iter().enumerate() {
            position_of[v as usize] = pos as u16;
        }
        let parity_check = matrix_from_columns(&columns, m as usize + 1);
        Self::assemble(
            n,
            k,
            4,
            CodeKind::ExtendedHamming,
            parity_check,
            columns,
            BddEngine::ExtendedHamming { m, position_of },
        )
    }

    /// The extended narrow-sense binary BCH code of length `2^m` with design
    /// correction capability 2, e.g. `(256, 239, 6)` for `m = 8`.
    ///
    /// Inner position `j < n − 1` corresponds to the locator `α^j`; the last
    /// position is the overall parity.
    pub fn extended_bch(m: u32, t_design: usize) -> Result<Self> {
        if !(4..=10).contains(&m) {
            return param(format!("extended BCH needs 4 ≤ m ≤ 10, got {m}"));
        }
        if t_design != 2 {
            return param(format!(
                "extended BCH decoding is implemented for t_design = 2 only, got {t_design}"
            ));
        }
        let field = GaloisField::new(m)?;
        let n = 1usize << m;
        let inner = n - 1;
        let deg_g: usize = field.cyclotomic_coset(1).len() + field.cyclotomic_coset(3).len();
        if deg_g >= inner {
            return param("BCH parameters leave no message bits");
        }
        let k = inner - deg_g;
        let parity_bit = 1u64 << (2 * m);
        let mut columns: Vec<u64> = (0..inner)
            .map(|j| {
                field.alpha_pow(j) as u64
                    | (field.alpha_pow(3 * j) as u64) << m
                    | parity_bit
            })
            .collect();
        columns.push(parity_bit);
        let full = matrix_from_columns(&columns, 2 * m as usize + 1);
        let parity_check = if full.rank() == n - k {
            full
        } else {
            full.row_reduced()
        };
        Self::assemble(
            n,
            k,
            2 * t_design + 2,
            CodeKind::ExtendedBch,
            parity_check,
            columns,
            BddEngine::ExtendedBch { field },
        )
    }

    /// The `(n, 1, n)` repetition code.
    pub fn repetition(n: usize) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return param(format!("repetition length must be in 2..=64, got {n}"));
        }
        let rows = (1..n)
            .map(|i| BinaryVector::indicator(n, &[0, i]))
            .collect::<Vec<_>>();
        let h = BitMatrix::from_rows(n, rows)?;
        Self::from_table(h, n, CodeKind::Repetition)
    }

    /// A code defined by an arbitrary parity-check matrix. Rows may be
    /// dependent; the last `n − k` columns must form a check set. The
    /// minimum distance is found exhaustively, so `k ≤ 16` is required.
    pub fn custom(parity_check: &BitMatrix) -> Result<Self> {
        let h = parity_check.row_reduced();
        let n = h.num_cols();
        if n > 64 {
            return param("custom codes are limited to n ≤ 64");
        }
        let k = n - h.num_rows();
        if k > MAX_ENUMERABLE_K {
            return param(format!("custom codes need k ≤ {MAX_ENUMERABLE_K}"));
        }
        let g = h.systematic_generator()?;
        let d_min = (1..(1usize << k))
            .map(|u| {
                let msg = BinaryVector::from_bits(&(0..k).map(|i| (u >> i) as u8 & 1).collect::<Vec<_>>());
                g.vec_mul(&msg).map(|c| c.weight())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap_or(n + 1);
        Self::from_table(h, d_min, CodeKind::Custom)
    }

    fn from_table(h: BitMatrix, d_min: usize, kind: CodeKind) -> Result<Self> {
        let n = h.num_cols();
        let r = h.num_rows();
        if r > 64 {
            return param("table decoding needs n − k ≤ 64");
        }
        let columns: Vec<u64> = (0..n)
            .map(|c| {
                (0..r).fold(0u64, |acc, row| acc | ((h.get(row, c) as u64) << row))
            })
            .collect();
        let t = d_min.saturating_sub(1) / 2;
        let mut leaders: HashMap<u64, ErrorPattern> = HashMap::new();
        let mut pattern: Vec<u16> = Vec::new();
        fill_leaders(&columns, t, 0, 0, &mut pattern, &mut leaders);
        Self::assemble(n, n - r, d_min, kind, h, columns, BddEngine::Table { leaders })
    }

    fn assemble(
        n: usize,
        k: usize,
        d_min: usize,
        kind: CodeKind,
        parity_check: BitMatrix,
        columns: Vec<u64>,
        engine: BddEngine,
    ) -> Result<Self> {
        let generator = parity_check.systematic_generator()?;
        if generator.num_rows() != k {
            return Err(Error::Parameter(format!(
                "generator has {} rows, expected k = {k}",
                generator.num_rows()
            )));
        }
        Ok(Self {
            n,
            k,
            d_min,
            t: d_min.saturating_sub(1) / 2,
            kind,
            parity_check,
            generator,
            columns,
            engine,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Systematic encoding: the first `k` output positions equal `message`.
    pub fn encode(&self, message: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.k, message.len())?;
        self.generator.vec_mul(message)
    }

    /// `H · wordᵀ`, zero iff `word` is a codeword.
    pub fn syndrome(&self, word: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.n, word.len())?;
        self.parity_check.mul_vec(word)
    }

    pub fn is_codeword(&self, word: &BinaryVector) -> Result<bool> {
        Ok(self.syndrome(word)?.weight() == 0)
    }

    /// Packed decoder column of position `i`.
    #[inline]
    pub fn decoder_column(&self, i: usize) -> u64 {
        self.columns[i]
    }

    /// Packed decoder syndrome of `word`.
    pub fn decoder_syndrome(&self, word: &BinaryVector) -> u64 {
        word.ones().fold(0, |s, i| s ^ self.columns[i])
    }

    /// Bounded-distance decoding of a packed decoder syndrome: returns the
    /// unique pattern of weight ≤ t with that syndrome, if any.
    pub fn decode_syndrome(&self, s: u64) -> Option<ErrorPattern> {
        let mut out = ErrorPattern::new();
        match &self.engine {
            BddEngine::ExtendedHamming { m, position_of } => {
                let inner = s & ((1u64 << m) - 1);
                let parity = (s >> m) & 1;
                match (inner, parity) {
                    (0, 0) => {}
                    (0, _) => out.push((self.n - 1) as u16),
                    (v, 1) => out.push(position_of[v as usize]),
                    _ => return None,
                }
            }
            BddEngine::ExtendedBch { field } => {
                let m = field.m();
                let mask = (1u64 << m) - 1;
                let s1 = (s & mask) as u16;
                let s3 = ((s >> m) & mask) as u16;
                let parity = (s >> (2 * m)) & 1 == 1;
                if s1 == 0 {
                    if s3 != 0 {
                        return None;
                    }
                    if parity {
                        out.push((self.n - 1) as u16);
                    }
                } else {
                    let s1_cubed = field.pow(s1, 3);
                    if s3 == s1_cubed {
                        out.push(field.log(s1) as u16);
                        if !parity {
                            out.push((self.n - 1) as u16);
                        }
                    } else {
                        if parity {
                            // Two inner errors leave even overall parity.
                            return None;
                        }
                        // σ(X) = X² + S1·X + σ2 with σ2 = (S3 + S1³)/S1.
                        // Substituting X = S1·z gives z² + z = σ2/S1².
                        let sigma2 = field.div(s3 ^ s1_cubed, s1);
                        let c = field.div(sigma2, field.mul(s1, s1));
                        let (z0, z1) = field.solve_artin_schreier(c)?;
                        out.push(field.log(field.mul(s1, z0)) as u16);
                        out.push(field.log(field.mul(s1, z1)) as u16);
                    }
                }
            }
            BddEngine::Table { leaders } => {
                out = leaders.get(&s)?.clone();
            }
        }
        debug_assert!(out.len() <= self.t);
        debug_assert_eq!(
            out.iter().fold(0u64, |acc, &p| acc ^ self.columns[p as usize]),
            s
        );
        Some(out)
    }

    /// Bounded-distance decoding: the unique codeword within distance `t`
    /// of `word`, or `None` on decoding failure.
    pub fn bdd_decode(&self, word: &BinaryVector) -> Result<Option<BinaryVector>> {
        check_len(self.n, word.len())?;
        let Some(errors) = self.decode_syndrome(self.decoder_syndrome(word)) else {
            return Ok(None);
        };
        let mut c = word.clone();
        for &p in &errors {
            c.flip(p as usize);
        }
        if c.distance(word)? > self.t || !self.is_codeword(&c)? {
            return Ok(None);
        }
        Ok(Some(c))
    }

    /// All `2^k` codewords, in message order.
    pub fn enumerate_codebook(&self) -> Result<Vec<BinaryVector>> {
        if self.k > MAX_ENUMERABLE_K {
            return Err(Error::Refused(format!(
                "codebook enumeration needs k ≤ {MAX_ENUMERABLE_K}, got {}",
                self.k
            )));
        }
        let mut out = Vec::with_capacity(1 << self.k);
        let mut c = BinaryVector::zeros(self.n);
        out.push(c.clone());
        // Gray-code walk: step g flips generator row trailing_zeros(g).
        for g in 1usize..(1 << self.k) {
            c.xor_assign(self.generator.row(g.trailing_zeros() as usize))?;
            out.push(c.clone());
        }
        Ok(out)
    }
}

fn matrix_from_columns(columns: &[u64], rows: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(rows, columns.len());
    for (c, &col) in columns.iter().enumerate() {
        for r in 0..rows {
            if (col >> r) & 1 == 1 {
                h.set(r, c, true);
            }
        }
    }
    h
}

fn fill_leaders(
    columns: &[u64],
    t: usize,
    start: usize,
    syndrome: u64,
    pattern: &mut Vec<u16>,
    leaders: &mut HashMap<u64, ErrorPattern>,
) {
    leaders
        .entry(syndrome)
        .or_insert_with(|| pattern.iter().copied().collect());
    if pattern.len() == t {
        return;
    }
    for i in start..columns.len() {
        pattern.push(i as u16);
        fill_leaders(columns, t, i + 1, syndrome ^ columns[i], pattern, leaders);
        pattern.pop();
    }
}
