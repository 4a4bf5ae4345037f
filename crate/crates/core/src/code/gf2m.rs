//! Arithmetic in GF(2^m) through log/antilog tables.

use crate::error::{param, Result};

/// Primitive polynomial for each supported field size, bit `i` is the
/// coefficient of `x^i`.
pub(crate) fn primitive_polynomial(m: u32) -> Option<u32> {
    Some(match m {
        2 => 0x7,
        3 => 0xB,
        4 => 0x13,
        5 => 0x25,
        6 => 0x43,
        7 => 0x89,
        8 => 0x11D,
        9 => 0x211,
        10 => 0x409,
        _ => return None,
    })
}

/// GF(2^m) with elements represented as integers in `0..2^m`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    m: u32,
    order: usize,
    exp: Vec<u16>,
    log: Vec<u16>,
    /// `quadratic_root[c]` holds a root `z` of `z² + z = c`, or `u16::MAX`.
    quadratic_root: Vec<u16>,
}

impl GaloisField {
    pub fn new(m: u32) -> Result<Self> {
        let Some(poly) = primitive_polynomial(m) else {
            return param(format!("no primitive polynomial for m = {m}"));
        };
        let size = 1usize << m;
        let order = size - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; size];
        let mut x: u32 = 1;
        for i in 0..order {
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        let mut quadratic_root = vec![u16::MAX; size];
        for z in 0..size as u16 {
            let mut c = 0u16;
            if z != 0 {
                c = exp[(2 * log[z as usize] as usize) % order];
            }
            c ^= z;
            if quadratic_root[c as usize] == u16::MAX {
                quadratic_root[c as usize] = z;
            }
        }
        Ok(Self {
            m,
            order,
            exp,
            log,
            quadratic_root,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative group order `2^m − 1`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `α^e` for any exponent.
    #[inline]
    pub fn alpha_pow(&self, e: usize) -> u16 {
        self.exp[e % self.order]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: u16) -> usize {
        debug_assert!(a != 0);
        self.log[a as usize] as usize
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub fn div(&self, a: u16, b: u16) -> u16 {
        debug_assert!(b != 0);
        if a == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] as usize + self.order - self.log[b as usize] as usize)
                % self.order]
        }
    }

    #[inline]
    pub fn pow(&self, a: u16, e: usize) -> u16 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.exp[(self.log[a as usize] as usize * e) % self.order]
    }

    /// Both roots of `z² + z = c`, if they exist (the second is `z + 1`).
    #[inline]
    pub fn solve_artin_schreier(&self, c: u16) -> Option<(u16, u16)> {
        let z = self.quadratic_root[c as usize];
        (z != u16::MAX).then_some((z, z ^ 1))
    }

    /// Cyclotomic coset of `e` modulo `2^m − 1`; its size is the degree of
    /// the minimal polynomial of `α^e`.
    pub fn cyclotomic_coset(&self, e: usize) -> Vec<usize> {
        let mut coset = vec![e % self.order];
        let mut x = (2 * e) % self.order;
        while x != coset[0] {
            coset.push(x);
            x = (2 * x) % self.order;
        }
        coset
    }
}
