use std::sync::Arc;

use super::{BinaryVector, ComponentCode};
use crate::error::{check_len, Result};

/// Two-dimensional product code with identical row and column codes.
///
/// Arrays are stored as `n` row vectors of length `n`. The information
/// bits occupy the top-left `k × k` block.
#[derive(Clone, Debug)]
pub struct ProductCode {
    component: Arc<ComponentCode>,
}

impl ProductCode {
    pub fn new(component: ComponentCode) -> Self {
        Self {
            component: Arc::new(component),
        }
    }

    pub fn from_shared(component: Arc<ComponentCode>) -> Self {
        Self { component }
    }

    pub fn component(&self) -> &ComponentCode {
        &self.component
    }

    pub fn shared_component(&self) -> Arc<ComponentCode> {
        Arc::clone(&self.component)
    }

    pub fn n(&self) -> usize {
        self.component.n()
    }

    pub fn k(&self) -> usize {
        self.component.k()
    }

    /// Length `n²`.
    pub fn length(&self) -> usize {
        self.n() * self.n()
    }

    /// Dimension `k²`.
    pub fn dimension(&self) -> usize {
        self.k() * self.k()
    }

    pub fn d_min(&self) -> usize {
        self.component.d_min() * self.component.d_min()
    }

    /// Overall rate `k²/n²`.
    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.length() as f64
    }

    /// Encodes a `k × k` message, rows first and then columns.
    pub fn encode(&self, message: &[BinaryVector]) -> Result<Vec<BinaryVector>> {
        check_len(self.k(), message.len())?;
        let rows = message
            .iter()
            .map(|m| self.component.encode(m))
            .collect::<Result<Vec<_>>>()?;
        // rows: k × n; encode each of the n columns.
        let cols = transpose(&rows, self.n())
            .iter()
            .map(|c| self.component.encode(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(transpose(&cols, self.n()))
    }

    /// Encodes a `k × k` message, columns first and then rows.
    pub fn encode_columns_first(&self, message: &[BinaryVector]) -> Result<Vec<BinaryVector>> {
        check_len(self.k(), message.len())?;
        let cols = transpose(message, self.k())
            .iter()
            .map(|c| self.component.encode(c))
            .collect::<Result<Vec<_>>>()?;
        // cols: k × n as columns; back to n rows of length k.
        transpose(&cols, self.n())
            .iter()
            .map(|r| self.component.encode(r))
            .collect()
    }

    /// True when every row and every column is a component codeword.
    pub fn is_codeword(&self, array: &[BinaryVector]) -> Result<bool> {
        check_len(self.n(), array.len())?;
        for row in array {
            if !self.component.is_codeword(row)? {
                return Ok(false);
            }
        }
        for col in transpose(array, self.n()) {
            if !self.component.is_codeword(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Transposes a list of equal-length vectors; `width` is their length.
pub fn transpose(rows: &[BinaryVector], width: usize) -> Vec<BinaryVector> {
    let mut out = vec![BinaryVector::zeros(rows.len()); width];
    for (r, row) in rows.iter().enumerate() {
        for c in row.ones() {
            out[c].set(r, true);
        }
    }
    out
}
