//! Universal weighted shifts on the truncated Fock space.
//!
//! For a symbol `f` with weight table `b`, the shift `W_j` maps the basis
//! vector of a word `w` to `sqrt(b_w / b_{j.w})` times the basis vector of
//! `j.w`. On the truncated space the compression `P_N W_j P_N` simply zeroes
//! the columns at the top level, so every `W_j` keeps exactly one nonzero
//! per column below level `N` and stays an endomorphism of one space.
//!
//! The tuple `(W_1,..,W_n)` is the universal element of the domain of `f`:
//! its defect `1 - Σ a_w W_w W_w*` is diagonal with a single 1 at the vacuum
//! row, which the membership tests exercise.

use num_complex::Complex64;

use crate::symbol::rat::rat_to_f64;
use crate::symbol::Symbol;

use super::index::FockIndex;
use super::member::{OperatorTuple, SparseTuple};
use super::sparse::ColSparse;
use super::weights::WeightTable;
use super::FockError;

/// The `n` truncated weighted shifts of a symbol, with the weight table and
/// basis index they were built from.
#[derive(Clone, Debug)]
pub struct ShiftFamily {
    weights: WeightTable,
    shifts: Vec<ColSparse>,
}

impl ShiftFamily {
    /// Builds the shifts of `f` truncated at `level`, default dimension cap.
    pub fn build(f: &Symbol, level: usize) -> Result<ShiftFamily, FockError> {
        let weights = WeightTable::compute(f, level)?;
        ShiftFamily::from_weights(weights)
    }

    /// As [`ShiftFamily::build`] with an explicit dimension cap.
    pub fn build_with_cap(
        f: &Symbol,
        level: usize,
        dim_cap: usize,
    ) -> Result<ShiftFamily, FockError> {
        let weights = WeightTable::compute_with_cap(f, level, dim_cap)?;
        ShiftFamily::from_weights(weights)
    }

    /// Builds from an existing weight table.
    pub fn from_weights(weights: WeightTable) -> Result<ShiftFamily, FockError> {
        let index = weights.index();
        let n = index.arity();
        let dim = index.dim();
        let mut shifts = Vec::with_capacity(n);
        for j in 1..=n as u32 {
            let mut entries: Vec<Option<(usize, Complex64)>> = vec![None; dim];
            for (col, slot) in entries.iter_mut().enumerate() {
                let Some(row) = index.prepend(j, col) else {
                    continue; // top-level column stays zero
                };
                let ratio = weights.value(col) / weights.value(row);
                let w = rat_to_f64(&ratio)
                    .ok_or(FockError::NonFiniteWeight { index: row })?
                    .sqrt();
                *slot = Some((row, Complex64::new(w, 0.0)));
            }
            shifts.push(ColSparse::from_entries(dim, entries)?);
        }
        Ok(ShiftFamily { weights, shifts })
    }

    pub fn arity(&self) -> usize {
        self.shifts.len()
    }

    pub fn dim(&self) -> usize {
        self.index().dim()
    }

    pub fn index(&self) -> &FockIndex {
        self.weights.index()
    }

    pub fn weights(&self) -> &WeightTable {
        &self.weights
    }

    /// The shift of the 1-based letter `j`.
    pub fn shift(&self, j: u32) -> &ColSparse {
        &self.shifts[(j - 1) as usize]
    }

    pub fn shifts(&self) -> &[ColSparse] {
        &self.shifts
    }

    /// The family as a sparse operator tuple `(W_1,..,W_n)`.
    pub fn tuple(&self) -> SparseTuple {
        SparseTuple::new(self.shifts.clone()).expect("shifts share one dimension")
    }

    /// The tuple `(c W_1,..,c W_n)`; with `|c| = 1` this is the gauge
    /// rotation of the family.
    pub fn scaled_tuple(&self, c: Complex64) -> SparseTuple {
        SparseTuple::new(self.shifts.iter().map(|s| s.scale(c)).collect())
            .expect("shifts share one dimension")
    }

    /// Dense materialization, for small truncations.
    pub fn to_tuple(&self) -> OperatorTuple {
        OperatorTuple::new(self.shifts.iter().map(ColSparse::to_dense).collect())
            .expect("shifts share one dimension")
    }

    /// Applies the word `w` of shifts to a vector: `W_w v`.
    pub fn apply_word(&self, word: &[u32], v: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        let mut out = v.to_vec();
        for &letter in word.iter().rev() {
            if letter == 0 || letter as usize > self.arity() {
                return Err(FockError::ArityMismatch {
                    expected: self.arity(),
                    got: letter as usize,
                });
            }
            out = self.shift(letter).apply(&out)?;
        }
        Ok(out)
    }
}
