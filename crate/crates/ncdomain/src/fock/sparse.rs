//! Column-sparse matrices with at most one nonzero per column.
//!
//! Weighted shifts (and their compositions and scalar multiples) all have
//! this shape: column `c` either maps to a single `(row, value)` pair or to
//! zero. Products and the diagonal of `T T*` then cost `O(dim)`.

use num_complex::Complex64;

use super::dense::CMat;
use super::FockError;

/// `entries[col]` is the one nonzero of that column, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct ColSparse {
    dim: usize,
    entries: Vec<Option<(usize, Complex64)>>,
}

impl ColSparse {
    pub fn zeros(dim: usize) -> ColSparse {
        ColSparse {
            dim,
            entries: vec![None; dim],
        }
    }

    pub fn from_entries(
        dim: usize,
        entries: Vec<Option<(usize, Complex64)>>,
    ) -> Result<ColSparse, FockError> {
        if entries.len() != dim {
            return Err(FockError::DimensionMismatch {
                expected: dim,
                got: entries.len(),
            });
        }
        for e in entries.iter().flatten() {
            if e.0 >= dim {
                return Err(FockError::DimensionMismatch {
                    expected: dim,
                    got: e.0,
                });
            }
        }
        Ok(ColSparse { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `(row, value)` pair of a column, or `None` for a zero column.
    pub fn entry(&self, col: usize) -> Option<(usize, Complex64)> {
        self.entries[col]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().flatten().count()
    }

    /// Product `self * rhs`; the one-nonzero-per-column shape is closed
    /// under composition.
    pub fn mul(&self, rhs: &ColSparse) -> Result<ColSparse, FockError> {
        if self.dim != rhs.dim {
            return Err(FockError::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let entries = rhs
            .entries
            .iter()
            .map(|e| {
                let (mid, v1) = (*e)?;
                let (row, v2) = self.entries[mid]?;
                Some((row, v1 * v2))
            })
            .collect();
        ColSparse::from_entries(self.dim, entries)
    }

    pub fn scale(&self, c: Complex64) -> ColSparse {
        ColSparse {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| e.map(|(r, v)| (r, v * c)))
                .collect(),
        }
    }

    /// `self * v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        if v.len() != self.dim {
            return Err(FockError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut out = vec![Complex64::ZERO; self.dim];
        for (col, e) in self.entries.iter().enumerate() {
            if let Some((row, value)) = e {
                out[*row] += value * v[col];
            }
        }
        Ok(out)
    }

    /// `self* . v` (adjoint application).
    pub fn apply_adjoint(&self, v: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        if v.len() != self.dim {
            return Err(FockError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|e| match e {
                Some((row, value)) => value.conj() * v[*row],
                None => Complex64::ZERO,
            })
            .collect())
    }

    /// Adds the diagonal of `c * (self self*)` into `diag`. For a matrix
    /// with one nonzero per column, `T T*` is diagonal: column `k`'s entry
    /// `(r_k, v_k)` contributes `|v_k|^2` to `(r_k, r_k)` and nothing else.
    pub fn accumulate_tt_star_diag(&self, c: f64, diag: &mut [f64]) {
        for e in self.entries.iter().flatten() {
            diag[e.0] += c * e.1.norm_sqr();
        }
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim);
        for (col, e) in self.entries.iter().enumerate() {
            if let Some((row, value)) = e {
                m[(*row, col)] = *value;
            }
        }
        m
    }
}
