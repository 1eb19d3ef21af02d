//! Domain membership: free-polynomial evaluation at operator tuples, the
//! defect operator, and the positivity test.
//!
//! A tuple `T = (T_1,..,T_n)` belongs to the domain of a symbol `f` when
//! `Σ a_w T_w T_w* ≤ 1`, i.e. when the defect `Δ = 1 - Σ a_w T_w T_w*` is
//! positive semidefinite. Membership is decided numerically from the
//! smallest eigenvalue of `Δ` against a tolerance.
//!
//! Two defect routes are kept: a dense one for general tuples and a sparse
//! one for shift-shaped tuples (one nonzero per column), where each
//! `T_w T_w*` is exactly diagonal and the assembly is linear in the
//! dimension. They agree on their overlap, which the tests check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::symbol::rat::rat_to_f64;
use crate::symbol::{FreePoly, Symbol};

use super::dense::CMat;
use super::eig::min_eig_hermitian;
use super::sparse::ColSparse;
use super::FockError;

/// Default tolerance for the membership verdict.
pub const DEFAULT_MEMBER_TOL: f64 = 1e-9;

/// A tuple of `n` dense square matrices of one common dimension.
#[derive(Clone, Debug)]
pub struct OperatorTuple {
    mats: Vec<CMat>,
}

impl OperatorTuple {
    pub fn new(mats: Vec<CMat>) -> Result<OperatorTuple, FockError> {
        let Some(first) = mats.first() else {
            return Err(FockError::ZeroArity);
        };
        let dim = first.dim();
        for m in &mats {
            if m.dim() != dim {
                return Err(FockError::DimensionMismatch {
                    expected: dim,
                    got: m.dim(),
                });
            }
        }
        Ok(OperatorTuple { mats })
    }

    /// Scalars as a tuple of `1 x 1` matrices.
    pub fn from_scalars(scalars: &[Complex64]) -> Result<OperatorTuple, FockError> {
        OperatorTuple::new(
            scalars
                .iter()
                .map(|&z| {
                    CMat::from_rows(vec![vec![z]]).expect("1x1")
                })
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.mats[0].dim()
    }

    /// The matrix of the 1-based letter `j`.
    pub fn op(&self, j: u32) -> &CMat {
        &self.mats[(j - 1) as usize]
    }

    /// Word product `T_w = T_{i1} .. T_{ik}`, identity for the empty word.
    pub fn word_product(&self, word: &[u32]) -> Result<CMat, FockError> {
        let mut acc = CMat::identity(self.dim());
        for &l in word {
            if l == 0 || l as usize > self.arity() {
                return Err(FockError::ArityMismatch {
                    expected: self.arity(),
                    got: l as usize,
                });
            }
            acc = acc.mul(self.op(l))?;
        }
        Ok(acc)
    }
}

/// A tuple of column-sparse operators of one common dimension.
#[derive(Clone, Debug)]
pub struct SparseTuple {
    ops: Vec<ColSparse>,
}

impl SparseTuple {
    pub fn new(ops: Vec<ColSparse>) -> Result<SparseTuple, FockError> {
        let Some(first) = ops.first() else {
            return Err(FockError::ZeroArity);
        };
        let dim = first.dim();
        for m in &ops {
            if m.dim() != dim {
                return Err(FockError::DimensionMismatch {
                    expected: dim,
                    got: m.dim(),
                });
            }
        }
        Ok(SparseTuple { ops })
    }

    pub fn arity(&self) -> usize {
        self.ops.len()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn op(&self, j: u32) -> &ColSparse {
        &self.ops[(j - 1) as usize]
    }

    pub fn word_product(&self, word: &[u32]) -> Result<ColSparse, FockError> {
        let dim = self.dim();
        let mut acc: Option<ColSparse> = None;
        for &l in word.iter().rev() {
            if l == 0 || l as usize > self.arity() {
                return Err(FockError::ArityMismatch {
                    expected: self.arity(),
                    got: l as usize,
                });
            }
            acc = Some(match acc {
                None => self.op(l).clone(),
                Some(inner) => self.op(l).mul(&inner)?,
            });
        }
        Ok(acc.unwrap_or_else(|| {
            // empty word: identity
            ColSparse::from_entries(
                dim,
                (0..dim).map(|i| Some((i, Complex64::ONE))).collect(),
            )
            .expect("identity entries")
        }))
    }

    /// Dense materialization of every operator.
    pub fn to_tuple(&self) -> OperatorTuple {
        OperatorTuple::new(self.ops.iter().map(ColSparse::to_dense).collect())
            .expect("same dims")
    }
}

/// Outcome of a membership test. `member` holds exactly when
/// `min_eig >= -tolerance`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MembershipReport {
    pub min_eig: f64,
    pub tolerance: f64,
    pub member: bool,
    /// Dimension of the defect matrix.
    pub dim: usize,
}

/// Evaluates `p(T) = Σ p_w T_w` with `T_∅ = 1`.
pub fn eval_poly(p: &FreePoly, t: &OperatorTuple) -> Result<CMat, FockError> {
    if p.arity() != t.arity() {
        return Err(FockError::ArityMismatch {
            expected: p.arity(),
            got: t.arity(),
        });
    }
    let mut acc = CMat::zeros(t.dim());
    for (word, &c) in p.iter() {
        let product = t.word_product(word.letters())?;
        acc.add_scaled(c, &product)?;
    }
    Ok(acc)
}

fn coeff_f64(f: &Symbol, word: &crate::symbol::Word) -> Result<f64, FockError> {
    let a = f.coeff(word.letters()).expect("support word");
    rat_to_f64(a).ok_or(FockError::NonFiniteWeight { index: 0 })
}

/// Dense defect `Δ = 1 - Σ a_w T_w T_w*`, symmetrized before return.
pub fn defect(f: &Symbol, t: &OperatorTuple) -> Result<CMat, FockError> {
    if f.arity() != t.arity() {
        return Err(FockError::ArityMismatch {
            expected: f.arity(),
            got: t.arity(),
        });
    }
    let mut sum = CMat::zeros(t.dim());
    for (word, _) in f.iter() {
        let tw = t.word_product(word.letters())?;
        let twtw = tw.mul(&tw.adjoint())?;
        let a = coeff_f64(f, word)?;
        sum.add_scaled(Complex64::new(-a, 0.0), &twtw)?;
    }
    let mut delta = CMat::identity(t.dim());
    delta.add_scaled(Complex64::ONE, &sum)?;
    delta.symmetrize();
    Ok(delta)
}

/// Defect of a shift-shaped tuple. Each `T_w T_w*` is diagonal here, so the
/// result is assembled as a diagonal in `O(|supp f| * dim * deg f)`.
pub fn defect_sparse(f: &Symbol, t: &SparseTuple) -> Result<CMat, FockError> {
    if f.arity() != t.arity() {
        return Err(FockError::ArityMismatch {
            expected: f.arity(),
            got: t.arity(),
        });
    }
    let mut diag = vec![0.0f64; t.dim()];
    for (word, _) in f.iter() {
        let tw = t.word_product(word.letters())?;
        let a = coeff_f64(f, word)?;
        tw.accumulate_tt_star_diag(a, &mut diag);
    }
    for d in diag.iter_mut() {
        *d = 1.0 - *d;
    }
    Ok(CMat::from_diagonal(&diag))
}

fn report(delta: &CMat, tol: f64) -> Result<MembershipReport, FockError> {
    if tol <= 0.0 {
        return Err(FockError::NonPositiveTolerance { tol });
    }
    let min_eig = min_eig_hermitian(delta)?;
    Ok(MembershipReport {
        min_eig,
        tolerance: tol,
        member: min_eig >= -tol,
        dim: delta.dim(),
    })
}

/// Membership of a dense tuple in the domain of `f`.
pub fn is_member(f: &Symbol, t: &OperatorTuple, tol: f64) -> Result<MembershipReport, FockError> {
    report(&defect(f, t)?, tol)
}

/// Membership of a shift-shaped tuple in the domain of `f`.
pub fn is_member_sparse(
    f: &Symbol,
    t: &SparseTuple,
    tol: f64,
) -> Result<MembershipReport, FockError> {
    report(&defect_sparse(f, t)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::shifts::ShiftFamily;
    use crate::symbol::Word;

    fn sym(text: &str) -> Symbol {
        Symbol::parse(text).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_poly_single_letter_and_constant() {
        let t = OperatorTuple::from_scalars(&[c(0.25, 0.0), c(0.0, 0.5)]).unwrap();
        let p = FreePoly::letter(2, 1).unwrap();
        assert_eq!(eval_poly(&p, &t).unwrap()[(0, 0)], c(0.25, 0.0));

        let one = FreePoly::constant(2, Complex64::ONE).unwrap();
        let t2 = OperatorTuple::new(vec![CMat::zeros(3), CMat::zeros(3)]).unwrap();
        let id = eval_poly(&one, &t2).unwrap();
        assert_eq!(id, CMat::identity(3));
    }

    #[test]
    fn eval_poly_word_product_by_hand() {
        // T1 = [[0,1],[0,0]], T2 = [[0,0],[1,0]]: T1 T2 = diag(1, 0)
        let t1 = CMat::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0); 2]])
            .unwrap();
        let t2 = CMat::from_rows(vec![vec![c(0.0, 0.0); 2], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let t = OperatorTuple::new(vec![t1, t2]).unwrap();
        let p = FreePoly::new(2, [(Word::from_letters(vec![1, 2]), Complex64::ONE)]).unwrap();
        let m = eval_poly(&p, &t).unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn defect_of_zero_tuple_is_identity() {
        let f = sym("X1 + X2");
        let t = OperatorTuple::new(vec![CMat::zeros(2), CMat::zeros(2)]).unwrap();
        assert_eq!(defect(&f, &t).unwrap(), CMat::identity(2));
    }

    #[test]
    fn scalar_defect_vanishes_on_the_boundary() {
        // f = 2X at the scalar 1/sqrt(2): 1 - 2 * (1/2) = 0
        let f = sym("2*X1");
        let t = OperatorTuple::from_scalars(&[c(0.5f64.sqrt(), 0.0)]).unwrap();
        let d = defect(&f, &t).unwrap();
        assert!(d[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn truncated_shift_defect_is_vacuum_projection() {
        // all rows of level >= 1 vanish; only the vacuum row carries 1
        let f = sym("X1 + X2");
        let fam = ShiftFamily::build(&f, 2).unwrap();
        let d = defect_sparse(&f, &fam.tuple()).unwrap();
        assert!((d[(0, 0)].re - 1.0).abs() < 1e-14);
        for i in 1..fam.dim() {
            for j in 0..fam.dim() {
                let expect = 0.0;
                assert!((d[(i, j)].norm() - expect).abs() < 1e-14, "row {i} col {j}");
            }
        }
    }

    #[test]
    fn dense_and_sparse_defects_agree_on_shifts() {
        let f = sym("1/2*X1 + 3*X2 + 2*X1X2");
        let fam = ShiftFamily::build(&f, 3).unwrap();
        let sparse = defect_sparse(&f, &fam.tuple()).unwrap();
        let dense = defect(&f, &fam.to_tuple()).unwrap();
        for i in 0..fam.dim() {
            for j in 0..fam.dim() {
                assert!((sparse[(i, j)] - dense[(i, j)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn scalar_membership_examples() {
        // f = X1 + X2 at (0.6, 0.8): exactly on the boundary
        let f = sym("X1 + X2");
        let t = OperatorTuple::from_scalars(&[c(0.6, 0.0), c(0.8, 0.0)]).unwrap();
        let r = is_member(&f, &t, 1e-9).unwrap();
        assert!(r.member);
        assert!(r.min_eig.abs() < 1e-12);

        // adding the cross term pushes the same point outside
        let g = sym("X1 + X2 + X1X2");
        let r = is_member(&g, &t, 1e-9).unwrap();
        assert!(!r.member);
        assert!((r.min_eig + 0.2304).abs() < 1e-12);
    }

    #[test]
    fn universal_tuple_is_a_member() {
        let f = sym("X1 + 2*X2 + 1/3*X2X1");
        let fam = ShiftFamily::build(&f, 4).unwrap();
        let r = is_member_sparse(&f, &fam.tuple(), 1e-9).unwrap();
        assert!(r.member);
        assert!(r.min_eig >= -1e-12);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let f = sym("X1 + X2");
        let t = OperatorTuple::from_scalars(&[c(0.1, 0.0)]).unwrap();
        assert!(matches!(
            is_member(&f, &t, 1e-9),
            Err(FockError::ArityMismatch { .. })
        ));
    }
}
