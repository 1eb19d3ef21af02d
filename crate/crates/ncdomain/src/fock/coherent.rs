//! Coherent (evaluation) vectors and the character identity.
//!
//! For a scalar point `λ` inside the domain of `f`, the vector
//! `z_λ = Σ_w conj(λ)^w sqrt(b_w) e_w` implements evaluation at `λ`:
//! `W_j* z_λ = conj(λ_j) z_λ` away from the truncation boundary, and
//! `<p(W) e_∅, z_λ> = p(λ)` exactly once the truncation level reaches
//! `deg p` (the weight square roots cancel pairwise).

use num_complex::Complex64;

use crate::symbol::rat::rat_to_f64;
use crate::symbol::{FreePoly, Symbol};

use super::shifts::ShiftFamily;
use super::weights::WeightTable;
use super::FockError;

/// Coordinates of `z_λ` on the truncated basis: `conj(λ)^w sqrt(b_w)` at
/// the word `w`. The interior condition on `λ` is advisory; callers can
/// check it with [`crate::geometry::q_value`].
pub fn coherent_vector(
    f: &Symbol,
    lambda: &[Complex64],
    level: usize,
) -> Result<Vec<Complex64>, FockError> {
    if lambda.len() != f.arity() {
        return Err(FockError::ArityMismatch {
            expected: f.arity(),
            got: lambda.len(),
        });
    }
    let table = WeightTable::compute(f, level)?;
    coherent_from_table(&table, lambda)
}

fn coherent_from_table(
    table: &WeightTable,
    lambda: &[Complex64],
) -> Result<Vec<Complex64>, FockError> {
    table
        .iter()
        .enumerate()
        .map(|(idx, (word, b))| {
            let root = rat_to_f64(b)
                .ok_or(FockError::NonFiniteWeight { index: idx })?
                .sqrt();
            let mut coord = Complex64::new(root, 0.0);
            for &l in word.letters() {
                coord *= lambda[(l - 1) as usize].conj();
            }
            Ok(coord)
        })
        .collect()
}

/// Both sides of the character identity and their gap:
/// `operator_value = <p(W) e_∅, z_λ>`, `scalar_value = p(λ)`.
#[derive(Clone, Copy, Debug)]
pub struct CharCheck {
    pub operator_value: Complex64,
    pub scalar_value: Complex64,
    pub difference: f64,
}

/// Evaluates `p` on the universal shifts of `f` against the coherent vector
/// and by direct scalar substitution. Requires `level >= deg p` so the
/// operator side is not cut off.
pub fn char_eval_check(
    f: &Symbol,
    lambda: &[Complex64],
    p: &FreePoly,
    level: usize,
) -> Result<CharCheck, FockError> {
    if p.arity() != f.arity() {
        return Err(FockError::ArityMismatch {
            expected: f.arity(),
            got: p.arity(),
        });
    }
    if level < p.degree() {
        return Err(FockError::TruncationTooSmall {
            level,
            needed: p.degree(),
        });
    }
    let family = ShiftFamily::build(f, level)?;
    let z = coherent_from_table(family.weights(), lambda)?;

    // p(W) e_∅ term by term; each W_w e_∅ has a single coordinate
    let dim = family.dim();
    let mut vacuum = vec![Complex64::ZERO; dim];
    vacuum[0] = Complex64::ONE;
    let mut image = vec![Complex64::ZERO; dim];
    for (word, &c) in p.iter() {
        let applied = family.apply_word(word.letters(), &vacuum)?;
        for (acc, x) in image.iter_mut().zip(&applied) {
            *acc += c * x;
        }
    }

    let operator_value: Complex64 = image.iter().zip(&z).map(|(&a, &b)| a * b.conj()).sum();
    let scalar_value = p.eval_scalar(lambda).map_err(|_| FockError::ArityMismatch {
        expected: f.arity(),
        got: lambda.len(),
    })?;
    Ok(CharCheck {
        operator_value,
        scalar_value,
        difference: (operator_value - scalar_value).norm(),
    })
}
