//! The weight table of a symbol.
//!
//! For a symbol `f = Σ a_w X_w`, the weight of a word `w` is
//!
//! ```text
//! b_w = Σ over ordered factorizations w = g1·g2·..·gk into nonempty words
//!       of the products a_{g1} a_{g2} .. a_{gk},
//! ```
//!
//! with `b_∅ = 1` (the empty product; this convention is forced so that the
//! length-1 case reads `b_j = a_j` and the shift weights below are defined).
//! These are the squared-norm corrections that make the universal weighted
//! shifts satisfy the domain inequality of `f`.
//!
//! The literal factorization sum is exponential in `|w|`; the table is
//! filled by the equivalent prefix recursion
//!
//! ```text
//! b_w = Σ over nonempty prefixes p of w with a_p > 0 of a_p * b_{w∖p},
//! ```
//!
//! one level at a time (each level only reads shorter words, so a level can
//! be computed in parallel). [`brute_force_weight`] keeps the literal sum as
//! an independent cross-check.

use num_traits::One;

use crate::par;
use crate::symbol::{Rat, Symbol};

use super::index::FockIndex;
use super::FockError;

/// Exact weights `b_w` for all words up to the truncation level, aligned
/// with a [`FockIndex`].
#[derive(Clone, Debug)]
pub struct WeightTable {
    index: FockIndex,
    values: Vec<Rat>,
}

impl WeightTable {
    /// Fills the table for all `|w| <= level` with the default dimension cap.
    pub fn compute(f: &Symbol, level: usize) -> Result<WeightTable, FockError> {
        let index = FockIndex::new(f.arity(), level)?;
        Ok(WeightTable::fill(f, index))
    }

    /// As [`WeightTable::compute`] with an explicit cap.
    pub fn compute_with_cap(
        f: &Symbol,
        level: usize,
        dim_cap: usize,
    ) -> Result<WeightTable, FockError> {
        let index = FockIndex::with_dim_cap(f.arity(), level, dim_cap)?;
        Ok(WeightTable::fill(f, index))
    }

    fn fill(f: &Symbol, index: FockIndex) -> WeightTable {
        let mut values: Vec<Rat> = Vec::with_capacity(index.dim());
        values.push(Rat::one());
        for level in 1..=index.level_cap() {
            let range = index.level_range(level);
            let done = &values[..];
            let next = par::map_range(range.len(), |off| {
                let word = index.word(range.start + off);
                let mut b = Rat::from_integer(0.into());
                for (prefix, a) in f.iter() {
                    let k = prefix.len();
                    if k > word.len() || !word.starts_with(prefix) {
                        continue;
                    }
                    let suffix_idx = index
                        .index(word.suffix_from(k))
                        .expect("suffix is shorter, hence tabulated");
                    b += a * &done[suffix_idx];
                }
                // strict positivity of degree-1 coefficients forces b > 0
                debug_assert!(num_traits::Signed::is_positive(&b));
                b
            });
            values.extend(next);
        }
        WeightTable { index, values }
    }

    pub fn index(&self) -> &FockIndex {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Weight of the word at a basis index.
    pub fn value(&self, idx: usize) -> &Rat {
        &self.values[idx]
    }

    /// Weight of a word, if tabulated.
    pub fn get(&self, word: &[u32]) -> Option<&Rat> {
        self.index.index(word).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&crate::symbol::Word, &Rat)> {
        self.index.words().iter().zip(self.values.iter())
    }
}

/// Longest word the factorization oracle will enumerate; the sum visits all
/// `2^(len-1)` compositions.
pub const BRUTE_FORCE_MAX_LEN: usize = 20;

/// Independent weight oracle: enumerates every ordered factorization of
/// `word` into nonempty pieces and sums the coefficient products directly.
/// `b_∅ = 1` by the empty-product convention.
pub fn brute_force_weight(f: &Symbol, word: &[u32]) -> Result<Rat, FockError> {
    for &l in word {
        if l == 0 || l as usize > f.arity() {
            return Err(FockError::ArityMismatch {
                expected: f.arity(),
                got: l as usize,
            });
        }
    }
    if word.len() > BRUTE_FORCE_MAX_LEN {
        return Err(FockError::ResourceGuard {
            requested: 1usize << (word.len() - 1),
            cap: 1usize << (BRUTE_FORCE_MAX_LEN - 1),
        });
    }
    let mut total = Rat::from_integer(0.into());
    enumerate(f, word, &Rat::one(), &mut total);
    Ok(total)
}

/// Walks all compositions of `rest` into nonempty leading pieces,
/// accumulating the product of coefficients picked so far.
fn enumerate(f: &Symbol, rest: &[u32], product: &Rat, total: &mut Rat) {
    if rest.is_empty() {
        *total += product;
        return;
    }
    for take in 1..=rest.len() {
        let piece = &rest[..take];
        let Some(a) = f.coeff(piece) else { continue };
        let next = product * a;
        enumerate(f, &rest[take..], &next, total);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::rat::rat;

    fn sym(text: &str) -> Symbol {
        Symbol::parse(text).unwrap()
    }

    #[test]
    fn free_shift_weights_are_all_one() {
        let f = sym("X1 + X2");
        let table = WeightTable::compute(&f, 4).unwrap();
        assert!(table.iter().all(|(_, b)| b.is_one()));
    }

    #[test]
    fn fibonacci_weights() {
        // f = X + X^2 over one variable: compositions into parts 1 and 2
        let f = sym("X1 + X1X1");
        let table = WeightTable::compute(&f, 5).unwrap();
        let expect = [1, 1, 2, 3, 5, 8];
        for (k, &e) in expect.iter().enumerate() {
            let word = vec![1u32; k];
            assert_eq!(table.get(&word).unwrap(), &rat(e, 1), "level {k}");
        }
    }

    #[test]
    fn doubled_generator_gives_powers_of_two() {
        let f = sym("2*X1");
        let table = WeightTable::compute(&f, 6).unwrap();
        for k in 0..=6usize {
            let word = vec![1u32; k];
            assert_eq!(table.get(&word).unwrap(), &rat(1 << k, 1));
        }
    }

    #[test]
    fn oracle_empty_word_is_one() {
        let f = sym("3*X1 + X2");
        assert_eq!(brute_force_weight(&f, &[]).unwrap(), rat(1, 1));
    }

    #[test]
    fn oracle_counts_compositions() {
        // 1111 under X + X^2: compositions of 4 into {1,2}
        let f = sym("X1 + X1X1");
        assert_eq!(brute_force_weight(&f, &[1, 1, 1, 1]).unwrap(), rat(5, 1));
    }

    #[test]
    fn oracle_mixed_factorizations() {
        // word 12 under X1 + X2 + X1X2: (1)(2) and (12)
        let f = sym("X1 + X2 + X1X2");
        assert_eq!(brute_force_weight(&f, &[1, 2]).unwrap(), rat(2, 1));
    }

    #[test]
    fn recursion_agrees_with_oracle() {
        let f = sym("1/2*X1 + 3*X2 + 2*X1X2 + 5/7*X2X2X1");
        let table = WeightTable::compute(&f, 5).unwrap();
        for (word, b) in table.iter() {
            assert_eq!(brute_force_weight(&f, word.letters()).unwrap(), *b);
        }
    }

    #[test]
    fn prefix_recursion_identity_holds() {
        let f = sym("X1 + 2*X2 + 1/3*X1X1");
        let table = WeightTable::compute(&f, 4).unwrap();
        for (word, b) in table.iter() {
            if word.is_empty() {
                continue;
            }
            let mut rhs = rat(0, 1);
            for (prefix, a) in f.iter() {
                if word.starts_with(prefix) {
                    rhs += a * table.get(word.suffix_from(prefix.len())).unwrap();
                }
            }
            assert_eq!(&rhs, b);
        }
    }
}
