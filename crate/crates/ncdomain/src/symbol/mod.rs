//! Free polynomial symbols with exact rational coefficients, their
//! validation, and scale-permutation substitution.
//!
//! A symbol is a polynomial `f = Σ a_w X_w` over `n` noncommuting variables
//! with `a_∅ = 0`, every coefficient nonnegative, and every degree-1
//! coefficient strictly positive. Symbols are the defining data of a
//! noncommutative domain: the operator tuples `T` with
//! `Σ a_w T_w T_w* ≤ 1`.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and [`Symbol::substitute`] never rounds, so symbol equality is decidable.

mod parse;
pub mod rat;
pub mod word;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

pub use rat::{format_rat, Rat, RatJson};
pub use word::Word;

use rat::is_positive;

#[derive(Debug, thiserror::Error)]
pub enum SymbolError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("the empty word must have coefficient zero")]
    EmptyWordTerm,
    #[error("coefficient of {word} is negative")]
    NegativeCoefficient { word: Word },
    #[error("word {word} uses letter {letter}, outside 1..={arity}")]
    LetterOutOfRange {
        word: Word,
        letter: u32,
        arity: usize,
    },
    #[error("degree-1 coefficient of X{letter} is missing or not strictly positive")]
    MissingDegreeOne { letter: u32 },
    #[error("size {got} does not match arity {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("images {0:?} are not a permutation of 1..=n")]
    NotAPermutation(Vec<u32>),
    #[error("scale at position {index} is not strictly positive")]
    NonPositiveScale { index: usize },
}

/// A validated positive regular free polynomial over `n` noncommuting
/// variables.
///
/// Only strictly positive coefficients are stored; absent words have
/// coefficient zero. The support map is ordered graded-lexicographically,
/// which makes printing, hashing and equality canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Symbol {
    arity: usize,
    coeffs: BTreeMap<Word, Rat>,
}

impl Symbol {
    /// Validates a raw coefficient map against the symbol invariants and
    /// returns the symbol on success.
    ///
    /// Duplicate words are summed before validation, zero coefficients are
    /// dropped, and each invariant violation gets its own error naming the
    /// offending word: a nonzero empty-word term, a negative coefficient, a
    /// letter outside `1..=arity`, or a degree-1 coefficient that is missing
    /// or not strictly positive.
    pub fn validate(
        arity: usize,
        coeffs: impl IntoIterator<Item = (Word, Rat)>,
    ) -> Result<Symbol, SymbolError> {
        if arity == 0 {
            return Err(SymbolError::ZeroArity);
        }
        let mut summed: BTreeMap<Word, Rat> = BTreeMap::new();
        for (word, c) in coeffs {
            *summed.entry(word).or_insert_with(Rat::zero) += c;
        }
        let mut stored = BTreeMap::new();
        for (word, c) in summed {
            for &letter in word.letters() {
                if letter == 0 || letter as usize > arity {
                    return Err(SymbolError::LetterOutOfRange {
                        word: word.clone(),
                        letter,
                        arity,
                    });
                }
            }
            if c.is_zero() {
                continue;
            }
            if word.is_empty() {
                return Err(SymbolError::EmptyWordTerm);
            }
            if !is_positive(&c) {
                return Err(SymbolError::NegativeCoefficient { word });
            }
            stored.insert(word, c);
        }
        for letter in 1..=arity as u32 {
            if !stored.contains_key(&Word::from_letters(vec![letter])) {
                return Err(SymbolError::MissingDegreeOne { letter });
            }
        }
        Ok(Symbol {
            arity,
            coeffs: stored,
        })
    }

    /// Parses the textual grammar (`vars=n;` header, `+`-separated terms,
    /// rational or decimal coefficients). See the crate docs for the full
    /// grammar.
    pub fn parse(text: &str) -> Result<Symbol, SymbolError> {
        parse::parse_symbol(text)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Largest word length in the support. At least 1 by regularity.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Number of support words.
    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `word`, or `None` when it is zero.
    pub fn coeff(&self, word: &[u32]) -> Option<&Rat> {
        self.coeffs.get(&Word::from(word))
    }

    /// Support iteration in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.coeffs.iter()
    }

    /// The support as a set of words, graded-lex ordered.
    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.coeffs.keys()
    }

    /// Applies a scale-permutation witness: each support word `w` of `self`
    /// is relabeled letterwise through `sigma` and its coefficient picks up
    /// the product of the scales along `w`. Exact rational arithmetic
    /// throughout; the result satisfies the symbol invariants whenever the
    /// witness scales are positive (which [`Witness`] guarantees).
    pub fn substitute(&self, witness: &Witness) -> Result<Symbol, SymbolError> {
        if witness.arity() != self.arity {
            return Err(SymbolError::SizeMismatch {
                expected: self.arity,
                got: witness.arity(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for (word, a) in &self.coeffs {
            let target = witness.apply_word(word);
            let scaled = a * witness.scale_product(word);
            // letterwise relabeling is injective on words
            let clash = coeffs.insert(target, scaled);
            debug_assert!(clash.is_none());
        }
        Ok(Symbol {
            arity: self.arity,
            coeffs,
        })
    }
}

impl fmt::Display for Symbol {
    /// Canonical printer: graded-lex term order, explicit `*`, rational
    /// coefficients as `p` or `p/q`. Parsing the output reproduces the
    /// symbol exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (word, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", format_rat(c), word)?;
        }
        Ok(())
    }
}

/// A free polynomial with complex floating coefficients; the empty word is
/// allowed and stands for the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct FreePoly {
    arity: usize,
    coeffs: BTreeMap<Word, Complex64>,
}

impl FreePoly {
    /// Sums duplicate words, drops exact zeros, checks letter ranges.
    pub fn new(
        arity: usize,
        terms: impl IntoIterator<Item = (Word, Complex64)>,
    ) -> Result<FreePoly, SymbolError> {
        if arity == 0 {
            return Err(SymbolError::ZeroArity);
        }
        let mut coeffs: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (word, c) in terms {
            for &letter in word.letters() {
                if letter == 0 || letter as usize > arity {
                    return Err(SymbolError::LetterOutOfRange {
                        word: word.clone(),
                        letter,
                        arity,
                    });
                }
            }
            let entry = coeffs.entry(word).or_insert(Complex64::ZERO);
            *entry += c;
        }
        coeffs.retain(|_, c| *c != Complex64::ZERO);
        Ok(FreePoly { arity, coeffs })
    }

    /// The constant polynomial `c`.
    pub fn constant(arity: usize, c: Complex64) -> Result<FreePoly, SymbolError> {
        FreePoly::new(arity, [(Word::empty(), c)])
    }

    /// The monomial `X_j`.
    pub fn letter(arity: usize, j: u32) -> Result<FreePoly, SymbolError> {
        FreePoly::new(arity, [(Word::from_letters(vec![j]), Complex64::ONE)])
    }

    /// A symbol reinterpreted with floating coefficients.
    pub fn from_symbol(f: &Symbol) -> FreePoly {
        let coeffs = f
            .iter()
            .map(|(w, c)| {
                let v = rat::rat_to_f64(c).unwrap_or(f64::INFINITY);
                (w.clone(), Complex64::new(v, 0.0))
            })
            .collect();
        FreePoly {
            arity: f.arity(),
            coeffs,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn coeff(&self, word: &[u32]) -> Complex64 {
        self.coeffs
            .get(&Word::from(word))
            .copied()
            .unwrap_or(Complex64::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.coeffs.iter()
    }

    /// Scalar evaluation `p(λ) = Σ p_w λ^w` where `λ^w` multiplies the
    /// coordinates along `w` (empty word contributes `p_∅`).
    pub fn eval_scalar(&self, lambda: &[Complex64]) -> Result<Complex64, SymbolError> {
        if lambda.len() != self.arity {
            return Err(SymbolError::SizeMismatch {
                expected: self.arity,
                got: lambda.len(),
            });
        }
        let mut sum = Complex64::ZERO;
        for (word, c) in &self.coeffs {
            let mut m = *c;
            for &l in word.letters() {
                m *= lambda[(l - 1) as usize];
            }
            sum += m;
        }
        Ok(sum)
    }
}

/// A scale-permutation witness: a permutation `sigma` of the letters
/// together with strictly positive rational scales.
///
/// The defining relation only asks for real scales, but matching two symbols
/// forces positivity: degree-1 coefficients of both sides are strictly
/// positive and `a_f(sigma(j)) = lambda_j * a_g(j)`, so each `lambda_j` is a
/// ratio of positive rationals. The type therefore requires `lambda > 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    sigma: Vec<u32>,
    lambda: Vec<Rat>,
}

impl Witness {
    /// `sigma[i]` is the 1-based image of letter `i+1`; must be a bijection.
    /// All scales must be strictly positive.
    pub fn new(sigma: Vec<u32>, lambda: Vec<Rat>) -> Result<Witness, SymbolError> {
        let n = sigma.len();
        if lambda.len() != n {
            return Err(SymbolError::SizeMismatch {
                expected: n,
                got: lambda.len(),
            });
        }
        if n == 0 {
            return Err(SymbolError::ZeroArity);
        }
        let mut seen = vec![false; n];
        for &img in &sigma {
            if img == 0 || img as usize > n || seen[(img - 1) as usize] {
                return Err(SymbolError::NotAPermutation(sigma.clone()));
            }
            seen[(img - 1) as usize] = true;
        }
        for (index, l) in lambda.iter().enumerate() {
            if !is_positive(l) {
                return Err(SymbolError::NonPositiveScale { index });
            }
        }
        Ok(Witness { sigma, lambda })
    }

    /// The identity witness on `n` letters.
    pub fn identity(n: usize) -> Witness {
        Witness {
            sigma: (1..=n as u32).collect(),
            lambda: vec![Rat::from_integer(1.into()); n],
        }
    }

    pub fn arity(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn lambda(&self) -> &[Rat] {
        &self.lambda
    }

    /// Image of a 1-based letter under the permutation.
    pub fn image(&self, letter: u32) -> u32 {
        self.sigma[(letter - 1) as usize]
    }

    /// Letterwise relabeling of a word.
    pub fn apply_word(&self, word: &Word) -> Word {
        Word::from_letters(
            word.letters()
                .iter()
                .map(|&l| self.image(l))
                .collect::<Vec<_>>(),
        )
    }

    /// Product of the scales along the letters of `word`.
    pub fn scale_product(&self, word: &Word) -> Rat {
        let mut p = Rat::from_integer(1.into());
        for &l in word.letters() {
            p *= &self.lambda[(l - 1) as usize];
        }
        p
    }

    /// The witness undoing this one: `sigma^{-1}` with scales
    /// `1 / lambda_{sigma^{-1}(j)}`.
    pub fn inverse(&self) -> Witness {
        let n = self.arity();
        let mut sigma = vec![0u32; n];
        let mut lambda = vec![Rat::from_integer(1.into()); n];
        for i in 0..n {
            let img = (self.sigma[i] - 1) as usize;
            sigma[img] = (i + 1) as u32;
            lambda[img] = self.lambda[i].recip();
        }
        Witness { sigma, lambda }
    }

    /// Composition: applying `self` and then `second` equals applying the
    /// returned witness (permutations compose, scales multiply along the
    /// first permutation).
    pub fn then(&self, second: &Witness) -> Result<Witness, SymbolError> {
        let n = self.arity();
        if second.arity() != n {
            return Err(SymbolError::SizeMismatch {
                expected: n,
                got: second.arity(),
            });
        }
        let sigma = (0..n).map(|i| second.image(self.sigma[i])).collect();
        let lambda = (0..n)
            .map(|i| &self.lambda[i] * &second.lambda[(self.sigma[i] - 1) as usize])
            .collect();
        Ok(Witness { sigma, lambda })
    }

    /// Wire form with decimal-string scales.
    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            sigma: self.sigma.clone(),
            lambda: self.lambda.iter().map(RatJson::from).collect(),
        }
    }

    /// Parses and re-validates the wire form.
    pub fn from_json(json: &WitnessJson) -> Result<Witness, SymbolError> {
        let lambda = json
            .lambda
            .iter()
            .enumerate()
            .map(|(index, r)| {
                r.to_rat()
                    .ok_or(SymbolError::NonPositiveScale { index })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Witness::new(json.sigma.clone(), lambda)
    }
}

/// JSON form of a witness: `{"sigma":[..], "lambda":[{"num","den"},..]}`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WitnessJson {
    pub sigma: Vec<u32>,
    pub lambda: Vec<RatJson>,
}

#[cfg(test)]
mod tests {
    use super::rat::rat;
    use super::*;

    fn w(letters: &[u32]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    fn sym(text: &str) -> Symbol {
        Symbol::parse(text).unwrap()
    }

    #[test]
    fn validate_accepts_regular_symbol() {
        let s = Symbol::validate(
            2,
            vec![(w(&[1]), rat(1, 1)), (w(&[2]), rat(1, 1)), (w(&[1, 1]), rat(1, 2))],
        )
        .unwrap();
        assert_eq!(s.arity(), 2);
        assert_eq!(s.degree(), 2);
        assert_eq!(s.terms(), 3);
    }

    #[test]
    fn validate_rejects_empty_word_term() {
        let err = Symbol::validate(
            2,
            vec![
                (Word::empty(), rat(1, 1)),
                (w(&[1]), rat(1, 1)),
                (w(&[2]), rat(1, 1)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, SymbolError::EmptyWordTerm));
        // a zero coefficient on the empty word is the same as no entry
        assert!(Symbol::validate(
            2,
            vec![
                (Word::empty(), rat(0, 1)),
                (w(&[1]), rat(1, 1)),
                (w(&[2]), rat(1, 1)),
            ],
        )
        .is_ok());
    }

    #[test]
    fn validate_rejects_zero_degree_one() {
        let err =
            Symbol::validate(2, vec![(w(&[1]), rat(1, 1)), (w(&[2]), rat(0, 1))]).unwrap_err();
        assert!(matches!(err, SymbolError::MissingDegreeOne { letter: 2 }));
    }

    #[test]
    fn validate_rejects_negative_and_out_of_range() {
        let err = Symbol::validate(
            2,
            vec![
                (w(&[1]), rat(1, 1)),
                (w(&[2]), rat(1, 1)),
                (w(&[1, 2]), rat(-1, 3)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, SymbolError::NegativeCoefficient { .. }));

        let err = Symbol::validate(1, vec![(w(&[1]), rat(1, 1)), (w(&[2]), rat(1, 1))]).unwrap_err();
        assert!(matches!(err, SymbolError::LetterOutOfRange { letter: 2, .. }));
    }

    #[test]
    fn duplicates_are_summed() {
        let s = Symbol::validate(
            1,
            vec![(w(&[1]), rat(1, 2)), (w(&[1]), rat(1, 3))],
        )
        .unwrap();
        assert_eq!(s.coeff(&[1]), Some(&rat(5, 6)));
    }

    #[test]
    fn substitute_scales_and_relabels() {
        // g = X1 + X2 + X1X2, sigma = id, lambda = (2, 3)
        let g = sym("X1 + X2 + X1X2");
        let witness = Witness::new(vec![1, 2], vec![rat(2, 1), rat(3, 1)]).unwrap();
        let h = g.substitute(&witness).unwrap();
        assert_eq!(h, sym("2*X1 + 3*X2 + 6*X1X2"));
    }

    #[test]
    fn substitute_swap() {
        // g = X1 + X2 + X2X1 under the swap with unit scales
        let g = sym("X1 + X2 + X2X1");
        let witness = Witness::new(vec![2, 1], vec![rat(1, 1), rat(1, 1)]).unwrap();
        let h = g.substitute(&witness).unwrap();
        assert_eq!(h, sym("X2 + X1 + X1X2"));
    }

    #[test]
    fn substitute_identity_is_identity() {
        let g = sym("2*X1 + 3*X2 + 1/2*X2X2X1");
        assert_eq!(g.substitute(&Witness::identity(2)).unwrap(), g);
    }

    #[test]
    fn substitute_inverse_round_trip() {
        let g = sym("X1 + 5*X2 + 7/3*X1X2X2");
        let witness = Witness::new(vec![2, 1], vec![rat(3, 4), rat(5, 2)]).unwrap();
        let there = g.substitute(&witness).unwrap();
        let back = there.substitute(&witness.inverse()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn witness_rejects_bad_data() {
        assert!(matches!(
            Witness::new(vec![1, 1], vec![rat(1, 1), rat(1, 1)]),
            Err(SymbolError::NotAPermutation(_))
        ));
        assert!(matches!(
            Witness::new(vec![1, 2], vec![rat(1, 1), rat(-1, 1)]),
            Err(SymbolError::NonPositiveScale { index: 1 })
        ));
        assert!(matches!(
            Witness::new(vec![1, 2], vec![rat(1, 1)]),
            Err(SymbolError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn witness_composition_matches_nested_substitution() {
        let g = sym("X1 + X2 + 4*X2X1X1");
        let w1 = Witness::new(vec![2, 1], vec![rat(2, 1), rat(1, 3)]).unwrap();
        let w2 = Witness::new(vec![1, 2], vec![rat(5, 7), rat(9, 2)]).unwrap();
        let nested = g.substitute(&w1).unwrap().substitute(&w2).unwrap();
        let composed = g.substitute(&w1.then(&w2).unwrap()).unwrap();
        assert_eq!(nested, composed);
    }

    #[test]
    fn canonical_print_round_trips() {
        let s = sym("vars=3; 1/2*X3X1 + X1 + 2*X2 + 0.75*X3");
        let printed = s.to_string();
        assert_eq!(Symbol::parse(&printed).unwrap(), s);
        assert_eq!(printed, "1*X1 + 2*X2 + 3/4*X3 + 1/2*X3X1");
    }

    #[test]
    fn free_poly_eval() {
        let p = FreePoly::new(
            2,
            vec![
                (Word::empty(), Complex64::new(1.0, 0.0)),
                (w(&[1, 2]), Complex64::new(2.0, 0.0)),
            ],
        )
        .unwrap();
        let v = p
            .eval_scalar(&[Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5)])
            .unwrap();
        assert!((v - Complex64::new(1.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn witness_json_round_trip() {
        let witness = Witness::new(vec![3, 1, 2], vec![rat(1, 2), rat(5, 1), rat(7, 3)]).unwrap();
        let json = witness.to_json();
        assert_eq!(Witness::from_json(&json).unwrap(), witness);
    }
}
