//! Words over the free monoid on the letters `1..=n`.
//!
//! A word indexes both a monomial `X_{i1}...X_{ik}` in the free algebra and
//! a basis vector of the full Fock space. The empty word is the monoid unit
//! and doubles as the vacuum index.

use std::cmp::Ordering;
use std::fmt;

/// A finite sequence of letters from `{1,..,n}`. The empty sequence is the
/// monoid unit.
///
/// Ordering is graded lexicographic: shorter words first, ties broken by
/// letterwise comparison. This is the canonical order used everywhere for
/// printing, hashing and basis indexing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<u32>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based letters. Letters must be nonzero; arity
    /// bounds are checked by the consumers that know `n`.
    pub fn from_letters(letters: impl Into<Vec<u32>>) -> Self {
        let letters = letters.into();
        debug_assert!(letters.iter().all(|&l| l >= 1), "letters are 1-based");
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    /// Word length `|w|`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self . other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word with `letter` prepended.
    pub fn prepend(&self, letter: u32) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// The suffix left after removing the first `k` letters.
    pub fn suffix_from(&self, k: usize) -> &[u32] {
        &self.0[k..]
    }

    /// Largest letter appearing, or 0 for the empty word.
    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl From<&[u32]> for Word {
    fn from(letters: &[u32]) -> Self {
        Word::from_letters(letters.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        for l in &self.0 {
            write!(f, "X{l}")?;
        }
        Ok(())
    }
}
