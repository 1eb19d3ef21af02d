//! Graded-lexicographic indexing of the truncated Fock basis.
//!
//! The basis of the full Fock space over `C^n` is indexed by words of the
//! free monoid; truncating at level `N` keeps the words of length at most
//! `N`. Index 0 is always the empty word (the vacuum), and the index order
//! is graded-lex, matching [`crate::symbol::Word`]'s `Ord`.

use std::collections::HashMap;

use crate::symbol::Word;

use super::FockError;

/// Default cap on the number of basis words; `n^N` grows fast.
pub const DEFAULT_DIM_CAP: usize = 200_000;

/// An enumeration of all words of length `<= level_cap` over `1..=arity` in
/// graded-lex order, with both directions of the word/index bijection.
#[derive(Clone, Debug)]
pub struct FockIndex {
    arity: usize,
    level_cap: usize,
    words: Vec<Word>,
    /// Keyed by letter slices so lookups take `&[u32]` without allocating.
    index_of: HashMap<Vec<u32>, usize>,
    /// `level_starts[k]` is the index of the first word of length `k`;
    /// one extra entry marks the end.
    level_starts: Vec<usize>,
}

impl FockIndex {
    /// Enumerates with the default dimension cap.
    pub fn new(arity: usize, level_cap: usize) -> Result<FockIndex, FockError> {
        FockIndex::with_dim_cap(arity, level_cap, DEFAULT_DIM_CAP)
    }

    /// Enumerates all words of length `<= level_cap`, refusing to build a
    /// basis larger than `dim_cap`.
    pub fn with_dim_cap(
        arity: usize,
        level_cap: usize,
        dim_cap: usize,
    ) -> Result<FockIndex, FockError> {
        if arity == 0 {
            return Err(FockError::ZeroArity);
        }
        // dim = 1 + n + .. + n^N; saturating arithmetic keeps huge requests
        // representable for the error report
        let mut dim: usize = 0;
        let mut level_size: usize = 1;
        for _ in 0..=level_cap {
            dim = dim.saturating_add(level_size);
            level_size = level_size.saturating_mul(arity);
        }
        if dim > dim_cap {
            return Err(FockError::ResourceGuard {
                requested: dim,
                cap: dim_cap,
            });
        }

        let mut words = Vec::with_capacity(dim);
        let mut level_starts = Vec::with_capacity(level_cap + 2);
        level_starts.push(0);
        words.push(Word::empty());
        let mut prev_level = 0..1usize;
        for _ in 1..=level_cap {
            level_starts.push(words.len());
            let start = words.len();
            // prefix-major generation keeps each level in lex order
            for letter in 1..=arity as u32 {
                for i in prev_level.clone() {
                    let w = words[i].clone();
                    words.push(w.prepend(letter));
                }
            }
            prev_level = start..words.len();
        }
        level_starts.push(words.len());
        debug_assert_eq!(words.len(), dim);

        let index_of = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters().to_vec(), i))
            .collect();
        Ok(FockIndex {
            arity,
            level_cap,
            words,
            index_of,
            level_starts,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Truncation level `N`.
    pub fn level_cap(&self) -> usize {
        self.level_cap
    }

    /// Total number of basis words, `sum_{k<=N} n^k`.
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, idx: usize) -> &Word {
        &self.words[idx]
    }

    /// Index of a word, if it lies within the truncation.
    pub fn index(&self, word: &[u32]) -> Option<usize> {
        self.index_of.get(word).copied()
    }

    /// Word length of the word at `idx`.
    pub fn level_of(&self, idx: usize) -> usize {
        debug_assert!(idx < self.dim());
        self.level_starts.partition_point(|&s| s <= idx) - 1
    }

    /// Index range of the words of length `level`.
    pub fn level_range(&self, level: usize) -> std::ops::Range<usize> {
        self.level_starts[level]..self.level_starts[level + 1]
    }

    /// Index of `letter . word(idx)`, or `None` when that word would exceed
    /// the truncation. Pure arithmetic: within level `k+1` the words sort by
    /// first letter, then by their length-`k` tail in level-`k` order.
    pub fn prepend(&self, letter: u32, idx: usize) -> Option<usize> {
        debug_assert!((1..=self.arity as u32).contains(&letter));
        let level = self.level_of(idx);
        if level == self.level_cap {
            return None;
        }
        let level_size = self.level_starts[level + 1] - self.level_starts[level];
        let pos = idx - self.level_starts[level];
        Some(self.level_starts[level + 1] + (letter as usize - 1) * level_size + pos)
    }
}
