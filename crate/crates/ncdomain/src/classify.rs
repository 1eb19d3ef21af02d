//! Exact decision of scale-permutation equivalence.
//!
//! Two symbols `f` and `g` over the same number of variables are
//! scale-permutation equivalent when
//! `f(X_1,..,X_n) = g(λ_1 X_{σ(1)},..,λ_n X_{σ(n)})` for a permutation `σ`
//! and positive rational scales `λ`. This relation is exactly complete
//! isometric isomorphism of the associated noncommutative domain algebras,
//! so [`classify`] doubles as the isomorphism decision.
//!
//! The procedure is exact end to end. The scales are never searched:
//! matching the degree-1 coefficients forces `λ_j = a_f(σ(j)) / a_g(j)`,
//! a ratio of strictly positive rationals. Only the permutation is
//! enumerated, lexicographically, with partial assignments pruned as soon
//! as a fully relabeled support word of either symbol falls outside the
//! other's support. The first verifying permutation wins, so the returned
//! witness is the lexicographically least valid one and the output is
//! deterministic.

use serde::{Deserialize, Serialize};

use crate::fock::{is_member_sparse, MembershipReport, ShiftFamily, SparseTuple};
use crate::symbol::rat::rat_to_f64;
use crate::symbol::{Rat, RatJson, Symbol, SymbolError, Witness, WitnessJson, Word};

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("witness does not reproduce the left symbol under substitution")]
    InvalidWitness,
    #[error("truncation level {level} is below the symbol degree {needed}")]
    TruncationTooSmall { level: usize, needed: usize },
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Fock(#[from] crate::fock::FockError),
}

/// Why two symbols are not equivalent.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Different numbers of variables; no comparison is possible.
    ArityMismatch { left: usize, right: usize },
    /// Every permutation was refuted. Carries one concrete refutation: the
    /// last fully checked permutation with the first word (in graded-lex
    /// order) where the forced substitution disagrees with the left symbol.
    NoPermutation {
        sigma: Vec<u32>,
        word: Word,
        expected: Option<Rat>,
        found: Option<Rat>,
    },
}

/// Outcome of [`classify`]: either a verifying witness or a certificate of
/// inequivalence.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassificationResult {
    Equivalent(Witness),
    Inequivalent(Certificate),
}

impl ClassificationResult {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, ClassificationResult::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ClassificationResult::Equivalent(w) => Some(w),
            ClassificationResult::Inequivalent(_) => None,
        }
    }

    pub fn to_json(&self) -> ClassificationJson {
        match self {
            ClassificationResult::Equivalent(w) => ClassificationJson::Equivalent {
                witness: w.to_json(),
            },
            ClassificationResult::Inequivalent(cert) => ClassificationJson::Inequivalent {
                certificate: match cert {
                    Certificate::ArityMismatch { left, right } => CertificateJson::ArityMismatch {
                        left: *left,
                        right: *right,
                    },
                    Certificate::NoPermutation {
                        sigma,
                        word,
                        expected,
                        found,
                    } => CertificateJson::NoPermutation {
                        sigma: sigma.clone(),
                        word: word.letters().to_vec(),
                        expected: expected.as_ref().map(RatJson::from),
                        found: found.as_ref().map(RatJson::from),
                    },
                },
            },
        }
    }
}

/// Wire form of a classification outcome, mirroring the variants.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationJson {
    Equivalent { witness: WitnessJson },
    Inequivalent { certificate: CertificateJson },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateJson {
    ArityMismatch {
        left: usize,
        right: usize,
    },
    NoPermutation {
        sigma: Vec<u32>,
        word: Vec<u32>,
        expected: Option<RatJson>,
        found: Option<RatJson>,
    },
}

/// The scales forced by a permutation: `λ_j = a_f(σ(j)) / a_g(j)`. Both
/// degree-1 coefficients are strictly positive by regularity, so every
/// scale exists and is positive — nothing is searched.
pub fn solve_scales(f: &Symbol, g: &Symbol, sigma: &[u32]) -> Result<Vec<Rat>, ClassifyError> {
    let n = f.arity();
    if g.arity() != n || sigma.len() != n {
        return Err(ClassifyError::ArityMismatch {
            expected: n,
            got: if g.arity() != n { g.arity() } else { sigma.len() },
        });
    }
    Ok((1..=n as u32)
        .map(|j| {
            let image = sigma[(j - 1) as usize];
            let num = f.coeff(&[image]).expect("degree-1 coefficient");
            let den = g.coeff(&[j]).expect("degree-1 coefficient");
            num / den
        })
        .collect())
}

/// True exactly when `substitute(g, w) = f` as rational coefficient maps.
pub fn verify_witness(f: &Symbol, g: &Symbol, witness: &Witness) -> Result<bool, ClassifyError> {
    if f.arity() != g.arity() {
        return Err(ClassifyError::ArityMismatch {
            expected: f.arity(),
            got: g.arity(),
        });
    }
    Ok(&g.substitute(witness)? == f)
}

/// Decides scale-permutation equivalence with support-image pruning.
pub fn classify(f: &Symbol, g: &Symbol) -> ClassificationResult {
    classify_impl(f, g, true)
}

/// Reference route: full enumeration of all permutations, no pruning.
/// Kept public so the pruned search can be checked against it.
pub fn classify_unpruned(f: &Symbol, g: &Symbol) -> ClassificationResult {
    classify_impl(f, g, false)
}

fn classify_impl(f: &Symbol, g: &Symbol, prune: bool) -> ClassificationResult {
    if f.arity() != g.arity() {
        return ClassificationResult::Inequivalent(Certificate::ArityMismatch {
            left: f.arity(),
            right: g.arity(),
        });
    }
    let n = f.arity();
    let mut search = Search {
        f,
        g,
        prune,
        sigma: vec![0u32; n],
        used: vec![false; n],
        refutation: None,
    };
    if let Some(witness) = search.run(0) {
        return ClassificationResult::Equivalent(witness);
    }
    let certificate = match search.refutation {
        Some(c) => c,
        // every branch was pruned before completing; refute one
        // permutation concretely for the certificate
        None => {
            let sigma: Vec<u32> = (1..=n as u32).rev().collect();
            refute(f, g, &sigma).expect("pruned permutation cannot verify")
        }
    };
    ClassificationResult::Inequivalent(certificate)
}

struct Search<'a> {
    f: &'a Symbol,
    g: &'a Symbol,
    prune: bool,
    sigma: Vec<u32>,
    used: Vec<bool>,
    refutation: Option<Certificate>,
}

impl Search<'_> {
    /// Extends the assignment `sigma[..depth]`, trying images in increasing
    /// order so the first witness found is lexicographically least.
    fn run(&mut self, depth: usize) -> Option<Witness> {
        let n = self.sigma.len();
        if depth == n {
            let lambda = solve_scales(self.f, self.g, &self.sigma).expect("arities match");
            let witness =
                Witness::new(self.sigma.clone(), lambda).expect("forced scales are positive");
            match self.g.substitute(&witness) {
                Ok(h) if &h == self.f => return Some(witness),
                _ => {
                    self.refutation = refute(self.f, self.g, &self.sigma);
                    return None;
                }
            }
        }
        for image in 1..=n as u32 {
            if self.used[(image - 1) as usize] {
                continue;
            }
            self.sigma[depth] = image;
            self.used[(image - 1) as usize] = true;
            if !self.prune || self.partial_ok(depth + 1) {
                if let Some(w) = self.run(depth + 1) {
                    return Some(w);
                }
            }
            self.used[(image - 1) as usize] = false;
        }
        self.sigma[depth] = 0;
        None
    }

    /// Support-image containment on everything decided so far: a support
    /// word of `g` whose letters are all assigned must land in the support
    /// of `f`, and a support word of `f` built entirely from already-used
    /// images must pull back into the support of `g`.
    fn partial_ok(&self, assigned: usize) -> bool {
        let map = &self.sigma[..assigned];
        for word in self.g.support() {
            if word.letters().iter().all(|&l| (l as usize) <= assigned) {
                let image: Vec<u32> = word
                    .letters()
                    .iter()
                    .map(|&l| map[(l - 1) as usize])
                    .collect();
                if self.f.coeff(&image).is_none() {
                    return false;
                }
            }
        }
        // inverse of the partial assignment
        let n = self.sigma.len();
        let mut inv = vec![0u32; n];
        for (i, &img) in map.iter().enumerate() {
            inv[(img - 1) as usize] = (i + 1) as u32;
        }
        for word in self.f.support() {
            let all_assigned = word.letters().iter().all(|&l| inv[(l - 1) as usize] != 0);
            if all_assigned {
                let preimage: Vec<u32> = word
                    .letters()
                    .iter()
                    .map(|&l| inv[(l - 1) as usize])
                    .collect();
                if self.g.coeff(&preimage).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the refutation record for a complete permutation: the first word
/// (graded-lex) where the forced substitution of `g` differs from `f`.
fn refute(f: &Symbol, g: &Symbol, sigma: &[u32]) -> Option<Certificate> {
    let lambda = solve_scales(f, g, sigma).ok()?;
    let witness = Witness::new(sigma.to_vec(), lambda).ok()?;
    let h = g.substitute(&witness).ok()?;
    let mut words: Vec<&Word> = h.support().chain(f.support()).collect();
    words.sort();
    words.dedup();
    for word in words {
        let expected = h.coeff(word.letters());
        let found = f.coeff(word.letters());
        if expected != found {
            return Some(Certificate::NoPermutation {
                sigma: sigma.to_vec(),
                word: word.clone(),
                expected: expected.cloned(),
                found: found.cloned(),
            });
        }
    }
    None
}

/// Operator-level realization of a verified witness.
///
/// With `f = g(λ_1 X_{σ(1)},..,λ_n X_{σ(n)})`, the weights transform as
/// `b_f(σ(w)) = Λ_w b_g(w)` with `Λ_w` the product of scales along `w`, so
/// the tuple
///
/// ```text
/// T_{σ(j)} = λ_j^{-1/2} W_j^g
/// ```
///
/// is unitarily equivalent to the universal tuple of `f` (a basis
/// relabeling): `Σ a_f(w) T_w T_w* = Σ a_g(w) W_w^g (W_w^g)*` exactly,
/// term by term. The membership test of `f` at this tuple must therefore
/// pass, which bridges the exact verdict to the operator picture.
///
/// The witness is re-verified before any matrix work; `level` must be at
/// least `deg f`.
pub fn operator_witness_check(
    f: &Symbol,
    g: &Symbol,
    witness: &Witness,
    level: usize,
    tol: f64,
) -> Result<MembershipReport, ClassifyError> {
    operator_witness_check_with_cap(f, g, witness, level, tol, crate::fock::DEFAULT_DIM_CAP)
}

/// As [`operator_witness_check`] with an explicit basis-size cap.
pub fn operator_witness_check_with_cap(
    f: &Symbol,
    g: &Symbol,
    witness: &Witness,
    level: usize,
    tol: f64,
    dim_cap: usize,
) -> Result<MembershipReport, ClassifyError> {
    if !verify_witness(f, g, witness)? {
        return Err(ClassifyError::InvalidWitness);
    }
    if level < f.degree() {
        return Err(ClassifyError::TruncationTooSmall {
            level,
            needed: f.degree(),
        });
    }
    let family = ShiftFamily::build_with_cap(g, level, dim_cap)?;
    let n = f.arity();
    let mut ops = vec![None; n];
    for j in 1..=n as u32 {
        let image = witness.image(j);
        let lambda = rat_to_f64(&witness.lambda()[(j - 1) as usize])
            .ok_or(crate::fock::FockError::NonFiniteWeight { index: 0 })?;
        let scale = num_complex::Complex64::new(lambda.sqrt().recip(), 0.0);
        ops[(image - 1) as usize] = Some(family.shift(j).scale(scale));
    }
    let tuple = SparseTuple::new(ops.into_iter().map(|o| o.expect("bijection")).collect())?;
    Ok(is_member_sparse(f, &tuple, tol)?)
}
