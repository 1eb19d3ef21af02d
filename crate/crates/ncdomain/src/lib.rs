//! Noncommutative domain algebras at desk scale.
//!
//! A *symbol* is a free polynomial `f = Σ a_w X_w` over `n` noncommuting
//! variables with nonnegative rational coefficients, no constant term, and
//! strictly positive degree-1 coefficients. Each symbol carves out a domain
//! of operator tuples — those `T` with `Σ a_w T_w T_w* ≤ 1` — and carries a
//! universal such tuple: weighted shifts on the full Fock space whose
//! weights come from the ordered factorizations of each word.
//!
//! This crate materializes that picture at finite truncation and decides
//! the isomorphism question exactly:
//!
//! - [`symbol`]: parsing, validation, exact rational coefficients, and
//!   scale-permutation substitution.
//! - [`fock`]: graded-lex basis indexing, weight tables with an independent
//!   factorization oracle, the truncated universal shifts, defect and
//!   membership tests, coherent vectors.
//! - [`geometry`]: the scalar (Reinhardt) slice of a domain, boundary
//!   sampling, and the Möbius machinery of the unit ball.
//! - [`classify`]: the exact scale-permutation equivalence decision, whose
//!   verdict is exactly complete isometric isomorphism of the associated
//!   algebras; witnesses re-verify by substitution and bridge to an
//!   operator-level membership check.
//!
//! Classification is exact end to end (arbitrary-precision rationals, no
//! tolerances); the numerical layer uses doubles only where square roots
//! and eigenvalues force it.
//!
//! # Text grammar for symbols
//!
//! ```text
//! symbol  := [header] term ( '+' term )*
//! header  := 'vars' '=' integer ';'
//! term    := coeff '*' word | coeff word | word
//! word    := ( 'X' integer )+          e.g. X1X2X1
//! coeff   := integer | decimal | integer '/' integer
//! ```
//!
//! # Example
//!
//! ```
//! use ncdomain::classify::{classify, ClassificationResult};
//! use ncdomain::symbol::Symbol;
//!
//! let f = Symbol::parse("2*X1 + 3*X2 + 6*X1X2").unwrap();
//! let g = Symbol::parse("X1 + X2 + X1X2").unwrap();
//! match classify(&f, &g) {
//!     ClassificationResult::Equivalent(w) => {
//!         assert_eq!(w.sigma(), &[1, 2]);
//!         assert_eq!(g.substitute(&w).unwrap(), f);
//!     }
//!     ClassificationResult::Inequivalent(_) => unreachable!(),
//! }
//! ```
//!
//! With the default `parallel` feature the data-parallel inner loops run on
//! the rayon pool; disabling it gives a fully sequential build with
//! identical results.

pub mod classify;
pub mod fock;
pub mod geometry;
mod par;
pub mod symbol;

pub use fock::{FockError, MembershipReport, ShiftFamily, WeightTable};
pub use geometry::GeometryError;
pub use symbol::{FreePoly, Symbol, SymbolError, Witness, Word};
