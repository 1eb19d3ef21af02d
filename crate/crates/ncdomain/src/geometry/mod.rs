//! The scalar slice of a noncommutative domain and the unit-ball geometry
//! used to compare two such slices.
//!
//! At `H = C`, the domain inequality of a symbol `f` reads
//! `q_f(λ) = Σ a_w |λ^w|^2 ≤ 1`. The resulting set is a Reinhardt domain
//! (invariant under independent rotation of each coordinate). This module
//! evaluates `q_f`, decides scalar membership, solves for boundary radii
//! along rays, and provides the Möbius automorphisms of the unit ball with
//! a circle-image sampler.

mod circle;
mod moebius;

pub use circle::{circle_image, CircleFit, CircleFitJson, CIRCLE_RESIDUAL_TOL};
pub use moebius::{moebius, BallPoint};

use num_complex::Complex64;

use crate::symbol::rat::rat_to_f64;
use crate::symbol::Symbol;

/// Slack allowed on `q_f(λ) ≤ 1` before a scalar point is called outside.
pub const SCALAR_MEMBER_TOL: f64 = 1e-12;

/// Bisection iteration cap for [`boundary_radius`].
pub const BISECTION_MAX_ITERS: usize = 200;

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("tolerance must be positive, got {tol}")]
    NonPositiveTolerance { tol: f64 },
    #[error("base point must lie strictly inside the ball, |ω|^2 = {norm_sq}")]
    BasePointOutsideBall { norm_sq: f64 },
    #[error("base point must be nonzero")]
    BasePointZero,
    #[error("Möbius denominator |1 - <z,ω>| = {denom:.3e} is singular")]
    SingularDenominator { denom: f64 },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NonUnitary { residual: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("circle fit is degenerate: {reason}")]
    DegenerateFit { reason: &'static str },
    #[error(transparent)]
    Fock(#[from] crate::fock::FockError),
}

/// `q_f(λ) = Σ a_w |λ^w|^2`, the scalar form of the domain inequality.
pub fn q_value(f: &Symbol, lambda: &[Complex64]) -> Result<f64, GeometryError> {
    if lambda.len() != f.arity() {
        return Err(GeometryError::ArityMismatch {
            expected: f.arity(),
            got: lambda.len(),
        });
    }
    let mut q = 0.0;
    for (word, a) in f.iter() {
        let mut sq = 1.0f64;
        for &l in word.letters() {
            sq *= lambda[(l - 1) as usize].norm_sqr();
        }
        let a = rat_to_f64(a).unwrap_or(f64::INFINITY);
        q += a * sq;
    }
    Ok(q)
}

/// Scalar membership: `q_f(λ) ≤ 1` up to [`SCALAR_MEMBER_TOL`].
pub fn scalar_member(f: &Symbol, lambda: &[Complex64]) -> Result<bool, GeometryError> {
    Ok(q_value(f, lambda)? <= 1.0 + SCALAR_MEMBER_TOL)
}

/// The unique `r > 0` with `q_f(r·u) = 1` along the direction `u`
/// (normalized internally). Uniqueness holds because `r ↦ q_f(r·u)` is
/// strictly increasing and unbounded: the degree-1 coefficients are
/// strictly positive, so the degree-2 part of `q` already grows without
/// bound. Bracket doubling followed by bisection to `|q - 1| ≤ tol`.
pub fn boundary_radius(
    f: &Symbol,
    direction: &[Complex64],
    tol: f64,
) -> Result<f64, GeometryError> {
    if direction.len() != f.arity() {
        return Err(GeometryError::ArityMismatch {
            expected: f.arity(),
            got: direction.len(),
        });
    }
    if tol <= 0.0 {
        return Err(GeometryError::NonPositiveTolerance { tol });
    }
    let norm = direction
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 {
        return Err(GeometryError::ZeroDirection);
    }
    let unit: Vec<Complex64> = direction.iter().map(|z| z / norm).collect();
    let q_at = |r: f64| -> Result<f64, GeometryError> {
        let scaled: Vec<Complex64> = unit.iter().map(|z| z * r).collect();
        q_value(f, &scaled)
    };

    let mut hi = 1.0f64;
    while q_at(hi)? < 1.0 {
        hi *= 2.0;
        if hi > 1e12 {
            // cannot happen for a valid symbol; defensive cap
            return Err(GeometryError::ZeroDirection);
        }
    }
    let mut lo = 0.0f64;
    let mut mid = hi;
    for _ in 0..BISECTION_MAX_ITERS {
        mid = 0.5 * (lo + hi);
        let q = q_at(mid)?;
        if (q - 1.0).abs() <= tol {
            return Ok(mid);
        }
        if q < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}
