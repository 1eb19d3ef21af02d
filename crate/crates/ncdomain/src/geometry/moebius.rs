//! Möbius automorphisms of the complex unit ball.
//!
//! For `|ω| < 1` the involutive automorphism exchanging `0` and `ω` is
//!
//! ```text
//! φ_ω(z) = (ω - P z - s Q z) / (1 - <z, ω>),
//! ```
//!
//! where `P` projects onto the span of `ω` (zero when `ω = 0`),
//! `Q = 1 - P`, and `s = sqrt(1 - |ω|^2)`. It satisfies `φ_ω(0) = ω`,
//! `φ_ω(ω) = 0`, `φ_ω ∘ φ_ω = id`, maps the plane `C·ω` to itself, and
//! obeys the norm identity
//! `1 - |φ_ω(z)|^2 = (1 - |ω|^2)(1 - |z|^2) / |1 - <z, ω>|^2`.

use num_complex::Complex64;

use super::GeometryError;

/// Denominators closer to zero than this are treated as the pole.
pub const MOEBIUS_DENOM_FLOOR: f64 = 1e-14;

/// A point of `C^n` carried together with its squared norm; inside the
/// closed unit ball when `norm_sq <= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    coords: Vec<Complex64>,
    norm_sq: f64,
}

impl BallPoint {
    pub fn new(coords: Vec<Complex64>) -> BallPoint {
        let norm_sq = coords.iter().map(|z| z.norm_sqr()).sum();
        BallPoint { coords, norm_sq }
    }

    pub fn origin(n: usize) -> BallPoint {
        BallPoint {
            coords: vec![Complex64::ZERO; n],
            norm_sq: 0.0,
        }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn in_closed_ball(&self) -> bool {
        self.norm_sq <= 1.0
    }

    /// Hermitian inner product `<self, other> = Σ self_j conj(other_j)`.
    pub fn inner(&self, other: &BallPoint) -> Complex64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> BallPoint {
        BallPoint::new(self.coords.iter().map(|z| z * c).collect())
    }
}

/// Applies `φ_ω` to `z`. Requires `|ω| < 1` and a denominator away from the
/// pole; `z` may sit on the sphere.
pub fn moebius(omega: &BallPoint, z: &BallPoint) -> Result<BallPoint, GeometryError> {
    if z.dim() != omega.dim() {
        return Err(GeometryError::ArityMismatch {
            expected: omega.dim(),
            got: z.dim(),
        });
    }
    if omega.norm_sq() >= 1.0 {
        return Err(GeometryError::BasePointOutsideBall {
            norm_sq: omega.norm_sq(),
        });
    }
    let denom = Complex64::ONE - z.inner(omega);
    if denom.norm() < MOEBIUS_DENOM_FLOOR {
        return Err(GeometryError::SingularDenominator {
            denom: denom.norm(),
        });
    }
    let s = (1.0 - omega.norm_sq()).sqrt();
    // P z = (<z, ω> / |ω|^2) ω, with P = 0 at ω = 0
    let proj_coeff = if omega.norm_sq() > 0.0 {
        z.inner(omega) / omega.norm_sq()
    } else {
        Complex64::ZERO
    };
    let coords = omega
        .coords()
        .iter()
        .zip(z.coords())
        .map(|(&w, &zj)| {
            let p = proj_coeff * w;
            let q = zj - p;
            (w - p - s * q) / denom
        })
        .collect();
    Ok(BallPoint::new(coords))
}
