//! Circle images under ball automorphisms.
//!
//! A Möbius map whose pole avoids a circle sends it to a circle, and a
//! unitary preserves that. [`circle_image`] samples the circle
//! `{e^{iθ} ω}`, pushes every sample through `z ↦ U φ_ω(z)`, and fits a
//! circle to the images: the best 2-plane of the centered samples (top two
//! principal directions), then an algebraic least-squares circle inside
//! that plane. The fit residual certifies the "is a circle" verdict, and
//! since `φ_ω(ω) = 0` the fitted circle must pass through the origin.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::dense::CMat;
use crate::fock::eig::hermitian_eigen;
use crate::par;

use super::moebius::{moebius, BallPoint};
use super::GeometryError;

/// Residual below which the sampled image counts as a circle.
pub const CIRCLE_RESIDUAL_TOL: f64 = 1e-9;

/// Unitarity slack for the post-composition matrix.
pub const UNITARY_TOL: f64 = 1e-12;

/// Minimum number of circle samples.
pub const MIN_SAMPLES: usize = 16;

/// A circle in `C^n ≅ R^{2n}`: center, radius, the real 2-plane it spans,
/// and the worst distance of any sample from the fitted circle.
#[derive(Clone, Debug)]
pub struct CircleFit {
    center: Vec<Complex64>,
    radius: f64,
    /// Orthonormal basis of the circle's plane, in interleaved
    /// `[re_1, im_1, re_2, im_2, ..]` coordinates.
    plane: [Vec<f64>; 2],
    residual: f64,
}

impl CircleFit {
    pub fn center(&self) -> &[Complex64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn plane(&self) -> &[Vec<f64>; 2] {
        &self.plane
    }

    /// Maximum distance of the mapped samples from the fitted circle.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Verdict at a residual tolerance.
    pub fn is_circle(&self, tol: f64) -> bool {
        self.residual <= tol
    }

    /// Distance from an ambient point to the fitted circle.
    pub fn distance_to(&self, point: &[Complex64]) -> f64 {
        let d = embed_diff(point, &self.center);
        let in1 = dot(&d, &self.plane[0]);
        let in2 = dot(&d, &self.plane[1]);
        let mut out_sq = 0.0;
        for (k, &x) in d.iter().enumerate() {
            let proj = in1 * self.plane[0][k] + in2 * self.plane[1][k];
            out_sq += (x - proj) * (x - proj);
        }
        let in_plane = (in1 * in1 + in2 * in2).sqrt() - self.radius;
        (in_plane * in_plane + out_sq).sqrt()
    }

    pub fn to_json(&self) -> CircleFitJson {
        CircleFitJson {
            center: self.center.iter().map(|z| [z.re, z.im]).collect(),
            radius: self.radius,
            residual: self.residual,
        }
    }
}

/// Wire form `{"center":[[re,im],..], "radius":r, "residual":e}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleFitJson {
    pub center: Vec<[f64; 2]>,
    pub radius: f64,
    pub residual: f64,
}

fn embed(point: &[Complex64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(2 * point.len());
    for z in point {
        v.push(z.re);
        v.push(z.im);
    }
    v
}

fn embed_diff(a: &[Complex64], b: &[Complex64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(2 * a.len());
    for (x, y) in a.iter().zip(b) {
        v.push(x.re - y.re);
        v.push(x.im - y.im);
    }
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Samples `{e^{2πik/m} ω}`, maps each point through `z ↦ U φ_ω(z)`, and
/// fits a circle to the images.
pub fn circle_image(
    omega: &BallPoint,
    unitary: &CMat,
    samples: usize,
) -> Result<CircleFit, GeometryError> {
    let n = omega.dim();
    if omega.norm_sq() == 0.0 {
        return Err(GeometryError::BasePointZero);
    }
    if omega.norm_sq() >= 1.0 {
        return Err(GeometryError::BasePointOutsideBall {
            norm_sq: omega.norm_sq(),
        });
    }
    if samples < MIN_SAMPLES {
        return Err(GeometryError::TooFewSamples {
            needed: MIN_SAMPLES,
            got: samples,
        });
    }
    if unitary.dim() != n {
        return Err(GeometryError::ArityMismatch {
            expected: n,
            got: unitary.dim(),
        });
    }
    let mut gram = unitary.mul(&unitary.adjoint())?;
    for i in 0..n {
        gram[(i, i)] -= Complex64::ONE;
    }
    let residual = gram.max_abs();
    if residual > UNITARY_TOL {
        return Err(GeometryError::NonUnitary { residual });
    }

    // each sample is independent
    let images = par::map_range(samples, |k| {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let rot = Complex64::from_polar(1.0, theta);
        let z = omega.scale(rot);
        moebius(omega, &z).and_then(|fz| Ok(unitary.apply(fz.coords())?))
    });
    let mut points = Vec::with_capacity(samples);
    for image in images {
        points.push(embed(&image?));
    }

    fit_circle(&points, n)
}

/// Principal 2-plane + algebraic least squares inside it.
fn fit_circle(points: &[Vec<f64>], n: usize) -> Result<CircleFit, GeometryError> {
    let ambient = 2 * n;
    let m = points.len() as f64;
    let mut mean = vec![0.0; ambient];
    for p in points {
        for (acc, &x) in mean.iter_mut().zip(p) {
            *acc += x;
        }
    }
    for x in mean.iter_mut() {
        *x /= m;
    }

    // covariance of the centered samples
    let mut cov = CMat::zeros(ambient);
    for p in points {
        let d: Vec<f64> = p.iter().zip(&mean).map(|(x, mu)| x - mu).collect();
        for i in 0..ambient {
            for j in 0..ambient {
                cov[(i, j)] += Complex64::new(d[i] * d[j], 0.0);
            }
        }
    }
    let (values, vectors) = hermitian_eigen(&cov)?;
    if values[ambient - 2] <= 0.0 {
        return Err(GeometryError::DegenerateFit {
            reason: "samples are collinear",
        });
    }
    let col = |k: usize| -> Vec<f64> { (0..ambient).map(|r| vectors[(r, k)].re).collect() };
    let plane = [col(ambient - 1), col(ambient - 2)];

    // Kåsa fit: minimize Σ (ξ^2 + η^2 + D ξ + E η + F)^2
    let (mut sxx, mut sxy, mut syy, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut sxr, mut syr, mut sr) = (0.0, 0.0, 0.0);
    let mut coords = Vec::with_capacity(points.len());
    for p in points {
        let d: Vec<f64> = p.iter().zip(&mean).map(|(x, mu)| x - mu).collect();
        let xi = dot(&d, &plane[0]);
        let eta = dot(&d, &plane[1]);
        let rsq = xi * xi + eta * eta;
        sxx += xi * xi;
        sxy += xi * eta;
        syy += eta * eta;
        sx += xi;
        sy += eta;
        sxr += xi * rsq;
        syr += eta * rsq;
        sr += rsq;
        coords.push((xi, eta, d));
    }
    let a = [
        [sxx, sxy, sx],
        [sxy, syy, sy],
        [sx, sy, m],
    ];
    let b = [-sxr, -syr, -sr];
    let Some([dcoef, ecoef, fcoef]) = solve3(a, b) else {
        return Err(GeometryError::DegenerateFit {
            reason: "normal equations are singular",
        });
    };
    let cx = -dcoef / 2.0;
    let cy = -ecoef / 2.0;
    let r_sq = cx * cx + cy * cy - fcoef;
    if r_sq <= 0.0 || r_sq.is_nan() {
        return Err(GeometryError::DegenerateFit {
            reason: "nonpositive squared radius",
        });
    }
    let radius = r_sq.sqrt();

    // worst sample distance, including the out-of-plane component
    let mut residual: f64 = 0.0;
    for (xi, eta, d) in &coords {
        let mut out_sq = 0.0;
        for (k, &x) in d.iter().enumerate() {
            let proj = xi * plane[0][k] + eta * plane[1][k];
            out_sq += (x - proj) * (x - proj);
        }
        let in_plane = ((xi - cx).powi(2) + (eta - cy).powi(2)).sqrt() - radius;
        residual = residual.max((in_plane * in_plane + out_sq).sqrt());
    }

    let center: Vec<Complex64> = (0..n)
        .map(|j| {
            let re = mean[2 * j] + cx * plane[0][2 * j] + cy * plane[1][2 * j];
            let im = mean[2 * j + 1] + cx * plane[0][2 * j + 1] + cy * plane[1][2 * j + 1];
            Complex64::new(re, im)
        })
        .collect();
    Ok(CircleFit {
        center,
        radius,
        plane,
        residual,
    })
}

/// 3x3 linear solve with partial pivoting; `None` when singular.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (k, x) in lower[0].iter_mut().enumerate().skip(col) {
                *x -= factor * upper[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}
