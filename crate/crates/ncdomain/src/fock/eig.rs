//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation factors as a phase alignment (making the pivot entry real)
//! followed by a real Givens rotation that zeroes it. Sweeps repeat until
//! the off-diagonal Frobenius norm drops below [`JACOBI_OFF_TOL`]; on a
//! matrix that is already numerically diagonal (the common case for shift
//! defects) the first convergence check exits immediately.

use num_complex::Complex64;

use crate::par;

use super::dense::CMat;
use super::FockError;

/// Inputs must be Hermitian to within this residual.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;
/// Convergence threshold on the off-diagonal Frobenius norm.
pub const JACOBI_OFF_TOL: f64 = 1e-12;
/// Hard sweep limit; quadratic convergence makes this generous.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eig_hermitian(m: &CMat) -> Result<f64, FockError> {
    Ok(hermitian_eigenvalues(m)?[0])
}

/// All eigenvalues, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>, FockError> {
    Ok(jacobi(m, false)?.0)
}

/// Eigenvalues (ascending) with matching eigenvectors as the columns of the
/// returned matrix.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat), FockError> {
    let (values, vectors) = jacobi(m, true)?;
    Ok((values, vectors.expect("vectors requested")))
}

/// Spectral norm via the largest eigenvalue of `M* M`.
pub fn spectral_norm(m: &CMat) -> Result<f64, FockError> {
    let mut gram = m.adjoint().mul(m)?;
    gram.symmetrize();
    let top = *hermitian_eigenvalues(&gram)?
        .last()
        .expect("nonempty spectrum");
    Ok(top.max(0.0).sqrt())
}

/// Off-diagonal Frobenius norm squared; rows scanned in parallel, partials
/// combined in order.
fn off_diag_sqnorm(a: &CMat) -> f64 {
    let n = a.dim();
    let partials = par::map_range(n, |i| {
        let row = a.row(i);
        let mut s = 0.0;
        for (j, x) in row.iter().enumerate() {
            if j != i {
                s += x.norm_sqr();
            }
        }
        s
    });
    partials.iter().sum()
}

fn jacobi(m: &CMat, want_vectors: bool) -> Result<(Vec<f64>, Option<CMat>), FockError> {
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_INPUT_TOL {
        return Err(FockError::NonHermitian { residual });
    }
    let n = m.dim();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| CMat::zeros(0))));
    }
    let mut a = m.clone();
    a.symmetrize();
    let mut v = want_vectors.then(|| CMat::identity(n));

    // if every pivot is below this, the off-norm check passes too
    let skip = JACOBI_OFF_TOL / n as f64;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diag_sqnorm(&a) <= JACOBI_OFF_TOL * JACOBI_OFF_TOL {
            return Ok(finish(a, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, v.as_mut(), p, q, skip);
            }
        }
    }
    if off_diag_sqnorm(&a) <= JACOBI_OFF_TOL * JACOBI_OFF_TOL {
        return Ok(finish(a, v));
    }
    Err(FockError::EigNotConverged {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

/// One Jacobi rotation on the pivot `(p, q)`.
fn rotate(a: &mut CMat, v: Option<&mut CMat>, p: usize, q: usize, skip: f64) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= skip {
        return;
    }
    let n = a.dim();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase e^{-i phi} aligning the pivot to the real axis
    let phase = apq.conj() / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_phase = phase * s;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * s_phase;
        let new_kq = akp * s + akq * (phase * c);
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * s_phase;
            v[(k, q)] = vkp * s + vkq * (phase * c);
        }
    }
}

/// Reads off the (real) diagonal and sorts ascending, carrying vectors along.
fn finish(a: CMat, v: Option<CMat>) -> (Vec<f64>, Option<CMat>) {
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|v| {
        let mut sorted = CMat::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, new_col)] = v[(r, old_col)];
            }
        }
        sorted
    });
    (values, vectors)
}
