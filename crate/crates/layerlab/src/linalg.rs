//! Small linear-algebra kernels: the Thomas algorithm for the tridiagonal
//! layer systems and a matrix-free Jacobi-preconditioned conjugate gradient
//! for the symmetric positive definite corner/reference systems.

use crate::par;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("tridiagonal system is singular at row {row} (pivot {pivot:.3e})")]
    SingularSystem { row: usize, pivot: f64 },
    #[error("conjugate gradient failed to reach rtol {rtol:.1e} in {iters} iterations (achieved {achieved:.3e})")]
    CgNoConvergence { rtol: f64, iters: usize, achieved: f64 },
}

/// Thomas algorithm. `lower[i]` couples row i+1 to i, `upper[i]` row i to i+1.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, LinalgError> {
    let n = diag.len();
    assert_eq!(lower.len(), n - 1);
    assert_eq!(upper.len(), n - 1);
    assert_eq!(rhs.len(), n);
    let mut c = vec![0.0; n - 1];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return Err(LinalgError::SingularSystem { row: 0, pivot });
    }
    c[0] = upper[0] / pivot;
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(LinalgError::SingularSystem { row: i, pivot });
        }
        if i < n - 1 {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

pub struct CgStats {
    pub iterations: usize,
    pub rel_residual: f64,
}

/// Preconditioned CG for A x = b with matrix-free `apply` and diagonal
/// preconditioner given by its inverse entries. `x` holds the initial guess
/// on entry and the solution on exit. Convergence is ||r||/||b|| <= rtol in
/// the Euclidean norm; all reductions are deterministic.
pub fn pcg<A>(
    apply: A,
    precond_inv: &[f64],
    b: &[f64],
    x: &mut [f64],
    rtol: f64,
    max_iter: usize,
) -> Result<CgStats, LinalgError>
where
    A: Fn(&[f64], &mut [f64]) + Sync,
{
    let n = b.len();
    let bnorm = par::dot(b, b).sqrt();
    if bnorm == 0.0 {
        x.fill(0.0);
        return Ok(CgStats { iterations: 0, rel_residual: 0.0 });
    }
    let mut r = vec![0.0; n];
    let mut ap = vec![0.0; n];
    apply(x, &mut ap);
    for i in 0..n {
        r[i] = b[i] - ap[i];
    }
    let mut z: Vec<f64> = (0..n).map(|i| precond_inv[i] * r[i]).collect();
    let mut p = z.clone();
    let mut rz = par::dot(&r, &z);
    let mut rel = par::dot(&r, &r).sqrt() / bnorm;
    let mut iterations = 0;
    while rel > rtol && iterations < max_iter {
        apply(&p, &mut ap);
        let pap = par::dot(&p, &ap);
        if pap <= 0.0 {
            // loss of positive definiteness; bail with current residual
            return Err(LinalgError::CgNoConvergence { rtol, iters: iterations, achieved: rel });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = precond_inv[i] * r[i];
        }
        let rz_new = par::dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        rel = par::dot(&r, &r).sqrt() / bnorm;
        iterations += 1;
    }
    if rel > rtol {
        return Err(LinalgError::CgNoConvergence { rtol, iters: iterations, achieved: rel });
    }
    Ok(CgStats { iterations, rel_residual: rel })
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_solves_poisson() {
        // -u'' = 1 on (0,1), u(0)=u(1)=0, exact u = x(1-x)/2
        let n = 101;
        let h = 1.0 / (n as f64 - 1.0);
        let m = n - 2;
        let lower = vec![-1.0 / (h * h); m - 1];
        let upper = vec![-1.0 / (h * h); m - 1];
        let diag = vec![2.0 / (h * h); m];
        let rhs = vec![1.0; m];
        let x = solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        for (k, &v) in x.iter().enumerate() {
            let t = (k as f64 + 1.0) * h;
            assert!((v - 0.5 * t * (1.0 - t)).abs() < 1e-12);
        }
    }

    #[test]
    fn tridiagonal_detects_singularity() {
        let err = solve_tridiagonal(&[1.0], &[0.0, 0.0], &[1.0], &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, LinalgError::SingularSystem { .. }));
    }

    #[test]
    fn cg_solves_diagonal_plus_laplacian() {
        // 1D operator (2/h^2 + 1) tridiagonal as a matrix-free apply
        let n = 500;
        let h = 0.01;
        let apply = |u: &[f64], out: &mut [f64]| {
            for i in 0..n {
                let um = if i > 0 { u[i - 1] } else { 0.0 };
                let up = if i + 1 < n { u[i + 1] } else { 0.0 };
                out[i] = (2.0 * u[i] - um - up) / (h * h) + u[i];
            }
        };
        let b = vec![1.0; n];
        let minv = vec![1.0 / (2.0 / (h * h) + 1.0); n];
        let mut x = vec![0.0; n];
        let stats = pcg(apply, &minv, &b, &mut x, 1e-12, 10_000).unwrap();
        assert!(stats.rel_residual <= 1e-12);
        let mut res = vec![0.0; n];
        apply(&x, &mut res);
        for i in 0..n {
            assert!((res[i] - 1.0).abs() < 1e-7);
        }
    }
}
