//! Eigenvalues of Hermitian matrices by the cyclic complex Jacobi method.
//!
//! Each rotation phases the targeted off-diagonal entry real and then zeroes
//! it with a plane rotation; the off-diagonal mass decreases monotonically,
//! which for the 2x2 and 4x4 matrices used here converges in a handful of
//! sweeps to machine precision.

use crate::error::{Error, Result};
use crate::mat::{c64, ComplexMatrix};

/// Absolute tolerance for the Hermiticity precheck.
pub const HERMITICITY_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 60;

impl ComplexMatrix {
    /// Real spectrum of a Hermitian matrix, ascending.
    ///
    /// Fails with [`Error::NotHermitian`] if `|M - M†|` exceeds 1e-10
    /// anywhere; the computation itself runs on the Hermitian part of `M`,
    /// so roundoff-level asymmetry does not bias the result.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let defect = self.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        jacobi_eigenvalues(&self.hermitian_part())
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a.get(p, q).norm_sqr();
        }
    }
    sum.sqrt()
}

fn jacobi_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut a = m.clone();
    let scale = a.max_abs().max(1.0);
    let target = 1e-15 * scale * (n as f64);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::EigNonConvergence(MAX_SWEEPS));
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}

/// Zero the (p, q) entry of the Hermitian working matrix with the unitary
/// J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] acting on the (p, q) plane, where
/// φ = arg a_pq and (c, s) solve cs(a_pp - a_qq) + (c² - s²)|a_pq| = 0.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a.get(p, q);
    let abs_b = b.norm();
    if abs_b == 0.0 {
        return;
    }
    let phase = b / abs_b; // e^{iφ}
    let alpha = a.get(p, p).re;
    let gamma = a.get(q, q).re;
    let theta = (alpha - gamma) / (2.0 * abs_b);
    // Smaller-magnitude root of t² - 2θt - 1 = 0.
    let t = -theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let n = a.dim();
    let cs = c64(c, 0.0);
    let ss = c64(s, 0.0);
    // Columns: A <- A J.
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, cs * akp - ss * phase.conj() * akq);
        a.set(k, q, ss * akp + cs * phase.conj() * akq);
    }
    // Rows: A <- J† A.
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, cs * apk - ss * phase * aqk);
        a.set(q, k, ss * apk + cs * phase * aqk);
    }
}
