use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dimensions at or below this go straight to the dense solver.
const DENSE_THRESHOLD: usize = 200;
const MAX_LANCZOS_STEPS: usize = 400;
const CHECK_EVERY: usize = 10;
const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// All eigenvalues of a symmetric matrix, ascending.
pub fn full_spectrum(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_square(a)?;
    let mut ev: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenNonConvergence("dense solver produced non-finite eigenvalues".into()));
    }
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn check_square(a: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::invalid("matrix", format!("must be square and non-empty, got {}x{}", a.nrows(), a.ncols())));
    }
    Ok(())
}

fn smallest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, f64) {
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = t.symmetric_eigen();
    let (idx, &theta) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty tridiagonal");
    let last = eig.eigenvectors[(m - 1, idx)];
    (theta, (beta[m - 1] * last).abs())
}

/// Lanczos with full reorthogonalization. `None` if it did not converge.
fn lanczos_min(a: &DMatrix<f64>) -> Option<f64> {
    let n = a.nrows();
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Some(0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut q = DVector::<f64>::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    q /= q.norm();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let steps = MAX_LANCZOS_STEPS.min(n);
    for step in 0..steps {
        let mut w = a * &q;
        let aj = q.dot(&w);
        basis.push(q.clone());
        alpha.push(aj);
        for _ in 0..2 {
            for v in &basis {
                let c = v.dot(&w);
                w.axpy(-c, v, 1.0);
            }
        }
        let b = w.norm();
        beta.push(b);
        let done = b <= 1e-14 * norm || step + 1 == n;
        if done || (step + 1) % CHECK_EVERY == 0 {
            let (theta, residual) = smallest_ritz(&alpha, &beta);
            if done || residual <= RESIDUAL_TOLERANCE * norm {
                return Some(theta);
            }
        }
        q = w / b;
    }
    None
}

/// Smallest eigenvalue of a symmetric matrix. Large matrices use Lanczos and
/// fall back to the dense solver if it stalls.
pub fn min_eigenvalue(a: &DMatrix<f64>) -> Result<f64> {
    check_square(a)?;
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("matrix", "contains non-finite entries"));
    }
    if a.nrows() > DENSE_THRESHOLD {
        if let Some(v) = lanczos_min(a) {
            return Ok(v);
        }
        log::debug!("Lanczos did not converge at dimension {}, using dense solver", a.nrows());
    }
    Ok(full_spectrum(a)?[0])
}
