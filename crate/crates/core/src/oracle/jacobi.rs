//! Cyclic Jacobi eigenvalue iteration.
//!
//! A Hermitian `A + iB` is handled through the real symmetric embedding
//! `[[A, -B], [B, A]]`, whose spectrum is that of `A + iB` with every
//! eigenvalue doubled.

use super::CMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and column eigenvectors of a real symmetric matrix
/// stored row-major.
pub fn symmetric_eigen(mut a: Vec<f64>, dim: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.len() != dim * dim {
        return Err(Error::Domain("matrix data does not match dimension".into()));
    }
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }
    let scale: f64 = a
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..dim)
            .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * dim + j] * a[i * dim + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * dim + p];
                let aqq = a[q * dim + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = (t * t + 1.0).sqrt().recip();
                let s = t * c;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = c * akp - s * akq;
                    a[k * dim + q] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = c * apk - s * aqk;
                    a[q * dim + k] = s * apk + c * aqk;
                }
                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Internal("Jacobi iteration did not converge".into()));
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| a[i * dim + i].total_cmp(&a[j * dim + j]));
    let values = order.iter().map(|&i| a[i * dim + i]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (col, &src) in order.iter().enumerate() {
        for k in 0..dim {
            vectors[k * dim + col] = v[k * dim + src];
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let d = m.dim();
    let e = 2 * d;
    let mut real = vec![0.0; e * e];
    for i in 0..d {
        for j in 0..d {
            let z = m[(i, j)];
            real[i * e + j] = z.re;
            real[(i + d) * e + (j + d)] = z.re;
            real[i * e + (j + d)] = -z.im;
            real[(i + d) * e + j] = z.im;
        }
    }
    let (values, _) = symmetric_eigen(real, e)?;
    Ok(values.into_iter().step_by(2).collect())
}
