//! Dense symmetric eigensolver by cyclic Jacobi rotations.
//!
//! Self-contained on purpose: it shares no code with the character-based
//! spectra it is used to check.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a real symmetric matrix, ascending.
///
/// Sweeps over every `(p, q)` pair, annihilating `a[p][q]` with a plane
/// rotation, until the off-diagonal Frobenius norm drops below `1e-12`
/// (relative to the matrix norm when that exceeds one).
pub fn numeric_eigenvalues(m: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[i][j] - m[j][i]).abs() > SYMMETRY_TOL {
                return Err(Error::NotSymmetricMatrix { row: i, col: j });
            }
        }
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let norm = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * norm.max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- A J
                for row in a.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                // A <- J^T A
                for k in 0..n {
                    let (pk, qk) = (a[p][k], a[q][k]);
                    a[p][k] = c * pk - s * qk;
                    a[q][k] = s * pk + c * qk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}
