//! Positive-semidefiniteness certificates for symmetric rational matrices.
//! Small matrices get an exact LDL^T factorization (no tolerance at all);
//! larger ones fall back to a floating eigenvalue bound.

use num_traits::{Signed, Zero};

use crate::scalar::Rational;

/// Exact LDL is used up to this dimension; beyond it the float path runs.
pub const EXACT_LDL_MAX_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdMethod {
    ExactLdl,
    FloatEigen,
}

#[derive(Clone, Debug)]
pub struct PsdReport {
    pub dim: usize,
    pub method: PsdMethod,
    pub psd: bool,
    /// For a failing exact check: the elimination step where a negative
    /// pivot or an inconsistent zero pivot appeared.
    pub failure_index: Option<usize>,
}

/// Exact LDL^T positivity test for a symmetric rational matrix.
/// A zero pivot is admissible only if its whole remaining row vanishes.
pub fn psd_exact_ldl(matrix: &[Vec<Rational>]) -> PsdReport {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return PsdReport {
                dim: n,
                method: PsdMethod::ExactLdl,
                psd: false,
                failure_index: Some(k),
            };
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return PsdReport {
                    dim: n,
                    method: PsdMethod::ExactLdl,
                    psd: false,
                    failure_index: Some(k),
                };
            }
            continue;
        }
        for i in (k + 1)..n {
            let factor = &a[i][k] / &pivot;
            for j in (k + 1)..n {
                let delta = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
    }
    PsdReport {
        dim: n,
        method: PsdMethod::ExactLdl,
        psd: true,
        failure_index: None,
    }
}

fn to_f64(x: &Rational) -> f64 {
    // good enough for the float path: numerator/denominator may exceed f64
    // range individually only far beyond the matrix sizes used here
    let num = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

/// Floating eigenvalue test with threshold -1e-9 * max(1, max |entry|).
pub fn psd_float_eigen(matrix: &[Vec<Rational>]) -> PsdReport {
    let n = matrix.len();
    let mut data = Vec::with_capacity(n * n);
    let mut norm = 1.0f64;
    for row in matrix {
        for x in row {
            let v = to_f64(x);
            norm = norm.max(v.abs());
            data.push(v);
        }
    }
    let m = nalgebra::DMatrix::from_row_slice(n, n, &data);
    let eig = m.symmetric_eigen();
    let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    PsdReport {
        dim: n,
        method: PsdMethod::FloatEigen,
        psd: min_eig >= -1e-9 * norm,
        failure_index: None,
    }
}

/// Dispatch on dimension: exact where feasible, float at scale.
pub fn psd_check(matrix: &[Vec<Rational>]) -> PsdReport {
    if matrix.len() <= EXACT_LDL_MAX_DIM {
        psd_exact_ldl(matrix)
    } else {
        psd_float_eigen(matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn identity_is_psd() {
        assert!(psd_exact_ldl(&m(&[&[1, 0], &[0, 1]])).psd);
    }

    #[test]
    fn negative_pivot_fails() {
        let r = psd_exact_ldl(&m(&[&[1, 2], &[2, 1]]));
        assert!(!r.psd);
        assert_eq!(r.failure_index, Some(1));
    }

    #[test]
    fn zero_pivot_with_nonzero_row_fails() {
        let r = psd_exact_ldl(&m(&[&[0, 1], &[1, 0]]));
        assert!(!r.psd);
        assert_eq!(r.failure_index, Some(0));
    }

    #[test]
    fn zero_matrix_is_psd() {
        assert!(psd_exact_ldl(&m(&[&[0, 0], &[0, 0]])).psd);
    }

    #[test]
    fn rank_deficient_psd() {
        // [[1,1],[1,1]] is PSD with a zero second pivot
        assert!(psd_exact_ldl(&m(&[&[1, 1], &[1, 1]])).psd);
    }

    #[test]
    fn rational_entries() {
        let g = vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat(1, 2), rat(1, 4)],
        ];
        assert!(psd_exact_ldl(&g).psd);
        let g2 = vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat(1, 2), rat(1, 5)],
        ];
        assert!(!psd_exact_ldl(&g2).psd);
    }

    #[test]
    fn float_path_agrees_on_small() {
        let good = m(&[&[2, 1], &[1, 2]]);
        let bad = m(&[&[1, 3], &[3, 1]]);
        assert!(psd_float_eigen(&good).psd);
        assert!(!psd_float_eigen(&bad).psd);
    }
}
