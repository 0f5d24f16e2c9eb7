//! Dense exact linear algebra: row reduction, rank, kernels, solving.

use crate::scalar::Scalar;

pub type Matrix<S> = Vec<Vec<S>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
/// Pivots are chosen leftmost, so column order decides which coordinates lead.
pub fn rref<S: Scalar>(mut rows: Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<S: Scalar>(rows: &Matrix<S>) -> usize {
    rref(rows.clone()).1.len()
}

/// Basis of `{x : A x = 0}` for an `m × ncols` matrix `A`.
pub fn nullspace<S: Scalar>(a: &Matrix<S>, ncols: usize) -> Matrix<S> {
    let (r, pivots) = rref(a.clone());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `A x = b`, or `None` when inconsistent.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S], ncols: usize) -> Option<Vec<S>> {
    let aug: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![S::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Reduces `v` against rows in reduced echelon form.
pub fn reduce<S: Scalar>(rows: &Matrix<S>, pivots: &[usize], v: &[S]) -> Vec<S> {
    let mut out = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (x, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
    }
    out
}

/// Transpose of a list of column vectors (each of length `nrows`).
pub fn columns_to_rows<S: Scalar>(cols: &[Vec<S>], nrows: usize) -> Matrix<S> {
    (0..nrows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, x: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(S::zero(), |acc, (r, v)| acc + r.clone() * v.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn rank_and_kernel() {
        let a = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(|x| *x == q(0)));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = solve(&a, &[q(3), q(1)], 2).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let b = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&b, &[q(1), q(3)], 2).is_none());
    }

    #[test]
    fn empty_matrices() {
        let a: Matrix<Q> = vec![];
        assert_eq!(rank(&a), 0);
        assert_eq!(nullspace(&a, 2).len(), 2);
        assert_eq!(solve(&a, &[], 2), Some(vec![q(0), q(0)]));
    }
}
