//! Dense Smith normal form with unimodular transforms, for small matrices
//! where a certificate `U · M · V = D` is wanted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::snf::SmithForm;

type Dense = Vec<Vec<BigInt>>;

/// Smith form of `M` together with unimodular `left` (`U`) and `right`
/// (`V`) such that `U · M · V` is the diagonal matrix of invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithWitness {
    pub form: SmithForm,
    pub left: Dense,
    pub right: Dense,
    pub diagonal: Dense,
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> SmithWitness {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_dense();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let row_axpy = |mat: &mut Dense, target: usize, q: &BigInt, src: usize| {
        let (src_row, tgt_row) = if src < target {
            let (lo, hi) = mat.split_at_mut(target);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = mat.split_at_mut(src);
            (&hi[0], &mut lo[target])
        };
        for (t, s) in tgt_row.iter_mut().zip(src_row) {
            *t -= q * s;
        }
    };
    let col_axpy = |mat: &mut Dense, target: usize, q: &BigInt, src: usize| {
        for row in mat.iter_mut() {
            let s = row[src].clone();
            row[target] -= q * s;
        }
    };
    let swap_cols = |mat: &mut Dense, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_position(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&pivot);
                    row_axpy(&mut a, i, &q, t);
                    row_axpy(&mut u, i, &q, t);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&pivot);
                    col_axpy(&mut a, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // Move the smallest remainder in the pivot cross to (t, t).
                let (ri, _) = min_abs_position(&a, t..rows, t..t + 1).unwrap_or((t, t));
                let (_, cj) = min_abs_position(&a, t..t + 1, t..cols).unwrap_or((t, t));
                if a[ri][t].magnitude() <= a[t][cj].magnitude() {
                    a.swap(t, ri);
                    u.swap(t, ri);
                } else {
                    swap_cols(&mut a, t, cj);
                    swap_cols(&mut v, t, cj);
                }
                continue;
            }
            let bad_row =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diagonal_entries: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    SmithWitness {
        form: SmithForm {
            rank: diagonal_entries.len(),
            invariant_factors: diagonal_entries,
        },
        left: u,
        right: v,
        diagonal: a,
    }
}

fn min_abs_position(
    a: &Dense,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].magnitude() < a[bi][bj].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &Dense, b: &Dense) -> Dense {
        let inner = b.len();
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn certificate_reproduces_diagonal() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])
            .unwrap();
        let w = smith_normal_form_with_transforms(&m);
        let factors: Vec<i64> = w
            .form
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(factors, vec![2, 6, 12]);
        assert_eq!(mul(&mul(&w.left, &m.to_dense()), &w.right), w.diagonal);
    }

    #[test]
    fn rectangular_and_zero() {
        let m = IntegerMatrix::from_dense(&[vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let w = smith_normal_form_with_transforms(&m);
        assert!(w.form.invariant_factors.is_empty());
        let m = IntegerMatrix::from_dense(&[vec![4, 6]]).unwrap();
        let w = smith_normal_form_with_transforms(&m);
        assert_eq!(w.form.invariant_factors, vec![BigInt::from(2)]);
    }
}
