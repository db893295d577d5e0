//! Fraction-free (Bareiss) elimination on small integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Exact determinant; the empty matrix has determinant 1.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * prev
    }
}

/// Leading principal minors D_1, …, D_n. Once a minor vanishes the
/// elimination cannot continue without pivoting; the remaining minors are
/// computed directly.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a = to_big(m);
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            for s in k + 2..=n {
                let sub: Vec<Vec<i64>> = m[..s].iter().map(|r| r[..s].to_vec()).collect();
                out.push(determinant(&sub));
            }
            return out;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &pivot * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cofactor expansion, exponential but independent.
    fn det_cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn matches_cofactor_expansion() {
        let cases = vec![
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
            vec![vec![1, 2, 3, 4], vec![2, 0, 1, -1], vec![3, 1, -2, 0], vec![4, -1, 0, 5]],
            vec![vec![1, 1], vec![1, 1]],
        ];
        for m in cases {
            assert_eq!(determinant(&m), det_cofactor(&m).into(), "{m:?}");
            let minors = leading_minors(&m);
            for (k, d) in minors.iter().enumerate() {
                let sub: Vec<Vec<i64>> = m[..=k].iter().map(|r| r[..=k].to_vec()).collect();
                assert_eq!(*d, det_cofactor(&sub).into());
            }
        }
    }
}
