use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Polynomial, Rational, RationalFunction};

/// Integral-domain operations needed by fraction-free elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when the division is exact.
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

impl ExactRing for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        Polynomial::exact_div(self, o).ok()
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn det<T: ExactRing>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant of a matrix of rational functions by cofactor expansion,
/// memoized on the set of columns already used (`O(n 2^n)` products).
///
/// Clearing denominators and eliminating over polynomials is far slower
/// here: the cleared entries are large and Bareiss intermediates grow with
/// every step.
pub fn det_rational_functions(m: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n < 64, "matrix too large for cofactor expansion");
    let mut memo: HashMap<u64, RationalFunction> = HashMap::new();
    memo.insert((1u64 << n) - 1, RationalFunction::one());
    // Masks with more used columns are finished first.
    for used_count in (0..n).rev() {
        let masks: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() as usize == used_count).collect();
        for used in masks {
            let row = used_count;
            let mut terms = Vec::new();
            let mut pos = 0;
            for c in 0..n {
                if used >> c & 1 == 1 {
                    continue;
                }
                let e = &m[row][c];
                let rest = &memo[&(used | 1 << c)];
                if !e.is_zero() && !rest.is_zero() {
                    let t = e * rest;
                    terms.push(if pos % 2 == 1 { -t } else { t });
                }
                pos += 1;
            }
            memo.insert(used, RationalFunction::sum(&terms));
        }
    }
    memo.remove(&0).expect("full expansion")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    /// Leibniz expansion, independent of elimination.
    fn leibniz(m: &[Vec<Rational>]) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod = (0..n).fold(rat(1), |acc, i| acc * &m[i][p[i]]);
                if inversions % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .fold(rat(0), |a, b| a + b)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn identity_and_vandermonde() {
        assert_eq!(det(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), rat(1));
        // rows (x^2, x, 1) at 3, 2, 1
        assert_eq!(det(&mat(&[&[9, 3, 1], &[4, 2, 1], &[1, 1, 1]])), rat(2));
    }

    #[test]
    fn duplicated_row_and_swap() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(det(&m), rat(0));
        let a = mat(&[&[0, 2, 1], &[3, -1, 4], &[5, 5, -2]]);
        let mut b = a.clone();
        b.swap(0, 2);
        assert_eq!(det(&a), -det(&b));
        assert_eq!(det(&a), leibniz(&a));
    }

    #[test]
    fn polynomial_vandermonde_is_difference_product() {
        let rows: Vec<Vec<Polynomial>> = (0..4)
            .map(|i| (0..4).map(|c| Polynomial::var(i).pow(3 - c)).collect())
            .collect();
        let expect = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .fold(Polynomial::one(), |acc, (i, j)| acc.mul_difference(i, j));
        assert_eq!(det(&rows), expect);
    }

    #[test]
    fn rational_function_determinant() {
        let a = RationalFunction::inverse_difference(0, 1).unwrap();
        let b = RationalFunction::inverse_difference(0, 2).unwrap();
        let m = vec![
            vec![a.clone(), RationalFunction::one()],
            vec![b.clone(), RationalFunction::one()],
        ];
        // a - b = (x1 - x2) / ((x0 - x1)(x0 - x2))
        assert_eq!(det_rational_functions(&m), &a - &b);
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_leibniz(v in proptest::collection::vec(-9i64..10, 16)) {
            let m: Vec<Vec<Rational>> = v.chunks(4).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            proptest::prop_assert_eq!(det(&m), leibniz(&m));
        }
    }
}
