//! Minimal commutative-ring interface shared by the integer and polynomial
//! coefficient types, and a fraction-free determinant over it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// A commutative ring whose elements carry enough context to build their own
/// zero and one (polynomials need to know their variable count).
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Exact quotient, `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
///
/// Every division performed is exact in an integral domain; a failed exact
/// division therefore means the ring has zero divisors and is reported as
/// `None`.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>, one: &R) -> Option<R> {
    let n = m.len();
    if n == 0 {
        return Some(one.one_like());
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = one.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Some(one.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Some(if sign_flip { det.negated() } else { det })
}

/// Determinant by expansion along the first row. Exponential; used where an
/// independent route is wanted or the ring is not a domain.
pub fn cofactor_det<R: Ring>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    match n {
        0 => one.one_like(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = one.zero_like();
            for j in 0..n {
                if m[0][j].is_zero_elem() {
                    continue;
                }
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].times(&cofactor_det(&minor, one));
                acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        let one = BigInt::one();
        let m = mat(&[&[2, 3], &[1, 4]]);
        assert_eq!(bareiss_det(m.clone(), &one), Some(BigInt::from(5)));
        assert_eq!(cofactor_det(&m, &one), BigInt::from(5));
        // needs a pivot swap
        let m = mat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(bareiss_det(m.clone(), &one), Some(cofactor_det(&m, &one)));
        assert_eq!(cofactor_det(&m, &one), BigInt::from(-2));
        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(singular, &one), Some(BigInt::zero()));
        assert_eq!(bareiss_det(Vec::new(), &one), Some(one.clone()));
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_cofactor(entries in proptest::collection::vec(-20i64..20, 25)) {
            let m: Vec<Vec<BigInt>> = entries.chunks(5)
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let one = BigInt::one();
            proptest::prop_assert_eq!(bareiss_det(m.clone(), &one).unwrap(), cofactor_det(&m, &one));
        }
    }
}
