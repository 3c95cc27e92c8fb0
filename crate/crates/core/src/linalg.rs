//! Exact linear solves: fraction-free Bareiss elimination over an integral
//! domain and plain Gaussian elimination over a field.

use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An integral domain with exact division.
pub trait Ring: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / other` when the quotient lies in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for BigRational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveError {
    Singular,
    Cancelled,
    /// A division that must be exact left a remainder.
    Inexact,
    DimensionMismatch,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Singular => write!(f, "matrix is singular"),
            SolveError::Cancelled => write!(f, "solve cancelled"),
            SolveError::Inexact => write!(f, "inexact division during fraction-free elimination"),
            SolveError::DimensionMismatch => write!(f, "matrix dimensions do not match"),
        }
    }
}

/// `x = numerators[k] / denominator` solves `A x = rhs[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionFreeSolution<R> {
    pub denominator: R,
    pub numerators: Vec<Vec<R>>,
}

fn cancelled(token: Option<&AtomicBool>) -> bool {
    token.is_some_and(|t| t.load(Ordering::Relaxed))
}

/// Forward Bareiss elimination on the augmented matrix in place. Returns the
/// number of row swaps.
fn bareiss_forward<R: Ring>(
    m: &mut [Vec<R>],
    n: usize,
    cancel: Option<&AtomicBool>,
) -> Result<usize, SolveError> {
    let width = m.first().map_or(0, Vec::len);
    let mut prev = R::one_elem();
    let mut swaps = 0;
    for k in 0..n {
        if cancelled(cancel) {
            return Err(SolveError::Cancelled);
        }
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero_elem())
            .ok_or(SolveError::Singular)?;
        if pivot != k {
            m.swap(pivot, k);
            swaps += 1;
        }
        for i in k + 1..n {
            if cancelled(cancel) {
                return Err(SolveError::Cancelled);
            }
            for j in k + 1..width {
                let num = m[k][k]
                    .mul_ref(&m[i][j])
                    .sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = num.exact_div(&prev).ok_or(SolveError::Inexact)?;
            }
            m[i][k] = R::zero_elem();
        }
        prev = m[k][k].clone();
    }
    Ok(swaps)
}

/// Solve `A x = b` for every column `b` of `rhs` without leaving the ring,
/// by fraction-free Gauss–Jordan elimination. After step `k` every entry is
/// a `(k+1)`-minor of the augmented matrix, so all divisions are exact and
/// the final right-hand columns hold `det · x`. The denominator is `±det A`.
pub fn bareiss_solve<R: Ring>(
    a: &[Vec<R>],
    rhs: &[Vec<R>],
    cancel: Option<&AtomicBool>,
) -> Result<FractionFreeSolution<R>, SolveError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) || rhs.iter().any(|col| col.len() != n) {
        return Err(SolveError::DimensionMismatch);
    }
    if n == 0 {
        return Err(SolveError::Singular);
    }
    let mut m: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(rhs.iter().map(|col| col[i].clone()));
            row
        })
        .collect();
    let width = n + rhs.len();
    let mut prev = R::one_elem();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero_elem())
            .ok_or(SolveError::Singular)?;
        m.swap(pivot, k);
        for i in 0..n {
            if i == k {
                continue;
            }
            if cancelled(cancel) {
                return Err(SolveError::Cancelled);
            }
            for j in k + 1..width {
                let num = m[k][k]
                    .mul_ref(&m[i][j])
                    .sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = num.exact_div(&prev).ok_or(SolveError::Inexact)?;
            }
            m[i][k] = R::zero_elem();
            if i < k {
                m[i][i] = m[k][k].clone();
            }
        }
        prev = m[k][k].clone();
    }
    let numerators = (0..rhs.len())
        .map(|c| (0..n).map(|i| m[i][n + c].clone()).collect())
        .collect();
    Ok(FractionFreeSolution {
        denominator: prev,
        numerators,
    })
}

/// Determinant by fraction-free elimination.
pub fn bareiss_determinant<R: Ring>(a: &[Vec<R>]) -> Result<R, SolveError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(SolveError::DimensionMismatch);
    }
    if n == 0 {
        return Ok(R::one_elem());
    }
    let mut m = a.to_vec();
    match bareiss_forward(&mut m, n, None) {
        Ok(swaps) => {
            let d = m[n - 1][n - 1].clone();
            Ok(if swaps % 2 == 1 { d.neg_ref() } else { d })
        }
        Err(SolveError::Singular) => Ok(R::zero_elem()),
        Err(e) => Err(e),
    }
}

/// Gaussian elimination over a field, one solution vector per column of
/// `rhs`.
pub fn gauss_solve<F: Field>(a: &[Vec<F>], rhs: &[Vec<F>]) -> Result<Vec<Vec<F>>, SolveError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) || rhs.iter().any(|col| col.len() != n) {
        return Err(SolveError::DimensionMismatch);
    }
    let mut m: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(rhs.iter().map(|col| col[i].clone()));
            row
        })
        .collect();
    let width = n + rhs.len();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero_elem())
            .ok_or(SolveError::Singular)?;
        m.swap(pivot, k);
        let inv = m[k][k].inv().ok_or(SolveError::Singular)?;
        for j in k..width {
            m[k][j] = m[k][j].mul_ref(&inv);
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero_elem() {
                continue;
            }
            let factor = m[i][k].clone();
            for j in k..width {
                m[i][j] = m[i][j].sub_ref(&factor.mul_ref(&m[k][j]));
            }
        }
    }
    Ok((0..rhs.len())
        .map(|c| (0..n).map(|i| m[i][n + c].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn leibniz(a: &[Vec<i64>]) -> BigInt {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = BigInt::from(0);
        permute(&mut perm, 0, a, &mut total);
        total
    }

    fn permute(perm: &mut Vec<usize>, k: usize, a: &[Vec<i64>], total: &mut BigInt) {
        if k == perm.len() {
            let mut sign = 1i64;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        sign = -sign;
                    }
                }
            }
            let mut prod = BigInt::from(sign);
            for (i, &j) in perm.iter().enumerate() {
                prod *= a[i][j];
            }
            *total += prod;
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(perm, k + 1, a, total);
            perm.swap(k, i);
        }
    }

    fn big(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        a.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn determinant_matches_leibniz(n in 1usize..6, seed in proptest::collection::vec(-4i64..5, 25)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 5 + j]).collect()).collect();
            prop_assert_eq!(bareiss_determinant(&big(&a)).unwrap(), leibniz(&a));
        }

        #[test]
        fn solutions_satisfy_system(n in 1usize..6, seed in proptest::collection::vec(-4i64..5, 30)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 5 + j]).collect()).collect();
            let b: Vec<BigInt> = (0..n).map(|i| BigInt::from(seed[25 + i])).collect();
            let ab = big(&a);
            match bareiss_solve(&ab, std::slice::from_ref(&b), None) {
                Ok(sol) => {
                    prop_assert_eq!(sol.denominator.clone() * sol.denominator.clone(), leibniz(&a) * leibniz(&a));
                    for i in 0..n {
                        let mut lhs = BigInt::from(0);
                        for j in 0..n {
                            lhs += &ab[i][j] * &sol.numerators[0][j];
                        }
                        prop_assert_eq!(lhs, &sol.denominator * &b[i]);
                    }
                    let q: Vec<Vec<BigRational>> = ab.iter().map(|r| r.iter().map(|v| BigRational::from(v.clone())).collect()).collect();
                    let qb: Vec<BigRational> = b.iter().map(|v| BigRational::from(v.clone())).collect();
                    let field = gauss_solve(&q, &[qb]).unwrap();
                    for j in 0..n {
                        prop_assert_eq!(
                            field[0][j].clone(),
                            BigRational::new(sol.numerators[0][j].clone(), sol.denominator.clone())
                        );
                    }
                }
                Err(SolveError::Singular) => prop_assert_eq!(leibniz(&a), BigInt::from(0)),
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn cancellation() {
        let token = AtomicBool::new(true);
        let a = big(&[vec![2, 1], vec![1, 3]]);
        let b = vec![BigInt::from(1), BigInt::from(2)];
        assert_eq!(
            bareiss_solve(&a, &[b], Some(&token)).unwrap_err(),
            SolveError::Cancelled
        );
    }
}
