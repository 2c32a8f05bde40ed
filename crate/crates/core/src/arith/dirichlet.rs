use std::ops::{Add, Sub};

use crate::arith::RationalExt;
use rug::Rational;

use super::{divisors, int_pow};
use crate::{Error, Result};

/// Truncated Dirichlet series `sum_{d=1}^{D} a_d d^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletVector {
    coeffs: Vec<Rational>,
}

impl DirichletVector {
    /// Coefficients `a_1..a_D`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        DirichletVector { coeffs }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(u32) -> Rational) -> Self {
        Self::new((1..=len as u32).map(&mut f).collect())
    }

    pub fn zero(len: usize) -> Self {
        Self::from_fn(len, |_| Rational::new())
    }

    /// Multiplicative unit `delta_{d,1}`.
    pub fn unit(len: usize) -> Self {
        Self::from_fn(len, |d| Rational::from(u32::from(d == 1)))
    }

    /// Coefficients `d^k`, i.e. `zeta(s - k)`.
    pub fn zeta_shift(len: usize, k: i64) -> Self {
        Self::from_fn(len, |d| int_pow(u64::from(d), k))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `d >= 1`.
    pub fn get(&self, d: u32) -> &Rational {
        &self.coeffs[d as usize - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument(format!(
                "Dirichlet vectors of different lengths ({} vs {})",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Dirichlet convolution `(a*b)_d = sum_{m|d} a_m b_{d/m}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let n = self.len() as u32;
        Ok(Self::from_fn(self.len(), |d| {
            let mut acc = Rational::new();
            for m in divisors(d) {
                acc += Rational::from(self.get(m) * other.get(d / m));
            }
            debug_assert!(d <= n);
            acc
        }))
    }

    /// Exact inverse of [`mul`](Self::mul): solves `q * other = self`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let b1 = other.get(1).clone();
        if b1.is_zero() {
            return Err(Error::Domain("Dirichlet division by a series with vanishing first coefficient".into()));
        }
        let mut q: Vec<Rational> = Vec::with_capacity(self.len());
        for d in 1..=self.len() as u32 {
            let mut acc = self.get(d).clone();
            for m in divisors(d) {
                if m < d {
                    acc -= Rational::from(&q[m as usize - 1] * other.get(d / m));
                }
            }
            q.push(acc / &b1);
        }
        Ok(Self::new(q))
    }

    /// First index where two vectors differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<u32> {
        (1..=self.len().min(other.len()) as u32).find(|&d| self.get(d) != other.get(d))
    }
}

impl Add for &DirichletVector {
    type Output = DirichletVector;
    fn add(self, rhs: &DirichletVector) -> DirichletVector {
        DirichletVector::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| Rational::from(a + b)).collect())
    }
}

impl Sub for &DirichletVector {
    type Output = DirichletVector;
    fn sub(self, rhs: &DirichletVector) -> DirichletVector {
        DirichletVector::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| Rational::from(a - b)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn unit_is_identity() {
        let b = DirichletVector::from_fn(12, |d| rat(i64::from(d) * 3 - 7, 5));
        assert_eq!(DirichletVector::unit(12).mul(&b).unwrap(), b);
    }

    #[test]
    fn ones_squared_counts_divisors() {
        let ones = DirichletVector::from_fn(12, |_| rat(1, 1));
        let tau = ones.mul(&ones).unwrap();
        assert_eq!(*tau.get(6), 4);
        assert_eq!(*tau.get(12), 6);
        assert_eq!(tau.div(&ones).unwrap(), ones);
    }

    #[test]
    fn zeta_shift_times_unit() {
        let z = DirichletVector::zeta_shift(8, 1);
        assert_eq!(*z.mul(&DirichletVector::unit(8)).unwrap().get(4), 4);
    }

    #[test]
    fn self_division_gives_unit() {
        let a = DirichletVector::from_fn(10, |d| rat(i64::from(d * d) + 1, 2));
        assert_eq!(a.div(&a).unwrap(), DirichletVector::unit(10));
    }

    #[test]
    fn mismatched_lengths_and_zero_leads_are_rejected() {
        let a = DirichletVector::unit(4);
        assert!(a.mul(&DirichletVector::unit(5)).is_err());
        assert!(a.div(&DirichletVector::zero(4)).is_err());
    }
}
