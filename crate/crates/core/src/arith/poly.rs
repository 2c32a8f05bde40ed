use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::RationalExt;
use rug::{Float, Rational};

use super::BigScalar;
use crate::{Error, Result};

/// Univariate polynomial with exact rational coefficients and a variable tag.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient list and no degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    var: String,
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(var: impl Into<String>, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { var: var.into(), coeffs }
    }

    pub fn zero(var: impl Into<String>) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn constant(var: impl Into<String>, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// `c * var^k`.
    pub fn monomial(var: impl Into<String>, c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::new(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `var^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_scalar(&self, x: &BigScalar) -> BigScalar {
        let prec = x.precision();
        let mut acc = BigScalar::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &BigScalar::from_rational(c, prec);
        }
        acc
    }

    pub fn eval_float(&self, x: &Float) -> Float {
        let mut acc = Float::new(x.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.var.clone(), self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.var.clone(), Rational::from(1));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.var.clone(),
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| Rational::from(c * k as u32)).collect(),
        )
    }

    /// Exact interpolating polynomial through distinct nodes (Newton form).
    pub fn interpolate(var: impl Into<String>, points: &[(Rational, Rational)]) -> Result<Self> {
        let var = var.into();
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::InvalidArgument("interpolation nodes must be distinct".into()));
                }
            }
        }
        let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = Rational::from(&dd[i] - &dd[i - 1]);
                let den = Rational::from(&points[i].0 - &points[i - level].0);
                dd[i] = num / den;
            }
        }
        let mut acc = Self::zero(var.clone());
        for i in (0..n).rev() {
            let factor = Self::new(var.clone(), vec![Rational::from(-&points[i].0), Rational::from(1)]);
            acc = &(&acc * &factor) + &Self::constant(var.clone(), dd[i].clone());
        }
        Ok(acc)
    }
}

fn combine(a: &QPolynomial, b: &QPolynomial, f: impl Fn(Rational, Rational) -> Rational) -> QPolynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    QPolynomial::new(a.var.clone(), (0..n).map(|k| f(a.coeff(k), b.coeff(k))).collect())
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        combine(self, rhs, |x, y| x - y)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero(self.var.clone());
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        QPolynomial::new(self.var.clone(), out)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for QPolynomial {
    /// Ascending powers, e.g. `-71/12 + 12*q - 4*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = Rational::from(c.abs_ref());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str(&self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = QPolynomial::new("q", vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(QPolynomial::new("q", vec![rat(0, 1)]).is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = QPolynomial::new("q", vec![rat(-71, 12), rat(12, 1), rat(-4, 1)]);
        let pts: Vec<_> = (0..5).map(|i| (rat(i, 1), p.eval(&rat(i, 1)))).collect();
        assert_eq!(QPolynomial::interpolate("q", &pts).unwrap(), p);
    }

    #[test]
    fn display_is_readable() {
        let p = QPolynomial::new("q", vec![rat(-71, 12), rat(12, 1), rat(-4, 1)]);
        assert_eq!(p.to_string(), "-71/12 + 12*q - 4*q^2");
    }

    #[test]
    fn products_and_powers() {
        let x1 = QPolynomial::new("f", vec![rat(-1, 1), rat(1, 1)]);
        let sq = x1.pow(2);
        assert_eq!(sq.coeffs(), &[rat(1, 1), rat(-2, 1), rat(1, 1)]);
        assert_eq!(sq.derivative().coeffs(), &[rat(-2, 1), rat(2, 1)]);
    }
}
