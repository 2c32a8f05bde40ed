use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::RationalExt;
use rug::ops::Pow;
use rug::Rational;

use crate::{Error, Result};

/// Power series `c_0 + c_1 x + ... + c_K x^K + O(x^{K+1})` with exact
/// rational coefficients.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series from leading coefficients, zero-padded or cut to `order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::new());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::from(1), order)
    }

    /// The series `x`.
    pub fn variable(order: usize) -> Self {
        Self::from_fn(order, |k| Rational::from(u32::from(k == 1)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    /// Substitute `x -> lambda x`.
    pub fn rescale_variable(&self, lambda: &Rational) -> Self {
        let mut pow = Rational::from(1);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(Rational::from(c * &pow));
            pow *= lambda;
        }
        Self { coeffs: out }
    }

    /// Multiply by `x^k`, dropping what falls past the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        Self::from_fn(n - 1, |i| if i >= k { self.coeffs[i - k].clone() } else { Rational::new() })
    }

    /// Divide by `x^k`; the lowest `k` coefficients must vanish. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("series is not divisible by x^{k}")));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |k| Rational::from(&self.coeffs[k + 1] * (k as u32 + 1)))
    }

    /// Formal antiderivative with zero constant; the order rises by one.
    pub fn integral(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                Rational::new()
            } else {
                Rational::from(&self.coeffs[k - 1] / k as u32)
            }
        })
    }

    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Domain("reciprocal of a series with zero constant term".into()));
        }
        let inv0 = Rational::from(c0.recip_ref());
        let mut out: Vec<Rational> = vec![inv0.clone()];
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::new();
            for k in 1..=n {
                acc += Rational::from(&self.coeffs[k] * &out[n - k]);
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp of a series with nonzero constant term".into()));
        }
        // b' = a' b  =>  n b_n = sum_k k a_k b_{n-k}
        let mut out = vec![Rational::from(1)];
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::new();
            for k in 1..=n {
                acc += Rational::from(&self.coeffs[k] * &out[n - k]) * k as u32;
            }
            out.push(acc / n as u32);
        }
        Ok(Self { coeffs: out })
    }

    /// `log` of a series with constant term 1.
    pub fn ln(&self) -> Result<Self> {
        if self.coeffs[0] != 1 {
            return Err(Error::Domain("log of a series whose constant term is not 1".into()));
        }
        let quotient = &self.derivative() * &self.truncate(self.order().saturating_sub(1)).recip()?;
        Ok(quotient.integral())
    }

    /// `self^alpha` for rational `alpha`; requires constant term 1 unless
    /// `alpha` is an integer.
    pub fn pow(&self, alpha: &Rational) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            if alpha.denom() == &1 && *alpha >= 0 {
                let mut acc = Self::one(self.order());
                for _ in 0..alpha.numer().to_u32().unwrap_or(0) {
                    acc = &acc * self;
                }
                return Ok(acc);
            }
            return Err(Error::Domain("power of a series with zero constant term".into()));
        }
        if c0 != 1 && alpha.denom() != &1 {
            return Err(Error::Domain("fractional power needs constant term 1".into()));
        }
        let unit = self.scale(&Rational::from(c0.recip_ref()));
        // Miller recurrence for u^alpha with u_0 = 1:
        // n b_n = sum_{k=1}^n ((alpha+1) k - n) u_k b_{n-k}
        let mut out = vec![Rational::from(1)];
        for n in 1..unit.coeffs.len() {
            let mut acc = Rational::new();
            for k in 1..=n {
                let w = Rational::from(alpha + 1u32) * k as u32 - n as u32;
                acc += w * &unit.coeffs[k] * &out[n - k];
            }
            out.push(acc / n as u32);
        }
        let lead = if c0 == 1 {
            Rational::from(1)
        } else {
            let e = alpha.numer().to_i32().ok_or_else(|| Error::Domain("exponent too large".into()))?;
            rug::ops::Pow::pow(c0, e)
        };
        Ok(Self { coeffs: out }.scale(&lead))
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        self.pow(&Rational::from(n))
    }
}

fn zip_with(a: &TruncatedSeries, b: &TruncatedSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries::from_fn(order, |k| f(&a.coeffs[k], &b.coeffs[k]))
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, rhs, |x, y| Rational::from(x + y))
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, rhs, |x, y| Rational::from(x - y))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::new(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += Rational::from(a * b);
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

/// Taylor coefficients of `(2 sin(x/2))^{2h-2}` through `x^{2 order}`,
/// indexed by the even power: entry `k` is the coefficient of `x^{2k}`.
/// Entries below `x^{2h-2}` vanish; for `h = 0` the leading power is `x^{-2}`
/// and entry `k` holds the coefficient of `x^{2k-2}`.
pub fn sine_power_series(h: u32, order: usize) -> Result<Vec<Rational>> {
    // u(y) = 2 sin(x/2)/x with y = x^2: u = sum_n (-1)^n y^n / (4^n (2n+1)!)
    let u = TruncatedSeries::from_fn(order, |n| {
        let den = crate::arith::factorial(2 * n as u32 + 1) * rug::Integer::from(4u32).pow(n as u32);
        let v = Rational::from((rug::Integer::from(1), den));
        if n % 2 == 1 {
            -v
        } else {
            v
        }
    });
    let powered = u.powi(2 * i64::from(h) - 2)?;
    Ok(powered.coeffs)
}

/// Coefficients of `(arcsin(sqrt(r)/2) / (sqrt(r)/2))^{2g-2}` in powers of `r`.
pub fn arcsin_power_series(g: u32, order: usize) -> Result<Vec<Rational>> {
    // arcsin(y)/y = sum_n C(2n,n) y^{2n} / (4^n (2n+1)),  y^2 = r/4
    let base = TruncatedSeries::from_fn(order, |n| {
        let num = rug::Integer::from(rug::Integer::binomial_u(2 * n as u32, n as u32));
        let den = rug::Integer::from(16u32).pow(n as u32) * (2 * n as u32 + 1);
        Rational::from((num, den))
    });
    Ok(base.powi(2 * i64::from(g) - 2)?.coeffs)
}
