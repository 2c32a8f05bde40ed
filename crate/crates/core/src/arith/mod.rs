//! Exact and high-precision arithmetic primitives.

mod bernoulli;
mod dirichlet;
mod poly;
mod richardson;
mod scalar;
mod series;

pub use bernoulli::{bernoulli, f_cs, factorial};
pub use dirichlet::DirichletVector;
pub use poly::QPolynomial;
pub use richardson::richardson_weights;
pub use scalar::{BigScalar, Precision};
pub use series::{arcsin_power_series, sine_power_series, TruncatedSeries};

pub use rug::{Integer, Rational};

use rug::ops::Pow;

/// Sign queries missing from `rug::Rational`.
pub trait RationalExt {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
}

impl RationalExt for Rational {
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn is_negative(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Less
    }
}

/// `num/den` as a canonical rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Generalised binomial coefficient `C(n, k)` for any integer `n`.
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

/// Binomial coefficient with a rational upper argument.
pub fn binomial_rational(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..k {
        acc *= Rational::from(x - i);
        acc /= i + 1;
    }
    acc
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_rational(base: &Rational, exp: i64) -> Rational {
    base.clone().pow(exp as i32)
}

/// `d^e` as an exact rational; negative exponents give reciprocals.
pub fn int_pow(d: u64, e: i64) -> Rational {
    let p = Integer::from(Integer::u_pow_u(d as u32, e.unsigned_abs() as u32));
    if e >= 0 {
        Rational::from(p)
    } else {
        Rational::from((Integer::from(1), p))
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Render a rational as `num/den`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `num/den` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d == 0 {
                None
            } else {
                Some(Rational::from((n, d)))
            }
        }
        None => s.parse::<Integer>().ok().map(Rational::from),
    }
}
