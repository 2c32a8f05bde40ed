use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 32;

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(200);

    pub fn digits(digits: u32) -> Self {
        Precision(digits.max(10))
    }

    pub fn decimal_digits(self) -> u32 {
        self.0
    }

    /// Binary precision, including guard bits.
    pub fn bits(self) -> u32 {
        (f64::from(self.0) * LOG2_10).ceil() as u32 + GUARD_BITS
    }

    pub fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }

    fn from_bits(bits: u32) -> Self {
        Precision((f64::from(bits.saturating_sub(GUARD_BITS)) / LOG2_10).floor() as u32)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Real or complex number backed by two MPFR floats of equal precision.
///
/// Binary operations run at the larger precision of their operands.
#[derive(Clone, Debug, PartialEq)]
pub struct BigScalar {
    re: Float,
    im: Float,
}

impl BigScalar {
    pub fn zero(prec: Precision) -> Self {
        Self::from_float(Float::new(prec.bits()))
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Self::from_float(Float::with_val(prec.bits(), v))
    }

    pub fn from_integer(v: &Integer, prec: Precision) -> Self {
        Self::from_float(Float::with_val(prec.bits(), v))
    }

    pub fn from_rational(v: &Rational, prec: Precision) -> Self {
        Self::from_float(Float::with_val(prec.bits(), v))
    }

    pub fn from_float(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigScalar { re, im }
    }

    pub fn complex(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec());
        BigScalar {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn from_parts(re: &BigScalar, im: &BigScalar) -> Self {
        Self::complex(re.re.clone(), im.re.clone())
    }

    /// Parse a decimal (`2.5`, `-1e-3`) or exact rational (`7/3`) literal.
    pub fn parse(s: &str, prec: Precision) -> Option<Self> {
        if let Some(r) = super::parse_rational(s) {
            return Some(Self::from_rational(&r, prec));
        }
        let parsed = Float::parse(s.trim()).ok()?;
        Some(Self::from_float(Float::with_val(prec.bits(), parsed)))
    }

    pub fn pi(prec: Precision) -> Self {
        Self::from_float(Float::with_val(prec.bits(), Constant::Pi))
    }

    /// The imaginary unit.
    pub fn i(prec: Precision) -> Self {
        BigScalar {
            re: Float::new(prec.bits()),
            im: Float::with_val(prec.bits(), 1),
        }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn real_part(&self) -> Self {
        Self::from_float(self.re.clone())
    }

    pub fn imag_part(&self) -> Self {
        Self::from_float(self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.prec_bits())
    }

    fn prec_bits(&self) -> u32 {
        self.re.prec()
    }

    /// Re-round to another working precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        BigScalar {
            re: Float::with_val(prec.bits(), &self.re),
            im: Float::with_val(prec.bits(), &self.im),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.re.to_f64()
    }

    pub fn conj(&self) -> Self {
        BigScalar {
            re: self.re.clone(),
            im: Float::with_val(self.prec_bits(), -&self.im),
        }
    }

    /// Modulus, as a real scalar.
    pub fn abs(&self) -> Self {
        if self.is_real() {
            return Self::from_float(Float::with_val(self.prec_bits(), self.re.abs_ref()));
        }
        Self::from_float(Float::with_val(self.prec_bits(), self.re.hypot_ref(&self.im)))
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Self {
        Self::from_float(Float::with_val(self.prec_bits(), self.im.atan2_ref(&self.re)))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec_bits();
        let m = Float::with_val(p, self.re.exp_ref());
        if self.is_real() {
            return Self::from_float(m);
        }
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        BigScalar { re: c * &m, im: s * m }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec_bits();
        if self.is_real() && self.re.is_sign_positive() {
            return Self::from_float(Float::with_val(p, self.re.ln_ref()));
        }
        let modulus = self.abs().re;
        BigScalar {
            re: modulus.ln(),
            im: self.arg().re,
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec_bits();
        if self.is_real() && !self.re.is_sign_negative() {
            return Self::from_float(Float::with_val(p, self.re.sqrt_ref()));
        }
        if self.is_real() {
            let r = Float::with_val(p, -&self.re).sqrt();
            return BigScalar { re: Float::new(p), im: r };
        }
        let half = (self.ln() * BigScalar::from_rational(&Rational::from((1, 2)), self.precision())).exp();
        half.with_bits(p)
    }

    fn with_bits(self, p: u32) -> Self {
        BigScalar {
            re: Float::with_val(p, self.re),
            im: Float::with_val(p, self.im),
        }
    }

    /// Integer power by repeated squaring (exact up to rounding).
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec_bits();
        if self.is_real() {
            return Self::from_float(Float::with_val(p, (&self.re).pow(n)));
        }
        let mut base = self.clone();
        let mut acc = BigScalar::from_float(Float::with_val(p, 1));
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Principal power `self^w = exp(w ln self)`.
    pub fn pow(&self, w: &BigScalar) -> Self {
        if self.is_real() && w.is_real() && self.re.is_sign_positive() && !self.re.is_zero() {
            let p = self.prec_bits().max(w.prec_bits());
            return Self::from_float(Float::with_val(p, (&self.re).pow(&w.re)));
        }
        (w * &self.ln()).exp()
    }

    pub fn recip(&self) -> Self {
        let p = self.prec_bits();
        if self.is_real() {
            return Self::from_float(Float::with_val(p, 1) / &self.re);
        }
        let norm = Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref());
        BigScalar {
            re: Float::with_val(p, &self.re / &norm),
            im: Float::with_val(p, -&self.im) / norm,
        }
    }

    /// Gamma function of the real part.
    pub fn gamma(&self) -> Self {
        debug_assert!(self.is_real(), "gamma is only provided for real arguments");
        Self::from_float(Float::with_val(self.prec_bits(), self.re.gamma_ref()))
    }

    pub fn cos(&self) -> Self {
        Self::from_float(Float::with_val(self.prec_bits(), self.re.cos_ref()))
    }

    pub fn atan(&self) -> Self {
        Self::from_float(Float::with_val(self.prec_bits(), self.re.atan_ref()))
    }

    pub fn log10(&self) -> Self {
        let v = self.abs();
        Self::from_float(Float::with_val(self.prec_bits(), v.re.log10_ref()))
    }

    pub fn floor(&self) -> Self {
        Self::from_float(Float::with_val(self.prec_bits(), self.re.floor_ref()))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self * &BigScalar::from_float(Float::with_val(self.prec_bits(), r))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigScalar {
            re: Float::with_val(self.prec_bits(), &self.re * k),
            im: Float::with_val(self.prec_bits(), &self.im * k),
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        BigScalar {
            re: Float::with_val(self.prec_bits(), &self.re / k),
            im: Float::with_val(self.prec_bits(), &self.im / k),
        }
    }

    /// Order on real parts.
    pub fn cmp_re(&self, other: &Self) -> Ordering {
        self.re.partial_cmp(&other.re).unwrap_or(Ordering::Equal)
    }

    /// Order on moduli.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().re.partial_cmp(&other.abs().re).unwrap_or(Ordering::Equal)
    }

    /// `|self - other| / |other|` (absolute difference when `other` is zero).
    pub fn relative_error(&self, other: &Self) -> Self {
        let diff = (self - other).abs();
        if other.is_zero() {
            diff
        } else {
            &diff / &other.abs()
        }
    }

    /// Number of decimal digits on which two values agree, capped at the
    /// working precision.
    pub fn agreement_digits(&self, other: &Self) -> u32 {
        let cap = self.precision().decimal_digits().min(other.precision().decimal_digits());
        let err = self.relative_error(other);
        if err.is_zero() {
            return cap;
        }
        let d = -err.log10().to_f64();
        if d.is_nan() || d <= 0.0 {
            0
        } else {
            (d.floor() as u32).min(cap)
        }
    }

    /// Decimal rendering with a fixed number of significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let digits = digits.max(1) as usize;
        let re = format_float(&self.re, digits);
        if self.is_real() {
            re
        } else {
            let im = format_float(&self.im, digits);
            if im.starts_with('-') {
                format!("{re}{im}i")
            } else {
                format!("{re}+{im}i")
            }
        }
    }
}

fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

impl fmt::Display for BigScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        f.write_str(&self.to_decimal(digits))
    }
}

impl PartialEq<i64> for BigScalar {
    fn eq(&self, other: &i64) -> bool {
        self.is_real() && self.re == *other
    }
}

fn add_ref(a: &BigScalar, b: &BigScalar) -> BigScalar {
    let p = a.prec_bits().max(b.prec_bits());
    BigScalar {
        re: Float::with_val(p, &a.re + &b.re),
        im: Float::with_val(p, &a.im + &b.im),
    }
}

fn sub_ref(a: &BigScalar, b: &BigScalar) -> BigScalar {
    let p = a.prec_bits().max(b.prec_bits());
    BigScalar {
        re: Float::with_val(p, &a.re - &b.re),
        im: Float::with_val(p, &a.im - &b.im),
    }
}

fn mul_ref(a: &BigScalar, b: &BigScalar) -> BigScalar {
    let p = a.prec_bits().max(b.prec_bits());
    if a.is_real() && b.is_real() {
        return BigScalar::from_float(Float::with_val(p, &a.re * &b.re));
    }
    let rr = Float::with_val(p, &a.re * &b.re);
    let ii = Float::with_val(p, &a.im * &b.im);
    let ri = Float::with_val(p, &a.re * &b.im);
    let ir = Float::with_val(p, &a.im * &b.re);
    BigScalar { re: rr - ii, im: ri + ir }
}

fn div_ref(a: &BigScalar, b: &BigScalar) -> BigScalar {
    let p = a.prec_bits().max(b.prec_bits());
    if b.is_real() {
        return BigScalar {
            re: Float::with_val(p, &a.re / &b.re),
            im: Float::with_val(p, &a.im / &b.re),
        };
    }
    mul_ref(a, &b.recip())
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident, $atr:ident, $amethod:ident) => {
        impl $tr<&BigScalar> for &BigScalar {
            type Output = BigScalar;
            fn $method(self, rhs: &BigScalar) -> BigScalar {
                $imp(self, rhs)
            }
        }
        impl $tr<BigScalar> for BigScalar {
            type Output = BigScalar;
            fn $method(self, rhs: BigScalar) -> BigScalar {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&BigScalar> for BigScalar {
            type Output = BigScalar;
            fn $method(self, rhs: &BigScalar) -> BigScalar {
                $imp(&self, rhs)
            }
        }
        impl $tr<BigScalar> for &BigScalar {
            type Output = BigScalar;
            fn $method(self, rhs: BigScalar) -> BigScalar {
                $imp(self, &rhs)
            }
        }
        impl $atr<&BigScalar> for BigScalar {
            fn $amethod(&mut self, rhs: &BigScalar) {
                *self = $imp(self, rhs);
            }
        }
        impl $atr<BigScalar> for BigScalar {
            fn $amethod(&mut self, rhs: BigScalar) {
                *self = $imp(self, &rhs);
            }
        }
    };
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for BigScalar {
    type Output = BigScalar;
    fn neg(self) -> BigScalar {
        BigScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &BigScalar {
    type Output = BigScalar;
    fn neg(self) -> BigScalar {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(60)
    }

    #[test]
    fn complex_exponential_of_i_pi_is_minus_one() {
        let z = &BigScalar::i(p()) * &BigScalar::pi(p());
        let e = z.exp();
        assert!(e.relative_error(&BigScalar::from_i64(-1, p())).to_f64() < 1e-55);
    }

    #[test]
    fn log_inverts_exp_off_the_real_axis() {
        let z = BigScalar::complex(Float::with_val(p().bits(), 0.75), Float::with_val(p().bits(), -2.5));
        let back = z.exp().ln();
        assert!(back.relative_error(&z).to_f64() < 1e-55);
    }

    #[test]
    fn powers_and_roots_agree() {
        let z = BigScalar::complex(Float::with_val(p().bits(), 1.5), Float::with_val(p().bits(), 2));
        let cube = z.powi(3);
        let via_pow = z.pow(&BigScalar::from_i64(3, p()));
        assert!(cube.relative_error(&via_pow).to_f64() < 1e-50);
        let root = z.sqrt();
        assert!((&root * &root).relative_error(&z).to_f64() < 1e-55);
        assert!(z.powi(-2).relative_error(&(&z * &z).recip()).to_f64() < 1e-55);
        let neg = BigScalar::from_i64(-4, p()).sqrt();
        assert!(neg.relative_error(&BigScalar::i(p()).mul_i64(2)).to_f64() < 1e-55);
    }

    #[test]
    fn gamma_at_half_integers() {
        let half = BigScalar::from_rational(&Rational::from((1, 2)), p());
        let sqrt_pi = BigScalar::pi(p()).sqrt();
        assert!(half.gamma().relative_error(&sqrt_pi).to_f64() < 1e-55);
    }

    #[test]
    fn precision_doubling_preserves_digits() {
        let x = BigScalar::from_rational(&Rational::from((1, 3)), p());
        let y = x.with_precision(p().doubled());
        assert!(x.agreement_digits(&y) >= 59);
        assert_eq!(x.precision(), p());
    }

    #[test]
    fn parsing_accepts_decimal_and_rational_literals() {
        let a = BigScalar::parse("2.5", p()).unwrap();
        let b = BigScalar::parse("5/2", p()).unwrap();
        assert_eq!(a, b);
        assert!(BigScalar::parse("abc", p()).is_none());
    }
}
