//! Bundled coefficient tables and the small expression language they use.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rug::{Integer, Rational};
use sha2::{Digest, Sha256};

use crate::arith::{BigScalar, Precision, QPolynomial, RationalExt};
use crate::{Error, Result};

struct Bundled {
    name: &'static str,
    text: &'static str,
    sha256: &'static str,
}

const XP_G2: Bundled = Bundled {
    name: "xp_coeffs_g2.tsv",
    text: include_str!("../../data/xp_coeffs_g2.tsv"),
    sha256: "b80f802d8d79ec6bd46fedfb6ae61a6636b6006083780d85c465ebfbf7162d4d",
};
const XP_G3: Bundled = Bundled {
    name: "xp_coeffs_g3.tsv",
    text: include_str!("../../data/xp_coeffs_g3.tsv"),
    sha256: "649055577478767dc38646b5c2cb32e1ea12b8a6ef684d735b4054ebde2fefca",
};
const XP_G4: Bundled = Bundled {
    name: "xp_coeffs_g4.tsv",
    text: include_str!("../../data/xp_coeffs_g4.tsv"),
    sha256: "8d9482b9452b0283b7fb848c55dd86e959470d19c9527f1b4f44371623371a5c",
};
const XP_CHAT: Bundled = Bundled {
    name: "xp_chat.tsv",
    text: include_str!("../../data/xp_chat.tsv"),
    sha256: "19050589fc67b5960fb0a9ee257b506d4ce53b7896d32058a1fc94384392d9bf",
};
const HURWITZ_CHAT: Bundled = Bundled {
    name: "hurwitz_chat.tsv",
    text: include_str!("../../data/hurwitz_chat.tsv"),
    sha256: "a870eaa5496eda04082209f43f123ecdd64bb8cd4d2ecbf990f2e812ce6d266e",
};

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Bundled {
    fn verified_rows(&self) -> Result<Vec<(usize, Vec<&'static str>)>> {
        let actual = sha256_hex(self.text);
        if actual != self.sha256 {
            return Err(Error::Inconsistent(format!(
                "bundled data {} has checksum {actual}, expected {}",
                self.name, self.sha256
            )));
        }
        Ok(self
            .text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|(i, l)| (i + 1, l.split('\t').collect()))
            .collect())
    }

    fn parse_error(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.name.into(),
            line,
            message: message.into(),
        }
    }
}

/// A polynomial in `f` times `sqrt(2)^e` with `e` in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicValue {
    pub poly: QPolynomial,
    pub sqrt2: bool,
}

impl SymbolicValue {
    fn from_parts(poly: QPolynomial, sqrt2_exp: i64) -> Self {
        // sqrt2^e = 2^{floor(e/2)} sqrt2^{e mod 2}
        let half = sqrt2_exp.div_euclid(2);
        let scale = crate::arith::pow_rational(&Rational::from(2), half);
        SymbolicValue {
            poly: poly.scale(&scale),
            sqrt2: sqrt2_exp.rem_euclid(2) == 1,
        }
    }

    pub fn eval(&self, f: &Rational, prec: Precision) -> BigScalar {
        let v = BigScalar::from_rational(&self.poly.eval(f), prec);
        if self.sqrt2 {
            &v * &BigScalar::from_i64(2, prec).sqrt()
        } else {
            v
        }
    }
}

/// Parse an arithmetic expression in `f` and `sqrt2`
/// (`+ - * / ^`, parentheses, integer literals; division only by constants).
pub fn parse_expression(src: &str) -> std::result::Result<SymbolicValue, String> {
    let mut p = ExprParser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let (poly, e) = p.sum()?;
    if p.pos != p.chars.len() {
        return Err(format!("unexpected '{}' at offset {}", p.chars[p.pos], p.pos));
    }
    Ok(SymbolicValue::from_parts(poly, e))
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
}

type Term = (QPolynomial, i64);

fn var() -> &'static str {
    "f"
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> std::result::Result<Term, String> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = add_terms(acc, rhs, op == '-')?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> std::result::Result<Term, String> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                (&acc.0 * &rhs.0, acc.1 + rhs.1)
            } else {
                if rhs.0.degree() != Some(0) {
                    return Err("division by a non-constant polynomial".into());
                }
                let inv = Rational::from(rhs.0.coeff(0).recip_ref());
                (acc.0.scale(&inv), acc.1 - rhs.1)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> std::result::Result<Term, String> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let (p, e) = self.unary()?;
                Ok((-&p, e))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> std::result::Result<Term, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let n: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "exponent must be a nonnegative integer".to_string())?;
            return Ok((base.0.pow(n), base.1 * i64::from(n)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Term, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: Integer = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|e| format!("{e}"))?;
                Ok((QPolynomial::constant(var(), Rational::from(n)), 0))
            }
            Some('f') => {
                self.pos += 1;
                Ok((QPolynomial::monomial(var(), Rational::from(1), 1), 0))
            }
            Some('s') if self.chars[self.pos..].starts_with(&['s', 'q', 'r', 't', '2']) => {
                self.pos += 5;
                Ok((QPolynomial::constant(var(), Rational::from(1)), 1))
            }
            Some(c) => Err(format!("unexpected '{c}' at offset {}", self.pos)),
            None => Err("unexpected end of expression".into()),
        }
    }
}

fn add_terms(a: Term, b: Term, subtract: bool) -> std::result::Result<Term, String> {
    let b_poly = if subtract { -&b.0 } else { b.0 };
    if a.0.is_zero() {
        return Ok((b_poly, b.1));
    }
    if b_poly.is_zero() {
        return Ok(a);
    }
    if a.1 != b.1 {
        // Normalise even sqrt2 powers into rational factors before comparing.
        let na = SymbolicValue::from_parts(a.0.clone(), a.1);
        let nb = SymbolicValue::from_parts(b_poly.clone(), b.1);
        if na.sqrt2 != nb.sqrt2 {
            return Err("cannot add terms with and without a sqrt2 factor".into());
        }
        return Ok((&na.poly + &nb.poly, i64::from(na.sqrt2)));
    }
    Ok((&a.0 + &b_poly, a.1))
}

/// Rational functions `a_{g,i}(f)`, `i = 1..=5(g-1)`, of the local-curve
/// free energies.
#[derive(Clone, Debug)]
pub struct XpCoefficients {
    genus: u32,
    // (numerator, denominator) for i = 1..=5(g-1)
    terms: Vec<(QPolynomial, QPolynomial)>,
}

impl XpCoefficients {
    /// Bundled table for `g` in `2..=4`.
    pub fn bundled(g: u32) -> Result<&'static XpCoefficients> {
        static CACHE: [OnceLock<XpCoefficients>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let (slot, src) = match g {
            2 => (&CACHE[0], &XP_G2),
            3 => (&CACHE[1], &XP_G3),
            4 => (&CACHE[2], &XP_G4),
            _ => {
                return Err(Error::OutOfRange(format!(
                    "local-curve coefficients are bundled for genus 2..=4, requested {g}"
                )))
            }
        };
        if let Some(v) = slot.get() {
            return Ok(v);
        }
        let parsed = Self::parse(g, src)?;
        Ok(slot.get_or_init(|| parsed))
    }

    fn parse(g: u32, src: &Bundled) -> Result<Self> {
        let top = 5 * (g - 1) as usize;
        let mut terms = vec![None; top];
        for (line, cols) in src.verified_rows()? {
            let [i, num, den] = cols[..] else {
                return Err(src.parse_error(line, "expected three tab-separated columns"));
            };
            let i: usize = i.parse().map_err(|_| src.parse_error(line, "bad index"))?;
            if i == 0 || i > top {
                return Err(src.parse_error(line, format!("index {i} outside 1..={top}")));
            }
            let parse = |s: &str| -> Result<QPolynomial> {
                let v = parse_expression(s).map_err(|m| src.parse_error(line, m))?;
                if v.sqrt2 {
                    return Err(src.parse_error(line, "unexpected sqrt2 in a free-energy coefficient"));
                }
                Ok(v.poly)
            };
            terms[i - 1] = Some((parse(num)?, parse(den)?));
        }
        let terms = terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| src.parse_error(0, format!("missing row i={}", i + 1))))
            .collect::<Result<_>>()?;
        Ok(XpCoefficients { genus: g, terms })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of coefficients, `5(g-1)`.
    pub fn len(&self) -> u32 {
        self.terms.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn numerator(&self, i: u32) -> &QPolynomial {
        &self.terms[i as usize - 1].0
    }

    pub fn denominator(&self, i: u32) -> &QPolynomial {
        &self.terms[i as usize - 1].1
    }

    /// `a_{g,i}(f)`; zero outside `1..=5(g-1)`.
    pub fn a(&self, i: u32, f: &Rational) -> Rational {
        if i == 0 || i > self.len() {
            return Rational::new();
        }
        let (n, d) = &self.terms[i as usize - 1];
        n.eval(f) / d.eval(f)
    }

    /// `a^H_{g,n}`: the coefficient of `f^{n-4(g-1)}` in the large-`f`
    /// behaviour of `(-1)^n a_{g,n}(f)`.
    pub fn hurwitz_a(&self, n: u32) -> Result<Rational> {
        if n == 0 || n > self.len() {
            return Ok(Rational::new());
        }
        let (num, den) = &self.terms[n as usize - 1];
        let excess = num.degree().unwrap_or(0) as i64 - den.degree().unwrap_or(0) as i64;
        let target = i64::from(n) - 4 * i64::from(self.genus - 1);
        if num.is_zero() || excess < target {
            return Ok(Rational::new());
        }
        if excess > target {
            return Err(Error::Inconsistent(format!(
                "a_{{{},{n}}} grows too fast for a finite Hurwitz limit",
                self.genus
            )));
        }
        let v = num.leading_coefficient() / den.leading_coefficient();
        Ok(if n % 2 == 1 { -v } else { v })
    }

    /// Constant `C_g` of the reflection property
    /// `abar_i(f) = f^{6(g-1)} abar_{5(g-1)-i}(1/f)` with
    /// `abar_i = C f^{6(g-1)} a_i + C(5(g-1), i)(f^i - f^{i+g-1})`,
    /// fitted from `i = 0` and verified for every `i` at enough points to
    /// make the identity exact.
    pub fn reflection_constant(&self) -> Result<Rational> {
        let g = self.genus;
        let top = self.len();
        let w = 6 * (g - 1);
        let abar = |c: &Rational, i: u32, f: &Rational| -> Rational {
            let fw = crate::arith::pow_rational(f, i64::from(w));
            let binom = Rational::from(crate::arith::binomial(i64::from(top), i64::from(i)));
            let fi = crate::arith::pow_rational(f, i64::from(i));
            let fig = crate::arith::pow_rational(f, i64::from(i + g - 1));
            c.clone() * fw * self.a(i, f) + binom * (fi - fig)
        };
        // residual(i, f) is affine in C: r = C * slope + offset
        let residual = |c: &Rational, i: u32, f: &Rational| -> Rational {
            let inv = Rational::from(f.recip_ref());
            abar(c, i, f) - crate::arith::pow_rational(f, i64::from(w)) * abar(c, top - i, &inv)
        };
        let probe = Rational::from(3);
        let offset = residual(&Rational::new(), 0, &probe);
        let slope = residual(&Rational::from(1), 0, &probe) - &offset;
        if slope.is_zero() {
            return Err(Error::Inconsistent("reflection constant is undetermined".into()));
        }
        let c = -offset / slope;
        // Clearing denominators leaves polynomials of degree below this bound.
        let max_deg = self
            .terms
            .iter()
            .map(|(n, d)| n.degree().unwrap_or(0) + d.degree().unwrap_or(0))
            .max()
            .unwrap_or(0) as i64
            + 4 * i64::from(w);
        for i in 0..=top {
            for k in 2..(max_deg + 4) {
                let f = Rational::from((k, 1 + k % 3));
                if !residual(&c, i, &f).is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "reflection property fails for g={g}, i={i}"
                    )));
                }
            }
        }
        Ok(c)
    }
}

/// Large-degree coefficients `chat^{(j)}_{j0}`, either polynomials in `f`
/// (local curves) or constants (Hurwitz), possibly times `sqrt(2)`.
#[derive(Clone, Debug)]
pub struct LargeDegreeTable {
    entries: BTreeMap<(u32, u32), SymbolicValue>,
    max_j: u32,
}

impl LargeDegreeTable {
    /// Bundled local-curve table (`j <= 4`).
    pub fn local_curve() -> Result<&'static LargeDegreeTable> {
        static CELL: OnceLock<LargeDegreeTable> = OnceLock::new();
        Self::cached(&CELL, &XP_CHAT)
    }

    /// Bundled Hurwitz table (`j <= 7`).
    pub fn hurwitz() -> Result<&'static LargeDegreeTable> {
        static CELL: OnceLock<LargeDegreeTable> = OnceLock::new();
        Self::cached(&CELL, &HURWITZ_CHAT)
    }

    fn cached(cell: &'static OnceLock<LargeDegreeTable>, src: &Bundled) -> Result<&'static LargeDegreeTable> {
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let parsed = Self::parse(src)?;
        Ok(cell.get_or_init(|| parsed))
    }

    fn parse(src: &Bundled) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (line, cols) in src.verified_rows()? {
            let [j, j0, value] = cols[..] else {
                return Err(src.parse_error(line, "expected three tab-separated columns"));
            };
            let j: u32 = j.parse().map_err(|_| src.parse_error(line, "bad j"))?;
            let j0: u32 = j0.parse().map_err(|_| src.parse_error(line, "bad j0"))?;
            if j0 == 0 || j0 > j {
                return Err(src.parse_error(line, "need 1 <= j0 <= j"));
            }
            let v = parse_expression(value).map_err(|m| src.parse_error(line, m))?;
            if entries.insert((j, j0), v).is_some() {
                return Err(src.parse_error(line, "duplicate entry"));
            }
        }
        let max_j = entries.keys().map(|(j, _)| *j).max().unwrap_or(0);
        for j in 1..=max_j {
            for j0 in 1..=j {
                if !entries.contains_key(&(j, j0)) {
                    return Err(src.parse_error(0, format!("missing entry ({j},{j0})")));
                }
            }
        }
        Ok(LargeDegreeTable { entries, max_j })
    }

    pub fn max_j(&self) -> u32 {
        self.max_j
    }

    pub fn get(&self, j: u32, j0: u32) -> Option<&SymbolicValue> {
        self.entries.get(&(j, j0))
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), SymbolicValue> {
        &self.entries
    }
}
