//! Growth of GW invariants along diagonals `g = (t/2) d + q`.

use rug::{Integer, Rational};

use super::fit::{accelerate, GrowthFit};
use super::sequence::SequenceSample;
use crate::arith::{bernoulli, BigScalar, Precision, QPolynomial, TruncatedSeries};
use crate::invariants::GwTable;
use crate::{Error, Result};

/// Polynomials `P_0, ..., P_H` in `q` defined by
/// `sqrt(2 pi) e^{2q-x} (x-1) (x-2q)^{x-3} ~ sum_h Gamma(x-3/2-h) 2^{-h} P_h(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagPolySet {
    polys: Vec<QPolynomial>,
}

impl DiagPolySet {
    pub fn hmax(&self) -> u32 {
        self.polys.len() as u32 - 1
    }

    pub fn get(&self, h: u32) -> Option<&QPolynomial> {
        self.polys.get(h as usize)
    }

    pub fn polys(&self) -> &[QPolynomial] {
        &self.polys
    }
}

/// `log(1 - a eps)` to order `n`.
fn log_one_minus(a: &Rational, n: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(n, |k| {
        if k == 0 {
            Rational::new()
        } else {
            -crate::arith::pow_rational(a, k as i64) / Rational::from(k as u64)
        }
    })
}

/// `log(1 - a eps) / eps` to order `n`.
fn log_one_minus_over_eps(a: &Rational, n: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(n, |k| -crate::arith::pow_rational(a, k as i64 + 1) / Rational::from(k as u64 + 1))
}

/// Coefficients `2^{-h} P_h(q)`, `h <= n`, at a fixed rational `q`.
///
/// Dividing both sides by `Gamma(x - 3/2)` and setting `eps = 1/x`, the left
/// side is `exp(L)` with
/// `L = 2q - 3/2 + log(1-eps) + S_{2q} - 3 log(1-2q eps) - S_{3/2}
///      + 2 log(1 - 3eps/2) - sum_k B_{2k}/(2k(2k-1)) z^{1-2k}`,
/// `S_a = log(1 - a eps)/eps`, `1/z = eps/(1 - 3eps/2)` (Stirling for
/// `Gamma(z)`, `z = x - 3/2`), and the right side is
/// `sum_h 2^{-h} P_h eps^h prod_{i=1}^{h} 1/(1 - (3/2+i) eps)`.
fn scaled_values_at(q: &Rational, n: usize) -> Result<Vec<Rational>> {
    let two_q = Rational::from(2 * q);
    let three_half = Rational::from((3, 2));
    let mut l = TruncatedSeries::constant(Rational::from(&two_q - &three_half), n);
    l = &l + &log_one_minus(&Rational::from(1), n);
    l = &l + &log_one_minus_over_eps(&two_q, n);
    l = &l - &log_one_minus(&two_q, n).scale(&Rational::from(3));
    l = &l - &log_one_minus_over_eps(&three_half, n);
    l = &l + &log_one_minus(&three_half, n).scale(&Rational::from(2));
    let inv_z = &TruncatedSeries::variable(n) * &log_one_minus(&three_half, n).scale(&Rational::from(-1)).exp()?;
    let mut inv_z_pow = inv_z.clone();
    for k in 1..=(n as u32).div_ceil(2) {
        let c = bernoulli(2 * k) / Rational::from(2 * k * (2 * k - 1));
        l = &l - &inv_z_pow.scale(&c);
        inv_z_pow = &(&inv_z_pow * &inv_z) * &inv_z;
    }
    let lhs = l.exp()?;

    let mut basis = Vec::with_capacity(n + 1);
    let mut current = TruncatedSeries::one(n);
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    for h in 0..=n {
        if h > 0 {
            let a = Rational::from((3 + 2 * h as i64, 2));
            let factor = (&TruncatedSeries::one(n) - &TruncatedSeries::variable(n).scale(&a)).recip()?;
            current = &current.shift_up(1) * &factor;
        }
        basis.push(current.clone());
        let mut c = lhs.coeff(h).clone();
        for (hp, b) in basis.iter().enumerate().take(h) {
            c -= Rational::from(&out[hp] * b.coeff(h));
        }
        out.push(c);
    }
    Ok(out)
}

/// Exact `P_0..P_hmax`, by evaluating the expansion at `2 hmax + 1` integer
/// values of `q` and interpolating (`deg P_h = 2h`).
pub fn gen_diag_polys(hmax: u32) -> Result<DiagPolySet> {
    let n = hmax as usize;
    let nodes: Vec<Rational> = (0..=2 * hmax as i64).map(Rational::from).collect();
    let values: Vec<Vec<Rational>> = nodes.iter().map(|q| scaled_values_at(q, n)).collect::<Result<_>>()?;
    let mut polys = Vec::with_capacity(n + 1);
    for h in 0..=n {
        let scale = Rational::from(Integer::from(1) << h as u32);
        let points: Vec<(Rational, Rational)> = nodes
            .iter()
            .zip(&values)
            .map(|(q, v)| (q.clone(), Rational::from(&v[h] * &scale)))
            .collect();
        let p = QPolynomial::interpolate("q", &points)?;
        if p.degree() != Some(2 * h) {
            return Err(Error::Inconsistent(format!("P_{h} has degree {:?}, expected {}", p.degree(), 2 * h)));
        }
        polys.push(p);
    }
    Ok(DiagPolySet { polys })
}

fn check_diagonal(t: u32, q: i64, g: u32) -> Result<u32> {
    if t == 0 || t % 2 == 1 {
        return Err(Error::Domain(format!("diagonal analysis needs an even positive t, got {t}")));
    }
    let excess = i64::from(g) - q;
    let half = i64::from(t / 2);
    if excess <= 0 || excess % half != 0 {
        return Err(Error::Domain(format!("g = {g}, q = {q} is not on a diagonal with integer d for t = {t}")));
    }
    Ok((excess / half) as u32)
}

/// Term `h` of the diagonal prediction for `N_{g,d} e^{-dt}`:
/// `Gamma(2g-3/2-h)/(2 pi t)^{2g-3/2-h} n01 t^{3/2-h} P_h(q) / (2^{2h+1} pi^{h+2})`.
pub fn diagonal_term(n01: &Integer, t: u32, q: i64, g: u32, h: u32, polys: &DiagPolySet, prec: Precision) -> Result<BigScalar> {
    check_diagonal(t, q, g)?;
    let p = polys
        .get(h)
        .ok_or_else(|| Error::OutOfRange(format!("P_{h} not generated (hmax = {})", polys.hmax())))?;
    let pi = BigScalar::pi(prec);
    let tt = BigScalar::from_i64(i64::from(t), prec);
    let x = BigScalar::from_rational(&Rational::from((4 * i64::from(g) - 3 - 2 * i64::from(h), 2)), prec);
    let action = &pi * &tt.mul_i64(2);
    let growth = &x.gamma() / &action.pow(&x);
    let t_pow = tt.pow(&BigScalar::from_rational(&Rational::from((3 - 2 * i64::from(h), 2)), prec));
    let den = &BigScalar::from_i64(2, prec).powi(2 * i64::from(h) + 1) * &pi.powi(i64::from(h) + 2);
    let poly = BigScalar::from_rational(&p.eval(&Rational::from(q)), prec);
    let n01 = BigScalar::from_integer(n01, prec);
    Ok(&(&(&(&growth * &t_pow) * &poly) * &n01) / &den)
}

/// `sum_{h<=hmax}` of [`diagonal_term`].
pub fn diagonal_prediction(
    n01: &Integer,
    t: u32,
    q: i64,
    g: u32,
    hmax: u32,
    polys: &DiagPolySet,
    prec: Precision,
) -> Result<BigScalar> {
    let mut sum = BigScalar::zero(prec);
    for h in 0..=hmax {
        sum = &sum + &diagonal_term(n01, t, q, g, h, polys, prec)?;
    }
    Ok(sum)
}

/// Action from `s_d = N_{g,d} e^{-dt}` along `g = (t/2) d + q`: with
/// growth `Gamma(2g-beta)/A^{2g-beta}`, consecutive points give
/// `A^t = |s_d/s_{d+1}| prod_{i<t} (2g - beta + i)`, accelerated in `d`.
pub fn diagonal_action_extract(
    gw: &GwTable,
    t: u32,
    q: i64,
    beta: &Rational,
    order: u32,
    prec: Precision,
) -> Result<GrowthFit> {
    if t == 0 || t % 2 == 1 {
        return Err(Error::Domain(format!("diagonal analysis needs an even positive t, got {t}")));
    }
    let half = i64::from(t / 2);
    let tt = BigScalar::from_i64(i64::from(t), prec);
    let mut line = Vec::new();
    for d in 1..=i64::from(gw.max_degree().unwrap_or(0)) {
        let g = half * d + q;
        if g < 0 {
            continue;
        }
        if let Some(v) = gw.get(g as u32, d as u32) {
            let s = &BigScalar::from_rational(v, prec) * &tt.mul_i64(-d).exp();
            line.push((d, s));
        }
    }
    let line = SequenceSample::new(line)?.trailing_run();
    if line.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "only {} points on the diagonal g = {half} d + {q}",
            line.len()
        )));
    }
    let inv_t = BigScalar::from_rational(&Rational::from((1, t)), prec);
    let b = BigScalar::from_rational(beta, prec);
    let mut base = Vec::new();
    for w in line.points().windows(2) {
        let (d, s0) = (&w[0].0, &w[0].1);
        if s0.is_zero() || w[1].1.is_zero() {
            return Err(Error::Domain(format!("vanishing invariant on the diagonal at d = {d}")));
        }
        let g = half * d + q;
        let mut prod = (s0 / &w[1].1).abs();
        for i in 0..i64::from(t) {
            prod = &prod * &(&BigScalar::from_i64(2 * g + i, prec) - &b);
        }
        base.push((*d, prod.pow(&inv_t)));
    }
    let mut fit = GrowthFit {
        order,
        ..GrowthFit::default()
    };
    fit.traces.push(super::fit::Trace {
        label: "N(g,d) Q^d".into(),
        sequence: line.clone(),
    });
    fit.action = Some(accelerate(&SequenceSample::new(base)?, order, "A(d)", &mut fit.traces)?);
    fit.beta = Some(super::fit::Estimate {
        value: b,
        uncertainty: BigScalar::zero(prec),
    });
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geometries::conifold_gw_table;

    #[test]
    fn low_polynomials() {
        let set = gen_diag_polys(3).unwrap();
        assert_eq!(set.get(0).unwrap().coeffs(), &[rat(1, 1)]);
        assert_eq!(set.get(1).unwrap().coeffs(), &[rat(-71, 12), rat(12, 1), rat(-4, 1)]);
        assert_eq!(
            set.get(2).unwrap().coeffs(),
            &[rat(11545, 288), rat(-131, 1), rat(419, 3), rat(-176, 3), rat(8, 1)]
        );
        assert_eq!(set.get(3).unwrap().coeff(0), rat(-17534803, 51840));
    }

    #[test]
    fn conifold_action() {
        let prec = Precision::digits(100);
        let gw = conifold_gw_table(123, 40).unwrap();
        let fit = diagonal_action_extract(&gw, 6, 1, &rat(3, 2), 3, prec).unwrap();
        let expect = BigScalar::pi(prec).mul_i64(12);
        let err = fit.action.unwrap().value.relative_error(&expect).to_f64();
        assert!(err < 1e-6, "relative error {err}");
    }

    #[test]
    fn prediction_matches_conifold() {
        let prec = Precision::digits(60);
        let set = gen_diag_polys(3).unwrap();
        let (t, q, d) = (6u32, 1i64, 30u32);
        let g = 3 * d + 1;
        let exact = &BigScalar::from_rational(&crate::geometries::conifold_gw(g, d).unwrap(), prec)
            * &BigScalar::from_i64(-(6 * i64::from(d)), prec).exp();
        let one = Integer::from(1);
        let mut last = 1.0;
        for h in 0..=3 {
            let err = diagonal_prediction(&one, t, q, g, h, &set, prec).unwrap().relative_error(&exact).to_f64();
            assert!(err < last, "h={h} err={err}");
            last = err;
        }
        assert!(diagonal_prediction(&one, 5, q, g, 0, &set, prec).is_err());
    }
}
