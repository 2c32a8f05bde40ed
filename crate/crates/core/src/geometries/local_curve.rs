//! Local curve `X_p`: total space of `O(p-2) + O(-p)` over P1, `f = (p-1)^2`.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::data::XpCoefficients;
use crate::arith::{binomial, factorial, pow_rational, BigScalar, Precision};
use crate::invariants::{GenusBound, GwTable};
use crate::{Error, Result};

fn check_p(p: u32) -> Result<()> {
    if p < 3 {
        return Err(Error::Domain(format!("local curve needs p >= 3, got {p}")));
    }
    Ok(())
}

/// `f = (p-1)^2`.
pub fn xp_f(p: u32) -> Result<u64> {
    check_p(p)?;
    Ok(u64::from(p - 1).pow(2))
}

/// `alpha_{g,k} = sum_{n>=max(k,1)} C(n,k) a_{g,n} (w_c - 1)^{n-k}`, where
/// `w_c - 1 = -1/f`.
pub fn xp_alpha(g: u32, k: u32, p: u32) -> Result<Rational> {
    let f = Rational::from(xp_f(p)?);
    let coeffs = XpCoefficients::bundled(g)?;
    Ok(alpha_at(coeffs, k, &f))
}

pub(crate) fn alpha_at(coeffs: &XpCoefficients, k: u32, f: &Rational) -> Rational {
    let shift = -Rational::from(f.recip_ref());
    (k.max(1)..=coeffs.len())
        .map(|n| {
            Rational::from(binomial(i64::from(n), i64::from(k)))
                * coeffs.a(n, f)
                * pow_rational(&shift, i64::from(n - k))
        })
        .sum()
}

/// Raw genus-`g` GW invariant (`2 <= g <= 4`) from the Jacobi-polynomial
/// formula
/// `((-1)^{d-1}/d) sum_k alpha_k (G-k) f^{d+G-k} P^{(u,v)}_{d-1}((f-2)/f)`,
/// with `G = 5(g-1)`, `u = k-d-G` and `v = d(f-1)+G-k`. The Jacobi
/// polynomial is expanded as a finite binomial sum, which stays valid for
/// negative integer parameters.
pub fn xp_gw(g: u32, d: u32, p: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    let fu = xp_f(p)?;
    let f = Rational::from(fu);
    let coeffs = XpCoefficients::bundled(g)?;
    let top = i64::from(coeffs.len());
    let (d, fi) = (i64::from(d), fu as i64);
    let n = d - 1;
    let mut total = Rational::new();
    for k in 0..top {
        let alpha = alpha_at(coeffs, k as u32, &f);
        if alpha == 0 {
            continue;
        }
        // f^{d+G-k} P_n^{(u,v)}((f-2)/f) = f^{G-k+1} sum_s C(n+u,n-s) C(n+v,s) (-1)^s (f-1)^{n-s}
        let (nu, nv) = (k - 1 - top, d * fi - 1 + top - k);
        let mut jacobi = Integer::new();
        for s in 0..=n {
            let term = binomial(nu, n - s) * binomial(nv, s) * Integer::from(fi - 1).pow((n - s) as u32);
            if s % 2 == 0 {
                jacobi += term;
            } else {
                jacobi -= term;
            }
        }
        let fpow = Integer::from(fi).pow((top - k + 1) as u32);
        total += alpha * Rational::from(top - k) * Rational::from(jacobi * fpow);
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(total * Rational::from((sign, d)))
}

/// Closed genus-0 and genus-1 formulas:
/// `N_{0,d} = -(df-1)! / (d! d^2 (d(f-1))!)` and
/// `N_{1,d} = (1/(24d)) sum_{n<d} f^{d-n}/n! prod_{k=1}^{n} (d(f-1)+k-1)
///            - (f+2)(df-1)! / (24 d! (d(f-1))!)`.
pub fn xp_genus01(g: u32, d: u32, p: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    let f = xp_f(p)?;
    let d64 = u64::from(d);
    let big = |n: u64| -> Result<u32> {
        u32::try_from(n).map_err(|_| Error::OutOfRange(format!("factorial argument {n} too large")))
    };
    let core = Rational::from((
        factorial(big(d64 * f - 1)?),
        factorial(d) * factorial(big(d64 * (f - 1))?),
    ));
    match g {
        0 => Ok(-core / Rational::from(d64 * d64)),
        1 => {
            let mut sum = Rational::new();
            let mut rising = Integer::from(1);
            for n in 0..d64 {
                if n > 0 {
                    rising *= d64 * (f - 1) + n - 1;
                }
                sum += Rational::from((
                    Integer::from(f).pow((d64 - n) as u32) * &rising,
                    factorial(n as u32),
                ));
            }
            Ok(sum / Rational::from(24 * d64) - core * Rational::from((f + 2, 24u64)))
        }
        _ => Err(Error::Domain(format!("closed formulas cover g = 0, 1; got {g}"))),
    }
}

/// GW invariant in the sign convention whose GV transform is integral:
/// `(-1)^{pd}` times the genus-0/1 closed formulas, and `(-1)^{pd} (-1)^{g-1}`
/// times [`xp_gw`] for `g >= 2`. Then `n_0^{(1)} = (-1)^{p-1}`.
pub fn xp_gw_gv_convention(g: u32, d: u32, p: u32) -> Result<Rational> {
    let raw = if g <= 1 { xp_genus01(g, d, p)? } else { xp_gw(g, d, p)? };
    let flip = u64::from(p) * u64::from(d) + if g >= 2 { u64::from(g - 1) } else { 0 };
    Ok(if flip % 2 == 1 { -raw } else { raw })
}

/// Sign convention of a generated `X_p` table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XpSign {
    /// Normalised so the GV transform is integral.
    Gv,
    /// [`xp_genus01`] / [`xp_gw`] as computed.
    Raw,
}

/// GW table for genera in `genera` and degrees `1..=dmax`.
pub fn xp_gw_table(p: u32, genera: impl IntoIterator<Item = u32>, dmax: u32, sign: XpSign) -> Result<GwTable> {
    let mut gw = GwTable::new(format!("xp:{p}"), GenusBound::LocalCurve(p));
    for g in genera {
        for d in 1..=dmax {
            let v = match sign {
                XpSign::Gv => xp_gw_gv_convention(g, d, p)?,
                XpSign::Raw if g <= 1 => xp_genus01(g, d, p)?,
                XpSign::Raw => xp_gw(g, d, p)?,
            };
            gw.insert(g, d, v)?;
        }
    }
    Ok(gw)
}

/// Critical point `w_c = p(p-2)/(p-1)^2` and the radius of convergence
/// `t_c = 2f log(p-1) - p(p-2) log(p(p-2))`.
pub fn xp_critical(p: u32, prec: Precision) -> Result<(Rational, BigScalar)> {
    let f = xp_f(p)?;
    let pp = u64::from(p) * u64::from(p - 2);
    let w_c = Rational::from((pp, f));
    let ln = |x: u64| BigScalar::from_integer(&Integer::from(x), prec).ln();
    let t_c = &ln(u64::from(p - 1)).mul_i64(2 * f as i64) - &ln(pp).mul_i64(pp as i64);
    Ok((w_c, t_c))
}

/// One-loop scale `sqrt(2) w_c^{1-f/2} / (p-1)` of the large-degree
/// expansion.
pub fn xp_one_loop_scale(p: u32, prec: Precision) -> Result<BigScalar> {
    let (w_c, _) = xp_critical(p, prec)?;
    let f = xp_f(p)? as i64;
    let w = BigScalar::from_rational(&w_c, prec);
    let exponent = BigScalar::from_rational(&Rational::from((2 - f, 2)), prec);
    let two = BigScalar::from_i64(2, prec);
    Ok((&two.sqrt() * &w.pow(&exponent)).div_i64(i64::from(p - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::invariants::gw_to_gv;

    #[test]
    fn jacobi_values_p3() {
        let expect = [(2, 1, rat(1, 240)), (2, 2, rat(-1, 240)), (2, 3, rat(1, 48)), (2, 4, rat(289, 48))];
        for (g, d, v) in expect {
            assert_eq!(xp_gw(g, d, 3).unwrap(), v, "g={g} d={d}");
        }
        assert_eq!(xp_gw(3, 1, 3).unwrap(), rat(-1, 6048));
        assert_eq!(xp_gw(4, 1, 3).unwrap(), rat(1, 172800));
        assert!(xp_gw(5, 1, 3).is_err());
    }

    #[test]
    fn alpha_top_is_a_top() {
        for g in 2..=4 {
            let top = 5 * (g - 1);
            let f = rat(16, 1);
            let a = XpCoefficients::bundled(g).unwrap().a(top, &f);
            assert_eq!(xp_alpha(g, top, 5).unwrap(), a);
        }
    }

    #[test]
    fn genus01() {
        for p in 3..8 {
            assert_eq!(xp_genus01(0, 1, p).unwrap(), -1);
            assert_eq!(xp_genus01(1, 1, p).unwrap(), rat(-1, 12));
        }
        assert_eq!(xp_genus01(0, 2, 3).unwrap(), rat(-7, 8));
    }

    #[test]
    fn critical_point() {
        let prec = Precision::digits(40);
        let (w, t) = xp_critical(3, prec).unwrap();
        assert_eq!(w, rat(3, 4));
        let expect = BigScalar::from_rational(&rat(256, 27), prec).ln();
        assert!(t.agreement_digits(&expect) >= 38);
    }

    #[test]
    fn gv_convention_is_integral_and_bounded() {
        // degrees whose GV content is fixed by genera <= 4
        for (p, dmax) in [(3, 4), (4, 3), (5, 2), (6, 2)] {
            let gw = xp_gw_table(p, 0..=4, dmax, XpSign::Gv).unwrap();
            let gv = gw_to_gv(&gw).unwrap();
            let sign = if p % 2 == 1 { 1 } else { -1 };
            assert_eq!(gv.get(0, 1).unwrap(), sign);
            for ((r, d), v) in gv.entries() {
                let bound = GenusBound::LocalCurve(p).formula(*d).unwrap();
                assert!(*r <= bound || *v == 0, "p={p} r={r} d={d} v={v}");
            }
        }
    }
}
