//! Simple Hurwitz numbers of P1: the large-`p` limit of the local curves.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::data::XpCoefficients;
use crate::arith::{binomial, factorial, int_pow, BigScalar, Precision};
use crate::invariants::{GenusBound, GwTable};
use crate::{Error, Result};

/// `a^H_{g,n}` for `2 <= g <= 4`.
pub fn hurwitz_a(g: u32, n: u32) -> Result<Rational> {
    XpCoefficients::bundled(g)?.hurwitz_a(n)
}

/// `alpha^H_{g,k} = (-1)^k sum_i C(i,k) a^H_{g,i}`.
pub fn hurwitz_alpha(g: u32, k: u32) -> Result<Rational> {
    let coeffs = XpCoefficients::bundled(g)?;
    let mut sum = Rational::new();
    for i in k.max(1)..=coeffs.len() {
        sum += Rational::from(binomial(i64::from(i), i64::from(k))) * coeffs.hurwitz_a(i)?;
    }
    Ok(if k % 2 == 1 { -sum } else { sum })
}

/// Generalised Laguerre polynomial `L_n^{(a)}(x) = sum_i (-1)^i C(n+a, n-i) x^i / i!`.
fn laguerre(n: i64, a: i64, x: i64) -> Rational {
    let mut sum = Rational::new();
    for i in 0..=n {
        let term = Rational::from((binomial(n + a, n - i) * Integer::from(x).pow(i as u32), factorial(i as u32)));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// GW invariant `N^H_{g,d} = H_{g,d} / (2g+2d-2)!`.
///
/// Genus 2..=4 uses the Laguerre formula
/// `((-1)^{d-1}/d) sum_{k<=3g-3} alpha^H_k (G-k) L^{(k-d-G)}_{d-1}(d)` with
/// `G = 5(g-1)`; genus 0 and 1 use the large-`p` limits of the closed
/// local-curve formulas.
pub fn hurwitz_gw(g: u32, d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    let di = i64::from(d);
    match g {
        0 => Ok(int_pow(u64::from(d), di - 3) / Rational::from(factorial(d))),
        1 => {
            let mut sum = Rational::new();
            for n in 0..d {
                sum += Rational::from((Integer::from(d).pow(n), factorial(n)));
            }
            let tail = int_pow(u64::from(d), di - 1) / Rational::from(factorial(d));
            Ok((sum / Rational::from(d) - tail) / Rational::from(24))
        }
        _ => {
            let top = 5 * (i64::from(g) - 1);
            let mut sum = Rational::new();
            for k in 0..=(3 * i64::from(g) - 3) {
                let alpha = hurwitz_alpha(g, k as u32)?;
                sum += alpha * Rational::from(top - k) * laguerre(di - 1, k - di - top, di);
            }
            let sign = if d % 2 == 1 { 1 } else { -1 };
            Ok(sum * Rational::from((sign, di)))
        }
    }
}

/// Number of simple branch points, `2g + 2d - 2`.
pub fn branch_points(g: u32, d: u32) -> u32 {
    2 * g + 2 * d - 2
}

/// Connected simple Hurwitz number `H_{g,d} = N^H_{g,d} (2g+2d-2)!`.
pub fn hurwitz_number(g: u32, d: u32) -> Result<Rational> {
    Ok(hurwitz_gw(g, d)? * Rational::from(factorial(branch_points(g, d))))
}

/// Truncating closed forms as stated: `H_{g,2} = 1/2`,
/// `H_{g,3} = 3^{2g-2}/2`, `H_{g,4} = (2^{2g+2}-1)(3^{2g+4}-1)/2`.
///
/// The `d = 3` expression disagrees with the true Hurwitz numbers, which are
/// `(3^{2g+2}-1)/2`; see [`hurwitz_closed_d3_corrected`].
pub fn hurwitz_closed(g: u32, d: u32) -> Result<Rational> {
    let g = i64::from(g);
    match d {
        2 => Ok(Rational::from((1, 2))),
        3 => Ok(int_pow(3, 2 * g - 2) / Rational::from(2)),
        4 => {
            let a = Integer::from(2).pow((2 * g + 2) as u32) - 1u32;
            let b = Integer::from(3).pow((2 * g + 4) as u32) - 1u32;
            Ok(Rational::from((a * b, 2)))
        }
        _ => Err(Error::Domain(format!("closed forms exist for d = 2, 3, 4; got {d}"))),
    }
}

/// `H_{g,3} = (3^{2g+2} - 1)/2`.
pub fn hurwitz_closed_d3_corrected(g: u32) -> Rational {
    Rational::from((Integer::from(3).pow(2 * g + 2) - 1u32, 2))
}

fn partitions(d: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// `Z_d = sum_{lambda |- d} (dim lambda / d!)^2 e^{u c(lambda)}` as a map
/// from total content `c(lambda)` to weight.
fn disconnected_weights(d: u32) -> BTreeMap<i64, Rational> {
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    for lambda in partitions(d) {
        let mut hooks = Integer::from(1);
        let mut content = 0i64;
        for (i, &row) in lambda.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count() as u32;
                hooks *= arm + leg + 1;
                content += i64::from(j) - i as i64;
            }
        }
        let w = Rational::from((1, hooks.square()));
        *out.entry(content).or_default() += w;
    }
    out
}

/// Exact connected Hurwitz number from characters of the symmetric group,
/// valid for any `g` and `d`. Used as an oracle for the Laguerre route.
pub fn hurwitz_exact(g: u32, d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Domain("degree must be >= 1".into()));
    }
    // connected part of the exponential generating function: log Z
    let z: Vec<BTreeMap<i64, Rational>> = (0..=d).map(|k| if k == 0 { BTreeMap::new() } else { disconnected_weights(k) }).collect();
    let mut h: Vec<BTreeMap<i64, Rational>> = vec![BTreeMap::new(); d as usize + 1];
    for n in 1..=d as usize {
        let mut cur = z[n].clone();
        for k in 1..n {
            for (ea, wa) in &h[k] {
                for (eb, wb) in &z[n - k] {
                    let term = Rational::from(wa * wb) * Rational::from((k as u64, n as u64));
                    *cur.entry(ea + eb).or_default() -= term;
                }
            }
        }
        cur.retain(|_, w| *w != 0);
        h[n] = cur;
    }
    let r = branch_points(g, d);
    Ok(h[d as usize]
        .iter()
        .map(|(e, w)| Rational::from(w * Integer::from(*e).pow(r)))
        .sum())
}

/// The four leading large-genus terms of `H_{g,d}` (`d >= 5`, exact), with
/// `r = 2g + 2d - 2`:
/// `2 (d(d-1)/2)^r/(d!)^2`, `-2 ((d-1)(d-2)/2)^r/((d-1)!)^2`,
/// `2 (d(d-3)/2)^r/(d (d-2)!)^2`, `-((d^2-5d+8)/2)^r/(2 ((d-2)!)^2)`.
pub fn hurwitz_large_genus_terms(g: u32, d: u32) -> Result<[Rational; 4]> {
    if d < 5 {
        return Err(Error::Domain(format!("large-genus terms need d >= 5, got {d}")));
    }
    let r = i64::from(branch_points(g, d));
    let di = u64::from(d);
    let pow_half = |n: u64| Rational::from((Integer::from(n).pow(r as u32), Integer::from(2).pow(r as u32)));
    let fact = |n: u32| Rational::from(factorial(n).square());
    Ok([
        Rational::from(2) * pow_half(di * (di - 1)) / fact(d),
        Rational::from(-2) * pow_half((di - 1) * (di - 2)) / fact(d - 1),
        Rational::from(2) * pow_half(di * (di - 3)) / (fact(d - 2) * Rational::from(di * di)),
        -pow_half(di * di - 5 * di + 8) / (fact(d - 2) * Rational::from(2)),
    ])
}

/// Partial sum of the first `nterms` (1..=4) large-genus terms.
pub fn hurwitz_large_genus_prediction(g: u32, d: u32, nterms: u32, prec: Precision) -> Result<BigScalar> {
    if !(1..=4).contains(&nterms) {
        return Err(Error::Domain(format!("nterms must be in 1..=4, got {nterms}")));
    }
    let terms = hurwitz_large_genus_terms(g, d)?;
    let sum: Rational = terms[..nterms as usize].iter().sum();
    Ok(BigScalar::from_rational(&sum, prec))
}

/// GW table of Hurwitz invariants for genera in `genera`, degrees `1..=dmax`.
/// Genera above 4 are filled from the character formula.
pub fn hurwitz_gw_table(genera: impl IntoIterator<Item = u32>, dmax: u32) -> Result<GwTable> {
    let mut gw = GwTable::new("hurwitz", GenusBound::Inferred);
    for g in genera {
        for d in 1..=dmax {
            let v = if g <= 4 {
                hurwitz_gw(g, d)?
            } else {
                hurwitz_exact(g, d)? / Rational::from(factorial(branch_points(g, d)))
            };
            gw.insert(g, d, v)?;
        }
    }
    Ok(gw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn laguerre_matches_characters() {
        for g in 0..=4 {
            for d in 1..=6 {
                assert_eq!(hurwitz_number(g, d).unwrap(), hurwitz_exact(g, d).unwrap(), "g={g} d={d}");
            }
        }
    }

    #[test]
    fn small_hurwitz_numbers() {
        assert_eq!(hurwitz_exact(0, 1).unwrap(), 1);
        assert_eq!(hurwitz_exact(0, 2).unwrap(), rat(1, 2));
        assert_eq!(hurwitz_exact(0, 3).unwrap(), 4);
        assert_eq!(hurwitz_exact(1, 2).unwrap(), rat(1, 2));
        for g in 2..=4 {
            assert_eq!(hurwitz_number(g, 2).unwrap(), rat(1, 2));
            assert_eq!(hurwitz_number(g, 3).unwrap(), hurwitz_closed_d3_corrected(g));
            assert_eq!(hurwitz_number(g, 4).unwrap(), hurwitz_closed(g, 4).unwrap());
        }
        assert_eq!(hurwitz_closed_d3_corrected(2), 364);
        assert_eq!(hurwitz_closed(0, 4).unwrap(), 120);
        assert_eq!(hurwitz_closed(1, 3).unwrap(), rat(1, 2));
    }

    #[test]
    fn large_genus_h100_6() {
        let exact = hurwitz_exact(100, 6).unwrap();
        assert_eq!(exact.denom(), &1);
        let digits = exact.numer().to_string();
        assert!(digits.starts_with("3677302902113658612010882234808693441789186153144735319701111906118487881570479530"));
        let prec = Precision::digits(300);
        let e = BigScalar::from_rational(&exact, prec);
        let counts: Vec<u32> = (1..=4)
            .map(|n| hurwitz_large_genus_prediction(100, 6, n, prec).unwrap().agreement_digits(&e))
            .collect();
        assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
        assert!(counts[0] >= 30);
    }

    #[test]
    fn leading_term_d5() {
        let t = hurwitz_large_genus_terms(3, 5).unwrap();
        assert_eq!(t[0], Rational::from((2 * Integer::from(10).pow(14), 14400)));
    }
}
