//! Toda-type equation for the Hurwitz free energy
//! `F = sum_{g,d} N_{g,d} Q^d lambda^{2g-2}`:
//! `exp(F(t+lambda) - 2F(t) + F(t-lambda)) = lambda^2 e^t d_t^2 F`.

use rug::ops::Pow;
use rug::Rational;

use super::hurwitz::hurwitz_gw_table;
use crate::arith::{factorial, TruncatedSeries};
use crate::invariants::GwTable;
use crate::{Error, Result};

/// Largest `|coefficient|` of the residual through `Q^order_q` and
/// `lambda^order_g`, using the bundled Hurwitz invariants.
pub fn toda_residual(order_q: u32, order_g: u32) -> Result<Rational> {
    let gmax = order_g / 2;
    let table = hurwitz_gw_table(0..=gmax, order_q + 1)?;
    toda_residual_with(&table, order_q, order_g)
}

/// Same as [`toda_residual`] on a caller-supplied table, which must cover
/// `g <= order_g/2` and `d <= order_q + 1`.
pub fn toda_residual_with(table: &GwTable, order_q: u32, order_g: u32) -> Result<Rational> {
    // coefficients are series in y = lambda^2
    let ymax = (order_g / 2) as usize;
    let nq = order_q as usize;
    let n = |g: u32, d: u32| -> Result<Rational> {
        table.get(g, d).cloned().ok_or_else(|| {
            Error::InsufficientData(format!("Toda check needs N_{{{g},{d}}}"))
        })
    };

    // F(t+l) - 2F(t) + F(t-l) = sum N Q^d y^{g-1} sum_{k>=1} 2 d^{2k} y^k/(2k)!
    let mut delta = vec![TruncatedSeries::zero(ymax); nq + 1];
    for (d, slot) in delta.iter_mut().enumerate().skip(1) {
        let mut coeffs = vec![Rational::new(); ymax + 1];
        for g in 0..=ymax as u32 {
            let ng = n(g, d as u32)?;
            for k in 1..=ymax + 1 {
                let power = g as usize + k - 1;
                if power > ymax {
                    continue;
                }
                let dk = Rational::from(rug::Integer::from(d).pow(2 * k as u32));
                coeffs[power] += Rational::from(2) * &ng * dk / Rational::from(factorial(2 * k as u32));
            }
        }
        *slot = TruncatedSeries::new(coeffs, ymax);
    }

    // exp of a Q-series with no constant term: E_m = (1/m) sum_k k D_k E_{m-k}
    let mut lhs = vec![TruncatedSeries::one(ymax)];
    for m in 1..=nq {
        let mut acc = TruncatedSeries::zero(ymax);
        for k in 1..=m {
            acc = &acc + &(&delta[k] * &lhs[m - k]).scale(&Rational::from(k));
        }
        lhs.push(acc.scale(&Rational::from((1, m as u32))));
    }

    // lambda^2 e^t d_t^2 F = sum N_{g,d} d^2 Q^{d-1} y^g
    let mut worst = Rational::new();
    for (m, lhs_m) in lhs.iter().enumerate() {
        let d = m as u32 + 1;
        for y in 0..=ymax {
            let rhs = n(y as u32, d)? * Rational::from(d * d);
            let diff = Rational::from(lhs_m.coeff(y) - &rhs).abs();
            if diff > worst {
                worst = diff;
            }
        }
    }
    Ok(worst)
}
