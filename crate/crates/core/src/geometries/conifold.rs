//! Resolved conifold: the only nonzero GV invariant is `n_0^{(1)} = 1`.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::arith::{f_cs, factorial, int_pow, BigScalar};
use crate::invariants::{GenusBound, GvTable, GwTable};
use crate::{Error, Result};

/// `N_{g,d} = f_cs(g) d^{2g-3}` for `g >= 2`.
pub fn conifold_gw(g: u32, d: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Domain(format!("conifold_gw needs g >= 2, got {g}")));
    }
    if d == 0 {
        return Err(Error::Domain("conifold_gw needs d >= 1".into()));
    }
    Ok(f_cs(g) * int_pow(u64::from(d), 2 * i64::from(g) - 3))
}

/// Exhaustive GV table with the single entry `n_0^{(1)} = 1`.
pub fn conifold_gv_table() -> GvTable {
    let mut gv = GvTable::new("conifold", GenusBound::Conifold).with_exhaustive(true);
    gv.insert(0, 1, Integer::from(1)).expect("fresh table");
    gv
}

/// Closed-form GW table for `2 <= g <= gmax`, `1 <= d <= dmax`.
pub fn conifold_gw_table(gmax: u32, dmax: u32) -> Result<GwTable> {
    let mut gw = GwTable::new("conifold", GenusBound::Conifold);
    for g in 2..=gmax {
        for d in 1..=dmax {
            gw.insert(g, d, conifold_gw(g, d)?)?;
        }
    }
    Ok(gw)
}

/// `F_g(t) = f_cs(g) sum_{d>=1} d^{2g-3} e^{-dt}` summed until the tail,
/// bounded by a geometric series from the ratio test, falls below
/// `tol * |partial sum|`.
pub fn conifold_free_energy(g: u32, t: &BigScalar, tol: &BigScalar) -> Result<BigScalar> {
    if g < 2 {
        return Err(Error::Domain(format!("conifold free energy needs g >= 2, got {g}")));
    }
    let prec = t.precision();
    if t.real_part().cmp_re(&BigScalar::zero(prec)).is_le() {
        return Err(Error::Domain("conifold free energy diverges for Re(t) <= 0".into()));
    }
    let q = (-t).exp();
    let q_abs = q.abs();
    let power = 2 * i64::from(g) - 3;
    let one = BigScalar::one(prec);
    let mut sum = BigScalar::zero(prec);
    let mut qd = one.clone();
    for d in 1u64.. {
        qd = &qd * &q;
        let term = &BigScalar::from_integer(&Integer::from(d).pow(power as u32), prec) * &qd;
        sum = &sum + &term;
        // ratio of consecutive |terms| beyond d is at most (1 + 1/d)^power |q|
        let growth = BigScalar::from_rational(&Rational::from((d + 1, d)), prec).powi(power);
        let ratio = &growth * &q_abs;
        if ratio.cmp_re(&one).is_lt() {
            let tail = &(&term.abs() * &ratio) / &(&one - &ratio);
            if tail.cmp_re(&(&sum.abs() * tol)).is_le() {
                break;
            }
        }
        if d > 10_000_000 {
            return Err(Error::Domain("conifold free energy did not converge".into()));
        }
    }
    Ok(sum.mul_rational(&f_cs(g)))
}

/// Which multi-instanton sectors `n` enter the tower of actions `n A_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstantonSum {
    /// `n = 1` only.
    Leading,
    /// `1 <= n <= N`.
    UpTo(u32),
    /// All `n`, until the next sector is below working precision.
    Converged,
}

/// Large-genus prediction `sum_n sum_{|m|<=mmax}` of
/// `Gamma(2g-1)/(n A_m)^{2g-1} A_m/(2 pi^2 n) + Gamma(2g-2)/(n A_m)^{2g-2}/(2 pi^2 n^2)`
/// with `A_m = 2 pi (t + 2 pi i m)`. The second term is dropped unless
/// `include_two_loop`. Summed over all `n` and `m` this is exact.
pub fn conifold_tower_prediction(
    g: u32,
    t: &BigScalar,
    mmax: u32,
    include_two_loop: bool,
    sum: InstantonSum,
) -> Result<BigScalar> {
    if g < 2 {
        return Err(Error::Domain(format!("tower prediction needs g >= 2, got {g}")));
    }
    let prec = t.precision();
    let pi = BigScalar::pi(prec);
    let two_pi = pi.mul_i64(2);
    let two_pi_sq = (&pi * &pi).mul_i64(2);
    let gamma1 = BigScalar::from_integer(&factorial(2 * g - 2), prec);
    let gamma2 = BigScalar::from_integer(&factorial(2 * g - 3), prec);
    let e1 = 2 * i64::from(g) - 1;
    let e2 = 2 * i64::from(g) - 2;

    // Sector n contributes n^{-2g} times the n = 1 sector.
    let mut base = BigScalar::zero(prec);
    for m in -(mmax as i64)..=(mmax as i64) {
        let shift = &BigScalar::i(prec) * &two_pi.mul_i64(m);
        let action = &two_pi * &(t + &shift);
        let mut term = &(&gamma1 / &action.powi(e1)) * &(&action / &two_pi_sq);
        if include_two_loop {
            term = &term + &(&gamma2 / &(&action.powi(e2) * &two_pi_sq));
        }
        base = &base + &term;
    }
    let nmax = match sum {
        InstantonSum::Leading => 1,
        InstantonSum::UpTo(n) => n.max(1),
        InstantonSum::Converged => u32::MAX,
    };
    let eps = BigScalar::from_i64(10, prec).powi(-(i64::from(prec.decimal_digits()) + 5));
    let mut weight = BigScalar::zero(prec);
    for n in 1..=nmax {
        let w = BigScalar::from_i64(i64::from(n), prec).powi(-2 * i64::from(g));
        weight = &weight + &w;
        if n > 1 && w.cmp_abs(&(&weight * &eps)).is_le() {
            break;
        }
        if n == 1_000_000 {
            return Err(Error::Domain("instanton sum did not converge".into()));
        }
    }
    Ok(&base * &weight)
}
