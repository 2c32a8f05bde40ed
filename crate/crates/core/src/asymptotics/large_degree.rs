//! Large-degree and large-genus predictions for local curves and Hurwitz
//! theory.

use rug::Rational;

use crate::arith::{BigScalar, Precision};
use crate::geometries::{
    hurwitz_alpha, xp_alpha, xp_critical, xp_f, xp_one_loop_scale, LargeDegreeTable, SymbolicValue,
};
use crate::{Error, Result};

/// Kähler tower for local curves:
/// `sum_{|m|<=mmax} (2g-1) Gamma(2g-2) (2 pi |t_m|)^{2-2g} cos((2g-2) theta_m) / (2 pi^2)`
/// with `t_m = t + 2 pi i m = |t_m| e^{i theta_m}`, `theta_m = arctan(2 pi m/t)`.
/// The `m = 0` term is `Gamma(2g-1)/(pi (2 pi t)^{2g-1}) (t + t/(2g-2))`.
pub fn xp_tower_prediction(g: u32, t: &BigScalar, mmax: u32) -> Result<BigScalar> {
    if g < 2 {
        return Err(Error::Domain(format!("tower prediction needs g >= 2, got {g}")));
    }
    let prec = t.precision();
    let pi = BigScalar::pi(prec);
    let two_pi = pi.mul_i64(2);
    let e = 2 * i64::from(g) - 2;
    let prefactor = &BigScalar::from_integer(&crate::arith::factorial(2 * g - 3), prec).mul_i64(2 * i64::from(g) - 1)
        / &(&pi * &pi).mul_i64(2);
    let mut sum = BigScalar::zero(prec);
    for m in 0..=i64::from(mmax) {
        let im = two_pi.mul_i64(m);
        let modulus = (&(t * t) + &(&im * &im)).sqrt();
        let theta = (&im / t).atan();
        let term = &(&two_pi * &modulus).powi(-e) * &theta.mul_i64(e).cos();
        sum = &sum + &if m == 0 { term } else { term.mul_i64(2) };
    }
    Ok(&sum * &prefactor)
}

fn inv_gamma_half(x: i64, j: i64, prec: Precision) -> BigScalar {
    // 1/Gamma((x-j)/2), zero at the poles
    let arg = x - j;
    if arg <= 0 && arg % 2 == 0 {
        return BigScalar::zero(prec);
    }
    BigScalar::from_rational(&Rational::from((arg, 2)), prec).gamma().recip()
}

/// `sum_{j0} chat^{(j)}_{j0} x^{j0}` (1 at `j = 0`).
fn chat_sum(table: &LargeDegreeTable, j: u32, x: i64, f: &Rational, prec: Precision) -> BigScalar {
    if j == 0 {
        return BigScalar::one(prec);
    }
    let mut acc = BigScalar::zero(prec);
    for j0 in 1..=j {
        let c: &SymbolicValue = table.get(j, j0).expect("table validated on load");
        let xp = BigScalar::from_i64(x, prec).powi(i64::from(j0));
        acc = &acc + &(&c.eval(f, prec) * &xp);
    }
    acc
}

/// Large-degree expansion of the raw local-curve invariants (`2 <= g <= 4`):
/// `e^{d t_c} d^{G/2-1} sum_{j<=jmax} sum_{j'<=min(j,G)} c^{(j-j')}_{g,j'} alpha_{g,j'} d^{-j/2}`
/// with `G = 5(g-1)`, `x = G - k` and
/// `c^{(j)}_{g,k} = e^{x t_c/2} S^{-x} (f(f-1))^{-j/2} sum_{j0} chat^{(j)}_{j0}(f) x^{j0} / Gamma((x-j)/2)`,
/// `S` the one-loop scale of [`xp_one_loop_scale`].
pub fn xp_large_degree_prediction(g: u32, d: u32, p: u32, jmax: u32, prec: Precision) -> Result<BigScalar> {
    let table = LargeDegreeTable::local_curve()?;
    if jmax > table.max_j() {
        return Err(Error::OutOfRange(format!("jmax {jmax} beyond the bundled j <= {}", table.max_j())));
    }
    let top = 5 * i64::from(g) - 5;
    let f = xp_f(p)?;
    let fr = Rational::from(f);
    let (_, t_c) = xp_critical(p, prec)?;
    let scale = xp_one_loop_scale(p, prec)?;
    let ff = BigScalar::from_integer(&rug::Integer::from(f * (f - 1)), prec).sqrt();
    let alphas: Vec<Rational> = (0..=top.min(i64::from(jmax)) as u32).map(|k| xp_alpha(g, k, p)).collect::<Result<_>>()?;

    let c = |j: u32, k: u32| -> BigScalar {
        let x = top - i64::from(k);
        let xs = BigScalar::from_i64(x, prec);
        let growth = &(&t_c * &xs).div_i64(2).exp() / &scale.pow(&xs);
        let norm = ff.powi(-i64::from(j));
        &(&(&growth * &norm) * &chat_sum(table, j, x, &fr, prec)) * &inv_gamma_half(x, i64::from(j), prec)
    };
    let dd = BigScalar::from_i64(i64::from(d), prec);
    let mut sum = BigScalar::zero(prec);
    for j in 0..=jmax {
        let mut inner = BigScalar::zero(prec);
        for jp in 0..=j.min(top as u32) {
            let alpha = BigScalar::from_rational(&alphas[jp as usize], prec);
            inner = &inner + &(&c(j - jp, jp) * &alpha);
        }
        sum = &sum + &(&inner * &dd.pow(&BigScalar::from_rational(&Rational::from((-i64::from(j), 2)), prec)));
    }
    let lead = &t_c.mul_i64(i64::from(d)).exp() * &dd.pow(&BigScalar::from_rational(&Rational::from((top - 2, 2)), prec));
    Ok(&lead * &sum)
}

/// Large-degree expansion of Hurwitz GW invariants (`2 <= g <= 4`):
/// `e^d d^{G/2-1} sum_j sum_{j'<=min(j,3g-3)} ct^{(j-j')}_{g,j'} alpha^H_{g,j'} d^{-j/2}`,
/// `ct^{(j)}_{g,k} = 2^{(k-G)/2} sum_{j0} chat^{H,(j)}_{j0} x^{j0} / Gamma((x-j)/2)`, `x = G-k`.
pub fn hurwitz_large_degree_prediction(g: u32, d: u32, jmax: u32, prec: Precision) -> Result<BigScalar> {
    let table = LargeDegreeTable::hurwitz()?;
    if jmax > table.max_j() {
        return Err(Error::OutOfRange(format!("jmax {jmax} beyond the bundled j <= {}", table.max_j())));
    }
    if !(2..=4).contains(&g) {
        return Err(Error::OutOfRange(format!("Hurwitz coefficients are bundled for g = 2..=4, got {g}")));
    }
    let top = 5 * i64::from(g) - 5;
    let kmax = 3 * g - 3;
    let alphas: Vec<Rational> = (0..=kmax.min(jmax)).map(|k| hurwitz_alpha(g, k)).collect::<Result<_>>()?;
    let zero = Rational::new();
    let sqrt2 = BigScalar::from_i64(2, prec).sqrt();
    let c = |j: u32, k: u32| -> BigScalar {
        let x = top - i64::from(k);
        let two_pow = sqrt2.powi(-x);
        &(&two_pow * &chat_sum(table, j, x, &zero, prec)) * &inv_gamma_half(x, i64::from(j), prec)
    };
    let dd = BigScalar::from_i64(i64::from(d), prec);
    let mut sum = BigScalar::zero(prec);
    for j in 0..=jmax {
        let mut inner = BigScalar::zero(prec);
        for jp in 0..=j.min(kmax) {
            inner = &inner + &(&c(j - jp, jp) * &BigScalar::from_rational(&alphas[jp as usize], prec));
        }
        sum = &sum + &(&inner * &dd.pow(&BigScalar::from_rational(&Rational::from((-i64::from(j), 2)), prec)));
    }
    let lead = &dd.exp() * &dd.pow(&BigScalar::from_rational(&Rational::from((top - 2, 2)), prec));
    Ok(&lead * &sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometries::{conifold_tower_prediction, hurwitz_gw, xp_gw, InstantonSum};

    #[test]
    fn tower_is_leading_conifold_sector() {
        let prec = Precision::digits(50);
        let t = BigScalar::from_i64(3, prec);
        for mmax in [0, 1, 3] {
            let a = xp_tower_prediction(20, &t, mmax).unwrap();
            let b = conifold_tower_prediction(20, &t, mmax, true, InstantonSum::Leading).unwrap();
            assert!(a.agreement_digits(&b.real_part()) >= 45);
        }
    }

    #[test]
    fn xp_large_degree_improves() {
        let prec = Precision::digits(50);
        let actual = BigScalar::from_rational(&xp_gw(3, 100, 3).unwrap(), prec);
        let errs: Vec<f64> = [0, 2, 4]
            .iter()
            .map(|&j| xp_large_degree_prediction(3, 100, 3, j, prec).unwrap().relative_error(&actual).to_f64())
            .collect();
        assert!(errs[0] > 0.5 && errs[0] < 0.95, "{errs:?}");
        assert!(errs[1] < errs[0] && errs[2] < errs[1] && errs[2] * 10.0 < errs[0], "{errs:?}");
    }

    #[test]
    fn hurwitz_large_degree_improves() {
        let prec = Precision::digits(50);
        let actual = BigScalar::from_rational(&hurwitz_gw(3, 144).unwrap(), prec);
        let errs: Vec<f64> = (0..=7)
            .map(|j| hurwitz_large_degree_prediction(3, 144, j, prec).unwrap().relative_error(&actual).to_f64())
            .collect();
        // odd orders can cancel accidentally; even orders and the final one must improve
        let even: Vec<f64> = errs.iter().step_by(2).copied().collect();
        assert!(even.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!(errs[..7].iter().all(|e| errs[7] < *e), "{errs:?}");
    }
}
