//! Growth-parameter fitters for large-degree and large-genus sequences.

use super::sequence::{richardson, SequenceSample};
use crate::arith::BigScalar;
use crate::{Error, Result};

/// A fitted constant with the spread between the last two Richardson
/// orders as its uncertainty.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub value: BigScalar,
    pub uncertainty: BigScalar,
}

impl Estimate {
    /// Decimal digits justified by the uncertainty (relative).
    pub fn reliable_digits(&self) -> u32 {
        if self.uncertainty.is_zero() {
            return self.value.precision().decimal_digits();
        }
        let rel = &self.uncertainty.abs() / &self.value.abs();
        let d = -rel.log10().to_f64();
        if d.is_finite() && d > 0.0 {
            d.floor() as u32
        } else {
            0
        }
    }
}

/// A labelled intermediate sequence (raw input or a Richardson transform).
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub label: String,
    pub sequence: SequenceSample,
}

/// Result of a fit; only the quantities a fitter determines are set.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GrowthFit {
    /// Exponential rate per unit degree (`Re t_c` for `N ~ e^{d t_c}`).
    pub rate: Option<Estimate>,
    /// Phase per unit degree from the sign pattern, in `[0, pi]`.
    pub phase: Option<Estimate>,
    /// Exponent of `d`.
    pub power: Option<Estimate>,
    /// Exponent of `log d`.
    pub log_power: Option<Estimate>,
    /// Instanton action `A`.
    pub action: Option<Estimate>,
    /// Characteristic exponent `beta` of `Gamma(2g - beta)/A^{2g-beta}`.
    pub beta: Option<Estimate>,
    /// Prefactor multiplying `Gamma(2g - beta)/A^{2g-beta}`.
    pub one_loop: Option<Estimate>,
    pub order: u32,
    pub traces: Vec<Trace>,
}

/// Richardson-accelerate the trailing consecutive run of `base`, record
/// every order in `traces` and return the last value of the top order.
pub(crate) fn accelerate(base: &SequenceSample, order: u32, label: &str, traces: &mut Vec<Trace>) -> Result<Estimate> {
    let run = base.trailing_run();
    if run.len() < order as usize + 2 {
        return Err(Error::InsufficientData(format!(
            "{label}: {} consecutive points, Richardson order {order} needs {}",
            run.len(),
            order + 2
        )));
    }
    traces.push(Trace {
        label: label.to_string(),
        sequence: base.clone(),
    });
    let mut previous = run.last().expect("nonempty").1.clone();
    let mut value = previous.clone();
    let mut before_last = run.points()[run.len() - 2].1.clone();
    for k in 1..=order {
        let r = richardson(&run, k)?;
        previous = value;
        value = r.last().expect("nonempty").1.clone();
        before_last = r.points()[r.len() - 2].1.clone();
        traces.push(Trace {
            label: format!("{label} R{k}"),
            sequence: r,
        });
    }
    let uncertainty = if order == 0 {
        (&value - &before_last).abs()
    } else {
        (&value - &previous).abs()
    };
    Ok(Estimate { value, uncertainty })
}

fn log_abs(v: &BigScalar, n: i64) -> Result<BigScalar> {
    if v.is_zero() {
        return Err(Error::Domain(format!("zero value at index {n}")));
    }
    Ok(v.abs().ln())
}

/// Exponential rate from `log|N_{d+1}/N_d|` with Richardson acceleration.
/// For real sequences the sign pattern gives a phase `pi * flips/steps`,
/// the imaginary part of the rate up to conjugation.
pub fn fit_exponential_rate(seq: &SequenceSample, order: u32) -> Result<GrowthFit> {
    let mut fit = GrowthFit {
        order,
        ..GrowthFit::default()
    };
    let pts = seq.points();
    let mut ratios = Vec::new();
    for w in pts.windows(2) {
        if w[1].0 == w[0].0 + 1 {
            ratios.push((w[0].0, &log_abs(&w[1].1, w[1].0)? - &log_abs(&w[0].1, w[0].0)?));
        }
    }
    let ratios = SequenceSample::new(ratios)?;
    fit.rate = Some(accelerate(&ratios, order, "log|N(d+1)/N(d)|", &mut fit.traces)?);

    let run = seq.trailing_run();
    if run.points().iter().all(|(_, v)| v.is_real()) && run.len() >= 2 {
        let prec = run.points()[0].1.precision();
        let steps = run.len() as i64 - 1;
        let flips = run
            .points()
            .windows(2)
            .filter(|w| w[0].1.re().is_sign_negative() != w[1].1.re().is_sign_negative())
            .count() as i64;
        let pi = BigScalar::pi(prec);
        fit.phase = Some(Estimate {
            value: pi.mul_i64(flips).div_i64(steps),
            uncertainty: pi.div_i64(steps),
        });
    }
    Ok(fit)
}

/// How [`fit_power_exponent`] builds its sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerMethod {
    /// Solve `log|N_D| - D Re(t_c) = c + p log D + delta log log D` on three
    /// consecutive squares `D = j^2, (j+1)^2, (j+2)^2`, then accelerate in `j`.
    LogAware,
    /// `2 f_{d^2} - f_d` with `f_d = d (e^{-Re t_c} |N_{d+1}/N_d| - 1)`; the
    /// combination cancels the leading `delta/log d` term.
    SquareCombination,
}

fn square_combination(seq: &SequenceSample, t_c: &BigScalar) -> Result<SequenceSample> {
    let prec = t_c.precision();
    let damp = (-&t_c.real_part()).exp();
    let f = |d: i64| -> Option<Result<BigScalar>> {
        let (a, b) = (seq.get(d)?, seq.get(d + 1)?);
        if a.is_zero() {
            return Some(Err(Error::Domain(format!("zero value at index {d}"))));
        }
        let ratio = &(&b.abs() / &a.abs()) * &damp;
        Some(Ok((&ratio - &BigScalar::one(prec)).mul_i64(d)))
    };
    let mut out = Vec::new();
    for (d, _) in seq.points() {
        let d = *d;
        if d < 2 {
            continue;
        }
        if let (Some(fd), Some(fsq)) = (f(d), f(d * d)) {
            out.push((d, &fsq?.mul_i64(2) - &fd?));
        }
    }
    SequenceSample::new(out)
}

/// Exponent `p` of `N_d ~ C d^p e^{d t_c} (log d)^delta`, given `t_c`
/// (only its real part enters). The square combination is always traced.
pub fn fit_power_exponent(seq: &SequenceSample, t_c: &BigScalar, order: u32, method: PowerMethod) -> Result<GrowthFit> {
    let mut fit = GrowthFit {
        order,
        ..GrowthFit::default()
    };
    let combo = square_combination(seq, t_c)?;
    match method {
        PowerMethod::SquareCombination => {
            fit.power = Some(accelerate(&combo, order, "2f(d^2)-f(d)", &mut fit.traces)?);
        }
        PowerMethod::LogAware => {
            let prec = t_c.precision();
            let rate = t_c.real_part();
            let point = |d: i64| -> Option<Result<(BigScalar, BigScalar, BigScalar)>> {
                let v = seq.get(d)?;
                let ld = BigScalar::from_i64(d, prec).ln();
                let y = log_abs(v, d).map(|l| &l - &rate.mul_i64(d));
                Some(y.map(|y| (y, ld.clone(), ld.ln())))
            };
            let mut base = Vec::new();
            for j in 2i64.. {
                if j * j > seq.last().map_or(0, |(n, _)| *n) {
                    break;
                }
                let (Some(p0), Some(p1), Some(p2)) = (point(j * j), point((j + 1) * (j + 1)), point((j + 2) * (j + 2))) else {
                    continue;
                };
                let ((y0, l0, ll0), (y1, l1, ll1), (y2, l2, ll2)) = (p0?, p1?, p2?);
                let (a1, b1, c1) = (&l1 - &l0, &ll1 - &ll0, &y1 - &y0);
                let (a2, b2, c2) = (&l2 - &l1, &ll2 - &ll1, &y2 - &y1);
                let det = &(&a1 * &b2) - &(&a2 * &b1);
                base.push((j, &(&(&c1 * &b2) - &(&c2 * &b1)) / &det));
            }
            let base = SequenceSample::new(base)?;
            fit.power = Some(accelerate(&base, order, "log-aware p(j), D=j^2", &mut fit.traces)?);
            if !combo.is_empty() {
                fit.traces.push(Trace {
                    label: "2f(d^2)-f(d)".into(),
                    sequence: combo,
                });
            }
        }
    }
    Ok(fit)
}

/// Exponent `delta` of `(log d)^delta`, given `t_c` and `p`, from
/// `delta_d = [log|N_{d^2}/N_d| - (d^2-d) Re(t_c) - p log d] / log 2`.
pub fn fit_log_exponent(seq: &SequenceSample, t_c: &BigScalar, power: &BigScalar, order: u32) -> Result<GrowthFit> {
    let mut fit = GrowthFit {
        order,
        ..GrowthFit::default()
    };
    let prec = t_c.precision();
    let rate = t_c.real_part();
    let ln2 = BigScalar::from_i64(2, prec).ln();
    let mut base = Vec::new();
    for (d, v) in seq.points() {
        let d = *d;
        if d < 2 {
            continue;
        }
        let Some(vsq) = seq.get(d * d) else { continue };
        let num = &(&(&log_abs(vsq, d * d)? - &log_abs(v, d)?) - &rate.mul_i64(d * d - d))
            - &(power * &BigScalar::from_i64(d, prec).ln());
        base.push((d, &num / &ln2));
    }
    let base = SequenceSample::new(base)?;
    fit.log_power = Some(accelerate(&base, order, "delta(d)", &mut fit.traces)?);
    Ok(fit)
}

/// Action `A`, exponent `beta` and prefactor `S` of
/// `F_g ~ S Gamma(2g - beta) / A^{2g - beta}` from consecutive `F_g`.
///
/// Each triple `F_g, F_{g+1}, F_{g+2}` is solved exactly for `(A^2, beta)`:
/// with `r_g = F_g/F_{g+1}`, `rho = r_g/r_{g+1}` and `y = 2g - beta`,
/// `(rho-1) y^2 + (rho-5) y - 6 = 0` and `A^2 = r_g y (y+1)`. The local
/// values are then Richardson-accelerated in `g`. Sign-alternating input
/// (complex action) is rejected unless `complex` is set.
pub fn estimate_action_from_fg(fseq: &SequenceSample, order: u32, complex: bool) -> Result<GrowthFit> {
    let mut fit = GrowthFit {
        order,
        ..GrowthFit::default()
    };
    let run = fseq.trailing_run();
    if run.len() < 3 {
        return Err(Error::InsufficientData("action fit needs at least three consecutive genera".into()));
    }
    let pts = run.points();
    if !complex {
        let first = pts[0].1.re().is_sign_negative();
        if pts.iter().any(|(_, v)| !v.is_real() || v.re().is_sign_negative() != first) {
            return Err(Error::Domain(
                "free energies change sign; enable the complex mode for complex actions".into(),
            ));
        }
    }
    let prec = pts[0].1.precision();
    let one = BigScalar::one(prec);
    let mut ratio_trace = Vec::new();
    let mut a_seq = Vec::new();
    let mut beta_seq = Vec::new();
    for w in pts.windows(3) {
        let g = w[0].0;
        for v in w {
            if v.1.is_zero() {
                return Err(Error::Domain(format!("F vanishes at g = {}", v.0)));
            }
        }
        let r0 = &w[0].1 / &w[1].1;
        let r1 = &w[1].1 / &w[2].1;
        ratio_trace.push((g, r0.mul_i64(4 * g * g)));
        let rho = &r0 / &r1;
        let a = &rho - &one;
        let b = &rho - &BigScalar::from_i64(5, prec);
        let disc = &(&b * &b) + &a.mul_i64(24);
        let y = &(&disc.sqrt() - &b) / &a.mul_i64(2);
        let a_sq = &(&r0 * &y) * &(&y + &one);
        a_seq.push((g, a_sq.sqrt()));
        beta_seq.push((g, &BigScalar::from_i64(2 * g, prec) - &y));
    }
    let action = accelerate(&SequenceSample::new(a_seq)?, order, "A(g)", &mut fit.traces)?;
    let beta = accelerate(&SequenceSample::new(beta_seq)?, order, "beta(g)", &mut fit.traces)?;
    fit.traces.push(Trace {
        label: "4g^2 F(g)/F(g+1)".into(),
        sequence: SequenceSample::new(ratio_trace)?,
    });

    let beta_re = beta.value.real_part();
    let mut s_seq = Vec::new();
    for (g, v) in pts {
        let x = &BigScalar::from_i64(2 * g, prec) - &beta_re;
        if x.cmp_re(&BigScalar::zero(prec)).is_le() {
            continue;
        }
        s_seq.push((*g, &(v * &action.value.pow(&x)) / &x.gamma()));
    }
    fit.one_loop = Some(accelerate(&SequenceSample::new(s_seq)?, order, "S(g)", &mut fit.traces)?);
    fit.action = Some(action);
    fit.beta = Some(beta);
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Precision;

    fn synthetic(prec: Precision, c: i64, p: i64, rate: &BigScalar, delta: i64) -> SequenceSample {
        SequenceSample::from_fn(1..=400, |d| {
            let dd = BigScalar::from_i64(d, prec);
            let log_term = if d == 1 { BigScalar::zero(prec) } else { dd.ln().powi(delta) };
            let v = &(&dd.powi(p).mul_i64(c) * &rate.mul_i64(d).exp()) * &log_term;
            if d == 1 && delta > 0 {
                BigScalar::one(prec)
            } else {
                v
            }
        })
        .unwrap()
    }

    #[test]
    fn synthetic_growth() {
        let prec = Precision::digits(60);
        let rate = BigScalar::parse("2.90759", prec).unwrap();
        let seq = synthetic(prec, 7, 3, &rate, 4);
        let fit = fit_exponential_rate(&seq, 3).unwrap();
        let err = (&fit.rate.unwrap().value - &rate).abs().to_f64();
        assert!(err < 1e-4, "rate error {err}");
        let p = fit_power_exponent(&seq, &rate, 3, PowerMethod::LogAware).unwrap();
        assert!((p.power.unwrap().value.to_f64() - 3.0).abs() < 1e-6);
        let three = BigScalar::from_i64(3, prec);
        let delta = fit_log_exponent(&seq, &rate, &three, 3).unwrap();
        assert!((delta.log_power.unwrap().value.to_f64() - 4.0).abs() < 1e-6);
    }

    #[test]
    fn synthetic_action() {
        let prec = Precision::digits(60);
        let a = BigScalar::from_i64(5, prec);
        for beta in [1i64, 2] {
            let seq = SequenceSample::from_fn(5..40, |g| {
                let x = BigScalar::from_i64(2 * g - beta, prec);
                (&x.gamma() / &a.pow(&x)).mul_i64(3)
            })
            .unwrap();
            let fit = estimate_action_from_fg(&seq, 3, false).unwrap();
            assert!(fit.action.unwrap().value.agreement_digits(&a) >= 50);
            let b = fit.beta.unwrap().value;
            assert!(b.agreement_digits(&BigScalar::from_i64(beta, prec)) >= 50);
            assert!(fit.one_loop.unwrap().value.agreement_digits(&BigScalar::from_i64(3, prec)) >= 45);
        }
    }

    #[test]
    fn alternating_needs_complex_mode() {
        let prec = Precision::digits(30);
        let seq = SequenceSample::from_fn(2..12, |g| BigScalar::from_i64(if g % 2 == 0 { 1 } else { -1 }, prec)).unwrap();
        assert!(matches!(estimate_action_from_fg(&seq, 2, false), Err(Error::Domain(_))));
    }
}
