//! Saddle-point analysis of the degree sums `F_g(t) = sum_d N_{g,d} e^{-dt}`.

use super::sequence::SequenceSample;
use crate::arith::{BigScalar, Precision};
use crate::invariants::GwTable;
use crate::{Error, Result};

/// A local maximum of the degree profile.
#[derive(Clone, Debug, PartialEq)]
pub struct Peak {
    /// Integer degree of the maximum.
    pub degree: u32,
    /// Profile value there, relative to `|F*_g|`.
    pub height: f64,
    /// Stationary point of a local interpolant of `log|N_{g,d} Q^d|`.
    pub continuum: Option<f64>,
    /// Second derivative of that interpolant at the stationary point.
    pub curvature: Option<f64>,
    /// Peak not bracketed by the table.
    pub at_boundary: bool,
}

impl Peak {
    /// `a_2` estimate `-curvature * x_0`.
    pub fn a2(&self) -> Option<f64> {
        Some(-self.curvature? * self.continuum?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SaddleScan {
    pub g: u32,
    pub t: BigScalar,
    /// `d -> |N_{g,d} Q^d| / |F*_g|`.
    pub profile: SequenceSample,
    /// Global maximum (ties go to the smaller degree).
    pub argmax: u32,
    /// All local maxima above the threshold, by increasing degree.
    pub peaks: Vec<Peak>,
    /// The global maximum sits on the first or last available degree.
    pub boundary: bool,
}

impl SaddleScan {
    pub fn main_peak(&self) -> &Peak {
        self.peaks
            .iter()
            .find(|p| p.degree == self.argmax)
            .expect("the global maximum is a peak")
    }
}

/// Truncated free energy `F*_g(t) = sum_{d<=dmax} N_{g,d} e^{-dt}`.
pub fn free_energy_sum(gw: &GwTable, g: u32, t: &BigScalar) -> Result<BigScalar> {
    let slice = gw.genus_slice(g);
    if slice.is_empty() {
        return Err(Error::InsufficientData(format!("no invariants at genus {g}")));
    }
    let prec = t.precision();
    let mut sum = BigScalar::zero(prec);
    for (d, v) in slice {
        sum = &sum + &(&BigScalar::from_rational(&v, prec) * &t.mul_i64(-i64::from(d)).exp());
    }
    Ok(sum)
}

/// [`free_energy_sum`] plus whether the dominant degree is interior to the
/// table (so the truncation captures the saddle).
pub fn free_energy_truncated(gw: &GwTable, g: u32, t: &BigScalar) -> Result<(BigScalar, bool)> {
    let sum = free_energy_sum(gw, g, t)?;
    let scan = saddle_scan(gw, g, t, 1e-3)?;
    Ok((sum, !scan.boundary))
}

/// Stationary point and curvature of the degree-(n-1) interpolant through
/// `(x_i, y_i)`, by Newton iteration from `start`.
fn stationary_point(xs: &[f64], ys: &[f64], start: f64) -> Option<(f64, f64)> {
    // Newton divided differences in offset coordinates
    let n = xs.len();
    let origin = start;
    let u: Vec<f64> = xs.iter().map(|x| x - origin).collect();
    let mut coef = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            coef[i] = (coef[i] - coef[i - 1]) / (u[i] - u[i - level]);
        }
    }
    // value, first and second derivative of the Newton form at x
    let eval = |x: f64| -> (f64, f64, f64) {
        let (mut p, mut dp, mut ddp) = (coef[n - 1], 0.0, 0.0);
        for i in (0..n - 1).rev() {
            ddp = ddp * (x - u[i]) + 2.0 * dp;
            dp = dp * (x - u[i]) + p;
            p = p * (x - u[i]) + coef[i];
        }
        (p, dp, ddp)
    };
    let mut x = 0.0;
    for _ in 0..100 {
        let (_, dp, ddp) = eval(x);
        if ddp == 0.0 {
            return None;
        }
        let step = dp / ddp;
        x -= step;
        if step.abs() < 1e-14 {
            break;
        }
    }
    let (_, dp, ddp) = eval(x);
    (dp.abs() < 1e-8 && x.abs() <= 1.5).then_some((x + origin, ddp))
}

const STENCIL: usize = 7;

fn refine(logs: &[(i64, f64)], idx: usize) -> (Option<f64>, Option<f64>) {
    if logs.len() < 3 {
        return (None, None);
    }
    let width = STENCIL.min(logs.len());
    let start = idx.saturating_sub(width / 2).min(logs.len() - width);
    let window = &logs[start..start + width];
    if window.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return (None, None);
    }
    let xs: Vec<f64> = window.iter().map(|(d, _)| *d as f64).collect();
    let ys: Vec<f64> = window.iter().map(|(_, y)| *y).collect();
    match stationary_point(&xs, &ys, logs[idx].0 as f64) {
        Some((x, k)) => (Some(x), Some(k)),
        None => (None, None),
    }
}

/// Profile `d -> |N_{g,d} e^{-dt}| / |F*_g|`, its global maximum and every
/// local maximum above `threshold` times the global one. Peaks are refined
/// by the stationary point of a 7-point interpolant of the log profile.
pub fn saddle_scan(gw: &GwTable, g: u32, t: &BigScalar, threshold: f64) -> Result<SaddleScan> {
    let total = free_energy_sum(gw, g, t)?.abs();
    let prec: Precision = t.precision();
    let slice = gw.genus_slice(g);
    let mut profile = Vec::with_capacity(slice.len());
    let mut logs = Vec::with_capacity(slice.len());
    for (d, v) in &slice {
        let term = (&BigScalar::from_rational(v, prec) * &t.mul_i64(-i64::from(*d)).exp()).abs();
        let rel = if total.is_zero() { term.clone() } else { &term / &total };
        let log = if term.is_zero() { f64::NEG_INFINITY } else { rel.ln().to_f64() };
        logs.push((i64::from(*d), log));
        profile.push((i64::from(*d), rel));
    }
    let profile = SequenceSample::new(profile)?;

    let mut best = 0;
    for (i, (_, y)) in logs.iter().enumerate() {
        if *y > logs[best].1 {
            best = i;
        }
    }
    let top = logs[best].1;
    let cutoff = top + threshold.ln();
    let mut peaks = Vec::new();
    for i in 0..logs.len() {
        let y = logs[i].1;
        let left_ok = i == 0 || logs[i - 1].1 < y;
        let right_ok = i + 1 == logs.len() || logs[i + 1].1 <= y;
        if !(left_ok && right_ok) || y < cutoff || !y.is_finite() {
            continue;
        }
        let at_boundary = i == 0 || i + 1 == logs.len();
        let (continuum, curvature) = if at_boundary { (None, None) } else { refine(&logs, i) };
        peaks.push(Peak {
            degree: logs[i].0 as u32,
            height: y.exp(),
            continuum,
            curvature,
            at_boundary,
        });
    }
    let argmax = logs[best].0 as u32;
    Ok(SaddleScan {
        g,
        t: t.clone(),
        profile,
        argmax,
        boundary: best == 0 || best + 1 == logs.len(),
        peaks,
    })
}

/// Ordinary least-squares line `y = intercept + slope x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_error: f64,
    pub intercept_error: f64,
    pub r2: f64,
    pub residuals: Vec<f64>,
}

pub fn fit_line(points: &[(f64, f64)]) -> Result<LineFit> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return Err(Error::InsufficientData("a line fit needs two points".into()));
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx <= f64::EPSILON * n {
        return Err(Error::Domain("degenerate design matrix in line fit".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = points.iter().map(|p| p.1 - intercept - slope * p.0).collect();
    let sse: f64 = residuals.iter().map(|r| r * r).sum();
    let dof = (points.len() as f64 - 2.0).max(1.0);
    let sigma2 = sse / dof;
    let slope_error = (sigma2 / sxx).sqrt();
    let intercept_error = (sigma2 * (1.0 / n + mx * mx / sxx)).sqrt();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok(LineFit {
        slope,
        intercept,
        slope_error,
        intercept_error,
        r2,
        residuals,
    })
}

/// Per-`t` line `x_0(g) = a_0 + a_1 g` and the fits of `1/a_1`, `1/a_0`
/// against `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaddleFit {
    pub per_t: Vec<(f64, LineFit)>,
    pub inv_a1: LineFit,
    pub inv_a0: LineFit,
}

/// Fit saddle locations `(t, [(g, x_0)])`; needs at least 5 genera per `t`
/// and 4 values of `t`.
pub fn saddle_linear_fit(scans: &[(f64, Vec<(f64, f64)>)]) -> Result<SaddleFit> {
    if scans.len() < 4 {
        return Err(Error::InsufficientData(format!("need at least 4 values of t, have {}", scans.len())));
    }
    let mut per_t = Vec::with_capacity(scans.len());
    for (t, pts) in scans {
        if pts.len() < 5 {
            return Err(Error::InsufficientData(format!("need at least 5 genera at t = {t}")));
        }
        per_t.push((*t, fit_line(pts)?));
    }
    let inv_a1: Vec<(f64, f64)> = per_t.iter().map(|(t, l)| (*t, 1.0 / l.slope)).collect();
    let inv_a0: Vec<(f64, f64)> = per_t.iter().map(|(t, l)| (*t, 1.0 / l.intercept)).collect();
    Ok(SaddleFit {
        inv_a1: fit_line(&inv_a1)?,
        inv_a0: fit_line(&inv_a0)?,
        per_t,
    })
}

/// Saddle-point estimate of a free energy dominated by a diagonal with
/// `d = a_1 g + ...` and curvature `a_2`:
/// `Gamma(2g-beta-1/2)/A^{2g-beta-1/2} sqrt(a_2/(pi a_1 A)) F_0`.
pub fn saddle_point_prediction(
    g: u32,
    beta: &BigScalar,
    a1: &BigScalar,
    a2: &BigScalar,
    action: &BigScalar,
    f0: &BigScalar,
) -> BigScalar {
    let prec = action.precision();
    let half = BigScalar::from_rational(&rug::Rational::from((1, 2)), prec);
    let x = &(&BigScalar::from_i64(2 * i64::from(g), prec) - beta) - &half;
    let growth = &x.gamma() / &action.pow(&x);
    let width = (a2 / &(&(&BigScalar::pi(prec) * a1) * action)).sqrt();
    &(&growth * &width) * f0
}
