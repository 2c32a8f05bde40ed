//! `analyze`: asymptotic analyses reported as JSON, each run at the working
//! precision and again at twice that precision.

use clap::ValueEnum;
use rug::{Integer, Rational};
use serde_json::{json, Map, Value as Json};

use super::gen::{conifold_table, generate, geometry_id};
use super::output::{curves_csv, emit, to_pretty, Curve, Outcome, Stabilizer, Value};
use super::{AnalyzeArgs, PowerMethodArg};
use crate::arith::{format_rational, parse_rational, BigScalar, Precision};
use crate::asymptotics::{
    diagonal_action_extract, diagonal_prediction, diagonal_term, estimate_action_from_fg, fit_exponential_rate,
    fit_log_exponent, fit_power_exponent, free_energy_sum, gen_diag_polys, hurwitz_large_degree_prediction,
    saddle_linear_fit, saddle_scan, xp_large_degree_prediction, xp_tower_prediction, PowerMethod, SequenceSample,
};
use crate::geometries::{
    conifold_free_energy, conifold_gw, conifold_tower_prediction, hurwitz_gw, load_table, toda_residual,
    toda_residual_with, xp_gw, GeometryId, GeometrySpec, InstantonSum, Table,
};
use crate::invariants::{GenusBound, GwTable};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    /// Exponential rate of N_{g,d} in d.
    FitRate,
    /// Power of d, given the radius of convergence.
    FitPower,
    /// Power of log d, given the rate and the power of d.
    FitLog,
    /// Action, exponent and prefactor from F_g(t) at large genus.
    Action,
    /// Action along a diagonal g = (t/2) d + q and the diagonal prediction.
    Diagonal,
    /// Dominant degrees of F_g(t) and the linear fits of the saddle.
    Saddle,
    /// Tower of actions 2 pi (t + 2 pi i m) against exact free energies.
    Tower,
    /// Exact diagonal polynomials P_h(q).
    Poly,
    /// Large-degree expansion of local-curve or Hurwitz invariants.
    LargeDegree,
    /// Residual of the Toda equation on Hurwitz data.
    Toda,
}

impl Analysis {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

pub(super) fn run(args: &AnalyzeArgs, prec: Precision, order: u32) -> Result<()> {
    let primary = compute(args, prec, order)?;
    let check = compute(args, prec.doubled(), order)?;
    let mut stab = Stabilizer::new();
    let mut results = Map::new();
    for ((key, a), (_, b)) in primary.results.iter().zip(&check.results) {
        results.insert(key.clone(), stab.merge(key, a, b)?);
    }
    let report = json!({
        "analysis": args.analysis.name(),
        "config": config_echo(args),
        "precision": prec.decimal_digits(),
        "check_precision": prec.doubled().decimal_digits(),
        "richardson_order": order,
        "results": results,
        "stable_digits": stab.min_digits,
    });
    emit(args.output.as_deref(), &to_pretty(&report))?;
    if let Some(path) = &args.csv {
        crate::geometries::write_atomic(path, &curves_csv(&primary.curves)?)?;
    }
    Ok(())
}

fn config_echo(args: &AnalyzeArgs) -> Json {
    let r = &args.ranges;
    let s = &args.source;
    json!({
        "geometry": s.geometry,
        "p": s.p,
        "input": s.input.as_ref().map(|p| p.display().to_string()),
        "sign_convention": format!("{:?}", s.sign_convention).to_lowercase(),
        "g": r.g, "gmin": r.gmin, "gmax": r.gmax,
        "d": r.d, "dmin": r.dmin, "dmax": r.dmax,
        "t": args.t,
        "q": args.q,
        "beta": args.beta,
        "tc": args.tc,
        "power": args.power,
        "method": args.method.to_possible_value().map(|v| v.get_name().to_string()),
        "n01": args.n01,
        "hmax": args.hmax,
        "jmax": args.jmax,
        "mmax": args.mmax,
        "order_q": args.order_q,
        "order_g": args.order_g,
        "threshold": args.threshold,
        "complex": args.complex,
    })
}

fn compute(args: &AnalyzeArgs, prec: Precision, order: u32) -> Result<Outcome> {
    let ctx = Ctx { args, prec, order };
    match args.analysis {
        Analysis::FitRate | Analysis::FitPower | Analysis::FitLog => ctx.degree_fit(),
        Analysis::Action => ctx.action(),
        Analysis::Diagonal => ctx.diagonal(),
        Analysis::Saddle => ctx.saddle(),
        Analysis::Tower => ctx.tower(),
        Analysis::Poly => ctx.poly(),
        Analysis::LargeDegree => ctx.large_degree(),
        Analysis::Toda => ctx.toda(),
    }
}

struct Ctx<'a> {
    args: &'a AnalyzeArgs,
    prec: Precision,
    order: u32,
}

impl Ctx<'_> {
    fn geometry(&self) -> Result<Option<GeometryId>> {
        if let Some(id) = geometry_id(&self.args.source)? {
            return Ok(Some(id));
        }
        // fall back on the table header
        match &self.args.source.input {
            Some(path) => Ok(load_table(path)?.geometry().parse().ok()),
            None => Ok(None),
        }
    }

    fn spec(&self) -> Result<Option<GeometrySpec>> {
        self.geometry()?.map(|id| GeometrySpec::new(id, self.prec)).transpose()
    }

    fn parse_real(&self, s: &str, what: &str) -> Result<BigScalar> {
        BigScalar::parse(s, self.prec).ok_or_else(|| Error::InvalidArgument(format!("cannot parse {what} '{s}'")))
    }

    fn t_values(&self) -> Result<Vec<BigScalar>> {
        if self.args.t.is_empty() {
            return Err(Error::InvalidArgument("--t is required for this analysis".into()));
        }
        self.args.t.iter().map(|s| self.parse_real(s, "t")).collect()
    }

    fn single_t(&self) -> Result<BigScalar> {
        let mut ts = self.t_values()?;
        if ts.len() != 1 {
            return Err(Error::InvalidArgument("this analysis takes a single --t".into()));
        }
        Ok(ts.remove(0))
    }

    fn t_c(&self) -> Result<BigScalar> {
        if let Some(s) = &self.args.tc {
            return self.parse_real(s, "t_c");
        }
        self.spec()?
            .and_then(|s| s.t_c)
            .ok_or_else(|| Error::InvalidArgument("no radius of convergence known for this input; pass --tc".into()))
    }

    fn genus(&self) -> u32 {
        let r = &self.args.ranges;
        r.g.or(r.gmin).unwrap_or(0)
    }

    fn degree_fit(&self) -> Result<Outcome> {
        let (gw, _) = generate(&self.args.source, &self.args.ranges)?;
        let g = self.genus();
        let seq = SequenceSample::from_genus(&gw, g, self.prec)?;
        let mut out = Outcome::default();
        out.push("genus", Value::Int(i64::from(g)));
        let fit = match self.args.analysis {
            Analysis::FitRate => {
                let fit = fit_exponential_rate(&seq, self.order)?;
                if let Ok(t_c) = self.t_c() {
                    out.push("reference_rate", Value::real(t_c.real_part()));
                    out.push("reference_phase", Value::real(t_c.imag_part().abs()));
                }
                fit
            }
            Analysis::FitPower => {
                let method = match self.args.method {
                    PowerMethodArg::LogAware => PowerMethod::LogAware,
                    PowerMethodArg::SquareCombination => PowerMethod::SquareCombination,
                };
                fit_power_exponent(&seq, &self.t_c()?, self.order, method)?
            }
            _ => {
                let power = self
                    .args
                    .power
                    .as_deref()
                    .ok_or_else(|| Error::InvalidArgument("fit-log needs --power".into()))?;
                fit_log_exponent(&seq, &self.t_c()?, &self.parse_real(power, "power")?, self.order)?
            }
        };
        for (key, est) in [
            ("rate", &fit.rate),
            ("phase", &fit.phase),
            ("power", &fit.power),
            ("log_power", &fit.log_power),
        ] {
            if let Some(e) = est {
                out.push(key, Value::estimate(e));
            }
        }
        out.traces("", "d", &fit.traces);
        Ok(out)
    }

    fn action(&self) -> Result<Outcome> {
        let t = self.single_t()?;
        let (glo, ghi) = self.args.ranges.genera(2)?;
        let conifold = self.geometry()? == Some(GeometryId::Conifold) && self.args.source.input.is_none();
        let mut points = Vec::new();
        if conifold {
            let tol = BigScalar::from_i64(10, self.prec).powi(-i64::from(self.prec.decimal_digits()) - 5);
            for g in glo.max(2)..=ghi {
                points.push((i64::from(g), conifold_free_energy(g, &t, &tol)?));
            }
        } else {
            let (gw, _) = generate(&self.args.source, &self.args.ranges)?;
            for g in glo..=ghi {
                points.push((i64::from(g), free_energy_sum(&gw, g, &t)?));
            }
        }
        let fit = estimate_action_from_fg(&SequenceSample::new(points)?, self.order, self.args.complex)?;
        let mut out = Outcome::default();
        for (key, est) in [("action", &fit.action), ("beta", &fit.beta), ("one_loop", &fit.one_loop)] {
            if let Some(e) = est {
                out.push(key, Value::estimate(e));
            }
        }
        if conifold {
            out.push("reference_action", Value::real(&BigScalar::pi(self.prec).mul_i64(2) * &t));
        }
        out.traces("", "g", &fit.traces);
        Ok(out)
    }

    fn diagonal(&self) -> Result<Outcome> {
        let args = self.args;
        let t: u32 = match args.t.as_slice() {
            [s] => s
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("diagonal needs an even integer t, got '{s}'")))?,
            _ => return Err(Error::InvalidArgument("diagonal takes a single --t".into())),
        };
        if t == 0 || t % 2 == 1 {
            return Err(Error::Domain(format!("diagonal analysis needs an even positive t, got {t}")));
        }
        let beta = parse_rational(&args.beta)
            .ok_or_else(|| Error::InvalidArgument(format!("cannot parse --beta '{}'", args.beta)))?;
        let half = i64::from(t / 2);
        let on_line = |d: u32| -> Option<u32> { u32::try_from(half * i64::from(d) + args.q).ok() };

        let gw = if self.geometry()? == Some(GeometryId::Conifold) && args.source.input.is_none() {
            let (dlo, dhi) = args.ranges.degrees(Some(40))?;
            let mut gw = GwTable::new("conifold", GenusBound::Conifold);
            for d in dlo..=dhi {
                if let Some(g) = on_line(d).filter(|&g| g >= 2) {
                    gw.insert(g, d, conifold_gw(g, d)?)?;
                }
            }
            gw
        } else {
            generate(&args.source, &args.ranges)?.0
        };
        let fit = diagonal_action_extract(&gw, t, args.q, &beta, self.order, self.prec)?;
        let mut out = Outcome::default();
        let reference = BigScalar::pi(self.prec).mul_i64(2 * i64::from(t));
        if let Some(a) = &fit.action {
            out.push("action", Value::estimate(a));
            out.push("action_relative_error", Value::real(a.value.relative_error(&reference)));
        }
        out.push("reference_action", Value::real(reference));
        out.push("beta", Value::Exact(format_rational(&beta)));
        out.traces("", "d", &fit.traces);

        let n01 = match args.n01 {
            Some(n) => Some(Integer::from(n)),
            None => self.spec()?.and_then(|s| s.n01),
        };
        if let Some(n01) = n01 {
            let polys = gen_diag_polys(args.hmax + 1)?;
            let tt = BigScalar::from_i64(i64::from(t), self.prec);
            let mut curve = Curve {
                series: format!("diagonal prediction relative error hmax={}", args.hmax),
                x_label: "d",
                points: Vec::new(),
            };
            let mut last = None;
            for ((g, d), v) in gw.entries() {
                if on_line(*d) != Some(*g) {
                    continue;
                }
                let exact = &BigScalar::from_rational(v, self.prec) * &tt.mul_i64(-i64::from(*d)).exp();
                let predicted = diagonal_prediction(&n01, t, args.q, *g, args.hmax, &polys, self.prec)?;
                curve.points.push((f64::from(*d), predicted.relative_error(&exact)));
                last = Some((*g, *d, exact, predicted));
            }
            if let Some((g, d, exact, predicted)) = last {
                let next = diagonal_term(&n01, t, args.q, g, args.hmax + 1, &polys, self.prec)?;
                out.push(
                    "prediction",
                    Value::map([
                        ("g", Value::Int(i64::from(g))),
                        ("d", Value::Int(i64::from(d))),
                        ("hmax", Value::Int(i64::from(args.hmax))),
                        ("n01", Value::Exact(n01.to_string())),
                        ("exact", Value::real(exact.clone())),
                        ("predicted", Value::real(predicted.clone())),
                        ("relative_error", Value::real(predicted.relative_error(&exact))),
                        ("next_term_relative", Value::real(&next.abs() / &exact.abs())),
                    ]),
                );
            }
            out.curves.push(curve);
        }
        Ok(out)
    }

    fn saddle(&self) -> Result<Outcome> {
        let args = self.args;
        let ts = self.t_values()?;
        let (glo, ghi) = args.ranges.genera(2)?;
        let conifold = self.geometry()? == Some(GeometryId::Conifold) && args.source.input.is_none();
        let gw = if conifold {
            let tmin = ts.iter().map(BigScalar::to_f64).fold(f64::INFINITY, f64::min);
            if tmin.is_nan() || tmin <= 0.0 {
                return Err(Error::Domain("saddle analysis needs t > 0".into()));
            }
            let reach = (3.0 * f64::from(2 * ghi.max(2) - 3) / tmin).ceil() as u32 + 12;
            let (_, dmax) = args.ranges.degrees(Some(reach.max(40)))?;
            conifold_table(glo.max(2), ghi, dmax)?
        } else {
            generate(&args.source, &args.ranges)?.0
        };

        let mut out = Outcome::default();
        let mut scans = Vec::new();
        let mut series = Vec::new();
        for (label, t) in args.t.iter().zip(&ts) {
            let mut line = Vec::new();
            for g in glo..=ghi {
                if gw.genus_slice(g).is_empty() {
                    continue;
                }
                let scan = saddle_scan(&gw, g, t, args.threshold)?;
                let main = scan.main_peak();
                if let Some(x0) = main.continuum {
                    line.push((f64::from(g), x0));
                }
                let mut entry = vec![
                    ("t", Value::Text(label.clone())),
                    ("g", Value::Int(i64::from(g))),
                    ("argmax", Value::Int(i64::from(scan.argmax))),
                    ("continuum", main.continuum.map_or(Value::Text("none".into()), Value::Float)),
                    ("curvature", main.curvature.map_or(Value::Text("none".into()), Value::Float)),
                    ("a2", main.a2().map_or(Value::Text("none".into()), Value::Float)),
                    ("peaks", Value::Int(scan.peaks.len() as i64)),
                    ("boundary", Value::Bool(scan.boundary)),
                ];
                if conifold {
                    entry.push(("reference", Value::Float(f64::from(2 * g - 3) / t.to_f64())));
                }
                scans.push(Value::map(entry));
                out.curves.push(Curve {
                    series: format!("profile g={g} t={label}"),
                    x_label: "d",
                    points: scan.profile.points().iter().map(|(d, v)| (*d as f64, v.clone())).collect(),
                });
            }
            series.push((t.to_f64(), line));
        }
        out.push("scans", Value::List(scans));
        if series.len() >= 4 && series.iter().all(|(_, l)| l.len() >= 5) {
            let fit = saddle_linear_fit(&series)?;
            let line = |l: &crate::asymptotics::LineFit| {
                Value::map([
                    ("slope", Value::Float(l.slope)),
                    ("slope_error", Value::Float(l.slope_error)),
                    ("intercept", Value::Float(l.intercept)),
                    ("intercept_error", Value::Float(l.intercept_error)),
                    ("r2", Value::Float(l.r2)),
                ])
            };
            let per_t = fit
                .per_t
                .iter()
                .map(|(t, l)| Value::map([("t", Value::Float(*t)), ("a1", Value::Float(l.slope)), ("a0", Value::Float(l.intercept))]))
                .collect();
            out.push("per_t", Value::List(per_t));
            out.push("inv_a1_vs_t", line(&fit.inv_a1));
            out.push("inv_a0_vs_t", line(&fit.inv_a0));
        }
        Ok(out)
    }

    fn tower(&self) -> Result<Outcome> {
        let args = self.args;
        let t = self.single_t()?;
        let (glo, ghi) = args.ranges.genera(2)?;
        let mut out = Outcome::default();
        let mut rows = Vec::new();
        match self.geometry()? {
            Some(GeometryId::Conifold) => {
                let tol = BigScalar::from_i64(10, self.prec).powi(-i64::from(self.prec.decimal_digits()) - 5);
                let mut curves: Vec<Curve> = (0..=args.mmax)
                    .map(|m| Curve {
                        series: format!("tower relative error mmax={m}"),
                        x_label: "g",
                        points: Vec::new(),
                    })
                    .collect();
                for g in glo.max(2)..=ghi {
                    let exact = conifold_free_energy(g, &t, &tol)?;
                    let mut errors = Vec::new();
                    for m in 0..=args.mmax {
                        let predicted = conifold_tower_prediction(g, &t, m, true, InstantonSum::Converged)?;
                        let err = predicted.relative_error(&exact);
                        curves[m as usize].points.push((f64::from(g), err.clone()));
                        errors.push(Value::real(err));
                    }
                    rows.push(Value::map([
                        ("g", Value::Int(i64::from(g))),
                        ("exact", Value::real(exact)),
                        ("relative_error_by_mmax", Value::List(errors)),
                    ]));
                }
                out.curves = curves;
            }
            Some(GeometryId::LocalCurve(_)) => {
                for g in glo.max(2)..=ghi {
                    let predictions = (0..=args.mmax)
                        .map(|m| xp_tower_prediction(g, &t, m).map(Value::real))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(Value::map([
                        ("g", Value::Int(i64::from(g))),
                        ("prediction_by_mmax", Value::List(predictions)),
                    ]));
                }
            }
            _ => return Err(Error::InvalidArgument("tower supports --geometry conifold or xp".into())),
        }
        out.push("genera", Value::List(rows));
        Ok(out)
    }

    fn poly(&self) -> Result<Outcome> {
        let set = gen_diag_polys(self.args.hmax)?;
        let polys = set
            .polys()
            .iter()
            .enumerate()
            .map(|(h, p)| {
                Value::map([
                    ("h", Value::Int(h as i64)),
                    ("coefficients", Value::List(p.coeffs().iter().map(|c| Value::Exact(format_rational(c))).collect())),
                ])
            })
            .collect();
        let mut out = Outcome::default();
        out.push("polynomials", Value::List(polys));
        Ok(out)
    }

    fn large_degree(&self) -> Result<Outcome> {
        let args = self.args;
        let g = self.genus();
        let d = args
            .ranges
            .d
            .or(args.ranges.dmax)
            .ok_or_else(|| Error::InvalidArgument("large-degree needs --d".into()))?;
        let (actual, predict): (Rational, Box<dyn Fn(u32) -> Result<BigScalar>>) = match self.geometry()? {
            Some(GeometryId::LocalCurve(p)) => (xp_gw(g, d, p)?, Box::new(move |j| xp_large_degree_prediction(g, d, p, j, self.prec))),
            Some(GeometryId::Hurwitz) => (hurwitz_gw(g, d)?, Box::new(move |j| hurwitz_large_degree_prediction(g, d, j, self.prec))),
            _ => return Err(Error::InvalidArgument("large-degree supports --geometry xp or hurwitz".into())),
        };
        let exact = BigScalar::from_rational(&actual, self.prec);
        let mut rows = Vec::new();
        let mut curve = Curve {
            series: format!("large-degree relative error g={g} d={d}"),
            x_label: "jmax",
            points: Vec::new(),
        };
        for j in 0..=args.jmax {
            let predicted = predict(j)?;
            let err = predicted.relative_error(&exact);
            curve.points.push((f64::from(j), err.clone()));
            rows.push(Value::map([
                ("jmax", Value::Int(i64::from(j))),
                ("prediction", Value::real(predicted.clone())),
                ("ratio", Value::real(&predicted / &exact)),
                ("relative_error", Value::real(err)),
            ]));
        }
        let mut out = Outcome::default();
        out.push("g", Value::Int(i64::from(g)));
        out.push("d", Value::Int(i64::from(d)));
        out.push("exact", Value::real(exact));
        out.push("orders", Value::List(rows));
        out.curves.push(curve);
        Ok(out)
    }

    fn toda(&self) -> Result<Outcome> {
        let args = self.args;
        let residual = match &args.source.input {
            Some(path) => match load_table(path)? {
                Table::Gw(gw) => toda_residual_with(&gw, args.order_q, args.order_g)?,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "toda needs a GW table, got a {} table",
                        other.kind()
                    )))
                }
            },
            None => toda_residual(args.order_q, args.order_g)?,
        };
        let mut out = Outcome::default();
        out.push("order_q", Value::Int(i64::from(args.order_q)));
        out.push("order_g", Value::Int(i64::from(args.order_g)));
        out.push("vanishes", Value::Bool(residual == 0));
        out.push("residual", Value::Exact(format_rational(&residual)));
        Ok(out)
    }
}
