//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use gw_asymptotics::arith::{rat, BigScalar, Integer, Precision, Rational};
use gw_asymptotics::asymptotics::{
    diagonal_action_extract, diagonal_prediction, diagonal_term, estimate_action_from_fg, fit_exponential_rate,
    fit_log_exponent, fit_power_exponent, gen_diag_polys, saddle_linear_fit, saddle_scan, xp_large_degree_prediction,
    PowerMethod, SequenceSample,
};
use gw_asymptotics::geometries::{
    conifold_free_energy, conifold_gw, conifold_gw_table, conifold_tower_prediction, hurwitz_closed,
    hurwitz_closed_d3_corrected, hurwitz_exact, hurwitz_gw, hurwitz_large_genus_prediction, load_table,
    toda_residual, xp_gw, InstantonSum, Table,
};
use gw_asymptotics::invariants::{
    abc_to_gw, arcsin_alpha, gv_to_abc, gv_to_gw, gw_to_gv, sine_coeff, sine_coeff_oracle, GenusBound, GvTable,
    GwTable,
};
use gw_asymptotics::arith::QPolynomial;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

#[path = "common/mod.rs"]
mod common;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("diagonal polynomials P_0..P_3", polynomials),
        ("sine/arcsin coefficient duality", coefficient_duality),
        ("GV/GW/abc round trips on random tables", round_trips),
        ("degree-one genus-two values", degree_one),
        ("conifold diagonal action and truncation", conifold_diagonal),
        ("conifold tower of actions", conifold_tower),
        ("local curve to Hurwitz limit", hurwitz_limit),
        ("Hurwitz closed forms and Toda", hurwitz_closed_forms),
        ("local curve large-degree expansion", large_degree),
        ("Hurwitz large-genus digits", large_genus_digits),
        ("synthetic fitters", synthetic_fitters),
        ("conifold saddle", saddle),
        ("determinism and precision stability", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2}. {name} ({secs:.1}s): {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn polynomials() -> Outcome {
    let start = Instant::now();
    let set = gen_diag_polys(3).map_err(|e| e.to_string())?;
    let expected: [&[(i64, i64)]; 4] = [
        &[(1, 1)],
        &[(-71, 12), (12, 1), (-4, 1)],
        &[(11545, 288), (-131, 1), (419, 3), (-176, 3), (8, 1)],
        &[(-17534803, 51840), (33553, 24), (-157393, 72), (15220, 9), (-2062, 3), (416, 3), (-32, 3)],
    ];
    for (h, coeffs) in expected.iter().enumerate() {
        let want: Vec<Rational> = coeffs.iter().map(|&(n, d)| rat(n, d)).collect();
        let got = set.get(h as u32).ok_or("missing polynomial")?.coeffs();
        ensure(got == want.as_slice(), || format!("P_{h} = {got:?}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok("all 16 coefficients exact, P_3(0) = -17534803/51840".into())
}

fn coefficient_duality() -> Outcome {
    let n = 12u32;
    for g in 0..=n {
        for h in 0..=g {
            ensure(sine_coeff(h, g) == sine_coeff_oracle(h, g), || format!("c_{{{h},{g}}} differs from its Taylor oracle"))?;
        }
    }
    // C[g][h] = c_{h,g}, A[g][h] = alpha_{g,h}; both lower triangular
    for g in 0..=n {
        for k in 0..=g {
            let ac: Rational = (k..=g).map(|h| arcsin_alpha(g, h) * sine_coeff(k, h)).sum();
            let ca: Rational = (k..=g).map(|h| sine_coeff(h, g) * arcsin_alpha(h, k)).sum();
            let delta = Rational::from(u32::from(g == k));
            ensure(ac == delta && ca == delta, || format!("product entry ({g},{k}) is not the identity"))?;
        }
    }
    Ok("91 closed-form coefficients match; A C = C A = 1 for g <= 12".into())
}

fn round_trips() -> Outcome {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = common::random_gv(12, 10, 50);
    let mut entries = 0;
    for case in 0..100 {
        let gv: GvTable = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let gw = gv_to_gw(&gv, 10, 12).map_err(|e| e.to_string())?;
        let back = gw_to_gv(&gw).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back.nonzero_entries() == gv.nonzero_entries(), || format!("case {case}: gv -> gw -> gv differs"))?;
        let abc = gv_to_abc(&gv, 12).map_err(|e| format!("case {case}: abc not integral: {e}"))?;
        for ((g, d), v) in gw.entries() {
            let via = abc_to_gw(&abc, *g, *d).map_err(|e| e.to_string())?;
            ensure(&via == v, || format!("case {case}: abc route differs at g={g} d={d}"))?;
        }
        entries += gw.len();
    }
    Ok(format!("100 tables (d <= 12, G(d) <= 10, |n| <= 50), {entries} GW values compared"))
}

fn degree_one() -> Outcome {
    let mut parts = Vec::new();
    for (file, n01, expected) in [
        ("local_p2_gv.tsv", 3, rat(1, 80)),
        ("abjm_gv.tsv", -4, rat(-1, 60)),
        ("quintic_gv.tsv", 2875, rat(575, 48)),
    ] {
        let Table::Gv(gv) = load_table(&common::fixture(file)).map_err(|e| e.to_string())? else {
            return Err(format!("{file} is not a GV table"));
        };
        ensure(gv.get(0, 1).map_err(|e| e.to_string())? == n01, || format!("{file}: n_0^(1) != {n01}"))?;
        let gw = gv_to_gw(&gv, 2, 1).map_err(|e| e.to_string())?;
        let got = gw.get(2, 1).ok_or("missing N_{2,1}")?;
        ensure(got == &expected, || format!("{file}: N_{{2,1}} = {got}"))?;
        parts.push(format!("{n01} -> {expected}"));
    }
    Ok(parts.join(", "))
}

fn conifold_diagonal() -> Outcome {
    let start = Instant::now();
    let prec = Precision::digits(200);
    let (t, q, dmax) = (6u32, 1i64, 40u32);
    let mut gw = GwTable::new("conifold", GenusBound::Conifold);
    for d in 1..=dmax {
        let g = 3 * d + 1;
        gw.insert(g, d, conifold_gw(g, d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    }
    let fit = diagonal_action_extract(&gw, t, q, &rat(3, 2), 3, prec).map_err(|e| e.to_string())?;
    let action = fit.action.ok_or("no action")?.value;
    let reference = BigScalar::pi(prec).mul_i64(12);
    let err = action.relative_error(&reference).to_f64();
    ensure(err < 1e-6, || format!("action relative error {err:.2e}"))?;

    let polys = gen_diag_polys(6).map_err(|e| e.to_string())?;
    let one = Integer::from(1);
    let (g, d) = (3 * dmax + 1, dmax);
    let exact = &BigScalar::from_rational(&conifold_gw(g, d).map_err(|e| e.to_string())?, prec)
        * &BigScalar::from_i64(-6 * i64::from(d), prec).exp();
    let predicted = diagonal_prediction(&one, t, q, g, 5, &polys, prec).map_err(|e| e.to_string())?;
    let pred_err = predicted.relative_error(&exact).to_f64();
    let next = (&diagonal_term(&one, t, q, g, 6, &polys, prec).map_err(|e| e.to_string())?.abs() / &exact.abs()).to_f64();
    ensure(pred_err <= next, || format!("hmax=5 error {pred_err:.2e} exceeds the h=6 term {next:.2e}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.0}s"))?;
    Ok(format!("A error {err:.1e}; at g={g}, hmax=5 error {pred_err:.2e} <= h=6 term {next:.2e}"))
}

fn conifold_tower() -> Outcome {
    let tower_errors = |g: u32, prec: Precision| -> Result<Vec<BigScalar>, String> {
        let t = BigScalar::from_i64(2, prec);
        let tol = BigScalar::from_i64(10, prec).powi(-i64::from(prec.decimal_digits()) - 5);
        let exact = conifold_free_energy(g, &t, &tol).map_err(|e| e.to_string())?;
        (0..=6)
            .map(|m| {
                conifold_tower_prediction(g, &t, m, true, InstantonSum::Converged)
                    .map(|p| p.relative_error(&exact))
                    .map_err(|e| e.to_string())
            })
            .collect()
    };
    let wide = Precision::digits(400);
    for g in 60..=100 {
        let errs = tower_errors(g, wide)?;
        ensure(errs.windows(2).all(|w| w[1].cmp_abs(&w[0]).is_lt()), || {
            format!("g={g}: errors not decreasing in mmax")
        })?;
    }
    let errs = tower_errors(100, Precision::digits(150))?;
    let last = errs[6].log10().to_f64();
    ensure(last < -30.0, || format!("g=100 mmax=6 relative error 1e{last:.1}"))?;
    Ok(format!("strictly decreasing for g=60..100 (400 digits); g=100, mmax=6: 1e{last:.1} at 150 digits"))
}

fn hurwitz_limit() -> Outcome {
    let mut exact_degree = 0;
    for g in 2..=4u32 {
        for d in 1..=6u32 {
            let top = (2 * g + 2 * d - 2) as usize;
            // two extra nodes confirm the degree
            let points: Vec<(Rational, Rational)> = (3..=top as u32 + 5)
                .map(|p| xp_gw(g, d, p).map(|v| (Rational::from(p), v)))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let poly = QPolynomial::interpolate("p", &points).map_err(|e| e.to_string())?;
            let hurwitz = hurwitz_gw(g, d).map_err(|e| e.to_string())?;
            let degree = poly.degree().unwrap_or(0);
            ensure(degree <= top, || format!("g={g} d={d}: degree {degree} > {top}"))?;
            ensure(poly.coeff(top) == hurwitz, || format!("g={g} d={d}: leading coefficient differs"))?;
            if hurwitz != 0 {
                ensure(degree == top, || format!("g={g} d={d}: degree {degree} != {top}"))?;
                exact_degree += 1;
            }
        }
    }
    Ok(format!(
        "coefficient of p^(2g+2d-2) equals N^H for 18 (g,d); degree exactly 2g+2d-2 in {exact_degree} cases, d = 1 is constant in p with N^H_(g,1) = 0"
    ))
}

fn hurwitz_closed_forms() -> Outcome {
    let mut literal_failures = Vec::new();
    for g in 2..=4u32 {
        for d in 2..=4u32 {
            let h = hurwitz_gw(g, d).map_err(|e| e.to_string())?
                * Rational::from(gw_asymptotics::arith::factorial(2 * g + 2 * d - 2));
            let stated = hurwitz_closed(g, d).map_err(|e| e.to_string())?;
            if h != stated {
                literal_failures.push(format!("(g={g},d={d}: {h} vs {stated})"));
            }
            if d == 3 {
                ensure(h == hurwitz_closed_d3_corrected(g), || format!("g={g}: corrected d=3 form differs"))?;
            }
        }
    }
    let residual = toda_residual(6, 6).map_err(|e| e.to_string())?;
    ensure(residual == 0, || format!("Toda residual {residual}"))?;
    if literal_failures.is_empty() {
        Ok("d=2,3,4 closed forms exact; Toda residual 0 through (Q^6, g^6)".into())
    } else {
        Err(format!(
            "stated d=3 form 3^(2g-2)/2 fails {}; d=2 and d=4 exact, corrected (3^(2g+2)-1)/2 holds, Toda residual 0",
            literal_failures.join(" ")
        ))
    }
}

fn large_degree() -> Outcome {
    let prec = Precision::digits(100);
    let actual = BigScalar::from_rational(&xp_gw(3, 100, 3).map_err(|e| e.to_string())?, prec);
    let errs: Vec<f64> = [0, 2, 4]
        .iter()
        .map(|&j| xp_large_degree_prediction(3, 100, 3, j, prec).map(|p| p.relative_error(&actual).to_f64()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure((0.5..=0.95).contains(&errs[0]), || format!("leading error {:.3}", errs[0]))?;
    ensure(errs[1] < errs[0] && errs[2] < errs[1], || format!("not monotone: {errs:?}"))?;
    ensure(errs[2] * 10.0 <= errs[0], || format!("jmax=4 gain below 10x: {errs:?}"))?;
    Ok(format!("relative errors jmax 0/2/4: {:.3} / {:.2e} / {:.2e}", errs[0], errs[1], errs[2]))
}

fn leading_digits(x: &Rational) -> String {
    Integer::from(x.floor_ref()).to_string()
}

fn large_genus_digits() -> Outcome {
    const PRINTED: &str = "3677302902113658612010882234808693441789186153144735319701111906118487881570479530";
    let exact = hurwitz_exact(100, 6).map_err(|e| e.to_string())?;
    let exact_digits = leading_digits(&exact);
    ensure(exact_digits.starts_with(PRINTED), || "exact value disagrees with the printed 82 digits".into())?;
    let prec = Precision::digits(400);
    let mut counts = Vec::new();
    for n in 1..=4 {
        let partial = hurwitz_large_genus_prediction(100, 6, n, prec).map_err(|e| e.to_string())?;
        let approx = partial.re().to_integer().ok_or("non-finite partial sum")?.to_string();
        let same = exact_digits.chars().zip(approx.chars()).take_while(|(a, b)| a == b).count();
        counts.push(same);
    }
    ensure(counts.windows(2).all(|w| w[1] > w[0]), || format!("digit counts {counts:?}"))?;
    ensure(counts[0] >= 30, || format!("1-term agrees on only {} digits", counts[0]))?;
    Ok(format!("leading digits with 1..4 terms: {counts:?} of {}", exact_digits.len()))
}

fn synthetic_fitters() -> Outcome {
    let prec = Precision::digits(60);
    let mut worst: f64 = 0.0;
    for (rate, p, delta) in [("2.9075935", 3i64, 4i64), ("1.25", -2, 1), ("0.5", 1, 0)] {
        let rate = BigScalar::parse(rate, prec).ok_or("bad rate")?;
        let seq = SequenceSample::from_fn(1..=400, |d| {
            let dd = BigScalar::from_i64(d, prec);
            let log_term = if d == 1 { BigScalar::one(prec) } else { dd.ln().powi(delta) };
            &(&dd.powi(p).mul_i64(7) * &rate.mul_i64(d).exp()) * &log_term
        })
        .map_err(|e| e.to_string())?;
        let fit_rate = fit_exponential_rate(&seq, 3).map_err(|e| e.to_string())?.rate.ok_or("no rate")?.value;
        let rho_err = fit_rate.exp().relative_error(&rate.exp()).to_f64();
        let fit_p = fit_power_exponent(&seq, &rate, 3, PowerMethod::LogAware).map_err(|e| e.to_string())?;
        let p_err = (fit_p.power.ok_or("no power")?.value.to_f64() - p as f64).abs();
        let pp = BigScalar::from_i64(p, prec);
        let fit_d = fit_log_exponent(&seq, &rate, &pp, 3).map_err(|e| e.to_string())?;
        let d_err = (fit_d.log_power.ok_or("no delta")?.value.to_f64() - delta as f64).abs();
        for (what, e) in [("rho", rho_err), ("p", p_err), ("delta", d_err)] {
            ensure(e < 1e-3, || format!("{what} error {e:.2e} (p={p}, delta={delta})"))?;
            worst = worst.max(e);
        }
    }
    let mut action_digits = u32::MAX;
    for (a, beta) in [("5", 1i64), ("5", 2), ("37.699111843077518861551720599354034610366", 3)] {
        let a = BigScalar::parse(a, prec).ok_or("bad action")?;
        let seq = SequenceSample::from_fn(5..40, |g| {
            let x = BigScalar::from_i64(2 * g - beta, prec);
            (&x.gamma() / &a.pow(&x)).mul_i64(3)
        })
        .map_err(|e| e.to_string())?;
        let fit = estimate_action_from_fg(&seq, 3, false).map_err(|e| e.to_string())?;
        let da = fit.action.ok_or("no action")?.value.agreement_digits(&a);
        let db = fit.beta.ok_or("no beta")?.value.agreement_digits(&BigScalar::from_i64(beta, prec));
        action_digits = action_digits.min(da).min(db);
    }
    ensure(action_digits >= 50, || format!("action/beta recovered to {action_digits} of 60 digits"))?;
    Ok(format!("worst (rho, p, delta) error {worst:.1e}; (A, beta) to {action_digits} of 60 digits"))
}

fn saddle() -> Outcome {
    let prec = Precision::digits(60);
    let gw = conifold_gw_table(60, 80).map_err(|e| e.to_string())?;
    for t in [4i64, 6, 8] {
        let tt = BigScalar::from_i64(t, prec);
        for g in 20..=60u32 {
            let scan = saddle_scan(&gw, g, &tt, 1e-3).map_err(|e| e.to_string())?;
            let expect = f64::from(2 * g - 3) / t as f64;
            ensure((f64::from(scan.argmax) - expect).abs() <= 1.0, || {
                format!("t={t} g={g}: argmax {} vs {expect:.2}", scan.argmax)
            })?;
        }
    }
    let mut series = Vec::new();
    for t in 4..=8i64 {
        let tt = BigScalar::from_i64(t, prec);
        let mut line = Vec::new();
        for g in 20..=60u32 {
            let scan = saddle_scan(&gw, g, &tt, 1e-3).map_err(|e| e.to_string())?;
            let x0 = scan.main_peak().continuum.ok_or_else(|| format!("t={t} g={g}: no interior saddle"))?;
            line.push((f64::from(g), x0));
        }
        series.push((t as f64, line));
    }
    let fit = saddle_linear_fit(&series).map_err(|e| e.to_string())?;
    let (s1, s0) = (fit.inv_a1.slope, fit.inv_a0.slope);
    ensure((s1 - 0.5).abs() <= 0.005, || format!("1/a1 slope {s1:.4}"))?;
    ensure((s0 + 1.0 / 3.0).abs() <= 0.01, || format!("1/a0 slope {s0:.4}"))?;
    Ok(format!("argmax within 1 of (2g-3)/t; 1/a1 slope {s1:.4}, 1/a0 slope {s0:.4} (t=4..8, g=20..60)"))
}

fn gwasym(args: &[String]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gwasym"))
        .args(args)
        .env_remove("GWASYM_PRECISION")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr).trim()));
    }
    Ok(out.stdout)
}

fn strings(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).collect()
}

/// Every `{value, digits}` pair of `low` must agree with `high` on its digits.
fn check_stable(low: &Value, high: &Value, prec: Precision, path: &str, checked: &mut usize) -> Result<(), String> {
    match (low, high) {
        (Value::Object(a), Value::Object(b)) => {
            if let (Some(Value::String(v)), Some(digits), Some(Value::String(w))) =
                (a.get("value"), a.get("digits").and_then(Value::as_u64), b.get("value"))
            {
                let x = BigScalar::parse(v, prec).ok_or_else(|| format!("{path}: cannot parse '{v}'"))?;
                let y = BigScalar::parse(w, prec).ok_or_else(|| format!("{path}: cannot parse '{w}'"))?;
                let agree = if x.is_zero() && y.is_zero() { prec.decimal_digits() } else { x.agreement_digits(&y) };
                *checked += 1;
                return ensure(u64::from(agree) + 1 >= digits, || {
                    format!("{path}: {digits} digits reported, {agree} stable")
                });
            }
            for (k, v) in a {
                let w = b.get(k).ok_or_else(|| format!("{path}.{k} missing at doubled precision"))?;
                check_stable(v, w, prec, &format!("{path}.{k}"), checked)?;
            }
            Ok(())
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            for (i, (v, w)) in a.iter().zip(b).enumerate() {
                check_stable(v, w, prec, &format!("{path}[{i}]"), checked)?;
            }
            Ok(())
        }
        (a, b) if a.is_object() || a.is_array() || b.is_object() || b.is_array() => {
            Err(format!("{path}: structure changed"))
        }
        _ => Ok(()),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let gv = dir.path().join("coni_gv.tsv");
    std::fs::write(&gv, "# geometry: conifold\n# kind: gv\n# G: conifold\n# degrees: exhaustive\n0\t1\t1\n")
        .map_err(|e| e.to_string())?;
    let gv = gv.display().to_string();
    let p2 = common::fixture("local_p2_gv.tsv").display().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "--geometry", "conifold", "--gmax", "10", "--dmax", "40"],
        vec!["gen", "--geometry", "xp", "--p", "4", "--gmax", "3", "--dmax", "8"],
        vec!["gen", "--geometry", "hurwitz", "--gmax", "6", "--dmax", "6"],
        vec!["gen", "--input", &p2, "--gmax", "4"],
        vec!["convert", "--input", &gv, "--to", "gw", "--gmax", "6", "--dmax", "10"],
        vec!["convert", "--input", &p2, "--to", "abc"],
        vec!["convert", "--input", &p2, "--to", "gw"],
        vec!["analyze", "fit-rate", "--geometry", "xp", "--p", "3", "--g", "0", "--dmax", "60"],
        vec!["analyze", "fit-power", "--geometry", "xp", "--p", "3", "--g", "0", "--dmax", "100"],
        vec!["analyze", "fit-log", "--geometry", "xp", "--p", "3", "--g", "0", "--dmax", "100", "--power", "-3.5"],
        vec!["analyze", "action", "--geometry", "conifold", "--t", "2", "--gmin", "10", "--gmax", "30"],
        vec!["analyze", "diagonal", "--geometry", "conifold", "--t", "6", "--q", "1"],
        vec!["analyze", "saddle", "--geometry", "conifold", "--gmin", "20", "--gmax", "26", "--t", "4,5,6,7"],
        vec!["analyze", "tower", "--geometry", "conifold", "--t", "2", "--gmin", "60", "--gmax", "62"],
        vec!["analyze", "poly", "--hmax", "4"],
        vec!["analyze", "large-degree", "--geometry", "xp", "--p", "3", "--g", "3", "--d", "100"],
        vec!["analyze", "toda"],
    ];
    let mut checked = 0;
    for cmd in &commands {
        let mut args = strings(cmd);
        let csv_a = dir.path().join("a.csv");
        let csv_b = dir.path().join("b.csv");
        let analyze = cmd[0] == "analyze";
        let mut first = args.clone();
        let mut second = args.clone();
        if analyze {
            first.extend(strings(&["--csv", &csv_a.display().to_string()]));
            second.extend(strings(&["--csv", &csv_b.display().to_string()]));
        }
        let (a, b) = (gwasym(&first)?, gwasym(&second)?);
        ensure(a == b, || format!("{} output differs between runs", cmd.join(" ")))?;
        if analyze {
            let (x, y) = (std::fs::read(&csv_a).map_err(|e| e.to_string())?, std::fs::read(&csv_b).map_err(|e| e.to_string())?);
            ensure(x == y, || format!("{} CSV differs between runs", cmd.join(" ")))?;
            // values reported at 60 digits must survive a run at 120
            args.splice(0..0, strings(&["--precision", "60"]));
            let low: Value = serde_json::from_slice(&gwasym(&args)?).map_err(|e| e.to_string())?;
            args[1] = "120".into();
            let high: Value = serde_json::from_slice(&gwasym(&args)?).map_err(|e| e.to_string())?;
            check_stable(&low["results"], &high["results"], Precision::digits(240), cmd[1], &mut checked)?;
        }
    }
    Ok(format!(
        "{} commands byte-identical on rerun (stdout and CSV); {checked} reported values stable under doubling",
        commands.len()
    ))
}
