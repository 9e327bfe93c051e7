//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Each criterion also has a wall-clock budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde_json::Value;

use cmxhp::cli::run;
use cmxhp::cmpair::{build_cm_pair, verify_rank_one};
use cmxhp::exactalg::{rat, BiPoly, Rat};
use cmxhp::partition::{partitions_of, Partition};
use cmxhp::spectral::{annihilators, orthogonality_check, Functional};
use cmxhp::verify::{
    annihilation_sweep, bispectral_sweep, dual_method_sweep, generating_sweep, rank_one_sweep,
    Outcome, SweepReport,
};
use cmxhp::xhp::{generating_series, s_factor, tau, xhp_cmpair, XhpFamily};

type Check = fn() -> Result<String, String>;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn bp(terms: &[(u32, u32, i64)]) -> BiPoly {
    BiPoly::from_int_terms(terms)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sweep_result(r: SweepReport) -> Result<String, String> {
    let summary = format!("{} partitions, {} checks", r.partitions, r.checks);
    if r.passed() {
        Ok(summary)
    } else {
        Err(format!("{summary}; failures: {:?}", r.failures))
    }
}

fn golden_matrices() -> Result<String, String> {
    let out = run(["cmxhp", "cmpair", "2,2,1,1", "--verify", "--format", "json"]);
    ensure(out.code == 0, format!("exit {}: {}", out.code, out.stderr))?;
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let x: Vec<Vec<i64>> = serde_json::from_value(v["x"].clone()).map_err(|e| e.to_string())?;
    let z: Vec<Vec<i64>> = serde_json::from_value(v["z"].clone()).map_err(|e| e.to_string())?;
    let a: Vec<i64> = serde_json::from_value(v["a"].clone()).map_err(|e| e.to_string())?;
    let b: Vec<i64> = serde_json::from_value(v["b"].clone()).map_err(|e| e.to_string())?;
    let gx = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![-1, 0, 0, 0, 0, 0],
        vec![0, -2, 0, 0, 0, 0],
        vec![0, 0, -3, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 1],
        vec![0, 0, -5, 0, 0, 0],
    ];
    let gz = vec![
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
    ];
    ensure(x == gx, format!("X = {x:?}"))?;
    ensure(z == gz, format!("Z = {z:?}"))?;
    ensure(b == [0, 0, 0, 1, 0, 1], format!("b = {b:?}"))?;
    ensure(a == [0, 0, 0, -5, 0, -1], format!("a = {a:?}"))?;
    ensure(v["rank_one"] == Value::Bool(true), "CLI rank-one flag")?;
    ensure(
        verify_rank_one(&build_cm_pair(&part("2,2,1,1")).unwrap()),
        "verify_rank_one",
    )?;
    Ok("X, Z, a, b entry-exact; rank one".into())
}

fn golden_polynomials() -> Result<String, String> {
    let p = part("2,2,1,1");
    let expected = [
        (2, bp(&[(2, 0, 1), (0, 1, -2)])),
        (5, bp(&[(5, 0, 1), (3, 1, -20), (1, 2, 60)])),
        (
            8,
            bp(&[
                (8, 0, 1),
                (6, 1, -20),
                (4, 2, 120),
                (2, 3, -240),
                (0, 4, -240),
            ]),
        ),
    ];
    for (n, want) in expected {
        let got = xhp_cmpair(&p, n).map_err(|e| e.to_string())?;
        ensure(got == want, format!("H_{n} = {got}"))?;
    }
    ensure(s_factor(&p, 2) == rat(80, 1), "s(2)")?;
    ensure(s_factor(&p, 8) == rat(2240, 1), "s(8)")?;
    Ok("H_2, H_5, H_8 exact; s(2) = 80, s(8) = 2240".into())
}

fn golden_series() -> Result<String, String> {
    let p = part("1,1");
    let s = generating_series(&p, 6).map_err(|e| e.to_string())?;
    let frac = |b: BiPoly, k: i64| b.scale(&rat(1, k));
    let expected = [
        BiPoly::from_int(2),
        BiPoly::zero(),
        BiPoly::zero(),
        frac(bp(&[(3, 0, 1), (1, 1, -6)]), 3),
        frac(bp(&[(4, 0, 1), (2, 1, -4), (0, 2, -4)]), 4),
        frac(bp(&[(5, 0, 1), (1, 2, -20)]), 10),
    ];
    for (k, want) in expected.iter().enumerate() {
        let got = s.coeff(k as i64).unwrap();
        ensure(&got == want, format!("z^{k}: {got}"))?;
    }
    let (wr, det) = tau(&p).map_err(|e| e.to_string())?;
    let want = bp(&[(2, 0, 1), (0, 1, -2)]);
    ensure(wr == want && det == want, format!("tau: {wr} / {det}"))?;
    Ok("z^0..z^5 exact; tau = x^2 - 2 y both ways".into())
}

fn golden_annihilator() -> Result<String, String> {
    let set = annihilators(&part("1,1"), -2.0, 1e-10, 16).map_err(|e| e.to_string())?;
    let i2 = Complex64::new(0.0, 2.0);
    ensure(
        (set.gammas[0] + i2).norm() <= 1e-10,
        format!("{:?}", set.gammas),
    )?;
    ensure(
        (set.gammas[1] - i2).norm() <= 1e-10,
        format!("{:?}", set.gammas),
    )?;
    let theta = &set.thetas[1];
    let c1_err = (theta.coeff(1) - Complex64::new(0.0, 0.25)).norm();
    let c0 = theta.coeff(0).norm();
    ensure(c1_err <= 1e-10 && c0 <= 1e-10, format!("{theta:?}"))?;

    let out = run([
        "cmxhp",
        "annihilators",
        "1,1",
        "--y",
        "-2",
        "--format",
        "json",
    ]);
    ensure(out.code == 0, out.stderr.clone())?;
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let found = v["thetas"].as_array().unwrap().iter().any(|t| {
        let c = |k: &str, f: &str| t[k][f].as_f64().unwrap();
        (c("point", "re")).abs() <= 1e-10
            && (c("point", "im") - 2.0).abs() <= 1e-10
            && c("c1", "re").abs() <= 1e-10
            && (c("c1", "im") - 0.25).abs() <= 1e-10
            && c("c0", "re").hypot(c("c0", "im")) <= 1e-10
    });
    ensure(found, "CLI JSON lacks (i/4) Δ¹ at 2i")?;
    Ok(format!(
        "gammas = ±2i, |c1 - i/4| = {c1_err:.1e}, |c0| = {c0:.1e}"
    ))
}

fn dual_method() -> Result<String, String> {
    ensure(partitions_of(8).len() == 22, "22 partitions of 8")?;
    sweep_result(dual_method_sweep(8, 12))
}

fn rank_one() -> Result<String, String> {
    sweep_result(rank_one_sweep(10))
}

fn generating() -> Result<String, String> {
    sweep_result(generating_sweep(6, 10))
}

fn bispectral() -> Result<String, String> {
    sweep_result(bispectral_sweep(6))
}

fn annihilation() -> Result<String, String> {
    let records = annihilation_sweep(6, &[-0.25, -0.5, -2.0], 14, 1e-10);
    let mut checked = 0;
    let mut skipped = Vec::new();
    let mut failed = Vec::new();
    let mut worst: f64 = 0.0;
    for r in &records {
        match &r.outcome {
            Outcome::Checked(res) => {
                checked += 1;
                worst = worst.max(*res);
                if *res > 1e-8 {
                    failed.push(format!("{} @ y={}: {res:.2e}", r.partition, r.y));
                }
            }
            Outcome::Skipped(why) => skipped.push(format!("{} @ y={} ({why})", r.partition, r.y)),
            Outcome::Failed(e) => failed.push(format!("{} @ y={}: {e}", r.partition, r.y)),
        }
    }
    for s in &skipped {
        println!("    skipped: {s}");
    }
    let summary = format!(
        "{checked} checked, {} skipped, worst residual {worst:.2e}",
        skipped.len()
    );
    if failed.is_empty() && checked > 0 {
        Ok(summary)
    } else {
        Err(format!("{summary}; failures: {failed:?}"))
    }
}

fn orthogonality() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for spec in ["1,1", "2,2", "2,2,1,1", "3,3"] {
        let p = part(spec);
        let r = orthogonality_check(&p, -0.25, p.weight() + 10).map_err(|e| e.to_string())?;
        ensure(
            r.max_offdiag_rel <= 1e-8,
            format!("{spec}: off-diagonal {:.2e}", r.max_offdiag_rel),
        )?;
        ensure(
            r.gram.iter().enumerate().all(|(i, row)| row[i] > 0.0),
            "diagonal sign",
        )?;
        worst = worst.max(r.max_offdiag_rel);
    }
    let classical =
        orthogonality_check(&Partition::empty(), -0.25, 10).map_err(|e| e.to_string())?;
    let dev = classical
        .nu_ratio
        .iter()
        .map(|r| (r - 1.0).abs())
        .fold(0.0, f64::max);
    ensure(dev <= 1e-8, format!("classical norms off by {dev:.2e}"))?;
    ensure(classical.max_offdiag_rel <= 1e-8, "classical off-diagonal")?;
    Ok(format!(
        "worst off-diagonal {worst:.2e}; classical norms within {dev:.2e}"
    ))
}

fn negative_control() -> Result<String, String> {
    let out = run(["cmxhp", "poly", "2,2,1,1", "-n", "7"]);
    ensure(out.code == 1, format!("exit {}", out.code))?;
    ensure(out.stderr.starts_with("DegreeExcluded"), out.stderr.clone())?;

    let p = part("1,1");
    let y = -2.0;
    let family = XhpFamily::new(&p).map_err(|e| e.to_string())?;
    let yr = Rat::from_float(y).unwrap();
    let bad = Functional::delta(Complex64::new(0.0, 2.0), 0, Complex64::new(1.0, 0.0));
    let worst = p
        .degree_set(p.weight() + 14)
        .into_iter()
        .map(|n| bad.relative_residual(&family.get(n).unwrap().eval_y(&yr)))
        .fold(0.0, f64::max);
    ensure(
        worst > 1e-8,
        format!("Δ⁰ at 2i passed with residual {worst:.2e}"),
    )?;
    Ok(format!(
        "DegreeExcluded raised; Δ⁰ at 2i residual {worst:.2e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, Check); 11] = [
        ("golden matrices", 1, golden_matrices),
        ("golden polynomials", 1, golden_polynomials),
        ("golden series", 1, golden_series),
        ("golden annihilator", 1, golden_annihilator),
        ("dual-method sweep", 120, dual_method),
        ("rank-one sweep", 10, rank_one),
        ("generating-identity sweep", 60, generating),
        ("bispectral sweep", 60, bispectral),
        ("annihilation sweep", 120, annihilation),
        ("orthogonality", 120, orthogonality),
        ("negative control", 60, negative_control),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (tag, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!(
            "[{tag}] {:>2}. {name} ({:.2} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
