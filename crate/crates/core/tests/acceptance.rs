//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::test_runner::{Config, TestRunner};
use qlambert::lambert::{lambert_series, sigma_star, divisor_generating_spec};
use qlambert::numeric::identities::SampleSet;
use qlambert::registry::{self, exact, CheckConfig};
use qlambert::report::Kind;
use qlambert::Execution;

const EXACT_TERMS: i64 = 200;

const TRIG_IDS: [&str; 10] = [
    "q_double_sq",
    "q_double2",
    "q_double3",
    "q_double4_sq",
    "q_double5",
    "q_triple",
    "q_triple2",
    "q_add3_corrected",
    "q_add3_specialized",
    "parity_symmetry",
];

const DERIVATIVE_IDS: [&str; 4] = ["deriv_sin1", "deriv_sin3", "deriv_cos2", "deriv_cos4"];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn exact_suite() -> Outcome {
    let config = CheckConfig { terms: EXACT_TERMS, execution: Execution::Parallel, ..CheckConfig::default() };
    let start = Instant::now();
    let reports = registry::check_all(Some(Kind::Exact), &config);
    let secs = start.elapsed().as_secs_f64();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| format!("{} ({})", r.id, r.status)).collect();
    let ok = failed.is_empty() && secs < 60.0 && reports.len() >= 25;
    outcome(ok, format!("{} identities through q^{EXACT_TERMS} in {secs:.1}s; failures: {failed:?}", reports.len()))
}

fn divisor_oracle() -> Outcome {
    let mut bad = Vec::new();
    for (a, b) in exact::DIVISOR_PAIRS {
        let series = lambert_series(&divisor_generating_spec(a as i64, b as i64), 200).unwrap();
        for n in 1..=200u64 {
            // Brute force straight from the definition, independent of the library's enumeration.
            let brute: u64 = (1..=n).filter(|d| n % d == 0 && (n / d) % a == b % a).sum();
            let coeff = series.get(4 * n as i64).unwrap();
            if coeff != qlambert::Rat::from_integer(brute.into()) || sigma_star(a, b, n) != brute {
                bad.push((a, b, n));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} pairs, n <= 200; mismatches: {:?}", exact::DIVISOR_PAIRS.len(), &bad[..bad.len().min(5)]))
}

/// Worst residual (log10) of an identity over the default samples.
fn worst(id: &str, precision: u32) -> Result<f64, String> {
    let rs = registry::numeric_residuals(id, &SampleSet::default(), precision).map_err(|e| e.to_string())?;
    Ok(rs.iter().map(|r| r.residual_log10).fold(f64::NEG_INFINITY, f64::max))
}

fn numeric_bound(ids: &[&str], precision: u32, bound: f64) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for id in ids {
        match worst(id, precision) {
            Ok(r) => {
                ok &= r < bound;
                details.push(format!("{id}=1e{r:.0}"));
            }
            Err(e) => {
                ok = false;
                details.push(format!("{id}: {e}"));
            }
        }
    }
    outcome(ok, format!("P={precision}, bound 1e{bound}: {}", details.join(", ")))
}

fn add3_printed() -> Outcome {
    let rs = registry::numeric_residuals("q_add3_printed", &SampleSet::default(), 128).unwrap();
    let ok = rs.iter().all(|r| r.rhs.is_zero() && r.lhs.log10_abs() > -3.0 && !r.passed());
    let lhs: Vec<String> = rs.iter().map(|r| format!("{:.4}", r.lhs.re_f64())).collect();
    let report = registry::check_numeric("q_add3_printed", &SampleSet::default(), 128).unwrap();
    outcome(ok && !report.passed(), format!("{} samples, RHS = 0, LHS = {lhs:?}", rs.len()))
}

fn pi_limit() -> Outcome {
    let rs = registry::numeric_residuals("pi_limit", &SampleSet::default(), 40).unwrap();
    let errs: Vec<f64> = rs.iter().map(|r| r.residual_log10).collect();
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    let last_ok = errs.last().is_some_and(|e| *e < -2.0);
    outcome(monotone && last_ok, format!("log10 errors at q = 0.9, 0.99, 0.999: {errs:.3?}"))
}

fn mutation() -> Outcome {
    let terms = exact::gosper_a_terms();
    let mut details = Vec::new();
    let mut ok = true;
    for i in 0..terms.len() {
        for j in 0..terms[i].numerators.len() {
            let mut mutated = terms.clone();
            mutated[i].numerators[j].coef = -mutated[i].numerators[j].coef.clone();
            let report = registry::check_exact_with("gosper_a", |t| exact::gosper_a_with(&mutated, t), 30).unwrap();
            let at = report.first_failure.as_ref().map(|f| f.at.clone());
            let exponent: Option<f64> = at.as_deref().and_then(|a| {
                let (n, d) = a.split_once('/').unwrap_or((a, "1"));
                Some(n.parse::<f64>().ok()? / d.parse::<f64>().ok()?)
            });
            ok &= exponent.is_some_and(|e| e <= 4.0);
            details.push(format!("term {i}.{j} -> first failure at q^{}", at.unwrap_or_else(|| "none".into())));
        }
    }
    outcome(ok, details.join("; "))
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 128, ..Config::default() });
    let s = common::series;
    let u = common::unit_series;
    let results: Vec<(&str, Result<(), String>)> = vec![
        ("ring axioms", runner.run(&(s(), s(), s()), |(a, b, c)| common::ring_axioms(&a, &b, &c)).map_err(|e| e.to_string())),
        ("Leibniz", runner.run(&(s(), s()), |(a, b)| common::leibniz(&a, &b)).map_err(|e| e.to_string())),
        (
            "log homomorphism",
            runner.run(&(u(), u()), |(a, b)| common::log_homomorphism(&a, &b)).map_err(|e| e.to_string()),
        ),
        (
            "substitution homomorphism",
            runner
                .run(&(s(), s(), 1u32..5), |(a, b, m)| common::substitution_homomorphism(&a, &b, m))
                .map_err(|e| e.to_string()),
        ),
        ("round trip", runner.run(&s(), |a| common::derivative_integral_round_trip(&a)).map_err(|e| e.to_string())),
    ];
    let failed: Vec<String> =
        results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    outcome(failed.is_empty(), format!("5 properties x 128 cases; failures: {failed:?}"))
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("exact suite through q^200 under 60 s", exact_suite),
        ("divisor oracle equivalence", divisor_oracle),
        ("numeric q-trig identities at P=128 below 1e-100", || numeric_bound(&TRIG_IDS, 128, -100.0)),
        ("derivative formulas at P=128 below 1e-40", || numeric_bound(&DERIVATIVE_IDS, 128, -40.0)),
        ("numeric q-trig identities at P=256 below 1e-220", || numeric_bound(&TRIG_IDS, 256, -220.0)),
        ("printed addition formula fails", add3_printed),
        ("Pi_q limit probe", pi_limit),
        ("mutation sensitivity of gosper_a", mutation),
        ("series property tests", properties),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = run();
        all &= result.ok;
        println!(
            "{} {name} [{:.1}s]: {}",
            if result.ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
