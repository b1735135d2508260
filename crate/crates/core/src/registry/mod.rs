//! The identity catalog and the engines that check it.
//!
//! Exact identities are compared coefficient by coefficient over a window
//! where both sides are known exactly; numeric identities are evaluated at a
//! sample set and compared within `10^{-(P-G)}`.

pub mod exact;

use std::time::Instant;

use serde::Serialize;

use crate::exec::{map_slice, Execution};
use crate::numeric::identities::{self as num, NumericEval, SampleResidual, SampleSet};
use crate::numeric::Ctx;
use crate::report::{exponent_string, rat_string, scientific_from_log10, CheckReport, Failure, Kind, Status, Window};
use crate::special::q_end;
use crate::Error;
use exact::{Equation, ExactBuilder};

#[derive(Clone, Copy)]
enum Builder {
    Exact(ExactBuilder),
    Numeric(NumericEval),
}

/// One catalog entry.
#[derive(Clone, Copy)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub description: &'static str,
    /// Short name of the classical result the identity comes from.
    pub reference: &'static str,
    /// Documented misprints ship as entries that must fail; `--all` skips them.
    pub expected_fail: bool,
    builder: Builder,
}

impl IdentityRecord {
    pub fn kind(&self) -> Kind {
        match self.builder {
            Builder::Exact(_) => Kind::Exact,
            Builder::Numeric(_) => Kind::Numeric,
        }
    }

    pub fn info(&self) -> IdentityInfo {
        IdentityInfo {
            id: self.id,
            kind: self.kind(),
            description: self.description,
            reference: self.reference,
            expected: if self.expected_fail { "fail" } else { "pass" },
        }
    }

    /// Builds the equations of an exact identity at order `t`.
    pub fn equations(&self, t: i64) -> Result<Vec<Equation>, Error> {
        match self.builder {
            Builder::Exact(b) => b(t),
            Builder::Numeric(_) => Err(Error::KindMismatch { id: self.id.to_string(), expected: Kind::Exact }),
        }
    }
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord").field("id", &self.id).field("kind", &self.kind()).finish()
    }
}

/// Serializable catalog metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub kind: Kind,
    pub description: &'static str,
    pub reference: &'static str,
    pub expected: &'static str,
}

const fn ex(id: &'static str, description: &'static str, reference: &'static str, b: ExactBuilder) -> IdentityRecord {
    IdentityRecord { id, description, reference, expected_fail: false, builder: Builder::Exact(b) }
}

const fn ex_fail(id: &'static str, description: &'static str, reference: &'static str, b: ExactBuilder) -> IdentityRecord {
    IdentityRecord { id, description, reference, expected_fail: true, builder: Builder::Exact(b) }
}

const fn nu(id: &'static str, description: &'static str, reference: &'static str, b: NumericEval) -> IdentityRecord {
    IdentityRecord { id, description, reference, expected_fail: false, builder: Builder::Numeric(b) }
}

const fn nu_fail(id: &'static str, description: &'static str, reference: &'static str, b: NumericEval) -> IdentityRecord {
    IdentityRecord { id, description, reference, expected_fail: true, builder: Builder::Numeric(b) }
}

static CATALOG: &[IdentityRecord] = &[
    ex("gosper_a", "sum q^n/(1-q^n)^2 - 2 sum q^2n/(1-q^2n)^2 = (Pi_q^4/Pi_q2^2 - 1)/24 + 2/3 Pi_q2^2", "Gosper Lambert sums (a)", exact::gosper_a),
    ex("gosper_b", "sum q^n/(1-q^n)^2 - 3 sum q^3n/(1-q^3n)^2 = (Pi_q^2 + 3 Pi_q3^2)^2/(12 Pi_q Pi_q3) - 1/12", "Gosper Lambert sums (b)", exact::gosper_b),
    ex("gosper_c", "sum q^n/(1-q^n)^2 - 4 sum q^4n/(1-q^4n)^2 = (Pi_q^4/Pi_q2^2 - 1)/8", "Gosper Lambert sums (c)", exact::gosper_c),
    ex("gosper_d", "sum q^2n/(1-q^2n)^2 - 9 sum q^18n/(1-q^18n)^2 = Pi_q3^3/Pi_q + (Pi_q3^3/Pi_q9 - 1)/3", "Gosper Lambert sums (d)", exact::gosper_d),
    ex("gosper_e", "sum q^(2n-1)/(1-q^(2n-1))^2 - 3 sum q^(6n-3)/(1-q^(6n-3))^2 = Pi_q3 Pi_q", "Gosper Lambert sums (e)", exact::gosper_e),
    ex("gosper_f", "6 sum q^(4n-2)/(1-q^(2n-1))^4 + sum q^(2n-1)/(1-q^(2n-1))^2 = Pi_q^4", "Gosper Lambert sums (f)", exact::gosper_f),
    ex("beyond_gosper", "sum (q^2n/(1-q^2n)^2 - q^6n/(1-q^6n)^2 - 2q^(6n-3)/(1-q^(6n-3))^2) = Pi_q3^3/Pi_q", "Lambert sum for Pi_q3^3/Pi_q", exact::beyond_gosper),
    ex("psi3_square", "(psi^3(q^3)/psi(q^9))^2 as a squared Lambert series and as a single Lambert sum", "square of the cubic theta ratio", exact::psi3_square),
    ex("psi4_square", "(q psi^4(q^2))^2 as a squared Lambert series and as a single Lambert sum", "square of q psi^4(q^2)", exact::psi4_square),
    ex("ram_psi4", "q psi^4(q^2) = sum (2n-1) q^(2n-1)/(1-q^(4n-2))", "Ramanujan, Lambert series for q psi^4(q^2)", exact::ram_psi4),
    ex("ram_psi3_ratio", "psi^3(q)/psi(q^3) = 1 + 3 sum (q^(6n-5)/(1-q^(6n-5)) - q^(6n-1)/(1-q^(6n-1)))", "Ramanujan, Lambert series for psi^3(q)/psi(q^3)", exact::ram_psi3_ratio),
    ex("sigma_odd_psi4", "q psi^4(q^2) = sum sigma(2n+1) q^(2n+1)", "Ramanujan, odd divisor sums", exact::sigma_odd_psi4),
    ex("easy_gosper", "sum q^(2n-1)/(1-q^(2n-1))^2 - 2 sum q^(4n-2)/(1-q^(4n-2))^2 = Pi_q2^2", "Lambert sum for Pi_q2^2", exact::easy_gosper),
    ex("pi_triple_rel", "Pi_q^2 Pi_q4 = Pi_q2^3 + 4 Pi_q2 Pi_q4^2", "relation among Pi_q, Pi_q2, Pi_q4", exact::pi_triple_rel),
    ex("pi124", "Pi_q^2/(Pi_q2 Pi_q4) - Pi_q2^2/Pi_q4^2 = 4", "Gosper, from the duplication formulas", exact::pi124),
    ex("psi8_lambert", "psi^8(q) = sum n^3 q^(n-1)/(1-q^2n)", "Ramanujan, Lambert series for psi^8(q)", exact::psi8_lambert),
    ex("int_psi4_log", "-1/2 log(psi(-q)/psi(q)) = sum q^(2n-1)/((2n-1)(1-q^(4n-2))), an antiderivative of psi^4(q^2)", "Ramanujan theta integral, psi^4(q^2)", exact::int_psi4_log),
    ex("int_psi2psi2_log", "two forms of an antiderivative of psi^2(q) psi^2(q^3)", "Ramanujan theta integral, psi^2(q) psi^2(q^3)", exact::int_psi2psi2_log),
    ex("integral_a", "antiderivative of psi^8(q)", "theta integrals (a)", exact::integral_a),
    ex("integral_b", "two antiderivatives of psi^8(q)/(q psi^4(q^2)) with log q", "theta integrals (b)", exact::integral_b),
    ex("integral_c", "antiderivative of psi^8(q^2)/(q psi^4(q^4)) with log q", "theta integrals (c)", exact::integral_c),
    ex("integral_d", "antiderivative of q psi^6(q^3)/psi^2(q)", "theta integrals (d)", exact::integral_d),
    ex("integral_e", "antiderivative of psi^6(q^3)/(q psi^2(q^9)) with log q, numerator -2 + q^6n + q^12n", "theta integrals (e), corrected", exact::integral_e),
    ex("integral_f", "antiderivative of psi^6(q)/(q psi^2(q^3)) with log q, corrected coefficients", "theta integrals (f), corrected", exact::integral_f),
    ex("sinq_expansion_u2", "u^2 coefficient of prod (1 - u^2 q^2n/(1-q^2n)^2)", "sin_q expansion in q^-z - q^z", exact::sinq_expansion_u2),
    ex("sinq_expansion_u4", "u^4 coefficient of prod (1 - u^2 q^2n/(1-q^2n)^2)", "sin_q expansion in q^-z - q^z", exact::sinq_expansion_u4),
    ex("cosq_expansion_u2", "u^2 coefficient of prod (1 - u^2 q^(2n-1)/(1-q^(2n-1))^2)", "cos_q expansion in q^-z - q^z", exact::cosq_expansion_u2),
    ex("cosq_expansion_u4", "u^4 coefficient of prod (1 - u^2 q^(2n-1)/(1-q^(2n-1))^2)", "cos_q expansion in q^-z - q^z", exact::cosq_expansion_u4),
    ex("divisor_gen_1_0", "sum sigma*_{0(1)}(n) q^n = sum q^n/(1-q^n)^2", "restricted divisor sums", exact::divisor_gen_1_0),
    ex("divisor_gen_2_0", "sum sigma*_{0(2)}(n) q^n = sum q^2n/(1-q^2n)^2", "restricted divisor sums", exact::divisor_gen_2_0),
    ex("divisor_gen_2_1", "sum sigma*_{1(2)}(n) q^n = sum q^(2n+1)/(1-q^(2n+1))^2", "restricted divisor sums", exact::divisor_gen_2_1),
    ex("divisor_gen_4_2", "sum sigma*_{2(4)}(n) q^n = sum q^(4n+2)/(1-q^(4n+2))^2", "restricted divisor sums", exact::divisor_gen_4_2),
    ex("divisor_gen_3_0", "sum sigma*_{0(3)}(n) q^n = sum q^3n/(1-q^3n)^2", "restricted divisor sums", exact::divisor_gen_3_0),
    ex("divisor_gen_6_3", "sum sigma*_{3(6)}(n) q^n = sum q^(6n+3)/(1-q^(6n+3))^2", "restricted divisor sums", exact::divisor_gen_6_3),
    ex("divisor_gen_18_9", "sum sigma*_{9(18)}(n) q^n = sum q^(18n+9)/(1-q^(18n+9))^2", "restricted divisor sums", exact::divisor_gen_18_9),
    ex_fail("integral_e_printed", "antiderivative (e) with numerator -2 + 3q^6n + q^12n, which is off from q^6", "theta integrals (e), as printed", exact::integral_e_printed),
    ex_fail("integral_f_printed", "antiderivative (f) with numerators 6 + 9q^2n + 9q^4n and 3 - 12q^(2n-1) - 12q^(4n-2)", "theta integrals (f), as printed", exact::integral_f_printed),
    nu("q_double_sq", "4 Pi_q4^2/Pi_q^2 sin_q^2(2z) = sin_q4^2(z) - sin_q2^4(z)", "Gosper q-Double, squared", num::q_double_sq),
    nu("q_double2", "sin_q(2z) = Pi_q/Pi_q2 sin_q2(z) cos_q2(z)", "Gosper q-Double_2", num::q_double2),
    nu("q_double3", "cos_q(2z) = cos_q2^2(z) - sin_q2^2(z)", "Gosper q-Double_3", num::q_double3),
    nu("q_double4_sq", "4 Pi_q4^2/Pi_q^2 cos_q^2(2z) = sin_q4^2(1/4 - z) - sin_q2^4(1/4 - z)", "Gosper q-Double_4, squared via the quarter-period shift", num::q_double4_sq),
    nu("q_double5", "cos_q(2z) = cos_q^4(z) - sin_q^4(z)", "Gosper q-Double_5", num::q_double5),
    nu("q_triple", "sin_q(3z) = c sin_q9(z) - (1 + c) sin_q3^3(z), c = Pi_q/(3 Pi_q9)", "Gosper q-Triple", num::q_triple),
    nu("q_triple2", "sin_q(3z) = Pi_q/Pi_q3 cos_q3^2(z) sin_q3(z) - sin_q3^3(z)", "Gosper q-Triple_2", num::q_triple2),
    nu("q_add3_corrected", "sin_q3(y) sin_q(2x-y) - sin_q3(x) sin_q(2y-x) = cos_q3(x) cos_q(2y-x) - cos_q3(y) cos_q(2x-y)", "Gosper q-Add_3, repaired", num::q_add3_corrected),
    nu("q_add3_specialized", "sin_q3(z) sin_q(3z) = cos_q3(2z) - cos_q3(z) cos_q(3z)", "q-Add_3 at y = 2x", num::q_add3_specialized),
    nu("deriv_sin1", "sin_q'(0) = -2 ln q Pi_q / pi", "derivatives of sin_q, cos_q at 0", num::deriv_sin1),
    nu("deriv_sin3", "sin_q'''(0) = -2 (ln q)^2 Pi_q (6 + ln q - 24 ln q A) / pi^3", "derivatives of sin_q, cos_q at 0", num::deriv_sin3),
    nu("deriv_cos2", "cos_q''(0) = 2 ln q (1 - 4 ln q B) / pi^2", "derivatives of sin_q, cos_q at 0", num::deriv_cos2),
    nu("deriv_cos4", "cos_q''''(0) = 4 (ln q)^2 (3 - 8 (ln q)^2 B - 24 ln q B + 48 (ln q)^2 (B^2 - C)) / pi^4", "derivatives of sin_q, cos_q at 0", num::deriv_cos4),
    nu("parity_symmetry", "sin_q odd, cos_q even, cos_q(w) = sin_q(pi/2 - w)", "symmetries of sin_q, cos_q", num::parity_symmetry),
    nu("pi_limit", "(1 - q^2) Pi_q approaches pi as q -> 1", "limit of Pi_q", num::pi_limit),
    nu_fail("q_double4_printed", "4 Pi_q4^2/Pi_q^2 cos_q^2(2z) = cos_q4^2(z) - cos_q2^4(z), false at z = 0", "Gosper q-Double_4 as printed", num::q_double4_printed),
    nu_fail("q_add3_printed", "addition formula whose right side is X - X", "Gosper q-Add_3 as printed", num::q_add3_printed),
];

/// Every identity, exact entries first, in a fixed order.
pub fn list_identities() -> &'static [IdentityRecord] {
    CATALOG
}

pub fn find(id: &str) -> Result<&'static IdentityRecord, Error> {
    CATALOG.iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Parameters shared by every check in a run.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Exact checks compare through `q^terms`.
    pub terms: i64,
    /// Decimal working precision of numeric checks.
    pub precision: u32,
    pub samples: SampleSet,
    pub execution: Execution,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { terms: 128, precision: 128, samples: SampleSet::default(), execution: Execution::default() }
    }
}

/// Extra orders built beyond the request, retried when a quotient eats into the window.
const SLACK: [i64; 3] = [4, 16, 64];

/// Checks an exact identity through `q^t`.
pub fn check_exact(id: &str, t: i64) -> Result<CheckReport, Error> {
    let rec = find(id)?;
    match rec.builder {
        Builder::Exact(b) => check_exact_with(rec.id, b, t),
        Builder::Numeric(_) => Err(Error::KindMismatch { id: id.to_string(), expected: Kind::Exact }),
    }
}

/// Runs the exact comparison for an arbitrary builder.
pub fn check_exact_with<B>(id: &str, builder: B, t: i64) -> Result<CheckReport, Error>
where
    B: Fn(i64) -> Result<Vec<Equation>, Error>,
{
    let start = Instant::now();
    let wanted = q_end(t);
    let mut equations = Vec::new();
    for extra in SLACK {
        equations = builder(t + extra)?;
        if common_end(&equations) >= wanted {
            break;
        }
    }
    let end = common_end(&equations).min(wanted);
    let lo = equations.iter().flat_map(|e| [e.lhs.prefix(), e.rhs.prefix()]).min().unwrap_or(0).min(end);
    let mut status = if end < wanted { Status::WindowTooSmall } else { Status::Pass };
    let mut first_failure = None;
    for eq in &equations {
        let lhs = eq.lhs.truncate(end);
        let rhs = eq.rhs.truncate(end);
        if let Some(k) = lhs.first_difference(&rhs) {
            let coeff = |s: &crate::PrefSeries| s.get(k).map_or_else(|| "?".to_string(), |c| rat_string(&c));
            first_failure = Some(Failure {
                at: exponent_string(k),
                lhs: coeff(&lhs),
                rhs: coeff(&rhs),
                equation: eq.label.to_string(),
            });
            status = Status::Fail;
            break;
        }
    }
    Ok(CheckReport {
        id: id.to_string(),
        kind: Kind::Exact,
        window: Window::quarters(lo, end),
        status,
        first_failure,
        max_residual: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn common_end(equations: &[Equation]) -> i64 {
    equations.iter().map(|e| e.lhs.end().min(e.rhs.end())).min().unwrap_or(i64::MIN)
}

/// Residuals of a numeric identity at each comparison point.
pub fn numeric_residuals(id: &str, samples: &SampleSet, precision: u32) -> Result<Vec<SampleResidual>, Error> {
    let rec = find(id)?;
    let Builder::Numeric(eval) = rec.builder else {
        return Err(Error::KindMismatch { id: id.to_string(), expected: Kind::Numeric });
    };
    let ctx = Ctx::new(precision)?;
    let resolved = samples.resolve(&ctx)?;
    eval(&ctx, &resolved)
}

/// Checks a numeric identity at every sample.
pub fn check_numeric(id: &str, samples: &SampleSet, precision: u32) -> Result<CheckReport, Error> {
    let start = Instant::now();
    let residuals = numeric_residuals(id, samples, precision)?;
    let failure = residuals.iter().find(|r| !r.passed()).map(|r| Failure {
        at: r.label.clone(),
        lhs: r.lhs.to_decimal(30),
        rhs: r.rhs.to_decimal(30),
        equation: format!("residual {} above {}", scientific_from_log10(r.residual_log10), scientific_from_log10(r.tolerance_log10)),
    });
    let worst = residuals.iter().map(|r| r.residual_log10).fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckReport {
        id: id.to_string(),
        kind: Kind::Numeric,
        window: Window::Numeric { precision, samples: residuals.len() },
        status: if failure.is_some() { Status::Fail } else { Status::Pass },
        first_failure: failure,
        max_residual: Some(scientific_from_log10(worst)),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Checks one identity of either kind.
pub fn check(id: &str, config: &CheckConfig) -> Result<CheckReport, Error> {
    match find(id)?.kind() {
        Kind::Exact => check_exact(id, config.terms),
        Kind::Numeric => check_numeric(id, &config.samples, config.precision),
    }
}

/// Report for a check that could not run at all.
fn error_report(rec: &IdentityRecord, err: &Error, config: &CheckConfig) -> CheckReport {
    let window = match rec.kind() {
        Kind::Exact => Window::quarters(0, q_end(config.terms)),
        Kind::Numeric => Window::Numeric { precision: config.precision, samples: 0 },
    };
    CheckReport {
        id: rec.id.to_string(),
        kind: rec.kind(),
        window,
        status: Status::Fail,
        first_failure: Some(Failure { at: "error".into(), lhs: err.to_string(), rhs: String::new(), equation: String::new() }),
        max_residual: None,
        elapsed_ms: 0,
    }
}

/// Runs the given identities, in order, failing a report instead of the run on errors.
pub fn check_many(records: &[&IdentityRecord], config: &CheckConfig) -> Vec<CheckReport> {
    map_slice(records, config.execution, |rec| {
        check(rec.id, config).unwrap_or_else(|e| error_report(rec, &e, config))
    })
}

/// Runs every identity of the given kind (or all kinds) that is expected to pass.
pub fn check_all(kind: Option<Kind>, config: &CheckConfig) -> Vec<CheckReport> {
    let selected: Vec<&IdentityRecord> =
        CATALOG.iter().filter(|r| !r.expected_fail && kind.is_none_or(|k| r.kind() == k)).collect();
    check_many(&selected, config)
}
