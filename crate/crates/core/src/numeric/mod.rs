//! Arbitrary-precision evaluation of Gosper's q-trigonometric functions.
//!
//! Function arguments follow the `w = pi z` convention: [`bf_sinq`] takes `z`
//! and returns `sin_q(pi z)`. Powers `q^x` are always taken through a fixed
//! logarithm of the nome, so `q^m` and its fractional powers stay on one
//! branch for complex `q`.

pub mod bigfloat;
pub mod identities;

use thiserror::Error;

pub use bigfloat::{BigComplex, Ctx, Precision, MIN_DIGITS};

use crate::lambert::LambertSpec;

/// Guard digits between the working precision and the pass tolerance.
pub const GUARD_DIGITS: u32 = 20;

/// Upper bound on the number of factors or summands one evaluation may use.
pub const TERM_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("precision must be at least {MIN_DIGITS} digits, got {0}")]
    InvalidPrecision(u32),
    #[error("cannot parse complex number {0:?}")]
    Parse(String),
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("precision underflow: {0}")]
    PrecisionUnderflow(String),
    #[error("finite-difference step too small: needs {needed} digits, have {available}")]
    StepTooSmall { needed: u32, available: u32 },
    #[error("argument outside the domain: {0}")]
    Domain(String),
}

/// A nome `q` with `0 < |q| < 1`, its logarithm, and the two products every
/// q-trigonometric evaluation needs.
#[derive(Debug, Clone)]
pub struct Nome {
    value: BigComplex,
    log: BigComplex,
    /// `(q; q^2)_inf`
    odd: BigComplex,
    /// `psi(q) = (q^2; q^2)_inf / (q; q^2)_inf`
    psi: BigComplex,
}

impl Nome {
    /// Nome from its value, on the principal branch of the logarithm.
    pub fn new(ctx: &Ctx, q: &BigComplex) -> Result<Self, NumericError> {
        let log = ctx.ln(q)?;
        Self::from_parts(ctx, q.with_precision(ctx.precision()), log)
    }

    pub fn parse(ctx: &Ctx, s: &str) -> Result<Self, NumericError> {
        Self::new(ctx, &ctx.parse(s)?)
    }

    fn from_parts(ctx: &Ctx, value: BigComplex, log: BigComplex) -> Result<Self, NumericError> {
        if log.re_f64() >= 0.0 {
            return Err(NumericError::Domain(format!("|q| must be below 1, got q = {}", value.to_decimal(12))));
        }
        let q2 = &value * &value;
        let odd = bf_pochhammer(ctx, &value, &q2)?;
        let psi = psi_ratio_product(ctx, &value)?;
        Ok(Nome { value, log, odd, psi })
    }

    /// `q^m`, whose logarithm is `m log q`.
    pub fn power(&self, ctx: &Ctx, m: u32) -> Result<Self, NumericError> {
        Self::from_parts(ctx, self.value.powi(m), self.log.mul_i64(m as i64))
    }

    pub fn value(&self) -> &BigComplex {
        &self.value
    }

    pub fn log(&self) -> &BigComplex {
        &self.log
    }

    /// `q^x` on this nome's branch.
    pub fn pow(&self, ctx: &Ctx, x: &BigComplex) -> BigComplex {
        ctx.pow_with_log(&self.log, x)
    }
}

/// `prod_{i >= 0} (1 - c step^i)`, cut once `|c step^i| < 10^{-(P+10)}`.
pub fn bf_pochhammer(ctx: &Ctx, c: &BigComplex, step: &BigComplex) -> Result<BigComplex, NumericError> {
    let step_mag = step.log10_abs();
    if step_mag >= 0.0 {
        return Err(NumericError::PrecisionUnderflow(format!(
            "product step has modulus {} >= 1",
            10f64.powf(step_mag)
        )));
    }
    let mut result = ctx.one();
    if c.is_zero() {
        return Ok(result);
    }
    let cutoff = -((ctx.digits() + 10) as f64);
    let c_mag = c.log10_abs();
    let needed = ((c_mag - cutoff) / -step_mag).max(0.0).ceil();
    if needed > TERM_BUDGET as f64 {
        return Err(NumericError::PrecisionUnderflow(format!(
            "product would need about {needed:.0} factors (budget {TERM_BUDGET})"
        )));
    }
    let one = ctx.one();
    let mut term = c.with_precision(ctx.precision());
    while term.log10_abs() >= cutoff {
        result = &result * &(&one - &term);
        term = &term * step;
    }
    Ok(result)
}

/// `psi(q) = prod_{n >= 1} (1 - q^{2n}) / (1 - q^{2n-1})`.
///
/// Near `|q| = 1` both Pochhammer products underflow the fixed binary point
/// while their ratio stays moderate; pairing the factors keeps every partial
/// product between 1 and `psi(|q|)`.
fn psi_ratio_product(ctx: &Ctx, q: &BigComplex) -> Result<BigComplex, NumericError> {
    let cutoff = -((ctx.digits() + 10) as f64);
    let q_mag = q.log10_abs();
    let needed = (-cutoff / -q_mag).ceil();
    if needed > TERM_BUDGET as f64 {
        return Err(NumericError::PrecisionUnderflow(format!(
            "psi product would need about {needed:.0} factors (budget {TERM_BUDGET})"
        )));
    }
    let one = ctx.one();
    let q2 = q * q;
    let mut odd = q.with_precision(ctx.precision());
    let mut result = ctx.one();
    while odd.log10_abs() >= cutoff {
        let even = &odd * q;
        result = &(&result * &(&one - &even)) / &(&one - &odd);
        odd = &odd * &q2;
    }
    Ok(result)
}

/// `sin_q(pi z) = q^{(z-1/2)^2} (q^{2z}; q^2)_inf (q^{2-2z}; q^2)_inf / (q; q^2)_inf^2`.
pub fn bf_sinq(ctx: &Ctx, q: &Nome, z: &BigComplex) -> Result<BigComplex, NumericError> {
    let half = ctx.one().div_i64(2);
    let q2 = &q.value * &q.value;
    let two_z = z.mul_i64(2);
    let shift = z - &half;
    let a = bf_pochhammer(ctx, &q.pow(ctx, &two_z), &q2)?;
    let b = bf_pochhammer(ctx, &q.pow(ctx, &(&ctx.int(2) - &two_z)), &q2)?;
    let pre = q.pow(ctx, &(&shift * &shift));
    Ok(&(&pre * &(&a * &b)) / &(&q.odd * &q.odd))
}

/// `cos_q(pi z) = q^{z^2} (q^{1+2z}; q^2)_inf (q^{1-2z}; q^2)_inf / (q; q^2)_inf^2`.
pub fn bf_cosq(ctx: &Ctx, q: &Nome, z: &BigComplex) -> Result<BigComplex, NumericError> {
    let q2 = &q.value * &q.value;
    let two_z = z.mul_i64(2);
    let one = ctx.one();
    let a = bf_pochhammer(ctx, &q.pow(ctx, &(&one + &two_z)), &q2)?;
    let b = bf_pochhammer(ctx, &q.pow(ctx, &(&one - &two_z)), &q2)?;
    let pre = q.pow(ctx, &(z * z));
    Ok(&(&pre * &(&a * &b)) / &(&q.odd * &q.odd))
}

/// `Pi_q = q^{1/4} (q^2; q^2)_inf^2 / (q; q^2)_inf^2`.
pub fn bf_gosper_pi(ctx: &Ctx, q: &Nome) -> BigComplex {
    let quarter = q.log.div_i64(4);
    &ctx.exp(&quarter) * &(&q.psi * &q.psi)
}

/// Numerical value of a Lambert series at `q`.
///
/// With `drop_constant`, a summand whose numerator is `q^0` contributes
/// `c (1/(1-x)^p - 1)`, matching the exact expansion.
pub fn bf_lambert(ctx: &Ctx, q: &Nome, spec: &LambertSpec) -> Result<BigComplex, crate::Error> {
    spec.validate()?;
    let digits = ctx.digits();
    let cutoff = -((digits + 10) as f64);
    let qv = &q.value;
    let n0 = spec.n_start;
    let den = spec.denominator;
    let mut den_pow = qv.powi((den.gamma * n0 + den.delta) as u32);
    let den_step = qv.powi(den.gamma as u32);
    let mut num_pows: Vec<BigComplex> =
        spec.numerators.iter().map(|t| qv.powi((t.alpha * n0 + t.beta) as u32)).collect();
    let num_steps: Vec<BigComplex> = spec.numerators.iter().map(|t| qv.powi(t.alpha as u32)).collect();
    let coefs: Vec<BigComplex> = spec.numerators.iter().map(|t| ctx.rat(&t.coef)).collect();
    let one = ctx.one();
    let mut sum = ctx.zero();
    let mut small_run = 0;
    let mut n = n0;
    loop {
        let inv = (&one / &(&one - &den_pow)).powi(den.power);
        let mut summand = ctx.zero();
        for (i, t) in spec.numerators.iter().enumerate() {
            let term = if spec.drop_constant && t.alpha * n + t.beta == 0 {
                &coefs[i] * &(&inv - &one)
            } else {
                &coefs[i] * &(&num_pows[i] * &inv)
            };
            summand = &summand + &term;
        }
        let w = ctx.rat(&spec.weight.eval(n));
        let summand = &summand * &w;
        sum = &sum + &summand;
        // Summands decay geometrically; a few consecutive negligible ones end the sum.
        if summand.log10_abs() < cutoff {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        if (n - n0) as u64 > TERM_BUDGET {
            return Err(NumericError::PrecisionUnderflow(format!("Lambert sum exceeded {TERM_BUDGET} terms")).into());
        }
        for (p, s) in num_pows.iter_mut().zip(&num_steps) {
            *p = &*p * s;
        }
        den_pow = &den_pow * &den_step;
        n += 1;
    }
    Ok(sum)
}

/// Central-difference estimate with its Richardson error estimate.
#[derive(Debug, Clone)]
pub struct FdEstimate {
    pub value: BigComplex,
    /// `log10` of the difference between the last two extrapolants.
    pub error_log10: f64,
}

/// Number of step sizes in the Richardson table (steps `h, h/2, ..., h/16`).
pub const RICHARDSON_LEVELS: u32 = 5;

/// The default step `10^{-P/8}`.
pub fn default_step(ctx: &Ctx) -> BigComplex {
    ctx.pow10_neg(ctx.digits() / 8)
}

fn binomial(k: u32, j: u32) -> i64 {
    (0..j).fold(1i64, |acc, i| acc * (k - i) as i64 / (i + 1) as i64)
}

/// `f^{(k)}(w0)` for `k <= 4` by central differences and Richardson extrapolation.
pub fn fd_derivative<F>(ctx: &Ctx, f: F, w0: &BigComplex, k: u32, h: &BigComplex) -> Result<FdEstimate, crate::Error>
where
    F: Fn(&BigComplex) -> Result<BigComplex, crate::Error>,
{
    if k == 0 || k > 4 {
        return Err(crate::Error::InvalidArgument(format!("derivative order must be 1..=4, got {k}")));
    }
    let digits = ctx.digits() as f64;
    let smallest = h.log10_abs() - ((RICHARDSON_LEVELS - 1) as f64) * std::f64::consts::LOG10_2;
    // Rounding error of the k-th difference is roughly 2^k 10^{-P} / h^k.
    let lost = (k as f64) * (-smallest) + (k as f64) * std::f64::consts::LOG10_2;
    if lost.is_nan() || lost + 2.0 >= digits {
        return Err(NumericError::StepTooSmall { needed: lost.ceil() as u32 + 2, available: ctx.digits() }.into());
    }
    let mut table: Vec<Vec<BigComplex>> = Vec::new();
    let mut step = h.clone();
    for level in 0..RICHARDSON_LEVELS {
        let mut acc = ctx.zero();
        for j in 0..=k {
            // Node offset (k/2 - j) h, doubled to stay integral for odd k.
            let offset = &step.mul_i64(k as i64 - 2 * j as i64).div_i64(2);
            let value = f(&(w0 + offset))?;
            let c = binomial(k, j) * if j % 2 == 0 { 1 } else { -1 };
            acc = &acc + &value.mul_i64(c);
        }
        let d = &acc / &step.powi(k);
        let mut row = vec![d];
        for col in 1..=level as usize {
            let factor = 4i64.pow(col as u32) - 1;
            let prev = &table[level as usize - 1][col - 1];
            let cur = &row[col - 1];
            let next = cur + &(cur - prev).div_i64(factor);
            row.push(next);
        }
        table.push(row);
        step = step.div_i64(2);
    }
    let last = table.last().and_then(|r| r.last()).cloned().unwrap_or_else(|| ctx.zero());
    let prev = &table[table.len() - 2][table.len() - 2];
    let error_log10 = (&last - prev).log10_abs();
    Ok(FdEstimate { value: last, error_log10 })
}

/// Pass threshold exponent `P - G` for direct numeric comparisons.
pub fn tolerance_digits(digits: u32) -> f64 {
    digits.saturating_sub(GUARD_DIGITS) as f64
}

/// Pass threshold exponent for finite-difference comparisons.
pub fn derivative_tolerance_digits(digits: u32) -> f64 {
    let half = (digits / 2).saturating_sub(GUARD_DIGITS);
    half.max(digits / 4) as f64
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn ctx(d: u32) -> Ctx {
        Ctx::new(d).unwrap()
    }

    fn close(a: &BigComplex, b: &BigComplex, digits: f64) -> bool {
        (a - b).log10_abs() < -digits
    }

    #[test]
    fn pochhammer_basics() {
        let c = ctx(40);
        let half = c.parse("0.5").unwrap();
        assert_eq!(bf_pochhammer(&c, &c.zero(), &half).unwrap(), c.one());
        assert!(matches!(
            bf_pochhammer(&c, &half, &c.int(1)),
            Err(NumericError::PrecisionUnderflow(_))
        ));
        let tiny_gap = c.parse("0.99999999").unwrap();
        assert!(matches!(bf_pochhammer(&c, &half, &tiny_gap), Err(NumericError::PrecisionUnderflow(_))));
    }

    #[test]
    fn sinq_special_values() {
        let c = ctx(50);
        for qs in ["0.3", "0.25+0.1i"] {
            let q = Nome::parse(&c, qs).unwrap();
            assert!(bf_sinq(&c, &q, &c.zero()).unwrap().is_zero());
            let half = c.rat(&ratio(1, 2));
            assert!(close(&bf_sinq(&c, &q, &half).unwrap(), &c.one(), 45.0));
            assert!(bf_cosq(&c, &q, &half).unwrap().log10_abs() < -45.0);
        }
    }

    #[test]
    fn gosper_pi_real_positive() {
        let c = ctx(40);
        let q = Nome::parse(&c, "0.4").unwrap();
        let p = bf_gosper_pi(&c, &q);
        assert!(p.re_f64() > 0.0 && p.im_f64() == 0.0);
    }

    #[test]
    fn nome_rejects_outside_disc() {
        let c = ctx(30);
        assert!(Nome::parse(&c, "1.01").is_err());
        assert!(Nome::parse(&c, "0").is_err());
    }

    #[test]
    fn fd_smoke() {
        let c = ctx(64);
        let h = default_step(&c);
        let cube = |w: &BigComplex| Ok(w.powi(3));
        let d3 = fd_derivative(&c, cube, &c.parse("0.7").unwrap(), 3, &h).unwrap();
        assert!(close(&d3.value, &c.int(6), 25.0));
        let sq = |w: &BigComplex| Ok(w * w);
        let d1 = fd_derivative(&c, sq, &c.one(), 1, &h).unwrap();
        assert!(close(&d1.value, &c.int(2), 25.0));
        let cos = |w: &BigComplex| {
            let i = BigComplex::from_f64(0.0, 1.0, w.precision());
            let e = c.exp(&(&i * w));
            Ok((&e + &e.conj()).div_i64(2))
        };
        let d2 = fd_derivative(&c, cos, &c.zero(), 2, &h).unwrap();
        assert!(close(&d2.value, &c.int(-1), 20.0));
        assert!(d2.error_log10 < -20.0);
        assert!(fd_derivative(&c, cube, &c.zero(), 5, &h).is_err());
        let huge_step = c.pow10_neg(60);
        assert!(matches!(
            fd_derivative(&c, cube, &c.zero(), 4, &huge_step),
            Err(crate::Error::Numeric(NumericError::StepTooSmall { .. }))
        ));
    }
}
