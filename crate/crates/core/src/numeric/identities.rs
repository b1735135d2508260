//! Numeric identity catalog: q-trigonometric multiple-angle and addition
//! formulas, derivatives at the origin, symmetries and the `Pi_q` limit.
//!
//! Every evaluator returns one [`SampleResidual`] per comparison; the
//! registry turns them into a report.

use serde::{Deserialize, Serialize};

use super::{
    bf_cosq, bf_gosper_pi, bf_lambert, bf_sinq, default_step, derivative_tolerance_digits, fd_derivative,
    tolerance_digits, BigComplex, Ctx, Nome,
};
use crate::lambert::LambertSpec;
use crate::series::rat;
use crate::Error;

/// Largest `|q|` accepted in a sample set; keeps every product under a few thousand factors.
pub const MAX_SAMPLE_MODULUS: f64 = 0.9;

/// Sample points as decimal strings, resolved at the working precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSet {
    pub q: Vec<String>,
    pub z: Vec<String>,
    pub xy: Vec<(String, String)>,
}

impl Default for SampleSet {
    fn default() -> Self {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
        SampleSet {
            q: s(&["0.2", "0.35", "0.25+0.1i"]),
            z: s(&["0.17", "0.37"]),
            xy: vec![("0.21".into(), "0.34".into())],
        }
    }
}

impl SampleSet {
    pub fn len_single(&self) -> usize {
        self.q.len() * self.z.len()
    }

    pub fn resolve(&self, ctx: &Ctx) -> Result<Samples, Error> {
        let mut nomes = Vec::new();
        for qs in &self.q {
            let value = ctx.parse(qs)?;
            let modulus = value.norm_sqr().re_f64().sqrt();
            if !(modulus > 0.0 && modulus <= MAX_SAMPLE_MODULUS) {
                return Err(Error::InvalidArgument(format!(
                    "sample q = {qs} must satisfy 0 < |q| <= {MAX_SAMPLE_MODULUS}"
                )));
            }
            nomes.push((qs.clone(), Nome::new(ctx, &value)?));
        }
        let z = self.z.iter().map(|s| Ok((s.clone(), ctx.parse(s)?))).collect::<Result<Vec<_>, Error>>()?;
        let xy = self
            .xy
            .iter()
            .map(|(a, b)| Ok((format!("x={a}, y={b}"), ctx.parse(a)?, ctx.parse(b)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Samples { nomes, z, xy })
    }
}

/// A [`SampleSet`] parsed at one precision.
#[derive(Debug, Clone)]
pub struct Samples {
    pub nomes: Vec<(String, Nome)>,
    pub z: Vec<(String, BigComplex)>,
    pub xy: Vec<(String, BigComplex, BigComplex)>,
}

/// One comparison of two numerically evaluated sides.
#[derive(Debug, Clone)]
pub struct SampleResidual {
    pub label: String,
    pub lhs: BigComplex,
    pub rhs: BigComplex,
    pub residual_log10: f64,
    /// The comparison passes when `residual_log10 <= tolerance_log10`.
    pub tolerance_log10: f64,
}

impl SampleResidual {
    fn new(label: String, lhs: BigComplex, rhs: BigComplex, tolerance_log10: f64) -> Self {
        let residual_log10 = (&lhs - &rhs).log10_abs();
        SampleResidual { label, lhs, rhs, residual_log10, tolerance_log10 }
    }

    pub fn passed(&self) -> bool {
        self.residual_log10 <= self.tolerance_log10
    }
}

pub type NumericEval = fn(&Ctx, &Samples) -> Result<Vec<SampleResidual>, Error>;

type Side = (BigComplex, BigComplex);

/// Runs `f` on every `(q, z)` pair at the standard tolerance.
fn over_qz<F>(ctx: &Ctx, s: &Samples, f: F) -> Result<Vec<SampleResidual>, Error>
where
    F: Fn(&Ctx, &Nome, &BigComplex) -> Result<Vec<(&'static str, Side)>, Error>,
{
    let tol = -tolerance_digits(ctx.digits());
    let mut out = Vec::new();
    for (ql, q) in &s.nomes {
        for (zl, z) in &s.z {
            for (name, (lhs, rhs)) in f(ctx, q, z)? {
                let label = if name.is_empty() { format!("q={ql}, z={zl}") } else { format!("q={ql}, z={zl}, {name}") };
                out.push(SampleResidual::new(label, lhs, rhs, tol));
            }
        }
    }
    Ok(out)
}

fn over_xy<F>(ctx: &Ctx, s: &Samples, f: F) -> Result<Vec<SampleResidual>, Error>
where
    F: Fn(&Ctx, &Nome, &BigComplex, &BigComplex) -> Result<Side, Error>,
{
    let tol = -tolerance_digits(ctx.digits());
    let mut out = Vec::new();
    for (ql, q) in &s.nomes {
        for (xyl, x, y) in &s.xy {
            let (lhs, rhs) = f(ctx, q, x, y)?;
            out.push(SampleResidual::new(format!("q={ql}, {xyl}"), lhs, rhs, tol));
        }
    }
    Ok(out)
}

fn sin(ctx: &Ctx, q: &Nome, z: &BigComplex) -> Result<BigComplex, Error> {
    Ok(bf_sinq(ctx, q, z)?)
}

fn cos(ctx: &Ctx, q: &Nome, z: &BigComplex) -> Result<BigComplex, Error> {
    Ok(bf_cosq(ctx, q, z)?)
}

fn sq(x: &BigComplex) -> BigComplex {
    x * x
}

/// `4 Pi_{q^4}^2 / Pi_q^2`, the square of the radical's prefactor.
fn double_prefactor(ctx: &Ctx, q: &Nome, q4: &Nome) -> BigComplex {
    let ratio = &bf_gosper_pi(ctx, q4) / &bf_gosper_pi(ctx, q);
    sq(&ratio).mul_i64(4)
}

/// `sin_{q^4}^2(z) - sin_{q^2}^4(z)`
fn double_radicand(ctx: &Ctx, q2: &Nome, q4: &Nome, z: &BigComplex) -> Result<BigComplex, Error> {
    Ok(&sq(&sin(ctx, q4, z)?) - &sq(&sq(&sin(ctx, q2, z)?)))
}

pub fn q_double_sq(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let (q2, q4) = (q.power(ctx, 2)?, q.power(ctx, 4)?);
        let lhs = &sq(&sin(ctx, q, &z.mul_i64(2))?) * &double_prefactor(ctx, q, &q4);
        Ok(vec![("", (lhs, double_radicand(ctx, &q2, &q4, z)?))])
    })
}

pub fn q_double2(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let q2 = q.power(ctx, 2)?;
        let lhs = sin(ctx, q, &z.mul_i64(2))?;
        let factor = &bf_gosper_pi(ctx, q) / &bf_gosper_pi(ctx, &q2);
        let rhs = &factor * &(&sin(ctx, &q2, z)? * &cos(ctx, &q2, z)?);
        Ok(vec![("", (lhs, rhs))])
    })
}

pub fn q_double3(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let q2 = q.power(ctx, 2)?;
        let lhs = cos(ctx, q, &z.mul_i64(2))?;
        let rhs = &sq(&cos(ctx, &q2, z)?) - &sq(&sin(ctx, &q2, z)?);
        Ok(vec![("", (lhs, rhs))])
    })
}

/// The cosine duplication in squared form, written through the quarter-period
/// shift `cos_q(2z) = sin_q(2(1/4 - z))`.
pub fn q_double4_sq(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let (q2, q4) = (q.power(ctx, 2)?, q.power(ctx, 4)?);
        let lhs = &sq(&cos(ctx, q, &z.mul_i64(2))?) * &double_prefactor(ctx, q, &q4);
        let shifted = &ctx.one().div_i64(4) - z;
        Ok(vec![("", (lhs, double_radicand(ctx, &q2, &q4, &shifted)?))])
    })
}

/// `4 Pi_{q^4}^2/Pi_q^2 cos_q^2(2z) = cos_{q^4}^2(z) - cos_{q^2}^4(z)`; false at `z = 0`.
pub fn q_double4_printed(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let (q2, q4) = (q.power(ctx, 2)?, q.power(ctx, 4)?);
        let lhs = &sq(&cos(ctx, q, &z.mul_i64(2))?) * &double_prefactor(ctx, q, &q4);
        let rhs = &sq(&cos(ctx, &q4, z)?) - &sq(&sq(&cos(ctx, &q2, z)?));
        Ok(vec![("", (lhs, rhs))])
    })
}

pub fn q_double5(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let lhs = cos(ctx, q, &z.mul_i64(2))?;
        let rhs = &sq(&sq(&cos(ctx, q, z)?)) - &sq(&sq(&sin(ctx, q, z)?));
        Ok(vec![("", (lhs, rhs))])
    })
}

pub fn q_triple(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let (q3, q9) = (q.power(ctx, 3)?, q.power(ctx, 9)?);
        let lhs = sin(ctx, q, &z.mul_i64(3))?;
        let c = (&bf_gosper_pi(ctx, q) / &bf_gosper_pi(ctx, &q9)).div_i64(3);
        let s3 = sin(ctx, &q3, z)?;
        let rhs = &(&c * &sin(ctx, &q9, z)?) - &(&(&ctx.one() + &c) * &s3.powi(3));
        Ok(vec![("", (lhs, rhs))])
    })
}

pub fn q_triple2(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let q3 = q.power(ctx, 3)?;
        let lhs = sin(ctx, q, &z.mul_i64(3))?;
        let c = &bf_gosper_pi(ctx, q) / &bf_gosper_pi(ctx, &q3);
        let s3 = sin(ctx, &q3, z)?;
        let rhs = &(&c * &(&sq(&cos(ctx, &q3, z)?) * &s3)) - &s3.powi(3);
        Ok(vec![("", (lhs, rhs))])
    })
}

/// `2x - y` and `2y - x`.
fn crossed(x: &BigComplex, y: &BigComplex) -> (BigComplex, BigComplex) {
    (&x.mul_i64(2) - y, &y.mul_i64(2) - x)
}

/// `sin_{q^3}y sin_q(2x-y) - sin_{q^3}x sin_q(2y-x) = cos_{q^3}x cos_q(2y-x) - cos_{q^3}y cos_q(2x-y)`
pub fn q_add3_corrected(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_xy(ctx, s, |ctx, q, x, y| {
        let q3 = q.power(ctx, 3)?;
        let (a, b) = crossed(x, y);
        let lhs = &(&sin(ctx, &q3, y)? * &sin(ctx, q, &a)?) - &(&sin(ctx, &q3, x)? * &sin(ctx, q, &b)?);
        let rhs = &(&cos(ctx, &q3, x)? * &cos(ctx, q, &b)?) - &(&cos(ctx, &q3, y)? * &cos(ctx, q, &a)?);
        Ok((lhs, rhs))
    })
}

/// The addition formula with right side `cos_{q^3}y cos_q(2x-y) - cos_{q^3}y cos_q(2x-y)`, taken literally.
pub fn q_add3_printed(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_xy(ctx, s, |ctx, q, x, y| {
        let q3 = q.power(ctx, 3)?;
        let (a, b) = crossed(x, y);
        let lhs = &(&sin(ctx, &q3, x)? * &sin(ctx, q, &b)?) - &(&sin(ctx, &q3, y)? * &sin(ctx, q, &a)?);
        let term = &cos(ctx, &q3, y)? * &cos(ctx, q, &a)?;
        #[allow(clippy::eq_op)]
        Ok((lhs, &term - &term))
    })
}

pub fn q_add3_specialized(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let q3 = q.power(ctx, 3)?;
        let lhs = &sin(ctx, &q3, z)? * &sin(ctx, q, &z.mul_i64(3))?;
        let rhs = &cos(ctx, &q3, &z.mul_i64(2))? - &(&cos(ctx, &q3, z)? * &cos(ctx, q, &z.mul_i64(3))?);
        Ok(vec![("", (lhs, rhs))])
    })
}

pub fn parity_symmetry(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    over_qz(ctx, s, |ctx, q, z| {
        let minus = -z;
        let odd = (sin(ctx, q, &minus)?, -sin(ctx, q, z)?);
        let even = (cos(ctx, q, &minus)?, cos(ctx, q, z)?);
        let quarter = (cos(ctx, q, z)?, sin(ctx, q, &(&ctx.one().div_i64(2) - z))?);
        Ok(vec![("sine odd", odd), ("cosine even", even), ("quarter shift", quarter)])
    })
}

/// Which function and derivative order a derivative check targets.
#[derive(Debug, Clone, Copy)]
enum Derivative {
    Sin1,
    Sin3,
    Cos2,
    Cos4,
}

/// `(sum q^{2n}/(1-q^{2n})^2, sum q^{2n-1}/(1-q^{2n-1})^2, sum q^{4n-2}/(1-q^{2n-1})^4)`
fn derivative_sums(ctx: &Ctx, q: &Nome) -> Result<[BigComplex; 3], Error> {
    let a = bf_lambert(ctx, q, &LambertSpec::simple(rat(1), 2, 0, 2, 0, 2))?;
    let b = bf_lambert(ctx, q, &LambertSpec::simple(rat(1), 2, -1, 2, -1, 2))?;
    let c = bf_lambert(ctx, q, &LambertSpec::simple(rat(1), 4, -2, 2, -1, 4))?;
    Ok([a, b, c])
}

fn closed_derivative(ctx: &Ctx, q: &Nome, which: Derivative) -> Result<BigComplex, Error> {
    let l = q.log();
    let pi = ctx.pi();
    let gp = bf_gosper_pi(ctx, q);
    let one = ctx.one();
    let [a, b, c] = derivative_sums(ctx, q)?;
    let l2 = l * l;
    Ok(match which {
        Derivative::Sin1 => -&(&l.mul_i64(2) * &gp) / pi,
        Derivative::Sin3 => {
            let inner = &(&ctx.int(6) + l) - &(&l.mul_i64(24) * &a);
            -&(&(&l2.mul_i64(2) * &gp) * &inner) / pi.powi(3)
        }
        Derivative::Cos2 => {
            let inner = &one - &(&l.mul_i64(4) * &b);
            &(&l.mul_i64(2) * &inner) / &pi.powi(2)
        }
        Derivative::Cos4 => {
            let mut inner = &ctx.int(3) - &(&l2.mul_i64(8) * &b);
            inner = &inner - &(&l.mul_i64(24) * &b);
            inner = &inner + &(&l2.mul_i64(48) * &(&(&b * &b) - &c));
            &(&l2.mul_i64(4) * &inner) / &pi.powi(4)
        }
    })
}

/// Finite-difference derivative in `w = pi z` at the origin against the closed form.
fn derivative_check(ctx: &Ctx, s: &Samples, which: Derivative) -> Result<Vec<SampleResidual>, Error> {
    let tol = -derivative_tolerance_digits(ctx.digits());
    let h = default_step(ctx);
    let pi = ctx.pi();
    let (order, sine) = match which {
        Derivative::Sin1 => (1, true),
        Derivative::Sin3 => (3, true),
        Derivative::Cos2 => (2, false),
        Derivative::Cos4 => (4, false),
    };
    let mut out = Vec::new();
    for (ql, q) in &s.nomes {
        let f = |w: &BigComplex| {
            let z = w / &pi;
            if sine {
                sin(ctx, q, &z)
            } else {
                cos(ctx, q, &z)
            }
        };
        let estimate = fd_derivative(ctx, f, &ctx.zero(), order, &h)?;
        let closed = closed_derivative(ctx, q, which)?;
        out.push(SampleResidual::new(format!("q={ql}"), estimate.value, closed, tol));
    }
    Ok(out)
}

pub fn deriv_sin1(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    derivative_check(ctx, s, Derivative::Sin1)
}

pub fn deriv_sin3(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    derivative_check(ctx, s, Derivative::Sin3)
}

pub fn deriv_cos2(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    derivative_check(ctx, s, Derivative::Cos2)
}

pub fn deriv_cos4(ctx: &Ctx, s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    derivative_check(ctx, s, Derivative::Cos4)
}

/// Nomes approaching 1 for the limit probe; independent of the sample set.
pub const PI_LIMIT_NOMES: [&str; 3] = ["0.9", "0.99", "0.999"];

/// `|(1 - q^2) Pi_q - pi|` must shrink along [`PI_LIMIT_NOMES`] and end below `10^{-2}`.
///
/// The tolerance of each point is the previous point's error, so a pass means
/// a strictly decreasing sequence.
pub fn pi_limit(ctx: &Ctx, _s: &Samples) -> Result<Vec<SampleResidual>, Error> {
    let mut out: Vec<SampleResidual> = Vec::new();
    for (i, qs) in PI_LIMIT_NOMES.iter().enumerate() {
        let q = Nome::parse(ctx, qs)?;
        let scaled = &(&ctx.one() - &sq(q.value())) * &bf_gosper_pi(ctx, &q);
        let mut tol = out.last().map_or(0.0, |prev| prev.residual_log10);
        if i + 1 == PI_LIMIT_NOMES.len() {
            tol = tol.min(-2.0);
        }
        out.push(SampleResidual::new(format!("q={qs}"), scaled, ctx.pi(), tol));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_samples(ctx: &Ctx) -> Samples {
        let set = SampleSet { q: vec!["0.3".into()], z: vec!["0.37".into()], xy: vec![("0.21".into(), "0.34".into())] };
        set.resolve(ctx).unwrap()
    }

    #[test]
    fn double2_at_documented_point() {
        let ctx = Ctx::new(100).unwrap();
        let rs = q_double2(&ctx, &small_samples(&ctx)).unwrap();
        assert!(rs.iter().all(SampleResidual::passed));
    }

    #[test]
    fn triple_at_complex_nome() {
        let ctx = Ctx::new(100).unwrap();
        let set = SampleSet { q: vec!["0.25+0.1i".into()], z: vec!["0.2".into()], xy: vec![] };
        let rs = q_triple(&ctx, &set.resolve(&ctx).unwrap()).unwrap();
        assert!(rs[0].passed(), "residual 1e{}", rs[0].residual_log10);
    }

    #[test]
    fn printed_addition_has_zero_right_side() {
        let ctx = Ctx::new(40).unwrap();
        let rs = q_add3_printed(&ctx, &small_samples(&ctx)).unwrap();
        assert!(rs[0].rhs.is_zero());
        assert!(rs[0].lhs.log10_abs() > -3.0);
        assert!(!rs[0].passed());
    }

    #[test]
    fn large_sample_modulus_rejected() {
        let ctx = Ctx::new(30).unwrap();
        let set = SampleSet { q: vec!["0.95".into()], ..SampleSet::default() };
        assert!(set.resolve(&ctx).is_err());
    }
}
