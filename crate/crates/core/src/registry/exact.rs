//! Builders for the exact identity catalog.
//!
//! Each builder returns one or more equations `lhs = rhs` whose sides are
//! exact through at least `q^order`.

use crate::lambert::{lambert_series, sigma, LambertSpec, Weight};
use crate::series::{rat, ratio, PrefSeries, Rat};
use crate::special::{cos_expansion_product, gosper_pi, q_end, sin_expansion_product, theta, ThetaKind};
use crate::Error;

/// One side-by-side comparison inside an identity.
#[derive(Debug, Clone)]
pub struct Equation {
    pub label: &'static str,
    pub lhs: PrefSeries,
    pub rhs: PrefSeries,
}

impl Equation {
    fn new(label: &'static str, lhs: PrefSeries, rhs: PrefSeries) -> Self {
        Equation { label, lhs, rhs }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub type ExactBuilder = fn(i64) -> Result<Vec<Equation>>;

fn pi(m: u32, t: i64) -> Result<PrefSeries> {
    gosper_pi(m, t)
}

fn psi(m: u32, t: i64) -> Result<PrefSeries> {
    theta(ThetaKind::Psi, m, t)
}

fn one(t: i64) -> PrefSeries {
    PrefSeries::one(q_end(t))
}

fn constant(c: Rat, t: i64) -> PrefSeries {
    PrefSeries::constant(c, q_end(t))
}

/// `c sum q^{an+b} / (1 - q^{an+b})^2`
fn l2_spec(c: i64, a: i64, b: i64) -> LambertSpec {
    LambertSpec::simple(rat(c), a, b, a, b, 2)
}

fn l2(c: i64, a: i64, b: i64, t: i64) -> Result<PrefSeries> {
    lambert_series(&l2_spec(c, a, b), t)
}

fn lam(spec: &LambertSpec, t: i64) -> Result<PrefSeries> {
    lambert_series(spec, t)
}

fn sum_of(specs: &[LambertSpec], t: i64) -> Result<PrefSeries> {
    let mut acc = PrefSeries::zero(q_end(t));
    for s in specs {
        acc = acc.add(&lam(s, t)?);
    }
    Ok(acc)
}

/// `q d/dq`, which keeps exponents in place.
fn theta_op(s: &PrefSeries) -> PrefSeries {
    s.derivative_q().shift(4)
}

/// The Lambert terms on the left of Gosper's sum (a); exposed so that tests
/// can corrupt one term and watch the check fail.
pub fn gosper_a_terms() -> Vec<LambertSpec> {
    vec![l2_spec(1, 1, 0), l2_spec(-2, 2, 0)]
}

/// Sum (a) with caller-supplied left-hand terms.
pub fn gosper_a_with(terms: &[LambertSpec], t: i64) -> Result<Vec<Equation>> {
    let lhs = sum_of(terms, t)?;
    let p1 = pi(1, t)?;
    let p2 = pi(2, t)?;
    let ratio_term = p1.pow(4).div(&p2.pow(2))?.sub(&one(t)).scale(&ratio(1, 24));
    let rhs = ratio_term.add(&p2.pow(2).scale(&ratio(2, 3)));
    Ok(vec![Equation::new("sum", lhs, rhs)])
}

pub fn gosper_a(t: i64) -> Result<Vec<Equation>> {
    gosper_a_with(&gosper_a_terms(), t)
}

pub fn gosper_b(t: i64) -> Result<Vec<Equation>> {
    let lhs = l2(1, 1, 0, t)?.add(&l2(-3, 3, 0, t)?);
    let p1 = pi(1, t)?;
    let p3 = pi(3, t)?;
    let top = p1.pow(2).add(&p3.pow(2).scale(&rat(3))).pow(2);
    let bottom = p1.mul(&p3).scale(&rat(12));
    let rhs = top.div(&bottom)?.sub(&constant(ratio(1, 12), t));
    Ok(vec![Equation::new("sum", lhs, rhs)])
}

pub fn gosper_c(t: i64) -> Result<Vec<Equation>> {
    let lhs = l2(1, 1, 0, t)?.add(&l2(-4, 4, 0, t)?);
    let rhs = pi(1, t)?.pow(4).div(&pi(2, t)?.pow(2))?.sub(&one(t)).scale(&ratio(1, 8));
    Ok(vec![Equation::new("sum", lhs, rhs)])
}

pub fn gosper_d(t: i64) -> Result<Vec<Equation>> {
    let lhs = l2(1, 2, 0, t)?.add(&l2(-9, 18, 0, t)?);
    let p3_cubed = pi(3, t)?.pow(3);
    let first = p3_cubed.div(&pi(1, t)?)?;
    let second = p3_cubed.div(&pi(9, t)?)?.sub(&one(t)).scale(&ratio(1, 3));
    Ok(vec![Equation::new("sum", lhs, first.add(&second))])
}

pub fn gosper_e(t: i64) -> Result<Vec<Equation>> {
    let lhs = l2(1, 2, -1, t)?.add(&l2(-3, 6, -3, t)?);
    let rhs = pi(3, t)?.mul(&pi(1, t)?);
    Ok(vec![Equation::new("sum", lhs, rhs)])
}

pub fn gosper_f(t: i64) -> Result<Vec<Equation>> {
    let quartic = LambertSpec::simple(rat(6), 4, -2, 2, -1, 4);
    let lhs = lam(&quartic, t)?.add(&l2(1, 2, -1, t)?);
    Ok(vec![Equation::new("sum", lhs, pi(1, t)?.pow(4))])
}

pub fn beyond_gosper(t: i64) -> Result<Vec<Equation>> {
    let lhs = sum_of(&[l2_spec(1, 2, 0), l2_spec(-1, 6, 0), l2_spec(-2, 6, -3)], t)?;
    let rhs = pi(3, t)?.pow(3).div(&pi(1, t)?)?;
    Ok(vec![Equation::new("sum", lhs, rhs)])
}

/// `1 + 3 sum (q^{an-b}/(1-q^{an-b}) - q^{an-c}/(1-q^{an-c}))`
fn cubic_ratio_lambert(a: i64, b: i64, c: i64, t: i64) -> Result<PrefSeries> {
    let plus = LambertSpec::simple(rat(3), a, -b, a, -b, 1);
    let minus = LambertSpec::simple(rat(-3), a, -c, a, -c, 1);
    Ok(one(t).add(&lam(&plus, t)?).add(&lam(&minus, t)?))
}

pub fn psi3_square(t: i64) -> Result<Vec<Equation>> {
    let ratio9 = psi(3, t)?.pow(3).div(&psi(9, t)?)?;
    let lambert = cubic_ratio_lambert(18, 15, 3, t)?;
    let squared = lambert.mul(&lambert);
    let closed = one(t).add(&sum_of(&[l2_spec(3, 6, 0), l2_spec(6, 6, -3), l2_spec(-27, 18, 0)], t)?);
    Ok(vec![
        Equation::new("theta square vs Lambert square", ratio9.pow(2), squared.clone()),
        Equation::new("Lambert square vs closed form", squared, closed),
    ])
}

fn odd_psi4_lambert(t: i64) -> Result<PrefSeries> {
    let spec = LambertSpec::simple(rat(1), 2, -1, 4, -2, 1).with_weight(Weight::Lin(2, -1));
    lam(&spec, t)
}

pub fn psi4_square(t: i64) -> Result<Vec<Equation>> {
    let theta_side = pi(2, t)?.pow(2);
    let lambert = odd_psi4_lambert(t)?;
    let squared = lambert.mul(&lambert);
    let closed = lam(&LambertSpec::simple(rat(6), 8, -4, 4, -2, 4), t)?.add(&l2(1, 4, -2, t)?);
    Ok(vec![
        Equation::new("theta square vs Lambert square", theta_side.pow(2), squared.clone()),
        Equation::new("Lambert square vs closed form", squared, closed),
    ])
}

pub fn ram_psi4(t: i64) -> Result<Vec<Equation>> {
    let lhs = psi(2, t)?.pow(4).shift(4);
    Ok(vec![Equation::new("sum", lhs, odd_psi4_lambert(t)?)])
}

pub fn ram_psi3_ratio(t: i64) -> Result<Vec<Equation>> {
    let lhs = psi(1, t)?.pow(3).div(&psi(3, t)?)?;
    Ok(vec![Equation::new("sum", lhs, cubic_ratio_lambert(6, 5, 1, t)?)])
}

pub fn sigma_odd_psi4(t: i64) -> Result<Vec<Equation>> {
    let lhs = psi(2, t)?.pow(4).shift(4);
    let coeffs = (0..=t.max(-1)).map(|n| if n % 2 == 1 { sigma(n as u64) } else { 0 });
    let rhs = PrefSeries::from_q_integers(coeffs, t);
    Ok(vec![Equation::new("divisor sums", lhs, rhs)])
}

pub fn easy_gosper(t: i64) -> Result<Vec<Equation>> {
    let lhs = l2(1, 2, -1, t)?.add(&l2(-2, 4, -2, t)?);
    Ok(vec![Equation::new("sum", lhs, pi(2, t)?.pow(2))])
}

pub fn pi_triple_rel(t: i64) -> Result<Vec<Equation>> {
    let (p1, p2, p4) = (pi(1, t)?, pi(2, t)?, pi(4, t)?);
    let lhs = p1.pow(2).mul(&p4);
    let rhs = p2.pow(3).add(&p2.mul(&p4.pow(2)).scale(&rat(4)));
    Ok(vec![Equation::new("relation", lhs, rhs)])
}

pub fn pi124(t: i64) -> Result<Vec<Equation>> {
    let (p1, p2, p4) = (pi(1, t)?, pi(2, t)?, pi(4, t)?);
    let lhs = p1.pow(2).div(&p2.mul(&p4))?.sub(&p2.pow(2).div(&p4.pow(2))?);
    Ok(vec![Equation::new("constant", lhs, constant(rat(4), t))])
}

pub fn psi8_lambert(t: i64) -> Result<Vec<Equation>> {
    let spec = LambertSpec::simple(rat(1), 1, -1, 2, 0, 1).with_weight(Weight::Cube(1, 0));
    Ok(vec![Equation::new("sum", psi(1, t)?.pow(8), lam(&spec, t)?)])
}

fn odd_inverse(spec: LambertSpec) -> LambertSpec {
    spec.with_weight(Weight::Inv(2, -1))
}

pub fn int_psi4_log(t: i64) -> Result<Vec<Equation>> {
    let p = psi(1, t)?;
    let log_side = p.subst_negate()?.div(&p)?.log()?.scale(&ratio(-1, 2));
    let sum = lam(&odd_inverse(LambertSpec::simple(rat(1), 2, -1, 4, -2, 1)), t)?;
    let integrand = psi(2, t)?.pow(4).shift(4);
    Ok(vec![
        Equation::new("logarithm", log_side, sum.clone()),
        Equation::new("derivative", theta_op(&sum), integrand),
    ])
}

pub fn int_psi2psi2_log(t: i64) -> Result<Vec<Equation>> {
    let combined = odd_inverse(LambertSpec::simple(rat(1), 2, -1, 6, -3, 1).with_numerator(rat(1), 4, -2));
    let split_a = odd_inverse(LambertSpec::simple(rat(1), 2, -1, 2, -1, 1));
    let split_b = odd_inverse(LambertSpec::simple(rat(-1), 6, -3, 6, -3, 1));
    let s1 = lam(&combined, t)?;
    let s2 = lam(&split_a, t)?.add(&lam(&split_b, t)?);
    let integrand = psi(1, t)?.pow(2).mul(&psi(3, t)?.pow(2)).shift(4);
    Ok(vec![
        Equation::new("two sum forms", s1.clone(), s2),
        Equation::new("derivative", theta_op(&s1), integrand),
    ])
}

/// `q S' + log_flag = q * integrand` for an antiderivative `S (+ log q)`.
fn antiderivative(label: &'static str, sum: &PrefSeries, log_term: bool, q_integrand: PrefSeries, t: i64) -> Equation {
    let mut lhs = theta_op(sum);
    if log_term {
        lhs = lhs.add(&one(t));
    }
    Equation::new(label, lhs, q_integrand)
}

pub fn integral_a(t: i64) -> Result<Vec<Equation>> {
    let spec = odd_inverse(LambertSpec::simple(rat(1), 2, -1, 2, -1, 3).with_numerator(rat(1), 4, -2));
    let sum = lam(&spec, t)?;
    let q_integrand = psi(1, t)?.pow(8).shift(4);
    Ok(vec![antiderivative("derivative", &sum, false, q_integrand, t)])
}

pub fn integral_b(t: i64) -> Result<Vec<Equation>> {
    let first = LambertSpec::simple(rat(8), 1, 0, 4, 0, 1)
        .with_numerator(rat(8), 2, 0)
        .with_numerator(rat(8), 3, 0)
        .with_weight(Weight::Inv(1, 0));
    let s1 = lam(&first, t)?;
    let second_a = LambertSpec::simple(rat(24), 1, 0, 2, 0, 1).with_weight(Weight::Inv(1, 0));
    let second_b = odd_inverse(LambertSpec::simple(rat(-16), 2, -1, 4, -2, 1));
    let s2 = lam(&second_a, t)?.add(&lam(&second_b, t)?);
    let q_integrand = psi(1, t)?.pow(8).div(&psi(2, t)?.pow(4))?;
    Ok(vec![
        antiderivative("first form derivative", &s1, true, q_integrand.clone(), t),
        antiderivative("second form derivative", &s2, true, q_integrand, t),
        // The two sums have no constant term, so the forms agree exactly.
        Equation::new("forms differ by a constant", s1, s2),
    ])
}

pub fn integral_c(t: i64) -> Result<Vec<Equation>> {
    let spec = LambertSpec::simple(rat(4), 2, 0, 8, 0, 1)
        .with_numerator(rat(4), 4, 0)
        .with_numerator(rat(4), 6, 0)
        .with_weight(Weight::Inv(1, 0));
    let sum = lam(&spec, t)?;
    let q_integrand = psi(2, t)?.pow(8).div(&psi(4, t)?.pow(4))?;
    Ok(vec![antiderivative("derivative", &sum, true, q_integrand, t)])
}

pub fn integral_d(t: i64) -> Result<Vec<Equation>> {
    let even = LambertSpec::simple(rat(2), 0, 0, 6, 0, 1)
        .with_numerator(rat(3), 2, 0)
        .with_numerator(rat(3), 4, 0)
        .with_weight(Weight::Inv(6, 0))
        .dropping_constant();
    let odd = LambertSpec::simple(rat(-2), 0, 0, 6, -3, 1).with_weight(Weight::Inv(6, -3)).dropping_constant();
    let sum = sum_of(&[even, odd], t)?;
    let q_integrand = psi(3, t)?.pow(6).div(&psi(1, t)?.pow(2))?.shift(8);
    Ok(vec![antiderivative("derivative", &sum, false, q_integrand, t)])
}

/// Sum for (e): even part numerators `(c0, c6, c12)` over `2n(1 - q^{18n})`.
fn integral_e_sum(c6: i64, t: i64) -> Result<PrefSeries> {
    let even = LambertSpec::simple(rat(-2), 0, 0, 18, 0, 1)
        .with_numerator(rat(c6), 6, 0)
        .with_numerator(rat(1), 12, 0)
        .with_weight(Weight::Inv(2, 0))
        .dropping_constant();
    let odd = odd_inverse(LambertSpec::simple(rat(2), 0, 0, 6, -3, 1)).dropping_constant();
    sum_of(&[even, odd], t)
}

fn integral_e_integrand(t: i64) -> Result<PrefSeries> {
    Ok(psi(3, t)?.pow(6).div(&psi(9, t)?.pow(2))?)
}

pub fn integral_e(t: i64) -> Result<Vec<Equation>> {
    let sum = integral_e_sum(1, t)?;
    Ok(vec![antiderivative("derivative", &sum, true, integral_e_integrand(t)?, t)])
}

/// The sum for (e) with numerator `-2 + 3q^{6n} + q^{12n}`; it does not differentiate to the integrand.
pub fn integral_e_printed(t: i64) -> Result<Vec<Equation>> {
    let sum = integral_e_sum(3, t)?;
    Ok(vec![antiderivative("derivative", &sum, true, integral_e_integrand(t)?, t)])
}

fn integral_f_sum(even: [i64; 3], odd: [i64; 3], t: i64) -> Result<PrefSeries> {
    let even = LambertSpec::simple(rat(even[0]), 0, 0, 6, 0, 1)
        .with_numerator(rat(even[1]), 2, 0)
        .with_numerator(rat(even[2]), 4, 0)
        .with_weight(Weight::Inv(2, 0))
        .dropping_constant();
    let odd = odd_inverse(
        LambertSpec::simple(rat(odd[0]), 0, 0, 6, -3, 1)
            .with_numerator(rat(odd[1]), 2, -1)
            .with_numerator(rat(odd[2]), 4, -2),
    )
    .dropping_constant();
    sum_of(&[even, odd], t)
}

fn integral_f_integrand(t: i64) -> Result<PrefSeries> {
    Ok(psi(1, t)?.pow(6).div(&psi(3, t)?.pow(2))?)
}

pub fn integral_f(t: i64) -> Result<Vec<Equation>> {
    let sum = integral_f_sum([-6, 3, 3], [6, 6, 6], t)?;
    Ok(vec![antiderivative("derivative", &sum, true, integral_f_integrand(t)?, t)])
}

/// The sum for (f) with numerators `-(6 + 9q^{2n} + 9q^{4n})` and `-(3 - 12q^{2n-1} - 12q^{4n-2})`.
pub fn integral_f_printed(t: i64) -> Result<Vec<Equation>> {
    let sum = integral_f_sum([-6, -9, -9], [-3, 12, 12], t)?;
    Ok(vec![antiderivative("derivative", &sum, true, integral_f_integrand(t)?, t)])
}

/// `(sum lambda_n, sum lambda_n^2)` for the sine (`offset = 0`) or cosine (`offset = -1`) family.
fn lambda_sums(offset: i64, t: i64) -> Result<(PrefSeries, PrefSeries)> {
    let single = l2(1, 2, offset, t)?;
    let squares = lam(&LambertSpec::simple(rat(1), 4, 2 * offset, 2, offset, 4), t)?;
    Ok((single, squares))
}

fn expansion_u2(offset: i64, t: i64) -> Result<Vec<Equation>> {
    let product = if offset == 0 { sin_expansion_product(t) } else { cos_expansion_product(t) };
    let (single, _) = lambda_sums(offset, t)?;
    Ok(vec![Equation::new("u^2 coefficient", product.coeff(2).clone(), single.neg())])
}

fn expansion_u4(offset: i64, t: i64) -> Result<Vec<Equation>> {
    let product = if offset == 0 { sin_expansion_product(t) } else { cos_expansion_product(t) };
    let (single, squares) = lambda_sums(offset, t)?;
    let rhs = single.mul(&single).sub(&squares).scale(&ratio(1, 2));
    Ok(vec![Equation::new("u^4 coefficient", product.coeff(4).clone(), rhs)])
}

pub fn sinq_expansion_u2(t: i64) -> Result<Vec<Equation>> {
    expansion_u2(0, t)
}

pub fn sinq_expansion_u4(t: i64) -> Result<Vec<Equation>> {
    expansion_u4(0, t)
}

pub fn cosq_expansion_u2(t: i64) -> Result<Vec<Equation>> {
    expansion_u2(-1, t)
}

pub fn cosq_expansion_u4(t: i64) -> Result<Vec<Equation>> {
    expansion_u4(-1, t)
}

/// The divisor pairs `(a, b)` with a registered generating-function check.
pub const DIVISOR_PAIRS: [(u64, u64); 7] = [(1, 0), (2, 0), (2, 1), (4, 2), (3, 0), (6, 3), (18, 9)];

/// `sum sigma*_{b(a)}(n) q^n` against its Lambert form.
pub fn divisor_generating(a: u64, b: u64, t: i64) -> Result<Vec<Equation>> {
    let lambert = lam(&crate::lambert::divisor_generating_spec(a as i64, b as i64), t)?;
    let direct = crate::lambert::sigma_star_series(a, b, t);
    Ok(vec![Equation::new("divisor sums", lambert, direct)])
}

macro_rules! divisor_builders {
    ($($name:ident => ($a:expr, $b:expr)),* $(,)?) => {
        $(pub fn $name(t: i64) -> Result<Vec<Equation>> { divisor_generating($a, $b, t) })*
    };
}

divisor_builders! {
    divisor_gen_1_0 => (1, 0),
    divisor_gen_2_0 => (2, 0),
    divisor_gen_2_1 => (2, 1),
    divisor_gen_4_2 => (4, 2),
    divisor_gen_3_0 => (3, 0),
    divisor_gen_6_3 => (6, 3),
    divisor_gen_18_9 => (18, 9),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(s: &PrefSeries, n: i64) -> Rat {
        s.get(4 * n).unwrap()
    }

    #[test]
    fn easy_gosper_spot() {
        let eq = &easy_gosper(10).unwrap()[0];
        assert_eq!(coeff(&eq.lhs, 3), rat(4));
        assert_eq!(coeff(&eq.rhs, 3), rat(4));
    }

    #[test]
    fn gosper_e_spot() {
        let eq = &gosper_e(10).unwrap()[0];
        assert_eq!(coeff(&eq.lhs, 3), rat(1));
        assert_eq!(coeff(&eq.rhs, 3), rat(1));
    }

    #[test]
    fn pi124_constant_term() {
        let eq = &pi124(10).unwrap()[0];
        assert_eq!(coeff(&eq.lhs, 0), rat(4));
    }

    #[test]
    fn printed_integrals_differ() {
        let e = &integral_e_printed(20).unwrap()[0];
        assert_eq!(e.lhs.first_difference(&e.rhs), Some(24));
        let f = &integral_f_printed(20).unwrap()[0];
        assert_eq!(f.lhs.first_difference(&f.rhs), Some(4));
    }
}
