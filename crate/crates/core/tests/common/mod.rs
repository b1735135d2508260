//! Shared strategies, property bodies and reference evaluators for the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qlambert::{PrefSeries, Rat};

fn coefficient() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

/// Series on the quarter grid with a small nonnegative prefix and up to 24 known terms.
pub fn series() -> impl Strategy<Value = PrefSeries> {
    (0i64..4, prop::collection::vec(coefficient(), 1..24))
        .prop_map(|(prefix, body)| {
            let trunc = body.len() as i64 - 1;
            PrefSeries::from_quarters(prefix, body, trunc)
        })
}

/// Series `1 + O(q^{1/4})`, the domain of the logarithm.
pub fn unit_series() -> impl Strategy<Value = PrefSeries> {
    prop::collection::vec(coefficient(), 1..20).prop_map(|mut body| {
        body.insert(0, Rat::from_integer(BigInt::from(1)));
        let trunc = body.len() as i64 - 1;
        PrefSeries::from_quarters(0, body, trunc)
    })
}

fn same(name: &str, a: &PrefSeries, b: &PrefSeries) -> Result<(), TestCaseError> {
    match a.first_difference(b) {
        None => Ok(()),
        Some(k) => Err(TestCaseError::fail(format!("{name}: sides differ at quarter exponent {k}: {a} vs {b}"))),
    }
}

pub fn ring_axioms(a: &PrefSeries, b: &PrefSeries, c: &PrefSeries) -> Result<(), TestCaseError> {
    same("additive associativity", &a.add(b).add(c), &a.add(&b.add(c)))?;
    same("additive commutativity", &a.add(b), &b.add(a))?;
    same("multiplicative associativity", &a.mul(b).mul(c), &a.mul(&b.mul(c)))?;
    same("multiplicative commutativity", &a.mul(b), &b.mul(a))?;
    same("distributivity", &a.mul(&b.add(c)), &a.mul(b).add(&a.mul(c)))?;
    same("additive inverse", &a.sub(a), &PrefSeries::zero(a.end()))?;
    same("multiplicative unit", &a.mul(&PrefSeries::one(a.end())), a)?;
    Ok(())
}

pub fn leibniz(a: &PrefSeries, b: &PrefSeries) -> Result<(), TestCaseError> {
    let lhs = a.mul(b).derivative_q();
    let rhs = a.derivative_q().mul(b).add(&a.mul(&b.derivative_q()));
    same("Leibniz rule", &lhs, &rhs)
}

pub fn log_homomorphism(a: &PrefSeries, b: &PrefSeries) -> Result<(), TestCaseError> {
    let lhs = a.mul(b).log().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rhs = a.log().unwrap().add(&b.log().unwrap());
    same("log(ab) = log a + log b", &lhs, &rhs)
}

pub fn substitution_homomorphism(a: &PrefSeries, b: &PrefSeries, m: u32) -> Result<(), TestCaseError> {
    same("(ab)(q^m)", &a.mul(b).subst_power(m), &a.subst_power(m).mul(&b.subst_power(m)))?;
    same("(a+b)(q^m)", &a.add(b).subst_power(m), &a.subst_power(m).add(&b.subst_power(m)))
}

pub fn derivative_integral_round_trip(a: &PrefSeries) -> Result<(), TestCaseError> {
    let integral = a.integrate_q().map_err(|e| TestCaseError::fail(e.to_string()))?;
    same("d/dq of the integral", &integral.derivative_q(), a)?;
    let constant = a.get(0).unwrap_or_else(|| Rat::from_integer(BigInt::from(0)));
    let without_constant = a.sub(&PrefSeries::constant(constant, a.end()));
    same("integral of d/dq", &a.derivative_q().integrate_q().unwrap(), &without_constant)
}

/// Sum of the known terms of a q-integral series at a rational point, as exact rational.
pub fn eval_rational(s: &PrefSeries, q: &Rat) -> Rat {
    let mut acc = Rat::from_integer(BigInt::from(0));
    for (k, c) in s.terms() {
        assert!(k % 4 == 0, "eval_rational needs integer exponents");
        acc += c * num_traits::pow(q.clone(), (k / 4) as usize);
    }
    acc
}
