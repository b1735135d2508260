//! Independent closed-form oracles for the product-built series, and
//! cross-checks between the exact and numeric evaluators.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qlambert::lambert::{sigma, sigma_star};
use qlambert::numeric::{bf_gosper_pi, bf_pochhammer, BigComplex, Ctx, Nome};
use qlambert::series::ratio;
use qlambert::special::{gosper_pi, theta, ThetaKind};
use qlambert::{PrefSeries, Rat};

fn q_coeff(s: &PrefSeries, n: i64) -> Rat {
    s.get(4 * n).unwrap()
}

fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[test]
fn psi_is_supported_on_triangular_numbers() {
    let order = 300;
    let psi = theta(ThetaKind::Psi, 1, order).unwrap();
    let triangular: std::collections::HashSet<i64> = (0..30).map(|k| k * (k + 1) / 2).collect();
    for n in 0..=order {
        let want = if triangular.contains(&n) { 1 } else { 0 };
        assert_eq!(q_coeff(&psi, n), int(want), "q^{n}");
    }
}

#[test]
fn phi_is_supported_on_squares() {
    let order = 300;
    let phi = theta(ThetaKind::Phi, 1, order).unwrap();
    for n in 0..=order {
        let root = (n as f64).sqrt().round() as i64;
        let want = if n == 0 { 1 } else if root * root == n { 2 } else { 0 };
        assert_eq!(q_coeff(&phi, n), int(want), "q^{n}");
    }
}

#[test]
fn euler_product_follows_pentagonal_numbers() {
    let order = 300;
    let f = theta(ThetaKind::FNeg, 1, order).unwrap();
    let mut expected = vec![0i64; order as usize + 1];
    for k in -20i64..=20 {
        let e = k * (3 * k - 1) / 2;
        if e <= order {
            expected[e as usize] = if k % 2 == 0 { 1 } else { -1 };
        }
    }
    for n in 0..=order {
        assert_eq!(q_coeff(&f, n), int(expected[n as usize]), "q^{n}");
    }
}

#[test]
fn substituted_theta_matches_spread_coefficients() {
    let psi = theta(ThetaKind::Psi, 1, 40).unwrap();
    let psi3 = theta(ThetaKind::Psi, 3, 120).unwrap();
    for n in 0..=120 {
        let want = if n % 3 == 0 { q_coeff(&psi, n / 3) } else { Rat::zero() };
        assert_eq!(q_coeff(&psi3, n), want);
    }
}

#[test]
fn gosper_pi_prefix() {
    for m in 1..=9 {
        let p = gosper_pi(m, 20).unwrap();
        assert_eq!(p.prefix(), m as i64);
        assert!(p.get(m as i64).unwrap().is_one());
    }
}

#[test]
fn divisor_sums_match_definition() {
    for n in 1..=200u64 {
        let direct: u64 = (1..=n).filter(|d| n % d == 0).sum();
        assert_eq!(sigma(n), direct);
        for (a, b) in [(2, 1), (4, 2), (6, 3)] {
            let restricted: u64 = (1..=n).filter(|d| n % d == 0 && (n / d) % a == b).sum();
            assert_eq!(sigma_star(a, b, n), restricted);
        }
    }
    assert_eq!(sigma_star(1, 0, 4), 7);
    assert_eq!(sigma_star(2, 1, 4), 4);
    assert_eq!(sigma_star(4, 2, 6), 4);
}

/// `sum_{n > order} (n + 1) q^n` for `0 < q < 1`, a bound on every tail below.
fn tail_bound_log10(q: f64, order: i64) -> f64 {
    let n = (order + 1) as f64;
    n * q.log10() + ((n + 1.0) / (1.0 - q) + q / (1.0 - q).powi(2)).log10()
}

fn close(a: &BigComplex, b: &BigComplex, digits: f64) -> bool {
    (a - b).log10_abs() < -digits
}

#[test]
fn euler_product_numeric_against_series() {
    let ctx = Ctx::new(50).unwrap();
    let qr = ratio(1, 2);
    let order = 240;
    assert!(tail_bound_log10(0.5, order) < -55.0);
    let series = theta(ThetaKind::FNeg, 1, order).unwrap();
    let exact = ctx.rat(&common::eval_rational(&series, &qr));
    let q = ctx.rat(&qr);
    let numeric = bf_pochhammer(&ctx, &q, &q).unwrap();
    assert!(close(&numeric, &exact, 45.0));
}

#[test]
fn psi_and_pi_numeric_against_series() {
    for (qs, qr) in [("0.3", ratio(3, 10)), ("0.5", ratio(1, 2))] {
        let ctx = Ctx::new(60).unwrap();
        let order = 260;
        let qf = qs.parse::<f64>().unwrap();
        assert!(tail_bound_log10(qf, order) < -65.0);
        let nome = Nome::parse(&ctx, qs).unwrap();
        let q = ctx.rat(&qr);
        let psi_num = &bf_pochhammer(&ctx, &(&q * &q), &(&q * &q)).unwrap() / &bf_pochhammer(&ctx, &q, &(&q * &q)).unwrap();
        let psi_exact = ctx.rat(&common::eval_rational(&theta(ThetaKind::Psi, 1, order).unwrap(), &qr));
        assert!(close(&psi_num, &psi_exact, 55.0), "psi at {qs}");
        // Pi_q = q^{1/4} psi^2(q); the quarter power is taken numerically.
        let body = gosper_pi(1, order).unwrap().shift(-1);
        let quarter = ctx.exp(&ctx.ln(&q).unwrap().div_i64(4));
        let pi_exact = &quarter * &ctx.rat(&common::eval_rational(&body, &qr));
        assert!(close(&bf_gosper_pi(&ctx, &nome), &pi_exact, 55.0), "Pi at {qs}");
    }
}

#[test]
fn numeric_precision_doubling_agrees() {
    let lo = Ctx::new(40).unwrap();
    let hi = Ctx::new(80).unwrap();
    let a = bf_gosper_pi(&lo, &Nome::parse(&lo, "0.25+0.1i").unwrap());
    let b = bf_gosper_pi(&hi, &Nome::parse(&hi, "0.25+0.1i").unwrap());
    assert!(close(&a, &b.with_precision(lo.precision()), 38.0));
}
