//! q-Pochhammer products, Ramanujan's theta functions, Gosper's `Pi_q`, and
//! the `u = q^{-z} - q^z` expansion products behind the sine/cosine series.
//!
//! Everything here is built from product definitions. The closed-form sums
//! (triangular numbers, squares, pentagonal numbers) are kept out of this
//! module on purpose: the tests use them as independent oracles.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::{PrefSeries, Rat};
use crate::Error;

/// Which Ramanujan theta function to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// `psi(q) = (q^2;q^2)_inf / (q;q^2)_inf`
    Psi,
    /// `phi(q) = (-q;-q)_inf / (q;-q)_inf`
    Phi,
    /// `f(-q) = (q;q)_inf`
    FNeg,
}

/// Absolute quarter exponent through which a q-integral series of order `order` is known.
pub(crate) fn q_end(order: i64) -> i64 {
    4 * order + 3
}

/// `prod_{i>=0} (1 - q^{offset/4 + step*i})`, exact modulo `q^{order+1}`.
///
/// `offset` is in quarter units, `step` in whole powers of `q`. Factors whose
/// lowest exponent lies past the window are omitted: each is `1 + O(q^{order+1})`
/// and cannot change a known coefficient.
pub fn pochhammer_inf(offset: i64, step: u32, order: i64) -> Result<PrefSeries, Error> {
    if offset <= 0 {
        return Err(Error::InvalidArgument(format!(
            "pochhammer offset must be positive, got {offset}/4"
        )));
    }
    if step == 0 {
        return Err(Error::InvalidArgument("pochhammer step must be at least 1".into()));
    }
    let end = q_end(order);
    if end < 0 {
        return Ok(PrefSeries::one(end));
    }
    let len = (end + 1) as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    coeffs[0] = BigInt::from(1);
    let mut e = offset as usize;
    // Degree of the partial product so far, to skip the all-zero top.
    let mut deg = 0usize;
    while e < len {
        deg = (deg + e).min(len - 1);
        for k in (e..=deg).rev() {
            if !coeffs[k - e].is_zero() {
                let t = coeffs[k - e].clone();
                coeffs[k] -= t;
            }
        }
        e += 4 * step as usize;
    }
    let body = coeffs.into_iter().map(Rat::from_integer).collect();
    Ok(PrefSeries::from_quarters(0, body, end))
}

/// `psi(q^m)`, `phi(q^m)` or `f(-q^m)`, exact modulo `q^{order+1}`.
pub fn theta(kind: ThetaKind, m: u32, order: i64) -> Result<PrefSeries, Error> {
    if m == 0 {
        return Err(Error::InvalidArgument("theta argument power must be at least 1".into()));
    }
    let mq = 4 * m as i64;
    match kind {
        ThetaKind::Psi => {
            let num = pochhammer_inf(2 * mq, 2 * m, order)?;
            let den = pochhammer_inf(mq, 2 * m, order)?;
            Ok(num.div(&den)?)
        }
        ThetaKind::FNeg => pochhammer_inf(mq, m, order),
        ThetaKind::Phi => {
            // Build phi(q) far enough that q -> q^m covers the window.
            let base = order.div_euclid(m as i64);
            let q_q = pochhammer_inf(4, 1, base)?;
            let q2_q2 = pochhammer_inf(8, 2, base)?;
            // (-q;q)_inf = (q^2;q^2)_inf / (q;q)_inf
            let minus_q_q = q2_q2.div(&q_q)?;
            // (-q;-q)_inf and (q;-q)_inf are the images of (q;q)_inf and (-q;q)_inf under q -> -q.
            let num = q_q.subst_negate()?;
            let den = minus_q_q.subst_negate()?;
            let phi = num.div(&den)?;
            Ok(if m == 1 { phi } else { phi.subst_power(m) })
        }
    }
}

/// Gosper's `Pi_{q^m} = q^{m/4} psi^2(q^m)`, exact through `q^{order}` at least.
pub fn gosper_pi(m: u32, order: i64) -> Result<PrefSeries, Error> {
    let psi = theta(ThetaKind::Psi, m, order)?;
    Ok(psi.mul(&psi).shift(m as i64))
}

/// Sine products carry one odd power of `u` outside the product; cosine products are even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Sine,
    Cosine,
}

/// `prod_n (1 - u^2 lambda_n) = sum_j coeffs[j] u^j` through `u^4`.
#[derive(Debug, Clone)]
pub struct UExpansion {
    pub kind: ExpansionKind,
    pub coeffs: [PrefSeries; 5],
}

impl UExpansion {
    pub fn coeff(&self, power: usize) -> &PrefSeries {
        &self.coeffs[power]
    }
}

/// `lambda = q^{e} / (1 - q^{e})^2 = sum_{k>=1} k q^{k e}` through quarter `end`.
fn lambda_term(e: i64, end: i64) -> PrefSeries {
    let mut body = vec![Rat::zero(); (end + 1).max(0) as usize];
    let step = 4 * e;
    let mut k = 1i64;
    while k * step <= end {
        body[(k * step) as usize] = Rat::from_integer(BigInt::from(k));
        k += 1;
    }
    PrefSeries::from_quarters(0, body, end)
}

fn expansion_product(kind: ExpansionKind, order: i64) -> UExpansion {
    let end = q_end(order);
    let mut a2 = PrefSeries::zero(end);
    let mut a4 = PrefSeries::zero(end);
    let mut n = 1i64;
    loop {
        let e = match kind {
            ExpansionKind::Sine => 2 * n,
            ExpansionKind::Cosine => 2 * n - 1,
        };
        // Later factors are 1 - u^2 O(q^{order+1}).
        if e > order {
            break;
        }
        let lambda = lambda_term(e, end);
        // (a0 + a2 u^2 + a4 u^4)(1 - lambda u^2), with a0 = 1.
        a4 = a4.sub(&lambda.mul(&a2));
        a2 = a2.sub(&lambda);
        n += 1;
    }
    UExpansion {
        kind,
        coeffs: [PrefSeries::one(end), PrefSeries::zero(end), a2, PrefSeries::zero(end), a4],
    }
}

/// Expansion of `prod_{n>=1} (1 - u^2 q^{2n}/(1-q^{2n})^2)`, each coefficient exact modulo `q^{order+1}`.
pub fn sin_expansion_product(order: i64) -> UExpansion {
    expansion_product(ExpansionKind::Sine, order)
}

/// Expansion of `prod_{n>=1} (1 - u^2 q^{2n-1}/(1-q^{2n-1})^2)`.
pub fn cos_expansion_product(order: i64) -> UExpansion {
    expansion_product(ExpansionKind::Cosine, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn q_coeffs(s: &PrefSeries, upto: i64) -> Vec<i64> {
        use num_traits::ToPrimitive;
        (0..=upto).map(|n| s.get(4 * n).unwrap().to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn euler_product_small_order() {
        let p = pochhammer_inf(4, 1, 7).unwrap();
        assert_eq!(q_coeffs(&p, 7), vec![1, -1, -1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn odd_step_product() {
        let p = pochhammer_inf(4, 2, 4).unwrap();
        assert_eq!(q_coeffs(&p, 4), vec![1, -1, 0, -1, 1]);
    }

    #[test]
    fn factors_beyond_window_vanish() {
        let p = pochhammer_inf(32, 1, 7).unwrap();
        assert_eq!(p, PrefSeries::one(q_end(7)));
    }

    #[test]
    fn invalid_offset() {
        assert!(matches!(pochhammer_inf(0, 1, 5), Err(Error::InvalidArgument(_))));
        assert!(matches!(pochhammer_inf(-4, 1, 5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn theta_leading_terms() {
        let psi = theta(ThetaKind::Psi, 1, 10).unwrap();
        assert_eq!(q_coeffs(&psi, 10), vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]);
        let phi = theta(ThetaKind::Phi, 1, 9).unwrap();
        assert_eq!(q_coeffs(&phi, 9), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        let f = theta(ThetaKind::FNeg, 1, 7).unwrap();
        assert_eq!(q_coeffs(&f, 7), vec![1, -1, -1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn theta_windows_cover_order() {
        for kind in [ThetaKind::Psi, ThetaKind::Phi, ThetaKind::FNeg] {
            for m in [1, 2, 3, 9] {
                let s = theta(kind, m, 40).unwrap();
                assert!(s.end() >= 4 * 40, "{kind:?} m={m} end={}", s.end());
                assert_eq!(s.prefix(), 0);
            }
        }
    }

    #[test]
    fn gosper_pi_prefixes() {
        let p1 = gosper_pi(1, 10).unwrap();
        assert_eq!(p1.prefix(), 1);
        assert_eq!(p1.get(1).unwrap(), rat(1));
        assert_eq!(p1.get(5).unwrap(), rat(2));
        assert_eq!(gosper_pi(2, 10).unwrap().prefix(), 2);
        assert_eq!(gosper_pi(9, 10).unwrap().prefix(), 9);
    }

    #[test]
    fn expansion_low_coefficients() {
        let s = sin_expansion_product(20);
        assert_eq!(s.kind, ExpansionKind::Sine);
        assert_eq!(s.coeff(0), &PrefSeries::one(q_end(20)));
        assert!(s.coeff(1).is_zero() && s.coeff(3).is_zero());
        assert_eq!(s.coeff(2).get(8).unwrap(), rat(-1));
        assert_eq!(s.coeff(2).get(4).unwrap(), rat(0));
        let c = cos_expansion_product(20);
        assert_eq!(c.coeff(2).get(4).unwrap(), rat(-1));
        assert!(c.coeff(1).is_zero());
        assert_eq!(c.coeff(0).get(0).unwrap(), rat(1));
    }
}
