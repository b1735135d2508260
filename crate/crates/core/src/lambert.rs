//! Lambert-type series described as data, and the divisor sums they generate.
//!
//! A [`LambertSpec`] encodes
//! `sum_{n >= n_start} w(n) * sum_j c_j q^{a_j n + b_j} / (1 - q^{g n + d})^p`,
//! which covers every summand shape in the identity catalog.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{PrefSeries, Rat};
use crate::Error;

/// Index weight `w(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    One,
    /// `1 / (k n + l)`
    Inv(i64, i64),
    /// `k n + l`
    Lin(i64, i64),
    /// `(k n + l)^3`
    Cube(i64, i64),
}

impl Weight {
    fn linear_part(self) -> Option<(i64, i64)> {
        match self {
            Weight::One => None,
            Weight::Inv(k, l) | Weight::Lin(k, l) | Weight::Cube(k, l) => Some((k, l)),
        }
    }

    pub fn eval(self, n: i64) -> Rat {
        match self {
            Weight::One => Rat::one(),
            Weight::Inv(k, l) => Rat::new(BigInt::one(), BigInt::from(k * n + l)),
            Weight::Lin(k, l) => Rat::from_integer(BigInt::from(k * n + l)),
            Weight::Cube(k, l) => Rat::from_integer(BigInt::from(k * n + l).pow(3)),
        }
    }
}

/// One numerator monomial `coef * q^{alpha n + beta}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numerator {
    pub coef: Rat,
    pub alpha: i64,
    pub beta: i64,
}

/// Denominator `(1 - q^{gamma n + delta})^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Denominator {
    pub gamma: i64,
    pub delta: i64,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambertSpec {
    pub weight: Weight,
    pub numerators: Vec<Numerator>,
    pub denominator: Denominator,
    pub n_start: i64,
    /// Drop the `q^0` term of every summand. Antiderivatives such as
    /// `sum 1/(n(1-q^n))` have a divergent constant that only shifts the
    /// integration constant; with this flag they become proper series.
    pub drop_constant: bool,
}

impl LambertSpec {
    /// Spec with weight one, a single numerator, starting at `n = 1`.
    pub fn simple(coef: Rat, alpha: i64, beta: i64, gamma: i64, delta: i64, power: u32) -> Self {
        LambertSpec {
            weight: Weight::One,
            numerators: vec![Numerator { coef, alpha, beta }],
            denominator: Denominator { gamma, delta, power },
            n_start: 1,
            drop_constant: false,
        }
    }

    pub fn with_weight(mut self, weight: Weight) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_numerator(mut self, coef: Rat, alpha: i64, beta: i64) -> Self {
        self.numerators.push(Numerator { coef, alpha, beta });
        self
    }

    pub fn starting_at(mut self, n_start: i64) -> Self {
        self.n_start = n_start;
        self
    }

    pub fn dropping_constant(mut self) -> Self {
        self.drop_constant = true;
        self
    }

    /// Checks the index invariants for every `n >= n_start`.
    pub fn validate(&self) -> Result<(), Error> {
        let invalid = |msg: String| Err(Error::InvalidArgument(msg));
        let n0 = self.n_start;
        let Denominator { gamma, delta, power } = self.denominator;
        if power == 0 {
            return invalid("denominator power must be at least 1".into());
        }
        if gamma < 0 || gamma * n0 + delta < 1 {
            return invalid(format!("denominator exponent {gamma}n{delta:+} drops below 1"));
        }
        for num in &self.numerators {
            if num.alpha < 0 || num.alpha * n0 + num.beta < 0 {
                return invalid(format!("numerator exponent {}n{:+} is negative", num.alpha, num.beta));
            }
        }
        if let Some((k, l)) = self.weight.linear_part() {
            let vanishes = if k == 0 {
                l == 0
            } else {
                (-l) % k == 0 && (-l) / k >= n0
            };
            if vanishes {
                return invalid(format!("weight {k}n{l:+} vanishes on the index range"));
            }
        }
        Ok(())
    }

    /// Fails when some numerator keeps landing on a fixed exponent as `n` grows.
    fn growth_check(&self) -> Result<(), Error> {
        for num in &self.numerators {
            if num.alpha > 0 {
                continue;
            }
            let constant_only = num.beta == 0 && self.drop_constant && self.denominator.gamma > 0;
            if !constant_only {
                return Err(Error::NonTerminating(format!(
                    "numerator q^{} does not move with n",
                    num.beta
                )));
            }
        }
        Ok(())
    }
}

/// Binomial `C(k + p - 1, p - 1)`, the coefficient of `x^k` in `(1-x)^{-p}`.
fn neg_binomial(k: i64, p: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..p as i64 {
        acc = acc * BigInt::from(k + i) / BigInt::from(i);
    }
    acc
}

/// Expands a Lambert spec exactly modulo `q^{order+1}`.
pub fn lambert_series(spec: &LambertSpec, order: i64) -> Result<PrefSeries, Error> {
    spec.validate()?;
    spec.growth_check()?;
    let order_u = order.max(-1);
    let mut coeffs: Vec<Rat> = vec![Rat::zero(); (order_u + 1) as usize];
    let Denominator { gamma, delta, power } = spec.denominator;
    let mut n = spec.n_start;
    loop {
        let step = gamma * n + delta;
        let mut any = false;
        let w = spec.weight.eval(n);
        for num in &spec.numerators {
            let base = num.alpha * n + num.beta;
            let first = if base == 0 && spec.drop_constant { base + step } else { base };
            if first > order {
                continue;
            }
            any = true;
            let c = &num.coef * &w;
            let mut k = if base == 0 && spec.drop_constant { 1 } else { 0 };
            loop {
                let e = base + k * step;
                if e > order {
                    break;
                }
                let b = neg_binomial(k, power);
                coeffs[e as usize] += &c * Rat::from_integer(b);
                k += 1;
            }
        }
        // Every numerator's first exponent grows with n, so nothing later can land in the window.
        if !any {
            break;
        }
        n += 1;
    }
    Ok(PrefSeries::from_q_rats(coeffs, order))
}

/// `sigma*_{b(a)}(n)`: sum of the divisors `d | n` whose cofactor `n/d` is `b` mod `a`.
pub fn sigma_star(a: u64, b: u64, n: u64) -> u64 {
    assert!(a >= 1 && b < a && n >= 1, "sigma_star needs a >= 1, 0 <= b < a, n >= 1");
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let e = n / d;
            if e % a == b {
                total += d;
            }
            if e != d && d % a == b {
                total += e;
            }
        }
        d += 1;
    }
    total
}

/// Classical divisor sum `sigma(n)`.
pub fn sigma(n: u64) -> u64 {
    sigma_star(1, 0, n)
}

/// Spec for `sum q^{an+b} / (1 - q^{an+b})^2`, from `n = 0` when `b != 0`.
pub fn divisor_generating_spec(a: i64, b: i64) -> LambertSpec {
    LambertSpec::simple(Rat::one(), a, b, a, b, 2).starting_at(if b == 0 { 1 } else { 0 })
}

/// `sum_{n>=1} sigma*_{b(a)}(n) q^n` from direct enumeration.
pub fn sigma_star_series(a: u64, b: u64, order: i64) -> PrefSeries {
    let coeffs: Vec<BigInt> = (0..=order.max(0))
        .map(|n| if n == 0 { BigInt::zero() } else { BigInt::from(sigma_star(a, b, n as u64)) })
        .collect();
    PrefSeries::from_q_integers(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, ratio};

    #[test]
    fn sigma_lambert_coefficient() {
        let s = lambert_series(&LambertSpec::simple(rat(1), 1, 0, 1, 0, 2), 10).unwrap();
        assert_eq!(s.coeff(&rat(4)).unwrap(), rat(7));
    }

    #[test]
    fn odd_weighted_lambert() {
        let spec = LambertSpec::simple(rat(1), 2, -1, 4, -2, 1).with_weight(Weight::Lin(2, -1));
        let s = lambert_series(&spec, 10).unwrap();
        assert_eq!(s.coeff(&rat(3)).unwrap(), rat(4));
    }

    #[test]
    fn start_beyond_window() {
        let spec = LambertSpec::simple(rat(1), 1, 0, 1, 0, 2).starting_at(50);
        assert!(lambert_series(&spec, 20).unwrap().is_zero());
    }

    #[test]
    fn sigma_star_values() {
        assert_eq!(sigma_star(1, 0, 4), 7);
        assert_eq!(sigma_star(2, 1, 4), 4);
        assert_eq!(sigma_star(4, 2, 6), 4);
        assert_eq!(sigma_star(2, 1, 1), 1);
        assert_eq!(sigma_star(4, 2, 1), 0);
    }

    #[test]
    fn binomial_weights() {
        assert_eq!(neg_binomial(0, 4), BigInt::from(1));
        assert_eq!(neg_binomial(3, 1), BigInt::from(1));
        assert_eq!(neg_binomial(3, 2), BigInt::from(4));
        assert_eq!(neg_binomial(2, 4), BigInt::from(10));
    }

    #[test]
    fn constant_numerator_needs_drop_flag() {
        let spec = LambertSpec::simple(rat(2), 0, 0, 6, 0, 1).with_weight(Weight::Inv(6, 0));
        assert!(matches!(lambert_series(&spec, 10), Err(Error::NonTerminating(_))));
        let s = lambert_series(&spec.dropping_constant(), 12).unwrap();
        // 2/(6n) * q^{6nk}, k >= 1: q^6 gets n=1 (1/3); q^12 gets n=1,k=2 and n=2,k=1.
        assert_eq!(s.coeff(&rat(6)).unwrap(), ratio(1, 3));
        assert_eq!(s.coeff(&rat(12)).unwrap(), ratio(1, 3) + ratio(1, 6));
        assert_eq!(s.get(0).unwrap(), rat(0));
    }

    #[test]
    fn invalid_specs_rejected() {
        let bad_den = LambertSpec::simple(rat(1), 1, 0, 1, -1, 1);
        assert!(matches!(lambert_series(&bad_den, 5), Err(Error::InvalidArgument(_))));
        let bad_weight = LambertSpec::simple(rat(1), 1, 0, 1, 0, 1).with_weight(Weight::Inv(1, -2));
        assert!(matches!(lambert_series(&bad_weight, 5), Err(Error::InvalidArgument(_))));
    }
}
