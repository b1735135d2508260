//! Truncated power series in `t = q^{1/4}` with exact rational coefficients.
//!
//! A [`PrefSeries`] stores `q^{e/4} * (c_0 + c_1 q^{1/4} + ... + c_T q^{T/4})`
//! together with the absolute quarter exponent through which the
//! coefficients are known. Every operation returns the widest window that
//! its inputs justify, so downstream checks never read past what is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exec;

/// Exact rational coefficient, always kept in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Output length above which convolution fans out over the worker pool.
const PAR_MUL_THRESHOLD: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by the zero series")]
    DivisionByZeroSeries,
    #[error("antiderivative needs a log q term (q^-1 coefficient is {coeff})")]
    LogTermRequired { coeff: String },
    #[error("logarithm needs a series of the form 1 + O(q^(1/4))")]
    NonUnitLog,
    #[error("q -> -q is undefined on fractional powers of q")]
    FractionalNegation,
    #[error("exponent {exponent} is outside the known window [{lo}, {hi}]")]
    OutOfWindow { exponent: String, lo: String, hi: String },
    #[error("exponent {0} is not a multiple of 1/4")]
    OffGrid(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Converts a quarter-unit exponent into the rational power of `q` it denotes.
pub fn quarter_to_rat(k: i64) -> Rat {
    Rat::new(BigInt::from(k), BigInt::from(4))
}

/// Converts a rational power of `q` into quarter units.
pub fn rat_to_quarter(e: &Rat) -> Result<i64> {
    let scaled = e * Rat::from_integer(BigInt::from(4));
    if !scaled.is_integer() {
        return Err(SeriesError::OffGrid(e.to_string()));
    }
    scaled
        .to_integer()
        .to_i64()
        .ok_or_else(|| SeriesError::OffGrid(e.to_string()))
}

/// Truncated series `q^{prefix/4} * sum_k body[k] q^{k/4}`, known through
/// the absolute quarter exponent `end`.
///
/// A nonzero series always has `body[0] != 0` and
/// `body.len() == end - prefix + 1`. The zero series has an empty body and
/// prefix 0 but still carries `end`: it says "zero modulo `q^{(end+1)/4}`".
#[derive(Clone, PartialEq, Eq)]
pub struct PrefSeries {
    prefix: i64,
    body: Vec<Rat>,
    end: i64,
}

impl PrefSeries {
    /// The zero series, known through absolute quarter exponent `end`.
    pub fn zero(end: i64) -> Self {
        PrefSeries { prefix: 0, body: Vec::new(), end }
    }

    /// Builds `q^{prefix/4} * sum body[k] q^{k/4}` known through relative index `trunc`.
    ///
    /// `body` is zero-padded or cut to `trunc + 1` entries, then normalized.
    pub fn from_quarters(prefix: i64, mut body: Vec<Rat>, trunc: i64) -> Self {
        let len = (trunc + 1).max(0) as usize;
        body.resize(len, Rat::zero());
        PrefSeries { prefix, body, end: prefix + trunc }.normalized()
    }

    /// Series with integer coefficients on integer powers of `q`:
    /// `coeffs[n]` is the coefficient of `q^n`, known through `q^{order}`
    /// (all quarter exponents below `q^{order+1}`).
    pub fn from_q_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>, order: i64) -> Self {
        let end = 4 * order + 3;
        let mut body = vec![Rat::zero(); (end + 1).max(0) as usize];
        for (n, c) in coeffs.into_iter().enumerate() {
            let idx = 4 * n;
            if idx < body.len() {
                body[idx] = Rat::from_integer(c.into());
            }
        }
        PrefSeries { prefix: 0, body, end }.normalized()
    }

    /// Same as [`from_q_integers`](Self::from_q_integers) with rational coefficients.
    pub fn from_q_rats(coeffs: Vec<Rat>, order: i64) -> Self {
        let end = 4 * order + 3;
        let mut body = vec![Rat::zero(); (end + 1).max(0) as usize];
        for (n, c) in coeffs.into_iter().enumerate() {
            let idx = 4 * n;
            if idx < body.len() {
                body[idx] = c;
            }
        }
        PrefSeries { prefix: 0, body, end }.normalized()
    }

    /// `coef * q^{exp/4}` known through absolute quarter exponent `end`.
    pub fn monomial(coef: Rat, exp: i64, end: i64) -> Self {
        if exp > end || coef.is_zero() {
            return PrefSeries::zero(end);
        }
        let mut body = vec![Rat::zero(); (end - exp + 1) as usize];
        body[0] = coef;
        PrefSeries { prefix: exp, body, end }
    }

    pub fn constant(c: Rat, end: i64) -> Self {
        Self::monomial(c, 0, end)
    }

    pub fn one(end: i64) -> Self {
        Self::constant(Rat::one(), end)
    }

    pub fn prefix(&self) -> i64 {
        self.prefix
    }

    /// Relative truncation: number of known body coefficients minus one.
    pub fn trunc(&self) -> i64 {
        self.end - self.prefix
    }

    /// Absolute quarter exponent of the last known coefficient.
    pub fn end(&self) -> i64 {
        self.end
    }

    pub fn body(&self) -> &[Rat] {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_empty()
    }

    /// True iff only integer powers of `q` occur.
    pub fn is_q_integral(&self) -> bool {
        self.body
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || (self.prefix + k as i64).rem_euclid(4) == 0)
    }

    /// Coefficient at absolute quarter exponent `k`, or `None` past the window.
    /// Exponents below the prefix read as zero.
    pub fn get(&self, k: i64) -> Option<Rat> {
        if k > self.end {
            return None;
        }
        if self.is_zero() || k < self.prefix {
            return Some(Rat::zero());
        }
        Some(self.body[(k - self.prefix) as usize].clone())
    }

    fn get_ref(&self, k: i64) -> Option<&Rat> {
        if self.is_zero() || k < self.prefix || k > self.end {
            None
        } else {
            Some(&self.body[(k - self.prefix) as usize])
        }
    }

    /// Exact coefficient of `q^{exponent}`; `exponent` must lie in `[prefix, end]`.
    pub fn coeff(&self, exponent: &Rat) -> Result<Rat> {
        let k = rat_to_quarter(exponent)?;
        self.coeff_quarter(k)
    }

    /// [`coeff`](Self::coeff) addressed in quarter units.
    pub fn coeff_quarter(&self, k: i64) -> Result<Rat> {
        let lo = if self.is_zero() { i64::MIN } else { self.prefix };
        if k < lo || k > self.end {
            return Err(SeriesError::OutOfWindow {
                exponent: quarter_to_rat(k).to_string(),
                lo: quarter_to_rat(if self.is_zero() { self.end } else { self.prefix }).to_string(),
                hi: quarter_to_rat(self.end).to_string(),
            });
        }
        Ok(self.get(k).expect("checked window"))
    }

    /// Iterator over `(absolute quarter exponent, coefficient)` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.body
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.prefix + k as i64, c))
    }

    fn normalized(mut self) -> Self {
        match self.body.iter().position(|c| !c.is_zero()) {
            None => PrefSeries::zero(self.end),
            Some(0) => self,
            Some(s) => {
                self.body.drain(..s);
                self.prefix += s as i64;
                self
            }
        }
    }

    /// Forgets everything after absolute quarter exponent `end`.
    pub fn truncate(&self, end: i64) -> Self {
        if end >= self.end {
            return self.clone();
        }
        if self.is_zero() || end < self.prefix {
            return PrefSeries::zero(end);
        }
        let keep = (end - self.prefix + 1) as usize;
        PrefSeries { prefix: self.prefix, body: self.body[..keep].to_vec(), end }.normalized()
    }

    /// Multiplies by `q^{k/4}`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return PrefSeries::zero(self.end + k);
        }
        PrefSeries { prefix: self.prefix + k, body: self.body.clone(), end: self.end + k }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return PrefSeries::zero(self.end);
        }
        PrefSeries {
            prefix: self.prefix,
            body: self.body.iter().map(|x| x * c).collect(),
            end: self.end,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let end = self.end.min(other.end);
        let lo = match (self.is_zero(), other.is_zero()) {
            (true, true) => return PrefSeries::zero(end),
            (true, false) => other.prefix,
            (false, true) => self.prefix,
            (false, false) => self.prefix.min(other.prefix),
        };
        if lo > end {
            return PrefSeries::zero(end);
        }
        let body = (lo..=end)
            .map(|k| match (self.get_ref(k), other.get_ref(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Rat::zero(),
            })
            .collect();
        PrefSeries { prefix: lo, body, end }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PrefSeries {
            prefix: self.prefix,
            body: self.body.iter().map(|c| -c).collect(),
            end: self.end,
        }
    }

    /// Cauchy product. The relative window is the smaller of the two inputs'.
    pub fn mul(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return PrefSeries::zero(self.end + other.end + 1),
            (true, false) => return PrefSeries::zero(self.end + other.prefix),
            (false, true) => return PrefSeries::zero(other.end + self.prefix),
            (false, false) => {}
        }
        let trunc = self.trunc().min(other.trunc());
        let prefix = self.prefix + other.prefix;
        let body = convolve(&self.body, &other.body, trunc as usize);
        PrefSeries { prefix, body, end: prefix + trunc }.normalized()
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            // Shares the relative window of `self`, as a product would.
            return PrefSeries::one(self.trunc().max(0));
        }
        let mut result: Option<PrefSeries> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.expect("n > 0")
    }

    /// Quotient `self / other`; the divisor's leading coefficient must be its first body entry.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZeroSeries);
        }
        if self.is_zero() {
            return Ok(PrefSeries::zero(self.end - other.prefix));
        }
        let trunc = self.trunc().min(other.trunc());
        let n = trunc as usize + 1;
        let lead = &other.body[0];
        let lead_inv = lead.recip();
        let divisor: Vec<(usize, &Rat)> = other
            .body
            .iter()
            .enumerate()
            .skip(1)
            .take(n.saturating_sub(1))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut quot: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.body[k].clone();
            for &(i, b) in divisor.iter() {
                if i > k {
                    break;
                }
                let q = &quot[k - i];
                if !q.is_zero() {
                    acc -= b * q;
                }
            }
            quot.push(if acc.is_zero() { acc } else { acc * &lead_inv });
        }
        let prefix = self.prefix - other.prefix;
        Ok(PrefSeries { prefix, body: quot, end: prefix + trunc }.normalized())
    }

    /// `d/dq`, termwise on the quarter grid. The absolute window moves down by one power of `q`.
    pub fn derivative_q(&self) -> Self {
        if self.is_zero() {
            return PrefSeries::zero(self.end - 4);
        }
        let quarter = Rat::new(BigInt::one(), BigInt::from(4));
        let body = self
            .body
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = self.prefix + k as i64;
                if c.is_zero() || e == 0 {
                    Rat::zero()
                } else {
                    c * Rat::from_integer(BigInt::from(e)) * &quarter
                }
            })
            .collect();
        PrefSeries { prefix: self.prefix - 4, body, end: self.end - 4 }.normalized()
    }

    /// Antiderivative with zero constant of integration.
    pub fn integrate_q(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(PrefSeries::zero(self.end + 4));
        }
        if let Some(c) = self.get_ref(-4) {
            if !c.is_zero() {
                return Err(SeriesError::LogTermRequired { coeff: c.to_string() });
            }
        }
        let body = self
            .body
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = self.prefix + k as i64 + 4;
                if c.is_zero() {
                    Rat::zero()
                } else {
                    c * Rat::new(BigInt::from(4), BigInt::from(e))
                }
            })
            .collect();
        // The q^-1 slot was checked to be zero, so the constant stays zero.
        Ok(PrefSeries { prefix: self.prefix + 4, body, end: self.end + 4 }.normalized())
    }

    /// Logarithm of a series `1 + O(q^{1/4})`, with zero constant term.
    ///
    /// Uses `t L'(t) = t A'(t) / A(t)` in the quarter variable `t`, solved
    /// coefficientwise, so no division by the series is materialized.
    pub fn log(&self) -> Result<Self> {
        if self.is_zero() || self.prefix != 0 || !self.body[0].is_one() {
            return Err(SeriesError::NonUnitLog);
        }
        let n = self.body.len();
        // d_k = coefficient k of t A'/A: k a_k = sum_{i=0}^{k} a_i d_{k-i}, a_0 = 1.
        let nz: Vec<(usize, &Rat)> =
            self.body.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut d: Vec<Rat> = Vec::with_capacity(n);
        d.push(Rat::zero());
        for k in 1..n {
            let mut acc = &self.body[k] * Rat::from_integer(BigInt::from(k));
            for &(i, a) in nz.iter() {
                if i >= k {
                    break;
                }
                let dk = &d[k - i];
                if !dk.is_zero() {
                    acc -= a * dk;
                }
            }
            d.push(acc);
        }
        let body: Vec<Rat> = d
            .into_iter()
            .enumerate()
            .map(|(k, dk)| if k == 0 || dk.is_zero() { Rat::zero() } else { dk / Rat::from_integer(BigInt::from(k)) })
            .collect();
        Ok(PrefSeries { prefix: 0, body, end: self.end }.normalized())
    }

    /// Substitutes `q -> q^m`.
    ///
    /// A series known modulo `t^{E+1}` becomes known modulo `t^{m(E+1)}`,
    /// which is the window returned (at least `m` times the old one).
    pub fn subst_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        let m = m as i64;
        let end = m * (self.end + 1) - 1;
        if self.is_zero() {
            return PrefSeries::zero(end);
        }
        let prefix = self.prefix * m;
        let mut body = vec![Rat::zero(); (end - prefix + 1) as usize];
        for (k, c) in self.body.iter().enumerate() {
            if !c.is_zero() {
                body[k * m as usize] = c.clone();
            }
        }
        PrefSeries { prefix, body, end }
    }

    /// Substitutes `q -> -q`; defined only on q-integral series.
    pub fn subst_negate(&self) -> Result<Self> {
        if !self.is_q_integral() {
            return Err(SeriesError::FractionalNegation);
        }
        let body = self
            .body
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let q_exp = (self.prefix + k as i64).div_euclid(4);
                if q_exp.is_odd() {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        Ok(PrefSeries { prefix: self.prefix, body, end: self.end })
    }

    /// First absolute quarter exponent (if any) where `self` and `other` differ,
    /// scanning up to the common window.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let diff = self.sub(other);
        let first = diff.terms().next().map(|(k, _)| k);
        first
    }
}

/// c_k = sum_{i+j=k} a_i b_j for k in 0..=trunc, skipping zero entries.
fn convolve(a: &[Rat], b: &[Rat], trunc: usize) -> Vec<Rat> {
    let nz_a: Vec<(usize, &Rat)> =
        a.iter().enumerate().take(trunc + 1).filter(|(_, c)| !c.is_zero()).collect();
    let nz_b: Vec<(usize, &Rat)> =
        b.iter().enumerate().take(trunc + 1).filter(|(_, c)| !c.is_zero()).collect();
    let b_dense = &b[..b.len().min(trunc + 1)];
    let coeff = |k: usize| -> Rat {
        let mut acc = Rat::zero();
        // Iterate over whichever side is sparser.
        if nz_a.len() <= nz_b.len() {
            for &(i, x) in nz_a.iter() {
                if i > k {
                    break;
                }
                if let Some(y) = b_dense.get(k - i) {
                    if !y.is_zero() {
                        acc += x * y;
                    }
                }
            }
        } else {
            for &(j, y) in nz_b.iter() {
                if j > k {
                    break;
                }
                if let Some(x) = a.get(k - j) {
                    if !x.is_zero() {
                        acc += x * y;
                    }
                }
            }
        }
        acc
    };
    let work = nz_a.len().saturating_mul(nz_b.len());
    exec::map_range(trunc + 1, work >= PAR_MUL_THRESHOLD * PAR_MUL_THRESHOLD / 4, coeff)
}

impl fmt::Debug for PrefSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrefSeries(prefix={}, end={}, {})", self.prefix, self.end, self)
    }
}

impl fmt::Display for PrefSeries {
    /// Nonzero terms as `c*q^(e)` followed by the order term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            write!(f, "{}*q^({})", c.abs(), quarter_to_rat(k))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", quarter_to_rat(self.end + 1))
    }
}

impl<'a> Add<&'a PrefSeries> for &'a PrefSeries {
    type Output = PrefSeries;
    fn add(self, rhs: &'a PrefSeries) -> PrefSeries {
        PrefSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a PrefSeries> for &'a PrefSeries {
    type Output = PrefSeries;
    fn sub(self, rhs: &'a PrefSeries) -> PrefSeries {
        PrefSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a PrefSeries> for &'a PrefSeries {
    type Output = PrefSeries;
    fn mul(self, rhs: &'a PrefSeries) -> PrefSeries {
        PrefSeries::mul(self, rhs)
    }
}

impl Neg for &PrefSeries {
    type Output = PrefSeries;
    fn neg(self) -> PrefSeries {
        PrefSeries::neg(self)
    }
}

/// Shorthand for an integer-valued [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi_oracle(order: i64) -> PrefSeries {
        let mut c = vec![0i64; (order + 1) as usize];
        let mut n = 0;
        while n * (n + 1) / 2 <= order {
            c[(n * (n + 1) / 2) as usize] = 1;
            n += 1;
        }
        PrefSeries::from_q_integers(c, order)
    }

    fn q_coeffs(s: &PrefSeries, upto: i64) -> Vec<Rat> {
        (0..=upto).map(|n| s.get(4 * n).unwrap()).collect()
    }

    #[test]
    fn add_realigns_prefixes() {
        let a = PrefSeries::monomial(rat(1), 2, 40);
        let b = PrefSeries::monomial(rat(1), 6, 40);
        let s = a.add(&b);
        assert_eq!(s.prefix(), 2);
        assert_eq!(s.coeff(&ratio(1, 2)).unwrap(), rat(1));
        assert_eq!(s.coeff(&ratio(3, 2)).unwrap(), rat(1));
        assert_eq!(s.get(3).unwrap(), rat(0));
    }

    #[test]
    fn add_zero_and_inverse() {
        let p = psi_oracle(20);
        assert_eq!(p.add(&PrefSeries::zero(p.end())), p);
        let z = p.add(&p.neg());
        assert!(z.is_zero());
        assert_eq!(z.end(), p.end());
    }

    #[test]
    fn psi_squared() {
        let p = psi_oracle(20);
        let sq = p.mul(&p);
        let want: Vec<Rat> = [1, 2, 1, 2, 2, 0].iter().map(|&x| rat(x)).collect();
        assert_eq!(q_coeffs(&sq, 5), want);
    }

    #[test]
    fn mul_identity_and_prefix_sum() {
        let p = psi_oracle(10);
        assert_eq!(p.mul(&PrefSeries::one(p.end())), p);
        let a = PrefSeries::monomial(rat(1), 1, 20);
        let b = PrefSeries::monomial(rat(1), 3, 20);
        let c = a.mul(&b);
        assert_eq!(c.prefix(), 4);
        assert_eq!(c.coeff(&rat(1)).unwrap(), rat(1));
    }

    #[test]
    fn geometric_division() {
        let num = PrefSeries::from_q_integers([1, 0, 0, 0, -1], 30);
        let den = PrefSeries::from_q_integers([1, -1], 30);
        let q = num.div(&den).unwrap();
        assert_eq!(q, PrefSeries::from_q_integers([1, 1, 1, 1], 30));
        let p = psi_oracle(15);
        assert_eq!(p.div(&p).unwrap(), PrefSeries::one(p.end()));
    }

    #[test]
    fn division_by_zero_series() {
        let p = psi_oracle(5);
        assert_eq!(p.div(&PrefSeries::zero(10)), Err(SeriesError::DivisionByZeroSeries));
    }

    #[test]
    fn derivative_basics() {
        let q2 = PrefSeries::monomial(rat(1), 8, 40);
        let d = q2.derivative_q();
        assert_eq!(d.prefix(), 4);
        assert_eq!(d.coeff(&rat(1)).unwrap(), rat(2));
        let t = PrefSeries::monomial(rat(1), 1, 40);
        let dt = t.derivative_q();
        assert_eq!(dt.prefix(), -3);
        assert_eq!(dt.coeff(&ratio(-3, 4)).unwrap(), ratio(1, 4));
    }

    #[test]
    fn derivative_of_log_geometric() {
        let order = 12;
        let coeffs: Vec<Rat> =
            (0..=order).map(|k| if k == 0 { rat(0) } else { ratio(1, k) }).collect();
        let l = PrefSeries::from_q_rats(coeffs, order);
        let d = l.derivative_q();
        let geo = PrefSeries::from_q_integers(vec![1; order as usize], order - 1);
        assert_eq!(d.truncate(geo.end()), geo.truncate(d.end()));
    }

    #[test]
    fn integrate_basics() {
        let one = PrefSeries::one(40);
        let i = one.integrate_q().unwrap();
        assert_eq!(i.prefix(), 4);
        assert_eq!(i.coeff(&rat(1)).unwrap(), rat(1));
        let inv = PrefSeries::monomial(rat(1), -4, 40);
        assert!(matches!(inv.integrate_q(), Err(SeriesError::LogTermRequired { .. })));
    }

    #[test]
    fn log_values() {
        assert!(PrefSeries::one(40).log().unwrap().is_zero());
        let order = 10;
        let geo = PrefSeries::from_q_integers(vec![1; 11], order);
        let l = geo.log().unwrap();
        for k in 1..=order {
            assert_eq!(l.get(4 * k).unwrap(), ratio(1, k));
        }
        let lp = psi_oracle(10).log().unwrap();
        assert_eq!(lp.coeff(&rat(1)).unwrap(), rat(1));
        let t = PrefSeries::monomial(rat(1), 1, 10);
        assert_eq!(t.log(), Err(SeriesError::NonUnitLog));
    }

    #[test]
    fn power_substitution() {
        let s = PrefSeries::from_q_integers([1, 1], 20).subst_power(3);
        assert_eq!(s.get(12).unwrap(), rat(1));
        assert_eq!(s.get(4).unwrap(), rat(0));
        let p2 = psi_oracle(20).subst_power(2);
        for (n, c) in [(0, 1), (1, 0), (2, 1), (4, 0), (6, 1), (12, 1)] {
            assert_eq!(p2.get(4 * n).unwrap(), rat(c));
        }
        let t9 = PrefSeries::monomial(rat(1), 1, 20).subst_power(9);
        assert_eq!(t9.prefix(), 9);
    }

    #[test]
    fn negation() {
        let n = psi_oracle(15).subst_negate().unwrap();
        for (e, c) in [(0, 1), (1, -1), (3, -1), (6, 1), (10, 1), (15, -1)] {
            assert_eq!(n.get(4 * e).unwrap(), rat(c));
        }
        assert_eq!(PrefSeries::one(10).subst_negate().unwrap(), PrefSeries::one(10));
        let t = PrefSeries::monomial(rat(1), 1, 10);
        assert_eq!(t.subst_negate(), Err(SeriesError::FractionalNegation));
    }

    #[test]
    fn coefficient_lookup() {
        let p = psi_oracle(10);
        assert_eq!(p.coeff(&rat(3)).unwrap(), rat(1));
        assert_eq!(p.coeff(&rat(2)).unwrap(), rat(0));
        let s = PrefSeries::from_quarters(2, vec![rat(1), rat(1)], 8);
        assert_eq!(s.coeff(&ratio(1, 2)).unwrap(), rat(1));
        assert!(matches!(s.coeff(&rat(100)), Err(SeriesError::OutOfWindow { .. })));
        assert!(matches!(s.coeff(&rat(0)), Err(SeriesError::OutOfWindow { .. })));
        assert!(matches!(s.coeff(&ratio(1, 3)), Err(SeriesError::OffGrid(_))));
    }

    #[test]
    fn window_accounting() {
        let a = PrefSeries::from_q_integers([1, 2, 3], 10);
        let b = PrefSeries::from_q_integers([1, 1], 5);
        assert_eq!(a.add(&b).end(), b.end());
        assert_eq!(a.mul(&b).end(), b.end());
        let shifted = a.shift(4);
        assert_eq!(shifted.mul(&b).trunc(), b.trunc());
        assert_eq!(a.derivative_q().end(), a.end() - 4);
    }

    #[test]
    fn display_is_readable() {
        let s = PrefSeries::from_quarters(2, vec![rat(1), rat(0), rat(0), rat(0), ratio(-1, 2)], 4);
        assert_eq!(s.to_string(), "1*q^(1/2) - 1/2*q^(3/2) + O(q^(7/4))");
    }
}
