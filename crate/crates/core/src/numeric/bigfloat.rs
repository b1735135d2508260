//! Fixed-point arbitrary-precision complex numbers.
//!
//! A [`BigComplex`] holds `(re + i im) / 2^bits` with integer mantissas.
//! Absolute (not relative) precision is what the identity checks compare,
//! so a fixed binary point is sufficient: every value stays well inside
//! `[2^-bits, 2^bits]` for `|q| <= 0.999`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericError;
use crate::series::Rat;

/// Smallest accepted working precision, in decimal digits.
pub const MIN_DIGITS: u32 = 30;

/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 64;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal working precision and the binary scale derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
    bits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Result<Self, NumericError> {
        if digits < MIN_DIGITS {
            return Err(NumericError::InvalidPrecision(digits));
        }
        let bits = (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS;
        Ok(Precision { digits, bits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    fn min(self, other: Self) -> Self {
        if self.bits <= other.bits {
            self
        } else {
            other
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BigComplex {
    re: BigInt,
    im: BigInt,
    prec: Precision,
}

fn rescale(m: &BigInt, from: u32, to: u32) -> BigInt {
    if from == to {
        m.clone()
    } else if from > to {
        m >> (from - to)
    } else {
        m << (to - from)
    }
}

/// `m / 2^bits` as an `f64`, without overflowing for large `bits`.
fn fixed_to_f64(m: &BigInt, bits: u32) -> f64 {
    let excess = m.bits().saturating_sub(60) as u32;
    let shift = excess.min(bits);
    let top = (m >> shift).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - bits as i32)
}

fn from_f64_fixed(x: f64, bits: u32) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    // x = mant * 2^exp exactly.
    let (mant, exp) = {
        let bits64 = x.to_bits();
        let sign = if bits64 >> 63 == 1 { -1i64 } else { 1 };
        let e = ((bits64 >> 52) & 0x7ff) as i64;
        let f = (bits64 & ((1u64 << 52) - 1)) as i64;
        if e == 0 {
            (sign * f, -1074)
        } else {
            (sign * (f | (1i64 << 52)), e - 1075)
        }
    };
    let m = BigInt::from(mant);
    let total = exp + bits as i64;
    if total >= 0 {
        m << total as u32
    } else {
        m >> (-total) as u32
    }
}

impl BigComplex {
    pub fn zero(prec: Precision) -> Self {
        BigComplex { re: BigInt::zero(), im: BigInt::zero(), prec }
    }

    pub fn one(prec: Precision) -> Self {
        BigComplex { re: BigInt::one() << prec.bits, im: BigInt::zero(), prec }
    }

    pub fn from_i64(n: i64, prec: Precision) -> Self {
        BigComplex { re: BigInt::from(n) << prec.bits, im: BigInt::zero(), prec }
    }

    /// Nearest representable value to an exact rational.
    pub fn from_rat(r: &Rat, prec: Precision) -> Self {
        let scaled: BigInt = r.numer() << prec.bits;
        BigComplex { re: scaled.div_floor(r.denom()), im: BigInt::zero(), prec }
    }

    pub fn from_rats(re: &Rat, im: &Rat, prec: Precision) -> Self {
        let a = Self::from_rat(re, prec);
        let b = Self::from_rat(im, prec);
        BigComplex { re: a.re, im: b.re, prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: Precision) -> Self {
        BigComplex { re: from_f64_fixed(re, prec.bits), im: from_f64_fixed(im, prec.bits), prec }
    }

    /// Parses `a`, `a+bi`, `a-bi` or `bi` with decimal (optionally exponent) parts, exactly.
    pub fn parse(s: &str, prec: Precision) -> Result<Self, NumericError> {
        let err = || NumericError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let (re_s, im_s) = if let Some(body) = t.strip_suffix('i') {
            // Split at the last sign that is not the leading one or part of an exponent.
            let bytes = body.as_bytes();
            let mut split = None;
            for idx in (1..bytes.len()).rev() {
                let c = bytes[idx];
                if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                    split = Some(idx);
                    break;
                }
            }
            match split {
                Some(idx) => (&body[..idx], &body[idx..]),
                None => ("0", body),
            }
        } else {
            (t.as_str(), "0")
        };
        let im_s = match im_s {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re = parse_decimal(re_s).ok_or_else(err)?;
        let im = parse_decimal(im_s).ok_or_else(err)?;
        Ok(Self::from_rats(&re, &im, prec))
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.prec.bits)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.prec.bits)
    }

    pub fn real(&self) -> Self {
        BigComplex { re: self.re.clone(), im: BigInt::zero(), prec: self.prec }
    }

    pub fn imag(&self) -> Self {
        BigComplex { re: self.im.clone(), im: BigInt::zero(), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im, prec: self.prec }
    }

    /// Same value at another precision (rounding down or zero-extending).
    pub fn with_precision(&self, prec: Precision) -> Self {
        BigComplex {
            re: rescale(&self.re, self.prec.bits, prec.bits),
            im: rescale(&self.im, self.prec.bits, prec.bits),
            prec,
        }
    }

    /// `log10 |z|`, accurate to double precision; `-inf` for an exact zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let mag_bits = self.re.bits().max(self.im.bits()) as i64;
        let shift = (mag_bits - 60).max(0) as u32;
        let a = (&self.re >> shift).to_f64().unwrap_or(0.0);
        let b = (&self.im >> shift).to_f64().unwrap_or(0.0);
        (a.hypot(b)).log10() + (shift as f64 - self.prec.bits as f64) * std::f64::consts::LOG10_2
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> Self {
        let b = self.prec.bits;
        BigComplex { re: (&self.re * &self.re + &self.im * &self.im) >> b, im: BigInt::zero(), prec: self.prec }
    }

    /// Max-norm of the mantissa in bits above the binary point; a cheap magnitude bound.
    fn magnitude_bits(&self) -> i64 {
        self.re.bits().max(self.im.bits()) as i64 - self.prec.bits as i64
    }

    /// True when `|z| < 2^{-k}` is certain, from the mantissa lengths alone.
    pub fn below_pow2(&self, k: i64) -> bool {
        self.magnitude_bits() + 1 < -k
    }

    pub fn scale_pow2(&self, k: i32) -> Self {
        let sh = |m: &BigInt| if k >= 0 { m << k as u32 } else { m >> (-k) as u32 };
        BigComplex { re: sh(&self.re), im: sh(&self.im), prec: self.prec }
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        BigComplex { re: &self.re * n, im: &self.im * n, prec: self.prec }
    }

    pub fn div_i64(&self, n: i64) -> Self {
        BigComplex { re: self.re.div_floor(&BigInt::from(n)), im: self.im.div_floor(&BigInt::from(n)), prec: self.prec }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut result = BigComplex::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (BigInt, BigInt, BigInt, BigInt, Precision) {
        let p = self.prec.min(other.prec);
        (
            rescale(&self.re, self.prec.bits, p.bits),
            rescale(&self.im, self.prec.bits, p.bits),
            rescale(&other.re, other.prec.bits, p.bits),
            rescale(&other.im, other.prec.bits, p.bits),
            p,
        )
    }

    /// Decimal rendering with `digits` significant fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let part = |m: &BigInt| -> String {
            let neg = m.is_negative();
            let scale = BigInt::from(10u32).pow(digits as u32);
            let v: BigInt = (m.abs() * &scale) >> self.prec.bits;
            let (int, frac) = v.div_rem(&scale);
            format!("{}{}.{:0>width$}", if neg { "-" } else { "" }, int, frac, width = digits)
        };
        if self.im.is_zero() {
            part(&self.re)
        } else {
            let im = part(&self.im);
            if let Some(abs) = im.strip_prefix('-') {
                format!("{} - {}i", part(&self.re), abs)
            } else {
                format!("{} + {}i", part(&self.re), im)
            }
        }
    }
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let mut r = Rat::new(n, BigInt::from(10u32).pow(frac_part.len() as u32));
    let ten = Rat::from_integer(BigInt::from(10));
    if exp >= 0 {
        r *= num_traits::pow(ten, exp as usize);
    } else {
        r /= num_traits::pow(ten, (-exp) as usize);
    }
    Some(if neg { -r } else { r })
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &'a BigComplex) -> BigComplex {
        let (a, b, c, d, prec) = self.aligned(rhs);
        BigComplex { re: a + c, im: b + d, prec }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &'a BigComplex) -> BigComplex {
        let (a, b, c, d, prec) = self.aligned(rhs);
        BigComplex { re: a - c, im: b - d, prec }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &'a BigComplex) -> BigComplex {
        let (a, b, c, d, prec) = self.aligned(rhs);
        let bits = prec.bits;
        if b.is_zero() && d.is_zero() {
            return BigComplex { re: (a * c) >> bits, im: BigInt::zero(), prec };
        }
        let re = (&a * &c - &b * &d) >> bits;
        let im = (a * d + b * c) >> bits;
        BigComplex { re, im, prec }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    /// Panics on division by an exact zero.
    fn div(self, rhs: &'a BigComplex) -> BigComplex {
        let (a, b, c, d, prec) = self.aligned(rhs);
        let bits = prec.bits;
        let den = &c * &c + &d * &d;
        assert!(!den.is_zero(), "BigComplex division by zero");
        let re = ((&a * &c + &b * &d) << bits).div_floor(&den);
        let im = ((b * c - a * d) << bits).div_floor(&den);
        BigComplex { re, im, prec }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im, prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &'a BigComplex) -> BigComplex {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<BigComplex> for &'a BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigComplex({}, P={})", self.to_decimal(24), self.prec.digits)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(20)))
    }
}

/// Per-precision constants and the transcendental functions that need them.
///
/// Build one per working precision and pass it down explicitly.
#[derive(Debug, Clone)]
pub struct Ctx {
    prec: Precision,
    pi: BigComplex,
    ln2: BigComplex,
}

/// `atan(1/x)` or `atanh(1/x)` scaled by `2^bits`, by the alternating/plain series.
fn arc_series(x: u64, bits: u32, hyperbolic: bool) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if hyperbolic || k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

impl Ctx {
    pub fn new(digits: u32) -> Result<Self, NumericError> {
        let prec = Precision::new(digits)?;
        let work = prec.bits + 32;
        let pi_m = (arc_series(5, work, false) * 16 - arc_series(239, work, false) * 4) >> 32;
        let ln2_m = (arc_series(3, work, true) * 2) >> 32;
        Ok(Ctx {
            prec,
            pi: BigComplex { re: pi_m, im: BigInt::zero(), prec },
            ln2: BigComplex { re: ln2_m, im: BigInt::zero(), prec },
        })
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn digits(&self) -> u32 {
        self.prec.digits
    }

    pub fn pi(&self) -> BigComplex {
        self.pi.clone()
    }

    pub fn zero(&self) -> BigComplex {
        BigComplex::zero(self.prec)
    }

    pub fn one(&self) -> BigComplex {
        BigComplex::one(self.prec)
    }

    pub fn int(&self, n: i64) -> BigComplex {
        BigComplex::from_i64(n, self.prec)
    }

    pub fn rat(&self, r: &Rat) -> BigComplex {
        BigComplex::from_rat(r, self.prec)
    }

    pub fn parse(&self, s: &str) -> Result<BigComplex, NumericError> {
        BigComplex::parse(s, self.prec)
    }

    /// `10^{-k}` as a value at this precision.
    pub fn pow10_neg(&self, k: u32) -> BigComplex {
        let den = BigInt::from(10u32).pow(k);
        BigComplex { re: (BigInt::one() << self.prec.bits) / den, im: BigInt::zero(), prec: self.prec }
    }

    /// Complex exponential by argument reduction, Taylor series and repeated squaring.
    pub fn exp(&self, z: &BigComplex) -> BigComplex {
        let z = z.with_precision(self.prec);
        if z.is_zero() {
            return self.one();
        }
        let extra = 40u32;
        let wp = Precision { digits: self.prec.digits, bits: self.prec.bits + extra };
        let z = z.with_precision(wp);
        let ln2 = self.ln2.with_precision(wp);
        let two_pi = self.pi.with_precision(wp).mul_i64(2);
        let k = (z.re_f64() / std::f64::consts::LN_2).round() as i64;
        let turns = (z.im_f64() / (2.0 * std::f64::consts::PI)).round() as i64;
        let r_re = &z.real() - &ln2.mul_i64(k);
        let r_im = &z.imag() - &two_pi.mul_i64(turns);
        let r = BigComplex { re: r_re.re, im: r_im.re, prec: wp };
        // |r| <= ~3.5; halve until tiny so the Taylor tail dies quickly.
        let squarings = ((wp.bits as f64).sqrt() / 2.0).ceil() as u32 + 2;
        let w = r.scale_pow2(-(squarings as i32));
        let mut sum = BigComplex::one(wp);
        let mut term = BigComplex::one(wp);
        let mut n = 1i64;
        loop {
            term = (&term * &w).div_i64(n);
            // Floor rounding leaves negative terms at -1 ulp instead of zero.
            if term.re.bits() <= 2 && term.im.bits() <= 2 {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum.scale_pow2(k as i32).with_precision(self.prec)
    }

    /// Principal-branch logarithm via Newton's iteration on [`exp`](Self::exp).
    pub fn ln(&self, z: &BigComplex) -> Result<BigComplex, NumericError> {
        if z.is_zero() {
            return Err(NumericError::LogOfZero);
        }
        let (a, b) = (z.re_f64(), z.im_f64());
        let guess_re = if a == 0.0 && b == 0.0 {
            z.log10_abs() / std::f64::consts::LOG10_E
        } else {
            a.hypot(b).ln()
        };
        let mut w = BigComplex::from_f64(guess_re, b.atan2(a), self.prec);
        let tol = -(self.prec.bits as i64) + 8;
        for _ in 0..64 {
            let corr = &(z * &self.exp(&-&w)) - &self.one();
            w = &w + &corr;
            if corr.below_pow2(-tol) {
                // One more step squares the error below the last bit.
                let corr = &(z * &self.exp(&-&w)) - &self.one();
                w = &w + &corr;
                return Ok(w);
            }
        }
        Ok(w)
    }

    /// `base^{power}` on the branch fixed by `log_base`.
    pub fn pow_with_log(&self, log_base: &BigComplex, power: &BigComplex) -> BigComplex {
        self.exp(&(log_base * power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigComplex, b: &BigComplex, digits: i32) -> bool {
        (a - b).log10_abs() < -(digits as f64)
    }

    #[test]
    fn precision_floor() {
        assert!(Precision::new(29).is_err());
        assert!(Precision::new(30).is_ok());
    }

    #[test]
    fn pi_digits() {
        let ctx = Ctx::new(60).unwrap();
        let s = ctx.pi().to_decimal(50);
        assert_eq!(s, "3.14159265358979323846264338327950288419716939937510");
    }

    #[test]
    fn exp_and_ln_roundtrip() {
        let ctx = Ctx::new(80).unwrap();
        let z = ctx.parse("0.3-1.7i").unwrap();
        let back = ctx.ln(&ctx.exp(&z)).unwrap();
        assert!(close(&back, &z, 78));
        let e = ctx.exp(&ctx.one());
        assert!(e.to_decimal(40).starts_with("2.718281828459045235360287471352662497757"));
        let ln2 = ctx.ln(&ctx.int(2)).unwrap();
        assert!(ln2.to_decimal(30).starts_with("0.693147180559945309417232121458"));
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let ctx = Ctx::new(50).unwrap();
        let ipi = BigComplex { re: BigInt::zero(), im: ctx.pi().re.clone(), prec: ctx.precision() };
        assert!(close(&ctx.exp(&ipi), &ctx.int(-1), 48));
    }

    #[test]
    fn parse_forms() {
        let p = Precision::new(40).unwrap();
        let z = BigComplex::parse("0.25+0.1i", p).unwrap();
        assert!((z.re_f64() - 0.25).abs() < 1e-15 && (z.im_f64() - 0.1).abs() < 1e-15);
        let w = BigComplex::parse("-2e-3-i", p).unwrap();
        assert!((w.re_f64() + 0.002).abs() < 1e-15 && (w.im_f64() + 1.0).abs() < 1e-15);
        assert!(BigComplex::parse("abc", p).is_err());
        let third = BigComplex::parse("1", p).unwrap().div_i64(3);
        assert!(third.to_decimal(10).starts_with("0.3333333333"));
    }

    #[test]
    fn division_and_magnitude() {
        let ctx = Ctx::new(40).unwrap();
        let a = ctx.parse("1+2i").unwrap();
        let b = ctx.parse("3-4i").unwrap();
        let q = &a / &b;
        assert!(close(&(&q * &b), &a, 38));
        assert!((ctx.pow10_neg(20).log10_abs() + 20.0).abs() < 1e-9);
        assert_eq!(ctx.zero().log10_abs(), f64::NEG_INFINITY);
    }
}
