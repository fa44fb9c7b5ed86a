//! Scalar backends: exact rationals, exact quadratic surds, and tolerant floats.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Default absolute tolerance of the float backend.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Surd,
    Float,
}

/// Field element used for every coefficient in the crate.
///
/// Exact backends compare exactly; the float backend compares with an
/// absolute tolerance carried by each value.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    /// Nearest representable value; exact backends convert the binary float exactly.
    fn from_f64(x: f64) -> Self;
    fn is_zero(&self) -> bool;
    /// Sign with the backend's notion of zero.
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    /// Exact rational value, when the element is rational.
    fn to_rational(&self) -> Option<BigRational>;
    /// Square root inside the backend, `None` when it leaves the field or the input is negative.
    fn try_sqrt(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_exact() -> bool {
        Self::BACKEND != Backend::Float
    }

    fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// True when the value is zero or its magnitude does not exceed `tol`.
    fn is_negligible(&self, tol: f64) -> bool {
        self.is_zero() || self.to_f64().abs() <= tol
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Radicand shared by the value, 1 for rationals and floats.
    fn radicand(&self) -> u64 {
        1
    }
}

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if Signed::is_negative(q) {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(Zero::zero)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_negative(self) {
            -1
        } else {
            1
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn try_sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

/// Float with an absolute comparison tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Real {
    pub value: f64,
    pub tol: f64,
}

impl Real {
    pub fn new(value: f64) -> Self {
        Real { value, tol: DEFAULT_TOL }
    }

    pub fn with_tol(value: f64, tol: f64) -> Self {
        Real { value, tol }
    }

    fn combine(self, other: Real, value: f64) -> Real {
        Real { value, tol: self.tol.max(other.tol) }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, o: Real) -> Real {
        self.combine(o, self.value + o.value)
    }
}
impl Sub for Real {
    type Output = Real;
    fn sub(self, o: Real) -> Real {
        self.combine(o, self.value - o.value)
    }
}
impl Mul for Real {
    type Output = Real;
    fn mul(self, o: Real) -> Real {
        self.combine(o, self.value * o.value)
    }
}
impl Div for Real {
    type Output = Real;
    fn div(self, o: Real) -> Real {
        self.combine(o, self.value / o.value)
    }
}
impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { value: -self.value, tol: self.tol }
    }
}

impl Scalar for Real {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Real::new(0.0)
    }
    fn one() -> Self {
        Real::new(1.0)
    }
    fn from_rational(q: &BigRational) -> Self {
        Real::new(ToPrimitive::to_f64(q).unwrap_or(f64::NAN))
    }
    fn from_f64(x: f64) -> Self {
        Real::new(x)
    }
    fn is_zero(&self) -> bool {
        self.value.abs() <= self.tol
    }
    fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.value < 0.0 {
            -1
        } else {
            1
        }
    }
    fn to_f64(&self) -> f64 {
        self.value
    }
    fn to_rational(&self) -> Option<BigRational> {
        None
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.value < -self.tol {
            None
        } else {
            Some(Real { value: self.value.max(0.0).sqrt(), tol: self.tol })
        }
    }
}

/// Element `rational + irrational * sqrt(radicand)` of a real quadratic field.
///
/// The radicand is a square-free integer, 1 for plain rationals. Arithmetic
/// between values carrying different radicands panics: such values do not
/// live in a common quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    rational: BigRational,
    irrational: BigRational,
    radicand: u64,
}

impl Surd {
    pub fn new(rational: BigRational, irrational: BigRational, radicand: u64) -> Self {
        let (k, free) = split_square(radicand);
        Surd::normalized(rational, irrational * BigRational::from_integer(BigInt::from(k)), free)
    }

    fn normalized(rational: BigRational, irrational: BigRational, radicand: u64) -> Self {
        if Zero::is_zero(&irrational) || radicand == 1 {
            let rational = if radicand == 1 { rational + irrational } else { rational };
            Surd { rational, irrational: Zero::zero(), radicand: 1 }
        } else {
            Surd { rational, irrational, radicand }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    fn common_radicand(&self, other: &Surd) -> u64 {
        match (self.radicand, other.radicand) {
            (1, r) | (r, 1) => r,
            (r, s) if r == s => r,
            (r, s) => panic!("incompatible radicands sqrt({r}) and sqrt({s})"),
        }
    }

    fn conjugate(&self) -> Surd {
        Surd {
            rational: self.rational.clone(),
            irrational: -self.irrational.clone(),
            radicand: self.radicand,
        }
    }

    fn field_norm(&self) -> BigRational {
        let r = BigRational::from_integer(BigInt::from(self.radicand));
        &self.rational * &self.rational - &self.irrational * &self.irrational * r
    }
}

/// Writes `n = k^2 * f` with `f` square-free, returning `(k, f)`.
fn split_square(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut rest = n;
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, rest)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.rational)
        } else if Zero::is_zero(&self.rational) {
            write!(f, "{}*sqrt({})", self.irrational, self.radicand)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational, self.irrational, self.radicand)
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let r = self.common_radicand(&o);
        Surd::normalized(self.rational + o.rational, self.irrational + o.irrational, r)
    }
}
impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        self + (-o)
    }
}
impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { rational: -self.rational, irrational: -self.irrational, radicand: self.radicand }
    }
}
impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let r = self.common_radicand(&o);
        let rr = BigRational::from_integer(BigInt::from(r));
        let rational = &self.rational * &o.rational + &self.irrational * &o.irrational * rr;
        let irrational = &self.rational * &o.irrational + &self.irrational * &o.rational;
        Surd::normalized(rational, irrational, r)
    }
}
impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let norm = o.field_norm();
        assert!(!Zero::is_zero(&norm), "division by zero");
        let num = self * o.conjugate();
        Surd::normalized(num.rational / &norm, num.irrational / &norm, num.radicand)
    }
}

impl Scalar for Surd {
    const BACKEND: Backend = Backend::Surd;

    fn zero() -> Self {
        Surd::normalized(Zero::zero(), Zero::zero(), 1)
    }
    fn one() -> Self {
        Surd::normalized(One::one(), Zero::zero(), 1)
    }
    fn from_rational(q: &BigRational) -> Self {
        Surd::normalized(q.clone(), Zero::zero(), 1)
    }
    fn from_f64(x: f64) -> Self {
        Surd::from_rational(&BigRational::from_float(x).unwrap_or_else(Zero::zero))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.rational) && Zero::is_zero(&self.irrational)
    }
    fn signum(&self) -> i32 {
        let a = self.rational.signum_i32();
        let b = self.irrational.signum_i32();
        if b == 0 || a == b {
            return if a == 0 { b } else { a };
        }
        if a == 0 {
            return b;
        }
        let r = BigRational::from_integer(BigInt::from(self.radicand));
        let lhs = &self.rational * &self.rational;
        let rhs = &self.irrational * &self.irrational * r;
        if lhs > rhs {
            a
        } else {
            b
        }
    }
    fn to_f64(&self) -> f64 {
        let a = ToPrimitive::to_f64(&self.rational).unwrap_or(f64::NAN);
        let b = ToPrimitive::to_f64(&self.irrational).unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }
    fn to_rational(&self) -> Option<BigRational> {
        if self.radicand == 1 {
            Some(self.rational.clone())
        } else {
            None
        }
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        if self.radicand == 1 {
            return surd_sqrt_of_rational(&self.rational);
        }
        // (c + d sqrt r)^2 = a + b sqrt r  with c, d rational.
        let disc = rational_sqrt(&self.field_norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for c_sq in [(&self.rational + &disc) / &two, (&self.rational - &disc) / &two] {
            if let Some(c) = rational_sqrt(&c_sq) {
                if Zero::is_zero(&c) {
                    continue;
                }
                let d = &self.irrational / (&two * &c);
                let cand = Surd::normalized(c.clone(), d.clone(), self.radicand);
                if cand.signum() >= 0 && cand.clone() * cand.clone() == *self {
                    return Some(cand);
                }
                let neg = -cand;
                if neg.signum() >= 0 && neg.clone() * neg.clone() == *self {
                    return Some(neg);
                }
            }
        }
        None
    }
    fn radicand(&self) -> u64 {
        self.radicand
    }
}

/// Square root of a non-negative rational as a surd with a small square-free radicand.
pub fn surd_sqrt_of_rational(q: &BigRational) -> Option<Surd> {
    if Signed::is_negative(q) {
        return None;
    }
    if Zero::is_zero(q) {
        return Some(Surd::zero());
    }
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = (q.numer() * q.denom()).to_u64()?;
    let (k, free) = split_square(nd);
    let coeff = BigRational::new(BigInt::from(k), q.denom().clone());
    if free == 1 {
        Some(Surd::from_rational(&coeff))
    } else {
        Some(Surd::normalized(Zero::zero(), coeff, free))
    }
}

trait SignumI32 {
    fn signum_i32(&self) -> i32;
}

impl SignumI32 for BigRational {
    fn signum_i32(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_negative(self) {
            -1
        } else {
            1
        }
    }
}

/// Greatest common divisor of integers, with `gcd(0, 0) = 0`.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Parses `p`, `p/q`, or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let negative = mantissa.starts_with('-');
    let digits = mantissa.trim_start_matches(['+', '-']);
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value = value * BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value = value / BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_arithmetic() {
        let s2 = surd_sqrt_of_rational(&rat(2, 1)).unwrap();
        assert_eq!(s2.clone() * s2.clone(), Surd::from_i64(2));
        let half = surd_sqrt_of_rational(&rat(1, 2)).unwrap();
        assert_eq!(half.clone() * Surd::from_i64(2), s2.clone());
        assert_eq!((Surd::one() / s2.clone()) * s2.clone(), Surd::one());
        assert_eq!((Surd::from_i64(1) - s2.clone()).signum(), -1);
        assert_eq!((Surd::from_i64(2) - s2.clone()).signum(), 1);
    }

    #[test]
    fn surd_sqrt_of_surd() {
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        let s2 = surd_sqrt_of_rational(&rat(2, 1)).unwrap();
        let x = Surd::from_i64(3) + Surd::from_i64(2) * s2.clone();
        assert_eq!(x.try_sqrt().unwrap(), Surd::one() + s2);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("1e-2").unwrap(), rat(1, 100));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn float_tolerance() {
        let x = Real::new(1e-12);
        assert!(Scalar::is_zero(&x));
        assert!(!Scalar::is_zero(&Real::with_tol(1e-12, 1e-15)));
    }
}
