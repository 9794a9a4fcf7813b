//! Exact rationals in lowest terms.
//!
//! A [`Rational`] is always stored as `num/den` with `gcd(|num|, den) = 1` and
//! `den >= 1`; the sign lives on the numerator and zero is `0/1`. Every
//! constructor and arithmetic operation re-establishes that form, so two equal
//! values are always structurally equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Int;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational<T> {
    num: T,
    den: T,
}

/// Decimal digit counts of a fraction's numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlashLengths {
    pub len_num: usize,
    pub len_den: usize,
    pub total: usize,
}

impl SlashLengths {
    /// The longer of the two parts.
    pub fn max(&self) -> usize {
        self.len_num.max(self.len_den)
    }
}

/// Count of decimal digits of `|n|`, with `digit_len(0) == 1`.
pub fn digit_len<T: Int>(n: &T) -> usize {
    n.decimal_len()
}

impl<T: Int> Rational<T> {
    /// Builds `p/q` in lowest terms with a positive denominator.
    pub fn new(p: T, q: T) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(p, q))
    }

    fn normalized(p: T, q: T) -> Self {
        debug_assert!(!q.is_zero());
        if p.is_zero() {
            return Self::zero();
        }
        let g = p.gcd(&q);
        let (mut num, mut den) = (p / g.clone(), q / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Self::from_parts_unchecked(num, den)
    }

    fn from_parts_unchecked(num: T, den: T) -> Self {
        let r = Self { num, den };
        debug_assert!(r.is_canonical(), "non-canonical rational {r:?}");
        r
    }

    pub fn from_integer(n: T) -> Self {
        Self { num: n, den: T::one() }
    }

    pub fn zero() -> Self {
        Self { num: T::zero(), den: T::one() }
    }

    pub fn one() -> Self {
        Self { num: T::one(), den: T::one() }
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn into_parts(self) -> (T, T) {
        (self.num, self.den)
    }

    /// True when the stored pair is in lowest terms with a positive denominator.
    pub fn is_canonical(&self) -> bool {
        self.den.is_positive()
            && if self.num.is_zero() { self.den.is_one() } else { self.num.gcd(&self.den).is_one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn abs(&self) -> Self {
        Self { num: self.num.abs(), den: self.den.clone() }
    }

    /// `-1`, `0` or `1` as an integer.
    pub fn signum(&self) -> T {
        self.num.signum()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // (a/b) / (c/d) = (a/c') * (d/b') after cross-cancelling.
        let g1 = self.num.gcd(&rhs.num);
        let g2 = self.den.gcd(&rhs.den);
        let mut num = (self.num.clone() / g1.clone()) * (rhs.den.clone() / g2.clone());
        let mut den = (self.den.clone() / g2) * (rhs.num.clone() / g1);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Self::from_parts_unchecked(num, den))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn slash_lengths(&self) -> SlashLengths {
        let len_num = self.num.decimal_len();
        let len_den = self.den.decimal_len();
        SlashLengths { len_num, len_den, total: len_num + len_den }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> T {
        self.num.div_floor(&self.den)
    }

    /// Nearest `f64`, good to about 17 significant digits for any magnitude
    /// representable as a double.
    pub fn to_f64(&self) -> f64 {
        if let (Some(n), Some(d)) = (self.num.to_f64(), self.den.to_f64()) {
            if n.abs() < 9.0e15 && d < 9.0e15 {
                return n / d;
            }
        }
        let shift = 18 + self.den.decimal_len() as i64 - self.num.decimal_len() as i64;
        let scaled = if shift >= 0 {
            (self.num.clone() * T::pow10(shift as usize)) / self.den.clone()
        } else {
            self.num.clone() / (self.den.clone() * T::pow10((-shift) as usize))
        };
        // Split the power so neither factor leaves the normal range.
        let half = (shift / 2) as i32;
        scaled.to_f64().unwrap_or(f64::NAN) * 10f64.powi(-half) * 10f64.powi(half - shift as i32)
    }

    /// Converts into another integer representation.
    pub fn convert<U: Int + From<T>>(self) -> Rational<U> {
        Rational { num: U::from(self.num), den: U::from(self.den) }
    }
}

impl<T: Int> Default for Rational<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Int> From<T> for Rational<T> {
    fn from(n: T) -> Self {
        Self::from_integer(n)
    }
}

impl<T: Int> Ord for Rational<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

impl<T: Int> PartialOrd for Rational<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Int> Neg for Rational<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { num: -self.num, den: self.den }
    }
}

impl<T: Int> Neg for &Rational<T> {
    type Output = Rational<T>;
    fn neg(self) -> Rational<T> {
        Rational { num: -self.num.clone(), den: self.den.clone() }
    }
}

fn add_impl<T: Int>(a: &Rational<T>, b: &Rational<T>, negate_b: bool) -> Rational<T> {
    let bn = if negate_b { -b.num.clone() } else { b.num.clone() };
    if a.den == b.den {
        return Rational::normalized(a.num.clone() + bn, a.den.clone());
    }
    // Knuth 4.5.1: only the gcd of the denominators can survive in the sum.
    let g = a.den.gcd(&b.den);
    if g.is_one() {
        let num = a.num.clone() * b.den.clone() + bn * a.den.clone();
        return Rational::from_parts_unchecked(num, a.den.clone() * b.den.clone());
    }
    let ad = a.den.clone() / g.clone();
    let bd = b.den.clone() / g.clone();
    let t = a.num.clone() * bd.clone() + bn * ad.clone();
    if t.is_zero() {
        return Rational::zero();
    }
    let g2 = t.gcd(&g);
    let num = t / g2.clone();
    let den = ad * (b.den.clone() / g2);
    Rational::from_parts_unchecked(num, den)
}

fn mul_impl<T: Int>(a: &Rational<T>, b: &Rational<T>) -> Rational<T> {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let g1 = a.num.gcd(&b.den);
    let g2 = b.num.gcd(&a.den);
    let num = (a.num.clone() / g1.clone()) * (b.num.clone() / g2.clone());
    let den = (a.den.clone() / g2) * (b.den.clone() / g1);
    Rational::from_parts_unchecked(num, den)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<T: Int> $trait<&Rational<T>> for &Rational<T> {
            type Output = Rational<T>;
            fn $method(self, rhs: &Rational<T>) -> Rational<T> {
                $body(self, rhs)
            }
        }
        impl<T: Int> $trait<Rational<T>> for Rational<T> {
            type Output = Rational<T>;
            fn $method(self, rhs: Rational<T>) -> Rational<T> {
                $body(&self, &rhs)
            }
        }
        impl<T: Int> $trait<&Rational<T>> for Rational<T> {
            type Output = Rational<T>;
            fn $method(self, rhs: &Rational<T>) -> Rational<T> {
                $body(&self, rhs)
            }
        }
        impl<T: Int> $trait<Rational<T>> for &Rational<T> {
            type Output = Rational<T>;
            fn $method(self, rhs: Rational<T>) -> Rational<T> {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);
// Panics on a zero divisor, like integer division; use `checked_div` otherwise.
forward_binop!(Div, div, |a: &Rational<T>, b: &Rational<T>| a
    .checked_div(b)
    .expect("rational division by zero"));

impl<T: Int> fmt::Display for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

fn syntax<T>(input: &str, reason: &'static str) -> Result<T> {
    Err(Error::Syntax { input: input.to_owned(), reason })
}

fn parse_digits<T: Int>(input: &str, digits: &str) -> Result<T> {
    if digits.is_empty() {
        return syntax(input, "expected digits");
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return syntax(input, "unexpected character");
    }
    T::from_str_radix(digits, 10).or_else(|_| syntax(input, "integer out of range"))
}

impl<T: Int> FromStr for Rational<T> {
    type Err = Error;

    /// Accepts `[-]p[/q]` and exact decimal literals `[-]i[.f][e[-]x]`.
    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let value = if let Some((p, q)) = body.split_once('/') {
            let p = parse_digits::<T>(s, p)?;
            let q = parse_digits::<T>(s, q)?;
            Rational::new(p, q)?
        } else {
            let (mantissa, exp) = match body.find(['e', 'E']) {
                Some(i) => (&body[..i], Some(&body[i + 1..])),
                None => (body, None),
            };
            let (int_part, frac_part) = match mantissa.split_once('.') {
                Some((i, f)) => (i, f),
                None => (mantissa, ""),
            };
            if int_part.is_empty() {
                return syntax(s, "expected digits before the decimal point");
            }
            if mantissa.ends_with('.') {
                return syntax(s, "expected digits after the decimal point");
            }
            let all: String = [int_part, frac_part].concat();
            let digits = parse_digits::<T>(s, &all)?;
            let mut scale = -(frac_part.len() as i64);
            if let Some(e) = exp {
                let (eneg, edigits) = match e.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, e),
                };
                if edigits.is_empty() || !edigits.bytes().all(|b| b.is_ascii_digit()) {
                    return syntax(s, "malformed exponent");
                }
                let e: i64 = edigits.parse().or_else(|_| syntax(s, "exponent out of range"))?;
                scale += if eneg { -e } else { e };
            }
            if scale >= 0 {
                Rational::from_integer(digits * T::pow10(scale as usize))
            } else {
                Rational::normalized(digits, T::pow10((-scale) as usize))
            }
        };
        Ok(if negative { -value } else { value })
    }
}

impl Rational<BigInt> {
    /// Convenience constructor from machine integers; panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(BigInt::from(p), BigInt::from(q)).expect("zero denominator")
    }
}
