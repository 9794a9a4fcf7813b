//! Rounding policies applied to the result of each arithmetic operation.
//!
//! Tolerance rounding, fixed slash and floating slash all pick a convergent
//! of `|x|` and restore the sign afterwards; reductive rounding zeroes the low
//! decimal digits of numerator and denominator instead.

use std::fmt;
use std::str::FromStr;

use crate::cf::convergent_stream;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Int;

/// An error tolerance; `Infinite` disables the criterion it controls.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tolerance<T> {
    Finite(Rational<T>),
    Infinite,
}

impl<T: Int> Tolerance<T> {
    pub fn finite(value: Rational<T>) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Policy { input: value.to_string(), reason: "tolerance must be non-negative".into() });
        }
        Ok(Tolerance::Finite(value))
    }

    /// `10^-n`.
    pub fn decimal(n: usize) -> Self {
        Tolerance::Finite(Rational::new(T::one(), T::pow10(n)).expect("positive denominator"))
    }

    pub fn zero() -> Self {
        Tolerance::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Tolerance::Infinite)
    }
}

impl<T: Int> fmt::Display for Tolerance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Finite(v) => write!(f, "{v}"),
            Tolerance::Infinite => write!(f, "inf"),
        }
    }
}

impl<T: Int> FromStr for Tolerance<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Tolerance::Infinite);
        }
        Tolerance::finite(s.parse()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RoundingPolicy<T> {
    Exact,
    /// First convergent within the absolute and relative tolerances, applied
    /// once either part of the fraction is longer than `trigger` digits.
    Tolerance { abs_tol: Tolerance<T>, rel_tol: Tolerance<T>, trigger: usize },
    /// Numerator and denominator each at most `max_len` digits.
    FixedSlash { max_len: usize },
    /// Numerator and denominator together at most `max_total` digits.
    FloatingSlash { max_total: usize },
    /// Keep the top `digits` digits of numerator and denominator.
    Reductive { digits: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundingOutcome<T> {
    pub value: Rational<T>,
    pub triggered: bool,
    /// Index of the convergent returned; 0 when not triggered.
    pub iterations: usize,
}

impl<T: Int> RoundingOutcome<T> {
    fn untouched(value: Rational<T>) -> Self {
        Self { value, triggered: false, iterations: 0 }
    }
}

fn with_sign<T: Int>(negative: bool, v: Rational<T>) -> Rational<T> {
    if negative { -v } else { v }
}

fn policy_error(input: impl fmt::Display, reason: &str) -> Error {
    Error::Policy { input: input.to_string(), reason: reason.to_owned() }
}

/// Replaces `x` by its first convergent meeting every enabled criterion:
/// `|x - c| < abs_tol` and `|x - c| < rel_tol * |x|`.
///
/// Nothing happens while both parts of `x` have at most `trigger` digits. A
/// zero tolerance can only be met by `x` itself, so `abs_tol = rel_tol = 0`
/// is exact arithmetic.
pub fn round_tolerance<T: Int>(
    x: &Rational<T>,
    abs_tol: &Tolerance<T>,
    rel_tol: &Tolerance<T>,
    trigger: usize,
) -> RoundingOutcome<T> {
    if x.slash_lengths().max() <= trigger {
        return RoundingOutcome::untouched(x.clone());
    }
    let negative = x.is_negative();
    let ax = x.abs();
    let (p, q) = (ax.numer(), ax.denom());
    // The error of step k is exactly b_k / (q * q_k), so with a tolerance
    // u/v the criteria become b_k v < u q q_k and b_k v < u p q_k.
    let within = |tol: &Tolerance<T>, scale: &T, b: &T, qk: &T| match tol {
        Tolerance::Infinite => true,
        Tolerance::Finite(t) => b.clone() * t.denom().clone() < t.numer().clone() * scale.clone() * qk.clone(),
    };
    for step in convergent_stream(&ax).expect("|x| is non-negative") {
        let accept = within(abs_tol, q, &step.b, &step.q) && within(rel_tol, p, &step.b, &step.q);
        if accept || step.is_last() {
            return RoundingOutcome {
                value: with_sign(negative, step.convergent()),
                triggered: true,
                iterations: step.index,
            };
        }
    }
    unreachable!("convergent stream ends with the input itself")
}

/// Last convergent of `|x|` whose length passes `fits`.
fn last_fitting<T: Int>(
    x: &Rational<T>,
    fits: impl Fn(usize, usize) -> bool,
    limit: impl fmt::Display,
) -> Result<RoundingOutcome<T>> {
    let negative = x.is_negative();
    let mut best = None;
    // p_k and q_k never shrink, so the first misfit ends the search.
    for step in convergent_stream(&x.abs())? {
        if !fits(step.p.decimal_len(), step.q.decimal_len()) {
            break;
        }
        best = Some(step);
    }
    let step = best.ok_or_else(|| Error::Unrepresentable { value: x.to_string(), limit: limit.to_string() })?;
    Ok(RoundingOutcome { value: with_sign(negative, step.convergent()), triggered: true, iterations: step.index })
}

pub fn round_fixed_slash<T: Int>(x: &Rational<T>, max_len: usize) -> Result<RoundingOutcome<T>> {
    if max_len < 1 {
        return Err(policy_error(max_len, "fixed slash needs L >= 1"));
    }
    if x.slash_lengths().max() <= max_len {
        return Ok(RoundingOutcome::untouched(x.clone()));
    }
    last_fitting(x, |n, d| n <= max_len && d <= max_len, format_args!("L={max_len}"))
}

pub fn round_floating_slash<T: Int>(x: &Rational<T>, max_total: usize) -> Result<RoundingOutcome<T>> {
    if max_total < 2 {
        return Err(policy_error(max_total, "floating slash needs S >= 2"));
    }
    if x.slash_lengths().total <= max_total {
        return Ok(RoundingOutcome::untouched(x.clone()));
    }
    last_fitting(x, |n, d| n + d <= max_total, format_args!("S={max_total}"))
}

fn truncate_digits<T: Int>(n: &T, digits: usize) -> T {
    let len = n.decimal_len();
    if len <= digits {
        return n.clone();
    }
    let unit = T::pow10(len - digits);
    (n.clone() / unit.clone()) * unit
}

pub fn round_reductive<T: Int>(x: &Rational<T>, digits: usize) -> Result<RoundingOutcome<T>> {
    if digits < 1 {
        return Err(policy_error(digits, "reductive rounding needs D >= 1"));
    }
    if x.slash_lengths().max() <= digits {
        return Ok(RoundingOutcome::untouched(x.clone()));
    }
    // Integer division truncates toward zero, and the leading digit of the
    // denominator survives, so it stays positive.
    let num = truncate_digits(x.numer(), digits);
    let den = truncate_digits(x.denom(), digits);
    Ok(RoundingOutcome { value: Rational::new(num, den)?, triggered: true, iterations: 0 })
}

impl<T: Int> RoundingPolicy<T> {
    pub fn tolerance(abs_tol: Tolerance<T>, rel_tol: Tolerance<T>, trigger: usize) -> Self {
        RoundingPolicy::Tolerance { abs_tol, rel_tol, trigger }
    }

    pub fn fixed_slash(max_len: usize) -> Result<Self> {
        if max_len < 1 {
            return Err(policy_error(max_len, "fixed slash needs L >= 1"));
        }
        Ok(RoundingPolicy::FixedSlash { max_len })
    }

    pub fn floating_slash(max_total: usize) -> Result<Self> {
        if max_total < 2 {
            return Err(policy_error(max_total, "floating slash needs S >= 2"));
        }
        Ok(RoundingPolicy::FloatingSlash { max_total })
    }

    pub fn reductive(digits: usize) -> Result<Self> {
        if digits < 1 {
            return Err(policy_error(digits, "reductive rounding needs D >= 1"));
        }
        Ok(RoundingPolicy::Reductive { digits })
    }

    pub fn apply(&self, x: &Rational<T>) -> Result<RoundingOutcome<T>> {
        match self {
            RoundingPolicy::Exact => Ok(RoundingOutcome::untouched(x.clone())),
            RoundingPolicy::Tolerance { abs_tol, rel_tol, trigger } => {
                Ok(round_tolerance(x, abs_tol, rel_tol, *trigger))
            }
            RoundingPolicy::FixedSlash { max_len } => round_fixed_slash(x, *max_len),
            RoundingPolicy::FloatingSlash { max_total } => round_floating_slash(x, *max_total),
            RoundingPolicy::Reductive { digits } => round_reductive(x, *digits),
        }
    }

    /// Largest representable magnitude with the sign of `x`, for slash
    /// policies; `None` for policies that never overflow.
    pub fn saturate(&self, x: &Rational<T>) -> Option<Rational<T>> {
        let digits = match self {
            RoundingPolicy::FixedSlash { max_len } => *max_len,
            RoundingPolicy::FloatingSlash { max_total } => max_total - 1,
            _ => return None,
        };
        let largest = Rational::from_integer(T::pow10(digits) - T::one());
        Some(with_sign(x.is_negative(), largest))
    }
}

pub fn apply<T: Int>(policy: &RoundingPolicy<T>, x: &Rational<T>) -> Result<RoundingOutcome<T>> {
    policy.apply(x)
}

impl<T: Int> fmt::Display for RoundingPolicy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundingPolicy::Exact => write!(f, "exact"),
            RoundingPolicy::Tolerance { abs_tol, rel_tol, trigger } => {
                write!(f, "tol:D={abs_tol},d={rel_tol},M={trigger}")
            }
            RoundingPolicy::FixedSlash { max_len } => write!(f, "fslash:L={max_len}"),
            RoundingPolicy::FloatingSlash { max_total } => write!(f, "flslash:S={max_total}"),
            RoundingPolicy::Reductive { digits } => write!(f, "reduct:D={digits}"),
        }
    }
}

impl<T: Int> FromStr for RoundingPolicy<T> {
    type Err = Error;

    /// `exact`, `tol:D=<lit|inf>,d=<lit|inf>,M=<int>`, `fslash:L=<int>`,
    /// `flslash:S=<int>` or `reduct:D=<int>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| policy_error(s, reason);
        if s == "exact" {
            return Ok(RoundingPolicy::Exact);
        }
        let (kind, args) = s.split_once(':').ok_or_else(|| bad("expected <kind>:<params> or \"exact\""))?;
        let mut pairs = Vec::new();
        for item in args.split(',') {
            let (k, v) = item.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            if pairs.iter().any(|(seen, _)| *seen == k) {
                return Err(bad("duplicate key"));
            }
            pairs.push((k, v));
        }
        let take = |key: &str| -> Result<&str> {
            pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).ok_or_else(|| bad(&format!("missing {key}")))
        };
        let count = |key: &str| -> Result<usize> {
            take(key)?.parse::<usize>().map_err(|_| bad(&format!("{key} must be a non-negative integer")))
        };
        let expect_keys = |keys: &[&str]| -> Result<()> {
            match pairs.iter().find(|(k, _)| !keys.contains(k)) {
                Some((k, _)) => Err(bad(&format!("unexpected key {k}"))),
                None => Ok(()),
            }
        };
        match kind {
            "tol" => {
                expect_keys(&["D", "d", "M"])?;
                let abs_tol = take("D")?.parse()?;
                let rel_tol = take("d")?.parse()?;
                Ok(RoundingPolicy::tolerance(abs_tol, rel_tol, count("M")?))
            }
            "fslash" => {
                expect_keys(&["L"])?;
                RoundingPolicy::fixed_slash(count("L")?)
            }
            "flslash" => {
                expect_keys(&["S"])?;
                RoundingPolicy::floating_slash(count("S")?)
            }
            "reduct" => {
                expect_keys(&["D"])?;
                RoundingPolicy::reductive(count("D")?)
            }
            _ => Err(bad("unknown policy kind")),
        }
    }
}
