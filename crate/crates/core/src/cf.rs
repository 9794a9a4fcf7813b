//! Continued fractions of non-negative rationals.
//!
//! [`Convergents`] runs the Euclidean algorithm lazily: step `k` divides the
//! previous two remainders, `b_{k-2} = a_k * b_{k-1} + b_k`, and advances the
//! convergent recurrences
//!
//! ```text
//! p_k = a_k p_{k-1} + p_{k-2},   p_{-2} = 0, p_{-1} = 1
//! q_k = a_k q_{k-1} + q_{k-2},   q_{-2} = 1, q_{-1} = 0
//! ```
//!
//! The stream stops after the step whose remainder is zero; that convergent is
//! the input itself. Consumers that only need a coarse approximation can stop
//! pulling early and never pay for the rest of the expansion.
//!
//! The remainder carried by each step measures the convergent's error
//! exactly: for `x = p/q` in lowest terms, `|x - p_k/q_k| = b_k / (q * q_k)`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Int;

/// Canonical expansion `[a_0; a_1, ..., a_n]`: `a_0 >= 0`, interior quotients
/// `>= 1`, and the last quotient `>= 2` whenever `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContinuedFraction<T> {
    quotients: Vec<T>,
}

impl<T: Int> ContinuedFraction<T> {
    /// Expands a non-negative rational.
    pub fn expand(x: &Rational<T>) -> Result<Self> {
        let quotients = convergent_stream(x)?.map(|step| step.a).collect();
        Ok(Self::canonicalize(quotients))
    }

    /// Accepts any finite simple continued fraction and returns its canonical
    /// form, folding a trailing unit quotient into its predecessor.
    pub fn from_quotients(quotients: Vec<T>) -> Result<Self> {
        let invalid = |reason: &str| Error::Policy { input: format!("{quotients:?}"), reason: reason.into() };
        match quotients.split_first() {
            None => return Err(invalid("empty quotient list")),
            Some((a0, rest)) => {
                if a0.is_negative() {
                    return Err(invalid("leading quotient must be non-negative"));
                }
                if rest.iter().any(|a| !a.is_positive()) {
                    return Err(invalid("partial quotients after the first must be positive"));
                }
            }
        }
        Ok(Self::canonicalize(quotients))
    }

    fn canonicalize(mut quotients: Vec<T>) -> Self {
        if quotients.len() >= 2 && quotients.last().is_some_and(|a| a.is_one()) {
            quotients.pop();
            let last = quotients.last_mut().expect("at least one quotient left");
            *last = last.clone() + T::one();
        }
        let cf = Self { quotients };
        debug_assert!(cf.is_canonical());
        cf
    }

    pub fn quotients(&self) -> &[T] {
        &self.quotients
    }

    /// Index `n` of the last quotient.
    pub fn last_index(&self) -> usize {
        self.quotients.len() - 1
    }

    pub fn is_canonical(&self) -> bool {
        let n = self.quotients.len();
        if n == 0 || self.quotients[0].is_negative() {
            return false;
        }
        let interior_ok = self.quotients[1..].iter().all(|a| a.is_positive());
        let tail_ok = n == 1 || self.quotients[n - 1] >= T::from_small(2);
        interior_ok && tail_ok
    }

    /// Folds the expansion back into a fraction, innermost quotient first.
    pub fn evaluate(&self) -> Rational<T> {
        let mut iter = self.quotients.iter().rev();
        let last = iter.next().expect("non-empty expansion");
        // Track num/den of the tail value; a tail is always >= 1 so no zero division.
        let (mut num, mut den) = (last.clone(), T::one());
        for a in iter {
            let next_num = a.clone() * num.clone() + den;
            den = num;
            num = next_num;
        }
        Rational::new(num, den).expect("positive denominator")
    }

    /// Convergents `p_k/q_k` for `k = 0..=n`.
    pub fn convergents(&self) -> Vec<Rational<T>> {
        let (mut p2, mut p1) = (T::zero(), T::one());
        let (mut q2, mut q1) = (T::one(), T::zero());
        self.quotients
            .iter()
            .map(|a| {
                let p = a.clone() * p1.clone() + p2.clone();
                let q = a.clone() * q1.clone() + q2.clone();
                p2 = std::mem::replace(&mut p1, p.clone());
                q2 = std::mem::replace(&mut q1, q.clone());
                Rational::new(p, q).expect("convergent denominators are positive")
            })
            .collect()
    }
}

impl<T: Int> fmt::Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.quotients[0])?;
        for (i, a) in self.quotients[1..].iter().enumerate() {
            let sep = if i == 0 { "; " } else { ", " };
            write!(f, "{sep}{a}")?;
        }
        write!(f, "]")
    }
}

/// One step of the convergent recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentStep<T> {
    pub index: usize,
    /// Partial quotient `a_k`.
    pub a: T,
    pub p: T,
    pub q: T,
    /// Euclidean remainder `b_k`; zero on the final step.
    pub b: T,
}

impl<T: Int> ConvergentStep<T> {
    pub fn convergent(&self) -> Rational<T> {
        Rational::new(self.p.clone(), self.q.clone()).expect("convergent denominators are positive")
    }

    pub fn is_last(&self) -> bool {
        self.b.is_zero()
    }
}

/// Lazy convergent stream of a non-negative rational.
#[derive(Clone, Debug)]
pub struct Convergents<T> {
    index: usize,
    // b_{k-2}, b_{k-1}
    dividend: T,
    divisor: T,
    p: (T, T),
    q: (T, T),
    done: bool,
}

impl<T: Int> Iterator for Convergents<T> {
    type Item = ConvergentStep<T>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let (a, b) = self.dividend.div_rem(&self.divisor);
        let p = a.clone() * self.p.1.clone() + self.p.0.clone();
        let q = a.clone() * self.q.1.clone() + self.q.0.clone();
        self.p = (std::mem::replace(&mut self.p.1, p.clone()), p.clone());
        self.q = (std::mem::replace(&mut self.q.1, q.clone()), q.clone());
        let step = ConvergentStep { index: self.index, a, p, q, b: b.clone() };
        if b.is_zero() {
            self.done = true;
        } else {
            self.dividend = std::mem::replace(&mut self.divisor, b);
            self.index += 1;
        }
        Some(step)
    }
}

/// Starts the convergent stream of `x >= 0`.
pub fn convergent_stream<T: Int>(x: &Rational<T>) -> Result<Convergents<T>> {
    if x.is_negative() {
        return Err(Error::NegativeInput);
    }
    Ok(Convergents {
        index: 0,
        dividend: x.numer().clone(),
        divisor: x.denom().clone(),
        p: (T::zero(), T::one()),
        q: (T::one(), T::zero()),
        done: false,
    })
}

pub fn cf_expand<T: Int>(x: &Rational<T>) -> Result<ContinuedFraction<T>> {
    ContinuedFraction::expand(x)
}

/// Two-sided bound on `|x - p_k/q_k|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorBounds<T> {
    /// `1 / (q_k (q_k + q_{k+1}))`, exclusive.
    pub lower: Rational<T>,
    /// `1 / (q_k q_{k+1})`, inclusive.
    pub upper: Rational<T>,
}

impl<T: Int> ErrorBounds<T> {
    pub fn contains(&self, err: &Rational<T>) -> bool {
        self.lower < *err && *err <= self.upper
    }
}

/// Error sandwich of the `k`-th convergent, valid for `0 < k < n`.
pub fn error_bounds<T: Int>(x: &Rational<T>, k: usize) -> Result<ErrorBounds<T>> {
    let mut steps = convergent_stream(x)?;
    if k > 0 {
        if let (Some(at_k), Some(next)) = (steps.nth(k), steps.next()) {
            let qk = at_k.q;
            let lower = Rational::new(T::one(), qk.clone() * (qk.clone() + next.q.clone()))?;
            let upper = Rational::new(T::one(), qk * next.q)?;
            return Ok(ErrorBounds { lower, upper });
        }
    }
    let n = convergent_stream(x)?.count() - 1;
    Err(Error::IndexOutOfRange { k, n })
}

/// Fibonacci numbers with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci<T: Int>(n: usize) -> T {
    let (mut a, mut b) = (T::zero(), T::one());
    for _ in 0..n {
        let next = a + b.clone();
        a = b;
        b = next;
    }
    a
}

/// `F_{k+1}`, the smallest possible denominator of a `k`-th convergent.
pub fn fib_lower_bound<T: Int>(k: usize) -> T {
    fibonacci(k + 1)
}

/// `(F_n, F_{n+1})` by fast doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::from(0), BigInt::from(1));
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// Exactly decides `phi^n <= u/v` for the golden ratio `phi`, `u, v > 0`.
///
/// `phi^n = (L_n + F_n sqrt5) / 2`, so the test reduces to comparing
/// `v F_n sqrt5` against `2u - v L_n` by squaring integers.
fn golden_power_le(n: u64, u: &BigInt, v: &BigInt) -> bool {
    if n == 0 {
        return v <= u;
    }
    let (f, f1) = fib_pair(n);
    let lucas = &f1 * 2 - &f;
    let rhs: BigInt = u * BigInt::from(2) - v * lucas;
    if rhs.sign() == num_bigint::Sign::Minus {
        return false;
    }
    // phi^n is irrational for n >= 1, so equality never happens.
    let lhs = v * v * &f * &f * 5;
    lhs < &rhs * &rhs
}

/// Largest `r >= 0` with `phi^(2r + shift) <= u/v`, or `None` when even `r = 0` fails.
fn max_even_power_below(shift: u64, u: &BigInt, v: &BigInt, guess: f64) -> Option<u64> {
    if !golden_power_le(shift, u, v) {
        return None;
    }
    let mut r = guess.max(0.0) as u64;
    while r > 0 && !golden_power_le(2 * r + shift, u, v) {
        r -= 1;
    }
    while golden_power_le(2 * (r + 1) + shift, u, v) {
        r += 1;
    }
    Some(r)
}

/// `(1 + sqrt 5) / 2`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// `a = log_phi(5) / 2` in the iteration bound `k <= floor(a + bN)`.
pub fn bound_offset() -> f64 {
    0.5 * 5f64.ln() / GOLDEN_RATIO.ln()
}

/// `b = log_phi(10) / 2` in the iteration bound `k <= floor(a + bN)`.
pub fn bound_slope() -> f64 {
    0.5 * 10f64.ln() / GOLDEN_RATIO.ln()
}

/// Worst-case number of convergent steps needed to reach absolute error
/// `delta > 0`, for any rational.
///
/// With `y = log_phi(5 / delta) / 2` this is `floor(y)`, tightened to
/// `floor(y - 1/2)` when `ceil(y - 3/2)` is even. Every floor and ceiling is
/// settled by exact integer comparisons against powers of the golden ratio.
pub fn iteration_bound_for_tolerance(delta: &Rational<BigInt>) -> usize {
    assert!(delta.numer().sign() == num_bigint::Sign::Plus, "tolerance must be positive");
    // X = 5 / delta = u / v
    let x = Rational::from_integer(BigInt::from(5)).checked_div(delta).expect("delta > 0");
    let (u, v) = (x.numer().clone(), x.denom().clone());
    let y = 0.5 * (ln_approx(&u) - ln_approx(&v)) / GOLDEN_RATIO.ln();

    let floor_y = max_even_power_below(0, &u, &v, y.floor() - 1.0);
    let floor_y_half = max_even_power_below(1, &u, &v, (y - 0.5).floor() - 1.0);
    // ceil(y - 3/2) is the smallest r with phi^(2r + 3) > X.
    let ceil_shifted = match max_even_power_below(3, &u, &v, (y - 1.5).floor() - 1.0) {
        Some(r) => r as i64 + 1,
        None => {
            // phi^3 > X already; step down through phi^1 and phi^-1 < 1 <= X for X >= 1.
            if golden_power_le(1, &u, &v) { 0 } else { -1 }
        }
    };
    let strengthened = ceil_shifted.rem_euclid(2) == 0;
    let bound = if strengthened { floor_y_half } else { floor_y };
    bound.unwrap_or(0) as usize
}

/// Natural log of a positive integer, to roughly double precision.
fn ln_approx(n: &BigInt) -> f64 {
    let len = n.decimal_len();
    if len <= 300 {
        return num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::MAX).ln();
    }
    let shift = len - 17;
    let lead = n / BigInt::pow10(shift);
    num_traits::ToPrimitive::to_f64(&lead).unwrap_or(f64::MAX).ln() + shift as f64 * std::f64::consts::LN_10
}

/// Iteration bound for `delta = 10^-n`.
pub fn iteration_bound(n: u32) -> usize {
    let delta = Rational::new(BigInt::from(1), BigInt::pow10(n as usize)).expect("positive");
    iteration_bound_for_tolerance(&delta)
}

/// `ln gamma = pi^2 / (12 ln 2)`, the Levy constant's logarithm.
pub fn levy_ln_gamma() -> f64 {
    std::f64::consts::PI.powi(2) / (12.0 * std::f64::consts::LN_2)
}

/// Heuristic mean convergent index for `delta = 10^-n`: `n ln 10 / (2 ln gamma)`.
pub fn mean_iterations_estimate(n: u32) -> f64 {
    f64::from(n) * std::f64::consts::LN_10 / (2.0 * levy_ln_gamma())
}
