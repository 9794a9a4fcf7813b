//! Exact rational arithmetic with user-controlled rounding.
//!
//! Values are [`Rational`]s in lowest terms over any exact integer type
//! implementing [`Int`]; [`BigRational`] is the arbitrary-precision default.
//! A [`Context`] performs each operation exactly and then rounds the result
//! under a [`RoundingPolicy`]:
//!
//! * `Tolerance` replaces a long fraction by its first continued-fraction
//!   convergent within an absolute and/or relative error bound,
//! * `FixedSlash` / `FloatingSlash` keep the last convergent whose digit
//!   lengths fit a limit,
//! * `Reductive` keeps only the leading digits of numerator and denominator.
//!
//! ```
//! use cfrat::{BigRational, Context, RoundingPolicy};
//!
//! let policy: RoundingPolicy<_> = "tol:D=1/100,d=inf,M=2".parse().unwrap();
//! let mut ctx = Context::new(policy);
//! let x: BigRational = "355/113".parse().unwrap();
//! let y = ctx.mul(&x, &BigRational::ratio(1, 1)).unwrap();
//! assert_eq!(y.to_string(), "22/7");
//! ```

pub mod cf;
pub mod context;
pub mod error;
pub mod rational;
pub mod rounding;
pub mod scalar;

pub use cf::{
    cf_expand, convergent_stream, error_bounds, fib_lower_bound, fibonacci, iteration_bound,
    iteration_bound_for_tolerance, mean_iterations_estimate, ContinuedFraction, ConvergentStep, Convergents,
    ErrorBounds,
};
pub use context::{Context, Overflow, Stats, StatsSummary};
pub use error::{Error, Result};
pub use rational::{digit_len, Rational, SlashLengths};
pub use rounding::{
    apply, round_fixed_slash, round_floating_slash, round_reductive, round_tolerance, RoundingOutcome,
    RoundingPolicy, Tolerance,
};
pub use scalar::Int;

pub use num_bigint::BigInt;

pub type BigRational = Rational<BigInt>;
pub type Rational64 = Rational<i64>;
pub type Rational128 = Rational<i128>;
