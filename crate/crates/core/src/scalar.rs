//! The integer scalar the rational layer is generic over.
//!
//! Everything in this crate is written against [`Int`], so the same code runs
//! on [`num_bigint::BigInt`] (the intended arbitrary-precision case) and on the
//! machine integers `i64`/`i128`, which are handy for small exhaustive oracles
//! but overflow like any fixed-width type.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Exact signed integer with Euclidean division, gcd and decimal rendering.
pub trait Int:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Number of decimal digits of `|self|`; zero has one digit.
    fn decimal_len(&self) -> usize;

    /// `10^exp`.
    fn pow10(exp: usize) -> Self {
        num_traits::pow(Self::from_u8(10).expect("10 fits every integer type"), exp)
    }

    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("small constant fits every integer type")
    }
}

macro_rules! impl_machine_int {
    ($($t:ty),*) => {$(
        impl Int for $t {
            fn decimal_len(&self) -> usize {
                match self.unsigned_abs().checked_ilog10() {
                    Some(l) => l as usize + 1,
                    None => 1,
                }
            }
        }
    )*};
}

impl_machine_int!(i32, i64, i128);

impl Int for BigInt {
    fn decimal_len(&self) -> usize {
        if self.is_zero() {
            return 1;
        }
        // bits * log10(2) is within one of the answer; fix up with one compare.
        let bits = self.bits();
        let guess = ((bits - 1) as f64 * std::f64::consts::LOG10_2).floor() as usize + 1;
        let mag = self.magnitude();
        let ten = num_bigint::BigUint::from(10u8);
        if *mag >= num_traits::pow(ten.clone(), guess) {
            guess + 1
        } else if guess > 1 && *mag < num_traits::pow(ten, guess - 1) {
            guess - 1
        } else {
            guess
        }
    }
}
