//! Scalar abstraction over edge weights.
//!
//! Everything in this crate is generic over [`Weight`]. Integer weights are
//! exact and are what the correctness tests run on; floating-point weights
//! are used for large experiments over real intervals.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, SubAssign};
use std::str::FromStr;

use num_traits::{NumCast, Signed};
use rand::Rng;

/// A signed scalar usable as an edge weight, potential, or distance.
pub trait Weight:
    Copy
    + Default
    + Debug
    + Display
    + FromStr
    + PartialOrd
    + Signed
    + NumCast
    + AddAssign
    + SubAssign
    + Sum
    + Send
    + Sync
    + 'static
{
    /// `true` for integer types, whose domains are finite sets `{a, a+1, ..., b}`.
    const DISCRETE: bool;

    /// Sentinel for unreachable nodes. Never used in arithmetic.
    fn infinity() -> Self;

    /// A total order (IEEE total order for floats).
    fn total_cmp(&self, other: &Self) -> Ordering;

    /// Uniform draw from the closed range `[lo, hi]`.
    fn sample_uniform<R: Rng + ?Sized>(lo: Self, hi: Self, rng: &mut R) -> Self;

    fn as_f64(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_discrete {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            const DISCRETE: bool = true;

            #[inline]
            fn infinity() -> Self {
                <$t>::MAX
            }

            #[inline]
            fn total_cmp(&self, other: &Self) -> Ordering {
                self.cmp(other)
            }

            #[inline]
            fn sample_uniform<R: Rng + ?Sized>(lo: Self, hi: Self, rng: &mut R) -> Self {
                rng.random_range(lo..=hi)
            }
        }
    )*};
}

macro_rules! impl_continuous {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            const DISCRETE: bool = false;

            #[inline]
            fn infinity() -> Self {
                <$t>::INFINITY
            }

            #[inline]
            fn total_cmp(&self, other: &Self) -> Ordering {
                <$t>::total_cmp(self, other)
            }

            #[inline]
            fn sample_uniform<R: Rng + ?Sized>(lo: Self, hi: Self, rng: &mut R) -> Self {
                if lo == hi {
                    lo
                } else {
                    rng.random_range(lo..=hi)
                }
            }
        }
    )*};
}

impl_discrete!(i32, i64);
impl_continuous!(f32, f64);
