//! Scalars of a complete discretely valued field, known at finite precision.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. Three concrete
//! backends are provided:
//!
//! * [`PAdic`]: elements of `Q_p` in zealous (interval) arithmetic, stored as
//!   `p^val * unit + O(p^(val + rel_prec))`;
//! * [`TAdic`]: elements of `Q((t))` truncated the same way, with exact
//!   rational digits;
//! * [`ExactRational`]: exact rationals equipped with the `p`-adic valuation,
//!   used as an exact shadow of p-adic computations in oracles and tests.
//!
//! [`Counting`] wraps any backend and tallies the arithmetic operations it
//! performs.

mod counting;
mod padic;
mod rational;
mod tadic;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngCore;

use crate::error::{Error, Result};

pub use counting::{op_counts, reset_op_counts, Counting, OpCounts};
pub use padic::{PAdic, PAdicField, PAdicState};
pub use rational::{ExactRational, RationalField};
pub use tadic::{TAdic, TAdicField};
pub use text::{parse_rational_literal, RationalLiteral};

/// Valuation of a scalar: an integer, or `+inf` for an exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Which kind of valued field a document or experiment works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PAdic { p: u64 },
    TAdicOverRationals,
}

/// Field description: kind plus the absolute precision cap `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    pub kind: FieldKind,
    pub default_precision: u32,
}

impl FieldConfig {
    pub fn p_adic(p: u64, default_precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if default_precision == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        Ok(FieldConfig { kind: FieldKind::PAdic { p }, default_precision })
    }

    pub fn t_adic(default_precision: u32) -> Result<Self> {
        if default_precision == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        Ok(FieldConfig { kind: FieldKind::TAdicOverRationals, default_precision })
    }

    /// The p-adic backend for this configuration.
    pub fn padic_field(&self) -> Result<PAdicField> {
        match self.kind {
            FieldKind::PAdic { p } => PAdicField::new(p, self.default_precision),
            FieldKind::TAdicOverRationals => {
                Err(Error::InvalidArgument("configuration is t-adic, not p-adic".into()))
            }
        }
    }

    pub fn tadic_field(&self) -> Result<TAdicField> {
        match self.kind {
            FieldKind::TAdicOverRationals => TAdicField::new(self.default_precision),
            FieldKind::PAdic { .. } => {
                Err(Error::InvalidArgument("configuration is p-adic, not t-adic".into()))
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Context shared by all elements of one field (prime, precision cap, ...).
pub trait ScalarField: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Default absolute precision of freshly created inexact constants, or
    /// `None` for exact backends.
    fn default_precision(&self) -> Option<u32>;
}

/// An element of a discretely valued field, possibly known at finite precision.
///
/// Elements fall in three states: exact zero, a zero known only modulo
/// `pi^N` ("inexact zero"), and nonzero values with a known valuation. The
/// `_ref` methods are the primitive operations; the by-value operator
/// implementations required through the supertraits delegate to them.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    type Field: ScalarField;

    fn one(field: &Self::Field) -> Self;

    /// `num / den` at the field's default precision.
    fn from_ratio(field: &Self::Field, num: &BigInt, den: &BigInt) -> Self;

    fn from_i64(field: &Self::Field, n: i64) -> Self {
        Self::from_ratio(field, &BigInt::from(n), &BigInt::from(1))
    }

    /// Haar-random element of the valuation ring known at absolute precision `prec`.
    fn sample_integer(field: &Self::Field, prec: u32, rng: &mut dyn RngCore) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_ref(&self, other: &Self) -> Result<Self>;

    /// `+inf` for an exact zero; [`Error::UnknownValuation`] for an inexact zero.
    fn valuation(&self) -> Result<Valuation>;

    /// Absolute precision `N` such that the value is known modulo `pi^N`;
    /// `None` when the value is exact.
    fn abs_precision(&self) -> Option<i64>;

    fn is_exact_zero(&self) -> bool;

    /// Whether the value is indistinguishable from zero: exact or inexact zero.
    fn is_zero_value(&self) -> bool;

    /// Agreement on every digit both operands know.
    fn agrees_with(&self, other: &Self) -> bool {
        let diff = self.sub_ref(other);
        diff.is_zero_value()
    }

    /// Text form following the scalar grammar of the document formats.
    fn to_text(&self) -> String;

    fn parse_text(field: &Self::Field, text: &str) -> Result<Self>;

    /// Largest lower bound on the valuation that the stored data certifies:
    /// the valuation itself, or the absolute precision of an inexact zero.
    fn valuation_lower_bound(&self) -> Valuation {
        match self.valuation() {
            Ok(v) => v,
            Err(_) => Valuation::Finite(self.abs_precision().unwrap_or(i64::MAX)),
        }
    }
}
