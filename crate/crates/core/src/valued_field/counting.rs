use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngCore;

use super::{Scalar, Valuation};
use crate::error::Result;

/// Arithmetic operations performed through [`Counting`] on the current thread.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub additions: u64,
    pub multiplications: u64,
    pub divisions: u64,
    pub negations: u64,
}

impl OpCounts {
    /// Everything except negations.
    pub fn non_negations(&self) -> u64 {
        self.additions + self.multiplications + self.divisions
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts {
        additions: 0,
        multiplications: 0,
        divisions: 0,
        negations: 0,
    }) };
}

fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub fn reset_op_counts() {
    COUNTS.with(|c| c.set(OpCounts::default()));
}

pub fn op_counts() -> OpCounts {
    COUNTS.with(|c| c.get())
}

/// Scalar wrapper that records every arithmetic operation in a thread-local tally.
#[derive(Debug, Clone, PartialEq)]
pub struct Counting<S>(pub S);

impl<S: Scalar> Scalar for Counting<S> {
    type Field = S::Field;

    fn one(field: &S::Field) -> Self {
        Counting(S::one(field))
    }

    fn from_ratio(field: &S::Field, num: &BigInt, den: &BigInt) -> Self {
        Counting(S::from_ratio(field, num, den))
    }

    fn sample_integer(field: &S::Field, prec: u32, rng: &mut dyn RngCore) -> Self {
        Counting(S::sample_integer(field, prec, rng))
    }

    fn add_ref(&self, other: &Self) -> Self {
        bump(|c| c.additions += 1);
        Counting(self.0.add_ref(&other.0))
    }

    fn sub_ref(&self, other: &Self) -> Self {
        bump(|c| c.additions += 1);
        Counting(self.0.sub_ref(&other.0))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        bump(|c| c.multiplications += 1);
        Counting(self.0.mul_ref(&other.0))
    }

    fn neg_ref(&self) -> Self {
        bump(|c| c.negations += 1);
        Counting(self.0.neg_ref())
    }

    fn div_ref(&self, other: &Self) -> Result<Self> {
        bump(|c| c.divisions += 1);
        self.0.div_ref(&other.0).map(Counting)
    }

    fn valuation(&self) -> Result<Valuation> {
        self.0.valuation()
    }

    fn abs_precision(&self) -> Option<i64> {
        self.0.abs_precision()
    }

    fn is_exact_zero(&self) -> bool {
        self.0.is_exact_zero()
    }

    fn is_zero_value(&self) -> bool {
        self.0.is_zero_value()
    }

    fn agrees_with(&self, other: &Self) -> bool {
        self.0.agrees_with(&other.0)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn parse_text(field: &S::Field, text: &str) -> Result<Self> {
        S::parse_text(field, text).map(Counting)
    }
}

impl<S: Scalar> fmt::Display for Counting<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<S: Scalar> Zero for Counting<S> {
    fn zero() -> Self {
        Counting(S::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero_value()
    }
}

impl<S: Scalar> Add for Counting<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<S: Scalar> Sub for Counting<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<S: Scalar> Mul for Counting<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<S: Scalar> Neg for Counting<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}
