use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use super::padic::{pow_p, split_p, PAdic};
use super::text::parse_rational_literal;
use super::{is_prime, Scalar, ScalarField, Valuation};
use crate::error::{Error, Result};

/// Exact rationals seen through the `p`-adic valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalField {
    p: u64,
}

impl RationalField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(RationalField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn from_ints(&self, num: i64, den: i64) -> ExactRational {
        ExactRational::from_ratio(self, &BigInt::from(num), &BigInt::from(den))
    }
}

impl ScalarField for RationalField {
    fn default_precision(&self) -> Option<u32> {
        None
    }
}

/// An exact rational number carrying the prime of its valuation.
///
/// Zero is context free (`p` recorded as 0) so that it can serve as
/// [`num_traits::Zero::zero`]; binary operations take the prime of whichever
/// operand knows it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRational {
    value: BigRational,
    p: u64,
}

impl ExactRational {
    pub fn new(field: &RationalField, value: BigRational) -> Self {
        ExactRational { value, p: field.p }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    fn wrap(&self, other: &Self, value: BigRational) -> Self {
        ExactRational { value, p: self.p.max(other.p) }
    }

    /// The p-adic image of this rational at absolute precision `prec`.
    pub fn to_padic(&self, prec: i64) -> PAdic {
        if self.value.is_zero() {
            return PAdic::exact_zero();
        }
        PAdic::from_rational(self.p, self.value.numer(), self.value.denom(), prec)
    }
}

impl Scalar for ExactRational {
    type Field = RationalField;

    fn one(field: &RationalField) -> Self {
        ExactRational { value: BigRational::one(), p: field.p }
    }

    fn from_ratio(field: &RationalField, num: &BigInt, den: &BigInt) -> Self {
        ExactRational { value: BigRational::new(num.clone(), den.clone()), p: field.p }
    }

    fn sample_integer(field: &RationalField, prec: u32, rng: &mut dyn RngCore) -> Self {
        let r = rng.gen_bigint_range(&BigInt::zero(), &pow_p(field.p, prec));
        ExactRational { value: BigRational::from_integer(r), p: field.p }
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.wrap(other, &self.value + &other.value)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.wrap(other, &self.value - &other.value)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.wrap(other, &self.value * &other.value)
    }

    fn neg_ref(&self) -> Self {
        ExactRational { value: -&self.value, p: self.p }
    }

    fn div_ref(&self, other: &Self) -> Result<Self> {
        if other.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(other, &self.value / &other.value))
    }

    fn valuation(&self) -> Result<Valuation> {
        if self.value.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let (vn, _) = split_p(self.p, self.value.numer());
        let (vd, _) = split_p(self.p, self.value.denom());
        Ok(Valuation::Finite(vn - vd))
    }

    fn abs_precision(&self) -> Option<i64> {
        None
    }

    fn is_exact_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn is_zero_value(&self) -> bool {
        self.value.is_zero()
    }

    fn agrees_with(&self, other: &Self) -> bool {
        self.value == other.value
    }

    fn to_text(&self) -> String {
        if self.value.denom().is_one() {
            self.value.numer().to_string()
        } else {
            format!("{}/{}", self.value.numer(), self.value.denom())
        }
    }

    fn parse_text(field: &RationalField, text: &str) -> Result<Self> {
        let lit = parse_rational_literal(text)?;
        Ok(ExactRational::from_ratio(field, &lit.num, &lit.den))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Zero for ExactRational {
    fn zero() -> Self {
        ExactRational { value: BigRational::zero(), p: 0 }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for ExactRational {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_fractions() {
        let f = RationalField::new(3).unwrap();
        assert_eq!(f.from_ints(-18, 35).valuation().unwrap(), Valuation::Finite(2));
        assert_eq!(f.from_ints(1, 9).valuation().unwrap(), Valuation::Finite(-2));
        assert_eq!(ExactRational::zero().valuation().unwrap(), Valuation::Infinite);
    }

    #[test]
    fn zero_adopts_prime_of_other_operand() {
        let f = RationalField::new(2).unwrap();
        let s = ExactRational::zero().add_ref(&f.from_ints(4, 1));
        assert_eq!(s.valuation().unwrap(), Valuation::Finite(2));
    }

    #[test]
    fn padic_image() {
        let f = RationalField::new(2).unwrap();
        let x = f.from_ints(1, 2).to_padic(10);
        assert_eq!(x.valuation().unwrap(), Valuation::Finite(-1));
    }
}
