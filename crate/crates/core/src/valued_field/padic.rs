use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use super::text::{format_digit_form, parse_digit_form, parse_int, parse_rational_literal};
use super::{is_prime, Scalar, ScalarField, Valuation};
use crate::error::{Error, Result};

thread_local! {
    static POWERS: RefCell<HashMap<u64, Vec<BigInt>>> = RefCell::new(HashMap::new());
}

/// `p^k`, memoised per thread.
pub(crate) fn pow_p(p: u64, k: u32) -> BigInt {
    POWERS.with(|cache| {
        let mut cache = cache.borrow_mut();
        let table = cache.entry(p).or_insert_with(|| vec![BigInt::one()]);
        while table.len() <= k as usize {
            let next = table.last().unwrap() * p;
            table.push(next);
        }
        table[k as usize].clone()
    })
}

/// Exponent of `p` in a nonzero integer, and the cofactor.
pub(crate) fn split_p(p: u64, n: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    if p == 2 {
        let tz = n.trailing_zeros().unwrap_or(0);
        return (tz as i64, n >> tz);
    }
    let pb = BigInt::from(p);
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (k, m);
        }
        m = q;
        k += 1;
    }
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.extended_gcd(modulus);
    debug_assert!(e.gcd.is_one(), "unit not invertible");
    e.x.mod_floor(modulus)
}

/// Parameters of `Q_p`: the prime and the default absolute precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicField {
    p: u64,
    prec: u32,
}

impl PAdicField {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if prec == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        Ok(PAdicField { p, prec })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        PAdicField { p: self.p, prec }
    }

    /// `num/den` known to absolute precision `prec`.
    pub fn from_rational(&self, num: &BigInt, den: &BigInt, prec: i64) -> PAdic {
        PAdic::from_rational(self.p, num, den, prec)
    }

    pub fn from_ints(&self, num: i64, den: i64) -> PAdic {
        self.from_rational(&BigInt::from(num), &BigInt::from(den), self.prec as i64)
    }
}

impl ScalarField for PAdicField {
    fn default_precision(&self) -> Option<u32> {
        Some(self.prec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    ExactZero,
    InexactZero { abs_prec: i64 },
    Nonzero { p: u64, val: i64, unit: BigInt, rel_prec: u32 },
}

/// A `p`-adic number `p^val * unit + O(p^(val + rel_prec))`.
///
/// The unit is stored as its residue in `[0, p^rel_prec)` and is prime to `p`.
/// Zeros are either exact or only known modulo `p^abs_prec`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdic(Repr);

/// Borrowed view of the three states of a [`PAdic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PAdicState<'a> {
    ExactZero,
    InexactZero { abs_prec: i64 },
    Nonzero { p: u64, val: i64, unit: &'a BigInt, rel_prec: u32 },
}

impl PAdic {
    pub const fn exact_zero() -> Self {
        PAdic(Repr::ExactZero)
    }

    pub fn inexact_zero(abs_prec: i64) -> Self {
        PAdic(Repr::InexactZero { abs_prec })
    }

    /// `p^val * unit` known modulo `p^(val + rel_prec)`; `unit` must be prime to `p`.
    pub fn from_parts(p: u64, val: i64, unit: &BigInt, rel_prec: u32) -> Result<Self> {
        if rel_prec == 0 {
            return Err(Error::InvalidArgument("relative precision must be positive".into()));
        }
        let m = pow_p(p, rel_prec);
        let u = unit.mod_floor(&m);
        if (&u % p).is_zero() {
            return Err(Error::InvalidArgument(format!("unit {unit} is divisible by {p}")));
        }
        Ok(PAdic(Repr::Nonzero { p, val, unit: u, rel_prec }))
    }

    pub fn state(&self) -> PAdicState<'_> {
        match &self.0 {
            Repr::ExactZero => PAdicState::ExactZero,
            Repr::InexactZero { abs_prec } => PAdicState::InexactZero { abs_prec: *abs_prec },
            Repr::Nonzero { p, val, unit, rel_prec } => {
                PAdicState::Nonzero { p: *p, val: *val, unit, rel_prec: *rel_prec }
            }
        }
    }

    pub fn from_rational(p: u64, num: &BigInt, den: &BigInt, prec: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return PAdic::exact_zero();
        }
        let (vn, un) = split_p(p, num);
        let (vd, ud) = split_p(p, den);
        let val = vn - vd;
        if val >= prec {
            return PAdic::inexact_zero(prec);
        }
        let rel = (prec - val) as u32;
        let m = pow_p(p, rel);
        let unit = (un.mod_floor(&m) * mod_inverse(&ud.mod_floor(&m), &m)).mod_floor(&m);
        PAdic(Repr::Nonzero { p, val, unit, rel_prec: rel })
    }

    /// `p^v * value` known modulo `p^abs`, renormalised.
    fn normalize(p: u64, v: i64, value: BigInt, abs: i64) -> Self {
        if abs <= v {
            return PAdic::inexact_zero(abs);
        }
        let m = pow_p(p, (abs - v) as u32);
        let value = value.mod_floor(&m);
        if value.is_zero() {
            return PAdic::inexact_zero(abs);
        }
        let (k, unit) = split_p(p, &value);
        let val = v + k;
        let rel = (abs - val) as u32;
        let unit = unit.mod_floor(&pow_p(p, rel));
        PAdic(Repr::Nonzero { p, val, unit, rel_prec: rel })
    }

    pub fn prime(&self) -> Option<u64> {
        match &self.0 {
            Repr::Nonzero { p, .. } => Some(*p),
            _ => None,
        }
    }

    pub fn rel_precision(&self) -> Option<u32> {
        match &self.0 {
            Repr::Nonzero { rel_prec, .. } => Some(*rel_prec),
            _ => None,
        }
    }

    /// Unit residue in the balanced range `(-p^r/2, p^r/2]`.
    fn signed_unit(p: u64, unit: &BigInt, rel: u32) -> BigInt {
        let m = pow_p(p, rel);
        if unit * 2 > m {
            unit - m
        } else {
            unit.clone()
        }
    }

    /// Rational representative of the known digits (zero for any zero state).
    pub fn representative(&self) -> BigRational {
        match &self.0 {
            Repr::Nonzero { p, val, unit, rel_prec } => {
                let u = Self::signed_unit(*p, unit, *rel_prec);
                if *val >= 0 {
                    BigRational::from_integer(u * pow_p(*p, *val as u32))
                } else {
                    BigRational::new(u, pow_p(*p, (-*val) as u32))
                }
            }
            _ => BigRational::zero(),
        }
    }

    /// Same value with absolute precision lowered to at most `abs`.
    pub fn truncate(&self, abs: i64) -> Self {
        match &self.0 {
            Repr::ExactZero => PAdic::inexact_zero(abs),
            Repr::InexactZero { abs_prec } => PAdic::inexact_zero((*abs_prec).min(abs)),
            Repr::Nonzero { p, val, unit, rel_prec } => {
                let cur = val + *rel_prec as i64;
                if abs >= cur {
                    self.clone()
                } else {
                    PAdic::normalize(*p, *val, unit.clone(), abs)
                }
            }
        }
    }
}

impl Scalar for PAdic {
    type Field = PAdicField;

    fn one(field: &PAdicField) -> Self {
        PAdic(Repr::Nonzero { p: field.p, val: 0, unit: BigInt::one(), rel_prec: field.prec })
    }

    fn from_ratio(field: &PAdicField, num: &BigInt, den: &BigInt) -> Self {
        PAdic::from_rational(field.p, num, den, field.prec as i64)
    }

    fn sample_integer(field: &PAdicField, prec: u32, rng: &mut dyn RngCore) -> Self {
        let m = pow_p(field.p, prec);
        let r = rng.gen_bigint_range(&BigInt::zero(), &m);
        PAdic::normalize(field.p, 0, r, prec as i64)
    }

    fn add_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::ExactZero, _) => other.clone(),
            (_, Repr::ExactZero) => self.clone(),
            (Repr::InexactZero { abs_prec: a }, Repr::InexactZero { abs_prec: b }) => {
                PAdic::inexact_zero((*a).min(*b))
            }
            (Repr::InexactZero { abs_prec }, Repr::Nonzero { .. }) => other.truncate(*abs_prec),
            (Repr::Nonzero { .. }, Repr::InexactZero { abs_prec }) => self.truncate(*abs_prec),
            (
                Repr::Nonzero { p, val: va, unit: ua, rel_prec: ra },
                Repr::Nonzero { p: pb, val: vb, unit: ub, rel_prec: rb },
            ) => {
                debug_assert_eq!(p, pb, "mixing primes");
                let abs = (va + *ra as i64).min(vb + *rb as i64);
                let m = (*va).min(*vb);
                if abs <= m {
                    return PAdic::inexact_zero(abs);
                }
                let value = ua * pow_p(*p, (va - m) as u32) + ub * pow_p(*p, (vb - m) as u32);
                PAdic::normalize(*p, m, value, abs)
            }
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => PAdic::exact_zero(),
            (Repr::InexactZero { abs_prec: a }, Repr::InexactZero { abs_prec: b }) => {
                PAdic::inexact_zero(a + b)
            }
            (Repr::InexactZero { abs_prec }, Repr::Nonzero { val, .. })
            | (Repr::Nonzero { val, .. }, Repr::InexactZero { abs_prec }) => {
                PAdic::inexact_zero(abs_prec + val)
            }
            (
                Repr::Nonzero { p, val: va, unit: ua, rel_prec: ra },
                Repr::Nonzero { val: vb, unit: ub, rel_prec: rb, .. },
            ) => {
                let rel = (*ra).min(*rb);
                let unit = (ua * ub).mod_floor(&pow_p(*p, rel));
                PAdic(Repr::Nonzero { p: *p, val: va + vb, unit, rel_prec: rel })
            }
        }
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Nonzero { p, val, unit, rel_prec } => {
                let m = pow_p(*p, *rel_prec);
                PAdic(Repr::Nonzero { p: *p, val: *val, unit: m - unit, rel_prec: *rel_prec })
            }
            _ => self.clone(),
        }
    }

    fn div_ref(&self, other: &Self) -> Result<Self> {
        let Repr::Nonzero { val: vb, unit: ub, rel_prec: rb, .. } = &other.0 else {
            return Err(Error::DivisionByZero);
        };
        Ok(match &self.0 {
            Repr::ExactZero => PAdic::exact_zero(),
            Repr::InexactZero { abs_prec } => PAdic::inexact_zero(abs_prec - vb),
            Repr::Nonzero { p, val: va, unit: ua, rel_prec: ra } => {
                let rel = (*ra).min(*rb);
                let m = pow_p(*p, rel);
                let unit = (ua * mod_inverse(&ub.mod_floor(&m), &m)).mod_floor(&m);
                PAdic(Repr::Nonzero { p: *p, val: va - vb, unit, rel_prec: rel })
            }
        })
    }

    fn valuation(&self) -> Result<Valuation> {
        match &self.0 {
            Repr::ExactZero => Ok(Valuation::Infinite),
            Repr::InexactZero { .. } => Err(Error::UnknownValuation),
            Repr::Nonzero { val, .. } => Ok(Valuation::Finite(*val)),
        }
    }

    fn abs_precision(&self) -> Option<i64> {
        match &self.0 {
            Repr::ExactZero => None,
            Repr::InexactZero { abs_prec } => Some(*abs_prec),
            Repr::Nonzero { val, rel_prec, .. } => Some(val + *rel_prec as i64),
        }
    }

    fn is_exact_zero(&self) -> bool {
        matches!(self.0, Repr::ExactZero)
    }

    fn is_zero_value(&self) -> bool {
        !matches!(self.0, Repr::Nonzero { .. })
    }

    fn to_text(&self) -> String {
        match &self.0 {
            Repr::ExactZero => "0".to_string(),
            Repr::InexactZero { abs_prec } => format_digit_form("0", 'p', 0, *abs_prec),
            Repr::Nonzero { p, val, unit, rel_prec } => {
                let u = Self::signed_unit(*p, unit, *rel_prec);
                format_digit_form(&u.to_string(), 'p', *val, val + *rel_prec as i64)
            }
        }
    }

    fn parse_text(field: &PAdicField, text: &str) -> Result<Self> {
        if let Some(form) = parse_digit_form(text, 'p')? {
            let unit = parse_int(&form.unit)?;
            if unit.is_zero() {
                return Ok(PAdic::inexact_zero(form.abs));
            }
            // u*p^v with u possibly divisible by p
            let (k, u) = split_p(field.p, &unit);
            let v = form.val + k;
            if form.abs <= v {
                return Ok(PAdic::inexact_zero(form.abs));
            }
            let rel = (form.abs - v) as u32;
            return PAdic::from_parts(field.p, v, &u, rel);
        }
        let lit = parse_rational_literal(text)?;
        Ok(PAdic::from_rational(field.p, &lit.num, &lit.den, field.prec as i64))
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Zero for PAdic {
    fn zero() -> Self {
        PAdic::exact_zero()
    }

    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl Add for PAdic {
    type Output = PAdic;
    fn add(self, rhs: PAdic) -> PAdic {
        self.add_ref(&rhs)
    }
}

impl Sub for PAdic {
    type Output = PAdic;
    fn sub(self, rhs: PAdic) -> PAdic {
        self.sub_ref(&rhs)
    }
}

impl Mul for PAdic {
    type Output = PAdic;
    fn mul(self, rhs: PAdic) -> PAdic {
        self.mul_ref(&rhs)
    }
}

impl Neg for PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, n: i64, d: i64, prec: i64) -> PAdic {
        PAdic::from_rational(p, &BigInt::from(n), &BigInt::from(d), prec)
    }

    #[test]
    fn half_in_q2_has_negative_valuation() {
        let x = q(2, 1, 2, 10);
        assert_eq!(x.valuation().unwrap(), Valuation::Finite(-1));
        assert_eq!(x.rel_precision(), Some(11));
        assert_eq!(x.abs_precision(), Some(10));
        match x.state() {
            PAdicState::Nonzero { unit, .. } => assert!(unit.is_one()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn four_in_q2() {
        let x = q(2, 4, 1, 10);
        assert_eq!(x.valuation().unwrap(), Valuation::Finite(2));
        match x.state() {
            PAdicState::Nonzero { unit, rel_prec, .. } => {
                assert!(unit.is_one());
                assert_eq!(rel_prec, 8);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minus_eighteen_over_thirty_five_in_q3() {
        let x = q(3, -18, 35, 10);
        assert_eq!(x.valuation().unwrap(), Valuation::Finite(2));
        let PAdicState::Nonzero { unit, rel_prec, .. } = x.state() else { panic!() };
        // 3^2 * u * 35 == -18 modulo 3^(2 + rel_prec)
        let m = pow_p(3, rel_prec + 2);
        let back: BigInt = (BigInt::from(9) * unit * BigInt::from(35) + BigInt::from(18)).mod_floor(&m);
        assert!(back.is_zero());
        // unit == -2/35 modulo 3
        assert_eq!((unit * BigInt::from(35)).mod_floor(&BigInt::from(3)), BigInt::from(1));
    }

    #[test]
    fn full_cancellation_gives_inexact_zero() {
        let a = q(2, 1, 1, 10);
        let b = q(2, -1, 1, 10);
        assert_eq!(a.add_ref(&b), PAdic::inexact_zero(10));
    }

    #[test]
    fn product_of_two_and_half() {
        let a = q(2, 2, 1, 10);
        let b = q(2, 1, 2, 9);
        let c = a.mul_ref(&b);
        assert_eq!(c.valuation().unwrap(), Valuation::Finite(0));
        assert_eq!(c.rel_precision(), Some(9));
        assert!(c.agrees_with(&q(2, 1, 1, 100)));
    }

    #[test]
    fn division_round_trip() {
        let a = q(3, 9, 1, 12);
        let b = q(3, -35, 1, 12);
        let c = a.div_ref(&b).unwrap();
        assert_eq!(c.valuation().unwrap(), Valuation::Finite(2));
        assert!(c.mul_ref(&b).agrees_with(&a));
    }

    #[test]
    fn division_by_zero_states() {
        let a = q(3, 1, 1, 5);
        assert_eq!(a.div_ref(&PAdic::exact_zero()), Err(Error::DivisionByZero));
        assert_eq!(a.div_ref(&PAdic::inexact_zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuations_of_zero_states() {
        assert_eq!(q(2, 12, 1, 10).valuation().unwrap(), Valuation::Finite(2));
        assert_eq!(PAdic::exact_zero().valuation().unwrap(), Valuation::Infinite);
        assert_eq!(PAdic::inexact_zero(10).valuation(), Err(Error::UnknownValuation));
    }

    #[test]
    fn text_round_trip() {
        let f = PAdicField::new(2, 10).unwrap();
        for x in [q(2, -4, 1, 10), q(2, 1, 4, 10), PAdic::inexact_zero(7), PAdic::exact_zero()] {
            let t = x.to_text();
            assert_eq!(PAdic::parse_text(&f, &t).unwrap(), x, "{t}");
        }
        assert_eq!(q(2, -4, 1, 10).to_text(), "-1*p^2+O(p^10)");
        assert_eq!(PAdic::parse_text(&f, "1/2").unwrap(), q(2, 1, 2, 10));
        assert_eq!(PAdic::parse_text(&f, "3*p^1 + O(p^6)").unwrap(), q(2, 6, 1, 6));
    }

    #[test]
    fn exact_zero_is_neutral_and_absorbing() {
        let a = q(5, 7, 3, 8);
        assert_eq!(a.add_ref(&PAdic::exact_zero()), a);
        assert_eq!(a.mul_ref(&PAdic::exact_zero()), PAdic::exact_zero());
    }

    #[test]
    fn inexact_zero_times_nonzero_shifts_precision() {
        let a = q(2, 4, 1, 20);
        assert_eq!(PAdic::inexact_zero(5).mul_ref(&a), PAdic::inexact_zero(7));
        assert_eq!(PAdic::inexact_zero(5).div_ref(&a).unwrap(), PAdic::inexact_zero(3));
    }
}
