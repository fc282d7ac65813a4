use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use super::text::{format_digit_form, parse_digit_form, parse_rational_literal};
use super::{Scalar, ScalarField, Valuation};
use crate::error::{Error, Result};

/// Coefficient range used by [`TAdic::sample_integer`].
pub const SAMPLE_COEFF_BOUND: i64 = 100;

/// `Q((t))` with default truncation order `prec`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TAdicField {
    prec: u32,
}

impl TAdicField {
    pub fn new(prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        Ok(TAdicField { prec })
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// `t^val * (c_0 + c_1 t + ...) + O(t^(val + digits.len()))`.
    pub fn series(&self, val: i64, digits: &[BigRational]) -> TAdic {
        TAdic::normalize(val, digits.to_vec(), val + digits.len() as i64)
    }
}

impl ScalarField for TAdicField {
    fn default_precision(&self) -> Option<u32> {
        Some(self.prec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    ExactZero,
    InexactZero { abs_prec: i64 },
    /// `digits[0]` is nonzero; `digits.len()` is the relative precision.
    Nonzero { val: i64, digits: Vec<BigRational> },
}

/// Truncated Laurent series over `Q`, tracked like [`super::PAdic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TAdic(Repr);

impl TAdic {
    pub fn exact_zero() -> Self {
        TAdic(Repr::ExactZero)
    }

    pub fn inexact_zero(abs_prec: i64) -> Self {
        TAdic(Repr::InexactZero { abs_prec })
    }

    /// Coefficients of `t^v, ..., t^(abs-1)`, renormalised.
    fn normalize(v: i64, mut series: Vec<BigRational>, abs: i64) -> Self {
        if abs <= v {
            return TAdic::inexact_zero(abs);
        }
        series.resize((abs - v) as usize, BigRational::zero());
        match series.iter().position(|c| !c.is_zero()) {
            None => TAdic::inexact_zero(abs),
            Some(k) => {
                series.drain(..k);
                TAdic(Repr::Nonzero { val: v + k as i64, digits: series })
            }
        }
    }

    pub fn digits(&self) -> Option<&[BigRational]> {
        match &self.0 {
            Repr::Nonzero { digits, .. } => Some(digits),
            _ => None,
        }
    }
}

fn shifted(digits: &[BigRational], shift: usize, len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in digits.iter().enumerate() {
        if i + shift < len {
            out[i + shift] = c.clone();
        }
    }
    out
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Scalar for TAdic {
    type Field = TAdicField;

    fn one(field: &TAdicField) -> Self {
        let mut digits = vec![BigRational::zero(); field.prec as usize];
        digits[0] = BigRational::one();
        TAdic(Repr::Nonzero { val: 0, digits })
    }

    fn from_ratio(field: &TAdicField, num: &BigInt, den: &BigInt) -> Self {
        if num.is_zero() {
            return TAdic::exact_zero();
        }
        let mut digits = vec![BigRational::zero(); field.prec as usize];
        digits[0] = BigRational::new(num.clone(), den.clone());
        TAdic(Repr::Nonzero { val: 0, digits })
    }

    fn sample_integer(_field: &TAdicField, prec: u32, rng: &mut dyn RngCore) -> Self {
        let series = (0..prec)
            .map(|_| {
                BigRational::from_integer(BigInt::from(
                    rng.gen_range(-SAMPLE_COEFF_BOUND..=SAMPLE_COEFF_BOUND),
                ))
            })
            .collect();
        TAdic::normalize(0, series, prec as i64)
    }

    fn add_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::ExactZero, _) => other.clone(),
            (_, Repr::ExactZero) => self.clone(),
            (Repr::InexactZero { abs_prec: a }, Repr::InexactZero { abs_prec: b }) => {
                TAdic::inexact_zero((*a).min(*b))
            }
            (Repr::InexactZero { abs_prec }, Repr::Nonzero { val, digits })
            | (Repr::Nonzero { val, digits }, Repr::InexactZero { abs_prec }) => {
                let abs = (*abs_prec).min(val + digits.len() as i64);
                TAdic::normalize(*val, digits.clone(), abs)
            }
            (Repr::Nonzero { val: va, digits: da }, Repr::Nonzero { val: vb, digits: db }) => {
                let abs = (va + da.len() as i64).min(vb + db.len() as i64);
                let m = (*va).min(*vb);
                if abs <= m {
                    return TAdic::inexact_zero(abs);
                }
                let len = (abs - m) as usize;
                let mut sum = shifted(da, (va - m) as usize, len);
                for (s, c) in sum.iter_mut().zip(shifted(db, (vb - m) as usize, len)) {
                    *s += c;
                }
                TAdic::normalize(m, sum, abs)
            }
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => TAdic::exact_zero(),
            (Repr::InexactZero { abs_prec: a }, Repr::InexactZero { abs_prec: b }) => {
                TAdic::inexact_zero(a + b)
            }
            (Repr::InexactZero { abs_prec }, Repr::Nonzero { val, .. })
            | (Repr::Nonzero { val, .. }, Repr::InexactZero { abs_prec }) => {
                TAdic::inexact_zero(abs_prec + val)
            }
            (Repr::Nonzero { val: va, digits: da }, Repr::Nonzero { val: vb, digits: db }) => {
                let rel = da.len().min(db.len());
                let mut out = vec![BigRational::zero(); rel];
                for i in 0..rel {
                    if da[i].is_zero() {
                        continue;
                    }
                    for j in 0..rel - i {
                        out[i + j] += &da[i] * &db[j];
                    }
                }
                TAdic(Repr::Nonzero { val: va + vb, digits: out })
            }
        }
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Nonzero { val, digits } => {
                TAdic(Repr::Nonzero { val: *val, digits: digits.iter().map(|c| -c).collect() })
            }
            _ => self.clone(),
        }
    }

    fn div_ref(&self, other: &Self) -> Result<Self> {
        let Repr::Nonzero { val: vb, digits: db } = &other.0 else {
            return Err(Error::DivisionByZero);
        };
        Ok(match &self.0 {
            Repr::ExactZero => TAdic::exact_zero(),
            Repr::InexactZero { abs_prec } => TAdic::inexact_zero(abs_prec - vb),
            Repr::Nonzero { val: va, digits: da } => {
                let rel = da.len().min(db.len());
                let c0 = &db[0];
                let mut inv: Vec<BigRational> = Vec::with_capacity(rel);
                inv.push(c0.recip());
                for k in 1..rel {
                    let mut acc = BigRational::zero();
                    for j in 1..=k {
                        acc += &db[j] * &inv[k - j];
                    }
                    inv.push(-acc / c0);
                }
                let inv = TAdic(Repr::Nonzero { val: -vb, digits: inv });
                let a = TAdic(Repr::Nonzero { val: *va, digits: da[..rel].to_vec() });
                a.mul_ref(&inv)
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
            Repr::Nonzero { val, digits } => Some(val + digits.len() as i64),
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
            Repr::InexactZero { abs_prec } => format_digit_form("0", 't', 0, *abs_prec),
            Repr::Nonzero { val, digits } => {
                let body: Vec<String> = digits.iter().map(format_rational).collect();
                let unit = format!("[{}]", body.join(","));
                format_digit_form(&unit, 't', *val, val + digits.len() as i64)
            }
        }
    }

    fn parse_text(field: &TAdicField, text: &str) -> Result<Self> {
        if let Some(form) = parse_digit_form(text, 't')? {
            let digits: Vec<BigRational> = match form.unit.strip_prefix('[') {
                Some(rest) => {
                    let inner = rest
                        .strip_suffix(']')
                        .ok_or_else(|| Error::Parse(format!("unclosed '[' in {text:?}")))?;
                    inner
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            parse_rational_literal(s)
                                .map(|l| BigRational::new(l.num, l.den))
                        })
                        .collect::<Result<_>>()?
                }
                None => {
                    let l = parse_rational_literal(&form.unit)?;
                    vec![BigRational::new(l.num, l.den)]
                }
            };
            return Ok(TAdic::normalize(form.val, digits, form.abs));
        }
        let lit = parse_rational_literal(text)?;
        Ok(TAdic::from_ratio(field, &lit.num, &lit.den))
    }
}

impl fmt::Display for TAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Zero for TAdic {
    fn zero() -> Self {
        TAdic::exact_zero()
    }

    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl Add for TAdic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for TAdic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl Mul for TAdic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for TAdic {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn one_minus_t_inverse_is_geometric_series() {
        let f = TAdicField::new(6).unwrap();
        let one = TAdic::one(&f);
        let x = f.series(0, &[q(1), q(-1), q(0), q(0), q(0), q(0)]);
        let inv = one.div_ref(&x).unwrap();
        assert_eq!(inv.digits().unwrap(), &[q(1), q(1), q(1), q(1), q(1), q(1)]);
    }

    #[test]
    fn cancellation_and_valuation_shift() {
        let f = TAdicField::new(4).unwrap();
        let a = f.series(0, &[q(1), q(2), q(3), q(4)]);
        let b = f.series(0, &[q(1), q(2), q(5), q(4)]);
        let d = a.sub_ref(&b);
        assert_eq!(d.valuation().unwrap(), Valuation::Finite(2));
        assert_eq!(d.abs_precision(), Some(4));
        assert_eq!(a.sub_ref(&a), TAdic::inexact_zero(4));
    }

    #[test]
    fn text_round_trip() {
        let f = TAdicField::new(3).unwrap();
        let a = f.series(-1, &[BigRational::new(1.into(), 2.into()), q(0), q(-3)]);
        let t = a.to_text();
        assert_eq!(t, "[1/2,0,-3]*t^-1+O(t^2)");
        assert_eq!(TAdic::parse_text(&f, &t).unwrap(), a);
    }
}
