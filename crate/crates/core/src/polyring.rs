//! Monomials, sparse polynomials and tropical / classical term orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::valued_field::{Scalar, Valuation};

/// Dense exponent vector `x_1^a_1 ... x_n^a_n`, with the total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    // degree first so the derived order is graded; only used for map keys
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { deg: 0, exps: vec![0; n] }
    }

    /// The variable `x_(i+1)` (0-based index `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { deg: 1, exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.deg += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { deg: self.deg - other.deg, exps })
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.deg -= 1;
        Some(m)
    }

    /// `w . alpha`.
    pub fn weight(&self, w: &[i64]) -> i64 {
        self.exps.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    /// Renders with the given variable names, e.g. `x^2*y`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.deg == 0 {
            return "1".into();
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.exps.len()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format_with(&names))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All monomials in `n` variables of total degree exactly `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// All monomials in `n` variables of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Classical monomial orders, with `x_1 > x_2 > ... > x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(&b.exps) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// A term order: tropical (weight plus monomial tie-break) or classical.
///
/// Tropical terms compare by total degree, then by `val(c) + w.alpha` (a
/// smaller sum is a greater term), then by the tie-break order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Tropical { weight: Vec<i64>, tiebreak: MonomialOrder },
    Classical(MonomialOrder),
}

impl TermOrder {
    pub fn tropical(weight: Vec<i64>, tiebreak: MonomialOrder) -> Self {
        TermOrder::Tropical { weight, tiebreak }
    }

    pub fn classical(order: MonomialOrder) -> Self {
        TermOrder::Classical(order)
    }

    pub fn is_tropical(&self) -> bool {
        matches!(self, TermOrder::Tropical { .. })
    }

    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self, TermOrder::Classical(MonomialOrder::Lex))
    }

    pub fn tiebreak(&self) -> MonomialOrder {
        match self {
            TermOrder::Tropical { tiebreak, .. } => *tiebreak,
            TermOrder::Classical(o) => *o,
        }
    }

    pub fn check_nvars(&self, n: usize) -> Result<()> {
        if let TermOrder::Tropical { weight, .. } = self {
            if weight.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "weight has {} entries for {n} variables",
                    weight.len()
                )));
            }
        }
        Ok(())
    }

    /// Compares the terms `pi^va x^a` and `pi^vb x^b`.
    pub fn compare_keys(&self, va: i64, a: &Monomial, vb: i64, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Classical(o) => o.compare(a, b),
            TermOrder::Tropical { weight, tiebreak } => a
                .deg
                .cmp(&b.deg)
                .then_with(|| (vb + b.weight(weight)).cmp(&(va + a.weight(weight))))
                .then_with(|| tiebreak.compare(a, b)),
        }
    }

    /// Compares monomials as terms with unit coefficients.
    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compare_keys(0, a, 0, b)
    }

    /// Compares `ca x^a` with `cb x^b`; coefficients must have known valuations.
    pub fn compare_terms<S: Scalar>(
        &self,
        ca: &S,
        a: &Monomial,
        cb: &S,
        b: &Monomial,
    ) -> Result<Ordering> {
        Ok(self.compare_keys(term_valuation(ca)?, a, term_valuation(cb)?, b))
    }
}

/// Valuation of a term coefficient, which must be nonzero.
pub fn term_valuation<S: Scalar>(c: &S) -> Result<i64> {
    match c.valuation() {
        Ok(Valuation::Finite(v)) => Ok(v),
        Ok(Valuation::Infinite) => {
            Err(Error::InvalidArgument("term with exact zero coefficient".into()))
        }
        Err(_) => Err(Error::precision("term coefficient is zero at working precision")),
    }
}

/// Index of the greatest term among `(monomial, coefficient)` candidates.
///
/// Zero-valued coefficients are skipped. An inexact zero known modulo
/// `pi^N` on a monomial of the winner's degree could still hide a greater
/// term when `(N, m)` beats the winner; that is reported as
/// [`Error::PrecisionExhausted`]. Returns `None` when every candidate is zero.
pub fn greatest_term<'a, S: Scalar + 'a>(
    ord: &TermOrder,
    candidates: impl IntoIterator<Item = (usize, &'a Monomial, &'a S)>,
) -> Result<Option<usize>> {
    let mut best: Option<(usize, i64, &Monomial)> = None;
    let mut inexact: Vec<(i64, &Monomial)> = Vec::new();
    for (idx, m, c) in candidates {
        match c.valuation() {
            Ok(Valuation::Finite(v)) => {
                let better = match &best {
                    None => true,
                    Some((_, bv, bm)) => ord.compare_keys(v, m, *bv, bm) == Ordering::Greater,
                };
                if better {
                    best = Some((idx, v, m));
                }
            }
            Ok(Valuation::Infinite) => {}
            Err(_) => {
                if let Some(n) = c.abs_precision() {
                    inexact.push((n, m));
                }
            }
        }
    }
    let Some((idx, bv, bm)) = best else {
        return Ok(None);
    };
    for (n, m) in inexact {
        if m.degree() == bm.degree() && ord.compare_keys(n, m, bv, bm) == Ordering::Greater {
            return Err(Error::precision(format!(
                "an inexact zero on {m:?} may outrank the leading term on {bm:?}"
            )));
        }
    }
    Ok(Some(idx))
}

/// Sparse polynomial over a valued field; exact zeros are never stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn term(coeff: S, mono: Monomial) -> Self {
        let mut p = Polynomial::zero(mono.nvars());
        p.add_term(mono, coeff);
        p
    }

    /// Sums the given terms, dropping exact zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: S) {
        assert_eq!(mono.nvars(), self.nvars, "monomial arity mismatch");
        if coeff.is_exact_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, coeff);
            }
            Some(old) => {
                let sum = old.add_ref(&coeff);
                if !sum.is_exact_zero() {
                    self.terms.insert(mono, sum);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every stored coefficient is zero at its precision.
    pub fn is_zero_value(&self) -> bool {
        self.terms.values().all(|c| c.is_zero_value())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &S) -> Self {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32, one: &S) -> Self {
        let mut out = Polynomial::term(one.clone(), Monomial::one(self.nvars));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// The greatest term under `ord`.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, S)> {
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let entries: Vec<(&Monomial, &S)> = self.terms.iter().collect();
        let idx = greatest_term(ord, entries.iter().enumerate().map(|(i, (m, c))| (i, *m, *c)))?
            .ok_or(Error::ZeroPolynomial)?;
        let (m, c) = entries[idx];
        Ok((m.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, ord: &TermOrder) -> Result<Self> {
        let (lm, lc) = self.leading_term(ord)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if *m == lm {
                continue;
            }
            let q = c.div_ref(&lc)?;
            if !q.is_exact_zero() {
                terms.insert(m.clone(), q);
            }
        }
        let one = lc.div_ref(&lc)?;
        terms.insert(lm, one);
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    /// Terms in descending order; zero-valued coefficients rank by their
    /// precision as a valuation lower bound.
    pub fn sorted_terms(&self, ord: &TermOrder) -> Vec<(&Monomial, &S)> {
        let key = |c: &S| match c.valuation_lower_bound() {
            Valuation::Finite(v) => v,
            Valuation::Infinite => i64::MAX / 4,
        };
        let mut v: Vec<(&Monomial, &S)> = self.terms.iter().collect();
        v.sort_by(|(ma, ca), (mb, cb)| ord.compare_keys(key(cb), mb, key(ca), ma));
        v
    }

    /// Smallest valuation among nonzero coefficients.
    pub fn min_valuation(&self) -> Option<i64> {
        self.terms.values().filter_map(|c| c.valuation().ok().and_then(|v| v.finite())).min()
    }

    /// Smallest absolute precision among the coefficients; `None` if all exact.
    pub fn min_abs_precision(&self) -> Option<i64> {
        self.terms.values().filter_map(|c| c.abs_precision()).min()
    }

    /// Coefficient-wise agreement on shared digits, with identical supports
    /// up to zero-valued terms.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().all(|m| match (self.terms.get(m), other.terms.get(m)) {
            (Some(a), Some(b)) => a.agrees_with(b),
            (Some(a), None) | (None, Some(a)) => a.is_zero_value(),
            (None, None) => true,
        })
    }

    /// Renders as `c*m + c*m ...` in descending order.
    pub fn format_with(&self, names: &[String], ord: &TermOrder) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.sorted_terms(ord)
            .into_iter()
            .map(|(m, c)| format!("({})*{}", c.to_text(), m.format_with(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(m, c)| format!("({c})*{m:?}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Minimal generators of the monomial ideal spanned by `lms`, deduplicated.
pub fn minimal_generators(lms: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = lms.to_vec();
    v.sort();
    v.dedup();
    let keep: Vec<bool> = v
        .iter()
        .map(|m| !v.iter().any(|g| g != m && g.divides(m)))
        .collect();
    v.into_iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m).collect()
}

pub fn divisible_by_any(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// Normal set of a zero-dimensional monomial ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    /// Ascending under the order supplied to [`staircase`].
    pub basis: Vec<Monomial>,
    pub delta: usize,
    /// `1 + max |x^a|` over the basis.
    pub dbound: u32,
}

impl Staircase {
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }
}

/// Monomials outside the ideal generated by `lms`, sorted ascending by `ord`.
pub fn staircase(lms: &[Monomial], nvars: usize, ord: &TermOrder) -> Result<Staircase> {
    let gens = minimal_generators(lms);
    let mut bounds = vec![0u32; nvars];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = gens
            .iter()
            .filter(|g| g.degree() == g.exponent(i))
            .map(|g| g.exponent(i))
            .min()
            .ok_or_else(|| {
                Error::NotZeroDimensional(format!("no pure power of x{} among leading monomials", i + 1))
            })?;
    }
    let mut basis = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial::new(cur.clone());
        if !divisible_by_any(&m, &gens) {
            basis.push(m);
        }
        // odometer over the box [0, bounds)
        let mut i = 0;
        loop {
            if i == nvars {
                basis.sort_by(|a, b| ord.compare_monomials(a, b));
                let dbound = 1 + basis.iter().map(|m| m.degree()).max().unwrap_or(0);
                let delta = basis.len();
                return Ok(Staircase { basis, delta, dbound });
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::{PAdic, PAdicField};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn grevlex0(n: usize) -> TermOrder {
        TermOrder::tropical(vec![0; n], MonomialOrder::Grevlex)
    }

    #[test]
    fn valuation_decides_within_a_degree() {
        let f = PAdicField::new(2, 10).unwrap();
        let ord = grevlex0(2);
        let c = ord.compare_terms(&f.from_ints(3, 1), &mono(&[1, 0]), &f.from_ints(2, 1), &mono(&[0, 1]));
        assert_eq!(c.unwrap(), Ordering::Greater);
    }

    #[test]
    fn degree_beats_valuation() {
        let f = PAdicField::new(3, 10).unwrap();
        let ord = grevlex0(2);
        let c = ord.compare_terms(&f.from_ints(1, 1), &mono(&[4, 0]), &f.from_ints(3, 1), &mono(&[1, 1]));
        assert_eq!(c.unwrap(), Ordering::Greater);
    }

    #[test]
    fn unit_multiples_are_equal() {
        let f = PAdicField::new(3, 10).unwrap();
        let ord = grevlex0(2);
        let m = mono(&[1, 1]);
        let c = ord.compare_terms(&f.from_ints(3, 1), &m, &f.from_ints(6, 1), &m);
        assert_eq!(c.unwrap(), Ordering::Equal);
    }

    #[test]
    fn inexact_zero_term_cannot_be_ranked() {
        let f = PAdicField::new(3, 10).unwrap();
        let ord = grevlex0(2);
        let m = mono(&[1, 1]);
        let r = ord.compare_terms(&PAdic::inexact_zero(4), &m, &f.from_ints(1, 1), &m);
        assert!(matches!(r, Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn leading_terms_of_small_basis() {
        let f = PAdicField::new(2, 10).unwrap();
        let ord = grevlex0(2);
        let g1 = Polynomial::from_terms(2, [(mono(&[0, 1]), f.from_ints(1, 1)), (mono(&[1, 0]), f.from_ints(2, 1))]);
        let g2 = Polynomial::from_terms(2, [(mono(&[2, 0]), f.from_ints(1, 1)), (mono(&[0, 0]), f.from_ints(4, 1))]);
        assert_eq!(g1.leading_monomial(&ord).unwrap(), mono(&[0, 1]));
        assert_eq!(g2.leading_monomial(&ord).unwrap(), mono(&[2, 0]));
        assert_eq!(Polynomial::<PAdic>::zero(2).leading_term(&ord).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn grevlex_and_lex_tiebreaks() {
        let g = MonomialOrder::Grevlex;
        let l = MonomialOrder::Lex;
        // x*z vs y^2: grevlex prefers y^2, lex prefers x*z
        assert_eq!(g.compare(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
        assert_eq!(l.compare(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(l.compare(&mono(&[0, 5]), &mono(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn staircases() {
        let ord = grevlex0(2);
        let s = staircase(&[mono(&[0, 1]), mono(&[2, 0])], 2, &ord).unwrap();
        assert_eq!(s.basis, vec![mono(&[0, 0]), mono(&[1, 0])]);
        assert_eq!((s.delta, s.dbound), (2, 2));

        let s = staircase(&[mono(&[3, 0]), mono(&[1, 1]), mono(&[0, 2])], 2, &ord).unwrap();
        assert_eq!(s.delta, 4);
        assert_eq!(s.basis, vec![mono(&[0, 0]), mono(&[0, 1]), mono(&[1, 0]), mono(&[2, 0])]);

        let s = staircase(&[mono(&[1, 0, 0]), mono(&[0, 1, 0]), mono(&[0, 0, 1])], 3, &grevlex0(3)).unwrap();
        assert_eq!((s.basis.len(), s.delta, s.dbound), (1, 1, 1));

        assert!(matches!(staircase(&[mono(&[0, 2])], 2, &ord), Err(Error::NotZeroDimensional(_))));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
    }
}
