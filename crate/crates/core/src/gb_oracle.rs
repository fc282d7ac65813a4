//! Independent Gröbner-basis computations used to cross-check results:
//! bases and normal forms from (stable) tropical echelon forms of Macaulay
//! matrices, verification of claimed reduced bases, and random systems.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{minimal_generators, monomials_of_degree, monomials_up_to, staircase, Monomial, Polynomial, Staircase, TermOrder};
use crate::quotient::GroebnerBasis;
use crate::trop_linalg::{tropical_row_echelon, MacaulayMatrix};
use crate::valued_field::{ExactRational, RationalField, Scalar, ScalarField};

fn columns_for<S: Scalar>(rows: &[Polynomial<S>], ord: &TermOrder) -> Vec<Monomial> {
    let set: BTreeSet<Monomial> = rows.iter().flat_map(|p| p.monomials().cloned()).collect();
    let mut cols: Vec<Monomial> = set.into_iter().collect();
    cols.sort_by(|a, b| ord.compare_monomials(b, a));
    cols
}

fn macaulay_attempt<S: Scalar>(
    f: &[Polynomial<S>],
    ord: &TermOrder,
    field: &S::Field,
    bound: u32,
) -> Result<GroebnerBasis<S>> {
    let n = f.first().map(|p| p.nvars()).ok_or(Error::ZeroPolynomial)?;
    let mut rows = Vec::new();
    for p in f.iter().filter(|p| !p.is_empty()) {
        let d = p.degree();
        if d > bound {
            continue;
        }
        for m in monomials_up_to(n, bound - d) {
            rows.push(p.mul_monomial(&m));
        }
    }
    let cols = columns_for(&rows, ord);
    // the stable variant only saves digits; exact rationals just grow under it
    let stable = field.default_precision().is_some();
    let ech = tropical_row_echelon(&MacaulayMatrix::from_polynomials(cols, &rows)?, ord, stable)?;
    let pivots = ech.pivot_monomials().to_vec();
    let st = staircase(&pivots, n, ord)?;
    if st.basis.iter().any(|b| b.degree() >= bound) {
        return Err(Error::BoundTooSmall(bound));
    }
    let gens = minimal_generators(&pivots);
    let mut polys = Vec::with_capacity(gens.len());
    for g in &gens {
        let r = pivots.iter().position(|p| p == g).expect("generator is a pivot");
        let poly = ech.matrix.row_polynomial(r).monic(ord)?;
        // the tail must live on the staircase, otherwise the bound was too small
        if poly.terms().any(|(m, c)| m != g && !c.is_zero_value() && st.index_of(m).is_none()) {
            return Err(Error::BoundTooSmall(bound));
        }
        polys.push(Polynomial::from_terms(n, poly.terms().filter(|(_, c)| !c.is_exact_zero()).map(|(m, c)| (m.clone(), c.clone()))));
    }
    GroebnerBasis::new(polys, ord.clone(), field.clone()).sorted()
}

/// Reduced Gröbner basis of `<f>` for `ord`, read off the tropical
/// echelon form (the stable one over inexact fields) of the Macaulay matrix
/// of degree `degree_bound`. One retry is made at `degree_bound + 1`.
pub fn macaulay_gb<S: Scalar>(
    f: &[Polynomial<S>],
    ord: &TermOrder,
    field: &S::Field,
    degree_bound: u32,
) -> Result<GroebnerBasis<S>> {
    match macaulay_attempt(f, ord, field, degree_bound) {
        Err(Error::BoundTooSmall(_)) | Err(Error::NotZeroDimensional(_)) => {
            macaulay_attempt(f, ord, field, degree_bound + 1)
        }
        other => other,
    }
}

/// Normal forms modulo a reduced basis, from one echelon form of the rows
/// `x^b g` with `x^b LM(g)` ranging over the leading ideal up to a degree.
#[derive(Debug, Clone)]
pub struct MacaulayOracle<S: Scalar> {
    bound: u32,
    staircase: Staircase,
    /// Pivot monomial to its fully reduced, monic row.
    rows: HashMap<Monomial, Polynomial<S>>,
}

impl<S: Scalar> MacaulayOracle<S> {
    pub fn new(g: &GroebnerBasis<S>, degree_bound: u32) -> Result<Self> {
        let n = g.nvars();
        let lms = g.leading_monomials()?;
        let st = staircase(&lms, n, &g.order)?;
        let mut rows = Vec::new();
        for d in 0..=degree_bound {
            for m in monomials_of_degree(n, d) {
                if let Some(k) = lms.iter().position(|l| l.divides(&m)) {
                    rows.push(g.polys[k].mul_monomial(&m.div(&lms[k]).expect("divisible")));
                }
            }
        }
        let cols = columns_for(&rows, &g.order);
        let ech = tropical_row_echelon(&MacaulayMatrix::from_polynomials(cols, &rows)?, &g.order, false)?;
        let mut out = HashMap::new();
        for r in 0..ech.rank {
            let lm = ech.matrix.cols[r].clone();
            out.insert(lm, ech.matrix.row_polynomial(r).monic(&g.order)?);
        }
        Ok(MacaulayOracle { bound: degree_bound, staircase: st, rows: out })
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn normal_form(&self, target: &Polynomial<S>) -> Result<Polynomial<S>> {
        if !target.is_empty() && target.degree() >= self.bound {
            return Err(Error::BoundTooSmall(self.bound));
        }
        let mut acc = target.clone();
        for (m, c) in target.terms() {
            if c.is_exact_zero() {
                continue;
            }
            if let Some(row) = self.rows.get(m) {
                acc = acc.sub(&row.scale(c));
            }
        }
        for (m, c) in acc.terms() {
            if !c.is_zero_value() && self.staircase.index_of(m).is_none() {
                return Err(Error::BoundTooSmall(self.bound));
            }
        }
        Ok(Polynomial::from_terms(
            acc.nvars(),
            acc.terms().filter(|(m, c)| !c.is_exact_zero() && self.staircase.index_of(m).is_some()).map(|(m, c)| (m.clone(), c.clone())),
        ))
    }
}

/// `NF_G(target)`; requires `deg(target) < degree_bound`.
pub fn macaulay_normal_form<S: Scalar>(
    g: &GroebnerBasis<S>,
    target: &Polynomial<S>,
    degree_bound: u32,
) -> Result<Polynomial<S>> {
    MacaulayOracle::new(g, degree_bound)?.normal_form(target)
}

/// Outcome of [`verify_reduced_gb`]; `witness` explains the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub witness: Option<String>,
}

impl Verification {
    fn fail(msg: String) -> Self {
        Verification { ok: false, witness: Some(msg) }
    }
}

/// Checks that `claimed` is the reduced basis of `<source>` for its order:
/// every element reduces to zero modulo `source`, the quotient dimensions
/// agree, `claimed` is reduced and monic, and its leading monomials are
/// minimal generators. `degree_bound` is raised as needed to exceed the
/// degree of every claimed element.
pub fn verify_reduced_gb<S: Scalar>(
    claimed: &GroebnerBasis<S>,
    source: &GroebnerBasis<S>,
    degree_bound: u32,
) -> Result<Verification> {
    if let Err(e) = claimed.check_reduced() {
        return Ok(Verification::fail(e.to_string()));
    }
    let lms = claimed.leading_monomials()?;
    for (i, a) in lms.iter().enumerate() {
        for (j, b) in lms.iter().enumerate() {
            if i != j && a.divides(b) {
                return Ok(Verification::fail(format!("leading monomial {a:?} divides {b:?}")));
            }
        }
    }
    let n = source.nvars();
    let delta = match staircase(&lms, n, &claimed.order) {
        Ok(st) => st.delta,
        Err(e) => return Ok(Verification::fail(e.to_string())),
    };
    let src_delta = source.staircase()?.delta;
    if delta != src_delta {
        return Ok(Verification::fail(format!("quotient dimension {delta}, expected {src_delta}")));
    }
    let maxdeg = claimed.polys.iter().map(|p| p.degree()).max().unwrap_or(0);
    let oracle = MacaulayOracle::new(source, degree_bound.max(maxdeg + 1))?;
    for (i, p) in claimed.polys.iter().enumerate() {
        let nf = oracle.normal_form(p)?;
        if !nf.is_zero_value() {
            return Ok(Verification::fail(format!("element {i} has nonzero normal form")));
        }
    }
    Ok(Verification { ok: true, witness: None })
}

fn random_poly<S: Scalar>(
    field: &S::Field,
    monos: Vec<Monomial>,
    n: usize,
    prec: u32,
    rng: &mut ChaCha8Rng,
) -> Polynomial<S> {
    Polynomial::from_terms(n, monos.into_iter().map(|m| (m, S::sample_integer(field, prec, rng))))
}

/// Dense random polynomials of the given total degrees with integral
/// coefficients known at absolute precision `prec`.
pub fn random_system<S: Scalar>(field: &S::Field, n: usize, degrees: &[u32], prec: u32, seed: u64) -> Vec<Polynomial<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees.iter().map(|&d| random_poly(field, monomials_up_to(n, d), n, prec, &mut rng)).collect()
}

/// Like [`random_system`] with only top-degree monomials.
pub fn random_homogeneous_system<S: Scalar>(
    field: &S::Field,
    n: usize,
    degrees: &[u32],
    prec: u32,
    seed: u64,
) -> Vec<Polynomial<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees.iter().map(|&d| random_poly(field, monomials_of_degree(n, d), n, prec, &mut rng)).collect()
}

/// Reduced basis, for `ord`, of a random system with exact rational
/// coefficients drawn from `[0, p^coeff_prec)`.
pub fn random_exact_basis(
    field: &RationalField,
    n: usize,
    degrees: &[u32],
    coeff_prec: u32,
    ord: &TermOrder,
    homogeneous: bool,
    seed: u64,
) -> Result<GroebnerBasis<ExactRational>> {
    let sys: Vec<Polynomial<ExactRational>> = if homogeneous {
        random_homogeneous_system(field, n, degrees, coeff_prec, seed)
    } else {
        random_system(field, n, degrees, coeff_prec, seed)
    };
    macaulay_gb(&sys, ord, field, macaulay_bound(degrees))
}

/// Degree past which a zero-dimensional system in generic position has a
/// stable Macaulay matrix: `sum (d_i - 1) + 1`.
pub fn macaulay_bound(degrees: &[u32]) -> u32 {
    degrees.iter().map(|d| d.saturating_sub(1)).sum::<u32>() + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;
    use crate::valued_field::{PAdic, PAdicField};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn small(f: &PAdicField) -> Vec<Polynomial<PAdic>> {
        vec![
            Polynomial::from_terms(2, [(mono(&[0, 1]), f.from_ints(1, 1)), (mono(&[1, 0]), f.from_ints(2, 1))]),
            Polynomial::from_terms(2, [(mono(&[2, 0]), f.from_ints(1, 1)), (mono(&[0, 0]), f.from_ints(4, 1))]),
        ]
    }

    #[test]
    fn macaulay_gb_recovers_basis() {
        let f = PAdicField::new(2, 30).unwrap();
        let ord = TermOrder::tropical(vec![0, 0], MonomialOrder::Grevlex);
        let g = macaulay_gb(&small(&f), &ord, &f, 3).unwrap();
        assert!(g.reduced);
        let want = GroebnerBasis::new(small(&f), ord, f).sorted().unwrap();
        assert!(g.agrees_with(&want), "{g:?}");
    }

    #[test]
    fn normal_forms() {
        let f = PAdicField::new(2, 30).unwrap();
        let ord = TermOrder::tropical(vec![0, 0], MonomialOrder::Grevlex);
        let g = GroebnerBasis::new(small(&f), ord, f);
        // y^2 = 4x^2 = -16
        let y2 = Polynomial::term(f.from_ints(1, 1), mono(&[0, 2]));
        let nf = macaulay_normal_form(&g, &y2, 3).unwrap();
        assert!(nf.agrees_with(&Polynomial::term(f.from_ints(-16, 1), mono(&[0, 0]))));
        assert_eq!(macaulay_normal_form(&g, &y2, 2).unwrap_err(), Error::BoundTooSmall(2));
    }

    #[test]
    fn verification_accepts_and_rejects() {
        let f = PAdicField::new(2, 30).unwrap();
        let ord = TermOrder::tropical(vec![0, 0], MonomialOrder::Grevlex);
        let g = GroebnerBasis::new(small(&f), ord.clone(), f);
        assert!(verify_reduced_gb(&g, &g, 2).unwrap().ok);
        let mut bad = small(&f);
        bad[1] = Polynomial::from_terms(2, [(mono(&[2, 0]), f.from_ints(1, 1)), (mono(&[0, 0]), f.from_ints(5, 1))]);
        let v = verify_reduced_gb(&GroebnerBasis::new(bad, ord, f), &g, 2).unwrap();
        assert!(!v.ok && v.witness.is_some());
    }

    #[test]
    fn random_quadrics_have_four_solutions() {
        let field = RationalField::new(3).unwrap();
        let sys: Vec<Polynomial<ExactRational>> = random_system(&field, 2, &[2, 2], 3, 11);
        let ord = TermOrder::tropical(vec![0, 0], MonomialOrder::Grevlex);
        let g = macaulay_gb(&sys, &ord, &field, macaulay_bound(&[2, 2]) + 1).unwrap();
        assert_eq!(g.staircase().unwrap().delta, 4);
        let again: Vec<Polynomial<ExactRational>> = random_system(&field, 2, &[2, 2], 3, 11);
        assert_eq!(sys, again);
    }
}
