//! Change of ordering: tropical FGLM, classical FGLM, the shape-position
//! shortcut, and the pipeline tying them to the quotient computations.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::polyring::{divisible_by_any, staircase, Monomial, MonomialOrder, Polynomial, TermOrder};
use crate::quotient::{
    is_semi_stable, mat_vec, multiplication_matrices, multiplication_matrix_semistable, nf_variables,
    GroebnerBasis, Matrix, QuotientData,
};
use crate::trop_linalg::{column_reduce_fglm, smith_valuations, MacaulayMatrix, PrecisionReport};
use crate::valued_field::{Scalar, Valuation};

/// Tropical FGLM result with its final column-reduction state.
#[derive(Debug, Clone)]
pub struct TropicalFglm<S: Scalar> {
    pub basis: GroebnerBasis<S>,
    /// Labels of the columns of `p`, in creation order.
    pub columns: Vec<Monomial>,
    /// Final pivot matrix: reduced `M = M0 * p`.
    pub p: Matrix<S>,
    pub max_degree: u32,
}

fn unit<S: Scalar>(n: usize, k: usize, field: &S::Field) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[k] = S::one(field);
    v
}

fn nf_one<S: Scalar>(q: &QuotientData<S>) -> Result<Vec<S>> {
    q.unit_vector()
}

/// `NF(m)` as `M_i NF(m / x_i)` for the smallest `i` with a known parent.
fn nf_from_parent<S: Scalar>(
    q: &QuotientData<S>,
    m: &Monomial,
    known: &HashMap<Monomial, Vec<S>>,
) -> Result<Vec<S>> {
    for i in 0..m.nvars() {
        if let Some(parent) = m.div_var(i).and_then(|d| known.get(&d)) {
            return Ok(q.apply(i, parent));
        }
    }
    Err(Error::InvalidArgument(format!("no known divisor of {m:?}")))
}

/// Reduced GB for a tropical `ord2` by column reduction of normal forms.
pub fn fglm_tropical<S: Scalar>(q: &QuotientData<S>, ord2: &TermOrder) -> Result<GroebnerBasis<S>> {
    fglm_tropical_traced(q, ord2).map(|t| t.basis)
}

pub fn fglm_tropical_traced<S: Scalar>(q: &QuotientData<S>, ord2: &TermOrder) -> Result<TropicalFglm<S>> {
    if !ord2.is_tropical() {
        return Err(Error::InvalidArgument("tropical FGLM needs a tropical target order".into()));
    }
    let n = q.nvars();
    ord2.check_nvars(n)?;
    let delta = q.delta;
    let mut known: HashMap<Monomial, Vec<S>> = HashMap::new();
    let mut columns: Vec<Monomial> = Vec::new();
    let mut nf_cols: Vec<Vec<S>> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut polys = Vec::new();
    let mut frontier: BTreeSet<Monomial> = BTreeSet::from([Monomial::one(n)]);
    let mut d = 0u32;
    let mut last = None;
    while !frontier.is_empty() {
        if d as usize > delta {
            return Err(Error::InternalDegreeOverflow { degree: d, delta });
        }
        let mut batch: Vec<Monomial> = std::mem::take(&mut frontier).into_iter().collect();
        batch.sort_by(|a, b| ord2.compare_monomials(a, b));
        let start = columns.len();
        for m in &batch {
            let v = if m.is_one() { nf_one(q)? } else { nf_from_parent(q, m, &known)? };
            known.insert(m.clone(), v.clone());
            columns.push(m.clone());
            nf_cols.push(v);
        }
        if columns.len() > n * delta + 1 {
            return Err(Error::precision(format!("{} columns exceed the budget n*delta+1", columns.len())));
        }
        let k = columns.len();
        let rows: Vec<Vec<S>> = (0..delta).map(|r| nf_cols.iter().map(|c| c[r].clone()).collect()).collect();
        let mac = MacaulayMatrix::new(columns.clone(), rows)?;
        let ident: Matrix<S> = (0..k).map(|i| unit(k, i, &q.field)).collect();
        let red = column_reduce_fglm(&mac, ord2, &ident)?;
        let mut survivors = Vec::new();
        for j in start..k {
            let alpha = &columns[j];
            if !red.is_zero_column(j) {
                survivors.push(alpha.clone());
                continue;
            }
            let lead = &red.p[j][j];
            let mut g = Polynomial::term(S::one(&q.field), alpha.clone());
            for (r, label) in columns.iter().enumerate() {
                if r != j && !red.p[r][j].is_exact_zero() {
                    g.add_term(label.clone(), red.p[r][j].div_ref(lead)?);
                }
            }
            if g.leading_monomial(ord2)? != *alpha {
                return Err(Error::precision(format!("relation for {alpha:?} has another leading term")));
            }
            lms.push(alpha.clone());
            polys.push(g);
        }
        for s in &survivors {
            for i in 0..n {
                let c = s.mul_var(i);
                if !divisible_by_any(&c, &lms) {
                    frontier.insert(c);
                }
            }
        }
        last = Some(red);
        d += 1;
    }
    let red = last.expect("at least one degree processed");
    let nonzero = (0..columns.len()).filter(|&j| !red.is_zero_column(j)).count();
    if nonzero != delta {
        return Err(Error::precision(format!("{nonzero} independent normal forms, expected {delta}")));
    }
    let basis = GroebnerBasis::new(polys, ord2.clone(), q.field.clone()).sorted()?;
    Ok(TropicalFglm { basis, columns, p: red.p, max_degree: d.saturating_sub(1) })
}

/// Incremental Gaussian elimination on vectors, remembering each stored row
/// as a combination of the accepted input vectors.
struct Incremental<S: Scalar> {
    /// (pivot position, reduced vector, combination over accepted vectors)
    rows: Vec<(usize, Vec<S>, Vec<S>)>,
    accepted: usize,
    field: S::Field,
}

enum Reduced<S> {
    /// `v = sum coef_j a_j`.
    Dependent(Vec<S>),
    Independent,
}

impl<S: Scalar> Incremental<S> {
    fn new(field: S::Field) -> Self {
        Incremental { rows: Vec::new(), accepted: 0, field }
    }

    /// Reduces `v`; an independent vector is accepted.
    fn push(&mut self, v: &[S]) -> Result<Reduced<S>> {
        let mut r = v.to_vec();
        let mut coef = vec![S::zero(); self.accepted];
        for (piv, row, comb) in &self.rows {
            if r[*piv].is_exact_zero() {
                continue;
            }
            let f = r[*piv].div_ref(&row[*piv])?;
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_exact_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
            r[*piv] = S::zero();
            for (c, t) in coef.iter_mut().zip(comb) {
                if !t.is_exact_zero() {
                    *c = c.add_ref(&f.mul_ref(t));
                }
            }
        }
        let piv = r
            .iter()
            .enumerate()
            .filter_map(|(i, x)| match x.valuation() {
                Ok(Valuation::Finite(val)) => Some((val, i)),
                _ => None,
            })
            .min();
        match piv {
            None => Ok(Reduced::Dependent(coef)),
            Some((_, p)) => {
                let mut comb: Vec<S> = coef.iter().map(|c| c.neg_ref()).collect();
                comb.push(S::one(&self.field));
                for (_, _, other) in self.rows.iter_mut() {
                    other.push(S::zero());
                }
                self.rows.push((p, r, comb));
                self.accepted += 1;
                Ok(Reduced::Independent)
            }
        }
    }
}

/// `lead - sum coef_j basis_j` as a polynomial.
fn relation<S: Scalar>(lead: &Monomial, basis: &[Monomial], coef: &[S], field: &S::Field) -> Polynomial<S> {
    let mut g = Polynomial::term(S::one(field), lead.clone());
    for (m, c) in basis.iter().zip(coef) {
        if !c.is_exact_zero() {
            g.add_term(m.clone(), c.neg_ref());
        }
    }
    g
}

/// Classical FGLM towards a monomial order (lex allowed), with minimal
/// valuation pivoting.
pub fn fglm_classical<S: Scalar>(q: &QuotientData<S>, ord2: &TermOrder) -> Result<GroebnerBasis<S>> {
    let TermOrder::Classical(order) = ord2 else {
        return Err(Error::InvalidArgument("classical FGLM needs a monomial order".into()));
    };
    let n = q.nvars();
    let delta = q.delta;
    let mut inc = Incremental::new(q.field.clone());
    let mut standard: Vec<Monomial> = Vec::new();
    let mut known: HashMap<Monomial, Vec<S>> = HashMap::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut polys = Vec::new();
    let mut candidates: BTreeSet<Monomial> = BTreeSet::from([Monomial::one(n)]);
    while let Some(m) = candidates.iter().min_by(|a, b| order.compare(a, b)).cloned() {
        candidates.remove(&m);
        if divisible_by_any(&m, &lms) || known.contains_key(&m) {
            continue;
        }
        let v = if m.is_one() { nf_one(q)? } else { nf_from_parent(q, &m, &known)? };
        match inc.push(&v)? {
            Reduced::Dependent(coef) => {
                polys.push(relation(&m, &standard, &coef, &q.field));
                lms.push(m);
            }
            Reduced::Independent => {
                if standard.len() == delta {
                    return Err(Error::precision("more independent normal forms than delta"));
                }
                standard.push(m.clone());
                known.insert(m.clone(), v);
                for i in 0..n {
                    candidates.insert(m.mul_var(i));
                }
            }
        }
    }
    if standard.len() != delta {
        return Err(Error::precision(format!("{} independent normal forms, expected {delta}", standard.len())));
    }
    GroebnerBasis::new(polys, ord2.clone(), q.field.clone()).sorted()
}

/// Lex basis `(g_n(x_n), x_i - g_i(x_n))` from the matrix of `x_n` and the
/// normal forms of the variables. The basis of the quotient must start with 1.
pub fn fglm_shape_position<S: Scalar>(mn: &Matrix<S>, nf_vars: &[Vec<S>], field: &S::Field) -> Result<GroebnerBasis<S>> {
    let n = nf_vars.len();
    let delta = mn.len();
    if n == 0 || delta == 0 {
        return Err(Error::InvalidArgument("empty quotient".into()));
    }
    let xn = |k: u32| {
        let mut e = vec![0; n];
        e[n - 1] = k;
        Monomial::new(e)
    };
    let powers: Vec<Monomial> = (0..delta as u32).map(xn).collect();
    let mut inc = Incremental::new(field.clone());
    let mut v = unit(delta, 0, field);
    let mut polys = Vec::with_capacity(n);
    for k in 0..=delta {
        match inc.push(&v)? {
            Reduced::Dependent(coef) => {
                if k < delta {
                    return Err(Error::NotShapePosition { found: k, expected: delta });
                }
                polys.push(relation(&xn(k as u32), &powers, &coef, field));
                break;
            }
            Reduced::Independent if k == delta => {
                return Err(Error::precision("Krylov sequence longer than delta"));
            }
            Reduced::Independent => v = mat_vec(mn, &v),
        }
    }
    for (i, nf) in nf_vars.iter().enumerate().take(n - 1) {
        match inc.push(nf)? {
            Reduced::Dependent(coef) => polys.push(relation(&Monomial::var(n, i), &powers, &coef, field)),
            Reduced::Independent => return Err(Error::precision("variable outside the Krylov span")),
        }
    }
    GroebnerBasis::new(polys, TermOrder::classical(MonomialOrder::Lex), field.clone()).sorted()
}

/// Which pipeline [`change_ordering`] should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Semi-stable shape path for lex targets when it applies, else general.
    Auto,
    /// Multiplication matrices, then the FGLM engine matching the target.
    General,
    /// Read `M_n` off `G` and solve in the Krylov basis; lex targets only.
    SemistableShape,
}

/// The engine that actually produced the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Identity,
    Tropical,
    Classical,
    Shape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub delta: usize,
    /// `D`: one more than the largest staircase degree.
    pub dbound: u32,
    /// `Xi` of the source basis.
    pub xi: Option<i64>,
    /// Largest invariant-factor valuation of the change of staircase basis.
    pub cond: Option<i64>,
    pub input_precision: Option<i64>,
    pub output_precision: Option<i64>,
    pub observed_loss: i64,
    /// Loss the precision estimates allow: `2 cond - S Xi` with `Xi` capped at 0.
    pub loss_bound: Option<i64>,
    pub engine: Engine,
    pub semi_stable: bool,
    /// Report of the multiplication-matrix stage, when it ran.
    pub multmat: Option<PrecisionReport>,
}

#[derive(Debug, Clone)]
pub struct ChangeOutcome<S: Scalar> {
    pub basis: GroebnerBasis<S>,
    pub report: PrecisionReport,
    pub diagnostics: Diagnostics,
}

/// Normal forms in the source staircase of the monomials `targets`, which
/// must be closed under division; `mats[i]` is multiplication by `x_i`.
fn change_matrix<S: Scalar>(targets: &[Monomial], ord: &TermOrder, mats: &[Option<&Matrix<S>>], one: Vec<S>) -> Option<Matrix<S>> {
    let mut sorted = targets.to_vec();
    sorted.sort_by(|a, b| ord.compare_monomials(a, b));
    let mut known: HashMap<Monomial, Vec<S>> = HashMap::new();
    for m in sorted {
        let v = if m.is_one() {
            one.clone()
        } else {
            (0..m.nvars()).find_map(|i| {
                let parent = known.get(&m.div_var(i)?)?;
                Some(mat_vec(mats[i]?, parent))
            })?
        };
        known.insert(m, v);
    }
    Some(targets.iter().map(|m| known.remove(m).expect("computed")).collect())
}

fn aggregate_factor(nd: i64, d: u32) -> i64 {
    let base = nd.saturating_mul(nd);
    let mut term: i64 = 1;
    let mut sum: i64 = 0;
    for _ in 0..=d {
        sum = sum.saturating_add(term);
        term = term.saturating_mul(base);
    }
    sum
}

/// Full pipeline from a reduced basis for one order to the reduced basis for `ord2`.
pub fn change_ordering<S: Scalar>(g: &GroebnerBasis<S>, ord2: &TermOrder, strategy: Strategy) -> Result<ChangeOutcome<S>> {
    g.check_reduced()?;
    let n = g.nvars();
    ord2.check_nvars(n)?;
    let lms = g.leading_monomials()?;
    let st = staircase(&lms, n, &g.order)?;
    let xi = g.min_valuation();
    let input_precision = g.min_abs_precision();
    let semi = n > 0 && is_semi_stable(&lms, n - 1);
    let is_lex = *ord2 == TermOrder::classical(MonomialOrder::Lex);

    let mut diagnostics = Diagnostics {
        delta: st.delta,
        dbound: st.dbound,
        xi,
        cond: Some(0),
        input_precision,
        output_precision: input_precision,
        observed_loss: 0,
        loss_bound: Some(0),
        engine: Engine::Identity,
        semi_stable: semi,
        multmat: None,
    };
    if *ord2 == g.order {
        let report = PrecisionReport { min_valuation: xi, min_abs_precision: input_precision, predicted_bound: input_precision };
        return Ok(ChangeOutcome { basis: g.clone(), report, diagnostics });
    }

    let use_shape = match strategy {
        Strategy::SemistableShape => {
            if !is_lex {
                return Err(Error::InvalidArgument("the shape path only targets lex".into()));
            }
            if !semi {
                return Err(Error::NotSemiStable(n - 1));
            }
            true
        }
        Strategy::Auto => is_lex && semi,
        Strategy::General => false,
    };

    let one = unit(st.delta, st.index_of(&Monomial::one(n)).ok_or_else(|| Error::InvalidArgument("trivial ideal".into()))?, &g.field);
    let mut out = None;
    let mut cond_matrix = None;
    if use_shape {
        let mn = multiplication_matrix_semistable(g, n - 1)?;
        let nf = nf_variables(g)?;
        match fglm_shape_position(&mn, &nf, &g.field) {
            Ok(b) => {
                let b2 = b.staircase()?.basis;
                let mut mats: Vec<Option<&Matrix<S>>> = vec![None; n];
                mats[n - 1] = Some(&mn);
                cond_matrix = change_matrix(&b2, ord2, &mats, one.clone());
                diagnostics.engine = Engine::Shape;
                out = Some(b);
            }
            Err(Error::NotShapePosition { .. }) if strategy == Strategy::Auto => {}
            Err(e) => return Err(e),
        }
    }
    let basis = match out {
        Some(b) => b,
        None => {
            let q = multiplication_matrices(g)?;
            let b = if ord2.is_tropical() {
                diagnostics.engine = Engine::Tropical;
                fglm_tropical(&q, ord2)?
            } else {
                diagnostics.engine = Engine::Classical;
                fglm_classical(&q, ord2)?
            };
            let b2 = b.staircase()?.basis;
            let mats: Vec<Option<&Matrix<S>>> = q.mult.iter().map(Some).collect();
            cond_matrix = change_matrix(&b2, ord2, &mats, one);
            diagnostics.multmat = Some(q.report);
            b
        }
    };

    diagnostics.cond = cond_matrix
        .and_then(|m| smith_valuations(&m).ok())
        .map(|v| v.last().copied().unwrap_or(0));
    let output_precision = basis.min_abs_precision();
    diagnostics.output_precision = output_precision;
    diagnostics.observed_loss = match (input_precision, output_precision) {
        (Some(a), Some(b)) => (a - b).max(0),
        _ => 0,
    };
    let s = aggregate_factor((n * st.delta) as i64, st.dbound);
    diagnostics.loss_bound = diagnostics
        .cond
        .map(|c| (2 * c).saturating_add(s.saturating_mul(-xi.unwrap_or(0).min(0))));
    let report = PrecisionReport {
        min_valuation: xi,
        min_abs_precision: output_precision,
        predicted_bound: input_precision.zip(diagnostics.loss_bound).map(|(a, l)| a.saturating_sub(l)),
    };
    Ok(ChangeOutcome { basis, report, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::{PAdic, PAdicField};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn poly(f: &PAdicField, terms: &[(&[u32], i64, i64)]) -> Polynomial<PAdic> {
        Polynomial::from_terms(2, terms.iter().map(|(e, a, b)| (mono(e), f.from_ints(*a, *b))))
    }

    fn grevlex0() -> TermOrder {
        TermOrder::tropical(vec![0, 0], MonomialOrder::Grevlex)
    }

    fn small(f: &PAdicField) -> GroebnerBasis<PAdic> {
        GroebnerBasis::new(
            vec![poly(f, &[(&[0, 1], 1, 1), (&[1, 0], 2, 1)]), poly(f, &[(&[2, 0], 1, 1), (&[0, 0], 4, 1)])],
            grevlex0(),
            *f,
        )
    }

    #[test]
    fn classical_lex_of_small_basis() {
        let f = PAdicField::new(2, 30).unwrap();
        let q = multiplication_matrices(&small(&f)).unwrap();
        let lex = fglm_classical(&q, &TermOrder::classical(MonomialOrder::Lex)).unwrap();
        let want = [poly(&f, &[(&[0, 2], 1, 1), (&[0, 0], 16, 1)]), poly(&f, &[(&[1, 0], 1, 1), (&[0, 1], 1, 2)])];
        assert_eq!(lex.polys.len(), 2);
        assert!(lex.polys[0].agrees_with(&want[0]), "{:?}", lex.polys);
        assert!(lex.polys[1].agrees_with(&want[1]), "{:?}", lex.polys);
    }

    #[test]
    fn shape_position_of_small_basis() {
        let f = PAdicField::new(2, 30).unwrap();
        let g = small(&f);
        // x_n = y is not semi-stable here, so feed the general matrices
        let q = multiplication_matrices(&g).unwrap();
        let lex = fglm_shape_position(&q.mult[1], &nf_variables(&g).unwrap(), &f).unwrap();
        assert!(lex.polys[0].agrees_with(&poly(&f, &[(&[0, 2], 1, 1), (&[0, 0], 16, 1)])));
        assert!(lex.polys[1].agrees_with(&poly(&f, &[(&[1, 0], 1, 1), (&[0, 1], 1, 2)])));
    }

    #[test]
    fn shape_position_detects_short_krylov() {
        let f = PAdicField::new(3, 10).unwrap();
        // x^2, y^2: M_y NF(1) = y, M_y y = 0 -> dependency at k = 2 < 4
        let g = GroebnerBasis::new(vec![poly(&f, &[(&[2, 0], 1, 1)]), poly(&f, &[(&[0, 2], 1, 1)])], grevlex0(), f);
        let q = multiplication_matrices(&g).unwrap();
        let err = fglm_shape_position(&q.mult[1], &nf_variables(&g).unwrap(), &f).unwrap_err();
        assert_eq!(err, Error::NotShapePosition { found: 2, expected: 4 });
    }

    #[test]
    fn tropical_fglm_weight_change() {
        let f = PAdicField::new(2, 30).unwrap();
        let src = GroebnerBasis::new(
            vec![poly(&f, &[(&[1, 0], 1, 1), (&[0, 1], 1, 2)]), poly(&f, &[(&[0, 2], 1, 1), (&[0, 0], 1, 1)])],
            TermOrder::tropical(vec![0, 1], MonomialOrder::Grevlex),
            f,
        );
        assert!(src.reduced);
        let q = multiplication_matrices(&src).unwrap();
        let t = fglm_tropical_traced(&q, &grevlex0()).unwrap();
        let want = [poly(&f, &[(&[0, 1], 1, 1), (&[1, 0], 2, 1)]), poly(&f, &[(&[2, 0], 1, 1), (&[0, 0], 1, 4)])];
        assert!(t.basis.polys[0].agrees_with(&want[0]), "{:?}", t.basis.polys);
        assert!(t.basis.polys[1].agrees_with(&want[1]), "{:?}", t.basis.polys);
        let entries: Vec<&PAdic> = t.p.iter().flatten().collect();
        assert!(entries.iter().any(|e| e.agrees_with(&f.from_ints(1, 4))));
        assert!(entries.iter().any(|e| e.agrees_with(&f.from_ints(2, 1))));
    }

    #[test]
    fn same_order_is_identity() {
        let f = PAdicField::new(2, 30).unwrap();
        let g = small(&f);
        let out = change_ordering(&g, &grevlex0(), Strategy::Auto).unwrap();
        assert_eq!(out.basis.polys, g.polys);
        assert_eq!(out.diagnostics.observed_loss, 0);
    }

    #[test]
    fn tropical_and_classical_agree_on_grevlex() {
        let f = PAdicField::new(2, 30).unwrap();
        let src = small(&f);
        let q = multiplication_matrices(&src).unwrap();
        let a = fglm_tropical(&q, &TermOrder::tropical(vec![0, 0], MonomialOrder::Lex)).unwrap();
        let b = fglm_classical(&q, &TermOrder::classical(MonomialOrder::Grevlex)).unwrap();
        assert_eq!(a.polys.len(), b.polys.len());
    }
}
