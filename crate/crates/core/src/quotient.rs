//! Quotient ring data: staircase, multiplication matrices, normal forms of
//! the variables, and predicates on leading-monomial ideals.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{
    divisible_by_any, minimal_generators, staircase, Monomial, Polynomial, Staircase, TermOrder,
};
use crate::trop_linalg::{min_abs_precision, min_valuation, tropical_row_echelon, MacaulayMatrix, PrecisionReport};
use crate::valued_field::{Scalar, Valuation};

/// Square matrix stored row-major.
pub type Matrix<S> = Vec<Vec<S>>;

/// A Gröbner basis together with its term order and field.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<S: Scalar> {
    pub polys: Vec<Polynomial<S>>,
    pub order: TermOrder,
    pub field: S::Field,
    /// Whether the basis passed [`GroebnerBasis::check_reduced`] on construction.
    pub reduced: bool,
}

impl<S: Scalar> GroebnerBasis<S> {
    pub fn new(polys: Vec<Polynomial<S>>, order: TermOrder, field: S::Field) -> Self {
        let mut g = GroebnerBasis { polys, order, field, reduced: false };
        g.reduced = g.check_reduced().is_ok();
        g
    }

    pub fn nvars(&self) -> usize {
        self.polys.first().map(|p| p.nvars()).unwrap_or(0)
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        self.polys.iter().map(|p| p.leading_monomial(&self.order)).collect()
    }

    pub fn staircase(&self) -> Result<Staircase> {
        staircase(&self.leading_monomials()?, self.nvars(), &self.order)
    }

    /// Monic, pairwise distinct leading monomials, and no term of any element
    /// divisible by another element's leading monomial.
    pub fn check_reduced(&self) -> Result<()> {
        let one = S::one(&self.field);
        let mut lms = Vec::with_capacity(self.polys.len());
        for (k, p) in self.polys.iter().enumerate() {
            let (lm, lc) = p.leading_term(&self.order).map_err(|e| match e {
                Error::ZeroPolynomial => Error::NotReduced(format!("element {k} is zero")),
                other => other,
            })?;
            if !lc.agrees_with(&one) {
                return Err(Error::NotReduced(format!("element {k} is not monic")));
            }
            lms.push(lm);
        }
        for (k, p) in self.polys.iter().enumerate() {
            for (m, c) in p.terms() {
                if *m == lms[k] || c.is_zero_value() {
                    continue;
                }
                if let Some(j) = lms.iter().position(|l| l.divides(m)) {
                    return Err(Error::NotReduced(format!(
                        "term {m:?} of element {k} is divisible by the leading monomial of element {j}"
                    )));
                }
            }
            if lms[..k].contains(&lms[k]) {
                return Err(Error::NotReduced(format!("leading monomial {:?} repeated", lms[k])));
            }
        }
        Ok(())
    }

    /// Elements sorted by ascending leading monomial.
    pub fn sorted(mut self) -> Result<Self> {
        let lms = self.leading_monomials()?;
        let mut idx: Vec<usize> = (0..self.polys.len()).collect();
        idx.sort_by(|&a, &b| self.order.compare_monomials(&lms[a], &lms[b]));
        let polys = std::mem::take(&mut self.polys);
        let mut slots: Vec<Option<Polynomial<S>>> = polys.into_iter().map(Some).collect();
        self.polys = idx.into_iter().map(|i| slots[i].take().expect("permutation")).collect();
        Ok(self)
    }

    /// The element whose leading monomial is `m`.
    pub fn element_with_lm(&self, m: &Monomial) -> Option<&Polynomial<S>> {
        self.polys.iter().find(|p| p.leading_monomial(&self.order).ok().as_ref() == Some(m))
    }

    /// `Xi`: smallest valuation of a nonzero coefficient.
    pub fn min_valuation(&self) -> Option<i64> {
        self.polys.iter().filter_map(|p| p.min_valuation()).min()
    }

    pub fn min_abs_precision(&self) -> Option<i64> {
        self.polys.iter().filter_map(|p| p.min_abs_precision()).min()
    }

    /// Same basis with coefficients mapped into another backend.
    pub fn convert<T: Scalar>(&self, field: T::Field, f: impl Fn(&S) -> T) -> GroebnerBasis<T> {
        let polys = self.polys.iter().map(|p| p.map_coeffs(&f)).collect();
        GroebnerBasis::new(polys, self.order.clone(), field)
    }

    /// Same elements and support, coefficients agreeing on shared digits.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.polys.len() == other.polys.len()
            && self.polys.iter().all(|p| other.polys.iter().any(|q| p.agrees_with(q)))
    }
}

/// One tropical row-echelon call made while resolving type-3 monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBatch {
    pub degree: u32,
    /// Type-3 monomials of this degree, resolved by this call.
    pub monomials: Vec<Monomial>,
    pub rows: usize,
    pub rank: usize,
}

/// Staircase plus the matrices of multiplication by each variable.
#[derive(Debug, Clone)]
pub struct QuotientData<S: Scalar> {
    /// `B`, ascending.
    pub basis: Vec<Monomial>,
    pub delta: usize,
    pub dbound: u32,
    /// `mult[i][row][col]`: coordinate `row` of `NF(x_i * basis[col])`.
    pub mult: Vec<Matrix<S>>,
    pub order: TermOrder,
    pub field: S::Field,
    /// `min_valuation` and `predicted_bound` refer to the input basis.
    pub report: PrecisionReport,
    /// `(n delta)^D * Xi`, the guaranteed lower bound on output valuations.
    pub valuation_bound: Option<i64>,
    pub min_output_valuation: Option<i64>,
    pub batches: Vec<EchelonBatch>,
}

impl<S: Scalar> QuotientData<S> {
    pub fn nvars(&self) -> usize {
        self.mult.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    /// `M * v`.
    pub fn apply(&self, var: usize, v: &[S]) -> Vec<S> {
        mat_vec(&self.mult[var], v)
    }

    /// Coordinates of `NF(1)`.
    pub fn unit_vector(&self) -> Result<Vec<S>> {
        let one = Monomial::one(self.nvars());
        let k = self
            .index_of(&one)
            .ok_or_else(|| Error::InvalidArgument("1 lies in the leading ideal".into()))?;
        Ok(unit(self.delta, k, &self.field))
    }
}

pub fn mat_vec<S: Scalar>(m: &[Vec<S>], v: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(S::zero(), |acc, (a, b)| {
                if a.is_exact_zero() || b.is_exact_zero() {
                    acc
                } else {
                    acc.add_ref(&a.mul_ref(b))
                }
            })
        })
        .collect()
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Matrix<S> {
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(S::zero(), |acc, (x, brow)| {
                        if x.is_exact_zero() || brow[j].is_exact_zero() {
                            acc
                        } else {
                            acc.add_ref(&x.mul_ref(&brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn unit<S: Scalar>(n: usize, k: usize, field: &S::Field) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[k] = S::one(field);
    v
}

/// `sum_{k=0}^{D} (n delta)^(2k)`, saturated to `i64`.
fn aggregate_factor(nd: u64, d: u32) -> i64 {
    let base = BigInt::from(nd) * BigInt::from(nd);
    let mut term = BigInt::one();
    let mut sum = BigInt::from(0);
    for _ in 0..=d {
        sum += &term;
        term *= &base;
        if sum > BigInt::from(i64::MAX) {
            return i64::MAX;
        }
    }
    sum.to_i64().unwrap_or(i64::MAX)
}

fn pow_saturating(base: u64, exp: u32) -> i64 {
    let r = BigInt::from(base).pow(exp);
    r.to_i64().unwrap_or(i64::MAX)
}

/// Expected shape of a reduced basis as input of the quotient algorithms.
fn prepare<S: Scalar>(g: &GroebnerBasis<S>) -> Result<(Vec<Monomial>, Staircase)> {
    g.check_reduced()?;
    if !g.order.is_degree_compatible() {
        return Err(Error::InvalidArgument("term order must be degree-compatible".into()));
    }
    let lms = g.leading_monomials()?;
    let st = staircase(&lms, g.nvars(), &g.order)?;
    Ok((lms, st))
}

/// Multiplication matrices of `A/I` in the staircase basis.
///
/// Border monomials in the staircase give unit columns and those in `LT(G)`
/// are read off `G`. The remaining ones are resolved degree by degree: each is
/// written as `x_i g` for a row `g` of the running matrix (or of `G`), a
/// complete set of reducers is stacked, and the whole matrix is put in
/// (stable) tropical row echelon form.
pub fn multiplication_matrices<S: Scalar>(g: &GroebnerBasis<S>) -> Result<QuotientData<S>> {
    let n = g.nvars();
    let (lms, st) = prepare(g)?;
    let delta = st.delta;
    let bindex: HashMap<Monomial, usize> =
        st.basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let gindex: HashMap<Monomial, usize> = lms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let one = S::one(&g.field);
    let mut mult: Vec<Matrix<S>> = vec![vec![vec![S::zero(); delta]; delta]; n];
    let mut type3: BTreeSet<(u32, Monomial)> = BTreeSet::new();

    for (col, b) in st.basis.iter().enumerate() {
        for (i, m) in mult.iter_mut().enumerate() {
            let xb = b.mul_var(i);
            if let Some(&r) = bindex.get(&xb) {
                m[r][col] = one.clone();
            } else if let Some(&k) = gindex.get(&xb) {
                for (mono, c) in g.polys[k].terms() {
                    if *mono != xb {
                        m[bindex[mono]][col] = c.neg_ref();
                    }
                }
            } else {
                type3.insert((xb.degree(), xb));
            }
        }
    }

    // columns: type 3, then LT(G), then B
    let mut cols: Vec<Monomial> = type3.iter().map(|(_, m)| m.clone()).collect();
    cols.extend(lms.iter().cloned());
    cols.extend(st.basis.iter().cloned());
    let cindex: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let special: BTreeSet<Monomial> = cols[..cols.len() - delta].iter().cloned().collect();

    // rows of the running matrix, keyed by leading monomial
    let mut rows: Vec<(Monomial, Polynomial<S>)> = Vec::new();
    let mut batches = Vec::new();
    let degrees: BTreeSet<u32> = type3.iter().map(|(d, _)| *d).collect();
    for d in degrees {
        let targets: Vec<Monomial> = type3.iter().filter(|(e, _)| *e == d).map(|(_, m)| m.clone()).collect();
        let mut stacked: Vec<Polynomial<S>> = Vec::new();
        let mut covered: BTreeSet<Monomial> = rows.iter().map(|(m, _)| m.clone()).collect();
        for t in &targets {
            let row = build_multiple(t, &rows, g, &gindex)?;
            stacked.push(row);
            covered.insert(t.clone());
        }
        // complete set of reducers
        loop {
            let mut missing: Vec<Monomial> = stacked
                .iter()
                .chain(rows.iter().map(|(_, p)| p))
                .flat_map(|p| p.terms().filter(|(_, c)| !c.is_zero_value()).map(|(m, _)| m.clone()))
                .filter(|m| special.contains(m) && !covered.contains(m))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if missing.is_empty() {
                break;
            }
            missing.sort_by(|a, b| g.order.compare_monomials(b, a));
            for m in missing {
                let row = match gindex.get(&m) {
                    Some(&k) => g.polys[k].clone(),
                    None => build_multiple(&m, &rows, g, &gindex)?,
                };
                stacked.push(row);
                covered.insert(m);
            }
        }
        let all: Vec<Polynomial<S>> =
            rows.iter().map(|(_, p)| p.clone()).chain(stacked.into_iter()).collect();
        let mac = MacaulayMatrix::from_polynomials(cols.clone(), &all)?;
        let ech = tropical_row_echelon(&mac, &g.order, true)?;
        batches.push(EchelonBatch { degree: d, monomials: targets.clone(), rows: all.len(), rank: ech.rank });
        rows = (0..ech.rank)
            .map(|r| (ech.matrix.cols[r].clone(), ech.matrix.row_polynomial(r)))
            .collect();
        let by_lm: HashMap<&Monomial, &Polynomial<S>> = rows.iter().map(|(m, p)| (m, p)).collect();
        for t in &targets {
            let row = by_lm.get(t).ok_or_else(|| {
                Error::precision(format!("no row with leading monomial {t:?} after echelon"))
            })?;
            let lc = row.coeff(t).expect("pivot entry");
            for (i, m) in mult.iter_mut().enumerate() {
                let Some(src) = t.div_var(i) else { continue };
                let Some(&col) = bindex.get(&src) else { continue };
                for (mono, c) in row.terms() {
                    if mono == t || c.is_exact_zero() {
                        continue;
                    }
                    let Some(&r) = bindex.get(mono) else {
                        if c.is_zero_value() {
                            continue;
                        }
                        return Err(Error::precision(format!(
                            "row for {t:?} not reduced on {mono:?} ({})",
                            cindex[mono]
                        )));
                    };
                    m[r][col] = c.div_ref(lc)?.neg_ref();
                }
            }
        }
    }

    let xi = g.min_valuation();
    let input_prec = g.min_abs_precision();
    let nd = (n * delta) as u64;
    let entries = mult.iter().flatten().flatten();
    let report = PrecisionReport {
        min_valuation: xi,
        min_abs_precision: min_abs_precision(entries.clone()),
        predicted_bound: input_prec.zip(xi).map(|(np, x)| {
            np.saturating_add(aggregate_factor(nd, st.dbound).saturating_mul(x))
        }),
    };
    Ok(QuotientData {
        basis: st.basis,
        delta,
        dbound: st.dbound,
        valuation_bound: xi.map(|x| pow_saturating(nd, st.dbound).saturating_mul(x)),
        min_output_valuation: min_valuation(entries),
        mult,
        order: g.order.clone(),
        field: g.field.clone(),
        report,
        batches,
    })
}

/// `x_i * h` with `LM(x_i h) = t`, preferring running-matrix rows, then the
/// smallest `i`.
fn build_multiple<S: Scalar>(
    t: &Monomial,
    rows: &[(Monomial, Polynomial<S>)],
    g: &GroebnerBasis<S>,
    gindex: &HashMap<Monomial, usize>,
) -> Result<Polynomial<S>> {
    let n = t.nvars();
    let mut best: Option<(u8, usize, &Polynomial<S>)> = None;
    for i in 0..n {
        let Some(q) = t.div_var(i) else { continue };
        let cand = if let Some((_, p)) = rows.iter().find(|(m, _)| *m == q) {
            Some((0u8, i, p))
        } else {
            gindex.get(&q).map(|&k| (1u8, i, &g.polys[k]))
        };
        if let Some(c) = cand {
            if best.map_or(true, |b| (c.0, c.1) < (b.0, b.1)) {
                best = Some(c);
            }
        }
    }
    let (_, i, p) = best.ok_or_else(|| {
        Error::NotZeroDimensional(format!("{t:?} is not a variable multiple of a known leading monomial"))
    })?;
    Ok(p.mul_monomial(&Monomial::var(n, i)))
}

/// Matrix of multiplication by `x_var` read directly from `G`; valid when the
/// leading ideal is semi-stable for `x_var`. Performs negations only.
pub fn multiplication_matrix_semistable<S: Scalar>(g: &GroebnerBasis<S>, var: usize) -> Result<Matrix<S>> {
    let (lms, st) = prepare(g)?;
    if var >= g.nvars() || !is_semi_stable(&lms, var) {
        return Err(Error::NotSemiStable(var));
    }
    let delta = st.delta;
    let bindex: HashMap<&Monomial, usize> = st.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut m = vec![vec![S::zero(); delta]; delta];
    for (col, b) in st.basis.iter().enumerate() {
        let xb = b.mul_var(var);
        if let Some(&r) = bindex.get(&xb) {
            m[r][col] = S::one(&g.field);
        } else if let Some(k) = lms.iter().position(|l| *l == xb) {
            for (mono, c) in g.polys[k].terms() {
                if *mono != xb {
                    m[bindex[mono]][col] = c.neg_ref();
                }
            }
        } else {
            return Err(Error::NotSemiStable(var));
        }
    }
    Ok(m)
}

/// First monomial `(x_k / x_var) m` escaping the ideal, for a generator `m`
/// divisible by `x_var`.
pub fn semi_stability_witness(lms: &[Monomial], var: usize) -> Option<Monomial> {
    let gens = minimal_generators(lms);
    for m in &gens {
        let Some(q) = m.div_var(var) else { continue };
        for k in (0..m.nvars()).filter(|&k| k != var) {
            let e = q.mul_var(k);
            if !divisible_by_any(&e, &gens) {
                return Some(e);
            }
        }
    }
    None
}

/// Whether `(x_k / x_var) m` stays in the ideal for every `m` in it divisible
/// by `x_var` and every other variable `x_k`. Checking generators suffices.
pub fn is_semi_stable(lms: &[Monomial], var: usize) -> bool {
    semi_stability_witness(lms, var).is_none()
}

/// Result of the Borel-fixedness exchange test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelCheck {
    pub fixed: bool,
    pub witness: Option<Monomial>,
    /// Set when `p` is smaller than the largest generator degree, where the
    /// exchange criterion may not describe the tropical Borel action.
    pub small_characteristic: bool,
}

/// Exchange criterion: `(x_i / x_j) m` in the ideal for all `m` in it, `x_j | m`, `i < j`.
pub fn is_borel_fixed(lms: &[Monomial], p: Option<u64>) -> BorelCheck {
    let gens = minimal_generators(lms);
    let maxdeg = gens.iter().map(|m| m.degree()).max().unwrap_or(0) as u64;
    let small_characteristic = p.is_some_and(|p| p < maxdeg);
    for m in &gens {
        for j in 0..m.nvars() {
            let Some(q) = m.div_var(j) else { continue };
            for i in 0..j {
                let e = q.mul_var(i);
                if !divisible_by_any(&e, &gens) {
                    return BorelCheck { fixed: false, witness: Some(e), small_characteristic };
                }
            }
        }
    }
    BorelCheck { fixed: true, witness: None, small_characteristic }
}

/// `NF(x_i)` in the staircase basis for every variable; sign flips only.
pub fn nf_variables<S: Scalar>(g: &GroebnerBasis<S>) -> Result<Vec<Vec<S>>> {
    let (lms, st) = prepare(g)?;
    let n = g.nvars();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = Monomial::var(n, i);
        let mut v = vec![S::zero(); st.delta];
        if let Some(k) = st.index_of(&x) {
            v[k] = S::one(&g.field);
        } else if let Some(k) = lms.iter().position(|l| *l == x) {
            for (mono, c) in g.polys[k].terms() {
                if *mono != x {
                    v[st.index_of(mono).expect("reduced tail")] = c.neg_ref();
                }
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Determinant by elimination with minimal-valuation pivots.
pub fn determinant<S: Scalar>(m: &[Vec<S>], field: &S::Field) -> Result<S> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = S::one(field);
    for k in 0..n {
        let piv = (k..n)
            .filter_map(|r| match a[r][k].valuation() {
                Ok(Valuation::Finite(v)) => Some((v, r)),
                _ => None,
            })
            .min();
        let Some((_, r)) = piv else {
            if (k..n).all(|r| a[r][k].is_exact_zero()) {
                return Ok(S::zero());
            }
            return Err(Error::precision("determinant is zero at working precision"));
        };
        if r != k {
            a.swap(r, k);
            det = det.neg_ref();
        }
        let p = a[k][k].clone();
        det = det.mul_ref(&p);
        for r in k + 1..n {
            if a[r][k].is_exact_zero() {
                continue;
            }
            let f = a[r][k].div_ref(&p)?;
            for c in k..n {
                let s = f.mul_ref(&a[k][c]);
                a[r][c] = a[r][c].sub_ref(&s);
            }
        }
    }
    Ok(det)
}

/// Image of a system under `f -> f(eta^T x)`.
#[derive(Debug, Clone)]
pub struct ChangeOfVariables<S: Scalar> {
    pub polys: Vec<Polynomial<S>>,
    /// Whether `det(eta)` is a unit, i.e. `eta` lies in `GL_n(R)`.
    pub unimodular: bool,
}

pub fn apply_change_of_variables<S: Scalar>(
    f: &[Polynomial<S>],
    eta: &[Vec<S>],
    field: &S::Field,
) -> Result<ChangeOfVariables<S>> {
    let n = eta.len();
    if eta.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("eta must be square".into()));
    }
    let det = determinant(eta, field)?;
    let unimodular = matches!(det.valuation(), Ok(Valuation::Finite(0)));
    let one = S::one(field);
    // x_j -> sum_i eta[i][j] x_i
    let images: Vec<Polynomial<S>> = (0..n)
        .map(|j| Polynomial::from_terms(n, (0..n).map(|i| (Monomial::var(n, i), eta[i][j].clone()))))
        .collect();
    let mut powers: HashMap<(usize, u32), Polynomial<S>> = HashMap::new();
    let mut out = Vec::with_capacity(f.len());
    for p in f {
        if p.nvars() != n {
            return Err(Error::DimensionMismatch("polynomial arity differs from eta".into()));
        }
        let mut acc = Polynomial::zero(n);
        for (m, c) in p.terms() {
            let mut t = Polynomial::term(c.clone(), Monomial::one(n));
            for j in 0..n {
                let e = m.exponent(j);
                if e > 0 {
                    let pw = powers.entry((j, e)).or_insert_with(|| images[j].pow(e, &one));
                    t = t.mul(pw);
                }
            }
            acc = acc.add(&t);
        }
        out.push(acc);
    }
    Ok(ChangeOfVariables { polys: out, unimodular })
}

/// Random element of `GL_n(R)`: integer entries resampled until the
/// determinant is a unit.
pub fn random_unimodular<S: Scalar>(n: usize, field: &S::Field, prec: u32, seed: u64) -> Result<Matrix<S>> {
    const ATTEMPTS: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let m: Matrix<S> = (0..n)
            .map(|_| (0..n).map(|_| S::sample_integer(field, prec, &mut rng)).collect())
            .collect();
        if let Ok(det) = determinant(&m, field) {
            if matches!(det.valuation(), Ok(Valuation::Finite(0))) {
                return Ok(m);
            }
        }
    }
    Err(Error::SamplingFailed(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;
    use crate::valued_field::{PAdic, PAdicField};

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn small_basis(f: &PAdicField) -> GroebnerBasis<PAdic> {
        let g1 = Polynomial::from_terms(2, [(mono(&[0, 1]), f.from_ints(1, 1)), (mono(&[1, 0]), f.from_ints(2, 1))]);
        let g2 = Polynomial::from_terms(2, [(mono(&[2, 0]), f.from_ints(1, 1)), (mono(&[0, 0]), f.from_ints(4, 1))]);
        GroebnerBasis::new(vec![g1, g2], TermOrder::tropical(vec![0, 0], MonomialOrder::Grevlex), *f)
    }

    fn assert_matrix(m: &Matrix<PAdic>, f: &PAdicField, want: &[[i64; 2]; 2]) {
        for r in 0..2 {
            for c in 0..2 {
                assert!(m[r][c].agrees_with(&f.from_ints(want[r][c], 1)), "[{r}][{c}] = {}", m[r][c]);
            }
        }
    }

    #[test]
    fn multiplication_matrices_of_small_basis() {
        let f = PAdicField::new(2, 20).unwrap();
        let g = small_basis(&f);
        assert!(g.reduced);
        let q = multiplication_matrices(&g).unwrap();
        assert_eq!(q.basis, vec![mono(&[0, 0]), mono(&[1, 0])]);
        assert_matrix(&q.mult[0], &f, &[[0, -4], [1, 0]]);
        assert_matrix(&q.mult[1], &f, &[[0, 8], [-2, 0]]);
        assert_eq!(q.batches.len(), 1);
        assert_eq!(q.batches[0].monomials, vec![mono(&[1, 1])]);
    }

    #[test]
    fn variables_as_basis() {
        let f = PAdicField::new(3, 10).unwrap();
        let polys = (0..3).map(|i| Polynomial::term(f.from_ints(1, 1), Monomial::var(3, i))).collect();
        let g = GroebnerBasis::new(polys, TermOrder::tropical(vec![0; 3], MonomialOrder::Grevlex), f);
        let q = multiplication_matrices(&g).unwrap();
        assert_eq!(q.delta, 1);
        assert!(q.mult.iter().all(|m| m[0][0].is_exact_zero()));
        assert!(nf_variables(&g).unwrap().iter().all(|v| v[0].is_exact_zero()));
    }

    #[test]
    fn nf_of_variables() {
        let f = PAdicField::new(2, 20).unwrap();
        let v = nf_variables(&small_basis(&f)).unwrap();
        assert!(v[0][0].is_exact_zero() && v[0][1].agrees_with(&f.from_ints(1, 1)));
        assert!(v[1][0].is_exact_zero() && v[1][1].agrees_with(&f.from_ints(-2, 1)));
    }

    #[test]
    fn semi_stability() {
        let yx2 = [mono(&[0, 1]), mono(&[2, 0])];
        assert!(!is_semi_stable(&yx2, 1));
        assert!(is_semi_stable(&yx2, 0));
        let all2 = [mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])];
        assert!(is_semi_stable(&all2, 1));
        assert!(is_semi_stable(&[mono(&[3, 0]), mono(&[0, 1])], 0));
        let x2y2 = [mono(&[2, 0]), mono(&[0, 2])];
        assert_eq!(semi_stability_witness(&x2y2, 1), Some(mono(&[1, 1])));
    }

    #[test]
    fn borel_fixedness() {
        assert!(is_borel_fixed(&[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])], Some(2)).fixed);
        let c = is_borel_fixed(&[mono(&[2, 0]), mono(&[0, 2])], Some(2));
        assert!(!c.fixed);
        assert_eq!(c.witness, Some(mono(&[1, 1])));
        let c = is_borel_fixed(&[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 3])], Some(2));
        assert!(c.fixed && c.small_characteristic);
    }

    #[test]
    fn semistable_path_rejects_small_basis_for_y() {
        let f = PAdicField::new(2, 20).unwrap();
        assert_eq!(multiplication_matrix_semistable(&small_basis(&f), 1).unwrap_err(), Error::NotSemiStable(1));
    }

    #[test]
    fn shear_fixes_x_squared() {
        let f = PAdicField::new(2, 20).unwrap();
        // x -> x, y -> x + y, i.e. eta^T = [[1,0],[1,1]]
        let eta = vec![vec![f.from_ints(1, 1), f.from_ints(1, 1)], vec![PAdic::exact_zero(), f.from_ints(1, 1)]];
        let x2 = Polynomial::term(f.from_ints(1, 1), mono(&[2, 0]));
        let out = apply_change_of_variables(&[x2.clone()], &eta, &f).unwrap();
        assert!(out.unimodular);
        assert!(out.polys[0].agrees_with(&x2));
    }

    #[test]
    fn unimodular_sampling_is_reproducible() {
        let f = PAdicField::new(2, 10).unwrap();
        let a: Matrix<PAdic> = random_unimodular(3, &f, 10, 7).unwrap();
        let b: Matrix<PAdic> = random_unimodular(3, &f, 10, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(determinant(&a, &f).unwrap().valuation().unwrap(), Valuation::Finite(0));
    }
}
