//! Tropical row echelon forms, the column reduction used by tropical FGLM,
//! and Smith-form valuations.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::polyring::{greatest_term, Monomial, Polynomial, TermOrder};
use crate::valued_field::{Scalar, Valuation};

/// Dense matrix whose columns (and optionally rows) are labelled by monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct MacaulayMatrix<S> {
    pub rows: Vec<Vec<S>>,
    pub cols: Vec<Monomial>,
    pub row_labels: Option<Vec<Monomial>>,
}

impl<S: Scalar> MacaulayMatrix<S> {
    pub fn new(cols: Vec<Monomial>, rows: Vec<Vec<S>>) -> Result<Self> {
        check_distinct(&cols, "column")?;
        if let Some(r) = rows.iter().find(|r| r.len() != cols.len()) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} for {} columns",
                r.len(),
                cols.len()
            )));
        }
        Ok(MacaulayMatrix { rows, cols, row_labels: None })
    }

    pub fn with_row_labels(mut self, labels: Vec<Monomial>) -> Result<Self> {
        check_distinct(&labels, "row")?;
        if labels.len() != self.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} row labels for {} rows",
                labels.len(),
                self.rows.len()
            )));
        }
        self.row_labels = Some(labels);
        Ok(self)
    }

    /// One row per polynomial; every monomial must appear among `cols`.
    pub fn from_polynomials(cols: Vec<Monomial>, polys: &[Polynomial<S>]) -> Result<Self> {
        let index: std::collections::HashMap<&Monomial, usize> =
            cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::with_capacity(polys.len());
        for f in polys {
            let mut row = vec![S::zero(); cols.len()];
            for (m, c) in f.terms() {
                let j = *index.get(m).ok_or_else(|| {
                    Error::DimensionMismatch(format!("monomial {m:?} has no column"))
                })?;
                row[j] = c.clone();
            }
            rows.push(row);
        }
        MacaulayMatrix::new(cols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_polynomial(&self, i: usize) -> Polynomial<S> {
        let n = self.cols.first().map(|m| m.nvars()).unwrap_or(0);
        Polynomial::from_terms(
            n,
            self.cols.iter().zip(&self.rows[i]).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn column_index(&self, m: &Monomial) -> Option<usize> {
        self.cols.iter().position(|c| c == m)
    }

    /// Smallest valuation of a nonzero entry (the `Xi` of the data).
    pub fn min_valuation(&self) -> Option<i64> {
        min_valuation(self.rows.iter().flatten())
    }

    pub fn min_abs_precision(&self) -> Option<i64> {
        min_abs_precision(self.rows.iter().flatten())
    }
}

fn check_distinct(labels: &[Monomial], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for m in labels {
        if !seen.insert(m) {
            return Err(Error::InvalidArgument(format!("duplicate {what} label {m:?}")));
        }
    }
    Ok(())
}

pub fn min_valuation<'a, S: Scalar + 'a>(it: impl IntoIterator<Item = &'a S>) -> Option<i64> {
    it.into_iter().filter_map(|c| c.valuation().ok().and_then(Valuation::finite)).min()
}

pub fn min_abs_precision<'a, S: Scalar + 'a>(it: impl IntoIterator<Item = &'a S>) -> Option<i64> {
    it.into_iter().filter_map(|c| c.abs_precision()).min()
}

/// Precision bookkeeping for one reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PrecisionReport {
    /// `Xi`: smallest valuation of a nonzero input coefficient.
    pub min_valuation: Option<i64>,
    /// Smallest absolute precision found in the output (`None` when exact).
    pub min_abs_precision: Option<i64>,
    /// Guaranteed lower bound for `min_abs_precision`, when one applies.
    pub predicted_bound: Option<i64>,
}

/// Output of [`tropical_row_echelon`].
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    /// Rows `0..rank` have their pivot on the diagonal; remaining rows are zero.
    pub matrix: MacaulayMatrix<S>,
    pub rank: usize,
    pub report: PrecisionReport,
}

impl<S: Scalar> Echelon<S> {
    /// Leading monomial of each nonzero row.
    pub fn pivot_monomials(&self) -> &[Monomial] {
        &self.matrix.cols[..self.rank]
    }
}

fn row_leading_column<S: Scalar>(
    row: &[S],
    cols: &[Monomial],
    from: usize,
    ord: &TermOrder,
) -> Result<Option<usize>> {
    greatest_term(ord, (from..row.len()).map(|j| (j, &cols[j], &row[j])))
}

/// `target -= f * source`, skipping exact zeros of `source`.
fn axpy<S: Scalar>(target: &mut [S], f: &S, source: &[S]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_exact_zero() {
            *t = t.sub_ref(&f.mul_ref(s));
        }
    }
}

/// Tropical row echelon form (full two-sided elimination).
///
/// Row `i` is pivoted on its greatest term, whose column is swapped into
/// position `i`; every other row is then cleared in that column. With
/// `stable`, row `i` is first reduced by the leading terms of the rows below
/// it, which keeps the precision loss polynomial. Zero rows sink to the bottom.
pub fn tropical_row_echelon<S: Scalar>(
    m: &MacaulayMatrix<S>,
    ord: &TermOrder,
    stable: bool,
) -> Result<Echelon<S>> {
    let mut rows = m.rows.clone();
    let mut cols = m.cols.clone();
    let mut labels = m.row_labels.clone();
    let ncols = cols.len();
    let mut end = rows.len();
    let mut i = 0;
    while i < end && i < ncols {
        let Some(j) = row_leading_column(&rows[i], &cols, i, ord)? else {
            end -= 1;
            rows.swap(i, end);
            if let Some(l) = labels.as_mut() {
                l.swap(i, end);
            }
            continue;
        };
        swap_columns(&mut rows, &mut cols, i, j);
        if stable {
            reduce_by_later_rows(&mut rows, &cols, i, end, ord);
            if let Some(j) = row_leading_column(&rows[i], &cols, i, ord)? {
                swap_columns(&mut rows, &mut cols, i, j);
            }
        }
        let pivot_row = rows[i].clone();
        let piv = pivot_row[i].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == i || row[i].is_exact_zero() {
                continue;
            }
            let f = row[i].div_ref(&piv)?;
            axpy(row, &f, &pivot_row);
            row[i] = S::zero();
        }
        i += 1;
    }
    let rank = i;
    let report = PrecisionReport {
        min_valuation: m.min_valuation(),
        min_abs_precision: min_abs_precision(rows.iter().flatten()),
        predicted_bound: m.min_abs_precision().zip(m.min_valuation()).and_then(|(n, xi)| {
            (xi <= 0).then(|| n.saturating_add((rank as i64).saturating_mul(rank as i64).saturating_mul(xi)))
        }),
    };
    Ok(Echelon { matrix: MacaulayMatrix { rows, cols, row_labels: labels }, rank, report })
}

fn swap_columns<S>(rows: &mut [Vec<S>], cols: &mut [Monomial], a: usize, b: usize) {
    if a == b {
        return;
    }
    cols.swap(a, b);
    for r in rows.iter_mut() {
        r.swap(a, b);
    }
}

/// Clears, in row `i`, every entry sitting under the leading term of a row
/// in `i+1..end`. Loops since each reduction may create new fill-in.
fn reduce_by_later_rows<S: Scalar>(
    rows: &mut [Vec<S>],
    cols: &[Monomial],
    i: usize,
    end: usize,
    ord: &TermOrder,
) {
    let mut reducers: Vec<(usize, usize)> = Vec::new();
    let mut taken = HashSet::new();
    for k in i + 1..end {
        // rows whose leading term cannot be ranked are left to the main loop
        if let Ok(Some(c)) = row_leading_column(&rows[k], cols, i, ord) {
            if c != i && taken.insert(c) {
                reducers.push((k, c));
            }
        }
    }
    if reducers.is_empty() {
        return;
    }
    // largest leading terms first: their fill-in lands on smaller terms
    reducers.sort_by(|&(ka, ca), &(kb, cb)| {
        let va = rows[ka][ca].valuation().ok().and_then(Valuation::finite).unwrap_or(0);
        let vb = rows[kb][cb].valuation().ok().and_then(Valuation::finite).unwrap_or(0);
        ord.compare_keys(vb, &cols[cb], va, &cols[ca])
    });
    let cap = reducers.len() + 1;
    for _ in 0..cap {
        let mut changed = false;
        for &(k, c) in &reducers {
            if rows[i][c].is_zero_value() {
                continue;
            }
            let Ok(f) = rows[i][c].div_ref(&rows[k][c]) else { continue };
            let (head, tail) = rows.split_at_mut(k);
            axpy(&mut head[i], &f, &tail[0]);
            head[i][c] = S::zero();
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

/// Output of [`column_reduce_fglm`].
#[derive(Debug, Clone)]
pub struct ColumnReduction<S> {
    pub matrix: MacaulayMatrix<S>,
    /// Column operations applied so far: `M = M0 * P`.
    pub p: Vec<Vec<S>>,
    /// `(row, column)` of each pivot, in the order they were chosen.
    pub pivots: Vec<(usize, usize)>,
}

impl<S: Scalar> ColumnReduction<S> {
    pub fn is_zero_column(&self, j: usize) -> bool {
        self.matrix.rows.iter().all(|r| r[j].is_zero_value())
    }
}

/// Column reduction compatible with `ord2`.
///
/// Rows must be listed in ascending order of their labels (so the smallest
/// row wins ties). The pivot is the entry `c` on column `x^a` for which the
/// term `c^-1 x^a` is smallest under `ord2`; it clears the rest of its row
/// and the process recurses on the remaining rows and columns. Every column
/// operation is mirrored on `p`. Inexact zeros are never pivots.
pub fn column_reduce_fglm<S: Scalar>(
    m: &MacaulayMatrix<S>,
    ord2: &TermOrder,
    p: &[Vec<S>],
) -> Result<ColumnReduction<S>> {
    let ncols = m.ncols();
    if p.len() != ncols || p.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch(format!("P must be {ncols}x{ncols}")));
    }
    let mut rows = m.rows.clone();
    let mut p = p.to_vec();
    let mut row_active = vec![true; rows.len()];
    let mut col_active = vec![true; ncols];
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<(usize, usize, i64)> = None;
        for (r, row) in rows.iter().enumerate() {
            if !row_active[r] {
                continue;
            }
            for (c, x) in row.iter().enumerate() {
                if !col_active[c] {
                    continue;
                }
                let Ok(Valuation::Finite(v)) = x.valuation() else { continue };
                let smaller = match best {
                    None => true,
                    Some((_, bc, bv)) => {
                        ord2.compare_keys(-v, &m.cols[c], -bv, &m.cols[bc]) == Ordering::Less
                    }
                };
                if smaller {
                    best = Some((r, c, v));
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        let piv = rows[r][c].clone();
        for k in 0..ncols {
            if k == c || !col_active[k] || rows[r][k].is_exact_zero() {
                continue;
            }
            let f = rows[r][k].div_ref(&piv)?;
            for row in rows.iter_mut().chain(p.iter_mut()) {
                if !row[c].is_exact_zero() {
                    row[k] = row[k].sub_ref(&f.mul_ref(&row[c]));
                }
            }
            rows[r][k] = S::zero();
        }
        row_active[r] = false;
        col_active[c] = false;
        pivots.push((r, c));
    }
    let matrix = MacaulayMatrix { rows, cols: m.cols.clone(), row_labels: m.row_labels.clone() };
    Ok(ColumnReduction { matrix, p, pivots })
}

/// Valuations of the invariant factors of `m` over the valuation ring, ascending.
///
/// Full pivoting on an entry of minimal valuation; only the nonzero invariant
/// factors are returned.
pub fn smith_valuations<S: Scalar>(m: &[Vec<S>]) -> Result<Vec<i64>> {
    let mut a: Vec<Vec<S>> = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut row_active = vec![true; nrows];
    let mut col_active = vec![true; ncols];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize, i64)> = None;
        let mut floor: Option<i64> = None;
        for r in (0..nrows).filter(|&r| row_active[r]) {
            for c in (0..ncols).filter(|&c| col_active[c]) {
                match a[r][c].valuation() {
                    Ok(Valuation::Finite(v)) => {
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((r, c, v));
                        }
                    }
                    Ok(Valuation::Infinite) => {}
                    Err(_) => {
                        let n = a[r][c].abs_precision().unwrap_or(i64::MAX);
                        floor = Some(floor.map_or(n, |f: i64| f.min(n)));
                    }
                }
            }
        }
        match (best, floor) {
            (None, None) => break,
            (None, Some(_)) => {
                return Err(Error::precision("invariant factor indistinguishable from zero"))
            }
            (Some((_, _, v)), Some(f)) if f <= v => {
                return Err(Error::precision("invariant factor valuation not determined"))
            }
            _ => {}
        }
        let (r, c, v) = best.expect("checked above");
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for rr in 0..nrows {
            if rr == r || !row_active[rr] || a[rr][c].is_exact_zero() {
                continue;
            }
            let f = a[rr][c].div_ref(&piv)?;
            axpy(&mut a[rr], &f, &pivot_row);
            a[rr][c] = S::zero();
        }
        // the pivot divides its row, so column operations only zero it out
        row_active[r] = false;
        col_active[c] = false;
        out.push(v);
    }
    out.sort_unstable();
    Ok(out)
}
