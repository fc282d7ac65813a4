//! JSON documents exchanged by the subcommands.
//!
//! Scalars are strings in the text grammar of the chosen backend, e.g.
//! `"3*p^-1+O(p^20)"` for `Q_p`, `"[1,0,2]*t^0+O(t^3)"` for `Q((t))`, or a
//! plain rational `"-57/35"` (read at the field's default precision).

use serde::{Deserialize, Serialize};
use tropfglm_core::{
    Error, GroebnerBasis, MacaulayMatrix, Monomial, MonomialOrder, PAdicField, Polynomial,
    RationalField, Result, Scalar, TAdicField, TermOrder,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKindSpec {
    PAdic,
    TAdic,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKindSpec,
    /// Prime of `Q_p`, or the prime defining valuations on `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// Default absolute precision for `Q_p` and `Q((t))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

impl FieldSpec {
    pub fn padic(&self) -> Result<PAdicField> {
        let p = self.p.ok_or_else(|| Error::Parse("p-adic field needs \"p\"".into()))?;
        PAdicField::new(p, self.precision.unwrap_or(20))
    }

    pub fn tadic(&self) -> Result<TAdicField> {
        TAdicField::new(self.precision.unwrap_or(20))
    }

    pub fn rational(&self) -> Result<RationalField> {
        let p = self.p.ok_or_else(|| Error::Parse("rational field needs \"p\" for valuations".into()))?;
        RationalField::new(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Tropical,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Tiebreak {
    Grevlex,
    Lex,
}

impl From<Tiebreak> for MonomialOrder {
    fn from(t: Tiebreak) -> Self {
        match t {
            Tiebreak::Grevlex => MonomialOrder::Grevlex,
            Tiebreak::Lex => MonomialOrder::Lex,
        }
    }
}

impl From<MonomialOrder> for Tiebreak {
    fn from(o: MonomialOrder) -> Self {
        match o {
            MonomialOrder::Grevlex => Tiebreak::Grevlex,
            MonomialOrder::Lex => Tiebreak::Lex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub kind: OrderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
    pub tiebreak: Tiebreak,
}

impl OrderSpec {
    pub fn to_order(&self, nvars: usize) -> Result<TermOrder> {
        let ord = match self.kind {
            OrderKind::Tropical => TermOrder::tropical(
                self.weight.clone().unwrap_or_else(|| vec![0; nvars]),
                self.tiebreak.into(),
            ),
            OrderKind::Classical => TermOrder::classical(self.tiebreak.into()),
        };
        ord.check_nvars(nvars)?;
        Ok(ord)
    }

    pub fn from_order(ord: &TermOrder) -> Self {
        match ord {
            TermOrder::Tropical { weight, tiebreak } => {
                OrderSpec { kind: OrderKind::Tropical, weight: Some(weight.clone()), tiebreak: (*tiebreak).into() }
            }
            TermOrder::Classical(o) => OrderSpec { kind: OrderKind::Classical, weight: None, tiebreak: (*o).into() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: String,
    pub exp: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsDoc {
    pub delta: usize,
    #[serde(rename = "D")]
    pub dbound: u32,
    pub xi: Option<i64>,
    pub cond: Option<i64>,
    pub input_precision: Option<i64>,
    pub output_precision: Option<i64>,
    pub observed_loss: i64,
    pub loss_bound: Option<i64>,
    pub engine: String,
    pub semi_stable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl DiagnosticsDoc {
    pub fn from_core(d: &tropfglm_core::Diagnostics) -> Self {
        DiagnosticsDoc {
            delta: d.delta,
            dbound: d.dbound,
            xi: d.xi,
            cond: d.cond,
            input_precision: d.input_precision,
            output_precision: d.output_precision,
            observed_loss: d.observed_loss,
            loss_bound: d.loss_bound,
            engine: format!("{:?}", d.engine).to_lowercase(),
            semi_stable: d.semi_stable,
            verified: None,
        }
    }
}

/// A polynomial system (or Gröbner basis) with its field and term order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub order: OrderSpec,
    pub polynomials: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsDoc>,
}

fn exp_of(e: &[u32], n: usize) -> Result<Monomial> {
    if e.len() != n {
        return Err(Error::Parse(format!("exponent {e:?} does not have {n} entries")));
    }
    Ok(Monomial::new(e.to_vec()))
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn term_order(&self) -> Result<TermOrder> {
        self.order.to_order(self.nvars())
    }

    pub fn polynomials<S: Scalar>(&self, field: &S::Field) -> Result<Vec<Polynomial<S>>> {
        let n = self.nvars();
        self.polynomials
            .iter()
            .map(|terms| {
                let mut p = Polynomial::zero(n);
                for t in terms {
                    p.add_term(exp_of(&t.exp, n)?, S::parse_text(field, &t.coeff)?);
                }
                Ok(p)
            })
            .collect()
    }

    pub fn basis<S: Scalar>(&self, field: &S::Field) -> Result<GroebnerBasis<S>> {
        Ok(GroebnerBasis::new(self.polynomials(field)?, self.term_order()?, field.clone()))
    }

    /// Terms are written in descending order for the document's term order.
    pub fn from_basis<S: Scalar>(field: FieldSpec, variables: Vec<String>, g: &GroebnerBasis<S>) -> Self {
        let polynomials = g
            .polys
            .iter()
            .map(|p| {
                p.sorted_terms(&g.order)
                    .into_iter()
                    .map(|(m, c)| TermSpec { coeff: c.to_text(), exp: m.exponents().to_vec() })
                    .collect()
            })
            .collect();
        SystemDocument { field, variables, order: OrderSpec::from_order(&g.order), polynomials, diagnostics: None }
    }
}

/// Precision summary attached to matrix outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub min_valuation: Option<i64>,
    pub min_abs_precision: Option<i64>,
    pub predicted_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_output_valuation: Option<i64>,
}

impl From<tropfglm_core::PrecisionReport> for ReportDoc {
    fn from(r: tropfglm_core::PrecisionReport) -> Self {
        ReportDoc {
            min_valuation: r.min_valuation,
            min_abs_precision: r.min_abs_precision,
            predicted_bound: r.predicted_bound,
            valuation_bound: None,
            min_output_valuation: None,
        }
    }
}

/// A matrix with monomial column labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub order: OrderSpec,
    pub columns: Vec<Vec<u32>>,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn matrix<S: Scalar>(&self, field: &S::Field) -> Result<MacaulayMatrix<S>> {
        let n = self.variables.len();
        let cols = self.columns.iter().map(|e| exp_of(e, n)).collect::<Result<Vec<_>>>()?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| S::parse_text(field, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MacaulayMatrix::new(cols, rows)
    }

    pub fn with_matrix<S: Scalar>(&self, m: &MacaulayMatrix<S>) -> Self {
        MatrixDocument {
            columns: m.cols.iter().map(|c| c.exponents().to_vec()).collect(),
            rows: m.rows.iter().map(|r| r.iter().map(|c| c.to_text()).collect()).collect(),
            rank: None,
            report: None,
            ..self.clone()
        }
    }
}

/// Multiplication matrices with their staircase labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultmatDocument {
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub order: OrderSpec,
    pub basis: Vec<Vec<u32>>,
    /// `matrices[i][row][col]` is coordinate `row` of `NF(x_i * basis[col])`.
    pub matrices: Vec<Vec<Vec<String>>>,
    pub report: ReportDoc,
}

impl MultmatDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}
