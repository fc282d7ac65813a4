//! Subcommand bodies, independent of argument parsing.

use std::fmt;
use std::path::{Path, PathBuf};

use tropfglm_core::quotient::multiplication_matrices;
use tropfglm_core::{
    change_ordering, tropical_row_echelon, verify_reduced_gb, Error, ExactRational, MonomialOrder, PAdic,
    Scalar, Strategy, TAdic, TermOrder,
};

use crate::document::{
    DiagnosticsDoc, FieldKindSpec, MatrixDocument, MultmatDocument, ReportDoc, SystemDocument, Tiebreak,
};
use crate::experiment::{run_experiment, ExperimentConfig, ExperimentReport};

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const NOT_REDUCED: i32 = 2;
    pub const PRECISION: i32 = 3;
    pub const NOT_ZERO_DIMENSIONAL: i32 = 4;
    pub const OTHER: i32 = 5;
    pub const VERIFY_FAILED: i32 = 6;
}

/// A failed command: message plus process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotReduced(_) => exit::NOT_REDUCED,
            Error::PrecisionExhausted(_) | Error::UnknownValuation => exit::PRECISION,
            Error::NotZeroDimensional(_) => exit::NOT_ZERO_DIMENSIONAL,
            Error::Parse(_) | Error::InvalidArgument(_) | Error::DimensionMismatch(_) => exit::USAGE,
            _ => exit::OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type CmdResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { code: exit::USAGE, message: format!("{}: {e}", path.display()) })
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> CmdResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure { code: exit::OTHER, message: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs `$body` with `$S` bound to the scalar type and `$field` to its field.
macro_rules! with_scalar {
    ($spec:expr, $S:ident, $field:ident, $body:block) => {
        match $spec.kind {
            FieldKindSpec::PAdic => {
                type $S = PAdic;
                let $field = $spec.padic()?;
                $body
            }
            FieldKindSpec::TAdic => {
                type $S = TAdic;
                let $field = $spec.tadic()?;
                $body
            }
            FieldKindSpec::Rational => {
                type $S = ExactRational;
                let $field = $spec.rational()?;
                $body
            }
        }
    };
}

#[derive(Debug, Clone)]
pub struct ChangeOrderArgs {
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    /// Tropical target with this weight; classical target when absent.
    pub target_weight: Option<Vec<i64>>,
    pub target_tiebreak: Tiebreak,
    pub strategy: Strategy,
    /// Re-check the output with the Macaulay oracle.
    pub verify: bool,
}

pub fn target_order(weight: Option<Vec<i64>>, tiebreak: Tiebreak) -> TermOrder {
    let t: MonomialOrder = tiebreak.into();
    match weight {
        Some(w) => TermOrder::tropical(w, t),
        None => TermOrder::classical(t),
    }
}

pub fn change_order_doc(doc: &SystemDocument, args: &ChangeOrderArgs) -> CmdResult<SystemDocument> {
    let ord2 = target_order(args.target_weight.clone(), args.target_tiebreak);
    ord2.check_nvars(doc.nvars())?;
    with_scalar!(doc.field, S, field, {
        let g = doc.basis::<S>(&field)?;
        g.check_reduced()?;
        let out = change_ordering(&g, &ord2, args.strategy)?;
        let mut res = if ord2 == g.order {
            // unchanged basis: keep the input text as is
            SystemDocument { diagnostics: None, ..doc.clone() }
        } else {
            SystemDocument::from_basis(doc.field.clone(), doc.variables.clone(), &out.basis)
        };
        let mut diag = DiagnosticsDoc::from_core(&out.diagnostics);
        if args.verify {
            let bound = out.basis.polys.iter().map(|p| p.degree()).max().unwrap_or(0) + 1;
            let v = verify_reduced_gb(&out.basis, &g, bound)?;
            diag.verified = Some(v.ok);
            if !v.ok {
                return Err(Failure {
                    code: exit::VERIFY_FAILED,
                    message: format!("output failed verification: {}", v.witness.unwrap_or_default()),
                });
            }
        }
        res.diagnostics = Some(diag);
        Ok(res)
    })
}

pub fn cmd_change_order(args: &ChangeOrderArgs) -> CmdResult<()> {
    let doc = SystemDocument::parse(&read(&args.input)?)?;
    let out = change_order_doc(&doc, args)?;
    emit(args.output.as_deref(), &out.to_json())
}

/// Verifies `claimed` against `source`; the witness is returned on failure.
pub fn verify_docs(claimed: &SystemDocument, source: &SystemDocument, degree_bound: u32) -> CmdResult<Option<String>> {
    if claimed.field != source.field || claimed.variables != source.variables {
        return Err(Error::InvalidArgument("documents use different rings".into()).into());
    }
    with_scalar!(source.field, S, field, {
        let src = source.basis::<S>(&field)?;
        src.check_reduced()?;
        let cl = claimed.basis::<S>(&field)?;
        let v = verify_reduced_gb(&cl, &src, degree_bound)?;
        Ok(if v.ok { None } else { Some(v.witness.unwrap_or_default()) })
    })
}

pub fn cmd_verify(claimed: &Path, source: &Path, degree_bound: u32) -> CmdResult<()> {
    let c = SystemDocument::parse(&read(claimed)?)?;
    let s = SystemDocument::parse(&read(source)?)?;
    match verify_docs(&c, &s, degree_bound)? {
        None => {
            println!("ok");
            Ok(())
        }
        Some(w) => Err(Failure { code: exit::VERIFY_FAILED, message: format!("not the reduced basis: {w}") }),
    }
}

fn texts<S: Scalar>(m: &[Vec<S>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_text()).collect()).collect()
}

pub fn multmat_doc(doc: &SystemDocument) -> CmdResult<MultmatDocument> {
    with_scalar!(doc.field, S, field, {
        let g = doc.basis::<S>(&field)?;
        let q = multiplication_matrices(&g)?;
        let mut report = ReportDoc::from(q.report);
        report.valuation_bound = q.valuation_bound;
        report.min_output_valuation = q.min_output_valuation;
        Ok(MultmatDocument {
            field: doc.field.clone(),
            variables: doc.variables.clone(),
            order: doc.order.clone(),
            basis: q.basis.iter().map(|b| b.exponents().to_vec()).collect(),
            matrices: q.mult.iter().map(|m| texts(m)).collect(),
            report,
        })
    })
}

pub fn cmd_multmat(input: &Path, output: Option<&Path>) -> CmdResult<()> {
    let doc = SystemDocument::parse(&read(input)?)?;
    emit(output, &multmat_doc(&doc)?.to_json())
}

pub fn echelon_doc(doc: &MatrixDocument, stable: bool) -> CmdResult<MatrixDocument> {
    let ord = doc.order.to_order(doc.variables.len())?;
    with_scalar!(doc.field, S, field, {
        let m = doc.matrix::<S>(&field)?;
        let e = tropical_row_echelon(&m, &ord, stable)?;
        let mut out = doc.with_matrix(&e.matrix);
        out.rank = Some(e.rank);
        out.report = Some(e.report.into());
        Ok(out)
    })
}

pub fn cmd_echelon(input: &Path, output: Option<&Path>, stable: bool) -> CmdResult<()> {
    let doc = MatrixDocument::parse(&read(input)?)?;
    emit(output, &echelon_doc(&doc, stable)?.to_json())
}

/// Runs the experiment, writes the CSV and prints the summary table. With
/// `compare`, the same seeds are also run in another mode and loss ratios
/// are printed.
pub fn cmd_experiment(
    cfg: &ExperimentConfig,
    output: Option<&Path>,
    compare: Option<crate::experiment::Mode>,
) -> CmdResult<ExperimentReport> {
    let report = run_experiment(cfg)?;
    for r in report.records.iter().filter(|r| !r.completed()) {
        eprintln!("seed {} degrees {:?}: {}", r.seed, r.degrees, r.error.as_deref().unwrap_or(""));
    }
    match output {
        Some(p) => {
            emit(Some(p), &report.to_csv())?;
            print!("{}", report.table());
        }
        None => print!("{}", report.to_csv()),
    }
    if let Some(mode) = compare {
        let other = run_experiment(&ExperimentConfig { mode, ..cfg.clone() })?;
        print!("{}", other.table());
        let r = report.ratios(&other);
        println!(
            "ratios {:?}/{:?} over {} pairs: loss arithmetic {} geometric {} time {}",
            cfg.mode,
            mode,
            r.pairs,
            r.arithmetic.map_or("NA".into(), |x| format!("{x:.3}")),
            r.geometric.map_or("NA".into(), |x| format!("{x:.3}")),
            r.time.map_or("NA".into(), |x| format!("{x:.3}")),
        );
    }
    let total = report.records.len();
    if total > 0 && report.completed() * 10 < total * 9 {
        return Err(Failure {
            code: exit::OTHER,
            message: format!("only {} of {total} instances completed", report.completed()),
        });
    }
    Ok(report)
}
