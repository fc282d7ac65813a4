//! Random zero-dimensional instances checked against exact rational shadows.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropfglm_core::fglm::fglm_tropical_traced;
use tropfglm_core::gb_oracle::{random_exact_basis, MacaulayOracle};
use tropfglm_core::quotient::mat_mul;
use tropfglm_core::*;

pub const PRECISION: i64 = 100;

#[derive(Debug, Clone)]
pub struct Instance {
    pub p: u64,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub weight: Vec<i64>,
    pub target_weight: Vec<i64>,
    pub homogeneous: bool,
    pub seed: u64,
}

impl Instance {
    /// Parameters drawn from `seed`. Degree tuples stay small enough that
    /// the exact shadow computation is quick.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = [2, 3, 101][rng.gen_range(0..3)];
        let n = rng.gen_range(2..=3);
        let degrees = if n == 2 {
            let a = rng.gen_range(1..=4);
            let b = rng.gen_range(2..=5);
            vec![a, b]
        } else {
            [vec![2, 2, 2], vec![2, 2, 3], vec![2, 2, 4], vec![1, 2, 4]][rng.gen_range(0..4)].clone()
        };
        let w = |rng: &mut ChaCha8Rng| (0..n).map(|_| rng.gen_range(-8..=8)).collect::<Vec<i64>>();
        let weight = w(&mut rng);
        let target_weight = w(&mut rng);
        Instance { p, n, degrees, weight, target_weight, homogeneous: false, seed }
    }

    pub fn coeff_prec(&self) -> u32 {
        match self.p {
            2 => 4,
            3 => 3,
            _ => 1,
        }
    }

    pub fn order(&self) -> TermOrder {
        TermOrder::tropical(self.weight.clone(), MonomialOrder::Grevlex)
    }

    pub fn exact_basis(&self) -> Result<QBasis> {
        let rf = RationalField::new(self.p)?;
        random_exact_basis(&rf, self.n, &self.degrees, self.coeff_prec(), &self.order(), self.homogeneous, self.seed)
    }
}

pub fn to_padic(g: &QBasis, prec: i64) -> QpBasis {
    let f = PAdicField::new(g.field.prime(), prec as u32).unwrap();
    g.convert(f, |c| c.to_padic(prec))
}

/// What one checked instance looked like.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub delta: usize,
    pub columns: usize,
    pub lex_checked: bool,
    /// Precision report of the p-adic multiplication matrices.
    pub report: PrecisionReport,
    pub valuation_bound: Option<i64>,
    pub min_output_valuation: Option<i64>,
}

impl Outcome {
    /// Observed precision and valuations of the matrices respect the a priori bounds.
    pub fn within_bounds(&self) -> bool {
        let prec = match (self.report.min_abs_precision, self.report.predicted_bound) {
            (Some(a), Some(b)) => a >= b,
            (None, _) => true,
            (Some(_), None) => false,
        };
        let val = match (self.min_output_valuation, self.valuation_bound) {
            (Some(a), Some(b)) => a >= b,
            (None, _) => true,
            (Some(_), None) => false,
        };
        prec && val
    }
}

fn matrices_agree(a: &[Vec<PAdic>], b: &[Vec<PAdic>]) -> bool {
    a.iter().zip(b).all(|(r, s)| r.iter().zip(s).all(|(x, y)| x.agrees_with(y)))
}

fn shadow_agrees(out: &QpBasis, exact: &QBasis) -> bool {
    out.agrees_with(&to_padic(exact, PRECISION))
}

/// Runs every check on one instance; `Ok(None)` when `delta` exceeds `max_delta`.
pub fn check_instance(inst: &Instance, max_delta: usize) -> std::result::Result<Option<Outcome>, String> {
    let e = |s: &str, err: Error| format!("{inst:?}: {s}: {err}");
    let gq = inst.exact_basis().map_err(|x| e("exact basis", x))?;
    let qq = multiplication_matrices(&gq).map_err(|x| e("exact matrices", x))?;
    if qq.delta > max_delta {
        return Ok(None);
    }
    let gp = to_padic(&gq, PRECISION);
    let q = multiplication_matrices(&gp).map_err(|x| e("matrices", x))?;
    if q.basis != qq.basis {
        return Err(format!("{inst:?}: staircase differs"));
    }

    // commuting matrices, entries equal to oracle normal forms
    for i in 0..inst.n {
        for j in i + 1..inst.n {
            if !matrices_agree(&mat_mul(&q.mult[i], &q.mult[j]), &mat_mul(&q.mult[j], &q.mult[i])) {
                return Err(format!("{inst:?}: M{i} M{j} != M{j} M{i}"));
            }
        }
    }
    let oracle = MacaulayOracle::new(&gq, qq.dbound + 2).map_err(|x| e("oracle", x))?;
    for (i, m) in q.mult.iter().enumerate() {
        for (c, b) in q.basis.iter().enumerate() {
            let x = Polynomial::term(ExactRational::one(&gq.field), b.mul_var(i));
            let nf = oracle.normal_form(&x).map_err(|x| e("oracle normal form", x))?;
            for (r, bb) in q.basis.iter().enumerate() {
                let want = nf.coeff(bb).map_or(PAdic::exact_zero(), |v| v.to_padic(PRECISION));
                if !m[r][c].agrees_with(&want) {
                    return Err(format!("{inst:?}: M{i}[{r}][{c}] = {} but the oracle has {want}", m[r][c]));
                }
            }
        }
    }

    // tropical target, checked against the exact computation and the oracle
    let ord2 = TermOrder::tropical(inst.target_weight.clone(), MonomialOrder::Grevlex);
    let t = fglm_tropical_traced(&q, &ord2).map_err(|x| e("tropical fglm", x))?;
    let exact = fglm_tropical_traced(&qq, &ord2).map_err(|x| e("exact tropical fglm", x))?;
    let bound = exact.basis.polys.iter().map(|p| p.degree()).max().unwrap_or(0) + 1;
    let v = verify_reduced_gb(&exact.basis, &gq, bound).map_err(|x| e("verify", x))?;
    if !v.ok {
        return Err(format!("{inst:?}: tropical output rejected: {:?}", v.witness));
    }
    if !shadow_agrees(&t.basis, &exact.basis) {
        return Err(format!("{inst:?}: tropical output differs from the exact one"));
    }
    let budget = inst.n * q.delta + 1;
    if t.columns.len() > budget {
        return Err(format!("{inst:?}: {} columns over budget {budget}", t.columns.len()));
    }

    // classical target
    let lex = inst.n == 2 && q.delta <= 12;
    let ord3 = TermOrder::classical(if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex });
    let c = fglm_classical(&q, &ord3).map_err(|x| e("classical fglm", x))?;
    let cx = fglm_classical(&qq, &ord3).map_err(|x| e("exact classical fglm", x))?;
    let bound = cx.polys.iter().map(|p| p.degree()).max().unwrap_or(0) + 1;
    let v = verify_reduced_gb(&cx, &gq, bound).map_err(|x| e("verify classical", x))?;
    if !v.ok {
        return Err(format!("{inst:?}: classical output rejected: {:?}", v.witness));
    }
    if !shadow_agrees(&c, &cx) {
        return Err(format!("{inst:?}: classical output differs from the exact one"));
    }

    // round trip back to the source order
    let q2 = multiplication_matrices(&t.basis).map_err(|x| e("matrices of output", x))?;
    let back = fglm_tropical(&q2, &inst.order()).map_err(|x| e("round trip", x))?;
    if !back.agrees_with(&gp) {
        return Err(format!("{inst:?}: round trip does not return the input"));
    }
    Ok(Some(Outcome {
        delta: q.delta,
        columns: t.columns.len(),
        lex_checked: lex,
        report: q.report,
        valuation_bound: q.valuation_bound,
        min_output_valuation: q.min_output_valuation,
    }))
}
