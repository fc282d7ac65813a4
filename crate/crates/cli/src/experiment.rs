//! Precision-loss experiments on random systems over `Q_p`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use tropfglm_core::gb_oracle::macaulay_bound;
use tropfglm_core::{
    change_ordering, macaulay_gb, random_system, Error, MonomialOrder, PAdic, PAdicField, Polynomial, Result,
    Scalar, Strategy, TermOrder,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Tropical basis for weight 0, then lex.
    TropToLex,
    /// Tropical basis for weight 0, then another weight.
    TropToTrop,
    /// Classical grevlex basis, then lex.
    ClassicalToLex,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub p: u64,
    pub degrees: Vec<Vec<u32>>,
    pub reps: usize,
    pub seed: u64,
    pub mode: Mode,
    pub precision: u32,
    /// Target weight for [`Mode::TropToTrop`]; defaults to `[-2, 4, -8]` truncated to `n`.
    pub target_weight: Option<Vec<i64>>,
    /// Worker threads; `None` reads `TROPFGLM_THREADS`, then rayon's default.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(p: u64, degrees: Vec<Vec<u32>>, reps: usize, seed: u64, mode: Mode) -> Self {
        ExperimentConfig { p, degrees, reps, seed, mode, precision: 200, target_weight: None, threads: None }
    }
}

/// One generated instance. Losses are in digits: `N - abs_prec` per
/// non-leading output coefficient, floored at 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub seed: u64,
    pub degrees: Vec<u32>,
    pub delta: Option<usize>,
    pub time_s: f64,
    pub loss_mean: Option<f64>,
    pub loss_max: Option<i64>,
    pub cond: Option<i64>,
    pub xi: Option<i64>,
    pub error: Option<String>,
}

impl InstanceRecord {
    pub fn completed(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub mode: Mode,
    pub p: u64,
    pub precision: u32,
    pub records: Vec<InstanceRecord>,
}

/// Ratios of mean losses between two runs over the same seeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossRatios {
    /// Pairs where both losses are positive.
    pub pairs: usize,
    pub arithmetic: Option<f64>,
    pub geometric: Option<f64>,
    /// Mean ratio of CPU times over all completed pairs.
    pub time: Option<f64>,
}

pub const CSV_HEADER: &str = "seed,d1,d2,d3,delta,time_s,loss_mean,loss_max,cond,xi";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "NA".into())
}

fn mean(v: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (s, n) = v.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| s / n as f64)
}

impl ExperimentReport {
    pub fn completed(&self) -> usize {
        self.records.iter().filter(|r| r.completed()).count()
    }

    /// Mean over completed instances of the per-instance mean loss.
    pub fn mean_loss(&self) -> Option<f64> {
        mean(self.records.iter().filter_map(|r| r.loss_mean))
    }

    pub fn max_loss(&self) -> Option<i64> {
        self.records.iter().filter_map(|r| r.loss_max).max()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let d = |i: usize| r.degrees.get(i).map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6},{},{},{},{}",
                r.seed,
                d(0),
                d(1),
                d(2),
                opt(r.delta),
                r.time_s,
                opt(r.loss_mean.map(|x| format!("{x:.4}"))),
                opt(r.loss_max),
                opt(r.cond),
                opt(r.xi)
            );
        }
        out
    }

    /// Per degree tuple: completed count, mean and max loss, mean time.
    pub fn table(&self) -> String {
        let mut out = format!(
            "mode {:?}, p = {}, N = {}\n{:<10} {:>9} {:>10} {:>9} {:>10}\n",
            self.mode, self.p, self.precision, "degrees", "done", "loss_mean", "loss_max", "time_s"
        );
        let mut keys: Vec<&Vec<u32>> = self.records.iter().map(|r| &r.degrees).collect();
        keys.dedup();
        for k in keys {
            let rs: Vec<&InstanceRecord> = self.records.iter().filter(|r| &r.degrees == k).collect();
            let done = rs.iter().filter(|r| r.completed()).count();
            let lm = mean(rs.iter().filter_map(|r| r.loss_mean));
            let lx = rs.iter().filter_map(|r| r.loss_max).max();
            let t = mean(rs.iter().map(|r| r.time_s));
            let name = k.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
            let _ = writeln!(
                out,
                "{:<10} {:>9} {:>10} {:>9} {:>10}",
                name,
                format!("{done}/{}", rs.len()),
                opt(lm.map(|x| format!("{x:.2}"))),
                opt(lx),
                opt(t.map(|x| format!("{x:.4}")))
            );
        }
        out
    }

    /// Ratios `self / other` on instances present and completed in both.
    pub fn ratios(&self, other: &ExperimentReport) -> LossRatios {
        let mut loss = Vec::new();
        let mut time = Vec::new();
        for a in self.records.iter().filter(|r| r.completed()) {
            let Some(b) = other.records.iter().find(|b| b.seed == a.seed && b.degrees == a.degrees && b.completed())
            else {
                continue;
            };
            if b.time_s > 0.0 {
                time.push(a.time_s / b.time_s);
            }
            if let (Some(x), Some(y)) = (a.loss_mean, b.loss_mean) {
                if x > 0.0 && y > 0.0 {
                    loss.push(x / y);
                }
            }
        }
        LossRatios {
            pairs: loss.len(),
            arithmetic: mean(loss.iter().copied()),
            geometric: mean(loss.iter().map(|r| r.ln())).map(f64::exp),
            time: mean(time),
        }
    }
}

/// CPU time consumed by the calling thread, in seconds.
pub fn thread_cpu_time() -> f64 {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: valid pointer to a timespec owned by this frame.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return 0.0;
    }
    ts.tv_sec as f64 + ts.tv_nsec as f64 * 1e-9
}

fn target_order(cfg: &ExperimentConfig, n: usize) -> TermOrder {
    match cfg.mode {
        Mode::TropToLex | Mode::ClassicalToLex => TermOrder::classical(MonomialOrder::Lex),
        Mode::TropToTrop => {
            let w = cfg.target_weight.clone().unwrap_or_else(|| [-2, 4, -8].into_iter().cycle().take(n).collect());
            TermOrder::tropical(w, MonomialOrder::Grevlex)
        }
    }
}

fn losses(n_digits: u32, polys: &[Polynomial<PAdic>], ord: &TermOrder) -> (f64, i64) {
    let mut v = Vec::new();
    for p in polys {
        let lm = p.leading_monomial(ord).ok();
        for (m, c) in p.terms() {
            if Some(m) == lm.as_ref() {
                continue;
            }
            v.push(c.abs_precision().map_or(0, |a| (n_digits as i64 - a).max(0)));
        }
    }
    let max = v.iter().copied().max().unwrap_or(0);
    (mean(v.iter().map(|&x| x as f64)).unwrap_or(0.0), max)
}

pub fn run_instance(cfg: &ExperimentConfig, degrees: &[u32], seed: u64) -> InstanceRecord {
    let start = thread_cpu_time();
    let mut rec = InstanceRecord {
        seed,
        degrees: degrees.to_vec(),
        delta: None,
        time_s: 0.0,
        loss_mean: None,
        loss_max: None,
        cond: None,
        xi: None,
        error: None,
    };
    let res = (|| -> Result<()> {
        let n = degrees.len();
        let field = PAdicField::new(cfg.p, cfg.precision)?;
        let sys: Vec<Polynomial<PAdic>> = random_system(&field, n, degrees, cfg.precision, seed);
        let ord1 = match cfg.mode {
            Mode::ClassicalToLex => TermOrder::classical(MonomialOrder::Grevlex),
            _ => TermOrder::tropical(vec![0; n], MonomialOrder::Grevlex),
        };
        let g = macaulay_gb(&sys, &ord1, &field, macaulay_bound(degrees))?;
        let ord2 = target_order(cfg, n);
        let out = change_ordering(&g, &ord2, Strategy::General)?;
        let (lm, lx) = losses(cfg.precision, &out.basis.polys, &ord2);
        rec.delta = Some(out.diagnostics.delta);
        rec.loss_mean = Some(lm);
        rec.loss_max = Some(lx);
        rec.cond = out.diagnostics.cond;
        rec.xi = out.diagnostics.xi;
        Ok(())
    })();
    if let Err(e) = res {
        rec.error = Some(e.to_string());
    }
    rec.time_s = thread_cpu_time() - start;
    rec
}

fn thread_count(cfg: &ExperimentConfig) -> Option<usize> {
    cfg.threads.or_else(|| std::env::var("TROPFGLM_THREADS").ok()?.parse().ok()).filter(|&t| t > 0)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if let Some(d) = cfg.degrees.iter().find(|d| !(2..=3).contains(&d.len()) || d.contains(&0)) {
        return Err(Error::InvalidArgument(format!("degree tuple {d:?}: need 2 or 3 positive degrees")));
    }
    let jobs: Vec<(&Vec<u32>, u64)> = cfg
        .degrees
        .iter()
        .flat_map(|d| (0..cfg.reps as u64).map(move |r| (d, cfg.seed.wrapping_add(r))))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count(cfg) {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let records = pool.install(|| jobs.par_iter().map(|(d, s)| run_instance(cfg, d, *s)).collect());
    Ok(ExperimentReport { mode: cfg.mode, p: cfg.p, precision: cfg.precision, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let cfg = ExperimentConfig::new(2, vec![vec![2, 2, 2]], 0, 1, Mode::TropToTrop);
        let r = run_experiment(&cfg).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.to_csv(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn small_run_is_deterministic() {
        let mut cfg = ExperimentConfig::new(3, vec![vec![2, 2]], 2, 5, Mode::TropToTrop);
        cfg.precision = 40;
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.completed(), 2);
        let strip = |r: &ExperimentReport| r.records.iter().map(|x| (x.delta, x.loss_mean, x.loss_max)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }
}
