//! Seeded Monte Carlo experiments: how often does a torsion pattern appear
//! induced in the random flag complex, across an (n, p) grid?
//!
//! Trials are independent jobs with per-trial seeds derived purely from
//! (master seed, n, p, trial index), so results are identical under any
//! thread count, and budget-exhausted searches are reported as their own
//! outcome rather than biasing the frequency.

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{build_xm, rp2_flag};
use crate::density::{essential_density, DensityMode, EXHAUSTIVE_LIMIT};
use crate::graph::Graph;
use crate::random::{keyed_uniform, sample_graph, splitmix64, FlagModelParams};
use crate::search::{find_embedding, SearchOutcome};
use crate::{betti, Error, Rational, Ratio64, Result, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExperimentMode {
    /// Does the pattern appear as an induced subcomplex?
    DetectPattern,
    /// Does some induced subcomplex (up to the size cap) carry torsion at a
    /// prime dividing the pattern's own H_1 torsion?
    DetectTorsion,
}

#[derive(Clone, Debug)]
pub enum Pattern {
    Xm(u64),
    Rp2,
    Custom { name: String, graph: Graph },
}

impl Pattern {
    pub fn parse(s: &str) -> Result<Pattern> {
        if s == "rp2" {
            return Ok(Pattern::Rp2);
        }
        if let Some(m) = s.strip_prefix("xm:") {
            let m: u64 =
                m.parse().map_err(|_| Error::invalid(format!("bad pattern {s:?}")))?;
            return Ok(Pattern::Xm(m));
        }
        Err(Error::invalid(format!(
            "unknown pattern {s:?}: expected rp2, xm:M, or a complex file"
        )))
    }

    pub fn name(&self) -> String {
        match self {
            Pattern::Xm(m) => format!("xm:{m}"),
            Pattern::Rp2 => "rp2".into(),
            Pattern::Custom { name, .. } => name.clone(),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        Ok(match self {
            Pattern::Xm(m) => build_xm(*m)?.complex.skeleton_graph(),
            Pattern::Rp2 => rp2_flag().skeleton_graph(),
            Pattern::Custom { graph, .. } => graph.clone(),
        })
    }

    /// Primes whose torsion the detect-torsion mode scans for: the primes
    /// dividing the pattern's own `H_1` torsion. Empty means "any torsion
    /// counts".
    pub fn torsion_target(&self) -> Vec<u64> {
        fn factor(mut n: u64) -> Vec<u64> {
            let mut primes = Vec::new();
            let mut d = 2;
            while d * d <= n {
                if n.is_multiple_of(d) {
                    primes.push(d);
                    while n.is_multiple_of(d) {
                        n /= d;
                    }
                }
                d += 1;
            }
            if n > 1 {
                primes.push(n);
            }
            primes
        }
        match self {
            Pattern::Xm(m) => factor(*m),
            Pattern::Rp2 => vec![2],
            Pattern::Custom { graph, .. } => {
                use num_traits::ToPrimitive;
                let cx = crate::complex::clique_complex(graph, Some(2));
                let h = crate::homology::homology(&cx, 1, false);
                let mut primes: Vec<u64> = h
                    .torsion
                    .iter()
                    .flat_map(|t| factor(t.to_u64().unwrap_or(0)))
                    .collect();
                primes.sort_unstable();
                primes.dedup();
                primes
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub pattern: Pattern,
    pub n_values: Vec<u32>,
    /// Exact probabilities, kept with their source strings for display.
    pub p_values: Vec<(String, Rational)>,
    pub trials: u32,
    pub seed: u64,
    pub budget: u64,
    pub mode: ExperimentMode,
    /// Measure plain subgraph containment instead of induced containment.
    pub subgraph: bool,
    /// Subset-size cap for detect-torsion scans.
    pub torsion_cap: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n_values.is_empty() || self.p_values.is_empty() {
            return Err(Error::invalid("empty (n, p) grid"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TrialOutcome {
    Found,
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub n: u32,
    pub p: String,
    pub trial: u32,
    pub derived_seed: u64,
    pub outcome: TrialOutcome,
    pub nodes: u64,
    /// Wall-clock only; excluded from serialized output so that identical
    /// configs produce byte-identical files.
    #[serde(skip)]
    pub elapsed_ms: u64,
    pub witness: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridPointSummary {
    pub n: u32,
    pub p: String,
    pub trials: u32,
    pub found: u32,
    pub not_found: u32,
    pub budget_exhausted: u32,
    /// found / (found + not_found); exhausted trials are excluded.
    pub frequency: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// Bollobas reference threshold `n^(-1/m)` when the pattern density is
    /// known.
    pub threshold_reference: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub pattern: String,
    pub mode: ExperimentMode,
    pub subgraph_event: bool,
    pub seed: u64,
    pub summaries: Vec<GridPointSummary>,
    pub trials: Vec<TrialRecord>,
}

/// Wilson 95% confidence interval for `successes / total`.
pub fn wilson_interval(successes: u32, total: u32) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054_f64;
    let n = total as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let center = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = (z / (1.0 + z2 / n)) * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Per-trial seed: a pure function of (master, n, trial), deliberately
/// constant in `p` so that one trial's draws couple the whole p-grid
/// monotonically (the graph at `p` is a subgraph of the graph at `p' >= p`).
pub fn derive_seed(master: u64, n: u32, trial: u32) -> u64 {
    let h = keyed_uniform(splitmix64(master), n as u64);
    keyed_uniform(h, trial as u64)
}

fn run_trial(
    cfg: &ExperimentConfig,
    pattern: &Graph,
    targets: &[u64],
    n: u32,
    p: &(String, Rational),
    trial: u32,
) -> TrialRecord {
    let seed = derive_seed(cfg.seed, n, trial);
    let start = std::time::Instant::now();
    let params = FlagModelParams { n, p: p.1.clone(), seed, max_dim: 2 };
    let host = sample_graph(&params);
    let (outcome, nodes, witness) = match cfg.mode {
        ExperimentMode::DetectPattern => {
            let r = find_embedding(pattern, &host, cfg.budget, !cfg.subgraph);
            match r.outcome {
                SearchOutcome::Found(e) => (TrialOutcome::Found, r.nodes, Some(e.image())),
                SearchOutcome::NotFound => (TrialOutcome::NotFound, r.nodes, None),
                SearchOutcome::BudgetExhausted => (TrialOutcome::BudgetExhausted, r.nodes, None),
            }
        }
        ExperimentMode::DetectTorsion => {
            let cx = crate::complex::clique_complex(&host, Some(2));
            match betti::torsion_primes_with_limit(&cx, cfg.torsion_cap, n) {
                Ok(report) => {
                    let hit = if targets.is_empty() {
                        report.primes.first()
                    } else {
                        targets.iter().find(|t| report.primes.contains(t))
                    };
                    match hit {
                        Some(t) => {
                            let w = report.witnesses[t].alpha.clone();
                            (TrialOutcome::Found, 0, Some(w))
                        }
                        None => (TrialOutcome::NotFound, 0, None),
                    }
                }
                Err(_) => (TrialOutcome::BudgetExhausted, 0, None),
            }
        }
    };
    TrialRecord {
        n,
        p: p.0.clone(),
        trial,
        derived_seed: seed,
        outcome,
        nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        witness,
    }
}

/// Runs the full grid. Deterministic for a fixed config (thread count does
/// not matter: results are collected in trial order).
pub fn run_threshold_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let pattern = cfg.pattern.graph()?;
    let targets = cfg.pattern.torsion_target();
    let pattern_density: Option<Ratio64> = match cfg.mode {
        ExperimentMode::DetectPattern => {
            let mode = if pattern.n() <= EXHAUSTIVE_LIMIT {
                DensityMode::Exhaustive
            } else {
                DensityMode::Maxflow
            };
            essential_density(&pattern, mode).ok().map(|r| r.density)
        }
        ExperimentMode::DetectTorsion => None,
    };

    let mut grid: Vec<(u32, (String, Rational))> = Vec::new();
    for &n in &cfg.n_values {
        for p in &cfg.p_values {
            grid.push((n, p.clone()));
        }
    }
    let mut summaries = Vec::new();
    let mut all_trials = Vec::new();
    for (n, p) in grid {
        let trials: Vec<TrialRecord> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, &pattern, &targets, n, &p, t))
            .collect();
        let found = trials.iter().filter(|t| t.outcome == TrialOutcome::Found).count() as u32;
        let not_found =
            trials.iter().filter(|t| t.outcome == TrialOutcome::NotFound).count() as u32;
        let exhausted =
            trials.iter().filter(|t| t.outcome == TrialOutcome::BudgetExhausted).count() as u32;
        let decided = found + not_found;
        let frequency = if decided == 0 { 0.0 } else { found as f64 / decided as f64 };
        let (lo, hi) = wilson_interval(found, decided);
        let threshold_reference = pattern_density.map(|d| {
            let exponent = -(*d.denom() as f64) / (*d.numer() as f64);
            (n as f64).powf(exponent)
        });
        summaries.push(GridPointSummary {
            n,
            p: p.0.clone(),
            trials: cfg.trials,
            found,
            not_found,
            budget_exhausted: exhausted,
            frequency,
            wilson_low: lo,
            wilson_high: hi,
            threshold_reference,
        });
        all_trials.extend(trials);
    }
    Ok(ExperimentResult {
        pattern: cfg.pattern.name(),
        mode: cfg.mode.clone(),
        subgraph_event: cfg.subgraph,
        seed: cfg.seed,
        summaries,
        trials: all_trials,
    })
}

impl ExperimentResult {
    /// One CSV row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "pattern,mode,n,p,trials,found,not_found,budget_exhausted,frequency,wilson_low,wilson_high,threshold_reference\n",
        );
        for s in &self.summaries {
            let mode = match self.mode {
                ExperimentMode::DetectPattern => {
                    if self.subgraph_event {
                        "detect-pattern-subgraph"
                    } else {
                        "detect-pattern"
                    }
                }
                ExperimentMode::DetectTorsion => "detect-torsion",
            };
            let thr = s.threshold_reference.map_or(String::new(), |t| format!("{t:.6}"));
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{}\n",
                self.pattern,
                mode,
                s.n,
                s.p,
                s.trials,
                s.found,
                s.not_found,
                s.budget_exhausted,
                s.frequency,
                s.wilson_low,
                s.wilson_high,
                thr
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// gnuplot-friendly: `p frequency wilson_low wilson_high` per n block.
    pub fn to_plot_data(&self) -> String {
        let mut out = String::new();
        let mut ns: Vec<u32> = self.summaries.iter().map(|s| s.n).collect();
        ns.dedup();
        for n in ns {
            out.push_str(&format!("# n = {n}\n"));
            for s in self.summaries.iter().filter(|s| s.n == n) {
                out.push_str(&format!(
                    "{} {:.6} {:.6} {:.6}\n",
                    s.p, s.frequency, s.wilson_low, s.wilson_high
                ));
            }
            out.push('\n');
        }
        out
    }
}
