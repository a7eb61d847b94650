//! `flagtor`: construct and certify torsion flag complexes, compute exact
//! homology and Betti tables, search and measure random flag complexes.
//!
//! Exit codes: 0 success, 1 verification/reproduction failure, 2 usage error
//! (clap's default).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flagtor::betti;
use flagtor::complex::SimplicialComplex;
use flagtor::construct;
use flagtor::density::{self, DensityMode};
use flagtor::experiment::{self, ExperimentConfig, ExperimentMode, Pattern};
use flagtor::homology;
use flagtor::json;
use flagtor::random::{self, parse_probability};
use flagtor::reproduce::{self, TableId};
use flagtor::search;

#[derive(Parser)]
#[command(name = "flagtor", version, about, max_term_width = 100)]
struct Cli {
    /// Master seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Output format where both are supported.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named complex and write it in canonical JSON.
    Construct {
        /// xm:M, rp2, telescope:NK, sphere:I, punctured:K, or
        /// group:M1,M2,... (an invariant-factor chain).
        target: String,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the construction certificate as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Build and certify X_m for every m in a range.
    Verify {
        #[arg(long, default_value_t = 2)]
        m_min: u64,
        #[arg(long, default_value_t = 64)]
        m_max: u64,
    },
    /// Integer homology of a complex file.
    Homology {
        file: PathBuf,
        /// Single dimension (all dimensions if absent).
        #[arg(long)]
        dim: Option<i64>,
        #[arg(long)]
        reduced: bool,
    },
    /// Betti table of the Stanley-Reisner quotient via the subcomplex scan.
    Betti {
        file: PathBuf,
        /// 0 for the rationals, else a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Raise the 2^n feasibility guard (vertex count).
        #[arg(long, default_value_t = betti::DEFAULT_SCAN_LIMIT)]
        max_vertices: u32,
    },
    /// Primes with torsion in some induced subcomplex, with witnesses.
    Torsion {
        file: PathBuf,
        /// Report only primes up to this bound.
        #[arg(long)]
        primes_up_to: Option<u64>,
        /// Restrict subsets to at most this size (partial scan).
        #[arg(long)]
        max_subset_size: Option<usize>,
        #[arg(long, default_value_t = betti::DEFAULT_SCAN_LIMIT)]
        max_vertices: u32,
    },
    /// Exact essential density of a graph.
    Density {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
    },
    /// Search for a pattern graph inside a host graph.
    Search {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
        budget: u64,
        /// Plain subgraph containment instead of induced.
        #[arg(long)]
        subgraph: bool,
    },
    /// Sample a random flag complex (or its graph).
    Sample {
        #[arg(long)]
        n: u32,
        /// Exact probability: decimal like 0.25 or ratio like 1/4.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Emit only the sampled graph (1-skeleton).
        #[arg(long)]
        graph_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo sweep over an (n, p) grid.
    Experiment {
        /// rp2, xm:M, or a complex file path.
        #[arg(long)]
        pattern: String,
        /// Comma-separated host sizes.
        #[arg(long, value_delimiter = ',')]
        n_values: Vec<u32>,
        /// Comma-separated exact probabilities.
        #[arg(long, value_delimiter = ',')]
        p_values: Vec<String>,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = ExpModeArg::DetectPattern)]
        mode: ExpModeArg,
        /// Measure the non-induced subgraph event.
        #[arg(long)]
        subgraph: bool,
        /// Subset-size cap for detect-torsion.
        #[arg(long)]
        torsion_cap: Option<usize>,
        /// Also write a gnuplot-compatible data file.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a bundled reference table and diff it cell by cell.
    Reproduce {
        /// T1, T2, T3, T4, T5, counts, lemma51, or all.
        table: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Maxflow,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpModeArg {
    DetectPattern,
    DetectTorsion,
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    json::complex_from_json(&text).map_err(|e| e.to_string())
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn build_target(target: &str) -> Result<(SimplicialComplex, Option<String>), String> {
    let err = |e: flagtor::Error| e.to_string();
    if target == "rp2" {
        return Ok((construct::rp2_flag(), None));
    }
    if let Some(m) = target.strip_prefix("xm:") {
        let m: u64 = m.parse().map_err(|_| format!("bad m in {target:?}"))?;
        let b = construct::build_xm(m).map_err(err)?;
        let cert = serde_json::to_string_pretty(&b.certificate).unwrap();
        return Ok((b.complex, Some(cert)));
    }
    if let Some(nk) = target.strip_prefix("telescope:") {
        let nk: usize = nk.parse().map_err(|_| format!("bad nk in {target:?}"))?;
        return Ok((construct::telescope(nk).map_err(err)?.complex, None));
    }
    if let Some(i) = target.strip_prefix("sphere:") {
        let i: usize = i.parse().map_err(|_| format!("bad i in {target:?}"))?;
        return Ok((construct::sphere_stage(i).map_err(err)?.complex, None));
    }
    if let Some(k) = target.strip_prefix("punctured:") {
        let k: usize = k.parse().map_err(|_| format!("bad k in {target:?}"))?;
        return Ok((construct::punctured_sphere(k).map_err(err)?.complex, None));
    }
    if let Some(list) = target.strip_prefix("group:") {
        let factors: Result<Vec<u64>, _> = list.split(',').map(str::parse).collect();
        let factors = factors.map_err(|_| format!("bad factor list in {target:?}"))?;
        return Ok((construct::build_group_complex(&factors).map_err(err)?, None));
    }
    Err(format!(
        "unknown target {target:?}: expected xm:M, rp2, telescope:NK, sphere:I, \
         punctured:K, or group:M1,M2,..."
    ))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Construct { target, out, certificate } => {
            let (complex, cert) = build_target(&target)?;
            write_or_print(&out, &json::complex_to_json(&complex))?;
            if let Some(path) = certificate {
                let content = cert.unwrap_or_else(|| "{}".to_string());
                std::fs::write(&path, content)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(true)
        }
        Command::Verify { m_min, m_max } => {
            let summaries = reproduce::verify_xm_range(m_min, m_max).map_err(|e| e.to_string())?;
            let mut all = true;
            for s in &summaries {
                let status = if s.passed { "PASS" } else { "FAIL" };
                match (&s.certificate, &s.error) {
                    (Some(c), _) => println!(
                        "X_{}: {status}  f-vector {}  maxdeg {}  H1 {}",
                        s.m, c.fvector, c.maxdeg, c.h1
                    ),
                    (None, Some(e)) => println!("X_{}: {status}  {e}", s.m),
                    _ => println!("X_{}: {status}", s.m),
                }
                all &= s.passed;
            }
            println!("{}/{} certified", summaries.iter().filter(|s| s.passed).count(), summaries.len());
            Ok(all)
        }
        Command::Homology { file, dim, reduced } => {
            let cx = read_complex(&file)?;
            let groups = match dim {
                Some(d) => vec![(d, homology::homology(&cx, d, reduced))],
                None => homology::homology_all(&cx, reduced),
            };
            for (d, h) in &groups {
                println!("H_{d} = {h}");
            }
            Ok(true)
        }
        Command::Betti { file, characteristic, max_vertices } => {
            let cx = read_complex(&file)?;
            let table = betti::betti_table_with_limit(&cx, characteristic, max_vertices)
                .map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
                Format::Csv => print!("{}", table.render_grid()),
            }
            Ok(true)
        }
        Command::Torsion { file, primes_up_to, max_subset_size, max_vertices } => {
            let cx = read_complex(&file)?;
            let mut report = betti::torsion_primes_with_limit(&cx, max_subset_size, max_vertices)
                .map_err(|e| e.to_string())?;
            if let Some(bound) = primes_up_to {
                report.primes.retain(|&p| p <= bound);
                report.witnesses.retain(|&p, _| p <= bound);
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(true)
        }
        Command::Density { file, mode } => {
            let cx = read_complex(&file)?;
            let g = cx.skeleton_graph();
            let mode = match mode {
                ModeArg::Exhaustive => DensityMode::Exhaustive,
                ModeArg::Maxflow => DensityMode::Maxflow,
            };
            let report = density::essential_density(&g, mode).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(true)
        }
        Command::Search { pattern, host, budget, subgraph } => {
            let p = read_complex(&pattern)?.skeleton_graph();
            let h = read_complex(&host)?.skeleton_graph();
            let result = search::find_embedding(&p, &h, budget, !subgraph);
            println!("{}", serde_json::to_string_pretty(&result).unwrap());
            Ok(true)
        }
        Command::Sample { n, p, max_dim, graph_only, out } => {
            let p = parse_probability(&p).map_err(|e| e.to_string())?;
            let params = random::FlagModelParams::new(n, p, cli.seed, max_dim)
                .map_err(|e| e.to_string())?;
            let content = if graph_only {
                json::graph_to_json(&random::sample_graph(&params))
            } else {
                json::complex_to_json(&random::sample_flag_complex(&params))
            };
            write_or_print(&out, &content)?;
            Ok(true)
        }
        Command::Experiment {
            pattern,
            n_values,
            p_values,
            trials,
            budget,
            mode,
            subgraph,
            torsion_cap,
            plot,
            out,
        } => {
            let pattern = if Path::new(&pattern).exists() {
                let g = read_complex(Path::new(&pattern))?.skeleton_graph();
                Pattern::Custom { name: pattern.clone(), graph: g }
            } else {
                Pattern::parse(&pattern).map_err(|e| e.to_string())?
            };
            let mut parsed = Vec::new();
            for s in &p_values {
                parsed.push((s.clone(), parse_probability(s).map_err(|e| e.to_string())?));
            }
            let cfg = ExperimentConfig {
                pattern,
                n_values,
                p_values: parsed,
                trials,
                seed: cli.seed,
                budget,
                mode: match mode {
                    ExpModeArg::DetectPattern => ExperimentMode::DetectPattern,
                    ExpModeArg::DetectTorsion => ExperimentMode::DetectTorsion,
                },
                subgraph,
                torsion_cap,
            };
            let result = experiment::run_threshold_experiment(&cfg).map_err(|e| e.to_string())?;
            let content = match cli.format {
                Format::Csv => result.to_csv(),
                Format::Json => result.to_json(),
            };
            write_or_print(&out, &content)?;
            if let Some(path) = plot {
                std::fs::write(&path, result.to_plot_data())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(true)
        }
        Command::Reproduce { table } => {
            let ids: Vec<TableId> = if table.eq_ignore_ascii_case("all") {
                vec![
                    TableId::T1,
                    TableId::T2,
                    TableId::T3,
                    TableId::T4,
                    TableId::T5,
                    TableId::Counts,
                    TableId::Lemma51,
                ]
            } else {
                vec![table.parse().map_err(|e: flagtor::Error| e.to_string())?]
            };
            let mut all = true;
            for id in ids {
                let report = reproduce::reproduce(id).map_err(|e| e.to_string())?;
                print!("{}", report.render());
                all &= report.passed;
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool is initialized once");
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
