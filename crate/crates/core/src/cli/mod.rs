//! The `falconer` command line.
//!
//! Exit codes: 0 when every asserted claim holds, 1 when a claim is
//! violated, 2 for usage and configuration errors.

pub mod selftest;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construction::{build_construction, BasisChoice};
use crate::error::Error;
use crate::setalg::DEFAULT_PAIR_BUDGET;
use crate::verify::{census, ratio_scan, verify_counterexample, Budgets, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "falconer", version, about = "Build and verify finite-field distance-set counterexamples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Maximum number of pairs any pair loop may visit.
    #[arg(long, env = "FALCONER_PAIR_BUDGET", default_value_t = DEFAULT_PAIR_BUDGET)]
    pair_budget: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write the machine-readable report here (`-` for stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Print more detail.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and emit its replayable record.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "auto")]
        basis: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify the counterexample for one (p, r).
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "auto")]
        basis: String,
        /// auto, both, or structured.
        #[arg(long, default_value = "auto")]
        oracle: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify one row per r and tabulate |Δ(E)|/q.
    Scan {
        #[arg(long)]
        p: u64,
        /// Comma-separated list of r values.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
        #[arg(long, default_value = "auto")]
        basis: String,
        #[arg(long, default_value = "auto")]
        oracle: String,
        #[command(flatten)]
        common: Common,
    },
    /// Largest subset of F_q^2 with incomplete distance set, q in {2, 3, 5}.
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        pruning: Toggle,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in randomized and exhaustive checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub budgets: Budgets,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub csv: bool,
    pub verbosity: u8,
}

#[derive(Debug, Clone)]
pub enum CommandConfig {
    Construct { p: u64, r: u32, basis: BasisChoice },
    Verify { p: u64, r: u32, options: VerifyOptions },
    Scan { p: u64, r_list: Vec<u32>, options: VerifyOptions },
    Census { q: u64, pruning: bool },
    Selftest { seed: u64 },
}

/// A usage or configuration problem; maps to exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let common_of = |c: &Common| (Budgets { pair_budget: c.pair_budget, ..Budgets::default() }, c.clone());
        let (command, common) = match cli.command {
            Command::Construct { p, r, basis, common } => {
                (CommandConfig::Construct { p, r, basis: basis.parse()? }, common)
            }
            Command::Verify { p, r, basis, oracle, common } => {
                let (budgets, _) = common_of(&common);
                let options = VerifyOptions { basis: basis.parse()?, oracle: oracle.parse()?, budgets };
                (CommandConfig::Verify { p, r, options }, common)
            }
            Command::Scan { p, r, basis, oracle, common } => {
                let (budgets, _) = common_of(&common);
                let options = VerifyOptions { basis: basis.parse()?, oracle: oracle.parse()?, budgets };
                (CommandConfig::Scan { p, r_list: r, options }, common)
            }
            Command::Census { q, pruning, common } => {
                (CommandConfig::Census { q, pruning: pruning == Toggle::On }, common)
            }
            Command::Selftest { seed, common } => (CommandConfig::Selftest { seed }, common),
        };
        let csv = common.format == Format::Csv;
        if csv && !matches!(command, CommandConfig::Scan { .. }) {
            return Err(Failure("--format csv is only available for scan".into()));
        }
        if let CommandConfig::Census { q, .. } = command {
            // the census precomputes a q^2 x q^2 distance table
            let needed = (q * q).saturating_mul(q * q);
            if needed > common.pair_budget {
                return Err(Error::BudgetExceeded { needed, budget: common.pair_budget }.into());
            }
        }
        Ok(RunConfig {
            command,
            budgets: Budgets { pair_budget: common.pair_budget, ..Budgets::default() },
            threads: common.threads,
            out: common.out,
            csv,
            verbosity: common.verbose,
        })
    }
}

struct Output {
    summary: String,
    report: String,
    violated: Option<String>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cfg: &RunConfig) -> Result<Output, Failure> {
    match &cfg.command {
        CommandConfig::Construct { p, r, basis } => {
            let c = build_construction(*p, *r, *basis)?;
            let rec = c.record();
            let summary = format!(
                "construction p={} r={} q={} |F|={} |V|={} |E|={} i={} basis=({},{})\n",
                c.p(),
                c.r(),
                c.q(),
                c.subfield().order(),
                c.subspace().len(),
                c.size_e(),
                c.i(),
                rec.basis[0],
                rec.basis[1]
            );
            Ok(Output { summary, report: json(&rec), violated: None })
        }
        CommandConfig::Verify { p, r, options } => {
            let rep = verify_counterexample(*p, *r, options)?;
            let mut summary = format!(
                "p={} r={} q={} |E|={} |Δ(E)|={} |VV|={} ratio={}/{} ({}) mode={}\n",
                rep.p,
                rep.r,
                rep.q,
                rep.size_e,
                rep.size_delta,
                rep.size_vv,
                rep.ratio.num,
                rep.ratio.den,
                rep.ratio.decimal,
                rep.oracle_mode
            );
            summary.push_str(&format!(
                "Δ(E) ⊆ VV: {}  Δ(E) = VV: {}  Δ(E) ≠ F_q: {}  missing distance: {}\n",
                rep.delta_subset_vv,
                rep.delta_equals_vv,
                rep.delta_ne_fq,
                rep.missing_distance.map_or("none".to_string(), |m| m.to_string())
            ));
            if cfg.verbosity > 0 {
                summary.push_str(&format!(
                    "IR threshold applies: {}  elapsed: {} ms\nΔ(E) sha256: {}\n",
                    rep.ir_applicable, rep.elapsed_ms, rep.delta_sha256
                ));
            }
            let violated = (!rep.claims_hold).then(|| "verification claims violated".to_string());
            Ok(Output { summary, report: json(&rep), violated })
        }
        CommandConfig::Scan { p, r_list, options } => {
            let table = ratio_scan(*p, r_list, options);
            let csv = table.to_csv();
            let summary = if cfg.csv {
                csv.clone()
            } else {
                let mut s = String::from("r\tq\t|Δ(E)|\tratio\tΔ≠F_q\n");
                for row in &table.rows {
                    match (&row.report, &row.error) {
                        (Some(rep), _) => s.push_str(&format!(
                            "{}\t{}\t{}\t{}/{} ({})\t{}\n",
                            row.r, rep.q, rep.size_delta, rep.ratio.num, rep.ratio.den, rep.ratio.decimal, rep.delta_ne_fq
                        )),
                        (None, Some(e)) => s.push_str(&format!("{}\terror: {e}\n", row.r)),
                        (None, None) => {}
                    }
                }
                s
            };
            let mut errors = table.rows.iter().filter_map(|row| row.error.as_deref());
            if let Some(e) = errors.next() {
                return Err(Failure(format!("{summary}scan row failed: {e}")));
            }
            let violated = (!table.all_rows_hold()).then(|| "a scan row violated its claims".to_string());
            let report = if cfg.csv { csv } else { json(&table) };
            Ok(Output { summary, report, violated })
        }
        CommandConfig::Census { q, pruning } => {
            let res = census(*q, *pruning)?;
            let summary = format!(
                "q={} pruning={} max |E| with Δ(E) ≠ F_q: {} (visited {} subsets)\n",
                res.q, res.pruning, res.max_incomplete_size, res.subsets_visited
            );
            Ok(Output { summary, report: json(&res), violated: None })
        }
        CommandConfig::Selftest { seed } => {
            let rep = selftest::run(*seed, cfg.budgets);
            let mut summary = String::new();
            for c in &rep.checks {
                summary.push_str(&format!("[{}] {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail));
            }
            let violated = (!rep.passed()).then(|| "self-test failed".to_string());
            Ok(Output { summary, report: json(&rep), violated })
        }
    }
}

fn run(cfg: &RunConfig) -> Result<Output, Failure> {
    if cfg.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Failure(e.to_string()))?;
        pool.install(|| execute(cfg))
    } else {
        execute(cfg)
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(cfg) => cfg,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let out = match run(&cfg) {
        Ok(out) => out,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match &cfg.out {
        Some(path) if path.as_os_str() == "-" => print!("{}", out.report),
        Some(path) => {
            print!("{}", out.summary);
            if let Err(e) = fs::write(path, &out.report) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{}", out.summary),
    }
    match out.violated {
        Some(msg) => {
            eprintln!("claim violated: {msg}");
            EXIT_CLAIM_VIOLATED
        }
        None => EXIT_OK,
    }
}
