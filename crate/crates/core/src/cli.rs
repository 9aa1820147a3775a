//! Command-line surface of the `twsec` binary.
//!
//! Summaries go to stdout, machine-readable data only to `--output` files.
//! Exit codes: 0 success; 1 check-degraded found an infeasible output (or an
//! internal numerical failure); 2 bad channel spec or flags; 3 channel
//! outside the class a bound is proved for; 4 enumeration budget exceeded
//! without a Monte Carlo fallback.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::channel::{
    build_library_channel, check_stochastic_degradedness, load_channel, ChannelModel, DiscreteTwc, GaussianTwc,
    LibraryKind, Mod2Params, StrongOutput, DEFAULT_DEGRADEDNESS_TOL,
};
use crate::codes::{
    build_system_with, evaluate_ensemble, exact_cost, rates_for_secrecy, BuildOptions, CodeRates, CodebookKind,
    Decoder, EvalMethod, LeakageReport, RateQuad, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::info::Pmf;
use crate::region::{
    gaussian_capacity_individual, gaussian_inner_region, gaussian_joint_region, gaussian_outer_region,
    hausdorff_distance, inner_region_individual, inner_region_joint_symmetric, mod2_regions, outer_region_individual,
    region_area, region_subset, region_to_json, regions_to_csv, reliability_region, OuterClass, PrefixMode,
    PrefixedInputs, RateRegion, SearchConfig,
};

/// Environment variable overriding the exact-enumeration budget.
pub const BUDGET_ENV: &str = "TWSEC_BUDGET";

#[derive(Debug, Clone, Parser)]
#[command(name = "twsec", version, about = "Secrecy rate regions of two-way wiretap channels")]
pub struct RunConfig {
    /// Worker threads for sweeps and enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Compute one rate region and write its frontier.
    Region(RegionArgs),
    /// Compare two regions of the same channel.
    Compare(CompareArgs),
    /// Evaluate a finite-blocklength wiretap code.
    Simulate(SimulateArgs),
    /// Check whether Z is a degraded version of Y1 and of Y2.
    CheckDegraded(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LibraryArg {
    Xor,
    Bmc,
    Adder,
    Mod2,
    Gaussian,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Built-in channel.
    #[arg(long, value_enum)]
    pub library: Option<LibraryArg>,
    /// Channel spec file (JSON); takes precedence over --library.
    #[arg(long)]
    pub channel: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    pub eps1: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps2: f64,
    #[arg(long, default_value_t = 0.2)]
    pub epsz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Secrecy {
    Individual,
    Joint,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bound {
    Inner,
    Outer,
    Capacity,
    Reliability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrefixArg {
    Identity,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Grid points per probability axis.
    #[arg(long, default_value_t = 101)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value_t = PrefixArg::Identity)]
    pub prefix: PrefixArg,
    /// Grid points per axis for prefix kernels in full mode.
    #[arg(long, default_value_t = 3)]
    pub kernel_resolution: usize,
    /// Polish frontier points by local search.
    #[arg(long)]
    pub refine: bool,
    #[arg(long, default_value_t = 20_000_000)]
    pub max_evaluations: u128,
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum, default_value_t = Secrecy::Individual)]
    pub secrecy: Secrecy,
    #[arg(long, value_enum, default_value_t = Bound::Inner)]
    pub bound: Bound,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format (default: from the output file extension, else csv).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// First region as `secrecy:bound`, e.g. `individual:inner`.
    #[arg(long)]
    pub left: String,
    /// Second region as `secrecy:bound`.
    #[arg(long)]
    pub right: String,
    /// Slack for the containment checks.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// JSON report path.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecoderArg {
    Ml,
    Typical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodebookArg {
    Random,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Blocklengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long)]
    pub r1s: f64,
    #[arg(long)]
    pub r2s: f64,
    /// Randomization rates; derived from the channel when omitted.
    #[arg(long)]
    pub r1r: Option<f64>,
    #[arg(long)]
    pub r2r: Option<f64>,
    /// Input pmf of user 1, comma separated (default uniform).
    #[arg(long, value_delimiter = ',')]
    pub px1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub px2: Option<Vec<f64>>,
    /// Monte Carlo trials, used when exact enumeration exceeds the budget.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, value_enum, default_value_t = DecoderArg::Ml)]
    pub decoder: DecoderArg,
    /// Typicality parameter for `--decoder typical`.
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = CodebookArg::Random)]
    pub codebook: CodebookArg,
    /// Number of random codebooks averaged.
    #[arg(long, default_value_t = 8)]
    pub codebooks: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, default_value_t = DEFAULT_DEGRADEDNESS_TOL)]
    pub tol: f64,
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

pub fn run(cfg: &RunConfig) -> i32 {
    if let Some(t) = cfg.threads {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match &cfg.command {
        Command::Region(a) => cmd_region(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::CheckDegraded(a) => cmd_check_degraded(a),
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Argument(_) | Error::Parse { .. } | Error::Io(_) => 2,
        Error::Precondition(_) => 3,
        Error::Capacity { .. } => 4,
        Error::Numerical(_) => 1,
    }
}

fn fail(e: Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(&e)
}

struct LoadedChannel {
    model: ChannelModel,
    library: Option<LibraryArg>,
    label: String,
    mod2: Option<Mod2Params>,
}

fn load(args: &ChannelArgs) -> Result<LoadedChannel> {
    if let Some(path) = &args.channel {
        return Ok(LoadedChannel {
            model: load_channel(path)?,
            library: None,
            label: path.display().to_string(),
            mod2: None,
        });
    }
    let lib = args.library.ok_or_else(|| Error::Argument("give --library or --channel".into()))?;
    let (model, mod2) = match lib {
        LibraryArg::Gaussian => (ChannelModel::Gaussian(GaussianTwc::reference()), None),
        LibraryArg::Mod2 => {
            let p = Mod2Params::new(args.eps1, args.eps2, args.epsz)?;
            (build_library_channel(LibraryKind::Mod2, Some(p))?.into(), Some(p))
        }
        LibraryArg::Xor => (build_library_channel(LibraryKind::Xor, None)?.into(), None),
        LibraryArg::Bmc => (build_library_channel(LibraryKind::Bmc, None)?.into(), None),
        LibraryArg::Adder => (build_library_channel(LibraryKind::Adder, None)?.into(), None),
    };
    let label = match mod2 {
        Some(p) => format!("mod2({}, {}, {})", p.eps1, p.eps2, p.epsz),
        None => format!("{lib:?}").to_lowercase(),
    };
    Ok(LoadedChannel { model, library: Some(lib), label, mod2 })
}

fn search_config(s: &SweepArgs) -> SearchConfig {
    SearchConfig {
        resolution: s.resolution,
        prefix: match s.prefix {
            PrefixArg::Identity => PrefixMode::Identity,
            PrefixArg::Full => PrefixMode::Full { kernel_resolution: s.kernel_resolution },
        },
        refine: s.refine,
        max_evaluations: s.max_evaluations,
    }
}

fn compute_region(ch: &LoadedChannel, secrecy: Secrecy, bound: Bound, sweep: &SweepArgs) -> Result<RateRegion> {
    let cfg = search_config(sweep);
    match &ch.model {
        ChannelModel::Gaussian(g) => match (secrecy, bound) {
            (Secrecy::Individual, Bound::Capacity) => gaussian_capacity_individual(g),
            (Secrecy::Individual, Bound::Inner) => gaussian_inner_region(g, cfg.resolution),
            (Secrecy::Individual, Bound::Outer) => gaussian_outer_region(g, cfg.resolution),
            (Secrecy::Joint, Bound::Inner | Bound::Capacity) => gaussian_joint_region(g),
            _ => Err(Error::Argument(format!(
                "{secrecy:?}/{bound:?} is not available for the Gaussian channel"
            ))),
        },
        ChannelModel::Discrete(d) => {
            if let Some(p) = ch.mod2 {
                let m = mod2_regions(p)?;
                match (secrecy, bound) {
                    (Secrecy::Individual, Bound::Inner) => return Ok(m.individual),
                    (Secrecy::Joint, Bound::Inner) => return Ok(m.joint),
                    (_, Bound::Reliability) => return Ok(m.reliability),
                    _ => {}
                }
            }
            match (secrecy, bound) {
                (_, Bound::Reliability) => reliability_region(d, &cfg),
                (Secrecy::Individual, Bound::Inner) => inner_region_individual(d, &cfg),
                (Secrecy::Individual, Bound::Outer) => outer_region_individual(d, outer_class(d), &cfg),
                (Secrecy::Individual, Bound::Capacity) if ch.library == Some(LibraryArg::Xor) => {
                    let mut r = inner_region_individual(d, &cfg)?;
                    r.kind = crate::region::RegionKind::Capacity;
                    Ok(r)
                }
                (Secrecy::Individual, Bound::Capacity) => Err(Error::Precondition(
                    "the secrecy capacity region is only established for the xor and Gaussian channels".into(),
                )),
                (Secrecy::Joint, Bound::Inner) => inner_region_joint_symmetric(d, &cfg),
                _ => Err(Error::Argument(format!("{secrecy:?}/{bound:?} is not available"))),
            }
        }
    }
}

fn outer_class(d: &DiscreteTwc) -> OuterClass {
    if d.is_same_output() {
        OuterClass::SameOutput
    } else {
        OuterClass::EavesdropperDegraded
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn summary(rg: &RateRegion) -> String {
    format!(
        "max r1s {:.6}  max r2s {:.6}  max sum {:.6}  area {:.6}  vertices {}",
        rg.max_r1s(),
        rg.max_r2s(),
        rg.max_sum(),
        region_area(rg),
        rg.frontier.len()
    )
}

pub fn cmd_region(a: &RegionArgs) -> i32 {
    let ch = match load(&a.channel) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let rg = match compute_region(&ch, a.secrecy, a.bound, &a.sweep) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    println!("{} {:?}/{:?}: {}", ch.label, a.secrecy, a.bound, summary(&rg));
    if let Some(path) = &a.output {
        let format = a.format.unwrap_or_else(|| {
            if path.extension().is_some_and(|e| e == "json") {
                Format::Json
            } else {
                Format::Csv
            }
        });
        let text = match format {
            Format::Csv => regions_to_csv(&[&rg]),
            Format::Json => pretty(&json!({
                "generator": {
                    "tool": "twsec region",
                    "version": env!("CARGO_PKG_VERSION"),
                    "channel": ch.label,
                    "resolution": a.sweep.resolution,
                    "prefix": format!("{:?}", a.sweep.prefix).to_lowercase(),
                    "refine": a.sweep.refine,
                },
                "region": region_to_json(&rg),
            })),
        };
        if let Err(e) = write_text(path, &text) {
            return fail(e);
        }
    }
    0
}

fn parse_selector(s: &str) -> Result<(Secrecy, Bound)> {
    let (sec, bound) = s
        .split_once(':')
        .ok_or_else(|| Error::Argument(format!("region selector `{s}` must look like secrecy:bound")))?;
    let sec = Secrecy::from_str(sec, true).map_err(|e| Error::Argument(format!("selector `{s}`: {e}")))?;
    let bound = Bound::from_str(bound, true).map_err(|e| Error::Argument(format!("selector `{s}`: {e}")))?;
    Ok((sec, bound))
}

pub fn cmd_compare(a: &CompareArgs) -> i32 {
    let result = (|| -> Result<Value> {
        let ch = load(&a.channel)?;
        let (ls, lb) = parse_selector(&a.left)?;
        let (rs, rb) = parse_selector(&a.right)?;
        let left = compute_region(&ch, ls, lb, &a.sweep)?;
        let right = compute_region(&ch, rs, rb, &a.sweep)?;
        let (al, ar) = (region_area(&left), region_area(&right));
        Ok(json!({
            "channel": ch.label,
            "left": a.left,
            "right": a.right,
            "tolerance": a.tol,
            "left_in_right": region_subset(&left, &right, a.tol),
            "right_in_left": region_subset(&right, &left, a.tol),
            "hausdorff": hausdorff_distance(&left, &right),
            "area_left": al,
            "area_right": ar,
            "area_ratio": if al > 0.0 { Value::from(ar / al) } else { Value::Null },
            "max_sum_left": left.max_sum(),
            "max_sum_right": right.max_sum(),
            "max_sum_difference": right.max_sum() - left.max_sum(),
        }))
    })();
    let report = match result {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    println!(
        "{} vs {}: left in right {}, right in left {}, hausdorff {:.6}, area ratio {}, max-sum difference {:.4}",
        a.left,
        a.right,
        report["left_in_right"],
        report["right_in_left"],
        report["hausdorff"].as_f64().unwrap_or(f64::NAN),
        report["area_ratio"],
        report["max_sum_difference"].as_f64().unwrap_or(f64::NAN),
    );
    if let Some(path) = &a.output {
        if let Err(e) = write_text(path, &pretty(&report)) {
            return fail(e);
        }
    }
    0
}

fn budget_from_env() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("{BUDGET_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn input_pmf(given: &Option<Vec<f64>>, size: usize, name: &str) -> Result<Pmf> {
    match given {
        Some(v) if v.len() != size => {
            Err(Error::Argument(format!("--{name} has {} entries, the alphabet has {size}", v.len())))
        }
        Some(v) => Pmf::new(vec![size], v.clone()),
        None => Pmf::uniform(vec![size]),
    }
}

pub fn cmd_simulate(a: &SimulateArgs) -> i32 {
    let result = (|| -> Result<Vec<LeakageReport>> {
        let ch = load(&a.channel)?;
        let d = match &ch.model {
            ChannelModel::Discrete(d) => d.clone(),
            ChannelModel::Gaussian(_) => {
                return Err(Error::Argument("code simulation needs a discrete channel".into()));
            }
        };
        let prefixes = PrefixedInputs::identity(
            input_pmf(&a.px1, d.size_x1(), "px1")?,
            input_pmf(&a.px2, d.size_x2(), "px2")?,
        );
        let opts = BuildOptions {
            decoder: match a.decoder {
                DecoderArg::Ml => Decoder::MaxLikelihood,
                DecoderArg::Typical => Decoder::JointTypicality { eps: a.eps },
            },
            codebook: match a.codebook {
                CodebookArg::Random => CodebookKind::Random,
                CodebookArg::Full => CodebookKind::FullSpace,
            },
            budget: budget_from_env()?,
        };
        let k = if opts.codebook == CodebookKind::FullSpace { 1 } else { a.codebooks };
        let mut reports = Vec::with_capacity(a.n.len());
        for &n in &a.n {
            let rates = match (a.r1r, a.r2r) {
                (Some(r1r), Some(r2r)) => CodeRates::quantized(n, RateQuad { r1s: a.r1s, r1r, r2s: a.r2s, r2r })?,
                (r1r, r2r) => {
                    let derived = rates_for_secrecy(&d, &prefixes, n, a.r1s, a.r2s)?.requested;
                    CodeRates::quantized(
                        n,
                        RateQuad { r1r: r1r.unwrap_or(derived.r1r), r2r: r2r.unwrap_or(derived.r2r), ..derived },
                    )?
                }
            };
            let probe = build_system_with(&d, &prefixes, rates.clone(), a.seed, &opts)?;
            let required = exact_cost(&probe);
            let method = if required <= opts.budget {
                EvalMethod::Exact
            } else if let Some(trials) = a.trials {
                EvalMethod::MonteCarlo { trials }
            } else {
                return Err(Error::Capacity { what: format!("exact enumeration at n = {n}"), required, limit: opts.budget });
            };
            reports.push(evaluate_ensemble(&d, &prefixes, &rates, a.seed, k, &opts, method)?);
        }
        Ok(reports)
    })();
    let reports = match result {
        Ok(r) => r,
        Err(e) => {
            let hint = matches!(e, Error::Capacity { .. });
            let code = fail(e);
            if hint {
                eprintln!("hint: pass --trials for a Monte Carlo estimate or raise {BUDGET_ENV}");
            }
            return code;
        }
    };
    println!("{:>4} {:>8} {:>8} {:>12} {:>12} {:>10} {:>10}  method", "n", "R1s", "R2s", "leak1", "leak2", "pe1", "pe2");
    for r in &reports {
        println!(
            "{:>4} {:>8.4} {:>8.4} {:>12.4e} {:>12.4e} {:>10.6} {:>10.6}  {:?}",
            r.n, r.quantized_rates.r1s, r.quantized_rates.r2s, r.leak1, r.leak2, r.pe1, r.pe2, r.method
        );
    }
    if let Some(path) = &a.output {
        let v = if reports.len() == 1 {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(&reports)
        }
        .expect("report json");
        if let Err(e) = write_text(path, &pretty(&v)) {
            return fail(e);
        }
    }
    0
}

pub fn cmd_check_degraded(a: &CheckArgs) -> i32 {
    let ch = match load(&a.channel) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let d = match &ch.model {
        ChannelModel::Discrete(d) => d,
        ChannelModel::Gaussian(g) => {
            println!("Gaussian channel: degraded = {} (Ne > N1 and Ne > N2)", g.is_degraded());
            return if g.is_degraded() { 0 } else { 1 };
        }
    };
    let mut all = true;
    for (strong, name) in [(StrongOutput::Y1, "Y1"), (StrongOutput::Y2, "Y2")] {
        let v = match check_stochastic_degradedness(d, strong, a.tol) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        all &= v.feasible;
        println!("Z degraded w.r.t. {name}: {} (residual {:.3e})", if v.feasible { "feasible" } else { "infeasible" }, v.residual);
        if let Some(w) = v.witness {
            for (y, row) in w.rows().enumerate() {
                let cells: Vec<String> = row.iter().map(|p| format!("{p:.6}")).collect();
                println!("  p(z|{name}={y}) = [{}]", cells.join(", "));
            }
        }
    }
    if all {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(parse_selector("individual:inner").unwrap(), (Secrecy::Individual, Bound::Inner));
        assert_eq!(parse_selector("Joint:Inner").unwrap(), (Secrecy::Joint, Bound::Inner));
        assert!(parse_selector("individual").is_err());
        assert!(parse_selector("weird:inner").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse { field: "x".into(), message: "y".into() }), 2);
        assert_eq!(exit_code(&Error::Precondition("p".into())), 3);
        assert_eq!(exit_code(&Error::Capacity { what: "c".into(), required: 2, limit: 1 }), 4);
    }

    #[test]
    fn missing_channel_is_usage_error() {
        assert_eq!(main_with_args(["twsec", "check-degraded"]), 2);
        assert_eq!(main_with_args(["twsec", "frobnicate"]), 2);
    }
}
