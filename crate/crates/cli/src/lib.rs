//! Command-line surface for the `wf4` library: argument parsing, dispatch and
//! text/JSON rendering. All numbers come from library calls.

pub mod check;
pub mod config;
pub mod search;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use wf4::hilbert::{expand, hs_compact, hs_general_with_workers, HilbertParams, SeriesJson};
use wf4::reps::{character, homogeneous_dims, sym2_decompose, weyl_dim, DominantWeight};
use wf4::variety::{embedding, format_weights, BuildReport, QuasiSmoothness};
use wf4::{Coweight, RankMethod};

use crate::check::CheckSummary;
use crate::search::{run_search, CandidateReport, SearchSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{name}: {message}")]
pub struct CliError {
    pub name: String,
    pub message: String,
}

impl CliError {
    pub fn input(name: &str, message: impl Into<String>) -> Self {
        CliError { name: name.into(), message: message.into() }
    }
}

macro_rules! from_lib_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::input(e.name(), e.to_string())
            }
        }
    )*};
}

from_lib_error!(
    wf4::HilbertError,
    wf4::variety::VarietyError,
    wf4::reps::ReprError,
    wf4::equations::EquationError
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Compact,
    General,
}

#[derive(Debug, Parser)]
#[command(name = "wf4", version, about = "Hilbert series and threefold builds for weighted F4 varieties")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Worker threads for the Weyl-group sum and the search.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Exact rational elimination instead of modular ranks.
    #[arg(long, global = true)]
    pub exact: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Coweight as four comma-separated integers.
    #[arg(long, value_parser = parse_four::<i64>, allow_hyphen_values = true)]
    pub mu: [i64; 4],
    #[arg(long)]
    pub u: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert series of wΣ(mu, u).
    Hilbert {
        #[command(flatten)]
        params: ParamArgs,
        /// Number of power-series coefficients to print.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, value_enum, default_value_t = Engine::Compact)]
        engine: Engine,
    },
    /// The 26 embedding weights.
    Weights {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run a build recipe from a TOML file.
    Build { config: PathBuf },
    /// Sweep (mu, u) and report candidates passing the filters.
    Search(SearchArgs),
    /// Run a verification suite.
    Check {
        #[command(subcommand)]
        what: CheckWhat,
    },
    /// Dimension, character and symmetric square of an irreducible representation.
    Rep {
        /// Highest weight as Dynkin labels, e.g. 0,0,0,1.
        #[arg(long, value_parser = parse_four::<u32>)]
        hw: [u32; 4],
        #[arg(long)]
        character: bool,
        #[arg(long)]
        sym2: bool,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// TOML search specification; flags below are ignored when given.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Coordinates of mu range over [-B, B].
    #[arg(long, default_value_t = 2)]
    pub mu_bound: i64,
    /// Shifts u range over 1..=u_max.
    #[arg(long, default_value_t = 4)]
    pub u_max: i64,
    /// Inclusive canonical-weight range as `lo,hi`.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-1000,1000")]
    pub target_canonical: [i64; 2],
    /// Drop candidates failing the gcd well-formedness test.
    #[arg(long)]
    pub require_wellformed: bool,
    /// Keep coweights with odd coordinate sum in the sweep.
    #[arg(long)]
    pub no_parity_filter: bool,
    /// Cut each candidate to a threefold after this many cones.
    #[arg(long)]
    pub threefold_cones: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum CheckWhat {
    Equations,
    Weyl,
    Reps,
    Cross {
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        terms: usize,
    },
}

fn parse_range(s: &str) -> Result<[i64; 2], String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("expected lo,hi, got {s:?}"));
    Ok([p(lo)?, p(hi)?])
}

fn parse_four<T: std::str::FromStr>(s: &str) -> Result<[T; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let vals: Result<Vec<T>, _> = parts.iter().map(|p| p.parse::<T>()).collect();
    let vals = vals.map_err(|_| format!("expected four comma-separated integers, got {s:?}"))?;
    vals.try_into().map_err(|_| format!("expected four comma-separated integers, got {s:?}"))
}

/// Rendered command output.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
    /// A verification check failed (exit code 1).
    pub failed: bool,
}

impl Output {
    fn new<T: Serialize>(text: String, data: &T) -> Self {
        Output { text, json: serde_json::to_value(data).expect("serializable"), failed: false }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
        }
    }
}

#[derive(Serialize)]
struct HilbertOut {
    mu: Coweight,
    u: i64,
    engine: Engine,
    numerator: String,
    series: SeriesJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<String>>,
}

#[derive(Serialize)]
struct WeightsOut {
    mu: Coweight,
    u: i64,
    weights: Vec<i64>,
    sum: i64,
    dim: i64,
    codim: i64,
    wellformed: bool,
}

#[derive(Serialize)]
struct BuildOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    report: BuildReport,
}

#[derive(Serialize)]
struct SearchOut {
    spec: SearchSpec,
    candidates: Vec<CandidateReport>,
}

#[derive(Serialize)]
struct RepOut {
    highest_weight: [u32; 4],
    dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    homogeneous: Option<(u64, u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    character: Option<Vec<(String, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sym2: Option<Vec<(String, u64, u64)>>,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Hilbert { params, terms, engine } => cmd_hilbert(params, *terms, *engine, cli.workers),
        Command::Weights { params } => cmd_weights(params),
        Command::Build { config } => cmd_build(config),
        Command::Search(args) => cmd_search(args, cli.workers),
        Command::Check { what } => Ok(cmd_check(what, cli)),
        Command::Rep { hw, character, sym2 } => cmd_rep(*hw, *character, *sym2),
    }
}

fn params(a: &ParamArgs) -> Result<HilbertParams, CliError> {
    Ok(HilbertParams::new(Coweight(a.mu), a.u)?)
}

pub fn cmd_hilbert(
    a: &ParamArgs,
    terms: Option<usize>,
    engine: Engine,
    workers: usize,
) -> Result<Output, CliError> {
    let p = params(a)?;
    let series = match engine {
        Engine::Compact => hs_compact(&p)?,
        Engine::General => hs_general_with_workers(&p, workers)?,
    };
    let coefficients = match terms {
        Some(n) => Some(expand(&series, n)?.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        None => None,
    };
    let mut text = String::new();
    let _ = writeln!(text, "mu = {}, u = {}, engine = {:?}", p.mu(), p.u(), engine);
    let _ = writeln!(text, "series: {}", series.to_pretty());
    match series.dim() {
        Some(d) => {
            let _ = writeln!(text, "dim: {d}");
        }
        None => {
            let _ = writeln!(text, "grading: half-integral (coordinate sum of mu is odd)");
        }
    }
    if let Some(c) = &coefficients {
        let _ = writeln!(text, "coefficients: {}", c.join(", "));
    }
    let out = HilbertOut {
        mu: p.mu(),
        u: p.u(),
        engine,
        numerator: series.numerator().to_pretty(),
        series: series.to_json(),
        coefficients,
    };
    Ok(Output::new(text, &out))
}

pub fn cmd_weights(a: &ParamArgs) -> Result<Output, CliError> {
    let e = embedding(&params(a)?)?;
    let w = e.weights().to_vec();
    let out = WeightsOut {
        mu: e.params().mu(),
        u: e.params().u(),
        sum: w.iter().sum(),
        dim: e.dim(),
        codim: e.codim(),
        wellformed: wf4::variety::is_wellformed_weights(&w),
        weights: w,
    };
    let text = format!(
        "wΣ(mu = {}, u = {}) in P^25 with weights {}\ndim {}, codim {}, weight sum {}, well-formed (gcd): {}\n",
        out.mu,
        out.u,
        format_weights(&out.weights),
        out.dim,
        out.codim,
        out.sum,
        yes_no(out.wellformed)
    );
    Ok(Output::new(text, &out))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_build(path: &std::path::Path) -> Result<Output, CliError> {
    let recipe = config::load_recipe(path)?;
    let build = recipe.build()?;
    let report = build.report()?;
    let mut text = String::new();
    if let Some(n) = &recipe.name {
        let _ = writeln!(text, "recipe: {n}");
    }
    let _ = writeln!(
        text,
        "base: mu = {}, u = {}, {} cones, {} sections",
        report.mu,
        report.u,
        report.cones,
        report.sections.len()
    );
    let _ = writeln!(text, "weights: {}", format_weights(&report.weights));
    let _ = writeln!(text, "dim: {}", report.dim);
    let _ = writeln!(text, "canonical: K = O({})", report.canonical);
    let _ = writeln!(text, "degree: D^{} = {}", report.dim, report.degree);
    let _ = writeln!(text, "well-formed (gcd): {}", yes_no(report.wellformed));
    let qs = match report.quasi_smooth {
        QuasiSmoothness::PaperAsserted => "asserted for this construction, not computed",
        QuasiSmoothness::Unverified => "unverified",
    };
    let _ = writeln!(text, "quasi-smooth: {qs}");
    match &report.orbifold {
        Some(o) => {
            let ty = match &o.singularity {
                Some(s) => format!(
                    " of type {s} (isolated: {}, terminal: {})",
                    yes_no(s.is_isolated()),
                    yes_no(s.is_terminal())
                ),
                None => String::new(),
            };
            let _ = writeln!(text, "orbifold points: {}{ty}", o.count);
        }
        None => {
            let _ = writeln!(text, "orbifold points: locus is not 0-dimensional");
        }
    }
    Ok(Output::new(text, &BuildOut { name: recipe.name.clone(), report }))
}

pub fn cmd_search(a: &SearchArgs, workers: usize) -> Result<Output, CliError> {
    let spec = match &a.spec {
        Some(path) => config::load_search_spec(path)?,
        None => SearchSpec {
            mu_bound: a.mu_bound,
            u_max: a.u_max,
            target_canonical: a.target_canonical,
            require_wellformed: a.require_wellformed,
            parity_filter: !a.no_parity_filter,
            threefold_cones: a.threefold_cones,
        },
    };
    let candidates = run_search(&spec, workers)?;
    let mut text = String::new();
    for c in &candidates {
        let _ = write!(
            text,
            "mu = {} u = {} weights = {} dim = {} K = {} wellformed = {}",
            c.mu,
            c.u,
            format_weights(&c.weights),
            c.dim,
            c.canonical,
            yes_no(c.wellformed)
        );
        if let Some(d) = &c.degree {
            let _ = write!(text, " degree = {d}");
        }
        if let Some(o) = &c.orbifold {
            let _ = write!(text, " orbifold points = {}", o.count);
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{} candidates", candidates.len());
    Ok(Output::new(text, &SearchOut { spec, candidates }))
}

pub fn cmd_check(what: &CheckWhat, cli: &Cli) -> Output {
    let method = if cli.exact { RankMethod::Exact } else { RankMethod::Modular };
    let summary: CheckSummary = match what {
        CheckWhat::Equations => check::check_equations(method),
        CheckWhat::Weyl => check::check_weyl(),
        CheckWhat::Reps => check::check_reps(),
        CheckWhat::Cross { samples, terms } => {
            check::check_cross(*samples, cli.seed, *terms, cli.workers)
        }
    };
    let mut text = String::new();
    for i in &summary.items {
        let _ = writeln!(text, "[{}] {}: {}", if i.passed { "ok" } else { "FAIL" }, i.name, i.detail);
    }
    let _ = writeln!(text, "check {}: {}", summary.check, if summary.passed { "passed" } else { "FAILED" });
    let mut out = Output::new(text, &summary);
    out.failed = !summary.passed;
    out
}

pub fn cmd_rep(hw: [u32; 4], with_character: bool, with_sym2: bool) -> Result<Output, CliError> {
    let w = DominantWeight::from_dynkin(hw);
    let dim = weyl_dim(&w)?;
    let homogeneous = if hw == [0; 4] {
        None
    } else {
        let h = homogeneous_dims(&w)?;
        Some((h.parabolic_dim, h.variety_dim, h.codim))
    };
    let character = if with_character {
        Some(character(&w)?.entries().iter().map(|(v, m)| (v.to_string(), *m)).collect::<Vec<_>>())
    } else {
        None
    };
    let sym2 = if with_sym2 {
        let mut v = Vec::new();
        for (l, m) in sym2_decompose(&w)? {
            v.push((l.to_string(), weyl_dim(&l)?, m));
        }
        Some(v)
    } else {
        None
    };
    let mut text = format!("highest weight {w}: dim {dim}\n");
    if let Some((p, v, c)) = homogeneous {
        let _ = writeln!(text, "parabolic dim {p}, homogeneous variety dim {v}, codim {c}");
    }
    if let Some(ch) = &character {
        let _ = writeln!(text, "character ({} weights):", ch.len());
        for (v, m) in ch {
            let _ = writeln!(text, "  {v} x{m}");
        }
    }
    if let Some(s) = &sym2 {
        let parts: Vec<String> = s.iter().map(|(l, d, m)| format!("{m} x V{l} (dim {d})")).collect();
        let _ = writeln!(text, "sym2: {}", parts.join(" + "));
    }
    Ok(Output::new(text, &RepOut { highest_weight: hw, dim, homogeneous, character, sym2 }))
}
