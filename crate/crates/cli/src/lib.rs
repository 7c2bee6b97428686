//! Command-line front end. `run` holds all behavior so it can be tested
//! without spawning a process.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use infkl::emit::to_json;
use infkl::kl::{kl_a_closed, kl_a_iterated, kl_c_closed, kl_c_iterated, specialize_split};
use infkl::verify::run_suite;
use infkl::{
    build_fgl, ClassPoly, Error, GradedPoly, GrassmannSetup, LagrangianSetup, SegreContext, Setup, Suite,
    SuiteConfig,
};

pub const WORKERS_ENV: &str = "INFKL_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "infkl", version, about = "Exact Kempf-Laksov classes in even infinitesimal cohomology")]
struct Cli {
    /// TOML file with defaults (`m`, `out`, `seed`, `max_m`, `samples`, `workers`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the formal group law u (+) v.
    PrintFgl(FglArgs),
    /// Relative Segre class S_k(E - F) of split bundles.
    Segre(SegreArgs),
    /// Kempf-Laksov class of a Grassmann (A) or Lagrangian (C) degeneracy locus.
    Kl(KlArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct FglArgs {
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
}

#[derive(Args, Debug)]
struct SegreArgs {
    #[arg(long)]
    m: Option<u32>,
    /// Comma-separated Chern roots of E, e.g. `x1,x2`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    e_roots: String,
    /// Comma-separated Chern roots of F.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    f_roots: String,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
}

#[derive(Args, Debug)]
struct KlArgs {
    #[arg(long = "type", value_enum)]
    kind: KlType,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: u32,
    /// Subbundle rank (type A only).
    #[arg(long)]
    d: Option<u32>,
    /// Comma-separated parts, e.g. `2,1`.
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
    #[arg(long, value_enum, default_value_t = PathChoice::Closed)]
    path: PathChoice,
    /// Substitute the split-bundle Segre classes for the symbols.
    #[arg(long)]
    specialize: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutFormat {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KlType {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    Closed,
    Iterated,
    Both,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    m: Option<u32>,
    out: Option<OutFormat>,
    seed: Option<u64>,
    max_m: Option<u32>,
    samples: Option<usize>,
    workers: Option<usize>,
}

fn load_config(path: Option<&Path>) -> Result<Config, String> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

/// Worker count: the config value, capped by the environment variable.
fn worker_count(cfg: &Config) -> Result<Option<usize>, String> {
    let env = match std::env::var(WORKERS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))?,
        ),
        Err(_) => None,
    };
    Ok(match (cfg.workers, env) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    })
}

enum Failure {
    Invalid(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PathDisagreement { .. } => Failure::Verify(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn render_graded(p: &GradedPoly, out: OutFormat) -> String {
    match out {
        OutFormat::Text => p.to_factored_text(),
        OutFormat::Latex => p.to_factored_latex(),
        OutFormat::Json => to_json(p).to_string(),
    }
}

fn render_class(p: &ClassPoly, out: OutFormat) -> String {
    match out {
        OutFormat::Text => p.to_string(),
        OutFormat::Latex => p.to_latex(),
        OutFormat::Json => to_json(p).to_string(),
    }
}

fn need_m(m: Option<u32>, cfg: &Config) -> Result<u32, Failure> {
    m.or(cfg.m)
        .ok_or_else(|| Failure::Invalid("--m is required (or set `m` in the config file)".into()))
}

fn parse_roots(s: &str, m: u32) -> Result<Vec<GradedPoly>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| GradedPoly::parse(r, m).map_err(Failure::from))
        .collect()
}

fn parse_lambda(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Failure::Invalid(format!("bad partition part {p:?}"))))
        .collect()
}

fn cmd_fgl(a: &FglArgs, cfg: &Config) -> Result<String, Failure> {
    let m = need_m(a.m, cfg)?;
    let fgl = build_fgl(m)?;
    Ok(render_graded(fgl.sum(), a.out.or(cfg.out).unwrap_or(OutFormat::Text)))
}

fn cmd_segre(a: &SegreArgs, cfg: &Config) -> Result<String, Failure> {
    let m = need_m(a.m, cfg)?;
    let ctx = SegreContext::new(m)?;
    let e = parse_roots(&a.e_roots, m)?;
    let f = parse_roots(&a.f_roots, m)?;
    let s = ctx.segre_virtual(a.k, &e, &f)?;
    Ok(render_graded(&s, a.out.or(cfg.out).unwrap_or(OutFormat::Text)))
}

fn cmd_kl(a: &KlArgs, cfg: &Config, log: &mut Vec<String>) -> Result<String, Failure> {
    let m = need_m(a.m, cfg)?;
    let lambda = parse_lambda(&a.lambda)?;
    let setup = match a.kind {
        KlType::A => {
            let d = a
                .d
                .ok_or_else(|| Failure::Invalid("--d is required for type A".into()))?;
            Setup::A(GrassmannSetup::new(a.n, d, &lambda, m)?)
        }
        KlType::C => {
            if a.d.is_some() {
                return Err(Failure::Invalid("--d applies to type A only".into()));
            }
            Setup::C(LagrangianSetup::new(a.n, &lambda, m)?)
        }
    };
    let closed = || match &setup {
        Setup::A(g) => kl_a_closed(g),
        Setup::C(c) => kl_c_closed(c),
    };
    let iterated = || match &setup {
        Setup::A(g) => kl_a_iterated(g),
        Setup::C(c) => kl_c_iterated(c),
    };
    let class = match a.path {
        PathChoice::Closed => closed()?,
        PathChoice::Iterated => iterated()?,
        PathChoice::Both => {
            let (c, i) = rayon::join(closed, iterated);
            let (c, i) = (c?, i?);
            if c != i {
                return Err(Failure::Verify(format!(
                    "closed and iterated results differ; residual {}",
                    &c - &i
                )));
            }
            log.push(format!("closed and iterated results agree ({} terms)", c.len()));
            c
        }
    };
    let out = a.out.or(cfg.out).unwrap_or(OutFormat::Text);
    if a.specialize {
        Ok(render_graded(&specialize_split(&class, &setup)?, out))
    } else {
        Ok(render_class(&class, out))
    }
}

fn cmd_verify(a: &VerifyArgs, cfg: &Config) -> Result<String, Failure> {
    let suite: Suite = a.suite.parse()?;
    let defaults = SuiteConfig::default();
    let sc = SuiteConfig {
        max_m: a.max_m.or(cfg.max_m),
        seed: a.seed.or(cfg.seed).unwrap_or(defaults.seed),
        samples: a.samples.or(cfg.samples).unwrap_or(defaults.samples),
    };
    let reports = run_suite(suite, &sc);
    let text: String = reports.iter().map(|r| r.to_string()).collect();
    if reports.iter().all(|r| r.passed()) {
        Ok(text.trim_end().to_string())
    } else {
        Err(Failure::Verify(text.trim_end().to_string()))
    }
}

/// Parses `args` (including the program name) and executes the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let cfg = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INVALID;
        }
    };
    let workers = match worker_count(&cfg) {
        Ok(w) => w,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INVALID;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_INVALID;
        }
    };
    if let Command::Verify(a) = &cli.command {
        if a.suite.parse::<Suite>().is_ok() {
            let _ = writeln!(err, "running suite {}", a.suite);
        }
    }
    let (result, log) = pool.install(|| {
        let mut log = Vec::new();
        let result = match &cli.command {
            Command::PrintFgl(a) => cmd_fgl(a, &cfg),
            Command::Segre(a) => cmd_segre(a, &cfg),
            Command::Kl(a) => cmd_kl(a, &cfg, &mut log),
            Command::Verify(a) => cmd_verify(a, &cfg),
        };
        (result, log)
    });
    for line in log {
        let _ = writeln!(err, "{line}");
    }
    match result {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(out, "{msg}");
            let _ = writeln!(err, "verification failed");
            EXIT_VERIFY_FAILED
        }
    }
}
