//! Command-line surface: argument parsing, run configuration, and report
//! rendering for the `primefeas` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use primefeas::bigpoly::IntPoly;
use primefeas::bounds::{BoundConstants, BoundSet, PolySystem};
use primefeas::decide::{phfeas_system, DecideConfig, Verdict};
use primefeas::density::{frobenius_density, DensityReport, SweepConfig, Sweeper};
use primefeas::example::{self, DensityMode};
use primefeas::ideals::{ideal_sweep, IdealReport, NumberFieldCtx};
use primefeas::primes::{SieveCache, SieveOptions, CACHE_DIR_ENV};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug, Clone)]
#[command(name = "primefeas", version, about = "Polynomial system feasibility by counting primes with roots mod p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for sampled runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Comma-separated report checkpoints (default: powers of ten).
    #[arg(long, global = true, value_delimiter = ',')]
    pub checkpoints: Vec<u64>,
    /// Sieve cache directory; falls back to $PRIMEFEAS_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Override a constant, e.g. `--constant mrh.C=3`. Repeatable.
    #[arg(long = "constant", global = true, value_name = "KEY=VALUE", value_parser = parse_key_value)]
    pub constants: Vec<(String, String)>,
    /// TOML file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Closed-form bounds for a system.
    Bounds { input: PathBuf },
    /// Prime sweep of π_f (one polynomial) or π_F (univariate system).
    Density {
        input: PathBuf,
        #[arg(long)]
        x_max: u64,
    },
    /// Prime-ideal counts for Q[x]/(f).
    Ideals {
        input: PathBuf,
        #[arg(long)]
        x_max: u64,
    },
    /// Decide complex feasibility by counting primes up to `--x-cap`.
    Decide {
        input: PathBuf,
        #[arg(long)]
        x_cap: u64,
    },
    /// Reproduce the embedded two-polynomial example.
    Example {
        /// Sweep all primes instead of a sample (slow).
        #[arg(long)]
        full: bool,
        /// Sample size for the default sampled mode.
        #[arg(long, default_value_t = example::DEFAULT_SAMPLE)]
        sample: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

fn parse_key_value(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected KEY=VALUE, got {s}"))
}

/// Defaults read from `--config`.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    threads: Option<usize>,
    format: Option<Format>,
    seed: Option<u64>,
    checkpoints: Option<Vec<u64>>,
    cache_dir: Option<PathBuf>,
    #[serde(default)]
    constants: BTreeMap<String, toml::Value>,
}

/// Everything that determines a report; echoed into its header.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub x_max: Option<u64>,
    pub x_cap: Option<u64>,
    pub checkpoints: Vec<u64>,
    pub seed: u64,
    pub threads: usize,
    pub constants: BoundConstants,
    pub format: Format,
    pub cache_dir: Option<String>,
    pub full: bool,
    pub sample: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> anyhow::Result<Self> {
        let c = &cli.common;
        let file = match &c.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                toml::from_str::<FileConfig>(&text)
                    .with_context(|| format!("parsing config {}", path.display()))?
            }
            None => FileConfig::default(),
        };
        let mut constants = BoundConstants::default();
        for (k, v) in &file.constants {
            let v = match v {
                toml::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            constants.set(k, &v)?;
        }
        for (k, v) in &c.constants {
            constants.set(k, v)?;
        }
        let cache_dir = c
            .cache_dir
            .clone()
            .or(file.cache_dir)
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from));
        let threads = c
            .threads
            .or(file.threads)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from));
        if threads == 0 {
            bail!("--threads must be at least 1");
        }
        let checkpoints = if c.checkpoints.is_empty() {
            file.checkpoints.unwrap_or_default()
        } else {
            c.checkpoints.clone()
        };
        let mut cfg = RunConfig {
            subcommand: String::new(),
            inputs: Vec::new(),
            x_max: None,
            x_cap: None,
            checkpoints,
            seed: c.seed.or(file.seed).unwrap_or(0),
            threads,
            constants,
            format: c.format.or(file.format).unwrap_or_default(),
            cache_dir: cache_dir.map(|p| p.display().to_string()),
            full: false,
            sample: None,
        };
        match &cli.command {
            Command::Bounds { input } => {
                cfg.subcommand = "bounds".into();
                cfg.inputs.push(input.display().to_string());
            }
            Command::Density { input, x_max } => {
                cfg.subcommand = "density".into();
                cfg.inputs.push(input.display().to_string());
                cfg.x_max = Some(*x_max);
            }
            Command::Ideals { input, x_max } => {
                cfg.subcommand = "ideals".into();
                cfg.inputs.push(input.display().to_string());
                cfg.x_max = Some(*x_max);
            }
            Command::Decide { input, x_cap } => {
                cfg.subcommand = "decide".into();
                cfg.inputs.push(input.display().to_string());
                cfg.x_cap = Some(*x_cap);
            }
            Command::Example { full, sample } => {
                cfg.subcommand = "example".into();
                cfg.full = *full;
                cfg.sample = (!full).then_some(*sample);
            }
        }
        Ok(cfg)
    }

    fn sieve(&self) -> SieveOptions {
        SieveOptions {
            segment_odds: 0,
            cache: self.cache_dir.as_ref().map(SieveCache::new),
        }
    }

    fn sweep(&self) -> SweepConfig {
        SweepConfig {
            checkpoints: self.checkpoints.clone(),
            sieve: self.sieve(),
            ..SweepConfig::default()
        }
    }
}

/// Rendered command result.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub exit_code: u8,
}

/// A command's result before the header is attached.
struct Body {
    csv: String,
    json: Value,
    notes: Vec<String>,
    exit_code: u8,
}

/// Report text without its `#` header lines.
pub fn report_body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

pub fn run(cli: &Cli) -> anyhow::Result<Output> {
    let cfg = RunConfig::from_cli(cli)?;
    run_config(&cfg)
}

pub fn run_config(cfg: &RunConfig) -> anyhow::Result<Output> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .context("building worker pool")?;
    let start = Instant::now();
    let body = pool.install(|| dispatch(cfg))?;
    let wall = start.elapsed().as_secs_f64();
    let text = match cfg.format {
        Format::Csv => {
            let mut out = String::new();
            writeln!(out, "# primefeas {VERSION}").unwrap();
            writeln!(out, "# config: {}", serde_json::to_string(cfg)?).unwrap();
            writeln!(out, "# wall_time_s: {wall:.3}").unwrap();
            for n in &body.notes {
                writeln!(out, "# {n}").unwrap();
            }
            out.push_str(&body.csv);
            out
        }
        Format::Json => {
            let v = json!({
                "tool": "primefeas",
                "version": VERSION,
                "config": cfg,
                "wall_time_s": wall,
                "notes": body.notes,
                "report": body.json,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    Ok(Output {
        text,
        exit_code: body.exit_code,
    })
}

fn dispatch(cfg: &RunConfig) -> anyhow::Result<Body> {
    match cfg.subcommand.as_str() {
        "bounds" => {
            let s = load_system(Path::new(&cfg.inputs[0]))?;
            Ok(bounds_body(&cmd_bounds(&s, cfg)?))
        }
        "density" => {
            let s = load_system(Path::new(&cfg.inputs[0]))?;
            let r = cmd_density(&s, cfg.x_max.expect("density has x_max"), cfg)?;
            Ok(density_body(&r))
        }
        "ideals" => {
            let s = load_system(Path::new(&cfg.inputs[0]))?;
            let r = cmd_ideals(&s, cfg.x_max.expect("ideals has x_max"), cfg)?;
            let mut notes = Vec::new();
            if let Some(d) = &r.disc_f {
                notes.push(format!("disc_f: {d}"));
            }
            notes.extend(r.invariant_violations().into_iter().map(|v| format!("violation: {v}")));
            Ok(Body {
                csv: r.to_csv(),
                json: serde_json::to_value(&r)?,
                notes,
                exit_code: 0,
            })
        }
        "decide" => {
            let s = load_system(Path::new(&cfg.inputs[0]))?;
            let v = cmd_decide(&s, cfg.x_cap.expect("decide has x_cap"), cfg)?;
            Ok(verdict_body(&v))
        }
        "example" => {
            let r = cmd_example(cfg)?;
            Ok(example_body(&r))
        }
        other => bail!("unknown subcommand {other}"),
    }
}

/// Read a polynomial system: JSON if the file starts with `[` or `{`,
/// otherwise one polynomial per line.
pub fn load_system(path: &Path) -> anyhow::Result<PolySystem> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_system(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_system(text: &str) -> anyhow::Result<PolySystem> {
    let json = matches!(text.trim_start().chars().next(), Some('[' | '{'));
    Ok(if json {
        PolySystem::parse_json(text)?
    } else {
        PolySystem::parse_text(text)?
    })
}

fn univariate(s: &PolySystem, what: &str) -> anyhow::Result<Vec<IntPoly>> {
    s.as_univariate()
        .with_context(|| format!("{what} needs univariate input; got {} variables", s.n))
}

pub fn cmd_bounds(s: &PolySystem, cfg: &RunConfig) -> anyhow::Result<BoundSet> {
    Ok(BoundSet::compute(s, cfg.constants)?)
}

pub fn cmd_density(s: &PolySystem, x_max: u64, cfg: &RunConfig) -> anyhow::Result<DensityReport> {
    let fs = univariate(s, "density")?;
    let sweep = cfg.sweep();
    Ok(Sweeper::system(&fs, sweep.resultant_limit)?.sweep(x_max, &sweep)?)
}

pub fn cmd_ideals(s: &PolySystem, x_max: u64, cfg: &RunConfig) -> anyhow::Result<IdealReport> {
    let fs = univariate(s, "ideals")?;
    let [f] = fs.as_slice() else {
        bail!("ideals needs exactly one polynomial, got {}", fs.len());
    };
    let ctx = NumberFieldCtx::new(f)?;
    Ok(ideal_sweep(&ctx, x_max, &cfg.checkpoints, &cfg.sieve())?)
}

pub fn cmd_decide(s: &PolySystem, x_cap: u64, cfg: &RunConfig) -> anyhow::Result<Verdict> {
    let mut dc = DecideConfig::new(x_cap);
    dc.constants = cfg.constants;
    dc.sweep = cfg.sweep();
    Ok(phfeas_system(s, &dc)?)
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ExampleReport {
    pub checksum_ok: bool,
    pub bounds: BoundSet,
    pub density: DensityReport,
    /// Share of the examined primes with a common root.
    pub fraction: f64,
}

pub fn cmd_example(cfg: &RunConfig) -> anyhow::Result<ExampleReport> {
    if !example::checksum_ok() {
        bail!("embedded example polynomials do not match their checksum");
    }
    let bounds = example::bounds(cfg.constants)?;
    let mode = match cfg.sample {
        Some(size) if !cfg.full => DensityMode::Sampled {
            size,
            seed: cfg.seed,
        },
        _ => DensityMode::Full,
    };
    let density = example::density(mode, &cfg.sweep())?;
    let fraction = frobenius_density(&density)?.density;
    Ok(ExampleReport {
        checksum_ok: true,
        bounds,
        density,
        fraction,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn bounds_csv(b: &BoundSet) -> String {
    let rows: [(&str, String); 14] = [
        ("n", b.n.to_string()),
        ("k", b.k.to_string()),
        ("max_degree", b.max_degree.to_string()),
        ("max_height", b.max_height.to_string()),
        ("bit_size", b.bit_size.to_string()),
        ("a_f", b.a_f.to_string()),
        ("a_f_literal", b.a_f_literal.to_string()),
        ("a_f_grouped", b.a_f_grouped.to_string()),
        ("log_alpha_bound", opt(&b.log_alpha_bound)),
        ("robin_omega", opt(&b.robin_omega)),
        ("naive_omega", opt(&b.naive_omega)),
        ("best_prime_bound", b.best_prime_bound().to_string()),
        ("t_f_log", b.t_f_log.to_string()),
        ("log_delta_bound", b.log_delta_bound.to_string()),
    ];
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        writeln!(out, "{k},{v}").unwrap();
    }
    out
}

fn bounds_body(b: &BoundSet) -> Body {
    Body {
        csv: bounds_csv(b),
        json: serde_json::to_value(b).expect("bounds serialize"),
        notes: vec![b.parametric_note.clone()],
        exit_code: 0,
    }
}

fn density_notes(r: &DensityReport) -> Vec<String> {
    let mut notes = r.notes.clone();
    if let Some(label) = &r.label {
        notes.push(format!("counts are a {label}"));
    }
    if !r.reasons.is_empty() {
        let reasons: Vec<String> = r.reasons.iter().map(|(k, v)| format!("{k}={v}")).collect();
        notes.push(format!("exceptional primes: {}", reasons.join(" ")));
    }
    if let Ok(est) = frobenius_density(r) {
        notes.push(format!(
            "density pi_f/pi = {:.6}, implied s_f = pi/pi_f = {:.6}",
            est.density, est.implied_s_f
        ));
    }
    notes.extend(r.invariant_violations().into_iter().map(|v| format!("violation: {v}")));
    notes
}

fn density_body(r: &DensityReport) -> Body {
    Body {
        csv: r.to_csv(),
        json: serde_json::to_value(r).expect("report serializes"),
        notes: density_notes(r),
        exit_code: 0,
    }
}

fn verdict_body(v: &Verdict) -> Body {
    let mut csv = String::from("key,value\n");
    for (k, val) in [
        ("feasible", v.feasible.to_string()),
        ("M", v.m.to_string()),
        ("threshold", v.threshold.to_string()),
        ("bound", v.bound.to_string()),
        ("x_used", v.x_used.to_string()),
        ("mode", serde_json::to_value(v.mode).unwrap().to_string().trim_matches('"').to_string()),
        ("heuristic_flag", v.heuristic_flag.to_string()),
        ("oracle_agrees", opt(&v.oracle_agrees)),
        ("m_is_lower_bound", v.m_is_lower_bound.to_string()),
        ("experimental", v.experimental.to_string()),
    ] {
        writeln!(csv, "{k},{val}").unwrap();
    }
    let mut notes = Vec::new();
    if v.experimental {
        notes.push("experimental: multivariate input searched by brute force".into());
    }
    if v.heuristic_flag {
        notes.push("heuristic: x_used is below the parametric t(F)".into());
    }
    Body {
        csv,
        json: serde_json::to_value(v).expect("verdict serializes"),
        notes,
        exit_code: if v.feasible { 0 } else { 1 },
    }
}

fn example_body(r: &ExampleReport) -> Body {
    let mut csv = bounds_csv(&r.bounds);
    csv.push('\n');
    csv.push_str(&r.density.to_csv());
    csv.push('\n');
    csv.push_str("fraction,std_error\n");
    let se = r.density.sample.as_ref().map(|s| s.std_error);
    writeln!(csv, "{},{}", r.fraction, opt(&se)).unwrap();
    let mut notes = vec![r.bounds.parametric_note.clone()];
    notes.extend(density_notes(&r.density));
    Body {
        csv,
        json: serde_json::to_value(r).expect("example serializes"),
        notes,
        exit_code: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("primefeas").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_reach_the_config() {
        let c = cli(&[
            "density", "f.txt", "--x-max", "1000", "--threads", "3", "--seed", "5",
            "--checkpoints", "10,500", "--constant", "mrh.C=3", "--format", "json",
            "--cache-dir", "/tmp/x",
        ]);
        let cfg = RunConfig::from_cli(&c).unwrap();
        assert_eq!(cfg.subcommand, "density");
        assert_eq!(cfg.x_max, Some(1000));
        assert_eq!(cfg.threads, 3);
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.checkpoints, vec![10, 500]);
        assert_eq!(cfg.constants.mrh_c, 3.0);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.cache_dir.as_deref(), Some("/tmp/x"));
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "threads = 2\nseed = 9\n[constants]\n\"tf.c_scale\" = 4.0\n\"af.parse\" = \"grouped\"\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let cfg = RunConfig::from_cli(&cli(&["example", "--config", p, "--seed", "1"])).unwrap();
        assert_eq!((cfg.threads, cfg.seed), (2, 1));
        assert_eq!(cfg.constants.tf_c_scale, 4.0);
        assert_eq!(cfg.constants.af_parse, primefeas::bounds::AfParse::Grouped);
        assert_eq!(cfg.sample, Some(example::DEFAULT_SAMPLE));
    }

    #[test]
    fn bad_constant_is_rejected() {
        assert!(RunConfig::from_cli(&cli(&["example", "--constant", "nope=1"])).is_err());
        assert!(Cli::try_parse_from(["primefeas", "example", "--constant", "novalue"]).is_err());
    }

    #[test]
    fn input_format_detection() {
        assert_eq!(parse_system("x^2 + 1\n").unwrap().k(), 1);
        assert_eq!(parse_system("[[[2,\"1\"],[0,\"1\"]], [[1,\"1\"]]]").unwrap().k(), 2);
    }

    #[test]
    fn report_body_drops_header() {
        assert_eq!(report_body("# a\nx,y\n# b\n1,2\n"), "x,y\n1,2\n");
    }
}
