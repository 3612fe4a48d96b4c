//! Run configuration: command-line flags merged over an optional key=value
//! file merged over defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;

/// A usage error. The binary maps it to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Flags shared by every command. Every field is optional so that a config
/// file can supply the value when the flag is absent.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Fermion mass.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Electric charge.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Vector background a as t,x,y,z.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Axial background b as t,x,y,z.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Three-momentum as x,y,z.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Magnitude of the photon wave vector.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Uniform magnetic field along z.
    #[arg(long = "B0", global = true, allow_hyphen_values = true)]
    pub b0_field: Option<String>,
    /// Chern-Simons mass of the 2+1D gauge field.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Gauge parameter; `inf` selects the Landau limit.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Time component of the Chern-Simons vector eta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta0: Option<String>,
    /// Sweep as var:start:stop:steps.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sweep: Option<String>,
    /// Output format.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized oracles.
    #[arg(long, global = true)]
    pub seed: Option<String>,
    /// Append independent-oracle columns.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Compare against the oracle and exit 1 when the deviation exceeds the tolerance.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Reporting tolerance for --verify.
    #[arg(long, global = true)]
    pub tolerance: Option<String>,
    /// Highest orbital quantum number for the zeeman table.
    #[arg(long, global = true)]
    pub lmax: Option<String>,
    /// Principal quantum number for the zeeman oracle.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Flat key=value file with defaults for any of the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn parse(text: &str) -> anyhow::Result<Sweep> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 {
            return Err(usage(format!(
                "sweep must be var:start:stop:steps, got {text:?}"
            )));
        }
        let start = parse_f64("sweep start", parts[1])?;
        let stop = parse_f64("sweep stop", parts[2])?;
        let steps: usize = parts[3].trim().parse().map_err(|_| {
            usage(format!(
                "sweep steps must be a positive integer, got {:?}",
                parts[3]
            ))
        })?;
        if steps < 1 {
            return Err(usage("sweep steps must be at least 1"));
        }
        if start > stop {
            return Err(usage(format!("sweep start {start} exceeds stop {stop}")));
        }
        Ok(Sweep {
            variable: parts[0].trim().to_string(),
            start,
            stop,
            steps,
        })
    }

    /// Evenly spaced points, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / n)
            .collect()
    }
}

/// Fully resolved inputs of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: f64,
    pub e: f64,
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub p: [f64; 3],
    pub k: f64,
    pub b0_field: f64,
    pub theta: f64,
    /// `None` is the Landau limit.
    pub lambda: Option<f64>,
    pub eta0: Option<f64>,
    pub sweep: Option<Sweep>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub oracle: bool,
    pub verify: bool,
    pub tolerance: Option<f64>,
    pub lmax: u32,
    pub n: Option<u32>,
}

fn parse_f64(name: &str, text: &str) -> anyhow::Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| usage(format!("{name}: expected a number, got {text:?}")))?;
    if !v.is_finite() {
        return Err(usage(format!("{name}: value must be finite")));
    }
    Ok(v)
}

fn parse_list<const N: usize>(name: &str, text: &str) -> anyhow::Result<[f64; N]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(usage(format!(
            "{name}: expected {N} comma-separated numbers, got {text:?}"
        )));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = parse_f64(name, part)?;
    }
    Ok(out)
}

fn parse_bool(name: &str, text: &str) -> anyhow::Result<bool> {
    match text.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(usage(format!(
            "{name}: expected true or false, got {other:?}"
        ))),
    }
}

const KNOWN_KEYS: &[&str] = &[
    "m",
    "e",
    "a",
    "b",
    "p",
    "k",
    "B0",
    "theta",
    "lambda",
    "eta0",
    "sweep",
    "format",
    "out",
    "seed",
    "oracle",
    "verify",
    "tolerance",
    "lmax",
    "n",
];

/// Parse a flat key=value file. Blank lines and lines starting with `#` are ignored.
pub fn read_config_file(path: &Path) -> anyhow::Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| usage(format!("cannot read config {}: {err}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "{}:{}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(usage(format!(
                "{}:{}: unknown key {key:?}",
                path.display(),
                lineno + 1
            )));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    /// Merge flags over the config file over defaults.
    pub fn resolve(args: &CommonArgs) -> anyhow::Result<RunConfig> {
        let file = match &args.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let pick = |flag: &Option<String>, key: &str| -> Option<String> {
            flag.clone().or_else(|| file.get(key).cloned())
        };
        let num = |flag: &Option<String>, key: &str, default: f64| -> anyhow::Result<f64> {
            pick(flag, key).map_or(Ok(default), |t| parse_f64(key, &t))
        };
        let opt_num = |flag: &Option<String>, key: &str| -> anyhow::Result<Option<f64>> {
            pick(flag, key).map(|t| parse_f64(key, &t)).transpose()
        };
        let m = num(&args.m, "m", 1.0)?;
        if !(m > 0.0) {
            return Err(usage("m must be positive"));
        }
        let lambda = match pick(&args.lambda, "lambda") {
            None => Some(1.0),
            Some(t) if matches!(t.trim(), "inf" | "landau") => None,
            Some(t) => Some(parse_f64("lambda", &t)?),
        };
        let format = match pick(&args.format, "format").as_deref().map(str::trim) {
            None => None,
            Some("csv") => Some(Format::Csv),
            Some("json") => Some(Format::Json),
            Some(other) => return Err(usage(format!("format must be csv or json, got {other:?}"))),
        };
        let tolerance = opt_num(&args.tolerance, "tolerance")?;
        if let Some(t) = tolerance {
            if !(t > 0.0) {
                return Err(usage("tolerance must be positive"));
            }
        }
        let seed = match pick(&args.seed, "seed") {
            None => 0,
            Some(t) => t
                .trim()
                .parse()
                .map_err(|_| usage(format!("seed must be a nonnegative integer, got {t:?}")))?,
        };
        let int = |flag: &Option<String>, key: &str| -> anyhow::Result<Option<u32>> {
            pick(flag, key)
                .map(|t| {
                    t.trim().parse::<u32>().map_err(|_| {
                        usage(format!("{key} must be a nonnegative integer, got {t:?}"))
                    })
                })
                .transpose()
        };
        let oracle = args.oracle
            || file
                .get("oracle")
                .map(|t| parse_bool("oracle", t))
                .transpose()?
                .unwrap_or(false);
        let verify = args.verify
            || file
                .get("verify")
                .map(|t| parse_bool("verify", t))
                .transpose()?
                .unwrap_or(false);
        Ok(RunConfig {
            m,
            e: num(&args.e, "e", 1.0)?,
            a: pick(&args.a, "a").map_or(Ok([0.0; 4]), |t| parse_list("a", &t))?,
            b: pick(&args.b, "b").map_or(Ok([0.0; 4]), |t| parse_list("b", &t))?,
            p: pick(&args.p, "p").map_or(Ok([0.0; 3]), |t| parse_list("p", &t))?,
            k: num(&args.k, "k", 1.0)?,
            b0_field: num(&args.b0_field, "B0", 0.1)?,
            theta: num(&args.theta, "theta", 1.0)?,
            lambda,
            eta0: opt_num(&args.eta0, "eta0")?,
            sweep: pick(&args.sweep, "sweep")
                .map(|t| Sweep::parse(&t))
                .transpose()?,
            format,
            out: args
                .out
                .clone()
                .or_else(|| file.get("out").map(PathBuf::from)),
            seed,
            oracle,
            verify,
            tolerance,
            lmax: int(&args.lmax, "lmax")?.unwrap_or(2),
            n: int(&args.n, "n")?,
        })
    }

    /// Sweep points for `variable` names in `allowed`, or a single unswept point.
    pub fn sweep_points(&self, allowed: &[&str]) -> anyhow::Result<Vec<Option<(String, f64)>>> {
        match &self.sweep {
            None => Ok(vec![None]),
            Some(s) if allowed.contains(&s.variable.as_str()) => Ok(s
                .points()
                .into_iter()
                .map(|x| Some((s.variable.clone(), x)))
                .collect()),
            Some(s) => Err(usage(format!(
                "cannot sweep {:?} here; choose one of {}",
                s.variable,
                allowed.join(", ")
            ))),
        }
    }
}
