//! Command-line front end: config parsing and the experiment runners.
//!
//! Config files are flat `section.key = value` lines with `#` comments, and
//! any key can be overridden on the command line as `--section.key value`.
//! Subcommands: `quadrature`, `converge`, `simulate`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::diagnostics::{convergence_table, ConvergenceSetup, SeriesRecorder};
use crate::grid::{Field, Grid2};
use crate::integrator::{IntegratorError, SchemeSpec, StepContext};
use crate::model::Nonlinearity;
use crate::operator::StabilizedOperator;
use crate::quadrature::{build_rule, QuadratureFamily, QuadratureRule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BLOWUP: i32 = 3;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {msg}")]
    BadValue { line: usize, key: String, msg: String },
}

/// Which of the paper's initial data to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    /// `0.1 sin x sin y`
    Sine,
    /// iid uniform draws in `[lo, hi]`, row-major, from a seeded PRNG
    Random { lo: f64, hi: f64 },
    /// two tangent circles: `-beta tanh[(x^2+(y-0.3)^2-0.29^2)/eps^2]
    ///                             tanh[(x^2+(y+0.3)^2-0.29^2)/eps^2]`
    TwoCircles,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    Polynomial,
    FloryHuggins,
}

/// Fully parsed experiment configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,

    pub model: ModelKind,
    pub epsilon: f64,
    pub theta: f64,
    pub theta_c: f64,
    pub kappa_override: Option<f64>,
    pub eps_scaling: bool,

    pub order: usize,
    pub family: QuadratureFamily,
    pub nodes_per_level: Option<Vec<usize>>,
    pub tau: f64,
    pub allow_non_mbp: bool,

    pub t_final: f64,
    pub record_every: usize,
    pub snapshot_times: Vec<f64>,
    pub seed: u64,
    pub out_dir: PathBuf,

    pub ic: InitialCondition,

    pub converge_orders: Vec<usize>,
    pub converge_taus: Vec<f64>,
    pub reference_tau: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let two_pi = 2.0 * std::f64::consts::PI;
        Self {
            nx: 128,
            ny: 128,
            x0: 0.0,
            x1: two_pi,
            y0: 0.0,
            y1: two_pi,
            model: ModelKind::Polynomial,
            epsilon: 0.1,
            theta: 0.8,
            theta_c: 1.6,
            kappa_override: None,
            eps_scaling: false,
            order: 2,
            family: QuadratureFamily::LeftRadau,
            nodes_per_level: None,
            tau: 0.1,
            allow_non_mbp: false,
            t_final: 1.0,
            record_every: 1,
            snapshot_times: vec![0.0, 0.25, 0.5, 1.0, 1.5],
            seed: 42,
            out_dir: PathBuf::from("out"),
            ic: InitialCondition::Sine,
            converge_orders: vec![2, 3, 4, 5],
            converge_taus: vec![0.1, 0.05, 0.025, 0.0125],
            reference_tau: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::BadValue {
        line,
        key: key.to_string(),
        msg: e.to_string(),
    })
}

fn parse_list<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(line, key, s))
        .collect()
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(ConfigError::BadValue {
            line,
            key: key.to_string(),
            msg: format!("expected boolean, got `{other}`"),
        }),
    }
}

impl RunConfig {
    /// Parse a config file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Malformed { line, text: raw.to_string() });
            };
            cfg.set(line, key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Apply one `key = value` assignment (used for both file lines and
    /// command-line overrides).
    pub fn set(&mut self, line: usize, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "grid.nx" => self.nx = parse_num(line, key, value)?,
            "grid.ny" => self.ny = parse_num(line, key, value)?,
            "grid.n" => {
                self.nx = parse_num(line, key, value)?;
                self.ny = self.nx;
            }
            "grid.x0" => self.x0 = parse_num(line, key, value)?,
            "grid.x1" => self.x1 = parse_num(line, key, value)?,
            "grid.y0" => self.y0 = parse_num(line, key, value)?,
            "grid.y1" => self.y1 = parse_num(line, key, value)?,
            "model.model" => {
                self.model = match value {
                    "polynomial" => ModelKind::Polynomial,
                    "flory_huggins" => ModelKind::FloryHuggins,
                    other => {
                        return Err(ConfigError::BadValue {
                            line,
                            key: key.to_string(),
                            msg: format!("expected polynomial | flory_huggins, got `{other}`"),
                        })
                    }
                }
            }
            "model.epsilon" => self.epsilon = parse_num(line, key, value)?,
            "model.theta" => self.theta = parse_num(line, key, value)?,
            "model.theta_c" => self.theta_c = parse_num(line, key, value)?,
            "model.kappa_override" => self.kappa_override = Some(parse_num(line, key, value)?),
            "model.eps_scaling" => self.eps_scaling = parse_bool(line, key, value)?,
            "scheme.order" => self.order = parse_num(line, key, value)?,
            "scheme.quadrature_family" => {
                self.family = QuadratureFamily::parse(value).ok_or_else(|| ConfigError::BadValue {
                    line,
                    key: key.to_string(),
                    msg: format!("unknown quadrature family `{value}`"),
                })?
            }
            "scheme.nodes_per_level" => self.nodes_per_level = Some(parse_list(line, key, value)?),
            "scheme.tau" => self.tau = parse_num(line, key, value)?,
            "scheme.allow_non_mbp" => self.allow_non_mbp = parse_bool(line, key, value)?,
            "run.t_final" => self.t_final = parse_num(line, key, value)?,
            "run.record_every" => self.record_every = parse_num(line, key, value)?,
            "run.snapshot_times" => self.snapshot_times = parse_list(line, key, value)?,
            "run.seed" => self.seed = parse_num(line, key, value)?,
            "run.out" => self.out_dir = PathBuf::from(value),
            "ic.preset" => {
                self.ic = match value {
                    "sine" => InitialCondition::Sine,
                    "random" => InitialCondition::Random { lo: -0.8, hi: 0.8 },
                    "two_circles" => InitialCondition::TwoCircles,
                    other => {
                        return Err(ConfigError::BadValue {
                            line,
                            key: key.to_string(),
                            msg: format!("expected sine | random | two_circles, got `{other}`"),
                        })
                    }
                }
            }
            "ic.lo" => match &mut self.ic {
                InitialCondition::Random { lo, .. } => *lo = parse_num(line, key, value)?,
                _ => self.ic = InitialCondition::Random { lo: parse_num(line, key, value)?, hi: 0.8 },
            },
            "ic.hi" => match &mut self.ic {
                InitialCondition::Random { hi, .. } => *hi = parse_num(line, key, value)?,
                _ => self.ic = InitialCondition::Random { lo: -0.8, hi: parse_num(line, key, value)? },
            },
            "converge.orders" => self.converge_orders = parse_list(line, key, value)?,
            "converge.taus" => self.converge_taus = parse_list(line, key, value)?,
            "converge.reference_tau" => self.reference_tau = Some(parse_num(line, key, value)?),
            _ => {
                return Err(ConfigError::UnknownKey { line, key: key.to_string() });
            }
        }
        Ok(())
    }

    /// Serialized form of every setting, written next to run outputs.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "grid.nx = {}", self.nx);
        let _ = writeln!(s, "grid.ny = {}", self.ny);
        let _ = writeln!(s, "grid.x0 = {}", self.x0);
        let _ = writeln!(s, "grid.x1 = {}", self.x1);
        let _ = writeln!(s, "grid.y0 = {}", self.y0);
        let _ = writeln!(s, "grid.y1 = {}", self.y1);
        let model = match self.model {
            ModelKind::Polynomial => "polynomial",
            ModelKind::FloryHuggins => "flory_huggins",
        };
        let _ = writeln!(s, "model.model = {model}");
        let _ = writeln!(s, "model.epsilon = {}", self.epsilon);
        let _ = writeln!(s, "model.theta = {}", self.theta);
        let _ = writeln!(s, "model.theta_c = {}", self.theta_c);
        if let Some(k) = self.kappa_override {
            let _ = writeln!(s, "model.kappa_override = {k}");
        }
        let _ = writeln!(s, "model.eps_scaling = {}", self.eps_scaling);
        let _ = writeln!(s, "scheme.order = {}", self.order);
        let _ = writeln!(s, "scheme.quadrature_family = {}", self.family.name());
        if let Some(nodes) = &self.nodes_per_level {
            let list: Vec<String> = nodes.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "scheme.nodes_per_level = {}", list.join(","));
        }
        let _ = writeln!(s, "scheme.tau = {}", self.tau);
        let _ = writeln!(s, "scheme.allow_non_mbp = {}", self.allow_non_mbp);
        let _ = writeln!(s, "run.t_final = {}", self.t_final);
        let _ = writeln!(s, "run.record_every = {}", self.record_every);
        let times: Vec<String> = self.snapshot_times.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "run.snapshot_times = {}", times.join(","));
        let _ = writeln!(s, "run.seed = {}", self.seed);
        let _ = writeln!(s, "run.out = {}", self.out_dir.display());
        let ic = match self.ic {
            InitialCondition::Sine => "sine".to_string(),
            InitialCondition::Random { lo, hi } => format!("random # lo={lo} hi={hi}"),
            InitialCondition::TwoCircles => "two_circles".to_string(),
        };
        let _ = writeln!(s, "ic.preset = {ic}");
        s
    }

    pub fn build_grid(&self) -> Result<Grid2, String> {
        Grid2::new(self.nx, self.ny, self.x0, self.x1, self.y0, self.y1).map_err(|e| e.to_string())
    }

    pub fn build_model(&self) -> Result<Nonlinearity, String> {
        match self.model {
            ModelKind::Polynomial => {
                Nonlinearity::polynomial(self.kappa_override).map_err(|e| e.to_string())
            }
            ModelKind::FloryHuggins => Nonlinearity::flory_huggins(
                self.theta,
                self.theta_c,
                self.eps_scaling.then_some(self.epsilon),
                self.kappa_override,
            )
            .map_err(|e| e.to_string()),
        }
    }

    /// The operator's diffusion coefficient: `eps^2 Lap` normally, `eps Lap`
    /// under the alternative scaling law.
    pub fn operator_epsilon(&self) -> f64 {
        if self.eps_scaling {
            self.epsilon.sqrt()
        } else {
            self.epsilon
        }
    }

    pub fn build_operator(&self, grid: Grid2, kappa: f64) -> Result<StabilizedOperator, String> {
        StabilizedOperator::new(grid, self.operator_epsilon(), kappa).map_err(|e| e.to_string())
    }

    pub fn build_scheme(&self) -> Result<SchemeSpec, String> {
        match &self.nodes_per_level {
            None => SchemeSpec::new(self.order, self.family, self.tau, self.allow_non_mbp),
            Some(counts) => {
                let rules: Result<Vec<QuadratureRule>, _> = counts
                    .iter()
                    .map(|&m| build_rule(self.family, m))
                    .collect();
                SchemeSpec::with_rules(
                    self.order,
                    rules.map_err(|e| e.to_string())?,
                    self.tau,
                    self.allow_non_mbp,
                )
            }
        }
        .map_err(|e| e.to_string())
    }

    pub fn initial_condition(&self, grid: Grid2, beta: f64) -> Field {
        match self.ic {
            InitialCondition::Sine => Field::from_fn(grid, |x, y| 0.1 * x.sin() * y.sin()),
            InitialCondition::Random { lo, hi } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
                let values = (0..grid.len())
                    .map(|_| {
                        let unit = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                        lo + (hi - lo) * unit
                    })
                    .collect();
                Field { grid, values }
            }
            InitialCondition::TwoCircles => {
                let e2 = self.epsilon * self.epsilon;
                Field::from_fn(grid, |x, y| {
                    let a = (x * x + (y - 0.3) * (y - 0.3) - 0.29 * 0.29) / e2;
                    let b = (x * x + (y + 0.3) * (y + 0.3) - 0.29 * 0.29) / e2;
                    -beta * a.tanh() * b.tanh()
                })
            }
        }
    }
}

fn write_file(path: &Path, content: &[u8]) -> Result<(), String> {
    fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}

fn format_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

/// `quadrature --family <name> --nodes <m>`: nodes and weights as CSV.
pub fn cmd_quadrature(family: QuadratureFamily, nodes: usize, out: &mut impl std::io::Write) -> i32 {
    match build_rule(family, nodes) {
        Ok(rule) => {
            let _ = writeln!(out, "# family={} nodes={} degree={}", rule.family.name(), nodes, rule.degree);
            let _ = writeln!(out, "node,weight");
            for (n, w) in rule.nodes.iter().zip(&rule.weights) {
                let _ = writeln!(out, "{n:.16e},{w:.16e}");
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Convergence study against an EI5 reference run; writes `convergence.csv`.
pub fn cmd_converge(cfg: &RunConfig) -> i32 {
    match converge_impl(cfg) {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn converge_impl(cfg: &RunConfig) -> Result<(), String> {
    let grid = cfg.build_grid()?;
    let model = cfg.build_model()?;
    let op = cfg.build_operator(grid, model.kappa)?;
    let u0 = cfg.initial_condition(grid, model.beta);
    let setup = ConvergenceSetup {
        operator: &op,
        model: &model,
        u0: &u0,
        t_final: cfg.t_final,
        family: cfg.family,
    };
    let taus = &cfg.converge_taus;
    let reference_tau = cfg
        .reference_tau
        .unwrap_or_else(|| taus.last().copied().unwrap_or(cfg.tau) / 16.0);
    let rows = convergence_table(&setup, &cfg.converge_orders, taus, 5, reference_tau)
        .map_err(|e| e.to_string())?;

    fs::create_dir_all(&cfg.out_dir).map_err(|e| e.to_string())?;
    let mut csv = String::from("order,tau,l2_rel_err,l2_rate,linf_rel_err,linf_rate\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{:.16e},{:.16e},{},{:.16e},{}",
            r.order,
            r.tau,
            r.l2_rel_err,
            format_opt(r.l2_rate),
            r.linf_rel_err,
            format_opt(r.linf_rate)
        );
    }
    write_file(&cfg.out_dir.join("convergence.csv"), csv.as_bytes())?;
    write_file(&cfg.out_dir.join("config.echo"), cfg.echo().as_bytes())?;
    Ok(())
}

/// Single time-stepping run with series recording and snapshots.
/// Exit code 3 signals a detected blow-up (domain violation).
pub fn cmd_simulate(cfg: &RunConfig) -> i32 {
    match simulate_impl(cfg) {
        Ok(blew_up) => {
            if blew_up {
                EXIT_BLOWUP
            } else {
                EXIT_OK
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn simulate_impl(cfg: &RunConfig) -> Result<bool, String> {
    let grid = cfg.build_grid()?;
    let model = cfg.build_model()?;
    let op = cfg.build_operator(grid, model.kappa)?;
    let spec = cfg.build_scheme()?;
    let ctx = StepContext::new(&op, &model, &spec).map_err(|e| e.to_string())?;
    let u0 = cfg.initial_condition(grid, model.beta);

    fs::create_dir_all(&cfg.out_dir).map_err(|e| e.to_string())?;
    write_file(&cfg.out_dir.join("config.echo"), cfg.echo().as_bytes())?;

    let n_steps = (cfg.t_final / cfg.tau).round() as usize;
    let mut recorder = SeriesRecorder::new(model.clone(), cfg.epsilon, cfg.record_every);
    recorder.record_initial(&u0);

    let mut pending: Vec<f64> = cfg
        .snapshot_times
        .iter()
        .copied()
        .filter(|&t| t <= cfg.t_final + 0.5 * cfg.tau)
        .collect();
    pending.sort_by(f64::total_cmp);
    let mut snap_errors: Vec<String> = Vec::new();
    let mut take_snapshot = |time: f64, field: &Field, pending: &mut Vec<f64>| {
        while let Some(&t) = pending.first() {
            if t <= time + 0.5 * cfg.tau {
                pending.remove(0);
                if let Err(e) = write_snapshot(&cfg.out_dir, t, field, model.beta) {
                    snap_errors.push(e);
                }
            } else {
                break;
            }
        }
    };
    take_snapshot(0.0, &u0, &mut pending);

    let result = ctx.evolve(&u0, n_steps, |step, time, field| {
        recorder.observe(step, time, field);
        take_snapshot(time, field, &mut pending);
    });

    let mut csv = String::from("step,time,energy,sup_norm,mbp_violation\n");
    for r in &recorder.records {
        let _ = writeln!(
            csv,
            "{},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.step, r.time, r.energy, r.sup_norm, r.mbp_violation
        );
    }
    write_file(&cfg.out_dir.join("series.csv"), csv.as_bytes())?;
    if let Some(e) = snap_errors.into_iter().next() {
        return Err(e);
    }

    match result {
        Ok(_) => Ok(false),
        Err(IntegratorError::BlowUp { step, time, source }) => {
            let report = format!("step = {step}\ntime = {time:.16e}\nreason = {source}\n");
            write_file(&cfg.out_dir.join("blowup.txt"), report.as_bytes())?;
            Ok(true)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn write_snapshot(dir: &Path, time: f64, field: &Field, beta: f64) -> Result<(), String> {
    let mut csv = Vec::new();
    field.write_csv(&mut csv).map_err(|e| e.to_string())?;
    write_file(&dir.join(format!("snap_t{time}.csv")), &csv)?;
    let mut pgm = Vec::new();
    field.write_pgm(&mut pgm, beta).map_err(|e| e.to_string())?;
    write_file(&dir.join(format!("snap_t{time}.pgm")), &pgm)?;
    Ok(())
}

const USAGE: &str = "usage: acei <converge|simulate|quadrature> [options]
  global options:
    --config <path>        read a key-value config file
    --out <dir>            output directory
    --seed <u64>           PRNG seed for random initial data
    --allow-non-mbp        permit right-Radau / Lobatto quadrature
    --<section.key> <val>  override any config key
  quadrature options:
    --family <name> --nodes <m>
";

/// Parse arguments and dispatch. Returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return EXIT_USAGE;
    };

    if command == "quadrature" {
        let mut family = None;
        let mut nodes = None;
        let mut it = args[1..].iter();
        while let Some(arg) = it.next() {
            match arg.as_str() {
                "--family" => match it.next().and_then(|v| QuadratureFamily::parse(v)) {
                    Some(f) => family = Some(f),
                    None => {
                        eprintln!("error: --family requires one of gauss_legendre, left_radau, right_radau, lobatto");
                        return EXIT_USAGE;
                    }
                },
                "--nodes" => match it.next().and_then(|v| v.parse().ok()) {
                    Some(m) => nodes = Some(m),
                    None => {
                        eprintln!("error: --nodes requires a positive integer");
                        return EXIT_USAGE;
                    }
                },
                other => {
                    eprintln!("error: unknown argument `{other}`\n{USAGE}");
                    return EXIT_USAGE;
                }
            }
        }
        let (Some(family), Some(nodes)) = (family, nodes) else {
            eprintln!("error: quadrature requires --family and --nodes");
            return EXIT_USAGE;
        };
        return cmd_quadrature(family, nodes, &mut std::io::stdout());
    }

    if command != "converge" && command != "simulate" {
        eprintln!("error: unknown command `{command}`\n{USAGE}");
        return EXIT_USAGE;
    }

    // first pass: locate --config so file settings load before overrides
    let mut cfg = RunConfig::default();
    let rest = &args[1..];
    let mut i = 0;
    while i < rest.len() {
        if rest[i] == "--config" {
            let Some(path) = rest.get(i + 1) else {
                eprintln!("error: --config requires a path");
                return EXIT_USAGE;
            };
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read config `{path}`: {e}");
                    return EXIT_USAGE;
                }
            };
            cfg = match RunConfig::parse(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {path}: {e}");
                    return EXIT_USAGE;
                }
            };
        }
        i += 1;
    }

    let mut i = 0;
    while i < rest.len() {
        match rest[i].as_str() {
            "--config" => i += 1, // handled above
            "--allow-non-mbp" => cfg.allow_non_mbp = true,
            "--out" | "--seed" => {
                let key = if rest[i] == "--out" { "run.out" } else { "run.seed" };
                let Some(value) = rest.get(i + 1) else {
                    eprintln!("error: {} requires a value", rest[i]);
                    return EXIT_USAGE;
                };
                if let Err(e) = cfg.set(0, key, value) {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
                i += 1;
            }
            flag if flag.starts_with("--") && flag.contains('.') => {
                let key = &flag[2..];
                let Some(value) = rest.get(i + 1) else {
                    eprintln!("error: {flag} requires a value");
                    return EXIT_USAGE;
                };
                if let Err(e) = cfg.set(0, key, value) {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
                i += 1;
            }
            other => {
                eprintln!("error: unknown argument `{other}`\n{USAGE}");
                return EXIT_USAGE;
            }
        }
        i += 1;
    }

    match command.as_str() {
        "converge" => cmd_converge(&cfg),
        "simulate" => cmd_simulate(&cfg),
        _ => unreachable!(),
    }
}
