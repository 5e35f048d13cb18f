//! The `igsmac` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use igsmac_core::boundary::{RateProfile, Signaling};
use igsmac_core::hull::time_sharing_hull;
use igsmac_core::model::su_rate_raw;
use igsmac_core::oracle::{brute_single_user, check_oracle_size};
use igsmac_core::presets::{paper_scenario, PresetOrder};
use igsmac_core::single_user::{self, q_of_c};
use igsmac_core::{
    solve_boundary_point, to_canonical, CanonicalScenario, DecodeOrder, NoiseState, PhysicalScenario, SingleUserProblem,
    SolverOptions,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::experiments::{sumrate_vs_budget, sumrate_vs_users, ExperimentConfig, Sweep};
use crate::output::{write_boundary_csv, write_table, BoundaryRecord};
use crate::parallel;
use crate::sampling::{random_canonical, random_single_user};
use crate::scenario_file::ScenarioFile;
use crate::svg::{line_plot, Series};

#[derive(Debug, Parser)]
#[command(name = "igsmac", version, about = "Improper Gaussian signaling for an underlay secondary MAC")]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a scenario to its canonical coefficients.
    Canonical(CanonicalArgs),
    /// Solve the single-user problem with improper primary-side noise.
    SingleUser(SingleUserArgs),
    /// Rate-region boundary points.
    Boundary(BoundaryArgs),
    /// Compare the solvers against grid search.
    Verify(VerifyArgs),
    /// Monte Carlo studies.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct Source {
    /// Scenario JSON file.
    #[arg(long, conflicts_with = "preset")]
    pub scenario: Option<PathBuf>,
    /// Built-in two-user scenario 1, 2 or 3.
    #[arg(long)]
    pub preset: Option<u8>,
    /// `default`, `swapped`, or a 1-based permutation such as `2,1`.
    #[arg(long)]
    pub order: Option<String>,
    /// Zero the primary-to-base-station channel.
    #[arg(long)]
    pub ignore_pu_at_bs: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Igs,
    Pgs,
}

#[derive(Debug, Args)]
pub struct CanonicalArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SingleUserArgs {
    /// Primary SNR `p`.
    #[arg(long)]
    pub p: f64,
    /// Interference gain `a_S`.
    #[arg(long = "a-s")]
    pub a_s: f64,
    /// Power budget `P_S`.
    #[arg(long = "p-s")]
    pub p_s: f64,
    /// Improper noise power at the primary.
    #[arg(long = "p-i", default_value_t = 0.0)]
    pub p_i: f64,
    /// Circularity of that noise.
    #[arg(long = "c-i", default_value_t = 0.0)]
    pub c_i: f64,
    /// Primary rate target, b/s/Hz.
    #[arg(long)]
    pub target: f64,
    /// Emit the rate along `q(c)` at this many circularity points.
    #[arg(long)]
    pub sweep_c: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[command(flatten)]
    pub source: Source,
    /// Rate profile, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "sweep")]
    pub alpha: Option<Vec<f64>>,
    /// Evenly spaced two-user profiles.
    #[arg(long)]
    pub sweep: Option<usize>,
    #[arg(long, value_enum, default_value = "igs")]
    pub mode: Mode,
    /// Time-sharing hull of both decoding orders, IGS and PGS.
    #[arg(long, requires = "sweep")]
    pub hull: bool,
    /// Bisection tolerance on `r`, b/s/Hz.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Random instances from this seed instead of a scenario.
    #[arg(long, conflicts_with_all = ["scenario", "preset"])]
    pub random: Option<u64>,
    /// Users in random instances; 1 checks the single-user solver.
    #[arg(long, default_value_t = 1)]
    pub users: usize,
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    #[arg(long, default_value_t = 61)]
    pub grid: usize,
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExperimentName {
    /// Sum rate against the secondary budget.
    Fig7,
    /// Fairness-point rate against the number of users.
    Fig8,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Primary target as a fraction of its capacity.
    #[arg(long)]
    pub fraction: Option<f64>,
    /// Primary transmit power.
    #[arg(long)]
    pub pu_power: Option<f64>,
    /// Budget levels (fig7), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub budgets: Option<Vec<f64>>,
    /// User counts (fig8), comma separated or `lo..hi`.
    #[arg(long)]
    pub users: Option<String>,
    /// Secondary budget for fig8.
    #[arg(long)]
    pub su_budget: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run manifest path; defaults to `<out>.manifest.json` when `--out` is set.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn decode_order(spec: Option<&str>, k: usize) -> Result<Option<DecodeOrder>> {
    Ok(match spec {
        None => None,
        Some("default") => Some(DecodeOrder::reversed(k)),
        Some("swapped") => Some(DecodeOrder::natural(k)),
        Some(list) => {
            let idx = list.split(',').map(|s| s.trim().parse::<usize>().map_err(input)).collect::<Result<Vec<_>>>()?;
            if idx.len() != k {
                return Err(CliError::Input(format!("order {list} has {} entries for {k} users", idx.len())));
            }
            Some(DecodeOrder::from_one_based(&idx).map_err(input)?)
        }
    })
}

impl Source {
    pub fn physical(&self) -> Result<PhysicalScenario> {
        let mut phys = match (&self.scenario, self.preset) {
            (Some(path), None) => ScenarioFile::load(path)?.to_physical()?,
            (None, Some(id)) => paper_scenario(id, PresetOrder::Default).map_err(input)?,
            _ => return Err(CliError::Input("give --scenario or --preset".into())),
        };
        if let Some(order) = decode_order(self.order.as_deref(), phys.users())? {
            phys.decode_order = order;
        }
        if self.ignore_pu_at_bs {
            phys.pu_to_bs.iter_mut().for_each(|g| *g = Complex64::new(0.0, 0.0));
        }
        Ok(phys)
    }
}

fn canonical(phys: &PhysicalScenario) -> Result<CanonicalScenario> {
    Ok(to_canonical(phys)?.scenario)
}

/// Sends `body` to `--out` or stdout.
fn emit(out: Option<&Path>, body: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => stdout.write_all(body).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn header(flags: &[String], units: &str) -> Vec<String> {
    vec![
        format!("igsmac {}", env!("CARGO_PKG_VERSION")),
        format!("units: {units}"),
        format!("flags: {}", flags.join(" ")),
    ]
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_from<I, T>(argv: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return stdout.write_all(e.to_string().as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source });
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let flags: Vec<String> = argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect();
    run(cli, &flags, stdout)
}

pub fn run(cli: Cli, flags: &[String], stdout: &mut dyn Write) -> Result<()> {
    let go = || {
        let mut buf = Vec::new();
        let res = match &cli.command {
            Command::Canonical(a) => cmd_canonical(a, &mut buf),
            Command::SingleUser(a) => cmd_single_user(a, flags, &mut buf),
            Command::Boundary(a) => cmd_boundary(a, flags, &mut buf),
            Command::Verify(a) => cmd_verify(a, flags, &mut buf),
            Command::Experiment(a) => cmd_experiment(a, flags, &mut buf),
        };
        (buf, res)
    };
    let (buf, res) = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(input)?.install(go),
        None => go(),
    };
    stdout.write_all(&buf).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    res
}

pub fn cmd_canonical(a: &CanonicalArgs, stdout: &mut dyn Write) -> Result<()> {
    let phys = a.source.physical()?;
    let res = to_canonical(&phys)?;
    let s = &res.scenario;
    let permuted = phys.su_direct.permute_columns(phys.decode_order.as_slice());
    let qr_residual = permuted.sub(&res.zf_q.mul(&res.zf_r).map_err(input)?).frobenius_norm();
    let k = s.users();
    let gram = res.zf_q.adjoint().mul(&res.zf_q).map_err(input)?;
    let orth = gram.sub(&igsmac_core::ComplexMatrix::identity(k)).frobenius_norm();
    let capacity = (1.0 + s.pu_snr).log2();
    let report = json!({
        "pu_snr": s.pu_snr,
        "gains": s.gains,
        "budgets": s.budgets,
        "pu_rate_target": s.pu_rate_target,
        "pu_capacity": capacity,
        "beta": s.beta(),
        "decode_order": phys.decode_order.as_slice().iter().map(|u| u + 1).collect::<Vec<_>>(),
        "per_user_noise": res.per_user_noise,
        "r_diagonal": (0..k).map(|i| res.zf_r[(i, i)].re).collect::<Vec<_>>(),
        "qr_residual": qr_residual,
        "q_orthonormality_error": orth,
    });
    let body = match a.format {
        Format::Json => json_bytes(&report)?,
        Format::Table | Format::Csv => {
            let mut t = String::new();
            t += &format!("p        {}\n", s.pu_snr);
            t += &format!("R_bar    {}  (capacity {capacity})\n", s.pu_rate_target);
            t += &format!("beta     {}\n", s.beta());
            for u in 0..k {
                t += &format!("user {}   a = {}  P = {}  sigma2 = {}\n", u + 1, s.gains[u], s.budgets[u], res.per_user_noise[u]);
            }
            t += &format!("QR residual {qr_residual:e}, orthonormality error {orth:e}\n");
            t.into_bytes()
        }
        Format::Svg => return Err(CliError::Input("canonical supports json or table".into())),
    };
    emit(a.out.as_deref(), &body, stdout)
}

pub fn cmd_single_user(a: &SingleUserArgs, flags: &[String], stdout: &mut dyn Write) -> Result<()> {
    let noise = NoiseState::from_improper(a.p_i, a.c_i).map_err(input)?;
    let prob = SingleUserProblem::new(a.p, a.a_s, a.p_s, a.target, noise).map_err(input)?;
    if !prob.is_feasible() {
        return Err(CliError::Infeasible(format!(
            "the primary reaches only {} b/s/Hz with the secondary silent, below the target {}",
            prob.idle_pu_rate(),
            a.target
        )));
    }
    let sol = single_user::solve(&prob)?;
    if let Some(n) = a.sweep_c {
        let n = n.max(2);
        let curve: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let c = i as f64 / (n - 1) as f64;
                let q = q_of_c(&prob, c)?;
                Ok([c, su_rate_raw(q.min(prob.budget), c)])
            })
            .collect::<Result<_>>()?;
        let peak = curve.iter().map(|p| p[1]).fold(0.0, f64::max);
        let norm = |r: f64| if peak > 0.0 { r / peak } else { 0.0 };
        let body = match a.format {
            Format::Svg => {
                let pts = curve.iter().map(|p| [p[0], norm(p[1])]).collect();
                line_plot("Rate along the primary constraint", "circularity c", "normalized rate", &[Series { name: "R(c)", points: pts, dashed: false }], false)
                    .into_bytes()
            }
            _ => {
                let rows: Vec<Vec<String>> =
                    curve.iter().map(|p| vec![p[0].to_string(), p[1].to_string(), norm(p[1]).to_string()]).collect();
                let mut buf = Vec::new();
                let mut h = header(flags, "rates in b/s/Hz");
                h.push(format!("c_B = {}, c_R = {}, c* = {}", sol.c_b, sol.c_r, sol.c_star));
                write_table(&mut buf, &h, &["c", "rate", "normalized_rate"], &rows)?;
                buf
            }
        };
        return emit(a.out.as_deref(), &body, stdout);
    }
    let report = json!({
        "beta": prob.beta(),
        "pbar": prob.pbar(),
        "c_b": sol.c_b,
        "c_r": sol.c_r,
        "xi": sol.xi,
        "c_star": sol.c_star,
        "p_star": sol.p_star,
        "su_rate": sol.su_rate,
        "pu_rate": sol.pu_rate,
        "pu_constraint_inactive": sol.pu_constraint_inactive,
    });
    let body = match a.format {
        Format::Table => {
            let xi = sol.xi.map_or("undefined".to_string(), |x| x.to_string());
            format!(
                "c_B {}\nc_R {}\nxi  {xi}\nc*  {}\np*  {}\nSU rate {} b/s/Hz\nPU rate {} b/s/Hz\nconstraint inactive: {}\n",
                sol.c_b, sol.c_r, sol.c_star, sol.p_star, sol.su_rate, sol.pu_rate, sol.pu_constraint_inactive
            )
            .into_bytes()
        }
        _ => json_bytes(&report)?,
    };
    emit(a.out.as_deref(), &body, stdout)
}

fn region_points(pts: &[igsmac_core::BoundaryPoint]) -> Vec<[f64; 2]> {
    pts.iter()
        .map(|p| {
            let r = p.rate_tuple();
            [r[0], r[1]]
        })
        .collect()
}

pub fn cmd_boundary(a: &BoundaryArgs, flags: &[String], stdout: &mut dyn Write) -> Result<()> {
    let phys = a.source.physical()?;
    let scenario = canonical(&phys)?;
    let k = scenario.users();
    let signaling = match a.mode {
        Mode::Igs => Signaling::Improper,
        Mode::Pgs => Signaling::Proper,
    };
    let opts = SolverOptions { tol: a.tol, signaling, ..SolverOptions::default() };
    let units = "rates in b/s/Hz, powers in noise-normalized units";

    if a.hull {
        if k != 2 {
            return Err(CliError::Input("--hull needs two users".into()));
        }
        let n = a.sweep.unwrap_or(33);
        let mut swapped = phys.clone();
        swapped.decode_order = DecodeOrder::new(phys.decode_order.as_slice().iter().rev().copied().collect()).map_err(input)?;
        let other = canonical(&swapped)?;
        let mut curves: Vec<(String, Vec<[f64; 2]>)> = Vec::new();
        for (tag, sig) in [("igs", Signaling::Improper), ("pgs", Signaling::Proper)] {
            let first = region_points(&parallel::sweep_region(&scenario, n, sig)?);
            let second = region_points(&parallel::sweep_region(&other, n, sig)?);
            let hull = time_sharing_hull(&first, &second);
            curves.push((format!("{tag}_order_a"), first));
            curves.push((format!("{tag}_order_b"), second));
            curves.push((format!("{tag}_hull"), hull));
        }
        let body = match a.format {
            Format::Svg => {
                let series: Vec<Series<'_>> = curves
                    .iter()
                    .map(|(name, pts)| Series { name, points: pts.clone(), dashed: name.ends_with("hull") })
                    .collect();
                line_plot("Rate regions", "R_1 [b/s/Hz]", "R_2 [b/s/Hz]", &series, false).into_bytes()
            }
            Format::Json => json_bytes(&curves.iter().map(|(n, p)| json!({"curve": n, "points": p})).collect::<Vec<_>>())?,
            _ => {
                let rows: Vec<Vec<String>> = curves
                    .iter()
                    .flat_map(|(n, pts)| pts.iter().map(move |p| vec![n.clone(), p[0].to_string(), p[1].to_string()]))
                    .collect();
                let mut buf = Vec::new();
                write_table(&mut buf, &header(flags, units), &["curve", "R_1", "R_2"], &rows)?;
                buf
            }
        };
        return emit(a.out.as_deref(), &body, stdout);
    }

    let points = match (&a.alpha, a.sweep) {
        (Some(alpha), _) => vec![solve_boundary_point(&RateProfile::new(alpha.clone()).map_err(input)?, &scenario, &opts)?],
        (None, Some(n)) => {
            if k != 2 {
                return Err(CliError::Input("--sweep needs two users; use --alpha".into()));
            }
            parallel::sweep_region(&scenario, n, signaling)?
        }
        (None, None) => vec![solve_boundary_point(&RateProfile::uniform(k), &scenario, &opts)?],
    };
    let body = match a.format {
        Format::Json => json_bytes(&points.iter().map(BoundaryRecord::from).collect::<Vec<_>>())?,
        Format::Svg => {
            if k != 2 {
                return Err(CliError::Input("svg output needs two users".into()));
            }
            let tag = if signaling == Signaling::Improper { "IGS" } else { "PGS" };
            line_plot("Rate region boundary", "R_1 [b/s/Hz]", "R_2 [b/s/Hz]", &[Series { name: tag, points: region_points(&points), dashed: false }], false)
                .into_bytes()
        }
        _ => {
            let mut buf = Vec::new();
            write_boundary_csv(&mut buf, &header(flags, units), &points)?;
            buf
        }
    };
    emit(a.out.as_deref(), &body, stdout)
}

/// Absolute slack allowed below a grid point (the solver bisects to 1e-8).
const VERIFY_SLACK: f64 = 1e-6;

pub fn cmd_verify(a: &VerifyArgs, flags: &[String], stdout: &mut dyn Write) -> Result<()> {
    if a.grid < 2 {
        return Err(CliError::Input("--grid must be at least 2".into()));
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut failures = 0usize;
    let mut record = |case: String, solver: f64, oracle: Option<f64>| {
        let (o, d) = match oracle {
            Some(o) => (o, solver - o),
            None => (f64::NAN, f64::NAN),
        };
        let rel = if o > 0.0 { d / o } else { 0.0 };
        if d < -VERIFY_SLACK {
            failures += 1;
        }
        rows.push(vec![case, solver.to_string(), o.to_string(), d.to_string(), rel.to_string()]);
    };
    match a.random {
        Some(seed) if a.users == 1 => {
            for i in 0..a.cases {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let prob = random_single_user(&mut rng);
                let sol = single_user::solve(&prob)?;
                let o = brute_single_user(&prob, a.grid)?.map(|o| o.rate);
                record(format!("random-{i}"), sol.su_rate, o);
            }
        }
        Some(seed) => {
            check_oracle_size(a.users, a.grid)?;
            for i in 0..a.cases {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let s = random_canonical(&mut rng, a.users);
                let raw: Vec<f64> = (0..a.users).map(|_| rng.gen_range(0.05..1.0)).collect();
                let sum: f64 = raw.iter().sum();
                let mut alpha: Vec<f64> = raw.iter().map(|x| x / sum).collect();
                alpha[0] = 1.0 - alpha[1..].iter().sum::<f64>();
                let prof = RateProfile::new(alpha)?;
                let sol = solve_boundary_point(&prof, &s, &SolverOptions::default())?;
                let o = parallel::brute_boundary(&prof, &s, a.grid)?.map(|o| o.value);
                record(format!("random-{i}"), sol.r, o);
            }
        }
        None => {
            let s = canonical(&a.source.physical()?)?;
            check_oracle_size(s.users(), a.grid)?;
            let prof = match &a.alpha {
                Some(alpha) => RateProfile::new(alpha.clone()).map_err(input)?,
                None => RateProfile::uniform(s.users()),
            };
            let sol = solve_boundary_point(&prof, &s, &SolverOptions::default())?;
            let o = parallel::brute_boundary(&prof, &s, a.grid)?.map(|o| o.value);
            record("scenario".into(), sol.r, o);
        }
    }
    let mut buf = Vec::new();
    let mut h = header(flags, "rates in b/s/Hz");
    h.push(format!("grid {} per dimension, failure when solver < oracle - {VERIFY_SLACK:e}", a.grid));
    write_table(&mut buf, &h, &["case", "solver", "oracle", "delta", "relative_delta"], &rows)?;
    emit(a.out.as_deref(), &buf, stdout)?;
    if failures > 0 {
        return Err(CliError::Verification(format!("{failures} case(s) below the grid optimum")));
    }
    Ok(())
}

fn parse_users(spec: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(input)?;
        let hi: usize = hi.trim().parse().map_err(input)?;
        if lo == 0 || hi < lo {
            return Err(CliError::Input(format!("bad user range {spec}")));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(input)).collect()
}

fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
        .unwrap_or_else(|| "unknown".into())
}

pub fn experiment_config(a: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = match a.name {
        ExperimentName::Fig7 => ExperimentConfig::sum_rate_vs_budget(),
        ExperimentName::Fig8 => ExperimentConfig::sum_rate_vs_users(),
    };
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(f) = a.fraction {
        cfg.pu_rate_fraction = f;
    }
    if let Some(p) = a.pu_power {
        cfg.pu_power = p;
    }
    match (&mut cfg.sweep, a.name) {
        (Sweep::Budget(levels), ExperimentName::Fig7) => {
            if let Some(b) = &a.budgets {
                *levels = b.clone();
            }
        }
        (Sweep::Users { counts, su_budget }, ExperimentName::Fig8) => {
            if let Some(u) = &a.users {
                *counts = parse_users(u)?;
            }
            if let Some(b) = a.su_budget {
                *su_budget = b;
            }
        }
        _ => unreachable!("sweep kind follows the experiment name"),
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_experiment(a: &ExperimentArgs, flags: &[String], stdout: &mut dyn Write) -> Result<()> {
    let cfg = experiment_config(a)?;
    let units = "rates in b/s/Hz, budgets in linear power units (noise variance 1)";
    let (body, summary) = match a.name {
        ExperimentName::Fig7 => {
            let curve = sumrate_vs_budget(&cfg)?;
            let body = match a.format {
                Format::Svg => {
                    let igs = curve.rows.iter().map(|r| [r.budget, r.igs.mean]).collect();
                    let pgs = curve.rows.iter().map(|r| [r.budget, r.pgs.mean]).collect();
                    line_plot(
                        "Average sum rate",
                        "secondary budget P'",
                        "sum rate [b/s/Hz]",
                        &[Series { name: "IGS", points: igs, dashed: false }, Series { name: "PGS", points: pgs, dashed: true }],
                        true,
                    )
                    .into_bytes()
                }
                _ => {
                    let mut buf = Vec::new();
                    write_table(&mut buf, &header(flags, units), &crate::experiments::BudgetCurve::columns(), &curve.table())?;
                    buf
                }
            };
            (body, serde_json::to_value(&curve)?)
        }
        ExperimentName::Fig8 => {
            let curve = sumrate_vs_users(&cfg)?;
            let body = match a.format {
                Format::Svg => {
                    let pu = |f: fn(&crate::experiments::UsersRow) -> f64| curve.rows.iter().map(|r| [r.users as f64, f(r)]).collect();
                    line_plot(
                        "Fairness-point sum rate",
                        "users K",
                        "sum rate [b/s/Hz]",
                        &[
                            Series { name: "IGS", points: pu(|r| r.igs_sum.mean), dashed: false },
                            Series { name: "PGS", points: pu(|r| r.pgs_sum.mean), dashed: true },
                        ],
                        false,
                    )
                    .into_bytes()
                }
                _ => {
                    let mut h = header(flags, units);
                    h.push(format!(
                        "per-user gap trend: spearman rho {} (one-sided p {}) over {} trials",
                        curve.trend.rho, curve.trend.p_value, curve.trend.n
                    ));
                    let mut buf = Vec::new();
                    write_table(&mut buf, &h, &crate::experiments::UsersCurve::columns(), &curve.table())?;
                    buf
                }
            };
            (body, serde_json::to_value(&curve)?)
        }
    };
    emit(a.out.as_deref(), &body, stdout)?;
    let manifest_path = a.manifest.clone().or_else(|| a.out.as_ref().map(|o| {
        let mut s = o.clone().into_os_string();
        s.push(".manifest.json");
        PathBuf::from(s)
    }));
    if let Some(path) = manifest_path {
        let manifest = json!({
            "experiment": format!("{:?}", a.name).to_lowercase(),
            "seed": cfg.seed,
            "trials": cfg.trials,
            "git_describe": git_describe(),
            "version": env!("CARGO_PKG_VERSION"),
            "rng": "ChaCha20, stream per trial",
            "flags": flags,
            "config": cfg,
            "results": summary,
        });
        std::fs::write(&path, json_bytes(&manifest)?).map_err(|source| CliError::Io { path, source })?;
    }
    Ok(())
}
