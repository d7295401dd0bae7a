//! Command-line front end.
//!
//! Every subcommand prints one line per check; `--report` switches those
//! lines to JSON objects `{"check", "value", "threshold", "pass"}` for
//! machine consumption. Exit codes: 0 all checks passed, 1 usage or input
//! error, 2 at least one check failed, 3 a snapshot matched no family.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::classifier::{classify, ClassifierError, ClassifyOptions, FieldSamples};
use crate::euler::{ode_residual, solve, EulerSystem};
use crate::families::FlowSolution;
use crate::geometry::{ConeDomain, PolarPoint};
use crate::io::{export_grid, import_grid, parse_config, RunConfig};
use crate::liouville::{liouville_verdict, polynomial_degree, PolynomialDegree};
use crate::tol;
use crate::verifier::{
    analytic_residual_report, blowup_profile, default_step, fd_residual, holder_check,
    recover_pressure, BlowupReport,
};

/// Sup-norm gate for the finite-difference cross-check of a configured
/// field at the default step.
const FD_SUP_TOL: f64 = 1e-4;
/// Gates for matching an imported snapshot against the family it claims.
const SNAPSHOT_MATCH_TOL: f64 = 1e-8;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_CHECK_FAILED: i32 = 2;
const EXIT_UNCLASSIFIABLE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "coneflow",
    about = "Closed-form planar stationary flows on cones: sampling, checking, classification",
    version
)]
struct Cli {
    /// Emit checks as JSON lines instead of plain text
    #[arg(long, global = true)]
    report: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DomainArgs {
    /// Domain kind: fullplane or sector
    #[arg(long, default_value = "fullplane")]
    domain: String,
    /// Sector start ray (radians), used when --domain sector
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Sector end ray (radians), used when --domain sector
    #[arg(long, default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
    beta: f64,
}

impl DomainArgs {
    fn build(&self) -> Result<ConeDomain, String> {
        match self.domain.to_ascii_lowercase().as_str() {
            "fullplane" => Ok(ConeDomain::FullPlane),
            "sector" => ConeDomain::sector(self.alpha, self.beta).map_err(|e| e.to_string()),
            other => Err(format!("unknown domain '{other}' (expected fullplane or sector)")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the solution families and their constants
    List,
    /// Sample a configured field onto its grid as CSV
    Sample {
        /// Run configuration file
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a configured field, or a CSV snapshot, against the equations
    Verify {
        /// Run configuration file (checks the closed forms)
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        config: Option<PathBuf>,
        /// CSV snapshot (classifies it, then checks it against the model)
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Identify which family produced a CSV snapshot
    Classify {
        /// CSV snapshot
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Profile the velocity gradient of a log-swirl field toward the origin
    Blowup {
        /// Run configuration file (family must be rotlog)
        #[arg(long)]
        config: PathBuf,
    },
    /// Tabulate Holder quotients toward the origin
    Holder {
        /// Run configuration file
        #[arg(long)]
        config: PathBuf,
        /// Holder exponent in (0, 1)
        #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Growth, corner-regularity and rigidity report for a configured field
    Liouville {
        /// Run configuration file
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve the 2x2 equidimensional radial system and check the residual
    EulerSolve {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        /// First free constant of the general solution
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c1: f64,
        /// Second free constant of the general solution
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c2: f64,
        /// Radii at which the residual is checked
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2", allow_negative_numbers = true)]
        radii: Vec<f64>,
    },
    /// Recover a pressure difference by line integration and compare with
    /// the closed form
    PressureRecover {
        /// Run configuration file
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        anchor_r: f64,
        #[arg(long, default_value_t = 0.8, allow_negative_numbers = true)]
        anchor_theta: f64,
        #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
        target_r: f64,
        #[arg(long, default_value_t = 1.2, allow_negative_numbers = true)]
        target_theta: f64,
        /// Number of quadrature panels
        #[arg(long, default_value_t = 4096)]
        panels: usize,
    },
}

/// Check printer: plain lines or JSON lines, and the running failure count.
struct Reporter {
    json: bool,
    failures: usize,
}

impl Reporter {
    fn new(json: bool) -> Self {
        Reporter { json, failures: 0 }
    }

    fn check(
        &mut self,
        name: &str,
        value: Option<f64>,
        threshold: Option<f64>,
        pass: bool,
        detail: Option<&str>,
    ) {
        if !pass {
            self.failures += 1;
        }
        if self.json {
            let mut obj = serde_json::Map::new();
            obj.insert("check".into(), serde_json::json!(name));
            obj.insert("value".into(), serde_json::json!(value));
            obj.insert("threshold".into(), serde_json::json!(threshold));
            obj.insert("pass".into(), serde_json::json!(pass));
            if let Some(d) = detail {
                obj.insert("detail".into(), serde_json::json!(d));
            }
            println!("{}", serde_json::Value::Object(obj));
            return;
        }
        let mark = if pass { " ok " } else { "FAIL" };
        let mut line = format!("[{mark}] {name}");
        if let Some(v) = value {
            line.push_str(&format!("  value {v:.6e}"));
        }
        if let Some(t) = threshold {
            line.push_str(&format!("  tol {t:.3e}"));
        }
        if let Some(d) = detail {
            line.push_str(&format!("  ({d})"));
        }
        println!("{line}");
    }

    fn exit_code(&self) -> i32 {
        if self.failures == 0 {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn load_config(path: &Path) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Parses and runs one invocation, returning the process exit code.
pub fn run_command<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let mut rep = Reporter::new(cli.report);
    match cli.command {
        Command::List => {
            list_families();
            EXIT_OK
        }
        Command::Sample { config, output } => run_sample(&config, output.as_deref()),
        Command::Verify { config, input, domain } => match (config, input) {
            (Some(cfg), None) => run_verify_config(&cfg, &mut rep),
            (None, Some(csv)) => run_verify_input(&csv, &domain, &mut rep),
            _ => usage_error("verify needs exactly one of --config or --input"),
        },
        Command::Classify { input, domain } => run_classify(&input, &domain, &mut rep),
        Command::Blowup { config } => run_blowup(&config, &mut rep),
        Command::Holder { config, gamma } => run_holder(&config, gamma, &mut rep),
        Command::Liouville { config } => run_liouville(&config, &mut rep),
        Command::EulerSolve { a, b, c, d, c1, c2, radii } => {
            run_euler(a, b, c, d, c1, c2, &radii, &mut rep)
        }
        Command::PressureRecover {
            config,
            anchor_r,
            anchor_theta,
            target_r,
            target_theta,
            panels,
        } => run_pressure(
            &config,
            PolarPoint::new(anchor_r, anchor_theta),
            PolarPoint::new(target_r, target_theta),
            panels,
            &mut rep,
        ),
    }
}

fn list_families() {
    let rows: &[(&str, &str, &str)] = &[
        ("constant", "c1 c2 c3", "uniform drift (c1, c2); constant pressure c3"),
        (
            "linear",
            "c1 c2 c3 c4",
            "trace-free linear velocity (c1 x + c2 y, c3 x - c1 y); quadratic pressure",
        ),
        (
            "quadratic",
            "c1 c2 c3 c4 c5",
            "quadratic velocity with cubic pressure; c1..c4 obey two algebraic constraints",
        ),
        (
            "powermode",
            "lambda c1 c2 c3",
            "irrotational mode with |u| ~ r^lambda; lambda > 0, not 1 or 2; integer >= 3 on the full plane",
        ),
        (
            "rotlog",
            "c1 c2 c3",
            "swirl with angular rate c1 + c2 ln r; sectors only",
        ),
        ("shearx", "c1 c2 c3", "uniform drift (c1, 0) plus vertical velocity c2 x"),
        ("sheary", "c1 c2 c3", "horizontal velocity c1 y plus uniform drift (0, c2)"),
    ];
    for (name, consts, what) in rows {
        println!("{name:<10} {consts:<18} {what}");
    }
}

fn run_sample(config: &Path, output: Option<&Path>) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let (text, non_finite) = match export_grid(&cfg.flow, &cfg.grid()) {
        Ok(out) => out,
        Err(e) => return usage_error(&e.to_string()),
    };
    if non_finite > 0 {
        eprintln!("warning: {non_finite} non-finite entries written as nan");
    }
    match output {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => {
                println!("wrote {} rows to {}", cfg.n_r * cfg.n_theta, path.display());
                EXIT_OK
            }
            Err(e) => usage_error(&format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn run_verify_config(config: &Path, rep: &mut Reporter) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let spec = cfg.grid();
    let triple = match analytic_residual_report(&cfg.flow, &spec) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    rep.check(
        "divergence",
        Some(triple.divergence),
        Some(tol::DIV_TRACE_TOL),
        triple.divergence <= tol::DIV_TRACE_TOL,
        None,
    );
    rep.check(
        "momentum",
        Some(triple.momentum),
        Some(tol::MOMENTUM_REL_TOL),
        triple.momentum <= tol::MOMENTUM_REL_TOL,
        None,
    );
    rep.check(
        "vorticity-transport",
        Some(triple.vorticity_transport),
        Some(tol::VORTICITY_REL_TOL),
        triple.vorticity_transport <= tol::VORTICITY_REL_TOL,
        None,
    );
    let pts = match spec.points() {
        Ok(pts) => pts,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut sup: f64 = 0.0;
    for p in pts {
        let h = default_step(&cfg.domain, p);
        sup = sup.max(fd_residual(&cfg.flow, p, h).max_component());
    }
    rep.check("fd-consistency", Some(sup), Some(FD_SUP_TOL), sup <= FD_SUP_TOL, None);
    rep.exit_code()
}

fn load_samples(input: &Path) -> Result<(FieldSamples, Vec<f64>, Vec<f64>), String> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let grid = import_grid(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let samples = FieldSamples::new(grid.radii, grid.thetas, grid.u, None)
        .map_err(|e| format!("{}: {e}", input.display()))?;
    Ok((samples, grid.pressure, grid.vorticity))
}

fn run_verify_input(input: &Path, domain: &DomainArgs, rep: &mut Reporter) -> i32 {
    let domain = match domain.build() {
        Ok(d) => d,
        Err(e) => return usage_error(&e),
    };
    let (samples, pressure, vorticity) = match load_samples(input) {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let classification = match classify(&samples, &domain, &ClassifyOptions::default()) {
        Ok(c) => c,
        Err(ClassifierError::BadSamples(m)) => return usage_error(&m),
        Err(e @ ClassifierError::Unclassifiable(_)) => {
            rep.check("velocity-match", None, None, false, Some(&e.to_string()));
            return rep.exit_code();
        }
    };
    let flow = classification.flow;
    rep.check(
        "family-identified",
        None,
        None,
        true,
        Some(&format!("{flow:?}")),
    );
    let residual = classification.diagnostics.model_residual;
    rep.check(
        "velocity-match",
        Some(residual),
        Some(SNAPSHOT_MATCH_TOL),
        residual <= SNAPSHOT_MATCH_TOL,
        None,
    );

    // vorticity and pressure columns, compared pointwise against the model;
    // the pressure constant is not observable from velocity, so compare up
    // to the mean offset
    let (n_r, n_t) = (samples.radii.len(), samples.thetas.len());
    let mut w_scale: f64 = 0.0;
    let mut p_scale: f64 = 0.0;
    let mut w_model = Vec::with_capacity(n_r * n_t);
    let mut p_model = Vec::with_capacity(n_r * n_t);
    for i in 0..n_r {
        for j in 0..n_t {
            let p = PolarPoint::new(samples.radii[i], samples.thetas[j]);
            let w = flow.vorticity(p).unwrap_or(f64::NAN);
            if w.is_finite() {
                w_scale = w_scale.max(w.abs());
            }
            w_model.push(w);
            let pr = flow.pressure(p);
            p_scale = p_scale.max(pr.abs());
            p_model.push(pr);
        }
    }
    let mut w_gap: f64 = 0.0;
    let mut w_incomparable = false;
    for (got, want) in vorticity.iter().zip(&w_model) {
        match (got.is_nan(), want.is_nan()) {
            (true, true) => {}
            (false, false) => w_gap = w_gap.max((got - want).abs()),
            _ => w_incomparable = true,
        }
    }
    let w_rel = w_gap / (1.0 + w_scale);
    rep.check(
        "vorticity-match",
        Some(w_rel),
        Some(SNAPSHOT_MATCH_TOL),
        !w_incomparable && w_rel <= SNAPSHOT_MATCH_TOL,
        w_incomparable.then_some("nan cells disagree with the model"),
    );

    let offset = pressure
        .iter()
        .zip(&p_model)
        .map(|(got, want)| got - want)
        .sum::<f64>()
        / pressure.len().max(1) as f64;
    let p_gap = pressure
        .iter()
        .zip(&p_model)
        .map(|(got, want)| (got - want - offset).abs())
        .fold(0.0f64, f64::max);
    let p_rel = p_gap / (1.0 + p_scale);
    rep.check(
        "pressure-match",
        Some(p_rel),
        Some(SNAPSHOT_MATCH_TOL),
        p_rel <= SNAPSHOT_MATCH_TOL,
        None,
    );
    rep.exit_code()
}

fn run_classify(input: &Path, domain: &DomainArgs, rep: &mut Reporter) -> i32 {
    let domain = match domain.build() {
        Ok(d) => d,
        Err(e) => return usage_error(&e),
    };
    let (samples, _, _) = match load_samples(input) {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    match classify(&samples, &domain, &ClassifyOptions::default()) {
        Ok(c) => {
            rep.check(
                "classified",
                Some(c.diagnostics.model_residual),
                Some(ClassifyOptions::default().fit_tol),
                true,
                Some(&format!("{:?}", c.flow)),
            );
            rep.check(
                "rank1-ratio",
                Some(c.diagnostics.rank1_ratio),
                None,
                true,
                None,
            );
            rep.check(
                "divergence-rms",
                Some(c.diagnostics.divergence_rms),
                None,
                true,
                None,
            );
            EXIT_OK
        }
        Err(ClassifierError::BadSamples(m)) => usage_error(&m),
        Err(e @ ClassifierError::Unclassifiable(_)) => {
            rep.check("classified", None, None, false, Some(&e.to_string()));
            EXIT_UNCLASSIFIABLE
        }
    }
}

fn run_blowup(config: &Path, rep: &mut Reporter) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let radii: Vec<f64> = (5..=40).map(|k| 2f64.powi(-k)).collect();
    match blowup_profile(&cfg.flow, &cfg.domain, &radii) {
        Ok(BlowupReport::Bounded { sup }) => {
            rep.check(
                "gradient-bounded",
                Some(sup),
                None,
                true,
                Some("gradient norm independent of radius"),
            );
            rep.exit_code()
        }
        Ok(BlowupReport::Unbounded { slope, intercept, .. }) => {
            let expected = match cfg.flow {
                FlowSolution::RotLog { c2, .. } => c2.abs(),
                _ => unreachable!("profile is only produced for the log-swirl family"),
            };
            let rel_err = (slope - expected).abs() / expected;
            rep.check(
                "gradient-log-slope",
                Some(rel_err),
                Some(tol::BLOWUP_SLOPE_REL),
                rel_err <= tol::BLOWUP_SLOPE_REL,
                Some(&format!(
                    "sup |grad u| ~ {slope:.6} |ln r| + {intercept:.6}, target slope {expected:.6}"
                )),
            );
            rep.exit_code()
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run_holder(config: &Path, gamma: f64, rep: &mut Reporter) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    if !(gamma > 0.0 && gamma < 1.0) {
        return usage_error(&format!("gamma must lie in (0, 1), got {gamma}"));
    }
    let radii: Vec<f64> = (0..=25).map(|k| 2f64.powi(-k)).collect();
    let report = match holder_check(&cfg.flow, &cfg.domain, gamma, &radii) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    if !rep.json {
        println!("r, sup |u| / r^{gamma}");
        for (r, q) in &report.rows {
            println!("{r:.6e}, {q:.6e}");
        }
    }
    rep.check(
        "holder-tail-consistent",
        Some(report.rows.last().map_or(f64::NAN, |row| row.1)),
        None,
        report.tail_decreasing == report.eventually_decays,
        Some(&format!(
            "tail decreasing: {}, closed form decays: {}",
            report.tail_decreasing, report.eventually_decays
        )),
    );
    rep.exit_code()
}

fn run_liouville(config: &Path, rep: &mut Reporter) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let verdict = match liouville_verdict(&cfg.flow, &cfg.domain) {
        Ok(v) => v,
        Err(e) => return usage_error(&e.to_string()),
    };
    rep.check(
        "sublinear-growth",
        Some(verdict.growth_exponent),
        Some(1.0),
        true,
        Some(if verdict.sublinear { "sublinear" } else { "not sublinear" }),
    );
    rep.check(
        "corner-regularity",
        None,
        None,
        true,
        Some(if verdict.corner_smooth {
            "gradient stays bounded up to the corner"
        } else {
            "gradient unbounded at the corner"
        }),
    );
    let degree = match polynomial_degree(&cfg.flow) {
        PolynomialDegree::Degree(d) => format!("polynomial of degree {d}"),
        PolynomialDegree::NonPolynomial => "not a polynomial".to_string(),
    };
    rep.check(
        "constancy",
        None,
        None,
        true,
        Some(&format!(
            "{}; {degree}",
            if verdict.constant { "constant velocity" } else { "non-constant velocity" }
        )),
    );
    let consistent = !(verdict.sublinear && verdict.corner_smooth) || verdict.constant;
    rep.check(
        "rigidity-consistent",
        None,
        None,
        consistent,
        Some("sublinear growth with corner regularity forces a constant field"),
    );
    rep.exit_code()
}

fn run_euler(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    c1: f64,
    c2: f64,
    radii: &[f64],
    rep: &mut Reporter,
) -> i32 {
    if radii.is_empty() || radii.iter().any(|&r| !(r.is_finite() && r > 0.0)) {
        return usage_error("radii must be positive and non-empty");
    }
    let sys = EulerSystem::new(a, b, c, d);
    let pair = solve(&sys, c1, c2);
    rep.check("euler-case", None, None, true, Some(&format!("{:?}", pair.case)));
    let mut worst: f64 = 0.0;
    for &r in radii {
        let (r1, r2) = ode_residual(&pair, r);
        worst = worst.max(r1.abs()).max(r2.abs());
        if !rep.json {
            let (p1, p2) = pair.values(r);
            println!("r = {r:.6e}: phi = ({p1:.9e}, {p2:.9e})");
        }
    }
    rep.check(
        "euler-residual",
        Some(worst),
        Some(tol::EULER_RESIDUAL_REL),
        worst <= tol::EULER_RESIDUAL_REL,
        None,
    );
    rep.exit_code()
}

fn run_pressure(
    config: &Path,
    anchor: PolarPoint,
    target: PolarPoint,
    panels: usize,
    rep: &mut Reporter,
) -> i32 {
    let cfg = match load_config(config) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };
    let recovered = match recover_pressure(&cfg.flow, &cfg.domain, anchor, target, panels) {
        Ok(v) => v,
        // a path that exits the domain or an empty panel count is caller
        // misuse, not a failed check
        Err(e) => return usage_error(&e.to_string()),
    };
    let exact = cfg.flow.pressure(target);
    let err = (recovered - exact).abs();
    rep.check(
        "pressure-recovery",
        Some(err),
        Some(tol::PRESSURE_RECOVERY_ABS),
        err <= tol::PRESSURE_RECOVERY_ABS,
        Some(&format!("recovered {recovered:.9e}, closed form {exact:.9e}")),
    );
    rep.exit_code()
}
