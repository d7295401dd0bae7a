//! Plain-text run configuration and CSV grid interchange.
//!
//! Config files are `key = value` lines with `#` comments. The recognized
//! keys are `family`, `lambda`, `c1` .. `c5`, `domain`, `alpha`, `beta`,
//! `rmin`, `rmax`, `nr`, `ntheta`. Constants default to zero, the domain to
//! the full plane, and the grid to 12 radii in [0.5, 2] by 32 angles.
//!
//! Grids travel as CSV with the exact header `x,y,u1,u2,p,w`, one node per
//! row, radius-major. Imports must form an exact product grid; values are
//! written with 17 significant digits so a round trip is lossless.

use std::collections::BTreeMap;

use nalgebra::Vector2;
use thiserror::Error;

use crate::families::{FamilyError, FlowSolution};
use crate::geometry::{to_polar, ConeDomain, DomainError};
use crate::tol;
use crate::verifier::GridSpec;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: expected 'key = value'")]
    BadSyntax { line: usize },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key '{key}' given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: cannot parse '{value}' as a value for '{key}'")]
    BadValue { line: usize, key: String, value: String },
    #[error("config selects no family")]
    MissingFamily,
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("not a solution on this domain: {reason}")]
    NotAdmissible { reason: String },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
}

/// A fully validated run description: an admissible field, its domain and
/// the sampling grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub flow: FlowSolution,
    pub domain: ConeDomain,
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl RunConfig {
    /// Sector grids keep 5% of the opening clear of each ray.
    pub fn theta_margin(&self) -> f64 {
        match self.domain {
            ConeDomain::FullPlane => 0.0,
            ConeDomain::Sector { alpha, beta } => 0.05 * (beta - alpha),
        }
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec {
            domain: self.domain,
            r_min: self.r_min,
            r_max: self.r_max,
            n_r: self.n_r,
            n_theta: self.n_theta,
            theta_margin: self.theta_margin(),
        }
    }
}

const KEYS: &[&str] = &[
    "family", "lambda", "c1", "c2", "c3", "c4", "c5", "domain", "alpha", "beta", "rmin",
    "rmax", "nr", "ntheta",
];

/// Parses and validates a config. Family constraints and domain
/// admissibility are enforced here so downstream code only ever sees
/// genuine solutions.
pub fn parse_config(text: &str) -> Result<RunConfig, IoError> {
    let mut seen: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(IoError::BadSyntax { line });
        };
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(IoError::UnknownKey { line, key });
        }
        if seen.insert(key.clone(), (line, value)).is_some() {
            return Err(IoError::DuplicateKey { line, key });
        }
    }

    let num = |key: &str, default: f64| -> Result<f64, IoError> {
        match seen.get(key) {
            None => Ok(default),
            Some((line, v)) => v.parse().map_err(|_| IoError::BadValue {
                line: *line,
                key: key.into(),
                value: v.clone(),
            }),
        }
    };
    let count = |key: &str, default: usize| -> Result<usize, IoError> {
        match seen.get(key) {
            None => Ok(default),
            Some((line, v)) => v.parse().map_err(|_| IoError::BadValue {
                line: *line,
                key: key.into(),
                value: v.clone(),
            }),
        }
    };

    let c1 = num("c1", 0.0)?;
    let c2 = num("c2", 0.0)?;
    let c3 = num("c3", 0.0)?;
    let c4 = num("c4", 0.0)?;
    let c5 = num("c5", 0.0)?;
    let lambda = num("lambda", 0.0)?;

    let flow = match seen.get("family") {
        None => return Err(IoError::MissingFamily),
        Some((line, name)) => match name.to_ascii_lowercase().as_str() {
            "constant" => FlowSolution::Constant { c1, c2, c3 },
            "linear" => FlowSolution::Linear { c1, c2, c3, c4 },
            "quadratic" => FlowSolution::make_quadratic(c1, c2, c3, c4, c5)?,
            "powermode" => FlowSolution::power_mode(lambda, c1, c2, c3)?,
            "rotlog" => FlowSolution::RotLog { c1, c2, c3 },
            "shearx" => FlowSolution::ShearX { c1, c2, c3 },
            "sheary" => FlowSolution::ShearY { c1, c2, c3 },
            other => {
                let _ = line;
                return Err(IoError::UnknownFamily(other.to_string()));
            }
        },
    };

    let domain = match seen.get("domain") {
        None => ConeDomain::FullPlane,
        Some((line, v)) => match v.to_ascii_lowercase().as_str() {
            "fullplane" => ConeDomain::FullPlane,
            "sector" => {
                ConeDomain::sector(num("alpha", 0.0)?, num("beta", std::f64::consts::PI)?)?
            }
            other => {
                return Err(IoError::BadValue {
                    line: *line,
                    key: "domain".into(),
                    value: other.to_string(),
                })
            }
        },
    };

    let adm = flow.admissible(&domain);
    if !adm.admissible {
        return Err(IoError::NotAdmissible { reason: adm.reason });
    }

    let cfg = RunConfig {
        flow,
        domain,
        r_min: num("rmin", 0.5)?,
        r_max: num("rmax", 2.0)?,
        n_r: count("nr", 12)?,
        n_theta: count("ntheta", 32)?,
    };
    cfg.grid().validate().map_err(|e| IoError::Grid(e.to_string()))?;
    Ok(cfg)
}

/// Renders a config that parses back to the same [`RunConfig`].
pub fn render_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    match cfg.flow {
        FlowSolution::Constant { c1, c2, c3 } => {
            push("family", "constant".into());
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
        }
        FlowSolution::Linear { c1, c2, c3, c4 } => {
            push("family", "linear".into());
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
            push("c4", format!("{c4}"));
        }
        FlowSolution::Quadratic { c1, c2, c3, c4, c5 } => {
            push("family", "quadratic".into());
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
            push("c4", format!("{c4}"));
            push("c5", format!("{c5}"));
        }
        FlowSolution::PowerMode { lambda, c1, c2, c3 } => {
            push("family", "powermode".into());
            push("lambda", format!("{lambda}"));
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
        }
        FlowSolution::RotLog { c1, c2, c3 } => {
            push("family", "rotlog".into());
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
        }
        FlowSolution::ShearX { c1, c2, c3 } => {
            push("family", "shearx".into());
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
        }
        FlowSolution::ShearY { c1, c2, c3 } => {
            push("family", "sheary".into());
            push("c1", format!("{c1}"));
            push("c2", format!("{c2}"));
            push("c3", format!("{c3}"));
        }
    }
    match cfg.domain {
        ConeDomain::FullPlane => push("domain", "fullplane".into()),
        ConeDomain::Sector { alpha, beta } => {
            push("domain", "sector".into());
            push("alpha", format!("{alpha}"));
            push("beta", format!("{beta}"));
        }
    }
    push("rmin", format!("{}", cfg.r_min));
    push("rmax", format!("{}", cfg.r_max));
    push("nr", format!("{}", cfg.n_r));
    push("ntheta", format!("{}", cfg.n_theta));
    out
}

pub const CSV_HEADER: &str = "x,y,u1,u2,p,w";

/// CSV snapshot of a field over a grid. Returns the text and the number of
/// non-finite entries that were written as `nan`.
pub fn export_grid(flow: &FlowSolution, spec: &GridSpec) -> Result<(String, usize), IoError> {
    let pts = spec.points().map_err(|e| IoError::Grid(e.to_string()))?;
    let mut out = String::with_capacity(pts.len() * 96 + 16);
    out.push_str(CSV_HEADER);
    out.push('\n');
    let mut non_finite = 0usize;
    let mut cell = |out: &mut String, v: f64| {
        if v.is_finite() {
            out.push_str(&format!("{v:.16e}"));
        } else {
            non_finite += 1;
            out.push_str("nan");
        }
    };
    for p in pts {
        let (x, y) = p.to_cartesian();
        let u = flow.velocity(p);
        let pr = flow.pressure(p);
        let w = flow.vorticity(p).unwrap_or(f64::NAN);
        cell(&mut out, x);
        out.push(',');
        cell(&mut out, y);
        out.push(',');
        cell(&mut out, u[0]);
        out.push(',');
        cell(&mut out, u[1]);
        out.push(',');
        cell(&mut out, pr);
        out.push(',');
        cell(&mut out, w);
        out.push('\n');
    }
    Ok((out, non_finite))
}

/// A grid read back from CSV, regrouped into its polar product structure.
#[derive(Debug, Clone)]
pub struct ImportedGrid {
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
    /// Radius-major velocity samples, matching `radii` x `thetas`.
    pub u: Vec<Vector2<f64>>,
    pub pressure: Vec<f64>,
    pub vorticity: Vec<f64>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol::GRID_REGULARITY_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Parses a CSV snapshot and checks that the nodes form an exact product
/// grid in polar coordinates, radius-major.
pub fn import_grid(text: &str) -> Result<ImportedGrid, IoError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => {
            return Err(IoError::Csv {
                line: 1,
                message: format!("header must be exactly '{CSV_HEADER}'"),
            })
        }
    }

    let mut rows: Vec<(f64, f64, [f64; 4])> = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 6 {
            return Err(IoError::Csv { line, message: format!("expected 6 fields, got {}", fields.len()) });
        }
        let mut vals = [0.0f64; 6];
        for (k, f) in fields.iter().enumerate() {
            vals[k] = f.trim().parse().map_err(|_| IoError::Csv {
                line,
                message: format!("cannot parse '{}'", f.trim()),
            })?;
        }
        let p = to_polar(vals[0], vals[1]);
        rows.push((p.r, p.theta, [vals[2], vals[3], vals[4], vals[5]]));
    }
    if rows.is_empty() {
        return Err(IoError::Csv { line: 2, message: "no data rows".into() });
    }

    // radius-major: the leading block shares the first radius and fixes the
    // angle list
    let r0 = rows[0].0;
    let n_theta = rows.iter().take_while(|row| close(row.0, r0)).count();
    if rows.len() % n_theta != 0 {
        return Err(IoError::Csv {
            line: 2,
            message: format!(
                "{} rows do not tile into blocks of {} angles",
                rows.len(),
                n_theta
            ),
        });
    }
    let n_r = rows.len() / n_theta;
    let thetas: Vec<f64> = rows[..n_theta].iter().map(|row| row.1).collect();
    if thetas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(IoError::Csv { line: 2, message: "angles must increase within a block".into() });
    }
    let mut radii = Vec::with_capacity(n_r);
    for b in 0..n_r {
        let block = &rows[b * n_theta..(b + 1) * n_theta];
        let r = block[0].0;
        for (j, row) in block.iter().enumerate() {
            if !close(row.0, r) || !close(row.1, thetas[j]) {
                return Err(IoError::Csv {
                    line: 2 + b * n_theta + j,
                    message: "nodes do not form a product grid".into(),
                });
            }
        }
        if let Some(&prev) = radii.last() {
            if r <= prev {
                return Err(IoError::Csv {
                    line: 2 + b * n_theta,
                    message: "radii must increase block to block".into(),
                });
            }
        }
        radii.push(r);
    }

    Ok(ImportedGrid {
        radii,
        thetas,
        u: rows.iter().map(|row| Vector2::new(row.2[0], row.2[1])).collect(),
        pressure: rows.iter().map(|row| row.2[2]).collect(),
        vorticity: rows.iter().map(|row| row.2[3]).collect(),
    })
}
