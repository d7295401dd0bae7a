//! Recovers the catalog family and constants from gridded velocity samples.
//!
//! The route follows the separation structure of the catalog. A singular
//! value split of the samples decides whether both velocity components share
//! one radial profile; a log-log (or log-weighted) fit then pins the profile,
//! and the constants come from direct least squares against the closed-form
//! basis fields of the matched family. Fields with two independent profiles
//! are pushed through the incompressibility reduction and matched against
//! the shear pair. Every success is re-verified against the samples before
//! being returned; anything else comes back as unclassifiable, with the
//! intermediate diagnostics attached.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use thiserror::Error;

use crate::families::FlowSolution;
use crate::geometry::{ConeDomain, PolarPoint};
use crate::reduction::{derive_radial_system, Fn1D, GeneralAnsatz, ReductionError};
use crate::tol;
use crate::verifier::GridSpec;

/// Velocity samples on a polar product grid, radius-major.
#[derive(Debug, Clone)]
pub struct FieldSamples {
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
    pub u: Vec<Vector2<f64>>,
    pub grad: Option<Vec<Matrix2<f64>>>,
}

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("bad samples: {0}")]
    BadSamples(String),
    #[error(
        "no catalog family matches (rank-1 ratio {:.3e}, model residual {:.3e})",
        .0.rank1_ratio, .0.model_residual
    )]
    Unclassifiable(Diagnostics),
}

/// Intermediate quantities of the classification, kept for reporting.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    /// sigma_2 / sigma_1 of the combined sample matrix.
    pub rank1_ratio: f64,
    /// Fitted radial exponent, when one profile carries both components.
    pub lambda_fit: Option<f64>,
    /// RMS of a polar finite-difference divergence over interior samples.
    pub divergence_rms: f64,
    /// Conditioning of the two-angle incompressibility system (two-profile
    /// route only).
    pub d1_conditioning: Option<f64>,
    /// RMS misfit of the emitted model against the samples, relative to the
    /// sample RMS; infinite when no model was reached.
    pub model_residual: f64,
}

/// A successful classification.
#[derive(Debug, Clone)]
pub struct Classification {
    pub flow: FlowSolution,
    pub diagnostics: Diagnostics,
}

/// Tunable gates for [`classify`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Largest sigma_2/sigma_1 treated as a single shared profile.
    pub rank1_tol: f64,
    /// Acceptance gate for radial fits and for the final model residual.
    pub fit_tol: f64,
    /// Snap distance from a fitted exponent to a structural integer.
    pub lambda_snap: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            rank1_tol: tol::FIT_ACCEPT_TOL,
            fit_tol: tol::FIT_ACCEPT_TOL,
            lambda_snap: 1e-6,
        }
    }
}

impl FieldSamples {
    /// Validates grid shape: at least 8 radii spanning a factor of 4, at
    /// least 16 angles, both strictly increasing, and one sample per node.
    pub fn new(
        radii: Vec<f64>,
        thetas: Vec<f64>,
        u: Vec<Vector2<f64>>,
        grad: Option<Vec<Matrix2<f64>>>,
    ) -> Result<Self, ClassifierError> {
        let bad = |m: &str| Err(ClassifierError::BadSamples(m.into()));
        if radii.len() < 8 {
            return bad("need at least 8 radii");
        }
        if thetas.len() < 16 {
            return bad("need at least 16 angles");
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) || radii[0] <= 0.0 {
            return bad("radii must be positive and strictly increasing");
        }
        if thetas.windows(2).any(|w| w[1] <= w[0]) {
            return bad("angles must be strictly increasing");
        }
        if radii[radii.len() - 1] / radii[0] < 4.0 * (1.0 - 1e-12) {
            return bad("radii must span at least a factor of 4");
        }
        if u.len() != radii.len() * thetas.len() {
            return bad("need exactly one velocity sample per grid node");
        }
        if let Some(g) = &grad {
            if g.len() != u.len() {
                return bad("gradient samples must match the grid");
            }
        }
        Ok(FieldSamples { radii, thetas, u, grad })
    }

    /// Samples a catalog field on a grid.
    pub fn from_flow(flow: &FlowSolution, spec: &GridSpec) -> Result<Self, ClassifierError> {
        let pts = spec
            .points()
            .map_err(|e| ClassifierError::BadSamples(e.to_string()))?;
        let u = pts.iter().map(|&p| flow.velocity(p)).collect();
        FieldSamples::new(spec.radii(), spec.angles(), u, None)
    }

    fn at(&self, i: usize, j: usize) -> Vector2<f64> {
        self.u[i * self.thetas.len() + j]
    }

    fn rms(&self) -> f64 {
        let acc: f64 = self.u.iter().map(|v| v.norm_squared()).sum();
        (acc / self.u.len() as f64).sqrt()
    }
}

/// Derivative at the middle node of three non-uniformly spaced samples.
fn lagrange3_deriv(x: [f64; 3], f: [f64; 3]) -> f64 {
    f[0] * (x[1] - x[2]) / ((x[0] - x[1]) * (x[0] - x[2]))
        + f[1] * (2.0 * x[1] - x[0] - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]))
        + f[2] * (x[1] - x[0]) / ((x[2] - x[0]) * (x[2] - x[1]))
}

/// RMS of the polar divergence d_r u_r + u_r / r + d_t u_t / r rebuilt by
/// finite differences over interior grid nodes. Diagnostic only: the grid
/// is usually too coarse for this to reach the analytic floor.
fn divergence_rms(s: &FieldSamples) -> f64 {
    let (nr, nt) = (s.radii.len(), s.thetas.len());
    let polar = |i: usize, j: usize| {
        let t = s.thetas[j];
        let u = s.at(i, j);
        (u[0] * t.cos() + u[1] * t.sin(), -u[0] * t.sin() + u[1] * t.cos())
    };
    let mut acc = 0.0;
    let mut count = 0usize;
    for i in 1..nr - 1 {
        for j in 1..nt - 1 {
            let r = s.radii[i];
            let dr = lagrange3_deriv(
                [s.radii[i - 1], r, s.radii[i + 1]],
                [polar(i - 1, j).0, polar(i, j).0, polar(i + 1, j).0],
            );
            let dt = lagrange3_deriv(
                [s.thetas[j - 1], s.thetas[j], s.thetas[j + 1]],
                [polar(i, j - 1).1, polar(i, j).1, polar(i, j + 1).1],
            );
            let div = dr + polar(i, j).0 / r + dt / r;
            acc += div * div;
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        (acc / count as f64).sqrt()
    }
}

/// Splits a matrix into rank-one factors (row profile, unit-RMS column
/// profile) and reports the relative Frobenius mass the leading pair
/// leaves behind. The pair comes from alternating projection rather than
/// a full SVD: only the top triple matters here, and the iteration stays
/// consistent on wide matrices with zero columns where the dense SVD can
/// return a mismatched (sigma, u, v).
fn rank1_factors(m: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>, f64) {
    let (nrows, ncols) = (m.nrows(), m.ncols());
    // the heaviest row already points along the dominant right factor
    // whenever the matrix is close to rank one
    let mut seed = 0;
    for i in 0..nrows {
        if m.row(i).norm() > m.row(seed).norm() {
            seed = i;
        }
    }
    let mut v = m.row(seed).transpose();
    let mut u = DVector::zeros(nrows);
    let mut s1 = 0.0f64;
    let start = v.norm();
    if start > 0.0 {
        v /= start;
        let mut prev = f64::INFINITY;
        for _ in 0..128 {
            u = m * &v;
            let su = u.norm();
            if su == 0.0 {
                s1 = 0.0;
                break;
            }
            u /= su;
            v = m.tr_mul(&u);
            s1 = v.norm();
            if s1 == 0.0 {
                break;
            }
            v /= s1;
            if (s1 - prev).abs() <= 1e-14 * s1 {
                break;
            }
            prev = s1;
        }
    }
    let mut tail = 0.0f64;
    for i in 0..nrows {
        for j in 0..ncols {
            let d = m[(i, j)] - s1 * u[i] * v[j];
            tail += d * d;
        }
    }
    let ratio = if s1 == 0.0 { 0.0 } else { tail.sqrt() / s1 };
    // gauge: unit-RMS angular factor with a positive dominant entry
    let mut imax = 0;
    for j in 0..ncols {
        if v[j].abs() > v[imax].abs() {
            imax = j;
        }
    }
    let sign = if v[imax] >= 0.0 { 1.0 } else { -1.0 };
    let scale = (ncols as f64).sqrt();
    let vv: Vec<f64> = (0..ncols).map(|j| v[j] * scale * sign).collect();
    let phi: Vec<f64> = (0..nrows).map(|i| u[i] * s1 * sign / scale).collect();
    (phi, vv, ratio)
}

/// Result of fitting a shared radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialFit {
    /// phi(r) = amp * r^lambda
    Power { lambda: f64, amp: f64, residual: f64 },
    /// phi(r) = lin * r + log * r ln r
    LogLinear { lin: f64, log: f64, residual: f64 },
}

impl RadialFit {
    pub fn residual(&self) -> f64 {
        match *self {
            RadialFit::Power { residual, .. } | RadialFit::LogLinear { residual, .. } => residual,
        }
    }
}

/// Fits a profile as a pure power when the values keep one sign, falling
/// back to the r / r ln r pair, preferring the power form whenever it
/// reaches the acceptance gate.
pub fn fit_lambda(radii: &[f64], phi: &[f64], accept: f64) -> RadialFit {
    let scale = phi.iter().fold(0.0f64, |a, &p| a.max(p.abs()));
    let power = if scale > 0.0 && phi.iter().all(|&p| p != 0.0 && p.signum() == phi[0].signum())
    {
        let pts: Vec<(f64, f64)> = radii
            .iter()
            .zip(phi)
            .map(|(&r, &p)| (r.ln(), p.abs().ln()))
            .collect();
        let n = pts.len() as f64;
        let (sx, sy, sxx, sxy) = pts.iter().fold((0.0, 0.0, 0.0, 0.0), |a, &(x, y)| {
            (a.0 + x, a.1 + y, a.2 + x * x, a.3 + x * y)
        });
        let lambda = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let amp = phi[0].signum() * ((sy - lambda * sx) / n).exp();
        let residual = radii
            .iter()
            .zip(phi)
            .fold(0.0f64, |a, (&r, &p)| a.max((p - amp * r.powf(lambda)).abs()))
            / scale;
        Some(RadialFit::Power { lambda, amp, residual })
    } else {
        None
    };
    if let Some(p) = power {
        if p.residual() <= accept {
            return p;
        }
    }

    let n = radii.len();
    let mut m = DMatrix::zeros(n, 2);
    let mut b = DVector::zeros(n);
    for (i, (&r, &p)) in radii.iter().zip(phi).enumerate() {
        m[(i, 0)] = r;
        m[(i, 1)] = r * r.ln();
        b[i] = p;
    }
    let svd = m.svd(true, true);
    let sol = svd.solve(&b, 1e-13 * svd.singular_values.max()).expect("2-column solve");
    let residual = radii
        .iter()
        .zip(phi)
        .fold(0.0f64, |a, (&r, &p)| {
            a.max((p - sol[0] * r - sol[1] * r * r.ln()).abs())
        })
        / scale.max(f64::MIN_POSITIVE);
    RadialFit::LogLinear { lin: sol[0], log: sol[1], residual }
}

/// Least squares against arbitrary Cartesian basis fields, over all samples.
fn ls_against_basis(
    s: &FieldSamples,
    basis: &[&dyn Fn(f64, f64) -> Vector2<f64>],
) -> Vec<f64> {
    let (nr, nt) = (s.radii.len(), s.thetas.len());
    let rows = 2 * nr * nt;
    let mut m = DMatrix::zeros(rows, basis.len());
    let mut b = DVector::zeros(rows);
    for i in 0..nr {
        for j in 0..nt {
            let p = PolarPoint::new(s.radii[i], s.thetas[j]);
            let (x, y) = p.to_cartesian();
            let row = 2 * (i * nt + j);
            for (k, f) in basis.iter().enumerate() {
                let v = f(x, y);
                m[(row, k)] = v[0];
                m[(row + 1, k)] = v[1];
            }
            let u = s.at(i, j);
            b[row] = u[0];
            b[row + 1] = u[1];
        }
    }
    let svd = m.svd(true, true);
    let sol = svd
        .solve(&b, 1e-13 * svd.singular_values.max().max(f64::MIN_POSITIVE))
        .expect("least squares");
    sol.iter().copied().collect()
}

/// RMS misfit of a candidate model against the samples, relative to the
/// sample RMS.
pub fn model_residual(flow: &FlowSolution, s: &FieldSamples) -> f64 {
    let mut acc = 0.0;
    for i in 0..s.radii.len() {
        for j in 0..s.thetas.len() {
            let p = PolarPoint::new(s.radii[i], s.thetas[j]);
            acc += (flow.velocity(p) - s.at(i, j)).norm_squared();
        }
    }
    let rms = s.rms();
    ((acc / s.u.len() as f64).sqrt()) / rms.max(f64::MIN_POSITIVE)
}

fn snap(lambda: f64, domain: &ConeDomain, snap_tol: f64) -> f64 {
    let nearest = lambda.round();
    if (lambda - nearest).abs() <= snap_tol {
        let small = nearest == 0.0 || nearest == 1.0 || nearest == 2.0;
        if small || (domain.is_full_plane() && nearest >= 3.0) {
            return nearest;
        }
    }
    lambda
}

/// Low-wavenumber trigonometric series a0 + sum_{k<=3} ak cos kt + bk sin kt,
/// fitted by least squares; the catalog's angular factors all live here.
#[derive(Debug, Clone, Copy)]
struct AngularSeries {
    c: [f64; 7],
}

impl AngularSeries {
    fn basis(t: f64) -> [f64; 7] {
        [
            1.0,
            t.cos(),
            t.sin(),
            (2.0 * t).cos(),
            (2.0 * t).sin(),
            (3.0 * t).cos(),
            (3.0 * t).sin(),
        ]
    }

    fn fit(thetas: &[f64], values: &[f64]) -> AngularSeries {
        let n = thetas.len();
        let mut m = DMatrix::zeros(n, 7);
        let mut b = DVector::zeros(n);
        for (i, (&t, &v)) in thetas.iter().zip(values).enumerate() {
            for (k, e) in Self::basis(t).iter().enumerate() {
                m[(i, k)] = *e;
            }
            b[i] = v;
        }
        let svd = m.svd(true, true);
        let sol = svd
            .solve(&b, 1e-12 * svd.singular_values.max().max(f64::MIN_POSITIVE))
            .expect("trig series fit");
        let mut c = [0.0; 7];
        c.copy_from_slice(sol.as_slice());
        AngularSeries { c }
    }

    fn eval(&self, t: f64) -> f64 {
        let e = Self::basis(t);
        (0..7).map(|k| self.c[k] * e[k]).sum()
    }

    fn deriv(&self, t: f64) -> f64 {
        let (s1, c1) = t.sin_cos();
        let (s2, c2) = (2.0 * t).sin_cos();
        let (s3, c3) = (3.0 * t).sin_cos();
        -self.c[1] * s1 + self.c[2] * c1 - 2.0 * self.c[3] * s2 + 2.0 * self.c[4] * c2
            - 3.0 * self.c[5] * s3
            + 3.0 * self.c[6] * c3
    }
}

fn fit_constant_family(s: &FieldSamples) -> FlowSolution {
    let n = s.u.len() as f64;
    let (mut m1, mut m2) = (0.0, 0.0);
    for v in &s.u {
        m1 += v[0];
        m2 += v[1];
    }
    FlowSolution::Constant { c1: m1 / n, c2: m2 / n, c3: 0.0 }
}

fn fit_linear_family(s: &FieldSamples) -> FlowSolution {
    let c = ls_against_basis(
        s,
        &[
            &|x, y| Vector2::new(x, -y),
            &|_, y| Vector2::new(y, 0.0),
            &|x, _| Vector2::new(0.0, x),
        ],
    );
    FlowSolution::Linear { c1: c[0], c2: c[1], c3: c[2], c4: 0.0 }
}

fn fit_quadratic_family(s: &FieldSamples) -> Option<FlowSolution> {
    let c = ls_against_basis(
        s,
        &[
            &|x, y| Vector2::new(2.0 * x * y, -3.0 * x * x - y * y),
            &|x, y| Vector2::new(x * x + 3.0 * y * y, -2.0 * x * y),
            &|x, y| Vector2::new(x * x - y * y, -2.0 * x * y),
            &|x, y| Vector2::new(2.0 * x * y, x * x - y * y),
        ],
    );
    let scale = c.iter().fold(0.0f64, |a, &x| a.max(x.abs())).max(f64::MIN_POSITIVE);
    let low = (c[0] * c[0] + c[1] * c[1]).sqrt();
    if low <= 1e-9 * scale {
        // no low-frequency part: constraints hold with c1 = c2 = 0
        return FlowSolution::make_quadratic(0.0, 0.0, c[2], c[3], 0.0).ok();
    }
    // project the high-frequency pair onto the constraint manifold
    let den = c[0] * c[0] + c[1] * c[1];
    let c3 = c[1] * (3.0 * c[0] * c[0] - c[1] * c[1]) / den;
    let c4 = c[0] * (3.0 * c[1] * c[1] - c[0] * c[0]) / den;
    let drift = ((c[2] - c3).abs()).max((c[3] - c4).abs());
    if drift > 1e-6 * scale {
        return None;
    }
    FlowSolution::make_quadratic(c[0], c[1], c3, c4, 0.0).ok()
}

fn fit_power_family(s: &FieldSamples, lambda: f64) -> Option<FlowSolution> {
    let c = ls_against_basis(
        s,
        &[
            &|x, y| {
                let p = crate::geometry::to_polar(x, y);
                let a = lambda * p.theta;
                p.r.powf(lambda) * Vector2::new(a.cos(), -a.sin())
            },
            &|x, y| {
                let p = crate::geometry::to_polar(x, y);
                let a = lambda * p.theta;
                p.r.powf(lambda) * Vector2::new(a.sin(), a.cos())
            },
        ],
    );
    FlowSolution::power_mode(lambda, c[0], c[1], 0.0).ok()
}

fn fit_rotlog_family(s: &FieldSamples) -> FlowSolution {
    let c = ls_against_basis(
        s,
        &[
            &|x, y| Vector2::new(-y, x),
            &|x, y| {
                let r = x.hypot(y);
                r.ln() * Vector2::new(-y, x)
            },
        ],
    );
    FlowSolution::RotLog { c1: c[0], c2: c[1], c3: 0.0 }
}

fn fit_shear_x(s: &FieldSamples) -> FlowSolution {
    let c = ls_against_basis(
        s,
        &[&|_, _| Vector2::new(1.0, 0.0), &|x, _| Vector2::new(0.0, x)],
    );
    FlowSolution::ShearX { c1: c[0], c2: c[1], c3: 0.0 }
}

fn fit_shear_y(s: &FieldSamples) -> FlowSolution {
    let c = ls_against_basis(
        s,
        &[&|_, y| Vector2::new(y, 0.0), &|_, _| Vector2::new(0.0, 1.0)],
    );
    FlowSolution::ShearY { c1: c[0], c2: c[1], c3: 0.0 }
}

fn finish(
    flow: FlowSolution,
    s: &FieldSamples,
    domain: &ConeDomain,
    mut diag: Diagnostics,
    opts: &ClassifyOptions,
) -> Result<Classification, ClassifierError> {
    diag.model_residual = model_residual(&flow, s);
    if diag.model_residual > opts.fit_tol || !flow.admissible(domain).admissible {
        return Err(ClassifierError::Unclassifiable(diag));
    }
    Ok(Classification { flow, diagnostics: diag })
}

/// Identifies the catalog family and constants behind the samples.
pub fn classify(
    s: &FieldSamples,
    domain: &ConeDomain,
    opts: &ClassifyOptions,
) -> Result<Classification, ClassifierError> {
    let (nr, nt) = (s.radii.len(), s.thetas.len());
    let mut diag = Diagnostics {
        model_residual: f64::INFINITY,
        divergence_rms: divergence_rms(s),
        ..Diagnostics::default()
    };

    // an all-zero field is the zero constant flow
    let sup = s.u.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    if sup <= tol::ZERO_ABS {
        diag.model_residual = 0.0;
        return Ok(Classification {
            flow: FlowSolution::Constant { c1: 0.0, c2: 0.0, c3: 0.0 },
            diagnostics: diag,
        });
    }

    // shared-profile test on [u1 | u2] as functions of radius
    let mut combined = DMatrix::zeros(nr, 2 * nt);
    for i in 0..nr {
        for j in 0..nt {
            let u = s.at(i, j);
            combined[(i, j)] = u[0];
            combined[(i, nt + j)] = u[1];
        }
    }
    let (phi, _, ratio) = rank1_factors(&combined);
    diag.rank1_ratio = ratio;

    if ratio <= opts.rank1_tol {
        let fit = fit_lambda(&s.radii, &phi, opts.fit_tol);
        if fit.residual() > opts.fit_tol {
            return Err(ClassifierError::Unclassifiable(diag));
        }
        match fit {
            RadialFit::Power { lambda, .. } => {
                let lam = snap(lambda, domain, opts.lambda_snap);
                diag.lambda_fit = Some(lam);
                let flow = if lam == 0.0 {
                    Some(fit_constant_family(s))
                } else if lam == 1.0 {
                    Some(fit_linear_family(s))
                } else if lam == 2.0 {
                    fit_quadratic_family(s)
                } else {
                    fit_power_family(s, lam)
                };
                match flow {
                    Some(f) => finish(f, s, domain, diag, opts),
                    None => Err(ClassifierError::Unclassifiable(diag)),
                }
            }
            RadialFit::LogLinear { .. } => {
                diag.lambda_fit = None;
                finish(fit_rotlog_family(s), s, domain, diag, opts)
            }
        }
    } else {
        classify_two_profiles(s, domain, diag, opts)
    }
}

fn classify_two_profiles(
    s: &FieldSamples,
    domain: &ConeDomain,
    mut diag: Diagnostics,
    opts: &ClassifyOptions,
) -> Result<Classification, ClassifierError> {
    let (nr, nt) = (s.radii.len(), s.thetas.len());
    let mut factors = Vec::with_capacity(2);
    for comp in 0..2 {
        let mut m = DMatrix::zeros(nr, nt);
        for i in 0..nr {
            for j in 0..nt {
                m[(i, j)] = s.at(i, j)[comp];
            }
        }
        let (phi, v, ratio) = rank1_factors(&m);
        if ratio > opts.rank1_tol {
            return Err(ClassifierError::Unclassifiable(diag));
        }
        factors.push((phi, v));
    }

    // each component must ride a pure power profile
    let mut lambdas = [0.0; 2];
    let mut amps = [0.0; 2];
    for (k, (phi, _)) in factors.iter().enumerate() {
        match fit_lambda(&s.radii, phi, opts.fit_tol) {
            RadialFit::Power { lambda, amp, residual } if residual <= opts.fit_tol => {
                // exponents here only shape the probe ansatz, so any integer
                // may be snapped
                let nearest = lambda.round();
                lambdas[k] = if (lambda - nearest).abs() <= opts.lambda_snap {
                    nearest
                } else {
                    lambda
                };
                amps[k] = amp;
            }
            _ => return Err(ClassifierError::Unclassifiable(diag)),
        }
    }

    // analytic angular factors from a low-wavenumber trigonometric fit
    let s1 = AngularSeries::fit(&s.thetas, &factors[0].1);
    let s2 = AngularSeries::fit(&s.thetas, &factors[1].1);
    let (l1, a1) = (lambdas[0], amps[0]);
    let (l2, a2) = (lambdas[1], amps[1]);
    let ansatz = GeneralAnsatz {
        v1: Fn1D::new(move |t| s1.eval(t), move |t| s1.deriv(t)),
        v2: Fn1D::new(move |t| s2.eval(t), move |t| s2.deriv(t)),
        phi1: Fn1D::new(move |r| a1 * r.powf(l1), move |r| a1 * l1 * r.powf(l1 - 1.0)),
        phi2: Fn1D::new(move |r| a2 * r.powf(l2), move |r| a2 * l2 * r.powf(l2 - 1.0)),
    };

    let (alpha, width) = match *domain {
        ConeDomain::FullPlane => (0.0, std::f64::consts::TAU),
        ConeDomain::Sector { alpha, beta } => (alpha, beta - alpha),
    };
    let probe_pairs = [(0.3, 0.7), (0.2, 0.55), (0.42, 0.83)];
    let mut fit = None;
    for (f1, f2) in probe_pairs {
        match derive_radial_system(
            &ansatz,
            alpha + f1 * width,
            alpha + f2 * width,
            &s.radii,
        ) {
            Ok(found) => {
                fit = Some(found);
                break;
            }
            Err(ReductionError::DegenerateAngles { conditioning }) => {
                diag.d1_conditioning = Some(conditioning);
            }
            Err(_) => {}
        }
    }
    let Some(fit) = fit else {
        return Err(ClassifierError::Unclassifiable(diag));
    };
    diag.d1_conditioning = None;

    let k = fit.coeffs;
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-6;
    let shear_like_x =
        close(k.a, 0.0) && close(k.b, 0.0) && close(k.c, 0.0) && close(k.d, 1.0);
    let shear_like_y =
        close(k.a, 1.0) && close(k.b, 0.0) && close(k.c, 0.0) && close(k.d, 0.0);
    let flow = if shear_like_x {
        fit_shear_x(s)
    } else if shear_like_y {
        fit_shear_y(s)
    } else {
        return Err(ClassifierError::Unclassifiable(diag));
    };
    finish(flow, s, domain, diag, opts)
}
