//! Numerical verification of catalog fields: residuals of the stationary
//! momentum balance, incompressibility and vorticity transport, evaluated
//! both from closed forms and from finite differences, plus pressure
//! recovery by line integration and near-origin profiling of the velocity
//! gradient and of Holder quotients.

use nalgebra::{Matrix2, Vector2};
use thiserror::Error;

use crate::families::{spectral_norm, FamilyError, FlowSolution};
use crate::geometry::{to_polar, ConeDomain, Margin, PolarPoint};

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("integration path leaves the domain at ({x}, {y})")]
    PathOutsideDomain { x: f64, y: f64 },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("gradient profiling applies only to the swirl-with-log family")]
    WrongFamily,
}

/// Sampling grid: geometric in radius, uniform in angle. Sector grids must
/// keep a positive clearance from the rays; full-plane grids wrap the whole
/// circle and ignore the margin.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub domain: ConeDomain,
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub theta_margin: f64,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), VerifierError> {
        if !(self.r_min.is_finite() && self.r_min > 0.0) || !(self.r_max >= self.r_min) {
            return Err(VerifierError::BadGrid(format!(
                "need 0 < r_min <= r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.n_r == 0 || self.n_theta == 0 {
            return Err(VerifierError::BadGrid("grid dimensions must be positive".into()));
        }
        if let ConeDomain::Sector { alpha, beta } = self.domain {
            if !(self.theta_margin > 0.0) {
                return Err(VerifierError::BadGrid(
                    "sector grids need a positive angular margin".into(),
                ));
            }
            if alpha + self.theta_margin >= beta - self.theta_margin {
                return Err(VerifierError::BadGrid(format!(
                    "margin {} swallows the sector [{alpha}, {beta}]",
                    self.theta_margin
                )));
            }
        }
        Ok(())
    }

    /// Geometrically spaced radii from r_min to r_max inclusive.
    pub fn radii(&self) -> Vec<f64> {
        if self.n_r == 1 {
            return vec![self.r_min];
        }
        let q = (self.r_max / self.r_min).powf(1.0 / (self.n_r as f64 - 1.0));
        (0..self.n_r).map(|j| self.r_min * q.powi(j as i32)).collect()
    }

    /// Sample angles: the full circle without endpoint duplication, or the
    /// margin-shrunk sector swept end to end.
    pub fn angles(&self) -> Vec<f64> {
        match self.domain {
            ConeDomain::FullPlane => (0..self.n_theta)
                .map(|j| std::f64::consts::TAU * j as f64 / self.n_theta as f64)
                .collect(),
            ConeDomain::Sector { alpha, beta } => {
                let lo = alpha + self.theta_margin;
                let hi = beta - self.theta_margin;
                if self.n_theta == 1 {
                    return vec![0.5 * (lo + hi)];
                }
                (0..self.n_theta)
                    .map(|j| lo + (hi - lo) * j as f64 / (self.n_theta as f64 - 1.0))
                    .collect()
            }
        }
    }

    /// All grid points, radius-major.
    pub fn points(&self) -> Result<Vec<PolarPoint>, VerifierError> {
        self.validate()?;
        let angles = self.angles();
        let mut pts = Vec::with_capacity(self.n_r * self.n_theta);
        for r in self.radii() {
            for &t in &angles {
                pts.push(PolarPoint::new(r, t));
            }
        }
        Ok(pts)
    }
}

/// Scale-normalized residuals of the three field equations at one point.
#[derive(Debug, Clone, Copy, Default)]
pub struct ResidualTriple {
    pub divergence: f64,
    pub momentum: f64,
    pub vorticity_transport: f64,
}

impl ResidualTriple {
    pub fn max_component(&self) -> f64 {
        self.divergence.max(self.momentum).max(self.vorticity_transport)
    }

    fn sup(self, other: ResidualTriple) -> ResidualTriple {
        ResidualTriple {
            divergence: self.divergence.max(other.divergence),
            momentum: self.momentum.max(other.momentum),
            vorticity_transport: self.vorticity_transport.max(other.vorticity_transport),
        }
    }

    fn norm(&self) -> f64 {
        (self.divergence * self.divergence
            + self.momentum * self.momentum
            + self.vorticity_transport * self.vorticity_transport)
            .sqrt()
    }
}

/// Residuals evaluated from the closed-form derivatives. Each residual is
/// divided by one plus the magnitudes of its constituent terms, so a value
/// near machine epsilon means the equation balances to rounding.
pub fn analytic_residual(flow: &FlowSolution, p: PolarPoint) -> Result<ResidualTriple, FamilyError> {
    let u = flow.velocity(p);
    let g = flow.velocity_gradient(p)?;
    let lap = flow.laplacian_velocity(p)?;
    let gp = flow.pressure_gradient(p)?;
    let dw = flow.vorticity_gradient(p)?;
    let lw = flow.vorticity_laplacian(p)?;

    let divergence = (g[(0, 0)] + g[(1, 1)]).abs() / (1.0 + g.norm());
    let advect = g * u;
    let mom = -lap + advect + gp;
    let momentum = mom.norm() / (1.0 + lap.norm() + advect.norm() + gp.norm());
    let transport = lw - u.dot(&dw);
    let vorticity_transport = transport.abs() / (1.0 + lw.abs() + u.norm() * dw.norm());
    Ok(ResidualTriple { divergence, momentum, vorticity_transport })
}

/// Componentwise supremum of the analytic residuals over a grid.
pub fn analytic_residual_report(
    flow: &FlowSolution,
    spec: &GridSpec,
) -> Result<ResidualTriple, VerifierError> {
    let mut worst = ResidualTriple::default();
    for p in spec.points()? {
        worst = worst.sup(analytic_residual(flow, p)?);
    }
    Ok(worst)
}

/// Default centered-difference step at a point: a mild fraction of the
/// length scale, clipped so the widest stencil (radius 2h) stays inside a
/// sector.
pub fn default_step(domain: &ConeDomain, p: PolarPoint) -> f64 {
    let h = 1e-3 * p.r.max(1.0);
    let clip = domain.ray_distance(p) / 4.0;
    if clip.is_finite() {
        h.min(clip)
    } else {
        h
    }
}

fn fd_vorticity(flow: &FlowSolution, x: f64, y: f64, h: f64) -> f64 {
    (flow.velocity_xy(x, y + h)[0] - flow.velocity_xy(x, y - h)[0]
        - flow.velocity_xy(x + h, y)[1]
        + flow.velocity_xy(x - h, y)[1])
        / (2.0 * h)
}

/// Residuals rebuilt from pure Cartesian central differences of the closed
/// forms: second-order stencils for all derivatives, with the vorticity
/// differenced once more at four displaced centers (a 13-point diamond of
/// radius 2h). Only the velocity and pressure values themselves are taken
/// from the closed forms.
pub fn fd_residual(flow: &FlowSolution, p: PolarPoint, h: f64) -> ResidualTriple {
    let (x, y) = p.to_cartesian();
    let u = flow.velocity_xy(x, y);

    let uxp = flow.velocity_xy(x + h, y);
    let uxm = flow.velocity_xy(x - h, y);
    let uyp = flow.velocity_xy(x, y + h);
    let uym = flow.velocity_xy(x, y - h);
    let g = Matrix2::new(
        (uxp[0] - uxm[0]) / (2.0 * h),
        (uyp[0] - uym[0]) / (2.0 * h),
        (uxp[1] - uxm[1]) / (2.0 * h),
        (uyp[1] - uym[1]) / (2.0 * h),
    );
    let lap = (uxp + uxm + uyp + uym - 4.0 * u) / (h * h);
    let gp = Vector2::new(
        (flow.pressure_xy(x + h, y) - flow.pressure_xy(x - h, y)) / (2.0 * h),
        (flow.pressure_xy(x, y + h) - flow.pressure_xy(x, y - h)) / (2.0 * h),
    );

    let w0 = fd_vorticity(flow, x, y, h);
    let wxp = fd_vorticity(flow, x + h, y, h);
    let wxm = fd_vorticity(flow, x - h, y, h);
    let wyp = fd_vorticity(flow, x, y + h, h);
    let wym = fd_vorticity(flow, x, y - h, h);
    let dw = Vector2::new((wxp - wxm) / (2.0 * h), (wyp - wym) / (2.0 * h));
    let lw = (wxp + wxm + wyp + wym - 4.0 * w0) / (h * h);

    let divergence = (g[(0, 0)] + g[(1, 1)]).abs() / (1.0 + g.norm());
    let advect = g * u;
    let mom = -lap + advect + gp;
    let momentum = mom.norm() / (1.0 + lap.norm() + advect.norm() + gp.norm());
    let transport = lw - u.dot(&dw);
    let vorticity_transport = transport.abs() / (1.0 + lw.abs() + u.norm() * dw.norm());
    ResidualTriple { divergence, momentum, vorticity_transport }
}

/// Root-mean-square gap between the finite-difference and analytic residual
/// triples over a grid. For an exact field this is the pure discretization
/// error and must shrink like h^2.
pub fn fd_gap_rms(flow: &FlowSolution, spec: &GridSpec, h: f64) -> Result<f64, VerifierError> {
    let pts = spec.points()?;
    let mut acc = 0.0;
    for &p in &pts {
        let a = analytic_residual(flow, p)?;
        let f = fd_residual(flow, p, h);
        let gap = ResidualTriple {
            divergence: f.divergence - a.divergence,
            momentum: f.momentum - a.momentum,
            vorticity_transport: f.vorticity_transport - a.vorticity_transport,
        };
        acc += gap.norm() * gap.norm();
    }
    Ok((acc / pts.len() as f64).sqrt())
}

/// Successive quotients of the finite-difference gap for a decreasing list
/// of steps; second-order stencils give quotients near 4 when each step
/// halves the previous one.
pub fn convergence_ratios(
    flow: &FlowSolution,
    spec: &GridSpec,
    steps: &[f64],
) -> Result<Vec<f64>, VerifierError> {
    if steps.len() < 2 {
        return Err(VerifierError::BadGrid("need at least two steps".into()));
    }
    let rms: Vec<f64> = steps
        .iter()
        .map(|&h| fd_gap_rms(flow, spec, h))
        .collect::<Result<_, _>>()?;
    Ok(rms.windows(2).map(|w| w[0] / w[1]).collect())
}

/// Reconstructs the pressure at `target` from its value at `anchor` by a
/// composite-midpoint line integral of the momentum balance along the
/// straight segment. Every quadrature node must stay inside the domain.
pub fn recover_pressure(
    flow: &FlowSolution,
    domain: &ConeDomain,
    anchor: PolarPoint,
    target: PolarPoint,
    n: usize,
) -> Result<f64, VerifierError> {
    if n == 0 {
        return Err(VerifierError::BadGrid("need at least one quadrature panel".into()));
    }
    for &p in &[anchor, target] {
        if !domain.contains(p, Margin::ZERO) {
            let (x, y) = p.to_cartesian();
            return Err(VerifierError::PathOutsideDomain { x, y });
        }
    }
    let (xa, ya) = anchor.to_cartesian();
    let (xt, yt) = target.to_cartesian();
    let step = Vector2::new((xt - xa) / n as f64, (yt - ya) / n as f64);
    let mut integral = 0.0;
    for k in 0..n {
        let s = (k as f64 + 0.5) / n as f64;
        let x = xa + s * (xt - xa);
        let y = ya + s * (yt - ya);
        let p = to_polar(x, y);
        if !domain.contains(p, Margin::ZERO) {
            return Err(VerifierError::PathOutsideDomain { x, y });
        }
        let grad_p = flow.laplacian_velocity(p)? - flow.velocity_gradient(p)? * flow.velocity(p);
        integral += grad_p.dot(&step);
    }
    Ok(flow.pressure(anchor) + integral)
}

fn affine_fit(samples: &[(f64, f64)]) -> (f64, f64) {
    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in samples {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let det = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / det;
    (slope, (sy - slope * sx) / n)
}

fn interior_angles(domain: &ConeDomain, n: usize) -> Vec<f64> {
    let (alpha, width) = match *domain {
        ConeDomain::FullPlane => (0.0, std::f64::consts::TAU),
        ConeDomain::Sector { alpha, beta } => (alpha, beta - alpha),
    };
    (0..n).map(|j| alpha + width * (j as f64 + 0.5) / n as f64).collect()
}

/// Growth profile of the velocity gradient toward the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum BlowupReport {
    /// The gradient norm is the same at every radius.
    Bounded { sup: f64 },
    /// Affine fit sup |grad u| ~ slope * |ln r| + intercept, with the
    /// (|ln r|, sup) samples that produced it.
    Unbounded { slope: f64, intercept: f64, samples: Vec<(f64, f64)> },
}

/// Measures sup over angles of the gradient spectral norm at each radius
/// and fits it against |ln r|. Only the swirl-with-log family develops an
/// unbounded gradient while staying a genuine solution, so every other
/// family is rejected.
pub fn blowup_profile(
    flow: &FlowSolution,
    domain: &ConeDomain,
    radii: &[f64],
) -> Result<BlowupReport, VerifierError> {
    let (c1, c2) = match *flow {
        FlowSolution::RotLog { c1, c2, .. } => (c1, c2),
        _ => return Err(VerifierError::WrongFamily),
    };
    if c2 == 0.0 {
        // rigid rotation: gradient [[0, -c1], [c1, 0]] everywhere
        return Ok(BlowupReport::Bounded { sup: c1.abs() });
    }
    if radii.len() < 2 || radii.iter().any(|&r| !(r.is_finite() && r > 0.0)) {
        return Err(VerifierError::BadGrid("need at least two positive radii".into()));
    }
    let angles = interior_angles(domain, 256);
    let mut samples = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut sup: f64 = 0.0;
        for &t in &angles {
            let g = flow.velocity_gradient(PolarPoint::new(r, t))?;
            sup = sup.max(spectral_norm(&g));
        }
        samples.push((r.ln().abs(), sup));
    }
    let (slope, intercept) = affine_fit(&samples);
    Ok(BlowupReport::Unbounded { slope, intercept, samples })
}

/// Table of Holder quotients sup_theta |u| / r^gamma by radius, with a
/// monotonicity flag for the smallest radii and the closed-form verdict on
/// whether the quotient eventually decays at the origin.
#[derive(Debug, Clone)]
pub struct HolderReport {
    pub gamma: f64,
    /// (r, quotient) rows ordered by decreasing radius.
    pub rows: Vec<(f64, f64)>,
    /// Quotients non-increasing over the last quarter of the rows.
    pub tail_decreasing: bool,
    /// Whether the quotient tends to zero as r -> 0 for this field.
    pub eventually_decays: bool,
}

/// Closed-form certificate that sup_theta |u| / r^gamma -> 0 as r -> 0.
pub fn eventual_decay_certificate(flow: &FlowSolution, gamma: f64) -> bool {
    match *flow {
        FlowSolution::Constant { c1, c2, .. } => c1 == 0.0 && c2 == 0.0,
        FlowSolution::Linear { c1, c2, c3, .. } => {
            (c1 == 0.0 && c2 == 0.0 && c3 == 0.0) || gamma < 1.0
        }
        FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
            (c1 == 0.0 && c2 == 0.0 && c3 == 0.0 && c4 == 0.0) || gamma < 2.0
        }
        FlowSolution::PowerMode { lambda, c1, c2, .. } => {
            (c1 == 0.0 && c2 == 0.0) || lambda > gamma
        }
        FlowSolution::RotLog { c1, c2, .. } => (c1 == 0.0 && c2 == 0.0) || gamma < 1.0,
        FlowSolution::ShearX { c1, c2, .. } => {
            if c1 != 0.0 {
                false
            } else {
                c2 == 0.0 || gamma < 1.0
            }
        }
        FlowSolution::ShearY { c1, c2, .. } => {
            if c2 != 0.0 {
                false
            } else {
                c1 == 0.0 || gamma < 1.0
            }
        }
    }
}

/// Measures the Holder quotient table over the given radii.
pub fn holder_check(
    flow: &FlowSolution,
    domain: &ConeDomain,
    gamma: f64,
    radii: &[f64],
) -> Result<HolderReport, VerifierError> {
    if radii.is_empty() || radii.iter().any(|&r| !(r.is_finite() && r > 0.0)) {
        return Err(VerifierError::BadGrid("need positive radii".into()));
    }
    let mut sorted = radii.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let angles = interior_angles(domain, 256);
    let mut rows = Vec::with_capacity(sorted.len());
    for &r in &sorted {
        let mut sup: f64 = 0.0;
        for &t in &angles {
            sup = sup.max(flow.velocity(PolarPoint::new(r, t)).norm());
        }
        rows.push((r, sup / r.powf(gamma)));
    }
    let tail = rows.len().div_ceil(4).max(1).min(rows.len() - 1).max(1);
    let tail_decreasing = rows.len() >= 2
        && rows[rows.len() - 1 - tail..]
            .windows(2)
            .all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12) + f64::MIN_POSITIVE);
    Ok(HolderReport {
        gamma,
        rows,
        tail_decreasing,
        eventually_decays: eventual_decay_certificate(flow, gamma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::quadratic_from_c1c2;
    use crate::tol;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn catalog() -> Vec<FlowSolution> {
        vec![
            FlowSolution::Constant { c1: 0.7, c2: -1.1, c3: 0.4 },
            FlowSolution::Linear { c1: 0.6, c2: -0.8, c3: 1.2, c4: 0.3 },
            quadratic_from_c1c2(1.0, 1.0, 0.2).unwrap(),
            FlowSolution::power_mode(1.5, 0.9, -0.4, 0.1).unwrap(),
            FlowSolution::power_mode(3.0, 0.5, 0.5, 0.0).unwrap(),
            FlowSolution::RotLog { c1: 0.8, c2: 1.3, c3: -0.2 },
            FlowSolution::ShearX { c1: 1.4, c2: -0.9, c3: 0.0 },
            FlowSolution::ShearY { c1: -0.5, c2: 2.0, c3: 0.7 },
        ]
    }

    fn sector_grid() -> GridSpec {
        GridSpec {
            domain: ConeDomain::sector(0.0, PI).unwrap(),
            r_min: 0.8,
            r_max: 1.8,
            n_r: 4,
            n_theta: 6,
            theta_margin: 0.15,
        }
    }

    #[test]
    fn grid_shapes_and_validation() {
        let spec = GridSpec {
            domain: ConeDomain::FullPlane,
            r_min: 0.5,
            r_max: 2.0,
            n_r: 5,
            n_theta: 8,
            theta_margin: 0.0,
        };
        let radii = spec.radii();
        assert_eq!(radii.len(), 5);
        assert_relative_eq!(radii[0], 0.5);
        assert_relative_eq!(radii[4], 2.0, max_relative = 1e-15);
        let q0 = radii[1] / radii[0];
        for w in radii.windows(2) {
            assert_relative_eq!(w[1] / w[0], q0, max_relative = 1e-12);
        }
        assert_eq!(spec.points().unwrap().len(), 40);
        // the full circle must not duplicate theta = 0
        let angles = spec.angles();
        assert!(angles.iter().all(|&t| t < std::f64::consts::TAU - 1e-12));

        let bad = GridSpec { r_min: 0.0, ..spec };
        assert!(bad.points().is_err());
        let sector = GridSpec {
            domain: ConeDomain::sector(0.0, 1.0).unwrap(),
            theta_margin: 0.0,
            ..spec
        };
        assert!(sector.points().is_err());
        let sector = GridSpec { theta_margin: 0.45, ..sector };
        for p in sector.points().unwrap() {
            assert!(p.theta >= 0.45 - 1e-12 && p.theta <= 0.55 + 1e-12);
        }
    }

    #[test]
    fn analytic_residuals_vanish_on_catalog() {
        let spec = GridSpec {
            domain: ConeDomain::sector(0.0, PI).unwrap(),
            r_min: 0.3,
            r_max: 2.5,
            n_r: 6,
            n_theta: 9,
            theta_margin: 0.1,
        };
        for flow in catalog() {
            let worst = analytic_residual_report(&flow, &spec).unwrap();
            assert!(worst.divergence <= tol::DIV_TRACE_TOL, "{flow:?}");
            assert!(worst.momentum <= tol::MOMENTUM_REL_TOL, "{flow:?}");
            assert!(worst.vorticity_transport <= tol::VORTICITY_REL_TOL, "{flow:?}");
        }
    }

    #[test]
    fn fd_gap_halves_at_second_order() {
        let spec = sector_grid();
        let steps = [1e-2, 5e-3, 2.5e-3];
        for flow in [
            FlowSolution::power_mode(1.5, 0.9, -0.4, 0.1).unwrap(),
            FlowSolution::RotLog { c1: 0.7, c2: 1.1, c3: 0.0 },
        ] {
            let ratios = convergence_ratios(&flow, &spec, &steps).unwrap();
            assert_eq!(ratios.len(), 2);
            for r in ratios {
                assert!(
                    (tol::FD_RATIO_LO..=tol::FD_RATIO_HI).contains(&r),
                    "ratio {r} for {flow:?}"
                );
            }
        }
    }

    #[test]
    fn default_step_respects_sector_rays() {
        let sector = ConeDomain::sector(0.0, PI).unwrap();
        let p = PolarPoint::new(1.0, 0.01);
        assert!(default_step(&sector, p) <= sector.ray_distance(p) / 4.0 + 1e-18);
        let far = PolarPoint::new(3.0, 1.5);
        assert_relative_eq!(default_step(&ConeDomain::FullPlane, far), 3e-3);
    }

    #[test]
    fn pressure_recovery_exact_for_flat_families_and_second_order() {
        let domain = ConeDomain::FullPlane;
        let anchor = PolarPoint::new(1.0, 0.3);
        let target = PolarPoint::new(1.5, 0.9);

        let lin = FlowSolution::Linear { c1: 0.6, c2: -0.8, c3: 1.2, c4: 0.3 };
        let got = recover_pressure(&lin, &domain, anchor, target, 8).unwrap();
        assert_relative_eq!(got, lin.pressure(target), max_relative = 1e-13);

        // the compatibility constraints force the advection term to vanish,
        // leaving a linear pressure, so even a coarse rule is exact
        let quad = quadratic_from_c1c2(1.0, 1.0, 0.2).unwrap();
        let e16 = (recover_pressure(&quad, &domain, anchor, target, 16).unwrap()
            - quad.pressure(target))
        .abs();
        assert!(e16 <= 1e-12, "quadratic pressure error {e16}");

        // genuine second-order decay needs an integrand that curves
        let mode = FlowSolution::power_mode(2.5, 0.8, -0.6, 1.0).unwrap();
        let exact = mode.pressure(target);
        let e256 = (recover_pressure(&mode, &domain, anchor, target, 256).unwrap() - exact).abs();
        let e512 = (recover_pressure(&mode, &domain, anchor, target, 512).unwrap() - exact).abs();
        assert!(e256 > 0.0);
        let ratio = e256 / e512;
        assert!((3.0..5.0).contains(&ratio), "midpoint order ratio {ratio}");
        let e4096 = (recover_pressure(&mode, &domain, anchor, target, 4096).unwrap() - exact).abs();
        assert!(e4096 <= tol::PRESSURE_RECOVERY_ABS);
    }

    #[test]
    fn pressure_path_must_stay_inside() {
        let domain = ConeDomain::sector(0.0, 3.0 * PI / 2.0).unwrap();
        let flow = FlowSolution::Linear { c1: 1.0, c2: 0.0, c3: 0.0, c4: 0.0 };
        let anchor = PolarPoint::new(1.0, 0.1);
        let target = PolarPoint::new(1.0, 4.6);
        let err = recover_pressure(&flow, &domain, anchor, target, 64).unwrap_err();
        assert!(matches!(err, VerifierError::PathOutsideDomain { .. }));
    }

    #[test]
    fn gradient_profile_slope_matches_log_coefficient() {
        let domain = ConeDomain::sector(0.0, PI).unwrap();
        let flow = FlowSolution::RotLog { c1: 5.0, c2: 2.0, c3: 0.0 };
        let radii: Vec<f64> = (5..=40).map(|k| 2f64.powi(-k)).collect();
        match blowup_profile(&flow, &domain, &radii).unwrap() {
            BlowupReport::Unbounded { slope, samples, .. } => {
                assert_relative_eq!(slope, 2.0, max_relative = 1e-10);
                assert_eq!(samples.len(), 36);
            }
            other => panic!("expected unbounded profile, got {other:?}"),
        }
        let rigid = FlowSolution::RotLog { c1: -3.0, c2: 0.0, c3: 0.0 };
        assert_eq!(
            blowup_profile(&rigid, &domain, &radii).unwrap(),
            BlowupReport::Bounded { sup: 3.0 }
        );
        let lin = FlowSolution::Linear { c1: 1.0, c2: 0.0, c3: 0.0, c4: 0.0 };
        assert!(matches!(
            blowup_profile(&lin, &domain, &radii),
            Err(VerifierError::WrongFamily)
        ));
    }

    #[test]
    fn holder_quotient_matches_closed_form_for_swirl() {
        let domain = ConeDomain::sector(0.0, PI).unwrap();
        let flow = FlowSolution::RotLog { c1: 1.0, c2: 1.0, c3: 0.0 };
        let radii: Vec<f64> = (0..=30).map(|k| 2f64.powi(-k)).collect();
        let gamma = 0.9;
        let rep = holder_check(&flow, &domain, gamma, &radii).unwrap();
        for &(r, q) in &rep.rows {
            let expect = r.powf(1.0 - gamma) * (1.0 + r.ln()).abs();
            assert_relative_eq!(q, expect, max_relative = 1e-12);
        }
        assert!(rep.tail_decreasing);
        assert!(rep.eventually_decays);
    }

    #[test]
    fn decay_certificates_follow_small_radius_behavior() {
        let g = 0.5;
        let cases = [
            (FlowSolution::Constant { c1: 1.0, c2: 0.0, c3: 0.0 }, false),
            (FlowSolution::Constant { c1: 0.0, c2: 0.0, c3: 2.0 }, true),
            (FlowSolution::Linear { c1: 1.0, c2: 0.0, c3: 0.0, c4: 0.0 }, true),
            (FlowSolution::power_mode(0.4, 1.0, 0.0, 0.0).unwrap(), false),
            (FlowSolution::power_mode(0.6, 1.0, 0.0, 0.0).unwrap(), true),
            (FlowSolution::ShearX { c1: 1.0, c2: 1.0, c3: 0.0 }, false),
            (FlowSolution::ShearX { c1: 0.0, c2: 1.0, c3: 0.0 }, true),
            (FlowSolution::ShearY { c1: 1.0, c2: 0.0, c3: 0.0 }, true),
            (FlowSolution::ShearY { c1: 1.0, c2: 1.0, c3: 0.0 }, false),
            (FlowSolution::RotLog { c1: 1.0, c2: 1.0, c3: 0.0 }, true),
        ];
        for (flow, expect) in cases {
            assert_eq!(eventual_decay_certificate(&flow, g), expect, "{flow:?}");
        }
        // gamma at 1 defeats the linear-growth families
        let lin = FlowSolution::Linear { c1: 1.0, c2: 0.0, c3: 0.0, c4: 0.0 };
        assert!(!eventual_decay_certificate(&lin, 1.0));
    }
}
