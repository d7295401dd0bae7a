//! Reduction of the steady equations for two-profile separated fields
//! u = (v1(theta) phi1(r), v2(theta) phi2(r)).
//!
//! Incompressibility evaluated at two probe angles yields, at every radius,
//! a 2x2 linear system for the radial derivatives (phi1', phi2'). When the
//! profiles close under an equidimensional law
//!
//! ```text
//! r phi1' = a phi1 + b phi2,    r phi2' = c phi1 + d phi2,
//! ```
//!
//! the coefficients are recovered here by a least-squares fit over radii and
//! can be fed back into the angular constraints, the compatibility identity
//! of the momentum equations, and the vorticity formulas.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::geometry::ConeDomain;
use crate::tol;

/// A scalar function bundled with its analytic first derivative.
pub struct Fn1D {
    f: Box<dyn Fn(f64) -> f64>,
    df: Box<dyn Fn(f64) -> f64>,
}

impl Fn1D {
    pub fn new(
        f: impl Fn(f64) -> f64 + 'static,
        df: impl Fn(f64) -> f64 + 'static,
    ) -> Self {
        Fn1D { f: Box::new(f), df: Box::new(df) }
    }

    pub fn constant(c: f64) -> Self {
        Fn1D::new(move |_| c, |_| 0.0)
    }

    /// x -> k x
    pub fn linear(k: f64) -> Self {
        Fn1D::new(move |x| k * x, move |_| k)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.df)(x)
    }
}

/// Separated two-profile velocity ansatz.
pub struct GeneralAnsatz {
    pub v1: Fn1D,
    pub v2: Fn1D,
    pub phi1: Fn1D,
    pub phi2: Fn1D,
}

impl GeneralAnsatz {
    /// u = (c1, c2 x): v1 = 1, phi1 = c1, v2 = cos t, phi2 = c2 r.
    pub fn shear_x(c1: f64, c2: f64) -> Self {
        GeneralAnsatz {
            v1: Fn1D::constant(1.0),
            v2: Fn1D::new(|t| t.cos(), |t| -t.sin()),
            phi1: Fn1D::constant(c1),
            phi2: Fn1D::linear(c2),
        }
    }

    /// u = (c1 y, c2): v1 = sin t, phi1 = c1 r, v2 = 1, phi2 = c2.
    pub fn shear_y(c1: f64, c2: f64) -> Self {
        GeneralAnsatz {
            v1: Fn1D::new(|t| t.sin(), |t| t.cos()),
            v2: Fn1D::constant(1.0),
            phi1: Fn1D::linear(c1),
            phi2: Fn1D::constant(c2),
        }
    }

    pub fn velocity(&self, r: f64, t: f64) -> (f64, f64) {
        (self.v1.eval(t) * self.phi1.eval(r), self.v2.eval(t) * self.phi2.eval(r))
    }
}

/// Coefficients of the closed equidimensional radial system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RadialCoeffs {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        RadialCoeffs { a, b, c, d }
    }
}

/// Result of [`derive_radial_system`]: fitted coefficients plus the worst
/// normalized misfit of the closure law over the radial samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSystemFit {
    pub coeffs: RadialCoeffs,
    pub max_residual: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("probe angle {theta} lies on a coordinate axis (within guard of a multiple of pi/2)")]
    AxisSingularity { theta: f64 },
    #[error("probe angles give a divergence system with conditioning {conditioning:e}")]
    DegenerateAngles { conditioning: f64 },
    #[error("radial samples cannot distinguish the two profiles")]
    DegenerateRadial,
}

fn axis_distance(t: f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let k = (t / half_pi).round();
    (t - k * half_pi).abs()
}

/// Divergence of the ansatz field at (r, t), written in polar form:
/// cos t v1 phi1' + sin t v2 phi2' + cos t v2' phi2 / r - sin t v1' phi1 / r.
pub fn divergence_general(g: &GeneralAnsatz, r: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    c * g.v1.eval(t) * g.phi1.deriv(r) + s * g.v2.eval(t) * g.phi2.deriv(r)
        + (c * g.v2.deriv(t) * g.phi2.eval(r) - s * g.v1.deriv(t) * g.phi1.eval(r)) / r
}

/// Recovers the equidimensional closure coefficients from incompressibility.
///
/// At each radius the divergence, written at the two probe angles, is a 2x2
/// linear system for (phi1', phi2'); it is solved by Cramer's rule without
/// touching the ansatz's own radial derivatives. The closure coefficients
/// are then the least-squares fit of r phi_i' against (phi1, phi2) over the
/// sample radii.
pub fn derive_radial_system(
    g: &GeneralAnsatz,
    theta1: f64,
    theta2: f64,
    r_samples: &[f64],
) -> Result<RadialSystemFit, ReductionError> {
    for &t in &[theta1, theta2] {
        if axis_distance(t) < tol::AXIS_GUARD {
            return Err(ReductionError::AxisSingularity { theta: t });
        }
    }

    let row = |t: f64| {
        let (s, c) = t.sin_cos();
        (c * g.v1.eval(t), s * g.v2.eval(t))
    };
    let (a1, b1) = row(theta1);
    let (a2, b2) = row(theta2);
    let d1 = a1 * b2 - a2 * b1;
    let norms = (a1 * a1 + b1 * b1).sqrt() * (a2 * a2 + b2 * b2).sqrt();
    let conditioning = if norms == 0.0 { 0.0 } else { d1.abs() / norms };
    if conditioning < tol::D1_DEGENERACY_TOL {
        return Err(ReductionError::DegenerateAngles { conditioning });
    }

    if r_samples.len() < 2 {
        return Err(ReductionError::DegenerateRadial);
    }

    let rhs = |t: f64, r: f64| {
        let (s, c) = t.sin_cos();
        (s * g.v1.deriv(t) * g.phi1.eval(r) - c * g.v2.deriv(t) * g.phi2.eval(r)) / r
    };

    let n = r_samples.len();
    let mut basis = DMatrix::zeros(n, 2);
    let mut t1 = DVector::zeros(n);
    let mut t2 = DVector::zeros(n);
    for (j, &r) in r_samples.iter().enumerate() {
        let (h1, h2) = (rhs(theta1, r), rhs(theta2, r));
        let dphi1 = (h1 * b2 - h2 * b1) / d1;
        let dphi2 = (a1 * h2 - a2 * h1) / d1;
        basis[(j, 0)] = g.phi1.eval(r);
        basis[(j, 1)] = g.phi2.eval(r);
        t1[j] = r * dphi1;
        t2[j] = r * dphi2;
    }

    let svd = basis.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if smax == 0.0 || svd.singular_values.min() <= 1e-10 * smax {
        return Err(ReductionError::DegenerateRadial);
    }
    let eps = 1e-13 * smax;
    let ab = svd.solve(&t1, eps).expect("full-rank solve");
    let cd = svd.solve(&t2, eps).expect("full-rank solve");
    let coeffs = RadialCoeffs::new(ab[0], ab[1], cd[0], cd[1]);

    let mut max_residual: f64 = 0.0;
    for (j, &r) in r_samples.iter().enumerate() {
        let p1 = g.phi1.eval(r);
        let p2 = g.phi2.eval(r);
        let e1 = (t1[j] - coeffs.a * p1 - coeffs.b * p2).abs() / (1.0 + t1[j].abs());
        let e2 = (t2[j] - coeffs.c * p1 - coeffs.d * p2).abs() / (1.0 + t2[j].abs());
        max_residual = max_residual.max(e1).max(e2);
    }

    Ok(RadialSystemFit { coeffs, max_residual })
}

/// The three angular aggregates entering the compatibility identity of the
/// reduced momentum equations.
pub fn f_functions(k: &RadialCoeffs, g: &GeneralAnsatz, t: f64) -> (f64, f64, f64) {
    let RadialCoeffs { a, b, c, d } = *k;
    let (s, co) = t.sin_cos();
    let v1 = g.v1.eval(t);
    let v2 = g.v2.eval(t);
    let cot = co / s;
    let tan = s / co;
    let f1 = a * (a - 1.0) * (a - 2.0) * v1 / (s * s * s)
        + c * (a * (a - 2.0) * cot * cot - d * (d + 2.0 * a - 2.0)) * v2 / co;
    let f2 = d * (d - 1.0) * (d - 2.0) * v2 / (co * co * co)
        + b * (d * (d - 2.0) * tan * tan - a * (a + 2.0 * d - 2.0)) * v1 / s;
    let f3 = (a * cot - d * tan) * (b * v1 * v1 + c * v2 * v2)
        + ((a * a - a) / (s * s) - (d * d - d) / (co * co)) * v1 * v2;
    (f1, f2, f3)
}

/// Residual of the cross-differentiated momentum compatibility identity
/// F1 phi1 - F2 phi2 = (a + d) v1 v2 r (b phi2^2 - c phi1^2) + F3 r phi1 phi2.
pub fn critical_identity_residual(k: &RadialCoeffs, g: &GeneralAnsatz, r: f64, t: f64) -> f64 {
    let (f1, f2, f3) = f_functions(k, g, t);
    let p1 = g.phi1.eval(r);
    let p2 = g.phi2.eval(r);
    let v1 = g.v1.eval(t);
    let v2 = g.v2.eval(t);
    f1 * p1 - f2 * p2
        - ((k.a + k.d) * v1 * v2 * r * (k.b * p2 * p2 - k.c * p1 * p1) + f3 * r * p1 * p2)
}

/// Residual pair of the first-order angular system that pairs with the
/// closed radial law: both components vanish when the ansatz separates
/// consistently with coefficients k.
pub fn angular_system_residual(k: &RadialCoeffs, g: &GeneralAnsatz, t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    let v1 = g.v1.eval(t);
    let v2 = g.v2.eval(t);
    (
        k.a * c * v1 + k.c * s * v2 - s * g.v1.deriv(t),
        k.b * c * v1 + k.d * s * v2 + c * g.v2.deriv(t),
    )
}

/// Vorticity of the ansatz after eliminating radial derivatives through the
/// closed system: a v1 phi1 / (r sin t) - d v2 phi2 / (r cos t).
pub fn general_vorticity(k: &RadialCoeffs, g: &GeneralAnsatz, r: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    k.a * g.v1.eval(t) * g.phi1.eval(r) / (r * s)
        - k.d * g.v2.eval(t) * g.phi2.eval(r) / (r * c)
}

/// Vorticity straight from the chain rule (second velocity component's
/// x-derivative subtracted from the first's y-derivative).
pub fn raw_vorticity(g: &GeneralAnsatz, r: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    s * g.v1.eval(t) * g.phi1.deriv(r) - c * g.v2.eval(t) * g.phi2.deriv(r)
        + (c * g.v1.deriv(t) * g.phi1.eval(r) + s * g.v2.deriv(t) * g.phi2.eval(r)) / r
}

/// Default probe angles for a domain: 30% and 70% across the opening,
/// pushed at least 0.05 rad off the coordinate axes.
pub fn default_probe_angles(domain: &ConeDomain) -> (f64, f64) {
    let (alpha, width) = match *domain {
        ConeDomain::FullPlane => (0.0, std::f64::consts::TAU),
        ConeDomain::Sector { alpha, beta } => (alpha, beta - alpha),
    };
    let clip = |t: f64| {
        let guard = 0.05;
        if axis_distance(t) >= guard {
            return t;
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        let k = (t / half_pi).round();
        let axis = k * half_pi;
        let up = axis + guard;
        let down = axis - guard;
        // stay inside the opening; prefer the side that remains interior
        if up > alpha && up < alpha + width {
            up
        } else {
            down
        }
    };
    (clip(alpha + 0.3 * width), clip(alpha + 0.7 * width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn sample_radii() -> Vec<f64> {
        (0..12).map(|i| 0.5 + 0.15 * i as f64).collect()
    }

    #[test]
    fn divergence_example_and_shears() {
        let g = GeneralAnsatz {
            v1: Fn1D::constant(1.0),
            v2: Fn1D::constant(1.0),
            phi1: Fn1D::linear(1.0),
            phi2: Fn1D::linear(1.0),
        };
        assert_relative_eq!(divergence_general(&g, 1.0, 0.0), 1.0, max_relative = 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let r = rng.gen_range(0.2..3.0);
            let t = rng.gen_range(0.0..2.0 * PI);
            let gx = GeneralAnsatz::shear_x(1.3, -0.6);
            let gy = GeneralAnsatz::shear_y(0.4, 2.2);
            assert!(divergence_general(&gx, r, t).abs() <= 1e-14);
            assert!(divergence_general(&gy, r, t).abs() <= 1e-14);
        }
    }

    #[test]
    fn radial_system_recovers_shear_coefficients() {
        let rs = sample_radii();
        let fit = derive_radial_system(&GeneralAnsatz::shear_x(1.5, -0.7), 0.45, 1.1, &rs)
            .expect("well-posed");
        assert!((fit.coeffs.a).abs() <= 1e-12);
        assert!((fit.coeffs.b).abs() <= 1e-12);
        assert!((fit.coeffs.c).abs() <= 1e-12);
        assert_relative_eq!(fit.coeffs.d, 1.0, max_relative = 1e-12);
        assert!(fit.max_residual <= 1e-12);

        let fit = derive_radial_system(&GeneralAnsatz::shear_y(0.8, 0.3), 0.45, 1.1, &rs)
            .expect("well-posed");
        assert_relative_eq!(fit.coeffs.a, 1.0, max_relative = 1e-12);
        assert!((fit.coeffs.b).abs() <= 1e-12);
        assert!((fit.coeffs.c).abs() <= 1e-12);
        assert!((fit.coeffs.d).abs() <= 1e-12);
    }

    #[test]
    fn degenerate_configurations_are_reported() {
        let rs = sample_radii();
        let g = GeneralAnsatz::shear_x(1.0, 1.0);
        assert!(matches!(
            derive_radial_system(&g, 0.45, 0.45, &rs),
            Err(ReductionError::DegenerateAngles { .. })
        ));
        assert_eq!(
            derive_radial_system(&g, FRAC_PI_2, 1.1, &rs),
            Err(ReductionError::AxisSingularity { theta: FRAC_PI_2 })
        );
        // identical profiles cannot be separated by the radial fit
        let same = GeneralAnsatz {
            v1: Fn1D::constant(1.0),
            v2: Fn1D::constant(1.0),
            phi1: Fn1D::linear(1.0),
            phi2: Fn1D::linear(1.0),
        };
        assert_eq!(
            derive_radial_system(&same, 0.45, 1.1, &rs),
            Err(ReductionError::DegenerateRadial)
        );
    }

    #[test]
    fn f_function_example() {
        let g = GeneralAnsatz {
            v1: Fn1D::new(|t| t.sin().powi(3), |t| 3.0 * t.sin().powi(2) * t.cos()),
            v2: Fn1D::constant(1.0),
            phi1: Fn1D::linear(1.0),
            phi2: Fn1D::constant(0.0),
        };
        let k = RadialCoeffs::new(3.0, 0.0, 0.0, 0.0);
        for &t in &[0.4, 1.0, 2.0] {
            let (f1, _, _) = f_functions(&k, &g, t);
            assert_relative_eq!(f1, 6.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn shears_satisfy_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let kx = RadialCoeffs::new(0.0, 0.0, 0.0, 1.0);
        let ky = RadialCoeffs::new(1.0, 0.0, 0.0, 0.0);
        for _ in 0..100 {
            let c1 = rng.gen_range(-2.0..2.0);
            let c2 = rng.gen_range(-2.0..2.0);
            let r = rng.gen_range(0.3..3.0);
            let mut t = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
            if axis_distance(t) < 0.05 {
                t = 0.6;
            }
            let gx = GeneralAnsatz::shear_x(c1, c2);
            let gy = GeneralAnsatz::shear_y(c1, c2);
            assert!(critical_identity_residual(&kx, &gx, r, t).abs() <= 1e-11);
            assert!(critical_identity_residual(&ky, &gy, r, t).abs() <= 1e-11);
            let (e1, e2) = angular_system_residual(&kx, &gx, t);
            assert!(e1.abs() <= 1e-14 && e2.abs() <= 1e-14);
            let (e1, e2) = angular_system_residual(&ky, &gy, t);
            assert!(e1.abs() <= 1e-14 && e2.abs() <= 1e-14);
        }
    }

    #[test]
    fn vorticity_formulas_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let kx = RadialCoeffs::new(0.0, 0.0, 0.0, 1.0);
        let ky = RadialCoeffs::new(1.0, 0.0, 0.0, 0.0);
        for _ in 0..50 {
            let c1 = rng.gen_range(-2.0..2.0);
            let c2 = rng.gen_range(-2.0..2.0);
            let r = rng.gen_range(0.3..3.0);
            let t = rng.gen_range(0.1..FRAC_PI_2 - 0.1);
            let gx = GeneralAnsatz::shear_x(c1, c2);
            assert_relative_eq!(
                general_vorticity(&kx, &gx, r, t),
                -c2,
                max_relative = 1e-12,
                epsilon = 1e-13
            );
            assert_relative_eq!(
                raw_vorticity(&gx, r, t),
                -c2,
                max_relative = 1e-12,
                epsilon = 1e-13
            );
            let gy = GeneralAnsatz::shear_y(c1, c2);
            assert_relative_eq!(
                general_vorticity(&ky, &gy, r, t),
                c1,
                max_relative = 1e-12,
                epsilon = 1e-13
            );
            assert_relative_eq!(
                raw_vorticity(&gy, r, t),
                c1,
                max_relative = 1e-12,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn probe_angles_avoid_axes() {
        use crate::geometry::ConeDomain;
        let (t1, t2) = default_probe_angles(&ConeDomain::FullPlane);
        assert!(axis_distance(t1) >= 0.05 - 1e-12);
        assert!(axis_distance(t2) >= 0.05 - 1e-12);
        let sector = ConeDomain::sector(0.0, PI).unwrap();
        let (t1, t2) = default_probe_angles(&sector);
        assert!(t1 > 0.0 && t2 < PI);
        assert!(axis_distance(t1) >= 0.05 - 1e-12);
        assert!(axis_distance(t2) >= 0.05 - 1e-12);
    }
}
