//! Closed-form solutions of the 2x2 equidimensional system
//!
//! ```text
//! r phi1' = a phi1 + b phi2
//! r phi2' = c phi1 + d phi2
//! ```
//!
//! Substituting r = e^t turns it into a constant-coefficient system, so
//! everything is decided by the characteristic polynomial
//! rho^2 - (a + d) rho + (ad - bc) whose discriminant equals
//! (a - d)^2 + 4 b c.

use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerSystem {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl EulerSystem {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        EulerSystem { a, b, c, d }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Discriminant (a - d)^2 + 4 b c of the characteristic polynomial.
    pub fn delta(&self) -> f64 {
        let diff = self.a - self.d;
        diff * diff + 4.0 * self.b * self.c
    }
}

/// Shape of the fundamental system. `b = 0` is decided by exact comparison
/// on the input; the discriminant is compared against a small window so a
/// numerically borderline system resolves to the double-root form instead
/// of a catastrophically cancelling pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EulerCase {
    /// b = 0 and d = a: decoupled first row with a repeated exponent;
    /// the second profile picks up a logarithm when c != 0.
    TriangularRepeated { root: f64 },
    /// b = 0 and d != a: two pure powers with exponents a and d.
    TriangularDistinct { root1: f64, root2: f64 },
    /// b != 0, delta > 0: two real exponents m > n.
    RealDistinct { m: f64, n: f64 },
    /// b != 0, |delta| <= window: one real exponent with a logarithm.
    RealDouble { l: f64 },
    /// b != 0, delta < 0: exponents re +- i im, im > 0; power-oscillatory.
    ComplexPair { re: f64, im: f64 },
}

/// Roots of rho^2 - s rho + q = 0 with discriminant delta >= 0, computed
/// sign-matched so the larger-magnitude root never cancels.
fn stable_roots(s: f64, q: f64, delta: f64) -> (f64, f64) {
    let sq = delta.max(0.0).sqrt();
    let big = if s >= 0.0 { 0.5 * (s + sq) } else { 0.5 * (s - sq) };
    let small = if big != 0.0 { q / big } else { s - big };
    if big >= small {
        (big, small)
    } else {
        (small, big)
    }
}

/// Decides which closed form applies and carries the exponents.
pub fn classify_case(sys: &EulerSystem) -> EulerCase {
    if sys.b == 0.0 {
        if sys.d == sys.a {
            return EulerCase::TriangularRepeated { root: sys.a };
        }
        return EulerCase::TriangularDistinct { root1: sys.a, root2: sys.d };
    }
    let delta = sys.delta();
    if delta.abs() <= tol::EULER_DELTA_TOL {
        return EulerCase::RealDouble { l: 0.5 * sys.trace() };
    }
    if delta > 0.0 {
        let (m, n) = stable_roots(sys.trace(), sys.det(), delta);
        return EulerCase::RealDistinct { m, n };
    }
    EulerCase::ComplexPair {
        re: 0.5 * sys.trace(),
        im: 0.5 * (-delta).sqrt(),
    }
}

/// A concrete solution pair (phi1, phi2) with analytic first derivatives.
#[derive(Debug, Clone, Copy)]
pub struct EulerRadialPair {
    pub sys: EulerSystem,
    pub case: EulerCase,
    pub c1: f64,
    pub c2: f64,
}

/// Builds the general solution for free constants (c1, c2).
pub fn solve(sys: &EulerSystem, c1: f64, c2: f64) -> EulerRadialPair {
    EulerRadialPair {
        sys: *sys,
        case: classify_case(sys),
        c1,
        c2,
    }
}

impl EulerRadialPair {
    /// (phi1, phi2) at radius r > 0.
    pub fn values(&self, r: f64) -> (f64, f64) {
        let EulerSystem { a, b, c, d } = self.sys;
        let (c1, c2) = (self.c1, self.c2);
        let t = r.ln();
        match self.case {
            EulerCase::TriangularRepeated { root } => {
                let ra = r.powf(root);
                (c1 * ra, (c * c1 * t + c2) * ra)
            }
            EulerCase::TriangularDistinct { .. } => {
                let ra = r.powf(a);
                let rd = r.powf(d);
                (c1 * ra, c / (a - d) * c1 * ra + c2 * rd)
            }
            EulerCase::RealDistinct { m, n } => {
                let rm = r.powf(m);
                let rn = r.powf(n);
                (
                    c1 * rm + c2 * rn,
                    (m - a) / b * c1 * rm + (n - a) / b * c2 * rn,
                )
            }
            EulerCase::RealDouble { l } => {
                let rl = r.powf(l);
                let a2 = (l - a) * c1 / b;
                let b2 = (c1 + (l - a) * c2) / b;
                ((c1 * t + c2) * rl, (a2 * t + b2) * rl)
            }
            EulerCase::ComplexPair { re, im } => {
                let rl = r.powf(re);
                let (s, co) = (im * t).sin_cos();
                let a2 = ((re - a) * c1 + im * c2) / b;
                let b2 = ((re - a) * c2 - im * c1) / b;
                (rl * (c1 * co + c2 * s), rl * (a2 * co + b2 * s))
            }
        }
    }

    /// (phi1', phi2') at radius r > 0, analytic.
    pub fn derivatives(&self, r: f64) -> (f64, f64) {
        let EulerSystem { a, b, c, d } = self.sys;
        let (c1, c2) = (self.c1, self.c2);
        let t = r.ln();
        match self.case {
            EulerCase::TriangularRepeated { root } => {
                let rp = r.powf(root - 1.0);
                (
                    root * c1 * rp,
                    rp * (c * c1 + root * (c * c1 * t + c2)),
                )
            }
            EulerCase::TriangularDistinct { .. } => {
                let rp = r.powf(a - 1.0);
                let rq = r.powf(d - 1.0);
                (
                    a * c1 * rp,
                    a * c / (a - d) * c1 * rp + d * c2 * rq,
                )
            }
            EulerCase::RealDistinct { m, n } => {
                let rm = r.powf(m - 1.0);
                let rn = r.powf(n - 1.0);
                (
                    m * c1 * rm + n * c2 * rn,
                    m * (m - a) / b * c1 * rm + n * (n - a) / b * c2 * rn,
                )
            }
            EulerCase::RealDouble { l } => {
                let rp = r.powf(l - 1.0);
                let a2 = (l - a) * c1 / b;
                let b2 = (c1 + (l - a) * c2) / b;
                (
                    rp * (c1 + l * (c1 * t + c2)),
                    rp * (a2 + l * (a2 * t + b2)),
                )
            }
            EulerCase::ComplexPair { re, im } => {
                let rp = r.powf(re - 1.0);
                let (s, co) = (im * t).sin_cos();
                let a2 = ((re - a) * c1 + im * c2) / b;
                let b2 = ((re - a) * c2 - im * c1) / b;
                (
                    rp * ((re * c1 + im * c2) * co + (re * c2 - im * c1) * s),
                    rp * ((re * a2 + im * b2) * co + (re * b2 - im * a2) * s),
                )
            }
        }
    }

    /// Whether phi1 and phi2 are linearly independent as functions of r.
    /// The reduction step treats dependent pairs separately.
    pub fn linearly_independent(&self) -> bool {
        match self.case {
            EulerCase::TriangularRepeated { .. } => self.sys.c * self.c1 != 0.0,
            EulerCase::TriangularDistinct { .. } | EulerCase::RealDistinct { .. } => {
                self.c1 != 0.0 && self.c2 != 0.0
            }
            EulerCase::RealDouble { .. } => self.c1 != 0.0,
            EulerCase::ComplexPair { .. } => self.c1 != 0.0 || self.c2 != 0.0,
        }
    }
}

/// Residual of both equations at radius r, scale-normalized.
pub fn ode_residual(pair: &EulerRadialPair, r: f64) -> (f64, f64) {
    let EulerSystem { a, b, c, d } = pair.sys;
    let (p1, p2) = pair.values(r);
    let (d1, d2) = pair.derivatives(r);
    let res1 = r * d1 - a * p1 - b * p2;
    let res2 = r * d2 - c * p1 - d * p2;
    let s1 = 1.0 + (r * d1).abs() + (a * p1).abs() + (b * p2).abs();
    let s2 = 1.0 + (r * d2).abs() + (c * p1).abs() + (d * p2).abs();
    (res1 / s1, res2 / s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangular_repeated_picks_up_log() {
        let sys = EulerSystem::new(1.0, 0.0, 1.0, 1.0);
        assert_eq!(
            classify_case(&sys),
            EulerCase::TriangularRepeated { root: 1.0 }
        );
        let pair = solve(&sys, 1.0, 0.0);
        let (p1, p2) = pair.values(2.0);
        assert_relative_eq!(p1, 2.0, max_relative = 1e-14);
        assert_relative_eq!(p2, 2.0 * 2f64.ln(), max_relative = 1e-14);
        assert!(pair.linearly_independent());
    }

    #[test]
    fn real_distinct_example() {
        let sys = EulerSystem::new(1.0, 1.0, 0.0, 0.0);
        match classify_case(&sys) {
            EulerCase::RealDistinct { m, n } => {
                assert_relative_eq!(m, 1.0, epsilon = 1e-14);
                assert_relative_eq!(n, 0.0, epsilon = 1e-14);
            }
            other => panic!("wrong case {other:?}"),
        }
        let pair = solve(&sys, 1.0, 1.0);
        let (p1, p2) = pair.values(1.0);
        assert_relative_eq!(p1, 2.0, max_relative = 1e-14);
        assert_relative_eq!(p2, -1.0, max_relative = 1e-14);
    }

    #[test]
    fn complex_pair_example() {
        let sys = EulerSystem::new(0.0, 1.0, -1.0, 0.0);
        match classify_case(&sys) {
            EulerCase::ComplexPair { re, im } => {
                assert_relative_eq!(re, 0.0, epsilon = 1e-14);
                assert_relative_eq!(im, 1.0, epsilon = 1e-14);
            }
            other => panic!("wrong case {other:?}"),
        }
        let pair = solve(&sys, 1.0, 0.0);
        let r = 3.0f64;
        let (p1, p2) = pair.values(r);
        assert_relative_eq!(p1, r.ln().cos(), max_relative = 1e-14);
        assert_relative_eq!(p2, -r.ln().sin(), max_relative = 1e-14);
    }

    #[test]
    fn near_degenerate_discriminant_goes_double() {
        // delta underflows to ~1e-13 by construction
        let a = 1.0;
        let d = 1.0 + 1e-7;
        let b = 1.0;
        let c = -(a - d) * (a - d) / (4.0 * b) * (1.0 + 1e-3);
        let sys = EulerSystem::new(a, b, c, d);
        assert!(sys.delta().abs() <= tol::EULER_DELTA_TOL);
        assert!(matches!(classify_case(&sys), EulerCase::RealDouble { .. }));
    }

    #[test]
    fn vieta_on_random_real_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = rng.gen_range(-2.0..2.0);
            let d = rng.gen_range(-2.0..2.0);
            let b = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let target = rng.gen_range(0.5..4.0);
            let c = (target - (a - d) * (a - d)) / (4.0 * b);
            let sys = EulerSystem::new(a, b, c, d);
            match classify_case(&sys) {
                EulerCase::RealDistinct { m, n } => {
                    assert!((m + n - sys.trace()).abs() <= tol::ROOT_CHECK_TOL * (1.0 + sys.trace().abs()));
                    assert!((m * n - sys.det()).abs() <= tol::ROOT_CHECK_TOL * (1.0 + sys.det().abs()));
                    assert!(m > n);
                }
                other => panic!("expected distinct roots, got {other:?}"),
            }
        }
    }

    fn random_system_for_case(rng: &mut ChaCha8Rng, which: usize) -> EulerSystem {
        let a = rng.gen_range(-2.0..2.0);
        let mut d = rng.gen_range(-2.0..2.0);
        match which {
            0 => EulerSystem::new(a, 0.0, rng.gen_range(-2.0..2.0), a),
            1 => {
                if (d - a).abs() < 0.1 {
                    d = a + 0.5;
                }
                EulerSystem::new(a, 0.0, rng.gen_range(-2.0..2.0), d)
            }
            2 | 3 | 4 => {
                let b = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let c = match which {
                    2 => (rng.gen_range(0.5..4.0) - (a - d) * (a - d)) / (4.0 * b),
                    3 => -(a - d) * (a - d) / (4.0 * b),
                    _ => (-rng.gen_range(0.5..4.0) - (a - d) * (a - d)) / (4.0 * b),
                };
                EulerSystem::new(a, b, c, d)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn residual_vanishes_for_all_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for which in 0..5 {
            for _ in 0..100 {
                let sys = random_system_for_case(&mut rng, which);
                let c1 = rng.gen_range(-2.0..2.0);
                let c2 = rng.gen_range(-2.0..2.0);
                let pair = solve(&sys, c1, c2);
                for r in [0.5, 1.0, 2.0] {
                    let (r1, r2) = ode_residual(&pair, r);
                    assert!(
                        r1.abs() <= tol::EULER_RESIDUAL_REL && r2.abs() <= tol::EULER_RESIDUAL_REL,
                        "case {which} sys {sys:?} r {r}: residuals ({r1:e}, {r2:e})"
                    );
                }
            }
        }
    }

    #[test]
    fn dependence_flags() {
        // triangular repeated with c = 0 keeps phi2 proportional to phi1
        let sys = EulerSystem::new(1.0, 0.0, 0.0, 1.0);
        assert!(!solve(&sys, 1.0, 2.0).linearly_independent());
        // double root needs c1 != 0 for the log to appear
        let dbl = EulerSystem::new(0.0, 1.0, 0.0, 0.0);
        assert!(matches!(classify_case(&dbl), EulerCase::RealDouble { .. }));
        assert!(!solve(&dbl, 0.0, 1.0).linearly_independent());
        assert!(solve(&dbl, 1.0, 0.0).linearly_independent());
    }
}
