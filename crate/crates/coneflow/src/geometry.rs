//! Cone-like domains and polar coordinates.
//!
//! Angles live on the branch [0, 2pi). A sector is the open wedge
//! alpha < theta < beta with 0 <= alpha < beta <= 2pi; beta - alpha = 2pi
//! is the slit plane, treated like any other open sector.

use std::f64::consts::TAU;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("sector angles must satisfy 0 <= alpha < beta <= 2pi, got alpha={alpha}, beta={beta}")]
    BadSector { alpha: f64, beta: f64 },
}

/// Either the full plane or an open sector between two rays from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeDomain {
    FullPlane,
    Sector { alpha: f64, beta: f64 },
}

/// Point in polar coordinates, r >= 0, theta normalized to [0, 2pi).
/// The origin carries theta = 0 by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

/// Clearance requirements for membership tests: angular distance from the
/// sector rays and minimal radius.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Margin {
    pub theta: f64,
    pub r: f64,
}

impl Margin {
    pub const ZERO: Margin = Margin { theta: 0.0, r: 0.0 };

    pub fn new(theta: f64, r: f64) -> Self {
        Margin { theta, r }
    }
}

impl PolarPoint {
    /// Builds a point, folding theta into [0, 2pi). Negative radii are
    /// rejected; the origin is normalized to theta = 0.
    pub fn new(r: f64, theta: f64) -> Self {
        assert!(r >= 0.0, "polar radius must be nonnegative, got {r}");
        if r == 0.0 {
            return PolarPoint { r: 0.0, theta: 0.0 };
        }
        let mut t = theta.rem_euclid(TAU);
        // rem_euclid can return exactly TAU when theta is a tiny negative
        // number; fold that back onto the branch start.
        if t >= TAU {
            t = 0.0;
        }
        PolarPoint { r, theta: t }
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        (self.r * self.theta.cos(), self.r * self.theta.sin())
    }
}

/// Cartesian to polar with the [0, 2pi) angle branch.
pub fn to_polar(x: f64, y: f64) -> PolarPoint {
    let r = x.hypot(y);
    if r == 0.0 {
        return PolarPoint { r: 0.0, theta: 0.0 };
    }
    let t = y.atan2(x);
    PolarPoint::new(r, t)
}

pub fn to_cartesian(p: PolarPoint) -> (f64, f64) {
    p.to_cartesian()
}

impl ConeDomain {
    /// Open sector alpha < theta < beta on the [0, 2pi) branch.
    pub fn sector(alpha: f64, beta: f64) -> Result<Self, DomainError> {
        let ok = alpha >= 0.0 && alpha < beta && beta <= TAU;
        if !ok {
            return Err(DomainError::BadSector { alpha, beta });
        }
        Ok(ConeDomain::Sector { alpha, beta })
    }

    pub fn is_full_plane(&self) -> bool {
        matches!(self, ConeDomain::FullPlane)
    }

    /// Angular width: 2pi for the full plane.
    pub fn width(&self) -> f64 {
        match self {
            ConeDomain::FullPlane => TAU,
            ConeDomain::Sector { alpha, beta } => beta - alpha,
        }
    }

    /// Membership with clearance: the point must lie strictly inside the
    /// wedge, at angular distance at least `margin.theta` from both rays
    /// and at radius at least `margin.r`.
    pub fn contains(&self, p: PolarPoint, margin: Margin) -> bool {
        if p.r < margin.r {
            return false;
        }
        match *self {
            ConeDomain::FullPlane => true,
            ConeDomain::Sector { alpha, beta } => {
                p.theta > alpha
                    && p.theta < beta
                    && p.theta - alpha >= margin.theta
                    && beta - p.theta >= margin.theta
            }
        }
    }

    /// Distance from a point to the nearest ray of the sector; infinity on
    /// the full plane. Used to clip finite-difference stencils.
    pub fn ray_distance(&self, p: PolarPoint) -> f64 {
        match *self {
            ConeDomain::FullPlane => f64::INFINITY,
            ConeDomain::Sector { alpha, beta } => {
                let d = |t: f64| {
                    let dt = (p.theta - t).abs();
                    if dt >= std::f64::consts::FRAC_PI_2 {
                        p.r
                    } else {
                        p.r * dt.sin()
                    }
                };
                d(alpha).min(d(beta))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn polar_of_unit_diagonal() {
        let p = to_polar(1.0, 1.0);
        assert_relative_eq!(p.r, 2f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(p.theta, PI / 4.0, max_relative = 1e-15);
    }

    #[test]
    fn negative_y_lands_on_upper_branch() {
        let p = to_polar(0.0, -2.0);
        assert_relative_eq!(p.theta, 3.0 * PI / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn origin_gets_zero_angle() {
        let p = to_polar(0.0, 0.0);
        assert_eq!(p.r, 0.0);
        assert_eq!(p.theta, 0.0);
    }

    #[test]
    fn sector_membership() {
        let d = ConeDomain::sector(0.0, PI).unwrap();
        assert!(d.contains(PolarPoint::new(1.0, PI / 2.0), Margin::ZERO));
        assert!(!d.contains(PolarPoint::new(1.0, 3.0 * PI / 2.0), Margin::ZERO));
        assert!(!d.contains(PolarPoint::new(1.0, 0.05), Margin::new(0.1, 0.0)));
        // rays themselves are outside the open wedge
        assert!(!d.contains(PolarPoint::new(1.0, 0.0), Margin::ZERO));
    }

    #[test]
    fn slit_plane_is_an_open_sector() {
        let d = ConeDomain::sector(0.0, TAU).unwrap();
        assert!(d.contains(PolarPoint::new(1.0, PI), Margin::ZERO));
        assert!(!d.contains(PolarPoint::new(1.0, 0.0), Margin::ZERO));
    }

    #[test]
    fn bad_sectors_are_rejected() {
        assert!(ConeDomain::sector(-0.1, 1.0).is_err());
        assert!(ConeDomain::sector(1.0, 1.0).is_err());
        assert!(ConeDomain::sector(0.0, TAU + 0.1).is_err());
    }

    #[test]
    fn ray_distance_small_angles() {
        let d = ConeDomain::sector(0.0, PI).unwrap();
        let p = PolarPoint::new(2.0, 0.1);
        assert_relative_eq!(d.ray_distance(p), 2.0 * 0.1f64.sin(), max_relative = 1e-14);
    }

    fn circular_gap(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d)
    }

    proptest! {
        #[test]
        fn round_trip_polar(
            r in 1e-6f64..1e6,
            theta in 0.0f64..TAU,
        ) {
            let p = PolarPoint::new(r, theta);
            let (x, y) = p.to_cartesian();
            let q = to_polar(x, y);
            prop_assert!((q.r - p.r).abs() <= 1e-14 * p.r.max(1.0));
            prop_assert!(circular_gap(q.theta, p.theta) <= 1e-14 * p.theta.max(1.0));
        }

        #[test]
        fn round_trip_cartesian(
            x in -1e6f64..1e6,
            y in -1e6f64..1e6,
        ) {
            let p = to_polar(x, y);
            let (x2, y2) = p.to_cartesian();
            let scale = x.hypot(y).max(1e-12);
            prop_assert!((x2 - x).abs() <= 1e-14 * scale);
            prop_assert!((y2 - y).abs() <= 1e-14 * scale);
        }
    }
}
