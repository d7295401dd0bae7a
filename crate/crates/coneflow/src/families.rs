//! The seven-family catalog of exact steady flows.
//!
//! Every member solves -Lap(u) + (u.grad)u + grad p = 0 and div u = 0 in
//! closed form. Each family exposes its velocity, pressure, velocity
//! gradient, Laplacian, pressure gradient and vorticity analytically so
//! residuals can be assembled without any numeric differentiation.

use nalgebra::{Matrix2, Vector2};
use thiserror::Error;

use crate::geometry::{ConeDomain, PolarPoint};
use crate::tol;

/// Velocity gradient with entries [(i, j)] = d u_i / d x_j.
pub type VelGradient = Matrix2<f64>;

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("quadratic compatibility constraints violated: residuals ({res1:e}, {res2:e})")]
    ConstraintViolated { res1: f64, res2: f64 },
    #[error("power exponent {lambda} not supported: {why}")]
    InvalidExponent { lambda: f64, why: String },
    #[error("{family} gradient blows up at r = 0")]
    GradientBlowup { family: FamilyTag },
    #[error("the (c3, c4) completion is singular when c1 = c2 = 0")]
    DegenerateCompletion,
}

/// Family tags, used by the classifier and for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Constant,
    Linear,
    Quadratic,
    PowerMode,
    RotLog,
    ShearX,
    ShearY,
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FamilyTag::Constant => "constant",
            FamilyTag::Linear => "linear",
            FamilyTag::Quadratic => "quadratic",
            FamilyTag::PowerMode => "powermode",
            FamilyTag::RotLog => "rotlog",
            FamilyTag::ShearX => "shearx",
            FamilyTag::ShearY => "sheary",
        };
        f.write_str(name)
    }
}

/// Outcome of an admissibility query, with a human-readable reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    pub reason: String,
}

impl Admissibility {
    fn ok(reason: &str) -> Self {
        Admissibility { admissible: true, reason: reason.to_string() }
    }

    fn no(reason: String) -> Self {
        Admissibility { admissible: false, reason }
    }
}

/// One member of the catalog.
///
/// Constants are stored under the same names the config format uses.
/// Pressure is determined up to an additive constant, carried as the last
/// constant of each variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlowSolution {
    /// u = (c1, c2), p = c3.
    Constant { c1: f64, c2: f64, c3: f64 },
    /// u = (c1 x + c2 y, c3 x - c1 y), p = -(c1^2 + c2 c3)(x^2 + y^2)/2 + c4.
    Linear { c1: f64, c2: f64, c3: f64, c4: f64 },
    /// Homogeneous quadratic velocity; the constants must satisfy the two
    /// compatibility constraints enforced by [`FlowSolution::make_quadratic`].
    Quadratic { c1: f64, c2: f64, c3: f64, c4: f64, c5: f64 },
    /// u = r^lambda (c1 cos(lambda t) + c2 sin(lambda t),
    ///               c2 cos(lambda t) - c1 sin(lambda t)),
    /// p = -(c1^2 + c2^2) r^(2 lambda) / 2 + c3. Irrotational.
    PowerMode { lambda: f64, c1: f64, c2: f64, c3: f64 },
    /// u = (c1 + c2 ln r)(-y, x): a swirl whose amplitude drifts
    /// logarithmically. Velocity extends by (0,0) to r = 0; the gradient
    /// does not when c2 != 0.
    RotLog { c1: f64, c2: f64, c3: f64 },
    /// u = (c1, c2 x), p = -c1 c2 y + c3.
    ShearX { c1: f64, c2: f64, c3: f64 },
    /// u = (c1 y, c2), p = -c1 c2 x + c3.
    ShearY { c1: f64, c2: f64, c3: f64 },
}

/// Residuals of the two quadratic compatibility constraints.
pub fn quadratic_constraint_residuals(c1: f64, c2: f64, c3: f64, c4: f64) -> (f64, f64) {
    (
        c1 * c3 + c2 * c4 - 2.0 * c1 * c2,
        c1 * c4 - c2 * c3 + c1 * c1 - c2 * c2,
    )
}

/// Completes (c1, c2) to the unique (c3, c4) satisfying both quadratic
/// constraints. Singular exactly when c1 = c2 = 0.
pub fn quadratic_from_c1c2(c1: f64, c2: f64, c5: f64) -> Result<FlowSolution, FamilyError> {
    let den = c1 * c1 + c2 * c2;
    if den == 0.0 {
        return Err(FamilyError::DegenerateCompletion);
    }
    let c3 = c2 * (3.0 * c1 * c1 - c2 * c2) / den;
    let c4 = c1 * (3.0 * c2 * c2 - c1 * c1) / den;
    FlowSolution::make_quadratic(c1, c2, c3, c4, c5)
}

impl FlowSolution {
    /// Quadratic constructor; rejects constants violating either
    /// compatibility constraint beyond the pinned absolute tolerance.
    pub fn make_quadratic(
        c1: f64,
        c2: f64,
        c3: f64,
        c4: f64,
        c5: f64,
    ) -> Result<FlowSolution, FamilyError> {
        let (res1, res2) = quadratic_constraint_residuals(c1, c2, c3, c4);
        if res1.abs() > tol::QUADRATIC_CONSTRAINT_TOL || res2.abs() > tol::QUADRATIC_CONSTRAINT_TOL
        {
            return Err(FamilyError::ConstraintViolated { res1, res2 });
        }
        Ok(FlowSolution::Quadratic { c1, c2, c3, c4, c5 })
    }

    /// Power-mode constructor. Exponents 1 and 2 duplicate the linear and
    /// quadratic families and are rejected so every field has one tag;
    /// nonpositive exponents are outside the catalog.
    pub fn power_mode(lambda: f64, c1: f64, c2: f64, c3: f64) -> Result<FlowSolution, FamilyError> {
        if !(lambda > 0.0) {
            return Err(FamilyError::InvalidExponent {
                lambda,
                why: "the exponent must be positive".into(),
            });
        }
        if lambda == 1.0 {
            return Err(FamilyError::InvalidExponent {
                lambda,
                why: "exponent 1 is the linear family; use Linear".into(),
            });
        }
        if lambda == 2.0 {
            return Err(FamilyError::InvalidExponent {
                lambda,
                why: "exponent 2 is the quadratic family; use make_quadratic".into(),
            });
        }
        Ok(FlowSolution::PowerMode { lambda, c1, c2, c3 })
    }

    pub fn tag(&self) -> FamilyTag {
        match self {
            FlowSolution::Constant { .. } => FamilyTag::Constant,
            FlowSolution::Linear { .. } => FamilyTag::Linear,
            FlowSolution::Quadratic { .. } => FamilyTag::Quadratic,
            FlowSolution::PowerMode { .. } => FamilyTag::PowerMode,
            FlowSolution::RotLog { .. } => FamilyTag::RotLog,
            FlowSolution::ShearX { .. } => FamilyTag::ShearX,
            FlowSolution::ShearY { .. } => FamilyTag::ShearY,
        }
    }

    /// Velocity at a polar point. Total: the log-swirl family extends by
    /// its limit (0, 0) to r = 0 even though its gradient does not.
    pub fn velocity(&self, p: PolarPoint) -> Vector2<f64> {
        let (x, y) = p.to_cartesian();
        match *self {
            FlowSolution::Constant { c1, c2, .. } => Vector2::new(c1, c2),
            FlowSolution::Linear { c1, c2, c3, .. } => {
                Vector2::new(c1 * x + c2 * y, c3 * x - c1 * y)
            }
            FlowSolution::Quadratic { c1, c2, c3, c4, .. } => Vector2::new(
                (c2 + c3) * x * x + (3.0 * c2 - c3) * y * y + 2.0 * (c1 + c4) * x * y,
                (c4 - 3.0 * c1) * x * x - (c1 + c4) * y * y - 2.0 * (c2 + c3) * x * y,
            ),
            FlowSolution::PowerMode { lambda, c1, c2, .. } => {
                let rl = p.r.powf(lambda);
                let (s, c) = (lambda * p.theta).sin_cos();
                Vector2::new(rl * (c1 * c + c2 * s), rl * (c2 * c - c1 * s))
            }
            FlowSolution::RotLog { c1, c2, .. } => {
                if p.r == 0.0 {
                    return Vector2::zeros();
                }
                let g = c1 + c2 * p.r.ln();
                Vector2::new(-g * y, g * x)
            }
            FlowSolution::ShearX { c1, c2, .. } => Vector2::new(c1, c2 * x),
            FlowSolution::ShearY { c1, c2, .. } => Vector2::new(c1 * y, c2),
        }
    }

    /// Velocity at Cartesian coordinates.
    pub fn velocity_xy(&self, x: f64, y: f64) -> Vector2<f64> {
        self.velocity(crate::geometry::to_polar(x, y))
    }

    pub fn pressure(&self, p: PolarPoint) -> f64 {
        let (x, y) = p.to_cartesian();
        match *self {
            FlowSolution::Constant { c3, .. } => c3,
            FlowSolution::Linear { c1, c2, c3, c4 } => {
                -0.5 * (c1 * c1 + c2 * c3) * (x * x + y * y) + c4
            }
            FlowSolution::Quadratic { c1, c2, c3, c4, c5 } => {
                let k = c1 * c1 + c2 * c2 - c3 * c3 - c4 * c4;
                let r2 = x * x + y * y;
                0.5 * k * r2 * r2 + 8.0 * c2 * x - 8.0 * c1 * y + c5
            }
            FlowSolution::PowerMode { lambda, c1, c2, c3 } => {
                -0.5 * (c1 * c1 + c2 * c2) * p.r.powf(2.0 * lambda) + c3
            }
            FlowSolution::RotLog { c1, c2, c3 } => {
                if p.r == 0.0 {
                    return c3;
                }
                let t = p.r.ln();
                let poly = c2 * c2 * t * t
                    + (2.0 * c1 * c2 - c2 * c2) * t
                    + c1 * c1
                    - c1 * c2
                    + 0.5 * c2 * c2;
                0.5 * p.r * p.r * poly + 2.0 * c2 * p.theta + c3
            }
            FlowSolution::ShearX { c1, c2, c3 } => -c1 * c2 * y + c3,
            FlowSolution::ShearY { c1, c2, c3 } => -c1 * c2 * x + c3,
        }
    }

    pub fn pressure_xy(&self, x: f64, y: f64) -> f64 {
        self.pressure(crate::geometry::to_polar(x, y))
    }

    /// Analytic velocity gradient. Rejected at r = 0 where the gradient
    /// genuinely blows up: log swirl with c2 != 0, and power modes with
    /// exponent below 1 and a nonzero amplitude.
    pub fn velocity_gradient(&self, p: PolarPoint) -> Result<VelGradient, FamilyError> {
        let (x, y) = p.to_cartesian();
        match *self {
            FlowSolution::Constant { .. } => Ok(Matrix2::zeros()),
            FlowSolution::Linear { c1, c2, c3, .. } => Ok(Matrix2::new(c1, c2, c3, -c1)),
            FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
                let d1u1 = 2.0 * (c2 + c3) * x + 2.0 * (c1 + c4) * y;
                let d2u1 = 2.0 * (c1 + c4) * x + 2.0 * (3.0 * c2 - c3) * y;
                let d1u2 = 2.0 * (c4 - 3.0 * c1) * x - 2.0 * (c2 + c3) * y;
                Ok(Matrix2::new(d1u1, d2u1, d1u2, -d1u1))
            }
            FlowSolution::PowerMode { lambda, c1, c2, .. } => {
                if c1 == 0.0 && c2 == 0.0 {
                    return Ok(Matrix2::zeros());
                }
                if p.r == 0.0 && lambda < 1.0 {
                    return Err(FamilyError::GradientBlowup { family: self.tag() });
                }
                let rl = p.r.powf(lambda - 1.0);
                let (s, c) = ((lambda - 1.0) * p.theta).sin_cos();
                let pp = lambda * rl * (c1 * c + c2 * s);
                let qq = lambda * rl * (c2 * c - c1 * s);
                // symmetric: the mode is irrotational, and trace-free
                Ok(Matrix2::new(pp, qq, qq, -pp))
            }
            FlowSolution::RotLog { c1, c2, .. } => {
                if p.r == 0.0 {
                    if c2 != 0.0 {
                        return Err(FamilyError::GradientBlowup { family: self.tag() });
                    }
                    return Ok(Matrix2::new(0.0, -c1, c1, 0.0));
                }
                let g = c1 + c2 * p.r.ln();
                let (s, c) = p.theta.sin_cos();
                Ok(Matrix2::new(
                    -c2 * s * c,
                    -(g + c2 * s * s),
                    g + c2 * c * c,
                    c2 * s * c,
                ))
            }
            FlowSolution::ShearX { c2, .. } => Ok(Matrix2::new(0.0, 0.0, c2, 0.0)),
            FlowSolution::ShearY { c1, .. } => Ok(Matrix2::new(0.0, c1, 0.0, 0.0)),
        }
    }

    /// Scalar vorticity d u_1/d y - d u_2/d x, sharing the gradient's
    /// singular-point rejection.
    pub fn vorticity(&self, p: PolarPoint) -> Result<f64, FamilyError> {
        match *self {
            FlowSolution::Constant { .. } => Ok(0.0),
            FlowSolution::Linear { c2, c3, .. } => Ok(c2 - c3),
            FlowSolution::Quadratic { c1, c2, .. } => {
                let (x, y) = p.to_cartesian();
                Ok(8.0 * c1 * x + 8.0 * c2 * y)
            }
            FlowSolution::PowerMode { lambda, c1, c2, .. } => {
                if p.r == 0.0 && lambda < 1.0 && (c1 != 0.0 || c2 != 0.0) {
                    return Err(FamilyError::GradientBlowup { family: self.tag() });
                }
                Ok(0.0)
            }
            FlowSolution::RotLog { c1, c2, .. } => {
                if p.r == 0.0 {
                    if c2 != 0.0 {
                        return Err(FamilyError::GradientBlowup { family: self.tag() });
                    }
                    return Ok(-2.0 * c1);
                }
                Ok(-(2.0 * c2 * p.r.ln() + c2 + 2.0 * c1))
            }
            FlowSolution::ShearX { c2, .. } => Ok(-c2),
            FlowSolution::ShearY { c1, .. } => Ok(c1),
        }
    }

    /// Analytic Laplacian of the velocity.
    pub fn laplacian_velocity(&self, p: PolarPoint) -> Result<Vector2<f64>, FamilyError> {
        match *self {
            FlowSolution::Quadratic { c1, c2, .. } => Ok(Vector2::new(8.0 * c2, -8.0 * c1)),
            FlowSolution::RotLog { c2, .. } => {
                if c2 == 0.0 {
                    return Ok(Vector2::zeros());
                }
                if p.r == 0.0 {
                    return Err(FamilyError::GradientBlowup { family: self.tag() });
                }
                let (s, c) = p.theta.sin_cos();
                Ok(Vector2::new(-2.0 * c2 * s / p.r, 2.0 * c2 * c / p.r))
            }
            _ => Ok(Vector2::zeros()),
        }
    }

    /// Analytic pressure gradient.
    pub fn pressure_gradient(&self, p: PolarPoint) -> Result<Vector2<f64>, FamilyError> {
        let (x, y) = p.to_cartesian();
        match *self {
            FlowSolution::Constant { .. } => Ok(Vector2::zeros()),
            FlowSolution::Linear { c1, c2, c3, .. } => {
                let k = c1 * c1 + c2 * c3;
                Ok(Vector2::new(-k * x, -k * y))
            }
            FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
                let k = c1 * c1 + c2 * c2 - c3 * c3 - c4 * c4;
                let r2 = x * x + y * y;
                Ok(Vector2::new(
                    2.0 * k * r2 * x + 8.0 * c2,
                    2.0 * k * r2 * y - 8.0 * c1,
                ))
            }
            FlowSolution::PowerMode { lambda, c1, c2, .. } => {
                let s = c1 * c1 + c2 * c2;
                if s == 0.0 {
                    return Ok(Vector2::zeros());
                }
                if p.r == 0.0 && lambda < 1.0 {
                    return Err(FamilyError::GradientBlowup { family: self.tag() });
                }
                let f = -lambda * s * p.r.powf(2.0 * lambda - 2.0);
                Ok(Vector2::new(f * x, f * y))
            }
            FlowSolution::RotLog { c1, c2, .. } => {
                if p.r == 0.0 {
                    if c2 != 0.0 {
                        return Err(FamilyError::GradientBlowup { family: self.tag() });
                    }
                    return Ok(Vector2::zeros());
                }
                let g = c1 + c2 * p.r.ln();
                let (s, c) = p.theta.sin_cos();
                let swirl = 2.0 * c2 / p.r;
                let radial = p.r * g * g;
                Ok(Vector2::new(-swirl * s + radial * c, swirl * c + radial * s))
            }
            FlowSolution::ShearX { c1, c2, .. } => Ok(Vector2::new(0.0, -c1 * c2)),
            FlowSolution::ShearY { c1, c2, .. } => Ok(Vector2::new(-c1 * c2, 0.0)),
        }
    }

    /// Analytic gradient of the scalar vorticity.
    pub fn vorticity_gradient(&self, p: PolarPoint) -> Result<Vector2<f64>, FamilyError> {
        match *self {
            FlowSolution::Quadratic { c1, c2, .. } => Ok(Vector2::new(8.0 * c1, 8.0 * c2)),
            FlowSolution::RotLog { c2, .. } => {
                if c2 == 0.0 {
                    return Ok(Vector2::zeros());
                }
                if p.r == 0.0 {
                    return Err(FamilyError::GradientBlowup { family: self.tag() });
                }
                let (s, c) = p.theta.sin_cos();
                Ok(Vector2::new(-2.0 * c2 * c / p.r, -2.0 * c2 * s / p.r))
            }
            _ => Ok(Vector2::zeros()),
        }
    }

    /// Analytic Laplacian of the scalar vorticity. Zero for every family:
    /// the vorticities are harmonic (affine, constant, or pure log).
    pub fn vorticity_laplacian(&self, p: PolarPoint) -> Result<f64, FamilyError> {
        if let FlowSolution::RotLog { c2, .. } = *self {
            if c2 != 0.0 && p.r == 0.0 {
                return Err(FamilyError::GradientBlowup { family: self.tag() });
            }
        }
        Ok(0.0)
    }

    /// Where each family is a genuine solution.
    pub fn admissible(&self, d: &ConeDomain) -> Admissibility {
        match *self {
            FlowSolution::Constant { .. }
            | FlowSolution::Linear { .. }
            | FlowSolution::ShearX { .. }
            | FlowSolution::ShearY { .. } => {
                Admissibility::ok("polynomial velocity; admissible on any cone domain")
            }
            FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
                let (res1, res2) = quadratic_constraint_residuals(c1, c2, c3, c4);
                if res1.abs() > tol::QUADRATIC_CONSTRAINT_TOL
                    || res2.abs() > tol::QUADRATIC_CONSTRAINT_TOL
                {
                    Admissibility::no(format!(
                        "compatibility constraints violated: residuals ({res1:e}, {res2:e})"
                    ))
                } else {
                    Admissibility::ok("constraints satisfied; admissible on any cone domain")
                }
            }
            FlowSolution::PowerMode { lambda, .. } => match d {
                ConeDomain::Sector { .. } => {
                    if lambda > 0.0 && lambda != 1.0 && lambda != 2.0 {
                        Admissibility::ok("power exponent admissible on sectors")
                    } else {
                        Admissibility::no(format!(
                            "exponent {lambda} outside (0,1) u (1,2) u (2,inf)"
                        ))
                    }
                }
                ConeDomain::FullPlane => {
                    if lambda >= 3.0 && lambda.fract() == 0.0 {
                        Admissibility::ok(
                            "integer exponent >= 3 gives a single-valued polynomial \
                             field on the whole plane",
                        )
                    } else {
                        Admissibility::no(format!(
                            "on the full plane the exponent must be an integer >= 3 \
                             so the field is single-valued; got {lambda}"
                        ))
                    }
                }
            },
            FlowSolution::RotLog { c2, .. } => match d {
                ConeDomain::Sector { .. } => {
                    Admissibility::ok("log swirl is admissible on proper sectors")
                }
                ConeDomain::FullPlane => {
                    let mut why = String::from(
                        "the log-swirl pressure carries a 2*c2*theta term, \
                         single-valued only on sectors",
                    );
                    if c2 == 0.0 {
                        why.push_str("; with c2 = 0 the field is the rigid rotation, \
                                      a member of the linear family");
                    }
                    Admissibility::no(why)
                }
            },
        }
    }

    /// Image of the member under the scaling u_s(x) = s u(s x),
    /// p_s(x) = s^2 p(s x). The catalog is closed under it; constants
    /// transform per family as implemented here.
    pub fn scaled(&self, s: f64) -> FlowSolution {
        assert!(s > 0.0, "scaling factor must be positive");
        let s2 = s * s;
        match *self {
            FlowSolution::Constant { c1, c2, c3 } => FlowSolution::Constant {
                c1: s * c1,
                c2: s * c2,
                c3: s2 * c3,
            },
            FlowSolution::Linear { c1, c2, c3, c4 } => FlowSolution::Linear {
                c1: s2 * c1,
                c2: s2 * c2,
                c3: s2 * c3,
                c4: s2 * c4,
            },
            FlowSolution::Quadratic { c1, c2, c3, c4, c5 } => {
                let s3 = s2 * s;
                FlowSolution::Quadratic {
                    c1: s3 * c1,
                    c2: s3 * c2,
                    c3: s3 * c3,
                    c4: s3 * c4,
                    c5: s2 * c5,
                }
            }
            FlowSolution::PowerMode { lambda, c1, c2, c3 } => {
                let f = s.powf(lambda + 1.0);
                FlowSolution::PowerMode {
                    lambda,
                    c1: f * c1,
                    c2: f * c2,
                    c3: s2 * c3,
                }
            }
            FlowSolution::RotLog { c1, c2, c3 } => FlowSolution::RotLog {
                c1: s2 * (c1 + c2 * s.ln()),
                c2: s2 * c2,
                c3: s2 * c3,
            },
            FlowSolution::ShearX { c1, c2, c3 } => FlowSolution::ShearX {
                c1: s * c1,
                c2: s2 * c2,
                c3: s2 * c3,
            },
            FlowSolution::ShearY { c1, c2, c3 } => FlowSolution::ShearY {
                c1: s2 * c1,
                c2: s * c2,
                c3: s2 * c3,
            },
        }
    }
}

/// Largest singular value of a 2x2 matrix, in closed form.
pub fn spectral_norm(m: &Matrix2<f64>) -> f64 {
    let a = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let b = 0.5 * (m[(0, 0)] - m[(1, 1)]);
    let c = 0.5 * (m[(1, 0)] + m[(0, 1)]);
    let d = 0.5 * (m[(1, 0)] - m[(0, 1)]);
    a.hypot(d) + b.hypot(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::to_polar;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, PI};

    fn at(x: f64, y: f64) -> PolarPoint {
        to_polar(x, y)
    }

    #[test]
    fn linear_velocity_value() {
        let s = FlowSolution::Linear { c1: 0.0, c2: 1.0, c3: -1.0, c4: 0.0 };
        let u = s.velocity(at(2.0, 3.0));
        assert_relative_eq!(u.x, 3.0, max_relative = 1e-14);
        assert_relative_eq!(u.y, -2.0, max_relative = 1e-14);
    }

    #[test]
    fn power_mode_half_exponent() {
        let s = FlowSolution::power_mode(0.5, 1.0, 0.0, 0.0).unwrap();
        let u = s.velocity(PolarPoint::new(4.0, PI));
        assert_relative_eq!(u.x, 0.0, epsilon = 1e-14);
        assert_relative_eq!(u.y, -2.0, max_relative = 1e-14);
    }

    #[test]
    fn rotlog_velocity_and_origin_limit() {
        let s = FlowSolution::RotLog { c1: 0.0, c2: 1.0, c3: 0.0 };
        let u = s.velocity(PolarPoint::new(E, PI / 2.0));
        assert_relative_eq!(u.x, -E, max_relative = 1e-14);
        assert_relative_eq!(u.y, 0.0, epsilon = 1e-14);
        assert_eq!(s.velocity(PolarPoint::new(0.0, 0.0)), Vector2::zeros());
    }

    #[test]
    fn power_mode_pressure() {
        let s = FlowSolution::power_mode(3.0, 1.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(s.pressure(PolarPoint::new(2.0, 1.0)), -32.0, max_relative = 1e-14);
    }

    #[test]
    fn rotlog_pressure_rigid_rotation() {
        let s = FlowSolution::RotLog { c1: 1.0, c2: 0.0, c3: 0.0 };
        assert_relative_eq!(s.pressure(PolarPoint::new(1.0, PI)), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn linear_gradient_matrix() {
        let s = FlowSolution::Linear { c1: 1.0, c2: 0.0, c3: 0.0, c4: 0.0 };
        let g = s.velocity_gradient(at(0.3, 0.7)).unwrap();
        assert_eq!(g, Matrix2::new(1.0, 0.0, 0.0, -1.0));
    }

    #[test]
    fn rotlog_gradient_matrix() {
        let s = FlowSolution::RotLog { c1: 0.0, c2: 1.0, c3: 0.0 };
        let g = s.velocity_gradient(PolarPoint::new(1.0 / E, 0.0)).unwrap();
        assert_relative_eq!(g[(0, 0)], 0.0, epsilon = 1e-15);
        assert_relative_eq!(g[(0, 1)], 1.0, max_relative = 1e-14);
        assert_relative_eq!(g[(1, 0)], 0.0, epsilon = 1e-15);
        assert_relative_eq!(g[(1, 1)], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rotlog_gradient_blows_up_at_origin() {
        let s = FlowSolution::RotLog { c1: 1.0, c2: 2.0, c3: 0.0 };
        assert!(matches!(
            s.velocity_gradient(PolarPoint::new(0.0, 0.0)),
            Err(FamilyError::GradientBlowup { .. })
        ));
    }

    #[test]
    fn vorticity_values() {
        let rot = FlowSolution::RotLog { c1: 1.0, c2: 0.0, c3: 0.0 };
        assert_relative_eq!(
            rot.vorticity(PolarPoint::new(1.0, 0.3)).unwrap(),
            -2.0,
            max_relative = 1e-14
        );
        let shear = FlowSolution::ShearX { c1: 0.0, c2: 1.0, c3: 0.0 };
        assert_relative_eq!(shear.vorticity(at(1.0, 1.0)).unwrap(), -1.0, max_relative = 1e-14);
        let rot2 = FlowSolution::RotLog { c1: 1.0, c2: 1.0, c3: 0.0 };
        // -(2 c2 ln r + c2 + 2 c1) at r = 1 is -(c2 + 2 c1)
        assert_relative_eq!(
            rot2.vorticity(PolarPoint::new(1.0, 0.0)).unwrap(),
            -3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn quadratic_completion_examples() {
        for (c1, c2, want3, want4) in [
            (1.0, 1.0, 1.0, 1.0),
            (1.0, 0.0, 0.0, -1.0),
            (0.0, 1.0, -1.0, 0.0),
        ] {
            let s = quadratic_from_c1c2(c1, c2, 0.0).unwrap();
            match s {
                FlowSolution::Quadratic { c3, c4, .. } => {
                    assert_relative_eq!(c3, want3, epsilon = 1e-14);
                    assert_relative_eq!(c4, want4, epsilon = 1e-14);
                }
                _ => unreachable!(),
            }
        }
        assert_eq!(
            quadratic_from_c1c2(0.0, 0.0, 1.0),
            Err(FamilyError::DegenerateCompletion)
        );
    }

    #[test]
    fn make_quadratic_rejects_violations() {
        let err = FlowSolution::make_quadratic(1.0, 0.0, 1.0, 0.0, 0.0).unwrap_err();
        match err {
            FamilyError::ConstraintViolated { res1, res2 } => {
                assert_relative_eq!(res1, 1.0, max_relative = 1e-14);
                assert_relative_eq!(res2, 1.0, max_relative = 1e-14);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn admissibility_rules() {
        let plane = ConeDomain::FullPlane;
        let sector = ConeDomain::sector(0.0, PI).unwrap();

        let rot = FlowSolution::RotLog { c1: 0.0, c2: 1.0, c3: 0.0 };
        assert!(!rot.admissible(&plane).admissible);
        assert!(rot.admissible(&sector).admissible);

        let frac = FlowSolution::power_mode(1.5, 1.0, 0.0, 0.0).unwrap();
        assert!(frac.admissible(&sector).admissible);
        assert!(!frac.admissible(&plane).admissible);

        let cubic = FlowSolution::power_mode(3.0, 1.0, 0.0, 0.0).unwrap();
        assert!(cubic.admissible(&plane).admissible);

        assert!(FlowSolution::power_mode(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(FlowSolution::power_mode(2.0, 1.0, 0.0, 0.0).is_err());
        assert!(FlowSolution::power_mode(-0.5, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn gradients_are_trace_free() {
        let members = [
            FlowSolution::Constant { c1: 1.0, c2: -2.0, c3: 0.5 },
            FlowSolution::Linear { c1: 0.7, c2: -0.3, c3: 1.1, c4: 0.0 },
            quadratic_from_c1c2(1.0, 2.0, 0.0).unwrap(),
            FlowSolution::power_mode(1.5, 1.0, -1.0, 0.0).unwrap(),
            FlowSolution::RotLog { c1: 1.0, c2: 2.0, c3: 0.0 },
            FlowSolution::ShearX { c1: 1.0, c2: 2.0, c3: 0.0 },
            FlowSolution::ShearY { c1: -1.0, c2: 2.0, c3: 0.0 },
        ];
        for s in members {
            for &(x, y) in &[(0.7, 0.2), (-1.3, 0.4), (0.1, -2.0)] {
                let g = s.velocity_gradient(at(x, y)).unwrap();
                assert!(
                    (g[(0, 0)] + g[(1, 1)]).abs() <= crate::tol::DIV_TRACE_TOL,
                    "trace {:?} at ({x},{y})",
                    s.tag()
                );
            }
        }
    }

    #[test]
    fn momentum_balance_closed_form() {
        let members = [
            FlowSolution::Linear { c1: 0.7, c2: -0.3, c3: 1.1, c4: 0.4 },
            quadratic_from_c1c2(1.0, 2.0, -0.5).unwrap(),
            FlowSolution::power_mode(2.5, 0.8, -0.6, 1.0).unwrap(),
            FlowSolution::RotLog { c1: 1.2, c2: -0.9, c3: 0.3 },
            FlowSolution::ShearX { c1: 1.0, c2: 2.0, c3: 0.0 },
            FlowSolution::ShearY { c1: -1.5, c2: 0.7, c3: 0.2 },
        ];
        for s in members {
            for &(x, y) in &[(0.5, 0.4), (1.5, 0.9), (0.2, 1.9)] {
                let p = at(x, y);
                let u = s.velocity(p);
                let g = s.velocity_gradient(p).unwrap();
                let lap = s.laplacian_velocity(p).unwrap();
                let gp = s.pressure_gradient(p).unwrap();
                let res = -lap + g * u + gp;
                let scale = 1.0 + lap.norm() + (g * u).norm() + gp.norm();
                assert!(
                    res.norm() / scale <= crate::tol::MOMENTUM_REL_TOL,
                    "{:?} at ({x},{y}): {res:?}",
                    s.tag()
                );
            }
        }
    }

    #[test]
    fn bernoulli_for_power_modes() {
        let s = FlowSolution::power_mode(1.5, 0.7, -0.4, 2.0).unwrap();
        for &(r, t) in &[(0.5, 0.3), (1.0, 1.2), (2.5, 2.9)] {
            let p = PolarPoint::new(r, t);
            let u = s.velocity(p);
            let total = s.pressure(p) + 0.5 * u.norm_squared();
            assert_relative_eq!(total, 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn spectral_norm_closed_form_matches_svd() {
        let m = Matrix2::new(1.0, -2.0, 0.5, 3.0);
        let svd = m.svd(false, false);
        assert_relative_eq!(
            spectral_norm(&m),
            svd.singular_values[0],
            max_relative = 1e-12
        );
    }

    #[test]
    fn scaling_keeps_members_in_catalog() {
        let s = FlowSolution::RotLog { c1: 1.0, c2: 2.0, c3: 0.5 };
        let sig = 2.0;
        let scaled = s.scaled(sig);
        for &(r, t) in &[(0.5, 0.3), (1.5, 2.0)] {
            let p = PolarPoint::new(r, t);
            let q = PolarPoint::new(sig * r, t);
            let want_u = sig * s.velocity(q);
            let got_u = scaled.velocity(p);
            assert_relative_eq!(got_u.x, want_u.x, max_relative = 1e-13);
            assert_relative_eq!(got_u.y, want_u.y, max_relative = 1e-13);
            let want_p = sig * sig * s.pressure(q);
            assert_relative_eq!(scaled.pressure(p), want_p, max_relative = 1e-13);
        }
    }
}
