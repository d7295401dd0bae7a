//! Rigidity checks: growth of a catalog field at infinity, smoothness up to
//! the corner, and the resulting constancy verdict. The governing fact is
//! that a solution with sublinear growth that stays C^1 up to the corner
//! must be constant; every nonconstant catalog member violates at least one
//! of the two hypotheses, and the verdict records which.

use thiserror::Error;

use crate::families::FlowSolution;
use crate::geometry::ConeDomain;
use nalgebra::Vector2;

#[derive(Debug, Error, PartialEq)]
pub enum LiouvilleError {
    #[error("field is not admissible on this domain: {reason}")]
    NotAdmissible { reason: String },
}

/// Smallest s with |u(x)| = O(|x|^s) at infinity, up to logarithmic
/// corrections (the swirl-with-log field grows like r ln r and reports 1).
/// Zero fields report 0.
pub fn growth_exponent(flow: &FlowSolution) -> f64 {
    match *flow {
        FlowSolution::Constant { .. } => 0.0,
        FlowSolution::Linear { c1, c2, c3, .. } => {
            if c1 == 0.0 && c2 == 0.0 && c3 == 0.0 {
                0.0
            } else {
                1.0
            }
        }
        FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
            if c1 == 0.0 && c2 == 0.0 && c3 == 0.0 && c4 == 0.0 {
                0.0
            } else {
                2.0
            }
        }
        FlowSolution::PowerMode { lambda, c1, c2, .. } => {
            if c1 == 0.0 && c2 == 0.0 {
                0.0
            } else {
                lambda
            }
        }
        FlowSolution::RotLog { c1, c2, .. } => {
            if c1 == 0.0 && c2 == 0.0 {
                0.0
            } else {
                1.0
            }
        }
        FlowSolution::ShearX { c2, .. } => {
            if c2 == 0.0 {
                0.0
            } else {
                1.0
            }
        }
        FlowSolution::ShearY { c1, .. } => {
            if c1 == 0.0 {
                0.0
            } else {
                1.0
            }
        }
    }
}

/// Whether the velocity extends C^1 to the corner. Only two catalog
/// mechanisms break this: the logarithmic swirl gradient and power modes
/// with exponent below one.
pub fn c1_up_to_corner(flow: &FlowSolution) -> bool {
    match *flow {
        FlowSolution::RotLog { c2, .. } => c2 == 0.0,
        FlowSolution::PowerMode { lambda, c1, c2, .. } => {
            lambda >= 1.0 || (c1 == 0.0 && c2 == 0.0)
        }
        _ => true,
    }
}

/// Whether the velocity field is constant in space.
pub fn is_constant(flow: &FlowSolution) -> bool {
    match *flow {
        FlowSolution::Constant { .. } => true,
        FlowSolution::Linear { c1, c2, c3, .. } => c1 == 0.0 && c2 == 0.0 && c3 == 0.0,
        FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
            c1 == 0.0 && c2 == 0.0 && c3 == 0.0 && c4 == 0.0
        }
        FlowSolution::PowerMode { c1, c2, .. } => c1 == 0.0 && c2 == 0.0,
        FlowSolution::RotLog { c1, c2, .. } => c1 == 0.0 && c2 == 0.0,
        FlowSolution::ShearX { c2, .. } => c2 == 0.0,
        FlowSolution::ShearY { c1, .. } => c1 == 0.0,
    }
}

/// Outcome of the rigidity test for one admissible field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleVerdict {
    pub growth_exponent: f64,
    pub sublinear: bool,
    pub corner_smooth: bool,
    pub constant: bool,
}

/// Evaluates both hypotheses and the conclusion. Errors if the field is not
/// a solution on the given domain, since the rigidity statement only speaks
/// about admissible fields.
pub fn liouville_verdict(
    flow: &FlowSolution,
    domain: &ConeDomain,
) -> Result<LiouvilleVerdict, LiouvilleError> {
    let adm = flow.admissible(domain);
    if !adm.admissible {
        return Err(LiouvilleError::NotAdmissible { reason: adm.reason });
    }
    let sigma = growth_exponent(flow);
    Ok(LiouvilleVerdict {
        growth_exponent: sigma,
        sublinear: sigma < 1.0,
        corner_smooth: c1_up_to_corner(flow),
        constant: is_constant(flow),
    })
}

/// Polynomial degree of the velocity components, when they are polynomials
/// in (x, y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolynomialDegree {
    Degree(u32),
    NonPolynomial,
}

pub fn polynomial_degree(flow: &FlowSolution) -> PolynomialDegree {
    use PolynomialDegree::*;
    match *flow {
        FlowSolution::Constant { .. } => Degree(0),
        FlowSolution::Linear { c1, c2, c3, .. } => {
            if c1 == 0.0 && c2 == 0.0 && c3 == 0.0 {
                Degree(0)
            } else {
                Degree(1)
            }
        }
        FlowSolution::Quadratic { c1, c2, c3, c4, .. } => {
            if c1 == 0.0 && c2 == 0.0 && c3 == 0.0 && c4 == 0.0 {
                Degree(0)
            } else {
                Degree(2)
            }
        }
        FlowSolution::PowerMode { lambda, c1, c2, .. } => {
            if c1 == 0.0 && c2 == 0.0 {
                Degree(0)
            } else if lambda.fract() == 0.0 && lambda >= 0.0 {
                Degree(lambda as u32)
            } else {
                NonPolynomial
            }
        }
        FlowSolution::RotLog { c1, c2, .. } => {
            if c2 != 0.0 {
                NonPolynomial
            } else if c1 != 0.0 {
                Degree(1)
            } else {
                Degree(0)
            }
        }
        FlowSolution::ShearX { c2, .. } => {
            if c2 == 0.0 {
                Degree(0)
            } else {
                Degree(1)
            }
        }
        FlowSolution::ShearY { c1, .. } => {
            if c1 == 0.0 {
                Degree(0)
            } else {
                Degree(1)
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// n-th directional difference of the velocity,
/// sum_k (-1)^k C(n, k) u(x + k h e). It vanishes identically whenever the
/// components are polynomials of degree below n.
pub fn nth_difference(
    flow: &FlowSolution,
    x: (f64, f64),
    dir: (f64, f64),
    h: f64,
    n: u32,
) -> Vector2<f64> {
    let mut acc = Vector2::zeros();
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let px = x.0 + k as f64 * h * dir.0;
        let py = x.1 + k as f64 * h * dir.1;
        acc += sign * binomial(n, k) * flow.velocity_xy(px, py);
    }
    acc
}
