//! Angular factor algebra for single-profile separated fields
//! u = phi(r) (v1(theta), v2(theta)).
//!
//! Everything is phrased through three combinations of the angular pair:
//!
//! * the radial part  A = cos(t) v1 + sin(t) v2   (angular factor of u_r),
//! * the swirl part   L = sin(t) v1 - cos(t) v2   (minus the factor of u_t),
//! * the vorticity part H = A' + (lambda + 1) L.
//!
//! For a field with radial profile r^lambda the continuity and momentum
//! equations force L' = (lambda + 1) A and H'' + (lambda - 1)^2 H = 0,
//! and the pressure closes only when the compatibility combination
//! implemented by [`compatibility_residual`] vanishes identically.

use std::rc::Rc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AngularError {
    #[error("unsupported sine exponent {0}; only 0, 1, 2 occur")]
    UnsupportedExponent(u8),
}

/// The angular combinations for exponent `lambda` and the four free
/// constants of the general solution. Exponents 0 and 1 have their own
/// closed forms: 0 picks up secular (theta-proportional) terms and 1 has a
/// constant vorticity part, stored in `c3` (with `c4` unused).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularTriple {
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Builds the general angular solution for the given exponent.
pub fn build_alh(lambda: f64, c1: f64, c2: f64, c3: f64, c4: f64) -> AngularTriple {
    AngularTriple { lambda, c1, c2, c3, c4 }
}

impl AngularTriple {
    /// A(t): angular factor of the radial velocity component.
    pub fn radial_part(&self, t: f64) -> f64 {
        let AngularTriple { lambda, c1, c2, c3, c4 } = *self;
        if lambda == 0.0 {
            let (s, c) = t.sin_cos();
            return c * (0.5 * c1 * t + c3) + s * (-0.5 * c2 * t + c4);
        }
        if lambda == 1.0 {
            let (s2, c2t) = (2.0 * t).sin_cos();
            return c1 * c2t + c2 * s2;
        }
        let nu = lambda + 1.0;
        let mu = lambda - 1.0;
        let (sn, cn) = (nu * t).sin_cos();
        let (sm, cm) = (mu * t).sin_cos();
        c3 * cn + c4 * sn + mu / (4.0 * lambda) * (c2 * cm - c1 * sm)
    }

    /// A'(t), analytic.
    pub fn radial_part_deriv(&self, t: f64) -> f64 {
        let AngularTriple { lambda, c1, c2, c3, c4 } = *self;
        if lambda == 0.0 {
            let (s, c) = t.sin_cos();
            let f = 0.5 * c1 * t + c3;
            let g = -0.5 * c2 * t + c4;
            return c * (g + 0.5 * c1) + s * (-f - 0.5 * c2);
        }
        if lambda == 1.0 {
            let (s2, c2t) = (2.0 * t).sin_cos();
            return 2.0 * (-c1 * s2 + c2 * c2t);
        }
        let nu = lambda + 1.0;
        let mu = lambda - 1.0;
        let (sn, cn) = (nu * t).sin_cos();
        let (sm, cm) = (mu * t).sin_cos();
        nu * (-c3 * sn + c4 * cn) - mu * mu / (4.0 * lambda) * (c1 * cm + c2 * sm)
    }

    /// L(t): minus the angular factor of the azimuthal component.
    pub fn swirl_part(&self, t: f64) -> f64 {
        let AngularTriple { lambda, c1, c2, c3, c4 } = *self;
        if lambda == 0.0 {
            let (s, c) = t.sin_cos();
            return c * (0.5 * (c1 + c2 * t) - c4) + s * (0.5 * (c1 * t - c2) + c3);
        }
        if lambda == 1.0 {
            let (s2, c2t) = (2.0 * t).sin_cos();
            return 0.5 * c3 + c1 * s2 - c2 * c2t;
        }
        let nu = lambda + 1.0;
        let mu = lambda - 1.0;
        let (sn, cn) = (nu * t).sin_cos();
        let (sm, cm) = (mu * t).sin_cos();
        c3 * sn - c4 * cn + nu / (4.0 * lambda) * (c1 * cm + c2 * sm)
    }

    /// L'(t) = (lambda + 1) A(t); the identity is exact in every branch.
    pub fn swirl_part_deriv(&self, t: f64) -> f64 {
        (self.lambda + 1.0) * self.radial_part(t)
    }

    /// H(t): angular factor of the vorticity.
    pub fn vorticity_part(&self, t: f64) -> f64 {
        let AngularTriple { lambda, c1, c2, c3, .. } = *self;
        if lambda == 1.0 {
            return c3;
        }
        let mu = lambda - 1.0;
        let (sm, cm) = (mu * t).sin_cos();
        c1 * cm + c2 * sm
    }

    /// H'(t), analytic.
    pub fn vorticity_part_deriv(&self, t: f64) -> f64 {
        let AngularTriple { lambda, c1, c2, .. } = *self;
        if lambda == 1.0 {
            return 0.0;
        }
        let mu = lambda - 1.0;
        let (sm, cm) = (mu * t).sin_cos();
        mu * (-c1 * sm + c2 * cm)
    }

    /// H''(t) = -(lambda - 1)^2 H(t).
    pub fn vorticity_part_deriv2(&self, t: f64) -> f64 {
        let mu = self.lambda - 1.0;
        -mu * mu * self.vorticity_part(t)
    }
}

/// Residual of the pressure-compatibility combination at angle t.
///
/// For exponents other than 0 and 1 this is
///
/// ```text
/// (c1 c3 + c2 c4) cos 2t + (c1 c4 - c2 c3) sin 2t
///   - (1 / 2 lambda) [ c1 c2 cos((2 lambda - 2) t)
///                      + (c2^2 - c1^2)/2 sin((2 lambda - 2) t) ]
/// ```
///
/// At lambda = 2 both frequencies coincide and the bracket folds into the
/// leading coefficients; only there can the residual vanish with nonzero
/// (c1, c2). Exponent 0 has secular terms; exponent 1 closes identically
/// because its vorticity part is constant.
pub fn compatibility_residual(
    lambda: f64,
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    t: f64,
) -> f64 {
    if lambda == 1.0 {
        return 0.0;
    }
    let (s2, c2t) = (2.0 * t).sin_cos();
    if lambda == 0.0 {
        let p = 0.5 * ((c1 * c1 - c2 * c2) * t - c1 * c2) + c1 * c3 + c2 * c4;
        let q = c1 * c2 * t - c1 * c4 + c2 * c3 + 0.25 * (c1 * c1 - c2 * c2);
        return p * c2t - q * s2;
    }
    let (sm, cm) = ((2.0 * lambda - 2.0) * t).sin_cos();
    (c1 * c3 + c2 * c4) * c2t + (c1 * c4 - c2 * c3) * s2
        - (c1 * c2 * cm + 0.5 * (c2 * c2 - c1 * c1) * sm) / (2.0 * lambda)
}

/// Rebuilds the Cartesian angular pair from the radial and swirl parts:
/// v1 = A cos t + L sin t, v2 = A sin t - L cos t.
pub fn recover_v1v2(
    a: impl Fn(f64) -> f64 + 'static,
    l: impl Fn(f64) -> f64 + 'static,
) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let a = Rc::new(a);
    let l = Rc::new(l);
    let (a2, l2) = (Rc::clone(&a), Rc::clone(&l));
    (
        move |t: f64| a(t) * t.cos() + l(t) * t.sin(),
        move |t: f64| a2(t) * t.sin() - l2(t) * t.cos(),
    )
}

/// Pure trigonometric monomial amp * cos^k or amp * sin^k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrigMonomial {
    CosPow { k: u8, amp: f64 },
    SinPow { k: u8, amp: f64 },
}

impl TrigMonomial {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TrigMonomial::CosPow { k, amp } => amp * t.cos().powi(k as i32),
            TrigMonomial::SinPow { k, amp } => amp * t.sin().powi(k as i32),
        }
    }

    pub fn deriv(&self, t: f64) -> f64 {
        match *self {
            TrigMonomial::CosPow { k, amp } => {
                if k == 0 {
                    0.0
                } else {
                    -amp * k as f64 * t.cos().powi(k as i32 - 1) * t.sin()
                }
            }
            TrigMonomial::SinPow { k, amp } => {
                if k == 0 {
                    0.0
                } else {
                    amp * k as f64 * t.sin().powi(k as i32 - 1) * t.cos()
                }
            }
        }
    }
}

/// Selects which first-order angular equation is being solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lemma2Order {
    /// sin(t) v + cos(t) v' = 0, solved by C cos t.
    CosineLinear,
    /// 2 sin(t) v + cos(t) v' = 0, solved by C cos^2 t.
    CosineQuadratic,
    /// a cos(t) v - sin(t) v' = 0 for a in {0, 1, 2}, solved by C sin^a t.
    SinePower(u8),
}

/// Closed-form solution of the selected angular equation.
pub fn lemma2_solution(order: Lemma2Order, c: f64) -> Result<TrigMonomial, AngularError> {
    match order {
        Lemma2Order::CosineLinear => Ok(TrigMonomial::CosPow { k: 1, amp: c }),
        Lemma2Order::CosineQuadratic => Ok(TrigMonomial::CosPow { k: 2, amp: c }),
        Lemma2Order::SinePower(a) => {
            if a > 2 {
                return Err(AngularError::UnsupportedExponent(a));
            }
            Ok(TrigMonomial::SinPow { k: a, amp: c })
        }
    }
}

/// One radial basis function of the third-order swirl profile equation
/// r^3 f''' + 2 r^2 f'' - r f' + f = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwirlRadialBasis {
    /// f = r
    Linear,
    /// f = r ln r
    LinearLog,
    /// f = 1/r
    Reciprocal,
}

impl SwirlRadialBasis {
    pub fn value(&self, r: f64) -> f64 {
        match self {
            SwirlRadialBasis::Linear => r,
            SwirlRadialBasis::LinearLog => r * r.ln(),
            SwirlRadialBasis::Reciprocal => 1.0 / r,
        }
    }

    pub fn d1(&self, r: f64) -> f64 {
        match self {
            SwirlRadialBasis::Linear => 1.0,
            SwirlRadialBasis::LinearLog => r.ln() + 1.0,
            SwirlRadialBasis::Reciprocal => -1.0 / (r * r),
        }
    }

    pub fn d2(&self, r: f64) -> f64 {
        match self {
            SwirlRadialBasis::Linear => 0.0,
            SwirlRadialBasis::LinearLog => 1.0 / r,
            SwirlRadialBasis::Reciprocal => 2.0 / (r * r * r),
        }
    }

    pub fn d3(&self, r: f64) -> f64 {
        match self {
            SwirlRadialBasis::Linear => 0.0,
            SwirlRadialBasis::LinearLog => -1.0 / (r * r),
            SwirlRadialBasis::Reciprocal => -6.0 / (r * r * r * r),
        }
    }
}

/// The full solution space of the swirl profile equation.
pub fn radial_vorticity_ode_basis() -> [SwirlRadialBasis; 3] {
    [
        SwirlRadialBasis::Linear,
        SwirlRadialBasis::LinearLog,
        SwirlRadialBasis::Reciprocal,
    ]
}

/// Residual r^3 d3 + 2 r^2 d2 - r d1 + value of the swirl profile
/// equation, for externally supplied derivative values.
pub fn vorticity_ode_residual(value: f64, d1: f64, d2: f64, d3: f64, r: f64) -> f64 {
    r * r * r * d3 + 2.0 * r * r * d2 - r * d1 + value
}
