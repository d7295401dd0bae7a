//! Numeric thresholds used across the crate.
//!
//! All comparisons against closed-form identities go through these
//! constants so the contract is pinned in one place. Each constant notes
//! what it guards and why the magnitude is safe for double precision.

/// Absolute bound on the two quadratic-family compatibility residuals.
///
/// The residuals are bilinear in constants of desk magnitude, so exact
/// parameter sets land many orders below this while genuine violations of
/// practical size land far above it.
pub const QUADRATIC_CONSTRAINT_TOL: f64 = 1e-12;

/// Absolute bound on the trace of an analytic velocity gradient.
pub const DIV_TRACE_TOL: f64 = 1e-13;

/// Scale-normalized bound on the analytic momentum residual.
pub const MOMENTUM_REL_TOL: f64 = 1e-9;

/// Scale-normalized bound on the analytic vorticity transport residual.
pub const VORTICITY_REL_TOL: f64 = 1e-9;

/// Relative bound on the radial-system residual r phi' - M phi.
pub const EULER_RESIDUAL_REL: f64 = 1e-10;

/// Absolute bound for characteristic-root and Vieta checks.
pub const ROOT_CHECK_TOL: f64 = 1e-12;

/// Discriminant window treated as a double root.
pub const EULER_DELTA_TOL: f64 = 1e-12;

/// Degeneracy threshold for the two-angle determinant after row
/// normalization.
pub const D1_DEGENERACY_TOL: f64 = 1e-10;

/// Angular distance from multiples of pi/2 below which the transport
/// factor combinations are treated as singular.
pub const AXIS_GUARD: f64 = 1e-8;

/// Absolute bound on the transport compatibility identity residual.
pub const CRITICAL_IDENTITY_TOL: f64 = 1e-11;

/// Max error allowed when recovering radial coefficients from exact
/// separated inputs.
pub const RADIAL_RECOVERY_TOL: f64 = 1e-9;

/// Normalized model residual below which a classification is accepted.
pub const FIT_ACCEPT_TOL: f64 = 1e-8;

/// Second-to-first singular value ratio certifying a rank-1 sample matrix.
pub const RANK1_RATIO_TOL: f64 = 1e-10;

/// A sampled function is identically zero when its RMS is below
/// ZERO_REL times the paired function's RMS plus ZERO_ABS.
pub const ZERO_REL: f64 = 1e-10;
pub const ZERO_ABS: f64 = 1e-14;

/// Absolute error allowed for line-integral pressure recovery at 4096
/// panels on paths of length at most 2.
pub const PRESSURE_RECOVERY_ABS: f64 = 1e-6;

/// Relative error allowed on constants recovered by the classifier.
pub const CLASSIFIER_CONSTANT_REL: f64 = 1e-6;

/// Relative error allowed on the fitted gradient blow-up slope.
pub const BLOWUP_SLOPE_REL: f64 = 0.02;

/// Relative error allowed between the sampled Hölder quotient and its
/// closed-form envelope.
pub const HOLDER_ENVELOPE_REL: f64 = 0.01;

/// Acceptable range for the residual-gap ratio when the step is halved;
/// a second-order oracle gives 4 up to higher-order terms.
pub const FD_RATIO_LO: f64 = 3.5;
pub const FD_RATIO_HI: f64 = 4.5;

/// Allowed deviation from 1 of the log-log slope of momentum residual
/// versus constraint violation.
pub const CONSTRAINT_SLOPE_TOL: f64 = 0.05;

/// Absolute bound on the (degree+1)-th directional difference of a
/// polynomial member.
pub const POLY_DIFF_TOL: f64 = 1e-8;

/// Tolerance for regrouping grid coordinates read back from CSV.
pub const GRID_REGULARITY_TOL: f64 = 1e-9;
