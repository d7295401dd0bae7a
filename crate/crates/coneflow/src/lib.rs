//! Exact steady incompressible flows on cone-like plane domains.
//!
//! The library carries a closed-form catalog of velocity/pressure pairs that
//! solve the stationary momentum and continuity equations on the full plane
//! or on sectors, together with the machinery used to work with them:
//!
//! * [`geometry`]: domains, polar/Cartesian conversion, membership tests.
//! * [`families`]: the seven-family solution catalog with analytic
//!   derivatives and admissibility rules.
//! * [`euler`]: closed-form solver for 2x2 first-order equidimensional
//!   radial systems.
//! * [`angular`]: angular factor algebra for separated single-profile
//!   fields (divergence combination, swirl combination, vorticity factor).
//! * [`reduction`]: the two-profile separation ansatz, its radial
//!   coefficient recovery and the transport compatibility identity.
//! * [`verifier`]: analytic residuals, an independent finite-difference
//!   oracle, pressure recovery by line integration, gradient blow-up and
//!   Hölder-quotient profiling.
//! * [`liouville`]: growth and corner-regularity verdicts.
//! * [`classifier`]: recovers the family tag and constants from gridded
//!   velocity samples.
//! * [`io`] and [`cli`]: config parsing, CSV grid export, command front end.

pub mod angular;
pub mod classifier;
pub mod cli;
pub mod euler;
pub mod families;
pub mod geometry;
pub mod io;
pub mod liouville;
pub mod reduction;
pub mod tol;
pub mod verifier;

pub use families::FlowSolution;
pub use geometry::{ConeDomain, Margin, PolarPoint};
