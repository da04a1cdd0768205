//! Numerical construction and verification of first-order boundary/corner
//! layer expansions for the singularly perturbed problem
//!
//! ```text
//! -eps^2 (Laplace u) + b(x, u) = 0   in a convex sector S,
//!                            u = g   on the two sides of S,
//! ```
//!
//! where the reduced equation b(x, u0(x)) = 0 has a stable solution u0.
//! The crate solves the one-dimensional side-layer profiles (in the
//! stretched normal variable xi = r/eps), the two-dimensional corner-layer
//! fields (in eta = x/eps), assembles the expansion
//!
//! ```text
//! u_as(x) = u0(x) + v(xi, s) + v⁻(xi⁻, s⁻) + q(eta)
//! ```
//!
//! and its shifted version beta(x; p) = u0 + ṽ + ṽ⁻ + q̃ + θp, and measures
//! the quantitative properties these objects are supposed to have: residual
//! orders in eps, exponential decay rates, the corner sandwich bounds,
//! monotonicity in the shift parameter p, and the sign inequalities that
//! make beta(·; ±p) a super-/sub-solution pair.

pub mod corner2d;
pub mod expansion;
pub mod fit;
pub mod geometry;
pub mod io;
pub mod layer1d;
pub mod linalg;
pub mod par;
pub mod problem;
pub mod quad;
pub mod sampling;
pub mod verify;

pub use expansion::{BundleConfig, ExpansionBundle, SMode};
pub use geometry::{Point, SectorGeometry, Side, SideCoords, StretchedCoords, Vec2};
pub use problem::{builtin_fixture, AssumptionReport, Fixture, SamplingPlan, SemilinearProblem};
