//! Exact geodesics and geodesic motion-planning rules for configuration
//! spaces of two points (equivalently, two unit balls) moving in `R^n`.
//!
//! Three spaces are covered:
//!
//! - [`ordered`]: ordered pairs with the clearance constraint
//!   `‖a′ − a‖ ≥ 2`, under the Euclidean metric of `R^{2n}`. Minimal
//!   geodesics are classified into a linear type, a unique
//!   linear–boundary-arc–linear type, and an antiparallel type carrying a
//!   whole family of equal-length geodesics.
//! - [`unordered`]: unordered pairs (no clearance), with the min-over-pairings
//!   metric. Every pair of configurations is joined by a linear geodesic.
//! - [`altmetric`]: the product metric on midpoint × direction × radius
//!   coordinates, in which the ordered space without clearance is
//!   geodesically complete and geodesics are slerp-based.
//!
//! [`planner`] turns the classification into motion-planning rules (region
//! partitions with a continuous geodesic choice on each region), and
//! [`oracle`] provides an independent brute-force path optimizer used to
//! confirm minimality of the closed forms numerically.

pub mod altmetric;
mod error;
pub mod oracle;
pub mod ordered;
pub mod planner;
pub mod unordered;
pub mod vecgeo;

pub use error::Error;
