//! Library backing the `geoconfig` binary: query parsing and scaling,
//! JSON report shaping, figure rendering, and the command implementations.

pub mod commands;
pub mod query;
pub mod report;
pub mod svg;

pub use commands::{cmd_figure, cmd_geodesic, cmd_plan, cmd_verify, CliError};
pub use query::{FigureFixture, QuerySpec, SpaceKind};
pub use report::PathReport;
