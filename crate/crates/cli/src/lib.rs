//! File formats, expression syntax and the command-line front end for
//! [`lpa_core`].

pub mod app;
pub mod error;
pub mod expr;
pub mod fieldspec;
pub mod graphfile;
pub mod report;
pub mod syntax;

pub use app::{run, Outcome};
pub use error::CliError;
pub use expr::{parse_expr, parse_scalar};
pub use fieldspec::parse_field;
pub use graphfile::{parse_graph, serialize_graph};
pub use lpa_core;
