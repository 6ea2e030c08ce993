//! Command-line front end for `hypcone`: JSON model files in, deterministic
//! JSON reports out.
//!
//! Exit codes: `0` success or a positive verdict, `1` a negative verdict,
//! `2` malformed input, `3` a violated precondition (for example `p(e) ≤ 0`
//! or a search size over the limit).

pub mod commands;
pub mod model;
pub mod report;

pub use commands::{execute, Cli, CliError, Command, Outcome};
pub use model::{parse_point_arg, Model, ModelError, ModelFile};
