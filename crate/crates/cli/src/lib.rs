//! Front end for `coldecay-core`: state files, time series output and the
//! `coldecay` command.

pub mod commands;
pub mod error;
pub mod output;
pub mod statefile;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
pub use output::Format;
pub use statefile::{Family, StateFile};
