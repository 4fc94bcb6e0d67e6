//! File formats, the simulation harness and the command-line front end for
//! [`nullframe_core`].

pub mod cli;
pub mod error;
pub mod io;
pub mod sim;

pub use error::{Error, FormatError, Result};
