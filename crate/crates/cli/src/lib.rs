//! Parser, printers and command driver for the `tamelimits` binary.

pub mod command;
pub mod emit;
pub mod parse;

pub use command::{run_command, Outcome};
pub use emit::{emit, Format};
pub use parse::{parse_map, Backend, ParseError};
