//! Input files, the bundled fixtures, commands and report rendering.

pub mod fixtures;
mod parse;
mod report;
mod run;

pub use parse::{scalar, DGAFile, ParseError, Terms};
pub use report::{Arrow, Body, GridCell, PageGrid, Report, Section};
pub use run::{render, run_file, run_source, Command, Format, Options, RunError, ORACLE_WINDOW};
