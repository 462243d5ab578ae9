//! File formats and subcommand implementations behind the `ctvd` binary.

pub mod commands;
pub mod format;
