//! Text format, subcommands and the acceptance runner behind the `dgpair`
//! binary.

pub mod acceptance;
pub mod commands;
pub mod format;
