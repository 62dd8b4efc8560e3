//! Command implementations and the acceptance suite behind the `grassqh` binary.

pub mod acceptance;
pub mod commands;
