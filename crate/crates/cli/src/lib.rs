//! Library surface of the `fitcloud` command-line tool: experiment
//! configuration, the three commands, and plot rendering. The binary in
//! `main.rs` is a thin argument-parsing shell over this.

pub mod commands;
pub mod config;
pub mod plot;
