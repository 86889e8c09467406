pub mod commands;
pub mod config;
pub mod eval;
pub mod expr;
pub mod report;
