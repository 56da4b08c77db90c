//! Command implementations and the verification suite behind the `ghilb`
//! binary. Everything here is exact arithmetic; reports are deterministic
//! for a fixed seed apart from the elapsed-time field.

pub mod checks;
pub mod commands;
pub mod report;
