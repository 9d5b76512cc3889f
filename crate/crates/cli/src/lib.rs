//! Command-line front end: input grammar, commands, random instance
//! generation, and the corpus verification harness.

pub mod commands;
pub mod gen;
pub mod input;
pub mod verify;
