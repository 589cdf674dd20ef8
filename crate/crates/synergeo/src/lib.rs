//! Std companion of `synergeo-core`: text formats, instance generators and
//! the measurement harness, and the command-line front end.

pub mod bench;
pub mod cli;
pub mod formats;

pub use synergeo_core as core;
