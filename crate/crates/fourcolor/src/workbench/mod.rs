//! Operational surface: instance generators, named fixtures, file formats,
//! the abstract-graph embedding search, the fuzz campaign runner and the
//! wall-clock bench.

pub mod bench;
pub mod embed;
pub mod fixtures;
pub mod format;
pub mod fuzz;
pub mod gen;
