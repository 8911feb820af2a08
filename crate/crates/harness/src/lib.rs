//! Solving, decoding, checking and reporting for the order-10 pair search.
//!
//! Instances come from `mols10-core`; any solver that reads DIMACS and prints
//! `s`/`v` lines can be plugged in through a command template.

pub mod decode;
pub mod extend;
pub mod pairfile;
pub mod portfolio;
pub mod report;
pub mod runner;
pub mod stats;
pub mod verify;
