//! File formats, JSON schemas, wall-clock budgets and the `hfrac` command
//! line on top of [`hfrac_core`].

pub mod cli;
pub mod deadline;
pub mod randgen;
pub mod report;
pub mod reproduce;
pub mod schema;
pub mod textgraph;

pub use hfrac_core as core;
