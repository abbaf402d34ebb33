//! Feasibility tests and plan synthesis for pebble motion with rotations.

pub mod config;
pub mod feasibility;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod planner;
