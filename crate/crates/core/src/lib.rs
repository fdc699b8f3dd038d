//! Component-homotopy invariants of spatial graphs computed from diagram
//! codes: Milnor-group presentations, mu-bar invariants of constituent links,
//! splittability verdicts and the lambda invariants of each component.

pub mod diagram;
pub mod graph;
pub mod ring;
pub mod presentation;
pub mod invariants;
pub mod report;
pub mod cli;
