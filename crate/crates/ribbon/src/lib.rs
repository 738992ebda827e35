//! Ribbon-graph algebra on arrow presentations.
//!
//! A ribbon graph is stored as an arrow presentation: a set of circles
//! carrying directed, edge-labelled marking arrows, two arrows per edge.
//! On top of that single representation the crate provides:
//!
//! - surface invariants (boundary decomposition, orientability, Euler genus,
//!   checkerboard colourability) in [`topology`];
//! - the twisted-duality group action (partial duals, partial Petrials,
//!   deletion, contraction, arbitrary words) in [`twist`];
//! - spanning tree / quasi-tree / forest streams in [`spanning`];
//! - the enumerator of all k-regular partial duals via shorter marking arrow
//!   sequence sets in [`regular`];
//! - the enumerator of all checkerboard-colourable partial Petrials of an
//!   Eulerian graph via marked bouquets and adjoint sets in [`petrial`];
//! - the combined enumerator of all k-regular checkerboard-colourable
//!   twisted duals in [`pipeline`];
//! - brute-force oracles and the shared test corpus in [`oracle`].
//!
//! The `ribbon` binary exposes all of it behind `info`, `transform` and the
//! enumeration subcommands; see the crate README.

pub mod cli;
mod dsu;
pub mod error;
pub mod oracle;
pub mod petrial;
pub mod pipeline;
pub mod presentation;
pub mod regular;
pub mod spanning;
pub mod topology;
pub mod twist;

pub use error::{Result, RibbonError};
pub use presentation::{
    ArrowOccurrence, ArrowPresentation, CanonicalKey, Circle, EdgeLabel, EdgeSet, Sign,
};
