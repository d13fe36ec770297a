//! Exact computation on points of unprojectivized outer space and on the
//! simplicial boundary trees obtained from one-edge splittings.
//!
//! The crate provides:
//! - free-group word algebra over a finite rank ([`words`]);
//! - Whitehead graphs and the primitive/simple decision procedures
//!   ([`whitehead`]);
//! - marked metric graphs with exact rational edge lengths and their
//!   translation-length functions ([`marked_graph`]);
//! - candidate loops and the asymmetric Lipschitz stretch factor between
//!   marked graphs ([`stretch`]);
//! - pulled one-edge-splitting trees, their closed-form translation lengths,
//!   and the pull-equivalence decision procedures ([`boundary`]);
//! - a name-keyed registry of tree-file formats behind a common trait
//!   ([`tree`]).
//!
//! All metric arithmetic is exact rational; floats appear only when reports
//! are rendered.

pub mod boundary;
pub mod fold;
pub mod marked_graph;
pub mod rational;
pub mod stretch;
pub mod tree;
pub mod whitehead;
pub mod words;

pub use rational::{ExtRational, Rational};
pub use words::{CyclicWord, Letter, Word};
