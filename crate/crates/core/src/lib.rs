//! Stallings core graphs for finitely generated subgroups of free groups.
//!
//! This crate implements the graph-theoretic calculus of subgroups of a free
//! group `F(X)`: free reduction of words, Stallings foldings, core graphs,
//! membership, the "appears in" relation, X-covering, and principal
//! overgroups. On top of that sits a toolkit for the free group of rank two:
//! the classification of cyclically reduced bases by the subtraction
//! Euclidean algorithm, enumeration of bases, and primitivity testing.
//!
//! The `verify` module ties everything together with exhaustive sweeps: it
//! checks, over all bases `{u, v}` of bounded length, that `<u²v²>` X-covers
//! `<u²v², uv>`, certifies that the extension is nevertheless free, and
//! checks the rank-3 example where the analogous cover fails.
//!
//! The crate is `no_std` (it only needs `alloc`); IO, file formats and the
//! command line live in the companion `stallings-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod f2;
pub mod graph;
pub mod subgroup;
pub mod verify;
pub mod words;

pub use graph::{CoreGraph, Morphism, RawGraph};
pub use subgroup::Subgroup;
pub use words::{Letter, Word};
