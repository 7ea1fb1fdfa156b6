//! Ultrabubble enumeration in bidirected graphs via graph doubling.
//!
//! A bidirected graph is doubled into a directed graph over its signed
//! nodes; weak superbubbles of the doubled graph, after filtering degenerate
//! pairs and deduplicating mirrors, are exactly the ultrabubbles of the
//! source graph. Every definition involved ships as an executable checker so
//! the reduction can be verified against brute-force oracles.
//!
//! Module map:
//! - [`graph`]: signed nodes, directed and bidirected graphs, walks, tips,
//!   cycloids.
//! - [`doubling`]: the doubling operation and its walk correspondence.
//! - [`superbubbles`]: weak superbubble checkers and enumerators.
//! - [`ultrabubbles`]: splitting, ultrabubble checkers and components.
//! - [`reduction`]: the doubling pipeline producing a [`reduction::ReductionReport`].
//! - [`oracle`]: exhaustive reference enumerations and seeded generators.
//! - [`io`]: edge-list and GFA-subset formats, report emitters.
//! - [`bench`]: the scaling benchmark runner.

pub mod bench;
pub mod doubling;
mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod superbubbles;
pub mod ultrabubbles;

pub use error::{Error, Result};
pub use graph::{BidirectedGraph, DirectedGraph, NodeId, Sign, SignedNode, SignedWalk};
