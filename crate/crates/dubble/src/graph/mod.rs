//! Directed and bidirected graphs over interned string node names.
//!
//! Node identifiers are opaque strings externally and dense `u32` indices
//! internally. Graphs are immutable once built; construction goes through a
//! builder that interns names and deduplicates arcs/edges.

mod bidirected;
mod directed;

pub use bidirected::{BidirectedGraph, BidirectedGraphBuilder};
pub use directed::{DirectedGraph, DirectedGraphBuilder};

use std::fmt;

/// One of the two signs an incidence can carry.
///
/// The derived order (`Plus < Minus`) is the canonical sign order used for
/// deterministic output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The opposite sign; an involution.
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Dense node index, valid only for the graph that issued it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A node together with a sign: the unit of incidence in bidirected graphs
/// and the vertex of the doubled graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedNode {
    pub node: NodeId,
    pub sign: Sign,
}

impl SignedNode {
    pub fn new(node: NodeId, sign: Sign) -> SignedNode {
        SignedNode { node, sign }
    }

    /// Same node, opposite sign.
    pub fn opposite(self) -> SignedNode {
        SignedNode { node: self.node, sign: self.sign.opposite() }
    }
}

/// A sequence of signed nodes. Each element carries the sign with which the
/// walk leaves the node (the final node as well, by convention).
pub type SignedWalk = Vec<SignedNode>;

/// Canonical form of an unordered edge endpoint pair.
#[inline]
pub(crate) fn canonical_edge(a: SignedNode, b: SignedNode) -> (SignedNode, SignedNode) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
