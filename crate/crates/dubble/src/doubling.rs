//! The doubling operation: a bidirected graph becomes a directed graph over
//! its signed nodes, preserving walks exactly.

use crate::graph::{BidirectedGraph, DirectedGraph, NodeId, Sign, SignedNode, SignedWalk};

/// A directed graph produced by doubling, plus the index arithmetic needed to
/// translate results back to the source graph.
///
/// Node `v` of the source becomes nodes `v+` and `v-` (named by appending the
/// sign character); each edge {uα, vβ} becomes the arcs (uα, vβ̂) and
/// (vβ, uα̂). Parallel arcs produced by self-loops collapse (set semantics).
#[derive(Clone, Debug)]
pub struct DoubledGraph {
    pub graph: DirectedGraph,
    origin_nodes: usize,
}

impl DoubledGraph {
    /// Doubled-graph node for a signed node of the source graph.
    #[inline]
    pub fn node_of(&self, s: SignedNode) -> NodeId {
        debug_assert!(s.node.index() < self.origin_nodes);
        NodeId(2 * s.node.0 + (s.sign == Sign::Minus) as u32)
    }

    /// Source signed node for a doubled-graph node.
    #[inline]
    pub fn signed_of(&self, v: NodeId) -> SignedNode {
        SignedNode::new(
            NodeId(v.0 / 2),
            if v.0 % 2 == 0 { Sign::Plus } else { Sign::Minus },
        )
    }

    pub fn origin_node_count(&self) -> usize {
        self.origin_nodes
    }
}

/// Doubles a bidirected graph in O(n + m).
pub fn double(g: &BidirectedGraph) -> DoubledGraph {
    let mut b = DirectedGraph::builder();
    for v in g.node_ids() {
        b.node(&format!("{}{}", g.name(v), Sign::Plus));
        b.node(&format!("{}{}", g.name(v), Sign::Minus));
    }
    let id = |s: SignedNode| NodeId(2 * s.node.0 + (s.sign == Sign::Minus) as u32);
    for &(x, y) in g.edges() {
        b.arc_ids(id(x), id(y.opposite()));
        b.arc_ids(id(y), id(x.opposite()));
    }
    DoubledGraph { graph: b.finish(), origin_nodes: g.node_count() }
}

/// Checks that a signed sequence is a walk of `g` exactly when it is a walk
/// of the doubled graph. Always true when `d` was produced from `g`; a false
/// return signals a defect and is only meaningful in tests.
pub fn check_walk_correspondence(g: &BidirectedGraph, d: &DoubledGraph, walk: &SignedWalk) -> bool {
    debug_assert!(!walk.is_empty());
    let as_doubled: Vec<NodeId> = walk.iter().map(|&s| d.node_of(s)).collect();
    g.is_valid_walk(walk) == d.graph.is_valid_walk(&as_doubled)
}
