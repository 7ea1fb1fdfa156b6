//! The main pipeline: double the bidirected graph, enumerate weak
//! superbubbles there, filter degenerate and mirror pairs, and translate the
//! survivors back to ultrabubbles.

use std::collections::HashSet;

use crate::doubling::{double, DoubledGraph};
use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, NodeId, SignedNode};
use crate::oracle::sort_ultrabubbles;
use crate::superbubbles::enumerate_weak_superbubbles;
use crate::ultrabubbles::Ultrabubble;
#[cfg(debug_assertions)]
use crate::ultrabubbles::ultrabubble_component;

/// Outcome of one reduction run. Every ultrabubble accounts for exactly one
/// mirror pair of weak superbubbles, so
/// `raw_superbubble_count == 2 * ultrabubbles.len() + filtered_self_pairs`
/// always holds; a violation is reported as an internal error instead of a
/// report.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub ultrabubbles: Vec<Ultrabubble>,
    pub raw_superbubble_count: usize,
    pub filtered_self_pairs: usize,
    pub filtered_mirror_pairs: usize,
}

/// Maps a weak superbubble (uα, w) of the doubled graph to the boundary
/// {uα, vβ} of the ultrabubble it witnesses, where w = vβ̂. Degenerate pairs
/// of the form (vα, vα̂) yield `None` and are filtered by the caller.
pub fn translate_pair(
    d: &DoubledGraph,
    entrance: NodeId,
    exit: NodeId,
) -> Option<(SignedNode, SignedNode)> {
    let a = d.signed_of(entrance);
    let b = d.signed_of(exit).opposite();
    if a == b {
        return None;
    }
    Some((a, b))
}

/// Checks the count identity the mirror-pairing theorem guarantees.
pub fn mirror_counts_consistent(raw: usize, kept: usize, self_filtered: usize) -> bool {
    raw == 2 * kept + self_filtered
}

/// Enumerates all ultrabubbles of `g` by reduction through the doubled
/// graph. Linear in the doubled graph except inside cyclic strongly
/// connected components (see the weak superbubble enumerator).
pub fn enumerate_ultrabubbles(g: &BidirectedGraph) -> Result<ReductionReport> {
    let d = double(g);
    let raw = enumerate_weak_superbubbles(&d.graph);
    let raw_count = raw.len();
    let raw_pairs: HashSet<(NodeId, NodeId)> =
        raw.iter().map(|w| (w.entrance, w.exit)).collect();

    let mut filtered_self_pairs = 0usize;
    let mut filtered_mirror_pairs = 0usize;
    let mut ultrabubbles = Vec::new();

    for ws in &raw {
        let Some((a, b)) = translate_pair(&d, ws.entrance, ws.exit) else {
            filtered_self_pairs += 1;
            continue;
        };
        // One representative per mirror pair: keep the run whose entrance is
        // the smaller boundary signed node under (name, sign) order.
        let keep = (g.name(a.node), a.sign) < (g.name(b.node), b.sign);
        if !keep {
            filtered_mirror_pairs += 1;
            continue;
        }
        // The theorem promises the mirrored run (vβ, uα̂) is also a weak
        // superbubble; its absence means the enumerator broke.
        let mirror = (d.node_of(b), d.node_of(a.opposite()));
        if !raw_pairs.contains(&mirror) {
            return Err(Error::Internal(format!(
                "mirror weak superbubble ({}, {}) missing for ({}, {})",
                d.graph.name(mirror.0),
                d.graph.name(mirror.1),
                d.graph.name(ws.entrance),
                d.graph.name(ws.exit),
            )));
        }
        // Translate the component arc-by-arc through the doubling rules.
        let mut nodes: Vec<NodeId> = ws
            .component
            .node_ids()
            .map(|v| {
                let id = d
                    .graph
                    .node(ws.component.name(v))
                    .expect("component nodes come from the doubled graph");
                d.signed_of(id).node
            })
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut edges: Vec<(SignedNode, SignedNode)> = ws
            .component
            .arcs()
            .map(|(x, y)| {
                let sx = d.signed_of(d.graph.node(ws.component.name(x)).unwrap());
                let sy = d.signed_of(d.graph.node(ws.component.name(y)).unwrap());
                crate::graph::canonical_edge(sx, sy.opposite())
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let component = g.subgraph(&nodes, &edges);
        #[cfg(debug_assertions)]
        if g.node_count() <= 48 {
            debug_assert_eq!(
                component,
                ultrabubble_component(g, a, b)?,
                "translated component must match the path-defined one"
            );
        }
        ultrabubbles.push(Ultrabubble::new(g, a, b, component));
    }

    if !mirror_counts_consistent(raw_count, ultrabubbles.len(), filtered_self_pairs) {
        return Err(Error::Internal(format!(
            "mirror pairing broke: raw={raw_count} kept={} self_filtered={filtered_self_pairs}",
            ultrabubbles.len()
        )));
    }
    sort_ultrabubbles(g, &mut ultrabubbles);
    Ok(ReductionReport {
        ultrabubbles,
        raw_superbubble_count: raw_count,
        filtered_self_pairs,
        filtered_mirror_pairs,
    })
}
