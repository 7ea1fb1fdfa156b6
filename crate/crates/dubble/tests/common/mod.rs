//! Shared fixture graphs for the integration suites.
//!
//! The two hexagon fixtures are the same six-node shape as directed and
//! bidirected graphs: a forward spine 1-2-3-5-6 with a branch 1-4-6, an
//! optional arc/edge closing a cycle (resp. cycloid) through 2,3,5, and the
//! branch's second arc/edge as an optional detour whose removal strands
//! node 4.

use dubble::graph::{BidirectedGraph, DirectedGraph, NodeId, Sign, SignedNode, SignedWalk};
use dubble::io::{parse_bidirected_edge_list, parse_directed_edge_list};

pub fn sn(g: &BidirectedGraph, name: &str, sign: Sign) -> SignedNode {
    SignedNode::new(g.node(name).unwrap(), sign)
}

pub fn nid(g: &DirectedGraph, name: &str) -> NodeId {
    g.node(name).unwrap()
}

pub fn hex_digraph(cycle_arc: bool, detour_arc: bool) -> DirectedGraph {
    let mut text = String::from("1 2\n2 3\n3 5\n5 6\n1 4\n");
    if detour_arc {
        text.push_str("4 6\n");
    }
    if cycle_arc {
        text.push_str("5 2\n");
    }
    parse_directed_edge_list(&text).unwrap()
}

pub fn hex_bigraph(cycloid_edge: bool, detour_edge: bool) -> BidirectedGraph {
    let mut text = String::from("1 + 2 -\n2 + 3 -\n3 + 5 -\n5 + 6 -\n1 + 4 -\n");
    if detour_edge {
        text.push_str("4 + 6 -\n");
    }
    if cycloid_edge {
        text.push_str("5 + 2 +\n");
    }
    parse_bidirected_edge_list(&text).unwrap()
}

pub fn diamond_digraph(back_arc: bool) -> DirectedGraph {
    let mut text = String::from("1 2\n1 3\n2 4\n3 4\n");
    if back_arc {
        text.push_str("4 1\n");
    }
    parse_directed_edge_list(&text).unwrap()
}

/// Bidirected diamond with a return edge, the counterpart of the directed
/// diamond with a back arc.
pub fn diamond_bigraph() -> BidirectedGraph {
    parse_bidirected_edge_list("1 + 2 -\n1 + 3 -\n2 + 4 -\n3 + 4 -\n4 + 1 -\n").unwrap()
}

/// Chain 1-2-4-5-6 with a 1-3-6 bypass; (2,5) has component {2,4,5} but is
/// not minimal.
pub fn bypass_chain_digraph() -> DirectedGraph {
    parse_directed_edge_list("1 2\n2 4\n4 5\n5 6\n1 3\n3 6\n").unwrap()
}

pub fn bypass_chain_bigraph() -> BidirectedGraph {
    parse_bidirected_edge_list("1 + 2 -\n2 + 4 -\n4 + 5 -\n5 + 6 -\n1 + 3 -\n3 + 6 -\n").unwrap()
}

/// Five-node graph carrying a walk that changes direction twice, with a
/// directed self-loop on 2, a ++ self-loop on 3 and a -- self-loop on 4.
/// Its edge set is exactly the set of edges the walk below traverses.
pub fn walk_loop_bigraph() -> BidirectedGraph {
    parse_bidirected_edge_list(
        "1 + 2 -\n2 + 2 -\n2 + 3 +\n3 - 4 +\n4 - 4 -\n4 + 3 -\n3 + 3 +\n4 - 5 -\n",
    )
    .unwrap()
}

/// The direction-changing walk of `walk_loop_bigraph`.
pub fn walk_loop_walk(g: &BidirectedGraph) -> SignedWalk {
    [
        ("1", Sign::Plus),
        ("2", Sign::Plus),
        ("2", Sign::Plus),
        ("3", Sign::Minus),
        ("4", Sign::Minus),
        ("4", Sign::Plus),
        ("3", Sign::Plus),
        ("3", Sign::Minus),
        ("4", Sign::Minus),
        ("5", Sign::Plus),
    ]
    .iter()
    .map(|&(n, s)| sn(g, n, s))
    .collect()
}

/// Sorted (name, name) arc list for structural comparisons.
pub fn arcs_by_name(g: &DirectedGraph) -> Vec<(String, String)> {
    let mut arcs: Vec<(String, String)> = g
        .arcs()
        .map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
        .collect();
    arcs.sort();
    arcs
}

/// Sorted node name list.
pub fn names_of(g: &DirectedGraph) -> Vec<String> {
    let mut names: Vec<String> = g.node_ids().map(|v| g.name(v).to_string()).collect();
    names.sort();
    names
}

/// Sorted canonical (name, sign, name, sign) edge list.
pub fn edges_by_name(g: &BidirectedGraph) -> Vec<(String, Sign, String, Sign)> {
    let mut edges: Vec<(String, Sign, String, Sign)> = g
        .edges()
        .iter()
        .map(|&(x, y)| {
            let a = (g.name(x.node).to_string(), x.sign);
            let b = (g.name(y.node).to_string(), y.sign);
            if a <= b {
                (a.0, a.1, b.0, b.1)
            } else {
                (b.0, b.1, a.0, a.1)
            }
        })
        .collect();
    edges.sort();
    edges
}

pub fn binames_of(g: &BidirectedGraph) -> Vec<String> {
    let mut names: Vec<String> = g.node_ids().map(|v| g.name(v).to_string()).collect();
    names.sort();
    names
}

/// Directed reachability helper for fixture claims.
pub fn reaches(g: &DirectedGraph, from: &str, to: &str) -> bool {
    let (from, to) = (nid(g, from), nid(g, to));
    let mut seen = vec![false; g.node_count()];
    let mut queue = vec![from];
    seen[from.index()] = true;
    while let Some(v) = queue.pop() {
        if v == to {
            return true;
        }
        for &w in g.out_neighbors(v) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                queue.push(w);
            }
        }
    }
    false
}
