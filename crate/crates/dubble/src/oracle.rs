//! Exhaustive reference enumerations and deterministic instance generators.
//!
//! The oracles apply the pair checkers to every candidate pair and refuse
//! inputs beyond a small node bound: they exist to be trusted, not fast.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, DirectedGraph, NodeId, Sign, SignedNode, SignedWalk};
use crate::superbubbles::{is_weak_superbubble, WeakSuperbubble};
use crate::ultrabubbles::{is_ultrabubble, Ultrabubble};

/// Default node bound for the exhaustive oracles.
pub const DEFAULT_ORACLE_NODE_BOUND: usize = 12;

fn check_bound(n: usize, bound: Option<usize>, what: &str) -> Result<()> {
    let bound = bound.unwrap_or(DEFAULT_ORACLE_NODE_BOUND);
    if n > bound {
        return Err(Error::OracleBound(format!(
            "{what} oracle is limited to {bound} nodes, got {n}"
        )));
    }
    Ok(())
}

/// Every ultrabubble, found by checking all signed pairs over all node pairs.
pub fn oracle_enumerate_ultrabubbles(
    g: &BidirectedGraph,
    bound: Option<usize>,
) -> Result<Vec<Ultrabubble>> {
    check_bound(g.node_count(), bound, "ultrabubble")?;
    let mut out = Vec::new();
    let n = g.node_count() as u32;
    for u in 0..n {
        for v in (u + 1)..n {
            for su in [Sign::Plus, Sign::Minus] {
                for sv in [Sign::Plus, Sign::Minus] {
                    let a = SignedNode::new(NodeId(u), su);
                    let b = SignedNode::new(NodeId(v), sv);
                    if let Some(bubble) = is_ultrabubble(g, a, b)? {
                        out.push(bubble);
                    }
                }
            }
        }
    }
    sort_ultrabubbles(g, &mut out);
    Ok(out)
}

/// Every weak superbubble, found by checking all ordered node pairs.
pub fn oracle_enumerate_weak_superbubbles(
    g: &DirectedGraph,
    bound: Option<usize>,
) -> Result<Vec<WeakSuperbubble>> {
    check_bound(g.node_count(), bound, "weak superbubble")?;
    let mut out = Vec::new();
    for u in g.node_ids() {
        for v in g.node_ids() {
            if u == v {
                continue;
            }
            if let Some(b) = is_weak_superbubble(g, u, v)? {
                out.push(b);
            }
        }
    }
    out.sort_by(|a, b| {
        (g.name(a.entrance), g.name(a.exit)).cmp(&(g.name(b.entrance), g.name(b.exit)))
    });
    Ok(out)
}

/// Canonical report order: by (name, sign) of both boundary signed nodes.
pub fn sort_ultrabubbles(g: &BidirectedGraph, list: &mut [Ultrabubble]) {
    list.sort_by(|x, y| {
        let k = |u: &Ultrabubble| {
            (
                g.name(u.boundary.0.node),
                u.boundary.0.sign,
                g.name(u.boundary.1.node),
                u.boundary.1.sign,
            )
        };
        k(x).cmp(&k(y))
    });
}

/// All simple signed paths (walks repeating no node) from `from` to `to`,
/// with an explicit failure once more than `cap` exist.
pub fn enumerate_simple_signed_paths(
    g: &BidirectedGraph,
    from: SignedNode,
    to: SignedNode,
    cap: usize,
) -> Result<Vec<SignedWalk>> {
    g.check_id(from.node)?;
    g.check_id(to.node)?;
    if from == to {
        return Ok(vec![vec![from]]);
    }
    if from.node == to.node {
        // A longer walk would repeat the node; no path can exist.
        return Ok(Vec::new());
    }
    let mut visited = vec![false; g.node_count()];
    visited[from.node.index()] = true;
    let mut path = vec![from];
    let mut out: Vec<SignedWalk> = Vec::new();
    // Iterative backtracking over walk successors.
    let mut stack: Vec<(SignedNode, usize)> = vec![(from, 0)];
    while let Some(&(cur, i)) = stack.last() {
        let succ = g.walk_successors(cur);
        if i >= succ.len() {
            stack.pop();
            path.pop();
            visited[cur.node.index()] = false;
            continue;
        }
        stack.last_mut().unwrap().1 += 1;
        let next = succ[i];
        if next == to {
            if out.len() == cap {
                return Err(Error::PathCapExceeded { cap });
            }
            let mut p = path.clone();
            p.push(to);
            out.push(p);
        } else if next.node != to.node && !visited[next.node.index()] {
            visited[next.node.index()] = true;
            path.push(next);
            stack.push((next, 0));
        }
    }
    Ok(out)
}

/// Instance families for the seeded generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// Uniformly sampled distinct edges over signed node pairs.
    UniformRandom,
    /// k concatenated diamonds with a known ultrabubble per diamond.
    BubbleChain,
    /// Random base plus a directed triangle, guaranteeing a cycloid.
    CycloidInjected,
    /// Random base plus a cycle with an odd number of non-directed edges.
    Unorientable,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 4] = [
        GraphFamily::UniformRandom,
        GraphFamily::BubbleChain,
        GraphFamily::CycloidInjected,
        GraphFamily::Unorientable,
    ];
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphFamily::UniformRandom => "uniform-random",
            GraphFamily::BubbleChain => "bubble-chain",
            GraphFamily::CycloidInjected => "cycloid-injected",
            GraphFamily::Unorientable => "unorientable",
        };
        f.write_str(s)
    }
}

impl FromStr for GraphFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<GraphFamily> {
        match s {
            "uniform-random" => Ok(GraphFamily::UniformRandom),
            "bubble-chain" => Ok(GraphFamily::BubbleChain),
            "cycloid-injected" => Ok(GraphFamily::CycloidInjected),
            "unorientable" => Ok(GraphFamily::Unorientable),
            other => Err(Error::InfeasibleConfig(format!("unknown family `{other}`"))),
        }
    }
}

/// Fully determines a generated graph: the same config always yields the
/// same edge list.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub node_count: usize,
    pub edge_count: usize,
    pub family: GraphFamily,
}

/// A generated graph, with the known ultrabubble boundaries when the family
/// defines them.
#[derive(Clone, Debug)]
pub struct GeneratedGraph {
    pub graph: BidirectedGraph,
    pub ground_truth: Option<Vec<(SignedNode, SignedNode)>>,
}

pub fn generate(cfg: &GeneratorConfig) -> Result<GeneratedGraph> {
    match cfg.family {
        GraphFamily::UniformRandom => uniform_random(cfg, 0),
        GraphFamily::BubbleChain => bubble_chain(cfg),
        GraphFamily::CycloidInjected => with_injected_cycle(cfg, false),
        GraphFamily::Unorientable => with_injected_cycle(cfg, true),
    }
}

fn node_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn uniform_random(cfg: &GeneratorConfig, reserve: usize) -> Result<GeneratedGraph> {
    let n = cfg.node_count;
    let m = cfg.edge_count.saturating_sub(reserve);
    let max_edges = n * (2 * n + 1); // unordered signed pairs incl. loops
    if m > max_edges {
        return Err(Error::InfeasibleConfig(format!(
            "{m} distinct edges requested but only {max_edges} exist over {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let names = node_names(n);
    let mut b = BidirectedGraph::builder();
    for name in &names {
        b.node(name);
    }
    let mut placed = std::collections::HashSet::new();
    let mut attempts = 0usize;
    while placed.len() < m {
        attempts += 1;
        if attempts > 1000 + 200 * m {
            return Err(Error::InfeasibleConfig(
                "edge density too close to saturation for rejection sampling".into(),
            ));
        }
        let x = SignedNode::new(NodeId(rng.gen_range(0..n as u32)), random_sign(&mut rng));
        let y = SignedNode::new(NodeId(rng.gen_range(0..n as u32)), random_sign(&mut rng));
        let e = crate::graph::canonical_edge(x, y);
        if placed.insert(e) {
            b.edge_signed(e.0, e.1);
        }
    }
    Ok(GeneratedGraph { graph: b.finish(), ground_truth: None })
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// k diamonds sharing their junction nodes; the i-th diamond spans nodes
/// 3i+1 .. 3i+4 and is the ultrabubble {(3i+1)+, (3i+4)-}.
fn bubble_chain(cfg: &GeneratorConfig) -> Result<GeneratedGraph> {
    let n = cfg.node_count;
    if n < 4 || n % 3 != 1 {
        return Err(Error::InfeasibleConfig(format!(
            "bubble-chain needs 3k+1 nodes for some k >= 1, got {n}"
        )));
    }
    let k = (n - 1) / 3;
    if cfg.edge_count != 0 && cfg.edge_count != 4 * k {
        return Err(Error::InfeasibleConfig(format!(
            "bubble-chain over {n} nodes has exactly {} edges",
            4 * k
        )));
    }
    let names = node_names(n);
    let mut b = BidirectedGraph::builder();
    for name in &names {
        b.node(name);
    }
    let mut truth = Vec::with_capacity(k);
    for i in 0..k {
        let base = 3 * i;
        let entry = NodeId(base as u32);
        let left = NodeId(base as u32 + 1);
        let right = NodeId(base as u32 + 2);
        let exit = NodeId(base as u32 + 3);
        for mid in [left, right] {
            b.edge(&names[entry.index()], Sign::Plus, &names[mid.index()], Sign::Minus);
            b.edge(&names[mid.index()], Sign::Plus, &names[exit.index()], Sign::Minus);
        }
        truth.push((
            SignedNode::new(entry, Sign::Plus),
            SignedNode::new(exit, Sign::Minus),
        ));
    }
    Ok(GeneratedGraph { graph: b.finish(), ground_truth: Some(truth) })
}

/// Random base plus an injected three-node cycle. With `odd_nondirected`
/// one edge of the cycle is non-directed, so the underlying cycle carries an
/// odd number of non-directed edges and no orientation of the graph exists.
fn with_injected_cycle(cfg: &GeneratorConfig, odd_nondirected: bool) -> Result<GeneratedGraph> {
    let n = cfg.node_count;
    if n < 3 {
        return Err(Error::InfeasibleConfig(format!(
            "{} needs at least 3 nodes, got {n}",
            cfg.family
        )));
    }
    let base = uniform_random(cfg, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_c1c1_0u64);
    let mut picks: Vec<u32> = Vec::new();
    while picks.len() < 3 {
        let c = rng.gen_range(0..n as u32);
        if !picks.contains(&c) {
            picks.push(c);
        }
    }
    let (x, y, z) = (NodeId(picks[0]), NodeId(picks[1]), NodeId(picks[2]));
    let mut b = BidirectedGraph::builder();
    let g = &base.graph;
    for v in g.node_ids() {
        b.node(g.name(v));
    }
    for &(p, q) in g.edges() {
        b.edge_signed(p, q);
    }
    b.edge_signed(SignedNode::new(x, Sign::Plus), SignedNode::new(y, Sign::Minus));
    b.edge_signed(SignedNode::new(y, Sign::Plus), SignedNode::new(z, Sign::Minus));
    let closing_sign = if odd_nondirected { Sign::Plus } else { Sign::Minus };
    b.edge_signed(SignedNode::new(z, Sign::Plus), SignedNode::new(x, closing_sign));
    Ok(GeneratedGraph { graph: b.finish(), ground_truth: None })
}

/// Seeded helper for tests and the differential CLI: deterministic random
/// directed graphs.
pub fn random_digraph(seed: u64, max_nodes: usize, max_arcs: usize) -> DirectedGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(0..=max_nodes);
    let mut b = DirectedGraph::builder();
    for i in 1..=n {
        b.node(&i.to_string());
    }
    if n > 0 {
        let m = rng.gen_range(0..=max_arcs);
        for _ in 0..m {
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            b.arc_ids(NodeId(u), NodeId(v));
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Minus, Plus};
    use crate::io::emit_bidirected_edge_list;

    fn sn(g: &BidirectedGraph, name: &str, sign: Sign) -> SignedNode {
        SignedNode::new(g.node(name).unwrap(), sign)
    }

    fn bypass_chain() -> BidirectedGraph {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        b.edge("2", Plus, "4", Minus);
        b.edge("4", Plus, "5", Minus);
        b.edge("5", Plus, "6", Minus);
        b.edge("1", Plus, "3", Minus);
        b.edge("3", Plus, "6", Minus);
        b.finish()
    }

    #[test]
    fn single_edge_has_one_path() {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        let g = b.finish();
        let paths =
            enumerate_simple_signed_paths(&g, sn(&g, "1", Plus), sn(&g, "2", Plus), 10).unwrap();
        assert_eq!(paths, vec![vec![sn(&g, "1", Plus), sn(&g, "2", Plus)]]);
    }

    #[test]
    fn bypass_chain_has_one_path_through_the_middle() {
        let g = bypass_chain();
        let paths =
            enumerate_simple_signed_paths(&g, sn(&g, "2", Plus), sn(&g, "5", Plus), 10).unwrap();
        assert_eq!(
            paths,
            vec![vec![sn(&g, "2", Plus), sn(&g, "4", Plus), sn(&g, "5", Plus)]]
        );
    }

    #[test]
    fn diamond_has_two_paths() {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        b.edge("1", Plus, "3", Minus);
        b.edge("2", Plus, "4", Minus);
        b.edge("3", Plus, "4", Minus);
        let g = b.finish();
        let paths =
            enumerate_simple_signed_paths(&g, sn(&g, "1", Plus), sn(&g, "4", Plus), 10).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(matches!(
            enumerate_simple_signed_paths(&g, sn(&g, "1", Plus), sn(&g, "4", Plus), 1),
            Err(Error::PathCapExceeded { cap: 1 })
        ));
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = GeneratorConfig {
            seed: 7,
            node_count: 9,
            edge_count: 13,
            family: GraphFamily::UniformRandom,
        };
        let a = emit_bidirected_edge_list(&generate(&cfg).unwrap().graph);
        let b = emit_bidirected_edge_list(&generate(&cfg).unwrap().graph);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn empty_config_yields_empty_graph() {
        let cfg = GeneratorConfig {
            seed: 0,
            node_count: 0,
            edge_count: 0,
            family: GraphFamily::UniformRandom,
        };
        let g = generate(&cfg).unwrap().graph;
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn single_diamond_chain_has_known_answer() {
        let cfg = GeneratorConfig {
            seed: 0,
            node_count: 4,
            edge_count: 0,
            family: GraphFamily::BubbleChain,
        };
        let generated = generate(&cfg).unwrap();
        let g = &generated.graph;
        let truth = generated.ground_truth.unwrap();
        assert_eq!(truth, vec![(sn(g, "1", Plus), sn(g, "4", Minus))]);
        let found = oracle_enumerate_ultrabubbles(g, None).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].boundary, (sn(g, "1", Plus), sn(g, "4", Minus)));
    }

    #[test]
    fn infeasible_configs_are_rejected() {
        for (n, m, family) in [
            (5, 0, GraphFamily::BubbleChain),
            (2, 3, GraphFamily::CycloidInjected),
            (1, 9, GraphFamily::UniformRandom),
        ] {
            let cfg = GeneratorConfig { seed: 0, node_count: n, edge_count: m, family };
            assert!(matches!(generate(&cfg), Err(Error::InfeasibleConfig(_))), "{family}");
        }
    }

    #[test]
    fn unorientable_family_cannot_be_sign_oriented() {
        // The injected cycle has exactly one non-directed edge, which always
        // leaves a cycloid that is not a plain cycle somewhere.
        let cfg = GeneratorConfig {
            seed: 3,
            node_count: 5,
            edge_count: 3,
            family: GraphFamily::Unorientable,
        };
        let g = generate(&cfg).unwrap().graph;
        let nondirected = g
            .edges()
            .iter()
            .filter(|&&(x, y)| x.sign == y.sign)
            .count();
        assert!(nondirected >= 1);
    }

    #[test]
    fn oracle_refuses_oversized_inputs() {
        let cfg = GeneratorConfig {
            seed: 1,
            node_count: 13,
            edge_count: 5,
            family: GraphFamily::UniformRandom,
        };
        let g = generate(&cfg).unwrap().graph;
        assert!(matches!(
            oracle_enumerate_ultrabubbles(&g, None),
            Err(Error::OracleBound(_))
        ));
        assert!(oracle_enumerate_ultrabubbles(&g, Some(13)).is_ok());
    }

    #[test]
    fn empty_graph_has_no_bubbles() {
        let g = BidirectedGraph::builder().finish();
        assert!(oracle_enumerate_ultrabubbles(&g, None).unwrap().is_empty());
        let d = crate::graph::DirectedGraph::builder().finish();
        assert!(oracle_enumerate_weak_superbubbles(&d, None).unwrap().is_empty());
    }
}
