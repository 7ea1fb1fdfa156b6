//! Weak superbubble machinery on directed graphs.
//!
//! A weak superbubble (u, v) is an acyclic subgraph that can be entered only
//! at u and left only at v, with the back arc (v, u) additionally permitted.
//! Three checkers implement the three equivalent formulations (component
//! based, candidate-set based, and candidate-set based with the set pinned to
//! reachability closures); they exist to verify each other and the
//! enumerators, not for speed.

mod enumerate;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};

/// An ordered entrance/exit pair together with its component: the subgraph of
/// all nodes and arcs on entrance-exit paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakSuperbubble {
    pub entrance: NodeId,
    pub exit: NodeId,
    pub component: DirectedGraph,
}

/// The two reachability closures a candidate component is pinned to in the
/// set-pinned formulation: nodes reachable from the entrance without passing
/// through the exit, and nodes reaching the exit without passing through the
/// entrance ("passing through" means as an internal node; the avoided node
/// may still be an endpoint).
#[derive(Clone, Debug)]
pub struct ReachabilityContext {
    pub from_entrance_avoiding_exit: Vec<bool>,
    pub to_exit_avoiding_entrance: Vec<bool>,
}

impl ReachabilityContext {
    pub fn compute(g: &DirectedGraph, entrance: NodeId, exit: NodeId) -> ReachabilityContext {
        ReachabilityContext {
            from_entrance_avoiding_exit: reach_avoiding(g, entrance, exit, false),
            to_exit_avoiding_entrance: reach_avoiding(g, exit, entrance, true),
        }
    }
}

/// BFS reach set from `start`, never expanding `avoid` (it may still be
/// reached as an endpoint). `reverse` walks arcs backwards.
fn reach_avoiding(g: &DirectedGraph, start: NodeId, avoid: NodeId, reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut queue = vec![start];
    seen[start.index()] = true;
    while let Some(v) = queue.pop() {
        if v == avoid && v != start {
            continue;
        }
        let next = if reverse { g.in_neighbors(v) } else { g.out_neighbors(v) };
        for &w in next {
            if !seen[w.index()] {
                seen[w.index()] = true;
                queue.push(w);
            }
        }
    }
    seen
}

/// Plain reach set (no avoided node).
fn reach(g: &DirectedGraph, start: NodeId, reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut queue = vec![start];
    seen[start.index()] = true;
    while let Some(v) = queue.pop() {
        let next = if reverse { g.in_neighbors(v) } else { g.out_neighbors(v) };
        for &w in next {
            if !seen[w.index()] {
                seen[w.index()] = true;
                queue.push(w);
            }
        }
    }
    seen
}

/// Reach set from every node outside `inside`, in the graph with `removed`
/// deleted. Used for the "every path into/out of the set passes the
/// boundary" conditions.
fn reach_outside_avoiding(
    g: &DirectedGraph,
    inside: &[bool],
    removed: NodeId,
    reverse: bool,
) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut queue = Vec::new();
    for v in g.node_ids() {
        if !inside[v.index()] && v != removed {
            seen[v.index()] = true;
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        let next = if reverse { g.in_neighbors(v) } else { g.out_neighbors(v) };
        for &w in next {
            if w != removed && !seen[w.index()] {
                seen[w.index()] = true;
                queue.push(w);
            }
        }
    }
    seen
}

/// Whether some y-x route exists with `removed` deleted from the graph.
fn reaches_avoiding_node(g: &DirectedGraph, from: NodeId, to: NodeId, removed: NodeId) -> bool {
    if from == removed || to == removed {
        return false;
    }
    let mut seen = vec![false; g.node_count()];
    let mut queue = vec![from];
    seen[from.index()] = true;
    while let Some(v) = queue.pop() {
        if v == to {
            return true;
        }
        for &w in g.out_neighbors(v) {
            if w != removed && !seen[w.index()] {
                seen[w.index()] = true;
                queue.push(w);
            }
        }
    }
    false
}

fn validate_pair(g: &DirectedGraph, u: NodeId, v: NodeId) -> Result<()> {
    g.check_id(u)?;
    g.check_id(v)?;
    if u == v {
        return Err(Error::InvalidPair(format!(
            "entrance and exit must be distinct, both are `{}`",
            g.name(u)
        )));
    }
    Ok(())
}

/// Node set of the candidate component of (u, v): the intersection of the two
/// reachability closures, plus u and v themselves.
fn component_nodes(g: &DirectedGraph, u: NodeId, v: NodeId) -> Vec<NodeId> {
    let ctx = ReachabilityContext::compute(g, u, v);
    let mut nodes: Vec<NodeId> = g
        .node_ids()
        .filter(|&x| {
            ctx.from_entrance_avoiding_exit[x.index()] && ctx.to_exit_avoiding_entrance[x.index()]
        })
        .collect();
    if !nodes.contains(&u) {
        nodes.push(u);
    }
    if !nodes.contains(&v) {
        nodes.push(v);
    }
    nodes.sort_unstable();
    nodes
}

/// The subgraph of nodes and arcs on u-v paths.
///
/// Computed as the reachability-closure intersection with induced arcs minus
/// (v, u). On cyclic graphs this can over-approximate the literal
/// simple-path semantics for pairs that are not weak superbubbles; the two
/// constructions coincide exactly on every pair the checkers accept, which is
/// the only case a component is reported. Small-instance equality against a
/// simple-path enumeration is exercised in tests.
pub fn weak_superbubble_component(
    g: &DirectedGraph,
    u: NodeId,
    v: NodeId,
) -> Result<DirectedGraph> {
    validate_pair(g, u, v)?;
    let nodes = component_nodes(g, u, v);
    g.subgraph(&nodes, Some((v, u)))
}

/// Reachability, separability and acyclicity for (u, v): everything except
/// minimality. Returns the component node set on success.
fn bubble_core(g: &DirectedGraph, u: NodeId, v: NodeId) -> Option<Vec<NodeId>> {
    let ctx = ReachabilityContext::compute(g, u, v);
    // At least one u-v path must exist; the degenerate pair with an empty
    // component is vacuously separable but is not a bubble.
    if !ctx.from_entrance_avoiding_exit[v.index()] {
        return None;
    }
    let mut inside = vec![false; g.node_count()];
    let mut nodes = Vec::new();
    for x in g.node_ids() {
        if (ctx.from_entrance_avoiding_exit[x.index()] && ctx.to_exit_avoiding_entrance[x.index()])
            || x == u
            || x == v
        {
            inside[x.index()] = true;
            nodes.push(x);
        }
    }
    // Separability: an arc outside the component may touch it only as an
    // incoming arc at u or an outgoing arc at v. The back arc (v, u) is
    // exactly the one outside arc satisfying both.
    for (x, y) in g.arcs() {
        let in_component = inside[x.index()] && inside[y.index()] && (x, y) != (v, u) && x != y;
        if in_component {
            continue;
        }
        if inside[x.index()] && x != v {
            return None;
        }
        if inside[y.index()] && y != u {
            return None;
        }
    }
    // Acyclicity of the component: the induced subgraph minus exactly the
    // back arc (v, u). A self loop inside would have failed separability
    // above.
    if !acyclic_within(g, &inside, (v, u)) {
        return None;
    }
    Some(nodes)
}

/// Kahn-style acyclicity check of the subgraph induced by `inside` with one
/// arc removed.
fn acyclic_within(g: &DirectedGraph, inside: &[bool], minus_arc: (NodeId, NodeId)) -> bool {
    let nodes: Vec<NodeId> = g.node_ids().filter(|v| inside[v.index()]).collect();
    let mut indeg = vec![0u32; g.node_count()];
    for &x in &nodes {
        for &y in g.out_neighbors(x) {
            if inside[y.index()] && (x, y) != minus_arc {
                indeg[y.index()] += 1;
            }
        }
    }
    let mut queue: Vec<NodeId> = nodes.iter().copied().filter(|v| indeg[v.index()] == 0).collect();
    let mut popped = 0usize;
    while let Some(x) = queue.pop() {
        popped += 1;
        for &y in g.out_neighbors(x) {
            if inside[y.index()] && (x, y) != minus_arc {
                indeg[y.index()] -= 1;
                if indeg[y.index()] == 0 {
                    queue.push(y);
                }
            }
        }
    }
    popped == nodes.len()
}

/// The component-based weak superbubble checker. Returns the bubble with its
/// component on success.
pub fn is_weak_superbubble(
    g: &DirectedGraph,
    u: NodeId,
    v: NodeId,
) -> Result<Option<WeakSuperbubble>> {
    validate_pair(g, u, v)?;
    let Some(nodes) = bubble_core(g, u, v) else {
        return Ok(None);
    };
    // Minimality: no interior node splits (u, v) into two parts that each
    // pass reachability, separability and acyclicity on their own.
    for &w in &nodes {
        if w == u || w == v {
            continue;
        }
        if bubble_core(g, u, w).is_some() && bubble_core(g, w, v).is_some() {
            return Ok(None);
        }
    }
    let component = g.subgraph(&nodes, Some((v, u)))?;
    Ok(Some(WeakSuperbubble { entrance: u, exit: v, component }))
}

/// Strict superbubble: a weak superbubble without the back arc (v, u).
/// Exposed for verification; enumeration is weak-only.
pub fn is_superbubble(g: &DirectedGraph, u: NodeId, v: NodeId) -> Result<bool> {
    Ok(is_weak_superbubble(g, u, v)?.is_some() && !g.has_arc(v, u))
}

/// Conditions (a)-(f) shared by the two candidate-set formulations.
///
/// `avoiding` selects the stronger reachability conditions (every set node is
/// reachable from u without passing through v and reaches v without passing
/// through u) versus the plain ones.
fn set_conditions(
    g: &DirectedGraph,
    u: NodeId,
    v: NodeId,
    in_set: &[bool],
    avoiding: bool,
    check_minimality: bool,
) -> bool {
    // (a)/(b) reachability of every set member.
    let fwd = if avoiding { reach_avoiding(g, u, v, false) } else { reach(g, u, false) };
    let bwd = if avoiding { reach_avoiding(g, v, u, true) } else { reach(g, v, true) };
    for x in g.node_ids() {
        if in_set[x.index()] && (!fwd[x.index()] || !bwd[x.index()]) {
            return false;
        }
    }
    // (c) every path from outside into the set passes u: with u deleted,
    // nothing outside may reach a non-u set node.
    let from_outside = reach_outside_avoiding(g, in_set, u, false);
    for x in g.node_ids() {
        if in_set[x.index()] && x != u && from_outside[x.index()] {
            return false;
        }
    }
    // (d) symmetric: every path from the set out passes v.
    let to_outside = reach_outside_avoiding(g, in_set, v, true);
    for x in g.node_ids() {
        if in_set[x.index()] && x != v && to_outside[x.index()] {
            return false;
        }
    }
    // (e) for every arc (x, y) inside the set, every y-x path contains both
    // u and v. A path starting or ending at the avoided node contains it.
    for (x, y) in g.arcs() {
        if !in_set[x.index()] || !in_set[y.index()] {
            continue;
        }
        if x == y {
            // The trivial y-x path is the single node, which misses u or v.
            return false;
        }
        if x != u && y != u && reaches_avoiding_node(g, y, x, u) {
            return false;
        }
        if x != v && y != v && reaches_avoiding_node(g, y, x, v) {
            return false;
        }
    }
    // (f) minimality over the canonical candidate set for each interior node.
    if check_minimality {
        for w in g.node_ids() {
            if !in_set[w.index()] || w == u || w == v {
                continue;
            }
            if let Some(sub) = canonical_candidate_set(g, u, w) {
                if set_conditions(g, u, w, &sub, avoiding, false) {
                    return false;
                }
            }
        }
    }
    true
}

/// The unique candidate set the definitions admit for a pair: the closure
/// reachable from the entrance avoiding the exit, which must coincide with
/// the closure reaching the exit avoiding the entrance.
fn canonical_candidate_set(g: &DirectedGraph, u: NodeId, v: NodeId) -> Option<Vec<bool>> {
    let ctx = ReachabilityContext::compute(g, u, v);
    if ctx.from_entrance_avoiding_exit == ctx.to_exit_avoiding_entrance {
        Some(ctx.from_entrance_avoiding_exit)
    } else {
        None
    }
}

fn set_to_flags(g: &DirectedGraph, set: &[NodeId]) -> Result<Vec<bool>> {
    let mut flags = vec![false; g.node_count()];
    for &x in set {
        g.check_id(x)?;
        flags[x.index()] = true;
    }
    Ok(flags)
}

/// Candidate-set checker with the set pinned to the reachability closures
/// (the set must equal both closures of `ReachabilityContext`), and plain
/// reachability in conditions (a)/(b).
pub fn is_weak_superbubble_set_pinned(
    g: &DirectedGraph,
    u: NodeId,
    v: NodeId,
    set: &[NodeId],
) -> Result<bool> {
    validate_pair(g, u, v)?;
    let flags = set_to_flags(g, set)?;
    if !flags[u.index()] || !flags[v.index()] {
        return Ok(false);
    }
    let ctx = ReachabilityContext::compute(g, u, v);
    if flags != ctx.from_entrance_avoiding_exit || flags != ctx.to_exit_avoiding_entrance {
        return Ok(false);
    }
    Ok(set_conditions(g, u, v, &flags, false, true))
}

/// Candidate-set checker without the pinning constraint; conditions (a)/(b)
/// use the avoiding form of reachability.
pub fn is_weak_superbubble_set_based(
    g: &DirectedGraph,
    u: NodeId,
    v: NodeId,
    set: &[NodeId],
) -> Result<bool> {
    validate_pair(g, u, v)?;
    let flags = set_to_flags(g, set)?;
    if !flags[u.index()] || !flags[v.index()] {
        return Ok(false);
    }
    Ok(set_conditions(g, u, v, &flags, true, true))
}

/// For an accepted set-based weak superbubble, checks with an independent
/// DFS that the induced subgraph minus the back arc is acyclic. Must always
/// return true; exists as a verification hook.
pub fn check_component_acyclicity(
    g: &DirectedGraph,
    u: NodeId,
    v: NodeId,
    set: &[NodeId],
) -> Result<bool> {
    if !is_weak_superbubble_set_based(g, u, v, set)? {
        return Err(Error::Precondition(format!(
            "({}, {}) is not a weak superbubble with the given set",
            g.name(u),
            g.name(v)
        )));
    }
    let sub = g.subgraph(set, Some((v, u)))?;
    Ok(sub.is_acyclic())
}

/// Per-entrance bubble search: grows the candidate component from `s` in
/// topological fashion and either collapses onto the unique exit or detects a
/// violation. A collapse at t proves (s, t) is a weak superbubble; every weak
/// superbubble entrance collapses onto its exit.
pub(crate) struct EntranceSearch {
    epoch: u32,
    seen_at: Vec<u32>,
    visited_at: Vec<u32>,
    remaining: Vec<u32>,
    ready: Vec<NodeId>,
    trail: Vec<NodeId>,
}

impl EntranceSearch {
    pub(crate) fn new(n: usize) -> EntranceSearch {
        EntranceSearch {
            epoch: 0,
            seen_at: vec![0; n],
            visited_at: vec![0; n],
            remaining: vec![0; n],
            ready: Vec::new(),
            trail: Vec::new(),
        }
    }

    pub(crate) fn run(&mut self, g: &DirectedGraph, s: NodeId) -> Option<(NodeId, Vec<NodeId>)> {
        if g.out_neighbors(s).is_empty() {
            return None;
        }
        self.epoch += 1;
        let e = self.epoch;
        self.ready.clear();
        self.trail.clear();
        self.seen_at[s.index()] = e;
        self.ready.push(s);
        self.trail.push(s);
        let mut visited = 0usize;
        loop {
            if self.ready.len() == 1 && self.trail.len() == visited + 1 {
                let t = self.ready[0];
                if t != s {
                    let mut nodes = self.trail.clone();
                    nodes.sort_unstable();
                    return Some((t, nodes));
                }
            }
            let v = self.ready.pop()?;
            self.visited_at[v.index()] = e;
            visited += 1;
            let out = g.out_neighbors(v);
            if out.is_empty() {
                return None; // interior dead end
            }
            for &c in out {
                if c == s {
                    return None; // arc into the entrance from a non-exit
                }
                if self.visited_at[c.index()] == e {
                    return None; // self-loop on v
                }
                if self.seen_at[c.index()] != e {
                    self.seen_at[c.index()] = e;
                    self.trail.push(c);
                    self.remaining[c.index()] = g.in_neighbors(c).len() as u32;
                }
                self.remaining[c.index()] -= 1;
                if self.remaining[c.index()] == 0 {
                    self.ready.push(c);
                }
            }
        }
    }
}

/// Enumerates every weak superbubble, deterministically sorted by
/// (entrance name, exit name).
///
/// Strategy: strongly connected components partition the graph (a bubble
/// never crosses a component boundary except through the trivial part);
/// the acyclic part is swept in linear time over a reverse-postorder
/// topological order, cyclic components use the per-entrance search gated by
/// a cheap entrance-candidate filter. Worst case is linear in the acyclic
/// part plus O(n_C * (n_C + m_C)) per cyclic component.
pub fn enumerate_weak_superbubbles(g: &DirectedGraph) -> Vec<WeakSuperbubble> {
    let pairs = enumerate::enumerate_pairs(g);
    finish_bubbles(g, pairs)
}

/// Reference enumerator: runs the per-entrance search from every node of the
/// whole graph and confirms each find with the component-based checker.
/// O(n(m+n)); kept for differential testing against the partitioned
/// enumerator.
pub fn enumerate_weak_superbubbles_quadratic(g: &DirectedGraph) -> Vec<WeakSuperbubble> {
    let mut search = EntranceSearch::new(g.node_count());
    let mut out = Vec::new();
    for s in g.node_ids() {
        if let Some((t, _)) = search.run(g, s) {
            let confirmed = is_weak_superbubble(g, s, t)
                .expect("search returned valid ids")
                .expect("search result must satisfy the checker");
            out.push(confirmed);
        }
    }
    sort_bubbles(g, &mut out);
    out
}

fn finish_bubbles(
    g: &DirectedGraph,
    pairs: Vec<(NodeId, NodeId, Vec<NodeId>)>,
) -> Vec<WeakSuperbubble> {
    let mut out = Vec::with_capacity(pairs.len());
    for (s, t, nodes) in pairs {
        let component = g
            .subgraph(&nodes, Some((t, s)))
            .expect("enumerated component nodes are valid");
        out.push(WeakSuperbubble { entrance: s, exit: t, component });
    }
    sort_bubbles(g, &mut out);
    out
}

fn sort_bubbles(g: &DirectedGraph, list: &mut [WeakSuperbubble]) {
    list.sort_by(|a, b| {
        (g.name(a.entrance), g.name(a.exit)).cmp(&(g.name(b.entrance), g.name(b.exit)))
    });
}
