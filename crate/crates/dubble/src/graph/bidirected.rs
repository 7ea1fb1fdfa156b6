use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{canonical_edge, NodeId, Sign, SignedNode, SignedWalk};

/// An immutable bidirected graph: nodes plus unordered edges over signed
/// nodes. Edges are canonicalized ({x,y} = {y,x}) and deduplicated.
#[derive(Clone, Debug)]
pub struct BidirectedGraph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(SignedNode, SignedNode)>,
    edge_set: HashSet<(SignedNode, SignedNode)>,
    /// Walk successors per signed node, indexed by `2*node + sign`.
    /// `succ[x]` lists every `y` such that the step x, y is a valid walk step
    /// (the edge {x, opposite(y)} exists). This is exactly the out-adjacency
    /// of the doubled graph.
    succ: Vec<Vec<SignedNode>>,
    /// Number of edge endpoints at each signed node, same indexing.
    incidences: Vec<u32>,
}

#[derive(Default)]
pub struct BidirectedGraphBuilder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(SignedNode, SignedNode)>,
}

impl BidirectedGraphBuilder {
    pub fn node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = NodeId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn edge(&mut self, u: &str, su: Sign, v: &str, sv: Sign) -> &mut Self {
        let a = SignedNode::new(self.node(u), su);
        let b = SignedNode::new(self.node(v), sv);
        self.edge_signed(a, b)
    }

    pub fn edge_signed(&mut self, a: SignedNode, b: SignedNode) -> &mut Self {
        self.edges.push(canonical_edge(a, b));
        self
    }

    pub fn finish(self) -> BidirectedGraph {
        let n = self.names.len();
        let mut edges = self.edges;
        edges.sort_unstable();
        edges.dedup();
        let edge_set: HashSet<_> = edges.iter().copied().collect();
        let mut succ = vec![Vec::new(); 2 * n];
        let mut incidences = vec![0u32; 2 * n];
        for &(a, b) in &edges {
            // Leaving a over {a,b} arrives so that the next leaving sign is
            // opposite(b); symmetrically for b. A self-edge {x,x} yields the
            // single step x -> opposite(x): the walk v+, v- is valid exactly
            // when {v+, v+} is an edge, and v-, v+ needs {v-, v-}.
            succ[slot(a)].push(b.opposite());
            if a != b {
                succ[slot(b)].push(a.opposite());
            }
            incidences[slot(a)] += 1;
            if a != b {
                incidences[slot(b)] += 1;
            }
        }
        for l in succ.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        BidirectedGraph { names: self.names, index: self.index, edges, edge_set, succ, incidences }
    }
}

#[inline]
fn slot(s: SignedNode) -> usize {
    2 * s.node.index() + (s.sign == Sign::Minus) as usize
}

impl BidirectedGraph {
    pub fn builder() -> BidirectedGraphBuilder {
        BidirectedGraphBuilder::default()
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.names.len() as u32).map(NodeId)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.index()]
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn require_node(&self, name: &str) -> Result<NodeId> {
        self.node(name).ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub(crate) fn check_id(&self, v: NodeId) -> Result<NodeId> {
        if v.index() < self.names.len() {
            Ok(v)
        } else {
            Err(Error::UnknownNode(format!("#{}", v.0)))
        }
    }

    /// Canonicalized edges, sorted.
    pub fn edges(&self) -> &[(SignedNode, SignedNode)] {
        &self.edges
    }

    pub fn has_edge(&self, a: SignedNode, b: SignedNode) -> bool {
        self.edge_set.contains(&canonical_edge(a, b))
    }

    /// Signed nodes reachable from `s` in one walk step.
    pub fn walk_successors(&self, s: SignedNode) -> &[SignedNode] {
        &self.succ[slot(s)]
    }

    pub fn incidence_count(&self, s: SignedNode) -> u32 {
        self.incidences[slot(s)]
    }

    /// Walk validity under the sign-alternation rule: the step from x to y
    /// requires the edge {x, opposite(y)}.
    pub fn is_valid_walk(&self, walk: &[SignedNode]) -> bool {
        debug_assert!(!walk.is_empty());
        walk.windows(2).all(|w| self.has_edge(w[0], w[1].opposite()))
    }

    /// Name-based walk validation; unknown names are an input error.
    pub fn validate_walk(&self, steps: &[(&str, Sign)]) -> Result<bool> {
        let walk: Vec<SignedNode> = steps
            .iter()
            .map(|&(n, s)| Ok(SignedNode::new(self.require_node(n)?, s)))
            .collect::<Result<_>>()?;
        if walk.is_empty() {
            return Err(Error::Precondition("walk must be nonempty".into()));
        }
        Ok(self.is_valid_walk(&walk))
    }

    /// Nodes whose edges touch only one of their signed nodes. Isolated nodes
    /// count as tips.
    pub fn tips(&self) -> Vec<NodeId> {
        self.node_ids()
            .filter(|&v| {
                self.incidences[slot(SignedNode::new(v, Sign::Plus))] == 0
                    || self.incidences[slot(SignedNode::new(v, Sign::Minus))] == 0
            })
            .collect()
    }

    /// Finds some proper walk from one signed node of a node to a signed node
    /// of the same node (either sign), if any exists. The witness is
    /// arbitrary; only presence and validity are guaranteed.
    ///
    /// Existence is decided on the walk-successor relation (the doubled
    /// graph): any directed cycle there, or any route from a signed node to
    /// its opposite, is such a walk.
    pub fn find_cycloid(&self) -> Option<SignedWalk> {
        if let Some(cycle) = self.successor_cycle() {
            return Some(cycle);
        }
        // No cycle: look for a route vα -> vα̂.
        for v in self.node_ids() {
            for sign in [Sign::Plus, Sign::Minus] {
                let from = SignedNode::new(v, sign);
                if let Some(walk) = self.successor_route(from, from.opposite()) {
                    return Some(walk);
                }
            }
        }
        None
    }

    /// Some directed cycle in the walk-successor relation, as a closed walk.
    fn successor_cycle(&self) -> Option<SignedWalk> {
        let m = 2 * self.node_count();
        let mut color = vec![0u8; m];
        let mut parent: Vec<usize> = vec![usize::MAX; m];
        for start in 0..m {
            if color[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            color[start] = 1;
            while let Some(&(x, i)) = stack.last() {
                let succ = &self.succ[x];
                if i < succ.len() {
                    stack.last_mut().unwrap().1 += 1;
                    let y = slot(succ[i]);
                    match color[y] {
                        0 => {
                            color[y] = 1;
                            parent[y] = x;
                            stack.push((y, 0));
                        }
                        1 => {
                            // Back edge x -> y closes a cycle y .. x, y.
                            let mut walk = vec![self.unslot(x)];
                            let mut cur = x;
                            while cur != y {
                                cur = parent[cur];
                                walk.push(self.unslot(cur));
                            }
                            walk.reverse();
                            walk.push(self.unslot(y));
                            debug_assert!(self.is_valid_walk(&walk));
                            return Some(walk);
                        }
                        _ => {}
                    }
                } else {
                    color[x] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    fn successor_route(&self, from: SignedNode, to: SignedNode) -> Option<SignedWalk> {
        let m = 2 * self.node_count();
        let mut parent: Vec<usize> = vec![usize::MAX; m];
        let mut seen = vec![false; m];
        let mut queue = std::collections::VecDeque::new();
        seen[slot(from)] = true;
        queue.push_back(slot(from));
        while let Some(x) = queue.pop_front() {
            for &y in &self.succ[x] {
                let ys = slot(y);
                if !seen[ys] {
                    seen[ys] = true;
                    parent[ys] = x;
                    if y == to {
                        let mut walk = vec![to];
                        let mut cur = ys;
                        while parent[cur] != usize::MAX {
                            cur = parent[cur];
                            walk.push(self.unslot(cur));
                        }
                        walk.reverse();
                        debug_assert!(self.is_valid_walk(&walk));
                        return Some(walk);
                    }
                    queue.push_back(ys);
                }
            }
        }
        None
    }

    fn unslot(&self, s: usize) -> SignedNode {
        SignedNode::new(
            NodeId((s / 2) as u32),
            if s % 2 == 0 { Sign::Plus } else { Sign::Minus },
        )
    }

    /// Builds the subgraph with the given nodes and edge subset, preserving
    /// names.
    pub(crate) fn subgraph(
        &self,
        nodes: &[NodeId],
        edges: &[(SignedNode, SignedNode)],
    ) -> BidirectedGraph {
        let mut sorted: Vec<NodeId> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut b = BidirectedGraph::builder();
        for &v in &sorted {
            b.node(self.name(v));
        }
        for &(x, y) in edges {
            b.edge(self.name(x.node), x.sign, self.name(y.node), y.sign);
        }
        b.finish()
    }

    fn canonical(&self) -> (Vec<&str>, Vec<(&str, Sign, &str, Sign)>) {
        let mut names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        names.sort_unstable();
        let mut edges: Vec<(&str, Sign, &str, Sign)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let ea = (self.name(a.node), a.sign);
                let eb = (self.name(b.node), b.sign);
                if ea <= eb {
                    (ea.0, ea.1, eb.0, eb.1)
                } else {
                    (eb.0, eb.1, ea.0, ea.1)
                }
            })
            .collect();
        edges.sort_unstable();
        (names, edges)
    }
}

impl PartialEq for BidirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for BidirectedGraph {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Minus, Plus};

    #[test]
    fn sign_opposite_is_involution() {
        assert_eq!(Plus.opposite(), Minus);
        assert_eq!(Minus.opposite(), Plus);
        assert_eq!(Plus.opposite().opposite(), Plus);
    }

    #[test]
    fn walk_step_needs_matching_edge() {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        let g = b.finish();
        // The step 1+, 2- needs the edge {1+, 2+}, which is absent.
        assert!(!g.validate_walk(&[("1", Plus), ("2", Minus)]).unwrap());
        // The step 1+, 2+ needs {1+, 2-}, which is present.
        assert!(g.validate_walk(&[("1", Plus), ("2", Plus)]).unwrap());
        // Single-step walks are vacuously valid.
        assert!(g.validate_walk(&[("1", Plus)]).unwrap());
        assert!(matches!(g.validate_walk(&[("9", Plus)]), Err(Error::UnknownNode(_))));
    }

    #[test]
    fn unordered_edge_symmetry() {
        let mut b = BidirectedGraph::builder();
        b.edge("a", Plus, "b", Minus);
        let g = b.finish();
        let a = SignedNode::new(g.node("a").unwrap(), Plus);
        let bm = SignedNode::new(g.node("b").unwrap(), Minus);
        assert!(g.has_edge(a, bm));
        assert!(g.has_edge(bm, a));
    }

    #[test]
    fn tips_single_edge_and_isolated() {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        b.node("3");
        let g = b.finish();
        let tips: Vec<&str> = g.tips().into_iter().map(|v| g.name(v)).collect();
        assert_eq!(tips, ["1", "2", "3"]);
    }

    #[test]
    fn self_loop_walk_rule() {
        // {v+, v+} lets a walk go v+, v- but not v-, v+.
        let mut b = BidirectedGraph::builder();
        b.edge("v", Plus, "v", Plus);
        let g = b.finish();
        assert!(g.validate_walk(&[("v", Plus), ("v", Minus)]).unwrap());
        assert!(!g.validate_walk(&[("v", Minus), ("v", Plus)]).unwrap());
        // That valid two-step walk is a proper cycloid.
        let cycloid = g.find_cycloid().expect("self-loop forms a cycloid");
        assert!(g.is_valid_walk(&cycloid));
    }

    #[test]
    fn no_cycloid_in_single_edge() {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        assert!(b.finish().find_cycloid().is_none());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let mut b = BidirectedGraph::builder();
        b.edge("1", Plus, "2", Minus);
        b.edge("2", Minus, "1", Plus);
        assert_eq!(b.finish().edge_count(), 1);
    }
}
