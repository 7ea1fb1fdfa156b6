use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// An immutable directed graph: a node set plus a set of ordered arcs.
///
/// Arcs have set semantics (no duplicates). Adjacency lists are sorted, so
/// iteration order is deterministic and arc membership is a binary search.
#[derive(Clone, Debug)]
pub struct DirectedGraph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    out: Vec<Vec<NodeId>>,
    inn: Vec<Vec<NodeId>>,
    arc_count: usize,
}

#[derive(Default)]
pub struct DirectedGraphBuilder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    arcs: Vec<(NodeId, NodeId)>,
}

impl DirectedGraphBuilder {
    /// Intern a node name, returning its id.
    pub fn node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = NodeId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn arc(&mut self, from: &str, to: &str) -> &mut Self {
        let u = self.node(from);
        let v = self.node(to);
        self.arc_ids(u, v)
    }

    pub fn arc_ids(&mut self, from: NodeId, to: NodeId) -> &mut Self {
        self.arcs.push((from, to));
        self
    }

    pub fn finish(self) -> DirectedGraph {
        let n = self.names.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut arcs = self.arcs;
        arcs.sort_unstable();
        arcs.dedup();
        let arc_count = arcs.len();
        for (u, v) in arcs {
            out[u.index()].push(v);
            inn[v.index()].push(u);
        }
        for l in inn.iter_mut() {
            l.sort_unstable();
        }
        DirectedGraph { names: self.names, index: self.index, out, inn, arc_count }
    }
}

impl DirectedGraph {
    pub fn builder() -> DirectedGraphBuilder {
        DirectedGraphBuilder::default()
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
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

    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.out[v.index()]
    }

    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.inn[v.index()]
    }

    pub fn has_arc(&self, from: NodeId, to: NodeId) -> bool {
        self.out[from.index()].binary_search(&to).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.node_ids().flat_map(move |u| self.out[u.index()].iter().map(move |&v| (u, v)))
    }

    /// Walk validity: every consecutive pair must be an arc.
    ///
    /// The walk must be nonempty; a single node is vacuously a walk.
    pub fn is_valid_walk(&self, walk: &[NodeId]) -> bool {
        debug_assert!(!walk.is_empty());
        walk.windows(2).all(|w| self.has_arc(w[0], w[1]))
    }

    /// Name-based walk validation; unknown names are an input error.
    pub fn validate_walk(&self, names: &[&str]) -> Result<bool> {
        let walk: Vec<NodeId> =
            names.iter().map(|n| self.require_node(n)).collect::<Result<_>>()?;
        if walk.is_empty() {
            return Err(Error::Precondition("walk must be nonempty".into()));
        }
        Ok(self.is_valid_walk(&walk))
    }

    /// Nodes with only incoming or only outgoing arcs. Isolated nodes count.
    pub fn tips(&self) -> Vec<NodeId> {
        self.node_ids()
            .filter(|&v| self.out[v.index()].is_empty() || self.inn[v.index()].is_empty())
            .collect()
    }

    /// Arc-reversed graph over the same node set.
    pub fn reverse(&self) -> DirectedGraph {
        let mut b = DirectedGraph::builder();
        for v in self.node_ids() {
            b.node(self.name(v));
        }
        for (u, v) in self.arcs() {
            b.arc_ids(v, u);
        }
        b.finish()
    }

    /// Subgraph induced by `nodes`: those nodes and every arc between them.
    /// Node names are preserved; ids are renumbered.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<DirectedGraph> {
        self.subgraph(nodes, None)
    }

    /// Induced subgraph minus one arc (used for bubble components, where the
    /// possible exit-to-entrance arc is excluded).
    pub(crate) fn subgraph(
        &self,
        nodes: &[NodeId],
        minus_arc: Option<(NodeId, NodeId)>,
    ) -> Result<DirectedGraph> {
        // Work proportional to the subgraph, not the host graph: component
        // extraction runs once per bubble.
        let mut b = DirectedGraph::builder();
        let mut keep = std::collections::HashSet::with_capacity(nodes.len());
        for &v in nodes {
            self.check_id(v)?;
            keep.insert(v);
        }
        let mut sorted: Vec<NodeId> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            b.node(self.name(v));
        }
        for &u in &sorted {
            for &v in self.out_neighbors(u) {
                if keep.contains(&v) && minus_arc != Some((u, v)) {
                    b.arc(self.name(u), self.name(v));
                }
            }
        }
        Ok(b.finish())
    }

    /// DFS cycle check, independent of any bubble machinery.
    pub fn is_acyclic(&self) -> bool {
        let n = self.node_count();
        let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
        let mut stack: Vec<(NodeId, usize)> = Vec::new();
        for s in self.node_ids() {
            if color[s.index()] != 0 {
                continue;
            }
            color[s.index()] = 1;
            stack.push((s, 0));
            while let Some(&(v, i)) = stack.last() {
                if i < self.out[v.index()].len() {
                    stack.last_mut().unwrap().1 += 1;
                    let w = self.out[v.index()][i];
                    match color[w.index()] {
                        0 => {
                            color[w.index()] = 1;
                            stack.push((w, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    color[v.index()] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Canonical (sorted-by-name) view used for equality and hashing-free
    /// comparison in tests.
    fn canonical(&self) -> (Vec<&str>, Vec<(&str, &str)>) {
        let mut names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        names.sort_unstable();
        let mut arcs: Vec<(&str, &str)> =
            self.arcs().map(|(u, v)| (self.name(u), self.name(v))).collect();
        arcs.sort_unstable();
        (names, arcs)
    }
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for DirectedGraph {}
