//! Partitioned weak superbubble enumeration.
//!
//! A weak superbubble, component included, never straddles the partition
//! into cyclic strongly connected components and the remaining acyclic part:
//! any cycle touching a component forces an exit-to-entrance route, which
//! pulls entrance and exit into one SCC. Each part is processed against an
//! auxiliary view where arcs crossing the part boundary are replaced by
//! virtual entrance/exit markers, so separability violations from outside
//! the part stay visible.

use crate::graph::{DirectedGraph, NodeId};

/// Entrance, exit, and sorted component node set.
pub(crate) type RawBubble = (NodeId, NodeId, Vec<NodeId>);

pub(crate) fn enumerate_pairs(g: &DirectedGraph) -> Vec<RawBubble> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let (comp, comp_count) = strongly_connected_components(g);
    let mut comp_size = vec![0u32; comp_count];
    let mut comp_cyclic = vec![false; comp_count];
    for v in g.node_ids() {
        comp_size[comp[v.index()] as usize] += 1;
        if g.has_arc(v, v) {
            comp_cyclic[comp[v.index()] as usize] = true;
        }
    }
    for c in 0..comp_count {
        if comp_size[c] >= 2 {
            comp_cyclic[c] = true;
        }
    }

    let mut results = Vec::new();

    let in_acyclic_part: Vec<bool> =
        g.node_ids().map(|v| !comp_cyclic[comp[v.index()] as usize]).collect();
    let acyclic_nodes: Vec<NodeId> =
        g.node_ids().filter(|v| in_acyclic_part[v.index()]).collect();
    if !acyclic_nodes.is_empty() {
        dag_part(g, &acyclic_nodes, &in_acyclic_part, &mut results);
    }

    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); comp_count];
    for v in g.node_ids() {
        let c = comp[v.index()] as usize;
        if comp_cyclic[c] {
            members[c].push(v);
        }
    }
    for nodes in members.into_iter().filter(|m| !m.is_empty()) {
        cyclic_part(g, &nodes, &mut results);
    }

    results
}

/// Iterative Tarjan. Returns per-node component ids and the component count.
pub(crate) fn strongly_connected_components(g: &DirectedGraph) -> (Vec<u32>, usize) {
    let n = g.node_count();
    const UNSET: u32 = u32::MAX;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut next = 0u32;
    let mut count = 0usize;

    for root in 0..n as u32 {
        if disc[root as usize] != UNSET {
            continue;
        }
        disc[root as usize] = next;
        low[root as usize] = next;
        next += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        call.push((root, 0));
        while let Some(&(v, i)) = call.last() {
            let vout = g.out_neighbors(NodeId(v));
            if i < vout.len() {
                call.last_mut().unwrap().1 += 1;
                let w = vout[i].0;
                if disc[w as usize] == UNSET {
                    disc[w as usize] = next;
                    low[w as usize] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                }
                if low[v as usize] == disc[v as usize] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = count as u32;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

/// Linear sweep over the acyclic part.
///
/// The part is wrapped with a virtual source (feeding every node that is
/// entered from outside the part or has no in-arcs) and a virtual sink
/// (draining every node that leaves the part or has no out-arcs). In the
/// reverse postorder of a DFS from the source, every weak superbubble
/// component is a contiguous position interval [entrance..exit]; a pair is a
/// bubble exactly when all children of the entrance and of the interval's
/// interior stay within the interval, all parents of the exit and of the
/// interior stay within it, and the entrance was not matched earlier
/// (minimality). One stack pass with per-position parent-minimum and
/// child-maximum decides all of that in O(n + m).
fn dag_part(
    g: &DirectedGraph,
    part: &[NodeId],
    in_part: &[bool],
    results: &mut Vec<RawBubble>,
) {
    let n_local = part.len() + 2;
    let source = 0usize;
    let sink = n_local - 1;
    let mut local = vec![usize::MAX; g.node_count()];
    for (i, &v) in part.iter().enumerate() {
        local[v.index()] = i + 1;
    }

    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n_local];
    for (i, &v) in part.iter().enumerate() {
        let li = i + 1;
        let ins = g.in_neighbors(v);
        if ins.is_empty() || ins.iter().any(|p| !in_part[p.index()]) {
            out[source].push(li);
        }
        let outs = g.out_neighbors(v);
        let mut leaves = outs.is_empty();
        for &w in outs {
            if in_part[w.index()] {
                out[li].push(local[w.index()]);
            } else {
                leaves = true;
            }
        }
        if leaves {
            out[li].push(sink);
        }
    }
    for l in out.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }

    // Reverse postorder from the source; covers the whole part because every
    // in-arc chain inside an acyclic part ends at a source-fed node.
    let mut order = Vec::with_capacity(n_local);
    {
        let mut state = vec![0u8; n_local];
        let mut stack: Vec<(usize, usize)> = vec![(source, 0)];
        state[source] = 1;
        while let Some(&(v, i)) = stack.last() {
            if i < out[v].len() {
                stack.last_mut().unwrap().1 += 1;
                let w = out[v][i];
                if state[w] == 0 {
                    state[w] = 1;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
        order.reverse();
        debug_assert_eq!(order.len(), n_local);
        debug_assert_eq!(order[0], source);
        debug_assert_eq!(order[n_local - 1], sink);
    }
    let mut pos = vec![0usize; n_local];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }

    let mut pmin = vec![usize::MAX; n_local];
    let mut cmax = vec![0usize; n_local];
    for v in 0..n_local {
        for &w in &out[v] {
            let (pv, pw) = (pos[v], pos[w]);
            cmax[pv] = cmax[pv].max(pw);
            pmin[pw] = pmin[pw].min(pv);
        }
    }

    struct Entry {
        pos: usize,
        own_cmax: usize,
        pending_cmax: usize,
    }
    let fold = |stack: &mut Vec<Entry>| {
        let e = stack.pop().unwrap();
        if let Some(t) = stack.last_mut() {
            t.pending_cmax = t.pending_cmax.max(e.pending_cmax).max(e.own_cmax);
        }
    };

    let mut stack: Vec<Entry> = Vec::with_capacity(n_local);
    stack.push(Entry { pos: 0, own_cmax: cmax[0], pending_cmax: 0 });
    for j in 1..n_local {
        // Positions whose candidacy an incoming arc from before them ruins.
        let limit = pmin[j];
        while stack.last().map_or(false, |t| t.pos > limit) {
            fold(&mut stack);
        }
        if let Some(top) = stack.last() {
            if top.own_cmax <= j && top.pending_cmax <= j {
                let (pi, pj) = (top.pos, j);
                if pi != 0 && pj != n_local - 1 {
                    let s = part[order[pi] - 1];
                    let t = part[order[pj] - 1];
                    let nodes: Vec<NodeId> = {
                        let mut u: Vec<NodeId> =
                            (pi..=pj).map(|p| part[order[p] - 1]).collect();
                        u.sort_unstable();
                        u
                    };
                    results.push((s, t, nodes));
                }
                fold(&mut stack);
            }
        }
        stack.push(Entry { pos: j, own_cmax: cmax[j], pending_cmax: 0 });
    }
}

/// Per-entrance search inside one cyclic strongly connected component.
///
/// Arcs crossing the component boundary disqualify their inside endpoint
/// from being anything but a boundary of a bubble, which the search encodes
/// as immediate aborts. Entrances are filtered: a real entrance always has a
/// child whose only in-arc comes from it.
fn cyclic_part(g: &DirectedGraph, nodes: &[NodeId], results: &mut Vec<RawBubble>) {
    let k = nodes.len();
    let mut local = vec![usize::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v.index()] = i;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indeg = vec![0u32; k];
    let mut ext_in = vec![false; k];
    let mut ext_out = vec![false; k];
    for (i, &v) in nodes.iter().enumerate() {
        for &w in g.out_neighbors(v) {
            match local[w.index()] {
                usize::MAX => ext_out[i] = true,
                wl => out[i].push(wl),
            }
        }
        for &p in g.in_neighbors(v) {
            if local[p.index()] == usize::MAX {
                ext_in[i] = true;
            } else {
                indeg[i] += 1;
            }
        }
    }
    for l in out.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }

    let mut epoch = 0u32;
    let mut seen_at = vec![0u32; k];
    let mut visited_at = vec![0u32; k];
    let mut remaining = vec![0u32; k];
    let mut ready: Vec<usize> = Vec::new();
    let mut trail: Vec<usize> = Vec::new();

    'entrances: for s in 0..k {
        // Candidate filter: some child must have this node as its only
        // in-neighbor and no external in-arcs.
        let is_candidate = out[s]
            .iter()
            .any(|&c| c != s && !ext_in[c] && indeg[c] == 1);
        if !is_candidate || ext_out[s] {
            continue;
        }
        epoch += 1;
        ready.clear();
        trail.clear();
        seen_at[s] = epoch;
        ready.push(s);
        trail.push(s);
        let mut visited = 0usize;
        loop {
            if ready.len() == 1 && trail.len() == visited + 1 {
                let t = ready[0];
                if t != s {
                    let mut u: Vec<NodeId> = trail.iter().map(|&l| nodes[l]).collect();
                    u.sort_unstable();
                    results.push((nodes[s], nodes[t], u));
                    continue 'entrances;
                }
            }
            let Some(v) = ready.pop() else {
                continue 'entrances; // deadlock: cycle or unreachable parent
            };
            visited_at[v] = epoch;
            visited += 1;
            if ext_out[v] || out[v].is_empty() {
                continue 'entrances; // interior may not leave the part or dead-end
            }
            for &c in &out[v] {
                if c == s || visited_at[c] == epoch || ext_in[c] {
                    continue 'entrances;
                }
                if seen_at[c] != epoch {
                    seen_at[c] = epoch;
                    trail.push(c);
                    remaining[c] = indeg[c];
                }
                remaining[c] -= 1;
                if remaining[c] == 0 {
                    ready.push(c);
                }
            }
        }
    }
}
