//! Text formats: plain edge lists for bidirected and directed graphs, a GFA
//! subset reader, and the bubble report emitters. Emission is canonical, so
//! identical inputs always produce byte-identical output.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, DirectedGraph, Sign, SignedNode};
use crate::reduction::ReductionReport;
use crate::superbubbles::WeakSuperbubble;

/// Node names allowed in the text formats. The clone suffix `'` used by the
/// splitting operation is deliberately not in the set.
fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_sign(tok: &str, line: usize) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(parse_err(line, format!("expected `+` or `-`, got `{other}`"))),
    }
}

fn check_name(tok: &str, line: usize) -> Result<&str> {
    if valid_name(tok) {
        Ok(tok)
    } else {
        Err(parse_err(line, format!("invalid node name `{tok}`")))
    }
}

/// Parses lines of `u SIGN v SIGN` into a bidirected graph. `#` starts a
/// comment, blank lines are skipped, and `N name` declares an isolated node.
pub fn parse_bidirected_edge_list(text: &str) -> Result<BidirectedGraph> {
    let mut b = BidirectedGraph::builder();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok.as_slice() {
            ["N", name] => {
                b.node(check_name(name, line_no)?);
            }
            [u, su, v, sv] => {
                let u = check_name(u, line_no)?;
                let v = check_name(v, line_no)?;
                let su = parse_sign(su, line_no)?;
                let sv = parse_sign(sv, line_no)?;
                b.edge(u, su, v, sv);
            }
            _ => return Err(parse_err(line_no, format!("expected `u SIGN v SIGN`, got `{line}`"))),
        }
    }
    Ok(b.finish())
}

/// Canonical bidirected edge list; `parse(emit(g)) == g`.
pub fn emit_bidirected_edge_list(g: &BidirectedGraph) -> String {
    let mut lines: Vec<String> = Vec::new();
    let mut touched = vec![false; g.node_count()];
    for &(x, y) in g.edges() {
        touched[x.node.index()] = true;
        touched[y.node.index()] = true;
    }
    let mut isolated: Vec<&str> = g
        .node_ids()
        .filter(|v| !touched[v.index()])
        .map(|v| g.name(v))
        .collect();
    isolated.sort_unstable();
    for name in isolated {
        lines.push(format!("N {name}"));
    }
    let mut edges: Vec<(&str, Sign, &str, Sign)> = g
        .edges()
        .iter()
        .map(|&(x, y)| {
            let ex = (g.name(x.node), x.sign);
            let ey = (g.name(y.node), y.sign);
            if ex <= ey {
                (ex.0, ex.1, ey.0, ey.1)
            } else {
                (ey.0, ey.1, ex.0, ex.1)
            }
        })
        .collect();
    edges.sort_unstable();
    for (u, su, v, sv) in edges {
        lines.push(format!("{u} {su} {v} {sv}"));
    }
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

/// Parses lines of `u v` (one arc each) into a directed graph; same comment
/// and `N name` conventions as the bidirected format.
pub fn parse_directed_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut b = DirectedGraph::builder();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok.as_slice() {
            ["N", name] => {
                b.node(check_name(name, line_no)?);
            }
            [u, v] => {
                b.arc(check_name(u, line_no)?, check_name(v, line_no)?);
            }
            _ => return Err(parse_err(line_no, format!("expected `u v`, got `{line}`"))),
        }
    }
    Ok(b.finish())
}

/// Canonical directed edge list. Node names of doubled graphs contain the
/// sign character, so names here are not validated against the input
/// charset.
pub fn emit_directed_edge_list(g: &DirectedGraph) -> String {
    let mut lines: Vec<String> = Vec::new();
    let mut touched = vec![false; g.node_count()];
    for (u, v) in g.arcs() {
        touched[u.index()] = true;
        touched[v.index()] = true;
    }
    let mut isolated: Vec<&str> =
        g.node_ids().filter(|v| !touched[v.index()]).map(|v| g.name(v)).collect();
    isolated.sort_unstable();
    for name in isolated {
        lines.push(format!("N {name}"));
    }
    let mut arcs: Vec<(&str, &str)> = g.arcs().map(|(u, v)| (g.name(u), g.name(v))).collect();
    arcs.sort_unstable();
    for (u, v) in arcs {
        lines.push(format!("{u} {v}"));
    }
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

/// Parses the `S`/`L` subset of GFA. A link `a o1 b o2` becomes the edge
/// {a σ1, b σ̂2}, the unique mapping under which traversing a then b with the
/// stated orientations is a valid signed walk:
///
/// `L a + b +` -> {a+, b-}    `L a + b -` -> {a+, b+}
/// `L a - b +` -> {a-, b-}    `L a - b -` -> {a-, b+}
///
/// Records other than `S` and `L` are ignored with a warning.
pub fn parse_gfa(text: &str) -> Result<(BidirectedGraph, Vec<String>)> {
    let mut b = BidirectedGraph::builder();
    let mut declared: std::collections::HashSet<String> = Default::default();
    let mut warned: std::collections::HashSet<String> = Default::default();
    let mut warnings = Vec::new();
    let mut links: Vec<(usize, String, Sign, String, Sign)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches(['\r', '\n']);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "S" => {
                let name = fields
                    .get(1)
                    .ok_or_else(|| parse_err(line_no, "segment record without a name"))?;
                let name = check_name(name, line_no)?;
                declared.insert(name.to_string());
                b.node(name);
            }
            "L" => {
                if fields.len() < 5 {
                    return Err(parse_err(line_no, "link record needs `L a o1 b o2`"));
                }
                let a = check_name(fields[1], line_no)?;
                let o1 = parse_sign(fields[2], line_no)?;
                let c = check_name(fields[3], line_no)?;
                let o2 = parse_sign(fields[4], line_no)?;
                links.push((line_no, a.to_string(), o1, c.to_string(), o2));
            }
            other => {
                if warned.insert(other.to_string()) {
                    warnings.push(format!(
                        "line {line_no}: ignoring `{other}` records (only S and L are read)"
                    ));
                }
            }
        }
    }
    for (line_no, a, o1, c, o2) in links {
        for seg in [&a, &c] {
            if !declared.contains(seg) {
                return Err(parse_err(line_no, format!("link references undeclared segment `{seg}`")));
            }
        }
        b.edge(&a, o1, &c, o2.opposite());
    }
    Ok((b.finish(), warnings))
}

fn signed_name(g: &BidirectedGraph, s: SignedNode) -> (String, Sign) {
    (g.name(s.node).to_string(), s.sign)
}

/// One line per bubble, `u SIGN v SIGN`, in the report's canonical order.
/// With components, each line is followed by an indented edge list; with
/// stats, a trailing counter comment is appended.
pub fn emit_ultrabubbles(
    g: &BidirectedGraph,
    report: &ReductionReport,
    components: bool,
    stats: bool,
) -> String {
    let mut out = String::new();
    for u in &report.ultrabubbles {
        let (an, asign) = signed_name(g, u.boundary.0);
        let (bn, bsign) = signed_name(g, u.boundary.1);
        let _ = writeln!(out, "{an} {asign} {bn} {bsign}");
        if components {
            for line in emit_bidirected_edge_list(&u.component).lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    if stats {
        let _ = writeln!(
            out,
            "# raw={} self_filtered={} mirror_filtered={}",
            report.raw_superbubble_count, report.filtered_self_pairs, report.filtered_mirror_pairs
        );
    }
    out
}

/// One line per bubble, `entrance exit`, sorted; optionally with indented
/// component arc lists.
pub fn emit_weak_superbubbles(
    g: &DirectedGraph,
    list: &[WeakSuperbubble],
    components: bool,
) -> String {
    let mut out = String::new();
    for w in list {
        let _ = writeln!(out, "{} {}", g.name(w.entrance), g.name(w.exit));
        if components {
            for line in emit_directed_edge_list(&w.component).lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doubling::double;
    use crate::graph::Sign::{Minus, Plus};
    use crate::graph::SignedNode;
    use crate::reduction::enumerate_ultrabubbles;

    fn sn(g: &BidirectedGraph, name: &str, sign: Sign) -> SignedNode {
        SignedNode::new(g.node(name).unwrap(), sign)
    }

    #[test]
    fn parse_single_edge() {
        let g = parse_bidirected_edge_list("1 + 2 -\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert!(g.has_edge(sn(&g, "1", Plus), sn(&g, "2", Minus)));
    }

    #[test]
    fn parsed_plus_plus_edge_doubles_to_the_arc_pair() {
        let g = parse_bidirected_edge_list("a + b +\n").unwrap();
        let d = double(&g);
        let n = |s: &str| d.graph.node(s).unwrap();
        assert!(d.graph.has_arc(n("a+"), n("b-")));
        assert!(d.graph.has_arc(n("b+"), n("a-")));
        assert_eq!(d.graph.arc_count(), 2);
    }

    #[test]
    fn duplicate_lines_collapse() {
        let g = parse_bidirected_edge_list("1 + 2 -\n2 - 1 +\n1 + 2 -\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn comments_blanks_and_isolated_nodes() {
        let g = parse_bidirected_edge_list("# header\n\nN x\n1 + 2 -\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert!(g.node("x").is_some());
    }

    #[test]
    fn malformed_lines_report_their_number() {
        for (text, line) in [
            ("1 + 2\n", 1),
            ("1 + 2 -\n1 * 2 -\n", 2),
            ("ok' + 2 -\n", 1),
            ("1 + 2 - extra\n", 1),
        ] {
            match parse_bidirected_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn bidirected_roundtrip() {
        let text = "N q\n1 + 2 -\n2 + 3 +\n3 - 3 -\n";
        let g = parse_bidirected_edge_list(text).unwrap();
        let emitted = emit_bidirected_edge_list(&g);
        let back = parse_bidirected_edge_list(&emitted).unwrap();
        assert_eq!(g, back);
        assert_eq!(emitted, emit_bidirected_edge_list(&back));
    }

    #[test]
    fn directed_roundtrip() {
        let text = "N z\n1 2\n2 1\n";
        let g = parse_directed_edge_list(text).unwrap();
        let emitted = emit_directed_edge_list(&g);
        assert_eq!(g, parse_directed_edge_list(&emitted).unwrap());
    }

    #[test]
    fn gfa_links_map_to_walk_consistent_edges() {
        let text = "S\ta\nS\tb\nL\ta\t+\tb\t+\t0M\n";
        let (g, warnings) = parse_gfa(text).unwrap();
        assert!(warnings.is_empty());
        assert!(g.has_edge(sn(&g, "a", Plus), sn(&g, "b", Minus)));
        // Traversing a then b with the stated orientations is a valid walk.
        assert!(g.validate_walk(&[("a", Plus), ("b", Plus)]).unwrap());
    }

    #[test]
    fn gfa_mapping_table() {
        let cases = [
            ("+", "+", Plus, Minus),
            ("+", "-", Plus, Plus),
            ("-", "+", Minus, Minus),
            ("-", "-", Minus, Plus),
        ];
        for (o1, o2, s1, s2) in cases {
            let text = format!("S\ta\nS\tb\nL\ta\t{o1}\tb\t{o2}\n");
            let (g, _) = parse_gfa(&text).unwrap();
            assert!(
                g.has_edge(sn(&g, "a", s1), sn(&g, "b", s2)),
                "L a {o1} b {o2} must give a{}/b{}",
                s1,
                s2
            );
            // Walk soundness holds for every orientation combination.
            let w1 = Sign::from_char(o1.chars().next().unwrap()).unwrap();
            let w2 = Sign::from_char(o2.chars().next().unwrap()).unwrap();
            assert!(g.validate_walk(&[("a", w1), ("b", w2)]).unwrap());
        }
    }

    #[test]
    fn gfa_self_link_becomes_nondirected_loop() {
        let (g, _) = parse_gfa("S\tv\nL\tv\t+\tv\t-\t*\n").unwrap();
        assert!(g.has_edge(sn(&g, "v", Plus), sn(&g, "v", Plus)));
    }

    #[test]
    fn gfa_segments_only_gives_edgeless_graph() {
        let (g, _) = parse_gfa("S\ta\nS\tb\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn gfa_rejects_undeclared_segments_and_warns_on_other_records() {
        assert!(matches!(
            parse_gfa("S\ta\nL\ta\t+\tb\t+\t0M\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        let (_, warnings) = parse_gfa("H\tVN:Z:1.0\nS\ta\nP\tp\ta+\t*\n").unwrap();
        assert_eq!(warnings.len(), 2);
    }

    #[test]
    fn ultrabubble_report_format() {
        let g = parse_bidirected_edge_list(
            "1 + 2 -\n1 + 3 -\n2 + 4 -\n3 + 4 -\n",
        )
        .unwrap();
        let report = enumerate_ultrabubbles(&g).unwrap();
        let plain = emit_ultrabubbles(&g, &report, false, false);
        assert_eq!(plain, "1 + 4 -\n");
        let with_stats = emit_ultrabubbles(&g, &report, false, true);
        assert_eq!(with_stats, "1 + 4 -\n# raw=2 self_filtered=0 mirror_filtered=1\n");
        let with_components = emit_ultrabubbles(&g, &report, true, false);
        assert_eq!(
            with_components,
            "1 + 4 -\n  1 + 2 -\n  1 + 3 -\n  2 + 4 -\n  3 + 4 -\n"
        );
    }

    #[test]
    fn empty_report_emits_only_requested_stats() {
        let g = parse_bidirected_edge_list("").unwrap();
        let report = enumerate_ultrabubbles(&g).unwrap();
        assert_eq!(emit_ultrabubbles(&g, &report, true, false), "");
        assert_eq!(
            emit_ultrabubbles(&g, &report, false, true),
            "# raw=0 self_filtered=0 mirror_filtered=0\n"
        );
    }
}
