//! Scaling benchmark for the full reduction pipeline.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::oracle::{generate, GeneratedGraph, GeneratorConfig, GraphFamily};
use crate::reduction::enumerate_ultrabubbles;

/// One timed pipeline run.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub nodes: usize,
    pub edges: usize,
    pub rep: usize,
    pub seconds: f64,
}

fn config_for(family: GraphFamily, edges: usize, seed: u64) -> Result<GeneratorConfig> {
    let cfg = match family {
        GraphFamily::BubbleChain => {
            if edges < 4 || edges % 4 != 0 {
                return Err(Error::InfeasibleConfig(format!(
                    "bubble-chain sizes are edge counts divisible by 4, got {edges}"
                )));
            }
            GeneratorConfig {
                seed,
                node_count: 3 * (edges / 4) + 1,
                edge_count: edges,
                family,
            }
        }
        _ => GeneratorConfig { seed, node_count: (edges / 2).max(3), edge_count: edges, family },
    };
    Ok(cfg)
}

/// Generates one graph per size and times the enumeration `repetitions`
/// times on it, one row per repetition.
pub fn run_benchmark(
    family: GraphFamily,
    sizes: &[usize],
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &size in sizes {
        let cfg = config_for(family, size, seed)?;
        let GeneratedGraph { graph, .. } = generate(&cfg)?;
        for rep in 0..repetitions {
            let start = Instant::now();
            let report = enumerate_ultrabubbles(&graph)?;
            let seconds = start.elapsed().as_secs_f64();
            std::hint::black_box(&report);
            rows.push(BenchRow {
                nodes: graph.node_count(),
                edges: graph.edge_count(),
                rep,
                seconds,
            });
        }
    }
    Ok(rows)
}

/// Machine-readable CSV with a header row.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("nodes,edges,rep,seconds\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{:.6}\n", r.nodes, r.edges, r.rep, r.seconds));
    }
    out
}

/// Median seconds per size, for the scaling check.
pub fn median_by_size(rows: &[BenchRow]) -> Vec<(usize, f64)> {
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.edges).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|m| {
            let mut times: Vec<f64> =
                rows.iter().filter(|r| r.edges == m).map(|r| r.seconds).collect();
            times.sort_by(|a, b| a.partial_cmp(b).unwrap());
            (m, times[times.len() / 2])
        })
        .collect()
}
