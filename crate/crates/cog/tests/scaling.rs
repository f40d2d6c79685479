//! Label lookups should cost about the same on small and large graphs.

use cog::bench::{build_bench_graph, time_lookups, Backend};

fn median_us(g: &cog_core::substrate::Graph, runs: u64) -> f64 {
    let mut v: Vec<f64> = (0..runs).map(|s| time_lookups(g, 1_000_000, Backend::Integrated, 1, s).mean_us_per_call).collect();
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

#[test]
fn lookup_latency_within_3x_from_10k_to_1m_nodes() {
    let small = median_us(&build_bench_graph(10_000), 5);
    let large = median_us(&build_bench_graph(1_000_000), 5);
    let ratio = large / small;
    eprintln!("10k: {small:.4} us/call, 1M: {large:.4} us/call, ratio {ratio:.2}");
    assert!(ratio <= 3.0, "1M-node lookups are {ratio:.2}x slower than 10k-node lookups");
}
