//! Benchmark fixtures shared by the `benches/` targets.

use starshape::StarGraph;

/// Graphs spanning small to large cleared-equation degrees.
pub fn sample_graphs() -> Vec<StarGraph> {
    [&[1, 1, 1, 1, 1][..], &[3, 2, 2], &[6, 2, 1], &[6, 6, 6], &[5, 4, 3, 2, 1]]
        .iter()
        .map(|b| StarGraph::new(b.to_vec()).expect("valid branch list"))
        .collect()
}
