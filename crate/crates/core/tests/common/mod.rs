use dcut_core::graph::Graph;
use proptest::prelude::*;

/// Random loop-free graph on 1..=max_n vertices, each edge present with
/// probability 1/2.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        g.add_edge(u, v);
                    }
                    idx += 1;
                }
            }
            g
        })
    })
}

#[allow(dead_code)]
pub fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", Graph::is_connected)
}
