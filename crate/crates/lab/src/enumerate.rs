//! Exhaustive input families for the batteries: all labeled connected
//! graphs up to a small size, and all covered instances up to a tuple
//! budget.

use dcut_core::gadgets::DInstance;
use dcut_core::graph::Graph;

/// All labeled connected loop-free graphs on exactly `n` vertices, in edge
/// bitmask order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n), "exhaustive family capped at 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut g = Graph::new(n);
        for (bit, &(u, v)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// All labeled connected graphs with between 1 and `max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

fn choose_rec(
    universe: &[(usize, (usize, usize))],
    start: usize,
    remaining: usize,
    picked: &mut Vec<(usize, (usize, usize))>,
    out: &mut Vec<Vec<(usize, (usize, usize))>>,
) {
    out.push(picked.clone());
    if remaining == 0 {
        return;
    }
    for i in start..universe.len() {
        picked.push(universe[i]);
        choose_rec(universe, i + 1, remaining - 1, picked, out);
        picked.pop();
    }
}

/// Every instance on `1..=max_elements` elements with between 1 and
/// `max_tuples` tuples total, restricted to those covering all elements.
pub fn all_covered_instances(max_elements: usize, max_tuples: usize) -> Vec<DInstance> {
    let mut out = Vec::new();
    for k in 1..=max_elements {
        let universe: Vec<(usize, (usize, usize))> = (1..=4)
            .flat_map(|rel| (0..k).flat_map(move |p| (0..k).map(move |q| (rel, (p, q)))))
            .collect();
        let mut subsets = Vec::new();
        choose_rec(&universe, 0, max_tuples, &mut Vec::new(), &mut subsets);
        for subset in subsets {
            if subset.is_empty() {
                continue;
            }
            let mut rels: [Vec<(usize, usize)>; 4] = Default::default();
            for (rel, pair) in &subset {
                rels[rel - 1].push(*pair);
            }
            let [r1, r2, r3, r4] = rels;
            let instance = DInstance::new((0..k).collect(), r1, r2, r3, r4).unwrap();
            if (0..k).all(|e| instance.is_covered(e)) {
                out.push(instance);
            }
        }
    }
    out
}
