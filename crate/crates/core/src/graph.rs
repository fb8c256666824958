//! Finite undirected graphs with an explicit loop set, plus the metric and
//! structural primitives (components, complement, diameter, dominating
//! pairs) every solver builds on.
//!
//! Loops are stored separately from the edge set so the same type serves
//! irreflexive inputs and partially reflexive targets. Distances and the
//! diameter ignore loops: a loop never shortens a path.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("complement is undefined on a graph with loops")]
    ComplementWithLoops,
    #[error("induced subgraph requested for an empty vertex set")]
    EmptyInducedSubgraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("model graph: {0}")]
    BadModelGraph(String),
}

/// Error from the graph text parser, carrying the offending line number.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct GraphParseError {
    pub line: usize,
    pub msg: String,
}

/// A subset of the vertices of some graph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// The complement of this set inside `{0..n-1}`.
    pub fn complement_in(&self, n: usize) -> VertexSet {
        (0..n).filter(|v| !self.contains(*v)).collect()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.0.last().is_none_or(|&v| v < g.n())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// A finite undirected graph: vertices `0..n-1`, simple edges, and a set of
/// reflexive (looped) vertices tracked separately from the edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    edges: BTreeSet<(usize, usize)>,
    loops: BTreeSet<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            edges: BTreeSet::new(),
            loops: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the edge `{u, v}`. Idempotent; `u == v` is rejected (use
    /// [`Graph::add_loop`] for reflexive vertices).
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self pair {u} is not an edge; use add_loop");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn add_loop(&mut self, v: usize) {
        assert!(v < self.n, "loop {v} out of range");
        self.loops.insert(v);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(&v)
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops.is_empty()
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adjacent(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Connected components, ordered by their minimum vertex id.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Number of components of the subgraph induced by `sub`, without
    /// materializing it.
    pub fn component_count_within(&self, sub: &VertexSet) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for start in sub.iter() {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if sub.contains(u) && seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
        }
        count
    }

    /// The subgraph induced by `sub`, re-indexed to `0..|sub|-1`. The second
    /// component maps each new id back to the original vertex; callers never
    /// have to guess the renumbering.
    pub fn induced_subgraph(&self, sub: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if sub.is_empty() {
            return Err(GraphError::EmptyInducedSubgraph);
        }
        if let Some(v) = sub.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let old_ids: Vec<usize> = sub.iter().collect();
        let mut g = Graph::new(old_ids.len());
        for (i, &u) in old_ids.iter().enumerate() {
            for (j, &v) in old_ids.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
            if self.has_loop(u) {
                g.add_loop(i);
            }
        }
        Ok((g, old_ids))
    }

    /// The complement graph; defined for loop-free graphs only.
    pub fn complement(&self) -> Result<Graph, GraphError> {
        if !self.is_loop_free() {
            return Err(GraphError::ComplementWithLoops);
        }
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Shortest-path edge count between `u` and `v`, `None` if unreachable.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Maximum pairwise distance; `None` when the graph is disconnected.
    /// Graphs on fewer than two vertices have diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for u in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            dist[u] = 0;
            let mut reached = 1;
            let mut queue = VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        best = best.max(dist[y]);
                        reached += 1;
                        queue.push_back(y);
                    }
                }
            }
            if reached < self.n {
                return None;
            }
        }
        Some(best)
    }

    /// The lexicographically least non-adjacent pair `(u, v)` such that every
    /// other vertex is adjacent to `u` or to `v`, if one exists.
    pub fn find_dominating_non_edge(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) && self.is_dominating_pair(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// True when every vertex other than `u`, `v` is adjacent to at least one
    /// of them (says nothing about `u`, `v` themselves being adjacent).
    pub fn is_dominating_pair(&self, u: usize, v: usize) -> bool {
        (0..self.n)
            .filter(|&w| w != u && w != v)
            .all(|w| self.adjacent(w, u) || self.adjacent(w, v))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?}, loops={:?})", self.n, self.edges, self.loops)
    }
}

/// A pattern graph with solid and dotted edges, driving H-partition search.
/// Solid model edges force all cross edges between the two blocks, dotted
/// model edges forbid them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelGraph {
    k: usize,
    solid: BTreeSet<(usize, usize)>,
    dotted: BTreeSet<(usize, usize)>,
}

impl ModelGraph {
    pub fn new(
        k: usize,
        solid: impl IntoIterator<Item = (usize, usize)>,
        dotted: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let norm = |pairs: Vec<(usize, usize)>| -> Result<BTreeSet<(usize, usize)>, GraphError> {
            let mut out = BTreeSet::new();
            for (u, v) in pairs {
                if u == v {
                    return Err(GraphError::BadModelGraph(format!("self pair {u}")));
                }
                if u >= k || v >= k {
                    return Err(GraphError::BadModelGraph(format!("pair ({u},{v}) out of range")));
                }
                out.insert((u.min(v), u.max(v)));
            }
            Ok(out)
        };
        let solid = norm(solid.into_iter().collect())?;
        let dotted = norm(dotted.into_iter().collect())?;
        if let Some(pair) = solid.intersection(&dotted).next() {
            return Err(GraphError::BadModelGraph(format!(
                "pair {pair:?} is both solid and dotted"
            )));
        }
        Ok(ModelGraph { k, solid, dotted })
    }

    /// Four vertices, solid edges `{0,2}` and `{1,3}`, no dotted edges.
    pub fn two_k2() -> Self {
        ModelGraph::new(4, [(0, 2), (1, 3)], []).unwrap()
    }

    /// Four vertices, dotted edges `{0,2}` and `{1,3}`, no solid edges.
    pub fn two_s2() -> Self {
        ModelGraph::new(4, [], [(0, 2), (1, 3)]).unwrap()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn solid(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.solid.iter().copied()
    }

    pub fn dotted(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dotted.iter().copied()
    }

    pub fn is_solid(&self, i: usize, j: usize) -> bool {
        self.solid.contains(&(i.min(j), i.max(j)))
    }

    pub fn is_dotted(&self, i: usize, j: usize) -> bool {
        self.dotted.contains(&(i.min(j), i.max(j)))
    }
}

/// Parses the graph text format: one construct per line, `n <count>`,
/// `e <u> <v>`, `loop <v>`, with `#` starting a comment. The single `n` line
/// must precede every edge and loop. Duplicate edges, self pairs and
/// out-of-range ids are rejected.
pub fn parse_graph(text: &str) -> Result<Graph, GraphParseError> {
    let err = |line: usize, msg: String| GraphParseError { line, msg };
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let mut next_id = |what: &str| -> Result<usize, GraphParseError> {
            parts
                .next()
                .ok_or_else(|| err(line_no, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| err(line_no, format!("bad {what}: {e}")))
        };
        match head {
            "n" => {
                let count = next_id("vertex count")?;
                if graph.is_some() {
                    return Err(err(line_no, "duplicate n line".into()));
                }
                graph = Some(Graph::new(count));
            }
            "e" => {
                let u = next_id("endpoint")?;
                let v = next_id("endpoint")?;
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err(line_no, "e before n line".into()))?;
                if u == v {
                    return Err(err(line_no, format!("self pair e {u} {u}")));
                }
                if u >= g.n() || v >= g.n() {
                    return Err(err(line_no, format!("edge ({u},{v}) out of range")));
                }
                if g.adjacent(u, v) {
                    return Err(err(line_no, format!("duplicate edge ({u},{v})")));
                }
                g.add_edge(u, v);
            }
            "loop" => {
                let v = next_id("vertex")?;
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err(line_no, "loop before n line".into()))?;
                if v >= g.n() {
                    return Err(err(line_no, format!("loop {v} out of range")));
                }
                if g.has_loop(v) {
                    return Err(err(line_no, format!("duplicate loop {v}")));
                }
                g.add_loop(v);
            }
            other => return Err(err(line_no, format!("unknown construct {other:?}"))),
        }
        if let Some(extra) = parts.next() {
            return Err(err(line_no, format!("trailing token {extra:?}")));
        }
    }
    graph.ok_or_else(|| err(0, "missing n line".into()))
}

/// Writes the canonical text form: the `n` line, sorted edges, sorted loops.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for v in g.loops() {
        out.push_str(&format!("loop {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_small_graphs() {
        assert_eq!(Graph::complete(3).components().len(), 1);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(two_k2.components().len(), 2);
        let edgeless = Graph::new(3);
        let comps = edgeless.components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4);
        let (sub, ids) = k4.induced_subgraph(&[0, 1, 3].into_iter().collect()).unwrap();
        assert_eq!(sub, Graph::complete(3));
        assert_eq!(ids, vec![0, 1, 3]);

        let p4 = Graph::path(4);
        let (sub, _) = p4.induced_subgraph(&[0, 2].into_iter().collect()).unwrap();
        assert_eq!(sub.edge_count(), 0);

        let (same, ids) = p4.induced_subgraph(&(0..4).collect()).unwrap();
        assert_eq!(same, p4);
        assert_eq!(ids, vec![0, 1, 2, 3]);

        assert_eq!(
            p4.induced_subgraph(&VertexSet::new()),
            Err(GraphError::EmptyInducedSubgraph)
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement().unwrap().edge_count(), 0);
        let p3 = Graph::path(3);
        let c = p3.complement().unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);

        let mut looped = Graph::new(2);
        looped.add_loop(0);
        assert_eq!(looped.complement(), Err(GraphError::ComplementWithLoops));
    }

    #[test]
    fn distance_and_diameter() {
        assert_eq!(Graph::complete(5).diameter(), Some(1));
        assert_eq!(Graph::path(4).diameter(), Some(3));
        assert_eq!(Graph::cycle(4).diameter(), Some(2));
        assert_eq!(Graph::new(1).diameter(), Some(0));
        assert_eq!(Graph::from_edges(4, &[(0, 1), (2, 3)]).diameter(), None);
        assert_eq!(Graph::path(4).distance(0, 3), Some(3));
        assert_eq!(Graph::from_edges(3, &[(0, 1)]).distance(0, 2), None);

        // loops never shorten paths
        let mut g = Graph::path(3);
        g.add_loop(1);
        assert_eq!(g.distance(0, 2), Some(2));
        assert_eq!(g.diameter(), Some(2));
    }

    #[test]
    fn dominating_non_edge_examples() {
        assert_eq!(Graph::complete(2).find_dominating_non_edge(), None);
        assert_eq!(Graph::path(3).find_dominating_non_edge(), Some((0, 2)));
        // P4: (0,2) dominates 1 and 3? 3 is adjacent to 2, 1 to 0 and 2.
        assert_eq!(Graph::path(4).find_dominating_non_edge(), Some((0, 2)));
    }

    #[test]
    fn parser_round_trip_and_rejections() {
        let text = "# a comment\nn 4\ne 0 1\ne 2 3\nloop 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.adjacent(0, 1) && g.adjacent(2, 3));
        assert!(g.has_loop(1));
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);

        assert!(parse_graph("n 2\ne 0 0\n").is_err());
        assert!(parse_graph("n 2\ne 0 1\ne 1 0\n").is_err());
        assert!(parse_graph("n 2\ne 0 5\n").is_err());
        assert!(parse_graph("e 0 1\n").is_err());
        assert!(parse_graph("n 2\nn 3\n").is_err());
        assert!(parse_graph("n 2\nq 1\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn model_graph_constants() {
        let m = ModelGraph::two_k2();
        assert_eq!(m.k(), 4);
        assert!(m.is_solid(0, 2) && m.is_solid(3, 1));
        assert_eq!(m.dotted().count(), 0);
        let s = ModelGraph::two_s2();
        assert!(s.is_dotted(0, 2) && s.is_dotted(1, 3));
        assert_eq!(s.solid().count(), 0);
        assert!(ModelGraph::new(2, [(0, 1)], [(1, 0)]).is_err());
        assert!(ModelGraph::new(2, [(1, 1)], []).is_err());
        assert!(ModelGraph::new(2, [(0, 3)], []).is_err());
    }
}
