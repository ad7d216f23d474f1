/*!
Simple undirected graphs over the vertex set `0..n`.

Adjacency is kept as sorted neighbour sets so that every iteration order in
the crate is deterministic.
*/

use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub mod enumerate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Adds the edge `uv`. Loops are rejected, parallel adds are no-ops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on `verts`; vertex `i` of the result is `verts[i]`
    /// with `verts` taken in ascending order.
    pub fn induced(&self, verts: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let order: Vec<usize> = verts.iter().copied().collect();
        let mut idx = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            idx[v] = i;
        }
        let mut g = Graph::new(order.len());
        for &v in &order {
            for &w in &self.adj[v] {
                if w > v && verts.contains(&w) {
                    g.add_edge(idx[v], idx[w]);
                }
            }
        }
        (g, order)
    }

    /// Connected components of `g - removed`, each sorted, listed by
    /// smallest contained vertex.
    pub fn components(&self, removed: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.n()];
        for &v in removed {
            if v < self.n() {
                seen[v] = true;
            }
        }
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(&BTreeSet::new()).len() <= 1
    }

    /// Neighbour bitmasks, usable while `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    // ---- generators ----

    pub fn complete(p: usize) -> Self {
        let mut g = Graph::new(p);
        for u in 0..p {
            for v in u + 1..p {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    pub fn path_graph(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::path_graph(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Star with centre `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// Wheel: hub `0` joined to the cycle `1..=rim`.
    pub fn wheel(rim: usize) -> Self {
        assert!(rim >= 3);
        let mut g = Graph::new(rim + 1);
        for v in 1..=rim {
            g.add_edge(0, v);
            g.add_edge(v, if v == rim { 1 } else { v + 1 });
        }
        g
    }

    /// r-by-c grid, vertex `(i, j)` at index `i * c + j`.
    pub fn grid(r: usize, c: usize) -> Self {
        let mut g = Graph::new(r * c);
        for i in 0..r {
            for j in 0..c {
                if j + 1 < c {
                    g.add_edge(i * c + j, i * c + j + 1);
                }
                if i + 1 < r {
                    g.add_edge(i * c + j, (i + 1) * c + j);
                }
            }
        }
        g
    }

    /// Triangular prism with the three non-triangle edges subdivided
    /// `counts[i]` times. Zero counts give the prism itself.
    ///
    /// Triangles are `{0,1,2}` and `{3,4,5}`; rail `i` runs from `i` to
    /// `i + 3` through its subdivision vertices.
    pub fn elongated_prism(counts: [usize; 3]) -> Self {
        let extra: usize = counts.iter().sum();
        let mut g = Graph::new(6 + extra);
        for t in [[0, 1, 2], [3, 4, 5]] {
            g.add_edge(t[0], t[1]);
            g.add_edge(t[1], t[2]);
            g.add_edge(t[0], t[2]);
        }
        let mut next = 6;
        for i in 0..3 {
            let mut prev = i;
            for _ in 0..counts[i] {
                g.add_edge(prev, next);
                prev = next;
                next += 1;
            }
            g.add_edge(prev, i + 3);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5); // outer cycle
            g.add_edge(5 + v, 5 + (v + 2) % 5); // inner pentagram
            g.add_edge(v, 5 + v); // spokes
        }
        g
    }

    /// Random planar triangulation on `n >= 3` vertices, built by repeatedly
    /// picking a face and stacking a new vertex into it. Every face of the
    /// natural embedding is a triangle. Deterministic per seed.
    pub fn random_planar_triangulation(n: usize, seed: u64) -> Self {
        assert!(n >= 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::complete(3);
        // both sides of the starting triangle are faces
        let mut faces = vec![[0, 1, 2], [0, 2, 1]];
        for v in 3..n {
            g.adj.push(BTreeSet::new());
            let fi = rng.gen_range(0..faces.len());
            let [a, b, c] = faces.swap_remove(fi);
            g.add_edge(v, a);
            g.add_edge(v, b);
            g.add_edge(v, c);
            faces.push([a, b, v]);
            faces.push([b, c, v]);
            faces.push([c, a, v]);
        }
        g
    }

    /// Random connected planar subgraph of a random triangulation: a random
    /// spanning tree is kept, every other edge survives with probability
    /// `keep_num / keep_den`. Deterministic per seed.
    pub fn random_planar_connected(n: usize, seed: u64, keep_num: u32, keep_den: u32) -> Self {
        let tri = Graph::random_planar_triangulation(n.max(3), seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        // random spanning tree: random-priority DFS
        let mut keep: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut seen = vec![false; tri.n()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let mut nb: Vec<usize> = tri.neighbors(v).filter(|&w| !seen[w]).collect();
            while !nb.is_empty() {
                let i = rng.gen_range(0..nb.len());
                let w = nb.swap_remove(i);
                if !seen[w] {
                    seen[w] = true;
                    keep.insert((v.min(w), v.max(w)));
                    stack.push(v);
                    stack.push(w);
                    break;
                }
            }
        }
        let mut g = Graph::new(tri.n());
        for (u, v) in tri.edges() {
            if keep.contains(&(u, v)) || rng.gen_ratio(keep_num, keep_den) {
                g.add_edge(u, v);
            }
        }
        g
    }
}

/// Requires `n <= cap`, with the standard "instance too large" error.
pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::TooLarge { what, size, cap });
    }
    Ok(())
}
