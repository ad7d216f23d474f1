/*!
Tree-decompositions: the data model, axiom validation, the bag-size profile
that certifies every refinement step, and subset-absorption normalisation.
*/

use crate::{Error, Graph, Result};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Host vertex count (bags hold vertices `0..n`).
    pub n: usize,
    /// One bag per tree node, indexed by node id.
    pub bags: Vec<BTreeSet<usize>>,
    /// Tree edges as `(min, max)` node pairs.
    pub edges: Vec<(usize, usize)>,
}

/// One failed axiom, pinned to the object that broke it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    HostMismatch { dec_n: usize, graph_n: usize },
    NotATree { reason: String },
    BagOutOfRange { node: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    OccurrenceDisconnected { vertex: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::HostMismatch { dec_n, graph_n } => {
                write!(f, "decomposition is over {dec_n} vertices, graph has {graph_n}")
            }
            Violation::NotATree { reason } => write!(f, "node structure is not a tree: {reason}"),
            Violation::BagOutOfRange { node } => write!(f, "bag of node {node} leaves the vertex range"),
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge {u}-{v} is inside no bag"),
            Violation::OccurrenceDisconnected { vertex } => {
                write!(f, "occurrence set of vertex {vertex} is disconnected")
            }
        }
    }
}

/// Bag-size multiplicities, largest size first: `counts[i]` is the number
/// of bags of size `n - i`, down to size 1. Comparing count vectors
/// lexicographically is the termination order of the refinement engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagProfile {
    pub counts: Vec<usize>,
}

impl std::fmt::Display for BagProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

pub fn lex_less(a: &BagProfile, b: &BagProfile) -> Result<bool> {
    if a.counts.len() != b.counts.len() {
        return Err(Error::Precondition(format!(
            "profiles over different host sizes: {} vs {}",
            a.counts.len(),
            b.counts.len()
        )));
    }
    Ok(a.counts < b.counts)
}

impl TreeDecomposition {
    pub fn new(n: usize, bags: Vec<BTreeSet<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        TreeDecomposition { n, bags, edges }
    }

    /// The whole vertex set in one bag.
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition {
            n: g.n(),
            bags: vec![(0..g.n()).collect()],
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn tree_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.bags.len()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    /// Node sequence of the unique tree path from `x` to `y`, inclusive.
    pub fn tree_path(&self, x: usize, y: usize) -> Vec<usize> {
        let adj = self.tree_adjacency();
        let mut pred = vec![usize::MAX; self.bags.len()];
        let mut queue = std::collections::VecDeque::from([x]);
        pred[x] = x;
        while let Some(u) = queue.pop_front() {
            if u == y {
                break;
            }
            for &w in &adj[u] {
                if pred[w] == usize::MAX {
                    pred[w] = u;
                    queue.push_back(w);
                }
            }
        }
        assert!(pred[y] != usize::MAX, "nodes in different tree components");
        let mut path = vec![y];
        while *path.last().unwrap() != x {
            path.push(pred[*path.last().unwrap()]);
        }
        path.reverse();
        path
    }

    pub fn validate(&self, g: &Graph) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n != g.n() {
            out.push(Violation::HostMismatch {
                dec_n: self.n,
                graph_n: g.n(),
            });
            return out;
        }
        let k = self.bags.len();
        if k == 0 {
            out.push(Violation::NotATree {
                reason: "no nodes".into(),
            });
            return out;
        }
        if self.edges.len() != k - 1 {
            out.push(Violation::NotATree {
                reason: format!("{} nodes but {} edges", k, self.edges.len()),
            });
            return out;
        }
        for &(u, v) in &self.edges {
            if u >= k || v >= k || u == v {
                out.push(Violation::NotATree {
                    reason: format!("bad edge ({u},{v})"),
                });
                return out;
            }
        }
        let adj = self.tree_adjacency();
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 0;
        while let Some(u) = stack.pop() {
            reached += 1;
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if reached != k {
            out.push(Violation::NotATree {
                reason: "disconnected".into(),
            });
            return out;
        }

        for (x, bag) in self.bags.iter().enumerate() {
            if bag.iter().any(|&v| v >= self.n) {
                out.push(Violation::BagOutOfRange { node: x });
            }
        }

        // occurrence lists, sorted by node id, computed once
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (x, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < self.n {
                    occ[v].push(x);
                }
            }
        }
        for v in 0..self.n {
            if occ[v].is_empty() {
                out.push(Violation::VertexUncovered { vertex: v });
            }
        }
        for (u, v) in g.edges() {
            let (small, big) = if occ[u].len() <= occ[v].len() { (&occ[u], &occ[v]) } else { (&occ[v], &occ[u]) };
            if !small.iter().any(|x| big.binary_search(x).is_ok()) {
                out.push(Violation::EdgeUncovered { u, v });
            }
        }
        // connectivity of each vertex's occurrence set in the tree
        for v in 0..self.n {
            if occ[v].len() <= 1 {
                continue;
            }
            let inside: BTreeSet<usize> = occ[v].iter().copied().collect();
            let mut seen: BTreeSet<usize> = BTreeSet::from([occ[v][0]]);
            let mut stack = vec![occ[v][0]];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if inside.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if seen.len() != occ[v].len() {
                out.push(Violation::OccurrenceDisconnected { vertex: v });
            }
        }
        out
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_empty()
    }

    pub fn profile(&self) -> BagProfile {
        let mut counts = vec![0usize; self.n];
        for b in &self.bags {
            if b.len() >= 1 {
                counts[self.n - b.len()] += 1;
            }
        }
        BagProfile { counts }
    }
}

/// No bag contained in a neighbouring bag. For valid decompositions this
/// extends to all pairs: along the tree path from x to y the separator
/// property forces B_x ⊆ B_y down to an adjacent pair.
pub fn is_normal(dec: &TreeDecomposition) -> bool {
    dec.edges
        .iter()
        .all(|&(u, v)| !dec.bags[u].is_subset(&dec.bags[v]) && !dec.bags[v].is_subset(&dec.bags[u]))
}

/// Contracts tree edges whose bags are nested (dropping the contained bag)
/// until none remain. The result is normal: no bag is a subset of a
/// neighbouring bag — and hence of any other bag at all.
pub fn normalise(dec: &TreeDecomposition) -> TreeDecomposition {
    let mut bags = dec.bags.clone();
    let mut adj = dec.tree_adjacency();
    let mut alive: Vec<bool> = vec![true; bags.len()];
    loop {
        let mut contracted = false;
        'scan: for u in 0..bags.len() {
            if !alive[u] {
                continue;
            }
            for &v in &adj[u].clone() {
                if v < u {
                    continue; // each pair once, in (min,max) order
                }
                let (gone, kept) = if bags[u].is_subset(&bags[v]) {
                    (u, v)
                } else if bags[v].is_subset(&bags[u]) {
                    (v, u)
                } else {
                    continue;
                };
                alive[gone] = false;
                let others: Vec<usize> = adj[gone].iter().copied().filter(|&w| w != kept).collect();
                for w in others {
                    adj[w].remove(&gone);
                    adj[w].insert(kept);
                    adj[kept].insert(w);
                }
                adj[kept].remove(&gone);
                adj[gone].clear();
                bags[gone].clear();
                contracted = true;
                break 'scan;
            }
        }
        if !contracted {
            break;
        }
    }
    // compact ids, keeping relative order
    let live: Vec<usize> = (0..bags.len()).filter(|&x| alive[x]).collect();
    let mut new_id = vec![usize::MAX; bags.len()];
    for (i, &x) in live.iter().enumerate() {
        new_id[x] = i;
    }
    let mut edges = Vec::new();
    for &x in &live {
        for &w in &adj[x] {
            if x < w {
                edges.push((new_id[x], new_id[w]));
            }
        }
    }
    edges.sort_unstable();
    TreeDecomposition {
        n: dec.n,
        bags: live.into_iter().map(|x| std::mem::take(&mut bags[x])).collect(),
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn profile_counts_largest_first() {
        let d = TreeDecomposition::new(3, vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]);
        assert_eq!(d.profile().counts, vec![0, 2, 0]);
        let k4 = TreeDecomposition::single_bag(&Graph::complete(4));
        assert_eq!(k4.profile().counts, vec![1, 0, 0, 0]);
    }

    #[test]
    fn lex_compare_is_positional() {
        let a = BagProfile {
            counts: vec![0, 1, 2, 0],
        };
        let b = BagProfile {
            counts: vec![0, 2, 0, 0],
        };
        assert!(lex_less(&a, &b).unwrap());
        assert!(!lex_less(&b, &a).unwrap());
        assert!(!lex_less(&a, &a).unwrap());
        let c = BagProfile {
            counts: vec![0, 0, 0],
        };
        assert!(lex_less(&a, &c).is_err());
    }

    #[test]
    fn validate_accepts_path_decomposition() {
        let g = Graph::path_graph(3);
        let d = TreeDecomposition::new(3, vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]);
        assert!(d.validate(&g).is_empty());
    }

    #[test]
    fn validate_reports_uncovered_edge() {
        let mut g = Graph::path_graph(3);
        g.add_edge(0, 2);
        let d = TreeDecomposition::new(3, vec![set(&[0, 1]), set(&[1, 2])], vec![(0, 1)]);
        assert_eq!(d.validate(&g), vec![Violation::EdgeUncovered { u: 0, v: 2 }]);
    }

    #[test]
    fn validate_reports_disconnected_occurrence() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]);
        let d = TreeDecomposition::new(
            3,
            vec![set(&[0, 1]), set(&[2]), set(&[0, 2])],
            vec![(0, 1), (1, 2)],
        );
        assert!(d
            .validate(&g)
            .contains(&Violation::OccurrenceDisconnected { vertex: 0 }));
    }

    #[test]
    fn validate_reports_broken_tree() {
        let g = Graph::path_graph(2);
        let d = TreeDecomposition::new(2, vec![set(&[0, 1]), set(&[0, 1])], vec![]);
        assert!(matches!(d.validate(&g)[0], Violation::NotATree { .. }));
    }

    #[test]
    fn normalise_absorbs_middle_bag() {
        let d = TreeDecomposition::new(
            3,
            vec![set(&[0, 1]), set(&[1]), set(&[1, 2])],
            vec![(0, 1), (1, 2)],
        );
        let nd = normalise(&d);
        assert_eq!(nd.bags, vec![set(&[0, 1]), set(&[1, 2])]);
        assert_eq!(nd.edges, vec![(0, 1)]);
        assert!(nd.is_valid(&Graph::path_graph(3)));
    }

    #[test]
    fn normalise_collapses_chain_to_one_bag() {
        let d = TreeDecomposition::new(
            2,
            vec![set(&[0]), set(&[0]), set(&[0, 1])],
            vec![(0, 1), (1, 2)],
        );
        let nd = normalise(&d);
        assert_eq!(nd.bags, vec![set(&[0, 1])]);
        assert!(nd.edges.is_empty());
    }

    #[test]
    fn normalise_keeps_normal_input_bags() {
        let d = TreeDecomposition::new(
            4,
            vec![set(&[0, 1]), set(&[1, 2]), set(&[2, 3])],
            vec![(0, 1), (1, 2)],
        );
        let nd = normalise(&d);
        assert_eq!(nd.bags, d.bags);
    }

    #[test]
    fn normalise_is_idempotent_on_bag_multisets() {
        let d = TreeDecomposition::new(
            4,
            vec![set(&[0]), set(&[0, 1]), set(&[1, 2]), set(&[2]), set(&[2, 3])],
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
        );
        let once = normalise(&d);
        let twice = normalise(&once);
        let mut a = once.bags.clone();
        let mut b = twice.bags.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_graph_single_empty_bag_is_valid_width_minus_one() {
        let g = Graph::new(0);
        let d = TreeDecomposition::single_bag(&g);
        assert!(d.is_valid(&g));
        assert_eq!(d.width(), -1);
        assert_eq!(d.profile().counts.len(), 0);
    }

    #[test]
    fn tree_path_walks_the_tree() {
        let d = TreeDecomposition::new(
            4,
            vec![set(&[0]), set(&[1]), set(&[2]), set(&[3])],
            vec![(0, 1), (1, 2), (1, 3)],
        );
        assert_eq!(d.tree_path(0, 3), vec![0, 1, 3]);
        assert_eq!(d.tree_path(2, 2), vec![2]);
    }
}
