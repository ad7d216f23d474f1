/*!
Vertex-disjoint path packing via unit-capacity flow.

Two regimes, both exact:

* [`max_disjoint_paths`] — source/sink vertices may be shared by several
  paths, everything else is used at most once. Cardinality equals the
  minimum vertex cut over non-terminal vertices (Menger).
* [`max_fully_disjoint_paths`] — no sharing at all, terminals included.
  This is the form needed when each source must head its own path.
*/

use crate::Graph;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct PathBundle {
    /// Vertex sequences; each starts at a source and ends at a sink.
    pub paths: Vec<Vec<usize>>,
}

impl PathBundle {
    pub fn count(&self) -> usize {
        self.paths.len()
    }
}

/// Maximum set of source–sink paths that pairwise share nothing except
/// possibly source/sink vertices; internal vertices avoid
/// `forbidden_internal`. Source vertices that are also sinks become
/// single-vertex paths and are not routed through otherwise.
pub fn max_disjoint_paths(
    g: &Graph,
    sources: &BTreeSet<usize>,
    sinks: &BTreeSet<usize>,
    forbidden_internal: &BTreeSet<usize>,
) -> PathBundle {
    solve(g, sources, sinks, forbidden_internal, true)
}

/// Maximum set of pairwise fully vertex-disjoint source–sink paths avoiding
/// `forbidden`. Each source/sink lies on at most one path.
pub fn max_fully_disjoint_paths(
    g: &Graph,
    sources: &BTreeSet<usize>,
    sinks: &BTreeSet<usize>,
    forbidden: &BTreeSet<usize>,
) -> PathBundle {
    solve(g, sources, sinks, forbidden, false)
}

fn solve(
    g: &Graph,
    sources: &BTreeSet<usize>,
    sinks: &BTreeSet<usize>,
    forbidden: &BTreeSet<usize>,
    share_terminals: bool,
) -> PathBundle {
    let n = g.n();
    for &v in forbidden {
        assert!(
            !sources.contains(&v) && !sinks.contains(&v),
            "forbidden vertex {v} is a terminal"
        );
    }
    let common: BTreeSet<usize> = sources.intersection(sinks).copied().collect();
    let mut paths: Vec<Vec<usize>> = common.iter().map(|&v| vec![v]).collect();
    let s: BTreeSet<usize> = sources.difference(&common).copied().collect();
    let t: BTreeSet<usize> = sinks.difference(&common).copied().collect();
    if s.is_empty() || t.is_empty() {
        return PathBundle { paths };
    }

    // split every vertex; forbidden vertices and extracted common terminals
    // simply get no arcs
    let inf = (g.m() + n + 2) as i64;
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    let (sigma, tau) = (2 * n, 2 * n + 1);
    let mut net = Net::new(2 * n + 2);
    let dead = |v: usize| forbidden.contains(&v) || common.contains(&v);
    for v in 0..n {
        if dead(v) {
            continue;
        }
        let c = if share_terminals && (s.contains(&v) || t.contains(&v)) {
            inf
        } else {
            1
        };
        net.arc(node_in(v), node_out(v), c);
    }
    for (u, v) in g.edges() {
        if dead(u) || dead(v) {
            continue;
        }
        net.arc(node_out(u), node_in(v), 1);
        net.arc(node_out(v), node_in(u), 1);
    }
    let term_cap = if share_terminals { inf } else { 1 };
    for &v in &s {
        net.arc(sigma, node_in(v), term_cap);
    }
    for &v in &t {
        net.arc(node_out(v), tau, term_cap);
    }

    let value = net.max_flow(sigma, tau);
    for _ in 0..value {
        let walk = net.take_unit_walk(sigma, tau);
        let mut vp: Vec<usize> = Vec::new();
        for id in walk {
            if id < 2 * n {
                let v = id / 2;
                if vp.last() != Some(&v) {
                    vp.push(v);
                }
            }
        }
        paths.push(tidy(vp, sources, sinks));
    }
    PathBundle { paths }
}

/// Loop-erases a decomposition walk and trims it to run from its last
/// source occurrence to its first sink occurrence after that.
fn tidy(walk: Vec<usize>, sources: &BTreeSet<usize>, sinks: &BTreeSet<usize>) -> Vec<usize> {
    let mut simple: Vec<usize> = Vec::with_capacity(walk.len());
    for v in walk {
        if let Some(i) = simple.iter().position(|&w| w == v) {
            simple.truncate(i + 1);
        } else {
            simple.push(v);
        }
    }
    let end = simple
        .iter()
        .position(|v| sinks.contains(v))
        .expect("walk must reach a sink");
    let start = simple[..=end]
        .iter()
        .rposition(|v| sources.contains(v))
        .expect("walk must leave a source");
    simple[start..=end].to_vec()
}

/// Unit-capacity max flow, arcs stored as forward/residual pairs.
struct Net {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Net {
    fn new(n: usize) -> Self {
        Net {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: i64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && pred[v].is_none() && v != s {
                        pred[v] = Some(a);
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            let Some(_) = pred[t] else { break };
            let mut b = i64::MAX;
            let mut u = t;
            while u != s {
                let a = pred[u].unwrap();
                b = b.min(self.cap[a]);
                u = self.to[a ^ 1];
            }
            let mut u = t;
            while u != s {
                let a = pred[u].unwrap();
                self.cap[a] -= b;
                self.cap[a ^ 1] += b;
                u = self.to[a ^ 1];
            }
            total += b;
        }
        total
    }

    /// Peels one unit of net flow off as a walk from `s` to `t`. Net flow on
    /// a forward arc `a` (even id) is `cap[a ^ 1]`, which doubles as the
    /// remaining-units counter here.
    fn take_unit_walk(&mut self, s: usize, t: usize) -> Vec<usize> {
        let mut walk = vec![s];
        let mut u = s;
        while u != t {
            let a = self.adj[u]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && self.cap[a ^ 1] > 0)
                .expect("flow conservation");
            self.cap[a ^ 1] -= 1;
            u = self.to[a];
            walk.push(u);
        }
        walk
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    /// Structural validity of a bundle under either sharing regime.
    fn check_bundle(
        g: &Graph,
        b: &PathBundle,
        sources: &BTreeSet<usize>,
        sinks: &BTreeSet<usize>,
        forbidden: &BTreeSet<usize>,
        share_terminals: bool,
    ) {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for p in &b.paths {
            assert!(!p.is_empty());
            assert!(sources.contains(&p[0]), "path must start at a source");
            assert!(sinks.contains(p.last().unwrap()), "path must end at a sink");
            for w in p.windows(2) {
                assert!(g.has_edge(w[0], w[1]), "path edge missing");
            }
            for (i, &v) in p.iter().enumerate() {
                let internal = i > 0 && i + 1 < p.len();
                if internal {
                    assert!(!forbidden.contains(&v), "forbidden vertex used");
                }
                let shareable =
                    share_terminals && (sources.contains(&v) || sinks.contains(&v));
                if !shareable {
                    assert!(used.insert(v), "vertex {v} reused");
                }
            }
        }
    }

    #[test]
    fn two_three_bipartite_has_three_paths_between_hubs() {
        let g = Graph::complete_bipartite(2, 3);
        let b = max_disjoint_paths(&g, &set(&[0]), &set(&[1]), &set(&[]));
        assert_eq!(b.count(), 3);
        check_bundle(&g, &b, &set(&[0]), &set(&[1]), &set(&[]), true);
    }

    #[test]
    fn disconnected_terminals_give_no_paths() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        let b = max_disjoint_paths(&g, &set(&[0]), &set(&[3]), &set(&[]));
        assert_eq!(b.count(), 0);
    }

    #[test]
    fn grid_left_to_right_carries_four_paths() {
        let g = Graph::grid(4, 4);
        let left = set(&[0, 4, 8, 12]);
        let right = set(&[3, 7, 11, 15]);
        let b = max_disjoint_paths(&g, &left, &right, &set(&[]));
        assert_eq!(b.count(), 4);
        check_bundle(&g, &b, &left, &right, &set(&[]), true);
    }

    #[test]
    fn forbidden_vertex_blocks_the_only_route() {
        let g = Graph::path_graph(3);
        let b = max_disjoint_paths(&g, &set(&[0]), &set(&[2]), &set(&[1]));
        assert_eq!(b.count(), 0);
    }

    #[test]
    fn petersen_is_three_connected() {
        let g = Graph::petersen();
        let b = max_disjoint_paths(&g, &set(&[0]), &set(&[7]), &set(&[]));
        assert_eq!(b.count(), 3);
        check_bundle(&g, &b, &set(&[0]), &set(&[7]), &set(&[]), true);
    }

    #[test]
    fn fully_disjoint_mode_respects_terminal_capacity() {
        // star: centre 0, leaves 1..=4; leaves to leaves must all run
        // through the centre, so only one fully disjoint path exists
        let g = Graph::star(4);
        let b = max_fully_disjoint_paths(&g, &set(&[1, 2]), &set(&[3, 4]), &set(&[]));
        assert_eq!(b.count(), 1);
        let b = max_disjoint_paths(&g, &set(&[1, 2]), &set(&[3, 4]), &set(&[]));
        assert_eq!(b.count(), 1); // centre is not a terminal either way
    }

    #[test]
    fn common_terminals_become_singleton_paths() {
        let g = Graph::path_graph(4);
        let b = max_fully_disjoint_paths(&g, &set(&[0, 1]), &set(&[1, 3]), &set(&[]));
        assert!(b.paths.contains(&vec![1]));
        // 0 only reaches 3 through 1, which the singleton path occupies
        assert_eq!(b.count(), 1);
    }

    // ---- oracle: exhaustive minimum vertex cut ----

    /// Smallest X ⊆ V \ (S ∪ T ∪ F) whose removal (with F) separates S from
    /// T; None when no such set exists (some S–T edge survives).
    fn min_cut_over_internals(
        g: &Graph,
        s: &BTreeSet<usize>,
        t: &BTreeSet<usize>,
        f: &BTreeSet<usize>,
    ) -> Option<usize> {
        let free: Vec<usize> = (0..g.n())
            .filter(|v| !s.contains(v) && !t.contains(v) && !f.contains(v))
            .collect();
        for size in 0..=free.len() {
            let mut best: Option<usize> = None;
            subsets_of_size(&free, size, &mut |x| {
                if best.is_none() {
                    let mut removed: BTreeSet<usize> = f.clone();
                    removed.extend(x.iter().copied());
                    if separated(g, s, t, &removed) {
                        best = Some(size);
                    }
                }
            });
            if best.is_some() {
                return best;
            }
        }
        None
    }

    /// Smallest X ⊆ V \ F meeting every S–T path (terminals allowed in X).
    fn min_cut_anywhere(
        g: &Graph,
        s: &BTreeSet<usize>,
        t: &BTreeSet<usize>,
        f: &BTreeSet<usize>,
    ) -> usize {
        let free: Vec<usize> = (0..g.n()).filter(|v| !f.contains(v)).collect();
        for size in 0..free.len() {
            let mut hit = false;
            subsets_of_size(&free, size, &mut |x| {
                if !hit {
                    let mut removed: BTreeSet<usize> = f.clone();
                    removed.extend(x.iter().copied());
                    let s2: BTreeSet<usize> = s.difference(&removed).copied().collect();
                    let t2: BTreeSet<usize> = t.difference(&removed).copied().collect();
                    if separated(g, &s2, &t2, &removed) {
                        hit = true;
                    }
                }
            });
            if hit {
                return size;
            }
        }
        free.len()
    }

    fn separated(g: &Graph, s: &BTreeSet<usize>, t: &BTreeSet<usize>, removed: &BTreeSet<usize>) -> bool {
        if s.intersection(t).next().is_some() {
            return false;
        }
        let mut seen: Vec<bool> = (0..g.n()).map(|v| removed.contains(&v)).collect();
        let mut stack: Vec<usize> = s.iter().copied().filter(|&v| !seen[v]).collect();
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            if t.contains(&v) {
                return false;
            }
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        true
    }

    fn subsets_of_size(pool: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
        fn rec(pool: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
            if cur.len() == size {
                f(cur);
                return;
            }
            for i in start..pool.len() {
                cur.push(pool[i]);
                rec(pool, size, i + 1, cur, f);
                cur.pop();
            }
        }
        rec(pool, size, 0, &mut Vec::new(), f);
    }

    fn random_terminals(
        rng: &mut ChaCha8Rng,
        n: usize,
    ) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
        loop {
            let mut s = BTreeSet::new();
            let mut t = BTreeSet::new();
            let mut f = BTreeSet::new();
            for v in 0..n {
                match rng.gen_range(0..6) {
                    0 => {
                        s.insert(v);
                    }
                    1 => {
                        t.insert(v);
                    }
                    2 => {
                        f.insert(v);
                    }
                    _ => {}
                }
            }
            if !s.is_empty() && !t.is_empty() {
                return (s, t, f);
            }
        }
    }

    #[test]
    fn cardinality_matches_exhaustive_min_cut() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut checked = 0;
        for n in 2..=6 {
            for g in crate::graph::enumerate::enumerate_connected(n).unwrap() {
                for _ in 0..4 {
                    let (s, t, f) = random_terminals(&mut rng, n);
                    // shared-terminal count has a cut dual only when no S–T
                    // edge survives and terminals do not overlap
                    if let Some(cut) = min_cut_over_internals(&g, &s, &t, &f) {
                        if s.intersection(&t).next().is_none() {
                            let b = max_disjoint_paths(&g, &s, &t, &f);
                            assert_eq!(b.count(), cut, "g={:?} s={s:?} t={t:?} f={f:?}", g.edges());
                            check_bundle(&g, &b, &s, &t, &f, true);
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn fully_disjoint_cardinality_matches_menger_cut() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut checked = 0;
        for n in 2..=6 {
            for g in crate::graph::enumerate::enumerate_connected(n).unwrap() {
                for _ in 0..3 {
                    let (s, t, f) = random_terminals(&mut rng, n);
                    let b = max_fully_disjoint_paths(&g, &s, &t, &f);
                    assert_eq!(
                        b.count(),
                        min_cut_anywhere(&g, &s, &t, &f),
                        "g={:?} s={s:?} t={t:?} f={f:?}",
                        g.edges()
                    );
                    check_bundle(&g, &b, &s, &t, &f, false);
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn oracle_agreement_on_larger_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [7usize, 8] {
            for seed in 0..25 {
                let g = Graph::random_planar_connected(n, seed, 6, 10);
                let (s, t, f) = random_terminals(&mut rng, n);
                if s.intersection(&t).next().is_none() {
                    if let Some(cut) = min_cut_over_internals(&g, &s, &t, &f) {
                        let b = max_disjoint_paths(&g, &s, &t, &f);
                        assert_eq!(b.count(), cut);
                    }
                }
                let b = max_fully_disjoint_paths(&g, &s, &t, &f);
                assert_eq!(b.count(), min_cut_anywhere(&g, &s, &t, &f));
            }
        }
    }
}
