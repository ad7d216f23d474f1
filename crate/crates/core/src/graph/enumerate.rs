/*!
Canonical forms and exhaustive enumeration of small graphs up to
isomorphism.
*/

use super::{check_cap, Graph};
use crate::limits;
use crate::Result;
use std::collections::BTreeMap;

/// Order-independent fingerprint: the lexicographically smallest
/// lower-triangle adjacency bit string over all vertex orderings.
///
/// Pair `(i, j)` with `i < j` occupies bit index `j(j-1)/2 + i` (column by
/// column), and lower indices are more significant, so comparing `bits` as
/// integers compares strings left to right.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u128,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    assert!(n <= 16, "canonical form supports at most 16 vertices");
    if n < 2 {
        return CanonicalForm { n, bits: 0 };
    }
    let masks = g.masks();
    let total = n * (n - 1) / 2;
    let mut best: u128 = u128::MAX >> (128 - total);
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&masks, n, total, &mut order, &mut used, 0, &mut best);
    CanonicalForm { n, bits: best }
}

/// Branch and bound over orderings. `acc` holds the bits fixed by the
/// current partial ordering; a branch dies as soon as its bits exceed the
/// matching prefix of the best complete string found so far.
fn search(
    masks: &[u64],
    n: usize,
    total: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    acc: u128,
    best: &mut u128,
) {
    let pos = order.len();
    if pos == n {
        if acc < *best {
            *best = acc;
        }
        return;
    }
    let mut cands: Vec<(u128, usize)> = Vec::new();
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mut col: u128 = 0;
        for (i, &u) in order.iter().enumerate() {
            if masks[v] >> u & 1 == 1 {
                col |= 1 << (pos - 1 - i);
            }
        }
        cands.push((col, v));
    }
    cands.sort_unstable();
    let filled = pos * (pos + 1) / 2;
    for (col, v) in cands {
        let acc2 = (acc << pos) | col;
        // candidates are sorted, so the first over-budget column ends the level
        if acc2 > *best >> (total - filled) {
            break;
        }
        order.push(v);
        used[v] = true;
        search(masks, n, total, order, used, acc2, best);
        order.pop();
        used[v] = false;
    }
}

/// Rebuilds the representative graph of a canonical form.
pub fn graph_from_form(f: &CanonicalForm) -> Graph {
    let mut g = Graph::new(f.n);
    if f.n < 2 {
        return g;
    }
    let total = f.n * (f.n - 1) / 2;
    for j in 1..f.n {
        for i in 0..j {
            let idx = j * (j - 1) / 2 + i;
            if f.bits >> (total - 1 - idx) & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class,
/// in canonical-form order. Each is labelled by its own canonical ordering.
///
/// Works by extending the classes on `n - 1` vertices with a new vertex
/// attached to every nonempty neighbourhood; every connected graph has a
/// non-cut vertex, so nothing is missed.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    check_cap("connected enumeration", n, limits::effective(limits::ENUMERATE))?;
    extend_classes(n, |_g, nb| nb != 0)
}

/// Connected graphs with maximum degree at most `d`, same conventions as
/// [`enumerate_connected`]. Removing a vertex never raises a degree, so the
/// same extension scheme stays complete within the class.
pub fn enumerate_connected_max_degree(n: usize, d: usize) -> Result<Vec<Graph>> {
    check_cap(
        "bounded-degree enumeration",
        n,
        limits::effective(limits::ENUMERATE_SUBCUBIC),
    )?;
    extend_classes(n, move |g, nb| {
        nb != 0
            && (nb.count_ones() as usize) <= d
            && (0..g.n()).all(|u| nb >> u & 1 == 0 || g.degree(u) < d)
    })
}

/// Every graph on exactly `n` vertices up to isomorphism, connected or not.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    check_cap("graph enumeration", n, limits::effective(limits::ENUMERATE))?;
    extend_classes(n, |_g, _nb| true)
}

/// Grows isomorphism classes one vertex at a time. `admit(g, nb)` decides
/// whether the class `g` may be extended by a vertex whose neighbourhood is
/// the bitmask `nb`.
fn extend_classes(n: usize, admit: impl Fn(&Graph, u64) -> bool) -> Result<Vec<Graph>> {
    if n == 0 {
        return Ok(vec![Graph::new(0)]);
    }
    let mut level: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    level.insert(canonical_form(&Graph::new(1)), Graph::new(1));
    for k in 1..n {
        let mut next: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
        for g in level.values() {
            for nb in 0..1u64 << k {
                if !admit(g, nb) {
                    continue;
                }
                let mut h = g.clone();
                h.adj.push(Default::default());
                for u in 0..k {
                    if nb >> u & 1 == 1 {
                        h.add_edge(u, k);
                    }
                }
                let f = canonical_form(&h);
                next.entry(f).or_insert_with(|| graph_from_form(&f));
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}
