/*!
Minor containment and exact subdivision recognition, by exhaustive search
with pruning. Built for correctness at small pattern sizes, with hard caps
so oversized inputs fail loudly instead of answering slowly or wrongly.
*/

use crate::graph::check_cap;
use crate::{limits, Graph, Result};
use std::collections::{BTreeMap, BTreeSet};

/// One branch set per pattern vertex: disjoint, connected, nonempty, and
/// joined by an edge of the host for every pattern edge.
#[derive(Debug, Clone)]
pub struct MinorWitness {
    pub branch_sets: Vec<BTreeSet<usize>>,
}

/// Injective branch-vertex map plus one host path per pattern edge. The
/// paths cover the whole host exactly (subdivision means isomorphism after
/// smoothing, not containment).
#[derive(Debug, Clone)]
pub struct SubdivisionWitness {
    pub branch_vertex: Vec<usize>,
    /// `(u, v, path)` with `path` running from `branch_vertex[u]` to
    /// `branch_vertex[v]` in the host.
    pub paths: Vec<(usize, usize, Vec<usize>)>,
}

pub fn is_minor(g: &Graph, pattern: &Graph) -> Result<Option<MinorWitness>> {
    check_cap(
        "minor pattern",
        pattern.n(),
        limits::effective(limits::MINOR_PATTERN),
    )?;
    check_cap("minor host", g.n(), limits::effective(limits::MINOR_HOST))?;
    if pattern.n() > g.n() || pattern.m() > g.m() {
        return Ok(None);
    }
    if pattern.n() == 0 {
        return Ok(Some(MinorWitness {
            branch_sets: Vec::new(),
        }));
    }
    let order = assignment_order(pattern);
    let masks = g.masks();
    let mut branch = vec![0u64; pattern.n()];
    if assign(g, pattern, &masks, &order, 0, 0, &mut branch) {
        let branch_sets = branch
            .iter()
            .map(|&m| (0..g.n()).filter(|&v| m >> v & 1 == 1).collect())
            .collect();
        Ok(Some(MinorWitness { branch_sets }))
    } else {
        Ok(None)
    }
}

/// Pattern vertices, highest degree first, but preferring vertices with an
/// already-placed neighbour so adjacency constraints bite early.
fn assignment_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let pick = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let touching = pattern.neighbors(v).any(|w| placed[w]);
                (touching, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[pick] = true;
        order.push(pick);
    }
    order
}

fn assign(
    g: &Graph,
    pattern: &Graph,
    masks: &[u64],
    order: &[usize],
    pos: usize,
    used: u64,
    branch: &mut [u64],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let p = order[pos];
    let required: Vec<u64> = pattern
        .neighbors(p)
        .filter(|&q| order[..pos].contains(&q))
        .map(|q| neighborhood(masks, branch[q]) & !branch[q])
        .collect();
    let free = !used & (u64::MAX >> (64 - g.n()));
    let remaining = order.len() - pos - 1;
    let mut found = false;
    each_connected_subset(masks, free, &mut |s| {
        if found {
            return;
        }
        if required.iter().any(|&r| r & s == 0) {
            return;
        }
        // the contracted vertex needs one distinct outside neighbour per
        // pattern edge, and later branch sets still need room
        let outside = neighborhood(masks, s) & !s;
        if (outside.count_ones() as usize) < pattern.degree(p) {
            return;
        }
        if ((free & !s).count_ones() as usize) < remaining {
            return;
        }
        branch[p] = s;
        if assign(g, pattern, masks, order, pos + 1, used | s, branch) {
            found = true;
        }
    });
    found
}

fn neighborhood(masks: &[u64], s: u64) -> u64 {
    let mut out = 0;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= masks[v];
    }
    out
}

/// Every nonempty connected subset of `allowed`, each exactly once.
fn each_connected_subset(masks: &[u64], allowed: u64, f: &mut impl FnMut(u64)) {
    fn rec(masks: &[u64], allowed: u64, s: u64, cand: u64, banned: u64, f: &mut impl FnMut(u64)) {
        f(s);
        let mut c = cand;
        let mut banned = banned;
        while c != 0 {
            let b = c & c.wrapping_neg();
            c ^= b;
            let v = b.trailing_zeros() as usize;
            let grown = c | (masks[v] & allowed & !s & !banned & !b);
            rec(masks, allowed, s | b, grown, banned, f);
            banned |= b;
        }
    }
    let mut roots = allowed;
    let mut banned = 0u64;
    while roots != 0 {
        let b = roots & roots.wrapping_neg();
        roots ^= b;
        let v = b.trailing_zeros() as usize;
        rec(masks, allowed, b, masks[v] & allowed & !banned, banned, f);
        banned |= b;
    }
}

pub fn verify_minor_witness(g: &Graph, pattern: &Graph, w: &MinorWitness) -> bool {
    if w.branch_sets.len() != pattern.n() {
        return false;
    }
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for s in &w.branch_sets {
        if s.is_empty() || s.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for &v in s {
            if !used.insert(v) {
                return false;
            }
        }
        let (sub, _) = g.induced(s);
        if !sub.is_connected() {
            return false;
        }
    }
    pattern.edges().iter().all(|&(p, q)| {
        w.branch_sets[p]
            .iter()
            .any(|&u| g.neighbors(u).any(|x| w.branch_sets[q].contains(&x)))
    })
}

pub fn is_subdivision_of(g: &Graph, pattern: &Graph) -> Result<Option<SubdivisionWitness>> {
    check_cap(
        "subdivision pattern",
        pattern.n(),
        limits::effective(limits::MINOR_PATTERN),
    )?;
    check_cap(
        "subdivision host",
        g.n(),
        limits::effective(limits::SUBDIVISION_HOST),
    )?;
    // subdividing adds one vertex and one edge, so m - n is invariant
    if g.n() < pattern.n()
        || g.m() < pattern.m()
        || g.m() as i64 - g.n() as i64 != pattern.m() as i64 - pattern.n() as i64
    {
        return Ok(None);
    }
    if pattern.n() >= 3 && pattern.is_connected() && (0..pattern.n()).all(|v| pattern.degree(v) == 2)
    {
        return Ok(cycle_subdivision(g, pattern));
    }
    Ok(general_subdivision(g, pattern))
}

/// A subdivision of a cycle is exactly a (long enough) cycle, so match the
/// two cyclic walks directly; the general search below would churn through
/// degree-2 images.
fn cycle_subdivision(g: &Graph, pattern: &Graph) -> Option<SubdivisionWitness> {
    if !g.is_connected() || (0..g.n()).any(|v| g.degree(v) != 2) {
        return None;
    }
    let host = cycle_walk(g);
    let pat = cycle_walk(pattern);
    let k = pat.len();
    let mut branch_vertex = vec![usize::MAX; k];
    for i in 0..k {
        branch_vertex[pat[i]] = host[i];
    }
    let mut paths = Vec::with_capacity(k);
    for i in 0..k {
        let (u, v) = (pat[i], pat[(i + 1) % k]);
        let path: Vec<usize> = if i + 1 < k {
            vec![host[i], host[i + 1]]
        } else {
            // last pattern edge absorbs all leftover host vertices
            host[k - 1..].iter().copied().chain([host[0]]).collect()
        };
        paths.push((u, v, path));
    }
    Some(SubdivisionWitness {
        branch_vertex,
        paths,
    })
}

/// Vertices of a 2-regular connected graph in cyclic order from vertex 0.
fn cycle_walk(g: &Graph) -> Vec<usize> {
    let mut walk = vec![0usize];
    let mut prev = usize::MAX;
    loop {
        let cur = *walk.last().unwrap();
        let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
        if next == 0 {
            return walk;
        }
        prev = cur;
        walk.push(next);
    }
}

fn general_subdivision(g: &Graph, pattern: &Graph) -> Option<SubdivisionWitness> {
    let pn = pattern.n();
    // assign branch images by degree (subdividing never changes the degree
    // of a branch vertex, and subdivision vertices have degree exactly 2)
    let mut phi = vec![usize::MAX; pn];
    let mut taken = vec![false; g.n()];
    let order = assignment_order(pattern);
    search_phi(g, pattern, &order, 0, &mut phi, &mut taken)
}

fn search_phi(
    g: &Graph,
    pattern: &Graph,
    order: &[usize],
    pos: usize,
    phi: &mut Vec<usize>,
    taken: &mut Vec<bool>,
) -> Option<SubdivisionWitness> {
    if pos == order.len() {
        return realize_paths(g, pattern, phi);
    }
    let p = order[pos];
    for v in 0..g.n() {
        if taken[v] || g.degree(v) != pattern.degree(p) {
            continue;
        }
        phi[p] = v;
        taken[v] = true;
        if let Some(w) = search_phi(g, pattern, order, pos + 1, phi, taken) {
            return Some(w);
        }
        phi[p] = usize::MAX;
        taken[v] = false;
    }
    None
}

/// Tries to realize every pattern edge as a host path through degree-2
/// non-image vertices, using each host edge at most once, then demands the
/// paths cover the host exactly.
fn realize_paths(g: &Graph, pattern: &Graph, phi: &[usize]) -> Option<SubdivisionWitness> {
    let image: BTreeSet<usize> = phi.iter().copied().collect();
    let mut edge_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, e) in g.edges().into_iter().enumerate() {
        edge_id.insert(e, i);
    }
    let eid = |u: usize, v: usize| edge_id[&(u.min(v), u.max(v))];
    let mut used = vec![false; g.m()];
    let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let pedges = pattern.edges();

    fn rec(
        g: &Graph,
        pedges: &[(usize, usize)],
        phi: &[usize],
        image: &BTreeSet<usize>,
        eid: &dyn Fn(usize, usize) -> usize,
        used: &mut Vec<bool>,
        paths: &mut Vec<(usize, usize, Vec<usize>)>,
    ) -> bool {
        let k = paths.len();
        if k == pedges.len() {
            return used.iter().all(|&u| u);
        }
        let (pu, pv) = pedges[k];
        let (start, target) = (phi[pu], phi[pv]);
        let firsts: Vec<usize> = g.neighbors(start).collect();
        for first in firsts {
            if used[eid(start, first)] {
                continue;
            }
            // the continuation is forced through degree-2 non-images
            let mut path = vec![start, first];
            let mut ok = true;
            used[eid(start, first)] = true;
            let mut cur = first;
            let mut prev = start;
            while !image.contains(&cur) {
                if g.degree(cur) != 2 {
                    ok = false;
                    break;
                }
                let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
                if used[eid(cur, next)] {
                    ok = false;
                    break;
                }
                used[eid(cur, next)] = true;
                path.push(next);
                prev = cur;
                cur = next;
            }
            if ok && cur == target && path.len() >= 2 {
                paths.push((pu, pv, path.clone()));
                if rec(g, pedges, phi, image, eid, used, paths) {
                    return true;
                }
                paths.pop();
            }
            // roll back the walk's edge marks
            for w in path.windows(2) {
                used[eid(w[0], w[1])] = false;
            }
        }
        false
    }

    if rec(g, &pedges, phi, &image, &eid, &mut used, &mut paths) {
        // edge coverage is checked in rec; vertex coverage follows unless
        // the host has stray isolated vertices, which the image must absorb
        let mut covered: BTreeSet<usize> = image.clone();
        for (_, _, p) in &paths {
            covered.extend(p.iter().copied());
        }
        if covered.len() == g.n() {
            return Some(SubdivisionWitness {
                branch_vertex: phi.to_vec(),
                paths,
            });
        }
    }
    None
}

pub fn verify_subdivision_witness(g: &Graph, pattern: &Graph, w: &SubdivisionWitness) -> bool {
    if w.branch_vertex.len() != pattern.n() || w.paths.len() != pattern.m() {
        return false;
    }
    let image: BTreeSet<usize> = w.branch_vertex.iter().copied().collect();
    if image.len() != pattern.n() || image.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut used_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut covered = image.clone();
    let mut pattern_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, v, path) in &w.paths {
        if path.first() != Some(&w.branch_vertex[*u]) || path.last() != Some(&w.branch_vertex[*v]) {
            return false;
        }
        if !pattern.has_edge(*u, *v) || !pattern_edges.insert((*u.min(v), *u.max(v))) {
            return false;
        }
        for pair in path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return false;
            }
            if !used_edges.insert((pair[0].min(pair[1]), pair[0].max(pair[1]))) {
                return false;
            }
        }
        for &x in &path[1..path.len() - 1] {
            if image.contains(&x) || g.degree(x) != 2 || !covered.insert(x) {
                return false;
            }
        }
    }
    used_edges.len() == g.m() && covered.len() == g.n()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_contains_smaller_complete_minor() {
        let g = Graph::complete(5);
        let w = is_minor(&g, &Graph::complete(4)).unwrap().unwrap();
        assert!(verify_minor_witness(&g, &Graph::complete(4), &w));
    }

    #[test]
    fn trees_have_no_cycle_minor() {
        for t in [Graph::path_graph(7), Graph::star(6)] {
            assert!(is_minor(&t, &Graph::cycle(3)).unwrap().is_none());
        }
    }

    #[test]
    fn petersen_contains_complete_five() {
        let g = Graph::petersen();
        let w = is_minor(&g, &Graph::complete(5)).unwrap().unwrap();
        assert!(verify_minor_witness(&g, &Graph::complete(5), &w));
    }

    #[test]
    fn petersen_has_no_complete_six_minor() {
        // 6 branch sets on 10 vertices spend ≥ 4 edges internally, leaving
        // at most 11 < 15 of Petersen's edges to realize C(6,2) pattern edges
        assert!(is_minor(&Graph::petersen(), &Graph::complete(6))
            .unwrap()
            .is_none());
    }

    #[test]
    fn isolated_pattern_vertices_need_only_spare_room() {
        // K_1 ∪ K_4 as a pattern: minor of K_5 (edge deletions are allowed)
        let mut pat = Graph::new(5);
        for u in 1..5 {
            for v in u + 1..5 {
                pat.add_edge(u, v);
            }
        }
        assert!(is_minor(&Graph::complete(5), &pat).unwrap().is_some());
        assert!(is_minor(&Graph::complete(4), &pat).unwrap().is_none());
    }

    #[test]
    fn size_caps_error_loudly() {
        assert!(is_minor(&Graph::new(21), &Graph::new(2)).is_err());
        assert!(is_minor(&Graph::new(5), &Graph::new(11)).is_err());
        assert!(is_subdivision_of(&Graph::new(5), &Graph::new(11)).is_err());
    }

    #[test]
    fn long_cycle_is_subdivided_triangle() {
        let g = Graph::cycle(6);
        let w = is_subdivision_of(&g, &Graph::cycle(3)).unwrap().unwrap();
        assert!(verify_subdivision_witness(&g, &Graph::cycle(3), &w));
    }

    #[test]
    fn identity_subdivision() {
        let g = Graph::complete(4);
        let w = is_subdivision_of(&g, &Graph::complete(4)).unwrap().unwrap();
        assert!(verify_subdivision_witness(&g, &Graph::complete(4), &w));
    }

    #[test]
    fn subdivided_claw_matches_claw() {
        // K_{1,3} with every edge subdivided once: centre 0, leaves 1..=3,
        // subdivision vertices 4..=6
        let g = Graph::from_edges(7, &[(0, 4), (4, 1), (0, 5), (5, 2), (0, 6), (6, 3)]);
        let pat = Graph::star(3);
        let w = is_subdivision_of(&g, &pat).unwrap().unwrap();
        assert!(verify_subdivision_witness(&g, &pat, &w));
    }

    #[test]
    fn subdivision_is_exact_not_containment() {
        // K_4 contains a subdivided triangle but is not one
        assert!(is_subdivision_of(&Graph::complete(4), &Graph::cycle(3))
            .unwrap()
            .is_none());
        assert!(is_subdivision_of(&Graph::cycle(6), &Graph::cycle(7))
            .unwrap()
            .is_none());
        assert!(is_subdivision_of(&Graph::cycle(6), &Graph::star(3))
            .unwrap()
            .is_none());
        assert!(is_subdivision_of(&Graph::path_graph(4), &Graph::cycle(3))
            .unwrap()
            .is_none());
    }

    #[test]
    fn subdivided_complete_graph_recognized() {
        // subdivide every edge of K_4 once
        let base = Graph::complete(4);
        let mut g = Graph::new(4 + base.m());
        for (i, (u, v)) in base.edges().into_iter().enumerate() {
            g.add_edge(u, 4 + i);
            g.add_edge(4 + i, v);
        }
        let w = is_subdivision_of(&g, &base).unwrap().unwrap();
        assert!(verify_subdivision_witness(&g, &base, &w));
    }

    #[test]
    fn large_cycle_host_stays_fast() {
        let g = Graph::cycle(500);
        let w = is_subdivision_of(&g, &Graph::cycle(4)).unwrap().unwrap();
        assert!(verify_subdivision_witness(&g, &Graph::cycle(4), &w));
    }

    #[test]
    fn minor_monotone_under_pattern_edge_deletion() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(3..=7);
            let mut host = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        host.add_edge(u, v);
                    }
                }
            }
            let pn = rng.gen_range(2..=4);
            let mut pat_big = Graph::new(pn);
            for u in 0..pn {
                for v in u + 1..pn {
                    if rng.gen_bool(0.6) {
                        pat_big.add_edge(u, v);
                    }
                }
            }
            let mut pat_small = pat_big.clone();
            let edges = pat_small.edges();
            for (u, v) in edges {
                if rng.gen_bool(0.4) {
                    pat_small.remove_edge(u, v);
                }
            }
            if is_minor(&host, &pat_big).unwrap().is_some() {
                assert!(
                    is_minor(&host, &pat_small).unwrap().is_some(),
                    "host={:?} big={:?} small={:?}",
                    host.edges(),
                    pat_big.edges(),
                    pat_small.edges()
                );
            }
        }
    }
}
