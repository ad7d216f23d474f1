/*!
Planarity testing by incremental face embedding, triangulation by in-face
chords, and the structure classification behind the per-bag audits:
outerplanar, subgraph of a wheel, subgraph of an elongated triangular
prism, or none of these.

Embeddings are combinatorial: a rotation system plus the face walks it
induces. Faces are directed closed walks; across all faces every directed
edge appears exactly once, and each component satisfies Euler's formula on
the sphere (edgeless components implicitly own one face).
*/

use crate::graph::check_cap;
use crate::{limits, Error, Graph, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone)]
pub struct Embedding {
    pub graph: Graph,
    /// rotation[v] = neighbours of v in cyclic order
    pub rotation: Vec<Vec<usize>>,
    /// directed closed walks, one per face of a component with edges
    pub faces: Vec<Vec<usize>>,
}

impl Embedding {
    /// Face index of each directed edge.
    pub fn face_of(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (i, w) in self.faces.iter().enumerate() {
            let m = w.len();
            for k in 0..m {
                out.insert((w[k], w[(k + 1) % m]), i);
            }
        }
        out
    }
}

/// Computes a plane embedding, or nothing if the graph is not planar.
/// Works block by block: each biconnected block is embedded by growing an
/// initial cycle one fragment-path at a time, and the blocks are glued at
/// cut vertices by concatenating their rotations.
pub fn planarity_embed(g: &Graph) -> Option<Embedding> {
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for blk in blocks(g) {
        let walks = embed_block(&blk)?;
        for (v, order) in rotation_from_walks(&walks) {
            rotation[v].extend(order);
        }
    }
    let faces = trace_faces(g, &rotation);
    let comps = g.components(&BTreeSet::new());
    for comp in &comps {
        let vc = comp.len();
        let ec = g.edges().iter().filter(|&&(u, _)| comp.contains(&u)).count();
        let fc = if ec == 0 {
            1
        } else {
            faces.iter().filter(|w| comp.contains(&w[0])).count()
        };
        assert_eq!(vc + fc, ec + 2, "embedding violates Euler's formula");
    }
    Some(Embedding {
        graph: g.clone(),
        rotation,
        faces,
    })
}

/// Biconnected blocks as edge lists, in DFS discovery order.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbor_set(v).iter().copied().collect()).collect();
    let mut num = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if num[root] != usize::MAX {
            continue;
        }
        num[root] = counter;
        low[root] = counter;
        counter += 1;
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(v, parent, i)) = frames.last() {
            if i < nbrs[v].len() {
                frames.last_mut().unwrap().2 += 1;
                let w = nbrs[v][i];
                if w == parent {
                    continue;
                }
                if num[w] == usize::MAX {
                    estack.push((v, w));
                    num[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    frames.push((w, v, 0));
                } else if num[w] < num[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(num[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= num[p] {
                        let mut blk = Vec::new();
                        while let Some(&e) = estack.last() {
                            estack.pop();
                            blk.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(blk);
                    }
                }
            }
        }
    }
    out
}

/// Face walks of one block, or None if it cannot be drawn. The embedded
/// subgraph stays 2-connected throughout, so every intermediate face walk
/// is a simple directed cycle and splitting at two vertices is unambiguous.
fn embed_block(edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(vec![vec![u, v]]);
    }
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    // initial cycle: walk to the smallest non-returning neighbour until a
    // vertex repeats (min degree 2 here, so the walk never gets stuck)
    let start = *adj.keys().next().unwrap();
    let mut walk = vec![start];
    let mut seen_at: BTreeMap<usize, usize> = BTreeMap::new();
    seen_at.insert(start, 0);
    let cycle: Vec<usize> = loop {
        let cur = *walk.last().unwrap();
        let prev = if walk.len() >= 2 { walk[walk.len() - 2] } else { usize::MAX };
        let next = *adj[&cur].iter().find(|&&w| w != prev).unwrap();
        if let Some(&i) = seen_at.get(&next) {
            break walk[i..].to_vec();
        }
        seen_at.insert(next, walk.len());
        walk.push(next);
    };
    let mut in_h: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    loop {
        // fragments: components outside the embedded subgraph, plus
        // unembedded chords between embedded vertices
        let mut frags: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = Vec::new();
        let mut left: BTreeSet<usize> = adj.keys().copied().filter(|v| !in_h.contains(v)).collect();
        while let Some(&seed) = left.iter().next() {
            let mut comp = BTreeSet::new();
            comp.insert(seed);
            left.remove(&seed);
            let mut queue = vec![seed];
            while let Some(v) = queue.pop() {
                for &w in &adj[&v] {
                    if !in_h.contains(&w) && comp.insert(w) {
                        left.remove(&w);
                        queue.push(w);
                    }
                }
            }
            let att: BTreeSet<usize> = comp
                .iter()
                .flat_map(|v| adj[v].iter().copied())
                .filter(|w| in_h.contains(w))
                .collect();
            frags.push((att, comp));
        }
        for (&u, nb) in &adj {
            for &v in nb {
                if u < v && in_h.contains(&u) && in_h.contains(&v) && !embedded.contains(&(u, v)) {
                    frags.push(([u, v].into_iter().collect(), BTreeSet::new()));
                }
            }
        }
        if frags.is_empty() {
            return Some(faces);
        }
        frags.sort();
        let face_sets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let admissible: Vec<Vec<usize>> = frags
            .iter()
            .map(|(att, _)| {
                face_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, fs)| att.is_subset(fs))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if admissible.iter().any(|a| a.is_empty()) {
            return None;
        }
        // a fragment with a forced face must go first; otherwise any choice works
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let (att, interior) = &frags[pick];
        let face_idx = admissible[pick][0];
        let mut ai = att.iter();
        let a = *ai.next().unwrap();
        let b = *ai.next().expect("every fragment of a 2-connected block has two attachments");
        let path_interior: Vec<usize> = if interior.is_empty() {
            Vec::new()
        } else {
            frag_path(&adj, interior, a, b)
        };
        let mut chain = vec![a];
        chain.extend(path_interior.iter().copied());
        chain.push(b);
        for w in chain.windows(2) {
            embedded.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path_interior {
            in_h.insert(v);
        }
        let (f1, f2) = split_face(&faces[face_idx], a, b, &path_interior);
        faces[face_idx] = f1;
        faces.push(f2);
    }
}

/// Shortest path from a to b whose interior stays inside the fragment.
fn frag_path(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    interior: &BTreeSet<usize>,
    a: usize,
    b: usize,
) -> Vec<usize> {
    let mut pred: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &v in adj[&a].iter().filter(|v| interior.contains(v)) {
        pred.insert(v, usize::MAX);
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if adj[&v].contains(&b) {
            let mut path = vec![v];
            let mut cur = v;
            while pred[&cur] != usize::MAX {
                cur = pred[&cur];
                path.push(cur);
            }
            path.reverse();
            return path;
        }
        for &w in &adj[&v] {
            if interior.contains(&w) && !pred.contains_key(&w) {
                pred.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment interior must connect its attachments")
}

/// Splits a simple directed face cycle at a and b, routing the new path
/// with interior `ints` so that each path edge lands once in each half.
fn split_face(face: &[usize], a: usize, b: usize, ints: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = face.len();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let mut part1 = Vec::new();
    let mut k = ia;
    loop {
        part1.push(face[k]);
        if k == ib {
            break;
        }
        k = (k + 1) % m;
    }
    let mut part2 = Vec::new();
    let mut k = ib;
    loop {
        part2.push(face[k]);
        if k == ia {
            break;
        }
        k = (k + 1) % m;
    }
    let f1: Vec<usize> = part1.into_iter().chain(ints.iter().rev().copied()).collect();
    let f2: Vec<usize> = part2.into_iter().chain(ints.iter().copied()).collect();
    (f1, f2)
}

/// Per-vertex cyclic neighbour order recovered from face walks: around v
/// the walks define prev-neighbour -> next-neighbour, which must close into
/// a single cycle.
fn rotation_from_walks(walks: &[Vec<usize>]) -> BTreeMap<usize, Vec<usize>> {
    let mut after: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for w in walks {
        let m = w.len();
        for i in 0..m {
            let a = w[(i + m - 1) % m];
            let b = w[i];
            let c = w[(i + 1) % m];
            let dup = after.entry(b).or_default().insert(a, c);
            assert!(dup.is_none(), "directed edge appears in two faces");
        }
    }
    let mut out = BTreeMap::new();
    for (v, next) in after {
        let start = *next.keys().next().unwrap();
        let mut order = vec![start];
        let mut cur = next[&start];
        while cur != start {
            order.push(cur);
            assert!(order.len() <= next.len(), "rotation at a vertex is not a single cycle");
            cur = next[&cur];
        }
        assert_eq!(order.len(), next.len(), "rotation at a vertex is not a single cycle");
        out.insert(v, order);
    }
    out
}

/// Traces every face walk of a rotation system: the successor of directed
/// edge (u, v) leaves v towards the neighbour after u in v's rotation.
fn trace_faces(g: &Graph, rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let pos: Vec<BTreeMap<usize, usize>> = rotation
        .iter()
        .map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect())
        .collect();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for u in 0..g.n() {
        for &v0 in &rotation[u] {
            if seen.contains(&(u, v0)) {
                continue;
            }
            let mut walkv = Vec::new();
            let (mut a, mut b) = (u, v0);
            loop {
                walkv.push(a);
                seen.insert((a, b));
                let i = pos[b][&a];
                let c = rotation[b][(i + 1) % rotation[b].len()];
                a = b;
                b = c;
                if (a, b) == (u, v0) {
                    break;
                }
            }
            faces.push(walkv);
        }
    }
    faces
}

/// Adds chords inside faces until every face is a triangle. The host must
/// be connected with at least 3 vertices; the input graph is untouched and
/// is a subgraph of the result.
pub fn triangulate(emb: &Embedding) -> Result<Embedding> {
    let g = &emb.graph;
    if g.n() < 3 {
        return Err(Error::Precondition("triangulation needs at least 3 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("triangulation needs a connected host".into()));
    }
    let mut graph = g.clone();
    let mut faces = emb.faces.clone();
    if !clip_all(&mut graph, &mut faces) {
        return Err(Error::Internal("chord search failed to triangulate a face".into()));
    }
    let rot = rotation_from_walks(&faces);
    let mut rotation = vec![Vec::new(); graph.n()];
    for (v, r) in rot {
        rotation[v] = r;
    }
    assert!(faces.iter().all(|f| f.len() == 3));
    assert_eq!(graph.n() + faces.len(), graph.m() + 2, "triangulation violates Euler's formula");
    Ok(Embedding { graph, rotation, faces })
}

/// Ear-clips the first oversized face: cut corner (a, b, c) off with the
/// chord ac when that chord is new, recurse, and backtrack on dead ends.
/// Complete for simple face cycles since every polygon triangulation has an
/// ear; walk faces with repeated vertices are handled by the same search.
fn clip_all(graph: &mut Graph, faces: &mut Vec<Vec<usize>>) -> bool {
    let idx = match faces.iter().position(|f| f.len() > 3) {
        None => return true,
        Some(i) => i,
    };
    let m = faces[idx].len();
    for corner in 0..m {
        let a = faces[idx][(corner + m - 1) % m];
        let b = faces[idx][corner];
        let c = faces[idx][(corner + 1) % m];
        if a == c || graph.has_edge(a, c) {
            continue;
        }
        graph.add_edge(a, c);
        let saved = faces[idx].clone();
        faces[idx].remove(corner);
        faces.push(vec![a, b, c]);
        if clip_all(graph, faces) {
            return true;
        }
        faces.pop();
        faces[idx] = saved;
        graph.remove_edge(a, c);
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonSeparableClass {
    Outerplanar,
    WheelSubgraph,
    ElongatedPrismSubgraph,
    NotNonSeparable,
}

impl std::fmt::Display for NonSeparableClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NonSeparableClass::Outerplanar => "outerplanar",
            NonSeparableClass::WheelSubgraph => "wheel-subgraph",
            NonSeparableClass::ElongatedPrismSubgraph => "prism-subgraph",
            NonSeparableClass::NotNonSeparable => "not-non-separable",
        };
        write!(f, "{s}")
    }
}

/// Classifies a graph against the three shapes that can appear as bags of
/// refined decompositions of planar graphs. The gate comes first: non-planar
/// inputs and those containing one of the three forbidden minors are out.
/// The remaining graphs must land in one of the positive classes, in the
/// fixed priority order; escaping all three is an internal error.
pub fn classify_nonseparable(g: &Graph) -> Result<NonSeparableClass> {
    check_cap("classification host", g.n(), limits::effective(limits::CLASSIFY))?;
    if planarity_embed(g).is_none() {
        return Ok(NonSeparableClass::NotNonSeparable);
    }
    for pat in [k1_union_k4(), k1_union_k23(), k113()] {
        if crate::minor::is_minor(g, &pat)?.is_some() {
            return Ok(NonSeparableClass::NotNonSeparable);
        }
    }
    if crate::minor::is_minor(g, &Graph::complete(4))?.is_none()
        && crate::minor::is_minor(g, &Graph::complete_bipartite(2, 3))?.is_none()
    {
        return Ok(NonSeparableClass::Outerplanar);
    }
    if (0..g.n()).any(|hub| fits_cycle_without(g, hub)) {
        return Ok(NonSeparableClass::WheelSubgraph);
    }
    if fits_elongated_prism(g) {
        return Ok(NonSeparableClass::ElongatedPrismSubgraph);
    }
    Err(Error::Internal(
        "planar graph without the forbidden minors escaped all three classes".into(),
    ))
}

fn k1_union_k4() -> Graph {
    let mut g = Graph::new(5);
    for u in 1..5 {
        for v in u + 1..5 {
            g.add_edge(u, v);
        }
    }
    g
}

fn k1_union_k23() -> Graph {
    Graph::from_edges(6, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
}

fn k113() -> Graph {
    let mut g = Graph::complete_bipartite(2, 3);
    g.add_edge(0, 1);
    g
}

/// g − hub must fit inside one cycle on the remaining vertices: max degree
/// ≤ 2 and either a forest or a single spanning cycle.
fn fits_cycle_without(g: &Graph, hub: usize) -> bool {
    let rest: Vec<usize> = (0..g.n()).filter(|&v| v != hub).collect();
    let deg = |v: usize| g.neighbor_set(v).iter().filter(|&&w| w != hub).count();
    if rest.iter().any(|&v| deg(v) > 2) {
        return false;
    }
    let m: usize = rest.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    let removed: BTreeSet<usize> = [hub].into_iter().collect();
    let comps = g.components(&removed);
    if m + comps.len() == rest.len() {
        return true;
    }
    comps.len() == 1 && rest.iter().all(|&v| deg(v) == 2)
}

/// Subgraph embedding into some elongated triangular prism. Unused rail
/// vertices can always be spliced out of an embedding, so rails with at
/// most n internal vertices in total suffice.
fn fits_elongated_prism(g: &Graph) -> bool {
    if g.max_degree() > 3 {
        return false;
    }
    let n = g.n();
    for k1 in 0..=n {
        for k2 in k1..=n {
            if k1 + 2 * k2 > n && k2 > 0 {
                break;
            }
            for k3 in k2..=n {
                if k1 + k2 + k3 > n {
                    break;
                }
                if is_subgraph(g, &Graph::elongated_prism([k1, k2, k3])) {
                    return true;
                }
            }
        }
    }
    false
}

/// Is p isomorphic to a subgraph of h (not necessarily induced)?
fn is_subgraph(p: &Graph, h: &Graph) -> bool {
    if p.n() > h.n() || p.m() > h.m() || p.max_degree() > h.max_degree() {
        return false;
    }
    // BFS order per component from high-degree seeds: everyone after the
    // first in a component touches an earlier vertex
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; p.n()];
    let mut seeds: Vec<usize> = (0..p.n()).collect();
    seeds.sort_by_key(|&v| std::cmp::Reverse(p.degree(v)));
    for &seed in &seeds {
        if placed[seed] {
            continue;
        }
        placed[seed] = true;
        let mut queue = VecDeque::from([seed]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in p.neighbor_set(v) {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut phi = vec![usize::MAX; p.n()];
    let mut used = vec![false; h.n()];
    assign_subgraph(p, h, &order, 0, &mut phi, &mut used)
}

fn assign_subgraph(
    p: &Graph,
    h: &Graph,
    order: &[usize],
    i: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let anchored: Vec<usize> = p
        .neighbor_set(v)
        .iter()
        .copied()
        .filter(|&w| phi[w] != usize::MAX)
        .collect();
    let cands: Vec<usize> = match anchored.first() {
        Some(&w0) => h.neighbor_set(phi[w0]).iter().copied().collect(),
        None => (0..h.n()).collect(),
    };
    for c in cands {
        if used[c] || h.degree(c) < p.degree(v) {
            continue;
        }
        if anchored.iter().any(|&w| !h.has_edge(phi[w], c)) {
            continue;
        }
        phi[v] = c;
        used[c] = true;
        if assign_subgraph(p, h, order, i + 1, phi, used) {
            return true;
        }
        phi[v] = usize::MAX;
        used[c] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate::enumerate_connected;

    #[test]
    fn face_counts_match_euler() {
        assert_eq!(planarity_embed(&Graph::complete(4)).unwrap().faces.len(), 4);
        assert_eq!(planarity_embed(&Graph::grid(3, 3)).unwrap().faces.len(), 5);
        assert_eq!(planarity_embed(&Graph::cycle(4)).unwrap().faces.len(), 2);
        // trees have one face
        assert_eq!(planarity_embed(&Graph::star(4)).unwrap().faces.len(), 1);
        assert_eq!(planarity_embed(&Graph::path_graph(6)).unwrap().faces.len(), 1);
    }

    #[test]
    fn nonplanar_graphs_are_rejected() {
        assert!(planarity_embed(&Graph::complete(5)).is_none());
        assert!(planarity_embed(&Graph::complete_bipartite(3, 3)).is_none());
        assert!(planarity_embed(&Graph::petersen()).is_none());
        // planar after removing one edge of K_5
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        assert!(planarity_embed(&g).is_some());
    }

    #[test]
    fn disconnected_hosts_embed_componentwise() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let emb = planarity_embed(&g).unwrap();
        // two triangles with two faces each; the isolated vertex adds none
        assert_eq!(emb.faces.len(), 4);
        assert!(emb.rotation[6].is_empty());
    }

    #[test]
    fn planarity_agrees_with_forbidden_minors() {
        let k5 = Graph::complete(5);
        let k33 = Graph::complete_bipartite(3, 3);
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                let planar = planarity_embed(&g).is_some();
                let wagner = crate::minor::is_minor(&g, &k5).unwrap().is_none()
                    && crate::minor::is_minor(&g, &k33).unwrap().is_none();
                assert_eq!(planar, wagner, "g={:?}", g.edges());
            }
        }
    }

    #[test]
    fn embeddings_of_random_triangulations_are_already_maximal() {
        for seed in 0..4u64 {
            let g = Graph::random_planar_triangulation(30, seed);
            let emb = planarity_embed(&g).unwrap();
            assert_eq!(emb.faces.len(), 2 * 30 - 4);
            assert!(emb.faces.iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn triangulation_chord_counts_are_euler_forced() {
        // a triangulation on n vertices has exactly 3n−6 edges, so the
        // number of added chords is forced
        for (g, added) in [
            (Graph::cycle(4), 2),
            (Graph::grid(3, 3), 9),
            (Graph::complete(4), 0),
            (Graph::path_graph(3), 1),
            (Graph::star(4), 5),
        ] {
            let emb = planarity_embed(&g).unwrap();
            let t = triangulate(&emb).unwrap();
            assert_eq!(t.graph.m(), g.m() + added, "edges={:?}", g.edges());
            assert_eq!(t.graph.m(), 3 * g.n() - 6);
            assert!(t.faces.iter().all(|f| f.len() == 3));
            for (u, v) in g.edges() {
                assert!(t.graph.has_edge(u, v));
            }
        }
    }

    #[test]
    fn triangulation_of_random_planar_graphs() {
        for seed in 0..5u64 {
            let g = Graph::random_planar_connected(12, seed, 7, 10);
            let emb = planarity_embed(&g).unwrap();
            let t = triangulate(&emb).unwrap();
            assert_eq!(t.graph.m(), 3 * 12 - 6);
            assert!(planarity_embed(&t.graph).is_some());
        }
    }

    #[test]
    fn triangulation_rejects_tiny_and_disconnected_hosts() {
        let emb = planarity_embed(&Graph::path_graph(2)).unwrap();
        assert!(matches!(triangulate(&emb), Err(Error::Precondition(_))));
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let emb = planarity_embed(&two).unwrap();
        assert!(matches!(triangulate(&emb), Err(Error::Precondition(_))));
    }

    #[test]
    fn classify_examples() {
        use NonSeparableClass::*;
        assert_eq!(classify_nonseparable(&Graph::cycle(4)).unwrap(), Outerplanar);
        assert_eq!(classify_nonseparable(&Graph::path_graph(5)).unwrap(), Outerplanar);
        assert_eq!(classify_nonseparable(&Graph::complete(4)).unwrap(), WheelSubgraph);
        assert_eq!(classify_nonseparable(&Graph::wheel(6)).unwrap(), WheelSubgraph);
        // K_{2,3} fits a 4-wheel: rim x a y z with hub b
        assert_eq!(classify_nonseparable(&Graph::complete_bipartite(2, 3)).unwrap(), WheelSubgraph);
        assert_eq!(
            classify_nonseparable(&Graph::elongated_prism([0, 0, 0])).unwrap(),
            ElongatedPrismSubgraph
        );
        assert_eq!(
            classify_nonseparable(&Graph::elongated_prism([1, 2, 0])).unwrap(),
            ElongatedPrismSubgraph
        );
        assert_eq!(classify_nonseparable(&k1_union_k4()).unwrap(), NotNonSeparable);
        assert_eq!(classify_nonseparable(&Graph::complete(5)).unwrap(), NotNonSeparable);
        assert_eq!(classify_nonseparable(&Graph::complete_bipartite(3, 3)).unwrap(), NotNonSeparable);
    }

    #[test]
    fn positive_classes_have_treewidth_at_most_three() {
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                let class = classify_nonseparable(&g).unwrap();
                if class != NonSeparableClass::NotNonSeparable {
                    let (tw, _) = crate::exact::treewidth_exact(&g).unwrap();
                    assert!(tw <= 3, "g={:?} class={class}", g.edges());
                }
            }
        }
    }

    #[test]
    fn gate_is_equivalent_to_the_positive_classes() {
        // also exercises the defensive escape: every gate-passing graph
        // must land in a positive class
        for n in 1..=6 {
            for g in enumerate_connected(n).unwrap() {
                let class = classify_nonseparable(&g).unwrap();
                let gate = planarity_embed(&g).is_some()
                    && crate::minor::is_minor(&g, &k1_union_k4()).unwrap().is_none()
                    && crate::minor::is_minor(&g, &k1_union_k23()).unwrap().is_none()
                    && crate::minor::is_minor(&g, &k113()).unwrap().is_none();
                assert_eq!(class != NonSeparableClass::NotNonSeparable, gate, "g={:?}", g.edges());
            }
        }
    }

    #[test]
    fn classification_respects_the_size_cap() {
        let err = classify_nonseparable(&Graph::path_graph(15)).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }
}
