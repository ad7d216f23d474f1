/*!
Lower-bound gadgets built from a drawing of a base graph.

The pipeline: planarize the drawing (crossings become degree-4 vertices),
root a spanning tree of the dual at the outer face, and classify edges and
vertices by the face position that first claims them. The construction then
walks the face positions from the deepest up, subdividing each position's
edges, attaching fans of auxiliary vertices into every face at or above the
current one, and joining everything inside each face. The result is a graph
`G` drawn with at most one crossing per edge, together with the set `S` of
base and subdivision vertices; `G[S]` is a subdivision of the base graph, a
star decomposition certifies `tw(G) ≤ |S|`, and each sampled pair from `S`
gets `2c+4` internally disjoint `S`-avoiding paths routed through fan
vertices reserved for that pair alone.
*/

use crate::flow::max_disjoint_paths;
use crate::minor::is_subdivision_of;
use crate::planar::planarity_embed;
use crate::{Error, Graph, Result, TreeDecomposition};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A drawing of a simple graph: edges in file order plus a crossing list.
/// Each crossing names its two edges and its 1-based rank along each, so
/// the order of crossings along every edge is part of the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub graph: Graph,
    /// endpoints as written; the index in this list is the edge id
    pub edges: Vec<(usize, usize)>,
    /// (edge a, rank along a, edge b, rank along b)
    pub crossings: Vec<(usize, usize, usize, usize)>,
}

impl Drawing {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        crossings: Vec<(usize, usize, usize, usize)>,
    ) -> Result<Drawing> {
        let mut graph = Graph::new(n);
        for &(u, w) in &edges {
            if u >= n || w >= n {
                return Err(Error::Precondition(format!("edge {u}-{w} outside the vertex range")));
            }
            if u == w {
                return Err(Error::Precondition(format!("self-loop at {u}")));
            }
            if graph.has_edge(u, w) {
                return Err(Error::Precondition(format!("duplicate edge {u}-{w}")));
            }
            graph.add_edge(u, w);
        }
        let d = Drawing { graph, edges, crossings };
        d.check()?;
        Ok(d)
    }

    pub fn crossing_free(g: &Graph) -> Drawing {
        Drawing { graph: g.clone(), edges: g.edges(), crossings: Vec::new() }
    }

    fn check(&self) -> Result<()> {
        let m = self.edges.len();
        let mut per_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(e1, p1, e2, p2) in &self.crossings {
            if e1 >= m || e2 >= m {
                return Err(Error::Precondition("crossing names an unknown edge".into()));
            }
            if e1 == e2 {
                return Err(Error::Precondition("an edge cannot cross itself".into()));
            }
            per_edge[e1].push(p1);
            per_edge[e2].push(p2);
        }
        for (e, ranks) in per_edge.iter().enumerate() {
            let mut sorted = ranks.clone();
            sorted.sort_unstable();
            if sorted != (1..=ranks.len()).collect::<Vec<_>>() {
                return Err(Error::Precondition(format!(
                    "crossing ranks along edge {e} are not 1..{}",
                    ranks.len()
                )));
            }
        }
        Ok(())
    }

    /// Crossing indices along one edge, nearest the written tail first.
    fn along(&self, e: usize) -> Vec<usize> {
        let mut hits: Vec<(usize, usize)> = Vec::new();
        for (i, &(e1, p1, e2, p2)) in self.crossings.iter().enumerate() {
            if e1 == e {
                hits.push((p1, i));
            }
            if e2 == e {
                hits.push((p2, i));
            }
        }
        hits.sort_unstable();
        hits.into_iter().map(|(_, i)| i).collect()
    }
}

/// `v <n>`, then `e <id> <u> <w>` with ids 1,2,... in order, then
/// `x <e1> <p1> <e2> <p2>` lines; everything 1-indexed, `c` comments allowed.
pub fn read_draw(text: &str) -> Result<Drawing> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut crossings = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let fail = |msg: String| Error::Parse { line: lineno, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse { line: lineno, msg: format!("not a number: {tok:?}") })
        };
        match toks[0] {
            "v" => {
                if n.is_some() || toks.len() != 2 {
                    return Err(fail("expected a single 'v <n>' line first".into()));
                }
                n = Some(num(toks[1])?);
            }
            "e" => {
                let n = n.ok_or_else(|| fail("'e' before 'v'".into()))?;
                if toks.len() != 4 {
                    return Err(fail("expected 'e <id> <u> <w>'".into()));
                }
                if num(toks[1])? != edges.len() + 1 {
                    return Err(fail(format!("expected edge id {}", edges.len() + 1)));
                }
                let (u, w) = (num(toks[2])?, num(toks[3])?);
                if u == 0 || u > n || w == 0 || w > n {
                    return Err(fail(format!("endpoint outside 1..={n}")));
                }
                edges.push((u - 1, w - 1));
            }
            "x" => {
                if toks.len() != 5 {
                    return Err(fail("expected 'x <e1> <p1> <e2> <p2>'".into()));
                }
                let vals: Vec<usize> = toks[1..].iter().map(|t| num(t)).collect::<Result<_>>()?;
                if vals[0] == 0 || vals[2] == 0 {
                    return Err(fail("edge ids are 1-indexed".into()));
                }
                crossings.push((vals[0] - 1, vals[1], vals[2] - 1, vals[3]));
            }
            other => return Err(fail(format!("unknown record {other:?}"))),
        }
    }
    let n = n.ok_or(Error::Parse { line: 1, msg: "missing 'v <n>' line".into() })?;
    Drawing::new(n, edges, crossings)
}

pub fn write_draw(d: &Drawing) -> String {
    let mut out = format!("v {}\n", d.graph.n());
    for (i, &(u, w)) in d.edges.iter().enumerate() {
        out.push_str(&format!("e {} {} {}\n", i + 1, u + 1, w + 1));
    }
    let mut lines: Vec<(usize, usize, usize, usize)> = d
        .crossings
        .iter()
        .map(|&(e1, p1, e2, p2)| if e1 <= e2 { (e1, p1, e2, p2) } else { (e2, p2, e1, p1) })
        .collect();
    lines.sort_unstable();
    for (e1, p1, e2, p2) in lines {
        out.push_str(&format!("x {} {} {} {}\n", e1 + 1, p1, e2 + 1, p2));
    }
    out
}

/// The planarized drawing with the face, class, and dual-tree data the
/// construction consumes. Face positions run 0..=s with the outer face at
/// position s; every position's parent in the dual tree sits strictly
/// higher.
#[derive(Debug, Clone)]
pub struct Planarization {
    pub h: Graph,
    /// H-vertex of each crossing, indexed like `drawing.crossings`
    pub crossing_vertex: Vec<usize>,
    /// per drawing edge: its walk through H (endpoints and crossing vertices)
    pub segments: Vec<Vec<usize>>,
    /// sorted H-edge list; the index is the H-edge id
    pub h_edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
    /// face (index into `faces`) sitting at each position
    pub order: Vec<usize>,
    /// per position i < s: the parent position in the dual tree
    pub parent: Vec<usize>,
    /// per position i < s: the H-edge crossed to reach the parent
    pub door: Vec<usize>,
    /// per H-edge: the position that claimed it
    pub edge_class: Vec<usize>,
    /// per base vertex: the position that claimed it
    pub vertex_class: Vec<usize>,
}

pub fn planarize(d: &Drawing) -> Result<Planarization> {
    d.check()?;
    let n0 = d.graph.n();
    if n0 < 2 || !d.graph.is_connected() {
        return Err(Error::Precondition("base graph must be connected with at least one edge".into()));
    }
    // crossing vertices, ordered by (smaller edge, rank along it)
    let mut keyed: Vec<(usize, usize, usize)> = d
        .crossings
        .iter()
        .enumerate()
        .map(|(i, &(e1, p1, e2, p2))| if e1 <= e2 { (e1, p1, i) } else { (e2, p2, i) })
        .collect();
    keyed.sort_unstable();
    let mut crossing_vertex = vec![usize::MAX; d.crossings.len()];
    for (rank, &(_, _, i)) in keyed.iter().enumerate() {
        crossing_vertex[i] = n0 + rank;
    }
    let mut h = Graph::new(n0 + d.crossings.len());
    let mut segments = Vec::with_capacity(d.edges.len());
    for (e, &(u, w)) in d.edges.iter().enumerate() {
        let mut walk = vec![u];
        walk.extend(d.along(e).into_iter().map(|i| crossing_vertex[i]));
        walk.push(w);
        for pair in walk.windows(2) {
            if h.has_edge(pair[0], pair[1]) {
                return Err(Error::Precondition(
                    "planarization is not simple (two crossings adjacent along both edges)".into(),
                ));
            }
            h.add_edge(pair[0], pair[1]);
        }
        segments.push(walk);
    }
    let emb = planarity_embed(&h)
        .ok_or_else(|| Error::Precondition("crossing data admits no planar arrangement".into()))?;
    let faces = emb.faces.clone();
    let h_edges = h.edges();
    let h_edge_id: BTreeMap<(usize, usize), usize> =
        h_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let face_of = emb.face_of();
    let mut face_edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); faces.len()];
    for (f, walk) in faces.iter().enumerate() {
        for t in 0..walk.len() {
            let (a, b) = (walk[t], walk[(t + 1) % walk.len()]);
            face_edges[f].insert(h_edge_id[&(a.min(b), a.max(b))]);
        }
    }
    // root at the outer face: longest walk, first on ties
    let root = (0..faces.len()).max_by_key(|&f| (faces[f].len(), usize::MAX - f)).unwrap();
    let mut rank = vec![usize::MAX; faces.len()];
    rank[root] = 0;
    let mut door_of_face = vec![usize::MAX; faces.len()];
    let mut parent_face = vec![usize::MAX; faces.len()];
    let mut discovered = 1;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        for &e in &face_edges[f] {
            let (a, b) = h_edges[e];
            let (fa, fb) = (face_of[&(a, b)], face_of[&(b, a)]);
            let other = if fa == f { fb } else { fa };
            if other == f || rank[other] != usize::MAX {
                continue;
            }
            rank[other] = discovered;
            discovered += 1;
            door_of_face[other] = e;
            parent_face[other] = f;
            queue.push_back(other);
        }
    }
    assert_eq!(discovered, faces.len(), "dual graph is connected");
    let s = faces.len() - 1;
    let mut order = vec![usize::MAX; faces.len()];
    for f in 0..faces.len() {
        order[s - rank[f]] = f;
    }
    let parent: Vec<usize> = (0..s).map(|i| s - rank[parent_face[order[i]]]).collect();
    let door: Vec<usize> = (0..s).map(|i| door_of_face[order[i]]).collect();
    let mut edge_class = vec![usize::MAX; h_edges.len()];
    for i in 0..=s {
        for &e in &face_edges[order[i]] {
            if edge_class[e] == usize::MAX && !(i < s && door[i] == e) {
                edge_class[e] = i;
            }
        }
    }
    assert!(edge_class.iter().all(|&c| c != usize::MAX), "every edge claimed");
    let mut vertex_class = vec![usize::MAX; n0];
    for i in 0..=s {
        for &v in &faces[order[i]] {
            if v < n0 && vertex_class[v] == usize::MAX {
                vertex_class[v] = i;
            }
        }
    }
    assert!(vertex_class.iter().all(|&c| c != usize::MAX), "every base vertex claimed");
    Ok(Planarization {
        h,
        crossing_vertex,
        segments,
        h_edges,
        faces,
        order,
        parent,
        door,
        edge_class,
        vertex_class,
    })
}

/// Doors crossed on the dual-tree path between positions i and j, in path
/// order starting from i's side. Every door returned has class above
/// min(i, j), because parents sit strictly higher.
fn corridor(parent: &[usize], door: &[usize], i: usize, j: usize) -> Vec<usize> {
    let s = parent.len();
    let chain = |mut x: usize| {
        let mut c = vec![x];
        while x != s {
            x = parent[x];
            c.push(x);
        }
        c
    };
    let ci = chain(i);
    let cj = chain(j);
    let (mut li, mut lj) = (ci.len(), cj.len());
    while li > 0 && lj > 0 && ci[li - 1] == cj[lj - 1] {
        li -= 1;
        lj -= 1;
    }
    let mut out: Vec<usize> = ci[..li].iter().map(|&x| door[x]).collect();
    out.extend(cj[..lj].iter().rev().map(|&x| door[x]));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexKind {
    /// a vertex of the base graph
    Real(usize),
    /// subdivision vertex on an H-edge, `slot` counted from the walk tail
    Seg { h_edge: usize, slot: usize },
    /// fan tip a_{owner, face, y}
    Aux { owner: usize, face: usize, y: usize },
    /// subdivision vertex on a fan edge, `slot` counted from the owner
    FanSeg { fan: usize, slot: usize },
}

#[derive(Debug, Clone)]
pub struct Fan {
    pub owner: usize,
    pub face: usize,
    pub y: usize,
    pub tip: usize,
    /// H-edges whose pieces this fan edge crosses, in path order
    pub doors: Vec<usize>,
    /// subdivision vertices of the fan edge, owner side first
    pub subs: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GadgetResult {
    pub graph: Graph,
    pub s: BTreeSet<usize>,
    pub drawing: Drawing,
    /// (owner, face, y) → fan tip
    pub aux: BTreeMap<(usize, usize, usize), usize>,
    pub kinds: Vec<VertexKind>,
    pub fans: Vec<Fan>,
    pub g0: Graph,
}

/// The square 0-1-2-3 with both diagonals drawn inside; the diagonals
/// cross once. The smallest drawing with a genuine crossing.
pub fn one_crossing_k4() -> Drawing {
    Drawing::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], vec![(1, 1, 4, 1)])
        .unwrap()
}

pub fn build_gadget(d: &Drawing, c: usize) -> Result<GadgetResult> {
    let p = planarize(d)?;
    let positions = p.order.len();
    let fan_width = 2 * c + 4;
    let n0 = d.graph.n();
    let mut kinds: Vec<VertexKind> = (0..n0).map(VertexKind::Real).collect();
    let mut chains: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut door_cross: Vec<Vec<usize>> = vec![Vec::new(); p.h_edges.len()];
    let mut fans: Vec<Fan> = Vec::new();
    let mut aux: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut claimed: Vec<usize> = Vec::new(); // X_0 ∪ … ∪ X_{i-1}
    let mut in_face: Vec<(usize, usize)> = Vec::new();
    for i in 0..positions {
        let mut x_i: BTreeSet<usize> = (0..n0).filter(|&v| p.vertex_class[v] == i).collect();
        // subdivide this position's edges; every crossing they will ever
        // carry is already recorded, because later fans only cross doors
        // above their own position
        for e in 0..p.h_edges.len() {
            if p.edge_class[e] != i {
                continue;
            }
            let t = door_cross[e].len();
            let subs: Vec<usize> = (0..t + 1)
                .map(|slot| {
                    kinds.push(VertexKind::Seg { h_edge: e, slot });
                    kinds.len() - 1
                })
                .collect();
            x_i.extend(subs.iter().copied());
            chains.insert(e, subs);
        }
        for &v in &x_i {
            for j in i..positions {
                let doors = corridor(&p.parent, &p.door, i, j);
                debug_assert!(doors.iter().all(|dr| !chains.contains_key(dr)));
                for y in 1..=fan_width {
                    kinds.push(VertexKind::Aux { owner: v, face: j, y });
                    let tip = kinds.len() - 1;
                    aux.insert((v, j, y), tip);
                    for &dr in &doors {
                        door_cross[dr].push(fans.len());
                    }
                    fans.push(Fan { owner: v, face: j, y, tip, doors: doors.clone(), subs: Vec::new() });
                }
            }
        }
        // joins drawn inside this face: each new vertex to the fans of
        // every vertex claimed so far
        let mut pool = claimed.clone();
        pool.extend(x_i.iter().copied());
        pool.sort_unstable();
        for &v in &x_i {
            for &w in &pool {
                if w == v {
                    continue;
                }
                for y in 1..=fan_width {
                    in_face.push((v, aux[&(w, i, y)]));
                }
            }
        }
        claimed.extend(x_i.iter().copied());
    }
    // stitch the subdivided segments into one path per base edge; crossing
    // vertices vanish, leaving their two flanking subdivision vertices
    // adjacent, with that edge carrying the base crossing
    let h_edge_id: BTreeMap<(usize, usize), usize> =
        p.h_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let hvertex_to_cross: BTreeMap<usize, usize> = p
        .crossing_vertex
        .iter()
        .enumerate()
        .map(|(x, &hv)| (hv, x))
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut pieces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p.h_edges.len()];
    let mut straddles: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.crossings.len()];
    for walk in &p.segments {
        let mut flat = vec![walk[0]];
        let mut spans = Vec::new(); // (h_edge, flat index of its left flank)
        let mut cross_at = Vec::new(); // (crossing, flat index left of it)
        for q in 0..walk.len() - 1 {
            let (a, b) = (walk[q], walk[q + 1]);
            let e = h_edge_id[&(a.min(b), a.max(b))];
            spans.push((e, flat.len() - 1));
            flat.extend(chains[&e].iter().copied());
            match hvertex_to_cross.get(&b) {
                Some(&x) => cross_at.push((x, flat.len() - 1)),
                None => flat.push(b),
            }
        }
        for w in flat.windows(2) {
            edges.push((w[0], w[1]));
        }
        for &(e, left) in &spans {
            let count = chains[&e].len() + 1;
            pieces[e] = (0..count).map(|k| (flat[left + k], flat[left + k + 1])).collect();
        }
        for &(x, idx) in &cross_at {
            straddles[x].push((flat[idx], flat[idx + 1]));
        }
    }
    // final pass: split each fan edge so no piece carries two door
    // crossings; piece k takes the k-th door of the corridor
    let mut crossing_pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for f in 0..fans.len() {
        let t = fans[f].doors.len();
        if t >= 2 {
            fans[f].subs = (0..t - 1)
                .map(|slot| {
                    kinds.push(VertexKind::FanSeg { fan: f, slot });
                    kinds.len() - 1
                })
                .collect();
        }
        let chain: Vec<usize> = [fans[f].owner]
            .into_iter()
            .chain(fans[f].subs.iter().copied())
            .chain([fans[f].tip])
            .collect();
        for w in chain.windows(2) {
            edges.push((w[0], w[1]));
        }
        for (k, &dr) in fans[f].doors.iter().enumerate() {
            let m = door_cross[dr].iter().position(|&ff| ff == f).unwrap();
            crossing_pairs.push(((chain[k], chain[k + 1]), pieces[dr][m + 1]));
        }
    }
    for x in 0..d.crossings.len() {
        assert_eq!(straddles[x].len(), 2);
        crossing_pairs.push((straddles[x][0], straddles[x][1]));
    }
    edges.extend(in_face.iter().copied());
    let graph = Graph::from_edges(kinds.len(), &edges);
    assert_eq!(graph.m(), edges.len(), "output edges are pairwise distinct");
    let sorted_edges = graph.edges();
    let eid: BTreeMap<(usize, usize), usize> =
        sorted_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut out_crossings: Vec<(usize, usize, usize, usize)> = crossing_pairs
        .iter()
        .map(|&((ua, wa), (ub, wb))| {
            let a = eid[&(ua.min(wa), ua.max(wa))];
            let b = eid[&(ub.min(wb), ub.max(wb))];
            let (a, b) = (a.min(b), a.max(b));
            (a, 1, b, 1)
        })
        .collect();
    out_crossings.sort_unstable();
    let drawing = Drawing { graph: graph.clone(), edges: sorted_edges, crossings: out_crossings };
    drawing
        .check()
        .map_err(|_| Error::Internal("an output edge is crossed more than once".into()))?;
    let s: BTreeSet<usize> = kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| matches!(k, VertexKind::Real(_) | VertexKind::Seg { .. }))
        .map(|(v, _)| v)
        .collect();
    Ok(GadgetResult { graph, s, drawing, aux, kinds, fans, g0: d.graph.clone() })
}

/// The width-≤-|S| certificate: one central bag holding S, one bag per fan
/// tip with its pre-subdivision neighbourhood, and a short chain of bags
/// along each subdivided fan edge that keeps the owner throughout.
pub fn star_decomposition(res: &GadgetResult) -> TreeDecomposition {
    let mut bags: Vec<BTreeSet<usize>> = vec![res.s.iter().copied().collect()];
    let mut edges = Vec::new();
    let mut node_of_tip: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, kind) in res.kinds.iter().enumerate() {
        if let VertexKind::Aux { owner, .. } = kind {
            let mut bag: BTreeSet<usize> = res
                .graph
                .neighbor_set(v)
                .iter()
                .copied()
                .filter(|w| res.s.contains(w))
                .collect();
            bag.insert(v);
            bag.insert(*owner);
            bags.push(bag);
            node_of_tip.insert(v, bags.len() - 1);
            edges.push((0, bags.len() - 1));
        }
    }
    for fan in &res.fans {
        if fan.subs.is_empty() {
            continue;
        }
        let k = fan.subs.len();
        let mut prev = node_of_tip[&fan.tip];
        bags.push([fan.owner, fan.tip, fan.subs[k - 1]].into());
        edges.push((prev, bags.len() - 1));
        prev = bags.len() - 1;
        for m in (0..k - 1).rev() {
            bags.push([fan.owner, fan.subs[m + 1], fan.subs[m]].into());
            edges.push((prev, bags.len() - 1));
            prev = bags.len() - 1;
        }
        bags.push([fan.owner, fan.subs[0]].into());
        edges.push((prev, bags.len() - 1));
    }
    TreeDecomposition::new(res.graph.n(), bags, edges)
}

#[derive(Debug, Clone)]
pub struct GadgetReport {
    pub drawing_ok: bool,
    pub subdivision_ok: bool,
    pub star_ok: bool,
    pub star_width: i64,
    pub bundles_checked: usize,
    pub bundle_failures: usize,
    pub failures: Vec<String>,
}

impl GadgetReport {
    pub fn all_pass(&self) -> bool {
        self.drawing_ok && self.subdivision_ok && self.star_ok && self.bundle_failures == 0
    }
}

/// Certificate checks on a build result: (i) the carried drawing is
/// consistent with at most one crossing per edge; (ii) S induces a
/// subdivision of the base graph; (iii) the star decomposition validates
/// with width at most |S|; (iv) sampled disjoint pairs of S each carry
/// `2c+4` internally disjoint S-avoiding paths. Each pair's paths run
/// through fan vertices owned by that pair alone, so the path systems of
/// the pairs in one collection are disjoint as a whole.
pub fn verify_gadget(res: &GadgetResult, c: usize, samples: usize, seed: u64) -> GadgetReport {
    let mut failures = Vec::new();
    let mut drawing_ok = res.drawing.check().is_ok() && res.drawing.graph == res.graph;
    if drawing_ok {
        let mut counts = vec![0usize; res.drawing.edges.len()];
        for &(e1, _, e2, _) in &res.drawing.crossings {
            counts[e1] += 1;
            counts[e2] += 1;
        }
        drawing_ok = counts.iter().all(|&k| k <= 1);
    }
    if !drawing_ok {
        failures.push("drawing: inconsistent or an edge crossed more than once".into());
    }
    let (gs, _) = res.graph.induced(&res.s);
    let subdivision_ok = matches!(is_subdivision_of(&gs, &res.g0), Ok(Some(_)));
    if !subdivision_ok {
        failures.push("subdivision: S does not induce a subdivision of the base graph".into());
    }
    let dec = star_decomposition(res);
    let star_width = dec.width();
    let star_ok = dec.is_valid(&res.graph) && star_width <= res.s.len() as i64;
    if !star_ok {
        failures.push(format!(
            "star: decomposition invalid or width {} above |S| = {}",
            star_width,
            res.s.len()
        ));
    }
    let mut owned: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, kind) in res.kinds.iter().enumerate() {
        match kind {
            VertexKind::Aux { owner, .. } => owned.entry(*owner).or_default().push(v),
            VertexKind::FanSeg { fan, .. } => owned.entry(res.fans[*fan].owner).or_default().push(v),
            _ => {}
        }
    }
    let s_vec: Vec<usize> = res.s.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need = 2 * c + 4;
    let mut bundles_checked = 0;
    let mut bundle_failures = 0;
    for sample in 0..samples {
        let mut perm = s_vec.clone();
        perm.shuffle(&mut rng);
        for pair in perm.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            let mut keep: BTreeSet<usize> = [a, b].into();
            keep.extend(owned.get(&a).into_iter().flatten().copied());
            keep.extend(owned.get(&b).into_iter().flatten().copied());
            let (sub, ids) = res.graph.induced(&keep);
            let local = |v: usize| ids.binary_search(&v).unwrap();
            let bundle =
                max_disjoint_paths(&sub, &[local(a)].into(), &[local(b)].into(), &BTreeSet::new());
            bundles_checked += 1;
            if bundle.count() < need {
                bundle_failures += 1;
                failures.push(format!(
                    "bundle: sample {sample} pair ({a},{b}) carries {} of {need} paths",
                    bundle.count()
                ));
            }
        }
    }
    GadgetReport {
        drawing_ok,
        subdivision_ok,
        star_ok,
        star_width,
        bundles_checked,
        bundle_failures,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_drawing() -> Drawing {
        Drawing::crossing_free(&Graph::complete(3))
    }

    fn c4_drawing() -> Drawing {
        Drawing::crossing_free(&Graph::cycle(4))
    }

    fn k4_one_crossing() -> Drawing {
        one_crossing_k4()
    }

    /// Drops every edge at `v`, keeping ids, and rebuilds the carried
    /// drawing consistently.
    fn isolate(res: &GadgetResult, v: usize) -> GadgetResult {
        let mut out = res.clone();
        let nbrs: Vec<usize> = out.graph.neighbor_set(v).iter().copied().collect();
        for w in nbrs {
            out.graph.remove_edge(v, w);
        }
        let survived = out.graph.edges();
        let old_id: BTreeMap<(usize, usize), usize> = res
            .drawing
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, w))| ((u.min(w), u.max(w)), i))
            .collect();
        let keep: BTreeMap<usize, usize> =
            survived.iter().enumerate().map(|(i, &e)| (old_id[&e], i)).collect();
        out.drawing = Drawing {
            graph: out.graph.clone(),
            edges: survived,
            crossings: res
                .drawing
                .crossings
                .iter()
                .filter_map(|&(e1, p1, e2, p2)| Some((*keep.get(&e1)?, p1, *keep.get(&e2)?, p2)))
                .collect(),
        };
        out
    }

    #[test]
    fn drawing_files_round_trip() {
        for d in [k3_drawing(), k4_one_crossing()] {
            let text = write_draw(&d);
            let back = read_draw(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(write_draw(&back), text);
        }
    }

    #[test]
    fn drawing_reader_rejects_malformed_input() {
        let cases = [
            ("e 1 1 2\nv 2\n", "before"),
            ("v 2\ne 2 1 2\n", "edge id"),
            ("v 2\ne 1 1 2\ne 2 1 2\n", "duplicate"),
            ("v 2\ne 1 1 1\n", "self-loop"),
            ("v 2\ne 1 1 3\n", "outside"),
            ("v 4\ne 1 1 2\ne 2 3 4\nx 1 1 3 1\n", "unknown edge"),
            ("v 4\ne 1 1 2\ne 2 3 4\nx 1 2 2 1\n", "ranks"),
            ("v 4\ne 1 1 2\ne 2 3 4\nx 1 1 1 1\n", "cross itself"),
            ("", "missing"),
        ];
        for (text, needle) in cases {
            let err = read_draw(text).unwrap_err();
            let msg = err.to_string();
            assert!(
                msg.to_lowercase().contains(needle),
                "{text:?} gave {msg:?}, wanted {needle:?}"
            );
        }
        // two edges crossing twice parse fine; rejection happens later
        assert!(read_draw("v 4\ne 1 1 2\ne 2 3 4\nx 1 1 2 1\nx 1 2 2 2\n").is_ok());
    }

    #[test]
    fn planarize_triangle_structure() {
        let p = planarize(&k3_drawing()).unwrap();
        assert_eq!(p.h.n(), 3);
        assert_eq!(p.faces.len(), 2);
        assert_eq!(p.parent, vec![1]);
        let mut counts = vec![0usize; 2];
        for &c in &p.edge_class {
            counts[c] += 1;
        }
        assert_eq!(counts, vec![2, 1]);
        assert_eq!(p.vertex_class, vec![0, 0, 0]);
    }

    #[test]
    fn planarize_one_crossing_k4_structure() {
        let p = planarize(&k4_one_crossing()).unwrap();
        assert_eq!(p.h.n(), 5);
        assert_eq!(p.h.degree(4), 4);
        assert_eq!(p.faces.len(), 5);
        // the outer square is the root; the four triangles hang off it
        assert_eq!(p.faces[p.order[4]].len(), 4);
        assert_eq!(p.parent, vec![4, 4, 4, 4]);
        let mut counts = vec![0usize; 5];
        for &c in &p.edge_class {
            counts[c] += 1;
        }
        assert_eq!(counts, vec![2, 1, 1, 0, 4]);
        assert_eq!(p.vertex_class, vec![2, 1, 0, 0]);
    }

    #[test]
    fn planarize_rejects_bad_drawings() {
        let disconnected = Drawing::crossing_free(&Graph::from_edges(4, &[(0, 1), (2, 3)]));
        assert!(planarize(&disconnected).is_err());
        let lone = Drawing::crossing_free(&Graph::new(1));
        assert!(planarize(&lone).is_err());
        let nonplanar = Drawing::crossing_free(&Graph::complete(5));
        assert!(planarize(&nonplanar).is_err());
        // two crossings adjacent along both edges would make the
        // planarization a multigraph
        let doubled = Drawing::new(
            4,
            vec![(0, 1), (2, 3)],
            vec![(0, 1, 1, 1), (0, 2, 1, 2)],
        )
        .unwrap();
        assert!(planarize(&doubled).is_err());
    }

    #[test]
    fn gadget_on_a_triangle_matches_hand_counts() {
        let res = build_gadget(&k3_drawing(), 0).unwrap();
        assert_eq!(res.s.len(), 26);
        assert_eq!(res.graph.n(), 150);
        assert_eq!(res.graph.m(), 2330);
        assert_eq!(res.drawing.crossings.len(), 20);
        assert_eq!(res.fans.len(), 124);
        assert!(res.fans.iter().all(|f| f.subs.is_empty()));
        assert!(res.aux.contains_key(&(0, 1, 1)));
    }

    #[test]
    fn gadget_verifies_end_to_end() {
        for d in [k3_drawing(), c4_drawing()] {
            let res = build_gadget(&d, 0).unwrap();
            for seed in 0..2 {
                let rep = verify_gadget(&res, 0, 5, seed);
                assert!(rep.all_pass(), "{:?}", rep.failures);
            }
        }
    }

    #[test]
    fn gadget_with_a_real_crossing_verifies() {
        let res = build_gadget(&k4_one_crossing(), 0).unwrap();
        // two-door corridors force subdivided fan edges
        assert!(res.fans.iter().any(|f| !f.subs.is_empty()));
        // the base crossing survives between two S-path pieces
        assert!(res.drawing.crossings.iter().any(|&(e1, _, e2, _)| {
            let (u1, w1) = res.drawing.edges[e1];
            let (u2, w2) = res.drawing.edges[e2];
            [u1, w1, u2, w2].iter().all(|v| res.s.contains(v))
        }));
        let rep = verify_gadget(&res, 0, 3, 0);
        assert!(rep.all_pass(), "{:?}", rep.failures);
    }

    #[test]
    fn star_decomposition_certifies_the_width_bound() {
        let res = build_gadget(&k3_drawing(), 0).unwrap();
        let dec = star_decomposition(&res);
        assert!(dec.is_valid(&res.graph));
        assert_eq!(dec.width(), 25);
    }

    #[test]
    fn gadget_size_grows_with_c() {
        let sizes: Vec<usize> = (0..3)
            .map(|c| build_gadget(&k3_drawing(), c).unwrap().graph.n())
            .collect();
        assert!(sizes[0] < sizes[1] && sizes[1] < sizes[2], "{sizes:?}");
        let res = build_gadget(&k3_drawing(), 1).unwrap();
        let fan = res
            .fans
            .iter()
            .filter(|f| f.owner == 0 && f.face == 1)
            .count();
        assert_eq!(fan, 6); // 2c+4 tips per vertex and face
    }

    #[test]
    fn single_edge_base_graph_works() {
        let res = build_gadget(&Drawing::crossing_free(&Graph::path_graph(2)), 0).unwrap();
        assert_eq!(res.s.len(), 3);
        assert_eq!(res.graph.n(), 15);
        let rep = verify_gadget(&res, 0, 4, 0);
        assert!(rep.all_pass(), "{:?}", rep.failures);
    }

    #[test]
    fn isolating_a_fan_tip_breaks_some_bundle() {
        let res = build_gadget(&k3_drawing(), 0).unwrap();
        let broken = isolate(&res, res.aux[&(0, 1, 1)]);
        let mut hits = 0;
        for seed in 0..3 {
            hits += verify_gadget(&broken, 0, 10, seed).bundle_failures;
        }
        assert!(hits > 0);
    }

    #[test]
    fn isolating_a_subdivision_vertex_breaks_the_subdivision() {
        let res = build_gadget(&k3_drawing(), 0).unwrap();
        let sub = res
            .kinds
            .iter()
            .position(|k| matches!(k, VertexKind::Seg { .. }))
            .unwrap();
        let rep = verify_gadget(&isolate(&res, sub), 0, 2, 0);
        assert!(!rep.subdivision_ok);
    }
}
