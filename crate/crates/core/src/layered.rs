/*!
Layered decompositions: BFS layerings, layered width, the tree–cotree
construction that gives planar graphs layered width ≤ 3, the √(cn)-width
decomposition built from a layered one, the shallow peeling variant, and
sampled audits of union-of-bags treewidth and pathwidth.
*/

use crate::decomp::normalise;
use crate::planar::{triangulate, Embedding};
use crate::{limits, Error, Graph, Result, TreeDecomposition};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Audits enumerate all k-subsets of bags up to this many, then fall back
/// to the same number of seeded samples.
const UNION_AUDIT_CAP: usize = 5000;

/// An ordered partition of the host's vertices such that every edge stays
/// within one layer or joins consecutive layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    pub layers: Vec<BTreeSet<usize>>,
    pub n: usize,
}

impl Layering {
    /// Which layer each vertex lives in.
    pub fn layer_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                out[v] = i;
            }
        }
        out
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.n != g.n() {
            return Err(Error::Precondition(format!(
                "layering is over {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        let total: usize = self.layers.iter().map(|l| l.len()).sum();
        let covered: BTreeSet<usize> = self.layers.iter().flatten().copied().collect();
        if total != self.n || covered.len() != self.n || covered.iter().any(|&v| v >= self.n) {
            return Err(Error::Precondition("layers do not partition the vertex set".into()));
        }
        let of = self.layer_of();
        for (u, v) in g.edges() {
            if of[u].abs_diff(of[v]) > 1 {
                return Err(Error::Precondition(format!(
                    "edge {u}-{v} spans layers {} and {}",
                    of[u], of[v]
                )));
            }
        }
        Ok(())
    }
}

/// Multi-source BFS layering. Components missing a root get their minimum
/// vertex added as one, so the result always partitions the host.
pub fn bfs_layering(g: &Graph, roots: &BTreeSet<usize>) -> Layering {
    assert!(roots.iter().all(|&r| r < g.n()), "root outside the vertex range");
    let mut seeds = roots.clone();
    for comp in g.components(&BTreeSet::new()) {
        if comp.is_disjoint(&seeds) {
            seeds.insert(*comp.iter().next().unwrap());
        }
    }
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &r in &seeds {
        dist[r] = 0;
        queue.push_back(r);
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbor_set(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let depth = dist.iter().max().map_or(0, |&d| d + 1);
    let mut layers = vec![BTreeSet::new(); depth];
    for (v, &d) in dist.iter().enumerate() {
        layers[d].insert(v);
    }
    Layering { layers, n: g.n() }
}

/// Max over bags and layers of the intersection size.
pub fn layered_width(dec: &TreeDecomposition, layering: &Layering) -> Result<usize> {
    if dec.n != layering.n {
        return Err(Error::Precondition(format!(
            "decomposition over {} vertices, layering over {}",
            dec.n, layering.n
        )));
    }
    let mut best = 0;
    for bag in &dec.bags {
        for layer in &layering.layers {
            best = best.max(bag.intersection(layer).count());
        }
    }
    Ok(best)
}

/// Tree–cotree construction: triangulate the embedding, BFS-layer from the
/// root, and take one bag per triangle — the union of the three corners'
/// BFS-tree paths back to the root. The decomposition tree is the spanning
/// tree of the triangulation's dual induced by the non-BFS-tree edges.
/// Layered width comes out ≤ 3 because each bag meets each layer in at most
/// one vertex per corner path.
pub fn tree_cotree_decomposition(
    g: &Graph,
    emb: &Embedding,
    root: usize,
) -> Result<(TreeDecomposition, Layering)> {
    if emb.graph.n() != g.n() || emb.graph.edges() != g.edges() {
        return Err(Error::Precondition("embedding does not belong to the host graph".into()));
    }
    if root >= g.n() {
        return Err(Error::Precondition(format!("root {root} outside the vertex range")));
    }
    let t = triangulate(emb)?; // also rejects tiny and disconnected hosts
    let tg = &t.graph;
    // BFS tree with sorted adjacency
    let mut parent = vec![usize::MAX; tg.n()];
    let mut dist = vec![usize::MAX; tg.n()];
    let mut queue = VecDeque::from([root]);
    dist[root] = 0;
    while let Some(v) = queue.pop_front() {
        for &w in tg.neighbor_set(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let depth = dist.iter().max().map_or(0, |&d| d + 1);
    let mut layers = vec![BTreeSet::new(); depth];
    for (v, &d) in dist.iter().enumerate() {
        layers[d].insert(v);
    }
    let layering = Layering { layers, n: g.n() };
    // dual tree: faces joined across the edges the BFS tree does not use
    let face_of = t.face_of();
    let mut dual_edges = Vec::new();
    for (u, v) in tg.edges() {
        if parent[u] == v || parent[v] == u {
            continue;
        }
        dual_edges.push((face_of[&(u, v)], face_of[&(v, u)]));
    }
    let nodes = t.faces.len();
    assert_eq!(dual_edges.len() + 1, nodes, "cotree edge count is off");
    let root_path = |mut v: usize| {
        let mut path = BTreeSet::new();
        while v != usize::MAX {
            path.insert(v);
            v = parent[v];
        }
        path
    };
    let bags: Vec<BTreeSet<usize>> = t
        .faces
        .iter()
        .map(|f| {
            let mut bag = BTreeSet::new();
            for &v in f {
                bag.extend(root_path(v));
            }
            bag
        })
        .collect();
    let dec = TreeDecomposition::new(g.n(), bags, dual_edges);
    if !dec.is_valid(g) {
        return Err(Error::Internal("tree-cotree bags failed validation".into()));
    }
    if layered_width(&dec, &layering)? > 3 {
        return Err(Error::Internal("tree-cotree layered width exceeded 3".into()));
    }
    Ok((dec, layering))
}

fn shared_preconditions(
    g: &Graph,
    layering: &Layering,
    dec_layered: &TreeDecomposition,
    c: usize,
) -> Result<()> {
    layering.check(g)?;
    if !dec_layered.is_valid(g) {
        return Err(Error::InvalidDecomposition(
            "layered decomposition fails validation against the host".into(),
        ));
    }
    if g.n() == 0 {
        return Err(Error::Precondition("host graph is empty".into()));
    }
    let measured = layered_width(dec_layered, layering)?;
    if c != measured || c == 0 {
        return Err(Error::Precondition(format!(
            "claimed layered width {c} does not match the measured {measured}"
        )));
    }
    Ok(())
}

/// Smallest p with c·p² ≥ n.
fn pick_p(n: usize, c: usize) -> usize {
    let mut p = 1;
    while c * p * p < n {
        p += 1;
    }
    p
}

/// The residue class of layers with the smallest vertex total, ties to the
/// smaller residue.
fn pick_residue(layering: &Layering, p: usize) -> (usize, BTreeSet<usize>) {
    let mut best: Option<(usize, usize)> = None; // (size, residue)
    for i in 0..p {
        let size: usize = layering
            .layers
            .iter()
            .enumerate()
            .filter(|(j, _)| j % p == i)
            .map(|(_, l)| l.len())
            .sum();
        if best.map_or(true, |(s, _)| size < s) {
            best = Some((size, i));
        }
    }
    let (_, i) = best.unwrap();
    let vhat = layering
        .layers
        .iter()
        .enumerate()
        .filter(|(j, _)| j % p == i)
        .flat_map(|(_, l)| l.iter().copied())
        .collect();
    (i, vhat)
}

/// Restriction of a decomposition to one vertex set, normalised; the tree
/// shape is inherited, so validity carries over.
fn restrict_normalised(dec: &TreeDecomposition, keep: &BTreeSet<usize>) -> TreeDecomposition {
    let bags = dec.bags.iter().map(|b| b & keep).collect();
    normalise(&TreeDecomposition::new(dec.n, bags, dec.edges.clone()))
}

/// Concatenates decompositions into one tree by linking each part's node 0
/// to the previous part's node 0. The parts must cover disjoint vertex
/// sets, so occurrence connectivity is preserved.
fn chain(n: usize, parts: Vec<TreeDecomposition>) -> TreeDecomposition {
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let mut anchors = Vec::new();
    for part in parts {
        let off = bags.len();
        anchors.push(off);
        bags.extend(part.bags);
        edges.extend(part.edges.iter().map(|&(a, b)| (a + off, b + off)));
    }
    for w in anchors.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(n, bags, edges)
}

/// Width-≤-2√(cn) decomposition from a layered one: remove the lightest
/// residue class V̂ᵢ of layers, decompose each leftover component by
/// restricting the layered decomposition, then put V̂ᵢ into every bag.
pub fn sqrt_decomposition(
    g: &Graph,
    layering: &Layering,
    dec_layered: &TreeDecomposition,
    c: usize,
) -> Result<TreeDecomposition> {
    shared_preconditions(g, layering, dec_layered, c)?;
    let n = g.n();
    let p = pick_p(n, c);
    let (_, vhat) = pick_residue(layering, p);
    if vhat.len() * p > n {
        return Err(Error::Internal("chosen residue class is heavier than n/p".into()));
    }
    let comps = g.components(&vhat);
    let of = layering.layer_of();
    for comp in &comps {
        let lo = comp.iter().map(|&v| of[v]).min().unwrap();
        let hi = comp.iter().map(|&v| of[v]).max().unwrap();
        if hi - lo + 1 > p.saturating_sub(1) {
            return Err(Error::Internal("component spans too many layers".into()));
        }
    }
    let parts: Vec<TreeDecomposition> = comps.iter().map(|c| restrict_normalised(dec_layered, c)).collect();
    let mut dec = if parts.is_empty() {
        TreeDecomposition::new(n, vec![BTreeSet::new()], Vec::new())
    } else {
        chain(n, parts)
    };
    for bag in &mut dec.bags {
        bag.extend(vhat.iter().copied());
    }
    if !dec.is_valid(g) {
        return Err(Error::Internal("sqrt decomposition failed validation".into()));
    }
    let w = dec.width();
    if w > 0 && (w as u128) * (w as u128) > 4 * c as u128 * n as u128 {
        return Err(Error::Internal(format!("sqrt decomposition width {w} exceeds 2*sqrt({c}*{n})")));
    }
    Ok(dec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionWidthReport {
    pub k: usize,
    /// max exact treewidth over the audited unions (−1 when every union was empty)
    pub max_treewidth: i64,
    pub checked: usize,
    /// unions whose size exceeded the exact-treewidth cap
    pub skipped: usize,
    /// true when every k-subset was audited and none was skipped
    pub exhaustive: bool,
}

fn k_subsets(bag_count: usize, k: usize, seed: u64) -> (Vec<Vec<usize>>, bool) {
    let mut count: u128 = 1;
    for i in 0..k {
        count = count * (bag_count - i) as u128 / (i + 1) as u128;
        if count > UNION_AUDIT_CAP as u128 {
            break;
        }
    }
    if count <= UNION_AUDIT_CAP as u128 {
        let mut subsets = Vec::new();
        let pool: Vec<usize> = (0..bag_count).collect();
        crate::refine::for_combinations(&pool, k, &mut |c| subsets.push(c.to_vec()));
        (subsets, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool: Vec<usize> = (0..bag_count).collect();
        let mut subsets = Vec::new();
        for _ in 0..UNION_AUDIT_CAP {
            pool.shuffle(&mut rng);
            let mut pick: Vec<usize> = pool[..k].to_vec();
            pick.sort_unstable();
            subsets.push(pick);
        }
        (subsets, false)
    }
}

/// Exact treewidth of unions of k bags, every subset when feasible and a
/// seeded sample otherwise. Unions too large for the exact solver are
/// counted as skipped and clear the exhaustive flag.
pub fn union_bag_width_report(g: &Graph, dec: &TreeDecomposition, k: usize, seed: u64) -> Result<UnionWidthReport> {
    if !dec.is_valid(g) {
        return Err(Error::InvalidDecomposition("audited decomposition fails validation".into()));
    }
    if k == 0 || k > dec.bags.len() {
        return Err(Error::Precondition(format!(
            "k = {k} outside 1..={} bags",
            dec.bags.len()
        )));
    }
    let (subsets, mut exhaustive) = k_subsets(dec.bags.len(), k, seed);
    let cap = limits::effective(limits::TREEWIDTH);
    let mut report = UnionWidthReport { k, max_treewidth: -1, checked: 0, skipped: 0, exhaustive: true };
    for subset in subsets {
        let mut union = BTreeSet::new();
        for &b in &subset {
            union.extend(dec.bags[b].iter().copied());
        }
        if union.len() > cap {
            report.skipped += 1;
            exhaustive = false;
            continue;
        }
        let (sub, _) = g.induced(&union);
        let (tw, _) = crate::exact::treewidth_exact(&sub)?;
        report.max_treewidth = report.max_treewidth.max(tw);
        report.checked += 1;
    }
    report.exhaustive = exhaustive;
    Ok(report)
}

/// A peeled instance: the removed residue class S (original ids), the rest
/// of the host relabeled to `0..rest.n()`, the id map back, and a
/// decomposition of the rest.
#[derive(Debug, Clone)]
pub struct Peel {
    pub s: BTreeSet<usize>,
    pub rest: Graph,
    /// local id in `rest` → original id in the host
    pub rest_ids: Vec<usize>,
    pub dec_rest: TreeDecomposition,
}

/// Shallow peeling: take S = the lightest residue class itself. |S| ≤
/// √(cn), the peeled graph keeps a decomposition of width < √(cn), and
/// g[S] splits into layers ≥ p apart, which certifies tw(g[S]) ≤ c−1.
pub fn shallow_peel(
    g: &Graph,
    layering: &Layering,
    dec_layered: &TreeDecomposition,
    c: usize,
) -> Result<Peel> {
    shared_preconditions(g, layering, dec_layered, c)?;
    let n = g.n();
    if n <= c {
        return Err(Error::Precondition(format!(
            "unsupported instance: n = {n} not above the layered width {c}"
        )));
    }
    let p = pick_p(n, c);
    assert!(p >= 2);
    let (_, vhat) = pick_residue(layering, p);
    if vhat.len() * p > n || (vhat.len() as u128).pow(2) > (c * n) as u128 {
        return Err(Error::Internal("peeled set is too heavy".into()));
    }
    // certify tw(g[S]) ≤ c−1: chosen layers are ≥ p ≥ 2 apart, so g[S] has
    // no edges between different layers and per-layer restrictions suffice
    let s_graph = g.induced(&vhat).0;
    let s_local: BTreeMap<usize, usize> = vhat.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut s_parts = Vec::new();
    for layer in &layering.layers {
        let in_s: BTreeSet<usize> = layer.intersection(&vhat).copied().collect();
        if in_s.is_empty() {
            continue;
        }
        let local = restrict_normalised(dec_layered, &in_s);
        s_parts.push(relabel(&local, &s_local, vhat.len()));
    }
    let s_dec = if s_parts.is_empty() {
        TreeDecomposition::new(0, vec![BTreeSet::new()], Vec::new())
    } else {
        chain(vhat.len(), s_parts)
    };
    if !s_dec.is_valid(&s_graph) || s_dec.width() + 1 > c as i64 {
        return Err(Error::Internal("peeled-set decomposition failed its width certificate".into()));
    }
    // decomposition of the rest, component by component
    let keep: BTreeSet<usize> = (0..n).filter(|v| !vhat.contains(v)).collect();
    let (rest, rest_ids) = g.induced(&keep);
    let rest_local: BTreeMap<usize, usize> = rest_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let comps = g.components(&vhat);
    let parts: Vec<TreeDecomposition> = comps
        .iter()
        .map(|comp| relabel(&restrict_normalised(dec_layered, comp), &rest_local, rest.n()))
        .collect();
    let dec_rest = if parts.is_empty() {
        TreeDecomposition::new(rest.n(), vec![BTreeSet::new()], Vec::new())
    } else {
        chain(rest.n(), parts)
    };
    if !dec_rest.is_valid(&rest) {
        return Err(Error::Internal("peeled-rest decomposition failed validation".into()));
    }
    let w = dec_rest.width();
    if w > 0 && (w as u128) * (w as u128) > (c * n) as u128 {
        return Err(Error::Internal(format!("peeled-rest width {w} exceeds sqrt({c}*{n})")));
    }
    Ok(Peel { s: vhat, rest, rest_ids, dec_rest })
}

fn relabel(dec: &TreeDecomposition, map: &BTreeMap<usize, usize>, n: usize) -> TreeDecomposition {
    let bags = dec.bags.iter().map(|b| b.iter().map(|v| map[v]).collect()).collect();
    TreeDecomposition::new(n, bags, dec.edges.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionPathReport {
    pub k: usize,
    /// max width over the sliding-window path decompositions of the audited
    /// unions (−1 when every union was empty); an upper bound on each
    /// union's pathwidth
    pub max_width: i64,
    pub checked: usize,
    /// audited unions small enough for an exact pathwidth cross-check
    pub cross_checked: usize,
    /// true when every k-subset was audited
    pub exhaustive: bool,
}

/// Pathwidth audit for unions of k bags of a peel's rest decomposition.
/// Each union gets the sliding-window certificate: window j holds the
/// union's vertices in layers j and j+1, giving a valid path decomposition
/// whose width bounds the union's pathwidth.
pub fn union_bag_pathwidth_report(
    peel: &Peel,
    layering: &Layering,
    k: usize,
    seed: u64,
) -> Result<UnionPathReport> {
    if k == 0 || k > peel.dec_rest.bags.len() {
        return Err(Error::Precondition(format!(
            "k = {k} outside 1..={} bags",
            peel.dec_rest.bags.len()
        )));
    }
    let of = layering.layer_of();
    // layers in rest coordinates, positions kept
    let rest_layer: Vec<usize> = peel.rest_ids.iter().map(|&orig| of[orig]).collect();
    let depth = layering.layers.len();
    let (subsets, exhaustive) = k_subsets(peel.dec_rest.bags.len(), k, seed);
    let pw_cap = limits::effective(limits::PATHWIDTH);
    let mut report = UnionPathReport { k, max_width: -1, checked: 0, cross_checked: 0, exhaustive };
    for subset in subsets {
        let mut union = BTreeSet::new();
        for &b in &subset {
            union.extend(peel.dec_rest.bags[b].iter().copied());
        }
        let (sub, sub_ids) = peel.rest.induced(&union);
        let sub_local: BTreeMap<usize, usize> = sub_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut windows: Vec<BTreeSet<usize>> = Vec::new();
        for j in 0..depth.max(1) {
            let window: BTreeSet<usize> = union
                .iter()
                .filter(|&&v| rest_layer[v] == j || (j + 1 < depth && rest_layer[v] == j + 1))
                .map(|v| sub_local[v])
                .collect();
            windows.push(window);
        }
        while windows.len() > 1 && windows.last().unwrap().is_empty() {
            windows.pop();
        }
        while windows.len() > 1 && windows[0].is_empty() {
            windows.remove(0);
        }
        let edges: Vec<(usize, usize)> = (1..windows.len()).map(|i| (i - 1, i)).collect();
        let path_dec = TreeDecomposition::new(sub.n(), windows, edges);
        if !path_dec.is_valid(&sub) {
            return Err(Error::Internal("sliding-window certificate failed validation".into()));
        }
        let w = path_dec.width();
        report.max_width = report.max_width.max(w);
        report.checked += 1;
        if sub.n() <= pw_cap {
            let pw = crate::exact::pathwidth_exact(&sub)?;
            if pw > w {
                return Err(Error::Internal("exact pathwidth exceeded its certificate".into()));
            }
            report.cross_checked += 1;
        }
    }
    Ok(report)
}

/// Layering file: one line per layer, `L <k>: v...`, 1-indexed, in order.
pub fn read_layers(text: &str, n: usize) -> Result<Layering> {
    let mut layers = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let parse_fail = |msg: String| Error::Parse { line: lineno, msg };
        let rest = line
            .strip_prefix("L ")
            .ok_or_else(|| parse_fail(format!("expected 'L <k>: v...', got {line:?}")))?;
        let (num, verts) = rest
            .split_once(':')
            .ok_or_else(|| parse_fail("missing ':' after the layer number".into()))?;
        let idx: usize = num
            .trim()
            .parse()
            .map_err(|_| parse_fail(format!("layer number is not a number: {num:?}")))?;
        if idx != layers.len() + 1 {
            return Err(parse_fail(format!("expected layer {}, got {idx}", layers.len() + 1)));
        }
        let mut layer = BTreeSet::new();
        for tok in verts.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_fail(format!("vertex id is not a number: {tok:?}")))?;
            if v == 0 || v > n {
                return Err(parse_fail(format!("vertex id {v} outside 1..={n}")));
            }
            if !layer.insert(v - 1) {
                return Err(parse_fail(format!("vertex {v} listed twice in one layer")));
            }
        }
        layers.push(layer);
    }
    let layering = Layering { layers, n };
    let covered: BTreeSet<usize> = layering.layers.iter().flatten().copied().collect();
    let total: usize = layering.layers.iter().map(|l| l.len()).sum();
    if covered.len() != n || total != n {
        return Err(Error::Parse {
            line: text.lines().count() + 1,
            msg: "layers do not partition the vertex set".into(),
        });
    }
    Ok(layering)
}

pub fn write_layers(layering: &Layering) -> String {
    let mut out = String::new();
    for (i, layer) in layering.layers.iter().enumerate() {
        out.push_str(&format!("L {}:", i + 1));
        for &v in layer {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    out
}

/// Convenience pipeline for planar hosts: embed, tree–cotree, measure, and
/// return everything the √n and peeling constructions need.
pub fn planar_layered_pipeline(g: &Graph, root: usize) -> Result<(TreeDecomposition, Layering, usize)> {
    let emb = crate::planar::planarity_embed(g)
        .ok_or_else(|| Error::Precondition("host graph is not planar".into()))?;
    let (dec, layering) = tree_cotree_decomposition(g, &emb, root)?;
    let c = layered_width(&dec, &layering)?;
    Ok((dec, layering, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::planarity_embed;

    fn path_setup(n: usize) -> (Graph, Layering, TreeDecomposition) {
        let g = Graph::path_graph(n);
        let layering = bfs_layering(&g, &[0].into_iter().collect());
        let bags: Vec<BTreeSet<usize>> = (0..n - 1).map(|i| [i, i + 1].into_iter().collect()).collect();
        let edges: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        let dec = TreeDecomposition::new(n, bags, edges);
        (g, layering, dec)
    }

    #[test]
    fn bfs_layering_examples() {
        let (g, l, _) = path_setup(3);
        assert_eq!(l.layers.len(), 3);
        assert!(l.check(&g).is_ok());

        let k4 = Graph::complete(4);
        let l = bfs_layering(&k4, &[2].into_iter().collect());
        let sizes: Vec<usize> = l.layers.iter().map(|x| x.len()).collect();
        assert_eq!(sizes, vec![1, 3]);

        let grid = Graph::grid(3, 3);
        let l = bfs_layering(&grid, &[0].into_iter().collect());
        let sizes: Vec<usize> = l.layers.iter().map(|x| x.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn bfs_layering_roots_every_component() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        let l = bfs_layering(&g, &BTreeSet::new());
        assert_eq!(l.layers[0], [0, 3].into_iter().collect());
        assert!(l.check(&g).is_ok());
    }

    #[test]
    fn layering_check_rejects_bad_input() {
        let g = Graph::path_graph(2);
        let skip = Layering { layers: vec![[0].into(), BTreeSet::new(), [1].into()], n: 2 };
        assert!(skip.check(&g).is_err());
        let short = Layering { layers: vec![[0].into()], n: 2 };
        assert!(short.check(&g).is_err());
        let wrong_host = Layering { layers: vec![[0, 1].into()], n: 2 };
        assert!(wrong_host.check(&Graph::path_graph(3)).is_err());
    }

    #[test]
    fn layered_width_measures_intersections() {
        let grid = Graph::grid(3, 3);
        let l = bfs_layering(&grid, &[0].into_iter().collect());
        let single = TreeDecomposition::single_bag(&grid);
        assert_eq!(layered_width(&single, &l).unwrap(), 3);

        let (g, l, dec) = path_setup(5);
        assert!(dec.is_valid(&g));
        assert_eq!(layered_width(&dec, &l).unwrap(), 1);

        let mismatch = bfs_layering(&Graph::path_graph(4), &[0].into_iter().collect());
        assert!(layered_width(&dec, &mismatch).is_err());
    }

    #[test]
    fn tree_cotree_on_k4() {
        let g = Graph::complete(4);
        let emb = planarity_embed(&g).unwrap();
        let (dec, layering) = tree_cotree_decomposition(&g, &emb, 0).unwrap();
        assert_eq!(dec.bags.len(), 4); // one per face
        assert!(dec.is_valid(&g));
        assert!(layered_width(&dec, &layering).unwrap() <= 3);
    }

    #[test]
    fn tree_cotree_on_a_square_triangulates_first() {
        // triangulating C_4 on the sphere forces both chords (3n−6 edges),
        // so the decomposition has four face bags
        let g = Graph::cycle(4);
        let emb = planarity_embed(&g).unwrap();
        let (dec, layering) = tree_cotree_decomposition(&g, &emb, 0).unwrap();
        assert_eq!(dec.bags.len(), 4);
        assert!(dec.is_valid(&g));
        assert!(layered_width(&dec, &layering).unwrap() <= 3);
    }

    #[test]
    fn tree_cotree_on_random_triangulations() {
        for seed in 0..3u64 {
            let g = Graph::random_planar_triangulation(30, seed);
            let emb = planarity_embed(&g).unwrap();
            let (dec, layering) = tree_cotree_decomposition(&g, &emb, 0).unwrap();
            assert_eq!(dec.bags.len(), 2 * 30 - 4);
            assert!(dec.is_valid(&g));
            assert!(layering.check(&g).is_ok());
            assert!(layered_width(&dec, &layering).unwrap() <= 3);
        }
    }

    #[test]
    fn tree_cotree_rejects_bad_input() {
        let g = Graph::path_graph(2);
        let emb = planarity_embed(&g).unwrap();
        assert!(tree_cotree_decomposition(&g, &emb, 0).is_err());
        let g = Graph::complete(4);
        let emb = planarity_embed(&g).unwrap();
        assert!(tree_cotree_decomposition(&g, &emb, 7).is_err());
        let other = Graph::cycle(4);
        assert!(tree_cotree_decomposition(&other, &emb, 0).is_err());
    }

    #[test]
    fn sqrt_decomposition_on_triangulations() {
        for seed in 0..3u64 {
            let g = Graph::random_planar_triangulation(40, seed);
            let (dec, layering, c) = planar_layered_pipeline(&g, 0).unwrap();
            assert!(c <= 3);
            let sq = sqrt_decomposition(&g, &layering, &dec, c).unwrap();
            assert!(sq.is_valid(&g));
            let w = sq.width();
            assert!(w <= 0 || (w * w) as usize <= 4 * c * 40);
        }
    }

    #[test]
    fn sqrt_decomposition_degenerate_single_layer() {
        let g = Graph::complete(4);
        let layering = Layering { layers: vec![(0..4).collect()], n: 4 };
        let dec = TreeDecomposition::single_bag(&g);
        let sq = sqrt_decomposition(&g, &layering, &dec, 4).unwrap();
        assert_eq!(sq.width(), 3); // p = 1 removes everything: one bag with V
        assert!(sq.is_valid(&g));
    }

    #[test]
    fn sqrt_decomposition_rejects_wrong_c() {
        let (g, layering, dec) = path_setup(6);
        assert!(sqrt_decomposition(&g, &layering, &dec, 3).is_err());
        assert!(sqrt_decomposition(&g, &layering, &dec, 0).is_err());
    }

    #[test]
    fn union_report_with_all_bags_is_the_whole_graph() {
        let g = Graph::grid(3, 3);
        let (dec, _, _) = planar_layered_pipeline(&g, 0).unwrap();
        let k = dec.bags.len();
        let report = union_bag_width_report(&g, &dec, k, 0).unwrap();
        assert_eq!(report.max_treewidth, 3); // tw of the 3×3 grid
        assert!(report.exhaustive);
        assert_eq!(report.checked, 1);
    }

    #[test]
    fn union_report_on_sqrt_output_meets_the_k_bound() {
        let g = Graph::random_planar_triangulation(24, 1);
        let (dec, layering, c) = planar_layered_pipeline(&g, 0).unwrap();
        let sq = sqrt_decomposition(&g, &layering, &dec, c).unwrap();
        for (k, bound) in [(1, 11), (2, 20)] {
            let report = union_bag_width_report(&g, &sq, k, 0).unwrap();
            assert!(report.checked > 0);
            assert!(report.max_treewidth <= bound, "{report:?}");
        }
    }

    #[test]
    fn peel_on_a_path_takes_every_pth_layer() {
        let (g, layering, dec) = path_setup(10);
        let peel = shallow_peel(&g, &layering, &dec, 1).unwrap();
        // p = 4, residues weigh (3,3,2,2): residue 2 wins, layers {2, 6}
        assert_eq!(peel.s, [2, 6].into_iter().collect());
        assert_eq!(peel.rest.n(), 8);
        assert!(peel.dec_rest.is_valid(&peel.rest));
        assert!(peel.s.len() * peel.s.len() <= 10);
        // components of the rest are the subpaths between removed vertices
        let comps = peel.rest.components(&BTreeSet::new());
        assert_eq!(comps.len(), 3);
    }

    #[test]
    fn peel_rejects_small_hosts() {
        let g = Graph::complete(4);
        let layering = Layering { layers: vec![(0..4).collect()], n: 4 };
        let dec = TreeDecomposition::single_bag(&g);
        let err = shallow_peel(&g, &layering, &dec, 4).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn peel_pathwidth_certificates_hold() {
        let g = Graph::random_planar_triangulation(30, 2);
        let (dec, layering, c) = planar_layered_pipeline(&g, 0).unwrap();
        let peel = shallow_peel(&g, &layering, &dec, c).unwrap();
        assert!(peel.s.len() * peel.s.len() <= c * 30);
        for k in [1, 2] {
            let report = union_bag_pathwidth_report(&peel, &layering, k, 0).unwrap();
            assert!(report.checked > 0);
            assert!(report.max_width <= (2 * c * k) as i64 - 1, "{report:?}");
        }
    }

    #[test]
    fn layers_round_trip_through_text() {
        let g = Graph::grid(3, 3);
        let l = bfs_layering(&g, &[0].into_iter().collect());
        let text = write_layers(&l);
        let back = read_layers(&text, 9).unwrap();
        assert_eq!(back, l);
        assert_eq!(write_layers(&back), text);
        // empty layers survive
        let manual = "L 1: 1 2\nL 2:\nL 3: 3\n";
        let l = read_layers(manual, 3).unwrap();
        assert!(l.layers[1].is_empty());
        assert_eq!(write_layers(&l), manual);
    }

    #[test]
    fn layers_reader_rejects_malformed_input() {
        assert!(read_layers("L 2: 1\n", 1).is_err()); // wrong numbering
        assert!(read_layers("L 1: 1\nL 2: 1\n", 1).is_err()); // not a partition
        assert!(read_layers("L 1: 5\n", 2).is_err()); // out of range
        assert!(read_layers("layer 1: 1\n", 1).is_err()); // bad prefix
        assert!(read_layers("L 1: 1 1\n", 1).is_err()); // duplicate
        assert!(read_layers("", 1).is_err()); // vertex uncovered
    }
}
