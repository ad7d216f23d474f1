/*!
The refinement engine: breakability and reducibility of vertex sets, the
two profile-decreasing surgery steps on tree-decompositions, and the
fixpoint driver.

Every step ends by normalising and then *checking* that the bag-size
profile strictly decreased lexicographically; a failed check is reported as
an internal error rather than swallowed, since it would mean the
constructions above it are wrong.
*/

use crate::decomp::{is_normal, lex_less, normalise, BagProfile, TreeDecomposition};
use crate::graph::check_cap;
use crate::{flow, limits, Error, Graph, Result};
use std::collections::BTreeSet;

/// An ordered separation: `a ∪ b` covers the host, and no edge joins
/// `a ∖ b` to `b ∖ a`. The cut is `a ∩ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub a: BTreeSet<usize>,
    pub b: BTreeSet<usize>,
}

impl Separation {
    pub fn cut(&self) -> BTreeSet<usize> {
        self.a.intersection(&self.b).copied().collect()
    }

    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        let all: BTreeSet<usize> = (0..g.n()).collect();
        let union: BTreeSet<usize> = self.a.union(&self.b).copied().collect();
        if union != all {
            return Err(Error::Precondition(
                "separation sides must cover the vertex set exactly".into(),
            ));
        }
        for (u, v) in g.edges() {
            let u_a = self.a.contains(&u) && !self.b.contains(&u);
            let u_b = self.b.contains(&u) && !self.a.contains(&u);
            let v_a = self.a.contains(&v) && !self.b.contains(&v);
            let v_b = self.b.contains(&v) && !self.a.contains(&v);
            if (u_a && v_b) || (u_b && v_a) {
                return Err(Error::Precondition(format!(
                    "edge {u}-{v} crosses the separation"
                )));
            }
        }
        Ok(())
    }

    /// Does this separation break `s`: both sides miss part of `s`, and the
    /// cut stays inside `s`.
    pub fn breaks(&self, s: &BTreeSet<usize>) -> bool {
        s.difference(&self.a).next().is_some()
            && s.difference(&self.b).next().is_some()
            && self.cut().is_subset(s)
    }

    /// Does this separation reduce `s`: the cut spends fewer vertices
    /// outside `s` than either side holds of `s` exclusively.
    pub fn reduces(&self, s: &BTreeSet<usize>) -> bool {
        let cut = self.cut();
        let outside = cut.difference(s).count();
        let in_a_only = s.iter().filter(|v| self.a.contains(v) && !self.b.contains(v)).count();
        let in_b_only = s.iter().filter(|v| self.b.contains(v) && !self.a.contains(v)).count();
        outside < in_a_only.min(in_b_only)
    }
}

/// A set is breakable iff two of its vertices can be separated by the rest
/// of it: check every pair `u, v` against the components of
/// `g − (s ∖ {u, v})`. The witness puts u's component on one side and
/// everything else on the other.
pub fn is_breakable(g: &Graph, s: &BTreeSet<usize>) -> Option<Separation> {
    assert!(s.iter().all(|&v| v < g.n()), "set leaves the vertex range");
    let elems: Vec<usize> = s.iter().copied().collect();
    for (i, &u) in elems.iter().enumerate() {
        for &v in &elems[i + 1..] {
            let mut rest: BTreeSet<usize> = s.clone();
            rest.remove(&u);
            rest.remove(&v);
            let comps = g.components(&rest);
            let cu = comps.iter().position(|c| c.contains(&u));
            let cv = comps.iter().position(|c| c.contains(&v));
            if let (Some(cu), Some(cv)) = (cu, cv) {
                if cu != cv {
                    let mut a: BTreeSet<usize> = comps[cu].clone();
                    a.extend(rest.iter().copied());
                    let b: BTreeSet<usize> =
                        (0..g.n()).filter(|w| !comps[cu].contains(w)).collect();
                    let sep = Separation { a, b };
                    debug_assert!(sep.check(g).is_ok() && sep.breaks(s));
                    return Some(sep);
                }
            }
        }
    }
    None
}

/// Finds a minimum-order separation reducing `s`, if any: candidate cuts X
/// by increasing size then lexicographically; components of g − X split
/// into two sides so that the smaller side's count of exclusive s-vertices
/// is as large as possible.
pub fn is_reducible(g: &Graph, s: &BTreeSet<usize>) -> Result<Option<Separation>> {
    check_cap("reducibility host", g.n(), limits::effective(limits::REFINE))?;
    let verts: Vec<usize> = (0..g.n()).collect();
    for size in 0..=g.n() {
        let mut hit: Option<Separation> = None;
        for_combinations(&verts, size, &mut |x| {
            if hit.is_some() {
                return;
            }
            let cut: BTreeSet<usize> = x.iter().copied().collect();
            let comps = g.components(&cut);
            if comps.len() < 2 {
                return;
            }
            let counts: Vec<usize> = comps
                .iter()
                .map(|c| c.intersection(s).count())
                .collect();
            let side1 = balance_partition(&counts);
            let c1: usize = (0..comps.len()).filter(|&j| side1[j]).map(|j| counts[j]).sum();
            let c2: usize = (0..comps.len()).filter(|&j| !side1[j]).map(|j| counts[j]).sum();
            if cut.difference(s).count() < c1.min(c2) {
                let mut a = cut.clone();
                let mut b = cut.clone();
                for (j, c) in comps.iter().enumerate() {
                    if side1[j] {
                        a.extend(c.iter().copied());
                    } else {
                        b.extend(c.iter().copied());
                    }
                }
                let sep = Separation { a, b };
                debug_assert!(sep.check(g).is_ok() && sep.reduces(s));
                hit = Some(sep);
            }
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Which components go on side 1 so that min(side sums) is maximal;
/// subset-sum over the component counts, preferring side 2 on ties.
fn balance_partition(counts: &[usize]) -> Vec<bool> {
    let total: usize = counts.iter().sum();
    let c = counts.len();
    // reachable[j] = sums achievable using components j.. on side 1
    let mut reachable = vec![0u64; c + 1];
    reachable[c] = 1;
    for j in (0..c).rev() {
        reachable[j] = reachable[j + 1] | (reachable[j + 1] << counts[j]);
    }
    let target = (0..=total / 2).rev().find(|&t| reachable[0] >> t & 1 == 1).unwrap();
    let mut side1 = vec![false; c];
    let mut r = target;
    for j in 0..c {
        if reachable[j + 1] >> r & 1 == 1 {
            continue; // side 2 reachable without this component
        }
        side1[j] = true;
        r -= counts[j];
    }
    side1
}

/// Subsets of `pool` of the given size, in lexicographic order.
pub(crate) fn for_combinations(pool: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(pool: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        if pool.len() - start < size - cur.len() {
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

/// Splits the decomposition along `s ⊆ B_y`: two copies of the tree joined
/// at y, one keeping the lexicographically first component of `g − s` that
/// meets `B_x` (plus `s`), the other keeping the rest of the host.
///
/// The input must be normal — the strict profile decrease is only guaranteed
/// under that hypothesis.
pub fn split_step(
    g: &Graph,
    dec: &TreeDecomposition,
    x: usize,
    y: usize,
    s: &BTreeSet<usize>,
) -> Result<TreeDecomposition> {
    let viols = dec.validate(g);
    if let Some(v) = viols.first() {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    if !is_normal(dec) {
        return Err(Error::Precondition("split requires a normal decomposition".into()));
    }
    let k = dec.bags.len();
    if x >= k || y >= k || !s.is_subset(&dec.bags[y]) {
        return Err(Error::Precondition("split site must be nodes with s inside the y-bag".into()));
    }
    let comps = g.components(s);
    let meeting: Vec<&BTreeSet<usize>> = comps
        .iter()
        .filter(|c| c.intersection(&dec.bags[x]).next().is_some())
        .collect();
    if meeting.len() < 2 {
        return Err(Error::Precondition(format!(
            "bag of node {x} meets {} component(s) of g - s, need at least 2",
            meeting.len()
        )));
    }
    let h1 = meeting[0];
    let d1: BTreeSet<usize> = h1.union(s).copied().collect();
    let d2: BTreeSet<usize> = (0..g.n()).filter(|v| !h1.contains(v)).collect();

    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(2 * k);
    for b in &dec.bags {
        bags.push(b.intersection(&d1).copied().collect());
    }
    for b in &dec.bags {
        bags.push(b.intersection(&d2).copied().collect());
    }
    let mut edges: Vec<(usize, usize)> = dec.edges.clone();
    edges.extend(dec.edges.iter().map(|&(u, v)| (u + k, v + k)));
    edges.push((y, y + k));
    let doubled = TreeDecomposition::new(g.n(), bags, edges);
    // proper refinement: B_x survives in no bag of the refined tree
    assert!(
        doubled.bags.iter().all(|b| !dec.bags[x].is_subset(b)),
        "split did not refine properly"
    );
    finish_step(g, dec, doubled)
}

/// Applies a minimum-order reducing separation to the bag of `y`: each cut
/// vertex is pulled along the tree path from y to its nearest occurrence,
/// then the tree is doubled with one side of the separation per copy.
pub fn reduce_step(
    g: &Graph,
    dec: &TreeDecomposition,
    y: usize,
    sep: &Separation,
) -> Result<TreeDecomposition> {
    let viols = dec.validate(g);
    if let Some(v) = viols.first() {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    let k = dec.bags.len();
    if y >= k {
        return Err(Error::Precondition("no such node".into()));
    }
    sep.check(g)?;
    let s = &dec.bags[y];
    if !sep.reduces(s) {
        return Err(Error::Precondition(
            "separation does not reduce the bag".into(),
        ));
    }
    let cut = sep.cut();
    // minimum order is certified by Menger families on both sides: |cut|
    // fully disjoint paths from the cut to the bag, inside each side
    for side in [&sep.a, &sep.b] {
        let (sub, order) = g.induced(side);
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in order.iter().enumerate() {
            local[v] = i;
        }
        let src: BTreeSet<usize> = cut.iter().map(|&v| local[v]).collect();
        let snk: BTreeSet<usize> = s
            .iter()
            .filter(|v| side.contains(v))
            .map(|&v| local[v])
            .collect();
        let bundle = flow::max_fully_disjoint_paths(&sub, &src, &snk, &BTreeSet::new());
        if bundle.count() < cut.len() {
            return Err(Error::Precondition(format!(
                "separation is not minimum-order: only {} of {} disjoint cut-to-bag paths on one side",
                bundle.count(),
                cut.len()
            )));
        }
    }

    // nearest occurrence of each cut vertex, by tree BFS from y
    let adj = dec.tree_adjacency();
    let bfs = {
        let mut order = vec![y];
        let mut seen = vec![false; k];
        seen[y] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    };
    let mut bprime = dec.bags.clone();
    for &a in &cut {
        let wa = *bfs
            .iter()
            .find(|&&u| dec.bags[u].contains(&a))
            .expect("vertex cover gives every vertex a bag");
        for u in dec.tree_path(y, wa) {
            bprime[u].insert(a);
        }
    }
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(2 * k);
    for b in &bprime {
        bags.push(b.intersection(&sep.a).copied().collect());
    }
    for b in &bprime {
        bags.push(b.intersection(&sep.b).copied().collect());
    }
    let mut edges: Vec<(usize, usize)> = dec.edges.clone();
    edges.extend(dec.edges.iter().map(|&(u, v)| (u + k, v + k)));
    edges.push((y, y + k));
    let doubled = TreeDecomposition::new(g.n(), bags, edges);
    finish_step(g, dec, doubled)
}

/// Normalise, then insist on validity, profile decrease and non-increased
/// width — the contract of both steps.
fn finish_step(
    g: &Graph,
    before: &TreeDecomposition,
    raw: TreeDecomposition,
) -> Result<TreeDecomposition> {
    let out = normalise(&raw);
    if let Some(v) = out.validate(g).first() {
        return Err(Error::Internal(format!("step produced an invalid decomposition: {v}")));
    }
    if !lex_less(&out.profile(), &before.profile())? {
        return Err(Error::Internal(format!(
            "step did not decrease the profile: {} -> {}",
            before.profile(),
            out.profile()
        )));
    }
    if out.width() > before.width() {
        return Err(Error::Internal("step increased the width".into()));
    }
    if g.n() > 0 && out.bags.len() > g.n() {
        return Err(Error::Internal("normal decomposition with more bags than vertices".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineLevel {
    Unbreakable,
    Irreducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Split,
    Reduce,
}

impl std::fmt::Display for StepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepKind::Split => write!(f, "split"),
            StepKind::Reduce => write!(f, "reduce"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub kind: StepKind,
    pub before: BagProfile,
    pub after: BagProfile,
}

/// Normalises, splits until no bag can be split, then (at the Irreducible
/// level) reduces one bag and starts over; stops when nothing applies.
/// Termination is the strict profile decrease of every step.
pub fn refine_to_fixpoint(
    g: &Graph,
    dec: &TreeDecomposition,
    level: RefineLevel,
) -> Result<(TreeDecomposition, Vec<StepRecord>)> {
    if let Some(v) = dec.validate(g).first() {
        return Err(Error::InvalidDecomposition(v.to_string()));
    }
    if level == RefineLevel::Irreducible {
        check_cap("refinement host", g.n(), limits::effective(limits::REFINE))?;
    }
    let mut d = normalise(dec);
    let mut steps = Vec::new();
    loop {
        if let Some((x, y, s)) = find_split_trigger(g, &d) {
            let before = d.profile();
            d = split_step(g, &d, x, y, &s)?;
            steps.push(StepRecord {
                kind: StepKind::Split,
                before,
                after: d.profile(),
            });
            continue;
        }
        if level == RefineLevel::Irreducible {
            let mut applied = false;
            for y in 0..d.bags.len() {
                if let Some(sep) = is_reducible(g, &d.bags[y])? {
                    let before = d.profile();
                    d = reduce_step(g, &d, y, &sep)?;
                    steps.push(StepRecord {
                        kind: StepKind::Reduce,
                        before,
                        after: d.profile(),
                    });
                    applied = true;
                    break;
                }
            }
            if applied {
                continue;
            }
        }
        return Ok((d, steps));
    }
}

/// First `(x, y, s)` with `s ⊆ B_y` such that `B_x` meets at least two
/// components of `g − s`; subsets scanned smallest first, then
/// lexicographically. At the fixpoint every bag is unbreakable: a breaking
/// pair u, v of bag B would make `s = B ∖ {u, v}` a trigger for x = y.
fn find_split_trigger(g: &Graph, d: &TreeDecomposition) -> Option<(usize, usize, BTreeSet<usize>)> {
    for y in 0..d.bags.len() {
        let elems: Vec<usize> = d.bags[y].iter().copied().collect();
        let mut found: Option<(usize, usize, BTreeSet<usize>)> = None;
        for size in 0..=elems.len() {
            for_combinations(&elems, size, &mut |sv| {
                if found.is_some() {
                    return;
                }
                let s: BTreeSet<usize> = sv.iter().copied().collect();
                let comps = g.components(&s);
                if comps.len() < 2 {
                    return;
                }
                for x in 0..d.bags.len() {
                    let hit = comps
                        .iter()
                        .filter(|c| c.intersection(&d.bags[x]).next().is_some())
                        .take(2)
                        .count();
                    if hit >= 2 {
                        found = Some((x, y, s));
                        return;
                    }
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

// ---- per-bag auditing ----

#[derive(Debug, Clone)]
pub enum BagCheck {
    /// Exact treewidth of the bag's induced subgraph.
    Treewidth,
    /// Pattern must not be a minor of the bag's induced subgraph.
    MinorFree { name: String, pattern: Graph },
    /// Induced max degree ≤ delta − 1, or the bag has ≤ delta + 1 vertices.
    Degree { delta: usize },
    Unbreakable,
    Irreducible,
    /// Structure classification of the bag's induced subgraph.
    PlanarClass,
}

#[derive(Debug, Clone, Default)]
pub struct BagReport {
    pub node: usize,
    pub size: usize,
    pub treewidth: Option<i64>,
    /// `(pattern name, pattern is absent)`
    pub minor_free: Vec<(String, bool)>,
    pub degree_ok: Option<bool>,
    pub unbreakable: Option<bool>,
    pub irreducible: Option<bool>,
    pub planar_class: Option<crate::planar::NonSeparableClass>,
}

pub fn bag_audit(
    g: &Graph,
    dec: &TreeDecomposition,
    checks: &[BagCheck],
) -> Result<Vec<BagReport>> {
    let mut out = Vec::with_capacity(dec.bags.len());
    for (node, bag) in dec.bags.iter().enumerate() {
        let (sub, _) = g.induced(bag);
        let mut rep = BagReport {
            node,
            size: bag.len(),
            ..Default::default()
        };
        for check in checks {
            match check {
                BagCheck::Treewidth => {
                    rep.treewidth = Some(crate::exact::treewidth_exact(&sub)?.0);
                }
                BagCheck::MinorFree { name, pattern } => {
                    // a pattern larger than the bag can never be a minor
                    let free = if pattern.n() > sub.n() {
                        true
                    } else {
                        crate::minor::is_minor(&sub, pattern)?.is_none()
                    };
                    rep.minor_free.push((name.clone(), free));
                }
                BagCheck::Degree { delta } => {
                    let ok = sub.max_degree() + 1 <= *delta || bag.len() <= delta + 1;
                    rep.degree_ok = Some(ok);
                }
                BagCheck::Unbreakable => {
                    rep.unbreakable = Some(is_breakable(g, bag).is_none());
                }
                BagCheck::Irreducible => {
                    rep.irreducible = Some(is_reducible(g, bag)?.is_none());
                }
                BagCheck::PlanarClass => {
                    rep.planar_class = Some(crate::planar::classify_nonseparable(&sub)?);
                }
            }
        }
        out.push(rep);
    }
    Ok(out)
}
