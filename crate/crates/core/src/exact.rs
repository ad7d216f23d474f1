/*!
Exact treewidth and pathwidth by subset dynamic programming over
elimination/placement orderings, with a concrete decomposition extracted
from the optimal elimination order. Everything downstream treats these as
ground truth, so they carry brute-force oracles in the tests.
*/

use crate::decomp::TreeDecomposition;
use crate::graph::check_cap;
use crate::{limits, Graph, Result};
use std::collections::BTreeSet;

/// Exact treewidth plus a witness decomposition of that width.
pub fn treewidth_exact(g: &Graph) -> Result<(i64, TreeDecomposition)> {
    let n = g.n();
    check_cap("treewidth instance", n, limits::effective(limits::TREEWIDTH))?;
    if n == 0 {
        // width is a max over bags; one empty bag gives -1
        return Ok((-1, TreeDecomposition::single_bag(g)));
    }
    let masks: Vec<u32> = g.masks().iter().map(|&m| m as u32).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best = vec![u8::MAX; 1 << n];
    let mut pick = vec![u8::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let mut bv = u8::MAX;
        let mut bw = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let val = best[rest as usize].max(reach_count(&masks, rest, v));
            if val < bw {
                bw = val;
                bv = v as u8;
            }
        }
        best[s as usize] = bw;
        pick[s as usize] = bv;
    }
    let width = best[full as usize] as i64;

    // recover the elimination order back to front
    let mut elim = vec![0usize; n];
    let mut s = full;
    for i in (0..n).rev() {
        let v = pick[s as usize] as usize;
        elim[i] = v;
        s &= !(1 << v);
    }
    let dec = decomposition_from_elimination(g, &elim);
    assert_eq!(dec.width(), width, "extracted decomposition must match the DP width");
    assert!(dec.is_valid(g), "extracted decomposition must satisfy the axioms");
    Ok((width, dec))
}

/// Number of vertices outside `s ∪ {v}` reachable from `v` through `s`:
/// the back-degree of `v` if eliminated right after the set `s`.
fn reach_count(masks: &[u32], s: u32, v: usize) -> u8 {
    let mut reach = masks[v];
    loop {
        let mut grown = reach;
        let mut through = reach & s;
        while through != 0 {
            let w = through.trailing_zeros() as usize;
            through &= through - 1;
            grown |= masks[w];
        }
        if grown == reach {
            break;
        }
        reach = grown;
    }
    (reach & !s & !(1 << v)).count_ones() as u8
}

/// Fill-in construction: bag of the i-th eliminated vertex is itself plus
/// its later neighbours in the filled graph; its tree parent is the bag of
/// its earliest later fill neighbour.
pub fn decomposition_from_elimination(g: &Graph, elim: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(elim.len(), n);
    let mut pos = vec![0usize; n];
    for (i, &v) in elim.iter().enumerate() {
        pos[v] = i;
    }
    let mut fill: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for (i, &v) in elim.iter().enumerate() {
        let later: Vec<usize> = fill[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                fill[x].insert(y);
                fill[y].insert(x);
            }
        }
        let mut bag: BTreeSet<usize> = later.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        if i + 1 < n {
            let parent = later.iter().map(|&w| pos[w]).min().unwrap_or(i + 1);
            edges.push((i, parent));
        }
    }
    TreeDecomposition::new(n, bags, edges)
}

/// Exact pathwidth via the vertex-separation formulation: place vertices
/// one by one, the cost of a prefix is how many of its vertices still have
/// a neighbour outside.
pub fn pathwidth_exact(g: &Graph) -> Result<i64> {
    let n = g.n();
    check_cap("pathwidth instance", n, limits::effective(limits::PATHWIDTH))?;
    if n == 0 {
        return Ok(-1);
    }
    let masks: Vec<u32> = g.masks().iter().map(|&m| m as u32).collect();
    let full: u32 = (1 << n) - 1;
    let mut best = vec![u8::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let cost = boundary(&masks, s);
        let mut bw = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            bw = bw.min(best[(s & !(1 << v)) as usize]);
        }
        best[s as usize] = bw.max(cost);
    }
    Ok(best[full as usize] as i64)
}

fn boundary(masks: &[u32], s: u32) -> u8 {
    let mut count = 0;
    let mut bits = s;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if masks[v] & !s != 0 {
            count += 1;
        }
    }
    count
}
