/*!
Line-oriented file formats: PACE 2017 graphs (.gr) and tree-decompositions
(.td), plus the vertex-set sidecar (.sset). Vertex and bag ids are
1-indexed on disk, 0-indexed in memory. Writers are canonical (sorted,
no comments), so write ∘ read ∘ write is byte-stable.
*/

use crate::{Error, Graph, Result, TreeDecomposition};
use std::collections::BTreeSet;

fn parse_fail(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| parse_fail(line, format!("{what} is not a number: {tok:?}")))
}

/// 1-indexed vertex token into 0-indexed id.
fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v = parse_num(tok, line, "vertex id")?;
    if v == 0 || v > n {
        return Err(parse_fail(line, format!("vertex id {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn read_gr(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut want_edges = 0usize;
    let mut got_edges = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            if g.is_some() {
                return Err(parse_fail(lineno, "second problem header"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "tw" {
                return Err(parse_fail(lineno, format!("expected 'p tw <n> <m>', got {line:?}")));
            }
            let n = parse_num(toks[1], lineno, "vertex count")?;
            want_edges = parse_num(toks[2], lineno, "edge count")?;
            g = Some(Graph::new(n));
            continue;
        }
        let g = g
            .as_mut()
            .ok_or_else(|| parse_fail(lineno, "edge line before the problem header"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_fail(lineno, format!("expected '<u> <v>', got {line:?}")));
        }
        let u = parse_vertex(toks[0], g.n(), lineno)?;
        let v = parse_vertex(toks[1], g.n(), lineno)?;
        if u == v {
            return Err(parse_fail(lineno, format!("self-loop at vertex {}", u + 1)));
        }
        if g.has_edge(u, v) {
            return Err(parse_fail(lineno, format!("duplicate edge {}-{}", u + 1, v + 1)));
        }
        g.add_edge(u, v);
        got_edges += 1;
    }
    let g = g.ok_or_else(|| parse_fail(text.lines().count() + 1, "missing problem header"))?;
    if got_edges != want_edges {
        return Err(parse_fail(
            text.lines().count() + 1,
            format!("header promised {want_edges} edges, found {got_edges}"),
        ));
    }
    Ok(g)
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

pub fn read_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None; // (bags, max bag size, n)
    let mut bags: Vec<Option<BTreeSet<usize>>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("s ") {
            if header.is_some() {
                return Err(parse_fail(lineno, "second solution header"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 4 || toks[0] != "td" {
                return Err(parse_fail(lineno, format!("expected 's td <bags> <maxbag> <n>', got {line:?}")));
            }
            let k = parse_num(toks[1], lineno, "bag count")?;
            let maxbag = parse_num(toks[2], lineno, "max bag size")?;
            let n = parse_num(toks[3], lineno, "vertex count")?;
            bags = vec![None; k];
            header = Some((k, maxbag, n));
            continue;
        }
        let &(k, _, n) = header
            .as_ref()
            .ok_or_else(|| parse_fail(lineno, "content before the solution header"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(parse_fail(lineno, "bag line without an id"));
            }
            let id = parse_num(toks[1], lineno, "bag id")?;
            if id == 0 || id > k {
                return Err(parse_fail(lineno, format!("bag id {id} outside 1..={k}")));
            }
            if bags[id - 1].is_some() {
                return Err(parse_fail(lineno, format!("bag {id} defined twice")));
            }
            let mut bag = BTreeSet::new();
            for tok in &toks[2..] {
                bag.insert(parse_vertex(tok, n, lineno)?);
            }
            bags[id - 1] = Some(bag);
        } else {
            if toks.len() != 2 {
                return Err(parse_fail(lineno, format!("expected tree edge '<i> <j>', got {line:?}")));
            }
            let a = parse_num(toks[0], lineno, "tree node id")?;
            let b = parse_num(toks[1], lineno, "tree node id")?;
            for id in [a, b] {
                if id == 0 || id > k {
                    return Err(parse_fail(lineno, format!("tree node id {id} outside 1..={k}")));
                }
            }
            if a == b {
                return Err(parse_fail(lineno, format!("tree self-loop at node {a}")));
            }
            edges.push((a - 1, b - 1));
        }
    }
    let (k, maxbag, n) = header.ok_or_else(|| parse_fail(text.lines().count() + 1, "missing solution header"))?;
    let mut realized = Vec::with_capacity(k);
    for (i, b) in bags.into_iter().enumerate() {
        realized.push(b.ok_or_else(|| {
            parse_fail(text.lines().count() + 1, format!("bag {} never defined", i + 1))
        })?);
    }
    let actual_max = realized.iter().map(|b| b.len()).max().unwrap_or(0);
    if actual_max != maxbag {
        return Err(parse_fail(
            text.lines().count() + 1,
            format!("header promised max bag size {maxbag}, found {actual_max}"),
        ));
    }
    Ok(TreeDecomposition::new(n, realized, edges))
}

pub fn write_td(dec: &TreeDecomposition) -> String {
    let maxbag = dec.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", dec.bags.len(), maxbag, dec.n);
    for (i, bag) in dec.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for &v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    let mut edges = dec.edges.clone();
    edges.sort();
    for (a, b) in edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

/// Vertex subset, one 1-indexed id per line.
pub fn read_sset(text: &str, n: usize) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let v = parse_vertex(line, n, lineno)?;
        if !out.insert(v) {
            return Err(parse_fail(lineno, format!("vertex {} listed twice", v + 1)));
        }
    }
    Ok(out)
}

pub fn write_sset(s: &BTreeSet<usize>) -> String {
    let mut out = String::new();
    for &v in s {
        out.push_str(&format!("{}\n", v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr_round_trips_bit_exactly() {
        for g in [Graph::complete(4), Graph::grid(3, 3), Graph::petersen(), Graph::new(0), Graph::new(5)] {
            let text = write_gr(&g);
            let back = read_gr(&text).unwrap();
            assert_eq!(back.n(), g.n());
            assert_eq!(back.edges(), g.edges());
            assert_eq!(write_gr(&back), text);
        }
    }

    #[test]
    fn gr_reader_accepts_comments_and_indexing() {
        let text = "c a small path\np tw 3 2\n1 2\nc interlude\n2 3\n";
        let g = read_gr(text).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn gr_reader_rejects_malformed_input() {
        let cases = [
            ("1 2\n", "before the problem header"),
            ("p tw 3\n", "expected 'p tw"),
            ("p tw 3 1\n1 4\n", "outside 1..=3"),
            ("p tw 3 1\n2 2\n", "self-loop"),
            ("p tw 3 2\n1 2\n1 2\n", "duplicate edge"),
            ("p tw 3 2\n1 2\n", "promised 2 edges"),
            ("p tw 2 0\np tw 2 0\n", "second problem header"),
            ("", "missing problem header"),
            ("p tw x 0\n", "not a number"),
        ];
        for (text, needle) in cases {
            match read_gr(text) {
                Err(Error::Parse { msg, .. }) => {
                    assert!(msg.contains(needle), "text={text:?} msg={msg:?}")
                }
                other => panic!("text={text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn gr_parse_errors_carry_line_numbers() {
        let text = "c one\np tw 3 2\n1 2\n9 9\n";
        match read_gr(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn td_round_trips_through_text() {
        let g = Graph::grid(3, 3);
        let (_, dec) = crate::exact::treewidth_exact(&g).unwrap();
        let text = write_td(&dec);
        let back = read_td(&text).unwrap();
        assert_eq!(back, dec);
        assert_eq!(write_td(&back), text);
        assert!(back.is_valid(&g));
    }

    #[test]
    fn empty_graph_decomposition_has_one_empty_bag() {
        let dec = TreeDecomposition::single_bag(&Graph::new(0));
        assert_eq!(write_td(&dec), "s td 1 0 0\nb 1\n");
        let back = read_td("s td 1 0 0\nb 1\n").unwrap();
        assert_eq!(back, dec);
    }

    #[test]
    fn td_reader_rejects_malformed_input() {
        let cases = [
            ("b 1 1\n", "before the solution header"),
            ("s td 1 1 2\nb 1 1\nb 1 2\n", "defined twice"),
            ("s td 2 1 2\nb 1 1\nb 2 2\n1 3\n", "outside 1..=2"),
            ("s td 1 2 2\nb 1 1\n", "promised max bag size 2"),
            ("s td 2 1 2\nb 1 1\n1 2\n", "never defined"),
            ("s td 1 1 1\nb 1 2\n", "outside 1..=1"),
            ("s td 2 1 2\nb 1 1\nb 2 2\n1 1\n", "tree self-loop"),
        ];
        for (text, needle) in cases {
            match read_td(text) {
                Err(Error::Parse { msg, .. }) => {
                    assert!(msg.contains(needle), "text={text:?} msg={msg:?}")
                }
                other => panic!("text={text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn structurally_broken_trees_parse_but_fail_validation() {
        // two nodes, no tree edge: the parser is fine with it, validation is not
        let g = Graph::path_graph(2);
        let dec = read_td("s td 2 1 2\nb 1 1\nb 2 2\n").unwrap();
        let violations = dec.validate(&g);
        assert!(!violations.is_empty());
    }

    #[test]
    fn sset_round_trips() {
        let s: BTreeSet<usize> = [0, 3, 7].into_iter().collect();
        let text = write_sset(&s);
        assert_eq!(text, "1\n4\n8\n");
        assert_eq!(read_sset(&text, 9).unwrap(), s);
        assert!(read_sset("4\n4\n", 9).is_err());
        assert!(read_sset("10\n", 9).is_err());
        assert_eq!(read_sset("", 4).unwrap(), BTreeSet::new());
    }
}
