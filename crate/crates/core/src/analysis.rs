//! Cayley graphs, strongly connected components and Green's relations.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::snapshot::{Side, Snapshot};
use crate::word::{Letter, Word};

/// A directed graph on `0..n` with letter-labelled edges, stored as
/// compressed adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedDigraph {
    offsets: Vec<usize>,
    edges: Vec<(Letter, u32)>,
}

impl IndexedDigraph {
    /// Builds a graph from `(source, label, target)` triples. Each vertex
    /// keeps its edges in the order given.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, Letter, usize)>) -> Result<Self> {
        let mut lists: Vec<Vec<(Letter, u32)>> = vec![Vec::new(); n];
        for (u, a, v) in edges {
            for (what, x) in [("source", u), ("target", v)] {
                if x >= n {
                    return Err(Error::OutOfRange { what, index: x, limit: n });
                }
            }
            lists[u].push((a, v as u32));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut flat = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        for l in lists {
            flat.extend(l);
            offsets.push(flat.len());
        }
        Ok(IndexedDigraph { offsets, edges: flat })
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Out-edges of `v` as `(label, target)`.
    pub fn out_edges(&self, v: usize) -> impl ExactSizeIterator<Item = (Letter, usize)> + '_ {
        self.edges[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&(a, w)| (a, w as usize))
    }

    /// All edges as `(source, label, target)`, by source then insertion order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |v| self.out_edges(v).map(move |(a, w)| (v, a, w)))
    }

    /// One `i a j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, a, v) in self.edges() {
            writeln!(out, "{u} {a} {v}").unwrap();
        }
        out
    }
}

/// The right (`s -> sa`) or left (`s -> as`) Cayley graph of a complete
/// snapshot, with one edge per element and generator.
pub fn cayley_graph(s: &Snapshot, side: Side) -> Result<IndexedDigraph> {
    require_complete(s)?;
    let r = s.nr_generators();
    let table = match side {
        Side::Right => &s.right,
        Side::Left => &s.left,
    };
    Ok(IndexedDigraph {
        offsets: (0..=s.len()).map(|i| i * r).collect(),
        edges: table.iter().enumerate().map(|(k, &v)| (k % r, v)).collect(),
    })
}

fn require_complete(s: &Snapshot) -> Result<()> {
    if s.is_complete() {
        Ok(())
    } else {
        Err(Error::Precondition("the snapshot is not completely enumerated".into()))
    }
}

/// Strongly connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component of each vertex; ids are in reverse topological order, so
    /// every edge goes from a component to one with an id no larger.
    pub component: Vec<u32>,
    pub count: usize,
}

/// Tarjan's algorithm, iterative.
pub fn scc(g: &IndexedDigraph) -> Components {
    const UNSEEN: u32 = u32::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNSEEN; n];
    let mut stack: Vec<u32> = Vec::new();
    // (vertex, position of the next out-edge to look at)
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut count = 0u32;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        calls.push((root, g.offsets[root]));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root as u32);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            if *pos < g.offsets[v + 1] {
                let w = g.edges[*pos].1 as usize;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    calls.push((w, g.offsets[w]));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("vertex on the Tarjan stack") as usize;
                    on_stack[w] = false;
                    component[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    Components {
        component,
        count: count as usize,
    }
}

/// Numbers of R-, L-, H- and D-classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreenCounts {
    pub r: usize,
    pub l: usize,
    pub h: usize,
    pub d: usize,
}

/// Green's class counts of a complete snapshot.
///
/// `x R y` iff each is reachable from the other in the right Cayley graph,
/// counting the empty path, so SCCs are exactly the R-classes; likewise L
/// with the left graph. H-classes are the nonempty intersections of an
/// R-class and an L-class. D-classes are the SCCs of the union of both
/// graphs, which in a finite semigroup are the J-classes.
pub fn green_counts(s: &Snapshot) -> Result<GreenCounts> {
    let right = cayley_graph(s, Side::Right)?;
    let left = cayley_graph(s, Side::Left)?;
    let rc = scc(&right);
    let lc = scc(&left);
    let mut pairs: Vec<(u32, u32)> = rc.component.iter().copied().zip(lc.component.iter().copied()).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let r = s.nr_generators();
    let both = IndexedDigraph::from_edges(
        s.len(),
        right.edges().chain(left.edges().map(|(u, a, v)| (u, a + r, v))),
    )?;
    Ok(GreenCounts {
        r: rc.count,
        l: lc.count,
        h: pairs.len(),
        d: scc(&both).count,
    })
}

/// Graphviz document. Edge labels are letter names `a0`, `a1`, ...; vertex
/// labels, when given, are the words.
pub fn export_dot(g: &IndexedDigraph, labels: Option<&[Word]>) -> Result<String> {
    if let Some(l) = labels {
        if l.len() != g.vertex_count() {
            return Err(Error::Precondition(format!(
                "{} labels for {} vertices",
                l.len(),
                g.vertex_count()
            )));
        }
    }
    let mut out = String::from("digraph {\n");
    for v in 0..g.vertex_count() {
        match labels {
            Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l[v]).unwrap(),
            None if g.out_edges(v).len() == 0 => writeln!(out, "  {v};").unwrap(),
            None => {}
        }
        for (a, w) in g.out_edges(v) {
            writeln!(out, "  {v} -> {w} [label=\"a{a}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
