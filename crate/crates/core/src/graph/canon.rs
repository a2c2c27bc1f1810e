//! Canonical labelling for very small graphs and exhaustive generation of all
//! unlabelled graphs of a given order.
//!
//! Vertices are first split by colour refinement (degree, then the multiset
//! of neighbour colours, repeated to a fixed point); the canonical form is the
//! lexicographically largest upper-triangle code over all orderings that
//! respect the refined cells. Practical up to roughly 10 vertices.

use std::collections::HashSet;

use super::{Graph, GraphBuilder};

/// Largest order for which a canonical code fits in a `u64`.
pub const MAX_CANON_N: usize = 11;

/// Canonical code of `g`: equal for two graphs exactly when they are
/// isomorphic. Panics when `g` has more than [`MAX_CANON_N`] vertices.
pub fn canonical_code(g: &Graph) -> u64 {
    canonical_order(g).1
}

/// Relabelled copy of `g` in canonical form.
pub fn canonical_form(g: &Graph) -> Graph {
    relabel(g, &canonical_order(g).0)
}

fn relabel(g: &Graph, order: &[usize]) -> Graph {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut b = GraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        b.add_edge_unchecked(pos[u], pos[v]);
    }
    b.build()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b)
}

fn canonical_order(g: &Graph) -> (Vec<usize>, u64) {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical form limited to {MAX_CANON_N} vertices");
    let colour = refine(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_colour: Vec<usize> = (0..n).collect();
    by_colour.sort_by_key(|&v| colour[v]);
    for v in by_colour {
        match cells.last_mut() {
            Some(cell) if colour[cell[0]] == colour[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut best = (Vec::new(), 0u64);
    let mut found = false;
    search(g, &mut cells, 0, &mut order, &mut best, &mut found);
    best
}

fn search(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    best: &mut (Vec<usize>, u64),
    found: &mut bool,
) {
    if cell == cells.len() {
        let code = code_of(g, order);
        if !*found || code > best.1 {
            *best = (order.clone(), code);
            *found = true;
        }
        return;
    }
    let len = cells[cell].len();
    permute(g, cells, cell, 0, len, order, best, found);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    i: usize,
    len: usize,
    order: &mut Vec<usize>,
    best: &mut (Vec<usize>, u64),
    found: &mut bool,
) {
    if i == len {
        search(g, cells, cell + 1, order, best, found);
        return;
    }
    for j in i..len {
        cells[cell].swap(i, j);
        order.push(cells[cell][i]);
        permute(g, cells, cell, i + 1, len, order, best, found);
        order.pop();
        cells[cell].swap(i, j);
    }
}

fn code_of(g: &Graph, order: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            code = code << 1 | u64::from(g.has_edge(order[i], order[j]));
        }
    }
    code
}

/// Stable colouring by iterated neighbour-colour multisets. Colours are ranks
/// of sorted signatures, so they depend only on the isomorphism type.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&colour);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        colour = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("signature present"))
            .collect();
        let next = sorted.len();
        if next == classes {
            return colour;
        }
        classes = next;
    }
}

fn count_distinct(values: &[usize]) -> usize {
    values.iter().collect::<HashSet<_>>().len()
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// each in canonical form, sorted by edge count and then by code.
///
/// Generated by adding a vertex with every possible neighbourhood to each
/// class on `n - 1` vertices and keeping the distinct canonical codes.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_CANON_N);
    let mut level = vec![Graph::empty(0)];
    for m in 0..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << m) {
                let mut b = GraphBuilder::new(m + 1);
                for (u, v) in g.edges() {
                    b.add_edge_unchecked(u, v);
                }
                for u in 0..m {
                    if mask >> u & 1 == 1 {
                        b.add_edge_unchecked(u, m);
                    }
                }
                let h = b.build();
                let (order, code) = canonical_order(&h);
                if seen.insert(code) {
                    next.push(relabel(&h, &order));
                }
            }
        }
        level = next;
    }
    level.sort_by_key(|g| (g.edge_count(), canonical_code(g)));
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path, star};

    #[test]
    fn class_counts_small_orders() {
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn relabelling_preserves_code() {
        let g = path(5);
        let h = Graph::from_edges(5, [(3, 0), (0, 4), (4, 1), (1, 2)]).unwrap();
        assert!(is_isomorphic(&g, &h));
        assert!(!is_isomorphic(&g, &star(5).unwrap()));
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn regular_graphs_are_separated() {
        // C6 versus two disjoint triangles: both 2-regular on six vertices.
        let c6 = cycle(6).unwrap();
        let two_k3 =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_isomorphic(&c6, &two_k3));
    }
}
