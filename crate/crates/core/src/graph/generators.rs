//! Deterministic graph generators with fixed vertex numbering, plus a few
//! seeded random generators used for fuzzing and synthetic families.
//!
//! Numbering conventions:
//! - cliques and parts are laid out consecutively, in the order listed;
//! - stars have their centre at 0;
//! - caterpillars number the spine `0..m` first, then the leaves of spine
//!   vertex 0, then those of spine vertex 1, and so on;
//! - complete binary trees use heap order (parent of `v` is `(v - 1) / 2`);
//! - ladders put the top row at `0..m` and the bottom row at `m..2m`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

/// `⌊n/i⌋` disjoint `i`-cliques followed by `n mod i` isolated vertices.
pub fn clique_union(n: usize, i: usize) -> Result<Graph> {
    if i == 0 || i > n {
        return Err(Error::Parameter(format!(
            "clique size must lie in 1..={n}, got {i}"
        )));
    }
    let mut b = GraphBuilder::new(n);
    for c in 0..n / i {
        let base = c * i;
        for u in base..base + i {
            for v in u + 1..base + i {
                b.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(b.build().with_name(format!("G{i}")))
}

/// Disjoint union of cliques with the given sizes, laid out in order.
pub fn clique_union_of(sizes: &[usize]) -> Graph {
    let n = sizes.iter().sum();
    let mut b = GraphBuilder::new(n);
    let mut base = 0;
    for &s in sizes {
        for u in base..base + s {
            for v in u + 1..base + s {
                b.add_edge_unchecked(u, v);
            }
        }
        base += s;
    }
    b.build()
}

pub fn path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge_unchecked(v - 1, v);
    }
    b.build()
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("a cycle needs 3 vertices, got {n}")));
    }
    let mut b = GraphBuilder::new(n);
    for v in 0..n {
        b.add_edge_unchecked(v, (v + 1) % n);
    }
    Ok(b.build())
}

pub fn complete(n: usize) -> Graph {
    clique_union_of(&[n])
}

/// `K_{1,n-1}` with centre 0.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("a star needs at least one vertex".into()));
    }
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge_unchecked(0, v);
    }
    Ok(b.build())
}

/// Complete multipartite graph on consecutive parts of the given sizes.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut b = GraphBuilder::new(n);
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &s in parts {
        offsets.push(acc);
        acc += s;
    }
    for (i, &si) in parts.iter().enumerate() {
        for (j, &sj) in parts.iter().enumerate().skip(i + 1) {
            for u in offsets[i]..offsets[i] + si {
                for v in offsets[j]..offsets[j] + sj {
                    b.add_edge_unchecked(u, v);
                }
            }
        }
    }
    b.build()
}

pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    complete_multipartite(&[p, q])
}

/// Part sizes of the complete `k`-partite graph that needs `p` deletions
/// before it becomes equitably `k`-colourable: `k - 1` small parts summing to
/// `p` (sizes `⌈p/(k-1)⌉` first, then `⌊p/(k-1)⌋`), then one large part of
/// `2p + 2k - 1` vertices.
pub fn hard_kpartite_sizes(k: usize, p: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::Parameter(format!("hard k-partite graph needs k >= 2, got {k}")));
    }
    let small = k - 1;
    let mut sizes: Vec<usize> = (0..small)
        .map(|i| p / small + usize::from(i < p % small))
        .collect();
    sizes.push(2 * p + 2 * k - 1);
    Ok(sizes)
}

pub fn hard_kpartite(k: usize, p: usize) -> Result<Graph> {
    Ok(complete_multipartite(&hard_kpartite_sizes(k, p)?))
}

/// Caterpillar with one spine vertex per entry of `leaves`, spine vertex `i`
/// carrying `leaves[i]` pendant vertices.
pub fn caterpillar(leaves: &[usize]) -> Result<Graph> {
    if leaves.is_empty() {
        return Err(Error::Parameter("a caterpillar needs a spine".into()));
    }
    let m = leaves.len();
    let n = m + leaves.iter().sum::<usize>();
    let mut b = GraphBuilder::new(n);
    for i in 1..m {
        b.add_edge_unchecked(i - 1, i);
    }
    let mut next = m;
    for (i, &l) in leaves.iter().enumerate() {
        for _ in 0..l {
            b.add_edge_unchecked(i, next);
            next += 1;
        }
    }
    Ok(b.build())
}

/// Leaf profile of a 29-vertex caterpillar whose bipartition is 18/11, so it
/// has no equitable 2-colouring but becomes one after a single deletion.
pub const SAMPLE_CATERPILLAR_LEAVES: [usize; 7] = [3, 6, 2, 0, 2, 8, 1];

pub fn sample_caterpillar() -> Graph {
    caterpillar(&SAMPLE_CATERPILLAR_LEAVES)
        .expect("non-empty spine")
        .with_name("caterpillar29")
}

pub fn complete_binary_tree(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge_unchecked((v - 1) / 2, v);
    }
    b.build()
}

/// The `2 × m` grid.
pub fn ladder(m: usize) -> Graph {
    let mut b = GraphBuilder::new(2 * m);
    for i in 0..m {
        b.add_edge_unchecked(i, m + i);
        if i + 1 < m {
            b.add_edge_unchecked(i, i + 1);
            b.add_edge_unchecked(m + i, m + i + 1);
        }
    }
    b.build()
}

/// `⌊n/2⌋` disjoint edges, plus one isolated vertex when `n` is odd.
pub fn matching(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 0..n / 2 {
        b.add_edge_unchecked(2 * i, 2 * i + 1);
    }
    b.build()
}

/// Named families accepted by [`generate_named`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NamedKind {
    Path { n: usize },
    Star { n: usize },
    Caterpillar { leaves: Vec<usize> },
    CompleteBipartite { p: usize, q: usize },
    HardKpartite { k: usize, p: usize },
}

pub fn generate_named(kind: &NamedKind) -> Result<Graph> {
    match kind {
        NamedKind::Path { n } if *n == 0 => Err(Error::Parameter("empty path".into())),
        NamedKind::Path { n } => Ok(path(*n)),
        NamedKind::Star { n } => star(*n),
        NamedKind::Caterpillar { leaves } => caterpillar(leaves),
        NamedKind::CompleteBipartite { p, q } => Ok(complete_bipartite(*p, *q)),
        NamedKind::HardKpartite { k, p } => hard_kpartite(*k, *p),
    }
}

/// Uniform random recursive tree: vertex `v > 0` attaches to a uniformly
/// chosen earlier vertex.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge_unchecked(rng.gen_range(0..v), v);
    }
    b.build()
}

/// Random caterpillar on exactly `n >= 1` vertices.
pub fn random_caterpillar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let spine = rng.gen_range(1..=n);
    let mut leaves = vec![0; spine];
    for _ in 0..n - spine {
        leaves[rng.gen_range(0..spine)] += 1;
    }
    caterpillar(&leaves).expect("non-empty spine")
}

/// Random forest on `2 * side` vertices whose edges all join `0..side` to
/// `side..2*side`, so the two halves form an equitable 2-colouring.
pub fn random_balanced_bipartite_forest<R: Rng + ?Sized>(side: usize, rng: &mut R) -> Graph {
    let n = 2 * side;
    let mut pairs: Vec<(usize, usize)> = (0..side)
        .flat_map(|a| (side..n).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let target = if n > 1 { rng.gen_range(0..n) } else { 0 };
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut b = GraphBuilder::new(n);
    let mut added = 0;
    for (u, v) in pairs {
        if added == target {
            break;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            b.add_edge_unchecked(u, v);
            added += 1;
        }
    }
    b.build()
}

/// Erdős–Rényi `G(n, prob)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, prob: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                b.add_edge_unchecked(u, v);
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn clique_union_examples() {
        let g = clique_union(6, 3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);

        let g = clique_union(7, 3).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.components().len(), 3);
        assert_eq!(g.degree(6), 0);

        let g = clique_union(5, 1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 0));

        assert!(clique_union(5, 0).is_err());
        assert!(clique_union(5, 6).is_err());
    }

    #[test]
    fn clique_union_shape_is_exact() {
        for n in 1..=30 {
            for i in 1..=n {
                let g = clique_union(n, i).unwrap();
                assert_eq!(g.n(), n / i * i + n % i);
                assert!(g.clique_number() <= i);
            }
        }
    }

    #[test]
    fn named_examples() {
        let g = hard_kpartite(2, 2).unwrap();
        assert_eq!(hard_kpartite_sizes(2, 2).unwrap(), vec![2, 7]);
        assert_eq!((g.n(), g.edge_count()), (9, 14));

        let g = generate_named(&NamedKind::Star { n: 4 }).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.degree(0)), (4, 3, 3));

        assert_eq!(hard_kpartite_sizes(3, 1).unwrap(), vec![1, 0, 7]);
        assert_eq!(hard_kpartite_sizes(4, 5).unwrap(), vec![2, 2, 1, 17]);
        assert!(hard_kpartite(1, 3).is_err());
    }

    #[test]
    fn sample_caterpillar_is_unbalanced() {
        let g = sample_caterpillar();
        assert_eq!(g.n(), 29);
        assert!(g.is_connected() && g.is_forest());
        let (a, b) = g.bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (18, 11));
    }

    #[test]
    fn random_generators_shapes() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..40 {
            let t = random_tree(n, &mut rng);
            assert!(t.is_connected() && t.is_forest() && t.n() == n);
            let c = random_caterpillar(n, &mut rng);
            assert!(c.is_connected() && c.is_forest() && c.n() == n);
        }
        let f = random_balanced_bipartite_forest(10, &mut rng);
        assert!(f.is_forest());
        assert!(f.edges().all(|(u, v)| u < 10 && v >= 10));
    }

    #[test]
    fn ladder_and_tree() {
        let l = ladder(3);
        assert_eq!((l.n(), l.edge_count()), (6, 7));
        let t = complete_binary_tree(15);
        assert!(t.is_forest() && t.is_connected());
        assert_eq!(t.degree(0), 2);
    }
}
