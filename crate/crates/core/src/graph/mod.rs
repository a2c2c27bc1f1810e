//! Simple undirected graphs with dense vertex ids, plus the small amount of
//! machinery every other module leans on: induced subgraphs, components,
//! vertex maps and same-order graph families.

mod bits;
pub mod canon;
pub mod embed;
pub mod generators;
pub mod graph6;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use bits::BitRow;

/// Immutable simple graph on vertices `0..n`.
///
/// Adjacency is stored twice: as a dense bit matrix (constant-time edge
/// queries and word-parallel candidate filtering during embedding search) and
/// as sorted neighbour lists.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
    name: Option<String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u).get(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub(crate) fn row(&self, v: usize) -> BitRow<'_> {
        BitRow::new(&self.adj[v * self.words..(v + 1) * self.words])
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        b.build()
    }

    /// Copy of the graph with `extra` isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Graph {
        let mut b = GraphBuilder::new(self.n + extra);
        for (u, v) in self.edges() {
            b.add_edge_unchecked(u, v);
        }
        let mut g = b.build();
        g.name = self.name.clone();
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut b = GraphBuilder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add_edge_unchecked(u, v);
        }
        for (u, v) in other.edges() {
            b.add_edge_unchecked(u + self.n, v + self.n);
        }
        b.build()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.n
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Proper 2-colouring `(side of vertex 0's component, other side)` if the
    /// graph is bipartite. Each component's smallest vertex gets side 0.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut side = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if side[s] != usize::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if side[v] == usize::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| side[v] == 0).collect();
        let b = (0..self.n).filter(|&v| side[v] == 1).collect();
        Some((a, b))
    }

    /// Size of a maximum clique, by exhaustive search. Desk scale only.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, clique: &mut Vec<usize>, cands: &[usize], best: &mut usize) {
            *best = (*best).max(clique.len());
            for (i, &v) in cands.iter().enumerate() {
                if clique.len() + cands.len() - i <= *best {
                    return;
                }
                let next: Vec<usize> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(v, w))
                    .collect();
                clique.push(v);
                grow(g, clique, &next, best);
                clique.pop();
            }
        }
        let all: Vec<usize> = (0..self.n).collect();
        let mut best = 0;
        grow(self, &mut Vec::new(), &all, &mut best);
        best
    }
}

impl PartialEq for Graph {
    /// Labelled equality: same order and same edge set. Names are ignored.
    fn eq(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

/// Mutable staging area for a [`Graph`]; graphs are frozen once built.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> GraphBuilder {
        GraphBuilder {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::Parameter(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::Parameter(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.edges.push((u.min(v), u.max(v)));
    }

    pub fn build(self) -> Graph {
        let n = self.n;
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        let mut neighbors = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in self.edges {
            let (wu, bu) = (u * words + v / 64, v % 64);
            if adj[wu] >> bu & 1 == 1 {
                continue;
            }
            adj[wu] |= 1 << bu;
            adj[v * words + u / 64] |= 1 << (u % 64);
            neighbors[u].push(v);
            neighbors[v].push(u);
            edge_count += 1;
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Graph {
            n,
            words,
            adj,
            neighbors,
            edge_count,
            name: None,
        }
    }
}

/// Injective map from the vertices of a pattern graph into a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    image: Vec<usize>,
}

impl VertexMap {
    pub fn new(image: Vec<usize>) -> Result<VertexMap> {
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter("vertex map is not injective".into()));
        }
        Ok(VertexMap { image })
    }

    pub fn identity(n: usize) -> VertexMap {
        VertexMap {
            image: (0..n).collect(),
        }
    }

    pub fn pattern_size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn get(&self, v: usize) -> usize {
        self.image[v]
    }

    /// `other ∘ self`: first map through `self`, then through `other`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }
}

/// An ordered family of graphs that all have the same number of vertices.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    members: Vec<Graph>,
}

impl FamilySpec {
    pub fn new(members: Vec<Graph>) -> Result<FamilySpec> {
        let Some(first) = members.first() else {
            return Err(Error::Parameter("a family needs at least one member".into()));
        };
        let n = first.n();
        if let Some(bad) = members.iter().find(|g| g.n() != n) {
            return Err(Error::Parameter(format!(
                "family members must share a vertex count: {} vs {}",
                n,
                bad.n()
            )));
        }
        Ok(FamilySpec { members })
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn t(&self) -> usize {
        self.members.len()
    }

    pub fn n(&self) -> usize {
        self.members[0].n()
    }

    /// Display name of member `i`: its own name, else `G{i+1}`.
    pub fn member_name(&self, i: usize) -> String {
        self.members[i]
            .name()
            .map(str::to_owned)
            .unwrap_or_else(|| format!("G{}", i + 1))
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            members: (0..self.t())
                .map(|i| MemberJson {
                    name: self.member_name(i),
                    graph6: graph6::encode(&self.members[i]),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &FamilyJson) -> Result<FamilySpec> {
        let members = json
            .members
            .iter()
            .map(|m| Ok(graph6::decode(&m.graph6)?.with_name(m.name.clone())))
            .collect::<Result<Vec<_>>>()?;
        FamilySpec::new(members)
    }
}

/// On-disk form of a [`FamilySpec`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub members: Vec<MemberJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MemberJson {
    pub name: String,
    pub graph6: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_loops_and_range() {
        let mut b = GraphBuilder::new(3);
        assert!(b.add_edge(1, 1).is_err());
        assert!(b.add_edge(0, 3).is_err());
        b.add_edge(2, 0).unwrap();
        b.add_edge(0, 2).unwrap();
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let g = Graph::from_edges(130, [(0, 129), (64, 65), (127, 128)]).unwrap();
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(65, 64));
        assert!(!g.has_edge(0, 128));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 129), (64, 65), (127, 128)]);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3], vec![4, 5]]);
        assert!(g.is_forest());
        let (a, b) = g.bipartition().unwrap();
        assert_eq!(a, vec![0, 2, 3, 4]);
        assert_eq!(b, vec![1, 5]);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tri.bipartition().is_none());
        assert_eq!(tri.clique_number(), 3);
    }

    #[test]
    fn vertex_map_must_be_injective() {
        assert!(VertexMap::new(vec![0, 2, 0]).is_err());
        assert_eq!(VertexMap::new(vec![3, 1]).unwrap().pattern_size(), 2);
    }

    #[test]
    fn family_requires_equal_orders() {
        assert!(FamilySpec::new(vec![]).is_err());
        assert!(FamilySpec::new(vec![Graph::empty(3), Graph::empty(4)]).is_err());
        let f = FamilySpec::new(vec![Graph::empty(3), Graph::empty(3).with_name("x")]).unwrap();
        assert_eq!(f.member_name(0), "G1");
        assert_eq!(f.member_name(1), "x");
        let back = FamilySpec::from_json(&f.to_json()).unwrap();
        assert_eq!(back.members(), f.members());
    }
}
