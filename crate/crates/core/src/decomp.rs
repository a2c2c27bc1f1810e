//! Path decompositions: validation with a violation report, the nice form,
//! and constructions for caterpillars, trees and arbitrary graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Ordered bag sequence `X_1..X_r`. Bags are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
    width: usize,
    nice: bool,
}

/// One reason a decomposition fails to describe a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    VertexOutOfRange { bag: usize, vertex: usize },
    RepeatedInBag { bag: usize, vertex: usize },
    VertexMissing { vertex: usize },
    NotContiguous { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    WidthMismatch { recorded: usize, actual: usize },
    EndsNotEmpty,
    NotOneStep { bag: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Graph classes [`decompose`] knows how to handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompKind {
    Caterpillar,
    Tree,
    IntervalHeuristic,
}

fn width_of(bags: &[Vec<usize>]) -> usize {
    bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
}

impl PathDecomposition {
    /// Plain (not nice) decomposition; bags are sorted and the width computed.
    pub fn new(mut bags: Vec<Vec<usize>>) -> PathDecomposition {
        for bag in &mut bags {
            bag.sort_unstable();
        }
        let width = width_of(&bags);
        PathDecomposition {
            bags,
            width,
            nice: false,
        }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_nice(&self) -> bool {
        self.nice
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// First and last bag index of every vertex below `n` (absent if unused).
    pub fn occurrences(&self, n: usize) -> Vec<Option<(usize, usize)>> {
        let mut occ: Vec<Option<(usize, usize)>> = vec![None; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    occ[v] = Some(match occ[v] {
                        None => (i, i),
                        Some((first, _)) => (first, i),
                    });
                }
            }
        }
        occ
    }

    /// Vertices occurring in some bag, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.bags.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Checks the bag axioms against `g`: vertex and edge coverage,
    /// contiguity, the recorded width and, when flagged, the nice form.
    pub fn validate(&self, g: &Graph) -> ValidationReport {
        let n = g.n();
        let mut violations = Vec::new();
        let mut count = vec![0usize; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for (j, &v) in bag.iter().enumerate() {
                if v >= n {
                    violations.push(Violation::VertexOutOfRange { bag: i, vertex: v });
                } else if bag[..j].contains(&v) {
                    violations.push(Violation::RepeatedInBag { bag: i, vertex: v });
                } else {
                    count[v] += 1;
                }
            }
        }
        let occ = self.occurrences(n);
        for v in 0..n {
            match occ[v] {
                None => violations.push(Violation::VertexMissing { vertex: v }),
                Some((first, last)) if last - first + 1 != count[v] => {
                    violations.push(Violation::NotContiguous { vertex: v })
                }
                _ => {}
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                violations.push(Violation::EdgeUncovered { u, v });
            }
        }
        let actual = width_of(&self.bags);
        if actual != self.width {
            violations.push(Violation::WidthMismatch {
                recorded: self.width,
                actual,
            });
        }
        if self.nice {
            violations.extend(self.nice_violations());
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.validate(g).valid
    }

    fn nice_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.bags.first().is_none_or(|b| !b.is_empty())
            || self.bags.last().is_none_or(|b| !b.is_empty())
        {
            out.push(Violation::EndsNotEmpty);
        }
        for (i, w) in self.bags.windows(2).enumerate() {
            if symmetric_difference(&w[0], &w[1]) != 1 {
                out.push(Violation::NotOneStep { bag: i + 1 });
            }
        }
        out
    }

    /// Nice form: starts and ends with an empty bag and each step inserts or
    /// removes one vertex. Between consecutive input bags departing vertices
    /// are removed first, then arriving ones inserted, each in ascending id
    /// order. The result has `2·(vertices used) + 1` bags and the same width.
    pub fn make_nice(&self) -> Result<PathDecomposition> {
        let occ_len = self.bags.iter().flatten().max().map_or(0, |&m| m + 1);
        let occ = self.occurrences(occ_len);
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                let (first, last) = occ[v].expect("vertex occurs");
                if !(first..=last).all(|j| self.bags[j].contains(&v)) {
                    return Err(Error::Contract(format!(
                        "vertex {v} does not occupy a contiguous run of bags (seen in bag {i})"
                    )));
                }
            }
        }
        let mut out = vec![Vec::new()];
        let mut current: Vec<usize> = Vec::new();
        let empty = Vec::new();
        for bag in self.bags.iter().chain(std::iter::once(&empty)) {
            for v in current.clone() {
                if !bag.contains(&v) {
                    current.retain(|&w| w != v);
                    out.push(current.clone());
                }
            }
            for &v in bag {
                if !current.contains(&v) {
                    let at = current.partition_point(|&w| w < v);
                    current.insert(at, v);
                    out.push(current.clone());
                }
            }
        }
        let width = width_of(&out);
        Ok(PathDecomposition {
            bags: out,
            width,
            nice: true,
        })
    }

    /// Decomposition of the subgraph induced by `vertices`: bags are
    /// intersected with the set and vertex `vertices[i]` becomes `i`. Empty
    /// bags are kept, so the result may need [`make_nice`](Self::make_nice)
    /// again. Width never increases.
    pub fn induced(&self, vertices: &[usize]) -> PathDecomposition {
        let top = vertices.iter().copied().max().map_or(0, |m| m + 1);
        let mut index = vec![usize::MAX; top];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let bags = self
            .bags
            .iter()
            .map(|bag| {
                bag.iter()
                    .filter(|&&v| v < top && index[v] != usize::MAX)
                    .map(|&v| index[v])
                    .collect()
            })
            .collect();
        PathDecomposition::new(bags)
    }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| !b.contains(v)).count() + b.iter().filter(|v| !a.contains(v)).count()
}

/// Builds a decomposition of `g` for the declared class.
///
/// * `Caterpillar`: width 1 (0 without edges); every component must become a
///   path once its leaves are removed.
/// * `Tree`: centroid recursion on every component of a forest, width at most
///   `floor(log2 n)`.
/// * `IntervalHeuristic`: any graph; bags come from a greedy vertex ordering
///   that keeps the set of "open" vertices small. No optimality claim.
pub fn decompose(g: &Graph, kind: DecompKind) -> Result<PathDecomposition> {
    match kind {
        DecompKind::Caterpillar => caterpillar(g),
        DecompKind::Tree => tree(g),
        DecompKind::IntervalHeuristic => Ok(interval_heuristic(g)),
    }
}

fn caterpillar(g: &Graph) -> Result<PathDecomposition> {
    if !g.is_forest() {
        return Err(Error::Classification("caterpillar must be acyclic".into()));
    }
    let mut bags = Vec::new();
    for comp in g.components() {
        if comp.len() <= 2 {
            bags.push(comp);
            continue;
        }
        let spine: Vec<usize> = comp.iter().copied().filter(|&v| g.degree(v) >= 2).collect();
        let spine_degree = |v: usize| g.neighbors(v).iter().filter(|&&w| g.degree(w) >= 2).count();
        if spine.iter().any(|&v| spine_degree(v) > 2) {
            return Err(Error::Classification(format!(
                "component containing vertex {} is not a caterpillar",
                comp[0]
            )));
        }
        let start = spine
            .iter()
            .copied()
            .find(|&v| spine_degree(v) <= 1)
            .expect("a tree spine is a path");
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut at = start;
        while let Some(&next) = g
            .neighbors(at)
            .iter()
            .find(|&&w| w != prev && g.degree(w) >= 2)
        {
            order.push(next);
            prev = at;
            at = next;
        }
        for (i, &s) in order.iter().enumerate() {
            for &leaf in g.neighbors(s).iter().filter(|&&w| g.degree(w) == 1) {
                bags.push(vec![s, leaf]);
            }
            if let Some(&next) = order.get(i + 1) {
                bags.push(vec![s, next]);
            }
        }
    }
    Ok(PathDecomposition::new(bags))
}

fn tree(g: &Graph) -> Result<PathDecomposition> {
    if !g.is_forest() {
        return Err(Error::Classification("tree decomposition needs a forest".into()));
    }
    let mut bags = Vec::new();
    let mut alive = vec![true; g.n()];
    for comp in g.components() {
        centroid_bags(g, &comp, &mut alive, &mut Vec::new(), &mut bags);
    }
    Ok(PathDecomposition::new(bags))
}

/// Appends bags for the tree `comp` (all vertices alive); every bag also
/// contains the separators chosen above it.
fn centroid_bags(
    g: &Graph,
    comp: &[usize],
    alive: &mut [bool],
    above: &mut Vec<usize>,
    bags: &mut Vec<Vec<usize>>,
) {
    if comp.len() == 1 {
        let mut bag = above.clone();
        bag.push(comp[0]);
        bags.push(bag);
        return;
    }
    let c = centroid(g, comp, alive);
    alive[c] = false;
    above.push(c);
    for &start in g.neighbors(c) {
        if !alive[start] {
            continue;
        }
        let sub = collect_alive(g, start, alive);
        centroid_bags(g, &sub, alive, above, bags);
    }
    above.pop();
}

fn collect_alive(g: &Graph, start: usize, alive: &[bool]) -> Vec<usize> {
    let mut seen = vec![start];
    let mut stack = vec![(start, usize::MAX)];
    while let Some((u, parent)) = stack.pop() {
        for &w in g.neighbors(u) {
            if w != parent && alive[w] {
                seen.push(w);
                stack.push((w, u));
            }
        }
    }
    seen.sort_unstable();
    seen
}

/// Vertex whose removal leaves components of at most half the size; the
/// lowest id wins ties.
fn centroid(g: &Graph, comp: &[usize], alive: &[bool]) -> usize {
    let root = comp[0];
    let mut order = Vec::with_capacity(comp.len());
    let mut parent = std::collections::HashMap::new();
    parent.insert(root, usize::MAX);
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in g.neighbors(u) {
            if alive[w] && w != parent[&u] {
                parent.insert(w, u);
                stack.push(w);
            }
        }
    }
    let mut size = std::collections::HashMap::new();
    for &u in order.iter().rev() {
        let s = 1 + g
            .neighbors(u)
            .iter()
            .filter(|&&w| alive[w] && parent.get(&w) == Some(&u))
            .map(|w| size[w])
            .sum::<usize>();
        size.insert(u, s);
    }
    let total = comp.len();
    comp.iter()
        .copied()
        .find(|&u| {
            let biggest_child = g
                .neighbors(u)
                .iter()
                .filter(|&&w| alive[w] && parent.get(&w) == Some(&u))
                .map(|w| size[w])
                .max()
                .unwrap_or(0);
            biggest_child.max(total - size[&u]) * 2 <= total
        })
        .expect("every tree has a centroid")
}

/// Vertex-separation style decomposition: vertices are placed one at a time
/// and each bag holds the new vertex plus every earlier vertex that still has
/// an unplaced neighbour. The next vertex minimises how many vertices stay
/// open afterwards, then
/// prefers many placed neighbours, then the lowest id.
fn interval_heuristic(g: &Graph) -> PathDecomposition {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut unplaced_nb: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut open: Vec<usize> = Vec::new();
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |v: usize| {
            let closing = g
                .neighbors(v)
                .iter()
                .filter(|&&w| placed[w] && unplaced_nb[w] == 1)
                .count();
            let stays = usize::from(unplaced_nb[v] > 0);
            let placed_nb = g.degree(v) - unplaced_nb[v];
            (open.len() + stays - closing, usize::MAX - placed_nb, v)
        };
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| score(v))
            .expect("unplaced vertex remains");
        let mut bag = open.clone();
        bag.push(v);
        bags.push(bag);
        placed[v] = true;
        for &w in g.neighbors(v) {
            unplaced_nb[w] -= 1;
        }
        open.push(v);
        open.retain(|&w| unplaced_nb[w] > 0);
    }
    PathDecomposition::new(bags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, path, sample_caterpillar, star};

    fn sizes(d: &PathDecomposition) -> Vec<usize> {
        d.bags().iter().map(Vec::len).collect()
    }

    #[test]
    fn validation_examples() {
        let p4 = path(4);
        let d = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert!(d.is_valid_for(&p4));
        assert_eq!(d.width(), 1);

        let k3 = complete(3);
        let d = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        let report = d.validate(&k3);
        assert!(!report.valid);
        assert_eq!(report.violations, vec![Violation::EdgeUncovered { u: 0, v: 2 }]);

        let d = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let report = d.validate(&path(3));
        assert!(report.violations.contains(&Violation::NotContiguous { vertex: 0 }));
    }

    #[test]
    fn nice_form_examples() {
        let d = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        let nice = d.make_nice().unwrap();
        assert_eq!(sizes(&nice), vec![0, 1, 2, 1, 2, 1, 0]);
        assert!(nice.is_valid_for(&path(3)));
        assert_eq!(nice.make_nice().unwrap(), nice);

        let d = PathDecomposition::new(vec![vec![0, 1, 2]]);
        let nice = d.make_nice().unwrap();
        assert_eq!(sizes(&nice), vec![0, 1, 2, 3, 2, 1, 0]);
        assert_eq!(nice.width(), 2);
    }

    #[test]
    fn make_nice_rejects_gaps() {
        let d = PathDecomposition::new(vec![vec![0], vec![1], vec![0]]);
        assert!(matches!(d.make_nice(), Err(Error::Contract(_))));
    }

    #[test]
    fn constructions() {
        let cat = sample_caterpillar();
        let d = decompose(&cat, DecompKind::Caterpillar).unwrap();
        assert_eq!(d.width(), 1);
        assert!(d.is_valid_for(&cat));

        let s = star(4).unwrap();
        assert_eq!(decompose(&s, DecompKind::Caterpillar).unwrap().width(), 1);
        let p = path(9);
        assert_eq!(decompose(&p, DecompKind::Caterpillar).unwrap().width(), 1);
        assert_eq!(decompose(&p, DecompKind::IntervalHeuristic).unwrap().width(), 1);
        let t = decompose(&p, DecompKind::Tree).unwrap();
        assert!(t.is_valid_for(&p) && t.width() <= 3);
    }

    #[test]
    fn classification_errors() {
        let k3 = complete(3);
        assert!(matches!(
            decompose(&k3, DecompKind::Tree),
            Err(Error::Classification(_))
        ));
        // Spider with three legs of length two is a tree but not a caterpillar.
        let spider =
            Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(matches!(
            decompose(&spider, DecompKind::Caterpillar),
            Err(Error::Classification(_))
        ));
        assert!(decompose(&spider, DecompKind::Tree).unwrap().is_valid_for(&spider));
    }

    #[test]
    fn json_shape() {
        let d = PathDecomposition::new(vec![vec![1, 0]]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"bags":[[0,1]],"width":1,"nice":false}"#);
    }
}
