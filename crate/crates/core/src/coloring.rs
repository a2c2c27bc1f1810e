//! Equitable and almost-equitable colorings.
//!
//! A coloring is a list of stable classes plus an explicit deletion set `X`.
//! The central routine, [`almost_equitable_coloring`], turns any proper
//! k-coloring of a graph with a width-`p` path decomposition into an
//! equitable k-coloring of `G \ X` with `|X| = p(k-1)`, by repeatedly
//! rebalancing the least and most frequent classes along the decomposition.

use serde::{Deserialize, Serialize};

use crate::decomp::PathDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Disjoint stable classes `C_1..C_k` and a deletion set `X`. All vertex
/// lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    classes: Vec<Vec<usize>>,
    #[serde(default)]
    deleted: Vec<usize>,
}

impl Coloring {
    /// Checks disjointness; sorts every list.
    pub fn new(mut classes: Vec<Vec<usize>>, mut deleted: Vec<usize>) -> Result<Coloring> {
        for class in &mut classes {
            class.sort_unstable();
        }
        deleted.sort_unstable();
        let mut all: Vec<usize> = classes.iter().flatten().chain(&deleted).copied().collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parameter(format!(
                "vertex {} appears twice in the coloring",
                w[0]
            )));
        }
        Ok(Coloring { classes, deleted })
    }

    /// Coloring from a per-vertex class index.
    pub fn from_assignment(assign: &[usize], k: usize) -> Result<Coloring> {
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in assign.iter().enumerate() {
            if c >= k {
                return Err(Error::Parameter(format!("vertex {v} has class {c} >= {k}")));
            }
            classes[c].push(v);
        }
        Coloring::new(classes, Vec::new())
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn deleted(&self) -> &[usize] {
        &self.deleted
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Number of vertices in classes or in `X`.
    pub fn covered(&self) -> usize {
        self.classes.iter().map(Vec::len).sum::<usize>() + self.deleted.len()
    }

    /// Every listed vertex exists in `g` and every class is stable.
    pub fn is_proper(&self, g: &Graph) -> bool {
        let in_range = self
            .classes
            .iter()
            .flatten()
            .chain(&self.deleted)
            .all(|&v| v < g.n());
        in_range && self.classes.iter().all(|c| g.is_stable(c))
    }

    /// Classes plus `X` account for every vertex of `g`.
    pub fn covers(&self, g: &Graph) -> bool {
        self.covered() == g.n() && self.is_proper(g)
    }

    fn spread(&self) -> usize {
        let sizes = self.sizes();
        let max = sizes.iter().copied().max().unwrap_or(0);
        let min = sizes.iter().copied().min().unwrap_or(0);
        max - min
    }
}

/// All classes stable in `g` and sizes pairwise within one.
pub fn is_equitable(c: &Coloring, g: &Graph) -> bool {
    c.is_proper(g) && c.spread() <= 1
}

/// How the rebalancing target was met.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RebalanceCase {
    /// The target equals `|C_1|`: nothing to do.
    Unchanged,
    /// The target is at most `|C_2|`: delete part of `C_2` and swap roles.
    ShrinkSecond,
    /// Bag `X_j` (last bag whose counter equals the target) is deleted.
    Bag,
}

/// Audit record of one rebalancing: the counters `(a_i, b_i)` for every bag
/// of the nice decomposition, the target and the bag that realised it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RebalanceTrace {
    pub target: usize,
    pub width: usize,
    pub counters: Vec<(usize, usize)>,
    pub case: RebalanceCase,
    /// 0-based index of the deleted bag for [`RebalanceCase::Bag`].
    pub chosen_bag: Option<usize>,
}

/// Result of [`rebalance_two_coloring`]: a 2-coloring of `g \ X` with
/// `|C'_1| = target` and `|X| <= p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rebalanced {
    pub coloring: Coloring,
    pub trace: RebalanceTrace,
}

/// Shifts a proper 2-coloring `(C_1, C_2)`, `|C_1| >= |C_2|`, so that the
/// first class has exactly `a` vertices after deleting at most `p` vertices,
/// where `p` is the width of the nice decomposition `decomp`.
///
/// For each bag `X_i` the vertices already left behind swap colors and the
/// ones still ahead keep theirs; the first-class counter then moves by one
/// per bag from `|C_1|` down to `|C_2|`, and the last bag where it equals `a`
/// has at most `p` vertices. Targets up to `|C_2|` are met by deleting the
/// lowest-id `|C_2| - a` vertices of `C_2` and swapping the roles.
pub fn rebalance_two_coloring(
    g: &Graph,
    decomp: &PathDecomposition,
    c: &Coloring,
    a: usize,
) -> Result<Rebalanced> {
    if !decomp.is_nice() {
        return Err(Error::Contract("rebalancing needs a nice decomposition".into()));
    }
    rebalance_with_width(g, decomp, c, a, decomp.width())
}

fn rebalance_with_width(
    g: &Graph,
    decomp: &PathDecomposition,
    c: &Coloring,
    a: usize,
    p: usize,
) -> Result<Rebalanced> {
    let report = decomp.validate(g);
    if !report.valid {
        return Err(Error::Contract(format!(
            "decomposition invalid for the graph: {:?}",
            report.violations
        )));
    }
    if c.k() != 2 || !c.deleted().is_empty() || !c.covers(g) {
        return Err(Error::Contract(
            "expected a proper 2-coloring covering every vertex".into(),
        ));
    }
    let (c1, c2) = (&c.classes[0], &c.classes[1]);
    if c1.len() < c2.len() {
        return Err(Error::Contract("first class must be the larger one".into()));
    }
    if a > c1.len() || a + p < c2.len() {
        return Err(Error::Contract(format!(
            "target {a} outside [{}, {}]",
            c2.len().saturating_sub(p),
            c1.len()
        )));
    }
    let n = g.n();
    let mut first = vec![false; n];
    for &v in c1 {
        first[v] = true;
    }
    let counters = counter_trace(decomp, &first, c1.len(), c2.len());
    let trace = |case, chosen_bag| RebalanceTrace {
        target: a,
        width: p,
        counters: counters.clone(),
        case,
        chosen_bag,
    };

    if a == c1.len() {
        return Ok(Rebalanced {
            coloring: c.clone(),
            trace: trace(RebalanceCase::Unchanged, None),
        });
    }
    if a <= c2.len() {
        let cut = c2.len() - a;
        let deleted = c2[..cut].to_vec();
        let coloring = Coloring::new(vec![c2[cut..].to_vec(), c1.clone()], deleted)?;
        return Ok(Rebalanced {
            coloring,
            trace: trace(RebalanceCase::ShrinkSecond, None),
        });
    }
    let j = counters
        .iter()
        .rposition(|&(ai, _)| ai == a)
        .expect("counter passes through every value between |C2| and |C1|");
    let bag = &decomp.bags()[j];
    if bag.len() > p {
        return Err(Error::Contract(format!(
            "bag {j} realising the target has {} > {p} vertices",
            bag.len()
        )));
    }
    let occ = decomp.occurrences(n);
    let mut new_first = Vec::new();
    let mut new_second = Vec::new();
    for v in 0..n {
        if bag.contains(&v) {
            continue;
        }
        let (_, last) = occ[v].expect("valid decomposition covers every vertex");
        let behind = last < j;
        if first[v] != behind {
            new_first.push(v);
        } else {
            new_second.push(v);
        }
    }
    let coloring = Coloring::new(vec![new_first, new_second], bag.clone())?;
    Ok(Rebalanced {
        coloring,
        trace: trace(RebalanceCase::Bag, Some(j)),
    })
}

/// `(a_i, b_i)` per bag: inserting `v` removes it from its current class,
/// dropping `v` from the bag returns it with the opposite color.
fn counter_trace(
    decomp: &PathDecomposition,
    first: &[bool],
    n1: usize,
    n2: usize,
) -> Vec<(usize, usize)> {
    let bags = decomp.bags();
    let mut out = Vec::with_capacity(bags.len());
    let (mut a, mut b) = (n1, n2);
    out.push((a, b));
    for w in bags.windows(2) {
        if w[1].len() > w[0].len() {
            let v = *w[1].iter().find(|v| !w[0].contains(v)).expect("one inserted vertex");
            if first[v] {
                a -= 1;
            } else {
                b -= 1;
            }
        } else {
            let v = *w[0].iter().find(|v| !w[1].contains(v)).expect("one removed vertex");
            if first[v] {
                b += 1;
            } else {
                a += 1;
            }
        }
        out.push((a, b));
    }
    out
}

/// One round of [`almost_equitable_coloring_traced`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    /// Positions (in the input coloring's numbering) of the least and most
    /// frequent class at the start of the round.
    pub least: usize,
    pub most: usize,
    pub target: usize,
    pub rebalance: RebalanceTrace,
    /// Vertices added to `X` beyond what rebalancing deleted.
    pub padding: Vec<usize>,
}

/// Equitable k-coloring of `g \ X` with `|X| = min{p(k-1), n-k}`, where `p`
/// is the width of `decomp` and `c` a proper k-coloring covering `g`.
pub fn almost_equitable_coloring(
    g: &Graph,
    decomp: &PathDecomposition,
    c: &Coloring,
) -> Result<Coloring> {
    almost_equitable_coloring_traced(g, decomp, c).map(|(col, _)| col)
}

/// [`almost_equitable_coloring`] plus one trace per rebalancing round.
///
/// Round `i` (1-based, `i < k`) takes the least and most frequent remaining
/// classes (lowest position wins ties), rebalances their union so that a
/// stable set of exactly `floor((n+p)/k) - p + d_i` vertices is split off
/// (`d_i = 1` for the first `(n+p) mod k` rounds), tops the deletion set up
/// to `p` vertices and returns the rest to the pool. The remaining class is
/// the k-th color. When `n < p(k-1) + k` the routine instead keeps the
/// lowest-id `k` vertices, one per class, and deletes the others.
pub fn almost_equitable_coloring_traced(
    g: &Graph,
    decomp: &PathDecomposition,
    c: &Coloring,
) -> Result<(Coloring, Vec<RoundTrace>)> {
    let n = g.n();
    let k = c.k();
    if k == 0 {
        return Err(Error::Parameter("need at least one color".into()));
    }
    if !c.deleted().is_empty() || !c.covers(g) {
        return Err(Error::Contract(
            "input must be a proper coloring covering every vertex".into(),
        ));
    }
    let report = decomp.validate(g);
    if !report.valid {
        return Err(Error::Contract(format!(
            "decomposition invalid for the graph: {:?}",
            report.violations
        )));
    }
    let p = decomp.width();
    if n < p * (k - 1) + k {
        return Ok((small_fallback(n, k), Vec::new()));
    }

    let base = (n + p) / k - p;
    let r = (n + p) % k;
    let mut pool: Vec<(usize, Vec<usize>)> = c.classes().iter().cloned().enumerate().collect();
    let mut finished = Vec::with_capacity(k);
    let mut deleted = Vec::new();
    let mut traces = Vec::new();
    for round in 1..k {
        let target = base + usize::from(r > 0 && round <= r);
        let most = (0..pool.len())
            .max_by(|&x, &y| pool[x].1.len().cmp(&pool[y].1.len()).then(y.cmp(&x)))
            .expect("at least two classes remain");
        let least = (0..pool.len())
            .filter(|&x| x != most)
            .min_by(|&x, &y| pool[x].1.len().cmp(&pool[y].1.len()).then(x.cmp(&y)))
            .expect("at least two classes remain");
        let (most_id, least_id) = (pool[most].0, pool[least].0);

        let mut union: Vec<usize> = pool[most].1.iter().chain(&pool[least].1).copied().collect();
        union.sort_unstable();
        let local = |v: usize| union.binary_search(&v).expect("vertex in union");
        let sub = g.induced_subgraph(&union);
        let sub_decomp = decomp.induced(&union).make_nice()?;
        let sub_coloring = Coloring::new(
            vec![
                pool[most].1.iter().map(|&v| local(v)).collect(),
                pool[least].1.iter().map(|&v| local(v)).collect(),
            ],
            Vec::new(),
        )?;
        let Rebalanced { coloring, trace } =
            rebalance_with_width(&sub, &sub_decomp, &sub_coloring, target, p)?;
        let back = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&v| union[v]).collect() };
        finished.push(back(&coloring.classes[0]));
        let mut rest = back(&coloring.classes[1]);
        let mut round_deleted = back(coloring.deleted());

        let (hi, lo) = (most.max(least), most.min(least));
        pool.remove(hi);
        pool.remove(lo);
        let mut padding = Vec::new();
        while round_deleted.len() < p {
            let v = if let Some(v) = rest.pop() {
                v
            } else {
                let donor = (0..pool.len())
                    .filter(|&x| !pool[x].1.is_empty())
                    .max_by(|&x, &y| pool[x].1.len().cmp(&pool[y].1.len()).then(y.cmp(&x)))
                    .ok_or_else(|| Error::Contract("no vertex left to pad the deletion set".into()))?;
                pool[donor].1.pop().expect("donor class is non-empty")
            };
            padding.push(v);
            round_deleted.push(v);
        }
        deleted.extend(round_deleted);
        rest.sort_unstable();
        pool.push((most_id.min(least_id), rest));
        pool.sort_by_key(|(id, _)| *id);
        traces.push(RoundTrace {
            least: least_id,
            most: most_id,
            target,
            rebalance: trace,
            padding,
        });
    }
    let (_, last) = pool.pop().expect("one class remains");
    finished.push(last);
    let out = Coloring::new(finished, deleted)?;
    if !is_equitable(&out, g) || out.deleted().len() != p * (k - 1) {
        return Err(Error::Contract(format!(
            "rebalancing produced sizes {:?} with {} deleted",
            out.sizes(),
            out.deleted().len()
        )));
    }
    Ok((out, traces))
}

/// Keeps vertices `0..min(n, k)` one per class and deletes the rest.
fn small_fallback(n: usize, k: usize) -> Coloring {
    let kept = n.min(k);
    let mut classes: Vec<Vec<usize>> = (0..kept).map(|v| vec![v]).collect();
    classes.resize(k, Vec::new());
    Coloring {
        classes,
        deleted: (kept..n).collect(),
    }
}

/// Grows the deletion set of an equitable coloring to `target` vertices by
/// repeatedly deleting the highest-id vertex of a largest class (lowest class
/// index on ties). Equitability is preserved at every step.
pub fn pad_deletion_set(g: &Graph, c: &Coloring, target: usize) -> Result<Coloring> {
    if !is_equitable(c, g) {
        return Err(Error::Contract("coloring is not equitable".into()));
    }
    if target < c.deleted().len() {
        return Err(Error::Contract(format!(
            "deletion set already has {} > {target} vertices",
            c.deleted().len()
        )));
    }
    if target + c.k() > g.n() {
        return Err(Error::Contract(format!(
            "target {target} exceeds n - k = {}",
            g.n().saturating_sub(c.k())
        )));
    }
    let mut out = c.clone();
    while out.deleted.len() < target {
        let largest = (0..out.k())
            .max_by(|&x, &y| out.classes[x].len().cmp(&out.classes[y].len()).then(y.cmp(&x)))
            .expect("at least one class");
        let v = out.classes[largest]
            .pop()
            .ok_or_else(|| Error::Contract("classes exhausted before reaching the target".into()))?;
        let at = out.deleted.partition_point(|&w| w < v);
        out.deleted.insert(at, v);
    }
    Ok(out)
}

/// First-fit coloring in vertex order; uses as many classes as needed.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut assign = vec![usize::MAX; n];
    let mut k = 0;
    for v in 0..n {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&w| assign[w]).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("some color is free");
        assign[v] = c;
        k = k.max(c + 1);
    }
    Coloring::from_assignment(&assign, k).expect("colors are below k")
}

/// Proper coloring with exactly `k` classes (some possibly empty), or `None`
/// when the heuristic gets stuck. Vertices are taken by descending degree and
/// each goes to the smallest admissible class. Bipartite graphs on which
/// this gets stuck fall back to their bipartition.
pub fn greedy_k_coloring(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut assign = vec![usize::MAX; n];
    let mut sizes = vec![0usize; k];
    for v in order {
        let Some(c) = (0..k)
            .filter(|&c| g.neighbors(v).iter().all(|&w| assign[w] != c))
            .min_by_key(|&c| (sizes[c], c))
        else {
            return bipartite_fallback(g, k);
        };
        assign[v] = c;
        sizes[c] += 1;
    }
    Coloring::from_assignment(&assign, k).ok()
}

fn bipartite_fallback(g: &Graph, k: usize) -> Option<Coloring> {
    if k < 2 {
        return None;
    }
    let (a, b) = g.bipartition()?;
    let mut classes = vec![a, b];
    classes.resize(k, Vec::new());
    Coloring::new(classes, Vec::new()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{decompose, DecompKind};
    use crate::graph::generators::{complete_bipartite, path, sample_caterpillar, star};

    fn col(classes: &[&[usize]]) -> Coloring {
        Coloring::new(classes.iter().map(|c| c.to_vec()).collect(), Vec::new()).unwrap()
    }

    fn nice(g: &Graph, kind: DecompKind) -> PathDecomposition {
        decompose(g, kind).unwrap().make_nice().unwrap()
    }

    #[test]
    fn equitable_examples() {
        let k33 = complete_bipartite(3, 3);
        assert!(is_equitable(&col(&[&[0, 1, 2], &[3, 4, 5]]), &k33));
        let s = star(5).unwrap();
        assert!(!is_equitable(&col(&[&[0], &[1, 2, 3, 4]]), &s));
        let e = Graph::empty(5);
        assert!(is_equitable(&col(&[&[0, 1], &[2, 3], &[4]]), &e));
    }

    #[test]
    fn caterpillar_rebalances_to_fourteen_each() {
        let g = sample_caterpillar();
        let (a, b) = g.bipartition().unwrap();
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        assert_eq!((big.len(), small.len()), (18, 11));
        let d = nice(&g, DecompKind::Caterpillar);
        let c = Coloring::new(vec![big, small], Vec::new()).unwrap();
        let out = rebalance_two_coloring(&g, &d, &c, 14).unwrap();
        assert_eq!(out.coloring.deleted().len(), 1);
        assert_eq!(out.coloring.sizes(), vec![14, 14]);
        assert!(out.coloring.is_proper(&g));
    }

    #[test]
    fn rebalance_identity_and_small_targets() {
        let g = path(4);
        let d = nice(&g, DecompKind::Caterpillar);
        let c = col(&[&[0, 2], &[1, 3]]);
        let same = rebalance_two_coloring(&g, &d, &c, 2).unwrap();
        assert_eq!(same.coloring, c);
        assert_eq!(same.trace.case, RebalanceCase::Unchanged);
        let one = rebalance_two_coloring(&g, &d, &c, 1).unwrap();
        assert!(one.coloring.deleted().len() <= 1);
        assert_eq!(one.coloring.sizes(), vec![1, 2]);
        assert!(one.coloring.is_proper(&g));
        assert!(rebalance_two_coloring(&g, &d, &c, 3).is_err());
        assert!(rebalance_two_coloring(&g, &d, &c, 0).is_err());
    }

    #[test]
    fn rebalance_requires_nice_input() {
        let g = path(4);
        let d = decompose(&g, DecompKind::Caterpillar).unwrap();
        let c = col(&[&[0, 2], &[1, 3]]);
        assert!(matches!(
            rebalance_two_coloring(&g, &d, &c, 2),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn counters_step_by_one() {
        let g = sample_caterpillar();
        let (a, b) = g.bipartition().unwrap();
        let d = nice(&g, DecompKind::Caterpillar);
        let c = Coloring::new(vec![a, b], Vec::new()).unwrap();
        let out = rebalance_two_coloring(&g, &d, &c, 18).unwrap();
        let t = &out.trace.counters;
        assert_eq!(t[0], (18, 11));
        assert_eq!(*t.last().unwrap(), (11, 18));
        for w in t.windows(2) {
            let da = w[0].0.abs_diff(w[1].0);
            let db = w[0].1.abs_diff(w[1].1);
            assert_eq!(da + db, 1);
        }
    }

    #[test]
    fn almost_equitable_examples() {
        let g = sample_caterpillar();
        let d = decompose(&g, DecompKind::Caterpillar).unwrap();
        let (a, b) = g.bipartition().unwrap();
        let c = Coloring::new(vec![a, b], Vec::new()).unwrap();
        let out = almost_equitable_coloring(&g, &d, &c).unwrap();
        assert_eq!(out.deleted().len(), 1);
        assert_eq!(out.sizes(), vec![14, 14]);

        let s = star(9).unwrap();
        let d = decompose(&s, DecompKind::Caterpillar).unwrap();
        let c = col(&[&[0], &[1, 2, 3, 4, 5, 6, 7, 8]]);
        let out = almost_equitable_coloring(&s, &d, &c).unwrap();
        assert_eq!(out.deleted(), &[0]);
        assert_eq!(out.sizes(), vec![4, 4]);
    }

    #[test]
    fn equitable_input_still_pads() {
        let g = path(6);
        let d = decompose(&g, DecompKind::Caterpillar).unwrap();
        let c = col(&[&[0, 2, 4], &[1, 3, 5]]);
        let out = almost_equitable_coloring(&g, &d, &c).unwrap();
        assert_eq!(out.deleted().len(), 1);
        assert!(is_equitable(&out, &g));
    }

    #[test]
    fn tiny_graphs_fall_back() {
        let g = path(3);
        let d = decompose(&g, DecompKind::Caterpillar).unwrap();
        let c = col(&[&[0, 2], &[1], &[]]);
        // p(k-1) + k = 5 > 3: keep 3 vertices one per class.
        let out = almost_equitable_coloring(&g, &d, &c).unwrap();
        assert!(out.deleted().is_empty());
        assert_eq!(out.sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn padding_examples() {
        let e = Graph::empty(6);
        let c = col(&[&[0, 1, 2], &[3, 4, 5]]);
        let out = pad_deletion_set(&e, &c, 2).unwrap();
        assert_eq!(out.sizes(), vec![2, 2]);
        assert_eq!(out.deleted(), &[2, 5]);
        assert_eq!(pad_deletion_set(&e, &c, 0).unwrap(), c);
        assert!(pad_deletion_set(&e, &c, 5).is_err());

        let e = Graph::empty(11);
        let c = col(&[&[0, 1, 2, 3], &[4, 5, 6, 7], &[8, 9, 10]]);
        assert_eq!(pad_deletion_set(&e, &c, 1).unwrap().sizes(), vec![3, 4, 3]);
    }

    #[test]
    fn greedy_colorings_are_proper() {
        let g = sample_caterpillar();
        let c = greedy_coloring(&g);
        assert_eq!(c.k(), 2);
        assert!(c.covers(&g));
        let c3 = greedy_k_coloring(&g, 3).unwrap();
        assert_eq!(c3.k(), 3);
        assert!(c3.covers(&g));
    }
}
