//! Packings of edge-disjoint `k`-cliques in `K_s` (equivalently, `k`-subsets
//! of `[s]` pairwise sharing at most one point).
//!
//! Provides the prime-field construction with `s² + k·|inner|` blocks on
//! `s·k` points, an exact branch-and-bound search for small instances, a
//! table of known values, and a lower bound with a witness packing.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Blocks (sorted `k`-subsets) over the ground set `0..s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePacking {
    pub s: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl CliquePacking {
    /// Wraps the blocks without checking them; see [`validate_packing`].
    pub fn new(s: usize, k: usize, mut blocks: Vec<Vec<usize>>) -> CliquePacking {
        for b in &mut blocks {
            b.sort_unstable();
        }
        CliquePacking { s, k, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every pair of points as a block of size two.
    pub fn all_pairs(s: usize) -> CliquePacking {
        let blocks = (0..s)
            .flat_map(|u| (u + 1..s).map(move |v| vec![u, v]))
            .collect();
        CliquePacking { s, k: 2, blocks }
    }

    /// Same blocks over a larger ground set.
    pub fn with_ground(mut self, s: usize) -> CliquePacking {
        assert!(s >= self.s);
        self.s = s;
        self
    }
}

/// `floor(n/k · floor((n-1)/(k-1)))`: no packing can beat it, since each
/// point lies in at most `floor((n-1)/(k-1))` blocks.
pub fn double_floor_bound(n: usize, k: usize) -> usize {
    match k {
        0 => 0,
        1 => n,
        _ => n * ((n.saturating_sub(1)) / (k - 1)) / k,
    }
}

/// Blocks have `k` distinct in-range points, and no pair of points lies in
/// two blocks (for `k = 1`: blocks are distinct).
pub fn validate_packing(p: &CliquePacking) -> bool {
    let mut seen_pairs = HashSet::new();
    let mut seen_singletons = HashSet::new();
    for b in &p.blocks {
        if b.len() != p.k || b.iter().any(|&x| x >= p.s) || b.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if p.k == 1 && !seen_singletons.insert(b[0]) {
            return false;
        }
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                if !seen_pairs.insert((x, y)) {
                    return false;
                }
            }
        }
    }
    p.blocks.len() <= double_floor_bound(p.s, p.k)
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest prime strictly between `lo` and `hi`.
pub fn next_prime_in(lo: usize, hi: usize) -> Option<usize> {
    (lo.saturating_add(1)..hi).rev().find(|&x| is_prime(x))
}

/// Prime-field packing on `s·k` points `u(i,j) = i·s + j` (`i < k`, `j < s`).
///
/// Block `C(p,q)` takes point `j = (p + i·q) mod s` from every group `i`; two
/// such blocks meet in at most one group because `s` is prime. With `inner`
/// (a packing on `[s]`), a translated copy is added inside each group.
pub fn construct_design_prime(
    s: usize,
    k: usize,
    inner: Option<&CliquePacking>,
) -> Result<CliquePacking> {
    if !is_prime(s) {
        return Err(Error::Parameter(format!("{s} is not prime")));
    }
    if k < 2 || k > s {
        return Err(Error::Parameter(format!("block size {k} outside [2, {s}]")));
    }
    if let Some(inner) = inner {
        if inner.s != s || inner.k != k || !validate_packing(inner) {
            return Err(Error::Parameter(format!(
                "inner packing must be a valid ({s}, {k}) packing"
            )));
        }
    }
    let mut blocks = Vec::with_capacity(s * s + k * inner.map_or(0, CliquePacking::len));
    for p in 0..s {
        for q in 0..s {
            blocks.push((0..k).map(|i| i * s + (p + i * q) % s).collect());
        }
    }
    if let Some(inner) = inner {
        for i in 0..k {
            for b in &inner.blocks {
                blocks.push(b.iter().map(|&x| i * s + x).collect());
            }
        }
    }
    Ok(CliquePacking::new(s * k, k, blocks))
}

/// Known values of the packing number, as `(lower, upper)`.
pub fn lookup_a(n: usize, k: usize) -> Option<(usize, usize)> {
    const TABLE: [((usize, usize), (usize, usize)); 9] = [
        ((3, 2), (3, 3)),
        ((4, 2), (6, 6)),
        ((5, 3), (2, 2)),
        ((9, 3), (12, 12)),
        ((11, 3), (16, 16)),
        ((15, 3), (35, 35)),
        ((25, 4), (50, 50)),
        ((42, 4), (136, 136)),
        ((52, 5), (123, 124)),
    ];
    TABLE
        .iter()
        .find(|(key, _)| *key == (n, k))
        .map(|&(_, range)| range)
}

/// Exact maximum packing with one optimal witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactPacking {
    pub value: usize,
    pub witness: CliquePacking,
}

/// Whether [`brute_force_a`] accepts `(n, k)`.
pub fn brute_force_feasible(n: usize, k: usize) -> bool {
    match k {
        0 => false,
        1 | 2 => true,
        _ if n <= k => true,
        3 => n <= 10,
        _ => n <= 9,
    }
}

/// Exact packing number on the feasible range (`k = 2` any `n`; `k = 3`,
/// `n <= 10`; `k >= 4`, `n <= 9`). Larger instances are refused with an
/// estimate of the search space.
pub fn brute_force_a(n: usize, k: usize) -> Result<ExactPacking> {
    brute_force_a_with(n, k, Execution::default())
}

pub fn brute_force_a_with(n: usize, k: usize, exec: Execution) -> Result<ExactPacking> {
    if k == 0 {
        return Err(Error::Parameter("block size must be positive".into()));
    }
    if !brute_force_feasible(n, k) {
        let pairs = n * (n - 1) / 2;
        return Err(Error::Infeasible(format!(
            "exact packing search for n={n}, k={k} branches over {pairs} pairs \
             (up to 2^{pairs} nodes); supported: k=3 with n<=10, k>=4 with n<=9"
        )));
    }
    brute_force_a_unchecked(n, k, exec)
}

/// [`brute_force_a`] without the size guard. `n` must be at most 64.
pub fn brute_force_a_unchecked(n: usize, k: usize, exec: Execution) -> Result<ExactPacking> {
    let trivial = |blocks: Vec<Vec<usize>>| {
        let witness = CliquePacking::new(n, k, blocks);
        Ok(ExactPacking {
            value: witness.len(),
            witness,
        })
    };
    match k {
        0 => return Err(Error::Parameter("block size must be positive".into())),
        1 => return trivial((0..n).map(|v| vec![v]).collect()),
        2 => return trivial(CliquePacking::all_pairs(n).blocks),
        _ if n < k => return trivial(Vec::new()),
        _ if n > 64 => {
            return Err(Error::Parameter("exact search supports at most 64 points".into()))
        }
        _ => {}
    }
    // By symmetry some optimal packing contains the block {0, .., k-1}.
    let mut root = Node::new(n);
    root.cover((0..k).collect());
    let frontier = expand_frontier(root, k, 256);
    let global = AtomicUsize::new(0);
    let results = par::map(exec, &frontier, |node| {
        let mut search = Exact {
            k,
            global: &global,
            best: node.blocks.len(),
            best_blocks: node.blocks.clone(),
        };
        search.dfs(node.clone());
        global.fetch_max(search.best, Ordering::Relaxed);
        (search.best, search.best_blocks)
    });
    let (value, blocks) = results
        .into_iter()
        .reduce(|acc, r| if r.0 > acc.0 { r } else { acc })
        .expect("frontier is non-empty");
    let witness = CliquePacking::new(n, k, blocks);
    debug_assert!(validate_packing(&witness));
    Ok(ExactPacking { value, witness })
}

#[derive(Clone, Debug)]
struct Node {
    /// `avail[u]` bit `v`: pair `uv` may still be covered.
    avail: Vec<u64>,
    blocks: Vec<Vec<usize>>,
}

impl Node {
    fn new(n: usize) -> Node {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Node {
            avail: (0..n).map(|u| all & !(1 << u)).collect(),
            blocks: Vec::new(),
        }
    }

    fn cover(&mut self, block: Vec<usize>) {
        for &x in &block {
            for &y in &block {
                self.avail[x] &= !(1u64 << y);
            }
        }
        self.blocks.push(block);
    }

    fn forbid(&mut self, u: usize, v: usize) {
        self.avail[u] &= !(1 << v);
        self.avail[v] &= !(1 << u);
    }

    fn least_pair(&self) -> Option<(usize, usize)> {
        self.avail
            .iter()
            .enumerate()
            .find(|(_, &row)| row != 0)
            .map(|(u, &row)| (u, row.trailing_zeros() as usize))
    }

    /// Upper bound on blocks still addable: by available pairs and by
    /// per-point available degree.
    fn bound(&self, k: usize) -> usize {
        let pairs_per_block = k * (k - 1) / 2;
        let degrees: Vec<usize> = self.avail.iter().map(|r| r.count_ones() as usize).collect();
        let pairs = degrees.iter().sum::<usize>() / 2;
        let by_degree = degrees.iter().map(|d| d / (k - 1)).sum::<usize>() / k;
        (pairs / pairs_per_block).min(by_degree)
    }

    /// Children in search order: every block through the least available
    /// pair `uv` (remaining points above `v`, lexicographic), then "uv stays
    /// uncovered". `None` at a leaf.
    fn children(&self, k: usize) -> Option<Vec<Node>> {
        let (u, v) = self.least_pair()?;
        let common = self.avail[u] & self.avail[v] & !((2u64 << v) - 1);
        let mut out = Vec::new();
        let mut pick = vec![u, v];
        extend_cliques(self, common, k, &mut pick, &mut |block| {
            let mut child = self.clone();
            child.cover(block.to_vec());
            out.push(child);
        });
        let mut skip = self.clone();
        skip.forbid(u, v);
        out.push(skip);
        Some(out)
    }
}

/// Calls `f` for each way of completing `pick` to `k` points using points
/// from `cands` that are pairwise available, in lexicographic order.
fn extend_cliques(
    node: &Node,
    cands: u64,
    k: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if pick.len() == k {
        f(pick);
        return;
    }
    let mut rest = cands;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (rest.count_ones() as usize) + 1 < k - pick.len() {
            return;
        }
        pick.push(w);
        extend_cliques(node, rest & node.avail[w], k, pick, f);
        pick.pop();
    }
}

/// Breadth-first expansion until at least `target` nodes (or only leaves)
/// remain; the order matches depth-first order.
fn expand_frontier(root: Node, k: usize, target: usize) -> Vec<Node> {
    let mut level = vec![root];
    loop {
        if level.len() >= target {
            return level;
        }
        let mut next = Vec::new();
        let mut grew = false;
        for node in level {
            match node.children(k) {
                Some(children) => {
                    grew = true;
                    next.extend(children);
                }
                None => next.push(node),
            }
        }
        level = next;
        if !grew {
            return level;
        }
    }
}

struct Exact<'a> {
    k: usize,
    global: &'a AtomicUsize,
    best: usize,
    best_blocks: Vec<Vec<usize>>,
}

impl Exact<'_> {
    fn dfs(&mut self, node: Node) {
        if node.blocks.len() > self.best {
            self.best = node.blocks.len();
            self.best_blocks = node.blocks.clone();
            self.global.fetch_max(self.best, Ordering::Relaxed);
        }
        let bound = node.blocks.len() + node.bound(self.k);
        // Ties with another subtree's best are still explored so that the
        // reported witness does not depend on thread timing.
        if bound <= self.best || bound < self.global.load(Ordering::Relaxed) {
            return;
        }
        if let Some(children) = node.children(self.k) {
            for child in children {
                self.dfs(child);
            }
        }
    }
}

/// Lexicographic first-fit: scan all `k`-subsets of `[n]` in order and keep
/// each one whose pairs are all unused.
pub fn greedy_packing(n: usize, k: usize) -> CliquePacking {
    if k == 1 {
        return CliquePacking::new(n, 1, (0..n).map(|v| vec![v]).collect());
    }
    if k == 2 {
        return CliquePacking::all_pairs(n);
    }
    let mut used = vec![false; n * n];
    let mut blocks = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        pick: &mut Vec<usize>,
        used: &mut [bool],
        blocks: &mut Vec<Vec<usize>>,
    ) {
        if pick.len() == k {
            // Pairs inside the prefix may have been taken since it was built.
            let free = pick
                .iter()
                .enumerate()
                .all(|(i, &x)| pick[i + 1..].iter().all(|&y| !used[x * n + y]));
            if !free {
                return;
            }
            for (i, &x) in pick.iter().enumerate() {
                for &y in &pick[i + 1..] {
                    used[x * n + y] = true;
                }
            }
            blocks.push(pick.clone());
            return;
        }
        for w in start..n {
            if n - w < k - pick.len() {
                return;
            }
            if pick.iter().any(|&x| used[x * n + w]) {
                continue;
            }
            pick.push(w);
            rec(n, k, w + 1, pick, used, blocks);
            pick.pop();
        }
    }
    rec(n, k, 0, &mut pick, &mut used, &mut blocks);
    CliquePacking::new(n, k, blocks)
}

/// Number of `k`-subsets of `n`, saturating.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Largest `C(n, k)` for which the greedy packing is attempted.
pub const GREEDY_SUBSET_LIMIT: usize = 20_000_000;

/// Where a lower bound came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BoundSource {
    /// `n < k` or `k = 1`.
    Trivial,
    /// `k = 2`: every pair is a block.
    AllPairs,
    /// Prime-field construction with the given prime.
    PrimeDesign { prime: usize },
    Table,
    BruteForce,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingBound {
    pub bound: usize,
    pub source: BoundSource,
    /// Largest packing actually constructed (may be smaller than `bound`
    /// when the bound comes from the table).
    pub witness: Option<CliquePacking>,
    /// Only for the prime construction: whether `s² >= (14/15·(n+1)/k)²`.
    pub meets_squared_bound: Option<bool>,
}

/// Whether `(n, k)` satisfies `2 <= k <= 14/15·(n+1)/k` and `n/k >= 30`.
pub fn prime_design_applies(n: usize, k: usize) -> bool {
    k >= 2 && 15 * k * k <= 14 * (n + 1) && n >= 30 * k
}

/// A lower bound on the packing number with a witness.
///
/// * `k = 2`: all pairs, exact.
/// * When [`prime_design_applies`]: with `i = floor(n/(15k))` and `s` the
///   largest prime in `(14i, 15i)`, the `s²` blocks of the prime
///   construction on the first `s·k` points. If `s²` falls short of
///   `(14/15·(n+1)/k)²` the greedy packing is also tried.
/// * Otherwise the best of the table, exact search (when feasible) and the
///   greedy packing (when `C(n, k)` is at most [`GREEDY_SUBSET_LIMIT`]).
pub fn lower_bound_a(n: usize, k: usize) -> Result<PackingBound> {
    lower_bound_a_with(n, k, Execution::default())
}

pub fn lower_bound_a_with(n: usize, k: usize, exec: Execution) -> Result<PackingBound> {
    let exact = |witness: CliquePacking, source| PackingBound {
        bound: witness.len(),
        source,
        witness: Some(witness),
        meets_squared_bound: None,
    };
    match k {
        0 => return Err(Error::Parameter("block size must be positive".into())),
        1 => {
            let w = CliquePacking::new(n, 1, (0..n).map(|v| vec![v]).collect());
            return Ok(exact(w, BoundSource::Trivial));
        }
        2 => return Ok(exact(CliquePacking::all_pairs(n), BoundSource::AllPairs)),
        _ if n < k => return Ok(exact(CliquePacking::new(n, k, Vec::new()), BoundSource::Trivial)),
        _ => {}
    }
    let greedy = || (binomial(n, k) <= GREEDY_SUBSET_LIMIT).then(|| greedy_packing(n, k));
    if prime_design_applies(n, k) {
        let i = n / (15 * k);
        if let Some(s) = next_prime_in(14 * i, 15 * i) {
            let design = construct_design_prime(s, k, None)?.with_ground(n);
            let met = 15 * k * s >= 14 * (n + 1);
            let mut out = PackingBound {
                bound: design.len(),
                source: BoundSource::PrimeDesign { prime: s },
                witness: Some(design),
                meets_squared_bound: Some(met),
            };
            if !met {
                if let Some(g) = greedy().filter(|g| g.len() > out.bound) {
                    out.bound = g.len();
                    out.source = BoundSource::Greedy;
                    out.witness = Some(g);
                }
            }
            return Ok(out);
        }
    }
    let mut best: Option<(CliquePacking, BoundSource)> = None;
    let mut consider = |p: CliquePacking, src| {
        if best.as_ref().is_none_or(|(b, _)| p.len() > b.len()) {
            best = Some((p, src));
        }
    };
    if brute_force_feasible(n, k) {
        consider(brute_force_a_with(n, k, exec)?.witness, BoundSource::BruteForce);
    }
    if let Some(g) = greedy() {
        consider(g, BoundSource::Greedy);
    }
    let built = best.as_ref().map_or(0, |(p, _)| p.len());
    let table = lookup_a(n, k).map(|(lo, _)| lo).unwrap_or(0);
    let (witness, mut source) = match best {
        Some((p, src)) => (Some(p), src),
        None => (None, BoundSource::Table),
    };
    if table > built {
        source = BoundSource::Table;
    }
    Ok(PackingBound {
        bound: table.max(built),
        source,
        witness,
        meets_squared_bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        assert!(validate_packing(&CliquePacking::all_pairs(4)));
        let bad = CliquePacking::new(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        assert!(!validate_packing(&bad));
        assert!(validate_packing(&CliquePacking::new(5, 3, Vec::new())));
        let out_of_range = CliquePacking::new(3, 2, vec![vec![0, 3]]);
        assert!(!validate_packing(&out_of_range));
    }

    #[test]
    fn prime_design_examples() {
        let inner = CliquePacking::new(5, 3, vec![vec![0, 1, 2], vec![0, 3, 4]]);
        let d = construct_design_prime(5, 3, Some(&inner)).unwrap();
        assert_eq!((d.s, d.len()), (15, 31));
        assert!(validate_packing(&d));

        let inner = CliquePacking::new(3, 3, vec![vec![0, 1, 2]]);
        let d = construct_design_prime(3, 3, Some(&inner)).unwrap();
        assert_eq!((d.s, d.len()), (9, 12));
        assert!(validate_packing(&d));

        let inner = CliquePacking::new(2, 2, vec![vec![0, 1]]);
        let d = construct_design_prime(2, 2, Some(&inner)).unwrap();
        assert_eq!(d.len(), 6);
        assert!(validate_packing(&d));

        assert!(construct_design_prime(6, 2, None).is_err());
        assert!(construct_design_prime(3, 4, None).is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(brute_force_a(4, 2).unwrap().value, 6);
        assert_eq!(brute_force_a(5, 3).unwrap().value, 2);
        let seven = brute_force_a(7, 3).unwrap();
        assert_eq!(seven.value, 7);
        assert!(validate_packing(&seven.witness));
        assert!(matches!(brute_force_a(11, 3), Err(Error::Infeasible(_))));
        assert_eq!(brute_force_a(2, 3).unwrap().value, 0);
        assert_eq!(brute_force_a(3, 3).unwrap().value, 1);
    }

    #[test]
    fn execution_strategies_agree() {
        let a = brute_force_a_with(9, 3, Execution::Sequential).unwrap();
        let b = brute_force_a_with(9, 3, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value, 12);
    }

    #[test]
    fn table_lookup() {
        assert_eq!(lookup_a(42, 4), Some((136, 136)));
        assert_eq!(lookup_a(52, 5), Some((123, 124)));
        assert_eq!(lookup_a(15, 3), Some((35, 35)));
        assert_eq!(lookup_a(16, 3), None);
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime_in(140, 150), Some(149));
        assert_eq!(next_prime_in(14, 15), None);
        assert_eq!(next_prime_in(28, 30), Some(29));
    }

    #[test]
    fn lower_bound_examples() {
        let lb = lower_bound_a(450, 3).unwrap();
        assert_eq!(lb.bound, 22201);
        assert_eq!(lb.source, BoundSource::PrimeDesign { prime: 149 });
        assert_eq!(lb.meets_squared_bound, Some(true));
        let w = lb.witness.unwrap();
        assert_eq!(w.s, 450);
        assert!(w.blocks.iter().flatten().all(|&x| x < 149 * 3));
        assert!(validate_packing(&w));

        assert_eq!(lower_bound_a(9, 3).unwrap().bound, 12);
        let lb = lower_bound_a(60, 2).unwrap();
        assert_eq!(lb.bound, 1770);
        assert_eq!(lb.source, BoundSource::AllPairs);

        // The table beats every construction available at this size.
        let lb = lower_bound_a(42, 4).unwrap();
        assert_eq!((lb.bound, lb.source), (136, BoundSource::Table));
    }

    #[test]
    fn greedy_is_valid() {
        for (n, k) in [(7, 3), (13, 4), (20, 3)] {
            assert!(validate_packing(&greedy_packing(n, k)));
        }
        assert_eq!(greedy_packing(7, 3).len(), 7);
    }
}
