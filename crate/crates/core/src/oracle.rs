//! Exhaustive ground truth for tiny instances: the smallest induced-universal
//! host of a family and the smallest deletion set leaving an equitably
//! k-colorable graph.
//!
//! Both searches run in rounds of increasing answer size, so the first hit is
//! minimal. Each round is split into fixed chunks scanned with
//! [`par::find_first`], which makes the answer (and witness) independent of
//! the execution strategy.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::canon::canonical_code;
use crate::graph::embed::find_induced_embedding;
use crate::graph::generators::clique_union;
use crate::graph::{FamilySpec, Graph, GraphBuilder};
use crate::par::{self, Execution};

/// Environment variable overriding [`OracleBudget::max_states`].
pub const BUDGET_STATES_ENV: &str = "UNIVERSO_BUDGET_STATES";

/// Hard ceiling on host order for [`min_universal_size`].
pub const MAX_ORACLE_HOST: usize = 11;
/// Hard ceiling on graph order for [`min_equitable_deletion`].
pub const MAX_DELETION_N: usize = 20;

const CHUNK: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_host_vertices: usize,
    pub max_seconds: f64,
    pub max_states: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_host_vertices: 10,
            max_seconds: 300.0,
            max_states: 100_000_000,
        }
    }
}

impl OracleBudget {
    pub fn new(max_host_vertices: usize, max_seconds: f64, max_states: u64) -> Result<OracleBudget> {
        if max_host_vertices == 0 || !(max_seconds > 0.0) || max_states == 0 {
            return Err(Error::Parameter("oracle budget limits must be positive".into()));
        }
        Ok(OracleBudget {
            max_host_vertices,
            max_seconds,
            max_states,
        })
    }

    /// Default budget, with `max_states` taken from [`BUDGET_STATES_ENV`]
    /// when set.
    pub fn from_env() -> Result<OracleBudget> {
        let mut b = OracleBudget::default();
        if let Ok(raw) = std::env::var(BUDGET_STATES_ENV) {
            b.max_states = raw
                .trim()
                .parse()
                .ok()
                .filter(|&s| s > 0)
                .ok_or_else(|| Error::Parameter(format!("{BUDGET_STATES_ENV}={raw:?} is not a positive count")))?;
        }
        Ok(b)
    }
}

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome<T> {
    Exact(T),
    /// The answer is at least `lower_bound`; every smaller value was ruled
    /// out before the budget ran out.
    BudgetExceeded {
        lower_bound: usize,
        states: u64,
        reason: String,
    },
}

impl<T> OracleOutcome<T> {
    pub fn exact(self) -> Option<T> {
        match self {
            OracleOutcome::Exact(v) => Some(v),
            OracleOutcome::BudgetExceeded { .. } => None,
        }
    }
}

struct Meter {
    start: Instant,
    budget: OracleBudget,
    states: AtomicU64,
    tripped: AtomicBool,
}

impl Meter {
    fn new(budget: OracleBudget) -> Meter {
        Meter {
            start: Instant::now(),
            budget,
            states: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }

    fn add(&self, n: u64) -> bool {
        let total = self.states.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.budget.max_states {
            self.tripped.store(true, Ordering::Relaxed);
        }
        !self.tripped.load(Ordering::Relaxed)
    }

    fn over(&self) -> Option<String> {
        if self.tripped.load(Ordering::Relaxed) || self.states() > self.budget.max_states {
            return Some(format!("budget exceeded: more than {} states", self.budget.max_states));
        }
        let secs = self.start.elapsed().as_secs_f64();
        (secs > self.budget.max_seconds)
            .then(|| format!("budget exceeded: {secs:.1} s > {} s", self.budget.max_seconds))
    }

    fn states(&self) -> u64 {
        self.states.load(Ordering::Relaxed)
    }
}

/// All `bits`-bit masks with `ones` set bits, in increasing order, fed to
/// `f` in chunks. Stops early when `f` returns `Some`.
fn for_each_chunk<R>(bits: usize, ones: usize, mut f: impl FnMut(&[u64]) -> Option<R>) -> Option<R> {
    debug_assert!(bits < 64);
    if ones > bits {
        return None;
    }
    let limit = 1u64 << bits;
    let mut x = if ones == 0 { 0 } else { (1u64 << ones) - 1 };
    let mut chunk = Vec::with_capacity(CHUNK);
    loop {
        chunk.push(x);
        if chunk.len() == CHUNK {
            if let Some(r) = f(&chunk) {
                return Some(r);
            }
            chunk.clear();
        }
        if x == 0 {
            break;
        }
        // Next mask with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
        if x >= limit {
            break;
        }
    }
    if chunk.is_empty() {
        None
    } else {
        f(&chunk)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinUniversal {
    pub size: usize,
    /// A host of that size with the fewest edges.
    pub witness: Graph,
    pub states: u64,
}

pub fn min_universal_size(family: &FamilySpec, budget: &OracleBudget) -> Result<OracleOutcome<MinUniversal>> {
    min_universal_size_with(family, budget, Execution::default())
}

/// Smallest `N` such that some `N`-vertex graph contains every member as an
/// induced subgraph.
///
/// For each `N` from `n` upward, member 0 is fixed on vertices `0..n` and
/// the remaining vertex pairs are enumerated by increasing edge count; hosts
/// isomorphic to one already tried are skipped. Every host containing member
/// 0 is isomorphic to one of these, so the first success is minimal in both
/// order and edge count.
pub fn min_universal_size_with(
    family: &FamilySpec,
    budget: &OracleBudget,
    exec: Execution,
) -> Result<OracleOutcome<MinUniversal>> {
    let n = family.n();
    let anchor = &family.members()[0];
    let meter = Meter::new(*budget);
    let ceiling = budget.max_host_vertices.min(MAX_ORACLE_HOST);
    for size in n.. {
        if size > ceiling {
            return Ok(OracleOutcome::BudgetExceeded {
                lower_bound: size,
                states: meter.states(),
                reason: format!("budget exceeded: host order {size} above limit {ceiling}"),
            });
        }
        let free: Vec<(usize, usize)> = (0..size)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|&(_, v)| v >= n)
            .collect();
        let mut seen: HashSet<u64> = HashSet::new();
        let mut exceeded = None;
        for ones in 0..=free.len() {
            let hit = for_each_chunk(free.len(), ones, |chunk| {
                if let Some(reason) = meter.over() {
                    exceeded = Some(reason);
                    return Some(None);
                }
                meter.add(chunk.len() as u64);
                let hosts: Vec<Graph> = chunk.iter().map(|&m| host_from_mask(anchor, size, &free, m)).collect();
                let codes = par::map(exec, &hosts, canonical_code);
                let fresh: Vec<&Graph> = hosts
                    .iter()
                    .zip(codes)
                    .filter(|(_, code)| seen.insert(*code))
                    .map(|(h, _)| h)
                    .collect();
                par::find_first(exec, &fresh, |host| {
                    family.members()[1..]
                        .iter()
                        .all(|g| find_induced_embedding(host, g).is_some())
                        .then(|| (*host).clone())
                })
                .map(Some)
            });
            match hit {
                Some(Some(witness)) => {
                    return Ok(OracleOutcome::Exact(MinUniversal {
                        size,
                        witness,
                        states: meter.states(),
                    }))
                }
                Some(None) => break,
                None => {}
            }
        }
        if let Some(reason) = exceeded {
            return Ok(OracleOutcome::BudgetExceeded {
                lower_bound: size,
                states: meter.states(),
                reason,
            });
        }
    }
    unreachable!("host order loop is unbounded")
}

fn host_from_mask(anchor: &Graph, size: usize, free: &[(usize, usize)], mask: u64) -> Graph {
    let mut b = GraphBuilder::new(size);
    for (u, v) in anchor.edges() {
        b.add_edge_unchecked(u, v);
    }
    for (i, &(u, v)) in free.iter().enumerate() {
        if mask >> i & 1 == 1 {
            b.add_edge_unchecked(u, v);
        }
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinDeletion {
    pub size: usize,
    /// Equitable coloring of `g \ X` with the minimum `X` as its deleted set.
    pub coloring: Coloring,
    pub states: u64,
}

pub fn min_equitable_deletion(g: &Graph, k: usize, budget: &OracleBudget) -> Result<OracleOutcome<MinDeletion>> {
    min_equitable_deletion_with(g, k, budget, Execution::default())
}

/// Smallest `|X|` such that `g \ X` has an equitable proper k-coloring,
/// trying every subset of each size in increasing order.
pub fn min_equitable_deletion_with(
    g: &Graph,
    k: usize,
    budget: &OracleBudget,
    exec: Execution,
) -> Result<OracleOutcome<MinDeletion>> {
    let n = g.n();
    if k == 0 {
        return Err(Error::Parameter("need at least one color".into()));
    }
    if n > MAX_DELETION_N {
        return Err(Error::Parameter(format!(
            "deletion oracle handles at most {MAX_DELETION_N} vertices, got {n}"
        )));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let meter = Meter::new(*budget);
    for q in 0..=n {
        let mut exceeded = None;
        let hit = for_each_chunk(n, q, |chunk| {
            if let Some(reason) = meter.over() {
                exceeded = Some(reason);
                return Some(None);
            }
            meter.add(chunk.len() as u64);
            par::find_first(exec, chunk, |&x| {
                let rest: Vec<usize> = (0..n).filter(|v| x >> v & 1 == 0).collect();
                equitable_assignment(&adj, &rest, k, &meter).map(|a| (x, rest, a))
            })
            .map(Some)
        });
        match hit {
            Some(Some((x, rest, assign))) => {
                let mut classes = vec![Vec::new(); k];
                for (&v, &c) in rest.iter().zip(&assign) {
                    classes[c].push(v);
                }
                let deleted = (0..n).filter(|v| x >> v & 1 == 1).collect();
                return Ok(OracleOutcome::Exact(MinDeletion {
                    size: q,
                    coloring: Coloring::new(classes, deleted)?,
                    states: meter.states(),
                }));
            }
            Some(None) => {}
            None => {}
        }
        if let Some(reason) = exceeded.or_else(|| meter.over()) {
            return Ok(OracleOutcome::BudgetExceeded {
                lower_bound: q,
                states: meter.states(),
                reason,
            });
        }
    }
    unreachable!("deleting every vertex always succeeds")
}

/// Class index per vertex of `rest` for an equitable k-coloring, by
/// backtracking with class capacities `ceil(m/k)` (at most `m mod k` classes
/// reach it) and only one empty class tried at each step.
fn equitable_assignment(adj: &[u64], rest: &[usize], k: usize, meter: &Meter) -> Option<Vec<usize>> {
    let m = rest.len();
    let (base, extra) = (m / k, m % k);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse((adj[rest[i]].count_ones(), std::cmp::Reverse(i))));
    let mut members = vec![0u64; k];
    let mut sizes = vec![0usize; k];
    let mut assign = vec![usize::MAX; m];
    let mut full = 0;
    let mut nodes = 0u64;
    let ok = place(
        adj, rest, &order, 0, base, extra, &mut members, &mut sizes, &mut full, &mut assign, &mut nodes, meter,
    );
    meter.add(nodes);
    ok.then_some(assign)
}

#[allow(clippy::too_many_arguments)]
fn place(
    adj: &[u64],
    rest: &[usize],
    order: &[usize],
    depth: usize,
    base: usize,
    extra: usize,
    members: &mut [u64],
    sizes: &mut [usize],
    full: &mut usize,
    assign: &mut [usize],
    nodes: &mut u64,
    meter: &Meter,
) -> bool {
    if depth == order.len() {
        return true;
    }
    *nodes += 1;
    if nodes.is_multiple_of(4096) && !meter.add(*nodes) {
        *nodes = 0;
        return false;
    }
    let i = order[depth];
    let v = rest[i];
    let mut tried_empty = false;
    for c in 0..members.len() {
        if sizes[c] == 0 {
            if tried_empty {
                continue;
            }
            tried_empty = true;
        }
        if adj[v] & members[c] != 0 {
            continue;
        }
        let grows_past_base = sizes[c] == base;
        if sizes[c] > base || (grows_past_base && *full == extra) {
            continue;
        }
        members[c] |= 1 << v;
        sizes[c] += 1;
        *full += usize::from(grows_past_base);
        assign[i] = c;
        if place(adj, rest, order, depth + 1, base, extra, members, sizes, full, assign, nodes, meter) {
            return true;
        }
        *full -= usize::from(grows_past_base);
        sizes[c] -= 1;
        members[c] &= !(1 << v);
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundRow {
    /// Family `{G_1..G_j}`.
    pub j: usize,
    /// `sum_{i<=j} floor(n/i)`.
    pub expected: usize,
    /// Exact minimum, when the budget allowed.
    pub found: Option<usize>,
    /// Largest order ruled out plus one (equals `found` when exact).
    pub lower_bound: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCheck {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<LowerBoundRow>,
    pub complete: bool,
    pub all_pass: bool,
}

pub fn check_lower_bound_argument(n: usize, k: usize, budget: &OracleBudget) -> Result<LowerBoundCheck> {
    check_lower_bound_argument_with(n, k, budget, Execution::default())
}

/// Minimum host order of `{G_1..G_j}` (with `G_i` being `floor(n/i)` disjoint
/// `i`-cliques padded with isolated vertices) for every `j <= k`, compared
/// with `sum_{i<=j} floor(n/i)`. Stops at the first row the budget cuts off.
pub fn check_lower_bound_argument_with(
    n: usize,
    k: usize,
    budget: &OracleBudget,
    exec: Execution,
) -> Result<LowerBoundCheck> {
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let mut rows = Vec::new();
    let mut complete = true;
    for j in 1..=k {
        let members = (1..=j).map(|i| clique_union(n, i)).collect::<Result<Vec<_>>>()?;
        let family = FamilySpec::new(members)?;
        let expected = (1..=j).map(|i| n / i).sum();
        match min_universal_size_with(&family, budget, exec)? {
            OracleOutcome::Exact(r) => rows.push(LowerBoundRow {
                j,
                expected,
                found: Some(r.size),
                lower_bound: r.size,
                pass: r.size == expected,
            }),
            OracleOutcome::BudgetExceeded { lower_bound, .. } => {
                rows.push(LowerBoundRow {
                    j,
                    expected,
                    found: None,
                    lower_bound,
                    pass: false,
                });
                complete = false;
                break;
            }
        }
    }
    let all_pass = complete && rows.iter().all(|r| r.pass);
    Ok(LowerBoundCheck {
        n,
        k,
        rows,
        complete,
        all_pass,
    })
}
