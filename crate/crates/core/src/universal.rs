//! Induced-universal host constructions, each returning one embedding per
//! family member, and an independent verifier.
//!
//! * Clique unions: disjoint cliques with `floor(n/j)` cliques of size at
//!   least `j` for every `j <= k`.
//! * Block designs: members with an equitable k-coloring of `G \ X`,
//!   `|X| = p`, share `s` stable groups of `ceil((n-p)/k)` vertices. Member
//!   `i` owns block `Q_i` of a clique packing on the groups and `p` private
//!   vertices, so host size is `s·ceil((n-p)/k) + t·p`.
//! * The square-root variant picks `s = ceil(15/14·k·sqrt(t)) - 1`.
//! * The doubled variant pads every member to an equitably `2k`-colorable
//!   graph with no deletions before applying the square-root variant.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::coloring::{almost_equitable_coloring, is_equitable, pad_deletion_set, Coloring};
use crate::decomp::PathDecomposition;
use crate::design::{
    binomial, brute_force_a, brute_force_feasible, construct_design_prime, double_floor_bound,
    greedy_packing, lookup_a, lower_bound_a, validate_packing, CliquePacking, BoundSource,
    GREEDY_SUBSET_LIMIT,
};
use crate::error::{Error, Result};
use crate::graph::embed::is_induced_embedding;
use crate::graph::generators::clique_union;
use crate::graph::{FamilySpec, Graph, GraphBuilder, VertexMap};
use crate::par::{self, Execution};

/// Parameters of a block-design host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    /// Member order.
    pub n: usize,
    /// Classes per member.
    pub k: usize,
    /// Private vertices per member.
    pub p: usize,
    /// Number of stable groups.
    pub s: usize,
    /// Number of members.
    pub t: usize,
    /// `ceil((n - p) / k)`.
    pub group_size: usize,
    /// Block (group indices) used by each member, in family order.
    pub blocks: Vec<Vec<usize>>,
}

impl DesignParams {
    pub fn host_size(&self) -> usize {
        self.s * self.group_size + self.t * self.p
    }
}

/// How a host was built; enough to recompute its size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    CliqueUnion {
        n: usize,
        k: usize,
        /// Clique sizes in host order (non-increasing).
        cliques: Vec<usize>,
    },
    BlockDesign(DesignParams),
    Sqrt {
        #[serde(flatten)]
        design: DesignParams,
        packing_source: String,
        /// `t >= max(k², 811)`, so the size bound below is guaranteed.
        guaranteed: bool,
        /// `15/14·sqrt(t)·(n - p + k) + t·p`.
        size_bound: f64,
    },
    Doubled {
        /// Order of the original members.
        original_n: usize,
        original_k: usize,
        original_p: usize,
        /// Deleted vertices per member, `p·(k-1)`.
        q: usize,
        #[serde(flatten)]
        design: DesignParams,
        packing_source: String,
        /// `t >= max(4k², 811)` and `p(k²-1) <= n`.
        guaranteed: bool,
        /// `15/7·sqrt(t)·n`.
        size_bound: f64,
    },
}

impl Construction {
    /// Host vertex count predicted by the construction's formula.
    pub fn expected_host_size(&self) -> usize {
        match self {
            Construction::CliqueUnion { cliques, .. } => cliques.iter().sum(),
            Construction::BlockDesign(d) => d.host_size(),
            Construction::Sqrt { design, .. } | Construction::Doubled { design, .. } => {
                design.host_size()
            }
        }
    }

    /// Upper bound the construction promises, when it promises one.
    pub fn size_bound(&self) -> Option<f64> {
        match self {
            Construction::Sqrt {
                guaranteed: true,
                size_bound,
                ..
            }
            | Construction::Doubled {
                guaranteed: true,
                size_bound,
                ..
            } => Some(*size_bound),
            _ => None,
        }
    }

    fn member_images_disjoint(&self) -> bool {
        !matches!(self, Construction::CliqueUnion { .. })
    }
}

/// A host graph with one embedding per member name.
#[derive(Clone, Debug)]
pub struct UniversalGraph {
    pub host: Graph,
    pub embeddings: IndexMap<String, VertexMap>,
    pub construction: Construction,
}

/// JSON sidecar stored next to a graph6 host.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UniversalSidecar {
    pub construction: Construction,
    pub embeddings: IndexMap<String, Vec<usize>>,
}

impl UniversalGraph {
    pub fn sidecar(&self) -> UniversalSidecar {
        UniversalSidecar {
            construction: self.construction.clone(),
            embeddings: self
                .embeddings
                .iter()
                .map(|(name, m)| (name.clone(), m.image().to_vec()))
                .collect(),
        }
    }

    pub fn from_sidecar(host: Graph, sidecar: UniversalSidecar) -> Result<UniversalGraph> {
        let embeddings = sidecar
            .embeddings
            .into_iter()
            .map(|(name, image)| Ok((name, VertexMap::new(image)?)))
            .collect::<Result<_>>()?;
        Ok(UniversalGraph {
            host,
            embeddings,
            construction: sidecar.construction,
        })
    }
}

/// Clique sizes of the host for `(n, k)`: `floor(n/j) - floor(n/(j+1))`
/// cliques of size `j < k` and `floor(n/k)` of size `k`, largest first.
fn clique_layout(n: usize, k: usize) -> Vec<usize> {
    let mut sizes = Vec::with_capacity(n);
    for j in (1..=k).rev() {
        let at_least_j = n / j;
        let at_least_next = if j == k { 0 } else { n / (j + 1) };
        sizes.extend(std::iter::repeat_n(j, at_least_j - at_least_next));
    }
    sizes
}

/// Host for every disjoint union of cliques of size at most `k` on at most
/// `n` vertices, with `sum_{i<=k} floor(n/i)` vertices. Embeddings of the
/// members `G_1..G_k` (`floor(n/i)` disjoint `i`-cliques plus isolated
/// vertices) are included.
pub fn build_clique_union_universal(n: usize, k: usize) -> Result<UniversalGraph> {
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let cliques = clique_layout(n, k);
    let host = crate::graph::generators::clique_union_of(&cliques).with_name(format!("U{k}({n})"));
    let mut u = UniversalGraph {
        host,
        embeddings: IndexMap::new(),
        construction: Construction::CliqueUnion { n, k, cliques },
    };
    for i in 1..=k {
        let g = clique_union(n, i)?;
        let m = embed_clique_union(&u, &g)?;
        u.embeddings.insert(format!("G{i}"), m);
    }
    Ok(u)
}

/// Greedy embedding of a clique union into a host from
/// [`build_clique_union_universal`]: the `i`-th largest clique of `g` goes to
/// the `i`-th largest host clique.
pub fn embed_clique_union(u: &UniversalGraph, g: &Graph) -> Result<VertexMap> {
    let Construction::CliqueUnion { n, k, cliques } = &u.construction else {
        return Err(Error::Parameter("host is not a clique-union construction".into()));
    };
    if g.n() > *n {
        return Err(Error::Classification(format!(
            "graph has {} > {n} vertices",
            g.n()
        )));
    }
    let mut comps = g.components();
    if let Some(bad) = comps.iter().find(|c| !g.is_clique(c)) {
        return Err(Error::Classification(format!(
            "component of vertex {} is not a clique",
            bad[0]
        )));
    }
    if let Some(big) = comps.iter().find(|c| c.len() > *k) {
        return Err(Error::Classification(format!(
            "clique of size {} exceeds {k}",
            big.len()
        )));
    }
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut image = vec![0; g.n()];
    let mut start = 0;
    for (i, &size) in cliques.iter().enumerate() {
        if let Some(comp) = comps.get(i) {
            if comp.len() > size {
                return Err(Error::Classification(format!(
                    "clique {i} of size {} does not fit host clique of size {size}",
                    comp.len()
                )));
            }
            for (slot, &v) in comp.iter().enumerate() {
                image[v] = start + slot;
            }
        }
        start += size;
    }
    if comps.len() > cliques.len() {
        return Err(Error::Classification("more cliques than the host has".into()));
    }
    VertexMap::new(image)
}

/// Equitable k-coloring of `g \ X` with exactly `p` deleted vertices, from a
/// decomposition and a proper coloring: rebalances (unless `base` is already
/// equitable), then pads `X` to `p`. Fails when the decomposition's width
/// needs more than `p` deletions.
pub fn prepare_coloring(
    g: &Graph,
    decomp: &PathDecomposition,
    base: &Coloring,
    p: usize,
) -> Result<Coloring> {
    if base.deleted().is_empty() && is_equitable(base, g) {
        return pad_deletion_set(g, base, p);
    }
    let c = almost_equitable_coloring(g, decomp, base)?;
    if c.deleted().len() > p {
        return Err(Error::Contract(format!(
            "width {} with {} colors needs {} deletions, budget is {p}",
            decomp.width(),
            base.k(),
            c.deleted().len()
        )));
    }
    pad_deletion_set(g, &c, p)
}

/// Block-design host for a family whose members come with equitable
/// k-colorings of `G_i \ X_i`, `|X_i| = p`, using the first `t` blocks of
/// `packing`.
///
/// Group `j` holds host vertices `j·g .. j·g + g - 1` with
/// `g = ceil((n-p)/k)`. Member `i`'s classes, largest first, go to the points
/// of block `i` in ascending order, each class filling the first slots of
/// its group in ascending vertex order; its `X_i` (ascending) occupies
/// `s·g + i·p ..`. Member edges are copied onto their images.
pub fn build_universal(
    family: &FamilySpec,
    k: usize,
    p: usize,
    colorings: &[Coloring],
    packing: &CliquePacking,
) -> Result<UniversalGraph> {
    let design = design_host(family, k, p, colorings, packing)?;
    let (host, embeddings) = assemble(family, colorings, &design);
    Ok(UniversalGraph {
        host,
        embeddings,
        construction: Construction::BlockDesign(design),
    })
}

fn design_host(
    family: &FamilySpec,
    k: usize,
    p: usize,
    colorings: &[Coloring],
    packing: &CliquePacking,
) -> Result<DesignParams> {
    let (n, t) = (family.n(), family.t());
    if k == 0 {
        return Err(Error::Parameter("need at least one color".into()));
    }
    if colorings.len() != t {
        return Err(Error::Parameter(format!(
            "{} colorings for {t} members",
            colorings.len()
        )));
    }
    if p > n {
        return Err(Error::Parameter(format!("deletion budget {p} exceeds n = {n}")));
    }
    if packing.k != k || !validate_packing(packing) {
        return Err(Error::Parameter(format!(
            "packing must be a valid packing of {k}-blocks"
        )));
    }
    if t > packing.len() {
        return Err(Error::Capacity(format!(
            "{t} members but only {} blocks on {} points",
            packing.len(),
            packing.s
        )));
    }
    for (i, (g, c)) in family.members().iter().zip(colorings).enumerate() {
        let name = family.member_name(i);
        if c.k() != k || c.deleted().len() != p || !c.covers(g) {
            return Err(Error::Contract(format!(
                "{name}: need {k} classes and exactly {p} deleted vertices covering the graph"
            )));
        }
        if !is_equitable(c, g) {
            return Err(Error::Contract(format!("{name}: coloring is not equitable")));
        }
    }
    Ok(DesignParams {
        n,
        k,
        p,
        s: packing.s,
        t,
        group_size: (n - p).div_ceil(k),
        blocks: packing.blocks[..t].to_vec(),
    })
}

fn assemble(
    family: &FamilySpec,
    colorings: &[Coloring],
    d: &DesignParams,
) -> (Graph, IndexMap<String, VertexMap>) {
    let mut b = GraphBuilder::new(d.host_size());
    let mut embeddings = IndexMap::new();
    for (i, (g, c)) in family.members().iter().zip(colorings).enumerate() {
        let mut order: Vec<usize> = (0..d.k).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(c.classes()[j].len()));
        let mut image = vec![usize::MAX; g.n()];
        for (slot_class, &j) in order.iter().enumerate() {
            let group = d.blocks[i][slot_class];
            for (slot, &v) in c.classes()[j].iter().enumerate() {
                image[v] = group * d.group_size + slot;
            }
        }
        for (l, &v) in c.deleted().iter().enumerate() {
            image[v] = d.s * d.group_size + i * d.p + l;
        }
        for (u, v) in g.edges() {
            b.add_edge_unchecked(image[u], image[v]);
        }
        embeddings.insert(
            family.member_name(i),
            VertexMap::new(image).expect("distinct slots per member"),
        );
    }
    (b.build(), embeddings)
}

/// Smallest number of threshold members for the square-root size guarantee.
pub const SQRT_MIN_MEMBERS: usize = 811;

/// `ceil(15/14·k·sqrt(t)) - 1`.
pub fn sqrt_group_count(k: usize, t: usize) -> usize {
    let x = 15.0 * k as f64 * (t as f64).sqrt() / 14.0;
    let mut c = x.ceil() as usize;
    // Guard against representation error right at an integer.
    if (c as f64 - x) >= 1.0 {
        c -= 1;
    }
    c - 1
}

/// Block-design host with about `15/14·k·sqrt(t)` groups.
///
/// When `t >= max(k², 811)` the group count is `s = ceil(15/14·k·sqrt(t)) - 1`
/// and the host has fewer than `15/14·sqrt(t)·(n-p+k) + t·p` vertices. For
/// smaller families `s` is the least value (from `k` up to
/// `4·k·ceil(sqrt(t))`) at which some packing construction reaches `t`
/// blocks; the size guarantee then does not apply.
pub fn build_sqrt_universal(
    family: &FamilySpec,
    k: usize,
    p: usize,
    colorings: &[Coloring],
) -> Result<UniversalGraph> {
    let (n, t) = (family.n(), family.t());
    if k == 0 {
        return Err(Error::Parameter("need at least one color".into()));
    }
    let (packing, source, guaranteed) = sqrt_packing(k, t)?;
    let design = design_host(family, k, p, colorings, &packing)?;
    let size_bound = 15.0 / 14.0 * (t as f64).sqrt() * (n - p + k) as f64 + (t * p) as f64;
    let (host, embeddings) = assemble(family, colorings, &design);
    if guaranteed && host.n() as f64 >= size_bound {
        return Err(Error::Contract(format!(
            "host of {} vertices misses the bound {size_bound:.2}",
            host.n()
        )));
    }
    Ok(UniversalGraph {
        host,
        embeddings,
        construction: Construction::Sqrt {
            design,
            packing_source: source,
            guaranteed,
            size_bound,
        },
    })
}

/// Packing with at least `t` blocks of size `k`, its source label, and
/// whether the threshold regime applied.
fn sqrt_packing(k: usize, t: usize) -> Result<(CliquePacking, String, bool)> {
    if t >= SQRT_MIN_MEMBERS.max(k * k) {
        let s = sqrt_group_count(k, t);
        let lb = lower_bound_a(s, k)?;
        let mut best = lb.witness.map(|w| (w, source_label(lb.source)));
        if best.as_ref().is_none_or(|(w, _)| w.len() < t) && binomial(s, k) <= GREEDY_SUBSET_LIMIT {
            let g = greedy_packing(s, k);
            if best.as_ref().is_none_or(|(w, _)| g.len() > w.len()) {
                best = Some((g, "greedy".into()));
            }
        }
        return match best {
            Some((w, src)) if w.len() >= t => Ok((w, src, true)),
            other => Err(Error::Capacity(format!(
                "best packing on s={s} points has {} blocks, need {t}",
                other.map_or(0, |(w, _)| w.len())
            ))),
        };
    }
    let s_max = 4 * k * (t as f64).sqrt().ceil() as usize;
    for s in k.max(1)..=s_max {
        if double_floor_bound(s, k) < t || lookup_a(s, k).is_some_and(|(_, hi)| hi < t) {
            continue;
        }
        if let Some((p, src)) = small_packing(s, k, t)? {
            return Ok((p, src, false));
        }
    }
    Err(Error::Capacity(format!(
        "no packing with {t} blocks of size {k} found on up to {s_max} points"
    )))
}

/// Largest packing of `k`-blocks on `s` points among the constructive
/// sources (trivial cases, prime design, exact search, greedy), with its
/// source label.
pub fn best_packing(s: usize, k: usize) -> Result<(CliquePacking, String)> {
    if k == 0 || k > s {
        return Err(Error::Parameter(format!("need 1 <= k <= s, got s={s}, k={k}")));
    }
    if k == 1 {
        return Ok((CliquePacking::new(s, 1, (0..s).map(|v| vec![v]).collect()), "singletons".into()));
    }
    let lb = lower_bound_a(s, k)?;
    let mut best = lb.witness.map(|w| (w, source_label(lb.source)));
    if binomial(s, k) <= GREEDY_SUBSET_LIMIT {
        let g = greedy_packing(s, k);
        if best.as_ref().is_none_or(|(w, _)| g.len() > w.len()) {
            best = Some((g, "greedy".into()));
        }
    }
    best.ok_or_else(|| Error::Capacity(format!("no constructive packing for s={s}, k={k}")))
}

fn small_packing(s: usize, k: usize, t: usize) -> Result<Option<(CliquePacking, String)>> {
    if k == 1 {
        let p = CliquePacking::new(s, 1, (0..s).map(|v| vec![v]).collect());
        return Ok((p.len() >= t).then(|| (p, "singletons".into())));
    }
    if k == 2 {
        let p = CliquePacking::all_pairs(s);
        return Ok((p.len() >= t).then(|| (p, "all_pairs".into())));
    }
    if let Some(q) = (k..=s / k).rev().find(|&q| crate::design::is_prime(q)) {
        let p = construct_design_prime(q, k, None)?.with_ground(s);
        if p.len() >= t {
            return Ok(Some((p, format!("prime_design({q})"))));
        }
    }
    if brute_force_feasible(s, k) {
        let p = brute_force_a(s, k)?.witness;
        if p.len() >= t {
            return Ok(Some((p, "brute_force".into())));
        }
    }
    if binomial(s, k) <= GREEDY_SUBSET_LIMIT {
        let p = greedy_packing(s, k);
        if p.len() >= t {
            return Ok(Some((p, "greedy".into())));
        }
    }
    Ok(None)
}

fn source_label(src: BoundSource) -> String {
    match src {
        BoundSource::Trivial => "trivial".into(),
        BoundSource::AllPairs => "all_pairs".into(),
        BoundSource::PrimeDesign { prime } => format!("prime_design({prime})"),
        BoundSource::Table => "table".into(),
        BoundSource::BruteForce => "brute_force".into(),
        BoundSource::Greedy => "greedy".into(),
    }
}

/// Pads `g` with `n - 2q` isolated vertices (`q = |X|`) and returns the
/// padded graph with an equitable `2k`-coloring and no deletions.
///
/// The first `k` classes are those of `equitable` on `G \ X`. Class `k + i`
/// is `base_i ∩ X` (from the proper coloring `base` of `g`) topped up with
/// new isolated vertices to the size of class `i`. Requires
/// `p(k²-1) <= n` and `|X| = p(k-1)`.
pub fn augment_to_double(
    g: &Graph,
    equitable: &Coloring,
    base: &Coloring,
    k: usize,
    p: usize,
) -> Result<(Graph, Coloring)> {
    let n = g.n();
    let q = p * k.saturating_sub(1);
    if k == 0 || p * (k * k - 1) > n {
        return Err(Error::Contract(format!(
            "doubling needs p(k²-1) <= n, got p={p}, k={k}, n={n}"
        )));
    }
    if equitable.deleted().len() != q || equitable.k() != k || !is_equitable(equitable, g) {
        return Err(Error::Contract(format!(
            "need an equitable {k}-coloring with exactly {q} deleted vertices"
        )));
    }
    if base.k() != k || !base.deleted().is_empty() || !base.covers(g) {
        return Err(Error::Contract(format!("need a proper {k}-coloring covering the graph")));
    }
    let extra = n - 2 * q;
    let padded = g.with_isolated(extra);
    let deleted = equitable.deleted();
    let mut fresh = n..n + extra;
    let mut classes: Vec<Vec<usize>> = equitable.classes().to_vec();
    for i in 0..k {
        let mut class: Vec<usize> = base.classes()[i]
            .iter()
            .copied()
            .filter(|v| deleted.binary_search(v).is_ok())
            .collect();
        let want = equitable.classes()[i].len();
        if class.len() > want {
            return Err(Error::Contract(format!(
                "class {i} has {} deleted vertices but only {want} slots",
                class.len()
            )));
        }
        class.extend(fresh.by_ref().take(want - class.len()));
        classes.push(class);
    }
    let coloring = Coloring::new(classes, Vec::new())?;
    debug_assert!(fresh.next().is_none());
    if !is_equitable(&coloring, &padded) || !coloring.covers(&padded) {
        return Err(Error::Contract("doubled coloring is not equitable".into()));
    }
    Ok((padded, coloring))
}

/// Per-member input for [`build_doubled_universal`].
#[derive(Clone, Debug)]
pub struct DoublingInput {
    /// Equitable k-coloring of `G \ X` with `|X| = p(k-1)`.
    pub equitable: Coloring,
    /// Proper k-coloring of the whole member.
    pub base: Coloring,
}

/// Doubles every member with [`augment_to_double`] and builds the
/// square-root host for the padded family with `2k` colors and no
/// deletions. Embeddings are those of the original members. When
/// `t >= max(4k², 811)` the host has at most `15/7·sqrt(t)·n` vertices.
pub fn build_doubled_universal(
    family: &FamilySpec,
    k: usize,
    p: usize,
    inputs: &[DoublingInput],
) -> Result<UniversalGraph> {
    let (n, t) = (family.n(), family.t());
    if inputs.len() != t {
        return Err(Error::Parameter(format!("{} inputs for {t} members", inputs.len())));
    }
    let mut padded = Vec::with_capacity(t);
    let mut colorings = Vec::with_capacity(t);
    for (g, input) in family.members().iter().zip(inputs) {
        let (gp, c) = augment_to_double(g, &input.equitable, &input.base, k, p)?;
        padded.push(gp);
        colorings.push(c);
    }
    let padded_family = FamilySpec::new(padded)?;
    let inner = build_sqrt_universal(&padded_family, 2 * k, 0, &colorings)?;
    let Construction::Sqrt {
        design,
        packing_source,
        guaranteed: inner_guaranteed,
        ..
    } = inner.construction
    else {
        unreachable!("square-root construction");
    };
    let embeddings = inner
        .embeddings
        .into_iter()
        .enumerate()
        .map(|(i, (_, m))| {
            let image = m.image()[..n].to_vec();
            (family.member_name(i), VertexMap::new(image).expect("prefix of injective map"))
        })
        .collect();
    let q = p * (k - 1);
    let guaranteed = inner_guaranteed && t >= (4 * k * k).max(SQRT_MIN_MEMBERS);
    let size_bound = 15.0 / 7.0 * (t as f64).sqrt() * n as f64;
    if guaranteed && inner.host.n() as f64 > size_bound {
        return Err(Error::Contract(format!(
            "host of {} vertices misses the bound {size_bound:.2}",
            inner.host.n()
        )));
    }
    Ok(UniversalGraph {
        host: inner.host,
        embeddings,
        construction: Construction::Doubled {
            original_n: n,
            original_k: k,
            original_p: p,
            q,
            design,
            packing_source,
            guaranteed,
            size_bound,
        },
    })
}

/// Outcome for one member in a [`VerifyReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub members: Vec<MemberCheck>,
    pub expected_size: usize,
    pub actual_size: usize,
    pub size_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_bound: Option<f64>,
    pub bound_ok: bool,
    /// `None` for constructions that do not promise disjoint images.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_disjoint: Option<bool>,
    /// Host edges claimed by two members: `(u, v, first member, second member)`.
    pub shared_edges: Vec<(usize, usize, String, String)>,
    pub all_pass: bool,
}

pub fn verify_universal(u: &UniversalGraph, family: &FamilySpec) -> VerifyReport {
    verify_universal_with(u, family, Execution::default())
}

/// Re-checks every member embedding against the host, the host size against
/// the construction's formula and bound, and (for block-design hosts) that
/// no host edge lies in the image of two members.
pub fn verify_universal_with(u: &UniversalGraph, family: &FamilySpec, exec: Execution) -> VerifyReport {
    let indices: Vec<usize> = (0..family.t()).collect();
    let members = par::map(exec, &indices, |&i| {
        let name = family.member_name(i);
        let (pass, detail) = match u.embeddings.get(&name) {
            None => (false, "no embedding recorded".to_owned()),
            Some(m) => match is_induced_embedding(&u.host, &family.members()[i], m) {
                Ok(true) => (true, "induced".to_owned()),
                Ok(false) => (false, "not an induced embedding".to_owned()),
                Err(e) => (false, e.to_string()),
            },
        };
        MemberCheck { name, pass, detail }
    });
    let expected_size = u.construction.expected_host_size();
    let actual_size = u.host.n();
    let size_bound = u.construction.size_bound();
    let bound_ok = size_bound.is_none_or(|b| (actual_size as f64) < b);

    let mut shared_edges = Vec::new();
    let edge_disjoint = u.construction.member_images_disjoint().then(|| {
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, g) in family.members().iter().enumerate() {
            let Some(m) = u.embeddings.get(&family.member_name(i)) else {
                continue;
            };
            if m.pattern_size() != g.n() {
                continue;
            }
            for (a, b) in g.edges() {
                let (x, y) = (m.get(a), m.get(b));
                let key = (x.min(y), x.max(y));
                if let Some(&j) = owner.get(&key) {
                    if j != i {
                        shared_edges.push((key.0, key.1, family.member_name(j), family.member_name(i)));
                    }
                } else {
                    owner.insert(key, i);
                }
            }
        }
        shared_edges.is_empty()
    });
    let size_ok = expected_size == actual_size;
    let all_pass = members.iter().all(|m| m.pass)
        && size_ok
        && bound_ok
        && edge_disjoint.unwrap_or(true);
    VerifyReport {
        members,
        expected_size,
        actual_size,
        size_ok,
        size_bound,
        bound_ok,
        edge_disjoint,
        shared_edges,
        all_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::greedy_coloring;
    use crate::decomp::{decompose, DecompKind};
    use crate::graph::generators::{complete_binary_tree, path, sample_caterpillar, star};

    #[test]
    fn clique_union_sizes() {
        let u = build_clique_union_universal(24, 4).unwrap();
        assert_eq!(u.host.n(), 50);
        assert_eq!(build_clique_union_universal(7, 1).unwrap().host.n(), 7);
        assert_eq!(build_clique_union_universal(6, 2).unwrap().host.n(), 9);
        assert!(build_clique_union_universal(3, 4).is_err());
        let family = FamilySpec::new((1..=4).map(|i| clique_union(24, i).unwrap()).collect()).unwrap();
        assert!(verify_universal(&u, &family).all_pass);
    }

    #[test]
    fn clique_union_embedding_examples() {
        let u = build_clique_union_universal(9, 3).unwrap();
        let mixed = crate::graph::generators::clique_union_of(&[3, 3, 2, 1]);
        let m = embed_clique_union(&u, &mixed).unwrap();
        assert!(is_induced_embedding(&u.host, &mixed, &m).unwrap());
        let empty = Graph::empty(9);
        let m = embed_clique_union(&u, &empty).unwrap();
        assert!(is_induced_embedding(&u.host, &empty, &m).unwrap());
        assert!(matches!(
            embed_clique_union(&u, &path(3)),
            Err(Error::Classification(_))
        ));
    }

    #[test]
    fn trees_with_three_groups() {
        let members = vec![star(15).unwrap(), path(15), complete_binary_tree(15)];
        let family = FamilySpec::new(members).unwrap();
        let decomps: Vec<_> = family
            .members()
            .iter()
            .map(|g| decompose(g, DecompKind::Tree).unwrap())
            .collect();
        let p = decomps.iter().map(PathDecomposition::width).max().unwrap();
        let colorings: Vec<_> = family
            .members()
            .iter()
            .zip(&decomps)
            .map(|(g, d)| prepare_coloring(g, d, &greedy_coloring(g), p).unwrap())
            .collect();
        let packing = CliquePacking::all_pairs(3);
        let u = build_universal(&family, 2, p, &colorings, &packing).unwrap();
        assert_eq!(u.host.n(), 3 * (15 - p).div_ceil(2) + 3 * p);
        let report = verify_universal(&u, &family);
        assert!(report.all_pass, "{report:?}");
        assert_eq!(report.edge_disjoint, Some(true));
    }

    #[test]
    fn single_edgeless_member() {
        let family = FamilySpec::new(vec![Graph::empty(5)]).unwrap();
        let c = Coloring::new(vec![(0..5).collect()], Vec::new()).unwrap();
        let packing = CliquePacking::new(1, 1, vec![vec![0]]);
        let u = build_universal(&family, 1, 0, std::slice::from_ref(&c), &packing).unwrap();
        assert_eq!(u.host.n(), 5);
        assert_eq!(u.embeddings["G1"], VertexMap::identity(5));
        let u = build_sqrt_universal(&family, 1, 0, &[c]).unwrap();
        assert_eq!(u.host.n(), 5);
    }

    #[test]
    fn capacity_and_contract_errors() {
        let family = FamilySpec::new(vec![path(4), path(4)]).unwrap();
        let c = Coloring::new(vec![vec![0, 2], vec![1, 3]], Vec::new()).unwrap();
        let one_block = CliquePacking::new(2, 2, vec![vec![0, 1]]);
        assert!(matches!(
            build_universal(&family, 2, 0, &[c.clone(), c.clone()], &one_block),
            Err(Error::Capacity(_))
        ));
        let lopsided = Coloring::new(vec![vec![0, 2], vec![1]], vec![3]).unwrap();
        assert!(matches!(
            build_universal(&family, 2, 0, &[c.clone(), lopsided], &CliquePacking::all_pairs(3)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn small_t_sqrt_choices() {
        let members: Vec<Graph> = (0..6).map(|_| path(4)).collect();
        let family = FamilySpec::new(members).unwrap();
        let c = Coloring::new(vec![vec![0, 2], vec![1, 3]], Vec::new()).unwrap();
        let u = build_sqrt_universal(&family, 2, 0, &vec![c; 6]).unwrap();
        let Construction::Sqrt { design, guaranteed, .. } = &u.construction else {
            panic!()
        };
        assert_eq!(design.s, 4);
        assert!(!guaranteed);
        assert!(verify_universal(&u, &family).all_pass);
    }

    #[test]
    fn group_count_formula() {
        assert_eq!(sqrt_group_count(2, 811), 61);
        assert_eq!(sqrt_group_count(2, 900), 64);
    }

    #[test]
    fn doubling_caterpillar() {
        let g = sample_caterpillar();
        let d = decompose(&g, DecompKind::Caterpillar).unwrap();
        let (a, b) = g.bipartition().unwrap();
        let base = Coloring::new(vec![a, b], Vec::new()).unwrap();
        let eq = almost_equitable_coloring(&g, &d, &base).unwrap();
        let (gp, c) = augment_to_double(&g, &eq, &base, 2, 1).unwrap();
        assert_eq!(gp.n(), 56);
        assert_eq!(c.sizes(), vec![14, 14, 14, 14]);
        assert!(is_equitable(&c, &gp));
        assert!(augment_to_double(&g, &eq, &base, 2, 10).is_err());
    }

    #[test]
    fn doubling_without_deletions() {
        let g = path(4);
        let c = Coloring::new(vec![vec![0, 2], vec![1, 3]], Vec::new()).unwrap();
        let (gp, out) = augment_to_double(&g, &c, &c, 2, 0).unwrap();
        assert_eq!(gp.n(), 8);
        assert_eq!(out.sizes(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn tampered_host_fails() {
        let u = build_clique_union_universal(6, 3).unwrap();
        let family = FamilySpec::new((1..=3).map(|i| clique_union(6, i).unwrap()).collect()).unwrap();
        let edges: Vec<_> = u.host.edges().skip(1).collect();
        let tampered = UniversalGraph {
            host: Graph::from_edges(u.host.n(), edges).unwrap(),
            ..u
        };
        let report = verify_universal(&tampered, &family);
        assert!(!report.all_pass);
        assert!(report.members.iter().any(|m| !m.pass));
    }
}
