use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use universo::bounds::{entropic_f, reproduce_tables, solve_growth_bound};
use universo::coloring::{almost_equitable_coloring_traced, greedy_k_coloring, is_equitable, Coloring};
use universo::decomp::{decompose, DecompKind, PathDecomposition};
use universo::design::{brute_force_a, double_floor_bound, validate_packing};
use universo::graph::generators::{random_balanced_bipartite_forest, random_caterpillar, random_tree};
use universo::graph::graph6;
use universo::oracle::{
    check_lower_bound_argument, min_equitable_deletion, min_universal_size, OracleBudget, OracleOutcome,
};
use universo::universal::{
    best_packing, build_clique_union_universal, build_sqrt_universal, build_universal, prepare_coloring,
    verify_universal, UniversalGraph, UniversalSidecar,
};
use universo::FamilySpec;

use crate::files::{self, MemberSidecar};
use crate::report::{Inputs, RunReport};
use crate::{BoundsCmd, BudgetArgs, Command, ConstructCmd, DesignCmd, FamilyCmd, OracleCmd, Output, RandomKind};

pub enum Printed {
    Report(RunReport),
    /// Plain text and whether every check passed.
    Text(String, bool),
}

/// Runs a command; returns its display name with the outcome.
pub fn run(cmd: Command) -> (&'static str, Result<Printed>) {
    let mut inputs = Inputs::default();
    match cmd {
        Command::Bounds(BoundsCmd::Table { text }) => ("bounds table", bounds_table(text, &inputs)),
        Command::Bounds(BoundsCmd::Solve { g }) => {
            inputs.param("g", g);
            ("bounds solve", bounds_solve(g, &inputs).map(Printed::Report))
        }
        Command::Design(DesignCmd::Build { s, k }) => {
            inputs.param("s", s);
            inputs.param("k", k);
            ("design build", design_build(s, k, &inputs).map(Printed::Report))
        }
        Command::Design(DesignCmd::Exact { n, k }) => {
            inputs.param("n", n);
            inputs.param("k", k);
            ("design exact", design_exact(n, k, &inputs).map(Printed::Report))
        }
        Command::Color { graph, decomp, k } => ("color", color(&graph, decomp.as_deref(), k, inputs).map(Printed::Report)),
        Command::Construct(ConstructCmd::CliqueUnion { n, k, output }) => {
            inputs.param("n", n);
            inputs.param("k", k);
            let r = build_clique_union_universal(n, k).map_err(Into::into).and_then(|u| {
                let family = FamilySpec::new(
                    (1..=k)
                        .map(|i| universo::graph::generators::clique_union(n, i))
                        .collect::<universo::Result<_>>()?,
                )?;
                finish_construct("construct clique-union", u, &family, &output, &inputs)
            });
            ("construct clique-union", r.map(Printed::Report))
        }
        Command::Construct(ConstructCmd::Universal { family, k, p, s, output }) => (
            "construct universal",
            construct_design("construct universal", &family, k, p, s, &output, inputs).map(Printed::Report),
        ),
        Command::Construct(ConstructCmd::Sqrt { family, k, p, output }) => (
            "construct sqrt",
            construct_design("construct sqrt", &family, k, p, None, &output, inputs).map(Printed::Report),
        ),
        Command::Verify { universal, family, sidecar } => {
            ("verify", verify(&universal, &family, sidecar.as_deref(), inputs).map(Printed::Report))
        }
        Command::Oracle(OracleCmd::MinUniversal { family, budget }) => (
            "oracle min-universal",
            oracle_min_universal(&family, &budget, inputs).map(Printed::Report),
        ),
        Command::Oracle(OracleCmd::MinDeletion { graph, k, budget }) => (
            "oracle min-deletion",
            oracle_min_deletion(&graph, k, &budget, inputs).map(Printed::Report),
        ),
        Command::Oracle(OracleCmd::LowerBound { n, k, budget }) => (
            "oracle lower-bound",
            oracle_lower_bound(n, k, &budget, inputs).map(Printed::Report),
        ),
        Command::Family(FamilyCmd::Random { kind, n, t, seed, out }) => (
            "family random",
            family_random(kind, n, t, seed, &out, inputs).map(Printed::Report),
        ),
    }
}

fn bounds_table(text: bool, inputs: &Inputs) -> Result<Printed> {
    let tables = reproduce_tables()?;
    if text {
        return Ok(Printed::Text(tables.to_text(), tables.all_pass));
    }
    let mut report = RunReport::new("bounds table", inputs);
    for row in &tables.rows {
        report.check(
            format!("c:{}", row.family),
            row.c_ok,
            format!("solved {:.5}, listed {:.3}", row.c_solved, row.c_expected),
        );
        if let (Some(cb), Some(t)) = (&row.conflict, row.t_expected) {
            report.check(format!("t:{}", row.family), row.t_ok, format!("computed {}, listed {t}", cb.t_min));
        }
    }
    report.result = serde_json::to_value(&tables)?;
    Ok(Printed::Report(report))
}

fn bounds_solve(g: f64, inputs: &Inputs) -> Result<RunReport> {
    let solved = solve_growth_bound(g)?;
    let mut report = RunReport::new("bounds solve", inputs);
    let back = entropic_f(solved.c)?;
    report.check("round_trip", (back - g).abs() <= 1e-6, format!("f(c) = {back:.9}"));
    report.result = json!({ "g": g, "c": solved.c });
    Ok(report)
}

fn design_build(s: usize, k: usize, inputs: &Inputs) -> Result<RunReport> {
    let (packing, source) = best_packing(s, k)?;
    let mut report = RunReport::new("design build", inputs);
    report.check("valid_packing", validate_packing(&packing), format!("{} blocks", packing.len()));
    report.result = json!({
        "s": s,
        "k": k,
        "blocks": packing.len(),
        "source": source,
        "double_floor_bound": double_floor_bound(s, k),
        "packing": packing,
    });
    Ok(report)
}

fn design_exact(n: usize, k: usize, inputs: &Inputs) -> Result<RunReport> {
    let exact = brute_force_a(n, k)?;
    let mut report = RunReport::new("design exact", inputs);
    report.check(
        "valid_witness",
        validate_packing(&exact.witness) && exact.witness.len() == exact.value,
        format!("{} blocks", exact.witness.len()),
    );
    report.result = serde_json::to_value(&exact)?;
    Ok(report)
}

fn color(graph: &Path, decomp: Option<&Path>, k: usize, mut inputs: Inputs) -> Result<RunReport> {
    inputs.param("k", k);
    let g = files::read_graph(graph, &mut inputs)?;
    let d: PathDecomposition = match decomp {
        Some(path) => files::read_json(path, &mut inputs)?,
        None => {
            log::warn!("no decomposition given, using the interval heuristic");
            decompose(&g, DecompKind::IntervalHeuristic)?
        }
    };
    let mut report = RunReport::new("color", &inputs);
    let validation = d.validate(&g);
    report.check(
        "decomposition_valid",
        validation.valid,
        format!("{} violations", validation.violations.len()),
    );
    if !validation.valid {
        report.result = serde_json::to_value(&validation)?;
        return Ok(report);
    }
    let base = greedy_k_coloring(&g, k).with_context(|| format!("greedy coloring needs more than {k} colors"))?;
    let (c, rounds) = almost_equitable_coloring_traced(&g, &d, &base)?;
    let budget = d.width() * (k - 1);
    report.check("equitable", is_equitable(&c, &g) && c.covers(&g), format!("class sizes {:?}", c.sizes()));
    report.check(
        "deletion_budget",
        c.deleted().len() <= budget,
        format!("|X| = {}, width {} allows {budget}", c.deleted().len(), d.width()),
    );
    report.result = json!({ "width": d.width(), "coloring": c, "rounds": rounds });
    Ok(report)
}

fn construct_design(
    command: &str,
    dir: &Path,
    k: usize,
    p: usize,
    s: Option<usize>,
    output: &Output,
    mut inputs: Inputs,
) -> Result<RunReport> {
    inputs.param("k", k);
    inputs.param("p", p);
    if let Some(s) = s {
        inputs.param("s", s);
    }
    let (family, members) = files::read_family(dir, &mut inputs)?;
    let mut colorings = Vec::with_capacity(members.len());
    for m in &members {
        let (d, base) = files::member_inputs(m, k)?;
        colorings.push(prepare_coloring(&m.graph, &d, &base, p).with_context(|| m.name.clone())?);
    }
    let u = match s {
        Some(s) => {
            let (packing, _) = best_packing(s, k)?;
            build_universal(&family, k, p, &colorings, &packing)?
        }
        None => build_sqrt_universal(&family, k, p, &colorings)?,
    };
    finish_construct(command, u, &family, output, &inputs)
}

/// Verifies a freshly built host, writes it when asked, and reports.
fn finish_construct(
    command: &str,
    u: UniversalGraph,
    family: &FamilySpec,
    output: &Output,
    inputs: &Inputs,
) -> Result<RunReport> {
    let mut report = RunReport::new(command, inputs);
    let v = verify_universal(&u, family);
    add_verify_checks(&mut report, &v);
    if let Some(path) = &output.out {
        files::write_graph(path, &u.host)?;
        let side = files::sidecar_path(path);
        files::write_json(&side, &u.sidecar())?;
        report.outputs = vec![path.display().to_string(), side.display().to_string()];
    }
    report.result = json!({
        "host_vertices": u.host.n(),
        "host_edges": u.host.edge_count(),
        "construction": u.construction,
        "graph6": (u.host.n() <= 64).then(|| graph6::encode(&u.host)),
    });
    Ok(report)
}

fn add_verify_checks(report: &mut RunReport, v: &universo::universal::VerifyReport) {
    let failed: Vec<&str> = v.members.iter().filter(|m| !m.pass).map(|m| m.name.as_str()).collect();
    report.check(
        "embeddings",
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} members induced", v.members.len())
        } else {
            format!("failing: {}", failed.join(", "))
        },
    );
    report.check(
        "host_size",
        v.size_ok,
        format!("{} vertices, formula {}", v.actual_size, v.expected_size),
    );
    if let Some(b) = v.size_bound {
        report.check("size_bound", v.bound_ok, format!("{} < {b:.2}", v.actual_size));
    }
    if let Some(d) = v.edge_disjoint {
        report.check("edge_disjoint", d, format!("{} shared edges", v.shared_edges.len()));
    }
}

fn verify(host_path: &Path, dir: &Path, sidecar: Option<&Path>, mut inputs: Inputs) -> Result<RunReport> {
    let host = files::read_graph(host_path, &mut inputs)?;
    let side_path = sidecar.map_or_else(|| files::sidecar_path(host_path), Path::to_path_buf);
    let side: UniversalSidecar = files::read_json(&side_path, &mut inputs)?;
    let (family, _) = files::read_family(dir, &mut inputs)?;
    let u = UniversalGraph::from_sidecar(host, side)?;
    let v = verify_universal(&u, &family);
    let mut report = RunReport::new("verify", &inputs);
    add_verify_checks(&mut report, &v);
    report.result = serde_json::to_value(&v)?;
    Ok(report)
}

fn budget_from(args: &BudgetArgs, inputs: &mut Inputs) -> Result<OracleBudget> {
    let mut b = OracleBudget::from_env()?;
    if let Some(h) = args.max_host {
        b.max_host_vertices = h;
    }
    if let Some(s) = args.max_seconds {
        b.max_seconds = s;
    }
    if let Some(s) = args.max_states {
        b.max_states = s;
    }
    let b = OracleBudget::new(b.max_host_vertices, b.max_seconds, b.max_states)?;
    inputs.param("max_host", b.max_host_vertices);
    inputs.param("max_states", b.max_states);
    Ok(b)
}

fn budget_check<T>(report: &mut RunReport, outcome: &OracleOutcome<T>) {
    match outcome {
        OracleOutcome::Exact(_) => report.check("exact", true, "search completed"),
        OracleOutcome::BudgetExceeded {
            lower_bound, reason, ..
        } => report.check("exact", false, format!("{reason}; answer >= {lower_bound}")),
    }
}

fn oracle_min_universal(dir: &Path, args: &BudgetArgs, mut inputs: Inputs) -> Result<RunReport> {
    let budget = budget_from(args, &mut inputs)?;
    let (family, _) = files::read_family(dir, &mut inputs)?;
    let outcome = min_universal_size(&family, &budget)?;
    let mut report = RunReport::new("oracle min-universal", &inputs);
    budget_check(&mut report, &outcome);
    report.result = match outcome {
        OracleOutcome::Exact(r) => json!({
            "size": r.size,
            "witness": graph6::encode(&r.witness),
            "witness_edges": r.witness.edge_count(),
            "states": r.states,
        }),
        OracleOutcome::BudgetExceeded { lower_bound, states, .. } => {
            json!({ "lower_bound": lower_bound, "states": states })
        }
    };
    Ok(report)
}

fn oracle_min_deletion(graph: &Path, k: usize, args: &BudgetArgs, mut inputs: Inputs) -> Result<RunReport> {
    inputs.param("k", k);
    let budget = budget_from(args, &mut inputs)?;
    let g = files::read_graph(graph, &mut inputs)?;
    let outcome = min_equitable_deletion(&g, k, &budget)?;
    let mut report = RunReport::new("oracle min-deletion", &inputs);
    budget_check(&mut report, &outcome);
    report.result = match outcome {
        OracleOutcome::Exact(r) => json!({ "size": r.size, "coloring": r.coloring }),
        OracleOutcome::BudgetExceeded { lower_bound, .. } => json!({ "lower_bound": lower_bound }),
    };
    Ok(report)
}

fn oracle_lower_bound(n: usize, k: usize, args: &BudgetArgs, mut inputs: Inputs) -> Result<RunReport> {
    inputs.param("n", n);
    inputs.param("k", k);
    let budget = budget_from(args, &mut inputs)?;
    let check = check_lower_bound_argument(n, k, &budget)?;
    let mut report = RunReport::new("oracle lower-bound", &inputs);
    for row in &check.rows {
        report.check(
            format!("j={}", row.j),
            row.pass,
            match row.found {
                Some(f) => format!("minimum {f}, formula {}", row.expected),
                None => format!("budget exceeded, minimum >= {}, formula {}", row.lower_bound, row.expected),
            },
        );
    }
    report.result = serde_json::to_value(&check)?;
    Ok(report)
}

fn family_random(kind: RandomKind, n: usize, t: usize, seed: u64, out: &Path, mut inputs: Inputs) -> Result<RunReport> {
    inputs.param("n", n);
    inputs.param("t", t);
    inputs.param("seed", seed);
    if n == 0 || t == 0 {
        bail!("need n >= 1 and t >= 1");
    }
    if matches!(kind, RandomKind::BalancedForest) && n % 2 == 1 {
        bail!("balanced forests need an even n");
    }
    let mut rng = StdRng::seed_from_u64(seed);
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let width = t.to_string().len().max(4);
    let mut written = Vec::with_capacity(t);
    for i in 0..t {
        let (g, decomp_kind) = match kind {
            RandomKind::Tree => (random_tree(n, &mut rng), DecompKind::Tree),
            RandomKind::Caterpillar => (random_caterpillar(n, &mut rng), DecompKind::Caterpillar),
            RandomKind::BalancedForest => (random_balanced_bipartite_forest(n / 2, &mut rng), DecompKind::Tree),
        };
        let coloring = match kind {
            RandomKind::BalancedForest => Coloring::new(vec![(0..n / 2).collect(), (n / 2..n).collect()], Vec::new())?,
            _ => {
                let (a, b) = g.bipartition().context("random forest is bipartite")?;
                Coloring::new(vec![a, b], Vec::new())?
            }
        };
        let sidecar = MemberSidecar {
            decomposition: Some(decompose(&g, decomp_kind)?),
            coloring: Some(coloring),
        };
        let path = out.join(format!("G{:0width$}.g6", i + 1));
        files::write_graph(&path, &g)?;
        files::write_json(&files::sidecar_path(&path), &sidecar)?;
        written.push(path.display().to_string());
    }
    let mut report = RunReport::new("family random", &inputs);
    report.check("written", written.len() == t, format!("{t} members in {}", out.display()));
    report.outputs = written;
    report.result = json!({ "n": n, "t": t, "seed": seed });
    Ok(report)
}
