use rand::rngs::StdRng;
use rand::SeedableRng;

use universo::coloring::{almost_equitable_coloring, Coloring};
use universo::decomp::{decompose, DecompKind};
use universo::graph::generators::{clique_union, matching, path, random_caterpillar, star};
use universo::oracle::{min_universal_size, OracleBudget};
use universo::universal::{
    build_clique_union_universal, build_doubled_universal, build_sqrt_universal, verify_universal, Construction,
    DoublingInput, UniversalGraph,
};
use universo::{Execution, FamilySpec, Graph};

fn bipartite_base(g: &Graph) -> Coloring {
    let (a, b) = g.bipartition().unwrap();
    Coloring::new(vec![a, b], Vec::new()).unwrap()
}

#[test]
fn doubled_caterpillar_family() {
    let mut rng = StdRng::seed_from_u64(3);
    let members: Vec<Graph> = (0..811).map(|_| random_caterpillar(20, &mut rng)).collect();
    let family = FamilySpec::new(members).unwrap();
    let inputs: Vec<DoublingInput> = family
        .members()
        .iter()
        .map(|g| {
            let d = decompose(g, DecompKind::Caterpillar).unwrap();
            let base = bipartite_base(g);
            let eq = almost_equitable_coloring(g, &d, &base).unwrap();
            let eq = universo::coloring::pad_deletion_set(g, &eq, 1).unwrap();
            DoublingInput { equitable: eq, base }
        })
        .collect();
    let u = build_doubled_universal(&family, 2, 1, &inputs).unwrap();
    let Construction::Doubled { design, guaranteed, size_bound, .. } = &u.construction else {
        panic!("wrong construction");
    };
    assert!(*guaranteed);
    assert_eq!(design.k, 4);
    assert_eq!(design.n, 38);
    assert!((u.host.n() as f64) <= *size_bound);
    let report = verify_universal(&u, &family);
    assert!(report.all_pass, "{:?}", report.members.iter().find(|m| !m.pass));
}

#[test]
fn sidecar_round_trip_verifies() {
    let u = build_clique_union_universal(12, 3).unwrap();
    let json = serde_json::to_string(&u.sidecar()).unwrap();
    let back = UniversalGraph::from_sidecar(u.host.clone(), serde_json::from_str(&json).unwrap()).unwrap();
    let family = FamilySpec::new((1..=3).map(|i| clique_union(12, i).unwrap()).collect()).unwrap();
    assert!(verify_universal(&back, &family).all_pass);
    assert_eq!(back.construction, u.construction);
}

#[test]
fn verification_strategies_agree() {
    let members: Vec<Graph> = (0..40).map(|i| if i % 2 == 0 { matching(8) } else { path(8) }).collect();
    let family = FamilySpec::new(members).unwrap();
    let colorings: Vec<Coloring> = family.members().iter().map(bipartite_base).collect();
    let u = build_sqrt_universal(&family, 2, 0, &colorings).unwrap();
    let a = universo::universal::verify_universal_with(&u, &family, Execution::Sequential);
    let b = universo::universal::verify_universal_with(&u, &family, Execution::Parallel);
    assert_eq!(a, b);
    assert!(a.all_pass);
}

#[test]
fn constructions_bound_the_oracle() {
    let budget = OracleBudget::default();
    for (n, k) in [(4, 2), (5, 2), (4, 3)] {
        let family = FamilySpec::new((1..=k).map(|i| clique_union(n, i).unwrap()).collect()).unwrap();
        let exact = min_universal_size(&family, &budget).unwrap().exact().unwrap();
        let host = build_clique_union_universal(n, k).unwrap().host;
        assert!(exact.size <= host.n());
        // The oracle witness is itself a valid host.
        for g in family.members() {
            assert!(universo::graph::embed::find_induced_embedding(&exact.witness, g).is_some());
        }
    }
}

#[test]
fn oracle_is_monotone_under_inclusion() {
    let budget = OracleBudget::default();
    let small = FamilySpec::new(vec![path(4)]).unwrap();
    let big = FamilySpec::new(vec![path(4), star(4).unwrap()]).unwrap();
    let bigger = FamilySpec::new(vec![path(4), star(4).unwrap(), matching(4)]).unwrap();
    let sizes: Vec<usize> = [small, big, bigger]
        .iter()
        .map(|f| min_universal_size(f, &budget).unwrap().exact().unwrap().size)
        .collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
}
