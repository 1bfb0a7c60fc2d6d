//! Independent oracle for the closure engine: a naive fixpoint that stores
//! elements as unpacked coordinate vectors in a BTreeSet and recombines all
//! pairs every round. Compared against the frontier engine on every system
//! whose full direct product has at most 10^4 elements.

use latspec::catalog::{load_catalog_dir, Catalog};
use latspec::congruence::generating_triples_up_to_aut;
use latspec::product::{closure, FactorAssignment, FactorSystem, DEFAULT_BUDGET};
use std::collections::BTreeSet;
use std::path::Path;

fn catalog() -> Catalog {
    load_catalog_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")).unwrap()
}

/// All-pairs fixpoint closure over coordinate vectors, no frontier, no
/// packing: deliberately shares nothing with the engine under test.
fn naive_closure(fs: &FactorSystem) -> BTreeSet<Vec<usize>> {
    let k = fs.factors.len();
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for gi in 0..3 {
        set.insert((0..k).map(|i| fs.factors[i].triple[gi]).collect());
    }
    loop {
        let mut next = set.clone();
        for u in &set {
            for v in &set {
                let mut m = Vec::with_capacity(k);
                let mut j = Vec::with_capacity(k);
                for i in 0..k {
                    m.push(fs.factors[i].lattice.meet(u[i], v[i]));
                    j.push(fs.factors[i].lattice.join(u[i], v[i]));
                }
                next.insert(m);
                next.insert(j);
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

fn check_system(fs: &FactorSystem) {
    let expected = naive_closure(fs);
    let g = closure(fs, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.element_count(), expected.len(), "element counts differ");
    let got: BTreeSet<Vec<usize>> = g.elements().iter().map(|&e| g.coords(e)).collect();
    assert_eq!(got, expected, "element sets differ");
    // atoms reported by the engine match a brute-force minimality scan
    let atoms = g.atoms();
    for &u in &atoms {
        assert_ne!(u, g.bottom());
        for &v in g.elements() {
            assert!(!(v != u && v != g.bottom() && g.leq(v, u)));
        }
    }
    let brute_atoms = g
        .elements()
        .iter()
        .filter(|&&u| {
            u != g.bottom()
                && !g.elements().iter().any(|&v| v != u && v != g.bottom() && g.leq(v, u))
        })
        .count();
    assert_eq!(atoms.len(), brute_atoms);
}

/// Deterministically varied systems drawn from the catalog, capped at a full
/// product of 10^4 elements.
fn oracle_systems(cat: &Catalog) -> Vec<FactorSystem> {
    let names = ["C2", "M3", "N5", "L3", "L4", "L5", "V6", "U8", "L1"];
    let mut systems = Vec::new();
    // every single factor, every generating-triple orbit
    for name in names {
        let l = cat.get(name).unwrap();
        for t in generating_triples_up_to_aut(l) {
            systems.push(FactorSystem::new(vec![FactorAssignment {
                lattice: l.clone(),
                triple: t,
            }])
            .unwrap());
        }
    }
    // pairs and triples with a small deterministic stride over triple orbits
    let combos: [&[&str]; 8] = [
        &["C2", "N5"],
        &["M3", "N5"],
        &["L4", "L4"],
        &["L3", "L4"],
        &["U8", "L4"],
        &["N5", "N5", "N5"],
        &["L4", "L4", "L4"],
        &["C2", "M3", "N5", "C2"],
    ];
    for combo in combos {
        let mut factors = Vec::new();
        for (pos, name) in combo.iter().enumerate() {
            let l = cat.get(name).unwrap();
            let triples = generating_triples_up_to_aut(l);
            let t = triples[pos % triples.len()];
            factors.push(FactorAssignment { lattice: l.clone(), triple: t });
        }
        let fs = FactorSystem::new(factors).unwrap();
        let size = fs.full_product_size().unwrap();
        assert!(size <= 10_000, "oracle systems stay within 10^4, got {size}");
        systems.push(fs);
    }
    systems
}

#[test]
fn frontier_closure_agrees_with_naive_fixpoint() {
    let cat = catalog();
    let systems = oracle_systems(&cat);
    assert!(systems.len() > 40);
    for fs in &systems {
        check_system(fs);
    }
    println!(
        "criterion 7 (oracle): PASS ({} systems, frontier == naive fixpoint)",
        systems.len()
    );
}

#[test]
fn projections_are_surjective_for_generating_assignments() {
    let cat = catalog();
    for fs in oracle_systems(&cat) {
        if fs.check_generating().is_ok() {
            let g = closure(&fs, DEFAULT_BUDGET).unwrap();
            for i in 0..fs.len() {
                assert!(g.projection_surjective(i));
            }
        }
    }
}

#[test]
fn closure_of_own_elements_adds_nothing() {
    // idempotence: seeding a second closure with three elements of the first
    // that generate it reproduces the same element set
    let cat = catalog();
    let l4 = cat.get("L4").unwrap();
    let fs = FactorSystem::new(
        ["cab", "acb", "abc"]
            .iter()
            .map(|t| FactorAssignment {
                lattice: l4.clone(),
                triple: [0, 1, 2].map(|i| {
                    l4.element_index(&t.chars().nth(i).unwrap().to_string()).unwrap()
                }),
            })
            .collect(),
    )
    .unwrap();
    let g = closure(&fs, DEFAULT_BUDGET).unwrap();
    for &u in g.elements() {
        for &v in g.elements() {
            assert!(g.contains(g.meet(u, v)) && g.contains(g.join(u, v)));
        }
    }
}
