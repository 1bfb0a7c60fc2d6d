//! Spectrum invariants on the shipped run files: single-factor subsets agree
//! with direct sublattice computations, restricted run specs report subsets
//! of the full report, and a quick double spectrum stays pinned.

use latspec::catalog::{load_catalog_dir, Catalog};
use latspec::product::DEFAULT_BUDGET;
use latspec::runfile::parse_run_file;
use latspec::spectra::{
    delta_tables, enumerate_spectrum, SpectrumMode, SpectrumOptions,
};
use std::path::{Path, PathBuf};

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn catalog() -> Catalog {
    load_catalog_dir(&repo_root().join("data")).unwrap()
}

fn opts() -> SpectrumOptions {
    SpectrumOptions { jobs: 1, budget: DEFAULT_BUDGET, log_per_subset: true }
}

#[test]
fn single_factor_subsets_match_sublattice_atom_counts() {
    // in an atom-mode run file every assignment triple generates a sublattice
    // of its factor; the closure of the single-factor subset must be that
    // sublattice, so the atom counts have an independent route
    let cat = catalog();
    let text = std::fs::read_to_string(repo_root().join("runs/as_mh6.run")).unwrap();
    let rs = parse_run_file(&text, &cat).unwrap();
    let report =
        enumerate_spectrum(&rs, &cat, SpectrumMode::Double, &opts(), None).unwrap();
    let log = report.per_subset.unwrap();
    for (i, asg) in rs.assignments.iter().enumerate() {
        let mask = 1u64 << i;
        let rec = log.iter().find(|r| r.mask == mask).expect("single subsets are valid");
        let l = cat.get(&asg.lattice).unwrap();
        let triple = [&asg.x, &asg.y, &asg.z]
            .map(|n| l.element_index(n).expect("element resolves"));
        let sub = l.restrict(l.sublattice_closure(&triple));
        assert_eq!(rec.elements, sub.len(), "assignment {i} element count");
        assert_eq!(rec.atoms, Some(sub.atoms().len()), "assignment {i} atom count");
        assert_eq!(rec.coatoms, Some(sub.coatoms().len()), "assignment {i} coatom count");
    }
}

#[test]
fn prefix_restriction_reports_a_subset_of_the_full_report() {
    let cat = catalog();
    let text = std::fs::read_to_string(repo_root().join("runs/as_ml3.run")).unwrap();
    let full_rs = parse_run_file(&text, &cat).unwrap();
    let full =
        enumerate_spectrum(&full_rs, &cat, SpectrumMode::Atoms, &opts(), None).unwrap();

    let mut small_rs = full_rs.clone();
    small_rs.assignments.truncate(6);
    small_rs
        .constraints
        .retain(|c| {
            small_rs.assignments.contains(&c.if_part)
                && small_rs.assignments.contains(&c.then_not)
        });
    let small =
        enumerate_spectrum(&small_rs, &cat, SpectrumMode::Atoms, &opts(), None).unwrap();

    assert!(small.atom_set.is_subset(&full.atom_set));
    // prefix masks line up one to one
    let full_log = full.per_subset.unwrap();
    for rec in small.per_subset.unwrap() {
        let in_full = full_log.iter().find(|r| r.mask == rec.mask).expect("same mask");
        assert_eq!(rec.elements, in_full.elements);
        assert_eq!(rec.atoms, in_full.atoms);
    }
}

#[test]
fn quick_double_spectrum_stays_pinned() {
    // the smallest double-spectrum run finishes in well under a second and
    // guards the constraint semantics end to end
    let cat = catalog();
    let text = std::fs::read_to_string(repo_root().join("runs/ds_mn5.run")).unwrap();
    let rs = parse_run_file(&text, &cat).unwrap();
    assert_eq!(rs.assignments.len(), 13);
    let report =
        enumerate_spectrum(&rs, &cat, SpectrumMode::Double, &opts(), None).unwrap();
    assert_eq!(report.pair_set, delta_tables().d3);
    assert_eq!(report.subsets_total, (1 << 13) - 1);
    assert_eq!(
        report.subsets_valid + report.subsets_skipped,
        report.subsets_total
    );
    // coatom projection of the same run
    let coatoms =
        enumerate_spectrum(&rs, &cat, SpectrumMode::Coatoms, &opts(), None).unwrap();
    assert_eq!(coatoms.coatom_set, [1, 2, 3].into_iter().collect());
}

#[test]
fn free_report_carries_the_full_mask() {
    let cat = catalog();
    let text = std::fs::read_to_string(repo_root().join("runs/fm3.run")).unwrap();
    let rs = parse_run_file(&text, &cat).unwrap();
    let report = latspec::spectra::free_report(&rs, &cat, DEFAULT_BUDGET).unwrap();
    assert_eq!(report.mode, SpectrumMode::Free);
    let log = report.per_subset.unwrap();
    assert_eq!(log.len(), 1);
    assert_eq!(log[0].mask, (1 << 7) - 1);
    assert_eq!(log[0].elements, 28);
}
