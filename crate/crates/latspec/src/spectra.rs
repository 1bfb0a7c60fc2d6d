//! Spectrum enumeration: for every constraint-valid nonempty subset of a run
//! file's assignments, close the selected factor system and record its atom
//! and coatom counts. Subsets are bitmasks over assignment indices; a subset
//! is skipped when some constraint has both its endpoints selected (the
//! criticizing homomorphism makes the target factor redundant, so the subset
//! repeats an already-enumerated lattice up to isomorphism).
//!
//! Enumeration is a parallel map over masks with a commutative merge, so the
//! report is identical for any worker count.

use crate::catalog::Catalog;
use crate::congruence::generating_triples_up_to_aut;
use crate::product::{self, FactorAssignment, FactorSystem, GeneratedLattice, ProductError};
use crate::runfile::{self, AssignmentLine, ConstraintLine, RunSpec};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    Atoms,
    Coatoms,
    Double,
    Free,
}

impl SpectrumMode {
    pub fn wants_atoms(self) -> bool {
        matches!(self, SpectrumMode::Atoms | SpectrumMode::Double | SpectrumMode::Free)
    }

    pub fn wants_coatoms(self) -> bool {
        matches!(self, SpectrumMode::Coatoms | SpectrumMode::Double | SpectrumMode::Free)
    }
}

/// Per-subset log entry (only constraint-valid subsets are computed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetRecord {
    pub mask: u64,
    pub elements: usize,
    pub atoms: Option<usize>,
    pub coatoms: Option<usize>,
}

/// Aggregated spectra over all valid subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub mode: SpectrumMode,
    pub atom_set: BTreeSet<usize>,
    pub coatom_set: BTreeSet<usize>,
    pub pair_set: BTreeSet<(usize, usize)>,
    pub subsets_total: u64,
    pub subsets_valid: u64,
    pub subsets_skipped: u64,
    pub per_subset: Option<Vec<SubsetRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    NoAssignments,
    TooManyAssignments { count: usize },
    /// Closure blow-up, with the offending subset mask.
    Capacity { mask: u64, budget: usize },
    Product(ProductError),
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::NoAssignments => write!(f, "run spec has no assignments"),
            SpectrumError::TooManyAssignments { count } => {
                write!(f, "{count} assignments exceed the subset-enumeration bound of 30")
            }
            SpectrumError::Capacity { mask, budget } => {
                write!(f, "subset mask={mask:x} exceeded the element budget of {budget}")
            }
            SpectrumError::Product(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpectrumError {}

impl From<ProductError> for SpectrumError {
    fn from(e: ProductError) -> Self {
        SpectrumError::Product(e)
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub jobs: usize,
    pub budget: usize,
    pub log_per_subset: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { jobs: 1, budget: product::DEFAULT_BUDGET, log_per_subset: false }
    }
}

/// True iff no constraint has both of its assignment endpoints selected.
pub fn subset_valid(mask: u64, rs: &RunSpec) -> bool {
    let pairs = constraint_pair_masks(rs);
    subset_valid_masks(mask, &pairs)
}

fn subset_valid_masks(mask: u64, pairs: &[u64]) -> bool {
    pairs.iter().all(|&p| mask & p != p)
}

/// Bitmask pairs (if-part index, then-not index) for every constraint whose
/// parts both occur among the assignments.
fn constraint_pair_masks(rs: &RunSpec) -> Vec<u64> {
    let index_of = |a: &AssignmentLine| rs.assignments.iter().position(|b| b == a);
    rs.constraints
        .iter()
        .filter_map(|c| {
            let i = index_of(&c.if_part)?;
            let j = index_of(&c.then_not)?;
            Some((1u64 << i) | (1u64 << j))
        })
        .collect()
}

/// The closure over all assignments simultaneously: the three-generated free
/// lattice of the variety the run file describes. Constraints are ignored.
pub fn free_lattice(
    rs: &RunSpec,
    catalog: &Catalog,
    budget: usize,
) -> Result<GeneratedLattice, SpectrumError> {
    if rs.assignments.is_empty() {
        return Err(SpectrumError::NoAssignments);
    }
    let fs = runfile::factor_system(rs, catalog)?;
    match product::closure(&fs, budget) {
        Ok(g) => Ok(g),
        Err(ProductError::CapacityExceeded { budget }) => {
            let mask = (1u64 << rs.assignments.len()) - 1;
            Err(SpectrumError::Capacity { mask, budget })
        }
        Err(e) => Err(e.into()),
    }
}

/// Report for a free-lattice run: the single all-assignments closure,
/// logged under the full mask.
pub fn free_report(
    rs: &RunSpec,
    catalog: &Catalog,
    budget: usize,
) -> Result<SpectrumReport, SpectrumError> {
    let g = free_lattice(rs, catalog, budget)?;
    let atoms = g.count_atoms();
    let coatoms = g.count_coatoms();
    let mask = (1u64 << rs.assignments.len()) - 1;
    Ok(SpectrumReport {
        mode: SpectrumMode::Free,
        atom_set: [atoms].into_iter().collect(),
        coatom_set: [coatoms].into_iter().collect(),
        pair_set: [(atoms, coatoms)].into_iter().collect(),
        subsets_total: 1,
        subsets_valid: 1,
        subsets_skipped: 0,
        per_subset: Some(vec![SubsetRecord {
            mask,
            elements: g.element_count(),
            atoms: Some(atoms),
            coatoms: Some(coatoms),
        }]),
    })
}

/// Enumerates all valid nonempty subsets of the assignments and aggregates
/// their atom/coatom counts. `progress`, when given, is incremented once per
/// processed mask (valid or skipped).
pub fn enumerate_spectrum(
    rs: &RunSpec,
    catalog: &Catalog,
    mode: SpectrumMode,
    opts: &SpectrumOptions,
    progress: Option<&AtomicU64>,
) -> Result<SpectrumReport, SpectrumError> {
    let k = rs.assignments.len();
    if k == 0 {
        return Err(SpectrumError::NoAssignments);
    }
    if k > 30 {
        return Err(SpectrumError::TooManyAssignments { count: k });
    }
    let factors: Vec<FactorAssignment> =
        runfile::factor_system(rs, catalog)?.factors;
    let pairs = constraint_pair_masks(rs);
    let total: u64 = (1u64 << k) - 1;
    let jobs = opts.jobs.max(1);

    struct WorkerOut {
        atom_set: BTreeSet<usize>,
        coatom_set: BTreeSet<usize>,
        pair_set: BTreeSet<(usize, usize)>,
        valid: u64,
        skipped: u64,
        log: Vec<SubsetRecord>,
        error: Option<SpectrumError>,
    }

    let run_range = |lo: u64, hi: u64| -> WorkerOut {
        let mut out = WorkerOut {
            atom_set: BTreeSet::new(),
            coatom_set: BTreeSet::new(),
            pair_set: BTreeSet::new(),
            valid: 0,
            skipped: 0,
            log: Vec::new(),
            error: None,
        };
        let mut selected: Vec<FactorAssignment> = Vec::with_capacity(k);
        for mask in lo..hi {
            if let Some(p) = progress {
                p.fetch_add(1, Ordering::Relaxed);
            }
            if !subset_valid_masks(mask, &pairs) {
                out.skipped += 1;
                continue;
            }
            selected.clear();
            for (i, fa) in factors.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    selected.push(fa.clone());
                }
            }
            let fs = FactorSystem { factors: selected.clone() };
            let g = match product::closure(&fs, opts.budget) {
                Ok(g) => g,
                Err(ProductError::CapacityExceeded { budget }) => {
                    out.error = Some(SpectrumError::Capacity { mask, budget });
                    return out;
                }
                Err(e) => {
                    out.error = Some(e.into());
                    return out;
                }
            };
            out.valid += 1;
            let atoms = mode.wants_atoms().then(|| g.count_atoms());
            let coatoms = mode.wants_coatoms().then(|| g.count_coatoms());
            if let Some(a) = atoms {
                out.atom_set.insert(a);
            }
            if let Some(c) = coatoms {
                out.coatom_set.insert(c);
            }
            if let (Some(a), Some(c)) = (atoms, coatoms) {
                out.pair_set.insert((a, c));
            }
            if opts.log_per_subset {
                out.log.push(SubsetRecord {
                    mask,
                    elements: g.element_count(),
                    atoms,
                    coatoms,
                });
            }
        }
        out
    };

    let mut parts: Vec<WorkerOut> = if jobs == 1 {
        vec![run_range(1, total + 1)]
    } else {
        let jobs = jobs.min(total as usize).max(1);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..jobs as u64 {
                let lo = 1 + w * total / jobs as u64;
                let hi = 1 + (w + 1) * total / jobs as u64;
                let run_range = &run_range;
                handles.push(scope.spawn(move || run_range(lo, hi)));
            }
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    let mut report = SpectrumReport {
        mode,
        atom_set: BTreeSet::new(),
        coatom_set: BTreeSet::new(),
        pair_set: BTreeSet::new(),
        subsets_total: total,
        subsets_valid: 0,
        subsets_skipped: 0,
        per_subset: opts.log_per_subset.then(Vec::new),
    };
    for part in &mut parts {
        if let Some(e) = part.error.take() {
            return Err(e);
        }
        report.atom_set.extend(part.atom_set.iter().copied());
        report.coatom_set.extend(part.coatom_set.iter().copied());
        report.pair_set.extend(part.pair_set.iter().copied());
        report.subsets_valid += part.valid;
        report.subsets_skipped += part.skipped;
        if let Some(log) = report.per_subset.as_mut() {
            log.extend(part.log.iter().copied());
        }
    }
    if let Some(log) = report.per_subset.as_mut() {
        log.sort_by_key(|r| r.mask);
    }
    Ok(report)
}

/// The reference pair sets from the double-spectrum classification.
pub struct DeltaTables {
    pub d3: BTreeSet<(usize, usize)>,
    pub d4: BTreeSet<(usize, usize)>,
    pub d6: BTreeSet<(usize, usize)>,
    pub d6_inv: BTreeSet<(usize, usize)>,
}

pub fn delta_tables() -> DeltaTables {
    let d3: BTreeSet<(usize, usize)> =
        [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)].into_iter().collect();
    let mut d4 = d3.clone();
    d4.extend([(4, 3), (3, 4), (4, 2), (2, 4)]);
    let mut d6 = d3.clone();
    d6.extend([(4, 2), (4, 3), (6, 3)]);
    let mut d6_inv = d3.clone();
    d6_inv.extend([(2, 4), (3, 4), (3, 6)]);
    DeltaTables { d3, d4, d6, d6_inv }
}

/// Which assignments a generated run file lists per lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Atom-spectrum files: only triples with x^z = y^z = bottom (the
    /// standard reduction for counting atoms), up to automorphism.
    Atoms,
    /// Double-spectrum files: all generating triples up to automorphism.
    Double,
}

/// Builds a run file for the variety generated by the named catalog lattices:
/// one assignment line per generating-triple orbit of each lattice (filtered
/// by the atom reduction in [`GenMode::Atoms`]), followed by all derivable
/// redundancy constraints.
pub fn generate_run_spec(
    catalog: &Catalog,
    lattices: &[&str],
    mode: GenMode,
) -> Result<RunSpec, crate::catalog::ResolveError> {
    let mut rs = RunSpec::default();
    for &name in lattices {
        let l = catalog
            .get(name)
            .ok_or_else(|| crate::catalog::ResolveError::UnknownLattice { name: name.into() })?;
        for t in generating_triples_up_to_aut(l) {
            if mode == GenMode::Atoms {
                let bottom = l.bottom();
                if l.meet(t[0], t[2]) != bottom || l.meet(t[1], t[2]) != bottom {
                    continue;
                }
            }
            rs.assignments.push(AssignmentLine {
                lattice: name.to_string(),
                x: l.element_name(t[0]).to_string(),
                y: l.element_name(t[1]).to_string(),
                z: l.element_name(t[2]).to_string(),
            });
        }
    }
    rs.constraints = derive_constraints_for(&rs, catalog);
    Ok(rs)
}

fn derive_constraints_for(rs: &RunSpec, catalog: &Catalog) -> Vec<ConstraintLine> {
    runfile::derive_constraints(rs, catalog)
}
