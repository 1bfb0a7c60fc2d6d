//! Catalog of named lattices loaded from text files, with recomputed
//! verification of every entry: sizes, subdirect irreducibility, monolith
//! separation, meet/join conditions, automorphism counts, the axiom oracle,
//! and a handful of relational spot checks on L4 and N5.
//!
//! File format, one or more blocks per file:
//!
//! ```text
//! lattice NAME
//! elements n1 n2 ...
//! covers lo<hi lo<hi ...
//! end
//! ```
//!
//! Tokens are whitespace-separated; blank lines and lines starting with `#`
//! are ignored. `elements`, `covers`, `end` and `lattice` are reserved words.

use crate::congruence::{self, monolith};
use crate::lattice::{self, CoverGraph, FiniteLattice, LatticeError};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// The entries every catalog must provide.
pub const REQUIRED_NAMES: [&str; 27] = [
    "C2", "M3", "N5", "U8", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10",
    "L11", "L12", "L13", "L14", "L15", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8",
];

#[derive(Debug)]
pub enum CatalogError {
    Io { path: PathBuf, error: std::io::Error },
    Syntax { file: String, line: usize, message: String },
    Lattice { file: String, error: LatticeError },
    DuplicateLattice { file: String, name: String },
    MissingEntry { name: String },
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Io { path, error } => write!(f, "{}: {error}", path.display()),
            CatalogError::Syntax { file, line, message } => {
                write!(f, "{file}:{line}: {message}")
            }
            CatalogError::Lattice { file, error } => write!(f, "{file}: {error}"),
            CatalogError::DuplicateLattice { file, name } => {
                write!(f, "{file}: lattice {name} defined twice")
            }
            CatalogError::MissingEntry { name } => {
                write!(f, "catalog is missing required lattice {name}")
            }
        }
    }
}

impl std::error::Error for CatalogError {}

/// Loaded catalog: shared immutable lattices by name, plus the raw cover
/// graphs for round-trip checks.
pub struct Catalog {
    entries: BTreeMap<String, Arc<FiniteLattice>>,
    graphs: BTreeMap<String, CoverGraph>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&Arc<FiniteLattice>> {
        self.entries.get(name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(|s| s.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn cover_graph(&self, name: &str) -> Option<&CoverGraph> {
        self.graphs.get(name)
    }

    pub fn resolve(&self, lattice: &str, element: &str) -> Result<usize, ResolveError> {
        let l = self
            .get(lattice)
            .ok_or_else(|| ResolveError::UnknownLattice { name: lattice.to_string() })?;
        l.element_index(element).ok_or_else(|| ResolveError::UnknownElement {
            lattice: lattice.to_string(),
            name: element.to_string(),
        })
    }
}

const RESERVED: [&str; 4] = ["lattice", "elements", "covers", "end"];

/// Parses catalog text into cover graphs. `file` is used in error messages.
pub fn parse_catalog_text(text: &str, file: &str) -> Result<Vec<CoverGraph>, CatalogError> {
    // tokens with their line numbers, comment and blank lines dropped
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            tokens.push((i + 1, tok));
        }
    }
    let syntax = |line: usize, message: String| CatalogError::Syntax {
        file: file.to_string(),
        line,
        message,
    };
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < tokens.len() {
        let (line, tok) = tokens[pos];
        if tok != "lattice" {
            return Err(syntax(line, format!("expected `lattice`, found `{tok}`")));
        }
        pos += 1;
        let (line, name) = *tokens
            .get(pos)
            .ok_or_else(|| syntax(line, "expected lattice name".into()))?;
        if !is_name(name) {
            return Err(syntax(line, format!("invalid lattice name `{name}`")));
        }
        pos += 1;
        match tokens.get(pos) {
            Some(&(_, "elements")) => pos += 1,
            Some(&(l, t)) => return Err(syntax(l, format!("expected `elements`, found `{t}`"))),
            None => return Err(syntax(line, "expected `elements`".into())),
        }
        let mut elements = Vec::new();
        while let Some(&(l, t)) = tokens.get(pos) {
            if t == "covers" {
                break;
            }
            if !is_name(t) {
                return Err(syntax(l, format!("invalid element name `{t}`")));
            }
            elements.push(t.to_string());
            pos += 1;
        }
        match tokens.get(pos) {
            Some(&(_, "covers")) => pos += 1,
            _ => return Err(syntax(line, "expected `covers`".into())),
        }
        let mut covers = Vec::new();
        let mut ended = false;
        while let Some(&(l, t)) = tokens.get(pos) {
            if t == "end" {
                ended = true;
                pos += 1;
                break;
            }
            let (lo, hi) = t
                .split_once('<')
                .ok_or_else(|| syntax(l, format!("expected `lo<hi` cover pair, found `{t}`")))?;
            if !is_name(lo) || !is_name(hi) {
                return Err(syntax(l, format!("invalid cover pair `{t}`")));
            }
            covers.push((lo.to_string(), hi.to_string()));
            pos += 1;
        }
        if !ended {
            return Err(syntax(line, format!("lattice {name}: missing `end`")));
        }
        out.push(CoverGraph { name: name.to_string(), elements, covers });
    }
    Ok(out)
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}

/// Loads and validates all lattices from the given catalog files; every name
/// in [`REQUIRED_NAMES`] must be present.
pub fn load_catalog_files(paths: &[PathBuf]) -> Result<Catalog, CatalogError> {
    let mut entries = BTreeMap::new();
    let mut graphs = BTreeMap::new();
    for path in paths {
        let text = std::fs::read_to_string(path)
            .map_err(|error| CatalogError::Io { path: path.clone(), error })?;
        let file = path.display().to_string();
        for g in parse_catalog_text(&text, &file)? {
            let l = FiniteLattice::from_cover_graph(&g)
                .map_err(|error| CatalogError::Lattice { file: file.clone(), error })?;
            if entries.insert(g.name.clone(), Arc::new(l)).is_some() {
                return Err(CatalogError::DuplicateLattice { file, name: g.name });
            }
            graphs.insert(g.name.clone(), g);
        }
    }
    for name in REQUIRED_NAMES {
        if !entries.contains_key(name) {
            return Err(CatalogError::MissingEntry { name: name.to_string() });
        }
    }
    Ok(Catalog { entries, graphs })
}

/// Loads every `*.lat` file of a directory, in file-name order.
pub fn load_catalog_dir(dir: &Path) -> Result<Catalog, CatalogError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|error| CatalogError::Io { path: dir.to_path_buf(), error })?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|e| e == "lat").unwrap_or(false))
        .collect();
    paths.sort();
    load_catalog_files(&paths)
}

/// Expected properties of a catalog entry. `None` means unconstrained.
#[derive(Debug, Clone, Copy)]
pub struct Expectation {
    pub size: usize,
    pub aut: Option<usize>,
    pub si: bool,
    /// (monolith 0-separating, monolith 1-separating)
    pub monolith_separating: Option<(bool, bool)>,
    /// (meet condition, join condition)
    pub conditions: Option<(bool, bool)>,
}

/// The classification table the catalog is verified against: size, |Aut|,
/// subdirect irreducibility, monolith separation and the two generating-triple
/// conditions for each required entry.
pub fn expectations() -> BTreeMap<&'static str, Expectation> {
    fn e(size: usize, aut: usize, sep: (bool, bool), cond: (bool, bool)) -> Expectation {
        Expectation {
            size,
            aut: Some(aut),
            si: true,
            monolith_separating: Some(sep),
            conditions: Some(cond),
        }
    }
    let mut m = BTreeMap::new();
    m.insert("C2", e(2, 1, (false, false), (false, false)));
    m.insert("M3", e(5, 6, (false, false), (false, false)));
    m.insert("N5", e(5, 1, (true, true), (false, false)));
    m.insert("U8", e(8, 1, (false, false), (false, false)));
    m.insert("L1", e(7, 2, (false, true), (false, true)));
    m.insert("L2", e(7, 2, (true, false), (true, false)));
    m.insert("L3", e(7, 1, (false, false), (false, false)));
    m.insert("L4", e(6, 2, (false, false), (false, false)));
    m.insert("L5", e(6, 2, (false, false), (false, false)));
    m.insert("L6", e(8, 1, (true, true), (true, true)));
    m.insert("L7", e(9, 2, (true, true), (false, true)));
    m.insert("L8", e(9, 2, (true, true), (true, false)));
    m.insert("L9", e(9, 1, (true, true), (true, true)));
    m.insert("L10", e(9, 1, (true, true), (true, true)));
    m.insert("L11", e(9, 1, (true, true), (false, true)));
    m.insert("L12", e(9, 1, (true, true), (true, false)));
    m.insert("L13", e(10, 1, (true, true), (false, true)));
    m.insert("L14", e(10, 1, (true, true), (true, false)));
    m.insert("L15", e(10, 2, (true, true), (true, true)));
    m.insert("V1", e(6, 2, (true, true), (true, true)));
    m.insert("V2", e(8, 2, (true, true), (true, true)));
    m.insert("V3", e(8, 2, (true, true), (true, true)));
    m.insert("V4", e(8, 2, (true, true), (true, true)));
    m.insert("V5", e(8, 2, (true, true), (true, true)));
    m.insert("V6", e(9, 2, (false, true), (false, false)));
    m.insert("V7", e(9, 2, (true, false), (false, false)));
    m.insert("V8", e(8, 6, (true, true), (true, true)));
    m
}

/// One verified entry: the recomputed values and any mismatch messages.
pub struct EntryReport {
    pub name: String,
    pub size: usize,
    pub aut: usize,
    pub si: bool,
    pub monolith_separating: Option<(bool, bool)>,
    pub conditions: (bool, bool),
    pub mismatches: Vec<String>,
}

pub struct VerifyReport {
    pub entries: Vec<EntryReport>,
}

impl VerifyReport {
    pub fn mismatch_count(&self) -> usize {
        self.entries.iter().map(|e| e.mismatches.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatch_count() == 0
    }
}

/// Recomputes every classification datum of every required entry and compares
/// it against [`expectations`]; also runs the axiom oracle, the cover-graph
/// round trip, and relational spot checks recoverable from the source
/// computations (L4 coordinate arithmetic, the N5-to-C2 collapse).
pub fn verify_catalog(catalog: &Catalog) -> VerifyReport {
    let expected = expectations();
    let mut entries = Vec::new();
    for name in REQUIRED_NAMES {
        let l = catalog.get(name).expect("loader enforces required entries");
        let mut mismatches = Vec::new();

        if !lattice::validate_axioms(l).is_empty() {
            mismatches.push("lattice axioms violated".to_string());
        }
        if let Some(g) = catalog.cover_graph(name) {
            let mut extracted = l.to_cover_graph().covers;
            let mut listed = g.covers.clone();
            extracted.sort();
            listed.sort();
            if extracted != listed {
                mismatches.push("cover graph does not round-trip".to_string());
            }
        }

        let size = l.len();
        let aut = lattice::automorphism_count(l);
        let mono = monolith(l);
        let si = mono.is_ok();
        let monolith_separating = mono
            .as_ref()
            .ok()
            .map(|mu| (mu.is_zero_separating(l), mu.is_one_separating(l)));
        let mc = congruence::meet_condition(l);
        let jc = congruence::join_condition(l);
        let conditions = (mc.holds, jc.holds);

        if let Some(exp) = expected.get(name) {
            if size != exp.size {
                mismatches.push(format!("size {size}, expected {}", exp.size));
            }
            if let Some(a) = exp.aut {
                if aut != a {
                    mismatches.push(format!("|Aut| {aut}, expected {a}"));
                }
            }
            if si != exp.si {
                mismatches.push(format!("subdirectly irreducible: {si}, expected {}", exp.si));
            }
            if let (Some(got), Some(want)) = (monolith_separating, exp.monolith_separating) {
                if got != want {
                    mismatches.push(format!(
                        "monolith separating (0,1) = {got:?}, expected {want:?}"
                    ));
                }
            }
            if let Some(want) = exp.conditions {
                if conditions != want {
                    mismatches.push(format!(
                        "meet/join conditions {conditions:?}, expected {want:?}"
                    ));
                }
            }
        }

        if name == "L4" {
            mismatches.extend(l4_relational_checks(l));
        }
        if name == "N5" {
            mismatches.extend(n5_relational_checks(l, catalog));
        }

        entries.push(EntryReport {
            name: name.to_string(),
            size,
            aut,
            si,
            monolith_separating,
            conditions,
            mismatches,
        });
    }
    VerifyReport { entries }
}

/// The coordinate arithmetic of the 92-element construction forces these
/// relations among the named elements of L4.
fn l4_relational_checks(l: &FiniteLattice) -> Vec<String> {
    let mut out = Vec::new();
    let (a, b, c, d) = match (
        l.element_index("a"),
        l.element_index("b"),
        l.element_index("c"),
        l.element_index("d"),
    ) {
        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
        _ => {
            out.push("L4 is missing named elements a, b, c, d".to_string());
            return out;
        }
    };
    let checks: [(&str, bool); 5] = [
        ("a v b = d", l.join(a, b) == d),
        ("c ^ d = 0", l.meet(c, d) == l.bottom()),
        ("a v c = 1", l.join(a, c) == l.top()),
        ("b v c = 1", l.join(b, c) == l.top()),
        ("a ^ b = 0", l.meet(a, b) == l.bottom()),
    ];
    for (label, ok) in checks {
        if !ok {
            out.push(format!("L4 relation failed: {label}"));
        }
    }
    out
}

/// N5 must admit the surjection onto C2 that sends b, a to 0 and c to 1;
/// this is the collapse the quoted constraint line presupposes.
fn n5_relational_checks(l: &FiniteLattice, catalog: &Catalog) -> Vec<String> {
    let mut out = Vec::new();
    let c2 = match catalog.get("C2") {
        Some(c2) => c2,
        None => return out,
    };
    let (a, b, c) = match (l.element_index("a"), l.element_index("b"), l.element_index("c")) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            out.push("N5 is missing named elements a, b, c".to_string());
            return out;
        }
    };
    if !(l.leq(a, b) && l.meet(b, c) == l.bottom() && l.join(a, c) == l.top()) {
        out.push("N5 labeling is not the chain 0<a<b<1 with side c".to_string());
    }
    match congruence::surjective_homomorphisms(l, c2) {
        Ok(homs) => {
            let zero = c2.bottom();
            let one = c2.top();
            if !homs.iter().any(|h| h[b] == zero && h[a] == zero && h[c] == one) {
                out.push("N5 lacks the collapse b,a -> 0, c -> 1".to_string());
            }
        }
        Err(e) => out.push(format!("N5 homomorphism check failed: {e}")),
    }
    out
}

/// Error when a lattice or element name fails to resolve against the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveError {
    UnknownLattice { name: String },
    UnknownElement { lattice: String, name: String },
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::UnknownLattice { name } => write!(f, "unknown lattice {name}"),
            ResolveError::UnknownElement { lattice, name } => {
                write!(f, "lattice {lattice} has no element {name}")
            }
        }
    }
}

impl std::error::Error for ResolveError {}
