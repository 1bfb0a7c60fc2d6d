//! The run-file format: assignment lines and constraint lines.
//!
//! ```text
//! \lattice=N5 \with x=b y=a z=c
//! \if N5 \with x=b y=a z=c \ThenNot C2 \with x=0 y=0 z=1
//! ```
//!
//! Tokens are separated by one or more spaces; any other whitespace inside a
//! line is a syntax error. Blank lines and lines starting with `#` are
//! skipped. The parser resolves every lattice and element name against a
//! loaded catalog and rejects duplicate assignments and constraints whose
//! parts do not match an assignment line of the same file.

use crate::catalog::Catalog;
use crate::congruence::surjective_homomorphisms;
use crate::product::{FactorAssignment, FactorSystem, ProductError};
use std::collections::BTreeSet;
use std::fmt;

/// `\lattice=NAME \with x=… y=… z=…`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssignmentLine {
    pub lattice: String,
    pub x: String,
    pub y: String,
    pub z: String,
}

impl AssignmentLine {
    pub fn new(lattice: &str, x: &str, y: &str, z: &str) -> AssignmentLine {
        AssignmentLine {
            lattice: lattice.to_string(),
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
        }
    }
}

/// `\if <assignment> \ThenNot <assignment>`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConstraintLine {
    pub if_part: AssignmentLine,
    pub then_not: AssignmentLine,
}

/// A parsed run file. Assignment order defines the factor indices of every
/// product built from this spec.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunSpec {
    pub assignments: Vec<AssignmentLine>,
    pub constraints: Vec<ConstraintLine>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunFileError {
    Syntax { line: usize, column: usize, expected: String },
    UnknownLattice { line: usize, name: String },
    UnknownElement { line: usize, lattice: String, name: String },
    DuplicateAssignment { line: usize },
    DanglingConstraint { line: usize },
}

impl fmt::Display for RunFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunFileError::Syntax { line, column, expected } => {
                write!(f, "line {line}, column {column}: expected {expected}")
            }
            RunFileError::UnknownLattice { line, name } => {
                write!(f, "line {line}: unknown lattice {name}")
            }
            RunFileError::UnknownElement { line, lattice, name } => {
                write!(f, "line {line}: lattice {lattice} has no element {name}")
            }
            RunFileError::DuplicateAssignment { line } => {
                write!(f, "line {line}: duplicate assignment")
            }
            RunFileError::DanglingConstraint { line } => {
                write!(f, "line {line}: constraint references no assignment line of this file")
            }
        }
    }
}

impl std::error::Error for RunFileError {}

/// Scanner over one line; columns are 1-based byte positions.
struct LineScanner<'a> {
    line_no: usize,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> LineScanner<'a> {
    fn new(line_no: usize, text: &'a str) -> LineScanner<'a> {
        LineScanner { line_no, bytes: text.as_bytes(), pos: 0 }
    }

    fn err(&self, expected: &str) -> RunFileError {
        RunFileError::Syntax {
            line: self.line_no,
            column: self.pos + 1,
            expected: expected.to_string(),
        }
    }

    /// One or more spaces. Tabs or other whitespace are errors.
    fn spaces(&mut self) -> Result<(), RunFileError> {
        if self.bytes.get(self.pos) != Some(&b' ') {
            return Err(self.err("space"));
        }
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
        Ok(())
    }

    fn literal(&mut self, lit: &str) -> Result<(), RunFileError> {
        if self.bytes[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(&format!("`{lit}`")))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, RunFileError> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(what));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap().to_string())
    }

    fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }

    /// `\with x=… y=… z=…`, starting at `\with`.
    fn with_triple(&mut self) -> Result<(String, String, String), RunFileError> {
        self.literal("\\with")?;
        self.spaces()?;
        self.literal("x=")?;
        let x = self.name("element name")?;
        self.spaces()?;
        self.literal("y=")?;
        let y = self.name("element name")?;
        self.spaces()?;
        self.literal("z=")?;
        let z = self.name("element name")?;
        Ok((x, y, z))
    }
}

/// Parses a run file against a loaded catalog.
pub fn parse_run_file(text: &str, catalog: &Catalog) -> Result<RunSpec, RunFileError> {
    let mut spec = RunSpec::default();
    let mut constraint_lines: Vec<usize> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut s = LineScanner::new(line_no, line);
        if line.starts_with("\\lattice=") {
            s.literal("\\lattice=")?;
            let lattice = s.name("lattice name")?;
            s.spaces()?;
            let (x, y, z) = s.with_triple()?;
            if !s.at_end() {
                // allow trailing spaces only
                while s.bytes.get(s.pos) == Some(&b' ') {
                    s.pos += 1;
                }
                if !s.at_end() {
                    return Err(s.err("end of line"));
                }
            }
            let asg = AssignmentLine { lattice, x, y, z };
            resolve_assignment(&asg, line_no, catalog)?;
            if spec.assignments.contains(&asg) {
                return Err(RunFileError::DuplicateAssignment { line: line_no });
            }
            spec.assignments.push(asg);
        } else if line.starts_with("\\if") {
            s.literal("\\if")?;
            s.spaces()?;
            let if_lattice = s.name("lattice name")?;
            s.spaces()?;
            let (ix, iy, iz) = s.with_triple()?;
            s.spaces()?;
            s.literal("\\ThenNot")?;
            s.spaces()?;
            let then_lattice = s.name("lattice name")?;
            s.spaces()?;
            let (tx, ty, tz) = s.with_triple()?;
            if !s.at_end() {
                while s.bytes.get(s.pos) == Some(&b' ') {
                    s.pos += 1;
                }
                if !s.at_end() {
                    return Err(s.err("end of line"));
                }
            }
            let cons = ConstraintLine {
                if_part: AssignmentLine { lattice: if_lattice, x: ix, y: iy, z: iz },
                then_not: AssignmentLine { lattice: then_lattice, x: tx, y: ty, z: tz },
            };
            resolve_assignment(&cons.if_part, line_no, catalog)?;
            resolve_assignment(&cons.then_not, line_no, catalog)?;
            spec.constraints.push(cons);
            constraint_lines.push(line_no);
        } else {
            return Err(s.err("`\\lattice=` or `\\if`"));
        }
    }
    for (cons, &line) in spec.constraints.iter().zip(&constraint_lines) {
        if !spec.assignments.contains(&cons.if_part)
            || !spec.assignments.contains(&cons.then_not)
        {
            return Err(RunFileError::DanglingConstraint { line });
        }
    }
    Ok(spec)
}

fn resolve_assignment(
    asg: &AssignmentLine,
    line: usize,
    catalog: &Catalog,
) -> Result<[usize; 3], RunFileError> {
    let l = catalog
        .get(&asg.lattice)
        .ok_or_else(|| RunFileError::UnknownLattice { line, name: asg.lattice.clone() })?;
    let mut t = [0usize; 3];
    for (slot, name) in t.iter_mut().zip([&asg.x, &asg.y, &asg.z]) {
        *slot = l.element_index(name).ok_or_else(|| RunFileError::UnknownElement {
            line,
            lattice: asg.lattice.clone(),
            name: name.clone(),
        })?;
    }
    Ok(t)
}

/// Renders a RunSpec in the exact token layout the parser accepts;
/// `parse_run_file(render_run_file(rs)) == rs`.
pub fn render_run_file(rs: &RunSpec) -> String {
    let mut out = String::new();
    for a in &rs.assignments {
        out.push_str(&format!(
            "\\lattice={} \\with x={} y={} z={}\n",
            a.lattice, a.x, a.y, a.z
        ));
    }
    for c in &rs.constraints {
        out.push_str(&format!(
            "\\if {} \\with x={} y={} z={} \\ThenNot {} \\with x={} y={} z={}\n",
            c.if_part.lattice,
            c.if_part.x,
            c.if_part.y,
            c.if_part.z,
            c.then_not.lattice,
            c.then_not.x,
            c.then_not.y,
            c.then_not.z
        ));
    }
    out
}

/// For every ordered pair of assignments (i, j) and every surjective
/// non-bijective homomorphism from lattice(i) onto lattice(j) carrying the
/// triple of i to the triple of j, emits one constraint line, duplicates
/// removed, in assignment-index order.
pub fn derive_constraints(rs: &RunSpec, catalog: &Catalog) -> Vec<ConstraintLine> {
    let mut out: Vec<ConstraintLine> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, src) in rs.assignments.iter().enumerate() {
        for (j, dst) in rs.assignments.iter().enumerate() {
            if i == j || seen.contains(&(i, j)) {
                continue;
            }
            let ls = catalog.get(&src.lattice).expect("parsed against this catalog");
            let ld = catalog.get(&dst.lattice).expect("parsed against this catalog");
            if ld.len() >= ls.len() {
                continue; // surjective and size-preserving means bijective
            }
            let st = resolve_triple(src, catalog);
            let dt = resolve_triple(dst, catalog);
            let homs = surjective_homomorphisms(ls, ld).expect("catalog-scale lattices");
            if homs
                .iter()
                .any(|h| h[st[0]] == dt[0] && h[st[1]] == dt[1] && h[st[2]] == dt[2])
            {
                seen.insert((i, j));
                out.push(ConstraintLine { if_part: src.clone(), then_not: dst.clone() });
            }
        }
    }
    out
}

fn resolve_triple(asg: &AssignmentLine, catalog: &Catalog) -> [usize; 3] {
    resolve_assignment(asg, 0, catalog).expect("assignment already resolved at parse time")
}

/// Builds the factor system of a full RunSpec (all assignments, in order).
pub fn factor_system(rs: &RunSpec, catalog: &Catalog) -> Result<FactorSystem, ProductError> {
    let factors = rs
        .assignments
        .iter()
        .map(|a| FactorAssignment {
            lattice: catalog.get(&a.lattice).expect("resolved at parse time").clone(),
            triple: resolve_triple(a, catalog),
        })
        .collect();
    FactorSystem::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog_dir;
    use std::path::Path;

    fn catalog() -> Catalog {
        load_catalog_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")).unwrap()
    }

    #[test]
    fn parses_the_quoted_assignment_line() {
        let cat = catalog();
        let rs = parse_run_file("\\lattice=N5 \\with x=b y=a z=c\n", &cat).unwrap();
        assert_eq!(rs.assignments, vec![AssignmentLine::new("N5", "b", "a", "c")]);
        assert!(rs.constraints.is_empty());
    }

    #[test]
    fn parses_the_quoted_constraint_line() {
        let cat = catalog();
        let text = "\\lattice=N5 \\with x=b y=a z=c\n\\lattice=C2 \\with x=0 y=0 z=1\n\\if N5 \\with x=b y=a z=c \\ThenNot C2 \\with x=0 y=0 z=1\n";
        let rs = parse_run_file(text, &cat).unwrap();
        assert_eq!(rs.constraints.len(), 1);
        assert_eq!(rs.constraints[0].if_part, AssignmentLine::new("N5", "b", "a", "c"));
        assert_eq!(rs.constraints[0].then_not, AssignmentLine::new("C2", "0", "0", "1"));
    }

    #[test]
    fn empty_input_parses_to_empty_spec() {
        let rs = parse_run_file("", &catalog()).unwrap();
        assert!(rs.assignments.is_empty() && rs.constraints.is_empty());
    }

    #[test]
    fn repeated_single_spaces_are_accepted() {
        let cat = catalog();
        let rs = parse_run_file("\\lattice=U8  \\with  x=a  y=b  z=c\n", &cat).unwrap();
        assert_eq!(rs.assignments, vec![AssignmentLine::new("U8", "a", "b", "c")]);
    }

    #[test]
    fn tabs_and_other_whitespace_are_syntax_errors() {
        let cat = catalog();
        for bad in [
            "\\lattice=N5\t\\with x=b y=a z=c\n",
            " \\lattice=N5 \\with x=b y=a z=c\n",
            "\\lattice =N5 \\with x=b y=a z=c\n",
            "\\lattice=N5 \\with y=a x=b z=c\n",
        ] {
            match parse_run_file(bad, &cat) {
                Err(RunFileError::Syntax { .. }) => {}
                other => panic!("expected syntax error for {bad:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_names_are_reported_with_lines() {
        let cat = catalog();
        assert_eq!(
            parse_run_file("\\lattice=Q9 \\with x=a y=b z=c\n", &cat),
            Err(RunFileError::UnknownLattice { line: 1, name: "Q9".into() })
        );
        assert_eq!(
            parse_run_file("\\lattice=N5 \\with x=a y=b z=q\n", &cat),
            Err(RunFileError::UnknownElement {
                line: 1,
                lattice: "N5".into(),
                name: "q".into()
            })
        );
    }

    #[test]
    fn duplicates_and_dangling_constraints_are_rejected() {
        let cat = catalog();
        let dup = "\\lattice=N5 \\with x=b y=a z=c\n\\lattice=N5 \\with x=b y=a z=c\n";
        assert_eq!(
            parse_run_file(dup, &cat),
            Err(RunFileError::DuplicateAssignment { line: 2 })
        );
        let dangling = "\\lattice=N5 \\with x=b y=a z=c\n\\if N5 \\with x=b y=a z=c \\ThenNot C2 \\with x=0 y=0 z=1\n";
        assert_eq!(
            parse_run_file(dangling, &cat),
            Err(RunFileError::DanglingConstraint { line: 2 })
        );
    }

    #[test]
    fn render_parse_round_trip() {
        let cat = catalog();
        let text = "\\lattice=N5 \\with x=b y=a z=c\n\\lattice=C2 \\with x=0 y=0 z=1\n\\if N5 \\with x=b y=a z=c \\ThenNot C2 \\with x=0 y=0 z=1\n";
        let rs = parse_run_file(text, &cat).unwrap();
        let rendered = render_run_file(&rs);
        assert_eq!(rendered, text);
        assert_eq!(parse_run_file(&rendered, &cat).unwrap(), rs);
    }

    #[test]
    fn quoted_u8_block_round_trips_byte_identically() {
        let cat = catalog();
        let block = "\\lattice=U8 \\with x=a y=b z=c\n\
                     \\lattice=U8 \\with x=a y=c z=b\n\
                     \\lattice=U8 \\with x=b y=a z=c\n\
                     \\lattice=U8 \\with x=b y=c z=a\n\
                     \\lattice=U8 \\with x=c y=a z=b\n\
                     \\lattice=U8 \\with x=c y=b z=a\n";
        let rs = parse_run_file(block, &cat).unwrap();
        assert_eq!(render_run_file(&rs), block);
    }

    #[test]
    fn derives_the_quoted_pentagon_constraint() {
        let cat = catalog();
        let text = "\\lattice=N5 \\with x=b y=a z=c\n\\lattice=C2 \\with x=0 y=0 z=1\n";
        let rs = parse_run_file(text, &cat).unwrap();
        let cons = derive_constraints(&rs, &cat);
        assert!(cons.iter().any(|c| c.if_part == AssignmentLine::new("N5", "b", "a", "c")
            && c.then_not == AssignmentLine::new("C2", "0", "0", "1")));
    }

    #[test]
    fn no_constraints_between_equal_sized_factors() {
        let cat = catalog();
        let text = "\\lattice=C2 \\with x=0 y=0 z=1\n\\lattice=C2 \\with x=0 y=1 z=0\n";
        let rs = parse_run_file(text, &cat).unwrap();
        assert!(derive_constraints(&rs, &cat).is_empty());
    }

    #[test]
    fn derived_constraints_reference_existing_assignments() {
        let cat = catalog();
        let text = "\\lattice=L4 \\with x=a y=b z=c\n\\lattice=C2 \\with x=0 y=0 z=1\n\\lattice=N5 \\with x=a y=b z=c\n";
        let rs = parse_run_file(text, &cat).unwrap();
        for c in derive_constraints(&rs, &cat) {
            assert!(rs.assignments.contains(&c.if_part));
            assert!(rs.assignments.contains(&c.then_not));
        }
    }
}
