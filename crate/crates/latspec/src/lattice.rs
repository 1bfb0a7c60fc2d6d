//! Finite lattices built from cover graphs.
//!
//! A [`CoverGraph`] is the raw input: named elements plus covering pairs of a
//! finite poset. [`FiniteLattice`] is the validated result with full meet/join
//! tables. Elements are dense indices `0..n`; the order is derived from meet
//! (`a <= b` iff `a /\ b = a`) and covers are recomputed on demand, so the
//! tables are the single source of truth.

use std::fmt;

/// Element index inside a [`FiniteLattice`].
pub type Elem = usize;

/// Hard cap on lattice size. Downsets are kept as single `u64` masks and every
/// factor of a product must fit in 8 bits, so 64 is comfortable for the whole
/// workbench (catalog lattices have at most 9 elements).
pub const MAX_ELEMS: usize = 64;

/// Raw input: element names plus covering pairs `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl CoverGraph {
    pub fn new(
        name: impl Into<String>,
        elements: &[&str],
        covers: &[(&str, &str)],
    ) -> CoverGraph {
        CoverGraph {
            name: name.into(),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    Empty { lattice: String },
    TooLarge { lattice: String, n: usize },
    DuplicateElement { lattice: String, name: String },
    UnknownName { lattice: String, name: String },
    SelfCover { lattice: String, name: String },
    CyclicCovers { lattice: String },
    RedundantCover { lattice: String, lower: String, upper: String },
    /// Some pair has no unique greatest lower / least upper bound.
    NotALattice { lattice: String, a: String, b: String, join: bool },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Empty { lattice } => write!(f, "lattice {lattice}: no elements"),
            LatticeError::TooLarge { lattice, n } => {
                write!(f, "lattice {lattice}: {n} elements exceeds the limit of {MAX_ELEMS}")
            }
            LatticeError::DuplicateElement { lattice, name } => {
                write!(f, "lattice {lattice}: element {name} listed twice")
            }
            LatticeError::UnknownName { lattice, name } => {
                write!(f, "lattice {lattice}: cover names unknown element {name}")
            }
            LatticeError::SelfCover { lattice, name } => {
                write!(f, "lattice {lattice}: cover pair {name}<{name} relates an element to itself")
            }
            LatticeError::CyclicCovers { lattice } => {
                write!(f, "lattice {lattice}: cover relation has a cycle")
            }
            LatticeError::RedundantCover { lattice, lower, upper } => {
                write!(f, "lattice {lattice}: cover {lower}<{upper} is implied by other covers")
            }
            LatticeError::NotALattice { lattice, a, b, join } => {
                let what = if *join { "least upper" } else { "greatest lower" };
                write!(f, "lattice {lattice}: elements {a} and {b} have no unique {what} bound")
            }
        }
    }
}

impl std::error::Error for LatticeError {}

/// A validated finite lattice with eagerly computed meet/join tables.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    n: usize,
    meet: Vec<u8>,
    join: Vec<u8>,
    /// `below[a]`: bitmask of the downset of `a`, including `a` itself.
    below: Vec<u64>,
    bottom: Elem,
    top: Elem,
    names: Vec<String>,
}

impl FiniteLattice {
    /// Builds a lattice whose order is the reflexive-transitive closure of
    /// `g.covers`. Every invariant of `CoverGraph` is checked here.
    pub fn from_cover_graph(g: &CoverGraph) -> Result<FiniteLattice, LatticeError> {
        let n = g.elements.len();
        let lat = || g.name.clone();
        if n == 0 {
            return Err(LatticeError::Empty { lattice: lat() });
        }
        if n > MAX_ELEMS {
            return Err(LatticeError::TooLarge { lattice: lat(), n });
        }

        let mut index = std::collections::HashMap::new();
        for (i, name) in g.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(LatticeError::DuplicateElement { lattice: lat(), name: name.clone() });
            }
        }
        let mut covers = Vec::with_capacity(g.covers.len());
        for (lo, hi) in &g.covers {
            let a = *index.get(lo.as_str()).ok_or_else(|| LatticeError::UnknownName {
                lattice: lat(),
                name: lo.clone(),
            })?;
            let b = *index.get(hi.as_str()).ok_or_else(|| LatticeError::UnknownName {
                lattice: lat(),
                name: hi.clone(),
            })?;
            if a == b {
                return Err(LatticeError::SelfCover { lattice: lat(), name: lo.clone() });
            }
            if covers.contains(&(a, b)) {
                return Err(LatticeError::RedundantCover {
                    lattice: lat(),
                    lower: lo.clone(),
                    upper: hi.clone(),
                });
            }
            covers.push((a, b));
        }

        // Topological order of the cover DAG; a leftover element means a cycle.
        let mut indeg = vec![0usize; n];
        for &(_, b) in &covers {
            indeg[b] += 1;
        }
        let mut queue: Vec<Elem> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        let mut qi = 0;
        while qi < queue.len() {
            let v = queue[qi];
            qi += 1;
            topo.push(v);
            for &(a, b) in &covers {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        queue.push(b);
                    }
                }
            }
        }
        if topo.len() != n {
            return Err(LatticeError::CyclicCovers { lattice: lat() });
        }

        // Downsets (reflexive-transitive closure), in topological order.
        let mut below = vec![0u64; n];
        for &v in &topo {
            below[v] |= 1 << v;
            for &(a, b) in &covers {
                if b == v {
                    below[v] |= below[a];
                }
            }
        }
        let mut above = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                if below[b] >> a & 1 == 1 {
                    above[a] |= 1 << b;
                }
            }
        }

        // A listed cover implied by a path through a third element is redundant.
        for &(a, b) in &covers {
            for c in 0..n {
                if c != a && c != b && below[c] >> a & 1 == 1 && below[b] >> c & 1 == 1 {
                    return Err(LatticeError::RedundantCover {
                        lattice: lat(),
                        lower: g.elements[a].clone(),
                        upper: g.elements[b].clone(),
                    });
                }
            }
        }

        // Meet = unique maximum of the common lower bounds; join dually.
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for a in 0..n {
            for b in a..n {
                let clb = below[a] & below[b];
                let m = (0..n)
                    .find(|&c| clb >> c & 1 == 1 && clb & !below[c] == 0)
                    .ok_or_else(|| LatticeError::NotALattice {
                        lattice: lat(),
                        a: g.elements[a].clone(),
                        b: g.elements[b].clone(),
                        join: false,
                    })?;
                meet[a * n + b] = m as u8;
                meet[b * n + a] = m as u8;
            }
        }
        for a in 0..n {
            for b in a..n {
                let cub = above[a] & above[b];
                let j = (0..n)
                    .find(|&c| cub >> c & 1 == 1 && cub & !above[c] == 0)
                    .ok_or_else(|| LatticeError::NotALattice {
                        lattice: lat(),
                        a: g.elements[a].clone(),
                        b: g.elements[b].clone(),
                        join: true,
                    })?;
                join[a * n + b] = j as u8;
                join[b * n + a] = j as u8;
            }
        }

        let mut bottom = 0;
        let mut top = 0;
        for v in 0..n {
            bottom = meet[bottom * n + v] as usize;
            top = join[top * n + v] as usize;
        }

        Ok(FiniteLattice {
            name: g.name.clone(),
            n,
            meet,
            join,
            below,
            bottom,
            top,
            names: g.elements.clone(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b] as Elem
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b] as Elem
    }

    /// `a <= b` iff `a /\ b = a`.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet[a * self.n + b] as Elem == a
    }

    pub fn element_name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn element_index(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Downset of `a` (including `a`) as a bitmask.
    pub fn downset(&self, a: Elem) -> u64 {
        self.below[a]
    }

    /// Covering pairs `(lower, upper)` of the order, recomputed on demand.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.leq(a, b) {
                    let between = (0..self.n)
                        .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                    if !between {
                        out.push((a, b));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Cover graph with this lattice's element order; inverse of
    /// [`FiniteLattice::from_cover_graph`] on valid inputs.
    pub fn to_cover_graph(&self) -> CoverGraph {
        CoverGraph {
            name: self.name.clone(),
            elements: self.names.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        }
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        self.covers()
            .into_iter()
            .filter(|&(a, _)| a == self.bottom)
            .map(|(_, b)| b)
            .collect()
    }

    /// Elements covered by top.
    pub fn coatoms(&self) -> Vec<Elem> {
        self.covers()
            .into_iter()
            .filter(|&(_, b)| b == self.top)
            .map(|(a, _)| a)
            .collect()
    }

    /// Order-theoretic dual: meet and join swapped, bottom and top swapped.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.n;
        let mut below = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                // b <= a in the dual iff a <= b here
                if self.leq(a, b) {
                    below[a] |= 1 << b;
                }
            }
        }
        FiniteLattice {
            name: format!("{}_dual", self.name),
            n,
            meet: self.join.clone(),
            join: self.meet.clone(),
            below,
            bottom: self.top,
            top: self.bottom,
            names: self.names.clone(),
        }
    }

    /// Height of each element: length of the longest chain up from bottom.
    pub fn heights(&self) -> Vec<usize> {
        let covers = self.covers();
        let mut h = vec![0usize; self.n];
        // elements sorted by downset size give a linear extension
        let mut order: Vec<Elem> = (0..self.n).collect();
        order.sort_by_key(|&v| self.below[v].count_ones());
        for &v in &order {
            for &(a, b) in &covers {
                if b == v {
                    h[v] = h[v].max(h[a] + 1);
                }
            }
        }
        h
    }

    /// Smallest subset containing `seed` and closed under meet and join,
    /// as a bitmask over elements.
    pub fn sublattice_closure(&self, seed: &[Elem]) -> u64 {
        let mut mask = 0u64;
        for &s in seed {
            mask |= 1 << s;
        }
        let mut frontier = mask;
        while frontier != 0 {
            let mut new = 0u64;
            let mut fa = frontier;
            while fa != 0 {
                let a = fa.trailing_zeros() as usize;
                fa &= fa - 1;
                let mut eb = mask;
                while eb != 0 {
                    let b = eb.trailing_zeros() as usize;
                    eb &= eb - 1;
                    new |= 1 << self.meet(a, b);
                    new |= 1 << self.join(a, b);
                }
            }
            frontier = new & !mask;
            mask |= new;
        }
        mask
    }

    /// True iff the closure of the triple under meet and join is the whole
    /// lattice. Repeated entries are allowed.
    pub fn is_generated_by(&self, t: [Elem; 3]) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        self.sublattice_closure(&t) == full
    }

    /// Restriction of this lattice to a meet-and-join-closed subset. The mask
    /// must be nonempty and closed (as produced by `sublattice_closure`).
    pub fn restrict(&self, mask: u64) -> FiniteLattice {
        let elems: Vec<Elem> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in elems.iter().enumerate() {
            back[v] = i;
        }
        let m = elems.len();
        let mut meet = vec![0u8; m * m];
        let mut join = vec![0u8; m * m];
        let mut below = vec![0u64; m];
        for i in 0..m {
            for j in 0..m {
                meet[i * m + j] = back[self.meet(elems[i], elems[j])] as u8;
                join[i * m + j] = back[self.join(elems[i], elems[j])] as u8;
                if self.leq(elems[i], elems[j]) {
                    below[j] |= 1 << i;
                }
            }
        }
        let mut bottom = 0;
        let mut top = 0;
        for v in 0..m {
            bottom = meet[bottom * m + v] as usize;
            top = join[top * m + v] as usize;
        }
        FiniteLattice {
            name: format!("{}_sub", self.name),
            n: m,
            meet,
            join,
            below,
            bottom,
            top,
            names: elems.iter().map(|&v| self.names[v].clone()).collect(),
        }
    }

    /// Builds a lattice directly from operation tables. Used by quotients and
    /// the enumeration machinery; trusts the caller, no axiom checks.
    pub(crate) fn from_tables(
        name: String,
        names: Vec<String>,
        meet: Vec<u8>,
        join: Vec<u8>,
    ) -> FiniteLattice {
        let n = names.len();
        let mut below = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                if meet[a * n + b] as usize == a {
                    below[b] |= 1 << a;
                }
            }
        }
        let mut bottom = 0;
        let mut top = 0;
        for v in 0..n {
            bottom = meet[bottom * n + v] as usize;
            top = join[top * n + v] as usize;
        }
        FiniteLattice { name, n, meet, join, below, bottom, top, names }
    }
}

/// One violated lattice axiom instance, reported by element name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    MeetIdempotent { a: Elem },
    JoinIdempotent { a: Elem },
    MeetCommutative { a: Elem, b: Elem },
    JoinCommutative { a: Elem, b: Elem },
    MeetAssociative { a: Elem, b: Elem, c: Elem },
    JoinAssociative { a: Elem, b: Elem, c: Elem },
    MeetAbsorption { a: Elem, b: Elem },
    JoinAbsorption { a: Elem, b: Elem },
    BottomIdentity { a: Elem },
    TopIdentity { a: Elem },
    OrderNotAntisymmetric { a: Elem, b: Elem },
}

/// Exhaustive check of the lattice axioms straight off the tables. This is the
/// independent oracle for `from_cover_graph`: it never looks at cover data.
pub fn validate_axioms(l: &FiniteLattice) -> Vec<AxiomViolation> {
    let n = l.len();
    let mut out = Vec::new();
    for a in 0..n {
        if l.meet(a, a) != a {
            out.push(AxiomViolation::MeetIdempotent { a });
        }
        if l.join(a, a) != a {
            out.push(AxiomViolation::JoinIdempotent { a });
        }
        if l.meet(l.bottom(), a) != l.bottom() {
            out.push(AxiomViolation::BottomIdentity { a });
        }
        if l.join(l.top(), a) != l.top() {
            out.push(AxiomViolation::TopIdentity { a });
        }
        for b in 0..n {
            if l.meet(a, b) != l.meet(b, a) {
                out.push(AxiomViolation::MeetCommutative { a, b });
            }
            if l.join(a, b) != l.join(b, a) {
                out.push(AxiomViolation::JoinCommutative { a, b });
            }
            if l.meet(a, l.join(a, b)) != a {
                out.push(AxiomViolation::MeetAbsorption { a, b });
            }
            if l.join(a, l.meet(a, b)) != a {
                out.push(AxiomViolation::JoinAbsorption { a, b });
            }
            if a != b && l.meet(a, b) == a && l.meet(b, a) == b {
                out.push(AxiomViolation::OrderNotAntisymmetric { a, b });
            }
            for c in 0..n {
                if l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c)) {
                    out.push(AxiomViolation::MeetAssociative { a, b, c });
                }
                if l.join(l.join(a, b), c) != l.join(a, l.join(b, c)) {
                    out.push(AxiomViolation::JoinAssociative { a, b, c });
                }
            }
        }
    }
    out
}

/// All order isomorphisms from `a` onto `b` (as index maps). An order
/// isomorphism of lattices preserves meet and join, so this is also the set
/// of lattice isomorphisms.
pub fn isomorphisms(a: &FiniteLattice, b: &FiniteLattice) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for_each_isomorphism(a, b, &mut |phi| {
        out.push(phi.to_vec());
        true
    });
    out
}

pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    let mut found = false;
    for_each_isomorphism(a, b, &mut |_| {
        found = true;
        false
    });
    found
}

/// Number of bijective self-maps preserving meet and join.
pub fn automorphism_count(l: &FiniteLattice) -> usize {
    isomorphisms(l, l).len()
}

/// Backtracking over order-preserving bijections; the callback returns false
/// to stop the search early.
fn for_each_isomorphism(
    a: &FiniteLattice,
    b: &FiniteLattice,
    f: &mut dyn FnMut(&[Elem]) -> bool,
) {
    let n = a.len();
    if n != b.len() {
        return;
    }
    // cheap per-element invariant: (downset size, upset size)
    let profile = |l: &FiniteLattice, v: Elem| {
        let down = l.downset(v).count_ones();
        let up = (0..l.len()).filter(|&w| l.leq(v, w)).count() as u32;
        (down, up)
    };
    let pa: Vec<_> = (0..n).map(|v| profile(a, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| profile(b, v)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return;
        }
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        a: &FiniteLattice,
        b: &FiniteLattice,
        pa: &[(u32, u32)],
        pb: &[(u32, u32)],
        phi: &mut Vec<Elem>,
        used: &mut Vec<bool>,
        v: Elem,
        f: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        let n = a.len();
        if v == n {
            return f(phi);
        }
        for w in 0..n {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            let ok = (0..v).all(|u| {
                a.leq(u, v) == b.leq(phi[u], w) && a.leq(v, u) == b.leq(w, phi[u])
            });
            if ok {
                phi[v] = w;
                used[w] = true;
                if !rec(a, b, pa, pb, phi, used, v + 1, f) {
                    return false;
                }
                used[w] = false;
                phi[v] = usize::MAX;
            }
        }
        true
    }
    rec(a, b, &pa, &pb, &mut phi, &mut used, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain2() -> FiniteLattice {
        FiniteLattice::from_cover_graph(&CoverGraph::new("C2", &["0", "1"], &[("0", "1")]))
            .unwrap()
    }

    pub(crate) fn m3() -> FiniteLattice {
        FiniteLattice::from_cover_graph(&CoverGraph::new(
            "M3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        ))
        .unwrap()
    }

    pub(crate) fn n5() -> FiniteLattice {
        FiniteLattice::from_cover_graph(&CoverGraph::new(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        ))
        .unwrap()
    }

    #[test]
    fn two_chain_tables() {
        let l = chain2();
        assert_eq!(l.len(), 2);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 1);
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
        assert!(l.leq(0, 1));
        assert!(!l.leq(1, 0));
        assert_eq!(l.atoms(), vec![1]);
        assert_eq!(l.coatoms(), vec![0]);
    }

    #[test]
    fn m3_distinct_atoms_meet_at_bottom() {
        let l = m3();
        let atoms = l.atoms();
        assert_eq!(atoms.len(), 3);
        for &p in &atoms {
            for &q in &atoms {
                if p != q {
                    assert_eq!(l.meet(p, q), l.bottom());
                    assert_eq!(l.join(p, q), l.top());
                    assert!(!l.leq(p, q));
                }
            }
        }
    }

    #[test]
    fn n5_atoms_and_coatoms() {
        let l = n5();
        assert_eq!(l.atoms().len(), 2);
        assert_eq!(l.coatoms().len(), 2);
        let a = l.element_index("a").unwrap();
        let b = l.element_index("b").unwrap();
        let c = l.element_index("c").unwrap();
        assert!(l.leq(a, b));
        assert_eq!(l.meet(b, c), l.bottom());
        assert_eq!(l.join(a, c), l.top());
    }

    #[test]
    fn classic_non_lattice_rejected() {
        // 0 < a,b; a,b < c,d; c,d < 1: the pair (c,d) has two maximal common
        // lower bounds a and b.
        let g = CoverGraph::new(
            "NL",
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        );
        match FiniteLattice::from_cover_graph(&g) {
            Err(LatticeError::NotALattice { a, b, .. }) => {
                assert_eq!((a.as_str(), b.as_str()), ("c", "d"));
            }
            other => panic!("expected NotALattice, got {other:?}"),
        }
    }

    #[test]
    fn cyclic_covers_rejected() {
        let g = CoverGraph::new("cyc", &["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(
            FiniteLattice::from_cover_graph(&g),
            Err(LatticeError::CyclicCovers { lattice: "cyc".into() })
        );
    }

    #[test]
    fn unknown_and_redundant_covers_rejected() {
        let g = CoverGraph::new("bad", &["0", "1"], &[("0", "x")]);
        assert!(matches!(
            FiniteLattice::from_cover_graph(&g),
            Err(LatticeError::UnknownName { .. })
        ));
        let g = CoverGraph::new(
            "red",
            &["0", "a", "1"],
            &[("0", "a"), ("a", "1"), ("0", "1")],
        );
        assert!(matches!(
            FiniteLattice::from_cover_graph(&g),
            Err(LatticeError::RedundantCover { .. })
        ));
    }

    #[test]
    fn cover_graph_round_trip() {
        for l in [chain2(), m3(), n5()] {
            let g = l.to_cover_graph();
            let l2 = FiniteLattice::from_cover_graph(&g).unwrap();
            assert_eq!(g, l2.to_cover_graph());
        }
    }

    #[test]
    fn axioms_hold_on_constructed_lattices() {
        for l in [chain2(), m3(), n5()] {
            assert!(validate_axioms(&l).is_empty());
        }
    }

    #[test]
    fn axiom_oracle_catches_injected_fault() {
        let mut l = m3();
        // break commutativity of meet at the (a, b) cell
        let n = l.n;
        l.meet[n + 2] = 4;
        let report = validate_axioms(&l);
        assert!(report
            .iter()
            .any(|v| matches!(v, AxiomViolation::MeetCommutative { .. })));
    }

    #[test]
    fn dual_swaps_atoms_and_coatoms() {
        for l in [chain2(), m3(), n5()] {
            let d = l.dual();
            assert!(validate_axioms(&d).is_empty());
            let mut atoms_d: Vec<_> = d.atoms();
            let mut coatoms: Vec<_> = l.coatoms();
            atoms_d.sort_unstable();
            coatoms.sort_unstable();
            assert_eq!(atoms_d, coatoms);
            assert!(are_isomorphic(&d.dual(), &l));
        }
        assert!(are_isomorphic(&m3().dual(), &m3()));
    }

    #[test]
    fn meets_are_maxima_of_common_lower_bounds() {
        for l in [m3(), n5()] {
            let n = l.len();
            for a in 0..n {
                for b in 0..n {
                    let m = l.meet(a, b);
                    assert!(l.leq(m, a) && l.leq(m, b));
                    for c in 0..n {
                        if l.leq(c, a) && l.leq(c, b) {
                            assert!(l.leq(c, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generation() {
        let l = m3();
        let a = l.element_index("a").unwrap();
        let b = l.element_index("b").unwrap();
        let c = l.element_index("c").unwrap();
        assert!(l.is_generated_by([a, b, c]));
        assert!(!l.is_generated_by([0, 0, 0]));
        let n = n5();
        assert!(n.is_generated_by([
            n.element_index("a").unwrap(),
            n.element_index("b").unwrap(),
            n.element_index("c").unwrap()
        ]));
        assert!(!n.is_generated_by([
            n.element_index("a").unwrap(),
            n.element_index("c").unwrap(),
            n.element_index("c").unwrap()
        ]));
    }

    #[test]
    fn automorphism_counts_of_small_lattices() {
        assert_eq!(automorphism_count(&chain2()), 1);
        assert_eq!(automorphism_count(&m3()), 6);
        assert_eq!(automorphism_count(&n5()), 1);
    }
}
