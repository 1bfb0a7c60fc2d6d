//! Congruences of finite lattices: principal congruences by iterated closure,
//! the full congruence lattice as joins of principals, monoliths and subdirect
//! irreducibility, the separating properties, the meet/join conditions on
//! generating triples, and surjective homomorphism enumeration via quotients.
//!
//! Everything here is sized for catalog-scale lattices (`n <= 16`); operations
//! that enumerate congruences or triples refuse larger inputs.

use crate::lattice::{are_isomorphic, isomorphisms, Elem, FiniteLattice};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Scale bound for congruence enumeration.
pub const CON_MAX_ELEMS: usize = 16;

/// A meet-and-join-compatible partition of a lattice's elements, normalized so
/// block ids appear in order of first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block: Vec<u8>,
    nblocks: usize,
}

impl Congruence {
    fn normalize(raw: &[usize]) -> Congruence {
        let mut map = HashMap::new();
        let mut block = Vec::with_capacity(raw.len());
        for &r in raw {
            let next = map.len() as u8;
            block.push(*map.entry(r).or_insert(next));
        }
        Congruence { block, nblocks: map.len() }
    }

    /// The zero congruence (all singletons).
    pub fn zero(n: usize) -> Congruence {
        Congruence { block: (0..n as u8).collect(), nblocks: n }
    }

    /// The full congruence (one block).
    pub fn full(n: usize) -> Congruence {
        Congruence { block: vec![0; n], nblocks: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.nblocks == self.block.len()
    }

    pub fn is_full(&self) -> bool {
        self.nblocks == 1
    }

    pub fn block_count(&self) -> usize {
        self.nblocks
    }

    pub fn block_of(&self, a: Elem) -> usize {
        self.block[a] as usize
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn block_size(&self, id: usize) -> usize {
        self.block.iter().filter(|&&b| b as usize == id).count()
    }

    /// Blocks as sorted element lists, in block-id order.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.nblocks];
        for (e, &b) in self.block.iter().enumerate() {
            out[b as usize].push(e);
        }
        out
    }

    /// Refinement order: self <= other iff every block of self lies inside a
    /// block of other.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut seen: Vec<Option<u8>> = vec![None; self.nblocks];
        for e in 0..self.block.len() {
            let s = self.block[e] as usize;
            match seen[s] {
                None => seen[s] = Some(other.block[e]),
                Some(o) => {
                    if o != other.block[e] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Singleton block at the lattice's bottom element.
    pub fn is_zero_separating(&self, l: &FiniteLattice) -> bool {
        self.block_size(self.block_of(l.bottom())) == 1
    }

    /// Singleton block at the lattice's top element.
    pub fn is_one_separating(&self, l: &FiniteLattice) -> bool {
        self.block_size(self.block_of(l.top())) == 1
    }

    /// Exhaustive compatibility check: a = a', b = b' imply a/\b = a'/\b' and
    /// a\/b = a'\/b'. Used by tests as an independent oracle.
    pub fn is_compatible(&self, l: &FiniteLattice) -> bool {
        let n = l.len();
        for a in 0..n {
            for a2 in 0..n {
                if !self.related(a, a2) {
                    continue;
                }
                for b in 0..n {
                    if !self.related(l.meet(a, b), l.meet(a2, b))
                        || !self.related(l.join(a, b), l.join(a2, b))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConError {
    TooLarge { lattice: String, n: usize },
    NotSubdirectlyIrreducible { lattice: String },
}

impl fmt::Display for ConError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConError::TooLarge { lattice, n } => write!(
                f,
                "lattice {lattice}: {n} elements is past the congruence-enumeration bound {CON_MAX_ELEMS}"
            ),
            ConError::NotSubdirectlyIrreducible { lattice } => {
                write!(f, "lattice {lattice} is not subdirectly irreducible")
            }
        }
    }
}

impl std::error::Error for ConError {}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = a;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            false
        } else {
            self.parent[rb] = ra;
            true
        }
    }
}

/// Smallest congruence collapsing `a` and `b`: union-find refined by a work
/// queue of merges forced by compatibility with meet and join.
pub fn principal_congruence(l: &FiniteLattice, a: Elem, b: Elem) -> Congruence {
    generated_congruence(l, &[(a, b)])
}

/// Smallest congruence containing all the given pairs.
pub fn generated_congruence(l: &FiniteLattice, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(Elem, Elem)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for w in 0..n {
            for (x, y) in [(l.meet(a, w), l.meet(b, w)), (l.join(a, w), l.join(b, w))] {
                if uf.union(x, y) {
                    queue.push((x, y));
                }
            }
        }
    }
    let raw: Vec<usize> = (0..n).map(|e| uf.find(e)).collect();
    Congruence::normalize(&raw)
}

/// Join of two congruences: the partition generated by both (transitive
/// closure of the union; compatibility is preserved).
pub fn join_congruences(a: &Congruence, b: &Congruence) -> Congruence {
    let n = a.block.len();
    let mut uf = UnionFind::new(n);
    let mut first_a: HashMap<u8, usize> = HashMap::new();
    let mut first_b: HashMap<u8, usize> = HashMap::new();
    for e in 0..n {
        if let Some(&f) = first_a.get(&a.block[e]) {
            uf.union(f, e);
        } else {
            first_a.insert(a.block[e], e);
        }
        if let Some(&f) = first_b.get(&b.block[e]) {
            uf.union(f, e);
        } else {
            first_b.insert(b.block[e], e);
        }
    }
    let raw: Vec<usize> = (0..n).map(|e| uf.find(e)).collect();
    Congruence::normalize(&raw)
}

/// All distinct principal congruences theta(a,b) for a < b, zero excluded.
pub fn principal_congruences(l: &FiniteLattice) -> Vec<Congruence> {
    let n = l.len();
    let mut set = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(l, a, b);
            if !c.is_zero() {
                set.insert(c);
            }
        }
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort();
    out
}

/// Every congruence of `l`, obtained by closing the principal congruences
/// under join. Includes zero and (for nontrivial lattices) full.
pub fn congruence_lattice(l: &FiniteLattice) -> Result<Vec<Congruence>, ConError> {
    let n = l.len();
    if n > CON_MAX_ELEMS {
        return Err(ConError::TooLarge { lattice: l.name().to_string(), n });
    }
    let principals = principal_congruences(l);
    let mut all: HashSet<Congruence> = HashSet::new();
    all.insert(Congruence::zero(n));
    let mut frontier: Vec<Congruence> = principals.clone();
    for c in &frontier {
        all.insert(c.clone());
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = join_congruences(c, p);
                if !all.contains(&j) {
                    all.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<_> = all.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The unique minimal nonzero congruence, if it exists.
pub fn monolith(l: &FiniteLattice) -> Result<Congruence, ConError> {
    if l.len() > CON_MAX_ELEMS {
        return Err(ConError::TooLarge { lattice: l.name().to_string(), n: l.len() });
    }
    // every nonzero congruence contains a nonzero principal one, so the
    // minimal nonzero congruences all appear among the principals
    let principals = principal_congruences(l);
    let minimal: Vec<&Congruence> = principals
        .iter()
        .filter(|c| !principals.iter().any(|d| d != *c && d.refines(c)))
        .collect();
    if minimal.len() == 1 {
        Ok(minimal[0].clone())
    } else {
        Err(ConError::NotSubdirectlyIrreducible { lattice: l.name().to_string() })
    }
}

pub fn is_subdirectly_irreducible(l: &FiniteLattice) -> bool {
    monolith(l).is_ok()
}

/// Quotient lattice l/theta. Block ids become elements; names are the blocks'
/// member names joined with `+`.
pub fn quotient(l: &FiniteLattice, theta: &Congruence) -> FiniteLattice {
    let n = l.len();
    let m = theta.block_count();
    let mut rep = vec![usize::MAX; m];
    for e in 0..n {
        let b = theta.block_of(e);
        if rep[b] == usize::MAX {
            rep[b] = e;
        }
    }
    let mut meet = vec![0u8; m * m];
    let mut join = vec![0u8; m * m];
    for i in 0..m {
        for j in 0..m {
            meet[i * m + j] = theta.block_of(l.meet(rep[i], rep[j])) as u8;
            join[i * m + j] = theta.block_of(l.join(rep[i], rep[j])) as u8;
        }
    }
    let names = theta
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&e| l.element_name(e).to_string())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    FiniteLattice::from_tables(format!("{}_q", l.name()), names, meet, join)
}

/// Outcome of the meet/join condition check: whether every generating triple
/// has at least two index pairs with nonzero meet (dually, non-top join), and
/// a failing triple when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    pub witness: Option<[Elem; 3]>,
}

/// Meet condition: every generating triple (u1,u2,u3) has at least two pairs
/// (i,j) with ui /\ uj != bottom.
pub fn meet_condition(l: &FiniteLattice) -> ConditionReport {
    let n = l.len();
    let bottom = l.bottom();
    let mut gen_cache: HashMap<u64, bool> = HashMap::new();
    for u1 in 0..n {
        for u2 in 0..n {
            for u3 in 0..n {
                let mask = (1u64 << u1) | (1 << u2) | (1 << u3);
                let generates = *gen_cache
                    .entry(mask)
                    .or_insert_with(|| l.is_generated_by([u1, u2, u3]));
                if !generates {
                    continue;
                }
                let nonzero = [(u1, u2), (u1, u3), (u2, u3)]
                    .iter()
                    .filter(|&&(a, b)| l.meet(a, b) != bottom)
                    .count();
                if nonzero < 2 {
                    return ConditionReport { holds: false, witness: Some([u1, u2, u3]) };
                }
            }
        }
    }
    ConditionReport { holds: true, witness: None }
}

/// Join condition = meet condition of the dual.
pub fn join_condition(l: &FiniteLattice) -> ConditionReport {
    meet_condition(&l.dual())
}

/// Every surjective meet-and-join-preserving map src -> dst, as index maps,
/// enumerated via congruences of src whose quotient is isomorphic to dst.
/// Deterministic order. Includes the bijective ones when |src| = |dst|.
pub fn surjective_homomorphisms(
    src: &FiniteLattice,
    dst: &FiniteLattice,
) -> Result<Vec<Vec<Elem>>, ConError> {
    let mut out = Vec::new();
    for theta in congruence_lattice(src)? {
        if theta.block_count() != dst.len() {
            continue;
        }
        let q = quotient(src, &theta);
        for phi in isomorphisms(&q, dst) {
            let map: Vec<Elem> = (0..src.len()).map(|e| phi[theta.block_of(e)]).collect();
            out.push(map);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All generating triples of `l` up to the diagonal action of Aut(l): one
/// lexicographically least representative per orbit, sorted.
pub fn generating_triples_up_to_aut(l: &FiniteLattice) -> Vec<[Elem; 3]> {
    let auts = isomorphisms(l, l);
    let n = l.len();
    let mut reps: Vec<[Elem; 3]> = Vec::new();
    let mut seen: HashSet<[Elem; 3]> = HashSet::new();
    for u1 in 0..n {
        for u2 in 0..n {
            for u3 in 0..n {
                let t = [u1, u2, u3];
                if seen.contains(&t) || !l.is_generated_by(t) {
                    continue;
                }
                reps.push(t);
                for phi in &auts {
                    seen.insert([phi[u1], phi[u2], phi[u3]]);
                }
            }
        }
    }
    reps
}

/// True iff `k` belongs to the variety whose subdirectly irreducible members
/// are exactly `allowed_si` (up to isomorphism): every subdirectly irreducible
/// quotient of `k` must be isomorphic to one of them.
pub fn in_variety_with_si(k: &FiniteLattice, allowed_si: &[&FiniteLattice]) -> Result<bool, ConError> {
    if k.len() == 1 {
        return Ok(true);
    }
    let con = congruence_lattice(k)?;
    // meet-irreducible congruences have SI quotients; k is their subdirect product
    for theta in &con {
        let mut covers = 0;
        for other in &con {
            if other != theta && theta.refines(other) {
                // count upper covers of theta in Con(k)
                let is_cover = !con
                    .iter()
                    .any(|mid| mid != theta && mid != other && theta.refines(mid) && mid.refines(other));
                if is_cover {
                    covers += 1;
                }
            }
        }
        if covers != 1 {
            continue;
        }
        let q = quotient(k, theta);
        if !allowed_si.iter().any(|s| are_isomorphic(&q, s)) {
            return Ok(false);
        }
    }
    Ok(true)
}
