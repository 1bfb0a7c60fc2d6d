//! Sublattices of direct products generated by a triple (x, y, z).
//!
//! Product elements are coordinate vectors packed into a `u128`, factor 0 in
//! the most significant position, so the numeric order on the packed form is
//! the lexicographic order on tuples. The closure runs a frontier loop: each
//! round combines only the newly added elements against everything known,
//! with hash-set membership tests; the finished store is sorted.

use crate::lattice::{Elem, FiniteLattice};
use std::fmt;
use std::sync::Arc;

/// Default element budget for one closure; configurable per run and via the
/// CLI. Runaway products fail fast against this instead of thrashing.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// One direct-product factor: a lattice and the coordinates the three
/// generators take in it.
#[derive(Debug, Clone)]
pub struct FactorAssignment {
    pub lattice: Arc<FiniteLattice>,
    pub triple: [Elem; 3],
}

/// An ordered list of factors; the order fixes coordinate positions.
#[derive(Debug, Clone)]
pub struct FactorSystem {
    pub factors: Vec<FactorAssignment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductError {
    NoFactors,
    ElementOutOfRange { factor: usize, element: Elem },
    TooManyFactors { count: usize },
    /// The closure grew past the configured element budget.
    CapacityExceeded { budget: usize },
    NotGenerating { factor: usize },
}

impl fmt::Display for ProductError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductError::NoFactors => write!(f, "a factor system needs at least one factor"),
            ProductError::ElementOutOfRange { factor, element } => {
                write!(f, "factor {factor}: generator coordinate {element} out of range")
            }
            ProductError::TooManyFactors { count } => {
                write!(f, "{count} factors do not fit the packed element representation")
            }
            ProductError::CapacityExceeded { budget } => {
                write!(f, "closure exceeded the element budget of {budget}")
            }
            ProductError::NotGenerating { factor } => {
                write!(f, "factor {factor}: assignment triple does not generate the factor")
            }
        }
    }
}

impl std::error::Error for ProductError {}

impl FactorSystem {
    pub fn new(factors: Vec<FactorAssignment>) -> Result<FactorSystem, ProductError> {
        if factors.is_empty() {
            return Err(ProductError::NoFactors);
        }
        for (i, fa) in factors.iter().enumerate() {
            for &e in &fa.triple {
                if e >= fa.lattice.len() {
                    return Err(ProductError::ElementOutOfRange { factor: i, element: e });
                }
            }
        }
        Ok(FactorSystem { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Verifies each factor's triple generates its lattice (the subdirect
    /// product reading of the system). Not required by `closure`.
    pub fn check_generating(&self) -> Result<(), ProductError> {
        for (i, fa) in self.factors.iter().enumerate() {
            if !fa.lattice.is_generated_by(fa.triple) {
                return Err(ProductError::NotGenerating { factor: i });
            }
        }
        Ok(())
    }

    /// Number of elements of the full direct product, if it fits a u128.
    pub fn full_product_size(&self) -> Option<u128> {
        let mut size: u128 = 1;
        for fa in &self.factors {
            size = size.checked_mul(fa.lattice.len() as u128)?;
        }
        Some(size)
    }
}

/// Packing layout plus flattened operation tables for the closure hot path.
struct Layout {
    k: usize,
    width: u32,
    shifts: Vec<u32>,
    sizes: Vec<usize>,
    /// per factor: meet table, index (a << width | b) for width 4, a*n+b for 8
    meets: Vec<Vec<u8>>,
    joins: Vec<Vec<u8>>,
    heights: Vec<Vec<u32>>,
}

impl Layout {
    fn new(fs: &FactorSystem) -> Result<Layout, ProductError> {
        let k = fs.len();
        let max_n = fs.factors.iter().map(|f| f.lattice.len()).max().unwrap_or(2);
        let width: u32 = if max_n <= 16 { 4 } else { 8 };
        if k as u32 * width > 128 {
            return Err(ProductError::TooManyFactors { count: k });
        }
        let shifts: Vec<u32> = (0..k).map(|i| ((k - 1 - i) as u32) * width).collect();
        let mut meets = Vec::with_capacity(k);
        let mut joins = Vec::with_capacity(k);
        let mut sizes = Vec::with_capacity(k);
        let mut heights = Vec::with_capacity(k);
        for fa in &fs.factors {
            let l = &fa.lattice;
            let n = l.len();
            sizes.push(n);
            let stride = if width == 4 { 16 } else { n };
            let mut mt = vec![0u8; stride * n.max(1)];
            let mut jt = vec![0u8; stride * n.max(1)];
            for a in 0..n {
                for b in 0..n {
                    mt[a * stride + b] = l.meet(a, b) as u8;
                    jt[a * stride + b] = l.join(a, b) as u8;
                }
            }
            meets.push(mt);
            joins.push(jt);
            heights.push(l.heights().iter().map(|&h| h as u32).collect());
        }
        Ok(Layout { k, width, shifts, sizes, meets, joins, heights })
    }

    fn pack(&self, coords: &[Elem]) -> u128 {
        let mut out = 0u128;
        for (i, &c) in coords.iter().enumerate() {
            out |= (c as u128) << self.shifts[i];
        }
        out
    }

    fn coord(&self, u: u128, i: usize) -> Elem {
        ((u >> self.shifts[i]) as usize) & ((1usize << self.width) - 1)
    }

    #[inline]
    fn meet(&self, u: u128, v: u128) -> u128 {
        let mask = (1u128 << self.width) - 1;
        let stride_shift = self.width;
        let mut out = 0u128;
        for i in 0..self.k {
            let s = self.shifts[i];
            let a = ((u >> s) & mask) as usize;
            let b = ((v >> s) & mask) as usize;
            let m = if self.width == 4 {
                self.meets[i][(a << stride_shift) | b]
            } else {
                self.meets[i][a * self.sizes[i] + b]
            };
            out |= (m as u128) << s;
        }
        out
    }

    #[inline]
    fn join(&self, u: u128, v: u128) -> u128 {
        let mask = (1u128 << self.width) - 1;
        let stride_shift = self.width;
        let mut out = 0u128;
        for i in 0..self.k {
            let s = self.shifts[i];
            let a = ((u >> s) & mask) as usize;
            let b = ((v >> s) & mask) as usize;
            let j = if self.width == 4 {
                self.joins[i][(a << stride_shift) | b]
            } else {
                self.joins[i][a * self.sizes[i] + b]
            };
            out |= (j as u128) << s;
        }
        out
    }

    /// Componentwise order via the meet tables.
    #[inline]
    fn leq(&self, u: u128, v: u128) -> bool {
        self.meet(u, v) == u
    }

    /// Sum of coordinate heights; strictly monotone along the product order.
    fn height_sum(&self, u: u128) -> u32 {
        let mut h = 0;
        for i in 0..self.k {
            h += self.heights[i][self.coord(u, i)];
        }
        h
    }
}

/// The sublattice of the direct product generated by the three assignment
/// tuples, with the factor layout kept for order queries on its elements.
pub struct GeneratedLattice {
    layout: Layout,
    factors: Vec<FactorAssignment>,
    /// sorted; the numeric order is the lexicographic order on tuples
    elements: Vec<u128>,
    generators: [u128; 3],
    bottom: u128,
    top: u128,
}

/// Packed word the closure kernel runs on: u64 when all coordinates fit in
/// 64 bits, u128 otherwise. The arithmetic is hot enough that narrowing to
/// u64 roughly halves the closure time.
trait Word: Copy + Eq + Ord {
    const ZERO: Self;
    fn from_u128(x: u128) -> Self;
    fn to_u128(self) -> u128;
    fn nib(self, shift: u32) -> usize;
    fn or_nib(self, v: u8, shift: u32) -> Self;
    fn mix(self) -> u64;
}

impl Word for u64 {
    const ZERO: Self = 0;
    fn from_u128(x: u128) -> Self {
        x as u64
    }
    fn to_u128(self) -> u128 {
        self as u128
    }
    #[inline(always)]
    fn nib(self, shift: u32) -> usize {
        (self >> shift) as usize & 0xF
    }
    #[inline(always)]
    fn or_nib(self, v: u8, shift: u32) -> Self {
        self | (v as u64) << shift
    }
    #[inline(always)]
    fn mix(self) -> u64 {
        let mut h = self.wrapping_mul(0x9FB2_1C65_1E98_DF25);
        h ^= h >> 29;
        h
    }
}

impl Word for u128 {
    const ZERO: Self = 0;
    fn from_u128(x: u128) -> Self {
        x
    }
    fn to_u128(self) -> u128 {
        self
    }
    #[inline(always)]
    fn nib(self, shift: u32) -> usize {
        (self >> shift) as usize & 0xF
    }
    #[inline(always)]
    fn or_nib(self, v: u8, shift: u32) -> Self {
        self | (v as u128) << shift
    }
    #[inline(always)]
    fn mix(self) -> u64 {
        let mut h = (self as u64) ^ ((self >> 64) as u64).wrapping_mul(0xA24B_AED4_963E_E407);
        h = h.wrapping_mul(0x9FB2_1C65_1E98_DF25);
        h ^= h >> 29;
        h
    }
}

/// Generic open-addressing set over packed words.
struct WordSet<W> {
    slots: Vec<W>,
    occ: Vec<u64>,
    len: usize,
    mask: usize,
}

impl<W: Word> WordSet<W> {
    fn with_capacity(cap: usize) -> WordSet<W> {
        let size = (cap * 2).next_power_of_two().max(64);
        WordSet { slots: vec![W::ZERO; size], occ: vec![0; size / 64], len: 0, mask: size - 1 }
    }

    #[inline(always)]
    fn insert(&mut self, x: W) -> bool {
        if (self.len + 1) * 2 > self.slots.len() {
            self.grow();
        }
        let mut i = (x.mix() as usize) & self.mask;
        loop {
            if self.occ[i >> 6] >> (i & 63) & 1 == 0 {
                self.slots[i] = x;
                self.occ[i >> 6] |= 1 << (i & 63);
                self.len += 1;
                return true;
            }
            if self.slots[i] == x {
                return false;
            }
            i = (i + 1) & self.mask;
        }
    }

    fn grow(&mut self) {
        let old_slots = std::mem::take(&mut self.slots);
        let old_occ = std::mem::take(&mut self.occ);
        let size = old_slots.len() * 2;
        self.slots = vec![W::ZERO; size];
        self.occ = vec![0; size / 64];
        self.mask = size - 1;
        self.len = 0;
        for (i, &x) in old_slots.iter().enumerate() {
            if old_occ[i >> 6] >> (i & 63) & 1 == 1 {
                self.insert(x);
            }
        }
    }
}

/// Nibble-width frontier kernel. Per frontier element the row bases of its
/// coordinates are fixed, so the inner loop does one table read per factor
/// for the meet and one for the join.
fn closure_nibble<W: Word>(
    layout: &Layout,
    gens: [u128; 3],
    budget: usize,
) -> Result<Vec<u128>, ProductError> {
    let k = layout.k;
    // flat interleaved tables: factor i meet row at i*512 + a*16, join +256
    let mut tables = vec![0u8; k * 512];
    for i in 0..k {
        for a in 0..layout.sizes[i] {
            for b in 0..layout.sizes[i] {
                tables[i * 512 + a * 16 + b] = layout.meets[i][(a << 4) | b];
                tables[i * 512 + 256 + a * 16 + b] = layout.joins[i][(a << 4) | b];
            }
        }
    }
    let shifts = &layout.shifts;
    let mut all: Vec<W> = Vec::new();
    let mut seen: WordSet<W> = WordSet::with_capacity(1024);
    for g in gens {
        let w = W::from_u128(g);
        if seen.insert(w) {
            all.push(w);
        }
    }
    let mut rows = vec![0usize; k];
    let mut start = 0;
    while start < all.len() {
        let end = all.len();
        for fi in start..end {
            let f = all[fi];
            for i in 0..k {
                rows[i] = i * 512 + (f.nib(shifts[i]) << 4);
            }
            for ei in 0..end {
                let e = all[ei];
                let mut m = W::ZERO;
                let mut j = W::ZERO;
                for i in 0..k {
                    let b = e.nib(shifts[i]);
                    let row = rows[i] + b;
                    // in bounds: row < k*512 - 256 and row+256 < k*512
                    let (mv, jv) = unsafe {
                        (*tables.get_unchecked(row), *tables.get_unchecked(row + 256))
                    };
                    m = m.or_nib(mv, shifts[i]);
                    j = j.or_nib(jv, shifts[i]);
                }
                if seen.insert(m) {
                    all.push(m);
                }
                if seen.insert(j) {
                    all.push(j);
                }
            }
            if all.len() > budget {
                return Err(ProductError::CapacityExceeded { budget });
            }
        }
        start = end;
    }
    let mut out: Vec<u128> = all.into_iter().map(|w| w.to_u128()).collect();
    out.sort_unstable();
    Ok(out)
}

/// Byte-width fallback for factors with more than 16 elements.
fn closure_bytes(
    layout: &Layout,
    gens: [u128; 3],
    budget: usize,
) -> Result<Vec<u128>, ProductError> {
    let mut all: Vec<u128> = Vec::new();
    let mut seen: WordSet<u128> = WordSet::with_capacity(1024);
    for g in gens {
        if seen.insert(g) {
            all.push(g);
        }
    }
    let mut start = 0;
    while start < all.len() {
        let end = all.len();
        for fi in start..end {
            let f = all[fi];
            for ei in 0..end {
                let e = all[ei];
                let m = layout.meet(f, e);
                if seen.insert(m) {
                    all.push(m);
                }
                let j = layout.join(f, e);
                if seen.insert(j) {
                    all.push(j);
                }
            }
            if all.len() > budget {
                return Err(ProductError::CapacityExceeded { budget });
            }
        }
        start = end;
    }
    all.sort_unstable();
    Ok(all)
}

/// Computes the closure of the generator triple under componentwise meet and
/// join. Each round combines frontier elements against the whole current set.
pub fn closure(fs: &FactorSystem, budget: usize) -> Result<GeneratedLattice, ProductError> {
    let layout = Layout::new(fs)?;
    let k = fs.len();
    let gens: [u128; 3] = {
        let mut g = [0u128; 3];
        for (gi, out) in g.iter_mut().enumerate() {
            let coords: Vec<Elem> = (0..k).map(|i| fs.factors[i].triple[gi]).collect();
            *out = layout.pack(&coords);
        }
        g
    };

    let all = if layout.width == 4 {
        if k * 4 <= 64 {
            closure_nibble::<u64>(&layout, gens, budget)?
        } else {
            closure_nibble::<u128>(&layout, gens, budget)?
        }
    } else {
        closure_bytes(&layout, gens, budget)?
    };

    let mut bottom = all[0];
    let mut top = all[0];
    for &e in &all[1..] {
        bottom = layout.meet(bottom, e);
        top = layout.join(top, e);
    }
    Ok(GeneratedLattice {
        layout,
        factors: fs.factors.clone(),
        elements: all,
        generators: gens,
        bottom,
        top,
    })
}

impl GeneratedLattice {
    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    /// Elements in lexicographic order of their coordinate tuples.
    pub fn elements(&self) -> &[u128] {
        &self.elements
    }

    pub fn generators(&self) -> [u128; 3] {
        self.generators
    }

    pub fn bottom(&self) -> u128 {
        self.bottom
    }

    pub fn top(&self) -> u128 {
        self.top
    }

    pub fn factor_count(&self) -> usize {
        self.layout.k
    }

    pub fn contains(&self, u: u128) -> bool {
        self.elements.binary_search(&u).is_ok()
    }

    pub fn leq(&self, u: u128, v: u128) -> bool {
        self.layout.leq(u, v)
    }

    pub fn meet(&self, u: u128, v: u128) -> u128 {
        self.layout.meet(u, v)
    }

    pub fn join(&self, u: u128, v: u128) -> u128 {
        self.layout.join(u, v)
    }

    pub fn coords(&self, u: u128) -> Vec<Elem> {
        (0..self.layout.k).map(|i| self.layout.coord(u, i)).collect()
    }

    /// Tuple rendered with the factors' element names: concatenated when all
    /// names are single characters (`0aa`), comma-separated otherwise.
    pub fn format_element(&self, u: u128) -> String {
        let names: Vec<&str> = (0..self.layout.k)
            .map(|i| self.factors[i].lattice.element_name(self.layout.coord(u, i)))
            .collect();
        if names.iter().all(|s| s.chars().count() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }

    /// Minimal elements of the set minus bottom under the componentwise
    /// order, in lexicographic order.
    pub fn atoms(&self) -> Vec<u128> {
        self.extremal(false)
    }

    /// Maximal elements of the set minus top, in lexicographic order.
    pub fn coatoms(&self) -> Vec<u128> {
        self.extremal(true)
    }

    pub fn count_atoms(&self) -> usize {
        self.atoms().len()
    }

    pub fn count_coatoms(&self) -> usize {
        self.coatoms().len()
    }

    fn extremal(&self, dualize: bool) -> Vec<u128> {
        let bound = if dualize { self.top } else { self.bottom };
        // scan in an order refining the product order, so every non-extremal
        // element sees a previously found witness below (above) it
        let mut order: Vec<u32> = (0..self.elements.len() as u32).collect();
        let hs: Vec<u32> = self
            .elements
            .iter()
            .map(|&e| self.layout.height_sum(e))
            .collect();
        order.sort_unstable_by_key(|&i| hs[i as usize]);
        let mut found: Vec<u128> = Vec::new();
        let mut scan = |u: u128| {
            if u == bound {
                return;
            }
            let dominated = if dualize {
                found.iter().any(|&a| self.layout.leq(u, a))
            } else {
                found.iter().any(|&a| self.layout.leq(a, u))
            };
            if !dominated {
                found.push(u);
            }
        };
        if dualize {
            for &i in order.iter().rev() {
                scan(self.elements[i as usize]);
            }
        } else {
            for &i in order.iter() {
                scan(self.elements[i as usize]);
            }
        }
        found.sort_unstable();
        found
    }

    /// Image of the coordinate projection onto factor `i`.
    pub fn projection_image(&self, i: usize) -> Vec<bool> {
        let mut seen = vec![false; self.factors[i].lattice.len()];
        for &e in &self.elements {
            seen[self.layout.coord(e, i)] = true;
        }
        seen
    }

    pub fn projection_surjective(&self, i: usize) -> bool {
        self.projection_image(i).iter().all(|&b| b)
    }

    /// Covering pairs of the generated lattice, for small dumps.
    pub fn cover_pairs(&self) -> Vec<(u128, u128)> {
        let n = self.elements.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let (u, v) = (self.elements[a], self.elements[b]);
                if self.layout.leq(u, v) && u != v {
                    let between = self.elements.iter().any(|&w| {
                        w != u && w != v && self.layout.leq(u, w) && self.layout.leq(w, v)
                    });
                    if !between {
                        out.push((u, v));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoverGraph;

    fn arc(name: &str, elems: &[&str], covers: &[(&str, &str)]) -> Arc<FiniteLattice> {
        Arc::new(
            FiniteLattice::from_cover_graph(&CoverGraph::new(name, elems, covers)).unwrap(),
        )
    }

    fn c2() -> Arc<FiniteLattice> {
        arc("C2", &["0", "1"], &[("0", "1")])
    }

    fn l4() -> Arc<FiniteLattice> {
        arc(
            "L4",
            &["0", "a", "b", "c", "d", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "d"), ("b", "d"), ("d", "1"), ("c", "1")],
        )
    }

    fn system(factors: Vec<(Arc<FiniteLattice>, [&str; 3])>) -> FactorSystem {
        FactorSystem::new(
            factors
                .into_iter()
                .map(|(l, t)| {
                    let triple =
                        [0, 1, 2].map(|i| l.element_index(t[i]).expect("element name"));
                    FactorAssignment { lattice: l, triple }
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_factor_two_chain() {
        let fs = system(vec![(c2(), ["0", "1", "1"])]);
        let g = closure(&fs, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.element_count(), 2);
        assert_eq!(g.count_atoms(), 1);
        assert_eq!(g.count_coatoms(), 1);
    }

    #[test]
    fn free_distributive_on_three_has_18_elements() {
        // all six nonconstant surjective assignments of the two-chain
        let triples = [
            ["0", "0", "1"],
            ["0", "1", "0"],
            ["0", "1", "1"],
            ["1", "0", "0"],
            ["1", "0", "1"],
            ["1", "1", "0"],
        ];
        let fs = system(triples.iter().map(|t| (c2(), *t)).collect());
        let g = closure(&fs, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.element_count(), 18);
        for i in 0..fs.len() {
            assert!(g.projection_surjective(i));
        }
    }

    #[test]
    fn l92_reproduction() {
        // generators x=(c,a,a), y=(a,c,b), z=(b,b,c) in the cube of L4
        let fs = system(vec![
            (l4(), ["c", "a", "b"]),
            (l4(), ["a", "c", "b"]),
            (l4(), ["a", "b", "c"]),
        ]);
        fs.check_generating().unwrap();
        let g = closure(&fs, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.element_count(), 92);
        assert_eq!(g.count_atoms(), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let fs = system(vec![
            (l4(), ["c", "a", "b"]),
            (l4(), ["a", "c", "b"]),
            (l4(), ["a", "b", "c"]),
        ]);
        match closure(&fs, 10) {
            Err(ProductError::CapacityExceeded { budget: 10 }) => {}
            other => panic!(
                "expected capacity error, got {:?}",
                other.map(|g| g.element_count())
            ),
        }
    }

    #[test]
    fn closure_is_idempotent_and_contains_generators() {
        let fs = system(vec![(l4(), ["a", "b", "c"]), (c2(), ["0", "1", "1"])]);
        let g = closure(&fs, DEFAULT_BUDGET).unwrap();
        for gen in g.generators() {
            assert!(g.contains(gen));
        }
        for &u in g.elements() {
            for &v in g.elements() {
                assert!(g.contains(g.meet(u, v)));
                assert!(g.contains(g.join(u, v)));
            }
        }
        assert!(g.contains(g.bottom()) && g.contains(g.top()));
        for &u in g.elements() {
            assert!(g.leq(g.bottom(), u) && g.leq(u, g.top()));
        }
    }

    #[test]
    fn factor_order_does_not_change_counts() {
        let a = system(vec![
            (l4(), ["c", "a", "b"]),
            (l4(), ["a", "c", "b"]),
            (c2(), ["0", "0", "1"]),
        ]);
        let b = system(vec![
            (c2(), ["0", "0", "1"]),
            (l4(), ["a", "c", "b"]),
            (l4(), ["c", "a", "b"]),
        ]);
        let ga = closure(&a, DEFAULT_BUDGET).unwrap();
        let gb = closure(&b, DEFAULT_BUDGET).unwrap();
        assert_eq!(ga.element_count(), gb.element_count());
        assert_eq!(ga.count_atoms(), gb.count_atoms());
        assert_eq!(ga.count_coatoms(), gb.count_coatoms());
    }

    #[test]
    fn atom_soundness_by_full_scan() {
        let fs = system(vec![
            (l4(), ["c", "a", "b"]),
            (l4(), ["a", "c", "b"]),
            (l4(), ["a", "b", "c"]),
        ]);
        let g = closure(&fs, DEFAULT_BUDGET).unwrap();
        let atoms = g.atoms();
        for &u in &atoms {
            assert_ne!(u, g.bottom());
            for &v in g.elements() {
                if v != u && v != g.bottom() {
                    assert!(
                        !(g.leq(v, u)),
                        "element strictly below a reported atom"
                    );
                }
            }
        }
        for &u in g.elements() {
            if u != g.bottom() && !atoms.contains(&u) {
                assert!(g
                    .elements()
                    .iter()
                    .any(|&v| v != u && v != g.bottom() && g.leq(v, u)));
            }
        }
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(matches!(FactorSystem::new(vec![]), Err(ProductError::NoFactors)));
        let l = c2();
        let bad = FactorSystem::new(vec![FactorAssignment { lattice: l, triple: [0, 1, 5] }]);
        assert!(matches!(
            bad,
            Err(ProductError::ElementOutOfRange { factor: 0, element: 5 })
        ));
    }
}
