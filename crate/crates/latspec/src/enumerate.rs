//! Exhaustive enumeration of small bounded lattices and searches for
//! subdirectly irreducible lattices with prescribed proper sublattices and
//! quotients. This is how the catalog entries beyond the textbook lattices
//! were derived and is kept as an independent cross-check of the data files.
//!
//! The enumeration walks naturally labeled posets on the middle elements
//! (every new element is maximal when added, so each labeled poset compatible
//! with the index order is produced exactly once), bounds them, and keeps the
//! ones where all meets and joins exist.

use crate::congruence::{self, in_variety_with_si, is_subdirectly_irreducible};
use crate::lattice::{are_isomorphic, Elem, FiniteLattice};
use std::collections::HashMap;

/// Calls `f` with every labeled bounded lattice on `n` elements (element 0 is
/// bottom, element n-1 is top). Lattices appear once per natural labeling, so
/// isomorphic copies repeat; callers deduplicate survivors.
pub fn for_each_bounded_lattice(n: usize, f: &mut dyn FnMut(&FiniteLattice)) {
    assert!((2..=12).contains(&n), "enumeration is sized for 2..=12 elements");
    let m = n - 2;
    let mut sdown: Vec<u64> = Vec::with_capacity(m);
    rec(m, &mut sdown, f);

    fn rec(m: usize, sdown: &mut Vec<u64>, f: &mut dyn FnMut(&FiniteLattice)) {
        let i = sdown.len();
        if i == m {
            if let Some(l) = bounded_from_middles(sdown) {
                f(&l);
            }
            return;
        }
        // the new element is maximal; its strict downset is any downward
        // closed subset of the existing elements
        for d in 0u64..(1 << i) {
            let mut closed = true;
            let mut bits = d;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if sdown[e] & !d != 0 {
                    closed = false;
                    break;
                }
            }
            if closed {
                sdown.push(d);
                rec(m, sdown, f);
                sdown.pop();
            }
        }
    }
}

/// Adjoins bottom/top to a middle poset (strict downsets over middle indices)
/// and builds the lattice if every pair has a unique glb and lub.
fn bounded_from_middles(sdown: &[u64]) -> Option<FiniteLattice> {
    let m = sdown.len();
    let n = m + 2;
    let mut below = vec![0u64; n];
    below[0] = 1;
    for i in 0..m {
        let mut mask = 1u64; // bottom
        let mut bits = sdown[i];
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            mask |= 1 << (e + 1);
        }
        mask |= 1 << (i + 1);
        below[i + 1] = mask;
    }
    below[n - 1] = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    lattice_from_downsets("enum", below)
}

/// Builds a lattice from reflexive downset masks, or None if some pair lacks
/// a unique glb or lub.
pub fn lattice_from_downsets(name: &str, below: Vec<u64>) -> Option<FiniteLattice> {
    let n = below.len();
    let mut above = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            if below[b] >> a & 1 == 1 {
                above[a] |= 1 << b;
            }
        }
    }
    let mut meet = vec![0u8; n * n];
    let mut join = vec![0u8; n * n];
    for a in 0..n {
        for b in a..n {
            let clb = below[a] & below[b];
            let m = (0..n).find(|&c| clb >> c & 1 == 1 && clb & !below[c] == 0)?;
            let cub = above[a] & above[b];
            let j = (0..n).find(|&c| cub >> c & 1 == 1 && cub & !above[c] == 0)?;
            meet[a * n + b] = m as u8;
            meet[b * n + a] = m as u8;
            join[a * n + b] = j as u8;
            join[b * n + a] = j as u8;
        }
    }
    let names = (0..n).map(|i| format!("e{i}")).collect();
    Some(FiniteLattice::from_tables(name.to_string(), names, meet, join))
}

/// Isomorphism-invariant certificate: the minimal leq bit matrix over all
/// permutations compatible with the per-element (downset size, upset size)
/// profile. Two lattices are isomorphic iff their certificates agree.
pub fn canonical_cert(l: &FiniteLattice) -> Vec<u64> {
    let n = l.len();
    let profile: Vec<(u32, u32)> = (0..n)
        .map(|v| {
            let down = l.downset(v).count_ones();
            let up = (0..n).filter(|&w| l.leq(v, w)).count() as u32;
            (down, up)
        })
        .collect();
    // group element indices by profile; the permutation must respect groups
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&v| (profile[v], v));
    let mut groups: Vec<Vec<Elem>> = Vec::new();
    for &v in &order {
        match groups.last() {
            Some(g) if profile[g[0]] == profile[v] => groups.last_mut().unwrap().push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best: Option<Vec<u64>> = None;
    let mut perm = vec![usize::MAX; n]; // old index -> new index
    let mut slot = 0usize;
    assign(l, &groups, 0, &mut perm, &mut slot, &mut best);
    return best.unwrap();

    fn assign(
        l: &FiniteLattice,
        groups: &[Vec<Elem>],
        gi: usize,
        perm: &mut Vec<usize>,
        slot: &mut usize,
        best: &mut Option<Vec<u64>>,
    ) {
        if gi == groups.len() {
            let n = l.len();
            let mut mat = vec![0u64; n];
            for a in 0..n {
                for b in 0..n {
                    if l.leq(a, b) {
                        mat[perm[a]] |= 1 << perm[b];
                    }
                }
            }
            if best.as_ref().is_none_or(|b| mat < *b) {
                *best = Some(mat);
            }
            return;
        }
        let g = groups[gi].clone();
        let mut used = vec![false; g.len()];
        place(l, groups, gi, &g, &mut used, perm, slot, best);

        #[allow(clippy::too_many_arguments)]
        fn place(
            l: &FiniteLattice,
            groups: &[Vec<Elem>],
            gi: usize,
            g: &[Elem],
            used: &mut Vec<bool>,
            perm: &mut Vec<usize>,
            slot: &mut usize,
            best: &mut Option<Vec<u64>>,
        ) {
            if used.iter().all(|&u| u) {
                assign(l, groups, gi + 1, perm, slot, best);
                return;
            }
            for i in 0..g.len() {
                if !used[i] {
                    used[i] = true;
                    perm[g[i]] = *slot;
                    *slot += 1;
                    place(l, groups, gi, g, used, perm, slot, best);
                    *slot -= 1;
                    perm[g[i]] = usize::MAX;
                    used[i] = false;
                }
            }
        }
    }
}

/// True iff `l` contains a pentagon sublattice (equivalently, is nonmodular).
pub fn has_pentagon(l: &FiniteLattice) -> bool {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            if a == b || !l.leq(a, b) {
                continue;
            }
            for c in 0..n {
                if l.leq(c, b) || l.leq(a, c) {
                    continue;
                }
                if l.meet(a, c) == l.meet(b, c) && l.join(a, c) == l.join(b, c) {
                    return true;
                }
            }
        }
    }
    false
}

/// Masks of all distinct sublattices (meet-and-join-closed nonempty subsets).
pub fn distinct_sublattices(l: &FiniteLattice) -> Vec<u64> {
    let n = l.len();
    let mut seen: Vec<u64> = Vec::new();
    for seed in 1u64..(1 << n) {
        let mask = l.sublattice_closure(
            &(0..n).filter(|&v| seed >> v & 1 == 1).collect::<Vec<_>>(),
        );
        if !seen.contains(&mask) {
            seen.push(mask);
        }
    }
    seen.sort_unstable();
    seen
}

/// True iff `r` is a homomorphic image of a sublattice of `k`.
pub fn has_hs_member(k: &FiniteLattice, r: &FiniteLattice) -> bool {
    for mask in distinct_sublattices(k) {
        let size = mask.count_ones() as usize;
        if size < r.len() {
            continue;
        }
        let s = k.restrict(mask);
        if size == r.len() {
            if are_isomorphic(&s, r) {
                return true;
            }
            continue;
        }
        if let Ok(con) = congruence::congruence_lattice(&s) {
            for theta in con {
                if theta.block_count() == r.len()
                    && are_isomorphic(&congruence::quotient(&s, &theta), r)
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Membership in the variety with SI members `allowed`, memoized by canonical
/// certificate (keyed by size alongside, since certificates are per-size).
fn in_variety_cached(
    k: &FiniteLattice,
    allowed: &[&FiniteLattice],
    cache: &mut HashMap<(usize, Vec<u64>), bool>,
) -> bool {
    let key = (k.len(), canonical_cert(k));
    if let Some(&v) = cache.get(&key) {
        return v;
    }
    let v = in_variety_with_si(k, allowed).expect("variety test within scale bound");
    cache.insert(key, v);
    v
}

/// Finds, up to isomorphism, every subdirectly irreducible lattice with
/// `size` elements such that
///
/// * it is not isomorphic to any lattice of `allowed_si`,
/// * every proper sublattice and every proper quotient lies in the variety
///   whose SI members are `allowed_si`,
/// * every lattice of `required_hs` occurs among its sublattices' images.
///
/// Any such lattice generates a join-irreducible cover of that variety.
pub fn find_cover_generators(
    size: usize,
    allowed_si: &[&FiniteLattice],
    required_hs: &[&FiniteLattice],
) -> Vec<FiniteLattice> {
    let mut cache: HashMap<(usize, Vec<u64>), bool> = HashMap::new();
    let mut found: Vec<FiniteLattice> = Vec::new();
    for_each_bounded_lattice(size, &mut |k| {
        if !is_subdirectly_irreducible(k) {
            return;
        }
        if allowed_si.iter().any(|s| s.len() == k.len() && are_isomorphic(k, s)) {
            return;
        }
        // proper quotients
        let con = congruence::congruence_lattice(k).expect("within scale bound");
        for theta in &con {
            if theta.is_zero() || theta.block_count() == 1 {
                continue;
            }
            let q = congruence::quotient(k, theta);
            if !in_variety_cached(&q, allowed_si, &mut cache) {
                return;
            }
        }
        // maximal proper sublattices (smaller ones lie inside them)
        let subs = distinct_sublattices(k);
        let full = subs.last().copied().unwrap_or(0);
        for &mask in &subs {
            if mask == full || mask.count_ones() <= 1 {
                continue;
            }
            let maximal = !subs.iter().any(|&m2| m2 != mask && m2 != full && mask & !m2 == 0);
            if !maximal {
                continue;
            }
            if !in_variety_cached(&k.restrict(mask), allowed_si, &mut cache) {
                return;
            }
        }
        for r in required_hs {
            if !has_hs_member(k, r) {
                return;
            }
        }
        if !found.iter().any(|f| are_isomorphic(f, k)) {
            found.push(k.clone());
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoverGraph;

    fn build(name: &str, elems: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
        FiniteLattice::from_cover_graph(&CoverGraph::new(name, elems, covers)).unwrap()
    }

    fn count_lattices(n: usize) -> usize {
        let mut reps: Vec<(Vec<u64>, usize)> = Vec::new();
        for_each_bounded_lattice(n, &mut |l| {
            let cert = canonical_cert(l);
            if !reps.iter().any(|(c, s)| *s == l.len() && *c == cert) {
                reps.push((cert, l.len()));
            }
        });
        reps.len()
    }

    #[test]
    fn lattice_counts_match_the_known_sequence() {
        // unlabeled lattices on 2..=7 elements
        assert_eq!(count_lattices(2), 1);
        assert_eq!(count_lattices(3), 1);
        assert_eq!(count_lattices(4), 2);
        assert_eq!(count_lattices(5), 5);
        assert_eq!(count_lattices(6), 15);
        assert_eq!(count_lattices(7), 53);
    }

    #[test]
    fn pentagon_detection() {
        let n5 = build(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        );
        let m3 = build(
            "M3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        );
        assert!(has_pentagon(&n5));
        assert!(!has_pentagon(&m3));
    }

    #[test]
    fn canonical_cert_separates_and_identifies() {
        let n5 = build(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        );
        let n5_relabeled = build(
            "X",
            &["bot", "q", "p", "s", "top"],
            &[("bot", "s"), ("s", "top"), ("bot", "q"), ("q", "p"), ("p", "top")],
        );
        let m3 = build(
            "M3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        );
        assert_eq!(canonical_cert(&n5), canonical_cert(&n5_relabeled));
        assert_ne!(canonical_cert(&n5), canonical_cert(&m3));
    }

    #[test]
    fn hs_members_of_the_pentagon() {
        let n5 = build(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        );
        let c2 = build("C2", &["0", "1"], &[("0", "1")]);
        let c2xc2 = build(
            "V",
            &["00", "01", "10", "11"],
            &[("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")],
        );
        let m3 = build(
            "M3",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        );
        assert!(has_hs_member(&n5, &c2));
        assert!(has_hs_member(&n5, &c2xc2)); // quotient collapsing the chain pair
        assert!(!has_hs_member(&n5, &m3));
    }
}
