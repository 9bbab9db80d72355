//! Exhaustive subgroup lattices and the positional notions built on them:
//! maximal and n-maximal subgroups, normal and minimal normal subgroups, the
//! Frattini subgroup, Sylow subgroups and subnormality.
//!
//! Enumeration seeds the lattice with every cyclic subgroup and then closes
//! it under joining with cyclic subgroups. Every subgroup is a join of its
//! cyclic subgroups, so adding them one at a time reaches all of them.
//!
//! The lattice of a subgroup `H` is kept in the ordinal space of the parent
//! group. When the parent's own lattice is cached it is obtained by
//! filtering; otherwise it is enumerated with `H` as the root.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{is_prime, p_part};
use crate::subgroup::Subgroup;

/// Default largest group order for which lattices are enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 400;

/// Hard ceiling on lattice enumeration.
pub const MAX_LATTICE_ORDER: usize = 1200;

/// All subgroups of a root subgroup, in canonical order (by order, then by
/// ascending member list), with inclusion and conjugacy structure.
#[derive(Debug)]
pub struct SubgroupLattice {
    group_id: u64,
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    /// `subs_of[j]` = indices `i` with `subgroups[i] ⊆ subgroups[j]`.
    subs_of: Vec<FixedBitSet>,
    /// `maximals[j]` = indices maximal in `j`.
    maximals: Vec<Vec<usize>>,
    /// `maximal_in[i]` = indices `j` in which `i` is maximal.
    maximal_in: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    normal: Vec<bool>,
}

/// One line of a lattice export.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeRecord {
    pub index: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub is_normal: bool,
    pub conjugacy_class: usize,
    pub maximal_in: Vec<usize>,
}

impl SubgroupLattice {
    fn enumerate(g: &FiniteGroup, root: &Subgroup) -> SubgroupLattice {
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut subs: Vec<Subgroup> = Vec::new();
        let trivial = g.trivial_subgroup();
        index.insert(trivial.members.clone(), 0);
        subs.push(trivial);

        let mut cyclic_gens = Vec::new();
        for x in root.elements().skip(1) {
            let c = g.subgroup_generated(&[x]);
            if !index.contains_key(&c.members) {
                index.insert(c.members.clone(), subs.len());
                subs.push(c);
                cyclic_gens.push(x);
            }
        }

        let mut i = 0;
        while i < subs.len() {
            let h = subs[i].clone();
            for &c in &cyclic_gens {
                if h.contains(c) {
                    continue;
                }
                let joined = g.extend(&h, &[c]);
                if !index.contains_key(&joined.members) {
                    index.insert(joined.members.clone(), subs.len());
                    subs.push(joined);
                }
            }
            i += 1;
        }
        subs.sort();
        SubgroupLattice::from_sorted(g, root, subs)
    }

    fn from_sorted(g: &FiniteGroup, root: &Subgroup, subgroups: Vec<Subgroup>) -> SubgroupLattice {
        let n = subgroups.len();
        let index: HashMap<FixedBitSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members.clone(), i))
            .collect();

        let mut subs_of = vec![FixedBitSet::with_capacity(n); n];
        let mut supers_strict = vec![FixedBitSet::with_capacity(n); n];
        for j in 0..n {
            subs_of[j].insert(j);
            for i in 0..j {
                let (a, b) = (&subgroups[i], &subgroups[j]);
                if a.order < b.order && b.order % a.order == 0 && a.members.is_subset(&b.members) {
                    subs_of[j].insert(i);
                    supers_strict[i].insert(j);
                }
            }
        }
        let mut maximals = vec![Vec::new(); n];
        let mut maximal_in = vec![Vec::new(); n];
        for j in 0..n {
            for i in subs_of[j].ones() {
                if i != j && supers_strict[i].intersection_count(&subs_of[j]) == 1 {
                    maximals[j].push(i);
                    maximal_in[i].push(j);
                }
            }
        }

        // conjugacy under the root, by union-find over generator moves
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut normal = vec![true; n];
        let root_gens: Vec<usize> = root.generators().collect();
        for i in 0..n {
            for &s in &root_gens {
                if g.normalized_by(std::iter::once(s), &subgroups[i]) {
                    continue;
                }
                normal[i] = false;
                let c = g.conjugate_unchecked(s, &subgroups[i]);
                let j = index[&c.members];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut class_ids: HashMap<usize, usize> = HashMap::new();
        let class_of = (0..n)
            .map(|i| {
                let r = find(&mut parent, i);
                let next = class_ids.len();
                *class_ids.entry(r).or_insert(next)
            })
            .collect();

        SubgroupLattice {
            group_id: g.id(),
            subgroups,
            index,
            subs_of,
            maximals,
            maximal_in,
            class_of,
            normal,
        }
    }

    /// The lattice below one of our members, recomputing conjugacy under it.
    fn restrict(&self, g: &FiniteGroup, root: usize) -> SubgroupLattice {
        let keep: Vec<Subgroup> = self.subs_of[root].ones().map(|i| self.subgroups[i].clone()).collect();
        let root_sub = self.subgroups[root].clone();
        SubgroupLattice::from_sorted(g, &root_sub, keep)
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// The top of the lattice.
    pub fn root(&self) -> &Subgroup {
        self.subgroups.last().expect("lattice contains its root")
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        if h.group_id != self.group_id {
            return None;
        }
        self.index.get(&h.members).copied()
    }

    /// Indices of subgroups maximal in subgroup `j`.
    pub fn maximals_of(&self, j: usize) -> &[usize] {
        &self.maximals[j]
    }

    /// Indices of subgroups in which subgroup `i` is maximal.
    pub fn maximal_in(&self, i: usize) -> &[usize] {
        &self.maximal_in[i]
    }

    /// Indices of subgroups contained in subgroup `j` (including `j`).
    pub fn below(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.subs_of[j].ones()
    }

    /// Normal in the root.
    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn class_id(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn export(&self, g: &FiniteGroup) -> Vec<LatticeRecord> {
        (0..self.len())
            .map(|i| LatticeRecord {
                index: i,
                order: self.subgroups[i].order(),
                generators: g.describe(&self.subgroups[i]),
                is_normal: self.normal[i],
                conjugacy_class: self.class_of[i],
                maximal_in: self.maximal_in[i].clone(),
            })
            .collect()
    }
}

/// The complete subgroup lattice of `g`, computed at most once per group.
pub fn all_subgroups(g: &FiniteGroup, lattice_cap: usize) -> Result<Arc<SubgroupLattice>> {
    let cap = lattice_cap.min(MAX_LATTICE_ORDER);
    if g.order() > cap {
        return Err(Error::LatticeCapExceeded { order: g.order(), cap });
    }
    Ok(g.lattice_cell()
        .get_or_init(|| Arc::new(SubgroupLattice::enumerate(g, &g.whole())))
        .clone())
}

/// The lattice of all subgroups of `h`, in `g`'s ordinals, rooted at `h`.
pub fn lattice_of(g: &FiniteGroup, h: &Subgroup) -> Result<Arc<SubgroupLattice>> {
    g.check(h)?;
    if h.order() == g.order() {
        return all_subgroups(g, MAX_LATTICE_ORDER);
    }
    if g.cached_lattice().is_none() && g.order() <= DEFAULT_LATTICE_CAP {
        all_subgroups(g, DEFAULT_LATTICE_CAP)?;
    }
    let mut cache = g.sublattice_cache().lock().expect("lattice cache poisoned");
    if let Some(l) = cache.get(&h.members) {
        return Ok(l.clone());
    }
    let built = match g.cached_lattice() {
        Some(full) => {
            let pos = full.position(h).expect("every subgroup is in the full lattice");
            full.restrict(g, pos)
        }
        None => {
            if h.order() > MAX_LATTICE_ORDER {
                return Err(Error::LatticeCapExceeded {
                    order: h.order(),
                    cap: MAX_LATTICE_ORDER,
                });
            }
            SubgroupLattice::enumerate(g, h)
        }
    };
    let built = Arc::new(built);
    cache.insert(h.members.clone(), built.clone());
    Ok(built)
}

/// Every subgroup of `h`, in canonical order.
pub fn subgroups_of(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(lattice_of(g, h)?.subgroups().to_vec())
}

/// Maximal subgroups of `h`, in canonical order. Empty for the trivial group.
pub fn maximal_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let l = lattice_of(g, h)?;
    let top = l.len() - 1;
    Ok(l.maximals_of(top).iter().map(|&i| l.get(i).clone()).collect())
}

/// Subgroups maximal in some (n−1)-maximal subgroup of `h`; `n = 1` gives the
/// maximal subgroups. Deduplicated as subgroups, canonical order.
pub fn n_maximal_subgroups(g: &FiniteGroup, h: &Subgroup, n: usize) -> Result<Vec<Subgroup>> {
    if n == 0 {
        return Err(Error::OutOfRange("n-maximal needs n >= 1".into()));
    }
    let l = lattice_of(g, h)?;
    let mut level = FixedBitSet::with_capacity(l.len());
    level.insert(l.len() - 1);
    for _ in 0..n {
        let mut next = FixedBitSet::with_capacity(l.len());
        for j in level.ones() {
            next.extend(l.maximals_of(j).iter().copied());
        }
        level = next;
    }
    Ok(level.ones().map(|i| l.get(i).clone()).collect())
}

/// Normal subgroups of `h`, in canonical order.
pub fn normal_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let l = lattice_of(g, h)?;
    Ok((0..l.len()).filter(|&i| l.is_normal(i)).map(|i| l.get(i).clone()).collect())
}

/// Nontrivial normal subgroups of `h` minimal under inclusion.
pub fn minimal_normal_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let normals = normal_subgroups(g, h)?;
    let nontrivial: Vec<&Subgroup> = normals.iter().filter(|n| !n.is_trivial()).collect();
    Ok(nontrivial
        .iter()
        .filter(|n| !nontrivial.iter().any(|m| m.is_proper_subgroup_of(n)))
        .map(|n| (*n).clone())
        .collect())
}

/// `Φ(h)`, the intersection of the maximal subgroups; trivial for `h = 1`.
pub fn frattini(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    let maximals = maximal_subgroups(g, h)?;
    let mut iter = maximals.iter();
    let Some(first) = iter.next() else {
        return Ok(g.trivial_subgroup());
    };
    let mut members = first.members.clone();
    for m in iter {
        members.intersect_with(&m.members);
    }
    Ok(g.subgroup_from_members(members))
}

/// Sylow p-subgroups of `h`. When `p` does not divide `|h|` the answer is the
/// trivial subgroup alone.
pub fn sylow(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Vec<Subgroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(h.order() as u64, p) as usize;
    if target == 1 {
        return Ok(vec![g.trivial_subgroup()]);
    }
    let l = lattice_of(g, h)?;
    Ok(l.subgroups().iter().filter(|s| s.order() == target).cloned().collect())
}

/// Subnormality by normal-closure descent: `G ≥ H^G ≥ H^(H^G) ≥ …` reaches
/// `h` exactly when `h` is subnormal.
pub fn is_subnormal(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    g.check(h)?;
    let mut current = g.whole();
    loop {
        let next = g.normal_closure_in(&current, h)?;
        if next == current {
            return Ok(current == *h);
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn group(gens: &[&str], degree: usize) -> FiniteGroup {
        FiniteGroup::from_cycle_strings(gens, degree).unwrap()
    }

    /// Independent oracle: close the set of cyclic subgroups under pairwise
    /// joins (subgroup generated by the union), working on explicit element
    /// sets with no coset tricks.
    fn join_closure_count(g: &FiniteGroup) -> usize {
        fn generate(g: &FiniteGroup, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
            let mut set = seed.clone();
            set.insert(0);
            loop {
                let snapshot: Vec<usize> = set.iter().copied().collect();
                let before = set.len();
                for &a in &snapshot {
                    for &b in &snapshot {
                        set.insert(g.mul(a, b));
                    }
                }
                if set.len() == before {
                    return set;
                }
            }
        }
        let mut all: BTreeSet<BTreeSet<usize>> = (0..g.order())
            .map(|x| generate(g, &BTreeSet::from([x])))
            .collect();
        loop {
            let snapshot: Vec<_> = all.iter().cloned().collect();
            let before = all.len();
            for a in &snapshot {
                for b in &snapshot {
                    if a.is_subset(b) || b.is_subset(a) {
                        continue;
                    }
                    let union: BTreeSet<usize> = a.union(b).copied().collect();
                    all.insert(generate(g, &union));
                }
            }
            if all.len() == before {
                return all.len();
            }
        }
    }

    #[test]
    fn lattice_counts() {
        let v4 = group(&["(1 2)(3 4)", "(1 3)(2 4)"], 4);
        assert_eq!(all_subgroups(&v4, 400).unwrap().len(), 5);
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(all_subgroups(&s4, 400).unwrap().len(), 30);
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert_eq!(all_subgroups(&a5, 400).unwrap().len(), 59);
    }

    #[test]
    fn oracle_agrees_on_small_groups() {
        // frozen counts 30 and 59 above were produced by this oracle
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(join_closure_count(&s4), 30);
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert_eq!(join_closure_count(&a5), 59);
        let d12 = group(&["(1 2 3 4 5 6)", "(2 6)(3 5)"], 6);
        assert_eq!(join_closure_count(&d12), all_subgroups(&d12, 400).unwrap().len());
    }

    #[test]
    fn conjugacy_class_sizes_sum() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let l = all_subgroups(&s4, 400).unwrap();
        // 11 classes of subgroups in S4
        assert_eq!(l.class_count(), 11);
        for i in 0..l.len() {
            let h = l.get(i);
            let n = s4.normalizer(h).unwrap();
            let class_size = (0..l.len()).filter(|&j| l.class_id(j) == l.class_id(i)).count();
            assert_eq!(class_size, s4.order() / n.order());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = group(&["(1 2)", "(1 2 3 4 5)"], 5);
        assert_eq!(
            all_subgroups(&s5, 100).unwrap_err(),
            Error::LatticeCapExceeded { order: 120, cap: 100 }
        );
    }

    #[test]
    fn maximal_subgroups_of_a5() {
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let orders: BTreeSet<usize> = maximal_subgroups(&a5, &a5.whole())
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(orders, BTreeSet::from([6, 10, 12]));
        let two: BTreeSet<usize> = n_maximal_subgroups(&a5, &a5.whole(), 2)
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(two, BTreeSet::from([2, 3, 4, 5]));
        let three: BTreeSet<usize> = n_maximal_subgroups(&a5, &a5.whole(), 3)
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(three, BTreeSet::from([1, 2]));
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let orders: Vec<usize> = normal_subgroups(&s4, &s4.whole()).unwrap().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let minimal = minimal_normal_subgroups(&s4, &s4.whole()).unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].order(), 4);
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert_eq!(minimal_normal_subgroups(&a5, &a5.whole()).unwrap(), vec![a5.whole()]);
    }

    #[test]
    fn frattini_examples() {
        let d8 = group(&["(1 2 3 4)", "(1 3)"], 4);
        let phi = frattini(&d8, &d8.whole()).unwrap();
        assert_eq!(phi, d8.center());
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        assert!(frattini(&s4, &s4.whole()).unwrap().is_trivial());
        let c4 = group(&["(1 2 3 4)"], 4);
        assert_eq!(frattini(&c4, &c4.whole()).unwrap().order(), 2);
        let t = FiniteGroup::trivial(1);
        assert!(frattini(&t, &t.whole()).unwrap().is_trivial());
    }

    #[test]
    fn sylow_examples() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let p2 = sylow(&s4, &s4.whole(), 2).unwrap();
        assert_eq!(p2.len(), 3);
        assert!(p2.iter().all(|p| p.order() == 8));
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert_eq!(sylow(&a5, &a5.whole(), 5).unwrap().len(), 6);
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        assert_eq!(sylow(&s3, &s3.whole(), 5).unwrap(), vec![s3.trivial_subgroup()]);
        assert_eq!(sylow(&s3, &s3.whole(), 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn subnormality() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let c4 = s4.subgroup_from_cycles(&["(1 2 3 4)"]).unwrap();
        assert!(!is_subnormal(&s4, &c4).unwrap());
        let v4 = s4.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        assert!(is_subnormal(&s4, &v4).unwrap());
        // a non-normal C2 inside the normal V4 is subnormal
        let c2 = s4.subgroup_from_cycles(&["(1 2)(3 4)"]).unwrap();
        assert!(!s4.is_normal(&c2).unwrap());
        assert!(is_subnormal(&s4, &c2).unwrap());
        let a4 = s4.subgroup_from_cycles(&["(1 2 3)", "(1 2)(3 4)"]).unwrap();
        assert!(is_subnormal(&s4, &a4).unwrap());
    }

    #[test]
    fn sublattice_matches_fresh_enumeration() {
        let s5 = group(&["(1 2)", "(1 2 3 4 5)"], 5);
        let a5 = s5.subgroup_from_cycles(&["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        // no parent lattice yet: enumerated with A5 as root
        let fresh = SubgroupLattice::enumerate(&s5, &a5);
        all_subgroups(&s5, 400).unwrap();
        let filtered = lattice_of(&s5, &a5).unwrap();
        assert_eq!(fresh.subgroups(), filtered.subgroups());
        assert_eq!(fresh.len(), 59);
        for i in 0..fresh.len() {
            assert_eq!(fresh.maximals_of(i), filtered.maximals_of(i));
            assert_eq!(fresh.is_normal(i), filtered.is_normal(i));
        }
    }

    #[test]
    fn export_records() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let l = all_subgroups(&s3, 400).unwrap();
        let rec = l.export(&s3);
        assert_eq!(rec.len(), 6);
        assert_eq!(rec[0].order, 1);
        assert_eq!(rec[5].order, 6);
        assert!(rec[5].is_normal);
        assert!(rec[5].maximal_in.is_empty());
        // A3 is maximal in S3 and normal
        let a3 = rec.iter().find(|r| r.order == 3).unwrap();
        assert!(a3.is_normal);
        assert_eq!(a3.maximal_in, vec![5]);
    }
}
