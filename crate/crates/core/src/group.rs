//! Fully enumerated permutation groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::perm::{Permutation, MAX_DEGREE};
use crate::subgroup::Subgroup;

/// Default bound on the number of elements enumerated by
/// [`FiniteGroup::from_generators`] callers that do not pass their own.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// A permutation group with every element enumerated.
///
/// Elements are addressed by ordinal. Ordinal 0 is the identity; the rest
/// follow breadth-first order over products by the generators, each BFS
/// layer sorted by image sequence, so the same generators always give the
/// same numbering.
///
/// Cloning is cheap and clones share the cached subgroup lattice.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
    name: Option<Arc<str>>,
}

struct GroupData {
    id: u64,
    degree: usize,
    generators: Vec<Permutation>,
    gen_ids: Vec<u32>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
    lattice: OnceLock<Arc<SubgroupLattice>>,
    sublattices: Mutex<HashMap<FixedBitSet, Arc<SubgroupLattice>>>,
}

impl FiniteGroup {
    /// Closes `gens` under multiplication.
    pub fn from_generators(gens: &[Permutation], degree: usize, order_cap: usize) -> Result<FiniteGroup> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded { degree, cap: MAX_DEGREE });
        }
        if order_cap == 0 {
            return Err(Error::OrderCapExceeded { cap: 0 });
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0u32)]);
        // (parent ordinal, generator position) with element = parent * gen
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut found: HashMap<Permutation, (u32, u32)> = HashMap::new();
            for &x in &layer {
                for (s, gen) in gens.iter().enumerate() {
                    let y = elements[x].then(gen);
                    if !index.contains_key(&y) {
                        found.entry(y).or_insert((x as u32, s as u32));
                    }
                }
            }
            let mut next: Vec<(Permutation, (u32, u32))> = found.into_iter().collect();
            next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            layer.clear();
            for (perm, origin) in next {
                if elements.len() >= order_cap {
                    return Err(Error::OrderCapExceeded { cap: order_cap });
                }
                layer.push(elements.len());
                index.insert(perm.clone(), elements.len() as u32);
                elements.push(perm);
                parent.push(origin);
            }
        }

        let n = elements.len();
        let gen_ids: Vec<u32> = gens.iter().map(|g| index[g]).collect();
        let inverse: Vec<u32> = elements.iter().map(|e| index[&e.inverse()]).collect();
        let orders: Vec<u32> = elements.iter().map(|e| e.order() as u32).collect();

        let table = (n <= TABLE_LIMIT).then(|| {
            let right_by_gen: Vec<Vec<u32>> = gens
                .iter()
                .map(|gen| elements.iter().map(|e| index[&e.then(gen)]).collect())
                .collect();
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                table[i * n] = i as u32;
            }
            for j in 1..n {
                let (p, s) = parent[j];
                let col = &right_by_gen[s as usize];
                for i in 0..n {
                    table[i * n + j] = col[table[i * n + p as usize] as usize];
                }
            }
            table
        });

        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
                degree,
                generators: gens.to_vec(),
                gen_ids,
                elements,
                index,
                inverse,
                orders,
                table,
                lattice: OnceLock::new(),
                sublattices: Mutex::new(HashMap::new()),
            }),
            name: None,
        })
    }

    /// Parses each generator in cycle notation at the given degree.
    pub fn from_cycle_strings(gens: &[&str], degree: usize) -> Result<FiniteGroup> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_generators(&perms, degree, DEFAULT_ORDER_CAP)
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup::from_generators(&[], degree, 1).expect("trivial group")
    }

    #[must_use]
    pub fn named(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = Some(Arc::from(name.into()));
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if set, otherwise a description by degree and order.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.to_string(),
            None => format!("group(degree {}, order {})", self.degree(), self.order()),
        }
    }

    pub(crate) fn id(&self) -> u64 {
        self.data.id
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn order(&self) -> usize {
        self.data.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.data.generators
    }

    /// Ordinals of the generators, in the order they were given.
    pub fn generator_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.gen_ids.iter().map(|&g| g as usize)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.data.elements
    }

    pub fn element(&self, ordinal: usize) -> &Permutation {
        &self.data.elements[ordinal]
    }

    pub fn index_of(&self, perm: &Permutation) -> Option<usize> {
        self.data.index.get(perm).map(|&i| i as usize)
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.data.index.contains_key(perm)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.data.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.data.index[&self.data.elements[a].then(&self.data.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverse[a] as usize
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.data.orders[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.data.gen_ids;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize)))
    }

    pub(crate) fn cached_lattice(&self) -> Option<&Arc<SubgroupLattice>> {
        self.data.lattice.get()
    }

    pub(crate) fn lattice_cell(&self) -> &OnceLock<Arc<SubgroupLattice>> {
        &self.data.lattice
    }

    pub(crate) fn sublattice_cache(&self) -> &Mutex<HashMap<FixedBitSet, Arc<SubgroupLattice>>> {
        &self.data.sublattices
    }

    pub(crate) fn check(&self, h: &Subgroup) -> Result<()> {
        if h.group_id == self.data.id {
            Ok(())
        } else {
            Err(Error::ForeignSubgroup)
        }
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order() {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    // ---- subgroup construction ----

    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        let mut gens: Vec<u32> = Vec::new();
        for &g in &self.data.gen_ids {
            if g != 0 && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Subgroup::new(self.data.id, self.order(), members, gens)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        Subgroup::new(self.data.id, self.order(), members, Vec::new())
    }

    /// The subgroup generated by the given element ordinals.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        self.extend(&self.trivial_subgroup(), gens)
    }

    /// The subgroup generated by the given permutations, which must be
    /// members of this group.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let ids = gens
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::ForeignElement))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated(&ids))
    }

    /// Subgroup given by generators in cycle notation.
    pub fn subgroup_from_cycles(&self, gens: &[&str]) -> Result<Subgroup> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(s, self.degree()))
            .collect::<Result<Vec<_>>>()?;
        self.subgroup(&perms)
    }

    /// `⟨base, extra⟩`, built coset by coset: the result is a union of right
    /// cosets of `base`, so each new coset costs `|base|` products and each
    /// coset representative one product per generator.
    pub fn extend(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        let extra: Vec<u32> = extra
            .iter()
            .filter(|&&x| !base.contains(x))
            .map(|&x| x as u32)
            .collect();
        if extra.is_empty() {
            return base.clone();
        }
        let mut gens = base.gens.clone();
        for x in extra {
            if !gens.contains(&x) {
                gens.push(x);
            }
        }
        let base_elems: Vec<usize> = base.elements().collect();
        let mut members = base.members.clone();
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let x = reps[i];
            i += 1;
            for &s in &gens {
                let y = self.mul(x, s as usize);
                if !members.contains(y) {
                    for &h in &base_elems {
                        members.insert(self.mul(h, y));
                    }
                    reps.push(y);
                }
            }
        }
        Subgroup::new(self.data.id, self.order(), members, gens)
    }

    /// Wraps a member set known to be closed, computing a generating set
    /// greedily in ordinal order.
    pub(crate) fn subgroup_from_members(&self, members: FixedBitSet) -> Subgroup {
        let mut current = self.trivial_subgroup();
        for x in members.ones() {
            if !current.contains(x) {
                current = self.extend(&current, &[x]);
            }
        }
        assert!(current.members == members, "member set is not closed under products");
        current
    }

    fn subgroup_filter(&self, within: &Subgroup, keep: impl Fn(usize) -> bool) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in within.elements() {
            if keep(x) {
                members.insert(x);
            }
        }
        self.subgroup_from_members(members)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        if a.is_subgroup_of(b) {
            return Ok(a.clone());
        }
        if b.is_subgroup_of(a) {
            return Ok(b.clone());
        }
        let mut members = a.members.clone();
        members.intersect_with(&b.members);
        Ok(self.subgroup_from_members(members))
    }

    /// `⟨a, b⟩`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        let extra: Vec<usize> = b.generators().collect();
        Ok(self.extend(a, &extra))
    }

    /// `|AB| = |A||B| / |A ∩ B|`.
    pub fn product_order(&self, a: &Subgroup, b: &Subgroup) -> Result<usize> {
        let meet = self.intersection(a, b)?;
        Ok(a.order() * b.order() / meet.order())
    }

    // ---- conjugation ----

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: usize, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        self.check_element(g)?;
        Ok(self.conjugate_unchecked(g, h))
    }

    pub(crate) fn conjugate_unchecked(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in h.elements() {
            members.insert(self.conj(x, g));
        }
        let gens = h.gens.iter().map(|&x| self.conj(x as usize, g) as u32).collect();
        Subgroup::new(self.data.id, self.order(), members, gens)
    }

    /// True if conjugation by every generator of `ambient` maps `h` into itself.
    pub fn is_normal_in(&self, ambient: &Subgroup, h: &Subgroup) -> Result<bool> {
        self.check(ambient)?;
        self.check(h)?;
        if !h.is_subgroup_of(ambient) {
            return Err(Error::ChainViolation);
        }
        Ok(self.normalized_by(ambient.generators(), h))
    }

    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        self.check(h)?;
        Ok(self.normalized_by(self.generator_ids(), h))
    }

    pub(crate) fn normalized_by(&self, mut by: impl Iterator<Item = usize>, h: &Subgroup) -> bool {
        by.all(|g| h.generators().all(|x| h.contains(self.conj(x, g))))
    }

    /// `N_A(H)` for an ambient subgroup `A`.
    pub fn normalizer_in(&self, ambient: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
        self.check(ambient)?;
        self.check(h)?;
        let hg: Vec<usize> = h.generators().collect();
        Ok(self.subgroup_filter(ambient, |g| hg.iter().all(|&x| h.contains(self.conj(x, g)))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.normalizer_in(&self.whole(), h)
    }

    /// `C_A(S)` for an ambient subgroup `A`.
    pub fn centralizer_in(&self, ambient: &Subgroup, s: &Subgroup) -> Result<Subgroup> {
        self.check(ambient)?;
        self.check(s)?;
        let sg: Vec<usize> = s.generators().collect();
        Ok(self.subgroup_filter(ambient, |g| sg.iter().all(|&x| self.mul(g, x) == self.mul(x, g))))
    }

    pub fn centralizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.centralizer_in(&self.whole(), s)
    }

    /// `Z(H)`.
    pub fn center_of(&self, h: &Subgroup) -> Result<Subgroup> {
        self.centralizer_in(h, h)
    }

    pub fn center(&self) -> Subgroup {
        let whole = self.whole();
        self.center_of(&whole).expect("own subgroup")
    }

    /// Smallest subgroup containing `k` that is normalized by every element
    /// of `by`.
    pub(crate) fn normal_closure_by(&self, by: &[usize], k: &Subgroup) -> Subgroup {
        let mut closure = k.clone();
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < closure.gens.len() {
                let x = closure.gens[i] as usize;
                for &g in by {
                    let c = self.conj(x, g);
                    if !closure.contains(c) {
                        closure = self.extend(&closure, &[c]);
                        grew = true;
                    }
                }
                i += 1;
            }
            if !grew {
                return closure;
            }
        }
    }

    /// `K^A`, the normal closure of `k` in the ambient subgroup `a`.
    pub fn normal_closure_in(&self, ambient: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        self.check(ambient)?;
        self.check(k)?;
        if !k.is_subgroup_of(ambient) {
            return Err(Error::ChainViolation);
        }
        let by: Vec<usize> = ambient.generators().collect();
        Ok(self.normal_closure_by(&by, k))
    }

    /// `[A, B]`: the normal closure in `⟨A, B⟩` of the commutators of the
    /// generators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check(a)?;
        self.check(b)?;
        let mut comms = Vec::new();
        for x in a.generators() {
            for y in b.generators() {
                comms.push(self.commutator(x, y));
            }
        }
        let seed = self.subgroup_generated(&comms);
        let by: Vec<usize> = a.generators().chain(b.generators()).collect();
        Ok(self.normal_closure_by(&by, &seed))
    }

    /// Generators of `h` as permutations in cycle notation.
    pub fn describe(&self, h: &Subgroup) -> Vec<String> {
        h.generators().map(|g| self.element(g).to_string()).collect()
    }

    /// `h` as a group in its own right, on the same points.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        self.check(h)?;
        let gens: Vec<Permutation> = h.generators().map(|g| self.element(g).clone()).collect();
        let gens = if gens.is_empty() {
            vec![Permutation::identity(self.degree())]
        } else {
            gens
        };
        FiniteGroup::from_generators(&gens, self.degree(), h.order().max(1))
    }

    /// The direct product on disjoint point sets: `self` on the first
    /// points, `other` on the following ones.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let degree = self.degree() + other.degree();
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded { degree, cap: MAX_DEGREE });
        }
        let gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| g.shifted(0, degree))
            .chain(other.generators().iter().map(|g| g.shifted(self.degree(), degree)))
            .collect();
        let cap = DEFAULT_ORDER_CAP.max(self.order() * other.order());
        FiniteGroup::from_generators(&gens, degree, cap)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name())
            .field("degree", &self.degree())
            .field("order", &self.order())
            .finish()
    }
}
