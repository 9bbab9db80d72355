//! Homomorphisms given by generator images, coset-action quotients and
//! isomorphism search.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::normal_subgroups;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Largest index accepted by [`quotient`]; the quotient acts on that many
/// cosets.
pub const QUOTIENT_INDEX_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Homomorphism,
    Isomorphism,
    QuotientProjection,
}

/// A homomorphism determined by the images of the source generators.
///
/// Construction walks the Cayley graph of the source and checks every edge,
/// so an accepted map respects all products.
#[derive(Clone)]
pub struct GroupMap {
    source: FiniteGroup,
    target: FiniteGroup,
    image_of_generator: Vec<Permutation>,
    kind: MapKind,
    images: Vec<u32>,
}

impl GroupMap {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        image_of_generator: Vec<Permutation>,
        kind: MapKind,
    ) -> Result<GroupMap> {
        if image_of_generator.len() != source.generators().len() {
            return Err(Error::OutOfRange(format!(
                "{} generator images for {} generators",
                image_of_generator.len(),
                source.generators().len()
            )));
        }
        let gen_images = image_of_generator
            .iter()
            .map(|p| target.index_of(p).ok_or(Error::ForeignElement))
            .collect::<Result<Vec<_>>>()?;
        let gens: Vec<usize> = source.generator_ids().collect();

        const UNSET: u32 = u32::MAX;
        let mut images = vec![UNSET; source.order()];
        images[0] = 0;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&s, &t) in gens.iter().zip(&gen_images) {
                let y = source.mul(x, s);
                let img = target.mul(images[x] as usize, t) as u32;
                if images[y] == UNSET {
                    images[y] = img;
                    queue.push(y);
                } else if images[y] != img {
                    return Err(Error::NotHomomorphism);
                }
            }
        }

        let map = GroupMap {
            source: source.clone(),
            target: target.clone(),
            image_of_generator,
            kind,
            images,
        };
        match kind {
            MapKind::Isomorphism if !(map.is_injective() && map.is_surjective()) => Err(Error::NotBijective),
            MapKind::QuotientProjection if !map.is_surjective() => Err(Error::NotHomomorphism),
            _ => Ok(map),
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn image_of_generators(&self) -> &[Permutation] {
        &self.image_of_generator
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `φ(H)` as a subgroup of the target.
    pub fn image_of(&self, h: &Subgroup) -> Result<Subgroup> {
        self.source.check(h)?;
        let gens: Vec<usize> = h.generators().map(|x| self.image(x)).collect();
        Ok(self.target.subgroup_generated(&gens))
    }

    /// `φ⁻¹(K)` as a subgroup of the source.
    pub fn preimage(&self, k: &Subgroup) -> Result<Subgroup> {
        self.target.check(k)?;
        let mut members = FixedBitSet::with_capacity(self.source.order());
        for x in 0..self.source.order() {
            if k.contains(self.image(x)) {
                members.insert(x);
            }
        }
        Ok(self.source.subgroup_from_members(members))
    }

    pub fn kernel(&self) -> Subgroup {
        let trivial = self.target.trivial_subgroup();
        self.preimage(&trivial).expect("own target")
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&i| i == 0).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.order());
        for &i in &self.images {
            hit.insert(i as usize);
        }
        hit.count_ones(..) == self.target.order()
    }
}

impl std::fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("kind", &self.kind)
            .finish()
    }
}

/// `G/N` as the permutation group induced on the right cosets of `N`, with
/// the projection. The projection's kernel is exactly `N`.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupMap)> {
    if !g.is_normal(n)? {
        return Err(Error::NotNormal);
    }
    let index = g.order() / n.order();
    if index > QUOTIENT_INDEX_CAP {
        return Err(Error::IndexCapExceeded {
            index,
            cap: QUOTIENT_INDEX_CAP,
        });
    }
    const UNSET: usize = usize::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::with_capacity(index);
    for x in 0..g.order() {
        if coset_of[x] != UNSET {
            continue;
        }
        for h in n.elements() {
            coset_of[g.mul(h, x)] = reps.len();
        }
        reps.push(x);
    }
    let gen_perms = g
        .generator_ids()
        .map(|s| Permutation::from_images(reps.iter().map(|&x| coset_of[g.mul(x, s)]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let q = FiniteGroup::from_generators(&gen_perms, index, index)?;
    let q = match g.name() {
        Some(name) => q.named(format!("{name}/N{}", n.order())),
        None => q,
    };
    let map = GroupMap::new(g, &q, gen_perms, MapKind::QuotientProjection)?;
    Ok((q, map))
}

/// Cheap isomorphism invariants.
#[derive(Debug, PartialEq, Eq)]
struct Invariants {
    order: usize,
    abelian: bool,
    derived_order: usize,
    center_order: usize,
    order_profile: BTreeMap<usize, usize>,
}

fn invariants(g: &FiniteGroup) -> Invariants {
    let whole = g.whole();
    let derived = g.commutator_subgroup(&whole, &whole).expect("own subgroup");
    let mut order_profile = BTreeMap::new();
    for x in 0..g.order() {
        *order_profile.entry(g.element_order(x)).or_insert(0) += 1;
    }
    Invariants {
        order: g.order(),
        abelian: g.is_abelian(),
        derived_order: derived.order(),
        center_order: g.center().order(),
        order_profile,
    }
}

/// An isomorphism `g → h` if one exists.
///
/// Invariants (order, abelianization, element-order profile, center) are
/// compared first; then images of a short generating sequence of `g` are
/// chosen by backtracking, matching element orders and checking each
/// partial assignment for consistency and injectivity.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMap> {
    if invariants(g) != invariants(h) {
        return None;
    }
    search_isomorphism(g, h)
}

/// A short generating sequence: greedily take the element that enlarges the
/// generated subgroup the most.
fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut current = g.trivial_subgroup();
    let mut seq = Vec::new();
    while current.order() < g.order() {
        let mut best: Option<(usize, usize, usize)> = None;
        for x in 0..g.order() {
            if current.contains(x) {
                continue;
            }
            let size = g.extend(&current, &[x]).order();
            let key = (size, g.element_order(x), usize::MAX - x);
            if best.is_none_or(|b| key > (b.0, b.1, usize::MAX - b.2)) {
                best = Some((size, g.element_order(x), x));
            }
        }
        let (_, _, x) = best.expect("proper subgroup has an element outside");
        current = g.extend(&current, &[x]);
        seq.push(x);
    }
    seq
}

/// Backtracking without the invariant prefilter.
pub(crate) fn search_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMap> {
    if g.order() != h.order() {
        return None;
    }
    let seq = generating_sequence(g);
    let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for y in 0..h.order() {
        by_order.entry(h.element_order(y)).or_default().push(y);
    }
    // the first image only matters up to conjugacy in h
    let first_candidates: Vec<usize> = match seq.first() {
        None => Vec::new(),
        Some(&x) => {
            let mut seen = FixedBitSet::with_capacity(h.order());
            let mut reps = Vec::new();
            for &y in by_order.get(&g.element_order(x)).map_or(&[][..], Vec::as_slice) {
                if seen.contains(y) {
                    continue;
                }
                reps.push(y);
                for z in 0..h.order() {
                    seen.insert(h.conj(y, z));
                }
            }
            reps
        }
    };

    let mut chosen: Vec<usize> = Vec::new();
    let table = backtrack(g, h, &seq, &by_order, &first_candidates, &mut chosen)?;
    let images = g.generator_ids().map(|s| h.element(table[s] as usize).clone()).collect();
    GroupMap::new(g, h, images, MapKind::Isomorphism).ok()
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    seq: &[usize],
    by_order: &BTreeMap<usize, Vec<usize>>,
    first: &[usize],
    chosen: &mut Vec<usize>,
) -> Option<Vec<u32>> {
    let depth = chosen.len();
    if depth == seq.len() {
        return partial_map(g, h, seq, chosen);
    }
    let candidates: &[usize] = if depth == 0 {
        first
    } else {
        by_order.get(&g.element_order(seq[depth])).map_or(&[], Vec::as_slice)
    };
    for &y in candidates {
        chosen.push(y);
        if partial_map(g, h, &seq[..=depth], chosen).is_some() {
            if let Some(t) = backtrack(g, h, seq, by_order, first, chosen) {
                return Some(t);
            }
        }
        chosen.pop();
    }
    None
}

/// Extends the assignment `seq[i] ↦ images[i]` over `⟨seq⟩`; `None` if it
/// is inconsistent or not injective. Unreached entries are `u32::MAX`.
fn partial_map(g: &FiniteGroup, h: &FiniteGroup, seq: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; g.order()];
    let mut used = FixedBitSet::with_capacity(h.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in seq.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x] as usize, t) as u32;
            if map[y] == UNSET {
                if used.contains(img as usize) {
                    return None;
                }
                used.insert(img as usize);
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// True if `h` is a normal subgroup of `g` with `g/h` isomorphic to `target`.
pub fn quotient_is_isomorphic(g: &FiniteGroup, n: &Subgroup, target: &FiniteGroup) -> Result<bool> {
    let (q, _) = quotient(g, n)?;
    Ok(are_isomorphic(&q, target).is_some())
}

/// Normal subgroups of prime order.
pub fn prime_order_normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Ok(normal_subgroups(g, &g.whole())?
        .into_iter()
        .filter(|n| crate::numtheory::is_prime(n.order() as u64))
        .collect())
}
