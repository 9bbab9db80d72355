//! Series and structural predicates: solvable, nilpotent, supersolvable,
//! p-nilpotent and minimal non-nilpotent groups, plus `F(H)`, `S(H)`,
//! `O^p(H)`, `J(P)`, `Z(J(P))` and normal-complement search.
//!
//! Every function works on a subgroup `h` of an ambient group `g`; pass
//! `g.whole()` for the group itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{lattice_of, maximal_subgroups, normal_subgroups, subgroups_of, sylow};
use crate::numtheory::{is_prime, p_part, prime_divisors, prime_power_decomposition};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    Chief,
}

/// A descending series starting at the group itself.
#[derive(Debug, Clone)]
pub struct SeriesRecord {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub reached_trivial: bool,
}

impl SeriesRecord {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

pub fn derived_series(g: &FiniteGroup, h: &Subgroup) -> Result<SeriesRecord> {
    g.check(h)?;
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        let next = g.commutator_subgroup(last, last)?;
        if next == *last {
            break;
        }
        terms.push(next);
    }
    let reached_trivial = terms.last().is_some_and(Subgroup::is_trivial);
    Ok(SeriesRecord {
        kind: SeriesKind::Derived,
        terms,
        reached_trivial,
    })
}

pub fn lower_central_series(g: &FiniteGroup, h: &Subgroup) -> Result<SeriesRecord> {
    g.check(h)?;
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        let next = g.commutator_subgroup(h, last)?;
        if next == *last {
            break;
        }
        terms.push(next);
    }
    let reached_trivial = terms.last().is_some_and(Subgroup::is_trivial);
    Ok(SeriesRecord {
        kind: SeriesKind::LowerCentral,
        terms,
        reached_trivial,
    })
}

/// Selection rule for the minimal normal subgroup taken at each step of a
/// chief series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiefSelection {
    First,
    Last,
}

/// A chief series of `h`, built upward from the trivial subgroup: each step
/// takes a normal subgroup of `h` minimal among those properly containing
/// the current term. Terms are returned from `h` down to 1.
pub fn chief_series(g: &FiniteGroup, h: &Subgroup, selection: ChiefSelection) -> Result<SeriesRecord> {
    let normals = normal_subgroups(g, h)?;
    let mut ascending = vec![g.trivial_subgroup()];
    while ascending.last().expect("nonempty").order() < h.order() {
        let current = ascending.last().expect("nonempty");
        let above: Vec<&Subgroup> = normals.iter().filter(|n| current.is_proper_subgroup_of(n)).collect();
        let minimal: Vec<&Subgroup> = above
            .iter()
            .copied()
            .filter(|n| !above.iter().any(|m| m.is_proper_subgroup_of(n)))
            .collect();
        let pick = match selection {
            ChiefSelection::First => minimal.first(),
            ChiefSelection::Last => minimal.last(),
        };
        ascending.push((*pick.expect("h itself is above")).clone());
    }
    ascending.reverse();
    Ok(SeriesRecord {
        kind: SeriesKind::Chief,
        terms: ascending,
        reached_trivial: true,
    })
}

pub fn is_solvable(g: &FiniteGroup, h: &Subgroup) -> Result<(bool, SeriesRecord)> {
    let series = derived_series(g, h)?;
    Ok((series.reached_trivial, series))
}

pub fn is_nilpotent(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    Ok(lower_central_series(g, h)?.reached_trivial)
}

/// Nilpotency via the Sylow criterion: every Sylow subgroup is normal.
pub fn all_sylows_normal(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    for p in prime_divisors(h.order() as u64) {
        let sylows = sylow(g, h, p)?;
        if sylows.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn supersolvable_with(g: &FiniteGroup, h: &Subgroup, selection: ChiefSelection) -> Result<bool> {
    let series = chief_series(g, h, selection)?;
    Ok(series
        .terms
        .windows(2)
        .all(|w| is_prime((w[0].order() / w[1].order()) as u64)))
}

/// Every chief factor has prime order.
pub fn is_supersolvable(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    supersolvable_with(g, h, ChiefSelection::First)
}

/// [`is_supersolvable`] using the other chief-series selection order.
pub fn is_supersolvable_alt(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    supersolvable_with(g, h, ChiefSelection::Last)
}

/// The normal p-complement of `h`: its unique normal subgroup of order
/// `|h|_{p'}`, if there is one.
pub fn is_p_nilpotent(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Option<Subgroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = h.order() / p_part(h.order() as u64, p) as usize;
    let mut found = normal_subgroups(g, h)?.into_iter().filter(|n| n.order() == target);
    let first = found.next();
    assert!(found.next().is_none(), "two normal p-complements");
    Ok(first)
}

/// Non-nilpotent with every maximal subgroup nilpotent.
pub fn is_minimal_non_nilpotent(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    if is_nilpotent(g, h)? {
        return Ok(false);
    }
    for m in maximal_subgroups(g, h)? {
        if !is_nilpotent(g, &m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The largest normal subgroup of `h` satisfying `pred`, which must be closed
/// under products of normal subgroups. Asserts that it contains every other.
fn largest_normal_with(
    g: &FiniteGroup,
    h: &Subgroup,
    mut pred: impl FnMut(&Subgroup) -> Result<bool>,
) -> Result<Subgroup> {
    let mut good = Vec::new();
    for n in normal_subgroups(g, h)? {
        if pred(&n)? {
            good.push(n);
        }
    }
    let top = good.iter().max_by_key(|n| n.order()).expect("trivial subgroup qualifies").clone();
    assert!(good.iter().all(|n| n.is_subgroup_of(&top)), "no unique largest member");
    Ok(top)
}

/// `F(h)`, the largest nilpotent normal subgroup.
pub fn fitting(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    largest_normal_with(g, h, |n| is_nilpotent(g, n))
}

/// `S(h)`, the largest solvable normal subgroup.
pub fn solvable_radical(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    largest_normal_with(g, h, |n| Ok(is_solvable(g, n)?.0))
}

/// `O^p(h)`, generated by the elements of order prime to `p`.
pub fn o_upper_p(g: &FiniteGroup, h: &Subgroup, p: u64) -> Result<Subgroup> {
    g.check(h)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut current = g.trivial_subgroup();
    for x in h.elements() {
        if !(g.element_order(x) as u64).is_multiple_of(p) && !current.contains(x) {
            current = g.extend(&current, &[x]);
        }
    }
    Ok(current)
}

/// The prime of a nontrivial p-group.
pub fn p_group_prime(p_sub: &Subgroup) -> Result<u64> {
    prime_power_decomposition(p_sub.order() as u64)
        .map(|(p, _)| p)
        .ok_or(Error::NotPGroup { order: p_sub.order() })
}

/// `J(P)`, generated by the abelian subgroups of `P` of largest order.
/// The trivial group is its own Thompson subgroup.
pub fn thompson_subgroup(g: &FiniteGroup, p_sub: &Subgroup) -> Result<Subgroup> {
    g.check(p_sub)?;
    if p_sub.is_trivial() {
        return Ok(p_sub.clone());
    }
    p_group_prime(p_sub)?;
    let abelian: Vec<Subgroup> = subgroups_of(g, p_sub)?
        .into_iter()
        .filter(|a| is_abelian_sub(g, a))
        .collect();
    let top = abelian.iter().map(Subgroup::order).max().expect("trivial is abelian");
    let mut j = g.trivial_subgroup();
    for a in abelian.iter().filter(|a| a.order() == top) {
        j = g.join(&j, a)?;
    }
    Ok(j)
}

/// `Z(J(P))`.
pub fn z_j(g: &FiniteGroup, p_sub: &Subgroup) -> Result<Subgroup> {
    let j = thompson_subgroup(g, p_sub)?;
    g.center_of(&j)
}

pub fn is_abelian_sub(g: &FiniteGroup, h: &Subgroup) -> bool {
    let gens: Vec<usize> = h.generators().collect();
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn is_cyclic_sub(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.elements().any(|x| g.element_order(x) == h.order())
}

/// A normal subgroup `L` of `h` with `NL = h` and `N ∩ L = 1`; the first in
/// canonical lattice order.
pub fn normal_complement(g: &FiniteGroup, h: &Subgroup, n: &Subgroup) -> Result<Option<Subgroup>> {
    g.check(n)?;
    if !n.is_subgroup_of(h) {
        return Err(Error::ForeignSubgroup);
    }
    let want = h.order() / n.order();
    for l in normal_subgroups(g, h)? {
        if l.order() == want && g.intersection(n, &l)?.is_trivial() {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Maximal subgroups of `h` that are their own normalizer in `h`.
pub fn self_normalizing_maximals(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for m in maximal_subgroups(g, h)? {
        if g.normalizer_in(h, &m)? == m {
            out.push(m);
        }
    }
    Ok(out)
}

/// Subgroups of `h` that are p-groups for some prime (trivial excluded).
pub fn p_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<(u64, Subgroup)>> {
    let l = lattice_of(g, h)?;
    Ok(l.subgroups()
        .iter()
        .filter_map(|s| prime_power_decomposition(s.order() as u64).map(|(p, _)| (p, s.clone())))
        .collect())
}
