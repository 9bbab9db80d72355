//! Normal closures, special triples, NR- and NE-subgroups, and the
//! hypotheses of the solvability and normal-complement criteria.
//!
//! A triple `(G, H, K)` with `K ⊴ H ≤ G` is special when `K^G ∩ H = K`.
//! `H` is an NR-subgroup when every normal subgroup of `H` gives a special
//! triple, and `K` is an NE-subgroup when `(G, N_G(K), K)` is special.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{frattini, is_subnormal, maximal_subgroups, n_maximal_subgroups, normal_subgroups};
use crate::numtheory::is_prime;
use crate::structure::{is_nilpotent, is_p_nilpotent, is_supersolvable, p_group_prime, p_subgroups};
use crate::subgroup::Subgroup;

/// `K^G`, the smallest normal subgroup of `g` containing `k`.
pub fn normal_closure(g: &FiniteGroup, k: &Subgroup) -> Result<Subgroup> {
    g.normal_closure_in(&g.whole(), k)
}

#[derive(Debug, Clone)]
pub struct SpecialTripleRecord {
    pub group: FiniteGroup,
    pub h: Subgroup,
    pub k: Subgroup,
    /// `K^G`
    pub closure: Subgroup,
    /// `K^G ∩ H`
    pub meet: Subgroup,
    pub special: bool,
}

pub fn is_special_triple(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<SpecialTripleRecord> {
    g.check(h)?;
    g.check(k)?;
    if !k.is_subgroup_of(h) {
        return Err(Error::ChainViolation);
    }
    if !g.is_normal_in(h, k)? {
        return Err(Error::NotNormalInH);
    }
    Ok(special_unchecked(g, h, k))
}

fn special_unchecked(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> SpecialTripleRecord {
    let closure = normal_closure(g, k).expect("own subgroup");
    let meet = g.intersection(&closure, h).expect("own subgroups");
    let special = meet == *k;
    SpecialTripleRecord {
        group: g.clone(),
        h: h.clone(),
        k: k.clone(),
        closure,
        meet,
        special,
    }
}

/// Special-triple check inside an ambient subgroup `t`: `K^T ∩ H = K`.
pub fn is_special_in(g: &FiniteGroup, t: &Subgroup, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    if !h.is_subgroup_of(t) || !k.is_subgroup_of(h) {
        return Err(Error::ChainViolation);
    }
    let closure = g.normal_closure_in(t, k)?;
    Ok(g.intersection(&closure, h)? == *k)
}

#[derive(Debug, Clone)]
pub struct NrVerdict {
    pub is_nr: bool,
    /// The first normal subgroup of `H`, in canonical order, whose triple is
    /// not special.
    pub witness: Option<SpecialTripleRecord>,
}

pub fn is_nr_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<NrVerdict> {
    g.check(h)?;
    for k in normal_subgroups(g, h)? {
        let rec = special_unchecked(g, h, &k);
        if !rec.special {
            return Ok(NrVerdict {
                is_nr: false,
                witness: Some(rec),
            });
        }
    }
    Ok(NrVerdict {
        is_nr: true,
        witness: None,
    })
}

/// Whether `(G, N_G(K), K)` is special; the record carries the trail.
pub fn is_ne_subgroup(g: &FiniteGroup, k: &Subgroup) -> Result<SpecialTripleRecord> {
    let n = g.normalizer(k)?;
    Ok(special_unchecked(g, &n, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Th1,
    Th2,
    Cor,
    Nc1,
    Th4,
    Th5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Th1,
        TheoremId::Th2,
        TheoremId::Cor,
        TheoremId::Nc1,
        TheoremId::Th4,
        TheoremId::Th5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Th1 => "th1",
            TheoremId::Th2 => "th2",
            TheoremId::Cor => "cor",
            TheoremId::Nc1 => "nc1",
            TheoremId::Th4 => "th4",
            TheoremId::Th5 => "th5",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheoremId(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Generators of the subgroup in cycle notation.
    pub subgroup: Vec<String>,
    pub order: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisVerdict {
    pub theorem_id: TheoremId,
    pub holds: bool,
    /// Violations when `holds` is false. For the existential hypotheses
    /// (`nc1`, `th4`, `th5`) the satisfying instances when `holds` is true.
    pub witnesses: Vec<Witness>,
}

fn witness(g: &FiniteGroup, h: &Subgroup, reason: impl Into<String>) -> Witness {
    Witness {
        subgroup: g.describe(h),
        order: h.order(),
        reason: reason.into(),
    }
}

/// Evaluates a theorem's hypothesis on `g` literally.
///
/// * `th1`: every non-nilpotent maximal subgroup is normal or NR.
/// * `th2`: every non-nilpotent 2-maximal subgroup is subnormal or NR.
/// * `cor`: every 2-maximal subgroup is subnormal or NR.
/// * `nc1`: some nontrivial p-subgroup `P` makes `(G, N_G(P), P)` and
///   `(G, N_G(P), Φ(P))` special.
/// * `th4`: as `nc1`, with `N_G(P)` also p-nilpotent.
/// * `th5`: some supersolvable NR-subgroup has prime index.
pub fn hypothesis(g: &FiniteGroup, theorem: TheoremId) -> Result<HypothesisVerdict> {
    let whole = g.whole();
    let mut witnesses = Vec::new();
    let holds = match theorem {
        TheoremId::Th1 => {
            for m in maximal_subgroups(g, &whole)? {
                if is_nilpotent(g, &m)? {
                    continue;
                }
                if !g.is_normal(&m)? && !is_nr_subgroup(g, &m)?.is_nr {
                    witnesses.push(witness(g, &m, "non-nilpotent maximal subgroup, neither normal nor NR"));
                }
            }
            witnesses.is_empty()
        }
        TheoremId::Th2 | TheoremId::Cor => {
            for h in n_maximal_subgroups(g, &whole, 2)? {
                if theorem == TheoremId::Th2 && is_nilpotent(g, &h)? {
                    continue;
                }
                if !is_subnormal(g, &h)? && !is_nr_subgroup(g, &h)?.is_nr {
                    witnesses.push(witness(g, &h, "2-maximal subgroup, neither subnormal nor NR"));
                }
            }
            witnesses.is_empty()
        }
        TheoremId::Nc1 | TheoremId::Th4 => {
            for (p, sub) in p_subgroups(g, &whole)? {
                let prem = nc1_premises(g, &sub)?;
                if !prem.holds {
                    continue;
                }
                if theorem == TheoremId::Th4 && is_p_nilpotent(g, &prem.normalizer, p)?.is_none() {
                    continue;
                }
                witnesses.push(witness(g, &sub, format!("{p}-subgroup satisfying the premises")));
            }
            if witnesses.is_empty() {
                witnesses.push(witness(g, &whole, "no nontrivial p-subgroup satisfies the premises"));
                false
            } else {
                true
            }
        }
        TheoremId::Th5 => {
            for h in crate::lattice::subgroups_of(g, &whole)? {
                if !is_prime(h.index_in(&whole) as u64) {
                    continue;
                }
                if is_nr_subgroup(g, &h)?.is_nr && is_supersolvable(g, &h)? {
                    witnesses.push(witness(g, &h, "supersolvable NR-subgroup of prime index"));
                }
            }
            if witnesses.is_empty() {
                witnesses.push(witness(g, &whole, "no supersolvable NR-subgroup of prime index"));
                false
            } else {
                true
            }
        }
    };
    Ok(HypothesisVerdict {
        theorem_id: theorem,
        holds,
        witnesses,
    })
}

#[derive(Debug, Clone)]
pub struct Nc1Premises {
    pub holds: bool,
    pub prime: u64,
    /// `N_G(P)`
    pub normalizer: Subgroup,
    /// `Φ(P)`
    pub frattini: Subgroup,
    pub p_triple_special: bool,
    pub frattini_triple_special: bool,
}

/// Whether `(G, N, P)` and `(G, N, Φ(P))` are special for `N = N_G(P)`.
/// The prime is read off `|P|`; the trivial subgroup is rejected.
pub fn nc1_premises(g: &FiniteGroup, p_sub: &Subgroup) -> Result<Nc1Premises> {
    g.check(p_sub)?;
    let prime = p_group_prime(p_sub)?;
    let normalizer = g.normalizer(p_sub)?;
    let phi = frattini(g, p_sub)?;
    let p_triple_special = special_unchecked(g, &normalizer, p_sub).special;
    // Φ(P) is characteristic in P ⊴ N, hence normal in N
    let frattini_triple_special = special_unchecked(g, &normalizer, &phi).special;
    Ok(Nc1Premises {
        holds: p_triple_special && frattini_triple_special,
        prime,
        normalizer,
        frattini: phi,
        p_triple_special,
        frattini_triple_special,
    })
}
