//! Per-group evaluation of each suite's implication.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{GroupOutcome, SuiteId, WitnessStep};
use crate::corpus::{build_named, CorpusGroup, GroupKind};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::{frattini, lattice_of, normal_subgroups, subgroups_of, sylow};
use crate::map::{are_isomorphic, quotient, GroupMap};
use crate::nr::{hypothesis, is_nr_subgroup, is_special_in, nc1_premises, normal_closure, TheoremId};
use crate::numtheory::{
    is_prime, lemma3_scan, prime_divisors, primitive_prime_divisors, Lemma3Part, LEMMA3_T_CAP,
};
use crate::structure::{
    is_cyclic_sub, is_minimal_non_nilpotent, is_nilpotent, is_p_nilpotent, is_solvable, is_supersolvable,
    normal_complement, p_subgroups, self_normalizing_maximals, solvable_radical, z_j,
};
use crate::subgroup::Subgroup;

/// Largest order for the chain-sampling checks of `lem1`.
pub const LEM1_MAX_ORDER: usize = 60;

/// Odd primes covered by the `gt` suite.
pub const GT_PRIMES: [u64; 3] = [3, 5, 7];

pub(crate) fn eligible(suite: SuiteId, cg: &CorpusGroup) -> bool {
    match suite {
        SuiteId::Lem1 => cg.group.order() <= LEM1_MAX_ORDER,
        SuiteId::Lem9 => matches!(cg.spec.kind, GroupKind::Dihedral { .. }),
        _ => true,
    }
}

pub(crate) fn suite_notes(suite: SuiteId) -> Vec<String> {
    match suite {
        SuiteId::Lem1 => vec![format!(
            "chains sampled in groups of order <= {LEM1_MAX_ORDER}; parts (a) (b) (c) (d) (e)"
        )],
        SuiteId::Gt => vec![format!("primes {GT_PRIMES:?}")],
        _ => Vec::new(),
    }
}

pub(crate) fn run_group(suite: SuiteId, cg: &CorpusGroup) -> Result<GroupOutcome> {
    let g = &cg.group;
    let name = cg.spec.name.as_str();
    match suite {
        SuiteId::Th1 => theorem_solvable(g, name, TheoremId::Th1, suite),
        SuiteId::Cor => theorem_solvable(g, name, TheoremId::Cor, suite),
        SuiteId::Th2 => th2(g, name),
        SuiteId::Nc1 | SuiteId::Th4 => nc1_th4(g, name, suite),
        SuiteId::Th5 => th5(g, name),
        SuiteId::Lem1 => lem1(g, name),
        SuiteId::Lem2 => lem2(g, name),
        SuiteId::Lem7 => lem7(g, name),
        SuiteId::Lem8 => lem8(g, name),
        SuiteId::Lem9 => lem9(g, name, &cg.spec.kind),
        SuiteId::Nr1 => nr1(g, name),
        SuiteId::Sch => sch(g, name),
        SuiteId::Gt => gt(g, name),
        SuiteId::Lem3 | SuiteId::Zsi | SuiteId::Anchors | SuiteId::All => {
            unreachable!("not a per-group suite")
        }
    }
}

fn step(g: &FiniteGroup, role: &str, h: &Subgroup) -> WitnessStep {
    WitnessStep::new(g, role, h)
}

fn solvability_text(g: &FiniteGroup) -> Result<(bool, String)> {
    let (ok, series) = is_solvable(g, &g.whole())?;
    Ok((ok, format!("derived series orders {:?}", series.orders())))
}

fn theorem_solvable(g: &FiniteGroup, name: &str, id: TheoremId, suite: SuiteId) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    if !hypothesis(g, id)?.holds {
        return Ok(out);
    }
    out.premise();
    let (ok, text) = solvability_text(g)?;
    if !ok {
        out.fail(suite, name, vec![step(g, "G", &g.whole())], "solvable", text);
    }
    Ok(out)
}

fn alternating5() -> FiniteGroup {
    build_named("A5", GroupKind::Alternating { n: 5 }).expect("A5 builds")
}

fn th2(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    if !hypothesis(g, TheoremId::Th2)?.holds {
        return Ok(out);
    }
    out.premise();
    let radical = solvable_radical(g, &g.whole())?;
    let (q, _) = quotient(g, &radical)?;
    if q.order() == 1 {
        return Ok(out);
    }
    if are_isomorphic(&q, &alternating5()).is_some() {
        out.notes.push(format!("{name}: G/S(G) is isomorphic to A5 (|S(G)| = {})", radical.order()));
    } else {
        out.fail(
            SuiteId::Th2,
            name,
            vec![step(g, "G", &g.whole()), step(g, "S(G)", &radical)],
            "G/S(G) trivial or isomorphic to A5",
            format!("G/S(G) of order {}", q.order()),
        );
    }
    Ok(out)
}

fn nc1_th4(g: &FiniteGroup, name: &str, suite: SuiteId) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    let mut example_noted = false;
    for (p, sub) in p_subgroups(g, &whole)? {
        let prem = nc1_premises(g, &sub)?;
        if !prem.holds {
            continue;
        }
        let n = &prem.normalizer;
        let chain = |extra: Option<(&str, &Subgroup)>| {
            let mut c = vec![step(g, "G", &whole), step(g, "P", &sub), step(g, "N", n)];
            if let Some((role, h)) = extra {
                c.push(step(g, role, h));
            }
            c
        };
        if suite == SuiteId::Nc1 {
            out.premise();
            match normal_complement(g, &whole, n)? {
                Some(t) if !(t.order() as u64).is_multiple_of(p) => {
                    if !example_noted && !t.is_trivial() {
                        example_noted = true;
                        out.notes.push(format!(
                            "{name}: p = {p}, P = <{}>, |N| = {}, T = <{}> of order {}",
                            g.describe(&sub).join(", "),
                            n.order(),
                            g.describe(&t).join(", "),
                            t.order()
                        ));
                    }
                }
                Some(t) => out.fail(
                    suite,
                    name,
                    chain(Some(("T", &t))),
                    "normal complement of p'-order",
                    format!("complement of order {} divisible by {p}", t.order()),
                ),
                None => out.fail(suite, name, chain(None), "normal complement of N", "none".into()),
            }
        } else {
            if is_p_nilpotent(g, n, p)?.is_none() {
                continue;
            }
            out.premise();
            if is_p_nilpotent(g, &whole, p)?.is_none() {
                out.fail(
                    suite,
                    name,
                    chain(None),
                    &format!("G is {p}-nilpotent"),
                    "no normal p-complement".into(),
                );
            }
        }
    }
    Ok(out)
}

fn th5(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    let mut g_super = None;
    for h in subgroups_of(g, &whole)? {
        if !is_prime(h.index_in(&whole) as u64) || !is_supersolvable(g, &h)? || !is_nr_subgroup(g, &h)?.is_nr {
            continue;
        }
        out.premise();
        let ok = match g_super {
            Some(v) => v,
            None => *g_super.insert(is_supersolvable(g, &whole)?),
        };
        if !ok {
            out.fail(
                SuiteId::Th5,
                name,
                vec![step(g, "G", &whole), step(g, "H", &h)],
                "G supersolvable",
                "G not supersolvable".into(),
            );
        }
    }
    Ok(out)
}

/// Checks parts (a) to (e) over every chain of the lattice.
fn lem1(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    let lattice = lattice_of(g, &whole)?;
    let subs = lattice.subgroups();
    let suite = SuiteId::Lem1;
    let mut quotients: HashMap<FixedBitSet, (FiniteGroup, GroupMap)> = HashMap::new();
    let mut quotient_of = |m: &Subgroup| -> Result<(FiniteGroup, GroupMap)> {
        if let Some(q) = quotients.get(&m.members) {
            return Ok(q.clone());
        }
        let q = quotient(g, m)?;
        quotients.insert(m.members.clone(), q.clone());
        Ok(q)
    };

    for h in subs {
        let h_is_nr = is_nr_subgroup(g, h)?.is_nr;
        let mut seen_closures: Vec<Subgroup> = Vec::new();
        for k in normal_subgroups(g, h)? {
            let closure = normal_closure(g, &k)?;
            if g.intersection(&closure, h)? != k {
                continue;
            }
            let base = || vec![step(g, "G", &whole), step(g, "H", h), step(g, "K", &k)];

            // (a): every T between H and G
            for t in subs.iter().filter(|t| h.is_subgroup_of(t)) {
                out.premise();
                if !is_special_in(g, t, h, &k)? {
                    let mut w = base();
                    w.push(step(g, "T", t));
                    out.fail(suite, name, w, "(a) (T, H, K) special in T", "not special".into());
                }
            }

            // (b), read through the correspondence with subgroups above K^G
            let hm = g.join(h, &closure)?;
            for l in subs.iter().filter(|l| closure.is_subgroup_of(l) && l.is_subgroup_of(&hm)) {
                if !g.is_normal_in(&hm, l)? {
                    continue;
                }
                let lh = g.intersection(l, h)?;
                if g.intersection(&normal_closure(g, &lh)?, h)? != lh {
                    continue;
                }
                out.premise();
                if g.intersection(&normal_closure(g, l)?, &hm)? != *l {
                    let mut w = base();
                    w.push(step(g, "L", l));
                    out.fail(
                        suite,
                        name,
                        w,
                        "(b) (G/K^G, HK^G/K^G, L/K^G) special",
                        "not special".into(),
                    );
                }
            }

            // (c), through an explicit quotient
            if h_is_nr && !seen_closures.contains(&closure) {
                seen_closures.push(closure.clone());
                out.premise();
                let (q, proj) = quotient_of(&closure)?;
                let image = proj.image_of(h)?;
                if !is_nr_subgroup(&q, &image)?.is_nr {
                    out.fail(suite, name, base(), "(c) HK^G/K^G NR in G/K^G", "not NR".into());
                }
            }
        }

        // (e): factorizations G = HL with H ∩ L normal in H
        for l in subs {
            if h.order() * l.order() < whole.order() {
                continue;
            }
            let k = g.intersection(h, l)?;
            if h.order() * l.order() / k.order() != whole.order() || !g.is_normal_in(h, &k)? {
                continue;
            }
            out.premise();
            if g.intersection(&normal_closure(g, &k)?, h)? != k {
                out.fail(
                    suite,
                    name,
                    vec![step(g, "G", &whole), step(g, "H", h), step(g, "L", l), step(g, "K", &k)],
                    "(e) (G, H, H ∩ L) special",
                    "not special".into(),
                );
            }
        }
    }

    // (d): the first theorem's hypothesis passes to quotients
    if hypothesis(g, TheoremId::Th1)?.holds {
        for k in normal_subgroups(g, &whole)? {
            out.premise();
            let (q, _) = quotient_of(&k)?;
            if !hypothesis(&q, TheoremId::Th1)?.holds {
                out.fail(
                    suite,
                    name,
                    vec![step(g, "G", &whole), step(g, "K", &k)],
                    "(d) hypothesis holds in G/K",
                    "fails".into(),
                );
            }
        }
    }
    if out.checks == 0 {
        out.holds = Some(false);
    }
    Ok(out)
}

fn lem2(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    let normals = normal_subgroups(g, &whole)?;
    for p in prime_divisors(g.order() as u64) {
        let sylow_p = sylow(g, &whole, p)?.swap_remove(0);
        let phi = frattini(g, &sylow_p)?;
        for h in &normals {
            if !g.intersection(h, &sylow_p)?.is_subgroup_of(&phi) {
                continue;
            }
            out.premise();
            if is_p_nilpotent(g, h, p)?.is_none() {
                out.fail(
                    SuiteId::Lem2,
                    name,
                    vec![step(g, "G", &whole), step(g, "H", h), step(g, "P", &sylow_p)],
                    &format!("H is {p}-nilpotent"),
                    "no normal p-complement".into(),
                );
            }
        }
    }
    Ok(out)
}

fn lem7(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    let mut g_super = None;
    for a in normal_subgroups(g, &whole)? {
        if !is_prime(a.order() as u64) {
            continue;
        }
        out.premise();
        let lhs = match g_super {
            Some(v) => v,
            None => *g_super.insert(is_supersolvable(g, &whole)?),
        };
        let (q, _) = quotient(g, &a)?;
        let rhs = is_supersolvable(&q, &q.whole())?;
        if lhs != rhs {
            out.fail(
                SuiteId::Lem7,
                name,
                vec![step(g, "G", &whole), step(g, "A", &a)],
                "G supersolvable iff G/A supersolvable",
                format!("G: {lhs}, G/A: {rhs}"),
            );
        }
    }
    Ok(out)
}

fn lem8(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    for h in normal_subgroups(g, &whole)? {
        for p in prime_divisors(h.order() as u64) {
            let Some(k) = is_p_nilpotent(g, &h, p)? else {
                continue;
            };
            out.premise();
            if !g.is_normal(&k)? {
                out.fail(
                    SuiteId::Lem8,
                    name,
                    vec![step(g, "G", &whole), step(g, "H", &h), step(g, "K", &k)],
                    "K normal in G",
                    "not normal".into(),
                );
            }
        }
    }
    Ok(out)
}

fn lem9(g: &FiniteGroup, name: &str, kind: &GroupKind) -> Result<GroupOutcome> {
    let GroupKind::Dihedral { n } = *kind else {
        unreachable!("filtered by eligibility")
    };
    let t = n / 2;
    let mut out = GroupOutcome::default();
    let whole = g.whole();
    let nilpotent = is_nilpotent(g, &whole)?;
    let want_nilpotent = t.is_power_of_two();
    out.checks += 1;
    if nilpotent != want_nilpotent {
        out.fail(
            SuiteId::Lem9,
            name,
            vec![step(g, "G", &whole)],
            &format!("nilpotent = {want_nilpotent} for t = {t}"),
            format!("nilpotent = {nilpotent}"),
        );
    }
    let mnn = is_minimal_non_nilpotent(g, &whole)?;
    let want_mnn = t % 2 == 1 && is_prime(t as u64);
    out.checks += 1;
    if mnn != want_mnn {
        out.fail(
            SuiteId::Lem9,
            name,
            vec![step(g, "G", &whole)],
            &format!("minimal non-nilpotent = {want_mnn} for t = {t}"),
            format!("minimal non-nilpotent = {mnn}"),
        );
    }
    Ok(out)
}

fn nr1(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    for m in self_normalizing_maximals(g, &whole)? {
        if !is_nilpotent(g, &m)? {
            return Ok(out);
        }
    }
    out.premise();
    let (ok, text) = solvability_text(g)?;
    if !ok {
        out.fail(SuiteId::Nr1, name, vec![step(g, "G", &whole)], "solvable", text);
    }
    Ok(out)
}

fn sch(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    if !is_minimal_non_nilpotent(g, &whole)? {
        return Ok(out);
    }
    out.premise();
    let mut problems = Vec::new();
    if !solvability_text(g)?.0 {
        problems.push("not solvable".to_string());
    }
    let primes = prime_divisors(g.order() as u64);
    if primes.len() != 2 {
        problems.push(format!("order {} has prime divisors {primes:?}", g.order()));
    } else {
        let mut structured = false;
        for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
            let sp = sylow(g, &whole, p)?;
            let sq = sylow(g, &whole, q)?;
            if sp.len() == 1 && is_cyclic_sub(g, &sq[0]) {
                structured = true;
                out.notes.push(format!(
                    "{name}: normal Sylow {p}-subgroup of order {}, cyclic Sylow {q}-subgroup of order {}",
                    sp[0].order(),
                    sq[0].order()
                ));
                break;
            }
        }
        if !structured {
            problems.push("no normal Sylow p with cyclic Sylow q".to_string());
        }
    }
    if !problems.is_empty() {
        out.fail(
            SuiteId::Sch,
            name,
            vec![step(g, "G", &whole)],
            "solvable, |G| = p^m q^n, normal Sylow p, cyclic Sylow q",
            problems.join("; "),
        );
    }
    Ok(out)
}

fn gt(g: &FiniteGroup, name: &str) -> Result<GroupOutcome> {
    let mut out = GroupOutcome {
        holds: Some(false),
        ..GroupOutcome::default()
    };
    let whole = g.whole();
    for p in GT_PRIMES {
        if !(g.order() as u64).is_multiple_of(p) {
            continue;
        }
        let sylow_p = sylow(g, &whole, p)?.swap_remove(0);
        let zj = z_j(g, &sylow_p)?;
        let n = g.normalizer(&zj)?;
        if is_p_nilpotent(g, &n, p)?.is_none() {
            continue;
        }
        out.premise();
        if is_p_nilpotent(g, &whole, p)?.is_none() {
            out.fail(
                SuiteId::Gt,
                name,
                vec![step(g, "G", &whole), step(g, "P", &sylow_p), step(g, "Z(J(P))", &zj), step(g, "N", &n)],
                &format!("G is {p}-nilpotent"),
                "no normal p-complement".into(),
            );
        }
    }
    Ok(out)
}

pub(crate) fn lemma3() -> GroupOutcome {
    let mut out = GroupOutcome::default();
    let expected = [
        (Lemma3Part::A, vec![3u32]),
        (Lemma3Part::B, vec![0u32, 1, 2, 3]),
    ];
    for t_max in [60, LEMMA3_T_CAP] {
        for (part, want) in &expected {
            out.checks += 1;
            let got: Vec<u32> = lemma3_scan(*part, t_max)
                .expect("t_max in range")
                .into_iter()
                .collect();
            if got != *want {
                out.fail(
                    SuiteId::Lem3,
                    "-",
                    Vec::new(),
                    &format!("part {part:?} up to {t_max}: {want:?}"),
                    format!("{got:?}"),
                );
            } else {
                out.notes.push(format!("part {part:?}, t <= {t_max}: {got:?}"));
            }
        }
    }
    out
}

pub(crate) fn zsigmondy() -> GroupOutcome {
    let mut out = GroupOutcome::default();
    for q in 2u128..=10 {
        for n in 3u32..=12 {
            out.checks += 1;
            let divisors = primitive_prime_divisors(q, n).expect("q >= 2, n >= 3");
            let exceptional = (q, n) == (2, 6);
            let label = format!("q = {q}, n = {n}");
            if divisors.is_empty() != exceptional {
                out.fail(
                    SuiteId::Zsi,
                    &label,
                    Vec::new(),
                    if exceptional { "no primitive prime divisor" } else { "a primitive prime divisor" },
                    format!("{divisors:?}"),
                );
            }
            // a primitive divisor r has q of order n mod r, so n | r − 1
            if let Some(r) = divisors.iter().find(|&&r| r % n as u128 != 1) {
                out.fail(
                    SuiteId::Zsi,
                    &label,
                    Vec::new(),
                    "every primitive prime divisor is 1 mod n",
                    format!("{r}"),
                );
            }
        }
    }
    out.notes.push("2 <= q <= 10, 3 <= n <= 12; (2, 6) is the only empty case".into());
    out
}
