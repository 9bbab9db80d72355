//! Fixed facts about A3, A4, S4, A5 and L2(q) that the suites are calibrated
//! against.

use serde::Serialize;

use crate::corpus::{build_named, GroupKind};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::{all_subgroups, maximal_subgroups, n_maximal_subgroups, normal_subgroups};
use crate::map::{are_isomorphic, quotient};
use crate::nr::{hypothesis, is_nr_subgroup, normal_closure, TheoremId};
use crate::structure::{is_nilpotent, is_supersolvable, solvable_radical};

/// Distinct groups the anchors are evaluated on: A4, S4, A5, L2(5), L2(7).
pub const ANCHOR_GROUPS: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct AnchorCheck {
    pub name: String,
    pub group: String,
    pub passed: bool,
    pub detail: String,
    /// Set when the computed answer is worth a human look even though the
    /// check itself passes.
    pub flag: Option<String>,
}

impl AnchorCheck {
    pub fn line(&self) -> String {
        let status = if self.passed { "pass" } else { "FAIL" };
        format!("{}: {status} ({})", self.name, self.detail)
    }
}

fn check(name: &str, group: &str, passed: bool, detail: String) -> AnchorCheck {
    AnchorCheck {
        name: name.to_string(),
        group: group.to_string(),
        passed,
        detail,
        flag: None,
    }
}

fn make(name: &str, kind: GroupKind) -> FiniteGroup {
    build_named(name, kind).expect("anchor group builds")
}

/// NR verdict for one conjugacy class of maximal subgroups of S4.
#[derive(Debug, Clone, Serialize)]
pub struct MaximalClassVerdict {
    pub label: String,
    pub order: usize,
    pub class_size: usize,
    pub normal: bool,
    pub self_normalizing: bool,
    pub nilpotent: bool,
    pub is_nr: bool,
}

/// Computed NR verdicts for the three classes of maximal subgroups of S4.
pub fn s4_maximal_classes() -> Result<Vec<MaximalClassVerdict>> {
    let s4 = make("S4", GroupKind::Symmetric { n: 4 });
    let lattice = all_subgroups(&s4, 24)?;
    let maximals = maximal_subgroups(&s4, &s4.whole())?;
    let mut out: Vec<MaximalClassVerdict> = Vec::new();
    let mut seen_classes = Vec::new();
    for m in &maximals {
        let class = lattice.class_id(lattice.position(m).expect("in lattice"));
        if seen_classes.contains(&class) {
            continue;
        }
        seen_classes.push(class);
        let label = match m.order() {
            12 => "A4",
            8 => "D8",
            6 => "S3",
            _ => "?",
        };
        let class_size = maximals
            .iter()
            .filter(|x| lattice.class_id(lattice.position(x).expect("in lattice")) == class)
            .count();
        out.push(MaximalClassVerdict {
            label: label.to_string(),
            order: m.order(),
            class_size,
            normal: s4.is_normal(m)?,
            self_normalizing: s4.normalizer(m)? == *m,
            nilpotent: is_nilpotent(&s4, m)?,
            is_nr: is_nr_subgroup(&s4, m)?.is_nr,
        });
    }
    out.sort_by_key(|c| std::cmp::Reverse(c.order));
    Ok(out)
}

/// Evaluates every anchor. Infallible by construction: any internal error
/// turns into a failed check.
pub fn anchor_checks() -> Vec<AnchorCheck> {
    let mut out = Vec::new();
    let a4 = make("A4", GroupKind::Alternating { n: 4 });
    let s4 = make("S4", GroupKind::Symmetric { n: 4 });
    let a5 = make("A5", GroupKind::Alternating { n: 5 });
    let l5 = make("L2(5)", GroupKind::Psl2 { q: 5 });
    let l7 = make("L2(7)", GroupKind::Psl2 { q: 7 });

    let mut push = |name: &str, group: &str, r: Result<AnchorCheck>| {
        out.push(r.unwrap_or_else(|e| check(name, group, false, format!("error: {e}"))));
    };

    let name = "every 2-maximal subgroup of A5 is nilpotent";
    push(name, "A5", (|| {
        let two = n_maximal_subgroups(&a5, &a5.whole(), 2)?;
        let mut orders = Vec::new();
        let mut all = true;
        for h in &two {
            all &= is_nilpotent(&a5, h)?;
            orders.push(h.order());
        }
        orders.sort_unstable();
        orders.dedup();
        Ok(check(name, "A5", all, format!("{} subgroups, orders {orders:?}", two.len())))
    })());

    let name = "every 3-maximal subgroup of A5 is NR";
    push(name, "A5", (|| {
        let three = n_maximal_subgroups(&a5, &a5.whole(), 3)?;
        let mut all = true;
        for h in &three {
            all &= is_nr_subgroup(&a5, h)?.is_nr;
        }
        Ok(check(name, "A5", all, format!("{} subgroups", three.len())))
    })());

    let name = "V4 in A5 is not NR, witnessed by an order-2 K with K^A5 meeting V4 in V4";
    push(name, "A5", (|| {
        let v4 = a5.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"])?;
        let v = is_nr_subgroup(&a5, &v4)?;
        let ok = match &v.witness {
            Some(w) => !v.is_nr && w.k.order() == 2 && w.meet == v4 && w.closure == a5.whole(),
            None => false,
        };
        let detail = match &v.witness {
            Some(w) => format!("K = <{}>, |K^A5| = {}", a5.describe(&w.k).join(", "), w.closure.order()),
            None => "no witness".into(),
        };
        Ok(check(name, "A5", ok, detail))
    })());

    let name = "A3 is a supersolvable maximal NR-subgroup of A4 of index 4";
    push(name, "A4", (|| {
        let a3 = a4.subgroup_from_cycles(&["(1 2 3)"])?;
        let maximal = maximal_subgroups(&a4, &a4.whole())?.contains(&a3);
        let nr = is_nr_subgroup(&a4, &a3)?.is_nr;
        let ss = is_supersolvable(&a4, &a3)?;
        let index = a3.index_in(&a4.whole());
        Ok(check(
            name,
            "A4",
            maximal && nr && ss && index == 4,
            format!("maximal {maximal}, NR {nr}, supersolvable {ss}, index {index}"),
        ))
    })());

    let name = "A4 is not supersolvable";
    push(name, "A4", (|| {
        let ss = is_supersolvable(&a4, &a4.whole())?;
        Ok(check(name, "A4", !ss, format!("supersolvable {ss}")))
    })());

    let name = "S4 maximal classes: S3 is NR, D8 is not";
    push(name, "S4", (|| {
        let classes = s4_maximal_classes()?;
        let verdict = |label: &str| classes.iter().find(|c| c.label == label).map(|c| c.is_nr);
        let ok = classes.len() == 3 && verdict("S3") == Some(true) && verdict("D8") == Some(false);
        let detail = classes
            .iter()
            .map(|c| format!("{} NR {}", c.label, c.is_nr))
            .collect::<Vec<_>>()
            .join(", ");
        let mut c = check(name, "S4", ok, detail);
        if let Some(a4c) = classes.iter().find(|c| c.label == "A4") {
            if a4c.is_nr && !a4c.self_normalizing {
                c.flag = Some(
                    "S4: A4 is normal (not self-normalizing) and non-nilpotent, yet every normal \
                     subgroup of A4 is normal in S4, so A4 is NR; the NR maximal subgroups of S4 are \
                     not only the self-normalizing non-nilpotent ones"
                        .into(),
                );
            }
        }
        Ok(c)
    })());

    let name = "L2(7) has order 168, is simple, and has a maximal subgroup isomorphic to S4";
    push(name, "L2(7)", (|| {
        let order = l7.order();
        let normals = normal_subgroups(&l7, &l7.whole())?.len();
        let mut s4_maximal = false;
        for m in maximal_subgroups(&l7, &l7.whole())?.iter().filter(|m| m.order() == 24) {
            let sub = l7.subgroup_as_group(m)?;
            if are_isomorphic(&sub, &s4).is_some() {
                s4_maximal = true;
                break;
            }
        }
        Ok(check(
            name,
            "L2(7)",
            order == 168 && normals == 2 && s4_maximal,
            format!("order {order}, {normals} normal subgroups, S4 maximal {s4_maximal}"),
        ))
    })());

    let name = "L2(5) is isomorphic to A5";
    push(name, "L2(5)", Ok(check(name, "L2(5)", are_isomorphic(&l5, &a5).is_some(), format!("order {}", l5.order()))));

    let name = "S4 has 30 subgroups";
    push(name, "S4", (|| {
        let n = all_subgroups(&s4, 24)?.len();
        Ok(check(name, "S4", n == 30, format!("{n}")))
    })());

    let name = "A5 has 59 subgroups";
    push(name, "A5", (|| {
        let n = all_subgroups(&a5, 60)?.len();
        Ok(check(name, "A5", n == 59, format!("{n}")))
    })());

    let name = "A5 satisfies the 2-maximal hypothesis and A5/S(A5) is isomorphic to A5";
    push(name, "A5", (|| {
        let holds = hypothesis(&a5, TheoremId::Th2)?.holds;
        let radical = solvable_radical(&a5, &a5.whole())?;
        let (q, _) = quotient(&a5, &radical)?;
        let iso = are_isomorphic(&q, &a5).is_some();
        Ok(check(name, "A5", holds && iso, format!("hypothesis {holds}, |S(A5)| = {}", radical.order())))
    })());

    let name = "A5 fails the all-2-maximal hypothesis, witnessed by V4";
    push(name, "A5", (|| {
        let v = hypothesis(&a5, TheoremId::Cor)?;
        let v4_witness = v.witnesses.iter().any(|w| w.order == 4);
        let v4 = a5.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"])?;
        let k = a5.subgroup_from_cycles(&["(1 2)(3 4)"])?;
        let closure_is_a5 = normal_closure(&a5, &k)? == a5.whole();
        Ok(check(
            name,
            "A5",
            !v.holds && v4_witness && closure_is_a5 && !is_nr_subgroup(&a5, &v4)?.is_nr,
            format!("{} witnesses", v.witnesses.len()),
        ))
    })());

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_anchors_pass() {
        for c in anchor_checks() {
            assert!(c.passed, "{}", c.line());
        }
    }

    #[test]
    fn s4_classes() {
        let classes = s4_maximal_classes().unwrap();
        let labels: Vec<&str> = classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["A4", "D8", "S3"]);
        let sizes: Vec<usize> = classes.iter().map(|c| c.class_size).collect();
        assert_eq!(sizes, [1, 3, 4]);
        assert!(classes[0].is_nr && classes[0].normal);
        assert!(!classes[1].is_nr && classes[1].nilpotent);
        assert!(classes[2].is_nr && classes[2].self_normalizing);
    }
}
