//! Structural identities checked over every corpus group small enough to
//! enumerate its lattice.

use normres::lattice::{all_subgroups, frattini, maximal_subgroups, n_maximal_subgroups, normal_subgroups, sylow};
use normres::numtheory::{p_part, prime_divisors};
use normres::structure::{
    all_sylows_normal, fitting, is_nilpotent, is_solvable, is_supersolvable, is_supersolvable_alt,
};
use normres::{Corpus, FiniteGroup};

const CAP: usize = 200;

fn small_groups() -> Vec<FiniteGroup> {
    Corpus::default_corpus()
        .groups
        .iter()
        .map(|c| c.group.clone())
        .filter(|g| g.order() <= CAP)
        .collect()
}

#[test]
fn sylow_counts() {
    for g in small_groups() {
        let n = g.order() as u64;
        for p in prime_divisors(n) {
            let sylows = sylow(&g, &g.whole(), p).unwrap();
            let count = sylows.len() as u64;
            assert_eq!(count % p, 1, "{}: n_{p} = {count}", g.label());
            assert_eq!((n / p_part(n, p)) % count, 0, "{}: n_{p} = {count}", g.label());
            for s in &sylows {
                assert_eq!(s.order() as u64, p_part(n, p));
            }
        }
    }
}

#[test]
fn nilpotent_iff_sylows_normal() {
    for g in small_groups() {
        for h in all_subgroups(&g, CAP).unwrap().subgroups() {
            assert_eq!(is_nilpotent(&g, h).unwrap(), all_sylows_normal(&g, h).unwrap(), "{}", g.label());
        }
    }
}

#[test]
fn supersolvable_selections_agree() {
    for g in small_groups() {
        for h in all_subgroups(&g, CAP).unwrap().subgroups() {
            assert_eq!(is_supersolvable(&g, h).unwrap(), is_supersolvable_alt(&g, h).unwrap(), "{}", g.label());
        }
    }
}

#[test]
fn solvability_below_sixty() {
    for g in Corpus::default_corpus().groups.iter().map(|c| &c.group) {
        let (solvable, series) = is_solvable(g, &g.whole()).unwrap();
        let orders = series.orders();
        assert_eq!(orders.first(), Some(&g.order()));
        if g.order() < 60 {
            assert!(solvable, "{}", g.label());
        }
        if g.order() == 60 {
            assert_eq!(solvable, g.label() != "A5" && g.label() != "L2(5)", "{}", g.label());
        }
    }
}

#[test]
fn fitting_contains_nilpotent_normals() {
    for g in small_groups() {
        let f = fitting(&g, &g.whole()).unwrap();
        assert!(g.is_normal(&f).unwrap());
        assert!(is_nilpotent(&g, &f).unwrap());
        for n in normal_subgroups(&g, &g.whole()).unwrap() {
            if is_nilpotent(&g, &n).unwrap() {
                assert!(n.is_subgroup_of(&f), "{}", g.label());
            }
        }
    }
}

#[test]
fn frattini_is_normal_meet_of_maximals() {
    for g in small_groups() {
        let phi = frattini(&g, &g.whole()).unwrap();
        assert!(g.is_normal(&phi).unwrap(), "{}", g.label());
        let mut meet = g.whole();
        for m in maximal_subgroups(&g, &g.whole()).unwrap() {
            meet = g.intersection(&meet, &m).unwrap();
        }
        assert_eq!(phi, meet, "{}", g.label());
    }
}

#[test]
fn n_maximals_sit_inside_n_minus_one_maximals() {
    for g in small_groups().into_iter().filter(|g| g.order() <= 120) {
        let whole = g.whole();
        for n in 2..=3 {
            let upper = n_maximal_subgroups(&g, &whole, n - 1).unwrap();
            for h in n_maximal_subgroups(&g, &whole, n).unwrap() {
                assert!(
                    upper.iter().any(|m| maximal_subgroups(&g, m).unwrap().contains(&h)),
                    "{}: {n}-maximal of order {}",
                    g.label(),
                    h.order()
                );
            }
        }
    }
}

#[test]
fn lattice_closed_under_conjugation_and_meets() {
    for g in small_groups().into_iter().filter(|g| g.order() <= 60) {
        let lattice = all_subgroups(&g, CAP).unwrap();
        let subs = lattice.subgroups();
        for (i, a) in subs.iter().enumerate() {
            for x in g.generator_ids() {
                let c = g.conjugate(x, a).unwrap();
                let j = lattice.position(&c).expect("conjugate in lattice");
                assert_eq!(lattice.class_id(i), lattice.class_id(j));
            }
            for b in subs {
                assert!(lattice.position(&g.intersection(a, b).unwrap()).is_some());
                assert!(lattice.position(&g.join(a, b).unwrap()).is_some());
            }
        }
    }
}
