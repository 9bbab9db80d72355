//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use normres::corpus::{build_named, Corpus, GroupKind};
use normres::lattice::{all_subgroups, maximal_subgroups, n_maximal_subgroups, normal_subgroups};
use normres::map::{are_isomorphic, quotient};
use normres::nr::{is_nr_subgroup, nc1_premises, normal_closure};
use normres::numtheory::{lemma3_scan, primitive_prime_divisors, Lemma3Part};
use normres::structure::{is_nilpotent, is_supersolvable, normal_complement, solvable_radical};
use normres::verify::{anchor_checks, s4_maximal_classes};
use normres::{run_suite, FiniteGroup, SuiteId, SuiteOptions, Verdict, VerificationReport};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn group(name: &str, kind: GroupKind) -> FiniteGroup {
    build_named(name, kind).expect("builds")
}

fn clean(report: &VerificationReport) -> Result<(), String> {
    ensure(
        report.counterexamples.is_empty() && report.verdict == Verdict::Verified,
        format!(
            "suite {}: verdict {}, {} counterexamples",
            report.suite_id,
            report.verdict,
            report.counterexamples.len()
        ),
    )
}

fn suite(id: SuiteId, corpus: &Corpus) -> Result<VerificationReport, String> {
    let r = e(run_suite(id, corpus, &SuiteOptions::default()))?;
    clean(&r)?;
    Ok(r)
}

fn a5_anchors() -> Outcome {
    let a5 = group("A5", GroupKind::Alternating { n: 5 });
    let whole = a5.whole();
    let two = e(n_maximal_subgroups(&a5, &whole, 2))?;
    for h in &two {
        ensure(e(is_nilpotent(&a5, h))?, format!("2-maximal of order {} not nilpotent", h.order()))?;
    }
    let three = e(n_maximal_subgroups(&a5, &whole, 3))?;
    for h in &three {
        ensure(e(is_nr_subgroup(&a5, h))?.is_nr, format!("3-maximal of order {} not NR", h.order()))?;
    }
    let v4 = e(a5.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]))?;
    let verdict = e(is_nr_subgroup(&a5, &v4))?;
    ensure(!verdict.is_nr, "V4 reported NR")?;
    let w = verdict.witness.ok_or("no witness")?;
    ensure(w.k.order() == 2, "witness K is not of order 2")?;
    ensure(e(normal_closure(&a5, &w.k))? == whole, "K^A5 is not A5")?;
    ensure(e(a5.intersection(&w.closure, &v4))? == v4, "K^A5 does not meet V4 in V4")?;
    Ok(format!(
        "{} 2-maximals nilpotent, {} 3-maximals NR, V4 witness K = <{}>",
        two.len(),
        three.len(),
        a5.describe(&w.k).join(", ")
    ))
}

fn a4_sharpness() -> Outcome {
    let a4 = group("A4", GroupKind::Alternating { n: 4 });
    let a3 = e(a4.subgroup_from_cycles(&["(1 2 3)"]))?;
    ensure(e(is_nr_subgroup(&a4, &a3))?.is_nr, "A3 not NR")?;
    ensure(e(is_supersolvable(&a4, &a3))?, "A3 not supersolvable")?;
    ensure(e(maximal_subgroups(&a4, &a4.whole()))?.contains(&a3), "A3 not maximal")?;
    ensure(a3.index_in(&a4.whole()) == 4, "index is not 4")?;
    ensure(!e(is_supersolvable(&a4, &a4.whole()))?, "A4 supersolvable")?;
    Ok("A3 NR, supersolvable, maximal of index 4; A4 not supersolvable".into())
}

fn s4_classification() -> Outcome {
    let classes = e(s4_maximal_classes())?;
    let find = |label: &str| classes.iter().find(|c| c.label == label).ok_or(format!("{label} missing"));
    ensure(classes.len() == 3, "expected three maximal classes")?;
    ensure(find("S3")?.is_nr, "S3 not NR")?;
    ensure(!find("D8")?.is_nr, "D8 NR")?;
    let a4 = find("A4")?;
    let anchor = anchor_checks()
        .into_iter()
        .find(|c| c.group == "S4" && c.name.contains("maximal classes"))
        .ok_or("S4 anchor missing")?;
    ensure(anchor.passed, "S4 anchor failed")?;
    ensure(anchor.flag.is_some() == (a4.is_nr && !a4.self_normalizing), "A4 flag not emitted")?;
    Ok(format!(
        "S3 NR, D8 not NR, A4 NR = {} (flagged: {})",
        a4.is_nr,
        anchor.flag.is_some()
    ))
}

fn solvability_suites(corpus: &Corpus) -> Outcome {
    ensure(corpus.len() >= 25, "corpus has fewer than 25 groups")?;
    let th1 = suite(SuiteId::Th1, corpus)?;
    let th2 = suite(SuiteId::Th2, corpus)?;
    let cor = suite(SuiteId::Cor, corpus)?;
    ensure(th2.hypothesis_holders.iter().any(|n| n == "A5"), "A5 is not a th2 hypothesis holder")?;
    ensure(
        th2.notes.iter().any(|n| n.starts_with("A5: G/S(G) is isomorphic to A5")),
        "th2 report lacks the A5 quotient note",
    )?;
    let a5 = corpus.get("A5").ok_or("A5 missing from corpus")?;
    let radical = e(solvable_radical(a5, &a5.whole()))?;
    let (q, _) = e(quotient(a5, &radical))?;
    ensure(are_isomorphic(&q, a5).is_some(), "A5/S(A5) is not A5")?;
    Ok(format!(
        "{} groups; th1 {} checks, th2 {} checks, cor {} checks; A5/S(A5) = A5",
        th1.groups_checked, th1.checks, th2.checks, cor.checks
    ))
}

fn complement_suites(corpus: &Corpus) -> Outcome {
    let nc1 = suite(SuiteId::Nc1, corpus)?;
    let th4 = suite(SuiteId::Th4, corpus)?;
    let s4 = group("S4", GroupKind::Symmetric { n: 4 });
    let c3 = e(s4.subgroup_from_cycles(&["(1 2 3)"]))?;
    let prem = e(nc1_premises(&s4, &c3))?;
    ensure(prem.holds, "premises fail for (S4, C3)")?;
    let s3 = group("S3", GroupKind::Symmetric { n: 3 });
    let n = e(s4.subgroup_as_group(&prem.normalizer))?;
    ensure(are_isomorphic(&n, &s3).is_some(), "N is not S3")?;
    let v4 = e(s4.subgroup_from_cycles(&["(1 2)(3 4)", "(1 3)(2 4)"]))?;
    let t = e(normal_complement(&s4, &s4.whole(), &prem.normalizer))?.ok_or("no complement")?;
    ensure(t == v4, "complement is not V4")?;
    ensure(nc1.notes.iter().any(|n| n.starts_with("S4: p = 3")), "suite lacks the S4 instance")?;
    Ok(format!("nc1 {} instances, th4 {} instances, (S4, C3, S3, V4) present", nc1.checks, th4.checks))
}

fn prime_index_suite(corpus: &Corpus) -> Outcome {
    let th5 = suite(SuiteId::Th5, corpus)?;
    Ok(format!("{} instances over {} groups", th5.checks, th5.groups_checked))
}

fn lemma_suites(corpus: &Corpus) -> Outcome {
    let mut parts = Vec::new();
    for id in [
        SuiteId::Lem1,
        SuiteId::Lem2,
        SuiteId::Lem7,
        SuiteId::Lem8,
        SuiteId::Lem9,
        SuiteId::Nr1,
        SuiteId::Sch,
        SuiteId::Gt,
    ] {
        let r = suite(id, corpus)?;
        if id == SuiteId::Lem9 {
            ensure(r.groups_checked == 64, "lem9 did not cover t = 1..64")?;
        }
        if id == SuiteId::Lem1 {
            ensure(r.checks > 0, "lem1 checked nothing")?;
        }
        parts.push(format!("{} {}", id, r.checks));
    }
    Ok(parts.join(", "))
}

fn number_theory() -> Outcome {
    ensure(e(lemma3_scan(Lemma3Part::A, 60))?.into_iter().eq([3]), "part a")?;
    ensure(e(lemma3_scan(Lemma3Part::B, 60))?.into_iter().eq([0, 1, 2, 3]), "part b")?;
    ensure(e(primitive_prime_divisors(2, 6))?.is_empty(), "(2, 6) has a primitive divisor")?;
    for q in 2..=10u128 {
        for n in 3..=12u32 {
            if (q, n) != (2, 6) {
                ensure(!e(primitive_prime_divisors(q, n))?.is_empty(), format!("({q}, {n}) empty"))?;
            }
        }
    }
    Ok("lemma3 scans {3} and {0,1,2,3}; only (2, 6) lacks a primitive divisor".into())
}

fn constructions() -> Outcome {
    let l7 = group("L2(7)", GroupKind::Psl2 { q: 7 });
    ensure(l7.order() == 168, "|L2(7)| != 168")?;
    ensure(e(normal_subgroups(&l7, &l7.whole()))?.len() == 2, "L2(7) not simple")?;
    let s4 = group("S4", GroupKind::Symmetric { n: 4 });
    let mut found = false;
    for m in e(maximal_subgroups(&l7, &l7.whole()))? {
        if m.order() == 24 && are_isomorphic(&e(l7.subgroup_as_group(&m))?, &s4).is_some() {
            found = true;
        }
    }
    ensure(found, "no maximal S4 in L2(7)")?;
    let l5 = group("L2(5)", GroupKind::Psl2 { q: 5 });
    let a5 = group("A5", GroupKind::Alternating { n: 5 });
    ensure(are_isomorphic(&l5, &a5).is_some(), "L2(5) not A5")?;
    let n_s4 = e(all_subgroups(&s4, 24))?.len();
    let n_a5 = e(all_subgroups(&a5, 60))?.len();
    ensure(n_s4 == 30, format!("S4 has {n_s4} subgroups"))?;
    ensure(n_a5 == 59, format!("A5 has {n_a5} subgroups"))?;
    Ok("L2(7) simple of order 168 with maximal S4; L2(5) = A5; 30 and 59 subgroups".into())
}

fn main() -> ExitCode {
    let corpus = Corpus::default_corpus();
    type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("A5 anchors", Duration::from_secs(5), Box::new(a5_anchors)),
        ("A4 sharpness", Duration::from_secs(1), Box::new(a4_sharpness)),
        ("S4 classification", Duration::from_secs(5), Box::new(s4_classification)),
        ("solvability suites", Duration::from_secs(300), Box::new(|| solvability_suites(&corpus))),
        ("normal complement suites", Duration::from_secs(600), Box::new(|| complement_suites(&corpus))),
        ("prime-index suite", Duration::from_secs(120), Box::new(|| prime_index_suite(&corpus))),
        ("lemma suites", Duration::from_secs(600), Box::new(|| lemma_suites(&corpus))),
        ("number theory", Duration::from_secs(10), Box::new(number_theory)),
        ("constructions", Duration::from_secs(30), Box::new(constructions)),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(detail) if elapsed <= *budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("over budget {budget:?}: {detail}")),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {status} {name} [{:.2}s / {}s] {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
