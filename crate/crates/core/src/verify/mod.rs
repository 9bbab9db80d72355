//! Suite runner: evaluates each theorem's implication over a corpus and
//! assembles deterministic reports.

mod anchors;
mod suites;

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Corpus, CorpusGroup};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{all_subgroups, DEFAULT_LATTICE_CAP, MAX_LATTICE_ORDER};
use crate::subgroup::Subgroup;

pub use anchors::{anchor_checks, s4_maximal_classes, AnchorCheck, MaximalClassVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteId {
    Th1,
    Th2,
    Cor,
    Nc1,
    Th4,
    Th5,
    Lem1,
    Lem2,
    Lem3,
    Lem7,
    Lem8,
    Lem9,
    Nr1,
    Sch,
    Gt,
    Zsi,
    Anchors,
    All,
}

impl SuiteId {
    /// Every concrete suite, in the order `all` runs them.
    pub const CONCRETE: [SuiteId; 17] = [
        SuiteId::Anchors,
        SuiteId::Th1,
        SuiteId::Th2,
        SuiteId::Cor,
        SuiteId::Nc1,
        SuiteId::Th4,
        SuiteId::Th5,
        SuiteId::Lem1,
        SuiteId::Lem2,
        SuiteId::Lem3,
        SuiteId::Lem7,
        SuiteId::Lem8,
        SuiteId::Lem9,
        SuiteId::Nr1,
        SuiteId::Sch,
        SuiteId::Gt,
        SuiteId::Zsi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Th1 => "th1",
            SuiteId::Th2 => "th2",
            SuiteId::Cor => "cor",
            SuiteId::Nc1 => "nc1",
            SuiteId::Th4 => "th4",
            SuiteId::Th5 => "th5",
            SuiteId::Lem1 => "lem1",
            SuiteId::Lem2 => "lem2",
            SuiteId::Lem3 => "lem3",
            SuiteId::Lem7 => "lem7",
            SuiteId::Lem8 => "lem8",
            SuiteId::Lem9 => "lem9",
            SuiteId::Nr1 => "nr1",
            SuiteId::Sch => "sch",
            SuiteId::Gt => "gt",
            SuiteId::Zsi => "zsi",
            SuiteId::Anchors => "anchors",
            SuiteId::All => "all",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::CONCRETE
            .into_iter()
            .chain([SuiteId::All])
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest group order a lattice suite will touch.
    pub max_order: usize,
    /// Required for `max_order` above the default lattice cap.
    pub opt_in_large: bool,
    /// Fill `elapsed_ms`. Off by default so reports are reproducible.
    pub record_timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> SuiteOptions {
        SuiteOptions {
            max_order: DEFAULT_LATTICE_CAP,
            opt_in_large: false,
            record_timing: false,
        }
    }
}

impl SuiteOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_order > MAX_LATTICE_ORDER {
            return Err(Error::OutOfRange(format!(
                "max order {} exceeds the lattice limit {MAX_LATTICE_ORDER}",
                self.max_order
            )));
        }
        if self.max_order > DEFAULT_LATTICE_CAP && !self.opt_in_large {
            return Err(Error::OutOfRange(format!(
                "max order {} needs the large-group opt-in (default cap {DEFAULT_LATTICE_CAP})",
                self.max_order
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Refuted,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Skipped => "skipped",
        })
    }
}

/// One link of a witness chain, with generators in cycle notation so it can
/// be replayed through `check-nr` or `check-triple`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    pub role: String,
    pub order: usize,
    pub generators: Vec<String>,
}

impl WitnessStep {
    pub fn new(g: &FiniteGroup, role: &str, h: &Subgroup) -> WitnessStep {
        WitnessStep {
            role: role.to_string(),
            order: h.order(),
            generators: g.describe(h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub suite: String,
    pub group: String,
    pub witness: Vec<WitnessStep>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkippedGroup {
    pub group: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite_id: String,
    pub groups_checked: usize,
    /// Number of implication instances whose premises held and whose
    /// conclusion was tested.
    pub checks: usize,
    pub hypothesis_holders: Vec<String>,
    /// Groups where the hypothesis never held; they carry no evidence.
    pub vacuous: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub skipped: Vec<SkippedGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<VerificationReport>,
}

impl VerificationReport {
    fn empty(suite: SuiteId) -> VerificationReport {
        VerificationReport {
            suite_id: suite.as_str().to_string(),
            groups_checked: 0,
            checks: 0,
            hypothesis_holders: Vec::new(),
            vacuous: Vec::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
            skipped: Vec::new(),
            elapsed_ms: None,
            verdict: Verdict::Skipped,
            suites: Vec::new(),
        }
    }

    fn settle(&mut self) {
        self.verdict = if !self.counterexamples.is_empty() {
            Verdict::Refuted
        } else if self.groups_checked == 0 && self.checks == 0 {
            Verdict::Skipped
        } else {
            Verdict::Verified
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "suite {}: {} ({} groups, {} checks)",
            self.suite_id, self.verdict, self.groups_checked, self.checks
        );
        if !self.hypothesis_holders.is_empty() {
            let _ = writeln!(out, "  hypothesis holds: {}", self.hypothesis_holders.join(", "));
        }
        if !self.vacuous.is_empty() {
            let _ = writeln!(out, "  hypothesis fails: {}", self.vacuous.join(", "));
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        for s in &self.skipped {
            let _ = writeln!(out, "  skipped {}: {}", s.group, s.reason);
        }
        for c in &self.counterexamples {
            let _ = writeln!(
                out,
                "  COUNTEREXAMPLE [{}] {}: expected {}, got {}",
                c.suite, c.group, c.expected, c.actual
            );
            for w in &c.witness {
                let _ = writeln!(out, "    {} (order {}): {}", w.role, w.order, w.generators.join(", "));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "  elapsed: {ms} ms");
        }
        for child in &self.suites {
            child.write_text(out);
        }
    }
}

/// What one group contributed to a suite.
#[derive(Debug, Default)]
pub(crate) struct GroupOutcome {
    /// `None` when the suite has no hypothesis to speak of.
    pub holds: Option<bool>,
    pub checks: usize,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl GroupOutcome {
    pub(crate) fn premise(&mut self) {
        self.checks += 1;
        self.holds = Some(true);
    }

    pub(crate) fn fail(&mut self, suite: SuiteId, group: &str, witness: Vec<WitnessStep>, expected: &str, actual: String) {
        self.counterexamples.push(Counterexample {
            suite: suite.as_str().to_string(),
            group: group.to_string(),
            witness,
            expected: expected.to_string(),
            actual,
        });
    }
}

fn uses_lattice(suite: SuiteId) -> bool {
    !matches!(suite, SuiteId::Lem3 | SuiteId::Zsi | SuiteId::Anchors | SuiteId::Lem9)
}

/// Runs one suite over the corpus. Groups are processed in parallel and the
/// report is assembled in group-name order.
pub fn run_suite(suite: SuiteId, corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport> {
    options.validate()?;
    let start = Instant::now();
    let mut report = if suite == SuiteId::All {
        run_all(corpus, options)?
    } else {
        run_concrete(suite, corpus, options)
    };
    if options.record_timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn run_all(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::empty(SuiteId::All);
    for id in SuiteId::CONCRETE {
        let child = run_suite(id, corpus, options)?;
        report.groups_checked = report.groups_checked.max(child.groups_checked);
        report.checks += child.checks;
        report.counterexamples.extend(child.counterexamples.iter().cloned());
        report.suites.push(child);
    }
    report.skipped = report.suites.iter().flat_map(|c| c.skipped.iter().cloned()).collect();
    report.skipped.sort();
    report.skipped.dedup();
    report.settle();
    Ok(report)
}

fn run_concrete(suite: SuiteId, corpus: &Corpus, options: &SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::empty(suite);
    match suite {
        SuiteId::Anchors => {
            let checks = anchor_checks();
            report.groups_checked = anchors::ANCHOR_GROUPS;
            report.checks = checks.len();
            for c in checks {
                report.notes.push(c.line());
                if let Some(flag) = &c.flag {
                    report.notes.push(format!("flag: {flag}"));
                }
                if !c.passed {
                    report.counterexamples.push(Counterexample {
                        suite: suite.as_str().to_string(),
                        group: c.group.clone(),
                        witness: Vec::new(),
                        expected: c.name.clone(),
                        actual: c.detail.clone(),
                    });
                }
            }
            report.settle();
            return report;
        }
        SuiteId::Lem3 | SuiteId::Zsi => {
            let outcome = if suite == SuiteId::Lem3 {
                suites::lemma3()
            } else {
                suites::zsigmondy()
            };
            report.checks = outcome.checks;
            report.counterexamples = outcome.counterexamples;
            report.notes = outcome.notes;
            report.settle();
            return report;
        }
        _ => {}
    }

    let eligible: Vec<&CorpusGroup> = corpus
        .groups
        .iter()
        .filter(|cg| suites::eligible(suite, cg))
        .collect();
    for f in &corpus.failures {
        report.skipped.push(SkippedGroup {
            group: f.name.clone(),
            reason: format!("line {}: {}", f.line, f.error),
        });
    }
    let results: Vec<(String, Result<GroupOutcome>)> = eligible
        .par_iter()
        .filter_map(|cg| {
            let name = cg.spec.name.clone();
            let order = cg.group.order();
            if uses_lattice(suite) && order > options.max_order {
                return None;
            }
            let run = || -> Result<GroupOutcome> {
                if uses_lattice(suite) {
                    all_subgroups(&cg.group, options.max_order)?;
                }
                suites::run_group(suite, cg)
            };
            Some((name, run()))
        })
        .collect();
    for cg in &eligible {
        if uses_lattice(suite) && cg.group.order() > options.max_order {
            report.skipped.push(SkippedGroup {
                group: cg.spec.name.clone(),
                reason: format!("order {} above max order {}", cg.group.order(), options.max_order),
            });
        }
    }

    let mut results = results;
    results.sort_by(|a, b| a.0.cmp(&b.0));
    for (name, result) in results {
        match result {
            Ok(outcome) => {
                report.groups_checked += 1;
                report.checks += outcome.checks;
                match outcome.holds {
                    Some(true) => report.hypothesis_holders.push(name.clone()),
                    Some(false) => report.vacuous.push(name.clone()),
                    None => {}
                }
                report.counterexamples.extend(outcome.counterexamples);
                report.notes.extend(outcome.notes);
            }
            Err(e) => report.skipped.push(SkippedGroup {
                group: name,
                reason: e.to_string(),
            }),
        }
    }
    report.skipped.sort();
    report.notes.extend(suites::suite_notes(suite));
    report.settle();
    report
}
