//! Named group constructors and the corpus file format.
//!
//! A corpus is UTF-8 JSON Lines: one JSON object per line, blank lines and
//! lines starting with `#` ignored. Each object has a `name` and either a
//! `kind` with its parameters or explicit `degree` + `generators`:
//!
//! ```text
//! {"name": "S4", "kind": "symmetric", "n": 4}
//! {"name": "D10", "kind": "dihedral", "n": 10}
//! {"name": "L2(7)", "kind": "psl2", "q": 7}
//! {"name": "A5xC2", "kind": "product", "factors": [{"kind": "alternating", "n": 5}, {"kind": "cyclic", "n": 2}]}
//! {"name": "X", "degree": 3, "generators": ["(1 2 3)", "(1 2)"]}
//! ```

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::numtheory::is_prime;
use crate::perm::{min_degree, Permutation};

/// The shipped corpus.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.jsonl");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic { n: usize },
    /// Order `n = 2t`, acting on `t` points for `t ≥ 3`.
    Dihedral { n: usize },
    Quaternion8,
    Symmetric { n: usize },
    Alternating { n: usize },
    Klein4,
    #[serde(rename = "sl2_3")]
    Sl2_3,
    Frobenius20,
    /// `PSL(2, q)` for a prime `5 ≤ q ≤ 13`.
    Psl2 { q: u64 },
    Product { factors: Vec<GroupKind> },
    Explicit { degree: usize, generators: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: GroupKind,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Option<String>,
    kind: Option<String>,
    n: Option<usize>,
    q: Option<u64>,
    factors: Option<Vec<RawSpec>>,
    degree: Option<usize>,
    generators: Option<Vec<String>>,
}

fn convert(raw: RawSpec) -> std::result::Result<GroupKind, String> {
    let need_n = |kind: &str| raw.n.ok_or_else(|| format!("kind {kind:?} needs field \"n\""));
    let kind = match raw.kind.as_deref() {
        None if raw.generators.is_some() => "explicit",
        None => return Err("record needs \"kind\" or \"generators\"".into()),
        Some(k) => k,
    };
    let parsed = match kind {
        "cyclic" => GroupKind::Cyclic { n: need_n(kind)? },
        "dihedral" => GroupKind::Dihedral { n: need_n(kind)? },
        "quaternion8" => GroupKind::Quaternion8,
        "symmetric" => GroupKind::Symmetric { n: need_n(kind)? },
        "alternating" => GroupKind::Alternating { n: need_n(kind)? },
        "klein4" => GroupKind::Klein4,
        "sl2_3" => GroupKind::Sl2_3,
        "frobenius20" => GroupKind::Frobenius20,
        "psl2" => GroupKind::Psl2 {
            q: raw.q.ok_or("kind \"psl2\" needs field \"q\"")?,
        },
        "product" => {
            let factors = raw.factors.ok_or("kind \"product\" needs field \"factors\"")?;
            if factors.is_empty() {
                return Err("product needs at least one factor".into());
            }
            GroupKind::Product {
                factors: factors.into_iter().map(convert).collect::<std::result::Result<_, _>>()?,
            }
        }
        "explicit" => {
            let generators = raw.generators.ok_or("explicit group needs \"generators\"")?;
            let mut degree = 1;
            for g in &generators {
                degree = degree.max(min_degree(g).map_err(|e| e.to_string())?);
            }
            if let Some(d) = raw.degree {
                if d < degree {
                    return Err(format!("degree {d} is smaller than the points used ({degree})"));
                }
                degree = d;
            }
            GroupKind::Explicit { degree, generators }
        }
        other => return Err(format!("unknown kind {other:?}")),
    };
    Ok(parsed)
}

/// Parses one corpus record. `line` is reported in errors.
pub fn parse_group_def(record: &str, line: usize) -> Result<GroupSpec> {
    let perr = |message: String| Error::Parse { line, message };
    let raw: RawSpec = serde_json::from_str(record).map_err(|e| perr(e.to_string()))?;
    let name = raw
        .name
        .clone()
        .filter(|n| !n.trim().is_empty())
        .ok_or_else(|| perr("record needs a non-empty \"name\"".into()))?;
    let kind = convert(raw).map_err(perr)?;
    Ok(GroupSpec { name, kind })
}

/// Parses a whole corpus text. Syntax errors and duplicate names abort.
pub fn parse_corpus(text: &str) -> Result<Vec<(usize, GroupSpec)>> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut specs = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let spec = parse_group_def(trimmed, line)?;
        if seen.insert(spec.name.clone(), line).is_some() {
            return Err(Error::DuplicateName { name: spec.name, line });
        }
        specs.push((line, spec));
    }
    Ok(specs)
}

#[derive(Debug, Clone)]
pub struct CorpusGroup {
    pub line: usize,
    pub spec: GroupSpec,
    pub group: FiniteGroup,
}

/// A record that parsed but could not be built, e.g. over a cap.
#[derive(Debug, Clone)]
pub struct CorpusFailure {
    pub line: usize,
    pub name: String,
    pub error: Error,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub groups: Vec<CorpusGroup>,
    pub failures: Vec<CorpusFailure>,
}

impl Corpus {
    /// Parses and builds every record. Build failures are collected rather
    /// than aborting the load.
    pub fn from_text(text: &str) -> Result<Corpus> {
        let mut corpus = Corpus::default();
        for (line, spec) in parse_corpus(text)? {
            match build(&spec) {
                Ok(group) => corpus.groups.push(CorpusGroup { line, spec, group }),
                Err(error) => corpus.failures.push(CorpusFailure {
                    line,
                    name: spec.name,
                    error,
                }),
            }
        }
        Ok(corpus)
    }

    pub fn default_corpus() -> Corpus {
        Corpus::from_text(DEFAULT_CORPUS).expect("shipped corpus parses")
    }

    /// Keeps only the named groups, in corpus order.
    pub fn only(&self, names: &[&str]) -> Corpus {
        Corpus {
            groups: self
                .groups
                .iter()
                .filter(|g| names.contains(&g.spec.name.as_str()))
                .cloned()
                .collect(),
            failures: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&FiniteGroup> {
        self.groups.iter().find(|g| g.spec.name == name).map(|g| &g.group)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Reads a corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Corpus::from_text(&text)
}

fn cycles_group(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
    let perms = gens
        .iter()
        .map(|c| Permutation::from_cycles(degree, &[c.as_slice()]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_generators(&perms, degree, DEFAULT_ORDER_CAP)
}

fn images_group(gens: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let degree = gens[0].len();
    let perms = gens
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_generators(&perms, degree, DEFAULT_ORDER_CAP)
}

fn build_kind(kind: &GroupKind) -> Result<FiniteGroup> {
    match *kind {
        GroupKind::Cyclic { n } => {
            if n == 0 {
                return Err(Error::UnsupportedSpec("cyclic group of order 0".into()));
            }
            if n == 1 {
                return Ok(FiniteGroup::trivial(1));
            }
            cycles_group(n, &[(1..=n).collect()])
        }
        GroupKind::Dihedral { n } => {
            if n == 0 || n % 2 != 0 {
                return Err(Error::UnsupportedSpec(format!("dihedral order {n} is not even")));
            }
            match n / 2 {
                1 => cycles_group(2, &[vec![1, 2]]),
                2 => FiniteGroup::from_cycle_strings(&["(1 2)(3 4)", "(1 3)(2 4)"], 4),
                t => {
                    let rotation: Vec<usize> = (0..t).map(|i| (i + 1) % t).collect();
                    // i ↦ −i on Z/t
                    let reflection: Vec<usize> = (0..t).map(|i| (t - i) % t).collect();
                    images_group(vec![rotation, reflection])
                }
            }
        }
        GroupKind::Quaternion8 => {
            // left multiplication by i and j on 1, −1, i, −i, j, −j, k, −k
            FiniteGroup::from_cycle_strings(&["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"], 8)
        }
        GroupKind::Symmetric { n } => match n {
            0 => Err(Error::UnsupportedSpec("symmetric group on 0 points".into())),
            1 => Ok(FiniteGroup::trivial(1)),
            2 => cycles_group(2, &[vec![1, 2]]),
            _ => cycles_group(n, &[vec![1, 2], (1..=n).collect()]),
        },
        GroupKind::Alternating { n } => match n {
            0 => Err(Error::UnsupportedSpec("alternating group on 0 points".into())),
            1 | 2 => Ok(FiniteGroup::trivial(n)),
            3 => cycles_group(3, &[vec![1, 2, 3]]),
            _ => {
                let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
                cycles_group(n, &[vec![1, 2, 3], long])
            }
        },
        GroupKind::Klein4 => FiniteGroup::from_cycle_strings(&["(1 2)(3 4)", "(1 3)(2 4)"], 4),
        GroupKind::Sl2_3 => {
            // matrices acting on the 8 nonzero column vectors of F_3^2
            let vectors: Vec<(i64, i64)> = (0..3)
                .flat_map(|a| (0..3).map(move |b| (a, b)))
                .filter(|&v| v != (0, 0))
                .collect();
            let act = |m: [[i64; 2]; 2]| -> Vec<usize> {
                vectors
                    .iter()
                    .map(|&(a, b)| {
                        let img = (
                            (m[0][0] * a + m[0][1] * b).rem_euclid(3),
                            (m[1][0] * a + m[1][1] * b).rem_euclid(3),
                        );
                        vectors.iter().position(|&v| v == img).expect("nonzero image")
                    })
                    .collect()
            };
            images_group(vec![act([[1, 1], [0, 1]]), act([[0, -1], [1, 0]])])
        }
        // z ↦ z + 1 and z ↦ 2z on F_5
        GroupKind::Frobenius20 => FiniteGroup::from_cycle_strings(&["(1 2 3 4 5)", "(2 3 5 4)"], 5),
        GroupKind::Psl2 { q } => {
            if !(5..=13).contains(&q) || !is_prime(q) {
                return Err(Error::UnsupportedSpec(format!("psl2 needs a prime 5 <= q <= 13, got {q}")));
            }
            // points 0..q-1 are F_q, point q is infinity
            let q = q as usize;
            let inv = |z: usize| (1..q).find(|&w| z * w % q == 1).expect("field inverse");
            let t: Vec<usize> = (0..=q).map(|z| if z == q { q } else { (z + 1) % q }).collect();
            let s: Vec<usize> = (0..=q)
                .map(|z| match z {
                    0 => q,
                    _ if z == q => 0,
                    _ => (q - inv(z)) % q,
                })
                .collect();
            images_group(vec![t, s])
        }
        GroupKind::Product { ref factors } => {
            let mut iter = factors.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::UnsupportedSpec("empty product".into()))?;
            let mut acc = build_kind(first)?;
            for f in iter {
                acc = acc.direct_product(&build_kind(f)?)?;
            }
            Ok(acc)
        }
        GroupKind::Explicit {
            degree,
            ref generators,
        } => {
            let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
            FiniteGroup::from_cycle_strings(&gens, degree)
        }
    }
}

/// Builds the group described by a corpus record and names it after the record.
pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
    Ok(build_kind(&spec.kind)?.named(spec.name.clone()))
}

/// Builds an anonymous-kind group with the given name, for quick lookups.
pub fn build_named(name: &str, kind: GroupKind) -> Result<FiniteGroup> {
    build(&GroupSpec {
        name: name.to_string(),
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::are_isomorphic;

    fn make(kind: GroupKind) -> FiniteGroup {
        build_kind(&kind).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(make(GroupKind::Cyclic { n: 1 }).order(), 1);
        assert_eq!(make(GroupKind::Cyclic { n: 12 }).order(), 12);
        for t in 1..=64 {
            assert_eq!(make(GroupKind::Dihedral { n: 2 * t }).order(), 2 * t, "t = {t}");
        }
        assert_eq!(make(GroupKind::Quaternion8).order(), 8);
        for (n, o) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            assert_eq!(make(GroupKind::Symmetric { n }).order(), o);
        }
        for (n, o) in [(3, 3), (4, 12), (5, 60), (6, 360), (7, 2520)] {
            assert_eq!(make(GroupKind::Alternating { n }).order(), o);
        }
        assert_eq!(make(GroupKind::Klein4).order(), 4);
        assert_eq!(make(GroupKind::Sl2_3).order(), 24);
        assert_eq!(make(GroupKind::Frobenius20).order(), 20);
        for (q, o) in [(5, 60), (7, 168), (11, 660), (13, 1092)] {
            assert_eq!(make(GroupKind::Psl2 { q }).order(), o);
        }
    }

    #[test]
    fn small_structures() {
        let q8 = make(GroupKind::Quaternion8);
        assert!(!q8.is_abelian());
        let involutions = (0..8).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        let sl = make(GroupKind::Sl2_3);
        assert_eq!(sl.center().order(), 2);
        let f20 = make(GroupKind::Frobenius20);
        assert!(f20.center().is_trivial());
        assert!((0..20).any(|x| f20.element_order(x) == 4));
        let d8 = make(GroupKind::Dihedral { n: 8 });
        let d8_alt = FiniteGroup::from_cycle_strings(&["(1 2 3 4)", "(1 3)"], 4).unwrap();
        assert!(are_isomorphic(&d8, &d8_alt).is_some());
        assert!(are_isomorphic(&make(GroupKind::Dihedral { n: 4 }), &make(GroupKind::Klein4)).is_some());
    }

    #[test]
    fn psl2_5_is_a5() {
        let l = make(GroupKind::Psl2 { q: 5 });
        let a5 = make(GroupKind::Alternating { n: 5 });
        assert!(are_isomorphic(&l, &a5).is_some());
    }

    #[test]
    fn unsupported_specs() {
        assert!(matches!(build_kind(&GroupKind::Psl2 { q: 4 }), Err(Error::UnsupportedSpec(_))));
        assert!(matches!(build_kind(&GroupKind::Psl2 { q: 17 }), Err(Error::UnsupportedSpec(_))));
        assert!(matches!(build_kind(&GroupKind::Dihedral { n: 7 }), Err(Error::UnsupportedSpec(_))));
        assert!(matches!(
            build_kind(&GroupKind::Symmetric { n: 9 }),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn deterministic_build() {
        let spec = parse_group_def(r#"{"name":"S4","kind":"symmetric","n":4}"#, 1).unwrap();
        let a = build(&spec).unwrap();
        let b = build(&spec).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.order(), 24);
        assert_eq!(a.name(), Some("S4"));
    }

    #[test]
    fn records() {
        let spec = parse_group_def(r#"{"name":"X","generators":["(1 2 3)","(1 2)"],"degree":3}"#, 1).unwrap();
        assert_eq!(build(&spec).unwrap().order(), 6);
        let spec = parse_group_def(r#"{"name":"Y","generators":["(1 2 3)","()"]}"#, 1).unwrap();
        assert_eq!(build(&spec).unwrap().order(), 3);
        let spec = parse_group_def(
            r#"{"name":"P","kind":"product","factors":[{"kind":"alternating","n":4},{"kind":"cyclic","n":2}]}"#,
            1,
        )
        .unwrap();
        assert_eq!(build(&spec).unwrap().order(), 24);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let text = "# comment\n\n{\"name\":\"A\",\"kind\":\"cyclic\",\"n\":3}\n{\"name\":\"B\",\"generators\":[\"(1 2\"]}\n";
        assert!(matches!(parse_corpus(text), Err(Error::Parse { line: 4, .. })));
        let dup = "{\"name\":\"A\",\"kind\":\"klein4\"}\n{\"name\":\"A\",\"kind\":\"klein4\"}\n";
        assert_eq!(
            parse_corpus(dup).unwrap_err(),
            Error::DuplicateName {
                name: "A".into(),
                line: 2
            }
        );
        assert!(matches!(parse_group_def("{\"name\":\"Z\",\"kind\":\"mystery\"}", 7), Err(Error::Parse { line: 7, .. })));
        assert!(matches!(parse_group_def("{\"kind\":\"klein4\"}", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_group_def("{\"name\":\"Q\",\"kind\":\"cyclic\",\"m\":3}", 1), Err(Error::Parse { .. })));
    }

    #[test]
    fn build_failures_do_not_abort_load() {
        let text = "{\"name\":\"big\",\"kind\":\"symmetric\",\"n\":9}\n{\"name\":\"ok\",\"kind\":\"klein4\"}\n";
        let corpus = Corpus::from_text(text).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus.failures.len(), 1);
        assert_eq!(corpus.failures[0].line, 1);
    }

    #[test]
    fn default_corpus_contents() {
        let corpus = Corpus::default_corpus();
        assert!(corpus.failures.is_empty(), "{:?}", corpus.failures);
        assert!(corpus.len() >= 25);
        for t in 1..=64 {
            let g = corpus.get(&format!("D{}", 2 * t)).expect("dihedral present");
            assert_eq!(g.order(), 2 * t);
        }
        for name in [
            "S3", "S4", "S5", "A3", "A4", "A5", "A6", "V4", "Q8", "SL(2,3)", "F20", "L2(5)", "L2(7)", "L2(11)",
            "L2(13)", "A5xC2", "A4xC2", "C1",
        ] {
            assert!(corpus.get(name).is_some(), "{name} missing");
        }
        let orders: Vec<usize> = corpus.groups.iter().map(|g| g.group.order()).collect();
        assert_eq!(orders.iter().min(), Some(&1));
        assert!(orders.contains(&660));
    }
}
