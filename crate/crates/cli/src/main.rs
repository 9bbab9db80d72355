use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use normres::corpus::{load_corpus, Corpus};
use normres::lattice::all_subgroups;
use normres::nr::{is_nr_subgroup, is_special_triple};
use normres::numtheory::{lemma3_scan, primitive_prime_divisors, Lemma3Part, LEMMA3_T_CAP};
use normres::perm::{min_degree, split_generator_list};
use normres::{run_suite, FiniteGroup, SuiteId, SuiteOptions, Subgroup, Verdict};

#[derive(Parser)]
#[command(name = "normres", version, about = "Checks NR-subgroup theorems on small permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Group name from the corpus
    #[arg(long, conflicts_with = "gens")]
    group: Option<String>,
    /// Generators in cycle notation, comma separated: "(1 2 3),(1 2)"
    #[arg(long)]
    gens: Option<String>,
    /// Degree for --gens; defaults to the largest point used
    #[arg(long, requires = "gens")]
    degree: Option<usize>,
    /// Corpus file for --group, or "default"
    #[arg(long, default_value = "default")]
    corpus: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over a corpus
    Verify {
        /// th1, th2, cor, nc1, th4, th5, lem1, lem2, lem3, lem7, lem8, lem9,
        /// nr1, sch, gt, zsi, anchors or all
        suite: String,
        /// Corpus file, or "default" for the shipped corpus
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 400)]
        max_order: usize,
        /// Allow --max-order above 400 (up to 1200)
        #[arg(long)]
        opt_in_large: bool,
        /// Also write the report to this file
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Record elapsed time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Dump the subgroup lattice of a group
    Lattice {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the dump to this file instead of stdout
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether a subgroup is an NR-subgroup
    CheckNr {
        #[command(flatten)]
        group: GroupArgs,
        /// Generators of H: "(1 2)(3 4),(1 3)(2 4)"
        #[arg(long)]
        subgroup: String,
    },
    /// Decide whether (G, H, K) is a special triple
    CheckTriple {
        /// Group name or generator list
        #[arg(long = "G")]
        g: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long = "K")]
        k: String,
        #[arg(long, default_value = "default")]
        corpus: String,
    },
    /// Number-theoretic scans
    Numscan {
        #[command(subcommand)]
        scan: Scan,
    },
}

#[derive(Subcommand)]
enum Scan {
    /// Values of t where both numbers of the pair are prime powers
    Lemma3 {
        #[arg(long, default_value_t = 60)]
        t_max: u32,
    },
    /// Primitive prime divisors of q^n - 1
    Zsigmondy {
        #[arg(long, default_value_t = 10)]
        q_max: u32,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
}

fn corpus_from(arg: &str) -> Result<Corpus> {
    if arg == "default" {
        Ok(Corpus::default_corpus())
    } else {
        load_corpus(arg).with_context(|| format!("loading corpus {arg}"))
    }
}

fn group_from_gens(gens: &str, degree: Option<usize>) -> Result<FiniteGroup> {
    let list = split_generator_list(gens);
    if list.is_empty() {
        bail!("empty generator list");
    }
    let mut need = 1;
    for g in &list {
        need = need.max(min_degree(g)?);
    }
    let degree = degree.unwrap_or(need);
    let refs: Vec<&str> = list.iter().map(String::as_str).collect();
    Ok(FiniteGroup::from_cycle_strings(&refs, degree)?)
}

fn resolve_group(spec: &str, corpus: &str, degree: Option<usize>) -> Result<FiniteGroup> {
    if spec.trim_start().starts_with('(') {
        return group_from_gens(spec, degree);
    }
    let corpus = corpus_from(corpus)?;
    corpus
        .get(spec)
        .cloned()
        .ok_or_else(|| anyhow::anyhow!("no group named {spec:?} in the corpus"))
}

fn group_args(args: &GroupArgs) -> Result<FiniteGroup> {
    match (&args.group, &args.gens) {
        (Some(name), None) => resolve_group(name, &args.corpus, None),
        (None, Some(gens)) => group_from_gens(gens, args.degree),
        _ => bail!("give exactly one of --group or --gens"),
    }
}

fn parse_subgroup(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    let list = split_generator_list(text);
    let refs: Vec<&str> = list.iter().map(String::as_str).collect();
    g.subgroup_from_cycles(&refs)
        .with_context(|| format!("subgroup {text:?} of {}", g.label()))
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify {
            suite,
            corpus,
            max_order,
            opt_in_large,
            report,
            format,
            timing,
        } => {
            let suite: SuiteId = suite.parse()?;
            let corpus = corpus_from(&corpus)?;
            let options = SuiteOptions {
                max_order,
                opt_in_large,
                record_timing: timing,
            };
            let result = run_suite(suite, &corpus, &options)?;
            let text = match format {
                Format::Text => result.to_text(),
                Format::Machine => result.to_json() + "\n",
            };
            print!("{text}");
            if let Some(path) = report {
                std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if result.verdict == Verdict::Refuted {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Lattice { group, emit: path, format } => {
            let g = group_args(&group)?;
            let lattice = all_subgroups(&g, normres::lattice::MAX_LATTICE_ORDER)?;
            let records = lattice.export(&g);
            let text = match format {
                Format::Machine => serde_json::to_string_pretty(&records)? + "\n",
                Format::Text => {
                    let mut out = format!("# {} of order {}: {} subgroups\n", g.label(), g.order(), records.len());
                    out.push_str("# index order normal class maximal_in generators\n");
                    for r in &records {
                        let maximal: Vec<String> = r.maximal_in.iter().map(|i| i.to_string()).collect();
                        out.push_str(&format!(
                            "{} {} {} {} [{}] {}\n",
                            r.index,
                            r.order,
                            r.is_normal,
                            r.conjugacy_class,
                            maximal.join(","),
                            if r.generators.is_empty() { "()".to_string() } else { r.generators.join(",") }
                        ));
                    }
                    out
                }
            };
            emit(&text, path.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckNr { group, subgroup } => {
            let g = group_args(&group)?;
            let h = parse_subgroup(&g, &subgroup)?;
            let verdict = is_nr_subgroup(&g, &h)?;
            if verdict.is_nr {
                println!("NR: every normal subgroup of H (order {}) gives a special triple", h.order());
            } else {
                let w = verdict.witness.expect("witness on failure");
                println!("not NR");
                println!("witness K (order {}): {}", w.k.order(), g.describe(&w.k).join(","));
                println!("K^G has order {}; K^G meet H has order {}", w.closure.order(), w.meet.order());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckTriple { g, h, k, corpus } => {
            let g = resolve_group(&g, &corpus, None)?;
            let h = parse_subgroup(&g, &h)?;
            let k = parse_subgroup(&g, &k)?;
            let rec = is_special_triple(&g, &h, &k)?;
            println!("{}", if rec.special { "special" } else { "not special" });
            println!(
                "|H| = {}, |K| = {}, |K^G| = {}, |K^G meet H| = {}",
                h.order(),
                k.order(),
                rec.closure.order(),
                rec.meet.order()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Numscan { scan } => {
            match scan {
                Scan::Lemma3 { t_max } => {
                    if t_max > LEMMA3_T_CAP {
                        bail!("--t-max is capped at {LEMMA3_T_CAP}");
                    }
                    for (label, part) in [("a", Lemma3Part::A), ("b", Lemma3Part::B)] {
                        let hits: Vec<String> = lemma3_scan(part, t_max)?.iter().map(u32::to_string).collect();
                        println!("part {label}, t <= {t_max}: {{{}}}", hits.join(", "));
                    }
                }
                Scan::Zsigmondy { q_max, n_max } => {
                    for q in 2..=q_max as u128 {
                        for n in 3..=n_max {
                            let ds = primitive_prime_divisors(q, n)?;
                            let ds: Vec<String> = ds.iter().map(u128::to_string).collect();
                            println!("q = {q}, n = {n}: {{{}}}", ds.join(", "));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
