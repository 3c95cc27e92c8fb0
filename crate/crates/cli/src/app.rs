use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cayleyseq_core::classify::{classify, coset_structure, dagger_check, ConflictKind, Witnesses};
use cayleyseq_core::fraction::l_multivariate;
use cayleyseq_core::frequency::{frequency_report_with, RootPosition, Verdict, DEFAULT_TOLERANCE};
use cayleyseq_core::group::{cayley_automaton, generate_group, DEFAULT_ELEMENT_BOUND};
use cayleyseq_core::kernel::minimal_relations;
use cayleyseq_core::numeration::word_to_affine;
use cayleyseq_core::{
    build_kernel_graph, corpus, empirical_counts, l_univariate, Automaton, CorpusName, Digit,
    KernelGraph, Permutation, VertexOrder,
};

use crate::error::CliError;
use crate::format::parse_automaton;
use crate::report::{
    AutomatonReport, ClassifyReport, CosetEntry, EmpiricalEntry, FractionReport,
    FrequencyReportEntry, KernelReport, OscillationEntry, RelationEntry, RootEntry, TermsReport,
    VerdictEntry, VertexEntry,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// Breadth-first from the base sequence.
    Bfs,
    /// By output label; needs one label per kernel vertex.
    Labels,
}

/// Kernels, classification, rational fractions and letter frequencies of
/// automatic sequences.
///
/// INPUT is an automaton file or the name of a built-in automaton
/// (thue_morse, apery_mod7, quaternion_fig3, dihedral_square,
/// leftmost_digit_p<P>).
#[derive(Debug, Parser)]
#[command(name = "cayleyseq", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Vertex order of the kernel graph.
    #[arg(long, value_enum, default_value_t = Order::Bfs, global = true)]
    pub order: Order,
    /// Tolerance for placing numeric roots against the circle |x| = 1/p.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tol, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an automaton and print it in canonical form.
    Validate { input: String },
    /// Print the terms a(A) … a(B), both ends included.
    Eval {
        input: String,
        #[arg(long, value_name = "A..B", value_parser = parse_range)]
        n: (u64, u64),
    },
    /// Print the kernel graph and the shortest relations of the sequence.
    Kernel { input: String },
    /// Decide global relations, homogeneity and self-similarity.
    Classify { input: String },
    /// Print the rational fraction L(a, x), or L(a, x_0, …, x_{p-1}).
    Fraction {
        input: String,
        #[arg(long)]
        multivariate: bool,
        /// Kernel vertex to use instead of the sequence itself.
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Asymptotic letter frequencies along p^n.
    Freq {
        input: String,
        /// Also count letters among a(1) … a(p^N).
        #[arg(long, value_name = "N")]
        empirical: Option<u32>,
    },
    /// Build the Cayley automaton of a permutation group, letters the left
    /// cosets of K.
    FromGroup {
        /// Generators in cycle notation, one per digit; repeat the flag or
        /// separate with ';'.
        #[arg(long, required = true, value_delimiter = ';')]
        gens: Vec<String>,
        /// Generators of the subgroup K (default: trivial).
        #[arg(long = "K", visible_alias = "k", value_delimiter = ';')]
        k: Vec<String>,
    },
    /// Print a built-in automaton.
    Corpus { name: String },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a
        .trim()
        .parse()
        .map_err(|_| format!("invalid start {a:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("invalid end {b:?}"))?;
    if b < a {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

/// A file path if one exists, otherwise a corpus name.
pub fn load(input: &str) -> Result<Automaton, CliError> {
    let path = Path::new(input);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: input.to_string(),
            source,
        })?;
        return Ok(parse_automaton(&text)?);
    }
    input
        .parse::<CorpusName>()
        .map(corpus)
        .map_err(|_| CliError::NotFound(input.to_string()))
}

fn render<T: Serialize>(
    format: OutputFormat,
    report: &T,
    text: impl FnOnce(&T) -> String,
) -> String {
    match format {
        OutputFormat::Text => text(report),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn graph_of(aut: &Automaton, order: Order) -> Result<KernelGraph, CliError> {
    let order = match order {
        Order::Bfs => VertexOrder::Bfs,
        Order::Labels => VertexOrder::Labels,
    };
    Ok(build_kernel_graph(aut, order)?)
}

fn digits_text(word: &[Digit], p: u32) -> String {
    let parts: Vec<String> = word.iter().map(ToString::to_string).collect();
    parts.join(if p <= 10 { "" } else { "," })
}

/// Run one command and return what goes to standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { input } => {
            let aut = load(input)?;
            Ok(render(
                fmt,
                &AutomatonReport::new(&aut),
                AutomatonReport::to_text,
            ))
        }
        Command::Corpus { name } => {
            let name: CorpusName = name.parse().map_err(|_| CliError::NotFound(name.clone()))?;
            Ok(render(
                fmt,
                &AutomatonReport::new(&corpus(name)),
                AutomatonReport::to_text,
            ))
        }
        Command::Eval { input, n: (a, b) } => {
            let aut = load(input)?;
            let terms = (*a..=*b)
                .map(|n| Ok(aut.alphabet()[aut.eval(n)?].clone()))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(render(
                fmt,
                &TermsReport { start: *a, terms },
                TermsReport::to_text,
            ))
        }
        Command::Kernel { input } => {
            let aut = load(input)?;
            let graph = graph_of(&aut, cli.order)?;
            Ok(render(fmt, &kernel_report(&graph)?, KernelReport::to_text))
        }
        Command::Classify { input } => {
            let aut = load(input)?;
            let graph = graph_of(&aut, cli.order)?;
            Ok(render(
                fmt,
                &classify_report(&aut, &graph)?,
                ClassifyReport::to_text,
            ))
        }
        Command::Fraction {
            input,
            multivariate,
            vertex,
        } => {
            let aut = load(input)?;
            let graph = graph_of(&aut, cli.order)?;
            let v = vertex.unwrap_or(graph.base_vertex());
            let report = if *multivariate {
                FractionReport::multivariate(v, &l_multivariate(&graph, v)?)
            } else {
                FractionReport::univariate(v, &l_univariate(&graph, v)?)
            };
            Ok(render(fmt, &report, FractionReport::to_text))
        }
        Command::Freq { input, empirical } => {
            let aut = load(input)?;
            let graph = graph_of(&aut, cli.order)?;
            Ok(render(
                fmt,
                &frequency_entry(&aut, &graph, cli.tol, *empirical)?,
                FrequencyReportEntry::to_text,
            ))
        }
        Command::FromGroup { gens, k } => {
            let aut = from_group(gens, k)?;
            Ok(render(
                fmt,
                &AutomatonReport::new(&aut),
                AutomatonReport::to_text,
            ))
        }
    }
}

fn kernel_report(graph: &KernelGraph) -> Result<KernelReport, CliError> {
    let aut = graph.source();
    let p = graph.base();
    let vertices = (0..graph.num_vertices())
        .map(|v| VertexEntry {
            states: graph
                .members(v)
                .iter()
                .map(|&q| aut.state_name(q).to_string())
                .collect(),
            first_terms: graph
                .first_terms(v)
                .iter()
                .map(|&l| aut.alphabet()[l].clone())
                .collect(),
            successors: (0..p).map(|d| graph.next(v, d)).collect(),
        })
        .collect();
    // a shortest relation word never needs more than one pass round Γ(a)
    let words = minimal_relations(graph, graph.base_vertex(), graph.num_vertices() + 1)?;
    let mut base_relations = Vec::with_capacity(words.len());
    for (r, w) in words.iter().enumerate() {
        base_relations.push(match w {
            Some(w) => {
                let code = word_to_affine(w, p)?;
                Some(RelationEntry {
                    relation_type: r as u32,
                    exponent: code.exponent(),
                    offset: code.offset(),
                    code: digits_text(&code.code(), p),
                })
            }
            None => None,
        });
    }
    Ok(KernelReport {
        base: p,
        base_vertex: graph.base_vertex(),
        vertices,
        base_relations,
    })
}

fn witness_lines(graph: &KernelGraph, w: &Witnesses) -> Vec<String> {
    let letter = |l: usize| graph.alphabet()[l].clone();
    let p = graph.base();
    let mut out = Vec::new();
    for d in &w.non_bijective {
        out.push(format!("t{d} is not a bijection of the kernel"));
    }
    if let Some((u, v)) = w.unreachable {
        out.push(format!("vertex {u} does not reach vertex {v}"));
    }
    if let Some((u, word)) = &w.rel_mismatch {
        out.push(format!(
            "relations of vertex {u} and the base differ on the word {} (digits least significant first)",
            digits_text(word, p)
        ));
    }
    if let Some(c) = &w.similarity_conflict {
        let at = digits_text(&c.word, p);
        out.push(match c.kind {
            ConflictKind::NotAFunction {
                letter: l,
                images: (x, y),
            } => format!(
                "vertex {}: letter {} would map to both {} and {} (word {at})",
                c.vertex,
                letter(l),
                letter(x),
                letter(y)
            ),
            ConflictKind::NotInjective {
                letters: (x, y),
                image,
            } => format!(
                "vertex {}: letters {} and {} would both map to {} (word {at})",
                c.vertex,
                letter(x),
                letter(y),
                letter(image)
            ),
        });
    }
    if let Some(n) = w.reproduction_mismatch {
        out.push(format!("the derived labeling first differs at n = {n}"));
    }
    out
}

fn classify_report(aut: &Automaton, graph: &KernelGraph) -> Result<ClassifyReport, CliError> {
    let cls = classify(graph)?;
    // only meaningful when every digit permutes the states
    let dagger = (0..aut.base())
        .map(|d| aut.digit_permutation(d))
        .collect::<Option<Vec<Permutation>>>()
        .and_then(|gens| generate_group(&gens, DEFAULT_ELEMENT_BOUND).ok())
        .and_then(|group| dagger_check(aut, &group).ok());
    let cosets = coset_structure(graph)?.map(|c| CosetEntry {
        group_order: c.group.order(),
        subgroup_order: c.subgroup.len(),
        subgroup_generators: c
            .group
            .subgroup_generators(&c.subgroup)
            .into_iter()
            .map(|i| c.group.element(i).to_cycle_string())
            .collect(),
        core_trivial: c.core_trivial,
    });
    Ok(ClassifyReport {
        base: cls.base,
        kernel_size: cls.kernel_size,
        monoid_order: cls.monoid_order,
        global_relations_per_type: cls.global_relations.per_type.clone(),
        r1: cls.r1,
        is_group: cls.is_group,
        is_cayley: cls.is_cayley,
        homogeneous: cls.homogeneous,
        self_similar: cls.self_similar,
        reproduces: cls.reproduces,
        dagger,
        cosets,
        witnesses: witness_lines(graph, &cls.witnesses),
        stabilizer_generators: cls
            .witnesses
            .stabilizer_generators
            .iter()
            .map(Permutation::to_cycle_string)
            .collect(),
    })
}

fn frequency_entry(
    aut: &Automaton,
    graph: &KernelGraph,
    tol: f64,
    empirical: Option<u32>,
) -> Result<FrequencyReportEntry, CliError> {
    let p = aut.base();
    let l = l_univariate(graph, graph.base_vertex())?;
    let report = frequency_report_with(&l, p, tol)?;
    let roots = report
        .analysis
        .roots
        .iter()
        .map(|r| RootEntry {
            value: match &r.exact {
                Some(q) => q.to_string(),
                None if r.value.im == 0.0 => format!("{:.12}", r.value.re),
                None => format!("{:.12}{:+.12}i", r.value.re, r.value.im),
            },
            modulus: r.modulus,
            theta: r.theta,
            multiplicity: r.multiplicity,
            position: match r.position {
                RootPosition::Inside => "inside",
                RootPosition::OnCircle => "on_circle",
                RootPosition::Outside => "outside",
            }
            .to_string(),
            residue: r.residue.as_ref().map(ToString::to_string),
        })
        .collect();
    let verdicts = report
        .verdicts
        .iter()
        .map(|v| match v {
            Verdict::Limit(x) => VerdictEntry::Limit {
                value: x.to_string(),
            },
            Verdict::EvenOdd { even, odd, mean } => VerdictEntry::EvenOdd {
                even: even.to_string(),
                odd: odd.to_string(),
                mean: mean.to_string(),
            },
            Verdict::Oscillation(terms) => VerdictEntry::Oscillation {
                terms: terms
                    .iter()
                    .map(|t| OscillationEntry {
                        theta: t.theta,
                        coefficient: t.coefficient.to_string(),
                    })
                    .collect(),
            },
        })
        .collect();
    let empirical = match empirical {
        Some(n) => {
            let counts = empirical_counts(aut, n)?;
            let k = aut.alphabet().len();
            Some(EmpiricalEntry {
                exponent: n,
                power: counts.power(),
                ratios: (0..k).map(|l| counts.ratio(l)).collect(),
                predicted: (0..k).map(|l| report.predicted(l, n)).collect(),
                counts: counts.through,
            })
        }
        None => None,
    };
    Ok(FrequencyReportEntry {
        base: p,
        letters: report.letters.clone(),
        denominator: l.denominator().format("x"),
        roots,
        no_root_inside: report.analysis.no_root_inside,
        circle_roots_simple: report.analysis.circle_roots_simple,
        only_root_one_over_p: report.analysis.only_root_one_over_p,
        verdicts,
        empirical,
    })
}

fn from_group(gens: &[String], k: &[String]) -> Result<Automaton, CliError> {
    let texts: Vec<&str> = gens
        .iter()
        .chain(k)
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    // every permutation acts on the largest point mentioned anywhere
    let degree = texts
        .iter()
        .map(|t| Permutation::parse_cycles(t, None).map(|p| p.degree()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0)
        .max(1);
    let parse = |list: &[String]| -> Result<Vec<Permutation>, CliError> {
        list.iter()
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| Ok(Permutation::parse_cycles(s, Some(degree))?))
            .collect()
    };
    let generators = parse(gens)?;
    if generators.len() < 2 {
        return Err(CliError::Usage(
            "from-group needs at least two generators".into(),
        ));
    }
    let group = generate_group(&generators, DEFAULT_ELEMENT_BOUND)?;
    let k_gens = parse(k)?;
    let members = group.subgroup_generated(&k_gens)?;
    let subgroup: Vec<Permutation> = members.iter().map(|&i| group.element(i).clone()).collect();
    Ok(cayley_automaton(&group, &subgroup)?)
}
