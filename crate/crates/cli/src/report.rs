//! Serializable reports. Each one renders its text form from its own
//! fields, so a report read back from JSON prints the same text.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use cayleyseq_core::poly::{MPoly, Monomial, UPoly};
use cayleyseq_core::{MultivariateFraction, UnivariateFraction};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_rational(s: &str) -> BigRational {
    s.parse()
        .unwrap_or_else(|_| panic!("malformed rational {s:?} in report"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateEntry {
    pub name: String,
    pub symbol: String,
    pub initial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub from: String,
    pub digit: u32,
    pub to: String,
}

/// An automaton in file form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutomatonReport {
    pub base: u32,
    pub alphabet: Vec<String>,
    pub states: Vec<StateEntry>,
    pub edges: Vec<EdgeEntry>,
}

impl AutomatonReport {
    pub fn new(aut: &cayleyseq_core::Automaton) -> Self {
        let states = (0..aut.num_states())
            .map(|q| StateEntry {
                name: aut.state_name(q).to_string(),
                symbol: aut.alphabet()[aut.label(q)].clone(),
                initial: q == aut.initial(),
            })
            .collect();
        let edges = (0..aut.num_states())
            .flat_map(|q| {
                (0..aut.base()).map(move |d| EdgeEntry {
                    from: aut.state_name(q).to_string(),
                    digit: d,
                    to: aut.state_name(aut.next(q, d)).to_string(),
                })
            })
            .collect();
        AutomatonReport {
            base: aut.base(),
            alphabet: aut.alphabet().to_vec(),
            states,
            edges,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p {}\nalphabet {}\n", self.base, self.alphabet.join(" "));
        for s in &self.states {
            let _ = write!(out, "state {} {}", s.name, s.symbol);
            if s.initial {
                out.push_str(" initial");
            }
            out.push('\n');
        }
        for e in &self.edges {
            let _ = writeln!(out, "edge {} {} {}", e.from, e.digit, e.to);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermsReport {
    pub start: u64,
    pub terms: Vec<String>,
}

impl TermsReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let _ = writeln!(out, "a({}) = {t}", self.start + k as u64);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub states: Vec<String>,
    /// `u_1 … u_{p-1}`.
    pub first_terms: Vec<String>,
    /// `t_0(u) … t_{p-1}(u)`.
    pub successors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub relation_type: u32,
    pub exponent: u32,
    pub offset: u64,
    /// The code `[p^i X + j]`, most significant digit first.
    pub code: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub base: u32,
    pub base_vertex: usize,
    pub vertices: Vec<VertexEntry>,
    /// Shortest relation of the base sequence of each type, if any.
    pub base_relations: Vec<Option<RelationEntry>>,
}

impl KernelReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "kernel: {} sequences, base vertex {}\n",
            self.vertices.len(),
            self.base_vertex
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let succ: Vec<String> = v
                .successors
                .iter()
                .enumerate()
                .map(|(d, s)| format!("t{d} -> {s}"))
                .collect();
            let _ = writeln!(
                out,
                "vertex {i}: states {}; first terms {}; {}",
                v.states.join(" "),
                v.first_terms.join(" "),
                succ.join(", ")
            );
        }
        out.push_str("shortest relations of the base sequence:\n");
        for (r, rel) in self.base_relations.iter().enumerate() {
            match rel {
                Some(rel) => {
                    let _ = writeln!(
                        out,
                        "  type {r}: ({}, {}) code {}",
                        rel.exponent, rel.offset, rel.code
                    );
                }
                None => {
                    let _ = writeln!(out, "  type {r}: none");
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetEntry {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub subgroup_generators: Vec<String>,
    pub core_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub base: u32,
    pub kernel_size: usize,
    pub monoid_order: usize,
    pub global_relations_per_type: Vec<bool>,
    pub r1: bool,
    pub is_group: bool,
    pub is_cayley: bool,
    pub homogeneous: bool,
    pub self_similar: bool,
    pub reproduces: bool,
    /// Minimality condition for Schreier automata; absent otherwise.
    pub dagger: Option<bool>,
    pub cosets: Option<CosetEntry>,
    /// Human-readable evidence for the negative verdicts.
    pub witnesses: Vec<String>,
    pub stabilizer_generators: Vec<String>,
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        let per_type: Vec<String> = self
            .global_relations_per_type
            .iter()
            .enumerate()
            .map(|(r, &b)| format!("{r}: {}", yes_no(b)))
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "base: {}", self.base);
        let _ = writeln!(out, "kernel size: {}", self.kernel_size);
        let _ = writeln!(out, "monoid order: {}", self.monoid_order);
        let _ = writeln!(
            out,
            "global relations of all types: {} ({})",
            yes_no(self.r1),
            per_type.join(", ")
        );
        let _ = writeln!(out, "monoid is a group: {}", yes_no(self.is_group));
        let _ = writeln!(
            out,
            "kernel graph is a Cayley graph: {}",
            yes_no(self.is_cayley)
        );
        let _ = writeln!(out, "homogeneous: {}", yes_no(self.homogeneous));
        let _ = writeln!(out, "self-similar: {}", yes_no(self.self_similar));
        let _ = writeln!(
            out,
            "derived labeling reproduces: {}",
            yes_no(self.reproduces)
        );
        if let Some(d) = self.dagger {
            let _ = writeln!(out, "condition (dagger): {}", yes_no(d));
        }
        if !self.stabilizer_generators.is_empty() {
            let _ = writeln!(
                out,
                "stabilizer of the base: <{}>",
                self.stabilizer_generators.join(", ")
            );
        }
        if let Some(c) = &self.cosets {
            let _ = writeln!(
                out,
                "letters as cosets: |G| = {}, K = <{}> of order {}, core trivial: {}",
                c.group_order,
                c.subgroup_generators.join(", "),
                c.subgroup_order,
                yes_no(c.core_trivial)
            );
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness: {w}");
        }
        out
    }
}

/// One term of a multivariate polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FractionReport {
    /// Coefficients from degree 0 upwards.
    Univariate {
        vertex: usize,
        letters: Vec<String>,
        numerators: Vec<Vec<String>>,
        denominator: Vec<String>,
    },
    Multivariate {
        vertex: usize,
        base: u32,
        letters: Vec<String>,
        numerators: Vec<Vec<TermEntry>>,
        denominator: Vec<TermEntry>,
    },
}

fn upoly_entry(p: &UPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn upoly_of(c: &[String]) -> UPoly {
    UPoly::from_coeffs(c.iter().map(|s| parse_rational(s)).collect())
}

fn mpoly_entry(p: &MPoly) -> Vec<TermEntry> {
    p.terms()
        .map(|(m, c)| TermEntry {
            exponents: m.exponents().to_vec(),
            coefficient: c.to_string(),
        })
        .collect()
}

fn mpoly_of(terms: &[TermEntry]) -> MPoly {
    terms.iter().fold(MPoly::zero(), |acc, t| {
        &acc + &MPoly::term(
            parse_rational(&t.coefficient),
            Monomial::new(t.exponents.clone()),
        )
    })
}

impl FractionReport {
    pub fn univariate(vertex: usize, f: &UnivariateFraction) -> Self {
        FractionReport::Univariate {
            vertex,
            letters: f.letters().to_vec(),
            numerators: f.numerators().iter().map(upoly_entry).collect(),
            denominator: upoly_entry(f.denominator()),
        }
    }

    pub fn multivariate(vertex: usize, f: &MultivariateFraction) -> Self {
        FractionReport::Multivariate {
            vertex,
            base: f.base(),
            letters: f.letters().to_vec(),
            numerators: f.numerators().iter().map(mpoly_entry).collect(),
            denominator: mpoly_entry(f.denominator()),
        }
    }

    pub fn to_text(&self) -> String {
        let text = match self {
            FractionReport::Univariate {
                letters,
                numerators,
                denominator,
                ..
            } => UnivariateFraction::from_parts(
                letters.clone(),
                numerators.iter().map(|c| upoly_of(c)).collect(),
                upoly_of(denominator),
            )
            .map(|f| f.to_text()),
            FractionReport::Multivariate {
                base,
                letters,
                numerators,
                denominator,
                ..
            } => MultivariateFraction::from_parts(
                *base,
                letters.clone(),
                numerators.iter().map(|t| mpoly_of(t)).collect(),
                mpoly_of(denominator),
            )
            .map(|f| f.to_text()),
        };
        format!("{}\n", text.expect("report holds a valid fraction"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub value: String,
    pub modulus: f64,
    pub theta: f64,
    pub multiplicity: usize,
    /// `inside`, `on_circle` or `outside` the circle `|x| = 1/p`.
    pub position: String,
    pub residue: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationEntry {
    pub theta: f64,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictEntry {
    Limit {
        value: String,
    },
    EvenOdd {
        even: String,
        odd: String,
        mean: String,
    },
    Oscillation {
        terms: Vec<OscillationEntry>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalEntry {
    pub exponent: u32,
    pub power: u64,
    /// `a[p^n, d]` per letter.
    pub counts: Vec<u64>,
    pub ratios: Vec<f64>,
    pub predicted: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyReportEntry {
    pub base: u32,
    pub letters: Vec<String>,
    pub denominator: String,
    pub roots: Vec<RootEntry>,
    pub no_root_inside: bool,
    pub circle_roots_simple: bool,
    pub only_root_one_over_p: bool,
    pub verdicts: Vec<VerdictEntry>,
    pub empirical: Option<EmpiricalEntry>,
}

impl FrequencyReportEntry {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "denominator: {}", self.denominator);
        out.push_str("roots:\n");
        for r in &self.roots {
            let _ = write!(
                out,
                "  {}  modulus {:.6}, {}, multiplicity {}",
                r.value,
                r.modulus,
                r.position.replace('_', " "),
                r.multiplicity
            );
            if let Some(res) = &r.residue {
                let _ = write!(out, ", residue {res}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "no root inside |x| < 1/{}: {}",
            self.base,
            yes_no(self.no_root_inside)
        );
        let _ = writeln!(
            out,
            "roots on |x| = 1/{} simple: {}",
            self.base,
            yes_no(self.circle_roots_simple)
        );
        let _ = writeln!(
            out,
            "1/{} the only root on the circle: {}",
            self.base,
            yes_no(self.only_root_one_over_p)
        );
        let _ = writeln!(out, "a[{0}^n, d] / {0}^n as n grows:", self.base);
        for (l, v) in self.letters.iter().zip(&self.verdicts) {
            match v {
                VerdictEntry::Limit { value } => {
                    let _ = writeln!(out, "  {l}: limit {value}");
                }
                VerdictEntry::EvenOdd { even, odd, mean } => {
                    let _ = writeln!(
                        out,
                        "  {l}: no limit; n even -> {even}, n odd -> {odd} (even/odd mean {mean})"
                    );
                }
                VerdictEntry::Oscillation { terms } => {
                    let parts: Vec<String> = terms
                        .iter()
                        .map(|t| format!("({}) e^(-i n {:.6})", t.coefficient, t.theta))
                        .collect();
                    let _ = writeln!(out, "  {l}: oscillates like {} + o(1)", parts.join(" + "));
                }
            }
        }
        if let Some(e) = &self.empirical {
            let _ = writeln!(out, "empirical at n = {} ({} terms):", e.exponent, e.power);
            for (i, l) in self.letters.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {l}: count {}, ratio {:.6}, predicted {:.6}",
                    e.counts[i], e.ratios[i], e.predicted[i]
                );
            }
        }
        out
    }
}
