//! The line-based automaton file format.
//!
//! ```text
//! # Thue-Morse
//! p 2
//! alphabet A B
//! state A A initial
//! state B B
//! edge A 0 A
//! edge A 1 B
//! edge B 0 B
//! edge B 1 A
//! ```
//!
//! Directives may appear in any order; `#` starts a comment. States and
//! symbols keep their declaration order.

use std::collections::HashMap;
use std::fmt;

use cayleyseq_core::Automaton;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    /// 1-based; for problems found only at the end, the last line.
    pub line: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    UnknownDirective(String),
    MissingArgument(&'static str),
    TrailingTokens(String),
    InvalidBase(String),
    BaseTooSmall(u32),
    DuplicateBase,
    MissingBase,
    DuplicateAlphabet,
    MissingAlphabet,
    DuplicateSymbol(String),
    UnknownSymbol(String),
    DuplicateState(String),
    UnknownState(String),
    InvalidDigit(String),
    DigitOutOfRange { digit: u32, base: u32 },
    DuplicateTransition { state: String, digit: u32 },
    MissingTransition { state: String, digit: u32 },
    MultipleInitial(String),
    NoInitial,
    NoStates,
}

impl FormatErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            FormatErrorKind::UnknownDirective(_) => "unknown_directive",
            FormatErrorKind::MissingArgument(_) => "missing_argument",
            FormatErrorKind::TrailingTokens(_) => "trailing_tokens",
            FormatErrorKind::InvalidBase(_) => "invalid_base",
            FormatErrorKind::BaseTooSmall(_) => "base_too_small",
            FormatErrorKind::DuplicateBase => "duplicate_base",
            FormatErrorKind::MissingBase => "missing_base",
            FormatErrorKind::DuplicateAlphabet => "duplicate_alphabet",
            FormatErrorKind::MissingAlphabet => "missing_alphabet",
            FormatErrorKind::DuplicateSymbol(_) => "duplicate_symbol",
            FormatErrorKind::UnknownSymbol(_) => "unknown_symbol",
            FormatErrorKind::DuplicateState(_) => "duplicate_state",
            FormatErrorKind::UnknownState(_) => "unknown_state",
            FormatErrorKind::InvalidDigit(_) => "invalid_digit",
            FormatErrorKind::DigitOutOfRange { .. } => "digit_out_of_range",
            FormatErrorKind::DuplicateTransition { .. } => "duplicate_transition",
            FormatErrorKind::MissingTransition { .. } => "missing_transition",
            FormatErrorKind::MultipleInitial(_) => "multiple_initial",
            FormatErrorKind::NoInitial => "no_initial",
            FormatErrorKind::NoStates => "no_states",
        }
    }
}

impl fmt::Display for FormatErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatErrorKind::UnknownDirective(d) => write!(f, "unknown directive {d:?}"),
            FormatErrorKind::MissingArgument(what) => write!(f, "missing {what}"),
            FormatErrorKind::TrailingTokens(t) => write!(f, "unexpected {t:?}"),
            FormatErrorKind::InvalidBase(s) => write!(f, "invalid base {s:?}"),
            FormatErrorKind::BaseTooSmall(p) => write!(f, "base must be at least 2, got {p}"),
            FormatErrorKind::DuplicateBase => write!(f, "base declared twice"),
            FormatErrorKind::MissingBase => write!(f, "no `p` line"),
            FormatErrorKind::DuplicateAlphabet => write!(f, "alphabet declared twice"),
            FormatErrorKind::MissingAlphabet => write!(f, "no `alphabet` line"),
            FormatErrorKind::DuplicateSymbol(s) => write!(f, "duplicate symbol {s:?}"),
            FormatErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol {s:?}"),
            FormatErrorKind::DuplicateState(s) => write!(f, "duplicate state {s:?}"),
            FormatErrorKind::UnknownState(s) => write!(f, "unknown state {s:?}"),
            FormatErrorKind::InvalidDigit(s) => write!(f, "invalid digit {s:?}"),
            FormatErrorKind::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} is not below the base {base}")
            }
            FormatErrorKind::DuplicateTransition { state, digit } => {
                write!(f, "duplicate transition from {state:?} on digit {digit}")
            }
            FormatErrorKind::MissingTransition { state, digit } => {
                write!(f, "missing transition from {state:?} on digit {digit}")
            }
            FormatErrorKind::MultipleInitial(s) => {
                write!(f, "state {s:?} is a second initial state")
            }
            FormatErrorKind::NoInitial => write!(f, "no initial state"),
            FormatErrorKind::NoStates => write!(f, "no states"),
        }
    }
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

struct StateLine {
    line: usize,
    name: String,
    symbol: String,
}

struct EdgeLine {
    line: usize,
    src: String,
    digit: String,
    dst: String,
}

fn expect_end<'a>(line: usize, mut rest: impl Iterator<Item = &'a str>) -> Result<(), FormatError> {
    match rest.next() {
        Some(t) => Err(err(line, FormatErrorKind::TrailingTokens(t.to_string()))),
        None => Ok(()),
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton, FormatError> {
    let mut base: Option<(usize, u32)> = None;
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut states: Vec<StateLine> = Vec::new();
    let mut initial: Option<usize> = None;
    let mut edges: Vec<EdgeLine> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        match directive {
            "p" => {
                let s = tokens
                    .next()
                    .ok_or(err(line, FormatErrorKind::MissingArgument("base")))?;
                let p: u32 = s
                    .parse()
                    .map_err(|_| err(line, FormatErrorKind::InvalidBase(s.to_string())))?;
                if p < 2 {
                    return Err(err(line, FormatErrorKind::BaseTooSmall(p)));
                }
                if base.is_some() {
                    return Err(err(line, FormatErrorKind::DuplicateBase));
                }
                expect_end(line, tokens)?;
                base = Some((line, p));
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(err(line, FormatErrorKind::DuplicateAlphabet));
                }
                let mut symbols: Vec<String> = Vec::new();
                for t in tokens {
                    if symbols.iter().any(|s| s == t) {
                        return Err(err(line, FormatErrorKind::DuplicateSymbol(t.to_string())));
                    }
                    symbols.push(t.to_string());
                }
                if symbols.is_empty() {
                    return Err(err(line, FormatErrorKind::MissingArgument("symbols")));
                }
                alphabet = Some((line, symbols));
            }
            "state" => {
                let name = tokens
                    .next()
                    .ok_or(err(line, FormatErrorKind::MissingArgument("state name")))?;
                let symbol = tokens
                    .next()
                    .ok_or(err(line, FormatErrorKind::MissingArgument("state symbol")))?;
                match tokens.next() {
                    Some("initial") => {
                        if initial.is_some() {
                            return Err(err(
                                line,
                                FormatErrorKind::MultipleInitial(name.to_string()),
                            ));
                        }
                        initial = Some(states.len());
                    }
                    Some(t) => {
                        return Err(err(line, FormatErrorKind::TrailingTokens(t.to_string())))
                    }
                    None => {}
                }
                expect_end(line, tokens)?;
                if states.iter().any(|s| s.name == name) {
                    return Err(err(line, FormatErrorKind::DuplicateState(name.to_string())));
                }
                states.push(StateLine {
                    line,
                    name: name.to_string(),
                    symbol: symbol.to_string(),
                });
            }
            "edge" => {
                let mut next = |what| {
                    tokens
                        .next()
                        .map(str::to_string)
                        .ok_or(err(line, FormatErrorKind::MissingArgument(what)))
                };
                let src = next("source state")?;
                let digit = next("digit")?;
                let dst = next("target state")?;
                expect_end(line, tokens)?;
                edges.push(EdgeLine {
                    line,
                    src,
                    digit,
                    dst,
                });
            }
            other => {
                return Err(err(
                    line,
                    FormatErrorKind::UnknownDirective(other.to_string()),
                ))
            }
        }
    }

    let end = last_line.max(1);
    let (_, p) = base.ok_or(err(end, FormatErrorKind::MissingBase))?;
    let (_, alphabet) = alphabet.ok_or(err(end, FormatErrorKind::MissingAlphabet))?;
    if states.is_empty() {
        return Err(err(end, FormatErrorKind::NoStates));
    }
    let initial = initial.ok_or(err(end, FormatErrorKind::NoInitial))?;

    let state_index: HashMap<&str, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.name.as_str(), i))
        .collect();
    let mut labels = Vec::with_capacity(states.len());
    for s in &states {
        let l = alphabet.iter().position(|a| *a == s.symbol).ok_or(err(
            s.line,
            FormatErrorKind::UnknownSymbol(s.symbol.clone()),
        ))?;
        labels.push(l);
    }

    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; p as usize]; states.len()];
    for e in &edges {
        let &src = state_index
            .get(e.src.as_str())
            .ok_or(err(e.line, FormatErrorKind::UnknownState(e.src.clone())))?;
        let &dst = state_index
            .get(e.dst.as_str())
            .ok_or(err(e.line, FormatErrorKind::UnknownState(e.dst.clone())))?;
        let digit: u32 = e
            .digit
            .parse()
            .map_err(|_| err(e.line, FormatErrorKind::InvalidDigit(e.digit.clone())))?;
        if digit >= p {
            return Err(err(
                e.line,
                FormatErrorKind::DigitOutOfRange { digit, base: p },
            ));
        }
        let slot = &mut table[src][digit as usize];
        if slot.is_some() {
            return Err(err(
                e.line,
                FormatErrorKind::DuplicateTransition {
                    state: e.src.clone(),
                    digit,
                },
            ));
        }
        *slot = Some(dst);
    }
    let mut transitions = Vec::with_capacity(states.len());
    for (s, row) in states.iter().zip(&table) {
        let mut targets = Vec::with_capacity(row.len());
        for (d, t) in row.iter().enumerate() {
            targets.push(t.ok_or(err(
                s.line,
                FormatErrorKind::MissingTransition {
                    state: s.name.clone(),
                    digit: d as u32,
                },
            ))?);
        }
        transitions.push(targets);
    }

    let names = states.into_iter().map(|s| s.name).collect();
    Automaton::new(p, names, alphabet, labels, transitions, initial).map_err(|e| {
        // everything Automaton::new checks was checked above
        unreachable!("validated automaton rejected: {e:?}")
    })
}

/// Canonical text: `p`, `alphabet`, the states in order, then the edges
/// grouped by state and digit.
pub fn serialize_automaton(aut: &Automaton) -> String {
    let mut out = format!("p {}\nalphabet {}\n", aut.base(), aut.alphabet().join(" "));
    for q in 0..aut.num_states() {
        out.push_str(&format!(
            "state {} {}",
            aut.state_name(q),
            aut.alphabet()[aut.label(q)]
        ));
        if q == aut.initial() {
            out.push_str(" initial");
        }
        out.push('\n');
    }
    for q in 0..aut.num_states() {
        for d in 0..aut.base() {
            out.push_str(&format!(
                "edge {} {} {}\n",
                aut.state_name(q),
                d,
                aut.state_name(aut.next(q, d))
            ));
        }
    }
    out
}
