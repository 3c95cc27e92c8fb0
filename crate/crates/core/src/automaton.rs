//! The `p`-automaton model and sequence evaluation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::numeration::{self, NumerationError};
use crate::perm::Permutation;
use crate::Digit;

/// Index of a state, in declaration order.
pub type State = usize;
/// Index of an alphabet symbol, in declaration order.
pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    BaseTooSmall(u32),
    NoStates,
    InitialOutOfRange(State),
    /// A state does not have exactly `p` outgoing transitions.
    TransitionCount {
        state: State,
        found: usize,
    },
    TargetOutOfRange {
        state: State,
        digit: Digit,
        target: State,
    },
    LabelOutOfRange {
        state: State,
        letter: Letter,
    },
    LabelCount {
        found: usize,
    },
    DuplicateState(String),
    DuplicateSymbol(String),
    UnknownState(State),
    Numeration(NumerationError),
}

impl fmt::Display for AutomatonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomatonError::BaseTooSmall(p) => write!(f, "base must be at least 2, got {p}"),
            AutomatonError::NoStates => write!(f, "automaton has no states"),
            AutomatonError::InitialOutOfRange(q) => write!(f, "initial state {q} out of range"),
            AutomatonError::TransitionCount { state, found } => {
                write!(f, "state {state} has {found} transitions")
            }
            AutomatonError::TargetOutOfRange {
                state,
                digit,
                target,
            } => write!(
                f,
                "transition {state} --{digit}--> {target} leaves the state set"
            ),
            AutomatonError::LabelOutOfRange { state, letter } => {
                write!(f, "state {state} labeled with unknown symbol {letter}")
            }
            AutomatonError::LabelCount { found } => {
                write!(f, "expected one label per state, got {found}")
            }
            AutomatonError::DuplicateState(name) => write!(f, "duplicate state name {name:?}"),
            AutomatonError::DuplicateSymbol(name) => write!(f, "duplicate symbol {name:?}"),
            AutomatonError::UnknownState(q) => write!(f, "unknown state {q}"),
            AutomatonError::Numeration(e) => write!(f, "{e}"),
        }
    }
}

impl From<NumerationError> for AutomatonError {
    fn from(e: NumerationError) -> Self {
        AutomatonError::Numeration(e)
    }
}

/// A complete deterministic `p`-automaton with output labels on states.
///
/// The sequence it produces is `a_n = τ(δ*(q_0, digits of n))` for `n >= 1`,
/// digits read least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    base: u32,
    state_names: Vec<String>,
    alphabet: Vec<String>,
    initial: State,
    // row-major: delta[q * p + d]
    delta: Vec<State>,
    labels: Vec<Letter>,
}

impl Automaton {
    /// Build and validate an automaton. `transitions[q][d]` is the target of
    /// the arrow labeled `d` leaving `q`.
    pub fn new(
        base: u32,
        state_names: Vec<String>,
        alphabet: Vec<String>,
        labels: Vec<Letter>,
        transitions: Vec<Vec<State>>,
        initial: State,
    ) -> Result<Self, AutomatonError> {
        if base < 2 {
            return Err(AutomatonError::BaseTooSmall(base));
        }
        let n = state_names.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if initial >= n {
            return Err(AutomatonError::InitialOutOfRange(initial));
        }
        for (i, name) in state_names.iter().enumerate() {
            if state_names[..i].contains(name) {
                return Err(AutomatonError::DuplicateState(name.clone()));
            }
        }
        for (i, sym) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(sym) {
                return Err(AutomatonError::DuplicateSymbol(sym.clone()));
            }
        }
        if labels.len() != n {
            return Err(AutomatonError::LabelCount {
                found: labels.len(),
            });
        }
        for (q, &l) in labels.iter().enumerate() {
            if l >= alphabet.len() {
                return Err(AutomatonError::LabelOutOfRange {
                    state: q,
                    letter: l,
                });
            }
        }
        if transitions.len() != n {
            return Err(AutomatonError::TransitionCount {
                state: transitions.len().min(n),
                found: 0,
            });
        }
        let mut delta = Vec::with_capacity(n * base as usize);
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != base as usize {
                return Err(AutomatonError::TransitionCount {
                    state: q,
                    found: row.len(),
                });
            }
            for (d, &target) in row.iter().enumerate() {
                if target >= n {
                    return Err(AutomatonError::TargetOutOfRange {
                        state: q,
                        digit: d as Digit,
                        target,
                    });
                }
                delta.push(target);
            }
        }
        Ok(Automaton {
            base,
            state_names,
            alphabet,
            initial,
            delta,
            labels,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.state_names[q]
    }

    pub fn state_index(&self, name: &str) -> Option<State> {
        self.state_names.iter().position(|s| s == name)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_index(&self, symbol: &str) -> Option<Letter> {
        self.alphabet.iter().position(|s| s == symbol)
    }

    /// `τ(q)`.
    pub fn label(&self, q: State) -> Letter {
        self.labels[q]
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    /// `δ(q, d)`.
    #[inline]
    pub fn next(&self, q: State, d: Digit) -> State {
        self.delta[q * self.base as usize + d as usize]
    }

    /// Follow a word, left to right.
    pub fn run(&self, q: State, word: &[Digit]) -> State {
        word.iter().fold(q, |q, &d| self.next(q, d))
    }

    /// Same automaton with a different initial state.
    pub fn with_initial(&self, q: State) -> Result<Self, AutomatonError> {
        if q >= self.num_states() {
            return Err(AutomatonError::InitialOutOfRange(q));
        }
        let mut out = self.clone();
        out.initial = q;
        Ok(out)
    }

    /// The `n`-th term of the sequence produced from state `q`.
    pub fn eval_from(&self, q: State, n: u64) -> Result<Letter, AutomatonError> {
        if q >= self.num_states() {
            return Err(AutomatonError::UnknownState(q));
        }
        let digits = numeration::digits_lsb(n, self.base)?;
        Ok(self.labels[self.run(q, &digits)])
    }

    /// `a_n`.
    pub fn eval(&self, n: u64) -> Result<Letter, AutomatonError> {
        self.eval_from(self.initial, n)
    }

    /// The first `count` terms `a_1 … a_count`.
    pub fn prefix(&self, count: u64) -> Vec<Letter> {
        (1..=count).map(|n| self.eval(n).expect("n >= 1")).collect()
    }

    /// The state producing `a^{(i,j)} = (a_{p^i n + j})_{n >= 1}`: follow the
    /// digits of `j`, least significant first, padded to `i` moves.
    pub fn subsequence_state(&self, exponent: u32, offset: u64) -> Result<State, AutomatonError> {
        let word = numeration::affine_to_word(exponent, offset, self.base)?;
        Ok(self.run(self.initial, &word))
    }

    /// States reachable from the initial state, in BFS order (digits in
    /// increasing order).
    pub fn reachable_states(&self) -> Vec<State> {
        let n = self.num_states();
        let mut seen = vec![false; n];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for d in 0..self.base {
                let r = self.next(q, d);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        order
    }

    /// The action of digit `d` on states, when it is a permutation.
    pub fn digit_permutation(&self, d: Digit) -> Option<Permutation> {
        let images: Vec<u32> = (0..self.num_states())
            .map(|q| self.next(q, d) as u32)
            .collect();
        Permutation::from_images(images).ok()
    }

    /// Every digit acts bijectively on the states (the graph is a Schreier
    /// graph).
    pub fn is_schreier(&self) -> bool {
        (0..self.base).all(|d| self.digit_permutation(d).is_some())
    }

    /// The transition table as nested vectors.
    pub fn transitions(&self) -> Vec<Vec<State>> {
        self.delta
            .chunks(self.base as usize)
            .map(|row| row.to_vec())
            .collect()
    }
}
