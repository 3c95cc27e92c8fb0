//! Automatic sequences produced by symmetric automata.
//!
//! A `p`-automaton reads the base-`p` digits of `n >= 1` least significant
//! digit first and outputs the label of the state it lands in. This crate
//! computes, with exact arithmetic:
//!
//! - the kernel `N(a)` of such a sequence and its graph `Γ(a)` with the
//!   generator maps `t_0 … t_{p-1}` ([`kernel`]);
//! - whether the sequence has global relations of all types, is homogeneous
//!   or self-similar, together with the group-theoretic certificates
//!   ([`classify`]);
//! - permutation groups, Schreier and Cayley automata and a small corpus of
//!   worked automata ([`group`], [`corpus`]);
//! - the rational fractions `L(a, x_0, …, x_{p-1})` and `L(a, x)`
//!   ([`fraction`]) on top of exact polynomial arithmetic ([`poly`]);
//! - asymptotic letter frequencies along `p^n` ([`frequency`]).
//!
//! Sequences are indexed from 1. Index 0 is always an error.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod automaton;
pub mod classify;
pub mod corpus;
pub mod fraction;
pub mod frequency;
pub mod group;
pub mod kernel;
pub mod linalg;
pub mod numeration;
mod packed;
pub mod perm;
pub mod poly;

pub use automaton::{Automaton, AutomatonError, Letter, State};
pub use classify::{classify, Classification};
pub use corpus::{corpus, CorpusName};
pub use fraction::{l_multivariate, l_univariate, MultivariateFraction, UnivariateFraction};
pub use frequency::{analyze_denominator, empirical_counts, frequency_report, FrequencyReport};
pub use group::PermGroup;
pub use kernel::{build_kernel_graph, KernelGraph, VertexOrder};
pub use numeration::{digits_lsb, AffineCode};
pub use perm::Permutation;

/// Digits are stored as `u32`, always `< p`.
pub type Digit = u32;
