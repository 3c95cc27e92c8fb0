use std::io;

use cayleyseq_core::automaton::AutomatonError;
use cayleyseq_core::classify::ClassifyError;
use cayleyseq_core::fraction::FractionError;
use cayleyseq_core::frequency::FrequencyError;
use cayleyseq_core::group::GroupError;
use cayleyseq_core::kernel::KernelError;
use cayleyseq_core::numeration::NumerationError;
use cayleyseq_core::perm::PermError;
use thiserror::Error;

use crate::format::FormatError;

/// Everything a command can fail with. Every variant except `Usage` is a
/// domain error (exit code 1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("no file and no corpus automaton named {0:?}")]
    NotFound(String),
    #[error("{0}")]
    Automaton(AutomatonError),
    #[error("{0}")]
    Kernel(KernelError),
    #[error("{0}")]
    Classify(ClassifyError),
    #[error("{0}")]
    Group(GroupError),
    #[error("{0}")]
    Perm(PermError),
    #[error("{0}")]
    Fraction(FractionError),
    #[error("{0}")]
    Frequency(FrequencyError),
    #[error("{0}")]
    Usage(String),
}

macro_rules! from_core {
    ($($ty:ty => $variant:ident),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::$variant(e)
            }
        })*
    };
}

from_core! {
    AutomatonError => Automaton,
    KernelError => Kernel,
    ClassifyError => Classify,
    GroupError => Group,
    PermError => Perm,
    FractionError => Fraction,
    FrequencyError => Frequency,
}

impl From<NumerationError> for CliError {
    fn from(e: NumerationError) -> Self {
        CliError::Automaton(AutomatonError::Numeration(e))
    }
}

fn numeration_code(e: &NumerationError) -> &'static str {
    match e {
        NumerationError::ZeroIndex => "numeration.zero_index",
        NumerationError::BaseTooSmall(_) => "numeration.base_too_small",
        NumerationError::OffsetOutOfRange { .. } => "numeration.offset_out_of_range",
        NumerationError::DigitOutOfRange { .. } => "numeration.digit_out_of_range",
        NumerationError::NotARelation => "numeration.not_a_relation",
        NumerationError::Overflow => "numeration.overflow",
    }
}

fn automaton_code(e: &AutomatonError) -> &'static str {
    match e {
        AutomatonError::BaseTooSmall(_) => "automaton.base_too_small",
        AutomatonError::NoStates => "automaton.no_states",
        AutomatonError::InitialOutOfRange(_) => "automaton.initial_out_of_range",
        AutomatonError::TransitionCount { .. } => "automaton.transition_count",
        AutomatonError::TargetOutOfRange { .. } => "automaton.target_out_of_range",
        AutomatonError::LabelOutOfRange { .. } => "automaton.label_out_of_range",
        AutomatonError::LabelCount { .. } => "automaton.label_count",
        AutomatonError::DuplicateState(_) => "automaton.duplicate_state",
        AutomatonError::DuplicateSymbol(_) => "automaton.duplicate_symbol",
        AutomatonError::UnknownState(_) => "automaton.unknown_state",
        AutomatonError::Numeration(e) => numeration_code(e),
    }
}

fn kernel_code(e: &KernelError) -> &'static str {
    match e {
        KernelError::MonoidTooLarge { .. } => "kernel.monoid_too_large",
        KernelError::LabelOrderUnavailable => "kernel.label_order_unavailable",
        KernelError::VertexOutOfRange(_) => "kernel.vertex_out_of_range",
    }
}

fn perm_code(e: &PermError) -> &'static str {
    match e {
        PermError::NotBijective => "perm.not_bijective",
        PermError::Syntax(_) => "perm.syntax",
        PermError::PointOutOfRange { .. } => "perm.point_out_of_range",
        PermError::RepeatedPoint(_) => "perm.repeated_point",
    }
}

fn group_code(e: &GroupError) -> &'static str {
    match e {
        GroupError::NoGenerators => "group.no_generators",
        GroupError::DegreeMismatch => "group.degree_mismatch",
        GroupError::TooLarge { .. } => "group.too_large",
        GroupError::NotASubgroup => "group.not_a_subgroup",
        GroupError::NotInGroup(_) => "group.not_in_group",
        GroupError::NotSchreier => "group.not_schreier",
        GroupError::NotTransitive => "group.not_transitive",
        GroupError::NotCayley => "group.not_cayley",
        GroupError::GeneratorMismatch => "group.generator_mismatch",
        GroupError::PointOutOfRange(_) => "group.point_out_of_range",
        GroupError::LabelCount { .. } => "group.label_count",
        GroupError::Perm(e) => perm_code(e),
        GroupError::Automaton(e) => automaton_code(e),
    }
}

impl CliError {
    /// Module-qualified error code, e.g. `format.missing_transition`.
    pub fn code(&self) -> String {
        let code = match self {
            CliError::Format(e) => return format!("format.{}", e.kind.code()),
            CliError::Io { .. } => "input.io",
            CliError::NotFound(_) => "input.not_found",
            CliError::Automaton(e) => automaton_code(e),
            CliError::Kernel(e) => kernel_code(e),
            CliError::Classify(e) => match e {
                ClassifyError::Kernel(e) => kernel_code(e),
                ClassifyError::Group(e) => group_code(e),
                ClassifyError::NotAGroup => "classify.not_a_group",
                ClassifyError::InconsistentVerdicts { .. } => "classify.inconsistent_verdicts",
            },
            CliError::Group(e) => group_code(e),
            CliError::Perm(e) => perm_code(e),
            CliError::Fraction(e) => match e {
                FractionError::GuardExceeded { .. } => "fraction.guard_exceeded",
                FractionError::Cancelled => "fraction.cancelled",
                FractionError::Singular => "fraction.singular",
                FractionError::VerificationFailed => "fraction.verification_failed",
                FractionError::ZeroDenominator => "fraction.zero_denominator",
                FractionError::ZeroConstantTerm => "fraction.zero_constant_term",
                FractionError::VertexOutOfRange(_) => "fraction.vertex_out_of_range",
                FractionError::LetterCount { .. } => "fraction.letter_count",
                FractionError::EmptyRange => "fraction.empty_range",
            },
            CliError::Frequency(e) => match e {
                FrequencyError::ZeroDenominator => "frequency.zero_denominator",
                FrequencyError::ZeroConstantTerm => "frequency.zero_constant_term",
                FrequencyError::AmbiguousRoot { .. } => "frequency.ambiguous_root",
                FrequencyError::HypothesisFailure { .. } => "frequency.hypothesis_failure",
                FrequencyError::NoCircleRoot => "frequency.no_circle_root",
                FrequencyError::Inconsistent => "frequency.inconsistent",
                FrequencyError::BoundExceeded { .. } => "frequency.bound_exceeded",
                FrequencyError::ZeroExponent => "frequency.zero_exponent",
                FrequencyError::Automaton(e) => automaton_code(e),
            },
            CliError::Usage(_) => "usage",
        };
        code.to_string()
    }

    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Format(e) => Some(e.line),
            _ => None,
        }
    }
}
