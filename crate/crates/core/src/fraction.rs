//! The generating fractions `L(a, x_0, …, x_{p-1})` and `L(a, x)`.
//!
//! `L` is the formal sum `Σ_n a_n X(n)` where `X(n)` multiplies `x_d` over
//! the digits `d` of `n` (or is `x^{len(n)}` in the one-variable version).
//! Writing `L` for every kernel vertex gives the linear system
//! `(I - M) Λ = C` with `M` the weighted adjacency matrix of `Γ(a)`.
//! Letters enter linearly, so a fraction is stored as one numerator
//! polynomial per letter over a common letter-free denominator.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::AtomicBool;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::automaton::Letter;
use crate::kernel::KernelGraph;
use crate::linalg::{bareiss_solve, gauss_solve, FractionFreeSolution, Ring, SolveError};
use crate::packed::PackedPoly;
use crate::poly::{MPoly, RatFunc, UPoly};

/// Default bound on `|vertices| * p` for the multivariate solve.
pub const DEFAULT_SIZE_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FractionError {
    GuardExceeded {
        size: usize,
        bound: usize,
    },
    Cancelled,
    /// `I - M` singular; cannot happen for a kernel graph.
    Singular,
    /// The computed solution failed exact back-substitution.
    VerificationFailed,
    ZeroDenominator,
    ZeroConstantTerm,
    VertexOutOfRange(usize),
    LetterCount {
        expected: usize,
        found: usize,
    },
    EmptyRange,
}

impl fmt::Display for FractionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FractionError::GuardExceeded { size, bound } => write!(
                f,
                "multivariate system too large: |vertices|*p = {size} exceeds {bound}"
            ),
            FractionError::Cancelled => write!(f, "computation cancelled"),
            FractionError::Singular => write!(f, "internal error: I - M is singular"),
            FractionError::VerificationFailed => {
                write!(f, "internal error: solution fails back-substitution")
            }
            FractionError::ZeroDenominator => write!(f, "denominator is zero"),
            FractionError::ZeroConstantTerm => write!(f, "denominator vanishes at 0"),
            FractionError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            FractionError::LetterCount { expected, found } => {
                write!(f, "expected {expected} letter numerators, found {found}")
            }
            FractionError::EmptyRange => write!(f, "series length must be at least 1"),
        }
    }
}

impl From<SolveError> for FractionError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Cancelled => FractionError::Cancelled,
            SolveError::Singular => FractionError::Singular,
            SolveError::Inexact | SolveError::DimensionMismatch => {
                FractionError::VerificationFailed
            }
        }
    }
}

/// `x, y` for base 2, otherwise `x0 … x{p-1}`.
pub fn variable_names(p: u32) -> Vec<String> {
    if p == 2 {
        vec![String::from("x"), String::from("y")]
    } else {
        (0..p).map(|i| format!("x{i}")).collect()
    }
}

/// The matrices of the system, indexed in the vertex order of `Γ(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemData {
    pub base: u32,
    pub letters: Vec<String>,
    /// `M[u][v] = Σ x_i` over digits `i` with `t_i(u) = v`.
    pub m: Vec<Vec<MPoly>>,
    /// `C[u][l] = Σ x_s` over `s ∈ 1..p` with `u_s = l`.
    pub c: Vec<Vec<MPoly>>,
    /// `M` at `x_i = 1`.
    pub a: Vec<Vec<u64>>,
    /// `T[u][l]` = how many of `u_1 … u_{p-1}` equal `l`.
    pub t: Vec<Vec<u64>>,
}

pub fn system_data(graph: &KernelGraph) -> SystemData {
    let n = graph.num_vertices();
    let k = graph.alphabet().len();
    let p = graph.base();
    let mut m = vec![vec![MPoly::zero(); n]; n];
    let mut a = vec![vec![0u64; n]; n];
    let mut c = vec![vec![MPoly::zero(); k]; n];
    let mut t = vec![vec![0u64; k]; n];
    for u in 0..n {
        for i in 0..p {
            let v = graph.next(u, i);
            m[u][v] = &m[u][v] + &MPoly::var(i as usize);
            a[u][v] += 1;
        }
        for s in 1..p {
            let l = graph.first_term(u, s);
            c[u][l] = &c[u][l] + &MPoly::var(s as usize);
            t[u][l] += 1;
        }
    }
    SystemData {
        base: p,
        letters: graph.alphabet().to_vec(),
        m,
        c,
        a,
        t,
    }
}

fn format_fraction<F: Fn(&P) -> String, P>(
    letters: &[String],
    numerators: &[P],
    is_zero: impl Fn(&P) -> bool,
    fmt_poly: F,
    den: String,
) -> String {
    let parts: Vec<String> = letters
        .iter()
        .zip(numerators)
        .filter(|(_, p)| !is_zero(p))
        .map(|(l, p)| format!("({l})*({})", fmt_poly(p)))
        .collect();
    if parts.is_empty() {
        return String::from("0");
    }
    format!("({}) / ({den})", parts.join(" + "))
}

/// `Σ_l P_l · l / D` in one variable `x`.
///
/// Canonical form: `D` and all `P_l` have no common factor, and together
/// have coprime integer coefficients with the leading coefficient of `D`
/// positive. Two fractions are equal exactly when their canonical forms are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateFraction {
    letters: Vec<String>,
    numerators: Vec<UPoly>,
    denominator: UPoly,
}

impl UnivariateFraction {
    pub fn from_parts(
        letters: Vec<String>,
        numerators: Vec<UPoly>,
        denominator: UPoly,
    ) -> Result<Self, FractionError> {
        if denominator.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        if letters.len() != numerators.len() {
            return Err(FractionError::LetterCount {
                expected: letters.len(),
                found: numerators.len(),
            });
        }
        let mut g = denominator.clone();
        for p in &numerators {
            g = UPoly::gcd(&g, p);
        }
        let mut den = denominator.exact_div(&g).expect("gcd divides");
        let mut nums: Vec<UPoly> = numerators
            .iter()
            .map(|p| p.exact_div(&g).expect("gcd divides"))
            .collect();
        let mut all: Vec<BigRational> = den.coeffs().to_vec();
        for p in &nums {
            all.extend(p.coeffs().iter().cloned());
        }
        let mut scale = UPoly::from_coeffs(all).content();
        if den.lead().is_some_and(Signed::is_negative) {
            scale = -scale;
        }
        let inv = scale.recip();
        den = den.scale(&inv);
        nums = nums.iter().map(|p| p.scale(&inv)).collect();
        Ok(UnivariateFraction {
            letters,
            numerators: nums,
            denominator: den,
        })
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn numerators(&self) -> &[UPoly] {
        &self.numerators
    }

    pub fn numerator(&self, letter: Letter) -> &UPoly {
        &self.numerators[letter]
    }

    pub fn denominator(&self) -> &UPoly {
        &self.denominator
    }

    /// Numerators and denominator rescaled so that `D(0) = 1`.
    pub fn normalized_at_origin(&self) -> Result<(Vec<UPoly>, UPoly), FractionError> {
        let d0 = self.denominator.coeff(0);
        if d0.is_zero() {
            return Err(FractionError::ZeroConstantTerm);
        }
        let inv = d0.recip();
        Ok((
            self.numerators.iter().map(|p| p.scale(&inv)).collect(),
            self.denominator.scale(&inv),
        ))
    }

    /// Same letters and `P_l D' = P'_l D` for every letter.
    pub fn equals_up_to_scalar(&self, other: &UnivariateFraction) -> bool {
        self.letters == other.letters
            && self
                .numerators
                .iter()
                .zip(&other.numerators)
                .all(|(a, b)| a * &other.denominator == b * &self.denominator)
    }

    /// Rename letter `l` to `map[l]`. Letters mapped to `None` must have a
    /// zero numerator.
    pub fn permute_letters(&self, map: &[Option<Letter>]) -> Option<Self> {
        let mut nums = vec![UPoly::zero(); self.letters.len()];
        for (l, p) in self.numerators.iter().enumerate() {
            match map.get(l).copied().flatten() {
                Some(t) => nums[t] = &nums[t] + p,
                None if p.is_zero() => {}
                None => return None,
            }
        }
        UnivariateFraction::from_parts(self.letters.clone(), nums, self.denominator.clone()).ok()
    }

    /// `((A)*(P_A) + (B)*(P_B)) / (D)`.
    pub fn to_text(&self) -> String {
        format_fraction(
            &self.letters,
            &self.numerators,
            UPoly::is_zero,
            |p| p.format("x"),
            self.denominator.format("x"),
        )
    }
}

impl fmt::Display for UnivariateFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `Σ_l P_l · l / D` in the variables `x_0 … x_{p-1}`.
///
/// Only scalars are normalised: numerators and denominator together have
/// coprime integer coefficients and `D` has a positive leading coefficient.
/// Common polynomial factors are not cancelled, so compare with
/// [`MultivariateFraction::equals_up_to_scalar`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariateFraction {
    base: u32,
    letters: Vec<String>,
    numerators: Vec<MPoly>,
    denominator: MPoly,
}

impl MultivariateFraction {
    pub fn from_parts(
        base: u32,
        letters: Vec<String>,
        numerators: Vec<MPoly>,
        denominator: MPoly,
    ) -> Result<Self, FractionError> {
        if denominator.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        if letters.len() != numerators.len() {
            return Err(FractionError::LetterCount {
                expected: letters.len(),
                found: numerators.len(),
            });
        }
        let mut content = denominator.content();
        for p in &numerators {
            let c = p.content();
            if !c.is_zero() {
                content = gcd_rational(&content, &c);
            }
        }
        if denominator
            .leading_term()
            .is_some_and(|(_, c)| c.is_negative())
        {
            content = -content;
        }
        let inv = content.recip();
        Ok(MultivariateFraction {
            base,
            letters,
            numerators: numerators.iter().map(|p| p.scale(&inv)).collect(),
            denominator: denominator.scale(&inv),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn numerators(&self) -> &[MPoly] {
        &self.numerators
    }

    pub fn numerator(&self, letter: Letter) -> &MPoly {
        &self.numerators[letter]
    }

    pub fn denominator(&self) -> &MPoly {
        &self.denominator
    }

    pub fn variable_names(&self) -> Vec<String> {
        variable_names(self.base)
    }

    pub fn equals_up_to_scalar(&self, other: &MultivariateFraction) -> bool {
        self.letters == other.letters
            && self
                .numerators
                .iter()
                .zip(&other.numerators)
                .all(|(a, b)| a * &other.denominator == b * &self.denominator)
    }

    /// Every `x_i` replaced by `x`.
    pub fn specialize(&self) -> Result<UnivariateFraction, FractionError> {
        UnivariateFraction::from_parts(
            self.letters.clone(),
            self.numerators.iter().map(MPoly::specialize).collect(),
            self.denominator.specialize(),
        )
    }

    pub fn to_text(&self) -> String {
        let names = self.variable_names();
        format_fraction(
            &self.letters,
            &self.numerators,
            MPoly::is_zero,
            |p| p.format(&names),
            self.denominator.format(&names),
        )
    }
}

impl fmt::Display for MultivariateFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn gcd_rational(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn check_vertex(graph: &KernelGraph, vertex: usize) -> Result<(), FractionError> {
    if vertex >= graph.num_vertices() {
        Err(FractionError::VertexOutOfRange(vertex))
    } else {
        Ok(())
    }
}

pub fn l_multivariate(
    graph: &KernelGraph,
    vertex: usize,
) -> Result<MultivariateFraction, FractionError> {
    l_multivariate_with(graph, vertex, DEFAULT_SIZE_BOUND, None)
}

/// Solve `(I - M) Λ = C` by fraction-free elimination and return the entry
/// at `vertex`. `cancel` is polled between elimination steps.
pub fn l_multivariate_with(
    graph: &KernelGraph,
    vertex: usize,
    bound: usize,
    cancel: Option<&AtomicBool>,
) -> Result<MultivariateFraction, FractionError> {
    check_vertex(graph, vertex)?;
    let mut all = l_multivariate_all(graph, bound, cancel)?;
    Ok(all.swap_remove(vertex))
}

/// `L(u, x_0, …, x_{p-1})` for every vertex `u` of `Γ(a)`, from one solve.
pub fn l_multivariate_all(
    graph: &KernelGraph,
    bound: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Vec<MultivariateFraction>, FractionError> {
    let n = graph.num_vertices();
    let size = n * graph.base() as usize;
    if size > bound {
        return Err(FractionError::GuardExceeded { size, bound });
    }
    let sys = system_data(graph);
    let k = sys.letters.len();
    let lhs: Vec<Vec<MPoly>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let id = if u == v { MPoly::one() } else { MPoly::zero() };
                    &id - &sys.m[u][v]
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Vec<MPoly>> = (0..k)
        .map(|l| (0..n).map(|u| sys.c[u][l].clone()).collect())
        .collect();
    let sol = match solve_packed(&lhs, &rhs, cancel) {
        Some(result) => result?,
        None => bareiss_solve(&lhs, &rhs, cancel)?,
    };
    for l in 0..k {
        for u in 0..n {
            let mut acc = MPoly::zero();
            for v in 0..n {
                acc = &acc + &(&lhs[u][v] * &sol.numerators[l][v]);
            }
            if acc != &sol.denominator * &rhs[l][u] {
                return Err(FractionError::VerificationFailed);
            }
        }
    }
    (0..n)
        .map(|u| {
            MultivariateFraction::from_parts(
                sys.base,
                sys.letters.clone(),
                (0..k).map(|l| sol.numerators[l][u].clone()).collect(),
                sol.denominator.clone(),
            )
        })
        .collect()
}

/// The same solve with word-sized coefficients; `None` when the system does
/// not fit or a coefficient overflows along the way.
fn solve_packed(
    lhs: &[Vec<MPoly>],
    rhs: &[Vec<MPoly>],
    cancel: Option<&AtomicBool>,
) -> Option<Result<FractionFreeSolution<MPoly>, SolveError>> {
    let pack = |rows: &[Vec<MPoly>]| -> Option<Vec<Vec<PackedPoly>>> {
        rows.iter()
            .map(|r| r.iter().map(PackedPoly::from_mpoly).collect())
            .collect()
    };
    let (a, b) = (pack(lhs)?, pack(rhs)?);
    let sol = match bareiss_solve(&a, &b, cancel) {
        Ok(sol) => sol,
        Err(SolveError::Cancelled) => return Some(Err(SolveError::Cancelled)),
        Err(_) => return None,
    };
    if sol.denominator.overflowed() || sol.numerators.iter().flatten().any(PackedPoly::overflowed) {
        return None;
    }
    Some(Ok(FractionFreeSolution {
        denominator: sol.denominator.to_mpoly(),
        numerators: sol
            .numerators
            .iter()
            .map(|col| col.iter().map(PackedPoly::to_mpoly).collect())
            .collect(),
    }))
}

/// Solve `(I - xA) Λ = xT` over the field `Q(x)` and return the entry at
/// `vertex`.
pub fn l_univariate(
    graph: &KernelGraph,
    vertex: usize,
) -> Result<UnivariateFraction, FractionError> {
    check_vertex(graph, vertex)?;
    let n = graph.num_vertices();
    let sys = system_data(graph);
    let k = sys.letters.len();
    let x = UPoly::x();
    let lhs: Vec<Vec<RatFunc>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let a = BigRational::from_integer(sys.a[u][v].into());
                    let id = if u == v { UPoly::one() } else { UPoly::zero() };
                    RatFunc::from_poly(&id - &x.scale(&a))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Vec<RatFunc>> = (0..k)
        .map(|l| {
            (0..n)
                .map(|u| {
                    RatFunc::from_poly(x.scale(&BigRational::from_integer(sys.t[u][l].into())))
                })
                .collect()
        })
        .collect();
    let sol = gauss_solve(&lhs, &rhs)?;
    for l in 0..k {
        for u in 0..n {
            let mut acc = RatFunc::zero_elem();
            for v in 0..n {
                acc = acc.add_ref(&lhs[u][v].mul_ref(&sol[l][v]));
            }
            if acc != rhs[l][u] {
                return Err(FractionError::VerificationFailed);
            }
        }
    }
    let mut den = UPoly::one();
    for l in 0..k {
        let d = sol[l][vertex].denom();
        den = (&den * d)
            .exact_div(&UPoly::gcd(&den, d))
            .expect("gcd divides");
    }
    let nums = (0..k)
        .map(|l| {
            let entry = &sol[l][vertex];
            entry.numer() * &den.exact_div(entry.denom()).expect("lcm is a multiple")
        })
        .collect();
    UnivariateFraction::from_parts(sys.letters, nums, den)
}

/// Power-series coefficients `m_{l,n}` of `P_l / D` for `n = 1..=n_max`
/// and their partial sums. For a fraction computed from an automaton,
/// `m_{l,n}` counts the integers with exactly `n` digits whose term is `l`,
/// so the partial sum at `n` counts `l` among `a_1 … a_{p^n - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCounts {
    pub letters: Vec<String>,
    /// `coefficients[l][n - 1] = m_{l,n}`.
    pub coefficients: Vec<Vec<BigRational>>,
    pub partial_sums: Vec<Vec<BigRational>>,
}

pub fn series_counts(l: &UnivariateFraction, n_max: usize) -> Result<SeriesCounts, FractionError> {
    if n_max == 0 {
        return Err(FractionError::EmptyRange);
    }
    let d = l.denominator();
    let d0 = d.coeff(0);
    if d0.is_zero() {
        return Err(FractionError::ZeroConstantTerm);
    }
    let d0_inv = d0.recip();
    let dd = d.degree().unwrap_or(0);
    let mut coefficients = Vec::with_capacity(l.letters().len());
    let mut partial_sums = Vec::with_capacity(l.letters().len());
    for p in l.numerators() {
        let mut s: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = p.coeff(n);
            for k in 1..=dd.min(n) {
                acc -= d.coeff(k) * &s[n - k];
            }
            s.push(acc * &d0_inv);
        }
        let coeffs: Vec<BigRational> = s[1..].to_vec();
        let mut sums = Vec::with_capacity(n_max);
        let mut total = BigRational::zero();
        for c in &coeffs {
            total += c;
            sums.push(total.clone());
        }
        coefficients.push(coeffs);
        partial_sums.push(sums);
    }
    Ok(SeriesCounts {
        letters: l.letters().to_vec(),
        coefficients,
        partial_sums,
    })
}

impl SeriesCounts {
    /// `Σ_l m_{l,n}`.
    pub fn total(&self, n: usize) -> BigRational {
        self.coefficients
            .iter()
            .map(|c| c[n - 1].clone())
            .fold(BigRational::zero(), |a, b| a + b)
    }
}
