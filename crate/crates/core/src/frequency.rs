//! Roots of the denominator and the letter frequencies along `p^n`.
//!
//! With `a[N, d]` the number of `m in 1..=N` with `a_m = d`, a simple root
//! `α` of `D` on the circle `|x| = 1/p` contributes
//! `c = P_d(α) Res(1/D, α) / (α² - α)` times `e^{-inθ}` (`α = e^{iθ}/p`) to
//! `a[p^n, d] / p^n`; roots further out only add `o(1)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, ToPrimitive, Zero};

use crate::automaton::{Automaton, AutomatonError};
use crate::fraction::UnivariateFraction;
use crate::numeration::checked_pow;
use crate::poly::UPoly;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Largest `p^n` accepted by [`empirical_counts`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyError {
    ZeroDenominator,
    ZeroConstantTerm,
    /// A root too close to the circle `|x| = 1/p` to be placed.
    AmbiguousRoot {
        re: f64,
        im: f64,
    },
    /// Some root lies inside the circle or a root on it is multiple.
    HypothesisFailure {
        no_root_inside: bool,
        circle_roots_simple: bool,
    },
    NoCircleRoot,
    /// The limit and the residue formula disagree.
    Inconsistent,
    BoundExceeded {
        base: u32,
        exponent: u32,
        bound: u64,
    },
    ZeroExponent,
    Automaton(AutomatonError),
}

impl fmt::Display for FrequencyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrequencyError::ZeroDenominator => write!(f, "denominator is zero"),
            FrequencyError::ZeroConstantTerm => write!(f, "denominator vanishes at 0"),
            FrequencyError::AmbiguousRoot { re, im } => write!(
                f,
                "ambiguous root {re}{im:+}i: modulus too close to 1/p to decide"
            ),
            FrequencyError::HypothesisFailure {
                no_root_inside,
                circle_roots_simple,
            } => write!(
                f,
                "asymptotics unavailable (no root inside 1/p: {no_root_inside}, roots on |x| = 1/p simple: {circle_roots_simple})"
            ),
            FrequencyError::NoCircleRoot => write!(f, "denominator has no root of modulus 1/p"),
            FrequencyError::Inconsistent => {
                write!(f, "internal error: limit and residue formula disagree")
            }
            FrequencyError::BoundExceeded {
                base,
                exponent,
                bound,
            } => write!(f, "{base}^{exponent} exceeds the enumeration bound {bound}"),
            FrequencyError::ZeroExponent => write!(f, "exponent must be at least 1"),
            FrequencyError::Automaton(e) => write!(f, "{e}"),
        }
    }
}

impl From<AutomatonError> for FrequencyError {
    fn from(e: AutomatonError) -> Self {
        FrequencyError::Automaton(e)
    }
}

/// An exact rational or a floating point approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(BigRational),
    Approx(Complex64),
}

impl Number {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Number::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Number::Approx(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Number::Exact(r) => Some(r),
            Number::Approx(_) => None,
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(r) => write!(f, "{r}"),
            Number::Approx(z) if z.im == 0.0 => write!(f, "{:.12}", z.re),
            Number::Approx(z) => write!(f, "{:.12}{:+.12}i", z.re, z.im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPosition {
    /// `|α| < 1/p`.
    Inside,
    /// `|α| = 1/p`.
    OnCircle,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootInfo {
    pub value: Complex64,
    /// Set for rational roots.
    pub exact: Option<BigRational>,
    pub modulus: f64,
    /// Argument of `α`, in `(-π, π]`.
    pub theta: f64,
    pub multiplicity: usize,
    pub position: RootPosition,
    /// `1/D'(α)`, only for simple roots.
    pub residue: Option<Number>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenominatorAnalysis {
    pub base: u32,
    /// Sorted by modulus, then argument.
    pub roots: Vec<RootInfo>,
    /// Monic squarefree `f_k` with `D = c Π f_k^k`.
    pub squarefree_factors: Vec<(UPoly, usize)>,
    pub no_root_inside: bool,
    pub circle_roots_simple: bool,
    /// `1/p` is the only root on the circle.
    pub only_root_one_over_p: bool,
}

impl DenominatorAnalysis {
    pub fn circle_roots(&self) -> impl Iterator<Item = &RootInfo> {
        self.roots
            .iter()
            .filter(|r| r.position == RootPosition::OnCircle)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.no_root_inside && self.circle_roots_simple
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a polynomial with nonzero leading coefficient
/// (coefficients lowest degree first), by Aberth–Ehrlich iteration followed
/// by Newton polishing. Meant for squarefree input.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![Complex64::new(-a[0], 0.0)];
    }
    let radius = Float::powf(Float::abs(a[0]), 1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.7;
            Complex64::new(radius * Float::cos(angle), radius * Float::sin(angle))
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(&a, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = if dp.norm() == 0.0 {
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&a, *root);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *root - p / dp;
            if horner(&a, next).0.norm() < p.norm() {
                *root = next;
            } else {
                break;
            }
        }
    }
    z
}

fn exact_to_complex(r: &BigRational) -> Complex64 {
    Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn linear(r: &BigRational) -> UPoly {
    UPoly::from_coeffs(vec![-r.clone(), BigRational::from_integer(1.into())])
}

/// Rational roots of a squarefree polynomial, and what is left after
/// dividing them out.
fn split_rational_roots(f: &UPoly, p: u32) -> (Vec<BigRational>, UPoly) {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let inv_p = BigRational::new(1.into(), BigInt::from(p));
    for r in [inv_p.clone(), -inv_p] {
        if rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
            rest = rest.exact_div(&linear(&r)).expect("root divides");
            found.push(r);
        }
    }
    'search: while rest.degree().unwrap_or(0) > 0 {
        let prim = rest.primitive();
        let lead = prim.lead().expect("nonzero").to_integer();
        let Some(lead_f) = lead.to_f64() else { break };
        for z in polynomial_roots(&rest.to_f64_coeffs()) {
            if z.im.abs() > 1e-6 * z.norm().max(1.0) {
                continue;
            }
            let scaled = Float::round(z.re * lead_f);
            if !scaled.is_finite() || scaled.abs() > 9.0e15 {
                continue;
            }
            let Some(num) = BigInt::from_f64(scaled) else {
                continue;
            };
            let r = BigRational::new(num, lead.clone());
            if rest.eval(&r).is_zero() {
                rest = rest.exact_div(&linear(&r)).expect("root divides");
                found.push(r);
                continue 'search;
            }
        }
        break;
    }
    (found, rest)
}

/// `x^d g(1/(p² x))`: its roots are the images of the roots of `g` under
/// `α ↦ 1/(p² α)`, which fixes the circle `|x| = 1/p` up to conjugation.
fn circle_reflection(g: &UPoly, p: u32) -> UPoly {
    let d = g.degree().unwrap_or(0);
    let p2 = BigRational::from_integer(BigInt::from(p) * BigInt::from(p));
    let mut scale = BigRational::from_integer(1.into());
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for j in 0..=d {
        coeffs[d - j] = g.coeff(j) / &scale;
        scale *= &p2;
    }
    UPoly::from_coeffs(coeffs)
}

fn classify_modulus(
    modulus: f64,
    p: u32,
    tol: f64,
    z: Complex64,
) -> Result<RootPosition, FrequencyError> {
    let r = 1.0 / p as f64;
    if (modulus - r).abs() <= tol * r.max(1.0) {
        return Err(FrequencyError::AmbiguousRoot { re: z.re, im: z.im });
    }
    Ok(if modulus < r {
        RootPosition::Inside
    } else {
        RootPosition::Outside
    })
}

/// Squarefree decomposition, exact rational roots, numeric placement of
/// the rest relative to `|x| = 1/p`, and residues of `1/D` at simple roots.
pub fn analyze_denominator(
    d: &UPoly,
    p: u32,
    tol: f64,
) -> Result<DenominatorAnalysis, FrequencyError> {
    if d.is_zero() {
        return Err(FrequencyError::ZeroDenominator);
    }
    if d.coeff(0).is_zero() {
        return Err(FrequencyError::ZeroConstantTerm);
    }
    let dprime = d.derivative();
    let factors = d.squarefree_decomposition();
    let inv_p = BigRational::new(1.into(), BigInt::from(p));
    let mut roots = Vec::new();
    for (f, k) in &factors {
        let (rationals, rest) = split_rational_roots(f, p);
        for r in rationals {
            let abs = if r < BigRational::zero() {
                -r.clone()
            } else {
                r.clone()
            };
            let position = match abs.cmp(&inv_p) {
                core::cmp::Ordering::Less => RootPosition::Inside,
                core::cmp::Ordering::Equal => RootPosition::OnCircle,
                core::cmp::Ordering::Greater => RootPosition::Outside,
            };
            let value = exact_to_complex(&r);
            let residue = (*k == 1).then(|| Number::Exact(dprime.eval(&r).recip()));
            roots.push(RootInfo {
                value,
                modulus: value.norm(),
                theta: value.arg(),
                exact: Some(r),
                multiplicity: *k,
                position,
                residue,
            });
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        let reflected = circle_reflection(&rest, p);
        let g = UPoly::gcd(&rest, &reflected);
        let h = rest.exact_div(&g).expect("gcd divides");
        let mut push = |z: Complex64, position: RootPosition| {
            let residue = (*k == 1).then(|| Number::Approx(dprime.eval_complex(z).inv()));
            roots.push(RootInfo {
                value: z,
                exact: None,
                modulus: z.norm(),
                theta: z.arg(),
                multiplicity: *k,
                position,
                residue,
            });
        };
        for z in polynomial_roots(&h.to_f64_coeffs()) {
            let pos = classify_modulus(z.norm(), p, tol, z)?;
            push(z, pos);
        }
        let g_roots = polynomial_roots(&g.to_f64_coeffs());
        let p2 = (p as f64) * (p as f64);
        for (i, &z) in g_roots.iter().enumerate() {
            let partner = (z.conj() * p2).inv();
            let gap = (z - partner).norm();
            let nearest_other = g_roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| (partner - w).norm())
                .fold(f64::INFINITY, f64::min);
            if gap < nearest_other / 2.0 {
                if gap > 1e-6 * z.norm().max(1.0) {
                    return Err(FrequencyError::AmbiguousRoot { re: z.re, im: z.im });
                }
                push(z, RootPosition::OnCircle);
            } else {
                let pos = classify_modulus(z.norm(), p, tol, z)?;
                push(z, pos);
            }
        }
    }
    roots.sort_by(|a, b| {
        a.modulus
            .partial_cmp(&b.modulus)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(
                a.theta
                    .partial_cmp(&b.theta)
                    .unwrap_or(core::cmp::Ordering::Equal),
            )
    });
    let no_root_inside = roots.iter().all(|r| r.position != RootPosition::Inside);
    let circle: Vec<&RootInfo> = roots
        .iter()
        .filter(|r| r.position == RootPosition::OnCircle)
        .collect();
    let circle_roots_simple = circle.iter().all(|r| r.multiplicity == 1);
    let only_root_one_over_p = circle.len() == 1 && circle[0].exact.as_ref() == Some(&inv_p);
    Ok(DenominatorAnalysis {
        base: p,
        roots,
        squarefree_factors: factors,
        no_root_inside,
        circle_roots_simple,
        only_root_one_over_p,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscillationTerm {
    pub theta: f64,
    pub coefficient: Number,
}

/// Behaviour of `a[p^n, d] / p^n` as `n → ∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Limit(BigRational),
    /// Separate limits along even and odd `n`. `mean` is their average.
    EvenOdd {
        even: BigRational,
        odd: BigRational,
        mean: BigRational,
    },
    /// `Σ_k c_k e^{-inθ_k} + o(1)`.
    Oscillation(Vec<OscillationTerm>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub base: u32,
    pub letters: Vec<String>,
    pub analysis: DenominatorAnalysis,
    /// `coefficients[d][k]` belongs to the `k`-th circle root.
    pub coefficients: Vec<Vec<Number>>,
    pub verdicts: Vec<Verdict>,
}

impl FrequencyReport {
    pub fn circle_roots(&self) -> Vec<&RootInfo> {
        self.analysis.circle_roots().collect()
    }

    /// The leading term `Σ_k c_k e^{-inθ_k}` of `a[p^n, d] / p^n`.
    pub fn predicted(&self, letter: usize, n: u32) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (root, c) in self.analysis.circle_roots().zip(&self.coefficients[letter]) {
            let phase = Complex64::new(0.0, -(n as f64) * root.theta).exp();
            acc += c.to_complex() * phase;
        }
        acc.re
    }
}

pub fn frequency_report(l: &UnivariateFraction, p: u32) -> Result<FrequencyReport, FrequencyError> {
    frequency_report_with(l, p, DEFAULT_TOLERANCE)
}

pub fn frequency_report_with(
    l: &UnivariateFraction,
    p: u32,
    tol: f64,
) -> Result<FrequencyReport, FrequencyError> {
    let analysis = analyze_denominator(l.denominator(), p, tol)?;
    if !analysis.hypotheses_hold() {
        return Err(FrequencyError::HypothesisFailure {
            no_root_inside: analysis.no_root_inside,
            circle_roots_simple: analysis.circle_roots_simple,
        });
    }
    let circle: Vec<RootInfo> = analysis.circle_roots().cloned().collect();
    if circle.is_empty() {
        return Err(FrequencyError::NoCircleRoot);
    }
    let coefficients: Vec<Vec<Number>> = l
        .numerators()
        .iter()
        .map(|pi| {
            circle
                .iter()
                .map(|root| match (&root.exact, &root.residue) {
                    (Some(a), Some(Number::Exact(res))) => {
                        Number::Exact(pi.eval(a) * res / (a * a - a))
                    }
                    (_, res) => {
                        let a = root.value;
                        let res = res
                            .as_ref()
                            .map_or(Complex64::new(f64::NAN, 0.0), Number::to_complex);
                        Number::Approx(pi.eval_complex(a) * res / (a * a - a))
                    }
                })
                .collect()
        })
        .collect();

    let inv_p = BigRational::new(1.into(), BigInt::from(p));
    let exact_circle: Option<Vec<&BigRational>> = circle.iter().map(|r| r.exact.as_ref()).collect();
    let mut verdicts = Vec::with_capacity(coefficients.len());
    if analysis.only_root_one_over_p {
        let total = l
            .numerators()
            .iter()
            .fold(BigRational::zero(), |acc, pi| acc + pi.eval(&inv_p));
        for (pi, c) in l.numerators().iter().zip(&coefficients) {
            let limit = pi.eval(&inv_p) / &total;
            if c[0].exact() != Some(&limit) {
                return Err(FrequencyError::Inconsistent);
            }
            verdicts.push(Verdict::Limit(limit));
        }
    } else if let Some((pos, neg)) = exact_circle.as_ref().and_then(|e| plus_minus(e, &inv_p)) {
        for c in &coefficients {
            let cp = c[pos].exact().expect("exact").clone();
            let cn = c[neg].exact().expect("exact").clone();
            verdicts.push(Verdict::EvenOdd {
                even: &cp + &cn,
                odd: &cp - &cn,
                mean: cp,
            });
        }
    } else {
        for c in &coefficients {
            verdicts.push(Verdict::Oscillation(
                circle
                    .iter()
                    .zip(c)
                    .map(|(root, coefficient)| OscillationTerm {
                        theta: root.theta,
                        coefficient: coefficient.clone(),
                    })
                    .collect(),
            ));
        }
    }
    Ok(FrequencyReport {
        base: p,
        letters: l.letters().to_vec(),
        analysis,
        coefficients,
        verdicts,
    })
}

/// Indices of `1/p` and `-1/p` when those are exactly the circle roots.
fn plus_minus(circle: &[&BigRational], inv_p: &BigRational) -> Option<(usize, usize)> {
    if circle.len() != 2 {
        return None;
    }
    let minus = -inv_p.clone();
    match (circle[0], circle[1]) {
        (a, b) if a == inv_p && *b == minus => Some((0, 1)),
        (a, b) if *a == minus && b == inv_p => Some((1, 0)),
        _ => None,
    }
}

/// Letter counts over `1..=p^n - 1` and `1..=p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalCounts {
    pub base: u32,
    pub exponent: u32,
    pub letters: Vec<String>,
    /// `a[p^n - 1, d]`.
    pub below: Vec<u64>,
    /// `a[p^n, d]`.
    pub through: Vec<u64>,
}

impl EmpiricalCounts {
    pub fn power(&self) -> u64 {
        checked_pow(self.base, self.exponent).expect("checked on construction")
    }

    /// `a[p^n, d] / p^n`.
    pub fn ratio(&self, letter: usize) -> f64 {
        self.through[letter] as f64 / self.power() as f64
    }
}

pub fn empirical_counts(aut: &Automaton, n: u32) -> Result<EmpiricalCounts, FrequencyError> {
    empirical_counts_with_bound(aut, n, DEFAULT_ENUMERATION_BOUND)
}

/// Walks every digit word once: a word `w` of length `L < n` read from the
/// initial state is the low part of the numbers `w·d`, `d ≠ 0`, of length
/// `L + 1`.
pub fn empirical_counts_with_bound(
    aut: &Automaton,
    n: u32,
    bound: u64,
) -> Result<EmpiricalCounts, FrequencyError> {
    if n == 0 {
        return Err(FrequencyError::ZeroExponent);
    }
    let p = aut.base();
    let exceeded = FrequencyError::BoundExceeded {
        base: p,
        exponent: n,
        bound,
    };
    let power = checked_pow(p, n).map_err(|_| exceeded.clone())?;
    if power > bound {
        return Err(exceeded);
    }
    let mut below = vec![0u64; aut.alphabet().len()];
    let mut stack = vec![(aut.initial(), 0u32)];
    while let Some((q, len)) = stack.pop() {
        for d in 1..p {
            below[aut.label(aut.next(q, d))] += 1;
        }
        if len + 1 < n {
            for d in 0..p {
                stack.push((aut.next(q, d), len + 1));
            }
        }
    }
    let mut through = below.clone();
    through[aut.eval(power)?] += 1;
    Ok(EmpiricalCounts {
        base: p,
        exponent: n,
        letters: aut.alphabet().to_vec(),
        below,
        through,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus, CorpusName};
    use crate::fraction::l_univariate;
    use crate::kernel::{build_kernel_graph, VertexOrder};
    use crate::poly::rat;

    fn fraction_of(name: CorpusName) -> (UnivariateFraction, u32) {
        let aut = corpus(name);
        let g = build_kernel_graph(&aut, VertexOrder::Labels).unwrap();
        (l_univariate(&g, g.base_vertex()).unwrap(), aut.base())
    }

    #[test]
    fn linear_denominator() {
        let a = analyze_denominator(&UPoly::from_ints(&[-1, 2]), 2, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(a.roots.len(), 1);
        assert_eq!(a.roots[0].exact, Some(rat(1, 2)));
        assert_eq!(a.roots[0].residue, Some(Number::Exact(rat(1, 2))));
        assert!(a.only_root_one_over_p && a.hypotheses_hold());
    }

    #[test]
    fn quaternion_denominator() {
        let d = UPoly::from_ints(&[-1, 0, 2, 0, 8]);
        let a = analyze_denominator(&d, 2, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(a.roots.len(), 4);
        let circle: Vec<_> = a.circle_roots().collect();
        assert_eq!(circle.len(), 2);
        assert!(circle.iter().all(|r| r.exact.is_some()));
        let outside: Vec<_> = a
            .roots
            .iter()
            .filter(|r| r.position == RootPosition::Outside)
            .collect();
        assert_eq!(outside.len(), 2);
        for r in outside {
            assert!((r.modulus - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
            assert!(r.value.re.abs() < 1e-12);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            analyze_denominator(&UPoly::from_ints(&[0, 1]), 2, 1e-12).unwrap_err(),
            FrequencyError::ZeroConstantTerm
        );
        assert_eq!(
            analyze_denominator(&UPoly::zero(), 2, 1e-12).unwrap_err(),
            FrequencyError::ZeroDenominator
        );
        // (1 - 2x)^2: double root on the circle
        let a = analyze_denominator(&UPoly::from_ints(&[1, -4, 4]), 2, 1e-12).unwrap();
        assert!(!a.circle_roots_simple);
        assert!(a.roots[0].residue.is_none());
        // 1 - 8x: root inside
        assert!(
            !analyze_denominator(&UPoly::from_ints(&[1, -8]), 2, 1e-12)
                .unwrap()
                .no_root_inside
        );
    }

    #[test]
    fn irrational_circle_roots() {
        // 4x^2 + 2x + 1 = 0 has roots of modulus exactly 1/2
        let a = analyze_denominator(&UPoly::from_ints(&[1, 2, 4]), 2, 1e-12).unwrap();
        assert_eq!(a.circle_roots().count(), 2);
        assert!(a.circle_roots().all(|r| r.exact.is_none()));
        // roots 1 ± √3/2 are swapped by α ↦ 1/(4α) but lie off the circle
        let a = analyze_denominator(&UPoly::from_ints(&[1, -8, 4]), 2, 1e-12).unwrap();
        assert_eq!(a.circle_roots().count(), 0);
        assert!(!a.no_root_inside);
    }

    #[test]
    fn root_finder() {
        // (x - 1)(x - 2)(x^2 + 1)
        let c = [2.0, -3.0, 3.0, -3.0, 1.0];
        let roots = polynomial_roots(&c);
        assert_eq!(roots.len(), 4);
        for (re, im) in [(0.0, -1.0), (0.0, 1.0), (1.0, 0.0), (2.0, 0.0)] {
            assert!(roots
                .iter()
                .any(|r| (r - Complex64::new(re, im)).norm() < 1e-12));
        }
    }

    #[test]
    fn thue_morse_limits() {
        let (l, p) = fraction_of(CorpusName::ThueMorse);
        let rep = frequency_report(&l, p).unwrap();
        assert_eq!(
            rep.verdicts,
            vec![Verdict::Limit(rat(1, 2)), Verdict::Limit(rat(1, 2))]
        );
    }

    #[test]
    fn quaternion_even_odd() {
        let (l, p) = fraction_of(CorpusName::QuaternionFig3);
        let rep = frequency_report(&l, p).unwrap();
        for (name, v) in rep.letters.iter().zip(&rep.verdicts) {
            let (even, odd) = if ["d1", "d4", "d5", "d8"].contains(&name.as_str()) {
                (rat(1, 12), rat(1, 6))
            } else {
                (rat(1, 6), rat(1, 12))
            };
            assert_eq!(
                v,
                &Verdict::EvenOdd {
                    mean: (&even + &odd) / BigRational::from_integer(2.into()),
                    even,
                    odd,
                }
            );
        }
    }

    #[test]
    fn empirical_small() {
        let tm = corpus(CorpusName::ThueMorse);
        let c = empirical_counts(&tm, 3).unwrap();
        assert_eq!(c.below, vec![3, 4]);
        assert_eq!(c.through, vec![3, 5]);
        assert_eq!(
            empirical_counts(&tm, 0).unwrap_err(),
            FrequencyError::ZeroExponent
        );
        assert!(matches!(
            empirical_counts_with_bound(&tm, 5, 16),
            Err(FrequencyError::BoundExceeded { .. })
        ));
        let c = empirical_counts(&tm, 1).unwrap();
        assert_eq!(c.below.iter().sum::<u64>(), 1);
        assert_eq!(c.through.iter().sum::<u64>(), 2);
    }

    #[test]
    fn empirical_matches_direct_evaluation() {
        for name in CorpusName::all() {
            let aut = corpus(name);
            let p = u64::from(aut.base());
            let n = if p == 2 { 9 } else { 3 };
            let c = empirical_counts(&aut, n).unwrap();
            let mut direct = vec![0u64; aut.alphabet().len()];
            for m in 1..p.pow(n) {
                direct[aut.eval(m).unwrap()] += 1;
            }
            assert_eq!(c.below, direct, "{name}");
        }
    }
}
