//! Multivariate integer polynomials with machine-word coefficients and
//! monomials packed into a `u128`, used to speed up fraction-free
//! elimination. Any overflow poisons the value; callers then fall back to
//! [`MPoly`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::linalg::Ring;
use crate::poly::{MPoly, Monomial};

/// Variables that fit beside the degree byte.
pub(crate) const MAX_VARS: usize = 15;
const DEGREE_SHIFT: u32 = 120;
const BYTE: u128 = 0xff;

/// Degree in the top byte, then `e_0, e_1, …` one byte each, so integer
/// order on keys is graded-lex order on monomials.
fn pack(m: &Monomial) -> Option<u128> {
    let exps = m.exponents();
    if exps.len() > MAX_VARS || m.degree() > 255 {
        return None;
    }
    let mut key = u128::from(m.degree()) << DEGREE_SHIFT;
    for (i, &e) in exps.iter().enumerate() {
        key |= u128::from(e) << (8 * (MAX_VARS - 1 - i) as u32);
    }
    Some(key)
}

fn unpack(key: u128) -> Monomial {
    Monomial::new(
        (0..MAX_VARS)
            .map(|i| ((key >> (8 * (MAX_VARS - 1 - i) as u32)) & BYTE) as u32)
            .collect(),
    )
}

fn degree(key: u128) -> u128 {
    key >> DEGREE_SHIFT
}

fn mul_keys(a: u128, b: u128) -> Option<u128> {
    (degree(a) + degree(b) <= 255).then(|| a + b)
}

fn div_keys(a: u128, b: u128) -> Option<u128> {
    for i in 0..16 {
        let shift = 8 * i;
        if (a >> shift) & BYTE < (b >> shift) & BYTE {
            return None;
        }
    }
    Some(a - b)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct PackedPoly {
    /// Sorted by key, no zero coefficients.
    terms: Vec<(u128, i128)>,
    overflow: bool,
}

impl PackedPoly {
    fn poisoned() -> Self {
        PackedPoly {
            terms: Vec::new(),
            overflow: true,
        }
    }

    pub(crate) fn overflowed(&self) -> bool {
        self.overflow
    }

    pub(crate) fn from_mpoly(p: &MPoly) -> Option<Self> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return None;
            }
            terms.push((pack(m)?, c.to_integer().to_i128()?));
        }
        Some(PackedPoly {
            terms,
            overflow: false,
        })
    }

    pub(crate) fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero();
        for &(k, c) in &self.terms {
            out = &out + &MPoly::term(BigRational::from_integer(BigInt::from(c)), unpack(k));
        }
        out
    }

    /// Merge sorted runs, summing equal keys.
    fn normalize(mut raw: Vec<(u128, i128)>) -> Self {
        raw.sort_unstable_by_key(|t| t.0);
        let mut terms: Vec<(u128, i128)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == k => match last.1.checked_add(c) {
                    Some(s) => last.1 = s,
                    None => return Self::poisoned(),
                },
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        PackedPoly {
            terms,
            overflow: false,
        }
    }

    fn combine(&self, other: &Self, sign: i128) -> Self {
        if self.overflow || other.overflow {
            return Self::poisoned();
        }
        // Both sides are sorted, so a linear merge suffices.
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            let (k, c) = if take_a {
                i += 1;
                (a[i - 1].0, Some(a[i - 1].1))
            } else {
                let Some(cb) = b[j].1.checked_mul(sign) else {
                    return Self::poisoned();
                };
                j += 1;
                if take_b {
                    (b[j - 1].0, Some(cb))
                } else {
                    i += 1;
                    (a[i - 1].0, a[i - 1].1.checked_add(cb))
                }
            };
            match c {
                Some(0) => {}
                Some(c) => terms.push((k, c)),
                None => return Self::poisoned(),
            }
        }
        PackedPoly {
            terms,
            overflow: false,
        }
    }
}

impl Ring for PackedPoly {
    fn zero_elem() -> Self {
        PackedPoly::default()
    }

    fn one_elem() -> Self {
        PackedPoly {
            terms: alloc::vec![(0, 1)],
            overflow: false,
        }
    }

    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty() && !self.overflow
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.overflow || other.overflow {
            return Self::poisoned();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(k1, c1) in &self.terms {
            for &(k2, c2) in &other.terms {
                match (mul_keys(k1, k2), c1.checked_mul(c2)) {
                    (Some(k), Some(c)) => raw.push((k, c)),
                    _ => return Self::poisoned(),
                }
            }
        }
        Self::normalize(raw)
    }

    fn neg_ref(&self) -> Self {
        PackedPoly::zero_elem().sub_ref(self)
    }

    /// Exact quotient with integer coefficients, `None` otherwise.
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if self.overflow || d.overflow {
            return Some(Self::poisoned());
        }
        let &(dk, dc) = d.terms.last()?;
        let mut rem: BTreeMap<u128, i128> = self.terms.iter().copied().collect();
        let mut q = Vec::new();
        while let Some((&k, &c)) = rem.iter().next_back() {
            let qk = div_keys(k, dk)?;
            if c % dc != 0 {
                return None;
            }
            let qc = c / dc;
            for &(k2, c2) in &d.terms {
                let key = qk + k2;
                let Some(prod) = qc.checked_mul(c2) else {
                    return Some(Self::poisoned());
                };
                let entry = rem.entry(key).or_insert(0);
                let Some(v) = entry.checked_sub(prod) else {
                    return Some(Self::poisoned());
                };
                if v == 0 {
                    rem.remove(&key);
                } else {
                    *entry = v;
                }
            }
            q.push((qk, qc));
        }
        q.reverse();
        Some(PackedPoly {
            terms: q,
            overflow: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn roundtrip_and_order() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let p = &(&(&x * &x) - &(&x * &y).scale(&rat(3, 1))) + &y;
        let packed = PackedPoly::from_mpoly(&p).unwrap();
        assert_eq!(packed.to_mpoly(), p);
        let keys: Vec<u128> = packed.terms.iter().map(|t| t.0).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert!(PackedPoly::from_mpoly(&x.scale(&rat(1, 2))).is_none());
    }

    #[test]
    fn arithmetic_matches_mpoly() {
        let x = MPoly::var(0);
        let y = MPoly::var(2);
        let a = &(&x + &y) - &MPoly::one();
        let b = &(&(&x * &y) - &y.scale(&rat(4, 1))) + &MPoly::one();
        let (pa, pb) = (
            PackedPoly::from_mpoly(&a).unwrap(),
            PackedPoly::from_mpoly(&b).unwrap(),
        );
        let prod = pa.mul_ref(&pb);
        assert_eq!(prod.to_mpoly(), &a * &b);
        assert_eq!(prod.exact_div(&pa).unwrap().to_mpoly(), b);
        assert_eq!(pa.sub_ref(&pb).to_mpoly(), &a - &b);
        assert!(pb.exact_div(&pa).is_none());
    }

    #[test]
    fn overflow_poisons() {
        let big = PackedPoly {
            terms: alloc::vec![(0, i128::MAX / 2 + 1)],
            overflow: false,
        };
        let sum = big.add_ref(&big);
        assert!(sum.overflowed());
        assert!(!sum.is_zero_elem());
        assert!(sum.mul_ref(&PackedPoly::one_elem()).overflowed());
    }
}
