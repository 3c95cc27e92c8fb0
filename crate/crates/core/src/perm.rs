//! Permutations of `{0, …, m-1}`, printed and parsed in 1-based cycle
//! notation such as `(1,5,4,6,2,3)` or `(1,3,4,7)(5,6,8,2)`.
//!
//! Composition follows the right-action convention: `g.then(h)` is "first
//! `g`, then `h`", so `u^{gh} = (u^g)^h`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotBijective,
    Syntax(String),
    PointOutOfRange { point: usize, degree: usize },
    RepeatedPoint(usize),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotBijective => write!(f, "map is not a bijection"),
            PermError::Syntax(s) => write!(f, "malformed cycle notation: {s}"),
            PermError::PointOutOfRange { point, degree } => {
                write!(f, "point {point} out of range 1..={degree}")
            }
            PermError::RepeatedPoint(p) => write!(f, "point {p} appears twice"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(PermError::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parse 1-based cycle notation. `degree` defaults to the largest point
    /// mentioned; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self, PermError> {
        let cycles = parse_cycle_list(text)?;
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0);
        let degree = degree.unwrap_or(max_point);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in &cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(PermError::PointOutOfRange { point: pt, degree });
                }
                if used[pt - 1] {
                    return Err(PermError::RepeatedPoint(pt));
                }
                used[pt - 1] = true;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `point^self`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", p + 1);
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let syntax = || PermError::Syntax(String::from(text));
    let mut rest = text.trim();
    let mut cycles = Vec::new();
    if rest.is_empty() {
        return Err(syntax());
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(syntax)?;
        let close = body.find(')').ok_or_else(syntax)?;
        let inner = body[..close].trim();
        rest = body[close + 1..].trim_start();
        if inner.is_empty() {
            continue;
        }
        // points separated by commas, blanks or both
        let mut cycle = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            cycle.push(tok.parse::<usize>().map_err(|_| syntax())?);
        }
        if cycle.is_empty() {
            return Err(syntax());
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}
