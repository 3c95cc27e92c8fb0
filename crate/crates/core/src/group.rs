//! Concrete permutation groups and the automata built from them.
//!
//! Elements are enumerated by breadth-first right multiplication by the
//! generators, so every element comes with a shortest generator word and
//! element 0 is always the identity.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::{Automaton, AutomatonError, Letter};
use crate::perm::{PermError, Permutation};
use crate::Digit;

/// Default cap on the number of group (or monoid) elements enumerated.
pub const DEFAULT_ELEMENT_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NoGenerators,
    DegreeMismatch,
    TooLarge {
        bound: usize,
    },
    NotASubgroup,
    NotInGroup(String),
    /// Some digit does not act as a permutation of the states.
    NotSchreier,
    NotTransitive,
    /// States cannot be identified with group elements.
    NotCayley,
    GeneratorMismatch,
    PointOutOfRange(usize),
    LabelCount {
        expected: usize,
        found: usize,
    },
    Perm(PermError),
    Automaton(AutomatonError),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NoGenerators => write!(f, "at least one generator is required"),
            GroupError::DegreeMismatch => write!(f, "generators act on different point sets"),
            GroupError::TooLarge { bound } => write!(f, "group has more than {bound} elements"),
            GroupError::NotASubgroup => write!(f, "the given elements do not form a subgroup"),
            GroupError::NotInGroup(p) => write!(f, "{p} is not an element of the group"),
            GroupError::NotSchreier => {
                write!(f, "some digit does not act as a permutation of the states")
            }
            GroupError::NotTransitive => write!(f, "the action is not transitive"),
            GroupError::NotCayley => {
                write!(f, "states cannot be identified with the group elements")
            }
            GroupError::GeneratorMismatch => {
                write!(f, "group generators do not match the digit actions")
            }
            GroupError::PointOutOfRange(q) => write!(f, "point {q} out of range"),
            GroupError::LabelCount { expected, found } => {
                write!(f, "expected {expected} labels, got {found}")
            }
            GroupError::Perm(e) => write!(f, "{e}"),
            GroupError::Automaton(e) => write!(f, "{e}"),
        }
    }
}

impl From<PermError> for GroupError {
    fn from(e: PermError) -> Self {
        GroupError::Perm(e)
    }
}

impl From<AutomatonError> for GroupError {
    fn from(e: AutomatonError) -> Self {
        GroupError::Automaton(e)
    }
}

/// A finite permutation group given by an ordered list of generators
/// `t_0, …, t_{p-1}`, with its full element list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    words: Vec<Vec<Digit>>,
    index: BTreeMap<Permutation, usize>,
}

/// Enumerate the group generated by `generators` (all on the same points).
pub fn generate_group(generators: &[Permutation], bound: usize) -> Result<PermGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let degree = first.degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch);
    }
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut words = vec![Vec::new()];
    let mut index = BTreeMap::new();
    index.insert(identity, 0usize);
    let mut head = 0;
    while head < elements.len() {
        for (d, t) in generators.iter().enumerate() {
            let next = elements[head].then(t);
            if !index.contains_key(&next) {
                if elements.len() >= bound {
                    return Err(GroupError::TooLarge { bound });
                }
                let mut w = words[head].clone();
                w.push(d as Digit);
                index.insert(next.clone(), elements.len());
                elements.push(next);
                words.push(w);
            }
        }
        head += 1;
    }
    Ok(PermGroup {
        degree,
        generators: generators.to_vec(),
        elements,
        words,
        index,
    })
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in discovery order; element 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// A shortest generator word for element `i`.
    pub fn word(&self, i: usize) -> &[Digit] {
        &self.words[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `g_i g_j` (first `g_i`, then `g_j`).
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(k, a)| {
            self.generators[k + 1..]
                .iter()
                .all(|b| a.then(b) == b.then(a))
        })
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let q = orbit[head];
            head += 1;
            for t in &self.generators {
                let r = t.apply(q);
                if !seen[r] {
                    seen[r] = true;
                    orbit.push(r);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Only the identity fixes every point. Always true for a group of
    /// permutations of its own point set; kept as an explicit check.
    pub fn is_faithful(&self) -> bool {
        self.elements.iter().filter(|g| g.is_identity()).count() == 1
    }

    /// Number of elements of the given order.
    pub fn count_of_order(&self, order: u64) -> usize {
        self.elements.iter().filter(|g| g.order() == order).count()
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|g| g.order() == n)
    }

    /// Indices of the subgroup generated by the given elements.
    pub fn subgroup_generated(&self, gens: &[Permutation]) -> Result<Vec<usize>, GroupError> {
        let mut gen_idx = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != self.degree {
                return Err(GroupError::DegreeMismatch);
            }
            gen_idx.push(
                self.index_of(g)
                    .ok_or_else(|| GroupError::NotInGroup(g.to_cycle_string()))?,
            );
        }
        let mut members = BTreeSet::new();
        members.insert(0usize);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in &gen_idx {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push(y);
                }
            }
        }
        Ok(members.into_iter().collect())
    }

    /// A finite nonempty subset closed under multiplication is a subgroup.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return false;
        }
        let set: BTreeSet<usize> = members.iter().copied().collect();
        set.iter()
            .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// `x^{-1} S x` for every `x` stays inside `S`.
    pub fn is_normal(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        (0..self.order()).all(|x| {
            let xi = self.inverse(x);
            set.iter()
                .all(|&h| set.contains(&self.mul(self.mul(xi, h), x)))
        })
    }

    /// Intersection of all conjugates of a subgroup.
    pub fn core(&self, members: &[usize]) -> Vec<usize> {
        members
            .iter()
            .copied()
            .filter(|&k| {
                // k lies in every x K x^{-1}  <=>  x^{-1} k x in K for all x
                (0..self.order()).all(|x| {
                    let c = self.mul(self.mul(self.inverse(x), k), x);
                    members.contains(&c)
                })
            })
            .collect()
    }

    /// A small generating set of a subgroup, chosen greedily in element
    /// order.
    pub fn subgroup_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut sorted: Vec<usize> = members.to_vec();
        sorted.sort_unstable();
        let mut gens: Vec<usize> = Vec::new();
        let mut span: BTreeSet<usize> = BTreeSet::new();
        span.insert(0);
        for &m in &sorted {
            if span.contains(&m) {
                continue;
            }
            gens.push(m);
            let perms: Vec<Permutation> = gens.iter().map(|&g| self.elements[g].clone()).collect();
            span = self
                .subgroup_generated(&perms)
                .expect("members are group elements")
                .into_iter()
                .collect();
        }
        gens
    }

    /// Left coset `g K` as sorted element indices.
    pub fn left_coset(&self, g: usize, members: &[usize]) -> Vec<usize> {
        let mut c: Vec<usize> = members.iter().map(|&k| self.mul(g, k)).collect();
        c.sort_unstable();
        c
    }
}

/// Schreier graph of the generators on their points, turned into an
/// automaton with states named `1 … m`.
pub fn schreier_automaton(
    generators: &[Permutation],
    initial: usize,
    labels: &[String],
) -> Result<Automaton, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let degree = first.degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch);
    }
    if initial >= degree {
        return Err(GroupError::PointOutOfRange(initial));
    }
    if labels.len() != degree {
        return Err(GroupError::LabelCount {
            expected: degree,
            found: labels.len(),
        });
    }
    let mut alphabet: Vec<String> = Vec::new();
    let mut letters: Vec<Letter> = Vec::with_capacity(degree);
    for l in labels {
        let idx = match alphabet.iter().position(|s| s == l) {
            Some(i) => i,
            None => {
                alphabet.push(l.clone());
                alphabet.len() - 1
            }
        };
        letters.push(idx);
    }
    let names = (1..=degree).map(|i| i.to_string()).collect();
    let transitions = (0..degree)
        .map(|q| generators.iter().map(|t| t.apply(q)).collect())
        .collect();
    Ok(Automaton::new(
        generators.len() as u32,
        names,
        alphabet,
        letters,
        transitions,
        initial,
    )?)
}

/// Cayley graph of `group` (right multiplication by the generators), with
/// initial state the identity and each element labeled by its left coset
/// `gK`. States and letters are named in cycle notation; a letter is named
/// after the first element of its coset in element order.
pub fn cayley_automaton(
    group: &PermGroup,
    subgroup: &[Permutation],
) -> Result<Automaton, GroupError> {
    let mut members = Vec::with_capacity(subgroup.len());
    for k in subgroup {
        if k.degree() != group.degree() {
            return Err(GroupError::DegreeMismatch);
        }
        members.push(
            group
                .index_of(k)
                .ok_or_else(|| GroupError::NotInGroup(k.to_cycle_string()))?,
        );
    }
    members.sort_unstable();
    members.dedup();
    if !group.is_subgroup(&members) {
        return Err(GroupError::NotASubgroup);
    }
    let n = group.order();
    let mut alphabet: Vec<String> = Vec::new();
    let mut rep_to_letter: BTreeMap<usize, Letter> = BTreeMap::new();
    let mut labels = Vec::with_capacity(n);
    for g in 0..n {
        let rep = group.left_coset(g, &members)[0];
        let letter = *rep_to_letter.entry(rep).or_insert_with(|| {
            alphabet.push(group.element(rep).to_cycle_string());
            alphabet.len() - 1
        });
        labels.push(letter);
    }
    let names = group
        .elements()
        .iter()
        .map(|g| g.to_cycle_string())
        .collect();
    let gen_count = group.generators().len();
    let transitions = (0..n)
        .map(|g| {
            (0..gen_count)
                .map(|d| {
                    group
                        .index_of(&group.element(g).then(&group.generators()[d]))
                        .expect("closed")
                })
                .collect()
        })
        .collect();
    Ok(Automaton::new(
        gen_count as u32,
        names,
        alphabet,
        labels,
        transitions,
        0,
    )?)
}
