//! Built-in automata.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::automaton::Automaton;
use crate::group::schreier_automaton;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusName {
    /// Two states, `t_0 = I`, `t_1 = (A B)`, initial state labeled `A`.
    ThueMorse,
    /// `A(n) mod 7` for the Apéry numbers: output `d_i` means residue `i`.
    AperyMod7,
    /// The 8-state quaternion Cayley graph, initial state 6.
    QuaternionFig3,
    /// `a_n` = leading base-`p` digit of `n`.
    LeftmostDigit(u32),
    /// The dihedral group of the square acting on its corners.
    DihedralSquare,
}

impl CorpusName {
    /// Every named automaton, with `leftmost_digit` at `p = 3`.
    pub fn all() -> Vec<CorpusName> {
        vec![
            CorpusName::ThueMorse,
            CorpusName::AperyMod7,
            CorpusName::QuaternionFig3,
            CorpusName::LeftmostDigit(3),
            CorpusName::DihedralSquare,
        ]
    }
}

impl fmt::Display for CorpusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusName::ThueMorse => write!(f, "thue_morse"),
            CorpusName::AperyMod7 => write!(f, "apery_mod7"),
            CorpusName::QuaternionFig3 => write!(f, "quaternion_fig3"),
            CorpusName::LeftmostDigit(p) => write!(f, "leftmost_digit_p{p}"),
            CorpusName::DihedralSquare => write!(f, "dihedral_square"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCorpusName(pub String);

impl fmt::Display for UnknownCorpusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown corpus automaton {:?}", self.0)
    }
}

impl FromStr for CorpusName {
    type Err = UnknownCorpusName;

    /// Accepts `thue_morse`, `apery_mod7`, `quaternion_fig3`,
    /// `dihedral_square`, and `leftmost_digit_p<P>` or `leftmost_digit(<P>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownCorpusName(s.to_string());
        match s {
            "thue_morse" => Ok(CorpusName::ThueMorse),
            "apery_mod7" => Ok(CorpusName::AperyMod7),
            "quaternion_fig3" => Ok(CorpusName::QuaternionFig3),
            "dihedral_square" => Ok(CorpusName::DihedralSquare),
            _ => {
                let p = s
                    .strip_prefix("leftmost_digit_p")
                    .or_else(|| {
                        s.strip_prefix("leftmost_digit(")
                            .and_then(|r| r.strip_suffix(')'))
                    })
                    .ok_or_else(unknown)?;
                let p: u32 = p.parse().map_err(|_| unknown())?;
                if p < 2 {
                    return Err(unknown());
                }
                Ok(CorpusName::LeftmostDigit(p))
            }
        }
    }
}

fn cycles(s: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(s, Some(degree)).expect("corpus permutation")
}

fn indexed_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("d{i}")).collect()
}

pub fn corpus(name: CorpusName) -> Automaton {
    match name {
        CorpusName::ThueMorse => Automaton::new(
            2,
            vec!["A".to_string(), "B".to_string()],
            vec!["A".to_string(), "B".to_string()],
            vec![0, 1],
            vec![vec![0, 1], vec![1, 0]],
            0,
        )
        .expect("valid"),
        CorpusName::AperyMod7 => {
            let id = cycles("()", 6);
            let t1 = cycles("(1,5,4,6,2,3)", 6);
            let t2 = cycles("(1,3,2,6,4,5)", 6);
            let gens = [id.clone(), t1.clone(), t2.clone(), t2.clone(), t2, t1, id];
            schreier_automaton(&gens, 0, &indexed_labels(6)).expect("valid")
        }
        CorpusName::QuaternionFig3 => {
            let gens = [
                cycles("(1,3,4,7)(5,6,8,2)", 8),
                cycles("(1,2,4,6)(5,3,8,7)", 8),
            ];
            schreier_automaton(&gens, 5, &indexed_labels(8)).expect("valid")
        }
        CorpusName::LeftmostDigit(p) => leftmost_digit(p),
        CorpusName::DihedralSquare => {
            // corners numbered around the square; t_0 a quarter turn,
            // t_1 the reflection in the diagonal through corners 1 and 3
            let gens = [cycles("(1,2,3,4)", 4), cycles("(2,4)", 4)];
            let labels: Vec<String> = (1..=4).map(|i| format!("c{i}")).collect();
            schreier_automaton(&gens, 0, &labels).expect("valid")
        }
    }
}

/// States `L_1 … L_{p-1}`: reading a nonzero digit `d` moves to `L_d`,
/// reading `0` stays. The last digit read is the leading one.
fn leftmost_digit(p: u32) -> Automaton {
    assert!(p >= 2, "base must be at least 2");
    let k = (p - 1) as usize;
    let names = (1..p).map(|d| format!("L{d}")).collect();
    let alphabet = (1..p).map(|d| d.to_string()).collect();
    let labels = (0..k).collect();
    let transitions = (0..k)
        .map(|q| {
            let mut row = vec![q];
            row.extend(0..k);
            row
        })
        .collect();
    Automaton::new(p, names, alphabet, labels, transitions, 0).expect("valid")
}
