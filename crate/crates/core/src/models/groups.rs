//! Exact averages over the permutation group Sₙ and the hyperoctahedral group
//! Hₙ by full enumeration.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{Category, SetPartition};
use crate::scalar::ExactScalar;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    /// Permutation matrices.
    S,
    /// Signed permutation matrices.
    H,
}

impl GroupFamily {
    pub fn category(self) -> Category {
        match self {
            GroupFamily::S => Category::S,
            GroupFamily::H => Category::H,
        }
    }

    fn letter(self) -> char {
        match self {
            GroupFamily::S => 'S',
            GroupFamily::H => 'H',
        }
    }

    /// Largest `n` that is enumerated.
    pub fn max_n(self) -> u32 {
        match self {
            GroupFamily::S => 7,
            GroupFamily::H => 5,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(GroupFamily::S),
            "H" => Ok(GroupFamily::H),
            _ => Err(Error::Parse(format!("unknown finite group {s:?}; expected S or H"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteGroupSpec {
    pub family: GroupFamily,
    pub n: u32,
}

impl FiniteGroupSpec {
    pub fn new(family: GroupFamily, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be a positive integer".into()));
        }
        if n > family.max_n() {
            return Err(Error::GroupTooLarge { family: family.letter(), n });
        }
        Ok(FiniteGroupSpec { family, n })
    }

    pub fn order(&self) -> u64 {
        let fact: u64 = (1..=self.n as u64).product();
        match self.family {
            GroupFamily::S => fact,
            GroupFamily::H => fact << self.n,
        }
    }

    /// Every group element, as `(σ, ε)` with `g_{ab} = ε_b · [a = σ(b)]`
    /// (0-based indices, signs all `+1` for Sₙ).
    pub fn elements(&self) -> Vec<SignedPermutation> {
        let n = self.n as usize;
        let perms = permutations(n);
        let sign_patterns: u32 = match self.family {
            GroupFamily::S => 1,
            GroupFamily::H => 1 << n,
        };
        let mut out = Vec::with_capacity(self.order() as usize);
        for perm in &perms {
            for mask in 0..sign_patterns {
                let signs = (0..n).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                out.push(SignedPermutation { perm: perm.clone(), signs });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    /// Matrix entry `g_{ab}` for 1-based `a`, `b`.
    pub fn entry(&self, a: u32, b: u32) -> i64 {
        let col = b as usize - 1;
        if self.perm[col] == a as usize - 1 {
            self.signs[col] as i64
        } else {
            0
        }
    }

    /// `Π_l g_{i_l j_l}`.
    pub fn monomial(&self, i: &[u32], j: &[u32]) -> i64 {
        let mut acc = 1;
        for (&a, &b) in i.iter().zip(j) {
            acc *= self.entry(a, b);
            if acc == 0 {
                break;
            }
        }
        acc
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot has a successor");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

fn check_words(n: u32, i: &Word, j: &Word) -> Result<()> {
    if i.len() != j.len() {
        return Err(Error::LengthMismatch { left: i.len(), right: j.len() });
    }
    i.check_range(n)?;
    j.check_range(n)
}

/// `(1/|G|) Σ_g Π_l g_{i_l j_l}`, exactly.
pub fn group_integral_exact(spec: FiniteGroupSpec, i: &Word, j: &Word) -> Result<ExactScalar> {
    let spec = FiniteGroupSpec::new(spec.family, spec.n)?;
    check_words(spec.n, i, j)?;
    let total: i64 = spec.elements().iter().map(|g| g.monomial(i.letters(), j.letters())).sum();
    Ok(ExactScalar::ratio(total, spec.order() as i64))
}

/// Checks at every group element that
/// `Σ_{i : π ≤ ker i} Π_l g_{i_l j_l} = [π ≤ ker j]`, summing over the
/// `n^{|π|}` words constant on the blocks of `π`.
pub fn fixed_point_identity_check(spec: FiniteGroupSpec, pi: &SetPartition, j: &Word) -> Result<bool> {
    let spec = FiniteGroupSpec::new(spec.family, spec.n)?;
    let k = pi.ground_size();
    if !spec.family.category().contains(pi) {
        return Err(Error::Membership { family: spec.family.category().family_name().into(), item: pi.to_string() });
    }
    if j.len() != k {
        return Err(Error::LengthMismatch { left: k, right: j.len() });
    }
    j.check_range(spec.n)?;
    let expected = if k == 0 || pi.refines(&j.kernel()?) { 1 } else { 0 };
    let labels = pi.labels();
    let words: Vec<Vec<u32>> = Word::all(pi.block_count(), spec.n)
        .map(|values| labels.iter().map(|&b| values.letters()[b as usize]).collect())
        .collect();
    Ok(spec.elements().iter().all(|g| {
        let lhs: i64 = words.iter().map(|i| g.monomial(i, j.letters())).sum();
        lhs == expected
    }))
}
