//! Set partitions of `{1..k}`, their lattice structure, the partition families
//! of the ten easy quantum groups, and Möbius functions.
//!
//! A partition is stored as its restricted growth string: position `p` carries
//! the index of its block, blocks numbered in order of their minimum. This is
//! the same as listing blocks sorted by minimum with ascending elements, so two
//! equal partitions always have identical representations.

mod family;
mod mobius;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config;
use crate::error::{Error, Result};

pub use family::{enumerate_family, Category};
pub use mobius::{mobius, mobius_by_chains, mobius_column_to, mobius_table, Lattice, MobiusTable};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    labels: Vec<u16>,
    blocks: usize,
}

impl SetPartition {
    /// The unique partition of the empty set (zero blocks).
    pub fn empty() -> Self {
        SetPartition { labels: Vec::new(), blocks: 0 }
    }

    /// All singletons.
    pub fn discrete(k: usize) -> Self {
        SetPartition { labels: (0..k as u16).collect(), blocks: k }
    }

    /// A single block `1_k` (the empty partition for k = 0).
    pub fn full(k: usize) -> Self {
        SetPartition { labels: vec![0; k], blocks: usize::from(k > 0) }
    }

    /// Partition of positions by equal values.
    pub fn from_labels<T: Eq + Hash>(values: &[T]) -> Self {
        let mut seen: HashMap<&T, u16> = HashMap::new();
        let labels = values
            .iter()
            .map(|v| {
                let next = seen.len() as u16;
                *seen.entry(v).or_insert(next)
            })
            .collect();
        SetPartition { labels, blocks: seen.len() }
    }

    /// Builds a partition from blocks of 1-based elements, in any order.
    /// Rejects empty blocks and anything that is not a cover of `{1..k}`.
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > k {
                    return Err(Error::Parse(format!("element {e} outside 1..={k}")));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::Parse(format!("element {e} appears twice")));
                }
                owner[e - 1] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Parse(format!("element {} is not covered", missing + 1)));
        }
        Ok(SetPartition::from_labels(&owner))
    }

    /// Restricted growth string (0-based block index per position).
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub(crate) fn from_rgs_unchecked(labels: Vec<u16>, blocks: usize) -> Self {
        SetPartition { labels, blocks }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    /// |π|
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Blocks of 1-based elements, each ascending, sorted by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (p, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(p + 1);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.blocks];
        for &b in &self.labels {
            sizes[b as usize] += 1;
        }
        sizes
    }

    /// `self ≤ other`: every block of `self` lies inside a block of `other`.
    /// Both partitions must have the same ground size.
    pub fn refines(&self, other: &SetPartition) -> bool {
        debug_assert_eq!(self.ground_size(), other.ground_size());
        let mut image = vec![u16::MAX; self.blocks];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u16::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    fn join_unchecked(&self, other: &SetPartition) -> SetPartition {
        let k = self.ground_size();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for part in [self, other] {
            let mut first = vec![usize::MAX; part.blocks];
            for (p, &b) in part.labels.iter().enumerate() {
                let slot = &mut first[b as usize];
                if *slot == usize::MAX {
                    *slot = p;
                } else {
                    let (ra, rb) = (find(&mut parent, *slot), find(&mut parent, p));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..k).map(|p| find(&mut parent, p)).collect();
        SetPartition::from_labels(&roots)
    }

    fn meet_unchecked(&self, other: &SetPartition) -> SetPartition {
        let pairs: Vec<(u16, u16)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        SetPartition::from_labels(&pairs)
    }

    /// No `s1 < t1 < s2 < t2` with `s1,s2` and `t1,t2` in two different blocks.
    pub fn is_noncrossing(&self) -> bool {
        let l = &self.labels;
        let k = l.len();
        for a in 0..k {
            for b in a + 1..k {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..k {
                    if l[c] != l[a] {
                        continue;
                    }
                    if l[c + 1..].contains(&l[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Noncrossing test by repeatedly removing a block that is an interval
    /// of the remaining points.
    pub fn is_noncrossing_by_interval_removal(&self) -> bool {
        let mut remaining: Vec<u16> = self.labels.clone();
        while !remaining.is_empty() {
            let interval = (0..remaining.len()).find_map(|start| {
                let b = remaining[start];
                let end = remaining.iter().rposition(|&x| x == b).unwrap();
                if start > 0 && remaining[..start].contains(&b) {
                    return None;
                }
                remaining[start..=end].iter().all(|&x| x == b).then_some(b)
            });
            match interval {
                Some(b) => remaining.retain(|&x| x != b),
                None => return false,
            }
        }
        true
    }

    /// Every block has as many odd as even elements.
    pub fn is_balanced(&self) -> bool {
        let mut excess = vec![0i32; self.blocks];
        for (p, &b) in self.labels.iter().enumerate() {
            // position p is the element p + 1
            excess[b as usize] += if p % 2 == 0 { 1 } else { -1 };
        }
        excess.iter().all(|&e| e == 0)
    }

    pub fn is_pairing(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    pub fn has_even_blocks(&self) -> bool {
        self.block_sizes().iter().all(|&s| s % 2 == 0)
    }

    pub fn max_block_size(&self) -> usize {
        self.block_sizes().into_iter().max().unwrap_or(0)
    }
}

fn same_size(pi: &SetPartition, sigma: &SetPartition) -> Result<()> {
    if pi.ground_size() != sigma.ground_size() {
        return Err(Error::Dimension { left: pi.ground_size(), right: sigma.ground_size() });
    }
    Ok(())
}

/// `pi ≤ sigma` in the refinement order.
pub fn is_refinement(pi: &SetPartition, sigma: &SetPartition) -> Result<bool> {
    same_size(pi, sigma)?;
    Ok(pi.refines(sigma))
}

/// π ∨ σ, the finest partition coarser than both.
pub fn join(pi: &SetPartition, sigma: &SetPartition) -> Result<SetPartition> {
    same_size(pi, sigma)?;
    Ok(pi.join_unchecked(sigma))
}

/// π ∧ σ, the nonempty pairwise intersections of blocks.
pub fn meet(pi: &SetPartition, sigma: &SetPartition) -> Result<SetPartition> {
    same_size(pi, sigma)?;
    Ok(pi.meet_unchecked(sigma))
}

/// |π ∨ σ| without allocating the join, for equal ground sizes.
pub(crate) fn join_block_count(pi: &SetPartition, sigma: &SetPartition) -> usize {
    pi.join_unchecked(sigma).block_count()
}

/// All of P(k) in descending lexicographic restricted-growth-string order:
/// the discrete partition comes first and the one-block partition last, and
/// every partition precedes all strictly coarser ones.
pub fn enumerate_all(k: usize) -> Result<Vec<SetPartition>> {
    config::check_k(k)?;
    if k == 0 {
        return Ok(vec![SetPartition::empty()]);
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u16; k];
    // maxes[i] = max(rgs[0..=i])
    let mut maxes = vec![0u16; k];
    loop {
        out.push(SetPartition::from_rgs_unchecked(rgs.clone(), maxes[k - 1] as usize + 1));
        // rightmost position that can still be incremented
        let mut i = k - 1;
        loop {
            if i == 0 {
                out.reverse();
                return Ok(out);
            }
            if rgs[i] <= maxes[i - 1] {
                break;
            }
            i -= 1;
        }
        rgs[i] += 1;
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in i + 1..k {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (ei, e) in block.iter().enumerate() {
                if ei > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Parses the `1,2|3,4` text form. Only canonical text is accepted: elements
/// ascending inside blocks, blocks ordered by minimum, covering `{1..k}` where
/// `k` is the largest element. The empty string is the empty partition.
impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(SetPartition::empty());
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for block in s.split('|') {
            let mut elems = Vec::new();
            for tok in block.split(',') {
                let canonical = !tok.is_empty() && tok.len() <= 6 && tok.bytes().all(|b| b.is_ascii_digit()) && !tok.starts_with('0');
                if !canonical {
                    return Err(Error::Parse(format!("bad element {tok:?} in partition {s:?}")));
                }
                elems.push(tok.parse::<usize>().expect("digits"));
            }
            if elems.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("block {block:?} is not strictly ascending")));
            }
            blocks.push(elems);
        }
        if blocks.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(Error::Parse(format!("blocks of {s:?} are not ordered by minimum")));
        }
        let k = blocks.iter().flatten().copied().max().unwrap_or(0);
        if k > u16::MAX as usize {
            return Err(Error::Parse("ground set too large".into()));
        }
        let total: usize = blocks.iter().map(Vec::len).sum();
        if total != k {
            return Err(Error::Parse(format!("{s:?} does not cover 1..={k} exactly once")));
        }
        SetPartition::from_blocks(k, &blocks)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
