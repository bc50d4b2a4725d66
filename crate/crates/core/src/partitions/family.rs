use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{enumerate_all, SetPartition};
use crate::config;
use crate::error::{Error, Result};

/// The ten easy quantum groups, each tied to one partition family D.
///
/// | tag | family | tag | family |
/// |-----|--------|-----|--------|
/// | O   | P₂     | O+  | NC₂    |
/// | S   | P      | S+  | NC     |
/// | H   | Pₕ     | H+  | NCₕ    |
/// | B   | P_b    | B+  | NC_b   |
/// | O*  | E₂     | H*  | Eₕ     |
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    O,
    S,
    H,
    B,
    OStar,
    HStar,
    OPlus,
    SPlus,
    HPlus,
    BPlus,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::O,
        Category::S,
        Category::H,
        Category::B,
        Category::OStar,
        Category::HStar,
        Category::OPlus,
        Category::SPlus,
        Category::HPlus,
        Category::BPlus,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Category::O => "O",
            Category::S => "S",
            Category::H => "H",
            Category::B => "B",
            Category::OStar => "O*",
            Category::HStar => "H*",
            Category::OPlus => "O+",
            Category::SPlus => "S+",
            Category::HPlus => "H+",
            Category::BPlus => "B+",
        }
    }

    /// Name of the partition family.
    pub fn family_name(self) -> &'static str {
        match self {
            Category::O => "P2",
            Category::S => "P",
            Category::H => "Ph",
            Category::B => "Pb",
            Category::OStar => "E2",
            Category::HStar => "Eh",
            Category::OPlus => "NC2",
            Category::SPlus => "NC",
            Category::HPlus => "NCh",
            Category::BPlus => "NCb",
        }
    }

    pub fn is_free(self) -> bool {
        matches!(self, Category::OPlus | Category::SPlus | Category::HPlus | Category::BPlus)
    }

    pub fn is_half_liberated(self) -> bool {
        matches!(self, Category::OStar | Category::HStar)
    }

    pub fn is_classical(self) -> bool {
        !self.is_free() && !self.is_half_liberated()
    }

    /// Family predicate: is `pi` in D(k)?
    pub fn contains(self, pi: &SetPartition) -> bool {
        let pairing = || pi.is_pairing();
        let even = || pi.has_even_blocks();
        let small = || pi.max_block_size() <= 2;
        match self {
            Category::O => pairing(),
            Category::S => true,
            Category::H => even(),
            Category::B => small(),
            Category::OStar => pairing() && pi.is_balanced(),
            Category::HStar => pi.is_balanced(),
            Category::OPlus => pairing() && pi.is_noncrossing(),
            Category::SPlus => pi.is_noncrossing(),
            Category::HPlus => even() && pi.is_noncrossing(),
            Category::BPlus => small() && pi.is_noncrossing(),
        }
    }

    /// Whether the one-block partition `1_s` belongs to D(s), i.e. whether a
    /// block of size `s` is allowed.
    pub fn allows_block_size(self, s: usize) -> bool {
        s > 0 && self.contains(&SetPartition::full(s))
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown category {s:?}; expected one of O,S,H,B,O*,H*,O+,S+,H+,B+")))
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Category {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// D(k) for the category, as a sub-list of [`enumerate_all`] (same order).
/// For k = 0 this is the single empty partition.
pub fn enumerate_family(cat: Category, k: usize) -> Result<Vec<SetPartition>> {
    config::check_k(k)?;
    Ok(enumerate_all(k)?.into_iter().filter(|pi| cat.contains(pi)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(cat: Category, k: usize) -> Vec<String> {
        enumerate_family(cat, k).unwrap().iter().map(|p| p.to_string()).collect()
    }

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    fn catalan(m: usize) -> usize {
        // C(m) = binom(2m, m) / (m + 1)
        let mut c = 1usize;
        for i in 0..m {
            c = c * 2 * (2 * i + 1) / (i + 2);
        }
        c
    }

    fn factorial(m: usize) -> usize {
        (1..=m).product()
    }

    #[test]
    fn family_examples() {
        assert_eq!(enumerate_family(Category::S, 3).unwrap().len(), 5);
        assert!(enumerate_family(Category::O, 3).unwrap().is_empty());
        assert_eq!(texts(Category::OPlus, 4), ["1,4|2,3", "1,2|3,4"]);
        assert_eq!(texts(Category::OStar, 4), ["1,4|2,3", "1,2|3,4"]);
        for cat in Category::ALL {
            assert_eq!(enumerate_family(cat, 0).unwrap(), vec![SetPartition::empty()]);
        }
    }

    #[test]
    fn family_counts() {
        for m in 0..=4 {
            assert_eq!(enumerate_family(Category::O, 2 * m).unwrap().len(), double_factorial((2 * m).saturating_sub(1)));
            assert_eq!(enumerate_family(Category::OPlus, 2 * m).unwrap().len(), catalan(m));
            assert_eq!(enumerate_family(Category::OStar, 2 * m).unwrap().len(), factorial(m));
        }
        for k in 0..=8 {
            assert_eq!(enumerate_family(Category::SPlus, k).unwrap().len(), catalan(k));
        }
        assert_eq!(double_factorial(7), 105);
        assert_eq!(catalan(4), 14);
    }

    #[test]
    fn families_are_nested_as_expected() {
        use Category::*;
        let subsets = [(OPlus, O), (SPlus, S), (HPlus, H), (BPlus, B), (OStar, O), (OStar, HStar), (HStar, H), (O, H), (O, B), (OPlus, BPlus)];
        for k in 0..=6 {
            for (small, big) in subsets {
                for pi in enumerate_family(small, k).unwrap() {
                    assert!(big.contains(&pi), "{pi} in {small} but not {big}");
                }
            }
        }
    }

    #[test]
    fn category_tags_round_trip() {
        for cat in Category::ALL {
            assert_eq!(cat.tag().parse::<Category>().unwrap(), cat);
        }
        assert!("X".parse::<Category>().is_err());
        assert!("o".parse::<Category>().is_err());
    }

    #[test]
    fn allowed_block_sizes() {
        use Category::*;
        assert!(B.allows_block_size(1) && B.allows_block_size(2) && !B.allows_block_size(3));
        assert!(!O.allows_block_size(1) && O.allows_block_size(2) && !O.allows_block_size(4));
        assert!(H.allows_block_size(4) && !H.allows_block_size(3));
        assert!(HStar.allows_block_size(4) && !HStar.allows_block_size(1));
        assert!(S.allows_block_size(5));
    }
}
