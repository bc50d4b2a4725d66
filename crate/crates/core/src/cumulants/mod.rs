//! Moment/cumulant transforms for the classical, free and half-liberated
//! species.
//!
//! A functional is a table from [`Word`]s to exact scalars. Single-variable
//! tables are keyed by the constant words `1^r` and look up any word by its
//! length alone.
//!
//! Half-liberated cumulants only ever enter the moment formula through
//! constant subwords (the sum runs over `π ≤ ker i`), so they are computed on
//! constant words from the pure moments of each letter, and set to zero on
//! mixed words.

mod functional;
mod laws;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{mobius_column_to, Category, Lattice, SetPartition};
use crate::scalar::ExactScalar;
use crate::word::Word;

pub use functional::{partitioned_functional, PartitionedValue};
pub use laws::{law_moments, vanishing_pattern_check, Law, VanishingReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    Classical,
    Free,
    Half,
}

impl Species {
    pub const ALL: [Species; 3] = [Species::Classical, Species::Free, Species::Half];

    pub fn tag(self) -> &'static str {
        match self {
            Species::Classical => "classical",
            Species::Free => "free",
            Species::Half => "half",
        }
    }

    /// P, NC or Eₕ.
    pub fn lattice(self) -> Lattice {
        match self {
            Species::Classical => Lattice::All,
            Species::Free => Lattice::Family(Category::SPlus),
            Species::Half => Lattice::Family(Category::HStar),
        }
    }

    pub fn is_compatible(self, cat: Category) -> bool {
        match self {
            Species::Classical => cat.is_classical(),
            Species::Free => cat.is_free(),
            Species::Half => cat.is_half_liberated(),
        }
    }

    fn check_moments(self, m: &MomentFunctional) -> Result<()> {
        if self == Species::Half {
            if let Some((w, v)) = m.iter().find(|(w, v)| w.len() % 2 == 1 && !v.is_zero()) {
                return Err(Error::Precondition(format!("half-liberated cumulants need vanishing odd moments; E[{w}] = {v}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Species::ALL
            .into_iter()
            .find(|sp| sp.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown species {s:?}; expected classical, free or half")))
    }
}

impl Serialize for Species {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Species {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Values on nonempty words of length `≤ order_max`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordTable {
    order_max: usize,
    single_variable: bool,
    values: BTreeMap<Word, ExactScalar>,
}

impl WordTable {
    /// Entries `r ↦ values[r-1]` on the words `1^r`.
    fn from_sequence(values: Vec<ExactScalar>) -> Self {
        let order_max = values.len();
        let values = values.into_iter().enumerate().map(|(r, v)| (Word::constant(1, r + 1), v)).collect();
        WordTable { order_max, single_variable: true, values }
    }

    fn from_words(mut values: BTreeMap<Word, ExactScalar>) -> Result<Self> {
        if let Some(v) = values.remove(&Word::empty()) {
            if v != ExactScalar::one() {
                return Err(Error::Precondition(format!("the empty word must map to 1, got {v}")));
            }
        }
        let order_max = values.keys().map(Word::len).max().unwrap_or(0);
        Ok(WordTable { order_max, single_variable: false, values })
    }

    fn from_fn(order_max: usize, letters: u32, mut f: impl FnMut(&Word) -> ExactScalar) -> Self {
        let mut values = BTreeMap::new();
        for len in 1..=order_max {
            for w in Word::all(len, letters) {
                let v = f(&w);
                values.insert(w, v);
            }
        }
        WordTable { order_max, single_variable: false, values }
    }

    fn empty_like(&self) -> Self {
        WordTable { order_max: self.order_max, single_variable: self.single_variable, values: BTreeMap::new() }
    }

    pub fn order_max(&self) -> usize {
        self.order_max
    }

    pub fn is_single_variable(&self) -> bool {
        self.single_variable
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on a word; the empty word gives 1.
    pub fn get(&self, w: &Word) -> Result<ExactScalar> {
        if w.is_empty() {
            return Ok(ExactScalar::one());
        }
        if w.len() > self.order_max {
            return Err(Error::InsufficientOrder { needed: w.len(), available: self.order_max });
        }
        let found = if self.single_variable { self.values.get(&Word::constant(1, w.len())) } else { self.values.get(w) };
        found.cloned().ok_or_else(|| Error::Precondition(format!("no value given for the word {w}")))
    }

    /// Entries ordered by length, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &ExactScalar)> {
        let mut entries: Vec<_> = self.values.iter().collect();
        entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        entries.into_iter()
    }

    /// Values on `1, 1^2, …, 1^{order_max}` (the moment or cumulant sequence
    /// of a single variable).
    pub fn sequence(&self) -> Result<Vec<ExactScalar>> {
        (1..=self.order_max).map(|r| self.get(&Word::constant(1, r))).collect()
    }

    /// `{"word": "p/q", …}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(self.iter().map(|(w, v)| (w.to_string(), serde_json::Value::String(v.to_string()))).collect())
    }

    fn insert(&mut self, w: Word, v: ExactScalar) {
        self.values.insert(w, v);
    }
}

/// `E[x_{i₁} ⋯ x_{i_k}]` on words; the empty word is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional(WordTable);

impl MomentFunctional {
    /// Single-variable moments `m_1, …, m_r`.
    pub fn from_sequence(moments: Vec<ExactScalar>) -> Self {
        MomentFunctional(WordTable::from_sequence(moments))
    }

    /// Multivariate moments on explicit words. An empty-word entry, if given,
    /// must be 1.
    pub fn from_words(values: BTreeMap<Word, ExactScalar>) -> Result<Self> {
        WordTable::from_words(values).map(MomentFunctional)
    }

    /// Moments on every word of length `1..=order_max` over `1..=letters`.
    pub fn from_fn(order_max: usize, letters: u32, f: impl FnMut(&Word) -> ExactScalar) -> Self {
        MomentFunctional(WordTable::from_fn(order_max, letters, f))
    }

    /// Parses a JSON object mapping word text to rational text,
    /// e.g. `{"1": "0", "1,1": "1", "1,2": "1/2"}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("moment file: {e}")))?;
        let mut values = BTreeMap::new();
        for (key, value) in raw {
            let word: Word = key.parse()?;
            let text = value
                .as_str()
                .ok_or_else(|| Error::Parse(format!("moment of {key:?} must be a string such as \"1/2\"")))?;
            values.insert(word, text.parse::<ExactScalar>()?);
        }
        Self::from_words(values)
    }
}

impl Deref for MomentFunctional {
    type Target = WordTable;

    fn deref(&self) -> &WordTable {
        &self.0
    }
}

/// Cumulants of one species on words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantFamily {
    species: Species,
    table: WordTable,
}

impl CumulantFamily {
    pub fn from_sequence(species: Species, cumulants: Vec<ExactScalar>) -> Self {
        CumulantFamily { species, table: WordTable::from_sequence(cumulants) }
    }

    pub fn from_words(species: Species, values: BTreeMap<Word, ExactScalar>) -> Result<Self> {
        Ok(CumulantFamily { species, table: WordTable::from_words(values)? })
    }

    pub fn from_fn(species: Species, order_max: usize, letters: u32, f: impl FnMut(&Word) -> ExactScalar) -> Self {
        CumulantFamily { species, table: WordTable::from_fn(order_max, letters, f) }
    }

    pub fn species(&self) -> Species {
        self.species
    }
}

impl Deref for CumulantFamily {
    type Target = WordTable;

    fn deref(&self) -> &WordTable {
        &self.table
    }
}

/// `Π_{V ∈ π} table(w|_V)`.
fn subword_product(table: &WordTable, w: &Word, pi: &SetPartition) -> Result<ExactScalar> {
    let mut acc = ExactScalar::one();
    for block in pi.blocks() {
        acc *= &table.get(&w.restrict(&block))?;
    }
    Ok(acc)
}

/// The species lattice at ground size `k` with `μ(π, 1_k)`. Every element of
/// P(k), NC(k) and Eₕ(k) lies below `1_k` (Eₕ(k) is empty for odd `k`).
fn lattice_column(species: Species, k: usize) -> Result<Arc<Vec<(SetPartition, i64)>>> {
    let top = SetPartition::full(k);
    if !species.lattice().contains(&top) {
        return Ok(Arc::new(Vec::new()));
    }
    mobius_column_to(species.lattice(), &top)
}

/// Whether a cumulant of this species on `w` is computed from the moment
/// formula (as opposed to vanishing by convention).
fn is_free_cumulant_slot(species: Species, w: &Word) -> bool {
    species != Species::Half || (w.is_constant() && w.len().is_multiple_of(2))
}

/// Cumulants by Möbius inversion over the species lattice:
/// `c(w) = Σ_π μ(π, 1_k) Π_{V∈π} E[w|_V]`.
pub fn moments_to_cumulants(species: Species, m: &MomentFunctional) -> Result<CumulantFamily> {
    species.check_moments(m)?;
    let mut table = m.empty_like();
    for (w, _) in m.iter() {
        let mut value = ExactScalar::zero();
        if is_free_cumulant_slot(species, w) {
            for (pi, mu) in lattice_column(species, w.len())?.iter() {
                if *mu != 0 {
                    value += ExactScalar::from_int(*mu) * subword_product(m, w, pi)?;
                }
            }
        }
        table.insert(w.clone(), value);
    }
    Ok(CumulantFamily { species, table })
}

/// Same result as [`moments_to_cumulants`], solving the moment formula for the
/// top cumulant one length at a time.
pub fn moments_to_cumulants_recursive(species: Species, m: &MomentFunctional) -> Result<CumulantFamily> {
    species.check_moments(m)?;
    let mut table = m.empty_like();
    for (w, moment) in m.iter() {
        let mut value = ExactScalar::zero();
        if is_free_cumulant_slot(species, w) {
            let top = SetPartition::full(w.len());
            value = moment.clone();
            for (pi, _) in lattice_column(species, w.len())?.iter() {
                if *pi != top {
                    value -= &subword_product(&table, w, pi)?;
                }
            }
        }
        table.insert(w.clone(), value);
    }
    Ok(CumulantFamily { species, table })
}

/// `E[w] = Σ_π Π_{V∈π} c(w|_V)` over the species lattice, restricted to
/// `π ≤ ker w` for the half-liberated species.
pub fn cumulants_to_moments(c: &CumulantFamily) -> Result<MomentFunctional> {
    let mut table = c.empty_like();
    for (w, _) in c.iter() {
        let kernel = w.kernel()?;
        let mut value = ExactScalar::zero();
        for (pi, _) in lattice_column(c.species, w.len())?.iter() {
            if c.species == Species::Half && !pi.refines(&kernel) {
                continue;
            }
            value += &subword_product(c, w, pi)?;
        }
        table.insert(w.clone(), value);
    }
    Ok(MomentFunctional(table))
}

fn parse_sequence(text: &str) -> Result<Vec<ExactScalar>> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput("value list"));
    }
    text.split(',').map(|t| t.trim().parse()).collect()
}

/// Comma-separated rationals `m_1,m_2,…`.
impl FromStr for MomentFunctional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(MomentFunctional::from_sequence(parse_sequence(s)?))
    }
}

/// Parses a comma-separated cumulant sequence for the given species.
pub fn parse_cumulant_sequence(species: Species, text: &str) -> Result<CumulantFamily> {
    Ok(CumulantFamily::from_sequence(species, parse_sequence(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    fn m2c(species: Species, moments: &[i64]) -> Vec<ExactScalar> {
        let m = MomentFunctional::from_sequence(seq(moments));
        let c = moments_to_cumulants(species, &m).unwrap();
        assert_eq!(c, moments_to_cumulants_recursive(species, &m).unwrap());
        c.sequence().unwrap()
    }

    #[test]
    fn single_variable_examples() {
        assert_eq!(m2c(Species::Classical, &[0, 1, 0, 3]), seq(&[0, 1, 0, 0]));
        assert_eq!(m2c(Species::Free, &[0, 1, 0, 2]), seq(&[0, 1, 0, 0]));
        assert_eq!(m2c(Species::Half, &[0, 1, 0, 2]), seq(&[0, 1, 0, 0]));
    }

    #[test]
    fn pair_cumulants_count_pairings() {
        for (species, expected) in [(Species::Classical, 15), (Species::Free, 5), (Species::Half, 6)] {
            let c = CumulantFamily::from_sequence(species, seq(&[0, 1, 0, 0, 0, 0]));
            let m = cumulants_to_moments(&c).unwrap().sequence().unwrap();
            assert_eq!(m[5], ExactScalar::from_int(expected), "{species}");
        }
    }

    /// Classical cumulants of a point mass at 1 vanish beyond order 1.
    #[test]
    fn point_mass() {
        assert_eq!(m2c(Species::Classical, &[1, 1, 1, 1, 1]), seq(&[1, 0, 0, 0, 0]));
        assert_eq!(m2c(Species::Free, &[1, 1, 1, 1, 1]), seq(&[1, 0, 0, 0, 0]));
    }

    /// Free Poisson with rate 1 has all free cumulants 1 and moments Catalan.
    #[test]
    fn free_poisson() {
        assert_eq!(m2c(Species::Free, &[1, 2, 5, 14, 42]), seq(&[1, 1, 1, 1, 1]));
        // classical Poisson: Bell numbers
        assert_eq!(m2c(Species::Classical, &[1, 2, 5, 15, 52]), seq(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn half_rejects_odd_moments() {
        let m = MomentFunctional::from_sequence(seq(&[1, 1]));
        assert!(matches!(moments_to_cumulants(Species::Half, &m), Err(Error::Precondition(_))));
        assert!(moments_to_cumulants(Species::Classical, &m).is_ok());
    }

    #[test]
    fn classical_multivariate_second_order_is_covariance() {
        let m = MomentFunctional::from_fn(2, 2, |w| match w.letters() {
            [1] => ExactScalar::from_int(2),
            [2] => ExactScalar::from_int(3),
            [1, 2] | [2, 1] => ExactScalar::from_int(7),
            [a, _] => ExactScalar::from_int(10 * *a as i64),
            _ => unreachable!(),
        });
        let c = moments_to_cumulants(Species::Classical, &m).unwrap();
        assert_eq!(c.get(&"1,2".parse().unwrap()).unwrap(), ExactScalar::from_int(1));
        assert_eq!(c.get(&"2,2".parse().unwrap()).unwrap(), ExactScalar::from_int(11));
    }

    #[test]
    fn half_mixed_words() {
        // two independent symmetrised Rayleigh variables
        let c = CumulantFamily::from_fn(Species::Half, 4, 2, |w| {
            if w.len() == 2 && w.is_constant() { ExactScalar::one() } else { ExactScalar::zero() }
        });
        let m = cumulants_to_moments(&c).unwrap();
        let e = |s: &str| m.get(&s.parse().unwrap()).unwrap();
        assert_eq!(e("1,1,2,2"), ExactScalar::one());
        assert_eq!(e("1,2,2,1"), ExactScalar::one());
        assert_eq!(e("1,2,1,2"), ExactScalar::zero());
        assert_eq!(e("1,1,1,1"), ExactScalar::from_int(2));
        let back = moments_to_cumulants(Species::Half, &m).unwrap();
        assert_eq!(back, c);
        assert_eq!(back, moments_to_cumulants_recursive(Species::Half, &m).unwrap());
    }

    #[test]
    fn lookups() {
        let m = MomentFunctional::from_sequence(seq(&[0, 1]));
        assert_eq!(m.get(&Word::empty()).unwrap(), ExactScalar::one());
        assert_eq!(m.get(&"3,7".parse().unwrap()).unwrap(), ExactScalar::one());
        assert_eq!(m.get(&"1,1,1".parse().unwrap()), Err(Error::InsufficientOrder { needed: 3, available: 2 }));
    }

    #[test]
    fn moment_files() {
        let m = MomentFunctional::from_json_str(r#"{"": "1", "1": "0", "1,1": "1/2", "2": "3"}"#).unwrap();
        assert_eq!(m.order_max(), 2);
        assert_eq!(m.get(&"1,1".parse().unwrap()).unwrap(), ExactScalar::ratio(1, 2));
        assert!(m.get(&"1,2".parse().unwrap()).is_err());
        for bad in [r#"{"": "2"}"#, r#"{"1": 0}"#, r#"{"0": "1"}"#, r#"{"1": "2/4"}"#, "[]", "{"] {
            assert!(MomentFunctional::from_json_str(bad).is_err(), "{bad}");
        }
        let json = m.to_json();
        assert_eq!(json["1,1"], "1/2");
        let again = MomentFunctional::from_json_str(&json.to_string()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn sequence_parsing() {
        let m: MomentFunctional = "0,1,0,3".parse().unwrap();
        assert_eq!(m.sequence().unwrap(), seq(&[0, 1, 0, 3]));
        assert!("".parse::<MomentFunctional>().is_err());
        assert!("1,x".parse::<MomentFunctional>().is_err());
        assert_eq!(m.to_json()["1,1,1,1"], "3");
    }
}
