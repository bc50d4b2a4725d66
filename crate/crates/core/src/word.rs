//! Words: finite sequences of positive variable labels (multi-indices).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::SetPartition;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    /// Builds a word, rejecting the label 0.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::Parse(format!("letter at position {} is 0; labels start at 1", pos + 1)));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `letter` repeated `len` times.
    pub fn constant(letter: u32, len: usize) -> Self {
        assert!(letter > 0);
        Word(vec![letter; len])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// ker of the word: positions grouped by equal letters.
    pub fn kernel(&self) -> Result<SetPartition> {
        if self.0.is_empty() {
            return Err(Error::EmptyInput("kernel of the empty word"));
        }
        Ok(SetPartition::from_labels(&self.0))
    }

    /// The representative word of a kernel class: position `p` gets the
    /// (1-based) index of its block.
    pub fn from_partition(pi: &SetPartition) -> Word {
        Word(pi.labels().iter().map(|&l| l as u32 + 1).collect())
    }

    /// Subword on the given 1-based positions (in the given order).
    pub fn restrict(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p - 1]).collect())
    }

    /// Checks every letter lies in `1..=n`.
    pub fn check_range(&self, n: u32) -> Result<()> {
        match self.0.iter().find(|&&l| l > n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    /// All words of length `len` over `1..=n`, lexicographic.
    pub fn all(len: usize, n: u32) -> impl Iterator<Item = Word> {
        let total = (n as usize).checked_pow(len as u32).unwrap_or(0);
        (0..total).map(move |mut idx| {
            let mut letters = vec![1u32; len];
            for slot in letters.iter_mut().rev() {
                *slot = (idx % n as usize) as u32 + 1;
                idx /= n as usize;
            }
            Word(letters)
        })
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Comma-separated positive integers; the empty string is the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = s
            .split(',')
            .map(|tok| {
                let canonical = !tok.is_empty()
                    && tok.bytes().all(|b| b.is_ascii_digit())
                    && !tok.starts_with('0');
                if !canonical {
                    return Err(Error::Parse(format!("bad letter {tok:?} in word {s:?}")));
                }
                tok.parse::<u32>().map_err(|_| Error::Parse(format!("letter {tok:?} overflows")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
