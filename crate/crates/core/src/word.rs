//! Finite binary words and their splitting points.
//!
//! A word is a finite sequence over {0,1}, written first position first:
//! `x.bit(0)` is the leftmost character of the display form. The splitting
//! point of two words is the first position where they disagree, and the
//! splitting set of a finite family collects the splitting points of all
//! pairs of distinct members.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::natset::NatSet;

/// A finite binary word; an element of the full binary tree.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    bits: Vec<u8>,
}

impl Word {
    /// Builds a word from bits, rejecting anything other than 0 and 1.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Result<Self> {
        let bits: Vec<u8> = bits.into_iter().collect();
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidBit);
        }
        Ok(Word { bits })
    }

    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Word { bits }
    }

    /// The all-zero word of the given length.
    pub fn zeros(len: usize) -> Self {
        Word { bits: vec![0; len] }
    }

    /// The word of length `len` whose 1-bits sit exactly on `support`.
    pub fn from_support(support: &NatSet, len: u64) -> Result<Self> {
        if let Some(element) = support.iter().find(|&e| e >= len) {
            return Err(Error::AboveHorizon {
                element,
                horizon: len,
            });
        }
        let mut bits = vec![0u8; len as usize];
        for e in support.iter() {
            bits[e as usize] = 1;
        }
        Ok(Word { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The bit at position `i`. Panics if `i` is out of range.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The restriction of the word to `range`. Panics if the range leaves
    /// the word.
    pub fn restrict(&self, range: std::ops::Range<u64>) -> Word {
        Word {
            bits: self.bits[range.start as usize..range.end as usize].to_vec(),
        }
    }

    /// The first `n` positions. Panics if `n` exceeds the length.
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            bits: self.bits[..n].to_vec(),
        }
    }

    /// Everything from position `n` on. Panics if `n` exceeds the length.
    pub fn suffix(&self, n: usize) -> Word {
        Word {
            bits: self.bits[n..].to_vec(),
        }
    }

    pub fn concat(&self, tail: &Word) -> Word {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&tail.bits);
        Word { bits }
    }

    /// Does `self` extend `prefix` position by position?
    pub fn extends(&self, prefix: &Word) -> bool {
        self.len() >= prefix.len() && self.bits[..prefix.len()] == prefix.bits[..]
    }

    /// A copy with position `i` set to `bit`. Panics if out of range.
    pub fn with_bit(&self, i: usize, bit: u8) -> Word {
        debug_assert!(bit <= 1);
        let mut bits = self.bits.clone();
        bits[i] = bit;
        Word { bits }
    }

    /// A copy with position `i` flipped. Panics if out of range.
    pub fn toggled(&self, i: usize) -> Word {
        self.with_bit(i, 1 - self.bits[i])
    }

    /// The positions holding a 1.
    pub fn support(&self) -> NatSet {
        NatSet::from_elements(
            self.bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| i as u64),
        )
    }

    /// Bitwise containment of equal-length words: every 1 of `self` is a 1
    /// of `other`. Words of different lengths are never comparable.
    pub fn is_bitwise_subset(&self, other: &Word) -> bool {
        self.len() == other.len()
            && self
                .bits
                .iter()
                .zip(other.bits.iter())
                .all(|(&x, &a)| x <= a)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::InvalidBit),
            }
        }
        Ok(Word { bits })
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
        s.parse().map_err(de::Error::custom)
    }
}

/// The first position where `x` and `y` disagree.
///
/// Errors when the words agree on their whole common domain, i.e. when they
/// are equal or one is a prefix of the other.
pub fn split_point(x: &Word, y: &Word) -> Result<u64> {
    let common = x.len().min(y.len());
    (0..common)
        .find(|&i| x.bit(i) != y.bit(i))
        .map(|i| i as u64)
        .ok_or(Error::NoSplit {
            left: x.len(),
            right: y.len(),
        })
}

/// The set of splitting points of all pairs of distinct words in the family.
///
/// All words must share one length. For equal-length words in sorted order
/// every pairwise first disagreement is attained by some adjacent pair, so
/// scanning adjacent pairs already produces the whole set.
pub fn split_set<'a, I>(words: I) -> Result<NatSet>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut family: Vec<&Word> = words.into_iter().collect();
    if let Some(first) = family.first() {
        let expected = first.len();
        if let Some(w) = family.iter().find(|w| w.len() != expected) {
            return Err(Error::MixedLengths {
                expected,
                found: w.len(),
            });
        }
    }
    family.sort();
    family.dedup();
    let mut points = BTreeSet::new();
    for pair in family.windows(2) {
        points.insert(split_point(pair[0], pair[1])?);
    }
    Ok(NatSet::from_elements(points))
}
