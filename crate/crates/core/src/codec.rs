//! The coding between points of Cantor space and sequences of naturals,
//! relative to a partitioning prefix.
//!
//! A word is read big-endian as a natural; a natural is written into a fixed
//! number of bits by keeping its low bits (so encoding is total but only
//! faithful below `2^len`). A point of length `d(N)` corresponds to the
//! sequence of its interval slices read as naturals, and a sequence of
//! naturals corresponds to the point obtained by writing each entry into its
//! interval.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::partition::PartitioningPrefix;
use crate::slalom::{BinarySlalom, Slalom};
use crate::word::Word;

/// Reads a word as a big-endian natural. The empty word is 0. Fails when the
/// word has more than 64 significant bits (bits from the first 1 on).
pub fn nat_of_word(w: &Word) -> Result<u64> {
    let bits = w.bits();
    let first_one = bits.iter().position(|&b| b == 1);
    let significant = match first_one {
        None => 0,
        Some(i) => bits.len() - i,
    };
    if significant > 64 {
        return Err(Error::ValueOverflow { bits: significant });
    }
    let mut value: u64 = 0;
    for &b in bits {
        value = (value << 1) | b as u64;
    }
    Ok(value)
}

/// Writes a natural into `len` bits, big-endian, keeping the low `len` bits.
/// Total: values at or above `2^len` are truncated.
pub fn word_of_nat(value: u64, len: u64) -> Word {
    let mut bits = Vec::with_capacity(len as usize);
    for i in (0..len).rev() {
        if i >= 64 {
            bits.push(0);
        } else {
            bits.push(((value >> i) & 1) as u8);
        }
    }
    Word::from_raw(bits)
}

/// The sequence of interval slices of `x` read as naturals.
pub fn encode_point(x: &Word, d: &PartitioningPrefix) -> Result<Vec<u64>> {
    if x.len() as u64 != d.horizon() {
        return Err(Error::Misaligned {
            expected: d.horizon(),
            found: x.len() as u64,
        });
    }
    (0..d.num_intervals())
        .map(|n| nat_of_word(&x.restrict(d.interval(n))))
        .collect()
}

/// The point whose interval slices write out the entries of `f`.
pub fn decode_seq(f: &[u64], d: &PartitioningPrefix) -> Result<Word> {
    if f.len() != d.num_intervals() {
        return Err(Error::SeqLength {
            expected: d.num_intervals(),
            found: f.len(),
        });
    }
    let mut bits = Vec::with_capacity(d.horizon() as usize);
    for (n, &value) in f.iter().enumerate() {
        bits.extend_from_slice(word_of_nat(value, d.interval_len(n)).bits());
    }
    Ok(Word::from_raw(bits))
}

/// Transfers a slalom over the naturals into a binary slalom along `d`, cell
/// by cell, writing each value into its interval. Values too large for their
/// interval are truncated, so distinct values may collapse to one word. The
/// slalom must supply a cell for every interval.
pub fn slalom_to_binary(s: &Slalom, d: &PartitioningPrefix) -> Result<BinarySlalom> {
    if s.cells.len() < d.num_intervals() {
        return Err(Error::SeqLength {
            expected: d.num_intervals(),
            found: s.cells.len(),
        });
    }
    let cells: Vec<BTreeSet<Word>> = (0..d.num_intervals())
        .map(|n| {
            s.cells[n]
                .iter()
                .map(|&v| word_of_nat(v, d.interval_len(n)))
                .collect()
        })
        .collect();
    BinarySlalom::new(d.clone(), cells, s.width.clone())
}

/// Reads a binary slalom back as a slalom over the naturals, cell by cell.
pub fn binary_to_slalom(b: &BinarySlalom) -> Result<Slalom> {
    let cells: Result<Vec<BTreeSet<u64>>> = b
        .cells()
        .iter()
        .map(|cell| cell.iter().map(nat_of_word).collect())
        .collect();
    Ok(Slalom {
        cells: cells?,
        width: b.width().clone(),
    })
}
