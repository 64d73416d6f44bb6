// SPDX-License-Identifier: Apache-2.0

//! The `n x n` predecessor relation of the work-shared strategy.
//!
//! Entry `(v, u)` is set when `u` precedes `v` on a shortest path from the current
//! source. The byte layout stores one byte per entry and is written with plain
//! (relaxed) stores: concurrent writers only ever write `1`. The bit layout packs the
//! flattened index `v * n + u` into 64-bit words, so two writers touching different bits
//! of one word need an atomic `fetch_or`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredVariant {
    #[default]
    Byte,
    Bit,
}

impl PredVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            PredVariant::Byte => "byte",
            PredVariant::Bit => "bit",
        }
    }
}

impl fmt::Display for PredVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PredVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "byte" | "byte_matrix" => Ok(PredVariant::Byte),
            "bit" | "bit_packed" => Ok(PredVariant::Bit),
            other => Err(Error::InvalidParams(format!("unknown predecessor variant {other:?}"))),
        }
    }
}

pub struct PredecessorMatrix {
    n: usize,
    storage: Storage,
}

enum Storage {
    Byte(Vec<AtomicU8>),
    Bit(Vec<AtomicU64>),
}

impl PredecessorMatrix {
    pub fn new(variant: PredVariant, n: usize) -> Result<Self> {
        let entries =
            n.checked_mul(n).ok_or_else(|| Error::InvalidParams(format!("{n} x {n} predecessor matrix overflows")))?;
        let storage = match variant {
            PredVariant::Byte => Storage::Byte((0..entries).map(|_| AtomicU8::new(0)).collect()),
            PredVariant::Bit => Storage::Bit((0..entries.div_ceil(64)).map(|_| AtomicU64::new(0)).collect()),
        };
        Ok(Self { n, storage })
    }

    pub fn variant(&self) -> PredVariant {
        match self.storage {
            Storage::Byte(_) => PredVariant::Byte,
            Storage::Bit(_) => PredVariant::Bit,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bytes a matrix of this variant occupies for `n` vertices.
    pub fn bytes_for(variant: PredVariant, n: u64) -> u128 {
        let entries = n as u128 * n as u128;
        match variant {
            PredVariant::Byte => entries,
            PredVariant::Bit => entries.div_ceil(64) * 8,
        }
    }

    /// Bytes of the same relation stored as one 32-bit integer per entry.
    pub fn int32_bytes_for(n: u64) -> u128 {
        4 * n as u128 * n as u128
    }

    pub fn bytes(&self) -> usize {
        match &self.storage {
            Storage::Byte(cells) => cells.len(),
            Storage::Bit(words) => words.len() * 8,
        }
    }

    /// Marks `u` as a predecessor of `v`. Returns `true` when the write was an atomic
    /// read-modify-write.
    #[inline]
    pub fn set(&self, v: usize, u: usize) -> bool {
        let i = v * self.n + u;
        match &self.storage {
            Storage::Byte(cells) => {
                cells[i].store(1, Ordering::Relaxed);
                false
            }
            Storage::Bit(words) => {
                words[i / 64].fetch_or(1 << (i % 64), Ordering::Relaxed);
                true
            }
        }
    }

    #[inline]
    pub fn get(&self, v: usize, u: usize) -> bool {
        let i = v * self.n + u;
        match &self.storage {
            Storage::Byte(cells) => cells[i].load(Ordering::Relaxed) != 0,
            Storage::Bit(words) => words[i / 64].load(Ordering::Relaxed) & (1 << (i % 64)) != 0,
        }
    }

    /// Clears entry `(v, u)`; same atomicity profile as [`set`](Self::set).
    #[inline]
    pub fn clear(&self, v: usize, u: usize) -> bool {
        let i = v * self.n + u;
        match &self.storage {
            Storage::Byte(cells) => {
                cells[i].store(0, Ordering::Relaxed);
                false
            }
            Storage::Bit(words) => {
                words[i / 64].fetch_and(!(1 << (i % 64)), Ordering::Relaxed);
                true
            }
        }
    }

    pub fn count_set(&self) -> usize {
        match &self.storage {
            Storage::Byte(cells) => cells.iter().filter(|c| c.load(Ordering::Relaxed) != 0).count(),
            Storage::Bit(words) => words.iter().map(|w| w.load(Ordering::Relaxed).count_ones() as usize).sum(),
        }
    }
}

/// Free-function form of [`PredecessorMatrix::set`].
pub fn set_predecessor(pm: &PredecessorMatrix, v: usize, u: usize) {
    pm.set(v, u);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Barrier;
    use std::thread;

    #[test]
    fn set_then_query() {
        for variant in [PredVariant::Byte, PredVariant::Bit] {
            let pm = PredecessorMatrix::new(variant, 5).unwrap();
            set_predecessor(&pm, 3, 1);
            assert!(pm.get(3, 1));
            assert!(!pm.get(1, 3));
            assert_eq!(pm.count_set(), 1);
            pm.clear(3, 1);
            assert_eq!(pm.count_set(), 0);
        }
    }

    #[test]
    fn concurrent_setters_on_one_word_lose_nothing() {
        // n = 8 gives 64 entries, all in a single word
        let pm = PredecessorMatrix::new(PredVariant::Bit, 8).unwrap();
        assert_eq!(pm.bytes(), 8);
        let start = Barrier::new(64);
        thread::scope(|s| {
            for bit in 0..64 {
                let (pm, start) = (&pm, &start);
                s.spawn(move || {
                    start.wait();
                    pm.set(bit / 8, bit % 8);
                });
            }
        });
        assert_eq!(pm.count_set(), 64);
    }

    #[test]
    fn sizes() {
        assert_eq!(PredecessorMatrix::bytes_for(PredVariant::Byte, 20_000), 400_000_000);
        assert_eq!(PredecessorMatrix::bytes_for(PredVariant::Bit, 20_000), 50_000_000);
        assert_eq!(PredecessorMatrix::int32_bytes_for(20_000), 1_600_000_000);
        assert_eq!(PredecessorMatrix::bytes_for(PredVariant::Bit, 3), 8);
        assert_eq!(PredecessorMatrix::new(PredVariant::Byte, 10).unwrap().bytes(), 100);
        assert_eq!(PredecessorMatrix::new(PredVariant::Bit, 10).unwrap().bytes(), 16);
    }

    #[test]
    fn variant_names() {
        assert_eq!("bit".parse::<PredVariant>().unwrap(), PredVariant::Bit);
        assert_eq!("byte_matrix".parse::<PredVariant>().unwrap(), PredVariant::Byte);
        assert!("nibble".parse::<PredVariant>().is_err());
    }
}
