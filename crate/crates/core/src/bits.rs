//! Fixed-width packed bit vectors.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64`. The width is fixed at
//! [`CAPACITY`] bits so that nodes of the semigroup tree are plain `Copy`
//! values and descending the tree never allocates.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not};

const WORDS: usize = 3;
const WORD_BITS: usize = 64;

/// Number of addressable bits.
pub const CAPACITY: usize = WORDS * WORD_BITS;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub const ZERO: Bits = Bits([0; WORDS]);

    /// Bits `[0, n)` set. `n` is clamped to [`CAPACITY`].
    pub fn low_mask(n: usize) -> Bits {
        let mut out = [0u64; WORDS];
        let n = n.min(CAPACITY);
        for (w, word) in out.iter_mut().enumerate() {
            let lo = w * WORD_BITS;
            if n >= lo + WORD_BITS {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        Bits(out)
    }

    /// Bits `[lo, hi)` set.
    pub fn range_mask(lo: usize, hi: usize) -> Bits {
        if hi <= lo {
            return Bits::ZERO;
        }
        Bits::low_mask(hi) & !Bits::low_mask(lo)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < CAPACITY && (self.0[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// Panics if `i` is out of range.
    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.0[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn count_ones(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Bit `i` of the result is bit `i + n` of `self`.
    #[inline]
    pub fn shr(&self, n: usize) -> Bits {
        if n >= CAPACITY {
            return Bits::ZERO;
        }
        let (ws, bs) = (n / WORD_BITS, n % WORD_BITS);
        let mut out = [0u64; WORDS];
        for (i, word) in out.iter_mut().enumerate().take(WORDS - ws) {
            let mut v = self.0[i + ws] >> bs;
            if bs > 0 && i + ws + 1 < WORDS {
                v |= self.0[i + ws + 1] << (WORD_BITS - bs);
            }
            *word = v;
        }
        Bits(out)
    }

    /// Bit `i + n` of the result is bit `i` of `self`; bits pushed past
    /// [`CAPACITY`] are dropped.
    #[inline]
    pub fn shl(&self, n: usize) -> Bits {
        if n >= CAPACITY {
            return Bits::ZERO;
        }
        let (ws, bs) = (n / WORD_BITS, n % WORD_BITS);
        let mut out = [0u64; WORDS];
        for (i, slot) in out.iter_mut().enumerate().skip(ws) {
            let mut v = self.0[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= self.0[i - ws - 1] >> (WORD_BITS - bs);
            }
            *slot = v;
        }
        Bits(out)
    }

    /// Index of the lowest clear bit.
    pub fn first_zero(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i * WORD_BITS + (!w).trailing_zeros() as usize)
    }

    /// Index of the highest set bit.
    pub fn last_one(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    /// Set bit positions in ascending order.
    pub fn ones(&self) -> Ones {
        Ones {
            words: self.0,
            word: 0,
        }
    }
}

pub struct Ones {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                self.words[self.word] = w & (w - 1);
                return Some(self.word * WORD_BITS + w.trailing_zeros() as usize);
            }
            self.word += 1;
        }
        None
    }
}

impl BitAnd for Bits {
    type Output = Bits;
    #[inline]
    fn bitand(self, rhs: Bits) -> Bits {
        Bits([
            self.0[0] & rhs.0[0],
            self.0[1] & rhs.0[1],
            self.0[2] & rhs.0[2],
        ])
    }
}

impl BitOr for Bits {
    type Output = Bits;
    #[inline]
    fn bitor(self, rhs: Bits) -> Bits {
        Bits([
            self.0[0] | rhs.0[0],
            self.0[1] | rhs.0[1],
            self.0[2] | rhs.0[2],
        ])
    }
}

impl Not for Bits {
    type Output = Bits;
    #[inline]
    fn not(self) -> Bits {
        Bits([!self.0[0], !self.0[1], !self.0[2]])
    }
}

impl BitAndAssign for Bits {
    #[inline]
    fn bitand_assign(&mut self, rhs: Bits) {
        *self = *self & rhs;
    }
}

impl BitOrAssign for Bits {
    #[inline]
    fn bitor_assign(&mut self, rhs: Bits) {
        *self = *self | rhs;
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.last_one().map_or(0, |i| i + 1);
        let s: String = (0..len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "Bits({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_vec(v: &[bool]) -> Bits {
        let mut b = Bits::ZERO;
        for (i, &x) in v.iter().enumerate() {
            if x {
                b.set(i);
            }
        }
        b
    }

    fn to_vec(b: &Bits) -> Vec<bool> {
        (0..CAPACITY).map(|i| b.get(i)).collect()
    }

    #[test]
    fn masks() {
        assert_eq!(Bits::low_mask(0), Bits::ZERO);
        assert_eq!(Bits::low_mask(64).count_ones(), 64);
        assert_eq!(Bits::low_mask(500).count_ones(), CAPACITY as u32);
        let r = Bits::range_mask(60, 70);
        assert_eq!(r.ones().collect::<Vec<_>>(), (60..70).collect::<Vec<_>>());
        assert_eq!(Bits::range_mask(5, 5), Bits::ZERO);
    }

    #[test]
    fn first_zero_and_last_one() {
        assert_eq!(Bits::ZERO.first_zero(), Some(0));
        assert_eq!(Bits::low_mask(70).first_zero(), Some(70));
        assert_eq!(Bits::low_mask(CAPACITY).first_zero(), None);
        assert_eq!(Bits::ZERO.last_one(), None);
        assert_eq!(Bits::low_mask(130).last_one(), Some(129));
    }

    proptest! {
        #[test]
        fn shifts_match_naive(v in prop::collection::vec(any::<bool>(), CAPACITY), n in 0usize..200) {
            let b = from_vec(&v);
            let right: Vec<bool> = (0..CAPACITY).map(|i| i + n < CAPACITY && v[i + n]).collect();
            let left: Vec<bool> = (0..CAPACITY).map(|i| i >= n && v[i - n]).collect();
            prop_assert_eq!(to_vec(&b.shr(n)), right);
            prop_assert_eq!(to_vec(&b.shl(n)), left);
        }

        #[test]
        fn ones_and_count(v in prop::collection::vec(any::<bool>(), CAPACITY)) {
            let b = from_vec(&v);
            let expected: Vec<usize> = v.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect();
            prop_assert_eq!(b.count_ones() as usize, expected.len());
            prop_assert_eq!(b.ones().collect::<Vec<_>>(), expected);
        }
    }
}
