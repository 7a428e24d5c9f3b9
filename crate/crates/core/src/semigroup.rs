//! Numerical semigroups encoded by their gap bitstream.
//!
//! A semigroup with conductor `c` is stored as `c` bits where bit `i` is set
//! iff the integer `i + 1` is a gap. Bit `c - 1` covers the conductor itself
//! and is therefore always clear; for `c >= 2` bit `c - 2` (the Frobenius
//! number) is always set.
//!
//! The whole monoid `N0` has no gaps. It is encoded as the one-bit stream `0`
//! with conductor 1 and a single left element, which is what lets the child
//! update rules start from it like from any other node.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Largest genus any constructor or exploration accepts. Conductors are at
/// most twice the genus, which keeps every bitstream inside [`Bits`].
pub const MAX_GENUS: u32 = 80;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GapBitstream {
    bits: Bits,
    conductor: u32,
}

/// Numeric invariants of a semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemigroupStats {
    pub genus: u32,
    pub conductor: u32,
    pub multiplicity: u32,
    pub frobenius: u32,
    /// Number of elements strictly below the conductor.
    pub left_count: u32,
    /// `ceil(c / m)`.
    pub q: u32,
    /// `q * m - c`.
    pub rho: u32,
}

impl SemigroupStats {
    pub(crate) fn new(genus: u32, conductor: u32, multiplicity: u32) -> Self {
        let q = conductor.div_ceil(multiplicity);
        SemigroupStats {
            genus,
            conductor,
            multiplicity,
            frobenius: conductor - 1,
            left_count: conductor - genus,
            q,
            rho: q * multiplicity - conductor,
        }
    }
}

/// Ascending list of semigroup elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(Vec<u32>);

impl ElementSet {
    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for ElementSet {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for ElementSet {
    fn from(mut v: Vec<u32>) -> Self {
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }
}

/// Minimal generators split at the conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Primitives {
    /// Primitive elements below the conductor.
    pub left: ElementSet,
    /// Number of primitive elements at or above the conductor.
    pub right_count: u32,
}

impl Primitives {
    pub fn total(&self) -> u32 {
        self.left.len() as u32 + self.right_count
    }
}

impl GapBitstream {
    /// `N0`, encoded with the one-bit root convention.
    pub fn root() -> Self {
        GapBitstream {
            bits: Bits::ZERO,
            conductor: 1,
        }
    }

    /// Builds the semigroup whose gap set is exactly `gaps`.
    pub fn from_gaps<I: IntoIterator<Item = u32>>(gaps: I) -> Result<Self> {
        let gaps: BTreeSet<u32> = gaps.into_iter().collect();
        if gaps.contains(&0) {
            return Err(Error::NotASemigroup("0 is never a gap".into()));
        }
        let genus = gaps.len() as u32;
        if genus > MAX_GENUS {
            return Err(Error::GenusLimit {
                genus,
                max: MAX_GENUS,
            });
        }
        let Some(&frobenius) = gaps.last() else {
            return Ok(Self::root());
        };
        // c <= 2g for every numerical semigroup.
        if frobenius >= 2 * genus {
            return Err(Error::NotASemigroup(format!(
                "largest gap {frobenius} is too large for {genus} gaps"
            )));
        }
        let mut bits = Bits::ZERO;
        for &g in &gaps {
            bits.set(g as usize - 1);
        }
        let candidate = GapBitstream {
            bits,
            conductor: frobenius + 1,
        };
        candidate.check_closed()?;
        Ok(candidate)
    }

    /// Builds from a raw gap bitstream; trailing zero bits are ignored.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let gaps = bits
            .into_iter()
            .enumerate()
            .filter(|(_, b)| *b)
            .map(|(i, _)| i as u32 + 1);
        Self::from_gaps(gaps)
    }

    /// Smallest numerical semigroup containing every generator and, when
    /// `cap` is given, every integer `>= cap`.
    pub fn from_generators(gens: &[u32], cap: Option<u32>) -> Result<Self> {
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() && cap.is_none() {
            return Err(Error::NotASemigroup("no positive generators".into()));
        }
        if cap.is_none() {
            let d = gens.iter().fold(0, |a, &b| gcd(a, b));
            if d != 1 {
                return Err(Error::NotCofinite(gens, d));
            }
        }
        let cap = cap.unwrap_or(u32::MAX);
        let run_needed = gens.iter().copied().min().unwrap_or(u32::MAX);
        let mut member = vec![true];
        let mut gaps = Vec::new();
        let mut run = 1u32;
        let mut n = 1u32;
        while n < cap && run < run_needed {
            let is_member = gens.iter().any(|&g| g <= n && member[(n - g) as usize]);
            member.push(is_member);
            if is_member {
                run += 1;
            } else {
                run = 0;
                gaps.push(n);
                if gaps.len() as u32 > MAX_GENUS {
                    return Err(Error::GenusLimit {
                        genus: gaps.len() as u32,
                        max: MAX_GENUS,
                    });
                }
            }
            n += 1;
        }
        Self::from_gaps(gaps)
    }

    fn check_closed(&self) -> Result<()> {
        let c = self.conductor as usize;
        let elements = self.element_bits();
        let nonzero = {
            let mut e = elements;
            e.clear(0);
            e
        };
        let below_c = Bits::low_mask(c);
        for a in nonzero.ones().take_while(|&a| 2 * a < c) {
            let bad = nonzero.shl(a) & below_c & !elements;
            if let Some(x) = bad.ones().next() {
                return Err(Error::NotASemigroup(format!(
                    "{a} + {} = {x} is listed as a gap",
                    x - a
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn from_raw(bits: Bits, conductor: u32) -> Self {
        GapBitstream { bits, conductor }
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    /// Length of the bitstream. Equals the conductor, and 1 for `N0`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Bit `i` of the stream: whether `i + 1` is a gap.
    pub fn bit(&self, i: u32) -> bool {
        self.bits.get(i as usize)
    }

    pub fn is_root(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn contains(&self, n: u32) -> bool {
        n == 0 || n >= self.conductor || !self.bits.get(n as usize - 1)
    }

    /// Gaps in ascending order.
    pub fn gaps(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32 + 1)
    }

    pub fn genus(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn multiplicity(&self) -> u32 {
        // Bit c - 1 is clear, so a zero is always found inside the stream.
        self.bits.first_zero().expect("conductor bit is clear") as u32 + 1
    }

    pub fn stats(&self) -> SemigroupStats {
        SemigroupStats::new(self.genus(), self.conductor, self.multiplicity())
    }

    /// Indicator of the elements below the conductor: bit `n` set iff
    /// `n < c` and `n` belongs to the semigroup.
    pub fn element_bits(&self) -> Bits {
        let c = self.conductor as usize;
        let mut e = (!self.bits).shl(1) & Bits::low_mask(c);
        e.set(0);
        e
    }

    pub fn left_elements(&self) -> ElementSet {
        ElementSet(self.element_bits().ones().map(|i| i as u32).collect())
    }

    /// Primitive elements, found by testing each candidate against every
    /// decomposition into two smaller elements.
    pub fn primitives(&self) -> Primitives {
        let c = self.conductor;
        let m = self.multiplicity();
        let left = self.left_elements();
        let is_sum = |x: u32| {
            left.iter()
                .skip(1)
                .take_while(|&&a| 2 * a <= x)
                .any(|&a| self.contains(x - a))
        };
        let left_primitives: Vec<u32> = left
            .iter()
            .skip(1)
            .copied()
            .filter(|&x| !is_sum(x))
            .collect();
        // Every x >= c + m is m + (x - m) with x - m >= c.
        let right_count = (c..c + m).filter(|&x| !is_sum(x)).count() as u32;
        Primitives {
            left: ElementSet(left_primitives),
            right_count,
        }
    }

    /// The parent in the semigroup tree: the Frobenius number added back.
    /// `None` for `N0`.
    pub fn parent(&self) -> Option<GapBitstream> {
        if self.is_root() {
            return None;
        }
        let mut bits = self.bits;
        bits.clear(self.conductor as usize - 2);
        let conductor = bits.last_one().map_or(1, |i| i as u32 + 2);
        Some(GapBitstream { bits, conductor })
    }

    /// Elements of the semigroup in `[0, bound)`.
    pub fn elements_below(&self, bound: u32) -> ElementSet {
        ElementSet((0..bound).filter(|&n| self.contains(n)).collect())
    }
}

impl PartialOrd for GapBitstream {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of the ascending gap lists.
impl Ord for GapBitstream {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gaps().cmp(other.gaps())
    }
}

impl fmt::Debug for GapBitstream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GapBitstream({self})")
    }
}

/// The bitstream itself, bit 0 first.
impl fmt::Display for GapBitstream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.conductor {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
