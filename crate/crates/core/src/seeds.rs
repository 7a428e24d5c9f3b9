//! The seeds bitstream and the incremental computation of children.
//!
//! For a semigroup with conductor `c` and left elements
//! `λ_0 < λ_1 < ... < λ_{L-1} < λ_L = c`, the seeds bitstream has `c` bits
//! split into `L` rows; row `i` covers positions `[λ_i, λ_{i+1})` and the bit
//! at column `k` of row `i` is set iff `c + k` is an order-`i` seed. Row 0
//! therefore marks the right primitive elements, i.e. the children.
//!
//! Taking away the right primitive `c + k` moves every row `k + 1` columns
//! to the left inside one global shift of the bitstream. Columns whose
//! element drops to or below the removed element are masked off, except the
//! one carrying the removed element's own seed bit, which lands on the last
//! column of the row above (the diagonal propagation of old-order new seeds).
//! The tail of the new table, from the last old row on, always has the same
//! shape: the last two positions (and the one before them when `k >= 1`)
//! are seeds and everything else in it is empty.

use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::semigroup::{GapBitstream, SemigroupStats, MAX_GENUS};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedsTable {
    bits: Bits,
    /// Left elements; bit `n` set iff `n < c` is an element.
    left: Bits,
    conductor: u32,
}

impl SeedsTable {
    /// Assembles a table from explicit rows.
    ///
    /// # Panics
    ///
    /// If the row count or any row width disagrees with the left elements
    /// of `gaps`.
    pub fn from_rows(gaps: &GapBitstream, rows: &[Vec<bool>]) -> SeedsTable {
        let left = gaps.element_bits();
        let bounds = row_bounds(&left, gaps.conductor());
        assert_eq!(rows.len() + 1, bounds.len(), "row count mismatch");
        let mut bits = Bits::ZERO;
        for (i, row) in rows.iter().enumerate() {
            let (lo, hi) = (bounds[i], bounds[i + 1]);
            assert_eq!(row.len() as u32, hi - lo, "width mismatch in row {i}");
            for (k, &b) in row.iter().enumerate() {
                if b {
                    bits.set((lo as usize) + k);
                }
            }
        }
        SeedsTable {
            bits,
            left,
            conductor: gaps.conductor(),
        }
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn row_count(&self) -> u32 {
        self.left.count_ones()
    }

    /// `λ_0, ..., λ_{L-1}, c`.
    pub fn row_bounds(&self) -> Vec<u32> {
        row_bounds(&self.left, self.conductor)
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.row_bounds()
            .windows(2)
            .map(|w| (w[0]..w[1]).map(|p| self.bits.get(p as usize)).collect())
            .collect()
    }

    /// Rows as strings of `1` (seed) and `0`.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    /// Whether `c + offset` is an order-`order` seed. Positions outside the
    /// row are never seeds.
    pub fn is_seed(&self, order: u32, offset: u32) -> bool {
        let bounds = self.row_bounds();
        match (bounds.get(order as usize), bounds.get(order as usize + 1)) {
            (Some(&lo), Some(&hi)) if lo + offset < hi => self.bits.get((lo + offset) as usize),
            _ => false,
        }
    }

    /// One line per row, `#` for a seed and `.` otherwise.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            out.extend(row.iter().map(|&b| if b { '#' } else { '.' }));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for SeedsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_strings()).finish()
    }
}

fn row_bounds(left: &Bits, conductor: u32) -> Vec<u32> {
    left.ones().map(|i| i as u32).chain([conductor]).collect()
}

/// Seeds table of `gaps` computed directly from the seed definition: `c + k`
/// is an order-`i` seed iff `c + k + λ_i` has no decomposition `x + y` with
/// `λ_i < x <= y < c + k` and both summands in the semigroup.
pub fn init_seeds_table(gaps: &GapBitstream) -> SeedsTable {
    let c = gaps.conductor();
    let left = gaps.element_bits();
    let bounds = row_bounds(&left, c);
    let mut bits = Bits::ZERO;
    for w in bounds.windows(2) {
        let (lambda_i, next) = (w[0], w[1]);
        for k in 0..next - lambda_i {
            let sum = c + k + lambda_i;
            let decomposable =
                (lambda_i + 1..=sum / 2).any(|x| gaps.contains(x) && gaps.contains(sum - x));
            if !decomposable {
                bits.set((lambda_i + k) as usize);
            }
        }
    }
    SeedsTable {
        bits,
        left,
        conductor: c,
    }
}

/// A node of the semigroup tree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemigroupNode {
    gaps: GapBitstream,
    seeds: SeedsTable,
    stats: SemigroupStats,
    left_primitives: u32,
}

/// The root `N0`: gap bitstream `0`, seeds bitstream `1`.
pub fn root_node() -> SemigroupNode {
    SemigroupNode::root()
}

impl SemigroupNode {
    pub fn root() -> Self {
        let mut one = Bits::ZERO;
        one.set(0);
        SemigroupNode {
            gaps: GapBitstream::root(),
            seeds: SeedsTable {
                bits: one,
                left: one,
                conductor: 1,
            },
            stats: SemigroupStats::new(0, 1, 1),
            left_primitives: 0,
        }
    }

    /// Starts a node at an arbitrary semigroup, building its table from the
    /// definition.
    pub fn from_gaps(gaps: GapBitstream) -> Self {
        SemigroupNode {
            gaps,
            seeds: init_seeds_table(&gaps),
            stats: gaps.stats(),
            left_primitives: gaps.primitives().left.len() as u32,
        }
    }

    pub fn gaps(&self) -> &GapBitstream {
        &self.gaps
    }

    pub fn seeds(&self) -> &SeedsTable {
        &self.seeds
    }

    pub fn stats(&self) -> &SemigroupStats {
        &self.stats
    }

    pub fn genus(&self) -> u32 {
        self.stats.genus
    }

    /// Number of primitive elements below the conductor.
    pub fn left_primitive_count(&self) -> u32 {
        self.left_primitives
    }

    fn row0(&self) -> Bits {
        self.seeds.bits & Bits::low_mask(self.stats.multiplicity as usize)
    }

    pub fn right_primitive_count(&self) -> u32 {
        self.row0().count_ones()
    }

    /// Ascending offsets `k` such that `c + k` is a right primitive element.
    pub fn right_primitive_offsets(&self) -> Vec<u32> {
        self.row0().ones().map(|k| k as u32).collect()
    }

    /// The child obtained by taking away the right primitive `c + offset`.
    pub fn child(&self, offset: u32) -> Result<SemigroupNode> {
        if offset >= self.stats.multiplicity || !self.seeds.bits.get(offset as usize) {
            return Err(Error::NotAPrimitive(offset));
        }
        self.check_depth()?;
        let mut window = Bits::ZERO;
        for d in 2..=offset as usize + 1 {
            window |= self.seeds.left.shr(d);
        }
        Ok(self.child_with_window(offset as usize, window))
    }

    /// All children in ascending offset order.
    pub fn children(&self) -> Result<Vec<SemigroupNode>> {
        if self.right_primitive_count() > 0 {
            self.check_depth()?;
        }
        let mut out = Vec::new();
        self.for_each_child(|child| out.push(child));
        Ok(out)
    }

    fn check_depth(&self) -> Result<()> {
        if self.stats.genus >= MAX_GENUS {
            return Err(Error::GenusLimit {
                genus: self.stats.genus + 1,
                max: MAX_GENUS,
            });
        }
        Ok(())
    }

    /// Calls `f` on every child in ascending offset order. The caller keeps
    /// the genus below [`MAX_GENUS`].
    #[inline]
    pub(crate) fn for_each_child(&self, mut f: impl FnMut(SemigroupNode)) {
        let mut window = Bits::ZERO;
        let mut reach = 1;
        for k in self.row0().ones() {
            while reach < k + 1 {
                reach += 1;
                window |= self.seeds.left.shr(reach);
            }
            f(self.child_with_window(k, window));
        }
    }

    /// `window` must have bit `p` set iff some left element lies in
    /// `[p + 2, p + k + 1]`: exactly the positions whose shifted-in bit
    /// belongs to an element at or below the removed one.
    #[inline]
    fn child_with_window(&self, k: usize, window: Bits) -> SemigroupNode {
        let c = self.stats.conductor as usize;
        let mut gap_bits = *self.gaps.bits();
        gap_bits.set(c + k - 1);

        let left = self.seeds.left | Bits::range_mask(c, c + k);

        let mut seeds = self.seeds.bits.shr(k + 1) & !window;
        if k == 0 {
            seeds.set(c - 1);
        } else {
            seeds.set(c + k - 2);
            seeds.set(c + k - 1);
        }
        seeds.set(c + k);

        let multiplicity = if self.stats.left_count >= 2 {
            self.stats.multiplicity
        } else if k == 0 {
            c as u32 + 1
        } else {
            c as u32
        };
        let new_left_primitives = (self.row0() & Bits::low_mask(k)).count_ones();
        let conductor = (c + k + 1) as u32;
        SemigroupNode {
            gaps: GapBitstream::from_raw(gap_bits, conductor),
            seeds: SeedsTable {
                bits: seeds,
                left,
                conductor,
            },
            stats: SemigroupStats::new(self.stats.genus + 1, conductor, multiplicity),
            left_primitives: self.left_primitives + new_left_primitives,
        }
    }
}

impl fmt::Debug for SemigroupNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemigroupNode")
            .field("gaps", &self.gaps)
            .field("seeds", &self.seeds)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample_semigroup() -> GapBitstream {
        let elements = [0, 8, 16, 18, 19, 24, 26, 27];
        GapBitstream::from_gaps((1..30).filter(|n| !elements.contains(n))).unwrap()
    }

    #[test]
    fn root_node_layout() {
        let root = root_node();
        assert_eq!(root.gaps().to_string(), "0");
        assert_eq!(root.seeds().row_strings(), vec!["1"]);
        assert_eq!(root.genus(), 0);
        assert_eq!(root.right_primitive_offsets(), vec![0]);
    }

    #[test]
    fn init_table_examples() {
        let t = init_seeds_table(&sample_semigroup());
        assert_eq!(
            t.row_strings(),
            vec!["11010000", "01010000", "01", "0", "10000", "01", "1", "111"]
        );
        let t = init_seeds_table(&GapBitstream::from_generators(&[2, 3], None).unwrap());
        assert_eq!(t.row_strings(), vec!["11"]);
        assert_eq!(
            init_seeds_table(&GapBitstream::root()).row_strings(),
            vec!["1"]
        );
        assert_eq!(
            init_seeds_table(&GapBitstream::root()),
            *root_node().seeds()
        );
    }

    #[test]
    fn right_primitive_offsets_examples() {
        let node = SemigroupNode::from_gaps(sample_semigroup());
        assert_eq!(node.right_primitive_offsets(), vec![0, 1, 3]);
        let node = SemigroupNode::from_gaps(
            GapBitstream::from_generators(&[19, 29, 31], Some(76)).unwrap(),
        );
        assert_eq!(node.right_primitive_offsets().len(), 9);
    }

    #[test]
    fn children_of_the_worked_example() {
        let node = SemigroupNode::from_gaps(sample_semigroup());
        let after30 = node.child(0).unwrap();
        assert_eq!(after30.stats().conductor, 31);
        assert_eq!(
            after30.seeds().row_strings(),
            vec!["10100000", "10100000", "10", "1", "00000", "11", "1", "1111"]
        );
        let after31 = node.child(1).unwrap();
        assert_eq!(
            after31.seeds().row_strings(),
            vec!["01000001", "01000001", "00", "0", "00001", "00", "1", "101", "11"]
        );
        let after33 = node.child(3).unwrap();
        assert_eq!(after33.stats().conductor, 34);
        assert_eq!(
            after33.seeds().row_strings(),
            vec!["00000001", "00000000", "00", "0", "00000", "00", "0", "000", "0", "1", "11"]
        );
        for child in [after30, after31, after33] {
            assert_eq!(*child.seeds(), init_seeds_table(child.gaps()));
            assert_eq!(child.genus(), 23);
        }
    }

    #[test]
    fn first_child_of_root() {
        let child = root_node().child(0).unwrap();
        assert_eq!(child.gaps().to_string(), "10");
        assert_eq!(child.seeds().row_strings(), vec!["11"]);
        assert_eq!(
            *child.stats(),
            GapBitstream::from_gaps([1]).unwrap().stats()
        );
    }

    #[test]
    fn child_rejects_non_primitives() {
        let node = SemigroupNode::from_gaps(sample_semigroup());
        assert_eq!(node.child(2), Err(Error::NotAPrimitive(2)));
        assert_eq!(node.child(8), Err(Error::NotAPrimitive(8)));
        assert_eq!(root_node().child(1), Err(Error::NotAPrimitive(1)));
    }

    #[test]
    fn render_ascii() {
        let node = SemigroupNode::from_gaps(GapBitstream::from_gaps([1, 3]).unwrap());
        // <2, 5>: seeds bitstream 0111.
        assert_eq!(node.seeds().render(), ".#\n##\n");
        assert!(node.seeds().is_seed(1, 1));
        assert!(node.seeds().is_seed(0, 1));
        assert!(!node.seeds().is_seed(0, 0));
        assert!(!node.seeds().is_seed(0, 5));
        assert!(!node.seeds().is_seed(9, 0));
    }

    #[test]
    fn children_track_stats_and_primitives() {
        let mut stack = vec![root_node()];
        while let Some(node) = stack.pop() {
            assert_eq!(*node.stats(), node.gaps().stats());
            let p = node.gaps().primitives();
            assert_eq!(node.left_primitive_count() as usize, p.left.len());
            assert_eq!(node.right_primitive_count(), p.right_count);
            if node.genus() < 9 {
                for child in node.children().unwrap() {
                    assert_eq!(child.genus(), node.genus() + 1);
                    assert_eq!(child.gaps().parent().as_ref(), Some(node.gaps()));
                    stack.push(child);
                }
            }
        }
    }
}
