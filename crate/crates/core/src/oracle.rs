//! Slow reference implementations written straight from the definitions.
//!
//! Everything here works on explicit integer sets and index loops. Nothing
//! touches the packed bitstreams or the incremental update rules, so the
//! results can be used to check the engine.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::seeds::SeedsTable;
use crate::semigroup::GapBitstream;

/// Largest genus [`naive_count`] accepts.
pub const NAIVE_COUNT_LIMIT: u32 = 18;

struct Explicit {
    gaps: BTreeSet<u32>,
    conductor: u32,
}

impl Explicit {
    fn new(g: &GapBitstream) -> Self {
        let gaps: BTreeSet<u32> = g.gaps().collect();
        let conductor = gaps.last().map_or(0, |f| f + 1);
        Explicit { gaps, conductor }
    }

    fn contains(&self, n: u32) -> bool {
        !self.gaps.contains(&n)
    }

    /// λ_0, λ_1, ... up to and including `bound`.
    fn elements_upto(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    fn is_primitive(&self, x: u32) -> bool {
        x > 0 && self.contains(x) && !(1..x).any(|a| self.contains(a) && self.contains(x - a))
    }
}

/// Whether `lambda[s]` is an order-`i` seed: `λ_s + λ_i != λ_j + λ_k` for
/// all `i < j <= k < s`. `lambda` must list the elements through `λ_s`.
fn is_order_seed(lambda: &[u32], i: usize, s: usize) -> bool {
    for j in i + 1..s {
        for k in j..s {
            if lambda[s] + lambda[i] == lambda[j] + lambda[k] {
                return false;
            }
        }
    }
    true
}

/// Whether `element >= c` is an order-`order` seed of `g`, for any element,
/// including those beyond the table's row widths.
pub fn naive_is_seed(g: &GapBitstream, order: usize, element: u32) -> bool {
    let ex = Explicit::new(g);
    let c = g.conductor();
    assert!(element >= c, "seeds lie at or above the conductor");
    let lambda = ex.elements_upto(element);
    assert!(order < lambda.len() - 1);
    is_order_seed(&lambda, order, lambda.len() - 1)
}

/// The seeds table by the literal triple loop over the seed definition.
pub fn naive_seeds(g: &GapBitstream) -> SeedsTable {
    let ex = Explicit::new(g);
    // Under the root convention N0 has conductor 1.
    let c = ex.conductor.max(1);
    let left: Vec<u32> = (0..c).filter(|&n| ex.contains(n)).collect();
    let lambda = ex.elements_upto(2 * c + 1);
    let mut rows = Vec::with_capacity(left.len());
    for (i, &li) in left.iter().enumerate() {
        let next = left.get(i + 1).copied().unwrap_or(c);
        let row = (0..next - li)
            .map(|k| {
                let s = lambda.iter().position(|&x| x == c + k).unwrap();
                is_order_seed(&lambda, i, s)
            })
            .collect::<Vec<_>>();
        rows.push(row);
    }
    SeedsTable::from_rows(g, &rows)
}

/// Primitive elements below the conductor and the number at or above it,
/// scanning every candidate up to `2c + 1`.
pub fn naive_primitives(g: &GapBitstream) -> (Vec<u32>, u32) {
    let ex = Explicit::new(g);
    let c = ex.conductor.max(1);
    let prims: Vec<u32> = (1..=2 * c + 1).filter(|&x| ex.is_primitive(x)).collect();
    let left = prims.iter().copied().filter(|&x| x < c).collect();
    let right = prims.iter().filter(|&&x| x >= c).count() as u32;
    (left, right)
}

/// Children: the gap set plus each primitive at or above the conductor.
pub fn naive_children(g: &GapBitstream) -> Vec<GapBitstream> {
    let ex = Explicit::new(g);
    // For N0 every positive integer is at or above the conductor.
    let c = ex.conductor;
    (c.max(1)..=2 * c + 1)
        .filter(|&x| ex.is_primitive(x))
        .map(|x| {
            let mut gaps = ex.gaps.clone();
            gaps.insert(x);
            GapBitstream::from_gaps(gaps).expect("removing a primitive leaves a semigroup")
        })
        .collect()
}

/// Number of semigroups of each genus `0..=max_genus`, by recursive
/// application of [`naive_children`].
pub fn naive_count(max_genus: u32) -> Result<Vec<u64>> {
    if max_genus > NAIVE_COUNT_LIMIT {
        return Err(Error::BoundExceeded {
            requested: max_genus,
            limit: NAIVE_COUNT_LIMIT,
        });
    }
    let mut counts = vec![0u64; max_genus as usize + 1];
    fn walk(g: &GapBitstream, genus: usize, counts: &mut [u64]) {
        counts[genus] += 1;
        if genus + 1 < counts.len() {
            for child in naive_children(g) {
                walk(&child, genus + 1, counts);
            }
        }
    }
    walk(&GapBitstream::root(), 0, &mut counts);
    Ok(counts)
}
