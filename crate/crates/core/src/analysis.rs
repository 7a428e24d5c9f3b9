//! Eliahou constant, Wilf inequality and Delgado's negative-constant family.

use crate::error::{Error, Result};
use crate::seeds::SemigroupNode;
use crate::semigroup::{GapBitstream, SemigroupStats};

/// Parameters entering the Eliahou constant
/// `E = p_left * L - q * (m - p_right) + rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EliahouReport {
    pub genus: u32,
    pub gaps: GapBitstream,
    pub multiplicity: u32,
    pub conductor: u32,
    pub q: u32,
    pub rho: u32,
    /// Count of left elements (elements below the conductor).
    pub left_count: u32,
    pub p_left: u32,
    pub p_right: u32,
    pub e: i64,
}

impl EliahouReport {
    fn new(gaps: GapBitstream, s: &SemigroupStats, p_left: u32, p_right: u32) -> Self {
        EliahouReport {
            genus: s.genus,
            gaps,
            multiplicity: s.multiplicity,
            conductor: s.conductor,
            q: s.q,
            rho: s.rho,
            left_count: s.left_count,
            p_left,
            p_right,
            e: eliahou_formula(s.left_count, s.q, s.rho, s.multiplicity, p_left, p_right),
        }
    }

    /// Evaluates the constant from a semigroup given only by its gaps.
    pub fn from_gaps(gaps: &GapBitstream) -> Self {
        let p = gaps.primitives();
        EliahouReport::new(*gaps, &gaps.stats(), p.left.len() as u32, p.right_count)
    }

    /// Re-evaluates the formula from the stored fields.
    pub fn recompute(&self) -> i64 {
        eliahou_formula(
            self.left_count,
            self.q,
            self.rho,
            self.multiplicity,
            self.p_left,
            self.p_right,
        )
    }

    pub fn primitive_count(&self) -> u32 {
        self.p_left + self.p_right
    }

    pub fn is_eliahou(&self) -> bool {
        self.e < 0
    }
}

fn eliahou_formula(left_count: u32, q: u32, rho: u32, m: u32, p_left: u32, p_right: u32) -> i64 {
    p_left as i64 * left_count as i64 - q as i64 * (m as i64 - p_right as i64) + rho as i64
}

pub fn eliahou_constant(node: &SemigroupNode) -> EliahouReport {
    EliahouReport::new(
        *node.gaps(),
        node.stats(),
        node.left_primitive_count(),
        node.right_primitive_count(),
    )
}

/// Just the value of the constant, without building a report.
#[inline]
pub(crate) fn eliahou_value(node: &SemigroupNode) -> i64 {
    let s = node.stats();
    eliahou_formula(
        s.left_count,
        s.q,
        s.rho,
        s.multiplicity,
        node.left_primitive_count(),
        node.right_primitive_count(),
    )
}

/// `c <= L * #P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WilfReport {
    pub conductor: u32,
    pub left_count: u32,
    pub primitives: u32,
    pub holds: bool,
    /// `L * #P - c`.
    pub slack: i64,
}

impl WilfReport {
    fn new(conductor: u32, left_count: u32, primitives: u32) -> Self {
        let slack = left_count as i64 * primitives as i64 - conductor as i64;
        WilfReport {
            conductor,
            left_count,
            primitives,
            holds: slack >= 0,
            slack,
        }
    }

    pub fn from_gaps(gaps: &GapBitstream) -> Self {
        let s = gaps.stats();
        WilfReport::new(s.conductor, s.left_count, gaps.primitives().total())
    }
}

pub fn wilf_check(node: &SemigroupNode) -> WilfReport {
    let s = node.stats();
    WilfReport::new(
        s.conductor,
        s.left_count,
        node.left_primitive_count() + node.right_primitive_count(),
    )
}

/// A member `<m, g, g + 1>|_c` of Delgado's family `S^(i,j)(p, tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DelgadoParams {
    pub p: u64,
    pub tau: u64,
    pub i: u64,
    pub j: u64,
    pub m: u64,
    pub g: u64,
    pub c: u64,
}

impl DelgadoParams {
    pub fn new(p: u64, tau: u64, i: u64, j: u64) -> Result<Self> {
        let (m, g, c) = delgado_params(p, tau, i, j)?;
        Ok(DelgadoParams {
            p,
            tau,
            i,
            j,
            m,
            g,
            c,
        })
    }

    pub fn semigroup(&self) -> Result<GapBitstream> {
        let narrow = |x: u64| {
            u32::try_from(x).map_err(|_| Error::GenusLimit {
                genus: u32::MAX,
                max: crate::MAX_GENUS,
            })
        };
        GapBitstream::from_generators(
            &[narrow(self.m)?, narrow(self.g)?, narrow(self.g + 1)?],
            Some(narrow(self.c)?),
        )
    }
}

/// `(m, g, c)` of `S^(i,j)(p, tau)`. With `h = p / 2` every fraction in the
/// closed forms becomes an integer:
///
/// ```text
/// m = h^2 + h*tau + 2p + 2 + j*h
/// g = 2h^2 + p*tau + 7h - tau + j(p - 1) + i*m
/// c = 2h^3 + 2h^2*tau + 8h^2 + 2p - tau + 2j*h^2 + i(h + 1)m
/// ```
pub fn delgado_params(p: u64, tau: u64, i: u64, j: u64) -> Result<(u64, u64, u64)> {
    if p == 0 || p % 2 == 1 {
        return Err(Error::InvalidP(p));
    }
    let h = p / 2;
    let m = h * h + h * tau + 2 * p + 2 + j * h;
    let g = 2 * h * h + (p - 1) * tau + 7 * h + j * (p - 1) + i * m;
    let c =
        2 * h * h * h + (2 * h * h - 1) * tau + 8 * h * h + 2 * p + 2 * j * h * h + i * (h + 1) * m;
    Ok((m, g, c))
}

/// Searches for Delgado parameters reproducing `<m, g2, g3>|_c`.
///
/// `tau` is pinned to `ceil(c / m) * m - c`; `j` and `i` are solved exactly
/// from the `m` and `g` equations for each even `p` allowed by
/// `m >= p^2 / 4 + 2p + 2`, and the `c` equation is checked last.
pub fn is_delgado_member(m: u64, g2: u64, g3: u64, c: u64) -> Option<DelgadoParams> {
    if g3 != g2 + 1 || m == 0 {
        return None;
    }
    let tau = c.div_ceil(m) * m - c;
    let p_max = 2 * ceil_sqrt(m) + 2;
    (2..=p_max).step_by(2).find_map(|p| {
        let h = p / 2;
        let m_base = h * h + h * tau + 2 * p + 2;
        let j = exact_quotient(m.checked_sub(m_base)?, h)?;
        let g_base = 2 * h * h + (p - 1) * tau + 7 * h + j * (p - 1);
        let i = exact_quotient(g2.checked_sub(g_base)?, m)?;
        let witness = DelgadoParams::new(p, tau, i, j).ok()?;
        (witness.m == m && witness.g == g2 && witness.c == c).then_some(witness)
    })
}

fn exact_quotient(a: u64, b: u64) -> Option<u64> {
    a.is_multiple_of(b).then(|| a / b)
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}
