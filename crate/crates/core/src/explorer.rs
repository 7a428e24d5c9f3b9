//! Genus-bounded traversal of the semigroup tree.
//!
//! [`explore`] walks a subtree depth first on an explicit stack.
//! [`explore_parallel`] first expands the subtree down to a frontier, then
//! hands the frontier subtrees to a rayon pool; subtrees that are still deep
//! keep splitting over their children. Partial results are [`GenusStats`]
//! values combined with [`GenusStats::merge`], which is commutative and
//! associative, so the result does not depend on the worker count or on
//! scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::mpsc;

use rayon::prelude::*;

use crate::analysis::{eliahou_constant, eliahou_value, wilf_check, EliahouReport, WilfReport};
use crate::error::{Error, Result};
use crate::seeds::SemigroupNode;
use crate::semigroup::{GapBitstream, MAX_GENUS};

/// Subtrees with at most this many levels left are walked serially.
const SERIAL_DEPTH: u32 = 12;

const DEFAULT_FRONTIER_DEPTH: u32 = 12;

/// Per-node work done during a traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Analysis {
    /// Count nodes per genus only.
    #[default]
    Count,
    /// Also collect every node with negative Eliahou constant.
    Eliahou,
    /// Collect Eliahou semigroups and check Wilf's inequality on every node.
    Wilf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationConfig {
    pub max_genus: u32,
    pub workers: usize,
    /// Levels below the start node at which the parallel split happens.
    pub frontier_depth: u32,
    pub analysis: Analysis,
}

impl ExplorationConfig {
    pub fn new(max_genus: u32) -> Self {
        ExplorationConfig {
            max_genus,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            frontier_depth: DEFAULT_FRONTIER_DEPTH.min(max_genus),
            analysis: Analysis::Count,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_frontier_depth(mut self, depth: u32) -> Self {
        self.frontier_depth = depth;
        self
    }

    pub fn with_analysis(mut self, analysis: Analysis) -> Self {
        self.analysis = analysis;
        self
    }

    fn validate(&self, start: &SemigroupNode) -> Result<()> {
        if self.max_genus > MAX_GENUS {
            return Err(Error::GenusLimit {
                genus: self.max_genus,
                max: MAX_GENUS,
            });
        }
        if start.genus() > self.max_genus {
            return Err(Error::Config(format!(
                "start node has genus {} above max genus {}",
                start.genus(),
                self.max_genus
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        if self.frontier_depth > self.max_genus {
            return Err(Error::Config(format!(
                "frontier depth {} exceeds max genus {}",
                self.frontier_depth, self.max_genus
            )));
        }
        Ok(())
    }
}

/// A semigroup failing Wilf's inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WilfViolation {
    pub eliahou: EliahouReport,
    pub wilf: WilfReport,
}

/// Result of a traversal: nodes per genus plus collected findings, the
/// findings sorted by genus and then by gap set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenusStats {
    pub counts: BTreeMap<u32, u64>,
    pub hits: Vec<EliahouReport>,
    pub violations: Vec<WilfViolation>,
}

impl GenusStats {
    pub fn merge(mut self, other: GenusStats) -> GenusStats {
        self.merge_from(other);
        self
    }

    pub fn merge_from(&mut self, other: GenusStats) {
        for (g, n) in other.counts {
            *self.counts.entry(g).or_insert(0) += n;
        }
        self.hits.extend(other.hits);
        self.hits.sort();
        self.violations.extend(other.violations);
        self.violations.sort();
    }

    pub fn count(&self, genus: u32) -> u64 {
        self.counts.get(&genus).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Counts for genus `0..=max`, zero where nothing was recorded.
    pub fn counts_vec(&self, max: u32) -> Vec<u64> {
        (0..=max).map(|g| self.count(g)).collect()
    }
}

/// Hot-loop accumulator.
struct Tally {
    counts: [u64; MAX_GENUS as usize + 1],
    hits: Vec<EliahouReport>,
    violations: Vec<WilfViolation>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            counts: [0; MAX_GENUS as usize + 1],
            hits: Vec::new(),
            violations: Vec::new(),
        }
    }

    #[inline]
    fn visit(&mut self, node: &SemigroupNode, analysis: Analysis) {
        self.counts[node.genus() as usize] += 1;
        match analysis {
            Analysis::Count => {}
            Analysis::Eliahou => {
                if eliahou_value(node) < 0 {
                    self.hits.push(eliahou_constant(node));
                }
            }
            Analysis::Wilf => {
                let eliahou = eliahou_value(node);
                if eliahou < 0 {
                    self.hits.push(eliahou_constant(node));
                }
                let wilf = wilf_check(node);
                if !wilf.holds {
                    self.violations.push(WilfViolation {
                        eliahou: eliahou_constant(node),
                        wilf,
                    });
                }
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self.hits.extend(other.hits);
        self.violations.extend(other.violations);
        self
    }

    fn into_stats(mut self, genera: std::ops::RangeInclusive<u32>) -> GenusStats {
        self.hits.sort();
        self.violations.sort();
        GenusStats {
            counts: genera.map(|g| (g, self.counts[g as usize])).collect(),
            hits: self.hits,
            violations: self.violations,
        }
    }
}

/// Depth-first walk of the subtree under `start`, down to `max_genus`.
fn walk(start: SemigroupNode, max_genus: u32, analysis: Analysis, tally: &mut Tally) {
    let mut stack = Vec::with_capacity(1024);
    stack.push(start);
    while let Some(node) = stack.pop() {
        tally.visit(&node, analysis);
        let genus = node.genus();
        if genus >= max_genus {
            continue;
        }
        if analysis == Analysis::Count && genus + 1 == max_genus {
            // Leaves only need counting; row 0 already lists them.
            tally.counts[genus as usize + 1] += node.right_primitive_count() as u64;
            continue;
        }
        let base = stack.len();
        node.for_each_child(|child| stack.push(child));
        stack[base..].reverse();
    }
}

fn walk_split(node: &SemigroupNode, max_genus: u32, analysis: Analysis) -> Tally {
    let mut tally = Tally::new();
    if max_genus - node.genus() <= SERIAL_DEPTH {
        walk(*node, max_genus, analysis, &mut tally);
        return tally;
    }
    tally.visit(node, analysis);
    let mut children = Vec::new();
    node.for_each_child(|child| children.push(child));
    let below = children
        .par_iter()
        .map(|child| walk_split(child, max_genus, analysis))
        .reduce(Tally::new, Tally::merge);
    tally.merge(below)
}

/// Serial exhaustive exploration of every descendant of `start` with genus
/// at most `cfg.max_genus`. `cfg.workers` and `cfg.frontier_depth` are not
/// used.
pub fn explore(start: &SemigroupNode, cfg: &ExplorationConfig) -> Result<GenusStats> {
    cfg.validate(start)?;
    let mut tally = Tally::new();
    walk(*start, cfg.max_genus, cfg.analysis, &mut tally);
    Ok(tally.into_stats(start.genus()..=cfg.max_genus))
}

/// Same result as [`explore`], computed on `cfg.workers` threads.
pub fn explore_parallel(start: &SemigroupNode, cfg: &ExplorationConfig) -> Result<GenusStats> {
    explore_streaming(start, cfg, |_| {})
}

/// Parallel exploration that reports partial results as they become final.
///
/// `sink` first receives the statistics of the nodes above the frontier and
/// then one chunk per frontier subtree, in frontier order. That order only
/// depends on `cfg.frontier_depth`, never on the worker count. The returned
/// value is the merge of all chunks.
pub fn explore_streaming<F>(
    start: &SemigroupNode,
    cfg: &ExplorationConfig,
    mut sink: F,
) -> Result<GenusStats>
where
    F: FnMut(&GenusStats),
{
    cfg.validate(start)?;
    let genera = start.genus()..=cfg.max_genus;
    let depth = cfg.frontier_depth.min(cfg.max_genus - start.genus());
    let (prefix, frontier) = expand(start, depth, cfg.analysis);
    let mut total = prefix.into_stats(genera.clone());
    sink(&total);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let (tx, rx) = mpsc::channel::<(usize, GenusStats)>();
    let (max_genus, analysis) = (cfg.max_genus, cfg.analysis);
    std::thread::scope(|scope| {
        let frontier = &frontier;
        let pool = &pool;
        let genera = genera.clone();
        scope.spawn(move || {
            pool.install(|| {
                frontier
                    .par_iter()
                    .enumerate()
                    .for_each_with(tx, |tx, (i, node)| {
                        let chunk =
                            walk_split(node, max_genus, analysis).into_stats(genera.clone());
                        // The receiver only hangs up once every index arrived.
                        let _ = tx.send((i, chunk));
                    })
            })
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, chunk) in rx {
            pending.insert(i, chunk);
            while let Some(chunk) = pending.remove(&next) {
                sink(&chunk);
                total.merge_from(chunk);
                next += 1;
            }
        }
    });
    Ok(total)
}

/// Nodes at genus `start.genus() + depth` below `start`, sorted by gap set,
/// together with the tally of the nodes strictly above them.
fn expand(start: &SemigroupNode, depth: u32, analysis: Analysis) -> (Tally, Vec<SemigroupNode>) {
    let target = start.genus() + depth;
    let mut tally = Tally::new();
    let mut frontier = Vec::new();
    let mut stack = vec![*start];
    while let Some(node) = stack.pop() {
        if node.genus() == target {
            frontier.push(node);
            continue;
        }
        tally.visit(&node, analysis);
        node.for_each_child(|child| stack.push(child));
    }
    frontier.sort_by(|a, b| a.gaps().cmp(b.gaps()));
    (tally, frontier)
}

/// All descendants of `start` exactly `depth` levels down, sorted
/// lexicographically by gap set.
pub fn frontier(start: &SemigroupNode, depth: u32) -> Result<Vec<SemigroupNode>> {
    let genus = start.genus() + depth;
    if genus > MAX_GENUS {
        return Err(Error::GenusLimit {
            genus,
            max: MAX_GENUS,
        });
    }
    Ok(expand(start, depth, Analysis::Count).1)
}

/// Explores several start nodes with one configuration and merges the
/// results.
pub fn explore_all(starts: &[SemigroupNode], cfg: &ExplorationConfig) -> Result<GenusStats> {
    starts.iter().try_fold(GenusStats::default(), |acc, start| {
        Ok(acc.merge(explore_parallel(start, cfg)?))
    })
}

/// `conductor:hex`, the gap bitstream read bit 0 first as a binary number,
/// zero padded to whole nibbles. `{1, 3}` (bits `1010`) is `4:a`.
pub fn encode_frontier_line(gaps: &GapBitstream) -> String {
    let c = gaps.conductor();
    let mut out = format!("{c}:");
    for nibble in 0..c.div_ceil(4) {
        let v = (0..4).fold(0u32, |acc, b| (acc << 1) | gaps.bit(4 * nibble + b) as u32);
        write!(out, "{v:x}").unwrap();
    }
    out
}

pub fn decode_frontier_line(line: &str) -> Result<GapBitstream> {
    let (c_text, hex) = line
        .split_once(':')
        .ok_or_else(|| Error::parse(0, "expected `conductor:hex`"))?;
    let conductor: u32 = c_text
        .parse()
        .map_err(|_| Error::parse(0, format!("bad conductor `{c_text}`")))?;
    if conductor == 0 || conductor > 2 * MAX_GENUS {
        return Err(Error::parse(
            0,
            format!("conductor {conductor} out of range"),
        ));
    }
    let offset = c_text.len() + 1;
    if hex.len() != conductor.div_ceil(4) as usize {
        return Err(Error::parse(
            offset,
            format!(
                "expected {} hex digits for conductor {conductor}",
                conductor.div_ceil(4)
            ),
        ));
    }
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for (i, ch) in hex.chars().enumerate() {
        if ch.is_ascii_uppercase() {
            return Err(Error::parse(offset + i, "hex digits must be lowercase"));
        }
        let v = ch
            .to_digit(16)
            .ok_or_else(|| Error::parse(offset + i, format!("`{ch}` is not a hex digit")))?;
        bits.extend((0..4).rev().map(|b| (v >> b) & 1 == 1));
    }
    if bits[conductor as usize..].iter().any(|&b| b) {
        return Err(Error::parse(offset, "padding bits must be zero"));
    }
    let gaps = GapBitstream::from_bits(bits)?;
    if gaps.conductor() != conductor {
        return Err(Error::parse(
            0,
            format!(
                "bitstream has conductor {}, line says {conductor}",
                gaps.conductor()
            ),
        ));
    }
    Ok(gaps)
}

/// One line per node.
pub fn render_frontier(nodes: &[SemigroupNode]) -> String {
    nodes
        .iter()
        .map(|n| encode_frontier_line(n.gaps()) + "\n")
        .collect()
}

/// Reads a frontier file, rebuilding each seeds table from its gaps. Blank
/// lines are skipped; error positions are byte offsets into `text`.
pub fn parse_frontier(text: &str) -> Result<Vec<SemigroupNode>> {
    let mut nodes = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_end_matches(['\n', '\r']);
        if !trimmed.trim().is_empty() {
            let gaps = decode_frontier_line(trimmed).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position: line_start + position,
                    message,
                },
                other => other,
            })?;
            nodes.push(SemigroupNode::from_gaps(gaps));
        }
        line_start += line.len();
    }
    Ok(nodes)
}
