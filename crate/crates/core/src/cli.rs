//! Command-line front end.
//!
//! Semigroups are written `gens=14,22,23;cap=56` (the semigroup generated by
//! the listed integers together with everything from `cap` on) or
//! `gaps=1,2,4,5` (the explicit gap set). Whitespace between tokens is
//! ignored.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{eliahou_constant, is_delgado_member, wilf_check, EliahouReport};
use crate::error::{Error, Result};
use crate::explorer::{
    explore_streaming, frontier, parse_frontier, render_frontier, Analysis, ExplorationConfig,
    GenusStats,
};
use crate::seeds::{root_node, SemigroupNode};
use crate::semigroup::GapBitstream;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemigroupSpec {
    Generators { gens: Vec<u32>, cap: Option<u32> },
    Gaps(Vec<u32>),
}

impl SemigroupSpec {
    pub fn to_gaps(&self) -> Result<GapBitstream> {
        match self {
            SemigroupSpec::Generators { gens, cap } => GapBitstream::from_generators(gens, *cap),
            SemigroupSpec::Gaps(gaps) => GapBitstream::from_gaps(gaps.iter().copied()),
        }
    }

    /// Canonical description of `gaps`: the primitives below the conductor,
    /// with `cap` equal to the conductor unless they already generate the
    /// whole semigroup. A semigroup without primitives below the conductor
    /// is listed by its full minimal generating set.
    pub fn canonical(gaps: &GapBitstream) -> SemigroupSpec {
        let p = gaps.primitives();
        let left = p.left.into_vec();
        if p.right_count == 0 {
            SemigroupSpec::Generators {
                gens: left,
                cap: None,
            }
        } else if left.is_empty() {
            SemigroupSpec::Generators {
                gens: minimal_generators(gaps),
                cap: None,
            }
        } else {
            SemigroupSpec::Generators {
                gens: left,
                cap: Some(gaps.conductor()),
            }
        }
    }
}

impl fmt::Display for SemigroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            SemigroupSpec::Generators { gens, cap: None } => write!(f, "gens={}", list(gens)),
            SemigroupSpec::Generators { gens, cap: Some(c) } => {
                write!(f, "gens={};cap={c}", list(gens))
            }
            SemigroupSpec::Gaps(gaps) => write!(f, "gaps={}", list(gaps)),
        }
    }
}

/// Every primitive element, in increasing order.
pub fn minimal_generators(gaps: &GapBitstream) -> Vec<u32> {
    let node = SemigroupNode::from_gaps(*gaps);
    let c = gaps.conductor();
    let mut gens = gaps.primitives().left.into_vec();
    gens.extend(node.right_primitive_offsets().into_iter().map(|k| c + k));
    gens
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let hit = self.text[self.pos..].starts_with(token);
        if hit {
            self.pos += token.len();
        }
        hit
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(Error::parse(start, "expected a number"));
        }
        self.pos += digits;
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn list(&mut self, allow_empty: bool) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        self.skip_ws();
        let empty = self.at_end() || self.text[self.pos..].starts_with(';');
        if empty && allow_empty {
            return Ok(out);
        }
        out.push(self.number()?);
        while self.eat(",") {
            out.push(self.number()?);
        }
        Ok(out)
    }
}

/// Parses and validates a semigroup description.
pub fn parse_spec(text: &str) -> Result<SemigroupSpec> {
    let mut cur = Cursor { text, pos: 0 };
    let spec = if cur.eat("gens") {
        cur.expect("=")?;
        let list_start = cur.pos;
        let gens = cur.list(false)?;
        if gens.contains(&0) {
            return Err(Error::parse(list_start, "generators must be positive"));
        }
        let cap = if cur.eat(";") {
            cur.expect("cap")?;
            cur.expect("=")?;
            Some(cur.number()?)
        } else {
            None
        };
        SemigroupSpec::Generators { gens, cap }
    } else if cur.eat("gaps") {
        cur.expect("=")?;
        SemigroupSpec::Gaps(cur.list(true)?)
    } else {
        cur.skip_ws();
        return Err(Error::parse(cur.pos, "expected `gens=` or `gaps=`"));
    };
    if !cur.at_end() {
        return Err(Error::parse(cur.pos, "unexpected trailing input"));
    }
    spec.to_gaps()?;
    Ok(spec)
}

#[derive(Parser)]
#[command(
    name = "numsg",
    version,
    about = "Explore the tree of numerical semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    max_genus: u32,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Number of semigroups of each genus.
    Count {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
        /// Count the subtree below this semigroup.
        #[arg(long, conflicts_with = "from_file")]
        from: Option<String>,
        /// Count the subtrees below every node of a frontier file.
        #[arg(long)]
        from_file: Option<PathBuf>,
    },
    /// Print every semigroup with negative Eliahou constant, as JSON lines.
    Eliahou {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check Wilf's inequality on every semigroup up to the given genus.
    Wilf {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Invariants and seeds table of one semigroup.
    Info { spec: String },
    /// Children of a semigroup in the tree.
    Children { spec: String },
    /// Membership in Delgado's family.
    Delgado { spec: String },
    /// Nodes of the tree at the given depth below the root.
    Frontier {
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the command line `args` (program name first). Returns the exit code:
/// 0 on success, 1 when `wilf` finds a violation, 2 on bad input or
/// configuration.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn config(search: &SearchArgs, analysis: Analysis) -> ExplorationConfig {
    let mut cfg = ExplorationConfig::new(search.max_genus).with_analysis(analysis);
    if let Some(w) = search.workers {
        cfg = cfg.with_workers(w);
    }
    cfg
}

fn node_of(spec: &str) -> Result<SemigroupNode> {
    Ok(SemigroupNode::from_gaps(parse_spec(spec)?.to_gaps()?))
}

fn dispatch(command: Command, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match command {
        Command::Count {
            search,
            json,
            from,
            from_file,
        } => {
            let cfg = config(&search, Analysis::Count);
            let starts = match (from, from_file) {
                (Some(spec), _) => vec![node_of(&spec)?],
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        Failure::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    parse_frontier(&text)?
                }
                (None, None) => vec![root_node()],
            };
            let mut stats = GenusStats::default();
            for start in &starts {
                stats.merge_from(explore_streaming(start, &cfg, |_| {})?);
            }
            if json {
                let counts: Vec<Value> = stats
                    .counts
                    .iter()
                    .map(|(g, n)| json!({"genus": g, "count": n}))
                    .collect();
                let doc = json!({"counts": counts, "max_genus": search.max_genus, "total": stats.total()});
                writeln!(out, "{doc}")?;
            } else {
                for (g, n) in &stats.counts {
                    writeln!(out, "{g}:{n}")?;
                }
            }
            Ok(0)
        }
        Command::Eliahou { search } => {
            let cfg = config(&search, Analysis::Eliahou);
            let mut io_error = None;
            explore_streaming(&root_node(), &cfg, |chunk| {
                if io_error.is_some() {
                    return;
                }
                let written = chunk
                    .hits
                    .iter()
                    .try_for_each(|hit| writeln!(out, "{}", eliahou_json(hit)))
                    .and_then(|_| out.flush());
                if let Err(e) = written {
                    io_error = Some(e);
                }
            })?;
            match io_error {
                Some(e) => Err(e.into()),
                None => Ok(0),
            }
        }
        Command::Wilf { search } => {
            let cfg = config(&search, Analysis::Wilf);
            let stats = explore_streaming(&root_node(), &cfg, |_| {})?;
            match stats.violations.first() {
                None => {
                    writeln!(
                        out,
                        "Wilf's inequality holds for all {} semigroups of genus <= {}",
                        stats.total(),
                        search.max_genus
                    )?;
                    Ok(0)
                }
                Some(v) => {
                    let mut doc = eliahou_json(&v.eliahou);
                    doc["wilf_slack"] = json!(v.wilf.slack);
                    writeln!(out, "Wilf violation: {doc}")?;
                    Ok(1)
                }
            }
        }
        Command::Info { spec } => {
            let node = node_of(&spec)?;
            write!(out, "{}", info_text(&node))?;
            Ok(0)
        }
        Command::Children { spec } => {
            let node = node_of(&spec)?;
            for child in node.children()? {
                writeln!(out, "{}", SemigroupSpec::canonical(child.gaps()))?;
            }
            Ok(0)
        }
        Command::Delgado { spec } => {
            let gaps = parse_spec(&spec)?.to_gaps()?;
            let left = gaps.primitives().left.into_vec();
            let witness = match left[..] {
                [m, g2, g3] => {
                    is_delgado_member(m.into(), g2.into(), g3.into(), gaps.conductor().into())
                }
                _ => None,
            };
            match witness {
                Some(w) => writeln!(out, "p={} tau={} i={} j={}", w.p, w.tau, w.i, w.j)?,
                None => writeln!(out, "not a member")?,
            }
            Ok(0)
        }
        Command::Frontier { depth, out: path } => {
            let text = render_frontier(&frontier(&root_node(), depth)?);
            match path {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => write!(out, "{text}")?,
            }
            Ok(0)
        }
    }
}

fn eliahou_json(r: &EliahouReport) -> Value {
    json!({
        "E": r.e,
        "L": r.left_count,
        "conductor": r.conductor,
        "gaps": r.gaps.gaps().collect::<Vec<_>>(),
        "generators": minimal_generators(&r.gaps),
        "genus": r.genus,
        "multiplicity": r.multiplicity,
        "p_left": r.p_left,
        "p_right": r.p_right,
        "q": r.q,
        "rho": r.rho,
    })
}

fn info_text(node: &SemigroupNode) -> String {
    let gaps = node.gaps();
    let s = node.stats();
    let e = eliahou_constant(node);
    let w = wilf_check(node);
    let left: Vec<String> = gaps.primitives().left.iter().map(u32::to_string).collect();
    let mut text = format!(
        "spec {}\n\
         g={} c={} m={} F={}\n\
         p={} r={} L={} q={} rho={}\n\
         left primitives: {}\n\
         E={}{}\n\
         Wilf {}: L*p - c = {}\n\
         seeds:\n",
        SemigroupSpec::canonical(gaps),
        s.genus,
        s.conductor,
        s.multiplicity,
        s.frobenius,
        e.primitive_count(),
        e.p_right,
        s.left_count,
        s.q,
        s.rho,
        if left.is_empty() {
            "none".into()
        } else {
            left.join(",")
        },
        e.e,
        if e.is_eliahou() {
            " (Eliahou semigroup)"
        } else {
            ""
        },
        if w.holds { "holds" } else { "fails" },
        w.slack,
    );
    text += &node.seeds().render();
    text
}
