//! Text formats: the edge-list instance file and the kernelization trace.
//!
//! Edge list:
//!
//! ```text
//! # comment
//! ctvd <n> <m> <k>
//! <u> <v> [mult]
//! loop <u> [mult]
//! ```
//!
//! Trace: a `ctvd-trace n=.. m=.. k=..` header, one line per rule firing and a
//! final `result` line. A record reads
//! `<rule> k=<before>-><after> <name>=<ids> ... | del:<v> set:<u>:<v>:<m> ...`
//! where `<ids>` is a comma-separated list or `-` when empty.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use ctvd_core::kernel::trace::{Edit, KernelTrace, RuleId, TraceRecord};
use ctvd_core::kernel::{KernelResult, Kernelization};
use ctvd_core::{Instance, MultiGraph, VertexId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

fn number<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

/// An instance on vertices `0..n`. Edges are stored as `(u, v) -> mult` with
/// `u <= v`; `u == v` is a self-loop.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeListDocument {
    pub n: usize,
    pub k: usize,
    pub edges: BTreeMap<(u32, u32), u32>,
}

impl EdgeListDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing `ctvd n m k` header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "ctvd" {
            return Err(err(hl, "expected `ctvd n m k`"));
        }
        let n: usize = number(hl, h[1], "vertex count")?;
        let m: usize = number(hl, h[2], "edge count")?;
        let k: usize = number(hl, h[3], "budget")?;
        let mut doc = Self { n, k, edges: BTreeMap::new() };
        let mut seen = 0;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let (u, v, rest) = match toks.as_slice() {
                ["loop", u, rest @ ..] => {
                    let u: u32 = number(ln, u, "vertex")?;
                    (u, u, rest)
                }
                [u, v, rest @ ..] => (number(ln, u, "vertex")?, number(ln, v, "vertex")?, rest),
                _ => return Err(err(ln, "expected `u v [mult]` or `loop u [mult]`")),
            };
            let mult: u32 = match rest {
                [] => 1,
                [m] => number(ln, m, "multiplicity")?,
                _ => return Err(err(ln, "trailing tokens")),
            };
            if mult == 0 {
                return Err(err(ln, "multiplicity must be positive"));
            }
            for x in [u, v] {
                if x as usize >= n {
                    return Err(err(ln, format!("vertex {x} out of range for n = {n}")));
                }
            }
            *doc.edges.entry((u.min(v), u.max(v))).or_default() += mult;
            seen += 1;
        }
        if seen != m {
            return Err(err(hl, format!("header announces {m} edge lines, found {seen}")));
        }
        Ok(doc)
    }

    /// Re-indexes the vertices of `inst` to `0..n` in increasing id order.
    pub fn from_instance(inst: &Instance) -> Self {
        let index: BTreeMap<VertexId, u32> = inst
            .graph
            .vertices()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        let mut edges = BTreeMap::new();
        for (u, v, m) in inst.graph.edges() {
            let (a, b) = (index[&u], index[&v]);
            edges.insert((a.min(b), a.max(b)), m);
        }
        for (v, m) in inst.graph.loops() {
            edges.insert((index[&v], index[&v]), m);
        }
        Self { n: index.len(), k: inst.k, edges }
    }

    pub fn to_instance(&self) -> Instance {
        let mut g = MultiGraph::with_vertices(self.n);
        for (&(u, v), &m) in &self.edges {
            g.set_multiplicity(VertexId(u), VertexId(v), m)
                .expect("indices validated on construction");
        }
        Instance::new(g, self.k)
    }
}

impl fmt::Display for EdgeListDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ctvd {} {} {}", self.n, self.edges.len(), self.k)?;
        for (&(u, v), &m) in &self.edges {
            if u == v {
                write!(f, "loop {u}")?;
            } else {
                write!(f, "{u} {v}")?;
            }
            if m != 1 {
                write!(f, " {m}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOutcome {
    Kernel {
        n: usize,
        m: usize,
        k: usize,
        s: usize,
        bound: u128,
        within: bool,
    },
    /// `reason` runs to the end of the line.
    NoInstance { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDocument {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub trace: KernelTrace,
    pub outcome: TraceOutcome,
}

impl TraceDocument {
    pub fn new(input: &Instance, run: &Kernelization) -> Self {
        let outcome = match &run.result {
            KernelResult::Kernel(kernel) => TraceOutcome::Kernel {
                n: kernel.instance.graph.vertex_count(),
                m: kernel.instance.graph.total_multiplicity() as usize,
                k: kernel.instance.k,
                s: kernel.s.len(),
                bound: kernel.bounds.bound,
                within: kernel.bounds.within_bound(),
            },
            KernelResult::NoInstance { reason } => TraceOutcome::NoInstance { reason: reason.clone() },
        };
        Self {
            n: input.graph.vertex_count(),
            m: input.graph.total_multiplicity() as usize,
            k: input.k,
            trace: run.trace.clone(),
            outcome,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let lines: Vec<&str> = text.lines().collect();
        let header = lines.first().ok_or_else(|| err(1, "empty trace"))?;
        let fields = header
            .strip_prefix("ctvd-trace ")
            .ok_or_else(|| err(1, "expected `ctvd-trace` header"))?;
        let kv = key_values(1, fields)?;
        if kv.iter().map(|(k, _)| *k).ne(["n", "m", "k"]) {
            return Err(err(1, "header fields must be n m k"));
        }
        let (n, m, k) = (number(1, kv[0].1, "n")?, number(1, kv[1].1, "m")?, number(1, kv[2].1, "k")?);
        let (last, body) = lines[1..]
            .split_last()
            .ok_or_else(|| err(2, "missing result line"))?;
        let records = body
            .iter()
            .enumerate()
            .map(|(i, l)| parse_record(i + 2, l))
            .collect::<Result<Vec<_>, _>>()?;
        let outcome = parse_outcome(lines.len(), last)?;
        Ok(Self {
            n,
            m,
            k,
            trace: KernelTrace { records },
            outcome,
        })
    }
}

fn key_values(line: usize, s: &str) -> Result<Vec<(&str, &str)>, ParseError> {
    s.split(' ')
        .map(|tok| tok.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{tok}`"))))
        .collect()
}

fn write_ids(out: &mut String, ids: &[VertexId]) {
    if ids.is_empty() {
        out.push('-');
    }
    for (i, v) in ids.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", v.0);
    }
}

fn parse_ids(line: usize, s: &str) -> Result<Vec<VertexId>, ParseError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| number(line, t, "vertex").map(VertexId)).collect()
}

fn write_record(out: &mut String, r: &TraceRecord) {
    let _ = write!(out, "{} k={}->{}", r.rule, r.k_before, r.k_after);
    for (name, ids) in &r.params {
        let _ = write!(out, " {name}=");
        write_ids(out, ids);
    }
    out.push_str(" |");
    for e in &r.edits {
        let _ = match *e {
            Edit::DeleteVertex(v) => write!(out, " del:{}", v.0),
            Edit::SetMultiplicity(u, v, m) => write!(out, " set:{}:{}:{m}", u.0, v.0),
        };
    }
    out.push('\n');
}

fn parse_record(ln: usize, line: &str) -> Result<TraceRecord, ParseError> {
    let (head, edits) = line
        .split_once(" |")
        .ok_or_else(|| err(ln, "record lacks ` |` separator"))?;
    let mut toks = head.split(' ');
    let rule_name = toks.next().unwrap_or_default();
    let rule = RuleId::from_name(rule_name).ok_or_else(|| err(ln, format!("unknown rule `{rule_name}`")))?;
    let budget = toks
        .next()
        .and_then(|t| t.strip_prefix("k="))
        .and_then(|t| t.split_once("->"))
        .ok_or_else(|| err(ln, "expected k=<before>-><after>"))?;
    let mut rec = TraceRecord::new(rule, number(ln, budget.0, "budget")?);
    rec.k_after = number(ln, budget.1, "budget")?;
    for tok in toks {
        let (name, ids) = tok.split_once('=').ok_or_else(|| err(ln, format!("bad parameter `{tok}`")))?;
        rec.params.push((name.to_string(), parse_ids(ln, ids)?));
    }
    for tok in edits.split(' ').filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = tok.split(':').collect();
        let edit = match parts.as_slice() {
            ["del", v] => Edit::DeleteVertex(VertexId(number(ln, v, "vertex")?)),
            ["set", u, v, m] => Edit::SetMultiplicity(
                VertexId(number(ln, u, "vertex")?),
                VertexId(number(ln, v, "vertex")?),
                number(ln, m, "multiplicity")?,
            ),
            _ => return Err(err(ln, format!("bad edit `{tok}`"))),
        };
        rec.edits.push(edit);
    }
    Ok(rec)
}

fn parse_outcome(ln: usize, line: &str) -> Result<TraceOutcome, ParseError> {
    if let Some(reason) = line.strip_prefix("result no-instance reason=") {
        return Ok(TraceOutcome::NoInstance { reason: reason.to_string() });
    }
    let fields = line
        .strip_prefix("result kernel ")
        .ok_or_else(|| err(ln, "expected `result kernel ...` or `result no-instance ...`"))?;
    let kv = key_values(ln, fields)?;
    let keys: Vec<&str> = kv.iter().map(|(k, _)| *k).collect();
    if keys != ["n", "m", "k", "s", "bound", "within"] {
        return Err(err(ln, "result fields must be n m k s bound within"));
    }
    Ok(TraceOutcome::Kernel {
        n: number(ln, kv[0].1, "n")?,
        m: number(ln, kv[1].1, "m")?,
        k: number(ln, kv[2].1, "k")?,
        s: number(ln, kv[3].1, "s")?,
        bound: number(ln, kv[4].1, "bound")?,
        within: number(ln, kv[5].1, "within")?,
    })
}

impl fmt::Display for TraceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("ctvd-trace n={} m={} k={}\n", self.n, self.m, self.k);
        for r in &self.trace.records {
            write_record(&mut out, r);
        }
        match &self.outcome {
            TraceOutcome::Kernel { n, m, k, s, bound, within } => {
                let _ = writeln!(out, "result kernel n={n} m={m} k={k} s={s} bound={bound} within={within}");
            }
            TraceOutcome::NoInstance { reason } => {
                let _ = writeln!(out, "result no-instance reason={reason}");
            }
        }
        f.write_str(&out)
    }
}
