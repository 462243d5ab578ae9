//! The subcommands. Each returns the process exit status; errors map to 2.

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use ctvd_core::generate::{gnp, planted, random_multigraph, PlantedParams};
use ctvd_core::kernel::bounds::{kernel_bound, BoundReport};
use ctvd_core::kernel::{kernelize_with, Faults, KernelError, KernelResult};
use ctvd_core::solvers::{approx_deletion_set, brute_force, minimum_deletion_set, APPROX_FACTOR};
use ctvd_core::{Instance, MultiGraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::format::{EdgeListDocument, ParseError, TraceDocument};

pub const YES: u8 = 0;
pub const NO: u8 = 1;
pub const FAILURE: u8 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let doc = EdgeListDocument::parse(&text).map_err(|source| CliError::Parse { path: path.into(), source })?;
    Ok(doc.to_instance())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

fn ids(set: &VertexSet) -> String {
    if set.is_empty() {
        return "-".into();
    }
    set.iter().map(|v| v.0.to_string()).collect::<Vec<_>>().join(" ")
}

/// Kernelizes `input`. The kernel goes to `output` (stdout when absent) with
/// vertices renumbered; the trace uses the input's vertex numbers.
pub fn kernelize(
    input: &Path,
    output: Option<&Path>,
    trace: Option<&Path>,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let inst = read_instance(input)?;
    let run = kernelize_with(&inst, Faults::default())?;
    let doc = EdgeListDocument::from_instance(&run.result.instance());
    match output {
        Some(p) => write_file(p, &doc.to_string())?,
        None => write!(out, "{doc}")?,
    }
    if let Some(p) = trace {
        write_file(p, &TraceDocument::new(&inst, &run).to_string())?;
    }
    if output.is_some() {
        match &run.result {
            KernelResult::Kernel(kernel) => writeln!(
                out,
                "kernel: n={} k={} |S|={} bound={}",
                kernel.instance.graph.vertex_count(),
                kernel.instance.k,
                kernel.s.len(),
                kernel.bounds.bound
            )?,
            KernelResult::NoInstance { reason } => writeln!(out, "no-instance: {reason}")?,
        }
    }
    Ok(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    Approx,
}

/// Largest instance the exact solver handles without a warning.
pub const EXACT_WARN_ABOVE: usize = 20;

pub fn solve(input: &Path, mode: SolveMode, out: &mut dyn Write, diag: &mut dyn Write) -> Result<u8, CliError> {
    let inst = read_instance(input)?;
    let n = inst.graph.vertex_count();
    match mode {
        SolveMode::Exact => {
            if n > EXACT_WARN_ABOVE {
                writeln!(diag, "warning: exact search on {n} vertices may take a long time")?;
            }
            let r = brute_force(&inst.graph, inst.k);
            match r.solution {
                Some(x) => {
                    writeln!(out, "YES\nwitness: {}", ids(&x))?;
                    Ok(YES)
                }
                None => {
                    writeln!(out, "NO")?;
                    Ok(NO)
                }
            }
        }
        SolveMode::Approx => {
            let m = approx_deletion_set(&inst.graph);
            writeln!(out, "modulator: {}\nfactor: {}", ids(&m.s), m.factor)?;
            if m.s.len() <= inst.k {
                writeln!(out, "YES")?;
                Ok(YES)
            } else if m.s.len() > m.factor * inst.k {
                writeln!(out, "NO")?;
                Ok(NO)
            } else {
                writeln!(out, "UNDECIDED")?;
                Ok(YES)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub count: usize,
    pub max_n: usize,
    pub max_k: usize,
    pub seed: u64,
    pub faults: Faults,
}

/// Seed of the `i`-th instance of a campaign.
pub fn instance_seed(seed: u64, i: u64) -> u64 {
    seed ^ (i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Random instance with at most `max_n` vertices and budget at most `max_k`,
/// cycling through sparse/dense simple graphs, multigraphs and planted graphs.
/// The budget is drawn around the optimum so both answers are common.
pub fn campaign_instance(i: u64, seed: u64, max_n: usize, max_k: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, i));
    let n = rng.gen_range(0..=max_n);
    let p = rng.gen_range(0.05..0.7);
    let g = match i % 3 {
        0 => gnp(n, p, &mut rng),
        1 => random_multigraph(n, p, 0.15, 0.05, &mut rng),
        _ => {
            let mut params = PlantedParams::new(rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=max_k.min(3)));
            params.max_clique = 5;
            params.max_tree = 5;
            params.noise_density = rng.gen_range(0.05..0.4);
            let (g, _) = planted(&params, &mut rng);
            let keep: VertexSet = g.vertices().take(max_n).collect();
            g.induced(&keep)
        }
    };
    let opt = minimum_deletion_set(&g).len() as i64;
    let k = (opt + rng.gen_range(-1..=1)).clamp(0, max_k as i64);
    Instance::new(g, k as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub index: u64,
    pub instance: Instance,
    pub detail: String,
}

fn feasible(g: &MultiGraph, k: usize) -> bool {
    brute_force(g, k).feasible
}

/// Checks one instance: feasibility before and after kernelization agree and
/// the trace replays to the kernel.
pub fn verify_instance(inst: &Instance, faults: Faults) -> Result<(), String> {
    let run = kernelize_with(inst, faults).map_err(|e| format!("kernelize failed: {e}"))?;
    let before = feasible(&inst.graph, inst.k);
    let after = match &run.result {
        KernelResult::Kernel(kernel) => {
            let (g, k) = run
                .trace
                .replay(&inst.graph, inst.k as i64)
                .map_err(|e| format!("trace does not replay: {e}"))?;
            if g != kernel.instance.graph || k != kernel.instance.k as i64 {
                return Err("trace replay differs from the kernel".into());
            }
            feasible(&kernel.instance.graph, kernel.instance.k)
        }
        KernelResult::NoInstance { .. } => false,
    };
    if before != after {
        return Err(format!("feasible before: {before}, after: {after}"));
    }
    Ok(())
}

pub fn verify_campaign(opts: &VerifyOptions) -> Vec<VerifyFailure> {
    (0..opts.count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let inst = campaign_instance(i, opts.seed, opts.max_n, opts.max_k);
            verify_instance(&inst, opts.faults)
                .err()
                .map(|detail| VerifyFailure { index: i, instance: inst, detail })
        })
        .collect()
}

pub fn verify(opts: &VerifyOptions, out: &mut dyn Write) -> Result<u8, CliError> {
    let failures = verify_campaign(opts);
    writeln!(
        out,
        "verify: {} instances, {} passed, {} failed",
        opts.count,
        opts.count - failures.len(),
        failures.len()
    )?;
    if let Some(f) = failures.first() {
        writeln!(out, "first failure: instance {} ({})", f.index, f.detail)?;
        write!(out, "{}", EdgeListDocument::from_instance(&f.instance))?;
        return Ok(FAILURE);
    }
    Ok(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenOptions {
    pub cliques: usize,
    pub trees: usize,
    pub noise: usize,
    pub k: usize,
    pub seed: u64,
}

pub fn generate(opts: &GenOptions) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (g, _) = planted(&PlantedParams::new(opts.cliques, opts.trees, opts.noise), &mut rng);
    Instance::new(g, opts.k)
}

pub fn gen(opts: &GenOptions, output: Option<&Path>, out: &mut dyn Write) -> Result<u8, CliError> {
    let doc = EdgeListDocument::from_instance(&generate(opts)).to_string();
    match output {
        Some(p) => write_file(p, &doc)?,
        None => out.write_all(doc.as_bytes())?,
    }
    Ok(0)
}

/// Parses `a..b` or `a..=b`, both inclusive; `b < a` gives an empty range.
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("k-range must look like `1..4`, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsRow {
    pub k: usize,
    pub input_n: usize,
    pub kernel_n: usize,
    pub bound: u128,
    pub rules_fired: usize,
    /// `None` when the instance was rejected.
    pub report: Option<BoundReport>,
}

impl StatsRow {
    pub fn within_bound(&self) -> bool {
        self.kernel_n as u128 <= self.bound && self.report.as_ref().is_none_or(BoundReport::within_bound)
    }
}

pub const STATS_HEADER: &str = "k,input_n,kernel_n,bound,rules_fired";

/// The planted instance for repetition `rep` at budget `k`: up to `k + 2`
/// cliques and trees and `k` noise vertices.
pub fn stats_instance(k: usize, rep: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, (k as u64) << 32 | rep as u64));
    let params = PlantedParams::new(rng.gen_range(1..=k + 2), rng.gen_range(1..=k + 2), k);
    Instance::new(planted(&params, &mut rng).0, k)
}

pub fn stats_rows(k_range: RangeInclusive<usize>, reps: usize, seed: u64) -> Result<Vec<StatsRow>, CliError> {
    let jobs: Vec<(usize, usize)> = k_range.flat_map(|k| (0..reps).map(move |r| (k, r))).collect();
    jobs.into_par_iter()
        .map(|(k, rep)| {
            let inst = stats_instance(k, rep, seed);
            let run = kernelize_with(&inst, Faults::default())?;
            let rules_fired = run.trace.rules_fired();
            let input_n = inst.graph.vertex_count();
            Ok(match run.result {
                KernelResult::Kernel(kernel) => StatsRow {
                    k,
                    input_n,
                    kernel_n: kernel.instance.graph.vertex_count(),
                    bound: kernel.bounds.bound,
                    rules_fired,
                    report: Some(kernel.bounds),
                },
                // The canonical no-instance, measured against the largest
                // modulator the engine accepts.
                KernelResult::NoInstance { .. } => StatsRow {
                    k,
                    input_n,
                    kernel_n: run.result.instance().graph.vertex_count(),
                    bound: kernel_bound(k, APPROX_FACTOR * k),
                    rules_fired,
                    report: None,
                },
            })
        })
        .collect()
}

pub fn stats(
    k_range: RangeInclusive<usize>,
    reps: usize,
    seed: u64,
    csv: Option<&Path>,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> Result<u8, CliError> {
    let rows = stats_rows(k_range, reps, seed)?;
    let mut text = format!("{STATS_HEADER}\n");
    for r in &rows {
        text.push_str(&format!("{},{},{},{},{}\n", r.k, r.input_n, r.kernel_n, r.bound, r.rules_fired));
    }
    match csv {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    let over: Vec<&StatsRow> = rows.iter().filter(|r| !r.within_bound()).collect();
    for r in &over {
        writeln!(diag, "bound violated: {r:?}")?;
    }
    Ok(if over.is_empty() { 0 } else { FAILURE })
}
