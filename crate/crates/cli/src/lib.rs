//! The `mknf` command line.
//!
//! Every command reads a knowledge base, runs one engine operation and writes
//! a report to a single writer. Exit status: 0 for a positive answer, 1 for a
//! negative one, 2 for invalid input or a resource cap.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mknf_core::aft::{Approximator, LatticePair};
use mknf_core::headcut::enumerate_headcuts;
use mknf_core::oracles::partial_stable_bruteforce;
use mknf_core::partition::SaturationViolation;
use mknf_core::qfix::{check_ka_cap, ModelSet};
use mknf_core::{
    check_model, enumerate_models, is_saturated, parse_kb, parse_pair, parse_partition, AtomSet, CheckStatus,
    HeadCut, KnowledgeBase, ModelError, Partition, Reasoner, Witness,
};

#[derive(Parser, Debug)]
#[command(name = "mknf", version, about = "Three-valued MKNF model checking for disjunctive hybrid knowledge bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a partition is induced by a three-valued MKNF model.
    Check {
        #[command(flatten)]
        common: Common,
        /// Partition file, `T: ... . P: ... .`
        #[arg(long)]
        partition: PathBuf,
    },
    /// Enumerate every model partition.
    Models {
        #[command(flatten)]
        common: Common,
    },
    /// Well-founded pair of a normal knowledge base.
    Wellfounded {
        #[command(flatten)]
        common: Common,
        /// Also test this pair for being a model.
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// List the admissible head-cuts of a saturated partition.
    Headcuts {
        #[command(flatten)]
        common: Common,
        /// Partition file, `T: ... . P: ... .`
        #[arg(long)]
        partition: PathBuf,
    },
    /// Compare the model enumeration with the partial stable model oracle.
    Oracle {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Knowledge base file.
    #[arg(long)]
    pub kb: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Refuse to enumerate when the rules mention more atoms than this.
    #[arg(long, default_value_t = mknf_core::DEFAULT_KA_CAP, value_parser = positive)]
    pub ka_cap: usize,
    /// Refuse signatures with more atoms than this.
    #[arg(long, default_value_t = mknf_core::DEFAULT_SIG_CAP, value_parser = positive)]
    pub sig_cap: usize,
    /// Worker threads; 0 picks the number of CPUs.
    #[arg(long, env = "MKNF_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".to_owned()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Human,
    Json,
}

/// Process exit status.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Yes = 0,
    No = 1,
    InputError = 2,
}

/// Model enumeration used by `oracle`; replaceable for testing the harness.
pub type Engine = dyn Fn(&Reasoner<'_>, usize) -> Result<ModelSet, ModelError> + Sync;

/// Runs a parsed command line, writing the report to `out` and diagnostics to
/// `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    run_with_engine(cli, out, err, &enumerate_models)
}

pub fn run_with_engine(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write, engine: &Engine) -> Status {
    let result = dispatch(cli, engine).and_then(|(status, report)| {
        out.write_all(report.as_bytes()).context("writing report")?;
        Ok(status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            Status::InputError
        }
    }
}

fn dispatch(cli: &Cli, engine: &Engine) -> Result<(Status, String)> {
    let common = match &cli.command {
        Command::Check { common, .. }
        | Command::Models { common }
        | Command::Wellfounded { common, .. }
        | Command::Headcuts { common, .. }
        | Command::Oracle { common } => common,
    };
    let kb = load_kb(&common.kb)?;
    let reasoner = Reasoner::with_cap(&kb, common.sig_cap)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.jobs).build()?;
    pool.install(|| match &cli.command {
        Command::Check { partition, .. } => cmd_check(&reasoner, &load_partition(&kb, partition)?, common.format),
        Command::Models { .. } => cmd_models(&reasoner, common),
        Command::Wellfounded { pair, .. } => {
            let pair = pair.as_deref().map(|p| load_pair(&kb, p)).transpose()?;
            cmd_wellfounded(&reasoner, pair.as_ref(), common.format)
        }
        Command::Headcuts { partition, .. } => {
            cmd_headcuts(&reasoner, &load_partition(&kb, partition)?, common.format)
        }
        Command::Oracle { .. } => cmd_oracle(&reasoner, common, engine),
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_kb(path: &Path) -> Result<KnowledgeBase> {
    parse_kb(&read(path)?).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn load_partition(kb: &KnowledgeBase, path: &Path) -> Result<Partition> {
    parse_partition(kb, &read(path)?).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn load_pair(kb: &KnowledgeBase, path: &Path) -> Result<LatticePair> {
    let (lo, hi) = parse_pair(kb, &read(path)?).map_err(|e| anyhow!("{}:{e}", path.display()))?;
    Ok(LatticePair::new(lo, hi))
}

/// Atom names of `set` in K-atom declaration order.
fn names(kb: &KnowledgeBase, set: &AtomSet) -> Vec<String> {
    kb.ka_order().iter().filter(|a| set.contains(**a)).map(|&a| kb.name(a).to_owned()).collect()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Serialize)]
struct JsonPair {
    lo: Vec<String>,
    hi: Vec<String>,
}

impl JsonPair {
    fn new(kb: &KnowledgeBase, pair: &LatticePair) -> JsonPair {
        JsonPair { lo: names(kb, &pair.lo), hi: names(kb, &pair.hi) }
    }
}

fn cut_json(kb: &KnowledgeBase, cut: &HeadCut) -> Vec<(usize, String)> {
    cut.pairs().map(|(r, h)| (r, kb.name(h).to_owned())).collect()
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonWitness {
    Saturation { clause: u8, atom: Option<String> },
    BlockingRule { rule: usize },
    Fixpoint { cut: Vec<(usize, String)>, lfp: Vec<String> },
}

#[derive(Serialize)]
struct JsonVerdict {
    status: &'static str,
    cuts_checked: usize,
    witness: Option<JsonWitness>,
}

fn status_name(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Model => "Model",
        CheckStatus::NotSaturated => "NotSaturated",
        CheckStatus::EmptyH => "EmptyH",
        CheckStatus::FixpointMismatch => "FixpointMismatch",
    }
}

fn describe_violation(kb: &KnowledgeBase, v: SaturationViolation) -> String {
    match v {
        SaturationViolation::InconsistentP => "clause 1: OB(P) is inconsistent".to_owned(),
        SaturationViolation::EntailedOutsideT(a) => format!("clause 2: OB(T) entails {} which is not in T", kb.name(a)),
        SaturationViolation::EntailedOutsideP(a) => format!("clause 3: OB(P) entails {} which is not in P", kb.name(a)),
    }
}

pub fn cmd_check(reasoner: &Reasoner<'_>, part: &Partition, format: Format) -> Result<(Status, String)> {
    let kb = reasoner.kb();
    let verdict = check_model(reasoner, part);
    let status = if verdict.is_model() { Status::Yes } else { Status::No };
    let report = match format {
        Format::Json => json(&JsonVerdict {
            status: status_name(verdict.status),
            cuts_checked: verdict.cuts_checked,
            witness: verdict.witness.as_ref().map(|w| match w {
                Witness::Saturation(v) => {
                    JsonWitness::Saturation { clause: v.clause(), atom: v.witness().map(|a| kb.name(a).to_owned()) }
                }
                Witness::BlockingRule(rule) => JsonWitness::BlockingRule { rule: *rule },
                Witness::Fixpoint { cut, lfp } => JsonWitness::Fixpoint { cut: cut_json(kb, cut), lfp: names(kb, lfp) },
            }),
        })?,
        Format::Human => {
            let mut s = format!("{}\n", status_name(verdict.status));
            match &verdict.witness {
                None => {}
                Some(Witness::Saturation(v)) => writeln!(s, "not saturated, {}", describe_violation(kb, *v))?,
                Some(Witness::BlockingRule(rule)) => writeln!(s, "rule {rule} is required but has no admissible head")?,
                Some(Witness::Fixpoint { cut, lfp }) => {
                    writeln!(s, "head-cut {} has fixpoint {}", cut.display(kb), kb.display_set(lfp))?;
                    writeln!(s, "expected P = {}", kb.display_set(part.p()))?;
                }
            }
            writeln!(s, "head-cuts checked: {}", verdict.cuts_checked)?;
            s
        }
    };
    Ok((status, report))
}

#[derive(Serialize, PartialEq, Eq, PartialOrd, Ord, Clone, Debug)]
struct JsonModel {
    #[serde(rename = "true")]
    true_: Vec<String>,
    undef: Vec<String>,
    #[serde(rename = "false")]
    false_: Vec<String>,
}

impl JsonModel {
    fn new(kb: &KnowledgeBase, part: &Partition) -> JsonModel {
        JsonModel {
            true_: names(kb, part.t()),
            undef: names(kb, &part.undefined()),
            false_: names(kb, &kb.ka().difference(part.p())),
        }
    }
}

#[derive(Serialize)]
struct JsonModels {
    models: Vec<JsonModel>,
    candidates_checked: u64,
}

pub fn cmd_models(reasoner: &Reasoner<'_>, common: &Common) -> Result<(Status, String)> {
    let kb = reasoner.kb();
    let set = enumerate_models(reasoner, common.ka_cap)?;
    let report = match common.format {
        Format::Json => json(&JsonModels {
            models: set.models.iter().map(|p| JsonModel::new(kb, p)).collect(),
            candidates_checked: set.candidates_checked,
        })?,
        Format::Human => {
            let mut s = String::new();
            for p in &set.models {
                writeln!(s, "{}", p.display(kb))?;
            }
            writeln!(s, "{} model(s), {} candidate(s) checked", set.models.len(), set.candidates_checked)?;
            s
        }
    };
    Ok((Status::Yes, report))
}

#[derive(Serialize)]
struct JsonQuery {
    lo: Vec<String>,
    hi: Vec<String>,
    stable_fixpoint: bool,
    model: bool,
}

#[derive(Serialize)]
struct JsonWellFounded {
    well_founded: JsonPair,
    model: bool,
    query: Option<JsonQuery>,
}

pub fn cmd_wellfounded(reasoner: &Reasoner<'_>, query: Option<&LatticePair>, format: Format) -> Result<(Status, String)> {
    let kb = reasoner.kb();
    let approx = Approximator::new(reasoner.clone())?;
    let wf = approx.well_founded();
    let wf_model = wf.is_consistent() && approx.check_model_normal(&wf)?;
    let query = query
        .map(|q| -> Result<_> { Ok((q, approx.is_stable_fixpoint(q), approx.check_model_normal(q)?)) })
        .transpose()?;
    let status = match &query {
        Some((_, _, model)) if !model => Status::No,
        None if !wf_model => Status::No,
        _ => Status::Yes,
    };
    let report = match format {
        Format::Json => json(&JsonWellFounded {
            well_founded: JsonPair::new(kb, &wf),
            model: wf_model,
            query: query.map(|(q, stable, model)| JsonQuery {
                lo: names(kb, &q.lo),
                hi: names(kb, &q.hi),
                stable_fixpoint: stable,
                model,
            }),
        })?,
        Format::Human => {
            let mut s = format!("well-founded: {}\n", wf.display(kb));
            writeln!(s, "model: {}", if wf_model { "yes" } else { "no" })?;
            if let Some((q, stable, model)) = query {
                writeln!(s, "pair {}: stable fixpoint: {}, model: {}", q.display(kb), yes_no(stable), yes_no(model))?;
            }
            s
        }
    };
    Ok((status, report))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct JsonHeadcuts {
    saturated: bool,
    violation: Option<JsonWitness>,
    headcuts: Vec<Vec<(usize, String)>>,
}

pub fn cmd_headcuts(reasoner: &Reasoner<'_>, part: &Partition, format: Format) -> Result<(Status, String)> {
    let kb = reasoner.kb();
    let violation = is_saturated(reasoner, part).violation;
    let cuts: Vec<HeadCut> =
        if violation.is_some() { Vec::new() } else { enumerate_headcuts(kb, part).collect() };
    let status = if violation.is_some() { Status::No } else { Status::Yes };
    let report = match format {
        Format::Json => json(&JsonHeadcuts {
            saturated: violation.is_none(),
            violation: violation
                .map(|v| JsonWitness::Saturation { clause: v.clause(), atom: v.witness().map(|a| kb.name(a).to_owned()) }),
            headcuts: cuts.iter().map(|c| cut_json(kb, c)).collect(),
        })?,
        Format::Human => match violation {
            Some(v) => format!("not saturated, {}\n", describe_violation(kb, v)),
            None if cuts.is_empty() => "EMPTY\n".to_owned(),
            None => cuts.iter().map(|c| format!("{}\n", c.display(kb))).collect(),
        },
    };
    Ok((status, report))
}

#[derive(Serialize)]
struct JsonOracle {
    equal: bool,
    engine_only: Vec<JsonModel>,
    oracle_only: Vec<JsonModel>,
    models: usize,
}

pub fn cmd_oracle(reasoner: &Reasoner<'_>, common: &Common, engine: &Engine) -> Result<(Status, String)> {
    let kb = reasoner.kb();
    if !kb.ontology().is_empty() {
        return Err(ModelError::NonEmptyOntology.into());
    }
    check_ka_cap(kb, common.ka_cap)?;
    let ours: BTreeSet<JsonModel> = engine(reasoner, common.ka_cap)?.models.iter().map(|p| JsonModel::new(kb, p)).collect();
    let theirs: BTreeSet<JsonModel> =
        partial_stable_bruteforce(kb, common.ka_cap)?.iter().map(|p| JsonModel::new(kb, p)).collect();
    let engine_only: Vec<JsonModel> = ours.difference(&theirs).cloned().collect();
    let oracle_only: Vec<JsonModel> = theirs.difference(&ours).cloned().collect();
    let equal = engine_only.is_empty() && oracle_only.is_empty();
    let status = if equal { Status::Yes } else { Status::No };
    let report = match common.format {
        Format::Json => json(&JsonOracle { equal, engine_only, oracle_only, models: ours.len() })?,
        Format::Human => {
            if equal {
                format!("identical: {} partial stable model(s)\n", ours.len())
            } else {
                let mut s = "DIFFERENT\n".to_owned();
                let show = |m: &JsonModel| format!("T: {}. P: {}.", m.true_.join(", "), [&m.true_[..], &m.undef[..]].concat().join(", "));
                for m in &engine_only {
                    writeln!(s, "engine only: {}", show(m))?;
                }
                for m in &oracle_only {
                    writeln!(s, "oracle only: {}", show(m))?;
                }
                s
            }
        }
    };
    Ok((status, report))
}
