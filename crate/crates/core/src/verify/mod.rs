//! Seeded verification suites behind `greene verify`.
//!
//! Every identity runs a fixed list of catalog instances and `trials`
//! random trials. Random trial `t` draws from `ChaCha8Rng` seeded with
//! `seed + t * 0x9E3779B97F4A7C15` (wrapping), so any single trial can be
//! rerun in isolation. Trials run in parallel; outcomes are reported in
//! instance order.

mod suites;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Assignment;
use crate::exec::Strategy;
use crate::greene::{greene_product, ProductEngine};
use crate::poset::{Limits, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Prop5,
    Prop6,
    GreeneFormula,
    NdStructure,
    Contraction,
    Partition,
    Arnold,
    DdForms,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Prop1,
        Identity::Prop2,
        Identity::Prop3,
        Identity::Prop4,
        Identity::Prop5,
        Identity::Prop6,
        Identity::GreeneFormula,
        Identity::NdStructure,
        Identity::Contraction,
        Identity::Partition,
        Identity::Arnold,
        Identity::DdForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Prop1 => "prop1",
            Identity::Prop2 => "prop2",
            Identity::Prop3 => "prop3",
            Identity::Prop4 => "prop4",
            Identity::Prop5 => "prop5",
            Identity::Prop6 => "prop6",
            Identity::GreeneFormula => "greene-formula",
            Identity::NdStructure => "nd-structure",
            Identity::Contraction => "contraction",
            Identity::Partition => "partition",
            Identity::Arnold => "arnold",
            Identity::DdForms => "dd-forms",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

/// One checked instance: a catalog entry or a random trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Instance {
    Catalog(usize),
    Trial(usize),
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Catalog(i) => write!(f, "catalog-{i}"),
            Instance::Trial(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Instance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad instance `{s}`: expected N or catalog-N");
        match s.strip_prefix("catalog-") {
            Some(i) => i.parse().map(Instance::Catalog).map_err(|_| bad()),
            None => s.parse().map(Instance::Trial).map_err(|_| bad()),
        }
    }
}

#[derive(Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub limits: Limits,
    /// Run only this instance.
    pub only: Option<Instance>,
    /// Engine checked against brute force by `greene-formula`.
    pub engine: ProductEngine,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, trials: 100, limits: Limits::default(), only: None, engine: greene_product }
    }
}

impl fmt::Debug for VerifyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VerifyConfig")
            .field("seed", &self.seed)
            .field("trials", &self.trials)
            .field("limits", &self.limits)
            .field("only", &self.only)
            .finish_non_exhaustive()
    }
}

pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Data needed to reproduce a failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub description: String,
    pub poset: Option<String>,
    pub assignment: Option<String>,
}

impl Witness {
    pub(crate) fn new(description: impl Into<String>) -> Self {
        Witness { description: description.into(), ..Default::default() }
    }

    pub(crate) fn with_poset(mut self, p: &Poset) -> Self {
        self.poset = Some(p.to_string());
        self
    }

    pub(crate) fn with_assignment(mut self, p: Option<&Poset>, a: &Assignment) -> Self {
        let parts: Vec<String> = a
            .iter()
            .map(|(&v, x)| {
                let name = p.map_or_else(|| format!("x{v}"), |p| p.var_name(v));
                format!("{name}={x}")
            })
            .collect();
        self.assignment = Some(parts.join(" "));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The instance exceeds the configured size limit.
    Skip(String),
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub instance: Instance,
    pub verdict: Verdict,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub identity: Identity,
    pub seed: u64,
    pub trials: usize,
    pub limits: Limits,
    pub outcomes: Vec<Outcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| matches!(o.verdict, Verdict::Fail(_)))
    }

    pub fn skipped(&self) -> usize {
        self.outcomes.iter().filter(|o| matches!(o.verdict, Verdict::Skip(_))).count()
    }

    /// Instances that ran to a verdict.
    pub fn checked(&self) -> usize {
        self.outcomes.len() - self.skipped()
    }

    /// Command line that reruns one instance.
    pub fn rerun_command(&self, instance: Instance) -> String {
        let mut cmd = format!("greene verify {} --seed {} --only-trial {}", self.identity, self.seed, instance);
        if self.limits != Limits::default() {
            write!(cmd, " --max-elems {} --unsafe-size", self.limits.max_elems).unwrap();
        }
        cmd
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let ran = |o: &&Outcome| !matches!(o.verdict, Verdict::Skip(_));
        let catalog = self.outcomes.iter().filter(ran).filter(|o| matches!(o.instance, Instance::Catalog(_))).count();
        writeln!(out, "verify {} seed={} trials={}", self.identity, self.seed, self.trials).unwrap();
        for o in self.failures() {
            let Verdict::Fail(msg) = &o.verdict else { continue };
            writeln!(out, "COUNTEREXAMPLE instance {}: {msg}", o.instance).unwrap();
            writeln!(out, "  seed: {}", self.seed).unwrap();
            writeln!(out, "  instance: {}", o.witness.description).unwrap();
            if let Some(a) = &o.witness.assignment {
                writeln!(out, "  assignment: {a}").unwrap();
            }
            if let Some(p) = &o.witness.poset {
                writeln!(out, "  poset:").unwrap();
                for line in p.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
            writeln!(out, "  rerun: {}", self.rerun_command(o.instance)).unwrap();
        }
        let failed = self.failures().count();
        if self.skipped() > 0 {
            writeln!(out, "skipped {} instances over the size limit {}", self.skipped(), self.limits.max_elems).unwrap();
        }
        writeln!(
            out,
            "{}: {} instances ({} catalog, {} random), {} counterexamples: {}",
            self.identity,
            self.checked(),
            catalog,
            self.checked() - catalog,
            failed,
            if failed == 0 { "VERIFIED" } else { "FAILED" }
        )
        .unwrap();
        out
    }

    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "identity={}", self.identity).unwrap();
        writeln!(out, "seed={}", self.seed).unwrap();
        writeln!(out, "trials={}", self.trials).unwrap();
        writeln!(out, "checked={}", self.checked()).unwrap();
        writeln!(out, "skipped={}", self.skipped()).unwrap();
        for o in self.failures() {
            let Verdict::Fail(msg) = &o.verdict else { continue };
            let i = o.instance;
            writeln!(out, "counterexample.{i}.message={msg}").unwrap();
            writeln!(out, "counterexample.{i}.instance={}", o.witness.description).unwrap();
            if let Some(a) = &o.witness.assignment {
                writeln!(out, "counterexample.{i}.assignment={a}").unwrap();
            }
            if let Some(p) = &o.witness.poset {
                writeln!(out, "counterexample.{i}.poset={}", p.trim_end().replace('\n', "; ")).unwrap();
            }
            writeln!(out, "counterexample.{i}.rerun={}", self.rerun_command(i)).unwrap();
        }
        writeln!(out, "counterexamples={}", self.failures().count()).unwrap();
        writeln!(out, "status={}", if self.passed() { "verified" } else { "failed" }).unwrap();
        out
    }
}

/// Runs the catalog instances and random trials of `identity`.
pub fn verify(identity: Identity, cfg: &VerifyConfig) -> VerifyReport {
    verify_with(identity, cfg, Strategy::default())
}

pub fn verify_with(identity: Identity, cfg: &VerifyConfig, strategy: Strategy) -> VerifyReport {
    let catalog = suites::catalog_size(identity);
    let instances: Vec<Instance> = match cfg.only {
        Some(i) => vec![i],
        None => (0..catalog).map(Instance::Catalog).chain((0..cfg.trials).map(Instance::Trial)).collect(),
    };
    let outcomes = strategy.map(&instances, |&inst| {
        let (verdict, witness) = match inst {
            Instance::Catalog(i) if i >= catalog => {
                (Verdict::Fail(format!("no catalog instance {i}")), Witness::new("out of range"))
            }
            _ => suites::run(identity, inst, cfg),
        };
        Outcome { instance: inst, verdict, witness }
    });
    VerifyReport { identity, seed: cfg.seed, trials: cfg.trials, limits: cfg.limits, outcomes }
}
