//! Verification suites: every checkable identity evaluated exactly on all instances
//! within bounds, with failures reported as counterexamples.

mod algebra;
mod counting;
mod expr;
mod forms;
mod kronecker;
mod torus;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{QcaError, Result};
use crate::ffrep::{Catalog, RepClassId};
use crate::hall::{DecoratedObject, HallAlgebra};

pub use kronecker::{kronecker_example, KroneckerReport};

/// Result of one instance.
#[derive(Clone, Debug)]
pub enum Outcome {
    Pass,
    Fail(Value),
    Skip(String),
}

impl Outcome {
    /// Pass iff `lhs == rhs`; otherwise a counterexample with both sides rendered.
    pub fn compare<T: PartialEq + fmt::Display>(instance: impl Into<Value>, lhs: &T, rhs: &T) -> Outcome {
        if lhs == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail(json!({
                "instance": instance.into(),
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
            }))
        }
    }

    /// The first failing comparison, or pass.
    pub fn all(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
        for p in parts {
            if !matches!(p, Outcome::Pass) {
                return p;
            }
        }
        Outcome::Pass
    }
}

/// Suite report; `suites` is filled only by `all`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub context_hash: String,
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub counterexamples: Vec<Value>,
    /// Why instances were skipped, with counts.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub skip_reasons: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<Report>,
}

impl Report {
    pub fn new(suite: &str, context_hash: &str) -> Self {
        Report {
            suite: suite.to_string(),
            context_hash: context_hash.to_string(),
            instances: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
            skip_reasons: BTreeMap::new(),
            suites: Vec::new(),
        }
    }

    pub fn record(&mut self, o: Outcome) {
        self.instances += 1;
        match o {
            Outcome::Pass => self.passed += 1,
            Outcome::Fail(v) => {
                self.failed += 1;
                self.counterexamples.push(v);
            }
            Outcome::Skip(why) => {
                self.skipped += 1;
                *self.skip_reasons.entry(why).or_insert(0) += 1;
            }
        }
    }

    /// Adds a sub-report's counts; counterexamples are tagged with the sub-suite.
    pub fn absorb(&mut self, sub: Report) {
        self.instances += sub.instances;
        self.passed += sub.passed;
        self.failed += sub.failed;
        self.skipped += sub.skipped;
        for c in &sub.counterexamples {
            self.counterexamples.push(json!({"suite": sub.suite, "counterexample": c}));
        }
        for (why, k) in &sub.skip_reasons {
            *self.skip_reasons.entry(format!("{}: {why}", sub.suite)).or_insert(0) += k;
        }
        self.suites.push(sub);
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<15} {:>6} instances  {:>6} passed  {:>4} failed  {:>5} skipped",
            self.suite, self.instances, self.passed, self.failed, self.skipped
        )
    }
}

/// Named suites accepted by `check --suite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Prop41,
    Cor49,
    Cor410,
    Cor411,
    DeltaHom,
    PsiFactor,
    PsiHom,
    MuHom,
    ThmDyggs,
    Cor57,
    ThmDdlz,
    Cor76,
    Green,
    Lemma42,
    Lemma72,
    Lemma73,
    ArLemma,
    HallAssoc,
    HallMulAssoc,
    SplitSum,
    Riedtmann,
    ArFormula,
    Orbit,
    All,
}

impl Suite {
    pub const ALL: [Suite; 23] = [
        Suite::Prop41,
        Suite::Cor49,
        Suite::Cor410,
        Suite::Cor411,
        Suite::DeltaHom,
        Suite::PsiFactor,
        Suite::PsiHom,
        Suite::MuHom,
        Suite::ThmDyggs,
        Suite::Cor57,
        Suite::ThmDdlz,
        Suite::Cor76,
        Suite::Green,
        Suite::Lemma42,
        Suite::Lemma72,
        Suite::Lemma73,
        Suite::ArLemma,
        Suite::HallAssoc,
        Suite::HallMulAssoc,
        Suite::SplitSum,
        Suite::Riedtmann,
        Suite::ArFormula,
        Suite::Orbit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop41 => "prop41",
            Suite::Cor49 => "cor49",
            Suite::Cor410 => "cor410",
            Suite::Cor411 => "cor411",
            Suite::DeltaHom => "delta-hom",
            Suite::PsiFactor => "psi-factor",
            Suite::PsiHom => "psi-hom",
            Suite::MuHom => "mu-hom",
            Suite::ThmDyggs => "thm-dyggs",
            Suite::Cor57 => "cor57",
            Suite::ThmDdlz => "thm-ddlz",
            Suite::Cor76 => "cor76",
            Suite::Green => "green",
            Suite::Lemma42 => "lemma42",
            Suite::Lemma72 => "lemma72",
            Suite::Lemma73 => "lemma73",
            Suite::ArLemma => "ar-lemma",
            Suite::HallAssoc => "hall-assoc",
            Suite::HallMulAssoc => "hall-mul-assoc",
            Suite::SplitSum => "split-sum",
            Suite::Riedtmann => "riedtmann",
            Suite::ArFormula => "ar-formula",
            Suite::Orbit => "orbit",
            Suite::All => "all",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Suite::ALL.iter().map(|s| s.name()).chain(["all"]).collect()
    }
}

impl FromStr for Suite {
    type Err = QcaError;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| QcaError::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::names().join(", "))))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Instance bounds for the suites.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Per-vertex cap on module dimension vectors.
    pub cap: usize,
    /// Optional cap on the total dimension.
    pub total_cap: Option<usize>,
    /// Seed for the sampled suites.
    pub seed: u64,
    /// Samples per sampled suite.
    pub samples: usize,
    /// Worker threads for instance evaluation.
    pub jobs: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            cap: 1,
            total_cap: None,
            seed: 0,
            samples: 200,
            jobs: 1,
        }
    }
}

/// Runs suites against one catalog.
pub struct Verifier {
    hall: HallAlgebra,
    cfg: CheckConfig,
}

impl Verifier {
    pub fn new(cat: Arc<Catalog>, cfg: CheckConfig) -> Self {
        Verifier {
            hall: HallAlgebra::new(cat),
            cfg,
        }
    }

    pub fn from_hall(hall: HallAlgebra, cfg: CheckConfig) -> Self {
        Verifier { hall, cfg }
    }

    pub fn hall(&self) -> &HallAlgebra {
        &self.hall
    }

    pub fn catalog(&self) -> &Catalog {
        self.hall.catalog()
    }

    pub fn config(&self) -> &CheckConfig {
        &self.cfg
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Module classes within the configured caps, zero included.
    pub fn modules(&self) -> Result<Vec<RepClassId>> {
        self.catalog().classes_up_to(self.cfg.cap, self.cfg.total_cap)
    }

    /// Multiplicity vectors with at most one entry.
    pub fn shifts(&self) -> Vec<Vec<u32>> {
        let m = self.hall.context().m;
        let mut out = vec![vec![0u32; m]];
        for v in 0..m {
            let mut c = vec![0u32; m];
            c[v] = 1;
            out.push(c);
        }
        out
    }

    /// Decorated objects `I[−1]⊕M⊕P[1]` with `M` within caps and `I`, `P` of at most one summand.
    pub fn decorated(&self) -> Result<Vec<DecoratedObject>> {
        let shifts = self.shifts();
        let mods = self.modules()?;
        let mut out = Vec::new();
        for i in &shifts {
            for m in &mods {
                for p in &shifts {
                    out.push(DecoratedObject::new(i.clone(), m.clone(), p.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn describe(&self, id: &RepClassId) -> String {
        let name = self.catalog().describe(id);
        if name == id.to_string() {
            name
        } else {
            format!("{name}={id}")
        }
    }

    /// Evaluates `f` on every item, in order; resource errors become skips and other errors failures.
    fn run<I: Sync>(&self, suite: Suite, items: &[I], f: impl Fn(&I) -> Result<Outcome> + Sync) -> Report {
        let eval = |it: &I| match f(it) {
            Ok(o) => o,
            Err(e) if e.is_resource() => Outcome::Skip(e.to_string()),
            Err(e) => Outcome::Fail(json!({"error": e.to_string()})),
        };
        let outcomes: Vec<Outcome> = if self.cfg.jobs <= 1 || items.len() < 2 {
            items.iter().map(eval).collect()
        } else {
            let chunk = items.len().div_ceil(self.cfg.jobs);
            std::thread::scope(|s| {
                let handles: Vec<_> = items
                    .chunks(chunk)
                    .map(|c| s.spawn(|| c.iter().map(eval).collect::<Vec<_>>()))
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        let mut r = Report::new(suite.name(), &self.hall.context().hash());
        for o in outcomes {
            r.record(o);
        }
        r
    }

    /// A report for a suite whose instance domain could not be built.
    fn failed_setup(&self, suite: Suite, e: QcaError) -> Report {
        let mut r = Report::new(suite.name(), &self.hall.context().hash());
        if e.is_resource() {
            r.record(Outcome::Skip(e.to_string()));
        } else {
            r.record(Outcome::Fail(json!({"error": e.to_string()})));
        }
        r
    }

    pub fn check(&self, suite: Suite) -> Report {
        let res = match suite {
            Suite::All => {
                let mut r = Report::new("all", &self.hall.context().hash());
                for s in Suite::ALL {
                    r.absorb(self.check(s));
                }
                return r;
            }
            Suite::Prop41 => self.prop41(),
            Suite::Cor49 => self.cor49(),
            Suite::Cor410 => self.cor410(),
            Suite::Cor411 => self.cor411(),
            Suite::DeltaHom => self.delta_hom(),
            Suite::PsiFactor => self.psi_factor(),
            Suite::PsiHom => self.psi_hom(),
            Suite::MuHom => Ok(self.mu_hom()),
            Suite::ThmDyggs => self.thm_dyggs(),
            Suite::Cor57 => self.cor57(),
            Suite::ThmDdlz => self.thm_ddlz(),
            Suite::Cor76 => self.cor76(),
            Suite::Green => self.green(),
            Suite::Lemma42 => Ok(self.lemma42()),
            Suite::Lemma72 => Ok(self.lemma72()),
            Suite::Lemma73 => self.lemma73(),
            Suite::ArLemma => Ok(self.ar_lemma()),
            Suite::HallAssoc => self.hall_assoc(),
            Suite::HallMulAssoc => self.hall_mul_assoc(),
            Suite::SplitSum => self.split_sum(),
            Suite::Riedtmann => self.riedtmann(),
            Suite::ArFormula => self.ar_formula(),
            Suite::Orbit => self.orbit(),
        };
        res.unwrap_or_else(|e| self.failed_setup(suite, e))
    }
}
