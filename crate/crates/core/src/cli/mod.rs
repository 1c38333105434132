//! The `qca` command line: argument parsing, context loading, catalog persistence
//! and report emission. [`run`] is the whole program minus process exit.

mod cache;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{QcaError, Result};
use crate::ffrep::{Bounds, Catalog};
use crate::hall::{element_json, DecoratedObject, HallAlgebra};
use crate::quiver::{QuiverContext, SUPPORTED_Q0};
use crate::torus::TorusElement;
use crate::verify::{kronecker_example, CheckConfig, Report, Suite, Verifier};

pub use cache::{cache_path, load_cache, save_cache, CACHE_VERSION};

/// Environment variable naming the catalog cache directory.
pub const CACHE_ENV: &str = "QCA_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "qca", version, about = "Exact quantum cluster characters and derived Hall algebra checks")]
pub struct Cli {
    /// Base field size q0 (overrides the context file).
    #[arg(long, global = true)]
    pub q0: Option<u32>,
    /// Per-vertex cap on module dimension vectors.
    #[arg(long, global = true, default_value_t = 1)]
    pub cap: usize,
    /// Cap on total module dimension.
    #[arg(long, global = true)]
    pub total_cap: Option<usize>,
    /// Enumeration bounds, e.g. `rep=1048576,hom=1048576,sub=4194304`.
    #[arg(long, global = true)]
    pub bounds: Option<String>,
    /// Seed for the sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Catalog cache directory (default: $QCA_CACHE_DIR, else .qca-cache).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a context file and print its derived matrices.
    Validate {
        context: PathBuf,
        #[arg(long)]
        print_matrices: bool,
    },
    /// Classify all dimension vectors within the caps and persist the catalog.
    Catalog { context: PathBuf },
    /// Quantum cluster character of a decorated object, e.g. `I:1;M:S2;P:2`.
    Character { context: PathBuf, object: String },
    /// Product of two basis elements of the derived Hall algebra.
    HallMul { context: PathBuf, left: String, right: String },
    /// Image of a basis element under the integration map.
    Psi {
        context: PathBuf,
        object: String,
        /// Evaluate through the comultiplication instead of the closed form.
        #[arg(long)]
        composed: bool,
    },
    /// Run a verification suite.
    Check {
        context: PathBuf,
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Built-in worked examples.
    Example {
        #[command(subcommand)]
        which: Example,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Example {
    /// The Kronecker quiver with valuation 2.
    Kronecker,
}

/// Output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Cli {
    fn bounds(&self) -> Result<Bounds> {
        self.bounds.as_deref().map(Bounds::parse).unwrap_or(Ok(Bounds::default()))
    }

    fn cache_dir(&self) -> PathBuf {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".qca-cache"))
    }

    fn context(&self, path: &Path) -> Result<QuiverContext> {
        let ctx = QuiverContext::load(path)?;
        match self.q0 {
            Some(q0) => ctx.with_q0(q0),
            None => Ok(ctx),
        }
    }

    /// A catalog seeded from the cache directory when a matching file exists.
    fn catalog(&self, path: &Path) -> Result<Arc<Catalog>> {
        let cat = Catalog::new(Arc::new(self.context(path)?), self.bounds()?)?;
        load_cache(&cat, &self.cache_dir())?;
        Ok(Arc::new(cat))
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            cap: self.cap,
            total_cap: self.total_cap,
            seed: self.seed,
            jobs: self.jobs.max(1),
            ..CheckConfig::default()
        }
    }
}

fn torus_json(x: &TorusElement) -> Value {
    x.iter()
        .map(|(e, c)| json!({"coeff": c, "coeff_text": c.to_string(), "exponent": e}))
        .collect()
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    for sub in &r.suites {
        s.push_str(&sub.summary_line());
        s.push('\n');
    }
    s.push_str(&r.summary_line());
    s.push('\n');
    for (why, k) in &r.skip_reasons {
        s.push_str(&format!("  skipped {k}: {why}\n"));
    }
    for c in &r.counterexamples {
        s.push_str(&format!("  counterexample: {c}\n"));
    }
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: e.to_string(),
            }
        }
        Err(e) => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) if cli.json => Outcome {
            code: 1,
            stdout: json!({"error": e.to_string()}).to_string() + "\n",
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn emit(cli: &Cli, code: i32, value: Value, text: String) -> Result<Outcome> {
    if let Some(path) = &cli.out {
        let mut f = std::fs::File::create(path).map_err(|e| QcaError::Io(format!("{}: {e}", path.display())))?;
        writeln!(f, "{}", serde_json::to_string_pretty(&value)?)
            .map_err(|e| QcaError::Io(format!("{}: {e}", path.display())))?;
    }
    let stdout = if cli.json {
        serde_json::to_string_pretty(&value)? + "\n"
    } else {
        text
    };
    Ok(Outcome {
        code,
        stdout,
        stderr: String::new(),
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { context, print_matrices } => validate(cli, context, *print_matrices),
        Command::Catalog { context } => catalog(cli, context),
        Command::Character { context, object } => {
            let cat = cli.catalog(context)?;
            let obj = DecoratedObject::parse(&cat, object)?;
            let x = crate::torus::character(&cat, &obj.inj, &obj.module, &obj.proj)?;
            let text = format!("X_{{{obj}}} = {x}\n");
            emit(cli, 0, json!({"object": obj.descriptor(), "character": torus_json(&x)}), text)
        }
        Command::HallMul { context, left, right } => {
            let cat = cli.catalog(context)?;
            let hall = HallAlgebra::new(cat.clone());
            let (a, b) = (DecoratedObject::parse(&cat, left)?, DecoratedObject::parse(&cat, right)?);
            let p = hall.mul_basis(&a, &b)?;
            let text = format!("u_{{{a}}} * u_{{{b}}} = {p}\n");
            let value = json!({"left": a.descriptor(), "right": b.descriptor(), "product": element_json(&p)});
            emit(cli, 0, value, text)
        }
        Command::Psi { context, object, composed } => {
            let cat = cli.catalog(context)?;
            let hall = HallAlgebra::new(cat.clone());
            let obj = DecoratedObject::parse(&cat, object)?;
            let x = if *composed {
                hall.psi_composed(&hall.basis(obj.clone()))?
            } else {
                hall.psi_closed_basis(&obj)?
            };
            let route = if *composed { "composed" } else { "closed" };
            let text = format!("psi(u_{{{obj}}}) = {x}\n");
            emit(cli, 0, json!({"object": obj.descriptor(), "route": route, "psi": torus_json(&x)}), text)
        }
        Command::Check { context, suite } => {
            let ver = Verifier::new(cli.catalog(context)?, cli.check_config());
            let r = ver.check(*suite);
            let code = if r.ok() { 0 } else { 1 };
            emit(cli, code, serde_json::to_value(&r)?, report_text(&r))
        }
        Command::Example { which: Example::Kronecker } => {
            let q0 = cli.q0.unwrap_or(2);
            if !SUPPORTED_Q0.contains(&q0) {
                return Err(QcaError::InvalidContext(format!("q0 = {q0} is not one of 2, 3, 5, 7")));
            }
            let k = kronecker_example(q0, cli.bounds()?)?;
            let mut text = format!("Kronecker quiver, q0 = {q0}, v = sqrt({q0})\n");
            for l in &k.lines {
                text.push_str(l);
                text.push('\n');
            }
            text.push_str(&report_text(&k.report));
            text.push_str(if k.ok() { "PASS\n" } else { "FAIL\n" });
            emit(cli, if k.ok() { 0 } else { 1 }, serde_json::to_value(&k)?, text)
        }
    }
}

fn validate(cli: &Cli, path: &Path, print_matrices: bool) -> Result<Outcome> {
    let ctx = match cli.context(path) {
        Ok(c) => c,
        Err(e @ (QcaError::InvalidContext(_) | QcaError::Parse(_) | QcaError::Io(_))) => {
            let text = format!("invalid context {}: {e}\n", path.display());
            return emit(cli, 1, json!({"valid": false, "error": e.to_string()}), text);
        }
        Err(e) => return Err(e),
    };
    let ver = Verifier::new(Arc::new(Catalog::new(Arc::new(ctx.clone()), cli.bounds()?)?), cli.check_config());
    let r = ver.check(Suite::Lemma42);
    let mut text = format!("context {} is valid (hash {})\n", path.display(), ctx.hash());
    if print_matrices {
        text.push_str(&ctx.matrices_report());
    }
    text.push_str(&report_text(&r));
    let value = json!({"valid": r.ok(), "hash": ctx.hash(), "lemma42": r});
    emit(cli, if r.ok() { 0 } else { 1 }, value, text)
}

fn catalog(cli: &Cli, path: &Path) -> Result<Outcome> {
    let cat = Catalog::new(Arc::new(cli.context(path)?), cli.bounds()?)?;
    let dir = cli.cache_dir();
    load_cache(&cat, &dir)?;
    let dims = cat.dims_up_to(cli.cap, cli.total_cap);
    let file = cache_path(&dir, &cat);
    if dims.iter().all(|d| cat.is_complete(d)) && file.exists() {
        let text = format!("cache hit: {}\n", file.display());
        return emit(cli, 0, json!({"cache": "hit", "path": file}), text);
    }
    for d in &dims {
        cat.ensure_classified(d)?;
    }
    save_cache(&cat, &dir)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for d in &dims {
        let classes = cat.classes(d)?;
        let indec = classes.iter().filter(|c| cat.is_indecomposable(c).unwrap_or(false)).count();
        text.push_str(&format!("{d}: {} classes, {indec} indecomposable\n", classes.len()));
        let list: Vec<Value> = classes
            .iter()
            .map(|c| {
                json!({
                    "id": c.to_string(),
                    "name": cat.describe(c),
                    "end_dim": cat.end_dim(c).ok(),
                    "aut": cat.aut_order(c).ok(),
                })
            })
            .collect();
        rows.push(json!({"dim": d, "classes": list}));
    }
    text.push_str(&format!("wrote {}\n", file.display()));
    emit(cli, 0, json!({"cache": "written", "path": file, "dims": rows}), text)
}
