//! `gstable`: decide and enumerate extensions of a subgroup representation.
//!
//! Exit codes: 0 success, 1 mathematical negative (not stable, no
//! extension, insoluble automorphism group), 2 input error, 3 budget
//! exceeded.

mod instance;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gstable_core::algebra::{is_indecomposable, ChainError};
use gstable_core::cohomology::{ActionModule, Cochain, CohomologyError, RelComplex};
use gstable_core::engine::{enumerate_extensions, stable_by_conjugation, uniqueness_report, EngineError, EngineOptions, Existence};
use gstable_core::group::{core_subgroup, CosetSystem};
use gstable_core::morphs::{MorphContext, MorphError};
use gstable_core::rep::stability_witness;
use gstable_core::series::UnitSeries;
use gstable_oracle::{automorphisms, brute_cohomology, brute_extensions, conjugacy_dedup, differential, is_coboundary, OracleBudget, OracleError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use instance::{matrix_rows, series_name, Instance};
use report::{path_name, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn cohomology_error(e: CohomologyError) -> CliError {
    match e {
        CohomologyError::Budget(b) => CliError::Budget(b.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn morph_error(e: MorphError) -> CliError {
    match e {
        MorphError::Budget(b) | MorphError::Cohomology(CohomologyError::Budget(b)) => CliError::Budget(b.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "gstable", version, about = "Extend a representation of a subgroup to the whole group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Series for the automorphism group: auto, radical or derived.
    #[arg(long, global = true)]
    series: Option<String>,
    /// Largest automorphism group enumerated element by element.
    #[arg(long = "budget-H", global = true)]
    budget_h: Option<u64>,
    /// Largest cochain matrix, in entries.
    #[arg(long = "budget-cochains", global = true)]
    budget_cochains: Option<u64>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the instance and print its normalized form.
    Validate { instance: PathBuf },
    /// Print a stability witness or a failing twist.
    Stability { instance: PathBuf },
    /// Describe the automorphism group and its series.
    AutChain { instance: PathBuf },
    /// Relative cohomology of the instance module (or of the first layer).
    Cohomology {
        instance: PathBuf,
        #[arg(long, short)]
        n: usize,
    },
    /// Enumerate all extensions up to isomorphism.
    Extend { instance: PathBuf },
    /// Cross-check the engine against the brute-force oracle.
    Verify {
        instance: PathBuf,
        /// Number of random descents through the branching tree.
        #[arg(long, default_value_t = 16)]
        walks: usize,
    },
}

/// Whether the mathematical answer was negative.
struct Outcome {
    report: Report,
    negative: bool,
}

fn load(cli: &Cli, path: &PathBuf) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut inst = Instance::parse(&text)?;
    if let Some(s) = &cli.series {
        inst.series = s.parse().map_err(CliError::Input)?;
    }
    if let Some(b) = cli.budget_h {
        inst.budgets.units = b;
    }
    if let Some(b) = cli.budget_cochains {
        inst.budgets.cochains = b;
    }
    Ok(inst)
}

fn options(inst: &Instance) -> EngineOptions {
    EngineOptions { series: inst.series, budgets: inst.budgets, h2_stats: true }
}

fn oracle_budget(inst: &Instance) -> OracleBudget {
    let d = OracleBudget::default();
    OracleBudget {
        max_h: d.max_h.max(inst.budgets.units as u128),
        max_candidates: d.max_candidates,
        max_cochains: d.max_cochains.min(inst.budgets.cochains as u128),
    }
}

fn header(r: &mut Report, inst: &Instance) {
    r.put("group.order", inst.g.order());
    r.put("subgroup.elements", inst.l.elements());
    r.put("field.order", inst.field.order());
    r.put("representation.dim", inst.theta.dim());
}

fn put_cochain(r: &mut Report, key: String, c: &Cochain) {
    // nonzero values as [tuple, value] pairs
    let n = c.degree();
    let order = c.group_order();
    let mut entries = Vec::new();
    for i in 0..order.pow(n as u32) {
        let mut t = vec![0; n];
        let mut rest = i;
        for slot in t.iter_mut().rev() {
            *slot = rest % order;
            rest /= order;
        }
        let v = c.value(&t);
        if v.iter().any(|&x| x != 0) {
            entries.push((t, v.to_vec()));
        }
    }
    r.put(key, entries);
}

fn stability(inst: &Instance) -> Result<Outcome, CliError> {
    let mut r = Report::new("stability");
    header(&mut r, inst);
    r.put("core", core_subgroup(&inst.g, &inst.l).elements());
    match stability_witness(&inst.g, &inst.theta) {
        Ok(w) => {
            r.put("stable", true);
            for &t in CosetSystem::new(&inst.g, &inst.l).transversal() {
                r.put(format!("witness.{t}"), matrix_rows(&w[t]));
            }
            Ok(Outcome { report: r, negative: false })
        }
        Err(f) => {
            r.put("stable", false);
            r.put("failing_conjugator", f.conjugator);
            Ok(Outcome { report: r, negative: true })
        }
    }
}

fn chain_failure(r: &mut Report, e: ChainError) -> Result<Outcome, CliError> {
    match e {
        ChainError::Budget(b) => Err(CliError::Budget(b.to_string())),
        other => {
            r.put("soluble", false);
            r.put("reason", other.to_string());
            Ok(Outcome { report: std::mem::take(r), negative: true })
        }
    }
}

fn aut_chain(inst: &Instance) -> Result<Outcome, CliError> {
    let mut r = Report::new("aut-chain");
    header(&mut r, inst);
    let core = core_subgroup(&inst.g, &inst.l);
    r.put("core", core.elements());
    let on_core = inst.theta.restrict(&inst.g, &core);
    let ind = is_indecomposable(&inst.g, &on_core, &inst.budgets).map_err(|b| CliError::Budget(b.to_string()))?;
    r.put("indecomposable", ind);
    let ctx = match MorphContext::new(&inst.g, &inst.theta, inst.series, &inst.budgets) {
        Ok(c) => c,
        Err(e) => return chain_failure(&mut r, e),
    };
    let series = ctx.series();
    r.put("series", series_name(series.kind()));
    r.put("aut_order", series.order(0).to_string());
    if let UnitSeries::Radical(c) = series {
        r.put("residue_degree", c.residue_degree());
        let dims: Vec<usize> = c.radical().powers.iter().map(|p| p.dim()).collect();
        r.put("radical_dims", dims);
    }
    r.put("depth", series.depth());
    for j in 0..series.depth() {
        r.put(format!("layer.{j}.factors"), series.factors(j));
        r.put(format!("layer.{j}.order"), (series.order(j) / series.order(j + 1)).to_string());
    }
    r.put("two_step_nonabelian", series.nonabelian_two_step());
    Ok(Outcome { report: r, negative: false })
}

/// The instance module, or the action on the first layer induced by the
/// stability witness.
fn module_for(inst: &Instance, r: &mut Report) -> Result<Option<ActionModule>, CliError> {
    if let Some(m) = &inst.module {
        r.put("module.source", "instance");
        return Ok(Some(m.clone()));
    }
    r.put("module.source", "first layer");
    let setup = match stable_by_conjugation(&inst.g, &inst.theta, &options(inst)) {
        Ok(s) => s,
        Err(EngineError::NotStable { conjugator }) => {
            r.put("stable", false);
            r.put("failing_conjugator", conjugator);
            return Ok(None);
        }
        Err(EngineError::Chain(ChainError::Budget(b))) => return Err(CliError::Budget(b.to_string())),
        Err(e) => {
            r.put("reason", e.to_string());
            return Ok(None);
        }
    };
    setup.context.induced_action(&setup.witness, 0).map(Some).map_err(morph_error)
}

fn cohomology(inst: &Instance, n: usize) -> Result<Outcome, CliError> {
    let mut r = Report::new("cohomology");
    header(&mut r, inst);
    if !(1..=2).contains(&n) {
        return Err(CliError::Input(format!("degree {n} is not supported (use 1 or 2)")));
    }
    let Some(m) = module_for(inst, &mut r)? else {
        return Ok(Outcome { report: r, negative: true });
    };
    r.put("module.factors", m.factors());
    let res = RelComplex::new(&inst.g, &inst.l, &m).cohomology(n, &inst.budgets).map_err(cohomology_error)?;
    r.put("degree", n);
    r.put("order", res.order().to_string());
    r.put("factors", res.factors());
    for (i, c) in res.representatives().iter().enumerate() {
        put_cochain(&mut r, format!("representative.{i}"), c);
    }
    Ok(Outcome { report: r, negative: false })
}

fn extend(inst: &Instance) -> Result<Outcome, CliError> {
    let mut r = Report::new("extend");
    header(&mut r, inst);
    let rep = enumerate_extensions(&inst.g, &inst.theta, &options(inst));
    match &rep.error {
        None => r.put("status", "complete"),
        Some(EngineError::NotStable { conjugator }) => {
            r.put("status", "not-stable");
            r.put("failing_conjugator", *conjugator);
        }
        Some(EngineError::Chain(ChainError::Budget(b)) | EngineError::Morph(MorphError::Budget(b))) => {
            return Err(CliError::Budget(b.to_string()));
        }
        Some(EngineError::Budget(b)) => return Err(CliError::Budget(b.to_string())),
        Some(EngineError::Morph(MorphError::Cohomology(CohomologyError::Budget(b)))) => {
            return Err(CliError::Budget(b.to_string()));
        }
        Some(e) => {
            r.put("status", "incomplete");
            r.put("reason", e.to_string());
        }
    }
    if let Some(kind) = rep.series {
        r.put("series", series_name(kind));
    }
    r.put("depth", rep.depth);
    for (j, f) in rep.layer_factors.iter().enumerate() {
        r.put(format!("layer.{j}.factors"), f);
    }
    if let Some(root) = &rep.root {
        for node in root.walk() {
            if node.level == rep.depth {
                continue;
            }
            let p = path_name(&node.path);
            r.put(format!("node.{p}.level"), node.level);
            if let Some(h1) = node.h1_order {
                r.put(format!("node.{p}.h1"), h1.to_string());
            }
            if let Some(h2) = node.h2_order {
                r.put(format!("node.{p}.h2"), h2.to_string());
            }
            if let Some(obs) = &node.obstruction {
                r.put(format!("node.{p}.obstruction"), if obs.is_zero() { "zero" } else { "nonzero" });
                if !obs.is_zero() {
                    put_cochain(&mut r, format!("node.{p}.obstruction_table"), &obs.cocycle);
                }
            }
            r.put(format!("node.{p}.children"), node.children.len());
        }
    }
    r.put("leaves", rep.leaves.len());
    r.put("classes", rep.class_count());
    for (i, (t, trace)) in rep.extensions.iter().zip(&rep.traces).enumerate() {
        r.put(format!("class.{i}.trace"), path_name(trace));
        for x in inst.g.elements() {
            r.put(format!("class.{i}.image.{x}"), matrix_rows(&t[x]));
        }
    }
    r.put("leaf_class", &rep.leaf_class);
    let existence = match rep.existence() {
        Existence::Exists => "exists",
        Existence::NotExists => "not-exists",
        Existence::Unknown => "unknown",
    };
    r.put("existence", existence);
    if rep.class_count() > 0 {
        let u = uniqueness_report(&rep);
        r.put("unique", u.unique);
        r.put("branching_levels", u.branching_levels);
        r.put("unverified_levels", u.unverified_levels);
    }
    let negative = rep.class_count() == 0;
    Ok(Outcome { report: r, negative })
}

fn verify(inst: &Instance, walks: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut r = Report::new("verify");
    header(&mut r, inst);
    let budget = oracle_budget(inst);
    let mut agree = true;

    let rep = enumerate_extensions(&inst.g, &inst.theta, &options(inst));
    let ext = brute_extensions(&inst.g, &inst.theta, &budget)?;
    let classes = conjugacy_dedup(&ext, &automorphisms(&inst.theta, &budget)?);
    let ext_agree = rep.class_count() == classes.len() && {
        let hit: std::collections::HashSet<usize> = rep
            .extensions
            .iter()
            .filter_map(|t| ext.iter().position(|e| e == t))
            .filter_map(|i| classes.iter().position(|c| c.contains(&i)))
            .collect();
        hit.len() == classes.len()
    };
    r.put("extensions.engine", rep.class_count());
    r.put("extensions.oracle", classes.len());
    r.put("extensions.oracle_raw", ext.len());
    r.put("extensions.agree", ext_agree);
    agree &= ext_agree;

    let mut scratch = Report::default();
    if let Some(m) = module_for(inst, &mut scratch)? {
        let cx = RelComplex::new(&inst.g, &inst.l, &m);
        for n in 1..=2 {
            let solver = cx.cohomology(n, &inst.budgets).map_err(cohomology_error)?.order();
            let oracle = brute_cohomology(n, &inst.g, &inst.l, &m, &budget)?.order;
            r.put(format!("cohomology.h{n}.solver"), solver.to_string());
            r.put(format!("cohomology.h{n}.oracle"), oracle.to_string());
            agree &= solver == oracle;
        }
    }

    // random descents: obstruction cocycles and their vanishing
    let mut violations = 0;
    let mut levels = 0;
    if let Ok(setup) = stable_by_conjugation(&inst.g, &inst.theta, &options(inst)) {
        let ctx = &setup.context;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..walks {
            let mut f = setup.witness.clone();
            while f.level() < ctx.depth() {
                levels += 1;
                let m = ctx.induced_action(&f, f.level()).map_err(morph_error)?;
                let cx = ctx.complex(&m);
                let obs = ctx.obstruction(&f, &cx).map_err(morph_error)?;
                let closed = differential(&inst.g, &m, &obs.cocycle).is_zero();
                let bounds = is_coboundary(&inst.g, &inst.l, &m, &obs.cocycle, &budget)?;
                if !closed || bounds != obs.is_zero() {
                    violations += 1;
                }
                let Some(alpha) = obs.certificate else { break };
                let lifted = ctx.normalize(&ctx.lift(&f, &alpha).map_err(morph_error)?);
                let classes = cx.h1_representatives(ctx.budgets()).map_err(cohomology_error)?;
                let gamma = classes.choose(&mut rng).expect("the zero class");
                f = ctx.normalize(&ctx.z1_act(gamma, &lifted, &cx).map_err(morph_error)?);
            }
        }
    }
    r.put("random.seed", seed);
    r.put("random.levels", levels);
    r.put("random.violations", violations);
    agree &= violations == 0;
    r.put("agreement", agree);
    Ok(Outcome { report: r, negative: !agree })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { instance } => {
            let inst = load(cli, instance)?;
            let mut r = Report::new("validate");
            let text = if cli.json {
                serde_json::to_string_pretty(&inst.normalized).expect("json")
            } else {
                toml::to_string(&inst.normalized).expect("toml")
            };
            r.put("normalized", text);
            Ok(Outcome { report: r, negative: false })
        }
        Command::Stability { instance } => stability(&load(cli, instance)?),
        Command::AutChain { instance } => aut_chain(&load(cli, instance)?),
        Command::Cohomology { instance, n } => cohomology(&load(cli, instance)?, *n),
        Command::Extend { instance } => extend(&load(cli, instance)?),
        Command::Verify { instance, walks } => verify(&load(cli, instance)?, *walks, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let (Command::Validate { .. }, Some(v)) = (&cli.command, out.report.get("normalized")) {
                print!("{}", v.as_str().unwrap_or_default());
            } else if cli.json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.report.to_text());
            }
            ExitCode::from(u8::from(out.negative))
        }
        Err(e) => {
            let mut r = Report::new("error");
            r.put("status", if e.code() == 3 { "budget-exceeded" } else { "input-error" });
            r.put("error", e.to_string());
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.to_text());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
