//! The branching search for all `G`-module structures extending `θ`.
//!
//! Starting from a stability witness at level 0, each node computes the
//! induced action on its layer, its obstruction class, and either stops or
//! lifts and branches over `H¹(G, L; Q)`. Nodes at the last level are
//! homomorphisms; these are finally grouped by `G`-module isomorphism.

use thiserror::Error;

use crate::algebra::ChainError;
use crate::budget::{BudgetExceeded, Budgets};
use crate::cohomology::{ActionModule, Cochain};
use crate::group::GroupTable;
use crate::matrix::FqMatrix;
use crate::morphs::{MorphContext, MorphError, ObstructionClass, WeakMorph};
use crate::rep::{find_isomorphism, is_homomorphism, FailedTwist, Representation};
use crate::series::SeriesKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("θ is not stable: its twist by {conjugator} is not isomorphic to it")]
    NotStable { conjugator: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl From<FailedTwist> for EngineError {
    fn from(f: FailedTwist) -> Self {
        EngineError::NotStable { conjugator: f.conjugator }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub series: SeriesKind,
    pub budgets: Budgets,
    /// Record `|H²|` at every node (costly for larger groups).
    pub h2_stats: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { series: SeriesKind::Auto, budgets: Budgets::default(), h2_stats: true }
    }
}

/// The context together with its level-0 witness.
#[derive(Clone, Debug)]
pub struct Setup {
    pub context: MorphContext,
    pub witness: WeakMorph,
}

/// Checks that `θ` is isomorphic to its twists on `L ∩ L^x` for every
/// `x`, and prepares the search with `H = Aut_P(V)`, `P` the normal core.
pub fn stable_by_conjugation(g: &GroupTable, theta: &Representation, options: &EngineOptions) -> Result<Setup, EngineError> {
    let witness = WeakMorph::new(0, crate::rep::stability_witness(g, theta)?);
    let context = MorphContext::new(g, theta, options.series, &options.budgets)?;
    Ok(Setup { context, witness })
}

#[derive(Clone, Debug)]
pub struct BranchNode {
    pub level: usize,
    /// Indices of the `H¹` classes chosen on the way down.
    pub path: Vec<usize>,
    pub morph: WeakMorph,
    /// `None` at the last level.
    pub action: Option<ActionModule>,
    pub obstruction: Option<ObstructionClass>,
    pub h1_order: Option<u128>,
    pub h2_order: Option<u128>,
    pub terminated: bool,
    pub children: Vec<BranchNode>,
}

impl BranchNode {
    fn leaf(level: usize, path: Vec<usize>, morph: WeakMorph) -> Self {
        BranchNode { level, path, morph, action: None, obstruction: None, h1_order: None, h2_order: None, terminated: false, children: vec![] }
    }

    /// All nodes, depth first.
    pub fn walk(&self) -> Vec<&BranchNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExtensionReport {
    pub depth: usize,
    pub series: Option<SeriesKind>,
    /// Invariant factors of each layer `H_j/H_{j+1}`.
    pub layer_factors: Vec<Vec<i64>>,
    pub root: Option<BranchNode>,
    /// Every homomorphism reached, in leaf order.
    pub leaves: Vec<Vec<FqMatrix>>,
    pub leaf_paths: Vec<Vec<usize>>,
    /// Class index of each leaf.
    pub leaf_class: Vec<usize>,
    /// One extension per class (the first leaf of the class).
    pub extensions: Vec<Vec<FqMatrix>>,
    pub traces: Vec<Vec<usize>>,
    /// Levels `j` where `H_j/H_{j+2}` is not abelian.
    pub two_step: Vec<usize>,
    pub error: Option<EngineError>,
}

impl ExtensionReport {
    pub fn class_count(&self) -> usize {
        self.extensions.len()
    }

    /// `equivalence[a][b]`: leaves `a` and `b` are isomorphic extensions.
    pub fn equivalence(&self) -> Vec<Vec<bool>> {
        self.leaf_class.iter().map(|a| self.leaf_class.iter().map(|b| a == b).collect()).collect()
    }

    /// `|H¹|` of every expanded node, grouped by level.
    pub fn h1_orders(&self) -> Vec<Vec<u128>> {
        self.per_level(|n| n.h1_order)
    }

    pub fn h2_orders(&self) -> Vec<Vec<u128>> {
        self.per_level(|n| n.h2_order)
    }

    fn per_level(&self, f: impl Fn(&BranchNode) -> Option<u128>) -> Vec<Vec<u128>> {
        let mut out = vec![vec![]; self.depth];
        if let Some(root) = &self.root {
            for n in root.walk() {
                if let Some(v) = f(n) {
                    out[n.level].push(v);
                }
            }
        }
        out
    }

    pub fn existence(&self) -> Existence {
        match (&self.error, self.extensions.is_empty()) {
            (_, false) => Existence::Exists,
            (None, true) => Existence::NotExists,
            (Some(EngineError::NotStable { .. }), true) => Existence::NotExists,
            (Some(_), true) => Existence::Unknown,
        }
    }
}

struct Search<'a> {
    ctx: &'a MorphContext,
    options: &'a EngineOptions,
    leaves: Vec<(Vec<usize>, WeakMorph)>,
}

impl Search<'_> {
    fn expand(&mut self, morph: WeakMorph, path: Vec<usize>) -> Result<BranchNode, (BranchNode, EngineError)> {
        let ctx = self.ctx;
        let level = morph.level();
        if level == ctx.depth() {
            debug_assert!(is_homomorphism(ctx.group(), morph.table()));
            self.leaves.push((path.clone(), morph.clone()));
            return Ok(BranchNode::leaf(level, path, morph));
        }
        let mut node = BranchNode::leaf(level, path.clone(), morph.clone());
        macro_rules! attempt {
            ($e:expr) => {
                match $e {
                    Ok(v) => v,
                    Err(err) => return Err((node, EngineError::from(err))),
                }
            };
        }
        let action = attempt!(ctx.induced_action(&morph, level));
        let complex = ctx.complex(&action);
        let budgets = &self.options.budgets;
        let h1 = attempt!(complex.cohomology(1, budgets).map_err(MorphError::from));
        node.h1_order = Some(h1.order());
        if self.options.h2_stats {
            node.h2_order = Some(attempt!(complex.cohomology(2, budgets).map_err(MorphError::from)).order());
        }
        node.action = Some(action);
        let obstruction = attempt!(ctx.obstruction(&morph, &complex));
        let certificate = obstruction.certificate.clone();
        node.obstruction = Some(obstruction);
        let Some(alpha) = certificate else {
            node.terminated = true;
            return Ok(node);
        };
        let lifted = ctx.normalize(&attempt!(ctx.lift(&morph, &alpha)));
        let reps: Vec<Cochain> = attempt!(h1.classes(budgets.cochains));
        for (i, gamma) in reps.iter().enumerate() {
            let child = ctx.normalize(&attempt!(ctx.z1_act(gamma, &lifted, &complex)));
            let mut p = path.clone();
            p.push(i);
            match self.expand(child, p) {
                Ok(c) => node.children.push(c),
                Err((c, e)) => {
                    node.children.push(c);
                    return Err((node, e));
                }
            }
        }
        Ok(node)
    }
}

/// Runs the full search. Errors are recorded in the report.
pub fn enumerate_extensions(g: &GroupTable, theta: &Representation, options: &EngineOptions) -> ExtensionReport {
    let mut report = ExtensionReport::default();
    let setup = match stable_by_conjugation(g, theta, options) {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e);
            return report;
        }
    };
    let ctx = &setup.context;
    report.depth = ctx.depth();
    report.series = Some(ctx.series().kind());
    report.layer_factors = (0..ctx.depth()).map(|j| ctx.series().factors(j)).collect();
    report.two_step = ctx.series().nonabelian_two_step();

    let mut search = Search { ctx, options, leaves: vec![] };
    match search.expand(setup.witness.clone(), vec![]) {
        Ok(root) => report.root = Some(root),
        Err((root, e)) => {
            report.root = Some(root);
            report.error = Some(e);
        }
    }

    let field = theta.field();
    let whole = g.whole();
    let mut class_reps: Vec<Representation> = Vec::new();
    for (path, morph) in search.leaves {
        let table = morph.into_table();
        let rep = Representation::new(g, &whole, field, theta.dim(), table.clone()).expect("leaves are homomorphisms");
        let found = class_reps.iter().position(|r| find_isomorphism(g, r, &rep).expect("same group").is_some());
        let class = match found {
            Some(c) => c,
            None => {
                class_reps.push(rep);
                report.extensions.push(table.clone());
                report.traces.push(path.clone());
                class_reps.len() - 1
            }
        };
        report.leaves.push(table);
        report.leaf_paths.push(path);
        report.leaf_class.push(class);
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    Exists,
    NotExists,
    Unknown,
}

/// Decides whether some extension exists, trying the cheap routes first:
/// the branch that always picks the zero class, and the root obstruction
/// (the root has no siblings); otherwise a full search.
pub fn existence_test(g: &GroupTable, theta: &Representation, options: &EngineOptions) -> Existence {
    let setup = match stable_by_conjugation(g, theta, options) {
        Ok(s) => s,
        Err(EngineError::NotStable { .. }) => return Existence::NotExists,
        Err(_) => return Existence::Unknown,
    };
    let ctx = &setup.context;
    let mut f = setup.witness;
    let walk = (|| -> Result<Option<bool>, MorphError> {
        while f.level() < ctx.depth() {
            let action = ctx.induced_action(&f, f.level())?;
            let complex = ctx.complex(&action);
            let obs = ctx.obstruction(&f, &complex)?;
            match obs.certificate {
                Some(alpha) => f = ctx.normalize(&ctx.lift(&f, &alpha)?),
                None if f.level() == 0 => return Ok(Some(false)),
                None => return Ok(None),
            }
        }
        Ok(Some(true))
    })();
    match walk {
        Ok(Some(true)) => Existence::Exists,
        Ok(Some(false)) => Existence::NotExists,
        Ok(None) => {
            let no_stats = EngineOptions { h2_stats: false, ..*options };
            enumerate_extensions(g, theta, &no_stats).existence()
        }
        Err(_) => Existence::Unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uniqueness {
    pub unique: bool,
    /// Levels where some node had a nontrivial `H¹`.
    pub branching_levels: Vec<usize>,
    /// Levels whose two-step quotient is not abelian; there the action on
    /// a layer may differ between branches.
    pub unverified_levels: Vec<usize>,
}

pub fn uniqueness_report(report: &ExtensionReport) -> Uniqueness {
    let branching_levels = report
        .h1_orders()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.iter().any(|&o| o > 1))
        .map(|(j, _)| j)
        .collect();
    Uniqueness { unique: report.class_count() == 1, branching_levels, unverified_levels: report.two_step.clone() }
}
