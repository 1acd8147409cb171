//! Weak morphs `f: G → GL(V)` relative to a level of the unit series, with
//! obstruction cocycles, lifting, the `Z¹`-action and equivalences.
//!
//! A morph at level `j` restricts to `θ` on `L` and has its defect
//! `δ(x, y) = f(x)·f(y)·f(xy)⁻¹` in `H_j`. Level `0` is a stability witness;
//! level `k` (the series depth) is a homomorphism.

use thiserror::Error;

use crate::algebra::{ChainError, EndAlgebra};
use crate::budget::{BudgetExceeded, Budgets};
use crate::cohomology::{ActionModule, Cochain, CohomologyError, ModuleError, RelComplex};
use crate::group::{core_subgroup, CosetSystem, GroupTable, Subgroup};
use crate::matrix::FqMatrix;
use crate::rep::{stability_witness, FailedTwist, Representation};
use crate::series::{SeriesKind, UnitSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphError {
    #[error("defect at ({x}, {y}) is not in level {level}")]
    DefectEscapesLevel { x: usize, y: usize, level: usize },
    #[error("conjugation by f({x}) does not preserve level {level} of the series")]
    Unstable { x: usize, level: usize },
    #[error("induced action of {x} depends on the chosen section")]
    IllDefinedAction { x: usize },
    #[error("induced action is not a module: {0}")]
    BadAction(ModuleError),
    #[error("certificate does not bound the obstruction")]
    CertificateInvalid,
    #[error("morph is at level {found}, expected {expected}")]
    WrongLevel { expected: usize, found: usize },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// First failing condition of a weak morph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphDefect {
    /// `f(l) ≠ θ(l)`.
    Restriction { l: usize },
    /// `f(x)` is not invertible.
    NotInvertible { x: usize },
    /// `f(x)` does not normalize `H`.
    NotNormalizing { x: usize },
    /// `δ(x, y) ∉ H_level`.
    Defect { x: usize, y: usize },
    /// `f(l)` does not centralize `H` (full morphs only).
    NotCentralizing { l: usize },
}

/// A table `G → GL(V)` together with the level its defect lies in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakMorph {
    level: usize,
    table: Vec<FqMatrix>,
}

impl WeakMorph {
    pub fn new(level: usize, table: Vec<FqMatrix>) -> Self {
        WeakMorph { level, table }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn table(&self) -> &[FqMatrix] {
        &self.table
    }

    pub fn value(&self, x: usize) -> &FqMatrix {
        &self.table[x]
    }

    pub fn into_table(self) -> Vec<FqMatrix> {
        self.table
    }
}

/// The obstruction cocycle `f♯` and, when it bounds, a certificate `α`
/// with `dα = f♯`.
#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub cocycle: Cochain,
    pub certificate: Option<Cochain>,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Everything shared by the morphs of one extension problem: `G`, `θ` on
/// `L`, the normal core `P` of `L`, and the series of `H = Aut_P(V)`.
#[derive(Clone, Debug)]
pub struct MorphContext {
    g: GroupTable,
    theta: Representation,
    cosets: CosetSystem,
    core: Subgroup,
    series: UnitSeries,
    budgets: Budgets,
}

impl MorphContext {
    pub fn new(g: &GroupTable, theta: &Representation, kind: SeriesKind, budgets: &Budgets) -> Result<Self, ChainError> {
        let l = theta.subgroup();
        let core = core_subgroup(g, l);
        let algebra = EndAlgebra::of(g, &theta.restrict(g, &core));
        let series = UnitSeries::build(algebra, kind, budgets)?;
        Ok(MorphContext { g: g.clone(), theta: theta.clone(), cosets: CosetSystem::new(g, l), core, series, budgets: *budgets })
    }

    pub fn group(&self) -> &GroupTable {
        &self.g
    }

    pub fn theta(&self) -> &Representation {
        &self.theta
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.theta.subgroup()
    }

    /// `P`, the largest normal subgroup of `G` inside `L`.
    pub fn core(&self) -> &Subgroup {
        &self.core
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    pub fn series(&self) -> &UnitSeries {
        &self.series
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    /// Number of layers `k`.
    pub fn depth(&self) -> usize {
        self.series.depth()
    }

    /// The normalized level-0 morph built from intertwiners.
    pub fn witness(&self) -> Result<WeakMorph, FailedTwist> {
        Ok(WeakMorph::new(0, stability_witness(&self.g, &self.theta)?))
    }

    pub fn defect(&self, f: &WeakMorph, x: usize, y: usize) -> FqMatrix {
        let xy = self.g.mul(x, y);
        f.table[x].mul(&f.table[y]).mul(&f.table[xy].inverse().expect("invertible morph"))
    }

    /// Conditions (1)–(3): `f|_L = θ`, `f(G)` normalizes `H`, defect in
    /// `H_level`.
    pub fn check_weak_morph(&self, f: &WeakMorph) -> Result<(), MorphDefect> {
        for &l in self.subgroup().elements() {
            if f.table[l] != *self.theta.image(l) {
                return Err(MorphDefect::Restriction { l });
            }
        }
        let mut inverses = Vec::with_capacity(f.table.len());
        for (x, m) in f.table.iter().enumerate() {
            let inv = m.inverse().ok_or(MorphDefect::NotInvertible { x })?;
            if self.series.unstable_level(m, &inv) == Some(0) {
                return Err(MorphDefect::NotNormalizing { x });
            }
            inverses.push(inv);
        }
        for x in self.g.elements() {
            for y in self.g.elements() {
                let d = f.table[x].mul(&f.table[y]).mul(&inverses[self.g.mul(x, y)]);
                if !self.series.contains(f.level, &d) {
                    return Err(MorphDefect::Defect { x, y });
                }
            }
        }
        Ok(())
    }

    /// Condition (4) on top of the weak conditions: `f(L)` centralizes `H`.
    pub fn check_morph(&self, f: &WeakMorph) -> Result<(), MorphDefect> {
        self.check_weak_morph(f)?;
        let gens = self.series.generators(0);
        for &l in self.subgroup().elements() {
            let m = &f.table[l];
            if gens.iter().any(|h| m.mul(h) != h.mul(m)) {
                return Err(MorphDefect::NotCentralizing { l });
            }
        }
        Ok(())
    }

    /// The `G`-module `Q_{j+1} = H_j/H_{j+1}` with `ρ(x)(a) = π(f(x)·s(a)·f(x)⁻¹)`.
    pub fn induced_action(&self, f: &WeakMorph, j: usize) -> Result<ActionModule, MorphError> {
        let factors = self.series.factors(j);
        let k = factors.len();
        let next = self.series.generators(j + 1);
        let mut mats = Vec::with_capacity(self.g.order());
        for x in self.g.elements() {
            let fx = &f.table[x];
            let fi = fx.inverse().expect("invertible morph");
            if let Some(level) = self.series.unstable_level(fx, &fi) {
                if level <= j + 1 {
                    return Err(MorphError::Unstable { x, level });
                }
            }
            let mut cols = Vec::with_capacity(k);
            for i in 0..k {
                let mut e = vec![0; k];
                e[i] = 1;
                let s = self.series.section(j, &e);
                let col = self.series.project(j, &fx.mul(&s).mul(&fi));
                // a different lift of e_i must give the same image
                for h in &next {
                    if self.series.project(j, &fx.mul(&s.mul(h)).mul(&fi)) != col {
                        return Err(MorphError::IllDefinedAction { x });
                    }
                }
                cols.push(col);
            }
            mats.push((0..k).map(|r| (0..k).map(|c| cols[c][r]).collect()).collect());
        }
        ActionModule::new(&self.g, &factors, mats).map_err(MorphError::BadAction)
    }

    /// The relative complex `C•(G, L; module)`.
    pub fn complex(&self, module: &ActionModule) -> RelComplex {
        RelComplex::new(&self.g, self.subgroup(), module)
    }

    /// `f♯(x, y) = π_j(δ(x, y))` for `f` at level `j`, decided by a coboundary solve.
    pub fn obstruction(&self, f: &WeakMorph, complex: &RelComplex) -> Result<ObstructionClass, MorphError> {
        let j = f.level;
        let k = self.series.factors(j).len();
        let g = &self.g;
        let inverses: Vec<FqMatrix> = f.table.iter().map(|m| m.inverse().expect("invertible morph")).collect();
        let mut cocycle = Cochain::zero(g.order(), 2, k);
        for x in g.elements() {
            for y in g.elements() {
                let d = f.table[x].mul(&f.table[y]).mul(&inverses[g.mul(x, y)]);
                if !self.series.contains(j, &d) {
                    return Err(MorphError::DefectEscapesLevel { x, y, level: j });
                }
                cocycle.set(&[x, y], &self.series.project(j, &d));
            }
        }
        let certificate = complex.solve_coboundary(&cocycle, &self.budgets)?;
        Ok(ObstructionClass { cocycle, certificate })
    }

    /// `g(x) = s(α(x))⁻¹·f(x)`, one level down.
    pub fn lift(&self, f: &WeakMorph, alpha: &Cochain) -> Result<WeakMorph, MorphError> {
        let j = f.level;
        let table = self
            .g
            .elements()
            .map(|x| self.series.section(j, alpha.value(&[x])).inverse().expect("unit").mul(&f.table[x]))
            .collect();
        let g = WeakMorph::new(j + 1, table);
        for x in self.g.elements() {
            for y in self.g.elements() {
                if !self.series.contains(j + 1, &self.defect(&g, x, y)) {
                    return Err(MorphError::CertificateInvalid);
                }
            }
        }
        Ok(g)
    }

    /// `(γ·f)(x) = s(γ(x))·f(x)` for `f` at level `j+1` and `γ` valued in `Q_{j+1}`.
    pub fn z1_act(&self, gamma: &Cochain, f: &WeakMorph, complex: &RelComplex) -> Result<WeakMorph, MorphError> {
        if f.level == 0 {
            return Err(MorphError::WrongLevel { expected: 1, found: 0 });
        }
        if !complex.is_relative(gamma) || !complex.is_cocycle(gamma) {
            return Err(CohomologyError::NotACocycle.into());
        }
        let j = f.level - 1;
        let table = self.g.elements().map(|x| self.series.section(j, gamma.value(&[x])).mul(&f.table[x])).collect();
        Ok(WeakMorph::new(f.level, table))
    }

    /// `f(x)·g(x)⁻¹ ∈ H_level` for all `x`.
    pub fn equivalent_mod(&self, f: &WeakMorph, g: &WeakMorph, level: usize) -> bool {
        self.g
            .elements()
            .all(|x| self.series.contains(level, &f.table[x].mul(&g.table[x].inverse().expect("invertible morph"))))
    }

    /// Some `h ∈ H_{m−1}` with `[θ(L), h] ⊆ H_m` and `h·g(x)·h⁻¹·f(x)⁻¹ ∈ H_m`
    /// for all `x`, where `f, g` are level-`m` morphs (`m ≥ 1`).
    ///
    /// The conditions only depend on `h` modulo `H_m`, so sections of
    /// `Q_m` are searched when `f` and `g` agree modulo `H_{m−1}`; otherwise
    /// all of `H` is scanned.
    pub fn conjugacy_equiv(&self, f: &WeakMorph, g: &WeakMorph, m: usize) -> Result<Option<FqMatrix>, BudgetExceeded> {
        assert!(m >= 1, "level must be positive");
        let candidates: Vec<FqMatrix> = if self.equivalent_mod(f, g, m - 1) {
            let factors = self.series.factors(m - 1);
            let size: u128 = factors.iter().map(|&d| d as u128).product();
            BudgetExceeded::check("enumerating a layer", size, self.budgets.units)?;
            let mut coeffs: Vec<Vec<i64>> = vec![vec![]];
            for &d in &factors {
                coeffs = coeffs.into_iter().flat_map(|v| (0..d).map(move |a| [v.clone(), vec![a]].concat())).collect();
            }
            coeffs.iter().map(|a| self.series.section(m - 1, a)).collect()
        } else {
            self.series.elements(0, self.budgets.units)?
        };
        let finv: Vec<FqMatrix> = f.table.iter().map(|x| x.inverse().expect("invertible morph")).collect();
        let lgens = self.subgroup().generators(&self.g);
        Ok(candidates.into_iter().find(|h| {
            let hi = h.inverse().expect("unit");
            lgens.iter().all(|&l| {
                let t = self.theta.image(l);
                let ti = t.inverse().expect("unit");
                self.series.contains(m, &t.mul(h).mul(&ti).mul(&hi))
            }) && self.g.elements().all(|x| self.series.contains(m, &h.mul(&g.table[x]).mul(&hi).mul(&finv[x])))
        }))
    }

    /// `f′(t·l) = f(t)·θ(l)` over the transversal.
    pub fn normalize(&self, f: &WeakMorph) -> WeakMorph {
        let table = self
            .g
            .elements()
            .map(|x| {
                let (t, l) = self.cosets.decompose(&self.g, x);
                f.table[t].mul(self.theta.image(l))
            })
            .collect();
        WeakMorph::new(f.level, table)
    }

    pub fn is_normalized(&self, f: &WeakMorph) -> bool {
        self.normalize(f) == *f
    }
}
