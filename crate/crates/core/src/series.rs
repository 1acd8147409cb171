//! Subnormal series `H = H₀ ⊳ H₁ ⊳ … ⊳ H_k = 1` of an automorphism group
//! with abelian layers, as used by the extension engine.

use std::collections::HashSet;

use crate::abelian::AbelianQuotient;
use crate::algebra::{AutChain, ChainError, EndAlgebra};
use crate::budget::{BudgetExceeded, Budgets};
use crate::matrix::FqMatrix;

/// Which series to use for `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SeriesKind {
    /// `1 + J^m` when `End` is local, the derived series otherwise.
    #[default]
    Auto,
    Radical,
    Derived,
}

impl std::str::FromStr for SeriesKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(SeriesKind::Auto),
            "radical" => Ok(SeriesKind::Radical),
            "derived" => Ok(SeriesKind::Derived),
            other => Err(format!("unknown series `{other}` (expected auto, radical or derived)")),
        }
    }
}

/// The derived series of an explicitly enumerated unit group.
#[derive(Clone, Debug)]
pub struct DerivedSeries {
    terms: Vec<Vec<FqMatrix>>,
    members: Vec<HashSet<FqMatrix>>,
    gens: Vec<Vec<FqMatrix>>,
    layers: Vec<AbelianQuotient>,
}

fn closure(id: &FqMatrix, gens: &[FqMatrix]) -> Vec<FqMatrix> {
    let mut seen: HashSet<FqMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// A small generating set, chosen greedily in list order.
fn greedy_generators(id: &FqMatrix, elements: &[FqMatrix]) -> Vec<FqMatrix> {
    let mut gens: Vec<FqMatrix> = Vec::new();
    let mut span: HashSet<FqMatrix> = HashSet::from([id.clone()]);
    for x in elements {
        if !span.contains(x) {
            gens.push(x.clone());
            span = closure(id, &gens).into_iter().collect();
        }
    }
    gens
}

fn commutator(a: &FqMatrix, b: &FqMatrix) -> FqMatrix {
    let ai = a.inverse().unwrap();
    let bi = b.inverse().unwrap();
    a.mul(b).mul(&ai).mul(&bi)
}

impl DerivedSeries {
    /// Units of `E` and their derived series; fails if `E^×` is not soluble.
    pub fn new(algebra: &EndAlgebra, budgets: &Budgets) -> Result<Self, ChainError> {
        let units: Vec<FqMatrix> =
            algebra.enumerate(budgets.algebra)?.into_iter().filter(|m| m.is_invertible()).collect();
        BudgetExceeded::check("materializing the unit group", units.len() as u128, budgets.units)?;
        Self::from_group(units)
    }

    /// Derived series of an explicit matrix group (closed under products).
    pub fn from_group(group: Vec<FqMatrix>) -> Result<Self, ChainError> {
        let id = FqMatrix::identity(group[0].field(), group[0].rows());
        let mut terms = vec![group];
        loop {
            let cur = terms.last().unwrap();
            if cur.len() == 1 {
                break;
            }
            let gens = greedy_generators(&id, cur);
            let mut comms: Vec<FqMatrix> = Vec::new();
            for a in &gens {
                for b in &gens {
                    let c = commutator(a, b);
                    if !c.is_identity() && !comms.contains(&c) {
                        comms.push(c);
                    }
                }
            }
            // normal closure in the current term
            let mut sub: HashSet<FqMatrix> = closure(&id, &comms).into_iter().collect();
            loop {
                let mut extra = Vec::new();
                for g in &gens {
                    let gi = g.inverse().unwrap();
                    for c in &comms {
                        let y = g.mul(c).mul(&gi);
                        if !sub.contains(&y) && !extra.contains(&y) {
                            extra.push(y);
                        }
                    }
                }
                if extra.is_empty() {
                    break;
                }
                comms.extend(extra);
                sub = closure(&id, &comms).into_iter().collect();
            }
            if sub.len() == cur.len() {
                return Err(ChainError::NotSoluble(cur.len()));
            }
            // keep a deterministic order: filter the parent list
            let next: Vec<FqMatrix> = cur.iter().filter(|x| sub.contains(*x)).cloned().collect();
            terms.push(next);
        }
        let members: Vec<HashSet<FqMatrix>> = terms.iter().map(|t| t.iter().cloned().collect()).collect();
        let gens = terms.iter().map(|t| greedy_generators(&id, t)).collect();
        let layers = (0..terms.len() - 1).map(|j| AbelianQuotient::new(&terms[j], &terms[j + 1])).collect();
        Ok(DerivedSeries { terms, members, gens, layers })
    }

    pub fn depth(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, j: usize) -> &[FqMatrix] {
        &self.terms[j]
    }
}

/// Either series, behind one interface.
#[derive(Clone, Debug)]
pub enum UnitSeries {
    Radical(AutChain),
    Derived(DerivedSeries),
}

impl UnitSeries {
    pub fn build(algebra: EndAlgebra, kind: SeriesKind, budgets: &Budgets) -> Result<Self, ChainError> {
        match kind {
            SeriesKind::Radical => Ok(UnitSeries::Radical(AutChain::new(algebra, budgets)?)),
            SeriesKind::Derived => Ok(UnitSeries::Derived(DerivedSeries::new(&algebra, budgets)?)),
            SeriesKind::Auto => match AutChain::new(algebra.clone(), budgets) {
                Ok(c) => Ok(UnitSeries::Radical(c)),
                Err(ChainError::NotIndecomposable) => Ok(UnitSeries::Derived(DerivedSeries::new(&algebra, budgets)?)),
                Err(e) => Err(e),
            },
        }
    }

    pub fn kind(&self) -> SeriesKind {
        match self {
            UnitSeries::Radical(_) => SeriesKind::Radical,
            UnitSeries::Derived(_) => SeriesKind::Derived,
        }
    }

    /// `k` with `H_k = 1`.
    pub fn depth(&self) -> usize {
        match self {
            UnitSeries::Radical(c) => c.depth(),
            UnitSeries::Derived(d) => d.depth(),
        }
    }

    /// Invariant factors of the layer `H_j/H_{j+1}`.
    pub fn factors(&self, j: usize) -> Vec<i64> {
        match self {
            UnitSeries::Radical(c) => c.factors(j),
            UnitSeries::Derived(d) => d.layers[j].factors().to_vec(),
        }
    }

    pub fn order(&self, j: usize) -> u128 {
        match self {
            UnitSeries::Radical(c) => c.order(j),
            UnitSeries::Derived(d) => d.terms.get(j).map_or(1, |t| t.len() as u128),
        }
    }

    pub fn contains(&self, j: usize, u: &FqMatrix) -> bool {
        match self {
            UnitSeries::Radical(c) => c.contains(j, u),
            UnitSeries::Derived(d) => d.members.get(j).map_or(u.is_identity(), |s| s.contains(u)),
        }
    }

    pub fn project(&self, j: usize, u: &FqMatrix) -> Vec<i64> {
        match self {
            UnitSeries::Radical(c) => c.project(j, u),
            UnitSeries::Derived(d) => d.layers[j].project(u),
        }
    }

    pub fn section(&self, j: usize, a: &[i64]) -> FqMatrix {
        match self {
            UnitSeries::Radical(c) => c.section(j, a),
            UnitSeries::Derived(d) => d.layers[j].section(a),
        }
    }

    pub fn generators(&self, j: usize) -> Vec<FqMatrix> {
        match self {
            UnitSeries::Radical(c) => c.generators(j),
            UnitSeries::Derived(d) => d.gens.get(j).cloned().unwrap_or_default(),
        }
    }

    pub fn elements(&self, j: usize, budget: u64) -> Result<Vec<FqMatrix>, BudgetExceeded> {
        match self {
            UnitSeries::Radical(c) => c.elements(j, budget),
            UnitSeries::Derived(d) => {
                BudgetExceeded::check("enumerating a unit group", d.terms[j].len() as u128, budget)?;
                Ok(d.terms[j].clone())
            }
        }
    }

    /// First level not preserved by conjugation with `x`, if any.
    pub fn unstable_level(&self, x: &FqMatrix, x_inv: &FqMatrix) -> Option<usize> {
        match self {
            UnitSeries::Radical(c) => c.unstable_level(x, x_inv),
            UnitSeries::Derived(d) => (0..d.terms.len()).find(|&j| {
                d.gens[j].iter().any(|h| !d.members[j].contains(&x.mul(h).mul(x_inv)))
            }),
        }
    }

    /// Levels `j` for which `H_j/H_{j+2}` is not abelian.
    pub fn nonabelian_two_step(&self) -> Vec<usize> {
        let k = self.depth();
        (0..k.saturating_sub(1))
            .filter(|&j| {
                let gens = self.generators(j);
                gens.iter().any(|a| gens.iter().any(|b| !self.contains(j + 2, &commutator(a, b))))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::named;
    use crate::rep::Representation;

    #[test]
    fn gl2_of_3_is_soluble() {
        let g = named::cyclic(1);
        let f = Field::prime(3).unwrap();
        let triv = Representation::trivial(&g, &g.whole(), &f, 2);
        let series = UnitSeries::build(EndAlgebra::of(&g, &triv), SeriesKind::Auto, &Budgets::default()).unwrap();
        assert_eq!(series.kind(), SeriesKind::Derived);
        assert_eq!(series.order(0), 48);
        // GL2(3) > SL2(3) > Q8 > {±1} > 1
        let orders: Vec<u128> = (0..=series.depth()).map(|j| series.order(j)).collect();
        assert_eq!(orders, vec![48, 24, 8, 2, 1]);
        assert_eq!(series.factors(0), vec![2]);
        assert_eq!(series.factors(1), vec![3]);
        assert_eq!(series.factors(2), vec![2, 2]);
        for j in 0..series.depth() {
            for u in series.elements(j, 100).unwrap() {
                let a = series.project(j, &u);
                let s = series.section(j, &a);
                assert_eq!(series.project(j, &s), a);
                // same coset
                let si = s.inverse().unwrap();
                assert!(series.contains(j + 1, &si.mul(&u)));
            }
        }
    }

    #[test]
    fn gl2_of_7_is_not_soluble() {
        let g = named::cyclic(1);
        let f = Field::prime(7).unwrap();
        let triv = Representation::trivial(&g, &g.whole(), &f, 2);
        let r = UnitSeries::build(EndAlgebra::of(&g, &triv), SeriesKind::Derived, &Budgets::default());
        assert!(matches!(r, Err(ChainError::NotSoluble(336))), "{r:?}");
    }
}
