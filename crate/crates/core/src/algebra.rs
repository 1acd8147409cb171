//! The endomorphism algebra of a representation, its Jacobson radical, and
//! the chain `H ⊳ 1+J ⊳ 1+J² ⊳ …` of unit groups.

use std::collections::HashMap;

use thiserror::Error;

use crate::budget::{pow_sat, BudgetExceeded, Budgets};
use crate::field::{factorize, Field, Fq};
use crate::group::GroupTable;
use crate::matrix::{FqMatrix, SubspaceBasis};
use crate::rep::{commutant_like, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("the endomorphism algebra is not local, so the module is decomposable")]
    NotIndecomposable,
    #[error("the automorphism group is not soluble: its derived series stops at a subgroup of order {0}")]
    NotSoluble(usize),
}

/// `E = End(V)` for a representation, as a subspace of `n×n` matrices.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    field: Field,
    n: usize,
    basis: SubspaceBasis,
}

impl EndAlgebra {
    /// The commutant of `θ(L)`.
    pub fn of(g: &GroupTable, theta: &Representation) -> Self {
        let gens = theta.subgroup().generators(g);
        let mats = commutant_like(theta.field(), theta.dim(), gens.iter().map(|&l| (theta.image(l), theta.image(l))));
        Self::from_matrices(theta.field(), theta.dim(), &mats)
    }

    pub fn from_matrices(field: &Field, n: usize, mats: &[FqMatrix]) -> Self {
        let vecs: Vec<Vec<Fq>> = mats.iter().map(|m| m.to_vector()).collect();
        let basis = SubspaceBasis::spanned_by(field, n * n, &vecs);
        EndAlgebra { field: field.clone(), n, basis }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Matrix size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> Vec<FqMatrix> {
        self.basis.vectors().iter().map(|v| FqMatrix::from_vector(&self.field, self.n, self.n, v)).collect()
    }

    pub fn contains(&self, m: &FqMatrix) -> bool {
        self.basis.contains(m.entries())
    }

    pub fn coords(&self, m: &FqMatrix) -> Option<Vec<Fq>> {
        self.basis.coords(m.entries())
    }

    pub fn element(&self, coords: &[Fq]) -> FqMatrix {
        FqMatrix::from_vector(&self.field, self.n, self.n, &self.basis.combine(coords))
    }

    pub fn size(&self) -> u128 {
        pow_sat(self.field.order(), self.dim())
    }

    /// Every element, in the order of their coordinate codes.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<FqMatrix>, BudgetExceeded> {
        BudgetExceeded::check("enumerating the endomorphism algebra", self.size(), budget)?;
        let q = self.field.order();
        let d = self.dim();
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut coords = vec![Fq(0); d];
        for code in 0..self.size() as u64 {
            let mut c = code;
            for slot in coords.iter_mut() {
                *slot = Fq((c % q) as u32);
                c /= q;
            }
            out.push(self.element(&coords));
        }
        Ok(out)
    }
}

fn is_nilpotent(m: &FqMatrix) -> bool {
    m.pow(m.rows() as u64).is_zero()
}

/// The Jacobson radical of `E` and its powers.
#[derive(Clone, Debug)]
pub struct Radical {
    /// `J, J², …, J^k = 0` (the last entry is the zero subspace).
    pub powers: Vec<SubspaceBasis>,
    /// Whether `E` is local (every element a unit or nilpotent).
    pub local: bool,
    /// `r` with `E/J ≅ GF(q^r)` when local.
    pub residue_degree: Option<usize>,
    pub unit_count: u128,
}

impl Radical {
    pub fn dim_j(&self) -> usize {
        self.powers[0].dim()
    }

    /// Nilpotency index `k`: the least `k` with `J^k = 0`.
    pub fn nilpotency(&self) -> usize {
        self.powers.len()
    }
}

fn span_products(field: &Field, n: usize, a: &[Vec<Fq>], b: &[Vec<Fq>]) -> SubspaceBasis {
    let mut prods = Vec::new();
    for x in a {
        let xm = FqMatrix::from_vector(field, n, n, x);
        for y in b {
            prods.push(xm.mul(&FqMatrix::from_vector(field, n, n, y)).to_vector());
        }
    }
    SubspaceBasis::spanned_by(field, n * n, &prods)
}

/// Computes `J` by enumerating `E`.
///
/// For local `E`, `J` is the set of nilpotent elements. Otherwise `J` is
/// `{x : x·y nilpotent for all y}`, the largest nilpotent ideal.
pub fn radical_chain(e: &EndAlgebra, budgets: &Budgets) -> Result<Radical, BudgetExceeded> {
    let all = e.enumerate(budgets.algebra)?;
    let nil: Vec<&FqMatrix> = all.iter().filter(|m| is_nilpotent(m)).collect();
    let units = all.iter().filter(|m| m.is_invertible()).count() as u128;
    let local = units + nil.len() as u128 == all.len() as u128;
    let field = e.field();
    let n = e.n();
    let j = if local {
        let vecs: Vec<Vec<Fq>> = nil.iter().map(|m| m.to_vector()).collect();
        SubspaceBasis::spanned_by(field, n * n, &vecs)
    } else {
        BudgetExceeded::check("radical of a non-local algebra", nil.len() as u128 * all.len() as u128, budgets.algebra * 16)?;
        let members: Vec<Vec<Fq>> = nil
            .iter()
            .filter(|x| all.iter().all(|y| is_nilpotent(&x.mul(y))))
            .map(|m| m.to_vector())
            .collect();
        SubspaceBasis::spanned_by(field, n * n, &members)
    };
    let mut powers = vec![j.clone()];
    while powers.last().unwrap().dim() > 0 {
        let next = span_products(field, n, powers.last().unwrap().vectors(), j.vectors());
        powers.push(next);
    }
    if powers.len() == 1 {
        // J = 0 already
        debug_assert_eq!(j.dim(), 0);
    }
    let residue_degree = local.then(|| e.dim() - j.dim());
    Ok(Radical { powers, local, residue_degree, unit_count: units })
}

/// Whether `θ` is indecomposable, i.e. `End(θ)` is local.
pub fn is_indecomposable(g: &GroupTable, theta: &Representation, budgets: &Budgets) -> Result<bool, BudgetExceeded> {
    Ok(radical_chain(&EndAlgebra::of(g, theta), budgets)?.local)
}

/// The radical chain `H₀ = E^× ⊳ H₁ = 1+J ⊳ … ⊳ H_k = 1` of a local
/// endomorphism algebra, with coordinates on each layer.
///
/// Layer `j` is `Q_{j+1} = H_j/H_{j+1}`: for `j = 0` the cyclic group
/// `(E/J)^× ≅ ℤ/(q^r − 1)`, and for `j ≥ 1` the elementary abelian group
/// `J^j/J^{j+1} ≅ (ℤ/p)^{dim·e}` read through base-`p` digits.
#[derive(Clone, Debug)]
pub struct AutChain {
    algebra: EndAlgebra,
    radical: Radical,
    // adapted basis of E: complement of J, then K_1, K_2, … with J^m = K_m ⊕ … ⊕ K_{k−1}
    adapted: SubspaceBasis,
    // block offsets: [0, r, r + dim K_1, …, dim E]
    offsets: Vec<usize>,
    generator: FqMatrix,
    powers: Vec<FqMatrix>,
    dlog: HashMap<Vec<Fq>, usize>,
}

impl AutChain {
    pub fn new(algebra: EndAlgebra, budgets: &Budgets) -> Result<Self, ChainError> {
        let radical = radical_chain(&algebra, budgets)?;
        if !radical.local {
            return Err(ChainError::NotIndecomposable);
        }
        let field = algebra.field().clone();
        let n = algebra.n();
        let nn = n * n;
        // complements, deepest layer last
        let mut blocks: Vec<Vec<Vec<Fq>>> = Vec::new();
        let e_basis = SubspaceBasis::new(&field, nn, algebra.basis.vectors().to_vec()).unwrap();
        blocks.push(radical.powers[0].complement_in(&e_basis));
        for m in 0..radical.powers.len() - 1 {
            blocks.push(radical.powers[m + 1].complement_in(&radical.powers[m]));
        }
        let mut offsets = vec![0];
        let mut vecs = Vec::new();
        for b in &blocks {
            vecs.extend(b.iter().cloned());
            offsets.push(vecs.len());
        }
        let adapted = SubspaceBasis::new(&field, nn, vecs).expect("adapted basis is a basis");
        let r = offsets[1];
        let q = field.order();
        let top = pow_sat(q, r) - 1;
        BudgetExceeded::check("the cyclic top layer", top, budgets.algebra)?;
        let top = top as u64;

        let key = |m: &FqMatrix, adapted: &SubspaceBasis| -> Vec<Fq> { adapted.coords(m.entries()).unwrap()[..r].to_vec() };
        let one_key = key(&FqMatrix::identity(&field, n), &adapted);
        let primes: Vec<u64> = factorize(top).into_iter().map(|(p, _)| p).collect();
        // the first element (by complement coordinates) of full order in (E/J)^×
        let mut generator = None;
        let mut coords = vec![Fq(0); r];
        for code in 1..=top {
            let mut c = code;
            for slot in coords.iter_mut() {
                *slot = Fq((c % q) as u32);
                c /= q;
            }
            let mut full = vec![Fq(0); nn];
            for (i, &ci) in coords.iter().enumerate() {
                for (f, &x) in full.iter_mut().zip(&adapted.vectors()[i]) {
                    *f = field.add(*f, field.mul(ci, x));
                }
            }
            let u = FqMatrix::from_vector(&field, n, n, &full);
            if !u.is_invertible() {
                continue;
            }
            if primes.iter().all(|&p| key(&u.pow(top / p), &adapted) != one_key) {
                generator = Some(u);
                break;
            }
        }
        let generator = generator.unwrap_or_else(|| FqMatrix::identity(&field, n));
        let mut powers = Vec::with_capacity(top as usize);
        let mut dlog = HashMap::new();
        let mut cur = FqMatrix::identity(&field, n);
        for a in 0..top as usize {
            dlog.insert(key(&cur, &adapted), a);
            powers.push(cur.clone());
            cur = cur.mul(&generator);
        }
        Ok(AutChain { algebra, radical, adapted, offsets, generator, powers, dlog })
    }

    pub fn of(g: &GroupTable, theta: &Representation, budgets: &Budgets) -> Result<Self, ChainError> {
        Self::new(EndAlgebra::of(g, theta), budgets)
    }

    pub fn algebra(&self) -> &EndAlgebra {
        &self.algebra
    }

    pub fn radical(&self) -> &Radical {
        &self.radical
    }

    pub fn residue_degree(&self) -> usize {
        self.offsets[1]
    }

    /// The fixed generator of `(E/J)^×`.
    pub fn top_generator(&self) -> &FqMatrix {
        &self.generator
    }

    /// `k` with `H_k = 1`.
    pub fn depth(&self) -> usize {
        self.radical.nilpotency()
    }

    fn field(&self) -> &Field {
        self.algebra.field()
    }

    fn block(&self, j: usize) -> std::ops::Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    /// Invariant factors of `Q_{j+1} = H_j/H_{j+1}` (empty when trivial).
    pub fn factors(&self, j: usize) -> Vec<i64> {
        if j == 0 {
            let top = self.powers.len() as i64;
            if top > 1 { vec![top] } else { vec![] }
        } else {
            let e = self.field().degree();
            vec![self.field().p() as i64; self.block(j).len() * e]
        }
    }

    /// `|H_j|`.
    pub fn order(&self, j: usize) -> u128 {
        let q = self.field().order();
        let dim_jj = if j == 0 { self.radical.dim_j() } else { self.radical.powers.get(j - 1).map_or(0, |b| b.dim()) };
        let base = pow_sat(q, dim_jj);
        if j == 0 { base * self.powers.len() as u128 } else { base }
    }

    pub fn contains(&self, j: usize, u: &FqMatrix) -> bool {
        if j == 0 {
            return u.is_invertible() && self.algebra.contains(u);
        }
        if j >= self.depth() {
            return u.is_identity();
        }
        let x = u.sub(&FqMatrix::identity(self.field(), u.rows()));
        self.radical.powers[j - 1].contains(x.entries())
    }

    /// Image of `u ∈ H_j` in `Q_{j+1}`.
    pub fn project(&self, j: usize, u: &FqMatrix) -> Vec<i64> {
        let field = self.field();
        if j == 0 {
            if self.powers.len() <= 1 {
                return vec![];
            }
            let c = self.adapted.coords(u.entries()).expect("element of E");
            return vec![self.dlog[&c[..self.offsets[1]]] as i64];
        }
        let x = u.sub(&FqMatrix::identity(field, u.rows()));
        let c = self.adapted.coords(x.entries()).expect("element of J^j");
        let e = field.degree();
        let mut out = Vec::with_capacity(self.block(j).len() * e);
        for i in self.block(j) {
            let d = field.digits(c[i]);
            out.extend(d[..e].iter().map(|&x| x as i64));
        }
        out
    }

    /// A fixed lift of `a ∈ Q_{j+1}` to `H_j`; `section(j, 0) = I`.
    pub fn section(&self, j: usize, a: &[i64]) -> FqMatrix {
        let field = self.field();
        if j == 0 {
            if self.powers.len() <= 1 {
                return FqMatrix::identity(field, self.algebra.n());
            }
            let k = self.powers.len() as i64;
            return self.powers[a[0].rem_euclid(k) as usize].clone();
        }
        let e = field.degree();
        let p = field.p() as i64;
        let mut coeffs = vec![Fq(0); self.adapted.dim()];
        for (t, i) in self.block(j).enumerate() {
            let digits: Vec<u64> = a[t * e..(t + 1) * e].iter().map(|&x| x.rem_euclid(p) as u64).collect();
            coeffs[i] = field.from_digits(&digits);
        }
        let x = FqMatrix::from_vector(field, self.algebra.n(), self.algebra.n(), &self.adapted.combine(&coeffs));
        x.add(&FqMatrix::identity(field, self.algebra.n()))
    }

    /// Generators of `H_j`.
    pub fn generators(&self, j: usize) -> Vec<FqMatrix> {
        let mut out = Vec::new();
        if j == 0 && self.powers.len() > 1 {
            out.push(self.generator.clone());
        }
        for m in j.max(1)..self.depth() {
            let size = self.factors(m).len();
            for i in 0..size {
                let mut a = vec![0; size];
                a[i] = 1;
                out.push(self.section(m, &a));
            }
        }
        out
    }

    /// Every element of `H_j`.
    pub fn elements(&self, j: usize, budget: u64) -> Result<Vec<FqMatrix>, BudgetExceeded> {
        BudgetExceeded::check("enumerating a unit group", self.order(j), budget)?;
        let field = self.field();
        let n = self.algebra.n();
        let start = if j == 0 { 1 } else { j };
        let mut nil = vec![FqMatrix::zero(field, n, n)];
        if start < self.depth() {
            let sub = &self.radical.powers[start - 1];
            let q = field.order();
            nil.clear();
            let mut coeffs = vec![Fq(0); sub.dim()];
            for code in 0..pow_sat(q, sub.dim()) as u64 {
                let mut c = code;
                for slot in coeffs.iter_mut() {
                    *slot = Fq((c % q) as u32);
                    c /= q;
                }
                nil.push(FqMatrix::from_vector(field, n, n, &sub.combine(&coeffs)));
            }
        }
        let id = FqMatrix::identity(field, n);
        let tops: Vec<FqMatrix> = if j == 0 { self.powers.clone() } else { vec![id.clone()] };
        let mut out = Vec::with_capacity(tops.len() * nil.len());
        for t in &tops {
            for x in &nil {
                out.push(t.mul(&id.add(x)));
            }
        }
        Ok(out)
    }

    /// The first level `j` whose subgroup is not preserved by conjugation
    /// with `x` (given with its inverse), if any.
    pub fn unstable_level(&self, x: &FqMatrix, x_inv: &FqMatrix) -> Option<usize> {
        let field = self.field();
        let n = self.algebra.n();
        for b in self.algebra.basis() {
            if !self.algebra.contains(&x.mul(&b).mul(x_inv)) {
                return Some(0);
            }
        }
        for (m, jm) in self.radical.powers.iter().enumerate() {
            for v in jm.vectors() {
                let b = FqMatrix::from_vector(field, n, n, v);
                if !jm.contains(x.mul(&b).mul(x_inv).entries()) {
                    return Some(m + 1);
                }
            }
        }
        None
    }
}
