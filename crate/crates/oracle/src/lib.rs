//! Brute-force ground truth for `gstable-core`.
//!
//! Nothing here calls the cohomology solver, the series machinery or the
//! engine. Group tables, field arithmetic and module actions are shared
//! data types; differentials, homomorphism checks and automorphism groups
//! are evaluated from scratch.

use std::collections::HashSet;

use gstable_core::cohomology::{ActionModule, Cochain};
use gstable_core::field::{Field, Fq};
use gstable_core::group::{GroupTable, Subgroup};
use gstable_core::matrix::FqMatrix;
use gstable_core::rep::Representation;
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget { what: &'static str, needed: u128, limit: u128 },
    #[error("degree {0} is not supported")]
    Degree(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest matrix space `q^(n²)` scanned for automorphisms.
    pub max_h: u128,
    /// Largest number of candidate tables.
    pub max_candidates: u128,
    /// Largest number of cochains enumerated.
    pub max_cochains: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_h: 1 << 16, max_candidates: 1 << 24, max_cochains: 1 << 18 }
    }
}

fn check(what: &'static str, needed: u128, limit: u128) -> Result<(), OracleError> {
    if needed > limit {
        Err(OracleError::Budget { what, needed, limit })
    } else {
        Ok(())
    }
}

fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Every `n×n` matrix over the field, in code order.
pub fn all_matrices(field: &Field, n: usize, budget: &OracleBudget) -> Result<Vec<FqMatrix>, OracleError> {
    let q = field.order() as u128;
    let total = pow(q, n * n);
    check("scanning the matrix space", total, budget.max_h)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; n * n];
    for _ in 0..total {
        let data: Vec<Fq> = digits.iter().map(|&c| field.element(c).unwrap()).collect();
        out.push(FqMatrix::from_vec(field, n, n, data).unwrap());
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u128) < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// All matrices `M` with `M·a = b·M` for every pair.
fn solutions(field: &Field, n: usize, pairs: &[(&FqMatrix, &FqMatrix)], budget: &OracleBudget) -> Result<Vec<FqMatrix>, OracleError> {
    Ok(all_matrices(field, n, budget)?.into_iter().filter(|m| pairs.iter().all(|(a, b)| m.mul(a) == b.mul(m))).collect())
}

/// `End_L(V)` by exhaustion.
pub fn endomorphisms(theta: &Representation, budget: &OracleBudget) -> Result<Vec<FqMatrix>, OracleError> {
    let pairs: Vec<(&FqMatrix, &FqMatrix)> = theta.images().into_iter().map(|a| (a, a)).collect();
    solutions(theta.field(), theta.dim(), &pairs, budget)
}

/// `Aut_L(V)` by exhaustion.
pub fn automorphisms(theta: &Representation, budget: &OracleBudget) -> Result<Vec<FqMatrix>, OracleError> {
    Ok(endomorphisms(theta, budget)?.into_iter().filter(|m| m.is_invertible()).collect())
}

/// A finite algebra is local iff its non-units are closed under addition.
pub fn is_local(algebra: &[FqMatrix]) -> bool {
    let non_units: Vec<&FqMatrix> = algebra.iter().filter(|m| !m.is_invertible()).collect();
    non_units.iter().all(|a| non_units.iter().all(|b| !a.add(b).is_invertible()))
}

fn respects_products(g: &GroupTable, table: &[FqMatrix]) -> bool {
    for x in g.elements() {
        for y in g.elements() {
            if table[x].mul(&table[y]) != table[g.mul(x, y)] {
                return false;
            }
        }
    }
    true
}

/// Left coset representatives of `L`, the identity first, and for each
/// element its representative and `L`-part.
fn left_cosets(g: &GroupTable, l: &Subgroup) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut reps = Vec::new();
    let mut split = vec![None; g.order()];
    for x in g.elements() {
        if split[x].is_some() {
            continue;
        }
        reps.push(x);
        for &y in l.elements() {
            split[g.mul(x, y)] = Some((x, y));
        }
    }
    (reps, split.into_iter().map(Option::unwrap).collect())
}

/// All homomorphisms `Θ: G → GL(V)` with `Θ|_L = θ`, in lexicographic
/// order of their values on the coset representatives.
///
/// For a representative `t`, `Θ(t)θ(l) = Θ(tl) = θ(tlt⁻¹)Θ(t)` whenever
/// `tlt⁻¹ ∈ L`. So `Θ(t)` lies in the set of invertible solutions of these
/// equations, which for normal `L` is the coset `w(t)·Aut_L(V)` of any
/// stability witness `w`. This is the one mathematical reduction used.
pub fn brute_extensions(g: &GroupTable, theta: &Representation, budget: &OracleBudget) -> Result<Vec<Vec<FqMatrix>>, OracleError> {
    let l = theta.subgroup();
    let (reps, split) = left_cosets(g, l);
    let field = theta.field();
    let n = theta.dim();
    let space = all_matrices(field, n, budget)?;
    let mut candidates: Vec<Vec<FqMatrix>> = Vec::new();
    for &t in &reps[1..] {
        let ti = g.inv(t);
        let pairs: Vec<(usize, usize)> = l
            .elements()
            .iter()
            .map(|&x| (x, g.mul(g.mul(t, x), ti)))
            .filter(|&(_, y)| l.contains(y))
            .collect();
        let c: Vec<FqMatrix> = space
            .iter()
            .filter(|m| m.is_invertible() && pairs.iter().all(|&(x, y)| m.mul(theta.image(x)) == theta.image(y).mul(m)))
            .cloned()
            .collect();
        if c.is_empty() {
            return Ok(vec![]);
        }
        candidates.push(c);
    }
    let total = candidates.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    check("enumerating candidate tables", total, budget.max_candidates)?;

    let index_of: Vec<usize> = split.iter().map(|&(t, _)| reps.iter().position(|&r| r == t).unwrap()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; candidates.len()];
    let id = FqMatrix::identity(field, n);
    'outer: loop {
        let table: Vec<FqMatrix> = g
            .elements()
            .map(|x| {
                let (_, lpart) = split[x];
                let i = index_of[x];
                let head = if i == 0 { &id } else { &candidates[i - 1][choice[i - 1]] };
                head.mul(theta.image(lpart))
            })
            .collect();
        if respects_products(g, &table) {
            out.push(table);
        }
        for (c, options) in choice.iter_mut().zip(&candidates).rev() {
            *c += 1;
            if *c < options.len() {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    Ok(out)
}

/// Partitions tables under simultaneous conjugation by `h`; classes are
/// listed by first member, members in input order.
pub fn conjugacy_dedup(tables: &[Vec<FqMatrix>], h: &[FqMatrix]) -> Vec<Vec<usize>> {
    let inverses: Vec<FqMatrix> = h.iter().map(|m| m.inverse().expect("automorphisms are invertible")).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        let found = classes.iter().position(|c| {
            let r = &tables[c[0]];
            h.iter().zip(&inverses).any(|(a, ai)| r.iter().zip(t).all(|(x, y)| a.mul(x).mul(ai) == *y))
        });
        match found {
            Some(c) => classes[c].push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

// ---------------------------------------------------------------------------
// cohomology

/// A cochain stored on all of `G^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Func {
    n: usize,
    values: Vec<Vec<i64>>,
}

fn tuple_of(mut index: usize, n: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    t
}

fn index_of(t: &[usize], order: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * order + x)
}

struct Complex<'a> {
    g: &'a GroupTable,
    l: &'a Subgroup,
    module: &'a ActionModule,
}

impl Complex<'_> {
    fn zero(&self, n: usize) -> Func {
        Func { n, values: vec![self.module.zero(); pow(self.g.order() as u128, n) as usize] }
    }

    /// Tuples carrying free coordinates: no identity entry, not all in `L`.
    fn free_tuples(&self, n: usize) -> Vec<usize> {
        let order = self.g.order();
        let e = self.g.identity();
        (0..pow(order as u128, n) as usize)
            .filter(|&i| {
                let t = tuple_of(i, n, order);
                !t.contains(&e) && !t.iter().all(|&x| self.l.contains(x))
            })
            .collect()
    }

    fn invariants(&self) -> Vec<Vec<i64>> {
        self.module.elements().into_iter().filter(|a| self.l.elements().iter().all(|&x| self.module.act(x, a) == *a)).collect()
    }

    fn d(&self, c: &Func) -> Func {
        let g = self.g;
        let m = self.module;
        let order = g.order();
        let n = c.n;
        let mut out = self.zero(n + 1);
        for (i, slot) in out.values.iter_mut().enumerate() {
            let t = tuple_of(i, n + 1, order);
            let mut acc = m.act(t[0], &c.values[index_of(&t[1..], order)]);
            for k in 0..n {
                let mut s: Vec<usize> = t[..k].to_vec();
                s.push(g.mul(t[k], t[k + 1]));
                s.extend_from_slice(&t[k + 2..]);
                let v = &c.values[index_of(&s, order)];
                acc = if k % 2 == 0 { m.sub(&acc, v) } else { m.add(&acc, v) };
            }
            let v = &c.values[index_of(&t[..n], order)];
            acc = if n.is_multiple_of(2) { m.sub(&acc, v) } else { m.add(&acc, v) };
            *slot = acc;
        }
        out
    }

    /// All relative normalized `n`-cochains (`A^L` in degree 0).
    fn cochains(&self, n: usize, budget: &OracleBudget) -> Result<Vec<Func>, OracleError> {
        if n == 0 {
            return Ok(self.invariants().into_iter().map(|a| Func { n: 0, values: vec![a] }).collect());
        }
        let free = self.free_tuples(n);
        let elems = self.module.elements();
        let total = pow(elems.len() as u128, free.len());
        check("enumerating cochains", total, budget.max_cochains)?;
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0usize; free.len()];
        let mut c = self.zero(n);
        loop {
            for (&i, &d) in free.iter().zip(&digits) {
                c.values[i] = elems[d].clone();
            }
            out.push(c.clone());
            let mut carried = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < elems.len() {
                    carried = false;
                    break;
                }
                *d = 0;
            }
            if carried {
                break;
            }
        }
        Ok(out)
    }

    fn coboundaries(&self, n: usize, budget: &OracleBudget) -> Result<HashSet<Func>, OracleError> {
        Ok(self.cochains(n - 1, budget)?.iter().map(|c| self.d(c)).collect())
    }

    /// Moduli and generators of `C^n` as a subgroup of `⊕ A` over tuples.
    fn generators(&self, n: usize) -> Vec<Func> {
        if n == 0 {
            // A^L is small: use its elements
            return self.invariants().into_iter().map(|a| Func { n: 0, values: vec![a] }).collect();
        }
        let k = self.module.rank();
        let mut out = Vec::new();
        for i in self.free_tuples(n) {
            for j in 0..k {
                let mut c = self.zero(n);
                c.values[i][j] = 1;
                out.push(c);
            }
        }
        out
    }

    fn flat(&self, c: &Func) -> Vec<i64> {
        c.values.iter().flatten().copied().collect()
    }

    /// Order of `d(C^n)` via a lattice index.
    fn image_order(&self, n: usize) -> u128 {
        let count = pow(self.g.order() as u128, n + 1) as usize;
        let moduli: Vec<i64> = (0..count).flat_map(|_| self.module.factors().iter().copied()).collect();
        let images: Vec<Vec<i64>> = self.generators(n).iter().map(|c| self.flat(&self.d(c))).collect();
        generated_order(&moduli, images)
    }

    fn cochain_order(&self, n: usize) -> u128 {
        if n == 0 {
            return self.invariants().len() as u128;
        }
        pow(self.module.order(), self.free_tuples(n).len())
    }
}

/// The lattice `Λ ⊆ ℤ^m` spanned by some vectors and the `dᵢ·eᵢ`, kept in
/// triangular form modulo `lcm(dᵢ)`.
#[derive(Clone, Debug)]
pub struct Lattice {
    moduli: Vec<i64>,
    e: i128,
    /// One row per column, zero before its pivot.
    pivots: Vec<Vec<i128>>,
}

impl Lattice {
    pub fn new(moduli: &[i64], gens: Vec<Vec<i64>>) -> Self {
        let e = moduli.iter().fold(1i64, |a, &b| a.lcm(&b)) as i128;
        let m = moduli.len();
        let mut rows: Vec<Vec<i128>> = gens
            .into_iter()
            .map(|r| r.into_iter().map(|x| (x as i128).rem_euclid(e)).collect::<Vec<i128>>())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::with_capacity(m);
        for c in 0..m {
            let mut pivot = vec![0i128; m];
            pivot[c] = moduli[c] as i128;
            for r in rows.iter_mut() {
                if r[c] == 0 {
                    continue;
                }
                let ext = pivot[c].extended_gcd(&r[c]);
                let (gd, u, v) = (ext.gcd, ext.x, ext.y);
                let a = pivot[c] / gd;
                let b = r[c] / gd;
                for j in c..m {
                    let (p, x) = (pivot[j], r[j]);
                    pivot[j] = (u * p + v * x).rem_euclid(e);
                    r[j] = (b * p - a * x).rem_euclid(e);
                }
                pivot[c] = gd;
            }
            // (e / pivot)·pivot has a zero in column c and stays in the lattice
            let s = e / pivot[c];
            let extra: Vec<i128> = (0..m).map(|j| if j <= c { 0 } else { (s * pivot[j]).rem_euclid(e) }).collect();
            rows.retain(|r| r[c + 1..].iter().any(|&x| x != 0));
            if extra.iter().any(|&x| x != 0) {
                rows.push(extra);
            }
            pivots.push(pivot);
        }
        Lattice { moduli: moduli.to_vec(), e, pivots }
    }

    /// Order of the subgroup of `⊕ ℤ/dᵢ` that `Λ` describes; each pivot
    /// divides its modulus.
    pub fn subgroup_order(&self) -> u128 {
        self.pivots.iter().enumerate().map(|(c, p)| (self.moduli[c] as i128 / p[c]) as u128).product()
    }

    /// The unique representative of `v + Λ` with `0 ≤ vᵢ < pivotᵢ`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut w: Vec<i128> = v.iter().map(|&x| (x as i128).rem_euclid(self.e)).collect();
        for (c, p) in self.pivots.iter().enumerate() {
            let q = w[c].div_euclid(p[c]);
            if q != 0 {
                for j in c..w.len() {
                    w[j] = (w[j] - q * p[j]).rem_euclid(self.e);
                }
            }
        }
        w.into_iter().map(|x| x as i64).collect()
    }
}

/// Order of the subgroup of `⊕ ℤ/dᵢ` generated by `gens`.
pub fn generated_order(moduli: &[i64], gens: Vec<Vec<i64>>) -> u128 {
    Lattice::new(moduli, gens).subgroup_order()
}

#[derive(Clone, Debug)]
pub struct BruteCohomology {
    pub order: u128,
    /// Empty when the cocycles were counted rather than listed.
    pub representatives: Vec<Cochain>,
    pub exhaustive: bool,
}

fn to_cochain(c: &Func, order: usize, k: usize) -> Cochain {
    Cochain::from_fn(order, c.n, k, |t| c.values[index_of(t, order)].clone())
}

fn from_cochain(c: &Cochain, order: usize) -> Func {
    let n = c.degree();
    let values = (0..pow(order as u128, n) as usize).map(|i| c.value(&tuple_of(i, n, order)).to_vec()).collect();
    Func { n, values }
}

/// `H^n(G, L; A)` for `n ∈ {1, 2}`: exhaustive when the cochain space fits
/// the budget, otherwise counted as `|C^n| / (|d(C^n)|·|d(C^(n-1))|)`.
pub fn brute_cohomology(
    n: usize,
    g: &GroupTable,
    l: &Subgroup,
    module: &ActionModule,
    budget: &OracleBudget,
) -> Result<BruteCohomology, OracleError> {
    if !(1..=2).contains(&n) {
        return Err(OracleError::Degree(n));
    }
    let cx = Complex { g, l, module };
    let fits = |m: usize| cx.cochain_order(m) <= budget.max_cochains;
    if !(fits(n) && fits(n - 1)) {
        let cocycles = cx.cochain_order(n) / cx.image_order(n);
        let boundaries = cx.image_order(n - 1);
        return Ok(BruteCohomology { order: cocycles / boundaries, representatives: vec![], exhaustive: false });
    }
    let boundaries = cx.coboundaries(n, budget)?;
    let mut reps: Vec<Func> = Vec::new();
    let mut cocycles: u128 = 0;
    for c in cx.cochains(n, budget)? {
        if cx.d(&c).values.iter().any(|v| v.iter().any(|&x| x != 0)) {
            continue;
        }
        cocycles += 1;
        if reps.iter().all(|r| !boundaries.contains(&difference(module, &c, r))) {
            reps.push(c);
        }
    }
    let order = cocycles / boundaries.len() as u128;
    assert_eq!(order as usize, reps.len(), "class count and representatives disagree");
    let representatives = reps.iter().map(|c| to_cochain(c, g.order(), module.rank())).collect();
    Ok(BruteCohomology { order, representatives, exhaustive: true })
}

fn difference(module: &ActionModule, a: &Func, b: &Func) -> Func {
    Func { n: a.n, values: a.values.iter().zip(&b.values).map(|(x, y)| module.sub(x, y)).collect() }
}

/// Is the relative `n`-cochain `c` a coboundary of a relative cochain?
pub fn is_coboundary(
    g: &GroupTable,
    l: &Subgroup,
    module: &ActionModule,
    c: &Cochain,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    let cx = Complex { g, l, module };
    let target = from_cochain(c, g.order());
    if c.degree() == 0 {
        return Ok(target.values[0].iter().all(|&x| x == 0));
    }
    Ok(cx.coboundaries(c.degree(), budget)?.contains(&target))
}

/// One key per cochain; two relative `n`-cocycles are cohomologous iff
/// their keys agree.
pub fn class_keys(g: &GroupTable, l: &Subgroup, module: &ActionModule, cochains: &[Cochain]) -> Vec<Vec<i64>> {
    let Some(n) = cochains.first().map(Cochain::degree) else {
        return vec![];
    };
    let cx = Complex { g, l, module };
    let count = pow(g.order() as u128, n) as usize;
    let moduli: Vec<i64> = (0..count).flat_map(|_| module.factors().iter().copied()).collect();
    let gens: Vec<Vec<i64>> = if n == 0 { vec![] } else { cx.generators(n - 1).iter().map(|c| cx.flat(&cx.d(c))).collect() };
    let lattice = Lattice::new(&moduli, gens);
    cochains.iter().map(|c| lattice.reduce(&cx.flat(&from_cochain(c, g.order())))).collect()
}

/// Evaluates the differential of `c` independently of the main solver.
pub fn differential(g: &GroupTable, module: &ActionModule, c: &Cochain) -> Cochain {
    let whole = g.whole();
    let cx = Complex { g, l: &whole, module };
    to_cochain(&cx.d(&from_cochain(c, g.order())), g.order(), module.rank())
}
