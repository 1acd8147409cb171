//! Decomposing a finite abelian quotient `A/B` of matrix groups into
//! invariant factors, with coordinates and a set-theoretic section.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::intmat::{smith_normal_form, IntMatrix};
use crate::matrix::FqMatrix;

/// `A/B ≅ ⊕ ℤ/dᵢ` for explicit finite groups `B ≤ A` with `A/B` abelian.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    factors: Vec<i64>,
    coset_of: HashMap<FqMatrix, usize>,
    coords: Vec<Vec<i64>>,
    // one representative per factor generator
    gens: Vec<FqMatrix>,
    identity: FqMatrix,
}

impl AbelianQuotient {
    /// `a` must be closed under multiplication, contain `b`, and `b` must be
    /// normal in `a` with abelian quotient; `a[0]` need not be the identity.
    pub fn new(a: &[FqMatrix], b: &[FqMatrix]) -> Self {
        let identity = FqMatrix::identity(a[0].field(), a[0].rows());
        let mut coset_of: HashMap<FqMatrix, usize> = HashMap::with_capacity(a.len());
        let mut reps: Vec<FqMatrix> = Vec::new();
        // the identity coset first
        for x in std::iter::once(&identity).chain(a.iter()) {
            if coset_of.contains_key(x) {
                continue;
            }
            let c = reps.len();
            reps.push(x.clone());
            for y in b {
                coset_of.insert(x.mul(y), c);
            }
        }
        let m = reps.len();
        let mul = |c1: usize, c2: usize| coset_of[&reps[c1].mul(&reps[c2])];

        // greedy generators and word vectors by breadth-first search
        let mut gens: Vec<usize> = Vec::new();
        let mut words: Vec<Option<Vec<i64>>> = vec![None; m];
        words[0] = Some(vec![]);
        let mut reached = 1;
        while reached < m {
            let g = (0..m).find(|&c| words[c].is_none()).unwrap();
            gens.push(g);
            let s = gens.len();
            for w in words.iter_mut().flatten() {
                w.resize(s, 0);
            }
            let mut frontier: Vec<usize> = (0..m).filter(|&c| words[c].is_some()).collect();
            while let Some(c) = frontier.pop() {
                for (i, &gi) in gens.iter().enumerate() {
                    let d = mul(c, gi);
                    if words[d].is_none() {
                        let mut w = words[c].clone().unwrap();
                        w[i] += 1;
                        words[d] = Some(w);
                        reached += 1;
                        frontier.push(d);
                    }
                }
            }
        }
        let s = gens.len();
        let words: Vec<Vec<i64>> = words.into_iter().map(|w| w.unwrap()).collect();

        // relations w(c) + eᵢ − w(c·gᵢ)
        let mut rels: Vec<Vec<i64>> = Vec::new();
        for c in 0..m {
            for (i, &gi) in gens.iter().enumerate() {
                let d = mul(c, gi);
                let mut r: Vec<i64> = words[c].iter().zip(&words[d]).map(|(a, b)| a - b).collect();
                r[i] += 1;
                if r.iter().any(|&x| x != 0) {
                    rels.push(r);
                }
            }
        }
        if s == 0 {
            return AbelianQuotient { factors: vec![], coset_of, coords: vec![vec![]; m], gens: vec![], identity };
        }
        if rels.is_empty() {
            rels.push(vec![0; s]);
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&rels));
        let diag: Vec<i64> = snf.diagonal().iter().map(|d| d.to_i64().unwrap()).collect();
        let v = &snf.v;
        let v_inv = &snf.v_inv;
        let keep: Vec<usize> = (0..s).filter(|&i| diag.get(i).copied().unwrap_or(0) != 1).collect();
        let factors: Vec<i64> = keep.iter().map(|&i| diag[i]).collect();
        assert!(factors.iter().all(|&d| d > 1), "finite quotient");
        let coords: Vec<Vec<i64>> = words
            .iter()
            .map(|w| {
                keep.iter()
                    .zip(&factors)
                    .map(|(&i, &d)| {
                        let x: i64 = (0..s).map(|k| w[k] * v.get(k, i).to_i64().unwrap()).sum();
                        x.rem_euclid(d)
                    })
                    .collect()
            })
            .collect();
        let orders: Vec<i64> = gens.iter().map(|&g| coset_order(g, &mul) as i64).collect();
        let gen_mats: Vec<FqMatrix> = keep
            .iter()
            .map(|&i| {
                let mut acc = identity.clone();
                for k in 0..s {
                    let e = v_inv.get(i, k).to_i64().unwrap().rem_euclid(orders[k]);
                    for _ in 0..e {
                        acc = acc.mul(&reps[gens[k]]);
                    }
                }
                acc
            })
            .collect();
        AbelianQuotient { factors, coset_of, coords, gens: gen_mats, identity }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    pub fn project(&self, x: &FqMatrix) -> Vec<i64> {
        self.coords[self.coset_of[x]].clone()
    }

    pub fn contains(&self, x: &FqMatrix) -> bool {
        self.coset_of.contains_key(x)
    }

    pub fn section(&self, a: &[i64]) -> FqMatrix {
        let mut acc = self.identity.clone();
        for ((g, &ai), &d) in self.gens.iter().zip(a).zip(&self.factors) {
            for _ in 0..ai.rem_euclid(d) {
                acc = acc.mul(g);
            }
        }
        acc
    }

    /// Representative matrices of the factor generators.
    pub fn generators(&self) -> &[FqMatrix] {
        &self.gens
    }
}

fn coset_order(g: usize, mul: &impl Fn(usize, usize) -> usize) -> usize {
    let mut c = g;
    let mut k = 1;
    while c != 0 {
        c = mul(c, g);
        k += 1;
    }
    k
}
