//! Integer matrices and Smith normal form over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `s = u · m · v` with `u`, `v` unimodular and `s` diagonal; `v_inv = v⁻¹`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// The diagonal of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.get(i, i).clone()).collect()
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m.data[i * n + i] = BigInt::from(d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // rows (a, b) ← (p·a + q·b, r·a + s·b)
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = p * &x + q * &y;
            self.data[b * self.cols + j] = r * &x + s * &y;
        }
    }

    // cols (a, b) ← (p·a + q·b, r·a + s·b)
    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + a].clone();
            let y = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = p * &x + q * &y;
            self.data[i * self.cols + b] = r * &x + s * &y;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -&self.data[a * self.cols + j];
            self.data[a * self.cols + j] = v;
        }
    }
}

/// Smith normal form: returns `(U, S, V)` with `S = U·M·V`, `S` diagonal,
/// non-negative, and `d₁ | d₂ | …` (zeros last).
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);
    let one = BigInt::one();
    let zero = BigInt::zero();

    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = s.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let a = s.get(i, t).clone();
                if a.is_zero() {
                    continue;
                }
                let p = s.get(t, t).clone();
                if (&a % &p).is_zero() {
                    let q = -(&a / &p);
                    s.combine_rows(t, i, &one, &zero, &q, &one);
                    u.combine_rows(t, i, &one, &zero, &q, &one);
                } else {
                    let e = p.extended_gcd(&a);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let r = -(&a / &g);
                    let w = &p / &g;
                    s.combine_rows(t, i, &x, &y, &r, &w);
                    u.combine_rows(t, i, &x, &y, &r, &w);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let a = s.get(t, j).clone();
                if a.is_zero() {
                    continue;
                }
                let p = s.get(t, t).clone();
                if (&a % &p).is_zero() {
                    let q = -(&a / &p);
                    s.combine_cols(t, j, &one, &zero, &q, &one);
                    v.combine_cols(t, j, &one, &zero, &q, &one);
                    v_inv.combine_rows(t, j, &one, &-&q, &zero, &one);
                } else {
                    let e = p.extended_gcd(&a);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let r = -(&a / &g);
                    let w = &p / &g;
                    s.combine_cols(t, j, &x, &y, &r, &w);
                    v.combine_cols(t, j, &x, &y, &r, &w);
                    v_inv.combine_rows(t, j, &w, &-&r, &-&y, &x);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: pivot must divide the rest of the block
            let p = s.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(s.get(i, j) % &p).is_zero()));
            match bad {
                Some(i) => {
                    s.combine_rows(t, i, &one, &one, &zero, &one);
                    u.combine_rows(t, i, &one, &one, &zero, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, s, v, v_inv }
}

/// Row-style Hermite basis of the lattice spanned by `gens` in ℤⁿ: an
/// upper-triangular list of vectors with positive pivots.
pub fn lattice_basis(n: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis = Vec::new();
    for c in 0..n {
        // gcd-combine all rows with nonzero entry in column c
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for r in rows.drain(..) {
            if r[c].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let e = p[c].extended_gcd(&r[c]);
                    let g = e.gcd.clone();
                    let new_p: Vec<BigInt> = p.iter().zip(&r).map(|(a, b)| &e.x * a + &e.y * b).collect();
                    let (pc, rc) = (&p[c] / &g, &r[c] / &g);
                    let other: Vec<BigInt> = p.iter().zip(&r).map(|(a, b)| &pc * b - &rc * a).collect();
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[c].is_negative() {
                p.iter_mut().for_each(|x| *x = -&*x);
            }
            basis.push(p);
        }
    }
    // reduce entries above each pivot
    for i in (0..basis.len()).rev() {
        let c = basis[i].iter().position(|x| !x.is_zero()).unwrap();
        for k in 0..i {
            let q = basis[k][c].div_floor(&basis[i][c]);
            if !q.is_zero() {
                let bi = basis[i].clone();
                for (x, y) in basis[k].iter_mut().zip(&bi) {
                    *x -= &q * y;
                }
            }
        }
    }
    basis
}
