//! Dense matrices over a finite field and the row-reduction routines built on them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::field::{Field, Fq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the system has no solution")]
    Inconsistent,
}

/// A dense `rows × cols` matrix over a finite field.
///
/// Equality, hashing and ordering only look at the shape and entries, so
/// matrices over the same field can be used as map keys.
#[derive(Clone)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for FqMatrix {}

impl Hash for FqMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for FqMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.data[i * self.cols + j].0)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        FqMatrix { field: field.clone(), rows, cols, data: vec![Fq(0); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fq>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(FqMatrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from integer rows; each integer is a field element code.
    pub fn from_codes(field: &Field, rows: &[Vec<u64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for &x in row {
                data.push(field.element(x).ok_or_else(|| MatrixError::Shape(format!("{x} is not a field element")))?);
            }
        }
        Ok(FqMatrix { field: field.clone(), rows: r, cols: c, data })
    }

    /// Convenience for prime fields: entries reduced mod `p`.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| field.from_int(x))).collect();
        FqMatrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn scalar(field: &Field, n: usize, a: Fq) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Fq] {
        &self.data
    }

    pub fn to_codes(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).0 as u64).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.0 == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j).0 == u32::from(i == j)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FqMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, a: Fq) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|&x| f.mul(a, x)).collect();
        FqMatrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.0 == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `self · other · self⁻¹`, with `self_inv` supplied.
    pub fn conjugate(&self, other: &Self, self_inv: &Self) -> Self {
        self.mul(other).mul(self_inv)
    }

    pub fn rank(&self) -> usize {
        rref(&self.field, self.rows, self.cols, self.data.clone()).pivots.len()
    }

    pub fn det(&self) -> Fq {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c].0 != 0) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[c * n + c];
            det = f.mul(det, pivot);
            let pinv = f.inv(pivot).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], pinv);
                if factor.0 == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det().0 != 0
    }

    /// The inverse, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = vec![Fq(0); n * 2 * n];
        for i in 0..n {
            for j in 0..n {
                aug[i * 2 * n + j] = self.get(i, j);
            }
            aug[i * 2 * n + n + i] = f.one();
        }
        let red = rref(f, n, 2 * n, aug);
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.data[i * 2 * n + n + j]);
            }
        }
        Some(out)
    }

    /// Reads the matrix as a vector (row-major).
    pub fn to_vector(&self) -> Vec<Fq> {
        self.data.clone()
    }

    pub fn from_vector(field: &Field, rows: usize, cols: usize, v: &[Fq]) -> Self {
        FqMatrix { field: field.clone(), rows, cols, data: v.to_vec() }
    }

    /// Linear combination `Σ cᵢ·Bᵢ`.
    pub fn combination(field: &Field, basis: &[FqMatrix], coeffs: &[Fq], rows: usize, cols: usize) -> Self {
        let mut out = Self::zero(field, rows, cols);
        for (b, &c) in basis.iter().zip(coeffs) {
            if c.0 == 0 {
                continue;
            }
            for (o, &x) in out.data.iter_mut().zip(&b.data) {
                *o = field.add(*o, field.mul(c, x));
            }
        }
        out
    }
}

/// Reduced row echelon form of a row-major matrix.
pub struct Rref {
    pub data: Vec<Fq>,
    pub pivots: Vec<usize>,
}

pub fn rref(f: &Field, rows: usize, cols: usize, mut a: Vec<Fq>) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c].0 != 0) else { continue };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("nonzero");
        for j in c..cols {
            a[r * cols + j] = f.mul(inv, a[r * cols + j]);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c];
            if factor.0 == 0 {
                continue;
            }
            for j in c..cols {
                a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { data: a, pivots }
}

/// Basis of `{x : M·x = 0}` for row-major `M`, in a deterministic order.
pub fn nullspace(f: &Field, rows: usize, cols: usize, m: &[Fq]) -> Vec<Vec<Fq>> {
    let red = rref(f, rows, cols, m.to_vec());
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Fq(0); cols];
        v[free] = f.one();
        for (i, &p) in red.pivots.iter().enumerate() {
            v[p] = f.neg(red.data[i * cols + free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves `M·X = B`. Returns a particular solution (free variables zero) and
/// a basis of `ker M`; `Inconsistent` when no solution exists.
pub fn mat_solve(m: &FqMatrix, b: &FqMatrix) -> Result<(FqMatrix, Vec<Vec<Fq>>), MatrixError> {
    if m.rows() != b.rows() {
        return Err(MatrixError::Shape(format!("{} rows vs {} rows", m.rows(), b.rows())));
    }
    let f = m.field().clone();
    let (rows, n, k) = (m.rows(), m.cols(), b.cols());
    let width = n + k;
    let mut aug = vec![Fq(0); rows * width];
    for i in 0..rows {
        for j in 0..n {
            aug[i * width + j] = m.get(i, j);
        }
        for j in 0..k {
            aug[i * width + n + j] = b.get(i, j);
        }
    }
    let red = rref(&f, rows, width, aug);
    if red.pivots.iter().any(|&p| p >= n) {
        return Err(MatrixError::Inconsistent);
    }
    let mut x = FqMatrix::zero(&f, n, k);
    for (i, &p) in red.pivots.iter().enumerate() {
        for j in 0..k {
            x.set(p, j, red.data[i * width + n + j]);
        }
    }
    Ok((x, nullspace(&f, rows, n, m.entries())))
}

/// A subspace of `GF(q)^dim` with fast coordinate extraction.
///
/// Coordinates are relative to the basis vectors as supplied (which must be
/// linearly independent).
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    field: Field,
    dim: usize,
    vectors: Vec<Vec<Fq>>,
    // rref of [vectors^T | I]: for each pivot row, the ambient coordinate it reads
    pivots: Vec<usize>,
    // coefficient extraction: coords = transform · (selected ambient entries)
    transform: Vec<Vec<Fq>>,
}

impl SubspaceBasis {
    /// Fails (returns `None`) if the vectors are linearly dependent.
    pub fn new(field: &Field, dim: usize, vectors: Vec<Vec<Fq>>) -> Option<Self> {
        let k = vectors.len();
        // Row-reduce the dim × k matrix whose columns are the vectors, tracking
        // which ambient rows become pivots.
        let mut a = vec![Fq(0); k * dim];
        for (j, v) in vectors.iter().enumerate() {
            for i in 0..dim {
                a[j * dim + i] = v[i];
            }
        }
        // rows of `a` are the vectors; rref of the transpose via the k × dim layout.
        let red = rref(field, k, dim, a.clone());
        if red.pivots.len() < k {
            return None;
        }
        let pivots = red.pivots.clone();
        // Square k×k system: S[i][j] = vectors[j][pivots[i]]; coords = S⁻¹ · x[pivots].
        let mut s = FqMatrix::zero(field, k, k);
        for i in 0..k {
            for j in 0..k {
                s.set(i, j, vectors[j][pivots[i]]);
            }
        }
        let sinv = s.inverse().expect("independent vectors give an invertible minor");
        let transform = (0..k).map(|i| (0..k).map(|j| sinv.get(i, j)).collect()).collect();
        Some(SubspaceBasis { field: field.clone(), dim, vectors, pivots, transform })
    }

    /// Extracts a basis (deterministically, via row reduction) from any spanning set.
    pub fn spanned_by(field: &Field, dim: usize, vectors: &[Vec<Fq>]) -> Self {
        let rows = vectors.len();
        let data: Vec<Fq> = vectors.iter().flat_map(|v| v.iter().copied()).collect();
        let red = rref(field, rows, dim, data);
        let basis: Vec<Vec<Fq>> = (0..red.pivots.len()).map(|i| red.data[i * dim..(i + 1) * dim].to_vec()).collect();
        Self::new(field, dim, basis).expect("rref rows are independent")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Fq>] {
        &self.vectors
    }

    /// Coordinates of `x`, or `None` when `x` is outside the span.
    pub fn coords(&self, x: &[Fq]) -> Option<Vec<Fq>> {
        let f = &self.field;
        let k = self.vectors.len();
        let sel: Vec<Fq> = self.pivots.iter().map(|&p| x[p]).collect();
        let c: Vec<Fq> = (0..k)
            .map(|i| (0..k).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.transform[i][j], sel[j]))))
            .collect();
        // verify
        for i in 0..self.dim {
            let v = (0..k).fold(f.zero(), |acc, j| f.add(acc, f.mul(c[j], self.vectors[j][i])));
            if v != x[i] {
                return None;
            }
        }
        Some(c)
    }

    pub fn contains(&self, x: &[Fq]) -> bool {
        self.coords(x).is_some()
    }

    pub fn combine(&self, coeffs: &[Fq]) -> Vec<Fq> {
        let f = &self.field;
        let mut out = vec![Fq(0); self.dim];
        for (v, &c) in self.vectors.iter().zip(coeffs) {
            if c.0 == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(v) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        out
    }

    /// Extends this basis by standard basis vectors of the ambient space
    /// (in index order) to a basis of `target ⊇ self`.
    pub fn complement_in(&self, target: &SubspaceBasis) -> Vec<Vec<Fq>> {
        let mut current = self.vectors.clone();
        let mut extra = Vec::new();
        for v in target.vectors() {
            let mut trial = current.clone();
            trial.push(v.clone());
            if SubspaceBasis::new(&self.field, self.dim, trial.clone()).is_some() {
                current = trial;
                extra.push(v.clone());
            }
        }
        extra
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn solve_identity() {
        let f = gf(5);
        let b = FqMatrix::from_ints(&f, &[&[1, 2], &[3, 4]]);
        let (x, ker) = mat_solve(&FqMatrix::identity(&f, 2), &b).unwrap();
        assert_eq!(x, b);
        assert!(ker.is_empty());
    }

    #[test]
    fn solve_zero_system() {
        let f = gf(3);
        let z = FqMatrix::zero(&f, 2, 2);
        let (x, ker) = mat_solve(&z, &FqMatrix::zero(&f, 2, 1)).unwrap();
        assert!(x.is_zero());
        assert_eq!(ker, vec![vec![Fq(1), Fq(0)], vec![Fq(0), Fq(1)]]);
    }

    #[test]
    fn nullspace_over_gf3() {
        let f = gf(3);
        let m = FqMatrix::from_ints(&f, &[&[1, 1], &[2, 2]]);
        let (_, ker) = mat_solve(&m, &FqMatrix::zero(&f, 2, 1)).unwrap();
        assert_eq!(ker, vec![vec![Fq(2), Fq(1)]]);
        // (1,2) spans the same line
        let line = SubspaceBasis::new(&f, 2, ker).unwrap();
        assert!(line.contains(&[Fq(1), Fq(2)]));
    }

    #[test]
    fn inconsistent_detected() {
        let f = gf(3);
        let m = FqMatrix::from_ints(&f, &[&[1, 1], &[2, 2]]);
        let b = FqMatrix::from_ints(&f, &[&[1], &[1]]);
        assert_eq!(mat_solve(&m, &b).unwrap_err(), MatrixError::Inconsistent);
    }

    #[test]
    fn inverses() {
        let f = gf(2);
        assert_eq!(FqMatrix::identity(&f, 3).inverse().unwrap(), FqMatrix::identity(&f, 3));
        let u = FqMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.inverse().unwrap(), u);
        assert!(FqMatrix::from_ints(&f, &[&[1, 1], &[1, 1]]).inverse().is_none());
        let g7 = gf(7);
        let m = FqMatrix::from_ints(&g7, &[&[2, 5, 1], &[0, 3, 4], &[6, 1, 1]]);
        if let Some(mi) = m.inverse() {
            assert!(m.mul(&mi).is_identity());
            assert!(m.det().0 != 0);
        } else {
            assert_eq!(m.det().0, 0);
        }
    }

    #[test]
    fn extension_field_matrices() {
        let f = Field::new(2, 2, None).unwrap();
        let x = FqMatrix::from_codes(&f, &[vec![2, 1], vec![1, 0]]).unwrap();
        let xi = x.inverse().unwrap();
        assert!(x.mul(&xi).is_identity());
    }

    #[test]
    fn subspace_coords_roundtrip() {
        let f = gf(7);
        let b = SubspaceBasis::new(&f, 3, vec![vec![Fq(1), Fq(2), Fq(0)], vec![Fq(0), Fq(1), Fq(5)]]).unwrap();
        let v = b.combine(&[Fq(3), Fq(6)]);
        assert_eq!(b.coords(&v).unwrap(), vec![Fq(3), Fq(6)]);
        assert!(!b.contains(&[Fq(0), Fq(0), Fq(1)]));
    }
}
