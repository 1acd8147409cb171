//! Linear algebra over ℤ/E and congruence solving.
//!
//! ℤ/E is a principal ideal ring, so a matrix over it still has a Smith
//! form: every entry is an associate of a divisor of E, and 2×2 gcd moves
//! lifted from ℤ stay invertible mod E.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intmat::{lattice_basis, IntMatrix};

/// A dense matrix over ℤ/E with entries kept in `[0, E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: i64,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zero(rows: usize, cols: usize, modulus: i64) -> Self {
        assert!(modulus >= 1);
        ModMatrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, modulus: i64) -> Self {
        let mut m = Self::zero(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: i64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v.rem_euclid(self.modulus);
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        let e = self.modulus as i128;
        (0..self.rows)
            .map(|i| {
                let mut acc: i128 = 0;
                for (j, &xj) in x.iter().enumerate() {
                    let a = self.data[i * self.cols + j];
                    if a != 0 && xj != 0 {
                        acc = (acc + a as i128 * xj as i128) % e;
                    }
                }
                acc.rem_euclid(e) as i64
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let e = self.modulus as i128;
        let mut out = Self::zero(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            let mut acc = vec![0i128; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as i128;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as i128) % e;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = v as i64;
            }
        }
        out
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

    // rows (a, b) ← (t00·a + t01·b, t10·a + t11·b); a == b scales the row by t00
    fn row_op(&mut self, a: usize, b: usize, t: [i64; 4]) {
        let e = self.modulus as i128;
        let c = self.cols;
        for j in 0..c {
            let x = self.data[a * c + j] as i128;
            if a == b {
                self.data[a * c + j] = (t[0] as i128 * x).rem_euclid(e) as i64;
                continue;
            }
            let y = self.data[b * c + j] as i128;
            self.data[a * c + j] = (t[0] as i128 * x + t[1] as i128 * y).rem_euclid(e) as i64;
            self.data[b * c + j] = (t[2] as i128 * x + t[3] as i128 * y).rem_euclid(e) as i64;
        }
    }

    // [col a, col b] ← [col a, col b] · T, i.e. a' = t00·a + t10·b, b' = t01·a + t11·b
    fn col_op(&mut self, a: usize, b: usize, t: [i64; 4]) {
        let e = self.modulus as i128;
        let c = self.cols;
        for i in 0..self.rows {
            let x = self.data[i * c + a] as i128;
            if a == b {
                self.data[i * c + a] = (t[0] as i128 * x).rem_euclid(e) as i64;
                continue;
            }
            let y = self.data[i * c + b] as i128;
            self.data[i * c + a] = (t[0] as i128 * x + t[2] as i128 * y).rem_euclid(e) as i64;
            self.data[i * c + b] = (t[1] as i128 * x + t[3] as i128 * y).rem_euclid(e) as i64;
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `m` (requires gcd 1).
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// A unit `w` of ℤ/E with `a·w ≡ gcd(a, E)`.
fn normalizer(a: i64, e: i64) -> i64 {
    let g = gcd(a, e);
    if g == 0 || e == 1 {
        return 1 % e.max(1);
    }
    let m = e / g;
    let w0 = inv_mod(a / g, m).unwrap_or(1 % m.max(1));
    // lift w0 mod m to a unit mod e
    let mut w = w0;
    while gcd(w, e) != 1 {
        w += m;
    }
    w % e
}

fn inverse_2x2(t: [i64; 4], e: i64) -> [i64; 4] {
    let det = (t[0] as i128 * t[3] as i128 - t[1] as i128 * t[2] as i128).rem_euclid(e as i128) as i64;
    let di = inv_mod(det, e).expect("unimodular step");
    let m = |x: i64| ((x as i128 * di as i128).rem_euclid(e as i128)) as i64;
    [m(t[3]), m(-t[1]), m(-t[2]), m(t[0])]
}

/// Smith form `S = U·M·V` over ℤ/E.
///
/// `diag[i]` is a divisor of E (with 0 standing for E itself, i.e. a zero
/// entry); `diag[i] | diag[i+1]` as ideals. Only the requested transforms
/// are tracked.
#[derive(Clone, Debug)]
pub struct ModSnf {
    pub diag: Vec<i64>,
    pub rank: usize,
    pub u: Option<ModMatrix>,
    pub u_inv: Option<ModMatrix>,
    pub v: Option<ModMatrix>,
    pub v_inv: Option<ModMatrix>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub rows: bool,
    pub cols: bool,
}

struct Tracked {
    s: ModMatrix,
    u: Option<ModMatrix>,
    u_inv: Option<ModMatrix>,
    v: Option<ModMatrix>,
    v_inv: Option<ModMatrix>,
}

impl Tracked {
    fn rows(&mut self, a: usize, b: usize, t: [i64; 4]) {
        self.s.row_op(a, b, t);
        if let Some(u) = &mut self.u {
            u.row_op(a, b, t);
        }
        if let Some(ui) = &mut self.u_inv {
            let e = ui.modulus;
            let ti = if a == b { [inv_mod(t[0], e).unwrap(), 0, 0, 1] } else { inverse_2x2(t, e) };
            ui.col_op(a, b, ti);
        }
    }

    fn cols(&mut self, a: usize, b: usize, t: [i64; 4]) {
        self.s.col_op(a, b, t);
        if let Some(v) = &mut self.v {
            v.col_op(a, b, t);
        }
        if let Some(vi) = &mut self.v_inv {
            let e = vi.modulus;
            let ti = if a == b { [inv_mod(t[0], e).unwrap(), 0, 0, 1] } else { inverse_2x2(t, e) };
            vi.row_op(a, b, ti);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }
}

pub fn mod_snf(m: &ModMatrix, track: Track) -> ModSnf {
    let e = m.modulus;
    let (rows, cols) = (m.rows, m.cols);
    let mut st = Tracked {
        s: m.clone(),
        u: track.rows.then(|| ModMatrix::identity(rows, e)),
        u_inv: track.rows.then(|| ModMatrix::identity(rows, e)),
        v: track.cols.then(|| ModMatrix::identity(cols, e)),
        v_inv: track.cols.then(|| ModMatrix::identity(cols, e)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot with the largest ideal (smallest gcd with E)
        let mut best: Option<(usize, usize, i64)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let x = st.s.get(i, j);
                if x == 0 {
                    continue;
                }
                let g = gcd(x, e);
                if best.is_none_or(|b| g < b.2) {
                    best = Some((i, j, g));
                    if g == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            let p = st.s.get(t, t);
            let w = normalizer(p, e);
            if w != 1 {
                st.rows(t, t, [w, 0, 0, 1]);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                let a = st.s.get(i, t);
                if a == 0 {
                    continue;
                }
                let p = st.s.get(t, t);
                if a % p == 0 {
                    st.rows(t, i, [1, 0, -(a / p), 1]);
                } else {
                    let ex = p.extended_gcd(&a);
                    let g = ex.gcd;
                    st.rows(t, i, [ex.x, ex.y, -(a / g), p / g]);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let a = st.s.get(t, j);
                if a == 0 {
                    continue;
                }
                let p = st.s.get(t, t);
                if a % p == 0 {
                    // col_j ← col_j − (a/p)·col_t
                    st.cols(t, j, [1, -(a / p), 0, 1]);
                } else {
                    let ex = p.extended_gcd(&a);
                    let g = ex.gcd;
                    // col_t ← x·col_t + y·col_j ; col_j ← −(a/g)·col_t + (p/g)·col_j
                    st.cols(t, j, [ex.x, -(a / g), ex.y, p / g]);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let p = st.s.get(t, t);
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| st.s.get(i, j) % p != 0));
            match bad {
                Some(i) => st.rows(t, i, [1, 1, 0, 1]),
                None => break,
            }
        }
        diag.push(st.s.get(t, t));
        t += 1;
    }
    let rank = diag.len();
    diag.resize(rows.min(cols), 0);
    ModSnf { diag, rank, u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv }
}

/// Solutions of `M·x ≡ b` over ℤ/E, via a precomputed Smith form.
#[derive(Clone, Debug)]
pub struct ModSolver {
    modulus: i64,
    cols: usize,
    snf: ModSnf,
}

impl ModSolver {
    pub fn new(m: &ModMatrix) -> Self {
        let snf = mod_snf(m, Track { rows: true, cols: true });
        ModSolver { modulus: m.modulus, cols: m.cols, snf }
    }

    pub fn snf(&self) -> &ModSnf {
        &self.snf
    }

    /// One solution of `M·x ≡ b (mod E)`, or `None`.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let e = self.modulus;
        let c = self.snf.u.as_ref().unwrap().mul_vec(b);
        let mut y = vec![0i64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            if i < self.snf.rank {
                let s = self.snf.diag[i];
                if ci % s != 0 {
                    return None;
                }
                y[i] = ci / s;
            } else if ci != 0 {
                return None;
            }
        }
        Some(self.snf.v.as_ref().unwrap().mul_vec(&y).into_iter().map(|x| x.rem_euclid(e)).collect())
    }

    /// Generators of `{x : M·x ≡ 0 (mod E)}`.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let e = self.modulus;
        let v = self.snf.v.as_ref().unwrap();
        let mut out = Vec::new();
        for i in 0..self.cols {
            let scale = if i < self.snf.rank { e / self.snf.diag[i] } else { 1 };
            if scale % e == 0 {
                continue;
            }
            out.push(v.column(i).into_iter().map(|x| ((x as i128 * scale as i128) % e as i128) as i64).collect());
        }
        out
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Solves `M·x ≡ b` where row `r` is read modulo `moduli[r]`.
///
/// Returns a particular solution in `[0, L)` per coordinate (`L` the lcm of
/// the moduli) together with an integer basis of the full solution lattice
/// of the homogeneous system, or `None` when the system is inconsistent.
pub fn solve_congruence(m: &IntMatrix, b: &[i64], moduli: &[i64]) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    assert_eq!(m.rows(), b.len());
    assert_eq!(m.rows(), moduli.len());
    assert!(moduli.iter().all(|&d| d >= 1), "moduli must be positive");
    let e = moduli.iter().fold(1, |acc, &d| lcm(acc, d));
    let mut mm = ModMatrix::zero(m.rows(), m.cols(), e);
    let mut rhs = vec![0i64; m.rows()];
    let big_e = BigInt::from(e);
    for r in 0..m.rows() {
        let scale = e / moduli[r];
        for c in 0..m.cols() {
            let v = (m.get(r, c).mod_floor(&big_e)).to_i64().unwrap();
            mm.set(r, c, (v as i128 * scale as i128 % e as i128) as i64);
        }
        rhs[r] = ((b[r].rem_euclid(e)) as i128 * scale as i128 % e as i128) as i64;
    }
    let solver = ModSolver::new(&mm);
    let x = solver.solve(&rhs)?;
    let n = m.cols();
    let mut gens: Vec<Vec<BigInt>> = solver.kernel().into_iter().map(|k| k.into_iter().map(BigInt::from).collect()).collect();
    for i in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[i] = big_e.clone();
        gens.push(v);
    }
    let basis = lattice_basis(n, &gens).into_iter().map(|v| v.into_iter().map(|x| x.to_i64().unwrap()).collect()).collect();
    Some((x, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn verify_snf(m: &ModMatrix) {
        let snf = mod_snf(m, Track { rows: true, cols: true });
        let (u, v) = (snf.u.clone().unwrap(), snf.v.clone().unwrap());
        let s = u.mul(m).mul(&v);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let want = if i == j && i < snf.diag.len() { snf.diag[i] } else { 0 };
                assert_eq!(s.get(i, j), want, "entry ({i},{j}) of {s:?}");
            }
        }
        let e = m.modulus();
        assert!(u.mul(snf.u_inv.as_ref().unwrap()) == ModMatrix::identity(m.rows(), e));
        assert!(v.mul(snf.v_inv.as_ref().unwrap()) == ModMatrix::identity(m.cols(), e));
        for w in snf.diag[..snf.rank].windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for &d in &snf.diag[..snf.rank] {
            assert_eq!(e % d, 0);
        }
    }

    #[test]
    fn snf_mod_12() {
        verify_snf(&ModMatrix::from_rows(&[vec![2, 4], vec![6, 8]], 12));
        verify_snf(&ModMatrix::from_rows(&[vec![4, 6, 3], vec![0, 9, 8], vec![1, 1, 1]], 12));
        verify_snf(&ModMatrix::zero(3, 2, 12));
    }

    #[test]
    fn congruence_examples() {
        let m = IntMatrix::from_rows(&[vec![2]]);
        assert!(solve_congruence(&m, &[1], &[4]).is_none());
        let (x, ker) = solve_congruence(&m, &[2], &[4]).unwrap();
        assert_eq!((2 * x[0] - 2).rem_euclid(4), 0);
        assert_eq!(ker, vec![vec![2]]);
        let m = IntMatrix::from_rows(&[vec![1, 3], vec![2, 2]]);
        let (x, _) = solve_congruence(&m, &[0, 0], &[5, 3]).unwrap();
        assert_eq!(x, vec![0, 0]);
    }

    fn brute(m: &[Vec<i64>], b: &[i64], moduli: &[i64], range: i64) -> Vec<Vec<i64>> {
        let n = m[0].len();
        let mut out = Vec::new();
        let total = (range as usize).pow(n as u32);
        for code in 0..total {
            let mut x = vec![0i64; n];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = (c % range as usize) as i64;
                c /= range as usize;
            }
            if m.iter().zip(b).zip(moduli).all(|((row, &bi), &d)| {
                (row.iter().zip(&x).map(|(a, y)| a * y).sum::<i64>() - bi).rem_euclid(d) == 0
            }) {
                out.push(x);
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn snf_random(rows in 1usize..5, cols in 1usize..5, e in 1i64..40, seed in proptest::collection::vec(0i64..1000, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j] % e).collect()).collect();
            verify_snf(&ModMatrix::from_rows(&data, e));
        }

        #[test]
        fn congruence_matches_enumeration(
            rows in 1usize..3, cols in 1usize..3,
            entries in proptest::collection::vec(-6i64..7, 6),
            rhs in proptest::collection::vec(0i64..12, 2),
            moduli in proptest::collection::vec(prop::sample::select(vec![2i64, 3, 4, 6]), 2),
        ) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 3 + j]).collect()).collect();
            let b = &rhs[..rows];
            let md = &moduli[..rows];
            let l = md.iter().fold(1, |a, &d| lcm(a, d));
            let all = brute(&m, b, md, l);
            let res = solve_congruence(&IntMatrix::from_rows(&m), b, md);
            match res {
                None => prop_assert!(all.is_empty()),
                Some((x, ker)) => {
                    prop_assert!(all.contains(&x));
                    // the solution set mod l is x + span(ker)
                    let mut span = std::collections::BTreeSet::new();
                    span.insert(x.clone());
                    let mut frontier = vec![x.clone()];
                    while let Some(v) = frontier.pop() {
                        for k in &ker {
                            let w: Vec<i64> = v.iter().zip(k).map(|(a, b)| (a + b).rem_euclid(l)).collect();
                            if span.insert(w.clone()) {
                                frontier.push(w);
                            }
                        }
                    }
                    let all_set: std::collections::BTreeSet<Vec<i64>> = all.into_iter().collect();
                    prop_assert_eq!(span, all_set);
                }
            }
        }
    }
}
