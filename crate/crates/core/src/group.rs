//! Finite groups stored as full multiplication tables.
//!
//! Every group is materialized as an `order × order` table of element
//! indices. After validation the identity is always element `0`.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty or not square")]
    NotSquare,
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element list is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {conjugator} conjugates {element} outside it")]
    NotNormal { conjugator: usize, element: usize },
    #[error("element {0} is out of range")]
    BadElement(usize),
}

/// A validated finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    /// `relabel[old] = new` for the relabelling applied during validation.
    relabel: Vec<usize>,
}

impl GroupTable {
    /// Validates a Cayley table, relabelling so that the identity is `0`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare);
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v });
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
                return Err(GroupError::NoInverse(x));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        // swap e <-> 0
        let relabel: Vec<usize> = (0..n)
            .map(|x| if x == e { 0 } else if x == 0 { e } else { x })
            .collect();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel[a] * n + relabel[b]] = relabel[table[a][b]];
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("inverse exists");
        }
        Ok(GroupTable { order: n, mul, inv, relabel })
    }

    /// Builds a table from a closed set of elements and a composition rule,
    /// with `elements[0]` the identity. Used by the named-group generators.
    pub(crate) fn from_elements<T: PartialEq>(elements: &[T], compose: impl Fn(&T, &T) -> T) -> Self {
        let n = elements.len();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = compose(&elements[a], &elements[b]);
                mul[a * n + b] = elements.iter().position(|x| *x == c).expect("closed under composition");
            }
        }
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap()).collect();
        GroupTable { order: n, mul, inv, relabel: (0..n).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// The relabelling applied by [`GroupTable::from_table`]: `relabeling()[old] = new`.
    pub fn relabeling(&self) -> &[usize] {
        &self.relabel
    }

    /// `x·l·x⁻¹`.
    pub fn conjugate(&self, x: usize, l: usize) -> usize {
        self.mul(self.mul(x, l), self.inv(x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self, (0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self, vec![0])
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= self.order) {
            return Err(GroupError::BadElement(bad));
        }
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let elements = (0..self.order).filter(|&x| seen[x]).collect();
        Ok(Subgroup::from_sorted(self, elements))
    }

    /// All subgroups, ordered by size then element list.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut frontier = vec![self.trivial_subgroup()];
        found.insert((1, vec![0]));
        while let Some(s) = frontier.pop() {
            for g in 0..self.order {
                if s.contains(g) {
                    continue;
                }
                let mut gens = s.elements().to_vec();
                gens.push(g);
                let t = self.generate(&gens).expect("valid elements");
                if found.insert((t.len(), t.elements().to_vec())) {
                    frontier.push(t);
                }
            }
        }
        found.into_iter().map(|(_, e)| Subgroup::from_sorted(self, e)).collect()
    }

    /// Normal subgroups `L` with `1 < L < G`.
    pub fn proper_nontrivial_normal_subgroups(&self) -> Vec<Subgroup> {
        self.subgroups()
            .into_iter()
            .filter(|s| s.len() > 1 && s.len() < self.order && s.is_normal_in(self))
            .collect()
    }

    /// The subgroup `S` as a group in its own right; `embedding[i]` is the
    /// element of `self` labelled `i` in the new table (`embedding[0] = 0`).
    pub fn subgroup_table(&self, s: &Subgroup) -> (GroupTable, Vec<usize>) {
        let embedding = s.elements().to_vec();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = i;
        }
        let m = embedding.len();
        let mut mul = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = index[self.mul(embedding[a], embedding[b])];
            }
        }
        let inv = (0..m).map(|a| index[self.inv(embedding[a])]).collect();
        (GroupTable { order: m, mul, inv, relabel: (0..m).collect() }, embedding)
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order, other.order);
        let size = n * m;
        let mut mul = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let (a1, b1) = (x / m, x % m);
                let (a2, b2) = (y / m, y % m);
                mul[x * size + y] = self.mul(a1, a2) * m + other.mul(b1, b2);
            }
        }
        let inv = (0..size).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect();
        GroupTable { order: size, mul, inv, relabel: (0..size).collect() }
    }
}

/// A subgroup, as a sorted element list with a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `g`.
    pub fn new(g: &GroupTable, elements: &[usize]) -> Result<Self, GroupError> {
        let mut sorted: Vec<usize> = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::BadElement(bad));
        }
        if sorted.first() != Some(&0) {
            return Err(GroupError::NotASubgroup("missing the identity".into()));
        }
        let s = Subgroup::from_sorted(g, sorted);
        for &a in &s.elements {
            if !s.contains(g.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(s)
    }

    fn from_sorted(g: &GroupTable, elements: Vec<usize>) -> Self {
        let mut member = vec![false; g.order()];
        for &x in &elements {
            member[x] = true;
        }
        Subgroup { elements, member }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_normal_in(&self, g: &GroupTable) -> bool {
        self.normality_violation(g).is_none()
    }

    fn normality_violation(&self, g: &GroupTable) -> Option<(usize, usize)> {
        for x in g.elements() {
            for &l in &self.elements {
                if !self.contains(g.conjugate(x, l)) {
                    return Some((x, l));
                }
            }
        }
        None
    }

    pub fn intersection(&self, g: &GroupTable, other: &Subgroup) -> Subgroup {
        let elements = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_sorted(g, elements)
    }

    /// `x⁻¹·S·x`.
    pub fn conjugate_by(&self, g: &GroupTable, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&l| g.conjugate(g.inv(x), l)).collect();
        elements.sort_unstable();
        Subgroup::from_sorted(g, elements)
    }

    /// A small generating set (greedy, in element order).
    pub fn generators(&self, g: &GroupTable) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = g.trivial_subgroup();
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = g.generate(&gens).expect("valid");
            }
        }
        gens
    }

    /// True when `L` has no proper commutator quotient (`[L, L] = L`).
    pub fn is_perfect(&self, g: &GroupTable) -> bool {
        let comms: Vec<usize> = self
            .elements
            .iter()
            .flat_map(|&a| self.elements.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
            .collect();
        g.generate(&comms).map(|c| c.len() == self.len()).unwrap_or(false)
    }
}

/// Checks whether `l` is normal in `g`.
pub fn is_normal(g: &GroupTable, l: &Subgroup) -> bool {
    l.is_normal_in(g)
}

/// The largest normal subgroup of `g` contained in `l`: `⋂_x x⁻¹·l·x`.
pub fn core_subgroup(g: &GroupTable, l: &Subgroup) -> Subgroup {
    g.elements().fold(l.clone(), |acc, x| acc.intersection(g, &l.conjugate_by(g, x)))
}

/// Left cosets `t·L` with a transversal whose first element is the identity.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    subgroup: Subgroup,
    transversal: Vec<usize>,
    coset_index: Vec<usize>,
}

impl CosetSystem {
    pub fn new(g: &GroupTable, l: &Subgroup) -> Self {
        let mut coset_index = vec![usize::MAX; g.order()];
        let mut transversal = Vec::new();
        for x in g.elements() {
            if coset_index[x] != usize::MAX {
                continue;
            }
            let c = transversal.len();
            transversal.push(x);
            for &h in l.elements() {
                coset_index[g.mul(x, h)] = c;
            }
        }
        CosetSystem { subgroup: l.clone(), transversal, coset_index }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// Index of the coset containing `g` (the identity coset is `0`).
    pub fn coset_index(&self, g: usize) -> usize {
        self.coset_index[g]
    }

    /// Representative `t` of the coset containing `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.transversal[self.coset_index[g]]
    }

    /// Writes `x = t·l` with `t` in the transversal; returns `(t, l)`.
    pub fn decompose(&self, g: &GroupTable, x: usize) -> (usize, usize) {
        let t = self.coset_of(x);
        (t, g.mul(g.inv(t), x))
    }
}

/// `G/L` on coset indices together with the projection `G → G/L`.
pub fn quotient_group(g: &GroupTable, l: &Subgroup) -> Result<(GroupTable, Vec<usize>), GroupError> {
    if let Some((x, e)) = l.normality_violation(g) {
        return Err(GroupError::NotNormal { conjugator: x, element: e });
    }
    let cosets = CosetSystem::new(g, l);
    let m = cosets.index();
    let mut mul = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            let p = g.mul(cosets.transversal[a], cosets.transversal[b]);
            mul[a * m + b] = cosets.coset_index(p);
        }
    }
    let inv = (0..m).map(|a| cosets.coset_index(g.inv(cosets.transversal[a]))).collect();
    let projection = g.elements().map(|x| cosets.coset_index(x)).collect();
    Ok((GroupTable { order: m, mul, inv, relabel: (0..m).collect() }, projection))
}

/// Named groups used by instance files and the test suites.
pub mod named {
    use super::*;

    /// `Cₙ`; element `i` is `gⁱ`.
    pub fn cyclic(n: usize) -> GroupTable {
        let elements: Vec<usize> = (0..n).collect();
        GroupTable::from_elements(&elements, |a, b| (a + b) % n)
    }

    /// Direct product of cyclic groups, mixed radix with the last factor fastest.
    pub fn abelian(orders: &[usize]) -> GroupTable {
        orders
            .iter()
            .map(|&n| cyclic(n))
            .reduce(|acc, c| acc.direct_product(&c))
            .unwrap_or_else(|| cyclic(1))
    }

    /// Symmetries of the regular `n`-gon (order `2n`); element `i + n·j` is `rⁱsʲ`.
    pub fn dihedral(n: usize) -> GroupTable {
        let elements: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..n).map(move |i| (i, j))).collect();
        GroupTable::from_elements(&elements, |&(i1, j1), &(i2, j2)| {
            // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1+j2)
            let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
            (i, (j1 + j2) % 2)
        })
    }

    /// Quaternion group `Q₈`; element `i + 4·j` is `aⁱbʲ` with `a⁴ = 1`, `b² = a²`, `bab⁻¹ = a⁻¹`.
    pub fn quaternion() -> GroupTable {
        let elements: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..4).map(move |i| (i, j))).collect();
        GroupTable::from_elements(&elements, |&(i1, j1), &(i2, j2)| {
            let i = if j1 == 0 { (i1 + i2) % 4 } else { (i1 + 4 - i2) % 4 };
            if j1 == 1 && j2 == 1 {
                ((i + 2) % 4, 0)
            } else {
                (i, (j1 + j2) % 2)
            }
        })
    }

    /// All permutations of `{0..n}` in lexicographic order of their image
    /// lists; composition is `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> GroupTable {
        let perms = permutations(n);
        GroupTable::from_elements(&perms, |s, t| t.iter().map(|&i| s[i]).collect::<Vec<usize>>())
    }

    pub fn alternating(n: usize) -> GroupTable {
        let perms: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| is_even(p)).collect();
        GroupTable::from_elements(&perms, |s, t| t.iter().map(|&i| s[i]).collect::<Vec<usize>>())
    }

    /// Index of permutation `p` (image list) in [`symmetric`].
    pub fn permutation_index(p: &[usize]) -> usize {
        permutations(p.len()).iter().position(|q| q == p).expect("a permutation")
    }

    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if prefix.len() == used.len() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn is_even(p: &[usize]) -> bool {
        let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        inversions % 2 == 0
    }

    /// Parses `cyclic:n`, `dihedral:n`, `sym:n`, `alt:n`, `quaternion`, `abelian:n1,n2,...`.
    pub fn parse(spec: &str) -> Option<GroupTable> {
        let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let num = || arg.trim().parse::<usize>().ok().filter(|&n| n >= 1);
        match kind.trim() {
            "cyclic" => num().map(cyclic),
            "dihedral" => num().filter(|&n| n >= 2).map(dihedral),
            "sym" => num().filter(|&n| n <= 6).map(symmetric),
            "alt" => num().filter(|&n| n <= 6).map(alternating),
            "quaternion" => Some(quaternion()),
            "abelian" => {
                let orders: Option<Vec<usize>> =
                    arg.split(',').map(|s| s.trim().parse::<usize>().ok().filter(|&n| n >= 1)).collect();
                orders.filter(|o| !o.is_empty()).map(|o| abelian(&o))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn s3() -> GroupTable {
        symmetric(3)
    }

    fn perm(p: &[usize]) -> usize {
        permutation_index(p)
    }

    #[test]
    fn c2_table_validates() {
        let g = GroupTable::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn s3_from_permutation_composition() {
        let perms = permutations(3);
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let c: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        let g = GroupTable::from_table(&table).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn bad_table_rejected() {
        let err = GroupTable::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NoInverse(1) | GroupError::NotAssociative(..)));
        assert_eq!(GroupTable::from_table(&[vec![0, 1]]).unwrap_err(), GroupError::NotSquare);
        assert_eq!(GroupTable::from_table(&[vec![1, 0], vec![1, 1]]).unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_magma_names_triple() {
        // A Latin square with identity 0 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match GroupTable::from_table(&t) {
            Err(GroupError::NotAssociative(a, b, c)) => {
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C2 with identity at index 1
        let g = GroupTable::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.relabeling(), &[1, 0]);
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn normality() {
        let g = s3();
        let a3 = g.generate(&[perm(&[1, 2, 0])]).unwrap();
        assert_eq!(a3.len(), 3);
        assert!(is_normal(&g, &a3));
        let t = g.generate(&[perm(&[1, 0, 2])]).unwrap();
        assert!(!is_normal(&g, &t));
        assert!(is_normal(&g, &g.whole()));
    }

    #[test]
    fn core_of_transposition_subgroup_is_trivial() {
        let g = s3();
        let t = g.generate(&[perm(&[1, 0, 2])]).unwrap();
        assert!(core_subgroup(&g, &t).is_trivial());
        let a3 = g.generate(&[perm(&[1, 2, 0])]).unwrap();
        assert_eq!(core_subgroup(&g, &a3), a3);
        assert_eq!(core_subgroup(&g, &g.whole()), g.whole());
    }

    #[test]
    fn quotients() {
        let g = s3();
        let a3 = g.generate(&[perm(&[1, 2, 0])]).unwrap();
        let (q, pi) = quotient_group(&g, &a3).unwrap();
        assert_eq!(q.order(), 2);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(pi[g.mul(x, y)], q.mul(pi[x], pi[y]));
            }
        }
        let c4 = cyclic(4);
        let (q, _) = quotient_group(&c4, &c4.generate(&[2]).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        let v4 = abelian(&[2, 2]);
        let (q, _) = quotient_group(&v4, &v4.generate(&[2]).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        let t = g.generate(&[perm(&[1, 0, 2])]).unwrap();
        assert!(matches!(quotient_group(&g, &t), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn conjugation_in_s3() {
        let g = s3();
        // (12) = swap of points 0,1; (123) = 0->1->2->0
        let t = perm(&[1, 0, 2]);
        let c = perm(&[1, 2, 0]);
        let c_inv = perm(&[2, 0, 1]);
        assert_eq!(g.conjugate(t, c), c_inv);
        assert_eq!(g.conjugate(0, c), c);
        let c4 = cyclic(4);
        assert!(c4.elements().all(|x| c4.conjugate(x, 3) == 3));
    }

    #[test]
    fn coset_system_invariants() {
        let g = dihedral(4);
        for l in g.subgroups() {
            let cs = CosetSystem::new(&g, &l);
            assert_eq!(cs.transversal()[0], 0);
            assert_eq!(cs.index() * l.len(), g.order());
            for x in g.elements() {
                let (t, h) = cs.decompose(&g, x);
                assert!(l.contains(h));
                assert_eq!(g.mul(t, h), x);
                for &k in l.elements() {
                    assert_eq!(cs.coset_of(g.mul(x, k)), cs.coset_of(x));
                }
            }
            for &k in l.elements() {
                assert_eq!(cs.coset_of(k), 0);
            }
        }
    }

    #[test]
    fn named_groups_are_groups() {
        for g in [cyclic(6), dihedral(4), quaternion(), symmetric(3), alternating(4), abelian(&[2, 4])] {
            let t = g.table();
            let h = GroupTable::from_table(&t).unwrap();
            assert_eq!(h, g);
        }
        assert_eq!(quaternion().elements().filter(|&x| quaternion().element_order(x) == 2).count(), 1);
        assert_eq!(dihedral(4).elements().filter(|&x| dihedral(4).element_order(x) == 2).count(), 5);
        assert_eq!(parse("abelian:2,4").unwrap().order(), 8);
        assert!(parse("bogus:3").is_none());
    }

    #[test]
    fn core_is_largest_normal_subgroup_inside() {
        for g in [symmetric(3), dihedral(4), alternating(4), quaternion()] {
            let subs = g.subgroups();
            for l in &subs {
                let p = core_subgroup(&g, l);
                assert!(p.is_normal_in(&g));
                assert!(p.elements().iter().all(|&x| l.contains(x)));
                for n in subs.iter().filter(|n| n.is_normal_in(&g)) {
                    if n.elements().iter().all(|&x| l.contains(x)) {
                        assert!(n.elements().iter().all(|&x| p.contains(x)));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(symmetric(3).subgroups().len(), 6);
        assert_eq!(dihedral(4).subgroups().len(), 10);
        assert_eq!(quaternion().subgroups().len(), 6);
        assert_eq!(abelian(&[2, 2, 2]).subgroups().len(), 16);
        assert!(alternating(5).whole().is_perfect(&alternating(5)));
        assert!(!symmetric(3).whole().is_perfect(&symmetric(3)));
    }
}
