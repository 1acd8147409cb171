//! Matrix representations of a subgroup, twisting, and intertwiners.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, Fq};
use crate::group::{CosetSystem, GroupTable, Subgroup};
use crate::matrix::{nullspace, FqMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("image of element {0} has the wrong shape or field")]
    BadImage(usize),
    #[error("image of element {0} is not invertible")]
    NotInvertible(usize),
    #[error("not a homomorphism: rho({a})rho({b}) != rho({a}*{b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("identity does not map to the identity matrix")]
    IdentityImage,
    #[error("element {0} is not in the subgroup")]
    NotInDomain(usize),
    #[error("generator images do not extend to a homomorphism: {0}")]
    InconsistentGenerators(String),
    #[error("conjugation by {0} does not preserve the subgroup")]
    DomainViolation(usize),
    #[error("representations live on different subgroups, fields or dimensions")]
    Mismatch,
}

/// A homomorphism from a subgroup `L` of a parent group into `GL_n(q)`.
#[derive(Clone, Debug)]
pub struct Representation {
    field: Field,
    dim: usize,
    subgroup: Subgroup,
    // indexed by parent element; None outside L
    images: Vec<Option<FqMatrix>>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.subgroup == other.subgroup && self.images == other.images
    }
}

impl Eq for Representation {}

impl Representation {
    /// Builds and validates a representation from one image per element of
    /// `l` (in the order of `l.elements()`).
    pub fn new(g: &GroupTable, l: &Subgroup, field: &Field, dim: usize, images: Vec<FqMatrix>) -> Result<Self, RepError> {
        if images.len() != l.len() {
            return Err(RepError::InconsistentGenerators(format!("{} images for {} elements", images.len(), l.len())));
        }
        let mut table = vec![None; g.order()];
        for (&x, m) in l.elements().iter().zip(images) {
            table[x] = Some(m);
        }
        let rep = Representation { field: field.clone(), dim, subgroup: l.clone(), images: table };
        rep.validate(g)?;
        Ok(rep)
    }

    /// Extends images given on generators of `l` to all of `l`.
    pub fn from_generators(
        g: &GroupTable,
        l: &Subgroup,
        field: &Field,
        dim: usize,
        gens: &[(usize, FqMatrix)],
    ) -> Result<Self, RepError> {
        let mut table: Vec<Option<FqMatrix>> = vec![None; g.order()];
        for (x, m) in gens {
            if !l.contains(*x) {
                return Err(RepError::NotInDomain(*x));
            }
            if m.rows() != dim || m.cols() != dim || m.field().spec() != field.spec() {
                return Err(RepError::BadImage(*x));
            }
        }
        table[g.identity()] = Some(FqMatrix::identity(field, dim));
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for (s, m) in gens {
                let y = g.mul(x, *s);
                let img = table[x].as_ref().unwrap().mul(m);
                match &table[y] {
                    Some(existing) if *existing != img => {
                        return Err(RepError::InconsistentGenerators(format!(
                            "element {y} reached with two different images"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        table[y] = Some(img);
                        frontier.push(y);
                    }
                }
            }
        }
        if l.elements().iter().any(|&x| table[x].is_none()) {
            return Err(RepError::InconsistentGenerators("generators do not generate the subgroup".into()));
        }
        let rep = Representation { field: field.clone(), dim, subgroup: l.clone(), images: table };
        rep.validate(g)?;
        Ok(rep)
    }

    /// Builds `l ↦ images(l)` from a closure.
    pub fn from_fn(
        g: &GroupTable,
        l: &Subgroup,
        field: &Field,
        dim: usize,
        mut f: impl FnMut(usize) -> FqMatrix,
    ) -> Result<Self, RepError> {
        let images = l.elements().iter().map(|&x| f(x)).collect();
        Self::new(g, l, field, dim, images)
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(g: &GroupTable, l: &Subgroup, field: &Field, dim: usize) -> Self {
        Self::from_fn(g, l, field, dim, |_| FqMatrix::identity(field, dim)).expect("trivial representation")
    }

    fn validate(&self, g: &GroupTable) -> Result<(), RepError> {
        let els = self.subgroup.elements();
        for &x in els {
            let m = self.image(x);
            if m.rows() != self.dim || m.cols() != self.dim || m.field().spec() != self.field.spec() {
                return Err(RepError::BadImage(x));
            }
            if !m.is_invertible() {
                return Err(RepError::NotInvertible(x));
            }
        }
        if !self.image(g.identity()).is_identity() {
            return Err(RepError::IdentityImage);
        }
        for &a in els {
            for &b in els {
                if self.image(a).mul(self.image(b)) != *self.image(g.mul(a, b)) {
                    return Err(RepError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Image of `x ∈ L`; panics outside `L`.
    pub fn image(&self, x: usize) -> &FqMatrix {
        self.images[x].as_ref().unwrap_or_else(|| panic!("element {x} outside the domain"))
    }

    pub fn try_image(&self, x: usize) -> Option<&FqMatrix> {
        self.images.get(x).and_then(|m| m.as_ref())
    }

    pub fn images(&self) -> Vec<&FqMatrix> {
        self.subgroup.elements().iter().map(|&x| self.image(x)).collect()
    }

    /// The twist `θˣ(l) = θ(x·l·x⁻¹)`; `x` must normalize `L`.
    pub fn twist(&self, g: &GroupTable, x: usize) -> Result<Self, RepError> {
        if self.subgroup.elements().iter().any(|&l| !self.subgroup.contains(g.conjugate(x, l))) {
            return Err(RepError::DomainViolation(x));
        }
        let mut images = vec![None; g.order()];
        for &l in self.subgroup.elements() {
            images[l] = Some(self.image(g.conjugate(x, l)).clone());
        }
        Ok(Representation { field: self.field.clone(), dim: self.dim, subgroup: self.subgroup.clone(), images })
    }

    /// The twist restricted to `L ∩ x⁻¹Lx`, where it is defined; returns the
    /// pair `(θ|, θˣ)` on that common domain.
    pub fn twist_on_common_domain(&self, g: &GroupTable, x: usize) -> (Self, Self) {
        let dom = self.subgroup.intersection(g, &self.subgroup.conjugate_by(g, x));
        let restricted = self.restrict(g, &dom);
        let mut images = vec![None; g.order()];
        for &l in dom.elements() {
            images[l] = Some(self.image(g.conjugate(x, l)).clone());
        }
        let twisted = Representation { field: self.field.clone(), dim: self.dim, subgroup: dom, images };
        (restricted, twisted)
    }

    /// Restriction to a subgroup of `L`.
    pub fn restrict(&self, g: &GroupTable, sub: &Subgroup) -> Self {
        let mut images = vec![None; g.order()];
        for &x in sub.elements() {
            images[x] = Some(self.image(x).clone());
        }
        Representation { field: self.field.clone(), dim: self.dim, subgroup: sub.clone(), images }
    }

    /// Conjugate representation `l ↦ T·θ(l)·T⁻¹`.
    pub fn conjugate_by(&self, t: &FqMatrix) -> Self {
        let ti = t.inverse().expect("invertible conjugator");
        let images = self.images.iter().map(|m| m.as_ref().map(|m| t.mul(m).mul(&ti))).collect();
        Representation { field: self.field.clone(), dim: self.dim, subgroup: self.subgroup.clone(), images }
    }
}

/// Basis of `{T : T·θ₁(l) = θ₂(l)·T for all l}` (checked on generators of `L`).
pub fn intertwiner_space(g: &GroupTable, a: &Representation, b: &Representation) -> Result<Vec<FqMatrix>, RepError> {
    if a.subgroup != b.subgroup || a.dim != b.dim || a.field.spec() != b.field.spec() {
        return Err(RepError::Mismatch);
    }
    let gens = a.subgroup.generators(g);
    Ok(commutant_like(&a.field, a.dim, gens.iter().map(|&l| (a.image(l), b.image(l)))))
}

/// Solves `T·A_i = B_i·T` for all pairs.
pub(crate) fn commutant_like<'a>(
    field: &Field,
    n: usize,
    pairs: impl Iterator<Item = (&'a FqMatrix, &'a FqMatrix)>,
) -> Vec<FqMatrix> {
    let unknowns = n * n;
    let mut rows: Vec<Fq> = Vec::new();
    let mut count = 0;
    for (am, bm) in pairs {
        for i in 0..n {
            for j in 0..n {
                // (T·A − B·T)_{ij} = Σ_k T_{ik} A_{kj} − Σ_k B_{ik} T_{kj}
                let mut row = vec![Fq(0); unknowns];
                for k in 0..n {
                    let idx = i * n + k;
                    row[idx] = field.add(row[idx], am.get(k, j));
                    let idx = k * n + j;
                    row[idx] = field.sub(row[idx], bm.get(i, k));
                }
                rows.extend(row);
                count += 1;
            }
        }
    }
    if count == 0 {
        return (0..unknowns)
            .map(|k| {
                let mut m = FqMatrix::zero(field, n, n);
                m.set(k / n, k % n, field.one());
                m
            })
            .collect();
    }
    nullspace(field, count, unknowns, &rows).into_iter().map(|v| FqMatrix::from_vector(field, n, n, &v)).collect()
}

/// Largest intertwiner space scanned exhaustively by [`find_invertible`].
pub const EXHAUSTIVE_SCAN: u64 = 1 << 16;
const RANDOM_TRIES: usize = 4096;

/// An invertible element of the span of `basis`, if one is found.
///
/// Small spans are scanned completely, so `None` is exact there. Larger
/// spans are sampled with a fixed seed.
pub fn find_invertible(field: &Field, n: usize, basis: &[FqMatrix]) -> Option<FqMatrix> {
    if basis.is_empty() {
        return (n == 0).then(|| FqMatrix::identity(field, 0));
    }
    // a basis element is often already invertible (e.g. the identity)
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Some(b.clone());
    }
    let q = field.order();
    let d = basis.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let coeffs: Vec<Fq> = (0..basis.len()).map(|_| Fq(rng.gen_range(0..q) as u32)).collect();
        let m = FqMatrix::combination(field, basis, &coeffs, n, n);
        if m.is_invertible() {
            return Some(m);
        }
    }
    let total = q.checked_pow(d).filter(|&t| t <= EXHAUSTIVE_SCAN);
    match total {
        Some(total) => {
            let mut coeffs = vec![Fq(0); basis.len()];
            for code in 0..total {
                let mut c = code;
                for slot in coeffs.iter_mut() {
                    *slot = Fq((c % q) as u32);
                    c /= q;
                }
                let m = FqMatrix::combination(field, basis, &coeffs, n, n);
                if m.is_invertible() {
                    return Some(m);
                }
            }
            None
        }
        None => {
            for _ in 0..RANDOM_TRIES {
                let coeffs: Vec<Fq> = (0..basis.len()).map(|_| Fq(rng.gen_range(0..q) as u32)).collect();
                let m = FqMatrix::combination(field, basis, &coeffs, n, n);
                if m.is_invertible() {
                    return Some(m);
                }
            }
            None
        }
    }
}

/// An invertible intertwiner `T` with `T·θ₁(l) = θ₂(l)·T`, if any.
pub fn find_isomorphism(g: &GroupTable, a: &Representation, b: &Representation) -> Result<Option<FqMatrix>, RepError> {
    if a == b {
        return Ok(Some(FqMatrix::identity(&a.field, a.dim)));
    }
    let space = intertwiner_space(g, a, b)?;
    Ok(find_invertible(&a.field, a.dim, &space))
}

/// Why a representation is not stable under conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedTwist {
    pub conjugator: usize,
}

/// A normalized stability witness: `f(l) = θ(l)` on `L`, `f(t)` an
/// invertible intertwiner `θ → θᵗ` on each transversal element, and
/// `f(t·l) = f(t)·θ(l)`.
///
/// For non-normal `L` the intertwiners are taken on `L ∩ t⁻¹Lt`, which is
/// the stable-by-conjugation condition.
pub fn stability_witness(g: &GroupTable, theta: &Representation) -> Result<Vec<FqMatrix>, FailedTwist> {
    let l = theta.subgroup();
    let cosets = CosetSystem::new(g, l);
    let mut reps: Vec<FqMatrix> = Vec::with_capacity(cosets.index());
    for &t in cosets.transversal() {
        if t == g.identity() {
            reps.push(FqMatrix::identity(theta.field(), theta.dim()));
            continue;
        }
        let (dom, tw) = theta.twist_on_common_domain(g, t);
        let iso = find_isomorphism(g, &dom, &tw).expect("same domain").ok_or(FailedTwist { conjugator: t })?;
        reps.push(iso);
    }
    Ok(g
        .elements()
        .map(|x| {
            let (t, lpart) = cosets.decompose(g, x);
            reps[cosets.coset_index(t)].mul(theta.image(lpart))
        })
        .collect())
}

/// Checks `ρ(x)ρ(y) = ρ(xy)` on all pairs of a table indexed by `G`.
pub fn is_homomorphism(g: &GroupTable, table: &[FqMatrix]) -> bool {
    g.elements().all(|x| g.elements().all(|y| table[x].mul(&table[y]) == table[g.mul(x, y)]))
}
