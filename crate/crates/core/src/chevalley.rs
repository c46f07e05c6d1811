//! Split finite groups of Lie type as matrix groups: `SL_{n+1}(F_q)` for `A_n` (`n <= 3`)
//! and `Sp_4(F_q)` for `B_2`, with root subgroups, Weyl representatives, Bruhat
//! decomposition and root-coordinate factorization of unipotent elements.
//!
//! `Sp_4` preserves the form `J = antidiag(1, 1, -1, -1)`; its root vectors are
//! `X_a = E01 - E23`, `X_b = E12`, `X_{a+b} = E02 + E13`, `X_{2a+b} = E03`, negative root
//! vectors are transposes, and the torus is `diag(a, b, 1/b, 1/a)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::coxeter::{SimpleSubset, WeylElement, WeylGroup};
use crate::gf::{Field, FieldElement, FieldError};
use crate::rootsys::{CartanType, Root, RootError, RootSystem, SignedIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChevalleyError {
    Unsupported(CartanType),
    Field(FieldError),
    Root(RootError),
    NotInGroup(String),
    NotUnipotent,
    OutsideSlice,
    TrivialElement,
    DegreeOrder { m: u32, n: u32 },
    Malformed(String),
}

impl From<FieldError> for ChevalleyError {
    fn from(e: FieldError) -> ChevalleyError {
        ChevalleyError::Field(e)
    }
}

impl From<RootError> for ChevalleyError {
    fn from(e: RootError) -> ChevalleyError {
        ChevalleyError::Root(e)
    }
}

impl fmt::Display for ChevalleyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChevalleyError::Unsupported(t) => write!(f, "no matrix realization for type {t}"),
            ChevalleyError::Field(e) => write!(f, "{e}"),
            ChevalleyError::Root(e) => write!(f, "{e}"),
            ChevalleyError::NotInGroup(why) => write!(f, "matrix is not in the group: {why}"),
            ChevalleyError::NotUnipotent => write!(f, "matrix is not upper unitriangular"),
            ChevalleyError::OutsideSlice => write!(f, "element lies outside the required root slice"),
            ChevalleyError::TrivialElement => write!(f, "element must be nontrivial"),
            ChevalleyError::DegreeOrder { m, n } => write!(f, "need n > m, got m = {m}, n = {n}"),
            ChevalleyError::Malformed(why) => write!(f, "malformed matrix: {why}"),
        }
    }
}

/// A square matrix over a finite field, entries as raw field values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement {
    field: Field,
    n: usize,
    data: Vec<u32>,
}

impl GroupElement {
    pub fn identity(field: &Field, n: usize) -> GroupElement {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        GroupElement { field: field.clone(), n, data }
    }

    pub fn from_raw(field: &Field, n: usize, data: Vec<u32>) -> Result<GroupElement, ChevalleyError> {
        if data.len() != n * n {
            return Err(ChevalleyError::Malformed(format!("expected {} entries", n * n)));
        }
        if data.iter().any(|&x| x >= field.order()) {
            return Err(ChevalleyError::Malformed(String::from("entry outside the field")));
        }
        Ok(GroupElement { field: field.clone(), n, data })
    }

    pub fn diagonal(field: &Field, diag: &[u32]) -> GroupElement {
        let n = diag.len();
        let mut g = GroupElement { field: field.clone(), n, data: vec![0; n * n] };
        for (i, &d) in diag.iter().enumerate() {
            g.data[i * n + i] = d;
        }
        g
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn raw(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.field.element(self.get(i, j))
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for t in 0..n {
                let a = self.data[i * n + t];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[t * n + j];
                    if b != 0 {
                        let idx = i * n + j;
                        out[idx] = f.raw_add(out[idx], f.raw_mul(a, b));
                    }
                }
            }
        }
        GroupElement { field: self.field.clone(), n, data: out }
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<GroupElement> {
        let n = self.n;
        let f = &self.field;
        let mut a = self.data.clone();
        let mut inv = GroupElement::identity(f, n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| a[r * n + col] != 0)?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            let s = f.raw_inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.raw_mul(a[col * n + j], s);
                inv[col * n + j] = f.raw_mul(inv[col * n + j], s);
            }
            for r in 0..n {
                let c = a[r * n + col];
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.raw_sub(a[r * n + j], f.raw_mul(c, a[col * n + j]));
                    inv[r * n + j] = f.raw_sub(inv[r * n + j], f.raw_mul(c, inv[col * n + j]));
                }
            }
        }
        Some(GroupElement { field: self.field.clone(), n, data: inv })
    }

    pub fn transpose(&self) -> GroupElement {
        let n = self.n;
        let mut g = self.clone();
        for i in 0..n {
            for j in 0..n {
                g.data[i * n + j] = self.data[j * n + i];
            }
        }
        g
    }

    pub fn determinant(&self) -> u32 {
        let n = self.n;
        let f = &self.field;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = f.raw_neg(det);
            }
            let piv = a[col * n + col];
            det = f.raw_mul(det, piv);
            let inv = f.raw_inv(piv).unwrap();
            for r in col + 1..n {
                let c = f.raw_mul(a[r * n + col], inv);
                if c == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.raw_sub(a[r * n + j], f.raw_mul(c, a[col * n + j]));
                }
            }
        }
        det
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_unipotent_upper(&self) -> bool {
        self.is_upper_triangular() && (0..self.n).all(|i| self.get(i, i) == 1)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn diagonal_entries(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Entrywise image in an extension field.
    pub fn embed(&self, target: &Field) -> Result<GroupElement, FieldError> {
        let data = self.data.iter().map(|&x| self.field.raw_embed(x, target)).collect::<Result<Vec<_>, _>>()?;
        Ok(GroupElement { field: target.clone(), n: self.n, data })
    }

    /// Commutator `a b a^{-1} b^{-1}`.
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        let ai = self.inverse().expect("group elements are invertible");
        let bi = other.inverse().expect("group elements are invertible");
        self.mul(other).mul(&ai).mul(&bi)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Coordinates of a unipotent element along an ordering of the positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCoordinates {
    /// Positive-root indices, in product order.
    pub roots: Vec<usize>,
    /// Raw field values, aligned with `roots`.
    pub coords: Vec<u32>,
}

impl RootCoordinates {
    pub fn get(&self, root: usize) -> u32 {
        self.roots.iter().position(|&r| r == root).map_or(0, |k| self.coords[k])
    }
}

/// `g = u n_w t u'` with `u` in the slice `U ∩ w U^- w^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatForm {
    pub u: GroupElement,
    pub w: WeylElement,
    pub t: GroupElement,
    pub u_prime: GroupElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Realization {
    SpecialLinear,
    Symplectic,
}

struct WeylRep {
    element: WeylElement,
    rep: GroupElement,
    rep_inv: GroupElement,
    /// Positive roots `g` with `w^{-1}(g) < 0`, canonical order.
    slice: Vec<usize>,
}

/// A split finite group of Lie type over `F_q` in its natural matrix realization.
pub struct ChevalleyGroup {
    weyl: WeylGroup,
    field: Field,
    realization: Realization,
    dim: usize,
    /// Entries `(row, col, sign)` of `X_g` for the positive roots; negatives are transposes.
    root_vectors: Vec<Vec<(usize, usize, i64)>>,
    heights: Vec<usize>,
    weyl_reps: Vec<WeylRep>,
    pattern_index: BTreeMap<Vec<usize>, usize>,
    verification: bool,
}

impl fmt::Debug for ChevalleyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl ChevalleyGroup {
    /// `SL_{n+1}(F_q)` for `A_n` (`n <= 3`) or `Sp_4(F_q)` for `B_2`.
    pub fn new(t: CartanType, q: u32) -> Result<Arc<ChevalleyGroup>, ChevalleyError> {
        let (p, k) = prime_power(q).ok_or(ChevalleyError::Field(FieldError::NotPrime(q)))?;
        let field = Field::new(p, k)?;
        ChevalleyGroup::over(t, &field)
    }

    pub fn over(t: CartanType, field: &Field) -> Result<Arc<ChevalleyGroup>, ChevalleyError> {
        let (realization, dim) = match t {
            CartanType::A(n) if n <= 3 => (Realization::SpecialLinear, n + 1),
            CartanType::B2 => (Realization::Symplectic, 4),
            other => return Err(ChevalleyError::Unsupported(other)),
        };
        let sys = RootSystem::new(t)?;
        let weyl = WeylGroup::new(sys.clone());
        let root_vectors: Vec<Vec<(usize, usize, i64)>> = sys
            .positive_roots()
            .iter()
            .map(|r| match realization {
                Realization::SpecialLinear => {
                    let a = r.0.iter().position(|&c| c != 0).unwrap();
                    let b = a + r.0.iter().filter(|&&c| c != 0).count();
                    vec![(a, b, 1)]
                }
                Realization::Symplectic => match r.0.as_slice() {
                    [1, 0] => vec![(0, 1, 1), (2, 3, -1)],
                    [0, 1] => vec![(1, 2, 1)],
                    [1, 1] => vec![(0, 2, 1), (1, 3, 1)],
                    _ => vec![(0, 3, 1)],
                },
            })
            .collect();
        let heights = sys.positive_roots().iter().map(|r| r.height() as usize).collect();
        let mut group = ChevalleyGroup {
            weyl: weyl.clone(),
            field: field.clone(),
            realization,
            dim,
            root_vectors,
            heights,
            weyl_reps: Vec::new(),
            pattern_index: BTreeMap::new(),
            verification: false,
        };
        let simple: Vec<GroupElement> = (0..sys.rank()).map(|i| group.simple_weyl_rep(i)).collect();
        let elements = weyl.elements().map_err(|_| ChevalleyError::Unsupported(t))?;
        for (idx, w) in elements.into_iter().enumerate() {
            let rep = w.word().iter().fold(GroupElement::identity(field, dim), |acc, &i| acc.mul(&simple[i]));
            let pattern: Vec<usize> = (0..dim).map(|j| (0..dim).find(|&i| rep.get(i, j) != 0).unwrap()).collect();
            let winv = w.inverse();
            let slice = (0..sys.num_positive()).filter(|&j| winv.images()[j] < 0).collect();
            group.pattern_index.insert(pattern, idx);
            let rep_inv = rep.inverse().unwrap();
            group.weyl_reps.push(WeylRep { element: w, rep, rep_inv, slice });
        }
        Ok(Arc::new(group))
    }

    /// Same type over `F_{q^d}`.
    pub fn extension(&self, d: u32) -> Result<Arc<ChevalleyGroup>, ChevalleyError> {
        let f = Field::new(self.field.characteristic(), self.field.degree() * d)?;
        let g = ChevalleyGroup::over(self.cartan_type(), &f)?;
        Ok(g)
    }

    /// As [`ChevalleyGroup::new`], re-checking the defining equations on every root element built.
    pub fn with_verification(t: CartanType, q: u32) -> Result<Arc<ChevalleyGroup>, ChevalleyError> {
        let Ok(mut g) = Arc::try_unwrap(ChevalleyGroup::new(t, q)?) else { unreachable!("freshly built") };
        g.verification = true;
        Ok(Arc::new(g))
    }

    pub fn set_verification(&mut self, on: bool) {
        self.verification = on;
    }

    pub fn name(&self) -> String {
        match self.realization {
            Realization::SpecialLinear => format!("SL{}(F{})", self.dim, self.field.order()),
            Realization::Symplectic => format!("Sp4(F{})", self.field.order()),
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.weyl.system().cartan_type()
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.weyl.system()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(&self.field, self.dim)
    }

    /// Group order from the standard formula.
    pub fn order(&self) -> u128 {
        let q = self.q() as u128;
        let n = self.system().num_positive() as u32;
        let degs = self.weyl.degrees();
        degs.iter().fold(q.pow(n), |acc, &d| acc * (q.pow(d as u32) - 1))
    }

    /// Checks the defining equations.
    pub fn contains(&self, g: &GroupElement) -> bool {
        if g.n != self.dim || g.field != self.field {
            return false;
        }
        match self.realization {
            Realization::SpecialLinear => g.determinant() == 1,
            Realization::Symplectic => {
                let j = self.symplectic_form();
                g.transpose().mul(&j).mul(g) == j
            }
        }
    }

    fn symplectic_form(&self) -> GroupElement {
        let f = &self.field;
        let m1 = f.raw_from_int(-1);
        GroupElement::from_raw(f, 4, vec![0, 0, 0, 1, 0, 0, 1, 0, 0, m1, 0, 0, m1, 0, 0, 0]).unwrap()
    }

    fn check(&self, g: GroupElement) -> Result<GroupElement, ChevalleyError> {
        if self.verification && !self.contains(&g) {
            return Err(ChevalleyError::NotInGroup(format!("{g:?}")));
        }
        Ok(g)
    }

    /// Raw `eps` for a signed root index.
    pub fn eps_index(&self, root: SignedIndex, c: u32) -> GroupElement {
        let f = &self.field;
        let mut g = self.identity();
        if c == 0 {
            return g;
        }
        for &(r, col, sign) in &self.root_vectors[(root.unsigned_abs() - 1) as usize] {
            let (i, j) = if root > 0 { (r, col) } else { (col, r) };
            let v = if sign > 0 { c } else { f.raw_neg(c) };
            g.set(i, j, v);
        }
        g
    }

    /// The root element `eps_g(c) = 1 + c X_g`.
    pub fn eps(&self, root: &Root, c: &FieldElement) -> Result<GroupElement, ChevalleyError> {
        let s = self.system().signed_index(root).ok_or_else(|| RootError::NotARoot(root.0.clone()))?;
        let c = self.lift_scalar(c)?;
        self.check(self.eps_index(s, c))
    }

    fn lift_scalar(&self, c: &FieldElement) -> Result<u32, ChevalleyError> {
        Ok(c.field().raw_embed(c.value(), &self.field)?)
    }

    /// Matrix position whose entry carries the coordinate of a root.
    pub fn primary_position(&self, root: SignedIndex) -> (usize, usize) {
        let (r, c, _) = self.root_vectors[(root.unsigned_abs() - 1) as usize][0];
        if root > 0 {
            (r, c)
        } else {
            (c, r)
        }
    }

    /// Value of the root character at a diagonal matrix (of the ambient general linear group).
    pub fn character(&self, root: SignedIndex, t: &GroupElement) -> u32 {
        let (i, j) = self.primary_position(root);
        let f = &self.field;
        f.raw_mul(t.get(i, i), f.raw_inv(t.get(j, j)).expect("invertible diagonal"))
    }

    /// `n_i = eps_{a_i}(1) eps_{-a_i}(-1) eps_{a_i}(1)`.
    pub fn simple_weyl_rep(&self, i: usize) -> GroupElement {
        let s = (i + 1) as SignedIndex;
        let m1 = self.field.raw_from_int(-1);
        self.eps_index(s, 1).mul(&self.eps_index(-s, m1)).mul(&self.eps_index(s, 1))
    }

    /// Index of `w` in the cached Weyl list (length then reduced word).
    pub fn weyl_index(&self, w: &WeylElement) -> usize {
        self.weyl_reps.iter().position(|r| r.element == *w).expect("element of this Weyl group")
    }

    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        self.weyl_reps.iter().map(|r| r.element.clone()).collect()
    }

    pub fn weyl_element(&self, idx: usize) -> &WeylElement {
        &self.weyl_reps[idx].element
    }

    /// `n_w`, the product of simple representatives along the cached reduced word.
    pub fn weyl_rep(&self, w: &WeylElement) -> GroupElement {
        self.weyl_reps[self.weyl_index(w)].rep.clone()
    }

    pub fn weyl_rep_by_index(&self, idx: usize) -> &GroupElement {
        &self.weyl_reps[idx].rep
    }

    /// Positive roots `g` with `w^{-1}(g) < 0`: the unipotent slice used for coset representatives.
    pub fn slice_roots(&self, idx: usize) -> &[usize] {
        &self.weyl_reps[idx].slice
    }

    /// Torus element from the diagonal entries, checked against the group.
    pub fn torus(&self, diag: &[u32]) -> Result<GroupElement, ChevalleyError> {
        let t = GroupElement::diagonal(&self.field, diag);
        if diag.len() != self.dim || !self.contains(&t) {
            return Err(ChevalleyError::NotInGroup(format!("{t:?}")));
        }
        Ok(t)
    }

    /// All elements of the split torus `T(F_q)`.
    pub fn torus_elements(&self) -> Vec<GroupElement> {
        let f = &self.field;
        let units: Vec<u32> = (1..f.order()).collect();
        let inv = |x: u32| f.raw_inv(x).unwrap();
        let mut out = Vec::new();
        match self.realization {
            Realization::SpecialLinear => {
                let n = self.dim;
                let mut idx = vec![0usize; n - 1];
                loop {
                    let mut d: Vec<u32> = idx.iter().map(|&k| units[k]).collect();
                    let prod = d.iter().fold(1u32, |a, &b| f.raw_mul(a, b));
                    d.push(inv(prod));
                    out.push(GroupElement::diagonal(f, &d));
                    let mut k = 0;
                    loop {
                        if k == n - 1 {
                            return out;
                        }
                        idx[k] += 1;
                        if idx[k] < units.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                }
            }
            Realization::Symplectic => {
                for &a in &units {
                    for &b in &units {
                        out.push(GroupElement::diagonal(f, &[a, b, inv(b), inv(a)]));
                    }
                }
                out
            }
        }
    }

    /// Diagonal matrix `t` (possibly outside the group, normalizing it) with `a_i(t) = c` and
    /// `a_j(t) = 1` for the other simple roots.
    pub fn simple_character_torus(&self, i: usize, c: u32) -> GroupElement {
        let f = &self.field;
        let ci = f.raw_inv(c).expect("nonzero character value");
        let d: Vec<u32> = match self.realization {
            Realization::SpecialLinear => (0..self.dim).map(|k| if k <= i { c } else { 1 }).collect(),
            Realization::Symplectic => {
                if i == 0 {
                    vec![c, 1, 1, ci]
                } else {
                    vec![1, 1, ci, ci]
                }
            }
        };
        GroupElement::diagonal(f, &d)
    }

    /// Generators of `G(F_q)`: `eps_{+-a_i}(c)` for `c` in an `F_p`-basis of `F_q`, plus the
    /// coroot images of a generator of `F_q^x` when that is not 1.
    pub fn generators(&self) -> Vec<GroupElement> {
        let f = &self.field;
        let p = f.characteristic();
        let mut gens = Vec::new();
        let rank = self.system().rank();
        for i in 0..rank {
            for sign in [1i16, -1] {
                let mut c = 1u32;
                for _ in 0..f.degree() {
                    gens.push(self.eps_index(sign * (i + 1) as SignedIndex, c));
                    c *= p;
                }
            }
        }
        if f.order() > 2 {
            let z = f.generator().value();
            let zi = f.raw_inv(z).unwrap();
            for i in 0..rank {
                let d: Vec<u32> = match self.realization {
                    Realization::SpecialLinear => (0..self.dim)
                        .map(|k| {
                            if k == i {
                                z
                            } else if k == i + 1 {
                                zi
                            } else {
                                1
                            }
                        })
                        .collect(),
                    Realization::Symplectic => {
                        if i == 0 {
                            vec![z, zi, z, zi]
                        } else {
                            vec![1, z, zi, 1]
                        }
                    }
                };
                gens.push(GroupElement::diagonal(f, &d));
            }
        }
        gens
    }

    /// Uniform random element for `SL`; a long random generator word for `Sp_4`.
    pub fn random_element<R: RngCore>(&self, rng: &mut R) -> GroupElement {
        let q = self.field.order() as u64;
        match self.realization {
            Realization::SpecialLinear => loop {
                let data: Vec<u32> = (0..self.dim * self.dim).map(|_| (rng.next_u64() % q) as u32).collect();
                let g = GroupElement { field: self.field.clone(), n: self.dim, data };
                if g.determinant() == 1 {
                    return g;
                }
            },
            Realization::Symplectic => {
                let gens = self.generators();
                let mut g = self.identity();
                for _ in 0..64 {
                    let k = (rng.next_u64() % gens.len() as u64) as usize;
                    let c = (rng.next_u64() % q) as u32;
                    g = g.mul(&gens[k]);
                    // mix in full root subgroups so large q is covered
                    let r = (rng.next_u64() % self.system().num_positive() as u64) as SignedIndex + 1;
                    g = g.mul(&self.eps_index(r, c));
                }
                g
            }
        }
    }

    /// Reduced column echelon form of `g` under right multiplication by upper triangular
    /// matrices; returns the normalized matrix and the pivot row of each column.
    fn column_echelon(&self, g: &GroupElement) -> Result<(GroupElement, Vec<usize>), ChevalleyError> {
        let n = self.dim;
        let f = &self.field;
        let mut c = g.clone();
        let mut pivots = Vec::with_capacity(n);
        for j in 0..n {
            let r = (0..n)
                .rev()
                .find(|&i| c.get(i, j) != 0)
                .ok_or_else(|| ChevalleyError::Malformed(String::from("singular matrix")))?;
            let inv = f.raw_inv(c.get(r, j)).unwrap();
            for i in 0..n {
                c.set(i, j, f.raw_mul(c.get(i, j), inv));
            }
            for k in j + 1..n {
                let x = c.get(r, k);
                if x == 0 {
                    continue;
                }
                for i in 0..n {
                    let v = f.raw_sub(c.get(i, k), f.raw_mul(x, c.get(i, j)));
                    c.set(i, k, v);
                }
            }
            pivots.push(r);
        }
        Ok((c, pivots))
    }

    /// Coset data of `gB`: the Weyl index of its cell and the slice element `u` with
    /// `gB = u n_w B`.
    pub fn coset_key(&self, g: &GroupElement) -> Result<(usize, GroupElement), ChevalleyError> {
        let (c, pivots) = self.column_echelon(g)?;
        let idx = *self
            .pattern_index
            .get(&pivots)
            .ok_or_else(|| ChevalleyError::NotInGroup(String::from("Bruhat cell not in the Weyl group")))?;
        let n = self.dim;
        let mut u = self.identity();
        for j in 0..n {
            for i in 0..n {
                u.set(i, pivots[j], c.get(i, j));
            }
        }
        Ok((idx, u))
    }

    /// Bruhat decomposition `g = u n_w t u'`, with `u` in the slice of roots `g > 0` with
    /// `w^{-1}(g) < 0` (so the pair `(w, u)` depends only on `gB`), `t` in the torus and `u'`
    /// unipotent.
    pub fn bruhat(&self, g: &GroupElement) -> Result<BruhatForm, ChevalleyError> {
        if g.n != self.dim || g.field != self.field {
            return Err(ChevalleyError::Malformed(String::from("wrong size or field")));
        }
        let (idx, u) = self.coset_key(g)?;
        let rep = &self.weyl_reps[idx];
        let b = rep.rep_inv.mul(&u.inverse().unwrap()).mul(g);
        if !b.is_upper_triangular() {
            return Err(ChevalleyError::NotInGroup(String::from("Borel part is not triangular")));
        }
        let diag = b.diagonal_entries();
        let t = GroupElement::diagonal(&self.field, &diag);
        let u_prime = t.inverse().unwrap().mul(&b);
        Ok(BruhatForm { u, w: rep.element.clone(), t, u_prime })
    }

    pub fn recompose(&self, form: &BruhatForm) -> GroupElement {
        form.u.mul(&self.weyl_rep(&form.w)).mul(&form.t).mul(&form.u_prime)
    }

    /// `prod_k eps_{roots[k]}(coords[k])` in the listed order.
    pub fn unipotent_from_coordinates(&self, rc: &RootCoordinates) -> GroupElement {
        rc.roots
            .iter()
            .zip(&rc.coords)
            .fold(self.identity(), |acc, (&r, &c)| acc.mul(&self.eps_index((r + 1) as SignedIndex, c)))
    }

    /// Unique coordinates of `u` as a product of positive root elements in the given order
    /// (positive-root indices).
    pub fn factor_unipotent(&self, u: &GroupElement, ordering: &[usize]) -> Result<RootCoordinates, ChevalleyError> {
        if !u.is_unipotent_upper() || u.n != self.dim {
            return Err(ChevalleyError::NotUnipotent);
        }
        let npos = self.system().num_positive();
        let mut seen = vec![false; npos];
        for &r in ordering {
            if r >= npos || seen[r] {
                return Err(ChevalleyError::Malformed(String::from(
                    "ordering is not a permutation of the positive roots",
                )));
            }
            seen[r] = true;
        }
        if ordering.len() != npos {
            return Err(ChevalleyError::Malformed(String::from("ordering is not a permutation of the positive roots")));
        }
        let mut rc = RootCoordinates { roots: ordering.to_vec(), coords: vec![0; npos] };
        let max_height = self.heights.iter().copied().max().unwrap_or(0);
        for h in 1..=max_height {
            let residual = self.unipotent_from_coordinates(&rc).inverse().unwrap().mul(u);
            for (k, &r) in ordering.iter().enumerate() {
                if self.heights[r] == h {
                    let (i, j) = self.primary_position((r + 1) as SignedIndex);
                    rc.coords[k] = residual.get(i, j);
                }
            }
        }
        if self.unipotent_from_coordinates(&rc) != *u {
            return Err(ChevalleyError::NotInGroup(String::from("unipotent element outside U")));
        }
        Ok(rc)
    }

    pub fn canonical_ordering(&self) -> Vec<usize> {
        (0..self.system().num_positive()).collect()
    }

    /// Simple roots with nonzero coordinate; independent of the ordering.
    pub fn simple_support(&self, u: &GroupElement) -> Result<SimpleSubset, ChevalleyError> {
        let rc = self.factor_unipotent(u, &self.canonical_ordering())?;
        let idx: Vec<usize> = (0..self.system().rank()).filter(|&i| rc.get(i) != 0).collect();
        Ok(SimpleSubset::from_indices(&idx))
    }

    /// `D`-regularity: the coordinates at simple roots are nonzero exactly on `D`.
    pub fn is_regular(&self, u: &GroupElement, d: SimpleSubset) -> Result<bool, ChevalleyError> {
        Ok(self.simple_support(u)? == d)
    }

    /// Ordering `beta_k, .., beta_1` of `U_w` followed by the remaining roots.
    pub fn uw_ordering(&self, w: &WeylElement) -> Result<(Vec<usize>, usize), ChevalleyError> {
        let sys = self.system();
        let betas = sys.uw_roots(w.word())?;
        let mut order: Vec<usize> = betas.iter().map(|b| sys.positive_index(b).unwrap()).collect();
        let k = order.len();
        let rest: Vec<usize> = (0..sys.num_positive()).filter(|r| !order.contains(r)).collect();
        order.extend(rest);
        Ok((order, k))
    }

    /// Whether `u` lies in `U_w = U_{beta_k} .. U_{beta_1}`.
    pub fn in_uw(&self, u: &GroupElement, w: &WeylElement) -> Result<bool, ChevalleyError> {
        let (order, k) = self.uw_ordering(w)?;
        let rc = self.factor_unipotent(u, &order)?;
        Ok(rc.coords[k..].iter().all(|&c| c == 0))
    }

    /// Given `u` in `U_w` over `F_{q^m}` (this group is over `F_q`), return `y` in `U_w` over
    /// `F_{q^n}` with every `beta_i`-coordinate in `F_{q^n} \ F_{q^m}`, such that `y u` is
    /// `Delta_w`-regular. Returns `y` together with the group over `F_{q^n}`.
    pub fn regularize(
        &self,
        u: &GroupElement,
        w: &WeylElement,
        m: u32,
        n: u32,
    ) -> Result<(Arc<ChevalleyGroup>, GroupElement), ChevalleyError> {
        if n <= m {
            return Err(ChevalleyError::DegreeOrder { m, n });
        }
        let big = self.extension(n)?;
        let small = self.extension(m)?;
        if u.field != small.field || !u.is_unipotent_upper() || !small.in_uw(u, w)? {
            return Err(ChevalleyError::OutsideSlice);
        }
        let f = big.field();
        let qm = (small.q() as u64).max(2);
        // smallest element outside the subfield F_{q^m}
        let g = (0..f.order()).find(|&x| f.raw_pow(x, qm) != x).ok_or(ChevalleyError::DegreeOrder { m, n })?;
        let (order, k) = big.uw_ordering(w)?;
        let y = order[..k].iter().fold(big.identity(), |acc, &r| acc.mul(&big.eps_index((r + 1) as SignedIndex, g)));
        let yu = y.mul(&u.embed(f)?);
        let delta = SimpleSubset::from_indices(&self.system().delta_w(w.word())?);
        if !big.in_uw(&yu, w)? || !big.is_regular(&yu, delta)? {
            return Err(ChevalleyError::OutsideSlice);
        }
        Ok((big, y))
    }

    /// Integer constants `c^{mn}` with `[eps_a(x), eps_b(y)] = prod eps_{ma+nb}(c^{mn} x^m y^n)`
    /// (product in the canonical order), read off at `x = y = 1` and lifted symmetrically from
    /// `F_p`, then verified for every pair `x, y` in `F_q`. Returns `None` if verification fails.
    pub fn commutator_constants(&self, a: usize, b: usize) -> Result<Option<Vec<(i32, i32, i64)>>, ChevalleyError> {
        let sys = self.system().clone();
        if a == b {
            return Err(ChevalleyError::Malformed(String::from("roots must be distinct")));
        }
        let ra = &sys.positive_roots()[a];
        let rb = &sys.positive_roots()[b];
        let mut combos: Vec<(usize, i32, i32)> = Vec::new();
        for m in 1..=3 {
            for n in 1..=3 {
                let r = ra.scale(m).add(&rb.scale(n));
                if let Some(j) = sys.positive_index(&r) {
                    combos.push((j, m, n));
                }
            }
        }
        combos.sort();
        let f = &self.field;
        let canonical = self.canonical_ordering();
        let comm = self.eps_index((a + 1) as SignedIndex, 1).commutator(&self.eps_index((b + 1) as SignedIndex, 1));
        let rc = self.factor_unipotent(&comm, &canonical)?;
        let constants: Vec<(usize, i32, i32, u32)> = combos.iter().map(|&(j, m, n)| (j, m, n, rc.get(j))).collect();
        let outside = (0..sys.num_positive()).any(|j| rc.get(j) != 0 && !combos.iter().any(|c| c.0 == j));
        if outside {
            return Ok(None);
        }
        for x in 0..f.order() {
            for y in 0..f.order() {
                let lhs =
                    self.eps_index((a + 1) as SignedIndex, x).commutator(&self.eps_index((b + 1) as SignedIndex, y));
                let rhs = constants.iter().fold(self.identity(), |acc, &(j, m, n, c)| {
                    let v = f.raw_mul(c, f.raw_mul(f.raw_pow(x, m as u64), f.raw_pow(y, n as u64)));
                    acc.mul(&self.eps_index((j + 1) as SignedIndex, v))
                });
                if lhs != rhs {
                    return Ok(None);
                }
            }
        }
        Ok(Some(
            constants
                .into_iter()
                .map(|(_, m, n, c)| (m, n, f.raw_to_symmetric_int(c).expect("constants lie in the prime field")))
                .collect(),
        ))
    }

    /// For `u` in `U_a \ {1}` with `a` simple: `(x, t, y)` with `n_a u n_a^{-1} = x n_a t y`,
    /// `x, y` in `U_a \ {1}` and `t` in the torus.
    pub fn conj_identity(
        &self,
        u: &GroupElement,
        i: usize,
    ) -> Result<(GroupElement, GroupElement, GroupElement), ChevalleyError> {
        if u.is_identity() {
            return Err(ChevalleyError::TrivialElement);
        }
        let rc = self.factor_unipotent(u, &self.canonical_ordering())?;
        if (0..rc.coords.len()).any(|j| j != i && rc.get(j) != 0) {
            return Err(ChevalleyError::OutsideSlice);
        }
        let n = self.simple_weyl_rep(i);
        let h = n.mul(u).mul(&n.inverse().unwrap());
        let form = self.bruhat(&h)?;
        let s = self.weyl.simple(i);
        if form.w != s {
            return Err(ChevalleyError::NotInGroup(String::from("conjugate not in the cell of the reflection")));
        }
        // n_w for a simple reflection is n_i itself
        let in_root_group = |g: &GroupElement| -> Result<bool, ChevalleyError> {
            let rc = self.factor_unipotent(g, &self.canonical_ordering())?;
            Ok(!g.is_identity() && (0..rc.coords.len()).all(|j| j == i || rc.get(j) == 0))
        };
        if !in_root_group(&form.u)? || !in_root_group(&form.u_prime)? {
            return Err(ChevalleyError::OutsideSlice);
        }
        Ok((form.u, form.t, form.u_prime))
    }

    /// All elements of `U(F_q)`, as coordinate tuples in the canonical order.
    pub fn unipotent_elements(&self) -> Vec<GroupElement> {
        let roots: Vec<usize> = self.canonical_ordering();
        self.root_products(&roots)
    }

    /// All products `prod_{r in roots} eps_r(c_r)` over `c in F_q^{|roots|}`, in lexicographic
    /// order of the coefficient tuples.
    pub fn root_products(&self, roots: &[usize]) -> Vec<GroupElement> {
        let q = self.field.order();
        let k = roots.len();
        let mut out = Vec::with_capacity((q as usize).pow(k as u32));
        let mut c = vec![0u32; k];
        loop {
            let g = roots
                .iter()
                .zip(&c)
                .fold(self.identity(), |acc, (&r, &x)| acc.mul(&self.eps_index((r + 1) as SignedIndex, x)));
            out.push(g);
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                c[pos] += 1;
                if c[pos] < q {
                    break;
                }
                c[pos] = 0;
            }
        }
    }
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    (x == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl(n: usize, q: u32) -> Arc<ChevalleyGroup> {
        ChevalleyGroup::new(CartanType::A(n - 1), q).unwrap()
    }

    fn sp4(q: u32) -> Arc<ChevalleyGroup> {
        ChevalleyGroup::new(CartanType::B2, q).unwrap()
    }

    fn enumerate_sl2(q: u32) -> Vec<GroupElement> {
        let g = sl(2, q);
        let f = g.field().clone();
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = GroupElement::from_raw(&f, 2, vec![a, b, c, d]).unwrap();
                        if m.determinant() == 1 {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn orders() {
        assert_eq!(sl(2, 2).order(), 6);
        assert_eq!(sl(3, 2).order(), 168);
        assert_eq!(sp4(2).order(), 720);
        assert_eq!(enumerate_sl2(3).len(), 24);
        assert!(ChevalleyGroup::new(CartanType::G2, 2).is_err());
        assert!(ChevalleyGroup::new(CartanType::A(4), 2).is_err());
        assert!(ChevalleyGroup::new(CartanType::A(1), 6).is_err());
    }

    #[test]
    fn root_elements() {
        let g = sl(3, 3);
        let f = g.field().clone();
        let alpha = g.system().simple_root(0);
        assert!(g.eps(&alpha, &f.zero()).unwrap().is_identity());
        let e = g.eps(&alpha, &f.element(2)).unwrap();
        assert_eq!(e.raw(), &[1, 2, 0, 0, 1, 0, 0, 0, 1]);
        // homomorphism
        for a in 0..3 {
            for b in 0..3 {
                let lhs = g.eps_index(1, a).mul(&g.eps_index(1, b));
                assert_eq!(lhs, g.eps_index(1, f.raw_add(a, b)));
            }
        }
    }

    #[test]
    fn generated_elements_preserve_the_form() {
        for q in [2, 3] {
            let g = sp4(q);
            for gen in g.generators() {
                assert!(g.contains(&gen));
            }
            for j in 1..=4i16 {
                for s in [j, -j] {
                    assert!(g.contains(&g.eps_index(s, 1)));
                }
            }
        }
    }

    #[test]
    fn torus_rescales_root_elements() {
        for (t, q) in [(CartanType::A(1), 4), (CartanType::A(2), 3), (CartanType::B2, 3), (CartanType::A(2), 4)] {
            let g = ChevalleyGroup::new(t, q).unwrap();
            let f = g.field().clone();
            for tor in g.torus_elements() {
                let ti = tor.inverse().unwrap();
                for i in 0..g.system().rank() {
                    let s = (i + 1) as SignedIndex;
                    for c in 0..q {
                        let lhs = tor.mul(&g.eps_index(s, c)).mul(&ti);
                        let rhs = g.eps_index(s, f.raw_mul(g.character(s, &tor), c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_representatives() {
        let g = sl(3, 2);
        assert!(g.weyl_rep(&g.weyl().identity()).is_identity());
        for i in 0..2 {
            let n = g.simple_weyl_rep(i);
            assert!(n.mul(&n).is_diagonal());
        }
        let (n0, n1) = (g.simple_weyl_rep(0), g.simple_weyl_rep(1));
        assert_eq!(n0.mul(&n1).mul(&n0), n1.mul(&n0).mul(&n1));
        let g = sl(3, 3);
        let (n0, n1) = (g.simple_weyl_rep(0), g.simple_weyl_rep(1));
        assert_eq!(n0.mul(&n1).mul(&n0), n1.mul(&n0).mul(&n1));
    }

    #[test]
    fn conjugation_moves_root_subgroups() {
        for (t, q) in [(CartanType::A(2), 3), (CartanType::B2, 3), (CartanType::A(3), 2)] {
            let g = ChevalleyGroup::new(t, q).unwrap();
            let sys = g.system().clone();
            for w in g.weyl_elements() {
                let n = g.weyl_rep(&w);
                let ni = n.inverse().unwrap();
                for j in 1..=sys.num_positive() as SignedIndex {
                    for s in [j, -j] {
                        let target = w.apply_index(s);
                        for c in 1..q {
                            let h = n.mul(&g.eps_index(s, c)).mul(&ni);
                            assert!((1..q).any(|d| g.eps_index(target, d) == h), "{t} {w:?} {s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_round_trip_sl2_f3_and_coset_constancy() {
        let g = sl(2, 3);
        let borel: Vec<GroupElement> = enumerate_sl2(3).into_iter().filter(|b| b.is_upper_triangular()).collect();
        assert_eq!(borel.len(), 6);
        let mut cosets = alloc::collections::BTreeSet::new();
        for x in enumerate_sl2(3) {
            let form = g.bruhat(&x).unwrap();
            assert_eq!(g.recompose(&form), x);
            assert!(form.u_prime.is_unipotent_upper());
            assert!(form.t.is_diagonal());
            let key = g.coset_key(&x).unwrap();
            for b in &borel {
                assert_eq!(g.coset_key(&x.mul(b)).unwrap(), key);
            }
            cosets.insert(key);
        }
        assert_eq!(cosets.len(), 4);
    }

    #[test]
    fn bruhat_examples() {
        let g = sl(2, 3);
        let lower = g.eps_index(-1, 1);
        let form = g.bruhat(&lower).unwrap();
        assert_eq!(form.w, g.weyl().simple(0));
        // [[1,0],[1,1]] = [[1,1],[0,1]] [[0,1],[-1,0]] [[-1,0],[0,-1]] [[1,1],[0,1]]
        assert_eq!(form.u, g.eps_index(1, 1));
        assert_eq!(form.t.diagonal_entries(), vec![2, 2]);
        assert_eq!(form.u_prime, g.eps_index(1, 1));
        let w0 = g.weyl().longest(SimpleSubset::all(1));
        let form = g.bruhat(&g.weyl_rep(&w0)).unwrap();
        assert!(form.u.is_identity() && form.t.is_identity() && form.u_prime.is_identity());
        let b = g.eps_index(1, 2);
        assert!(g.bruhat(&b).unwrap().w.is_identity());
    }

    #[test]
    fn bruhat_random_sl3_f3() {
        let g = sl(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let x = g.random_element(&mut rng);
            let form = g.bruhat(&x).unwrap();
            assert_eq!(g.recompose(&form), x);
            let idx = g.weyl_index(&form.w);
            let rc = g.factor_unipotent(&form.u, &g.canonical_ordering()).unwrap();
            assert!((0..3).all(|r| rc.get(r) == 0 || g.slice_roots(idx).contains(&r)));
        }
    }

    #[test]
    fn bruhat_on_sp4() {
        let g = sp4(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = g.random_element(&mut rng);
            assert!(g.contains(&x));
            let form = g.bruhat(&x).unwrap();
            assert_eq!(g.recompose(&form), x);
            assert!(g.contains(&form.u));
            assert!(g.contains(&form.t));
        }
    }

    #[test]
    fn cell_sizes_match_lengths() {
        for (t, q) in [(CartanType::A(2), 2), (CartanType::B2, 2), (CartanType::A(1), 4)] {
            let g = ChevalleyGroup::new(t, q).unwrap();
            for (idx, w) in g.weyl_elements().iter().enumerate() {
                let slice = g.slice_roots(idx).to_vec();
                assert_eq!(slice.len(), w.length());
                let n = g.weyl_rep(w);
                let keys: alloc::collections::BTreeSet<_> =
                    g.root_products(&slice).into_iter().map(|u| g.coset_key(&u.mul(&n)).unwrap()).collect();
                assert_eq!(keys.len(), (q as usize).pow(w.length() as u32));
                assert!(keys.iter().all(|k| k.0 == idx));
            }
        }
    }

    #[test]
    fn factorization_round_trips() {
        let g = sl(3, 2);
        let orders: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for u in g.unipotent_elements() {
            let support = g.simple_support(&u).unwrap();
            for ord in &orders {
                let rc = g.factor_unipotent(&u, ord).unwrap();
                assert_eq!(g.unipotent_from_coordinates(&rc), u);
                let s: Vec<usize> = (0..2).filter(|&i| rc.get(i) != 0).collect();
                assert_eq!(SimpleSubset::from_indices(&s), support);
            }
        }
        assert!(g.factor_unipotent(&g.eps_index(-1, 1), &[0, 1, 2]).is_err());
        let rc = g.factor_unipotent(&g.identity(), &[0, 1, 2]).unwrap();
        assert_eq!(rc.coords, vec![0, 0, 0]);
        let u = g.eps_index(1, 1).mul(&g.eps_index(2, 1));
        assert!(g.is_regular(&u, SimpleSubset::all(2)).unwrap());
        assert!(g.is_regular(&g.identity(), SimpleSubset::EMPTY).unwrap());
        assert!(g.is_regular(&g.eps_index(1, 1), SimpleSubset::single(0)).unwrap());
    }

    #[test]
    fn commutators() {
        let g = sl(3, 3);
        let c = g.commutator_constants(0, 1).unwrap().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].0, c[0].1), (1, 1));
        assert_eq!(c[0].2.abs(), 1);
        assert_eq!(g.commutator_constants(0, 2).unwrap().unwrap(), vec![]);
        let a3 = sl(4, 2);
        assert_eq!(a3.commutator_constants(0, 2).unwrap().unwrap(), vec![]);
        let b = sp4(3);
        let c = b.commutator_constants(0, 1).unwrap().unwrap();
        assert_eq!(c.iter().map(|x| (x.0, x.1)).collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn conjugation_identity_sl2() {
        for q in [2, 3, 4, 5] {
            let g = sl(2, q);
            let n = g.simple_weyl_rep(0);
            for c in 1..q {
                let u = g.eps_index(1, c);
                let (x, t, y) = g.conj_identity(&u, 0).unwrap();
                let lhs = n.mul(&u).mul(&n.inverse().unwrap());
                assert_eq!(lhs, x.mul(&n).mul(&t).mul(&y));
                assert!(!x.is_identity() && !y.is_identity());
            }
            assert!(g.conj_identity(&g.identity(), 0).is_err());
        }
    }

    #[test]
    fn regularize_rank_one() {
        let g = sl(2, 2);
        let s = g.weyl().simple(0);
        let (big, y) = g.regularize(&g.identity(), &s, 1, 2).unwrap();
        assert_eq!(big.q(), 4);
        assert!(big.is_regular(&y, SimpleSubset::single(0)).unwrap());
        assert!(g.regularize(&g.identity(), &s, 2, 2).is_err());
        let a2 = sl(3, 2);
        let w0 = a2.weyl().longest(SimpleSubset::all(2));
        let (big, y) = a2.regularize(&a2.identity(), &w0, 1, 2).unwrap();
        let rc = big.factor_unipotent(&y, &big.uw_ordering(&w0).unwrap().0).unwrap();
        let f = big.field();
        assert!(rc.coords.iter().all(|&c| f.raw_pow(c, 2) != c));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
