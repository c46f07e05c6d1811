//! The permutation module `K[G/B]` of a finite split group, the alternating vectors
//! `eta_J`, the submodules they generate, parabolic quotients `K[G/P_I]`, and subquotients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chevalley::{ChevalleyError, ChevalleyGroup, GroupElement};
use crate::coxeter::{SimpleSubset, WeylElement};
use crate::linalg::{densify, CoeffField, Echelon, Matrix, SparseVec};

pub mod checks;
pub mod norton;

/// Largest `|G/B|` enumerated by default.
pub const DEFAULT_INDEX_BOUND: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleError {
    Chevalley(ChevalleyError),
    IndexTooLarge { index: usize, bound: usize },
    DefiningCharacteristic(u64),
    Mismatch,
    TrivialElement,
    OutsideSlice,
    NotTypeA,
    NotFixed,
}

impl From<ChevalleyError> for ModuleError {
    fn from(e: ChevalleyError) -> ModuleError {
        ModuleError::Chevalley(e)
    }
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::Chevalley(e) => write!(f, "{e}"),
            ModuleError::IndexTooLarge { index, bound } => {
                write!(f, "|G/B| = {index} exceeds the enumeration bound {bound}")
            }
            ModuleError::DefiningCharacteristic(p) => write!(
                f,
                "coefficient characteristic equals the defining characteristic {p} (pass the override to allow it)"
            ),
            ModuleError::Mismatch => write!(f, "vector or element belongs to a different space"),
            ModuleError::TrivialElement => write!(f, "element must be nontrivial"),
            ModuleError::OutsideSlice => write!(f, "element lies outside the required root slice"),
            ModuleError::NotTypeA => write!(f, "only available in type A"),
            ModuleError::NotFixed => write!(f, "seed vector is not fixed by the torus"),
        }
    }
}

/// `G/B` with canonical representatives `u n_w`, enumerated cell by cell.
pub struct CosetSpace {
    group: Arc<ChevalleyGroup>,
    reps: Vec<GroupElement>,
    cells: Vec<usize>,
    index: BTreeMap<(usize, GroupElement), usize>,
    weyl_cosets: Vec<usize>,
    generators: Vec<GroupElement>,
    generator_perms: Vec<Vec<usize>>,
}

impl fmt::Debug for CosetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/B ({} cosets)", self.group, self.reps.len())
    }
}

impl CosetSpace {
    pub fn new(group: Arc<ChevalleyGroup>) -> Result<CosetSpace, ModuleError> {
        CosetSpace::with_bound(group, DEFAULT_INDEX_BOUND)
    }

    pub fn with_bound(group: Arc<ChevalleyGroup>, bound: usize) -> Result<CosetSpace, ModuleError> {
        let q = group.q() as usize;
        let weyl = group.weyl_elements();
        let index_size: usize = weyl.iter().map(|w| q.pow(w.length() as u32)).sum();
        if index_size > bound {
            return Err(ModuleError::IndexTooLarge { index: index_size, bound });
        }
        let mut reps = Vec::with_capacity(index_size);
        let mut cells = Vec::with_capacity(index_size);
        let mut index = BTreeMap::new();
        let mut weyl_cosets = Vec::with_capacity(weyl.len());
        for idx in 0..weyl.len() {
            let n = group.weyl_rep_by_index(idx).clone();
            let slice = group.slice_roots(idx).to_vec();
            for u in group.root_products(&slice) {
                let g = u.mul(&n);
                let key = group.coset_key(&g)?;
                if u.is_identity() {
                    weyl_cosets.push(reps.len());
                }
                index.insert(key, reps.len());
                reps.push(g);
                cells.push(idx);
            }
        }
        let generators = group.generators();
        let mut space =
            CosetSpace { group, reps, cells, index, weyl_cosets, generators: Vec::new(), generator_perms: Vec::new() };
        let perms = generators.iter().map(|g| space.permutation(g)).collect::<Result<Vec<_>, _>>()?;
        space.generators = generators;
        space.generator_perms = perms;
        Ok(space)
    }

    pub fn group(&self) -> &Arc<ChevalleyGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> &GroupElement {
        &self.reps[i]
    }

    /// Weyl index of the Bruhat cell containing coset `i`.
    pub fn cell(&self, i: usize) -> usize {
        self.cells[i]
    }

    /// Index of the coset `n_w B`, by Weyl index.
    pub fn weyl_coset(&self, w_idx: usize) -> usize {
        self.weyl_cosets[w_idx]
    }

    pub fn weyl_coset_of(&self, w: &WeylElement) -> usize {
        self.weyl_cosets[self.group.weyl_index(w)]
    }

    /// Index of `gB`.
    pub fn lookup(&self, g: &GroupElement) -> Result<usize, ModuleError> {
        let key = self.group.coset_key(g)?;
        self.index.get(&key).copied().ok_or(ModuleError::Mismatch)
    }

    /// The permutation `i -> j` with `g rep_i B = rep_j B`.
    pub fn permutation(&self, g: &GroupElement) -> Result<Vec<usize>, ModuleError> {
        if g.field() != self.group.field() || g.size() != self.group.dim() {
            return Err(ModuleError::Mismatch);
        }
        self.reps.iter().map(|r| self.lookup(&g.mul(r))).collect()
    }

    /// Action of a diagonal matrix normalizing `B` (not necessarily in `G`) by conjugation,
    /// `gB -> t g t^{-1} B`; agrees with left multiplication on the torus of `G`.
    pub fn conjugation_permutation(&self, t: &GroupElement) -> Result<Vec<usize>, ModuleError> {
        let ti = t.inverse().ok_or(ModuleError::Mismatch)?;
        self.reps.iter().map(|r| self.lookup(&t.mul(r).mul(&ti))).collect()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_perms(&self) -> &[Vec<usize>] {
        &self.generator_perms
    }

    /// `|G/B|` predicted by the Poincare polynomial at `q`.
    pub fn expected_len(&self) -> usize {
        let q = self.group.q() as usize;
        self.group.weyl_elements().iter().map(|w| q.pow(w.length() as u32)).sum()
    }

    /// Partition of `G/B` into `P_I`-cosets.
    pub fn parabolic_induced(&self, i_set: SimpleSubset) -> Result<ParabolicQuotient, ModuleError> {
        let g = &self.group;
        let mut class_of = Vec::with_capacity(self.len());
        let mut keys: BTreeMap<(usize, GroupElement), usize> = BTreeMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            let (w_idx, u) = g.coset_key(&self.reps[i])?;
            let mut w = g.weyl_element(w_idx).clone();
            while let Some(s) = w.descents().indices().into_iter().find(|&s| i_set.contains(s)) {
                w = w.mul_simple_right(s);
            }
            let key = g.coset_key(&u.mul(&g.weyl_rep(&w)))?;
            let next = keys.len();
            let c = *keys.entry(key).or_insert(next);
            if c == members.len() {
                members.push(Vec::new());
            }
            members[c].push(i);
            class_of.push(c);
        }
        Ok(ParabolicQuotient { subset: i_set, class_of, members })
    }
}

/// The map `G/B -> G/P_I`.
#[derive(Clone, Debug)]
pub struct ParabolicQuotient {
    pub subset: SimpleSubset,
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ParabolicQuotient {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Permutation of `G/P_I` induced by a permutation of `G/B`.
    pub fn induced_permutation(&self, perm: &[usize]) -> Vec<usize> {
        self.members.iter().map(|m| self.class_of[perm[m[0]]]).collect()
    }

    /// Basis `e_i - e_j` (same class) of the kernel of `K[G/B] -> K[G/P_I]`.
    pub fn kernel<F: CoeffField>(&self, k: &F, dim: usize) -> Echelon<F> {
        let mut ech = Echelon::new(k.clone(), dim);
        for m in &self.members {
            for &i in &m[1..] {
                let mut v = vec![k.zero(); dim];
                v[i] = k.one();
                v[m[0]] = k.neg(&k.one());
                ech.insert(&v);
            }
        }
        ech
    }
}

/// Sparse vector of `K[G/B]`: coset index to nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector<E> {
    entries: BTreeMap<usize, E>,
}

impl<E: Clone> ModuleVector<E> {
    pub fn zero() -> ModuleVector<E> {
        ModuleVector { entries: BTreeMap::new() }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &E)> {
        self.entries.iter().map(|(&i, e)| (i, e))
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries.get(&i)
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Generated submodule with an echelonized basis.
#[derive(Clone, Debug)]
pub struct Submodule<F: CoeffField> {
    basis: Echelon<F>,
    pub description: String,
}

impl<F: CoeffField> Submodule<F> {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &Echelon<F> {
        &self.basis
    }

    pub fn contains(&self, v: &ModuleVector<F::Elem>) -> bool {
        let k = self.basis.field();
        self.basis.contains(&to_dense(k, v, self.basis.ambient_dim()))
    }

    pub fn contains_submodule(&self, other: &Submodule<F>) -> bool {
        self.basis.contains_space(&other.basis)
    }

    pub fn same_space(&self, other: &Submodule<F>) -> bool {
        self.basis.same_space(&other.basis)
    }

    pub fn sum(&self, other: &Submodule<F>) -> Submodule<F> {
        Submodule {
            basis: self.basis.sum(&other.basis),
            description: format!("{} + {}", self.description, other.description),
        }
    }
}

fn to_dense<F: CoeffField>(k: &F, v: &ModuleVector<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![k.zero(); dim];
    for (&i, c) in &v.entries {
        out[i] = c.clone();
    }
    out
}

/// `K[G/B]` over a coefficient field `K`.
#[derive(Clone)]
pub struct PrincipalSeries<F: CoeffField> {
    space: Arc<CosetSpace>,
    field: F,
}

impl<F: CoeffField> fmt::Debug for PrincipalSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{:?}]", self.field.name(), self.space)
    }
}

impl<F: CoeffField> PrincipalSeries<F> {
    /// Refuses `char K = p` unless `allow_defining_char` is set.
    pub fn new(space: Arc<CosetSpace>, field: F, allow_defining_char: bool) -> Result<PrincipalSeries<F>, ModuleError> {
        let p = space.group().field().characteristic() as u64;
        if field.characteristic() == p && !allow_defining_char {
            return Err(ModuleError::DefiningCharacteristic(p));
        }
        Ok(PrincipalSeries { space, field })
    }

    pub fn space(&self) -> &Arc<CosetSpace> {
        &self.space
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn basis_vector(&self, i: usize) -> ModuleVector<F::Elem> {
        let mut v = ModuleVector::zero();
        v.entries.insert(i, self.field.one());
        v
    }

    pub fn from_terms(&self, terms: &[(usize, i64)]) -> ModuleVector<F::Elem> {
        let mut v = ModuleVector::zero();
        for &(i, c) in terms {
            let c = self.field.from_i64(c);
            self.add_term(&mut v, i, &c);
        }
        v
    }

    fn add_term(&self, v: &mut ModuleVector<F::Elem>, i: usize, c: &F::Elem) {
        let k = &self.field;
        let new = match v.entries.get(&i) {
            Some(old) => k.add(old, c),
            None => c.clone(),
        };
        if k.is_zero(&new) {
            v.entries.remove(&i);
        } else {
            v.entries.insert(i, new);
        }
    }

    pub fn add(&self, a: &ModuleVector<F::Elem>, b: &ModuleVector<F::Elem>) -> ModuleVector<F::Elem> {
        let mut out = a.clone();
        for (&i, c) in &b.entries {
            self.add_term(&mut out, i, c);
        }
        out
    }

    pub fn sub(&self, a: &ModuleVector<F::Elem>, b: &ModuleVector<F::Elem>) -> ModuleVector<F::Elem> {
        let mut out = a.clone();
        for (&i, c) in &b.entries {
            self.add_term(&mut out, i, &self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem, a: &ModuleVector<F::Elem>) -> ModuleVector<F::Elem> {
        if self.field.is_zero(c) {
            return ModuleVector::zero();
        }
        ModuleVector { entries: a.entries.iter().map(|(&i, x)| (i, self.field.mul(c, x))).collect() }
    }

    pub fn act_perm(&self, perm: &[usize], v: &ModuleVector<F::Elem>) -> ModuleVector<F::Elem> {
        ModuleVector { entries: v.entries.iter().map(|(&i, c)| (perm[i], c.clone())).collect() }
    }

    /// `g v` for a group element `g`.
    pub fn act(&self, g: &GroupElement, v: &ModuleVector<F::Elem>) -> Result<ModuleVector<F::Elem>, ModuleError> {
        let mut out = ModuleVector::zero();
        for (&i, c) in &v.entries {
            let j = self.space.lookup(&g.mul(self.space.rep(i)))?;
            out.entries.insert(j, c.clone());
        }
        Ok(out)
    }

    pub fn to_dense(&self, v: &ModuleVector<F::Elem>) -> Vec<F::Elem> {
        to_dense(&self.field, v, self.dim())
    }

    pub fn from_dense(&self, v: &[F::Elem]) -> ModuleVector<F::Elem> {
        ModuleVector {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !self.field.is_zero(c))
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// `eta_J = sum_{z in W_J} (-1)^{l(z)} n_z B`.
    pub fn eta(&self, j: SimpleSubset) -> ModuleVector<F::Elem> {
        let g = self.space.group();
        let mut v = ModuleVector::zero();
        for (idx, z) in g.weyl_elements().iter().enumerate() {
            if z.in_parabolic(j) {
                let sign = if z.length() % 2 == 0 { 1 } else { -1 };
                self.add_term(&mut v, self.space.weyl_coset(idx), &self.field.from_i64(sign));
            }
        }
        v
    }

    /// Smallest generator-stable subspace containing the seeds.
    pub fn spin(&self, seeds: &[ModuleVector<F::Elem>], description: &str) -> Submodule<F> {
        let basis =
            spin_perms(&self.field, self.dim(), self.space.generator_perms(), seeds.iter().map(|s| self.to_dense(s)));
        Submodule { basis, description: String::from(description) }
    }

    /// Span of the given vectors (not closed under the group).
    pub fn span(&self, vectors: &[ModuleVector<F::Elem>], description: &str) -> Submodule<F> {
        let mut basis = Echelon::new(self.field.clone(), self.dim());
        for v in vectors {
            basis.insert(&self.to_dense(v));
        }
        Submodule { basis, description: String::from(description) }
    }

    /// Whether the subspace is closed under every generator.
    pub fn is_stable(&self, sub: &Submodule<F>) -> bool {
        let k = &self.field;
        let n = self.dim();
        sub.basis.rows().iter().all(|row| {
            self.space.generator_perms().iter().all(|perm| {
                let mut v = vec![k.zero(); n];
                for (i, c) in row {
                    v[perm[*i]] = c.clone();
                }
                sub.basis.contains(&v)
            })
        })
    }

    /// `M_J`, the submodule generated by `eta_J`.
    pub fn mtr_j(&self, j: SimpleSubset) -> Submodule<F> {
        self.spin(&[self.eta(j)], &format!("M_{j:?}"))
    }

    pub fn whole(&self) -> Submodule<F> {
        let mut basis = Echelon::new(self.field.clone(), self.dim());
        for i in 0..self.dim() {
            let mut v = vec![self.field.zero(); self.dim()];
            v[i] = self.field.one();
            basis.insert_reduced(v);
        }
        Submodule { basis, description: String::from("K[G/B]") }
    }

    pub fn zero_submodule(&self) -> Submodule<F> {
        Submodule { basis: Echelon::new(self.field.clone(), self.dim()), description: String::from("0") }
    }

    /// `M_J` for every `J`.
    pub fn lattice(&self) -> SubmoduleLattice<F> {
        let rank = self.space.group().system().rank();
        let subs = SimpleSubset::all_subsets(rank).map(|j| (j, self.mtr_j(j))).collect();
        SubmoduleLattice { rank, subs, zero: self.zero_submodule() }
    }

    /// Matrices of the generators on a submodule, in the basis of its echelon rows
    /// (row `k` of each matrix holds the coordinates of `g b_k`).
    pub fn restrict(&self, sub: &Submodule<F>) -> MatrixModule<F> {
        self.subquotient(sub, &self.zero_submodule())
    }

    /// Generator matrices on `num / den` (with `den` inside `num`), using the rows of `num`
    /// reduced modulo `den` as a complement basis.
    pub fn subquotient(&self, num: &Submodule<F>, den: &Submodule<F>) -> MatrixModule<F> {
        let k = &self.field;
        let n = self.dim();
        let mut comp = Echelon::new(k.clone(), n);
        for r in 0..num.dim() {
            let mut v = num.basis.row_dense(r);
            den.basis.reduce(&mut v);
            comp.insert(&v);
        }
        let d = comp.rank();
        let gens = self
            .space
            .generator_perms()
            .iter()
            .map(|perm| {
                (0..d)
                    .map(|r| {
                        let mut v = vec![k.zero(); n];
                        for (i, c) in &comp.rows()[r] {
                            v[perm[*i]] = c.clone();
                        }
                        den.basis.reduce(&mut v);
                        comp.reduce(&mut v)
                    })
                    .collect::<Matrix<F::Elem>>()
            })
            .collect();
        MatrixModule { field: k.clone(), dim: d, gens }
    }

    /// Trace of `g` on a submodule.
    pub fn trace_on(&self, perm: &[usize], sub: &Submodule<F>) -> F::Elem {
        let k = &self.field;
        let n = self.dim();
        let mut tr = k.zero();
        for (r, row) in sub.basis.rows().iter().enumerate() {
            let mut v = vec![k.zero(); n];
            for (i, c) in row {
                v[perm[*i]] = c.clone();
            }
            let coords = sub.basis.reduce(&mut v);
            tr = k.add(&tr, &coords[r]);
        }
        tr
    }
}

/// Spin dense seeds under permutation generators.
pub fn spin_perms<F: CoeffField>(
    k: &F,
    dim: usize,
    perms: &[Vec<usize>],
    seeds: impl IntoIterator<Item = Vec<F::Elem>>,
) -> Echelon<F> {
    let mut ech = Echelon::new(k.clone(), dim);
    for s in seeds {
        ech.insert(&s);
    }
    let mut next = 0;
    while next < ech.rank() {
        let row: SparseVec<F::Elem> = ech.rows()[next].clone();
        for perm in perms {
            if ech.rank() == dim {
                return ech;
            }
            let mut v = vec![k.zero(); dim];
            for (i, c) in &row {
                v[perm[*i]] = c.clone();
            }
            ech.insert(&v);
        }
        next += 1;
    }
    ech
}

/// The lattice of submodules `M_J`.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice<F: CoeffField> {
    rank: usize,
    subs: BTreeMap<SimpleSubset, Submodule<F>>,
    zero: Submodule<F>,
}

impl<F: CoeffField> SubmoduleLattice<F> {
    pub fn get(&self, j: SimpleSubset) -> &Submodule<F> {
        &self.subs[&j]
    }

    pub fn dims(&self) -> BTreeMap<SimpleSubset, usize> {
        self.subs.iter().map(|(&j, s)| (j, s.dim())).collect()
    }

    /// `M'_J = sum_{K > J} M_K`; by monotonicity, the sum over `J + {s}`.
    pub fn denominator(&self, j: SimpleSubset) -> Submodule<F> {
        let mut out = self.zero.clone();
        for s in (0..self.rank).filter(|&s| !j.contains(s)) {
            out = out.sum(self.get(j.union(SimpleSubset::single(s))));
        }
        out.description = format!("M'_{j:?}");
        out
    }

    /// `dim E_J = dim M_J - dim M'_J`.
    pub fn e_j_dim(&self, j: SimpleSubset) -> usize {
        self.get(j).dim() - self.denominator(j).dim()
    }
}

/// An abstract module given by generator matrices acting on row vectors from the right.
#[derive(Clone, Debug)]
pub struct MatrixModule<F: CoeffField> {
    pub field: F,
    pub dim: usize,
    pub gens: Vec<Matrix<F::Elem>>,
}

impl<F: CoeffField> MatrixModule<F> {
    /// `v M_g` for every generator, closed up.
    pub fn spin(&self, seeds: &[Vec<F::Elem>]) -> Echelon<F> {
        self.spin_with(seeds, false)
    }

    /// Spin column vectors under `w -> M_g w` (the dual module).
    pub fn spin_dual(&self, seeds: &[Vec<F::Elem>]) -> Echelon<F> {
        self.spin_with(seeds, true)
    }

    fn spin_with(&self, seeds: &[Vec<F::Elem>], dual: bool) -> Echelon<F> {
        let k = &self.field;
        let mut ech = Echelon::new(k.clone(), self.dim);
        for s in seeds {
            ech.insert(s);
        }
        let mut next = 0;
        while next < ech.rank() && ech.rank() < self.dim {
            let row = densify(k, &ech.rows()[next], self.dim);
            for m in &self.gens {
                let v = if dual { mat_vec(k, m, &row) } else { crate::linalg::vec_mat(k, &row, m) };
                ech.insert(&v);
            }
            next += 1;
        }
        ech
    }

    /// Module structure on an invariant subspace, in the basis of its echelon rows.
    pub fn submodule(&self, sub: &Echelon<F>) -> MatrixModule<F> {
        let k = &self.field;
        let gens = self
            .gens
            .iter()
            .map(|m| {
                (0..sub.rank())
                    .map(|r| {
                        let mut v = crate::linalg::vec_mat(k, &sub.row_dense(r), m);
                        sub.reduce(&mut v)
                    })
                    .collect()
            })
            .collect();
        MatrixModule { field: k.clone(), dim: sub.rank(), gens }
    }

    /// Module structure on the quotient by an invariant subspace.
    pub fn quotient(&self, sub: &Echelon<F>) -> MatrixModule<F> {
        let k = &self.field;
        let cols = sub.non_pivot_columns();
        let gens = self
            .gens
            .iter()
            .map(|m| {
                cols.iter()
                    .map(|&c| {
                        let mut v = m[c].clone();
                        sub.reduce(&mut v);
                        cols.iter().map(|&j| v[j].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        MatrixModule { field: k.clone(), dim: cols.len(), gens }
    }
}

fn mat_vec<F: CoeffField>(k: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(
                k.zero(),
                |acc, (a, b)| if k.is_zero(a) || k.is_zero(b) { acc } else { k.add(&acc, &k.mul(a, b)) },
            )
        })
        .collect()
}
