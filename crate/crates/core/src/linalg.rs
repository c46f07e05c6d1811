//! Exact linear algebra over `Q` and prime fields `F_l`.
//!
//! Scalars are manipulated through a field context ([`CoeffField`]) so that the same
//! echelon, spinning and characteristic polynomial code runs over both.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Arithmetic context for a coefficient field.
pub trait CoeffField: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    /// 0 for `Q`.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;
    /// `a - b*c`
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
    fn name(&self) -> String;
}

/// A rational number: machine-word numerator and denominator when they fit,
/// arbitrary precision otherwise. Always normalized (`den > 0`, `gcd = 1`).
#[derive(Clone, Debug)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn from_i64(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n == 0,
            Rational::Big(r) => r.is_zero(),
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Rational::Small(n, 1) => Some(BigInt::from(*n)),
            Rational::Small(..) => None,
            Rational::Big(r) => r.is_integer().then(|| r.to_integer()),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rational::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Rational::from_i128(a * d + c * b, b * d);
        }
        Rational::from_big(self.to_big() + other.to_big())
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Rational::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rational::Small(p, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Rational::from_i128(a * c, b * d);
        }
        Rational::from_big(self.to_big() * other.to_big())
    }

    pub fn inv(&self) -> Rational {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(r) => Rational::from_big(r.recip()),
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let g = a.unsigned_abs().gcd(&b.unsigned_abs());
    if g == 0 {
        1
    } else {
        g as i128
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Rational) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        self.to_big().cmp(&other.to_big())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffField for Rationals {
    type Elem = Rational;
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> Rational {
        Rational::Small(0, 1)
    }
    fn one(&self) -> Rational {
        Rational::Small(1, 1)
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_i64(n)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.inv()
    }
    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        String::from("Q")
    }
}

/// The prime field `F_l`, elements as residues `0..l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    l: u64,
}

impl PrimeField {
    /// `None` unless `l` is a prime below `2^32`.
    pub fn new(l: u64) -> Option<PrimeField> {
        (l < (1 << 32) && crate::gf::is_prime(l)).then_some(PrimeField { l })
    }

    pub fn modulus(&self) -> u64 {
        self.l
    }
}

impl CoeffField for PrimeField {
    type Elem = u64;
    fn characteristic(&self) -> u64 {
        self.l
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.l as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.l
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.l - b) % self.l
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.l
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.l - a) % self.l
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        let (mut base, mut e, mut acc) = (*a, self.l - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.l;
            }
            base = base * base % self.l;
            e >>= 1;
        }
        acc
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        alloc::format!("F_{}", self.l)
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Dense to sparse.
pub fn sparsify<F: CoeffField>(k: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter().enumerate().filter(|(_, x)| !k.is_zero(x)).map(|(i, x)| (i, x.clone())).collect()
}

pub fn densify<F: CoeffField>(k: &F, v: &SparseVec<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![k.zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A semi-echelon basis of a subspace of `K^dim`.
///
/// Rows are stored sparse with leading coefficient 1 at their pivot column. Every row is zero
/// at the pivots of all earlier rows, so reducing a vector against the rows in insertion order
/// clears every pivot, and the multipliers are the coordinates of its projection.
#[derive(Clone, Debug)]
pub struct Echelon<F: CoeffField> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: CoeffField> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Echelon<F> {
        Echelon { field, dim, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce a dense vector in place; returns the multipliers (coordinates of the removed part).
    pub fn reduce(&self, v: &mut [F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let mut coords = vec![k.zero(); self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            let c = &v[self.pivots[r]];
            if k.is_zero(c) {
                continue;
            }
            let c = c.clone();
            for (i, x) in row {
                v[*i] = k.sub_mul(&v[*i], &c, x);
            }
            coords[r] = c;
        }
        coords
    }

    /// Insert a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    /// Insert a vector already reduced against this basis.
    pub fn insert_reduced(&mut self, mut v: Vec<F::Elem>) -> bool {
        let k = self.field.clone();
        let Some(p) = v.iter().position(|x| !k.is_zero(x)) else {
            return false;
        };
        let inv = k.inv(&v[p]);
        for x in v.iter_mut().skip(p) {
            if !k.is_zero(x) {
                *x = k.mul(x, &inv);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(sparsify(&k, &v));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_sparse(&self, v: &SparseVec<F::Elem>) -> bool {
        self.contains(&densify(&self.field, v, self.dim))
    }

    /// Coordinates with respect to the stored rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let mut v = v.to_vec();
        let c = self.reduce(&mut v);
        v.iter().all(|x| self.field.is_zero(x)).then_some(c)
    }

    /// Whether every row of `other` lies in this span.
    pub fn contains_space(&self, other: &Echelon<F>) -> bool {
        other.rows.iter().all(|r| self.contains_sparse(r))
    }

    pub fn same_space(&self, other: &Echelon<F>) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }

    /// Span of the union.
    pub fn sum(&self, other: &Echelon<F>) -> Echelon<F> {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(&densify(&self.field, r, self.dim));
        }
        out
    }

    pub fn row_dense(&self, r: usize) -> Vec<F::Elem> {
        densify(&self.field, &self.rows[r], self.dim)
    }

    /// Columns that are not pivots, in increasing order.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_row[c].is_none()).collect()
    }
}

/// Rank of a list of dense vectors.
pub fn rank<F: CoeffField>(k: &F, vectors: &[Vec<F::Elem>], dim: usize) -> usize {
    let mut e = Echelon::new(k.clone(), dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Dense square or rectangular matrix, row major.
pub type Matrix<E> = Vec<Vec<E>>;

pub fn identity<F: CoeffField>(k: &F, n: usize) -> Matrix<F::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect()).collect()
}

pub fn mat_mul<F: CoeffField>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![k.zero(); m];
            for (t, x) in row.iter().enumerate() {
                if k.is_zero(x) {
                    continue;
                }
                for (j, y) in b[t].iter().enumerate() {
                    if !k.is_zero(y) {
                        out[j] = k.add(&out[j], &k.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn transpose<E: Clone>(a: &Matrix<E>) -> Matrix<E> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_add<F: CoeffField>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| k.add(x, y)).collect()).collect()
}

pub fn mat_scale<F: CoeffField>(k: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.iter().map(|r| r.iter().map(|x| k.mul(c, x)).collect()).collect()
}

/// Row vector times matrix: `v A`.
pub fn vec_mat<F: CoeffField>(k: &F, v: &[F::Elem], a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let m = a.first().map_or(0, |r| r.len());
    let mut out = vec![k.zero(); m];
    for (t, x) in v.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in a[t].iter().enumerate() {
            if !k.is_zero(y) {
                out[j] = k.add(&out[j], &k.mul(x, y));
            }
        }
    }
    out
}

/// Basis of the left null space `{v : v A = 0}`.
pub fn left_nullspace<F: CoeffField>(k: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    nullspace(k, &transpose(a))
}

/// Basis of the right null space `{x : A x = 0}` (columns of `A` indexed by `x`).
pub fn nullspace<F: CoeffField>(k: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let n = a.first().map_or(0, |r| r.len());
    // reduced row echelon form
    let mut m: Matrix<F::Elem> = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !k.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = k.inv(&m[row][col]);
        for x in m[row].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for r in 0..m.len() {
            if r != row && !k.is_zero(&m[r][col]) {
                let c = m[r][col].clone();
                for j in 0..n {
                    let sub = m[row][j].clone();
                    m[r][j] = k.sub_mul(&m[r][j], &c, &sub);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); n];
            v[f] = k.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&m[r][f]);
            }
            v
        })
        .collect()
}

/// Solve `x A = b` for a row vector `x`, if solvable.
pub fn solve_left<F: CoeffField>(k: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    // augment transpose: A^T x^T = b^T
    let at = transpose(a);
    let nvars = a.len();
    let aug: Matrix<F::Elem> = at
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(k.neg(bi));
            r
        })
        .collect();
    // find a null vector of the augmented system with last coordinate 1
    let ns = nullspace(k, &aug);
    let v = ns.into_iter().find(|v| !k.is_zero(&v[nvars]))?;
    let inv = k.inv(&v[nvars]);
    Some(v[..nvars].iter().map(|x| k.mul(x, &inv)).collect())
}

/// Inverse of a square matrix, if invertible.
pub fn inverse<F: CoeffField>(k: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.len();
    let mut m: Matrix<F::Elem> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !k.is_zero(&m[r][col]))?;
        m.swap(col, p);
        let inv = k.inv(&m[col][col]);
        for x in m[col].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !k.is_zero(&m[r][col]) {
                let c = m[r][col].clone();
                for j in 0..2 * n {
                    let sub = m[col][j].clone();
                    m[r][j] = k.sub_mul(&m[r][j], &c, &sub);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial `det(xI - A)`, coefficients low to high, via reduction to
/// upper Hessenberg form.
pub fn charpoly<F: CoeffField>(k: &F, a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let n = a.len();
    let mut h = a.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(p) = (col + 1..n).find(|&r| !k.is_zero(&h[r][col])) else {
            continue;
        };
        if p != col + 1 {
            h.swap(p, col + 1);
            for row in h.iter_mut() {
                row.swap(p, col + 1);
            }
        }
        let inv = k.inv(&h[col + 1][col]);
        for r in col + 2..n {
            if k.is_zero(&h[r][col]) {
                continue;
            }
            let f = k.mul(&h[r][col], &inv);
            // row_r -= f row_{col+1}; then col_{col+1} += f col_r
            for j in 0..n {
                let sub = h[col + 1][j].clone();
                h[r][j] = k.sub_mul(&h[r][j], &f, &sub);
            }
            for row in h.iter_mut() {
                let add = k.mul(&f, &row[r]);
                row[col + 1] = k.add(&row[col + 1], &add);
            }
        }
    }
    // p_0 = 1, p_{m}(x) = (x - h_{m-1,m-1}) p_{m-1} - sum_i h_{i,m-1} prod_{j=i+1}^{m-1} h_{j,j-1} p_i
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![k.one()]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![k.zero(); m + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = k.add(&next[i + 1], c);
            next[i] = k.sub_mul(&next[i], &h[m - 1][m - 1], c);
        }
        let mut prod = k.one();
        for i in (0..m - 1).rev() {
            prod = k.mul(&prod, &h[i + 1][i]);
            if k.is_zero(&prod) {
                break;
            }
            let coeff = k.mul(&h[i][m - 1], &prod);
            if k.is_zero(&coeff) {
                continue;
            }
            for (t, c) in polys[i].iter().enumerate() {
                next[t] = k.sub_mul(&next[t], &coeff, c);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Evaluate a polynomial (coefficients low to high).
pub fn poly_eval<F: CoeffField>(k: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn rational_arithmetic() {
        let a = q(1).mul(&q(3).inv());
        let b = q(1).mul(&q(6).inv());
        assert_eq!(a.add(&b), q(1).mul(&q(2).inv()));
        assert_eq!(a.sub(&a), q(0));
        let big = q(i64::MAX).mul(&q(i64::MAX));
        assert!(matches!(big, Rational::Big(_)));
        assert_eq!(big.mul(&q(i64::MAX).inv()), q(i64::MAX));
        assert_eq!(q(-4).mul(&q(6).inv()).to_string(), "-2/3");
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert!(PrimeField::new(8).is_none());
    }

    #[test]
    fn echelon_rank_and_coordinates() {
        let k = Rationals;
        let mut e = Echelon::new(k, 3);
        assert!(e.insert(&[q(1), q(2), q(3)]));
        assert!(e.insert(&[q(0), q(1), q(1)]));
        assert!(!e.insert(&[q(2), q(5), q(7)]));
        assert_eq!(e.rank(), 2);
        let c = e.coordinates(&[q(2), q(5), q(7)]).unwrap();
        // reconstruct
        let mut v = vec![q(0); 3];
        for (r, ci) in c.iter().enumerate() {
            for j in 0..3 {
                v[j] = v[j].add(&ci.mul(&e.row_dense(r)[j]));
            }
        }
        assert_eq!(v, vec![q(2), q(5), q(7)]);
        assert!(e.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn charpoly_small() {
        let k = Rationals;
        // [[2,1],[1,2]] -> x^2 - 4x + 3
        let a = vec![vec![q(2), q(1)], vec![q(1), q(2)]];
        assert_eq!(charpoly(&k, &a), vec![q(3), q(-4), q(1)]);
        // companion matrix of x^3 - 2x + 5 (needs pivoting)
        let c = vec![vec![q(0), q(0), q(-5)], vec![q(1), q(0), q(2)], vec![q(0), q(1), q(0)]];
        assert_eq!(charpoly(&k, &c), vec![q(5), q(-2), q(0), q(1)]);
        let z = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(0)], vec![q(1), q(0), q(0)]];
        assert_eq!(charpoly(&k, &z), vec![q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn inverse_and_solve() {
        let k = PrimeField::new(5).unwrap();
        let a = vec![vec![1, 2], vec![3, 4]];
        let inv = inverse(&k, &a).unwrap();
        assert_eq!(mat_mul(&k, &a, &inv), identity(&k, 2));
        let x = solve_left(&k, &a, &[1, 1]).unwrap();
        assert_eq!(vec_mat(&k, &x, &a), vec![1, 1]);
        assert!(inverse(&k, &vec![vec![1, 2], vec![2, 4]]).is_none());
        let ns = nullspace(&k, &vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(ns.len(), 1);
    }
}
