//! Finite fields `F_{p^k}` with canonical, mutually compatible subfield embeddings.
//!
//! Elements are stored as integers `0..q` whose base-`p` digits are the
//! coefficients of the polynomial representative modulo the field's modulus
//! (least significant digit = constant term). In particular the prime subfield
//! is exactly the values `0..p`.
//!
//! Every field carries a primitive element chosen so that, for every subfield
//! `F_{p^a}`, the power `g_k^((p^k-1)/(p^a-1))` has the same minimal polynomial
//! as `g_a`. Embeddings send `g_a` to that power, which makes the embeddings of
//! a tower commute.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// Largest field order accepted by [`Field::new`].
pub const DEFAULT_ORDER_BOUND: u64 = 1 << 20;

// Fields up to this order get exp/log tables; bigger ones multiply polynomials.
const TABLE_BOUND: u32 = 1 << 16;
// Fields up to this order get an addition table.
const ADD_TABLE_BOUND: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u32),
    ZeroDegree,
    OrderTooLarge { p: u32, k: u32, bound: u64 },
    NotASubfield { from: u32, to: u32 },
    ForeignElement,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ZeroDegree => write!(f, "extension degree must be positive"),
            FieldError::OrderTooLarge { p, k, bound } => {
                write!(f, "field order {p}^{k} exceeds the bound {bound}")
            }
            FieldError::NotASubfield { from, to } => {
                write!(f, "F_p^{from} is not a subfield of F_p^{to}")
            }
            FieldError::ForeignElement => write!(f, "element belongs to a different field"),
        }
    }
}

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    /// Low coefficients `c_0..c_{k-1}` of the monic modulus.
    modulus: Vec<u32>,
    generator: u32,
    /// Minimal polynomial of `generator` over `F_p`, monic, low to high.
    generator_minpoly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
}

/// A finite field `F_{p^k}`. Cloning is cheap; fields are interned per `(p, k)`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

static FIELDS: spin::Mutex<BTreeMap<(u32, u32), Field>> = spin::Mutex::new(BTreeMap::new());

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(k: u32) -> Vec<u32> {
    (1..=k).filter(|d| k.is_multiple_of(*d)).collect()
}

// --- dense polynomial helpers over F_p (coefficients low to high) ---

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db] as u64, p as u64 - 2, p as u64) as u32;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor as u64 * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `deg` whose low coefficients are the digits of `index`.
fn monic_from_index(index: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut m = digits(index, p, deg);
    m.push(1);
    m
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = (modulus.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = p.pow(d);
        for idx in 0..count {
            let cand = monic_from_index(idx, p, d);
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.pow(k);
    (0..count)
        .map(|idx| monic_from_index(idx, p, k))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldData {
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p as u64, self.k as usize);
        let da = digits(a, self.p, self.k);
        let db = digits(b, self.p, self.k);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce with x^k = -sum c_i x^i
        for top in (k..2 * k).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[top - k + i] = (prod[top - k + i] + p - sub) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        from_digits(&low, self.p)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.log.is_empty() {
            return self.poly_mul(a, b);
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.log.is_empty() {
            let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
            return self.exp[l as usize];
        }
        let (mut base, mut e, mut acc) = (a, e, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn is_primitive(&self, g: u32, factors: &[u64]) -> bool {
        if g == 0 {
            return false;
        }
        let order = self.q as u64 - 1;
        factors.iter().all(|&r| self.pow(g, order / r) != 1)
    }

    /// Evaluate a polynomial with `F_p` coefficients at `x`.
    fn eval_prime_poly(&self, poly: &[u32], x: u32) -> u32 {
        poly.iter().rev().fold(0, |acc, &c| self.add_digits(self.mul(acc, x), c))
    }

    /// Minimal polynomial of `x` over `F_p` via its Frobenius orbit.
    fn minpoly(&self, x: u32) -> Vec<u32> {
        let mut orbit = vec![x];
        let mut y = self.pow(x, self.p as u64);
        while y != x {
            orbit.push(y);
            y = self.pow(y, self.p as u64);
        }
        // product of (X - r) with coefficients in this field
        let mut poly = vec![1u32];
        for r in orbit {
            let neg_r = self.neg_digits(r);
            let mut next = vec![0u32; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add_digits(next[i + 1], c);
                next[i] = self.add_digits(next[i], self.mul(c, neg_r));
            }
            poly = next;
        }
        debug_assert!(poly.iter().all(|&c| c < self.p));
        poly
    }
}

impl Field {
    /// The field `F_{p^k}` under the default order bound.
    pub fn new(p: u32, k: u32) -> Result<Field, FieldError> {
        Field::with_bound(p, k, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(p: u32, k: u32, bound: u64) -> Result<Field, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k);
        match order {
            Some(o) if o <= bound && o <= u32::MAX as u64 => {}
            _ => return Err(FieldError::OrderTooLarge { p, k, bound }),
        }
        if let Some(f) = FIELDS.lock().get(&(p, k)) {
            return Ok(f.clone());
        }
        // Proper subfields first; they are all far below the bound.
        let subfields: Vec<Field> = divisors(k)
            .into_iter()
            .filter(|&d| d < k && k.is_multiple_of(d) && is_prime((k / d) as u64))
            .map(|d| Field::with_bound(p, d, bound))
            .collect::<Result<_, _>>()?;
        let built = Field(Arc::new(build_field(p, k, &subfields)));
        let mut table = FIELDS.lock();
        Ok(table.entry((p, k)).or_insert(built).clone())
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, coefficients low to high.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.0.modulus.clone();
        m.push(1);
        m
    }

    pub fn generator(&self) -> FieldElement {
        self.element(self.0.generator)
    }

    pub fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element from its integer encoding; panics when out of range.
    pub fn element(&self, value: u32) -> FieldElement {
        assert!(value < self.0.q, "value {value} outside F_{}", self.0.q);
        FieldElement { field: self.clone(), value }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.element(self.raw_from_int(n))
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        assert_eq!(coords.len(), self.0.k as usize);
        self.element(from_digits(&coords.iter().map(|c| c % self.0.p).collect::<Vec<_>>(), self.0.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| self.element(v))
    }

    /// The embedded copy of `F_{p^a}`, as raw values, in increasing order.
    pub fn subfield_values(&self, a: u32) -> Result<Vec<u32>, FieldError> {
        if a == 0 || !self.0.k.is_multiple_of(a) {
            return Err(FieldError::NotASubfield { from: a, to: self.0.k });
        }
        let qa = (self.0.p as u64).pow(a);
        let mut out: Vec<u32> = (0..self.0.q).filter(|&x| self.raw_pow(x, qa) == x).collect();
        out.sort_unstable();
        Ok(out)
    }

    // --- raw arithmetic on integer encodings, used by matrix code ---

    #[inline]
    pub fn raw_add(&self, a: u32, b: u32) -> u32 {
        let d = &self.0;
        if !d.add_table.is_empty() {
            return d.add_table[(a * d.q + b) as usize];
        }
        d.add_digits(a, b)
    }

    #[inline]
    pub fn raw_neg(&self, a: u32) -> u32 {
        if self.0.p == 2 {
            return a;
        }
        self.0.neg_digits(a)
    }

    #[inline]
    pub fn raw_sub(&self, a: u32, b: u32) -> u32 {
        self.raw_add(a, self.raw_neg(b))
    }

    #[inline]
    pub fn raw_mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul(a, b)
    }

    pub fn raw_pow(&self, a: u32, e: u64) -> u32 {
        self.0.pow(a, e)
    }

    pub fn raw_inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.0.pow(a, self.0.q as u64 - 2))
        }
    }

    pub fn raw_from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Discrete logarithm to the base of [`Field::generator`].
    pub fn raw_log(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if !self.0.log.is_empty() {
            return Some(self.0.log[a as usize] as u64);
        }
        let mut x = 1u32;
        for e in 0..(self.0.q as u64 - 1) {
            if x == a {
                return Some(e);
            }
            x = self.0.mul(x, self.0.generator);
        }
        None
    }

    /// Integer representative of a prime-subfield value in `(-p/2, p/2]`.
    pub fn raw_to_symmetric_int(&self, a: u32) -> Option<i64> {
        if a >= self.0.p {
            return None;
        }
        let p = self.0.p as i64;
        let a = a as i64;
        Some(if a > p / 2 { a - p } else { a })
    }

    /// Image of a raw value of `self` inside `target` (`self` must be a subfield).
    pub fn raw_embed(&self, a: u32, target: &Field) -> Result<u32, FieldError> {
        if self.0.p != target.0.p || !target.0.k.is_multiple_of(self.0.k) {
            return Err(FieldError::NotASubfield { from: self.0.k, to: target.0.k });
        }
        if self.same_field(target) || a == 0 {
            return Ok(a);
        }
        let e = self.raw_log(a).expect("nonzero element has a logarithm");
        let n = (target.0.q as u64 - 1) / (self.0.q as u64 - 1);
        Ok(target.raw_pow(target.0.generator, e * n))
    }
}

fn build_field(p: u32, k: u32, maximal_subfields: &[Field]) -> FieldData {
    let q = p.pow(k);
    let mut modulus = smallest_irreducible(p, k);
    modulus.pop();
    let mut data = FieldData {
        p,
        k,
        q,
        modulus,
        generator: 0,
        generator_minpoly: Vec::new(),
        exp: Vec::new(),
        log: Vec::new(),
        add_table: Vec::new(),
    };
    let factors = prime_factors(q as u64 - 1);
    let generator = (1..q)
        .find(|&g| {
            data.is_primitive(g, &factors)
                && maximal_subfields.iter().all(|sub| {
                    let n = (q as u64 - 1) / (sub.0.q as u64 - 1);
                    let image = data.pow(g, n);
                    data.eval_prime_poly(&sub.0.generator_minpoly, image) == 0
                })
        })
        .expect("a compatible primitive element exists");
    data.generator = generator;
    data.generator_minpoly = data.minpoly(generator);
    if q <= TABLE_BOUND {
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for e in 0..q - 1 {
            exp.push(x);
            log[x as usize] = e;
            x = data.poly_mul(x, generator);
        }
        data.exp = exp;
        data.log = log;
    }
    if q <= ADD_TABLE_BOUND {
        let mut table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                table[(a * q + b) as usize] = data.add_digits(a, b);
            }
        }
        data.add_table = table;
    }
    data
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Field {}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Field) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Field) -> core::cmp::Ordering {
        (self.0.p, self.0.k).cmp(&(other.0.p, other.0.k))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

/// An element of a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// Coefficients over `F_p`, constant term first.
    pub fn coords(&self) -> Vec<u32> {
        digits(self.value, self.field.0.p, self.field.0.k)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element(self.field.raw_pow(self.value, e))
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.raw_inv(self.value).map(|v| self.field.element(v))
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.field.0.q as u64 - 1;
        for r in prime_factors(n) {
            while n.is_multiple_of(r) && self.field.raw_pow(self.value, n / r) == 1 {
                n /= r;
            }
        }
        Some(n)
    }

    /// `x^(p^a)`.
    pub fn frobenius(&self, a: u32) -> FieldElement {
        let e = (self.field.0.p as u64).pow(a % self.field.0.k);
        self.pow(e)
    }

    /// Image under the canonical embedding into `target`.
    pub fn embed(&self, target: &Field) -> Result<FieldElement, FieldError> {
        let v = self.field.raw_embed(self.value, target)?;
        Ok(target.element(v))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@F_{}", self.value, self.field.0.q)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $raw:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "operands from different fields");
                FieldElement { field: self.field.clone(), value: self.field.$raw(self.value, rhs.value) }
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, raw_add);
binop!(Sub, sub, raw_sub);
binop!(Mul, mul, raw_mul);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), value: self.field.raw_neg(self.value) }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_two() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.one() + f.one(), f.zero());
        assert_eq!(f.modulus(), vec![0, 1]);
    }

    #[test]
    fn f4_units_satisfy_golden_relation() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), vec![1, 1, 1]);
        // units other than 1 are the two roots of x^2 + x + 1
        for x in f.elements().filter(|x| !x.is_zero() && x.value() != 1) {
            assert_eq!(&x * &x, &x + &f.one());
        }
    }

    #[test]
    fn f9_unit_group_is_cyclic_of_order_eight() {
        let f = Field::new(3, 2).unwrap();
        let g = f.generator();
        let mut seen = alloc::collections::BTreeSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(x.value());
            x = &x * &g;
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(x, f.one());
    }

    #[test]
    fn interning_returns_the_same_object() {
        let a = Field::new(3, 4).unwrap();
        let b = Field::new(3, 4).unwrap();
        assert!(a.same_field(&b));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(Field::new(2, 21), Err(FieldError::OrderTooLarge { .. })));
        assert!(Field::with_bound(2, 21, 1 << 21).is_ok());
    }

    #[test]
    fn embedding_basics() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        assert_eq!(f2.one().embed(&f4).unwrap(), f4.one());
        let g = f4.generator();
        assert_eq!(g.embed(&f4).unwrap(), g);
        assert_eq!(g.embed(&f16).unwrap().multiplicative_order(), Some(3));
        assert!(matches!(f4.one().embed(&Field::new(2, 3).unwrap()), Err(FieldError::NotASubfield { .. })));
    }

    #[test]
    fn frobenius_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.one().frobenius(1), f2.one());
        let f4 = Field::new(2, 2).unwrap();
        let g = f4.generator();
        assert_eq!(g.frobenius(1), &g * &g);
        assert_ne!(g.frobenius(1), g);
        let f27 = Field::new(3, 3).unwrap();
        assert!(f27.elements().all(|x| x.frobenius(3) == x));
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::new(2, 18).unwrap();
        let g = f.generator();
        assert_eq!(g.multiplicative_order(), Some((1 << 18) - 1));
        let h = g.pow(12345);
        assert_eq!(&h * &h.inv().unwrap(), f.one());
    }
}
