//! Weyl group elements, Bruhat order, parabolic subgroups and coset representatives.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::rootsys::{CartanType, Root, RootError, RootSystem, SignedIndex};

/// A subset of the simple reflections, as a bit mask over their indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SimpleSubset(pub u32);

impl SimpleSubset {
    pub const EMPTY: SimpleSubset = SimpleSubset(0);

    pub fn all(rank: usize) -> SimpleSubset {
        SimpleSubset((1u32 << rank) - 1)
    }

    pub fn from_indices(indices: &[usize]) -> SimpleSubset {
        SimpleSubset(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn single(i: usize) -> SimpleSubset {
        SimpleSubset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SimpleSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SimpleSubset) -> SimpleSubset {
        SimpleSubset(self.0 | other.0)
    }

    pub fn complement(self, rank: usize) -> SimpleSubset {
        SimpleSubset(!self.0 & SimpleSubset::all(rank).0)
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// Every subset of `{0..rank}`, in increasing mask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = SimpleSubset> {
        (0..1u32 << rank).map(SimpleSubset)
    }
}

impl fmt::Debug for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// A Weyl group element, stored as its signed permutation of the positive roots together with
/// its lexicographically least reduced word.
#[derive(Clone)]
pub struct WeylElement {
    sys: Arc<RootSystem>,
    images: Vec<SignedIndex>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(sys: &Arc<RootSystem>) -> WeylElement {
        let images = (1..=sys.num_positive() as SignedIndex).collect();
        WeylElement { sys: sys.clone(), images, word: Vec::new() }
    }

    /// `s_{a0} s_{a1} ...`
    pub fn from_word(sys: &Arc<RootSystem>, word: &[usize]) -> Result<WeylElement, RootError> {
        sys.check_word(word)?;
        let mut images: Vec<SignedIndex> = (1..=sys.num_positive() as SignedIndex).collect();
        for &a in word.iter().rev() {
            for x in images.iter_mut() {
                *x = sys.reflect_index(a, *x);
            }
        }
        Ok(WeylElement::from_images(sys, images))
    }

    fn from_images(sys: &Arc<RootSystem>, images: Vec<SignedIndex>) -> WeylElement {
        let word = reduced_word(sys, &images);
        WeylElement { sys: sys.clone(), images, word }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Lexicographically least reduced word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Images of the positive roots as signed indices.
    pub fn images(&self) -> &[SignedIndex] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    #[inline]
    pub fn apply_index(&self, s: SignedIndex) -> SignedIndex {
        let img = self.images[(s.unsigned_abs() - 1) as usize];
        if s > 0 {
            img
        } else {
            -img
        }
    }

    pub fn apply(&self, g: &Root) -> Result<Root, RootError> {
        let s = self.sys.signed_index(g).ok_or_else(|| RootError::NotARoot(g.0.clone()))?;
        Ok(self.sys.root_of(self.apply_index(s)))
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let images = other.images.iter().map(|&s| self.apply_index(s)).collect();
        WeylElement::from_images(&self.sys, images)
    }

    pub fn inverse(&self) -> WeylElement {
        let mut images = vec![0; self.images.len()];
        for (j, &s) in self.images.iter().enumerate() {
            let k = (s.unsigned_abs() - 1) as usize;
            images[k] = if s > 0 { (j + 1) as SignedIndex } else { -((j + 1) as SignedIndex) };
        }
        WeylElement::from_images(&self.sys, images)
    }

    pub fn mul_simple_right(&self, i: usize) -> WeylElement {
        let images = (0..self.images.len())
            .map(|j| self.apply_index(self.sys.reflect_index(i, (j + 1) as SignedIndex)))
            .collect();
        WeylElement::from_images(&self.sys, images)
    }

    pub fn mul_simple_left(&self, i: usize) -> WeylElement {
        let images = self.images.iter().map(|&s| self.sys.reflect_index(i, s)).collect();
        WeylElement::from_images(&self.sys, images)
    }

    /// Right descent set `{s : ws < w}`, i.e. the simple roots `w` makes negative.
    pub fn descents(&self) -> SimpleSubset {
        let idx: Vec<usize> = (0..self.sys.rank()).filter(|&i| self.images[i] < 0).collect();
        SimpleSubset::from_indices(&idx)
    }

    pub fn left_descents(&self) -> SimpleSubset {
        self.inverse().descents()
    }

    /// Positive roots sent to negative roots.
    pub fn inversion_set(&self) -> Vec<Root> {
        let pos = self.sys.positive_roots();
        (0..pos.len()).filter(|&j| self.images[j] < 0).map(|j| pos[j].clone()).collect()
    }

    /// Whether the element lies in the parabolic subgroup `W_J`.
    pub fn in_parabolic(&self, j: SimpleSubset) -> bool {
        self.word.iter().all(|&a| j.contains(a))
    }

    /// Bruhat order via the subword property of the cached reduced word of `w`.
    pub fn bruhat_leq(&self, w: &WeylElement) -> bool {
        if self.length() > w.length() {
            return false;
        }
        let mut reachable: BTreeSet<Vec<SignedIndex>> = BTreeSet::new();
        reachable.insert(WeylElement::identity(&self.sys).images);
        for &a in &w.word {
            let next: Vec<Vec<SignedIndex>> = reachable
                .iter()
                .map(|img| {
                    (0..img.len())
                        .map(|j| {
                            let s = self.sys.reflect_index(a, (j + 1) as SignedIndex);
                            let v = img[(s.unsigned_abs() - 1) as usize];
                            if s > 0 {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            reachable.extend(next);
        }
        reachable.contains(&self.images)
    }

    /// 1-indexed letters joined by `-`, `e` for the identity.
    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }

    /// For type `A_n`: the permutation `pi` of `{1..n+1}` with `w(e_i) = e_{pi(i)}`.
    pub fn type_a_permutation(&self) -> Option<Vec<usize>> {
        match self.sys.cartan_type() {
            CartanType::A(n) => Some(type_a_word_permutation(n, &self.word)),
            _ => None,
        }
    }
}

/// `pi = s_{a0} o s_{a1} o ...` acting on letters `1..=n+1`, with `s_i` swapping `i+1, i+2`
/// for the 0-based index `i`.
pub fn type_a_word_permutation(n: usize, word: &[usize]) -> Vec<usize> {
    (1..=n + 1)
        .map(|mut x| {
            for &a in word.iter().rev() {
                if x == a + 1 {
                    x = a + 2;
                } else if x == a + 2 {
                    x = a + 1;
                }
            }
            x
        })
        .collect()
}

pub fn word_string(word: &[usize]) -> String {
    use core::fmt::Write;
    if word.is_empty() {
        return String::from("e");
    }
    let mut s = String::new();
    for (k, a) in word.iter().enumerate() {
        if k > 0 {
            s.push('-');
        }
        let _ = write!(s, "{}", a + 1);
    }
    s
}

/// Inverse of [`word_string`].
pub fn parse_word_string(s: &str) -> Option<Vec<usize>> {
    if s == "e" {
        return Some(Vec::new());
    }
    s.split('-').map(|t| t.parse::<usize>().ok().filter(|&a| a >= 1).map(|a| a - 1)).collect()
}

// Greedy smallest left descent gives the lexicographically least reduced word.
fn reduced_word(sys: &RootSystem, images: &[SignedIndex]) -> Vec<usize> {
    let mut images = images.to_vec();
    let mut word = Vec::new();
    let rank = sys.rank();
    loop {
        // i is a left descent iff w^{-1}(alpha_i) < 0 iff -alpha_i is an image
        let found = (0..rank).find(|&i| images.iter().any(|&s| s == -((i + 1) as SignedIndex)));
        match found {
            None => return word,
            Some(i) => {
                word.push(i);
                for x in images.iter_mut() {
                    *x = sys.reflect_index(i, *x);
                }
            }
        }
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &WeylElement) -> bool {
        self.images == other.images && self.sys.cartan_type() == other.sys.cartan_type()
    }
}

impl Eq for WeylElement {}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &WeylElement) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by length, then by reduced word.
impl Ord for WeylElement {
    fn cmp(&self, other: &WeylElement) -> Ordering {
        self.length().cmp(&other.length()).then_with(|| self.word.cmp(&other.word))
    }
}

impl core::hash::Hash for WeylElement {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word_string())
    }
}

/// Largest group enumerated by [`WeylGroup::elements`].
pub const MAX_ENUMERATED_ORDER: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterError {
    Root(RootError),
    TooLarge(usize),
    WrongType(CartanType),
    OutOfRange { n: usize, position: usize },
}

impl From<RootError> for CoxeterError {
    fn from(e: RootError) -> CoxeterError {
        CoxeterError::Root(e)
    }
}

impl fmt::Display for CoxeterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterError::Root(e) => write!(f, "{e}"),
            CoxeterError::TooLarge(n) => write!(f, "Weyl group of order {n} is too large to enumerate"),
            CoxeterError::WrongType(t) => write!(f, "operation not defined for type {t}"),
            CoxeterError::OutOfRange { n, position } => {
                write!(f, "position {position} is not interior in A{n}")
            }
        }
    }
}

/// The Weyl group of a root system.
#[derive(Clone)]
pub struct WeylGroup {
    sys: Arc<RootSystem>,
}

impl WeylGroup {
    pub fn new(sys: Arc<RootSystem>) -> WeylGroup {
        WeylGroup { sys }
    }

    pub fn of_type(t: CartanType) -> Result<WeylGroup, RootError> {
        Ok(WeylGroup::new(RootSystem::new(t)?))
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn order(&self) -> usize {
        match self.sys.cartan_type() {
            CartanType::A(n) => (1..=n + 1).product(),
            CartanType::B2 => 8,
            CartanType::G2 => 12,
        }
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<usize> {
        match self.sys.cartan_type() {
            CartanType::A(n) => (2..=n + 1).collect(),
            CartanType::B2 => vec![2, 4],
            CartanType::G2 => vec![2, 6],
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(&self.sys)
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        WeylElement::from_word(&self.sys, &[i]).expect("simple index in range")
    }

    pub fn element(&self, word: &[usize]) -> Result<WeylElement, RootError> {
        WeylElement::from_word(&self.sys, word)
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool, RootError> {
        Ok(self.element(word)?.length() == word.len())
    }

    pub fn longest(&self, j: SimpleSubset) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = j.indices().into_iter().find(|&i| i < self.rank() && w.images[i] > 0) {
            w = w.mul_simple_right(i);
        }
        w
    }

    /// All elements, ordered by length then reduced word.
    pub fn elements(&self) -> Result<Vec<WeylElement>, CoxeterError> {
        let order = self.order();
        if order > MAX_ENUMERATED_ORDER {
            return Err(CoxeterError::TooLarge(order));
        }
        let mut seen: BTreeMap<Vec<SignedIndex>, WeylElement> = BTreeMap::new();
        let id = self.identity();
        seen.insert(id.images.clone(), id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.rank() {
                    if w.images[i] < 0 {
                        continue;
                    }
                    let v = w.mul_simple_right(i);
                    if !seen.contains_key(&v.images) {
                        seen.insert(v.images.clone(), v.clone());
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<WeylElement> = seen.into_values().collect();
        all.sort();
        Ok(all)
    }

    pub fn parabolic_elements(&self, j: SimpleSubset) -> Result<Vec<WeylElement>, CoxeterError> {
        Ok(self.elements()?.into_iter().filter(|w| w.in_parabolic(j)).collect())
    }

    /// Minimal length representatives of the left cosets `wW_J`.
    pub fn x_set(&self, j: SimpleSubset) -> Result<Vec<WeylElement>, CoxeterError> {
        Ok(self.elements()?.into_iter().filter(|w| (w.descents().0 & j.0) == 0).collect())
    }

    /// `{x in X_J : R(x w_J) = J}`.
    pub fn y_set(&self, j: SimpleSubset) -> Result<Vec<WeylElement>, CoxeterError> {
        let wj = self.longest(j);
        Ok(self.x_set(j)?.into_iter().filter(|x| x.mul(&wj).descents() == j).collect())
    }

    /// `{w : R(w) avoids I}`.
    pub fn z_set(&self, i: SimpleSubset) -> Result<Vec<WeylElement>, CoxeterError> {
        self.x_set(i)
    }

    /// Coefficients of `sum_w q^{l(w)}`.
    pub fn poincare_polynomial(&self) -> Result<Vec<u64>, CoxeterError> {
        let mut coeffs = vec![0u64; self.sys.num_positive() + 1];
        for w in self.elements()? {
            coeffs[w.length()] += 1;
        }
        Ok(coeffs)
    }

    /// The elements of the set `Y_{{s}}` for `s = s_{i'}` in type `A_n`, generated from the
    /// block words `tau_{j_k} sigma_{i_k} s ... s tau_{j_1} sigma_{i_1}` with strictly decreasing
    /// index sequences (`i'` is 1-based, `2 <= i' <= n-1`).
    pub fn maximal_parabolic_y_set(&self, i_prime: usize) -> Result<Vec<WeylElement>, CoxeterError> {
        let n = match self.sys.cartan_type() {
            CartanType::A(n) => n,
            t => return Err(CoxeterError::WrongType(t)),
        };
        if i_prime < 2 || i_prime + 1 > n {
            return Err(CoxeterError::OutOfRange { n, position: i_prime });
        }
        let m = i_prime - 1;
        let l = n - i_prime;
        // 0-based indices: s = i'-1, r_j = i'-1-j, t_k = i'-1+k
        let s = i_prime - 1;
        let sigma = |i: usize| -> Vec<usize> { (1..=i).rev().map(|j| s - j).collect() };
        let tau = |j: usize| -> Vec<usize> { (1..=j).rev().map(|k| s + k).collect() };
        let mut out: BTreeSet<WeylElement> = BTreeSet::new();
        // choose strictly decreasing sequences i_1 > .. > i_k in [0, m] and j_1 > .. > j_k in [0, l]
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for i1 in 0..=m {
            for j1 in 0..=l {
                stack.push((vec![i1], vec![j1]));
            }
        }
        while let Some((is, js)) = stack.pop() {
            // word: blocks from k down to 1, separated by s
            let mut word = Vec::new();
            for b in (0..is.len()).rev() {
                word.extend(tau(js[b]));
                word.extend(sigma(is[b]));
                if b > 0 {
                    word.push(s);
                }
            }
            out.insert(self.element(&word)?);
            let (li, lj) = (*is.last().unwrap(), *js.last().unwrap());
            for i in 0..li {
                for j in 0..lj {
                    let mut is2 = is.clone();
                    is2.push(i);
                    let mut js2 = js.clone();
                    js2.push(j);
                    stack.push((is2, js2));
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Enumerated Weyl group with multiplication tables and the full Bruhat order.
pub struct ElementTable {
    elements: Vec<WeylElement>,
    index: BTreeMap<Vec<SignedIndex>, usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
    bruhat: Vec<Vec<u64>>,
}

impl ElementTable {
    pub fn new(group: &WeylGroup) -> Result<ElementTable, CoxeterError> {
        let elements = group.elements()?;
        let index: BTreeMap<Vec<SignedIndex>, usize> =
            elements.iter().enumerate().map(|(k, w)| (w.images.clone(), k)).collect();
        let rank = group.rank();
        let left: Vec<Vec<usize>> =
            (0..rank).map(|i| elements.iter().map(|w| index[&w.mul_simple_left(i).images]).collect()).collect();
        let right: Vec<Vec<usize>> =
            (0..rank).map(|i| elements.iter().map(|w| index[&w.mul_simple_right(i).images]).collect()).collect();
        let n = elements.len();
        let words = n.div_ceil(64);
        let mut bruhat = vec![vec![0u64; words]; n];
        // elements are sorted by length, so ws is always computed before w
        for w in 0..n {
            if w == 0 {
                bruhat[0][0] |= 1;
                continue;
            }
            let s = elements[w].descents().indices()[0];
            let ws = right[s][w];
            let mut row = vec![0u64; words];
            for y in 0..n {
                let ys = right[s][y];
                let lower = if elements[ys].length() < elements[y].length() { ys } else { y };
                if bruhat[ws][lower / 64] >> (lower % 64) & 1 == 1 {
                    row[y / 64] |= 1 << (y % 64);
                }
            }
            bruhat[w] = row;
        }
        Ok(ElementTable { elements, index, left, right, bruhat })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn get(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn index_of(&self, w: &WeylElement) -> usize {
        self.index[&w.images]
    }

    pub fn length(&self, k: usize) -> usize {
        self.elements[k].length()
    }

    /// Index of `s_i w`.
    pub fn left_mul(&self, i: usize, k: usize) -> usize {
        self.left[i][k]
    }

    /// Index of `w s_i`.
    pub fn right_mul(&self, i: usize, k: usize) -> usize {
        self.right[i][k]
    }

    pub fn bruhat_leq(&self, y: usize, w: usize) -> bool {
        self.bruhat[w][y / 64] >> (y % 64) & 1 == 1
    }

    /// Index of the product `a b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[a].word().iter().rev().fold(b, |acc, &s| self.left[s][acc])
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.elements[a].word().iter().fold(0, |acc, &s| self.left[s][acc])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(t: CartanType) -> WeylGroup {
        WeylGroup::of_type(t).unwrap()
    }

    fn words(v: &[WeylElement]) -> Vec<Vec<usize>> {
        v.iter().map(|w| w.word().to_vec()).collect()
    }

    #[test]
    fn element_basics() {
        let a2 = group(CartanType::A(2));
        assert_eq!(a2.identity().length(), 0);
        assert_eq!(a2.element(&[0, 1, 0]).unwrap(), a2.element(&[1, 0, 1]).unwrap());
        let a1 = group(CartanType::A(1));
        assert_eq!(a1.element(&[0, 0]).unwrap(), a1.identity());
        assert!(a2.element(&[2]).is_err());
        assert!(!a2.is_reduced(&[0, 0]).unwrap());
        assert!(a2.is_reduced(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn descents_and_longest() {
        let a2 = group(CartanType::A(2));
        assert_eq!(a2.element(&[0, 1]).unwrap().descents(), SimpleSubset::single(1));
        assert_eq!(a2.identity().descents(), SimpleSubset::EMPTY);
        let w0 = a2.longest(SimpleSubset::all(2));
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.descents(), SimpleSubset::all(2));
        let a3 = group(CartanType::A(3));
        assert_eq!(a3.longest(SimpleSubset::all(3)).length(), 6);
        assert_eq!(a3.longest(SimpleSubset::from_indices(&[0, 2])).length(), 2);
        assert_eq!(a3.longest(SimpleSubset::EMPTY), a3.identity());
    }

    #[test]
    fn coset_sets_in_a2() {
        let a2 = group(CartanType::A(2));
        let s = SimpleSubset::single(0);
        assert_eq!(words(&a2.x_set(s).unwrap()), vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(words(&a2.y_set(s).unwrap()), vec![vec![], vec![1]]);
        assert_eq!(words(&a2.z_set(s).unwrap()), vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(a2.x_set(SimpleSubset::all(2)).unwrap().len(), 1);
        assert_eq!(a2.x_set(SimpleSubset::EMPTY).unwrap().len(), 6);
        assert_eq!(a2.z_set(SimpleSubset::all(2)).unwrap().len(), 1);
    }

    #[test]
    fn y_sets_of_rank_two() {
        let s = SimpleSubset::single(0);
        let b2 = group(CartanType::B2);
        assert_eq!(words(&b2.y_set(s).unwrap()), vec![vec![], vec![1], vec![0, 1]]);
        let g2 = group(CartanType::G2);
        assert_eq!(words(&g2.y_set(s).unwrap()), vec![vec![], vec![1], vec![0, 1], vec![1, 0, 1], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn bruhat_examples() {
        let a2 = group(CartanType::A(2));
        let s = a2.simple(0);
        let r = a2.simple(1);
        assert!(s.bruhat_leq(&a2.element(&[1, 0]).unwrap()));
        assert!(s.bruhat_leq(&a2.element(&[0, 1]).unwrap()));
        assert!(!s.bruhat_leq(&r));
        assert!(a2.identity().bruhat_leq(&r));
        assert!(r.bruhat_leq(&r));
    }

    #[test]
    fn bruhat_table_matches_subwords() {
        for t in [CartanType::A(1), CartanType::A(2), CartanType::A(3), CartanType::B2, CartanType::G2] {
            let g = group(t);
            let table = ElementTable::new(&g).unwrap();
            for y in 0..table.len() {
                for w in 0..table.len() {
                    assert_eq!(
                        table.bruhat_leq(y, w),
                        table.get(y).bruhat_leq(table.get(w)),
                        "{t} {:?} {:?}",
                        table.get(y),
                        table.get(w)
                    );
                }
            }
        }
    }

    #[test]
    fn maximal_parabolic_y_set_small_case() {
        let a3 = group(CartanType::A(3));
        let y = a3.maximal_parabolic_y_set(2).unwrap();
        // e, r1, t1, t1 r1, s t1 r1 with s = s_2, r1 = s_1, t1 = s_3
        let expected: BTreeSet<WeylElement> =
            [vec![], vec![0], vec![2], vec![2, 0], vec![1, 2, 0]].iter().map(|w| a3.element(w).unwrap()).collect();
        assert_eq!(y.into_iter().collect::<BTreeSet<_>>(), expected);
        assert!(a3.maximal_parabolic_y_set(1).is_err());
        assert!(group(CartanType::B2).maximal_parabolic_y_set(2).is_err());
    }

    #[test]
    fn type_a_permutations() {
        let a3 = group(CartanType::A(3));
        assert_eq!(a3.identity().type_a_permutation().unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(a3.simple(1).type_a_permutation().unwrap(), vec![1, 3, 2, 4]);
        assert!(group(CartanType::B2).identity().type_a_permutation().is_none());
    }

    #[test]
    fn word_strings_round_trip() {
        assert_eq!(word_string(&[]), "e");
        assert_eq!(word_string(&[0, 1, 0]), "1-2-1");
        assert_eq!(parse_word_string("1-2-1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word_string("e").unwrap(), Vec::<usize>::new());
        assert!(parse_word_string("0-1").is_none());
    }
}
