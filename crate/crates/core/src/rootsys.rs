//! Crystallographic root systems of types `A_n`, `B_2` and `G_2` in simple-root coordinates.
//!
//! Conventions used throughout the crate:
//! * `cartan[i][j] = <alpha_i, alpha_j^vee>`, so `s_i(g) = g - (sum_j g_j cartan[j][i]) alpha_i`;
//! * `B_2`: `alpha_0` short, `alpha_1` long; `G_2`: `alpha_0` long, `alpha_1` short;
//! * a word `[a_0, .., a_{k-1}]` denotes `s_{a_0} s_{a_1} ... s_{a_{k-1}}`, acting on roots
//!   right to left.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Highest `A_n` rank accepted by [`RootSystem::new`].
pub const MAX_TYPE_A_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanType {
    A(usize),
    B2,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) => n,
            CartanType::B2 | CartanType::G2 => 2,
        }
    }

    /// Build from a family letter and a rank.
    pub fn from_parts(family: char, rank: usize) -> Result<CartanType, RootError> {
        match (family.to_ascii_uppercase(), rank) {
            ('A', n) if (1..=MAX_TYPE_A_RANK).contains(&n) => Ok(CartanType::A(n)),
            ('B', 2) | ('C', 2) => Ok(CartanType::B2),
            ('G', 2) => Ok(CartanType::G2),
            _ => Err(RootError::Unsupported { family, rank }),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B2 => write!(f, "B2"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<CartanType, RootError> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or(RootError::Parse(String::from(s)))?;
        let rest: String = chars.filter(|c| *c != '_').collect();
        let rank: usize = rest.parse().map_err(|_| RootError::Parse(String::from(s)))?;
        CartanType::from_parts(family, rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootError {
    Unsupported { family: char, rank: usize },
    Parse(String),
    NotARoot(Vec<i32>),
    IndexOutOfRange(usize),
    NotReduced(Vec<usize>),
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::Unsupported { family, rank } => {
                write!(f, "unsupported root system {family}{rank}")
            }
            RootError::Parse(s) => write!(f, "cannot parse root system label {s:?}"),
            RootError::NotARoot(c) => write!(f, "{c:?} is not a root"),
            RootError::IndexOutOfRange(i) => write!(f, "simple reflection index {i} out of range"),
            RootError::NotReduced(w) => write!(f, "word {w:?} is not reduced"),
        }
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i32) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", root_label(&self.0))
    }
}

/// `a0+2a1`-style label; `-(a0+a1)` for negative roots.
pub fn root_label(coords: &[i32]) -> String {
    use core::fmt::Write;
    let negative = coords.iter().any(|&c| c < 0);
    let mut body = String::new();
    for (i, &c) in coords.iter().enumerate() {
        let c = c.abs();
        if c == 0 {
            continue;
        }
        if !body.is_empty() {
            body.push('+');
        }
        if c != 1 {
            let _ = write!(body, "{c}");
        }
        let _ = write!(body, "a{i}");
    }
    if body.is_empty() {
        body.push('0');
    }
    if negative {
        let mut s = String::from("-(");
        s.push_str(&body);
        s.push(')');
        s
    } else {
        body
    }
}

/// Signed index of a root: `+(j+1)` for the `j`-th positive root, `-(j+1)` for its negative.
pub type SignedIndex = i16;

#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    index: BTreeMap<Vec<i32>, usize>,
    /// `reflection[i][j]`: signed index of `s_i(positive[j])`.
    reflection: Vec<Vec<SignedIndex>>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Arc<RootSystem>, RootError> {
        let n = cartan_type.rank();
        if n == 0 {
            return Err(RootError::Unsupported { family: 'A', rank: 0 });
        }
        if let CartanType::A(r) = cartan_type {
            if r > MAX_TYPE_A_RANK {
                return Err(RootError::Unsupported { family: 'A', rank: r });
            }
        }
        let cartan = cartan_matrix(cartan_type);
        let reflect = |i: usize, g: &[i32]| -> Vec<i32> {
            let pairing: i32 = (0..n).map(|j| g[j] * cartan[j][i]).sum();
            let mut out = g.to_vec();
            out[i] -= pairing;
            out
        };
        // close the simple roots under reflections, keeping positive roots
        let mut found: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut cursor = 0;
        while cursor < found.len() {
            let g = found[cursor].clone();
            for i in 0..n {
                let h = reflect(i, &g);
                if h.iter().all(|&c| c >= 0) && !found.contains(&h) {
                    found.push(h);
                }
            }
            cursor += 1;
        }
        found.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let index: BTreeMap<Vec<i32>, usize> = found.iter().enumerate().map(|(j, r)| (r.clone(), j)).collect();
        let mut reflection = vec![Vec::with_capacity(found.len()); n];
        for (i, row) in reflection.iter_mut().enumerate() {
            for g in &found {
                let h = reflect(i, g);
                let signed = match index.get(&h) {
                    Some(&j) => (j + 1) as SignedIndex,
                    None => {
                        let neg: Vec<i32> = h.iter().map(|c| -c).collect();
                        -((index[&neg] + 1) as SignedIndex)
                    }
                };
                row.push(signed);
            }
        }
        Ok(Arc::new(RootSystem {
            cartan_type,
            cartan,
            positive: found.into_iter().map(Root).collect(),
            index,
            reflection,
        }))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `cartan()[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        self.positive[i].clone()
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.0).copied()
    }

    /// Signed index of any root, or `None` if it is not a root.
    pub fn signed_index(&self, r: &Root) -> Option<SignedIndex> {
        if let Some(j) = self.positive_index(r) {
            return Some((j + 1) as SignedIndex);
        }
        self.positive_index(&r.neg()).map(|j| -((j + 1) as SignedIndex))
    }

    pub fn root_of(&self, s: SignedIndex) -> Root {
        let r = &self.positive[(s.unsigned_abs() - 1) as usize];
        if s > 0 {
            r.clone()
        } else {
            r.neg()
        }
    }

    pub fn is_root(&self, r: &Root) -> bool {
        r.0.len() == self.rank() && self.signed_index(r).is_some()
    }

    /// `s_i` applied to a signed index.
    #[inline]
    pub fn reflect_index(&self, i: usize, s: SignedIndex) -> SignedIndex {
        let img = self.reflection[i][(s.unsigned_abs() - 1) as usize];
        if s > 0 {
            img
        } else {
            -img
        }
    }

    pub fn reflect(&self, i: usize, g: &Root) -> Result<Root, RootError> {
        if i >= self.rank() {
            return Err(RootError::IndexOutOfRange(i));
        }
        let s = self.signed_index(g).ok_or_else(|| RootError::NotARoot(g.0.clone()))?;
        Ok(self.root_of(self.reflect_index(i, s)))
    }

    /// `act([a0, a1, ..], g) = s_{a0}(s_{a1}(..(g)))`.
    pub fn act(&self, word: &[usize], g: &Root) -> Result<Root, RootError> {
        self.check_word(word)?;
        let mut s = self.signed_index(g).ok_or_else(|| RootError::NotARoot(g.0.clone()))?;
        for &a in word.iter().rev() {
            s = self.reflect_index(a, s);
        }
        Ok(self.root_of(s))
    }

    pub fn check_word(&self, word: &[usize]) -> Result<(), RootError> {
        match word.iter().find(|&&a| a >= self.rank()) {
            Some(&a) => Err(RootError::IndexOutOfRange(a)),
            None => Ok(()),
        }
    }

    /// For `w = s_{a0}..s_{a_{k-1}}` returns the roots `beta_k, .., beta_1` where
    /// `beta_j = s_{a_{k-1}} .. s_{a_{k-j+1}}(alpha_{a_{k-j}})`, so that
    /// `U_{beta_k} .. U_{beta_1}` is the product of root subgroups made negative by `w`.
    pub fn uw_roots(&self, word: &[usize]) -> Result<Vec<Root>, RootError> {
        self.check_word(word)?;
        let k = word.len();
        let mut betas = Vec::with_capacity(k);
        for j in 1..=k {
            let mut s = (word[k - j] + 1) as SignedIndex;
            for &a in word[k - j + 1..].iter() {
                s = self.reflect_index(a, s);
            }
            if s < 0 {
                return Err(RootError::NotReduced(word.to_vec()));
            }
            betas.push(self.root_of(s));
        }
        betas.reverse();
        Ok(betas)
    }

    pub fn is_reduced_word(&self, word: &[usize]) -> bool {
        self.uw_roots(word).is_ok()
    }

    /// Positive roots kept positive by `w`, in canonical order.
    pub fn uw_prime_roots(&self, word: &[usize]) -> Result<Vec<Root>, RootError> {
        let neg = self.uw_roots(word)?;
        Ok(self.positive.iter().filter(|r| !neg.contains(r)).cloned().collect())
    }

    /// Simple roots made negative by `w` (indices into the simple roots).
    pub fn delta_w(&self, word: &[usize]) -> Result<Vec<usize>, RootError> {
        self.check_word(word)?;
        Ok((0..self.rank())
            .filter(|&i| {
                let mut s = (i + 1) as SignedIndex;
                for &a in word.iter().rev() {
                    s = self.reflect_index(a, s);
                }
                s < 0
            })
            .collect())
    }
}

fn cartan_matrix(t: CartanType) -> Vec<Vec<i32>> {
    match t {
        CartanType::A(n) => (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect(),
        CartanType::B2 => vec![vec![2, -1], vec![-2, 2]],
        CartanType::G2 => vec![vec![2, -3], vec![-1, 2]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: &[i32]) -> Root {
        Root(c.to_vec())
    }

    #[test]
    fn positive_roots_of_rank_two() {
        let a2 = RootSystem::new(CartanType::A(2)).unwrap();
        assert_eq!(a2.positive_roots(), &[r(&[1, 0]), r(&[0, 1]), r(&[1, 1])]);
        let b2 = RootSystem::new(CartanType::B2).unwrap();
        assert_eq!(b2.positive_roots(), &[r(&[1, 0]), r(&[0, 1]), r(&[1, 1]), r(&[2, 1])]);
        let g2 = RootSystem::new(CartanType::G2).unwrap();
        assert_eq!(g2.positive_roots(), &[r(&[1, 0]), r(&[0, 1]), r(&[1, 1]), r(&[1, 2]), r(&[1, 3]), r(&[2, 3])]);
    }

    #[test]
    fn type_a_root_count() {
        for n in 1..=6 {
            let s = RootSystem::new(CartanType::A(n)).unwrap();
            assert_eq!(s.num_positive(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn reflections() {
        let a2 = RootSystem::new(CartanType::A(2)).unwrap();
        assert_eq!(a2.reflect(0, &r(&[1, 0])).unwrap(), r(&[-1, 0]));
        assert_eq!(a2.reflect(0, &r(&[0, 1])).unwrap(), r(&[1, 1]));
        assert!(a2.reflect(0, &r(&[2, 0])).is_err());
        assert!(a2.reflect(2, &r(&[1, 0])).is_err());
        assert_eq!(a2.act(&[], &r(&[0, 1])).unwrap(), r(&[0, 1]));
        // w_0 = srs negates the simple roots
        for i in 0..2 {
            assert!(!a2.act(&[0, 1, 0], &a2.simple_root(i)).unwrap().is_positive());
        }
    }

    #[test]
    fn uw_root_examples() {
        let a2 = RootSystem::new(CartanType::A(2)).unwrap();
        assert_eq!(a2.uw_roots(&[0]).unwrap(), vec![r(&[1, 0])]);
        assert_eq!(a2.uw_roots(&[0, 1]).unwrap(), vec![r(&[1, 1]), r(&[0, 1])]);
        assert_eq!(a2.uw_roots(&[0, 1, 0]).unwrap(), vec![r(&[0, 1]), r(&[1, 1]), r(&[1, 0])]);
        assert!(matches!(a2.uw_roots(&[0, 0]), Err(RootError::NotReduced(_))));
        assert_eq!(a2.uw_prime_roots(&[0]).unwrap(), vec![r(&[0, 1]), r(&[1, 1])]);
        assert_eq!(a2.uw_prime_roots(&[]).unwrap().len(), 3);
        assert!(a2.uw_prime_roots(&[0, 1, 0]).unwrap().is_empty());
        let g2 = RootSystem::new(CartanType::G2).unwrap();
        assert_eq!(g2.uw_roots(&[0, 1, 0]).unwrap(), vec![r(&[2, 3]), r(&[1, 1]), r(&[1, 0])]);
        assert_eq!(g2.uw_roots(&[0, 1]).unwrap(), vec![r(&[1, 3]), r(&[0, 1])]);
    }

    #[test]
    fn delta_w_examples() {
        let a2 = RootSystem::new(CartanType::A(2)).unwrap();
        assert!(a2.delta_w(&[]).unwrap().is_empty());
        assert_eq!(a2.delta_w(&[0, 1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(a2.delta_w(&[0, 1]).unwrap(), vec![1]);
    }

    #[test]
    fn labels_parse() {
        assert_eq!("A3".parse::<CartanType>().unwrap(), CartanType::A(3));
        assert_eq!("B_2".parse::<CartanType>().unwrap(), CartanType::B2);
        assert_eq!("g2".parse::<CartanType>().unwrap(), CartanType::G2);
        assert!("B3".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
        assert_eq!(root_label(&[2, 1]), "2a0+a1");
        assert_eq!(root_label(&[-1, -1]), "-(a0+a1)");
    }
}
