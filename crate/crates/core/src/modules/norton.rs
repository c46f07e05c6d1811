//! Norton's irreducibility criterion: find a singular algebra element `A` with a
//! one-dimensional kernel; if a kernel vector of `A` generates the module and a kernel
//! vector of the transpose generates the dual, the module is irreducible. Any kernel
//! vector generating a proper subspace exhibits a submodule.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::MatrixModule;
use crate::linalg::{
    charpoly, identity, left_nullspace, mat_add, mat_mul, mat_scale, nullspace, poly_eval, CoeffField, Echelon, Matrix,
    PrimeField, Rationals,
};

/// Coefficient fields in which candidate eigenvalues can be listed.
pub trait EigenSearch: CoeffField {
    /// Roots in `K` of `poly` (low to high), among candidates of absolute value at most `bound`
    /// where the field is infinite.
    fn roots(&self, poly: &[Self::Elem], bound: i64) -> Vec<Self::Elem>;
}

impl EigenSearch for Rationals {
    fn roots(&self, poly: &[Self::Elem], bound: i64) -> Vec<Self::Elem> {
        (-bound..=bound).map(|x| self.from_i64(x)).filter(|x| self.is_zero(&poly_eval(self, poly, x))).collect()
    }
}

impl EigenSearch for PrimeField {
    fn roots(&self, poly: &[Self::Elem], _bound: i64) -> Vec<Self::Elem> {
        if self.modulus() > 1 << 16 {
            return Vec::new();
        }
        (0..self.modulus()).filter(|x| self.is_zero(&poly_eval(self, poly, x))).collect()
    }
}

/// An algebra element `sum_k c_k M_{w_k}` where `M_w` is the product of generator matrices
/// along the word `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: Vec<(Vec<usize>, i64)>,
}

impl AlgebraElement {
    pub fn matrix<F: CoeffField>(&self, m: &MatrixModule<F>) -> Matrix<F::Elem> {
        let k = &m.field;
        let mut out: Matrix<F::Elem> = vec![vec![k.zero(); m.dim]; m.dim];
        for (word, c) in &self.terms {
            let prod = word.iter().fold(identity(k, m.dim), |acc, &g| mat_mul(k, &acc, &m.gens[g]));
            out = mat_add(k, &out, &mat_scale(k, &k.from_i64(*c), &prod));
        }
        out
    }

    fn weight(&self) -> i64 {
        self.terms.iter().map(|t| t.1.abs()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct NortonCertificate<E> {
    pub element: AlgebraElement,
    pub eigenvalue: E,
    /// Spans the left kernel of `A - eigenvalue`.
    pub kernel: Vec<E>,
    /// Spans the right kernel of `A - eigenvalue`.
    pub dual_kernel: Vec<E>,
}

#[derive(Clone, Debug)]
pub enum NortonVerdict<F: CoeffField> {
    Irreducible(NortonCertificate<F::Elem>),
    /// Basis of a proper nonzero submodule.
    Reducible(Echelon<F>),
    Undecided,
}

impl<F: CoeffField> NortonVerdict<F> {
    pub fn label(&self) -> &'static str {
        match self {
            NortonVerdict::Irreducible(_) => "irreducible",
            NortonVerdict::Reducible(_) => "reducible",
            NortonVerdict::Undecided => "undecided",
        }
    }
}

/// Run the test with at most `attempts` random algebra elements drawn from a seeded stream.
pub fn norton_irreducible<F: EigenSearch>(m: &MatrixModule<F>, seed: u64, attempts: usize) -> NortonVerdict<F> {
    let k = &m.field;
    if m.dim == 0 {
        return NortonVerdict::Undecided;
    }
    if m.dim == 1 {
        return NortonVerdict::Irreducible(NortonCertificate {
            element: AlgebraElement { terms: Vec::new() },
            eigenvalue: k.zero(),
            kernel: vec![k.one()],
            dual_kernel: vec![k.one()],
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ngens = m.gens.len() as u64;
    for _ in 0..attempts {
        let nterms = 2 + (rng.next_u64() % 2) as usize;
        let terms: Vec<(Vec<usize>, i64)> = (0..nterms)
            .map(|_| {
                let len = 1 + (rng.next_u64() % 3) as usize;
                let word = (0..len).map(|_| (rng.next_u64() % ngens) as usize).collect();
                let c = if rng.next_u64() % 2 == 0 { 1 } else { -1 };
                (word, c)
            })
            .collect();
        let element = AlgebraElement { terms };
        let a = element.matrix(m);
        let poly = charpoly(k, &a);
        for lambda in k.roots(&poly, element.weight()) {
            let shifted = shift(k, &a, &lambda);
            let kernel = left_nullspace(k, &shifted);
            for v in &kernel {
                let span = m.spin(core::slice::from_ref(v));
                if span.rank() < m.dim {
                    return NortonVerdict::Reducible(span);
                }
            }
            let dual = nullspace(k, &shifted);
            for w in &dual {
                let span = m.spin_dual(core::slice::from_ref(w));
                if span.rank() < m.dim {
                    return NortonVerdict::Reducible(annihilator(m, &span));
                }
            }
            if kernel.len() == 1 && dual.len() == 1 {
                return NortonVerdict::Irreducible(NortonCertificate {
                    element,
                    eigenvalue: lambda,
                    kernel: kernel[0].clone(),
                    dual_kernel: dual[0].clone(),
                });
            }
        }
    }
    NortonVerdict::Undecided
}

fn shift<F: CoeffField>(k: &F, a: &Matrix<F::Elem>, lambda: &F::Elem) -> Matrix<F::Elem> {
    let mut s = a.clone();
    for (i, row) in s.iter_mut().enumerate() {
        row[i] = k.sub(&row[i], lambda);
    }
    s
}

/// `{v : v . w = 0 for w in span}`, a submodule when `span` is dual-stable.
fn annihilator<F: CoeffField>(m: &MatrixModule<F>, span: &Echelon<F>) -> Echelon<F> {
    let k = &m.field;
    // columns of the matrix are the spanning vectors
    let cols: Matrix<F::Elem> =
        (0..m.dim).map(|i| (0..span.rank()).map(|r| span.row_dense(r)[i].clone()).collect()).collect();
    let mut ech = Echelon::new(k.clone(), m.dim);
    for v in left_nullspace(k, &cols) {
        ech.insert(&v);
    }
    ech
}

/// Re-check a certificate from scratch.
pub fn verify_certificate<F: CoeffField>(m: &MatrixModule<F>, cert: &NortonCertificate<F::Elem>) -> bool {
    let k = &m.field;
    if m.dim == 1 {
        return true;
    }
    let shifted = shift(k, &cert.element.matrix(m), &cert.eigenvalue);
    let kernel = left_nullspace(k, &shifted);
    let dual = nullspace(k, &shifted);
    let v_ok = crate::linalg::vec_mat(k, &cert.kernel, &shifted).iter().all(|x| k.is_zero(x));
    let w_ok = shifted.iter().all(|row| {
        k.is_zero(&row.iter().zip(&cert.dual_kernel).fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b))))
    });
    kernel.len() == 1
        && dual.len() == 1
        && v_ok
        && w_ok
        && cert.kernel.iter().any(|x| !k.is_zero(x))
        && cert.dual_kernel.iter().any(|x| !k.is_zero(x))
        && m.spin(core::slice::from_ref(&cert.kernel)).rank() == m.dim
        && m.spin_dual(core::slice::from_ref(&cert.dual_kernel)).rank() == m.dim
}

/// Dimensions of composition factors found by repeated splitting, plus the number of pieces
/// on which the test stayed undecided.
pub fn composition_factors<F: EigenSearch>(m: &MatrixModule<F>, seed: u64, attempts: usize) -> (Vec<usize>, usize) {
    let mut factors = Vec::new();
    let mut undecided = 0;
    let mut stack = vec![m.clone()];
    let mut round = 0u64;
    while let Some(piece) = stack.pop() {
        round += 1;
        if piece.dim == 0 {
            continue;
        }
        match norton_irreducible(&piece, seed.wrapping_add(round), attempts) {
            NortonVerdict::Irreducible(_) => factors.push(piece.dim),
            NortonVerdict::Reducible(sub) => {
                stack.push(piece.submodule(&sub));
                stack.push(piece.quotient(&sub));
            }
            NortonVerdict::Undecided => undecided += 1,
        }
    }
    factors.sort_unstable();
    (factors, undecided)
}

/// Readable summary of a verdict.
pub fn describe<F: CoeffField>(k: &F, v: &NortonVerdict<F>) -> String {
    match v {
        NortonVerdict::Irreducible(c) => {
            format!("irreducible (A = {:?}, eigenvalue {})", c.element.terms, k.render(&c.eigenvalue))
        }
        NortonVerdict::Reducible(sub) => format!("reducible (submodule of dimension {})", sub.rank()),
        NortonVerdict::Undecided => String::from("undecided"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn perm_matrix(k: &Rationals, perm: &[usize]) -> Matrix<Rational> {
        let n = perm.len();
        (0..n).map(|i| (0..n).map(|j| if perm[i] == j { k.one() } else { k.zero() }).collect()).collect()
    }

    #[test]
    fn trivial_module_is_irreducible() {
        let m = MatrixModule { field: Rationals, dim: 1, gens: vec![vec![vec![Rational::from_i64(1)]]] };
        assert!(matches!(norton_irreducible(&m, 1, 10), NortonVerdict::Irreducible(_)));
    }

    #[test]
    fn permutation_module_of_s3() {
        let k = Rationals;
        let m = MatrixModule { field: k, dim: 3, gens: vec![perm_matrix(&k, &[1, 0, 2]), perm_matrix(&k, &[0, 2, 1])] };
        match norton_irreducible(&m, 7, 50) {
            NortonVerdict::Reducible(sub) => assert!(sub.rank() == 1 || sub.rank() == 2),
            other => panic!("{}", describe(&k, &other)),
        }
        let (factors, undecided) = composition_factors(&m, 3, 50);
        assert_eq!(undecided, 0);
        assert_eq!(factors, vec![1, 2]);
    }

    #[test]
    fn reflection_representation_certificate() {
        // the 2-dimensional quotient of the permutation module of S3
        let k = Rationals;
        let full =
            MatrixModule { field: k, dim: 3, gens: vec![perm_matrix(&k, &[1, 0, 2]), perm_matrix(&k, &[0, 2, 1])] };
        let mut triv = Echelon::new(k, 3);
        triv.insert(&[k.one(), k.one(), k.one()]);
        let refl = full.quotient(&triv);
        match norton_irreducible(&refl, 11, 100) {
            NortonVerdict::Irreducible(c) => assert!(verify_certificate(&refl, &c)),
            other => panic!("{}", describe(&k, &other)),
        }
    }
}
