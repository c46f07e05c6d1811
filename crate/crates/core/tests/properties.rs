use std::sync::Arc;

use proptest::prelude::*;
use psmod_core::chevalley::ChevalleyGroup;
use psmod_core::coxeter::WeylGroup;
use psmod_core::gf::Field;
use psmod_core::linalg::{rank, CoeffField, PrimeField, Rational, Rationals};
use psmod_core::modules::CosetSpace;
use psmod_core::rootsys::CartanType;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

const FIELDS: [(u32, u32); 9] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)];

fn field_and_elements() -> impl Strategy<Value = (Field, u32, u32, u32)> {
    (0..FIELDS.len(), any::<u32>(), any::<u32>(), any::<u32>()).prop_map(|(i, a, b, c)| {
        let f = Field::new(FIELDS[i].0, FIELDS[i].1).unwrap();
        let q = f.order();
        (f, a % q, b % q, c % q)
    })
}

fn weyl_word() -> impl Strategy<Value = (CartanType, Vec<usize>)> {
    prop_oneof![Just(CartanType::A(3)), Just(CartanType::B2), Just(CartanType::G2), Just(CartanType::A(4))]
        .prop_flat_map(|t| (Just(t), prop::collection::vec(0..t.rank(), 0..14)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((f, a, b, c) in field_and_elements()) {
        prop_assert_eq!(f.raw_add(a, b), f.raw_add(b, a));
        prop_assert_eq!(f.raw_mul(a, f.raw_mul(b, c)), f.raw_mul(f.raw_mul(a, b), c));
        prop_assert_eq!(f.raw_mul(a, f.raw_add(b, c)), f.raw_add(f.raw_mul(a, b), f.raw_mul(a, c)));
        prop_assert_eq!(f.raw_add(a, f.raw_neg(a)), 0);
        prop_assert_eq!(f.raw_sub(f.raw_add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.raw_mul(a, f.raw_inv(a).unwrap()), 1);
            prop_assert_eq!(f.raw_pow(a, (f.order() - 1) as u64), 1);
        } else {
            prop_assert!(f.raw_inv(a).is_none());
        }
    }

    #[test]
    fn frobenius_is_additive((f, a, b, _c) in field_and_elements()) {
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.raw_pow(f.raw_add(a, b), p), f.raw_add(f.raw_pow(a, p), f.raw_pow(b, p)));
    }

    #[test]
    fn embeddings_are_ring_maps(i in 0usize..4, a in any::<u32>(), b in any::<u32>()) {
        let (p, small, big) = [(2, 1, 2), (2, 2, 4), (3, 1, 2), (2, 1, 3)][i];
        let s = Field::new(p, small).unwrap();
        let t = Field::new(p, big).unwrap();
        let (a, b) = (a % s.order(), b % s.order());
        let e = |x: u32| s.raw_embed(x, &t).unwrap();
        prop_assert_eq!(e(s.raw_add(a, b)), t.raw_add(e(a), e(b)));
        prop_assert_eq!(e(s.raw_mul(a, b)), t.raw_mul(e(a), e(b)));
        // images are fixed by the small Frobenius
        prop_assert_eq!(t.raw_pow(e(a), s.order() as u64), e(a));
    }

    #[test]
    fn weyl_length_is_inversion_count((t, word) in weyl_word()) {
        let w = WeylGroup::of_type(t).unwrap();
        let x = w.element(&word).unwrap();
        prop_assert_eq!(x.length(), x.inversion_set().len());
        prop_assert_eq!(x.word().len(), x.length());
        prop_assert!(w.is_reduced(x.word()).unwrap());
        prop_assert_eq!(w.is_reduced(&word).unwrap(), x.length() == word.len());
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(x.inverse().length(), x.length());
        for i in 0..t.rank() {
            let xs = x.mul_simple_right(i);
            let down = xs.length() < x.length();
            prop_assert_eq!(down, x.descents().contains(i));
            prop_assert_eq!(xs.length().abs_diff(x.length()), 1);
        }
    }

    #[test]
    fn bruhat_order_is_compatible_with_length((t, word) in weyl_word(), cut in 0usize..14) {
        let w = WeylGroup::of_type(t).unwrap();
        let x = w.element(&word).unwrap();
        // any prefix of a reduced word lies below the element
        let k = cut.min(x.word().len());
        let y = w.element(&x.word()[..k]).unwrap();
        prop_assert!(y.bruhat_leq(&x));
        prop_assert!(y.length() <= x.length());
    }
}

fn groups() -> Vec<Arc<ChevalleyGroup>> {
    [(CartanType::A(2), 3), (CartanType::A(3), 2), (CartanType::B2, 3), (CartanType::A(1), 9), (CartanType::B2, 4)]
        .iter()
        .map(|&(t, q)| ChevalleyGroup::new(t, q).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bruhat_decomposition_round_trips(i in 0usize..5, seed in any::<u64>()) {
        let g = &groups()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        prop_assert!(g.contains(&x));
        let form = g.bruhat(&x).unwrap();
        prop_assert_eq!(g.recompose(&form), x.clone());
        prop_assert!(form.u_prime.is_unipotent_upper());
        // the coset data ignores right multiplication by the Borel
        let b = form.t.mul(&form.u_prime);
        let y = x.mul(&b.inverse().unwrap());
        prop_assert_eq!(g.coset_key(&y).unwrap(), g.coset_key(&x).unwrap());
        prop_assert_eq!(form.u.mul(&g.weyl_rep(&form.w)), y);
    }

    #[test]
    fn inverse_and_determinant(i in 0usize..5, seed in any::<u64>()) {
        let g = &groups()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        prop_assert!(x.mul(&x.inverse().unwrap()).is_identity());
        prop_assert!(g.contains(&x.mul(&y)));
        prop_assert_eq!(x.mul(&y).determinant(), 1);
    }

    #[test]
    fn coset_action_is_a_homomorphism(seed in any::<u64>()) {
        let g = ChevalleyGroup::new(CartanType::A(2), 2).unwrap();
        let space = CosetSpace::new(g.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        let px = space.permutation(&x).unwrap();
        let py = space.permutation(&y).unwrap();
        let pxy = space.permutation(&x.mul(&y)).unwrap();
        let composed: Vec<usize> = py.iter().map(|&j| px[j]).collect();
        prop_assert_eq!(pxy, composed);
    }

    #[test]
    fn rank_agrees_across_fields(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..6)) {
        let q = Rationals;
        let big = PrimeField::new(1_000_003).unwrap();
        let rq: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let rp: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| big.from_i64(x)).collect()).collect();
        let cols: Vec<Vec<Rational>> = (0..5).map(|j| rq.iter().map(|r| r[j].clone()).collect()).collect();
        let a = rank(&q, &rq, 5);
        prop_assert_eq!(a, rank(&q, &cols, rows.len()));
        // entries are tiny, so a large prime sees the same rank
        prop_assert_eq!(a, rank(&big, &rp, 5));
    }
}
