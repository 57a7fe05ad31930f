//! Property tests for the structural invariants: sign cocycles, shift
//! and permutation roundtrips, cyclicization scaling, graded
//! commutativity of the cyclic product, the pairing dictionary, and
//! linearity of the shuffle defect.

use proptest::prelude::*;

use pinczon::bracket::{form_of_map, map_of_form};
use pinczon::multilinear::{shift_map, unshift_map};
use pinczon::random::{
    random_bquadratic_map, random_cyclic_form, random_form, random_pairing, rng_from_seed,
    test_degree_vectors,
};
use pinczon::scalar::int;
use pinczon::sign::{koszul_sign, Permutation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// koszul(sigma tau; d) = koszul(tau; d) koszul(sigma; tau . d)
    #[test]
    fn koszul_cocycle(
        degrees in prop::collection::vec(-3i64..=3, 1..=6),
        seed in any::<u64>(),
    ) {
        let n = degrees.len();
        let mut runner = rng_from_seed(seed);
        use rand::Rng;
        let shuffle = |rng: &mut rand_chacha::ChaCha20Rng| {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                images.swap(i, j);
            }
            Permutation::from_images(images).unwrap()
        };
        let sigma = shuffle(&mut runner);
        let tau = shuffle(&mut runner);
        let lhs = koszul_sign(&degrees, &sigma.compose(&tau)).unwrap();
        let moved = tau.apply_tuple(&degrees);
        let rhs = koszul_sign(&degrees, &tau).unwrap() * koszul_sign(&moved, &sigma).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// unshift is a two-sided inverse of shift on sparse maps.
    #[test]
    fn shift_roundtrip(seed in any::<u64>(), dim in 2usize..=4, arity in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let degrees = test_degree_vectors(dim).pop().unwrap();
        let pairing = random_pairing(&degrees, &mut rng);
        let q = random_bquadratic_map(&pairing, arity, 0.4, &mut rng).unwrap();
        let v_level = unshift_map(&q).unwrap();
        prop_assert_eq!(shift_map(&v_level).unwrap(), q);
    }

    /// The permutation action is a group action: acting by tau then its
    /// inverse restores the form.
    #[test]
    fn permute_roundtrip(seed in any::<u64>(), dim in 2usize..=4, arity in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let degrees = test_degree_vectors(dim).pop().unwrap();
        let basis = pinczon::basis::GradedBasis::with_degrees(degrees);
        let f = random_form(&basis, arity, 0.4, &mut rng);
        let tau = {
            use rand::Rng;
            let mut images: Vec<usize> = (0..arity).collect();
            for i in (1..arity).rev() {
                let j = rng.gen_range(0..=i);
                images.swap(i, j);
            }
            Permutation::from_images(images).unwrap()
        };
        let back = f.permute(&tau).unwrap().permute(&tau.inverse()).unwrap();
        prop_assert_eq!(back, f);
    }

    /// cyclicize of a cyclicization multiplies by the arity.
    #[test]
    fn cyclicize_scaling(seed in any::<u64>(), dim in 2usize..=3, arity in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let degrees = test_degree_vectors(dim).pop().unwrap();
        let basis = pinczon::basis::GradedBasis::with_degrees(degrees);
        let c = random_form(&basis, arity, 0.4, &mut rng).cyclicize();
        prop_assert!(c.is_cyclic() || c.is_zero());
        prop_assert_eq!(c.cyclicize(), c.scale(&int(arity as i64)));
    }

    /// Graded commutativity of the cyclic product.
    #[test]
    fn cyclic_product_commutes(seed in any::<u64>(), dim in 2usize..=3) {
        let mut rng = rng_from_seed(seed);
        for degrees in test_degree_vectors(dim) {
            let basis = pinczon::basis::GradedBasis::with_degrees(degrees);
            let a = random_form(&basis, 2, 0.5, &mut rng).cyclicize();
            let b = random_form(&basis, 1, 0.8, &mut rng);
            let ab = a.cyclic_product(&b).unwrap();
            let ba = b.cyclic_product(&a).unwrap();
            let sign = if (a.degree() * b.degree()).rem_euclid(2) == 1 { -1 } else { 1 };
            prop_assert_eq!(ab, ba.scale(&int(sign)));
        }
    }

    /// The pairing dictionary is a bijection both ways.
    #[test]
    fn map_form_dictionary(seed in any::<u64>(), dim in 2usize..=4, arity in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let degrees = test_degree_vectors(dim).pop().unwrap();
        let pairing = random_pairing(&degrees, &mut rng);
        let q = random_bquadratic_map(&pairing, arity, 0.4, &mut rng).unwrap();
        let w = form_of_map(&q, &pairing).unwrap();
        prop_assert_eq!(map_of_form(&w, &pairing).unwrap(), q);
        let f = random_cyclic_form(pairing.basis(), arity + 1, 0.3, &mut rng);
        let qf = map_of_form(&f, &pairing).unwrap();
        prop_assert_eq!(form_of_map(&qf, &pairing).unwrap(), f);
    }

    /// The shuffle defect is linear.
    #[test]
    fn shuffle_defect_linear(seed in any::<u64>(), dim in 2usize..=3) {
        let mut rng = rng_from_seed(seed);
        let degrees = test_degree_vectors(dim).pop().unwrap();
        let basis = pinczon::basis::GradedBasis::with_degrees(degrees);
        let f = random_form(&basis, 3, 0.4, &mut rng);
        let g = loop {
            let g = random_form(&basis, 3, 0.4, &mut rng);
            if g.degree() == f.degree() {
                break g;
            }
        };
        let sum_defect = f.add(&g).unwrap().shuffle_defect(1).unwrap();
        let defect_sum = f
            .shuffle_defect(1)
            .unwrap()
            .add(&g.shuffle_defect(1).unwrap())
            .unwrap();
        prop_assert_eq!(sum_defect, defect_sum);
        let scaled = f.scale(&int(3)).shuffle_defect(1).unwrap();
        prop_assert_eq!(scaled, f.shuffle_defect(1).unwrap().scale(&int(3)));
    }
}
