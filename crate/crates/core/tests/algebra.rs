mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stpnet::{BooleanMatrix, CountMatrix, LogicalMatrix};

fn logical(rows: usize, cols: usize) -> impl Strategy<Value = LogicalMatrix> {
    prop::collection::vec(0..rows, cols).prop_map(move |p| LogicalMatrix::from_positions(rows, p).unwrap())
}

fn dims() -> impl Strategy<Value = usize> {
    1usize..=16
}

fn count_of(m: &LogicalMatrix) -> CountMatrix {
    CountMatrix::from(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stp_with_matching_dims_is_ordinary_product(
        (a, b) in (dims(), dims(), dims()).prop_flat_map(|(r, k, c)| (logical(r, k), logical(k, c)))
    ) {
        let s = a.stp(&b);
        prop_assert_eq!(&s, &a.mul(&b).unwrap());
        prop_assert_eq!(count_of(&s), count_of(&a).mul(&count_of(&b)).unwrap());
    }

    #[test]
    fn stp_is_associative(
        (a, b, c) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(r1, c1, r2, c2, r3, c3)| (logical(r1, c1), logical(r2, c2), logical(r3, c3)))
    ) {
        prop_assert_eq!(a.stp(&b).stp(&c), a.stp(&b.stp(&c)));
    }

    #[test]
    fn stp_of_logical_matches_integer_stp(
        (a, b) in (1usize..=4, 1usize..=6, 1usize..=4, 1usize..=6)
            .prop_flat_map(|(r1, c1, r2, c2)| (logical(r1, c1), logical(r2, c2)))
    ) {
        prop_assert_eq!(count_of(&a.stp(&b)), count_of(&a).stp(&count_of(&b)));
    }

    #[test]
    fn khatri_rao_is_logical_with_product_rows(
        (a, b) in (1usize..=5, 1usize..=5, 1usize..=12)
            .prop_flat_map(|(r1, r2, c)| (logical(r1, c), logical(r2, c)))
    ) {
        let k = a.khatri_rao(&b).unwrap();
        prop_assert_eq!(k.rows(), a.rows() * b.rows());
        prop_assert_eq!(k.cols(), a.cols());
        let bm = k.to_boolean();
        for j in 0..bm.cols() {
            prop_assert_eq!(bm.col_ones(j).count(), 1);
            prop_assert_eq!(k.column(j), a.column(j).stp(&b.column(j)));
        }
    }
}

#[test]
fn int_power_trace_counts_closed_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.1..0.8);
        let m = common::random_boolean(&mut rng, n, n, density);
        for s in 1..=8 {
            let tr = m.int_power_trace(s).unwrap();
            assert_eq!(tr, common::closed_walks(&m, s).into(), "n={n} s={s}\n{m}");
        }
    }
}

#[test]
fn booleanized_integer_power_is_boolean_power() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let m = common::random_boolean(&mut rng, 6, 6, 0.3);
        let c = CountMatrix::from(&m);
        for s in 1..=8 {
            assert_eq!(c.pow(s).unwrap().booleanize(), m.bool_power(s).unwrap());
        }
    }
}

#[test]
fn boolean_algebra_laws_on_random_six_by_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let [a, b, c]: [BooleanMatrix; 3] = std::array::from_fn(|_| common::random_boolean(&mut rng, 6, 6, 0.4));
        assert_eq!(a.bool_add(&b).unwrap(), b.bool_add(&a).unwrap());
        assert_eq!(
            a.bool_add(&b).unwrap().bool_add(&c).unwrap(),
            a.bool_add(&b.bool_add(&c).unwrap()).unwrap()
        );
        assert_eq!(a.bool_add(&a).unwrap(), a);
        assert_eq!(
            a.bool_mul(&b.bool_add(&c).unwrap()).unwrap(),
            a.bool_mul(&b).unwrap().bool_add(&a.bool_mul(&c).unwrap()).unwrap()
        );
    }
}
