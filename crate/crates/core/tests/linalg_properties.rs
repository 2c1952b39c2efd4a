mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sodhh::field::F32003;
use sodhh::linalg::{kronecker_tensor, rank, rank_kernel_image, solve, Matrix};
use sodhh::{Field, Fp, Q};

type F5 = Fp<5>;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn shaped() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| small_matrix(r, c))
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in shaped()) {
        let a = Matrix::<Q>::from_i64_rows(&m);
        let rki = rank_kernel_image(&a);
        prop_assert_eq!(rki.rank + rki.kernel.cols(), a.cols());
        prop_assert!(a.mul(&rki.kernel).is_zero());
        prop_assert_eq!(rank(&rki.kernel), rki.kernel.cols());
        prop_assert_eq!(rank(&rki.image), rki.rank);
        prop_assert_eq!(rank(&a.transpose()), rki.rank);
    }

    #[test]
    fn kronecker_rank_is_multiplicative(x in small_matrix(3, 3), y in small_matrix(3, 3)) {
        let a = Matrix::<Q>::from_i64_rows(&x);
        let b = Matrix::<Q>::from_i64_rows(&y);
        let t = kronecker_tensor(&a, &b);
        prop_assert_eq!((t.rows(), t.cols()), (9, 9));
        prop_assert_eq!(rank(&t), rank(&a) * rank(&b));
    }

    #[test]
    fn consistent_systems_solve_exactly(m in shaped(), x in prop::collection::vec(-4i64..=4, 6)) {
        let a = Matrix::<Q>::from_i64_rows(&m);
        let x: Vec<Vec<i64>> = x[..a.cols()].iter().map(|&v| vec![v]).collect();
        let rhs = a.mul(&Matrix::from_i64_rows(&x));
        let sol = solve(&a, &rhs).expect("consistent by construction");
        prop_assert_eq!(a.mul(&sol), rhs);
    }

    #[test]
    fn prime_field_rank_matches_naive_elimination(m in small_matrix(6, 4)) {
        let a = Matrix::<F5>::from_i64_rows(&m);
        let residues: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(5) as u64).collect()).collect();
        prop_assert_eq!(rank(&a), common::naive_rank_mod(&residues, 5));
    }

    #[test]
    fn small_integer_matrices_agree_over_q_and_large_prime(m in shaped()) {
        // minors of size at most 3 with entries in [-3, 3] are far below 32003
        prop_assume!(m.len() <= 3 || m[0].len() <= 3);
        let q = rank(&Matrix::<Q>::from_i64_rows(&m));
        let p = rank(&Matrix::<F32003>::from_i64_rows(&m));
        prop_assert_eq!(q, p);
    }
}

#[test]
fn identity_and_proportional_rows() {
    let id = Matrix::<Q>::identity(3);
    let r = rank_kernel_image(&id);
    assert_eq!((r.rank, r.kernel.cols()), (3, 0));

    let m = Matrix::<Q>::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
    let r = rank_kernel_image(&m);
    assert_eq!(r.rank, 1);
    assert_eq!(r.kernel.cols(), 1);
    let k = r.kernel.column(0);
    let ratio = k.get(0).div(&k.get(1));
    assert_eq!(ratio, Q::from_i64(-2));

    let rhs = Matrix::<Q>::from_i64_rows(&[vec![1], vec![0]]);
    assert!(solve(&m, &rhs).is_none());
    let b = Matrix::<Q>::from_i64_rows(&[vec![4], vec![-1], vec![7]]);
    assert_eq!(solve(&id, &b).unwrap(), b);
}

#[test]
fn kronecker_of_identities_and_zero() {
    let i2 = Matrix::<Q>::identity(2);
    let i3 = Matrix::<Q>::identity(3);
    assert_eq!(kronecker_tensor(&i2, &i3), Matrix::identity(6));
    let z = Matrix::<Q>::zeros(2, 3);
    assert!(kronecker_tensor(&i3, &z).is_zero());
}

#[test]
fn seeded_random_f5_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let rows: Vec<Vec<u64>> = (0..6)
            .map(|_| (0..4).map(|_| rng.gen_range(0..5)).collect())
            .collect();
        let signed: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        assert_eq!(
            rank(&Matrix::<F5>::from_i64_rows(&signed)),
            common::naive_rank_mod(&rows, 5)
        );
    }
}
