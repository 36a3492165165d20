use anchain_core::zlattice::{is_hermite_form, is_smith_form};
use anchain_core::{hnf, snf, solve_integer, solve_mod, IntegerMatrix, SolveStatus};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntegerMatrix::from_i64(r, c, &e).unwrap())
    })
}

/// Plain enumeration of `(Z/m)^cols`, recomputing `A x` for each candidate.
fn exhaustive(a: &IntegerMatrix, c: &[i64], m: i64) -> bool {
    let cols = a.cols();
    let total = (m as u64).pow(cols as u32);
    (0..total).any(|code| {
        let mut x = Vec::with_capacity(cols);
        let mut rest = code;
        for _ in 0..cols {
            x.push(BigInt::from(rest % m as u64));
            rest /= m as u64;
        }
        let ax = a.mul_vec(&x).unwrap();
        ax.iter()
            .zip(c)
            .all(|(l, &r)| (l - BigInt::from(r)).is_multiple_of(&BigInt::from(m)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_identity_and_shape(a in matrix(5, 20)) {
        let r = snf(&a).unwrap();
        prop_assert!(r.reproduces(&a));
        prop_assert!(r.left.determinant().unwrap().abs().is_one());
        prop_assert!(r.right.determinant().unwrap().abs().is_one());
        prop_assert!(is_smith_form(&r.normal));
    }

    #[test]
    fn hnf_identity_and_shape(a in matrix(5, 20)) {
        let r = hnf(&a).unwrap();
        prop_assert!(r.reproduces(&a));
        prop_assert!(r.left.is_unimodular());
        prop_assert_eq!(&r.right, &IntegerMatrix::identity(a.cols()).unwrap());
        prop_assert!(is_hermite_form(&r.normal));
    }

    #[test]
    fn hnf_is_unique_under_row_mixing(a in matrix(4, 9), k in -3i64..=3) {
        // Adding a multiple of one row to another keeps the row lattice.
        prop_assume!(a.rows() >= 2);
        let mut rows: Vec<Vec<i64>> = (0..a.rows())
            .map(|i| a.row(i).iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect();
        let first = rows[0].clone();
        for (dst, src) in rows[1].iter_mut().zip(&first) {
            *dst += k * src;
        }
        rows.swap(0, 1);
        let b = IntegerMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(hnf(&a).unwrap().normal, hnf(&b).unwrap().normal);
    }

    #[test]
    fn snf_product_of_diagonal_is_abs_det(a in matrix(4, 12)) {
        prop_assume!(a.is_square());
        let d = snf(&a).unwrap().diagonal();
        let prod: BigInt = d.iter().product();
        prop_assert_eq!(prod, a.determinant().unwrap().abs());
    }

    #[test]
    fn integer_solutions_check(a in matrix(4, 6), x in prop::collection::vec(-5i64..=5, 4)) {
        // Build a right-hand side that is known to be solvable.
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let c = a.mul_vec(&x).unwrap();
        let sol = solve_integer(&a, &c).unwrap().expect("A x is in the image");
        prop_assert_eq!(a.mul_vec(&sol).unwrap(), c);
    }

    #[test]
    fn solve_mod_matches_enumeration(
        a in matrix(3, 3),
        m in 2i64..=4,
        seed in prop::collection::vec(0i64..100, 3),
    ) {
        let c: Vec<i64> = seed[..a.rows()].iter().map(|v| v % m).collect();
        let cb: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        let out = solve_mod(&a, &cb, &BigInt::from(m)).unwrap();
        prop_assert_eq!(out.is_solvable(), exhaustive(&a, &c, m));
        match out.status {
            SolveStatus::Solvable => {
                let w = out.witness.unwrap();
                prop_assert!(w.iter().all(|v| !v.is_negative() && v < &BigInt::from(m)));
                let aw = a.mul_vec(&w).unwrap();
                for (l, r) in aw.iter().zip(&cb) {
                    prop_assert!((l - r).is_multiple_of(&BigInt::from(m)));
                }
            }
            SolveStatus::Unsolvable => prop_assert!(out.certificate.unwrap().is_valid()),
        }
    }

    #[test]
    fn solve_mod_matches_augmented_integer_system(
        a in matrix(3, 5),
        m in 2i64..=12,
        seed in prop::collection::vec(-30i64..30, 3),
    ) {
        let c: Vec<BigInt> = seed[..a.rows()].iter().map(|&v| BigInt::from(v)).collect();
        let scaled = IntegerMatrix::identity(a.rows()).unwrap();
        let entries: Vec<BigInt> = scaled.entries().iter().map(|e| e * m).collect();
        let mi = IntegerMatrix::new(a.rows(), a.rows(), entries).unwrap();
        let augmented = a.hstack(&mi).unwrap();
        let integer = solve_integer(&augmented, &c).unwrap().is_some();
        prop_assert_eq!(solve_mod(&a, &c, &BigInt::from(m)).unwrap().is_solvable(), integer);
    }

    #[test]
    fn modulus_one_always_solvable(a in matrix(3, 9), seed in prop::collection::vec(-9i64..9, 3)) {
        let c: Vec<BigInt> = seed[..a.rows()].iter().map(|&v| BigInt::from(v)).collect();
        let out = solve_mod(&a, &c, &BigInt::one()).unwrap();
        prop_assert!(out.witness.unwrap().iter().all(Zero::is_zero));
    }
}

#[test]
fn big_entries_survive() {
    let huge: BigInt = "340282366920938463463374607431768211457".parse().unwrap();
    let a = IntegerMatrix::new(
        2,
        2,
        vec![huge.clone(), BigInt::from(1), BigInt::from(0), huge.clone()],
    )
    .unwrap();
    let r = snf(&a).unwrap();
    assert!(r.reproduces(&a));
    assert_eq!(r.diagonal()[1], &huge * &huge);
}
