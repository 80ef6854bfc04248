use hss::exactla::{Field, Matrix, PrimeField, RationalField, Subspace};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)))
}

fn matrix<F: Field>(f: &F, cols: usize, rows: &[Vec<i64>]) -> Matrix<F> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64_rows(f, cols, &refs)
}

fn laws<F: Field>(f: &F, cols: usize, rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = matrix(f, cols, rows);
    let (r, pivots) = m.rref();
    let (rr, pivots2) = r.rref();
    prop_assert_eq!(&rr, &r);
    prop_assert_eq!(&pivots, &pivots2);
    prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));

    let ker = m.kernel_basis();
    for v in ker.basis_vecs() {
        prop_assert!(m.mul_vec(&v).iter().all(|e| f.is_zero(e)));
    }
    prop_assert_eq!(ker.dim() + m.rank(), cols);
    prop_assert_eq!(m.image_basis().dim(), m.rank());
    prop_assert_eq!(m.transpose().rank(), m.rank());
    Ok(())
}

fn subspace_laws<F: Field>(f: &F, cols: usize, a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let sa = Subspace::span(f, cols, matrix(f, cols, a).row_vecs());
    let sb = Subspace::span(f, cols, matrix(f, cols, b).row_vecs());
    let sum = sa.sum(&sb).unwrap();
    let meet = sa.intersect(&sb).unwrap();
    prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
    prop_assert!(sum.contains_subspace(&sa) && sum.contains_subspace(&sb));
    prop_assert!(sa.contains_subspace(&meet) && sb.contains_subspace(&meet));
    let reps = Subspace::quotient_representatives(&sum, &sa).unwrap();
    prop_assert_eq!(reps.len(), sum.dim() - sa.dim());
    let mut grown = sa.clone();
    for v in &reps {
        prop_assert!(grown.insert(v));
    }
    prop_assert_eq!(grown.dim(), sum.dim());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_laws_over_q((cols, rows) in small_matrix()) {
        laws(&RationalField, cols, &rows)?;
    }

    #[test]
    fn matrix_laws_over_prime_fields((cols, rows) in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        laws(&PrimeField::new(p).unwrap(), cols, &rows)?;
    }

    #[test]
    fn subspace_dimension_formula((cols, a) in small_matrix(), seed in prop::collection::vec(-3i64..=3, 64), p in prop::sample::select(vec![0u64, 2, 3])) {
        let b: Vec<Vec<i64>> = seed.chunks(cols).take(a.len()).map(<[i64]>::to_vec).filter(|r| r.len() == cols).collect();
        if p == 0 {
            subspace_laws(&RationalField, cols, &a, &b)?;
        } else {
            subspace_laws(&PrimeField::new(p).unwrap(), cols, &a, &b)?;
        }
    }

    #[test]
    fn rational_scalars_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = RationalField;
        let x = q.div(&q.from_i64(n), &q.from_i64(d));
        prop_assert_eq!(q.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn prime_scalars_round_trip(n in -10_000i64..10_000, p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
        let f = PrimeField::new(p).unwrap();
        let x = f.from_i64(n);
        prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn solve_recovers_a_known_solution() {
    let q = RationalField;
    let m = Matrix::from_i64_rows(&q, 3, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 3]]);
    let x: Vec<_> = [3, -1, 2].iter().map(|&v| q.from_i64(v)).collect();
    let b = m.mul_vec(&x);
    assert_eq!(m.solve(&b).unwrap(), x);
}

#[test]
fn non_primes_are_rejected() {
    for c in [0u64, 1, 4, 9, 15] {
        assert!(PrimeField::new(c).is_err(), "{c}");
    }
    assert!(PrimeField::new(65_521).is_ok());
}
