//! Row reduction, kernels and quotients over F_p and Q.

use hss::exactla::{Field, Matrix, PrimeField, RationalField, Subspace};

fn main() {
    let rows: &[&[i64]] = &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]];

    let q = RationalField;
    let m = Matrix::from_i64_rows(&q, 4, rows);
    let (r, pivots) = m.rref();
    println!("over Q: rank {}, pivots {pivots:?}", m.rank());
    for row in r.row_vecs() {
        println!("  {}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    }
    for v in m.kernel_basis().basis_vecs() {
        assert!(m.mul_vec(&v).iter().all(|e| q.is_zero(e)));
        println!("kernel vector {v:?}");
    }

    // Over F_3 the first column vanishes after the second row is subtracted twice.
    let f3 = PrimeField::new(3).unwrap();
    let m3 = Matrix::from_i64_rows(&f3, 4, rows);
    println!("over F_3: rank {}, nullity {}", m3.rank(), m3.kernel_basis().dim());

    let row_space = Subspace::span(&q, 4, m.row_vecs());
    let reps = Subspace::quotient_representatives(&Subspace::full(&q, 4), &row_space).unwrap();
    println!("Q^4 / row space: representatives {reps:?}");
}
