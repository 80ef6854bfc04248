//! A small cochain complex and its cohomology with representatives.

use std::collections::BTreeMap;

use hss::exactla::{Matrix, RationalField};
use hss::graded::{CochainComplex, GradedVectorSpace};

fn main() {
    let q = RationalField;
    // Simplicial cochains of a hollow triangle: H^0 = H^1 = Q.
    let space =
        GradedVectorSpace::from_pieces([(0, vec!["a".into(), "b".into(), "c".into()]), (1, vec!["ab".into(), "bc".into(), "ca".into()])])
            .unwrap();
    let d0 = Matrix::from_i64_rows(&q, 3, &[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]]);
    let c = CochainComplex::new(&q, space, BTreeMap::from([(0, d0)]), None).unwrap();
    println!("cohomology dims {:?}", c.cohomology_dims());
    for n in [0, 1] {
        let h = c.cohomology(n).unwrap();
        println!("H^{n}: representatives {:?}", h.representatives());
    }
}
