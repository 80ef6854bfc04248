//! Building an algebra by hand, validating it and forming A^e.

use hss::dga::DGAlgebra;
use hss::exactla::{Field, RationalField};

fn main() {
    let q = RationalField;
    let one = || q.one();
    let s = |x: &str| x.to_string();
    let a = DGAlgebra::new(
        &q,
        &[(s("1"), 0), (s("x"), 2), (s("z"), 3), (s("x^2"), 4), (s("xz"), 5)],
        &[(s("z"), vec![(one(), s("x^2"))])],
        &[
            ((s("x"), s("x")), vec![(one(), s("x^2"))]),
            ((s("x"), s("z")), vec![(one(), s("xz"))]),
            ((s("z"), s("x")), vec![(one(), s("xz"))]),
        ],
    )
    .unwrap();
    let report = a.validate();
    println!("valid: {}", report.is_valid());
    println!("H*(A) dims {:?}, d = {:?}", report.cohomology_dims, report.top_cohomology_degree);

    // A Leibniz violation is reported with its witnesses.
    let broken = DGAlgebra::new(&q, &[(s("1"), 0), (s("x"), 2), (s("y"), 3)], &[(s("x"), vec![(one(), s("y"))])], &[]).unwrap();
    for v in broken.validate().violations {
        println!("{:?}: {} {:?}", v.axiom, v.detail, v.witnesses);
    }

    let e = a.enveloping();
    println!("A^e basis dims {:?}", e.basis().dims());
}
