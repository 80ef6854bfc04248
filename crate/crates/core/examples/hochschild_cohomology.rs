//! HH*(A) with its cup-product table for the exterior algebra on a
//! degree-3 class, and a check that the complex squares to zero.

use hss::cli::fixtures::fixture;
use hss::exactla::RationalField;
use hss::hochschild::hh_algebra;

fn main() {
    let a = fixture("e1_q").unwrap().parse().build(&RationalField).unwrap();
    let hh = hh_algebra(&a, 8, 1 << 20).unwrap();
    assert!(hh.complex.sparse().find_dd_violation().is_none());
    println!("HH dims {:?}", hh.table.dims());
    for e in hh.table.entries().iter().take(12) {
        println!("  {} * {} = {}", e.left, e.right, e.product);
    }
    hh.table.check_graded_commutative().unwrap();
    println!("graded commutative on the window");
}
