//! Ext_A(k, k) for A = k[x]/x^2 with |x| = 2: one class in every
//! non-positive degree.

use hss::cli::fixtures::fixture;
use hss::exactla::PrimeField;
use hss::hochschild::ext_algebra;

fn main() {
    let f2 = PrimeField::new(2).unwrap();
    let a = fixture("e2_f2").unwrap().parse().build(&f2).unwrap();
    let ext = ext_algebra(&a, 8, 1 << 20).unwrap();
    println!("Ext dims {:?}", ext.table.dims());
    for n in ext.table.degrees() {
        println!("  {n:>3}: {:?}", ext.table.labels(n));
    }
    ext.table.check_associative().unwrap();
}
