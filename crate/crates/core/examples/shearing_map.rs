//! The shearing map HH*(A) -> Ext_A(k, k): image, kernel, centrality and
//! the nilpotency of the kernel.

use hss::cli::fixtures::fixture;
use hss::exactla::RationalField;
use hss::hochschild::{nilpotency_index, shearing};

fn main() {
    let a = fixture("e3_q").unwrap().parse().build(&RationalField).unwrap();
    let (hh, ext, shr) = shearing(&a, 8, 1 << 22).unwrap();
    println!("image dims  {:?}", shr.image_dims());
    println!("kernel dims {:?}", shr.kernel_dims());
    shr.check_ring_map(&hh.table, &ext.table).unwrap();
    shr.check_central(&ext.table).unwrap();
    println!("ring map with central image");
    println!("kernel nilpotency {:?}", nilpotency_index(&shr.kernel, &hh.table, 8));
}
