//! Cross-check of the reduced Hochschild complex against the
//! unnormalized bar construction.

use hss::cli::fixtures::FIXTURES;
use hss::dga::DGBimodule;
use hss::exactla::{PrimeField, RationalField};
use hss::hochschild::{hh_algebra, unnormalized::UnnormalizedOracle};

fn main() {
    let w = 6;
    for fx in &FIXTURES {
        let file = fx.parse();
        let (ours, oracle) = if file.characteristic == 0 {
            let a = file.build(&RationalField).unwrap();
            let o = UnnormalizedOracle::new(&a, &DGBimodule::regular(&a), w).unwrap();
            (hh_algebra(&a, w, 1 << 20).unwrap().table.dims(), o.cohomology_dims().unwrap())
        } else {
            let a = file.build(&PrimeField::new(file.characteristic).unwrap()).unwrap();
            let o = UnnormalizedOracle::new(&a, &DGBimodule::regular(&a), w).unwrap();
            (hh_algebra(&a, w, 1 << 20).unwrap().table.dims(), o.cohomology_dims().unwrap())
        };
        println!("{:6} {} {ours:?}", fx.name, if ours == oracle { "agree" } else { "DIFFER" });
    }
}
