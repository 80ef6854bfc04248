//! The structural checks on the pages: E^1 and E^2 identifications,
//! Leibniz, column-0 survivors and the abutment to HH*.

use hss::cli::fixtures::fixture;
use hss::exactla::PrimeField;
use hss::specseq::{abutment, column_zero_survivors, e1_term, e2_identification, leibniz, spectral_sequence};

fn main() {
    let f2 = PrimeField::new(2).unwrap();
    let a = fixture("e3_f2").unwrap().parse().build(&f2).unwrap();
    let budget = 1 << 22;
    let (hh, ss) = spectral_sequence(&a, 8, budget).unwrap();
    let e2 = e2_identification(&a, &hh, &ss, budget).unwrap();
    let checks = [
        e1_term(&a, &ss, budget).unwrap().0,
        e2.check_dims(&ss),
        e2.check_products(&a, &hh, &ss),
        leibniz(&hh, &ss),
        column_zero_survivors(&a, &hh, &ss, &e2, budget).unwrap().0,
        abutment(&hh, &ss).0,
    ];
    for c in checks {
        println!("{:5} {}: {}", c.passed, c.name, c.detail);
    }
}
