//! Over F_2 the powers x^(2^(r-1)) of an even Ext class survive to E^(r+1).

use hss::cli::fixtures::fixture;
use hss::exactla::PrimeField;
use hss::specseq::{e2_identification, frobenius_cycles, spectral_sequence};

fn main() {
    let f2 = PrimeField::new(2).unwrap();
    for name in ["e2_f2", "e3_f2"] {
        let a = fixture(name).unwrap().parse().build(&f2).unwrap();
        let (hh, ss) = spectral_sequence(&a, 8, 1 << 22).unwrap();
        let e2 = e2_identification(&a, &hh, &ss, 1 << 22).unwrap();
        let report = frobenius_cycles(&ss, &e2, None).unwrap();
        println!("{name}: {} ({})", report.check.detail, if report.check.passed { "ok" } else { "FAILED" });
        for row in report.rows {
            println!("  page {} power {} degree {}: {:?}", row.page, row.power, row.degree, row.survives);
        }
    }
}
