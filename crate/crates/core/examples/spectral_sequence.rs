//! Pages of the coefficient-filtration spectral sequence of E3, where
//! d^1, d^2 and d^5 are all nonzero.

use hss::cli::fixtures::fixture;
use hss::exactla::RationalField;
use hss::specseq::spectral_sequence;

fn main() {
    let a = fixture("e3_q").unwrap().parse().build(&RationalField).unwrap();
    let (_, ss) = spectral_sequence(&a, 6, 1 << 22).unwrap();
    for page in ss.pages() {
        let ranks: usize = page.differentials().map(|(_, m)| m.rank()).sum();
        println!("E^{}: total dim {:>3}, rank of d^{} = {ranks}", page.r, (-6..=6).map(|n| page.total_dim(n)).sum::<usize>(), page.r);
    }
    println!("collapses at page {}", ss.collapse_page());
    let inf = ss.infinity();
    for n in -3..=3 {
        let cells: Vec<String> = (-5..=0).filter(|&p| inf.dim(n, p) > 0).map(|p| format!("p={p}:{}", inf.dim(n, p))).collect();
        println!("  E^∞ in total degree {n:>2}: {}", cells.join(" "));
    }
}
