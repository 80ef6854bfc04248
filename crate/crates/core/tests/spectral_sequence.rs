use hss::cli::fixtures::fixture;
use hss::dga::DGAlgebra;
use hss::exactla::{Field, PrimeField, RationalField};
use hss::hochschild::{CohomologyAlgebra, DEFAULT_BUDGET};
use hss::specseq::{spectral_sequence, SpecSeqError, SpectralSequence};

fn load<F: Field>(name: &str, f: &F) -> DGAlgebra<F> {
    fixture(name).unwrap().parse().build(f).unwrap()
}

fn ss_of<F: Field>(name: &str, f: &F, w: i64) -> (CohomologyAlgebra<F>, SpectralSequence<F>) {
    spectral_sequence(&load(name, f), w, DEFAULT_BUDGET).unwrap()
}

#[test]
fn exterior_filtration_has_four_steps_and_three_coincide() {
    let (hh, ss) = ss_of("e1_q", &RationalField, 8);
    assert_eq!(ss.filtered.depth() + 1, 4);
    assert_eq!(ss.pages().len(), 4);
    let full = hh.complex.sparse();
    for n in full.lo()..=full.hi() {
        assert!(full.filtration(n).iter().all(|&p| p == 0 || p == -3), "degree {n}");
        for p in [-1, -2] {
            assert_eq!(ss.filtered.subspace(n, p), ss.filtered.subspace(n, -3));
        }
    }
}

#[test]
fn exterior_collapses_at_page_two() {
    let (_, ss) = ss_of("e1_q", &RationalField, 8);
    assert_eq!(ss.collapse_page(), 2);
    assert!(ss.pages()[1..].iter().all(|pg| pg.is_zero_differential()));
}

#[test]
fn cup_respects_the_filtration_on_e3() {
    let (hh, _) = ss_of("e3_q", &RationalField, 6);
    let hc = &hh.complex;
    let full = hc.sparse();
    let f = RationalField;
    let mut pairs = 0;
    for n1 in -3..=3 {
        for n2 in -3..=3 {
            let left: Vec<usize> = (0..full.dim(n1)).filter(|&j| full.filtration(n1)[j] == -2).collect();
            let right: Vec<usize> = (0..full.dim(n2)).filter(|&j| full.filtration(n2)[j] == -3).collect();
            for &i in left.iter().take(6) {
                for &j in right.iter().take(6) {
                    let Some(c) = hc.cup(n1, &[(i as u32, f.one())], n2, &[(j as u32, f.one())]) else { continue };
                    assert!(
                        c.iter().all(|(k, _)| full.filtration(n1 + n2)[*k as usize] <= -5),
                        "{} ⌣ {}",
                        hc.label(n1, i),
                        hc.label(n2, j)
                    );
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 0);
}

#[test]
fn pages_shrink() {
    for (name, p) in [("e2_q", 0u64), ("e2_f2", 2), ("e3_q", 0), ("e3_f2", 2)] {
        let totals: Vec<Vec<usize>> = if p == 0 {
            let (_, ss) = ss_of(name, &RationalField, 8);
            ss.pages().iter().map(|pg| (-8..=8).map(|n| pg.total_dim(n)).collect()).collect()
        } else {
            let (_, ss) = ss_of(name, &PrimeField::new(p).unwrap(), 8);
            ss.pages().iter().map(|pg| (-8..=8).map(|n| pg.total_dim(n)).collect()).collect()
        };
        for pair in totals.windows(2) {
            assert!(pair[0].iter().zip(&pair[1]).all(|(a, b)| a >= b), "{name}");
        }
    }
}

#[test]
fn e3_has_a_first_differential_from_degree_three() {
    let (_, ss) = ss_of("e3_q", &RationalField, 8);
    let e1 = ss.page(1).unwrap();
    assert!(e1.differentials().any(|(&(n, _), m)| n == 3 && !m.is_zero()));
}

#[test]
fn unit_class_acts_as_identity_on_every_page() {
    let f = PrimeField::new(2).unwrap();
    let (hh, ss) = ss_of("e3_f2", &f, 6);
    let unit_cochain = hh.representative_of(0, hh.table.unit());
    let unit = hh.reduction.project(0, &unit_cochain);
    for r in 1..=ss.pages().len() {
        let pg = ss.page(r).unwrap();
        let u = pg.cell(0, 0).unwrap().coordinates(&f, &unit);
        assert!(u.iter().any(|c| !f.is_zero(c)), "unit vanishes on E^{r}");
        for cell in pg.cells() {
            for i in 0..cell.dim() {
                let mut e = vec![f.zero(); cell.dim()];
                e[i] = f.one();
                let prod = ss.product(&hh, r, (0, 0, &u), (cell.n, cell.p, &e)).unwrap().unwrap();
                assert_eq!(prod, e, "E^{r}({},{})", cell.n, cell.p);
            }
        }
    }
}

#[test]
fn page_zero_is_rejected() {
    let (_, ss) = ss_of("e1_q", &RationalField, 4);
    assert_eq!(ss.page(0).unwrap_err(), SpecSeqError::PageIndex(0));
    assert_eq!(ss.page(99).unwrap().r, ss.infinity().r);
}

#[test]
fn frobenius_needs_positive_characteristic() {
    let a = load("e2_q", &RationalField);
    let (hh, ss) = spectral_sequence(&a, 6, DEFAULT_BUDGET).unwrap();
    let e2 = hss::specseq::e2_identification(&a, &hh, &ss, DEFAULT_BUDGET).unwrap();
    assert!(matches!(hss::specseq::frobenius_cycles(&ss, &e2, None), Err(SpecSeqError::NeedsPositiveCharacteristic(_))));
}
