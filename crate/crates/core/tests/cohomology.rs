use std::collections::BTreeMap;

use hss::cli::fixtures::fixture;
use hss::dga::DGAlgebra;
use hss::exactla::{Field, PrimeField, RationalField};
use hss::hochschild::{ext_algebra, hh_algebra, shearing, HochschildComplex, DEFAULT_BUDGET};

fn load<F: Field>(name: &str, f: &F) -> DGAlgebra<F> {
    fixture(name).unwrap().parse().build(f).unwrap()
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

#[test]
fn differential_onto_the_unit_is_named() {
    let file = "[field]\ncharacteristic = 0\n[basis]\n1 0\nx 3\n[d]\nx = 1\n".parse::<hss::cli::DGAFile>().unwrap();
    let a = file.build(&RationalField).unwrap();
    let err = a.ensure_valid().unwrap_err().to_string();
    assert!(err.contains('x'), "{err}");
}

#[test]
fn coefficient_filtration_is_multiplicative() {
    for name in ["e0_q", "e1_q", "e2_q", "e3_q"] {
        let a = load(name, &RationalField);
        let top = a.top_degree();
        for n in 0..=top + 1 {
            for m in 0..=top + 1 {
                for i in (0..a.dim()).filter(|&i| a.degree(i) >= n) {
                    for j in (0..a.dim()).filter(|&j| a.degree(j) >= m) {
                        assert!(a.mul(i, j).iter().all(|(k, _)| a.degree(*k as usize) >= n + m), "{name}: J({n})·J({m})");
                    }
                }
            }
        }
    }
}

#[test]
fn ground_field_has_trivial_hochschild_cohomology() {
    for f in [0u64, 2] {
        let dims = if f == 0 {
            hh_algebra(&load("e0_q", &RationalField), 8, DEFAULT_BUDGET).unwrap().table.dims()
        } else {
            hh_algebra(&load("e0_f2", &f2()), 8, DEFAULT_BUDGET).unwrap().table.dims()
        };
        assert_eq!(dims, BTreeMap::from([(0, 1)]));
    }
}

fn ext_dims<F: Field>(a: &DGAlgebra<F>, w: i64) -> BTreeMap<i64, usize> {
    ext_algebra(a, w, DEFAULT_BUDGET).unwrap().table.dims()
}

#[test]
fn exterior_ext_is_polynomial_on_degree_minus_two() {
    let expect: BTreeMap<i64, usize> = (0..=5).map(|k| (-2 * k, 1)).collect();
    assert_eq!(ext_dims(&load("e1_q", &RationalField), 10), expect);
    assert_eq!(ext_dims(&load("e1_f2", &f2()), 10), expect);
}

#[test]
fn truncated_ext_is_one_dimensional_in_every_nonpositive_degree() {
    let expect: BTreeMap<i64, usize> = (-10..=0).map(|n| (n, 1)).collect();
    assert_eq!(ext_dims(&load("e2_q", &RationalField), 10), expect);
    assert_eq!(ext_dims(&load("e2_f2", &f2()), 10), expect);
}

#[test]
fn square_of_the_ext_generator_generates_degree_minus_four() {
    let q = RationalField;
    let ext = ext_algebra(&load("e1_q", &q), 8, DEFAULT_BUDGET).unwrap();
    let t = &ext.table;
    let y1 = t.basis_vector(-2, 0);
    let y1y1 = t.product(-2, &y1, -2, &y1).unwrap();
    assert_eq!(y1y1.len(), 1);
    assert!(!q.is_zero(&y1y1[0]));
    let y2 = t.basis_vector(-4, 0);
    let y1y2 = t.product(-2, &y1, -4, &y2).unwrap();
    assert!(!q.is_zero(&y1y2[0]));
}

#[test]
fn hochschild_differential_squares_to_zero() {
    let q = RationalField;
    for name in ["e1_q", "e2_q", "e3_q"] {
        let a = load(name, &q);
        let hc = HochschildComplex::with_algebra(&a, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(hc.sparse().find_dd_violation(), None, "{name}");
        assert_eq!(hc.sparse().find_filtration_violation(), None, "{name}");
    }
    let a = load("e3_f2", &f2());
    let hc = HochschildComplex::with_ground(&a, 10, DEFAULT_BUDGET).unwrap();
    assert_eq!(hc.sparse().find_dd_violation(), None);
}

#[test]
fn algebra_tables_are_unital_and_associative() {
    let q = RationalField;
    for name in ["e1_q", "e2_q", "e3_q"] {
        let a = load(name, &q);
        let hh = hh_algebra(&a, 8, DEFAULT_BUDGET).unwrap();
        hh.table.check_unit().unwrap();
        hh.table.check_associative().unwrap();
        hh.table.check_graded_commutative().unwrap();
        let ext = ext_algebra(&a, 8, DEFAULT_BUDGET).unwrap();
        ext.table.check_unit().unwrap();
        ext.table.check_associative().unwrap();
    }
}

#[test]
fn shearing_is_a_central_ring_map() {
    let q = RationalField;
    for name in ["e0_q", "e1_q", "e2_q", "e3_q"] {
        let a = load(name, &q);
        let (hh, ext, shr) = shearing(&a, 8, DEFAULT_BUDGET).unwrap();
        shr.check_ring_map(&hh.table, &ext.table).unwrap();
        shr.check_central(&ext.table).unwrap();
        assert_eq!(shr.image_dims().get(&0), Some(&1), "{name}: unit maps to unit");
    }
}

#[test]
fn window_growth_does_not_change_certified_degrees() {
    let a = load("e3_q", &RationalField);
    let small = hh_algebra(&a, 6, DEFAULT_BUDGET).unwrap().table.dims();
    let large = hh_algebra(&a, 9, DEFAULT_BUDGET).unwrap().table.dims();
    let restricted: BTreeMap<i64, usize> = large.into_iter().filter(|(n, _)| n.abs() <= 6).collect();
    assert_eq!(small, restricted);
}
