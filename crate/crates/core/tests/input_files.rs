use hss::cli::fixtures::{fixture, FIXTURES};
use hss::cli::DGAFile;
use hss::exactla::{PrimeField, RationalField};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn parse(s: &str) -> Result<DGAFile, String> {
    s.parse::<DGAFile>().map_err(|e| e.to_string())
}

#[test]
fn fixtures_parse_and_round_trip() {
    for fx in &FIXTURES {
        let file = fx.parse();
        let printed = file.to_string();
        assert_eq!(printed.parse::<DGAFile>().unwrap(), file, "{}", fx.name);
        assert_eq!(printed.parse::<DGAFile>().unwrap().to_string(), printed);
    }
}

#[test]
fn exterior_fixture_has_two_basis_elements() {
    let file = fixture("e1_q").unwrap().parse();
    assert_eq!(file.basis, vec![("1".to_string(), 0), ("x".to_string(), 3)]);
    assert_eq!(file.characteristic, 0);
}

#[test]
fn fixtures_build_over_their_fields() {
    for fx in &FIXTURES {
        let file = fx.parse();
        let valid = if file.characteristic == 0 {
            file.build(&RationalField).unwrap().validate().is_valid()
        } else {
            file.build(&PrimeField::new(file.characteristic).unwrap()).unwrap().validate().is_valid()
        };
        assert!(valid, "{}", fx.name);
    }
}

#[test]
fn duplicate_label_names_label_and_line() {
    let e = parse("[field]\ncharacteristic = 2\n[basis]\n1 0\nx 2\ny 3\nx 4\n").unwrap_err();
    assert!(e.contains("line 7"), "{e}");
    assert!(e.contains("`x`"), "{e}");
    assert!(e.contains("line 5"), "{e}");
}

#[test]
fn characteristic_must_be_zero_or_prime() {
    let e = parse("[field]\ncharacteristic = 4\n[basis]\n1 0\n").unwrap_err();
    assert!(e.contains("characteristic must be 0 or prime"), "{e}");
    assert!(e.starts_with("line 2"), "{e}");
}

#[test]
fn syntax_errors_are_positioned() {
    let cases = [
        ("[field]\ncharacteristic = 0\n[basis]\n1 0\n[mystery]\n", "line 5", "unknown section"),
        ("[field]\ncolour = 0\n", "line 2", "unknown key"),
        ("[field]\ncharacteristic = 0\n[basis]\n1 0\nx 2\n[d]\nx = 2/0*x\n", "line 7", "division by zero"),
        ("[field]\ncharacteristic = 0\n[basis]\n1 0\nx 2\n[d]\nx = 2.5*x\n", "line 7", "malformed scalar"),
        ("[field]\ncharacteristic = 0\n[basis]\nx 2\n", "line 4", "`1 0`"),
        ("[field]\ncharacteristic = 0\n[basis]\n1 0\nx 2\n[mul]\n1*x = x\n", "line 7", "implied"),
        ("[field]\ncharacteristic = 0\n[basis]\n1 0\nx 2\n[mul]\nx*x = y\n", "line 7", "unknown basis element `y`"),
        ("[field]\ncharacteristic = 3\n[basis]\n1 0\nx 2\n[d]\nx = 1/3*x\n", "line 7", "divisible by 3"),
        ("[basis]\n1 0\n", "line 0", "[field]"),
        ("x 2\n", "line 1", "before the first section"),
    ];
    for (src, line, needle) in cases {
        let e = parse(src).unwrap_err();
        assert!(e.starts_with(line) && e.contains(needle), "{src:?}: {e}");
    }
}

#[test]
fn terms_and_comments() {
    let f =
        parse("# comment\n[field]\ncharacteristic = 0 # Q\n[basis]\n1 0\nx 2\ny 2\n\n[d]\nx = 0\n[mul]\nx*y = -x + 3/2*y - 2*x\n").unwrap();
    assert!(f.d[0].1.is_empty());
    let terms = &f.mul[0].1;
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(terms, &vec![(r(-1, 1), "x".to_string()), (r(3, 2), "y".to_string()), (r(-2, 1), "x".to_string())]);
    assert_eq!(f.to_string().lines().last().unwrap(), "x*y = -x + 3/2*y - 2*x");
}

fn arbitrary_file() -> impl Strategy<Value = DGAFile> {
    let names = ["x", "y", "z", "w^2", "u_1", "v'"];
    (prop::sample::select(vec![0u64, 2, 3, 5]), 0usize..=names.len(), prop::collection::vec((-6i64..=6, 1i64..=4), 0..40)).prop_map(
        move |(p, k, coeffs)| {
            let basis: Vec<(String, i64)> = std::iter::once(("1".to_string(), 0))
                .chain(names[..k].iter().enumerate().map(|(i, n)| (n.to_string(), 2 + i as i64)))
                .collect();
            let mut coeffs = coeffs.into_iter().map(|(n, d)| {
                let d = if p > 0 && (d as u64).is_multiple_of(p) { 1 } else { d };
                BigRational::new(BigInt::from(n), BigInt::from(d))
            });
            let mut terms = |len: usize| -> Vec<(BigRational, String)> {
                (0..len).filter_map(|i| coeffs.next().map(|c| (c, basis[i % basis.len()].0.clone()))).collect()
            };
            let d = basis.iter().skip(1).step_by(2).map(|(n, _)| (n.clone(), terms(2))).collect();
            let mut mul = Vec::new();
            for (a, _) in basis.iter().skip(1) {
                for (b, _) in basis.iter().skip(1).take(2) {
                    mul.push(((a.clone(), b.clone()), terms(3)));
                }
            }
            DGAFile { characteristic: p, basis, d, mul }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_is_identity(file in arbitrary_file()) {
        let printed = file.to_string();
        let back: DGAFile = printed.parse().map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(back, file);
    }
}
