//! The bundled example algebras, each over `F_2` and `Q`.

use super::parse::DGAFile;

pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

pub const FIXTURES: [Fixture; 8] = [
    Fixture { name: "e0_f2", source: include_str!("../../fixtures/e0_f2.dga") },
    Fixture { name: "e0_q", source: include_str!("../../fixtures/e0_q.dga") },
    Fixture { name: "e1_f2", source: include_str!("../../fixtures/e1_f2.dga") },
    Fixture { name: "e1_q", source: include_str!("../../fixtures/e1_q.dga") },
    Fixture { name: "e2_f2", source: include_str!("../../fixtures/e2_f2.dga") },
    Fixture { name: "e2_q", source: include_str!("../../fixtures/e2_q.dga") },
    Fixture { name: "e3_f2", source: include_str!("../../fixtures/e3_f2.dga") },
    Fixture { name: "e3_q", source: include_str!("../../fixtures/e3_q.dga") },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn parse(&self) -> DGAFile {
        self.source.parse().expect("bundled fixtures parse")
    }
}
