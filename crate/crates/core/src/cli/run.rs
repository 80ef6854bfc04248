use std::collections::BTreeMap;

use thiserror::Error;

use crate::dga::{DGAlgebra, DGBimodule, DgaError};
use crate::exactla::{Field, PrimeField, RationalField, ScalarError};
use crate::hochschild::unnormalized::UnnormalizedOracle;
use crate::hochschild::{
    ext_algebra, hh_algebra, nilpotency_index, shearing, CohomologyAlgebra, HochschildError, Nilpotency, DEFAULT_BUDGET,
};
use crate::specseq::{self, Check, SpecSeqError, SpectralSequence};

use super::parse::{DGAFile, ParseError};
use super::report::{Arrow, Body, GridCell, PageGrid, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Homology,
    Hh,
    Ext,
    Shear,
    Ss,
    CheckAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Homology => "homology",
            Command::Hh => "hh",
            Command::Ext => "ext",
            Command::Shear => "shear",
            Command::Ss => "ss",
            Command::CheckAll => "check-all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Data,
    Svg,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub window: i64,
    /// Pages shown by `ss`; all computed pages by default.
    pub pages: Option<usize>,
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { window: 8, pages: None, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    /// 1 for failed internal consistency checks, 2 for bad input or flags.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::SpecSeq(SpecSeqError::Internal(_) | SpecSeqError::NotFiltered(_)) => 1,
            _ => 2,
        }
    }
}

/// Parses `source` and runs `command` on it.
pub fn run_source(command: Command, source: &str, opts: &Options) -> Result<Report, RunError> {
    let file: DGAFile = source.parse()?;
    run_file(command, &file, source.as_bytes(), opts)
}

/// Runs `command` on a parsed file; `bytes` are digested into the report.
pub fn run_file(command: Command, file: &DGAFile, bytes: &[u8], opts: &Options) -> Result<Report, RunError> {
    if opts.window < 0 {
        return Err(RunError::Usage(format!("window must be non-negative (got {})", opts.window)));
    }
    if opts.pages == Some(0) {
        return Err(RunError::Usage("--pages must be at least 1".into()));
    }
    match file.characteristic {
        0 => run_with(&RationalField, command, file, bytes, opts),
        p => run_with(&PrimeField::new(p)?, command, file, bytes, opts),
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, RunError> {
    match format {
        Format::Text => Ok(report.to_text()),
        Format::Data => Ok(report.to_data()),
        Format::Svg => {
            report.to_svg().ok_or_else(|| RunError::Usage(format!("`{}` has no page charts; use ss or check-all", report.command)))
        }
    }
}

fn run_with<F: Field>(f: &F, command: Command, file: &DGAFile, bytes: &[u8], opts: &Options) -> Result<Report, RunError> {
    let a = file.build(f)?;
    let mut rep = Report::new(command.name(), bytes, f.spec().to_string(), opts.window);
    if command == Command::Validate {
        validate(&a, &mut rep);
        return Ok(rep);
    }
    a.ensure_valid()?;
    let (w, b) = (opts.window, opts.budget);
    match command {
        Command::Validate => unreachable!(),
        Command::Homology => homology(&a, &mut rep)?,
        Command::Hh => {
            let hh = hh_algebra(&a, w, b)?;
            algebra_sections(&mut rep, "HH", &hh, true);
        }
        Command::Ext => {
            let ext = ext_algebra(&a, w, b)?;
            algebra_sections(&mut rep, "Ext", &ext, false);
        }
        Command::Shear => {
            shear(&a, &mut rep, w, b)?;
        }
        Command::Ss => {
            let (_, ss) = specseq::spectral_sequence(&a, w, b)?;
            pages_section(&mut rep, &ss, opts.pages);
            rep.push("spectral sequence checks", Body::Checks { checks: vec![specseq::square_zero(&ss), specseq::lineage(&ss)] });
        }
        Command::CheckAll => check_all(&a, &mut rep, w, b)?,
    }
    Ok(rep)
}

fn validate<F: Field>(a: &DGAlgebra<F>, rep: &mut Report) {
    let v = a.validate();
    let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
    rep.push(
        "algebra",
        Body::Facts {
            facts: vec![
                ("basis".into(), a.dim().to_string()),
                ("coconnective".into(), yes(v.coconnective)),
                ("simply connected".into(), yes(v.simply_connected)),
                ("finite type".into(), yes(v.finite_type)),
                ("bounded".into(), yes(v.top_cohomology_degree.is_some())),
                ("d".into(), v.top_cohomology_degree.map_or("-".into(), |d| d.to_string())),
            ],
        },
    );
    rep.push("basis dimensions", Body::Dims { dims: v.basis_dims.clone() });
    rep.push("H*(A) dimensions", Body::Dims { dims: v.cohomology_dims.clone() });
    let checks = if v.violations.is_empty() {
        vec![Check::new("DGA axioms", Ok(format!("all axioms hold on {} basis elements", a.dim())))]
    } else {
        v.violations
            .iter()
            .map(|x| Check::new(format!("{:?}", x.axiom), Err(format!("{} [{}]", x.detail, x.witnesses.join(", ")))))
            .collect()
    };
    rep.push("validation", Body::Checks { checks });
}

fn homology<F: Field>(a: &DGAlgebra<F>, rep: &mut Report) -> Result<(), RunError> {
    let h = a.cohomology().map_err(DgaError::from)?;
    let f = a.field();
    rep.push("H*(A) dimensions", Body::Dims { dims: h.iter().map(|(n, (p, _))| (*n, p.dim())).collect() });
    let mut classes = Vec::new();
    for (n, (_, reps)) in &h {
        for r in reps {
            let terms: Vec<String> = r
                .iter()
                .map(|(i, c)| if f.is_one(c) { a.name(*i as usize).to_string() } else { format!("{c}·{}", a.name(*i as usize)) })
                .collect();
            classes.push((*n, format!("[{}]", terms.join(" + "))));
        }
    }
    rep.push("cocycle representatives", Body::Classes { classes });
    Ok(())
}

fn algebra_sections<F: Field>(rep: &mut Report, name: &str, alg: &CohomologyAlgebra<F>, commutative: bool) {
    let t = &alg.table;
    rep.push(format!("{name} dimensions"), Body::Dims { dims: t.dims() });
    let classes = t.degrees().into_iter().flat_map(|n| t.labels(n).iter().map(move |l| (n, l.clone()))).collect();
    rep.push(format!("{name} classes"), Body::Classes { classes });
    rep.push(format!("{name} products"), Body::Products { entries: t.entries() });
    let mut checks = vec![
        square_zero_complex(alg),
        Check::new(format!("{name} unit"), t.check_unit().map(|_| "1 is a two-sided unit".into())),
        Check::new(format!("{name} associativity"), t.check_associative().map(|_| "all basis triples in the window".into())),
    ];
    if commutative {
        checks.push(Check::new(
            format!("{name} graded commutativity"),
            t.check_graded_commutative().map(|_| "all basis pairs in the window".into()),
        ));
    }
    rep.push(format!("{name} checks"), Body::Checks { checks });
}

fn square_zero_complex<F: Field>(alg: &CohomologyAlgebra<F>) -> Check {
    let c = &alg.complex;
    let name = format!("δ² = 0 ({:?} coefficients)", c.kind()).to_lowercase();
    Check::new(
        name,
        match c.sparse().find_dd_violation() {
            None => Ok(format!("degrees {}..{}", c.lo(), c.hi())),
            Some((n, j)) => Err(format!("δ² ≠ 0 on {} in degree {n}", c.label(n, j))),
        },
    )
}

/// The d/2 sharpening: with `A^1 = 0`, kernel classes sit in filtration
/// at most -2, so products of `⌊d/2⌋ + 1` of them vanish.
fn nilpotency_bound(d: i64) -> usize {
    (d / 2) as usize + 1
}

fn shear<F: Field>(a: &DGAlgebra<F>, rep: &mut Report, w: i64, b: usize) -> Result<(), RunError> {
    let (hh, ext, shr) = shearing(a, w, b)?;
    rep.push("HH dimensions", Body::Dims { dims: hh.table.dims() });
    rep.push("Ext dimensions", Body::Dims { dims: ext.table.dims() });
    shear_sections(a, rep, &hh, &ext, &shr, w);
    Ok(())
}

fn shear_sections<F: Field>(
    a: &DGAlgebra<F>,
    rep: &mut Report,
    hh: &CohomologyAlgebra<F>,
    ext: &CohomologyAlgebra<F>,
    shr: &crate::hochschild::Shearing<F>,
    w: i64,
) {
    rep.push("shearing image dimensions", Body::Dims { dims: shr.image_dims() });
    rep.push("shearing kernel dimensions", Body::Dims { dims: shr.kernel_dims() });
    let d = a.validate().top_cohomology_degree.unwrap_or(0);
    let bound = nilpotency_bound(d);
    let idx = nilpotency_index(&shr.kernel, &hh.table, 2 * w as usize + 2);
    let (idx_text, outcome) = match idx {
        Nilpotency::Index(k) if k <= bound => (k.to_string(), Ok(format!("index {k} ≤ {bound} (d = {d})"))),
        Nilpotency::Index(k) => (k.to_string(), Err(format!("index {k} exceeds {bound} (d = {d})"))),
        Nilpotency::ExceedsWindow(k) => {
            (format!("> {k} within the window"), Err(format!("products of {k} kernel classes survive in the window")))
        }
    };
    rep.push(
        "nilpotency",
        Body::Facts { facts: vec![("d".into(), d.to_string()), ("bound".into(), bound.to_string()), ("index".into(), idx_text)] },
    );
    rep.push(
        "shearing checks",
        Body::Checks {
            checks: vec![
                Check::new(
                    "shearing is a ring map",
                    shr.check_ring_map(&hh.table, &ext.table).map(|_| "all basis pairs in the window".into()),
                ),
                Check::new(
                    "shearing image is central",
                    shr.check_central(&ext.table).map(|_| "every image class graded-commutes with Ext".into()),
                ),
                Check::new("kernel nilpotency", outcome),
            ],
        },
    );
}

fn grid<F: Field>(pg: &specseq::Page<F>) -> PageGrid {
    let r = pg.r as i64;
    let cells = pg.cells().filter(|c| c.dim() > 0).map(|c| GridCell { p: c.p, q: c.q(), n: c.n, dim: c.dim() }).collect();
    let arrows = pg
        .differentials()
        .filter_map(|(&(n, p), m)| {
            let rank = m.rank();
            let q = -n - p;
            (rank > 0).then_some(Arrow { from: (p, q), to: (p - r, q + r - 1), rank })
        })
        .collect();
    PageGrid { r: pg.r, cells, arrows }
}

fn pages_section<F: Field>(rep: &mut Report, ss: &SpectralSequence<F>, pages: Option<usize>) {
    let computed = ss.pages().len();
    let shown = pages.unwrap_or(computed);
    let grids = (1..=shown).map(|r| grid(ss.page(r).expect("r ≥ 1"))).collect();
    let c = ss.collapse_page();
    let mut note = format!("collapsed at page {c}: E^{c} = E^∞");
    if shown > computed {
        note.push_str(&format!("; pages after E^{computed} equal E^∞"));
    }
    rep.push(
        "spectral sequence",
        Body::Facts {
            facts: vec![
                ("filtration depth".into(), ss.filtered.depth().to_string()),
                ("pages computed".into(), computed.to_string()),
                ("collapse page".into(), c.to_string()),
            ],
        },
    );
    rep.push("pages", Body::Pages { pages: grids, note });
}

fn oracle_check<F: Field>(a: &DGAlgebra<F>, m: &DGBimodule<F>, alg: &CohomologyAlgebra<F>, w: i64, name: &str) -> Check {
    let outcome = UnnormalizedOracle::new(a, m, w).and_then(|o| o.cohomology_dims()).and_then(|oracle| {
        let ours: BTreeMap<i64, usize> = alg.table.dims().into_iter().filter(|(n, _)| n.abs() <= w).collect();
        if ours == oracle {
            Ok(format!("{} nonzero degrees agree at window {w}", ours.len()))
        } else {
            Err(format!("reduced {ours:?} vs unnormalized {oracle:?}"))
        }
    });
    Check::new(format!("{name} = unnormalized-bar oracle"), outcome)
}

/// The oracle is quadratic in the window; it runs on at most this window.
pub const ORACLE_WINDOW: i64 = 8;

fn check_all<F: Field>(a: &DGAlgebra<F>, rep: &mut Report, w: i64, b: usize) -> Result<(), RunError> {
    validate(a, rep);
    let (hh, ext, shr) = shearing(a, w, b)?;
    algebra_sections(rep, "HH", &hh, true);
    algebra_sections(rep, "Ext", &ext, false);
    shear_sections(a, rep, &hh, &ext, &shr, w);

    let ow = w.min(ORACLE_WINDOW);
    rep.push(
        "oracle",
        Body::Checks {
            checks: vec![oracle_check(a, &DGBimodule::regular(a), &hh, ow, "HH"), oracle_check(a, &DGBimodule::ground(a), &ext, ow, "Ext")],
        },
    );

    let ss = SpectralSequence::new(&hh)?;
    pages_section(rep, &ss, None);
    let mut checks = vec![specseq::square_zero(&ss), specseq::lineage(&ss)];
    let (e1, _) = specseq::e1_term(a, &ss, b)?;
    checks.push(e1);
    let e2 = specseq::e2_identification(a, &hh, &ss, b)?;
    checks.push(e2.check_dims(&ss));
    checks.push(e2.check_direct(a, &ss, b)?);
    checks.push(e2.check_products(a, &hh, &ss));
    checks.push(specseq::leibniz(&hh, &ss));
    let (col0, _) = specseq::column_zero_survivors(a, &hh, &ss, &e2, b)?;
    checks.push(col0);
    let (abut, rows) = specseq::abutment(&hh, &ss);
    checks.push(abut);
    rep.push(
        "abutment",
        Body::Lines {
            lines: rows
                .iter()
                .map(|r| {
                    let e: Vec<String> = r.e_infinity.iter().map(|(p, d)| format!("{p}:{d}")).collect();
                    format!("n = {:>3}: HH {:>3}, E^∞ by p {{{}}}", r.n, r.hh, e.join(", "))
                })
                .collect(),
        },
    );
    if a.field().characteristic() > 0 {
        match specseq::frobenius_cycles(&ss, &e2, None) {
            Ok(fr) => {
                let mut lines = Vec::new();
                if let Some((m, label)) = &fr.class {
                    lines.push(format!("class {label} in degree {m} ({})", if fr.central { "central" } else { "not central" }));
                }
                for row in &fr.rows {
                    let s = match row.survives {
                        Some(true) => format!("survives to E^{}", row.page + 1),
                        Some(false) => format!("does not survive to E^{}", row.page + 1),
                        None => "is outside the window".into(),
                    };
                    lines.push(format!("page {}: power {} in degree {} {s}", row.page, row.power, row.degree));
                }
                rep.push("Frobenius powers", Body::Lines { lines });
                checks.push(fr.check);
            }
            Err(e @ SpecSeqError::NoEvenCentralClass) => checks.push(Check::new("Frobenius powers are d^r-cycles", Err(e.to_string()))),
            Err(e) => return Err(e.into()),
        }
    }
    rep.push("spectral sequence checks", Body::Checks { checks });
    Ok(())
}
