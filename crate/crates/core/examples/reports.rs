//! Parsing an input file, running a command and rendering the report as
//! text, structured data and an SVG page chart.

use hss::cli::{render, run_source, Command, DGAFile, Format, Options};

const SOURCE: &str = "\
[field]
characteristic = 0

[basis]
1 0
x 2
z 3
x^2 4
xz 5

[d]
z = x^2

[mul]
x*x = x^2
x*z = xz
z*x = xz
";

fn main() {
    let file: DGAFile = SOURCE.parse().unwrap();
    let printed = file.to_string();
    assert_eq!(printed.parse::<DGAFile>().unwrap(), file);

    let opts = Options { window: 6, ..Options::default() };
    let report = run_source(Command::Ss, SOURCE, &opts).unwrap();
    println!("{}", render(&report, Format::Text).unwrap());
    let data = render(&report, Format::Data).unwrap();
    println!("structured report: {} bytes", data.len());
    let svg = render(&report, Format::Svg).unwrap();
    let path = std::env::temp_dir().join("e3_pages.svg");
    std::fs::write(&path, svg).unwrap();
    println!("chart written to {}", path.display());

    let err = "[field]\ncharacteristic = 4\n".parse::<DGAFile>().unwrap_err();
    println!("{err}");
}
