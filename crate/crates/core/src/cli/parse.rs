use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::dga::{DGAlgebra, DgaError};
use crate::exactla::{is_prime, Field};

/// Syntax error with the 1-based line it occurred on (0 for the whole file).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// `Σ c_i · name_i`, coefficients kept exactly as written.
pub type Terms = Vec<(BigRational, String)>;

/// A parsed input file, before any semantic checks beyond name resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGAFile {
    pub characteristic: u64,
    pub basis: Vec<(String, i64)>,
    pub d: Vec<(String, Terms)>,
    pub mul: Vec<((String, String), Terms)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Field,
    Basis,
    D,
    Mul,
}

fn valid_name(s: &str) -> bool {
    if s == "1" {
        return true;
    }
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '^' | '\'' | '.' | '{' | '}'))
}

fn parse_scalar(line: usize, s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError { line, message: format!("malformed scalar `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return err(line, format!("division by zero in scalar `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

/// `c1*name1 + name2 - c3*name3`, or `0`.
fn parse_terms(line: usize, s: &str) -> Result<Terms, ParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return err(line, "missing right-hand side");
    }
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = t.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => return err(line, format!("expected `+` or `-` before `{rest}`")),
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (c, name) = match term.split_once('*') {
            Some((c, name)) => (parse_scalar(line, c)?, name),
            None => (BigRational::one(), term),
        };
        if !valid_name(name) {
            return err(line, format!("malformed term `{term}`"));
        }
        out.push((if negative { -c } else { c }, name.to_string()));
    }
    Ok(out)
}

impl FromStr for DGAFile {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut section = None;
        let mut seen_sections: Vec<(&str, usize)> = Vec::new();
        let mut characteristic = None;
        let mut basis: Vec<(String, i64)> = Vec::new();
        let mut basis_lines: Vec<usize> = Vec::new();
        let mut d = Vec::new();
        let mut d_lines = Vec::new();
        let mut mul = Vec::new();
        let mut mul_lines = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
                let name = name.trim();
                section = Some(match name {
                    "field" => Section::Field,
                    "basis" => Section::Basis,
                    "d" => Section::D,
                    "mul" => Section::Mul,
                    other => return err(line, format!("unknown section `[{other}]`")),
                });
                if let Some((_, first)) = seen_sections.iter().find(|(s, _)| *s == name) {
                    return err(line, format!("section `[{name}]` already opened on line {first}"));
                }
                seen_sections.push((name, line));
                continue;
            }
            match section {
                None => return err(line, "content before the first section header"),
                Some(Section::Field) => {
                    let Some((key, value)) = content.split_once('=') else {
                        return err(line, "expected `characteristic = N`");
                    };
                    if key.trim() != "characteristic" {
                        return err(line, format!("unknown key `{}`", key.trim()));
                    }
                    if characteristic.is_some() {
                        return err(line, "characteristic given twice");
                    }
                    let value = value.trim();
                    let c: u64 = value.parse().map_err(|_| ParseError { line, message: format!("malformed characteristic `{value}`") })?;
                    if c != 0 && !(is_prime(c) && c < (1 << 31)) {
                        return err(line, format!("characteristic must be 0 or prime (got {c})"));
                    }
                    characteristic = Some(c);
                }
                Some(Section::Basis) => {
                    let parts: Vec<&str> = content.split_whitespace().collect();
                    let [name, degree] = parts[..] else {
                        return err(line, "expected `name degree`");
                    };
                    if !valid_name(name) {
                        return err(line, format!("malformed basis name `{name}`"));
                    }
                    let degree: i64 = degree.parse().map_err(|_| ParseError { line, message: format!("malformed degree `{degree}`") })?;
                    if let Some(k) = basis.iter().position(|(n, _)| n == name) {
                        return err(line, format!("duplicate basis label `{name}` (first given on line {})", basis_lines[k]));
                    }
                    if basis.is_empty() && (name, degree) != ("1", 0) {
                        return err(line, "the first basis line must be `1 0`");
                    }
                    basis.push((name.to_string(), degree));
                    basis_lines.push(line);
                }
                Some(Section::D) => {
                    let Some((lhs, rhs)) = content.split_once('=') else {
                        return err(line, "expected `name = ...`");
                    };
                    let lhs = lhs.trim();
                    if !valid_name(lhs) {
                        return err(line, format!("malformed basis name `{lhs}`"));
                    }
                    if let Some(k) = d.iter().position(|(n, _): &(String, Terms)| n == lhs) {
                        return err(line, format!("d({lhs}) already given on line {}", d_lines[k]));
                    }
                    d.push((lhs.to_string(), parse_terms(line, rhs)?));
                    d_lines.push(line);
                }
                Some(Section::Mul) => {
                    let Some((lhs, rhs)) = content.split_once('=') else {
                        return err(line, "expected `a*b = ...`");
                    };
                    let Some((a, b)) = lhs.split_once('*') else {
                        return err(line, "expected `a*b` on the left");
                    };
                    let (a, b) = (a.trim(), b.trim());
                    if !valid_name(a) || !valid_name(b) {
                        return err(line, format!("malformed product `{}`", lhs.trim()));
                    }
                    if a == "1" || b == "1" {
                        return err(line, "products with 1 are implied and may not be given");
                    }
                    let key = (a.to_string(), b.to_string());
                    if let Some(k) = mul.iter().position(|(p, _): &((String, String), Terms)| *p == key) {
                        return err(line, format!("{a}*{b} already given on line {}", mul_lines[k]));
                    }
                    mul.push((key, parse_terms(line, rhs)?));
                    mul_lines.push(line);
                }
            }
        }

        let Some(characteristic) = characteristic else {
            return err(0, "missing `[field]` section with `characteristic = N`");
        };
        if basis.is_empty() {
            return err(0, "missing `[basis]` section");
        }
        let known = |n: &str| basis.iter().any(|(b, _)| b == n);
        let check_terms = |line: usize, terms: &Terms| -> Result<(), ParseError> {
            for (c, n) in terms {
                if !known(n) {
                    return err(line, format!("unknown basis element `{n}`"));
                }
                if characteristic > 0 && (c.denom() % BigInt::from(characteristic)).is_zero() {
                    return err(line, format!("scalar `{c}` has a denominator divisible by {characteristic}"));
                }
            }
            Ok(())
        };
        for ((n, terms), &line) in d.iter().zip(&d_lines) {
            if !known(n) {
                return err(line, format!("unknown basis element `{n}`"));
            }
            check_terms(line, terms)?;
        }
        for (((a, b), terms), &line) in mul.iter().zip(&mul_lines) {
            for n in [a, b] {
                if !known(n) {
                    return err(line, format!("unknown basis element `{n}`"));
                }
            }
            check_terms(line, terms)?;
        }
        Ok(DGAFile { characteristic, basis, d, mul })
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &Terms) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, name)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag}*{name}")?;
        }
    }
    Ok(())
}

impl fmt::Display for DGAFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[field]")?;
        writeln!(f, "characteristic = {}", self.characteristic)?;
        writeln!(f)?;
        writeln!(f, "[basis]")?;
        for (n, d) in &self.basis {
            writeln!(f, "{n} {d}")?;
        }
        if !self.d.is_empty() {
            writeln!(f)?;
            writeln!(f, "[d]")?;
            for (n, terms) in &self.d {
                write!(f, "{n} = ")?;
                write_terms(f, terms)?;
                writeln!(f)?;
            }
        }
        if !self.mul.is_empty() {
            writeln!(f)?;
            writeln!(f, "[mul]")?;
            for ((a, b), terms) in &self.mul {
                write!(f, "{a}*{b} = ")?;
                write_terms(f, terms)?;
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// A rational scalar in `F`; over `F_p` the denominator must be a unit.
pub fn scalar<F: Field>(f: &F, c: &BigRational) -> F::Elem {
    let p = f.characteristic();
    if p == 0 {
        return f.parse_scalar(&c.to_string()).expect("rational scalars parse");
    }
    let modp = |x: &BigInt| {
        let m = BigInt::from(p);
        f.from_i64((((x % &m) + &m) % &m).to_i64().expect("reduced mod p"))
    };
    f.div(&modp(c.numer()), &modp(c.denom()))
}

impl DGAFile {
    /// The algebra over `f`, whose characteristic must match the file.
    pub fn build<F: Field>(&self, f: &F) -> Result<DGAlgebra<F>, DgaError> {
        assert_eq!(f.characteristic(), self.characteristic, "field does not match the file");
        let conv = |t: &Terms| t.iter().map(|(c, n)| (scalar(f, c), n.clone())).collect::<Vec<_>>();
        let d: Vec<_> = self.d.iter().map(|(n, t)| (n.clone(), conv(t))).collect();
        let mul: Vec<_> = self.mul.iter().map(|(k, t)| (k.clone(), conv(t))).collect();
        DGAlgebra::new(f, &self.basis, &d, &mul)
    }
}
