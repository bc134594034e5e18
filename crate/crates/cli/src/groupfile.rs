//! The `matgroup v1` text format.
//!
//! ```text
//! matgroup v1
//! field cyclotomic 4        # or: field rational
//! dim 2
//! gen
//! 0 -1
//! 1 0
//! gen
//! [0,1] 0
//! 0 [0,-1]
//! ```
//!
//! Entries are `a` or `a/b`. In cyclotomic files an entry may also be
//! `[c0,...,c_{d-1}]`, the coefficients of `1, ζ, …, ζ^{d−1}` with `d = φ(k)`.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use minkowski_core::exactnum::{CycloElem, CycloField};
use minkowski_core::matgroup::{CycloMatrix, Matrix, RatMatrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generators {
    Rational(Vec<RatMatrix>),
    Cyclotomic(Arc<CycloField>, Vec<CycloMatrix>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub dim: usize,
    pub generators: Generators,
}

impl GroupFile {
    pub fn rational(generators: Vec<RatMatrix>) -> Self {
        let dim = generators.first().map_or(0, Matrix::dim);
        Self { dim, generators: Generators::Rational(generators) }
    }

    pub fn generator_count(&self) -> usize {
        match &self.generators {
            Generators::Rational(g) => g.len(),
            Generators::Cyclotomic(_, g) => g.len(),
        }
    }

    pub fn field_name(&self) -> String {
        match &self.generators {
            Generators::Rational(_) => "rational".into(),
            Generators::Cyclotomic(f, _) => format!("cyclotomic {}", f.conductor()),
        }
    }
}

/// Significant lines: comments stripped, blanks dropped, 1-based numbers kept.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Splits a row into entries; a bracketed entry may contain spaces.
fn split_entries(line: usize, row: &str) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for c in row.chars() {
        match c {
            '[' => {
                if depth > 0 {
                    return err(line, "nested '[' in entry");
                }
                depth = 1;
                current.push(c);
            }
            ']' => {
                if depth == 0 {
                    return err(line, "unmatched ']'");
                }
                depth = 0;
                current.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            }
            c if c.is_whitespace() => {}
            c => current.push(c),
        }
    }
    if depth > 0 {
        return err(line, "unterminated '['");
    }
    if !current.is_empty() {
        out.push(current);
    }
    Ok(out)
}

pub fn parse_rational(line: usize, s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError { line, message: format!("malformed rational {s:?}") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return err(line, format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_cyclo(line: usize, s: &str, field: &Arc<CycloField>) -> Result<CycloElem, ParseError> {
    let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
        return Ok(CycloElem::from_rational(field, parse_rational(line, s)?));
    };
    let coeffs = inner
        .split(',')
        .map(|c| parse_rational(line, c.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != field.degree() {
        return err(
            line,
            format!("entry {s} has {} coefficients, expected {}", coeffs.len(), field.degree()),
        );
    }
    Ok(CycloElem::new(field, coeffs))
}

enum FieldDecl {
    Rational,
    Cyclotomic(Arc<CycloField>),
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, ParseError> {
    let mut lines = significant_lines(text).peekable();
    let last_line = text.lines().count().max(1);

    let Some((ln, header)) = lines.next() else {
        return err(1, "empty file");
    };
    let words: Vec<&str> = header.split_whitespace().collect();
    match words.as_slice() {
        ["matgroup", "v1"] => {}
        ["matgroup", v] => return err(ln, format!("unsupported format version {v:?}, expected v1")),
        _ => return err(ln, "expected header 'matgroup v1'"),
    }

    let Some((ln, decl)) = lines.next() else {
        return err(last_line, "missing 'field' line");
    };
    let words: Vec<&str> = decl.split_whitespace().collect();
    let field = match words.as_slice() {
        ["field", "rational"] => FieldDecl::Rational,
        ["field", "cyclotomic", k] => {
            let k: u64 = k
                .parse()
                .map_err(|_| ParseError { line: ln, message: format!("bad conductor {k:?}") })?;
            let f = CycloField::new(k).map_err(|e| ParseError { line: ln, message: e.to_string() })?;
            FieldDecl::Cyclotomic(f)
        }
        _ => return err(ln, "expected 'field rational' or 'field cyclotomic <k>'"),
    };

    let Some((ln, decl)) = lines.next() else {
        return err(last_line, "missing 'dim' line");
    };
    let dim: usize = match decl.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", n] => n
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ParseError { line: ln, message: format!("bad dimension {n:?}") })?,
        _ => return err(ln, "expected 'dim <n>'"),
    };

    let mut blocks: Vec<Block> = Vec::new();
    for (ln, line) in lines {
        if line == "gen" {
            blocks.push((ln, Vec::new()));
            continue;
        }
        let Some((_, rows)) = blocks.last_mut() else {
            return err(ln, "expected 'gen'");
        };
        if rows.len() == dim {
            return err(ln, format!("generator has more than {dim} rows"));
        }
        let entries = split_entries(ln, line)?;
        if entries.len() != dim {
            return err(ln, format!("row has {} entries, expected {dim}", entries.len()));
        }
        rows.push((ln, entries));
    }
    if blocks.is_empty() {
        return err(last_line, "no generators");
    }
    for (ln, rows) in &blocks {
        if rows.len() != dim {
            return err(*ln, format!("generator has {} rows, expected {dim}", rows.len()));
        }
    }

    let generators = match field {
        FieldDecl::Rational => Generators::Rational(build(&blocks, |ln, s| {
            if s.starts_with('[') {
                return err(ln, "bracketed entries need a cyclotomic field");
            }
            parse_rational(ln, s)
        })?),
        FieldDecl::Cyclotomic(f) => {
            let gens = build(&blocks, |ln, s| parse_cyclo(ln, s, &f))?;
            Generators::Cyclotomic(f, gens)
        }
    };
    Ok(GroupFile { dim, generators })
}

/// Line of `gen`, then the rows with their line numbers.
type Block = (usize, Vec<(usize, Vec<String>)>);

fn build<S: Scalar>(
    blocks: &[Block],
    entry: impl Fn(usize, &str) -> Result<S, ParseError>,
) -> Result<Vec<Matrix<S>>, ParseError> {
    blocks
        .iter()
        .map(|(gen_line, rows)| {
            let rows = rows
                .iter()
                .map(|(ln, cells)| cells.iter().map(|c| entry(*ln, c)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let m = Matrix::from_rows(rows).map_err(|e| ParseError { line: *gen_line, message: e.to_string() })?;
            if m.determinant().is_zero() {
                return err(*gen_line, "singular generator");
            }
            Ok(m)
        })
        .collect()
}

fn write_cyclo(out: &mut String, x: &CycloElem) {
    match x.to_rational() {
        Some(r) => write!(out, "{r}").unwrap(),
        None => {
            let d = x.field().degree();
            let cells: Vec<String> = (0..d)
                .map(|i| x.coeffs().get(i).map_or_else(|| "0".to_string(), ToString::to_string))
                .collect();
            write!(out, "[{}]", cells.join(",")).unwrap();
        }
    }
}

pub fn serialize_group_file(g: &GroupFile) -> String {
    let mut out = format!("matgroup v1\nfield {}\ndim {}\n", g.field_name(), g.dim);
    fn emit<S: Scalar>(out: &mut String, gens: &[Matrix<S>], cell: impl Fn(&mut String, &S)) {
        for m in gens {
            out.push_str("gen\n");
            let n = m.dim();
            for i in 0..n {
                for j in 0..n {
                    if j > 0 {
                        out.push(' ');
                    }
                    cell(out, m.get(i, j));
                }
                out.push('\n');
            }
        }
    }
    match &g.generators {
        Generators::Rational(gens) => emit(&mut out, gens, |o, x| write!(o, "{x}").unwrap()),
        Generators::Cyclotomic(_, gens) => emit(&mut out, gens, write_cyclo),
    }
    out
}

/// The quaternion group as a 2-dimensional group over `Q(i)`.
pub const Q8: &str = include_str!("../data/q8.grp");

#[cfg(test)]
mod tests {
    use super::*;


    #[test]
    fn parses_q8() {
        let g = parse_group_file(Q8).unwrap();
        assert_eq!(g.dim, 2);
        assert_eq!(g.generator_count(), 2);
        assert_eq!(g.field_name(), "cyclotomic 4");
    }

    #[test]
    fn parses_rotation() {
        let g = parse_group_file("matgroup v1\nfield rational\ndim 2\ngen\n0 -1\n1 0\n").unwrap();
        assert_eq!((g.dim, g.generator_count()), (2, 1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("matgroup v2\nfield rational\ndim 1\ngen\n1\n", 1),
            ("matgroup v1\nfield real\ndim 1\ngen\n1\n", 2),
            ("matgroup v1\nfield rational\ndim 0\ngen\n1\n", 3),
            ("matgroup v1\nfield rational\ndim 2\ngen\n1 0 0\n0 1\n", 5),
            ("matgroup v1\nfield rational\ndim 2\ngen\n1 0\n0 1\n0 1\n", 7),
            ("matgroup v1\nfield rational\ndim 2\ngen\n1 1\n1 1\n", 4),
            ("matgroup v1\nfield rational\ndim 1\ngen\n1/0\n", 5),
            ("matgroup v1\nfield rational\ndim 1\ngen\n[1]\n", 5),
            ("matgroup v1\nfield cyclotomic 4\ndim 1\ngen\n[1,2,3]\n", 5),
            ("matgroup v1\nfield rational\ndim 1\n1\n", 4),
            ("matgroup v1\nfield rational\ndim 2\ngen\n1 0\n", 4),
            ("matgroup v1\nfield rational\ndim 2\n", 3),
            ("", 1),
        ];
        for (text, line) in cases {
            let e = parse_group_file(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn round_trip() {
        for text in [Q8, "matgroup v1\nfield rational\ndim 2\ngen\n1/2 -3\n5/7 0\n"] {
            let g = parse_group_file(text).unwrap();
            let again = parse_group_file(&serialize_group_file(&g)).unwrap();
            assert_eq!(g, again);
        }
    }
}
