//! Text formats: facet-list corpora and labelled point files.
//!
//! Facet files hold one or more complexes separated by blank lines. `#`
//! starts a comment, `name: <string>` names the following entry, and every
//! other line holds whitespace-separated facet tokens. A token with commas is
//! split on them (`v10,v11,v12,v13`); otherwise each character is a label
//! (`ABCD`). One entry must use one style. A trailing comma marks a
//! one-label facet in comma style (`v10,`).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::realization::PointConfiguration;

/// One named complex of a facet file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    /// 1-based line where the entry starts.
    pub source_line: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum TokenStyle {
    Chars,
    Commas,
}

#[derive(Default)]
struct Pending {
    name: Option<String>,
    start: usize,
    style: Option<TokenStyle>,
    facets: Vec<Vec<String>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_facet_file(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    let mut used = HashSet::new();
    let mut cur = Pending::default();
    let mut finish = |cur: &mut Pending, entries: &mut Vec<CorpusEntry>| -> Result<()> {
        let p = std::mem::take(cur);
        if p.facets.is_empty() {
            return match p.name {
                Some(n) => Err(parse_err(p.start, format!("entry {n:?} has no facets"))),
                None => Ok(()),
            };
        }
        let complex = SimplicialComplex::new(&p.facets).map_err(|e| parse_err(p.start, e.to_string()))?;
        let base = p.name.unwrap_or_else(|| format!("entry_{}", entries.len() + 1));
        let name = unique_name(&mut used, base);
        entries.push(CorpusEntry {
            name,
            complex,
            source_line: p.start,
        });
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            finish(&mut cur, &mut entries)?;
            continue;
        }
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("name:") {
            if !cur.facets.is_empty() || cur.name.is_some() {
                finish(&mut cur, &mut entries)?;
            }
            let name = name.trim();
            if name.is_empty() {
                return Err(parse_err(line_no, "empty entry name"));
            }
            cur.name = Some(name.to_string());
            cur.start = line_no;
            continue;
        }
        if cur.facets.is_empty() && cur.name.is_none() {
            cur.start = line_no;
        }
        for token in line.split_whitespace() {
            let (style, labels) = split_token(token).map_err(|m| parse_err(line_no, m))?;
            if let Some(style) = style {
                match cur.style {
                    Some(s) if s != style => {
                        return Err(parse_err(line_no, format!("token {token:?} mixes facet styles")));
                    }
                    _ => cur.style = Some(style),
                }
            }
            cur.facets.push(labels);
        }
    }
    finish(&mut cur, &mut entries)?;
    Ok(entries)
}

/// Labels of one token; the style is `None` for a single character.
fn split_token(token: &str) -> std::result::Result<(Option<TokenStyle>, Vec<String>), String> {
    if token.contains(',') {
        let body = token.strip_suffix(',').unwrap_or(token);
        let labels: Vec<String> = body.split(',').map(str::to_string).collect();
        if labels.iter().any(String::is_empty) {
            return Err(format!("empty label in facet {token:?}"));
        }
        return Ok((Some(TokenStyle::Commas), labels));
    }
    let labels: Vec<String> = token.chars().map(String::from).collect();
    let style = (labels.len() > 1).then_some(TokenStyle::Chars);
    Ok((style, labels))
}

fn unique_name(used: &mut HashSet<String>, base: String) -> String {
    let mut name = base.clone();
    let mut k = 1;
    while used.contains(&name) {
        k += 1;
        name = format!("{base}_{k}");
    }
    used.insert(name.clone());
    name
}

/// Writes entries back in facet-file form, eight facets per line.
pub fn emit_facet_file(entries: &[CorpusEntry]) -> String {
    let mut out = String::new();
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "name: {}", e.name);
        out.push_str(&emit_facets(&e.complex));
    }
    out
}

/// Facet lines of one complex.
pub fn emit_facets(c: &SimplicialComplex) -> String {
    let chars = c.vertex_labels().iter().all(|l| l.chars().count() == 1);
    let tokens: Vec<String> = c
        .facets()
        .iter()
        .map(|f| {
            if chars {
                f.labels().concat()
            } else if f.len() == 1 {
                format!("{},", f.labels()[0])
            } else {
                f.labels().join(",")
            }
        })
        .collect();
    let mut out = String::new();
    for chunk in tokens.chunks(8) {
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
    out
}

/// Parses `label: x y z w` lines with integer or `p/q` entries.
pub fn parse_points_file(text: &str) -> Result<PointConfiguration<BigRational>> {
    let mut pc: Option<PointConfiguration<BigRational>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, "expected `label: coordinates`"))?;
        let label = label.trim();
        let coords = rest
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| parse_err(line_no, format!("malformed rational {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(parse_err(line_no, format!("point {label} has no coordinates")));
        }
        let pc = pc.get_or_insert_with(|| PointConfiguration::new(coords.len()));
        pc.push(label, coords).map_err(|e| parse_err(line_no, e.to_string()))?;
    }
    pc.ok_or_else(|| parse_err(1, "no points"))
}

fn parse_rational(t: &str) -> Option<BigRational> {
    match t.split_once('/') {
        Some((p, q)) => {
            let q = BigInt::from_str(q).ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(p).ok()?, q))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(t).ok()?)),
    }
}

pub fn emit_points(pc: &PointConfiguration<BigRational>) -> String {
    let mut out = String::new();
    for (l, p) in pc.iter() {
        let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{l}: {}", coords.join(" "));
    }
    out
}
