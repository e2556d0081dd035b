//! Reading complexes and point sets from files or bundled datasets.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use perles_core::datasets::paper_dataset;
use perles_core::io::{parse_facet_file, parse_points_file, CorpusEntry};
use perles_core::ExactPoints;

const PAPER_PREFIX: &str = "paper:";

/// Every entry of a facet file, or the single entry of a `paper:NAME` dataset.
pub fn load_entries(source: &str) -> Result<Vec<CorpusEntry>> {
    if let Some(name) = source.strip_prefix(PAPER_PREFIX) {
        let ds = paper_dataset(name)?;
        let Some(entry) = ds.complex() else {
            bail!("{name} is a point set, not a complex");
        };
        return Ok(vec![entry.clone()]);
    }
    let text = read(source)?;
    let entries = parse_facet_file(&text).with_context(|| format!("parsing {source}"))?;
    if entries.is_empty() {
        bail!("{source} holds no complexes");
    }
    Ok(entries)
}

/// One entry, chosen by name when the file holds several.
pub fn load_entry(source: &str, name: Option<&str>) -> Result<CorpusEntry> {
    let mut entries = load_entries(source)?;
    match name {
        Some(n) => entries
            .into_iter()
            .find(|e| e.name == n)
            .with_context(|| format!("no entry named {n} in {source}")),
        None if entries.len() == 1 => Ok(entries.remove(0)),
        None => bail!(
            "{source} holds {} complexes; pick one with --entry ({})",
            entries.len(),
            entries.iter().map(|e| e.name.as_str()).collect::<Vec<_>>().join(", ")
        ),
    }
}

pub fn load_points(source: &str) -> Result<ExactPoints> {
    if let Some(name) = source.strip_prefix(PAPER_PREFIX) {
        let ds = paper_dataset(name)?;
        let Some(points) = ds.points() else {
            bail!("{name} is a complex, not a point set");
        };
        return Ok(points.clone());
    }
    let text = read(source)?;
    parse_points_file(&text).with_context(|| format!("parsing {source}"))
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))
}

/// Writes to `dest`, or appends to the stdout buffer when no path is given.
pub fn write_output(dest: Option<&Path>, text: &str, stdout: &mut String) -> Result<()> {
    match dest {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}
