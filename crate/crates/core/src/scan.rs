//! Batch analysis of facet-list corpora with JSON-lines output.
//!
//! Each record line has the fields `name`, `n_vertices`, `f_vector`,
//! `sphere_status`, `n_perles_pieces`, `n_nonstar_nonseparating`, `pieces`
//! and `error`. Records come out in input order whatever the number of jobs.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::io::CorpusEntry;
use crate::perles::{all_perles_reports, filter_reports, SearchOptions};
use crate::topology::{certify_sphere, SphereStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub nonstar_only: bool,
    pub require_nonseparating: bool,
    /// Search for pieces even when the entry is not certified as a sphere.
    pub force: bool,
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            nonstar_only: true,
            require_nonseparating: true,
            force: false,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSummary {
    pub facets: Vec<String>,
    pub planar: bool,
    pub three_connected: bool,
    pub n_pinched: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub name: String,
    pub n_vertices: usize,
    pub f_vector: Vec<usize>,
    pub sphere_status: SphereStatus,
    pub n_perles_pieces: usize,
    pub n_nonstar_nonseparating: usize,
    /// Pieces passing the option filters.
    pub pieces: Vec<PieceSummary>,
    pub error: Option<String>,
}

/// Analyses one complex. Failures end up in the `error` field.
pub fn scan_complex(name: &str, c: &SimplicialComplex, opts: &ScanOptions) -> ScanRecord {
    let status = certify_sphere(c).status;
    let mut rec = ScanRecord {
        name: name.to_string(),
        n_vertices: c.num_vertices(),
        f_vector: c.f_vector().0,
        sphere_status: status,
        n_perles_pieces: 0,
        n_nonstar_nonseparating: 0,
        pieces: Vec::new(),
        error: None,
    };
    if status == SphereStatus::NotSphere && !opts.force {
        return rec;
    }
    let reports = match all_perles_reports(c) {
        Ok(r) => r,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.n_perles_pieces = reports.len();
    rec.n_nonstar_nonseparating = reports
        .iter()
        .filter(|r| r.is_star_of.is_none() && r.non_separating)
        .count();
    let search = SearchOptions {
        nonstar_only: opts.nonstar_only,
        require_nonseparating: opts.require_nonseparating,
        max_results: None,
    };
    rec.pieces = filter_reports(reports, &search)
        .into_iter()
        .map(|r| PieceSummary {
            facets: r.facets.iter().map(ToString::to_string).collect(),
            planar: r.fr_planar,
            three_connected: r.fr_three_connected,
            n_pinched: r.pinched.len(),
        })
        .collect();
    rec
}

pub fn scan_entry(entry: &CorpusEntry, opts: &ScanOptions) -> ScanRecord {
    scan_complex(&entry.name, &entry.complex, opts)
}

/// Scans a whole corpus on `opts.jobs` threads, keeping input order.
pub fn scan(corpus: &[CorpusEntry], opts: &ScanOptions) -> Vec<ScanRecord> {
    let mut out = Vec::with_capacity(corpus.len());
    scan_each(corpus, opts, |r| {
        out.push(r);
        Ok(())
    })
    .expect("collecting into memory cannot fail");
    out
}

/// Writes one JSON object per line as records complete, chunk by chunk.
pub fn scan_to_writer<W: Write>(corpus: &[CorpusEntry], opts: &ScanOptions, mut w: W) -> std::io::Result<()> {
    scan_each(corpus, opts, |r| {
        serde_json::to_writer(&mut w, &r)?;
        w.write_all(b"\n")
    })?;
    w.flush()
}

fn scan_each<F>(corpus: &[CorpusEntry], opts: &ScanOptions, mut emit: F) -> std::io::Result<()>
where
    F: FnMut(ScanRecord) -> std::io::Result<()>,
{
    let jobs = opts.jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(std::io::Error::other)?;
    for chunk in corpus.chunks(jobs * 4) {
        let records: Vec<ScanRecord> = pool.install(|| chunk.par_iter().map(|e| scan_entry(e, opts)).collect());
        for r in records {
            emit(r)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_facet_file;

    const CORPUS: &str = "name: simplex\nABCDE\n\nname: s3\nABCD ABCE ABDE ACDE BCDE\n\nname: torus\n\
                          0,1,2,3 1,2,3,4 2,3,4,5 3,4,5,6 4,5,6,0 5,6,0,1 6,0,1,2\n";

    #[test]
    fn records_follow_input() {
        let corpus = parse_facet_file(CORPUS).unwrap();
        let recs = scan(&corpus, &ScanOptions::default());
        let names: Vec<&str> = recs.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["simplex", "s3", "torus"]);
        assert_eq!(recs[0].sphere_status, SphereStatus::NotSphere);
        assert_eq!(recs[1].sphere_status, SphereStatus::CertifiedSphere);
        assert_eq!(recs[1].n_nonstar_nonseparating, 0);
        assert!(recs[1].n_perles_pieces > 0);
        assert_eq!(recs[2].sphere_status, SphereStatus::NotSphere);
        assert_eq!(recs[2].n_perles_pieces, 0);
    }

    #[test]
    fn forcing_searches_non_spheres() {
        let corpus = parse_facet_file(CORPUS).unwrap();
        let opts = ScanOptions {
            force: true,
            ..ScanOptions::default()
        };
        let rec = scan_entry(&corpus[2], &opts);
        assert!(rec.error.is_none());
        // every facet of this solid torus already has two boundary triangles
        let brute = crate::perles::brute_force_perles(&corpus[2].complex).unwrap();
        assert_eq!(rec.n_perles_pieces, brute.len());
    }

    #[test]
    fn output_independent_of_jobs() {
        let corpus = parse_facet_file(CORPUS).unwrap();
        let run = |jobs| {
            let mut buf = Vec::new();
            scan_to_writer(
                &corpus,
                &ScanOptions {
                    jobs,
                    ..ScanOptions::default()
                },
                &mut buf,
            )
            .unwrap();
            buf
        };
        let one = run(1);
        assert_eq!(one, run(3));
        assert_eq!(String::from_utf8(one).unwrap().lines().count(), 3);
    }
}
