//! `perles`: command-line access to the perles-core library.
//!
//! Exit status is 0 when the command succeeds and its check holds, 1 when the
//! check fails, 2 on errors.

mod input;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, ErrorKind, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use perles_core::constructions::{
    boundary_split, build_gamma, build_gamma_assembly, pinch_operation, stellar_subdivide_facet, FacetPatternMap,
};
use perles_core::datasets::{paper_dataset, DATASET_NAMES};
use perles_core::io::{emit_facets, emit_points};
use perles_core::perles::{find_perles_pieces, piece_graph, report_piece, Piece, SearchOptions};
use perles_core::planarity::{planarity, PlanarityWitness};
use perles_core::realization::{realize_with, InitStrategy, RealizationStatus, RealizeOptions};
use perles_core::scan::{scan_to_writer, ScanOptions};
use perles_core::topology::{certify_sphere, verify_shelling, SphereStatus};
use perles_core::{hull_facets, CombGraph, SimplicialComplex};

use input::{load_entries, load_entry, load_points, write_output};

#[derive(Parser)]
#[command(
    name = "perles",
    version,
    about = "Perles pieces, sphere checks and exact polytopality tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A facet file, or `paper:NAME` for a bundled complex.
#[derive(Args)]
struct Input {
    file: String,
    /// Entry to use when the file holds several complexes.
    #[arg(long)]
    entry: Option<String>,
}

impl Input {
    fn complex(&self) -> Result<SimplicialComplex> {
        Ok(load_entry(&self.file, self.entry.as_deref())?.complex)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the f-vector of every complex in a file.
    Fvector { file: String },
    /// Certify that a complex triangulates a sphere.
    CheckSphere(Input),
    /// Search for or check Perles pieces.
    #[command(subcommand)]
    Perles(PerlesCommand),
    /// Planarity and connectivity of facet-ridge graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Shelling orders.
    #[command(subcommand)]
    Shelling(ShellingCommand),
    /// Convex hulls of point sets in R^4.
    #[command(subcommand)]
    Hull(HullCommand),
    /// Search for coordinates realizing a 3-sphere as a polytope boundary.
    Realize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// Starting coordinates, a points file or `paper:P12.points`.
        #[arg(long)]
        init: Option<String>,
        #[arg(long, value_enum, default_value_t = Strategy::Random)]
        strategy: Strategy,
        /// Where to write the coordinates; stdout by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local constructions; the result is written as a facet file.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Analyse every complex of a corpus and write JSON lines.
    Scan {
        file: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also report pieces that are vertex stars.
        #[arg(long)]
        include_stars: bool,
        /// Also report separating pieces.
        #[arg(long)]
        include_separating: bool,
        /// Search entries that are not certified spheres.
        #[arg(long)]
        force: bool,
    },
    /// Print a bundled dataset, or list them.
    Paper { name: Option<String> },
}

#[derive(Subcommand)]
enum PerlesCommand {
    /// List Perles pieces.
    Find {
        #[command(flatten)]
        input: Input,
        /// Skip vertex stars.
        #[arg(long)]
        nonstar: bool,
        /// Keep only pieces whose complement is connected.
        #[arg(long)]
        nonseparating: bool,
        /// Stop after this many pieces.
        #[arg(long)]
        max: Option<usize>,
        /// Write full piece reports as JSON lines.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check a given set of facets.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Facet file holding the piece.
        #[arg(long)]
        piece: String,
    },
}

#[derive(Args)]
struct GraphInput {
    #[command(flatten)]
    input: Input,
    /// Restrict to the facets of this piece.
    #[arg(long)]
    piece: Option<String>,
}

impl GraphInput {
    fn graph(&self) -> Result<CombGraph> {
        let c = self.input.complex()?;
        match &self.piece {
            Some(src) => {
                let faces = load_entry(src, None)?.complex.facets();
                Ok(piece_graph(&c, &Piece::from_faces(&c, &faces)?)?)
            }
            None => Ok(c.facet_ridge_graph()?),
        }
    }
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Test planarity, printing a Kuratowski subgraph when there is none.
    Planarity(GraphInput),
    /// Test k-vertex-connectivity.
    Connectivity {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum ShellingCommand {
    /// Check that the facets, in file order, form a shelling.
    Verify(Input),
}

#[derive(Subcommand)]
enum HullCommand {
    /// Print the boundary facets of the convex hull.
    Facets {
        /// Points file, or `paper:P12.points`.
        points: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Replace a facet by the cone over its boundary.
    Stellar {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        facet: String,
        #[arg(long)]
        fresh: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split along a boundary triangle; `--map 1=A,2=B,...,6=F`.
    Split {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        map: String,
        #[arg(long)]
        fresh: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pinch a strip of three facets; `--map 0=A,...,5=F --fresh x,y,z`.
    Pinch {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        map: String,
        #[arg(long, value_delimiter = ',')]
        fresh: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The eight-facet building block, or with `--assembly` the glued complex.
    Gamma {
        #[arg(long)]
        assembly: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Random,
    EdgeLink,
    Spectral,
}

impl From<Strategy> for InitStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Random => InitStrategy::Random,
            Strategy::EdgeLink => InitStrategy::LargestEdgeLink,
            Strategy::Spectral => InitStrategy::Spectral,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let verdict = run(cli.command, &mut out);
    if let Err(e) = std::io::stdout().lock().write_all(out.as_bytes()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match verdict {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<bool> {
    match command {
        Command::Fvector { file } => {
            for e in load_entries(&file)? {
                let f = e.complex.f_vector();
                let counts: Vec<String> = f.counts().iter().map(ToString::to_string).collect();
                writeln!(out, "{}: ({})", e.name, counts.join(", "))?;
            }
            Ok(true)
        }
        Command::CheckSphere(input) => {
            let cert = certify_sphere(&input.complex()?);
            writeln!(out, "{:?}: {}", cert.status, cert.witness)?;
            Ok(cert.status == SphereStatus::CertifiedSphere)
        }
        Command::Perles(cmd) => perles(cmd, out),
        Command::Graph(GraphCommand::Planarity(g)) => {
            let graph = g.graph()?;
            let res = planarity(&graph);
            match &res.witness {
                PlanarityWitness::Embedding(_) => writeln!(out, "planar ({} nodes)", graph.node_count())?,
                PlanarityWitness::Kuratowski(k) => {
                    let branch: Vec<&str> = k.branch_nodes.iter().map(|&u| graph.label(u)).collect();
                    writeln!(
                        out,
                        "not planar: {:?} subdivision with branch nodes {}",
                        k.kind,
                        branch.join(" ")
                    )?;
                    for &(u, v) in &k.edges {
                        writeln!(out, "  {} -- {}", graph.label(u), graph.label(v))?;
                    }
                }
            }
            Ok(res.planar)
        }
        Command::Graph(GraphCommand::Connectivity { graph, k }) => {
            let g = graph.graph()?;
            let ok = g.is_k_connected(k);
            writeln!(out, "{}-connected: {ok}", k)?;
            Ok(ok)
        }
        Command::Shelling(ShellingCommand::Verify(input)) => {
            let report = verify_shelling(&input.complex()?.facets())?;
            match &report.first_violation {
                None => writeln!(out, "valid shelling")?,
                Some(v) => writeln!(out, "not a shelling: step {}: {}", v.step, v.reason)?,
            }
            Ok(report.valid)
        }
        Command::Hull(HullCommand::Facets { points, out: dest }) => {
            let hull = hull_facets(&load_points(&points)?)?;
            let mut text = format!("# simplicial: {}\n", hull.simplicial);
            text.push_str(&emit_facets(&hull.complex));
            write_output(dest.as_deref(), &text, out)?;
            Ok(hull.simplicial)
        }
        Command::Realize {
            input,
            seed,
            max_iters,
            init,
            strategy,
            out: dest,
        } => {
            let c = input.complex()?;
            let init = init.map(|s| load_points(&s)).transpose()?;
            let opts = RealizeOptions {
                seed,
                max_iters,
                strategy: strategy.into(),
                ..RealizeOptions::default()
            };
            let outcome = realize_with(&c, init.as_ref(), &opts);
            eprintln!(
                "{:?} after {} iterations (seed {seed})",
                outcome.status, outcome.iterations
            );
            if let Some(points) = &outcome.points {
                write_output(dest.as_deref(), &emit_points(points), out)?;
            }
            Ok(outcome.status == RealizationStatus::Realized)
        }
        Command::Construct(cmd) => construct(cmd, out),
        Command::Scan {
            file,
            out: dest,
            jobs,
            include_stars,
            include_separating,
            force,
        } => {
            if jobs == 0 {
                bail!("--jobs must be at least 1");
            }
            let corpus = load_entries(&file)?;
            let opts = ScanOptions {
                nonstar_only: !include_stars,
                require_nonseparating: !include_separating,
                force,
                jobs,
            };
            let w = BufWriter::new(File::create(&dest).with_context(|| format!("creating {}", dest.display()))?);
            scan_to_writer(&corpus, &opts, w)?;
            eprintln!("{} entries written to {}", corpus.len(), dest.display());
            Ok(true)
        }
        Command::Paper { name: None } => {
            for name in DATASET_NAMES {
                writeln!(out, "{name:<12} {}", paper_dataset(name)?.description)?;
            }
            Ok(true)
        }
        Command::Paper { name: Some(name) } => {
            out.push_str(paper_dataset(&name)?.source);
            Ok(true)
        }
    }
}

fn perles(cmd: PerlesCommand, out: &mut String) -> Result<bool> {
    match cmd {
        PerlesCommand::Find {
            input,
            nonstar,
            nonseparating,
            max,
            report,
        } => {
            let c = input.complex()?;
            let opts = SearchOptions {
                nonstar_only: nonstar,
                require_nonseparating: nonseparating,
                max_results: max,
            };
            let found = find_perles_pieces(&c, &opts)?;
            for r in &found {
                let kind = match &r.is_star_of {
                    Some(v) => format!("star of {v}"),
                    None => "non-star".to_string(),
                };
                writeln!(
                    out,
                    "{} facets, {kind}, {}, facet-ridge graph {}{}",
                    r.facets.len(),
                    if r.non_separating {
                        "non-separating"
                    } else {
                        "separating"
                    },
                    if r.fr_planar { "planar" } else { "non-planar" },
                    if r.fr_three_connected { ", 3-connected" } else { "" },
                )?;
            }
            writeln!(out, "{} pieces", found.len())?;
            if let Some(path) = report {
                let mut text = String::new();
                for r in &found {
                    text.push_str(&serde_json::to_string(r)?);
                    text.push('\n');
                }
                write_output(Some(&path), &text, out)?;
            }
            Ok(!found.is_empty())
        }
        PerlesCommand::Verify { input, piece } => {
            let c = input.complex()?;
            let faces = load_entry(&piece, None)?.complex.facets();
            let r = report_piece(&c, &Piece::from_faces(&c, &faces)?)?;
            writeln!(out, "perles piece: {}", r.is_perles)?;
            writeln!(out, "vertex star: {}", r.is_star_of.as_deref().unwrap_or("no"))?;
            writeln!(out, "non-separating: {}", r.non_separating)?;
            writeln!(out, "facet-ridge graph planar: {}", r.fr_planar)?;
            writeln!(out, "facet-ridge graph 3-connected: {}", r.fr_three_connected)?;
            writeln!(out, "pinched vertices: {}", r.pinched.join(" "))?;
            Ok(r.is_perles)
        }
    }
}

fn construct(cmd: ConstructCommand, out: &mut String) -> Result<bool> {
    let (c, dest) = match cmd {
        ConstructCommand::Stellar {
            input,
            facet,
            fresh,
            out: dest,
        } => (
            stellar_subdivide_facet(&input.complex()?, &facet.parse()?, &fresh)?,
            dest,
        ),
        ConstructCommand::Split {
            input,
            map,
            fresh,
            out: dest,
        } => (
            boundary_split(&input.complex()?, &FacetPatternMap::parse(&map)?, &fresh)?,
            dest,
        ),
        ConstructCommand::Pinch {
            input,
            map,
            fresh,
            out: dest,
        } => {
            let [a, b, c] = &fresh[..] else {
                bail!("--fresh needs three labels, got {}", fresh.len());
            };
            let fresh = [a.as_str(), b.as_str(), c.as_str()];
            (
                pinch_operation(&input.complex()?, &FacetPatternMap::parse(&map)?, fresh)?,
                dest,
            )
        }
        ConstructCommand::Gamma { assembly, out: dest } => {
            let c = if assembly {
                build_gamma_assembly()?
            } else {
                build_gamma()
            };
            (c, dest)
        }
    };
    write_output(dest.as_deref(), &emit_facets(&c), out)?;
    Ok(true)
}
