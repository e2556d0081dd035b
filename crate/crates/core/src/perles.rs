//! Perles pieces: connected subcomplexes in which every facet has exactly one
//! boundary ridge.
//!
//! [`find_perles_pieces`] is a depth-first search over include/exclude
//! decisions on the facets of a pure pseudomanifold. For an included facet
//! each ridge is *interior* (the neighbour across it is included),
//! *boundary* (the neighbour is excluded or missing) or *undecided*. A branch
//! dies as soon as some included facet has two decided boundary ridges, or has
//! none and no undecided ridge left. Two forced moves follow from the same
//! rule: a facet that already has its boundary ridge pulls in every undecided
//! neighbour, and a facet with no boundary ridge and a single undecided
//! neighbour pushes that neighbour out.
//!
//! Every piece is enumerated exactly once from its first facet in decision
//! order (the root): earlier facets are excluded, and the search only ever
//! branches on facets adjacent to the piece grown so far, so the included set
//! stays connected. Roots are independent subtrees and run in parallel; the
//! results are sorted afterwards so the output does not depend on scheduling.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{ridges_of, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::CombGraph;
use crate::planarity::is_planar;
use crate::topology::pinched_vertices;

/// A set of facets of an ambient complex, as ascending facet indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Piece(Vec<usize>);

impl Piece {
    pub fn new(mut facet_ids: Vec<usize>) -> Result<Self> {
        if facet_ids.is_empty() {
            return Err(Error::EmptyPiece);
        }
        facet_ids.sort_unstable();
        facet_ids.dedup();
        Ok(Piece(facet_ids))
    }

    /// Looks the faces up among the facets of `ambient`.
    pub fn from_faces(ambient: &SimplicialComplex, faces: &[Face]) -> Result<Self> {
        let ids = faces
            .iter()
            .map(|f| ambient.facet_index(f).ok_or_else(|| Error::MissingFacet(f.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Piece::new(ids)
    }

    pub fn facet_ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn faces(&self, ambient: &SimplicialComplex) -> Vec<Face> {
        self.0.iter().map(|&i| ambient.facet(i)).collect()
    }

    fn check(&self, ambient: &SimplicialComplex) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::EmptyPiece);
        }
        match self.0.last() {
            Some(&id) if id >= ambient.num_facets() => Err(Error::FacetOutOfRange {
                id,
                len: ambient.num_facets(),
            }),
            _ => Ok(()),
        }
    }
}

/// Everything reported about one piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub piece: Piece,
    pub facets: Vec<Face>,
    pub is_perles: bool,
    pub is_star_of: Option<String>,
    pub non_separating: bool,
    pub fr_planar: bool,
    pub fr_three_connected: bool,
    pub pinched: Vec<String>,
    pub n_boundary_ridges: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub nonstar_only: bool,
    pub require_nonseparating: bool,
    pub max_results: Option<usize>,
}

/// Subcomplex generated by the piece's facets.
pub fn piece_complex(ambient: &SimplicialComplex, p: &Piece) -> SimplicialComplex {
    ambient.with_id_facets(p.0.iter().map(|&i| ambient.facet_ids(i).to_vec()))
}

/// Per facet of `p`, the number of its ridges lying in no other facet of `p`.
pub fn boundary_ridge_counts(ambient: &SimplicialComplex, p: &Piece) -> Result<Vec<usize>> {
    p.check(ambient)?;
    ambient.pure_dimension()?;
    let mut cof: HashMap<Vec<usize>, usize> = HashMap::new();
    for &i in &p.0 {
        for r in ridges_of(ambient.facet_ids(i)) {
            *cof.entry(r).or_insert(0) += 1;
        }
    }
    Ok(p.0
        .iter()
        .map(|&i| ridges_of(ambient.facet_ids(i)).filter(|r| cof[r] == 1).count())
        .collect())
}

/// Facet-ridge graph of the piece, nodes in piece order.
pub fn piece_graph(ambient: &SimplicialComplex, p: &Piece) -> Result<CombGraph> {
    p.check(ambient)?;
    Ok(ambient.facet_ridge_graph()?.induced_subgraph(&p.0))
}

/// Connected, and every facet has exactly one ridge in no other facet of the piece.
pub fn is_perles_piece(ambient: &SimplicialComplex, p: &Piece) -> Result<bool> {
    let counts = boundary_ridge_counts(ambient, p)?;
    Ok(counts.iter().all(|&c| c == 1) && piece_graph(ambient, p)?.is_connected())
}

/// The vertex whose star is exactly `p`, if any (smallest label when several).
pub fn is_vertex_star(ambient: &SimplicialComplex, p: &Piece) -> Option<String> {
    p.check(ambient).ok()?;
    let first = ambient.facet_ids(p.0[0]);
    let mut candidates: Vec<&str> = first
        .iter()
        .filter(|v| p.0.iter().all(|&i| ambient.facet_ids(i).contains(v)))
        .filter(|v| {
            (0..ambient.num_facets())
                .filter(|&i| ambient.facet_ids(i).contains(v))
                .count()
                == p.len()
        })
        .map(|&v| ambient.label(v))
        .collect();
    candidates.sort();
    candidates.first().map(|s| s.to_string())
}

/// The remaining facets are non-empty and induce a connected facet-ridge subgraph.
pub fn is_non_separating(ambient: &SimplicialComplex, p: &Piece) -> bool {
    let rest: Vec<usize> = (0..ambient.num_facets()).filter(|&i| !p.contains(i)).collect();
    if rest.is_empty() {
        return false;
    }
    match ambient.facet_ridge_graph() {
        Ok(g) => g.induced_subgraph(&rest).is_connected(),
        Err(_) => false,
    }
}

pub fn report_piece(ambient: &SimplicialComplex, p: &Piece) -> Result<PieceReport> {
    let counts = boundary_ridge_counts(ambient, p)?;
    let g = piece_graph(ambient, p)?;
    let is_perles = counts.iter().all(|&c| c == 1) && g.is_connected();
    let sub = piece_complex(ambient, p);
    let pinched = if sub.pure_dimension() == Ok(3) {
        pinched_vertices(&sub)?
    } else {
        Vec::new()
    };
    Ok(PieceReport {
        piece: p.clone(),
        facets: p.faces(ambient),
        is_perles,
        is_star_of: is_vertex_star(ambient, p),
        non_separating: is_non_separating(ambient, p),
        fr_planar: is_planar(&g),
        fr_three_connected: g.is_k_connected(3),
        pinched,
        n_boundary_ridges: counts.iter().sum(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Undecided,
    In,
    Out,
}

struct SearchSpace {
    /// Neighbour across each ridge of each facet.
    across: Vec<Vec<Option<usize>>>,
    /// Facets in decision order.
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl SearchSpace {
    fn new(ambient: &SimplicialComplex) -> Result<Self> {
        let n = ambient.num_facets();
        let cof = ambient.ridge_cofacets()?;
        if let Some((r, _)) = cof.iter().find(|(_, fs)| fs.len() > 2) {
            return Err(Error::RidgeOverfull(ambient.face_of(r).to_string()));
        }
        let across: Vec<Vec<Option<usize>>> = (0..n)
            .map(|i| {
                ridges_of(ambient.facet_ids(i))
                    .map(|r| cof[&r].iter().copied().find(|&j| j != i))
                    .collect()
            })
            .collect();
        let faces = ambient.facets();
        let degree = |i: usize| across[i].iter().flatten().count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| degree(b).cmp(&degree(a)).then_with(|| faces[a].cmp(&faces[b])));
        let mut rank = vec![0; n];
        for (pos, &f) in order.iter().enumerate() {
            rank[f] = pos;
        }
        Ok(SearchSpace { across, order, rank })
    }

    /// Applies forced moves until nothing changes; `false` on a dead branch.
    fn propagate(&self, state: &mut [Decision]) -> bool {
        loop {
            let mut changed = false;
            for f in 0..state.len() {
                if state[f] != Decision::In {
                    continue;
                }
                let mut boundary = 0;
                let mut open = 0;
                for nb in &self.across[f] {
                    match nb.map(|j| state[j]) {
                        None | Some(Decision::Out) => boundary += 1,
                        Some(Decision::Undecided) => open += 1,
                        Some(Decision::In) => {}
                    }
                }
                if boundary >= 2 || (boundary == 0 && open == 0) {
                    return false;
                }
                if open > 0 && (boundary == 1 || open == 1) {
                    let forced = if boundary == 1 { Decision::In } else { Decision::Out };
                    for j in self.across[f].iter().flatten() {
                        if state[*j] == Decision::Undecided {
                            state[*j] = forced;
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// First undecided facet (in decision order) adjacent to an included one.
    fn next_frontier(&self, state: &[Decision]) -> Option<usize> {
        (0..state.len())
            .filter(|&f| state[f] == Decision::In)
            .flat_map(|f| self.across[f].iter().flatten().copied())
            .filter(|&j| state[j] == Decision::Undecided)
            .min_by_key(|&j| self.rank[j])
    }

    fn search(&self, mut state: Vec<Decision>, out: &mut Vec<Piece>) {
        if !self.propagate(&mut state) {
            return;
        }
        match self.next_frontier(&state) {
            Some(f) => {
                let mut with = state.clone();
                with[f] = Decision::In;
                self.search(with, out);
                state[f] = Decision::Out;
                self.search(state, out);
            }
            None => {
                // nothing left next to the piece: it is complete
                let ids: Vec<usize> = (0..state.len()).filter(|&f| state[f] == Decision::In).collect();
                out.push(Piece(ids));
            }
        }
    }

    fn pieces_from_root(&self, pos: usize) -> Vec<Piece> {
        let mut state = vec![Decision::Undecided; self.order.len()];
        for &f in &self.order[..pos] {
            state[f] = Decision::Out;
        }
        state[self.order[pos]] = Decision::In;
        let mut out = Vec::new();
        self.search(state, &mut out);
        out
    }
}

/// Enumerates the Perles pieces of a pure complex whose ridges lie in at most
/// two facets, sorted by facet ids and filtered by `opts`.
pub fn find_perles_pieces(ambient: &SimplicialComplex, opts: &SearchOptions) -> Result<Vec<PieceReport>> {
    Ok(filter_reports(all_perles_reports(ambient)?, opts))
}

/// Every Perles piece with its report, unfiltered.
pub fn all_perles_reports(ambient: &SimplicialComplex) -> Result<Vec<PieceReport>> {
    let mut pieces = search_pieces(ambient)?;
    pieces.sort();
    let reports = pieces
        .par_iter()
        .map(|p| report_piece(ambient, p))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(reports.iter().all(|r| r.is_perles));
    Ok(reports)
}

pub fn filter_reports(reports: Vec<PieceReport>, opts: &SearchOptions) -> Vec<PieceReport> {
    reports
        .into_iter()
        .filter(|r| !opts.nonstar_only || r.is_star_of.is_none())
        .filter(|r| !opts.require_nonseparating || r.non_separating)
        .take(opts.max_results.unwrap_or(usize::MAX))
        .collect()
}

fn search_pieces(ambient: &SimplicialComplex) -> Result<Vec<Piece>> {
    if ambient.is_empty() {
        return Ok(Vec::new());
    }
    let space = SearchSpace::new(ambient)?;
    let pieces: Vec<Piece> = (0..space.order.len())
        .into_par_iter()
        .flat_map_iter(|pos| space.pieces_from_root(pos))
        .collect();
    // the pruning rule already guarantees this; keep the definition as the final word
    pieces
        .into_iter()
        .filter_map(|p| match is_perles_piece(ambient, &p) {
            Ok(true) => Some(Ok(p)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

pub const BRUTE_FORCE_LIMIT: usize = 25;

/// Checks every non-empty facet subset against the definition. Testing oracle.
pub fn brute_force_perles(ambient: &SimplicialComplex) -> Result<Vec<Piece>> {
    let n = ambient.num_facets();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            limit: BRUTE_FORCE_LIMIT,
            found: n,
        });
    }
    ambient.pure_dimension()?;
    let facets: Vec<Face> = ambient.facets();
    // for each facet and each of its ridges, the other facets containing that ridge
    let ridge_masks: Vec<Vec<u32>> = facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            f.labels()
                .iter()
                .map(|dropped| {
                    facets
                        .iter()
                        .enumerate()
                        .filter(|&(j, g)| j != i && f.labels().iter().all(|l| l == dropped || g.contains(l)))
                        .fold(0u32, |m, (j, _)| m | (1 << j))
                })
                .collect()
        })
        .collect();
    let adjacency: Vec<u32> = ridge_masks.iter().map(|ms| ms.iter().fold(0, |a, m| a | m)).collect();
    let mut out = Vec::new();
    for subset in 1u32..(1u64 << n) as u32 {
        let members = (0..n).filter(|&i| subset >> i & 1 == 1);
        let one_boundary_each = members
            .clone()
            .all(|i| ridge_masks[i].iter().filter(|&&m| m & subset == 0).count() == 1);
        if !one_boundary_each {
            continue;
        }
        let start = subset.trailing_zeros() as usize;
        let mut reached = 1u32 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adjacency[i] & subset & !reached;
            reached |= new;
            frontier |= new;
        }
        if reached == subset {
            out.push(Piece(members.collect()));
        }
    }
    out.sort();
    Ok(out)
}
