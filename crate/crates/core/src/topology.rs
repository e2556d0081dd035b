//! Sphere certification, surface recognition, pinched vertices and shellings.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, PseudomanifoldStatus, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::CombGraph;
pub use crate::homology::{betti_numbers, BettiVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereStatus {
    CertifiedSphere,
    HomologySphereOnly,
    NotSphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereCertificate {
    pub status: SphereStatus,
    pub witness: String,
}

impl SphereCertificate {
    fn new(status: SphereStatus, witness: impl Into<String>) -> Self {
        SphereCertificate {
            status,
            witness: witness.into(),
        }
    }

    fn not_sphere(witness: impl Into<String>) -> Self {
        Self::new(SphereStatus::NotSphere, witness)
    }
}

/// Certifies that `c` triangulates a sphere.
///
/// In dimension 3 a certificate needs a closed pseudomanifold whose vertex
/// links are 2-spheres and edge links are cycles, plus the integral homology
/// of `S^3`. Fundamental groups are not computed. Dimensions at most 2 are
/// decided exactly; above 3 only homology of the complex and its vertex links
/// is checked and the verdict is at best `HomologySphereOnly`.
pub fn certify_sphere(c: &SimplicialComplex) -> SphereCertificate {
    let Some(d) = c.dimension() else {
        return SphereCertificate::not_sphere("empty complex");
    };
    let status = c.pseudomanifold_status();
    if status != PseudomanifoldStatus::ClosedPseudomanifold {
        return SphereCertificate::not_sphere(format!("{status:?}"));
    }
    match d {
        0 => {
            if c.num_facets() == 2 {
                SphereCertificate::new(SphereStatus::CertifiedSphere, "two points")
            } else {
                SphereCertificate::not_sphere(format!("{} points", c.num_facets()))
            }
        }
        // a connected closed 1-pseudomanifold is a cycle
        1 => SphereCertificate::new(SphereStatus::CertifiedSphere, "cycle"),
        2 => {
            if is_two_sphere(c).unwrap_or(false) {
                SphereCertificate::new(
                    SphereStatus::CertifiedSphere,
                    "closed surface with Euler characteristic 2",
                )
            } else {
                SphereCertificate::not_sphere("surface is not a 2-sphere")
            }
        }
        _ => {
            for v in 0..c.num_vertices() {
                let lk = c.link_ids(&[v]);
                let ok = if d == 3 {
                    is_two_sphere(&lk).unwrap_or(false)
                } else {
                    betti_numbers(&lk).is_sphere(d - 1)
                };
                if !ok {
                    return SphereCertificate::not_sphere(format!(
                        "link of vertex {} is not a {}-sphere",
                        c.label(v),
                        d - 1
                    ));
                }
            }
            if d == 3 {
                let g = c.vertex_edge_graph();
                for (u, v) in g.edges() {
                    let lk = c.link_ids(&[u.min(v), u.max(v)]);
                    if !is_single_cycle(&lk) {
                        return SphereCertificate::not_sphere(format!(
                            "link of edge {} is not a cycle",
                            c.face_of(&[u, v])
                        ));
                    }
                }
            }
            let betti = betti_numbers(c);
            if !betti.is_sphere(d) {
                return SphereCertificate::not_sphere(format!(
                    "homology ranks {:?}{}",
                    betti.ranks,
                    if betti.has_torsion() { " with torsion" } else { "" }
                ));
            }
            if d == 3 {
                SphereCertificate::new(
                    SphereStatus::CertifiedSphere,
                    "combinatorial 3-manifold with the integral homology of S^3",
                )
            } else {
                SphereCertificate::new(
                    SphereStatus::HomologySphereOnly,
                    format!("homology {d}-sphere whose vertex links are homology spheres"),
                )
            }
        }
    }
}

/// Graph formed by the facets of a 1-dimensional complex.
fn one_skeleton_graph(c: &SimplicialComplex) -> Option<CombGraph> {
    if c.is_empty() || c.pure_dimension().ok()? != 1 {
        return None;
    }
    let mut g = CombGraph::new(c.vertex_labels().iter().cloned());
    for f in c.id_facets() {
        g.add_edge(f[0], f[1]);
    }
    Some(g)
}

fn is_single_cycle(c: &SimplicialComplex) -> bool {
    one_skeleton_graph(c).is_some_and(|g| g.node_count() >= 3 && g.is_connected() && g.is_regular(2))
}

fn is_path_or_cycle(c: &SimplicialComplex) -> bool {
    one_skeleton_graph(c).is_some_and(|g| g.is_connected() && (0..g.node_count()).all(|u| g.degree(u) <= 2))
}

fn require_surface(s: &SimplicialComplex) -> Result<()> {
    let d = s.pure_dimension()?;
    if d != 2 {
        return Err(Error::WrongDimension { expected: 2, found: d });
    }
    Ok(())
}

fn edge_triangle_counts(s: &SimplicialComplex) -> HashMap<Vec<usize>, usize> {
    let mut counts = HashMap::new();
    for f in s.id_facets() {
        for e in f.iter().copied().combinations(2) {
            *counts.entry(e).or_insert(0) += 1;
        }
    }
    counts
}

/// Connected, every edge in exactly two triangles, vertex links cycles, `χ = 2`.
pub fn is_two_sphere(s: &SimplicialComplex) -> Result<bool> {
    require_surface(s)?;
    let counts = edge_triangle_counts(s);
    Ok(s.vertex_edge_graph().is_connected()
        && counts.values().all(|&n| n == 2)
        && (0..s.num_vertices()).all(|v| is_single_cycle(&s.link_ids(&[v])))
        && s.euler_characteristic() == 2)
}

/// Connected surface with boundary, `χ = 0`, and exactly two boundary cycles.
pub fn is_annulus(s: &SimplicialComplex) -> Result<bool> {
    require_surface(s)?;
    let counts = edge_triangle_counts(s);
    if !s.vertex_edge_graph().is_connected()
        || counts.values().any(|&n| n > 2)
        || !(0..s.num_vertices()).all(|v| is_path_or_cycle(&s.link_ids(&[v])))
        || s.euler_characteristic() != 0
    {
        return Ok(false);
    }
    Ok(boundary_cycle_count(s.num_vertices(), &counts) == Some(2))
}

/// Components of the boundary-edge graph, provided each one is a simple cycle.
fn boundary_cycle_count(n: usize, counts: &HashMap<Vec<usize>, usize>) -> Option<usize> {
    let mut g = CombGraph::with_nodes(n);
    for (e, _) in counts.iter().filter(|(_, &k)| k == 1) {
        g.add_edge(e[0], e[1]);
    }
    let cycles = g
        .connected_components()
        .into_iter()
        .filter(|comp| comp.len() > 1 || g.degree(comp[0]) > 0)
        .map(|comp| comp.iter().all(|&u| g.degree(u) == 2).then_some(()))
        .collect::<Option<Vec<_>>>()?;
    Some(cycles.len())
}

/// Vertices of a pure 3-complex whose link is an annulus, sorted by label.
pub fn pinched_vertices(c: &SimplicialComplex) -> Result<Vec<String>> {
    let d = c.pure_dimension()?;
    if d != 3 {
        return Err(Error::WrongDimension { expected: 3, found: d });
    }
    let mut out: Vec<String> = (0..c.num_vertices())
        .filter(|&v| is_annulus(&c.link_ids(&[v])).unwrap_or(false))
        .map(|v| c.label(v).to_string())
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingViolation {
    /// 1-based position of the offending facet.
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingReport {
    pub valid: bool,
    pub first_violation: Option<ShellingViolation>,
}

/// Checks that each facet meets the union of its predecessors in a non-empty
/// complex generated by ridges of that facet.
pub fn verify_shelling(facets: &[Face]) -> Result<ShellingReport> {
    if !facets.iter().map(Face::len).all_equal() {
        return Err(Error::NotPure);
    }
    for (j, f) in facets.iter().enumerate().skip(1) {
        let inter: Vec<Vec<&String>> = facets[..j]
            .iter()
            .map(|g| f.labels().iter().filter(|l| g.contains(l)).collect())
            .collect();
        let ridges: Vec<&Vec<&String>> = inter.iter().filter(|i| i.len() + 1 == f.len()).collect();
        let violation = if inter.iter().any(|i| i.len() == f.len()) {
            Some(format!("{f} repeats an earlier facet"))
        } else if inter.iter().all(Vec::is_empty) {
            Some(format!("{f} meets no earlier facet"))
        } else if ridges.is_empty() {
            Some(format!("{f} shares no ridge with earlier facets"))
        } else {
            inter
                .iter()
                .find(|i| !i.is_empty() && !ridges.iter().any(|r| i.iter().all(|x| r.contains(x))))
                .map(|i| {
                    format!(
                        "{f} meets an earlier facet in {{{}}}, which lies in no shared ridge",
                        i.iter().join(",")
                    )
                })
        };
        if let Some(reason) = violation {
            return Ok(ShellingReport {
                valid: false,
                first_violation: Some(ShellingViolation { step: j + 1, reason }),
            });
        }
    }
    Ok(ShellingReport {
        valid: true,
        first_violation: None,
    })
}
