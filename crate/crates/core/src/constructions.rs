//! Local modifications of 3-complexes used to manufacture Perles pieces, and
//! the seven-vertex building block together with its three-copy assembly.
//!
//! Pattern operations are stated on small pattern labels (`"1"`..`"6"`, or
//! `"0"`..`"5"` for the pinch) and applied through an explicit
//! [`FacetPatternMap`] to the actual vertices.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Assignment of pattern vertex labels to actual vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetPatternMap {
    map: BTreeMap<String, String>,
}

impl FacetPatternMap {
    pub fn new<I, K, V>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let map: BTreeMap<String, String> = pairs.into_iter().map(|(k, v)| (k.into(), v.into())).collect();
        let mut seen = HashSet::new();
        for v in map.values() {
            if v.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if !seen.insert(v) {
                return Err(Error::PatternNotInjective(v.clone()));
            }
        }
        Ok(FacetPatternMap { map })
    }

    /// Parses `"1=A,2=B,..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let pairs = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                    .ok_or_else(|| Error::Parse {
                        line: 1,
                        message: format!("expected pattern=label, got {p:?}"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pairs)
    }

    pub fn get(&self, pattern: &str) -> Result<&str> {
        self.map
            .get(pattern)
            .map(String::as_str)
            .ok_or_else(|| Error::MissingPatternLabel(pattern.to_string()))
    }

    /// Image of a pattern face written as single-character labels, e.g. `"1234"`.
    pub fn image(&self, pattern: &str) -> Result<Face> {
        let labels = pattern
            .chars()
            .map(|ch| self.get(&ch.to_string()).map(str::to_string))
            .collect::<Result<Vec<_>>>()?;
        Face::new(labels)
    }

    /// Same map with one more entry.
    fn extended(&self, pattern: &str, label: &str) -> Result<Self> {
        let mut pairs = self.map.clone();
        pairs.insert(pattern.to_string(), label.to_string());
        Self::new(pairs)
    }
}

fn rebuild(facets: Vec<Face>) -> Result<SimplicialComplex> {
    SimplicialComplex::new(facets.iter().map(|f| f.labels().to_vec()))
}

fn require_fresh(c: &SimplicialComplex, label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::EmptyLabel);
    }
    if c.vertex_id(label).is_some() {
        return Err(Error::LabelCollision(label.to_string()));
    }
    Ok(())
}

/// Number of facets of `c` containing `face`.
fn cofacet_count(c: &SimplicialComplex, face: &Face) -> usize {
    c.facets().iter().filter(|f| face.is_subset(f)).count()
}

fn is_boundary_ridge(c: &SimplicialComplex, ridge: &Face) -> bool {
    cofacet_count(c, ridge) == 1
}

fn is_interior_facet(c: &SimplicialComplex, facet: &Face) -> bool {
    facet
        .labels()
        .iter()
        .all(|drop| cofacet_count(c, &Face::new(facet.labels().iter().filter(|l| *l != drop)).unwrap()) == 2)
}

/// Replaces facet `f` by the cone from `fresh` over its boundary.
pub fn stellar_subdivide_facet(c: &SimplicialComplex, f: &Face, fresh: &str) -> Result<SimplicialComplex> {
    let idx = c.facet_index(f).ok_or_else(|| Error::MissingFacet(f.to_string()))?;
    require_fresh(c, fresh)?;
    let mut facets = c.facets();
    facets.remove(idx);
    for drop in f.labels() {
        let ridge = Face::new(f.labels().iter().filter(|l| *l != drop))?;
        facets.push(ridge.with(fresh));
    }
    rebuild(facets)
}

/// Pattern facets `1234, 1245, 1256` with `123` on the boundary and `1245`,
/// `1256` interior become `1734, 7234, 1745, 7245, 1256` with `7 = fresh`.
/// Afterwards the five facets have boundary triangles `173, 723, 175, 725, 125`.
pub fn boundary_split(c: &SimplicialComplex, m: &FacetPatternMap, fresh: &str) -> Result<SimplicialComplex> {
    let d = c.pure_dimension()?;
    if d != 3 {
        return Err(Error::WrongDimension { expected: 3, found: d });
    }
    let old: Vec<Face> = ["1234", "1245", "1256"]
        .iter()
        .map(|p| m.image(p))
        .collect::<Result<_>>()?;
    for f in &old {
        if c.facet_index(f).is_none() {
            return Err(Error::MissingFacet(f.to_string()));
        }
    }
    let ridge = m.image("123")?;
    if !is_boundary_ridge(c, &ridge) {
        return Err(Error::RidgeNotOnBoundary(ridge.to_string()));
    }
    for f in &old[1..] {
        if !is_interior_facet(c, f) {
            return Err(Error::FacetNotInterior(f.to_string()));
        }
    }
    require_fresh(c, fresh)?;
    let m7 = m.extended("7", fresh)?;
    let mut facets: Vec<Face> = c.facets().into_iter().filter(|f| !old[..2].contains(f)).collect();
    for p in ["1734", "7234", "1745", "7245"] {
        facets.push(m7.image(p)?);
    }
    let out = rebuild(facets)?;
    for p in ["173", "723", "175", "725", "125"] {
        let r = m7.image(p)?;
        if !is_boundary_ridge(&out, &r) {
            return Err(Error::PostconditionFailed(r.to_string()));
        }
    }
    Ok(out)
}

/// Pattern facets `0123, 1234, 2345` with `1234` interior and `012`, `345` on
/// the boundary become ten facets, each with exactly one boundary ridge.
///
/// `1234` is stellarly subdivided with `fresh[0]` (call it 6); then the
/// boundary split is applied to the chain `0123, 1236, 1246` with `fresh[1]`
/// and to the chain `2345, 2346, 1346` with `fresh[2]`. Vertex 6 ends up with
/// an annulus as its link.
pub fn pinch_operation(c: &SimplicialComplex, m: &FacetPatternMap, fresh: [&str; 3]) -> Result<SimplicialComplex> {
    let d = c.pure_dimension()?;
    if d != 3 {
        return Err(Error::WrongDimension { expected: 3, found: d });
    }
    for p in ["0123", "1234", "2345"] {
        let f = m.image(p)?;
        if c.facet_index(&f).is_none() {
            return Err(Error::MissingFacet(f.to_string()));
        }
    }
    let middle = m.image("1234")?;
    if !is_interior_facet(c, &middle) {
        return Err(Error::FacetNotInterior(middle.to_string()));
    }
    for p in ["012", "345"] {
        let r = m.image(p)?;
        if !is_boundary_ridge(c, &r) {
            return Err(Error::RidgeNotOnBoundary(r.to_string()));
        }
    }
    for (i, f) in fresh.iter().enumerate() {
        require_fresh(c, f)?;
        if fresh[..i].contains(f) {
            return Err(Error::LabelCollision(f.to_string()));
        }
    }
    let v = |p: &str| m.get(p).map(str::to_string);
    let subdivided = stellar_subdivide_facet(c, &middle, fresh[0])?;
    let six = fresh[0].to_string();
    let first = FacetPatternMap::new([
        ("1", v("1")?),
        ("2", v("2")?),
        ("3", v("0")?),
        ("4", v("3")?),
        ("5", six.clone()),
        ("6", v("4")?),
    ])?;
    let split_once = boundary_split(&subdivided, &first, fresh[1])?;
    let second = FacetPatternMap::new([
        ("1", v("3")?),
        ("2", v("4")?),
        ("3", v("5")?),
        ("4", v("2")?),
        ("5", six),
        ("6", v("1")?),
    ])?;
    boundary_split(&split_once, &second, fresh[2])
}

/// Rewrites the second label of each pair to the first.
pub fn identify_vertices(c: &SimplicialComplex, pairs: &[(String, String)]) -> Result<SimplicialComplex> {
    let mut used = HashSet::new();
    let mut rename: HashMap<&str, &str> = HashMap::new();
    for (keep, gone) in pairs {
        for l in [keep, gone] {
            if c.vertex_id(l).is_none() {
                return Err(Error::InvalidIdentification(format!("{l} is not a vertex")));
            }
            if !used.insert(l.as_str()) {
                return Err(Error::InvalidIdentification(format!("{l} appears in two pairs")));
            }
        }
        rename.insert(gone, keep);
    }
    let mut seen = HashSet::new();
    let mut facets = Vec::new();
    for f in c.facets() {
        let mapped: Vec<&str> = f
            .labels()
            .iter()
            .map(|l| rename.get(l.as_str()).copied().unwrap_or(l))
            .collect();
        let g = Face::new(&mapped)?;
        if g.len() < f.len() {
            return Err(Error::FacetCollapse(f.to_string()));
        }
        if !seen.insert(g.clone()) {
            return Err(Error::FacetMerge(g.to_string()));
        }
        facets.push(g);
    }
    rebuild(facets)
}

/// Adds `face ∪ {apex}` for each listed face of `c`.
pub fn cone(c: &SimplicialComplex, faces: &[Face], apex: &str) -> Result<SimplicialComplex> {
    require_fresh(c, apex)?;
    let mut facets = c.facets();
    for f in faces {
        if !c.contains_face(f) {
            return Err(Error::FaceNotFound(f.to_string()));
        }
        facets.push(f.with(apex));
    }
    rebuild(facets)
}

/// Labels `prefix0, prefix1, ...` skipping those already used by a complex.
#[derive(Clone, Debug)]
pub struct FreshLabels {
    prefix: String,
    next: usize,
    taken: HashSet<String>,
}

impl FreshLabels {
    pub fn new(prefix: &str, c: &SimplicialComplex) -> Self {
        FreshLabels {
            prefix: prefix.to_string(),
            next: 0,
            taken: c.vertex_labels().iter().cloned().collect(),
        }
    }
}

impl Iterator for FreshLabels {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        loop {
            let l = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken.insert(l.clone()) {
                return Some(l);
            }
        }
    }
}

pub const GAMMA_FACETS: [&str; 8] = ["0125", "0256", "0236", "0346", "0134", "0145", "1345", "2346"];

/// The seven-vertex, eight-tetrahedron building block on labels `0..6`.
pub fn build_gamma() -> SimplicialComplex {
    gamma_copy("")
}

fn gamma_copy(suffix: &str) -> SimplicialComplex {
    SimplicialComplex::new(
        GAMMA_FACETS
            .iter()
            .map(|f| f.chars().map(|ch| format!("{ch}{suffix}")).collect::<Vec<_>>()),
    )
    .expect("building block is a valid complex")
}

/// Three copies `a, b, c` of the building block glued by `1a=2b, 3a=4b,
/// 5a=6b` (and cyclically), then the copies of triangles `256` and `125`
/// coned to a new vertex `7`. Thirteen vertices, thirty facets.
pub fn build_gamma_assembly() -> Result<SimplicialComplex> {
    let copies = ["a", "b", "c"];
    let mut facets = Vec::new();
    for s in copies {
        facets.extend(gamma_copy(s).facets());
    }
    let disjoint = rebuild(facets)?;
    let mut pairs = Vec::new();
    for (i, s) in copies.iter().enumerate() {
        let t = copies[(i + 1) % 3];
        for (x, y) in [("1", "2"), ("3", "4"), ("5", "6")] {
            pairs.push((format!("{x}{s}"), format!("{y}{t}")));
        }
    }
    let glued = identify_vertices(&disjoint, &pairs)?;
    let rename: HashMap<&str, &str> = pairs.iter().map(|(k, g)| (g.as_str(), k.as_str())).collect();
    let mut coned = Vec::new();
    for s in copies {
        for tri in ["256", "125"] {
            let labels: Vec<String> = tri
                .chars()
                .map(|ch| {
                    let l = format!("{ch}{s}");
                    rename.get(l.as_str()).map_or(l.clone(), |k| k.to_string())
                })
                .collect();
            coned.push(Face::new(labels)?);
        }
    }
    cone(&glued, &coned, "7")
}
