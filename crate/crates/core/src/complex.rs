//! Finite simplicial complexes stored by their facets.
//!
//! Vertices carry string labels. Internally every label gets a dense id in
//! first-seen order and facets are kept as ascending id vectors, so set
//! operations on faces are merges over short sorted slices.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::CombGraph;

/// A face given by its vertex labels, strictly sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<String>);

impl Face {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut v = Vec::new();
        for l in labels {
            let l = l.as_ref();
            if l.is_empty() {
                return Err(Error::EmptyLabel);
            }
            v.push(l.to_string());
        }
        v.sort();
        v.dedup();
        Ok(Face(v))
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|vertices| - 1`; `None` for the empty face.
    pub fn dimension(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.binary_search_by(|l| l.as_str().cmp(label)).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|l| other.contains(l))
    }

    /// Union with one extra vertex.
    pub fn with(&self, label: &str) -> Face {
        let mut v = self.0.clone();
        if !self.contains(label) {
            v.push(label.to_string());
            v.sort();
        }
        Face(v)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|l| l.chars().count() == 1) {
            for l in &self.0 {
                f.write_str(l)?;
            }
            Ok(())
        } else {
            f.write_str(&self.0.join(","))
        }
    }
}

/// `"ABCD"` is four single-character vertices; `"10,11,12"` uses commas.
impl FromStr for Face {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') {
            Face::new(s.split(','))
        } else {
            let chars: Vec<String> = s.chars().map(String::from).collect();
            Face::new(chars)
        }
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Face counts `f_0, ..., f_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Result of [`SimplicialComplex::pseudomanifold_status`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PseudomanifoldStatus {
    NotPure,
    RidgeOverfull,
    Disconnected,
    PseudomanifoldWithBoundary,
    ClosedPseudomanifold,
}

/// A finite simplicial complex represented by its maximal faces.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    facets: Vec<Vec<usize>>,
    dropped: usize,
}

impl PartialEq for SimplicialComplex {
    /// Equality of facet sets as labelled faces.
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.facets();
        let mut b = other.facets();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for SimplicialComplex {}

/// Builds a complex from a facet list. See [`SimplicialComplex::new`].
pub fn build_complex<F, I, S>(facets: F) -> Result<SimplicialComplex>
where
    F: IntoIterator<Item = I>,
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    SimplicialComplex::new(facets)
}

impl SimplicialComplex {
    /// Builds a complex from label sets.
    ///
    /// Duplicate facets are merged and sets contained in another input set are
    /// dropped (counted by [`dropped_facets`](Self::dropped_facets)). Vertex ids
    /// follow first-seen order. Facet order follows the input.
    pub fn new<F, I, S>(facets: F) -> Result<Self>
    where
        F: IntoIterator<Item = I>,
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut raw = Vec::new();
        for (i, facet) in facets.into_iter().enumerate() {
            let mut ids = Vec::new();
            for l in facet {
                let l = l.as_ref();
                if l.is_empty() {
                    return Err(Error::EmptyLabel);
                }
                let id = *index.entry(l.to_string()).or_insert_with(|| {
                    labels.push(l.to_string());
                    labels.len() - 1
                });
                ids.push(id);
            }
            if ids.is_empty() {
                return Err(Error::EmptyFacet(i));
            }
            ids.sort_unstable();
            ids.dedup();
            raw.push(ids);
        }
        if raw.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let (facets, dropped) = maximal_sets(raw);
        Ok(SimplicialComplex {
            labels,
            index,
            facets,
            dropped,
        })
    }

    /// The complex with no faces at all.
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            index: HashMap::new(),
            facets: Vec::new(),
            dropped: 0,
        }
    }

    /// Subcomplex generated by facets given as id vectors of this complex.
    pub(crate) fn with_id_facets<I>(&self, facets: I) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let labelled: Vec<Vec<&str>> = facets
            .into_iter()
            .map(|f| f.iter().map(|&v| self.labels[v].as_str()).collect())
            .collect();
        if labelled.is_empty() || labelled.iter().any(|f| f.is_empty()) {
            return Self::empty();
        }
        Self::new(labelled).expect("facets of an existing complex are valid")
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Number of input sets discarded because another input set contained them.
    pub fn dropped_facets(&self) -> usize {
        self.dropped
    }

    /// Vertex labels in id order.
    pub fn vertex_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn vertex_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn facet(&self, i: usize) -> Face {
        self.face_of(&self.facets[i])
    }

    pub fn facets(&self) -> Vec<Face> {
        self.facets.iter().map(|f| self.face_of(f)).collect()
    }

    /// Facet `i` as ascending vertex ids.
    pub fn facet_ids(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    pub(crate) fn id_facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub(crate) fn face_of(&self, ids: &[usize]) -> Face {
        Face(ids.iter().map(|&v| self.labels[v].clone()).sorted().collect())
    }

    /// Translates a labelled face to ascending ids, if every label is a vertex.
    pub fn face_ids(&self, face: &Face) -> Option<Vec<usize>> {
        let mut ids = face
            .labels()
            .iter()
            .map(|l| self.vertex_id(l))
            .collect::<Option<Vec<_>>>()?;
        ids.sort_unstable();
        Some(ids)
    }

    /// Largest facet dimension; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    /// Dimension of a non-empty pure complex.
    pub fn pure_dimension(&self) -> Result<usize> {
        match self.dimension() {
            Some(d) if self.is_pure() => Ok(d),
            _ => Err(Error::NotPure),
        }
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        match self.face_ids(face) {
            Some(ids) => self.facets.iter().any(|f| is_subset(&ids, f)),
            None => false,
        }
    }

    pub fn facet_index(&self, face: &Face) -> Option<usize> {
        let ids = self.face_ids(face)?;
        self.facets.iter().position(|f| *f == ids)
    }

    /// All faces grouped by dimension, each group sorted by ascending ids.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(d) = self.dimension() else {
            return Vec::new();
        };
        let mut sets: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); d + 1];
        for f in &self.facets {
            for k in 1..=f.len() {
                for sub in f.iter().copied().combinations(k) {
                    sets[k - 1].insert(sub);
                }
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<_> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_dimension().iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    fn require_face(&self, face: &Face) -> Result<Vec<usize>> {
        match self.face_ids(face) {
            Some(ids) if self.facets.iter().any(|f| is_subset(&ids, f)) => Ok(ids),
            _ => Err(Error::FaceNotFound(face.to_string())),
        }
    }

    /// Subcomplex generated by the facets containing `face`.
    pub fn star(&self, face: &Face) -> Result<SimplicialComplex> {
        let ids = self.require_face(face)?;
        Ok(self.with_id_facets(self.facets.iter().filter(|f| is_subset(&ids, f)).cloned()))
    }

    /// Faces disjoint from `face` whose union with it is a face, by maximal elements.
    /// The link of a facet is the empty complex.
    pub fn link(&self, face: &Face) -> Result<SimplicialComplex> {
        let ids = self.require_face(face)?;
        Ok(self.link_ids(&ids))
    }

    pub(crate) fn link_ids(&self, ids: &[usize]) -> SimplicialComplex {
        let rest: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| is_subset(ids, f))
            .map(|f| difference(f, ids))
            .collect();
        if rest.iter().any(Vec::is_empty) {
            return Self::empty();
        }
        self.with_id_facets(rest)
    }

    /// Map from each ridge to the facets containing it. Requires purity.
    pub(crate) fn ridge_cofacets(&self) -> Result<HashMap<Vec<usize>, Vec<usize>>> {
        let d = self.pure_dimension()?;
        let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        if d == 0 {
            map.insert(Vec::new(), (0..self.facets.len()).collect());
            return Ok(map);
        }
        for (i, f) in self.facets.iter().enumerate() {
            for r in ridges_of(f) {
                map.entry(r).or_default().push(i);
            }
        }
        Ok(map)
    }

    /// Subcomplex generated by the ridges lying in exactly one facet.
    pub fn boundary_complex(&self) -> Result<SimplicialComplex> {
        let d = self.pure_dimension()?;
        if d == 0 {
            return Ok(Self::empty());
        }
        let cof = self.ridge_cofacets()?;
        let mut ridges: Vec<Vec<usize>> = cof
            .into_iter()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(r, _)| r)
            .collect();
        ridges.sort_unstable();
        Ok(self.with_id_facets(ridges))
    }

    /// Facets none of whose ridges is a boundary ridge.
    pub fn interior_facets(&self) -> Result<Vec<Face>> {
        let d = self.pure_dimension()?;
        if d == 0 {
            return Ok(if self.facets.len() > 1 {
                self.facets()
            } else {
                Vec::new()
            });
        }
        let cof = self.ridge_cofacets()?;
        Ok(self
            .facets
            .iter()
            .filter(|f| ridges_of(f).all(|r| cof[&r].len() > 1))
            .map(|f| self.face_of(f))
            .collect())
    }

    /// Nodes are facets (in facet order), edges join facets sharing a ridge.
    pub fn facet_ridge_graph(&self) -> Result<CombGraph> {
        let cof = self.ridge_cofacets()?;
        let mut g = CombGraph::new(self.facets().iter().map(Face::to_string));
        let mut ridges: Vec<_> = cof.into_iter().collect();
        ridges.sort_unstable();
        for (_, fs) in ridges {
            for (a, b) in fs.iter().tuple_combinations() {
                g.add_edge(*a, *b);
            }
        }
        Ok(g)
    }

    /// Nodes are vertices (in id order), edges are the 1-faces.
    pub fn vertex_edge_graph(&self) -> CombGraph {
        let mut g = CombGraph::new(self.labels.iter().cloned());
        for f in &self.facets {
            for (a, b) in f.iter().tuple_combinations() {
                g.add_edge(*a, *b);
            }
        }
        g
    }

    pub fn pseudomanifold_status(&self) -> PseudomanifoldStatus {
        let Ok(cof) = self.ridge_cofacets() else {
            return PseudomanifoldStatus::NotPure;
        };
        if cof.values().any(|fs| fs.len() > 2) {
            return PseudomanifoldStatus::RidgeOverfull;
        }
        let g = self.facet_ridge_graph().expect("pure");
        if !g.is_connected() {
            return PseudomanifoldStatus::Disconnected;
        }
        if cof.values().all(|fs| fs.len() == 2) {
            PseudomanifoldStatus::ClosedPseudomanifold
        } else {
            PseudomanifoldStatus::PseudomanifoldWithBoundary
        }
    }

    /// Number of ridges of facet `i` that lie in no other facet.
    pub fn boundary_ridge_count(&self, i: usize) -> Result<usize> {
        let cof = self.ridge_cofacets()?;
        Ok(ridges_of(&self.facets[i]).filter(|r| cof[r].len() == 1).count())
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.facets().iter().join(" "))
    }
}

/// Removes duplicates and sets strictly contained in another, keeping first occurrences.
fn maximal_sets(raw: Vec<Vec<usize>>) -> (Vec<Vec<usize>>, usize) {
    let mut seen = HashSet::new();
    let unique: Vec<Vec<usize>> = raw.into_iter().filter(|f| seen.insert(f.clone())).collect();
    let keep: Vec<bool> = unique
        .iter()
        .map(|f| !unique.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
        .collect();
    let dropped = keep.iter().filter(|&&k| !k).count();
    let facets = unique
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect();
    (facets, dropped)
}

/// `a ⊆ b` for ascending slices.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

pub(crate) fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

/// Codimension-one subsets of an ascending facet.
pub(crate) fn ridges_of(f: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..f.len()).map(move |skip| {
        f.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}
