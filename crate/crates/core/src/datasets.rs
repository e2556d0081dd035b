//! Complexes and coordinates bundled with the library.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::io::{parse_facet_file, parse_points_file, CorpusEntry};
use crate::realization::PointConfiguration;

pub const DATASET_NAMES: [&str; 7] = [
    "P12.points",
    "P12.piece",
    "S11.sphere",
    "S11.piece",
    "B32.ball",
    "gamma",
    "pinched6",
];

#[derive(Clone, Debug)]
pub enum DatasetContent {
    Complex(CorpusEntry),
    Points(PointConfiguration<BigRational>),
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub name: &'static str,
    pub description: &'static str,
    /// The embedded file, verbatim.
    pub source: &'static str,
    pub content: DatasetContent,
}

impl Dataset {
    pub fn complex(&self) -> Option<&CorpusEntry> {
        match &self.content {
            DatasetContent::Complex(e) => Some(e),
            DatasetContent::Points(_) => None,
        }
    }

    pub fn points(&self) -> Option<&PointConfiguration<BigRational>> {
        match &self.content {
            DatasetContent::Points(p) => Some(p),
            DatasetContent::Complex(_) => None,
        }
    }
}

fn raw(name: &str) -> Option<(&'static str, &'static str)> {
    Some(match name {
        "P12.points" => (
            "Twelve integer points in R^4; their hull is a simplicial 4-polytope with f-vector (12, 50, 76, 38).",
            include_str!("../data/p12_points.txt"),
        ),
        "P12.piece" => (
            "26-facet planar Perles piece of the P12 hull boundary, read off the facet-ridge graph drawing. \
             Elsewhere this example is described as having 28 facets; the drawing has 26 nodes, which is what is stored.",
            include_str!("../data/p12_piece.txt"),
        ),
        "S11.sphere" => (
            "11-vertex simplicial 3-sphere with 38 facets containing a non-planar Perles piece.",
            include_str!("../data/s11_sphere.txt"),
        ),
        "S11.piece" => (
            "26-facet non-star, non-separating Perles piece of S11.sphere with non-planar facet-ridge graph.",
            include_str!("../data/s11_piece.txt"),
        ),
        "B32.ball" => (
            "Shellable 4-ball with 32 facets in shelling order; its boundary is S11.sphere.",
            include_str!("../data/b32_ball.txt"),
        ),
        "gamma" => (
            "Seven-vertex, eight-tetrahedron building block for pinched Perles pieces.",
            include_str!("../data/gamma.txt"),
        ),
        "pinched6" => (
            "Six tetrahedra around vertex 0 whose link is an annulus, so 0 is pinched.",
            include_str!("../data/pinched6.txt"),
        ),
        _ => return None,
    })
}

pub fn paper_dataset(name: &str) -> Result<Dataset> {
    let (description, source) = raw(name).ok_or_else(|| Error::UnknownDataset(name.to_string()))?;
    let name = DATASET_NAMES.iter().copied().find(|n| *n == name).expect("listed");
    let content = if name == "P12.points" {
        DatasetContent::Points(parse_points_file(source)?)
    } else {
        let mut entries = parse_facet_file(source)?;
        DatasetContent::Complex(entries.remove(0))
    };
    Ok(Dataset {
        name,
        description,
        source,
        content,
    })
}

/// Complex dataset, failing for the point set.
pub fn paper_complex(name: &str) -> Result<CorpusEntry> {
    match paper_dataset(name)?.content {
        DatasetContent::Complex(e) => Ok(e),
        DatasetContent::Points(_) => Err(Error::UnknownDataset(format!("{name} is a point set"))),
    }
}

pub fn paper_points() -> PointConfiguration<BigRational> {
    match paper_dataset("P12.points").expect("embedded points parse").content {
        DatasetContent::Points(p) => p,
        DatasetContent::Complex(_) => unreachable!(),
    }
}
