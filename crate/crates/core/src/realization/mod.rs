//! Point configurations in R^4, exact orientation signs and convex-hull facets.
//!
//! Everything here is generic over [`Scalar`]. Verdicts are computed with
//! [`BigRational`](num_rational::BigRational); `f64` is used only inside the
//! realization search in [`heuristic`].

pub mod heuristic;

use std::collections::HashMap;
use std::fmt::Debug;

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use heuristic::{
    realize_heuristic, realize_with, InitStrategy, RealizationOutcome, RealizationStatus, RealizeOptions,
};

/// Ordered signed field-like scalar. Integers work too, since determinants use
/// fraction-free elimination.
pub trait Scalar: Clone + Debug + PartialOrd + Signed {}

impl<T: Clone + Debug + PartialOrd + Signed> Scalar for T {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(x: &T) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// Determinant of a square matrix by Bareiss elimination with largest-pivot row swaps.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        let pivot = (k..n)
            .max_by(|&a, &b| {
                m[a][k]
                    .abs()
                    .partial_cmp(&m[b][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if m[pivot][k].is_zero() {
            return T::zero();
        }
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone()) / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sign of `det[p_1 - p_0, ..., p_d - p_0]` for `d + 1` points in R^d.
pub fn orientation<T: Scalar>(points: &[&[T]]) -> Sign {
    let d = points.len().checked_sub(1).expect("at least one point");
    assert!(points.iter().all(|p| p.len() == d), "need d + 1 points in dimension d");
    let rows = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    Sign::of(&determinant(rows))
}

/// Labelled points of a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration<T> {
    dim: usize,
    labels: Vec<String>,
    coords: Vec<Vec<T>>,
    index: HashMap<String, usize>,
}

impl<T: Scalar> PointConfiguration<T> {
    pub fn new(dim: usize) -> Self {
        PointConfiguration {
            dim,
            labels: Vec::new(),
            coords: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_points<I, S>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<T>)>,
        S: Into<String>,
    {
        let mut pc = Self::new(dim);
        for (l, p) in points {
            pc.push(l, p)?;
        }
        Ok(pc)
    }

    pub fn push(&mut self, label: impl Into<String>, point: Vec<T>) -> Result<()> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if point.len() != self.dim {
            return Err(Error::PointDimension {
                label,
                expected: self.dim,
                found: point.len(),
            });
        }
        if self.index.contains_key(&label) {
            return Err(Error::DuplicatePoint(label));
        }
        self.index.insert(label.clone(), self.labels.len());
        self.labels.push(label);
        self.coords.push(point);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, label: &str) -> Option<&[T]> {
        self.index.get(label).map(|&i| self.coords[i].as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[T])> {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.coords.iter().map(Vec::as_slice))
    }

    /// Points of the listed labels, in that order.
    pub fn restrict<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let mut pc = Self::new(self.dim);
        for l in labels {
            let l = l.as_ref();
            let p = self.get(l).ok_or_else(|| Error::MissingPoint(l.to_string()))?;
            pc.push(l, p.to_vec())?;
        }
        Ok(pc)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PointConfiguration<U> {
        PointConfiguration {
            dim: self.dim,
            labels: self.labels.clone(),
            coords: self.coords.iter().map(|p| p.iter().map(&f).collect()).collect(),
            index: self.index.clone(),
        }
    }
}

impl<T: Scalar + ToPrimitive> PointConfiguration<T> {
    pub fn to_f64(&self) -> PointConfiguration<f64> {
        self.map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

/// Boundary complex of the convex hull together with the simpliciality flag.
#[derive(Clone, Debug)]
pub struct HullFacets {
    pub complex: SimplicialComplex,
    pub simplicial: bool,
}

/// Brute force over all 4-subsets of a configuration in R^4.
pub fn hull_facets<T: Scalar>(pc: &PointConfiguration<T>) -> Result<HullFacets> {
    if pc.dim != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: pc.dim,
        });
    }
    let n = pc.len();
    if n < 5 {
        return Err(Error::TooFewPoints { needed: 5, found: n });
    }
    let mut facets = Vec::new();
    let mut supporting_with_extra = false;
    let mut full_dimensional = false;
    for t in (0..n).combinations(4) {
        let mut pts: Vec<&[T]> = t.iter().map(|&i| pc.coords[i].as_slice()).collect();
        pts.push(&[]);
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        for p in (0..n).filter(|p| !t.contains(p)) {
            pts[4] = &pc.coords[p];
            match orientation(&pts) {
                Sign::Positive => pos += 1,
                Sign::Negative => neg += 1,
                Sign::Zero => zero += 1,
            }
            if pos > 0 && neg > 0 {
                break;
            }
        }
        if pos + neg > 0 {
            full_dimensional = true;
        }
        if pos > 0 && neg > 0 || pos + neg == 0 {
            continue;
        }
        if zero > 0 {
            supporting_with_extra = true;
        } else {
            facets.push(t.iter().map(|&i| pc.labels[i].as_str()).collect::<Vec<_>>());
        }
    }
    if !full_dimensional {
        return Err(Error::AffinelyDependent);
    }
    let complex = SimplicialComplex::new(facets)?;
    let simplicial = !supporting_with_extra && complex.num_vertices() == n;
    Ok(HullFacets { complex, simplicial })
}

/// Whether `pc` realizes `c` as the boundary of a simplicial 4-polytope.
pub fn verify_realization<T: Scalar>(c: &SimplicialComplex, pc: &PointConfiguration<T>) -> Result<bool> {
    let d = c.pure_dimension()?;
    if d != 3 {
        return Err(Error::WrongDimension { expected: 3, found: d });
    }
    if let Some(l) = c.vertex_labels().iter().find(|l| pc.get(l).is_none()) {
        return Err(Error::MissingPoint(l.clone()));
    }
    let hull = match hull_facets(pc) {
        Ok(h) => h,
        Err(Error::AffinelyDependent) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(hull.simplicial && hull.complex == *c)
}
