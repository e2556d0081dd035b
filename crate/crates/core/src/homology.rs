//! Simplicial chain complexes and integer homology.
//!
//! Boundary matrices are generic over the integer type so the same code runs
//! on machine integers for quick checks and on [`BigInt`] for homology, where
//! Smith normal form entries are allowed to grow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Integer + Clone> IntMatrix<T> {
    pub fn mul(&self, other: &IntMatrix<T>) -> IntMatrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: IntMatrix<T> = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

/// Matrix of the boundary map `C_k -> C_{k-1}`: rows are `(k-1)`-faces, columns
/// `k`-faces, both in the order of [`SimplicialComplex::faces_by_dimension`].
/// Vertices are ordered by id for the orientation signs.
pub fn boundary_matrix<T>(c: &SimplicialComplex, k: usize) -> IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    let faces = c.faces_by_dimension();
    boundary_from_faces(&faces, k)
}

fn boundary_from_faces<T>(faces: &[Vec<Vec<usize>>], k: usize) -> IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    let cols = faces.get(k).map_or(0, Vec::len);
    if k == 0 {
        return IntMatrix::zeros(0, cols);
    }
    let rows = faces.get(k - 1).map_or(0, Vec::len);
    let mut m = IntMatrix::zeros(rows, cols);
    if cols == 0 {
        return m;
    }
    let row_of: HashMap<&[usize], usize> = faces[k - 1]
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    for (j, face) in faces[k].iter().enumerate() {
        for skip in 0..face.len() {
            let sub: Vec<usize> = face
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            let sign = if skip % 2 == 0 { T::one() } else { -T::one() };
            m.set(row_of[sub.as_slice()], j, sign);
        }
    }
    m
}

/// Non-zero invariant factors of `m` (positive, each dividing the next).
pub fn smith_invariant_factors<T>(mut m: IntMatrix<T>) -> Vec<T>
where
    T: Integer + Signed + Clone,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest non-zero entry of the remaining block becomes the pivot
        let Some((pr, pc)) = min_nonzero(&m, (t..rows).flat_map(|r| (t..cols).map(move |c| (r, c)))) else {
            break;
        };
        swap_rows(&mut m, t, pr);
        swap_cols(&mut m, t, pc);
        loop {
            let pivot = m.get(t, t).clone();
            for r in t + 1..rows {
                if !m.get(r, t).is_zero() {
                    let q = m.get(r, t).div_floor(&pivot);
                    add_row_multiple(&mut m, r, t, &q);
                }
            }
            for c in t + 1..cols {
                if !m.get(t, c).is_zero() {
                    let q = m.get(t, c).div_floor(&pivot);
                    add_col_multiple(&mut m, c, t, &q);
                }
            }
            let rest = (t + 1..rows).map(|r| (r, t)).chain((t + 1..cols).map(|c| (t, c)));
            match min_nonzero(&m, rest) {
                None => break,
                Some((r, c)) => {
                    if c == t {
                        swap_rows(&mut m, t, r);
                    } else {
                        swap_cols(&mut m, t, c);
                    }
                }
            }
        }
        diag.push(m.get(t, t).abs());
        t += 1;
    }
    // diagonal entries -> divisibility chain via (a, b) -> (gcd, lcm)
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (g, l) = (diag[i].gcd(&diag[j]), diag[i].lcm(&diag[j]));
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn min_nonzero<T, I>(m: &IntMatrix<T>, cells: I) -> Option<(usize, usize)>
where
    T: Integer + Signed + Clone,
    I: Iterator<Item = (usize, usize)>,
{
    let mut best: Option<((usize, usize), T)> = None;
    for (r, c) in cells {
        let v = m.get(r, c);
        if v.is_zero() {
            continue;
        }
        let a = v.abs();
        if best.as_ref().is_none_or(|(_, b)| a < *b) {
            let one = a.is_one();
            best = Some(((r, c), a));
            if one {
                break;
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn swap_rows<T: Clone + Zero>(m: &mut IntMatrix<T>, a: usize, b: usize) {
    if a != b {
        for c in 0..m.cols {
            m.data.swap(a * m.cols + c, b * m.cols + c);
        }
    }
}

fn swap_cols<T: Clone + Zero>(m: &mut IntMatrix<T>, a: usize, b: usize) {
    if a != b {
        for r in 0..m.rows {
            m.data.swap(r * m.cols + a, r * m.cols + b);
        }
    }
}

/// row[dst] -= q * row[src]
fn add_row_multiple<T: Integer + Clone>(m: &mut IntMatrix<T>, dst: usize, src: usize, q: &T) {
    for c in 0..m.cols {
        let s = m.get(src, c).clone();
        if !s.is_zero() {
            let v = m.get(dst, c).clone() - q.clone() * s;
            m.set(dst, c, v);
        }
    }
}

/// col[dst] -= q * col[src]
fn add_col_multiple<T: Integer + Clone>(m: &mut IntMatrix<T>, dst: usize, src: usize, q: &T) {
    for r in 0..m.rows {
        let s = m.get(r, src).clone();
        if !s.is_zero() {
            let v = m.get(r, dst).clone() - q.clone() * s;
            m.set(r, dst, v);
        }
    }
}

/// Unreduced integral homology: Betti ranks and per-dimension torsion flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub ranks: Vec<usize>,
    pub torsion: Vec<bool>,
}

impl BettiVector {
    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|&t| t)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Homology of the `d`-sphere without torsion.
    pub fn is_sphere(&self, d: usize) -> bool {
        if self.has_torsion() || self.ranks.len() != d + 1 {
            return false;
        }
        if d == 0 {
            return self.ranks == [2];
        }
        self.ranks
            .iter()
            .enumerate()
            .all(|(i, &b)| b == usize::from(i == 0 || i == d))
    }
}

pub fn betti_numbers(c: &SimplicialComplex) -> BettiVector {
    let faces = c.faces_by_dimension();
    let d = faces.len();
    // factors[k] = invariant factors of the boundary map out of dimension k
    let factors: Vec<Vec<BigInt>> = (0..=d)
        .map(|k| {
            if k == 0 || k == d {
                Vec::new()
            } else {
                smith_invariant_factors(boundary_from_faces::<BigInt>(&faces, k))
            }
        })
        .collect();
    let ranks = (0..d)
        .map(|k| faces[k].len() - factors[k].len() - factors[k + 1].len())
        .collect();
    let torsion = (0..d).map(|k| factors[k + 1].iter().any(|f| !f.is_one())).collect();
    BettiVector { ranks, torsion }
}
