//! Randomised search for coordinates realizing a simplicial 3-sphere.
//!
//! Each facet's hyperplane should have every other vertex strictly on one
//! side, the same side for all facets once they are coherently oriented. The
//! search descends a penalty on oriented volumes that are wrong or too small,
//! restarting from fresh points when it stalls. Once all signs look right in
//! floating point it rounds to dyadic rationals and asks
//! [`verify_realization`] for the exact verdict.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{verify_realization, PointConfiguration};
use crate::complex::{Face, SimplicialComplex};

type P4 = [f64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RealizationStatus {
    Realized,
    Failed,
}

#[derive(Clone, Debug)]
pub struct RealizationOutcome {
    pub status: RealizationStatus,
    /// Exact coordinates, present only when realized.
    pub points: Option<PointConfiguration<BigRational>>,
    pub iterations: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitStrategy {
    /// Uniform points in the unit ball.
    #[default]
    Random,
    /// Link of a vertex-richest edge on a circle, the edge across it.
    LargestEdgeLink,
    /// Laplacian eigenvectors of the edge graph, pushed onto the unit sphere.
    Spectral,
}

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    pub seed: u64,
    pub max_iters: usize,
    pub strategy: InitStrategy,
    /// Smallest oriented volume accepted for a facet and a vertex, with
    /// coordinates in the unit box.
    pub margin: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            seed: 0,
            max_iters: 10_000,
            strategy: InitStrategy::Random,
            margin: 0.1,
        }
    }
}

/// Runs the search with random initial points unless `init` is given.
pub fn realize_heuristic(
    c: &SimplicialComplex,
    init: Option<&PointConfiguration<BigRational>>,
    seed: u64,
    max_iters: usize,
) -> RealizationOutcome {
    let opts = RealizeOptions {
        seed,
        max_iters,
        ..RealizeOptions::default()
    };
    realize_with(c, init, &opts)
}

pub fn realize_with(
    c: &SimplicialComplex,
    init: Option<&PointConfiguration<BigRational>>,
    opts: &RealizeOptions,
) -> RealizationOutcome {
    let failed = |iterations| RealizationOutcome {
        status: RealizationStatus::Failed,
        points: None,
        iterations,
        seed: opts.seed,
    };
    if c.pure_dimension().ok() != Some(3) || c.num_vertices() < 5 {
        return failed(0);
    }
    let labels = c.vertex_labels();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x: Vec<P4> = match init {
        Some(pc) => {
            let Ok(exact) = pc.restrict(labels) else {
                return failed(0);
            };
            if verify_realization(c, &exact).unwrap_or(false) {
                return RealizationOutcome {
                    status: RealizationStatus::Realized,
                    points: Some(exact),
                    iterations: 0,
                    seed: opts.seed,
                };
            }
            exact.to_f64().iter().map(|(_, p)| [p[0], p[1], p[2], p[3]]).collect()
        }
        None => initial_points(c, opts.strategy, &mut rng),
    };
    normalize(&mut x);
    let facets: Vec<[usize; 4]> = (0..c.num_facets())
        .map(|i| {
            let f = c.facet_ids(i);
            [f[0], f[1], f[2], f[3]]
        })
        .collect();
    let Some(orient) = coherent_orientation(c) else {
        return failed(0);
    };
    let n = x.len();
    let pairs: Vec<(usize, usize)> = facets
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..n).filter(move |p| !f.contains(p)).map(move |p| (i, p)))
        .collect();
    let mut problem = Problem {
        facets: &facets,
        pairs: &pairs,
        orient: &orient,
        margin: opts.margin,
    };
    let mut sign = problem.global_sign(&x);
    let mut t: f64 = 1.0;
    let mut mark = f64::INFINITY;
    let mut since_mark = 0;
    let mut restarts = 0;
    for it in 0..=opts.max_iters {
        let (penalty, grad) = problem.evaluate(&x, sign, true);
        if problem.strictly_ok(&x, sign) {
            if let Some(exact) = round_and_verify(c, &x) {
                return RealizationOutcome {
                    status: RealizationStatus::Realized,
                    points: Some(exact),
                    iterations: it,
                    seed: opts.seed,
                };
            }
        }
        if it == opts.max_iters {
            break;
        }
        let slope: f64 = grad.iter().map(|g| dot(g, g)).sum();
        let mut accepted = false;
        while t > MIN_STEP {
            let y: Vec<P4> = x
                .iter()
                .zip(&grad)
                .map(|(p, g)| std::array::from_fn(|k| p[k] - t * g[k]))
                .collect();
            if problem.evaluate(&y, sign, false).0 <= penalty - 1e-4 * t * slope {
                x = y;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        t = if accepted { (t * 2.0).min(MAX_STEP) } else { 1.0 };
        since_mark += 1;
        let stalled = since_mark == STALL_WINDOW && penalty > 0.95 * mark;
        if since_mark == STALL_WINDOW {
            mark = penalty;
            since_mark = 0;
        }
        if stalled {
            restarts += 1;
            problem.margin = opts.margin * 0.5f64.powi(restarts % 4);
            x = initial_points(c, InitStrategy::Random, &mut rng);
            normalize(&mut x);
            sign = problem.global_sign(&x);
            mark = f64::INFINITY;
        } else if !accepted {
            for p in x.iter_mut() {
                let d = random_in_ball(&mut rng, 1e-3);
                *p = std::array::from_fn(|k| p[k] + d[k]);
            }
        }
    }
    failed(opts.max_iters)
}

const MIN_STEP: f64 = 1e-9;
const MAX_STEP: f64 = 1e6;
const STALL_WINDOW: usize = 200;

/// Oriented-volume constraints: for facet `f` with sign `o_f` and every other
/// vertex `p`, `sign * o_f * det(f, p)` should be at least `margin`, with all
/// coordinates in the unit box.
struct Problem<'a> {
    facets: &'a [[usize; 4]],
    pairs: &'a [(usize, usize)],
    orient: &'a [f64],
    margin: f64,
}

impl Problem<'_> {
    fn global_sign(&self, x: &[P4]) -> f64 {
        let vote: f64 = self
            .pairs
            .iter()
            .map(|&(i, p)| self.orient[i] * volume(x, &self.facets[i], p).0.signum())
            .sum();
        if vote >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    fn strictly_ok(&self, x: &[P4], sign: f64) -> bool {
        self.pairs
            .iter()
            .all(|&(i, p)| sign * self.orient[i] * volume(x, &self.facets[i], p).0 > 0.0)
    }

    /// Squared shortfalls plus squared box overshoot, and the gradient if asked.
    fn evaluate(&self, x: &[P4], sign: f64, with_grad: bool) -> (f64, Vec<P4>) {
        let mut grad = if with_grad { vec![[0.0; 4]; x.len()] } else { Vec::new() };
        let mut total = 0.0;
        for &(i, p) in self.pairs {
            let f = &self.facets[i];
            let s = sign * self.orient[i];
            let (d, dd) = volume(x, f, p);
            let v = self.margin - s * d;
            if v <= 0.0 {
                continue;
            }
            total += v * v;
            if with_grad {
                for (j, &q) in f.iter().chain([&p]).enumerate() {
                    for k in 0..4 {
                        grad[q][k] -= 2.0 * v * s * dd[j][k];
                    }
                }
            }
        }
        for (q, pt) in x.iter().enumerate() {
            for k in 0..4 {
                let over = pt[k].abs() - 1.0;
                if over > 0.0 {
                    total += over * over;
                    if with_grad {
                        grad[q][k] += 2.0 * over * pt[k].signum();
                    }
                }
            }
        }
        (total, grad)
    }
}

/// `det(f1 - f0, f2 - f0, f3 - f0, p - f0)` and its gradient in each of the
/// five points, in the order `f0..f3, p`.
fn volume(x: &[P4], f: &[usize; 4], p: usize) -> (f64, [P4; 5]) {
    let o = &x[f[0]];
    let m = [sub(&x[f[1]], o), sub(&x[f[2]], o), sub(&x[f[3]], o), sub(&x[p], o)];
    let mut cof = [[0.0; 4]; 4];
    for (r, row) in cof.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let rs: Vec<usize> = (0..4).filter(|&i| i != r).collect();
            let cs: Vec<usize> = (0..4).filter(|&i| i != c).collect();
            let a = |i: usize, j: usize| m[rs[i]][cs[j]];
            let minor = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            *entry = if (r + c) % 2 == 0 { minor } else { -minor };
        }
    }
    let det = (0..4).map(|k| m[0][k] * cof[0][k]).sum();
    let mut grad = [[0.0; 4]; 5];
    for k in 0..4 {
        grad[0][k] = -(0..4).map(|r| cof[r][k]).sum::<f64>();
        for r in 0..4 {
            grad[r + 1][k] = cof[r][k];
        }
    }
    (det, grad)
}

/// Signs `o_f` making the facets, read in increasing vertex order, a coherently
/// oriented closed pseudomanifold. `None` if there is no such orientation.
fn coherent_orientation(c: &SimplicialComplex) -> Option<Vec<f64>> {
    let cof = c.ridge_cofacets().ok()?;
    let m = c.num_facets();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for (ridge, fs) in &cof {
        let [f, g] = fs[..] else { return None };
        // position of the vertex opposite the ridge, as a parity sign
        let parity = |i: usize| {
            let pos = c.facet_ids(i).iter().position(|v| !ridge.contains(v)).unwrap_or(0);
            if pos % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        };
        let rel = -parity(f) * parity(g);
        adj[f].push((g, rel));
        adj[g].push((f, rel));
    }
    let mut o = vec![0.0; m];
    for start in 0..m {
        if o[start] != 0.0 {
            continue;
        }
        o[start] = 1.0;
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &(g, rel) in &adj[f] {
                let want = o[f] * rel;
                if o[g] == 0.0 {
                    o[g] = want;
                    stack.push(g);
                } else if o[g] != want {
                    return None;
                }
            }
        }
    }
    Some(o)
}

fn round_and_verify(c: &SimplicialComplex, x: &[P4]) -> Option<PointConfiguration<BigRational>> {
    for k in 4..=40 {
        let scale = f64::from(2u32).powi(k);
        let denom = BigInt::one() << k as usize;
        let points = c.vertex_labels().iter().zip(x).map(|(l, p)| {
            let coords = p
                .iter()
                .map(|&v| {
                    let num = BigInt::from_f64((v * scale).round()).unwrap_or_default();
                    BigRational::new(num, denom.clone())
                })
                .collect();
            (l.clone(), coords)
        });
        let pc = PointConfiguration::from_points(4, points).ok()?;
        if verify_realization(c, &pc).unwrap_or(false) {
            return Some(pc);
        }
    }
    None
}

fn initial_points(c: &SimplicialComplex, strategy: InitStrategy, rng: &mut ChaCha8Rng) -> Vec<P4> {
    let n = c.num_vertices();
    let mut x: Vec<P4> = (0..n).map(|_| random_in_ball(rng, 1.0)).collect();
    if strategy == InitStrategy::Spectral {
        return spectral_points(c, rng);
    }
    if strategy == InitStrategy::LargestEdgeLink {
        if let Some((u, v, cycle)) = largest_edge_link(c) {
            x[u] = [0.0, 0.0, 1.0, 0.0];
            x[v] = [0.0, 0.0, 0.0, 1.0];
            let m = cycle.len() as f64;
            for (i, &w) in cycle.iter().enumerate() {
                let a = std::f64::consts::TAU * i as f64 / m;
                x[w] = [a.cos(), a.sin(), 0.0, 0.0];
            }
            let placed: Vec<usize> = [u, v].into_iter().chain(cycle.iter().copied()).collect();
            for (w, p) in x.iter_mut().enumerate() {
                if !placed.contains(&w) {
                    let r = random_in_ball(rng, 0.3);
                    *p = [r[0], r[1], r[2] - 0.4, r[3] - 0.4];
                }
            }
        }
    }
    x
}

fn spectral_points(c: &SimplicialComplex, rng: &mut ChaCha8Rng) -> Vec<P4> {
    let g = c.vertex_edge_graph();
    let n = g.node_count();
    let lap = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(lap);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    (0..n)
        .map(|v| {
            let jitter = random_in_ball(rng, 1e-3);
            let p: P4 = std::array::from_fn(|k| eig.eigenvectors[(v, order[k + 1])] + jitter[k]);
            let len = dot(&p, &p).sqrt();
            p.map(|x| x / len)
        })
        .collect()
}

/// Edge with the longest link, and its link vertices in cyclic order.
fn largest_edge_link(c: &SimplicialComplex) -> Option<(usize, usize, Vec<usize>)> {
    let mut best: Option<(usize, usize, SimplicialComplex)> = None;
    for e in c.vertex_edge_graph().edges() {
        let face = Face::new([c.label(e.0), c.label(e.1)]).ok()?;
        let link = c.link(&face).ok()?;
        if best.as_ref().is_none_or(|b| link.num_vertices() > b.2.num_vertices()) {
            best = Some((e.0, e.1, link));
        }
    }
    let (u, v, link) = best?;
    let g = link.vertex_edge_graph();
    let mut order = vec![0];
    let mut prev = usize::MAX;
    while order.len() < g.node_count() {
        let cur = *order.last()?;
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev && !order.contains(&w));
        match next {
            Some(w) => {
                prev = cur;
                order.push(w);
            }
            None => break,
        }
    }
    if order.len() < g.node_count() {
        order = (0..g.node_count()).collect();
    }
    let ids = order
        .iter()
        .map(|&w| c.vertex_id(g.label(w)))
        .collect::<Option<Vec<_>>>()?;
    Some((u, v, ids))
}

fn random_in_ball(rng: &mut ChaCha8Rng, radius: f64) -> P4 {
    loop {
        let p: P4 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let r2 = dot(&p, &p);
        if r2 <= 1.0 && r2 > 1e-6 {
            return p.map(|v| v * radius);
        }
    }
}

/// Translates to the centroid and scales into the unit ball.
fn normalize(x: &mut [P4]) {
    let n = x.len() as f64;
    let mut mean = [0.0; 4];
    for p in x.iter() {
        for k in 0..4 {
            mean[k] += p[k] / n;
        }
    }
    let mut r: f64 = 0.0;
    for p in x.iter_mut() {
        *p = sub(p, &mean);
        r = r.max(dot(p, p).sqrt());
    }
    if r > 0.0 && r.is_finite() {
        for p in x.iter_mut() {
            *p = p.map(|v| v / r);
        }
    }
}

fn sub(a: &P4, b: &P4) -> P4 {
    std::array::from_fn(|k| a[k] - b[k])
}

fn dot(a: &P4, b: &P4) -> f64 {
    (0..4).map(|k| a[k] * b[k]).sum()
}
