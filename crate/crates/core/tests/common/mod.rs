#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use perles_core::complex::{Face, SimplicialComplex};
use perles_core::constructions::stellar_subdivide_facet;
use perles_core::graph::CombGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn cx(facets: &[&str]) -> SimplicialComplex {
    SimplicialComplex::new(facets.iter().map(|f| f.parse::<Face>().unwrap().labels().to_vec())).unwrap()
}

pub fn simplex_boundary() -> SimplicialComplex {
    cx(&["0123", "0124", "0134", "0234", "1234"])
}

/// Stacked sphere of dimension `d` (2 or 3) after `steps` random stellar subdivisions.
pub fn stacked_sphere(rng: &mut ChaCha8Rng, d: usize, steps: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..d + 2).map(|i| format!("v{i}")).collect();
    let mut c = SimplicialComplex::new((0..d + 2).map(|skip| {
        labels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, l)| l.clone())
            .collect::<Vec<_>>()
    }))
    .unwrap();
    for k in 0..steps {
        let f = c.facet(rng.gen_range(0..c.num_facets()));
        c = stellar_subdivide_facet(&c, &f, &format!("v{}", d + 2 + k)).unwrap();
    }
    c
}

/// Facet-connected subcomplex of `c` with `size` facets grown from a random facet.
pub fn random_patch(rng: &mut ChaCha8Rng, c: &SimplicialComplex, size: usize) -> SimplicialComplex {
    let g = c.facet_ridge_graph().unwrap();
    let mut chosen = vec![rng.gen_range(0..c.num_facets())];
    let mut in_set: HashSet<usize> = chosen.iter().copied().collect();
    while chosen.len() < size.min(c.num_facets()) {
        let frontier: Vec<usize> = chosen
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().copied())
            .filter(|v| !in_set.contains(v))
            .collect();
        let Some(&next) = frontier.choose(rng) else { break };
        in_set.insert(next);
        chosen.push(next);
    }
    SimplicialComplex::new(chosen.iter().map(|&i| c.facet(i).labels().to_vec())).unwrap()
}

/// Random pure pseudomanifold (possibly with boundary) of dimension 2 or 3 with at most `max_facets` facets.
pub fn random_pseudomanifold(rng: &mut ChaCha8Rng, max_facets: usize) -> SimplicialComplex {
    let d = if rng.gen_bool(0.7) { 3 } else { 2 };
    let per_step = d;
    let steps = rng.gen_range(0..=(max_facets - (d + 2)) / per_step);
    let sphere = stacked_sphere(rng, d, steps);
    if rng.gen_bool(0.25) {
        return sphere;
    }
    let size = rng.gen_range(1..=sphere.num_facets());
    random_patch(rng, &sphere, size)
}

/// Random complex on at most `n` vertices with facets of mixed sizes.
pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=8);
    let facets: Vec<Vec<String>> = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=4.min(n));
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs[..size].iter().map(|v| format!("x{v}")).collect()
        })
        .collect();
    SimplicialComplex::new(facets).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> CombGraph {
    let mut g = CombGraph::with_nodes(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Whether a simple graph has a K5 or K3,3 minor, by exhaustive deletion and
/// contraction with degree-reduction and memoisation.
pub fn has_kuratowski_minor(g: &CombGraph) -> bool {
    let edges: HashSet<(usize, usize)> = g.edges().collect();
    let mut memo = HashMap::new();
    minor_search(edges, &mut memo)
}

type EdgeSet = HashSet<(usize, usize)>;

fn key(edges: &EdgeSet) -> Vec<(usize, usize)> {
    let mut nodes: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let idx: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut k: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (idx[&u], idx[&v]);
            (a.min(b), a.max(b))
        })
        .collect();
    k.sort_unstable();
    k
}

fn degrees(edges: &EdgeSet) -> HashMap<usize, Vec<usize>> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    adj
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Removes degree-1 vertices and suppresses degree-2 vertices; neither changes
/// whether a 3-connected minor exists.
fn reduce(mut edges: EdgeSet) -> EdgeSet {
    loop {
        let adj = degrees(&edges);
        let Some((&v, ns)) = adj.iter().find(|(_, ns)| ns.len() <= 2) else {
            return edges;
        };
        for &w in ns {
            edges.remove(&norm(v, w));
        }
        if ns.len() == 2 {
            edges.insert(norm(ns[0], ns[1]));
        }
    }
}

fn is_target(edges: &EdgeSet) -> bool {
    let adj = degrees(edges);
    let nodes: Vec<usize> = adj.keys().copied().collect();
    match nodes.len() {
        5 => edges.len() == 10,
        6 => {
            if edges.len() < 9 {
                return false;
            }
            // any bipartition 3+3 with all nine cross edges
            (0..6).any(|a| {
                (a + 1..6).any(|b| {
                    (b + 1..6).any(|c| {
                        let left = [nodes[a], nodes[b], nodes[c]];
                        let right: Vec<usize> = nodes.iter().copied().filter(|x| !left.contains(x)).collect();
                        left.iter().all(|&l| right.iter().all(|&r| edges.contains(&norm(l, r))))
                    })
                })
            })
        }
        _ => false,
    }
}

fn minor_search(edges: EdgeSet, memo: &mut HashMap<Vec<(usize, usize)>, bool>) -> bool {
    let edges = reduce(edges);
    let n = degrees(&edges).len();
    if n < 5 || edges.len() < 9 {
        return false;
    }
    if edges.len() > 3 * n - 6 {
        return true;
    }
    if is_target(&edges) {
        return true;
    }
    let k = key(&edges);
    if let Some(&r) = memo.get(&k) {
        return r;
    }
    let mut found = false;
    let list: Vec<(usize, usize)> = k.clone();
    let relabelled: EdgeSet = list.iter().copied().collect();
    for &(u, v) in &list {
        let mut del = relabelled.clone();
        del.remove(&(u, v));
        if minor_search(del, memo) {
            found = true;
            break;
        }
        let con: EdgeSet = relabelled
            .iter()
            .filter(|&&e| e != (u, v))
            .map(|&(a, b)| {
                let a = if a == v { u } else { a };
                let b = if b == v { u } else { b };
                norm(a, b)
            })
            .filter(|&(a, b)| a != b)
            .collect();
        if minor_search(con, memo) {
            found = true;
            break;
        }
    }
    memo.insert(k, found);
    found
}
