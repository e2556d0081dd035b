//! Planarity testing with certificates.
//!
//! Each biconnected block is embedded by path addition (Demoucron, Malgrange
//! and Pertuiset): starting from a cycle, repeatedly pick a fragment of the
//! remaining graph, route one of its paths through a face that contains all of
//! its attachment vertices, and split that face. A fragment with no admissible
//! face proves the block non-planar. Faces are stored as directed cycles so
//! that every edge is traversed once in each direction, which lets the
//! rotation system be read directly off the face list.
//!
//! Non-planar graphs are shrunk to an edge-minimal non-planar subgraph by
//! deleting edges one at a time; by Kuratowski's theorem what remains is a
//! subdivision of K5 or K3,3, which [`classify_kuratowski`] confirms.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::graph::CombGraph;

/// Cyclic neighbour order around every node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn rotation(&self, u: usize) -> &[usize] {
        &self.rotations[u]
    }

    fn next_dart(&self, (u, v): (usize, usize)) -> (usize, usize) {
        let rot = &self.rotations[v];
        let i = rot.iter().position(|&x| x == u).expect("dart in rotation");
        (v, rot[(i + 1) % rot.len()])
    }

    /// Face boundaries traced with `(u, v) -> (v, succ_v(u))`.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = HashSet::new();
        let mut faces = Vec::new();
        for (u, rot) in self.rotations.iter().enumerate() {
            for &v in rot {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (u, v);
                while seen.insert(d) {
                    face.push(d);
                    d = self.next_dart(d);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks that the rotations permute each neighbourhood of `g` and that
    /// every connected component satisfies `V - E + F = 2`.
    pub fn satisfies_euler(&self, g: &CombGraph) -> bool {
        if self.rotations.len() != g.node_count() {
            return false;
        }
        for u in 0..g.node_count() {
            let mut r = self.rotations[u].clone();
            r.sort_unstable();
            if r != g.neighbors(u) {
                return false;
            }
        }
        let comps = g.connected_components();
        let mut comp_of = vec![0; g.node_count()];
        for (c, nodes) in comps.iter().enumerate() {
            for &u in nodes {
                comp_of[u] = c;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        for face in self.faces() {
            face_count[comp_of[face[0].0]] += 1;
        }
        comps.iter().enumerate().all(|(c, nodes)| {
            let v = nodes.len() as i64;
            let e = nodes.iter().map(|&u| g.degree(u)).sum::<usize>() as i64 / 2;
            let f = if e == 0 { 1 } else { face_count[c] };
            v - e + f == 2
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiSubgraph {
    pub kind: KuratowskiKind,
    pub branch_nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl KuratowskiSubgraph {
    /// The edges exist in `g` and form a subdivision of the claimed kind.
    pub fn verify(&self, g: &CombGraph) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| u < g.node_count() && v < g.node_count() && g.has_edge(u, v))
            && classify_kuratowski(g.node_count(), &self.edges)
                .is_some_and(|(k, b)| k == self.kind && b == self.branch_nodes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PlanarityWitness {
    Embedding(RotationSystem),
    Kuratowski(KuratowskiSubgraph),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarityResult {
    pub planar: bool,
    pub witness: PlanarityWitness,
}

impl PlanarityResult {
    /// Re-checks the certificate against `g`.
    pub fn verify(&self, g: &CombGraph) -> bool {
        match (&self.witness, self.planar) {
            (PlanarityWitness::Embedding(rot), true) => rot.satisfies_euler(g),
            (PlanarityWitness::Kuratowski(k), false) => k.verify(g),
            _ => false,
        }
    }
}

/// Decides planarity and returns an embedding or a Kuratowski subgraph.
pub fn planarity(g: &CombGraph) -> PlanarityResult {
    match embed(g) {
        Some(rot) => PlanarityResult {
            planar: true,
            witness: PlanarityWitness::Embedding(rot),
        },
        None => PlanarityResult {
            planar: false,
            witness: PlanarityWitness::Kuratowski(kuratowski_subgraph(g)),
        },
    }
}

pub fn is_planar(g: &CombGraph) -> bool {
    let n = g.node_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    biconnected_components(g)
        .iter()
        .all(|block| embed_block(block).is_some())
}

fn embed(g: &CombGraph) -> Option<RotationSystem> {
    let n = g.node_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rotations = vec![Vec::new(); n];
    for block in biconnected_components(g) {
        let local = embed_block(&block)?;
        for (u, rot) in local {
            rotations[u].extend(rot);
        }
    }
    Some(RotationSystem { rotations })
}

/// Edge sets of the biconnected components (bridges are blocks of one edge).
fn biconnected_components(g: &CombGraph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a CombGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
    }

    fn visit(s: &mut State<'_>, u: usize, parent: usize) {
        s.disc[u] = s.time;
        s.low[u] = s.time;
        s.time += 1;
        for &v in s.g.neighbors(u) {
            if s.disc[v] == usize::MAX {
                s.stack.push((u, v));
                visit(s, v, u);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.blocks.push(block);
                }
            } else if v != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }

    let n = g.node_count();
    let mut s = State {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for u in 0..n {
        if s.disc[u] == usize::MAX {
            visit(&mut s, u, usize::MAX);
        }
    }
    s.blocks
}

/// Embeds one block; returns the rotation at each of its nodes (global ids).
fn embed_block(block: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    let mut nodes: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.len() == 2 {
        return Some(vec![(nodes[0], vec![nodes[1]]), (nodes[1], vec![nodes[0]])]);
    }
    let local: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(u, v) in block {
        adj[local[&u]].push(local[&v]);
        adj[local[&v]].push(local[&u]);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let faces = path_addition(&adj)?;
    let rot = rotations_from_faces(nodes.len(), &faces);
    Some(
        rot.into_iter()
            .enumerate()
            .map(|(i, r)| (nodes[i], r.into_iter().map(|x| nodes[x]).collect()))
            .collect(),
    )
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Some cycle of a biconnected graph with at least three nodes.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut on_path = vec![false; n];
    let mut visited = vec![false; n];
    let mut path = vec![0];
    let mut next_idx = vec![0; n];
    visited[0] = true;
    on_path[0] = true;
    while let Some(&u) = path.last() {
        if next_idx[u] == adj[u].len() {
            on_path[u] = false;
            path.pop();
            continue;
        }
        let v = adj[u][next_idx[u]];
        next_idx[u] += 1;
        if v == parent[u] {
            continue;
        }
        if on_path[v] {
            let start = path.iter().position(|&x| x == v).unwrap();
            return path[start..].to_vec();
        }
        if !visited[v] {
            visited[v] = true;
            on_path[v] = true;
            parent[v] = u;
            path.push(v);
        }
    }
    unreachable!("biconnected block without a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Inner nodes for a component fragment; empty for a chord.
    inner: Vec<usize>,
}

fn path_addition(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let total_edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if total_edges > 3 * n - 6 {
        return None;
    }
    let cycle = find_cycle(adj);
    let mut in_h = vec![false; n];
    let mut h_edges = HashSet::new();
    for (i, &u) in cycle.iter().enumerate() {
        in_h[u] = true;
        h_edges.insert(edge_key(u, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    while h_edges.len() < total_edges {
        let fragments = fragments(adj, &in_h, &h_edges);
        let mut choice = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = fragment_path(adj, &fragments[fi]);
        for w in path.windows(2) {
            h_edges.insert(edge_key(w[0], w[1]));
        }
        for &u in &path {
            in_h[u] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edges: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !in_h[u] {
            continue;
        }
        for &v in &adj[u] {
            if v > u && in_h[v] && !h_edges.contains(&(u, v)) {
                out.push(Fragment {
                    attachments: vec![u, v],
                    inner: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut inner = vec![s];
        let mut attachments = Vec::new();
        seen[s] = true;
        let mut i = 0;
        while i < inner.len() {
            let u = inner[i];
            i += 1;
            for &v in &adj[u] {
                if in_h[v] {
                    attachments.push(v);
                } else if !seen[v] {
                    seen[v] = true;
                    inner.push(v);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment { attachments, inner });
    }
    out
}

/// A path between two distinct attachments running through the fragment.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment) -> Vec<usize> {
    let (a, b) = (frag.attachments[0], frag.attachments[1]);
    if frag.inner.is_empty() {
        return vec![a, b];
    }
    let inside: HashSet<usize> = frag.inner.iter().copied().collect();
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &v in &adj[a] {
        if inside.contains(&v) && !parent.contains_key(&v) {
            parent.insert(v, a);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        if adj[u].contains(&b) {
            let mut path = vec![b, u];
            let mut x = u;
            while parent[&x] != a {
                x = parent[&x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &v in &adj[u] {
            if inside.contains(&v) && !parent.contains_key(&v) {
                parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    unreachable!("fragment is connected to both attachments")
}

/// Splits a directed face cycle along `path` (from one face vertex to another).
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let rotated: Vec<usize> = face[i..].iter().chain(&face[..i]).copied().collect();
    let j = rotated.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1: Vec<usize> = rotated[..=j].to_vec();
    f1.extend(inner.iter().rev());
    let mut f2: Vec<usize> = path.to_vec();
    f2.extend(&rotated[j + 1..]);
    (f1, f2)
}

/// `succ_v(u) = w` for every consecutive `u -> v -> w` on a face.
fn rotations_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
            succ[v].insert(u, w);
        }
    }
    succ.into_iter()
        .map(|s| {
            let Some(&start) = s.keys().min() else {
                return Vec::new();
            };
            let mut rot = vec![start];
            let mut x = s[&start];
            while x != start {
                rot.push(x);
                x = s[&x];
            }
            debug_assert_eq!(rot.len(), s.len(), "rotation is a single cycle");
            rot
        })
        .collect()
}

/// Shrinks a non-planar graph to an edge-minimal non-planar subgraph.
fn kuratowski_subgraph(g: &CombGraph) -> KuratowskiSubgraph {
    let n = g.node_count();
    let mut edges: Vec<(usize, usize)> = biconnected_components(g)
        .into_iter()
        .find(|b| b.len() > 2 && embed_block(b).is_none())
        .expect("a non-planar graph has a non-planar block")
        .into_iter()
        .map(|(u, v)| edge_key(u, v))
        .collect();
    edges.sort_unstable();
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        if !is_planar(&CombGraph::from_edges(n, &trial)) {
            edges = trial;
        } else {
            i += 1;
        }
    }
    let (kind, branch_nodes) =
        classify_kuratowski(n, &edges).expect("edge-minimal non-planar graph is a Kuratowski subdivision");
    KuratowskiSubgraph {
        kind,
        branch_nodes,
        edges,
    }
}

/// Recognises an edge set forming a subdivision of K5 or K3,3 (with no other
/// edges). Returns the kind and the sorted branch nodes.
pub fn classify_kuratowski(n: usize, edges: &[(usize, usize)]) -> Option<(KuratowskiKind, Vec<usize>)> {
    let g = CombGraph::from_edges(n, edges);
    if g.edge_count() != edges.len() {
        return None;
    }
    let used: Vec<usize> = (0..n).filter(|&u| g.degree(u) > 0).collect();
    if used.iter().any(|&u| g.degree(u) == 1) {
        return None;
    }
    let branch: Vec<usize> = used.iter().copied().filter(|&u| g.degree(u) >= 3).collect();
    let is_branch = |u: usize| g.degree(u) >= 3;

    // Trace every subdivided edge between branch nodes.
    let mut traced = 0;
    let mut branch_edges = HashSet::new();
    for &s in &branch {
        for &first in g.neighbors(s) {
            let (mut prev, mut cur) = (s, first);
            let mut len = 1;
            while !is_branch(cur) {
                let next = *g.neighbors(cur).iter().find(|&&x| x != prev)?;
                prev = cur;
                cur = next;
                len += 1;
            }
            if cur == s {
                return None;
            }
            if s < cur {
                if !branch_edges.insert((s, cur)) {
                    return None;
                }
                traced += len;
            }
        }
    }
    if traced != edges.len() {
        return None;
    }
    match branch.len() {
        5 if branch.iter().all(|&u| g.degree(u) == 4) && branch_edges.len() == 10 => Some((KuratowskiKind::K5, branch)),
        6 if branch.iter().all(|&u| g.degree(u) == 3) && branch_edges.len() == 9 => {
            // complete bipartite iff two colour classes of size 3
            let mut side: HashMap<usize, bool> = HashMap::new();
            side.insert(branch[0], false);
            let mut queue = VecDeque::from([branch[0]]);
            while let Some(u) = queue.pop_front() {
                for &(a, b) in &branch_edges {
                    let other = if a == u {
                        b
                    } else if b == u {
                        a
                    } else {
                        continue;
                    };
                    match side.get(&other) {
                        Some(&s) if s == side[&u] => return None,
                        Some(_) => {}
                        None => {
                            side.insert(other, !side[&u]);
                            queue.push_back(other);
                        }
                    }
                }
            }
            let left = side.values().filter(|&&s| s).count();
            (side.len() == 6 && left == 3).then_some((KuratowskiKind::K33, branch))
        }
        _ => None,
    }
}
