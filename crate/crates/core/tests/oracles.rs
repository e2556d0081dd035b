//! The fast algorithms against slow, independent ones.

mod common;

use common::*;
use perles_core::constructions::build_gamma_assembly;
use perles_core::datasets::paper_complex;
use perles_core::perles::{brute_force_perles, find_perles_pieces, is_vertex_star, Piece, SearchOptions};
use perles_core::planarity::{planarity, PlanarityWitness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn search_ids(c: &perles_core::SimplicialComplex) -> Vec<Piece> {
    let mut v: Vec<Piece> = find_perles_pieces(c, &SearchOptions::default())
        .unwrap()
        .into_iter()
        .map(|r| r.piece)
        .collect();
    v.sort();
    v
}

fn brute_ids(c: &perles_core::SimplicialComplex) -> Vec<Piece> {
    let mut v = brute_force_perles(c).unwrap();
    v.sort();
    v
}

#[test]
fn planarity_agrees_with_minor_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut planar, mut non_planar) = (0, 0);
    for _ in 0..240 {
        let n = if rng.gen_bool(0.8) {
            rng.gen_range(6..=8)
        } else {
            rng.gen_range(1..=5)
        };
        let p = rng.gen_range(0.25..0.9);
        let g = random_graph(&mut rng, n, p);
        let res = planarity(&g);
        assert!(res.verify(&g), "witness does not check out");
        assert_eq!(
            res.planar,
            !has_kuratowski_minor(&g),
            "{:?}",
            g.edges().collect::<Vec<_>>()
        );
        match res.witness {
            PlanarityWitness::Embedding(_) => planar += 1,
            PlanarityWitness::Kuratowski(_) => non_planar += 1,
        }
    }
    assert!(
        planar > 30 && non_planar > 30,
        "{planar} planar, {non_planar} non-planar"
    );
}

#[test]
fn search_matches_brute_force_on_random_pseudomanifolds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total_pieces = 0;
    for _ in 0..60 {
        let c = random_pseudomanifold(&mut rng, 20);
        assert!(c.num_facets() <= 20);
        let fast = search_ids(&c);
        assert_eq!(fast, brute_ids(&c), "{c}");
        total_pieces += fast.len();
    }
    assert!(total_pieces > 0);
}

#[test]
fn simplex_boundary_has_five_star_pieces() {
    let c = simplex_boundary();
    let pieces = brute_ids(&c);
    assert_eq!(pieces.len(), 5);
    assert_eq!(search_ids(&c), pieces);
    for p in &pieces {
        assert!(is_vertex_star(&c, p).is_some());
    }
}

#[test]
fn search_matches_brute_force_on_truncated_fixtures() {
    let truncate = |c: &perles_core::SimplicialComplex, k: usize| {
        perles_core::SimplicialComplex::new(c.facets()[..k].iter().map(|f| f.labels().to_vec())).unwrap()
    };
    let sphere = paper_complex("S11.sphere").unwrap().complex;
    let ball = paper_complex("B32.ball").unwrap().complex;
    let gamma = build_gamma_assembly().unwrap();
    for (c, k) in [(&sphere, 18), (&sphere, 20), (&ball, 16), (&gamma, 18)] {
        let t = truncate(c, k);
        assert_eq!(search_ids(&t), brute_ids(&t), "first {k} facets of {c}");
    }
}
