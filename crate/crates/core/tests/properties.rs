mod common;

use common::*;
use num_bigint::BigInt;
use perles_core::complex::{Face, SimplicialComplex};
use perles_core::homology::{betti_numbers, boundary_matrix, IntMatrix};
use perles_core::perles::{find_perles_pieces, SearchOptions};
use perles_core::realization::{
    hull_facets, orientation, realize_heuristic, verify_realization, PointConfiguration, RealizationStatus, Sign,
};
use perles_core::topology::{certify_sphere, SphereStatus};
use perles_core::Rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..7).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(), 4)
}

fn boundary_squares_vanish(c: &SimplicialComplex) -> bool {
    let top = c.dimension().unwrap_or(0);
    (1..top).all(|k| {
        let a: IntMatrix<i64> = boundary_matrix(c, k);
        let b: IntMatrix<i64> = boundary_matrix(c, k + 1);
        a.mul(&b).is_zero()
    })
}

fn relabel(c: &SimplicialComplex, perm: &[usize]) -> SimplicialComplex {
    SimplicialComplex::new(c.facets().iter().map(|f| {
        f.labels()
            .iter()
            .map(|l| format!("w{}", perm[c.vertex_id(l).unwrap()]))
            .collect::<Vec<_>>()
    }))
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orientation_alternates(pts in proptest::collection::vec(point(), 5), i in 0usize..5, j in 0usize..5) {
        prop_assume!(i != j);
        let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        let mut swapped = refs.clone();
        swapped.swap(i, j);
        let (a, b) = (orientation(&refs), orientation(&swapped));
        prop_assert_eq!(a.to_i8(), -b.to_i8());
    }

    #[test]
    fn orientation_ignores_translation(pts in proptest::collection::vec(point(), 5), shift in point()) {
        let moved: Vec<Vec<Rational>> = pts
            .iter()
            .map(|p| p.iter().zip(&shift).map(|(a, b)| a + b).collect())
            .collect();
        let a: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
        let b: Vec<&[Rational]> = moved.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(orientation(&a), orientation(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_poincare(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, n);
        prop_assert_eq!(c.euler_characteristic(), betti_numbers(&c).euler_characteristic());
        prop_assert!(boundary_squares_vanish(&c));
    }

    #[test]
    fn star_is_cone_over_link(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_pseudomanifold(&mut rng, 20);
        for v in c.vertex_labels() {
            let f = Face::new([v]).unwrap();
            let link = c.link(&f).unwrap();
            let cone = SimplicialComplex::new(link.facets().iter().map(|g| g.with(v).labels().to_vec())).unwrap();
            prop_assert_eq!(c.star(&f).unwrap(), cone);
        }
    }

    #[test]
    fn relabelling_changes_nothing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_pseudomanifold(&mut rng, 16);
        let n = c.num_vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let d = relabel(&c, &perm);
        prop_assert_eq!(c.f_vector(), d.f_vector());
        prop_assert_eq!(betti_numbers(&c), betti_numbers(&d));
        prop_assert_eq!(certify_sphere(&c).status, certify_sphere(&d).status);
        let count = |x: &SimplicialComplex| find_perles_pieces(x, &SearchOptions::default()).unwrap().len();
        prop_assert_eq!(count(&c), count(&d));
    }

    #[test]
    fn simplicial_hulls_are_spheres_and_round_trip(seed in any::<u64>(), n in 5usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = (0..n).map(|i| {
            let p: Vec<Rational> = (0..4)
                .map(|_| Rational::from_integer(BigInt::from(rand::Rng::gen_range(&mut rng, -30i64..30))))
                .collect();
            (format!("p{i}"), p)
        });
        let pc = PointConfiguration::from_points(4, pts).unwrap();
        if let Ok(h) = hull_facets(&pc) {
            if h.simplicial {
                prop_assert_eq!(certify_sphere(&h.complex).status, SphereStatus::CertifiedSphere);
                prop_assert_eq!(betti_numbers(&h.complex).ranks, vec![1, 0, 0, 1]);
                prop_assert!(verify_realization(&h.complex, &pc).unwrap());
            }
        }
    }
}

#[test]
fn stacked_spheres_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for steps in 0..6 {
        let s = stacked_sphere(&mut rng, 3, steps);
        assert_eq!(certify_sphere(&s).status, SphereStatus::CertifiedSphere);
        assert!(boundary_squares_vanish(&s));
    }
}

#[test]
fn stacked_spheres_are_realized() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for steps in [2, 6, 10] {
        let s = stacked_sphere(&mut rng, 3, steps);
        let out = realize_heuristic(&s, None, steps as u64, 5000);
        assert_eq!(out.status, RealizationStatus::Realized, "{steps} steps");
        assert!(verify_realization(&s, out.points.as_ref().unwrap()).unwrap());
    }
}

#[test]
fn orientation_of_standard_simplex() {
    let z = || Rational::from_integer(0.into());
    let o = || Rational::from_integer(1.into());
    let pts = [
        vec![z(), z(), z(), z()],
        vec![o(), z(), z(), z()],
        vec![z(), o(), z(), z()],
        vec![z(), z(), o(), z()],
        vec![z(), z(), z(), o()],
    ];
    let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
    assert_eq!(orientation(&refs), Sign::Positive);
}
