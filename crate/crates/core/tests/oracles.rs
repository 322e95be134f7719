mod common;

use canform::exact::{rat, ratio, Rat};
use canform::forms::{
    canon_dual_cone, canon_dual_volume, canon_triangulation, interval_form, simplex_form, CanonicalForm, RatFunc,
};
use canform::polytope::{polar_at, pulling_triangulation_with_order};
use canform::{hull_from_vertices, Poly, Polytope};
use common::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn value(f: &CanonicalForm, x: &[Rat]) -> Rat {
    f.value(x).unwrap().expect("interior points are not poles")
}

#[test]
fn form_value_is_polar_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [2, 3] {
        for _ in 0..4 {
            let p = random_polytope(&mut rng, d, 8);
            let f = canon_triangulation(&p).unwrap();
            for x in inner_points(&p, &mut rng, 3) {
                let polar = polar_at(&p, &x).unwrap();
                assert_eq!(value(&f, &x), recursive_volume(&polar), "{:?} at {x:?}", p.vertices());
            }
        }
    }
}

#[test]
fn recursive_volume_matches_triangulated_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in [2, 3, 4] {
        let p = random_polytope(&mut rng, d, 8);
        assert_eq!(recursive_volume(&p), p.normalized_volume());
    }
    // the unit cube has normalized volume 3! = 6
    let mut cube = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                cube.push(v(&[a, b, c]));
            }
        }
    }
    assert_eq!(recursive_volume(&hull_from_vertices(3, &cube).unwrap()), rat(6));
}

#[test]
fn boxes_are_products_of_intervals() {
    let bounds = [(rat(-1), rat(2)), (ratio(1, 2), rat(3)), (rat(0), ratio(5, 3))];
    let mut pts = Vec::new();
    for m in 0..8 {
        pts.push(
            (0..3)
                .map(|k| if m >> k & 1 == 1 { bounds[k].1.clone() } else { bounds[k].0.clone() })
                .collect::<Vec<_>>(),
        );
    }
    let b = hull_from_vertices(3, &pts).unwrap();
    let f = canon_triangulation(&b).unwrap();
    let ivals: Vec<CanonicalForm> = bounds.iter().map(|(a, c)| interval_form(a, c).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for x in inner_points(&b, &mut rng, 5) {
        let product: Rat = (0..3).map(|k| value(&ivals[k], &x[k..=k])).product();
        assert_eq!(value(&f, &x), product);
    }
}

#[test]
fn triangulation_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for d in [2, 3] {
        let p = random_polytope(&mut rng, d, 9);
        let reference = canon_triangulation(&p).unwrap();
        for _ in 0..3 {
            let mut order: Vec<usize> = (0..p.vertices().len()).collect();
            order.shuffle(&mut rng);
            let tri = pulling_triangulation_with_order(&p, &order);
            let mut sum = RatFunc::zero(d);
            for piece in tri.pieces() {
                let pts: Vec<Vec<Rat>> = piece.iter().map(|&i| p.vertices()[i].clone()).collect();
                let s: Polytope = hull_from_vertices(d, &pts).unwrap();
                sum = sum.add(&simplex_form(&s).unwrap().signed_func()).unwrap();
            }
            assert!(sum.equals(&reference.signed_func()), "order {order:?}");
        }
    }
}

#[test]
fn standard_simplex_in_four_dimensions() {
    let mut pts = vec![v(&[0, 0, 0, 0])];
    for k in 0..4 {
        let mut e = vec![0; 4];
        e[k] = 1;
        pts.push(v(&e));
    }
    let s = hull_from_vertices(4, &pts).unwrap();
    let f = simplex_form(&s).unwrap();
    assert_eq!(f.format(), "1/(x1*x2*x3*x4*(1-x1-x2-x3-x4)) dx1^dx2^dx3^dx4");
    assert!(canon_dual_volume(&s).unwrap().same_as(&f));
    assert!(canon_dual_cone(&s).unwrap().same_as(&f));
}

#[test]
fn unimodular_triangle_has_unit_numerator() {
    let t = poly(2, &[&[1, 1], &[2, 1], &[1, 2]]);
    let f = simplex_form(&t).unwrap();
    assert_eq!(f.numerator(), &Poly::constant(2, rat(1)));
}
