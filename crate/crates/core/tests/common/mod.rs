#![allow(dead_code)]

use canform::exact::{rat, Rat};
use canform::{hull_from_vertices, Polytope};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(x: &[i64]) -> Vec<Rat> {
    x.iter().map(|&a| rat(a)).collect()
}

pub fn poly(d: usize, pts: &[&[i64]]) -> Polytope {
    hull_from_vertices(d, &pts.iter().map(|p| v(p)).collect::<Vec<_>>()).unwrap()
}

pub fn quad() -> Polytope {
    poly(2, &[&[0, 0], &[2, 0], &[1, 2], &[0, 1]])
}

pub fn unit_square() -> Polytope {
    poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

/// Hull of random integer points in `[-r, r]^d`, redrawn until full
/// dimensional with at most `max_vertices` vertices.
pub fn random_polytope(rng: &mut ChaCha8Rng, d: usize, max_vertices: usize) -> Polytope {
    let r = 4;
    loop {
        let n = rng.gen_range(d + 1..=max_vertices);
        let pts: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-r..=r))).collect())
            .collect();
        if let Ok(p) = hull_from_vertices(d, &pts) {
            if p.vertices().len() <= max_vertices {
                return p;
            }
        }
    }
}

/// `d!` times the Euclidean volume, by the recursion over facets
/// `NV(P) = sum_F l_F(c) NV(proj F) / |a_F[j]|`, with no triangulation.
pub fn recursive_volume(p: &Polytope) -> Rat {
    let d = p.dim();
    if d == 1 {
        let xs: Vec<&Rat> = p.vertices().iter().map(|x| &x[0]).collect();
        let lo = xs.iter().min().unwrap();
        let hi = xs.iter().max().unwrap();
        return *hi - *lo;
    }
    let c = p.centroid();
    let mut total = Rat::zero();
    for f in p.facets() {
        let j = f.coeffs().iter().position(|a| !a.is_zero()).unwrap();
        let pts: Vec<Vec<Rat>> = p
            .vertices()
            .iter()
            .filter(|x| f.eval(x).unwrap().is_zero())
            .map(|x| x.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, y)| y.clone()).collect())
            .collect();
        let face = hull_from_vertices(d - 1, &pts).unwrap();
        total += f.eval(c).unwrap() * recursive_volume(&face) / f.coeffs()[j].abs();
    }
    total
}

/// Rational points strictly inside `p`: random convex combinations of the
/// vertices.
pub fn inner_points(p: &Polytope, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|_| {
            let w: Vec<i64> = p.vertices().iter().map(|_| rng.gen_range(1..=20)).collect();
            let t: i64 = w.iter().sum();
            (0..p.dim())
                .map(|k| {
                    p.vertices().iter().zip(&w).map(|(x, &wi)| &x[k] * rat(wi)).sum::<Rat>() / rat(t)
                })
                .collect()
        })
        .collect()
}
