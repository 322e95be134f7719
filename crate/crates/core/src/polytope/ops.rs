use itertools::Itertools;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hull_from_vertices, Polytope};
use crate::error::{Error, Result};
use crate::exact::rat::{dot, format_rat, primitive_vector};
use crate::exact::{ratio, Rat};

/// Polar dual `(P - x)^v = {y : y.z >= -1 for all z in P - x}`.
///
/// Its vertices are `a_i / l_i(x)` for the inward facet normals `a_i`, so they
/// sit on the rays of the inner normal fan.
pub fn polar_at(p: &Polytope, x: &[Rat]) -> Result<Polytope> {
    if x.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            what: "polar base point",
            expected: p.dim(),
            found: x.len(),
        });
    }
    let mut verts = Vec::with_capacity(p.num_facets());
    for (i, f) in p.facets().iter().enumerate() {
        let l = f.eval(x)?;
        if !l.is_positive() {
            return Err(Error::NotInterior {
                facet: i,
                value: format_rat(&l),
            });
        }
        verts.push(f.coeffs().iter().map(|a| a / &l).collect::<Vec<_>>());
    }
    hull_from_vertices(p.dim(), &verts)
}

/// Weighted Minkowski sum together with per-summand support data.
#[derive(Clone, Debug)]
pub struct MinkowskiSum {
    pub polytope: Polytope,
    /// `support[j][i] = max over vertices v of summand j of (-a_i).v`, where
    /// `a_i` is the inward normal of facet `i`. The facet constant of
    /// `sum_j x_j P_j` is then `sum_j x_j support[j][i]`.
    pub support: Vec<Vec<Rat>>,
}

/// `sum_j w_j P_j` for summands given by their points (a summand may be a
/// single point). The sum must be full-dimensional.
///
/// The facet normals are recomputed at a second pseudo-random positive weight
/// vector; a change signals non-generic weights.
pub fn minkowski_sum(summands: &[Vec<Vec<Rat>>], weights: &[Rat]) -> Result<MinkowskiSum> {
    if summands.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            what: "Minkowski weights",
            expected: summands.len(),
            found: weights.len(),
        });
    }
    if summands.is_empty() || summands.iter().any(Vec::is_empty) {
        return Err(Error::Input("empty Minkowski summand".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::NonPositiveWeight);
    }
    let dim = summands[0][0].len();
    if let Some(bad) = summands.iter().flatten().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            what: "Minkowski summand point",
            expected: dim,
            found: bad.len(),
        });
    }
    let polytope = weighted_sum(summands, weights, dim)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x6d696e6b);
    let other: Vec<Rat> = weights
        .iter()
        .map(|_| ratio(rng.gen_range(1..=97), rng.gen_range(1..=89)))
        .collect();
    let check = weighted_sum(summands, &other, dim)?;
    let normals = |p: &Polytope| {
        let mut v: Vec<Vec<Rat>> = p.facets().iter().map(|f| primitive_vector(f.coeffs())).collect();
        v.sort();
        v
    };
    if normals(&polytope) != normals(&check) {
        return Err(Error::NonGenericWeights);
    }

    let support = summands
        .iter()
        .map(|pts| {
            polytope
                .facets()
                .iter()
                .map(|f| {
                    pts.iter()
                        .map(|v| -dot(f.coeffs(), v))
                        .max()
                        .expect("nonempty summand")
                })
                .collect()
        })
        .collect();
    Ok(MinkowskiSum { polytope, support })
}

fn weighted_sum(summands: &[Vec<Vec<Rat>>], weights: &[Rat], dim: usize) -> Result<Polytope> {
    let mut points: Vec<Vec<Rat>> = vec![vec![Rat::zero(); dim]];
    for (pts, w) in summands.iter().zip(weights) {
        let next: Vec<Vec<Rat>> = points
            .iter()
            .cartesian_product(pts)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + w * y).collect())
            .unique()
            .collect();
        // prune to extreme points once the partial sum is full-dimensional
        points = match hull_from_vertices(dim, &next) {
            Ok(p) => p.vertices().to_vec(),
            Err(_) => next,
        };
    }
    hull_from_vertices(dim, &points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn polar_of_square_is_diamond() {
        let sq = hull_from_vertices(2, &[v(&[-1, -1]), v(&[1, -1]), v(&[-1, 1]), v(&[1, 1])]).unwrap();
        let d = polar_at(&sq, &v(&[0, 0])).unwrap();
        let mut got = d.vertices().to_vec();
        got.sort();
        let mut want = vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn polar_of_interval() {
        let i = hull_from_vertices(1, &[v(&[-1]), v(&[1])]).unwrap();
        let d = polar_at(&i, &v(&[0])).unwrap();
        let mut got = d.vertices().to_vec();
        got.sort();
        assert_eq!(got, vec![v(&[-1]), v(&[1])]);
    }

    #[test]
    fn polar_vertices_on_inner_normals() {
        let q = hull_from_vertices(2, &[v(&[0, 0]), v(&[2, 0]), v(&[0, 1]), v(&[1, 2])]).unwrap();
        let x = vec![ratio(1, 2), ratio(1, 2)];
        let d = polar_at(&q, &x).unwrap();
        assert_eq!(d.vertices().len(), 4);
        for (f, w) in q.facets().iter().zip(d.vertices()) {
            // w is a positive multiple of the inner normal
            let r = &w[0] * &f.coeffs()[1] - &w[1] * &f.coeffs()[0];
            assert!(r.is_zero());
            assert!(!dot(w, f.coeffs()).is_negative());
        }
        // every point of P - x pairs to >= -1 with every vertex of the polar
        for pv in q.vertices() {
            let z: Vec<Rat> = pv.iter().zip(&x).map(|(a, b)| a - b).collect();
            for w in d.vertices() {
                assert!(dot(w, &z) >= rat(-1));
            }
        }
    }

    #[test]
    fn polar_rejects_boundary() {
        let q = hull_from_vertices(2, &[v(&[0, 0]), v(&[2, 0]), v(&[0, 1]), v(&[1, 2])]).unwrap();
        assert!(matches!(
            polar_at(&q, &[rat(0), ratio(1, 2)]),
            Err(Error::NotInterior { facet: 0, .. })
        ));
    }

    #[test]
    fn sums() {
        let s = minkowski_sum(&[vec![v(&[0, 0]), v(&[1, 0])], vec![v(&[0, 0]), v(&[0, 1])]], &[rat(1), rat(1)]).unwrap();
        let mut got = s.polytope.vertices().to_vec();
        got.sort();
        assert_eq!(got, vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]);

        let tri = vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])];
        let t = minkowski_sum(&[tri.clone(), vec![v(&[3, 4])]], &[rat(1), rat(1)]).unwrap();
        assert_eq!(t.polytope.vertices(), &[v(&[3, 4]), v(&[4, 4]), v(&[3, 5])]);

        let seg = minkowski_sum(&[vec![v(&[0]), v(&[1])], vec![v(&[0]), v(&[1])]], &[rat(1), rat(2)]).unwrap();
        assert_eq!(seg.polytope.vertices(), &[v(&[0]), v(&[3])]);
        assert!(minkowski_sum(&[tri], &[rat(0)]).is_err());
    }

    #[test]
    fn support_offsets_reproduce_facets() {
        let tri = vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 1])];
        let sq = vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let w = [rat(1), rat(3)];
        let s = minkowski_sum(&[tri, sq], &w).unwrap();
        for (i, f) in s.polytope.facets().iter().enumerate() {
            let c: Rat = (0..2).map(|j| &w[j] * &s.support[j][i]).sum();
            assert_eq!(&c, f.c0());
        }
    }
}
