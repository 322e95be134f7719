//! Exact convex polytopes: hull, triangulations, cones, fans, polar duals and
//! Minkowski sums.

mod cone;
mod hull;
mod ops;
mod triangulate;

pub use cone::{cone_triangulation, dual_cone, homogeneous_cone, normal_fan, Cone, Fan};
pub use hull::vertices_from_halfspaces;
pub use ops::{minkowski_sum, polar_at, MinkowskiSum};
pub use triangulate::{pulling_triangulation, pulling_triangulation_with_order, Triangulation};


use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{det_columns, LinForm, Rat};

/// Full-dimensional convex polytope in `R^dim`, held in both representations.
///
/// Facets are inward (nonnegative on the polytope) with coprime integer
/// coefficients, listed by [`LinForm::facet_order`]. Vertices keep the order
/// in which they were supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    facets: Vec<LinForm>,
    incidence: Vec<Vec<usize>>,
    centroid: Vec<Rat>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[LinForm] {
        &self.facets
    }

    /// Vertex indices on each facet.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn centroid(&self) -> &[Rat] {
        &self.centroid
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Facets containing vertex `v`.
    pub fn facets_at(&self, v: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.incidence[f].contains(&v))
            .collect()
    }

    /// Index of the facet whose form defines the same hyperplane as `form`.
    pub fn facet_index(&self, form: &LinForm) -> Option<usize> {
        self.facets.iter().position(|f| f.ratio_to(form).is_some())
    }

    /// Whether `x` satisfies every facet inequality strictly.
    pub fn contains_interior(&self, x: &[Rat]) -> bool {
        self.facets
            .iter()
            .all(|f| f.eval(x).is_ok_and(|v| v.is_positive()))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets
            .iter()
            .all(|f| f.eval(x).is_ok_and(|v| !v.is_negative()))
    }

    /// `d!` times the Euclidean volume, so a unimodular simplex has volume 1.
    pub fn normalized_volume(&self) -> Rat {
        let tri = pulling_triangulation(self);
        tri.pieces()
            .iter()
            .map(|piece| simplex_volume(&self.vertices, piece))
            .sum()
    }

    /// Vertices of facet `f` with coordinate `drop` removed, as a polytope in
    /// `R^(dim-1)`. The projection is injective when `drop` has a nonzero
    /// coefficient in the facet form.
    pub fn facet_polytope(&self, f: usize, drop: usize) -> Result<Polytope> {
        let pts: Vec<Vec<Rat>> = self.incidence[f]
            .iter()
            .map(|&v| {
                self.vertices[v]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        Polytope::from_vertices(self.dim - 1, &pts)
    }

    /// Convex hull of `points` in `R^dim`. Duplicate and non-extreme points
    /// are dropped. Fails on lower-dimensional input.
    pub fn from_vertices(dim: usize, points: &[Vec<Rat>]) -> Result<Self> {
        hull_from_vertices(dim, points)
    }

    /// Polytope `{x : f(x) >= 0}`, rejecting unbounded or thin systems.
    pub fn from_halfspaces(dim: usize, forms: &[LinForm]) -> Result<Self> {
        let vertices = vertices_from_halfspaces(dim, forms)?;
        match hull_from_vertices(dim, &vertices) {
            Err(Error::DimensionDeficient { .. } | Error::TooFewPoints { .. }) => {
                Err(Error::EmptyInterior)
            }
            other => other,
        }
    }
}

pub(crate) fn simplex_volume(points: &[Vec<Rat>], piece: &[usize]) -> Rat {
    let base = &points[piece[0]];
    let cols: Vec<Vec<Rat>> = piece[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    det_columns(&cols).map(|d| d.abs()).unwrap_or_else(|_| Rat::zero())
}

/// Convex hull of a finite point set in `R^dim`.
///
/// The result lists extreme points in input order and inward facets with
/// coprime integer coefficients.
pub fn hull_from_vertices(dim: usize, points: &[Vec<Rat>]) -> Result<Polytope> {
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            what: "point",
            expected: dim,
            found: p.len(),
        });
    }
    let mut distinct: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if dim == 0 {
        if distinct.is_empty() {
            return Err(Error::TooFewPoints {
                dim,
                needed: 1,
                found: 0,
            });
        }
        return Ok(Polytope {
            dim,
            vertices: distinct,
            facets: Vec::new(),
            incidence: Vec::new(),
            centroid: Vec::new(),
        });
    }
    let hd = hull::hull_data(dim, &distinct)?;
    let remap: Vec<Option<usize>> = (0..distinct.len())
        .map(|i| hd.vertex_ids.iter().position(|&v| v == i))
        .collect();
    let vertices: Vec<Vec<Rat>> = hd.vertex_ids.iter().map(|&i| distinct[i].clone()).collect();
    let incidence = hd
        .incidence
        .iter()
        .map(|on| on.iter().filter_map(|&i| remap[i]).collect())
        .collect();
    let n = Rat::from_integer(vertices.len().into());
    let centroid: Vec<Rat> = (0..dim)
        .map(|k| vertices.iter().map(|v| v[k].clone()).sum::<Rat>() / &n)
        .collect();
    debug_assert!(hd
        .facets
        .iter()
        .all(|f| f.eval(&centroid).is_ok_and(|v| v.is_positive())));
    Ok(Polytope {
        dim,
        vertices,
        facets: hd.facets,
        incidence,
        centroid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use itertools::Itertools;

    pub(crate) fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn shown(p: &Polytope) -> Vec<String> {
        p.facets().iter().map(|f| f.format(&names())).collect()
    }

    /// Supporting hyperplanes by brute force: every pair of points, keep the
    /// line if all points lie weakly on one side.
    fn brute_force_facets_2d(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for pair in points.iter().combinations(2) {
            let (p, q) = (pair[0], pair[1]);
            let a = [&p[1] - &q[1], &q[0] - &p[0]];
            let c0 = -(&a[0] * &p[0] + &a[1] * &p[1]);
            let vals: Vec<Rat> = points.iter().map(|r| &c0 + &a[0] * &r[0] + &a[1] * &r[1]).collect();
            let sign = if vals.iter().all(|v| !v.is_negative()) {
                rat(1)
            } else if vals.iter().all(|v| !v.is_positive()) {
                rat(-1)
            } else {
                continue;
            };
            let h = crate::exact::rat::primitive_vector(&[c0 * &sign, &a[0] * &sign, &a[1] * &sign]);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn quadrilateral_facets() {
        let p = hull_from_vertices(2, &pts(&[&[0, 0], &[2, 0], &[0, 1], &[1, 2]])).unwrap();
        assert_eq!(shown(&p), ["x", "y", "1+x-y", "4-2x-y"]);
        assert_eq!(p.vertices().len(), 4);
        for (f, on) in p.facets().iter().zip(p.incidence()) {
            for (i, v) in p.vertices().iter().enumerate() {
                let val = f.eval(v).unwrap();
                assert_eq!(val.is_zero(), on.contains(&i));
                assert!(!val.is_negative());
            }
        }
    }

    #[test]
    fn unit_interval_and_square() {
        let i = hull_from_vertices(1, &pts(&[&[0], &[1]])).unwrap();
        let fs: Vec<String> = i.facets().iter().map(|f| f.format(&["x".into()])).collect();
        assert_eq!(fs, ["x", "1-x"]);

        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let p = hull_from_vertices(2, &sq).unwrap();
        let mut got: Vec<Vec<Rat>> = p.facets().iter().map(|f| f.homogeneous()).collect();
        got.sort();
        assert_eq!(got, brute_force_facets_2d(&sq));
        assert_eq!(shown(&p), ["x", "y", "1-y", "1-x"]);
    }

    #[test]
    fn drops_interior_and_duplicate_points() {
        let p = hull_from_vertices(
            2,
            &pts(&[&[0, 0], &[2, 0], &[1, 1], &[0, 2], &[0, 0], &[1, 0]]),
        )
        .unwrap();
        assert_eq!(p.vertices(), pts(&[&[0, 0], &[2, 0], &[0, 2]]).as_slice());
        assert_eq!(p.num_facets(), 3);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            hull_from_vertices(2, &pts(&[&[0, 0], &[1, 1], &[2, 2]])),
            Err(Error::DimensionDeficient { dim: 2, rank: 1 })
        ));
        assert!(matches!(
            hull_from_vertices(2, &pts(&[&[0, 0], &[1, 1]])),
            Err(Error::TooFewPoints { .. })
        ));
        assert!(matches!(
            hull_from_vertices(2, &pts(&[&[0, 0, 0]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn halfspaces_square() {
        let forms: Vec<LinForm> = [[0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1]]
            .iter()
            .map(|h| LinForm::from_homogeneous(&h.iter().map(|&v| rat(v)).collect::<Vec<_>>()).unwrap())
            .collect();
        let p = Polytope::from_halfspaces(2, &forms).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.normalized_volume(), rat(2));
    }

    #[test]
    fn halfspaces_unbounded_and_empty() {
        let f = |h: &[i64]| LinForm::from_homogeneous(&h.iter().map(|&v| rat(v)).collect::<Vec<_>>()).unwrap();
        assert_eq!(
            Polytope::from_halfspaces(2, &[f(&[0, 1, 0]), f(&[0, 0, 1])]),
            Err(Error::Unbounded)
        );
        assert_eq!(
            Polytope::from_halfspaces(2, &[f(&[0, 1, 0]), f(&[1, -1, 0])]),
            Err(Error::Unbounded)
        );
        assert_eq!(
            Polytope::from_halfspaces(1, &[f(&[-1, 1]), f(&[0, -1])]),
            Err(Error::EmptyInterior)
        );
        // a segment in the plane: nonempty but thin
        assert_eq!(
            Polytope::from_halfspaces(2, &[f(&[0, 0, 1]), f(&[0, 0, -1]), f(&[0, 1, 0]), f(&[1, -1, 0])]),
            Err(Error::EmptyInterior)
        );
    }

    #[test]
    fn volume_and_membership() {
        let p = hull_from_vertices(2, &pts(&[&[0, 0], &[2, 0], &[0, 1], &[1, 2]])).unwrap();
        // shoelace: area 5/2, normalized 5
        assert_eq!(p.normalized_volume(), rat(5));
        assert!(p.contains_interior(&[ratio(1, 2), ratio(1, 2)]));
        assert!(!p.contains_interior(&[rat(0), ratio(1, 2)]));
        assert!(p.contains(&[rat(0), ratio(1, 2)]));
    }
}
