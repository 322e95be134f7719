use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::triangulate::pulling_pieces;
use super::Polytope;
use crate::error::{Error, Result};
use crate::exact::rat::{dot, primitive_vector};
use crate::exact::{Rat, RatMatrix};

/// Polyhedral cone spanned by primitive integer rays in `R^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Vec<Rat>>,
}

impl Cone {
    /// Rays are cleared to primitive integers; positive multiples of an
    /// earlier ray are dropped.
    pub fn new(ambient: usize, rays: &[Vec<Rat>]) -> Result<Self> {
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for r in rays {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch {
                    what: "ray",
                    expected: ambient,
                    found: r.len(),
                });
            }
            if r.iter().all(Zero::is_zero) {
                return Err(Error::Input("zero ray".into()));
            }
            let p = primitive_vector(r);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(Self { ambient, rays: out })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[Vec<Rat>] {
        &self.rays
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.ambient && self.rank() == self.ambient
    }

    pub fn rank(&self) -> usize {
        if self.rays.is_empty() {
            return 0;
        }
        RatMatrix::from_rows(&self.rays).map_or(0, |m| m.rank())
    }

    /// Inward facet normals of a full-rank cone.
    pub fn facet_normals(&self) -> Vec<Vec<Rat>> {
        let n = self.ambient;
        if n == 1 {
            return self.rays.clone();
        }
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for subset in (0..self.rays.len()).combinations(n - 1) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| self.rays[i].clone()).collect();
            let ns = RatMatrix::from_rows(&rows).map(|m| m.nullspace()).unwrap_or_default();
            if ns.len() != 1 {
                continue;
            }
            let vals: Vec<Rat> = self.rays.iter().map(|r| dot(r, &ns[0])).collect();
            let normal = if vals.iter().all(|v| !v.is_negative()) {
                primitive_vector(&ns[0])
            } else if vals.iter().all(|v| !v.is_positive()) {
                primitive_vector(&ns[0].iter().map(|x| -x).collect::<Vec<_>>())
            } else {
                continue;
            };
            if !out.contains(&normal) {
                out.push(normal);
            }
        }
        out
    }

    /// Full rank and containing no line.
    pub fn is_pointed(&self) -> bool {
        if self.rank() != self.ambient || self.ambient == 0 {
            return false;
        }
        if self.ambient == 1 {
            return self.rays.len() == 1;
        }
        let normals = self.facet_normals();
        !normals.is_empty() && RatMatrix::from_rows(&normals).is_ok_and(|m| m.rank() == self.ambient)
    }

    /// Whether `x` lies in the cone (closed).
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facet_normals()
            .iter()
            .all(|a| !dot(a, x).is_negative())
    }
}

/// Triangulates a pointed cone into simplicial cones with rays drawn from
/// the input. The highest-index ray is pulled first.
pub fn cone_triangulation(c: &Cone) -> Result<Vec<Cone>> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    if c.is_simplicial() || c.ambient == 1 {
        return Ok(vec![c.clone()]);
    }
    // cross-section on {g.x = 1}, g strictly positive on every ray
    let normals = c.facet_normals();
    let g: Vec<Rat> = (0..c.ambient)
        .map(|k| normals.iter().map(|a| a[k].clone()).sum())
        .collect();
    let section: Vec<Vec<Rat>> = c
        .rays
        .iter()
        .map(|r| {
            let s = dot(&g, r);
            r.iter().map(|x| x / &s).collect()
        })
        .collect();
    let n = c.rays.len();
    let all: Vec<usize> = (0..n).collect();
    let pieces = pulling_pieces(&section, &all, &|i| n - 1 - i)?;
    let mut pieces: Vec<Vec<usize>> = pieces
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p
        })
        .collect();
    pieces.sort();
    pieces
        .into_iter()
        .map(|p| {
            let rays: Vec<Vec<Rat>> = p.iter().map(|&i| c.rays[i].clone()).collect();
            Cone::new(c.ambient, &rays)
        })
        .collect()
}

/// Inner normal fan: one cone per vertex, spanned by the inward normals of
/// the facets through that vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub maxcones: Vec<Cone>,
    /// Facet indices spanning each cone, in ray order.
    pub facet_ids: Vec<Vec<usize>>,
}

pub fn normal_fan(p: &Polytope) -> Fan {
    let mut maxcones = Vec::new();
    let mut facet_ids = Vec::new();
    for v in 0..p.vertices().len() {
        let ids = p.facets_at(v);
        let rays: Vec<Vec<Rat>> = ids.iter().map(|&f| p.facets()[f].coeffs().to_vec()).collect();
        maxcones.push(Cone::new(p.dim(), &rays).expect("facet normals are nonzero"));
        facet_ids.push(ids);
    }
    Fan {
        maxcones,
        facet_ids,
    }
}

/// Cone over `P` embedded at height one: rays `(1, v)`.
pub fn homogeneous_cone(p: &Polytope) -> Cone {
    let rays: Vec<Vec<Rat>> = p
        .vertices()
        .iter()
        .map(|v| std::iter::once(Rat::one()).chain(v.iter().cloned()).collect())
        .collect();
    Cone::new(p.dim() + 1, &rays).expect("homogenized vertices are nonzero")
}

/// Dual of the homogeneous cone: rays are the homogenized facet forms
/// `(c0, a)`, in facet order.
pub fn dual_cone(p: &Polytope) -> Cone {
    let rays: Vec<Vec<Rat>> = p.facets().iter().map(|f| f.homogeneous()).collect();
    Cone::new(p.dim() + 1, &rays).expect("facet forms are nonzero")
}
