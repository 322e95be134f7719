//! The three constructions of the canonical form of a polytope.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{CanonicalForm, RatFunc};
use crate::error::{Error, Result};
use crate::exact::rat::primitive_vector;
use crate::exact::{det_columns, LinForm, Poly, Rat, RatMatrix};
use crate::polytope::{
    cone_triangulation, dual_cone, hull_from_vertices, pulling_triangulation, Cone, Polytope,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Triangulation,
    DualVolume,
    DualCone,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Triangulation, Method::DualVolume, Method::DualCone];

    pub fn name(self) -> &'static str {
        match self {
            Method::Triangulation => "triangulation",
            Method::DualVolume => "dualvol",
            Method::DualCone => "laplace",
        }
    }

    pub fn canon(self, p: &Polytope) -> Result<CanonicalForm> {
        match self {
            Method::Triangulation => canon_triangulation(p),
            Method::DualVolume => canon_dual_volume(p),
            Method::DualCone => canon_dual_cone(p),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangulation" => Ok(Method::Triangulation),
            "dualvol" => Ok(Method::DualVolume),
            "laplace" => Ok(Method::DualCone),
            _ => Err(Error::Input(format!("unknown method `{s}`"))),
        }
    }
}

/// `(b - a) / ((x - a)(b - x)) dx`.
pub fn interval_form(a: &Rat, b: &Rat) -> Result<CanonicalForm> {
    if a >= b {
        return Err(Error::EmptyInterval {
            a: crate::exact::format_rat(a),
            b: crate::exact::format_rat(b),
        });
    }
    simplex_form(&hull_from_vertices(1, &[vec![a.clone()], vec![b.clone()]])?)
}

/// `|det H| / prod l_i`, with `H` the matrix of homogenized facet forms.
pub fn simplex_form(t: &Polytope) -> Result<CanonicalForm> {
    let mut f = CanonicalForm::with_default_names(simplex_func(t)?);
    f.orient_poles(t.facets());
    Ok(f)
}

fn simplex_func(t: &Polytope) -> Result<RatFunc> {
    if !t.is_simplex() {
        return Err(Error::NotSimplex {
            dim: t.dim(),
            vertices: t.vertices().len(),
        });
    }
    let rows: Vec<Vec<Rat>> = t.facets().iter().map(LinForm::homogeneous).collect();
    let det = if rows.is_empty() {
        Rat::one()
    } else {
        RatMatrix::from_rows(&rows)?.det()?.abs()
    };
    RatFunc::new(Poly::constant(t.dim(), det), t.facets().to_vec())
}

/// Sums reduced functions pairwise, in index order.
fn tree_sum(nvars: usize, mut items: Vec<RatFunc>) -> Result<RatFunc> {
    if items.is_empty() {
        return Ok(RatFunc::zero(nvars));
    }
    while items.len() > 1 {
        items = items
            .par_chunks(2)
            .map(|c| match c {
                [a, b] => a.add(b),
                [a] => Ok(a.clone()),
                _ => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(items.pop().expect("one item"))
}

fn finish(p: &Polytope, func: RatFunc) -> CanonicalForm {
    let mut f = CanonicalForm::with_default_names(func);
    f.orient_poles(p.facets());
    f
}

fn point_form() -> CanonicalForm {
    CanonicalForm::with_default_names(RatFunc::polynomial(Poly::one(0)))
}

/// Sum of simplex forms over the pulling triangulation.
pub fn canon_triangulation(p: &Polytope) -> Result<CanonicalForm> {
    if p.dim() == 0 {
        return Ok(point_form());
    }
    let tri = pulling_triangulation(p);
    let terms = tri
        .pieces()
        .par_iter()
        .map(|piece| {
            let pts: Vec<Vec<Rat>> = piece.iter().map(|&v| p.vertices()[v].clone()).collect();
            simplex_func(&hull_from_vertices(p.dim(), &pts)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(p, tree_sum(p.dim(), terms)?))
}

/// One simplicial normal cone at a vertex: `coeff / prod offsets[facets]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVolumeTerm {
    pub vertex: usize,
    pub facets: Vec<usize>,
    /// `|det|` of the spanning facet normals.
    pub coeff: Rat,
}

impl DualVolumeTerm {
    pub fn func(&self, offsets: &[LinForm]) -> Result<RatFunc> {
        let nv = offsets.first().map_or(0, LinForm::nvars);
        let poles = self.facets.iter().map(|&i| offsets[i].clone()).collect();
        RatFunc::new(Poly::constant(nv, self.coeff.clone()), poles)
    }
}

/// Decomposes each normal cone of `p` into simplicial cones spanned by facet
/// normals.
pub fn dual_volume_terms(p: &Polytope) -> Result<Vec<DualVolumeTerm>> {
    let d = p.dim();
    let per_vertex = (0..p.vertices().len())
        .into_par_iter()
        .map(|v| {
            let ids = p.facets_at(v);
            let normals: Vec<&[Rat]> = ids.iter().map(|&i| p.facets()[i].coeffs()).collect();
            let groups: Vec<Vec<usize>> = if ids.len() == d {
                vec![ids.clone()]
            } else {
                let rays: Vec<Vec<Rat>> = normals.iter().map(|a| a.to_vec()).collect();
                let prim: Vec<Vec<Rat>> = rays.iter().map(|r| primitive_vector(r)).collect();
                cone_triangulation(&Cone::new(d, &rays)?)?
                    .iter()
                    .map(|c| {
                        c.rays()
                            .iter()
                            .map(|r| ids[prim.iter().position(|q| q == r).expect("ray is a normal")])
                            .collect()
                    })
                    .collect()
            };
            groups
                .into_iter()
                .map(|facets| {
                    let cols: Vec<&[Rat]> = facets.iter().map(|&i| p.facets()[i].coeffs()).collect();
                    Ok(DualVolumeTerm {
                        vertex: v,
                        coeff: det_columns(&cols)?.abs(),
                        facets,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_vertex.into_iter().flatten().collect())
}

/// Sum over vertices of the volumes of the simplicial normal-cone pieces,
/// read as a function of the facet offsets.
pub fn canon_dual_volume(p: &Polytope) -> Result<CanonicalForm> {
    if p.dim() == 0 {
        return Ok(point_form());
    }
    let terms = dual_volume_terms(p)?;
    let funcs = terms
        .par_iter()
        .map(|t| t.func(p.facets()))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(p, tree_sum(p.dim(), funcs)?))
}

/// Laplace transform of one simplicial piece of a cone:
/// `|det(rays)| / prod (X . r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceTerm {
    pub rays: Vec<Vec<Rat>>,
    pub abs_det: Rat,
}

impl LaplaceTerm {
    /// As a homogeneous function of `X = (X0, .., Xd)`.
    pub fn homogeneous(&self) -> Result<RatFunc> {
        let n = self.rays.first().map_or(0, Vec::len);
        let poles = self
            .rays
            .iter()
            .map(|r| LinForm::new(Rat::zero(), r.clone()))
            .collect::<Result<Vec<_>>>()?;
        RatFunc::new(Poly::constant(n, self.abs_det.clone()), poles)
    }

    /// Restricted to `X0 = 1`.
    pub fn affine(&self) -> Result<RatFunc> {
        let n = self.rays.first().map_or(1, Vec::len);
        let poles = self
            .rays
            .iter()
            .map(|r| LinForm::from_homogeneous(r))
            .collect::<Result<Vec<_>>>()?;
        RatFunc::new(Poly::constant(n - 1, self.abs_det.clone()), poles)
    }
}

pub fn laplace_terms(c: &Cone) -> Result<Vec<LaplaceTerm>> {
    cone_triangulation(c)?
        .into_iter()
        .map(|s| {
            Ok(LaplaceTerm {
                abs_det: det_columns(s.rays())?.abs(),
                rays: s.rays().to_vec(),
            })
        })
        .collect()
}

/// Laplace transform of the dual of the homogeneous cone, at `X0 = 1`.
pub fn canon_dual_cone(p: &Polytope) -> Result<CanonicalForm> {
    if p.dim() == 0 {
        return Ok(point_form());
    }
    let terms = laplace_terms(&dual_cone(p))?;
    let funcs = terms
        .par_iter()
        .map(LaplaceTerm::affine)
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(p, tree_sum(p.dim(), funcs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn quad() -> Polytope {
        let v = |a: i64, b: i64| vec![rat(a), rat(b)];
        hull_from_vertices(2, &[v(0, 0), v(2, 0), v(1, 2), v(0, 1)]).unwrap()
    }

    #[test]
    fn quadrilateral_all_methods() {
        let want = "(4+4x-y)/(x*y*(1+x-y)*(4-2x-y)) dx^dy";
        for m in Method::ALL {
            assert_eq!(m.canon(&quad()).unwrap().format(), want, "{}", m.name());
        }
    }

    #[test]
    fn interval() {
        let f = interval_form(&rat(0), &rat(1)).unwrap();
        assert_eq!(f.format(), "1/(x*(1-x)) dx");
        assert!(interval_form(&rat(1), &rat(1)).is_err());
    }

    #[test]
    fn standard_simplex() {
        let p = hull_from_vertices(2, &[vec![rat(0), rat(0)], vec![rat(1), rat(0)], vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(simplex_form(&p).unwrap().format(), "1/(x*y*(1-x-y)) dx^dy");
        assert!(simplex_form(&quad()).is_err());
    }

    #[test]
    fn dual_volume_quad_terms() {
        let terms = dual_volume_terms(&quad()).unwrap();
        let coeffs: Vec<Rat> = terms.iter().map(|t| t.coeff.clone()).collect();
        assert_eq!(coeffs, vec![rat(1), rat(2), rat(3), rat(1)]);
    }
}
