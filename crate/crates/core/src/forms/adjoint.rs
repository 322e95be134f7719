use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde_json::json;

use super::{canon_triangulation, CanonicalForm, CheckReport, RatFunc, Witness};
use crate::error::{Error, Result};
use crate::exact::rat::{dot, format_rat, primitive_vector};
use crate::exact::{LinForm, Monomial, Poly, Rat, RatMatrix};
use crate::polytope::Polytope;

/// A form in projective coordinates `X0..Xd`, homogeneous of total degree
/// `-(d+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    pub varnames: Vec<String>,
    pub sign: i8,
    pub func: RatFunc,
    pub degree: i64,
}

impl HomogeneousForm {
    pub fn numerator(&self) -> &Poly {
        self.func.numerator()
    }

    pub fn format(&self) -> String {
        let s = self.func.format(&self.varnames);
        if self.sign < 0 {
            format!("-{s}")
        } else {
            s
        }
    }
}

/// Homogenizes with `X0 = 1` on the affine chart. The numerator degree is
/// fixed by the pole count: `deg N = (total pole order) - d - 1`.
pub fn homogenize(f: &CanonicalForm) -> Result<HomogeneousForm> {
    let d = f.nvars();
    let total = f.func().pole_degree() as i64;
    let target = total - d as i64 - 1;
    let found = f.numerator().degree().map_or(0, i64::from);
    if f.is_zero() || target < found {
        return Err(Error::DegreeMismatch {
            expected: target,
            found,
        });
    }
    let numerator = f.numerator().homogenize(target as u32)?;
    let poles = f
        .poles()
        .iter()
        .map(|p| {
            Ok(super::Pole {
                form: LinForm::new(Rat::zero(), p.form.homogeneous())?,
                mult: p.mult,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomogeneousForm {
        varnames: (0..=d).map(|i| format!("X{i}")).collect(),
        sign: f.sign(),
        func: RatFunc::with_poles(numerator, poles)?,
        degree: target - total,
    })
}

/// Homogeneous adjoint polynomial, of degree `f - d - 1` in `X0..Xd`, scaled
/// to coprime integer coefficients with positive leading term.
pub fn adjoint(p: &Polytope) -> Result<Poly> {
    let h = homogenize(&canon_triangulation(p)?)?;
    let expected = p.num_facets() as i64 - p.dim() as i64 - 1;
    let found = h.numerator().degree().map_or(0, i64::from);
    if found != expected {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(h.numerator().primitive().0)
}

/// A maximal intersection of facet hyperplanes in projective space that
/// misses the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualFlat {
    /// Every facet whose hyperplane contains the flat.
    pub facets: Vec<usize>,
    /// Basis of the flat's linear span in `R^(d+1)`.
    pub basis: Vec<Vec<Rat>>,
}

impl ResidualFlat {
    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// The flat's point for a 0-dimensional flat: `(1, x)` when finite, else
    /// a primitive direction `(0, v)` with first nonzero entry positive.
    pub fn point(&self) -> Option<Vec<Rat>> {
        if self.basis.len() != 1 {
            return None;
        }
        let b = &self.basis[0];
        if !b[0].is_zero() {
            return Some(b.iter().map(|x| x / &b[0]).collect());
        }
        let v = primitive_vector(b);
        let first = v.iter().find(|x| !x.is_zero()).expect("nonzero basis vector");
        Some(if first < &Rat::zero() {
            v.iter().map(|x| -x).collect()
        } else {
            v
        })
    }

    pub fn describe(&self) -> serde_json::Value {
        let mut out = json!({"facets": self.facets, "dim": self.dim()});
        if let Some(pt) = self.point() {
            out["point"] = json!(pt.iter().map(format_rat).collect::<Vec<_>>());
        } else {
            out["basis"] = json!(self
                .basis
                .iter()
                .map(|b| b.iter().map(format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
        out
    }
}

/// Maximal flats of the projective facet arrangement not meeting `P`.
pub fn residual_arrangement(p: &Polytope) -> Result<Vec<ResidualFlat>> {
    if p.dim() > 3 {
        return Err(Error::UnsupportedDimension {
            what: "residual arrangement",
            dim: p.dim(),
            max: 3,
        });
    }
    let h: Vec<Vec<Rat>> = p.facets().iter().map(LinForm::homogeneous).collect();
    let closure = |set: &[usize]| -> Option<(Vec<usize>, Vec<Vec<Rat>>)> {
        let rows: Vec<&Vec<Rat>> = set.iter().map(|&i| &h[i]).collect();
        let ns = RatMatrix::from_rows(&rows).ok()?.nullspace();
        if ns.is_empty() {
            return None;
        }
        let full = (0..h.len())
            .filter(|&i| ns.iter().all(|b| dot(&h[i], b).is_zero()))
            .collect();
        Some((full, ns))
    };
    let mut flats: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut bases = std::collections::BTreeMap::new();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    for i in 0..h.len() {
        if let Some((c, ns)) = closure(&[i]) {
            if flats.insert(c.clone()) {
                bases.insert(c.clone(), ns);
                queue.push(c);
            }
        }
    }
    while let Some(f) = queue.pop() {
        for j in 0..h.len() {
            if f.contains(&j) {
                continue;
            }
            let mut s = f.clone();
            s.push(j);
            if let Some((c, ns)) = closure(&s) {
                if flats.insert(c.clone()) {
                    bases.insert(c.clone(), ns);
                    queue.push(c);
                }
            }
        }
    }
    let at_vertex: Vec<Vec<usize>> = (0..p.vertices().len()).map(|v| p.facets_at(v)).collect();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    let residual: Vec<&Vec<usize>> = flats
        .iter()
        .filter(|f| !at_vertex.iter().any(|vf| subset(f, vf)))
        .collect();
    // larger flats have smaller closures
    let maximal = residual
        .iter()
        .filter(|f| !residual.iter().any(|g| g != *f && subset(g, f)))
        .map(|f| ResidualFlat {
            facets: (*f).clone(),
            basis: bases[*f].clone(),
        })
        .collect();
    Ok(maximal)
}

/// Checks that the adjoint vanishes identically on each residual flat.
pub fn adjoint_vanishing_check(p: &Polytope) -> Result<CheckReport> {
    let adj = adjoint(p)?;
    let flats = residual_arrangement(p)?;
    let mut witnesses = Vec::new();
    for (k, flat) in flats.iter().enumerate() {
        let restricted = adj.compose(&parametrize(flat, p.dim()))?;
        let mut detail = flat.describe();
        if restricted.is_zero() {
            witnesses.push(Witness::ok(format!("flat {k}"), detail));
        } else {
            let names: Vec<String> = (1..=flat.basis.len()).map(|i| format!("t{i}")).collect();
            detail["restriction"] = json!(restricted.format(&names));
            witnesses.push(Witness::mismatch(format!("flat {k}"), detail));
        }
    }
    Ok(CheckReport::new("adjoint-vanishing", witnesses))
}

/// `X = sum_j t_j b_j` as polynomials in the `t_j`.
fn parametrize(flat: &ResidualFlat, d: usize) -> Vec<Poly> {
    let m = flat.basis.len();
    (0..=d)
        .map(|i| {
            let terms = (0..m).map(|j| {
                let mut e = vec![0; m];
                e[j] = 1;
                (flat.basis[j][i].clone(), e)
            });
            Poly::from_terms(m, terms).expect("exponent lengths match")
        })
        .collect()
}

/// Dimension of the space of degree `f - d - 1` forms vanishing on the
/// residual arrangement. The adjoint is determined up to scale by the
/// arrangement exactly when this is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationSpace {
    pub degree: u32,
    pub unknowns: usize,
    pub nullity: usize,
}

pub fn residual_interpolation(p: &Polytope) -> Result<InterpolationSpace> {
    let d = p.dim();
    let k = (p.num_facets() - d - 1) as u32;
    let flats = residual_arrangement(p)?;
    let monos = monomials(d + 1, k);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for flat in &flats {
        let images = parametrize(flat, d);
        let restricted: Vec<Poly> = monos
            .iter()
            .map(|m| Poly::from_terms(d + 1, [(Rat::one(), m.exps().to_vec())]).and_then(|q| q.compose(&images)))
            .collect::<Result<_>>()?;
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        for q in &restricted {
            seen.extend(q.terms().map(|(t, _)| t.clone()));
        }
        for t in seen {
            rows.push(restricted.iter().map(|q| q.coeff(&t)).collect());
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        RatMatrix::from_rows(&rows)?.rank()
    };
    Ok(InterpolationSpace {
        degree: k,
        unknowns: monos.len(),
        nullity: monos.len() - rank,
    })
}

fn monomials(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polytope::hull_from_vertices;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("X{i}")).collect()
    }

    #[test]
    fn quad_adjoint_and_residual_points() {
        let p = hull_from_vertices(2, &[v(&[0, 0]), v(&[2, 0]), v(&[1, 2]), v(&[0, 1])]).unwrap();
        assert_eq!(adjoint(&p).unwrap().format(&names(3)), "4X0+4X1-X2");
        let h = homogenize(&canon_triangulation(&p).unwrap()).unwrap();
        assert_eq!(h.degree, -3);
        assert_eq!(h.format(), "(4X0+4X1-X2)/(X1*X2*(X0+X1-X2)*(4X0-2X1-X2))");
        let pts: Vec<Vec<Rat>> = residual_arrangement(&p)
            .unwrap()
            .iter()
            .map(|f| f.point().unwrap())
            .collect();
        assert_eq!(pts, vec![v(&[1, 0, 4]), v(&[1, -1, 0])]);
        assert!(adjoint_vanishing_check(&p).unwrap().passed);
        assert_eq!(residual_interpolation(&p).unwrap().nullity, 1);
    }

    #[test]
    fn square_adjoint_vanishes_at_infinity() {
        let p = hull_from_vertices(2, &[v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(adjoint(&p).unwrap().format(&names(3)), "X0");
        let mut pts: Vec<Vec<Rat>> = residual_arrangement(&p)
            .unwrap()
            .iter()
            .map(|f| f.point().unwrap())
            .collect();
        pts.sort();
        assert_eq!(pts, vec![v(&[0, 0, 1]), v(&[0, 1, 0])]);
    }

    #[test]
    fn simplex_has_constant_adjoint() {
        let p = hull_from_vertices(3, &[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert!(adjoint(&p).unwrap().is_constant());
        assert!(residual_arrangement(&p).unwrap().is_empty());
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(1, 4).len(), 1);
    }
}
