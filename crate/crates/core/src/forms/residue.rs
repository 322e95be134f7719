use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{canon_triangulation, is_unit, CanonicalForm, CheckReport, RatFunc, Witness};
use crate::error::{Error, Result};
use crate::exact::{format_rat, LinForm, Poly, Rat};
use crate::polytope::Polytope;

/// Coordinates on a residue hyperplane `l = 0`: variable `pivot` is solved
/// for and the others are kept, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueChart {
    pub pivot: usize,
    pub kept: Vec<usize>,
    /// `x_pivot = solved[0] + sum_j solved[j+1] * x_kept[j]`.
    #[serde(with = "crate::exact::rat::serde_rat::vec")]
    pub solved: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub form: CanonicalForm,
    pub chart: ResidueChart,
}

/// Residue along a simple pole `l = 0`.
///
/// Writing `Omega = (dl / l) ^ eta`, returns `eta` restricted to the
/// hyperplane, in the coordinates of [`ResidueChart`]. The pivot is the
/// highest-index variable with a nonzero coefficient in `l`.
pub fn residue(f: &CanonicalForm, facet: &LinForm) -> Result<Residue> {
    let d = f.nvars();
    if facet.nvars() != d {
        return Err(Error::DimensionMismatch {
            what: "residue hyperplane",
            expected: d,
            found: facet.nvars(),
        });
    }
    if !facet.has_linear_part() {
        return Err(Error::NoLinearPart(facet.to_string()));
    }
    let func = f.signed_func();
    let k = func
        .poles()
        .iter()
        .position(|p| p.form.ratio_to(facet).is_some())
        .ok_or_else(|| Error::NotSimplePole {
            form: facet.format(f.varnames()),
            multiplicity: 0,
        })?;
    let pole = &func.poles()[k];
    if pole.mult != 1 {
        return Err(Error::NotSimplePole {
            form: facet.format(f.varnames()),
            multiplicity: pole.mult,
        });
    }
    // pole = r * facet
    let r = pole.form.ratio_to(facet).expect("same hyperplane");
    let pivot = facet
        .coeffs()
        .iter()
        .rposition(|c| !c.is_zero())
        .expect("has linear part");
    let cp = facet.coeffs()[pivot].clone();
    let kept: Vec<usize> = (0..d).filter(|&i| i != pivot).collect();

    // x_p = -(c0 + sum_{i != p} c_i x_i) / c_p
    let solved: Vec<Rat> = std::iter::once(-facet.c0() / &cp)
        .chain(kept.iter().map(|&i| -&facet.coeffs()[i] / &cp))
        .collect();
    let solved_poly = Poly::from_terms(
        d - 1,
        solved.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; d - 1];
            if k > 0 {
                e[k - 1] = 1;
            }
            (c.clone(), e)
        }),
    )?;
    let images: Vec<Poly> = (0..d)
        .map(|i| match kept.iter().position(|&j| j == i) {
            Some(j) => Poly::var(d - 1, j),
            None => solved_poly.clone(),
        })
        .collect();

    // dx_1..dx_d = (-1)^p / c_p  dl ^ (dx without dx_p)
    let mut scale = Rat::one() / (&cp * &r);
    if pivot % 2 == 1 {
        scale = -scale;
    }
    let mut rest: Vec<_> = func.poles().to_vec();
    rest.remove(k);
    let remaining = RatFunc::with_poles(func.numerator().clone(), rest)?;
    let restricted = remaining.substitute(&images)?.scale(&scale);

    let names: Vec<String> = kept.iter().map(|&i| f.varnames()[i].clone()).collect();
    Ok(Residue {
        form: CanonicalForm::new(names, restricted)?,
        chart: ResidueChart {
            pivot,
            kept,
            solved,
        },
    })
}

/// Checks that the residue of the canonical form along every facet equals,
/// up to a recorded sign, the canonical form of that facet, recursively down
/// to vertices, where the residue must be `+-1`.
pub fn recursion_verify(p: &Polytope) -> Result<CheckReport> {
    let form = canon_triangulation(p)?;
    let mut witnesses = Vec::new();
    let poles = form.pole_hyperplanes();
    let mut facets: Vec<LinForm> = p.facets().iter().map(LinForm::canonical).collect();
    facets.sort_by(|a, b| a.facet_order(b));
    if poles == facets {
        witnesses.push(Witness::ok("poles", json!({"poles": "facets"})));
    } else {
        witnesses.push(Witness::mismatch(
            "poles",
            json!({
                "poles": poles.iter().map(|l| l.format(form.varnames())).collect::<Vec<_>>(),
                "facets": facets.iter().map(|l| l.format(form.varnames())).collect::<Vec<_>>(),
            }),
        ));
    }
    descend(&form, p, &mut Vec::new(), &mut HashMap::new(), &mut witnesses)?;
    Ok(CheckReport::new("recursion", witnesses))
}

/// Faces reached along different paths often project to the same vertex
/// set; their forms are computed once.
type FaceCache = HashMap<Vec<Vec<Rat>>, CanonicalForm>;

fn descend(
    form: &CanonicalForm,
    p: &Polytope,
    path: &mut Vec<usize>,
    cache: &mut FaceCache,
    out: &mut Vec<Witness>,
) -> Result<()> {
    for (i, facet) in p.facets().iter().enumerate() {
        path.push(i);
        let at = path
            .iter()
            .map(|f| format!("facet {f}"))
            .collect::<Vec<_>>()
            .join(" / ");
        match residue(form, facet) {
            Err(e) => out.push(Witness::mismatch(at, json!({"error": e.to_string()}))),
            Ok(res) if p.dim() == 1 => {
                let v = res.form.constant();
                match v {
                    Some(v) if is_unit(&v) => out.push(Witness::ok(at, json!({"residue": format_rat(&v)}))),
                    other => out.push(Witness::mismatch(
                        at,
                        json!({"residue": other.map_or("pole".into(), |v| format_rat(&v))}),
                    )),
                }
            }
            Ok(res) => {
                let face = p.facet_polytope(i, res.chart.pivot)?;
                let mut key = face.vertices().to_vec();
                key.sort();
                let reference = match cache.get(&key) {
                    Some(f) => f.clone(),
                    None => {
                        let f = canon_triangulation(&face)?;
                        cache.insert(key, f.clone());
                        f
                    }
                };
                let reference = CanonicalForm::new(res.form.varnames().to_vec(), reference.signed_func())?;
                match res.form.sign_relative_to(&reference) {
                    Some(sigma) => {
                        out.push(Witness::ok(
                            at,
                            json!({"sign": sigma, "residue": res.form.format()}),
                        ));
                        descend(&res.form, &face, path, cache, out)?;
                    }
                    None => out.push(Witness::mismatch(
                        at,
                        json!({"residue": res.form.format(), "facet_form": reference.format()}),
                    )),
                }
            }
        }
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::forms::interval_form;
    use crate::polytope::hull_from_vertices;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn lin(c0: i64, a: &[i64]) -> LinForm {
        LinForm::new(rat(c0), a.iter().map(|&v| rat(v)).collect()).unwrap()
    }

    #[test]
    fn unit_square_residues() {
        let p = hull_from_vertices(2, &[v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        let f = canon_triangulation(&p).unwrap();
        let r = residue(&f, &lin(0, &[1, 0])).unwrap();
        assert_eq!(r.form.format(), "1/(y*(1-y)) dy");
    }

    #[test]
    fn quad_residue_on_slanted_facet() {
        let p = hull_from_vertices(2, &[v(&[0, 0]), v(&[2, 0]), v(&[1, 2]), v(&[0, 1])]).unwrap();
        let f = canon_triangulation(&p).unwrap();
        let r = residue(&f, &lin(1, &[1, -1])).unwrap();
        assert_eq!(r.chart.pivot, 1);
        assert_eq!(r.form.format(), "1/(x*(1-x)) dx");
        let y = residue(&f, &lin(0, &[0, 1])).unwrap();
        assert_eq!(y.form.sign(), -1);
    }

    #[test]
    fn interval_endpoint_residues() {
        let f = interval_form(&rat(0), &rat(1)).unwrap();
        let a = residue(&f, &lin(0, &[1])).unwrap();
        let b = residue(&f, &lin(1, &[-1])).unwrap();
        assert_eq!(a.form.constant(), Some(rat(1)));
        assert_eq!(b.form.constant(), Some(rat(-1)));
    }

    #[test]
    fn rejects_bad_hyperplanes() {
        let f = interval_form(&rat(0), &rat(1)).unwrap();
        assert!(matches!(residue(&f, &lin(1, &[0])), Err(Error::NoLinearPart(_))));
        assert!(matches!(
            residue(&f, &lin(2, &[-1])),
            Err(Error::NotSimplePole { multiplicity: 0, .. })
        ));
    }

    #[test]
    fn recursion_on_cube() {
        let mut pts = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    pts.push(v(&[a, b, c]));
                }
            }
        }
        let p = hull_from_vertices(3, &pts).unwrap();
        let rep = recursion_verify(&p).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
