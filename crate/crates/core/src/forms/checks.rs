use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{canon_triangulation, CanonicalForm, CheckReport, Method, RatFunc, Witness};
use crate::error::{Error, Result};
use crate::exact::{format_rat, Rat};
use crate::polytope::Polytope;

/// Checks `sum Omega(part) = Omega(parent)` after verifying that the parts
/// subdivide the parent: contained in it, interiors pairwise disjoint, and
/// volumes adding up.
pub fn subdivision_verify(parent: &Polytope, parts: &[Polytope]) -> Result<CheckReport> {
    let d = parent.dim();
    if parts.is_empty() {
        return Err(Error::NotSubdivision("no parts".into()));
    }
    for (k, part) in parts.iter().enumerate() {
        if part.dim() != d {
            return Err(Error::DimensionMismatch {
                what: "subdivision part",
                expected: d,
                found: part.dim(),
            });
        }
        if let Some(v) = part.vertices().iter().find(|v| !parent.contains(v)) {
            return Err(Error::NotSubdivision(format!(
                "part {k} has vertex {} outside the parent",
                fmt_point(v)
            )));
        }
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let mut forms = parts[i].facets().to_vec();
            forms.extend_from_slice(parts[j].facets());
            match Polytope::from_halfspaces(d, &forms) {
                Err(Error::EmptyInterior) => {}
                Err(e) => return Err(e),
                Ok(common) => {
                    return Err(Error::NotSubdivision(format!(
                        "parts {i} and {j} overlap at {}",
                        fmt_point(common.centroid())
                    )))
                }
            }
        }
    }
    let total: Rat = parts.iter().map(Polytope::normalized_volume).sum();
    if total != parent.normalized_volume() {
        return Err(Error::NotSubdivision(format!(
            "part volumes sum to {}, parent volume is {}",
            format_rat(&total),
            format_rat(&parent.normalized_volume())
        )));
    }

    let whole = canon_triangulation(parent)?;
    let forms = parts
        .par_iter()
        .map(canon_triangulation)
        .collect::<Result<Vec<_>>>()?;
    let funcs: Vec<RatFunc> = forms.iter().map(CanonicalForm::signed_func).collect();
    let sum = CanonicalForm::new(whole.varnames().to_vec(), RatFunc::sum(d, &funcs)?)?;
    let mut witnesses: Vec<Witness> = forms
        .iter()
        .enumerate()
        .map(|(k, f)| Witness::ok(format!("part {k}"), json!({"form": f.format()})))
        .collect();
    let detail = json!({"sum": sum.format(), "parent": whole.format()});
    witnesses.push(if sum.same_as(&whole) {
        Witness::ok("sum", detail)
    } else {
        Witness::mismatch("sum", detail)
    });
    Ok(CheckReport::new("subdivision", witnesses))
}

/// Checks that the triangulation, dual-volume and dual-cone constructions
/// agree.
pub fn filliman_check(p: &Polytope) -> Result<CheckReport> {
    let forms = Method::ALL
        .par_iter()
        .map(|m| m.canon(p))
        .collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::new();
    for (m, f) in Method::ALL.iter().zip(&forms).skip(1) {
        let detail = json!({
            "method": m.name(),
            "form": f.format(),
            "triangulation": forms[0].format(),
        });
        witnesses.push(if f.same_as(&forms[0]) {
            Witness::ok(m.name(), detail)
        } else {
            Witness::mismatch(m.name(), detail)
        });
    }
    Ok(CheckReport::new("filliman", witnesses))
}

/// Interior sample points: convex combinations of the vertices with
/// pseudo-random positive rational weights.
pub fn interior_samples(p: &Polytope, n: usize, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let w: Vec<i64> = p.vertices().iter().map(|_| rng.gen_range(1..=64)).collect();
            let total: i64 = w.iter().sum();
            (0..p.dim())
                .map(|k| {
                    p.vertices()
                        .iter()
                        .zip(&w)
                        .map(|(v, &wi)| &v[k] * Rat::from_integer(wi.into()))
                        .sum::<Rat>()
                        / Rat::from_integer(total.into())
                })
                .collect()
        })
        .collect()
}

/// Checks that the canonical form is nonzero with one sign at `samples`
/// interior points.
pub fn positive_convexity_check(p: &Polytope, samples: usize, seed: u64) -> Result<CheckReport> {
    if samples == 0 {
        return Err(Error::Input("samples must be at least 1".into()));
    }
    let f = canon_triangulation(p)?;
    let pts = interior_samples(p, samples, seed);
    let values = pts
        .par_iter()
        .map(|x| {
            f.value(x)?
                .ok_or_else(|| Error::Input(format!("interior sample {} hits a pole", fmt_point(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    let sign = values.first().map_or(0, |v: &Rat| if v.is_positive() { 1 } else { -1 });
    let witnesses = pts
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(k, (x, v))| {
            let same = !v.is_zero() && (v.is_positive() == (sign > 0));
            let detail = json!({"point": x.iter().map(format_rat).collect::<Vec<_>>(), "value": format_rat(v)});
            if same {
                Witness::ok(format!("sample {k}"), detail)
            } else {
                Witness::mismatch(format!("sample {k}"), detail)
            }
        })
        .collect();
    Ok(CheckReport::new("positive-convexity", witnesses))
}

fn fmt_point(x: &[Rat]) -> String {
    let parts: Vec<String> = x.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::polytope::hull_from_vertices;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn quad() -> Polytope {
        hull_from_vertices(2, &[v(&[0, 0]), v(&[2, 0]), v(&[1, 2]), v(&[0, 1])]).unwrap()
    }

    #[test]
    fn quad_from_two_triangles() {
        let t1 = hull_from_vertices(2, &[v(&[0, 0]), v(&[2, 0]), v(&[0, 1])]).unwrap();
        let t2 = hull_from_vertices(2, &[v(&[2, 0]), v(&[1, 2]), v(&[0, 1])]).unwrap();
        assert!(subdivision_verify(&quad(), &[t1.clone(), t2]).unwrap().passed);
        assert!(subdivision_verify(&quad(), &[quad()]).unwrap().passed);
        // missing piece
        assert!(matches!(
            subdivision_verify(&quad(), std::slice::from_ref(&t1)),
            Err(Error::NotSubdivision(_))
        ));
        // overlap
        assert!(matches!(
            subdivision_verify(&quad(), &[t1.clone(), t1, quad()]),
            Err(Error::NotSubdivision(_))
        ));
    }

    #[test]
    fn convexity_and_filliman_on_quad() {
        let rep = positive_convexity_check(&quad(), 100, 7).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.witnesses.len(), 100);
        assert!(filliman_check(&quad()).unwrap().passed);
        let f = canon_triangulation(&quad()).unwrap();
        assert_eq!(f.value(&[ratio(1, 2), ratio(1, 2)]).unwrap(), Some(ratio(44, 5)));
    }

    #[test]
    fn samples_are_interior() {
        for x in interior_samples(&quad(), 20, 1) {
            assert!(quad().contains_interior(&x));
        }
    }
}
