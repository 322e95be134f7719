use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

use super::{dual_volume_terms, CheckReport, RatFunc, Witness};
use crate::error::{Error, Result};
use crate::exact::{LinForm, Poly, Rat};
use crate::polytope::minkowski_sum;

/// `Vol((x_1 P_1 + .. + x_r P_r)^v)` as a rational function of the weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolume {
    /// Dimension of the ambient space of the summands.
    pub dim: usize,
    pub varnames: Vec<String>,
    pub func: RatFunc,
}

impl MixedVolume {
    pub fn format(&self) -> String {
        self.func.format(&self.varnames)
    }
}

/// Summands are given by point sets and may be lower-dimensional (a single
/// point is allowed), but their sum must be full-dimensional with the origin
/// in its interior at unit weights.
pub fn dual_mixed_volume(summands: &[Vec<Vec<Rat>>]) -> Result<MixedVolume> {
    let r = summands.len();
    let ones = vec![Rat::from_integer(1.into()); r];
    let sum = minkowski_sum(summands, &ones)?;
    let q = &sum.polytope;
    if q.facets().iter().any(|f| !f.c0().is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let offsets = (0..q.num_facets())
        .map(|i| LinForm::new(Rat::zero(), (0..r).map(|j| sum.support[j][i].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    let funcs = dual_volume_terms(q)?
        .par_iter()
        .map(|t| t.func(&offsets))
        .collect::<Result<Vec<_>>>()?;
    Ok(MixedVolume {
        dim: q.dim(),
        varnames: (1..=r).map(|j| format!("x{j}")).collect(),
        func: RatFunc::sum(r, &funcs)?,
    })
}

/// Checks `V(lambda x) = lambda^(-d) V(x)` with `lambda` a new symbol.
pub fn mixed_homogeneity_check(v: &MixedVolume) -> Result<CheckReport> {
    let r = v.func.nvars();
    let lambda = Poly::var(r + 1, r);
    let images: Vec<Poly> = (0..r).map(|j| &Poly::var(r + 1, j) * &lambda).collect();
    let lift = |p: &Poly| -> Result<Poly> {
        p.compose(&(0..r).map(|j| Poly::var(r + 1, j)).collect::<Vec<_>>())
    };
    let mut witnesses = Vec::new();
    for (k, p) in v.func.poles().iter().enumerate() {
        let scaled = p.form.to_poly().compose(&images)?;
        let want = &lambda * &lift(&p.form.to_poly())?;
        let detail = json!({"pole": p.form.format(&v.varnames)});
        witnesses.push(if scaled == want {
            Witness::ok(format!("pole {k}"), detail)
        } else {
            Witness::mismatch(format!("pole {k}"), detail)
        });
    }
    let den = v.func.pole_degree() as i64;
    let e = den - v.dim as i64;
    let detail = json!({"numerator": v.func.numerator().format(&v.varnames), "expected_degree": e});
    let ok = e >= 0 && {
        let scaled = v.func.numerator().compose(&images)?;
        scaled == &lambda.pow(e as u32) * &lift(v.func.numerator())?
    };
    witnesses.push(if ok {
        Witness::ok("numerator", detail)
    } else {
        Witness::mismatch("numerator", detail)
    });
    Ok(CheckReport::new("mixed-homogeneity", witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::forms::canon_dual_volume;
    use crate::polytope::hull_from_vertices;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn square_polar_area() {
        let sq = vec![v(&[-1, -1]), v(&[1, -1]), v(&[-1, 1]), v(&[1, 1])];
        let m = dual_mixed_volume(&[sq]).unwrap();
        assert_eq!(m.format(), "4/x1^2");
        assert!(mixed_homogeneity_check(&m).unwrap().passed);
    }

    #[test]
    fn translated_summands_specialize_to_dual_volume() {
        let pts = vec![v(&[0, 0]), v(&[3, 0]), v(&[1, 3]), v(&[0, 2])];
        let p = hull_from_vertices(2, &pts).unwrap();
        let m = dual_mixed_volume(&[vec![v(&[-1, 0])], vec![v(&[0, -1])], pts]).unwrap();
        // x3 = 1
        let images = vec![Poly::var(2, 0), Poly::var(2, 1), Poly::one(2)];
        let spec = m.func.substitute(&images).unwrap();
        assert!(spec.equals(&canon_dual_volume(&p).unwrap().signed_func()));
    }

    #[test]
    fn origin_outside() {
        let tri = vec![v(&[1, 1]), v(&[2, 1]), v(&[1, 2])];
        assert_eq!(dual_mixed_volume(&[tri]), Err(Error::OriginNotInterior));
    }
}
