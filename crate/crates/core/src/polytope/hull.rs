//! Exact facet and vertex enumeration for desk-scale inputs.
//!
//! Facets are found by trying every hyperplane spanned by `d` input points and
//! keeping the supporting ones; vertices of a halfspace system by solving every
//! `d`-subset of constraints. Both are exponential in `d` and meant for the
//! handful-of-vertices polytopes this crate works with.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{affine_rank, LinForm, Rat, RatMatrix};

/// Result of a hull computation on an indexed point list.
#[derive(Clone, Debug)]
pub(crate) struct HullData {
    /// Indices of the extreme points, in input order.
    pub vertex_ids: Vec<usize>,
    /// Inward, primitive facet forms.
    pub facets: Vec<LinForm>,
    /// Per facet, the input indices of the extreme points on it.
    pub incidence: Vec<Vec<usize>>,
}

/// Hyperplane through `dim` points, as a homogeneous vector `(c0, a)` with
/// `c0 + a.p = 0`. `None` when the points are affinely dependent.
fn hyperplane_through(points: &[&[Rat]], dim: usize) -> Option<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| std::iter::once(Rat::from_integer(1.into())).chain(p.iter().cloned()).collect())
        .collect();
    let m = RatMatrix::from_rows(&rows).ok()?;
    let ns = m.nullspace();
    if ns.len() != 1 || ns[0][1..=dim].iter().all(Zero::is_zero) {
        return None;
    }
    ns.into_iter().next()
}

/// Facets of a full-dimensional point set in `R^dim` (`dim >= 1`).
/// Points must be distinct.
pub(crate) fn hull_data(dim: usize, points: &[Vec<Rat>]) -> Result<HullData> {
    let rank = affine_rank(points);
    if points.len() < dim + 1 {
        return Err(Error::TooFewPoints {
            dim,
            needed: dim + 1,
            found: points.len(),
        });
    }
    if rank < dim {
        return Err(Error::DimensionDeficient { dim, rank });
    }

    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let mut found: Vec<(LinForm, Vec<usize>)> = Vec::new();
    for subset in (0..points.len()).combinations(dim) {
        // skip subsets already lying on a known facet
        if found
            .iter()
            .any(|(_, on)| subset.iter().all(|i| on.contains(i)))
        {
            continue;
        }
        let pts: Vec<&[Rat]> = subset.iter().map(|&i| points[i].as_slice()).collect();
        let Some(h) = hyperplane_through(&pts, dim) else {
            continue;
        };
        let Ok(form) = LinForm::from_homogeneous(&h) else {
            continue;
        };
        let values: Vec<Rat> = points
            .iter()
            .map(|p| form.eval(p).expect("dimension checked"))
            .collect();
        let form = if values.iter().all(|v| !v.is_negative()) {
            form
        } else if values.iter().all(|v| !v.is_positive()) {
            form.neg()
        } else {
            continue;
        }
        .primitive();
        if !seen.insert(form.homogeneous()) {
            continue;
        }
        let on: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect();
        found.push((form, on));
    }

    // a point is a vertex iff the normals of its facets span R^dim
    let vertex_ids: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let normals: Vec<Vec<Rat>> = found
                .iter()
                .filter(|(_, on)| on.contains(&i))
                .map(|(f, _)| f.coeffs().to_vec())
                .collect();
            !normals.is_empty()
                && RatMatrix::from_rows(&normals).is_ok_and(|m| m.rank() == dim)
        })
        .collect();

    found.sort_by(|a, b| a.0.facet_order(&b.0));
    let (facets, incidence) = found
        .into_iter()
        .map(|(f, on)| {
            let on: Vec<usize> = on.into_iter().filter(|i| vertex_ids.contains(i)).collect();
            (f, on)
        })
        .unzip();
    Ok(HullData {
        vertex_ids,
        facets,
        incidence,
    })
}

/// Hull of an arbitrary (possibly lower-dimensional) subset of `points`,
/// computed in a coordinate projection that is injective on its affine hull.
pub(crate) fn face_hull(points: &[Vec<Rat>], face: &[usize]) -> Result<(usize, HullData)> {
    let pts: Vec<&Vec<Rat>> = face.iter().map(|&i| &points[i]).collect();
    let k = affine_rank(&pts);
    if k == 0 {
        return Ok((
            0,
            HullData {
                vertex_ids: face.iter().take(1).copied().collect(),
                facets: Vec::new(),
                incidence: Vec::new(),
            },
        ));
    }
    let coords = projection_coordinates(&pts);
    let projected: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let hd = hull_data(k, &projected)?;
    let map = |i: usize| face[i];
    Ok((
        k,
        HullData {
            vertex_ids: hd.vertex_ids.into_iter().map(map).collect(),
            facets: hd.facets,
            incidence: hd
                .incidence
                .into_iter()
                .map(|on| on.into_iter().map(map).collect())
                .collect(),
        },
    ))
}

/// Coordinates whose projection is injective on the affine hull of `pts`.
pub(crate) fn projection_coordinates<P: AsRef<[Rat]>>(pts: &[P]) -> Vec<usize> {
    let first = pts[0].as_ref();
    let diffs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.as_ref().iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Vec::new();
    }
    RatMatrix::from_rows(&diffs)
        .map(|m| m.rref().1)
        .unwrap_or_default()
}

/// Vertices of `{x : f(x) >= 0 for all f in forms}` in `R^dim`.
///
/// Fails with [`Error::Unbounded`] for unbounded regions and with
/// [`Error::EmptyInterior`] when the region is empty. Lower-dimensional
/// nonempty regions return their vertices; callers decide.
pub fn vertices_from_halfspaces(dim: usize, forms: &[LinForm]) -> Result<Vec<Vec<Rat>>> {
    if let Some(f) = forms.iter().find(|f| f.nvars() != dim) {
        return Err(Error::DimensionMismatch {
            what: "halfspace form",
            expected: dim,
            found: f.nvars(),
        });
    }
    // constant forms are either vacuous or make the region empty
    if forms
        .iter()
        .any(|f| !f.has_linear_part() && f.c0().is_negative())
    {
        return Err(Error::EmptyInterior);
    }
    let forms: Vec<&LinForm> = forms.iter().filter(|f| f.has_linear_part()).collect();
    if dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    let normals: Vec<Vec<Rat>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    let rank = if normals.is_empty() {
        0
    } else {
        RatMatrix::from_rows(&normals)?.rank()
    };
    if rank < dim {
        // a line lies in the region whenever it is nonempty
        return if restricted_feasible(&forms)? {
            Err(Error::Unbounded)
        } else {
            Err(Error::EmptyInterior)
        };
    }
    let vertices = enumerate_vertices(dim, &forms)?;
    if vertices.is_empty() {
        return Err(Error::EmptyInterior);
    }
    if has_recession_direction(dim, &normals)? {
        return Err(Error::Unbounded);
    }
    Ok(vertices)
}

fn enumerate_vertices(dim: usize, forms: &[&LinForm]) -> Result<Vec<Vec<Rat>>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for subset in (0..forms.len()).combinations(dim) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| forms[i].coeffs().to_vec()).collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| -forms[i].c0().clone()).collect();
        let Some(x) = RatMatrix::from_rows(&rows)?.solve(&rhs)? else {
            continue;
        };
        let feasible = forms
            .iter()
            .all(|f| !f.eval(&x).expect("dimension checked").is_negative());
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Whether the pointed cone `{y : a.y >= 0}` contains a nonzero vector.
fn has_recession_direction(dim: usize, normals: &[Vec<Rat>]) -> Result<bool> {
    for subset in (0..normals.len()).combinations(dim - 1) {
        let dirs = if subset.is_empty() {
            // only for dim == 1: every direction is free
            vec![vec![Rat::from_integer(1.into())]]
        } else {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| normals[i].clone()).collect();
            RatMatrix::from_rows(&rows)?.nullspace()
        };
        if dirs.len() != 1 {
            continue;
        }
        let y = &dirs[0];
        let signs: Vec<Rat> = normals
            .iter()
            .map(|a| crate::exact::rat::dot(a, y))
            .collect();
        if signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive()) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Feasibility of a rank-deficient system, decided in the span of its normals.
fn restricted_feasible(forms: &[&LinForm]) -> Result<bool> {
    if forms.is_empty() {
        return Ok(true);
    }
    let normals: Vec<Vec<Rat>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    let (r, pivots) = RatMatrix::from_rows(&normals)?.rref();
    let basis: Vec<Vec<Rat>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    // x = sum_j y_j basis_j; forms become c0 + (a . basis_j) y_j
    let reduced: Vec<LinForm> = forms
        .iter()
        .map(|f| {
            let coeffs = basis
                .iter()
                .map(|b| crate::exact::rat::dot(f.coeffs(), b))
                .collect();
            LinForm::new(f.c0().clone(), coeffs)
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&LinForm> = reduced.iter().collect();
    Ok(!enumerate_vertices(basis.len(), &refs)?.is_empty())
}
