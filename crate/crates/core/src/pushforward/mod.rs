//! Numeric check of the toric pushforward formula in dimensions one and two.
//!
//! A monomial map `(1:z) -> sum_i z^(v_i) W_i` pushes the dlog form of the
//! positive orthant forward to the canonical form of `hull(W)`. At sample
//! points the pushforward is a sum over all complex preimages.

mod solve;
pub mod upoly;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::rat::to_f64;
use crate::exact::{format_rat, Poly, Rat, RatMatrix};
use crate::forms::{canon_triangulation, CanonicalForm, CheckReport, Witness};
use crate::polytope::{hull_from_vertices, Polytope};

pub use solve::RESIDUAL_TOL as ROOT_RESIDUAL_TOL;
use upoly::from_poly;

pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_ATTEMPTS: usize = 8;

/// `z -> (N_0(z) : .. : N_d(z))` with `N_k = sum_i W_i[k] z^(v_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    dim: usize,
    lattice: Vec<Vec<i64>>,
    targets: Vec<Vec<Rat>>,
    /// Component polynomials, multiplied through by `z^shift` so that all
    /// exponents are nonnegative.
    components: Vec<Poly>,
    shift: Vec<i64>,
}

impl MonomialMap {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lattice(&self) -> &[Vec<i64>] {
        &self.lattice
    }

    pub fn targets(&self) -> &[Vec<Rat>] {
        &self.targets
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    /// Affine coordinates `x_k = N_k / N_0` at a complex point.
    pub fn eval_affine(&self, z: &[Complex64]) -> Vec<Complex64> {
        let n0 = self.components[0].eval_complex(z);
        self.components[1..]
            .iter()
            .map(|p| p.eval_complex(z) / n0)
            .collect()
    }

    /// `hull` of the affine parts `W_i[1..] / W_i[0]`.
    pub fn target_polytope(&self) -> Result<Polytope> {
        let pts: Vec<Vec<Rat>> = self
            .targets
            .iter()
            .map(|w| w[1..].iter().map(|x| x / &w[0]).collect())
            .collect();
        hull_from_vertices(self.dim, &pts)
    }

    /// Normalized volume of `hull(v_i)`: the generic number of preimages.
    pub fn expected_degree(&self) -> Result<usize> {
        let pts: Vec<Vec<Rat>> = self
            .lattice
            .iter()
            .map(|v| v[1..].iter().map(|&e| Rat::from_integer(e.into())).collect())
            .collect();
        let vol = hull_from_vertices(self.dim, &pts)?.normalized_volume();
        vol.to_integer()
            .try_into()
            .map_err(|_| Error::Input("map degree out of range".into()))
    }

    /// The equations `N_k(z) - x_k N_0(z) = 0`, `k = 1..d`.
    fn system(&self, x: &[Rat]) -> Vec<Poly> {
        self.components[1..]
            .iter()
            .zip(x)
            .map(|(nk, xk)| nk - &self.components[0].scale(xk))
            .collect()
    }
}

fn check_inputs(w: &[Vec<Rat>], v: &[Vec<i64>]) -> Result<usize> {
    if w.len() != v.len() {
        return Err(Error::DimensionMismatch {
            what: "lattice vectors",
            expected: w.len(),
            found: v.len(),
        });
    }
    let n = w.first().map(Vec::len).ok_or_else(|| Error::Input("empty W".into()))?;
    if n == 0 {
        return Err(Error::Input("W vectors are empty".into()));
    }
    for (i, (wi, vi)) in w.iter().zip(v).enumerate() {
        if wi.len() != n || vi.len() != n {
            return Err(Error::DimensionMismatch {
                what: "W/V vector length",
                expected: n,
                found: if wi.len() != n { wi.len() } else { vi.len() },
            });
        }
        if vi[0] != 1 {
            return Err(Error::BadLatticeVector { index: i });
        }
    }
    Ok(n - 1)
}

/// Compares the signs of all maximal minors of `W` and `V`.
pub fn oriented_matroid_check(w: &[Vec<Rat>], v: &[Vec<i64>]) -> Result<CheckReport> {
    let d = check_inputs(w, v)?;
    let vr: Vec<Vec<Rat>> = v
        .iter()
        .map(|r| r.iter().map(|&e| Rat::from_integer(e.into())).collect())
        .collect();
    let sign = |m: &[Vec<Rat>], s: &[usize]| -> Result<i32> {
        let cols: Vec<&Vec<Rat>> = s.iter().map(|&i| &m[i]).collect();
        let det = RatMatrix::from_columns(&cols)?.det()?;
        Ok(if det.is_zero() { 0 } else if det.is_positive() { 1 } else { -1 })
    };
    let mut witnesses = Vec::new();
    let mut checked = 0usize;
    for s in (0..w.len()).combinations(d + 1) {
        let (a, b) = (sign(w, &s)?, sign(&vr, &s)?);
        checked += 1;
        if a != b {
            witnesses.push(Witness::mismatch(
                format!("subset {s:?}"),
                json!({"subset": s, "sign_w": a, "sign_v": b}),
            ));
        }
    }
    if witnesses.is_empty() {
        witnesses.push(Witness::ok("all subsets", json!({"subsets": checked})));
    }
    Ok(CheckReport::new("oriented-matroid", witnesses))
}

/// Assembles the component polynomials of the map, after checking that `W`
/// and `V` have the same oriented matroid.
pub fn build_map(w: &[Vec<Rat>], v: &[Vec<i64>]) -> Result<MonomialMap> {
    let d = check_inputs(w, v)?;
    let rep = oriented_matroid_check(w, v)?;
    if let Some(bad) = rep.mismatches().next() {
        let subset = serde_json::from_value(bad.detail["subset"].clone()).unwrap_or_default();
        return Err(Error::OrientedMatroidMismatch { subset });
    }
    let shift: Vec<i64> = (1..=d)
        .map(|k| -v.iter().map(|r| r[k]).min().unwrap_or(0).min(0))
        .collect();
    let components = (0..=d)
        .map(|k| {
            Poly::from_terms(
                d,
                w.iter().zip(v).map(|(wi, vi)| {
                    let e: Vec<u32> = (1..=d).map(|j| (vi[j] + shift[j - 1]) as u32).collect();
                    (wi[k].clone(), e)
                }),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonomialMap {
        dim: d,
        lattice: v.to_vec(),
        targets: w.to_vec(),
        components,
        shift,
    })
}

/// Complex preimages of an affine point `x`, every coordinate nonzero.
pub fn preimages(map: &MonomialMap, x: &[Rat]) -> Result<Vec<Vec<Complex64>>> {
    if map.dim > 2 {
        return Err(Error::UnsupportedDimension {
            what: "pushforward",
            dim: map.dim,
            max: 2,
        });
    }
    if x.len() != map.dim {
        return Err(Error::DimensionMismatch {
            what: "sample point",
            expected: map.dim,
            found: x.len(),
        });
    }
    let zs = solve::solve_system(&map.system(x))?;
    // discard base points of the map, where N_0 vanishes with everything else
    Ok(zs
        .into_iter()
        .filter(|z| {
            let n0 = map.components[0].eval_complex(z).norm();
            n0 > 1e-12 * solve::magnitude(&map.components[0], z)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PushforwardReport {
    #[serde(with = "crate::exact::rat::serde_rat::vec")]
    pub sample: Vec<Rat>,
    /// `[re, im]` per coordinate.
    pub preimages: Vec<Vec<[f64; 2]>>,
    pub degree_found: usize,
    pub lhs: [f64; 2],
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    /// `|Im lhs| / |rhs|`.
    pub imag_rel: f64,
    /// For a single rational preimage: whether the exact sum equals the
    /// exact canonical form.
    pub exact: Option<bool>,
    pub passed: bool,
}

/// `sum_j det(dz/dx) / prod z_i` over the preimages, i.e. the pushforward of
/// `prod dz_i / z_i` at `x`.
fn pushforward_value(map: &MonomialMap, zs: &[Vec<Complex64>]) -> Result<Complex64> {
    let d = map.dim;
    let n = &map.components;
    let dn: Vec<Vec<Poly>> = n.iter().map(|p| (0..d).map(|i| p.derivative(i)).collect()).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for z in zs {
        let n0 = n[0].eval_complex(z);
        let j = DMatrix::from_fn(d, d, |k, i| {
            let nk = n[k + 1].eval_complex(z);
            (dn[k + 1][i].eval_complex(z) * n0 - nk * dn[0][i].eval_complex(z)) / (n0 * n0)
        });
        let det = j.determinant();
        let scale = j.iter().map(|c| c.norm()).fold(0.0, f64::max).powi(d as i32);
        if det.norm() <= 1e-13 * scale || !det.is_finite() {
            return Err(Error::Resample("singular Jacobian at a preimage".into()));
        }
        let prod: Complex64 = z.iter().product();
        total += Complex64::new(1.0, 0.0) / (det * prod);
    }
    Ok(total)
}

/// Exact pushforward when the one-dimensional equation is linear.
fn exact_linear(map: &MonomialMap, x: &Rat) -> Option<Rat> {
    let (u, _) = from_poly(&map.system(std::slice::from_ref(x))[0]).strip_zero_roots();
    if u.degree() != Some(1) {
        return None;
    }
    let z = -&u.coeffs()[0] / &u.coeffs()[1];
    let (n0, n1) = (from_poly(&map.components[0]), from_poly(&map.components[1]));
    let n0z = n0.eval(&z);
    if z.is_zero() || n0z.is_zero() {
        return None;
    }
    let dxdz = (n1.derivative().eval(&z) * &n0z - n1.eval(&z) * n0.derivative().eval(&z)) / (&n0z * &n0z);
    if dxdz.is_zero() {
        return None;
    }
    Some(Rat::one() / (dxdz * z))
}

fn random_point(p: &Polytope, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let w: Vec<i64> = p.vertices().iter().map(|_| rng.gen_range(1..=64)).collect();
    let total = Rat::from_integer(w.iter().sum::<i64>().into());
    (0..p.dim())
        .map(|k| {
            p.vertices()
                .iter()
                .zip(&w)
                .map(|(v, &wi)| &v[k] * Rat::from_integer(wi.into()))
                .sum::<Rat>()
                / &total
        })
        .collect()
}

/// Compares the pushforward with the exact canonical form of `target` at
/// `nsamples` interior points. Samples at branch points are redrawn.
pub fn pushforward_check(
    map: &MonomialMap,
    target: &Polytope,
    nsamples: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<PushforwardReport>> {
    if map.dim > 2 {
        return Err(Error::UnsupportedDimension {
            what: "pushforward",
            dim: map.dim,
            max: 2,
        });
    }
    if target.dim() != map.dim {
        return Err(Error::DimensionMismatch {
            what: "target dimension",
            expected: map.dim,
            found: target.dim(),
        });
    }
    let form = canon_triangulation(target)?;
    let expected = map.expected_degree()?;
    (0..nsamples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let mut last = Error::Resample("no attempts".into());
            for _ in 0..MAX_ATTEMPTS {
                let x = random_point(target, &mut rng);
                match sample_report(map, &form, &x, expected, tol) {
                    Err(e @ Error::Resample(_)) => last = e,
                    other => return other,
                }
            }
            Err(last)
        })
        .collect()
}

fn sample_report(
    map: &MonomialMap,
    form: &CanonicalForm,
    x: &[Rat],
    expected: usize,
    tol: f64,
) -> Result<PushforwardReport> {
    let zs = preimages(map, x)?;
    let lhs = pushforward_value(map, &zs)?;
    let rhs_exact = form
        .value(x)?
        .ok_or_else(|| Error::Resample("sample on a pole".into()))?;
    let rhs = to_f64(&rhs_exact);
    let abs_err = (lhs.norm() - rhs.abs()).abs();
    let rel_err = abs_err / rhs.abs();
    let imag_rel = lhs.im.abs() / rhs.abs();
    let exact = (map.dim == 1)
        .then(|| exact_linear(map, &x[0]))
        .flatten()
        .map(|v| v.abs() == rhs_exact.abs());
    let passed = zs.len() == expected && rel_err < tol && imag_rel < tol && exact != Some(false);
    Ok(PushforwardReport {
        sample: x.to_vec(),
        preimages: zs
            .iter()
            .map(|z| z.iter().map(|c| [c.re, c.im]).collect())
            .collect(),
        degree_found: zs.len(),
        lhs: [lhs.re, lhs.im],
        rhs,
        abs_err,
        rel_err,
        imag_rel,
        exact,
        passed,
    })
}

/// Folds per-sample reports into one check, adding the global sign and the
/// degree invariant.
pub fn summarize(reports: &[PushforwardReport], expected_degree: usize) -> CheckReport {
    let mut witnesses: Vec<Witness> = reports
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let detail = json!({
                "sample": r.sample.iter().map(format_rat).collect::<Vec<_>>(),
                "degree_found": r.degree_found,
                "rel_err": r.rel_err,
                "imag_rel": r.imag_rel,
            });
            if r.passed {
                Witness::ok(format!("sample {k}"), detail)
            } else {
                Witness::mismatch(format!("sample {k}"), detail)
            }
        })
        .collect();
    let signs: Vec<bool> = reports
        .iter()
        .map(|r| (r.lhs[0] >= 0.0) == (r.rhs >= 0.0))
        .collect();
    let consistent = signs.windows(2).all(|w| w[0] == w[1]);
    let detail = json!({"relative_sign": if signs.first().copied().unwrap_or(true) { 1 } else { -1 }, "expected_degree": expected_degree});
    witnesses.push(if consistent {
        Witness::ok("global sign", detail)
    } else {
        Witness::mismatch("global sign", detail)
    });
    CheckReport::new("pushforward", witnesses)
}

/// Checks that the map factors as the monomial map `z -> (z^(v_i))_i`
/// followed by the linear map with columns `W_i`, at random points.
pub fn factorization_check(map: &MonomialMap, points: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = map.dim;
    let witnesses = (0..points)
        .map(|k| {
            let z: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(rng.gen_range(0.2..2.0), rng.gen_range(-1.0..1.0)))
                .collect();
            // alpha, with the same shift as the components
            let alpha: Vec<Complex64> = map
                .lattice
                .iter()
                .map(|v| {
                    (0..d).fold(Complex64::new(1.0, 0.0), |acc, j| {
                        acc * z[j].powi((v[j + 1] + map.shift[j]) as i32)
                    })
                })
                .collect();
            let beta: Vec<Complex64> = (0..=d)
                .map(|i| {
                    map.targets
                        .iter()
                        .zip(&alpha)
                        .map(|(w, a)| a * to_f64(&w[i]))
                        .sum()
                })
                .collect();
            let direct: Vec<Complex64> = map.components.iter().map(|p| p.eval_complex(&z)).collect();
            let err = beta
                .iter()
                .zip(&direct)
                .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
                .fold(0.0, f64::max);
            let detail = json!({"max_rel_err": err});
            if err < 1e-12 {
                Witness::ok(format!("point {k}"), detail)
            } else {
                Witness::mismatch(format!("point {k}"), detail)
            }
        })
        .collect();
    CheckReport::new("factorization", witnesses)
}
