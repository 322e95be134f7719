use nalgebra::DMatrix;
use num_complex::Complex64;

use super::upoly::{from_poly, in_variable, resultant, UPoly};
use crate::error::{Error, Result};
use crate::exact::{Poly, Rat};

pub const RESIDUAL_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-7;

/// All complex roots of `sum c_k t^k`, by companion-matrix eigenvalues,
/// polished by Newton steps.
pub(crate) fn roots(c: &[Complex64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let eig = m.schur().eigenvalues().expect("complex Schur form is triangular");
    eig.iter().map(|&z| newton_univariate(&c, z)).collect()
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn newton_univariate(c: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = horner(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        if !next.is_finite() {
            break;
        }
        // keep the step only if it does not increase the residual
        if horner(c, next).0.norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

fn has_cluster(zs: &[Complex64]) -> bool {
    zs.iter().enumerate().any(|(i, a)| {
        zs[i + 1..]
            .iter()
            .any(|b| (a - b).norm() <= CLUSTER_TOL * a.norm().max(b.norm()).max(1.0))
    })
}

fn complex(c: &[Rat]) -> Vec<Complex64> {
    c.iter()
        .map(|r| Complex64::new(crate::exact::rat::to_f64(r), 0.0))
        .collect()
}

/// Sum of absolute term values, the scale for relative residuals.
pub(crate) fn magnitude(p: &Poly, z: &[Complex64]) -> f64 {
    p.terms()
        .map(|(m, c)| {
            m.exps()
                .iter()
                .zip(z)
                .fold(crate::exact::rat::to_f64(c).abs(), |acc, (&e, zi)| acc * zi.norm().powi(e as i32))
        })
        .sum()
}

fn relative_residual(p: &Poly, z: &[Complex64]) -> f64 {
    let m = magnitude(p, z);
    if m == 0.0 {
        return 0.0;
    }
    p.eval_complex(z).norm() / m
}

/// Complex solutions of `system` (`d` equations in `d <= 2` unknowns) with
/// every coordinate nonzero.
pub(crate) fn solve_system(system: &[Poly]) -> Result<Vec<Vec<Complex64>>> {
    match system.len() {
        1 => solve_univariate(&system[0]),
        2 => match solve_bivariate(system, 1) {
            Err(Error::Resample(_)) => solve_bivariate(system, 0),
            other => other,
        },
        d => Err(Error::UnsupportedDimension {
            what: "preimage solving",
            dim: d,
            max: 2,
        }),
    }
}

fn solve_univariate(f: &Poly) -> Result<Vec<Vec<Complex64>>> {
    let (u, _) = from_poly(f).strip_zero_roots();
    let zs = roots(&complex(u.coeffs()));
    if has_cluster(&zs) {
        return Err(Error::Resample("clustered roots".into()));
    }
    Ok(zs.into_iter().map(|z| vec![z]).collect())
}

/// Eliminates variable `elim` by a resultant, finds roots in the other
/// variable, and back-substitutes.
fn solve_bivariate(system: &[Poly], elim: usize) -> Result<Vec<Vec<Complex64>>> {
    let keep = 1 - elim;
    let f = in_variable(&system[0], elim);
    let g = in_variable(&system[1], elim);
    let r = resultant(&f, &g);
    if r.is_zero() {
        return Err(Error::Resample("resultant vanishes identically".into()));
    }
    let (r, _) = r.strip_zero_roots();
    let ts = roots(&complex(r.coeffs()));
    if has_cluster(&ts) {
        return Err(Error::Resample("clustered resultant roots".into()));
    }
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for t in ts {
        let at = |coeffs: &[UPoly]| -> Vec<Complex64> {
            coeffs
                .iter()
                .map(|c| eval_upoly(c, t))
                .collect()
        };
        let (fa, ga) = (at(&f), at(&g));
        // back-substitute in whichever equation keeps more degree
        let cand = if degree_of(&fa) >= degree_of(&ga) { &fa } else { &ga };
        for s in roots(cand) {
            let mut z = vec![Complex64::new(0.0, 0.0); 2];
            z[keep] = t;
            z[elim] = s;
            let z = newton_system(system, z);
            if z.iter().any(|c| c.norm() <= 1e-12 || !c.is_finite()) {
                continue;
            }
            if system.iter().any(|p| relative_residual(p, &z) > RESIDUAL_TOL) {
                continue;
            }
            let dup = out.iter().any(|w| {
                w.iter()
                    .zip(&z)
                    .all(|(a, b)| (a - b).norm() <= CLUSTER_TOL * a.norm().max(1.0))
            });
            if !dup {
                out.push(z);
            }
        }
    }
    Ok(out)
}

fn degree_of(c: &[Complex64]) -> usize {
    let scale = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    c.iter()
        .rposition(|v| v.norm() > 1e-12 * scale)
        .unwrap_or(0)
}

fn eval_upoly(u: &UPoly, t: Complex64) -> Complex64 {
    u.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
        acc * t + Complex64::new(crate::exact::rat::to_f64(c), 0.0)
    })
}

/// Newton iteration on a square polynomial system.
pub(crate) fn newton_system(system: &[Poly], mut z: Vec<Complex64>) -> Vec<Complex64> {
    let n = system.len();
    let jac: Vec<Vec<Poly>> = system
        .iter()
        .map(|p| (0..n).map(|i| p.derivative(i)).collect())
        .collect();
    for _ in 0..20 {
        let f: Vec<Complex64> = system.iter().map(|p| p.eval_complex(&z)).collect();
        let j = DMatrix::from_fn(n, n, |r, c| jac[r][c].eval_complex(&z));
        let Some(step) = j.lu().solve(&nalgebra::DVector::from_vec(f)) else {
            break;
        };
        let next: Vec<Complex64> = z.iter().zip(step.iter()).map(|(a, s)| a - s).collect();
        if next.iter().any(|c| !c.is_finite()) {
            break;
        }
        let small = step.norm() <= 1e-15 * z.iter().map(|c| c.norm()).fold(1.0, f64::max);
        z = next;
        if small {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadratic_roots() {
        // t^2 - 3t + 2
        let mut r = roots(&[c(2.0), c(-3.0), c(1.0)]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c(1.0)).norm() < 1e-14);
        assert!((r[1] - c(2.0)).norm() < 1e-14);
        // t^2 + 1
        let r = roots(&[c(1.0), c(0.0), c(1.0)]);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14));
    }

    #[test]
    fn clusters_detected() {
        assert!(has_cluster(&[c(1.0), c(1.0 + 1e-9)]));
        assert!(!has_cluster(&[c(1.0), c(2.0)]));
    }
}
