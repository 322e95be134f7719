//! Dense univariate polynomials over `Q`, and resultants of bivariate
//! polynomials viewed in `Q[z1][z2]`.

use num_traits::{One, Zero};

use crate::exact::{rat::to_f64, Poly, Rat};

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.0.last()
    }

    /// Divides out the largest power of the variable; returns it.
    pub fn strip_zero_roots(&self) -> (Self, usize) {
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (Self(self.0[k..].to_vec()), k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = Rat::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        let dl = div.leading().expect("division by zero polynomial");
        let dd = div.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / dl;
            if !c.is_zero() {
                for (j, d) in div.0.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            q[k] = c;
        }
        (Self::new(q), Self::new(rem))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
                .collect(),
        )
    }
}

/// Views a polynomial in two variables as a polynomial in `var` whose
/// coefficients are polynomials in the other variable.
pub fn in_variable(p: &Poly, var: usize) -> Vec<UPoly> {
    assert_eq!(p.nvars(), 2);
    let other = 1 - var;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (m, c) in p.terms() {
        let (e, f) = (m.exps()[var] as usize, m.exps()[other] as usize);
        if rows.len() <= e {
            rows.resize(e + 1, Vec::new());
        }
        if rows[e].len() <= f {
            rows[e].resize(f + 1, Rat::zero());
        }
        rows[e][f] += c;
    }
    rows.into_iter().map(UPoly::new).collect()
}

/// Univariate polynomial in variable 0 of a one-variable `Poly`.
pub fn from_poly(p: &Poly) -> UPoly {
    assert_eq!(p.nvars(), 1);
    let mut c: Vec<Rat> = Vec::new();
    for (m, v) in p.terms() {
        let e = m.exps()[0] as usize;
        if c.len() <= e {
            c.resize(e + 1, Rat::zero());
        }
        c[e] += v;
    }
    UPoly::new(c)
}

/// Sylvester resultant of `f` and `g`, given as coefficient lists (ascending)
/// over `Q[t]`. Computed by fraction-free elimination.
pub fn resultant(f: &[UPoly], g: &[UPoly]) -> UPoly {
    let trim = |v: &[UPoly]| {
        let mut v = v.to_vec();
        while v.last().is_some_and(UPoly::is_zero) {
            v.pop();
        }
        v
    };
    let (f, g) = (trim(f), trim(g));
    if f.is_empty() || g.is_empty() {
        return UPoly::zero();
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return UPoly::constant(Rat::one());
    }
    let mut a = vec![vec![UPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            a[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            a[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(a)
}

fn bareiss_det(mut a: Vec<Vec<UPoly>>) -> UPoly {
    let n = a.len();
    let mut prev = UPoly::constant(Rat::one());
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                let (q, r) = num.divrem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                a[i][j] = q;
            }
            a[i][k] = UPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RatMatrix};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn division() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let (q, r) = up(&[-1, 0, 1]).divrem(&up(&[-1, 1]));
        assert_eq!(q, up(&[1, 1]));
        assert!(r.is_zero());
        let (_, r) = up(&[1, 0, 1]).divrem(&up(&[-1, 1]));
        assert_eq!(r, up(&[2]));
    }

    /// Oracle: evaluate the Sylvester matrix at integer points, take exact
    /// determinants, and compare with the symbolic resultant.
    #[test]
    fn resultant_matches_pointwise_determinants() {
        // f = t*y^2 + (1-t) y + 3,  g = y - t^2
        let f = vec![up(&[3]), up(&[1, -1]), up(&[0, 1])];
        let g = vec![up(&[0, 0, -1]), up(&[1])];
        let r = resultant(&f, &g);
        for t in -3..=3 {
            let tv = rat(t);
            let fv: Vec<Rat> = f.iter().map(|c| c.eval(&tv)).collect();
            let gv: Vec<Rat> = g.iter().map(|c| c.eval(&tv)).collect();
            let rows = vec![
                vec![fv[2].clone(), fv[1].clone(), fv[0].clone()],
                vec![gv[1].clone(), gv[0].clone(), rat(0)],
                vec![rat(0), gv[1].clone(), gv[0].clone()],
            ];
            let det = RatMatrix::from_rows(&rows).unwrap().det().unwrap();
            assert_eq!(r.eval(&tv), det, "t = {t}");
        }
        // also f(y = t^2) directly
        for t in -2..=2 {
            let tv = rat(t);
            let y = &tv * &tv;
            let direct = f.iter().rev().fold(rat(0), |acc, c| acc * &y + c.eval(&tv));
            assert_eq!(r.eval(&tv), direct);
        }
    }

    #[test]
    fn common_root_gives_zero_resultant() {
        let f = vec![up(&[-1]), up(&[0]), up(&[1])]; // y^2 - 1
        let g = vec![up(&[-1]), up(&[1])]; // y - 1
        assert!(resultant(&f, &g).is_zero());
    }
}
