use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rat::{dot, format_rat, primitive_vector, serde_rat, Rat};
use crate::error::{Error, Result};

/// Affine-linear form `c0 + sum_i coeffs[i] * x_i`.
///
/// Used both as a halfspace `form >= 0` and as a pole hypersurface
/// `form = 0`. Never identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinForm {
    #[serde(with = "serde_rat")]
    c0: Rat,
    #[serde(with = "serde_rat::vec")]
    coeffs: Vec<Rat>,
}

impl LinForm {
    pub fn new(c0: Rat, coeffs: Vec<Rat>) -> Result<Self> {
        if c0.is_zero() && coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(Self { c0, coeffs })
    }

    /// From a homogeneous coefficient vector `(c0, c1, ..., cd)`.
    pub fn from_homogeneous(v: &[Rat]) -> Result<Self> {
        match v.split_first() {
            Some((c0, rest)) => Self::new(c0.clone(), rest.to_vec()),
            None => Err(Error::ZeroForm),
        }
    }

    /// The coordinate function `x_i` on `nvars` variables.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); nvars];
        coeffs[i] = Rat::one();
        Self {
            c0: Rat::zero(),
            coeffs,
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn c0(&self) -> &Rat {
        &self.c0
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub(crate) fn set_coeff(&mut self, i: usize, v: Rat) {
        self.coeffs[i] = v;
    }

    pub fn homogeneous(&self) -> Vec<Rat> {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(self.c0.clone());
        v.extend_from_slice(&self.coeffs);
        v
    }

    pub fn has_linear_part(&self) -> bool {
        self.coeffs.iter().any(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                what: "linear form argument",
                expected: self.coeffs.len(),
                found: x.len(),
            });
        }
        Ok(&self.c0 + dot(&self.coeffs, x))
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.coeffs.len();
        let mut terms = vec![(self.c0.clone(), vec![0; n])];
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            terms.push((c.clone(), e));
        }
        Poly::from_terms(n, terms).expect("exponent lengths match")
    }

    /// Homogenized with `X0` for the constant term, as a degree-one polynomial
    /// in `nvars + 1` variables.
    pub fn homogeneous_poly(&self) -> Poly {
        let n = self.coeffs.len() + 1;
        let terms = self.homogeneous().into_iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (c, e)
        });
        Poly::from_terms(n, terms).expect("exponent lengths match")
    }

    pub fn scale(&self, f: &Rat) -> Self {
        Self {
            c0: &self.c0 * f,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Coprime integer coefficients, sign preserved.
    pub fn primitive(&self) -> Self {
        let v = primitive_vector(&self.homogeneous());
        Self {
            c0: v[0].clone(),
            coeffs: v[1..].to_vec(),
        }
    }

    /// Primitive, with the first nonzero entry of `(c0, coeffs..)` positive.
    /// Two forms define the same hyperplane iff their canonical forms agree.
    pub fn canonical(&self) -> Self {
        let p = self.primitive();
        let first = std::iter::once(&p.c0)
            .chain(&p.coeffs)
            .find(|c| !c.is_zero())
            .expect("nonzero form");
        if first.is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Signed ratio `self / other` when both define the same hyperplane.
    pub fn ratio_to(&self, other: &Self) -> Option<Rat> {
        if self.nvars() != other.nvars() {
            return None;
        }
        let a = self.homogeneous();
        let b = other.homogeneous();
        let i = b.iter().position(|c| !c.is_zero())?;
        let r = &a[i] / &b[i];
        a.iter().zip(&b).all(|(x, y)| *x == y * &r).then_some(r)
    }

    /// `(c0, coeffs)` ordering used to list facets: constant term ascending,
    /// then linear coefficients in descending lexicographic order.
    pub fn facet_order(&self, other: &Self) -> Ordering {
        self.c0
            .cmp(&other.c0)
            .then_with(|| other.coeffs.cmp(&self.coeffs))
    }

    pub fn format(&self, names: &[String]) -> String {
        self.to_poly().format(names)
    }
}

impl std::fmt::Display for LinForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        if self.nvars() == 0 {
            return write!(f, "{}", format_rat(&self.c0));
        }
        write!(f, "{}", self.format(&names))
    }
}
