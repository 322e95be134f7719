//! Canonical forms of polytopes and the checks built on them.

mod adjoint;
mod checks;
mod engines;
mod mixed;
mod ratfunc;
mod report;
mod residue;

use num_traits::One;

pub use adjoint::{
    adjoint, adjoint_vanishing_check, homogenize, residual_arrangement, residual_interpolation,
    HomogeneousForm, InterpolationSpace, ResidualFlat,
};
pub use checks::{filliman_check, interior_samples, positive_convexity_check, subdivision_verify};
pub use engines::{
    canon_dual_cone, canon_dual_volume, canon_triangulation, dual_volume_terms, interval_form,
    laplace_terms, simplex_form, DualVolumeTerm, LaplaceTerm, Method,
};
pub use mixed::{dual_mixed_volume, mixed_homogeneity_check, MixedVolume};
pub use ratfunc::{Pole, RatFunc};
pub use report::{CheckReport, Witness};
pub use residue::{recursion_verify, residue, Residue, ResidueChart};

use crate::error::Result;
use crate::exact::{LinForm, Poly, Rat};

/// Default variable names: `x, y, z` up to three, `x1..xd` beyond.
pub fn default_varnames(d: usize) -> Vec<String> {
    if d <= 3 {
        ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    }
}

/// A rational top-form `sign * N / prod(l_i^m_i) dx_1 ^ .. ^ dx_d`.
///
/// The stored function has a numerator with positive leading coefficient;
/// the overall sign is kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    varnames: Vec<String>,
    sign: i8,
    func: RatFunc,
}

impl CanonicalForm {
    pub fn new(varnames: Vec<String>, func: RatFunc) -> Result<Self> {
        if varnames.len() != func.nvars() {
            return Err(crate::Error::DimensionMismatch {
                what: "variable names",
                expected: func.nvars(),
                found: varnames.len(),
            });
        }
        let mut f = Self {
            varnames,
            sign: 1,
            func,
        };
        f.normalize_sign();
        Ok(f)
    }

    pub fn with_default_names(func: RatFunc) -> Self {
        Self::new(default_varnames(func.nvars()), func).expect("names match")
    }

    fn normalize_sign(&mut self) {
        if self.func.leading_negative() {
            self.func = self.func.neg();
            self.sign = -self.sign;
        }
    }

    pub fn nvars(&self) -> usize {
        self.func.nvars()
    }

    pub fn varnames(&self) -> &[String] {
        &self.varnames
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn numerator(&self) -> &Poly {
        self.func.numerator()
    }

    pub fn poles(&self) -> &[Pole] {
        self.func.poles()
    }

    /// The signed function `sign * N / D`.
    pub fn signed_func(&self) -> RatFunc {
        if self.sign < 0 {
            self.func.neg()
        } else {
            self.func.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.func.is_zero()
    }

    /// Value at `x`; `None` on a pole.
    pub fn value(&self, x: &[Rat]) -> Result<Option<Rat>> {
        Ok(self.func.eval(x)?.map(|v| if self.sign < 0 { -v } else { v }))
    }

    /// Value of a 0-form.
    pub fn constant(&self) -> Option<Rat> {
        if self.nvars() != 0 {
            return None;
        }
        self.value(&[]).ok().flatten()
    }

    pub fn neg(&self) -> Self {
        let mut f = self.clone();
        f.sign = -f.sign;
        f
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.signed_func().add(&other.signed_func())?;
        Self::new(self.varnames.clone(), f)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.signed_func().equals(&other.signed_func())
    }

    /// `Some(1)` if equal, `Some(-1)` if negatives, else `None`.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self.same_as(other) {
            Some(1)
        } else if self.same_as(&other.neg()) {
            Some(-1)
        } else {
            None
        }
    }

    /// Rescales and reorders poles to the given facet forms.
    pub fn orient_poles(&mut self, facets: &[LinForm]) {
        self.func.orient_poles(facets);
        self.normalize_sign();
    }

    /// Pole hyperplanes, as canonical forms, sorted.
    pub fn pole_hyperplanes(&self) -> Vec<LinForm> {
        let mut v: Vec<LinForm> = self.poles().iter().map(|p| p.form.canonical()).collect();
        v.sort_by(|a, b| a.facet_order(b));
        v
    }

    /// e.g. `(4+4x-y)/(x*y*(1+x-y)*(4-2x-y)) dx^dy`.
    pub fn format(&self) -> String {
        let mut s = String::new();
        if self.sign < 0 {
            s.push('-');
        }
        let body = self.func.format(&self.varnames);
        if self.sign < 0 && body.contains(['+', '-']) && self.func.poles().is_empty() {
            s.push_str(&format!("({body})"));
        } else {
            s.push_str(&body);
        }
        if self.nvars() > 0 {
            let d: Vec<String> = self.varnames.iter().map(|n| format!("d{n}")).collect();
            s.push(' ');
            s.push_str(&d.join("^"));
        }
        s
    }

    pub(crate) fn func(&self) -> &RatFunc {
        &self.func
    }

    pub(crate) fn from_parts(varnames: Vec<String>, sign: i8, func: RatFunc) -> Result<Self> {
        let mut f = Self::new(varnames, func)?;
        if sign < 0 {
            f.sign = -f.sign;
        }
        Ok(f)
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

pub(crate) fn is_unit(r: &Rat) -> bool {
    r.is_one() || (-r).is_one()
}
