//! Rational functions whose denominators are products of linear forms.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{LinForm, Poly, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pole {
    #[serde(flatten)]
    pub form: LinForm,
    pub mult: u32,
}

/// `numerator / prod(pole.form ^ pole.mult)`, kept reduced: poles are
/// primitive, pairwise distinct hyperplanes, and the numerator is not
/// divisible by any of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    numerator: Poly,
    poles: Vec<Pole>,
}

impl RatFunc {
    pub fn new(numerator: Poly, poles: Vec<LinForm>) -> Result<Self> {
        let poles = poles.into_iter().map(|form| Pole { form, mult: 1 }).collect();
        Self::with_poles(numerator, poles)
    }

    pub fn with_poles(numerator: Poly, poles: Vec<Pole>) -> Result<Self> {
        if let Some(p) = poles.iter().find(|p| p.form.nvars() != numerator.nvars()) {
            return Err(Error::DimensionMismatch {
                what: "pole variables",
                expected: numerator.nvars(),
                found: p.form.nvars(),
            });
        }
        let mut f = Self { numerator, poles };
        f.reduce();
        Ok(f)
    }

    pub fn polynomial(p: Poly) -> Self {
        Self {
            numerator: p,
            poles: Vec::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::polynomial(Poly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn pole_degree(&self) -> u32 {
        self.poles.iter().map(|p| p.mult).sum()
    }

    pub fn multiplicity_of(&self, form: &LinForm) -> u32 {
        self.poles
            .iter()
            .find(|p| p.form.ratio_to(form).is_some())
            .map_or(0, |p| p.mult)
    }

    fn reduce(&mut self) {
        let nvars = self.nvars();
        let mut merged: Vec<Pole> = Vec::new();
        for Pole { form, mult } in std::mem::take(&mut self.poles) {
            if mult == 0 {
                continue;
            }
            if !form.has_linear_part() {
                let c = num_traits::pow(form.c0().clone(), mult as usize);
                self.numerator = self.numerator.scale(&c.recip());
                continue;
            }
            let prim = form.primitive();
            // form = s * prim
            let s = form.ratio_to(&prim).expect("same hyperplane");
            if !s.is_one() {
                self.numerator = self
                    .numerator
                    .scale(&num_traits::pow(s, mult as usize).recip());
            }
            match merged.iter_mut().find(|p| p.form.ratio_to(&prim).is_some()) {
                Some(p) => {
                    // prim = r * p.form
                    let r = prim.ratio_to(&p.form).expect("same hyperplane");
                    self.numerator = self
                        .numerator
                        .scale(&num_traits::pow(r, mult as usize).recip());
                    p.mult += mult;
                }
                None => merged.push(Pole { form: prim, mult }),
            }
        }
        if self.numerator.is_zero() {
            self.poles.clear();
            self.numerator = Poly::zero(nvars);
            return;
        }
        for p in &mut merged {
            while p.mult > 0 {
                match self.numerator.exact_div(&p.form) {
                    Some(q) => {
                        self.numerator = q;
                        p.mult -= 1;
                    }
                    None => break,
                }
            }
        }
        merged.retain(|p| p.mult > 0);
        self.poles = merged;
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut f = self.clone();
        f.numerator = f.numerator.scale(c);
        if c.is_zero() {
            f.poles.clear();
        }
        f
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    /// Sum over a common denominator, reduced. Pole orientation of `self`
    /// wins for shared hyperplanes.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch {
                what: "rational function variables",
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        // union of poles, with each side's multiplicity and orientation ratio
        let mut union: Vec<Pole> = self.poles.clone();
        let mut other_scale = Rat::one();
        let mut other_mult = vec![0u32; union.len()];
        for q in &other.poles {
            match union.iter().position(|p| q.form.ratio_to(&p.form).is_some()) {
                Some(k) => {
                    let r = q.form.ratio_to(&union[k].form).expect("same hyperplane");
                    other_scale *= num_traits::pow(r, q.mult as usize);
                    other_mult[k] = q.mult;
                    union[k].mult = union[k].mult.max(q.mult);
                }
                None => {
                    union.push(q.clone());
                    other_mult.push(q.mult);
                }
            }
        }
        let self_mult: Vec<u32> = (0..union.len())
            .map(|k| self.poles.get(k).map_or(0, |p| p.mult))
            .collect();
        let lift = |num: &Poly, have: &[u32]| {
            let mut out = num.clone();
            for (p, &h) in union.iter().zip(have) {
                for _ in h..p.mult {
                    out = &out * &p.form.to_poly();
                }
            }
            out
        };
        let a = lift(&self.numerator, &self_mult);
        let b = lift(&other.numerator.scale(&other_scale.recip()), &other_mult);
        Self::with_poles(&a + &b, union)
    }

    pub fn sum<'a>(nvars: usize, items: impl IntoIterator<Item = &'a RatFunc>) -> Result<Self> {
        items
            .into_iter()
            .try_fold(Self::zero(nvars), |acc, f| acc.add(f))
    }

    /// Value at `x`, or `None` on a pole.
    pub fn eval(&self, x: &[Rat]) -> Result<Option<Rat>> {
        let mut den = Rat::one();
        for p in &self.poles {
            den *= num_traits::pow(p.form.eval(x)?, p.mult as usize);
        }
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.numerator.eval(x)? / den))
    }

    /// Identity of rational functions, by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.poles.len() == other.poles.len() {
            // both reduced: equal iff poles match up to scaling
            let mut scale = Rat::one();
            let mut matched = true;
            for p in &self.poles {
                match other
                    .poles
                    .iter()
                    .find(|q| q.mult == p.mult && q.form.ratio_to(&p.form).is_some())
                {
                    Some(q) => {
                        let r = q.form.ratio_to(&p.form).expect("same hyperplane");
                        scale *= num_traits::pow(r, p.mult as usize);
                    }
                    None => {
                        matched = false;
                        break;
                    }
                }
            }
            if matched {
                return other.numerator == self.numerator.scale(&scale);
            }
        }
        let prod = |f: &Self| {
            f.poles.iter().fold(Poly::one(f.nvars()), |acc, p| {
                &acc * &p.form.to_poly().pow(p.mult)
            })
        };
        &self.numerator * &prod(other) == &other.numerator * &prod(self)
    }

    /// Substitutes affine images for the variables. Images must have degree
    /// at most one and share a variable count.
    pub fn substitute(&self, images: &[Poly]) -> Result<Self> {
        let target = images.first().map_or(0, Poly::nvars);
        let numerator = self.numerator.compose(images)?;
        let mut poles = Vec::with_capacity(self.poles.len());
        for p in &self.poles {
            let img = p.form.to_poly().compose(images)?;
            let form = linform_from_poly(&img, target)?
                .ok_or_else(|| Error::Input("pole vanishes identically after substitution".into()))?;
            poles.push(Pole { form, mult: p.mult });
        }
        Self::with_poles(numerator, poles)
    }

    /// Reorders and rescales poles to match `forms` where they define the same
    /// hyperplane; remaining poles keep their order after those.
    pub fn orient_poles(&mut self, forms: &[LinForm]) {
        let mut out: Vec<Pole> = Vec::with_capacity(self.poles.len());
        let mut rest = std::mem::take(&mut self.poles);
        for f in forms {
            if let Some(k) = rest.iter().position(|p| p.form.ratio_to(f).is_some()) {
                let p = rest.remove(k);
                // p.form = r * f
                let r = p.form.ratio_to(f).expect("same hyperplane");
                self.numerator = self
                    .numerator
                    .scale(&num_traits::pow(r, p.mult as usize));
                out.push(Pole {
                    form: f.clone(),
                    mult: p.mult,
                });
            }
        }
        out.extend(rest);
        self.poles = out;
    }

    pub fn format(&self, names: &[String]) -> String {
        let num = self.numerator.format(names);
        if self.poles.is_empty() {
            return num;
        }
        let num = if self.numerator.nterms() > 1 {
            format!("({num})")
        } else {
            num
        };
        let factors: Vec<String> = self
            .poles
            .iter()
            .map(|p| {
                let s = p.form.format(names);
                let s = if p.form.to_poly().nterms() > 1 {
                    format!("({s})")
                } else {
                    s
                };
                if p.mult > 1 {
                    format!("{s}^{}", p.mult)
                } else {
                    s
                }
            })
            .collect();
        let den = factors.join("*");
        if factors.len() > 1 {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    }

    /// Whether the leading numerator coefficient is negative.
    pub(crate) fn leading_negative(&self) -> bool {
        self.numerator
            .leading()
            .is_some_and(|(_, c)| c.is_negative())
    }
}

/// Reads a polynomial of degree at most one as a linear form; `None` for the
/// zero polynomial.
pub(crate) fn linform_from_poly(p: &Poly, nvars: usize) -> Result<Option<LinForm>> {
    if p.is_zero() {
        return Ok(None);
    }
    if p.degree().unwrap_or(0) > 1 {
        return Err(Error::Input("expected an affine-linear polynomial".into()));
    }
    let coeffs = (0..nvars)
        .map(|i| p.coeff(&crate::exact::Monomial::var(nvars, i)))
        .collect();
    LinForm::new(p.constant_term(), coeffs).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn lin(c0: i64, a: &[i64]) -> LinForm {
        LinForm::new(rat(c0), a.iter().map(|&v| rat(v)).collect()).unwrap()
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn cancels_common_linear_factor() {
        let f = lin(4, &[0, -1]);
        let num = &f.to_poly() * &Poly::var(2, 1);
        let r = RatFunc::new(num, vec![f.clone(), lin(0, &[0, 1])]).unwrap();
        assert_eq!(r.format(&names()), "1");
    }

    #[test]
    fn merges_parallel_poles() {
        // 1/(x * 2x) = (1/2)/x^2
        let r = RatFunc::new(Poly::one(1), vec![lin(0, &[1]), lin(0, &[2])]).unwrap();
        assert_eq!(r.poles().len(), 1);
        assert_eq!(r.poles()[0].mult, 2);
        assert_eq!(r.eval(&[rat(1)]).unwrap(), Some(ratio(1, 2)));
        // opposite orientation: 1/(x * (-x)) = -1/x^2
        let s = RatFunc::new(Poly::one(1), vec![lin(0, &[1]), lin(0, &[-1])]).unwrap();
        assert_eq!(s.eval(&[rat(2)]).unwrap(), Some(ratio(-1, 4)));
    }

    #[test]
    fn interval_sum() {
        // 1/x + 1/(1-x) = 1/(x(1-x))
        let a = RatFunc::new(Poly::one(1), vec![lin(0, &[1])]).unwrap();
        let b = RatFunc::new(Poly::one(1), vec![lin(1, &[-1])]).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.format(&["x".into()]), "1/(x*(1-x))");
        // 1/x + 1/(x-1) with the second pole reversed
        let c = RatFunc::new(Poly::one(1), vec![lin(-1, &[1])]).unwrap();
        let t = a.add(&c).unwrap();
        assert_eq!(t.eval(&[rat(2)]).unwrap(), Some(ratio(3, 2)));
    }

    #[test]
    fn cross_multiplied_equality() {
        let a = RatFunc::new(Poly::one(1), vec![lin(0, &[1]), lin(1, &[-1])]).unwrap();
        let b = RatFunc::new(Poly::constant(1, rat(-2)), vec![lin(0, &[2]), lin(-1, &[1])]).unwrap();
        assert!(a.equals(&b));
        assert!(!a.equals(&a.neg()));
    }

    #[test]
    fn constant_poles_absorbed() {
        let r = RatFunc::new(Poly::one(0), vec![LinForm::new(rat(3), vec![]).unwrap()]).unwrap();
        assert!(r.poles().is_empty());
        assert_eq!(r.numerator().constant_term(), ratio(1, 3));
    }
}
