//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::linform::LinForm;
use super::rat::{format_rat, lcm_of_denominators, gcd_of_numerators, to_f64, Rat};
use crate::error::{Error, Result};

/// `[1, n, n^2, .., n^k]`.
fn powers(n: &BigInt, k: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(k as usize + 1);
    out.push(BigInt::one());
    for i in 0..k as usize {
        let next = &out[i] * n;
        out.push(next);
    }
    out
}

/// A point on `div = 0` with fixed, unremarkable free coordinates.
fn point_on(div: &LinForm, pivot: usize) -> Vec<Rat> {
    const FREE: [i64; 8] = [7, -11, 13, 17, -19, 23, 29, -31];
    let mut x: Vec<Rat> = (0..div.nvars())
        .map(|i| Rat::from_integer((FREE[i % FREE.len()] + 37 * (i / FREE.len()) as i64).into()))
        .collect();
    x[pivot] = Rat::zero();
    let partial = div.c0() + super::rat::dot(div.coeffs(), &x);
    x[pivot] = -partial / &div.coeffs()[pivot];
    x
}

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rat::one());
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rat, Vec<u32>)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    what: "exponent vector",
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the grevlex-leading monomial downwards.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                what: "polynomial variables",
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                what: "evaluation point",
                expected: self.nvars,
                found: point.len(),
            });
        }
        let Some(k) = self.degree() else {
            return Ok(Rat::zero());
        };
        // Work over the integers: x_i = n_i / den and c = c' / cl, so every
        // term is c' * prod n_i^e_i * den^(k - |e|) over cl * den^k.
        let den = lcm_of_denominators(point);
        let nums: Vec<BigInt> = point.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
        let pows: Vec<Vec<BigInt>> = nums
            .iter()
            .enumerate()
            .map(|(i, n)| powers(n, self.degree_in(i)))
            .collect();
        let dpows = powers(&den, k);
        let cl = lcm_of_denominators(self.terms.values());
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = (c * Rat::from_integer(cl.clone())).to_integer();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &pows[i][e as usize];
                }
            }
            let rest = (k - m.degree()) as usize;
            if rest > 0 {
                t *= &dpows[rest];
            }
            acc += t;
        }
        Ok(Rat::new(acc, cl * &dpows[k as usize]))
    }

    /// Value modulo a fixed 61-bit prime, or `None` if a denominator
    /// vanishes there. A nonzero residue proves the exact value is nonzero.
    fn eval_mod(&self, point: &[Rat]) -> Option<u64> {
        const P: u64 = (1 << 61) - 1;
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
        let powmod = |mut a: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, a);
                }
                a = mulmod(a, a);
                e >>= 1;
            }
            r
        };
        let modp = |r: &Rat| -> Option<u64> {
            let big = BigInt::from(P);
            let reduce = |n: &BigInt| {
                let m = n % &big;
                let m = if m.is_negative() { m + &big } else { m };
                u64::try_from(m).expect("reduced below P")
            };
            let d = reduce(r.denom());
            if d == 0 {
                return None;
            }
            Some(mulmod(reduce(r.numer()), powmod(d, P - 2)))
        };
        let xs = point.iter().map(modp).collect::<Option<Vec<u64>>>()?;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = modp(c)?;
            for (x, &e) in xs.iter().zip(&m.0) {
                if e > 0 {
                    t = mulmod(t, powmod(*x, e as u64));
                }
            }
            acc = (acc + t) % P;
        }
        Some(acc)
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            let mut t = Complex64::new(to_f64(c), 0.0);
            for (z, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= z.powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = m.0.clone();
            n[var] -= 1;
            out.add_term(Monomial(n), c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable count, which becomes the variable count of the result.
    pub fn compose(&self, images: &[Poly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                what: "substitution images",
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::DimensionMismatch {
                what: "substitution image variables",
                expected: target,
                found: bad.nvars,
            });
        }
        // images that are bare variables only shift exponents
        let renames: Vec<Option<usize>> = images.iter().map(Poly::as_variable).collect();
        let others: Vec<usize> = (0..self.nvars).filter(|&i| renames[i].is_none()).collect();
        if let [k] = others[..] {
            return Ok(self.compose_one(k, &images[k], &renames));
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut shift = vec![0u32; target];
            let mut factor: Option<Poly> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(j) = renames[i] {
                    shift[j] += e;
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                let pw = &powers[i][e as usize];
                factor = Some(match factor {
                    None => pw.clone(),
                    Some(f) => &f * pw,
                });
            }
            match factor {
                None => out.add_term(Monomial(shift), c.clone()),
                Some(f) => {
                    for (fm, fc) in f.terms {
                        let e = fm.0.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        out.add_term(Monomial(e), c * fc);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Substitution where only variable `k` gets a general image, by
    /// Horner's scheme in `x_k`.
    fn compose_one(&self, k: usize, image: &Poly, renames: &[Option<usize>]) -> Self {
        let target = image.nvars;
        let n = self.degree_in(k) as usize;
        let mut slices = vec![Poly::zero(target); n + 1];
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = renames[i] {
                    e[j] += x;
                }
            }
            slices[m.0[k] as usize].add_term(Monomial(e), c.clone());
        }
        let mut slices = slices.into_iter().rev();
        let mut out = slices.next().expect("degree slice");
        for s in slices {
            out = &(&out * image) + &s;
        }
        out
    }

    /// `Some(j)` when the polynomial is exactly the variable `x_j`.
    fn as_variable(&self) -> Option<usize> {
        let mut it = self.terms.iter();
        let (m, c) = it.next()?;
        if it.next().is_some() || !c.is_one() || m.degree() != 1 {
            return None;
        }
        m.0.iter().position(|&e| e == 1)
    }

    /// Homogenizes to total degree `degree` with a new variable prepended at
    /// index 0. Fails when a term exceeds `degree`.
    pub fn homogenize(&self, degree: u32) -> Result<Self> {
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > degree {
                return Err(Error::DegreeMismatch {
                    expected: degree as i64,
                    found: d as i64,
                });
            }
            let mut e = Vec::with_capacity(self.nvars + 1);
            e.push(degree - d);
            e.extend_from_slice(&m.0);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets variable 0 to one and drops it.
    pub fn dehomogenize(&self) -> Self {
        let mut out = Self::zero(self.nvars.saturating_sub(1));
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[1..].to_vec()), c.clone());
        }
        out
    }

    /// Exact quotient by a linear form, or `None` if it does not divide.
    pub fn exact_div(&self, div: &LinForm) -> Option<Self> {
        if div.nvars() != self.nvars {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let Some(pivot) = div.coeffs().iter().rposition(|c| !c.is_zero()) else {
            return Some(self.scale(&div.c0().recip()));
        };
        // a divisor must vanish wherever `div` does; one point on the
        // hyperplane rules most candidates out cheaply
        if self.eval_mod(&point_on(div, pivot)).is_some_and(|v| v != 0) {
            return None;
        }
        let lead = &div.coeffs()[pivot];
        let mut rest = div.clone();
        rest.set_coeff(pivot, Rat::zero());
        let rest = rest.to_poly();

        // coefficients of self as a polynomial in the pivot variable
        let n = self.degree_in(pivot) as usize;
        let mut slices = vec![Poly::zero(self.nvars); n + 1];
        for (m, c) in &self.terms {
            let k = m.0[pivot] as usize;
            let mut e = m.0.clone();
            e[pivot] = 0;
            slices[k].add_term(Monomial(e), c.clone());
        }
        if n == 0 {
            // pivot absent: division only works if `rest` is zero
            return None;
        }
        let inv = lead.recip();
        let mut q = vec![Poly::zero(self.nvars); n];
        q[n - 1] = slices[n].scale(&inv);
        for k in (1..n).rev() {
            q[k - 1] = (&slices[k] - &(&rest * &q[k])).scale(&inv);
        }
        if slices[0] != &rest * &q[0] {
            return None;
        }
        let mut out = Poly::zero(self.nvars);
        for (k, qk) in q.into_iter().enumerate() {
            for (m, c) in qk.terms {
                let mut e = m.0;
                e[pivot] += k as u32;
                out.add_term(Monomial(e), c);
            }
        }
        Some(out)
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    /// Returns the scaled polynomial and the factor applied.
    pub fn primitive(&self) -> (Self, Rat) {
        if self.is_zero() {
            return (self.clone(), Rat::one());
        }
        let l = Rat::from_integer(lcm_of_denominators(self.terms.values()));
        let g = Rat::from_integer(gcd_of_numerators(
            self.terms.values().map(|c| c * &l).collect::<Vec<_>>().iter(),
        ));
        let mut f = l / g;
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            f = -f;
        }
        (self.scale(&f), f)
    }

    /// Human-readable form: terms by ascending degree, grevlex-descending
    /// within a degree, e.g. `4+4x-y`.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ordered: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then(b.cmp(a)));
        let mut s = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let mono = format_monomial(m, names);
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if mono.is_empty() {
                s.push_str(&format_rat(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else if mag.is_integer() {
                let _ = write!(s, "{}{}", format_rat(&mag), mono);
            } else {
                let _ = write!(s, "({}){}", format_rat(&mag), mono);
            }
        }
        s
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.try_add(&-rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
