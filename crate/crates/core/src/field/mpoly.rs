//! Sparse multivariate polynomials over a [`BaseField`], ordered graded-lex.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use super::base::{BaseField, Coeff};

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(&self, o: &Self) -> Self {
        Exponents(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn checked_sub(&self, o: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }
}

impl Ord for Exponents {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Coeff>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coeff, base: &BaseField) -> Self {
        let mut p = MPoly::zero(nvars);
        if !base.is_zero(&c) {
            p.terms.insert(Exponents::zero(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, base: &BaseField) -> Self {
        MPoly::constant(nvars, base.one(), base)
    }

    pub fn var(nvars: usize, i: usize, base: &BaseField) -> Self {
        let mut e = Exponents::zero(nvars);
        e.0[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, base.one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this is a constant (zero counts as constant `None`).
    pub fn as_constant(&self) -> Option<&Coeff> {
        match self.terms.len() {
            1 => {
                let (e, c) = self.terms.iter().next()?;
                (e.degree() == 0).then_some(c)
            }
            _ => None,
        }
    }

    pub fn is_one(&self, base: &BaseField) -> bool {
        self.as_constant().is_some_and(|c| base.is_one(c))
    }

    pub fn leading(&self) -> Option<(&Exponents, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(e, _)| e.degree())
    }

    fn insert_add(&mut self, e: Exponents, c: Coeff, base: &BaseField) {
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = base.add(old, &c);
                if base.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !base.is_zero(&c) {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    pub fn add(&self, o: &Self, base: &BaseField) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert_add(e.clone(), c.clone(), base);
        }
        r
    }

    pub fn neg(&self, base: &BaseField) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), base.neg(c))).collect(),
        }
    }

    pub fn sub(&self, o: &Self, base: &BaseField) -> Self {
        self.add(&o.neg(base), base)
    }

    pub fn scale(&self, k: &Coeff, base: &BaseField) -> Self {
        if base.is_zero(k) {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), base.mul(c, k))).collect(),
        }
    }

    fn mul_term(&self, e: &Exponents, k: &Coeff, base: &BaseField) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, c)| (f.add(e), base.mul(c, k))).collect(),
        }
    }

    pub fn mul(&self, o: &Self, base: &BaseField) -> Self {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.insert_add(e1.add(e2), base.mul(c1, c2), base);
            }
        }
        r
    }

    pub fn pow(&self, n: u32, base: &BaseField) -> Self {
        let mut acc = MPoly::one(self.nvars, base);
        for _ in 0..n {
            acc = acc.mul(self, base);
        }
        acc
    }

    /// Scale so the grlex-leading coefficient is 1.
    pub fn monic(&self, base: &BaseField) -> Self {
        match self.leading() {
            Some((_, c)) if !base.is_one(c) => {
                let inv = base.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv, base)
            }
            _ => self.clone(),
        }
    }

    /// `self / d` when `d` divides `self` exactly, otherwise `None`.
    pub fn div_exact(&self, d: &Self, base: &BaseField) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let dinv = base.inv(dc).ok()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = r.leading() {
            let e = re.checked_sub(de)?;
            let c = base.mul(rc, &dinv);
            r = r.sub(&d.mul_term(&e, &c, base), base);
            q.insert_add(e, c, base);
        }
        Some(q)
    }

    fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    /// First variable occurring in `self`, if any.
    fn main_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&i| self.terms.keys().any(|e| e.0[i] > 0))
    }

    /// Coefficients with respect to `var`; entry `i` multiplies `var^i`.
    fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = core::mem::take(&mut f.0[var]) as usize;
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    fn lc_in(&self, var: usize) -> MPoly {
        self.coeffs_in(var).pop().unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    fn shift(&self, var: usize, k: u32) -> Self {
        let mut e = Exponents::zero(self.nvars);
        e.0[var] = k;
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, c)| (f.add(&e), c.clone())).collect(),
        }
    }

    fn content_in(&self, var: usize, base: &BaseField) -> MPoly {
        let mut g = MPoly::zero(self.nvars);
        for c in self.coeffs_in(var) {
            g = MPoly::gcd(&g, &c, base);
            if g.is_one(base) {
                break;
            }
        }
        g
    }

    /// Monic greatest common divisor (recursive primitive PRS).
    pub fn gcd(a: &Self, b: &Self, base: &BaseField) -> Self {
        let n = a.nvars;
        if a.is_zero() {
            return b.monic(base);
        }
        if b.is_zero() {
            return a.monic(base);
        }
        if a.as_constant().is_some() || b.as_constant().is_some() {
            return MPoly::one(n, base);
        }
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let mut m = a.leading().unwrap().0.clone();
            for e in a.terms.keys().chain(b.terms.keys()) {
                for (x, y) in m.0.iter_mut().zip(&e.0) {
                    *x = (*x).min(*y);
                }
            }
            let mut p = MPoly::zero(n);
            p.terms.insert(m, base.one());
            return p;
        }
        let var = match (a.main_var(), b.main_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => unreachable!("non-constant polynomials have a variable"),
        };
        let ca = a.content_in(var, base);
        let cb = b.content_in(var, base);
        let c = MPoly::gcd(&ca, &cb, base);
        let mut p = a.div_exact(&ca, base).expect("content divides");
        let mut q = b.div_exact(&cb, base).expect("content divides");
        if p.degree_in(var) < q.degree_in(var) {
            core::mem::swap(&mut p, &mut q);
        }
        let g = loop {
            if q.is_zero() {
                break p;
            }
            if q.degree_in(var) == 0 {
                break MPoly::one(n, base);
            }
            let r = prem(&p, &q, var, base);
            p = q;
            q = if r.is_zero() {
                r
            } else {
                let cr = r.content_in(var, base);
                r.div_exact(&cr, base).expect("content divides")
            };
        };
        let g = if g.degree_in(var) == 0 {
            MPoly::one(n, base)
        } else {
            let cg = g.content_in(var, base);
            g.div_exact(&cg, base).expect("content divides")
        };
        c.mul(&g, base).monic(base)
    }

    /// Human-readable form, e.g. `s^2 t - 2 s + 1`. Factors are separated by
    /// spaces so the output re-lexes under the expression grammar.
    pub fn render(&self, names: &[String], base: &BaseField) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = base.is_negative(c);
            let mag = if neg { base.neg(c) } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts: Vec<String> = Vec::new();
            if e.degree() == 0 || !base.is_one(&mag) {
                parts.push(coeff_string(&mag, base));
            }
            for (k, &d) in e.0.iter().enumerate() {
                match d {
                    0 => {}
                    1 => parts.push(names[k].clone()),
                    _ => parts.push(alloc::format!("{}^{}", names[k], d)),
                }
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}

pub(crate) fn coeff_string(c: &Coeff, base: &BaseField) -> String {
    struct D<'a>(&'a Coeff, &'a BaseField);
    impl core::fmt::Display for D<'_> {
        fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
            self.1.fmt_coeff(self.0, f)
        }
    }
    let mut s = String::new();
    let _ = write!(s, "{}", D(c, base));
    s
}

/// Pseudo-remainder of `p` by `q` with respect to `var` (up to a unit-free
/// factor of `lc(q)`, which the caller removes by taking primitive parts).
fn prem(p: &MPoly, q: &MPoly, var: usize, base: &BaseField) -> MPoly {
    let dq = q.degree_in(var);
    let lq = q.lc_in(var);
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(var) >= dq {
        let k = r.degree_in(var) - dq;
        let lr = r.lc_in(var);
        r = r.mul(&lq, base).sub(&q.mul(&lr, base).shift(var, k), base);
    }
    r
}
