//! Dense univariate polynomials over a [`BaseField`], used as moduli and
//! residues of simple extensions `K[x]/(f)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::base::{BaseField, Coeff};
use super::mpoly::coeff_string;
use crate::error::Error;

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Coeff>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Coeff>, base: &BaseField) -> Self {
        while coeffs.last().is_some_and(|c| base.is_zero(c)) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn from_i64s(cs: &[i64], base: &BaseField) -> Self {
        UPoly::new(cs.iter().map(|&c| base.from_i64(c)).collect(), base)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Coeff> {
        self.0.last()
    }

    pub fn add(&self, o: &Self, base: &BaseField) -> Self {
        let n = self.0.len().max(o.0.len());
        let zero = base.zero();
        let cs = (0..n)
            .map(|i| base.add(self.0.get(i).unwrap_or(&zero), o.0.get(i).unwrap_or(&zero)))
            .collect();
        UPoly::new(cs, base)
    }

    pub fn neg(&self, base: &BaseField) -> Self {
        UPoly(self.0.iter().map(|c| base.neg(c)).collect())
    }

    pub fn sub(&self, o: &Self, base: &BaseField) -> Self {
        self.add(&o.neg(base), base)
    }

    pub fn scale(&self, k: &Coeff, base: &BaseField) -> Self {
        UPoly::new(self.0.iter().map(|c| base.mul(c, k)).collect(), base)
    }

    pub fn mul(&self, o: &Self, base: &BaseField) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut cs = vec![base.zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                cs[i + j] = base.add(&cs[i + j], &base.mul(a, b));
            }
        }
        UPoly::new(cs, base)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &Self, base: &BaseField) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = base.inv(d.lead().unwrap()).expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        let mut q = vec![base.zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = base.mul(r.last().unwrap(), &inv);
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] = base.sub(&r[k + i], &base.mul(&c, dc));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| base.is_zero(c)) {
                r.pop();
            }
        }
        (UPoly::new(q, base), UPoly::new(r, base))
    }

    pub fn rem(&self, d: &Self, base: &BaseField) -> Self {
        self.divrem(d, base).1
    }

    /// Inverse of `self` modulo `m`. A nonzero residue sharing a factor with
    /// `m` means `m` is reducible.
    pub fn inv_mod(&self, m: &Self, base: &BaseField) -> Result<Self, Error> {
        let a = self.rem(m, base);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (m.clone(), a);
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::new(vec![base.one()], base));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, base);
            let t = t0.sub(&q.mul(&t1, base), base);
            (r0, r1) = (r1, r);
            (t0, t1) = (t1, t);
        }
        if r0.degree() != Some(0) {
            return Err(Error::ReducibleModulus(alloc::format!(
                "{} shares the factor {} with the modulus",
                self.render("x", base),
                r0.render("x", base)
            )));
        }
        let inv = base.inv(&r0.0[0])?;
        Ok(t0.scale(&inv, base).rem(m, base))
    }

    /// Exhaustive irreducibility test over `F_p`. Returns `None` when the
    /// search space exceeds `budget` candidate divisors or the base is `Q`.
    pub fn is_irreducible_exhaustive(&self, base: &BaseField, budget: u64) -> Option<bool> {
        let p = match base {
            BaseField::Prime(p) => *p,
            BaseField::Rationals => return None,
        };
        let deg = self.degree()?;
        if deg == 0 {
            return Some(false);
        }
        let half = deg / 2;
        let mut total: u64 = 0;
        for d in 1..=half {
            total = total.saturating_add(p.checked_pow(d as u32).unwrap_or(u64::MAX));
        }
        if total > budget {
            return None;
        }
        for d in 1..=half {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut cs = Vec::with_capacity(d + 1);
                let mut k = code;
                for _ in 0..d {
                    cs.push(Coeff::P(k % p));
                    k /= p;
                }
                cs.push(Coeff::P(1));
                let cand = UPoly(cs);
                if self.rem(&cand, base).is_zero() {
                    return Some(false);
                }
            }
        }
        Some(true)
    }

    pub fn render(&self, var: &str, base: &BaseField) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if base.is_zero(c) {
                continue;
            }
            let neg = base.is_negative(c);
            let mag = if neg { base.neg(c) } else { c.clone() };
            match (first, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if k == 0 || !base.is_one(&mag) {
                parts.push(coeff_string(&mag, base));
            }
            match k {
                0 => {}
                1 => parts.push(String::from(var)),
                _ => parts.push(alloc::format!("{var}^{k}")),
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}
