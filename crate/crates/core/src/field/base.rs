//! Prime-field coefficient domains: the rationals and `F_p`.
//!
//! Every other field in the crate (function fields, simple extensions) is
//! built from polynomials over one of these.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// The prime subfield underneath a [`Field`](super::Field).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// A coefficient in a [`BaseField`]. Residues mod `p` are kept in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u64),
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(BaseField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            BaseField::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => Coeff::P((n as i128).rem_euclid(*p as i128) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            BaseField::Rationals => Coeff::Q(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::P(r.to_u64().unwrap_or(0))
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in this field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff, Error> {
        let d = self.from_bigint(den);
        let d = self.inv(&d)?;
        Ok(self.mul(&self.from_bigint(num), &d))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_zero(),
            Coeff::P(r) => *r == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_one(),
            Coeff::P(r) => *r == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (BaseField::Prime(p), Coeff::P(x), Coeff::P(y)) => {
                Coeff::P(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => unreachable!("coefficient domain mismatch"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (_, Coeff::Q(x)) => Coeff::Q(-x),
            (BaseField::Prime(p), Coeff::P(x)) => Coeff::P(if *x == 0 { 0 } else { p - x }),
            _ => unreachable!("coefficient domain mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (BaseField::Prime(p), Coeff::P(x), Coeff::P(y)) => {
                Coeff::P(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => unreachable!("coefficient domain mismatch"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff, Error> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (_, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (BaseField::Prime(p), Coeff::P(x)) => Coeff::P(mod_inverse(*x, *p)),
            _ => unreachable!("coefficient domain mismatch"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub(crate) fn is_negative(&self, a: &Coeff) -> bool {
        matches!(a, Coeff::Q(q) if q.is_negative())
    }

    pub(crate) fn fmt_coeff(&self, a: &Coeff, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match a {
            Coeff::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::P(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => f.write_str("Q"),
            BaseField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: alloc::vec::Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(BaseField::prime(9).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f5 = BaseField::prime(5).unwrap();
        assert_eq!(f5.add(&f5.from_i64(2), &f5.from_i64(3)), f5.zero());
        assert_eq!(f5.from_i64(-1), Coeff::P(4));
        let three = f5.from_i64(3);
        assert_eq!(f5.mul(&three, &f5.inv(&three).unwrap()), f5.one());
        assert!(f5.inv(&f5.zero()).is_err());
    }
}
