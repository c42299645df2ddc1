//! Exact coefficient fields: `Q`, `F_p`, rational function fields over
//! either, and simple extensions `K[x]/(f)`.
//!
//! A [`Field`] is a cheap shared handle; values are plain [`Scalar`]s whose
//! arithmetic goes through the field. [`FieldElement`] pairs the two for
//! callers who want checked, self-describing values.

mod base;
mod mpoly;
mod upoly;

pub use base::{is_prime, BaseField, Coeff};
pub use mpoly::{Exponents, MPoly};
pub use upoly::UPoly;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Candidate-divisor budget for the exhaustive irreducibility check.
pub const IRREDUCIBILITY_BUDGET: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    FunctionField { base: BaseField, variables: Vec<String> },
    /// `base[variable]/(modulus)`; the residue class of `variable` prints as
    /// `xbar`.
    Extension { base: BaseField, variable: String, modulus: UPoly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub characteristic: u64,
}

/// Shared handle to a field descriptor. Equality is by descriptor value.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl Eq for Field {}

/// Reduced fraction of polynomials with grlex-monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }
}

/// A field value in canonical form. Which variant is used is fixed by the
/// field kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Base(Coeff),
    Frac(RatFunc),
    Res(UPoly),
}

/// What a field offers as parameters for the free-subgroup constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldProfile {
    pub characteristic: u64,
    pub independent_generators: Vec<String>,
}

/// Name of the residue class of the extension variable.
pub const EXTENSION_GENERATOR: &str = "xbar";

impl Field {
    pub fn rationals() -> Self {
        Field::from_kind(FieldKind::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self, Error> {
        BaseField::prime(p)?;
        Ok(Field::from_kind(FieldKind::Prime(p)))
    }

    pub fn function_field<S: AsRef<str>>(base: BaseField, variables: &[S]) -> Result<Self, Error> {
        if let BaseField::Prime(p) = base {
            BaseField::prime(p)?;
        }
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        if variables.is_empty() {
            return Err(Error::InvalidField("a function field needs at least one variable".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidField(alloc::format!("repeated variable {v}")));
            }
            if v == EXTENSION_GENERATOR {
                return Err(Error::InvalidField(alloc::format!("{v} is reserved")));
            }
        }
        Ok(Field::from_kind(FieldKind::FunctionField { base, variables }))
    }

    /// `base[variable]/(modulus)`. Over `F_p` small moduli are checked for
    /// irreducibility; over `Q` a reducible modulus surfaces later as a
    /// [`Error::ReducibleModulus`] on inversion.
    pub fn extension(base: BaseField, variable: &str, modulus: UPoly) -> Result<Self, Error> {
        if let BaseField::Prime(p) = base {
            BaseField::prime(p)?;
        }
        match modulus.degree() {
            None | Some(0) => {
                return Err(Error::InvalidField("the modulus must be nonconstant".into()));
            }
            _ => {}
        }
        if modulus.is_irreducible_exhaustive(&base, IRREDUCIBILITY_BUDGET) == Some(false) {
            return Err(Error::ReducibleModulus(modulus.render(variable, &base)));
        }
        Ok(Field::from_kind(FieldKind::Extension {
            base,
            variable: variable.to_string(),
            modulus,
        }))
    }

    fn from_kind(kind: FieldKind) -> Self {
        let characteristic = match &kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::FunctionField { base, .. } | FieldKind::Extension { base, .. } => {
                base.characteristic()
            }
        };
        Field(Arc::new(FieldDescriptor { kind, characteristic }))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// The prime subfield.
    pub fn base(&self) -> BaseField {
        match self.kind() {
            FieldKind::Rationals => BaseField::Rationals,
            FieldKind::Prime(p) => BaseField::Prime(*p),
            FieldKind::FunctionField { base, .. } | FieldKind::Extension { base, .. } => base.clone(),
        }
    }

    pub fn profile(&self) -> FieldProfile {
        let independent_generators = match self.kind() {
            FieldKind::FunctionField { variables, .. } => variables.clone(),
            _ => Vec::new(),
        };
        FieldProfile { characteristic: self.characteristic(), independent_generators }
    }

    fn nvars(&self) -> usize {
        match self.kind() {
            FieldKind::FunctionField { variables, .. } => variables.len(),
            _ => 0,
        }
    }

    pub fn from_coeff(&self, c: Coeff) -> Scalar {
        let b = self.base();
        match self.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => Scalar::Base(c),
            FieldKind::FunctionField { .. } => {
                let n = self.nvars();
                Scalar::Frac(RatFunc { num: MPoly::constant(n, c, &b), den: MPoly::one(n, &b) })
            }
            FieldKind::Extension { .. } => Scalar::Res(UPoly::new(alloc::vec![c], &b)),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_coeff(self.base().from_i64(n))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// A named generator: a function-field variable, or `xbar` in an
    /// extension.
    pub fn variable(&self, name: &str) -> Result<Scalar, Error> {
        let b = self.base();
        match self.kind() {
            FieldKind::FunctionField { variables, .. } => {
                let i = variables
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                let n = variables.len();
                Ok(Scalar::Frac(RatFunc { num: MPoly::var(n, i, &b), den: MPoly::one(n, &b) }))
            }
            FieldKind::Extension { modulus, .. } if name == EXTENSION_GENERATOR => {
                let x = UPoly::new(alloc::vec![b.zero(), b.one()], &b);
                Ok(Scalar::Res(x.rem(modulus, &b)))
            }
            _ => Err(Error::UnknownVariable(name.to_string())),
        }
    }

    /// Names accepted by [`Field::variable`].
    pub fn variable_names(&self) -> Vec<String> {
        match self.kind() {
            FieldKind::FunctionField { variables, .. } => variables.clone(),
            FieldKind::Extension { .. } => alloc::vec![EXTENSION_GENERATOR.to_string()],
            _ => Vec::new(),
        }
    }

    /// Whether `s` has the shape this field uses. Guards public entry points
    /// against scalars built for another field.
    pub fn owns(&self, s: &Scalar) -> bool {
        match (self.kind(), s) {
            (FieldKind::Rationals, Scalar::Base(Coeff::Q(_))) => true,
            (FieldKind::Prime(p), Scalar::Base(Coeff::P(r))) => r < p,
            (FieldKind::FunctionField { .. }, Scalar::Frac(f)) => f.num.nvars() == self.nvars(),
            (FieldKind::Extension { modulus, .. }, Scalar::Res(r)) => {
                r.degree().map_or(true, |d| Some(d) < modulus.degree())
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Base(c) => self.base().is_zero(c),
            Scalar::Frac(f) => f.num.is_zero(),
            Scalar::Res(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let base = self.base();
        match (a, b) {
            (Scalar::Base(x), Scalar::Base(y)) => Scalar::Base(base.add(x, y)),
            (Scalar::Res(x), Scalar::Res(y)) => Scalar::Res(x.add(y, &base)),
            (Scalar::Frac(x), Scalar::Frac(y)) => {
                if x.num.is_zero() {
                    return b.clone();
                }
                if y.num.is_zero() {
                    return a.clone();
                }
                if x.den == y.den {
                    reduce(x.num.add(&y.num, &base), x.den.clone(), &base)
                } else {
                    let num = x.num.mul(&y.den, &base).add(&y.num.mul(&x.den, &base), &base);
                    reduce(num, x.den.mul(&y.den, &base), &base)
                }
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        let base = self.base();
        match a {
            Scalar::Base(x) => Scalar::Base(base.neg(x)),
            Scalar::Res(x) => Scalar::Res(x.neg(&base)),
            Scalar::Frac(x) => Scalar::Frac(RatFunc { num: x.num.neg(&base), den: x.den.clone() }),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let base = self.base();
        match (a, b) {
            (Scalar::Base(x), Scalar::Base(y)) => Scalar::Base(base.mul(x, y)),
            (Scalar::Res(x), Scalar::Res(y)) => match self.kind() {
                FieldKind::Extension { modulus, .. } => Scalar::Res(x.mul(y, &base).rem(modulus, &base)),
                _ => panic!("scalar from a different field"),
            },
            (Scalar::Frac(x), Scalar::Frac(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return self.zero();
                }
                if x.den.is_one(&base) && y.den.is_one(&base) {
                    return Scalar::Frac(RatFunc { num: x.num.mul(&y.num, &base), den: x.den.clone() });
                }
                let g1 = MPoly::gcd(&x.num, &y.den, &base);
                let g2 = MPoly::gcd(&y.num, &x.den, &base);
                let n1 = x.num.div_exact(&g1, &base).expect("gcd divides");
                let d2 = y.den.div_exact(&g1, &base).expect("gcd divides");
                let n2 = y.num.div_exact(&g2, &base).expect("gcd divides");
                let d1 = x.den.div_exact(&g2, &base).expect("gcd divides");
                Scalar::Frac(RatFunc { num: n1.mul(&n2, &base), den: d1.mul(&d2, &base) })
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, Error> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let base = self.base();
        Ok(match a {
            Scalar::Base(x) => Scalar::Base(base.inv(x)?),
            Scalar::Res(x) => match self.kind() {
                FieldKind::Extension { modulus, .. } => Scalar::Res(x.inv_mod(modulus, &base)?),
                _ => return Err(Error::FieldMismatch),
            },
            Scalar::Frac(x) => {
                let lc = base.inv(x.num.leading().unwrap().1)?;
                Scalar::Frac(RatFunc { num: x.den.scale(&lc, &base), den: x.num.scale(&lc, &base) })
            }
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, n: i64) -> Result<Scalar, Error> {
        let mut b = if n < 0 { self.inv(a)? } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `Some(c)` if `a` lies in the prime subfield.
    pub fn as_base(&self, a: &Scalar) -> Option<Coeff> {
        match a {
            Scalar::Base(c) => Some(c.clone()),
            Scalar::Frac(f) if f.den.as_constant().is_some() || f.num.is_zero() => {
                if f.num.is_zero() {
                    Some(self.base().zero())
                } else {
                    f.num.as_constant().cloned()
                }
            }
            Scalar::Res(r) => match r.degree() {
                None => Some(self.base().zero()),
                Some(0) => Some(r.coeffs()[0].clone()),
                _ => None,
            },
            _ => None,
        }
    }

    /// Whether the canonical form prints with a leading minus sign.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        let base = self.base();
        match a {
            Scalar::Base(c) => base.is_negative(c),
            Scalar::Frac(f) => f.num.leading().is_some_and(|(_, c)| base.is_negative(c)),
            Scalar::Res(r) => r.coeffs().last().is_some_and(|c| base.is_negative(c)),
        }
    }

    /// Canonical text, re-readable by the expression parser.
    pub fn render(&self, a: &Scalar) -> String {
        let base = self.base();
        match (a, self.kind()) {
            (Scalar::Base(c), _) => mpoly::coeff_string(c, &base),
            (Scalar::Frac(f), FieldKind::FunctionField { variables, .. }) => {
                let num = f.num.render(variables, &base);
                if f.den.is_one(&base) {
                    return num;
                }
                let den = f.den.render(variables, &base);
                let wrap = |s: String, p: &MPoly| {
                    if p.terms().count() > 1 || s.contains(' ') {
                        alloc::format!("({s})")
                    } else {
                        s
                    }
                };
                alloc::format!("{}/{}", wrap(num, &f.num), wrap(den, &f.den))
            }
            (Scalar::Res(r), _) => r.render(EXTENSION_GENERATOR, &base),
            _ => String::from("<foreign scalar>"),
        }
    }

    pub fn element(&self, value: Scalar) -> FieldElement {
        FieldElement { field: self.clone(), value }
    }
}

fn reduce(num: MPoly, den: MPoly, base: &BaseField) -> Scalar {
    if num.is_zero() {
        let n = num.nvars();
        return Scalar::Frac(RatFunc { num, den: MPoly::one(n, base) });
    }
    if den.is_one(base) {
        return Scalar::Frac(RatFunc { num, den });
    }
    let g = MPoly::gcd(&num, &den, base);
    let num = num.div_exact(&g, base).expect("gcd divides");
    let den = den.div_exact(&g, base).expect("gcd divides");
    let lc = base.inv(den.leading().unwrap().1).expect("nonzero");
    Scalar::Frac(RatFunc { num: num.scale(&lc, base), den: den.scale(&lc, base) })
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => f.write_str("Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
            FieldKind::FunctionField { base, variables } => write!(f, "{base}({})", variables.join(",")),
            FieldKind::Extension { base, variable, modulus } => {
                write!(f, "{base}[{variable}]/({})", modulus.render(variable, base))
            }
        }
    }
}

/// A scalar tagged with its field; arithmetic checks that fields agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Scalar,
}

impl FieldElement {
    fn same(&self, o: &Self) -> Result<(), Error> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, Error> {
        self.same(o)?;
        Ok(self.field.element(self.field.add(&self.value, &o.value)))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, Error> {
        self.same(o)?;
        Ok(self.field.element(self.field.sub(&self.value, &o.value)))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, Error> {
        self.same(o)?;
        Ok(self.field.element(self.field.mul(&self.value, &o.value)))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, Error> {
        self.same(o)?;
        Ok(self.field.element(self.field.div(&self.value, &o.value)?))
    }

    pub fn neg(&self) -> Self {
        self.field.element(self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Self, Error> {
        Ok(self.field.element(self.field.inv(&self.value)?))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(&self.value))
    }
}
