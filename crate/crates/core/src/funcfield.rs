//! The rational function field `K(R)` and its quadratic extension
//! `K(R)[S] / (S^2 + b(R) S + c(R))`.
//!
//! Elements are stored as `(n0 + n1 S) / den` with `den` monic and the
//! three polynomials coprime, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::field::{Field, FieldElement, Scalar};
use crate::poly::Poly;

#[derive(Debug, PartialEq)]
pub struct FunctionFieldDescriptor {
    base: Field,
    /// `S^2 + s_coeff(R) * S + constant(R) = 0`.
    s_coeff: Poly<FieldElement>,
    constant: Poly<FieldElement>,
    r_name: String,
    s_name: String,
}

#[derive(Clone, Debug)]
pub struct FunctionField(Arc<FunctionFieldDescriptor>);

impl PartialEq for FunctionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl FunctionField {
    /// The quadratic extension of `base(R)` defined by
    /// `S^2 + s_coeff(R) S + constant(R) = 0`.
    pub fn quadratic(
        base: &Field,
        s_coeff: Poly<FieldElement>,
        constant: Poly<FieldElement>,
    ) -> FunctionField {
        FunctionField(Arc::new(FunctionFieldDescriptor {
            base: base.clone(),
            s_coeff,
            constant,
            r_name: "R".into(),
            s_name: "S".into(),
        }))
    }

    pub fn base(&self) -> &Field {
        &self.0.base
    }

    pub fn s_coeff(&self) -> &Poly<FieldElement> {
        &self.0.s_coeff
    }

    pub fn constant_term(&self) -> &Poly<FieldElement> {
        &self.0.constant
    }

    fn poly_zero(&self) -> Poly<FieldElement> {
        Poly::zero(&self.0.base.zero())
    }

    fn poly_one(&self) -> Poly<FieldElement> {
        Poly::constant(self.0.base.one())
    }

    pub fn from_parts(
        &self,
        n0: Poly<FieldElement>,
        n1: Poly<FieldElement>,
        den: Poly<FieldElement>,
    ) -> Option<FunctionFieldElement> {
        if den.is_zero() {
            return None;
        }
        Some(FunctionFieldElement { ctx: self.clone(), n0, n1, den }.normalized())
    }

    pub fn constant(&self, c: &FieldElement) -> FunctionFieldElement {
        let c = self.0.base.embed(c).expect("constant from the base field");
        self.from_parts(Poly::constant(c), self.poly_zero(), self.poly_one()).unwrap()
    }

    pub fn from_poly(&self, p: Poly<FieldElement>) -> FunctionFieldElement {
        self.from_parts(p, self.poly_zero(), self.poly_one()).unwrap()
    }

    pub fn zero(&self) -> FunctionFieldElement {
        self.constant(&self.0.base.zero())
    }

    pub fn one(&self) -> FunctionFieldElement {
        self.constant(&self.0.base.one())
    }

    /// The transcendental `R`.
    pub fn r(&self) -> FunctionFieldElement {
        self.from_poly(Poly::monomial(self.0.base.one(), 1))
    }

    /// The quadratic generator `S`.
    pub fn s(&self) -> FunctionFieldElement {
        self.from_parts(self.poly_zero(), self.poly_one(), self.poly_one()).unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct FunctionFieldElement {
    ctx: FunctionField,
    n0: Poly<FieldElement>,
    n1: Poly<FieldElement>,
    den: Poly<FieldElement>,
}

impl FunctionFieldElement {
    fn normalized(mut self) -> Self {
        if self.n0.is_zero() && self.n1.is_zero() {
            self.den = self.ctx.poly_one();
            return self;
        }
        let g = self.n0.gcd(&self.n1).gcd(&self.den);
        if g.degree() != Some(0) {
            self.n0 = self.n0.divrem(&g).0;
            self.n1 = self.n1.divrem(&g).0;
            self.den = self.den.divrem(&g).0;
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inverse().unwrap();
            self.n0 = self.n0.scale(&inv);
            self.n1 = self.n1.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn context(&self) -> &FunctionField {
        &self.ctx
    }

    /// `(n0, n1, den)` with the element equal to `(n0 + n1 S) / den`.
    pub fn parts(&self) -> (&Poly<FieldElement>, &Poly<FieldElement>, &Poly<FieldElement>) {
        (&self.n0, &self.n1, &self.den)
    }

    /// The value as a constant of the base field, if it is one.
    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.n1.is_zero() && self.den.degree() == Some(0) && self.n0.degree().unwrap_or(0) == 0 {
            Some(self.n0.coeff(0))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert!(self.ctx == other.ctx, "function field mismatch");
    }
}

impl PartialEq for FunctionFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.n0 == other.n0 && self.n1 == other.n1 && self.den == other.den
    }
}

impl fmt::Display for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ctx.0.r_name;
        let s = &self.ctx.0.s_name;
        let mut terms = Vec::new();
        if !self.n0.is_zero() {
            terms.push(self.n0.display_in(r));
        }
        if !self.n1.is_zero() {
            let c = self.n1.display_in(r);
            terms.push(crate::fmt_term(&c, s));
        }
        let num = if terms.is_empty() { "0".to_string() } else { crate::join_signed(&terms) };
        if self.den.degree() == Some(0) {
            f.write_str(&num)
        } else {
            write!(f, "({num})/({})", self.den.display_in(r))
        }
    }
}

impl Add for FunctionFieldElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let n0 = self.n0.mul(&o.den).add(&o.n0.mul(&self.den));
        let n1 = self.n1.mul(&o.den).add(&o.n1.mul(&self.den));
        let den = self.den.mul(&o.den);
        FunctionFieldElement { ctx: self.ctx, n0, n1, den }.normalized()
    }
}

impl Neg for FunctionFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FunctionFieldElement { n0: self.n0.neg(), n1: self.n1.neg(), ..self }
    }
}

impl Sub for FunctionFieldElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for FunctionFieldElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let b = &self.ctx.0.s_coeff;
        let c = &self.ctx.0.constant;
        // S^2 = -b S - c
        let hh = self.n1.mul(&o.n1);
        let n0 = self.n0.mul(&o.n0).sub(&hh.mul(c));
        let n1 = self.n0.mul(&o.n1).add(&self.n1.mul(&o.n0)).sub(&hh.mul(b));
        let den = self.den.mul(&o.den);
        FunctionFieldElement { ctx: self.ctx, n0, n1, den }.normalized()
    }
}

impl Scalar for FunctionFieldElement {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn is_zero(&self) -> bool {
        self.n0.is_zero() && self.n1.is_zero()
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.ctx.constant(&self.ctx.0.base.from_int(n))
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let b = &self.ctx.0.s_coeff;
        let c = &self.ctx.0.constant;
        // Norm of n0 + n1 S over K(R).
        let norm = self
            .n0
            .mul(&self.n0)
            .sub(&self.n0.mul(&self.n1).mul(b))
            .add(&self.n1.mul(&self.n1).mul(c));
        if norm.is_zero() {
            return None;
        }
        let n0 = self.n0.sub(&self.n1.mul(b)).mul(&self.den);
        let n1 = self.n1.neg().mul(&self.den);
        self.ctx.from_parts(n0, n1, norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_field() -> FunctionField {
        // S^2 - S + 2 R^3 = 0 over QQ(rho)
        let f = Field::rationals().adjoin_rho().unwrap();
        let b = Poly::constant(f.from_int(-1));
        let c = Poly::monomial(f.from_int(2), 3);
        FunctionField::quadratic(&f, b, c)
    }

    #[test]
    fn s_squared_is_eliminated() {
        let ff = curve_field();
        let s = ff.s();
        let r = ff.r();
        let two = ff.from_int_like_helper(2);
        let lhs = s.clone() * s.clone();
        assert_eq!(lhs, s.clone() - two * r.clone() * r.clone() * r);
        let (_, n1, _) = lhs.parts();
        assert!(n1.degree() == Some(0));
    }

    #[test]
    fn inverses() {
        let ff = curve_field();
        let r = ff.r();
        let s = ff.s();
        for x in [r.clone(), s.clone(), r.clone() + s.clone(), s.clone() * r.clone() - ff.one()] {
            let y = x.inv().unwrap();
            assert_eq!(x.clone() * y.clone(), ff.one());
            // (f/g)(g/f) = 1
            let q = x.clone() * r.inv().unwrap();
            assert_eq!(q.clone() * q.inv().unwrap(), ff.one());
        }
        assert!(ff.zero().inv().is_none());
    }

    impl FunctionField {
        fn from_int_like_helper(&self, n: i64) -> FunctionFieldElement {
            self.one().from_int_like(n)
        }
    }
}
