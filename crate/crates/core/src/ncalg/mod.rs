//! Noncommutative polynomials, rewriting modulo a presentation, and the
//! eigenvector decompositions with respect to conjugation.

mod ncpoly;
mod ops;
mod rewrite;

use std::fmt;

use crate::error::AlgebraError;
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;

pub use ncpoly::{Alphabet, NCPoly, Word};
pub use ops::{
    star_product_in,
    decompose_artin_schreier, decompose_pcentral, decompose_rho, iterated_commutator,
    star_product, ArtinSchreierParts,
};
pub use rewrite::{overlap_check, Ambiguity, MonomialOrder, RewriteSystem, Rule};

/// An associative unital algebra over a field, as needed by the
/// eigenpart decompositions.
pub trait Algebra {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn field(&self) -> &Field;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &FieldElement, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `Some(c)` when `a = c * 1`.
    fn as_scalar(&self, a: &Self::Elem) -> Option<FieldElement>;

    /// Rejects elements that do not belong to this context.
    fn check(&self, _a: &Self::Elem) -> Result<(), AlgebraError> {
        Ok(())
    }

    fn try_inverse(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn scalar(&self, c: &FieldElement) -> Self::Elem {
        self.scale(c, &self.one())
    }
}

/// The free associative algebra: no relations are applied.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub alphabet: Alphabet,
    pub field: Field,
}

impl FreeAlgebra {
    pub fn new(alphabet: Alphabet, field: Field) -> Self {
        FreeAlgebra { alphabet, field }
    }

    pub fn generator(&self, name: &str) -> NCPoly {
        NCPoly::generator(&self.alphabet, &self.field, name)
    }
}

impl Algebra for FreeAlgebra {
    type Elem = NCPoly;
    fn field(&self) -> &Field {
        &self.field
    }
    fn zero(&self) -> NCPoly {
        NCPoly::zero(&self.alphabet, &self.field)
    }
    fn one(&self) -> NCPoly {
        NCPoly::constant(&self.alphabet, &self.field.one())
    }
    fn add(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.add(b)
    }
    fn neg(&self, a: &NCPoly) -> NCPoly {
        a.neg()
    }
    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.mul(b)
    }
    fn scale(&self, c: &FieldElement, a: &NCPoly) -> NCPoly {
        a.scale(c)
    }
    fn is_zero(&self, a: &NCPoly) -> bool {
        a.is_zero()
    }
    fn as_scalar(&self, a: &NCPoly) -> Option<FieldElement> {
        a.as_constant()
    }
    fn check(&self, a: &NCPoly) -> Result<(), AlgebraError> {
        if a.alphabet() != &self.alphabet || a.field() != &self.field {
            return Err(AlgebraError::Dimension("polynomial from another algebra".into()));
        }
        Ok(())
    }
}

/// The quotient of the free algebra by a rewriting system; elements are
/// kept in normal form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub system: RewriteSystem,
}

impl Quotient {
    pub fn new(system: RewriteSystem) -> Self {
        Quotient { system }
    }

    pub fn generator(&self, name: &str) -> NCPoly {
        self.reduce(&NCPoly::generator(self.system.alphabet(), self.system.field(), name))
    }

    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        self.system.normal_form(p)
    }
}

impl Algebra for Quotient {
    type Elem = NCPoly;
    fn field(&self) -> &Field {
        self.system.field()
    }
    fn zero(&self) -> NCPoly {
        NCPoly::zero(self.system.alphabet(), self.system.field())
    }
    fn one(&self) -> NCPoly {
        NCPoly::constant(self.system.alphabet(), &self.system.field().one())
    }
    fn add(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.add(b)
    }
    fn neg(&self, a: &NCPoly) -> NCPoly {
        a.neg()
    }
    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        self.system.normal_form(&a.mul(b))
    }
    fn scale(&self, c: &FieldElement, a: &NCPoly) -> NCPoly {
        a.scale(c)
    }
    fn is_zero(&self, a: &NCPoly) -> bool {
        self.system.normal_form(a).is_zero()
    }
    fn as_scalar(&self, a: &NCPoly) -> Option<FieldElement> {
        self.system.normal_form(a).as_constant()
    }
    fn check(&self, a: &NCPoly) -> Result<(), AlgebraError> {
        if a.alphabet() != self.system.alphabet() || a.field() != self.system.field() {
            return Err(AlgebraError::Dimension("polynomial from another algebra".into()));
        }
        Ok(())
    }
}

/// The full matrix algebra `M_n(K)`.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Field,
    n: usize,
}

impl MatrixAlgebra {
    pub fn new(field: Field, n: usize) -> Self {
        MatrixAlgebra { field, n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

impl Algebra for MatrixAlgebra {
    type Elem = Matrix<FieldElement>;
    fn field(&self) -> &Field {
        &self.field
    }
    fn zero(&self) -> Self::Elem {
        Matrix::zeros(self.n, self.n, &self.field.zero())
    }
    fn one(&self) -> Self::Elem {
        Matrix::identity(self.n, &self.field.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }
    fn scale(&self, c: &FieldElement, a: &Self::Elem) -> Self::Elem {
        a.scale(c)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn as_scalar(&self, a: &Self::Elem) -> Option<FieldElement> {
        a.as_scalar()
    }
    fn check(&self, a: &Self::Elem) -> Result<(), AlgebraError> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(AlgebraError::Dimension(format!(
                "expected {n}x{n}, got {}x{}",
                a.rows(),
                a.cols(),
                n = self.n
            )));
        }
        if a.witness().field() != &self.field {
            return Err(AlgebraError::Field(crate::FieldError::Mismatch));
        }
        Ok(())
    }
    fn try_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inverse().ok()
    }
}
