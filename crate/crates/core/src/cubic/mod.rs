//! Generalized Clifford algebras of binary cubic forms: the presentation by
//! `x, y1, y2`, its rewriting system, central elements and curve.

pub mod char0;
pub mod char3;

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, StructureError};
use crate::field::{Field, FieldElement};
use crate::mpoly::MPoly;
use crate::ncalg::{Alphabet, MonomialOrder, NCPoly, Quotient, RewriteSystem, Rule, Word};
use crate::repcheck::GeneralPresentation;

pub const X: u8 = 0;
pub const Y1: u8 = 1;
pub const Y2: u8 = 2;

/// Generators `x, y1, y2`.
pub fn alphabet() -> Alphabet {
    Alphabet::new(&["x", "y1", "y2"])
}

/// Weighted degree-lex order with weights `x: 1, y1: 1, y2: 2` and
/// precedence `y1 > y2 > x`. Normal words are `x^a y2^b y1^c`.
///
/// The weight on `y2` makes the cubic rule for `y2^3` decreasing even though
/// its right side contains the longer word `x^2 y2 y1`.
pub fn monomial_order() -> MonomialOrder {
    MonomialOrder::new(vec![1, 1, 2], &[Y1, Y2, X])
}

/// Shorthand for building polynomials in `x, y1, y2`.
#[derive(Clone, Debug)]
pub struct Builder {
    pub alphabet: Alphabet,
    pub field: Field,
}

impl Builder {
    pub fn new(field: &Field) -> Self {
        Builder { alphabet: alphabet(), field: field.clone() }
    }

    pub fn word(&self, w: &[u8], c: &FieldElement) -> NCPoly {
        NCPoly::term(&self.alphabet, Word(w.to_vec()), c.clone())
    }

    pub fn mono(&self, w: &[u8]) -> NCPoly {
        self.word(w, &self.field.one())
    }

    pub fn constant(&self, c: &FieldElement) -> NCPoly {
        NCPoly::constant(&self.alphabet, c)
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(&self.alphabet, &self.field)
    }

    pub fn rule(&self, lhs: &[u8], rhs: NCPoly) -> Rule {
        Rule { lhs: Word(lhs.to_vec()), rhs }
    }

    pub fn system(&self, rules: Vec<Rule>) -> Result<RewriteSystem, AlgebraError> {
        RewriteSystem::new(self.alphabet.clone(), self.field.clone(), monomial_order(), rules)
    }
}

/// The images of `x`, `y1`, `y2`, `y` and of the distinguished elements in
/// a quotient presentation.
#[derive(Clone, Debug)]
pub struct Named {
    pub x: NCPoly,
    pub y1: NCPoly,
    pub y2: NCPoly,
    pub y0: NCPoly,
    pub y: NCPoly,
    pub w: NCPoly,
}

/// One identity checked by reduction to normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    /// Normal form of the difference of both sides.
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push_zero(&mut self, name: impl Into<String>, q: &Quotient, p: &NCPoly) {
        let nf = q.reduce(p);
        self.checks.push(Check { name: name.into(), ok: nf.is_zero(), residual: nf.to_string() });
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool, residual: impl Into<String>) {
        self.checks.push(Check { name: name.into(), ok, residual: residual.into() });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    /// `Err` naming the first failing identity.
    pub fn into_result(self) -> Result<CheckReport, StructureError> {
        if let Some(c) = self.failures().next() {
            return Err(StructureError::Verification(format!("{} leaves {}", c.name, c.residual)));
        }
        Ok(self)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.ok {
                writeln!(f, "ok    {}", c.name)?;
            } else {
                writeln!(f, "FAIL  {}: {}", c.name, c.residual)?;
            }
        }
        Ok(())
    }
}

/// Commutators `[c, g]` of each named central candidate with each generator.
pub fn centrality_checks(q: &Quotient, central: &[(&str, &NCPoly)], gens: &[(&str, &NCPoly)]) -> CheckReport {
    let mut report = CheckReport::default();
    for (cn, c) in central {
        for (gn, g) in gens {
            let comm = c.mul(g).sub(&g.mul(c));
            report.push_zero(format!("[{cn}, {gn}]"), q, &comm);
        }
    }
    report
}

/// `Phi = Z^3 - r Y Z^2 - (e XY + t Y^2) Z - (alpha X^3 + beta X^2 Y + gamma X Y^2 + delta Y^3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicPresentation {
    pub field: Field,
    pub r: FieldElement,
    pub t: FieldElement,
    pub e: FieldElement,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

impl CubicPresentation {
    /// Coefficients in the order `(r, t, e, alpha, beta, gamma, delta)`.
    pub fn new(field: &Field, c: [FieldElement; 7]) -> Result<Self, StructureError> {
        for x in &c {
            if x.field() != field {
                return Err(crate::FieldError::Mismatch.into());
            }
        }
        let [r, t, e, alpha, beta, gamma, delta] = c;
        Ok(CubicPresentation { field: field.clone(), r, t, e, alpha, beta, gamma, delta })
    }

    pub fn from_ints(field: &Field, c: [i64; 7]) -> Result<Self, StructureError> {
        Self::new(field, c.map(|k| field.from_int(k)))
    }

    pub fn coefficients(&self) -> [&FieldElement; 7] {
        [&self.r, &self.t, &self.e, &self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    /// Reads the family's coefficients off a general cubic in `X, Y`.
    pub fn from_general(gp: &GeneralPresentation) -> Result<Self, StructureError> {
        let f = BinaryCubic::from_general(gp)?;
        if !f.f1[0].is_zero() || !f.f2[0].is_zero() {
            return Err(StructureError::Shape(
                "f1 must be a multiple of Y and f2 must have no X^2 term".into(),
            ));
        }
        let [_, r] = f.f1.clone();
        let [_, e, t] = f.f2.clone();
        let [alpha, beta, gamma, delta] = f.f3.clone();
        Self::new(&f.field, [r, t, e, alpha, beta, gamma, delta])
    }

    pub fn to_general(&self) -> GeneralPresentation {
        BinaryCubic {
            field: self.field.clone(),
            f1: [self.field.zero(), self.r.clone()],
            f2: [self.field.zero(), self.e.clone(), self.t.clone()],
            f3: [self.alpha.clone(), self.beta.clone(), self.gamma.clone(), self.delta.clone()],
        }
        .to_general()
    }
}

impl fmt::Display for CubicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_general())
    }
}

/// `Z^3 - f1 Z^2 - f2 Z - f3` with binary forms given by coefficient lists:
/// `f1 = [X, Y]`, `f2 = [X^2, XY, Y^2]`, `f3 = [X^3, X^2 Y, X Y^2, Y^3]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryCubic {
    pub field: Field,
    pub f1: [FieldElement; 2],
    pub f2: [FieldElement; 3],
    pub f3: [FieldElement; 4],
}

impl BinaryCubic {
    pub fn from_general(gp: &GeneralPresentation) -> Result<Self, StructureError> {
        if gp.d != 3 || gp.n != 2 {
            return Err(StructureError::Shape(format!(
                "expected a cubic in two variables, got degree {} in {} variables",
                gp.d, gp.n
            )));
        }
        let read = |k: usize| -> Vec<FieldElement> {
            (0..=k as u32).map(|j| gp.f[k - 1].coeff(&[k as u32 - j, j])).collect()
        };
        let (f1, f2, f3) = (read(1), read(2), read(3));
        Ok(BinaryCubic {
            field: gp.field.clone(),
            f1: f1.try_into().expect("two coefficients"),
            f2: f2.try_into().expect("three coefficients"),
            f3: f3.try_into().expect("four coefficients"),
        })
    }

    pub fn to_general(&self) -> GeneralPresentation {
        let form = |cs: &[FieldElement]| {
            let k = cs.len() as u32 - 1;
            let mut p = MPoly::zero(2, &self.field.zero());
            for (j, c) in cs.iter().enumerate() {
                p.add_term(vec![k - j as u32, j as u32], c.clone());
            }
            p
        };
        GeneralPresentation::new(&self.field, 3, 2, vec![form(&self.f1), form(&self.f2), form(&self.f3)])
            .expect("binary forms are homogeneous")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_round_trip() {
        let f = Field::rationals().adjoin_rho().unwrap();
        let pres = CubicPresentation::from_ints(&f, [3, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(CubicPresentation::from_general(&pres.to_general()).unwrap(), pres);
    }

    #[test]
    fn order_orients_normal_words() {
        let ord = monomial_order();
        let gt = |a: &[u8], b: &[u8]| ord.cmp(&Word(a.to_vec()), &Word(b.to_vec())) == std::cmp::Ordering::Greater;
        assert!(gt(&[Y1, X], &[X, Y1]));
        assert!(gt(&[Y2, X], &[X, Y2]));
        assert!(gt(&[Y1, Y2], &[Y2, Y1]));
        assert!(gt(&[Y2, Y2, Y2], &[X, X, Y2, Y1]));
        assert!(gt(&[Y2, Y2, Y2], &[Y1, Y1, Y1]));
    }
}
