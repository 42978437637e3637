//! Plane affine curves `P(R, S) = 0` attached to a presentation, and points
//! on them over extension fields.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{FieldError, StructureError};
use crate::field::{Field, FieldElement, EXHAUSTIVE_LIMIT};
use crate::mpoly::MPoly;
use crate::poly::Poly;

/// Which variable index of the curve polynomial holds which coordinate.
const S_VAR: usize = 0;
const R_VAR: usize = 1;

/// Largest field searched exhaustively for singular points.
const SEARCH_LIMIT: u128 = 1 << 12;

#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel {
    field: Field,
    label: String,
    r_name: String,
    s_name: String,
    poly: MPoly<FieldElement>,
    weierstrass: bool,
}

impl CurveModel {
    /// The curve `s^2 + b(r) s + c(r) = 0`.
    pub fn quadratic_in_s(
        label: &str,
        names: (&str, &str),
        b: &Poly<FieldElement>,
        c: &Poly<FieldElement>,
    ) -> Self {
        let field = c.witness().field().clone();
        let mut poly = MPoly::zero(2, &field.zero());
        poly.add_term(exps(0, 2), field.one());
        for (k, bk) in b.coeffs().iter().enumerate() {
            poly.add_term(exps(k as u32, 1), bk.clone());
        }
        for (k, ck) in c.coeffs().iter().enumerate() {
            poly.add_term(exps(k as u32, 0), ck.clone());
        }
        CurveModel {
            field,
            label: label.to_string(),
            r_name: names.0.to_string(),
            s_name: names.1.to_string(),
            poly,
            weierstrass: false,
        }
    }

    /// The curve `s^2 = h(r)`.
    pub fn weierstrass(label: &str, names: (&str, &str), h: &Poly<FieldElement>) -> Self {
        let b = Poly::zero(h.witness());
        let mut curve = Self::quadratic_in_s(label, names, &b, &h.neg());
        curve.weierstrass = true;
        curve
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn names(&self) -> (&str, &str) {
        (&self.r_name, &self.s_name)
    }

    /// The defining polynomial in variables `(s, r)`.
    pub fn poly(&self) -> &MPoly<FieldElement> {
        &self.poly
    }

    /// Coefficient of `r^i s^j`.
    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.poly.coeff(&exps(i, j))
    }

    /// `(b, c)` with the curve `s^2 + b(r) s + c(r) = 0`.
    pub fn s_quadratic(&self) -> (Poly<FieldElement>, Poly<FieldElement>) {
        let z = self.field.zero();
        let deg = self.poly.degree_in(R_VAR).unwrap_or(0) as usize;
        let b = Poly::new((0..=deg).map(|k| self.coeff(k as u32, 1)).collect(), &z);
        let c = Poly::new((0..=deg).map(|k| self.coeff(k as u32, 0)).collect(), &z);
        (b, c)
    }

    /// Evaluates the defining polynomial at `(r, s)` in an extension field.
    pub fn eval(&self, r: &FieldElement, s: &FieldElement) -> Result<FieldElement, FieldError> {
        let l = r.field().clone();
        let mut acc = l.zero();
        for (e, c) in self.poly.terms() {
            let c = l.embed(c)?;
            acc = &acc + &(&(&c * &s.pow_u128(e[S_VAR] as u128)) * &r.pow_u128(e[R_VAR] as u128));
        }
        Ok(acc)
    }

    pub fn contains(&self, pt: &CurvePoint) -> Result<bool, FieldError> {
        match &pt.r {
            Some(r) => Ok(self.eval(r, &pt.s)?.is_zero()),
            None => Err(FieldError::Mismatch),
        }
    }

    /// `{"r^i*s^j": coeff}` for every nonzero term.
    pub fn coefficient_map(&self) -> BTreeMap<String, String> {
        self.poly
            .terms()
            .map(|(e, c)| (self.monomial_name(e[R_VAR], e[S_VAR]), c.to_string()))
            .collect()
    }

    fn monomial_name(&self, i: u32, j: u32) -> String {
        let part = |name: &str, k: u32| match k {
            0 => None,
            1 => Some(name.to_string()),
            k => Some(format!("{name}^{k}")),
        };
        let parts: Vec<String> = [part(&self.r_name, i), part(&self.s_name, j)].into_iter().flatten().collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Singular points over the algebraic closure, as far as decidable here.
    ///
    /// With `s^2 + b s + c` and characteristic not 2, a point is singular
    /// exactly when `b^2 - 4c` has a repeated root. Finite fields are also
    /// searched exhaustively (together with small extensions of a prime
    /// base) so that explicit singular points can be listed.
    pub fn smoothness(&self) -> SmoothnessReport {
        let p = self.field.characteristic();
        let (b, c) = self.s_quadratic();
        let verdict = if p == 2 {
            Smoothness::Undetermined
        } else {
            let four = self.field.from_int(4);
            let g = b.mul(&b).sub(&c.scale(&four));
            let gp = g.derivative();
            if g.is_zero() || g.gcd(&gp).degree().unwrap_or(0) > 0 {
                Smoothness::Singular
            } else {
                Smoothness::Smooth
            }
        };
        let mut searched = Vec::new();
        let mut singular_points = Vec::new();
        for l in search_fields(&self.field) {
            searched.push(l.to_string());
            for (r, s) in self.singular_points_in(&l) {
                singular_points.push(SingularPoint { field: l.to_string(), r: r.to_string(), s: s.to_string() });
            }
        }
        SmoothnessReport { verdict, searched, singular_points }
    }

    fn singular_points_in(&self, l: &Field) -> Vec<(FieldElement, FieldElement)> {
        let mut out = Vec::new();
        let ds = derivative(&self.poly, S_VAR);
        let dr = derivative(&self.poly, R_VAR);
        let emb = |p: &MPoly<FieldElement>, r: &FieldElement, s: &FieldElement| {
            let curve = CurveModel { poly: p.clone(), ..self.clone() };
            curve.eval(r, s).expect("search field extends the curve field")
        };
        let (b, _) = self.s_quadratic();
        let half = if l.characteristic() == 2 { None } else { Some(l.from_int(2).inverse().expect("odd characteristic")) };
        for r in l.elements() {
            let candidates: Vec<FieldElement> = match &half {
                // dP/ds = 2s + b(r) vanishes only at s = -b(r)/2.
                Some(h) => {
                    let br = b.coeffs().iter().rev().fold(l.zero(), |acc, bk| {
                        &(&acc * &r) + &l.embed(bk).expect("search field extends the curve field")
                    });
                    vec![-&(&br * h)]
                }
                None => l.elements().collect(),
            };
            for s in candidates {
                if emb(&self.poly, &r, &s).is_zero() && emb(&ds, &r, &s).is_zero() && emb(&dr, &r, &s).is_zero() {
                    out.push((r.clone(), s));
                }
            }
        }
        out
    }
}

fn exps(r: u32, s: u32) -> Vec<u32> {
    let mut e = vec![0; 2];
    e[R_VAR] = r;
    e[S_VAR] = s;
    e
}

fn derivative(p: &MPoly<FieldElement>, var: usize) -> MPoly<FieldElement> {
    let mut out = MPoly::zero(p.nvars(), p.witness());
    for (e, c) in p.terms() {
        if e[var] == 0 {
            continue;
        }
        let mut e2 = e.clone();
        e2[var] -= 1;
        out.add_term(e2, c * &c.field().from_int(e[var] as i64));
    }
    out
}

/// The base field if finite and small, plus its degree 2 and 3 extensions
/// when the base is a prime field.
fn search_fields(base: &Field) -> Vec<Field> {
    let Some(q) = base.order() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if q <= SEARCH_LIMIT {
        out.push(base.clone());
    }
    if base.num_levels() == 0 && base.rho().is_none() {
        for deg in [2u32, 3] {
            if q.pow(deg) > SEARCH_LIMIT.min(EXHAUSTIVE_LIMIT) {
                break;
            }
            if let Some(l) = irreducible_extension(base, deg as usize) {
                out.push(l);
            }
        }
    }
    out
}

fn irreducible_extension(base: &Field, deg: usize) -> Option<Field> {
    let q = base.order()?;
    for idx in 0..q.pow(deg as u32) {
        let mut coeffs: Vec<FieldElement> = Vec::with_capacity(deg + 1);
        let mut i = idx;
        for _ in 0..deg {
            coeffs.push(base.element_from_index(i % q));
            i /= q;
        }
        coeffs.push(base.one());
        if coeffs[0].is_zero() {
            continue;
        }
        if let Ok(l) = base.extend(&coeffs) {
            return Some(l);
        }
    }
    None
}

impl fmt::Display for CurveModel {
    /// `S^2 - S + 2*R^3 = 0`, or `s^2 = r^3 + 2` for Weierstrass models.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [self.s_name.as_str(), self.r_name.as_str()];
        if self.weierstrass {
            let mut rhs = self.poly.neg();
            rhs.add_term(exps(0, 2), self.field.one());
            write!(f, "{}^2 = {}", self.s_name, rhs.display_with(&names))
        } else {
            write!(f, "{} = 0", self.poly.display_with(&names))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    Singular,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub field: String,
    pub r: String,
    pub s: String,
}

/// Informational only; no classification is gated on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub verdict: Smoothness,
    pub searched: Vec<String>,
    pub singular_points: Vec<SingularPoint>,
}

/// A point `(r0, s0)` over an extension of the curve's field, or a bare
/// nonzero `s0` for families whose center is a polynomial ring in one
/// variable.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub r: Option<FieldElement>,
    pub s: FieldElement,
}

impl CurvePoint {
    pub fn new(r: FieldElement, s: FieldElement) -> Result<Self, FieldError> {
        if r.field() != s.field() {
            return Err(FieldError::Mismatch);
        }
        Ok(CurvePoint { r: Some(r), s })
    }

    pub fn scalar(s: FieldElement) -> Self {
        CurvePoint { r: None, s }
    }

    pub fn field(&self) -> &Field {
        self.s.field()
    }

    /// Checks membership, naming the point on failure.
    pub fn on(&self, curve: &CurveModel) -> Result<(), StructureError> {
        if !self.field().extends(curve.field()) {
            return Err(FieldError::Mismatch.into());
        }
        if !curve.contains(self)? {
            return Err(StructureError::NotOnCurve(self.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.r {
            Some(r) => write!(f, "{r}, {}", self.s),
            None => write!(f, "{}", self.s),
        }
    }
}
