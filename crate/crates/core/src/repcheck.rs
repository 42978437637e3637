//! Matrix representations of generalized Clifford algebras of arbitrary
//! forms `Phi = Z^d - f1 Z^{d-1} - ... - fd` in `n` variables.
//!
//! A tuple `(A_1, ..., A_n)` of `m x m` matrices is a representation when
//! `M(X) = X_1 A_1 + ... + X_n A_n` satisfies `Phi(M) = 0` identically in `X`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{AlgebraError, FieldError};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::mpoly::{rank_over_fraction_field, MPoly};

/// `Z^d - f1 Z^{d-1} - ... - fd` with `f_k` homogeneous of degree `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPresentation {
    pub field: Field,
    pub d: usize,
    pub n: usize,
    pub f: Vec<MPoly<FieldElement>>,
}

impl GeneralPresentation {
    pub fn new(field: &Field, d: usize, n: usize, f: Vec<MPoly<FieldElement>>) -> Result<Self, AlgebraError> {
        if d == 0 || f.len() != d {
            return Err(AlgebraError::Dimension(format!("need {d} forms f1..f{d}, got {}", f.len())));
        }
        for (k, fk) in f.iter().enumerate() {
            if fk.nvars() != n {
                return Err(AlgebraError::Dimension(format!("f{} has {} variables, expected {n}", k + 1, fk.nvars())));
            }
            if fk.witness().field() != field {
                return Err(FieldError::Mismatch.into());
            }
            if !fk.is_homogeneous(k as u32 + 1) {
                return Err(AlgebraError::Precondition(format!("f{} is not homogeneous of degree {}", k + 1, k + 1)));
            }
        }
        Ok(GeneralPresentation { field: field.clone(), d, n, f })
    }

    /// `X, Y` for two variables, `X1, ..., Xn` otherwise.
    pub fn var_names(&self) -> Vec<String> {
        if self.n == 2 {
            vec!["X".into(), "Y".into()]
        } else {
            (1..=self.n).map(|i| format!("X{i}")).collect()
        }
    }
}

impl fmt::Display for GeneralPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.var_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "Z^{}", self.d)?;
        for (k, fk) in self.f.iter().enumerate() {
            if fk.is_zero() {
                continue;
            }
            let z = match self.d - k - 1 {
                0 => String::new(),
                1 => "*Z".to_string(),
                e => format!("*Z^{e}"),
            };
            let body = fk.display_with(&refs);
            let single = fk.terms().count() == 1 && !body.starts_with('-');
            if single {
                write!(f, " - {body}{z}")?;
            } else {
                write!(f, " - ({body}){z}")?;
            }
        }
        Ok(())
    }
}

/// Matrices `A_1, ..., A_n` of a common size over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    field: Field,
    matrices: Vec<Matrix<FieldElement>>,
}

impl MatrixRep {
    pub fn new(field: &Field, matrices: Vec<Matrix<FieldElement>>) -> Result<Self, AlgebraError> {
        let m = matrices.first().ok_or(AlgebraError::Empty("matrix list"))?.rows();
        for a in &matrices {
            if a.rows() != m || a.cols() != m {
                return Err(AlgebraError::Dimension(format!("expected {m}x{m}, got {}x{}", a.rows(), a.cols())));
            }
            if a.witness().field() != field {
                return Err(FieldError::Mismatch.into());
            }
        }
        Ok(MatrixRep { field: field.clone(), matrices })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn matrices(&self) -> &[Matrix<FieldElement>] {
        &self.matrices
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    /// `P^{-1} A_j P` for every `j`.
    pub fn conjugate(&self, p: &Matrix<FieldElement>) -> Result<MatrixRep, AlgebraError> {
        let inv = p.inverse()?;
        MatrixRep::new(&self.field, self.matrices.iter().map(|a| inv.mul(a).mul(p)).collect())
    }

    /// `{"field": ..., "matrices": [[["1", "0"], ...], ...]}` with entries
    /// rendered as element strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mats: Vec<Vec<Vec<String>>> = self
            .matrices
            .iter()
            .map(|a| a.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
            .collect();
        serde_json::json!({ "field": self.field.spec_string(), "matrices": mats })
    }
}

impl fmt::Display for MatrixRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, a) in self.matrices.iter().enumerate() {
            writeln!(f, "A{} =", j + 1)?;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A matrix with entries in `K[X_1, ..., X_n]`, stored by monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly {
    n: usize,
    m: usize,
    field: Field,
    terms: BTreeMap<Vec<u32>, Matrix<FieldElement>>,
}

impl MatPoly {
    pub fn zero(field: &Field, n: usize, m: usize) -> Self {
        MatPoly { n, m, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(field: &Field, n: usize, m: usize) -> Self {
        let mut p = Self::zero(field, n, m);
        p.add_term(vec![0; n], Matrix::identity(m, &field.zero()));
        p
    }

    /// `X_1 A_1 + ... + X_n A_n`.
    pub fn linear(rep: &MatrixRep) -> Self {
        let n = rep.matrices.len();
        let mut p = Self::zero(&rep.field, n, rep.dim());
        for (j, a) in rep.matrices.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, a.clone());
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, a: Matrix<FieldElement>) {
        let sum = match self.terms.remove(&e) {
            Some(b) => b.add(&a),
            None => a,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Matrix<FieldElement>)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, a) in &o.terms {
            out.add_term(e.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, a) in &o.terms {
            out.add_term(e.clone(), a.neg());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.n, self.m);
        for (e1, a) in &self.terms {
            for (e2, b) in &o.terms {
                let e = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, a.mul(b));
            }
        }
        out
    }

    /// Multiplication by a scalar polynomial.
    pub fn scale_poly(&self, f: &MPoly<FieldElement>) -> Self {
        let mut out = Self::zero(&self.field, self.n, self.m);
        for (e1, c) in f.terms() {
            for (e2, a) in &self.terms {
                let e = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, a.scale(c));
            }
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> Matrix<FieldElement> {
        let mut out = Matrix::zeros(self.m, self.m, &self.field.zero());
        for (e, a) in &self.terms {
            let c = e.iter().zip(point).fold(self.field.one(), |acc, (&k, x)| &acc * &x.pow_u128(k as u128));
            out = out.add(&a.scale(&c));
        }
        out
    }

    /// Entry-wise view with polynomial entries.
    pub fn entries(&self) -> Vec<MPoly<FieldElement>> {
        let z = self.field.zero();
        let mut out = vec![MPoly::zero(self.n, &z); self.m * self.m];
        for (e, a) in &self.terms {
            for (k, x) in a.entries().iter().enumerate() {
                if !x.is_zero() {
                    out[k].add_term(e.clone(), x.clone());
                }
            }
        }
        out
    }
}

/// A coefficient of `Phi(M)` that fails to vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub monomial: String,
    pub coefficient: String,
}

fn render_monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn check_shapes(gp: &GeneralPresentation, rep: &MatrixRep) -> Result<(), AlgebraError> {
    if rep.matrices.len() != gp.n {
        return Err(AlgebraError::Dimension(format!(
            "{} matrices for a form in {} variables",
            rep.matrices.len(),
            gp.n
        )));
    }
    if !rep.field.extends(&gp.field) {
        return Err(FieldError::Mismatch.into());
    }
    Ok(())
}

fn embedded_forms(gp: &GeneralPresentation, l: &Field) -> Result<Vec<MPoly<FieldElement>>, FieldError> {
    gp.f.iter()
        .map(|fk| {
            let mut out = MPoly::zero(gp.n, &l.zero());
            for (e, c) in fk.terms() {
                out.add_term(e.clone(), l.embed(c)?);
            }
            Ok(out)
        })
        .collect()
}

/// `Phi(M) = M^d - f1 M^{d-1} - ... - fd` as a matrix polynomial.
pub fn phi_of(gp: &GeneralPresentation, rep: &MatrixRep) -> Result<MatPoly, AlgebraError> {
    check_shapes(gp, rep)?;
    let fs = embedded_forms(gp, &rep.field)?;
    let m = MatPoly::linear(rep);
    let mut powers = vec![MatPoly::identity(&rep.field, gp.n, rep.dim())];
    for k in 1..=gp.d {
        powers.push(powers[k - 1].mul(&m));
    }
    let mut out = powers[gp.d].clone();
    for (k, fk) in fs.iter().enumerate() {
        out = out.sub(&powers[gp.d - k - 1].scale_poly(fk));
    }
    Ok(out)
}

/// `Ok(None)` when `Phi(M)` vanishes identically, otherwise the leading
/// nonvanishing coefficient.
pub fn is_representation(gp: &GeneralPresentation, rep: &MatrixRep) -> Result<Option<Witness>, AlgebraError> {
    let phi = phi_of(gp, rep)?;
    let names = gp.var_names();
    Ok(phi.terms.iter().next_back().map(|(e, a)| Witness {
        monomial: render_monomial(e, &names),
        coefficient: a.to_string(),
    }))
}

/// Evaluates `Phi(M(a))` at one random point `a` of the base field. Cheap
/// necessary condition; a nonzero value refutes.
pub fn random_point_check<R: Rng + ?Sized>(
    gp: &GeneralPresentation,
    rep: &MatrixRep,
    rng: &mut R,
) -> Result<bool, AlgebraError> {
    let phi = phi_of(gp, rep)?;
    let point: Vec<FieldElement> =
        (0..gp.n).map(|_| rep.field.embed(&gp.field.random_element(rng))).collect::<Result<_, _>>()?;
    Ok(phi.eval(&point).is_zero())
}

/// `Phi(M(a))` computed numerically: `M = a_1 A_1 + ... + a_n A_n`, then
/// `M^d - f1(a) M^{d-1} - ... - fd(a) I`.
pub fn phi_at(
    gp: &GeneralPresentation,
    rep: &MatrixRep,
    point: &[FieldElement],
) -> Result<Matrix<FieldElement>, AlgebraError> {
    check_shapes(gp, rep)?;
    if point.len() != gp.n {
        return Err(AlgebraError::Dimension(format!("point has {} coordinates, expected {}", point.len(), gp.n)));
    }
    let l = &rep.field;
    let a: Vec<FieldElement> = point.iter().map(|x| l.embed(x)).collect::<Result<_, _>>()?;
    let m = rep
        .matrices
        .iter()
        .zip(&a)
        .fold(Matrix::zeros(rep.dim(), rep.dim(), &l.zero()), |acc, (mj, aj)| acc.add(&mj.scale(aj)));
    let fs = embedded_forms(gp, l)?;
    let mut out = m.pow(gp.d as u32);
    for (k, fk) in fs.iter().enumerate() {
        out = out.sub(&m.pow((gp.d - k - 1) as u32).scale(&fk.eval(&a)));
    }
    Ok(out)
}

/// Whether `I, M, ..., M^{d-1}` are linearly independent over `K(X)`, that
/// is, whether `Phi` is the minimal polynomial of the generic matrix `M`.
pub fn minimal_poly_check(gp: &GeneralPresentation, rep: &MatrixRep) -> Result<bool, AlgebraError> {
    check_shapes(gp, rep)?;
    let m = MatPoly::linear(rep);
    let mut p = MatPoly::identity(&rep.field, gp.n, rep.dim());
    let mut rows = Vec::with_capacity(gp.d);
    for _ in 0..gp.d {
        rows.push(p.entries());
        p = p.mul(&m);
    }
    Ok(rank_over_fraction_field(rows) == gp.d)
}

/// A representation of dimension `m` of an algebra with minimal polynomial
/// of degree `d` can only exist when `d | m`.
pub fn divisibility_audit(d: usize, m: usize) -> bool {
    d != 0 && m.is_multiple_of(d)
}

/// Every `2 x 2` pair over `GF(3)` tested against
/// `Z^3 - XY Z - X^3 - Y^3`. Returns how many pairs were tried and those
/// that satisfy `Phi(M) = 0`.
pub fn exhaustive_gf3_2x2() -> Result<(usize, Vec<MatrixRep>), AlgebraError> {
    let f = Field::prime(3)?;
    let z = f.zero();
    let mut xy = MPoly::zero(2, &z);
    xy.add_term(vec![1, 1], f.one());
    let mut cubic = MPoly::zero(2, &z);
    cubic.add_term(vec![3, 0], f.one());
    cubic.add_term(vec![0, 3], f.one());
    let gp = GeneralPresentation::new(&f, 3, 2, vec![MPoly::zero(2, &z), xy, cubic])?;
    let all: Vec<Matrix<FieldElement>> = (0..81u32)
        .map(|k| Matrix::from_fn(2, 2, |i, j| f.from_int(((k / 3u32.pow((2 * i + j) as u32)) % 3) as i64)))
        .collect();
    let mut found = Vec::new();
    let mut tried = 0;
    for a in &all {
        for b in &all {
            tried += 1;
            let rep = MatrixRep::new(&f, vec![a.clone(), b.clone()])?;
            if is_representation(&gp, &rep)?.is_none() {
                found.push(rep);
            }
        }
    }
    Ok((tried, found))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_form(f: &Field) -> GeneralPresentation {
        // Z^3 - X^3 - Y^3
        let z = f.zero();
        let mut c = MPoly::zero(2, &z);
        c.add_term(vec![3, 0], f.one());
        c.add_term(vec![0, 3], f.one());
        GeneralPresentation::new(f, 3, 2, vec![MPoly::zero(2, &z), MPoly::zero(2, &z), c]).unwrap()
    }

    #[test]
    fn renders_general_form() {
        let q = Field::rationals();
        assert_eq!(diag_form(&q).to_string(), "Z^3 - (X^3 + Y^3)");
    }

    #[test]
    fn rejects_inhomogeneous() {
        let q = Field::rationals();
        let z = q.zero();
        let bad = MPoly::constant(2, q.one());
        let r = GeneralPresentation::new(&q, 1, 2, vec![bad]);
        assert!(matches!(r, Err(AlgebraError::Precondition(_))));
        assert!(GeneralPresentation::new(&q, 2, 2, vec![MPoly::zero(2, &z)]).is_err());
    }

    #[test]
    fn clifford_quadratic_form() {
        // Z^2 - (X^2 + Y^2): A = diag(1, -1), B = [[0, 1], [1, 0]] anticommute.
        let q = Field::rationals();
        let z = q.zero();
        let mut f2 = MPoly::zero(2, &z);
        f2.add_term(vec![2, 0], q.one());
        f2.add_term(vec![0, 2], q.one());
        let gp = GeneralPresentation::new(&q, 2, 2, vec![MPoly::zero(2, &z), f2]).unwrap();
        let a = Matrix::diagonal(vec![q.one(), q.from_int(-1)]);
        let b = Matrix::from_fn(2, 2, |i, j| if i != j { q.one() } else { q.zero() });
        let rep = MatrixRep::new(&q, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(is_representation(&gp, &rep).unwrap(), None);
        assert!(minimal_poly_check(&gp, &rep).unwrap());
        let bad = MatrixRep::new(&q, vec![a.clone(), a]).unwrap();
        let w = is_representation(&gp, &bad).unwrap().unwrap();
        assert_eq!(w.monomial, "X*Y");
        let p = Matrix::from_fn(2, 2, |i, j| q.from_int(1 + (i * 2 + j) as i64 % 3));
        assert_eq!(is_representation(&gp, &rep.conjugate(&p).unwrap()).unwrap(), None);
    }

    #[test]
    fn divisibility() {
        assert!(divisibility_audit(3, 6));
        assert!(!divisibility_audit(3, 2));
    }
}
