//! Characteristic 3: `Phi = Z^3 - e XY Z - (alpha X^3 + beta X^2 Y + gamma X Y^2 + delta Y^3)`.
//!
//! With `e = 0` the generator `x` is 3-central and `y = y2 - y1`; with
//! `e != 0` the form is first brought to `Z^3 - (X^2 - Y^2) Z - f`, after
//! which `x` is Artin-Schreier and `y = y0 + y1 + y2`.

use std::fmt;

use serde::Serialize;

use super::{centrality_checks, Builder, CheckReport, Named, X, Y1, Y2};
use crate::curve::{CurveModel, CurvePoint};
use crate::error::StructureError;
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::ncalg::{
    decompose_artin_schreier, decompose_pcentral, star_product_in, FreeAlgebra, NCPoly, Quotient, RewriteSystem,
};
use crate::poly::Poly;
use crate::repcheck::GeneralPresentation;
use crate::symbolalg::SymbolAlgebraSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Char3Branch {
    EZero,
    ENonzeroNormalized,
}

/// A characteristic-3 presentation. Inputs with `e != 0` are stored after
/// normalization, together with the matrix `T` expressing the original
/// variables in the new ones: `(X, Y) = T (X', Y')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Char3Presentation {
    pub field: Field,
    pub branch: Char3Branch,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
    /// The `XY Z` coefficient of the input form.
    pub raw_e: FieldElement,
    pub transform: Matrix<FieldElement>,
}

fn require_char3(field: &Field, alpha: &FieldElement) -> Result<(), StructureError> {
    if field.characteristic() != 3 {
        return Err(StructureError::WrongCharacteristic(field.characteristic()));
    }
    if alpha.is_zero() {
        return Err(StructureError::AlphaZero);
    }
    Ok(())
}

fn binary_form(field: &Field, cs: &[FieldElement]) -> MPoly<FieldElement> {
    let k = cs.len() as u32 - 1;
    let mut p = MPoly::zero(2, &field.zero());
    for (j, c) in cs.iter().enumerate() {
        p.add_term(vec![k - j as u32, j as u32], c.clone());
    }
    p
}

/// Substitutes `X_i -> sum_j m[i][j] X_j` into every form.
pub fn transform_general(gp: &GeneralPresentation, m: &Matrix<FieldElement>) -> GeneralPresentation {
    let z = gp.field.zero();
    let images: Vec<MPoly<FieldElement>> = (0..gp.n)
        .map(|i| {
            let mut p = MPoly::zero(gp.n, &z);
            for j in 0..gp.n {
                p.add_term(
                    (0..gp.n).map(|k| u32::from(k == j)).collect(),
                    m.get(i, j).clone(),
                );
            }
            p
        })
        .collect();
    let f = gp.f.iter().map(|fk| fk.substitute(&images)).collect();
    GeneralPresentation::new(&gp.field, gp.d, gp.n, f).expect("linear substitution keeps forms homogeneous")
}

impl Char3Presentation {
    /// `x^3 = alpha, y^3 = delta, x^2*y = beta, x*y^2 = gamma`.
    pub fn e_zero(field: &Field, c: [FieldElement; 4]) -> Result<Self, StructureError> {
        Self::build(field, Char3Branch::EZero, c, field.zero(), Matrix::identity(2, &field.zero()))
    }

    /// Already of the shape `Z^3 - (X^2 - Y^2) Z - f`.
    pub fn normalized(field: &Field, c: [FieldElement; 4]) -> Result<Self, StructureError> {
        Self::build(field, Char3Branch::ENonzeroNormalized, c, field.zero(), Matrix::identity(2, &field.zero()))
    }

    pub fn from_ints(field: &Field, branch: Char3Branch, c: [i64; 4]) -> Result<Self, StructureError> {
        let c = c.map(|k| field.from_int(k));
        match branch {
            Char3Branch::EZero => Self::e_zero(field, c),
            Char3Branch::ENonzeroNormalized => Self::normalized(field, c),
        }
    }

    fn build(
        field: &Field,
        branch: Char3Branch,
        c: [FieldElement; 4],
        raw_e: FieldElement,
        transform: Matrix<FieldElement>,
    ) -> Result<Self, StructureError> {
        for x in &c {
            if x.field() != field {
                return Err(crate::FieldError::Mismatch.into());
            }
        }
        let [alpha, beta, gamma, delta] = c;
        require_char3(field, &alpha)?;
        Ok(Char3Presentation { field: field.clone(), branch, alpha, beta, gamma, delta, raw_e, transform })
    }

    /// Reads `Z^3 - f2 Z - f3` with `f2 = e XY` or `f2 = X^2 - Y^2`,
    /// normalizing when `e != 0`.
    pub fn from_general(gp: &GeneralPresentation) -> Result<Self, StructureError> {
        let bc = super::BinaryCubic::from_general(gp)?;
        if bc.f1.iter().any(|c| !c.is_zero()) {
            return Err(StructureError::Shape("f1 must vanish in characteristic 3".into()));
        }
        let f = &bc.field;
        let [a, e, c] = bc.f2.clone();
        let f3 = bc.f3.clone();
        if a.is_zero() && c.is_zero() {
            if e.is_zero() {
                return Self::e_zero(f, f3);
            }
            return normalize_char3(gp);
        }
        if a == f.one() && e.is_zero() && c == -f.one() {
            return Self::normalized(f, f3);
        }
        Err(StructureError::Shape("f2 must be e*X*Y or X^2 - Y^2".into()))
    }

    /// `e XY` and `f3` as raw input.
    pub fn from_raw(field: &Field, e: &FieldElement, f3: [FieldElement; 4]) -> Result<Self, StructureError> {
        Self::from_general(&raw_general(field, e, &f3))
    }

    pub fn coefficients(&self) -> [&FieldElement; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    /// `delta + beta^3 + beta`, the constant in `y1^3 + y2^3`.
    pub fn k(&self) -> FieldElement {
        &(&self.delta + &self.beta.pow_u128(3)) + &self.beta
    }

    /// The form this presentation describes, in its own variables.
    pub fn to_general(&self) -> GeneralPresentation {
        let f = &self.field;
        let f2 = match self.branch {
            Char3Branch::EZero => MPoly::zero(2, &f.zero()),
            Char3Branch::ENonzeroNormalized => binary_form(f, &[f.one(), f.zero(), -f.one()]),
        };
        let f3 = binary_form(f, &[self.alpha.clone(), self.beta.clone(), self.gamma.clone(), self.delta.clone()]);
        GeneralPresentation::new(f, 3, 2, vec![MPoly::zero(2, &f.zero()), f2, f3]).expect("homogeneous")
    }

    /// The input form, recovered by undoing the recorded transform.
    pub fn original_general(&self) -> Result<GeneralPresentation, StructureError> {
        let inv = self.transform.inverse()?;
        Ok(transform_general(&self.to_general(), &inv))
    }
}

impl fmt::Display for Char3Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_general())
    }
}

fn raw_general(field: &Field, e: &FieldElement, f3: &[FieldElement; 4]) -> GeneralPresentation {
    let z = field.zero();
    GeneralPresentation::new(
        field,
        3,
        2,
        vec![MPoly::zero(2, &z), binary_form(field, &[z.clone(), e.clone(), z.clone()]), binary_form(field, f3)],
    )
    .expect("homogeneous")
}

/// Brings `Z^3 - e XY Z - f` with `e != 0` to `Z^3 - (X^2 - Y^2) Z - f'`
/// through `X' = -(eX + Y)`, `Y' = -(eX - Y)`, that is
/// `X = (X' + Y')/e`, `Y = X' - Y'` in characteristic 3. The substitution is
/// done symbolically and undone again as a check.
pub fn normalize_char3(gp: &GeneralPresentation) -> Result<Char3Presentation, StructureError> {
    let bc = super::BinaryCubic::from_general(gp)?;
    let f = &bc.field;
    require_char3(f, &bc.f3[0])?;
    let e = bc.f2[1].clone();
    if e.is_zero() {
        return Err(StructureError::Hypothesis("e = 0 belongs to the other branch".into()));
    }
    if bc.f1.iter().any(|c| !c.is_zero()) || !bc.f2[0].is_zero() || !bc.f2[2].is_zero() {
        return Err(StructureError::Shape("expected Z^3 - e*X*Y*Z - f3".into()));
    }
    let ei = e.inverse()?;
    let t = Matrix::from_rows(vec![vec![ei.clone(), ei], vec![f.one(), -f.one()]])?;
    let new = transform_general(gp, &t);
    let nb = super::BinaryCubic::from_general(&new)?;
    let expect_f2 = [f.one(), f.zero(), -f.one()];
    if nb.f1.iter().any(|c| !c.is_zero()) || nb.f2 != expect_f2 {
        return Err(StructureError::Verification(format!("normalization produced {new}")));
    }
    let pres = Char3Presentation::build(f, Char3Branch::ENonzeroNormalized, nb.f3.clone(), e, t)?;
    if pres.original_general()? != *gp {
        return Err(StructureError::Verification("normalization does not round-trip".into()));
    }
    Ok(pres)
}

/// `Delta = -gamma^3 alpha + gamma^2 beta^2 - beta^3 delta + beta^6`.
pub fn delta_char3(pres: &Char3Presentation) -> FieldElement {
    let Char3Presentation { alpha, beta, gamma, delta, .. } = pres;
    let g2 = gamma * gamma;
    let b3 = &(beta * beta) * beta;
    &(&(&(&g2 * &(beta * beta)) - &(&(&g2 * gamma) * alpha)) - &(&b3 * delta)) + &(&b3 * &b3)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Char3Invariants {
    pub branch: Char3Branch,
    /// `Delta`, for `e = 0`.
    #[serde(serialize_with = "crate::ser_opt_display")]
    pub delta: Option<FieldElement>,
    /// `delta + beta^3 + beta`, for `e != 0`.
    #[serde(serialize_with = "crate::ser_opt_display")]
    pub k: Option<FieldElement>,
    /// `c0, c1, c2, c3` in `s^2 = c3 r^3 + c2 r^2 + c1 r + c0`.
    #[serde(serialize_with = "crate::ser_vec_display")]
    pub curve_coefficients: Vec<FieldElement>,
    /// `beta = gamma = 0` for `e = 0`; `delta + beta^3 + beta = 0` for `e != 0`.
    pub azumaya_obstruction: bool,
}

pub fn invariants(pres: &Char3Presentation) -> Char3Invariants {
    let h = curve_poly(pres);
    let coeffs = (0..4).map(|k| h.coeff(k)).collect();
    match pres.branch {
        Char3Branch::EZero => Char3Invariants {
            branch: pres.branch,
            delta: Some(delta_char3(pres)),
            k: None,
            curve_coefficients: coeffs,
            azumaya_obstruction: pres.beta.is_zero() && pres.gamma.is_zero(),
        },
        Char3Branch::ENonzeroNormalized => Char3Invariants {
            branch: pres.branch,
            delta: None,
            k: Some(pres.k()),
            curve_coefficients: coeffs,
            azumaya_obstruction: pres.k().is_zero(),
        },
    }
}

/// `r^3 + Delta`, or `r^3 + r^2 - (gamma^2 + gamma) r - alpha^2 - alpha gamma^3 + alpha gamma + K^2`.
fn curve_poly(pres: &Char3Presentation) -> Poly<FieldElement> {
    let f = &pres.field;
    let z = f.zero();
    match pres.branch {
        Char3Branch::EZero => Poly::new(vec![delta_char3(pres), z.clone(), z, f.one()], &f.zero()),
        Char3Branch::ENonzeroNormalized => {
            let Char3Presentation { alpha, gamma, .. } = pres;
            let k = pres.k();
            let c1 = -&(&(gamma * gamma) + gamma);
            let c0 = &(&(&(&k * &k) - &(alpha * alpha)) - &(alpha * &gamma.pow_u128(3))) + &(alpha * gamma);
            Poly::new(vec![c0, c1, f.one(), f.one()], &z)
        }
    }
}

pub fn curve_char3(pres: &Char3Presentation) -> CurveModel {
    let label = match pres.branch {
        Char3Branch::EZero => "E_Delta",
        Char3Branch::ENonzeroNormalized => "E",
    };
    CurveModel::weierstrass(label, ("r", "s"), &curve_poly(pres))
}

/// `e = 0`: `x^3 -> alpha`, `y2 x -> x y2 - y1`, `y1 x -> x y1 - beta`,
/// `y1 y2 -> y2 y1 + gamma`, `y2^3 -> y1^3 + delta`.
///
/// `e != 0`: `x^3 -> x + alpha`, `y1 x -> (x + 1) y1`, `y2 x -> (x + 2) y2`,
/// `y1 y2 -> y2 y1 - x + gamma`, `y2^3 -> -y1^3 + K`.
pub fn rewrite_system_char3(pres: &Char3Presentation) -> Result<RewriteSystem, StructureError> {
    let f = &pres.field;
    let b = Builder::new(f);
    let one = f.one();
    let rules = match pres.branch {
        Char3Branch::EZero => vec![
            b.rule(&[X, X, X], b.constant(&pres.alpha)),
            b.rule(&[Y1, X], b.mono(&[X, Y1]).sub(&b.constant(&pres.beta))),
            b.rule(&[Y2, X], b.mono(&[X, Y2]).sub(&b.mono(&[Y1]))),
            b.rule(&[Y1, Y2], b.mono(&[Y2, Y1]).add(&b.constant(&pres.gamma))),
            b.rule(&[Y2, Y2, Y2], b.mono(&[Y1, Y1, Y1]).add(&b.constant(&pres.delta))),
        ],
        Char3Branch::ENonzeroNormalized => vec![
            b.rule(&[X, X, X], b.mono(&[X]).add(&b.constant(&pres.alpha))),
            b.rule(&[Y1, X], b.mono(&[X, Y1]).add(&b.mono(&[Y1]))),
            b.rule(&[Y2, X], b.mono(&[X, Y2]).add(&b.word(&[Y2], &(&one + &one)))),
            b.rule(&[Y1, Y2], b.mono(&[Y2, Y1]).sub(&b.mono(&[X])).add(&b.constant(&pres.gamma))),
            b.rule(&[Y2, Y2, Y2], b.constant(&pres.k()).sub(&b.mono(&[Y1, Y1, Y1]))),
        ],
    };
    Ok(b.system(rules)?)
}

#[derive(Clone, Debug)]
pub struct Char3Structure {
    pub pres: Char3Presentation,
    pub quotient: Quotient,
    pub named: Named,
}

impl Char3Structure {
    pub fn new(pres: &Char3Presentation) -> Result<Self, StructureError> {
        let quotient = Quotient::new(rewrite_system_char3(pres)?);
        let f = &pres.field;
        let b = Builder::new(f);
        let (x, y1, y2) = (b.mono(&[X]), b.mono(&[Y1]), b.mono(&[Y2]));
        let named = match pres.branch {
            Char3Branch::EZero => {
                // w = beta y2 + gamma x + y1^2
                let w = y2.scale(&pres.beta).add(&x.scale(&pres.gamma)).add(&b.mono(&[Y1, Y1]));
                Named { y0: b.constant(&pres.beta), y: y2.sub(&y1), w, x, y1, y2 }
            }
            Char3Branch::ENonzeroNormalized => {
                // w = y2 y1 - x^2 + (1 - gamma) x
                let w = b.mono(&[Y2, Y1]).sub(&b.mono(&[X, X])).add(&x.scale(&(&f.one() - &pres.gamma)));
                let y0 = b.constant(&-&pres.beta);
                Named { y: y0.add(&y1).add(&y2), y0, w, x, y1, y2 }
            }
        };
        Ok(Char3Structure { pres: pres.clone(), quotient, named })
    }

    pub fn with_quotient(&self, quotient: Quotient) -> Self {
        Char3Structure { quotient, ..self.clone() }
    }

    pub fn nf(&self, p: &NCPoly) -> NCPoly {
        self.quotient.reduce(p)
    }

    fn b(&self) -> Builder {
        Builder::new(&self.pres.field)
    }

    /// Commutators of `w, y1^3, y2^3` with the generators and, for `e = 0`
    /// with `beta != 0`, the Artin-Schreier pair of `z = beta^{-1} x y1`.
    pub fn verify_central(&self) -> Result<CheckReport, StructureError> {
        let n = &self.named;
        let (y1c, y2c) = (n.y1.pow(3), n.y2.pow(3));
        let mut report = centrality_checks(
            &self.quotient,
            &[("w", &n.w), ("y1^3", &y1c), ("y2^3", &y2c)],
            &[("x", &n.x), ("y1", &n.y1), ("y2", &n.y2)],
        );
        let p = &self.pres;
        if p.branch == Char3Branch::EZero && !p.beta.is_zero() {
            let bi = p.beta.inverse()?;
            let z = n.x.mul(&n.y1).scale(&bi);
            let xz = n.x.mul(&z).sub(&z.mul(&n.x)).sub(&n.x);
            report.push_zero("xz - zx = x", &self.quotient, &xz);
            let rhs = y1c.scale(&(&p.alpha * &bi.pow_u128(3)));
            report.push_zero("z^3 - z = alpha beta^-3 y1^3", &self.quotient, &z.pow(3).sub(&z).sub(&rhs));
        }
        Ok(report)
    }

    /// `lhs - rhs` of the four defining relations with `y` substituted.
    pub fn defining_relations(&self) -> Vec<(String, NCPoly)> {
        let n = &self.named;
        let p = &self.pres;
        let b = self.b();
        let free = FreeAlgebra::new(b.alphabet.clone(), p.field.clone());
        let (x, y) = (&n.x, &n.y);
        let x2y = star_product_in(&free, &[(x.clone(), 2), (y.clone(), 1)]).expect("nonempty");
        let xy2 = star_product_in(&free, &[(x.clone(), 1), (y.clone(), 2)]).expect("nonempty");
        let c = |k: &FieldElement| b.constant(k);
        match p.branch {
            Char3Branch::EZero => vec![
                ("x^3 = alpha".into(), x.pow(3).sub(&c(&p.alpha))),
                ("y^3 = delta".into(), y.pow(3).sub(&c(&p.delta))),
                ("x^2*y = beta".into(), x2y.sub(&c(&p.beta))),
                ("x*y^2 = gamma".into(), xy2.sub(&c(&p.gamma))),
            ],
            Char3Branch::ENonzeroNormalized => vec![
                ("x^3 - x = alpha".into(), x.pow(3).sub(x).sub(&c(&p.alpha))),
                ("y^3 + y = delta".into(), y.pow(3).add(y).sub(&c(&p.delta))),
                ("x^2*y - y = beta".into(), x2y.sub(y).sub(&c(&p.beta))),
                ("x*y^2 + x = gamma".into(), xy2.add(x).sub(&c(&p.gamma))),
            ],
        }
    }

    /// Defining relations, the cubic relation between `y1^3` and `y2^3`,
    /// and the relation between `w` and `y1^3` that yields the curve.
    pub fn verify_identities(&self) -> CheckReport {
        let n = &self.named;
        let p = &self.pres;
        let b = self.b();
        let mut report = CheckReport::default();
        for (name, rel) in self.defining_relations() {
            report.push_zero(name, &self.quotient, &rel);
        }
        let (y13, y23) = (n.y1.pow(3), n.y2.pow(3));
        let w3 = n.w.pow(3);
        match p.branch {
            Char3Branch::EZero => {
                report.push_zero("y2^3 - y1^3 = delta", &self.quotient, &y23.sub(&y13).sub(&b.constant(&p.delta)));
                if !p.beta.is_zero() {
                    let s = y13.sub(&b.constant(&p.beta.pow_u128(3)));
                    let id = w3.add(&b.constant(&delta_char3(p))).sub(&s.pow(2));
                    report.push_zero("w^3 + Delta = (y1^3 - beta^3)^2", &self.quotient, &id);
                }
            }
            Char3Branch::ENonzeroNormalized => {
                let k = p.k();
                report.push_zero("y1^3 + y2^3 = K", &self.quotient, &y13.add(&y23).sub(&b.constant(&k)));
                let (a, g) = (&p.alpha, &p.gamma);
                let c0 = &(&-&(a * a) - &(a * &g.pow_u128(3))) + &(a * g);
                let rhs = y13
                    .scale(&k)
                    .sub(&y13.pow(2))
                    .add(&n.w.pow(2))
                    .add(&n.w.scale(&(&(g * g) + g)))
                    .add(&b.constant(&c0));
                report.push_zero("w^3 = K y1^3 - y1^6 + w^2 + (gamma^2 + gamma) w + c", &self.quotient, &w3.sub(&rhs));
            }
        }
        report
    }

    /// The eigenpart decompositions recover `y1, y2` (and `y0`) from `y` and `x`.
    pub fn decomposition_consistency(&self) -> Result<CheckReport, StructureError> {
        let n = &self.named;
        let q = &self.quotient;
        let y = q.reduce(&n.y);
        let mut report = CheckReport::default();
        let mut cmp = |name: &str, got: &NCPoly, want: &NCPoly| {
            report.push_zero(name, q, &got.sub(want));
        };
        match self.pres.branch {
            Char3Branch::EZero => {
                let parts = decompose_pcentral(q, &y, &n.x, 3)?;
                cmp("z0 = y0", &parts[0], &n.y0);
                cmp("z1 = y1", &parts[1], &n.y1);
                cmp("z2 = y2", &parts[2], &n.y2);
            }
            Char3Branch::ENonzeroNormalized => {
                let parts = decompose_artin_schreier(q, &y, &n.x, 3)?;
                cmp("t0 = y0", &parts.t[0], &n.y0);
                cmp("t1 = y1", &parts.t[1], &n.y1);
                cmp("t2 = y2", &parts.t[2], &n.y2);
            }
        }
        Ok(report)
    }
}

/// Which classification applies to a simple image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Char3Case {
    /// `e = 0`, `beta != 0`.
    BetaNonzero,
    /// `e = 0`, `beta = gamma = 0`: images of `C[y1^{-1}]`.
    BetaGammaZero,
    /// `e != 0`, `K != 0`.
    KNonzero,
    /// `e != 0`, `K = 0`: images of `C[y1^{-3}]`.
    KZero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Char3Image {
    pub case: Char3Case,
    pub algebra: SymbolAlgebraSpec,
    /// `Some(false)` when the whole algebra is known not to be Azumaya,
    /// `None` when undetermined.
    pub azumaya: Option<bool>,
    /// Element inverted to obtain an Azumaya localization.
    pub localized_at: Option<&'static str>,
}

/// The simple image at a point of the curve (or at a nonzero scalar `s0`
/// when `e = beta = gamma = 0`).
pub fn simple_image_char3(pres: &Char3Presentation, pt: &CurvePoint) -> Result<Char3Image, StructureError> {
    let l = pt.field().clone();
    if !l.extends(&pres.field) {
        return Err(crate::FieldError::Mismatch.into());
    }
    let emb = |x: &FieldElement| l.embed(x);
    let alpha = emb(&pres.alpha)?;
    let s0 = pt.s.clone();
    let on_curve = || -> Result<(), StructureError> {
        if pt.r.is_none() {
            return Err(StructureError::NotOnCurve(format!("{pt} (both r0 and s0 are needed)")));
        }
        pt.on(&curve_char3(pres))
    };
    let (case, a, b, azumaya, localized_at) = match pres.branch {
        Char3Branch::EZero if !pres.beta.is_zero() => {
            on_curve()?;
            let b3 = emb(&pres.beta.pow_u128(3))?;
            let a = &(&alpha * &b3.inverse()?) * &(&s0 + &b3);
            (Char3Case::BetaNonzero, a, alpha, Some(true), None)
        }
        Char3Branch::EZero if !pres.gamma.is_zero() => {
            return Err(StructureError::Hypothesis(
                "beta = 0 with gamma != 0: swap the roles of X and Y first".into(),
            ));
        }
        Char3Branch::EZero => {
            if pt.r.is_some() {
                return Err(StructureError::Hypothesis("the center is F[y1]; give s0 alone".into()));
            }
            if s0.is_zero() {
                return Err(StructureError::Hypothesis("s0 must be nonzero".into()));
            }
            let s3 = s0.pow_u128(3);
            let a = &(&alpha * &(&s3 + &emb(&pres.delta)?)) * &s3.inverse()?;
            (Char3Case::BetaGammaZero, a, alpha, Some(false), Some("y1"))
        }
        Char3Branch::ENonzeroNormalized => {
            on_curve()?;
            let k = emb(&pres.k())?;
            if !k.is_zero() {
                if s0 != k {
                    (Char3Case::KNonzero, alpha, &s0 - &k, Some(true), None)
                } else {
                    (Char3Case::KNonzero, -alpha, k, Some(true), None)
                }
            } else {
                if s0.is_zero() {
                    return Err(StructureError::Hypothesis("s0 must be nonzero when delta + beta^3 + beta = 0".into()));
                }
                (Char3Case::KZero, alpha, s0, None, Some("y1^3"))
            }
        }
    };
    Ok(Char3Image { case, algebra: SymbolAlgebraSpec::artin_schreier(a, b)?, azumaya, localized_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{overlap_check, Word};

    fn gf3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn delta_examples() {
        let f = gf3();
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 1, 2, 1]).unwrap();
        assert_eq!(delta_char3(&p), f.from_int(2));
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 1, 0, 1]).unwrap();
        assert!(delta_char3(&p).is_zero());
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [2, 0, 0, 1]).unwrap();
        assert!(delta_char3(&p).is_zero());
    }

    #[test]
    fn curves() {
        let f = gf3();
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 1, 2, 1]).unwrap();
        assert_eq!(curve_char3(&p).to_string(), "s^2 = r^3 + 2");
        let p = Char3Presentation::from_ints(&f, Char3Branch::ENonzeroNormalized, [1, 0, 1, 1]).unwrap();
        assert_eq!(curve_char3(&p).to_string(), "s^2 = r^3 + r^2 + r");
    }

    #[test]
    fn normal_forms() {
        let f = gf3();
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 1, 2, 1]).unwrap();
        let st = Char3Structure::new(&p).unwrap();
        let b = Builder::new(&f);
        assert_eq!(st.nf(&b.mono(&[Y1, X])), b.mono(&[X, Y1]).sub(&b.constant(&f.one())));
        assert_eq!(st.nf(&b.mono(&[Y2, Y2, Y2])), b.mono(&[Y1, Y1, Y1]).add(&b.constant(&f.one())));
        let p = Char3Presentation::from_ints(&f, Char3Branch::ENonzeroNormalized, [1, 0, 1, 1]).unwrap();
        let st = Char3Structure::new(&p).unwrap();
        let e = b.mono(&[Y1, Y1, Y1]).add(&b.mono(&[Y2, Y2, Y2])).sub(&b.constant(&p.k()));
        assert!(st.nf(&e).is_zero());
    }

    #[test]
    fn both_branches_pass_all_checks() {
        let f = gf3();
        for (branch, c) in [(Char3Branch::EZero, [1, 1, 2, 1]), (Char3Branch::ENonzeroNormalized, [1, 0, 1, 1])] {
            let st = Char3Structure::new(&Char3Presentation::from_ints(&f, branch, c).unwrap()).unwrap();
            let central = st.verify_central().unwrap();
            assert!(central.all_ok(), "{central}");
            let ids = st.verify_identities();
            assert!(ids.all_ok(), "{ids}");
            assert!(st.decomposition_consistency().unwrap().all_ok());
            assert!(overlap_check(&st.quotient.system, 8).is_empty());
        }
    }

    #[test]
    fn corrupted_commutator_rule_is_caught() {
        let f = gf3();
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 1, 2, 1]).unwrap();
        let st = Char3Structure::new(&p).unwrap();
        let b = Builder::new(&f);
        let mut rules: Vec<_> = st.quotient.system.rules().to_vec();
        let i = rules.iter().position(|r| r.lhs == Word(vec![Y1, Y2])).unwrap();
        rules[i] = b.rule(&[Y1, Y2], b.mono(&[Y2, Y1]).add(&b.constant(&(&p.gamma + &f.one()))));
        let bad = st.with_quotient(Quotient::new(b.system(rules).unwrap()));
        let report = bad.verify_central().unwrap();
        assert!(report.failures().any(|c| c.name == "[w, y1]"));
    }

    #[test]
    fn normalization_round_trips() {
        let f = gf3();
        let two = f.from_int(2);
        let raw = raw_general(&f, &two, &[f.one(), f.zero(), f.zero(), f.zero()]);
        let p = normalize_char3(&raw).unwrap();
        assert_eq!(p.branch, Char3Branch::ENonzeroNormalized);
        assert_eq!(p.original_general().unwrap(), raw);
        // X = (X' + Y')/2 = 2(X' + Y'), so X^3 = 2(X'^3 + Y'^3)
        assert_eq!(p.coefficients().map(|c| c.clone()), [two.clone(), f.zero(), f.zero(), two]);
        let id = Char3Presentation::from_general(&p.to_general()).unwrap();
        assert_eq!(id.transform, Matrix::identity(2, &f.zero()));
    }

    #[test]
    fn image_examples() {
        let f = gf3();
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 1, 2, 1]).unwrap();
        let img = simple_image_char3(&p, &CurvePoint::new(f.from_int(2), f.one()).unwrap()).unwrap();
        assert_eq!(img.algebra.to_string(), "[2, 1)_{3, GF(3)}");
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 0, 0, 1]).unwrap();
        let img = simple_image_char3(&p, &CurvePoint::scalar(f.one())).unwrap();
        assert_eq!((img.algebra.to_string().as_str(), img.azumaya), ("[2, 1)_{3, GF(3)}", Some(false)));
        let p = Char3Presentation::from_ints(&f, Char3Branch::ENonzeroNormalized, [1, 0, 1, 1]).unwrap();
        let img = simple_image_char3(&p, &CurvePoint::new(f.one(), f.zero()).unwrap()).unwrap();
        assert_eq!(img.algebra.to_string(), "[1, 2)_{3, GF(3)}");
        let at_k = simple_image_char3(&p, &CurvePoint::new(f.zero(), f.zero()).unwrap());
        assert!(at_k.is_ok());
    }

    #[test]
    fn swapped_case_is_refused() {
        let f = gf3();
        let p = Char3Presentation::from_ints(&f, Char3Branch::EZero, [1, 0, 1, 1]).unwrap();
        let r = simple_image_char3(&p, &CurvePoint::new(f.zero(), f.one()).unwrap());
        assert!(matches!(r, Err(StructureError::Hypothesis(_))));
    }
}
