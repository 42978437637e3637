//! Characteristic other than 3, with a primitive cube root of unity in the
//! base field: `y = y0 + y1 + y2` with `y_k x = rho^k x y_k`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{centrality_checks, Builder, CheckReport, CubicPresentation, Named, X, Y1, Y2};
use crate::curve::{CurveModel, CurvePoint};
use crate::error::StructureError;
use crate::field::{CubeRoot, Field, FieldElement};
use crate::matrix::Matrix;
use crate::ncalg::{star_product_in, MatrixAlgebra, NCPoly, Quotient, Algebra};
use crate::poly::Poly;
use crate::repcheck::MatrixRep;
use crate::symbolalg::SymbolAlgebraSpec;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Char0Invariants {
    #[serde(serialize_with = "crate::ser_display")]
    pub d1: FieldElement,
    #[serde(serialize_with = "crate::ser_display")]
    pub d2: FieldElement,
    #[serde(serialize_with = "crate::ser_display")]
    pub d: FieldElement,
}

impl Char0Invariants {
    /// The simple-image classification needs `D != 0`.
    pub fn d_nonzero(&self) -> bool {
        !self.d.is_zero()
    }
}

fn require_family(pres: &CubicPresentation) -> Result<FieldElement, StructureError> {
    let p = pres.field.characteristic();
    if p == 3 {
        return Err(StructureError::WrongCharacteristic(3));
    }
    if pres.alpha.is_zero() {
        return Err(StructureError::AlphaZero);
    }
    pres.field.rho().ok_or(StructureError::NoRho)
}

fn q(f: &Field, n: i64, d: i64) -> FieldElement {
    f.from_ratio(n, d).expect("denominators are powers of 3")
}

/// `D1 = gamma + e r/3 - beta^2/(3 alpha)`, `D2 = e beta - 3 alpha t - alpha r^2`,
/// `D = e^3/(27 alpha) + beta^3/(27 alpha^2) - 2 r^3/27 + beta D1/(3 alpha) - r t/3 - delta`.
pub fn invariants(pres: &CubicPresentation) -> Result<Char0Invariants, StructureError> {
    require_family(pres)?;
    let f = &pres.field;
    let CubicPresentation { r, t, e, alpha, beta, gamma, delta, .. } = pres;
    let inv_a = alpha.inverse()?;
    let third = q(f, 1, 3);
    let d1 = gamma + &(&(&(e * r) * &third) - &(&(&(beta * beta) * &third) * &inv_a));
    let d2 = &(e * beta) - &(&(&f.from_int(3) * alpha) * t) - (alpha * &(r * r));
    let e3 = &(e * e) * e;
    let b3 = &(beta * beta) * beta;
    let r3 = &(r * r) * r;
    let terms = [
        &(&e3 * &q(f, 1, 27)) * &inv_a,
        &(&b3 * &q(f, 1, 27)) * &(&inv_a * &inv_a),
        -&(&r3 * &q(f, 2, 27)),
        &(&(beta * &d1) * &third) * &inv_a,
        -&(&(r * t) * &third),
        -delta.clone(),
    ];
    let d = terms.iter().fold(f.zero(), |acc, x| &acc + x);
    Ok(Char0Invariants { d1, d2, d })
}

/// `y0 = (3 alpha)^{-1} (e x^2 + beta x + alpha r)`.
pub fn y0_expression(pres: &CubicPresentation) -> Result<NCPoly, StructureError> {
    require_family(pres)?;
    let b = Builder::new(&pres.field);
    let k = (&pres.field.from_int(3) * &pres.alpha).inverse()?;
    let p = b.word(&[X, X], &pres.e).add(&b.word(&[X], &pres.beta)).add(&b.constant(&(&pres.alpha * &pres.r)));
    Ok(p.scale(&k))
}

/// `w = x^{-1} y2 y1 + rho^2 D1/(3 alpha) x + D2/(9 alpha) x^{-1}` with
/// `x^{-1} = alpha^{-1} x^2`.
pub fn w_expression(pres: &CubicPresentation) -> Result<NCPoly, StructureError> {
    let rho = require_family(pres)?;
    let inv = invariants(pres)?;
    let f = &pres.field;
    let b = Builder::new(f);
    let inv_a = pres.alpha.inverse()?;
    let rho2 = &rho * &rho;
    let c1 = &(&(&rho2 * &inv.d1) * &q(f, 1, 3)) * &inv_a;
    let c2 = &(&(&inv.d2 * &q(f, 1, 9)) * &inv_a) * &inv_a;
    Ok(b.word(&[X, X, Y2, Y1], &inv_a).add(&b.word(&[X], &c1)).add(&b.word(&[X, X], &c2)))
}

/// `x^3 -> alpha`, `y_k x -> rho^k x y_k`,
/// `y1 y2 -> rho y2 y1 + (1-rho) D1/(3 alpha) x^2 - (1-rho) D2/(9 alpha)`,
/// `y2^3 -> rho^2 e w - D - y1^3`.
pub fn rewrite_system(pres: &CubicPresentation) -> Result<crate::ncalg::RewriteSystem, StructureError> {
    let rho = require_family(pres)?;
    let inv = invariants(pres)?;
    let f = &pres.field;
    let b = Builder::new(f);
    let rho2 = &rho * &rho;
    let inv_a = pres.alpha.inverse()?;
    let one_minus_rho = &f.one() - &rho;
    let c_x2 = &(&(&one_minus_rho * &inv.d1) * &q(f, 1, 3)) * &inv_a;
    let c_1 = -&(&(&(&one_minus_rho * &inv.d2) * &q(f, 1, 9)) * &inv_a);
    let w = w_expression(pres)?;
    let rules = vec![
        b.rule(&[X, X, X], b.constant(&pres.alpha)),
        b.rule(&[Y1, X], b.word(&[X, Y1], &rho)),
        b.rule(&[Y2, X], b.word(&[X, Y2], &rho2)),
        b.rule(&[Y1, Y2], b.word(&[Y2, Y1], &rho).add(&b.word(&[X, X], &c_x2)).add(&b.constant(&c_1))),
        b.rule(
            &[Y2, Y2, Y2],
            w.scale(&(&rho2 * &pres.e)).sub(&b.constant(&inv.d)).sub(&b.mono(&[Y1, Y1, Y1])),
        ),
    ];
    Ok(b.system(rules)?)
}

/// A presentation together with its invariants, rewriting quotient and the
/// named elements `x, y0, y1, y2, y, w`.
#[derive(Clone, Debug)]
pub struct Char0Structure {
    pub pres: CubicPresentation,
    pub invariants: Char0Invariants,
    pub rho: FieldElement,
    pub quotient: Quotient,
    pub named: Named,
}

impl Char0Structure {
    pub fn new(pres: &CubicPresentation) -> Result<Self, StructureError> {
        let rho = require_family(pres)?;
        let invariants = invariants(pres)?;
        let quotient = Quotient::new(rewrite_system(pres)?);
        let b = Builder::new(&pres.field);
        let y0 = y0_expression(pres)?;
        let (x, y1, y2) = (b.mono(&[X]), b.mono(&[Y1]), b.mono(&[Y2]));
        let y = y0.add(&y1).add(&y2);
        let w = w_expression(pres)?;
        Ok(Char0Structure {
            pres: pres.clone(),
            invariants,
            rho,
            quotient,
            named: Named { x, y1, y2, y0, y, w },
        })
    }

    /// Same presentation with a different (for example corrupted) quotient.
    pub fn with_quotient(&self, quotient: Quotient) -> Self {
        Char0Structure { quotient, ..self.clone() }
    }

    pub fn nf(&self, p: &NCPoly) -> NCPoly {
        self.quotient.reduce(p)
    }

    /// `w`, `y1^3` and `y2^3` commute with `x`, `y1`, `y2`.
    pub fn verify_centrality(&self) -> CheckReport {
        let n = &self.named;
        let y1c = n.y1.pow(3);
        let y2c = n.y2.pow(3);
        centrality_checks(
            &self.quotient,
            &[("w", &n.w), ("y1^3", &y1c), ("y2^3", &y2c)],
            &[("x", &n.x), ("y1", &n.y1), ("y2", &n.y2)],
        )
    }

    /// `D + y1^3 + y2^3 - rho^2 e w = 0` and the four defining relations
    /// with `y = y0 + y1 + y2`.
    pub fn verify_identities(&self) -> CheckReport {
        let n = &self.named;
        let p = &self.pres;
        let b = Builder::new(&p.field);
        let rho2 = &self.rho * &self.rho;
        let mut report = CheckReport::default();
        let cube_sum = b
            .constant(&self.invariants.d)
            .add(&n.y1.pow(3))
            .add(&n.y2.pow(3))
            .sub(&n.w.scale(&(&rho2 * &p.e)));
        report.push_zero("D + y1^3 + y2^3 - rho^2 e w", &self.quotient, &cube_sum);
        for (name, rel) in self.defining_relations() {
            report.push_zero(name, &self.quotient, &rel);
        }
        report
    }

    /// `lhs - rhs` for each defining relation, in the free algebra on
    /// `x, y1, y2` with `y` substituted.
    pub fn defining_relations(&self) -> Vec<(String, NCPoly)> {
        let n = &self.named;
        let p = &self.pres;
        let b = Builder::new(&p.field);
        let free = crate::ncalg::FreeAlgebra::new(b.alphabet.clone(), p.field.clone());
        let (x, y) = (&n.x, &n.y);
        let x2y = star_product_in(&free, &[(x.clone(), 2), (y.clone(), 1)]).expect("nonempty");
        let xy2 = star_product_in(&free, &[(x.clone(), 1), (y.clone(), 2)]).expect("nonempty");
        let c = |k: &FieldElement| b.constant(k);
        vec![
            ("x^3 = alpha".into(), x.pow(3).sub(&c(&p.alpha))),
            (
                "x^2*y = r x^2 + e x + beta".into(),
                x2y.sub(&x.pow(2).scale(&p.r)).sub(&x.scale(&p.e)).sub(&c(&p.beta)),
            ),
            (
                "x*y^2 = r xy + r yx + t x + e y + gamma".into(),
                xy2.sub(&x.mul(y).add(&y.mul(x)).scale(&p.r))
                    .sub(&x.scale(&p.t))
                    .sub(&y.scale(&p.e))
                    .sub(&c(&p.gamma)),
            ),
            (
                "y^3 = r y^2 + t y + delta".into(),
                y.pow(3).sub(&y.pow(2).scale(&p.r)).sub(&y.scale(&p.t)).sub(&c(&p.delta)),
            ),
        ]
    }
}

/// `(D - rho^2 e R) S + S^2 + alpha R^3 - D1^3/(27 alpha) - D2^3/(729 alpha^3) - rho^2 D1 D2/(9 alpha) R = 0`.
pub fn curve(pres: &CubicPresentation) -> Result<CurveModel, StructureError> {
    let rho = require_family(pres)?;
    let inv = invariants(pres)?;
    let f = &pres.field;
    let z = f.zero();
    let rho2 = &rho * &rho;
    let inv_a = pres.alpha.inverse()?;
    let b = Poly::new(vec![inv.d.clone(), -&(&rho2 * &pres.e)], &z);
    let d1c = &(&inv.d1 * &inv.d1) * &inv.d1;
    let d2c = &(&inv.d2 * &inv.d2) * &inv.d2;
    let c0 = -&(&(&d1c * &q(f, 1, 27)) * &inv_a) - (&(&d2c * &q(f, 1, 729)) * &inv_a.pow_u128(3));
    let c1 = -&(&(&(&rho2 * &inv.d1) * &inv.d2) * &(&q(f, 1, 9) * &inv_a));
    let c = Poly::new(vec![c0, c1, z.clone(), pres.alpha.clone()], &z);
    Ok(CurveModel::quadratic_in_s("E", ("R", "S"), &b, &c))
}

/// How the base-field hypothesis "x^3 = alpha generates a field" was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeCheck {
    /// Decide with the field arithmetic; refuse when undecidable.
    Decide,
    /// The caller vouches that alpha is not a cube.
    Asserted,
}

/// Checks `D != 0` and that `alpha` is not a cube in the base field.
pub fn check_image_hypotheses(
    pres: &CubicPresentation,
    cube: CubeCheck,
) -> Result<Char0Invariants, StructureError> {
    let inv = invariants(pres)?;
    if !inv.d_nonzero() {
        return Err(StructureError::DZero);
    }
    match pres.field.cube_root(&pres.alpha) {
        CubeRoot::Exists(_) => return Err(StructureError::AlphaIsCube),
        CubeRoot::Unknown if cube == CubeCheck::Decide => return Err(StructureError::AlphaCubeUnknown),
        _ => {}
    }
    Ok(inv)
}

/// The simple image at `(R0, S0)`: `(alpha, S0)` if `S0 != 0`, otherwise
/// `(rho^2 e R0 - D, alpha)`, over the field of the point.
pub fn simple_image(
    pres: &CubicPresentation,
    pt: &CurvePoint,
    cube: CubeCheck,
) -> Result<SymbolAlgebraSpec, StructureError> {
    let inv = check_image_hypotheses(pres, cube)?;
    let e = curve(pres)?;
    let r0 = pt.r.clone().ok_or_else(|| StructureError::NotOnCurve(pt.to_string()))?;
    pt.on(&e)?;
    let l = pt.field().clone();
    let emb = |x: &FieldElement| l.embed(x);
    let alpha = emb(&pres.alpha)?;
    let rho = l.rho().ok_or(StructureError::NoRho)?;
    let y2_cubed = &(&(&(&rho * &rho) * &emb(&pres.e)?) * &r0) - &emb(&inv.d)? - pt.s.clone();
    if pt.s.is_zero() && y2_cubed.is_zero() {
        return Err(StructureError::Verification("y1^3 and y2^3 vanish together at this point".into()));
    }
    if !pt.s.is_zero() {
        SymbolAlgebraSpec::root_of_unity(alpha, pt.s.clone())
    } else {
        SymbolAlgebraSpec::root_of_unity(y2_cubed, alpha)
    }
}

/// A cube root of `a` in `l`: decided where possible, otherwise one of the
/// tower generators if it happens to work.
pub fn find_cube_root(l: &Field, a: &FieldElement) -> Option<FieldElement> {
    match l.cube_root(a) {
        CubeRoot::Exists(c) => Some(c),
        CubeRoot::None => None,
        CubeRoot::Unknown => {
            let rho = l.rho();
            (0..l.num_levels()).map(|i| l.generator(i)).find_map(|g| {
                let mut cand = vec![g.clone(), -&g];
                if let Some(r) = &rho {
                    cand.push(&g * r);
                    cand.push(&(&g * r) * r);
                }
                cand.into_iter().find(|c| &(c * c) * c == *a)
            })
        }
    }
}

/// The 3x3 representation at `pt`, over `l` which must contain the point's
/// field and a cube root of alpha. All defining relations are checked before
/// returning.
pub fn build_representation(
    pres: &CubicPresentation,
    pt: &CurvePoint,
    l: &Field,
) -> Result<MatrixRep, StructureError> {
    let inv = invariants(pres)?;
    let e = curve(pres)?;
    pt.on(&e)?;
    let r0 = l.embed(pt.r.as_ref().ok_or_else(|| StructureError::NotOnCurve(pt.to_string()))?)?;
    let s0 = l.embed(&pt.s)?;
    let emb = |x: &FieldElement| l.embed(x);
    let alpha = emb(&pres.alpha)?;
    let c = find_cube_root(l, &alpha).ok_or_else(|| {
        StructureError::Hypothesis(format!("no cube root of {} found in {l}; extend by T^3 - alpha", pres.alpha))
    })?;
    let rho = l.rho().ok_or(StructureError::NoRho)?;
    let rho2 = &rho * &rho;
    let inv_a = alpha.inverse()?;
    let k1 = &(&(&rho2 * &emb(&inv.d1)?) * &l.from_ratio(1, 3)?) * &inv_a;
    let k2 = &(&emb(&inv.d2)? * &l.from_ratio(1, 9)?) * &inv_a;
    let ma = MatrixAlgebra::new(l.clone(), 3);
    let scalar = |k: &FieldElement| Matrix::scalar(3, k.clone());
    let shift = |top: &FieldElement| {
        let mut v = Matrix::zeros(3, 3, &l.zero());
        v.set(1, 0, l.one());
        v.set(2, 1, l.one());
        v.set(0, 2, top.clone());
        v
    };
    // h(X) = R0 - rho^2 D1/(3 alpha) X - D2/(9 alpha) X^{-1}
    let h = |x: &Matrix<FieldElement>| {
        let x_inv = x.pow(2).scale(&inv_a);
        scalar(&r0).sub(&x.scale(&k1)).sub(&x_inv.scale(&k2))
    };
    let (x, y1, y2) = if !s0.is_zero() {
        let u = Matrix::diagonal(vec![c.clone(), &rho2 * &c, &rho * &c]);
        let v = shift(&s0);
        let v_inv = v.pow(2).scale(&s0.inverse()?);
        let y2 = u.mul(&h(&u)).mul(&v_inv);
        if v.mul(&u) != u.mul(&v).scale(&rho) {
            return Err(StructureError::Verification("VU != rho UV".into()));
        }
        (u, v, y2)
    } else {
        let t0 = &(&(&rho2 * &emb(&pres.e)?) * &r0) - &emb(&inv.d)?;
        if t0.is_zero() {
            return Err(StructureError::Verification("y1^3 and y2^3 vanish together at this point".into()));
        }
        let u = Matrix::diagonal(vec![c.clone(), &rho * &c, &rho2 * &c]);
        let v = shift(&t0);
        if v.mul(&u) != u.mul(&v).scale(&rho2) {
            return Err(StructureError::Verification("VU != rho^2 UV".into()));
        }
        let v_inv = v.pow(2).scale(&t0.inverse()?);
        let y1 = v_inv.mul(&u).mul(&h(&u));
        (u, y1, v)
    };
    let y0 = x
        .pow(2)
        .scale(&emb(&pres.e)?)
        .add(&x.scale(&emb(&pres.beta)?))
        .add(&scalar(&(&alpha * &emb(&pres.r)?)))
        .scale(&(&l.from_int(3) * &alpha).inverse()?);
    let y = y0.add(&y1).add(&y2);
    let rep = MatrixRep::new(l, vec![x, y]).map_err(StructureError::from)?;
    let mut report = representation_relations(pres, &rep, &ma)?;
    report.extend(random_form_checks(pres, &rep, 20, 0x5eed)?);
    report.into_result()?;
    Ok(rep)
}

/// `Phi(a1 X + a2 Y) = 0` at `count` random rational points `(a1, a2)`.
pub fn random_form_checks(
    pres: &CubicPresentation,
    rep: &MatrixRep,
    count: usize,
    seed: u64,
) -> Result<CheckReport, StructureError> {
    let gp = pres.to_general();
    let f = &pres.field;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = CheckReport::default();
    for _ in 0..count {
        let mut coord = || f.from_ratio(rng.gen_range(-50..=50), rng.gen_range(1..=20));
        let a = [coord()?, coord()?];
        let m = crate::repcheck::phi_at(&gp, rep, &a)?;
        let ok = m.is_zero();
        report.push(format!("Phi({} X + {} Y) = 0", a[0], a[1]), ok, if ok { "0".to_string() } else { m.to_string() });
    }
    Ok(report)
}

/// The four defining relations evaluated on `(X, Y)`.
pub fn representation_relations(
    pres: &CubicPresentation,
    rep: &MatrixRep,
    ma: &MatrixAlgebra,
) -> Result<CheckReport, StructureError> {
    let l = rep.field();
    let emb = |x: &FieldElement| l.embed(x);
    let [x, y] = [&rep.matrices()[0], &rep.matrices()[1]];
    let s = |k: &FieldElement| -> Result<Matrix<FieldElement>, StructureError> {
        Ok(Matrix::scalar(rep.dim(), emb(k)?))
    };
    let x2y = star_product_in(ma, &[(x.clone(), 2), (y.clone(), 1)])?;
    let xy2 = star_product_in(ma, &[(x.clone(), 1), (y.clone(), 2)])?;
    let (r, t, e) = (emb(&pres.r)?, emb(&pres.t)?, emb(&pres.e)?);
    let rels = [
        ("x^3 = alpha", x.pow(3).sub(&s(&pres.alpha)?)),
        ("x^2*y = r x^2 + e x + beta", x2y.sub(&x.pow(2).scale(&r)).sub(&x.scale(&e)).sub(&s(&pres.beta)?)),
        (
            "x*y^2 = r xy + r yx + t x + e y + gamma",
            xy2.sub(&x.mul(y).add(&y.mul(x)).scale(&r)).sub(&x.scale(&t)).sub(&y.scale(&e)).sub(&s(&pres.gamma)?),
        ),
        ("y^3 = r y^2 + t y + delta", y.pow(3).sub(&y.pow(2).scale(&r)).sub(&y.scale(&t)).sub(&s(&pres.delta)?)),
    ];
    let mut report = CheckReport::default();
    for (name, m) in rels {
        let ok = ma.is_zero(&m);
        report.push(name, ok, if ok { "0".to_string() } else { m.to_string() });
    }
    Ok(report)
}
