//! The homomorphism from the char-0 presentation into the symbol algebra
//! `(alpha, S)_{3, F(E)}` over the function field of the curve.

use crate::cubic::char0::{curve, Char0Structure};
use crate::cubic::CheckReport;
use crate::error::StructureError;
use crate::field::{FieldElement, Scalar};
use crate::funcfield::{FunctionField, FunctionFieldElement};
use crate::matrix::Matrix;
use crate::ncalg::NCPoly;
use crate::poly::Poly;

use super::{SymbolAlgebra, SymbolElement};

type Elem = SymbolElement<FunctionFieldElement>;

/// `x -> u`, `y1 -> v`,
/// `y2 -> u (R - rho^2 D1/(3 alpha) u - D2/(9 alpha) u^{-1}) S^{-1} v^2`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub function_field: FunctionField,
    pub target: SymbolAlgebra<FunctionFieldElement>,
    images: [Elem; 3],
}

pub fn phi_map(st: &Char0Structure) -> Result<PhiMap, StructureError> {
    let e = curve(&st.pres)?;
    let (b, c) = e.s_quadratic();
    let ff = FunctionField::quadratic(&st.pres.field, b, c);
    let k = |x: &FieldElement| ff.constant(x);
    let alpha = k(&st.pres.alpha);
    let target = SymbolAlgebra::root_of_unity(3, alpha.clone(), ff.s(), k(&st.rho));
    let (u, v) = (target.u(), target.v());
    let f = &st.pres.field;
    let inv_a = st.pres.alpha.inverse()?;
    let rho2 = &st.rho * &st.rho;
    let k1 = &(&(&rho2 * &st.invariants.d1) * &f.from_ratio(1, 3)?) * &inv_a;
    let k2 = &(&(&st.invariants.d2 * &f.from_ratio(1, 9)?) * &inv_a) * &inv_a;
    // u^{-1} = alpha^{-1} u^2, folded into k2
    let h = target.sub(
        &target.sub(&target.scalar(ff.r()), &target.scale(&k(&k1), &u)),
        &target.scale(&k(&k2), &target.pow(&u, 2)),
    );
    let s_inv = ff.s().inv().ok_or_else(|| StructureError::Verification("S is not invertible".into()))?;
    let y2 = target.scale(&s_inv, &target.mul(&target.mul(&u, &h), &target.pow(&v, 2)));
    Ok(PhiMap { function_field: ff, target, images: [u, v, y2] })
}

impl PhiMap {
    pub fn image_of_generator(&self, g: u8) -> &Elem {
        &self.images[g as usize]
    }

    pub fn apply(&self, p: &NCPoly) -> Elem {
        let t = &self.target;
        let mut out = t.zero();
        for (w, c) in p.terms() {
            let mono = w.0.iter().fold(t.one(), |acc, &g| t.mul(&acc, &self.images[g as usize]));
            out = t.add(&out, &t.scale(&self.function_field.constant(c), &mono));
        }
        out
    }

    /// Rewriting rules, defining relations, `phi(w) = R` and `phi(y1)^3 = S`.
    pub fn verify(&self, st: &Char0Structure) -> CheckReport {
        let t = &self.target;
        let mut report = CheckReport::default();
        let alpha = st.quotient.system.alphabet();
        for rule in st.quotient.system.rules() {
            let lhs = NCPoly::term(alpha, rule.lhs.clone(), st.pres.field.one());
            let diff = self.apply(&lhs.sub(&rule.rhs));
            report.push(format!("phi({})", rule.lhs.render(alpha)), diff.is_zero(), t.render(&diff));
        }
        for (name, rel) in st.defining_relations() {
            let diff = self.apply(&rel);
            report.push(format!("phi: {name}"), diff.is_zero(), t.render(&diff));
        }
        let w = t.sub(&self.apply(&st.named.w), &t.scalar(self.function_field.r()));
        report.push("phi(w) = R", w.is_zero(), t.render(&w));
        let y13 = t.sub(&t.pow(&self.images[1], 3), &t.scalar(self.function_field.s()));
        report.push("phi(y1)^3 = S", y13.is_zero(), t.render(&y13));
        report
    }

    /// Rank over the base field of the 27 images `phi(x^i y1^j w^k)`,
    /// `0 <= i, j, k < 3`.
    pub fn rank27(&self, st: &Char0Structure) -> usize {
        let t = &self.target;
        let x = self.images[0].clone();
        let y1 = self.images[1].clone();
        let w = self.apply(&st.named.w);
        let mut elems = Vec::with_capacity(27);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    elems.push(t.mul(&t.mul(&t.pow(&x, i), &t.pow(&y1, j)), &t.pow(&w, k)));
                }
            }
        }
        let zero = st.pres.field.zero();
        // common denominator of every coordinate
        let mut lcm = Poly::constant(st.pres.field.one());
        for e in &elems {
            for c in e.coeffs() {
                let den = c.parts().2;
                let g = lcm.gcd(den);
                lcm = lcm.mul(&den.divrem(&g).0);
            }
        }
        let rows: Vec<Vec<(usize, Poly<FieldElement>)>> = elems
            .iter()
            .map(|e| {
                e.coeffs()
                    .iter()
                    .enumerate()
                    .flat_map(|(b, c)| {
                        let (n0, n1, den) = c.parts();
                        let m = lcm.divrem(den).0;
                        [(2 * b, n0.mul(&m)), (2 * b + 1, n1.mul(&m))]
                    })
                    .collect()
            })
            .collect();
        let width = rows
            .iter()
            .flat_map(|r| r.iter().map(|(_, p)| p.degree().map_or(0, |d| d + 1)))
            .max()
            .unwrap_or(0);
        let ncols = 18 * width.max(1);
        let m = Matrix::from_fn(27, ncols, |r, col| {
            let (slot, pw) = (col / width.max(1), col % width.max(1));
            rows[r].iter().find(|(s, _)| *s == slot).map_or(zero.clone(), |(_, p)| p.coeff(pw))
        });
        m.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::CubicPresentation;
    use crate::field::Field;

    #[test]
    fn diagonal_example_embeds() {
        let f = Field::rationals().adjoin_rho().unwrap();
        let st = Char0Structure::new(&CubicPresentation::from_ints(&f, [0, 0, 0, 2, 0, 0, 1]).unwrap()).unwrap();
        let phi = phi_map(&st).unwrap();
        let report = phi.verify(&st);
        assert!(report.all_ok(), "{report}");
        assert_eq!(phi.rank27(&st), 27);
    }
}
