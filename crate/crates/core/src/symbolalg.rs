//! Cyclic symbol algebras of degree `d` by structure constants:
//! `(a, b)_d` with `u^d = a`, `v^d = b`, `vu = rho uv`, and the
//! Artin-Schreier form `[a, b)_p` with `u^p = u + a`, `v^p = b`, `vu = (u+1)v`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, StructureError};
use crate::field::{Field, FieldElement, Scalar};
use crate::matrix::Matrix;

mod phi;

pub use phi::{phi_map, PhiMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    RootOfUnity,
    ArtinSchreier,
}

/// A symbol algebra as a named object: parameters and the field they live in.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolAlgebraSpec {
    pub kind: SymbolKind,
    pub degree: usize,
    pub a: FieldElement,
    pub b: FieldElement,
    pub field: Field,
}

impl SymbolAlgebraSpec {
    pub fn root_of_unity(a: FieldElement, b: FieldElement) -> Result<Self, StructureError> {
        let field = a.field().clone();
        if field.rho().is_none() {
            return Err(StructureError::NoRho);
        }
        if a.is_zero() || b.is_zero() {
            return Err(StructureError::Hypothesis("symbol parameters must be nonzero".into()));
        }
        Ok(SymbolAlgebraSpec { kind: SymbolKind::RootOfUnity, degree: 3, a, b, field })
    }

    pub fn artin_schreier(a: FieldElement, b: FieldElement) -> Result<Self, StructureError> {
        let field = a.field().clone();
        let p = field.characteristic();
        if p == 0 {
            return Err(StructureError::WrongCharacteristic(0));
        }
        Ok(SymbolAlgebraSpec { kind: SymbolKind::ArtinSchreier, degree: p as usize, a, b, field })
    }

    /// The structure-constant model over the parameters' own field.
    pub fn algebra(&self) -> SymbolAlgebra<FieldElement> {
        match self.kind {
            SymbolKind::RootOfUnity => SymbolAlgebra::root_of_unity(
                self.degree,
                self.a.clone(),
                self.b.clone(),
                self.field.rho().expect("checked at construction"),
            ),
            SymbolKind::ArtinSchreier => SymbolAlgebra::artin_schreier(self.degree, self.a.clone(), self.b.clone()),
        }
    }
}

impl fmt::Display for SymbolAlgebraSpec {
    /// `(a, b)_{3, K}` or `[a, b)_{3, K}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = match self.kind {
            SymbolKind::RootOfUnity => "(",
            SymbolKind::ArtinSchreier => "[",
        };
        write!(f, "{open}{}, {})_{{{}, {}}}", self.a, self.b, self.degree, self.field)
    }
}

impl Serialize for SymbolAlgebraSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("SymbolAlgebraSpec", 6)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("field", &self.field.to_string())?;
        st.serialize_field("presentation", &self.to_string())?;
        st.end()
    }
}

/// Structure constants for a degree-`d` symbol algebra over any scalar type.
///
/// The basis is `u^i v^j` for `0 <= i, j < d`, stored at index `i*d + j`.
#[derive(Clone, Debug)]
pub struct SymbolAlgebra<K: Scalar> {
    kind: SymbolKind,
    d: usize,
    a: K,
    b: K,
    /// `table[e * d^2 + f]` is the product of basis elements `e` and `f`.
    table: Vec<Vec<K>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolElement<K: Scalar> {
    coeffs: Vec<K>,
}

impl<K: Scalar> SymbolElement<K> {
    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize, d: usize) -> &K {
        &self.coeffs[i * d + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

impl<K: Scalar> SymbolAlgebra<K> {
    pub fn root_of_unity(d: usize, a: K, b: K, rho: K) -> Self {
        let mut alg = SymbolAlgebra { kind: SymbolKind::RootOfUnity, d, a, b, table: Vec::new() };
        // v^j u^k = rho^{jk} u^k v^j
        alg.table = alg.build_table(|j, k, zero| {
            let mut row = vec![zero.clone(); d];
            row[k] = rho.pow((j * k) as u64);
            row
        });
        alg
    }

    pub fn artin_schreier(p: usize, a: K, b: K) -> Self {
        let mut alg = SymbolAlgebra { kind: SymbolKind::ArtinSchreier, d: p, a, b, table: Vec::new() };
        // v^j u^k = (u + j)^k v^j, expanded binomially and reduced in u.
        let a2 = alg.a.clone();
        alg.table = alg.build_table(|j, k, zero| {
            let one = zero.one_like();
            let mut poly = vec![one.clone()];
            let shift = zero.from_int_like(j as i64);
            for _ in 0..k {
                let mut next = vec![zero.clone(); poly.len() + 1];
                for (m, c) in poly.iter().enumerate() {
                    next[m + 1] = next[m + 1].clone() + c.clone();
                    next[m] = next[m].clone() + c.clone() * shift.clone();
                }
                poly = next;
            }
            reduce_artin_schreier(poly, p, &a2)
        });
        alg
    }

    /// Builds the table from `v^j u^k = sum_m c_m u^m v^j`, given as the
    /// reduced coefficient list `c_0..c_{d-1}` by `swap(j, k, zero)`.
    fn build_table(&self, swap: impl Fn(usize, usize, &K) -> Vec<K>) -> Vec<Vec<K>> {
        let d = self.d;
        let n = d * d;
        let zero = self.a.zero_like();
        let mut table = Vec::with_capacity(n * n);
        for e in 0..n {
            let (i, j) = (e / d, e % d);
            for f in 0..n {
                let (k, l) = (f / d, f % d);
                let mut out = vec![zero.clone(); n];
                let sw = swap(j, k, &zero);
                for (m, c) in sw.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    // u^i u^m v^j v^l
                    let upart = self.u_power(i + m);
                    let (vexp, vscale) = self.v_power(j + l);
                    for (ui, uc) in upart.iter().enumerate() {
                        if uc.is_zero() {
                            continue;
                        }
                        let idx = ui * d + vexp;
                        out[idx] = out[idx].clone() + c.clone() * uc.clone() * vscale.clone();
                    }
                }
                table.push(out);
            }
        }
        table
    }

    /// `u^n` reduced to coefficients of `u^0..u^{d-1}`.
    fn u_power(&self, n: usize) -> Vec<K> {
        let zero = self.a.zero_like();
        let mut poly = vec![zero.clone(); n + 1];
        poly[n] = zero.one_like();
        match self.kind {
            SymbolKind::RootOfUnity => {
                let mut out = vec![zero; self.d];
                out[n % self.d] = self.a.pow((n / self.d) as u64);
                out
            }
            SymbolKind::ArtinSchreier => reduce_artin_schreier(poly, self.d, &self.a),
        }
    }

    fn v_power(&self, n: usize) -> (usize, K) {
        (n % self.d, self.b.pow((n / self.d) as u64))
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &K {
        &self.a
    }

    pub fn b(&self) -> &K {
        &self.b
    }

    fn zero_scalar(&self) -> K {
        self.a.zero_like()
    }

    pub fn zero(&self) -> SymbolElement<K> {
        SymbolElement { coeffs: vec![self.zero_scalar(); self.d * self.d] }
    }

    pub fn scalar(&self, c: K) -> SymbolElement<K> {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    pub fn one(&self) -> SymbolElement<K> {
        self.scalar(self.a.one_like())
    }

    /// The basis element `u^i v^j`.
    pub fn basis(&self, i: usize, j: usize) -> SymbolElement<K> {
        let mut z = self.zero();
        z.coeffs[i * self.d + j] = self.a.one_like();
        z
    }

    pub fn u(&self) -> SymbolElement<K> {
        self.basis(1, 0)
    }

    pub fn v(&self) -> SymbolElement<K> {
        self.basis(0, 1)
    }

    pub fn from_coeffs(&self, coeffs: Vec<K>) -> Result<SymbolElement<K>, AlgebraError> {
        if coeffs.len() != self.d * self.d {
            return Err(AlgebraError::Dimension(format!("expected {} coefficients", self.d * self.d)));
        }
        Ok(SymbolElement { coeffs })
    }

    pub fn add(&self, s: &SymbolElement<K>, t: &SymbolElement<K>) -> SymbolElement<K> {
        SymbolElement { coeffs: s.coeffs.iter().zip(&t.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, s: &SymbolElement<K>, t: &SymbolElement<K>) -> SymbolElement<K> {
        SymbolElement { coeffs: s.coeffs.iter().zip(&t.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn neg(&self, s: &SymbolElement<K>) -> SymbolElement<K> {
        SymbolElement { coeffs: s.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, c: &K, s: &SymbolElement<K>) -> SymbolElement<K> {
        SymbolElement { coeffs: s.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, s: &SymbolElement<K>, t: &SymbolElement<K>) -> SymbolElement<K> {
        let n = self.d * self.d;
        let mut out = self.zero();
        for (e, se) in s.coeffs.iter().enumerate() {
            if se.is_zero() {
                continue;
            }
            for (f, tf) in t.coeffs.iter().enumerate() {
                if tf.is_zero() {
                    continue;
                }
                let st = se.clone() * tf.clone();
                for (g, c) in self.table[e * n + f].iter().enumerate() {
                    if !c.is_zero() {
                        out.coeffs[g] = out.coeffs[g].clone() + st.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, s: &SymbolElement<K>, e: u32) -> SymbolElement<K> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, s))
    }

    /// Matrix of left multiplication by `s` in the `u^i v^j` basis.
    pub fn regular_rep(&self, s: &SymbolElement<K>) -> Matrix<K> {
        let n = self.d * self.d;
        let mut m = Matrix::zeros(n, n, &self.zero_scalar());
        for col in 0..n {
            let prod = self.mul(s, &SymbolElement { coeffs: unit(n, col, &self.a) });
            for (row, c) in prod.coeffs.into_iter().enumerate() {
                m.set(row, col, c);
            }
        }
        m
    }

    pub fn inverse(&self, s: &SymbolElement<K>) -> Result<SymbolElement<K>, AlgebraError> {
        let inv = self.regular_rep(s).inverse()?;
        let n = self.d * self.d;
        Ok(SymbolElement { coeffs: (0..n).map(|r| inv.get(r, 0).clone()).collect() })
    }

    pub fn commutes(&self, s: &SymbolElement<K>, t: &SymbolElement<K>) -> bool {
        self.sub(&self.mul(s, t), &self.mul(t, s)).is_zero()
    }

    pub fn is_central(&self, s: &SymbolElement<K>) -> bool {
        self.commutes(s, &self.u()) && self.commutes(s, &self.v())
    }

    pub fn render(&self, s: &SymbolElement<K>) -> String {
        let mut terms = Vec::new();
        for (idx, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = (idx / self.d, idx % self.d);
            let part = |name: &str, k: usize| match k {
                0 => None,
                1 => Some(name.to_string()),
                k => Some(format!("{name}^{k}")),
            };
            let mon: Vec<String> = [part("u", i), part("v", j)].into_iter().flatten().collect();
            terms.push(crate::fmt_term(&c.to_string(), &mon.join("*")));
        }
        crate::join_signed(&terms)
    }
}

fn unit<K: Scalar>(n: usize, k: usize, w: &K) -> Vec<K> {
    let mut v = vec![w.zero_like(); n];
    v[k] = w.one_like();
    v
}

/// Reduces a polynomial in `u` modulo `u^p - u - a`.
fn reduce_artin_schreier<K: Scalar>(mut poly: Vec<K>, p: usize, a: &K) -> Vec<K> {
    let zero = a.zero_like();
    while poly.len() > p {
        let top = poly.len() - 1;
        let c = poly.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        // u^top = u^{top-p} (u + a)
        poly[top - p + 1] = poly[top - p + 1].clone() + c.clone();
        poly[top - p] = poly[top - p].clone() + c * a.clone();
    }
    poly.resize(p, zero);
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_relations() {
        let f = Field::rationals().adjoin_rho().unwrap();
        let rho = f.rho().unwrap();
        let alg = SymbolAlgebra::root_of_unity(3, f.from_int(2), f.from_int(5), rho.clone());
        let (u, v) = (alg.u(), alg.v());
        assert_eq!(alg.mul(&v, &u), alg.scale(&rho, &alg.mul(&u, &v)));
        assert_eq!(alg.pow(&u, 3), alg.scalar(f.from_int(2)));
        assert_eq!(alg.pow(&v, 3), alg.scalar(f.from_int(5)));
        let u_inv = alg.scale(&f.from_ratio(1, 2).unwrap(), &alg.basis(2, 0));
        assert_eq!(alg.inverse(&u).unwrap(), u_inv);
        let prod = alg.regular_rep(&u).mul(&alg.regular_rep(&u_inv));
        assert_eq!(prod, Matrix::identity(9, &f.zero()));
    }

    #[test]
    fn regular_rep_of_u_is_a_scaled_shift() {
        let f = Field::rationals().adjoin_rho().unwrap();
        let a = f.from_int(7);
        let alg = SymbolAlgebra::root_of_unity(3, a.clone(), f.from_int(3), f.rho().unwrap());
        let m = alg.regular_rep(&alg.u());
        for i in 0..3 {
            for j in 0..3 {
                let (row, col) = (((i + 1) % 3) * 3 + j, i * 3 + j);
                let expect = if i == 2 { a.clone() } else { f.one() };
                assert_eq!(m.get(row, col), &expect);
            }
        }
        assert_eq!(alg.regular_rep(&alg.one()), Matrix::identity(9, &f.zero()));
    }

    #[test]
    fn artin_schreier_relations() {
        let f = Field::prime(3).unwrap();
        let (a, b) = (f.from_int(2), f.from_int(1));
        let alg = SymbolAlgebra::artin_schreier(3, a.clone(), b.clone());
        let (u, v) = (alg.u(), alg.v());
        assert_eq!(alg.mul(&v, &u), alg.add(&alg.mul(&u, &v), &v));
        assert_eq!(alg.pow(&u, 3), alg.add(&u, &alg.scalar(a)));
        assert_eq!(alg.pow(&v, 3), alg.scalar(b));
    }

    #[test]
    fn rendering() {
        let f = Field::rationals().adjoin_rho().unwrap();
        let spec = SymbolAlgebraSpec::root_of_unity(f.from_int(2), f.one()).unwrap();
        assert_eq!(spec.to_string(), "(2, 1)_{3, QQ(rho)}");
        let g = Field::prime(3).unwrap();
        let spec = SymbolAlgebraSpec::artin_schreier(g.from_int(2), g.one()).unwrap();
        assert_eq!(spec.to_string(), "[2, 1)_{3, GF(3)}");
        let json = serde_json::to_value(&spec).unwrap();
        assert_eq!(json["kind"], "artin_schreier");
    }
}
