//! Exact arithmetic in linear towers of fields over `QQ` or `GF(p)`.
//!
//! A [`Field`] is a shared, immutable descriptor: a prime field or the
//! rationals, followed by a list of simple algebraic extensions, each given
//! by a monic minimal polynomial over the level below. Elements are stored as
//! coordinate vectors in the monomial basis of the top level, recursively.

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::FieldError;

/// Commutative scalars used by the generic containers ([`crate::Matrix`],
/// [`crate::Poly`], symbol algebras).
///
/// Elements carry their own context, so constants are produced relative to
/// an existing element.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_int_like(&self, n: i64) -> Self;
    /// Multiplicative inverse, `None` for zero (or a zero divisor).
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Coordinates of an element at some level of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Q(BigRational),
    Fp(u64),
    Ext(Vec<Value>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelKind {
    /// `T^2 + T + 1`, adjoining a primitive cube root of unity.
    Rho,
    Ext,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    name: String,
    kind: LevelKind,
    /// Monic modulus, coefficients low to high, `len == degree + 1`.
    modulus: Vec<Value>,
}

impl Level {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// How irreducibility of the tower's minimal polynomials was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Verified,
    /// At least one minimal polynomial over a characteristic-0 level was
    /// accepted on the caller's word.
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    characteristic: u64,
    levels: Vec<Level>,
    /// Primitive cube root of unity: the number of levels of the smallest
    /// subfield containing it, and its value there.
    rho: Option<(usize, Value)>,
    irreducibility: Irreducibility,
}

/// Shared handle to a [`FieldDescriptor`].
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

impl Deref for Field {
    type Target = FieldDescriptor;
    fn deref(&self) -> &FieldDescriptor {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    /// `QQ`, `GF(7)`, `QQ(rho)`, `QQ(rho, t1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "QQ")?;
        } else {
            write!(f, "GF({})", self.characteristic)?;
        }
        if !self.levels.is_empty() {
            let names: Vec<&str> = self.levels.iter().map(|l| l.name.as_str()).collect();
            write!(f, "({})", names.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest field size for which exhaustive element searches are attempted.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor {
            characteristic: 0,
            levels: Vec::new(),
            rho: None,
            irreducibility: Irreducibility::Verified,
        }))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime_u64(p) || p >= (1 << 62) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldDescriptor {
            characteristic: p,
            levels: Vec::new(),
            rho: None,
            irreducibility: Irreducibility::Verified,
        })))
    }

    /// Adjoins a root of the monic polynomial with the given coefficients
    /// (low to high, leading coefficient included) over `self`.
    ///
    /// Over finite fields irreducibility is checked; over characteristic 0
    /// it is recorded as asserted.
    pub fn extend(&self, coeffs: &[FieldElement]) -> Result<Field, FieldError> {
        let name = format!("t{}", self.levels.iter().filter(|l| l.kind == LevelKind::Ext).count() + 1);
        self.extend_named(coeffs, &name, LevelKind::Ext)
    }

    fn extend_named(
        &self,
        coeffs: &[FieldElement],
        name: &str,
        kind: LevelKind,
    ) -> Result<Field, FieldError> {
        let mut modulus: Vec<Value> = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field != *self {
                return Err(FieldError::Mismatch);
            }
            modulus.push(c.value.clone());
        }
        let lvl = self.levels.len();
        while modulus.last().is_some_and(|v| self.is_zero_at(lvl, v)) {
            modulus.pop();
        }
        if modulus.len() < 3 {
            return Err(FieldError::BadModulus("minimal polynomial must have degree at least 2".into()));
        }
        if *modulus.last().unwrap() != self.one_at(lvl) {
            return Err(FieldError::BadModulus("minimal polynomial must be monic".into()));
        }
        let mut irreducibility = self.irreducibility;
        if self.characteristic == 0 {
            irreducibility = Irreducibility::Asserted;
        } else if !self.is_irreducible_over(&modulus) {
            return Err(FieldError::Reducible);
        }
        let mut levels = self.levels.clone();
        levels.push(Level { name: name.to_string(), kind, modulus });
        let mut desc = FieldDescriptor {
            characteristic: self.characteristic,
            levels,
            rho: self.rho.clone(),
            irreducibility,
        };
        if desc.rho.is_none() && kind == LevelKind::Rho {
            let deg = 2;
            let mut gen = vec![desc.zero_at(lvl); deg];
            gen[1] = desc.one_at(lvl);
            desc.rho = Some((lvl + 1, Value::Ext(gen)));
        }
        let field = Field(Arc::new(desc));
        if field.rho.is_none() {
            // A generic extension may itself be generated by a cube root of unity.
            let g = field.generator(field.levels.len() - 1);
            if (&(&g * &g) + &g) + field.one() == field.zero() {
                let top = field.levels.len();
                let v = g.value;
                let mut d = (*field.0).clone();
                d.rho = Some((top, v));
                return Ok(Field(Arc::new(d)));
            }
        }
        Ok(field)
    }

    /// Makes a primitive cube root of unity available, either by finding it
    /// in the current field or by adjoining `T^2 + T + 1`.
    pub fn adjoin_rho(&self) -> Result<Field, FieldError> {
        if self.rho.is_some() {
            return Ok(self.clone());
        }
        if self.characteristic == 3 {
            return Err(FieldError::NoPrimitiveCubeRoot);
        }
        if let Some(size) = self.order() {
            if size <= EXHAUSTIVE_LIMIT {
                let one = self.one();
                for x in self.elements() {
                    if x != one && (&(&x * &x) + &x) + one.clone() == self.zero() {
                        let mut d = (*self.0).clone();
                        d.rho = Some((self.levels.len(), x.value));
                        return Ok(Field(Arc::new(d)));
                    }
                }
            } else {
                return Err(FieldError::Undecidable(
                    "cube root of unity search in a field this large".into(),
                ));
            }
        }
        let one = self.one();
        self.extend_named(&[one.clone(), one.clone(), one], "rho", LevelKind::Rho)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: self.zero_at(self.levels.len()) }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: self.one_at(self.levels.len()) }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let base = self.base_from_bigint(n);
        FieldElement { field: self.clone(), value: self.lift(base, 0) }
    }

    /// `num / den` embedded in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        self.from_int(num).checked_div(&self.from_int(den))
    }

    /// The primitive cube root of unity, when present.
    pub fn rho(&self) -> Option<FieldElement> {
        self.rho.as_ref().map(|(lvl, v)| FieldElement {
            field: self.clone(),
            value: self.lift(v.clone(), *lvl),
        })
    }

    /// Generator of the given extension level (0-based), lifted to the top.
    pub fn generator(&self, level: usize) -> FieldElement {
        let deg = self.levels[level].degree();
        let mut coords = vec![self.zero_at(level); deg];
        coords[1] = self.one_at(level);
        FieldElement { field: self.clone(), value: self.lift(Value::Ext(coords), level + 1) }
    }

    /// Looks up a named generator (`rho`, `t1`, ...).
    pub fn named(&self, name: &str) -> Option<FieldElement> {
        if name == "rho" {
            return self.rho();
        }
        self.levels.iter().position(|l| l.name == name).map(|i| self.generator(i))
    }

    /// Total number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        if self.characteristic == 0 {
            return None;
        }
        let mut q: u128 = 1;
        for _ in 0..self.absolute_degree() {
            q = q.checked_mul(self.characteristic as u128)?;
        }
        Some(q)
    }

    /// All elements of a finite field, enumerated in coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.order().unwrap_or(0);
        (0..n).map(move |i| self.element_from_index(i))
    }

    pub fn element_from_index(&self, mut idx: u128) -> FieldElement {
        let p = self.characteristic as u128;
        let mut digits = Vec::with_capacity(self.absolute_degree());
        for _ in 0..self.absolute_degree() {
            digits.push((idx % p) as u64);
            idx /= p;
        }
        let mut it = digits.into_iter();
        let value = self.value_from_digits(self.levels.len(), &mut it);
        FieldElement { field: self.clone(), value }
    }

    fn value_from_digits(&self, lvl: usize, it: &mut impl Iterator<Item = u64>) -> Value {
        if lvl == 0 {
            return Value::Fp(it.next().unwrap_or(0));
        }
        let deg = self.levels[lvl - 1].degree();
        Value::Ext((0..deg).map(|_| self.value_from_digits(lvl - 1, it)).collect())
    }

    /// Uniformly random for finite fields; small random rationals otherwise.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let value = self.random_at(self.levels.len(), rng);
        FieldElement { field: self.clone(), value }
    }

    fn random_at<R: Rng + ?Sized>(&self, lvl: usize, rng: &mut R) -> Value {
        if lvl == 0 {
            return if self.characteristic == 0 {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=4);
                Value::Q(BigRational::new(n.into(), d.into()))
            } else {
                Value::Fp(rng.gen_range(0..self.characteristic))
            };
        }
        let deg = self.levels[lvl - 1].degree();
        Value::Ext((0..deg).map(|_| self.random_at(lvl - 1, rng)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random_element(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Whether `self` is `other` with zero or more further levels on top.
    pub fn extends(&self, other: &Field) -> bool {
        self.characteristic == other.characteristic
            && self.levels.len() >= other.levels.len()
            && self.levels[..other.levels.len()] == other.levels[..]
            && match (&self.rho, &other.rho) {
                (_, None) => true,
                (Some(a), Some(b)) => a == b,
                (None, Some(_)) => false,
            }
    }

    /// Embeds an element of a subfield (a prefix of this tower).
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if x.field == *self {
            return Ok(x.clone());
        }
        if !self.extends(&x.field) {
            return Err(FieldError::Mismatch);
        }
        Ok(FieldElement {
            field: self.clone(),
            value: self.lift(x.value.clone(), x.field.levels.len()),
        })
    }

    /// Decides whether `T^3 - a` has a root.
    ///
    /// Finite fields are decided completely. Over characteristic-0 towers
    /// only rational `a` are decided, by rational-root search combined with
    /// the degree of the tower; everything else is [`CubeRoot::Unknown`].
    pub fn cube_root(&self, a: &FieldElement) -> CubeRoot {
        if a.is_zero() {
            return CubeRoot::Exists(a.clone());
        }
        if let Some(q) = self.order() {
            if (q - 1) % 3 != 0 {
                // Cubing is a bijection; its inverse is a power map.
                let e = if self.characteristic == 3 {
                    q / 3
                } else {
                    modinv_u128(3, q - 1)
                };
                return CubeRoot::Exists(a.pow_u128(e));
            }
            if a.pow_u128((q - 1) / 3) != self.one() {
                return CubeRoot::None;
            }
            if q <= EXHAUSTIVE_LIMIT {
                for x in self.elements() {
                    if &(&x * &x) * &x == *a {
                        return CubeRoot::Exists(x);
                    }
                }
            }
            return CubeRoot::Unknown;
        }
        let Some(r) = a.as_rational() else {
            return CubeRoot::Unknown;
        };
        match rational_cube_root(&r) {
            Some(c) => CubeRoot::Exists(self.from_rational(&c)),
            None if !self.absolute_degree().is_multiple_of(3) => CubeRoot::None,
            None => CubeRoot::Unknown,
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> FieldElement {
        let base = if self.characteristic == 0 {
            Value::Q(r.clone())
        } else {
            let n = self.base_from_bigint(r.numer());
            let d = self.base_from_bigint(r.denom());
            self.div_base(&n, &d).expect("denominator divisible by the characteristic")
        };
        FieldElement { field: self.clone(), value: self.lift(base, 0) }
    }
}

fn modinv_u128(a: u128, m: u128) -> u128 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(m as i128) as u128
}

fn integer_cube_root(n: &BigInt) -> Option<BigInt> {
    let neg = n.is_negative();
    let m = n.abs();
    let r = m.cbrt();
    if &r * &r * &r == m {
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

fn rational_cube_root(r: &BigRational) -> Option<BigRational> {
    let n = integer_cube_root(r.numer())?;
    let d = integer_cube_root(r.denom())?;
    Some(BigRational::new(n, d))
}

#[derive(Clone, Debug, PartialEq)]
pub enum CubeRoot {
    Exists(FieldElement),
    None,
    Unknown,
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn has_primitive_cube_root(&self) -> bool {
        self.rho.is_some()
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level_name(&self, level: usize) -> &str {
        &self.levels[level].name
    }

    pub fn level_kind(&self, level: usize) -> LevelKind {
        self.levels[level].kind
    }

    /// Degree over the prime field (or over `QQ`).
    pub fn absolute_degree(&self) -> usize {
        self.levels.iter().map(Level::degree).product()
    }

    /// The tower rendered in the field-spec mini-language,
    /// e.g. `QQ.rho.ext(T^3 - 2)`.
    pub fn spec_string(&self) -> String {
        let mut s = if self.characteristic == 0 {
            "QQ".to_string()
        } else {
            format!("GF({})", self.characteristic)
        };
        for (i, level) in self.levels.iter().enumerate() {
            if level.kind == LevelKind::Rho {
                s.push_str(".rho");
                continue;
            }
            let mut terms = Vec::new();
            for (k, c) in level.modulus.iter().enumerate().rev() {
                if self.is_zero_at(i, c) {
                    continue;
                }
                let coeff = self.fmt_value(i, c);
                let mon = match k {
                    0 => String::new(),
                    1 => "T".to_string(),
                    _ => format!("T^{k}"),
                };
                terms.push(join_coeff(&coeff, &mon));
            }
            s.push_str(&format!(".ext({})", join_terms(&terms)));
        }
        if self.rho.is_some() && !self.levels.iter().any(|l| l.kind == LevelKind::Rho) {
            s.push_str(".rho");
        }
        s
    }

    fn base_zero(&self) -> Value {
        if self.characteristic == 0 {
            Value::Q(BigRational::zero())
        } else {
            Value::Fp(0)
        }
    }

    fn base_from_bigint(&self, n: &BigInt) -> Value {
        if self.characteristic == 0 {
            Value::Q(BigRational::from_integer(n.clone()))
        } else {
            let p = BigInt::from(self.characteristic);
            Value::Fp(n.mod_floor(&p).to_u64().unwrap())
        }
    }

    fn div_base(&self, a: &Value, b: &Value) -> Option<Value> {
        let inv = self.inv_at(0, b)?;
        Some(self.mul_at(0, a, &inv))
    }

    /// Embeds a value from level `from` up to the top.
    fn lift(&self, mut v: Value, from: usize) -> Value {
        for lvl in from..self.levels.len() {
            let deg = self.levels[lvl].degree();
            let mut coords = vec![self.zero_at(lvl); deg];
            coords[0] = v;
            v = Value::Ext(coords);
        }
        v
    }

    pub(crate) fn zero_at(&self, lvl: usize) -> Value {
        if lvl == 0 {
            self.base_zero()
        } else {
            Value::Ext(vec![self.zero_at(lvl - 1); self.levels[lvl - 1].degree()])
        }
    }

    pub(crate) fn one_at(&self, lvl: usize) -> Value {
        if lvl == 0 {
            if self.characteristic == 0 {
                Value::Q(BigRational::one())
            } else {
                Value::Fp(1 % self.characteristic)
            }
        } else {
            let mut coords = vec![self.zero_at(lvl - 1); self.levels[lvl - 1].degree()];
            coords[0] = self.one_at(lvl - 1);
            Value::Ext(coords)
        }
    }

    pub(crate) fn is_zero_at(&self, lvl: usize, v: &Value) -> bool {
        match v {
            Value::Q(q) => q.is_zero(),
            Value::Fp(x) => *x == 0,
            Value::Ext(c) => c.iter().all(|x| self.is_zero_at(lvl - 1, x)),
        }
    }

    pub(crate) fn add_at(&self, lvl: usize, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x + y),
            (Value::Fp(x), Value::Fp(y)) => {
                let p = self.characteristic;
                let s = x + y;
                Value::Fp(if s >= p { s - p } else { s })
            }
            (Value::Ext(x), Value::Ext(y)) => {
                Value::Ext(x.iter().zip(y).map(|(u, v)| self.add_at(lvl - 1, u, v)).collect())
            }
            _ => unreachable!("value shape mismatch"),
        }
    }

    pub(crate) fn neg_at(&self, lvl: usize, a: &Value) -> Value {
        match a {
            Value::Q(x) => Value::Q(-x),
            Value::Fp(x) => Value::Fp(if *x == 0 { 0 } else { self.characteristic - x }),
            Value::Ext(x) => Value::Ext(x.iter().map(|u| self.neg_at(lvl - 1, u)).collect()),
        }
    }

    pub(crate) fn sub_at(&self, lvl: usize, a: &Value, b: &Value) -> Value {
        self.add_at(lvl, a, &self.neg_at(lvl, b))
    }

    pub(crate) fn mul_at(&self, lvl: usize, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Q(x), Value::Q(y)) => Value::Q(x * y),
            (Value::Fp(x), Value::Fp(y)) => {
                Value::Fp(((*x as u128 * *y as u128) % self.characteristic as u128) as u64)
            }
            (Value::Ext(x), Value::Ext(y)) => {
                let prod = self.poly_mul(lvl - 1, x, y);
                Value::Ext(self.reduce(lvl, prod))
            }
            _ => unreachable!("value shape mismatch"),
        }
    }

    /// Reduces a coefficient list over level `lvl - 1` modulo the minimal
    /// polynomial of level `lvl`.
    fn reduce(&self, lvl: usize, mut coeffs: Vec<Value>) -> Vec<Value> {
        let below = lvl - 1;
        let modulus = &self.levels[below].modulus;
        let deg = modulus.len() - 1;
        if coeffs.len() > deg {
            for i in (deg..coeffs.len()).rev() {
                let c = coeffs[i].clone();
                if self.is_zero_at(below, &c) {
                    continue;
                }
                for (j, m) in modulus[..deg].iter().enumerate() {
                    let t = self.mul_at(below, &c, m);
                    coeffs[i - deg + j] = self.sub_at(below, &coeffs[i - deg + j], &t);
                }
            }
        }
        coeffs.resize(deg, self.zero_at(below));
        coeffs.truncate(deg);
        coeffs
    }

    pub(crate) fn inv_at(&self, lvl: usize, a: &Value) -> Option<Value> {
        if self.is_zero_at(lvl, a) {
            return None;
        }
        match a {
            Value::Q(x) => Some(Value::Q(x.recip())),
            Value::Fp(x) => {
                let p = self.characteristic;
                let mut e = p - 2;
                let mut b = *x;
                let mut r = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        r = ((r as u128 * b as u128) % p as u128) as u64;
                    }
                    b = ((b as u128 * b as u128) % p as u128) as u64;
                    e >>= 1;
                }
                Some(Value::Fp(r))
            }
            Value::Ext(x) => {
                let below = lvl - 1;
                let modulus = self.levels[below].modulus.clone();
                let (g, _, s) = self.poly_xgcd(below, modulus, self.poly_trim(below, x.clone()));
                if g.len() != 1 {
                    return None;
                }
                let ginv = self.inv_at(below, &g[0])?;
                let s: Vec<Value> = s.iter().map(|c| self.mul_at(below, c, &ginv)).collect();
                Some(Value::Ext(self.reduce(lvl, s)))
            }
        }
    }

    // Dense polynomial helpers over a fixed level, coefficients low to high.

    fn poly_trim(&self, lvl: usize, mut p: Vec<Value>) -> Vec<Value> {
        while p.last().is_some_and(|c| self.is_zero_at(lvl, c)) {
            p.pop();
        }
        p
    }

    fn poly_mul(&self, lvl: usize, a: &[Value], b: &[Value]) -> Vec<Value> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero_at(lvl); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero_at(lvl, x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul_at(lvl, x, y);
                out[i + j] = self.add_at(lvl, &out[i + j], &t);
            }
        }
        out
    }

    fn poly_sub(&self, lvl: usize, a: &[Value], b: &[Value]) -> Vec<Value> {
        let n = a.len().max(b.len());
        let z = self.zero_at(lvl);
        let out = (0..n)
            .map(|i| self.sub_at(lvl, a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(lvl, out)
    }

    fn poly_divrem(&self, lvl: usize, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
        let b = self.poly_trim(lvl, b.to_vec());
        let mut r = self.poly_trim(lvl, a.to_vec());
        let db = b.len() - 1;
        let lead_inv = self.inv_at(lvl, &b[db]).expect("nonzero leading coefficient");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero_at(lvl); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - 1 - db;
            let c = self.mul_at(lvl, r.last().unwrap(), &lead_inv);
            for (j, bj) in b.iter().enumerate() {
                let t = self.mul_at(lvl, &c, bj);
                r[shift + j] = self.sub_at(lvl, &r[shift + j], &t);
            }
            q[shift] = c;
            r.pop();
            r = self.poly_trim(lvl, r);
        }
        (q, r)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`.
    fn poly_xgcd(
        &self,
        lvl: usize,
        a: Vec<Value>,
        b: Vec<Value>,
    ) -> (Vec<Value>, Vec<Value>, Vec<Value>) {
        let (mut r0, mut r1) = (self.poly_trim(lvl, a), self.poly_trim(lvl, b));
        let (mut s0, mut s1) = (vec![self.one_at(lvl)], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![self.one_at(lvl)]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(lvl, &r0, &r1);
            let s2 = self.poly_sub(lvl, &s0, &self.poly_mul(lvl, &q, &s1));
            let t2 = self.poly_sub(lvl, &t0, &self.poly_mul(lvl, &q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        (r0, s0, t0)
    }

    /// Rabin's test for a monic polynomial over a finite top level.
    fn is_irreducible_over(&self, modulus: &[Value]) -> bool {
        let lvl = self.levels.len();
        let n = modulus.len() - 1;
        let q: u128 = match Field(Arc::new(self.clone())).order() {
            Some(q) => q,
            None => return false,
        };
        // Work in the (possibly non-field) quotient ring by appending the level.
        let mut levels = self.levels.clone();
        levels.push(Level { name: "_".into(), kind: LevelKind::Ext, modulus: modulus.to_vec() });
        let ring = FieldDescriptor { levels, ..self.clone() };
        let top = lvl + 1;
        let pow = |v: &Value, mut e: u128| {
            let mut base = v.clone();
            let mut acc = ring.one_at(top);
            while e > 0 {
                if e & 1 == 1 {
                    acc = ring.mul_at(top, &acc, &base);
                }
                base = ring.mul_at(top, &base, &base);
                e >>= 1;
            }
            acc
        };
        let mut t_coords = vec![self.zero_at(lvl); n];
        t_coords[1] = self.one_at(lvl);
        let t = Value::Ext(t_coords.clone());
        // frob[k] = T^(q^k) mod m
        let mut frob = vec![t.clone()];
        for _ in 0..n {
            let next = pow(frob.last().unwrap(), q);
            frob.push(next);
        }
        if frob[n] != t {
            return false;
        }
        let mut k = n;
        let mut prime_divisors = Vec::new();
        let mut d = 2;
        while d <= k {
            if k.is_multiple_of(d) {
                prime_divisors.push(d);
                while k.is_multiple_of(d) {
                    k /= d;
                }
            }
            d += 1;
        }
        for r in prime_divisors {
            let Value::Ext(c) = &frob[n / r] else { unreachable!() };
            let diff = self.poly_sub(lvl, c, &t_coords);
            if diff.is_empty() {
                return false;
            }
            let (g, _, _) = self.poly_xgcd(lvl, modulus.to_vec(), diff);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    fn fmt_value(&self, lvl: usize, v: &Value) -> String {
        match v {
            Value::Q(q) => q.to_string(),
            Value::Fp(x) => x.to_string(),
            Value::Ext(coords) => {
                let name = &self.levels[lvl - 1].name;
                let mut terms = Vec::new();
                for (k, c) in coords.iter().enumerate() {
                    if self.is_zero_at(lvl - 1, c) {
                        continue;
                    }
                    let coeff = self.fmt_value(lvl - 1, c);
                    let mon = match k {
                        0 => String::new(),
                        1 => name.clone(),
                        _ => format!("{name}^{k}"),
                    };
                    terms.push(join_coeff(&coeff, &mon));
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    join_terms(&terms)
                }
            }
        }
    }
}

fn is_compound(s: &str) -> bool {
    s.char_indices().any(|(i, c)| (c == '+' || c == '-') && i > 0)
}

fn join_coeff(coeff: &str, mon: &str) -> String {
    if mon.is_empty() {
        return coeff.to_string();
    }
    match coeff {
        "1" => mon.to_string(),
        "-1" => format!("-{mon}"),
        c if is_compound(c) => format!("({c})*{mon}"),
        c => format!("{c}*{mon}"),
    }
}

fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// An exact element of a [`Field`].
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_at(self.field.levels.len(), &self.value)
    }

    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        self.field
            .inv_at(self.field.levels.len(), &self.value)
            .map(|value| FieldElement { field: self.field.clone(), value })
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.field != rhs.field {
            return Err(FieldError::Mismatch);
        }
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow_u128(&self, mut e: u128) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The element as a rational number if it lies in the prime subfield
    /// of a characteristic-0 tower.
    pub fn as_rational(&self) -> Option<BigRational> {
        let mut v = &self.value;
        let mut lvl = self.field.levels.len();
        while let Value::Ext(c) = v {
            if c[1..].iter().any(|x| !self.field.is_zero_at(lvl - 1, x)) {
                return None;
            }
            v = &c[0];
            lvl -= 1;
        }
        match v {
            Value::Q(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// The residue in `0..p` when the element lies in the prime field.
    pub fn as_prime_residue(&self) -> Option<u64> {
        let mut v = &self.value;
        let mut lvl = self.field.levels.len();
        while let Value::Ext(c) = v {
            if c[1..].iter().any(|x| !self.field.is_zero_at(lvl - 1, x)) {
                return None;
            }
            v = &c[0];
            lvl -= 1;
        }
        match v {
            Value::Fp(x) => Some(*x),
            _ => None,
        }
    }

    /// Coordinates over the prime field (or `QQ`), flattened depth-first.
    pub fn prime_coordinates(&self) -> Vec<FieldElement> {
        let base = FieldDescriptor {
            characteristic: self.field.characteristic,
            levels: Vec::new(),
            rho: None,
            irreducibility: Irreducibility::Verified,
        };
        let base = Field(Arc::new(base));
        let mut out = Vec::new();
        fn walk(v: &Value, out: &mut Vec<Value>) {
            match v {
                Value::Ext(c) => c.iter().for_each(|x| walk(x, out)),
                other => out.push(other.clone()),
            }
        }
        let mut flat = Vec::new();
        walk(&self.value, &mut flat);
        for v in flat {
            out.push(FieldElement { field: base.clone(), value: v });
        }
        out
    }

    fn check(&self, rhs: &FieldElement) {
        assert!(self.field == rhs.field, "field mismatch: {} vs {}", self.field, rhs.field);
    }
}

/// Checked binary arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    if a.field != b.field {
        return Err(FieldError::Mismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_value(self.field.levels.len(), &self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let value = self.field.add_at(self.field.levels.len(), &self.value, &rhs.value);
        FieldElement { field: self.field.clone(), value }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let value = self.field.sub_at(self.field.levels.len(), &self.value, &rhs.value);
        FieldElement { field: self.field.clone(), value }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let value = self.field.mul_at(self.field.levels.len(), &self.value, &rhs.value);
        FieldElement { field: self.field.clone(), value }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let value = self.field.neg_at(self.field.levels.len(), &self.value);
        FieldElement { field: self.field.clone(), value }
    }
}

macro_rules! by_value {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
by_value!(Add add, Sub sub, Mul mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn qrho() -> Field {
        Field::rationals().adjoin_rho().unwrap()
    }

    #[test]
    fn rho_squared_is_minus_one_minus_rho() {
        let f = qrho();
        let rho = f.rho().unwrap();
        assert_eq!(&rho * &rho, -&f.one() - rho.clone());
        assert_eq!(rho.pow(3), f.one());
        assert_ne!(rho, f.one());
    }

    #[test]
    fn inverse_of_one_plus_rho() {
        let f = qrho();
        let rho = f.rho().unwrap();
        let x = &f.one() + &rho;
        assert_eq!(x.inverse().unwrap(), -rho);
    }

    #[test]
    fn two_inverse_in_gf3() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.from_int(2).inverse().unwrap(), f.from_int(2));
        assert_eq!(f.zero().inverse(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn gf7_finds_rho_in_base() {
        let f = Field::prime(7).unwrap().adjoin_rho().unwrap();
        assert_eq!(f.num_levels(), 0);
        let rho = f.rho().unwrap();
        assert!(rho == f.from_int(2) || rho == f.from_int(4));
        assert_eq!(f.to_string(), "GF(7)");
    }

    #[test]
    fn gf4_construction() {
        let f2 = Field::prime(2).unwrap();
        let one = f2.one();
        let f4 = f2.extend(&[one.clone(), one.clone(), one]).unwrap();
        assert_eq!(f4.order(), Some(4));
        assert_eq!(f4.elements().count(), 4);
        // T^2+T+1 over GF(2) makes the generator a cube root of unity.
        assert!(f4.has_primitive_cube_root());
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f = Field::prime(3).unwrap();
        // T^2 - 1 = (T-1)(T+1)
        let r = f.extend(&[f.from_int(-1), f.zero(), f.one()]);
        assert_eq!(r.unwrap_err(), FieldError::Reducible);
        // T^4 + T^2 + 1 = (T^2+T+2)(T^2+2T+2) over GF(3) has no roots but factors.
        let r = f.extend(&[f.one(), f.zero(), f.one(), f.zero(), f.one()]);
        assert_eq!(r.unwrap_err(), FieldError::Reducible);
        assert_eq!(Field::prime(9).unwrap_err(), FieldError::NotPrime(9));
    }

    #[test]
    fn rho_impossible_in_char_three() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.adjoin_rho().unwrap_err(), FieldError::NoPrimitiveCubeRoot);
    }

    #[test]
    fn cube_roots() {
        let q = Field::rationals();
        assert_eq!(q.cube_root(&q.from_int(8)), CubeRoot::Exists(q.from_int(2)));
        let f = qrho();
        assert_eq!(f.cube_root(&f.from_int(2)), CubeRoot::None);
        let gf3 = Field::prime(3).unwrap();
        let gf9 = gf3.extend(&[gf3.one(), gf3.zero(), gf3.one()]).unwrap();
        for field in [gf3, gf9] {
            for a in field.elements().filter(|a| !a.is_zero()) {
                match field.cube_root(&a) {
                    CubeRoot::Exists(c) => assert_eq!(c.pow(3), a),
                    other => panic!("expected a cube root of {a}, got {other:?}"),
                }
            }
        }
        let gf7 = Field::prime(7).unwrap();
        assert_eq!(gf7.cube_root(&gf7.from_int(2)), CubeRoot::None);
        assert_eq!(gf7.cube_root(&gf7.from_int(6)), CubeRoot::Exists(gf7.from_int(3)));
    }

    #[test]
    fn field_axioms_on_samples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let gf3 = Field::prime(3).unwrap();
        let gf27 = gf3.extend(&[gf3.from_int(1), gf3.from_int(2), gf3.zero(), gf3.one()]).unwrap();
        let q = Field::rationals().adjoin_rho().unwrap();
        let cubic = q.extend(&[q.from_int(-2), q.zero(), q.zero(), q.one()]).unwrap();
        let gf7 = Field::prime(7).unwrap().adjoin_rho().unwrap();
        for field in [gf27, q, cubic, gf7] {
            for _ in 0..200 {
                let a = field.random_nonzero(&mut rng);
                let b = field.random_element(&mut rng);
                let c = field.random_element(&mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a * &a.inverse().unwrap(), field.one());
            }
        }
    }

    #[test]
    fn embedding_into_extension() {
        let f = qrho();
        let l = f.extend(&[f.from_int(-2), f.zero(), f.zero(), f.one()]).unwrap();
        let rho = l.embed(&f.rho().unwrap()).unwrap();
        assert_eq!(rho, l.rho().unwrap());
        let c = l.generator(1);
        assert_eq!(c.pow(3), l.from_int(2));
        assert_eq!(l.irreducibility(), Irreducibility::Asserted);
        assert_eq!(l.to_string(), "QQ(rho, t1)");
        assert_eq!(l.spec_string(), "QQ.rho.ext(T^3 - 2)");
        assert!(f.embed(&c).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = qrho();
        let rho = f.rho().unwrap();
        assert_eq!((-&f.one() - rho.clone()).to_string(), "-1 - rho");
        assert_eq!((&f.from_ratio(1, 3).unwrap() * &rho).to_string(), "1/3*rho");
    }
}
