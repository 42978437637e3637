//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;

use crate::field::Scalar;

/// Coefficients low to high; no trailing zeros. The zero polynomial keeps a
/// single witness coefficient so constants can always be produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: Scalar> {
    coeffs: Vec<K>,
    zero: K,
}

impl<K: Scalar> Poly<K> {
    pub fn new(coeffs: Vec<K>, witness: &K) -> Self {
        let mut p = Poly { coeffs, zero: witness.zero_like() };
        p.trim();
        p
    }

    pub fn zero(witness: &K) -> Self {
        Poly { coeffs: Vec::new(), zero: witness.zero_like() }
    }

    pub fn constant(c: K) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], &zero)
    }

    /// The monomial `c * X^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Poly::new(coeffs, &zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn witness(&self) -> &K {
        &self.zero
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::new(coeffs, &self.zero)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Poly::new(coeffs, &self.zero)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out, &self.zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), &self.zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[db].inv().expect("leading coefficient invertible");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (Poly::zero(&self.zero), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - db];
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap().clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    r[shift + j] = r[shift + j].clone() - c.clone() * b.clone();
                }
            }
            q[shift] = c;
            r.pop();
        }
        (Poly::new(q, &self.zero), Poly::new(r, &self.zero))
    }

    /// Makes the leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.from_int_like(i as i64) * c.clone())
            .collect();
        Poly::new(coeffs, &self.zero)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl<K: Scalar> Poly<K> {
    pub fn display_in(&self, var: &str) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mon = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(crate::fmt_term(&c.to_string(), &mon));
        }
        crate::join_signed(&terms)
    }
}

impl<K: Scalar> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("X"))
    }
}
