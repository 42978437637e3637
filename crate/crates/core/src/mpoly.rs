//! Sparse commutative polynomials in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Scalar;

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<K: Scalar> {
    nvars: usize,
    terms: BTreeMap<Exponents, K>,
    zero: K,
}

impl<K: Scalar> MPoly<K> {
    pub fn zero(nvars: usize, witness: &K) -> Self {
        MPoly { nvars, terms: BTreeMap::new(), zero: witness.zero_like() }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Self::zero(nvars, &c);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize, witness: &K) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, witness.one_like())
    }

    pub fn monomial(exps: Exponents, c: K) -> Self {
        let mut p = Self::zero(exps.len(), &c);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn witness(&self) -> &K {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> K {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn add_term(&mut self, exps: Exponents, c: K) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Whether every term has total degree `d` (the zero polynomial counts).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        MPoly { terms, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars, &self.zero);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, self.zero.one_like());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[K]) -> K {
        let mut acc = self.zero.clone();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t * x.pow(k as u64);
            }
            acc = acc + t;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]` (all images share a variable count).
    pub fn substitute(&self, images: &[MPoly<K>]) -> MPoly<K> {
        let nv = images[0].nvars;
        let mut out = MPoly::zero(nv, &self.zero);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(nv, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    fn leading(&self) -> Option<(&Exponents, &K)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars, &self.zero);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let t = MPoly::monomial(e, rc.clone() * dinv.clone());
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        let mut terms = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mon: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
                .collect();
            terms.push(crate::fmt_term(&c.to_string(), &mon.join("*")));
        }
        crate::join_signed(&terms)
    }
}

impl<K: Scalar> fmt::Display for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("X{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

/// Rank of a matrix of polynomials over the rational function field, by
/// fraction-free (Bareiss) elimination.
pub fn rank_over_fraction_field<K: Scalar>(mut rows: Vec<Vec<MPoly<K>>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let nv = rows[0][0].nvars;
    let w = rows[0][0].zero.clone();
    let mut prev = MPoly::constant(nv, w.one_like());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for j in col + 1..ncols {
                let num = rows[rank][col].mul(&rows[r][j]).sub(&rows[r][col].mul(&rows[rank][j]));
                rows[r][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            rows[r][col] = MPoly::zero(nv, &w);
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn exact_division_and_substitution() {
        let q = Field::rationals();
        let x = MPoly::var(2, 0, &q.zero());
        let y = MPoly::var(2, 1, &q.zero());
        let a = x.add(&y);
        let b = x.sub(&y);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.add(&MPoly::constant(2, q.one())).exact_div(&a), None);
        // swap variables
        let swapped = prod.substitute(&[y.clone(), x.clone()]);
        assert_eq!(swapped, prod.neg());
        assert!(prod.is_homogeneous(2));
    }

    #[test]
    fn bareiss_rank() {
        let q = Field::rationals();
        let x = MPoly::var(1, 0, &q.zero());
        let one = MPoly::constant(1, q.one());
        // [[1, X], [X, X^2]] has rank 1; [[1, X], [X, 1]] rank 2.
        let r1 = rank_over_fraction_field(vec![vec![one.clone(), x.clone()], vec![x.clone(), x.mul(&x)]]);
        let r2 = rank_over_fraction_field(vec![vec![one.clone(), x.clone()], vec![x.clone(), one]]);
        assert_eq!((r1, r2), (1, 2));
    }
}
