use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::ncpoly::{Alphabet, NCPoly, Word};
use crate::error::AlgebraError;
use crate::field::{Field, FieldElement};

/// Weighted degree-lexicographic order on words.
///
/// Words compare first by total weight, then lexicographically from the
/// left using generator precedence (higher rank is larger). Positive
/// weights make this a well-order compatible with concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u32>,
    rank: Vec<u8>,
    unrank: Vec<u8>,
}

impl MonomialOrder {
    /// `precedence` lists generator indices from largest to smallest.
    pub fn new(weights: Vec<u32>, precedence: &[u8]) -> Self {
        let n = weights.len();
        assert_eq!(precedence.len(), n, "precedence must list every generator");
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        let mut rank = vec![0u8; n];
        for (pos, &g) in precedence.iter().enumerate() {
            rank[g as usize] = (n - 1 - pos) as u8;
        }
        let mut unrank = vec![0u8; n];
        for (g, &r) in rank.iter().enumerate() {
            unrank[r as usize] = g as u8;
        }
        MonomialOrder { weights, rank, unrank }
    }

    /// Plain length-lexicographic order with the given precedence.
    pub fn deglex(precedence: &[u8]) -> Self {
        Self::new(vec![1; precedence.len()], precedence)
    }

    pub fn weight(&self, w: &Word) -> u32 {
        w.0.iter().map(|&g| self.weights[g as usize]).sum()
    }

    fn key(&self, w: &Word) -> (u32, Vec<u8>) {
        (self.weight(w), w.0.iter().map(|&g| self.rank[g as usize]).collect())
    }

    fn word(&self, key: &[u8]) -> Word {
        Word(key.iter().map(|&r| self.unrank[r as usize]).collect())
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// An ordered list of word-headed rules, each decreasing the order.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    field: Field,
    order: MonomialOrder,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(
        alphabet: Alphabet,
        field: Field,
        order: MonomialOrder,
        rules: Vec<Rule>,
    ) -> Result<Self, AlgebraError> {
        for r in &rules {
            if r.rhs.field() != &field || r.rhs.alphabet() != &alphabet {
                return Err(AlgebraError::Dimension("rule from another algebra".into()));
            }
            if let Some((w, _)) = r.rhs.terms().find(|(w, _)| order.cmp(w, &r.lhs) != Ordering::Less) {
                return Err(AlgebraError::NotDecreasing(format!(
                    "{} -> ... {} ...",
                    r.lhs.render(&alphabet),
                    w.render(&alphabet)
                )));
            }
        }
        Ok(RewriteSystem { alphabet, field, order, rules })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// A copy without the rule whose left side is `lhs`.
    pub fn without_rule(&self, lhs: &Word) -> RewriteSystem {
        RewriteSystem {
            rules: self.rules.iter().filter(|r| &r.lhs != lhs).cloned().collect(),
            ..self.clone()
        }
    }

    /// Leftmost occurrence of any rule's left side, earliest rule first.
    fn find_redex(&self, w: &Word) -> Option<(usize, &Rule)> {
        for start in 0..w.len() {
            for r in &self.rules {
                if w.0[start..].starts_with(&r.lhs.0) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    /// Reduces `p` until no rule's left side occurs in any monomial.
    ///
    /// Terms are processed from the largest monomial down; every rewrite
    /// produces strictly smaller monomials, so each word is visited once.
    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        let mut work: BTreeMap<(u32, Vec<u8>), FieldElement> = BTreeMap::new();
        let push = |work: &mut BTreeMap<(u32, Vec<u8>), FieldElement>, w: &Word, c: FieldElement| {
            let k = self.order.key(w);
            match work.get_mut(&k) {
                Some(v) => {
                    let s = &*v + &c;
                    if s.is_zero() {
                        work.remove(&k);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    if !c.is_zero() {
                        work.insert(k, c);
                    }
                }
            }
        };
        for (w, c) in p.terms() {
            push(&mut work, w, c.clone());
        }
        let mut out = NCPoly::zero(&self.alphabet, &self.field);
        while let Some(((_, key), c)) = work.pop_last() {
            let w = self.order.word(&key);
            match self.find_redex(&w) {
                Some((pos, rule)) => {
                    let prefix = Word(w.0[..pos].to_vec());
                    let suffix = Word(w.0[pos + rule.lhs.len()..].to_vec());
                    for (m, d) in rule.rhs.terms() {
                        let nw = prefix.concat(m).concat(&suffix);
                        push(&mut work, &nw, &c * d);
                    }
                }
                None => out.add_term(w, c),
            }
        }
        out
    }

    /// One rewrite step of rule `idx` applied at `pos` inside `w`.
    fn apply_at(&self, w: &Word, pos: usize, idx: usize) -> NCPoly {
        let rule = &self.rules[idx];
        let prefix = Word(w.0[..pos].to_vec());
        let suffix = Word(w.0[pos + rule.lhs.len()..].to_vec());
        let mut out = NCPoly::zero(&self.alphabet, &self.field);
        for (m, d) in rule.rhs.terms() {
            out.add_term(prefix.concat(m).concat(&suffix), d.clone());
        }
        out
    }
}

/// A word reducible in two ways whose reductions do not agree.
#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub word: Word,
    pub first: NCPoly,
    pub second: NCPoly,
}

impl fmt::Display for Ambiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} vs {}",
            self.word.render(self.first.alphabet()),
            self.first,
            self.second
        )
    }
}

/// Resolves every overlap and inclusion ambiguity between rule left sides
/// (words up to `max_len`) and reports those whose reductions differ.
pub fn overlap_check(rs: &RewriteSystem, max_len: usize) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    let rules = rs.rules();
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (a, b) = (&ri.lhs.0, &rj.lhs.0);
            // Overlap: a proper suffix of a equals a proper prefix of b.
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] != b[..k] {
                    continue;
                }
                let word = Word([&a[..], &b[k..]].concat());
                if word.len() > max_len {
                    continue;
                }
                let first = rs.normal_form(&rs.apply_at(&word, 0, i));
                let second = rs.normal_form(&rs.apply_at(&word, a.len() - k, j));
                if first != second {
                    out.push(Ambiguity { word, first, second });
                }
            }
            // Inclusion: b occurs inside a.
            if i != j && b.len() <= a.len() && a.len() <= max_len {
                for pos in 0..=a.len() - b.len() {
                    if a[pos..pos + b.len()] != b[..] {
                        continue;
                    }
                    let word = ri.lhs.clone();
                    let first = rs.normal_form(&rs.apply_at(&word, 0, i));
                    let second = rs.normal_form(&rs.apply_at(&word, pos, j));
                    if first != second {
                        out.push(Ambiguity { word, first, second });
                    }
                }
            }
        }
    }
    out
}
