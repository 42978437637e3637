use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::{Field, FieldElement};

/// Names of the free generators; indices into this list form words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(Arc<Vec<String>>);

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Alphabet(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<u8> {
        self.0.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn name(&self, i: u8) -> &str {
        &self.0[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }
}

/// A monomial of the free algebra; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Leftmost position where `pat` occurs as a subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pat.0.len()).find(|&i| self.0[i..].starts_with(&pat.0))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            let name = alphabet.name(g);
            parts.push(if run == 1 { name.to_string() } else { format!("{name}^{run}") });
            i += run;
        }
        parts.join(" ")
    }
}

/// A noncommutative polynomial with exact coefficients; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct NCPoly {
    alphabet: Alphabet,
    field: Field,
    terms: BTreeMap<Word, FieldElement>,
}

impl NCPoly {
    pub fn zero(alphabet: &Alphabet, field: &Field) -> Self {
        NCPoly { alphabet: alphabet.clone(), field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alphabet: &Alphabet, c: &FieldElement) -> Self {
        Self::term(alphabet, Word::empty(), c.clone())
    }

    pub fn term(alphabet: &Alphabet, w: Word, c: FieldElement) -> Self {
        let mut p = Self::zero(alphabet, c.field());
        p.add_term(w, c);
        p
    }

    /// The generator with the given name; panics on unknown names.
    pub fn generator(alphabet: &Alphabet, field: &Field, name: &str) -> Self {
        let i = alphabet.index(name).unwrap_or_else(|| panic!("unknown generator {name}"));
        Self::term(alphabet, Word(vec![i]), field.one())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> FieldElement {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &FieldElement) -> NCPoly {
        let mut out = NCPoly::zero(&self.alphabet, &self.field);
        if k.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(&self.alphabet, &self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::constant(&self.alphabet, &self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Longest word length occurring.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut words: Vec<(&Word, &FieldElement)> = self.terms.iter().collect();
        words.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        let terms: Vec<String> = words
            .into_iter()
            .map(|(w, c)| {
                let mon = if w.is_empty() { String::new() } else { w.render(&self.alphabet) };
                crate::fmt_term(&c.to_string(), &mon)
            })
            .collect();
        f.write_str(&crate::join_signed(&terms))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}
