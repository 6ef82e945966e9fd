use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::{Gen, Word};

/// A finite integer combination of free-group words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn gen(g: Gen) -> Self {
        Self::word(Word::gen(g))
    }

    pub fn term(w: Word, coeff: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(w, coeff);
        e
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Number of words with nonzero coefficient.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Left multiplication by a word.
    pub fn left_mul(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (v, c) in self.terms() {
            out.add_term(w.concat(v), c);
        }
        out
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, b: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in b.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, b: &GroupRingElement) -> GroupRingElement {
        self + &(-b)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, b: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, cu) in self.terms() {
            for (v, cv) in b.terms() {
                out.add_term(u.concat(v), cu * cv);
            }
        }
        out
    }
}
