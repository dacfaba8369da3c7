//! Words in a free group with integer exponents on syllables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Field;
use crate::error::Error;
use crate::linalg::Mat;

/// A freely reduced word: no zero exponents, no two adjacent syllables on
/// the same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![(i, 1)])
    }

    pub fn power_of(i: usize, e: i64) -> Self {
        Word::from_syllables([(i, e)])
    }

    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(it: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of letters, counting exponents.
    pub fn len(&self) -> u64 {
        self.0.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|s| s.0).max()
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, e));
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &rhs.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Group commutator `a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Shifts every generator index by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word(self.0.iter().map(|&(g, e)| (g + offset, e)).collect())
    }

    /// Substitutes a word for each generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for &(g, e) in &self.0 {
            w = w.mul(&images[g].pow(e));
        }
        w
    }

    fn cyclically_reduced(&self) -> Word {
        let mut s = self.0.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            let (_, e) = s.pop().unwrap();
            s[0].1 += e;
            if s[0].1 == 0 {
                s.remove(0);
            }
        }
        Word(s)
    }

    /// Representative of the conjugacy class of `{w, w^-1}`: the least
    /// syllable rotation of the cyclic reductions of `w` and `w^-1`. Relators
    /// with equal canonical forms have the same normal closure.
    pub fn cyclic_canonical(&self) -> Word {
        let mut best: Option<Word> = None;
        for w in [self.cyclically_reduced(), self.cyclically_reduced().inverse()] {
            let s = &w.0;
            for r in 0..s.len().max(1) {
                let rot = Word(s[r..].iter().chain(&s[..r]).cloned().collect());
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Left-to-right product of the assigned matrices.
    pub fn evaluate<K: Field>(&self, k: &K, assignment: &[Mat<K::Elem>]) -> Result<Mat<K::Elem>, Error> {
        let n = match assignment.first() {
            Some(m) => m.n(),
            None if self.is_identity() => return Err(Error::IndexOutOfRange { index: 0, count: 0 }),
            None => return Err(Error::IndexOutOfRange { index: self.0[0].0, count: 0 }),
        };
        let mut acc = Mat::identity(k, n);
        let mut inverses: Vec<Option<Mat<K::Elem>>> = vec![None; assignment.len()];
        for &(g, e) in &self.0 {
            let m = assignment.get(g).ok_or(Error::IndexOutOfRange { index: g, count: assignment.len() })?;
            let base = if e < 0 {
                if inverses[g].is_none() {
                    inverses[g] = Some(m.inverse(k).ok_or(Error::Singular)?);
                }
                inverses[g].as_ref().unwrap()
            } else {
                m
            };
            acc = acc.mul(k, &base.pow(k, e.abs()).unwrap());
        }
        Ok(acc)
    }
}

/// Evaluates `w` at `assignment`; the empty word needs the dimension, so it
/// is taken from the first assigned matrix.
pub fn evaluate_word<K: Field>(k: &K, w: &Word, assignment: &[Mat<K::Elem>]) -> Result<Mat<K::Elem>, Error> {
    w.evaluate(k, assignment)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|&(g, e)| if e == 1 { format!("x{}", g + 1) } else { format!("x{}^{}", g + 1, e) }).collect();
        write!(f, "{}", parts.join("*"))
    }
}
