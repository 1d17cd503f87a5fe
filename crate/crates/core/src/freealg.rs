//! The free graded algebra k<x1, ..., xn> over the rationals, all generators
//! in degree 1.
//!
//! Words keep 0-based letters internally; the text form (`x1.x2.x1`) and all
//! user-facing generator indices are 1-based.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A monomial: a finite sequence of generator letters. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    /// Builds a word from 0-based letters.
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based generator indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let letters = indices
            .iter()
            .map(|&i| {
                if i == 0 || i > u8::MAX as usize + 1 {
                    Err(Error::IndexOutOfRange { index: i, n: u8::MAX as usize + 1 })
                } else {
                    Ok((i - 1) as u8)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Position of this word in `basis_words(n, degree)`.
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * n + l as usize)
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(n: usize, degree: usize, mut index: usize) -> Word {
        let mut letters = vec![0u8; degree];
        for slot in letters.iter_mut().rev() {
            *slot = (index % n) as u8;
            index /= n;
        }
        Word(letters)
    }

    /// Parses `1` (the unit) or dot-separated generators such as `x1.x2.x1`.
    pub fn parse(text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::unit());
        }
        let mut indices = Vec::new();
        for part in text.split('.') {
            let part = part.trim();
            let idx = part
                .strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("invalid generator {part:?} in word {text:?}")))?;
            indices.push(idx);
        }
        Word::from_indices(&indices)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "x{}", *l as usize + 1)?;
        }
        Ok(())
    }
}

/// All `n^d` words of length `d`, in lexicographic order.
pub fn basis_words(n: usize, d: usize) -> Vec<Word> {
    assert!(n >= 1, "at least one generator");
    let count = n.pow(d as u32);
    (0..count).map(|i| Word::from_index(n, d, i)).collect()
}

/// A finite rational combination of words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    n: usize,
    terms: BTreeMap<Word, Rational>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Element::monomial(n, Word::unit(), Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        Element::monomial(n, Word::unit(), c)
    }

    /// The generator `x_i`, 1-based.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(Element::monomial(n, Word::new(vec![(i - 1) as u8]), Rational::one()))
    }

    pub fn monomial(n: usize, word: Word, c: Rational) -> Self {
        let mut e = Element::zero(n);
        e.add_term(word, c);
        e
    }

    /// Builds an element from (word, coefficient) pairs, merging repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut e = Element::zero(n);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: degree, then lexicographic.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(w.letters().iter().all(|&l| (l as usize) < self.n));
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The degree-`d` component.
    pub fn homogeneous(&self, d: usize) -> Element {
        Element {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Word::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Degrees that occur, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(Word::degree).collect();
        ds.dedup();
        ds
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(self.n);
        }
        Element {
            n: self.n,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    fn check_n(&self, other: &Element) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check_n(other)?;
        let mut out = Element::zero(self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Element {
        (0..k).fold(Element::one(self.n), |acc, _| &acc * self)
    }

    /// Coordinates of the degree-`d` component in the `basis_words(n, d)` order.
    pub fn coordinates(&self, d: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n.pow(d as u32)];
        for (w, c) in self.terms.iter().filter(|(w, _)| w.degree() == d) {
            v[w.index(self.n)] = c.clone();
        }
        v
    }

    pub fn from_coordinates(n: usize, d: usize, coords: &[Rational]) -> Element {
        Element::from_terms(
            n,
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Word::from_index(n, d, i), c.clone())),
        )
    }

    /// Parses `"1/2 * x1.x2 - 3 * x2 + x1 + 5"`. A bare word has coefficient 1,
    /// a bare number multiplies the unit word.
    pub fn parse(n: usize, text: &str) -> Result<Element> {
        let text = text.trim().replace('\u{2212}', "-");
        if text.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut out = Element::zero(n);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() && !current.trim_end().ends_with('*') {
                chunks.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.trim().is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        chunks.push((negative, current));
        for (neg, chunk) in chunks {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            let (coef, word) = match chunk.split_once('*') {
                Some((c, w)) => (parse_rational(c)?, Word::parse(w)?),
                None if chunk.starts_with('x') => (Rational::one(), Word::parse(chunk)?),
                None => (parse_rational(chunk)?, Word::unit()),
            };
            if let Some(&l) = word.letters().iter().find(|&&l| l as usize >= n) {
                return Err(Error::IndexOutOfRange { index: l as usize + 1, n });
            }
            out.add_term(word, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let magnitude = if k == 0 { c.clone() } else { c.abs() };
            if k > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            write!(f, "{} * {}", format_rational(&magnitude), w)?;
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on a generator-count mismatch; use [`Element::checked_add`] to get an error instead.
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("generator count mismatch")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("generator count mismatch")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("generator count mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn x(n: usize, i: usize) -> Element {
        Element::generator(n, i).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn add_cancels() {
        let a = &x(2, 1) + &x(2, 2);
        let b = -&x(2, 2);
        assert_eq!(&a + &b, x(2, 1));
        assert_eq!(&Element::zero(2) + &a, a);
        let half = Element::monomial(2, w("x1.x2"), frac(1, 2));
        assert_eq!(&half + &half, Element::monomial(2, w("x1.x2"), int(1)));
    }

    #[test]
    fn mul_is_noncommutative() {
        let x1 = x(2, 1);
        let x2 = x(2, 2);
        assert_eq!(&x1 * &x2, Element::monomial(2, w("x1.x2"), int(1)));
        assert_eq!(&x2 * &x1, Element::monomial(2, w("x2.x1"), int(1)));
        assert_ne!(&x1 * &x2, &x2 * &x1);
        let a = Element::parse(2, "3 * x1.x2 - 1/2 * x2").unwrap();
        assert_eq!(&Element::one(2) * &a, a);
    }

    #[test]
    fn mul_expands_by_hand() {
        let s = &x(2, 1) + &x(2, 2);
        let d = &x(2, 1) - &x(2, 2);
        let expected = Element::from_terms(
            2,
            [(w("x1.x1"), int(1)), (w("x1.x2"), int(-1)), (w("x2.x1"), int(1)), (w("x2.x2"), int(-1))],
        );
        assert_eq!(&s * &d, expected);
        assert_eq!((&s * &d).len(), 4);
    }

    #[test]
    fn mismatch_is_an_error() {
        assert_eq!(
            x(2, 1).checked_add(&x(3, 1)),
            Err(Error::GeneratorMismatch { left: 2, right: 3 })
        );
        assert!(x(2, 1).checked_mul(&x(3, 1)).is_err());
        assert!(Element::generator(2, 3).is_err());
    }

    #[test]
    fn basis_word_order() {
        assert_eq!(basis_words(2, 0), vec![Word::unit()]);
        assert_eq!(basis_words(2, 1), vec![w("x1"), w("x2")]);
        let b3 = basis_words(2, 3);
        assert_eq!(b3.len(), 8);
        assert_eq!(b3[0], w("x1.x1.x1"));
        assert_eq!(b3[7], w("x2.x2.x2"));
        for (i, word) in b3.iter().enumerate() {
            assert_eq!(word.index(2), i);
        }
    }

    #[test]
    fn text_round_trip() {
        let e = Element::parse(2, "1/2 * x1.x2 - 3 * x2 + x1 + 5").unwrap();
        assert_eq!(e.coefficient(&Word::unit()), int(5));
        assert_eq!(e.coefficient(&w("x2")), int(-3));
        assert_eq!(e.to_string(), "5 * 1 + 1 * x1 - 3 * x2 + 1/2 * x1.x2");
        assert_eq!(Element::parse(2, &e.to_string()).unwrap(), e);
        assert_eq!(Element::parse(2, "0").unwrap(), Element::zero(2));
        assert_eq!(Element::parse(2, "-x2").unwrap(), -&x(2, 2));
        assert_eq!(Element::parse(2, "-1/4 * x2.x2").unwrap().coefficient(&w("x2.x2")), frac(-1, 4));
        assert!(Element::parse(2, "x3").is_err());
        assert!(Element::parse(2, "x1 +").is_err());
    }

    #[test]
    fn homogeneous_parts() {
        let e = Element::parse(2, "x1 + x1.x2 + 2 * x2.x1").unwrap();
        assert_eq!(e.degree(), None);
        assert_eq!(e.homogeneous(2).degree(), Some(2));
        assert_eq!(e.homogeneous(2).len(), 2);
        assert_eq!(e.degrees(), vec![1, 2]);
    }
}
