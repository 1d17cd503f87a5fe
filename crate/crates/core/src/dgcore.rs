//! Differential structures on k<x1, ..., xn>.
//!
//! A tuple `(M^1, ..., M^n)` of n x n matrices determines a degree-one map by
//! `d(x_i) = sum_{j,k} M^i[j][k] x_j x_k`, extended with the graded Leibniz
//! rule. It squares to zero exactly when the tuple is crisscross.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::freealg::{basis_words, Element, Word};
use crate::matrix::Matrix;
use crate::rational::{int, Rational};

/// An ordered n-tuple of n x n rational matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<Matrix>) -> Result<Self> {
        let n = matrices.len();
        if n == 0 {
            return Err(Error::Dimension("a tuple needs at least one matrix".into()));
        }
        if let Some((i, m)) = matrices.iter().enumerate().find(|(_, m)| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension(format!(
                "matrix {} is {}x{}, expected {n}x{n}",
                i + 1,
                m.rows(),
                m.cols()
            )));
        }
        Ok(MatrixTuple { n, matrices })
    }

    pub fn zero(n: usize) -> Self {
        MatrixTuple { n, matrices: vec![Matrix::zeros(n, n); n] }
    }

    /// Integer literal tuple; panics if malformed.
    pub fn from_ints<const N: usize>(ms: &[[[i64; N]; N]]) -> Self {
        MatrixTuple::new(ms.iter().map(|m| Matrix::from_ints(m)).collect()).expect("well-formed literal tuple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `M^i`, 1-based.
    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i - 1]
    }

    /// Entry `m^i_{jk}`, all indices 1-based.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.matrices[i - 1][(j - 1, k - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(Matrix::is_zero)
    }

    /// The n^2 x n vertical stack `(M^1; ...; M^n)`.
    pub fn stacked_rows(&self) -> Vec<Vec<Rational>> {
        self.matrices.iter().flat_map(|m| m.to_rows()).collect()
    }

    /// For each `i`, the n x n matrix `sum_k (c^k_j r^i_k - c^i_k r^k_j)` for every `j`,
    /// flattened as `[i][j]`. All zero iff crisscross.
    pub fn crisscross_defects(&self) -> Vec<Vec<Matrix>> {
        let n = self.n;
        let m = &self.matrices;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut out = Matrix::zeros(n, n);
                        for p in 0..n {
                            for q in 0..n {
                                let mut acc = Rational::zero();
                                for k in 0..n {
                                    // c^k_j is column j of M^k; r^i_k is row k of M^i.
                                    acc += &m[k][(p, j)] * &m[i][(k, q)];
                                    acc -= &m[i][(p, k)] * &m[k][(j, q)];
                                }
                                out[(p, q)] = acc;
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_crisscross(&self) -> bool {
        self.crisscross_defects().iter().flatten().all(Matrix::is_zero)
    }

    /// `d(x_i) = (x_1, ..., x_n) M^i (x_1, ..., x_n)^T`, 1-based `i`.
    pub fn generator_differential(&self, i: usize) -> Result<Element> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let m = &self.matrices[i - 1];
        let mut e = Element::zero(self.n);
        for j in 0..self.n {
            for k in 0..self.n {
                e.add_term(Word::new(vec![j as u8, k as u8]), m[(j, k)].clone());
            }
        }
        Ok(e)
    }

    /// Leibniz extension: on a word, `sum_p (-1)^(p-1) x_{i1}..d(x_{ip})..x_{id}`.
    pub fn differential(&self, a: &Element) -> Result<Element> {
        if a.n() != self.n {
            return Err(Error::GeneratorMismatch { left: self.n, right: a.n() });
        }
        let images: Vec<Vec<(u8, u8, Rational)>> = self.generator_images();
        let mut out = Element::zero(self.n);
        for (w, c) in a.terms() {
            let letters = w.letters();
            for p in 0..letters.len() {
                let coef = if p % 2 == 0 { c.clone() } else { -c.clone() };
                for (j, k, v) in &images[letters[p] as usize] {
                    let mut word = Vec::with_capacity(letters.len() + 1);
                    word.extend_from_slice(&letters[..p]);
                    word.push(*j);
                    word.push(*k);
                    word.extend_from_slice(&letters[p + 1..]);
                    out.add_term(Word::new(word), &coef * v);
                }
            }
        }
        Ok(out)
    }

    /// Nonzero `(j, k, m^i_{jk})` per generator, 0-based.
    pub(crate) fn generator_images(&self) -> Vec<Vec<(u8, u8, Rational)>> {
        self.matrices
            .iter()
            .map(|m| {
                let mut v = Vec::new();
                for j in 0..self.n {
                    for k in 0..self.n {
                        if !m[(j, k)].is_zero() {
                            v.push((j as u8, k as u8, m[(j, k)].clone()));
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `d o d` vanishes on every basis word of degree at most `up_to_degree`.
    pub fn d_squared_is_zero(&self, up_to_degree: usize) -> bool {
        (0..=up_to_degree).all(|d| {
            basis_words(self.n, d).into_iter().all(|w| {
                let e = Element::monomial(self.n, w, Rational::one());
                let once = self.differential(&e).expect("same generator count");
                self.differential(&once).expect("same generator count").is_zero()
            })
        })
    }
}

/// Deterministic pseudorandom tuple with integer entries in `[-bound, bound]`.
///
/// The stream is SplitMix64 seeded with `seed`, entries drawn row-major,
/// matrix by matrix. `bound == 0` gives the zero tuple.
pub fn random_tuple(n: usize, bound: u32, seed: u64) -> MatrixTuple {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let b = bound as i64;
    let matrices = (0..n)
        .map(|_| {
            let mut m = Matrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    m[(r, c)] = int(if b == 0 { 0 } else { rng.gen_range(-b..=b) });
                }
            }
            m
        })
        .collect();
    MatrixTuple { n, matrices }
}

/// A DG free algebra: a tuple validated to be crisscross, so `d^2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DGFreeAlgebra {
    tuple: MatrixTuple,
}

impl DGFreeAlgebra {
    pub fn new(tuple: MatrixTuple) -> Result<Self> {
        if !tuple.is_crisscross() {
            return Err(Error::NotCrisscross);
        }
        Ok(DGFreeAlgebra { tuple })
    }

    /// The algebra with zero differential.
    pub fn trivial(n: usize) -> Self {
        DGFreeAlgebra { tuple: MatrixTuple::zero(n) }
    }

    pub fn tuple(&self) -> &MatrixTuple {
        &self.tuple
    }

    pub fn n(&self) -> usize {
        self.tuple.n
    }

    pub fn differential(&self, a: &Element) -> Result<Element> {
        self.tuple.differential(a)
    }
}

impl TryFrom<MatrixTuple> for DGFreeAlgebra {
    type Error = Error;
    fn try_from(t: MatrixTuple) -> Result<Self> {
        DGFreeAlgebra::new(t)
    }
}
