//! Finite-rank free DG modules `F = (+)_j A e_j` over a DG free algebra `A`.
//!
//! `d(e_j) = sum_k D[j][k] e_k` and `d(a e) = d(a) e + (-1)^|a| a d(e)`.
//! Graded pieces are `F^d = (+)_j A^(d - |e_j|)`, coordinatized block by block.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::dgcore::DGFreeAlgebra;
use crate::error::{Error, Result};
use crate::freealg::{basis_words, Element};
use crate::linalg::{nullspace, rank, rref, sparse_rank, SparseVec};
use crate::matrix::Matrix;
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeDGModule {
    algebra: DGFreeAlgebra,
    basis: Vec<(String, i64)>,
    diff: Vec<Vec<Element>>,
}

/// Validates degrees and `d^2 = 0` on every basis element.
pub fn make_module(algebra: DGFreeAlgebra, basis: Vec<(String, i64)>, diff: Vec<Vec<Element>>) -> Result<FreeDGModule> {
    let r = basis.len();
    let n = algebra.n();
    if diff.len() != r || diff.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidModule(format!("differential must be {r}x{r}")));
    }
    for (j, row) in diff.iter().enumerate() {
        for (k, entry) in row.iter().enumerate() {
            if entry.n() != n {
                return Err(Error::GeneratorMismatch { left: n, right: entry.n() });
            }
            if entry.is_zero() {
                continue;
            }
            let want = basis[j].1 + 1 - basis[k].1;
            let ok = want >= 0 && entry.degrees().iter().all(|&d| d as i64 == want);
            if !ok {
                return Err(Error::InvalidModule(format!(
                    "D[{}][{}] = {entry} must be homogeneous of degree {want}",
                    j + 1,
                    k + 1
                )));
            }
        }
    }
    let module = FreeDGModule { algebra, basis, diff };
    for j in 0..r {
        for k in 0..r {
            let c = module.d_squared_coefficient(j, k)?;
            if !c.is_zero() {
                return Err(Error::InvalidModule(format!(
                    "d^2({}) has coefficient {c} on {}",
                    module.basis[j].0, module.basis[k].0
                )));
            }
        }
    }
    Ok(module)
}

impl FreeDGModule {
    pub fn algebra(&self) -> &DGFreeAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &[(String, i64)] {
        &self.basis
    }

    pub fn diff(&self) -> &[Vec<Element>] {
        &self.diff
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coefficient of `e_k` in `d^2(e_j)`: `d(D_jk) + sum_l (-1)^|D_jl| D_jl D_lk`.
    fn d_squared_coefficient(&self, j: usize, k: usize) -> Result<Element> {
        let mut c = self.algebra.differential(&self.diff[j][k])?;
        for l in 0..self.rank() {
            let djl = &self.diff[j][l];
            if djl.is_zero() {
                continue;
            }
            let term = djl.checked_mul(&self.diff[l][k])?;
            c = if odd(djl) { c.checked_sub(&term)? } else { c.checked_add(&term)? };
        }
        Ok(c)
    }

    /// `d(sum_j a_j e_j)` on a module element given by its coefficients.
    pub fn apply(&self, coeffs: &[Element]) -> Result<Vec<Element>> {
        let r = self.rank();
        if coeffs.len() != r {
            return Err(Error::Dimension(format!("module element needs {r} coefficients")));
        }
        let mut out = vec![Element::zero(self.algebra.n()); r];
        for (j, a) in coeffs.iter().enumerate() {
            out[j] = out[j].checked_add(&self.algebra.differential(a)?)?;
            for d in a.degrees() {
                let part = a.homogeneous(d);
                for (slot, djk) in out.iter_mut().zip(&self.diff[j]) {
                    if djk.is_zero() {
                        continue;
                    }
                    let term = part.checked_mul(djk)?;
                    *slot = if d % 2 == 1 { slot.checked_sub(&term)? } else { slot.checked_add(&term)? };
                }
            }
        }
        Ok(out)
    }

    /// Block offsets and sizes of `F^d`.
    fn blocks(&self, d: i64) -> Vec<Option<usize>> {
        self.basis.iter().map(|(_, deg)| usize::try_from(d - deg).ok()).collect()
    }

    pub fn component_dim(&self, d: i64) -> usize {
        let n = self.algebra.n();
        self.blocks(d).iter().flatten().map(|&e| n.pow(e as u32)).sum()
    }

    /// Columns of `d: F^d -> F^(d+1)`, scaled to integers by a common denominator.
    fn differential_columns(&self, d: i64) -> Result<Vec<SparseVec>> {
        let n = self.algebra.n();
        let r = self.rank();
        let src = self.blocks(d);
        let dst = self.blocks(d + 1);
        let mut offsets = Vec::with_capacity(r);
        let mut acc = 0;
        for e in &dst {
            offsets.push(acc);
            acc += e.map_or(0, |e| n.pow(e as u32));
        }
        let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
        for (j, e) in src.iter().enumerate() {
            let Some(e) = *e else { continue };
            for w in basis_words(n, e) {
                let mut coeffs = vec![Element::zero(n); r];
                coeffs[j] = Element::monomial(n, w, Rational::one());
                let image = self.apply(&coeffs)?;
                let mut col = Vec::new();
                for (k, el) in image.iter().enumerate() {
                    let Some(ek) = dst[k] else {
                        debug_assert!(el.is_zero());
                        continue;
                    };
                    for (word, c) in el.terms() {
                        debug_assert_eq!(word.degree(), ek);
                        col.push((offsets[k] + word.index(n), c.clone()));
                    }
                }
                col.sort_by_key(|(i, _)| *i);
                columns.push(col);
            }
        }
        let den = Rational::from(common_denominator(columns.iter().flatten().map(|(_, v)| v)));
        Ok(columns
            .into_iter()
            .map(|col| col.into_iter().map(|(i, v)| (i, (v * &den).to_integer())).collect())
            .collect())
    }

    fn differential_rank(&self, d: i64) -> Result<usize> {
        Ok(sparse_rank(self.differential_columns(d)?))
    }

    fn require_degree_zero(&self, what: &str) -> Result<()> {
        if self.basis.iter().all(|(_, d)| *d == 0) {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} needs every basis element in degree 0")))
        }
    }
}

fn odd(e: &Element) -> bool {
    e.degree().is_some_and(|d| d % 2 == 1)
}

/// `dim H^d(F)`.
pub fn module_cohomology_dim(f: &FreeDGModule, d: i64) -> Result<usize> {
    Ok(f.component_dim(d) - f.differential_rank(d)? - f.differential_rank(d - 1)?)
}

/// The differential of `Hom_A(F, A)` from degree `p`, for a degree-0 basis.
///
/// A degree-`p` map is determined by `g_j = g(e_j)` in `A^p`, and
/// `(dg)_j = d(g_j) - sum_k D[j][k] g_k`; the Koszul signs of
/// `d_A g - (-1)^p g d_F` cancel because every `D[j][k]` has degree 1.
fn hom_columns(f: &FreeDGModule, p: usize) -> Result<Vec<SparseVec>> {
    let n = f.algebra.n();
    let r = f.rank();
    let block = n.pow(p as u32 + 1);
    let mut columns = Vec::new();
    for j in 0..r {
        for w in basis_words(n, p) {
            let g = Element::monomial(n, w, Rational::one());
            let mut col: Vec<(usize, Rational)> = Vec::new();
            for (word, c) in f.algebra.differential(&g)?.terms() {
                col.push((j * block + word.index(n), c.clone()));
            }
            for i in 0..r {
                if f.diff[i][j].is_zero() {
                    continue;
                }
                for (word, c) in f.diff[i][j].checked_mul(&g)?.terms() {
                    col.push((i * block + word.index(n), -c.clone()));
                }
            }
            col.sort_by_key(|(i, _)| *i);
            let mut merged: Vec<(usize, Rational)> = Vec::new();
            for (i, c) in col {
                match merged.last_mut() {
                    Some((li, lc)) if *li == i => *lc += c,
                    _ => merged.push((i, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            columns.push(merged);
        }
    }
    let den = Rational::from(common_denominator(columns.iter().flatten().map(|(_, v)| v)));
    Ok(columns
        .into_iter()
        .map(|col| col.into_iter().map(|(i, v)| (i, (v * &den).to_integer())).collect())
        .collect())
}

/// `dim H^d(Hom_A(F, A))` for a module with degree-0 basis.
pub fn hom_into_algebra_cohomology(f: &FreeDGModule, d: usize) -> Result<usize> {
    f.require_degree_zero("the Hom complex")?;
    let dim = f.rank() * f.algebra.n().pow(d as u32);
    let here = sparse_rank(hom_columns(f, d)?);
    let before = match d.checked_sub(1) {
        Some(p) => sparse_rank(hom_columns(f, p)?),
        None => 0,
    };
    Ok(dim - here - before)
}

/// Structure of `E = Z^0(Hom_A(F, F))` for a degree-0 basis.
///
/// A degree-0 endomorphism is `e_j -> sum_k a_jk e_k` with scalar `a_jk`; it
/// is a cocycle iff `A D = D A`. Products are matrix products, which is
/// composition in the opposite order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndoAlgebraReport {
    pub dimension: usize,
    #[serde(serialize_with = "serialize_matrices")]
    pub basis: Vec<Matrix>,
    /// `table[a][b]` holds the coordinates of `basis[a] * basis[b]`.
    #[serde(serialize_with = "serialize_table")]
    pub table: Vec<Vec<Vec<Rational>>>,
    pub commutative: bool,
    pub radical_dim: usize,
    pub radical_square_dim: usize,
    pub local: bool,
    /// A radical element outside the square of the radical, when that quotient is one-dimensional.
    #[serde(serialize_with = "serialize_opt_matrix")]
    pub nil_generator: Option<Matrix>,
    /// Least `k` with `X^k = 0` for the nil generator.
    pub nil_index: Option<usize>,
    /// `m` such that `E = k[X]/(X^m)`, when that holds.
    pub truncated_polynomial: Option<usize>,
}

fn serialize_matrices<S: serde::Serializer>(v: &[Matrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::io::matrix_rows))
}

fn serialize_opt_matrix<S: serde::Serializer>(v: &Option<Matrix>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(m) => s.serialize_some(&crate::io::matrix_rows(m)),
        None => s.serialize_none(),
    }
}

fn serialize_table<S: serde::Serializer>(t: &[Vec<Vec<Rational>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<String>>> =
        t.iter().map(|r| r.iter().map(|c| c.iter().map(crate::rational::format_rational).collect()).collect()).collect();
    s.collect_seq(rows)
}

impl EndoAlgebraReport {
    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Rational>> {
        coordinates_in(&self.basis, m)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coordinates(m).is_some()
    }
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    m.entries().to_vec()
}

fn coordinates_in(basis: &[Matrix], m: &Matrix) -> Option<Vec<Rational>> {
    let len = m.entries().len();
    let b = basis.len();
    let mut rows: Vec<Vec<Rational>> = (0..len)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|bm| bm.entries()[i].clone()).collect();
            row.push(m.entries()[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, b + 1);
    if pivots.contains(&b) {
        return None;
    }
    let mut x = vec![Rational::zero(); b];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[b].clone();
    }
    Some(x)
}

fn span_dim(ms: &[Matrix]) -> usize {
    rank(&ms.iter().map(flatten).collect::<Vec<_>>())
}

pub fn degree_zero_endo_algebra(f: &FreeDGModule) -> Result<EndoAlgebraReport> {
    f.require_degree_zero("the endomorphism algebra")?;
    let n = f.algebra.n();
    let r = f.rank();
    // Unknown a_jl sits at column j * r + l. One equation per (j, k, word of degree 1).
    let mut equations: Vec<Vec<Rational>> = Vec::new();
    for j in 0..r {
        for k in 0..r {
            for w in basis_words(n, 1) {
                let mut row = vec![Rational::zero(); r * r];
                for l in 0..r {
                    row[j * r + l] += f.diff[l][k].coefficient(&w);
                    row[l * r + k] -= f.diff[j][l].coefficient(&w);
                }
                if row.iter().any(|c| !c.is_zero()) {
                    equations.push(row);
                }
            }
        }
    }
    let basis: Vec<Matrix> = nullspace(&equations, r * r)
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(r).map(<[Rational]>::to_vec).collect()).expect("square"))
        .collect();
    let dimension = basis.len();
    let mut table = Vec::with_capacity(dimension);
    for a in &basis {
        let mut row = Vec::with_capacity(dimension);
        for b in &basis {
            let c = coordinates_in(&basis, &(a * b))
                .ok_or_else(|| Error::InvalidModule("cocycle endomorphisms are not closed under products".into()))?;
            row.push(c);
        }
        table.push(row);
    }
    let commutative = basis.iter().all(|a| basis.iter().all(|b| a * b == b * a));
    // Radical = kernel of the trace form (characteristic zero).
    let trace = |m: &Matrix| (0..r).fold(Rational::zero(), |acc, i| acc + &m[(i, i)]);
    let gram: Vec<Vec<Rational>> =
        basis.iter().map(|a| basis.iter().map(|b| trace(&(a * b))).collect()).collect();
    let radical: Vec<Matrix> = nullspace(&gram, dimension)
        .into_iter()
        .map(|c| {
            c.iter().zip(&basis).fold(Matrix::zeros(r, r), |acc, (x, b)| &acc + &b.scale(x))
        })
        .collect();
    let products: Vec<Matrix> = radical.iter().flat_map(|a| radical.iter().map(move |b| a * b)).collect();
    let radical_square_dim = span_dim(&products);
    let radical_dim = radical.len();
    let local = dimension == radical_dim + 1;
    let mut nil_generator = None;
    let mut nil_index = None;
    let mut truncated_polynomial = None;
    if local && radical_dim == radical_square_dim + 1 {
        let x = radical
            .iter()
            .find(|x| {
                let mut with = products.clone();
                with.push((*x).clone());
                span_dim(&with) > radical_square_dim
            })
            .cloned()
            .expect("rad is not rad^2");
        let mut k = 1;
        let mut power = x.clone();
        while !power.is_zero() {
            power = &power * &x;
            k += 1;
        }
        nil_index = Some(k);
        if commutative && k == dimension {
            truncated_polynomial = Some(k);
        }
        nil_generator = Some(x);
    }
    Ok(EndoAlgebraReport {
        dimension,
        basis,
        table,
        commutative,
        radical_dim,
        radical_square_dim,
        local,
        nil_generator,
        nil_index,
        truncated_polynomial,
    })
}

/// The resolution `F -> k` over the trivial algebra on `n` generators:
/// basis `1, se_y1, ..., se_yn` in degree 0 with `d(se_yi) = x_i`.
pub fn trivial_resolution(n: usize) -> FreeDGModule {
    let r = n + 1;
    let mut basis = vec![("1".to_string(), 0)];
    basis.extend((1..=n).map(|i| (format!("se_y{i}"), 0)));
    let mut diff = vec![vec![Element::zero(n); r]; r];
    for (i, row) in diff.iter_mut().enumerate().skip(1) {
        row[0] = Element::generator(n, i).expect("in range");
    }
    make_module(DGFreeAlgebra::trivial(n), basis, diff).expect("valid resolution")
}

/// The rank-one module `A e` with zero differential on `e`.
pub fn rank_one(algebra: DGFreeAlgebra) -> FreeDGModule {
    let n = algebra.n();
    make_module(algebra, vec![("e".into(), 0)], vec![vec![Element::zero(n)]]).expect("valid module")
}
