//! Exact linear algebra: fraction-free dense elimination, a sparse integer
//! echelon form, and rational null spaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, Rational};

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(row);
    let ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(rows.iter().map(|r| primitive_integer_row(r)).collect())
}

/// Sparse integer vector: `(index, value)` pairs, indices strictly increasing, no zeros.
pub type SparseVec = Vec<(usize, BigInt)>;

pub fn sparse_from_rational(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut pairs: Vec<(usize, Rational)> = entries.into_iter().filter(|(_, q)| !q.is_zero()).collect();
    pairs.sort_by_key(|(i, _)| *i);
    let dense: Vec<Rational> = pairs.iter().map(|(_, q)| q.clone()).collect();
    let ints = primitive_integer_row(&dense);
    pairs.into_iter().map(|(i, _)| i).zip(ints).collect()
}

pub fn sparse_from_dense(row: &[Rational]) -> SparseVec {
    sparse_from_rational(row.iter().cloned().enumerate())
}

fn make_primitive(v: &mut SparseVec) {
    let g = v.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
}

/// `a * u - b * v`, merged sparsely.
fn combine(a: &BigInt, u: &SparseVec, b: &BigInt, v: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(u.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < v.len() {
        let next = match (u.get(i), v.get(j)) {
            (Some((iu, xu)), Some((iv, xv))) if iu == iv => {
                i += 1;
                j += 1;
                (*iu, a * xu - b * xv)
            }
            (Some((iu, xu)), Some((iv, _))) if iu < iv => {
                i += 1;
                (*iu, a * xu)
            }
            (Some((iu, xu)), None) => {
                i += 1;
                (*iu, a * xu)
            }
            (_, Some((iv, xv))) => {
                j += 1;
                (*iv, -(b * xv))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Incremental row-echelon form over the integers, keyed by leading index.
///
/// Rows are kept primitive, which holds coefficient growth in check on the
/// sparse, small-entry matrices produced by differentials.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` until its leading index is not a pivot; zero means `v` is in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        make_primitive(&mut v);
        while let Some((lead, coef)) = v.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else {
                break;
            };
            let pc = &p[0].1;
            let g = pc.gcd(&coef);
            v = combine(&(pc / &g), &v, &(&coef / &g), p);
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((lead, _)) => {
                let lead = *lead;
                self.pivots.insert(lead, r);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a sparse family of vectors.
pub fn sparse_rank(mut vectors: Vec<SparseVec>) -> usize {
    vectors.sort_by_key(Vec::len);
    let mut ech = SparseEchelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Kernel of the linear map whose columns are `columns` (each a sparse vector
/// of length at most `rows`): integer vectors `y` with `sum_i y_i columns[i] = 0`.
///
/// Each column is tagged with a unit vector past `rows`; a tagged column whose
/// image part reduces to zero leaves a kernel vector in its tag part.
pub fn sparse_kernel(columns: &[SparseVec], rows: usize) -> Vec<SparseVec> {
    let mut ech = SparseEchelon::new();
    let mut kernel = Vec::new();
    for (i, c) in columns.iter().enumerate() {
        debug_assert!(c.last().is_none_or(|(r, _)| *r < rows));
        let mut v = c.clone();
        v.push((rows + i, BigInt::one()));
        let r = ech.reduce(v);
        match r.first() {
            Some((lead, _)) if *lead >= rows => kernel.push(r.into_iter().map(|(j, x)| (j - rows, x)).collect()),
            Some((lead, _)) => {
                let lead = *lead;
                ech.pivots.insert(lead, r);
            }
            None => unreachable!("the tag entry cannot cancel"),
        }
    }
    kernel
}

/// Reduced row-echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let (pivot_row, other) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (x, y) in other.iter_mut().zip(pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}`, one vector per free column, in column order.
/// Each basis vector has a 1 in its free column.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn sparse_kernel_small() {
        // Columns (1, 1), (2, 2), (0, 1): kernel spanned by (2, -1, 0).
        let cols: Vec<SparseVec> = vec![
            vec![(0, 1.into()), (1, 1.into())],
            vec![(0, 2.into()), (1, 2.into())],
            vec![(1, 1.into())],
        ];
        let k = sparse_kernel(&cols, 2);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = (0..3)
            .map(|i| k[0].iter().find(|(j, _)| *j == i).map_or(0, |(_, x)| i64::try_from(x).unwrap()))
            .collect();
        assert!(v == vec![2, -1, 0] || v == vec![-2, 1, 0]);
    }

    #[test]
    fn bareiss_known_ranks() {
        assert_eq!(rank(&ints(&[&[1, 0], &[0, 0], &[0, 0], &[1, 0]])), 1);
        assert_eq!(rank(&ints(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]])), 2);
        assert_eq!(rank(&ints(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&ints(&[&[0, 0, 1], &[0, 1, 0], &[0, 0, 0]])), 2);
        let q = vec![vec![frac(1, 2), frac(1, 3)], vec![int(3), int(2)]];
        assert_eq!(rank(&q), 1);
    }

    #[test]
    fn nullspace_of_simple_system() {
        let m = ints(&[&[1, -1, 0], &[0, 1, -1]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns, vec![vec![int(1), int(1), int(1)]]);
        let ns0 = nullspace(&[], 2);
        assert_eq!(ns0.len(), 2);
    }

    #[test]
    fn echelon_membership() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(sparse_from_dense(&[int(1), int(1), int(0)])));
        assert!(e.insert(sparse_from_dense(&[int(0), int(2), int(2)])));
        assert!(!e.insert(sparse_from_dense(&[int(3), int(5), int(2)])));
        assert!(e.contains(sparse_from_dense(&[frac(1, 2), int(0), frac(-1, 2)])));
        assert!(!e.contains(sparse_from_dense(&[int(0), int(0), int(1)])));
        assert_eq!(e.rank(), 2);
    }

    proptest! {
        #[test]
        fn sparse_and_bareiss_ranks_agree(
            rows in 1usize..7, cols in 1usize..7,
            seed in proptest::collection::vec(-3i64..=3, 49)
        ) {
            let m: Vec<Vec<Rational>> = (0..rows)
                .map(|r| (0..cols).map(|c| int(seed[r * 7 + c] * (seed[(r + c) % 49] % 2))).collect())
                .collect();
            let dense = rank(&m);
            let sparse = sparse_rank(m.iter().map(|r| sparse_from_dense(r)).collect());
            prop_assert_eq!(dense, sparse);
            prop_assert_eq!(dense + nullspace(&m, cols).len(), cols);
            let columns: Vec<SparseVec> =
                (0..cols).map(|c| sparse_from_rational((0..rows).map(|r| (r, m[r][c].clone())))).collect();
            // sparse_from_rational rescales columns; rescale m to match before checking.
            let scaled: Vec<Vec<Rational>> = (0..rows)
                .map(|r| (0..cols).map(|c| {
                    columns[c].iter().find(|(i, _)| *i == r).map_or(Rational::zero(), |(_, x)| Rational::from(x.clone()))
                }).collect())
                .collect();
            let kernel = sparse_kernel(&columns, rows);
            prop_assert_eq!(kernel.len() + dense, cols);
            for k in &kernel {
                for row in &scaled {
                    let dot = k.iter().fold(Rational::zero(), |acc, (c, x)| acc + &row[*c] * Rational::from(x.clone()));
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
