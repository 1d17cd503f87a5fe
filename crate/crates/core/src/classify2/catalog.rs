//! Witness matrices for the case reductions, instantiated at rational parameters.

use num_traits::{One, Zero};

use super::families::{instantiate_case, CaseId, Param, Params};
use super::label::{bst_tuple, canonical_tuple, ClassLabel};
use crate::dgcore::MatrixTuple;
use crate::error::{Error, Result};
use crate::isomorph::WitnessMatrix;
use crate::matrix::Matrix;
use crate::rational::{int, rational_sqrt, Rational};

/// A claimed isomorphism `source ~ target` with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub formula: &'static str,
    pub params: Params,
    pub source: MatrixTuple,
    pub target: MatrixTuple,
    pub witness: WitnessMatrix,
}

type Build = fn(&P) -> Result<Option<(MatrixTuple, MatrixTuple, Matrix)>>;

struct P {
    l: Rational,
    m: Rational,
    n: Rational,
    w: Rational,
}

impl P {
    fn params(&self, used: &[Param]) -> Params {
        used.iter().fold(Params::new(), |acc, p| {
            let v = match p {
                Param::Lambda => &self.l,
                Param::Mu => &self.m,
                Param::Nu => &self.n,
                Param::Omega => &self.w,
            };
            acc.with(*p, v.clone())
        })
    }
}

fn m2(a: Rational, b: Rational, c: Rational, d: Rational) -> Matrix {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

fn swap() -> Matrix {
    Matrix::from_ints(&[[0, 1], [1, 0]])
}

/// Instantiates a family, mapping constraint violations to "not applicable".
fn case(id: CaseId, p: Params) -> Result<Option<MatrixTuple>> {
    match instantiate_case(id, &p) {
        Ok(t) => Ok(Some(t)),
        Err(Error::Constraint(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn b(k: u8) -> MatrixTuple {
    canonical_tuple(&ClassLabel::B(k)).expect("fixed label")
}

macro_rules! both {
    ($src:expr, $tgt:expr, $a:expr) => {
        match ($src?, $tgt?) {
            (Some(s), Some(t)) => Ok(Some((s, t, $a))),
            _ => Ok(None),
        }
    };
}

fn z() -> Rational {
    Rational::zero()
}

fn o() -> Rational {
    Rational::one()
}

use Param::{Lambda as L, Mu as M, Nu as N, Omega as W};

#[rustfmt::skip]
fn formulas() -> Vec<(&'static str, &'static [Param], Build)> {
    vec![
        ("Cases 2 -> 8", &[M, N], |p| {
            if p.n.is_zero() || p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(2), Params::new().nu(p.n.clone())), case(CaseId::case(8), Params::new().mu(p.m.clone())),
                  m2(z(), &p.m / &p.n, o(), z()))
        }),
        ("Cases 8 -> 11", &[M, N], |p| {
            if p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(8), Params::new().mu(p.m.clone())), case(CaseId::case(11), Params::new().mu(p.m.clone()).nu(p.n.clone())),
                  m2(o(), z(), &p.n / &p.m, o()))
        }),
        ("Cases 3 -> 6", &[M, N], |p| {
            if p.n.is_zero() { return Ok(None); }
            both!(case(CaseId::case(3), Params::new().nu(p.n.clone())), case(CaseId::case(6), Params::new().mu(p.m.clone()).nu(p.n.clone())),
                  m2(o(), &p.m / &p.n, z(), o()))
        }),
        ("Cases 10 -> 5", &[M, N], |p| {
            if p.m.is_zero() { return Ok(None); }
            let r = &p.n / &p.m;
            both!(case(CaseId::case(10), Params::new().mu(p.m.clone())), case(CaseId::case(5), Params::new().mu(p.m.clone()).nu(p.n.clone())),
                  m2(o() + &r * &r, r.clone(), r, o()))
        }),
        ("Cases 3 -> 10", &[M, N], |p| {
            if p.n.is_zero() || p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(3), Params::new().nu(p.n.clone())), case(CaseId::case(10), Params::new().mu(p.m.clone())),
                  m2(z(), &p.m / &p.n, o(), z()))
        }),
        ("Cases 1 -> 7", &[L, M], |p| {
            both!(case(CaseId::case(1), Params::lambda(p.l.clone()).mu(p.m.clone())), case(CaseId::case(7), Params::lambda(p.l.clone()).mu(p.m.clone())),
                  swap())
        }),
        ("Cases 4 -> 7", &[L, M], |p| {
            if p.l.is_zero() || p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(4), Params::lambda(p.l.clone()).mu(p.m.clone())), case(CaseId::case(7), Params::lambda(p.l.clone()).mu(p.m.clone())),
                  m2(z(), &p.m / &p.l, &p.l / &p.m, o()))
        }),
        ("Case 4 -> B4", &[L, M], |p| {
            if p.l.is_zero() || p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(4), Params::lambda(p.l.clone()).mu(p.m.clone())), Ok(Some(b(4))),
                  m2(o() / &p.l, z(), z(), o() / &p.m))
        }),
        ("Cases 1 -> 9 (lambda = 0)", &[M, N], |p| {
            if p.n.is_zero() || p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(1), Params::lambda(z()).mu(p.m.clone())), case(CaseId::case(9), Params::new().nu(p.n.clone())),
                  m2(z(), &p.n / &p.m, o(), z()))
        }),
        ("Case 4: (lambda, 0) -> (0, mu)", &[L, M], |p| {
            if p.l.is_zero() || p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::case(4), Params::lambda(p.l.clone()).mu(z())), case(CaseId::case(4), Params::lambda(z()).mu(p.m.clone())),
                  m2(z(), &p.m / &p.l, o(), z()))
        }),
        ("Cases 14 -> 16", &[L, M, W], |p| {
            let q = Params::lambda(p.l.clone()).mu(p.m.clone()).omega(p.w.clone());
            both!(case(CaseId::case(14), q.clone()), case(CaseId::case(16), q), swap())
        }),
        ("Cases 15 -> 17", &[L, M, W], |p| {
            let q = Params::lambda(p.l.clone()).mu(p.m.clone()).omega(p.w.clone());
            both!(case(CaseId::case(15), q.clone()), case(CaseId::case(17), q), swap())
        }),
        ("Case 14.1 -> B5", &[L, M], |p| {
            if p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(14, 1), Params::lambda(p.l.clone()).mu(p.m.clone())), Ok(Some(b(5))),
                  m2(&p.l / (&p.m * &p.m), -p.l.clone(), z(), p.m.clone()))
        }),
        ("Case 14.2 -> B6", &[L], |p| {
            both!(case(CaseId::sub(14, 2), Params::lambda(p.l.clone())), Ok(Some(b(6))), m2(p.l.clone(), z(), z(), o()))
        }),
        ("Case 14.3 -> B7", &[L, M], |p| {
            if p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(14, 3), Params::lambda(p.l.clone()).mu(p.m.clone())), Ok(Some(b(7))),
                  m2(&p.l / (&p.m * &p.m), z(), z(), o() / &p.m))
        }),
        ("Case 14.4 -> B8", &[L, W], |p| {
            if p.w.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(14, 4), Params::lambda(p.l.clone()).omega(p.w.clone())), Ok(Some(b(8))),
                  m2(&p.l / (&p.w * &p.w), z(), z(), o() / &p.w))
        }),
        ("Case 14.5 -> B9", &[L, M, W], |p| {
            if p.m.is_zero() || p.w.is_zero() || p.m == p.w { return Ok(None); }
            both!(case(CaseId::sub(14, 5), Params::lambda(p.l.clone()).mu(p.m.clone()).omega(p.w.clone())), Ok(Some(b(9))),
                  m2(&p.l / (&p.m * (&p.m - &p.w)), -(&p.l / (&p.m * &p.w)), z(), o() / &p.w))
        }),
        ("Case 15.1 -> B11", &[L, M, W], |p| {
            if p.w.is_zero() { return Ok(None); }
            let Some(r) = rational_sqrt(&(int(4) * &p.w * &p.l + &p.m * &p.m)) else { return Ok(None) };
            if r.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(15, 1), Params::lambda(p.l.clone()).mu(p.m.clone()).omega(p.w.clone())), Ok(Some(b(11))),
                  m2(o() / &p.w, -(&p.m / (&p.w * &r)), z(), int(2) / &r))
        }),
        ("Case 15.2 -> B10", &[M, W], |p| {
            if p.m.is_zero() || p.w.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(15, 2), Params::new().mu(p.m.clone()).omega(p.w.clone())), Ok(Some(b(10))),
                  m2(o() / &p.w, z(), z(), o() / &p.m))
        }),
        ("Case 15.3 -> B6", &[L], |p| {
            both!(case(CaseId::sub(15, 3), Params::lambda(p.l.clone())), Ok(Some(b(6))), m2(p.l.clone(), z(), z(), o()))
        }),
        ("Case 15.4 -> B11", &[L, W], |p| {
            if p.w.is_zero() { return Ok(None); }
            let Some(r) = rational_sqrt(&(&p.l * &p.w)) else { return Ok(None) };
            if r.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(15, 4), Params::lambda(p.l.clone()).omega(p.w.clone())), Ok(Some(b(11))),
                  m2(o() / &p.w, z(), z(), o() / r))
        }),
        ("Case 15.5 -> B8", &[L, M], |p| {
            if p.m.is_zero() { return Ok(None); }
            both!(case(CaseId::sub(15, 5), Params::lambda(p.l.clone()).mu(p.m.clone())), Ok(Some(b(8))),
                  m2(&p.l / (&p.m * &p.m), z(), z(), o() / &p.m))
        }),
        ("Case 13 -> B(s,t)", &[L, M, N, W], |p| {
            if p.l.is_zero() || p.m.is_zero() || p.n.is_zero() { return Ok(None); }
            let s = &p.l * &p.m / &p.n;
            let t = &p.w / &p.m;
            both!(case(CaseId::case(13), Params::lambda(p.l.clone()).mu(p.m.clone()).nu(p.n.clone()).omega(p.w.clone())),
                  Ok(Some(bst_tuple(&s, &t))), m2(o() / &p.n, z(), z(), o() / &p.m))
        }),
        ("B8 -> B(s,1/s)", &[L], |p| {
            // s is carried in the lambda slot.
            let s = &p.l;
            if s.is_zero() || *s == int(-1) { return Ok(None); }
            Ok(Some((b(8), bst_tuple(s, &(o() / s)), m2(s.clone(), o() / s + int(2), s + o(), (s + o()) / s))))
        }),
        ("B6 -> B(-1,-1)", &[], |_| {
            Ok(Some((b(6), bst_tuple(&int(-1), &int(-1)), Matrix::from_ints(&[[-1, 0], [1, -1]]))))
        }),
    ]
}

/// Formula names in catalog order.
pub fn catalog_formulas() -> Vec<&'static str> {
    formulas().into_iter().map(|(n, _, _)| n).collect()
}

/// Every formula instantiated at each assignment of its parameters drawn
/// from `values`, skipping inadmissible ones and those needing an
/// irrational square root.
pub fn witness_catalog_with(values: &[Rational]) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (name, used, build) in formulas() {
        let mut grid = vec![P { l: z(), m: z(), n: z(), w: z() }];
        for param in used {
            grid = grid
                .into_iter()
                .flat_map(|base| {
                    values.iter().map(move |v| {
                        let mut p = P { l: base.l.clone(), m: base.m.clone(), n: base.n.clone(), w: base.w.clone() };
                        match param {
                            L => p.l = v.clone(),
                            M => p.m = v.clone(),
                            N => p.n = v.clone(),
                            W => p.w = v.clone(),
                        }
                        p
                    })
                })
                .collect();
        }
        for p in grid {
            if let Some((source, target, a)) = build(&p)? {
                let witness = WitnessMatrix::new(a)
                    .map_err(|e| Error::Classification(format!("{name} at {}: {e}", p.params(used))))?;
                out.push(CatalogEntry { formula: name, params: p.params(used), source, target, witness });
            }
        }
    }
    Ok(out)
}

/// The catalog over parameter values {-2, -1, 0, 1, 2}.
pub fn witness_catalog() -> Vec<CatalogEntry> {
    witness_catalog_with(&super::families::sample_values()).expect("catalog formulas are well-formed")
}
