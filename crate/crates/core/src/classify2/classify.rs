//! The n = 2 decision procedure. Every step applies a witness and transports
//! the tuple; the final composite is checked against the canonical tuple.

use num_traits::{One, Zero};

use super::label::{canonical_tuple, ClassLabel};
use crate::dgcore::MatrixTuple;
use crate::error::{Error, Result};
use crate::isomorph::{transport, witness_equations_hold, WitnessMatrix};
use crate::matrix::Matrix;
use crate::rational::{int, rational_sqrt, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub via: String,
    pub witness: WitnessMatrix,
}

/// A label together with the certificate `input ~ canonical_tuple(label)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: ClassLabel,
    pub steps: Vec<Step>,
    /// The product of the step witnesses, in order.
    pub witness: WitnessMatrix,
    pub remarks: Vec<String>,
}

fn w2(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<WitnessMatrix> {
    WitnessMatrix::new(Matrix::from_rows(vec![vec![a, b], vec![c, d]])?)
        .map_err(|e| Error::Classification(format!("step witness: {e}")))
}

fn diag(a: Rational, d: Rational) -> Result<WitnessMatrix> {
    w2(a, Rational::zero(), Rational::zero(), d)
}

fn swap() -> WitnessMatrix {
    WitnessMatrix::from_ints(&[[0, 1], [1, 0]])
}

struct Walk {
    current: MatrixTuple,
    witness: WitnessMatrix,
    steps: Vec<Step>,
    remarks: Vec<String>,
}

impl Walk {
    fn step(&mut self, via: impl Into<String>, a: WitnessMatrix) -> Result<()> {
        self.current = transport(&self.current, &a)?;
        self.witness = self.witness.then(&a)?;
        self.steps.push(Step { via: via.into(), witness: a });
        Ok(())
    }

    /// Entries `(a, b, c, p)` of `M^1` and `(q, d, e, f)` of `M^2`, row-major.
    fn entries(&self) -> [Rational; 8] {
        let m1 = self.current.matrix(1);
        let m2 = self.current.matrix(2);
        [
            m1[(0, 0)].clone(),
            m1[(0, 1)].clone(),
            m1[(1, 0)].clone(),
            m1[(1, 1)].clone(),
            m2[(0, 0)].clone(),
            m2[(0, 1)].clone(),
            m2[(1, 0)].clone(),
            m2[(1, 1)].clone(),
        ]
    }
}

/// Classifies a crisscross pair, returning a certified label.
pub fn classify(t: &MatrixTuple) -> Result<Classification> {
    if t.n() != 2 {
        return Err(Error::Unsupported("classification implemented for n=2 only".into()));
    }
    if !t.is_crisscross() {
        return Err(Error::NotCrisscross);
    }
    let mut walk = Walk { current: t.clone(), witness: WitnessMatrix::identity(2), steps: Vec::new(), remarks: Vec::new() };
    let label = reduce(&mut walk)?;
    let target = canonical_tuple(&label)?;
    if walk.current != target || !witness_equations_hold(t, &target, &walk.witness) {
        return Err(Error::Classification(format!("witness chain for {label} does not verify")));
    }
    Ok(Classification { label, steps: walk.steps, witness: walk.witness, remarks: walk.remarks })
}

/// Like [`classify`], but folds `B9` into `B4`: the defining pair of `B9`
/// lies in family 7 and is carried to `B4` by the same procedure.
pub fn classify_reduced(t: &MatrixTuple) -> Result<Classification> {
    let mut c = classify(t)?;
    if c.label == ClassLabel::B(9) {
        let b9 = classify(&canonical_tuple(&ClassLabel::B(9))?)?;
        c.witness = c.witness.then(&b9.witness)?;
        c.steps.extend(b9.steps);
        c.label = b9.label;
        c.remarks.push("B9 is isomorphic to B4".into());
    }
    Ok(c)
}

fn reduce(walk: &mut Walk) -> Result<ClassLabel> {
    let one = Rational::one;
    let zero = Rational::zero;
    // Each pass either finishes or performs one normalizing move (swap or shear).
    for _ in 0..4 {
        let [a, b, c, p, q, d, e, f] = walk.entries();
        if [&a, &b, &c, &p, &q, &d, &e, &f].iter().all(|x| x.is_zero()) {
            return Ok(ClassLabel::B(0));
        }
        let symmetric = b == c && d == e;
        if !symmetric {
            if !p.is_zero() || !q.is_zero() {
                break;
            }
            if b.is_zero() && e.is_zero() {
                if !c.is_zero() {
                    // Case 5 -> Case 10 -> B2.
                    let (nu, mu) = (a, c);
                    let r = &nu / &mu;
                    walk.step("Cases 10 -> 5, inverted", w2(one() + &r * &r, r.clone(), r, one())?.inverse())?;
                    walk.step("Cases 3 -> 10, inverted", w2(zero(), mu, one(), zero())?.inverse())?;
                } else {
                    walk.step("Case 3, rescale", diag(one() / &a, one() / &a)?)?;
                }
                return Ok(ClassLabel::B(2));
            }
            if c.is_zero() && d.is_zero() {
                if !b.is_zero() {
                    // Case 11 -> Case 8 -> B1.
                    let (nu, mu) = (a, b);
                    walk.step("Cases 8 -> 11, inverted", w2(one(), zero(), &nu / &mu, one())?.inverse())?;
                    walk.step("Cases 2 -> 8, inverted", w2(zero(), mu, one(), zero())?.inverse())?;
                } else {
                    walk.step("Case 2, rescale", diag(one() / &a, one() / &a)?)?;
                }
                return Ok(ClassLabel::B(1));
            }
            break;
        }
        if p.is_zero() && q.is_zero() {
            if b.is_zero() && !d.is_zero() {
                let (mu, lambda) = (a, f);
                if lambda.is_zero() {
                    walk.step("Case 1 with lambda = 0, rescale", diag(one() / &mu, one() / &mu)?)?;
                    return Ok(ClassLabel::B(3));
                }
                walk.step("Cases 1 -> 7", swap())?;
                walk.step("Cases 4 -> 7, inverted", w2(zero(), &mu / &lambda, &lambda / &mu, one())?.inverse())?;
                walk.step("Case 4 -> B4", diag(one() / &lambda, one() / &mu)?)?;
                return Ok(ClassLabel::B(4));
            }
            if b.is_zero() {
                let (lambda, mu) = (a, f);
                return match (lambda.is_zero(), mu.is_zero()) {
                    (false, false) => {
                        walk.step("Case 4 -> B4", diag(one() / &lambda, one() / &mu)?)?;
                        Ok(ClassLabel::B(4))
                    }
                    (false, true) => {
                        walk.step("Case 4 with mu = 0, rescale", diag(one() / &lambda, one() / &lambda)?)?;
                        Ok(ClassLabel::B(5))
                    }
                    (true, false) => {
                        walk.step("Case 4 (lambda, 0) -> (0, mu), inverted", w2(zero(), mu, one(), zero())?.inverse())?;
                        Ok(ClassLabel::B(5))
                    }
                    (true, true) => unreachable!("zero tuple handled above"),
                };
            }
            if d.is_zero() {
                if !a.is_zero() {
                    let (lambda, mu) = (a, b);
                    walk.step("Cases 4 -> 7, inverted", w2(zero(), &mu / &lambda, &lambda / &mu, one())?.inverse())?;
                    walk.step("Case 4 -> B4", diag(one() / &lambda, one() / &mu)?)?;
                    return Ok(ClassLabel::B(4));
                }
                walk.step("Cases 1 -> 9, inverted", w2(zero(), b, one(), zero())?.inverse())?;
                return Ok(ClassLabel::B(3));
            }
            break;
        }
        if p.is_zero() {
            walk.step("Cases 16/17 -> 14/15 by swap", swap())?;
            continue;
        }
        if !q.is_zero() {
            if b.is_zero() || d.is_zero() {
                break;
            }
            let (mu, nu, omega) = (b, d, f);
            let lambda = &q / &nu;
            let s = &lambda * &mu / &nu;
            let t = &omega / &mu;
            walk.step("Case 13 -> B(s,t)", diag(one() / &nu, one() / &mu)?)?;
            if (&s * &t).is_one() {
                if s == int(-1) {
                    walk.step("B6 -> B(-1,-1), inverted", w2(int(-1), zero(), one(), int(-1))?.inverse())?;
                    return Ok(ClassLabel::B(6));
                }
                let a = w2(s.clone(), one() / &s + int(2), &s + one(), (&s + one()) / &s)?;
                walk.step("B8 -> B(s,1/s), inverted", a.inverse())?;
                return Ok(ClassLabel::B(8));
            }
            return Ok(ClassLabel::Bst { s, t });
        }
        let lambda = p;
        if d.is_zero() {
            let (mu, omega) = (b, f);
            return Ok(match (omega.is_zero(), mu.is_zero()) {
                (true, false) => {
                    walk.step("Case 14.1 -> B5", w2(&lambda / (&mu * &mu), -lambda.clone(), zero(), mu)?)?;
                    ClassLabel::B(5)
                }
                (true, true) => {
                    walk.step("Case 14.2 -> B6", diag(lambda, one())?)?;
                    ClassLabel::B(6)
                }
                (false, _) if mu == omega => {
                    walk.step("Case 14.3 -> B7", diag(&lambda / (&mu * &mu), one() / &mu)?)?;
                    ClassLabel::B(7)
                }
                (false, true) => {
                    walk.step("Case 14.4 -> B8", diag(&lambda / (&omega * &omega), one() / &omega)?)?;
                    ClassLabel::B(8)
                }
                (false, false) => {
                    let a = w2(
                        &lambda / (&mu * (&mu - &omega)),
                        -(&lambda / (&mu * &omega)),
                        zero(),
                        one() / &omega,
                    )?;
                    walk.step("Case 14.5 -> B9", a)?;
                    ClassLabel::B(9)
                }
            });
        }
        if b.is_zero() {
            let (omega, mu) = (a, f);
            if omega.is_zero() {
                break;
            }
            let disc = int(4) * &omega * &lambda + &mu * &mu;
            if disc.is_zero() {
                walk.step("Case 15.2 -> B10", diag(one() / &omega, one() / &mu)?)?;
                return Ok(ClassLabel::B(10));
            }
            if let Some(r) = rational_sqrt(&disc) {
                let via = if mu.is_zero() { "Case 15.4 -> B11" } else { "Case 15.1 -> B11" };
                walk.step(via, w2(one() / &omega, -(&mu / (&omega * &r)), zero(), int(2) / &r)?)?;
                return Ok(ClassLabel::B(11));
            }
            // The square root needed for B11 is irrational: move into family 13 instead.
            walk.remarks.push(format!(
                "4 omega lambda + mu^2 = {disc} is not a rational square; reduced through Case 13 over the rationals"
            ));
            let shear = shear_into_case13(&walk.current)?;
            walk.step("rational shear into Case 13", shear)?;
            continue;
        }
        break;
    }
    Err(Error::Classification(format!("no case matches {:?}", walk.current)))
}

fn shear_into_case13(t: &MatrixTuple) -> Result<WitnessMatrix> {
    const SHEARS: [[[i64; 2]; 2]; 6] =
        [[[1, 0], [1, 1]], [[1, 1], [0, 1]], [[1, 0], [2, 1]], [[1, 2], [0, 1]], [[1, 0], [-1, 1]], [[1, -1], [0, 1]]];
    for s in SHEARS {
        let a = WitnessMatrix::from_ints(&s);
        let moved = transport(t, &a)?;
        let lands = [moved.entry(1, 2, 2), moved.entry(2, 1, 1), moved.entry(1, 1, 2), moved.entry(2, 1, 2)]
            .iter()
            .all(|x| !x.is_zero());
        if lands && moved.matrices().iter().all(Matrix::is_symmetric) {
            return Ok(a);
        }
    }
    Err(Error::Classification("no rational shear reaches Case 13".into()))
}
