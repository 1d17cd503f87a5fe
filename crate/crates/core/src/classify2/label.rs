use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::dgcore::MatrixTuple;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{format_rational, frac, int, parse_rational, Rational};

/// An isomorphism class of DG free algebras on two generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// `B0` to `B11`.
    B(u8),
    /// `B(s, t)` with `s != 0` and `s t != 1`.
    Bst { s: Rational, t: Rational },
}

impl ClassLabel {
    pub fn bst(s: Rational, t: Rational) -> Result<Self> {
        let label = ClassLabel::Bst { s, t };
        label.validate()?;
        Ok(label)
    }

    /// `B0` to `B11`.
    pub fn fixed() -> [ClassLabel; 12] {
        std::array::from_fn(|k| ClassLabel::B(k as u8))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ClassLabel::B(k) if *k > 11 => Err(Error::MalformedLabel(format!("B{k}"))),
            ClassLabel::Bst { s, .. } if s.is_zero() => Err(Error::MalformedLabel(format!("{self}: s must be nonzero"))),
            ClassLabel::Bst { s, t } if (s * t).is_one() => {
                Err(Error::MalformedLabel(format!("{self}: s t = 1 is B8 or B6")))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ClassLabel::B(k) => format!("B{k}"),
            ClassLabel::Bst { .. } => "B(s,t)".into(),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::B(k) => write!(f, "B{k}"),
            ClassLabel::Bst { s, t } => write!(f, "B({},{})", format_rational(s), format_rational(t)),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::MalformedLabel(text.to_string());
        let rest = text.trim().strip_prefix('B').ok_or_else(bad)?;
        let label = if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (s, t) = inner.split_once(',').ok_or_else(bad)?;
            ClassLabel::Bst { s: parse_rational(s.trim())?, t: parse_rational(t.trim())? }
        } else {
            ClassLabel::B(rest.parse().map_err(|_| bad())?)
        };
        label.validate()?;
        Ok(label)
    }
}

fn pair(m1: Matrix, m2: Matrix) -> MatrixTuple {
    MatrixTuple::new(vec![m1, m2]).expect("2x2 pair")
}

/// `(1+s-st, 1; 1, 1/s)` and `(s, 1; 1, t)`, defined for any nonzero `s`.
pub(crate) fn bst_tuple(s: &Rational, t: &Rational) -> MatrixTuple {
    let one = Rational::one();
    pair(
        Matrix::from_rows(vec![vec![&one + s - s * t, one.clone()], vec![one.clone(), &one / s]]).unwrap(),
        Matrix::from_rows(vec![vec![s.clone(), one.clone()], vec![one, t.clone()]]).unwrap(),
    )
}

/// The defining pair of matrices of a class.
pub fn canonical_tuple(label: &ClassLabel) -> Result<MatrixTuple> {
    label.validate()?;
    let f = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| MatrixTuple::from_ints(&[a, b]);
    Ok(match label {
        ClassLabel::B(0) => MatrixTuple::zero(2),
        ClassLabel::B(1) => f([[1, 0], [0, 0]], [[0, 0], [1, 0]]),
        ClassLabel::B(2) => f([[1, 0], [0, 0]], [[0, 1], [0, 0]]),
        ClassLabel::B(3) => f([[1, 0], [0, 0]], [[0, 1], [1, 0]]),
        ClassLabel::B(4) => f([[1, 0], [0, 0]], [[0, 0], [0, 1]]),
        ClassLabel::B(5) => f([[1, 0], [0, 0]], [[0, 0], [0, 0]]),
        ClassLabel::B(6) => f([[0, 0], [0, 1]], [[0, 0], [0, 0]]),
        ClassLabel::B(7) => f([[0, 1], [1, 1]], [[0, 0], [0, 1]]),
        ClassLabel::B(8) => f([[0, 0], [0, 1]], [[0, 0], [0, 1]]),
        ClassLabel::B(9) => f([[1, 1], [1, 0]], [[0, 0], [0, 1]]),
        ClassLabel::B(10) => pair(
            Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), frac(-1, 4)]])?,
            Matrix::from_ints(&[[0, 1], [1, 1]]),
        ),
        ClassLabel::B(11) => f([[1, 0], [0, 1]], [[0, 1], [1, 0]]),
        ClassLabel::Bst { s, t } => bst_tuple(s, t),
        ClassLabel::B(_) => unreachable!("validated"),
    })
}
