//! The seventeen parametrized families of crisscross pairs, with the
//! sub-cases of families 14 and 15.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::dgcore::MatrixTuple;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Lambda,
    Mu,
    Nu,
    Omega,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Lambda, Param::Mu, Param::Nu, Param::Omega];

    pub fn name(self) -> &'static str {
        match self {
            Param::Lambda => "lambda",
            Param::Mu => "mu",
            Param::Nu => "nu",
            Param::Omega => "omega",
        }
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" | "λ" => Ok(Param::Lambda),
            "mu" | "μ" => Ok(Param::Mu),
            "nu" | "ν" => Ok(Param::Nu),
            "omega" | "ω" => Ok(Param::Omega),
            _ => Err(Error::Parse(format!("unknown parameter {s:?}"))),
        }
    }
}

/// Parameter assignment; unset parameters are `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Params {
    values: [Option<Rational>; 4],
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, p: Param, v: Rational) -> Self {
        self.set(p, v);
        self
    }

    pub fn set(&mut self, p: Param, v: Rational) {
        self.values[p as usize] = Some(v);
    }

    pub fn get(&self, p: Param) -> Option<&Rational> {
        self.values[p as usize].as_ref()
    }

    pub fn lambda(v: Rational) -> Self {
        Params::new().with(Param::Lambda, v)
    }

    pub fn mu(self, v: Rational) -> Self {
        self.with(Param::Mu, v)
    }

    pub fn nu(self, v: Rational) -> Self {
        self.with(Param::Nu, v)
    }

    pub fn omega(self, v: Rational) -> Self {
        self.with(Param::Omega, v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, &Rational)> {
        Param::ALL.into_iter().filter_map(|p| self.get(p).map(|v| (p, v)))
    }

    fn value(&self, p: Param) -> Rational {
        self.get(p).cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, v)| format!("{}={}", p.name(), v)).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `14.3` is `CaseId { case: 14, sub: Some(3) }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseId {
    pub case: u8,
    pub sub: Option<u8>,
}

impl CaseId {
    pub const fn case(case: u8) -> Self {
        CaseId { case, sub: None }
    }

    pub const fn sub(case: u8, sub: u8) -> Self {
        CaseId { case, sub: Some(sub) }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sub {
            Some(s) => write!(f, "{}.{}", self.case, s),
            None => write!(f, "{}", self.case),
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown case {s:?}"));
        let id = match s.split_once('.') {
            Some((c, k)) => CaseId::sub(c.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?),
            None => CaseId::case(s.parse().map_err(|_| bad())?),
        };
        family(id).map(|_| id).ok_or_else(bad)
    }
}

impl Serialize for CaseId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Relations pinning a parameter inside a sub-case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Derived {
    Zero(Param),
    OmegaEqualsMu,
    /// `lambda = -mu^2 / (4 omega)`, the degenerate discriminant of 15.2.
    LambdaFromDiscriminant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extra {
    MuNotOmega,
    DiscriminantNonzero,
}

/// A row of the case tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFamily {
    pub id: CaseId,
    /// Free parameters, each with whether it must be nonzero.
    pub free: Vec<(Param, bool)>,
    derived: Vec<Derived>,
    extra: Vec<Extra>,
}

impl CaseFamily {
    pub fn parameters(&self) -> impl Iterator<Item = Param> + '_ {
        self.free.iter().map(|(p, _)| *p)
    }

    /// Human-readable constraint summary, e.g. `mu != 0, lambda free`.
    pub fn constraints(&self) -> String {
        let mut parts: Vec<String> = self
            .free
            .iter()
            .map(|(p, nz)| format!("{} {}", p.name(), if *nz { "!= 0" } else { "free" }))
            .collect();
        for d in &self.derived {
            parts.push(match d {
                Derived::Zero(p) => format!("{} = 0", p.name()),
                Derived::OmegaEqualsMu => "omega = mu".into(),
                Derived::LambdaFromDiscriminant => "lambda = -mu^2/(4 omega)".into(),
            });
        }
        for e in &self.extra {
            parts.push(match e {
                Extra::MuNotOmega => "mu != omega".into(),
                Extra::DiscriminantNonzero => "4 omega lambda + mu^2 != 0".into(),
            });
        }
        parts.join(", ")
    }

    /// Completes `given` with the sub-case relations and checks every constraint.
    pub fn resolve(&self, given: &Params) -> Result<Params> {
        let constraint = |msg: String| Error::Constraint(format!("Case {}: {msg}", self.id));
        for (p, _) in given.iter() {
            let free = self.free.iter().any(|(q, _)| *q == p);
            let pinned = self.derived.iter().any(|d| match d {
                Derived::Zero(q) => *q == p,
                Derived::OmegaEqualsMu => p == Param::Omega,
                Derived::LambdaFromDiscriminant => p == Param::Lambda,
            });
            if !free && !pinned {
                return Err(constraint(format!("no parameter {}", p.name())));
            }
        }
        let mut out = Params::new();
        for (p, nonzero) in &self.free {
            let v = given.get(*p).ok_or_else(|| constraint(format!("missing {}", p.name())))?;
            if *nonzero && v.is_zero() {
                return Err(constraint(format!("{} must be nonzero", p.name())));
            }
            out.set(*p, v.clone());
        }
        for d in &self.derived {
            let (p, v) = match d {
                Derived::Zero(p) => (*p, Rational::zero()),
                Derived::OmegaEqualsMu => (Param::Omega, out.value(Param::Mu)),
                Derived::LambdaFromDiscriminant => {
                    let (mu, om) = (out.value(Param::Mu), out.value(Param::Omega));
                    (Param::Lambda, -(&mu * &mu) / (int(4) * om))
                }
            };
            if let Some(g) = given.get(p) {
                if *g != v {
                    return Err(constraint(format!("{} is fixed to {v} here", p.name())));
                }
            }
            out.set(p, v);
        }
        let (l, m, w) = (out.value(Param::Lambda), out.value(Param::Mu), out.value(Param::Omega));
        for e in &self.extra {
            match e {
                Extra::MuNotOmega if m == w => return Err(constraint("mu must differ from omega".into())),
                Extra::DiscriminantNonzero if (int(4) * &w * &l + &m * &m).is_zero() => {
                    return Err(constraint("4 omega lambda + mu^2 must be nonzero".into()))
                }
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn instantiate(&self, given: &Params) -> Result<MatrixTuple> {
        let p = self.resolve(given)?;
        let (m1, m2) = table_row(self.id.case, &p);
        Ok(MatrixTuple::new(vec![m1, m2]).expect("2x2 pair"))
    }

    /// Every admissible assignment with free values drawn from `values`
    /// (zero is skipped for nonzero parameters, and sub-case relations filter the rest).
    pub fn sample_assignments(&self, values: &[Rational]) -> Vec<Params> {
        let mut acc = vec![Params::new()];
        for (p, nonzero) in &self.free {
            acc = acc
                .into_iter()
                .flat_map(|base| {
                    values
                        .iter()
                        .filter(|v| !(*nonzero && v.is_zero()))
                        .map(move |v| base.clone().with(*p, v.clone()))
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        acc.into_iter().filter(|g| self.resolve(g).is_ok()).collect()
    }
}

fn m2(a: Rational, b: Rational, c: Rational, d: Rational) -> Matrix {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

/// `(M^1, M^2)` of a table row; `p` already resolved.
fn table_row(case: u8, p: &Params) -> (Matrix, Matrix) {
    let z = Rational::zero;
    let (l, m, n, w) = (p.value(Param::Lambda), p.value(Param::Mu), p.value(Param::Nu), p.value(Param::Omega));
    match case {
        1 => (m2(m.clone(), z(), z(), z()), m2(z(), m.clone(), m, l)),
        2 => (m2(n.clone(), z(), z(), z()), m2(z(), z(), n, z())),
        3 => (m2(n.clone(), z(), z(), z()), m2(z(), n, z(), z())),
        4 => (m2(l, z(), z(), z()), m2(z(), z(), z(), m)),
        5 | 6 => (m2(n.clone(), z(), m.clone(), z()), m2(z(), n, z(), m)),
        7 => (m2(l, m.clone(), m.clone(), z()), m2(z(), z(), z(), m)),
        8 => (m2(z(), m.clone(), z(), z()), m2(z(), z(), z(), m)),
        9 => (m2(z(), n.clone(), n.clone(), z()), m2(z(), z(), z(), n)),
        10 => (m2(z(), z(), m.clone(), z()), m2(z(), z(), z(), m)),
        11 | 12 => (m2(n.clone(), m.clone(), z(), z()), m2(z(), z(), n, m)),
        13 => (
            m2(&n + &l * (&m - &w), m.clone(), m.clone(), &m / &l),
            m2(&l * &n, n.clone(), n, w),
        ),
        14 => (m2(&m * (&m - &w) / &l, m.clone(), m, l), m2(z(), z(), z(), w)),
        15 => (m2(w.clone(), z(), z(), l), m2(z(), w.clone(), w, m)),
        16 => (m2(w.clone(), z(), z(), z()), m2(l.clone(), m.clone(), m.clone(), &m * (&m - &w) / &l)),
        17 => (m2(m, w.clone(), w.clone(), z()), m2(l, z(), z(), w)),
        _ => unreachable!("case ids are validated"),
    }
}

fn fam(id: CaseId, free: &[(Param, bool)], derived: &[Derived], extra: &[Extra]) -> CaseFamily {
    CaseFamily { id, free: free.to_vec(), derived: derived.to_vec(), extra: extra.to_vec() }
}

/// All 27 rows: cases 1 to 17 and the sub-cases 14.1-14.5, 15.1-15.5, in table order.
pub fn families() -> Vec<CaseFamily> {
    use Derived::*;
    use Extra::*;
    use Param::*;
    let c = CaseId::case;
    let s = CaseId::sub;
    vec![
        fam(c(1), &[(Mu, true), (Lambda, false)], &[], &[]),
        fam(c(2), &[(Nu, true)], &[], &[]),
        fam(c(3), &[(Nu, true)], &[], &[]),
        fam(c(4), &[(Lambda, false), (Mu, false)], &[], &[]),
        fam(c(5), &[(Mu, true), (Nu, false)], &[], &[]),
        fam(c(6), &[(Mu, false), (Nu, true)], &[], &[]),
        fam(c(7), &[(Lambda, true), (Mu, true)], &[], &[]),
        fam(c(8), &[(Mu, true)], &[], &[]),
        fam(c(9), &[(Nu, true)], &[], &[]),
        fam(c(10), &[(Mu, true)], &[], &[]),
        fam(c(11), &[(Mu, true), (Nu, false)], &[], &[]),
        fam(c(12), &[(Mu, false), (Nu, true)], &[], &[]),
        fam(c(13), &[(Mu, true), (Nu, true), (Lambda, true), (Omega, false)], &[], &[]),
        fam(c(14), &[(Lambda, true), (Mu, false), (Omega, false)], &[], &[]),
        fam(s(14, 1), &[(Lambda, true), (Mu, true)], &[Zero(Omega)], &[]),
        fam(s(14, 2), &[(Lambda, true)], &[Zero(Mu), Zero(Omega)], &[]),
        fam(s(14, 3), &[(Lambda, true), (Mu, true)], &[OmegaEqualsMu], &[]),
        fam(s(14, 4), &[(Lambda, true), (Omega, true)], &[Zero(Mu)], &[]),
        fam(s(14, 5), &[(Lambda, true), (Mu, true), (Omega, true)], &[], &[MuNotOmega]),
        fam(c(15), &[(Lambda, true), (Mu, false), (Omega, false)], &[], &[]),
        fam(s(15, 1), &[(Lambda, true), (Mu, true), (Omega, true)], &[], &[DiscriminantNonzero]),
        fam(s(15, 2), &[(Mu, true), (Omega, true)], &[LambdaFromDiscriminant], &[]),
        fam(s(15, 3), &[(Lambda, true)], &[Zero(Mu), Zero(Omega)], &[]),
        fam(s(15, 4), &[(Lambda, true), (Omega, true)], &[Zero(Mu)], &[]),
        fam(s(15, 5), &[(Lambda, true), (Mu, true)], &[Zero(Omega)], &[]),
        fam(c(16), &[(Lambda, true), (Mu, false), (Omega, false)], &[], &[]),
        fam(c(17), &[(Lambda, true), (Mu, false), (Omega, false)], &[], &[]),
    ]
}

pub fn family(id: CaseId) -> Option<CaseFamily> {
    families().into_iter().find(|f| f.id == id)
}

pub fn instantiate_case(id: CaseId, params: &Params) -> Result<MatrixTuple> {
    family(id).ok_or_else(|| Error::Parse(format!("unknown case {id}")))?.instantiate(params)
}

/// The twelve residuals of the crisscross system for n = 2, in the order
/// (1.1)-(1.4), (2.1)-(2.4), (3.1)-(3.4).
pub fn crisscross_equations_n2(t: &MatrixTuple) -> Result<Vec<Rational>> {
    if t.n() != 2 {
        return Err(Error::Dimension(format!("the residual system is for n = 2, got n = {}", t.n())));
    }
    let m = |i: usize, j: usize, k: usize| t.entry(i, j, k).clone();
    let sq = |x: Rational| &x * &x;
    Ok(vec![
        m(2, 1, 1) * m(1, 2, 1) - m(1, 1, 2) * m(2, 1, 1),
        m(2, 1, 1) * m(1, 2, 2) - m(1, 1, 2) * m(2, 1, 2),
        m(2, 2, 1) * m(1, 2, 1) - m(1, 2, 2) * m(2, 1, 1),
        m(2, 2, 1) * m(1, 2, 2) - m(1, 2, 2) * m(2, 1, 2),
        m(1, 1, 2) * m(1, 1, 1) - m(1, 1, 1) * m(1, 2, 1) + m(2, 1, 2) * m(1, 2, 1) - m(1, 1, 2) * m(2, 2, 1),
        sq(m(1, 1, 2)) - m(1, 1, 1) * m(1, 2, 2) + m(2, 1, 2) * m(1, 2, 2) - m(1, 1, 2) * m(2, 2, 2),
        m(1, 2, 2) * m(1, 1, 1) - sq(m(1, 2, 1)) + m(1, 2, 1) * m(2, 2, 2) - m(1, 2, 2) * m(2, 2, 1),
        m(1, 2, 2) * m(1, 1, 2) - m(1, 2, 1) * m(1, 2, 2),
        m(2, 1, 1) * m(2, 2, 1) - m(2, 1, 2) * m(2, 1, 1),
        m(1, 1, 1) * m(2, 1, 2) - m(2, 1, 1) * m(1, 1, 2) + m(2, 1, 1) * m(2, 2, 2) - sq(m(2, 1, 2)),
        m(1, 2, 1) * m(2, 1, 1) - m(2, 2, 1) * m(1, 1, 1) + sq(m(2, 2, 1)) - m(2, 2, 2) * m(2, 1, 1),
        m(1, 2, 1) * m(2, 1, 2) - m(2, 2, 1) * m(1, 1, 2) + m(2, 2, 1) * m(2, 2, 2) - m(2, 2, 2) * m(2, 1, 2),
    ])
}

/// Residual labels in output order.
pub const RESIDUAL_LABELS: [&str; 12] =
    ["1.1", "1.2", "1.3", "1.4", "2.1", "2.2", "2.3", "2.4", "3.1", "3.2", "3.3", "3.4"];

/// The sample values used for family checks: {-2, -1, 0, 1, 2}.
pub fn sample_values() -> Vec<Rational> {
    (-2..=2).map(int).collect()
}
