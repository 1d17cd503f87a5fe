//! JSON interchange. Rationals are strings such as `"-3/4"`, never floats.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::classify2::{ClassLabel, Classification};
use crate::dgcore::{DGFreeAlgebra, MatrixTuple};
use crate::dgmodule::{make_module, FreeDGModule};
use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::isomorph::{IsoVerdict, WitnessMatrix};
use crate::matrix::Matrix;
use crate::rational::{format_rational, parse_rational};

type Rows = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub n: usize,
    pub matrices: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub n: usize,
    pub entries: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub algebra: TupleJson,
    pub basis: Vec<(String, i64)>,
    pub diff: Vec<Vec<String>>,
}

pub fn matrix_rows(m: &Matrix) -> Rows {
    m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn parse_matrix(rows: &Rows, n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("{what} must be {n}x{n}")));
    }
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )
}

impl TupleJson {
    pub fn from_tuple(t: &MatrixTuple) -> Self {
        TupleJson { n: t.n(), matrices: t.matrices().iter().map(matrix_rows).collect() }
    }

    pub fn to_tuple(&self) -> Result<MatrixTuple> {
        if self.matrices.len() != self.n {
            return Err(Error::Dimension(format!("n = {} but {} matrices given", self.n, self.matrices.len())));
        }
        let ms = self
            .matrices
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(m, self.n, &format!("matrix {}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        MatrixTuple::new(ms)
    }
}

impl WitnessJson {
    pub fn from_witness(w: &WitnessMatrix) -> Self {
        WitnessJson { n: w.n(), entries: matrix_rows(w.matrix()) }
    }

    pub fn to_witness(&self) -> Result<WitnessMatrix> {
        WitnessMatrix::new(parse_matrix(&self.entries, self.n, "witness")?)
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_tuple(text: &str) -> Result<MatrixTuple> {
    from_json::<TupleJson>(text)?.to_tuple()
}

pub fn parse_witness(text: &str) -> Result<WitnessMatrix> {
    from_json::<WitnessJson>(text)?.to_witness()
}

pub fn parse_module_json(text: &str) -> Result<ModuleJson> {
    from_json(text)
}

impl ModuleJson {
    pub fn to_module(&self) -> Result<FreeDGModule> {
        let algebra = DGFreeAlgebra::new(self.algebra.to_tuple()?)?;
        let n = algebra.n();
        let diff = self
            .diff
            .iter()
            .map(|row| row.iter().map(|s| Element::parse(n, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        make_module(algebra, self.basis.clone(), diff)
    }

    pub fn from_module(f: &FreeDGModule) -> Self {
        ModuleJson {
            algebra: TupleJson::from_tuple(f.algebra().tuple()),
            basis: f.basis().to_vec(),
            diff: f.diff().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

pub fn parse_module(text: &str) -> Result<FreeDGModule> {
    parse_module_json(text)?.to_module()
}

pub fn tuple_to_string(t: &MatrixTuple) -> String {
    serde_json::to_string(&TupleJson::from_tuple(t)).expect("serializable")
}

pub fn witness_to_string(w: &WitnessMatrix) -> String {
    serde_json::to_string(&WitnessJson::from_witness(w)).expect("serializable")
}

pub(crate) fn serialize_elements<S: Serializer>(v: &[Element], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub fn label_json(label: &ClassLabel) -> Value {
    match label {
        ClassLabel::Bst { s, t } => json!({"label": "B(s,t)", "s": format_rational(s), "t": format_rational(t)}),
        other => json!({"label": other.to_string()}),
    }
}

pub fn classification_json(c: &Classification) -> Value {
    let mut v = label_json(&c.label);
    let obj = v.as_object_mut().expect("object");
    obj.insert("witnesses".into(), json!(c.steps.iter().map(|s| matrix_rows(s.witness.matrix())).collect::<Vec<_>>()));
    obj.insert("steps".into(), json!(c.steps.iter().map(|s| s.via.clone()).collect::<Vec<_>>()));
    obj.insert("witness".into(), json!(matrix_rows(c.witness.matrix())));
    if !c.remarks.is_empty() {
        obj.insert("remarks".into(), json!(c.remarks));
    }
    v
}

pub fn verdict_json(v: &IsoVerdict) -> Value {
    json!({
        "isomorphic": v.outcome,
        "witness": v.witness.as_ref().map(|w| matrix_rows(w.matrix())),
        "reason": v.reason,
        "invariants": {
            "stacked_rank": [v.report.stacked_rank.0, v.report.stacked_rank.1],
            "symmetric": [v.report.symmetric.0, v.report.symmetric.1],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify2::canonical_tuple;
    use crate::rational::frac;

    #[test]
    fn tuple_round_trip() {
        let text = r#"{"n": 2, "matrices": [[["1","0"],["0","0"]], [["0","0"],["1","0"]]]}"#;
        let t = parse_tuple(text).unwrap();
        assert_eq!(t, MatrixTuple::from_ints(&[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]));
        assert_eq!(parse_tuple(&tuple_to_string(&t)).unwrap(), t);
        let b10 = canonical_tuple(&ClassLabel::B(10)).unwrap();
        assert!(tuple_to_string(&b10).contains("\"-1/4\""));
        assert_eq!(parse_tuple(&tuple_to_string(&b10)).unwrap(), b10);
    }

    #[test]
    fn witness_round_trip() {
        let w = parse_witness(r#"{"n":2, "entries":[["0","1"],["1","0"]]}"#).unwrap();
        assert_eq!(w, WitnessMatrix::from_ints(&[[0, 1], [1, 0]]));
        assert_eq!(parse_witness(&witness_to_string(&w)).unwrap(), w);
        assert_eq!(parse_witness(r#"{"n":2, "entries":[["1","1"],["1","1"]]}"#), Err(Error::Singular));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_tuple(r#"{"n": 2, "matrices": [[["1","0"]"#), Err(Error::Parse(_))));
        assert!(matches!(parse_tuple(r#"{"n": 3, "matrices": []}"#), Err(Error::Dimension(_))));
        assert!(matches!(parse_tuple(r#"{"n": 1, "matrices": [[["x"]]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_tuple(r#"{"n": 1, "matrices": [[[0.5]]]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn module_round_trip() {
        let text = r#"{"algebra": {"n": 2, "matrices": [[["0","0"],["0","1"]], [["0","0"],["0","0"]]]},
            "basis": [["1",0],["se_x2",0],["se_z",0]],
            "diff": [["0","0","0"],["x2","0","0"],["x1","x2","0"]]}"#;
        let f = parse_module(text).unwrap();
        assert_eq!(f.rank(), 3);
        let again = serde_json::to_string(&ModuleJson::from_module(&f)).unwrap();
        assert_eq!(parse_module(&again).unwrap(), f);
        let bad = text.replace(r#"["x1","x2","0"]"#, r#"["x1","0","0"]"#);
        assert!(matches!(parse_module(&bad), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn label_payloads() {
        assert_eq!(label_json(&ClassLabel::B(7)), json!({"label": "B7"}));
        let l = ClassLabel::bst(frac(1, 2), frac(-3, 1)).unwrap();
        assert_eq!(label_json(&l), json!({"label": "B(s,t)", "s": "1/2", "t": "-3"}));
    }
}
