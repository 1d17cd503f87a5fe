use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use dgfree_core::classify2::{crisscross_equations_n2, families as all_families, sample_values, CaseId, RESIDUAL_LABELS};
use dgfree_core::cohomology::cohomology_report;
use dgfree_core::dgmodule::{degree_zero_endo_algebra, hom_into_algebra_cohomology, module_cohomology_dim};
use dgfree_core::io::{
    classification_json, parse_module_json, parse_tuple, parse_witness, verdict_json, ModuleJson, TupleJson,
};
use dgfree_core::isomorph::{decide, Outcome};
use dgfree_core::rational::{format_rational, parse_rational};
use dgfree_core::{canonical_tuple, make_module, random_tuple, ClassLabel, DGFreeAlgebra, Element, FreeDGModule, MatrixTuple};
use serde_json::{json, Map, Value};

use crate::Format;

pub struct Reply {
    pub code: u8,
    pub body: String,
}

impl Reply {
    pub fn json(code: u8, value: &Value) -> Self {
        let mut body = serde_json::to_string_pretty(value).expect("serializable");
        body.push('\n');
        Reply { code, body }
    }

    fn ok(value: &Value) -> Self {
        Reply::json(0, value)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_tuple(path: &Path) -> anyhow::Result<MatrixTuple> {
    parse_tuple(&read(path)?).with_context(|| format!("invalid tuple in {}", path.display()))
}

fn degree_cap(max_degree: i64) -> anyhow::Result<usize> {
    match usize::try_from(max_degree) {
        Ok(d) => Ok(d),
        Err(_) => bail!("max degree must be nonnegative, got {max_degree}"),
    }
}

pub fn check(path: &Path) -> anyhow::Result<Reply> {
    let t = load_tuple(path)?;
    let crisscross = t.is_crisscross();
    let oracle = t.d_squared_is_zero(1);
    let mut out = json!({
        "crisscross": crisscross,
        "d_squared_zero": oracle,
        "oracle_agrees": crisscross == oracle,
    });
    let defects = t.crisscross_defects();
    let failing: Vec<[usize; 2]> = (0..t.n())
        .flat_map(|i| (0..t.n()).map(move |j| (i, j)))
        .filter(|&(i, j)| !defects[i][j].is_zero())
        .map(|(i, j)| [i + 1, j + 1])
        .collect();
    out["failing_pairs"] = json!(failing);
    if t.n() == 2 {
        let residuals = crisscross_equations_n2(&t)?;
        out["residuals"] = RESIDUAL_LABELS
            .iter()
            .zip(&residuals)
            .map(|(label, r)| json!({"equation": label, "value": format_rational(r)}))
            .collect();
    }
    Ok(Reply::json(if crisscross { 0 } else { 1 }, &out))
}

pub fn classify(path: &Path) -> anyhow::Result<Reply> {
    let t = load_tuple(path)?;
    let c = dgfree_core::classify(&t)?;
    Ok(Reply::ok(&classification_json(&c)))
}

pub fn cohomology(path: &Path, max_degree: i64, format: Format) -> anyhow::Result<Reply> {
    let d = degree_cap(max_degree)?;
    let t = load_tuple(path)?;
    let report = cohomology_report(&t, d, format == Format::Json)?;
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            v["dims"] = json!(report.dims());
            Reply::ok(&v)
        }
        Format::Tsv => Reply { code: 0, body: report.to_tsv() },
    })
}

pub fn iso(first: &Path, second: &Path, witness: Option<&Path>) -> anyhow::Result<Reply> {
    let m = load_tuple(first)?;
    let t = load_tuple(second)?;
    let a = match witness {
        Some(p) => Some(parse_witness(&read(p)?).with_context(|| format!("invalid witness in {}", p.display()))?),
        None => None,
    };
    let verdict = decide(&m, &t, a.as_ref())?;
    let code = if verdict.outcome == Outcome::Isomorphic { 0 } else { 1 };
    Ok(Reply::json(code, &verdict_json(&verdict)))
}

/// Parse errors are input errors; validation failures are verdicts.
fn build_module(mj: &ModuleJson) -> anyhow::Result<Result<FreeDGModule, String>> {
    let tuple = mj.algebra.to_tuple().context("invalid algebra tuple")?;
    let algebra = match DGFreeAlgebra::new(tuple) {
        Ok(a) => a,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let n = algebra.n();
    let diff = mj
        .diff
        .iter()
        .map(|row| row.iter().map(|s| Element::parse(n, s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .context("invalid differential entry")?;
    Ok(make_module(algebra, mj.basis.clone(), diff).map_err(|e| e.to_string()))
}

fn load_module(path: &Path) -> anyhow::Result<FreeDGModule> {
    let mj = parse_module_json(&read(path)?).with_context(|| format!("invalid module in {}", path.display()))?;
    match build_module(&mj)? {
        Ok(f) => Ok(f),
        Err(reason) => bail!("invalid module in {}: {reason}", path.display()),
    }
}

pub fn module_validate(path: &Path) -> anyhow::Result<Reply> {
    let mj = parse_module_json(&read(path)?).with_context(|| format!("invalid module in {}", path.display()))?;
    Ok(match build_module(&mj)? {
        Ok(f) => Reply::ok(&json!({"valid": true, "rank": f.rank(), "basis": f.basis()})),
        Err(reason) => Reply::json(1, &json!({"valid": false, "reason": reason})),
    })
}

pub fn module_cohomology(path: &Path, max_degree: i64) -> anyhow::Result<Reply> {
    let d = degree_cap(max_degree)?;
    let f = load_module(path)?;
    let mut module = Vec::new();
    for k in 0..=d as i64 {
        module.push(json!({
            "degree": k,
            "dim_component": f.component_dim(k),
            "dim_H": module_cohomology_dim(&f, k)?,
        }));
    }
    let hom = if f.basis().iter().all(|(_, deg)| *deg == 0) {
        json!((0..=d).map(|k| hom_into_algebra_cohomology(&f, k)).collect::<Result<Vec<_>, _>>()?)
    } else {
        Value::Null
    };
    Ok(Reply::ok(&json!({"module": module, "hom_into_algebra": hom})))
}

pub fn module_endo(path: &Path) -> anyhow::Result<Reply> {
    let f = load_module(path)?;
    let report = degree_zero_endo_algebra(&f)?;
    Ok(Reply::ok(&serde_json::to_value(&report)?))
}

pub fn families(case: Option<&str>, values: &[String]) -> anyhow::Result<Reply> {
    let values = if values.is_empty() {
        sample_values()
    } else {
        values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>, _>>()?
    };
    let wanted: Option<CaseId> = case.map(str::parse).transpose()?;
    let mut out = Vec::new();
    for fam in all_families().into_iter().filter(|f| wanted.is_none_or(|id| f.id == id)) {
        for p in fam.sample_assignments(&values) {
            let t = fam.instantiate(&p)?;
            let params: Map<String, Value> = p.iter().map(|(k, v)| (k.name().to_string(), json!(format_rational(v)))).collect();
            out.push(json!({
                "case": fam.id,
                "constraints": fam.constraints(),
                "params": params,
                "tuple": TupleJson::from_tuple(&t),
            }));
        }
    }
    Ok(Reply::ok(&json!(out)))
}

pub fn canonical(label: &str) -> anyhow::Result<Reply> {
    let label: ClassLabel = label.parse()?;
    Ok(Reply::ok(&json!(TupleJson::from_tuple(&canonical_tuple(&label)?))))
}

pub fn random(n: usize, bound: u32, seed: u64) -> anyhow::Result<Reply> {
    Ok(Reply::ok(&json!(TupleJson::from_tuple(&random_tuple(n, bound, seed)))))
}
