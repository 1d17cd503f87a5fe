//! The verification suite behind `verify-paper`. Criteria run in parallel;
//! results are reported in a fixed order.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::thread;

use anyhow::bail;
use dgfree_core::classify2::{catalog_formulas, crisscross_equations_n2, families, sample_values, witness_catalog};
use dgfree_core::cohomology::{coboundary_preimage, cohomology_dims};
use dgfree_core::dgmodule::{
    degree_zero_endo_algebra, hom_into_algebra_cohomology, make_module, module_cohomology_dim, trivial_resolution,
};
use dgfree_core::isomorph::{is_symmetric_tuple, stacked_rank};
use dgfree_core::rational::int;
use dgfree_core::{
    canonical_tuple, check_witness, class_equal, classify, cohomology_dim, random_tuple, ClassLabel, DGFreeAlgebra,
    Element, MatrixTuple,
};
use serde_json::{json, Value};

use crate::commands::Reply;

const GOLDEN: [(&str, &str); 5] = [
    ("families.json", include_str!("../golden/families.json")),
    ("catalog.json", include_str!("../golden/catalog.json")),
    ("cohomology.json", include_str!("../golden/cohomology.json")),
    ("modules.json", include_str!("../golden/modules.json")),
    ("classify.json", include_str!("../golden/classify.json")),
];

type Outcome = Result<String, String>;

struct Ctx {
    golden_dir: Option<PathBuf>,
    seed: u64,
}

impl Ctx {
    fn golden(&self, name: &str) -> Result<Value, String> {
        let text = match &self.golden_dir {
            Some(dir) => {
                let path = dir.join(name);
                fs::read_to_string(&path).map_err(|e| format!("cannot read golden {}: {e}", path.display()))?
            }
            None => GOLDEN.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string()).expect("embedded golden"),
        };
        serde_json::from_str(&text).map_err(|e| format!("golden {name} is malformed: {e}"))
    }
}

fn field<'a>(v: &'a Value, key: &str, file: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("golden {file} lacks {key:?}"))
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, computed: T, golden: T) -> Result<(), String> {
    if computed == golden {
        Ok(())
    } else {
        Err(format!("{what}: computed {computed:?}, golden {golden:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn as_usize(v: &Value) -> Option<usize> {
    v.as_u64().map(|x| x as usize)
}

fn usize_list(v: &Value) -> Option<Vec<usize>> {
    v.as_array()?.iter().map(as_usize).collect()
}

fn b(k: u8) -> MatrixTuple {
    canonical_tuple(&ClassLabel::B(k)).expect("fixed label")
}

fn el(s: &str) -> Element {
    Element::parse(2, s).expect("literal element")
}

fn oracle(ctx: &Ctx) -> Outcome {
    let mut hits = 0;
    for (n, count) in [(2usize, 1000u64), (3, 200)] {
        for seed in ctx.seed..ctx.seed + count {
            let t = random_tuple(n, 2, seed);
            let cc = t.is_crisscross();
            ensure(cc == t.d_squared_is_zero(1), || format!("n={n} seed={seed}: crisscross and d^2 = 0 disagree"))?;
            hits += cc as usize;
        }
    }
    Ok(format!("1200 random tuples from seed {}, {hits} crisscross, all agree", ctx.seed))
}

fn family_validity(ctx: &Ctx) -> Outcome {
    let g = ctx.golden("families.json")?;
    let values = sample_values();
    let fams = families();
    let mut instances = 0;
    let mut residuals = 0;
    for f in &fams {
        for p in f.sample_assignments(&values) {
            let t = f.instantiate(&p).map_err(|e| format!("Case {} at {p}: {e}", f.id))?;
            let r = crisscross_equations_n2(&t).map_err(|e| e.to_string())?;
            ensure(r.iter().all(|x| *x == int(0)), || format!("Case {} at {p}: nonzero residual", f.id))?;
            residuals = r.len();
            instances += 1;
        }
    }
    same("families", Some(fams.len()), as_usize(field(&g, "families", "families.json")?))?;
    same("instances", Some(instances), as_usize(field(&g, "instances", "families.json")?))?;
    same("residuals", Some(residuals), as_usize(field(&g, "residuals", "families.json")?))?;
    Ok(format!("{} families, {instances} instances, all {residuals} residuals zero", fams.len()))
}

fn catalog(ctx: &Ctx) -> Outcome {
    let g = ctx.golden("catalog.json")?;
    let entries = witness_catalog();
    let formulas = catalog_formulas();
    let golden_formulas: Option<Vec<&str>> =
        field(&g, "formulas", "catalog.json")?.as_array().and_then(|a| a.iter().map(Value::as_str).collect());
    same("formulas", Some(formulas.clone()), golden_formulas)?;
    for name in &formulas {
        ensure(entries.iter().any(|e| e.formula == *name), || format!("{name}: no admissible instance"))?;
    }
    for e in &entries {
        let ok = check_witness(&e.source, &e.target, &e.witness).map_err(|x| x.to_string())?;
        ensure(ok, || format!("{} at {} fails", e.formula, e.params))?;
    }
    same("instances", Some(entries.len()), as_usize(field(&g, "instances", "catalog.json")?))?;
    Ok(format!("{} formulas, {} witnesses verified", formulas.len(), entries.len()))
}

fn cohomology(ctx: &Ctx) -> Outcome {
    let g = ctx.golden("cohomology.json")?;
    let cap = as_usize(field(&g, "max_degree", "cohomology.json")?).ok_or("golden max_degree is not a number")?;
    let dims = field(&g, "dims", "cohomology.json")?.as_object().ok_or("golden dims is not an object")?;
    ensure(!dims.is_empty(), || "golden dims is empty".into())?;
    for (name, expected) in dims {
        let label: ClassLabel = name.parse().map_err(|e| format!("golden label {name}: {e}"))?;
        let t = canonical_tuple(&label).map_err(|e| e.to_string())?;
        let computed = cohomology_dims(&t, cap).map_err(|e| e.to_string())?;
        same(name, Some(computed), usize_list(expected))?;
    }
    Ok(format!("{} algebras, degrees 0..{cap}", dims.len()))
}

fn ring(_: &Ctx) -> Outcome {
    let t = b(6);
    let x2 = el("x2");
    let w = el("x1.x2 + x2.x1");
    let zero = Element::zero(2);
    let eq = |a: &Element, b: &Element| class_equal(&t, a, b).map_err(|e| e.to_string());
    ensure(eq(&(&x2 * &x2), &zero)?, || "[x2]^2 is not zero".into())?;
    let (left, right) = (&x2 * &w, &w * &x2);
    ensure(eq(&left, &right)?, || "[x2][w] and [w][x2] differ".into())?;
    let pre = coboundary_preimage(&t, &left, &right).map_err(|e| e.to_string())?.ok_or("no preimage")?;
    ensure(t.differential(&pre).map_err(|e| e.to_string())? == &left - &right, || "bad preimage".into())?;
    for k in 0..=2 {
        let even = w.pow(k);
        let odd = &x2 * &even;
        for (z, d) in [(even, 2 * k), (odd, 2 * k + 1)] {
            ensure(cohomology_dim(&t, d).map_err(|e| e.to_string())? == 1, || format!("dim H^{d} is not 1"))?;
            ensure(!eq(&z, &zero)?, || format!("degree {d} product class vanishes"))?;
        }
    }
    Ok("[x2]^2 = 0, [x2][w] = [w][x2], powers of [w] and [x2][w]^k span H^0..H^5".into())
}

fn b6_module(ctx: &Ctx) -> Outcome {
    let g = ctx.golden("modules.json")?;
    let g = field(&g, "b6_resolution", "modules.json")?;
    let z = Element::zero(2);
    let f = make_module(
        DGFreeAlgebra::new(b(6)).map_err(|e| e.to_string())?,
        vec![("1".into(), 0), ("se_x2".into(), 0), ("se_z".into(), 0)],
        vec![vec![z.clone(), z.clone(), z.clone()], vec![el("x2"), z.clone(), z.clone()], vec![el("x1"), el("x2"), z]],
    )
    .map_err(|e| e.to_string())?;
    let expected = usize_list(field(g, "cohomology", "modules.json")?).ok_or("golden cohomology is not a list")?;
    let computed = (0..expected.len() as i64)
        .map(|d| module_cohomology_dim(&f, d))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    same("H(F)", computed, expected)?;
    let e = degree_zero_endo_algebra(&f).map_err(|e| e.to_string())?;
    same("dim E", Some(e.dimension), as_usize(field(g, "endo_dimension", "modules.json")?))?;
    same("E = k[X]/(X^m), m", e.truncated_polynomial, as_usize(field(g, "truncated_polynomial", "modules.json")?))?;
    Ok(format!("H(F) = k, E = k[X]/(X^{})", e.truncated_polynomial.unwrap_or(0)))
}

fn trivial(ctx: &Ctx) -> Outcome {
    let g = ctx.golden("modules.json")?;
    let cases = field(&g, "trivial_resolutions", "modules.json")?.as_array().ok_or("golden trivial_resolutions")?;
    ensure(!cases.is_empty(), || "golden trivial_resolutions is empty".into())?;
    for case in cases {
        let n = as_usize(field(case, "n", "modules.json")?).ok_or("golden n")?;
        let h0 = hom_into_algebra_cohomology(&trivial_resolution(n), 0).map_err(|e| e.to_string())?;
        same(&format!("n={n} H^0 Hom(F, A)"), Some(h0), as_usize(field(case, "hom_h0", "modules.json")?))?;
        let expected = usize_list(field(case, "algebra_dims", "modules.json")?).ok_or("golden algebra_dims")?;
        let dims = cohomology_dims(&MatrixTuple::zero(n), expected.len() - 1).map_err(|e| e.to_string())?;
        same(&format!("n={n} H(A)"), dims, expected)?;
    }
    Ok(format!("{} trivial algebras: H^0 Hom(F, A) and H(A) match", cases.len()))
}

fn completeness(ctx: &Ctx) -> Outcome {
    let g = ctx.golden("classify.json")?;
    let grid: Vec<i64> = field(&g, "grid", "classify.json")?
        .as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect())
        .ok_or("golden grid is not a list of integers")?;
    ensure(!grid.is_empty(), || "golden grid is empty".into())?;
    let k = grid.len();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for mut idx in 0..k.pow(8) {
        let mut e = [0i64; 8];
        for slot in e.iter_mut() {
            *slot = grid[idx % k];
            idx /= k;
        }
        let t = MatrixTuple::from_ints(&[[[e[0], e[1]], [e[2], e[3]]], [[e[4], e[5]], [e[6], e[7]]]]);
        if !t.is_crisscross() {
            continue;
        }
        let c = classify(&t).map_err(|x| format!("{e:?}: {x}"))?;
        let target = canonical_tuple(&c.label).map_err(|x| x.to_string())?;
        ensure(check_witness(&t, &target, &c.witness) == Ok(true), || format!("{e:?}: witness chain fails"))?;
        *counts.entry(c.label.name()).or_default() += 1;
    }
    let total: usize = counts.values().sum();
    same("crisscross tuples", Some(total), as_usize(field(&g, "crisscross", "classify.json")?))?;
    let golden_counts: Option<BTreeMap<String, usize>> = field(&g, "labels", "classify.json")?
        .as_object()
        .and_then(|o| o.iter().map(|(k, v)| as_usize(v).map(|v| (k.clone(), v))).collect());
    same("label counts", Some(counts), golden_counts)?;
    Ok(format!("{total} crisscross tuples classified with verified witnesses"))
}

fn invariants(_: &Ctx) -> Outcome {
    let entries = witness_catalog();
    for e in &entries {
        let tag = || format!("{} at {}", e.formula, e.params);
        same(&tag(), stacked_rank(&e.source), stacked_rank(&e.target))?;
        same(&tag(), is_symmetric_tuple(&e.source), is_symmetric_tuple(&e.target))?;
        ensure(check_witness(&e.target, &e.source, &e.witness.inverse()) == Ok(true), || format!("{}: inverse", tag()))?;
    }
    let mut pairs: Vec<(&MatrixTuple, &MatrixTuple)> = entries.iter().map(|e| (&e.source, &e.target)).collect();
    pairs.sort_by_key(|(s, t)| format!("{s:?}{t:?}"));
    pairs.dedup();
    for (s, t) in &pairs {
        let (ds, dt) = (cohomology_dims(s, 5).map_err(|e| e.to_string())?, cohomology_dims(t, 5).map_err(|e| e.to_string())?);
        same("cohomology across a witness", ds, dt)?;
    }
    let mut chains = 0;
    for a in &entries {
        for c in entries.iter().filter(|c| c.source == a.target) {
            let w = a.witness.then(&c.witness).map_err(|e| e.to_string())?;
            ensure(check_witness(&a.source, &c.target, &w) == Ok(true), || format!("{} then {}", a.formula, c.formula))?;
            chains += 1;
        }
    }
    Ok(format!("{} witnesses, {} distinct pairs, {chains} composed chains", entries.len(), pairs.len()))
}

type Check = fn(&Ctx) -> Outcome;

const CRITERIA: [(&str, Check); 9] = [
    ("oracle", oracle),
    ("families", family_validity),
    ("catalog", catalog),
    ("cohomology", cohomology),
    ("ring", ring),
    ("b6-module", b6_module),
    ("trivial", trivial),
    ("classify", completeness),
    ("invariants", invariants),
];

pub fn run(only: &[String], golden_dir: Option<PathBuf>, seed: u64) -> anyhow::Result<Reply> {
    for name in only {
        if !CRITERIA.iter().any(|(n, _)| n == name) {
            let known: Vec<&str> = CRITERIA.iter().map(|(n, _)| *n).collect();
            bail!("unknown criterion {name:?}; known: {}", known.join(", "));
        }
    }
    if let Some(dir) = &golden_dir {
        if !dir.is_dir() {
            bail!("golden directory {} does not exist", dir.display());
        }
    }
    let ctx = Ctx { golden_dir, seed };
    let selected: Vec<(usize, &str, Check)> = CRITERIA
        .iter()
        .enumerate()
        .filter(|(_, (n, _))| only.is_empty() || only.iter().any(|o| o == n))
        .map(|(i, (n, f))| (i + 1, *n, *f))
        .collect();
    let outcomes: Vec<Outcome> = thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|(_, _, f)| {
                let ctx = &ctx;
                s.spawn(move || catch_unwind(AssertUnwindSafe(|| f(ctx))).unwrap_or_else(|_| Err("panicked".into())))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for ((number, name, _), outcome) in selected.iter().zip(outcomes) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if !passed {
            eprintln!("criterion {number} {name}: FAIL ({detail})");
            failed.push(*name);
        }
        rows.push(json!({"criterion": number, "name": name, "passed": passed, "detail": detail}));
    }
    let out = json!({
        "criteria": rows,
        "passed": selected.len() - failed.len(),
        "total": selected.len(),
        "failed": failed,
    });
    Ok(Reply::json(if failed.is_empty() { 0 } else { 1 }, &out))
}
