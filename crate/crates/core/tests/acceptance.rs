//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dgfree_core::classify2::{
    catalog_formulas, classify, crisscross_equations_n2, families, sample_values, witness_catalog, CatalogEntry,
};
use dgfree_core::cohomology::{class_equal, coboundary_preimage, cohomology_dim, cohomology_dims};
use dgfree_core::dgmodule::{
    degree_zero_endo_algebra, hom_into_algebra_cohomology, make_module, module_cohomology_dim, trivial_resolution,
};
use dgfree_core::isomorph::{check_witness, is_symmetric_tuple, stacked_rank};
use dgfree_core::rational::int;
use dgfree_core::{canonical_tuple, random_tuple, ClassLabel, DGFreeAlgebra, Element, MatrixTuple};
use num_traits::Zero;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn b(k: u8) -> MatrixTuple {
    canonical_tuple(&ClassLabel::B(k)).unwrap()
}

fn el(s: &str) -> Element {
    Element::parse(2, s).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut hits = 0;
    for (n, count) in [(2usize, 1000u64), (3, 200)] {
        for seed in 0..count {
            let t = random_tuple(n, 2, seed);
            let cc = t.is_crisscross();
            ensure(cc == t.d_squared_is_zero(1), || format!("n={n} seed={seed} disagrees"))?;
            hits += cc as usize;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("1200 tuples agree ({hits} crisscross) in {:.2}s", elapsed.as_secs_f64()))
}

fn family_validity() -> Outcome {
    let values = sample_values();
    let mut instances = 0;
    let fams = families();
    for f in &fams {
        for p in f.sample_assignments(&values) {
            let t = f.instantiate(&p).map_err(|e| format!("Case {} at {p}: {e}", f.id))?;
            let r = crisscross_equations_n2(&t).unwrap();
            ensure(r.iter().all(Zero::is_zero), || format!("Case {} at {p}: nonzero residual", f.id))?;
            instances += 1;
        }
    }
    Ok(format!("{} families, {instances} instances, all 12 residuals zero", fams.len()))
}

fn witness_catalog_check(catalog: &[CatalogEntry]) -> Outcome {
    let formulas = catalog_formulas();
    for name in &formulas {
        ensure(catalog.iter().any(|e| e.formula == *name), || format!("{name}: no admissible instance"))?;
    }
    for e in catalog {
        let ok = check_witness(&e.source, &e.target, &e.witness).map_err(|x| x.to_string())?;
        ensure(ok, || format!("{} at {} fails", e.formula, e.params))?;
    }
    ensure(catalog.len() >= 20, || format!("only {} witnesses", catalog.len()))?;
    Ok(format!("{} formulas, {} instances verified", formulas.len(), catalog.len()))
}

fn cohomology_tables() -> Outcome {
    let start = Instant::now();
    let mut acyclic: Vec<(String, MatrixTuple)> =
        [1u8, 2, 3, 4, 7, 9, 10, 11].iter().map(|&k| (format!("B{k}"), b(k))).collect();
    for (s, t) in [(1, 2), (2, 3), (-1, 2)] {
        let label = ClassLabel::bst(int(s), int(t)).unwrap();
        acyclic.push((label.to_string(), canonical_tuple(&label).unwrap()));
    }
    let mut expected_zero = vec![0usize; 9];
    expected_zero[0] = 1;
    for (name, t) in &acyclic {
        let dims = cohomology_dims(t, 8).unwrap();
        ensure(dims == expected_zero, || format!("{name}: {dims:?}"))?;
    }
    for k in [5u8, 6, 8] {
        let dims = cohomology_dims(&b(k), 8).unwrap();
        ensure(dims == vec![1; 9], || format!("B{k}: {dims:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("14 algebras, degrees 0..8, in {:.2}s", elapsed.as_secs_f64()))
}

fn b6_ring() -> Outcome {
    let t = b(6);
    let x2 = el("x2");
    let w = el("x1.x2 + x2.x1");
    ensure(class_equal(&t, &(&x2 * &x2), &Element::zero(2)).unwrap(), || "[x2]^2 != 0".into())?;
    let (left, right) = (&x2 * &w, &w * &x2);
    ensure(class_equal(&t, &left, &right).unwrap(), || "[x2][w] != [w][x2]".into())?;
    let diff = &left - &right;
    ensure(diff == t.differential(&el("x1.x1")).unwrap(), || "difference is not d(x1^2)".into())?;
    ensure(coboundary_preimage(&t, &left, &right).unwrap().is_some(), || "no preimage".into())?;
    for (z, d) in [(&w * &w, 4usize), (&x2 * &w, 3)] {
        ensure(t.differential(&z).unwrap().is_zero(), || format!("degree {d} rep is not a cocycle"))?;
        ensure(cohomology_dim(&t, d).unwrap() == 1, || format!("dim H^{d} != 1"))?;
        ensure(!class_equal(&t, &z, &Element::zero(2)).unwrap(), || format!("degree {d} rep is exact"))?;
    }
    Ok("[x2]^2 = 0, [x2][w] = [w][x2] via d(x1^2), [w]^2 and [x2][w] span H^4, H^3".into())
}

fn b6_module_suite() -> Outcome {
    let z = Element::zero(2);
    let f = make_module(
        DGFreeAlgebra::new(b(6)).unwrap(),
        vec![("1".into(), 0), ("se_x2".into(), 0), ("se_z".into(), 0)],
        vec![vec![z.clone(), z.clone(), z.clone()], vec![el("x2"), z.clone(), z.clone()], vec![el("x1"), el("x2"), z]],
    )
    .map_err(|e| e.to_string())?;
    ensure(module_cohomology_dim(&f, 0).unwrap() == 1, || "H^0(F) != 1".into())?;
    for d in 1..=6 {
        ensure(module_cohomology_dim(&f, d).unwrap() == 0, || format!("H^{d}(F) != 0"))?;
    }
    let e = degree_zero_endo_algebra(&f).unwrap();
    ensure(e.dimension == 3, || format!("dim E = {}", e.dimension))?;
    let x = e.nil_generator.clone().ok_or("no nil generator")?;
    let (e2, e3) = (x.clone(), &x * &x);
    ensure(e.contains(&e2) && e.contains(&e3), || "powers leave E".into())?;
    ensure(!e3.is_zero(), || "e2^2 = 0".into())?;
    ensure((&e2 * &e3).is_zero() && (&e3 * &e2).is_zero(), || "e2 e3 != 0".into())?;
    ensure((&(&e2 * &e2) * &e2).is_zero(), || "e2^3 != 0".into())?;
    ensure(e.truncated_polynomial == Some(3), || "E is not k[X]/(X^3)".into())?;
    Ok("F valid, H(F) = k through degree 6, E = k[X]/(X^3) with e2^2 = e3, e2 e3 = 0".into())
}

fn trivial_suite() -> Outcome {
    for n in [2usize, 3] {
        let h0 = hom_into_algebra_cohomology(&trivial_resolution(n), 0).unwrap();
        ensure(h0 == n, || format!("n={n}: H^0 Hom = {h0}"))?;
        for d in 0..=5 {
            let dim = cohomology_dim(&MatrixTuple::zero(n), d).unwrap();
            ensure(dim == n.pow(d as u32), || format!("n={n}: dim H^{d} = {dim}"))?;
        }
    }
    Ok("H^0 Hom(F, A) = n for n = 2, 3; dim H^d = n^d for d <= 5".into())
}

fn completeness() -> Outcome {
    let mut found = 0;
    for idx in 0..3usize.pow(8) {
        let mut e = [0i64; 8];
        let mut i = idx;
        for slot in e.iter_mut() {
            *slot = (i % 3) as i64 - 1;
            i /= 3;
        }
        let t = MatrixTuple::from_ints(&[[[e[0], e[1]], [e[2], e[3]]], [[e[4], e[5]], [e[6], e[7]]]]);
        if !t.is_crisscross() {
            continue;
        }
        found += 1;
        let c = classify(&t).map_err(|x| format!("{t:?}: {x}"))?;
        let target = canonical_tuple(&c.label).unwrap();
        ensure(check_witness(&t, &target, &c.witness).unwrap(), || format!("{t:?}: chain fails"))?;
    }
    ensure(found == 105, || format!("{found} crisscross tuples, regression value is 105"))?;
    Ok(format!("{found} crisscross tuples classified with verified chains"))
}

fn invariant_suite(catalog: &[CatalogEntry]) -> Outcome {
    for e in catalog {
        let tag = || format!("{} at {}", e.formula, e.params);
        ensure(stacked_rank(&e.source) == stacked_rank(&e.target), || format!("{}: ranks", tag()))?;
        ensure(is_symmetric_tuple(&e.source) == is_symmetric_tuple(&e.target), || format!("{}: symmetry", tag()))?;
        ensure(check_witness(&e.target, &e.source, &e.witness.inverse()).unwrap(), || format!("{}: inverse", tag()))?;
    }
    // Cohomology is compared once per distinct pair of tuples.
    let mut pairs: Vec<(&MatrixTuple, &MatrixTuple)> = catalog.iter().map(|e| (&e.source, &e.target)).collect();
    pairs.sort_by_key(|(s, t)| format!("{s:?}{t:?}"));
    pairs.dedup();
    for (s, t) in &pairs {
        ensure(cohomology_dims(s, 5).unwrap() == cohomology_dims(t, 5).unwrap(), || format!("{s:?} vs {t:?}: H"))?;
    }
    let mut chains = 0;
    for a in catalog {
        for c in catalog.iter().filter(|c| c.source == a.target && c.target != a.source) {
            let w = a.witness.then(&c.witness).unwrap();
            ensure(check_witness(&a.source, &c.target, &w).unwrap(), || {
                format!("chain {} then {} fails", a.formula, c.formula)
            })?;
            chains += 1;
        }
    }
    ensure(chains > 0, || "no composable catalog pairs".into())?;
    Ok(format!(
        "{} witnessed pairs: ranks, symmetry, inverses; H^<=5 on {} distinct pairs; {chains} compositions",
        catalog.len(),
        pairs.len()
    ))
}

fn main() {
    let catalog = witness_catalog();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("family validity", Box::new(family_validity)),
        ("witness catalog", Box::new(|| witness_catalog_check(&catalog))),
        ("cohomology tables", Box::new(cohomology_tables)),
        ("B6 ring relations", Box::new(b6_ring)),
        ("B6 module suite", Box::new(b6_module_suite)),
        ("trivial algebra suite", Box::new(trivial_suite)),
        ("classification completeness", Box::new(completeness)),
        ("invariant suite", Box::new(|| invariant_suite(&catalog))),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
