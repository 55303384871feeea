use avw_core::algebra::{bracket_basis, in_subalgebra, jacobi_defect, AlgebraSpec, Generator};
use avw_core::analyzer::{AnalyzerError, WindowedModule};
use avw_core::catalog::{act_on, module_defect_on, sl2_irrep, Label, ModuleSpec, ModuleVector, NonTrivialEAction, WeightModule};
use avw_core::linalg::Matrix;
use avw_core::scalar::{fmt_scalar, Scalar};
use avw_core::verma::{SingularVector, TruncatedModule};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Cli, CliError, Command, Range, Report, SourceArgs};

fn s(x: &Scalar) -> String {
    fmt_scalar(x)
}

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|r| m.row(r).iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn analyzer(e: AnalyzerError) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_generator(text: &str) -> Result<Generator, CliError> {
    text.trim().parse().map_err(|e| CliError::Usage(format!("bad generator `{text}`: {e:?}")))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Jacobi { algebra, range, bracket } => match bracket {
            Some(pair) => single_bracket(pair),
            None => Ok(jacobi(*algebra, *range)),
        },
        Command::ModuleCheck { module, range, labels, nontrivial_e } => module_check(module, *range, *labels, *nontrivial_e),
        Command::Catalog { module, window, gen, label, fiber, sl2 } => {
            catalog(module.as_ref(), *window, gen.as_deref(), *label, *fiber, *sl2)
        }
        Command::Simple { module } => {
            let verdict = module.module().simplicity();
            Ok(Report::json(json!({ "module": module.to_string(), "simple": verdict.simple, "reason": verdict.reason })))
        }
        Command::Structure { module } => {
            let structure = serde_json::to_value(module.module().structure()).expect("serializable");
            Ok(Report::json(json!({ "module": module.to_string(), "structure": structure })))
        }
        Command::LoopDims { module, window } => Ok(loop_dims(module, *window)),
        Command::Verma { verma } => {
            let m = verma.build()?;
            Ok(verma_report(&m))
        }
        Command::Singular { source, max_depth, direction } => {
            if source.module.is_none() {
                let m = source.verma.build()?;
                let depth = max_depth.unwrap_or(m.depth_bound() - 2);
                let found = m.find_singular_vectors(depth).map_err(|e| CliError::Usage(e.to_string()))?;
                return Ok(singular_report(&m, &found));
            }
            let w = source.windowed()?;
            let found = w.find_extremal_vectors(*direction).map_err(analyzer)?;
            let rows: Vec<Vec<String>> =
                found.iter().map(|v| vec![v.offset.to_string(), w.describe(v.offset, &v.coefficients)]).collect();
            let list: Vec<Value> = found
                .iter()
                .map(|v| {
                    json!({
                        "offset": v.offset,
                        "coefficients": v.coefficients.iter().map(s).collect::<Vec<_>>(),
                        "vector": w.describe(v.offset, &v.coefficients),
                    })
                })
                .collect();
            Ok(Report::json(json!({ "module": w.name(), "direction": direction, "vectors": list }))
                .with_table(vec!["offset", "vector"], rows))
        }
        Command::Injectivity { source, k, i } => {
            let w = source.windowed()?;
            let report = w.eq41_injectivity(*k, *i).map_err(analyzer)?;
            Ok(Report::json(serde_json::to_value(&report).expect("serializable")))
        }
        Command::Witness { source } => Ok(witness(&source.windowed()?)),
        Command::Match { source, scramble } => matching(source, *scramble, cli.seed),
        Command::Support { source } => {
            let w = source.windowed()?;
            let rows: Vec<Vec<String>> = w.support().iter().map(|(d, h)| vec![s(d), s(h)]).collect();
            Ok(Report::json(json!({ "module": w.name(), "support": rows })).with_table(vec!["d0", "h0"], rows))
        }
    }
}

fn single_bracket(pair: &str) -> Result<Report, CliError> {
    let (x, y) = pair.split_once(',').ok_or_else(|| CliError::Usage("--bracket expects `x,y`".into()))?;
    let (x, y) = (parse_generator(x)?, parse_generator(y)?);
    let b = bracket_basis(&x, &y);
    let terms: Vec<Value> = b.iter().map(|(g, c)| json!([g.to_string(), s(c)])).collect();
    Ok(Report::json(json!({ "x": x.to_string(), "y": y.to_string(), "bracket": b.to_string(), "terms": terms })))
}

fn jacobi(algebra: AlgebraSpec, range: Range) -> Report {
    let gens = algebra.generators(range.lo, range.hi);
    let n = gens.len();
    let mut antisymmetry = Vec::new();
    let mut closure = Vec::new();
    for x in &gens {
        for y in &gens {
            let b = bracket_basis(x, y);
            let sum = b.clone() + bracket_basis(y, x);
            if !sum.is_zero() {
                antisymmetry.push(vec!["antisymmetry".into(), x.to_string(), y.to_string(), String::new(), sum.to_string()]);
            }
            if !in_subalgebra(&b, algebra) {
                closure.push(vec!["closure".into(), x.to_string(), y.to_string(), String::new(), b.to_string()]);
            }
        }
    }
    let jacobi: Vec<Vec<String>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let gens = &gens;
            (0..n).flat_map(move |j| {
                (0..n).filter_map(move |k| {
                    let d = jacobi_defect(&gens[i], &gens[j], &gens[k]);
                    (!d.is_zero()).then(|| {
                        vec!["jacobi".into(), gens[i].to_string(), gens[j].to_string(), gens[k].to_string(), d.to_string()]
                    })
                })
            })
        })
        .collect();
    let triples = n * n * n;
    let defects = antisymmetry.len() + closure.len() + jacobi.len();
    let summary = format!("{defects} defects / {triples} triples");
    let rows: Vec<Vec<String>> = antisymmetry.iter().chain(&closure).chain(&jacobi).cloned().collect();
    Report::json(json!({
        "algebra": algebra.to_string(),
        "range": range.to_string(),
        "generators": n,
        "pairs": n * n,
        "triples": triples,
        "antisymmetry_defects": antisymmetry.len(),
        "closure_violations": closure.len(),
        "jacobi_defects": jacobi.len(),
        "defects": rows,
        "summary": summary,
    }))
    .with_table(vec!["check", "x", "y", "z", "value"], rows)
    .failing_if(defects > 0)
}

fn module_check(spec: &ModuleSpec, range: Range, labels: Range, nontrivial_e: bool) -> Result<Report, CliError> {
    let module: Box<dyn WeightModule> = if nontrivial_e {
        match spec {
            ModuleSpec::T2Mod { a, b, c } => NonTrivialEAction::new(a.clone(), b.clone(), c.clone()),
            _ => return Err(CliError::Usage("--nontrivial-e applies to T2 modules only".into())),
        }
    } else {
        spec.module()
    };
    let gens = module.algebra().generators(range.lo, range.hi);
    let basis: Vec<Label> = (labels.lo..=labels.hi).flat_map(|t| module.basis_at(t)).collect();
    let module = module.as_ref();
    let defects: Vec<Vec<String>> = basis
        .par_iter()
        .flat_map_iter(|label| {
            let v = ModuleVector::basis(*label);
            let gens = &gens;
            gens.iter().flat_map(move |x| {
                let v = v.clone();
                gens.iter().filter_map(move |y| {
                    let d = module_defect_on(module, x, y, &v).expect("generators from the acting algebra");
                    (!d.is_zero()).then(|| {
                        vec![x.to_string(), y.to_string(), module.label_name(label), describe(module, &d)]
                    })
                })
            })
        })
        .collect();
    let checks = gens.len() * gens.len() * basis.len();
    let summary = format!("{} defects / {checks} checks", defects.len());
    Ok(Report::json(json!({
        "module": module.name(),
        "generators": gens.len(),
        "labels": basis.len(),
        "checks": checks,
        "defects": defects,
        "summary": summary,
    }))
    .with_table(vec!["x", "y", "label", "defect"], defects.clone())
    .failing_if(!defects.is_empty()))
}

fn describe(module: &dyn WeightModule, v: &ModuleVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter().map(|(l, c)| format!("{}·{}", s(c), module.label_name(l))).collect::<Vec<_>>().join(" + ")
}

fn catalog(
    spec: Option<&ModuleSpec>,
    window: Range,
    gen: Option<&str>,
    label: Option<i64>,
    fiber: u32,
    sl2: Option<i64>,
) -> Result<Report, CliError> {
    if let Some(lambda) = sl2 {
        let irrep = sl2_irrep(lambda).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(Report::json(json!({
            "lambda": lambda,
            "dim": irrep.dim(),
            "e": matrix_json(&irrep.e),
            "f": matrix_json(&irrep.f),
            "h": matrix_json(&irrep.h),
        })));
    }
    let spec = spec.ok_or_else(|| CliError::Usage("--module or --sl2 is required".into()))?;
    let module = spec.module();
    if let Some(g) = gen {
        let g = parse_generator(g)?;
        let t = label.ok_or_else(|| CliError::Usage("--gen needs --label".into()))?;
        let basis = module.basis_at(t);
        let l = *basis.get(fiber as usize).ok_or_else(|| CliError::Usage(format!("fiber index {fiber} out of range")))?;
        let image = act_on(module.as_ref(), &g, &ModuleVector::basis(l)).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(Report::json(json!({
            "module": spec.to_string(),
            "generator": g.to_string(),
            "vector": module.label_name(&l),
            "image": describe(module.as_ref(), &image),
        })));
    }
    if window.lo > window.hi {
        return Err(CliError::Usage("window must be nonempty".into()));
    }
    Ok(Report::json(windowed_json(&avw_core::analyzer::from_catalog(spec, window.pair()))))
}

fn windowed_json(w: &WindowedModule) -> Value {
    let slices: Vec<Value> = w
        .slices()
        .iter()
        .map(|sl| {
            json!({
                "offset": sl.offset,
                "basis": sl.names,
                "weights": sl.weights.iter().map(|(d, h)| [s(d), s(h)]).collect::<Vec<_>>(),
            })
        })
        .collect();
    let ops: Vec<Value> = w
        .ops()
        .filter(|(_, op)| !op.matrix.is_zero())
        .map(|((g, k), op)| json!({ "generator": g.to_string(), "offset": k, "matrix": matrix_json(&op.matrix) }))
        .collect();
    let (lo, hi) = w.window();
    json!({ "module": w.name(), "algebra": w.algebra().to_string(), "window": [lo, hi], "slices": slices, "operators": ops })
}

fn loop_dims(spec: &ModuleSpec, window: Range) -> Report {
    let module = spec.module();
    let rows: Vec<Vec<String>> =
        (window.lo..=window.hi).map(|t| vec![t.to_string(), module.basis_at(t).len().to_string()]).collect();
    let dims: Vec<Value> = (window.lo..=window.hi).map(|t| json!({ "offset": t, "dim": module.basis_at(t).len() })).collect();
    Report::json(json!({ "module": spec.to_string(), "window": window.to_string(), "dims": dims }))
        .with_table(vec!["offset", "dim"], rows)
}

fn singular_json(m: &TruncatedModule, found: &[SingularVector]) -> Value {
    json!(found
        .iter()
        .map(|v| json!({
            "depth": v.depth,
            "charge": v.charge,
            "coefficients": v.coefficients.iter().map(s).collect::<Vec<_>>(),
            "basis": m.slice(v.depth, v.charge).iter().map(ToString::to_string).collect::<Vec<_>>(),
            "vector": v.vector.to_string(),
        }))
        .collect::<Vec<_>>())
}

fn hw_json(m: &TruncatedModule) -> Value {
    let hw = m.highest_weight();
    json!({ "lamd": s(&hw.lambda_d), "mu": s(&hw.mu), "c": s(&hw.c), "depth": m.depth_bound(), "charge": m.charge_bound() })
}

fn singular_report(m: &TruncatedModule, found: &[SingularVector]) -> Report {
    let rows = found.iter().map(|v| vec![v.depth.to_string(), v.charge.to_string(), v.vector.to_string()]).collect();
    Report::json(json!({ "highest_weight": hw_json(m), "singular_vectors": singular_json(m, found) }))
        .with_table(vec!["depth", "charge", "vector"], rows)
}

fn verma_report(m: &TruncatedModule) -> Report {
    let table = m.dims_table();
    let rows = table.iter().map(|r| vec![r.depth.to_string(), r.charge.to_string(), r.dim.to_string()]).collect();
    // depth 0 and 1 truncations have no room for the raising images
    let singular = m.find_singular_vectors(m.depth_bound() - 2).unwrap_or_default();
    let mut report = Report::json(json!({ "highest_weight": hw_json(m), "dims": table }))
        .with_table(vec!["depth", "charge", "dim"], rows);
    report
        .companions
        .push(("singular".into(), json!({ "highest_weight": hw_json(m), "singular_vectors": singular_json(m, &singular) })));
    report
}

fn witness(w: &WindowedModule) -> Report {
    let r = w.submodule_witness();
    let records: Vec<Value> = r
        .witnesses
        .iter()
        .map(|x| json!({ "offset": x.offset, "vector": x.vector, "verdict": "witness" }))
        .collect();
    Report::json(json!({
        "module": w.name(),
        "verdict": r.verdict,
        "witnesses": records,
        "unreached_offsets": r.unreached,
    }))
}

fn matching(source: &SourceArgs, scramble: bool, seed: u64) -> Result<Report, CliError> {
    let mut w = source.windowed()?;
    if scramble {
        w = w.scramble(seed);
    }
    let report = w.catalog_match().map_err(analyzer)?;
    Ok(Report::json(serde_json::to_value(&report).expect("serializable")))
}
