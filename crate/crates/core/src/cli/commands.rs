//! The individual commands, each producing a [`Report`].

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use super::documents::{algebra_to_document, complex_to_document, vector_to_doc};
use super::{Input, Pipeline, Report, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use crate::complexes::{check_expectations, example_corpus};
use crate::dg_algebra::{
    basepoint_functional, induced_cohomology_algebra, reduced_subalgebra, validate as validate_algebra, ValidationFailure,
};
use crate::error::{Error, Result};
use crate::exact_linear::{GradedSpace, Vector};
use crate::formality::{certify_formality, theorem1_pipeline, FormalityCertificate, NonFormalityWitness, Verdict};
use crate::massey::{
    detection_sign, epsilon, explore_massey, higher_massey_unique, massey_vanishes, triple_massey, CohomologyClass,
    DefiningSystem, MasseyOutcome,
};
use crate::scalar;
use crate::transfer::{transfer_algebra, tree_summands};

fn vec_json(space: &GradedSpace, v: &Vector) -> Value {
    json!(vector_to_doc(space, v))
}

fn betti_json(space: &GradedSpace) -> Value {
    let m: Map<String, Value> = space.support().map(|d| (d.to_string(), json!(space.dim(d)))).collect();
    Value::Object(m)
}

fn failure_json(f: &ValidationFailure) -> Value {
    match f {
        ValidationFailure::SquareZero { element } => json!({"kind": "square-zero", "witness": [element]}),
        ValidationFailure::Leibniz { left, right } => json!({"kind": "leibniz", "witness": [left, right]}),
        ValidationFailure::Associativity { a, b, c } => json!({"kind": "associativity", "witness": [a, b, c]}),
        ValidationFailure::LeftUnit { element } => json!({"kind": "left-unit", "witness": [element]}),
        ValidationFailure::RightUnit { element } => json!({"kind": "right-unit", "witness": [element]}),
    }
}

pub fn validate(input: &Input) -> Report {
    let report = validate_algebra(&input.algebra);
    let failures: Vec<Value> = report.failures.iter().map(failure_json).collect();
    let valid = report.is_valid();
    let human = if valid {
        format!("valid dg-algebra ({} basis elements)", input.algebra.space().total_dim())
    } else {
        format!("invalid dg-algebra: {report}")
    };
    Report::new(
        json!({"command": "validate", "valid": valid, "failures": failures}),
        human,
        if valid { EXIT_OK } else { EXIT_NEGATIVE },
    )
}

pub fn cohomology(input: &Input) -> Result<Report> {
    validate_algebra(&input.algebra).into_result()?;
    let h = induced_cohomology_algebra(&input.algebra)?;
    let c = &h.contraction;
    let hs = h.space();
    let a = input.algebra.space();
    let reps: Map<String, Value> = (0..hs.total_dim())
        .map(|k| (hs.qualified_name(k), vec_json(a, &c.representative(k))))
        .collect();
    let products: Vec<Value> = h
        .product
        .entries()
        .map(|(t, v)| json!({"left": hs.qualified_name(t[0]), "right": hs.qualified_name(t[1]), "result": vec_json(hs, v)}))
        .collect();
    let cup = h.cup_length();
    let mut human = String::new();
    let dims: Vec<String> = hs.support().map(|d| format!("H^{d} = {}", hs.dim(d))).collect();
    let _ = writeln!(human, "{}", if dims.is_empty() { "H = 0".to_string() } else { dims.join(", ") });
    for k in 0..hs.total_dim() {
        let _ = writeln!(human, "  {} represented by {}", hs.qualified_name(k), a.render(&c.representative(k)));
    }
    for (t, v) in h.product.entries() {
        let _ = writeln!(human, "  {} · {} = {}", hs.qualified_name(t[0]), hs.qualified_name(t[1]), hs.render(v));
    }
    let _ = write!(human, "cup length {cup} (a lower bound for LS-category)");
    Ok(Report::new(
        json!({
            "command": "cohomology",
            "reduced": input.reduced,
            "dimensions": betti_json(hs),
            "representatives": reps,
            "products": products,
            "cup_length": cup,
            "reduced_product_trivial": h.is_reduced_product_trivial(),
        }),
        human,
        EXIT_OK,
    ))
}

pub fn transfer(input: &Input, cap: usize) -> Result<Report> {
    let t = transfer_algebra(&input.algebra, cap)?;
    let hs = t.cohomology().clone();
    let mut entries = Vec::new();
    let mut human = String::new();
    let _ = writeln!(human, "transferred A∞-structure on H ({} classes), arities 2..={cap}", hs.total_dim());
    for n in 2..=cap {
        let m = t.m(n)?;
        for (tuple, v) in m.entries().filter(|(_, v)| !v.is_zero()) {
            let inputs: Vec<String> = tuple.iter().map(|&i| hs.qualified_name(i)).collect();
            let _ = writeln!(human, "  m_{n}({}) = {}", inputs.join(", "), hs.render(v));
            entries.push(json!({"n": n, "inputs": inputs, "value": vec_json(&hs, v)}));
        }
    }
    let _ = write!(
        human,
        "Stasheff identities and morphism identities verified up to arity {cap} ({} trees in the top arity)",
        tree_summands(cap).len()
    );
    Ok(Report::new(
        json!({
            "command": "transfer",
            "cap": cap,
            "entries": entries,
            "stasheff_verified": true,
            "morphism_verified": true,
        }),
        human,
        EXIT_OK,
    ))
}

/// Parses `name`, or `c*name + c*name + …`, as a cohomology class.
pub fn parse_class(h: &GradedSpace, spec: &str) -> Result<CohomologyClass> {
    let mut v = Vector::zero();
    let mut degree = None;
    for term in spec.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, name) = match term.split_once('*') {
            Some((c, name)) => (scalar::parse(c)?, name.trim()),
            None => (scalar::one(), term),
        };
        let idx = h.lookup(name)?;
        let d = h.degree_of(idx);
        if degree.is_some_and(|e| e != d) {
            return Err(Error::Inhomogeneous(spec.to_string()));
        }
        degree = Some(d);
        v.add_term(idx, &c);
    }
    let degree = degree.ok_or_else(|| Error::Malformed(format!("empty class {spec:?}")))?;
    CohomologyClass::with_degree(h, degree, v)
}

fn system_json(a: &GradedSpace, ds: &DefiningSystem) -> Value {
    let m: Map<String, Value> = ds
        .cochains
        .iter()
        .map(|(&(i, j), v)| (format!("{i},{j}"), vec_json(a, v)))
        .collect();
    Value::Object(m)
}

fn outcome_json(h: &GradedSpace, a: &GradedSpace, out: &MasseyOutcome) -> Value {
    let mut v = json!({"kind": out.kind()});
    match out {
        MasseyOutcome::Unique { value, degree, sign, .. } => {
            v["value"] = vec_json(h, value);
            v["degree"] = json!(degree);
            v["transfer_sign"] = json!(sign);
        }
        MasseyOutcome::Coset {
            representative,
            indeterminacy,
            degree,
            ..
        } => {
            v["representative"] = vec_json(h, representative);
            v["indeterminacy"] = json!(indeterminacy.iter().map(|x| vec_json(h, x)).collect::<Vec<_>>());
            v["degree"] = json!(degree);
        }
        MasseyOutcome::WitnessOfVanishing { degree, .. } => {
            v["value"] = json!({});
            v["degree"] = json!(degree);
        }
        MasseyOutcome::Obstructed { pair, class } => {
            v["pair"] = json!([pair.0, pair.1]);
            v["obstruction"] = vec_json(h, class);
        }
    }
    if let Some(ds) = out.witness() {
        v["defining_system"] = system_json(a, ds);
    }
    v
}

fn outcome_human(h: &GradedSpace, out: &MasseyOutcome) -> String {
    match out {
        MasseyOutcome::Unique { value, .. } => format!("unique value {}", h.render(value)),
        MasseyOutcome::Coset {
            representative,
            indeterminacy,
            ..
        } => {
            let ind: Vec<String> = indeterminacy.iter().map(|x| h.render(x)).collect();
            if ind.is_empty() {
                format!("{} with zero indeterminacy", h.render(representative))
            } else {
                format!("{} + span{{{}}}", h.render(representative), ind.join(", "))
            }
        }
        MasseyOutcome::WitnessOfVanishing { .. } => "a defining system with value 0 exists".into(),
        MasseyOutcome::Obstructed { pair: (i, j), class } => format!(
            "the equation for a_({i},{j}) is obstructed by {}",
            h.render(class)
        ),
    }
}

pub fn massey(input: &Input, specs: &[String], n: Option<usize>, budget: usize) -> Result<Report> {
    let a = &input.algebra;
    validate_algebra(a).into_result()?;
    if let Some(n) = n {
        if n != specs.len() {
            return Ok(Report::new(
                json!({"error": "usage", "message": format!("--n {n} but {} classes given", specs.len())}),
                format!("error: --n {n} but {} classes given", specs.len()),
                EXIT_USAGE,
            ));
        }
    }
    if specs.len() < 3 {
        return Err(Error::Malformed("Massey products need at least three classes".into()));
    }
    let h_alg = induced_cohomology_algebra(a)?;
    let c = &h_alg.contraction;
    let h = h_alg.space().clone();
    let classes = specs.iter().map(|s| parse_class(&h, s)).collect::<Result<Vec<_>>>()?;
    let degrees: Vec<i32> = classes.iter().map(|x| x.degree).collect();
    let (outcome, method) = if classes.len() == 3 {
        (Some(triple_massey(a, c, &classes[0], &classes[1], &classes[2])?), "triple")
    } else {
        let t = crate::transfer::transfer(a, c, classes.len())?;
        match higher_massey_unique(a, &t, &classes) {
            Ok(out) => (Some(out), "unique"),
            Err(Error::NotApplicable(_)) => {
                let e = explore_massey(a, c, &classes, budget)?;
                let out = e.outcome().or_else(|| {
                    e.obstruction
                        .clone()
                        .filter(|_| e.complete)
                        .map(|(pair, class)| MasseyOutcome::Obstructed { pair, class })
                });
                (out, "search")
            }
            Err(e) => return Err(e),
        }
    };
    let names: Vec<String> = specs.to_vec();
    let mut machine = json!({
        "command": "massey",
        "classes": names,
        "method": method,
        "epsilon": epsilon(&degrees),
        "detection_sign": detection_sign(&degrees),
    });
    let Some(outcome) = outcome else {
        machine["outcome"] = json!({"kind": "undetermined"});
        machine["vanishes"] = Value::Null;
        return Ok(Report::new(
            machine,
            format!("⟨{}⟩: undetermined within the search budget", names.join(", ")),
            EXIT_NEGATIVE,
        ));
    };
    machine["outcome"] = outcome_json(&h, a.space(), &outcome);
    let vanishes = match massey_vanishes(&h, &outcome) {
        Ok(v) => Some(v),
        Err(Error::UndefinedProduct(_)) => None,
        Err(e) => return Err(e),
    };
    machine["vanishes"] = json!(vanishes);
    let verdict = match vanishes {
        Some(true) => "vanishes",
        Some(false) => "does not vanish",
        None => "is not defined",
    };
    let human = format!(
        "⟨{}⟩ {verdict}: {} (ε = {})",
        names.join(", "),
        outcome_human(&h, &outcome),
        epsilon(&degrees)
    );
    let code = if vanishes.is_none() { EXIT_NEGATIVE } else { EXIT_OK };
    Ok(Report::new(machine, human, code))
}

fn witness_json(h: &GradedSpace, a: &GradedSpace, w: &NonFormalityWitness) -> Value {
    match w {
        NonFormalityWitness::HigherProduct { n, tuple, value, massey } => json!({
            "kind": "higher-product",
            "n": n,
            "tuple": tuple.iter().map(|&i| h.qualified_name(i)).collect::<Vec<_>>(),
            "value": vec_json(h, value),
            "massey": outcome_json(h, a, massey),
        }),
        NonFormalityWitness::TripleMassey { tuple, outcome } => json!({
            "kind": "triple-massey",
            "n": 3,
            "tuple": tuple.iter().map(|&i| h.qualified_name(i)).collect::<Vec<_>>(),
            "massey": outcome_json(h, a, outcome),
        }),
    }
}

fn certificate_report(input: &Input, cert: &FormalityCertificate, mut machine: Value, mut human: String) -> Report {
    let h = cert.transfer.cohomology().clone();
    let a = input.algebra.space();
    machine["verdict"] = json!(cert.verdict.to_string());
    machine["cap"] = json!(cert.cap);
    machine["requested_cap"] = json!(cert.requested_cap);
    machine["arity_bound"] = json!(cert.bound.to_string());
    machine["bound_is_absolute"] = json!(cert.bound_is_absolute);
    machine["reduced"] = json!(input.reduced);
    machine["first_nonzero"] = match &cert.first_nonzero {
        Some((n, t, v)) => json!({
            "n": n,
            "tuple": t.iter().map(|&i| h.qualified_name(i)).collect::<Vec<_>>(),
            "value": vec_json(&h, v),
        }),
        None => Value::Null,
    };
    machine["witness"] = cert.witness.as_ref().map_or(Value::Null, |w| witness_json(&h, a, w));
    let scope = if cert.bound_is_absolute {
        "for every arity".to_string()
    } else {
        format!("up to arity {}", cert.cap)
    };
    let _ = write!(human, "verdict: {} ({scope}; arity bound {})", cert.verdict, cert.bound);
    if let Some(w) = &cert.witness {
        let (kind, tuple) = match w {
            NonFormalityWitness::HigherProduct { n, tuple, .. } => (format!("m_{n}"), tuple),
            NonFormalityWitness::TripleMassey { tuple, .. } => ("triple Massey product".to_string(), tuple),
        };
        let names: Vec<String> = tuple.iter().map(|&i| h.qualified_name(i)).collect();
        let _ = write!(human, "\nwitness: {kind} on ({})", names.join(", "));
    } else if let Some((n, t, v)) = &cert.first_nonzero {
        let names: Vec<String> = t.iter().map(|&i| h.qualified_name(i)).collect();
        let _ = write!(human, "\nfirst nonzero higher product: m_{n}({}) = {}", names.join(", "), h.render(v));
    }
    let code = if cert.verdict == Verdict::FormalUpToCap { EXIT_OK } else { EXIT_NEGATIVE };
    Report::new(machine, human, code)
}

pub fn formality(input: &Input, cap: usize, pipeline: Pipeline) -> Result<Report> {
    match pipeline {
        Pipeline::Transfer => {
            let cert = certify_formality(&input.algebra, cap)?;
            let machine = json!({"command": "formality", "pipeline": "transfer"});
            Ok(certificate_report(input, &cert, machine, String::new()))
        }
        Pipeline::Theorem1 => {
            let report = theorem1_pipeline(&input.algebra, cap)?;
            let h = report.certificate.transfer.cohomology().clone();
            let mut human = String::new();
            let trace: Vec<Value> = report
                .trace
                .iter()
                .map(|s| {
                    let _ = writeln!(
                        human,
                        "step n = {}: {} tuples, Massey products {}, transferred m_{} {}",
                        s.n,
                        s.tuples_checked,
                        if s.massey_products_vanish { "vanish" } else { "do not vanish" },
                        s.n,
                        if s.transferred_vanishes { "= 0" } else { "≠ 0" }
                    );
                    json!({
                        "n": s.n,
                        "tuples_checked": s.tuples_checked,
                        "massey_products_vanish": s.massey_products_vanish,
                        "transferred_vanishes": s.transferred_vanishes,
                        "nonvanishing": s.nonvanishing.as_ref().map(|(t, v)| json!({
                            "tuple": t.iter().map(|&i| h.qualified_name(i)).collect::<Vec<_>>(),
                            "value": vec_json(&h, v),
                        })),
                    })
                })
                .collect();
            let machine = json!({"command": "formality", "pipeline": "theorem1", "trace": trace});
            Ok(certificate_report(input, &report.certificate, machine, human))
        }
    }
}

pub fn corpus(run_all: bool, filter: Option<&str>, cap: usize) -> Result<Report> {
    if filter == Some("") {
        return Ok(Report::new(
            json!({"error": "usage", "message": "empty filter"}),
            "error: --filter must not be empty".into(),
            EXIT_USAGE,
        ));
    }
    let entries: Vec<_> = example_corpus()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .collect();
    if filter.is_some() && entries.is_empty() {
        return Ok(Report::new(
            json!({"error": "usage", "message": "no entry matches the filter"}),
            "error: no corpus entry matches the filter".into(),
            EXIT_USAGE,
        ));
    }
    let check = run_all || filter.is_some();
    let mut rows = Vec::new();
    let mut human = String::new();
    let mut all_pass = true;
    for e in &entries {
        if !check {
            let _ = writeln!(human, "{:<24} {}", e.name, e.description);
            rows.push(json!({"name": e.name, "description": e.description}));
            continue;
        }
        let mismatches: Vec<String> = match check_expectations(e, cap) {
            Ok(m) => m.iter().map(ToString::to_string).collect(),
            Err(err) => vec![format!("error: {err}")],
        };
        let pass = mismatches.is_empty();
        all_pass &= pass;
        let _ = writeln!(human, "{} {}", if pass { "PASS" } else { "FAIL" }, e.name);
        for m in &mismatches {
            let _ = writeln!(human, "    {m}");
        }
        rows.push(json!({"name": e.name, "pass": pass, "mismatches": mismatches}));
    }
    let human = human.trim_end().to_string();
    Ok(Report::new(
        json!({"command": "corpus", "checked": check, "entries": rows, "all_pass": check.then_some(all_pass)}),
        human,
        if all_pass { EXIT_OK } else { EXIT_NEGATIVE },
    ))
}

pub fn export(name: &str, as_algebra: bool, reduced: bool) -> Result<Report> {
    let entry = example_corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Malformed(format!("no corpus entry named {name:?}")))?;
    let complex = entry.complex();
    let doc = match &complex {
        Some(x) if !as_algebra && !reduced => serde_json::to_value(complex_to_document(x)),
        _ => {
            let mut a = entry.algebra()?;
            if reduced {
                let bp = complex.as_ref().map_or(0, |x| x.basepoint());
                a = reduced_subalgebra(&a, &basepoint_functional(&a, bp)?)?;
            }
            serde_json::to_value(algebra_to_document(&a, reduced))
        }
    }
    .map_err(|e| Error::Malformed(e.to_string()))?;
    let human = serde_json::to_string_pretty(&doc).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(Report::new(doc, human, EXIT_OK))
}
