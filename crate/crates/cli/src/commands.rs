use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use leibconf::envelope::{oracle_equivalence, pbw_count, verify_faithfulness, Envelope, Rewriting};
use leibconf::error::Error;
use leibconf::exact::rat;
use leibconf::finalg::{
    associativity, check_algebra, check_dialgebra, leibniz_quotient, leibniz_to_dialgebra, left_leibniz,
    lie_identities, variety_identities, IdentityTerm, StructureAlgebra,
};
use leibconf::io::{matrix_rows, AlgebraFile, CheckResult, ConfMapDoc, Loaded, Report, SigmaFile, Verdict};
use leibconf::leibrep::{
    build_rho, current_embedding_violation, decompose, representation_rank, representation_violation,
    round_trip_violation, LieModule, Representation,
};

use crate::{Common, EnvelopeCheck, ModuleKind, Variety};

type Outcome = Result<Report, String>;

struct Input {
    name: String,
    loaded: Loaded,
    report: Report,
    timings: Option<BTreeMap<String, f64>>,
}

impl Input {
    fn read(command: &str, common: &Common) -> Result<Self, String> {
        let bytes = std::fs::read(&common.file).map_err(|e| format!("{}: {e}", common.file.display()))?;
        let digest = hex::encode(Sha256::digest(&bytes));
        let text = String::from_utf8(bytes).map_err(|e| format!("{}: {e}", common.file.display()))?;
        let file = AlgebraFile::from_json(&text).map_err(|e| format!("{}: {e}", common.file.display()))?;
        let loaded = file.load().map_err(|e| format!("{}: {e}", common.file.display()))?;
        Ok(Input {
            name: file.name,
            loaded,
            report: Report::new(command, &common.file.display().to_string(), &digest),
            timings: common.timings.then(BTreeMap::new),
        })
    }

    fn algebra(&self) -> Result<&StructureAlgebra, String> {
        match &self.loaded {
            Loaded::Algebra(a) => Ok(a),
            Loaded::Dialgebra(_) => Err(format!("{} is a dialgebra; this command takes an algebra", self.name)),
        }
    }

    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.timings {
            t.insert(stage.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    fn finish(mut self) -> Report {
        self.report.timings_ms = self.timings;
        self.report
    }
}

fn result(name: &str, ok: bool, witness: Option<Value>, details: Option<Value>) -> CheckResult {
    CheckResult { name: name.to_string(), verdict: Verdict::from(ok), witness, details }
}

fn named(names: &[String], idx: &[usize]) -> Value {
    json!(idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>())
}

// Library errors reaching the command layer are contract violations (exit 2).
fn usage(e: Error) -> String {
    e.to_string()
}

/// Pushes the Leibniz check and reports whether later stages may run.
fn leibniz_stage(input: &mut Input) -> Result<bool, String> {
    let l = input.algebra()?.clone();
    let v = input.timed("leibniz", || check_algebra(&l, &[left_leibniz()]));
    let ok = v.is_none();
    input.report.push(result(
        "leibniz",
        ok,
        v.map(|v| named(l.basis_names(), &v.witness)),
        None,
    ));
    Ok(ok)
}

pub fn check(common: &Common, variety: Variety, sigma: Option<&Path>) -> Outcome {
    let mut input = Input::read("check", common)?;
    let (label, identities): (String, Vec<IdentityTerm>) = match variety {
        Variety::Leibniz => ("leibniz".into(), vec![left_leibniz()]),
        Variety::Lie => ("lie".into(), lie_identities()),
        Variety::Associative => ("associative".into(), vec![associativity()]),
        Variety::Custom => {
            let path = sigma.ok_or("--variety custom needs --sigma")?;
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let terms = SigmaFile::from_json(&text).and_then(|s| s.terms());
            ("custom".into(), terms.map_err(|e| format!("{}: {e}", path.display()))?)
        }
    };
    match &input.loaded {
        Loaded::Algebra(a) => {
            let a = a.clone();
            if variety == Variety::Lie {
                // [xx] = 0 is not polylinear, so it is checked on its own.
                let bad = (0..a.dim()).find(|&i| a.product_of_basis(i, i).iter().any(|c| *c != rat(0)));
                input.report.push(result(
                    "lie/squares vanish",
                    bad.is_none(),
                    bad.map(|i| named(a.basis_names(), &[i, i])),
                    None,
                ));
            }
            for t in &identities {
                let v = input.timed(&t.to_string(), || check_algebra(&a, std::slice::from_ref(t)));
                input.report.push(result(
                    &format!("{label}: {t}"),
                    v.is_none(),
                    v.map(|v| named(a.basis_names(), &v.witness)),
                    None,
                ));
            }
        }
        Loaded::Dialgebra(d) => {
            let d = d.clone();
            for t in variety_identities(&identities) {
                let v = input.timed(&t.to_string(), || check_dialgebra(&d, std::slice::from_ref(&t)));
                input.report.push(result(
                    &format!("{label} dialgebra: {t}"),
                    v.is_none(),
                    v.map(|v| named(d.basis_names(), &v.witness)),
                    None,
                ));
            }
        }
    }
    Ok(input.finish())
}

fn module_for(l: &StructureAlgebra, kind: ModuleKind, dim_v: usize) -> Result<LieModule, String> {
    let lie = leibniz_quotient(l).map_err(usage)?.lie;
    match kind {
        ModuleKind::Trivial => LieModule::trivial(lie, dim_v).map_err(usage),
        ModuleKind::Adjoint => LieModule::adjoint(lie).map_err(usage),
    }
}

fn kind_name(kind: ModuleKind) -> &'static str {
    match kind {
        ModuleKind::Trivial => "trivial",
        ModuleKind::Adjoint => "adjoint",
    }
}

fn rep_checks(input: &mut Input, rho: &Representation, suffix: &str) {
    let l = input.algebra().expect("checked by caller").clone();
    let names = l.basis_names();
    let v = input.timed(&format!("representation{suffix}"), || representation_violation(rho, &l));
    input.report.push(result(
        &format!("is_representation{suffix}"),
        v.is_none(),
        v.map(|(a, b)| named(names, &[a, b])),
        None,
    ));
    let rank = input.timed(&format!("faithful{suffix}"), || representation_rank(rho));
    input.report.push(result(
        &format!("is_faithful{suffix}"),
        rank == l.dim(),
        None,
        Some(json!({"rank": rank, "dim": l.dim()})),
    ));
}

pub fn rep(common: &Common, kind: ModuleKind, dim_v: usize) -> Outcome {
    let mut input = Input::read("rep", common)?;
    if kind == ModuleKind::Trivial && dim_v == 0 {
        return Err("--dim-v must be at least 1".into());
    }
    if !leibniz_stage(&mut input)? {
        return Ok(input.finish());
    }
    let l = input.algebra()?.clone();
    let module = module_for(&l, kind, dim_v)?;
    let rho = build_rho(&l, &module).map_err(usage)?;
    rep_checks(&mut input, &rho, "");
    let labels = rho.space.labels().to_vec();
    let mut images = Vec::new();
    let mut shape_error = None;
    for (a, name) in l.basis_names().iter().enumerate() {
        let mut entry = json!({"element": name, "table": ConfMapDoc::new(rho.image(a), &labels)});
        match decompose(rho.image(a)) {
            Ok((a0, a1)) => {
                entry["a0"] = json!(matrix_rows(&a0));
                entry["a1"] = json!(matrix_rows(&a1));
            }
            Err(e) => shape_error = shape_error.or(Some(json!({"element": name, "error": e.to_string()}))),
        }
        images.push(entry);
    }
    input.report.push(result("current_shape", shape_error.is_none(), shape_error, None));
    input.report.data = Some(json!({
        "algebra": input.name,
        "module": kind_name(kind),
        "labels": labels,
        "images": images,
    }));
    Ok(input.finish())
}

fn envelope_checks(
    input: &mut Input,
    env: &Envelope,
    n: usize,
    truncation: usize,
    which: &[EnvelopeCheck],
    seed: u64,
    samples: usize,
) -> Result<(), String> {
    for check in which {
        match check {
            EnvelopeCheck::Pbw => {
                let c = input.timed("pbw", || pbw_count(env, n)).map_err(usage)?;
                input.report.push(result("pbw_count", c.passed(), None, Some(json!(c))));
            }
            EnvelopeCheck::Faithful => {
                let r = input.timed("faithful", || verify_faithfulness(env, n, truncation, samples, seed)).map_err(usage)?;
                let witness = r.oracle.mismatch.as_ref().map(|m| json!(m));
                input.report.push(result("faithfulness", r.passed(), witness, Some(json!(r))));
            }
            EnvelopeCheck::Oracle => {
                let r = input
                    .timed("oracle", || oracle_equivalence(env, n, truncation, samples, seed, Rewriting::Full))
                    .map_err(usage)?;
                let witness = r.mismatch.as_ref().map(|m| json!(m));
                input.report.push(result("oracle", r.passed(), witness, Some(json!({"samples": r.samples, "seed": seed}))));
            }
        }
    }
    Ok(())
}

fn check_lengths(n: usize, truncation: usize) -> Result<(), String> {
    if n == 0 {
        return Err("--max-length must be at least 1".into());
    }
    if n > truncation {
        return Err(format!("--max-length {n} exceeds --truncation {truncation}"));
    }
    Ok(())
}

pub fn envelope(
    common: &Common,
    n: usize,
    truncation: usize,
    check: EnvelopeCheck,
    seed: u64,
    samples: usize,
) -> Outcome {
    check_lengths(n, truncation)?;
    let mut input = Input::read("envelope", common)?;
    if !leibniz_stage(&mut input)? {
        return Ok(input.finish());
    }
    let env = Envelope::new(input.algebra()?).map_err(usage)?;
    envelope_checks(&mut input, &env, n, truncation, &[check], seed, samples)?;
    Ok(input.finish())
}

pub fn verify(common: &Common, n: usize, seed: u64, samples: usize) -> Outcome {
    check_lengths(n, n)?;
    let mut input = Input::read("verify", common)?;
    if !leibniz_stage(&mut input)? {
        return Ok(input.finish());
    }
    let l = input.algebra()?.clone();
    let d = leibniz_to_dialgebra(&l).map_err(usage)?;
    let v = input.timed("lie dialgebra", || check_dialgebra(&d, &variety_identities(&lie_identities())));
    input.report.push(result(
        "lie_dialgebra",
        v.is_none(),
        v.as_ref().map(|v| json!({"identity": v.identity, "tuple": named(l.basis_names(), &v.witness)})),
        None,
    ));
    for kind in [ModuleKind::Trivial, ModuleKind::Adjoint] {
        let suffix = format!("/{}", kind_name(kind));
        let rho = build_rho(&l, &module_for(&l, kind, 1)?).map_err(usage)?;
        rep_checks(&mut input, &rho, &suffix);
        let round = input.timed(&format!("round_trip{suffix}"), || round_trip_violation(&rho));
        let (ok, witness) = match round {
            Ok(None) => (true, None),
            Ok(Some(a)) => (false, Some(json!(l.basis_names()[a]))),
            Err(e) => (false, Some(json!(e.to_string()))),
        };
        input.report.push(result(&format!("round_trip{suffix}"), ok, witness, None));
        let emb = input.timed(&format!("current_embedding{suffix}"), || current_embedding_violation(&rho, &l));
        let (ok, witness) = match emb {
            Ok(None) => (true, None),
            Ok(Some((a, b))) if a < l.dim() => (false, Some(named(l.basis_names(), &[a, b]))),
            Ok(Some(_)) => (false, Some(json!("not injective"))),
            Err(e) => (false, Some(json!(e.to_string()))),
        };
        input.report.push(result(&format!("current_embedding{suffix}"), ok, witness, None));
    }
    let env = Envelope::new(&l).map_err(usage)?;
    envelope_checks(&mut input, &env, n, n, &[EnvelopeCheck::Pbw, EnvelopeCheck::Faithful], seed, samples)?;
    Ok(input.finish())
}
