use std::path::Path;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;
use vosa_core::constructions::{
    boson_sugawara, central_charges, cocycle_basis, fermion_vosa, super_construction, verify_odd_cocycle,
    vertex_module, CentralCharges,
};
use vosa_core::fock::{ghost_report, ModuleDescriptor};
use vosa_core::lie::{builtin, catalog_rows, parse_catalog_label, LieAlgebraData};
use vosa_core::vertex::{
    check_borcherds, check_bracket_from_ope, check_vosa_axioms, ope_singular_part, state_of_field, CheckReport, Field,
    VosaInstance,
};
use vosa_core::{Error, GradedModule, HalfInt, Scalar, StateVector};

use crate::render::{checks, summary, table};
use crate::{AlgebraLevel, ModuleSource, System};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::NotGenerated(_) | Error::Budget { .. } | Error::NotLocal(_)) => 1,
            _ => 2,
        }
    }
}

/// A finished command: the JSON report, its text rendering, a one-line summary and
/// whether every check passed.
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub summary: String,
    pub passed: bool,
}

impl Outcome {
    fn info(report: Value, text: String, summary: String) -> Self {
        Outcome {
            report,
            text,
            summary,
            passed: true,
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let err = |message: String| CliError::Input {
        path: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

fn load_algebra(name: &str) -> Result<Arc<LieAlgebraData>, CliError> {
    let path = Path::new(name);
    if path.extension().is_some_and(|e| e == "json") || path.exists() {
        Ok(LieAlgebraData::from_json_validated(&read_json(path)?)?)
    } else {
        Ok(builtin(name)?)
    }
}

fn load_module(src: &ModuleSource) -> Result<Arc<GradedModule>, CliError> {
    match (&src.input, &src.c, &src.h) {
        (Some(path), None, None) => Ok(ModuleDescriptor::from_json(&read_json(path)?)?.build()?),
        (None, Some(c), Some(h)) => Ok(GradedModule::ns_verma(c.clone(), h.clone(), false)?),
        _ => Err(CliError::Usage("give either --input or both --c and --h".into())),
    }
}

fn scalar_json(s: &Scalar) -> Value {
    serde_json::to_value(s).expect("scalars serialize")
}

fn state_json(v: &StateVector) -> Value {
    Value::Array(
        v.iter()
            .map(|(b, c)| {
                json!({
                    "word": b.word.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "floor": b.floor,
                    "coeff": scalar_json(c),
                })
            })
            .collect(),
    )
}

fn with_checks(mut head: Value, report: &CheckReport) -> Value {
    head["checks"] = serde_json::to_value(report).expect("reports serialize");
    head
}

fn checked(report: Value, head_text: String, what: &str, r: &CheckReport) -> Outcome {
    Outcome {
        report: with_checks(report, r),
        text: format!("{head_text}{}", checks(r)),
        summary: summary(what, r),
        passed: r.all_pass(),
    }
}

pub fn validate(input: Option<&Path>, algebra: Option<&str>) -> Result<Outcome, CliError> {
    let data = match (input, algebra) {
        (Some(path), None) => LieAlgebraData::from_json(&read_json(path)?)?,
        (None, Some(name)) => (*builtin(name)?).clone(),
        _ => return Err(CliError::Usage("give exactly one of --input and --algebra".into())),
    };
    let report = data.validate();
    let valid = report.is_valid();
    let g = if valid { Some(data.dual_coxeter()?) } else { None };
    let json = json!({
        "name": data.name(),
        "dim": data.dim(),
        "valid": valid,
        "violations": report.violations,
        "dual_coxeter": g,
    });
    let mut text = format!("{} (dim {})\n", data.name(), data.dim());
    match &g {
        Some(g) => text.push_str(&format!("valid, dual Coxeter number {g}\n")),
        None => {
            for v in &report.violations {
                text.push_str(&format!("violation: {v}\n"));
            }
        }
    }
    let summary = if valid {
        format!("{}: structure constants valid", data.name())
    } else {
        format!("{}: {} violations", data.name(), report.violations.len())
    };
    Ok(Outcome {
        report: json,
        text,
        summary,
        passed: valid,
    })
}

pub fn catalog(label: Option<&str>) -> Result<Outcome, CliError> {
    if let Some(label) = label {
        let e = parse_catalog_label(label)?;
        let text = table(
            &["type", "dim", "dual coxeter"],
            &[vec![e.label(), e.dim.to_string(), e.dual_coxeter.to_string()]],
        );
        let summary = format!("{}: dim {}, dual Coxeter number {}", e.label(), e.dim, e.dual_coxeter);
        return Ok(Outcome::info(
            serde_json::to_value(&e).expect("entries serialize"),
            text,
            summary,
        ));
    }
    let rows = catalog_rows();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format!("{:?}", r.family),
                r.ranks.clone(),
                r.dim.clone(),
                r.dual_coxeter.clone(),
            ]
        })
        .collect();
    Ok(Outcome::info(
        serde_json::to_value(&rows).expect("rows serialize"),
        table(&["type", "rank", "dim", "dual coxeter"], &cells),
        format!("{} Cartan types", rows.len()),
    ))
}

pub fn gram(src: &ModuleSource, depth: HalfInt) -> Result<Outcome, CliError> {
    let m = load_module(src)?;
    let mut levels = Vec::new();
    let mut text = String::new();
    for g in m.grades_up_to(depth) {
        let form = m.level_form(g);
        levels.push(form.to_json());
        text.push_str(&format!("grade {g}: dim {}, rank {}\n", form.dim(), form.rank()));
        let rows: Vec<Vec<String>> = form
            .gram
            .iter()
            .zip(form.basis.iter())
            .map(|(row, b)| std::iter::once(b.to_string()).chain(row.iter().map(|x| x.to_string())).collect())
            .collect();
        let mut headers = vec!["basis"];
        headers.extend(std::iter::repeat_n("", form.dim()));
        text.push_str(&table(&headers, &rows));
    }
    let summary = format!("{}: Gram matrices of {} levels", m.label(), levels.len());
    Ok(Outcome::info(json!({"module": m.label(), "levels": levels}), text, summary))
}

pub fn nullvec(src: &ModuleSource, depth: HalfInt) -> Result<Outcome, CliError> {
    let m = load_module(src)?;
    let mut levels = Vec::new();
    let mut text = String::new();
    let mut total = 0;
    for g in m.grades_up_to(depth) {
        let form = m.level_form(g);
        let nulls = form.null_vectors();
        total += nulls.len();
        text.push_str(&format!("grade {g}: dim {}, {} null\n", form.dim(), nulls.len()));
        for v in &nulls {
            text.push_str(&format!("  {v}\n"));
        }
        levels.push(json!({
            "grade": g,
            "dim": form.dim(),
            "rank": form.rank(),
            "null_vectors": nulls.iter().map(state_json).collect::<Vec<_>>(),
        }));
    }
    let summary = format!("{}: {total} null vectors up to grade {depth}", m.label());
    Ok(Outcome::info(json!({"module": m.label(), "levels": levels}), text, summary))
}

pub fn ghosts(c: &Scalar, h: &Scalar, depth: HalfInt) -> Result<Outcome, CliError> {
    let report = ghost_report(c.clone(), h.clone(), depth)?;
    let negative: usize = report.iter().map(|l| l.inertia.negative).sum();
    let rows: Vec<Vec<String>> = report
        .iter()
        .map(|l| {
            vec![
                l.grade.to_string(),
                l.dim.to_string(),
                l.inertia.positive.to_string(),
                l.inertia.negative.to_string(),
                l.inertia.zero.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "c": scalar_json(c),
        "h": scalar_json(h),
        "levels": report,
        "ghost_free": negative == 0,
    });
    let summary = if negative == 0 {
        format!("c = {c}, h = {h}: no negative norms up to grade {depth}")
    } else {
        format!("c = {c}, h = {h}: {negative} negative directions up to grade {depth}")
    };
    Ok(Outcome::info(
        json,
        table(&["grade", "dim", "positive", "negative", "zero"], &rows),
        summary,
    ))
}

fn field_pair(path: &Path) -> Result<(Arc<GradedModule>, Field, Field), CliError> {
    let v = read_json(path)?;
    let get = |key: &str| {
        v.get(key).ok_or_else(|| CliError::Input {
            path: path.display().to_string(),
            message: format!("missing `{key}`"),
        })
    };
    let module = ModuleDescriptor::from_json(get("module")?)?.build()?;
    let a = Field::from_json(get("a")?)?;
    let b = Field::from_json(get("b")?)?;
    a.check_support(&module)?;
    b.check_support(&module)?;
    Ok((module, a, b))
}

pub fn ope(input: &Path, depth: HalfInt) -> Result<Outcome, CliError> {
    let (module, a, b) = field_pair(input)?;
    let (loc, terms) = ope_singular_part(&module, &a, &b, depth)?;
    let mut text = format!("N = {}, parity {:?}\n", loc.order, loc.parity);
    let mut items = Vec::new();
    for t in &terms {
        let state = state_of_field(&module, &t.field)?;
        text.push_str(&format!("  (z-w)^-{}: {}  state {}\n", t.n + 1, t.field, state));
        items.push(json!({
            "n": t.n,
            "field": t.field.to_json(),
            "state": state_json(&state),
        }));
    }
    let json = json!({
        "a": a.to_json(),
        "b": b.to_json(),
        "order": loc.order,
        "parity": loc.parity,
        "terms": items,
    });
    let summary = format!("({a}, {b}): locality order {} at depth {depth}", loc.order);
    Ok(Outcome::info(json, text, summary))
}

pub fn brackets(input: &Path, depth: HalfInt, bound: i64) -> Result<Outcome, CliError> {
    let (module, a, b) = field_pair(input)?;
    let mut r = CheckReport::default();
    r.push(check_bracket_from_ope(&module, &a, &b, depth, bound)?);
    Ok(checked(json!({"a": a.to_json(), "b": b.to_json()}), String::new(), "brackets", &r))
}

pub fn sugawara(args: &AlgebraLevel, depth: HalfInt) -> Result<Outcome, CliError> {
    let lie = load_algebra(&args.algebra)?;
    let inst = boson_sugawara(lie.clone(), args.level)?;
    let r = inst.check_sugawara(depth, args.bound)?;
    let c = inst.central_charge();
    let head = json!({"algebra": lie.name(), "level": args.level, "c": scalar_json(&c)});
    let text = format!("{} level {}: c = {c}\n", lie.name(), args.level);
    Ok(checked(head, text, "sugawara", &r))
}

fn charges_json(c: &CentralCharges) -> Value {
    json!({
        "c_fermion": scalar_json(&c.c_fermion),
        "c_boson": scalar_json(&c.c_boson),
        "c_total": scalar_json(&c.c_total),
        "h": scalar_json(&c.h),
    })
}

fn charges_text(c: &CentralCharges) -> String {
    format!(
        "c_fermion = {}, c_boson = {}, c_total = {}, h = {}\n",
        c.c_fermion, c.c_boson, c.c_total, c.h
    )
}

pub fn susy_check(args: &AlgebraLevel, depth: HalfInt) -> Result<Outcome, CliError> {
    let lie = load_algebra(&args.algebra)?;
    let charges = central_charges(&lie, args.level, 0)?;
    let sc = super_construction(lie, args.level)?;
    let r = sc.check(depth, args.bound)?;
    Ok(checked(charges_json(&charges), charges_text(&charges), "susy-check", &r))
}

pub fn module(args: &AlgebraLevel, spin: HalfInt, depth: HalfInt) -> Result<Outcome, CliError> {
    let lie = load_algebra(&args.algebra)?;
    let charges = central_charges(&lie, args.level, spin.twice())?;
    let vm = vertex_module(lie, args.level, spin.twice())?;
    let r = vm.check(depth, args.bound)?;
    Ok(checked(charges_json(&charges), charges_text(&charges), "module", &r))
}

pub fn cocycle(charges: &[Scalar], up_to: usize, depth: HalfInt) -> Result<Outcome, CliError> {
    let basis = cocycle_basis(up_to)?;
    let defaults = [Scalar::zero(), Scalar::from_frac(1, 2), Scalar::from_frac(5, 2)];
    let charges = if charges.is_empty() { &defaults[..] } else { charges };
    let mut r = CheckReport::default();
    r.record(
        format!("even cocycles up to n = {up_to} span {{n, n^3}}"),
        HalfInt::int(up_to as i64),
        (!basis.passed()).then(|| "basis differs from {n, n^3}".to_string()),
    );
    for c in charges {
        r.push(verify_odd_cocycle(c, depth));
    }
    let head = json!({"basis": basis});
    Ok(checked(head, String::new(), "cocycle", &r))
}

pub fn axioms(
    system: System,
    colors: usize,
    algebra: &str,
    level: i64,
    samples: usize,
    seed: u64,
    depth: HalfInt,
) -> Result<Outcome, CliError> {
    let inst: VosaInstance = match system {
        System::Fermion => fermion_vosa(colors)?,
        System::Sugawara => boson_sugawara(load_algebra(algebra)?, level)?,
        System::Super => super_construction(load_algebra(algebra)?, level)?.instance,
    };
    let mut r = check_vosa_axioms(&inst, depth)?;
    if samples > 0 {
        let m = inst.module();
        let states: Vec<StateVector> = m
            .grades_up_to(depth)
            .into_iter()
            .flat_map(|g| m.enumerate_basis(g).iter().cloned().collect::<Vec<_>>())
            .map(StateVector::basis)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let pick = |rng: &mut ChaCha8Rng| states.choose(rng).expect("vacuum state").clone();
            let (a, b, v) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let mut c = check_borcherds(&inst, &a, &b, &v, depth)?;
            c.relation = format!("{} for a = {a}, b = {b}, v = {v}", c.relation);
            r.push(c);
        }
    }
    let c = inst.central_charge();
    let head = json!({"system": inst.label, "c": scalar_json(&c)});
    let text = format!("{}: c = {c}\n", inst.label);
    Ok(checked(head, text, "axioms", &r))
}
