use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};
use tolkit_core::domains::{
    box_hull_powerset_connection, consistency_check, formalism_connection, is_inconsistent, properties_relation,
    reliability_bound, BoxLattice, ConsistencyReport, Formalism, ModelBox, PropertiesElement, PropertiesLattice,
    Universe, DEFAULT_BOUND_BUDGET,
};
use tolkit_core::galois::{
    check_correctness_relation, check_galois, induced_relation_unchecked, refine, select, transform, ModelSpace,
    SelectionOperator,
};
use tolkit_core::lattice::{check_lattice_laws, interval_lattice, powerset_lattice, IntervalLattice, PowersetLattice};
use tolkit_core::tag_options::{
    check_homomorphism, hasse_export, HomomorphismConfig, OptionsLattice, TagOptionsLattice, TagOptionsSpace,
    DEFAULT_RENDER_BOUND,
};
use tolkit_core::{CheckConfig, FiniteLattice, LawReport};

use crate::codec::{decode_model, encode_box, encode_model, encode_properties, encode_rational, encode_system};
use crate::error::{CliError, CliResult};
use crate::scenario::{LatticeSpec, Scenario, SelectorSpec, StepSpec, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Laws {
    Lattice,
    Galois,
    Correctness,
    Homomorphism,
    All,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Caps both lattice sizes for law checks and system enumeration.
    pub budget: Option<u128>,
    pub timing: bool,
}

impl RunOptions {
    fn check_config(&self) -> CheckConfig {
        let mut cfg = CheckConfig::default();
        if let Some(b) = self.budget {
            cfg.max_elements = usize::try_from(b).unwrap_or(usize::MAX);
        }
        cfg
    }

    fn system_budget(&self) -> u128 {
        self.budget.unwrap_or(DEFAULT_BOUND_BUDGET)
    }
}

/// Text to emit and whether the command succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    fn json(value: Value, ok: bool) -> Output {
        let mut body = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        body.push('\n');
        Output { body, ok }
    }
}

fn envelope(command: &str, mut body: Value) -> Value {
    body["schema_version"] = json!(SCHEMA_VERSION);
    body["command"] = json!(command);
    body
}

fn count(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), |v| json!(v))
}

fn formalism(name: &str) -> CliResult<Formalism> {
    name.parse().map_err(CliError::input)
}

enum AnyLattice {
    Options(OptionsLattice),
    TagOptions(TagOptionsLattice),
    Powerset(PowersetLattice),
    Interval(IntervalLattice),
    Properties(PropertiesLattice),
    Boxes(BoxLattice),
}

macro_rules! with_lattice {
    ($l:expr, $x:ident => $body:expr) => {
        match $l {
            AnyLattice::Options($x) => $body,
            AnyLattice::TagOptions($x) => $body,
            AnyLattice::Powerset($x) => $body,
            AnyLattice::Interval($x) => $body,
            AnyLattice::Properties($x) => $body,
            AnyLattice::Boxes($x) => $body,
        }
    };
}

fn build_lattice(sc: &Scenario, spec: &LatticeSpec) -> CliResult<AnyLattice> {
    let l = match spec {
        LatticeSpec::Options { tags, options, domain } => {
            let space = TagOptionsSpace::from_names(tags.clone(), options.clone()).map_err(CliError::input)?;
            let domain = match domain {
                Some(names) => space.tags.set(names).map_err(CliError::input)?,
                None => space.tags.full(),
            };
            AnyLattice::Options(OptionsLattice::new(space, domain).map_err(CliError::input)?)
        }
        LatticeSpec::TagOptions { tags, options } => {
            let space = TagOptionsSpace::from_names(tags.clone(), options.clone()).map_err(CliError::input)?;
            AnyLattice::TagOptions(TagOptionsLattice::new(space))
        }
        LatticeSpec::Powerset { atoms } => {
            AnyLattice::Powerset(powerset_lattice(atoms.clone()).map_err(CliError::input)?)
        }
        LatticeSpec::Interval { denominator } => {
            AnyLattice::Interval(interval_lattice(*denominator).map_err(CliError::input)?)
        }
        LatticeSpec::Properties => AnyLattice::Properties(PropertiesLattice::new(sc.universe.clone())),
        LatticeSpec::Boxes { formalism: f } => AnyLattice::Boxes(BoxLattice::new(&sc.universe, formalism(f)?)),
    };
    Ok(l)
}

fn timed(opts: &RunOptions, f: impl FnOnce() -> tolkit_core::Result<LawReport>) -> CliResult<LawReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(r)
}

fn galois_reports(sc: &Scenario, opts: &RunOptions, cfg: &CheckConfig) -> CliResult<Vec<LawReport>> {
    let mut out = Vec::new();
    for name in &sc.file.connections {
        let r = match name.as_str() {
            "box-hull" => {
                let c = box_hull_powerset_connection(&sc.universe)?;
                timed(opts, || check_galois(&c, cfg))?
            }
            f => {
                let c = formalism_connection(&sc.universe, formalism(f)?);
                timed(opts, || check_galois(&c, cfg))?
            }
        };
        out.push(r);
    }
    Ok(out)
}

fn correctness_reports(sc: &Scenario, opts: &RunOptions, cfg: &CheckConfig) -> CliResult<Vec<LawReport>> {
    let base = properties_relation(&sc.universe, opts.system_budget())?;
    let mut out = vec![timed(opts, || check_correctness_relation(&base, cfg))?];
    for name in &sc.file.connections {
        let r = match name.as_str() {
            "box-hull" => {
                let c = box_hull_powerset_connection(&sc.universe)?;
                let induced = induced_relation_unchecked(&c, &base);
                timed(opts, || check_correctness_relation(&induced, cfg))?
            }
            f => {
                let c = formalism_connection(&sc.universe, formalism(f)?);
                let induced = induced_relation_unchecked(&c, &base);
                timed(opts, || check_correctness_relation(&induced, cfg))?
            }
        };
        out.push(r);
    }
    Ok(out)
}

pub fn check(sc: &Scenario, laws: Laws, opts: &RunOptions) -> CliResult<Output> {
    let start = Instant::now();
    let cfg = opts.check_config();
    let want = |l: Laws| laws == Laws::All || laws == l;
    let mut reports = Vec::new();
    if want(Laws::Lattice) {
        for spec in sc.file.lattices.values() {
            let l = build_lattice(sc, spec)?;
            reports.push(with_lattice!(&l, x => timed(opts, || check_lattice_laws(x, &cfg))?));
        }
    }
    if want(Laws::Galois) {
        reports.extend(galois_reports(sc, opts, &cfg)?);
    }
    if want(Laws::Correctness) {
        reports.extend(correctness_reports(sc, opts, &cfg)?);
    }
    if want(Laws::Homomorphism) {
        if let Some(space) = sc.homomorphism_space()? {
            reports.push(timed(opts, || {
                check_homomorphism(&space, &HomomorphismConfig::default())
            })?);
        }
    }
    let passed = reports.iter().all(LawReport::passed);
    let laws_name = laws
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let mut body = json!({ "laws": laws_name, "passed": passed, "reports": reports });
    if opts.timing {
        body["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(Output::json(envelope("check", body), passed))
}

/// What a transformation result tells the user about the target formalism.
fn box_status(b: &ModelBox) -> &'static str {
    if b.is_empty_set() {
        "bottom"
    } else if b.domain().is_empty() {
        "unconstrained"
    } else if b.model_count() == 1 {
        "singleton"
    } else {
        "needs-selection"
    }
}

fn box_json(u: &Universe, f: Formalism, b: &ModelBox) -> Value {
    let mut v = json!({
        "box": encode_box(u, f, b),
        "status": box_status(b),
        "model_count": count(b.model_count()),
    });
    if b.is_empty_set() {
        v["note"] = json!("cannot reason about the given system constraints");
    }
    v
}

fn verify(u: &Universe, f: Formalism, cfg: &CheckConfig) -> CliResult<()> {
    let r = check_galois(&formalism_connection(u, f), cfg)?;
    if let Some(bad) = r.failures().next() {
        return Err(CliError::Failed(format!("connection `{f}` fails law `{}`", bad.law)));
    }
    Ok(())
}

fn transform_value(sc: &Scenario, from: &str, to: Formalism) -> CliResult<Value> {
    let u = &sc.universe;
    let (f, b) = sc.model(from)?;
    let out = transform(&formalism_connection(u, *f), &formalism_connection(u, to), b)?;
    Ok(json!({
        "from": { "model": from, "box": encode_box(u, *f, b) },
        "to": to.name(),
        "result": box_json(u, to, &out),
    }))
}

pub fn transform_cmd(sc: &Scenario, from: &str, to: &str, no_verify: bool, opts: &RunOptions) -> CliResult<Output> {
    let to = formalism(to)?;
    let (f, _) = sc.model(from)?;
    if !no_verify {
        let cfg = opts.check_config();
        verify(&sc.universe, *f, &cfg)?;
        verify(&sc.universe, to, &cfg)?;
    }
    let mut body = transform_value(sc, from, to)?;
    body["verified"] = json!(!no_verify);
    Ok(Output::json(envelope("transform", body), true))
}

fn consistency_value(u: &Universe, r: &ConsistencyReport) -> Value {
    json!({
        "inconsistent": r.inconsistent,
        "meet": encode_properties(u, &r.meet),
        "conflicts": r.conflicts,
        "drop_restores": r.drop_restores,
    })
}

fn consistency_of(sc: &Scenario, names: Option<&[String]>) -> CliResult<(Value, bool)> {
    let names: Vec<String> = match names {
        Some(ns) => ns.to_vec(),
        None => sc.models.keys().cloned().collect(),
    };
    let inputs = names
        .iter()
        .map(|n| sc.model(n).cloned())
        .collect::<CliResult<Vec<_>>>()?;
    let r = consistency_check(&sc.universe, &inputs)?;
    let mut v = consistency_value(&sc.universe, &r);
    v["models"] = json!(names);
    Ok((v, !r.inconsistent))
}

pub fn consistency(sc: &Scenario) -> CliResult<Output> {
    let (body, ok) = consistency_of(sc, None)?;
    Ok(Output::json(envelope("consistency", body), ok))
}

fn bound_value(sc: &Scenario, p: &PropertiesElement, source: &str, sink: &str, budget: u128) -> CliResult<Value> {
    let u = &sc.universe;
    let b = reliability_bound(u, p, source, sink, budget)?;
    Ok(json!({
        "source": source,
        "sink": sink,
        "min": encode_rational(&b.min),
        "max": encode_rational(&b.max),
        "argmin": encode_system(u, &b.argmin),
        "argmax": encode_system(u, &b.argmax),
        "enumerated": count(b.enumerated),
    }))
}

pub fn bound(sc: &Scenario, source: &str, sink: &str, opts: &RunOptions) -> CliResult<Output> {
    let body = bound_value(sc, &sc.properties, source, sink, opts.system_budget())?;
    Ok(Output::json(envelope("bound", body), true))
}

pub fn hasse(sc: &Scenario, name: &str) -> CliResult<Output> {
    let spec = sc
        .file
        .lattices
        .get(name)
        .ok_or_else(|| CliError::Input(format!("unknown lattice `{name}`")))?;
    let l = build_lattice(sc, spec)?;
    let dot = with_lattice!(&l, x => hasse_export(x, DEFAULT_RENDER_BOUND)?);
    Ok(Output { body: dot, ok: true })
}

/// Allowed `(tag, value)` pairs over both parts, counting unconstrained tags
/// as allowing every value. Refinement never increases it.
fn allowed_values(u: &Universe, p: &PropertiesElement) -> u64 {
    [(Formalism::Reliability, &p.rel), (Formalism::Topology, &p.topo)]
        .into_iter()
        .map(|(f, x)| {
            let space = f.space(u);
            (0..space.tags.len())
                .map(|t| x.get(t).map_or(space.options.len(), |s| s.len()) as u64)
                .sum::<u64>()
        })
        .sum()
}

fn selector(sc: &Scenario, f: Formalism, spec: &SelectorSpec) -> CliResult<SelectionOperator<BoxLattice>> {
    match spec {
        SelectorSpec::Named(n) if n == "canonical-least" => Ok(SelectionOperator::canonical_least()),
        SelectorSpec::Named(n) => Err(CliError::Input(format!("unknown selector `{n}`"))),
        SelectorSpec::Fixed { fixed } => Ok(SelectionOperator::fixed(
            decode_model(&sc.universe, f, fixed).map_err(CliError::input)?,
        )),
    }
}

fn step_value(
    sc: &Scenario,
    p: &mut PropertiesElement,
    step: &StepSpec,
    opts: &RunOptions,
) -> CliResult<(Value, bool)> {
    let u = &sc.universe;
    let lattice = PropertiesLattice::new(u.clone());
    let refined = |before: &PropertiesElement, after: &PropertiesElement| {
        json!({
            "before": encode_properties(u, before),
            "after": encode_properties(u, after),
            "allowed_before": allowed_values(u, before),
            "allowed_after": allowed_values(u, after),
            "strict": lattice.leq(after, before) && after != before,
        })
    };
    let v = match step {
        StepSpec::Abstract { formalism: name } => {
            let f = formalism(name)?;
            json!({ "formalism": f.name(), "result": box_json(u, f, &f.alpha(p)) })
        }
        StepSpec::Select {
            formalism: name,
            selector: spec,
        } => {
            let f = formalism(name)?;
            let c = formalism_connection(u, f);
            let space = c.abstract_domain();
            let m = c.alpha(p);
            let sel = selector(sc, f, spec.as_ref().unwrap_or(&sc.file.selector))?;
            let chosen = select(&sel, space, &m)?;
            let next = refine(p, &c, &chosen)?;
            let mut v = refined(p, &next);
            v["formalism"] = json!(f.name());
            v["selector"] = json!(sel.name());
            v["model"] = encode_model(u, f, &chosen);
            v["model_count"] = count(space.models(&m).len() as u128);
            *p = next;
            v
        }
        StepSpec::Refine { model } => {
            let (f, b) = sc.model(model)?;
            let next = lattice.meet(p, &f.gamma(u, b));
            let mut v = refined(p, &next);
            v["model"] = json!(model);
            *p = next;
            v
        }
        StepSpec::Transform { from, to } => transform_value(sc, from, formalism(to)?)?,
        StepSpec::Consistency { models } => {
            let (v, ok) = consistency_of(sc, models.as_deref())?;
            return Ok((v, ok));
        }
        StepSpec::Bound { source, sink } => bound_value(sc, p, source, sink, opts.system_budget())?,
    };
    Ok((v, true))
}

pub fn pipeline(sc: &Scenario, opts: &RunOptions) -> CliResult<Output> {
    let mut p = sc.properties.clone();
    let mut steps = Vec::new();
    let mut ok = true;
    let mut error = Value::Null;
    for (i, step) in sc.file.pipeline.iter().enumerate() {
        match step_value(sc, &mut p, step, opts) {
            Ok((mut v, step_ok)) => {
                v["index"] = json!(i);
                v["op"] = serde_json::to_value(step).expect("steps serialize")["op"].clone();
                v["ok"] = json!(step_ok);
                ok &= step_ok;
                steps.push(v);
            }
            Err(e) if e.exit_code() == 1 => {
                ok = false;
                error = json!({ "step": i, "message": e.to_string() });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut body = json!({
        "initial": encode_properties(&sc.universe, &sc.properties),
        "final": encode_properties(&sc.universe, &p),
        "inconsistent": is_inconsistent(&p),
        "steps": steps,
        "passed": ok,
    });
    if !error.is_null() {
        body["error"] = error;
    }
    Ok(Output::json(envelope("pipeline", body), ok))
}
