//! Input parsing for whole maps, job configuration, and deterministic
//! JSON/text reporting for the CLI commands.

use serde::Serialize;

use crate::engine::{
    Certificate, Component, ComponentKind, Engine, NonPropernessDescription, Status, TbgReport,
    Verdict,
};
use crate::oracle::{self, OracleConfig};
use crate::poly::{format_rat, parse_polynomial, Field, Polynomial, PolynomialMap, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Fan,
    Tuples,
    Chain,
    Jelonek,
    Toric,
    Proper,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub field: Field,
    pub source: String,
    pub vars: Option<Vec<String>>,
    pub command: Command,
    pub numeric_tol: f64,
    pub oracle_tol: f64,
    pub seed: u64,
    pub output: OutputFormat,
    pub normalization_shift: Option<Vec<Rat>>,
    pub cone: Option<usize>,
    pub oracle_samples: usize,
}

impl JobConfig {
    pub fn new(command: Command, source: String) -> Self {
        JobConfig {
            field: Field::Real,
            source,
            vars: None,
            command,
            numeric_tol: 1e-9,
            oracle_tol: 1e-6,
            seed: 17,
            output: OutputFormat::Json,
            normalization_shift: None,
            cone: None,
            oracle_samples: 20,
        }
    }
}

/// Parses "f1 = expr; f2 = expr" (newlines also separate entries) into a
/// polynomial map. Variables are taken from `vars` or inferred in order
/// of first appearance.
pub fn parse_map_source(
    source: &str,
    vars: Option<&[String]>,
    field: Field,
) -> Result<(PolynomialMap, Vec<String>)> {
    let mut exprs = vec![];
    for chunk in source.split(|c| c == ';' || c == '\n') {
        let line = chunk.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected `name = expression`, got `{}`", line),
            });
        };
        exprs.push(line[eq + 1..].trim().to_string());
    }
    if exprs.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "no polynomial entries found".into(),
        });
    }
    let names: Vec<String> = match vars {
        Some(v) => v.to_vec(),
        None => infer_variables(&exprs),
    };
    if names.len() != exprs.len() {
        return Err(Error::DimensionMismatch {
            expected: exprs.len(),
            got: names.len(),
        });
    }
    let components = exprs
        .iter()
        .map(|e| parse_polynomial(e, &names))
        .collect::<Result<Vec<_>>>()?;
    Ok((PolynomialMap::new(components, field)?, names))
}

fn infer_variables(exprs: &[String]) -> Vec<String> {
    let mut out: Vec<String> = vec![];
    for e in exprs {
        let bytes = e.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &e[start..i];
                if !out.iter().any(|v| v == name) {
                    out.push(name.to_string());
                }
            } else {
                i += 1;
            }
        }
    }
    out
}

fn yvar_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("y{}", i + 1)).collect()
}

fn tvar_names(m: usize) -> Vec<String> {
    if m == 1 {
        vec!["t".into()]
    } else {
        (0..m).map(|i| format!("t{}", i + 1)).collect()
    }
}

fn poly_str(p: &Polynomial, names: &[String]) -> String {
    let refs: Vec<&str> = names.iter().take(p.nvars()).map(|s| s.as_str()).collect();
    debug_assert_eq!(refs.len(), p.nvars());
    p.display(&refs)
}

#[derive(Serialize)]
struct ComponentJson {
    #[serde(rename = "type")]
    kind: ComponentKind,
    tuple_id: Option<usize>,
    rays: Vec<Vec<i64>>,
    m: usize,
    status: Status,
    is_f0: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    parametrization: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    implicit: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    equations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    numeric_equations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    system: Option<LiftedJson>,
}

#[derive(Serialize)]
struct LiftedJson {
    theta: Vec<usize>,
    variety: Vec<String>,
    image: Vec<String>,
}

fn component_json(c: &Component, n: usize) -> ComponentJson {
    let yn = yvar_names(n);
    let tn = tvar_names(c.m.max(1));
    ComponentJson {
        kind: c.kind,
        tuple_id: c.cone,
        rays: c.rays.clone(),
        m: c.m,
        status: c.status,
        is_f0: c.is_f0,
        parametrization: c
            .parametrization
            .as_ref()
            .map(|f| f.iter().map(|p| poly_str(p, &tn)).collect()),
        implicit: c.implicit.as_ref().map(|p| poly_str(p, &yn)),
        equations: c.equations.iter().map(|p| poly_str(p, &yn)).collect(),
        numeric_equations: c
            .numeric_equations
            .iter()
            .map(|e| {
                let terms: Vec<String> = e
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm() > 0.0)
                    .map(|(i, c)| format!("({:+.12e}{:+.12e}i)*y{}", c.re, c.im, i + 1))
                    .collect();
                format!(
                    "({:+.12e}{:+.12e}i) + {}",
                    e.constant.re,
                    e.constant.im,
                    terms.join(" + ")
                )
            })
            .collect(),
        system: c.lifted.as_ref().and_then(|l| {
            if c.status == Status::Unresolved {
                let tn = tvar_names(c.m.max(1));
                Some(LiftedJson {
                    theta: l.theta.iter().map(|i| i + 1).collect(),
                    variety: l.variety.iter().map(|p| poly_str(p, &tn)).collect(),
                    image: l.image.iter().map(|p| poly_str(p, &tn)).collect(),
                })
            } else {
                None
            }
        }),
    }
}

#[derive(Serialize)]
struct TbgJson {
    verdict: Verdict,
    tuples: Vec<TbgTupleJson>,
}

#[derive(Serialize)]
struct TbgTupleJson {
    cone: usize,
    verdict: Verdict,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
}

fn tbg_json(rep: &TbgReport) -> TbgJson {
    TbgJson {
        verdict: rep.verdict,
        tuples: rep
            .tuples
            .iter()
            .map(|t| TbgTupleJson {
                cone: t.cone,
                verdict: t.verdict,
                detail: t.detail.clone(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct SetJson {
    schema: u32,
    command: &'static str,
    field: Field,
    normalized: bool,
    components: Vec<ComponentJson>,
    f0_in_sf: bool,
    f0: Vec<String>,
    tbg_report: TbgJson,
}

fn set_json(
    cmd: &'static str,
    engine: &Engine,
    desc: &NonPropernessDescription,
    tbg: &TbgReport,
) -> SetJson {
    SetJson {
        schema: 1,
        command: cmd,
        field: engine.field(),
        normalized: engine.original.is_normalized(),
        components: desc
            .components
            .iter()
            .map(|c| component_json(c, engine.n()))
            .collect(),
        f0_in_sf: desc.includes_f0,
        f0: desc.f0.iter().map(format_rat).collect(),
        tbg_report: tbg_json(tbg),
    }
}

/// The result of a CLI job: an exit status plus the rendered report.
pub struct JobOutcome {
    pub exit_code: i32,
    pub report: String,
}

pub fn run(config: &JobConfig) -> JobOutcome {
    match run_inner(config) {
        Ok(outcome) => outcome,
        Err(e) => {
            let code = match &e {
                Error::TbgViolation(_) => 2,
                _ => 1,
            };
            JobOutcome {
                exit_code: code,
                report: format!("error: {}", e),
            }
        }
    }
}

fn run_inner(config: &JobConfig) -> Result<JobOutcome> {
    let (map, _names) = parse_map_source(&config.source, config.vars.as_deref(), config.field)?;
    let engine =
        Engine::with_normalization_target(map, config.normalization_shift.clone())?;
    match config.command {
        Command::Fan | Command::Tuples => fan_report(config, &engine),
        Command::Chain => chain_report(config, &engine),
        Command::Jelonek => set_report(config, &engine, true),
        Command::Toric => set_report(config, &engine, false),
        Command::Proper => proper_report(config, &engine),
        Command::Verify => verify_report(config, &engine),
    }
}

#[derive(Serialize)]
struct FanJson {
    schema: u32,
    command: &'static str,
    field: Field,
    normalized: bool,
    rays: Vec<Vec<i64>>,
    cones: Vec<ConeJson>,
}

#[derive(Serialize)]
struct ConeJson {
    id: usize,
    dim: usize,
    rays: Vec<usize>,
    tdim: usize,
    kind: crate::classify::TupleKind,
    theta: Vec<usize>,
    basic: bool,
    almost_semi_origin: bool,
    passes_zero_dim_filter: bool,
    members: Vec<Vec<Vec<i64>>>,
}

fn fan_report(config: &JobConfig, engine: &Engine) -> Result<JobOutcome> {
    let fan = &engine.fan;
    let cones: Vec<ConeJson> = fan
        .cones()
        .iter()
        .map(|c| {
            let class = &engine.classes[c.id];
            let tuple = fan.tuple_of(c.id);
            ConeJson {
                id: c.id,
                dim: c.dim,
                rays: c.ray_idxs.clone(),
                tdim: tuple.tdim,
                kind: class.kind,
                theta: class.theta.iter().map(|i| i + 1).collect(),
                basic: class.basic,
                almost_semi_origin: class.almost_semi_origin,
                passes_zero_dim_filter: class.passes_zero_dim_filter,
                members: tuple.members.iter().map(|m| m.points.clone()).collect(),
            }
        })
        .collect();
    let cmd = if config.command == Command::Fan {
        "fan"
    } else {
        "tuples"
    };
    let json = FanJson {
        schema: 1,
        command: cmd,
        field: engine.field(),
        normalized: engine.original.is_normalized(),
        rays: fan.rays().to_vec(),
        cones,
    };
    let report = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&json).unwrap(),
        OutputFormat::Text => {
            let mut s = String::new();
            s.push_str(&format!("rays: {:?}\n", fan.rays()));
            for c in &json.cones {
                s.push_str(&format!(
                    "cone {:>2}  dim {}  tdim {}  rays {:?}  {:?}{}{}  theta {:?}\n",
                    c.id,
                    c.dim,
                    c.tdim,
                    c.rays,
                    c.kind,
                    if c.basic { " basic" } else { "" },
                    if c.almost_semi_origin { " almost-semi-origin" } else { "" },
                    c.theta,
                ));
            }
            s
        }
    };
    Ok(JobOutcome {
        exit_code: 0,
        report,
    })
}

#[derive(Serialize)]
struct ChainJson {
    schema: u32,
    command: &'static str,
    cone: usize,
    u: Vec<Vec<i64>>,
    u_inv: Vec<Vec<i64>>,
    base_vertex: Vec<Vec<i64>>,
    flag_tuples: Vec<Vec<Vec<Vec<i64>>>>,
    valid: bool,
    violations: Vec<String>,
}

fn chain_report(config: &JobConfig, engine: &Engine) -> Result<JobOutcome> {
    let cone = config.cone.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "`chain` requires --cone <id> (see the `fan` output)".into(),
    })?;
    if cone >= engine.fan.cones().len() || engine.fan.cone(cone).dim == 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("cone {} does not index a positive-dimensional cone", cone),
        });
    }
    let ct = engine.chain_for(cone)?;
    let rep = crate::lattice::verify_chain(&ct, &engine.map.components, &engine.polytopes);
    let json = ChainJson {
        schema: 1,
        command: "chain",
        cone,
        u: ct.u.clone(),
        u_inv: ct.u_inv.clone(),
        base_vertex: ct.base_vertex.clone(),
        flag_tuples: ct
            .flag
            .iter()
            .map(|t| t.members.iter().map(|m| m.points.clone()).collect())
            .collect(),
        valid: rep.ok(),
        violations: rep.violations.clone(),
    };
    let report = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&json).unwrap(),
        OutputFormat::Text => format!(
            "cone {}\nU = {:?}\nU^-1 = {:?}\nbase vertex = {:?}\nvalid: {}\n{}",
            cone,
            json.u,
            json.u_inv,
            json.base_vertex,
            json.valid,
            json.violations.join("\n")
        ),
    };
    Ok(JobOutcome {
        exit_code: 0,
        report,
    })
}

fn set_report(config: &JobConfig, engine: &Engine, jelonek: bool) -> Result<JobOutcome> {
    let tbg = engine.check_tbg();
    let desc = if jelonek {
        engine.jelonek_set()?
    } else {
        engine.toric_set()?
    };
    let cmd = if jelonek { "jelonek" } else { "toric" };
    let json = set_json(cmd, engine, &desc, &tbg);
    let report = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&json).unwrap(),
        OutputFormat::Text => render_set_text(engine, &desc, &tbg, cmd),
    };
    let exit_code = if tbg.verdict == Verdict::Fail {
        2
    } else if desc.components.iter().any(|c| c.status == Status::Unresolved) {
        3
    } else {
        0
    };
    Ok(JobOutcome { exit_code, report })
}

fn render_set_text(
    engine: &Engine,
    desc: &NonPropernessDescription,
    tbg: &TbgReport,
    cmd: &str,
) -> String {
    let n = engine.n();
    let yn = yvar_names(n);
    let mut s = format!(
        "{} over {} ({} component{}):\n",
        cmd,
        engine.field(),
        desc.components.len(),
        if desc.components.len() == 1 { "" } else { "s" }
    );
    for c in &desc.components {
        let tn = tvar_names(c.m.max(1));
        let body = if let Some(f) = &c.parametrization {
            let coords: Vec<String> = f.iter().map(|p| poly_str(p, &tn)).collect();
            let mut b = format!("({})", coords.join(", "));
            if c.m == 1 {
                b.push_str(" for t in K*");
            }
            if let Some(im) = &c.implicit {
                b.push_str(&format!("   [implicit: {} = 0]", poly_str(im, &yn)));
            }
            b
        } else if !c.equations.is_empty() {
            c.equations
                .iter()
                .map(|e| format!("{} = 0", poly_str(e, &yn)))
                .collect::<Vec<_>>()
                .join(", ")
        } else if !c.numeric_equations.is_empty() {
            "numeric hyperplane(s)".to_string()
        } else {
            "unresolved (symbolic system attached in JSON output)".to_string()
        };
        s.push_str(&format!(
            "  - {:?}{} {}\n",
            c.kind,
            c.cone
                .map(|id| format!(" [tuple {}]", id))
                .unwrap_or_else(|| " [f(0)]".into()),
            body
        ));
    }
    s.push_str(&format!("f(0) in S_f: {}\n", desc.includes_f0));
    s.push_str(&format!("T-BG: {:?}\n", tbg.verdict));
    s
}

#[derive(Serialize)]
struct ProperJson {
    schema: u32,
    command: &'static str,
    field: Field,
    normalized: bool,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    reason: String,
}

fn proper_report(config: &JobConfig, engine: &Engine) -> Result<JobOutcome> {
    let cert = engine.properness_certificate()?;
    let (verdict, witness, reason) = match cert {
        Certificate::Proper { reason } => ("proper", None, reason),
        Certificate::NonProper { witness, reason } => (
            "non_proper",
            Some(witness.iter().map(format_rat).collect::<Vec<_>>()),
            reason,
        ),
        Certificate::Unknown { reason } => ("unknown", None, reason),
    };
    let json = ProperJson {
        schema: 1,
        command: "proper",
        field: engine.field(),
        normalized: engine.original.is_normalized(),
        verdict,
        witness: witness.clone(),
        reason: reason.clone(),
    };
    let report = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&json).unwrap(),
        OutputFormat::Text => match witness {
            Some(w) => format!("{} (witness y = [{}]): {}\n", verdict, w.join(", "), reason),
            None => format!("{}: {}\n", verdict, reason),
        },
    };
    Ok(JobOutcome {
        exit_code: 0,
        report,
    })
}

#[derive(Serialize)]
struct VerifyJson {
    schema: u32,
    command: &'static str,
    field: Field,
    normalized: bool,
    components: Vec<VerifyComponentJson>,
    sweep_candidates: usize,
    sweep_max_distance: f64,
    all_confirmed: bool,
}

#[derive(Serialize)]
struct VerifyComponentJson {
    #[serde(rename = "type")]
    kind: ComponentKind,
    tuple_id: Option<usize>,
    samples: usize,
    confirmed: usize,
}

fn verify_report(config: &JobConfig, engine: &Engine) -> Result<JobOutcome> {
    let tbg = engine.check_tbg();
    if tbg.verdict == Verdict::Fail {
        return Err(Error::TbgViolation(
            "verification requires a T-boundary generic map".into(),
        ));
    }
    let desc = engine.jelonek_set()?;
    let cfg = OracleConfig {
        tol: config.oracle_tol,
        seed: config.seed,
        ..OracleConfig::default()
    };
    let mut comps_json = vec![];
    let mut all_ok = true;
    for c in &desc.components {
        if c.status == Status::Unresolved {
            all_ok = false;
            comps_json.push(VerifyComponentJson {
                kind: c.kind,
                tuple_id: c.cone,
                samples: 0,
                confirmed: 0,
            });
            continue;
        }
        let pts = oracle::sample_component_points(
            std::slice::from_ref(c),
            config.oracle_samples,
            engine.field(),
            config.seed,
        );
        let rays = c.rays.clone();
        let mut confirmed = 0;
        for p in &pts {
            if oracle::confirm_escape_point(&engine.original, &engine.fan, p, &rays, &cfg) {
                confirmed += 1;
            }
        }
        if (confirmed as f64) < 0.95 * (pts.len() as f64) {
            all_ok = false;
        }
        comps_json.push(VerifyComponentJson {
            kind: c.kind,
            tuple_id: c.cone,
            samples: pts.len(),
            confirmed,
        });
    }
    let sweep = oracle::sweep_escape_candidates(&engine.original, &engine.fan, &cfg);
    let toric = engine.toric_set()?;
    let mut max_d: f64 = 0.0;
    for cand in &sweep {
        let d = desc
            .components
            .iter()
            .chain(toric.components.iter())
            .map(|c| oracle::component_distance(c, cand, engine.field()))
            .fold(f64::INFINITY, f64::min);
        if d.is_finite() {
            max_d = max_d.max(d);
        }
    }
    if max_d > config.oracle_tol {
        all_ok = false;
    }
    let json = VerifyJson {
        schema: 1,
        command: "verify",
        field: engine.field(),
        normalized: engine.original.is_normalized(),
        components: comps_json,
        sweep_candidates: sweep.len(),
        sweep_max_distance: max_d,
        all_confirmed: all_ok,
    };
    let report = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&json).unwrap(),
        OutputFormat::Text => {
            let mut s = String::new();
            for c in &json.components {
                s.push_str(&format!(
                    "{:?} [tuple {:?}]: {}/{} sampled points confirmed\n",
                    c.kind, c.tuple_id, c.confirmed, c.samples
                ));
            }
            s.push_str(&format!(
                "sweep: {} candidates, max distance to components {:.3e}\n",
                json.sweep_candidates, json.sweep_max_distance
            ));
            s.push_str(&format!("all confirmed: {}\n", json.all_confirmed));
            s
        }
    };
    Ok(JobOutcome {
        exit_code: if all_ok { 0 } else { 3 },
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_map_and_infer_vars() {
        let (map, names) = parse_map_source(
            "f1 = v*(u-1); f2 = v^2*(u^2-3*u+2)",
            None,
            Field::Real,
        )
        .unwrap();
        assert_eq!(names, vec!["v".to_string(), "u".to_string()]);
        assert_eq!(map.n(), 2);
        // explicit variable order overrides inference
        let vs = vec!["u".to_string(), "v".to_string()];
        let (map2, names2) =
            parse_map_source("f1 = v*(u-1)\nf2 = v^2*(u^2-3*u+2)", Some(&vs), Field::Real)
                .unwrap();
        assert_eq!(names2, vs);
        assert_eq!(map2.n(), 2);
    }

    #[test]
    fn json_runs_are_deterministic() {
        let mut cfg = JobConfig::new(Command::Jelonek, "f1 = v*(u-1); f2 = v^2*(u^2-3*u+2)".into());
        cfg.vars = Some(vec!["u".into(), "v".into()]);
        let a = run(&cfg);
        let b = run(&cfg);
        assert_eq!(a.exit_code, 0);
        assert_eq!(a.report, b.report);
        let v: serde_json::Value = serde_json::from_str(&a.report).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["f0_in_sf"], true);
        assert_eq!(v["components"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn proper_command() {
        let mut cfg = JobConfig::new(Command::Proper, "f1 = x1 + 1; f2 = x2 + 1".into());
        cfg.vars = Some(vec!["x1".into(), "x2".into()]);
        let out = run(&cfg);
        assert_eq!(out.exit_code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(v["verdict"], "proper");
    }
}
