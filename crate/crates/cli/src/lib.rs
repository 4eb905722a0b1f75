//! Reproducible derivations and verifications behind the `fglab` binary.
//!
//! [`run`] executes one command and returns an exit code together with a
//! JSON report. The JSON form is the stable contract: keys are sorted,
//! nothing depends on wall-clock time, and every table is recomputed.

use std::path::PathBuf;

use serde_json::{json, Map, Value};

use fglab_core::bordism::{self, coaction_series, BordismModel};
use fglab_core::fgl::{self, FormalGroupLaw};
use fglab_core::series::SeriesTerm;
use fglab_core::steenrod::{self, milnor_oracle_compare, DualSteenrodPresentation};
use fglab_core::{Error, GeneratorSpec, Ring, RingDescriptor, RingHom, Series2};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "fglab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default series truncation for laws read from the command line.
pub const DEFAULT_LAW_TRUNCATION: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    /// Derive the dual Steenrod tables and verify the Hopf identities.
    Derive,
    /// Derive, verify, and cross-check against the independent oracle.
    Verify,
    /// Solve for a strict isomorphism from a law to the additive law.
    Solve,
    /// Check the formal group law axioms.
    Check,
    /// Print the 2-series of a law.
    TwoSeries,
    /// Build the bordism model.
    Build,
    /// Coaction of the model on the orientation class.
    Coaction,
    /// Cooperation coproduct of the model.
    Coproduct,
    /// Evaluate a ring map out of the model's base.
    Ev,
    /// Internal composition of two ring maps.
    Compose,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Derive => "derive",
            CommandKind::Verify => "verify",
            CommandKind::Solve => "solve",
            CommandKind::Check => "check",
            CommandKind::TwoSeries => "two-series",
            CommandKind::Build => "build",
            CommandKind::Coaction => "coaction",
            CommandKind::Coproduct => "coproduct",
            CommandKind::Ev => "ev",
            CommandKind::Compose => "compose",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    /// `k` for Steenrod commands, `m` for bordism commands.
    pub generators: usize,
    pub truncation: Option<u32>,
    pub format: Format,
    pub seed: u64,
    pub output: Option<PathBuf>,
    /// Law in canonical text or as a JSON term list.
    pub law: Option<String>,
    /// Coefficient or target ring: inline `name:degree,...` or a TOML/JSON file.
    pub ring: Option<String>,
    pub ring_truncation: Option<u32>,
    /// Ring map assignments such as `a1=t, a2=t^2`.
    pub map: Option<String>,
    pub second_map: Option<String>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            generators: 0,
            truncation: None,
            format: Format::Json,
            seed: 0,
            output: None,
            law: None,
            ring: None,
            ring_truncation: None,
            map: None,
            second_map: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// 0 success, 1 verification failure, 2 configuration error.
    pub exit_code: i32,
    pub report: Value,
}

impl Outcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        text_lines(&self.report, "", &mut out);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(v, &p, out);
            }
        }
        Value::Array(a) if a.is_empty() => out.push_str(&format!("{prefix}: []\n")),
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                text_lines(v, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

enum Failure {
    Config(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ModelInconsistency(_) | Error::AxiomViolation { .. } | Error::NotAnIsomorphism { .. } => {
                Failure::Verification(json!({ "error": e.to_string() }))
            }
            other => Failure::Config(other.to_string()),
        }
    }
}

type Step = std::result::Result<(bool, Map<String, Value>), Failure>;

/// Executes one command. Never panics on bad input; configuration problems
/// come back as exit code 2 with an `error` field.
pub fn run(config: &RunConfig) -> Outcome {
    let mut report = Map::new();
    report.insert("schema_version".into(), json!(SCHEMA_VERSION));
    report.insert("tool".into(), json!(TOOL));
    report.insert("version".into(), json!(VERSION));
    report.insert("command".into(), json!(config.command.name()));
    report.insert(
        "conventions".into(),
        json!({
            "coproduct": steenrod::CONVENTION,
            "internal_compose": bordism::CONVENTION,
            "compose": "compose1(f, g) = f(g(x))",
        }),
    );
    let result = match config.command {
        CommandKind::Derive => derive(config, false),
        CommandKind::Verify => derive(config, true),
        CommandKind::Solve => solve(config),
        CommandKind::Check => check(config),
        CommandKind::TwoSeries => two_series(config),
        CommandKind::Build => build(config),
        CommandKind::Coaction => with_model(config, |m, out| {
            out.insert("coaction".into(), json!(bordism::coaction(m).to_string()));
            Ok(true)
        }),
        CommandKind::Coproduct => with_model(config, |m, out| {
            let table = bordism::cooperation_coproduct(m)?;
            out.insert("coproduct".into(), named_table(m.base(), table.iter().map(|t| t.to_string())));
            out.insert("convention".into(), json!(bordism::CONVENTION));
            Ok(true)
        }),
        CommandKind::Ev => with_model(config, |m, out| evaluate(config, m, out)),
        CommandKind::Compose => with_model(config, |m, out| compose(config, m, out)),
    };
    let exit_code = match result {
        Ok((passed, body)) => {
            report.extend(body);
            report.insert("status".into(), json!(if passed { "ok" } else { "failed" }));
            if passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Verification(body)) => {
            if let Value::Object(b) = body {
                report.extend(b);
            }
            report.insert("status".into(), json!("failed"));
            1
        }
        Err(Failure::Config(msg)) => {
            report.insert("status".into(), json!("config-error"));
            report.insert("error".into(), json!(msg));
            2
        }
    };
    Outcome {
        exit_code,
        report: Value::Object(report),
    }
}

fn generators_json(ring: &Ring) -> Value {
    json!(ring
        .generators()
        .iter()
        .map(|g| json!({ "name": g.name, "degree": g.degree }))
        .collect::<Vec<_>>())
}

fn named_table(ring: &Ring, values: impl Iterator<Item = String>) -> Value {
    json!(ring
        .generators()
        .iter()
        .zip(values)
        .map(|(g, v)| json!({ "generator": g.name, "value": v }))
        .collect::<Vec<_>>())
}

fn derive(config: &RunConfig, with_oracle: bool) -> Step {
    let p = DualSteenrodPresentation::derive(config.generators, config.truncation)?;
    let report = steenrod::verify_hopf(&p, config.seed)?;
    let mut out = Map::new();
    out.insert("generators".into(), generators_json(p.ring()));
    out.insert("truncation".into(), json!(p.truncation()));
    out.insert("coproduct".into(), named_table(p.ring(), p.coproduct().iter().map(|t| t.to_string())));
    out.insert("antipode".into(), named_table(p.ring(), p.antipode().iter().map(|a| a.to_string())));
    out.insert("convention".into(), json!(steenrod::CONVENTION));
    out.insert("seed".into(), json!(config.seed));
    out.insert("checks_run".into(), json!(report.checks.len()));
    out.insert(
        "failures".into(),
        serde_json::to_value(report.failures().collect::<Vec<_>>()).expect("checks serialize"),
    );
    let mut passed = report.passed();
    if with_oracle {
        out.insert("checks".into(), serde_json::to_value(&report.checks).expect("checks serialize"));
        let oracle = milnor_oracle_compare(config.generators, config.truncation)?;
        passed &= oracle.passed();
        out.insert("oracle".into(), serde_json::to_value(&oracle).expect("oracle serializes"));
    }
    out.insert("verified".into(), json!(passed));
    Ok((passed, out))
}

/// Inline `name:degree,...`, or a path ending in `.toml` / `.json`.
pub fn parse_ring(spec: Option<&str>, truncation: u32) -> fglab_core::Result<Ring> {
    let Some(spec) = spec.map(str::trim).filter(|s| !s.is_empty()) else {
        return RingDescriptor::new(Vec::new(), truncation);
    };
    if spec.ends_with(".toml") || spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Config(format!("{spec}: {e}")))?;
        return if spec.ends_with(".toml") {
            RingDescriptor::from_toml_str(&text)
        } else {
            RingDescriptor::from_json_str(&text)
        };
    }
    let gens = spec
        .split(',')
        .map(|g| {
            let (name, degree) = g
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("generator `{g}` must be name:degree")))?;
            let degree = degree
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad degree in `{g}`")))?;
            Ok(GeneratorSpec::new(name.trim(), degree))
        })
        .collect::<fglab_core::Result<Vec<_>>>()?;
    RingDescriptor::new(gens, truncation)
}

fn law_inputs(config: &RunConfig) -> std::result::Result<(Ring, u32, Series2), Failure> {
    let truncation = config.truncation.unwrap_or(DEFAULT_LAW_TRUNCATION);
    let ring = parse_ring(config.ring.as_deref(), config.ring_truncation.unwrap_or(truncation))?;
    let text = config
        .law
        .as_deref()
        .ok_or_else(|| Failure::Config("a law is required (--law)".into()))?;
    let law = if text.trim_start().starts_with('[') {
        let terms: Vec<SeriesTerm> =
            serde_json::from_str(text).map_err(|e| Failure::Config(format!("law JSON: {e}")))?;
        Series2::from_json_terms(&ring, truncation, &terms)?
    } else {
        Series2::parse(&ring, truncation, text)?
    };
    Ok((ring, truncation, law))
}

fn law_header(ring: &Ring, truncation: u32, law: &Series2, out: &mut Map<String, Value>) {
    out.insert("ring".into(), generators_json(ring));
    out.insert("truncation".into(), json!(truncation));
    out.insert("law".into(), json!(law.to_text()));
}

fn check(config: &RunConfig) -> Step {
    let (ring, truncation, law) = law_inputs(config)?;
    let mut out = Map::new();
    law_header(&ring, truncation, &law, &mut out);
    match fgl::check_axioms(&law, truncation) {
        Ok(f) => {
            out.insert("valid".into(), json!(true));
            out.insert("validated_to".into(), json!(f.validated_to()));
            Ok((true, out))
        }
        Err(Error::AxiomViolation { axiom, degree, residual }) => {
            out.insert("valid".into(), json!(false));
            out.insert("axiom".into(), json!(axiom));
            out.insert("degree".into(), json!(degree));
            out.insert("residual".into(), json!(residual));
            Ok((false, out))
        }
        Err(e) => Err(e.into()),
    }
}

fn certified_law(config: &RunConfig, out: &mut Map<String, Value>) -> std::result::Result<Option<FormalGroupLaw>, Failure> {
    let (ring, truncation, law) = law_inputs(config)?;
    law_header(&ring, truncation, &law, out);
    match fgl::check_axioms(&law, truncation) {
        Ok(f) => Ok(Some(f)),
        Err(Error::AxiomViolation { axiom, degree, residual }) => {
            out.insert("axiom".into(), json!(axiom));
            out.insert("degree".into(), json!(degree));
            out.insert("residual".into(), json!(residual));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn two_series(config: &RunConfig) -> Step {
    let mut out = Map::new();
    let Some(law) = certified_law(config, &mut out)? else {
        return Ok((false, out));
    };
    let s = fgl::n_series(&law, 2);
    out.insert("two_series".into(), json!(s.to_text()));
    out.insert("vanishes".into(), json!(s.is_zero()));
    Ok((true, out))
}

fn solve(config: &RunConfig) -> Step {
    let mut out = Map::new();
    let Some(law) = certified_law(config, &mut out)? else {
        return Ok((false, out));
    };
    match fgl::solve_iso_to_additive(&law) {
        Ok(phi) => {
            let moved = fgl::transport(&law, &phi)?;
            out.insert("phi".into(), json!(phi.to_text()));
            out.insert("transported".into(), json!(moved.to_string()));
            let ok = moved.is_additive();
            out.insert("solved".into(), json!(ok));
            Ok((ok, out))
        }
        Err(obstruction) => {
            out.insert("solved".into(), json!(false));
            out.insert("degree".into(), json!(obstruction.degree));
            out.insert("residual".into(), json!(obstruction.residual));
            out.insert("cocycle".into(), json!(obstruction.cocycle));
            Ok((false, out))
        }
    }
}

fn model_for(config: &RunConfig) -> fglab_core::Result<BordismModel> {
    let m = config.generators;
    bordism::build_model(m, config.truncation.unwrap_or(m as u32 + 1))
}

fn with_model(
    config: &RunConfig,
    body: impl FnOnce(&BordismModel, &mut Map<String, Value>) -> std::result::Result<bool, Failure>,
) -> Step {
    let m = model_for(config)?;
    let mut out = Map::new();
    out.insert("generators".into(), generators_json(m.base()));
    out.insert("truncation".into(), json!(m.truncation()));
    out.insert("window".into(), json!(m.window()));
    let passed = body(&m, &mut out)?;
    Ok((passed, out))
}

fn build(config: &RunConfig) -> Step {
    with_model(config, |m, out| {
        bordism::verify_model(m)?;
        out.insert("mishchenko".into(), json!(m.mishchenko().to_text()));
        out.insert("law".into(), json!(m.law().to_string()));
        out.insert("validated_to".into(), json!(m.law().validated_to()));
        out.insert("two_series".into(), json!(fgl::n_series(m.law(), 2).to_text()));
        out.insert("coaction".into(), json!(bordism::coaction(m).to_string()));
        out.insert("convention".into(), json!(bordism::CONVENTION));
        Ok(true)
    })
}

fn target_ring(config: &RunConfig, m: &BordismModel) -> fglab_core::Result<Ring> {
    let spec = config.ring.as_deref().unwrap_or("t:1");
    parse_ring(Some(spec), config.ring_truncation.unwrap_or(m.truncation()))
}

fn map_from(m: &BordismModel, target: &Ring, text: Option<&str>, flag: &str) -> std::result::Result<RingHom, Failure> {
    let text = text.ok_or_else(|| Failure::Config(format!("a ring map is required ({flag})")))?;
    Ok(RingHom::parse_assignments(m.base(), target, text)?)
}

fn map_json(h: &RingHom) -> Value {
    named_table(h.source(), h.assignments().iter().map(|a| a.to_string()))
}

fn evaluate(config: &RunConfig, m: &BordismModel, out: &mut Map<String, Value>) -> std::result::Result<bool, Failure> {
    let target = target_ring(config, m)?;
    let phi = map_from(m, &target, config.map.as_deref(), "--map")?;
    let point = bordism::ev(m, &phi)?;
    let via_coaction = coaction_series(m, &phi)?;
    let agrees = &via_coaction == point.series.as_series();
    out.insert("target".into(), generators_json(&target));
    out.insert("map".into(), map_json(&phi));
    out.insert("series".into(), json!(point.series.to_text()));
    out.insert("law".into(), json!(point.law.to_string()));
    out.insert("linearizes_law".into(), json!(true));
    out.insert("additive_automorphism".into(), json!(point.additive_automorphism));
    out.insert("coaction_agrees".into(), json!(agrees));
    out.insert("convention".into(), json!(bordism::CONVENTION));
    Ok(agrees)
}

fn compose(config: &RunConfig, m: &BordismModel, out: &mut Map<String, Value>) -> std::result::Result<bool, Failure> {
    let target = target_ring(config, m)?;
    let first = map_from(m, &target, config.map.as_deref(), "--map")?;
    let second = map_from(m, &target, config.second_map.as_deref(), "--then")?;
    let composite = bordism::internal_compose(m, &first, &second)?;
    let lhs = bordism::ev(m, &composite)?.series;
    let rhs = bordism::ev(m, &first)?.series.compose(&bordism::ev(m, &second)?.series)?;
    let agrees = lhs == rhs;
    out.insert("target".into(), generators_json(&target));
    out.insert("first".into(), map_json(&first));
    out.insert("second".into(), map_json(&second));
    out.insert("composite".into(), map_json(&composite));
    out.insert("series".into(), json!(lhs.to_text()));
    out.insert("ev_homomorphism".into(), json!(agrees));
    out.insert("convention".into(), json!(bordism::CONVENTION));
    Ok(agrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_zero_generators() {
        let mut c = RunConfig::new(CommandKind::Derive);
        c.generators = 0;
        let o = run(&c);
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.report["coproduct"], json!([]));
        assert_eq!(o.report["verified"], json!(true));
    }

    #[test]
    fn solve_multiplicative_fails() {
        let mut c = RunConfig::new(CommandKind::Solve);
        c.law = Some("x + y + x*y".into());
        let o = run(&c);
        assert_eq!(o.exit_code, 1);
        assert_eq!(o.report["degree"], json!(2));
        assert_eq!(o.report["residual"], json!("x^2"));
    }

    #[test]
    fn bad_config_is_exit_two() {
        let mut c = RunConfig::new(CommandKind::Derive);
        c.generators = 3;
        c.truncation = Some(4);
        assert_eq!(run(&c).exit_code, 2);
        let mut c = RunConfig::new(CommandKind::Solve);
        c.law = Some("x + + y".into());
        assert_eq!(run(&c).exit_code, 2);
    }

    #[test]
    fn ring_specs() {
        let r = parse_ring(Some("t:1, c:2"), 6).unwrap();
        assert_eq!(r.num_generators(), 2);
        assert!(parse_ring(Some("t"), 6).is_err());
        assert_eq!(parse_ring(None, 3).unwrap().num_generators(), 0);
    }
}
