//! Job configuration documents.
//!
//! ```json
//! {"group": [{"kind": "SU", "size": 2}],
//!  "pi": {"presentation": [0, 0, 2, 3]},
//!  "options": {"max_states": 10000000, "sections": ["orbits", "cohomology"],
//!              "format": "json", "threads": "auto"}}
//! ```
//!
//! Unknown top-level keys are ignored so that a report, which echoes `group`
//! and `pi`, can be fed back in as a configuration.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::group::{ClassicalFactor, FactorKind, GroupSpec};
use crate::torsion::PiSpec;

pub const DEFAULT_MAX_STATES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Section {
    Orbits,
    Cohomology,
    Ktheory,
    Pi1,
    Splitting,
}

impl Section {
    pub const ALL: [Section; 5] = [
        Section::Orbits,
        Section::Cohomology,
        Section::Ktheory,
        Section::Pi1,
        Section::Splitting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Orbits => "orbits",
            Section::Cohomology => "cohomology",
            Section::Ktheory => "ktheory",
            Section::Pi1 => "pi1",
            Section::Splitting => "splitting",
        }
    }
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|sec| sec.name() == s)
            .ok_or_else(|| Error::validation("sections", format!("unknown section `{s}`")))
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma-separated section list into canonical order without duplicates.
pub fn parse_sections(s: &str) -> Result<Vec<Section>> {
    let mut out = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(Section::from_str)
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::validation("format", format!("expected \"json\" or \"text\", got `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Threads {
    #[default]
    Auto,
    Count(usize),
}

impl FromStr for Threads {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Threads::Count(n)),
            _ => Err(Error::validation("threads", format!("expected a positive integer or \"auto\", got `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_states: u64,
    pub sections: Vec<Section>,
    pub format: Format,
    pub threads: Threads,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_states: DEFAULT_MAX_STATES,
            sections: Section::ALL.to_vec(),
            format: Format::Json,
            threads: Threads::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub group: GroupSpec,
    pub pi: PiSpec,
    pub options: Options,
}

impl JobConfig {
    pub fn new(group: GroupSpec, pi: PiSpec) -> Self {
        Self { group, pi, options: Options::default() }
    }

    pub fn wants(&self, section: Section) -> bool {
        self.options.sections.contains(&section)
    }
}

pub fn parse_config(bytes: &[u8]) -> Result<JobConfig> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = root
        .as_object()
        .ok_or_else(|| Error::validation("$", "configuration must be a JSON object"))?;

    let group = parse_group(root.get("group").ok_or_else(|| Error::validation("group", "missing"))?)?;
    let pi = parse_pi(root.get("pi").ok_or_else(|| Error::validation("pi", "missing"))?)?;
    let options = match root.get("options") {
        None | Some(Value::Null) => Options::default(),
        Some(v) => parse_options(v)?,
    };
    Ok(JobConfig { group, pi, options })
}

fn object<'a>(v: &'a Value, field: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::validation(field, "expected an object"))?;
    if let Some(extra) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::validation(format!("{field}.{extra}"), "unknown key"));
    }
    Ok(obj)
}

fn uint(v: &Value, field: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::validation(field, format!("expected a nonnegative integer, got {v}")))
}

fn parse_group(v: &Value) -> Result<GroupSpec> {
    let entries = v
        .as_array()
        .ok_or_else(|| Error::validation("group", "expected an array of factors"))?;
    if entries.is_empty() {
        return Err(Error::validation("group", "at least one factor is required"));
    }
    let factors = entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let field = format!("group[{i}]");
            let obj = object(e, &field, &["kind", "size"])?;
            let kind_field = format!("{field}.kind");
            let kind = obj
                .get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::validation(&kind_field, "missing or not a string"))?;
            let kind = FactorKind::from_name(kind)
                .ok_or_else(|| Error::validation(&kind_field, format!("`{kind}` is not one of SU, U, Sp")))?;
            let size_field = format!("{field}.size");
            let size = uint(obj.get("size").unwrap_or(&Value::Null), &size_field)?;
            ClassicalFactor::new(kind, size as usize)
                .map_err(|_| Error::validation(&size_field, "size must be at least 1"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::new(factors))
}

fn parse_pi(v: &Value) -> Result<PiSpec> {
    let obj = object(v, "pi", &["presentation"])?;
    let entries = obj
        .get("presentation")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::validation("pi.presentation", "missing or not an array"))?;
    let presentation = entries
        .iter()
        .enumerate()
        .map(|(i, q)| uint(q, &format!("pi.presentation[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(PiSpec::new(presentation))
}

fn parse_options(v: &Value) -> Result<Options> {
    let obj = object(v, "options", &["max_states", "sections", "format", "threads"])?;
    let mut options = Options::default();
    if let Some(m) = obj.get("max_states") {
        options.max_states = uint(m, "options.max_states")?;
        if options.max_states == 0 {
            return Err(Error::validation("options.max_states", "must be positive"));
        }
    }
    if let Some(s) = obj.get("sections") {
        let list = s
            .as_array()
            .ok_or_else(|| Error::validation("options.sections", "expected an array of section names"))?;
        let mut sections = list
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| Error::validation("options.sections", "section names must be strings"))
                    .and_then(|name| {
                        name.parse()
                            .map_err(|_| Error::validation("options.sections", format!("unknown section `{name}`")))
                    })
            })
            .collect::<Result<Vec<Section>>>()?;
        sections.sort();
        sections.dedup();
        options.sections = sections;
    }
    if let Some(f) = obj.get("format") {
        let name = f
            .as_str()
            .ok_or_else(|| Error::validation("options.format", "expected a string"))?;
        options.format = name
            .parse()
            .map_err(|_| Error::validation("options.format", format!("expected \"json\" or \"text\", got `{name}`")))?;
    }
    if let Some(t) = obj.get("threads") {
        options.threads = match t {
            Value::String(s) if s == "auto" => Threads::Auto,
            Value::Number(_) => match t.as_u64() {
                Some(n) if n > 0 => Threads::Count(n as usize),
                _ => return Err(Error::validation("options.threads", "must be a positive integer")),
            },
            _ => return Err(Error::validation("options.threads", "expected a positive integer or \"auto\"")),
        };
    }
    Ok(options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_golden_input() {
        let cfg = parse_config(br#"{"group":[{"kind":"SU","size":2}],"pi":{"presentation":[0,0,2,3]}}"#).unwrap();
        assert_eq!(cfg.group.to_string(), "SU(2)");
        assert_eq!(cfg.pi.free_rank(), 2);
        assert_eq!(cfg.pi.torsion(), vec![2, 3]);
        assert_eq!(cfg.options, Options::default());
    }

    #[test]
    fn empty_group_is_rejected() {
        let err = parse_config(br#"{"group":[],"pi":{"presentation":[]}}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "group"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let err = parse_config(br#"{"group":[{"kind":"SO","size":3}],"pi":{"presentation":[]}}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "group[0].kind"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_config(b"{\n  \"group\": [,]\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 13)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn options_are_validated() {
        let cfg = parse_config(
            br#"{"group":[{"kind":"Sp","size":2}],"pi":{"presentation":[4]},
                "options":{"max_states":500,"sections":["splitting","orbits","orbits"],"format":"text","threads":3}}"#,
        )
        .unwrap();
        assert_eq!(cfg.options.max_states, 500);
        assert_eq!(cfg.options.sections, vec![Section::Orbits, Section::Splitting]);
        assert_eq!(cfg.options.format, Format::Text);
        assert_eq!(cfg.options.threads, Threads::Count(3));

        for bad in [
            r#"{"sections":["homotopy"]}"#,
            r#"{"threads":0}"#,
            r#"{"threads":"many"}"#,
            r#"{"format":"xml"}"#,
            r#"{"max_states":-1}"#,
            r#"{"colour":"red"}"#,
        ] {
            let doc = format!(r#"{{"group":[{{"kind":"U","size":1}}],"pi":{{"presentation":[]}},"options":{bad}}}"#);
            assert!(matches!(parse_config(doc.as_bytes()), Err(Error::Validation { .. })), "{bad}");
        }
    }

    #[test]
    fn presentation_entries_must_be_nonnegative_integers() {
        let err = parse_config(br#"{"group":[{"kind":"U","size":1}],"pi":{"presentation":[2,-1]}}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "pi.presentation[1]"));
    }

    #[test]
    fn section_lists() {
        assert_eq!(parse_sections("pi1, orbits").unwrap(), vec![Section::Orbits, Section::Pi1]);
        assert!(parse_sections("orbits,nope").is_err());
    }
}
