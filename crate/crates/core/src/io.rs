//! JSON instance documents and JSON/CSV result output.

use std::collections::HashMap;
use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::driver::ResultSet;
use crate::model::{
    LinearRow, ModelError, ObjectiveSense, Problem, RowSense, VarKind, VariableSpec,
    VectorObjective,
};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid problem: {0}")]
    Validation(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SenseTag {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Continuous,
    Integer,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpTag {
    Le,
    Eq,
    Ge,
}

/// A variable bound; infinities travel as the strings `"inf"` and `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound(pub f64);

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            v if v == f64::INFINITY => s.serialize_str("inf"),
            v if v == f64::NEG_INFINITY => s.serialize_str("-inf"),
            v => s.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(Bound(v)),
            Raw::Text(t) => match t.as_str() {
                "inf" => Ok(Bound(f64::INFINITY)),
                "-inf" => Ok(Bound(f64::NEG_INFINITY)),
                other => Err(serde::de::Error::custom(format!(
                    "bound must be a number, \"inf\" or \"-inf\", got \"{other}\""
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDoc {
    pub name: String,
    pub lb: Bound,
    pub ub: Bound,
    pub kind: KindTag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveDoc {
    pub coefficients: IndexMap<String, f64>,
    pub constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub coefficients: IndexMap<String, f64>,
    pub op: OpTag,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format_version: String,
    pub name: String,
    pub sense: SenseTag,
    pub variables: Vec<VariableDoc>,
    pub objectives: Vec<ObjectiveDoc>,
    pub constraints: Vec<ConstraintDoc>,
}

impl InstanceDocument {
    pub fn from_problem(name: impl Into<String>, p: &Problem) -> Self {
        let names: Vec<&str> = p.variables().iter().map(|v| v.name.as_str()).collect();
        let sparse =
            |coefficients: &mut dyn Iterator<Item = (usize, f64)>| -> IndexMap<String, f64> {
                coefficients
                    .filter(|(_, c)| *c != 0.0)
                    .map(|(j, c)| (names[j].to_string(), c))
                    .collect()
            };
        let objective = p.objective();
        InstanceDocument {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            sense: match p.sense() {
                ObjectiveSense::Min => SenseTag::Min,
                ObjectiveSense::Max => SenseTag::Max,
            },
            variables: p
                .variables()
                .iter()
                .map(|v| {
                    let kind = match v.kind {
                        VarKind::Continuous => KindTag::Continuous,
                        _ if v.lower == 0.0 && v.upper == 1.0 => KindTag::Binary,
                        _ => KindTag::Integer,
                    };
                    VariableDoc {
                        name: v.name.clone(),
                        lb: Bound(v.lower),
                        ub: Bound(v.upper),
                        kind,
                    }
                })
                .collect(),
            objectives: objective
                .matrix
                .iter()
                .zip(&objective.offsets)
                .map(|(row, constant)| ObjectiveDoc {
                    coefficients: sparse(&mut row.iter().copied().enumerate()),
                    constant: *constant,
                })
                .collect(),
            constraints: p
                .rows()
                .iter()
                .map(|r| ConstraintDoc {
                    coefficients: sparse(&mut r.coefficients.iter().map(|(j, c)| (*j, *c))),
                    op: match r.sense {
                        RowSense::Le => OpTag::Le,
                        RowSense::Eq => OpTag::Eq,
                        RowSense::Ge => OpTag::Ge,
                    },
                    rhs: r.rhs,
                })
                .collect(),
        }
    }

    pub fn to_problem(&self) -> Result<Problem, InstanceError> {
        if self.format_version != FORMAT_VERSION {
            return Err(InstanceError::Schema(format!(
                "unsupported format_version \"{}\", expected \"{FORMAT_VERSION}\"",
                self.format_version
            )));
        }
        if self.objectives.len() < 2 {
            return Err(InstanceError::Schema(format!(
                "objectives needs at least 2 entries, got {}",
                self.objectives.len()
            )));
        }
        let mut index = HashMap::new();
        for (j, v) in self.variables.iter().enumerate() {
            if index.insert(v.name.as_str(), j).is_some() {
                return Err(InstanceError::Schema(format!(
                    "duplicate variable name `{}`",
                    v.name
                )));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| InstanceError::Schema(format!("unknown variable `{name}`")))
        };
        let variables = self
            .variables
            .iter()
            .map(|v| VariableSpec {
                name: v.name.clone(),
                lower: v.lb.0,
                upper: v.ub.0,
                kind: match v.kind {
                    KindTag::Continuous => VarKind::Continuous,
                    KindTag::Integer => VarKind::Integer,
                    KindTag::Binary => VarKind::Binary,
                },
            })
            .collect();
        let n = self.variables.len();
        let mut matrix = Vec::with_capacity(self.objectives.len());
        for objective in &self.objectives {
            let mut row = vec![0.0; n];
            for (name, c) in &objective.coefficients {
                row[lookup(name)?] += c;
            }
            matrix.push(row);
        }
        let offsets = self.objectives.iter().map(|o| o.constant).collect();
        let mut rows = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            let mut coefficients = Vec::with_capacity(c.coefficients.len());
            for (name, a) in &c.coefficients {
                coefficients.push((lookup(name)?, *a));
            }
            let sense = match c.op {
                OpTag::Le => RowSense::Le,
                OpTag::Eq => RowSense::Eq,
                OpTag::Ge => RowSense::Ge,
            };
            rows.push(LinearRow::new(coefficients, sense, c.rhs));
        }
        let sense = match self.sense {
            SenseTag::Min => ObjectiveSense::Min,
            SenseTag::Max => ObjectiveSense::Max,
        };
        Ok(Problem::new(
            variables,
            rows,
            VectorObjective::new(matrix, offsets, sense),
        )?)
    }
}

/// Parses and validates an instance; variables keep document order.
pub fn parse_instance(text: &str) -> Result<Problem, InstanceError> {
    parse_document(text)?.to_problem()
}

pub fn parse_document(text: &str) -> Result<InstanceDocument, InstanceError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))?;
    serde_json::from_value(value).map_err(|e| InstanceError::Schema(e.to_string()))
}

pub fn serialize_instance(name: &str, p: &Problem) -> String {
    let mut text = serde_json::to_string_pretty(&InstanceDocument::from_problem(name, p))
        .expect("instance documents always serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Formats `v` like C's `%.17g`: 17 significant digits, trailing zeros
/// trimmed, exponent form outside `[1e-4, 1e17)`. Negative zero prints as 0.
pub fn format_real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-4..17).contains(&exponent) {
        let decimals = (16 - exponent).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa.to_string()), exponent.abs())
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Renders a result set. Point order is the result set's order and `x`
/// entries follow the problem's variable order.
pub fn write_results(
    result: &ResultSet,
    problem: &Problem,
    format: OutputFormat,
    include_timing: bool,
) -> String {
    match format {
        OutputFormat::Json => write_json(result, problem, include_timing),
        OutputFormat::Csv => write_csv(result, problem),
    }
}

fn write_json(result: &ResultSet, problem: &Problem, include_timing: bool) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"status\": {},", json_string(result.status.as_str()));
    let _ = write!(
        s,
        "  \"stats\": {{\"subproblem_count\": {}",
        result.stats.subproblem_count
    );
    if include_timing {
        let _ = write!(
            s,
            ", \"wall_time\": {}",
            format_real(result.stats.wall_time.as_secs_f64())
        );
    }
    s.push_str("},\n");
    if result.points.is_empty() {
        s.push_str("  \"points\": []\n}\n");
        return s;
    }
    s.push_str("  \"points\": [\n");
    let count = result.points.len();
    for (i, p) in result.points.points().iter().enumerate() {
        let x: Vec<String> = problem
            .variables()
            .iter()
            .zip(&p.x)
            .map(|(v, value)| format!("{}: {}", json_string(&v.name), format_real(*value)))
            .collect();
        let y: Vec<String> = p.y.iter().map(|v| format_real(*v)).collect();
        let comma = if i + 1 < count { "," } else { "" };
        let _ = writeln!(
            s,
            "    {{\"x\": {{{}}}, \"y\": [{}]}}{comma}",
            x.join(", "),
            y.join(", ")
        );
    }
    s.push_str("  ]\n}\n");
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_csv(result: &ResultSet, problem: &Problem) -> String {
    let mut header: Vec<String> = (1..=problem.num_objectives())
        .map(|k| format!("y{k}"))
        .collect();
    header.extend(
        problem
            .variables()
            .iter()
            .map(|v| csv_field(&format!("x_{}", v.name))),
    );
    let mut s = header.join(",");
    s.push('\n');
    for p in result.points.points() {
        let row: Vec<String> = p.y.iter().chain(&p.x).map(|v| format_real(*v)).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::AlgorithmConfig;
    use crate::backend::{BundledSolver, SolveStatus};
    use crate::dominance::Frontier;
    use crate::driver::{MetaSolver, SolveStats};
    use crate::oracle::fixtures;
    use proptest::prelude::*;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(9.0), "9");
        assert_eq!(format_real(-0.0), "0");
        assert_eq!(format_real(0.1), "0.10000000000000001");
        assert_eq!(format_real(-2.5), "-2.5");
        assert_eq!(format_real(1e20), "1e+20");
        assert_eq!(format_real(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(format_real(123456.0), "123456");
    }

    proptest! {
        #[test]
        fn formatted_reals_round_trip(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
            let back: f64 = format_real(v).parse().unwrap();
            prop_assert!(back == v);
        }
    }

    #[test]
    fn fixture_round_trip() {
        let k1 = fixtures::k1();
        let text = serialize_instance("k1", &k1);
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(parsed, k1);
        assert_eq!(parsed.num_variables(), 3);
        assert_eq!(parsed.sense(), ObjectiveSense::Max);
        let l1 = fixtures::l1();
        assert_eq!(parse_instance(&serialize_instance("l1", &l1)).unwrap(), l1);
    }

    fn doc(objectives: &str, variables: &str) -> String {
        format!(
            r#"{{"format_version": "1", "name": "t", "sense": "min",
                "variables": [{variables}],
                "objectives": [{objectives}],
                "constraints": []}}"#
        )
    }

    const VAR_A: &str = r#"{"name": "a", "lb": 0, "ub": "inf", "kind": "integer"}"#;
    const OBJ_A: &str = r#"{"coefficients": {"a": 1}, "constant": 0}"#;

    #[test]
    fn error_classes() {
        assert!(matches!(parse_instance("{"), Err(InstanceError::Parse(_))));
        let one_objective = doc(OBJ_A, VAR_A);
        assert!(matches!(
            parse_instance(&one_objective),
            Err(InstanceError::Schema(_))
        ));
        let duplicate = doc(&format!("{OBJ_A}, {OBJ_A}"), &format!("{VAR_A}, {VAR_A}"));
        assert!(matches!(
            parse_instance(&duplicate),
            Err(InstanceError::Schema(_))
        ));
        let unknown_var = doc(
            r#"{"coefficients": {"b": 1}, "constant": 0}, {"coefficients": {}, "constant": 0}"#,
            VAR_A,
        );
        assert!(matches!(
            parse_instance(&unknown_var),
            Err(InstanceError::Schema(_))
        ));
        let extra_field = doc(
            &format!("{OBJ_A}, {OBJ_A}"),
            r#"{"name": "a", "lb": 0, "ub": 1, "kind": "integer", "color": 1}"#,
        );
        assert!(matches!(
            parse_instance(&extra_field),
            Err(InstanceError::Schema(_))
        ));
        let bad_bounds = doc(
            &format!("{OBJ_A}, {OBJ_A}"),
            r#"{"name": "a", "lb": 2, "ub": 1, "kind": "integer"}"#,
        );
        assert!(matches!(
            parse_instance(&bad_bounds),
            Err(InstanceError::Validation(_))
        ));
        let good = doc(&format!("{OBJ_A}, {OBJ_A}"), VAR_A);
        assert_eq!(
            parse_instance(&good).unwrap().variables()[0].upper,
            f64::INFINITY
        );
    }

    #[test]
    fn json_and_csv_output() {
        let k1 = fixtures::k1();
        let r = MetaSolver::with_builtin()
            .optimize(
                &k1,
                "epsilon-constraint",
                &AlgorithmConfig::default(),
                &mut BundledSolver,
            )
            .unwrap();
        let json = write_results(&r, &k1, OutputFormat::Json, false);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["status"], "OPTIMAL");
        assert_eq!(value["points"].as_array().unwrap().len(), 2);
        assert_eq!(value["points"][1]["y"], serde_json::json!([9, 7]));
        assert_eq!(value["points"][1]["x"]["x2"], 1);
        assert!(value["stats"].get("wall_time").is_none());
        let csv = write_results(&r, &k1, OutputFormat::Csv, false);
        assert_eq!(csv, "y1,y2,x_x1,x_x2,x_x3\n8,8,1,0,1\n9,7,1,1,0\n");
    }

    #[test]
    fn empty_result() {
        let r = ResultSet {
            status: SolveStatus::Infeasible,
            points: Frontier::new(),
            stats: SolveStats::default(),
        };
        let json = write_results(&r, &fixtures::infeasible(), OutputFormat::Json, true);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["status"], "INFEASIBLE");
        assert_eq!(value["points"], serde_json::json!([]));
        assert_eq!(value["stats"]["wall_time"], 0);
        assert_eq!(
            write_results(&r, &fixtures::infeasible(), OutputFormat::Csv, false)
                .lines()
                .count(),
            1
        );
    }
}
