//! JSON documents: nets, matrices, static graphs, trajectories and reports.
//!
//! Numbers may be given as JSON numbers or strings (`"1/3"`, `"0.5"`,
//! `"inf"`, `"-inf"`); they are always written back as strings so that no
//! precision is lost. Indices in reports are 1-based.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kleene::Circuit;
use crate::matrix::MaxPlusMatrix;
use crate::periodic::{PeriodicOutcome, PeriodicVerdict, StaticGraph};
use crate::pteg::{
    Certificate, ConsistencyReport, Interval, Place, Pteg, StrictOutcome, StrictVerdict,
    Trajectory, Violation, ViolationKind,
};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::scalar::{ExtendedReal, PosInf};
use crate::ultimate::{UltimateVerdict, UltimatelyPeriodicSpec};

/// A JSON scalar: a number, or a string holding a rational or an infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar(pub ExtendedReal);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match Value::deserialize(d)? {
            Value::Number(n) => parse_rational(&n.to_string()).map(ExtendedReal::Finite),
            Value::String(s) if s.trim() == "." => Err(Error::InvalidNumber(s)),
            Value::String(s) => s.parse(),
            other => Err(Error::InvalidNumber(other.to_string())),
        };
        parsed.map(Scalar).map_err(D::Error::custom)
    }
}

impl Scalar {
    fn finite(&self, what: &str) -> Result<Rational> {
        self.0
            .as_finite()
            .cloned()
            .ok_or_else(|| Error::Schema(format!("{what} must be finite, got {}", self.0)))
    }
}

fn scalar(v: &Rational) -> Scalar {
    Scalar(ExtendedReal::Finite(v.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceDocument {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub tokens: u32,
    pub lb: Scalar,
    #[serde(default = "unbounded")]
    pub ub: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

fn unbounded() -> Scalar {
    Scalar(PosInf)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDocument {
    pub transitions: Vec<String>,
    pub places: Vec<PlaceDocument>,
}

impl NetDocument {
    pub fn into_net(self) -> Result<Pteg> {
        let index: HashMap<&str, usize> = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownTransition(label.to_string()))
        };
        let mut places = Vec::with_capacity(self.places.len());
        for p in &self.places {
            let lower = p.lb.finite("lb")?;
            let upper = match &p.ub.0 {
                PosInf => None,
                ExtendedReal::Finite(v) => Some(v.clone()),
                ExtendedReal::NegInf => return Err(Error::Schema("ub must not be -inf".into())),
            };
            places.push(Place {
                from: lookup(&p.from)?,
                to: lookup(&p.to)?,
                tokens: p.tokens,
                interval: Interval::new(lower, upper)?,
                name: p.name.clone(),
            });
        }
        Pteg::new(self.transitions, places)
    }

    pub fn from_net(net: &Pteg) -> Self {
        let label = |i: usize| net.transitions()[i].clone();
        NetDocument {
            transitions: net.transitions().to_vec(),
            places: net
                .places()
                .iter()
                .map(|p| PlaceDocument {
                    from: label(p.from),
                    to: label(p.to),
                    tokens: p.tokens,
                    lb: scalar(p.interval.lower()),
                    ub: p.interval.upper().map_or(Scalar(PosInf), scalar),
                    name: p.name.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<Scalar>>,
}

impl MatrixDocument {
    pub fn into_matrix(self) -> Result<MaxPlusMatrix> {
        if self.entries.len() != self.n {
            return Err(Error::Schema(format!(
                "expected {} rows, found {}",
                self.n,
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.0).collect())
            .collect();
        MaxPlusMatrix::from_rows(rows)
    }

    pub fn from_matrix(m: &MaxPlusMatrix) -> Self {
        MatrixDocument {
            n: m.n(),
            entries: m
                .rows()
                .map(|row| row.iter().cloned().map(Scalar).collect())
                .collect(),
        }
    }
}

fn rows_of(n: usize, entries: Vec<Vec<Scalar>>) -> Result<MaxPlusMatrix> {
    MatrixDocument { n, entries }.into_matrix()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticGraphDocument {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: Vec<Vec<Scalar>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<Scalar>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<Scalar>>,
}

impl StaticGraphDocument {
    pub fn into_graph(self) -> Result<StaticGraph> {
        StaticGraph::new(
            rows_of(self.n, self.l)?,
            rows_of(self.n, self.c)?,
            rows_of(self.n, self.r)?,
        )
    }

    pub fn from_graph(g: &StaticGraph) -> Self {
        let rows = |m: &MaxPlusMatrix| MatrixDocument::from_matrix(m).entries;
        StaticGraphDocument {
            n: g.n(),
            l: rows(g.l()),
            c: rows(g.c()),
            r: rows(g.r()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticPartDocument {
    #[serde(rename = "L")]
    pub l: Vec<Vec<Scalar>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<Scalar>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<Scalar>>,
}

/// The negative part and transient layer of an ultimately periodic graph;
/// the positive part is supplied separately as a [`StaticGraphDocument`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UltimateDocument {
    pub n: usize,
    pub neg: StaticPartDocument,
    pub transient: Vec<Vec<Scalar>>,
}

impl UltimateDocument {
    pub fn into_spec(self, pos: StaticGraph) -> Result<UltimatelyPeriodicSpec> {
        let neg = StaticGraphDocument {
            n: self.n,
            l: self.neg.l,
            c: self.neg.c,
            r: self.neg.r,
        }
        .into_graph()?;
        UltimatelyPeriodicSpec::new(neg, rows_of(self.n, self.transient)?, pos)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<Scalar>,
    pub x: Vec<Vec<Scalar>>,
}

impl TrajectoryDocument {
    pub fn into_trajectory(self) -> Result<Trajectory> {
        let t0 = self.t0.map(|s| s.finite("t0")).transpose()?;
        let x = self
            .x
            .iter()
            .map(|row| row.iter().map(|s| s.finite("firing time")).collect())
            .collect::<Result<_>>()?;
        Ok(Trajectory { t0, x })
    }

    pub fn from_trajectory(t: &Trajectory) -> Self {
        TrajectoryDocument {
            t0: t.t0.as_ref().map(scalar),
            x: t.x.iter().map(|row| row.iter().map(scalar).collect()).collect(),
        }
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

pub fn parse_net(text: &str) -> Result<Pteg> {
    from_json::<NetDocument>(text)?.into_net()
}

pub fn parse_matrix(text: &str) -> Result<MaxPlusMatrix> {
    from_json::<MatrixDocument>(text)?.into_matrix()
}

pub fn parse_static_graph(text: &str) -> Result<StaticGraph> {
    from_json::<StaticGraphDocument>(text)?.into_graph()
}

pub fn parse_ultimate(pos_text: &str, rest_text: &str) -> Result<UltimatelyPeriodicSpec> {
    let pos = parse_static_graph(pos_text)?;
    from_json::<UltimateDocument>(rest_text)?.into_spec(pos)
}

pub fn parse_trajectory(text: &str) -> Result<Trajectory> {
    from_json::<TrajectoryDocument>(text)?.into_trajectory()
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn net_to_json(net: &Pteg) -> String {
    to_json_string(&NetDocument::from_net(net))
}

pub fn matrix_to_json(m: &MaxPlusMatrix) -> String {
    to_json_string(&MatrixDocument::from_matrix(m))
}

pub fn trajectory_to_json(t: &Trajectory) -> String {
    to_json_string(&TrajectoryDocument::from_trajectory(t))
}

// Report fragments. `serde_json::Map` keeps keys sorted, which makes the
// output byte-stable.

pub fn matrix_value(m: &MaxPlusMatrix) -> Value {
    json!(MatrixDocument::from_matrix(m).entries)
}

pub fn circuit_value(c: &Circuit, labels: Option<&[String]>) -> Value {
    let mut v = json!({
        "nodes": c.nodes.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "weight": format_rational(&c.weight),
    });
    if let Some(labels) = labels {
        v["transitions"] = json!(c.nodes.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>());
    }
    v
}

fn entries_value(entries: &[(usize, usize)]) -> Value {
    json!(entries.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>())
}

pub fn periodic_value(v: &PeriodicVerdict, labels: Option<&[String]>) -> Value {
    let mut out = match &v.outcome {
        PeriodicOutcome::NoInfPath {
            pi_limit,
            fixpoint_at,
        } => json!({
            "kind": "no-inf-path",
            "pi_limit": matrix_value(pi_limit),
            "fixpoint_at": fixpoint_at,
        }),
        PeriodicOutcome::PositiveCircuit {
            shift_bound,
            circuit,
        } => json!({
            "kind": "positive-circuit",
            "shift_bound": shift_bound,
            "circuit": circuit_value(circuit, labels),
        }),
        PeriodicOutcome::Divergence {
            entries,
            previous,
            next,
        } => json!({
            "kind": "divergence",
            "entries": entries_value(entries),
            "previous": matrix_value(previous),
            "next": matrix_value(next),
        }),
    };
    out["evaluations"] = json!(v.evaluations);
    out
}

pub fn strict_value(v: &StrictVerdict, labels: Option<&[String]>) -> Value {
    let mut out = match &v.outcome {
        StrictOutcome::Consistent {
            pi_limit,
            fixpoint_at,
            combined,
        } => json!({
            "kind": "consistent",
            "pi_limit": matrix_value(pi_limit),
            "fixpoint_at": fixpoint_at,
            "combined": matrix_value(combined),
        }),
        StrictOutcome::CenterCircuit { circuit } => json!({
            "kind": "center-circuit",
            "circuit": circuit_value(circuit, labels),
        }),
        StrictOutcome::PositiveCircuit { step, circuit } => json!({
            "kind": "positive-circuit",
            "step": step,
            "circuit": circuit_value(circuit, labels),
        }),
        StrictOutcome::TransientCircuit {
            fixpoint_at,
            combined,
            circuit,
        } => json!({
            "kind": "transient-circuit",
            "fixpoint_at": fixpoint_at,
            "combined": matrix_value(combined),
            "circuit": circuit_value(circuit, labels),
        }),
        StrictOutcome::NoFixpoint {
            entries,
            previous,
            next,
        } => json!({
            "kind": "no-fixpoint",
            "entries": entries_value(entries),
            "previous": matrix_value(previous),
            "next": matrix_value(next),
        }),
    };
    out["evaluations"] = json!(v.evaluations);
    out
}

pub fn ultimate_value(v: &UltimateVerdict) -> Value {
    match v {
        UltimateVerdict::NoInfPath { neg, pos, combined } => json!({
            "kind": "no-inf-path",
            "neg": periodic_value(neg, None),
            "pos": periodic_value(pos, None),
            "combined": matrix_value(combined),
        }),
        UltimateVerdict::NegPartDiverges { neg } => json!({
            "kind": "neg-part-diverges",
            "neg": periodic_value(neg, None),
        }),
        UltimateVerdict::PosPartDiverges { pos } => json!({
            "kind": "pos-part-diverges",
            "pos": periodic_value(pos, None),
        }),
        UltimateVerdict::TransientPositiveCircuit {
            neg,
            pos,
            combined,
            circuit,
        } => json!({
            "kind": "transient-positive-circuit",
            "neg": periodic_value(neg, None),
            "pos": periodic_value(pos, None),
            "combined": matrix_value(combined),
            "circuit": circuit_value(circuit, None),
        }),
    }
}

/// The certificate of a consistency report. Circuit nodes are also named by
/// transition label; labels of transitions added by normalization come from
/// `normalized`.
pub fn consistency_value(report: &ConsistencyReport, normalized: &Pteg) -> Value {
    let labels = Some(normalized.transitions());
    match &report.certificate {
        Certificate::Loose(v) => periodic_value(v, labels),
        Certificate::Strict(v) => strict_value(v, labels),
    }
}

/// The JSON report of a consistency check of `net`.
pub fn check_report(net: &Pteg, report: &ConsistencyReport) -> Value {
    let normalized = net.normalize_marking();
    json!({
        "command": "check",
        "semantics": report.semantics.to_string(),
        "verdict": if report.consistent { "consistent" } else { "inconsistent" },
        "transitions": net.n(),
        "added_transitions": normalized.n() - net.n(),
        "certificate": consistency_value(report, &normalized),
    })
}

pub fn trajectory_value(t: &Trajectory) -> Value {
    json!(TrajectoryDocument::from_trajectory(t))
}

pub fn violation_value(v: &Violation) -> Value {
    let kind = match v.kind {
        ViolationKind::LowerBound => "lower-bound",
        ViolationKind::UpperBound => "upper-bound",
        ViolationKind::InitialLowerBound => "initial-lower-bound",
        ViolationKind::InitialUpperBound => "initial-upper-bound",
        ViolationKind::BeforeStart => "before-start",
        ViolationKind::Decreasing => "decreasing",
    };
    json!({
        "kind": kind,
        "transition": v.transition + 1,
        "event": v.event,
        "place": v.place.map(|p| p + 1),
        "excess": format_rational(&v.excess),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    const HEAT: &str = r#"{
        "transitions": ["t1", "t2", "t3"],
        "places": [
            {"from": "t1", "to": "t2", "tokens": 1, "lb": 2, "ub": 3},
            {"from": "t2", "to": "t1", "tokens": 0, "lb": 0, "ub": "inf"},
            {"from": "t2", "to": "t3", "tokens": 0, "lb": "0.5", "ub": "inf"},
            {"from": "t3", "to": "t2", "tokens": 1, "lb": 0.5, "ub": "inf"},
            {"from": "t3", "to": "t3", "tokens": 1, "lb": 0, "ub": 4},
            {"from": "t1", "to": "t3", "tokens": 1, "lb": 6, "ub": "inf"}
        ]
    }"#;

    #[test]
    fn parses_heat_net() {
        let net = parse_net(HEAT).unwrap();
        assert_eq!(net.n(), 3);
        assert_eq!(net.places().len(), 6);
        let p = &net.places()[2];
        assert_eq!(p.interval, Interval::at_least(ratio(1, 2)).unwrap());
        assert_eq!(net.places()[3].interval.lower(), &ratio(1, 2));
    }

    #[test]
    fn net_round_trip() {
        let net = parse_net(HEAT).unwrap();
        assert_eq!(parse_net(&net_to_json(&net)).unwrap(), net);
    }

    #[test]
    fn trivial_net() {
        let net = parse_net(r#"{"transitions":["t1"],"places":[]}"#).unwrap();
        assert_eq!(net.n(), 1);
        assert!(net.places().is_empty());
    }

    #[test]
    fn net_errors() {
        let unknown = r#"{"transitions":["a"],"places":[{"from":"a","to":"b","lb":0}]}"#;
        assert_eq!(parse_net(unknown), Err(Error::UnknownTransition("b".into())));
        let reversed = r#"{"transitions":["a"],"places":[{"from":"a","to":"a","tokens":1,"lb":1,"ub":0.5}]}"#;
        assert!(matches!(parse_net(reversed), Err(Error::InvalidInterval { .. })));
        let negative = r#"{"transitions":["a"],"places":[{"from":"a","to":"a","lb":-1}]}"#;
        assert!(matches!(parse_net(negative), Err(Error::InvalidInterval { .. })));
        let inf_lb = r#"{"transitions":["a"],"places":[{"from":"a","to":"a","lb":"inf"}]}"#;
        assert!(matches!(parse_net(inf_lb), Err(Error::Schema(_))));
        assert!(matches!(parse_net("{"), Err(Error::Schema(_))));
        let extra = r#"{"transitions":["a"],"places":[],"colour":1}"#;
        assert!(matches!(parse_net(extra), Err(Error::Schema(_))));
    }

    #[test]
    fn exact_decimal_numbers() {
        let m = parse_matrix(r#"{"n":1,"entries":[[0.1]]}"#).unwrap();
        assert_eq!(*m.get(0, 0), ExtendedReal::Finite(ratio(1, 10)));
        let big = parse_matrix(r#"{"n":1,"entries":[[123456789012345678901234567890.5]]}"#).unwrap();
        assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890.5");
    }

    #[test]
    fn matrix_round_trip() {
        let m = MaxPlusMatrix::from_str_rows(&[&["-inf", "1/3"], &["inf", "-2.25"]]).unwrap();
        let text = matrix_to_json(&m);
        assert!(text.contains("\"1/3\""));
        assert!(text.contains("\"-2.25\""));
        assert_eq!(parse_matrix(&text).unwrap(), m);
        assert!(parse_matrix(r#"{"n":2,"entries":[[0,0]]}"#).is_err());
    }

    #[test]
    fn trajectory_round_trip() {
        let t = Trajectory {
            t0: Some(ratio(-1, 3)),
            x: vec![vec![ratio(1, 2), ratio(7, 1)]],
        };
        assert_eq!(parse_trajectory(&trajectory_to_json(&t)).unwrap(), t);
        assert!(parse_trajectory(r#"{"x":[["inf"]]}"#).is_err());
    }

    #[test]
    fn static_graph_document() {
        let g = parse_static_graph(
            r#"{"n":2,"L":[["-1","-inf"],["-inf",-3]],"C":[["-inf","-inf"],[0,"-inf"]],"R":[[1,"-inf"],["-inf",2]]}"#,
        )
        .unwrap();
        assert_eq!(*g.l().get(1, 1), ExtendedReal::int(-3));
        let doc = StaticGraphDocument::from_graph(&g);
        assert_eq!(doc.into_graph().unwrap(), g);
    }
}
