//! Versioned certificate documents.
//!
//! Derivations are serialized as nested arrays of element words so a
//! document can be replayed without the process that produced it:
//! `["gen", word]`, `["conj", conjugator, word]`, `["mul", a, b]`,
//! `["cnd", a, b]` (the last producing `x^-1 y x^2` from its children).

use ordercert_core::closures::Derivation;
use ordercert_core::groups::Group;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::spec::ConeSpecJson;
use crate::text::{parse_element, render_element};
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub property: String,
    pub group: String,
    pub inputs: Inputs,
    pub verdict: String,
    pub evidence: Evidence,
    pub budgets: Budgets,
}

impl CertificateDocument {
    pub fn exit_code(&self) -> i32 {
        verdict_exit_code(&self.verdict)
    }
}

pub fn verdict_exit_code(verdict: &str) -> i32 {
    match verdict {
        "certified" => 0,
        "obstructed" | "impossible" => 1,
        "inconclusive" => 2,
        _ => 3,
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugator_radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSpecJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Budgets {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    SignSearch {
        status: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        signs: Option<Vec<i8>>,
        witnesses: Vec<SignWitness>,
    },
    UppCondition {
        holds: bool,
        pairs_checked: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        counterexample: Option<UppCounterexample>,
    },
    ExtremePoints {
        set_size: usize,
        points: Vec<String>,
    },
    Preorder {
        ball_size: usize,
        nodes: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        assignment: Option<Vec<AssignmentEntry>>,
    },
    Orbit {
        cones: Vec<ConeSpecJson>,
        witnesses: Vec<OrbitWitnessJson>,
    },
    Recurrence {
        found: Vec<i64>,
        exhausted_at: i64,
        closed_form_applicable: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        closed_form_bound: Option<i64>,
    },
    ConeCheck {
        axioms_passed: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        invariance_passed: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        violation: Option<String>,
    },
    Diagnostic {
        message: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignWitness {
    pub signs: Vec<i8>,
    pub derivation: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UppCounterexample {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentEntry {
    pub triple: [String; 3],
    pub value: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitWitnessJson {
    pub first: usize,
    pub second: usize,
    pub element: String,
    pub in_first: bool,
}

pub fn derivation_to_json(derivation: &Derivation) -> Value {
    match derivation {
        Derivation::Generator(e) => json!(["gen", render_element(e)]),
        Derivation::ConjugatedGenerator { conjugator, base } => {
            json!(["conj", render_element(conjugator), render_element(base)])
        }
        Derivation::Product(l, r) => {
            json!(["mul", derivation_to_json(l), derivation_to_json(r)])
        }
        Derivation::ConradianStep(l, r) => {
            json!(["cnd", derivation_to_json(l), derivation_to_json(r)])
        }
    }
}

pub fn derivation_from_json(value: &Value, group: &Group) -> Result<Derivation, CliError> {
    let items = value.as_array().ok_or_else(|| CliError::MalformedDerivation {
        detail: "node is not an array".to_owned(),
    })?;
    let tag = items
        .first()
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::MalformedDerivation {
            detail: "node is missing its tag".to_owned(),
        })?;
    let text_arg = |index: usize| -> Result<&str, CliError> {
        items
            .get(index)
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::MalformedDerivation {
                detail: format!("'{tag}' node needs a word at slot {index}"),
            })
    };
    let node_arg = |index: usize| -> Result<&Value, CliError> {
        items.get(index).ok_or_else(|| CliError::MalformedDerivation {
            detail: format!("'{tag}' node needs a child at slot {index}"),
        })
    };
    match tag {
        "gen" => Ok(Derivation::Generator(parse_element(text_arg(1)?, group)?)),
        "conj" => Ok(Derivation::ConjugatedGenerator {
            conjugator: parse_element(text_arg(1)?, group)?,
            base: parse_element(text_arg(2)?, group)?,
        }),
        "mul" => Ok(Derivation::Product(
            Box::new(derivation_from_json(node_arg(1)?, group)?),
            Box::new(derivation_from_json(node_arg(2)?, group)?),
        )),
        "cnd" => Ok(Derivation::ConradianStep(
            Box::new(derivation_from_json(node_arg(1)?, group)?),
            Box::new(derivation_from_json(node_arg(2)?, group)?),
        )),
        other => Err(CliError::MalformedDerivation {
            detail: format!("unknown node tag '{other}'"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations_roundtrip_through_json() {
        let klein = Group::klein_bottle();
        let a = klein.generator(0);
        let b = klein.generator(1);
        let derivation = Derivation::Product(
            Box::new(Derivation::Generator(a.clone())),
            Box::new(Derivation::ConjugatedGenerator {
                conjugator: b,
                base: a,
            }),
        );
        let value = derivation_to_json(&derivation);
        let rebuilt = derivation_from_json(&value, &klein).unwrap();
        assert_eq!(rebuilt, derivation);
        assert!(rebuilt.replay().unwrap().is_identity());
    }

    #[test]
    fn unknown_tag_is_rejected() {
        let klein = Group::klein_bottle();
        let bad = json!(["pow", "a", "b"]);
        assert!(matches!(
            derivation_from_json(&bad, &klein),
            Err(CliError::MalformedDerivation { .. })
        ));
    }
}
