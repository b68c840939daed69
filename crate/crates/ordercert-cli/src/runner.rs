//! Command dispatch: run a check and assemble the certificate document.

use ordercert_core::circular::{preorder_search_with_budget, PreorderOutcome};
use ordercert_core::cones::{
    cone_axioms_check, cone_invariance_check, cone_orbit, qcone_nonrecurrence_bound,
    recurrence_check, ConeAxiomViolation, InvarianceMode,
};
use ordercert_core::groups::{Element, Group, GroupKind};
use ordercert_core::order_search::{sign_search, Criterion, SearchStatus};
use ordercert_core::products::{
    extreme_points, upp_subset_condition, FiniteSubset, UppConditionOutcome,
};

use crate::document::{
    derivation_to_json, AssignmentEntry, Budgets, CertificateDocument, Evidence, Inputs,
    OrbitWitnessJson, SignWitness, UppCounterexample, SCHEMA_VERSION,
};
use crate::spec::{cone_spec_json, parse_cone_spec, parse_group_spec};
use crate::text::{parse_element, render_element};
use crate::CliError;

#[derive(Debug, Clone)]
pub enum CommandSpec {
    Check {
        property: String,
        group: String,
        elements: Vec<String>,
        depth: u32,
        radius: u32,
        k: u32,
        budget: u64,
    },
    Orbit {
        group: String,
        cone: String,
        i: Option<u32>,
        phase: Option<u32>,
        bound: u32,
    },
    Recur {
        group: String,
        cone: String,
        i: Option<u32>,
        phase: Option<u32>,
        g: String,
        probes: Vec<String>,
        n_max: u32,
    },
    ConeCheck {
        group: String,
        cone: String,
        i: Option<u32>,
        phase: Option<u32>,
        radius: u32,
        invariance: Option<String>,
    },
}

impl CommandSpec {
    fn property_name(&self) -> String {
        match self {
            CommandSpec::Check { property, .. } => property.clone(),
            CommandSpec::Orbit { .. } => "orbit".to_owned(),
            CommandSpec::Recur { .. } => "recur".to_owned(),
            CommandSpec::ConeCheck { .. } => "cone-axioms".to_owned(),
        }
    }

    fn group_spec(&self) -> &str {
        match self {
            CommandSpec::Check { group, .. }
            | CommandSpec::Orbit { group, .. }
            | CommandSpec::Recur { group, .. }
            | CommandSpec::ConeCheck { group, .. } => group,
        }
    }
}

/// Run a command. Errors become a diagnostic document whose exit code is 3.
pub fn run(command: &CommandSpec) -> CertificateDocument {
    match run_inner(command) {
        Ok(doc) => doc,
        Err(error) => CertificateDocument {
            schema_version: SCHEMA_VERSION,
            property: command.property_name(),
            group: command.group_spec().to_owned(),
            inputs: Inputs::default(),
            verdict: "error".to_owned(),
            evidence: Evidence::Diagnostic {
                message: error.to_string(),
            },
            budgets: Budgets::default(),
        },
    }
}

fn run_inner(command: &CommandSpec) -> Result<CertificateDocument, CliError> {
    match command {
        CommandSpec::Check {
            property,
            group,
            elements,
            depth,
            radius,
            k,
            budget,
        } => {
            let group_handle = parse_group_spec(group)?;
            match property.as_str() {
                "lo" | "co" | "bo" => run_sign_search(
                    property,
                    group,
                    &group_handle,
                    elements,
                    *depth,
                    *radius,
                    *budget,
                ),
                "circ" => run_preorder(group, &group_handle, *k, *budget),
                "upp" => run_upp(group, &group_handle, elements),
                "diffuse" => run_diffuse(group, &group_handle, elements),
                other => Err(CliError::UnknownProperty {
                    property: other.to_owned(),
                }),
            }
        }
        CommandSpec::Orbit {
            group,
            cone,
            i,
            phase,
            bound,
        } => run_orbit(group, cone, *i, *phase, *bound),
        CommandSpec::Recur {
            group,
            cone,
            i,
            phase,
            g,
            probes,
            n_max,
        } => run_recur(group, cone, *i, *phase, g, probes, *n_max),
        CommandSpec::ConeCheck {
            group,
            cone,
            i,
            phase,
            radius,
            invariance,
        } => run_cone_check(group, cone, *i, *phase, *radius, invariance.as_deref()),
    }
}

fn parse_elements(texts: &[String], group: &Group) -> Result<Vec<Element>, CliError> {
    texts.iter().map(|t| parse_element(t, group)).collect()
}

pub fn criterion_for(property: &str) -> Option<Criterion> {
    match property {
        "lo" => Some(Criterion::LeftOrder),
        "co" => Some(Criterion::ConradianOrder),
        "bo" => Some(Criterion::BiOrder),
        _ => None,
    }
}

pub fn status_name(status: SearchStatus) -> &'static str {
    match status {
        SearchStatus::Certified => "certified",
        SearchStatus::Obstructed => "obstructed",
        SearchStatus::Inconclusive => "inconclusive",
    }
}

fn run_sign_search(
    property: &str,
    group_spec: &str,
    group: &Group,
    element_texts: &[String],
    depth: u32,
    radius: u32,
    budget: u64,
) -> Result<CertificateDocument, CliError> {
    let elements = parse_elements(element_texts, group)?;
    let criterion = criterion_for(property).expect("dispatched on property");
    let verdict = sign_search(&elements, criterion, depth, radius, budget as usize)?;
    let witnesses = verdict
        .witnesses
        .iter()
        .map(|(signs, derivation)| SignWitness {
            signs: signs.signs().to_vec(),
            derivation: derivation_to_json(derivation),
        })
        .collect();
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: property.to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            elements: Some(element_texts.to_vec()),
            depth: Some(depth),
            conjugator_radius: Some(radius),
            ..Inputs::default()
        },
        verdict: status_name(verdict.status).to_owned(),
        evidence: Evidence::SignSearch {
            status: status_name(verdict.status).to_owned(),
            signs: verdict.signs.as_ref().map(|s| s.signs().to_vec()),
            witnesses,
        },
        budgets: Budgets {
            element_budget: Some(budget),
            node_budget: None,
        },
    })
}

fn run_preorder(
    group_spec: &str,
    group: &Group,
    k: u32,
    budget: u64,
) -> Result<CertificateDocument, CliError> {
    let outcome = preorder_search_with_budget(group, k, budget)?;
    let (verdict, evidence) = match outcome {
        PreorderOutcome::Found(assignment) => {
            let entries = assignment
                .iter()
                .map(|(t, v)| AssignmentEntry {
                    triple: [
                        render_element(&t.components()[0]),
                        render_element(&t.components()[1]),
                        render_element(&t.components()[2]),
                    ],
                    value: v,
                })
                .collect();
            let ball_size = group.ball(k)?.len();
            (
                "certified",
                Evidence::Preorder {
                    ball_size,
                    nodes: 0,
                    assignment: Some(entries),
                },
            )
        }
        PreorderOutcome::Impossible(refutation) => (
            "impossible",
            Evidence::Preorder {
                ball_size: refutation.ball_size,
                nodes: refutation.nodes,
                assignment: None,
            },
        ),
    };
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: "circ".to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            k: Some(k),
            ..Inputs::default()
        },
        verdict: verdict.to_owned(),
        evidence,
        budgets: Budgets {
            element_budget: None,
            node_budget: Some(budget),
        },
    })
}

fn run_upp(
    group_spec: &str,
    group: &Group,
    element_texts: &[String],
) -> Result<CertificateDocument, CliError> {
    let elements = parse_elements(element_texts, group)?;
    let set = FiniteSubset::new(group, elements)?;
    let outcome = upp_subset_condition(&set)?;
    let (verdict, evidence) = match outcome {
        UppConditionOutcome::Holds { pairs_checked } => (
            "certified",
            Evidence::UppCondition {
                holds: true,
                pairs_checked,
                counterexample: None,
            },
        ),
        UppConditionOutcome::Fails { x, y } => (
            "obstructed",
            Evidence::UppCondition {
                holds: false,
                pairs_checked: 0,
                counterexample: Some(UppCounterexample {
                    x: x.iter().map(render_element).collect(),
                    y: y.iter().map(render_element).collect(),
                }),
            },
        ),
    };
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: "upp".to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            elements: Some(element_texts.to_vec()),
            ..Inputs::default()
        },
        verdict: verdict.to_owned(),
        evidence,
        budgets: Budgets::default(),
    })
}

fn run_diffuse(
    group_spec: &str,
    group: &Group,
    element_texts: &[String],
) -> Result<CertificateDocument, CliError> {
    let elements = parse_elements(element_texts, group)?;
    let set = FiniteSubset::new(group, elements)?;
    let points = extreme_points(&set)?;
    // A set larger than one element with fewer than two extreme points is a
    // concrete witness against diffuseness.
    let verdict = if set.len() <= 1 || points.len() >= 2 {
        "certified"
    } else {
        "obstructed"
    };
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: "diffuse".to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            elements: Some(element_texts.to_vec()),
            ..Inputs::default()
        },
        verdict: verdict.to_owned(),
        evidence: Evidence::ExtremePoints {
            set_size: set.len(),
            points: points.points().iter().map(render_element).collect(),
        },
        budgets: Budgets::default(),
    })
}

fn orbit_conjugators(group: &Group) -> Vec<Element> {
    match group.kind() {
        // The cyclic part alone drives the named cone family.
        GroupKind::LaurentSemidirect => vec![group.generator(1)],
        _ => group.generators(),
    }
}

fn run_orbit(
    group_spec: &str,
    cone_name: &str,
    i: Option<u32>,
    phase: Option<u32>,
    bound: u32,
) -> Result<CertificateDocument, CliError> {
    let group = parse_group_spec(group_spec)?;
    let cone = parse_cone_spec(cone_name, i, phase, &group)?;
    let conjugators = orbit_conjugators(&group);
    let report = cone_orbit(&cone, &conjugators, bound)?;
    let cones = report
        .cones()
        .iter()
        .map(cone_spec_json)
        .collect::<Result<Vec<_>, CliError>>()?;
    let witnesses = report
        .witnesses()
        .iter()
        .map(|w| OrbitWitnessJson {
            first: w.first,
            second: w.second,
            element: render_element(&w.element),
            in_first: w.in_first,
        })
        .collect();
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: "orbit".to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            cone: Some(cone_spec_json(&cone)?),
            conjugators: Some(conjugators.iter().map(render_element).collect()),
            bound: Some(bound),
            ..Inputs::default()
        },
        verdict: "certified".to_owned(),
        evidence: Evidence::Orbit { cones, witnesses },
        budgets: Budgets::default(),
    })
}

fn run_recur(
    group_spec: &str,
    cone_name: &str,
    i: Option<u32>,
    phase: Option<u32>,
    g_text: &str,
    probe_texts: &[String],
    n_max: u32,
) -> Result<CertificateDocument, CliError> {
    let group = parse_group_spec(group_spec)?;
    let cone = parse_cone_spec(cone_name, i, phase, &group)?;
    let g = parse_element(g_text, &group)?;
    let probes = parse_elements(probe_texts, &group)?;
    let report = recurrence_check(&cone, &g, &probes, n_max)?;
    let closed_form = qcone_nonrecurrence_bound(&cone, &g, &probes);
    let verdict = if !report.found.is_empty() {
        "certified"
    } else if closed_form.is_some_and(|b| b <= i64::from(n_max)) {
        // Nothing found in the window and nothing can exist beyond it.
        "obstructed"
    } else {
        "inconclusive"
    };
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: "recur".to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            cone: Some(cone_spec_json(&cone)?),
            g: Some(g_text.trim().to_owned()),
            probes: Some(probe_texts.to_vec()),
            n_max: Some(n_max),
            ..Inputs::default()
        },
        verdict: verdict.to_owned(),
        evidence: Evidence::Recurrence {
            found: report.found,
            exhausted_at: report.exhausted_at,
            closed_form_applicable: closed_form.is_some(),
            closed_form_bound: closed_form,
        },
        budgets: Budgets::default(),
    })
}

pub fn invariance_mode_for(name: &str) -> Result<InvarianceMode, CliError> {
    match name {
        "bi" => Ok(InvarianceMode::Bi),
        "conradian" => Ok(InvarianceMode::Conradian),
        other => Err(CliError::InvalidParameter {
            name: "invariance",
            detail: format!("expected 'bi' or 'conradian', got '{other}'"),
        }),
    }
}

fn describe_axiom_violation(violation: &ConeAxiomViolation) -> String {
    match violation {
        ConeAxiomViolation::IdentityMember => "identity is a member".to_owned(),
        ConeAxiomViolation::Trichotomy { element, member } => {
            let side = if *member { "both" } else { "neither" };
            format!(
                "trichotomy fails at {}: {side} of it and its inverse are members",
                render_element(element)
            )
        }
        ConeAxiomViolation::ProductEscape { left, right, .. } => format!(
            "product of members {} and {} left the cone",
            render_element(left),
            render_element(right)
        ),
    }
}

fn run_cone_check(
    group_spec: &str,
    cone_name: &str,
    i: Option<u32>,
    phase: Option<u32>,
    radius: u32,
    invariance: Option<&str>,
) -> Result<CertificateDocument, CliError> {
    let group = parse_group_spec(group_spec)?;
    let cone = parse_cone_spec(cone_name, i, phase, &group)?;
    let axioms = cone_axioms_check(&cone, radius)?;
    let mut violation = axioms.violation.as_ref().map(describe_axiom_violation);
    let invariance_passed = match invariance {
        Some(mode_name) => {
            let mode = invariance_mode_for(mode_name)?;
            let report = cone_invariance_check(&cone, radius, mode)?;
            if let (None, Some(v)) = (&violation, &report.violation) {
                violation = Some(format!(
                    "conjugating {} by {} leaves the cone",
                    render_element(&v.positive),
                    render_element(&v.conjugator)
                ));
            }
            Some(report.passed())
        }
        None => None,
    };
    let passed = axioms.passed() && invariance_passed.unwrap_or(true);
    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION,
        property: "cone-axioms".to_owned(),
        group: group_spec.to_owned(),
        inputs: Inputs {
            cone: Some(cone_spec_json(&cone)?),
            radius: Some(radius),
            invariance: invariance.map(str::to_owned),
            ..Inputs::default()
        },
        verdict: if passed { "certified" } else { "obstructed" }.to_owned(),
        evidence: Evidence::ConeCheck {
            axioms_passed: axioms.passed(),
            invariance_passed,
            violation,
        },
        budgets: Budgets::default(),
    })
}
