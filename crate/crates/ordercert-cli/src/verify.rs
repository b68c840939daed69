//! Independent certificate verification.
//!
//! A document is accepted only if its evidence replays from scratch using
//! the library primitives: derivations multiply back to the identity from
//! permitted leaves, assignments pass the axiom validator on their full
//! domain, orbit witnesses separate their cones, and quantified verdicts
//! are reproduced by a deterministic re-run at the recorded budgets.

use std::collections::BTreeSet;
use std::fmt;

use ordercert_core::circular::{
    validate_circular_assignment, CircularAssignment, Triple,
};
use ordercert_core::closures::{Derivation, DEFAULT_CLOSURE_BUDGET};
use ordercert_core::cones::{
    cone_axioms_check, cone_invariance_check, qcone_nonrecurrence_bound, recurrence_check,
    ConeHandle,
};
use ordercert_core::groups::{Ball, Element, Group};
use ordercert_core::order_search::{sign_search, strip_identities, Criterion, SearchStatus};
use ordercert_core::products::{
    extreme_points, unique_products, upp_subset_condition, FiniteSubset,
};

use crate::document::{
    derivation_from_json, verdict_exit_code, CertificateDocument, Evidence, SignWitness,
    SCHEMA_VERSION,
};
use crate::runner::{criterion_for, invariance_mode_for, status_name};
use crate::spec::{cone_from_spec_json, parse_group_spec};
use crate::text::parse_element;
use crate::CliError;

#[derive(Debug)]
pub struct VerifyError {
    pub reason: String,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "certificate rejected: {}", self.reason)
    }
}

impl std::error::Error for VerifyError {}

fn reject<T>(reason: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError {
        reason: reason.into(),
    })
}

impl From<CliError> for VerifyError {
    fn from(e: CliError) -> Self {
        VerifyError {
            reason: e.to_string(),
        }
    }
}

macro_rules! replayable {
    ($expr:expr) => {
        $expr.map_err(|e| VerifyError {
            reason: format!("replay failed: {e}"),
        })
    };
}

/// Replay the document's evidence; `Ok` means every check passed.
pub fn verify_document(doc: &CertificateDocument) -> Result<(), VerifyError> {
    if doc.schema_version != SCHEMA_VERSION {
        return reject(format!(
            "unsupported schema version {}",
            doc.schema_version
        ));
    }
    if verdict_exit_code(&doc.verdict) == 3 {
        // Diagnostic documents carry no verifiable evidence.
        return reject(format!("verdict '{}' is not verifiable", doc.verdict));
    }
    let group = parse_group_spec(&doc.group)?;
    match doc.property.as_str() {
        "lo" | "co" | "bo" => verify_sign_search(doc, &group),
        "circ" => verify_preorder(doc, &group),
        "upp" => verify_upp(doc, &group),
        "diffuse" => verify_diffuse(doc, &group),
        "orbit" => verify_orbit(doc, &group),
        "recur" => verify_recurrence(doc, &group),
        "cone-axioms" => verify_cone_check(doc, &group),
        other => reject(format!("unknown property '{other}'")),
    }
}

fn parsed_elements(doc: &CertificateDocument, group: &Group) -> Result<Vec<Element>, VerifyError> {
    let Some(texts) = &doc.inputs.elements else {
        return reject("document is missing its input elements");
    };
    let mut out = Vec::new();
    for t in texts {
        out.push(parse_element(t, group)?);
    }
    Ok(out)
}

fn verify_sign_search(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::SignSearch {
        status,
        signs,
        witnesses,
    } = &doc.evidence
    else {
        return reject("evidence kind does not match a sign-search property");
    };
    if status != &doc.verdict {
        return reject("evidence status disagrees with the verdict");
    }
    let criterion = criterion_for(&doc.property).expect("dispatched on property");
    let elements = parsed_elements(doc, group)?;
    let stripped = strip_identities(&elements);
    let depth = doc.inputs.depth.unwrap_or(0);
    let radius = doc.inputs.conjugator_radius.unwrap_or(0);
    let budget = doc
        .budgets
        .element_budget
        .unwrap_or(DEFAULT_CLOSURE_BUDGET as u64) as usize;

    match doc.verdict.as_str() {
        "obstructed" => {
            let expected = 1usize << stripped.len();
            if witnesses.len() != expected {
                return reject(format!(
                    "obstruction needs {expected} witnesses, found {}",
                    witnesses.len()
                ));
            }
            let mut seen: BTreeSet<Vec<i8>> = BTreeSet::new();
            let ball = replayable!(group.ball(radius))?;
            for witness in witnesses {
                if witness.signs.len() != stripped.len() {
                    return reject("witness sign vector has the wrong length");
                }
                if !seen.insert(witness.signs.clone()) {
                    return reject("duplicate witness sign vector");
                }
                check_witness(witness, &stripped, criterion, depth, &ball, group)?;
            }
            Ok(())
        }
        "certified" | "inconclusive" => {
            let rerun = replayable!(sign_search(
                &elements, criterion, depth, radius, budget
            ))?;
            if status_name(rerun.status) != doc.verdict {
                return reject(format!(
                    "re-run produced verdict '{}'",
                    status_name(rerun.status)
                ));
            }
            if rerun.status == SearchStatus::Certified {
                let rerun_signs = rerun.signs.expect("certified carries signs");
                let doc_signs = signs.as_ref().ok_or_else(|| VerifyError {
                    reason: "certified document is missing its signs".to_owned(),
                })?;
                if doc_signs != rerun_signs.signs() {
                    return reject("certified signs are not the lexicographically first");
                }
            }
            Ok(())
        }
        other => reject(format!("unexpected verdict '{other}' for a sign search")),
    }
}

fn check_witness(
    witness: &SignWitness,
    stripped: &[Element],
    criterion: Criterion,
    depth: u32,
    conjugator_ball: &Ball,
    group: &Group,
) -> Result<(), VerifyError> {
    let signed: Vec<Element> = stripped
        .iter()
        .zip(&witness.signs)
        .map(|(e, &s)| {
            if s == 1 {
                Ok(e.clone())
            } else if s == -1 {
                Ok(e.inverse())
            } else {
                reject("witness signs must be +1 or -1")
            }
        })
        .collect::<Result<_, VerifyError>>()?;
    let allowed: BTreeSet<Element> = signed.into_iter().collect();
    let derivation = derivation_from_json(&witness.derivation, group)?;
    check_derivation_shape(&derivation, &allowed, criterion, conjugator_ball)?;
    if derivation.steps() as u32 > depth {
        return reject("witness derivation exceeds the recorded depth");
    }
    let value = replayable!(derivation.replay())?;
    if !value.is_identity() {
        return reject("witness derivation does not replay to the identity");
    }
    Ok(())
}

fn check_derivation_shape(
    derivation: &Derivation,
    allowed: &BTreeSet<Element>,
    criterion: Criterion,
    conjugator_ball: &Ball,
) -> Result<(), VerifyError> {
    match derivation {
        Derivation::Generator(e) => {
            if !allowed.contains(e) {
                return reject("derivation leaf is not a signed input element");
            }
            Ok(())
        }
        Derivation::ConjugatedGenerator { conjugator, base } => {
            if criterion != Criterion::BiOrder {
                return reject("conjugated leaves are only valid for the bi-order criterion");
            }
            if !allowed.contains(base) {
                return reject("conjugated leaf base is not a signed input element");
            }
            if !conjugator_ball.contains(conjugator) {
                return reject("conjugator lies outside the recorded ball");
            }
            Ok(())
        }
        Derivation::Product(l, r) => {
            check_derivation_shape(l, allowed, criterion, conjugator_ball)?;
            check_derivation_shape(r, allowed, criterion, conjugator_ball)
        }
        Derivation::ConradianStep(l, r) => {
            if criterion != Criterion::ConradianOrder {
                return reject("conradian nodes are only valid for the conradian criterion");
            }
            check_derivation_shape(l, allowed, criterion, conjugator_ball)?;
            check_derivation_shape(r, allowed, criterion, conjugator_ball)
        }
    }
}

fn verify_preorder(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::Preorder { assignment, .. } = &doc.evidence else {
        return reject("evidence kind does not match the circular property");
    };
    let Some(k) = doc.inputs.k else {
        return reject("document is missing the ball radius");
    };
    match doc.verdict.as_str() {
        "certified" => {
            let Some(entries) = assignment else {
                return reject("certified document carries no assignment");
            };
            let ball = replayable!(group.ball(k))?;
            let members: Vec<Element> = ball.iter().cloned().collect();
            let mut parsed = CircularAssignment::new();
            for entry in entries {
                let a = parse_element(&entry.triple[0], group)?;
                let b = parse_element(&entry.triple[1], group)?;
                let c = parse_element(&entry.triple[2], group)?;
                let triple = replayable!(Triple::new(a, b, c))?;
                if parsed.contains(&triple) {
                    return reject("assignment repeats a triple");
                }
                parsed.insert(triple, entry.value);
            }
            let expected = members.len().pow(3);
            if parsed.len() != expected {
                return reject(format!(
                    "assignment covers {} of {expected} ball triples",
                    parsed.len()
                ));
            }
            for a in &members {
                for b in &members {
                    for c in &members {
                        let t = replayable!(Triple::new(a.clone(), b.clone(), c.clone()))?;
                        if !parsed.contains(&t) {
                            return reject("assignment is missing a ball triple");
                        }
                    }
                }
            }
            let report = replayable!(validate_circular_assignment(&parsed, &members))?;
            match report.violation {
                None => Ok(()),
                Some(v) => reject(format!("assignment violates the axioms: {v:?}")),
            }
        }
        "impossible" => {
            let node_budget = doc.budgets.node_budget.unwrap_or(u64::MAX);
            let rerun = replayable!(
                ordercert_core::circular::preorder_search_with_budget(group, k, node_budget)
            )?;
            if rerun.is_impossible() {
                Ok(())
            } else {
                reject("re-run found an assignment where the document claims impossibility")
            }
        }
        other => reject(format!("unexpected verdict '{other}' for circ")),
    }
}

fn verify_upp(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::UppCondition {
        holds,
        counterexample,
        ..
    } = &doc.evidence
    else {
        return reject("evidence kind does not match upp");
    };
    let elements = parsed_elements(doc, group)?;
    let set = replayable!(FiniteSubset::new(group, elements))?;
    match (doc.verdict.as_str(), holds, counterexample) {
        ("certified", true, None) => {
            let outcome = replayable!(upp_subset_condition(&set))?;
            if outcome.holds() {
                Ok(())
            } else {
                reject("re-run found a failing pair where the document claims none")
            }
        }
        ("obstructed", false, Some(pair)) => {
            let mut x_members = Vec::new();
            for t in &pair.x {
                x_members.push(parse_element(t, group)?);
            }
            let mut y_members = Vec::new();
            for t in &pair.y {
                y_members.push(parse_element(t, group)?);
            }
            let x = replayable!(FiniteSubset::new(group, x_members))?;
            let y = replayable!(FiniteSubset::new(group, y_members))?;
            if !x.contains_identity() || !y.contains_identity() {
                return reject("counterexample pair must contain the identity");
            }
            if x.iter().any(|g| !set.contains(g)) || y.iter().any(|g| !set.contains(g)) {
                return reject("counterexample pair is not inside the input set");
            }
            let report = replayable!(unique_products(&x, &y))?;
            if report.is_empty() {
                Ok(())
            } else {
                reject("counterexample pair has a unique product after all")
            }
        }
        _ => reject("upp evidence does not match its verdict"),
    }
}

fn verify_diffuse(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::ExtremePoints { set_size, points } = &doc.evidence else {
        return reject("evidence kind does not match diffuse");
    };
    let elements = parsed_elements(doc, group)?;
    let set = replayable!(FiniteSubset::new(group, elements))?;
    if set.len() != *set_size {
        return reject("recorded set size disagrees with the input elements");
    }
    let recomputed = replayable!(extreme_points(&set))?;
    let mut doc_points = BTreeSet::new();
    for t in points {
        doc_points.insert(parse_element(t, group)?);
    }
    if &doc_points != recomputed.points() {
        return reject("recorded extreme points disagree with the exhaustive scan");
    }
    let expected_verdict = if set.len() <= 1 || recomputed.len() >= 2 {
        "certified"
    } else {
        "obstructed"
    };
    if doc.verdict != expected_verdict {
        return reject("diffuse verdict does not match the extreme point count");
    }
    Ok(())
}

fn verify_orbit(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::Orbit { cones, witnesses } = &doc.evidence else {
        return reject("evidence kind does not match orbit");
    };
    if doc.verdict != "certified" {
        return reject("orbit documents are always certified");
    }
    let Some(base_spec) = &doc.inputs.cone else {
        return reject("document is missing its base cone");
    };
    let Some(bound) = doc.inputs.bound else {
        return reject("document is missing the orbit bound");
    };
    let Some(conjugator_texts) = &doc.inputs.conjugators else {
        return reject("document is missing its conjugators");
    };
    let base = cone_from_spec_json(base_spec, group)?;
    let mut conjugators = Vec::new();
    for t in conjugator_texts {
        conjugators.push(parse_element(t, group)?);
    }
    let rerun = replayable!(ordercert_core::cones::cone_orbit(&base, &conjugators, bound))?;
    if rerun.cones().len() != cones.len() {
        return reject(format!(
            "re-run found {} orbit cones, document lists {}",
            rerun.cones().len(),
            cones.len()
        ));
    }
    let handles: Vec<ConeHandle> = cones
        .iter()
        .map(|c| cone_from_spec_json(c, group))
        .collect::<Result<_, CliError>>()?;
    let mut covered = BTreeSet::new();
    for witness in witnesses {
        if witness.first >= handles.len() || witness.second >= handles.len() {
            return reject("witness refers to a cone outside the list");
        }
        if witness.first >= witness.second {
            return reject("witness pair indices must be ordered");
        }
        if !covered.insert((witness.first, witness.second)) {
            return reject("duplicate witness pair");
        }
        let element = parse_element(&witness.element, group)?;
        let in_first = replayable!(handles[witness.first].membership(&element))?;
        let in_second = replayable!(handles[witness.second].membership(&element))?;
        if in_first != witness.in_first || in_second == witness.in_first {
            return reject("witness does not separate its cone pair as recorded");
        }
    }
    let expected_pairs = handles.len() * (handles.len().saturating_sub(1)) / 2;
    if covered.len() != expected_pairs {
        return reject(format!(
            "witnesses cover {} of {expected_pairs} cone pairs",
            covered.len()
        ));
    }
    Ok(())
}

fn verify_recurrence(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::Recurrence {
        found,
        exhausted_at,
        closed_form_applicable,
        closed_form_bound,
    } = &doc.evidence
    else {
        return reject("evidence kind does not match recur");
    };
    let Some(cone_spec) = &doc.inputs.cone else {
        return reject("document is missing its cone");
    };
    let Some(g_text) = &doc.inputs.g else {
        return reject("document is missing the conjugating element");
    };
    let Some(probe_texts) = &doc.inputs.probes else {
        return reject("document is missing its probes");
    };
    let Some(n_max) = doc.inputs.n_max else {
        return reject("document is missing the window size");
    };
    let cone = cone_from_spec_json(cone_spec, group)?;
    let g = parse_element(g_text, group)?;
    let mut probes = Vec::new();
    for t in probe_texts {
        probes.push(parse_element(t, group)?);
    }
    let rerun = replayable!(recurrence_check(&cone, &g, &probes, n_max))?;
    if &rerun.found != found {
        return reject("recorded window disagrees with direct membership queries");
    }
    if rerun.exhausted_at != *exhausted_at {
        return reject("recorded window bound disagrees with the input");
    }
    let bound = qcone_nonrecurrence_bound(&cone, &g, &probes);
    if bound.is_some() != *closed_form_applicable || &bound != closed_form_bound {
        return reject("closed-form non-recurrence record does not replay");
    }
    let expected_verdict = if !found.is_empty() {
        "certified"
    } else if bound.is_some_and(|b| b <= i64::from(n_max)) {
        "obstructed"
    } else {
        "inconclusive"
    };
    if doc.verdict != expected_verdict {
        return reject("recur verdict does not match the evidence");
    }
    Ok(())
}

fn verify_cone_check(doc: &CertificateDocument, group: &Group) -> Result<(), VerifyError> {
    let Evidence::ConeCheck {
        axioms_passed,
        invariance_passed,
        ..
    } = &doc.evidence
    else {
        return reject("evidence kind does not match cone-axioms");
    };
    let Some(cone_spec) = &doc.inputs.cone else {
        return reject("document is missing its cone");
    };
    let Some(radius) = doc.inputs.radius else {
        return reject("document is missing the check radius");
    };
    let cone = cone_from_spec_json(cone_spec, group)?;
    let axioms = replayable!(cone_axioms_check(&cone, radius))?;
    if axioms.passed() != *axioms_passed {
        return reject("axiom check does not replay");
    }
    let invariance_rerun = match (&doc.inputs.invariance, invariance_passed) {
        (Some(mode_name), Some(recorded)) => {
            let mode = invariance_mode_for(mode_name)?;
            let report = replayable!(cone_invariance_check(&cone, radius, mode))?;
            if report.passed() != *recorded {
                return reject("invariance check does not replay");
            }
            Some(report.passed())
        }
        (None, None) => None,
        _ => return reject("invariance record does not match the inputs"),
    };
    let passed = axioms.passed() && invariance_rerun.unwrap_or(true);
    let expected_verdict = if passed { "certified" } else { "obstructed" };
    if doc.verdict != expected_verdict {
        return reject("cone-axioms verdict does not match the evidence");
    }
    Ok(())
}

/// Exit code for the verify subcommand: 0 accept, 1 reject.
pub fn verify_exit_code(result: &Result<(), VerifyError>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(_) => 1,
    }
}
