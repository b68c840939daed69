//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line and enforcing its runtime budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use ordercert_cli::document::{CertificateDocument, Evidence};
use ordercert_cli::runner::{run, CommandSpec};
use ordercert_cli::verify::verify_document;
use ordercert_core::circular::{
    extension_circular_order, preorder_search, standard_cyclic_assignment,
    validate_circular_assignment, SemigroupOracle,
};
use ordercert_core::cones::{cone_orbit, qcone_nonrecurrence_bound, recurrence_check, ConeHandle};
use ordercert_core::groups::{Element, Group, Homomorphism, LaurentPoly, Payload};
use ordercert_core::order_search::{sign_search, Criterion, SearchStatus};
use ordercert_core::products::{
    diffuse_lift, extreme_points, unique_products, upp_lift, BruteForceExtremes,
    BruteForceProducts, FiniteSubset,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

const CLOSURE_BUDGET: usize = 1_000_000;

fn finish(criterion: &str, start: Instant, bound: Duration, detail: &str) {
    let elapsed = start.elapsed();
    println!("acceptance {criterion}: PASS ({detail}) in {elapsed:.2?}");
    assert!(
        elapsed < bound,
        "{criterion} exceeded its {bound:?} budget: {elapsed:?}"
    );
}

#[test]
fn acceptance_01_torsion_obstruction() {
    let start = Instant::now();
    for order in [2u32, 3, 5] {
        let group = Group::finite_cyclic(order).unwrap();
        let verdict = sign_search(
            &[group.generator(0)],
            Criterion::LeftOrder,
            order,
            0,
            CLOSURE_BUDGET,
        )
        .unwrap();
        assert_eq!(verdict.status, SearchStatus::Obstructed, "order {order}");
        assert_eq!(verdict.witnesses.len(), 2, "both signs obstructed");
        for witness in verdict.witnesses.values() {
            assert!(witness.replay().unwrap().is_identity());
        }
    }
    finish(
        "01 torsion obstruction",
        start,
        Duration::from_secs(1),
        "cyclic 2,3,5 obstructed with replayable witnesses",
    );
}

#[test]
fn acceptance_02_klein_bottle_separation() {
    let start = Instant::now();
    let klein = Group::klein_bottle();
    let a = klein.generator(0);
    let b = klein.generator(1);

    let bo = sign_search(std::slice::from_ref(&a), Criterion::BiOrder, 2, 1, CLOSURE_BUDGET).unwrap();
    assert_eq!(bo.status, SearchStatus::Obstructed);

    let lo = sign_search(
        &[a.clone(), b.clone()],
        Criterion::LeftOrder,
        6,
        0,
        CLOSURE_BUDGET,
    )
    .unwrap();
    assert_eq!(lo.status, SearchStatus::Certified);

    let co = sign_search(&[a, b], Criterion::ConradianOrder, 5, 0, CLOSURE_BUDGET).unwrap();
    assert_eq!(co.status, SearchStatus::Certified);

    finish(
        "02 klein separation",
        start,
        Duration::from_secs(5),
        "bo obstructed, lo and co certified",
    );
}

#[test]
fn acceptance_03_soundness_on_bi_orderable_groups() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_1703);
    let groups = [Group::free(2).unwrap(), Group::free_abelian(3).unwrap()];
    let mut searches = 0u32;
    for group in &groups {
        let ball: Vec<Element> = group.ball(2).unwrap().iter().cloned().collect();
        for _ in 0..100 {
            let size = rng.gen_range(1..=4);
            let sample: Vec<Element> = ball.choose_multiple(&mut rng, size).cloned().collect();
            for criterion in [
                Criterion::LeftOrder,
                Criterion::ConradianOrder,
                Criterion::BiOrder,
            ] {
                let verdict = sign_search(&sample, criterion, 3, 1, 200_000).unwrap();
                assert_ne!(
                    verdict.status,
                    SearchStatus::Obstructed,
                    "soundness bug: obstruction in {group}"
                );
                searches += 1;
            }
        }
    }
    finish(
        "03 bi-orderable soundness",
        start,
        Duration::from_secs(60),
        &format!("{searches} searches, no obstruction"),
    );
}

#[test]
fn acceptance_04_unique_product_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_1704);
    let free2_quotient = {
        let f = Group::free(2).unwrap();
        let z = Group::free_abelian(1).unwrap();
        Homomorphism::new(f, z.clone(), vec![z.identity(), z.generator(0)]).unwrap()
    };
    let cases = [
        (Group::klein_bottle(), Homomorphism::klein_b_exponent()),
        (Group::free(2).unwrap(), free2_quotient),
    ];
    let mut instances = 0u32;
    for (group, hom) in &cases {
        let ball: Vec<Element> = group.ball(2).unwrap().iter().cloned().collect();
        for _ in 0..100 {
            let x_extra = rng.gen_range(0..=4);
            let y_extra = rng.gen_range(0..=4);
            let mut x_members: Vec<Element> =
                ball.choose_multiple(&mut rng, x_extra).cloned().collect();
            x_members.push(group.identity());
            let mut y_members: Vec<Element> =
                ball.choose_multiple(&mut rng, y_extra).cloned().collect();
            y_members.push(group.identity());
            let x = FiniteSubset::new(group, x_members).unwrap();
            let y = FiniteSubset::new(group, y_members).unwrap();
            let report = unique_products(&x, &y).unwrap();
            assert!(!report.is_empty(), "unique products exist in {group}");
            let (product, pair) = upp_lift(&x, &y, hom, &BruteForceProducts).unwrap();
            assert_eq!(
                report.products().get(&product),
                Some(&pair),
                "lift output must be in the exhaustive table"
            );
            instances += 1;
        }
    }
    finish(
        "04 unique product oracle",
        start,
        Duration::from_secs(30),
        &format!("{instances} lifted pairs matched the table"),
    );
}

#[test]
fn acceptance_05_extreme_point_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_1705);
    let cases = [
        (Group::klein_bottle(), Homomorphism::klein_b_exponent()),
        (Group::heisenberg(), Homomorphism::heisenberg_abelianization()),
    ];
    let mut instances = 0u32;
    for (group, hom) in &cases {
        let ball: Vec<Element> = group.ball(2).unwrap().iter().cloned().collect();
        for _ in 0..100 {
            let extra = rng.gen_range(0..=5);
            let mut members: Vec<Element> =
                ball.choose_multiple(&mut rng, extra).cloned().collect();
            members.push(group.identity());
            let x = FiniteSubset::new(group, members).unwrap();
            let lifted = diffuse_lift(&x, hom, &BruteForceExtremes, &BruteForceExtremes).unwrap();
            let scan = extreme_points(&x).unwrap();
            assert!(scan.contains(&lifted), "lift output must be extreme");
            if x.len() > 1 {
                assert!(scan.len() >= 2, "diffuse group set with one extreme point");
            }
            instances += 1;
        }
    }
    finish(
        "05 extreme point oracle",
        start,
        Duration::from_secs(30),
        &format!("{instances} lifted points matched the scan"),
    );
}

#[test]
fn acceptance_06_circular_orderability_boundary() {
    let start = Instant::now();
    for order in [2u32, 3, 4, 5] {
        let group = Group::finite_cyclic(order).unwrap();
        let k = order.div_ceil(2);
        assert_eq!(group.ball(k).unwrap().len() as u32, order, "whole group");
        let outcome = preorder_search(&group, k).unwrap();
        let assignment = outcome.found().expect("cyclic groups certify");
        let multipliers: Vec<Element> = group.ball(k).unwrap().iter().cloned().collect();
        assert!(validate_circular_assignment(assignment, &multipliers)
            .unwrap()
            .passed());
    }
    for order in [2u32, 3] {
        let cyclic = Group::finite_cyclic(order).unwrap();
        let group = Group::direct_product(vec![cyclic.clone(), cyclic]).unwrap();
        assert_eq!(
            group.ball(2).unwrap().len() as u32,
            order * order,
            "whole group"
        );
        let outcome = preorder_search(&group, 2).unwrap();
        assert!(
            outcome.is_impossible(),
            "cyclic-squared groups admit no circular values"
        );
    }
    finish(
        "06 circular boundary",
        start,
        Duration::from_secs(60),
        "cyclic 2-5 certified; 2x2 and 3x3 squares impossible",
    );
}

#[test]
fn acceptance_07_extension_construction_validity() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_1707);
    let z = Group::free_abelian(1).unwrap();
    let mut instances = 0u32;
    while instances < 20 {
        let order = [2u32, 3, 4][(instances % 3) as usize];
        let cyclic = Group::finite_cyclic(order).unwrap();
        let hom = Homomorphism::new(z.clone(), cyclic.clone(), vec![cyclic.generator(0)]).unwrap();
        let quotient_values = standard_cyclic_assignment(&cyclic).unwrap();
        let size = rng.gen_range(1..=5);
        let mut values = BTreeSet::new();
        while values.len() < size {
            values.insert(rng.gen_range(-6i64..=6));
        }
        let elements: Vec<Element> = values
            .iter()
            .map(|&v| Element::from_payload(z.clone(), Payload::Vector(vec![v])).unwrap())
            .collect();
        let x = FiniteSubset::new(&z, elements.clone()).unwrap();
        let n = i64::from(order);
        let oracle = SemigroupOracle::from_predicate(move |g| match g.payload() {
            Payload::Vector(v) => v[0] > 0 && v[0] % n == 0,
            _ => false,
        });
        let assignment = extension_circular_order(&x, &hom, &quotient_values, &oracle).unwrap();
        let report = validate_circular_assignment(&assignment, &elements).unwrap();
        assert!(
            report.passed(),
            "order {order}, set {values:?}: {:?}",
            report.violation
        );
        instances += 1;
    }
    finish(
        "07 extension validity",
        start,
        Duration::from_secs(30),
        "20 random extensions validated exhaustively",
    );
}

#[test]
fn acceptance_08_cone_orbit_count() {
    let start = Instant::now();
    let z = Group::laurent_semidirect().generator(1);
    for i in [1u32, 2, 3] {
        let cone = ConeHandle::pi_cone(i, 0).unwrap();
        let report = cone_orbit(&cone, std::slice::from_ref(&z), 20).unwrap();
        assert_eq!(report.cones().len(), 2 * i as usize, "orbit size is 2i");
        let pairs = report.cones().len() * (report.cones().len() - 1) / 2;
        assert_eq!(report.witnesses().len(), pairs);
        for w in report.witnesses() {
            let in_first = report.cones()[w.first].membership(&w.element).unwrap();
            let in_second = report.cones()[w.second].membership(&w.element).unwrap();
            assert!(in_first != in_second, "witness separates its pair");
            assert_eq!(in_first, w.in_first);
        }
    }
    finish(
        "08 cone orbit count",
        start,
        Duration::from_secs(10),
        "orbit sizes 2, 4, 6 with verified witnesses",
    );
}

#[test]
fn acceptance_09_recurrence_dichotomy() {
    let start = Instant::now();
    let laurent = Group::laurent_semidirect();
    let z = laurent.generator(1);
    let constant = Element::from_payload(
        laurent.clone(),
        Payload::Laurent {
            poly: LaurentPoly::constant(1),
            z: 0,
        },
    )
    .unwrap();
    for i in [1u32, 2, 3] {
        let cone = ConeHandle::pi_cone(i, 0).unwrap();
        let report = recurrence_check(&cone, &z, std::slice::from_ref(&constant), 4 * i).unwrap();
        assert!(!report.found.is_empty());
        assert!(report.found.contains(&i64::from(2 * i)));
        assert!(report.found.contains(&i64::from(4 * i)));
    }
    let limit_cone = ConeHandle::p_cone();
    let report = recurrence_check(&limit_cone, &z, std::slice::from_ref(&constant), 50).unwrap();
    assert!(report.found.is_empty(), "limit cone never recurs");
    let bound = qcone_nonrecurrence_bound(&limit_cone, &z, &[constant]);
    assert_eq!(bound, Some(0), "closed form covers every exponent");
    finish(
        "09 recurrence dichotomy",
        start,
        Duration::from_secs(5),
        "periodic cones recur on period multiples; limit cone proven non-recurrent",
    );
}

// ---------------------------------------------------------------------
// Criterion 10: every emitted document verifies; single-token mutants are
// rejected.
// ---------------------------------------------------------------------

fn check(property: &str, group: &str, elements: &str, depth: u32, radius: u32, k: u32) -> CommandSpec {
    CommandSpec::Check {
        property: property.to_owned(),
        group: group.to_owned(),
        elements: elements
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect(),
        depth,
        radius,
        k,
        budget: CLOSURE_BUDGET as u64,
    }
}

fn emitted_documents() -> Vec<CertificateDocument> {
    let mut specs = Vec::new();
    // Criterion 1: torsion obstructions.
    for order in [2u32, 3, 5] {
        specs.push(check("lo", &format!("cyclic:{order}"), "a", order, 0, 2));
    }
    // Criterion 2: the separating trio.
    specs.push(check("bo", "klein", "a", 2, 1, 2));
    specs.push(check("lo", "klein", "a, b", 6, 0, 2));
    specs.push(check("co", "klein", "a, b", 5, 0, 2));
    // Criterion 3 representatives.
    specs.push(check("lo", "free:2", "a, b^-1", 3, 0, 2));
    specs.push(check("bo", "free:2", "a b, b", 3, 1, 2));
    specs.push(check("co", "abelian:3", "a, b c^-1", 3, 0, 2));
    // Criteria 4 and 5 representatives.
    specs.push(check("upp", "klein", "id, a, b", 4, 0, 2));
    specs.push(check("upp", "cyclic:2", "id, a", 4, 0, 2));
    specs.push(check("diffuse", "klein", "id, a, b", 4, 0, 2));
    specs.push(check("diffuse", "heisenberg", "id, x, z", 4, 0, 2));
    // Criterion 6.
    for order in [2u32, 3, 4, 5] {
        specs.push(check(
            "circ",
            &format!("cyclic:{order}"),
            "",
            4,
            0,
            order.div_ceil(2),
        ));
    }
    specs.push(check("circ", "product(cyclic:2,cyclic:2)", "", 4, 0, 2));
    specs.push(check("circ", "product(cyclic:3,cyclic:3)", "", 4, 0, 2));
    // Criterion 8.
    for i in [1u32, 2, 3] {
        specs.push(CommandSpec::Orbit {
            group: "laurent-z".to_owned(),
            cone: "pi".to_owned(),
            i: Some(i),
            phase: Some(0),
            bound: 16,
        });
    }
    // Criterion 9.
    for i in [1u32, 2, 3] {
        specs.push(CommandSpec::Recur {
            group: "laurent-z".to_owned(),
            cone: "pi".to_owned(),
            i: Some(i),
            phase: Some(0),
            g: "poly:0;z:1".to_owned(),
            probes: vec!["poly:1*t^0;z:0".to_owned()],
            n_max: 4 * i,
        });
    }
    specs.push(CommandSpec::Recur {
        group: "laurent-z".to_owned(),
        cone: "p".to_owned(),
        i: None,
        phase: None,
        g: "poly:0;z:1".to_owned(),
        probes: vec!["poly:1*t^0;z:0".to_owned()],
        n_max: 50,
    });
    // Supplementary cone check.
    specs.push(CommandSpec::ConeCheck {
        group: "laurent-z".to_owned(),
        cone: "pi".to_owned(),
        i: Some(2),
        phase: Some(0),
        radius: 2,
        invariance: Some("conradian".to_owned()),
    });

    specs.iter().map(run).collect()
}

/// Single-token mutants with a short description each. Every mutation
/// changes exactly one evidence token.
fn mutants_of(doc: &CertificateDocument) -> Vec<(String, Value)> {
    let base = serde_json::to_value(doc).expect("documents serialize");
    let mut mutants = Vec::new();
    let evidence = &base["evidence"];
    match evidence["kind"].as_str().unwrap_or_default() {
        "sign_search" => {
            let witnesses = evidence["witnesses"].as_array().cloned().unwrap_or_default();
            if !witnesses.is_empty() {
                // Garble the first word token of the first derivation.
                let mut mutant = base.clone();
                if let Some(path) = first_string_path(&mutant["evidence"]["witnesses"][0]["derivation"]) {
                    set_string(
                        &mut mutant["evidence"]["witnesses"][0]["derivation"],
                        &path,
                        "id",
                    );
                    mutants.push(("derivation word replaced by id".to_owned(), mutant));
                }
                // Rewrite the first node tag.
                let mut mutant = base.clone();
                mutant["evidence"]["witnesses"][0]["derivation"][0] = Value::from("cnd");
                mutants.push(("derivation tag rewritten".to_owned(), mutant));
                // Flip one witness sign.
                let mut mutant = base.clone();
                let sign = mutant["evidence"]["witnesses"][0]["signs"][0]
                    .as_i64()
                    .unwrap_or(1);
                mutant["evidence"]["witnesses"][0]["signs"][0] = Value::from(-sign);
                mutants.push(("witness sign flipped".to_owned(), mutant));
            }
            if evidence["signs"].is_array() && !evidence["signs"].as_array().unwrap().is_empty() {
                let mut mutant = base.clone();
                let sign = mutant["evidence"]["signs"][0].as_i64().unwrap_or(1);
                mutant["evidence"]["signs"][0] = Value::from(-sign);
                mutants.push(("certified sign flipped".to_owned(), mutant));
            }
        }
        "preorder" => {
            if let Some(entries) = evidence["assignment"].as_array() {
                if let Some(index) = entries.iter().position(|e| e["value"].as_i64() != Some(0)) {
                    let mut mutant = base.clone();
                    let value = entries[index]["value"].as_i64().unwrap();
                    mutant["evidence"]["assignment"][index]["value"] = Value::from(-value);
                    mutants.push(("assignment value flipped".to_owned(), mutant));

                    let mut mutant = base.clone();
                    let current = entries[index]["triple"][0].as_str().unwrap_or_default();
                    let replacement = if current == "id" { "a" } else { "id" };
                    mutant["evidence"]["assignment"][index]["triple"][0] =
                        Value::from(replacement);
                    mutants.push(("assignment triple component garbled".to_owned(), mutant));
                }
            }
        }
        "orbit" => {
            let mut mutant = base.clone();
            mutant["evidence"]["witnesses"][0]["element"] = Value::from("poly:0;z:0");
            mutants.push(("orbit witness replaced by identity".to_owned(), mutant));
        }
        "recurrence" => {
            if let Some(found) = evidence["found"].as_array() {
                let mut mutant = base.clone();
                if found.is_empty() {
                    mutant["evidence"]["found"] = Value::from(vec![1i64]);
                    mutants.push(("phantom recurrence exponent inserted".to_owned(), mutant));
                } else {
                    let first = found[0].as_i64().unwrap();
                    mutant["evidence"]["found"][0] = Value::from(first + 1);
                    mutants.push(("recurrence exponent shifted".to_owned(), mutant));
                }
            }
        }
        "upp_condition" => {
            if evidence["counterexample"].is_object() {
                let mut mutant = base.clone();
                mutant["evidence"]["counterexample"]["x"][1] = Value::from("id");
                mutants.push(("counterexample element garbled".to_owned(), mutant));
            }
        }
        "extreme_points" => {
            if let Some(points) = evidence["points"].as_array() {
                if !points.is_empty() {
                    let mut mutant = base.clone();
                    mutant["evidence"]["points"][0] = Value::from("a^7");
                    mutants.push(("extreme point garbled".to_owned(), mutant));
                }
            }
        }
        _ => {}
    }
    mutants
}

// Path to the first leaf *base* word: garbling a conjugator can leave a
// derivation valid (conjugation by the identity, say), but the base word
// pins the leaf to the signed input set.
fn first_string_path(value: &Value) -> Option<Vec<usize>> {
    let items = value.as_array()?;
    match items.first().and_then(Value::as_str) {
        Some("gen") => Some(vec![1]),
        Some("conj") => Some(vec![2]),
        Some("mul") | Some("cnd") => {
            for i in [1usize, 2] {
                if let Some(mut rest) = first_string_path(items.get(i)?) {
                    let mut path = vec![i];
                    path.append(&mut rest);
                    return Some(path);
                }
            }
            None
        }
        _ => None,
    }
}

fn set_string(value: &mut Value, path: &[usize], replacement: &str) {
    let mut cursor = value;
    for &step in &path[..path.len() - 1] {
        cursor = &mut cursor[step];
    }
    cursor[path[path.len() - 1]] = Value::from(replacement);
}

#[test]
fn acceptance_10_certificate_replay_and_mutation() {
    let start = Instant::now();
    let documents = emitted_documents();
    assert!(documents.len() >= 20, "document corpus spans the criteria");

    for doc in &documents {
        assert_ne!(doc.verdict, "error", "no diagnostic documents: {}", doc.group);
        verify_document(doc).unwrap_or_else(|e| {
            panic!("emitted document rejected ({} on {}): {e}", doc.property, doc.group)
        });
    }

    let mut mutant_count = 0;
    for doc in &documents {
        for (description, mutated) in mutants_of(doc) {
            let mutated_doc: CertificateDocument =
                serde_json::from_value(mutated).expect("mutants stay well-formed");
            assert!(
                verify_document(&mutated_doc).is_err(),
                "mutant accepted: {description} ({} on {})",
                doc.property,
                doc.group
            );
            mutant_count += 1;
        }
    }
    assert!(mutant_count >= 20, "only {mutant_count} mutants exercised");

    // The binary front end agrees with the library verifier.
    let dir = tempfile::tempdir().unwrap();
    let sample = &documents[3];
    let path = dir.path().join("sample.json");
    std::fs::write(&path, serde_json::to_string_pretty(sample).unwrap()).unwrap();
    let accept = std::process::Command::new(env!("CARGO_BIN_EXE_ordercert"))
        .args(["verify", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(accept.status.code(), Some(0), "binary accepts a good document");

    let (_, mutated) = mutants_of(sample).into_iter().next().expect("sample has mutants");
    let bad_path = dir.path().join("mutant.json");
    std::fs::write(&bad_path, serde_json::to_string_pretty(&mutated).unwrap()).unwrap();
    let reject = std::process::Command::new(env!("CARGO_BIN_EXE_ordercert"))
        .args(["verify", bad_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(reject.status.code(), Some(1), "binary rejects the mutant");

    finish(
        "10 certificate replay",
        start,
        Duration::from_secs(120),
        &format!(
            "{} documents accepted, {mutant_count} mutants rejected",
            documents.len()
        ),
    );
}

#[test]
fn emitted_sign_search_documents_match_module_examples() {
    // The command layer reproduces the library-level verdicts bit for bit.
    let doc = run(&check("bo", "klein", "a", 2, 1, 2));
    assert_eq!(doc.verdict, "obstructed");
    let Evidence::SignSearch { witnesses, .. } = &doc.evidence else {
        panic!("sign search evidence");
    };
    assert_eq!(witnesses.len(), 2);

    let doc = run(&check("circ", "product(cyclic:2,cyclic:2)", "", 4, 0, 2));
    assert_eq!(doc.verdict, "impossible");
    assert_eq!(doc.exit_code(), 1);

    let doc = run(&CommandSpec::Orbit {
        group: "laurent-z".to_owned(),
        cone: "pi".to_owned(),
        i: Some(2),
        phase: Some(0),
        bound: 10,
    });
    let Evidence::Orbit { cones, .. } = &doc.evidence else {
        panic!("orbit evidence");
    };
    assert_eq!(cones.len(), 4);
    assert_eq!(doc.exit_code(), 0);
}
