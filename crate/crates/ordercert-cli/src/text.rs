//! Element text grammar.
//!
//! Most groups use whitespace-separated generator tokens with optional
//! `^int` exponents, `id` for the identity. The `laurent-z` group uses the
//! pair form `poly:<coeff>*t^<exp>+...;z:<int>` with `poly:0` for the zero
//! polynomial.

use ordercert_core::groups::{Element, Group, GroupKind, LaurentPoly, Payload};

use crate::CliError;

pub fn parse_element(input: &str, group: &Group) -> Result<Element, CliError> {
    let trimmed = input.trim();
    if group.kind() == &GroupKind::LaurentSemidirect {
        return parse_laurent(trimmed, group);
    }
    if trimmed.is_empty() || trimmed == "id" {
        return Ok(group.identity());
    }
    if trimmed.starts_with("poly:") {
        return Err(CliError::WrongSyntaxForGroup {
            group: group.to_string(),
        });
    }
    let mut word = Vec::new();
    for token in trimmed.split_whitespace() {
        let (label, exponent) = match token.split_once('^') {
            Some((label, raw)) => {
                let exponent = raw.parse::<i64>().map_err(|_| CliError::MalformedExponent {
                    token: token.to_owned(),
                })?;
                (label, exponent)
            }
            None => (token, 1),
        };
        let index = group
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CliError::UnknownGenerator {
                token: label.to_owned(),
                group: group.to_string(),
            })?;
        word.push((index, exponent));
    }
    Ok(Element::from_generator_word(group, &word))
}

fn parse_laurent(input: &str, group: &Group) -> Result<Element, CliError> {
    if input.is_empty() || input == "id" {
        return Ok(group.identity());
    }
    let body = input
        .strip_prefix("poly:")
        .ok_or_else(|| CliError::WrongSyntaxForGroup {
            group: group.to_string(),
        })?;
    let (poly_part, z_part) = body.split_once(";z:").ok_or_else(|| CliError::MalformedPoly {
        detail: "expected ';z:<int>' suffix".to_owned(),
    })?;
    let z = z_part.parse::<i64>().map_err(|_| CliError::MalformedPoly {
        detail: format!("bad z exponent '{z_part}'"),
    })?;
    let poly = parse_poly(poly_part)?;
    Ok(Element::from_payload(group.clone(), Payload::Laurent { poly, z })
        .expect("laurent payload shape"))
}

fn parse_poly(input: &str) -> Result<LaurentPoly, CliError> {
    if input == "0" || input.is_empty() {
        return Ok(LaurentPoly::zero());
    }
    let mut terms = Vec::new();
    for monomial in input.split('+') {
        let (coeff_raw, exp_raw) =
            monomial
                .split_once("*t^")
                .ok_or_else(|| CliError::MalformedPoly {
                    detail: format!("bad monomial '{monomial}', expected '<coeff>*t^<exp>'"),
                })?;
        let coeff = coeff_raw.parse::<i64>().map_err(|_| CliError::MalformedPoly {
            detail: format!("bad coefficient '{coeff_raw}'"),
        })?;
        let exp = exp_raw.parse::<i64>().map_err(|_| CliError::MalformedPoly {
            detail: format!("bad exponent '{exp_raw}'"),
        })?;
        terms.push((exp, coeff));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn render_element(element: &Element) -> String {
    if let Payload::Laurent { poly, z } = element.payload() {
        return format!("poly:{poly};z:{z}");
    }
    if element.is_identity() {
        return "id".to_owned();
    }
    let labels = element.group().labels();
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for (index, exponent) in element.generator_word() {
        match runs.last_mut() {
            Some((last, total)) if *last == index => *total += exponent,
            _ => runs.push((index, exponent)),
        }
    }
    let tokens: Vec<String> = runs
        .into_iter()
        .filter(|&(_, e)| e != 0)
        .map(|(i, e)| {
            if e == 1 {
                labels[i].clone()
            } else {
                format!("{}^{}", labels[i], e)
            }
        })
        .collect();
    if tokens.is_empty() {
        "id".to_owned()
    } else {
        tokens.join(" ")
    }
}
