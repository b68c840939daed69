//! Group and cone spec grammars.
//!
//! Groups: `free:N`, `abelian:N`, `cyclic:N`, `klein`, `heisenberg`,
//! `laurent-z`, `product(spec,spec,...)`. Cones: `standard`, `q`, `qi`,
//! `p`, `pi`, the latter two parameterized by `--i` and `--phase`.

use ordercert_core::cones::{ConeDescriptor, ConeHandle};
use ordercert_core::groups::{Group, GroupKind};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub fn parse_group_spec(spec: &str) -> Result<Group, CliError> {
    let spec = spec.trim();
    let unknown = || CliError::UnknownGroupSpec {
        spec: spec.to_owned(),
    };
    if let Some(inner) = spec.strip_prefix("product(") {
        let inner = inner.strip_suffix(')').ok_or_else(unknown)?;
        let parts = split_top_level(inner);
        if parts.len() < 2 {
            return Err(unknown());
        }
        let factors = parts
            .iter()
            .map(|p| parse_group_spec(p))
            .collect::<Result<Vec<Group>, CliError>>()?;
        return Ok(Group::direct_product(factors)?);
    }
    if let Some(raw) = spec.strip_prefix("free:") {
        let n = raw.parse::<u32>().map_err(|_| unknown())?;
        return Ok(Group::free(n)?);
    }
    if let Some(raw) = spec.strip_prefix("abelian:") {
        let n = raw.parse::<u32>().map_err(|_| unknown())?;
        return Ok(Group::free_abelian(n)?);
    }
    if let Some(raw) = spec.strip_prefix("cyclic:") {
        let n = raw.parse::<u32>().map_err(|_| unknown())?;
        return Ok(Group::finite_cyclic(n)?);
    }
    match spec {
        "klein" => Ok(Group::klein_bottle()),
        "heisenberg" => Ok(Group::heisenberg()),
        "laurent-z" => Ok(Group::laurent_semidirect()),
        _ => Err(unknown()),
    }
}

fn split_top_level(input: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in input.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&input[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&input[start..]);
    parts
}

/// Symbolic cone reference as stored in certificate documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpecJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<u32>,
}

pub fn parse_cone_spec(
    name: &str,
    i: Option<u32>,
    phase: Option<u32>,
    group: &Group,
) -> Result<ConeHandle, CliError> {
    let need_laurent = || -> Result<(), CliError> {
        if group.kind() == &GroupKind::LaurentSemidirect {
            Ok(())
        } else {
            Err(CliError::InvalidParameter {
                name: "cone",
                detail: format!("cone '{name}' lives on laurent-z, not {group}"),
            })
        }
    };
    let need_i = || i.ok_or(CliError::MissingParameter { name: "i" });
    match name {
        "standard" => Ok(ConeHandle::standard(group)?),
        "q" => {
            need_laurent()?;
            Ok(ConeHandle::q_cone())
        }
        "qi" => {
            need_laurent()?;
            Ok(ConeHandle::qi_cone(need_i()?, phase.unwrap_or(0))?)
        }
        "p" => {
            need_laurent()?;
            Ok(ConeHandle::p_cone())
        }
        "pi" => {
            need_laurent()?;
            Ok(ConeHandle::pi_cone(need_i()?, phase.unwrap_or(0))?)
        }
        other => Err(CliError::UnknownCone {
            cone: other.to_owned(),
        }),
    }
}

/// Render a cone handle back into the document grammar. Only the named
/// family is expressible; anything else is an error.
pub fn cone_spec_json(cone: &ConeHandle) -> Result<ConeSpecJson, CliError> {
    let spec = |name: &str, i: Option<u32>, phase: Option<u32>| ConeSpecJson {
        name: name.to_owned(),
        i,
        phase,
    };
    match cone.descriptor() {
        ConeDescriptor::Standard => Ok(spec("standard", None, None)),
        ConeDescriptor::Q { shift: 0 } => Ok(spec("q", None, None)),
        ConeDescriptor::Qi { i, phase } => Ok(spec("qi", Some(*i), Some(*phase))),
        ConeDescriptor::Lex { kernel, quotient, .. } => {
            match (kernel.descriptor(), quotient.descriptor()) {
                (ConeDescriptor::Q { shift: 0 }, ConeDescriptor::Standard) => {
                    Ok(spec("p", None, None))
                }
                (ConeDescriptor::Qi { i, phase }, ConeDescriptor::Standard) => {
                    Ok(spec("pi", Some(*i), Some(*phase)))
                }
                _ => Err(CliError::UnsupportedCone {
                    detail: "lexicographic cone outside the named family".to_owned(),
                }),
            }
        }
        _ => Err(CliError::UnsupportedCone {
            detail: "descriptor outside the named family".to_owned(),
        }),
    }
}

pub fn cone_from_spec_json(spec: &ConeSpecJson, group: &Group) -> Result<ConeHandle, CliError> {
    parse_cone_spec(&spec.name, spec.i, spec.phase, group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_flat_spec() {
        for (spec, display) in [
            ("free:2", "free:2"),
            ("abelian:3", "abelian:3"),
            ("cyclic:5", "cyclic:5"),
            ("klein", "klein"),
            ("heisenberg", "heisenberg"),
            ("laurent-z", "laurent-z"),
        ] {
            let group = parse_group_spec(spec).unwrap();
            assert_eq!(group.to_string(), display);
        }
    }

    #[test]
    fn parses_nested_products() {
        let group = parse_group_spec("product(cyclic:2,product(cyclic:3,free:1))").unwrap();
        assert_eq!(group.to_string(), "product(cyclic:2,product(cyclic:3,free:1))");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_group_spec("dihedral:4").is_err());
        assert!(parse_group_spec("product(cyclic:2)").is_err());
        assert!(parse_group_spec("cyclic:x").is_err());
    }

    #[test]
    fn cone_specs_roundtrip() {
        let laurent = Group::laurent_semidirect();
        for (name, i, phase) in [
            ("q", None, None),
            ("qi", Some(2), Some(1)),
            ("p", None, None),
            ("pi", Some(3), Some(4)),
        ] {
            let cone = parse_cone_spec(name, i, phase, &laurent).unwrap();
            let json = cone_spec_json(&cone).unwrap();
            let rebuilt = cone_from_spec_json(&json, &laurent).unwrap();
            assert_eq!(cone, rebuilt);
        }
    }

    #[test]
    fn qi_needs_its_period() {
        let laurent = Group::laurent_semidirect();
        assert!(matches!(
            parse_cone_spec("qi", None, None, &laurent),
            Err(CliError::MissingParameter { name: "i" })
        ));
    }
}
