//! Positive-cone membership oracles with symbolic descriptors, conjugation
//! orbits, cone axiom and invariance checks on balls, and recurrence window
//! checks.
//!
//! A cone handle answers membership queries through its descriptor. The
//! descriptors for the Laurent family (`Q`, `Q_i` and their lexicographic
//! extensions `P`, `P_i`) conjugate exactly: conjugation by `z^m` shifts the
//! `Q` threshold by `m`, and shifts the `Q_i` phase by `m` mod `2i`. That
//! makes orbit counts and recurrence windows exactly computable instead of
//! ball-approximate.

use std::collections::BTreeSet;
use std::fmt;

use crate::groups::{Element, Group, GroupError, GroupKind, Homomorphism, LaurentPoly, Payload};

/// Exponent search cap for the positive-power oracle of [`ConeDescriptor::Cyclic`].
const CYCLIC_POWER_CAP: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeDescriptor {
    /// Lexicographic order on a free abelian group: first nonzero exponent
    /// positive.
    Standard,
    /// Leading-term cone on the polynomial part of `laurent-z`: positive
    /// leading coefficient at exponents `>= shift`, negative below.
    Q { shift: i64 },
    /// Periodic leading-term cone on the polynomial part of `laurent-z`:
    /// blocks of `i` consecutive leading exponents alternate the required
    /// coefficient sign, with period `2i`. `phase` is the block offset.
    Qi { i: u32, phase: u32 },
    /// Lexicographic cone from a short exact sequence: positive quotient
    /// image, or trivial image and positive kernel part.
    Lex {
        quotient_map: Homomorphism,
        kernel: Box<ConeHandle>,
        quotient: Box<ConeHandle>,
    },
    /// Positive powers of a fixed non-identity generator.
    Cyclic { generator: Element },
    /// Explicit finite set, intended to classify a ball of the given radius.
    Finite {
        members: BTreeSet<Element>,
        radius: u32,
    },
}

/// A positive-cone membership oracle with a symbolic descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeHandle {
    owner: Group,
    descriptor: ConeDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeError {
    OwnerMismatch { expected: String, found: String },
    WrongGroupKind { expected: &'static str, found: String },
    /// Membership queried outside the cone's domain (the kernel cones `Q`,
    /// `Q_i` only classify polynomial-part elements).
    KernelOnly { element: String },
    IdentityGenerator,
    IdentityInCone,
    InvalidParameter(String),
    ProbeNotPositive { index: usize },
    OrbitBoundExceeded { bound: u32 },
    NoDistinguishingWitness { first: usize, second: usize },
    Group(GroupError),
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::OwnerMismatch { expected, found } => {
                write!(f, "cone owner mismatch: expected {expected}, found {found}")
            }
            ConeError::WrongGroupKind { expected, found } => {
                write!(f, "cone requires a {expected} group, found {found}")
            }
            ConeError::KernelOnly { element } => {
                write!(f, "membership of {element} queried outside the cone domain")
            }
            ConeError::IdentityGenerator => write!(f, "cyclic cone generator is the identity"),
            ConeError::IdentityInCone => write!(f, "a cone never contains the identity"),
            ConeError::InvalidParameter(msg) => write!(f, "invalid cone parameter: {msg}"),
            ConeError::ProbeNotPositive { index } => {
                write!(f, "probe {index} is not a member of the cone")
            }
            ConeError::OrbitBoundExceeded { bound } => {
                write!(f, "orbit not closed within {bound} conjugation steps")
            }
            ConeError::NoDistinguishingWitness { first, second } => {
                write!(f, "no witness separating orbit cones {first} and {second}")
            }
            ConeError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ConeError {}

impl From<GroupError> for ConeError {
    fn from(e: GroupError) -> Self {
        ConeError::Group(e)
    }
}

impl ConeHandle {
    /// Lexicographic cone on a free abelian group.
    pub fn standard(owner: &Group) -> Result<ConeHandle, ConeError> {
        match owner.kind() {
            GroupKind::FreeAbelian(_) => Ok(ConeHandle {
                owner: owner.clone(),
                descriptor: ConeDescriptor::Standard,
            }),
            _ => Err(ConeError::WrongGroupKind {
                expected: "free abelian",
                found: owner.to_string(),
            }),
        }
    }

    /// The leading-term cone on the polynomial part of `laurent-z`.
    pub fn q_cone() -> ConeHandle {
        ConeHandle {
            owner: Group::laurent_semidirect(),
            descriptor: ConeDescriptor::Q { shift: 0 },
        }
    }

    /// Periodic cone on the polynomial part of `laurent-z`; `phase` is
    /// reduced mod `2i`.
    pub fn qi_cone(i: u32, phase: u32) -> Result<ConeHandle, ConeError> {
        if i == 0 {
            return Err(ConeError::InvalidParameter("qi cone needs i >= 1".into()));
        }
        Ok(ConeHandle {
            owner: Group::laurent_semidirect(),
            descriptor: ConeDescriptor::Qi {
                i,
                phase: phase % (2 * i),
            },
        })
    }

    /// Lexicographic cone from a quotient map, a cone on the kernel, and a
    /// cone on the quotient.
    pub fn lex(
        quotient_map: Homomorphism,
        kernel: ConeHandle,
        quotient: ConeHandle,
    ) -> Result<ConeHandle, ConeError> {
        if kernel.owner() != quotient_map.source() {
            return Err(ConeError::OwnerMismatch {
                expected: quotient_map.source().to_string(),
                found: kernel.owner().to_string(),
            });
        }
        if quotient.owner() != quotient_map.target() {
            return Err(ConeError::OwnerMismatch {
                expected: quotient_map.target().to_string(),
                found: quotient.owner().to_string(),
            });
        }
        Ok(ConeHandle {
            owner: quotient_map.source().clone(),
            descriptor: ConeDescriptor::Lex {
                quotient_map,
                kernel: Box::new(kernel),
                quotient: Box::new(quotient),
            },
        })
    }

    /// The lexicographic cone on `laurent-z` over the `Q` kernel cone.
    pub fn p_cone() -> ConeHandle {
        let quotient_target = Group::free_abelian(1).expect("rank 1");
        ConeHandle::lex(
            Homomorphism::laurent_z_exponent(),
            ConeHandle::q_cone(),
            ConeHandle::standard(&quotient_target).expect("free abelian"),
        )
        .expect("owners line up")
    }

    /// The lexicographic cone on `laurent-z` over the `Q_i` kernel cone.
    pub fn pi_cone(i: u32, phase: u32) -> Result<ConeHandle, ConeError> {
        let quotient_target = Group::free_abelian(1).expect("rank 1");
        ConeHandle::lex(
            Homomorphism::laurent_z_exponent(),
            ConeHandle::qi_cone(i, phase)?,
            ConeHandle::standard(&quotient_target).expect("free abelian"),
        )
    }

    /// Positive powers of a fixed non-identity element.
    pub fn cyclic(generator: Element) -> Result<ConeHandle, ConeError> {
        if generator.is_identity() {
            return Err(ConeError::IdentityGenerator);
        }
        Ok(ConeHandle {
            owner: generator.group().clone(),
            descriptor: ConeDescriptor::Cyclic { generator },
        })
    }

    /// Explicit finite membership set.
    pub fn finite(
        owner: &Group,
        members: BTreeSet<Element>,
        radius: u32,
    ) -> Result<ConeHandle, ConeError> {
        for m in &members {
            if m.group() != owner {
                return Err(ConeError::OwnerMismatch {
                    expected: owner.to_string(),
                    found: m.group().to_string(),
                });
            }
            if m.is_identity() {
                return Err(ConeError::IdentityInCone);
            }
        }
        Ok(ConeHandle {
            owner: owner.clone(),
            descriptor: ConeDescriptor::Finite { members, radius },
        })
    }

    pub fn owner(&self) -> &Group {
        &self.owner
    }

    pub fn descriptor(&self) -> &ConeDescriptor {
        &self.descriptor
    }

    /// Whether the descriptor classifies this element at all. The kernel
    /// cones `Q`, `Q_i` only classify elements with trivial z-part.
    pub fn domain_contains(&self, g: &Element) -> bool {
        match &self.descriptor {
            ConeDescriptor::Q { .. } | ConeDescriptor::Qi { .. } => {
                matches!(g.payload(), Payload::Laurent { z: 0, .. })
            }
            _ => true,
        }
    }

    /// Decide membership of `g`.
    pub fn membership(&self, g: &Element) -> Result<bool, ConeError> {
        if g.group() != &self.owner {
            return Err(ConeError::OwnerMismatch {
                expected: self.owner.to_string(),
                found: g.group().to_string(),
            });
        }
        match &self.descriptor {
            ConeDescriptor::Standard => {
                let Payload::Vector(v) = g.payload() else {
                    unreachable!("standard cone owner is free abelian")
                };
                Ok(v.iter().find(|&&e| e != 0).is_some_and(|&e| e > 0))
            }
            ConeDescriptor::Q { shift } => {
                let (exp, coeff) = match self.leading_term(g)? {
                    Some(t) => t,
                    None => return Ok(false),
                };
                Ok(if exp >= *shift { coeff > 0 } else { coeff < 0 })
            }
            ConeDescriptor::Qi { i, phase } => {
                let (exp, coeff) = match self.leading_term(g)? {
                    Some(t) => t,
                    None => return Ok(false),
                };
                let block = (exp - i64::from(*phase)).div_euclid(i64::from(*i));
                Ok(if block.rem_euclid(2) == 0 {
                    coeff > 0
                } else {
                    coeff < 0
                })
            }
            ConeDescriptor::Lex {
                quotient_map,
                kernel,
                quotient,
            } => {
                let image = quotient_map.apply(g)?;
                if image.is_identity() {
                    kernel.membership(g)
                } else {
                    quotient.membership(&image)
                }
            }
            ConeDescriptor::Cyclic { generator } => {
                if g.is_identity() {
                    return Ok(false);
                }
                let mut acc = generator.clone();
                for _ in 0..CYCLIC_POWER_CAP {
                    if &acc == g {
                        return Ok(true);
                    }
                    if acc.is_identity() {
                        return Ok(false);
                    }
                    acc = acc.multiply(generator).expect("same owner");
                }
                Ok(false)
            }
            ConeDescriptor::Finite { members, .. } => Ok(members.contains(g)),
        }
    }

    fn leading_term(&self, g: &Element) -> Result<Option<(i64, i64)>, ConeError> {
        match g.payload() {
            Payload::Laurent { poly, z: 0 } => Ok(poly.leading_term()),
            _ => Err(ConeError::KernelOnly {
                element: format!("{:?}", g.payload()),
            }),
        }
    }

    /// The conjugated cone `g P g^-1`: membership of `h` in the result is
    /// membership of `g^-1 h g` in `self`. Symbolic descriptors conjugate
    /// exactly.
    pub fn conjugated(&self, g: &Element) -> Result<ConeHandle, ConeError> {
        if g.group() != &self.owner {
            return Err(ConeError::OwnerMismatch {
                expected: self.owner.to_string(),
                found: g.group().to_string(),
            });
        }
        let descriptor = match &self.descriptor {
            // Conjugation is trivial on an abelian owner.
            ConeDescriptor::Standard => ConeDescriptor::Standard,
            ConeDescriptor::Q { shift } => {
                let m = laurent_z_part(g);
                ConeDescriptor::Q { shift: shift + m }
            }
            ConeDescriptor::Qi { i, phase } => {
                let m = laurent_z_part(g);
                let phase = (i64::from(*phase) + m).rem_euclid(2 * i64::from(*i)) as u32;
                ConeDescriptor::Qi { i: *i, phase }
            }
            ConeDescriptor::Lex {
                quotient_map,
                kernel,
                quotient,
            } => ConeDescriptor::Lex {
                quotient_map: quotient_map.clone(),
                kernel: Box::new(kernel.conjugated(g)?),
                quotient: Box::new(quotient.conjugated(&quotient_map.apply(g)?)?),
            },
            ConeDescriptor::Cyclic { generator } => ConeDescriptor::Cyclic {
                generator: generator.conjugate_by(g)?,
            },
            ConeDescriptor::Finite { members, radius } => {
                let conjugated: Result<BTreeSet<Element>, GroupError> =
                    members.iter().map(|m| m.conjugate_by(g)).collect();
                ConeDescriptor::Finite {
                    members: conjugated?,
                    radius: *radius,
                }
            }
        };
        Ok(ConeHandle {
            owner: self.owner.clone(),
            descriptor,
        })
    }
}

fn laurent_z_part(g: &Element) -> i64 {
    match g.payload() {
        Payload::Laurent { z, .. } => *z,
        _ => unreachable!("owner checked as laurent-z"),
    }
}

/// Outcome of closing a cone under conjugation.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    cones: Vec<ConeHandle>,
    witnesses: Vec<OrbitWitness>,
}

/// An element belonging to exactly one of two orbit cones.
#[derive(Debug, Clone)]
pub struct OrbitWitness {
    pub first: usize,
    pub second: usize,
    pub element: Element,
    /// True when the element is a member of `first` (and so not of
    /// `second`).
    pub in_first: bool,
}

impl OrbitReport {
    pub fn cones(&self) -> &[ConeHandle] {
        &self.cones
    }

    pub fn witnesses(&self) -> &[OrbitWitness] {
        &self.witnesses
    }
}

/// Close `cone` under conjugation by the given elements, up to `bound`
/// closure steps, and separate every pair of distinct orbit cones by a
/// witness element.
pub fn cone_orbit(
    cone: &ConeHandle,
    conjugators: &[Element],
    bound: u32,
) -> Result<OrbitReport, ConeError> {
    let mut cones = vec![cone.clone()];
    let mut frontier = vec![cone.clone()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for c in &frontier {
            for g in conjugators {
                let conjugated = c.conjugated(g)?;
                if !cones.contains(&conjugated) {
                    cones.push(conjugated.clone());
                    next.push(conjugated);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    // Closure must hold for every cone found, not just the explored prefix.
    for c in &cones {
        for g in conjugators {
            if !cones.contains(&c.conjugated(g)?) {
                return Err(ConeError::OrbitBoundExceeded { bound });
            }
        }
    }

    let candidates = witness_candidates(&cones)?;
    let mut witnesses = Vec::new();
    for i in 0..cones.len() {
        for j in (i + 1)..cones.len() {
            let mut found = None;
            for candidate in &candidates {
                let in_first = match cones[i].membership(candidate) {
                    Ok(v) => v,
                    Err(ConeError::KernelOnly { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let in_second = match cones[j].membership(candidate) {
                    Ok(v) => v,
                    Err(ConeError::KernelOnly { .. }) => continue,
                    Err(e) => return Err(e),
                };
                if in_first != in_second {
                    found = Some(OrbitWitness {
                        first: i,
                        second: j,
                        element: candidate.clone(),
                        in_first,
                    });
                    break;
                }
            }
            match found {
                Some(w) => witnesses.push(w),
                None => {
                    return Err(ConeError::NoDistinguishingWitness {
                        first: i,
                        second: j,
                    })
                }
            }
        }
    }
    Ok(OrbitReport { cones, witnesses })
}

/// Candidate separating elements: a small ball, plus signed monomials when
/// the descriptors carry Laurent-family rules.
fn witness_candidates(cones: &[ConeHandle]) -> Result<Vec<Element>, ConeError> {
    let owner = cones[0].owner().clone();
    let mut candidates: Vec<Element> = owner.ball(2)?.iter().cloned().collect();
    let mut monomial_span: i64 = 0;
    for cone in cones {
        monomial_span = monomial_span.max(descriptor_span(cone.descriptor()));
    }
    if monomial_span > 0 && owner.kind() == &GroupKind::LaurentSemidirect {
        for exp in -monomial_span..=monomial_span {
            for coeff in [1i64, -1] {
                let payload = Payload::Laurent {
                    poly: LaurentPoly::monomial(exp, coeff),
                    z: 0,
                };
                candidates.push(Element::from_payload(owner.clone(), payload)?);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    Ok(candidates)
}

fn descriptor_span(descriptor: &ConeDescriptor) -> i64 {
    match descriptor {
        ConeDescriptor::Q { shift } => shift.abs() + 2,
        ConeDescriptor::Qi { i, .. } => 2 * i64::from(*i) + 2,
        ConeDescriptor::Lex {
            kernel, quotient, ..
        } => descriptor_span(kernel.descriptor()).max(descriptor_span(quotient.descriptor())),
        _ => 0,
    }
}

/// Window check for recurrence of a cone along conjugation by powers of `g`.
#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub g: Element,
    pub probes: Vec<Element>,
    /// All `n` in `1..=exhausted_at` for which every conjugated probe
    /// `g^-n h g^n` is a member.
    pub found: Vec<i64>,
    pub exhausted_at: i64,
}

/// Check which conjugation exponents keep every probe positive.
///
/// Every probe must be a member of the cone. An empty `found` with the
/// window exhausted is bounded evidence of non-recurrence, not a proof;
/// see [`qcone_nonrecurrence_bound`] for the decidable special case.
pub fn recurrence_check(
    cone: &ConeHandle,
    g: &Element,
    probes: &[Element],
    n_max: u32,
) -> Result<RecurrenceReport, ConeError> {
    for (index, probe) in probes.iter().enumerate() {
        if !cone.membership(probe)? {
            return Err(ConeError::ProbeNotPositive { index });
        }
    }
    let g_inv = g.inverse();
    let mut neg = g.group().identity();
    let mut pos = g.group().identity();
    let mut found = Vec::new();
    for n in 1..=i64::from(n_max) {
        neg = neg.multiply(&g_inv)?;
        pos = pos.multiply(g)?;
        let mut all = true;
        for probe in probes {
            let conjugated = neg.multiply(probe)?.multiply(&pos)?;
            if !cone.membership(&conjugated)? {
                all = false;
                break;
            }
        }
        if all {
            found.push(n);
        }
    }
    Ok(RecurrenceReport {
        g: g.clone(),
        probes: probes.to_vec(),
        found,
        exhausted_at: i64::from(n_max),
    })
}

/// Closed-form non-recurrence for the lexicographic cone over `Q`: when `g`
/// has nonzero z-part and some polynomial-part probe has a leading term that
/// the shift action eventually misclassifies forever, no conjugation
/// exponent beyond the returned bound keeps all probes positive. `None`
/// means the closed form does not apply.
pub fn qcone_nonrecurrence_bound(
    cone: &ConeHandle,
    g: &Element,
    probes: &[Element],
) -> Option<i64> {
    let ConeDescriptor::Lex { kernel, .. } = cone.descriptor() else {
        return None;
    };
    let ConeDescriptor::Q { shift } = kernel.descriptor() else {
        return None;
    };
    let k = match g.payload() {
        Payload::Laurent { z, .. } => *z,
        _ => return None,
    };
    if k == 0 {
        return None;
    }
    let mut bound: Option<i64> = None;
    for probe in probes {
        let Payload::Laurent { poly, z } = probe.payload() else {
            return None;
        };
        if *z != 0 {
            // Nonzero z-part is preserved by conjugation: positive z-part
            // probes stay positive, negative ones never are.
            if *z < 0 {
                bound = Some(0);
            }
            continue;
        }
        let (exp, coeff) = poly.leading_term()?;
        // Conjugating by g^-n shifts the probe's leading exponent by -n*k.
        let fate = if k > 0 {
            if coeff > 0 {
                // Membership needs exp - n*k >= shift.
                Some((exp - shift).div_euclid(k))
            } else {
                None
            }
        } else if coeff < 0 {
            // Membership needs exp - n*k < shift, which fails for large n.
            Some((shift - exp - 1).div_euclid(-k).max(0))
        } else {
            None
        };
        if let Some(b) = fate {
            bound = Some(bound.map_or(b, |acc: i64| acc.min(b)));
        }
    }
    bound.map(|b| b.max(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeAxiomViolation {
    IdentityMember,
    /// `g` and `g^-1` are both members or both non-members.
    Trichotomy { element: Element, member: bool },
    /// A product of members left the cone.
    ProductEscape {
        left: Element,
        right: Element,
        product: Element,
    },
}

#[derive(Debug, Clone)]
pub struct ConeCheckReport {
    pub violation: Option<ConeAxiomViolation>,
    pub checked_elements: usize,
    pub checked_products: usize,
}

impl ConeCheckReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustive trichotomy check on the ball plus product closure for pairs
/// whose product stays in the ball. Kernel-restricted descriptors are
/// checked on the intersection of the ball with their domain.
pub fn cone_axioms_check(cone: &ConeHandle, radius: u32) -> Result<ConeCheckReport, ConeError> {
    let ball = cone.owner().ball(radius)?;
    let domain: Vec<&Element> = ball.iter().filter(|g| cone.domain_contains(g)).collect();
    let mut checked_elements = 0;
    if cone.membership(&cone.owner().identity())? {
        return Ok(ConeCheckReport {
            violation: Some(ConeAxiomViolation::IdentityMember),
            checked_elements,
            checked_products: 0,
        });
    }
    let mut positives = Vec::new();
    for g in &domain {
        if g.is_identity() {
            continue;
        }
        checked_elements += 1;
        let member = cone.membership(g)?;
        let inverse_member = cone.membership(&g.inverse())?;
        if member == inverse_member {
            return Ok(ConeCheckReport {
                violation: Some(ConeAxiomViolation::Trichotomy {
                    element: (*g).clone(),
                    member,
                }),
                checked_elements,
                checked_products: 0,
            });
        }
        if member {
            positives.push((*g).clone());
        }
    }
    let mut checked_products = 0;
    for g in &positives {
        for h in &positives {
            let product = g.multiply(h)?;
            if !ball.contains(&product) {
                continue;
            }
            checked_products += 1;
            if !cone.membership(&product)? {
                return Ok(ConeCheckReport {
                    violation: Some(ConeAxiomViolation::ProductEscape {
                        left: g.clone(),
                        right: h.clone(),
                        product,
                    }),
                    checked_elements,
                    checked_products,
                });
            }
        }
    }
    Ok(ConeCheckReport {
        violation: None,
        checked_elements,
        checked_products,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvarianceMode {
    /// `h^-1 g h` stays positive for every ball element `h`.
    Bi,
    /// `h^-1 g h^2` stays positive for every positive ball element `h`.
    Conradian,
}

#[derive(Debug, Clone)]
pub struct InvarianceViolation {
    pub positive: Element,
    pub conjugator: Element,
    pub image: Element,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub mode: InvarianceMode,
    pub violation: Option<InvarianceViolation>,
    pub checked_pairs: usize,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check conjugation invariance of the cone on a ball, in the given mode.
pub fn cone_invariance_check(
    cone: &ConeHandle,
    radius: u32,
    mode: InvarianceMode,
) -> Result<InvarianceReport, ConeError> {
    let ball = cone.owner().ball(radius)?;
    let mut positives = Vec::new();
    for g in ball.iter().filter(|g| cone.domain_contains(g)) {
        if !g.is_identity() && cone.membership(g)? {
            positives.push(g.clone());
        }
    }
    let conjugators: Vec<Element> = match mode {
        InvarianceMode::Bi => ball.iter().cloned().collect(),
        InvarianceMode::Conradian => positives.clone(),
    };
    let mut checked_pairs = 0;
    for g in &positives {
        for h in &conjugators {
            let image = match mode {
                InvarianceMode::Bi => g.conjugate_by(&h.inverse())?,
                InvarianceMode::Conradian => {
                    h.inverse().multiply(g)?.multiply(h)?.multiply(h)?
                }
            };
            checked_pairs += 1;
            if !cone.membership(&image)? {
                return Ok(InvarianceReport {
                    mode,
                    violation: Some(InvarianceViolation {
                        positive: g.clone(),
                        conjugator: h.clone(),
                        image,
                    }),
                    checked_pairs,
                });
            }
        }
    }
    Ok(InvarianceReport {
        mode,
        violation: None,
        checked_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_element(terms: &[(i64, i64)], z: i64) -> Element {
        Element::from_payload(
            Group::laurent_semidirect(),
            Payload::Laurent {
                poly: LaurentPoly::from_terms(terms.iter().copied()),
                z,
            },
        )
        .unwrap()
    }

    #[test]
    fn q_cone_leading_term_rule() {
        let q = ConeHandle::q_cone();
        // 2t^3 - t: leading exponent 3 >= 0 with coefficient 2 > 0.
        assert!(q.membership(&poly_element(&[(1, -1), (3, 2)], 0)).unwrap());
        // -t^-1 + t^-5: leading exponent -1 < 0 with coefficient -1 < 0.
        assert!(q
            .membership(&poly_element(&[(-5, 1), (-1, -1)], 0))
            .unwrap());
        // The zero polynomial is the identity.
        assert!(!q.membership(&poly_element(&[], 0)).unwrap());
    }

    #[test]
    fn qi_cone_alternating_blocks() {
        let q2 = ConeHandle::qi_cone(2, 0).unwrap();
        // t^0: block 0 is even, so positive coefficients are members.
        assert!(q2.membership(&poly_element(&[(0, 1)], 0)).unwrap());
        // t^2: block 1 is odd, so a positive coefficient is rejected.
        assert!(!q2.membership(&poly_element(&[(2, 1)], 0)).unwrap());
        assert!(q2.membership(&poly_element(&[(2, -1)], 0)).unwrap());
    }

    #[test]
    fn kernel_cones_reject_nonkernel_queries() {
        let q = ConeHandle::q_cone();
        assert!(matches!(
            q.membership(&poly_element(&[(0, 1)], 1)),
            Err(ConeError::KernelOnly { .. })
        ));
    }

    #[test]
    fn lex_cone_rules() {
        let p = ConeHandle::p_cone();
        // Any positive z-part is a member.
        assert!(p.membership(&poly_element(&[(5, -7)], 1)).unwrap());
        // Trivial z-part falls through to the kernel cone.
        assert!(p.membership(&poly_element(&[(1, 1)], 0)).unwrap());
        assert!(!p
            .membership(&Group::laurent_semidirect().identity())
            .unwrap());
    }

    #[test]
    fn conjugating_qi_by_z_shifts_phase() {
        let q2 = ConeHandle::qi_cone(2, 0).unwrap();
        let z = Group::laurent_semidirect().generator(1);
        let shifted = q2.conjugated(&z).unwrap();
        assert_eq!(shifted, ConeHandle::qi_cone(2, 1).unwrap());
        // t^0 is in phase 0; its conjugate t^1 is in the shifted cone.
        assert!(q2.membership(&poly_element(&[(0, 1)], 0)).unwrap());
        assert!(shifted.membership(&poly_element(&[(1, 1)], 0)).unwrap());
    }

    #[test]
    fn conjugation_by_identity_is_pointwise_trivial() {
        let p2 = ConeHandle::pi_cone(2, 0).unwrap();
        let id = Group::laurent_semidirect().identity();
        let conj = p2.conjugated(&id).unwrap();
        for g in Group::laurent_semidirect().ball(3).unwrap().iter() {
            assert_eq!(conj.membership(g).unwrap(), p2.membership(g).unwrap());
        }
    }

    #[test]
    fn conjugation_action_law_on_ball() {
        let p2 = ConeHandle::pi_cone(2, 0).unwrap();
        let laurent = Group::laurent_semidirect();
        let z = laurent.generator(1);
        let twice = p2.conjugated(&z).unwrap().conjugated(&z).unwrap();
        let by_square = p2.conjugated(&z.pow(2)).unwrap();
        for g in laurent.ball(3).unwrap().iter() {
            assert_eq!(twice.membership(g).unwrap(), by_square.membership(g).unwrap());
        }
    }

    #[test]
    fn orbit_sizes_are_twice_the_period() {
        let z = Group::laurent_semidirect().generator(1);
        for i in [1u32, 3] {
            let cone = ConeHandle::pi_cone(i, 0).unwrap();
            let report = cone_orbit(&cone, std::slice::from_ref(&z), 20).unwrap();
            assert_eq!(report.cones().len(), 2 * i as usize);
            let pairs = report.cones().len() * (report.cones().len() - 1) / 2;
            assert_eq!(report.witnesses().len(), pairs);
            for w in report.witnesses() {
                let first = report.cones()[w.first].membership(&w.element).unwrap();
                let second = report.cones()[w.second].membership(&w.element).unwrap();
                assert_ne!(first, second);
                assert_eq!(first, w.in_first);
            }
        }
    }

    #[test]
    fn abelian_cone_orbit_is_a_point() {
        let z2 = Group::free_abelian(2).unwrap();
        let cone = ConeHandle::standard(&z2).unwrap();
        let report = cone_orbit(&cone, &z2.generators(), 5).unwrap();
        assert_eq!(report.cones().len(), 1);
    }

    #[test]
    fn p_cone_orbit_never_closes() {
        let z = Group::laurent_semidirect().generator(1);
        let err = cone_orbit(&ConeHandle::p_cone(), &[z], 10).unwrap_err();
        assert_eq!(err, ConeError::OrbitBoundExceeded { bound: 10 });
    }

    #[test]
    fn recurrence_window_of_p1() {
        let p1 = ConeHandle::pi_cone(1, 0).unwrap();
        let z = Group::laurent_semidirect().generator(1);
        let probe = poly_element(&[(0, 1)], 0);
        let report = recurrence_check(&p1, &z, &[probe], 10).unwrap();
        assert_eq!(report.found, vec![2, 4, 6, 8, 10]);
    }

    #[test]
    fn limit_cone_never_recurs_on_constant_probe() {
        let p = ConeHandle::p_cone();
        let z = Group::laurent_semidirect().generator(1);
        let probe = poly_element(&[(0, 1)], 0);
        let report = recurrence_check(&p, &z, std::slice::from_ref(&probe), 50).unwrap();
        assert!(report.found.is_empty());
        assert_eq!(qcone_nonrecurrence_bound(&p, &z, &[probe]), Some(0));
    }

    #[test]
    fn closed_form_covers_inverse_direction_shifts() {
        // Conjugating by z^-1 pushes leading exponents up, so a probe with
        // a negative leading coefficient eventually fails instead.
        let p = ConeHandle::p_cone();
        let z_inv = Group::laurent_semidirect().generator(1).inverse();
        let probe = poly_element(&[(-1, -1)], 0);
        assert!(p.membership(&probe).unwrap());
        let report = recurrence_check(&p, &z_inv, &[probe.clone()], 20).unwrap();
        assert!(report.found.is_empty());
        assert_eq!(qcone_nonrecurrence_bound(&p, &z_inv, &[probe]), Some(0));
    }

    #[test]
    fn conjugation_by_identity_recurs_everywhere() {
        let p1 = ConeHandle::pi_cone(1, 0).unwrap();
        let id = Group::laurent_semidirect().identity();
        let probe = poly_element(&[(0, 1)], 0);
        let report = recurrence_check(&p1, &id, &[probe], 6).unwrap();
        assert_eq!(report.found, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn probe_outside_cone_is_rejected() {
        let p1 = ConeHandle::pi_cone(1, 0).unwrap();
        let z = Group::laurent_semidirect().generator(1);
        let bad = poly_element(&[(0, -1)], 0);
        assert_eq!(
            recurrence_check(&p1, &z, &[bad], 5).unwrap_err(),
            ConeError::ProbeNotPositive { index: 0 }
        );
    }

    #[test]
    fn standard_cone_satisfies_axioms() {
        let z2 = Group::free_abelian(2).unwrap();
        let report = cone_axioms_check(&ConeHandle::standard(&z2).unwrap(), 3).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn p2_satisfies_axioms_on_a_ball() {
        let report = cone_axioms_check(&ConeHandle::pi_cone(2, 0).unwrap(), 2).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn incomplete_finite_cone_fails_axioms() {
        let f = Group::free(1).unwrap();
        let a = f.generator(0);
        let cone =
            ConeHandle::finite(&f, [a.clone()].into_iter().collect(), 2).unwrap();
        let report = cone_axioms_check(&cone, 2).unwrap();
        // a^2 is unclassified: neither it nor its inverse is a member.
        assert_eq!(
            report.violation,
            Some(ConeAxiomViolation::Trichotomy {
                element: a.pow(-2),
                member: false,
            })
        );
    }

    fn klein_lex_cone() -> ConeHandle {
        let klein = Group::klein_bottle();
        let hom = Homomorphism::klein_b_exponent();
        let kernel = ConeHandle::cyclic(klein.generator(0)).unwrap();
        let quotient = ConeHandle::standard(hom.target()).unwrap();
        ConeHandle::lex(hom, kernel, quotient).unwrap()
    }

    #[test]
    fn klein_lex_cone_is_conradian_but_not_bi_invariant() {
        let cone = klein_lex_cone();
        assert!(cone_axioms_check(&cone, 3).unwrap().passed());
        let bi = cone_invariance_check(&cone, 3, InvarianceMode::Bi).unwrap();
        let violation = bi.violation.expect("conjugation by b flips a");
        assert!(!cone.membership(&violation.image).unwrap());
        // Direct check of the defining failure: b^-1 a b = a^-1.
        let klein = Group::klein_bottle();
        let a = klein.generator(0);
        let b = klein.generator(1);
        let conj = a.conjugate_by(&b.inverse()).unwrap();
        assert_eq!(conj, a.inverse());
        assert!(!cone.membership(&conj).unwrap());
        let conradian = cone_invariance_check(&cone, 3, InvarianceMode::Conradian).unwrap();
        assert!(conradian.passed());
    }

    #[test]
    fn abelian_cone_is_bi_invariant() {
        let z2 = Group::free_abelian(2).unwrap();
        let cone = ConeHandle::standard(&z2).unwrap();
        let report = cone_invariance_check(&cone, 3, InvarianceMode::Bi).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn qi_converges_pointwise_to_q() {
        let q = ConeHandle::q_cone();
        let polys = [
            poly_element(&[(0, 1)], 0),
            poly_element(&[(3, 2), (1, -1)], 0),
            poly_element(&[(-2, -1)], 0),
            poly_element(&[(-4, 5), (-7, 1)], 0),
            poly_element(&[(5, -3)], 0),
        ];
        for p in &polys {
            let limit = q.membership(p).unwrap();
            let threshold = match p.payload() {
                Payload::Laurent { poly, .. } => poly.leading_term().unwrap().0.unsigned_abs() as u32 + 1,
                _ => unreachable!(),
            };
            for i in threshold..threshold + 5 {
                let qi = ConeHandle::qi_cone(i, 0).unwrap();
                assert_eq!(qi.membership(p).unwrap(), limit);
            }
        }
    }
}
