//! Sign-assignment searches for the left-, Conradian- and bi-orderability
//! criteria, plus the inductive sign selection through a quotient with an
//! invariant cone on the image.
//!
//! For a finite set `x_1, ..., x_n` the searches look for exponents
//! `e_i = ±1` whose signed closure avoids the identity. A full set of
//! identity derivations, one per sign vector, is a genuine finite
//! refutation of the property for the ambient group. A passing sign vector
//! is only depth-`d` evidence: the criteria quantify over the entire
//! closure, so certificates are honest about semi-decidability.

use std::collections::BTreeMap;
use std::fmt;

use crate::closures::{close, ClosureError, ClosureKind, Derivation};
use crate::cones::{cone_invariance_check, ConeError, ConeHandle, InvarianceMode};
use crate::groups::{Element, GroupError, Homomorphism};

/// Criterion selector: which closure the signed generators must keep
/// identity-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    LeftOrder,
    ConradianOrder,
    BiOrder,
}

impl Criterion {
    fn closure_kind(self, conjugator_radius: u32) -> ClosureKind {
        match self {
            Criterion::LeftOrder => ClosureKind::Plain,
            Criterion::ConradianOrder => ClosureKind::Conradian,
            Criterion::BiOrder => ClosureKind::Normal { conjugator_radius },
        }
    }
}

/// Exponent assignment aligned with the searched element list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|s| *s == 1 || *s == -1));
        SignVector(signs)
    }

    /// The `index`-th vector in lexicographic order with +1 before -1.
    fn lexicographic(index: usize, len: usize) -> Self {
        let signs = (0..len)
            .map(|i| if (index >> (len - 1 - i)) & 1 == 0 { 1 } else { -1 })
            .collect();
        SignVector(signs)
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// Some sign vector has a complete, identity-free closure at this depth.
    Certified,
    /// Every sign vector derives the identity; the witnesses replay.
    Obstructed,
    /// At least one sign vector ran out of budget without a witness.
    Inconclusive,
}

/// Outcome of a sign search, with enough evidence to replay it.
#[derive(Debug, Clone)]
pub struct SearchVerdict {
    pub status: SearchStatus,
    /// Present when certified: the lexicographically first passing vector.
    pub signs: Option<SignVector>,
    /// Identity derivations per sign vector; covers all `2^n` vectors when
    /// obstructed.
    pub witnesses: BTreeMap<SignVector, Derivation>,
    pub depth: u32,
}

/// A nonempty list of non-identity elements, the allowed input for the
/// quotient-guided sign selection.
#[derive(Debug, Clone)]
pub struct NormalGenSet {
    generators: Vec<Element>,
}

impl NormalGenSet {
    pub fn new(generators: Vec<Element>) -> Result<Self, SearchError> {
        if generators.is_empty() {
            return Err(SearchError::EmptyInput);
        }
        if generators.iter().any(Element::is_identity) {
            return Err(SearchError::IdentityGenerator);
        }
        Ok(NormalGenSet { generators })
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    EmptyInput,
    IdentityGenerator,
    /// Sign vectors are enumerated exhaustively, so the input size is
    /// hard-capped.
    TooManyElements { count: usize, max: usize },
    /// Every input maps to the identity, so the image carries no sign
    /// information.
    TrivialImage,
    ImageConeNotInvariant,
    Closure(ClosureError),
    Cone(ConeError),
    Group(GroupError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::EmptyInput => write!(f, "input element list is empty"),
            SearchError::IdentityGenerator => write!(f, "input contains the identity element"),
            SearchError::TooManyElements { count, max } => {
                write!(f, "{count} elements exceed the sign-search cap of {max}")
            }
            SearchError::TrivialImage => {
                write!(f, "the homomorphism kills every input element")
            }
            SearchError::ImageConeNotInvariant => {
                write!(f, "image cone failed the conjugation invariance spot check")
            }
            SearchError::Closure(e) => write!(f, "{e}"),
            SearchError::Cone(e) => write!(f, "{e}"),
            SearchError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SearchError {}

impl From<ClosureError> for SearchError {
    fn from(e: ClosureError) -> Self {
        SearchError::Closure(e)
    }
}

impl From<ConeError> for SearchError {
    fn from(e: ConeError) -> Self {
        SearchError::Cone(e)
    }
}

impl From<GroupError> for SearchError {
    fn from(e: GroupError) -> Self {
        SearchError::Group(e)
    }
}

/// Deduplicate and drop identity entries, preserving first-occurrence
/// order. This is the normalization every search applies to its input.
pub fn strip_identities(elements: &[Element]) -> Vec<Element> {
    let mut stripped = Vec::new();
    for e in elements {
        if !e.is_identity() && !stripped.contains(e) {
            stripped.push(e.clone());
        }
    }
    stripped
}

fn signed(elements: &[Element], signs: &SignVector) -> Vec<Element> {
    elements
        .iter()
        .zip(signs.signs())
        .map(|(e, &s)| if s == 1 { e.clone() } else { e.inverse() })
        .collect()
}

/// Search for exponents whose closure avoids the identity.
///
/// Identity entries are stripped first; the empty set is certified
/// trivially. Sign vectors are tried in lexicographic order (+1 before -1)
/// and the first passing vector is returned. When every vector yields an
/// identity derivation the verdict is obstructed with the full witness map.
pub fn sign_search(
    elements: &[Element],
    criterion: Criterion,
    depth: u32,
    conjugator_radius: u32,
    budget: usize,
) -> Result<SearchVerdict, SearchError> {
    let stripped = strip_identities(elements);
    let n = stripped.len();
    if n == 0 {
        return Ok(SearchVerdict {
            status: SearchStatus::Certified,
            signs: Some(SignVector(Vec::new())),
            witnesses: BTreeMap::new(),
            depth,
        });
    }
    const MAX_ELEMENTS: usize = 16;
    if n > MAX_ELEMENTS {
        return Err(SearchError::TooManyElements {
            count: n,
            max: MAX_ELEMENTS,
        });
    }
    let kind = criterion.closure_kind(conjugator_radius);
    let mut witnesses = BTreeMap::new();
    let mut exhausted_somewhere = false;
    for index in 0..(1usize << n) {
        let signs = SignVector::lexicographic(index, n);
        let generators = signed(&stripped, &signs);
        let result = close(&generators, kind, depth, budget)?;
        let complete = result.is_complete();
        match result.into_identity_witness() {
            Some(witness) => {
                witnesses.insert(signs, witness);
            }
            None if complete => {
                return Ok(SearchVerdict {
                    status: SearchStatus::Certified,
                    signs: Some(signs),
                    witnesses: BTreeMap::new(),
                    depth,
                });
            }
            None => exhausted_somewhere = true,
        }
    }
    let status = if exhausted_somewhere {
        SearchStatus::Inconclusive
    } else {
        SearchStatus::Obstructed
    };
    Ok(SearchVerdict {
        status,
        signs: None,
        witnesses,
        depth,
    })
}

/// Choose exponents through a quotient: elements with nontrivial image get
/// the sign that puts the image inside the cone; elements in the kernel are
/// handled by a bounded sign search of their own. The returned verdict
/// reports the normal-closure check of the selected signs at the given
/// depth.
///
/// Conjugation invariance of the image cone is spot-checked on the radius-1
/// ball of the target; a violation is an error, not a verdict.
pub fn bo_sign_select(
    input: &NormalGenSet,
    quotient_map: &Homomorphism,
    image_cone: &ConeHandle,
    depth: u32,
    conjugator_radius: u32,
    budget: usize,
) -> Result<(SignVector, SearchVerdict), SearchError> {
    let invariance = cone_invariance_check(image_cone, 1, InvarianceMode::Bi)?;
    if !invariance.passed() {
        return Err(SearchError::ImageConeNotInvariant);
    }
    let elements = input.generators();
    let images: Vec<Element> = elements
        .iter()
        .map(|e| quotient_map.apply(e))
        .collect::<Result<_, _>>()?;
    if images.iter().all(Element::is_identity) {
        return Err(SearchError::TrivialImage);
    }

    let mut signs: Vec<i8> = vec![0; elements.len()];
    let mut kernel_part = Vec::new();
    for (i, image) in images.iter().enumerate() {
        if image.is_identity() {
            kernel_part.push(i);
        } else if image_cone.membership(image)? {
            signs[i] = 1;
        } else {
            signs[i] = -1;
        }
    }
    if !kernel_part.is_empty() {
        // The kernel indices carry no image information; select their signs
        // by the bounded normal-closure criterion on the kernel subset.
        let kernel_elements: Vec<Element> =
            kernel_part.iter().map(|&i| elements[i].clone()).collect();
        let kernel_verdict = sign_search(
            &kernel_elements,
            Criterion::BiOrder,
            depth,
            conjugator_radius,
            budget,
        )?;
        match kernel_verdict.signs {
            Some(kernel_signs) => {
                for (slot, &i) in kernel_part.iter().enumerate() {
                    signs[i] = kernel_signs.signs()[slot];
                }
            }
            None => {
                // No certified kernel selection within bounds; fall back to
                // +1 and let the final check report the failure honestly.
                for &i in &kernel_part {
                    signs[i] = 1;
                }
            }
        }
    }
    let signs = SignVector::new(signs);

    let generators = signed(elements, &signs);
    let result = close(
        &generators,
        ClosureKind::Normal { conjugator_radius },
        depth,
        budget,
    )?;
    let complete = result.is_complete();
    let mut witnesses = BTreeMap::new();
    let status = match result.into_identity_witness() {
        // One failing vector refutes only this selection, never the group.
        Some(witness) => {
            witnesses.insert(signs.clone(), witness);
            SearchStatus::Inconclusive
        }
        None if complete => SearchStatus::Certified,
        None => SearchStatus::Inconclusive,
    };
    let verdict = SearchVerdict {
        status,
        signs: (status == SearchStatus::Certified).then(|| signs.clone()),
        witnesses,
        depth,
    };
    Ok((signs, verdict))
}
