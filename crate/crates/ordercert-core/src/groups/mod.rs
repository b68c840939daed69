//! Normal-form arithmetic for the built-in groups, homomorphisms between
//! them, and Cayley ball enumeration.
//!
//! Every element carries its owning group and a kind-specific normal form,
//! so equality of elements is structural equality of payloads. No word
//! problem search is ever needed; general finite presentations are out of
//! scope.

mod element;
mod hom;
mod laurent;

pub use element::{Element, Payload};
pub use hom::Homomorphism;
pub use laurent::LaurentPoly;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Default cap on enumerated ball size.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

const GENERATOR_ALPHABET: &[&str] = &[
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q", "r", "s",
    "t", "u", "v", "w", "x", "y", "z",
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    /// Free group of the given rank.
    Free(u32),
    /// Free abelian group of the given rank.
    FreeAbelian(u32),
    /// Cyclic group of the given order.
    FiniteCyclic(u32),
    /// `<a, b | b a b^-1 = a^-1>`, normal form `a^m b^n`.
    KleinBottle,
    /// Integer Heisenberg group, normal form `x^p y^q z^r` with `z = [x, y]`
    /// central.
    Heisenberg,
    /// `Z[t, t^-1] ⋊ <z>` where `z` acts by multiplication by `t`.
    /// Generated as a group by the constant polynomial 1 and `z`.
    LaurentSemidirect,
    /// Direct product of the listed factors.
    DirectProduct(Vec<Group>),
}

#[derive(Debug)]
struct GroupInner {
    kind: GroupKind,
    labels: Vec<String>,
}

/// Handle to one of the built-in groups. Cheap to clone; equality compares
/// the kind and generator labels.
#[derive(Debug, Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.kind == other.inner.kind && self.inner.labels == other.inner.labels)
    }
}

impl Eq for Group {}

impl PartialOrd for Group {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Group {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return std::cmp::Ordering::Equal;
        }
        (&self.inner.kind, &self.inner.labels).cmp(&(&other.inner.kind, &other.inner.labels))
    }
}

impl std::hash::Hash for Group {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.kind.hash(state);
        self.inner.labels.hash(state);
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            GroupKind::Free(n) => write!(f, "free:{n}"),
            GroupKind::FreeAbelian(n) => write!(f, "abelian:{n}"),
            GroupKind::FiniteCyclic(n) => write!(f, "cyclic:{n}"),
            GroupKind::KleinBottle => write!(f, "klein"),
            GroupKind::Heisenberg => write!(f, "heisenberg"),
            GroupKind::LaurentSemidirect => write!(f, "laurent-z"),
            GroupKind::DirectProduct(factors) => {
                write!(f, "product(")?;
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{factor}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Group {
    fn with_default_labels(kind: GroupKind) -> Result<Group, GroupError> {
        let labels = default_labels(&kind)?;
        Ok(Group {
            inner: Arc::new(GroupInner { kind, labels }),
        })
    }

    pub fn free(rank: u32) -> Result<Group, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidRank { kind: "free", rank });
        }
        Self::with_default_labels(GroupKind::Free(rank))
    }

    pub fn free_abelian(rank: u32) -> Result<Group, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidRank {
                kind: "abelian",
                rank,
            });
        }
        Self::with_default_labels(GroupKind::FreeAbelian(rank))
    }

    pub fn finite_cyclic(order: u32) -> Result<Group, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidRank {
                kind: "cyclic",
                rank: order,
            });
        }
        Self::with_default_labels(GroupKind::FiniteCyclic(order))
    }

    pub fn klein_bottle() -> Group {
        Self::with_default_labels(GroupKind::KleinBottle).expect("fixed label set")
    }

    pub fn heisenberg() -> Group {
        Self::with_default_labels(GroupKind::Heisenberg).expect("fixed label set")
    }

    pub fn laurent_semidirect() -> Group {
        Self::with_default_labels(GroupKind::LaurentSemidirect).expect("fixed label set")
    }

    pub fn direct_product(factors: Vec<Group>) -> Result<Group, GroupError> {
        if factors.len() < 2 {
            return Err(GroupError::InvalidRank {
                kind: "product",
                rank: factors.len() as u32,
            });
        }
        Self::with_default_labels(GroupKind::DirectProduct(factors))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.inner.kind
    }

    /// Generator labels, aligned with generator indices.
    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn generator_count(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn generator(&self, index: usize) -> Element {
        assert!(index < self.generator_count(), "generator index out of range");
        Element::generator_unchecked(self.clone(), index)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.generator_count()).map(|i| self.generator(i)).collect()
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.clone())
    }

    /// True for groups with a single element (cyclic of order 1, or products
    /// of such).
    pub fn is_trivial(&self) -> bool {
        match self.kind() {
            GroupKind::FiniteCyclic(1) => true,
            GroupKind::DirectProduct(factors) => factors.iter().all(Group::is_trivial),
            _ => false,
        }
    }

    /// All elements expressible as words of length at most `radius` in the
    /// generators and their inverses.
    pub fn ball(&self, radius: u32) -> Result<Ball, GroupError> {
        self.ball_capped(radius, DEFAULT_BALL_CAP)
    }

    pub fn ball_capped(&self, radius: u32, cap: usize) -> Result<Ball, GroupError> {
        let mut steps = Vec::new();
        for g in self.generators() {
            steps.push(g.inverse());
            steps.push(g);
        }
        steps.sort();
        steps.dedup();

        let mut members: BTreeSet<Element> = BTreeSet::new();
        members.insert(self.identity());
        let mut frontier: Vec<Element> = vec![self.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &steps {
                    let product = g.multiply(s).expect("same owner");
                    if members.insert(product.clone()) {
                        if members.len() > cap {
                            return Err(GroupError::BallBudgetExceeded { cap });
                        }
                        next.push(product);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(Ball {
            group: self.clone(),
            radius,
            members,
        })
    }
}

fn default_labels(kind: &GroupKind) -> Result<Vec<String>, GroupError> {
    let labels = match kind {
        GroupKind::Free(n) | GroupKind::FreeAbelian(n) => alphabet_labels(*n)?,
        GroupKind::FiniteCyclic(_) => vec!["a".to_owned()],
        GroupKind::KleinBottle => vec!["a".to_owned(), "b".to_owned()],
        GroupKind::Heisenberg => vec!["x".to_owned(), "y".to_owned(), "z".to_owned()],
        GroupKind::LaurentSemidirect => vec!["u".to_owned(), "z".to_owned()],
        GroupKind::DirectProduct(factors) => {
            let mut labels = Vec::new();
            for (i, factor) in factors.iter().enumerate() {
                for label in factor.labels() {
                    labels.push(format!("{label}{}", i + 1));
                }
            }
            labels
        }
    };
    let mut dedup: Vec<&String> = labels.iter().collect();
    dedup.sort();
    dedup.dedup();
    if dedup.len() != labels.len() {
        return Err(GroupError::DuplicateLabels);
    }
    Ok(labels)
}

fn alphabet_labels(n: u32) -> Result<Vec<String>, GroupError> {
    if n as usize > GENERATOR_ALPHABET.len() {
        return Err(GroupError::TooManyGenerators {
            requested: n,
            max: GENERATOR_ALPHABET.len() as u32,
        });
    }
    Ok(GENERATOR_ALPHABET[..n as usize]
        .iter()
        .map(|s| (*s).to_owned())
        .collect())
}

/// A deduplicated radius-`radius` Cayley ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    group: Group,
    radius: u32,
    members: BTreeSet<Element>,
}

impl Ball {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn members(&self) -> &BTreeSet<Element> {
        &self.members
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.members.contains(g)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.members.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    OwnerMismatch { expected: String, found: String },
    InvalidRank { kind: &'static str, rank: u32 },
    TooManyGenerators { requested: u32, max: u32 },
    DuplicateLabels,
    WrongImageCount { expected: usize, found: usize },
    ImageOwnerMismatch { index: usize },
    RelationViolated { relation: String },
    BallBudgetExceeded { cap: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::OwnerMismatch { expected, found } => {
                write!(f, "element owner mismatch: expected {expected}, found {found}")
            }
            GroupError::InvalidRank { kind, rank } => {
                write!(f, "invalid parameter {rank} for group kind {kind}")
            }
            GroupError::TooManyGenerators { requested, max } => {
                write!(f, "requested {requested} generators, at most {max} supported")
            }
            GroupError::DuplicateLabels => write!(f, "generator labels must be distinct"),
            GroupError::WrongImageCount { expected, found } => {
                write!(f, "homomorphism needs {expected} generator images, got {found}")
            }
            GroupError::ImageOwnerMismatch { index } => {
                write!(f, "image for generator {index} is not owned by the target group")
            }
            GroupError::RelationViolated { relation } => {
                write!(f, "generator images violate defining relation {relation}")
            }
            GroupError::BallBudgetExceeded { cap } => {
                write!(f, "ball enumeration exceeded the cap of {cap} elements")
            }
        }
    }
}

impl std::error::Error for GroupError {}
