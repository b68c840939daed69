//! Truncated generation of semigroup closures with identity detection and
//! replayable derivation witnesses.
//!
//! Three closure kinds are supported: the plain semigroup generated by a
//! set, the Conradian closure (additionally closed under
//! `(x, y) -> x^-1 y x^2`), and the normal semigroup closure generated by
//! conjugates of the set. Conjugators for the normal kind are drawn from a
//! finite ball, so membership witnesses are always valid while absence of a
//! witness is only bounded evidence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::groups::{Element, GroupError};

/// Default cap on the number of generated elements.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosureKind {
    /// The semigroup generated by the set.
    Plain,
    /// Additionally closed under `(x, y) -> x^-1 y x^2`.
    Conradian,
    /// Generated by conjugates `g x g^-1` with `g` from the ball of the
    /// given radius.
    Normal { conjugator_radius: u32 },
}

/// A construction tree whose leaves are permitted generators. The depth of a
/// derivation is its number of leaves: one production step per generator
/// introduced, uniform across closure kinds regardless of how long the
/// resulting group word is.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Derivation {
    Generator(Element),
    ConjugatedGenerator { conjugator: Element, base: Element },
    Product(Box<Derivation>, Box<Derivation>),
    /// `x^-1 y x^2` from (x, y).
    ConradianStep(Box<Derivation>, Box<Derivation>),
}

impl Derivation {
    /// Evaluate the tree back to the element it constructs.
    pub fn replay(&self) -> Result<Element, ClosureError> {
        match self {
            Derivation::Generator(x) => Ok(x.clone()),
            Derivation::ConjugatedGenerator { conjugator, base } => {
                Ok(base.conjugate_by(conjugator)?)
            }
            Derivation::Product(l, r) => Ok(l.replay()?.multiply(&r.replay()?)?),
            Derivation::ConradianStep(x, y) => {
                let x = x.replay()?;
                let y = y.replay()?;
                Ok(x.inverse().multiply(&y)?.multiply(&x.pow(2))?)
            }
        }
    }

    /// Number of production steps (leaves).
    pub fn steps(&self) -> usize {
        match self {
            Derivation::Generator(_) | Derivation::ConjugatedGenerator { .. } => 1,
            Derivation::Product(l, r) | Derivation::ConradianStep(l, r) => l.steps() + r.steps(),
        }
    }
}

/// Result of a truncated closure computation.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    generated: BTreeSet<Element>,
    depth_reached: u32,
    identity_witness: Option<Derivation>,
    exhausted_budget: bool,
}

impl ClosureResult {
    pub fn generated(&self) -> &BTreeSet<Element> {
        &self.generated
    }

    pub fn depth_reached(&self) -> u32 {
        self.depth_reached
    }

    pub fn identity_witness(&self) -> Option<&Derivation> {
        self.identity_witness.as_ref()
    }

    pub fn into_identity_witness(self) -> Option<Derivation> {
        self.identity_witness
    }

    pub fn exhausted_budget(&self) -> bool {
        self.exhausted_budget
    }

    /// Complete up to the requested depth (the enumeration was not cut off
    /// by the element budget).
    pub fn is_complete(&self) -> bool {
        !self.exhausted_budget
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureError {
    EmptyGeneratingSet,
    MixedOwners,
    Group(GroupError),
}

impl fmt::Display for ClosureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureError::EmptyGeneratingSet => write!(f, "generating set is empty"),
            ClosureError::MixedOwners => write!(f, "generating set mixes owner groups"),
            ClosureError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ClosureError {}

impl From<GroupError> for ClosureError {
    fn from(e: GroupError) -> Self {
        ClosureError::Group(e)
    }
}

// Arena node; children index earlier nodes.
#[derive(Debug, Clone)]
enum Node {
    Gen(Element),
    Conj { conjugator: Element, base: Element },
    Mul(usize, usize),
    Cnd(usize, usize),
}

fn extract(arena: &[Node], id: usize) -> Derivation {
    match &arena[id] {
        Node::Gen(x) => Derivation::Generator(x.clone()),
        Node::Conj { conjugator, base } => Derivation::ConjugatedGenerator {
            conjugator: conjugator.clone(),
            base: base.clone(),
        },
        Node::Mul(l, r) => Derivation::Product(
            Box::new(extract(arena, *l)),
            Box::new(extract(arena, *r)),
        ),
        Node::Cnd(l, r) => Derivation::ConradianStep(
            Box::new(extract(arena, *l)),
            Box::new(extract(arena, *r)),
        ),
    }
}

/// All elements derivable from `generators` with at most `depth` production
/// steps, capped at `budget` elements.
///
/// Enumeration is breadth-first over the number of production steps with
/// normal-form ordering inside each level, so results and witnesses are
/// deterministic. The identity witness is the first derivation of the
/// identity encountered.
pub fn close(
    generators: &[Element],
    kind: ClosureKind,
    depth: u32,
    budget: usize,
) -> Result<ClosureResult, ClosureError> {
    let Some(first) = generators.first() else {
        return Err(ClosureError::EmptyGeneratingSet);
    };
    let owner = first.group().clone();
    if generators.iter().any(|g| g.group() != &owner) {
        return Err(ClosureError::MixedOwners);
    }
    let base: BTreeSet<Element> = generators.iter().cloned().collect();

    let mut arena: Vec<Node> = Vec::new();
    let mut generated: BTreeMap<Element, usize> = BTreeMap::new();
    let mut witness: Option<usize> = None;
    let mut exhausted = false;

    // Leaves, per closure kind.
    let mut level1: BTreeMap<Element, usize> = BTreeMap::new();
    if depth >= 1 {
        match kind {
            ClosureKind::Plain | ClosureKind::Conradian => {
                for x in &base {
                    arena.push(Node::Gen(x.clone()));
                    record(
                        x.clone(),
                        arena.len() - 1,
                        &mut level1,
                        &mut generated,
                        &mut witness,
                    );
                }
            }
            ClosureKind::Normal { conjugator_radius } => {
                let ball = owner.ball(conjugator_radius)?;
                for x in &base {
                    for g in ball.iter() {
                        let value = x.conjugate_by(g)?;
                        arena.push(Node::Conj {
                            conjugator: g.clone(),
                            base: x.clone(),
                        });
                        record(
                            value,
                            arena.len() - 1,
                            &mut level1,
                            &mut generated,
                            &mut witness,
                        );
                    }
                }
            }
        }
    }
    if generated.len() > budget {
        exhausted = true;
    }

    let mut levels: Vec<Vec<(Element, usize)>> = vec![Vec::new(); depth as usize + 1];
    if depth >= 1 {
        levels[1] = level1.into_iter().collect();
    }

    let mut depth_reached = if depth == 0 { 0 } else { 1 };
    'outer: for cost in 2..=depth as usize {
        if exhausted {
            break;
        }
        let mut level: BTreeMap<Element, usize> = BTreeMap::new();
        let splits: Vec<(usize, usize)> = match kind {
            // Any product tree evaluates to the flat product of its leaves,
            // so right-multiplying by a single leaf is exhaustive.
            ClosureKind::Plain | ClosureKind::Normal { .. } => vec![(cost - 1, 1)],
            ClosureKind::Conradian => (1..cost).map(|c1| (c1, cost - c1)).collect(),
        };
        for (c1, c2) in splits {
            for i in 0..levels[c1].len() {
                for j in 0..levels[c2].len() {
                    let (ref e1, n1) = levels[c1][i];
                    let (ref e2, n2) = levels[c2][j];
                    let product = e1.multiply(e2)?;
                    arena.push(Node::Mul(n1, n2));
                    let product_node = arena.len() - 1;
                    if fresh(&product, &generated, &level) {
                        record(product, product_node, &mut level, &mut generated, &mut witness);
                        if generated.len() > budget {
                            exhausted = true;
                            break 'outer;
                        }
                    }
                    if kind == ClosureKind::Conradian {
                        let value = e1.inverse().multiply(e2)?.multiply(&e1.pow(2))?;
                        arena.push(Node::Cnd(n1, n2));
                        let node = arena.len() - 1;
                        if fresh(&value, &generated, &level) {
                            record(value, node, &mut level, &mut generated, &mut witness);
                            if generated.len() > budget {
                                exhausted = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        levels[cost] = level.into_iter().collect();
        depth_reached = cost as u32;
    }

    Ok(ClosureResult {
        generated: generated.keys().cloned().collect(),
        depth_reached,
        identity_witness: witness.map(|id| extract(&arena, id)),
        exhausted_budget: exhausted,
    })
}

fn fresh(
    value: &Element,
    generated: &BTreeMap<Element, usize>,
    level: &BTreeMap<Element, usize>,
) -> bool {
    !generated.contains_key(value) && !level.contains_key(value)
}

fn record(
    value: Element,
    node: usize,
    level: &mut BTreeMap<Element, usize>,
    generated: &mut BTreeMap<Element, usize>,
    witness: &mut Option<usize>,
) {
    if witness.is_none() && value.is_identity() {
        *witness = Some(node);
    }
    level.insert(value.clone(), node);
    generated.insert(value, node);
}

/// Semi-decision for identity membership: a witness if the identity is
/// derivable within the bounds, `None` otherwise. Absence is not a proof
/// that the identity lies outside the closure.
pub fn contains_identity_upto(
    generators: &[Element],
    kind: ClosureKind,
    depth: u32,
    budget: usize,
) -> Result<Option<Derivation>, ClosureError> {
    Ok(close(generators, kind, depth, budget)?.into_identity_witness())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Group, Payload};

    fn abelian_point(group: &Group, v: i64) -> Element {
        Element::from_payload(group.clone(), Payload::Vector(vec![v])).unwrap()
    }

    #[test]
    fn plain_closure_counts_production_steps() {
        let z = Group::free_abelian(1).unwrap();
        let result = close(&[abelian_point(&z, 1)], ClosureKind::Plain, 3, 1000).unwrap();
        let expected: BTreeSet<Element> =
            [1, 2, 3].into_iter().map(|v| abelian_point(&z, v)).collect();
        assert_eq!(result.generated(), &expected);
        assert!(result.identity_witness().is_none());
        assert!(result.is_complete());
    }

    #[test]
    fn torsion_produces_identity_witness() {
        let c3 = Group::finite_cyclic(3).unwrap();
        let one = c3.generator(0);
        let result = close(std::slice::from_ref(&one), ClosureKind::Plain, 3, 1000).unwrap();
        let witness = result.identity_witness().unwrap();
        assert_eq!(witness.steps(), 3);
        assert!(witness.replay().unwrap().is_identity());
    }

    #[test]
    fn normal_closure_reaches_conjugates() {
        let klein = Group::klein_bottle();
        let a = klein.generator(0);
        let result = close(
            std::slice::from_ref(&a),
            ClosureKind::Normal {
                conjugator_radius: 1,
            },
            2,
            1000,
        )
        .unwrap();
        assert!(result.generated().contains(&a));
        assert!(result.generated().contains(&a.inverse()));
        let witness = result.identity_witness().unwrap();
        assert!(witness.replay().unwrap().is_identity());
        assert_eq!(witness.steps(), 2);
    }

    #[test]
    fn klein_positive_words_avoid_identity() {
        let klein = Group::klein_bottle();
        let gens = [klein.generator(0), klein.generator(1)];
        let witness = contains_identity_upto(&gens, ClosureKind::Plain, 6, 100_000).unwrap();
        assert!(witness.is_none());
    }

    #[test]
    fn inverse_pair_witness() {
        let f = Group::free(1).unwrap();
        let a = f.generator(0);
        let witness = contains_identity_upto(
            &[a.clone(), a.inverse()],
            ClosureKind::Plain,
            2,
            1000,
        )
        .unwrap()
        .unwrap();
        assert_eq!(witness.steps(), 2);
        assert!(witness.replay().unwrap().is_identity());
    }

    #[test]
    fn conradian_step_replays_formula() {
        let f = Group::free(2).unwrap();
        let a = f.generator(0);
        let b = f.generator(1);
        let d = Derivation::ConradianStep(
            Box::new(Derivation::Generator(a.clone())),
            Box::new(Derivation::Generator(b.clone())),
        );
        let expected = a
            .inverse()
            .multiply(&b)
            .unwrap()
            .multiply(&a.pow(2))
            .unwrap();
        assert_eq!(d.replay().unwrap(), expected);
    }

    #[test]
    fn conjugated_leaf_replays_in_klein() {
        let klein = Group::klein_bottle();
        let a = klein.generator(0);
        let b = klein.generator(1);
        let d = Derivation::Product(
            Box::new(Derivation::Generator(a.clone())),
            Box::new(Derivation::ConjugatedGenerator {
                conjugator: b,
                base: a,
            }),
        );
        assert!(d.replay().unwrap().is_identity());
    }

    #[test]
    fn empty_generating_set_is_an_error() {
        assert_eq!(
            close(&[], ClosureKind::Plain, 3, 10).unwrap_err(),
            ClosureError::EmptyGeneratingSet
        );
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let f = Group::free(2).unwrap();
        let result = close(
            &[f.generator(0), f.generator(1)],
            ClosureKind::Plain,
            10,
            20,
        )
        .unwrap();
        assert!(result.exhausted_budget());
        assert!(!result.is_complete());
    }

    #[test]
    fn closure_is_monotone_in_depth() {
        let klein = Group::klein_bottle();
        let gens = [klein.generator(0), klein.generator(1)];
        for kind in [
            ClosureKind::Plain,
            ClosureKind::Conradian,
            ClosureKind::Normal {
                conjugator_radius: 1,
            },
        ] {
            let mut previous = BTreeSet::new();
            for depth in 1..=4 {
                let result = close(&gens, kind, depth, 100_000).unwrap();
                assert!(previous.is_subset(result.generated()));
                previous = result.generated().clone();
            }
        }
    }

    #[test]
    fn conradian_equals_plain_in_abelian_groups() {
        let z2 = Group::free_abelian(2).unwrap();
        let gens = [z2.generator(0), z2.generator(1)];
        for depth in 1..=4 {
            let plain = close(&gens, ClosureKind::Plain, depth, 100_000).unwrap();
            let conradian = close(&gens, ClosureKind::Conradian, depth, 100_000).unwrap();
            assert_eq!(plain.generated(), conradian.generated());
        }
    }

    #[test]
    fn normal_closure_radius_zero_is_plain() {
        let klein = Group::klein_bottle();
        let gens = [klein.generator(0), klein.generator(1)];
        for depth in 1..=3 {
            let plain = close(&gens, ClosureKind::Plain, depth, 100_000).unwrap();
            let normal = close(
                &gens,
                ClosureKind::Normal {
                    conjugator_radius: 0,
                },
                depth,
                100_000,
            )
            .unwrap();
            assert_eq!(plain.generated(), normal.generated());
        }
    }
}
