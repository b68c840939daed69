//! Circular-ordering values on triples: axiom validation, ball-bounded
//! pre-order search, the finite triple-assignment criterion, the extension
//! construction through a quotient with an antisymmetric kernel semigroup,
//! and the circular order induced by a positive cone.
//!
//! A value function assigns `{-1, 0, +1}` to triples, vanishing exactly on
//! triples with a repeated entry, satisfying the alternating four-term sum
//! and invariance under componentwise left translation. On a finite domain
//! the four-term condition is demanded for every 4-tuple all of whose face
//! triples are either in the domain or degenerate (degenerate faces count
//! as zero).

mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Mutex;

use crate::cones::{ConeError, ConeHandle};
use crate::groups::{Element, Group, GroupError, GroupKind, Homomorphism};
use crate::products::FiniteSubset;

use solver::{solve, Problem, SolveOutcome, UnionFind};

/// Default decision-node budget for the backtracking searches.
pub const DEFAULT_SOLVER_NODE_BUDGET: u64 = 5_000_000;

/// An ordered triple of elements sharing one owner group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    components: [Element; 3],
}

impl Triple {
    pub fn new(g1: Element, g2: Element, g3: Element) -> Result<Triple, CircularError> {
        if g1.group() != g2.group() || g1.group() != g3.group() {
            return Err(CircularError::MixedOwners);
        }
        Ok(Triple {
            components: [g1, g2, g3],
        })
    }

    pub fn components(&self) -> &[Element; 3] {
        &self.components
    }

    pub fn owner(&self) -> &Group {
        self.components[0].group()
    }

    /// Whether some entry repeats.
    pub fn is_degenerate(&self) -> bool {
        let [a, b, c] = &self.components;
        a == b || a == c || b == c
    }

    /// Componentwise left translation `y · t`.
    pub fn translated(&self, y: &Element) -> Result<Triple, CircularError> {
        let [a, b, c] = &self.components;
        Ok(Triple {
            components: [y.multiply(a)?, y.multiply(b)?, y.multiply(c)?],
        })
    }
}

/// A total value function on a finite set of triples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CircularAssignment {
    values: BTreeMap<Triple, i8>,
}

impl CircularAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, triple: Triple, value: i8) {
        assert!((-1..=1).contains(&value), "values live in {{-1, 0, +1}}");
        self.values.insert(triple, value);
    }

    pub fn value(&self, triple: &Triple) -> Option<i8> {
        self.values.get(triple).copied()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.values.contains_key(triple)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, i8)> {
        self.values.iter().map(|(t, &v)| (t, v))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Triple> {
        self.values.keys()
    }
}

#[derive(Debug)]
pub enum CircularError {
    MixedOwners,
    DegenerateInput { triple: Box<Triple> },
    /// An element and its inverse both answered positive.
    AntisymmetryViolation { element: Element },
    /// A kernel difference of the input set is not covered by the supplied
    /// semigroup or its inverses.
    CoverageFailure { element: Element },
    /// The quotient assignment is missing a needed triple.
    QuotientAssignmentIncomplete { triple: Box<Triple> },
    /// The cone failed trichotomy or transitivity on the queried ratios.
    ConeOrderFailure { detail: String },
    WrongGroupKind { expected: &'static str, found: String },
    SearchBudget { nodes: u64 },
    Group(GroupError),
    Cone(ConeError),
}

impl fmt::Display for CircularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircularError::MixedOwners => write!(f, "triple components mix owner groups"),
            CircularError::DegenerateInput { .. } => {
                write!(f, "input triple has a repeated entry")
            }
            CircularError::AntisymmetryViolation { .. } => {
                write!(f, "semigroup oracle answered positive on an element and its inverse")
            }
            CircularError::CoverageFailure { .. } => {
                write!(f, "kernel difference outside the semigroup and its inverses")
            }
            CircularError::QuotientAssignmentIncomplete { .. } => {
                write!(f, "quotient assignment missing a required triple")
            }
            CircularError::ConeOrderFailure { detail } => {
                write!(f, "cone does not order the requested elements: {detail}")
            }
            CircularError::WrongGroupKind { expected, found } => {
                write!(f, "operation requires a {expected} group, found {found}")
            }
            CircularError::SearchBudget { nodes } => {
                write!(f, "search exceeded the node budget after {nodes} nodes")
            }
            CircularError::Group(e) => write!(f, "{e}"),
            CircularError::Cone(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CircularError {}

impl From<GroupError> for CircularError {
    fn from(e: GroupError) -> Self {
        CircularError::Group(e)
    }
}

impl From<ConeError> for CircularError {
    fn from(e: ConeError) -> Self {
        CircularError::Cone(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircularViolation {
    DegenerateNonzero { triple: Triple, value: i8 },
    NondegenerateZero { triple: Triple },
    Cocycle { tuple: [Element; 4], sum: i32 },
    LeftInvariance {
        multiplier: Element,
        triple: Triple,
        value: i8,
        translated_value: i8,
    },
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violation: Option<CircularViolation>,
    pub checked_tuples: u64,
    pub checked_translations: u64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check the three axioms on the assignment's domain: zero exactly on
/// degenerate triples, the alternating four-term sum on every 4-tuple whose
/// four faces all lie in the domain, and equality under the supplied left
/// multipliers wherever both a triple and its translate are in the domain.
pub fn validate_circular_assignment(
    assignment: &CircularAssignment,
    multipliers: &[Element],
) -> Result<ValidationReport, CircularError> {
    for (triple, value) in assignment.iter() {
        if triple.is_degenerate() && value != 0 {
            return Ok(report_with(CircularViolation::DegenerateNonzero {
                triple: triple.clone(),
                value,
            }));
        }
        if !triple.is_degenerate() && value == 0 {
            return Ok(report_with(CircularViolation::NondegenerateZero {
                triple: triple.clone(),
            }));
        }
    }

    let mut pool: BTreeSet<Element> = BTreeSet::new();
    for triple in assignment.domain() {
        pool.extend(triple.components().iter().cloned());
    }
    let pool: Vec<Element> = pool.into_iter().collect();
    let mut checked_tuples = 0u64;
    let lookup = |a: &Element, b: &Element, c: &Element| -> Option<i8> {
        let t = Triple {
            components: [a.clone(), b.clone(), c.clone()],
        };
        assignment.value(&t)
    };
    for a in &pool {
        for b in &pool {
            for c in &pool {
                for d in &pool {
                    let faces = [
                        lookup(a, b, c),
                        lookup(a, b, d),
                        lookup(a, c, d),
                        lookup(b, c, d),
                    ];
                    let [Some(v1), Some(v2), Some(v3), Some(v4)] = faces else {
                        continue;
                    };
                    checked_tuples += 1;
                    let sum =
                        i32::from(v1) - i32::from(v2) + i32::from(v3) - i32::from(v4);
                    if sum != 0 {
                        return Ok(report_with(CircularViolation::Cocycle {
                            tuple: [a.clone(), b.clone(), c.clone(), d.clone()],
                            sum,
                        }));
                    }
                }
            }
        }
    }

    let mut checked_translations = 0u64;
    for y in multipliers {
        for (triple, value) in assignment.iter() {
            let translated = triple.translated(y)?;
            if let Some(translated_value) = assignment.value(&translated) {
                checked_translations += 1;
                if translated_value != value {
                    return Ok(report_with(CircularViolation::LeftInvariance {
                        multiplier: y.clone(),
                        triple: triple.clone(),
                        value,
                        translated_value,
                    }));
                }
            }
        }
    }

    Ok(ValidationReport {
        violation: None,
        checked_tuples,
        checked_translations,
    })
}

fn report_with(violation: CircularViolation) -> ValidationReport {
    ValidationReport {
        violation: Some(violation),
        checked_tuples: 0,
        checked_translations: 0,
    }
}

/// Proof marker that an exhaustive search refuted every value assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderRefutation {
    pub k: u32,
    pub ball_size: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub enum PreorderOutcome {
    Found(CircularAssignment),
    /// No value assignment on the ball satisfies the axioms; by restriction
    /// this rules out a circular ordering of the whole group.
    Impossible(PreorderRefutation),
}

impl PreorderOutcome {
    pub fn found(&self) -> Option<&CircularAssignment> {
        match self {
            PreorderOutcome::Found(a) => Some(a),
            PreorderOutcome::Impossible(_) => None,
        }
    }

    pub fn is_impossible(&self) -> bool {
        matches!(self, PreorderOutcome::Impossible(_))
    }
}

/// Search for a total value function on the radius-`k` ball cube satisfying
/// all axioms expressible inside the ball: degenerate triples are zero,
/// every in-ball 4-tuple has vanishing alternating sum, and translation by
/// ball elements preserves values whenever the translate stays in the
/// ball cube.
pub fn preorder_search(group: &Group, k: u32) -> Result<PreorderOutcome, CircularError> {
    preorder_search_with_budget(group, k, DEFAULT_SOLVER_NODE_BUDGET)
}

pub fn preorder_search_with_budget(
    group: &Group,
    k: u32,
    max_nodes: u64,
) -> Result<PreorderOutcome, CircularError> {
    let ball = group.ball(k)?;
    let members: Vec<Element> = ball.iter().cloned().collect();
    let n = members.len();
    let index_of = |g: &Element| -> Option<usize> { members.binary_search(g).ok() };

    // Dense indices for non-degenerate triples.
    let flat = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut var_of_flat: Vec<Option<usize>> = vec![None; n * n * n];
    let mut var_triples: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != b && a != c && b != c {
                    var_of_flat[flat(a, b, c)] = Some(var_triples.len());
                    var_triples.push((a, b, c));
                }
            }
        }
    }

    // Translation classes: t and g·t share a value when both stay in the
    // ball cube.
    let mut uf = UnionFind::new(var_triples.len());
    let mut translate: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
    for g in &members {
        let mut row = Vec::with_capacity(n);
        for m in &members {
            row.push(index_of(&g.multiply(m)?));
        }
        translate.push(row);
    }
    for (gi, g) in members.iter().enumerate() {
        if g.is_identity() {
            continue;
        }
        for (vi, &(a, b, c)) in var_triples.iter().enumerate() {
            let (Some(ta), Some(tb), Some(tc)) = (
                translate[gi][a],
                translate[gi][b],
                translate[gi][c],
            ) else {
                continue;
            };
            let target = var_of_flat[flat(ta, tb, tc)].expect("translate of non-degenerate");
            uf.union(vi, target);
        }
    }
    let mut class_of_var: Vec<usize> = vec![usize::MAX; var_triples.len()];
    let mut class_count = 0;
    for vi in 0..var_triples.len() {
        let root = uf.find(vi);
        if class_of_var[root] == usize::MAX {
            class_of_var[root] = class_count;
            class_count += 1;
        }
        class_of_var[vi] = class_of_var[root];
    }

    // Alternating-sum constraints over all 4-tuples; degenerate faces are
    // zero and vanish from the row.
    let mut rows: BTreeSet<Vec<(usize, i32)>> = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let faces = [
                        (flat(a, b, c), 1),
                        (flat(a, b, d), -1),
                        (flat(a, c, d), 1),
                        (flat(b, c, d), -1),
                    ];
                    let mut row: BTreeMap<usize, i32> = BTreeMap::new();
                    for (f, sign) in faces {
                        if let Some(var) = var_of_flat[f] {
                            *row.entry(class_of_var[var]).or_insert(0) += sign;
                        }
                    }
                    let row: Vec<(usize, i32)> =
                        row.into_iter().filter(|&(_, coef)| coef != 0).collect();
                    if !row.is_empty() {
                        rows.insert(row);
                    }
                }
            }
        }
    }

    let problem = Problem {
        class_count,
        constraints: rows.into_iter().collect(),
    };
    let (outcome, nodes) = solve(&problem, max_nodes)?;
    match outcome {
        SolveOutcome::Satisfiable(values) => {
            let mut assignment = CircularAssignment::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let triple = Triple {
                            components: [
                                members[a].clone(),
                                members[b].clone(),
                                members[c].clone(),
                            ],
                        };
                        let value = match var_of_flat[flat(a, b, c)] {
                            Some(var) => values[class_of_var[var]],
                            None => 0,
                        };
                        assignment.insert(triple, value);
                    }
                }
            }
            Ok(PreorderOutcome::Found(assignment))
        }
        SolveOutcome::Unsatisfiable => Ok(PreorderOutcome::Impossible(PreorderRefutation {
            k,
            ball_size: n,
            nodes,
        })),
    }
}

#[derive(Debug, Clone)]
pub enum TripleSearchOutcome {
    Found(CircularAssignment),
    /// Exhaustive refutation: no value choice on the triples satisfies the
    /// constraints.
    Refuted { nodes: u64 },
}

impl TripleSearchOutcome {
    pub fn found(&self) -> Option<&CircularAssignment> {
        match self {
            TripleSearchOutcome::Found(a) => Some(a),
            TripleSearchOutcome::Refuted { .. } => None,
        }
    }
}

/// Search for `±1` values on the given non-degenerate triples subject to
/// the alternating-sum condition (with degenerate faces counting as zero)
/// and invariance under component translations that stay inside the set.
pub fn triple_assignment_search(
    triples: &BTreeSet<Triple>,
) -> Result<TripleSearchOutcome, CircularError> {
    triple_assignment_search_with_budget(triples, DEFAULT_SOLVER_NODE_BUDGET)
}

pub fn triple_assignment_search_with_budget(
    triples: &BTreeSet<Triple>,
    max_nodes: u64,
) -> Result<TripleSearchOutcome, CircularError> {
    if triples.is_empty() {
        return Ok(TripleSearchOutcome::Found(CircularAssignment::new()));
    }
    let owner = triples.iter().next().expect("nonempty").owner().clone();
    for t in triples {
        if t.owner() != &owner {
            return Err(CircularError::MixedOwners);
        }
        if t.is_degenerate() {
            return Err(CircularError::DegenerateInput {
                triple: Box::new(t.clone()),
            });
        }
    }

    let ordered: Vec<&Triple> = triples.iter().collect();
    let var_of: BTreeMap<&Triple, usize> =
        ordered.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut pool: BTreeSet<Element> = BTreeSet::new();
    for t in &ordered {
        pool.extend(t.components().iter().cloned());
    }
    let pool: Vec<Element> = pool.into_iter().collect();

    let mut uf = UnionFind::new(ordered.len());
    for y in &pool {
        for (vi, t) in ordered.iter().enumerate() {
            let translated = t.translated(y)?;
            if let Some(&target) = var_of.get(&translated) {
                uf.union(vi, target);
            }
        }
    }
    let mut class_of_var: Vec<usize> = vec![usize::MAX; ordered.len()];
    let mut class_count = 0;
    for vi in 0..ordered.len() {
        let root = uf.find(vi);
        if class_of_var[root] == usize::MAX {
            class_of_var[root] = class_count;
            class_count += 1;
        }
        class_of_var[vi] = class_of_var[root];
    }

    let mut rows: BTreeSet<Vec<(usize, i32)>> = BTreeSet::new();
    let face = |a: &Element, b: &Element, c: &Element| -> Option<Option<usize>> {
        // Outer None: the tuple is unconstrained (face neither in the set
        // nor degenerate). Inner None: degenerate face contributing zero.
        if a == b || a == c || b == c {
            return Some(None);
        }
        let t = Triple {
            components: [a.clone(), b.clone(), c.clone()],
        };
        var_of.get(&t).map(|&v| Some(v))
    };
    for a in &pool {
        for b in &pool {
            for c in &pool {
                for d in &pool {
                    let faces = [
                        (face(a, b, c), 1),
                        (face(a, b, d), -1),
                        (face(a, c, d), 1),
                        (face(b, c, d), -1),
                    ];
                    if faces.iter().any(|(f, _)| f.is_none()) {
                        continue;
                    }
                    let mut row: BTreeMap<usize, i32> = BTreeMap::new();
                    for (f, sign) in faces {
                        if let Some(Some(var)) = f {
                            *row.entry(class_of_var[var]).or_insert(0) += sign;
                        }
                    }
                    let row: Vec<(usize, i32)> =
                        row.into_iter().filter(|&(_, coef)| coef != 0).collect();
                    if !row.is_empty() {
                        rows.insert(row);
                    }
                }
            }
        }
    }

    let problem = Problem {
        class_count,
        constraints: rows.into_iter().collect(),
    };
    let (outcome, nodes) = solve(&problem, max_nodes)?;
    match outcome {
        SolveOutcome::Satisfiable(values) => {
            let mut assignment = CircularAssignment::new();
            for (vi, t) in ordered.iter().enumerate() {
                assignment.insert((*t).clone(), values[class_of_var[vi]]);
            }
            Ok(TripleSearchOutcome::Found(assignment))
        }
        SolveOutcome::Unsatisfiable => Ok(TripleSearchOutcome::Refuted { nodes }),
    }
}

/// Membership oracle for an antisymmetric semigroup inside a kernel. The
/// predicate may describe an infinite set; antisymmetry is enforced lazily
/// against the log of elements answered positive.
pub struct SemigroupOracle {
    predicate: Box<dyn Fn(&Element) -> bool + Send + Sync>,
    positives: Mutex<BTreeSet<Element>>,
}

impl fmt::Debug for SemigroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemigroupOracle")
            .field("positives_logged", &self.positives.lock().unwrap().len())
            .finish()
    }
}

impl SemigroupOracle {
    pub fn from_predicate<F>(predicate: F) -> Self
    where
        F: Fn(&Element) -> bool + Send + Sync + 'static,
    {
        SemigroupOracle {
            predicate: Box::new(predicate),
            positives: Mutex::new(BTreeSet::new()),
        }
    }

    pub fn empty() -> Self {
        Self::from_predicate(|_| false)
    }

    /// Membership through a positive cone; out-of-domain queries answer
    /// negative.
    pub fn from_cone(cone: ConeHandle) -> Self {
        Self::from_predicate(move |g| cone.membership(g).unwrap_or(false))
    }

    pub fn member(&self, g: &Element) -> Result<bool, CircularError> {
        if !(self.predicate)(g) {
            return Ok(false);
        }
        if g.is_identity() {
            return Err(CircularError::AntisymmetryViolation { element: g.clone() });
        }
        let mut log = self.positives.lock().expect("poisoned oracle log");
        if log.contains(&g.inverse()) {
            return Err(CircularError::AntisymmetryViolation { element: g.clone() });
        }
        log.insert(g.clone());
        Ok(true)
    }
}

/// Extend a circular value function from a quotient to a finite subset.
///
/// Triples with distinct images copy the quotient value. When exactly two
/// images agree the triple is permuted so the equal pair sits in front, the
/// sign of that permutation is applied, and the value is `+1` exactly when
/// the pair's difference lies in the semigroup. When all three images agree
/// the value is decided by the parity of how many of the three differences
/// `g1^-1 g2, g2^-1 g3, g1^-1 g3` lie in the semigroup, counted with
/// multiplicity.
pub fn extension_circular_order(
    x_set: &FiniteSubset,
    quotient_map: &Homomorphism,
    quotient_assignment: &CircularAssignment,
    semigroup: &SemigroupOracle,
) -> Result<CircularAssignment, CircularError> {
    // Coverage: every nontrivial kernel difference must be classified by
    // the semigroup or its inverses.
    for g in x_set.iter() {
        for h in x_set.iter() {
            let diff = g.inverse().multiply(h)?;
            if diff.is_identity() || !quotient_map.kernel_contains(&diff)? {
                continue;
            }
            let forward = semigroup.member(&diff)?;
            let backward = semigroup.member(&diff.inverse())?;
            if !forward && !backward {
                return Err(CircularError::CoverageFailure { element: diff });
            }
        }
    }

    let elements: Vec<Element> = x_set.iter().cloned().collect();
    let mut assignment = CircularAssignment::new();
    for g1 in &elements {
        for g2 in &elements {
            for g3 in &elements {
                let triple = Triple {
                    components: [g1.clone(), g2.clone(), g3.clone()],
                };
                let value = if triple.is_degenerate() {
                    0
                } else {
                    extension_value(g1, g2, g3, quotient_map, quotient_assignment, semigroup)?
                };
                assignment.insert(triple, value);
            }
        }
    }
    Ok(assignment)
}

fn extension_value(
    g1: &Element,
    g2: &Element,
    g3: &Element,
    quotient_map: &Homomorphism,
    quotient_assignment: &CircularAssignment,
    semigroup: &SemigroupOracle,
) -> Result<i8, CircularError> {
    let i1 = quotient_map.apply(g1)?;
    let i2 = quotient_map.apply(g2)?;
    let i3 = quotient_map.apply(g3)?;

    let pair_value = |u: &Element, v: &Element| -> Result<i8, CircularError> {
        let diff = u.inverse().multiply(v)?;
        Ok(if semigroup.member(&diff)? { 1 } else { -1 })
    };

    if i1 != i2 && i1 != i3 && i2 != i3 {
        let image_triple = Triple {
            components: [i1, i2, i3],
        };
        quotient_assignment
            .value(&image_triple)
            .ok_or(CircularError::QuotientAssignmentIncomplete {
                triple: Box::new(image_triple),
            })
    } else if i1 == i2 && i2 == i3 {
        // Count the three listed differences with multiplicity.
        let mut positives = 0;
        for (u, v) in [(g1, g2), (g2, g3), (g1, g3)] {
            let diff = u.inverse().multiply(v)?;
            if semigroup.member(&diff)? {
                positives += 1;
            }
        }
        Ok(if positives % 2 == 1 { 1 } else { -1 })
    } else if i1 == i2 {
        pair_value(g1, g2)
    } else if i2 == i3 {
        // Rotate the equal pair to the front; a rotation is even.
        pair_value(g2, g3)
    } else {
        // Swap the last two entries; a transposition is odd.
        Ok(-pair_value(g1, g3)?)
    }
}

/// The circular values induced by a left order: the sign of the permutation
/// sorting the triple ascending, zero on degenerate triples. The cone must
/// order every ratio appearing in the domain.
pub fn cone_to_circular(
    cone: &ConeHandle,
    domain: &BTreeSet<Triple>,
) -> Result<CircularAssignment, CircularError> {
    let mut assignment = CircularAssignment::new();
    for triple in domain {
        let value = if triple.is_degenerate() {
            0
        } else {
            let [a, b, c] = triple.components();
            let less = |u: &Element, v: &Element| -> Result<bool, CircularError> {
                let forward = cone.membership(&u.inverse().multiply(v)?)?;
                let backward = cone.membership(&v.inverse().multiply(u)?)?;
                if forward == backward {
                    return Err(CircularError::ConeOrderFailure {
                        detail: "trichotomy failed on a ratio".to_owned(),
                    });
                }
                Ok(forward)
            };
            let ab = less(a, b)?;
            let ac = less(a, c)?;
            let bc = less(b, c)?;
            // Reject a 3-cycle before reading off the permutation sign.
            if (ab && bc && !ac) || (!ab && !bc && ac) {
                return Err(CircularError::ConeOrderFailure {
                    detail: "comparator is not transitive on a triple".to_owned(),
                });
            }
            let inversions = [ab, ac, bc].iter().filter(|&&asc| !asc).count();
            if inversions % 2 == 0 {
                1
            } else {
                -1
            }
        };
        assignment.insert(triple.clone(), value);
    }
    Ok(assignment)
}

/// The standard circular values on a finite cyclic group: `+1` exactly when
/// the three residues appear in counterclockwise order.
pub fn standard_cyclic_assignment(group: &Group) -> Result<CircularAssignment, CircularError> {
    let GroupKind::FiniteCyclic(order) = group.kind() else {
        return Err(CircularError::WrongGroupKind {
            expected: "finite cyclic",
            found: group.to_string(),
        });
    };
    let order = *order;
    let n = i64::from(order);
    let residue = |e: &Element| -> i64 {
        match e.payload() {
            crate::groups::Payload::Vector(v) => v[0],
            _ => unreachable!("cyclic payload"),
        }
    };
    let elements: Vec<Element> = group.ball(order)?.iter().cloned().collect();
    let mut assignment = CircularAssignment::new();
    for a in &elements {
        for b in &elements {
            for c in &elements {
                let triple = Triple {
                    components: [a.clone(), b.clone(), c.clone()],
                };
                let value = if triple.is_degenerate() {
                    0
                } else {
                    let u = (residue(b) - residue(a)).rem_euclid(n);
                    let v = (residue(c) - residue(a)).rem_euclid(n);
                    if u < v {
                        1
                    } else {
                        -1
                    }
                };
                assignment.insert(triple, value);
            }
        }
    }
    Ok(assignment)
}
