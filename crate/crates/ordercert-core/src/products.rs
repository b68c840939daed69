//! Brute-force unique-product and extreme-point detection on finite
//! subsets, the subset condition for the unique product property, and the
//! constructive lifting procedures through a quotient map.
//!
//! The lifts delegate to pluggable providers for the base and kernel steps
//! and verify every output against the exhaustive definitional check before
//! returning it, so a lift can fail loudly but never silently return a
//! wrong answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::groups::{Element, Group, GroupError, Homomorphism};

/// A deduplicated finite subset of one group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteSubset {
    owner: Group,
    members: BTreeSet<Element>,
}

impl FiniteSubset {
    pub fn new<I: IntoIterator<Item = Element>>(
        owner: &Group,
        members: I,
    ) -> Result<Self, ProductError> {
        let members: BTreeSet<Element> = members.into_iter().collect();
        for m in &members {
            if m.group() != owner {
                return Err(ProductError::OwnerMismatch {
                    expected: owner.to_string(),
                    found: m.group().to_string(),
                });
            }
        }
        Ok(FiniteSubset {
            owner: owner.clone(),
            members,
        })
    }

    pub fn owner(&self) -> &Group {
        &self.owner
    }

    pub fn members(&self) -> &BTreeSet<Element> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.members.contains(g)
    }

    pub fn contains_identity(&self) -> bool {
        self.members.contains(&self.owner.identity())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.members.iter()
    }

    /// `{g x | x in self}`.
    pub fn left_translated(&self, g: &Element) -> Result<FiniteSubset, ProductError> {
        let members: Result<BTreeSet<Element>, GroupError> =
            self.members.iter().map(|x| g.multiply(x)).collect();
        Ok(FiniteSubset {
            owner: self.owner.clone(),
            members: members?,
        })
    }

    /// `{x g | x in self}`.
    pub fn right_translated(&self, g: &Element) -> Result<FiniteSubset, ProductError> {
        let members: Result<BTreeSet<Element>, GroupError> =
            self.members.iter().map(|x| x.multiply(g)).collect();
        Ok(FiniteSubset {
            owner: self.owner.clone(),
            members: members?,
        })
    }

    fn lex_min(&self) -> Option<&Element> {
        self.members.iter().next()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductError {
    OwnerMismatch { expected: String, found: String },
    EmptySet,
    IdentityNotInSet,
    /// The subset-pair enumeration is exponential, so the input size is
    /// hard-capped.
    SetTooLarge { len: usize, max: usize },
    TrivialTarget,
    /// The image pair has no unique product, so the lift hypothesis fails.
    NoImageUniqueProduct,
    RecursionBudgetExceeded,
    /// A provider returned a value failing its own definitional check.
    ProviderViolation { provider: &'static str },
    /// The assembled lift output failed the exhaustive definitional check.
    LiftVerificationFailed,
    Group(GroupError),
}

impl fmt::Display for ProductError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductError::OwnerMismatch { expected, found } => {
                write!(f, "subset owner mismatch: expected {expected}, found {found}")
            }
            ProductError::EmptySet => write!(f, "operation requires a nonempty subset"),
            ProductError::IdentityNotInSet => {
                write!(f, "operation requires the identity in the subset")
            }
            ProductError::SetTooLarge { len, max } => {
                write!(f, "set of {len} elements exceeds the scan cap of {max}")
            }
            ProductError::TrivialTarget => write!(f, "quotient target is the trivial group"),
            ProductError::NoImageUniqueProduct => {
                write!(f, "image sets admit no unique product")
            }
            ProductError::RecursionBudgetExceeded => {
                write!(f, "lift recursion exceeded its cardinality budget")
            }
            ProductError::ProviderViolation { provider } => {
                write!(f, "{provider} provider returned an invalid point")
            }
            ProductError::LiftVerificationFailed => {
                write!(f, "lift output failed the definitional check")
            }
            ProductError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ProductError {}

impl From<GroupError> for ProductError {
    fn from(e: GroupError) -> Self {
        ProductError::Group(e)
    }
}

/// The products of a pair of finite subsets that factor in exactly one way,
/// each with its unique factor pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueProductReport {
    products: BTreeMap<Element, (Element, Element)>,
}

impl UniqueProductReport {
    pub fn products(&self) -> &BTreeMap<Element, (Element, Element)> {
        &self.products
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.products.contains_key(g)
    }

    pub fn lex_greatest(&self) -> Option<(&Element, &(Element, Element))> {
        self.products.iter().next_back()
    }
}

/// Exhaustive multiplication table over `A x B`, reporting every product
/// with exactly one factorization.
pub fn unique_products(
    a: &FiniteSubset,
    b: &FiniteSubset,
) -> Result<UniqueProductReport, ProductError> {
    if a.is_empty() || b.is_empty() {
        return Err(ProductError::EmptySet);
    }
    if a.owner() != b.owner() {
        return Err(ProductError::OwnerMismatch {
            expected: a.owner().to_string(),
            found: b.owner().to_string(),
        });
    }
    let mut table: BTreeMap<Element, Vec<(Element, Element)>> = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            let product = x.multiply(y)?;
            table
                .entry(product)
                .or_default()
                .push((x.clone(), y.clone()));
        }
    }
    let products = table
        .into_iter()
        .filter_map(|(p, mut pairs)| (pairs.len() == 1).then(|| (p, pairs.pop().expect("one"))))
        .collect();
    Ok(UniqueProductReport { products })
}

/// Translate a pair so both sets contain the identity: returns
/// `(x^-1 X, Y y^-1, (x, y))` for the lexicographically least `x` in `X`
/// and `y` in `Y`. Any unique product of the outputs pulls back to the
/// unique product `x (x^-1 g)(h y^-1) y` of the original pair.
pub fn upp_normalize(
    x_set: &FiniteSubset,
    y_set: &FiniteSubset,
) -> Result<(FiniteSubset, FiniteSubset, (Element, Element)), ProductError> {
    let x = x_set.lex_min().ok_or(ProductError::EmptySet)?.clone();
    let y = y_set.lex_min().ok_or(ProductError::EmptySet)?.clone();
    let translated_x = x_set.left_translated(&x.inverse())?;
    let translated_y = y_set.right_translated(&y.inverse())?;
    Ok((translated_x, translated_y, (x, y)))
}

/// Outcome of the subset condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UppConditionOutcome {
    Holds { pairs_checked: u64 },
    /// The first qualifying pair without a unique product, in bitmask
    /// enumeration order over the sorted members.
    Fails { x: FiniteSubset, y: FiniteSubset },
}

impl UppConditionOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, UppConditionOutcome::Holds { .. })
    }
}

/// Check that every pair of subsets of `A` containing the identity has a
/// unique product. The first failing pair is returned as a counterexample.
pub fn upp_subset_condition(a: &FiniteSubset) -> Result<UppConditionOutcome, ProductError> {
    if !a.contains_identity() {
        return Err(ProductError::IdentityNotInSet);
    }
    let identity = a.owner().identity();
    let rest: Vec<&Element> = a.iter().filter(|g| !g.is_identity()).collect();
    let n = rest.len();
    const MAX_REST: usize = 14;
    if n > MAX_REST {
        return Err(ProductError::SetTooLarge {
            len: a.len(),
            max: MAX_REST + 1,
        });
    }
    let mut pairs_checked = 0u64;
    for mask_x in 0..(1usize << n) {
        let x_members = subset_for_mask(&identity, &rest, mask_x);
        let x_set = FiniteSubset::new(a.owner(), x_members)?;
        for mask_y in 0..(1usize << n) {
            let y_members = subset_for_mask(&identity, &rest, mask_y);
            let y_set = FiniteSubset::new(a.owner(), y_members)?;
            pairs_checked += 1;
            if unique_products(&x_set, &y_set)?.is_empty() {
                return Ok(UppConditionOutcome::Fails { x: x_set, y: y_set });
            }
        }
    }
    Ok(UppConditionOutcome::Holds { pairs_checked })
}

fn subset_for_mask(identity: &Element, rest: &[&Element], mask: usize) -> Vec<Element> {
    let mut members = vec![identity.clone()];
    for (i, g) in rest.iter().enumerate() {
        if mask & (1 << i) != 0 {
            members.push((*g).clone());
        }
    }
    members
}

/// Supplies one unique product with its factor pair for a pair of finite
/// subsets; the induction workhorse of the unique-product lift.
pub trait UniqueProductProvider {
    fn unique_product(
        &self,
        a: &FiniteSubset,
        b: &FiniteSubset,
    ) -> Result<(Element, (Element, Element)), ProductError>;
}

/// Exhaustive provider selecting the lexicographically greatest unique
/// product.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceProducts;

impl UniqueProductProvider for BruteForceProducts {
    fn unique_product(
        &self,
        a: &FiniteSubset,
        b: &FiniteSubset,
    ) -> Result<(Element, (Element, Element)), ProductError> {
        let report = unique_products(a, b)?;
        let (p, pair) = report
            .lex_greatest()
            .ok_or(ProductError::NoImageUniqueProduct)?;
        Ok((p.clone(), pair.clone()))
    }
}

/// Lift a unique product through a quotient map.
///
/// When both sets lie inside the kernel the kernel provider answers
/// directly. Otherwise the image pair must admit a unique product, chosen
/// as the lexicographically greatest; the fibres over its factors are
/// translated into the kernel and the recursion produces the factor pair.
/// Each recursion level shrinks the combined cardinality, which bounds the
/// recursion depth by `|X| + |Y|`.
pub fn upp_lift(
    x_set: &FiniteSubset,
    y_set: &FiniteSubset,
    quotient_map: &Homomorphism,
    kernel_oracle: &dyn UniqueProductProvider,
) -> Result<(Element, (Element, Element)), ProductError> {
    if !x_set.contains_identity() || !y_set.contains_identity() {
        return Err(ProductError::IdentityNotInSet);
    }
    let budget = x_set.len() + y_set.len();
    lift_step(x_set, y_set, quotient_map, kernel_oracle, budget)
}

fn lift_step(
    x_set: &FiniteSubset,
    y_set: &FiniteSubset,
    quotient_map: &Homomorphism,
    kernel_oracle: &dyn UniqueProductProvider,
    budget: usize,
) -> Result<(Element, (Element, Element)), ProductError> {
    if budget == 0 {
        return Err(ProductError::RecursionBudgetExceeded);
    }
    if x_set.is_empty() || y_set.is_empty() {
        return Err(ProductError::EmptySet);
    }
    let all_kernel = x_set
        .iter()
        .chain(y_set.iter())
        .map(|g| quotient_map.kernel_contains(g))
        .collect::<Result<Vec<bool>, GroupError>>()?
        .into_iter()
        .all(|b| b);
    let (product, pair) = if all_kernel {
        kernel_oracle.unique_product(x_set, y_set)?
    } else {
        let image_x = image_subset(x_set, quotient_map)?;
        let image_y = image_subset(y_set, quotient_map)?;
        let image_report = unique_products(&image_x, &image_y)?;
        let (_, (qx, qy)) = image_report
            .lex_greatest()
            .ok_or(ProductError::NoImageUniqueProduct)?;

        let fibre_x = fibre(x_set, quotient_map, qx)?;
        let fibre_y = fibre(y_set, quotient_map, qy)?;
        let x = fibre_x.lex_min().ok_or(ProductError::EmptySet)?.clone();
        let y = fibre_y.lex_min().ok_or(ProductError::EmptySet)?.clone();
        let shifted_x = fibre_x.left_translated(&x.inverse())?;
        let shifted_y = fibre_y.right_translated(&y.inverse())?;
        let (_, (a, b)) = lift_step(
            &shifted_x,
            &shifted_y,
            quotient_map,
            kernel_oracle,
            budget - 1,
        )?;
        let s = x.multiply(&a)?;
        let t = b.multiply(&y)?;
        (s.multiply(&t)?, (s, t))
    };
    // Definitional gate on every return.
    let report = unique_products(x_set, y_set)?;
    match report.products().get(&product) {
        Some(found) if *found == pair => Ok((product, pair)),
        _ => Err(ProductError::LiftVerificationFailed),
    }
}

fn image_subset(
    set: &FiniteSubset,
    quotient_map: &Homomorphism,
) -> Result<FiniteSubset, ProductError> {
    let members: Result<BTreeSet<Element>, GroupError> =
        set.iter().map(|g| quotient_map.apply(g)).collect();
    FiniteSubset::new(quotient_map.target(), members?)
}

fn fibre(
    set: &FiniteSubset,
    quotient_map: &Homomorphism,
    image: &Element,
) -> Result<FiniteSubset, ProductError> {
    let mut members = BTreeSet::new();
    for g in set.iter() {
        if &quotient_map.apply(g)? == image {
            members.insert(g.clone());
        }
    }
    FiniteSubset::new(set.owner(), members)
}

/// The subset of points `a` with `a^-1 A ∩ A^-1 a = {id}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremePointSet {
    points: BTreeSet<Element>,
}

impl ExtremePointSet {
    pub fn points(&self) -> &BTreeSet<Element> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.points.contains(g)
    }

    pub fn lex_first(&self) -> Option<&Element> {
        self.points.iter().next()
    }
}

pub fn is_extreme_point(set: &FiniteSubset, a: &Element) -> Result<bool, ProductError> {
    if !set.contains(a) {
        return Ok(false);
    }
    let a_inv = a.inverse();
    let left: BTreeSet<Element> = set
        .iter()
        .map(|x| a_inv.multiply(x))
        .collect::<Result<_, GroupError>>()?;
    let right: BTreeSet<Element> = set
        .iter()
        .map(|x| x.inverse().multiply(a))
        .collect::<Result<_, GroupError>>()?;
    Ok(left.intersection(&right).all(Element::is_identity))
}

/// Exhaustive extreme-point scan.
pub fn extreme_points(set: &FiniteSubset) -> Result<ExtremePointSet, ProductError> {
    if set.is_empty() {
        return Err(ProductError::EmptySet);
    }
    let mut points = BTreeSet::new();
    for a in set.iter() {
        if is_extreme_point(set, a)? {
            points.insert(a.clone());
        }
    }
    Ok(ExtremePointSet { points })
}

/// Supplies extreme points of a finite subset; the induction workhorse of
/// the extreme-point lift.
pub trait ExtremePointProvider {
    fn extreme_points(&self, set: &FiniteSubset) -> Result<ExtremePointSet, ProductError>;
}

/// Exhaustive extreme-point provider.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceExtremes;

impl ExtremePointProvider for BruteForceExtremes {
    fn extreme_points(&self, set: &FiniteSubset) -> Result<ExtremePointSet, ProductError> {
        extreme_points(set)
    }
}

/// Lift an extreme point through a quotient map: take an extreme point of
/// the image, translate its fibre into the kernel, take an extreme point
/// there, and multiply. When providers return several points the
/// lexicographically first is used. The output is verified against the
/// definitional check before returning.
pub fn diffuse_lift(
    x_set: &FiniteSubset,
    quotient_map: &Homomorphism,
    base_extreme: &dyn ExtremePointProvider,
    kernel_extreme: &dyn ExtremePointProvider,
) -> Result<Element, ProductError> {
    if !x_set.contains_identity() {
        return Err(ProductError::IdentityNotInSet);
    }
    if quotient_map.target().is_trivial() {
        return Err(ProductError::TrivialTarget);
    }
    let image = image_subset(x_set, quotient_map)?;
    let base_points = base_extreme.extreme_points(&image)?;
    let image_point = base_points
        .lex_first()
        .ok_or(ProductError::ProviderViolation { provider: "base" })?
        .clone();
    if !is_extreme_point(&image, &image_point)? {
        return Err(ProductError::ProviderViolation { provider: "base" });
    }
    let a = fibre(x_set, quotient_map, &image_point)?
        .lex_min()
        .ok_or(ProductError::ProviderViolation { provider: "base" })?
        .clone();

    let translated = x_set.left_translated(&a.inverse())?;
    let kernel_part = {
        let mut members = BTreeSet::new();
        for g in translated.iter() {
            if quotient_map.kernel_contains(g)? {
                members.insert(g.clone());
            }
        }
        FiniteSubset::new(x_set.owner(), members)?
    };
    let kernel_points = kernel_extreme.extreme_points(&kernel_part)?;
    let b = kernel_points
        .lex_first()
        .ok_or(ProductError::ProviderViolation { provider: "kernel" })?
        .clone();
    if !is_extreme_point(&kernel_part, &b)? {
        return Err(ProductError::ProviderViolation { provider: "kernel" });
    }

    let result = a.multiply(&b)?;
    if !is_extreme_point(x_set, &result)? {
        return Err(ProductError::LiftVerificationFailed);
    }
    Ok(result)
}
