//! Certify or refute orderability properties of concrete finitely generated
//! groups at desk scale.
//!
//! The crate provides:
//!
//! - [`groups`]: canonical-form arithmetic for the built-in groups,
//!   homomorphisms, and Cayley ball enumeration;
//! - [`closures`]: truncated semigroup closures with replayable derivation
//!   witnesses;
//! - [`order_search`]: sign-assignment searches for left-, Conradian- and
//!   bi-orderability criteria;
//! - [`products`]: unique-product and extreme-point detection plus the
//!   constructive lifting procedures through quotients;
//! - [`circular`]: circular-ordering values on triples, constraint search,
//!   and the extension construction through a quotient;
//! - [`cones`]: positive-cone oracles, conjugation orbits, and recurrence
//!   window checks.
//!
//! Everything is a pure function over immutable values. Searches are
//! deterministic: identical inputs produce identical certificates.

pub mod circular;
pub mod closures;
pub mod cones;
pub mod groups;
pub mod order_search;
pub mod products;

pub use groups::{Ball, Element, Group, GroupError, GroupKind, Homomorphism, LaurentPoly, Payload};
