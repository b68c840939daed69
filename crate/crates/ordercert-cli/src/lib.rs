//! Command line front end: group and element grammars, certificate
//! documents, command dispatch, and the independent certificate verifier.
//!
//! Every command emits a versioned JSON document whose evidence replays
//! with the library primitives alone; `verify` re-checks a document without
//! trusting the process that produced it.

pub mod document;
pub mod runner;
pub mod spec;
pub mod text;
pub mod verify;

use std::fmt;

use ordercert_core::circular::CircularError;
use ordercert_core::closures::ClosureError;
use ordercert_core::cones::ConeError;
use ordercert_core::groups::GroupError;
use ordercert_core::order_search::SearchError;
use ordercert_core::products::ProductError;

#[derive(Debug)]
pub enum CliError {
    UnknownGroupSpec { spec: String },
    UnknownGenerator { token: String, group: String },
    MalformedExponent { token: String },
    MalformedPoly { detail: String },
    /// Polynomial syntax used outside `laurent-z`, or vice versa.
    WrongSyntaxForGroup { group: String },
    UnknownProperty { property: String },
    UnknownCone { cone: String },
    MissingParameter { name: &'static str },
    InvalidParameter { name: &'static str, detail: String },
    UnsupportedCone { detail: String },
    MalformedDerivation { detail: String },
    Group(GroupError),
    Closure(ClosureError),
    Search(SearchError),
    Product(ProductError),
    Circular(CircularError),
    Cone(ConeError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::UnknownGroupSpec { spec } => write!(f, "unknown group spec '{spec}'"),
            CliError::UnknownGenerator { token, group } => {
                write!(f, "unknown generator '{token}' for group {group}")
            }
            CliError::MalformedExponent { token } => {
                write!(f, "malformed exponent in token '{token}'")
            }
            CliError::MalformedPoly { detail } => {
                write!(f, "malformed polynomial element: {detail}")
            }
            CliError::WrongSyntaxForGroup { group } => {
                write!(f, "element syntax does not match group {group}")
            }
            CliError::UnknownProperty { property } => {
                write!(f, "unknown property '{property}'")
            }
            CliError::UnknownCone { cone } => write!(f, "unknown cone '{cone}'"),
            CliError::MissingParameter { name } => write!(f, "missing parameter --{name}"),
            CliError::InvalidParameter { name, detail } => {
                write!(f, "invalid parameter --{name}: {detail}")
            }
            CliError::UnsupportedCone { detail } => {
                write!(f, "cone not expressible in the document grammar: {detail}")
            }
            CliError::MalformedDerivation { detail } => {
                write!(f, "malformed derivation: {detail}")
            }
            CliError::Group(e) => write!(f, "{e}"),
            CliError::Closure(e) => write!(f, "{e}"),
            CliError::Search(e) => write!(f, "{e}"),
            CliError::Product(e) => write!(f, "{e}"),
            CliError::Circular(e) => write!(f, "{e}"),
            CliError::Cone(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Group(e)
    }
}

impl From<ClosureError> for CliError {
    fn from(e: ClosureError) -> Self {
        CliError::Closure(e)
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        CliError::Search(e)
    }
}

impl From<ProductError> for CliError {
    fn from(e: ProductError) -> Self {
        CliError::Product(e)
    }
}

impl From<CircularError> for CliError {
    fn from(e: CircularError) -> Self {
        CliError::Circular(e)
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        CliError::Cone(e)
    }
}
