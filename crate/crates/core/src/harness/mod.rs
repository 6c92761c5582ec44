//! Fixture corpus, exhaustive census and property suites, plus the
//! brute-force oracle they are checked against.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub mod catalog;
pub mod census;
pub mod fixtures;
pub mod oracle;
pub mod properties;

pub use catalog::{builtin_catalog, parse_catalog};
pub use census::{census, census_with, check_properties, CensusOptions, CensusReport, Divergence, DivergenceKind};
pub use fixtures::{fixture_model, fixtures, Fixture};
pub use properties::{Property, PropertyResult};

/// Which truth rule applies to single-quantifier sentences: `S2` requires
/// satisfaction and t-relevance for either flavor, `S3` is the recursive
/// rule, which only asks relevance of all-universal prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Semantics {
    S2,
    #[default]
    S3,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::S2 => "s2",
            Semantics::S3 => "s3",
        })
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s2" => Ok(Semantics::S2),
            "s3" => Ok(Semantics::S3),
            _ => Err(Error::Invalid(format!("unknown semantics `{s}`; expected s2 or s3"))),
        }
    }
}
