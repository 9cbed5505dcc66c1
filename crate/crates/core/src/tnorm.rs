use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::membership::Membership;

/// Aggregation used for the two parallel incidences a contraction creates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    #[serde(rename = "min")]
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

    pub fn apply(self, a: &Membership, b: &Membership) -> Membership {
        match self {
            TNorm::Minimum => a.min(b).clone(),
            TNorm::Product => a.product(b),
            TNorm::Lukasiewicz => a.lukasiewicz(b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "min" | "minimum" => Ok(TNorm::Minimum),
            "product" | "prod" => Ok(TNorm::Product),
            "lukasiewicz" | "luk" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::Precondition(format!("unknown t-norm {other:?}"))),
        }
    }
}
