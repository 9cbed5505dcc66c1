//! Vertex labels and canonical edge keys.
//!
//! A label is a `+`-joined list of atoms kept in sorted order. Contracting
//! `a+b` with `c` gives `a+b+c`, so merged names do not depend on the order
//! in which a set of contractions was applied.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MERGE_SEPARATOR: char = '+';

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel(Arc<str>);

impl VertexLabel {
    pub fn new(s: impl AsRef<str>) -> Result<Self> {
        let s = s.as_ref();
        let mut atoms: Vec<&str> = s.split(MERGE_SEPARATOR).collect();
        if atoms
            .iter()
            .any(|a| a.is_empty() || a.chars().any(char::is_whitespace))
        {
            return Err(Error::BadLabel(s.to_string()));
        }
        atoms.sort_unstable();
        if atoms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadLabel(s.to_string()));
        }
        Ok(VertexLabel(atoms.join("+").into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.0.split(MERGE_SEPARATOR)
    }

    pub fn is_merged(&self) -> bool {
        self.0.contains(MERGE_SEPARATOR)
    }

    /// Canonical name of the vertex obtained by merging `a` and `b`.
    pub fn merge(a: &VertexLabel, b: &VertexLabel) -> VertexLabel {
        let mut atoms: Vec<&str> = a.atoms().chain(b.atoms()).collect();
        atoms.sort_unstable();
        VertexLabel(atoms.join("+").into())
    }

    pub fn shares_atom_with(&self, other: &VertexLabel) -> bool {
        self.atoms().any(|a| other.atoms().any(|b| a == b))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        VertexLabel::new(s).map_err(serde::de::Error::custom)
    }
}

/// Unordered vertex pair stored as `(min, max)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    u: VertexLabel,
    v: VertexLabel,
}

impl EdgeKey {
    pub fn new(a: VertexLabel, b: VertexLabel) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(EdgeKey { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(EdgeKey { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// Convenience constructor from raw label strings.
    pub fn parse(a: &str, b: &str) -> Result<Self> {
        EdgeKey::new(VertexLabel::new(a)?, VertexLabel::new(b)?)
    }

    pub fn u(&self) -> &VertexLabel {
        &self.u
    }

    pub fn v(&self) -> &VertexLabel {
        &self.v
    }

    pub fn contains(&self, x: &VertexLabel) -> bool {
        &self.u == x || &self.v == x
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: &VertexLabel) -> Option<&VertexLabel> {
        if &self.u == x {
            Some(&self.v)
        } else if &self.v == x {
            Some(&self.u)
        } else {
            None
        }
    }

    pub fn shares_endpoint(&self, other: &EdgeKey) -> bool {
        self.contains(&other.u) || self.contains(&other.v)
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Debug for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.u, self.v)
    }
}

impl Serialize for EdgeKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.u)?;
        t.serialize_element(&self.v)?;
        t.end()
    }
}
