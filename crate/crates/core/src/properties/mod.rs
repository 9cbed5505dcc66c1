//! Crisp graph properties and their closure attributes.

pub mod connectivity;
pub mod hereditary;
pub mod minor;
pub mod planarity;
pub mod series_parallel;
pub mod triconnected;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use connectivity::{edge_connectivity, is_bipartite, is_connected, is_k_connected};
pub use hereditary::{verify_hereditary_contraction, HereditaryReport};
pub use planarity::is_planar;
pub use series_parallel::is_series_parallel;
pub use triconnected::{triconnected_components, triconnected_split, SplitComponent};

use crate::error::{Error, Result};
use crate::graph::{CrispGraph, FuzzyGraph};
use crate::membership::MembershipLevel;

/// Built-in crisp properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Planar,
    SeriesParallel,
    Bipartite,
    Connected,
    ThreeConnected,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Planar,
        Property::SeriesParallel,
        Property::Bipartite,
        Property::Connected,
        Property::ThreeConnected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Planar => "planar",
            Property::SeriesParallel => "series-parallel",
            Property::Bipartite => "bipartite",
            Property::Connected => "connected",
            Property::ThreeConnected => "3-connected",
        }
    }

    pub fn check(self, g: &CrispGraph) -> Result<bool> {
        match self {
            Property::Planar => is_planar(g),
            Property::SeriesParallel => is_series_parallel(g),
            Property::Bipartite => Ok(is_bipartite(g)),
            Property::Connected => Ok(is_connected(g)),
            Property::ThreeConnected => is_k_connected(g, 3),
        }
    }

    fn hereditary_deletion(self) -> bool {
        matches!(
            self,
            Property::Planar | Property::SeriesParallel | Property::Bipartite
        )
    }

    fn hereditary_contraction(self) -> bool {
        matches!(
            self,
            Property::Planar | Property::SeriesParallel | Property::Connected
        )
    }

    fn determined_by_3cc(self) -> bool {
        matches!(self, Property::Planar | Property::SeriesParallel)
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown property {s:?}")))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A property Π: a conjunction of built-ins plus the closure attributes it
/// claims. The flags are claims; [`verify_hereditary_contraction`] tests the
/// contraction one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropertySpec {
    pub name: String,
    parts: Vec<Property>,
    pub declared_hereditary_deletion: bool,
    pub declared_hereditary_contraction: bool,
    pub declared_3cc_determined: bool,
}

impl PropertySpec {
    pub fn builtin(p: Property) -> Self {
        Self::all_of(&[p])
    }

    /// Conjunction of built-ins; a closure flag holds if it holds for every part.
    pub fn all_of(parts: &[Property]) -> Self {
        assert!(!parts.is_empty());
        let mut parts = parts.to_vec();
        parts.sort();
        parts.dedup();
        PropertySpec {
            name: parts.iter().map(|p| p.name()).collect::<Vec<_>>().join(","),
            declared_hereditary_deletion: parts.iter().all(|p| p.hereditary_deletion()),
            declared_hereditary_contraction: parts.iter().all(|p| p.hereditary_contraction()),
            declared_3cc_determined: parts.iter().all(|p| p.determined_by_3cc()),
            parts,
        }
    }

    pub fn parts(&self) -> &[Property] {
        &self.parts
    }

    pub fn check(&self, g: &CrispGraph) -> Result<bool> {
        for p in &self.parts {
            if !p.check(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl From<Property> for PropertySpec {
    fn from(p: Property) -> Self {
        PropertySpec::builtin(p)
    }
}

impl FromStr for PropertySpec {
    type Err = Error;

    /// A built-in name, or several joined by commas.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<Vec<Property>>>()?;
        if parts.is_empty() {
            return Err(Error::Precondition("empty property".into()));
        }
        Ok(PropertySpec::all_of(&parts))
    }
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Serialize for PropertySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name)
    }
}

pub fn check_property(p: &PropertySpec, g: &CrispGraph) -> Result<bool> {
    p.check(g)
}

/// Decides Π as the conjunction of Π over the triconnected components.
pub fn check_property_via_3cc(p: &PropertySpec, g: &CrispGraph) -> Result<bool> {
    if !p.declared_3cc_determined {
        return Err(Error::Precondition(format!(
            "{p} is not declared to be determined by 3-connected components"
        )));
    }
    for component in triconnected_components(g)? {
        if !p.check(&component)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// λ of the α-cut.
pub fn fuzzy_edge_connectivity(g: &FuzzyGraph, alpha: &MembershipLevel) -> Result<usize> {
    edge_connectivity(&g.alpha_cut(alpha)?)
}

/// Fuzzy 3-connectivity read as 3-connectivity of the α-cut.
pub fn is_fuzzy_3connected(g: &FuzzyGraph, alpha: &MembershipLevel) -> Result<bool> {
    is_k_connected(&g.alpha_cut(alpha)?, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::io::sample_graph;
    use crate::membership::Membership;

    fn lvl(s: &str) -> MembershipLevel {
        s.parse().unwrap()
    }

    fn full(g: &CrispGraph) -> FuzzyGraph {
        FuzzyGraph::from_crisp(g, &Membership::one(), &Membership::one())
    }

    #[test]
    fn flags() {
        let planar = PropertySpec::builtin(Property::Planar);
        assert!(planar.declared_hereditary_contraction && planar.declared_3cc_determined);
        let bip = PropertySpec::builtin(Property::Bipartite);
        assert!(bip.declared_hereditary_deletion && !bip.declared_hereditary_contraction);
        let both: PropertySpec = "planar,bipartite".parse().unwrap();
        assert_eq!(both.parts().len(), 2);
        assert!(!both.declared_3cc_determined);
        assert!("planarish".parse::<PropertySpec>().is_err());
    }

    #[test]
    fn check_examples() {
        let planar: PropertySpec = "planar".parse().unwrap();
        assert!(!check_property(&planar, &complete("k", 5)).unwrap());
        let bip: PropertySpec = "bipartite".parse().unwrap();
        assert!(check_property(&bip, &cycle("c", 4)).unwrap());
        let sp: PropertySpec = "series-parallel".parse().unwrap();
        assert!(!check_property(&sp, &complete("k", 4)).unwrap());
        let both: PropertySpec = "planar,bipartite".parse().unwrap();
        assert!(!check_property(&both, &complete("k", 4)).unwrap());
        assert!(check_property(&both, &cycle("c", 6)).unwrap());
    }

    #[test]
    fn via_3cc_examples() {
        let planar = PropertySpec::builtin(Property::Planar);
        assert!(check_property_via_3cc(&planar, &complete("k", 4)).unwrap());
        let bip = PropertySpec::builtin(Property::Bipartite);
        assert!(check_property_via_3cc(&bip, &cycle("c", 4)).is_err());
    }

    #[test]
    fn fuzzy_connectivity_examples() {
        assert_eq!(
            fuzzy_edge_connectivity(&full(&cycle("c", 4)), &lvl("1")).unwrap(),
            2
        );
        assert_eq!(
            fuzzy_edge_connectivity(&sample_graph(), &lvl("0.8")).unwrap(),
            0
        );
        assert_eq!(
            fuzzy_edge_connectivity(&sample_graph(), &lvl("0.95")).unwrap(),
            0
        );
        assert!(!is_connected(&sample_graph().alpha_cut(&lvl("0.8")).unwrap()));
    }

    #[test]
    fn fuzzy_three_connectivity() {
        assert!(is_fuzzy_3connected(&full(&complete("k", 4)), &lvl("1")).unwrap());
        assert!(!is_fuzzy_3connected(&full(&cycle("c", 5)), &lvl("0.5")).unwrap());
        assert!(!is_fuzzy_3connected(&sample_graph(), &lvl("0.5")).unwrap());
    }
}
