//! Families of pairwise edge-disjoint perfect matchings.

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Edge, Graph};
use crate::matching::Matching;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingFamily {
    pub host: Graph,
    pub matchings: Vec<Matching>,
}

impl MatchingFamily {
    pub fn new(host: Graph, matchings: Vec<Matching>) -> Self {
        MatchingFamily { host, matchings }
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn verify(&self) -> Result<(), FamilyViolation> {
        verify_family(&self.host, &self.matchings)
    }

    /// Host minus every family edge.
    pub fn residual(&self) -> Graph {
        residual(&self.host, &self.matchings)
    }
}

pub fn residual(g: &Graph, family: &[Matching]) -> Graph {
    g.without_edges(family.iter().flat_map(|m| m.edges().iter()))
}

/// First reason a list of matchings fails to be a family of edge-disjoint
/// perfect matchings of the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    WrongHost { index: usize, host_n: usize, n: usize },
    NotPerfect { index: usize, size: usize, n: usize },
    NotAnEdge { index: usize, edge: Edge },
    EdgeReused { edge: Edge, first: usize, second: usize },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::WrongHost { index, host_n, n } => {
                write!(f, "matching {index} is over {host_n} vertices, host has {n}")
            }
            FamilyViolation::NotPerfect { index, size, n } => {
                write!(f, "matching {index} has {size} edges, a perfect matching of order {n} needs {}", n / 2)
            }
            FamilyViolation::NotAnEdge { index, edge } => {
                write!(f, "matching {index}: {edge} is not an edge of host")
            }
            FamilyViolation::EdgeReused { edge, first, second } => {
                write!(f, "edge {edge} reused in matchings {first},{second}")
            }
        }
    }
}

impl std::error::Error for FamilyViolation {}

pub fn verify_family(g: &Graph, family: &[Matching]) -> Result<(), FamilyViolation> {
    let n = g.order();
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    for (index, m) in family.iter().enumerate() {
        if m.host_n() != n {
            return Err(FamilyViolation::WrongHost {
                index,
                host_n: m.host_n(),
                n,
            });
        }
        if !m.is_perfect() {
            return Err(FamilyViolation::NotPerfect { index, size: m.len(), n });
        }
        for e in m.edges() {
            if !g.contains_edge(e) {
                return Err(FamilyViolation::NotAnEdge { index, edge: *e });
            }
            if let Some(&first) = owner.get(e) {
                return Err(FamilyViolation::EdgeReused {
                    edge: *e,
                    first,
                    second: index,
                });
            }
            owner.insert(*e, index);
        }
    }
    Ok(())
}
