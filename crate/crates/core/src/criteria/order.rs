use serde::Serialize;

use super::Relation;
use crate::act::{apply_utility, Act};
use crate::error::Result;

/// The strict part of a relation restricted to a finite menu of acts.
///
/// `edges` holds every strict pair `(i, j)` meaning act `i` beats act `j`;
/// `cover` is its transitive reduction (the Hasse diagram).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictDigraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub cover: Vec<(usize, usize)>,
}

impl StrictDigraph {
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Acts that no other act beats.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&j| !self.edges.iter().any(|&(_, b)| b == j))
            .collect()
    }
}

/// Builds the strict digraph of `relation` over the named acts, keeping the
/// input order of the nodes.
pub fn partial_order(relation: &dyn Relation, acts: &[(String, Act)]) -> Result<StrictDigraph> {
    let profiles = acts
        .iter()
        .map(|(_, a)| apply_utility(relation.utility(), a))
        .collect::<Result<Vec<_>>>()?;
    // validate sizes once through the checked entry point
    for (_, a) in acts {
        relation.compare(a, a)?;
    }
    let n = acts.len();
    let mut strict = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                strict[i][j] = relation.compare_profiles(&profiles[i], &profiles[j]).is_first_strict();
            }
        }
    }
    let mut reach = strict.clone();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut edges = Vec::new();
    let mut cover = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !strict[i][j] {
                continue;
            }
            edges.push((i, j));
            let implied = (0..n).any(|k| k != i && k != j && reach[i][k] && reach[k][j]);
            if !implied {
                cover.push((i, j));
            }
        }
    }
    Ok(StrictDigraph {
        nodes: acts.iter().map(|(name, _)| name.clone()).collect(),
        edges,
        cover,
    })
}
