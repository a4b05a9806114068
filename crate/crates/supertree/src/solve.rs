//! Types shared by the two solvers: options, statistics, witnesses and
//! results.

use crate::label::{LabelSet, LabelUniverse};
use crate::tree::{RootedTree, TreeShape, UnrootedTree};
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance has no input trees")]
    NoTrees,
    #[error("input tree {0} is empty")]
    EmptyTree(usize),
    #[error("input tree {0} has fewer than three leaves; unrooted solving needs at least three per tree")]
    DegenerateUnrootedTree(usize),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Collect a human-readable state dump alongside the result.
    pub collect_dump: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    /// Distinct DP states materialized.
    pub states_visited: usize,
    /// Transitions (bipartites or decompositions) evaluated.
    pub transitions_explored: u64,
    /// Memo entries at the end of the run (equals states with a value).
    pub memo_entries: usize,
    pub wall: Duration,
}

/// The reconstructed optimal supertree, in the mode of the instance.
#[derive(Debug, Clone)]
pub enum SupertreeWitness {
    Rooted(RootedTree),
    Unrooted(UnrootedTree),
}

impl SupertreeWitness {
    pub fn size(&self) -> usize {
        match self {
            SupertreeWitness::Rooted(t) => t.num_leaves(),
            SupertreeWitness::Unrooted(t) => t.num_leaves(),
        }
    }

    pub fn to_newick(&self, universe: &LabelUniverse) -> String {
        match self {
            SupertreeWitness::Rooted(t) => t.to_newick(universe),
            SupertreeWitness::Unrooted(t) => t.to_newick(universe),
        }
    }

    pub fn as_rooted(&self) -> Option<&RootedTree> {
        match self {
            SupertreeWitness::Rooted(t) => Some(t),
            SupertreeWitness::Unrooted(_) => None,
        }
    }

    pub fn as_unrooted(&self) -> Option<&UnrootedTree> {
        match self {
            SupertreeWitness::Unrooted(t) => Some(t),
            SupertreeWitness::Rooted(_) => None,
        }
    }
}

/// Deterministic witness for a terminal state: a caterpillar over the
/// labels in ascending order. Any topology works there, because at most
/// one of the labels occurs in any single input tree.
pub(crate) fn caterpillar(ls: &LabelSet) -> Option<TreeShape> {
    let mut labels = ls.iter();
    let first = TreeShape::Leaf(labels.next()?);
    let mut acc = match labels.next() {
        None => return Some(first),
        Some(l) => TreeShape::Node(vec![first, TreeShape::Leaf(l)]),
    };
    for l in labels {
        acc = TreeShape::Node(vec![acc, TreeShape::Leaf(l)]);
    }
    Some(acc)
}

/// Turns a reconstructed rooted shape into the unrooted witness, keeping
/// degenerate sizes representable.
pub(crate) fn unrooted_witness(shape: Option<TreeShape>) -> UnrootedTree {
    let rooted = match shape {
        Some(s) => RootedTree::from_shape(s).expect("witness labels are distinct"),
        None => return UnrootedTree::empty(),
    };
    match rooted.num_leaves() {
        0 => UnrootedTree::empty(),
        1 => UnrootedTree::single_leaf(rooted.leafset().min().unwrap()),
        _ => rooted.unroot().expect("at least two leaves"),
    }
}

#[derive(Debug, Clone)]
pub struct SupertreeResult {
    /// Optimal supertree size (number of leaves of the witness).
    pub size: usize,
    pub witness: SupertreeWitness,
    pub stats: SolveStats,
    /// State dump, present iff requested via [`SolveOptions`].
    pub dump: Option<Vec<String>>,
}
