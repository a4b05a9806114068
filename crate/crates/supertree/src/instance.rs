//! Problem instances: the k input trees plus the derived parameters n
//! (size of the label union), k and D (maximum degree).

use crate::label::{LabelSet, LabelUniverse};
use crate::newick::{parse_many_rooted, parse_many_unrooted, NewickError};
use crate::tree::{Mode, RootedTree, UnrootedTree};

/// The k input trees, all rooted or all unrooted.
#[derive(Debug, Clone)]
pub enum TreeSet {
    Rooted(Vec<RootedTree>),
    Unrooted(Vec<UnrootedTree>),
}

#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub trees: TreeSet,
    pub universe: LabelUniverse,
}

impl ProblemInstance {
    pub fn from_rooted(trees: Vec<RootedTree>, universe: LabelUniverse) -> Self {
        ProblemInstance {
            trees: TreeSet::Rooted(trees),
            universe,
        }
    }

    pub fn from_unrooted(trees: Vec<UnrootedTree>, universe: LabelUniverse) -> Self {
        ProblemInstance {
            trees: TreeSet::Unrooted(trees),
            universe,
        }
    }

    /// Parses one Newick expression per string against a shared universe.
    pub fn from_newick(texts: &[&str], mode: Mode) -> Result<Self, NewickError> {
        match mode {
            Mode::Rooted => {
                let (trees, universe) = parse_many_rooted(texts)?;
                Ok(Self::from_rooted(trees, universe))
            }
            Mode::Unrooted => {
                let (trees, universe) = parse_many_unrooted(texts)?;
                Ok(Self::from_unrooted(trees, universe))
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match self.trees {
            TreeSet::Rooted(_) => Mode::Rooted,
            TreeSet::Unrooted(_) => Mode::Unrooted,
        }
    }

    /// Number of input trees.
    pub fn k(&self) -> usize {
        match &self.trees {
            TreeSet::Rooted(t) => t.len(),
            TreeSet::Unrooted(t) => t.len(),
        }
    }

    /// Union of the input leaf sets.
    pub fn label_union(&self) -> LabelSet {
        let mut s = LabelSet::new();
        match &self.trees {
            TreeSet::Rooted(ts) => {
                for t in ts {
                    s.union_with(t.leafset());
                }
            }
            TreeSet::Unrooted(ts) => {
                for t in ts {
                    s.union_with(t.leafset());
                }
            }
        }
        s
    }

    /// n = size of the union of leaf sets.
    pub fn n(&self) -> usize {
        self.label_union().len()
    }

    /// D = maximum degree: largest child count over internal nodes for
    /// rooted trees, largest internal-node degree for unrooted trees.
    pub fn max_degree(&self) -> usize {
        match &self.trees {
            TreeSet::Rooted(ts) => ts.iter().map(|t| t.max_child_count()).max().unwrap_or(0),
            TreeSet::Unrooted(ts) => ts.iter().map(|t| t.max_degree()).max().unwrap_or(0),
        }
    }

    pub fn rooted_trees(&self) -> Option<&[RootedTree]> {
        match &self.trees {
            TreeSet::Rooted(t) => Some(t),
            TreeSet::Unrooted(_) => None,
        }
    }

    pub fn unrooted_trees(&self) -> Option<&[UnrootedTree]> {
        match &self.trees {
            TreeSet::Unrooted(t) => Some(t),
            TreeSet::Rooted(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_parameters() {
        let inst =
            ProblemInstance::from_newick(&["((a,b),c);", "(c,d,e);"], Mode::Rooted).unwrap();
        assert_eq!(inst.k(), 2);
        assert_eq!(inst.n(), 5);
        assert_eq!(inst.max_degree(), 3);
        assert_eq!(inst.mode(), Mode::Rooted);
    }

    #[test]
    fn unrooted_degrees() {
        let inst =
            ProblemInstance::from_newick(&["((a,b),(c,d));", "(a,b,c,d);"], Mode::Unrooted)
                .unwrap();
        // quartet internals have degree 3, the star center degree 4
        assert_eq!(inst.max_degree(), 4);
    }
}
