//! Exact solvers for the maximum agreement supertree (MASP) and maximum
//! compatible supertree (MCSP) problems on k distinctly leaf-labeled trees,
//! rooted or unrooted, via fixed-parameter dynamic programming over
//! cut-subforest / sub-forest state spaces, with witness reconstruction and
//! an independent brute-force oracle for small instances.

pub mod generate;
pub mod instance;
pub mod label;
pub mod masp;
pub mod mcsp;
pub mod newick;
pub mod oracle;
pub mod solve;
pub mod state_space;
pub mod tree;

pub use instance::{ProblemInstance, TreeSet};
pub use solve::{SolveError, SolveOptions, SolveStats, SupertreeResult, SupertreeWitness};
pub use label::{LabelId, LabelSet, LabelUniverse};
pub use tree::{
    is_agreement_supertree, is_compatible_supertree, Mode, Phylo, RootedTree, TreeError,
    TreeShape, UnrootedTree,
};
