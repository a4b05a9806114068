//! Seeded random instance generation.
//!
//! Deterministic for a fixed configuration: the generator is driven by a
//! ChaCha8 stream seeded from the user-supplied integer, so identical
//! configurations produce byte-identical instance files.

use crate::instance::ProblemInstance;
use crate::label::{LabelId, LabelUniverse};
use crate::tree::{Mode, RootedTree, TreeShape, UnrootedTree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("need at least one tree (k >= 1)")]
    BadTreeCount,
    #[error("rooted generation needs n >= 1 and max degree >= 2")]
    BadRootedParams,
    #[error("unrooted generation needs n >= 3 and max degree >= 3 (internal nodes have degree >= 3)")]
    BadUnrootedParams,
}

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub max_degree: usize,
    pub mode: Mode,
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    /// One canonical Newick line per tree, in generation order.
    pub texts: Vec<String>,
    pub instance: ProblemInstance,
}

fn label_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("t{i:03}")).collect()
    }
}

/// Generates `k` trees, each over a random subset of an `n`-label
/// universe, with node degrees bounded by `max_degree`.
pub fn generate(cfg: &GenConfig) -> Result<GeneratedInstance, GenError> {
    if cfg.k == 0 {
        return Err(GenError::BadTreeCount);
    }
    match cfg.mode {
        Mode::Rooted => {
            if cfg.n < 1 || cfg.max_degree < 2 {
                return Err(GenError::BadRootedParams);
            }
        }
        Mode::Unrooted => {
            if cfg.n < 3 || cfg.max_degree < 3 {
                return Err(GenError::BadUnrootedParams);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let names = label_names(cfg.n);
    let universe = LabelUniverse::from_labels(names.iter().cloned());
    let ids: Vec<LabelId> = names.iter().map(|s| universe.id(s).unwrap()).collect();
    let min_leaves = match cfg.mode {
        Mode::Rooted => 1,
        Mode::Unrooted => 3,
    };

    let mut texts = Vec::with_capacity(cfg.k);
    let mut rooted = Vec::new();
    let mut unrooted = Vec::new();
    for _ in 0..cfg.k {
        let size = rng.gen_range(min_leaves..=cfg.n);
        let mut pool = ids.clone();
        pool.shuffle(&mut rng);
        pool.truncate(size);
        match cfg.mode {
            Mode::Rooted => {
                let t = random_rooted_tree(&mut rng, &pool, cfg.max_degree);
                texts.push(t.to_newick(&universe));
                rooted.push(t);
            }
            Mode::Unrooted => {
                let t = random_unrooted_tree(&mut rng, &pool, cfg.max_degree);
                texts.push(t.to_newick(&universe));
                unrooted.push(t);
            }
        }
    }
    let instance = match cfg.mode {
        Mode::Rooted => ProblemInstance::from_rooted(rooted, universe),
        Mode::Unrooted => ProblemInstance::from_unrooted(unrooted, universe),
    };
    Ok(GeneratedInstance { texts, instance })
}

/// Random rooted tree over exactly `labels`, child counts in
/// `2..=max_degree`. Panics if `labels` is empty or `max_degree < 2`.
pub fn random_rooted_tree(rng: &mut impl Rng, labels: &[LabelId], max_degree: usize) -> RootedTree {
    assert!(!labels.is_empty() && max_degree >= 2);
    let shape = random_shape(rng, labels, max_degree, 2);
    RootedTree::from_shape(shape).expect("labels are distinct")
}

/// Random unrooted tree over exactly `labels` (at least three), internal
/// degrees in `3..=max_degree`.
pub fn random_unrooted_tree(
    rng: &mut impl Rng,
    labels: &[LabelId],
    max_degree: usize,
) -> UnrootedTree {
    assert!(labels.len() >= 3 && max_degree >= 3);
    // root with 3..=D arms; deeper internal nodes get 2..=D-1 children so
    // their total degree (children + parent) stays within the bound
    let blocks = split_blocks(rng, labels, 3, max_degree);
    let kids: Vec<TreeShape> = blocks
        .iter()
        .map(|b| random_shape(rng, b, max_degree - 1, 2))
        .collect();
    RootedTree::from_shape(TreeShape::Node(kids))
        .expect("labels are distinct")
        .unroot()
        .expect("at least three leaves")
}

fn random_shape(
    rng: &mut impl Rng,
    labels: &[LabelId],
    max_children: usize,
    min_children: usize,
) -> TreeShape {
    if labels.len() == 1 {
        return TreeShape::Leaf(labels[0]);
    }
    let blocks = split_blocks(rng, labels, min_children, max_children);
    TreeShape::Node(
        blocks
            .iter()
            .map(|b| random_shape(rng, b, max_children, min_children))
            .collect(),
    )
}

/// Splits `labels` into a random number of nonempty blocks within the
/// given bounds (shuffle, then cut at distinct random positions).
fn split_blocks(
    rng: &mut impl Rng,
    labels: &[LabelId],
    min_blocks: usize,
    max_blocks: usize,
) -> Vec<Vec<LabelId>> {
    let len = labels.len();
    let lo = min_blocks.min(len);
    let hi = max_blocks.min(len);
    let b = rng.gen_range(lo..=hi);
    let mut shuffled = labels.to_vec();
    shuffled.shuffle(rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, len - 1, b - 1)
        .into_iter()
        .map(|i| i + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(len);
    let mut blocks = Vec::with_capacity(b);
    let mut start = 0;
    for c in cuts {
        blocks.push(shuffled[start..c].to_vec());
        start = c;
    }
    blocks
}
