//! Exhaustive reference solver for small instances.
//!
//! Deliberately independent of the dynamic programs: it enumerates every
//! candidate supertree topology over every label subset (largest subsets
//! first) and checks the agreement / compatibility definitions directly.
//! Intended for tests; sizes are capped.

use crate::instance::{ProblemInstance, TreeSet};
use crate::label::{LabelId, LabelSet};
use crate::solve::SupertreeWitness;
use crate::tree::{
    is_agreement_supertree, is_compatible_supertree, Phylo, RootedTree, TreeShape, UnrootedTree,
};

/// Largest label-union size the oracle accepts for rooted instances.
pub const MAX_ROOTED_LABELS: usize = 7;
/// Largest label-union size the oracle accepts for unrooted instances.
pub const MAX_UNROOTED_LABELS: usize = 6;

/// Every rooted tree topology over exactly the given labels. With
/// `binary` only fully resolved trees are produced.
pub fn enumerate_rooted(labels: &[LabelId], binary: bool) -> Vec<RootedTree> {
    enumerate_shapes(labels, binary)
        .into_iter()
        .map(|s| RootedTree::from_shape(s).expect("labels are distinct"))
        .collect()
}

fn enumerate_shapes(labels: &[LabelId], binary: bool) -> Vec<TreeShape> {
    match labels.len() {
        0 => Vec::new(),
        1 => vec![TreeShape::Leaf(labels[0])],
        _ => {
            let mut out = Vec::new();
            for_each_partition(labels, binary, &mut |blocks| {
                let child_sets: Vec<Vec<TreeShape>> = blocks
                    .iter()
                    .map(|b| enumerate_shapes(b, binary))
                    .collect();
                cross_product(&child_sets, &mut |kids| {
                    out.push(TreeShape::Node(kids.to_vec()));
                });
            });
            out
        }
    }
}

/// Set partitions of `labels` into at least two blocks (exactly two when
/// `binary`), each produced once, via restricted growth.
fn for_each_partition(labels: &[LabelId], binary: bool, f: &mut impl FnMut(&[Vec<LabelId>])) {
    fn rec(
        labels: &[LabelId],
        idx: usize,
        binary: bool,
        blocks: &mut Vec<Vec<LabelId>>,
        f: &mut impl FnMut(&[Vec<LabelId>]),
    ) {
        if idx == labels.len() {
            if blocks.len() >= 2 {
                f(blocks);
            }
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(labels[idx]);
            rec(labels, idx + 1, binary, blocks, f);
            blocks[b].pop();
        }
        if !binary || blocks.len() < 2 {
            blocks.push(vec![labels[idx]]);
            rec(labels, idx + 1, binary, blocks, f);
            blocks.pop();
        }
    }
    rec(labels, 0, binary, &mut Vec::new(), f);
}

fn cross_product(sets: &[Vec<TreeShape>], f: &mut impl FnMut(&[TreeShape])) {
    fn rec(sets: &[Vec<TreeShape>], i: usize, acc: &mut Vec<TreeShape>, f: &mut impl FnMut(&[TreeShape])) {
        if i == sets.len() {
            f(acc);
            return;
        }
        for s in &sets[i] {
            acc.push(s.clone());
            rec(sets, i + 1, acc, f);
            acc.pop();
        }
    }
    rec(sets, 0, &mut Vec::new(), f);
}

/// Every unrooted tree topology over exactly the given labels, through the
/// bijection with rooted topologies on the labels minus the smallest one
/// (the smallest label re-attaches at the old root).
pub fn enumerate_unrooted(labels: &[LabelId], binary: bool) -> Vec<UnrootedTree> {
    match labels.len() {
        0 => vec![UnrootedTree::empty()],
        1 => vec![UnrootedTree::single_leaf(labels[0])],
        _ => {
            let mut sorted = labels.to_vec();
            sorted.sort_unstable();
            let (min, rest) = (sorted[0], &sorted[1..]);
            enumerate_shapes(rest, binary)
                .into_iter()
                .map(|s| {
                    let mut kids = match s {
                        TreeShape::Node(ks) => ks,
                        leaf => vec![leaf],
                    };
                    kids.push(TreeShape::Leaf(min));
                    RootedTree::from_shape(TreeShape::Node(kids))
                        .expect("labels are distinct")
                        .unroot()
                        .expect("at least two leaves")
                })
                .collect()
        }
    }
}

/// Search outcome of the exhaustive reference solver.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub size: usize,
    pub witness: SupertreeWitness,
}

/// Exhaustive maximum agreement supertree, at the default caps.
pub fn brute_masp(inst: &ProblemInstance) -> OracleResult {
    brute(inst, false, None)
}

/// Exhaustive maximum compatible supertree at the default caps. Candidates
/// are binary only: refining a compatible supertree keeps it compatible.
pub fn brute_mcsp(inst: &ProblemInstance) -> OracleResult {
    brute(inst, true, None)
}

/// Cap-overriding variants; larger caps get expensive very quickly.
pub fn brute_masp_capped(inst: &ProblemInstance, cap: usize) -> OracleResult {
    brute(inst, false, Some(cap))
}

pub fn brute_mcsp_capped(inst: &ProblemInstance, cap: usize) -> OracleResult {
    brute(inst, true, Some(cap))
}

fn brute(inst: &ProblemInstance, compatible: bool, cap: Option<usize>) -> OracleResult {
    let union = inst.label_union();
    match &inst.trees {
        TreeSet::Rooted(trees) => {
            let cap = cap.unwrap_or(MAX_ROOTED_LABELS);
            assert!(
                union.len() <= cap,
                "oracle caps rooted instances at {cap} labels"
            );
            let (size, w) = search(&union, trees, compatible, |labels| {
                enumerate_rooted(labels, compatible)
            });
            OracleResult {
                size,
                witness: SupertreeWitness::Rooted(w),
            }
        }
        TreeSet::Unrooted(trees) => {
            let cap = cap.unwrap_or(MAX_UNROOTED_LABELS);
            assert!(
                union.len() <= cap,
                "oracle caps unrooted instances at {cap} labels"
            );
            let (size, w) = search(&union, trees, compatible, |labels| {
                enumerate_unrooted(labels, compatible)
            });
            OracleResult {
                size,
                witness: SupertreeWitness::Unrooted(w),
            }
        }
    }
}

/// Scans label subsets from largest to smallest (lexicographic within one
/// size) and returns the first subset carrying a valid supertree.
fn search<T: Phylo + Default>(
    union: &LabelSet,
    trees: &[T],
    compatible: bool,
    enumerate: impl Fn(&[LabelId]) -> Vec<T>,
) -> (usize, T) {
    let all: Vec<LabelId> = union.to_vec();
    for size in (0..=all.len()).rev() {
        let mut found: Option<T> = None;
        for_each_combination(&all, size, &mut |subset| {
            if found.is_some() {
                return;
            }
            for cand in enumerate(subset) {
                let ok = if compatible {
                    is_compatible_supertree(&cand, trees)
                } else {
                    is_agreement_supertree(&cand, trees)
                };
                if ok {
                    found = Some(cand);
                    return;
                }
            }
        });
        if let Some(w) = found {
            return (size, w);
        }
    }
    (0, T::default())
}

fn for_each_combination(items: &[LabelId], size: usize, f: &mut impl FnMut(&[LabelId])) {
    fn rec(items: &[LabelId], start: usize, size: usize, acc: &mut Vec<LabelId>, f: &mut impl FnMut(&[LabelId])) {
        if acc.len() == size {
            f(acc);
            return;
        }
        let need = size - acc.len();
        for i in start..=items.len().saturating_sub(need) {
            acc.push(items[i]);
            rec(items, i + 1, size, acc, f);
            acc.pop();
        }
    }
    if size <= items.len() {
        rec(items, 0, size, &mut Vec::new(), f);
    }
}
