//! DP state spaces shared by the two solvers.
//!
//! MCSP states are cut-subtrees: a center node plus a selection of the
//! subtrees attached to it, joined under a common root. MASP states are
//! complete subtrees (rooted mode) or trivial/maximal subtrees (unrooted
//! mode). A k-tuple of per-tree states, with at least one non-empty part,
//! forms a cut-subforest / sub-forest.
//!
//! Canonicalization: an empty selection is `Empty`; a selection of exactly
//! one subtree is the complete subtree it denotes (a leaf, or the full
//! selection at that node), which is how the recursion descends and how
//! duplicate states collapse. Selections are stored as absolute bitmasks
//! over the center's child (rooted) or neighbor (unrooted) positions, so
//! unrooted states need no extra orientation bookkeeping.

use crate::instance::{ProblemInstance, TreeSet};
use crate::label::{LabelId, LabelSet, LabelUniverse};
use crate::tree::{RootedTree, TreeShape, UnrootedTree};
use std::collections::HashMap;
use std::hash::Hash;

/// Uniform read access to one input tree of either rootedness.
#[derive(Clone, Copy)]
pub enum TreeView<'a> {
    Rooted(&'a RootedTree),
    Unrooted(&'a UnrootedTree),
}

impl<'a> TreeView<'a> {
    pub fn from_instance(inst: &'a ProblemInstance) -> Vec<TreeView<'a>> {
        match &inst.trees {
            TreeSet::Rooted(ts) => ts.iter().map(TreeView::Rooted).collect(),
            TreeSet::Unrooted(ts) => ts.iter().map(TreeView::Unrooted).collect(),
        }
    }

    /// Subtree attachment points at `v`: children (rooted) or neighbors
    /// (unrooted).
    pub fn arms(&self, v: usize) -> &'a [usize] {
        match self {
            TreeView::Rooted(t) => t.children(v),
            TreeView::Unrooted(t) => t.neighbors(v),
        }
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        match self {
            TreeView::Rooted(t) => t.is_leaf(v),
            TreeView::Unrooted(t) => t.is_leaf(v),
        }
    }

    pub fn label(&self, v: usize) -> Option<LabelId> {
        match self {
            TreeView::Rooted(t) => t.label(v),
            TreeView::Unrooted(t) => t.label(v),
        }
    }

    pub fn leafset(&self) -> &'a LabelSet {
        match self {
            TreeView::Rooted(t) => t.leafset(),
            TreeView::Unrooted(t) => t.leafset(),
        }
    }

    /// Leaf labels of the subtree hanging off `v` through arm `w`.
    pub fn arm_leafset(&self, v: usize, w: usize) -> &'a LabelSet {
        match self {
            TreeView::Rooted(t) => {
                debug_assert_eq!(t.parent(w), Some(v));
                t.node_leafset(w)
            }
            TreeView::Unrooted(t) => t.dir_leafset(v, w),
        }
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        match self {
            TreeView::Rooted(t) => t.internal_nodes().collect(),
            TreeView::Unrooted(t) => t.internal_nodes().collect(),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            TreeView::Rooted(t) => t.leaves().collect(),
            TreeView::Unrooted(t) => t.leaves().collect(),
        }
    }

    fn is_unrooted(&self) -> bool {
        matches!(self, TreeView::Unrooted(_))
    }
}

/// One tree's part of a cut-subforest (the MCSP state).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutSubtree {
    Empty,
    Leaf { node: usize },
    /// Selection of two or more subtrees attached to `center`, as an
    /// absolute bitmask over `arms(center)` positions.
    Internal { center: usize, sel: u32 },
}

impl CutSubtree {
    pub fn is_empty(&self) -> bool {
        matches!(self, CutSubtree::Empty)
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, CutSubtree::Empty | CutSubtree::Leaf { .. })
    }
}

fn full_mask(n: usize) -> u32 {
    assert!(n <= 32, "node degree above 32 is unsupported");
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Canonical cut-subtree for a selection bitmask at `center`.
pub fn canonical_cut(view: &TreeView, center: usize, sel: u32) -> CutSubtree {
    match sel.count_ones() {
        0 => CutSubtree::Empty,
        1 => {
            let pos = sel.trailing_zeros() as usize;
            let u = view.arms(center)[pos];
            if view.is_leaf(u) {
                CutSubtree::Leaf { node: u }
            } else {
                // the singleton selection denotes the complete subtree at u
                let arms = view.arms(u);
                let mut mask = full_mask(arms.len());
                if view.is_unrooted() {
                    let back = arms.iter().position(|&x| x == center).expect("adjacent");
                    mask &= !(1u32 << back);
                }
                CutSubtree::Internal { center: u, sel: mask }
            }
        }
        _ => CutSubtree::Internal { center, sel },
    }
}

/// The cut-subtree denoting the whole tree: for rooted trees the full
/// selection at the root; unrooted trees have one per internal node
/// (see [`full_rootings`]).
pub fn full_tree_cut(tree: &RootedTree) -> CutSubtree {
    let root = tree.root().expect("non-empty tree");
    if tree.is_leaf(root) {
        CutSubtree::Leaf { node: root }
    } else {
        CutSubtree::Internal {
            center: root,
            sel: full_mask(tree.children(root).len()),
        }
    }
}

/// All whole-tree cut-subtrees of an unrooted tree, one rooting per
/// internal node.
pub fn full_rootings(tree: &UnrootedTree) -> Vec<CutSubtree> {
    tree.internal_nodes()
        .map(|v| CutSubtree::Internal {
            center: v,
            sel: full_mask(tree.neighbors(v).len()),
        })
        .collect()
}

/// Complete, duplicate-free list of the non-empty canonical cut-subtrees of
/// one tree. At most `2^D * n` states for rooted trees.
pub fn enumerate_cut_subtrees(view: &TreeView) -> Vec<CutSubtree> {
    let mut out: Vec<CutSubtree> = view
        .leaves()
        .into_iter()
        .map(|node| CutSubtree::Leaf { node })
        .collect();
    for v in view.internal_nodes() {
        let deg = view.arms(v).len();
        for sel in 0..=full_mask(deg) {
            if sel.count_ones() >= 2 {
                out.push(CutSubtree::Internal { center: v, sel });
            }
        }
    }
    out
}

pub fn cut_leafset(view: &TreeView, c: &CutSubtree) -> LabelSet {
    match c {
        CutSubtree::Empty => LabelSet::new(),
        CutSubtree::Leaf { node } => LabelSet::singleton(view.label(*node).expect("leaf")),
        CutSubtree::Internal { center, sel } => {
            let mut s = LabelSet::new();
            for (pos, &w) in view.arms(*center).iter().enumerate() {
                if sel & (1u32 << pos) != 0 {
                    s.union_with(view.arm_leafset(*center, w));
                }
            }
            s
        }
    }
}

/// Materializes the rooted tree a cut-subtree denotes (tests and debugging).
pub fn cut_shape(view: &TreeView, c: &CutSubtree) -> Option<TreeShape> {
    match c {
        CutSubtree::Empty => None,
        CutSubtree::Leaf { node } => Some(TreeShape::Leaf(view.label(*node).expect("leaf"))),
        CutSubtree::Internal { center, sel } => {
            let kids: Vec<TreeShape> = view
                .arms(*center)
                .iter()
                .enumerate()
                .filter(|(pos, _)| sel & (1u32 << pos) != 0)
                .map(|(_, &w)| arm_shape(view, *center, w))
                .collect();
            Some(TreeShape::Node(kids))
        }
    }
}

fn arm_shape(view: &TreeView, from: usize, v: usize) -> TreeShape {
    if let Some(l) = view.label(v) {
        return TreeShape::Leaf(l);
    }
    TreeShape::Node(
        view.arms(v)
            .iter()
            .filter(|&&w| w != from)
            .map(|&w| arm_shape(view, v, w))
            .collect(),
    )
}

/// True iff every part is an empty tree or a single leaf.
pub fn is_terminal_cut(parts: &[CutSubtree]) -> bool {
    parts.iter().all(CutSubtree::is_terminal)
}

/// The Λ function on terminal states: labels of the parts that no input
/// tree excludes. `part_labels[i]` is the leaf label of part i, if any.
pub fn lambda(part_labels: &[Option<LabelId>], views: &[TreeView]) -> LabelSet {
    let mut out = LabelSet::new();
    for l in part_labels.iter().flatten() {
        let ok = (0..views.len())
            .all(|i| !views[i].leafset().contains(*l) || part_labels[i] == Some(*l));
        if ok {
            out.insert(*l);
        }
    }
    out
}

pub fn lambda_cut(parts: &[CutSubtree], views: &[TreeView]) -> LabelSet {
    let labels: Vec<Option<LabelId>> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            CutSubtree::Leaf { node } => views[i].label(*node),
            _ => None,
        })
        .collect();
    lambda(&labels, views)
}

/// All unordered bipartites of a non-terminal cut-subforest: per tree,
/// the root-level selection splits in two (each side canonicalized), leaf
/// parts go wholly to one side, empty parts stay empty. Both sides must
/// keep at least one non-empty part.
pub fn bipartites(
    views: &[TreeView],
    parts: &[CutSubtree],
) -> Vec<(Vec<CutSubtree>, Vec<CutSubtree>)> {
    let options: Vec<Vec<(CutSubtree, CutSubtree)>> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| match *p {
            CutSubtree::Empty => vec![(CutSubtree::Empty, CutSubtree::Empty)],
            CutSubtree::Leaf { node } => vec![
                (CutSubtree::Leaf { node }, CutSubtree::Empty),
                (CutSubtree::Empty, CutSubtree::Leaf { node }),
            ],
            CutSubtree::Internal { center, sel } => {
                let mut opts = Vec::new();
                let mut s = sel;
                loop {
                    opts.push((
                        canonical_cut(&views[i], center, s),
                        canonical_cut(&views[i], center, sel & !s),
                    ));
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & sel;
                }
                opts
            }
        })
        .collect();

    let mut out = Vec::new();
    let mut left = vec![CutSubtree::Empty; parts.len()];
    let mut right = vec![CutSubtree::Empty; parts.len()];
    fn rec(
        options: &[Vec<(CutSubtree, CutSubtree)>],
        i: usize,
        left: &mut Vec<CutSubtree>,
        right: &mut Vec<CutSubtree>,
        out: &mut Vec<(Vec<CutSubtree>, Vec<CutSubtree>)>,
    ) {
        if i == options.len() {
            let l_ok = left.iter().any(|p| !p.is_empty());
            let r_ok = right.iter().any(|p| !p.is_empty());
            // each unordered pair appears twice; keep the ordered one
            if l_ok && r_ok && left < right {
                out.push((left.clone(), right.clone()));
            }
            return;
        }
        for (l, r) in &options[i] {
            left[i] = *l;
            right[i] = *r;
            rec(options, i + 1, left, right, out);
        }
    }
    rec(&options, 0, &mut left, &mut right, &mut out);
    out
}

/// One tree's part of a sub-forest (the MASP state).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubForestRef {
    Empty,
    Leaf { node: usize },
    /// Complete subtree rooted at an internal node (rooted mode).
    Complete { node: usize },
    /// The whole unrooted tree rooted at internal node `node`.
    FullRooting { node: usize },
    /// The whole unrooted tree rooted on the edge `{u, v}` (`u < v`): a
    /// binary root whose children are the two halves across that edge.
    FullEdgeRooting { u: usize, v: usize },
    /// Rooted at `root` with the subtree toward neighbor `removed`
    /// dropped (`removed` may be a leaf when the state descends from a
    /// leaf-edge rooting).
    EdgeRooting { root: usize, removed: usize },
}

impl SubForestRef {
    pub fn is_empty(&self) -> bool {
        matches!(self, SubForestRef::Empty)
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, SubForestRef::Empty | SubForestRef::Leaf { .. })
    }
}

/// The whole rooted tree as a sub-forest part.
pub fn full_tree_sub(tree: &RootedTree) -> SubForestRef {
    let root = tree.root().expect("non-empty tree");
    if tree.is_leaf(root) {
        SubForestRef::Leaf { node: root }
    } else {
        SubForestRef::Complete { node: root }
    }
}

/// All trivial and complete-subtree states of one rooted tree.
pub fn enumerate_sub_refs_rooted(tree: &RootedTree) -> Vec<SubForestRef> {
    let mut out: Vec<SubForestRef> = tree.leaves().map(|node| SubForestRef::Leaf { node }).collect();
    out.extend(tree.internal_nodes().map(|node| SubForestRef::Complete { node }));
    out
}

/// All maximal subtrees of one unrooted tree: every full rooting plus every
/// edge rooting along a directed internal-internal edge. At most `3n - 1`.
pub fn enumerate_maximal_subtrees(tree: &UnrootedTree) -> Vec<SubForestRef> {
    let mut out: Vec<SubForestRef> = tree
        .internal_nodes()
        .map(|node| SubForestRef::FullRooting { node })
        .collect();
    for v in tree.internal_nodes() {
        for &u in tree.neighbors(v) {
            if !tree.is_leaf(u) {
                out.push(SubForestRef::EdgeRooting { root: v, removed: u });
            }
        }
    }
    out
}

/// The subtrees attached to the root of a non-terminal state. The unrooted
/// state space is closed under this descent.
pub fn children_of(view: &TreeView, s: &SubForestRef) -> Vec<SubForestRef> {
    let wrap = |from: usize, w: usize| -> SubForestRef {
        if view.is_leaf(w) {
            SubForestRef::Leaf { node: w }
        } else {
            match view {
                TreeView::Rooted(_) => SubForestRef::Complete { node: w },
                TreeView::Unrooted(_) => SubForestRef::EdgeRooting { root: w, removed: from },
            }
        }
    };
    match *s {
        SubForestRef::Complete { node } => {
            view.arms(node).iter().map(|&c| wrap(node, c)).collect()
        }
        SubForestRef::FullRooting { node } => {
            view.arms(node).iter().map(|&w| wrap(node, w)).collect()
        }
        SubForestRef::FullEdgeRooting { u, v } => vec![wrap(v, u), wrap(u, v)],
        SubForestRef::EdgeRooting { root, removed } => view
            .arms(root)
            .iter()
            .filter(|&&w| w != removed)
            .map(|&w| wrap(root, w))
            .collect(),
        SubForestRef::Empty | SubForestRef::Leaf { .. } => {
            panic!("children_of on a trivial state")
        }
    }
}

pub fn sub_leafset(view: &TreeView, s: &SubForestRef) -> LabelSet {
    match *s {
        SubForestRef::Empty => LabelSet::new(),
        SubForestRef::Leaf { node } => LabelSet::singleton(view.label(node).expect("leaf")),
        SubForestRef::Complete { node } => match view {
            TreeView::Rooted(t) => t.node_leafset(node).clone(),
            TreeView::Unrooted(_) => unreachable!("Complete is a rooted-mode state"),
        },
        SubForestRef::FullRooting { .. } | SubForestRef::FullEdgeRooting { .. } => {
            view.leafset().clone()
        }
        SubForestRef::EdgeRooting { root, removed } => {
            view.leafset().difference(view.arm_leafset(root, removed))
        }
    }
}

/// Materializes the rooted tree a sub-forest part denotes.
pub fn sub_shape(view: &TreeView, s: &SubForestRef) -> Option<TreeShape> {
    match *s {
        SubForestRef::Empty => None,
        SubForestRef::Leaf { node } => Some(TreeShape::Leaf(view.label(node).expect("leaf"))),
        SubForestRef::Complete { node } | SubForestRef::FullRooting { node } => Some(
            TreeShape::Node(view.arms(node).iter().map(|&w| arm_shape(view, node, w)).collect()),
        ),
        SubForestRef::FullEdgeRooting { u, v } => Some(TreeShape::Node(vec![
            arm_shape(view, v, u),
            arm_shape(view, u, v),
        ])),
        SubForestRef::EdgeRooting { root, removed } => Some(TreeShape::Node(
            view.arms(root)
                .iter()
                .filter(|&&w| w != removed)
                .map(|&w| arm_shape(view, root, w))
                .collect(),
        )),
    }
}

pub fn is_terminal_sub(parts: &[SubForestRef]) -> bool {
    parts.iter().all(SubForestRef::is_terminal)
}

pub fn lambda_sub(parts: &[SubForestRef], views: &[TreeView]) -> LabelSet {
    let labels: Vec<Option<LabelId>> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            SubForestRef::Leaf { node } => views[i].label(*node),
            _ => None,
        })
        .collect();
    lambda(&labels, views)
}

/// Every decomposition of a non-terminal sub-forest into `2..=d_max` slots,
/// deduplicated up to slot permutation. Per tree, either the whole part
/// lands in one slot, or at least two pairwise-distinct root-child subtrees
/// are spread over distinct slots (unassigned children are dropped).
pub fn decompositions(
    views: &[TreeView],
    parts: &[SubForestRef],
    d_max: usize,
) -> Vec<Vec<Vec<SubForestRef>>> {
    let mut out = Vec::new();
    for_each_decomposition(views, parts, d_max, &mut |slots| out.push(slots.to_vec()));
    out
}

/// Streaming variant of [`decompositions`]; the solver consumes each
/// decomposition in place instead of materializing the full list.
pub fn for_each_decomposition(
    views: &[TreeView],
    parts: &[SubForestRef],
    d_max: usize,
    f: &mut impl FnMut(&[Vec<SubForestRef>]),
) {
    let k = parts.len();
    // per tree: the alternative item lists it can contribute
    let choices: Vec<Vec<Vec<SubForestRef>>> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            SubForestRef::Empty => vec![vec![]],
            SubForestRef::Leaf { .. } => vec![vec![*p]],
            _ => {
                let mut alts = vec![vec![*p]];
                let kids = children_of(&views[i], p);
                let m = kids.len();
                for mask in 0u32..(1u32 << m) {
                    if mask.count_ones() >= 2 {
                        alts.push(
                            kids.iter()
                                .enumerate()
                                .filter(|(j, _)| mask & (1u32 << j) != 0)
                                .map(|(_, &c)| c)
                                .collect(),
                        );
                    }
                }
                alts
            }
        })
        .collect();

    let mut combo: Vec<usize> = vec![0; k];
    enumerate_combos(&choices, 0, &mut combo, &mut |combo| {
        let items: Vec<(usize, SubForestRef)> = combo
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| choices[i][c].iter().map(move |&r| (i, r)))
            .collect();
        if items.len() < 2 {
            return;
        }
        partition_items(&items, k, d_max, &mut |groups| {
            let mut slots: Vec<Vec<SubForestRef>> = groups
                .iter()
                .map(|g| {
                    let mut slot = vec![SubForestRef::Empty; k];
                    for &(tree, r) in g {
                        slot[tree] = r;
                    }
                    slot
                })
                .collect();
            slots.sort();
            f(&slots);
        });
    });
}

fn enumerate_combos(
    choices: &[Vec<Vec<SubForestRef>>],
    i: usize,
    combo: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if i == choices.len() {
        f(combo);
        return;
    }
    for c in 0..choices[i].len() {
        combo[i] = c;
        enumerate_combos(choices, i + 1, combo, f);
    }
}

/// Set partitions of the items into 2..=d_max unordered groups with no two
/// items of the same tree sharing a group (restricted-growth enumeration,
/// so each partition is produced once).
fn partition_items(
    items: &[(usize, SubForestRef)],
    _k: usize,
    d_max: usize,
    f: &mut impl FnMut(&[Vec<(usize, SubForestRef)>]),
) {
    let mut groups: Vec<Vec<(usize, SubForestRef)>> = Vec::new();
    fn rec(
        items: &[(usize, SubForestRef)],
        idx: usize,
        d_max: usize,
        groups: &mut Vec<Vec<(usize, SubForestRef)>>,
        f: &mut impl FnMut(&[Vec<(usize, SubForestRef)>]),
    ) {
        if idx == items.len() {
            if groups.len() >= 2 {
                f(groups);
            }
            return;
        }
        let item = items[idx];
        for g in 0..groups.len() {
            if groups[g].iter().all(|&(t, _)| t != item.0) {
                groups[g].push(item);
                rec(items, idx + 1, d_max, groups, f);
                groups[g].pop();
            }
        }
        if groups.len() < d_max {
            groups.push(vec![item]);
            rec(items, idx + 1, d_max, groups, f);
            groups.pop();
        }
    }
    rec(items, 0, d_max, &mut groups, f);
}

/// Dense-id interner for DP states.
#[derive(Debug, Clone, Default)]
pub struct Interner<T> {
    items: Vec<T>,
    ids: HashMap<T, u32>,
}

impl<T: Hash + Eq + Clone> Interner<T> {
    pub fn new() -> Self {
        Interner {
            items: Vec::new(),
            ids: HashMap::new(),
        }
    }

    pub fn intern(&mut self, t: T) -> u32 {
        if let Some(&id) = self.ids.get(&t) {
            return id;
        }
        let id = self.items.len() as u32;
        self.items.push(t.clone());
        self.ids.insert(t, id);
        id
    }

    pub fn get(&self, id: u32) -> &T {
        &self.items[id as usize]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Human-readable state descriptions for the debug dump.
pub fn describe_cut(parts: &[CutSubtree], views: &[TreeView], u: &LabelUniverse) -> String {
    let fields: Vec<String> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            CutSubtree::Empty => "-".to_string(),
            _ => {
                let ls = cut_leafset(&views[i], p);
                format!("{{{}}}", names(&ls, u))
            }
        })
        .collect();
    format!("[{}]", fields.join(" | "))
}

pub fn describe_sub(parts: &[SubForestRef], views: &[TreeView], u: &LabelUniverse) -> String {
    let fields: Vec<String> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            SubForestRef::Empty => "-".to_string(),
            _ => {
                let ls = sub_leafset(&views[i], p);
                format!("{{{}}}", names(&ls, u))
            }
        })
        .collect();
    format!("[{}]", fields.join(" | "))
}

fn names(ls: &LabelSet, u: &LabelUniverse) -> String {
    ls.iter().map(|l| u.name(l)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::{parse_many_rooted, parse_rooted_str, parse_unrooted_str};
    use crate::tree::Mode;

    #[test]
    fn cut_subtree_counts_match_hand_enumeration() {
        let (t, _) = parse_rooted_str("(a,b);").unwrap();
        let view = TreeView::Rooted(&t);
        assert_eq!(enumerate_cut_subtrees(&view).len(), 3);

        let (t2, _) = parse_rooted_str("((a,b),c);").unwrap();
        let view2 = TreeView::Rooted(&t2);
        assert_eq!(enumerate_cut_subtrees(&view2).len(), 5);

        let (u, _) = parse_unrooted_str("(a,b,c);").unwrap();
        let view3 = TreeView::Unrooted(&u);
        assert_eq!(enumerate_cut_subtrees(&view3).len(), 7);
    }

    #[test]
    fn canonicalization_is_injective_on_materialized_trees() {
        let (t, _) = parse_rooted_str("((a,b),(c,(d,e)));").unwrap();
        let view = TreeView::Rooted(&t);
        let states = enumerate_cut_subtrees(&view);
        for i in 0..states.len() {
            for j in i + 1..states.len() {
                let a = TreeShape::from_opt(cut_shape(&view, &states[i]));
                let b = TreeShape::from_opt(cut_shape(&view, &states[j]));
                assert_ne!(a, b, "states {:?} and {:?} collide", states[i], states[j]);
            }
        }
        let (u, _) = parse_unrooted_str("((a,b),(c,(d,e)));").unwrap();
        let view = TreeView::Unrooted(&u);
        let states = enumerate_cut_subtrees(&view);
        for i in 0..states.len() {
            for j in i + 1..states.len() {
                let a = TreeShape::from_opt(cut_shape(&view, &states[i]));
                let b = TreeShape::from_opt(cut_shape(&view, &states[j]));
                assert_ne!(a, b, "states {:?} and {:?} collide", states[i], states[j]);
            }
        }
    }

    #[test]
    fn lambda_examples() {
        // L(T1)={a,b,c}, L(T2)={c,d}
        let (trees, u) = parse_many_rooted(&["(a,(b,c));", "(c,d);"]).unwrap();
        let views: Vec<TreeView> = trees.iter().map(TreeView::Rooted).collect();
        let a = u.id("a").unwrap();
        let c = u.id("c").unwrap();
        let d = u.id("d").unwrap();
        // A = (leaf a, leaf c): c is excluded because c in L(T1) - L(A1)
        let s = lambda(&[Some(a), Some(c)], &views);
        assert_eq!(s.to_vec(), vec![a]);
        // A = (leaf a, empty): a not in L(T2), nothing excludes it
        let s = lambda(&[Some(a), None], &views);
        assert_eq!(s.to_vec(), vec![a]);
        // A = (leaf a, leaf d)
        let s = lambda(&[Some(a), Some(d)], &views);
        assert_eq!(s.to_vec(), vec![a, d]);
    }

    #[test]
    fn bipartite_examples() {
        let (t, _) = parse_rooted_str("((a,b),c);").unwrap();
        let view = TreeView::Rooted(&t);
        let top = full_tree_cut(&t);
        let pairs = bipartites(&[view], &[top]);
        assert_eq!(pairs.len(), 1);
        let (l, r) = &pairs[0];
        let mut sides = vec![cut_leafset(&view, &l[0]).len(), cut_leafset(&view, &r[0]).len()];
        sides.sort();
        assert_eq!(sides, vec![1, 2]);

        let (star, _) = parse_rooted_str("(a,b,c);").unwrap();
        let sview = TreeView::Rooted(&star);
        let pairs = bipartites(&[sview], &[full_tree_cut(&star)]);
        assert_eq!(pairs.len(), 3);
    }

    #[test]
    fn bipartite_sides_partition_leaves() {
        let (trees, _) = parse_many_rooted(&["((a,b),(c,d));", "(a,(c,e));"]).unwrap();
        let views: Vec<TreeView> = trees.iter().map(TreeView::Rooted).collect();
        let top: Vec<CutSubtree> = trees.iter().map(full_tree_cut).collect();
        let total: usize = (0..2).map(|i| cut_leafset(&views[i], &top[i]).len()).sum();
        for (l, r) in bipartites(&views, &top) {
            let lsum: usize = (0..2).map(|i| cut_leafset(&views[i], &l[i]).len()).sum();
            let rsum: usize = (0..2).map(|i| cut_leafset(&views[i], &r[i]).len()).sum();
            assert_eq!(lsum + rsum, total);
            assert!(lsum < total && rsum < total);
            for i in 0..2 {
                let ls = cut_leafset(&views[i], &l[i]);
                let rs = cut_leafset(&views[i], &r[i]);
                assert!(ls.intersection(&rs).is_empty());
                assert_eq!(ls.union(&rs), cut_leafset(&views[i], &top[i]));
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let (t, _) = parse_rooted_str("((a,b),c);").unwrap();
        let view = TreeView::Rooted(&t);
        let top = full_tree_sub(&t);
        let ds = decompositions(&[view], &[top], 2);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].len(), 2);

        let (star, _) = parse_rooted_str("(a,b,c);").unwrap();
        let sview = TreeView::Rooted(&star);
        let ds = decompositions(&[sview], &[full_tree_sub(&star)], 2);
        assert_eq!(ds.len(), 3);
        // with three slots allowed the all-children split appears too
        let ds3 = decompositions(&[sview], &[full_tree_sub(&star)], 3);
        assert_eq!(ds3.len(), 4);
    }

    #[test]
    fn decomposition_mixed_parts() {
        let (trees, _) = parse_many_rooted(&["a;", "(b,c);"]).unwrap();
        let views: Vec<TreeView> = trees.iter().map(TreeView::Rooted).collect();
        let parts: Vec<SubForestRef> = trees.iter().map(full_tree_sub).collect();
        let ds = decompositions(&views, &parts, 2);
        // leaf a paired with the cherry whole, or with one of b/c while the
        // other shares a's slot
        assert_eq!(ds.len(), 3);
        for slots in &ds {
            for slot in slots {
                assert!(slot.iter().any(|p| !p.is_empty()));
            }
        }
    }

    #[test]
    fn maximal_subtree_counts() {
        let (star, _) = parse_unrooted_str("(a,b,c);").unwrap();
        assert_eq!(enumerate_maximal_subtrees(&star).len(), 1);
        let (q, _) = parse_unrooted_str("((a,b),(c,d));").unwrap();
        assert_eq!(enumerate_maximal_subtrees(&q).len(), 4);
        let (cat, _) = parse_unrooted_str("((a,b),(c,(d,e)));").unwrap();
        // 3 internal nodes, 2 internal edges
        assert_eq!(enumerate_maximal_subtrees(&cat).len(), 7);
    }

    #[test]
    fn children_descend_and_stay_closed() {
        let (t, _) = parse_rooted_str("((a,b),c);").unwrap();
        let view = TreeView::Rooted(&t);
        let kids = children_of(&view, &full_tree_sub(&t));
        assert_eq!(kids.len(), 2);
        assert!(kids.iter().any(|k| matches!(k, SubForestRef::Leaf { .. })));
        assert!(kids.iter().any(|k| matches!(k, SubForestRef::Complete { .. })));

        let (q, qu) = parse_unrooted_str("((a,b),(c,d));").unwrap();
        let view = TreeView::Unrooted(&q);
        let states = enumerate_maximal_subtrees(&q);
        let full_ab = states
            .iter()
            .find(|s| {
                matches!(s, SubForestRef::FullRooting { node }
                    if sub_leafset(&view, &SubForestRef::FullRooting { node: *node })
                        .contains(qu.id("a").unwrap()))
            })
            .copied()
            .unwrap();
        let kids = children_of(&view, &full_ab);
        assert_eq!(kids.len(), 3);
        let edge = kids
            .iter()
            .find(|k| matches!(k, SubForestRef::EdgeRooting { .. }))
            .unwrap();
        let grandkids = children_of(&view, edge);
        assert_eq!(grandkids.len(), 2);
        assert!(grandkids.iter().all(|k| matches!(k, SubForestRef::Leaf { .. })));
    }

    #[test]
    fn rooted_cut_count_bound() {
        for text in ["((a,b),c);", "(a,(b,(c,d)),e);", "((a,b),(c,d),(e,f));"] {
            let inst = ProblemInstance::from_newick(&[text], Mode::Rooted).unwrap();
            let trees = inst.rooted_trees().unwrap();
            let view = TreeView::Rooted(&trees[0]);
            let count = enumerate_cut_subtrees(&view).len();
            let d = inst.max_degree();
            let n = inst.n();
            assert!(count <= (1 << d) * n, "{count} > 2^{d} * {n}");
        }
    }

    impl TreeShape {
        fn from_opt(o: Option<TreeShape>) -> String {
            match o {
                None => String::new(),
                Some(s) => {
                    let t = crate::tree::RootedTree::from_shape(s).unwrap();
                    t.canonical_key()
                }
            }
        }
    }
}
