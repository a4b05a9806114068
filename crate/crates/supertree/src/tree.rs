//! Rooted and unrooted leaf-labeled trees and the primitives built on them:
//! restriction to a label set, refinement, canonical equality, re-rooting,
//! and the agreement / compatibility supertree checkers.
//!
//! Trees are arena-indexed and immutable after construction. Internal nodes
//! of degree two are never representable: every constructor suppresses them,
//! and child lists are kept in canonical order (ascending smallest label id
//! in the subtree) so that structural equality is label-isomorphism.

use crate::label::{LabelId, LabelSet, LabelUniverse};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("duplicate leaf label id {0}")]
    DuplicateLabel(LabelId),
    #[error("leaf sets differ")]
    LeafSetMismatch,
    #[error("node {0} is not an internal node")]
    NotInternal(usize),
    #[error("node {0} is not adjacent to the chosen root")]
    NotAdjacent(usize),
    #[error("removed subtree is trivial (a leaf)")]
    RemovedSubtreeTrivial,
    #[error("tree has too few leaves for this operation")]
    TooFewLeaves,
}

/// Whether an instance is over rooted or unrooted trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rooted,
    Unrooted,
}

/// Unnormalized tree structure used by constructors, the oracle enumerator
/// and witness reconstruction. May contain unary nodes; converting to a
/// [`RootedTree`] suppresses them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    Leaf(LabelId),
    Node(Vec<TreeShape>),
}

impl TreeShape {
    /// Collapses unary chains; `Node([])` becomes `None`.
    pub fn normalize(self) -> Option<TreeShape> {
        match self {
            TreeShape::Leaf(l) => Some(TreeShape::Leaf(l)),
            TreeShape::Node(children) => {
                let kids: Vec<TreeShape> =
                    children.into_iter().filter_map(TreeShape::normalize).collect();
                match kids.len() {
                    0 => None,
                    1 => kids.into_iter().next(),
                    _ => Some(TreeShape::Node(kids)),
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct RootedNode {
    parent: Option<usize>,
    children: Vec<usize>,
    label: Option<LabelId>,
}

/// A rooted leaf-labeled tree with no unary internal nodes.
#[derive(Debug, Clone)]
pub struct RootedTree {
    nodes: Vec<RootedNode>,
    root: Option<usize>,
    leafset: LabelSet,
    node_leafsets: Vec<LabelSet>,
}

impl RootedTree {
    pub fn empty() -> Self {
        RootedTree {
            nodes: Vec::new(),
            root: None,
            leafset: LabelSet::new(),
            node_leafsets: Vec::new(),
        }
    }

    /// Builds from a shape, suppressing unary nodes and sorting children
    /// canonically. Fails on duplicate leaf labels.
    pub fn from_shape(shape: TreeShape) -> Result<Self, TreeError> {
        let mut tree = RootedTree::empty();
        let shape = match shape.normalize() {
            Some(s) => s,
            None => return Ok(tree),
        };
        let root = tree.build(&shape, None)?;
        tree.root = Some(root);
        tree.leafset = tree.node_leafsets[root].clone();
        Ok(tree)
    }

    fn build(&mut self, shape: &TreeShape, parent: Option<usize>) -> Result<usize, TreeError> {
        let id = self.nodes.len();
        self.nodes.push(RootedNode {
            parent,
            children: Vec::new(),
            label: None,
        });
        self.node_leafsets.push(LabelSet::new());
        match shape {
            TreeShape::Leaf(l) => {
                if self.leafset.contains(*l) {
                    return Err(TreeError::DuplicateLabel(*l));
                }
                self.leafset.insert(*l);
                self.nodes[id].label = Some(*l);
                self.node_leafsets[id] = LabelSet::singleton(*l);
            }
            TreeShape::Node(children) => {
                let mut kids = Vec::with_capacity(children.len());
                let mut ls = LabelSet::new();
                for c in children {
                    let cid = self.build(c, Some(id))?;
                    ls.union_with(&self.node_leafsets[cid]);
                    kids.push(cid);
                }
                kids.sort_by_key(|&c| self.node_leafsets[c].min());
                self.nodes[id].children = kids;
                self.node_leafsets[id] = ls;
            }
        }
        Ok(id)
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn num_leaves(&self) -> usize {
        self.leafset.len()
    }

    pub fn leafset(&self) -> &LabelSet {
        &self.leafset
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.nodes[v].children
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.nodes[v].parent
    }

    pub fn label(&self, v: usize) -> Option<LabelId> {
        self.nodes[v].label
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].label.is_some()
    }

    /// Leaf labels below node `v`.
    pub fn node_leafset(&self, v: usize) -> &LabelSet {
        &self.node_leafsets[v]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.nodes.len()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_ids().filter(|&v| !self.is_leaf(v))
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_ids().filter(|&v| self.is_leaf(v))
    }

    /// Largest child count over internal nodes (the degree parameter `D`
    /// for rooted trees). Zero for empty or single-leaf trees.
    pub fn max_child_count(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    pub fn to_shape(&self) -> Option<TreeShape> {
        self.root.map(|r| self.shape_of(r))
    }

    fn shape_of(&self, v: usize) -> TreeShape {
        match self.nodes[v].label {
            Some(l) => TreeShape::Leaf(l),
            None => TreeShape::Node(self.nodes[v].children.iter().map(|&c| self.shape_of(c)).collect()),
        }
    }

    /// Canonical serialization over label ids; two rooted trees are
    /// leaf-label-isomorphic iff their keys agree.
    pub fn canonical_key(&self) -> String {
        let mut out = String::new();
        if let Some(r) = self.root {
            self.write_key(r, &mut out);
        }
        out
    }

    fn write_key(&self, v: usize, out: &mut String) {
        match self.nodes[v].label {
            Some(l) => out.push_str(&l.to_string()),
            None => {
                out.push('(');
                for (i, &c) in self.nodes[v].children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.write_key(c, out);
                }
                out.push(')');
            }
        }
    }

    /// Canonical Newick with label names; terminated by `;`.
    pub fn to_newick(&self, universe: &LabelUniverse) -> String {
        let mut out = String::new();
        if let Some(r) = self.root {
            self.write_newick(r, universe, &mut out);
        }
        out.push(';');
        out
    }

    fn write_newick(&self, v: usize, universe: &LabelUniverse, out: &mut String) {
        match self.nodes[v].label {
            Some(l) => out.push_str(universe.name(l)),
            None => {
                out.push('(');
                for (i, &c) in self.nodes[v].children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.write_newick(c, universe, out);
                }
                out.push(')');
            }
        }
    }

    /// The restriction `T|S`: leaves outside `S` removed, unary nodes
    /// suppressed. May be empty.
    pub fn restrict(&self, s: &LabelSet) -> RootedTree {
        let shape = self.root.and_then(|r| self.restrict_rec(r, s));
        match shape {
            Some(sh) => RootedTree::from_shape(sh).expect("restriction keeps labels distinct"),
            None => RootedTree::empty(),
        }
    }

    fn restrict_rec(&self, v: usize, s: &LabelSet) -> Option<TreeShape> {
        match self.nodes[v].label {
            Some(l) => s.contains(l).then_some(TreeShape::Leaf(l)),
            None => {
                if self.node_leafsets[v].intersection(s).is_empty() {
                    return None;
                }
                let kids: Vec<TreeShape> = self.nodes[v]
                    .children
                    .iter()
                    .filter_map(|&c| self.restrict_rec(c, s))
                    .collect();
                TreeShape::Node(kids).normalize()
            }
        }
    }

    /// All clusters (leaf sets below a node), including trivial ones.
    pub fn clusters(&self) -> HashSet<LabelSet> {
        self.node_leafsets.iter().cloned().collect()
    }

    /// True iff `self` refines `other` (`other` is obtainable from `self` by
    /// contracting edges). Requires equal leaf sets. Trees with at most two
    /// leaves compare refinable whenever the leaf sets match.
    pub fn refines(&self, other: &RootedTree) -> Result<bool, TreeError> {
        if self.leafset != other.leafset {
            return Err(TreeError::LeafSetMismatch);
        }
        if self.num_leaves() <= 2 {
            return Ok(true);
        }
        let mine = self.clusters();
        Ok(other.clusters().iter().all(|c| mine.contains(c)))
    }

    pub fn equals_canonical(&self, other: &RootedTree) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Converts to an unrooted tree; a degree-two root is deleted and its
    /// children joined by an edge. Errors on fewer than two leaves.
    pub fn unroot(&self) -> Result<UnrootedTree, TreeError> {
        if self.num_leaves() < 2 {
            return Err(TreeError::TooFewLeaves);
        }
        let root = self.root.unwrap();
        let fuse = self.nodes[root].children.len() == 2;
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut nodes: Vec<UnrootedNode> = Vec::new();
        for v in self.node_ids() {
            if fuse && v == root {
                continue;
            }
            remap.insert(v, nodes.len());
            nodes.push(UnrootedNode {
                neighbors: Vec::new(),
                label: self.nodes[v].label,
            });
        }
        for v in self.node_ids() {
            if fuse && v == root {
                continue;
            }
            for &c in &self.nodes[v].children {
                let (a, b) = (remap[&v], remap[&c]);
                nodes[a].neighbors.push(b);
                nodes[b].neighbors.push(a);
            }
        }
        if fuse {
            let (a, b) = (
                remap[&self.nodes[root].children[0]],
                remap[&self.nodes[root].children[1]],
            );
            nodes[a].neighbors.push(b);
            nodes[b].neighbors.push(a);
        }
        Ok(UnrootedTree::from_nodes(nodes))
    }
}

#[derive(Debug, Clone)]
struct UnrootedNode {
    neighbors: Vec<usize>,
    label: Option<LabelId>,
}

/// An unrooted leaf-labeled tree. Non-degenerate trees (three or more
/// leaves) have every internal node of degree at least three; zero-, one-
/// and two-leaf trees are permitted as degenerate values (restriction can
/// produce them).
#[derive(Debug, Clone)]
pub struct UnrootedTree {
    nodes: Vec<UnrootedNode>,
    leafset: LabelSet,
    /// (v, w) adjacent -> leaf labels in the component of `w` after
    /// removing the edge {v, w}.
    dir_leafsets: HashMap<(usize, usize), LabelSet>,
}

impl UnrootedTree {
    pub fn empty() -> Self {
        UnrootedTree {
            nodes: Vec::new(),
            leafset: LabelSet::new(),
            dir_leafsets: HashMap::new(),
        }
    }

    pub fn single_leaf(l: LabelId) -> Self {
        UnrootedTree::from_nodes(vec![UnrootedNode {
            neighbors: Vec::new(),
            label: Some(l),
        }])
    }

    fn from_nodes(nodes: Vec<UnrootedNode>) -> Self {
        let mut leafset = LabelSet::new();
        for n in &nodes {
            if let Some(l) = n.label {
                leafset.insert(l);
            }
        }
        let mut t = UnrootedTree {
            nodes,
            leafset,
            dir_leafsets: HashMap::new(),
        };
        t.fill_dir_leafsets();
        t
    }

    fn fill_dir_leafsets(&mut self) {
        let mut memo: HashMap<(usize, usize), LabelSet> = HashMap::new();
        for v in 0..self.nodes.len() {
            for i in 0..self.nodes[v].neighbors.len() {
                let w = self.nodes[v].neighbors[i];
                self.dls(v, w, &mut memo);
            }
        }
        self.dir_leafsets = memo;
    }

    fn dls(&self, v: usize, w: usize, memo: &mut HashMap<(usize, usize), LabelSet>) -> LabelSet {
        if let Some(s) = memo.get(&(v, w)) {
            return s.clone();
        }
        let mut s = LabelSet::new();
        if let Some(l) = self.nodes[w].label {
            s.insert(l);
        }
        for i in 0..self.nodes[w].neighbors.len() {
            let x = self.nodes[w].neighbors[i];
            if x != v {
                s.union_with(&self.dls(w, x, memo));
            }
        }
        memo.insert((v, w), s.clone());
        s
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn num_leaves(&self) -> usize {
        self.leafset.len()
    }

    pub fn leafset(&self) -> &LabelSet {
        &self.leafset
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nodes[v].neighbors
    }

    pub fn label(&self, v: usize) -> Option<LabelId> {
        self.nodes[v].label
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].label.is_some()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.nodes.len()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_ids().filter(|&v| !self.is_leaf(v))
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_ids().filter(|&v| self.is_leaf(v))
    }

    /// Fewer than three leaves: no internal structure exists.
    pub fn is_degenerate(&self) -> bool {
        self.num_leaves() < 3
    }

    /// Largest internal-node degree (the degree parameter `D` for unrooted
    /// trees). Zero for degenerate trees.
    pub fn max_degree(&self) -> usize {
        self.internal_nodes()
            .map(|v| self.nodes[v].neighbors.len())
            .max()
            .unwrap_or(0)
    }

    /// Leaf labels in the component of `w` after removing edge {v, w}.
    pub fn dir_leafset(&self, v: usize, w: usize) -> &LabelSet {
        &self.dir_leafsets[&(v, w)]
    }

    /// Roots the tree at internal node `v`, optionally dropping the subtree
    /// toward `removed` (which must be an internal neighbor, so the dropped
    /// subtree is nontrivial).
    pub fn root_at(&self, v: usize, removed: Option<usize>) -> Result<RootedTree, TreeError> {
        if self.is_leaf(v) {
            return Err(TreeError::NotInternal(v));
        }
        if let Some(u) = removed {
            if !self.nodes[v].neighbors.contains(&u) {
                return Err(TreeError::NotAdjacent(u));
            }
            if self.is_leaf(u) {
                return Err(TreeError::RemovedSubtreeTrivial);
            }
        }
        let kids: Vec<TreeShape> = self.nodes[v]
            .neighbors
            .iter()
            .filter(|&&w| Some(w) != removed)
            .map(|&w| self.shape_away(v, w))
            .collect();
        RootedTree::from_shape(TreeShape::Node(kids))
    }

    fn shape_away(&self, from: usize, v: usize) -> TreeShape {
        match self.nodes[v].label {
            Some(l) => TreeShape::Leaf(l),
            None => TreeShape::Node(
                self.nodes[v]
                    .neighbors
                    .iter()
                    .filter(|&&w| w != from)
                    .map(|&w| self.shape_away(v, w))
                    .collect(),
            ),
        }
    }

    /// Canonical rooted view: the tree rooted at the neighbor of the
    /// smallest leaf (the smallest leaf stays attached as a child).
    /// Degenerate trees get an ad-hoc rooted form with the same leaves.
    fn canonical_rooted(&self) -> RootedTree {
        if self.num_leaves() <= 2 {
            let kids: Vec<TreeShape> = self.leafset.iter().map(TreeShape::Leaf).collect();
            return RootedTree::from_shape(TreeShape::Node(kids)).unwrap();
        }
        let min = self.leafset.min().unwrap();
        let m = self
            .node_ids()
            .find(|&v| self.nodes[v].label == Some(min))
            .unwrap();
        let r = self.nodes[m].neighbors[0];
        self.root_at(r, None).unwrap()
    }

    pub fn canonical_key(&self) -> String {
        self.canonical_rooted().canonical_key()
    }

    pub fn equals_canonical(&self, other: &UnrootedTree) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    pub fn to_newick(&self, universe: &LabelUniverse) -> String {
        self.canonical_rooted().to_newick(universe)
    }

    /// The restriction `T|S`: prune leaves outside `S`, then repeatedly drop
    /// dangling internal nodes and splice degree-two internal nodes.
    pub fn restrict(&self, s: &LabelSet) -> UnrootedTree {
        let mut alive: Vec<bool> = Vec::with_capacity(self.nodes.len());
        let mut adj: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let keep = match n.label {
                Some(l) => s.contains(l),
                None => true,
            };
            alive.push(keep);
            adj.push(n.neighbors.clone());
        }
        for v in 0..adj.len() {
            if !alive[v] {
                for i in 0..adj[v].len() {
                    let w = adj[v][i];
                    adj[w].retain(|&x| x != v);
                }
                adj[v].clear();
            }
        }
        loop {
            let mut changed = false;
            for v in 0..adj.len() {
                if !alive[v] || self.nodes[v].label.is_some() {
                    continue;
                }
                match adj[v].len() {
                    0 => {
                        alive[v] = false;
                        changed = true;
                    }
                    1 => {
                        let w = adj[v][0];
                        adj[w].retain(|&x| x != v);
                        adj[v].clear();
                        alive[v] = false;
                        changed = true;
                    }
                    2 => {
                        let (a, b) = (adj[v][0], adj[v][1]);
                        adj[a].retain(|&x| x != v);
                        adj[b].retain(|&x| x != v);
                        adj[a].push(b);
                        adj[b].push(a);
                        adj[v].clear();
                        alive[v] = false;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut nodes: Vec<UnrootedNode> = Vec::new();
        for v in 0..adj.len() {
            if alive[v] {
                remap.insert(v, nodes.len());
                nodes.push(UnrootedNode {
                    neighbors: Vec::new(),
                    label: self.nodes[v].label,
                });
            }
        }
        for v in 0..adj.len() {
            if alive[v] {
                nodes[remap[&v]].neighbors = adj[v].iter().map(|w| remap[w]).collect();
            }
        }
        UnrootedTree::from_nodes(nodes)
    }

    /// All splits (leaf bipartitions across edges), each normalized to the
    /// side not containing the smallest leaf label.
    pub fn splits(&self) -> HashSet<LabelSet> {
        let mut out = HashSet::new();
        let min = match self.leafset.min() {
            Some(m) => m,
            None => return out,
        };
        for v in self.node_ids() {
            for &w in &self.nodes[v].neighbors {
                if v < w {
                    let side = self.dir_leafset(v, w);
                    let norm = if side.contains(min) {
                        self.leafset.difference(side)
                    } else {
                        side.clone()
                    };
                    out.insert(norm);
                }
            }
        }
        out
    }

    /// Split-containment refinement test; leaf sets must match. Trees with
    /// at most two leaves compare refinable.
    pub fn refines(&self, other: &UnrootedTree) -> Result<bool, TreeError> {
        if self.leafset != other.leafset {
            return Err(TreeError::LeafSetMismatch);
        }
        if self.num_leaves() <= 2 {
            return Ok(true);
        }
        let mine = self.splits();
        Ok(other.splits().iter().all(|s| mine.contains(s)))
    }
}

/// Common surface of rooted and unrooted trees needed by the supertree
/// checkers and the oracle.
pub trait Phylo: Clone {
    fn restrict(&self, s: &LabelSet) -> Self;
    fn refines(&self, other: &Self) -> Result<bool, TreeError>;
    fn equals_canonical(&self, other: &Self) -> bool;
    fn leafset(&self) -> &LabelSet;
}

impl Phylo for RootedTree {
    fn restrict(&self, s: &LabelSet) -> Self {
        RootedTree::restrict(self, s)
    }
    fn refines(&self, other: &Self) -> Result<bool, TreeError> {
        RootedTree::refines(self, other)
    }
    fn equals_canonical(&self, other: &Self) -> bool {
        RootedTree::equals_canonical(self, other)
    }
    fn leafset(&self) -> &LabelSet {
        &self.leafset
    }
}

impl Phylo for UnrootedTree {
    fn restrict(&self, s: &LabelSet) -> Self {
        UnrootedTree::restrict(self, s)
    }
    fn refines(&self, other: &Self) -> Result<bool, TreeError> {
        UnrootedTree::refines(self, other)
    }
    fn equals_canonical(&self, other: &Self) -> bool {
        UnrootedTree::equals_canonical(self, other)
    }
    fn leafset(&self) -> &LabelSet {
        &self.leafset
    }
}

/// True iff `X|L(Ti) = Ti|L(X)` for every input tree.
pub fn is_agreement_supertree<T: Phylo>(x: &T, trees: &[T]) -> bool {
    trees.iter().all(|t| {
        x.restrict(t.leafset())
            .equals_canonical(&t.restrict(x.leafset()))
    })
}

/// True iff `Y|L(Ti)` refines `Ti|L(Y)` for every input tree.
pub fn is_compatible_supertree<T: Phylo>(y: &T, trees: &[T]) -> bool {
    trees.iter().all(|t| {
        y.restrict(t.leafset())
            .refines(&t.restrict(y.leafset()))
            .expect("restrictions share a leaf set")
    })
}


impl Default for RootedTree {
    fn default() -> Self {
        RootedTree::empty()
    }
}

impl Default for UnrootedTree {
    fn default() -> Self {
        UnrootedTree::empty()
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.equals_canonical(other)
    }
}
impl Eq for RootedTree {}

impl PartialEq for UnrootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.equals_canonical(other)
    }
}
impl Eq for UnrootedTree {}
