//! Maximum compatible supertree solver.
//!
//! Memoized dynamic program over cut-subforests: a terminal state (every
//! part empty or a single leaf) is worth |Λ|, and a non-terminal state is
//! the best sum over its unordered bipartites. For unrooted instances the
//! same rooted recursion is evaluated on every cut-subforest and the best
//! witness is unrooted at the end.

use crate::instance::ProblemInstance;
use crate::label::LabelSet;
use crate::solve::{
    caterpillar, unrooted_witness, SolveError, SolveOptions, SolveStats, SupertreeResult,
    SupertreeWitness,
};
use crate::state_space::{
    bipartites, describe_cut, enumerate_cut_subtrees, full_tree_cut, is_terminal_cut, lambda_cut,
    CutSubtree, Interner, TreeView,
};
use crate::tree::{Mode, RootedTree, TreeShape};
use std::time::Instant;

#[derive(Debug, Clone)]
enum Choice {
    Terminal(LabelSet),
    Split(u32, u32),
}

#[derive(Debug, Clone)]
struct Entry {
    value: usize,
    choice: Choice,
}

struct Solver<'a> {
    views: Vec<TreeView<'a>>,
    states: Interner<Vec<CutSubtree>>,
    memo: Vec<Option<Entry>>,
    transitions: u64,
}

impl<'a> Solver<'a> {
    fn new(views: Vec<TreeView<'a>>) -> Self {
        Solver {
            views,
            states: Interner::new(),
            memo: Vec::new(),
            transitions: 0,
        }
    }

    fn value(&self, id: u32) -> usize {
        self.memo[id as usize].as_ref().expect("evaluated").value
    }

    /// Evaluates one state, memoized; returns its dense id. Terminates
    /// because both sides of a bipartite carry strictly fewer leaves.
    fn eval(&mut self, parts: &[CutSubtree]) -> u32 {
        let id = self.states.intern(parts.to_vec());
        if self.memo.len() < self.states.len() {
            self.memo.resize(self.states.len(), None);
        }
        if self.memo[id as usize].is_some() {
            return id;
        }
        let entry = if is_terminal_cut(parts) {
            let lam = lambda_cut(parts, &self.views);
            Entry {
                value: lam.len(),
                choice: Choice::Terminal(lam),
            }
        } else {
            let mut best: Option<(usize, u32, u32)> = None;
            for (l, r) in bipartites(&self.views, parts) {
                self.transitions += 1;
                let lid = self.eval(&l);
                let rid = self.eval(&r);
                let v = self.value(lid) + self.value(rid);
                if best.map_or(true, |(bv, _, _)| v > bv) {
                    best = Some((v, lid, rid));
                }
            }
            let (value, lid, rid) = best.expect("non-terminal state has a bipartite");
            Entry {
                value,
                choice: Choice::Split(lid, rid),
            }
        };
        self.memo[id as usize] = Some(entry);
        id
    }

    fn shape(&self, id: u32) -> Option<TreeShape> {
        match &self.memo[id as usize].as_ref().expect("evaluated").choice {
            Choice::Terminal(lam) => caterpillar(lam),
            Choice::Split(l, r) => match (self.shape(*l), self.shape(*r)) {
                (None, None) => None,
                (Some(s), None) | (None, Some(s)) => Some(s),
                (Some(a), Some(b)) => Some(TreeShape::Node(vec![a, b])),
            },
        }
    }

    fn stats(&self, start: Instant) -> SolveStats {
        SolveStats {
            states_visited: self.states.len(),
            transitions_explored: self.transitions,
            memo_entries: self.memo.iter().filter(|e| e.is_some()).count(),
            wall: start.elapsed(),
        }
    }

    fn dump(&self, inst: &ProblemInstance) -> Vec<String> {
        (0..self.states.len() as u32)
            .map(|id| {
                let parts = self.states.get(id);
                format!(
                    "{}: {} value={}",
                    id,
                    describe_cut(parts, &self.views, &inst.universe),
                    self.value(id)
                )
            })
            .collect()
    }
}

fn validate(inst: &ProblemInstance) -> Result<(), SolveError> {
    if inst.k() == 0 {
        return Err(SolveError::NoTrees);
    }
    match inst.mode() {
        Mode::Rooted => {
            for (i, t) in inst.rooted_trees().unwrap().iter().enumerate() {
                if t.is_empty() {
                    return Err(SolveError::EmptyTree(i));
                }
            }
        }
        Mode::Unrooted => {
            for (i, t) in inst.unrooted_trees().unwrap().iter().enumerate() {
                if t.num_leaves() < 3 {
                    return Err(SolveError::DegenerateUnrootedTree(i));
                }
            }
        }
    }
    Ok(())
}

pub fn mcsp(inst: &ProblemInstance) -> Result<SupertreeResult, SolveError> {
    mcsp_with(inst, &SolveOptions::default())
}

pub fn mcsp_with(
    inst: &ProblemInstance,
    opts: &SolveOptions,
) -> Result<SupertreeResult, SolveError> {
    validate(inst)?;
    let start = Instant::now();
    let views = TreeView::from_instance(inst);
    let mut solver = Solver::new(views);
    let result = match inst.mode() {
        Mode::Rooted => {
            let top: Vec<CutSubtree> =
                inst.rooted_trees().unwrap().iter().map(full_tree_cut).collect();
            let id = solver.eval(&top);
            let size = solver.value(id);
            let witness = match solver.shape(id) {
                Some(s) => RootedTree::from_shape(s).expect("witness labels are distinct"),
                None => RootedTree::empty(),
            };
            (size, SupertreeWitness::Rooted(witness))
        }
        Mode::Unrooted => {
            // evaluate every cut-subforest; the answer is the best of them
            let per_tree: Vec<Vec<CutSubtree>> = solver
                .views
                .iter()
                .map(|v| {
                    let mut s = vec![CutSubtree::Empty];
                    s.extend(enumerate_cut_subtrees(v));
                    s
                })
                .collect();
            let mut best: Option<(usize, u32)> = None;
            let mut parts = vec![CutSubtree::Empty; inst.k()];
            all_tuples(&per_tree, 0, &mut parts, &mut |parts| {
                if parts.iter().all(CutSubtree::is_empty) {
                    return;
                }
                let id = solver.eval(parts);
                let v = solver.value(id);
                if best.map_or(true, |(bv, _)| v > bv) {
                    best = Some((v, id));
                }
            });
            let (size, id) = best.expect("instance has at least one state");
            (size, SupertreeWitness::Unrooted(unrooted_witness(solver.shape(id))))
        }
    };
    let stats = solver.stats(start);
    let dump = opts.collect_dump.then(|| solver.dump(inst));
    Ok(SupertreeResult {
        size: result.0,
        witness: result.1,
        stats,
        dump,
    })
}

fn all_tuples<T: Copy>(
    per_tree: &[Vec<T>],
    i: usize,
    parts: &mut Vec<T>,
    f: &mut impl FnMut(&[T]),
) {
    if i == per_tree.len() {
        f(parts);
        return;
    }
    for &s in &per_tree[i] {
        parts[i] = s;
        all_tuples(per_tree, i + 1, parts, f);
    }
}
