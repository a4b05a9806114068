//! Maximum agreement supertree solver.
//!
//! Memoized dynamic program over sub-forests: a terminal state is worth
//! |Λ|, and a non-terminal state is the best sum over its decompositions
//! into up to k·D slots. An unrooted instance is the best rooted variant
//! (every input tree rooted at an internal node or on an edge); the
//! variants share one memo because their recursions meet in the same
//! maximal-subtree states.

use crate::instance::ProblemInstance;
use crate::label::LabelSet;
use crate::solve::{
    caterpillar, unrooted_witness, SolveError, SolveOptions, SolveStats, SupertreeResult,
    SupertreeWitness,
};
use crate::state_space::{
    describe_sub, for_each_decomposition, full_tree_sub, is_terminal_sub, lambda_sub, Interner,
    SubForestRef, TreeView,
};
use crate::tree::{Mode, RootedTree, TreeShape, UnrootedTree};
use std::time::Instant;

#[derive(Debug, Clone)]
enum Choice {
    Terminal(LabelSet),
    Join(Vec<u32>),
}

#[derive(Debug, Clone)]
struct Entry {
    value: usize,
    choice: Choice,
}

struct Solver<'a> {
    views: Vec<TreeView<'a>>,
    d_max: usize,
    states: Interner<Vec<SubForestRef>>,
    memo: Vec<Option<Entry>>,
    transitions: u64,
}

impl<'a> Solver<'a> {
    fn new(views: Vec<TreeView<'a>>, d_max: usize) -> Self {
        Solver {
            views,
            d_max,
            states: Interner::new(),
            memo: Vec::new(),
            transitions: 0,
        }
    }

    fn value(&self, id: u32) -> usize {
        self.memo[id as usize].as_ref().expect("evaluated").value
    }

    /// Evaluates one state, memoized; returns its dense id. Terminates
    /// because every slot of a decomposition carries strictly fewer
    /// leaves than the whole state.
    fn eval(&mut self, parts: &[SubForestRef]) -> u32 {
        let id = self.states.intern(parts.to_vec());
        if self.memo.len() < self.states.len() {
            self.memo.resize(self.states.len(), None);
        }
        if self.memo[id as usize].is_some() {
            return id;
        }
        let entry = if is_terminal_sub(parts) {
            let lam = lambda_sub(parts, &self.views);
            Entry {
                value: lam.len(),
                choice: Choice::Terminal(lam),
            }
        } else {
            let mut best: Option<(usize, Vec<u32>)> = None;
            let views = self.views.clone();
            for_each_decomposition(&views, parts, self.d_max, &mut |slots| {
                self.transitions += 1;
                let ids: Vec<u32> = slots.iter().map(|s| self.eval(s)).collect();
                let v: usize = ids.iter().map(|&i| self.value(i)).sum();
                if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
                    best = Some((v, ids));
                }
            });
            let (value, ids) = best.expect("non-terminal state has a decomposition");
            Entry {
                value,
                choice: Choice::Join(ids),
            }
        };
        self.memo[id as usize] = Some(entry);
        id
    }

    fn shape(&self, id: u32) -> Option<TreeShape> {
        match &self.memo[id as usize].as_ref().expect("evaluated").choice {
            Choice::Terminal(lam) => caterpillar(lam),
            Choice::Join(ids) => {
                let kids: Vec<TreeShape> =
                    ids.iter().filter_map(|&i| self.shape(i)).collect();
                match kids.len() {
                    0 => None,
                    1 => kids.into_iter().next(),
                    _ => Some(TreeShape::Node(kids)),
                }
            }
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
                    describe_sub(parts, &self.views, &inst.universe),
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

pub fn masp(inst: &ProblemInstance) -> Result<SupertreeResult, SolveError> {
    masp_with(inst, &SolveOptions::default())
}

pub fn masp_with(
    inst: &ProblemInstance,
    opts: &SolveOptions,
) -> Result<SupertreeResult, SolveError> {
    validate(inst)?;
    let start = Instant::now();
    let d_max = (inst.k() * inst.max_degree()).max(2);
    let views = TreeView::from_instance(inst);
    let mut solver = Solver::new(views, d_max);
    let result = match inst.mode() {
        Mode::Rooted => {
            let top: Vec<SubForestRef> =
                inst.rooted_trees().unwrap().iter().map(full_tree_sub).collect();
            let id = solver.eval(&top);
            let size = solver.value(id);
            let witness = match solver.shape(id) {
                Some(s) => RootedTree::from_shape(s).expect("witness labels are distinct"),
                None => RootedTree::empty(),
            };
            (size, SupertreeWitness::Rooted(witness))
        }
        Mode::Unrooted => {
            // best over every rooted variant of the instance
            let rootings: Vec<Vec<SubForestRef>> = inst
                .unrooted_trees()
                .unwrap()
                .iter()
                .map(full_rootings_sub)
                .collect();
            let mut best: Option<(usize, u32)> = None;
            let mut parts = vec![SubForestRef::Empty; inst.k()];
            variant_tuples(&rootings, 0, &mut parts, &mut |parts| {
                let id = solver.eval(parts);
                let v = solver.value(id);
                if best.map_or(true, |(bv, _)| v > bv) {
                    best = Some((v, id));
                }
            });
            let (size, id) = best.expect("every tree has an internal node");
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

/// Every way to root the whole tree: at an internal node, or on any edge
/// (including leaf edges). Edge rootings are required for completeness: an
/// unrooted witness rooted at an arbitrary point projects onto each input
/// tree at either a node or a point interior to an edge, and only an edge
/// rooting of the input reproduces the latter.
fn full_rootings_sub(tree: &UnrootedTree) -> Vec<SubForestRef> {
    let mut out: Vec<SubForestRef> = tree
        .internal_nodes()
        .map(|node| SubForestRef::FullRooting { node })
        .collect();
    for u in tree.node_ids() {
        for &v in tree.neighbors(u) {
            if u < v {
                out.push(SubForestRef::FullEdgeRooting { u, v });
            }
        }
    }
    out
}

fn variant_tuples(
    rootings: &[Vec<SubForestRef>],
    i: usize,
    parts: &mut Vec<SubForestRef>,
    f: &mut impl FnMut(&[SubForestRef]),
) {
    if i == rootings.len() {
        f(parts);
        return;
    }
    for &s in &rootings[i] {
        parts[i] = s;
        variant_tuples(rootings, i + 1, parts, f);
    }
}
