//! Acceptance gate. Each criterion prints one `ACCEPTANCE <id>: PASS/FAIL`
//! line (run with `--nocapture` to see them) and fails the build on FAIL.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use supertree::generate::{generate, random_rooted_tree, random_unrooted_tree, GenConfig};
use supertree::instance::ProblemInstance;
use supertree::label::{LabelId, LabelUniverse};
use supertree::masp::masp;
use supertree::mcsp::mcsp;
use supertree::oracle::{brute_masp, brute_mcsp};
use supertree::state_space::{
    decompositions, enumerate_cut_subtrees, enumerate_maximal_subtrees, full_tree_sub, TreeView,
};
use supertree::tree::{is_agreement_supertree, is_compatible_supertree, Mode, RootedTree};
use supertree::{SupertreeWitness, TreeSet};

fn witness_valid(w: &SupertreeWitness, inst: &ProblemInstance, agreement: bool) -> bool {
    match (w, &inst.trees) {
        (SupertreeWitness::Rooted(x), TreeSet::Rooted(trees)) => {
            if agreement {
                is_agreement_supertree(x, trees)
            } else {
                is_compatible_supertree(x, trees)
            }
        }
        (SupertreeWitness::Unrooted(x), TreeSet::Unrooted(trees)) => {
            if agreement {
                is_agreement_supertree(x, trees)
            } else {
                is_compatible_supertree(x, trees)
            }
        }
        _ => false,
    }
}

fn report(id: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {id}: {}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            String::new()
        } else {
            format!(" ({detail})")
        }
    );
    assert!(ok, "acceptance criterion {id} failed: {detail}");
}

/// Seeded sweep: 240 instances spanning k in 1..=3, n in 4..=6, D in
/// 2..=3, both modes.
fn sweep_instances() -> Vec<ProblemInstance> {
    let mut out = Vec::new();
    for (mode, base) in [(Mode::Rooted, 0u64), (Mode::Unrooted, 10_000u64)] {
        for i in 0..120u64 {
            let seed = base + i;
            let cfg = GenConfig {
                seed,
                k: (i % 3 + 1) as usize,
                n: 4 + (i % 3) as usize,
                max_degree: match mode {
                    Mode::Rooted => 2 + (i / 3 % 2) as usize,
                    Mode::Unrooted => 3,
                },
                mode,
            };
            out.push(generate(&cfg).unwrap().instance);
        }
    }
    out
}

#[test]
fn criterion_1_oracle_equivalence_and_2_witness_soundness() {
    let instances = sweep_instances();
    let mut equiv_ok = true;
    let mut witness_ok = true;
    let mut checked = 0usize;
    for inst in &instances {
        for problem in ["masp", "mcsp"] {
            let (dp, reference) = match problem {
                "masp" => (masp(inst).unwrap(), brute_masp(inst)),
                _ => (mcsp(inst).unwrap(), brute_mcsp(inst)),
            };
            checked += 1;
            if dp.size != reference.size {
                eprintln!(
                    "mismatch: {problem} {:?} dp={} oracle={}",
                    inst.mode(),
                    dp.size,
                    reference.size
                );
                equiv_ok = false;
            }
            if dp.witness.size() != dp.size
                || !witness_valid(&dp.witness, inst, problem == "masp")
            {
                eprintln!("bad witness: {problem} {:?} size={}", inst.mode(), dp.size);
                witness_ok = false;
            }
        }
    }
    report(
        "1 oracle-equivalence",
        equiv_ok && checked == 2 * instances.len() && instances.len() >= 200,
        &format!("{} instances, both problems", instances.len()),
    );
    report(
        "2 witness-soundness",
        witness_ok,
        &format!("{checked} witnesses checked"),
    );
}

#[test]
fn criterion_3_crafted_instance_values() {
    let cases: &[(&[&str], Mode, usize, usize)] = &[
        (&["(a,b,c);", "((a,b),c);"], Mode::Rooted, 2, 3),
        (&["((a,b),c);", "((a,c),b);"], Mode::Rooted, 2, 2),
        (&["((a,b),c);", "((a,b),d);"], Mode::Rooted, 4, 4),
        (&["((a,b),(c,d));", "((a,c),(b,d));"], Mode::Unrooted, 3, 3),
    ];
    let mut ok = true;
    for (texts, mode, want_masp, want_mcsp) in cases {
        let inst = ProblemInstance::from_newick(texts, *mode).unwrap();
        let got_masp = masp(&inst).unwrap().size;
        let got_mcsp = mcsp(&inst).unwrap().size;
        if got_masp != *want_masp || got_mcsp != *want_mcsp {
            eprintln!(
                "crafted {texts:?}: masp {got_masp} (want {want_masp}), mcsp {got_mcsp} (want {want_mcsp})"
            );
            ok = false;
        }
    }
    report("3 crafted-values", ok, "4 instances");
}

#[test]
fn criterion_4_enumeration_bounds() {
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    for _ in 0..100 {
        let n = rng.gen_range(2..=30);
        let d = rng.gen_range(2..=5);
        let labels: Vec<LabelId> = (0..n as LabelId).collect();
        let t = random_rooted_tree(&mut rng, &labels, d);
        let count = enumerate_cut_subtrees(&TreeView::Rooted(&t)).len();
        if count > (1usize << d) * n {
            eprintln!("cut-subtree bound broken: {count} > 2^{d} * {n}");
            ok = false;
        }
    }

    for _ in 0..100 {
        let n = rng.gen_range(3..=30);
        let d = rng.gen_range(3..=5);
        let labels: Vec<LabelId> = (0..n as LabelId).collect();
        let t = random_unrooted_tree(&mut rng, &labels, d);
        let count = enumerate_maximal_subtrees(&t).len();
        if count > 3 * n - 1 {
            eprintln!("maximal-subtree bound broken: {count} > 3*{n}-1");
            ok = false;
        }
    }

    for seed in 0..30u64 {
        let cfg = GenConfig {
            seed,
            k: 2,
            n: 5,
            max_degree: 3,
            mode: Mode::Rooted,
        };
        let inst = generate(&cfg).unwrap().instance;
        let trees = inst.rooted_trees().unwrap();
        let views: Vec<TreeView> = trees.iter().map(TreeView::Rooted).collect();
        let parts: Vec<_> = trees.iter().map(full_tree_sub).collect();
        let big_d = inst.max_degree();
        for d in 2..=inst.k() * big_d.max(1) {
            let count = decompositions(&views, &parts, d).len() as u128;
            let bound = (0..inst.k())
                .map(|_| ((d as u128 + 1).pow(big_d as u32)) + d as u128)
                .product::<u128>();
            if count > bound {
                eprintln!("decomposition bound broken: {count} > {bound} (d={d})");
                ok = false;
            }
        }
    }

    report("4 enumeration-bounds", ok, "100+100 trees, 30 sub-forests");
}

#[test]
fn criterion_5_binary_coincidence() {
    let mut ok = true;
    for i in 0..50u64 {
        let cfg = GenConfig {
            seed: 50_000 + i,
            k: (i % 3 + 1) as usize,
            n: 6 + (i % 5) as usize,
            max_degree: 2,
            mode: Mode::Rooted,
        };
        let inst = generate(&cfg).unwrap().instance;
        let a = masp(&inst).unwrap().size;
        let c = mcsp(&inst).unwrap().size;
        if a != c {
            eprintln!("binary instance seed {}: masp {a} != mcsp {c}", cfg.seed);
            ok = false;
        }
    }
    report("5 binary-coincidence", ok, "50 binary rooted instances");
}

fn full_label_instance(seed: u64, n: usize, k: usize) -> ProblemInstance {
    let names: Vec<String> = (0..n).map(|i| format!("t{i:03}")).collect();
    let universe = LabelUniverse::from_labels(names);
    let labels: Vec<LabelId> = (0..n as LabelId).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trees: Vec<RootedTree> = (0..k)
        .map(|_| random_rooted_tree(&mut rng, &labels, 2))
        .collect();
    ProblemInstance::from_rooted(trees, universe)
}

#[test]
fn criterion_6_growth_trend() {
    let states: Vec<f64> = [10usize, 20, 40]
        .iter()
        .map(|&n| {
            let inst = full_label_instance(600 + n as u64, n, 2);
            mcsp(&inst).unwrap().stats.states_visited as f64
        })
        .collect();
    // doubling n may grow the state count by at most 2x the quadratic factor
    let ratio_ok = states[1] / states[0] <= 8.0 && states[2] / states[1] <= 8.0;

    let inst = full_label_instance(650, 50, 2);
    let start = Instant::now();
    let r = mcsp(&inst).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let time_ok = secs < 10.0 && r.size >= 1;

    report(
        "6 growth-trend",
        ratio_ok && time_ok,
        &format!(
            "states {:?}, n=50 in {secs:.2}s",
            states.iter().map(|s| *s as usize).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_7_invariant_suite() {
    let mut ok = true;
    let mut count = 0usize;
    for i in 0..250u64 {
        for mode in [Mode::Rooted, Mode::Unrooted] {
            let cfg = GenConfig {
                seed: 70_000 + i,
                k: (i % 3 + 1) as usize,
                n: match mode {
                    Mode::Rooted => 4 + (i % 2) as usize,
                    Mode::Unrooted => 5,
                },
                max_degree: 3,
                mode,
            };
            let g = generate(&cfg).unwrap();
            let inst = g.instance;
            count += 1;

            let a = masp(&inst).unwrap().size;
            let c = mcsp(&inst).unwrap().size;
            if c < a {
                eprintln!("seed {}: mcsp {c} < masp {a}", cfg.seed);
                ok = false;
            }

            // permutation invariance: reversed tree order, same sizes
            let rev_texts: Vec<&str> = g.texts.iter().rev().map(String::as_str).collect();
            let rev = ProblemInstance::from_newick(&rev_texts, mode).unwrap();
            if masp(&rev).unwrap().size != a || mcsp(&rev).unwrap().size != c {
                eprintln!("seed {}: permutation changed the answer", cfg.seed);
                ok = false;
            }

            // duplicating a tree adds no constraint (small k only: the
            // widened instance multiplies the decomposition space)
            if inst.k() <= 2 {
                let mut dup_texts: Vec<&str> = g.texts.iter().map(String::as_str).collect();
                dup_texts.push(&g.texts[0]);
                let dup = ProblemInstance::from_newick(&dup_texts, mode).unwrap();
                if masp(&dup).unwrap().size != a || mcsp(&dup).unwrap().size != c {
                    eprintln!("seed {}: duplicate tree changed the answer", cfg.seed);
                    ok = false;
                }
            }

            // monotonicity: dropping the last tree cannot shrink the answer
            // when its labels are covered by the remaining trees
            if inst.k() >= 2 {
                let prefix_texts: Vec<&str> = g.texts[..g.texts.len() - 1]
                    .iter()
                    .map(String::as_str)
                    .collect();
                let prefix = ProblemInstance::from_newick(&prefix_texts, mode).unwrap();
                let last = ProblemInstance::from_newick(
                    &[g.texts.last().unwrap().as_str()],
                    mode,
                )
                .unwrap();
                // label coverage compared by name: the two instances intern
                // labels into different universes
                let names = |inst: &ProblemInstance| -> std::collections::BTreeSet<String> {
                    inst.label_union()
                        .iter()
                        .map(|l| inst.universe.name(l).to_string())
                        .collect()
                };
                if names(&last).is_subset(&names(&prefix)) {
                    if masp(&prefix).unwrap().size < a || mcsp(&prefix).unwrap().size < c {
                        eprintln!("seed {}: monotonicity broken", cfg.seed);
                        ok = false;
                    }
                }
            }

            // round trip: the emitted instance reparses to the same trees
            let texts: Vec<&str> = g.texts.iter().map(String::as_str).collect();
            let re = ProblemInstance::from_newick(&texts, mode).unwrap();
            let same = match mode {
                Mode::Rooted => re
                    .rooted_trees()
                    .unwrap()
                    .iter()
                    .zip(inst.rooted_trees().unwrap())
                    .all(|(x, y)| x.to_newick(&re.universe) == y.to_newick(&inst.universe)),
                Mode::Unrooted => re
                    .unrooted_trees()
                    .unwrap()
                    .iter()
                    .zip(inst.unrooted_trees().unwrap())
                    .all(|(x, y)| x.to_newick(&re.universe) == y.to_newick(&inst.universe)),
            };
            if !same {
                eprintln!("seed {}: round trip changed a tree", cfg.seed);
                ok = false;
            }
        }
    }
    report("7 invariant-suite", ok, &format!("{count} instances"));
}
