use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vminor::dh::{random_dh, GrowthWeights};
use vminor::dh_star::{solve_star, SolverOutcome};
use vminor::ops::{apply_moves, Move};
use vminor::oracle::{vertex_minor_bruteforce, BruteOptions};
use vminor::small::small_vertex_minor;
use vminor::stab::{verify_plan, verify_plan_report};
use vminor::{LabeledGraph, TransformationPlan, VertexId};

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> LabeledGraph {
    let mut g = LabeledGraph::with_size(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.set_edge_idx(i, j, true);
            }
        }
    }
    g
}

/// Target without isolated vertices: either a random graph on a random
/// subset or what a random measurement sequence actually leaves behind.
fn random_target(g: &LabeledGraph, rng: &mut ChaCha8Rng) -> Option<LabeledGraph> {
    let k = rng.gen_range(2..=g.n().min(4));
    let mut keep = g.vertices().to_vec();
    keep.shuffle(rng);
    keep.truncate(k);
    keep.sort();
    let t = if rng.gen_bool(0.5) {
        let mut h = g.clone();
        for v in g.vertices().iter().filter(|v| !keep.contains(v)) {
            let m = match rng.gen_range(0..4) {
                0 => Move::MeasX { v: v.clone(), partner: None },
                1 => Move::MeasY { v: v.clone() },
                2 => Move::Lc { v: v.clone() },
                _ => Move::MeasZ { v: v.clone() },
            };
            h = apply_moves(&h, &[m]).ok()?;
        }
        h.induced_subgraph(&keep).ok()?
    } else {
        let r = random_graph(k, 0.6, rng);
        r.relabel(|v| keep[match v { VertexId::Num(i) => *i as usize, _ => unreachable!() }].clone())
    };
    (0..t.n()).all(|i| t.degree_idx(i) > 0).then_some(t)
}

#[test]
fn bruteforce_success_iff_plan_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut yes, mut no, mut pairs) = (0, 0, 0);
    while pairs < 200 {
        let n = rng.gen_range(3..=7);
        let g = random_graph(n, rng.gen_range(0.3..0.7), &mut rng);
        let Some(t) = random_target(&g, &mut rng) else { continue };
        pairs += 1;
        match vertex_minor_bruteforce(&g, &t, &BruteOptions::default()).unwrap() {
            Some(plan) => {
                let r = verify_plan_report(&g, &t, &plan, 16).unwrap();
                assert!(r.ok, "{g:?} {t:?} {r:?}");
                yes += 1;
            }
            None => {
                // no measurement pattern alone reaches the target either
                let rest: Vec<VertexId> = g.vertices().iter().filter(|v| !t.contains(v)).cloned().collect();
                for code in 0..3usize.pow(rest.len() as u32) {
                    let moves: Vec<Move> = rest
                        .iter()
                        .enumerate()
                        .map(|(i, v)| match code / 3usize.pow(i as u32) % 3 {
                            0 => Move::MeasX { v: v.clone(), partner: None },
                            1 => Move::MeasY { v: v.clone() },
                            _ => Move::MeasZ { v: v.clone() },
                        })
                        .collect();
                    let plan = TransformationPlan::new(moves, &g, t.vertices().to_vec());
                    assert!(!verify_plan(&g, &t, &plan).unwrap());
                }
                no += 1;
            }
        }
    }
    assert!(yes > 50 && no > 20, "yes={yes} no={no}");
}

#[test]
fn small_target_plans_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..300 {
        let n = rng.gen_range(2..=12);
        let g = loop {
            let g = random_graph(n, rng.gen_range(0.15..0.6), &mut rng);
            if g.is_connected() {
                break g;
            }
        };
        let k = rng.gen_range(1..=n.min(3));
        let mut pick = g.vertices().to_vec();
        pick.shuffle(&mut rng);
        pick.truncate(k);
        let t = if k == 3 && rng.gen_bool(0.3) { LabeledGraph::complete(pick.clone()) } else { LabeledGraph::path(&pick) };
        let plan = small_vertex_minor(&g, &t).unwrap();
        assert!(verify_plan(&g, &t, &plan).unwrap(), "{g:?} {t:?} {plan:?}");
    }
}

#[test]
fn dh_star_plans_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut verified = 0;
    for _ in 0..200 {
        let n = rng.gen_range(3..=12);
        let (g, _) = random_dh(n, &mut rng, GrowthWeights::default());
        let mut t = g.vertices().to_vec();
        t.shuffle(&mut rng);
        t.truncate(rng.gen_range(2..=n.min(5)));
        t.sort();
        if let SolverOutcome::Plan { plan, center } = solve_star(&g, &t).unwrap().outcome {
            let star = LabeledGraph::star(center, t.iter().cloned());
            assert!(verify_plan(&g, &star, &plan).unwrap());
            verified += 1;
        }
    }
    assert!(verified > 50);
}

#[test]
fn dropping_a_move_breaks_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut caught = 0;
    for _ in 0..200 {
        let g = random_graph(7, 0.5, &mut rng);
        let Some(t) = random_target(&g, &mut rng) else { continue };
        let Some(plan) = vertex_minor_bruteforce(&g, &t, &BruteOptions::default()).unwrap() else { continue };
        let lcs: Vec<usize> = (0..plan.moves.len()).filter(|&i| !plan.moves[i].is_measurement()).collect();
        let Some(&i) = lcs.choose(&mut rng) else { continue };
        let mut bad = plan.clone();
        bad.moves.remove(i);
        // an LC that happened to be redundant leaves the result unchanged
        if bad.result_on_targets(&g).unwrap() != t {
            assert!(!verify_plan(&g, &t, &bad).unwrap());
            caught += 1;
        }
    }
    assert!(caught > 10, "caught={caught}");
}
