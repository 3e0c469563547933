//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Thresholds and time limits are the constants below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gamerun::cli::run_command;
use gamerun::fixtures;
use gamerun::gen::{random_formula, random_game, random_instance, random_model, random_observation, InstanceConfig};
use gamerun::logic::{
    axiom_soundness_suite, check_invariance, etl_truth, induce_epistemic_part, is_g_bisimulation,
    largest_g_bisimulation, AxiomConfig, AxiomReport, DelChecker, Formula,
};
use gamerun::normality::check_normality;
use gamerun::rules::{EpistemicModel, ObservationModel};
use gamerun::structure::{
    check_isomorphism, check_non_informative, check_p_morphism, generate_game_tree, induce_epistemic_game,
    run_assign_map, tracking_map,
};
use gamerun::update::{generate_run, product};
use gamerun::WorldId;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 2024;
const FIGURE_LIMIT: Duration = Duration::from_secs(1);
const NORMALITY_LIMIT: Duration = Duration::from_secs(30);
const TWO_SEMANTICS_LIMIT: Duration = Duration::from_secs(60);
const AXIOM_LIMIT: Duration = Duration::from_secs(60);
const BISIM_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_INSTANCES: usize = 200;
const FORMULAS: usize = 500;
const FORMULA_DEPTH: usize = 3;
const FORMULA_SIZE: usize = 8;
const MIN_AXIOM_INSTANCES: usize = 10_000;
const PERFECT_GAMES: usize = 60;
const CERTAINTY_INSTANCES: usize = 120;
const MAX_DEPTH: usize = 4;
const MAXIMALITY_WORLDS: usize = 6;
const MAXIMALITY_PAIRS: usize = 16;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail = format!("{}; {:.2?} (limit {:?})", o.detail, took, limit);
    o.passed &= took < limit;
    o
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// The three fixtures plus seeded random instances.
fn corpus() -> Vec<(EpistemicModel, ObservationModel)> {
    let mut out = Vec::new();
    let a = fixtures::model_a();
    let ua = ObservationModel::identity(a.signature().clone());
    out.push((a, ua));
    let b = fixtures::model_b();
    let ub = fixtures::obs_blur_ab(b.signature(), "2");
    out.push((b, ub));
    let c = fixtures::model_c();
    let uc = ObservationModel::identity(c.signature().clone());
    out.push((c, uc));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cfg = InstanceConfig::default();
    for _ in 0..RANDOM_INSTANCES {
        let inst = random_instance(&mut rng, &cfg);
        out.push((inst.model, inst.observation));
    }
    out
}

fn formula_pool(sig: &gamerun::rules::Signature, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..FORMULAS)
        .map(|_| random_formula(&mut rng, sig, FORMULA_DEPTH, FORMULA_SIZE))
        .collect()
}

fn criterion_1() -> Outcome {
    timed(FIGURE_LIMIT, || {
        let out = run_command([
            "sig",
            "run",
            &data("fixture_a.g"),
            &data("fixture_a.m"),
            &data("identity.o"),
            "--depth",
            "2",
        ]);
        let expected = "worlds\t7\nlayers\t1 2 4\naction_edges\t6\nepistemic_edges\t0\n";
        outcome(
            out.code == 0 && out.stdout == expected,
            format!("exit {}, output {:?}", out.code, out.stdout),
        )
    })
}

fn criterion_2() -> Outcome {
    timed(FIGURE_LIMIT, || {
        let m = fixtures::model_b();
        let u = fixtures::obs_blur_ab(m.signature(), "2");
        let run = generate_run(&m, &u, 2).unwrap();
        let n = run.etl();
        let edges: Vec<_> = n
            .proper_epistemic_edges()
            .into_iter()
            .map(|(i, w, v)| (n.signature().player_name(i).to_string(), n.world_name(w).to_string(), n.world_name(v).to_string()))
            .collect();
        let deeper = generate_run(&m, &u, 3).unwrap();
        let game = m.game();
        let check = |name: &str, state: &str| {
            let w = deeper.etl().require_world(name).unwrap();
            game.state_name(deeper.assign(w)) == state && deeper.etl().transitions_from(w).len() == 2
        };
        let ok = run.world_count() == 7
            && edges == vec![("2".to_string(), "wa".to_string(), "wb".to_string())]
            && check("wac", "t")
            && check("wbd", "t'");
        outcome(ok, format!("{} worlds, edges {edges:?}", run.world_count()))
    })
}

fn criterion_3() -> Outcome {
    timed(FIGURE_LIMIT, || {
        let m = fixtures::model_c();
        let run = generate_run(&m, &ObservationModel::identity(m.signature().clone()), 1).unwrap();
        let n = run.etl();
        let layer: BTreeSet<String> = run.layer(1).map(|w| n.world_name(w).to_string()).collect();
        let sig = n.signature();
        let edges: Vec<_> = sig
            .players()
            .flat_map(|i| run.layer_relation(1, i).into_iter().map(move |(w, v)| (i, w, v)))
            .filter(|(_, w, v)| w < v)
            .map(|(i, w, v)| format!("{} ~{} {}", n.world_name(w), sig.player_name(i), n.world_name(v)))
            .collect();
        let names: BTreeSet<String> = ["wa", "ua", "vb"].iter().map(|s| s.to_string()).collect();
        let ok = layer == names && edges.len() == 1 && (edges[0] == "wa ~1 ua" || edges[0] == "ua ~1 wa");
        outcome(ok, format!("layer 1 {layer:?}, edges {edges:?}"))
    })
}

fn criterion_4(corpus: &[(EpistemicModel, ObservationModel)]) -> Outcome {
    timed(NORMALITY_LIMIT, || {
        let failures: Vec<String> = corpus
            .par_iter()
            .enumerate()
            .filter_map(|(k, (m, u))| {
                let depth = if k < 3 { 2 } else { k % (MAX_DEPTH + 1) };
                let run = generate_run(m, u, depth).unwrap();
                let report = check_normality(run.etl(), u, Some(&run.frontier())).unwrap();
                (!report.passed()).then(|| format!("instance {k}: {}", report.to_kv().replace('\n', " ")))
            })
            .collect();
        outcome(
            failures.is_empty(),
            format!("{} runs, {} with violations {:?}", corpus.len(), failures.len(), failures.first()),
        )
    })
}

fn criterion_5(corpus: &[(EpistemicModel, ObservationModel)]) -> Outcome {
    timed(TWO_SEMANTICS_LIMIT, || {
        let results: Vec<(usize, usize)> = corpus
            .par_iter()
            .enumerate()
            .map(|(k, (m, u))| {
                let pool = formula_pool(m.signature(), SEED + k as u64);
                let mut del = DelChecker::new(m, u).unwrap();
                del.prepare(FORMULA_DEPTH);
                let runs: Vec<_> = (0..=FORMULA_DEPTH).map(|d| generate_run(m, u, d).unwrap()).collect();
                let mut checked = 0;
                let mut bad = 0;
                for f in &pool {
                    let left = del.truth_at(f, 0);
                    let right = etl_truth(runs[f.action_depth()].etl(), f).unwrap();
                    for w in m.worlds() {
                        checked += 1;
                        bad += (left[w.index()] != right[w.index()]) as usize;
                    }
                }
                (checked, bad)
            })
            .collect();
        let checked: usize = results.iter().map(|r| r.0).sum();
        let bad: usize = results.iter().map(|r| r.1).sum();
        outcome(bad == 0, format!("{checked} (instance, world, formula) triples, {bad} disagreements"))
    })
}

fn criterion_6(corpus: &[(EpistemicModel, ObservationModel)]) -> Outcome {
    timed(TWO_SEMANTICS_LIMIT, || {
        let results: Vec<(usize, usize, usize)> = corpus
            .par_iter()
            .enumerate()
            .map(|(k, (m, u))| {
                let run = generate_run(m, u, 2).unwrap();
                let n = run.frontier_trimmed();
                let Ok(part) = induce_epistemic_part(&n, u) else {
                    return (0, 0, 1);
                };
                let pool = formula_pool(m.signature(), SEED + k as u64);
                let mut del = DelChecker::new(&part, u).unwrap();
                del.prepare(FORMULA_DEPTH);
                let mut checked = 0;
                let mut bad = 0;
                for f in &pool {
                    let left = etl_truth(&n, f).unwrap();
                    let right = del.truth_at(f, 0);
                    checked += left.len();
                    bad += left.iter().zip(&right).filter(|(x, y)| x != y).count();
                }
                (checked, bad, 0)
            })
            .collect();
        let checked: usize = results.iter().map(|r| r.0).sum();
        let bad: usize = results.iter().map(|r| r.1).sum();
        let rejected: usize = results.iter().map(|r| r.2).sum();
        outcome(
            bad == 0 && rejected == 0,
            format!("{checked} (world, formula) pairs, {bad} disagreements, {rejected} models not normal"),
        )
    })
}

fn criterion_7(corpus: &[(EpistemicModel, ObservationModel)]) -> Outcome {
    timed(AXIOM_LIMIT, || {
        let reports: Vec<AxiomReport> = corpus
            .par_iter()
            .enumerate()
            .map(|(k, (m, u))| {
                let config = AxiomConfig {
                    seed: SEED + k as u64,
                    samples: 6,
                    ..Default::default()
                };
                axiom_soundness_suite(m, u, &config).unwrap()
            })
            .collect();
        let mut total = AxiomReport::empty();
        for r in reports {
            total.merge(r);
        }
        let n = total.total_instances();
        let bad = total.total_violations();
        let empty: Vec<_> = total.rows.iter().filter(|r| r.instances == 0).map(|r| r.name).collect();
        outcome(
            n >= MIN_AXIOM_INSTANCES && bad == 0 && empty.is_empty(),
            format!("{n} instances (need {MIN_AXIOM_INSTANCES}), {bad} violations, unexercised {empty:?}"),
        )
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let cfg = InstanceConfig::default();
    let mut failures = 0;
    let mut checked = 0;
    for k in 0..PERFECT_GAMES {
        let game = Arc::new(random_game(&mut rng, &cfg, true));
        let m = random_model(&mut rng, &game, cfg.max_worlds);
        let u = random_observation(&mut rng, game.signature());
        let e = induce_epistemic_game(&game);
        if !e.is_perfect_information() {
            failures += 1;
            continue;
        }
        let run = generate_run(&m, &u, 1 + k % MAX_DEPTH).unwrap();
        let report = check_p_morphism(&run_assign_map(&run), run.etl(), e.etl(), Some(&run.frontier())).unwrap();
        checked += 1;
        failures += (!report.passed()) as usize;
    }
    outcome(failures == 0 && checked >= 50, format!("{checked} perfect-information runs, {failures} failures"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let cfg = InstanceConfig {
        certainty: true,
        ..Default::default()
    };
    let mut mismatches = 0;
    let mut verdicts = [0usize; 2];
    for k in 0..CERTAINTY_INSTANCES {
        let inst = random_instance(&mut rng, &cfg);
        let depth = k % (MAX_DEPTH + 1);
        let run = generate_run(&inst.model, &inst.observation, depth).unwrap();
        let tree = generate_game_tree(&inst.game, inst.model.assign(WorldId(0)), depth).unwrap();
        let g = tracking_map(&run, &tree);
        let ni = check_non_informative(&inst.observation, &run).non_informative();
        let iso = check_isomorphism(&g, &run, &tree).unwrap().isomorphic();
        mismatches += (ni != iso) as usize;
        verdicts[ni as usize] += 1;
    }
    outcome(
        mismatches == 0,
        format!(
            "{CERTAINTY_INSTANCES} certainty instances ({} non-informative, {} informative), {mismatches} mismatches",
            verdicts[1], verdicts[0]
        ),
    )
}

fn criterion_10(corpus: &[(EpistemicModel, ObservationModel)]) -> Outcome {
    timed(BISIM_LIMIT, || {
        let results: Vec<[usize; 6]> = corpus
            .par_iter()
            .enumerate()
            .map(|(k, (m, u))| {
                // [lemma pairs, lemma misses, unsound pairs, invariance failures, maximality checks, non-maximal]
                let mut r = [0usize; 6];
                let n = generate_run(m, u, 2).unwrap().frontier_trimmed();
                let part = induce_epistemic_part(&n, u).unwrap();
                let prod = product(&part, u).unwrap();
                if prod.is_empty() {
                    return r;
                }
                let left = prod.model();
                let z = largest_g_bisimulation(left, &part).unwrap();
                for (s, a, t) in n.transitions() {
                    r[0] += 1;
                    let x = prod.world_for(s, a).unwrap();
                    r[1] += (!z.contains(x, t)) as usize;
                }
                r[2] += z.verify(left, &part).len();
                let pool: Vec<Formula> = formula_pool(m.signature(), SEED + k as u64).into_iter().take(60).collect();
                for &(x, y) in z.pairs() {
                    let report = check_invariance(left, x, &part, y, u, &pool).unwrap();
                    r[3] += report.disagreements.len();
                }
                if left.world_count() <= MAXIMALITY_WORLDS && part.world_count() <= MAXIMALITY_WORLDS {
                    let rest: Vec<(WorldId, WorldId)> = left
                        .worlds()
                        .flat_map(|w| part.worlds().map(move |v| (w, v)))
                        .filter(|&(w, v)| left.assign(w) == part.assign(v) && !z.contains(w, v))
                        .collect();
                    if rest.len() <= MAXIMALITY_PAIRS {
                        r[4] += 1;
                        for mask in 1u32..(1 << rest.len()) {
                            let mut bigger = z.pairs().clone();
                            bigger.extend(rest.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, p)| *p));
                            if is_g_bisimulation(left, &part, &bigger) {
                                r[5] += 1;
                                break;
                            }
                        }
                    }
                }
                r
            })
            .collect();
        let mut t = [0usize; 6];
        for r in results {
            for (a, b) in t.iter_mut().zip(r) {
                *a += b;
            }
        }
        outcome(
            t[1] == 0 && t[2] == 0 && t[3] == 0 && t[5] == 0 && t[4] > 0,
            format!(
                "{} successor pairs ({} missing), {} unsound pairs, {} invariance failures, maximality brute-forced on {} instances ({} not maximal)",
                t[0], t[1], t[2], t[3], t[4], t[5]
            ),
        )
    })
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("Fixture A run figure", Box::new(criterion_1)),
        ("Fixture B run figure", Box::new(criterion_2)),
        ("Fixture C run figure", Box::new(criterion_3)),
        ("generated runs are normal", Box::new(|| criterion_4(&corpus))),
        ("update semantics equals run semantics", Box::new(|| criterion_5(&corpus))),
        ("normal models: both semantics agree", Box::new(|| criterion_6(&corpus))),
        ("SIG soundness", Box::new(|| criterion_7(&corpus))),
        ("perfect information gives a p-morphism", Box::new(criterion_8)),
        ("non-informative iff isomorphic", Box::new(criterion_9)),
        ("G-bisimulation and invariance", Box::new(|| criterion_10(&corpus))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name} ({})", k + 1, o.detail);
        failed += (!o.passed) as usize;
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
