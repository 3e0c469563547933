//! Soundness of the proof system, checked on one model: every sampled
//! axiom instance must hold at every world of `M ⊗ U^k` for small `k`, and
//! the rules must carry valid premises to valid conclusions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::gen::random_formula;
use crate::ids::{AtomSet, PlayerId};
use crate::logic::{DelChecker, Formula};
use crate::rules::{EpistemicModel, ObservationModel, Signature};

const MAX_EXAMPLES: usize = 5;

pub const AXIOM_NAMES: [&str; 15] = [
    "TAUT", "DISTK", "DIST[a]", "T", "4", "5", "NM", "PR", "DET", "EXTURN", "INFO", "KE", "MP", "NECK", "GEN",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomConfig {
    pub seed: u64,
    /// Size of the random formula pool the schemas are instantiated with.
    pub samples: usize,
    pub formula_depth: usize,
    pub formula_size: usize,
    /// Instances are evaluated at every world of `M ⊗ U^k` for
    /// `k = 0..=levels`.
    pub levels: usize,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig {
            seed: 0,
            samples: 12,
            formula_depth: 2,
            formula_size: 6,
            levels: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomRow {
    pub name: &'static str,
    /// One per (instance, level, world).
    pub instances: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub rows: Vec<AxiomRow>,
}

impl AxiomReport {
    pub fn total_instances(&self) -> usize {
        self.rows.iter().map(|r| r.instances).sum()
    }

    pub fn total_violations(&self) -> usize {
        self.rows.iter().map(|r| r.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn row(&self, name: &str) -> Option<&AxiomRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// Adds another report's counts row by row.
    pub fn merge(&mut self, other: AxiomReport) {
        for (mine, theirs) in self.rows.iter_mut().zip(other.rows) {
            mine.instances += theirs.instances;
            mine.violations += theirs.violations;
            for e in theirs.examples {
                if mine.examples.len() < MAX_EXAMPLES {
                    mine.examples.push(e);
                }
            }
        }
    }

    pub fn empty() -> Self {
        AxiomReport {
            rows: AXIOM_NAMES
                .iter()
                .map(|&name| AxiomRow {
                    name,
                    instances: 0,
                    violations: 0,
                    examples: Vec::new(),
                })
                .collect(),
        }
    }

    /// `NAME\tpass|fail\tinstances\tviolations`, then any examples.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let verdict = if r.violations == 0 { "pass" } else { "fail" };
            writeln!(out, "{}\t{verdict}\t{}\t{}", r.name, r.instances, r.violations).unwrap();
        }
        for r in &self.rows {
            for e in &r.examples {
                writeln!(out, "{}: {e}", r.name).unwrap();
            }
        }
        out
    }
}

struct Instance {
    row: usize,
    formula: Formula,
}

fn row(name: &str) -> usize {
    AXIOM_NAMES.iter().position(|&n| n == name).unwrap()
}

/// The conjunction pinning down player `i`'s information exactly to `set`.
fn signature_formula(sig: &Signature, i: PlayerId, set: &AtomSet) -> Formula {
    Formula::conjunction(sig.atoms().map(|p| {
        let atom = Formula::atom(p, i);
        if set.contains(p) {
            atom
        } else {
            Formula::not(atom)
        }
    }))
}

fn axiom_instances(checker: &DelChecker, obs: &ObservationModel, pool: &[Formula]) -> Vec<Instance> {
    let m = checker.model();
    let sig = m.signature().clone();
    let mut out = Vec::new();
    let mut push = |name: &str, formula: Formula| out.push(Instance { row: row(name), formula });
    let pairs = || pool.iter().zip(pool.iter().cycle().skip(1));

    for (f, g) in pairs() {
        let (f, g) = (f.clone(), g.clone());
        push("TAUT", Formula::implies(f.clone(), f.clone()));
        push("TAUT", Formula::or(f.clone(), Formula::not(f.clone())));
        push("TAUT", Formula::implies(Formula::and(f.clone(), g.clone()), f.clone()));
        push("TAUT", Formula::implies(f.clone(), Formula::implies(g.clone(), f.clone())));
        push(
            "TAUT",
            Formula::implies(Formula::implies(Formula::implies(f.clone(), g.clone()), f.clone()), f.clone()),
        );
        push("TAUT", Formula::iff(Formula::not(Formula::not(f.clone())), f.clone()));
        for i in sig.players() {
            push(
                "DISTK",
                Formula::implies(
                    Formula::know(i, Formula::implies(f.clone(), g.clone())),
                    Formula::implies(Formula::know(i, f.clone()), Formula::know(i, g.clone())),
                ),
            );
        }
        for a in sig.actions() {
            push(
                "DIST[a]",
                Formula::implies(
                    Formula::boxed(a, Formula::implies(f.clone(), g.clone())),
                    Formula::implies(Formula::boxed(a, f.clone()), Formula::boxed(a, g.clone())),
                ),
            );
        }
    }

    // observation signatures realized one step ahead, per player
    let realized: Vec<BTreeSet<AtomSet>> = {
        let next = checker.level(1);
        sig.players()
            .map(|i| next.worlds().map(|w| next.valuation(w, i).clone()).collect())
            .collect()
    };

    for f in pool {
        for i in sig.players() {
            let k = |g: Formula| Formula::know(i, g);
            push("T", Formula::implies(k(f.clone()), f.clone()));
            push("4", Formula::implies(k(f.clone()), k(k(f.clone()))));
            push("5", Formula::implies(Formula::not(k(f.clone())), k(Formula::not(k(f.clone())))));
            for a in sig.actions() {
                let blurred: Vec<_> = obs.blurred_with(i, a).collect();
                for &b in &blurred {
                    for set in &realized[i.index()] {
                        let o = signature_formula(&sig, i, set);
                        push(
                            "NM",
                            Formula::implies(
                                Formula::hat_know(i, Formula::diamond(b, Formula::and(f.clone(), o.clone()))),
                                Formula::boxed(a, Formula::implies(o, Formula::hat_know(i, f.clone()))),
                            ),
                        );
                    }
                }
                push(
                    "PR",
                    Formula::implies(
                        Formula::diamond(a, Formula::hat_know(i, f.clone())),
                        Formula::disjunction(
                            blurred.iter().map(|&b| Formula::hat_know(i, Formula::diamond(b, f.clone()))),
                        ),
                    ),
                );
            }
        }
        for a in sig.actions() {
            push("DET", Formula::implies(Formula::diamond(a, f.clone()), Formula::boxed(a, f.clone())));
        }
    }

    for i in sig.players() {
        let others = sig
            .players()
            .filter(|&j| j != i)
            .map(|j| Formula::not(Formula::turn(&sig, j)));
        push("EXTURN", Formula::implies(Formula::turn(&sig, i), Formula::conjunction(others)));
        for &a in sig.actions_of(i) {
            push(
                "INFO",
                Formula::iff(Formula::diamond(a, Formula::Top), Formula::atom(sig.action_atom(a), i)),
            );
        }
        for p in sig.atoms() {
            let atom = Formula::atom(p, i);
            push(
                "KE",
                Formula::and(
                    Formula::implies(atom.clone(), Formula::know(i, atom.clone())),
                    Formula::implies(Formula::not(atom.clone()), Formula::know(i, Formula::not(atom))),
                ),
            );
        }
    }
    out
}

/// Instantiates every schema over a seeded formula pool and evaluates the
/// instances at every world of the first few update levels.
pub fn axiom_soundness_suite(
    model: &EpistemicModel,
    obs: &ObservationModel,
    config: &AxiomConfig,
) -> Result<AxiomReport> {
    let mut checker = DelChecker::new(model, obs)?;
    let sig = model.signature().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let pool: Vec<Formula> = (0..config.samples)
        .map(|_| random_formula(&mut rng, &sig, config.formula_depth, config.formula_size))
        .collect();
    // instances add one box to the pool depth; GEN adds one more level
    checker.prepare(config.levels + config.formula_depth + 2);
    let instances = axiom_instances(&checker, obs, &pool);

    let name = |w: usize, k: usize| checker.level(k).world_name(crate::ids::WorldId::new(w)).to_string();
    let results: Vec<(usize, usize, usize, Option<String>)> = instances
        .par_iter()
        .map(|inst| {
            let mut count = 0;
            let mut bad = 0;
            let mut example = None;
            for k in 0..=config.levels {
                let truth = checker.truth_at(&inst.formula, k);
                count += truth.len();
                if let Some(w) = truth.iter().position(|t| !t) {
                    bad += truth.iter().filter(|t| !**t).count();
                    example.get_or_insert_with(|| {
                        format!("{} fails at {} (level {k})", inst.formula.display(&sig), name(w, k))
                    });
                }
            }
            (inst.row, count, bad, example)
        })
        .collect();

    let mut report = AxiomReport::empty();
    for (r, count, bad, example) in results {
        let row = &mut report.rows[r];
        row.instances += count;
        row.violations += bad;
        if let Some(e) = example {
            if row.examples.len() < MAX_EXAMPLES {
                row.examples.push(e);
            }
        }
    }

    // Rules: premises come from the pool and the (valid) axiom instances.
    let mut premises: Vec<Formula> = pool.clone();
    premises.extend(instances.iter().step_by(7).take(40).map(|i| i.formula.clone()));
    let valid = |f: &Formula, k: usize| checker.truth_at(f, k).iter().all(|&t| t);
    let mut rule = |name: &str, premise_ok: bool, conclusion: &Formula, k: usize| {
        if !premise_ok {
            return;
        }
        let truth = checker.truth_at(conclusion, k);
        let row = &mut report.rows[row(name)];
        row.instances += truth.len();
        let bad = truth.iter().filter(|t| !**t).count();
        row.violations += bad;
        if bad > 0 && row.examples.len() < MAX_EXAMPLES {
            row.examples.push(format!("{} fails at level {k}", conclusion.display(&sig)));
        }
    };
    for k in 0..=config.levels {
        for f in &premises {
            let f_valid = valid(f, k);
            for i in sig.players() {
                rule("NECK", f_valid, &Formula::know(i, f.clone()), k);
            }
            if f.action_depth() + k < checker.prepared_depth() {
                let next_valid = valid(f, k + 1);
                for a in sig.actions() {
                    rule("GEN", next_valid, &Formula::boxed(a, f.clone()), k);
                }
            }
            for g in &pool {
                let imp = Formula::implies(f.clone(), g.clone());
                rule("MP", f_valid && valid(&imp, k), g, k);
            }
        }
    }
    Ok(report)
}
