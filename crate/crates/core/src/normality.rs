//! Normality of epistemic temporal models with respect to an observation
//! model, with witnesses for every violation.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::ids::{ActionId, PlayerId, WorldId};
use crate::relation::EquivalenceDefect;
use crate::rules::ObservationModel;

/// Witness lists are truncated to this length; totals are kept.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// The epistemic relations are equivalences.
    Equiv,
    Nm,
    Pr,
    Det,
    Exturn,
    Info,
    Ke,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::Equiv,
        Condition::Nm,
        Condition::Pr,
        Condition::Det,
        Condition::Exturn,
        Condition::Info,
        Condition::Ke,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Equiv => "EQUIV",
            Condition::Nm => "NM",
            Condition::Pr => "PR",
            Condition::Det => "DET",
            Condition::Exturn => "EXTURN",
            Condition::Info => "INFO",
            Condition::Ke => "KE",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A tuple falsifying one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Equiv {
        player: PlayerId,
        defect: EquivalenceDefect,
    },
    /// `s ~ s'`, `s' -a-> t'`, `s -b-> t`, `b ↭ a`, equal valuations, yet
    /// not `t ~ t'`.
    Nm {
        player: PlayerId,
        s: WorldId,
        s2: WorldId,
        a: ActionId,
        t2: WorldId,
        b: ActionId,
        t: WorldId,
    },
    /// `s -a-> t`, `t ~ t'`, and no `s ~ s'`, `s' -b-> t'` with `a ↭ b`.
    Pr {
        player: PlayerId,
        s: WorldId,
        a: ActionId,
        t: WorldId,
        t2: WorldId,
    },
    Det {
        s: WorldId,
        a: ActionId,
        t: WorldId,
        t2: WorldId,
    },
    /// `a` and `b` are both enabled at `s` but owned by different players.
    Exturn {
        s: WorldId,
        a: ActionId,
        b: ActionId,
    },
    /// `act_a ∈ V(s, i)` disagrees with the existence of an `a`-successor.
    Info {
        player: PlayerId,
        s: WorldId,
        a: ActionId,
        has_atom: bool,
    },
    Ke {
        player: PlayerId,
        s: WorldId,
        t: WorldId,
    },
}

impl Witness {
    pub fn condition(&self) -> Condition {
        match self {
            Witness::Equiv { .. } => Condition::Equiv,
            Witness::Nm { .. } => Condition::Nm,
            Witness::Pr { .. } => Condition::Pr,
            Witness::Det { .. } => Condition::Det,
            Witness::Exturn { .. } => Condition::Exturn,
            Witness::Info { .. } => Condition::Info,
            Witness::Ke { .. } => Condition::Ke,
        }
    }

    /// Re-checks, from the model alone, that this tuple falsifies its
    /// condition.
    pub fn falsifies(&self, n: &EtlModel, obs: &ObservationModel, frontier: &BTreeSet<WorldId>) -> bool {
        let has = |w: WorldId, a: ActionId, v: WorldId| n.transitions_from(w).contains(&(a, v));
        let sig = n.signature();
        match *self {
            Witness::Equiv { player, ref defect } => {
                let r = n.epistemic(player);
                match *defect {
                    EquivalenceDefect::NotReflexive(x) => !r.contains(x, x),
                    EquivalenceDefect::NotSymmetric(x, y) => r.contains(x, y) && !r.contains(y, x),
                    EquivalenceDefect::NotTransitive(x, y, z) => {
                        r.contains(x, y) && r.contains(y, z) && !r.contains(x, z)
                    }
                }
            }
            Witness::Nm {
                player: i,
                s,
                s2,
                a,
                t2,
                b,
                t,
            } => {
                n.related(i, s, s2)
                    && has(s2, a, t2)
                    && has(s, b, t)
                    && obs.blurred(i, b, a)
                    && n.valuation(t, i) == n.valuation(t2, i)
                    && !n.related(i, t, t2)
            }
            Witness::Pr {
                player: i,
                s,
                a,
                t,
                t2,
            } => {
                has(s, a, t)
                    && n.related(i, t, t2)
                    && !n.worlds().any(|s2| {
                        n.related(i, s, s2)
                            && n.transitions_from(s2)
                                .iter()
                                .any(|&(b, v)| v == t2 && obs.blurred(i, a, b))
                    })
            }
            Witness::Det { s, a, t, t2 } => t != t2 && has(s, a, t) && has(s, a, t2),
            Witness::Exturn { s, a, b } => {
                sig.owner(a) != sig.owner(b) && n.successors(s, a).next().is_some() && n.successors(s, b).next().is_some()
            }
            Witness::Info {
                player,
                s,
                a,
                has_atom,
            } => {
                !frontier.contains(&s)
                    && sig.owner(a) == player
                    && n.valuation(s, player).contains(sig.action_atom(a)) == has_atom
                    && n.successors(s, a).next().is_some() != has_atom
            }
            Witness::Ke { player, s, t } => {
                n.related(player, s, t) && n.valuation(s, player) != n.valuation(t, player)
            }
        }
    }

    pub fn describe(&self, n: &EtlModel) -> String {
        let sig = n.signature();
        let w = |x: WorldId| n.world_name(x);
        let p = |i: PlayerId| sig.player_name(i);
        let act = |a: ActionId| sig.action_name(a);
        let name = |x: usize| n.world_name(WorldId::new(x));
        match *self {
            Witness::Equiv { player, ref defect } => match *defect {
                EquivalenceDefect::NotReflexive(x) => format!("player {}: {} not related to itself", p(player), name(x)),
                EquivalenceDefect::NotSymmetric(x, y) => {
                    format!("player {}: {} ~ {} but not back", p(player), name(x), name(y))
                }
                EquivalenceDefect::NotTransitive(x, y, z) => format!(
                    "player {}: {} ~ {} ~ {} but not {} ~ {}",
                    p(player),
                    name(x),
                    name(y),
                    name(z),
                    name(x),
                    name(z)
                ),
            },
            Witness::Nm {
                player,
                s,
                s2,
                a,
                t2,
                b,
                t,
            } => format!(
                "player {}: {} ~ {}, {} -{}-> {}, {} -{}-> {}, equal information, but {} !~ {}",
                p(player),
                w(s),
                w(s2),
                w(s2),
                act(a),
                w(t2),
                w(s),
                act(b),
                w(t),
                w(t),
                w(t2)
            ),
            Witness::Pr {
                player,
                s,
                a,
                t,
                t2,
            } => format!(
                "player {}: {} -{}-> {} and {} ~ {}, but {} has no blurred predecessor related to {}",
                p(player),
                w(s),
                act(a),
                w(t),
                w(t),
                w(t2),
                w(t2),
                w(s)
            ),
            Witness::Det { s, a, t, t2 } => {
                format!("{} -{}-> {} and {} -{}-> {}", w(s), act(a), w(t), w(s), act(a), w(t2))
            }
            Witness::Exturn { s, a, b } => format!(
                "{} enables {} (player {}) and {} (player {})",
                w(s),
                act(a),
                p(sig.owner(a)),
                act(b),
                p(sig.owner(b))
            ),
            Witness::Info {
                player,
                s,
                a,
                has_atom,
            } => {
                if has_atom {
                    format!("player {}: act_{} at {} but no {}-successor", p(player), act(a), w(s), act(a))
                } else {
                    format!("player {}: {} has an {}-successor but lacks act_{}", p(player), w(s), act(a), act(a))
                }
            }
            Witness::Ke { player, s, t } => {
                format!("player {}: {} ~ {} with different information", p(player), w(s), w(t))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    /// Number of violations found, including those not kept as witnesses.
    pub total: usize,
    pub witnesses: Vec<Witness>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.total == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub conditions: Vec<ConditionReport>,
    pub frontier: BTreeSet<WorldId>,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(ConditionReport::passed)
    }

    pub fn condition(&self, c: Condition) -> &ConditionReport {
        self.conditions
            .iter()
            .find(|r| r.condition == c)
            .expect("every condition is reported")
    }

    pub fn violation_count(&self) -> usize {
        self.conditions.iter().map(|c| c.total).sum()
    }

    /// One `CONDITION\tVERDICT\tWITNESSES` line per condition.
    pub fn to_kv(&self) -> String {
        self.conditions
            .iter()
            .map(|c| {
                format!(
                    "{}\t{}\t{}\n",
                    c.condition,
                    if c.passed() { "pass" } else { "fail" },
                    c.total
                )
            })
            .collect()
    }

    pub fn render(&self, n: &EtlModel) -> String {
        let mut out = String::new();
        for c in &self.conditions {
            if c.passed() {
                out.push_str(&format!("{:<7}pass\n", c.condition.name()));
                continue;
            }
            out.push_str(&format!("{:<7}FAIL ({} violation(s))\n", c.condition.name(), c.total));
            for w in &c.witnesses {
                out.push_str("  ");
                out.push_str(&w.describe(n));
                out.push('\n');
            }
            if c.total > c.witnesses.len() {
                out.push_str(&format!("  ... {} more\n", c.total - c.witnesses.len()));
            }
        }
        out
    }
}

struct Collector {
    total: usize,
    witnesses: Vec<Witness>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            total: 0,
            witnesses: Vec::new(),
        }
    }

    fn push(&mut self, w: Witness) {
        self.total += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }
}

/// Checks every normality condition by exhaustive enumeration. Worlds in
/// `frontier` are exempt from Info only.
pub fn check_normality(
    n: &EtlModel,
    obs: &ObservationModel,
    frontier: Option<&BTreeSet<WorldId>>,
) -> Result<NormalityReport> {
    if **n.signature() != **obs.signature() {
        return Err(Error::SignatureMismatch("model and observation model differ"));
    }
    let frontier = frontier.cloned().unwrap_or_default();
    let conditions = Condition::ALL
        .par_iter()
        .map(|&c| {
            let mut out = Collector::new();
            match c {
                Condition::Equiv => check_equiv(n, &mut out),
                Condition::Nm => check_nm(n, obs, &mut out),
                Condition::Pr => check_pr(n, obs, &mut out),
                Condition::Det => check_det(n, &mut out),
                Condition::Exturn => check_exturn(n, &mut out),
                Condition::Info => check_info(n, &frontier, &mut out),
                Condition::Ke => check_ke(n, &mut out),
            }
            ConditionReport {
                condition: c,
                total: out.total,
                witnesses: out.witnesses,
            }
        })
        .collect();
    Ok(NormalityReport { conditions, frontier })
}

fn check_equiv(n: &EtlModel, out: &mut Collector) {
    for i in n.signature().players() {
        for defect in n.epistemic(i).equivalence_defects() {
            out.push(Witness::Equiv { player: i, defect });
        }
    }
}

fn check_nm(n: &EtlModel, obs: &ObservationModel, out: &mut Collector) {
    for i in n.signature().players() {
        for s in n.worlds() {
            for s2 in n.epistemic_successors(i, s) {
                for &(a, t2) in n.transitions_from(s2) {
                    for &(b, t) in n.transitions_from(s) {
                        if obs.blurred(i, b, a)
                            && n.valuation(t, i) == n.valuation(t2, i)
                            && !n.related(i, t, t2)
                        {
                            out.push(Witness::Nm {
                                player: i,
                                s,
                                s2,
                                a,
                                t2,
                                b,
                                t,
                            });
                        }
                    }
                }
            }
        }
    }
}

fn check_pr(n: &EtlModel, obs: &ObservationModel, out: &mut Collector) {
    let mut preds: Vec<Vec<(WorldId, ActionId)>> = vec![Vec::new(); n.world_count()];
    for (w, a, v) in n.transitions() {
        preds[v.index()].push((w, a));
    }
    for i in n.signature().players() {
        for (s, a, t) in n.transitions() {
            for t2 in n.epistemic_successors(i, t) {
                let recalled = preds[t2.index()]
                    .iter()
                    .any(|&(s2, b)| n.related(i, s, s2) && obs.blurred(i, a, b));
                if !recalled {
                    out.push(Witness::Pr {
                        player: i,
                        s,
                        a,
                        t,
                        t2,
                    });
                }
            }
        }
    }
}

fn check_det(n: &EtlModel, out: &mut Collector) {
    for s in n.worlds() {
        let edges = n.transitions_from(s);
        for (k, &(a, t)) in edges.iter().enumerate() {
            for &(b, t2) in &edges[k + 1..] {
                if a == b {
                    out.push(Witness::Det { s, a, t, t2 });
                }
            }
        }
    }
}

fn check_exturn(n: &EtlModel, out: &mut Collector) {
    let sig = n.signature();
    for s in n.worlds() {
        let act: Vec<ActionId> = n.act(s).into_iter().collect();
        if let Some(&first) = act.first() {
            for &b in &act[1..] {
                if sig.owner(b) != sig.owner(first) {
                    out.push(Witness::Exturn { s, a: first, b });
                }
            }
        }
    }
}

fn check_info(n: &EtlModel, frontier: &BTreeSet<WorldId>, out: &mut Collector) {
    let sig = n.signature();
    for s in n.worlds().filter(|s| !frontier.contains(s)) {
        for i in sig.players() {
            for &a in sig.actions_of(i) {
                let has_atom = n.valuation(s, i).contains(sig.action_atom(a));
                if has_atom != n.successors(s, a).next().is_some() {
                    out.push(Witness::Info {
                        player: i,
                        s,
                        a,
                        has_atom,
                    });
                }
            }
        }
    }
}

fn check_ke(n: &EtlModel, out: &mut Collector) {
    for i in n.signature().players() {
        for (s, t) in n.epistemic(i).pairs() {
            let (s, t) = (WorldId::new(s), WorldId::new(t));
            if n.valuation(s, i) != n.valuation(t, i) {
                out.push(Witness::Ke { player: i, s, t });
            }
        }
    }
}
