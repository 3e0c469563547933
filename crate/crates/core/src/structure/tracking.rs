//! The tracking map from a run model into a game tree, the non-informative
//! condition on observation models, and the isomorphism check that the two
//! are equivalent on certainty models.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ids::{ActionId, PlayerId, WorldId};
use crate::normality::MAX_WITNESSES;
use crate::rules::ObservationModel;
use crate::structure::EpistemicGameTree;
use crate::update::RunModel;

/// `g(w, a_1 ... a_n) = (f(w), a_1 ... a_n)` on the run worlds whose root
/// sits at the tree root, `None` elsewhere or beyond the tree depth.
pub fn tracking_map(run: &RunModel, tree: &EpistemicGameTree) -> Vec<Option<WorldId>> {
    run.worlds()
        .iter()
        .map(|rw| {
            if run.initial().assign(rw.root) == tree.root() {
                tree.node(&rw.history)
            } else {
                None
            }
        })
        .collect()
}

/// `w -a-> s`, `u -b-> t` with `w ~_i u`, `a` and `b` distinguishable for
/// `i`, yet `V(s, i) = V(t, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonInformativeWitness {
    pub player: PlayerId,
    pub w: WorldId,
    pub a: ActionId,
    pub s: WorldId,
    pub u: WorldId,
    pub b: ActionId,
    pub t: WorldId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonInformativeReport {
    /// The verdict covers transitions out of layers below this depth.
    pub depth: usize,
    pub total: usize,
    pub witnesses: Vec<NonInformativeWitness>,
}

impl NonInformativeReport {
    pub fn non_informative(&self) -> bool {
        self.total == 0
    }

    pub fn render(&self, run: &RunModel) -> String {
        let sig = run.game().signature();
        let name = |w: WorldId| run.world_name(w);
        let mut out = String::new();
        for x in &self.witnesses {
            writeln!(
                out,
                "{} ~{} {}, {} -{}-> {} and {} -{}-> {}: player {} can tell {} from {} but the successors look alike",
                name(x.w),
                sig.player_name(x.player),
                name(x.u),
                name(x.w),
                sig.action_name(x.a),
                name(x.s),
                name(x.u),
                sig.action_name(x.b),
                name(x.t),
                sig.player_name(x.player),
                sig.action_name(x.a),
                sig.action_name(x.b),
            )
            .unwrap();
        }
        if self.total > self.witnesses.len() {
            writeln!(out, "... {} more", self.total - self.witnesses.len()).unwrap();
        }
        out
    }
}

/// Whether `obs` is non-informative on `run`, up to the run depth. Each
/// unordered pair of transitions is counted once.
pub fn check_non_informative(obs: &ObservationModel, run: &RunModel) -> NonInformativeReport {
    let n = run.etl();
    let sig = run.game().signature();
    let mut total = 0;
    let mut witnesses = Vec::new();
    for k in 0..run.depth() {
        for i in sig.players() {
            for (w, u) in run.layer_relation(k, i) {
                if w > u {
                    continue;
                }
                for &(a, s) in n.transitions_from(w) {
                    for &(b, t) in n.transitions_from(u) {
                        if w == u && a >= b {
                            continue;
                        }
                        if !obs.blurred(i, a, b) && n.valuation(s, i) == n.valuation(t, i) {
                            total += 1;
                            if witnesses.len() < MAX_WITNESSES {
                                witnesses.push(NonInformativeWitness { player: i, w, a, s, u, b, t });
                            }
                        }
                    }
                }
            }
        }
    }
    NonInformativeReport {
        depth: run.depth(),
        total,
        witnesses,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsomorphismDefect {
    /// No image for a run world within the common depth.
    Undefined(WorldId),
    /// Two run worlds share an image.
    NotInjective { first: WorldId, second: WorldId },
    /// A tree node within the common depth has no preimage.
    NotSurjective(WorldId),
    /// `w -a-> v` in the run but not between the images.
    TransitionForth { world: WorldId, action: ActionId, other: WorldId },
    /// The image of `w` has an `a`-child that is not the image of an
    /// `a`-child of `w`.
    TransitionBack { world: WorldId, action: ActionId, node: WorldId },
    /// `~_i` and `⌢_i` disagree on a pair; `run_related` says which side
    /// holds.
    Epistemic { player: PlayerId, world: WorldId, other: WorldId, run_related: bool },
    Valuation { world: WorldId, player: PlayerId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub depth: usize,
    pub total: usize,
    pub defects: Vec<IsomorphismDefect>,
    /// The first layer where something fails.
    pub first_failing_layer: Option<usize>,
}

impl IsomorphismReport {
    pub fn isomorphic(&self) -> bool {
        self.total == 0
    }

    pub fn render(&self, run: &RunModel, tree: &EpistemicGameTree) -> String {
        let sig = run.game().signature();
        let r = |w: WorldId| run.world_name(w).to_string();
        let t = |x: WorldId| tree.etl().world_name(x).to_string();
        let mut out = String::new();
        for d in &self.defects {
            let line = match *d {
                IsomorphismDefect::Undefined(w) => format!("{} has no image", r(w)),
                IsomorphismDefect::NotInjective { first, second } => {
                    format!("{} and {} have the same image", r(first), r(second))
                }
                IsomorphismDefect::NotSurjective(x) => format!("tree node {} has no preimage", t(x)),
                IsomorphismDefect::TransitionForth { world, action, other } => format!(
                    "{} -{}-> {} is missing in the tree",
                    r(world),
                    sig.action_name(action),
                    r(other)
                ),
                IsomorphismDefect::TransitionBack { world, action, node } => format!(
                    "tree edge to {} by {} has no run counterpart at {}",
                    t(node),
                    sig.action_name(action),
                    r(world)
                ),
                IsomorphismDefect::Epistemic { player, world, other, run_related } => {
                    let p = sig.player_name(player);
                    if run_related {
                        format!("{} ~{p} {} in the run but not in the tree", r(world), r(other))
                    } else {
                        format!("{} and {} are related by player {p} in the tree only", r(world), r(other))
                    }
                }
                IsomorphismDefect::Valuation { world, player } => {
                    format!("valuation of {} for player {} differs", r(world), sig.player_name(player))
                }
            };
            writeln!(out, "{line}").unwrap();
        }
        if self.total > self.defects.len() {
            writeln!(out, "... {} more", self.total - self.defects.len()).unwrap();
        }
        out
    }
}

/// Checks that `g` is an isomorphism between the run and the tree on all
/// layers up to the smaller of the two depths. The run must start from a
/// certainty model.
pub fn check_isomorphism(
    g: &[Option<WorldId>],
    run: &RunModel,
    tree: &EpistemicGameTree,
) -> Result<IsomorphismReport> {
    let initial = run.initial().world_count();
    if initial != 1 {
        return Err(Error::NotCertainty(initial));
    }
    if g.len() != run.world_count() {
        return Err(Error::Shape(format!(
            "map covers {} worlds but the run has {}",
            g.len(),
            run.world_count()
        )));
    }
    if let Some(bad) = g.iter().flatten().find(|x| x.index() >= tree.node_count()) {
        return Err(Error::unknown("tree node", bad.to_string()));
    }
    let depth = run.depth().min(tree.depth());
    let (n, t) = (run.etl(), tree.etl());
    let sig = run.game().signature();

    let mut total = 0;
    let mut first: Option<usize> = None;
    let mut defects = Vec::new();
    let mut report = |layer: usize, d: IsomorphismDefect| {
        total += 1;
        first = Some(first.map_or(layer, |f| f.min(layer)));
        if defects.len() < MAX_WITNESSES {
            defects.push(d);
        }
    };

    for k in 0..=depth {
        let mut preimage = vec![None; tree.node_count()];
        for w in run.layer(k) {
            let Some(x) = g[w.index()] else {
                report(k, IsomorphismDefect::Undefined(w));
                continue;
            };
            match preimage[x.index()] {
                Some(first) => report(k, IsomorphismDefect::NotInjective { first, second: w }),
                None => preimage[x.index()] = Some(w),
            }
            if tree.layer_of(x) != k {
                report(k, IsomorphismDefect::NotSurjective(x));
            }
            for i in sig.players() {
                if n.valuation(w, i) != t.valuation(x, i) {
                    report(k, IsomorphismDefect::Valuation { world: w, player: i });
                }
            }
        }
        for x in tree.layer(k) {
            if preimage[x.index()].is_none() {
                report(k, IsomorphismDefect::NotSurjective(x));
            }
        }
        for i in sig.players() {
            let layer: Vec<WorldId> = run.layer(k).collect();
            for (p, &w) in layer.iter().enumerate() {
                for &v in &layer[p + 1..] {
                    let (Some(x), Some(y)) = (g[w.index()], g[v.index()]) else {
                        continue;
                    };
                    let run_related = n.related(i, w, v);
                    if run_related != t.related(i, x, y) {
                        report(k, IsomorphismDefect::Epistemic { player: i, world: w, other: v, run_related });
                    }
                }
            }
        }
        if k == depth {
            continue;
        }
        for w in run.layer(k) {
            let Some(x) = g[w.index()] else { continue };
            for &(a, v) in n.transitions_from(w) {
                if !g[v.index()].is_some_and(|y| t.successors(x, a).any(|z| z == y)) {
                    report(k + 1, IsomorphismDefect::TransitionForth { world: w, action: a, other: v });
                }
            }
            for &(a, y) in t.transitions_from(x) {
                if !n.successors(w, a).any(|v| g[v.index()] == Some(y)) {
                    report(k + 1, IsomorphismDefect::TransitionBack { world: w, action: a, node: y });
                }
            }
        }
    }
    Ok(IsomorphismReport {
        depth,
        total,
        defects,
        first_failing_layer: first,
    })
}
