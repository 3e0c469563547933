use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::ids::{ActionId, PlayerId, WorldId};
use crate::normality::MAX_WITNESSES;
use crate::update::RunModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PMorphismDefect {
    /// `V(w, i) != V'(h(w), i)`.
    Valuation { world: WorldId, player: PlayerId },
    /// `w ~_i v` but not `h(w) ~_i h(v)`.
    EpistemicForth { player: PlayerId, world: WorldId, other: WorldId },
    /// `h(w) ~_i target` has no `v` with `w ~_i v` and `h(v) = target`.
    EpistemicBack { player: PlayerId, world: WorldId, target: WorldId },
    /// `w -a-> v` but not `h(w) -a-> h(v)`.
    TransitionForth { world: WorldId, action: ActionId, other: WorldId },
    /// `h(w) -a-> target` has no `v` with `w -a-> v` and `h(v) = target`.
    TransitionBack { world: WorldId, action: ActionId, target: WorldId },
}

impl PMorphismDefect {
    pub fn condition(&self) -> &'static str {
        match self {
            PMorphismDefect::Valuation { .. } => "valuation",
            PMorphismDefect::EpistemicForth { .. } => "epistemic-forth",
            PMorphismDefect::EpistemicBack { .. } => "epistemic-back",
            PMorphismDefect::TransitionForth { .. } => "transition-forth",
            PMorphismDefect::TransitionBack { .. } => "transition-back",
        }
    }

    pub fn describe(&self, source: &EtlModel, target: &EtlModel) -> String {
        let sig = source.signature();
        let s = |w: WorldId| source.world_name(w);
        let t = |w: WorldId| target.world_name(w);
        match *self {
            PMorphismDefect::Valuation { world, player } => {
                format!("valuation of {} for player {} differs from its image", s(world), sig.player_name(player))
            }
            PMorphismDefect::EpistemicForth { player, world, other } => format!(
                "{} ~{} {} but their images are not related",
                s(world),
                sig.player_name(player),
                s(other)
            ),
            PMorphismDefect::EpistemicBack { player, world, target } => format!(
                "image of {} is ~{} {} but no related source world maps there",
                s(world),
                sig.player_name(player),
                t(target)
            ),
            PMorphismDefect::TransitionForth { world, action, other } => format!(
                "{} -{}-> {} is not preserved",
                s(world),
                sig.action_name(action),
                s(other)
            ),
            PMorphismDefect::TransitionBack { world, action, target } => format!(
                "image of {} has -{}-> {} with no source transition mapping there",
                s(world),
                sig.action_name(action),
                t(target)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMorphismReport {
    /// All violations found; `defects` keeps the first few.
    pub total: usize,
    pub defects: Vec<PMorphismDefect>,
}

impl PMorphismReport {
    pub fn passed(&self) -> bool {
        self.total == 0
    }

    pub fn count(&self, condition: &str) -> usize {
        self.defects.iter().filter(|d| d.condition() == condition).count()
    }

    pub fn render(&self, source: &EtlModel, target: &EtlModel) -> String {
        let mut out = String::new();
        for d in &self.defects {
            writeln!(out, "{}: {}", d.condition(), d.describe(source, target)).unwrap();
        }
        if self.total > self.defects.len() {
            writeln!(out, "... {} more", self.total - self.defects.len()).unwrap();
        }
        out
    }
}

/// The map sending each run world to its game state, read as a world of
/// the induced epistemic game structure.
pub fn run_assign_map(run: &RunModel) -> Vec<WorldId> {
    (0..run.world_count())
        .map(|w| WorldId::new(run.assign(WorldId::new(w)).index()))
        .collect()
}

/// Checks that `h` (indexed by source world) is a p-morphism.
///
/// Worlds in `frontier` are exempt from the transition back condition: a
/// truncated run has cut their outgoing transitions.
pub fn check_p_morphism(
    h: &[WorldId],
    source: &EtlModel,
    target: &EtlModel,
    frontier: Option<&BTreeSet<WorldId>>,
) -> Result<PMorphismReport> {
    if source.signature() != target.signature() {
        return Err(Error::SignatureMismatch("source and target models differ"));
    }
    if h.len() != source.world_count() {
        return Err(Error::Shape(format!(
            "map covers {} worlds but the source has {}",
            h.len(),
            source.world_count()
        )));
    }
    if let Some(&bad) = h.iter().find(|x| x.index() >= target.world_count()) {
        return Err(Error::unknown("target world", bad.to_string()));
    }
    let sig = source.signature();
    let mut total = 0;
    let mut defects = Vec::new();
    let mut report = |d: PMorphismDefect| {
        total += 1;
        if defects.len() < MAX_WITNESSES {
            defects.push(d);
        }
    };
    let img = |w: WorldId| h[w.index()];

    for w in source.worlds() {
        for i in sig.players() {
            if source.valuation(w, i) != target.valuation(img(w), i) {
                report(PMorphismDefect::Valuation { world: w, player: i });
            }
        }
    }
    for w in source.worlds() {
        for i in sig.players() {
            for v in source.epistemic_successors(i, w) {
                if !target.related(i, img(w), img(v)) {
                    report(PMorphismDefect::EpistemicForth { player: i, world: w, other: v });
                }
            }
            let reached: BTreeSet<WorldId> = source.epistemic_successors(i, w).map(img).collect();
            for x in target.epistemic_successors(i, img(w)) {
                if !reached.contains(&x) {
                    report(PMorphismDefect::EpistemicBack { player: i, world: w, target: x });
                }
            }
        }
    }
    for w in source.worlds() {
        for &(a, v) in source.transitions_from(w) {
            if !target.successors(img(w), a).any(|x| x == img(v)) {
                report(PMorphismDefect::TransitionForth { world: w, action: a, other: v });
            }
        }
        if frontier.is_some_and(|f| f.contains(&w)) {
            continue;
        }
        for &(a, x) in target.transitions_from(img(w)) {
            if !source.successors(w, a).any(|v| img(v) == x) {
                report(PMorphismDefect::TransitionBack { world: w, action: a, target: x });
            }
        }
    }
    Ok(PMorphismReport { total, defects })
}
