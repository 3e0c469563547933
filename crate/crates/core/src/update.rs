//! The update product and depth-bounded run models.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::ids::{ActionId, AtomSet, PlayerId, StateId, WorldId};
use crate::relation::{Equivalence, Relation};
use crate::rules::{EpistemicModel, GameStructure, ObservationModel};

/// `M ⊗ U`, together with the `(w, a)` pair behind every new world.
#[derive(Clone, Debug)]
pub struct Product {
    model: EpistemicModel,
    origin: Vec<(WorldId, ActionId)>,
}

impl Product {
    pub fn model(&self) -> &EpistemicModel {
        &self.model
    }

    pub fn into_model(self) -> EpistemicModel {
        self.model
    }

    /// No world of the source model had an enabled action.
    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }

    pub fn origin(&self, w: WorldId) -> (WorldId, ActionId) {
        self.origin[w.index()]
    }

    pub fn origins(&self) -> &[(WorldId, ActionId)] {
        &self.origin
    }

    /// The world `(w, a)`, if `a` was enabled at `w`.
    pub fn world_for(&self, w: WorldId, a: ActionId) -> Option<WorldId> {
        self.origin
            .binary_search(&(w, a))
            .ok()
            .map(WorldId::new)
    }
}

pub(crate) fn same_signature(model: &EpistemicModel, obs: &ObservationModel) -> Result<()> {
    if Arc::ptr_eq(model.signature(), obs.signature()) || **model.signature() == **obs.signature() {
        Ok(())
    } else {
        Err(Error::SignatureMismatch("observation model and game differ"))
    }
}

/// The update product `M ⊗ U`.
///
/// Worlds are the pairs `(w, a)` with `a ∈ e(assign(w))`, in `(w, a)`
/// order; `(w,a) ~_i (u,b)` iff `w ~_i u`, `a ↭_i b` and the successor
/// states give `i` the same information.
pub fn product(model: &EpistemicModel, obs: &ObservationModel) -> Result<Product> {
    same_signature(model, obs)?;
    let game = model.game();
    let sig = game.signature();

    let mut origin = Vec::new();
    let mut assign = Vec::new();
    let mut names = Vec::new();
    for w in model.worlds() {
        for (&a, &t) in game.enabled(model.assign(w)) {
            origin.push((w, a));
            assign.push(t);
            names.push(format!("{}{}", model.world_name(w), sig.action_name(a)));
        }
    }

    let indist = sig
        .players()
        .map(|i| {
            Equivalence::from_key(origin.len(), |k| {
                let (w, a) = origin[k];
                (
                    model.indist(i).class_of(w.index()),
                    obs.blur(i).class_of(a.index()),
                    game.info(assign[k], i),
                )
            })
        })
        .collect();

    Ok(Product {
        model: EpistemicModel::from_parts(game.clone(), names, assign, indist, None),
        origin,
    })
}

/// A run world `(root, a_1, ..., a_k)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunWorld {
    pub root: WorldId,
    pub history: Vec<ActionId>,
}

impl RunWorld {
    pub fn root(root: WorldId) -> Self {
        RunWorld {
            root,
            history: Vec::new(),
        }
    }

    pub fn extend(&self, a: ActionId) -> Self {
        let mut history = self.history.clone();
        history.push(a);
        RunWorld {
            root: self.root,
            history,
        }
    }

    pub fn layer(&self) -> usize {
        self.history.len()
    }
}

/// The run model generated by repeatedly updating with `U`, truncated at a
/// fixed depth. Layer `k` is `M ⊗ U^k`; worlds at layer `depth` form the
/// frontier, whose outgoing transitions are cut off.
#[derive(Clone, Debug)]
pub struct RunModel {
    etl: EtlModel,
    observation: ObservationModel,
    layers: Vec<EpistemicModel>,
    worlds: Vec<RunWorld>,
    layer: Vec<usize>,
    assign: Vec<StateId>,
    parent: Vec<Option<(WorldId, ActionId)>>,
    offsets: Vec<usize>,
    depth: usize,
    index: HashMap<RunWorld, WorldId>,
}

/// Builds layers `0..=depth` of the run model of `model` under `obs`.
pub fn generate_run(model: &EpistemicModel, obs: &ObservationModel, depth: usize) -> Result<RunModel> {
    same_signature(model, obs)?;
    let game = model.game();
    let sig = game.signature().clone();

    let mut layers = vec![model.clone()];
    let mut worlds: Vec<RunWorld> = model.worlds().map(RunWorld::root).collect();
    let mut parent = vec![None; worlds.len()];
    let mut offsets = vec![0, worlds.len()];
    for k in 0..depth {
        let p = product(&layers[k], obs)?;
        if !p.is_empty() {
            // The product of an epistemic model stays one.
            if let Err(e) = p.model().check() {
                panic!("update product broke an epistemic model invariant: {e}");
            }
        }
        let base = offsets[k];
        for &(w, a) in p.origins() {
            let pw = base + w.index();
            worlds.push(worlds[pw].extend(a));
            parent.push(Some((WorldId::new(pw), a)));
        }
        offsets.push(worlds.len());
        layers.push(p.into_model());
    }

    let n = worlds.len();
    let layer: Vec<usize> = worlds.iter().map(RunWorld::layer).collect();
    let assign: Vec<StateId> = (0..=depth)
        .flat_map(|k| {
            let m = &layers[k];
            m.worlds().map(move |w| m.assign(w))
        })
        .collect();

    let mut epistemic = vec![Relation::empty(n); sig.player_count()];
    for (k, m) in layers.iter().enumerate() {
        for i in sig.players() {
            for (a, b) in m.indist(i).pairs() {
                epistemic[i.index()].insert(offsets[k] + a, offsets[k] + b);
            }
        }
    }
    let transitions: Vec<_> = parent
        .iter()
        .enumerate()
        .filter_map(|(c, p)| p.map(|(pw, a)| (pw, a, WorldId::new(c))))
        .collect();
    let valuation = assign
        .iter()
        .map(|&s| sig.players().map(|i| game.info(s, i).clone()).collect())
        .collect();
    let names = world_names(model, &worlds);
    let etl = EtlModel::new(
        format!("run-{}", game.name()),
        sig,
        names,
        epistemic,
        transitions,
        valuation,
    )?;

    let index = worlds
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), WorldId::new(i)))
        .collect();
    Ok(RunModel {
        etl,
        observation: obs.clone(),
        layers,
        worlds,
        layer,
        assign,
        parent,
        offsets,
        depth,
        index,
    })
}

/// Concatenated names (`wac`) when they are unique, dotted (`w.a.c`)
/// otherwise.
fn world_names(model: &EpistemicModel, worlds: &[RunWorld]) -> Vec<String> {
    let sig = model.signature();
    let render = |w: &RunWorld, sep: &str| {
        let mut s = model.world_name(w.root).to_string();
        for &a in &w.history {
            s.push_str(sep);
            s.push_str(sig.action_name(a));
        }
        s
    };
    let plain: Vec<String> = worlds.iter().map(|w| render(w, "")).collect();
    let unique: HashSet<&String> = plain.iter().collect();
    if unique.len() == plain.len() {
        plain
    } else {
        worlds.iter().map(|w| render(w, ".")).collect()
    }
}

/// The state reached by executing `w`'s history from its root.
pub fn run_assign(run: &RunModel, w: &RunWorld) -> Result<StateId> {
    if !run.index.contains_key(w) {
        return Err(Error::unknown("run world", run.describe_world(w)));
    }
    let game = run.game();
    let mut s = run.initial().assign(w.root);
    for &a in &w.history {
        s = game
            .successor(s, a)
            .expect("run worlds are executable histories");
    }
    Ok(s)
}

impl RunModel {
    pub fn etl(&self) -> &EtlModel {
        &self.etl
    }

    pub fn into_etl(self) -> EtlModel {
        self.etl
    }

    pub fn game(&self) -> &Arc<GameStructure> {
        self.layers[0].game()
    }

    pub fn initial(&self) -> &EpistemicModel {
        &self.layers[0]
    }

    pub fn observation(&self) -> &ObservationModel {
        &self.observation
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[RunWorld] {
        &self.worlds
    }

    pub fn run_world(&self, w: WorldId) -> &RunWorld {
        &self.worlds[w.index()]
    }

    pub fn world_id(&self, w: &RunWorld) -> Option<WorldId> {
        self.index.get(w).copied()
    }

    pub fn world_name(&self, w: WorldId) -> &str {
        self.etl.world_name(w)
    }

    pub fn layer_of(&self, w: WorldId) -> usize {
        self.layer[w.index()]
    }

    /// Ids of the worlds in layer `k`.
    pub fn layer(&self, k: usize) -> impl Iterator<Item = WorldId> {
        let r: Range<usize> = self.offsets[k]..self.offsets[k + 1];
        r.map(WorldId::new)
    }

    pub fn layer_size(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }

    /// `M ⊗ U^k`.
    pub fn layer_model(&self, k: usize) -> &EpistemicModel {
        &self.layers[k]
    }

    /// Position of a run world inside its layer model.
    pub fn local_index(&self, w: WorldId) -> WorldId {
        WorldId::new(w.index() - self.offsets[self.layer[w.index()]])
    }

    #[inline]
    pub fn assign(&self, w: WorldId) -> StateId {
        self.assign[w.index()]
    }

    pub fn parent(&self, w: WorldId) -> Option<(WorldId, ActionId)> {
        self.parent[w.index()]
    }

    pub fn child(&self, w: WorldId, a: ActionId) -> Option<WorldId> {
        self.etl.successors(w, a).next()
    }

    pub fn frontier(&self) -> BTreeSet<WorldId> {
        self.layer(self.depth).collect()
    }

    fn describe_world(&self, w: &RunWorld) -> String {
        let sig = self.game().signature();
        let mut s = format!("{}", w.root.0);
        for &a in &w.history {
            s.push('.');
            s.push_str(sig.action_name(a));
        }
        s
    }

    /// A normal epistemic temporal model agreeing with the run below the
    /// frontier.
    ///
    /// Frontier worlds lose the action atoms of their own player's actions
    /// (they have no successors in the truncation), and the frontier's
    /// epistemic relations are recomputed with the product rule on those
    /// trimmed valuations so that no-miracles, perfect recall and
    /// known-evidence keep holding.
    pub fn frontier_trimmed(&self) -> EtlModel {
        let sig = self.game().signature().clone();
        let mut etl = self.etl.clone();
        let frontier: Vec<WorldId> = self.layer(self.depth).collect();
        for &w in &frontier {
            for i in sig.players() {
                let v = etl.valuation_mut(w, i);
                for &a in sig.actions_of(i) {
                    v.remove(sig.action_atom(a));
                }
            }
        }
        if self.depth == 0 || frontier.is_empty() {
            return rename(etl, "trimmed");
        }
        let previous = &self.layers[self.depth - 1];
        let prev_offset = self.offsets[self.depth - 1];
        for i in sig.players() {
            let classes = Equivalence::from_key(frontier.len(), |k| {
                let (pw, a) = self.parent[frontier[k].index()].unwrap();
                let trimmed: AtomSet = etl.valuation(frontier[k], i).clone();
                (
                    previous.indist(i).class_of(pw.index() - prev_offset),
                    self.observation.blur(i).class_of(a.index()),
                    trimmed,
                )
            });
            for &x in &frontier {
                for &y in &frontier {
                    etl.remove_epistemic_edge(i, x, y);
                }
            }
            for (a, b) in classes.pairs() {
                etl.insert_epistemic(i, frontier[a], frontier[b]);
            }
        }
        rename(etl, "trimmed")
    }

    /// The layer-`k` epistemic relation of player `i`, as run-world pairs.
    pub fn layer_relation(&self, k: usize, player: PlayerId) -> Vec<(WorldId, WorldId)> {
        let base = self.offsets[k];
        self.layers[k]
            .indist(player)
            .pairs()
            .into_iter()
            .map(|(a, b)| (WorldId::new(base + a), WorldId::new(base + b)))
            .collect()
    }
}

fn rename(etl: EtlModel, suffix: &str) -> EtlModel {
    let name = format!("{}-{suffix}", etl.name());
    let sig = etl.signature().clone();
    let worlds = etl.world_names().to_vec();
    let epistemic = sig.players().map(|i| etl.epistemic(i).clone()).collect();
    let valuation = etl
        .worlds()
        .map(|w| sig.players().map(|i| etl.valuation(w, i).clone()).collect())
        .collect();
    let transitions: Vec<_> = etl.transitions().collect();
    EtlModel::new(name, sig, worlds, epistemic, transitions, valuation)
        .expect("renaming keeps the shape")
}
