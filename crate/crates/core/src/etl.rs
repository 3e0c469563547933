//! Epistemic temporal models: worlds with per-player epistemic relations,
//! per-action transitions and a per-player valuation.
//!
//! Nothing is assumed about the relations here. Run models, game trees and
//! induced epistemic game structures all produce values of this type, and
//! the normality checker decides what properties hold.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ids::{ActionId, AtomSet, PlayerId, WorldId};
use crate::relation::Relation;
use crate::rules::Signature;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtlModel {
    name: String,
    signature: Arc<Signature>,
    worlds: Vec<String>,
    epistemic: Vec<Relation>,
    trans: Vec<Vec<(ActionId, WorldId)>>,
    valuation: Vec<Vec<AtomSet>>,
}

impl EtlModel {
    pub fn new(
        name: impl Into<String>,
        signature: Arc<Signature>,
        worlds: Vec<String>,
        epistemic: Vec<Relation>,
        transitions: impl IntoIterator<Item = (WorldId, ActionId, WorldId)>,
        valuation: Vec<Vec<AtomSet>>,
    ) -> Result<Self> {
        let n = worlds.len();
        if n == 0 {
            return Err(Error::EmptyModel);
        }
        if epistemic.len() != signature.player_count() || epistemic.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("one epistemic relation per player over all worlds".into()));
        }
        if valuation.len() != n || valuation.iter().any(|v| v.len() != signature.player_count()) {
            return Err(Error::Shape("valuation must cover every world and player".into()));
        }
        let mut trans = vec![Vec::new(); n];
        for (w, a, v) in transitions {
            if w.index() >= n || v.index() >= n || a.index() >= signature.action_count() {
                return Err(Error::Shape("transition refers to an unknown id".into()));
            }
            trans[w.index()].push((a, v));
        }
        for t in &mut trans {
            t.sort();
            t.dedup();
        }
        Ok(EtlModel {
            name: name.into(),
            signature,
            worlds,
            epistemic,
            trans,
            valuation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> impl Iterator<Item = WorldId> + '_ {
        (0..self.worlds.len()).map(WorldId::new)
    }

    pub fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w.index()]
    }

    pub fn world_names(&self) -> &[String] {
        &self.worlds
    }

    pub fn world(&self, name: &str) -> Option<WorldId> {
        self.worlds.iter().position(|w| w == name).map(WorldId::new)
    }

    pub fn require_world(&self, name: &str) -> Result<WorldId> {
        self.world(name).ok_or_else(|| Error::unknown("world", name))
    }

    pub fn epistemic(&self, player: PlayerId) -> &Relation {
        &self.epistemic[player.index()]
    }

    #[inline]
    pub fn related(&self, player: PlayerId, w: WorldId, v: WorldId) -> bool {
        self.epistemic[player.index()].contains(w.index(), v.index())
    }

    pub fn epistemic_successors(&self, player: PlayerId, w: WorldId) -> impl Iterator<Item = WorldId> + '_ {
        self.epistemic[player.index()]
            .successors(w.index())
            .map(WorldId::new)
    }

    /// Outgoing transitions, sorted by action then target.
    pub fn transitions_from(&self, w: WorldId) -> &[(ActionId, WorldId)] {
        &self.trans[w.index()]
    }

    pub fn successors(&self, w: WorldId, a: ActionId) -> impl Iterator<Item = WorldId> + '_ {
        self.trans[w.index()]
            .iter()
            .filter(move |(b, _)| *b == a)
            .map(|&(_, v)| v)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (WorldId, ActionId, WorldId)> + '_ {
        self.trans
            .iter()
            .enumerate()
            .flat_map(|(w, out)| out.iter().map(move |&(a, v)| (WorldId::new(w), a, v)))
    }

    pub fn transition_count(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    /// `Act(w)`.
    pub fn act(&self, w: WorldId) -> BTreeSet<ActionId> {
        self.trans[w.index()].iter().map(|&(a, _)| a).collect()
    }

    /// `Turn(w)`: players `j` with `∅ ⊂ Act(w) ⊆ A_j`.
    pub fn turn(&self, w: WorldId) -> Vec<PlayerId> {
        let act = self.act(w);
        if act.is_empty() {
            return Vec::new();
        }
        self.signature
            .players()
            .filter(|&j| act.iter().all(|&a| self.signature.owner(a) == j))
            .collect()
    }

    #[inline]
    pub fn valuation(&self, w: WorldId, player: PlayerId) -> &AtomSet {
        &self.valuation[w.index()][player.index()]
    }

    /// Number of unordered non-reflexive related pairs per player, summed.
    pub fn proper_epistemic_edge_count(&self) -> usize {
        self.proper_epistemic_edges().len()
    }

    /// `(player, w, v)` with `w < v` and `w ~_i v` (or `v ~_i w`).
    pub fn proper_epistemic_edges(&self) -> Vec<(PlayerId, WorldId, WorldId)> {
        let mut out = BTreeSet::new();
        for i in self.signature.players() {
            for (a, b) in self.epistemic[i.index()].pairs() {
                if a != b {
                    out.insert((i, WorldId::new(a.min(b)), WorldId::new(a.max(b))));
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn insert_epistemic(&mut self, player: PlayerId, w: WorldId, v: WorldId) {
        self.epistemic[player.index()].insert(w.index(), v.index());
    }

    /// Deletes `w ~_i v` and `v ~_i w`.
    pub fn remove_epistemic_edge(&mut self, player: PlayerId, w: WorldId, v: WorldId) {
        self.epistemic[player.index()].remove(w.index(), v.index());
        self.epistemic[player.index()].remove(v.index(), w.index());
    }

    pub fn insert_transition(&mut self, w: WorldId, a: ActionId, v: WorldId) {
        let out = &mut self.trans[w.index()];
        if let Err(pos) = out.binary_search(&(a, v)) {
            out.insert(pos, (a, v));
        }
    }

    pub fn valuation_mut(&mut self, w: WorldId, player: PlayerId) -> &mut AtomSet {
        &mut self.valuation[w.index()][player.index()]
    }

    /// Name-to-world lookup table (first occurrence wins).
    pub fn name_index(&self) -> HashMap<&str, WorldId> {
        let mut map = HashMap::new();
        for (i, w) in self.worlds.iter().enumerate() {
            map.entry(w.as_str()).or_insert(WorldId::new(i));
        }
        map
    }
}
