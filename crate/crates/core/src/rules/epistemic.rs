use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ids::{AtomSet, PlayerId, StateId, WorldId};
use crate::relation::Equivalence;
use crate::rules::game::GameStructure;
use crate::rules::signature::Signature;

/// Initial (or updated) uncertainty: worlds placed on game states, with
/// one equivalence per player that never relates worlds the game tells
/// apart. The valuation is derived: `V(w, i) = O(assign(w), i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistemicModel {
    game: Arc<GameStructure>,
    worlds: Vec<String>,
    assign: Vec<StateId>,
    indist: Vec<Equivalence>,
    point: Option<WorldId>,
}

/// A model as written in a model file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelDescription {
    pub name: String,
    pub game: String,
    /// `(world, state)`.
    pub worlds: Vec<(String, String)>,
    /// Generator pairs `(player, world, world)`.
    pub links: Vec<(String, String, String)>,
    pub point: Option<String>,
}

/// Resolves a model description against its game, closes the generator
/// pairs into equivalences and checks them against the game information.
pub fn validate_epistemic(raw: &ModelDescription, game: &Arc<GameStructure>) -> Result<EpistemicModel> {
    if !raw.game.is_empty() && raw.game != game.name() {
        return Err(Error::unknown("game", raw.game.clone()));
    }
    let mut entries = raw.worlds.clone();
    entries.sort();
    if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Duplicate {
            kind: "world",
            name: w[0].0.clone(),
        });
    }
    let names: Vec<String> = entries.iter().map(|(w, _)| w.clone()).collect();
    let assign = entries
        .iter()
        .map(|(_, s)| game.require_state(s))
        .collect::<Result<Vec<_>>>()?;
    let world = |name: &str| -> Result<usize> {
        names
            .binary_search_by(|w| w.as_str().cmp(name))
            .map_err(|_| Error::unknown("world", name))
    };

    let sig = game.signature();
    let mut generators = vec![Vec::new(); sig.player_count()];
    for (player, w, v) in &raw.links {
        let i = sig.require_player(player)?;
        let (w, v) = (world(w)?, world(v)?);
        if game.info(assign[w], i) != game.info(assign[v], i) {
            return Err(Error::IndistinguishabilityViolation {
                player: player.clone(),
                left: names[w].clone(),
                right: names[v].clone(),
            });
        }
        generators[i.index()].push((w, v));
    }
    let indist = generators
        .into_iter()
        .map(|pairs| Equivalence::from_pairs(names.len(), pairs))
        .collect();
    let point = raw
        .point
        .as_deref()
        .map(|p| world(p).map(WorldId::new))
        .transpose()?;

    EpistemicModel::new(game.clone(), names, assign, indist, point)
}

impl EpistemicModel {
    pub fn new(
        game: Arc<GameStructure>,
        worlds: Vec<String>,
        assign: Vec<StateId>,
        indist: Vec<Equivalence>,
        point: Option<WorldId>,
    ) -> Result<Self> {
        if worlds.is_empty() {
            return Err(Error::EmptyModel);
        }
        let model = Self::from_parts(game, worlds, assign, indist, point);
        model.check()?;
        Ok(model)
    }

    /// No checks; the product uses this (its result may be empty).
    pub(crate) fn from_parts(
        game: Arc<GameStructure>,
        worlds: Vec<String>,
        assign: Vec<StateId>,
        indist: Vec<Equivalence>,
        point: Option<WorldId>,
    ) -> Self {
        EpistemicModel {
            game,
            worlds,
            assign,
            indist,
            point,
        }
    }

    /// Re-checks the model invariants against its game.
    pub fn check(&self) -> Result<()> {
        let n = self.worlds.len();
        let sig = self.game.signature();
        if self.assign.len() != n
            || self.indist.len() != sig.player_count()
            || self.indist.iter().any(|eq| eq.len() != n)
        {
            return Err(Error::Shape("world count differs across model parts".into()));
        }
        if let Some(s) = self.assign.iter().find(|s| s.index() >= self.game.state_count()) {
            return Err(Error::unknown("state", s.to_string()));
        }
        if let Some(p) = self.point.filter(|p| p.index() >= n) {
            return Err(Error::unknown("world", p.to_string()));
        }
        for i in sig.players() {
            for class in self.indist[i.index()].classes() {
                let first = class[0] as usize;
                for &w in &class[1..] {
                    let w = w as usize;
                    if self.game.info(self.assign[first], i) != self.game.info(self.assign[w], i) {
                        return Err(Error::IndistinguishabilityViolation {
                            player: sig.player_name(i).into(),
                            left: self.worlds[first].clone(),
                            right: self.worlds[w].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn game(&self) -> &Arc<GameStructure> {
        &self.game
    }

    pub fn signature(&self) -> &Arc<Signature> {
        self.game.signature()
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn is_certainty(&self) -> bool {
        self.worlds.len() == 1
    }

    pub fn worlds(&self) -> impl Iterator<Item = WorldId> + '_ {
        (0..self.worlds.len()).map(WorldId::new)
    }

    pub fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w.index()]
    }

    pub fn world(&self, name: &str) -> Option<WorldId> {
        self.worlds.iter().position(|w| w == name).map(WorldId::new)
    }

    pub fn require_world(&self, name: &str) -> Result<WorldId> {
        self.world(name).ok_or_else(|| Error::unknown("world", name))
    }

    #[inline]
    pub fn assign(&self, w: WorldId) -> StateId {
        self.assign[w.index()]
    }

    pub fn indist(&self, player: PlayerId) -> &Equivalence {
        &self.indist[player.index()]
    }

    #[inline]
    pub fn related(&self, player: PlayerId, w: WorldId, v: WorldId) -> bool {
        self.indist[player.index()].related(w.index(), v.index())
    }

    /// `V(w, i)`.
    #[inline]
    pub fn valuation(&self, w: WorldId, player: PlayerId) -> &AtomSet {
        self.game.info(self.assign[w.index()], player)
    }

    pub fn point(&self) -> Option<WorldId> {
        self.point
    }

    pub fn with_point(mut self, point: Option<WorldId>) -> Self {
        self.point = point;
        self
    }

    pub fn describe(&self) -> ModelDescription {
        let sig = self.signature();
        let mut links = Vec::new();
        for i in sig.players() {
            for class in self.indist[i.index()].classes() {
                for &w in &class[1..] {
                    links.push((
                        sig.player_name(i).to_string(),
                        self.worlds[class[0] as usize].clone(),
                        self.worlds[w as usize].clone(),
                    ));
                }
            }
        }
        ModelDescription {
            name: String::new(),
            game: self.game.name().to_string(),
            worlds: self
                .worlds()
                .map(|w| {
                    (
                        self.world_name(w).to_string(),
                        self.game.state_name(self.assign(w)).to_string(),
                    )
                })
                .collect(),
            links,
            point: self.point.map(|p| self.world_name(p).to_string()),
        }
    }
}
