use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ids::{ActionId, AtomSet, PlayerId, StateId};
use crate::rules::signature::{Signature, ACTION_ATOM_PREFIX};

/// Game rules: an arena (states, deterministic partial transitions) plus
/// the game information handed to each player at each state.
///
/// Invariants established by every constructor:
/// - at most one successor per state and action;
/// - all actions enabled at one state belong to a single player;
/// - `act_a ∈ info(s, owner(a))` iff `a` is enabled at `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameStructure {
    name: String,
    signature: Arc<Signature>,
    states: Vec<String>,
    index: HashMap<String, StateId>,
    trans: Vec<BTreeMap<ActionId, StateId>>,
    info: Vec<Vec<AtomSet>>,
}

/// A game as written in a game file: names only, action atoms implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameDescription {
    pub name: String,
    pub players: Vec<String>,
    pub actions: Vec<(String, Vec<String>)>,
    pub atoms: Vec<String>,
    pub states: Vec<String>,
    pub trans: Vec<(String, String, String)>,
    /// `(state, player, non-action atoms)`; missing entries mean empty.
    pub obs: Vec<(String, String, Vec<String>)>,
}

/// Checks a game description and injects the action atoms.
pub fn validate_game(raw: &GameDescription) -> Result<GameStructure> {
    let signature = Arc::new(Signature::new(
        raw.players.iter().cloned(),
        raw.actions.iter().cloned(),
        raw.atoms.iter().cloned(),
    )?);

    let mut names: Vec<String> = raw.states.clone();
    names.sort();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Duplicate {
            kind: "state",
            name: w[0].clone(),
        });
    }
    let state = |name: &str| -> Result<StateId> {
        names
            .binary_search_by(|s| s.as_str().cmp(name))
            .map(StateId::new)
            .map_err(|_| Error::unknown("state", name))
    };

    let mut trans = Vec::with_capacity(raw.trans.len());
    for (s, a, t) in &raw.trans {
        trans.push((state(s)?, signature.require_action(a)?, state(t)?));
    }

    let mut info = vec![vec![AtomSet::new(); signature.player_count()]; names.len()];
    for (s, player, atoms) in &raw.obs {
        let s = state(s)?;
        let player = signature.require_player(player)?;
        for atom in atoms {
            if atom.starts_with(ACTION_ATOM_PREFIX) {
                return Err(Error::ReservedAtom(atom.clone()));
            }
            info[s.index()][player.index()].insert(signature.require_atom(atom)?);
        }
    }
    for &(s, a, _) in &trans {
        let owner = signature.owner(a);
        info[s.index()][owner.index()].insert(signature.action_atom(a));
    }

    GameStructure::new(raw.name.clone(), signature, names, trans, info)
}

impl GameStructure {
    /// Builds a game from complete information sets (action atoms
    /// included) and checks every invariant.
    pub fn new(
        name: impl Into<String>,
        signature: Arc<Signature>,
        states: Vec<String>,
        transitions: impl IntoIterator<Item = (StateId, ActionId, StateId)>,
        info: Vec<Vec<AtomSet>>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Shape("a game needs at least one state".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), StateId::new(i)).is_some() {
                return Err(Error::Duplicate {
                    kind: "state",
                    name: s.clone(),
                });
            }
        }
        if info.len() != n || info.iter().any(|row| row.len() != signature.player_count()) {
            return Err(Error::Shape(format!(
                "expected {n} states x {} players",
                signature.player_count()
            )));
        }
        for row in &info {
            for set in row {
                if let Some(p) = set.iter().find(|p| p.index() >= signature.atom_count()) {
                    return Err(Error::Shape(format!("atom index {} out of range", p.0)));
                }
            }
        }

        let mut trans = vec![BTreeMap::new(); n];
        for (s, a, t) in transitions {
            if s.index() >= n || t.index() >= n || a.index() >= signature.action_count() {
                return Err(Error::Shape("transition refers to an unknown id".into()));
            }
            if trans[s.index()].insert(a, t).is_some() {
                return Err(Error::DuplicateTransition {
                    state: states[s.index()].clone(),
                    action: signature.action_name(a).to_string(),
                });
            }
        }

        let game = GameStructure {
            name: name.into(),
            signature,
            states,
            index,
            trans,
            info,
        };
        game.check_turns()?;
        game.check_action_atoms()?;
        Ok(game)
    }

    fn check_turns(&self) -> Result<()> {
        for (s, enabled) in self.trans.iter().enumerate() {
            let mut it = enabled.keys();
            if let Some(&first) = it.next() {
                let owner = self.signature.owner(first);
                if let Some(&other) = it.find(|&&a| self.signature.owner(a) != owner) {
                    return Err(Error::MixedTurn {
                        state: self.states[s].clone(),
                        first: self.signature.action_name(first).into(),
                        second: self.signature.action_name(other).into(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_action_atoms(&self) -> Result<()> {
        let sig = &self.signature;
        for s in 0..self.states.len() {
            for i in sig.players() {
                for &a in sig.actions_of(i) {
                    let has_atom = self.info[s][i.index()].contains(sig.action_atom(a));
                    if has_atom != self.trans[s].contains_key(&a) {
                        return Err(Error::ActionAtomMismatch {
                            state: self.states[s].clone(),
                            player: sig.player_name(i).into(),
                            atom: sig.atom_name(sig.action_atom(a)).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).map(StateId::new)
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.index()]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn require_state(&self, name: &str) -> Result<StateId> {
        self.state(name).ok_or_else(|| Error::unknown("state", name))
    }

    fn check_state(&self, s: StateId) -> Result<()> {
        if s.index() < self.states.len() {
            Ok(())
        } else {
            Err(Error::unknown("state", s.to_string()))
        }
    }

    /// Enabled actions with their successors.
    #[inline]
    pub fn enabled(&self, s: StateId) -> &BTreeMap<ActionId, StateId> {
        &self.trans[s.index()]
    }

    #[inline]
    pub fn successor(&self, s: StateId, a: ActionId) -> Option<StateId> {
        self.trans[s.index()].get(&a).copied()
    }

    /// `e(s)`: the actions available at `s`.
    pub fn available_actions(&self, s: StateId) -> Result<BTreeSet<ActionId>> {
        self.check_state(s)?;
        Ok(self.trans[s.index()].keys().copied().collect())
    }

    /// `ι(s)`: the player whose turn it is, absent at states without moves.
    pub fn turn_player(&self, s: StateId) -> Result<Option<PlayerId>> {
        self.check_state(s)?;
        Ok(self.turn(s))
    }

    #[inline]
    pub(crate) fn turn(&self, s: StateId) -> Option<PlayerId> {
        self.trans[s.index()]
            .keys()
            .next()
            .map(|&a| self.signature.owner(a))
    }

    /// `e_i(s)`: `e(s)` when it is `i`'s turn, empty otherwise.
    pub fn available_actions_for(&self, s: StateId, player: PlayerId) -> BTreeSet<ActionId> {
        if self.turn(s) == Some(player) {
            self.trans[s.index()].keys().copied().collect()
        } else {
            BTreeSet::new()
        }
    }

    /// `O(s, i)`.
    #[inline]
    pub fn info(&self, s: StateId, player: PlayerId) -> &AtomSet {
        &self.info[s.index()][player.index()]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, ActionId, StateId)> + '_ {
        self.trans.iter().enumerate().flat_map(|(s, m)| {
            m.iter()
                .map(move |(&a, &t)| (StateId::new(s), a, t))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.trans.iter().map(BTreeMap::len).sum()
    }

    /// The canonical description: lexicographic order, action atoms left
    /// implicit, empty information lines omitted.
    pub fn describe(&self) -> GameDescription {
        let sig = &self.signature;
        let obs = self
            .states()
            .flat_map(|s| sig.players().map(move |i| (s, i)))
            .filter_map(|(s, i)| {
                let atoms: Vec<String> = self
                    .info(s, i)
                    .iter()
                    .filter(|&p| sig.atom_action(p).is_none())
                    .map(|p| sig.atom_name(p).to_string())
                    .collect();
                (!atoms.is_empty()).then(|| {
                    (
                        self.state_name(s).to_string(),
                        sig.player_name(i).to_string(),
                        atoms,
                    )
                })
            })
            .collect();
        GameDescription {
            name: self.name.clone(),
            players: sig.players().map(|p| sig.player_name(p).into()).collect(),
            actions: sig
                .players()
                .filter(|&p| !sig.actions_of(p).is_empty())
                .map(|p| {
                    (
                        sig.player_name(p).to_string(),
                        sig.actions_of(p)
                            .iter()
                            .map(|&a| sig.action_name(a).to_string())
                            .collect(),
                    )
                })
                .collect(),
            atoms: sig.user_atoms().map(|p| sig.atom_name(p).into()).collect(),
            states: self.states.clone(),
            trans: self
                .transitions()
                .map(|(s, a, t)| {
                    (
                        self.state_name(s).into(),
                        sig.action_name(a).into(),
                        self.state_name(t).into(),
                    )
                })
                .collect(),
            obs,
        }
    }
}
