use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ids::{ActionId, AtomId, PlayerId};

/// Prefix of the reserved atom announcing that an action is available.
pub const ACTION_ATOM_PREFIX: &str = "act_";

/// Players, their disjoint action sets, and the information pieces.
///
/// Every action `a` has a reserved atom `act_a`; those are added here and
/// user atoms may not use the prefix. All three name sets are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    players: Vec<String>,
    actions: Vec<String>,
    owner: Vec<PlayerId>,
    atoms: Vec<String>,
    action_atom: Vec<AtomId>,
    atom_action: Vec<Option<ActionId>>,
    player_actions: Vec<Vec<ActionId>>,
}

impl Signature {
    /// `actions` maps player names to the actions they own.
    pub fn new<P, A, U>(players: P, actions: A, user_atoms: U) -> Result<Self>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        A: IntoIterator<Item = (String, Vec<String>)>,
        U: IntoIterator,
        U::Item: Into<String>,
    {
        let players = sorted_unique("player", players.into_iter().map(Into::into))?;
        if players.is_empty() {
            return Err(Error::NoPlayers);
        }

        let mut owned: BTreeMap<String, String> = BTreeMap::new();
        for (player, acts) in actions {
            if players.binary_search(&player).is_err() {
                return Err(Error::unknown("player", player));
            }
            for action in acts {
                if let Some(first) = owned.get(&action) {
                    if *first == player {
                        return Err(Error::Duplicate {
                            kind: "action",
                            name: action,
                        });
                    }
                    return Err(Error::ActionOwnedTwice {
                        action,
                        first: first.clone(),
                        second: player,
                    });
                }
                owned.insert(action, player.clone());
            }
        }
        if owned.is_empty() {
            return Err(Error::NoActions);
        }

        let mut atom_names = BTreeSet::new();
        for atom in user_atoms {
            let atom = atom.into();
            if atom.starts_with(ACTION_ATOM_PREFIX) {
                return Err(Error::ReservedAtom(atom));
            }
            if !atom_names.insert(atom.clone()) {
                return Err(Error::Duplicate {
                    kind: "atom",
                    name: atom,
                });
            }
        }
        for action in owned.keys() {
            atom_names.insert(format!("{ACTION_ATOM_PREFIX}{action}"));
        }
        let atoms: Vec<String> = atom_names.into_iter().collect();

        let actions: Vec<String> = owned.keys().cloned().collect();
        let owner: Vec<PlayerId> = owned
            .values()
            .map(|p| PlayerId::new(players.binary_search(p).unwrap()))
            .collect();
        let action_atom: Vec<AtomId> = actions
            .iter()
            .map(|a| {
                let name = format!("{ACTION_ATOM_PREFIX}{a}");
                AtomId::new(atoms.binary_search(&name).unwrap())
            })
            .collect();
        let mut atom_action = vec![None; atoms.len()];
        for (a, atom) in action_atom.iter().enumerate() {
            atom_action[atom.index()] = Some(ActionId::new(a));
        }
        let mut player_actions = vec![Vec::new(); players.len()];
        for (a, p) in owner.iter().enumerate() {
            player_actions[p.index()].push(ActionId::new(a));
        }

        Ok(Signature {
            players,
            actions,
            owner,
            atoms,
            action_atom,
            atom_action,
            player_actions,
        })
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> + '_ {
        (0..self.players.len()).map(PlayerId::new)
    }

    pub fn actions(&self) -> impl Iterator<Item = ActionId> + '_ {
        (0..self.actions.len()).map(ActionId::new)
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.atoms.len()).map(AtomId::new)
    }

    /// Atoms that are not reserved action atoms.
    pub fn user_atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.atoms().filter(|a| self.atom_action[a.index()].is_none())
    }

    pub fn player(&self, name: &str) -> Option<PlayerId> {
        self.players
            .binary_search_by(|p| p.as_str().cmp(name))
            .ok()
            .map(PlayerId::new)
    }

    pub fn action(&self, name: &str) -> Option<ActionId> {
        self.actions
            .binary_search_by(|p| p.as_str().cmp(name))
            .ok()
            .map(ActionId::new)
    }

    pub fn atom(&self, name: &str) -> Option<AtomId> {
        self.atoms
            .binary_search_by(|p| p.as_str().cmp(name))
            .ok()
            .map(AtomId::new)
    }

    pub fn require_player(&self, name: &str) -> Result<PlayerId> {
        self.player(name).ok_or_else(|| Error::unknown("player", name))
    }

    pub fn require_action(&self, name: &str) -> Result<ActionId> {
        self.action(name).ok_or_else(|| Error::unknown("action", name))
    }

    pub fn require_atom(&self, name: &str) -> Result<AtomId> {
        self.atom(name).ok_or_else(|| Error::unknown("atom", name))
    }

    pub fn player_name(&self, p: PlayerId) -> &str {
        &self.players[p.index()]
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a.index()]
    }

    pub fn atom_name(&self, p: AtomId) -> &str {
        &self.atoms[p.index()]
    }

    pub fn owner(&self, a: ActionId) -> PlayerId {
        self.owner[a.index()]
    }

    /// `A_i`, ascending.
    pub fn actions_of(&self, player: PlayerId) -> &[ActionId] {
        &self.player_actions[player.index()]
    }

    /// The reserved atom `act_a`.
    pub fn action_atom(&self, a: ActionId) -> AtomId {
        self.action_atom[a.index()]
    }

    /// The action whose reserved atom this is, if any.
    pub fn atom_action(&self, p: AtomId) -> Option<ActionId> {
        self.atom_action[p.index()]
    }
}

fn sorted_unique(kind: &'static str, names: impl Iterator<Item = String>) -> Result<Vec<String>> {
    let mut set = BTreeSet::new();
    for name in names {
        if !set.insert(name.clone()) {
            return Err(Error::Duplicate { kind, name });
        }
    }
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_player() -> Signature {
        Signature::new(
            ["2", "1"],
            vec![
                ("1".into(), vec!["b".into(), "a".into()]),
                ("2".into(), vec!["c".into(), "d".into()]),
            ],
            ["win"],
        )
        .unwrap()
    }

    #[test]
    fn names_are_sorted_and_action_atoms_added() {
        let sig = two_player();
        assert_eq!(sig.player_name(PlayerId(0)), "1");
        assert_eq!(sig.action_name(ActionId(0)), "a");
        let names: Vec<_> = sig.atoms().map(|p| sig.atom_name(p)).collect();
        assert_eq!(names, ["act_a", "act_b", "act_c", "act_d", "win"]);
        let a = sig.action("a").unwrap();
        assert_eq!(sig.atom_name(sig.action_atom(a)), "act_a");
        assert_eq!(sig.atom_action(sig.action_atom(a)), Some(a));
        assert_eq!(sig.user_atoms().count(), 1);
        assert_eq!(sig.actions_of(sig.player("2").unwrap()).len(), 2);
    }

    #[test]
    fn reserved_prefix_is_rejected() {
        let err = Signature::new(["1"], vec![("1".into(), vec!["a".into()])], ["act_x"]);
        assert!(matches!(err, Err(Error::ReservedAtom(_))));
    }

    #[test]
    fn action_sets_must_be_disjoint() {
        let err = Signature::new(
            ["1", "2"],
            vec![("1".into(), vec!["a".into()]), ("2".into(), vec!["a".into()])],
            Vec::<String>::new(),
        );
        assert!(matches!(err, Err(Error::ActionOwnedTwice { .. })));
    }

    #[test]
    fn empty_sets_are_rejected() {
        let none: Vec<String> = Vec::new();
        assert!(matches!(
            Signature::new(none.clone(), vec![], none.clone()),
            Err(Error::NoPlayers)
        ));
        assert!(matches!(
            Signature::new(["1"], vec![], none),
            Err(Error::NoActions)
        ));
    }
}
