//! The three inputs: game rules, initial uncertainty, observation power.

mod epistemic;
mod game;
mod observation;
mod signature;

pub use epistemic::{validate_epistemic, EpistemicModel, ModelDescription};
pub use game::{validate_game, GameDescription, GameStructure};
pub use observation::{validate_observation, ObservationDescription, ObservationModel};
pub use signature::{Signature, ACTION_ATOM_PREFIX};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;
    use crate::ids::AtomSet;
    use std::sync::Arc;

    fn names(game: &GameStructure, set: impl IntoIterator<Item = crate::ActionId>) -> Vec<String> {
        set.into_iter()
            .map(|a| game.signature().action_name(a).to_string())
            .collect()
    }

    #[test]
    fn fixture_a_turns_and_moves() {
        let g = fixtures::game_a();
        let s = g.require_state("s").unwrap();
        let t = g.require_state("t").unwrap();
        let o1 = g.require_state("o1").unwrap();
        let o3 = g.require_state("o3").unwrap();
        assert_eq!(names(&g, g.available_actions(s).unwrap()), ["a", "b"]);
        assert!(g.available_actions(o1).unwrap().is_empty());
        let sig = g.signature();
        assert_eq!(g.turn_player(s).unwrap(), sig.player("1"));
        assert_eq!(g.turn_player(t).unwrap(), sig.player("2"));
        assert_eq!(g.turn_player(o3).unwrap(), None);
        let p2 = sig.player("2").unwrap();
        assert_eq!(g.info(t, p2), g.info(g.require_state("t'").unwrap(), p2));
    }

    #[test]
    fn fixture_b_loop_and_fixture_c_turn() {
        let b = fixtures::game_b();
        let t = b.require_state("t").unwrap();
        assert_eq!(names(&b, b.available_actions(t).unwrap()), ["c", "d"]);
        let c_act = b.signature().action("c").unwrap();
        assert_eq!(b.successor(t, c_act), Some(t));

        let c = fixtures::game_c();
        let tp = c.require_state("t'").unwrap();
        assert_eq!(c.turn_player(tp).unwrap(), c.signature().player("2"));
    }

    #[test]
    fn single_state_game_is_valid() {
        let raw = GameDescription {
            name: "g".into(),
            players: vec!["1".into()],
            actions: vec![("1".into(), vec!["a".into()])],
            states: vec!["s".into()],
            ..Default::default()
        };
        let g = validate_game(&raw).unwrap();
        let s = g.require_state("s").unwrap();
        assert!(g.available_actions(s).unwrap().is_empty());
        assert_eq!(g.turn_player(s).unwrap(), None);
        assert!(g.info(s, g.signature().player("1").unwrap()).is_empty());
    }

    #[test]
    fn mixed_player_turn_is_rejected() {
        let raw = GameDescription {
            name: "g".into(),
            players: vec!["1".into(), "2".into()],
            actions: vec![("1".into(), vec!["a".into()]), ("2".into(), vec!["c".into()])],
            states: vec!["s".into(), "t".into()],
            trans: vec![
                ("s".into(), "a".into(), "t".into()),
                ("s".into(), "c".into(), "t".into()),
            ],
            ..Default::default()
        };
        let err = validate_game(&raw).unwrap_err();
        assert!(matches!(err, Error::MixedTurn { .. }), "{err}");
        assert!(err.to_string().contains("mixed-player turn"));
    }

    #[test]
    fn duplicate_transition_and_unknown_ids_are_rejected() {
        let mut raw = GameDescription {
            name: "g".into(),
            players: vec!["1".into()],
            actions: vec![("1".into(), vec!["a".into()])],
            states: vec!["s".into(), "t".into()],
            trans: vec![
                ("s".into(), "a".into(), "t".into()),
                ("s".into(), "a".into(), "s".into()),
            ],
            ..Default::default()
        };
        assert!(matches!(
            validate_game(&raw),
            Err(Error::DuplicateTransition { .. })
        ));
        raw.trans = vec![("s".into(), "a".into(), "nowhere".into())];
        assert!(matches!(validate_game(&raw), Err(Error::Unknown { kind: "state", .. })));
        raw.trans.clear();
        raw.obs = vec![("s".into(), "1".into(), vec!["act_a".into()])];
        assert!(matches!(validate_game(&raw), Err(Error::ReservedAtom(_))));
    }

    #[test]
    fn action_atom_condition_is_enforced_for_full_info() {
        let g = fixtures::game_a();
        let sig = g.signature().clone();
        let p1 = sig.player("1").unwrap();
        let mut info: Vec<Vec<AtomSet>> = g
            .states()
            .map(|s| sig.players().map(|i| g.info(s, i).clone()).collect())
            .collect();
        let s = g.require_state("s").unwrap();
        info[s.index()][p1.index()] = AtomSet::new();
        let states: Vec<String> = g.states().map(|s| g.state_name(s).to_string()).collect();
        let err = GameStructure::new("g", sig, states, g.transitions(), info).unwrap_err();
        assert!(matches!(err, Error::ActionAtomMismatch { .. }));
    }

    #[test]
    fn fixture_c_initial_model() {
        let m = fixtures::model_c();
        let sig = m.signature().clone();
        let (p1, p2) = (sig.player("1").unwrap(), sig.player("2").unwrap());
        let w = m.require_world("w").unwrap();
        let u = m.require_world("u").unwrap();
        let v = m.require_world("v").unwrap();
        assert!(m.related(p1, w, u));
        assert!(!m.related(p1, u, v));
        assert!(m.related(p2, u, v));
        assert!(!m.related(p2, w, v));
        for i in sig.players() {
            for x in m.worlds() {
                assert_eq!(m.valuation(x, i), m.game().info(m.assign(x), i));
            }
        }
    }

    #[test]
    fn links_must_respect_game_information() {
        let g = Arc::new(fixtures::game_a());
        let raw = ModelDescription {
            name: "bad".into(),
            game: "fixture_a".into(),
            worlds: vec![("w".into(), "s".into()), ("v".into(), "t".into())],
            links: vec![("2".into(), "w".into(), "v".into())],
            point: None,
        };
        let err = validate_epistemic(&raw, &g).unwrap_err();
        assert!(err
            .to_string()
            .contains("indistinguishability violates game information"));
    }

    #[test]
    fn singleton_model_is_certainty() {
        let m = fixtures::model_a();
        assert!(m.is_certainty());
        assert_eq!(m.game().state_name(m.assign(crate::WorldId(0))), "s");
    }
}
