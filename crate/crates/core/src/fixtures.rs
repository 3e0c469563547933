//! The small games used throughout the tests and examples.
//!
//! - A: `s:1 -a-> t, -b-> t'`, then player 2 picks `c`/`d` at `t` and `t'`,
//!   which look alike to player 2.
//! - B: like A but `c` loops at `t` and `d` loops at `t'`.
//! - C: two roots `s`, `s'` that player 2 cannot tell apart.

use std::sync::Arc;

use crate::format::{parse_game, parse_model};
use crate::rules::{validate_epistemic, EpistemicModel, GameStructure, ModelDescription, ObservationModel, Signature};

pub const GAME_A: &str = include_str!("../data/fixture_a.g");
pub const GAME_A_WIN: &str = include_str!("../data/fixture_a_win.g");
pub const GAME_A_PERFECT: &str = include_str!("../data/fixture_a_perfect.g");
pub const GAME_B: &str = include_str!("../data/fixture_b.g");
pub const GAME_B_MARKED: &str = include_str!("../data/fixture_b_marked.g");
pub const GAME_C: &str = include_str!("../data/fixture_c.g");
pub const MODEL_C: &str = include_str!("../data/fixture_c.m");

fn game(text: &str) -> GameStructure {
    parse_game(text).expect("fixture game is valid")
}

pub fn game_a() -> GameStructure {
    game(GAME_A)
}

/// Fixture A where player 2 observes `win` at `o1` only.
pub fn game_a_win() -> GameStructure {
    game(GAME_A_WIN)
}

pub fn game_a_perfect() -> GameStructure {
    game(GAME_A_PERFECT)
}

pub fn game_b() -> GameStructure {
    game(GAME_B)
}

/// Fixture B where player 2 observes `mark` at `o` only.
pub fn game_b_marked() -> GameStructure {
    game(GAME_B_MARKED)
}

pub fn game_c() -> GameStructure {
    game(GAME_C)
}

/// A certainty model: one world `w` at `state`.
pub fn certainty(game: GameStructure, state: &str) -> EpistemicModel {
    let raw = ModelDescription {
        name: "certain".into(),
        game: game.name().into(),
        worlds: vec![("w".into(), state.into())],
        ..Default::default()
    };
    validate_epistemic(&raw, &Arc::new(game)).expect("state exists")
}

pub fn model_a() -> EpistemicModel {
    certainty(game_a(), "s")
}

pub fn model_a_win() -> EpistemicModel {
    certainty(game_a_win(), "s")
}

pub fn model_a_perfect() -> EpistemicModel {
    certainty(game_a_perfect(), "s")
}

pub fn model_b() -> EpistemicModel {
    certainty(game_b(), "s")
}

pub fn model_b_marked() -> EpistemicModel {
    certainty(game_b_marked(), "s")
}

/// `w:s, u:s, v:s'` with `w ~1 u` and `u ~2 v`.
pub fn model_c() -> EpistemicModel {
    parse_model(MODEL_C, &Arc::new(game_c())).expect("fixture model is valid")
}

/// `player` cannot tell `a` from `b`.
pub fn obs_blur_ab(signature: &Arc<Signature>, player: &str) -> ObservationModel {
    let i = signature.require_player(player).expect("player exists");
    let a = signature.require_action("a").expect("action a");
    let b = signature.require_action("b").expect("action b");
    ObservationModel::from_pairs("blur_ab", signature.clone(), [(i, a, b)])
}

/// Nobody distinguishes any two actions.
pub fn obs_total(signature: &Arc<Signature>) -> ObservationModel {
    let n = signature.action_count();
    let blur = signature
        .players()
        .map(|_| crate::relation::Equivalence::total(n))
        .collect();
    ObservationModel::from_equivalences("total", signature.clone(), blur)
}
