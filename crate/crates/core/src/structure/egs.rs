use crate::etl::EtlModel;
use crate::ids::WorldId;
use crate::relation::{Equivalence, Relation};
use crate::rules::GameStructure;

/// A game seen as an epistemic temporal model: one world per state, and
/// `s ~_i t` iff `i` gets the same information at both.
#[derive(Clone, Debug)]
pub struct EpistemicGameStructure {
    etl: EtlModel,
    perfect_information: bool,
}

impl EpistemicGameStructure {
    /// World `k` is state `k` of the game.
    pub fn etl(&self) -> &EtlModel {
        &self.etl
    }

    pub fn is_perfect_information(&self) -> bool {
        self.perfect_information
    }
}

pub fn induce_epistemic_game(game: &GameStructure) -> EpistemicGameStructure {
    let sig = game.signature();
    let classes: Vec<Equivalence> = sig
        .players()
        .map(|i| Equivalence::from_key(game.state_count(), |s| game.info(crate::ids::StateId::new(s), i)))
        .collect();
    let perfect_information = classes.iter().all(Equivalence::is_identity);
    let valuation = game
        .states()
        .map(|s| sig.players().map(|i| game.info(s, i).clone()).collect())
        .collect();
    let etl = EtlModel::new(
        format!("E({})", game.name()),
        sig.clone(),
        game.states().map(|s| game.state_name(s).to_string()).collect(),
        classes.iter().map(Relation::from_equivalence).collect(),
        game.transitions()
            .map(|(s, a, t)| (WorldId::new(s.index()), a, WorldId::new(t.index()))),
        valuation,
    )
    .expect("games have at least one state");
    EpistemicGameStructure {
        etl,
        perfect_information,
    }
}
