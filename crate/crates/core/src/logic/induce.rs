//! Reading a game and an epistemic model back out of a normal epistemic
//! temporal model.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::ids::StateId;
use crate::normality::check_normality;
use crate::rules::{EpistemicModel, GameStructure, ObservationModel};

fn require_normal(n: &EtlModel, obs: &ObservationModel) -> Result<()> {
    let report = check_normality(n, obs, None)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::NotNormal(Box::new(report)))
    }
}

/// The game induced by `N`: states are worlds, moves are transitions and
/// the information is the valuation.
pub fn induce_game_from_etl(n: &EtlModel, obs: &ObservationModel) -> Result<GameStructure> {
    require_normal(n, obs)?;
    let sig = n.signature().clone();
    let info = n
        .worlds()
        .map(|w| sig.players().map(|i| n.valuation(w, i).clone()).collect())
        .collect();
    let transitions: Vec<_> = n
        .transitions()
        .map(|(w, a, v)| (StateId::new(w.index()), a, StateId::new(v.index())))
        .collect();
    GameStructure::new(n.name(), sig, n.world_names().to_vec(), transitions, info)
}

/// The epistemic part of `N` over its induced game; `assign` is the
/// identity.
pub fn induce_epistemic_part(n: &EtlModel, obs: &ObservationModel) -> Result<EpistemicModel> {
    let game = Arc::new(induce_game_from_etl(n, obs)?);
    let indist = game
        .signature()
        .players()
        .map(|i| {
            n.epistemic(i)
                .to_equivalence()
                .expect("normal models have equivalence relations")
        })
        .collect();
    let assign = (0..n.world_count()).map(StateId::new).collect();
    EpistemicModel::new(game, n.world_names().to_vec(), assign, indist, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::format::parse_etl;
    use crate::normality::{Condition, Witness};
    use crate::update::generate_run;

    #[test]
    fn trimmed_fixture_a_run_induces_a_game() {
        let m = fixtures::model_a();
        let u = ObservationModel::identity(m.signature().clone());
        let run = generate_run(&m, &u, 1).unwrap();
        // the raw truncation promises c and d at the frontier
        assert!(matches!(induce_game_from_etl(run.etl(), &u), Err(Error::NotNormal(_))));
        let trimmed = run.frontier_trimmed();
        let g = induce_game_from_etl(&trimmed, &u).unwrap();
        for s in g.states() {
            let w = crate::WorldId::new(s.index());
            assert_eq!(g.available_actions(s).unwrap(), trimmed.act(w));
        }
        let em = induce_epistemic_part(&trimmed, &u).unwrap();
        assert!(em.worlds().all(|w| em.assign(w).index() == w.index()));
    }

    #[test]
    fn det_and_info_violations_carry_witnesses() {
        let det = "etl bad\nplayers 1\nactions 1: a\nworlds s t u\n\
                   trans s a t\ntrans s a u\nval s 1: act_a\n\
                   rel 1: s s\nrel 1: t t\nrel 1: u u\nend\n";
        let n = parse_etl(det).unwrap();
        let u = ObservationModel::identity(n.signature().clone());
        match induce_game_from_etl(&n, &u) {
            Err(Error::NotNormal(report)) => {
                assert!(matches!(report.condition(Condition::Det).witnesses[0], Witness::Det { .. }))
            }
            other => panic!("{other:?}"),
        }
        let info = "etl bad\nplayers 1\nactions 1: a\nworlds s t\n\
                    trans s a t\nrel 1: s s\nrel 1: t t\nend\n";
        let n = parse_etl(info).unwrap();
        match induce_epistemic_part(&n, &u) {
            Err(Error::NotNormal(report)) => assert_eq!(report.condition(Condition::Info).total, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ke_violation_is_rejected() {
        let text = "etl bad\nplayers 1\nactions 1: a\natoms p\nworlds s t\nval s 1: p\n\
                    rel 1: s s\nrel 1: t t\nrel 1: s t\nrel 1: t s\nend\n";
        let n = parse_etl(text).unwrap();
        let u = ObservationModel::identity(n.signature().clone());
        assert!(matches!(induce_epistemic_part(&n, &u), Err(Error::NotNormal(_))));
    }
}
