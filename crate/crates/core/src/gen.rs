//! Seeded random games, models, observation models and formulas for the
//! property tests and the acceptance corpus.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ids::{ActionId, PlayerId};
use crate::logic::Formula;
use crate::rules::{
    validate_epistemic, validate_game, EpistemicModel, GameDescription, GameStructure,
    ModelDescription, ObservationModel, Signature,
};

#[derive(Clone, Debug)]
pub struct InstanceConfig {
    pub players: usize,
    pub max_states: usize,
    pub max_actions: usize,
    pub max_atoms: usize,
    pub max_worlds: usize,
    /// Every player gets different information at every state.
    pub perfect_information: bool,
    /// Exactly one initial world.
    pub certainty: bool,
    /// Allow transitions back to earlier states.
    pub cycles: bool,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        InstanceConfig {
            players: 2,
            max_states: 6,
            max_actions: 4,
            max_atoms: 4,
            max_worlds: 3,
            perfect_information: false,
            certainty: false,
            cycles: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub game: Arc<GameStructure>,
    pub model: EpistemicModel,
    pub observation: ObservationModel,
}

const ACTION_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
const ATOM_NAMES: [&str; 8] = ["p", "q", "r", "x", "y", "z", "u", "v"];

/// A random valid game. With `perfect`, each player sees a distinct atom
/// set at every state.
pub fn random_game<R: Rng + ?Sized>(rng: &mut R, cfg: &InstanceConfig, perfect: bool) -> GameStructure {
    let players: Vec<String> = (1..=cfg.players).map(|i| i.to_string()).collect();
    let n_states = rng.gen_range(1..=cfg.max_states);
    let n_actions = rng.gen_range(1..=cfg.max_actions.min(ACTION_NAMES.len()));
    let needed_atoms = if perfect {
        usize::BITS as usize - (n_states - 1).leading_zeros() as usize
    } else {
        0
    };
    let n_atoms = rng
        .gen_range(0..=cfg.max_atoms)
        .max(needed_atoms)
        .min(ATOM_NAMES.len());
    let states: Vec<String> = (0..n_states).map(|k| format!("s{k}")).collect();
    let atoms: Vec<String> = ATOM_NAMES[..n_atoms].iter().map(|s| s.to_string()).collect();

    let mut owned: Vec<Vec<String>> = vec![Vec::new(); players.len()];
    for a in &ACTION_NAMES[..n_actions] {
        owned[rng.gen_range(0..players.len())].push(a.to_string());
    }

    let mut trans = Vec::new();
    for (k, s) in states.iter().enumerate() {
        if rng.gen_bool(0.25) {
            continue;
        }
        let mover = rng.gen_range(0..players.len());
        for a in &owned[mover] {
            let lo = if cfg.cycles { 0 } else { k + 1 };
            if lo >= n_states || !rng.gen_bool(0.7) {
                continue;
            }
            trans.push((s.clone(), a.clone(), states[rng.gen_range(lo..n_states)].clone()));
        }
    }

    let mut obs = Vec::new();
    for p in &players {
        let mut codes: Vec<usize> = (0..1usize << n_atoms).collect();
        codes.shuffle(rng);
        for (k, s) in states.iter().enumerate() {
            let code = if perfect {
                codes[k]
            } else {
                // sparse, so that equal information is common
                (0..n_atoms).filter(|_| rng.gen_bool(0.3)).map(|b| 1 << b).sum()
            };
            let set: Vec<String> = (0..n_atoms)
                .filter(|b| code & (1 << b) != 0)
                .map(|b| atoms[b].clone())
                .collect();
            if !set.is_empty() {
                obs.push((s.clone(), p.clone(), set));
            }
        }
    }

    let raw = GameDescription {
        name: "random".into(),
        players: players.clone(),
        actions: players
            .iter()
            .cloned()
            .zip(owned)
            .filter(|(_, acts)| !acts.is_empty())
            .collect(),
        atoms,
        states,
        trans,
        obs,
    };
    validate_game(&raw).expect("generated games are valid")
}

/// A random epistemic model whose links respect the game information.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, game: &Arc<GameStructure>, max_worlds: usize) -> EpistemicModel {
    let n = rng.gen_range(1..=max_worlds.max(1));
    let states: Vec<_> = game.states().collect();
    let worlds: Vec<(String, String)> = (0..n)
        .map(|k| {
            let s = *states.choose(rng).unwrap();
            (format!("w{k}"), game.state_name(s).to_string())
        })
        .collect();
    let sig = game.signature();
    let mut links = Vec::new();
    for i in sig.players() {
        for x in 0..n {
            for y in x + 1..n {
                let sx = game.require_state(&worlds[x].1).unwrap();
                let sy = game.require_state(&worlds[y].1).unwrap();
                if game.info(sx, i) == game.info(sy, i) && rng.gen_bool(0.6) {
                    links.push((sig.player_name(i).to_string(), worlds[x].0.clone(), worlds[y].0.clone()));
                }
            }
        }
    }
    let raw = ModelDescription {
        name: "random".into(),
        game: game.name().into(),
        worlds,
        links,
        point: None,
    };
    validate_epistemic(&raw, game).expect("generated links are compatible")
}

/// Random blur: each pair of actions is a generator with probability 0.3,
/// independently per player.
pub fn random_observation<R: Rng + ?Sized>(rng: &mut R, sig: &Arc<Signature>) -> ObservationModel {
    let mut pairs = Vec::new();
    for i in sig.players() {
        for a in sig.actions() {
            for b in sig.actions().filter(|&b| b > a) {
                if rng.gen_bool(0.3) {
                    pairs.push((i, a, b));
                }
            }
        }
    }
    ObservationModel::from_pairs("random", sig.clone(), pairs)
}

pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, cfg: &InstanceConfig) -> Instance {
    let game = Arc::new(random_game(rng, cfg, cfg.perfect_information));
    let worlds = if cfg.certainty { 1 } else { cfg.max_worlds };
    let model = random_model(rng, &game, worlds);
    let observation = random_observation(rng, game.signature());
    Instance {
        game,
        model,
        observation,
    }
}

/// A random formula with at most `action_depth` nested boxes and roughly
/// `size` connectives. Connectives are drawn uniformly; atoms range over
/// the whole signature, action atoms included.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, action_depth: usize, size: usize) -> Formula {
    if size == 0 || rng.gen_bool(0.15) {
        return leaf(rng, sig);
    }
    let player = |rng: &mut R| PlayerId::new(rng.gen_range(0..sig.player_count()));
    let action = |rng: &mut R| ActionId::new(rng.gen_range(0..sig.action_count()));
    let kinds = if action_depth > 0 { 9 } else { 7 };
    let sub = size - 1;
    match rng.gen_range(0..kinds) {
        0 => Formula::not(random_formula(rng, sig, action_depth, sub)),
        1..=4 => {
            let left = rng.gen_range(0..=sub);
            let f = random_formula(rng, sig, action_depth, left);
            let g = random_formula(rng, sig, action_depth, sub - left);
            match rng.gen_range(0..4) {
                0 => Formula::and(f, g),
                1 => Formula::or(f, g),
                2 => Formula::implies(f, g),
                _ => Formula::iff(f, g),
            }
        }
        5 => {
            let i = player(rng);
            Formula::know(i, random_formula(rng, sig, action_depth, sub))
        }
        6 => {
            let i = player(rng);
            Formula::hat_know(i, random_formula(rng, sig, action_depth, sub))
        }
        7 => {
            let a = action(rng);
            Formula::boxed(a, random_formula(rng, sig, action_depth - 1, sub))
        }
        _ => {
            let a = action(rng);
            Formula::diamond(a, random_formula(rng, sig, action_depth - 1, sub))
        }
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, sig: &Signature) -> Formula {
    if rng.gen_bool(0.15) {
        return Formula::Top;
    }
    let p = crate::ids::AtomId::new(rng.gen_range(0..sig.atom_count()));
    let i = PlayerId::new(rng.gen_range(0..sig.player_count()));
    Formula::atom(p, i)
}
