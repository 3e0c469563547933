use crate::error::Result;
use crate::format::{block, push_list_line, push_owned_line, unknown_directive};
use crate::rules::{validate_game, GameDescription, GameStructure};

pub fn parse_game_description(text: &str) -> Result<GameDescription> {
    let (head, body) = block(text, "game")?;
    let mut raw = GameDescription {
        name: head.exact(1)?[0].to_string(),
        ..Default::default()
    };
    for line in &body {
        let owned = |v: Vec<&str>| v.into_iter().map(String::from).collect::<Vec<_>>();
        match line.keyword() {
            "players" => raw.players.extend(owned(line.args().iter().map(|t| t.text).collect())),
            "atoms" => raw.atoms.extend(owned(line.args().iter().map(|t| t.text).collect())),
            "states" => raw.states.extend(owned(line.args().iter().map(|t| t.text).collect())),
            "actions" => {
                let (player, acts) = line.owned(0)?;
                raw.actions.push((player.to_string(), owned(acts)));
            }
            "trans" => {
                let v = line.exact(3)?;
                raw.trans.push((v[0].into(), v[1].into(), v[2].into()));
            }
            "obs" => {
                if line.tokens.len() < 2 {
                    return Err(line.error(1, "missing state"));
                }
                let (player, atoms) = line.owned(1)?;
                raw.obs
                    .push((line.tokens[1].text.into(), player.into(), owned(atoms)));
            }
            _ => return Err(unknown_directive(line)),
        }
    }
    Ok(raw)
}

/// Parses and validates a game file.
pub fn parse_game(text: &str) -> Result<GameStructure> {
    validate_game(&parse_game_description(text)?)
}

pub fn render_game_description(raw: &GameDescription) -> String {
    let mut out = format!("game {}\n", raw.name);
    push_list_line(&mut out, "players", &raw.players);
    for (p, acts) in &raw.actions {
        push_owned_line(&mut out, "actions", &[], p, acts);
    }
    if !raw.atoms.is_empty() {
        push_list_line(&mut out, "atoms", &raw.atoms);
    }
    push_list_line(&mut out, "states", &raw.states);
    for (s, a, t) in &raw.trans {
        out.push_str(&format!("trans {s} {a} {t}\n"));
    }
    for (s, p, atoms) in &raw.obs {
        push_owned_line(&mut out, "obs", &[s], p, atoms);
    }
    out.push_str("end\n");
    out
}

/// The canonical rendering; `parse_game` inverts it.
pub fn render_game(game: &GameStructure) -> String {
    render_game_description(&game.describe())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;
    use crate::gen::{random_game, InstanceConfig};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixture_files_round_trip() {
        for g in [fixtures::game_a(), fixtures::game_a_win(), fixtures::game_b(), fixtures::game_c()] {
            let text = render_game(&g);
            assert_eq!(parse_game(&text).unwrap(), g);
            assert_eq!(render_game(&parse_game(&text).unwrap()), text);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_game("game g\nplayers 1\nactions 1 a\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 11, .. }), "{err}");
        let err = parse_game("game g\nplayers 1\nactions 1: a\nstates s\nwat s\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, column: 1, .. }), "{err}");
        let err = parse_game("game g\nplayers 1\nactions 1: a\nstates s\ntrans s a\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
    }

    #[test]
    fn colon_may_be_detached() {
        let g = parse_game(
            "game g\nplayers 1\nactions 1 : a\natoms p\nstates s t\ntrans s a t\nobs t 1 : p\nend\n",
        )
        .unwrap();
        let t = g.require_state("t").unwrap();
        let p1 = g.signature().player("1").unwrap();
        assert_eq!(g.info(t, p1).len(), 1);
    }

    proptest! {
        #[test]
        fn random_games_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_game(&mut rng, &InstanceConfig::default(), false);
            let text = render_game(&g);
            prop_assert_eq!(parse_game(&text).unwrap(), g);
        }
    }
}
