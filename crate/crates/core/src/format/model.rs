use std::sync::Arc;

use crate::error::Result;
use crate::format::{block, push_list_line, push_owned_line, unknown_directive};
use crate::rules::{validate_epistemic, EpistemicModel, GameStructure, ModelDescription};

pub fn parse_model_description(text: &str) -> Result<ModelDescription> {
    let (head, body) = block(text, "model")?;
    let v = head.exact(3)?;
    if v[1] != "over" {
        return Err(head.error(2, "expected `over`"));
    }
    let mut raw = ModelDescription {
        name: v[0].into(),
        game: v[2].into(),
        ..Default::default()
    };
    for line in &body {
        match line.keyword() {
            "worlds" => {
                for (k, tok) in line.args().iter().enumerate() {
                    match tok.text.split_once(':') {
                        Some((w, s)) if !w.is_empty() && !s.is_empty() => {
                            raw.worlds.push((w.into(), s.into()))
                        }
                        _ => return Err(line.error(k + 1, "expected `<world>:<state>`")),
                    }
                }
            }
            "link" => {
                let (player, pair) = line.owned(0)?;
                if pair.len() != 2 {
                    return Err(line.error(3, "`link` takes exactly two worlds"));
                }
                raw.links.push((player.into(), pair[0].into(), pair[1].into()));
            }
            "point" => {
                if raw.point.is_some() {
                    return Err(line.error(0, "duplicate `point`"));
                }
                raw.point = Some(line.exact(1)?[0].into());
            }
            _ => return Err(unknown_directive(line)),
        }
    }
    Ok(raw)
}

/// Parses a model file and validates it against `game`.
pub fn parse_model(text: &str, game: &Arc<GameStructure>) -> Result<EpistemicModel> {
    validate_epistemic(&parse_model_description(text)?, game)
}

pub fn render_model_description(raw: &ModelDescription) -> String {
    let mut out = format!("model {} over {}\n", raw.name, raw.game);
    push_list_line(
        &mut out,
        "worlds",
        raw.worlds.iter().map(|(w, s)| format!("{w}:{s}")),
    );
    for (p, w, u) in &raw.links {
        push_owned_line(&mut out, "link", &[], p, &[w.clone(), u.clone()]);
    }
    if let Some(p) = &raw.point {
        out.push_str(&format!("point {p}\n"));
    }
    out.push_str("end\n");
    out
}

pub fn render_model(model: &EpistemicModel, name: &str) -> String {
    let mut raw = model.describe();
    raw.name = name.into();
    render_model_description(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    #[test]
    fn fixture_c_model_round_trips() {
        let m = fixtures::model_c();
        let text = render_model(&m, "c");
        assert_eq!(parse_model(&text, m.game()).unwrap(), m);
    }

    #[test]
    fn point_and_errors() {
        let g = Arc::new(fixtures::game_c());
        let m = parse_model("model m over fixture_c\nworlds w:s v:s'\npoint v\nend\n", &g).unwrap();
        assert_eq!(m.point(), m.world("v"));
        let err = parse_model("model m over fixture_c\nworlds w\nend\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 8, .. }), "{err}");
        let err = parse_model("model m over other\nworlds w:s\nend\n", &g).unwrap_err();
        assert!(matches!(err, Error::Unknown { kind: "game", .. }));
        let err = parse_model("model m over fixture_c\nworlds w:s\nlink 1: w\nend\n", &g).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
