use std::sync::Arc;

use crate::error::Result;
use crate::format::{block, push_owned_line, unknown_directive};
use crate::rules::{validate_observation, ObservationDescription, ObservationModel, Signature};

pub fn parse_observation_description(text: &str) -> Result<ObservationDescription> {
    let (head, body) = block(text, "obsmodel")?;
    let mut raw = ObservationDescription {
        name: head.exact(1)?[0].into(),
        blur: Vec::new(),
    };
    for line in &body {
        match line.keyword() {
            "blur" => {
                let (player, pair) = line.owned(0)?;
                if pair.len() != 2 {
                    return Err(line.error(3, "`blur` takes exactly two actions"));
                }
                raw.blur.push((player.into(), pair[0].into(), pair[1].into()));
            }
            _ => return Err(unknown_directive(line)),
        }
    }
    Ok(raw)
}

pub fn parse_observation(text: &str, signature: &Arc<Signature>) -> Result<ObservationModel> {
    validate_observation(&parse_observation_description(text)?, signature)
}

pub fn render_observation_description(raw: &ObservationDescription) -> String {
    let mut out = format!("obsmodel {}\n", raw.name);
    for (p, a, b) in &raw.blur {
        push_owned_line(&mut out, "blur", &[], p, &[a.clone(), b.clone()]);
    }
    out.push_str("end\n");
    out
}

pub fn render_observation(obs: &ObservationModel) -> String {
    render_observation_description(&obs.describe())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn blur_file_round_trips() {
        let g = fixtures::game_b();
        let u = parse_observation("obsmodel u\nblur 2: a b\nend\n", g.signature()).unwrap();
        let (p2, a, b) = (
            g.signature().player("2").unwrap(),
            g.signature().action("a").unwrap(),
            g.signature().action("b").unwrap(),
        );
        assert!(u.blurred(p2, a, b));
        assert!(!u.blurred(g.signature().player("1").unwrap(), a, b));
        assert_eq!(parse_observation(&render_observation(&u), g.signature()).unwrap(), u);
    }

    #[test]
    fn unknown_action_is_rejected() {
        let g = fixtures::game_b();
        assert!(parse_observation("obsmodel u\nblur 2: a z\nend\n", g.signature()).is_err());
    }
}
