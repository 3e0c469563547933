//! `etl <name>` / `players` / `actions <p>: ...` / `atoms` / `worlds` /
//! `trans <w> <a> <v>` / `val <w> <p>: <atoms>` / `rel <p>: <w> <v>` / `end`.
//!
//! Valuations list full atom sets, action atoms included; `rel` lines are
//! literal pairs and are not closed under anything.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::format::{block, push_list_line, push_owned_line, unknown_directive, Line};
use crate::ids::{AtomSet, WorldId};
use crate::relation::Relation;
use crate::rules::Signature;

pub fn parse_etl(text: &str) -> Result<EtlModel> {
    let (head, body) = block(text, "etl")?;
    let name = head.exact(1)?[0].to_string();

    let mut players = Vec::new();
    let mut actions = Vec::new();
    let mut atoms = Vec::new();
    let mut worlds: Vec<String> = Vec::new();
    let mut rest: Vec<&Line<'_>> = Vec::new();
    for line in &body {
        let words = || line.args().iter().map(|t| t.text.to_string());
        match line.keyword() {
            "players" => players.extend(words()),
            "atoms" => atoms.extend(words()),
            "worlds" => worlds.extend(words()),
            "actions" => {
                let (p, acts) = line.owned(0)?;
                actions.push((p.to_string(), acts.into_iter().map(String::from).collect()));
            }
            "trans" | "val" | "rel" => rest.push(line),
            _ => return Err(unknown_directive(line)),
        }
    }
    let sig = Arc::new(Signature::new(players, actions, atoms)?);
    let mut index = HashMap::new();
    for (i, w) in worlds.iter().enumerate() {
        if index.insert(w.clone(), WorldId::new(i)).is_some() {
            return Err(Error::Duplicate {
                kind: "world",
                name: w.clone(),
            });
        }
    }

    let n = worlds.len();
    let mut epistemic = vec![Relation::empty(n); sig.player_count()];
    let mut valuation = vec![vec![AtomSet::new(); sig.player_count()]; n];
    let mut trans = Vec::new();
    for line in rest {
        let world = |k: usize| {
            index
                .get(line.tokens[k].text)
                .copied()
                .ok_or_else(|| line.error(k, format!("unknown world `{}`", line.tokens[k].text)))
        };
        let player = |name: &str, k: usize| {
            sig.player(name)
                .ok_or_else(|| line.error(k, format!("unknown player `{name}`")))
        };
        match line.keyword() {
            "trans" => {
                line.exact(3)?;
                let a = sig
                    .action(line.tokens[2].text)
                    .ok_or_else(|| line.error(2, "unknown action"))?;
                trans.push((world(1)?, a, world(3)?));
            }
            "val" => {
                if line.tokens.len() < 2 {
                    return Err(line.error(1, "missing world"));
                }
                let w = world(1)?;
                let (p, names) = line.owned(1)?;
                let i = player(p, 2)?;
                for (k, atom) in names.iter().enumerate() {
                    let id = sig
                        .atom(atom)
                        .ok_or_else(|| line.error(k + 4, format!("unknown atom `{atom}`")))?;
                    valuation[w.index()][i.index()].insert(id);
                }
            }
            _ => {
                let (p, pair) = line.owned(0)?;
                let i = player(p, 1)?;
                if pair.len() != 2 {
                    return Err(line.error(3, "`rel` takes exactly two worlds"));
                }
                epistemic[i.index()].insert(world(3)?.index(), world(4)?.index());
            }
        }
    }
    EtlModel::new(name, sig, worlds, epistemic, trans, valuation)
}

pub fn render_etl(model: &EtlModel) -> String {
    let sig = model.signature();
    let mut out = format!("etl {}\n", model.name());
    push_list_line(&mut out, "players", sig.players().map(|p| sig.player_name(p)));
    for p in sig.players() {
        let acts: Vec<String> = sig.actions_of(p).iter().map(|&a| sig.action_name(a).into()).collect();
        if !acts.is_empty() {
            push_owned_line(&mut out, "actions", &[], sig.player_name(p), &acts);
        }
    }
    if sig.user_atoms().next().is_some() {
        push_list_line(&mut out, "atoms", sig.user_atoms().map(|p| sig.atom_name(p)));
    }
    push_list_line(&mut out, "worlds", model.world_names());
    for (w, a, v) in model.transitions() {
        out.push_str(&format!(
            "trans {} {} {}\n",
            model.world_name(w),
            sig.action_name(a),
            model.world_name(v)
        ));
    }
    for w in model.worlds() {
        for i in sig.players() {
            let atoms: Vec<String> = model
                .valuation(w, i)
                .iter()
                .map(|p| sig.atom_name(p).into())
                .collect();
            if !atoms.is_empty() {
                push_owned_line(&mut out, "val", &[model.world_name(w)], sig.player_name(i), &atoms);
            }
        }
    }
    for i in sig.players() {
        for (a, b) in model.epistemic(i).pairs() {
            let pair = [model.world_names()[a].clone(), model.world_names()[b].clone()];
            push_owned_line(&mut out, "rel", &[], sig.player_name(i), &pair);
        }
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rules::ObservationModel;
    use crate::update::generate_run;

    #[test]
    fn run_models_round_trip() {
        let m = fixtures::model_b();
        let run = generate_run(&m, &fixtures::obs_blur_ab(m.signature(), "2"), 2).unwrap();
        let text = render_etl(run.etl());
        let back = parse_etl(&text).unwrap();
        assert_eq!(&back, run.etl());

        let mc = fixtures::model_c();
        let run = generate_run(&mc, &ObservationModel::identity(mc.signature().clone()), 2).unwrap();
        assert_eq!(&parse_etl(&render_etl(run.etl())).unwrap(), run.etl());
    }

    #[test]
    fn literal_pairs_are_kept() {
        let text = "etl n\nplayers 1\nactions 1: a\nworlds x y\nrel 1: x y\nval x 1: act_a\ntrans x a y\nend\n";
        let n = parse_etl(text).unwrap();
        let p1 = n.signature().player("1").unwrap();
        let (x, y) = (n.require_world("x").unwrap(), n.require_world("y").unwrap());
        assert!(n.related(p1, x, y));
        assert!(!n.related(p1, y, x));
        assert!(!n.related(p1, x, x));
    }

    #[test]
    fn unknown_names_are_positioned() {
        let err = parse_etl("etl n\nplayers 1\nactions 1: a\nworlds x\nval x 1: nope\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, column: 10, .. }), "{err}");
        let err = parse_etl("etl n\nplayers 1\nactions 1: a\nworlds x\ntrans x a z\nend\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, column: 11, .. }), "{err}");
    }
}
