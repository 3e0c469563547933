//! Graphviz export. Nodes are labelled `id:state`, action edges are solid
//! and labelled with the action, epistemic edges are dashed, undirected
//! and labelled with the player. Reflexive epistemic edges are left out
//! and each layer shares a rank.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::etl::EtlModel;
use crate::ids::WorldId;
use crate::structure::EpistemicGameTree;
use crate::update::RunModel;

#[derive(Clone, Copy, Debug)]
pub enum DotSource<'a> {
    /// A bare model: labels are world names and there are no ranks.
    Etl(&'a EtlModel),
    Run(&'a RunModel),
    Tree(&'a EpistemicGameTree),
}

pub fn to_dot(source: DotSource<'_>) -> String {
    match source {
        DotSource::Etl(n) => render(n, n.world_names().to_vec(), Vec::new()),
        DotSource::Run(run) => {
            let game = run.game();
            let labels = (0..run.world_count())
                .map(|k| {
                    let w = WorldId::new(k);
                    format!("{}:{}", run.world_name(w), game.state_name(run.assign(w)))
                })
                .collect();
            let layers = (0..=run.depth()).map(|k| run.layer(k).collect()).collect();
            render(run.etl(), labels, layers)
        }
        DotSource::Tree(tree) => {
            let n = tree.etl();
            let labels = n
                .worlds()
                .map(|x| format!("{}:{}", n.world_name(x), tree.state_name(x)))
                .collect();
            let layers = (0..=tree.depth()).map(|k| tree.layer(k).collect()).collect();
            render(n, labels, layers)
        }
    }
}

pub fn export_dot(source: DotSource<'_>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_dot(source))?;
    Ok(())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render(n: &EtlModel, labels: Vec<String>, layers: Vec<Vec<WorldId>>) -> String {
    let sig = n.signature();
    let id = |w: WorldId| quote(n.world_name(w));
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(n.name())).unwrap();
    for w in n.worlds() {
        writeln!(out, "  {} [label={}];", id(w), quote(&labels[w.index()])).unwrap();
    }
    for layer in &layers {
        if layer.len() > 1 {
            let ids: Vec<String> = layer.iter().map(|&w| id(w)).collect();
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
    }
    for (w, a, v) in n.transitions() {
        writeln!(out, "  {} -> {} [label={}];", id(w), id(v), quote(sig.action_name(a))).unwrap();
    }
    for (i, w, v) in n.proper_epistemic_edges() {
        writeln!(
            out,
            "  {} -> {} [dir=none, style=dashed, label={}];",
            id(w),
            id(v),
            quote(sig.player_name(i))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rules::ObservationModel;
    use crate::structure::generate_game_tree;
    use crate::update::generate_run;

    fn dashed(dot: &str) -> Vec<&str> {
        dot.lines().filter(|l| l.contains("style=dashed")).collect()
    }

    #[test]
    fn fixture_b_has_the_wa_wb_edge() {
        let m = fixtures::model_b();
        let run = generate_run(&m, &fixtures::obs_blur_ab(m.signature(), "2"), 2).unwrap();
        let dot = to_dot(DotSource::Run(&run));
        assert_eq!(dashed(&dot), vec!["  \"wa\" -> \"wb\" [dir=none, style=dashed, label=\"2\"];"]);
        assert!(dot.contains("\"wa\" [label=\"wa:t\"];"));
        assert!(dot.contains("{ rank=same; \"wa\"; \"wb\"; }"));
    }

    #[test]
    fn depth_zero_run_is_one_node() {
        let m = fixtures::model_a();
        let run = generate_run(&m, &ObservationModel::identity(m.signature().clone()), 0).unwrap();
        let dot = to_dot(DotSource::Run(&run));
        assert_eq!(dot.lines().filter(|l| l.contains("label=")).count(), 1);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn fixture_c_layer_one_edges() {
        let m = fixtures::model_c();
        let run = generate_run(&m, &ObservationModel::identity(m.signature().clone()), 1).unwrap();
        let dot = to_dot(DotSource::Run(&run));
        let layer_one: Vec<_> = dashed(&dot)
            .into_iter()
            .filter(|l| ["\"wa\"", "\"ua\"", "\"vb\""].iter().any(|n| l.starts_with(&format!("  {n}"))))
            .collect();
        assert_eq!(layer_one.len(), 1);
        assert!(layer_one[0].contains("\"ua\"") && layer_one[0].contains("\"wa\""));
        assert!(layer_one[0].ends_with("[dir=none, style=dashed, label=\"1\"];"));
        // layer 0 still shows the initial u ~2 v
        assert!(dot.contains("\"u\" -> \"v\" [dir=none, style=dashed, label=\"2\"];"));
    }

    #[test]
    fn output_is_deterministic_and_written() {
        let g = fixtures::game_a();
        let tree = generate_game_tree(&g, g.require_state("s").unwrap(), 2).unwrap();
        let a = to_dot(DotSource::Tree(&tree));
        assert_eq!(a, to_dot(DotSource::Tree(&tree)));
        assert!(a.contains("\"sa\" -> \"sb\" [dir=none, style=dashed, label=\"2\"];"));
        assert!(a.contains("\"sac\" [label=\"sac:o1\"];"));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tree.dot");
        export_dot(DotSource::Etl(tree.etl()), &path).unwrap();
        assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
        assert!(export_dot(DotSource::Tree(&tree), dir.path().join("missing/x.dot")).is_err());
    }
}
