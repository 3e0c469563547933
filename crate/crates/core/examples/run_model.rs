//! Run models of the three fixtures, with DOT output for Fixture B.
//!
//! `cargo run --example run_model -- out.dot` also writes the graph.

use gamerun::dot::{to_dot, DotSource};
use gamerun::rules::ObservationModel;
use gamerun::{fixtures, update::generate_run};

fn main() -> gamerun::Result<()> {
    let cases = [
        ("A", fixtures::model_a(), None, 2),
        ("B", fixtures::model_b(), Some("2"), 2),
        ("C", fixtures::model_c(), None, 1),
    ];
    for (label, m, blur, depth) in cases {
        let u = match blur {
            Some(p) => fixtures::obs_blur_ab(m.signature(), p),
            None => ObservationModel::identity(m.signature().clone()),
        };
        let run = generate_run(&m, &u, depth)?;
        let sizes: Vec<usize> = (0..=depth).map(|k| run.layer_size(k)).collect();
        println!("fixture {label}: layers {sizes:?}, {} action edges", run.etl().transition_count());
        let n = run.etl();
        for (i, w, v) in n.proper_epistemic_edges() {
            println!("  {} ~{} {}", n.world_name(w), n.signature().player_name(i), n.world_name(v));
        }
        if label == "B" {
            let dot = to_dot(DotSource::Run(&run));
            match std::env::args().nth(1) {
                Some(path) => std::fs::write(path, dot)?,
                None => print!("{dot}"),
            }
        }
    }
    Ok(())
}
