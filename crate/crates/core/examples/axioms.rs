//! Soundness suite for the proof system on the three fixtures.

use gamerun::fixtures;
use gamerun::logic::{axiom_soundness_suite, AxiomConfig};

fn main() -> gamerun::Result<()> {
    let config = AxiomConfig {
        seed: std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1),
        ..Default::default()
    };
    for m in [fixtures::model_a(), fixtures::model_b(), fixtures::model_c()] {
        let u = fixtures::obs_blur_ab(m.signature(), "2");
        let report = axiom_soundness_suite(&m, &u, &config)?;
        println!("{}: {} instances, {} violations", m.game().name(), report.total_instances(), report.total_violations());
        print!("{}", report.render());
    }
    Ok(())
}
