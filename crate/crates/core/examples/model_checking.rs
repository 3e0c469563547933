//! The same formula under both semantics: over epistemic models with
//! update products, and over the generated run.

use gamerun::logic::{eval_del, eval_etl, parse_formula};
use gamerun::rules::ObservationModel;
use gamerun::{fixtures, update::generate_run};

fn main() -> gamerun::Result<()> {
    let m = fixtures::model_a_win();
    let sig = m.signature().clone();
    let w = m.require_world("w")?;
    let formulas = [
        "[a] K2 [c] win@2",
        "<a> top <-> act_a@1",
        "TURN1 -> ~TURN2",
        "[a] (Kh2 <d> top & ~K2 win@2)",
        "[b] [c] win@2",
    ];
    for (label, u) in [
        ("identity", ObservationModel::identity(sig.clone())),
        ("blur a/b for 2", fixtures::obs_blur_ab(&sig, "2")),
    ] {
        println!("{label}:");
        for text in formulas {
            let f = parse_formula(text, &sig)?;
            let run = generate_run(&m, &u, f.action_depth())?;
            let del = eval_del(&m, w, &u, &f)?;
            let etl = eval_etl(run.etl(), w, &f)?;
            println!("  {:<48} del={del:<5} etl={etl}", f.display(&sig).to_string());
        }
    }
    Ok(())
}
