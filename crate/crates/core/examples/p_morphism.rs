//! With perfect information the run maps onto the game by a p-morphism;
//! with imperfect information it does not.

use gamerun::structure::{check_p_morphism, induce_epistemic_game, run_assign_map};
use gamerun::{fixtures, update::generate_run};

fn main() -> gamerun::Result<()> {
    for m in [fixtures::model_a_perfect(), fixtures::model_a()] {
        let e = induce_epistemic_game(m.game());
        let u = fixtures::obs_blur_ab(m.signature(), "1");
        let run = generate_run(&m, &u, 2)?;
        let report = check_p_morphism(&run_assign_map(&run), run.etl(), e.etl(), Some(&run.frontier()))?;
        println!(
            "{}: perfect information {}, p-morphism {}",
            m.game().name(),
            e.is_perfect_information(),
            report.passed()
        );
        print!("{}", report.render(run.etl(), e.etl()));
    }
    Ok(())
}
