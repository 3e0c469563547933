//! Game trees with perfect recall, the tracking map, and the check that
//! observation is non-informative exactly when the run is the tree.

use gamerun::rules::ObservationModel;
use gamerun::structure::{check_isomorphism, check_non_informative, generate_game_tree, tracking_map};
use gamerun::{fixtures, update::generate_run};

fn main() -> gamerun::Result<()> {
    let m = fixtures::model_b_marked();
    let game = m.game().clone();
    let s = game.require_state("s")?;
    for (label, u) in [
        ("identity", ObservationModel::identity(m.signature().clone())),
        ("blur a/b for 2", fixtures::obs_blur_ab(m.signature(), "2")),
        ("see nothing", fixtures::obs_total(m.signature())),
    ] {
        let run = generate_run(&m, &u, 2)?;
        let tree = generate_game_tree(&game, s, 2)?;
        let g = tracking_map(&run, &tree);
        let ni = check_non_informative(&u, &run);
        let iso = check_isomorphism(&g, &run, &tree)?;
        println!(
            "{label}: non-informative {}, isomorphic {}",
            ni.non_informative(),
            iso.isomorphic()
        );
        print!("{}", ni.render(&run));
    }
    Ok(())
}
