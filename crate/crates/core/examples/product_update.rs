//! One update step: Fixture B with player 2 unable to tell `a` from `b`.

use gamerun::format::render_model;
use gamerun::{fixtures, update::product};

fn main() -> gamerun::Result<()> {
    let m = fixtures::model_b();
    let u = fixtures::obs_blur_ab(m.signature(), "2");

    let once = product(&m, &u)?;
    print!("{}", render_model(once.model(), "b-after-one-move"));

    let twice = product(once.model(), &u)?;
    for (k, &(w, a)) in twice.origins().iter().enumerate() {
        let name = twice.model().world_name(gamerun::WorldId::new(k));
        println!("{name} comes from {} by {}", once.model().world_name(w), m.signature().action_name(a));
    }

    // nothing is enabled at the leaves
    let leaf = fixtures::certainty(fixtures::game_b(), "o");
    println!("product at a leaf is empty: {}", product(&leaf, &u)?.is_empty());
    Ok(())
}
