//! Reading a game back out of a normal epistemic temporal model.

use gamerun::format::render_game;
use gamerun::logic::induce_game_from_etl;
use gamerun::{fixtures, update::generate_run, Error};

fn main() -> gamerun::Result<()> {
    let m = fixtures::model_b();
    let u = fixtures::obs_blur_ab(m.signature(), "2");
    let run = generate_run(&m, &u, 2)?;

    match induce_game_from_etl(run.etl(), &u) {
        Err(Error::NotNormal(report)) => {
            println!("raw truncation is not normal:");
            print!("{}", report.render(run.etl()));
        }
        other => println!("{other:?}"),
    }
    let game = induce_game_from_etl(&run.frontier_trimmed(), &u)?;
    print!("{}", render_game(&game));
    Ok(())
}
