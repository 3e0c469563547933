//! Reading and writing the text formats.

use std::sync::Arc;

use gamerun::format::{parse_game, parse_model, parse_observation, render_etl, render_game};
use gamerun::update::generate_run;

const GAME: &str = "\
# matching pennies, sequential, second mover blindfolded
game pennies
players 1 2
actions 1: h1 t1
actions 2: h2 t2
atoms win
states start heads tails hh ht th tt
trans start h1 heads
trans start t1 tails
trans heads h2 hh
trans heads t2 ht
trans tails h2 th
trans tails t2 tt
obs hh 2: win
obs tt 2: win
end
";

const MODEL: &str = "model certain over pennies\nworlds w:start\nend\n";
const OBS: &str = "obsmodel blindfold\nblur 2: h1 t1\nend\n";

fn main() -> gamerun::Result<()> {
    let game = Arc::new(parse_game(GAME)?);
    // action atoms are filled in by the validator
    print!("{}", render_game(&game));
    let m = parse_model(MODEL, &game)?;
    let u = parse_observation(OBS, game.signature())?;
    let run = generate_run(&m, &u, 2)?;
    print!("{}", render_etl(&run.frontier_trimmed()));

    match parse_game("game g\nplayers 1\nactions 1: a\nstates s\ntrans s b s\nend\n") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
