//! Normality of generated runs, and what a violation looks like.

use gamerun::format::parse_etl;
use gamerun::normality::check_normality;
use gamerun::rules::ObservationModel;
use gamerun::{fixtures, update::generate_run};

const BROKEN: &str = "\
etl broken
players 1 2
actions 1: a
actions 2: c
atoms p
worlds s t u
trans s a t
trans s c u
val s 1: act_a
val s 2: act_c p
rel 1: s s
rel 1: t t
rel 1: u u
rel 2: s s
rel 2: t t
rel 2: u u
rel 2: s t
end
";

fn main() -> gamerun::Result<()> {
    let m = fixtures::model_c();
    let u = ObservationModel::identity(m.signature().clone());
    let run = generate_run(&m, &u, 3)?;
    let report = check_normality(run.etl(), &u, Some(&run.frontier()))?;
    println!("Fixture C run at depth 3:");
    print!("{}", report.render(run.etl()));

    let strict = check_normality(run.etl(), &u, None)?;
    println!("\nsame run without the frontier exemption:");
    print!("{}", strict.render(run.etl()));

    let trimmed = run.frontier_trimmed();
    println!("\nfrontier-trimmed: {}", check_normality(&trimmed, &u, None)?.passed());

    let n = parse_etl(BROKEN)?;
    let u = ObservationModel::identity(n.signature().clone());
    println!("\na hand-written model:");
    print!("{}", check_normality(&n, &u, None)?.render(&n));
    Ok(())
}
