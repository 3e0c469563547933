//! G-bisimulation: the largest one inside a model, and between the product
//! of a normal model's epistemic part and the part itself.

use gamerun::logic::{check_invariance, induce_epistemic_part, largest_g_bisimulation, parse_formula};
use gamerun::update::{generate_run, product};
use gamerun::fixtures;

fn main() -> gamerun::Result<()> {
    let m = fixtures::model_c();
    let z = largest_g_bisimulation(&m, &m)?;
    let pairs: Vec<String> = z
        .pairs()
        .iter()
        .map(|&(w, u)| format!("({}, {})", m.world_name(w), m.world_name(u)))
        .collect();
    println!("Fixture C with itself: {}", pairs.join(" "));

    let m = fixtures::model_b();
    let u = fixtures::obs_blur_ab(m.signature(), "2");
    let n = generate_run(&m, &u, 3)?.frontier_trimmed();
    let part = induce_epistemic_part(&n, &u)?;
    let next = product(&part, &u)?;
    let z = largest_g_bisimulation(next.model(), &part)?;
    println!("\nsuccessors of the trimmed Fixture B run:");
    for (s, a, t) in n.transitions() {
        let x = next.world_for(s, a).unwrap();
        println!(
            "  ({}, {}) ~ {}: {}",
            n.world_name(s),
            n.signature().action_name(a),
            n.world_name(t),
            z.contains(x, t)
        );
    }

    let corpus: Vec<_> = ["K2 <d> top", "[c] K1 top", "Kh2 act_c@2"]
        .iter()
        .map(|t| parse_formula(t, part.signature()))
        .collect::<Result<_, _>>()?;
    let (x, y) = *z.pairs().iter().next().unwrap();
    let report = check_invariance(next.model(), x, &part, y, &u, &corpus)?;
    println!("\ninvariance on {} formulas: {}", report.checked, report.passed());
    Ok(())
}
