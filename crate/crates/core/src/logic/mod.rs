//! LDEL: formulas, the two semantics, G-bisimulation, reading games back
//! out of normal models, and the soundness suite for the proof system.

mod axioms;
mod bisim;
mod formula;
mod induce;
mod parse;
mod semantics;

pub use axioms::{axiom_soundness_suite, AxiomConfig, AxiomReport, AxiomRow, AXIOM_NAMES};
pub use bisim::{
    check_invariance, is_g_bisimulation, largest_g_bisimulation, BisimDefect, GBisimulation, InvarianceReport,
};
pub use formula::{modal_action_depth, Formula};
pub use induce::{induce_epistemic_part, induce_game_from_etl};
pub use parse::parse_formula;
pub use semantics::{eval_del, eval_etl, etl_truth, DelChecker};
