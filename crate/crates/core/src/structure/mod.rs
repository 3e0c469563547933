//! Comparing rules with runs: the induced epistemic game structure,
//! p-morphisms, game trees with perfect recall, and the tracking map.

mod egs;
mod pmorph;
mod tracking;
mod tree;

pub use egs::{induce_epistemic_game, EpistemicGameStructure};
pub use pmorph::{check_p_morphism, run_assign_map, PMorphismDefect, PMorphismReport};
pub use tracking::{
    check_isomorphism, check_non_informative, tracking_map, IsomorphismDefect, IsomorphismReport,
    NonInformativeReport, NonInformativeWitness,
};
pub use tree::{generate_game_tree, EpistemicGameTree};
