//! Game runs from game rules and player assumptions.
//!
//! A game structure fixes the rules, an epistemic model says what the
//! players are unsure about at the start, and an observation model says
//! which actions each player can tell apart. Updating the model with the
//! observation model over and over gives the run model, an epistemic
//! temporal structure whose layers are what the players consider possible
//! after each move.
//!
//! ```
//! use gamerun::{fixtures, rules::ObservationModel, update::generate_run};
//!
//! let m = fixtures::model_b();
//! let u = fixtures::obs_blur_ab(m.signature(), "2");
//! let run = generate_run(&m, &u, 2).unwrap();
//! assert_eq!(run.world_count(), 7);
//! assert_eq!(run.etl().proper_epistemic_edge_count(), 1);
//! # let _ = ObservationModel::identity(m.signature().clone());
//! ```

pub mod cli;
pub mod dot;
pub mod error;
pub mod etl;
pub mod fixtures;
pub mod format;
pub mod gen;
pub mod ids;
pub mod logic;
pub mod normality;
pub mod relation;
pub mod rules;
pub mod structure;
pub mod update;

pub use error::{Error, Result};
pub use ids::{ActionId, AtomId, AtomSet, PlayerId, StateId, WorldId};
