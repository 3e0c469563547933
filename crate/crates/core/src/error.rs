use thiserror::Error;

use crate::normality::NormalityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature needs at least one player")]
    NoPlayers,
    #[error("signature needs at least one action")]
    NoActions,
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("action `{action}` is assigned to both player `{first}` and player `{second}`")]
    ActionOwnedTwice {
        action: String,
        first: String,
        second: String,
    },
    #[error("atom `{0}` uses the reserved `act_` prefix")]
    ReservedAtom(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("duplicate transition for state `{state}` and action `{action}`")]
    DuplicateTransition { state: String, action: String },
    #[error("mixed-player turn at state `{state}`: `{first}` and `{second}` belong to different players")]
    MixedTurn {
        state: String,
        first: String,
        second: String,
    },
    #[error("action atom `{atom}` at state `{state}` for player `{player}` disagrees with the transitions")]
    ActionAtomMismatch {
        state: String,
        player: String,
        atom: String,
    },
    #[error("game information has wrong shape: {0}")]
    Shape(String),
    #[error("indistinguishability violates game information: player `{player}` links `{left}` and `{right}`")]
    IndistinguishabilityViolation {
        player: String,
        left: String,
        right: String,
    },
    #[error("an epistemic model needs at least one world")]
    EmptyModel,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(&'static str),
    #[error("models are defined over different games")]
    GameMismatch,
    #[error("model is not normal")]
    NotNormal(Box<NormalityReport>),
    #[error("the initial model has {0} worlds; a certainty model has exactly one")]
    NotCertainty(usize),
    #[error("worlds `{left}` and `{right}` are not G-bisimilar")]
    NotBisimilar { left: String, right: String },
    #[error("depth {depth} is smaller than the formula's action depth {needed}")]
    DepthTooSmall { depth: usize, needed: usize },
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            name: name.into(),
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
