use std::sync::Arc;

use crate::error::Result;
use crate::ids::{ActionId, PlayerId};
use crate::relation::Equivalence;
use crate::rules::signature::Signature;

/// Per-player indistinguishability of actions: `a ↭_i b` means `i` cannot
/// tell which of the two happened. Pairs may cross player boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationModel {
    name: String,
    signature: Arc<Signature>,
    blur: Vec<Equivalence>,
}

/// An observation model as written in a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ObservationDescription {
    pub name: String,
    /// Generator pairs `(player, action, action)`; identity elsewhere.
    pub blur: Vec<(String, String, String)>,
}

pub fn validate_observation(
    raw: &ObservationDescription,
    signature: &Arc<Signature>,
) -> Result<ObservationModel> {
    let mut pairs = Vec::with_capacity(raw.blur.len());
    for (p, a, b) in &raw.blur {
        pairs.push((
            signature.require_player(p)?,
            signature.require_action(a)?,
            signature.require_action(b)?,
        ));
    }
    Ok(ObservationModel::from_pairs(raw.name.clone(), signature.clone(), pairs))
}

impl ObservationModel {
    /// Every player distinguishes every pair of distinct actions.
    pub fn identity(signature: Arc<Signature>) -> Self {
        Self::from_pairs("identity", signature, [])
    }

    pub fn from_pairs(
        name: impl Into<String>,
        signature: Arc<Signature>,
        pairs: impl IntoIterator<Item = (PlayerId, ActionId, ActionId)>,
    ) -> Self {
        let mut generators = vec![Vec::new(); signature.player_count()];
        for (i, a, b) in pairs {
            generators[i.index()].push((a.index(), b.index()));
        }
        let blur = generators
            .into_iter()
            .map(|g| Equivalence::from_pairs(signature.action_count(), g))
            .collect();
        ObservationModel {
            name: name.into(),
            signature,
            blur,
        }
    }

    pub fn from_equivalences(
        name: impl Into<String>,
        signature: Arc<Signature>,
        blur: Vec<Equivalence>,
    ) -> Self {
        assert_eq!(blur.len(), signature.player_count());
        assert!(blur.iter().all(|b| b.len() == signature.action_count()));
        ObservationModel {
            name: name.into(),
            signature,
            blur,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn blur(&self, player: PlayerId) -> &Equivalence {
        &self.blur[player.index()]
    }

    /// `a ↭_i b`.
    #[inline]
    pub fn blurred(&self, player: PlayerId, a: ActionId, b: ActionId) -> bool {
        self.blur[player.index()].related(a.index(), b.index())
    }

    /// Actions `i` confuses with `a` (including `a`), ascending.
    pub fn blurred_with(&self, player: PlayerId, a: ActionId) -> impl Iterator<Item = ActionId> + '_ {
        self.blur[player.index()]
            .class_members(a.index())
            .map(ActionId::new)
    }

    pub fn describe(&self) -> ObservationDescription {
        let sig = &self.signature;
        let mut blur = Vec::new();
        for i in sig.players() {
            for class in self.blur[i.index()].classes() {
                for &b in &class[1..] {
                    blur.push((
                        sig.player_name(i).to_string(),
                        sig.action_name(ActionId(class[0])).to_string(),
                        sig.action_name(ActionId(b)).to_string(),
                    ));
                }
            }
        }
        ObservationDescription {
            name: self.name.clone(),
            blur,
        }
    }
}
