//! G-bisimulation between epistemic models over one game.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ids::WorldId;
use crate::logic::{DelChecker, Formula};
use crate::rules::{EpistemicModel, ObservationModel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBisimulation {
    pairs: BTreeSet<(WorldId, WorldId)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BisimDefect {
    Inv,
    /// `w ~_i w'` has no matching `u ~_i u'`.
    Zig { player: crate::ids::PlayerId, left: WorldId },
    /// `u ~_i u'` has no matching `w ~_i w'`.
    Zag { player: crate::ids::PlayerId, right: WorldId },
}

impl GBisimulation {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (WorldId, WorldId)>) -> Self {
        GBisimulation {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn contains(&self, w: WorldId, u: WorldId) -> bool {
        self.pairs.contains(&(w, u))
    }

    pub fn pairs(&self) -> &BTreeSet<(WorldId, WorldId)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every pair checked against Inv, Zig and Zag; returns the failures.
    pub fn verify(&self, m: &EpistemicModel, n: &EpistemicModel) -> Vec<(WorldId, WorldId, BisimDefect)> {
        let mut out = Vec::new();
        for &(w, u) in &self.pairs {
            if let Some(d) = pair_defect(m, n, w, u, |x, y| self.pairs.contains(&(x, y))) {
                out.push((w, u, d));
            }
        }
        out
    }
}

fn same_game(m: &EpistemicModel, n: &EpistemicModel) -> Result<()> {
    if Arc::ptr_eq(m.game(), n.game()) || **m.game() == **n.game() {
        Ok(())
    } else {
        Err(Error::GameMismatch)
    }
}

fn pair_defect(
    m: &EpistemicModel,
    n: &EpistemicModel,
    w: WorldId,
    u: WorldId,
    z: impl Fn(WorldId, WorldId) -> bool,
) -> Option<BisimDefect> {
    if m.assign(w) != n.assign(u) {
        return Some(BisimDefect::Inv);
    }
    for i in m.signature().players() {
        for w2 in m.indist(i).class_members(w.index()).map(WorldId::new) {
            if !n.indist(i).class_members(u.index()).any(|u2| z(w2, WorldId::new(u2))) {
                return Some(BisimDefect::Zig { player: i, left: w2 });
            }
        }
        for u2 in n.indist(i).class_members(u.index()).map(WorldId::new) {
            if !m.indist(i).class_members(w.index()).any(|w2| z(WorldId::new(w2), u2)) {
                return Some(BisimDefect::Zag { player: i, right: u2 });
            }
        }
    }
    None
}

/// Whether `rel` is a G-bisimulation between `m` and `n`.
pub fn is_g_bisimulation(m: &EpistemicModel, n: &EpistemicModel, rel: &BTreeSet<(WorldId, WorldId)>) -> bool {
    rel.iter()
        .all(|&(w, u)| pair_defect(m, n, w, u, |x, y| rel.contains(&(x, y))).is_none())
}

/// The largest G-bisimulation: start from all pairs on the same state and
/// drop pairs failing Zig or Zag until nothing changes.
pub fn largest_g_bisimulation(m: &EpistemicModel, n: &EpistemicModel) -> Result<GBisimulation> {
    same_game(m, n)?;
    let cols = n.world_count();
    let mut z = vec![false; m.world_count() * cols];
    for w in m.worlds() {
        for u in n.worlds() {
            z[w.index() * cols + u.index()] = m.assign(w) == n.assign(u);
        }
    }
    loop {
        let mut changed = false;
        for w in m.worlds() {
            for u in n.worlds() {
                let k = w.index() * cols + u.index();
                if z[k] && pair_defect(m, n, w, u, |x, y| z[x.index() * cols + y.index()]).is_some() {
                    z[k] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(GBisimulation::from_pairs(
        m.worlds()
            .flat_map(|w| n.worlds().map(move |u| (w, u)))
            .filter(|&(w, u)| z[w.index() * cols + u.index()]),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub checked: usize,
    /// Indices into the corpus where the two worlds disagree.
    pub disagreements: Vec<usize>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Evaluates every corpus formula at `M, w` and `N, u`, which must be
/// G-bisimilar.
pub fn check_invariance(
    m: &EpistemicModel,
    w: WorldId,
    n: &EpistemicModel,
    u: WorldId,
    obs: &ObservationModel,
    corpus: &[Formula],
) -> Result<InvarianceReport> {
    let z = largest_g_bisimulation(m, n)?;
    if !z.contains(w, u) {
        return Err(Error::NotBisimilar {
            left: m.world_name(w).into(),
            right: n.world_name(u).into(),
        });
    }
    let mut left = DelChecker::new(m, obs)?;
    let mut right = DelChecker::new(n, obs)?;
    let mut disagreements = Vec::new();
    for (k, f) in corpus.iter().enumerate() {
        if left.eval(w, f)? != right.eval(u, f)? {
            disagreements.push(k);
        }
    }
    Ok(InvarianceReport {
        checked: corpus.len(),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{random_formula, random_instance, InstanceConfig};
    use crate::logic::induce_epistemic_part;
    use crate::update::{generate_run, product};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute force: no superset `Z ∪ S` with `S ⊆ Z0 \ Z` non-empty is a
    /// G-bisimulation.
    fn assert_maximal(m: &EpistemicModel, n: &EpistemicModel, z: &GBisimulation) -> bool {
        let rest: Vec<_> = m
            .worlds()
            .flat_map(|w| n.worlds().map(move |u| (w, u)))
            .filter(|&(w, u)| m.assign(w) == n.assign(u) && !z.contains(w, u))
            .collect();
        if rest.len() > 14 {
            return false;
        }
        for mask in 1u32..(1 << rest.len()) {
            let mut bigger = z.pairs().clone();
            for (k, &p) in rest.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    bigger.insert(p);
                }
            }
            assert!(!is_g_bisimulation(m, n, &bigger), "larger bisimulation exists");
        }
        true
    }

    #[test]
    fn identity_is_contained() {
        let m = fixtures::model_c();
        let z = largest_g_bisimulation(&m, &m).unwrap();
        for w in m.worlds() {
            assert!(z.contains(w, w));
        }
        assert!(z.verify(&m, &m).is_empty());
        assert!(assert_maximal(&m, &m, &z));
    }

    #[test]
    fn different_states_give_the_empty_relation() {
        let g = fixtures::game_a();
        let left = fixtures::certainty(g.clone(), "s");
        let raw = crate::rules::ModelDescription {
            name: "t".into(),
            game: g.name().into(),
            worlds: vec![("x".into(), "t".into())],
            ..Default::default()
        };
        let right = crate::rules::validate_epistemic(&raw, left.game()).unwrap();
        assert!(largest_g_bisimulation(&left, &right).unwrap().is_empty());
    }

    #[test]
    fn game_mismatch_is_an_error() {
        let a = fixtures::model_a();
        let c = fixtures::model_c();
        assert!(matches!(largest_g_bisimulation(&a, &c), Err(Error::GameMismatch)));
    }

    #[test]
    fn fixture_c_worlds_w_and_u_differ_for_player_two() {
        // w and u share state s, but u ~2 v and v is at s', which w cannot match
        let m = fixtures::model_c();
        let z = largest_g_bisimulation(&m, &m).unwrap();
        let (w, u) = (m.require_world("w").unwrap(), m.require_world("u").unwrap());
        assert!(!z.contains(w, u));
        assert_eq!(z.len(), 3);
    }

    #[test]
    fn successor_pairs_are_bisimilar_on_fixture_b() {
        let m = fixtures::model_b();
        let u = fixtures::obs_blur_ab(m.signature(), "2");
        let run = generate_run(&m, &u, 3).unwrap();
        let n = run.frontier_trimmed();
        let part = induce_epistemic_part(&n, &u).unwrap();
        let prod = product(&part, &u).unwrap();
        let z = largest_g_bisimulation(prod.model(), &part).unwrap();
        assert!(z.verify(prod.model(), &part).is_empty());
        for (s, a, t) in n.transitions() {
            let x = prod.world_for(s, a).unwrap();
            assert!(z.contains(x, t), "{} {}", prod.model().world_name(x), n.world_name(t));
        }
    }

    #[test]
    fn random_fixpoints_are_sound_maximal_and_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut maximal_checked = 0;
        for _ in 0..25 {
            let inst = random_instance(&mut rng, &InstanceConfig::default());
            let run = generate_run(&inst.model, &inst.observation, 2).unwrap();
            let n = run.frontier_trimmed();
            let part = induce_epistemic_part(&n, &inst.observation).unwrap();
            let prod = product(&part, &inst.observation).unwrap();
            if prod.is_empty() {
                continue;
            }
            let z = largest_g_bisimulation(prod.model(), &part).unwrap();
            assert!(z.verify(prod.model(), &part).is_empty());
            if prod.model().world_count() <= 6 && part.world_count() <= 6 && assert_maximal(prod.model(), &part, &z) {
                maximal_checked += 1;
            }
            let corpus: Vec<_> = (0..20)
                .map(|_| random_formula(&mut rng, part.signature(), 2, 8))
                .collect();
            for &(x, y) in z.pairs().iter().take(4) {
                let r = check_invariance(prod.model(), x, &part, y, &inst.observation, &corpus).unwrap();
                assert!(r.passed());
            }
        }
        assert!(maximal_checked > 0);
    }

    #[test]
    fn invariance_requires_bisimilar_pair() {
        let m = fixtures::model_c();
        let u = ObservationModel::identity(m.signature().clone());
        let (w, v) = (m.require_world("w").unwrap(), m.require_world("v").unwrap());
        assert!(matches!(
            check_invariance(&m, w, &m, v, &u, &[Formula::Top]),
            Err(Error::NotBisimilar { .. })
        ));
        let r = check_invariance(&m, w, &m, w, &u, &[Formula::Top, Formula::bot()]).unwrap();
        assert_eq!(r.checked, 2);
        assert!(r.passed());
    }
}
