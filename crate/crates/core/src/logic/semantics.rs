//! The two semantics: `⊨` over epistemic models (boxes move into update
//! products) and `⊩` over epistemic temporal models (boxes follow
//! transitions).

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::ids::WorldId;
use crate::logic::Formula;
use crate::rules::{EpistemicModel, ObservationModel};
use crate::update::{product, same_signature, Product};

/// Evaluates formulas over `M`, `M ⊗ U`, `M ⊗ U ⊗ U`, ... building each
/// product the first time a formula needs it.
#[derive(Debug)]
pub struct DelChecker {
    base: EpistemicModel,
    obs: ObservationModel,
    /// `levels[k]` is `M ⊗ U^(k+1)`, with origins into level `k`.
    levels: Vec<Product>,
}

impl DelChecker {
    pub fn new(model: &EpistemicModel, obs: &ObservationModel) -> Result<Self> {
        same_signature(model, obs)?;
        Ok(DelChecker {
            base: model.clone(),
            obs: obs.clone(),
            levels: Vec::new(),
        })
    }

    pub fn model(&self) -> &EpistemicModel {
        &self.base
    }

    /// Builds products until `M ⊗ U^depth` exists.
    pub fn prepare(&mut self, depth: usize) {
        while self.levels.len() < depth {
            let next = product(self.level(self.levels.len()), &self.obs)
                .expect("signature checked at construction");
            self.levels.push(next);
        }
    }

    pub fn prepared_depth(&self) -> usize {
        self.levels.len()
    }

    /// `M ⊗ U^k`.
    pub fn level(&self, k: usize) -> &EpistemicModel {
        if k == 0 {
            &self.base
        } else {
            self.levels[k - 1].model()
        }
    }

    pub fn product_at(&self, k: usize) -> &Product {
        &self.levels[k]
    }

    /// Truth value of `f` at every world of `M`.
    pub fn truth(&mut self, f: &Formula) -> Result<Vec<bool>> {
        f.check(self.base.signature())?;
        self.prepare(f.action_depth());
        Ok(self.truth_at(f, 0))
    }

    /// Truth value of `f` at every world of level `k`. Needs
    /// `prepare(k + depth(f))` first.
    pub fn truth_at(&self, f: &Formula, k: usize) -> Vec<bool> {
        let m = self.level(k);
        match f {
            Formula::Top => vec![true; m.world_count()],
            Formula::Atom(p, i) => m.worlds().map(|w| m.valuation(w, *i).contains(*p)).collect(),
            Formula::Not(g) => self.truth_at(g, k).into_iter().map(|b| !b).collect(),
            Formula::And(g, h) => {
                let left = self.truth_at(g, k);
                let right = self.truth_at(h, k);
                left.into_iter().zip(right).map(|(x, y)| x && y).collect()
            }
            Formula::Know(i, g) => {
                let inner = self.truth_at(g, k);
                let eq = m.indist(*i);
                let class_ok: Vec<bool> = eq
                    .classes()
                    .map(|c| c.iter().all(|&v| inner[v as usize]))
                    .collect();
                (0..m.world_count()).map(|w| class_ok[eq.class_of(w)]).collect()
            }
            Formula::Box(a, g) => {
                assert!(
                    self.levels.len() > k,
                    "product level {} not prepared",
                    k + 1
                );
                let inner = self.truth_at(g, k + 1);
                let next = &self.levels[k];
                m.worlds()
                    .map(|w| next.world_for(w, *a).is_none_or(|x| inner[x.index()]))
                    .collect()
            }
        }
    }

    pub fn eval(&mut self, w: WorldId, f: &Formula) -> Result<bool> {
        if w.index() >= self.base.world_count() {
            return Err(Error::unknown("world", w.to_string()));
        }
        Ok(self.truth(f)?[w.index()])
    }
}

/// `M, w ⊨ φ`.
pub fn eval_del(model: &EpistemicModel, w: WorldId, obs: &ObservationModel, f: &Formula) -> Result<bool> {
    DelChecker::new(model, obs)?.eval(w, f)
}

/// Truth value of `f` at every world of `N` under `⊩`.
pub fn etl_truth(n: &EtlModel, f: &Formula) -> Result<Vec<bool>> {
    f.check(n.signature())?;
    Ok(etl_truth_unchecked(n, f))
}

fn etl_truth_unchecked(n: &EtlModel, f: &Formula) -> Vec<bool> {
    match f {
        Formula::Top => vec![true; n.world_count()],
        Formula::Atom(p, i) => n.worlds().map(|w| n.valuation(w, *i).contains(*p)).collect(),
        Formula::Not(g) => etl_truth_unchecked(n, g).into_iter().map(|b| !b).collect(),
        Formula::And(g, h) => {
            let left = etl_truth_unchecked(n, g);
            let right = etl_truth_unchecked(n, h);
            left.into_iter().zip(right).map(|(x, y)| x && y).collect()
        }
        Formula::Know(i, g) => {
            let inner = etl_truth_unchecked(n, g);
            n.worlds()
                .map(|w| n.epistemic_successors(*i, w).all(|v| inner[v.index()]))
                .collect()
        }
        Formula::Box(a, g) => {
            let inner = etl_truth_unchecked(n, g);
            n.worlds()
                .map(|w| n.successors(w, *a).all(|v| inner[v.index()]))
                .collect()
        }
    }
}

/// `N, w ⊩ φ`.
pub fn eval_etl(n: &EtlModel, w: WorldId, f: &Formula) -> Result<bool> {
    if w.index() >= n.world_count() {
        return Err(Error::unknown("world", w.to_string()));
    }
    Ok(etl_truth(n, f)?[w.index()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::logic::parse_formula;
    use crate::update::generate_run;

    /// Independent oracle for `⊨`: recursion on (world, formula) that
    /// rebuilds each product from scratch and looks worlds up by name.
    fn oracle(m: &EpistemicModel, w: WorldId, u: &ObservationModel, f: &Formula) -> bool {
        match f {
            Formula::Top => true,
            Formula::Atom(p, i) => m.game().info(m.assign(w), *i).contains(*p),
            Formula::Not(g) => !oracle(m, w, u, g),
            Formula::And(g, h) => oracle(m, w, u, g) && oracle(m, w, u, h),
            Formula::Know(i, g) => m
                .worlds()
                .filter(|&v| m.related(*i, w, v))
                .all(|v| oracle(m, v, u, g)),
            Formula::Box(a, g) => {
                if m.game().successor(m.assign(w), *a).is_none() {
                    return true;
                }
                let next = product(m, u).unwrap();
                let name = format!("{}{}", m.world_name(w), m.signature().action_name(*a));
                let x = next.model().require_world(&name).unwrap();
                oracle(next.model(), x, u, g)
            }
        }
    }

    #[test]
    fn win_example_identity_blur() {
        let m = fixtures::model_a_win();
        let sig = m.signature().clone();
        let u = ObservationModel::identity(sig.clone());
        let f = parse_formula("[a] K2 [c] win@2", &sig).unwrap();
        let w = m.require_world("w").unwrap();
        assert!(eval_del(&m, w, &u, &f).unwrap());
        assert!(oracle(&m, w, &u, &f));
        let run = generate_run(&m, &u, 2).unwrap();
        assert!(eval_etl(run.etl(), w, &f).unwrap());
    }

    #[test]
    fn win_example_blurred() {
        let m = fixtures::model_a_win();
        let sig = m.signature().clone();
        let u = fixtures::obs_blur_ab(&sig, "2");
        let f = parse_formula("[a] K2 [c] win@2", &sig).unwrap();
        let w = m.require_world("w").unwrap();
        assert!(!eval_del(&m, w, &u, &f).unwrap());
        assert!(!oracle(&m, w, &u, &f));
        let run = generate_run(&m, &u, 2).unwrap();
        assert!(!eval_etl(run.etl(), w, &f).unwrap());
    }

    #[test]
    fn top_is_true_and_vacuous_boxes() {
        let m = fixtures::model_c();
        let u = ObservationModel::identity(m.signature().clone());
        let mut checker = DelChecker::new(&m, &u).unwrap();
        assert_eq!(checker.truth(&Formula::Top).unwrap(), vec![true; 3]);
        // v sits at s', where a is not available
        let f = parse_formula("[a] bot", m.signature()).unwrap();
        let v = m.require_world("v").unwrap();
        assert!(checker.eval(v, &f).unwrap());
        assert!(!checker.eval(m.require_world("w").unwrap(), &f).unwrap());
    }

    #[test]
    fn etl_examples() {
        let m = fixtures::model_b();
        let u = fixtures::obs_blur_ab(m.signature(), "2");
        let run = generate_run(&m, &u, 2).unwrap();
        let n = run.etl();
        let f = parse_formula("K2 <d> top", m.signature()).unwrap();
        assert!(eval_etl(n, n.require_world("wa").unwrap(), &f).unwrap());

        let ma = fixtures::model_a();
        let run = generate_run(&ma, &ObservationModel::identity(ma.signature().clone()), 2).unwrap();
        let n = run.etl();
        let g = parse_formula("[c] ~top", ma.signature()).unwrap();
        assert!(eval_etl(n, n.require_world("wac").unwrap(), &g).unwrap());
        assert!(!eval_etl(n, n.require_world("wa").unwrap(), &g).unwrap());
    }

    #[test]
    fn etl_knowledge_quantifies_over_the_related_world() {
        // x ~1 y, p holds at x only: K1 p fails at x because it fails at y
        let text = "etl n\nplayers 1\nactions 1: a\natoms p\nworlds x y\n\
                    val x 1: p\nrel 1: x x\nrel 1: y y\nrel 1: x y\nrel 1: y x\nend\n";
        let n = crate::format::parse_etl(text).unwrap();
        let f = parse_formula("K1 p@1", n.signature()).unwrap();
        assert!(!eval_etl(&n, n.require_world("x").unwrap(), &f).unwrap());
    }

    #[test]
    fn unknown_world_is_an_error() {
        let m = fixtures::model_a();
        let u = ObservationModel::identity(m.signature().clone());
        assert!(eval_del(&m, WorldId(5), &u, &Formula::Top).is_err());
    }
}
