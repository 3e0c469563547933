use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::ids::{ActionId, StateId, WorldId};
use crate::relation::{Equivalence, Relation};
use crate::rules::GameStructure;

/// The unravelling of a game from a root state with perfect recall, cut at
/// a depth bound. Node `k` of the model is the history `histories[k]`.
#[derive(Clone, Debug)]
pub struct EpistemicGameTree {
    etl: EtlModel,
    root: StateId,
    depth: usize,
    histories: Vec<Vec<ActionId>>,
    states: Vec<StateId>,
    state_names: Vec<String>,
    offsets: Vec<usize>,
    index: HashMap<Vec<ActionId>, WorldId>,
}

/// Nodes are the histories executable from `root` of length at most
/// `depth`; `x ⌢_i y` iff the histories have equal length and `i` gets the
/// same information after every synchronized prefix.
pub fn generate_game_tree(game: &GameStructure, root: StateId, depth: usize) -> Result<EpistemicGameTree> {
    if root.index() >= game.state_count() {
        return Err(Error::unknown("state", root.to_string()));
    }
    let sig = game.signature().clone();
    let mut histories = vec![Vec::new()];
    let mut states = vec![root];
    let mut parent: Vec<Option<(usize, ActionId)>> = vec![None];
    let mut offsets = vec![0, 1];
    // class of each node under ⌢_i, per player, within its own layer
    let mut classes: Vec<Vec<usize>> = vec![vec![0]; sig.player_count()];
    for k in 0..depth {
        let (lo, hi) = (offsets[k], offsets[k + 1]);
        for x in lo..hi {
            for (&a, &t) in game.enabled(states[x]) {
                let mut h = histories[x].clone();
                h.push(a);
                histories.push(h);
                states.push(t);
                parent.push(Some((x, a)));
            }
        }
        let next = histories.len();
        offsets.push(next);
        for i in sig.players() {
            let eq = Equivalence::from_key(next - hi, |y| {
                let (px, _) = parent[hi + y].unwrap();
                (classes[i.index()][px], game.info(states[hi + y], i))
            });
            classes[i.index()].extend((0..next - hi).map(|y| eq.class_of(y)));
        }
    }

    let n = histories.len();
    let layer_of = |x: usize| offsets.partition_point(|&o| o <= x) - 1;
    let mut frown = vec![Relation::empty(n); sig.player_count()];
    for i in sig.players() {
        for x in 0..n {
            let k = layer_of(x);
            for y in offsets[k]..offsets[k + 1] {
                if classes[i.index()][x] == classes[i.index()][y] {
                    frown[i.index()].insert(x, y);
                }
            }
        }
    }
    let transitions: Vec<_> = parent
        .iter()
        .enumerate()
        .filter_map(|(y, p)| p.map(|(x, a)| (WorldId::new(x), a, WorldId::new(y))))
        .collect();
    let valuation = states
        .iter()
        .map(|&s| sig.players().map(|i| game.info(s, i).clone()).collect())
        .collect();
    let names = node_names(game, root, &histories);
    let etl = EtlModel::new(
        format!("tree-{}-{}", game.name(), game.state_name(root)),
        sig,
        names,
        frown,
        transitions,
        valuation,
    )?;
    let index = histories
        .iter()
        .enumerate()
        .map(|(k, h)| (h.clone(), WorldId::new(k)))
        .collect();
    let state_names = states.iter().map(|&s| game.state_name(s).to_string()).collect();
    Ok(EpistemicGameTree {
        etl,
        root,
        depth,
        histories,
        states,
        state_names,
        offsets,
        index,
    })
}

fn node_names(game: &GameStructure, root: StateId, histories: &[Vec<ActionId>]) -> Vec<String> {
    let sig = game.signature();
    let render = |h: &[ActionId], sep: &str| {
        let mut s = game.state_name(root).to_string();
        for &a in h {
            s.push_str(sep);
            s.push_str(sig.action_name(a));
        }
        s
    };
    let plain: Vec<String> = histories.iter().map(|h| render(h, "")).collect();
    if plain.iter().collect::<HashSet<_>>().len() == plain.len() {
        plain
    } else {
        histories.iter().map(|h| render(h, ".")).collect()
    }
}

impl EpistemicGameTree {
    pub fn etl(&self) -> &EtlModel {
        &self.etl
    }

    pub fn root(&self) -> StateId {
        self.root
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn node_count(&self) -> usize {
        self.histories.len()
    }

    pub fn node(&self, history: &[ActionId]) -> Option<WorldId> {
        self.index.get(history).copied()
    }

    pub fn history(&self, x: WorldId) -> &[ActionId] {
        &self.histories[x.index()]
    }

    /// The game state at the end of the history.
    pub fn state(&self, x: WorldId) -> StateId {
        self.states[x.index()]
    }

    pub fn state_name(&self, x: WorldId) -> &str {
        &self.state_names[x.index()]
    }

    pub fn layer_of(&self, x: WorldId) -> usize {
        self.histories[x.index()].len()
    }

    pub fn layer(&self, k: usize) -> impl Iterator<Item = WorldId> {
        (self.offsets[k]..self.offsets[k + 1]).map(WorldId::new)
    }

    pub fn layer_size(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }
}
