//! Binary relations over `0..n`.
//!
//! [`Equivalence`] is a partition in canonical form (classes numbered by
//! first occurrence), so two equivalences over the same carrier compare equal
//! iff they relate the same pairs. [`Relation`] is an arbitrary relation kept
//! as sorted successor sets; it is what epistemic temporal models carry,
//! because their relations are checked rather than assumed.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equivalence {
    class: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl Equivalence {
    pub fn identity(n: usize) -> Self {
        Self::from_key(n, |i| i)
    }

    pub fn total(n: usize) -> Self {
        Self::from_key(n, |_| ())
    }

    /// Groups elements with equal keys.
    pub fn from_key<K: Eq + Hash>(n: usize, mut key: impl FnMut(usize) -> K) -> Self {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let mut class = Vec::with_capacity(n);
        let mut members: Vec<Vec<u32>> = Vec::new();
        for i in 0..n {
            let next = members.len() as u32;
            let c = *ids.entry(key(i)).or_insert(next);
            if c == next {
                members.push(Vec::new());
            }
            members[c as usize].push(i as u32);
            class.push(c);
        }
        Equivalence { class, members }
    }

    /// Reflexive, symmetric, transitive closure of the generator pairs.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        Self::from_key(n, |i| find(&mut parent, i))
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class[a] == self.class[b]
    }

    #[inline]
    pub fn class_of(&self, a: usize) -> usize {
        self.class[a] as usize
    }

    /// All elements equivalent to `a` (including `a`), ascending.
    pub fn class_members(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.members[self.class[a] as usize]
            .iter()
            .map(|&x| x as usize)
    }

    pub fn classes(&self) -> impl Iterator<Item = &[u32]> {
        self.members.iter().map(Vec::as_slice)
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn is_identity(&self) -> bool {
        self.members.len() == self.class.len()
    }

    /// Every related pair, reflexive ones included, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            out.extend(self.class_members(a).map(|b| (a, b)));
        }
        out
    }

    /// Unordered non-reflexive pairs `(a, b)` with `a < b`.
    pub fn proper_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|(a, b)| a < b).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    succ: Vec<BTreeSet<usize>>,
}

/// Why a relation fails to be an equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceDefect {
    NotReflexive(usize),
    NotSymmetric(usize, usize),
    NotTransitive(usize, usize, usize),
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            succ: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_equivalence(eq: &Equivalence) -> Self {
        let mut rel = Relation::empty(eq.len());
        for (a, b) in eq.pairs() {
            rel.insert(a, b);
        }
        rel
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        self.succ[a].insert(b)
    }

    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        self.succ[a].remove(&b)
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(&b)
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[a].iter().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    /// Finds the first reflexivity, symmetry or transitivity failure.
    pub fn equivalence_defect(&self) -> Option<EquivalenceDefect> {
        self.equivalence_defects().into_iter().next()
    }

    pub fn equivalence_defects(&self) -> Vec<EquivalenceDefect> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            if !self.contains(a, a) {
                out.push(EquivalenceDefect::NotReflexive(a));
            }
        }
        for (a, b) in self.pairs() {
            if !self.contains(b, a) {
                out.push(EquivalenceDefect::NotSymmetric(a, b));
            }
        }
        for (a, b) in self.pairs() {
            for c in self.successors(b) {
                if !self.contains(a, c) {
                    out.push(EquivalenceDefect::NotTransitive(a, b, c));
                }
            }
        }
        out
    }

    /// The relation as a partition, if it is an equivalence.
    pub fn to_equivalence(&self) -> Option<Equivalence> {
        if self.equivalence_defect().is_some() {
            return None;
        }
        Some(Equivalence::from_key(self.len(), |a| {
            self.succ[a].iter().next().copied()
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closure_of_chain_is_one_class() {
        let eq = Equivalence::from_pairs(4, [(0, 1), (2, 1)]);
        assert!(eq.related(0, 2));
        assert!(!eq.related(0, 3));
        assert_eq!(eq.class_count(), 2);
        assert_eq!(eq.proper_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn defects_are_reported() {
        let mut rel = Relation::empty(3);
        rel.insert(0, 0);
        rel.insert(1, 1);
        rel.insert(0, 1);
        assert_eq!(
            rel.equivalence_defect(),
            Some(EquivalenceDefect::NotReflexive(2))
        );
        rel.insert(2, 2);
        assert_eq!(
            rel.equivalence_defect(),
            Some(EquivalenceDefect::NotSymmetric(0, 1))
        );
        rel.insert(1, 0);
        rel.insert(1, 2);
        rel.insert(2, 1);
        assert!(matches!(
            rel.equivalence_defect(),
            Some(EquivalenceDefect::NotTransitive(..))
        ));
    }

    proptest! {
        #[test]
        fn closing_a_closed_relation_changes_nothing(
            n in 1usize..8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..10),
        ) {
            let pairs: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            let eq = Equivalence::from_pairs(n, pairs);
            let again = Equivalence::from_pairs(n, eq.pairs());
            prop_assert_eq!(&again, &eq);
            let rel = Relation::from_equivalence(&eq);
            prop_assert!(rel.equivalence_defect().is_none());
            prop_assert_eq!(rel.to_equivalence().unwrap(), eq);
        }
    }
}
