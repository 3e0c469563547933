//! Index newtypes and the atom-set type shared by every structure.
//!
//! Names are interned once in a [`Signature`](crate::Signature) (or a
//! game/model) in lexicographic order, so iterating ids in index order is
//! iterating names lexicographically.

use std::collections::BTreeSet;
use std::fmt;

macro_rules! index_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn new(index: usize) -> Self {
                $name(index as u32)
            }

            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}#{}", stringify!($name), self.0)
            }
        }
    };
}

index_type!(
    /// A player of the game.
    PlayerId
);
index_type!(
    /// A global action; each action belongs to exactly one player.
    ActionId
);
index_type!(
    /// An information piece, including the reserved action atoms.
    AtomId
);
index_type!(
    /// A state of a game arena.
    StateId
);
index_type!(
    /// A world of an epistemic model.
    WorldId
);

/// A finite set of atoms, ordered by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(BTreeSet<AtomId>);

impl AtomSet {
    pub fn new() -> Self {
        AtomSet(BTreeSet::new())
    }

    pub fn insert(&mut self, atom: AtomId) -> bool {
        self.0.insert(atom)
    }

    pub fn remove(&mut self, atom: AtomId) -> bool {
        self.0.remove(&atom)
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.0.contains(&atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<AtomId> for AtomSet {
    fn from_iter<I: IntoIterator<Item = AtomId>>(iter: I) -> Self {
        AtomSet(iter.into_iter().collect())
    }
}

impl Extend<AtomId> for AtomSet {
    fn extend<I: IntoIterator<Item = AtomId>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}
