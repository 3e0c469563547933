use std::fmt;

use crate::error::{Error, Result};
use crate::ids::{ActionId, AtomId, PlayerId};
use crate::rules::Signature;

/// LDEL formulas in core form. The derived connectives are constructor
/// functions that desugar immediately, so evaluators only ever see these
/// six cases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    /// `p_i`: atom `p` is in player `i`'s information.
    Atom(AtomId, PlayerId),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Know(PlayerId, Box<Formula>),
    /// `[a]φ`.
    Box(ActionId, Box<Formula>),
}

impl Formula {
    pub fn top() -> Self {
        Formula::Top
    }

    /// `~top`.
    pub fn bot() -> Self {
        Formula::not(Formula::Top)
    }

    pub fn atom(p: AtomId, i: PlayerId) -> Self {
        Formula::Atom(p, i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(f), Formula::not(g)))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::not(Formula::and(f, Formula::not(g)))
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::and(Formula::implies(f.clone(), g.clone()), Formula::implies(g, f))
    }

    pub fn know(i: PlayerId, f: Formula) -> Self {
        Formula::Know(i, Box::new(f))
    }

    /// `K̂_i φ = ~K_i ~φ`.
    pub fn hat_know(i: PlayerId, f: Formula) -> Self {
        Formula::not(Formula::know(i, Formula::not(f)))
    }

    pub fn boxed(a: ActionId, f: Formula) -> Self {
        Formula::Box(a, Box::new(f))
    }

    /// `<a>φ = ~[a]~φ`.
    pub fn diamond(a: ActionId, f: Formula) -> Self {
        Formula::not(Formula::boxed(a, Formula::not(f)))
    }

    /// `TURN_i`: some action of `i` is available. Left-folded over `A_i` in
    /// ascending order; `bot` when `i` owns no action.
    pub fn turn(sig: &Signature, i: PlayerId) -> Self {
        Self::disjunction(sig.actions_of(i).iter().map(|&a| Formula::diamond(a, Formula::Top)))
    }

    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or_else(Formula::bot)
    }

    /// Maximum nesting of `[a]` (and hence `<a>`).
    pub fn action_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(..) => 0,
            Formula::Not(f) | Formula::Know(_, f) => f.action_depth(),
            Formula::And(f, g) => f.action_depth().max(g.action_depth()),
            Formula::Box(_, f) => 1 + f.action_depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(..) => 1,
            Formula::Not(f) | Formula::Know(_, f) | Formula::Box(_, f) => 1 + f.size(),
            Formula::And(f, g) => 1 + f.size() + g.size(),
        }
    }

    pub fn is_epistemic(&self) -> bool {
        self.action_depth() == 0
    }

    /// Substitutes `psi` for every occurrence of the atom `p_i`.
    pub fn substitute(&self, p: AtomId, i: PlayerId, psi: &Formula) -> Formula {
        match self {
            Formula::Atom(q, j) if (*q, *j) == (p, i) => psi.clone(),
            Formula::Top | Formula::Atom(..) => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute(p, i, psi)),
            Formula::And(f, g) => Formula::and(f.substitute(p, i, psi), g.substitute(p, i, psi)),
            Formula::Know(j, f) => Formula::know(*j, f.substitute(p, i, psi)),
            Formula::Box(a, f) => Formula::boxed(*a, f.substitute(p, i, psi)),
        }
    }

    /// Checks that every id names something in `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Formula::Top => Ok(()),
            Formula::Atom(p, i) => {
                if p.index() >= sig.atom_count() {
                    return Err(Error::unknown("atom", p.to_string()));
                }
                check_player(sig, *i)
            }
            Formula::Not(f) => f.check(sig),
            Formula::And(f, g) => f.check(sig).and_then(|_| g.check(sig)),
            Formula::Know(i, f) => check_player(sig, *i).and_then(|_| f.check(sig)),
            Formula::Box(a, f) => {
                if a.index() >= sig.action_count() {
                    return Err(Error::unknown("action", a.to_string()));
                }
                f.check(sig)
            }
        }
    }

    /// Concrete syntax that `parse_formula` reads back to the same value.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> Display<'a> {
        Display { formula: self, sig }
    }
}

fn check_player(sig: &Signature, i: PlayerId) -> Result<()> {
    if i.index() >= sig.player_count() {
        return Err(Error::unknown("player", i.to_string()));
    }
    Ok(())
}

/// The maximum `[a]`-nesting of a formula.
pub fn modal_action_depth(f: &Formula) -> usize {
    f.action_depth()
}

pub struct Display<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.formula, self.sig)
    }
}

fn write_player_op(out: &mut fmt::Formatter<'_>, op: &str, name: &str) -> fmt::Result {
    // `K2` is unambiguous, but `Kh1` for a player named `h1` is not
    if name.starts_with(|c: char| c.is_ascii_digit()) {
        write!(out, "{op}{name} ")
    } else {
        write!(out, "{op} {name} ")
    }
}

fn write_binary(out: &mut fmt::Formatter<'_>, f: &Formula, op: &str, g: &Formula, sig: &Signature) -> fmt::Result {
    out.write_str("(")?;
    write_formula(out, f, sig)?;
    write!(out, " {op} ")?;
    write_formula(out, g, sig)?;
    out.write_str(")")
}

/// `~(f & ~g)` as `(f, g)`.
fn as_implication(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Not(inner) => match &**inner {
            Formula::And(l, r) => match &**r {
                Formula::Not(g) => Some((l, g)),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Prints the derived connectives back in their sugared form.
fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula, sig: &Signature) -> fmt::Result {
    match f {
        Formula::Top => out.write_str("top"),
        Formula::Atom(p, i) => write!(out, "{}@{}", sig.atom_name(*p), sig.player_name(*i)),
        Formula::Not(g) => match &**g {
            Formula::Top => out.write_str("bot"),
            Formula::And(l, r) => match (&**l, &**r) {
                (Formula::Not(x), Formula::Not(y)) => write_binary(out, x, "|", y, sig),
                (x, Formula::Not(y)) => write_binary(out, x, "->", y, sig),
                _ => {
                    out.write_str("~")?;
                    write_formula(out, g, sig)
                }
            },
            Formula::Box(a, h) if matches!(**h, Formula::Not(_)) => {
                let Formula::Not(body) = &**h else { unreachable!() };
                write!(out, "<{}> ", sig.action_name(*a))?;
                write_formula(out, body, sig)
            }
            Formula::Know(i, h) if matches!(**h, Formula::Not(_)) => {
                let Formula::Not(body) = &**h else { unreachable!() };
                write_player_op(out, "Kh", sig.player_name(*i))?;
                write_formula(out, body, sig)
            }
            _ => {
                out.write_str("~")?;
                write_formula(out, g, sig)
            }
        },
        Formula::And(g, h) => match (as_implication(g), as_implication(h)) {
            (Some((a, b)), Some((c, d))) if a == d && b == c => write_binary(out, a, "<->", b, sig),
            _ => write_binary(out, g, "&", h, sig),
        },
        Formula::Know(i, g) => {
            write_player_op(out, "K", sig.player_name(*i))?;
            write_formula(out, g, sig)
        }
        Formula::Box(a, g) => {
            write!(out, "[{}] ", sig.action_name(*a))?;
            write_formula(out, g, sig)
        }
    }
}
