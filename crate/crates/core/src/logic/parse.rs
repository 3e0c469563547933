//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! iff     := implies ("<->" implies)?
//! implies := or ("->" implies)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[" act "]" unary | "<" act ">" unary
//!          | K<p> unary | Kh<p> unary | TURN<p> | top | bot
//!          | atom "@" player | "(" iff ")"
//! ```
//!
//! `K`, `Kh` and `TURN` may be written with or without a space before the
//! player. Identifiers are made of letters, digits, `_` and `'`.

use crate::error::{Error, Result};
use crate::ids::PlayerId;
use crate::logic::Formula;
use crate::rules::Signature;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    At,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        let ident = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
        let (tok, len) = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '~' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '>' => (Tok::Gt, 1),
            '@' => (Tok::At, 1),
            '-' if chars.get(k + 1) == Some(&'>') => (Tok::Implies, 2),
            '<' if chars.get(k + 1) == Some(&'-') && chars.get(k + 2) == Some(&'>') => (Tok::Iff, 3),
            '<' => (Tok::Lt, 1),
            c if ident(c) => {
                let end = (k..chars.len()).find(|&j| !ident(chars[j])).unwrap_or(chars.len());
                (Tok::Ident(chars[k..end].iter().collect()), end - k)
            }
            other => return Err(Error::parse(1, col, format!("unexpected character `{other}`"))),
        };
        out.push((tok, col));
        k += len;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
}

/// Parses `text` against `sig`, desugaring derived connectives.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
    };
    let f = p.iff()?;
    match p.peek() {
        Tok::End => Ok(f),
        t => Err(p.error(format!("unexpected {}", describe(t)))),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(1, self.column(), message)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", describe(&want), describe(self.peek()))))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize)> {
        let col = self.column();
        match self.bump() {
            Tok::Ident(s) => Ok((s, col)),
            t => {
                self.pos -= usize::from(t != Tok::End);
                Err(self.error(format!("expected {what}, found {}", describe(&t))))
            }
        }
    }

    fn player(&mut self) -> Result<PlayerId> {
        let (name, col) = self.ident("a player")?;
        self.sig
            .player(&name)
            .ok_or_else(|| Error::parse(1, col, format!("unknown player `{name}`")))
    }

    fn iff(&mut self) -> Result<Formula> {
        let left = self.implies()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let right = self.implies()?;
            if *self.peek() == Tok::Iff {
                return Err(self.error("`<->` is not associative; add parentheses"));
            }
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula> {
        let left = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let right = self.implies()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn action(&mut self) -> Result<crate::ids::ActionId> {
        let (name, col) = self.ident("an action")?;
        self.sig
            .action(&name)
            .ok_or_else(|| Error::parse(1, col, format!("unknown action `{name}`")))
    }

    fn unary(&mut self) -> Result<Formula> {
        let col = self.column();
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::LBracket => {
                let a = self.action()?;
                self.expect(Tok::RBracket)?;
                Ok(Formula::boxed(a, self.unary()?))
            }
            Tok::Lt => {
                let a = self.action()?;
                self.expect(Tok::Gt)?;
                Ok(Formula::diamond(a, self.unary()?))
            }
            Tok::LParen => {
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(word) => self.word(word, col),
            t => {
                self.pos -= usize::from(t != Tok::End);
                Err(Error::parse(1, col, format!("expected a formula, found {}", describe(&t))))
            }
        }
    }

    /// An identifier in formula position: atom, constant or operator.
    fn word(&mut self, word: String, col: usize) -> Result<Formula> {
        if *self.peek() == Tok::At {
            self.bump();
            let atom = self
                .sig
                .atom(&word)
                .ok_or_else(|| Error::parse(1, col, format!("unknown atom `{word}`")))?;
            return Ok(Formula::atom(atom, self.player()?));
        }
        let glued = |prefix: &str| {
            word.strip_prefix(prefix)
                .filter(|rest| !rest.is_empty())
                .and_then(|rest| self.sig.player(rest))
        };
        match word.as_str() {
            "top" => return Ok(Formula::Top),
            "bot" => return Ok(Formula::bot()),
            "TURN" => return Ok(Formula::turn(self.sig, self.player()?)),
            "Kh" => {
                let i = self.player()?;
                return Ok(Formula::hat_know(i, self.unary()?));
            }
            "K" => {
                let i = self.player()?;
                return Ok(Formula::know(i, self.unary()?));
            }
            _ => {}
        }
        if let Some(i) = glued("TURN") {
            return Ok(Formula::turn(self.sig, i));
        }
        if let Some(i) = glued("Kh") {
            return Ok(Formula::hat_know(i, self.unary()?));
        }
        if let Some(i) = glued("K") {
            return Ok(Formula::know(i, self.unary()?));
        }
        Err(Error::parse(
            1,
            col,
            format!("unexpected `{word}` (atoms are written `name@player`)"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::random_formula;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig() -> std::sync::Arc<Signature> {
        fixtures::game_a_win().signature().clone()
    }

    #[test]
    fn derived_connective_shapes() {
        let s = sig();
        let (a, d) = (s.action("a").unwrap(), s.action("d").unwrap());
        let (p1, p2) = (s.player("1").unwrap(), s.player("2").unwrap());
        let win = s.atom("win").unwrap();
        assert_eq!(
            parse_formula("[a] K2 <d> top", &s).unwrap(),
            Formula::boxed(a, Formula::know(p2, Formula::diamond(d, Formula::Top)))
        );
        let b = s.action("b").unwrap();
        assert_eq!(
            parse_formula("TURN1", &s).unwrap(),
            Formula::or(Formula::diamond(a, Formula::Top), Formula::diamond(b, Formula::Top))
        );
        assert_eq!(parse_formula("TURN 1", &s).unwrap(), Formula::turn(&s, p1));
        assert_eq!(
            parse_formula("win@2 -> K2 win@2", &s).unwrap(),
            Formula::implies(Formula::atom(win, p2), Formula::know(p2, Formula::atom(win, p2)))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let s = sig();
        let p = |t: &str| parse_formula(t, &s).unwrap();
        assert_eq!(p("~top & top | top"), p("((~top) & top) | top"));
        assert_eq!(p("top -> bot -> top"), p("top -> (bot -> top)"));
        assert_eq!(p("top | bot -> bot & top"), p("(top | bot) -> (bot & top)"));
        assert_eq!(p("top <-> bot -> top"), p("top <-> (bot -> top)"));
        assert_eq!(p("K2 top & bot"), p("(K2 top) & bot"));
        assert_eq!(p("[a] top -> bot"), p("([a] top) -> bot"));
        assert_eq!(p("Kh2 top"), p("~K2 ~top"));
        assert_eq!(p("K 2 act_c@2"), p("K2 act_c@2"));
        assert!(parse_formula("top <-> top <-> top", &s).is_err());
    }

    #[test]
    fn depth_examples() {
        let s = sig();
        let d = |t: &str| parse_formula(t, &s).unwrap().action_depth();
        assert_eq!(d("top"), 0);
        assert_eq!(d("[a][c] win@2"), 2);
        assert_eq!(d("K2 [a] (K1 <c> top)"), 2);
    }

    #[test]
    fn errors_have_positions() {
        let s = sig();
        let col = |t: &str| match parse_formula(t, &s) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("{t}: {other:?}"),
        };
        assert_eq!(col("[z] top"), 2);
        assert_eq!(col("top & "), 7);
        assert_eq!(col("win@3"), 5);
        assert_eq!(col("K9 top"), 1);
        assert_eq!(col("(top"), 5);
        assert_eq!(col("top $"), 5);
        assert_eq!(col("nope@1"), 1);
    }

    #[test]
    fn player_named_like_operator_prefix() {
        let g = crate::rules::validate_game(&crate::rules::GameDescription {
            name: "g".into(),
            players: vec!["1".into(), "h1".into()],
            actions: vec![("1".into(), vec!["a".into()])],
            states: vec!["s".into()],
            ..Default::default()
        })
        .unwrap();
        let s = g.signature();
        let (p1, h1) = (s.player("1").unwrap(), s.player("h1").unwrap());
        assert_eq!(parse_formula("Kh1 top", s).unwrap(), Formula::hat_know(p1, Formula::Top));
        assert_eq!(parse_formula("K h1 top", s).unwrap(), Formula::know(h1, Formula::Top));
        let f = Formula::know(h1, Formula::Top);
        assert_eq!(parse_formula(&f.display(s).to_string(), s).unwrap(), f);
    }

    proptest! {
        #[test]
        fn display_round_trips(seed in any::<u64>()) {
            let s = sig();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_formula(&mut rng, &s, 3, 12);
            let text = f.display(&s).to_string();
            prop_assert_eq!(parse_formula(&text, &s).unwrap(), f);
        }
    }
}
