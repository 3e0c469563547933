//! Line-oriented text formats for games, models, observation models and
//! epistemic temporal models.
//!
//! Every format is a single block: a header line, directive lines, `end`.
//! `#` starts a comment; tokens are separated by whitespace, and a trailing
//! `:` on a token is read as a separate token.

mod etl;
mod game;
mod model;
mod observation;

pub use etl::{parse_etl, render_etl};
pub use game::{parse_game, parse_game_description, render_game, render_game_description};
pub use model::{parse_model, parse_model_description, render_model, render_model_description};
pub use observation::{
    parse_observation, parse_observation_description, render_observation,
    render_observation_description,
};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    pub fn error(&self, index: usize, message: impl Into<String>) -> Error {
        let column = self
            .tokens
            .get(index)
            .map_or_else(|| self.end_column(), |t| t.column);
        Error::parse(self.number, column, message)
    }

    fn end_column(&self) -> usize {
        self.tokens
            .last()
            .map_or(1, |t| t.column + t.text.chars().count())
    }

    pub fn args(&self) -> &[Token<'a>] {
        &self.tokens[1..]
    }

    /// Exactly `n` arguments after the keyword.
    pub fn exact(&self, n: usize) -> Result<Vec<&'a str>> {
        if self.tokens.len() != n + 1 {
            let index = self.tokens.len().min(n + 1);
            return Err(self.error(
                index,
                format!("`{}` takes {n} argument(s)", self.keyword()),
            ));
        }
        Ok(self.args().iter().map(|t| t.text).collect())
    }

    /// `<kw> [prefix...] <owner> : <rest>...`; returns owner and rest.
    pub fn owned(&self, prefix: usize) -> Result<(&'a str, Vec<&'a str>)> {
        let owner = prefix + 1;
        let colon = owner + 1;
        match (self.tokens.get(owner), self.tokens.get(colon)) {
            (Some(o), Some(c)) if c.text == ":" && o.text != ":" => Ok((
                o.text,
                self.tokens[colon + 1..].iter().map(|t| t.text).collect(),
            )),
            (Some(_), _) => Err(self.error(colon, "expected `:` after the player")),
            (None, _) => Err(self.error(owner, "missing player")),
        }
    }
}

pub(crate) fn tokenize<'a>(text: &'a str) -> Vec<Line<'a>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content: &'a str = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        let push = |s: usize, e: usize, tokens: &mut Vec<Token<'a>>| {
            let word = &content[s..e];
            let column = content[..s].chars().count() + 1;
            if word.len() > 1 && word.ends_with(':') {
                let head = &word[..word.len() - 1];
                tokens.push(Token { text: head, column });
                tokens.push(Token {
                    text: ":",
                    column: column + head.chars().count(),
                });
            } else {
                tokens.push(Token { text: word, column });
            }
        };
        for (pos, ch) in content.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    push(s, pos, &mut tokens);
                    start = None;
                }
                (false, None) => start = Some(pos),
                _ => {}
            }
        }
        if let Some(s) = start {
            push(s, content.len(), &mut tokens);
        }
        if !tokens.is_empty() {
            lines.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    lines
}

/// Splits a file into its header line and body lines, checking `end`.
pub(crate) fn block<'a>(text: &'a str, header: &str) -> Result<(Line<'a>, Vec<Line<'a>>)> {
    let mut lines = tokenize(text);
    let total = text.lines().count().max(1);
    if lines.is_empty() {
        return Err(Error::parse(1, 1, format!("expected `{header}`")));
    }
    let head = lines.remove(0);
    if head.keyword() != header {
        return Err(head.error(0, format!("expected `{header}`")));
    }
    let end = lines.iter().position(|l| l.keyword() == "end");
    match end {
        None => Err(Error::parse(total, 1, "missing `end`")),
        Some(e) => {
            lines[e].exact(0)?;
            if let Some(extra) = lines.get(e + 1) {
                return Err(extra.error(0, "content after `end`"));
            }
            lines.truncate(e);
            Ok((head, lines))
        }
    }
}

pub(crate) fn unknown_directive(line: &Line<'_>) -> Error {
    line.error(0, format!("unknown directive `{}`", line.keyword()))
}

pub(crate) fn push_owned_line(out: &mut String, keyword: &str, prefix: &[&str], owner: &str, items: &[String]) {
    out.push_str(keyword);
    for p in prefix {
        out.push(' ');
        out.push_str(p);
    }
    out.push(' ');
    out.push_str(owner);
    out.push(':');
    for it in items {
        out.push(' ');
        out.push_str(it);
    }
    out.push('\n');
}

pub(crate) fn push_list_line(out: &mut String, keyword: &str, items: impl IntoIterator<Item = impl AsRef<str>>) {
    out.push_str(keyword);
    for it in items {
        out.push(' ');
        out.push_str(it.as_ref());
    }
    out.push('\n');
}
