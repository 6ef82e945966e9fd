//! The word grammar.
//!
//! ```text
//! word := term+
//! term := atom ('^' signed-int)?
//! atom := 'a' | 'b' | '1' | macro-name | '(' word ')'
//! ```
//!
//! Whitespace separates terms and is otherwise ignored. Macro names are
//! identifiers (`[A-Za-z_][A-Za-z0-9_]*`) other than `a` and `b`; they expand
//! to previously defined words. `1` is the empty word.

use std::collections::HashMap;

use super::word::{Gen, Letter, Word};
use crate::error::{Error, Result};

pub type Macros = HashMap<String, Word>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    macros: &'a Macros,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Word::empty();
        let mut terms = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                Some(_) => {
                    let t = self.term()?;
                    out = out.concat(&t);
                    terms += 1;
                }
            }
        }
        if terms == 0 {
            return self.err("expected a term");
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.signed_int()?;
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(w)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match &self.src[start..self.pos] {
                    "a" => Ok(Word::gen(Gen::A)),
                    "b" => Ok(Word::gen(Gen::B)),
                    name => match self.macros.get(name) {
                        Some(w) => Ok(w.clone()),
                        None => Err(Error::UnknownMacro(name.to_string())),
                    },
                }
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err("expected an integer exponent");
        }
        match self.src[start..self.pos].parse() {
            Ok(k) => Ok(k),
            Err(_) => Err(Error::Syntax { pos: start, msg: "exponent out of range".into() }),
        }
    }
}

/// Parses `text` into a freely reduced word, expanding `macros`.
pub fn parse_word(text: &str, macros: &Macros) -> Result<Word> {
    let mut p = Parser { src: text, pos: 0, macros };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < text.len() {
        return p.err("unbalanced `)`");
    }
    Ok(w)
}

/// Parses a `name=word` definition, as accepted by the CLI `--define` flag.
pub fn parse_definition(text: &str, macros: &Macros) -> Result<(String, Word)> {
    let Some((name, body)) = text.split_once('=') else {
        return Err(Error::Syntax { pos: 0, msg: "expected `name=word`".into() });
    };
    let name = name.trim();
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "a"
        && name != "b";
    if !valid {
        return Err(Error::Syntax { pos: 0, msg: format!("invalid macro name `{name}`") });
    }
    let offset = text.len() - body.len();
    let word = parse_word(body, macros).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
        other => other,
    })?;
    Ok((name.to_string(), word))
}

/// `w = b a^-1 b^-1 a`, the word whose powers build the twist-knot relator.
pub fn twist_w() -> Word {
    Word::from_letters([
        Letter::new(Gen::B, false),
        Letter::new(Gen::A, true),
        Letter::new(Gen::B, true),
        Letter::new(Gen::A, false),
    ])
}

/// Macro table holding `w`.
pub fn default_macros() -> Macros {
    let mut m = Macros::new();
    m.insert("w".to_string(), twist_w());
    m
}
