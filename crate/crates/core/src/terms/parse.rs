use thiserror::Error;

use super::{BinOp, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token {found:?} at position {pos}")]
    UnknownToken { pos: usize, found: char },
    #[error("expected {expected} at position {pos}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    LParen,
    RParen,
    Star,
    Wedge,
    Vee,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::One => "`1`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Star => "`*`".into(),
            Tok::Wedge => "`/\\`".into(),
            Tok::Vee => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let (tok, width) = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '*' => (Tok::Star, 1),
            '1' => (Tok::One, 1),
            '/' if next == Some('\\') => (Tok::Wedge, 2),
            '\\' if next == Some('/') => (Tok::Vee, 2),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let ident: String = chars[i..j].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Ident(ident)));
                i = j;
                continue;
            }
            found => return Err(ParseError::UnknownToken { pos, found }),
        };
        out.push((pos, tok));
        i += width;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            pos: self.pos(),
            expected,
            found: self.peek().map_or_else(|| "end of input".to_string(), Tok::describe),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn imp(&mut self) -> Result<Term, ParseError> {
        let lhs = self.left_assoc(1)?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            Ok(Term::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // level 1 = join, 2 = meet, 3 = product
    fn left_assoc(&mut self, level: u8) -> Result<Term, ParseError> {
        let (tok, op) = match level {
            1 => (Tok::Vee, BinOp::Join),
            2 => (Tok::Wedge, BinOp::Meet),
            _ => (Tok::Star, BinOp::Mul),
        };
        let operand = |p: &mut Parser| if level < 3 { p.left_assoc(level + 1) } else { p.atom() };
        let mut acc = operand(self)?;
        while self.eat(&tok) {
            let rhs = operand(self)?;
            acc = Term::binary(op, acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Term::Var(name))
            }
            Some(Tok::One) => {
                self.at += 1;
                Ok(Term::One)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.imp()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                Ok(t)
            }
            _ => Err(self.unexpected("a variable, `1` or `(`")),
        }
    }
}

/// Parses a term. Errors carry the byte offset of the offending token.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let t = p.imp()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(t)
}
