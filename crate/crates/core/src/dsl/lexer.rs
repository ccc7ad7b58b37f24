//! Tokens for the definition language. `#` starts a comment running to the end of the line.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use super::error::{DslError, DslResult, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Names, possibly qualified (`Vir::L`) or primed (`M'`).
    Ident(String),
    Int(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Int(s) => return write!(f, "`{s}`"),
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Colon => "`:`",
            Tok::Eq => "`=`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Slash => "`/`",
            Tok::Caret => "`^`",
            Tok::Arrow => "`->`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Lexer<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn pos(&mut self) -> usize {
        self.chars.peek().map(|&(i, _)| i).unwrap_or(self.src.len())
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next().map(|(_, c)| c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> DslResult<Token> {
        self.skip_trivia();
        let (line, col, start) = (self.line, self.col, self.pos());
        let span = |end: usize| Span {
            line,
            col,
            start,
            end,
        };
        let Some(c) = self.peek() else {
            return Ok(Token {
                tok: Tok::Eof,
                span: span(start),
            });
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            loop {
                match self.peek() {
                    Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'' => {
                        s.push(c);
                        self.bump();
                    }
                    Some(':') if self.peek2() == Some(':') => {
                        self.bump();
                        self.bump();
                        s.push_str("::");
                        match self.peek() {
                            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
                            other => {
                                let found = other
                                    .map(|c| format!("`{c}`"))
                                    .unwrap_or_else(|| "end of input".into());
                                let at = self.pos();
                                return Err(DslError::syntax(
                                    Span {
                                        line: self.line,
                                        col: self.col,
                                        start: at,
                                        end: at,
                                    },
                                    &["name after `::`"],
                                    found,
                                ));
                            }
                        }
                    }
                    _ => break,
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
            }
            if self.peek() == Some('.') {
                self.bump();
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let end = self.pos();
                return Err(DslError::syntax(
                    span(end),
                    &["integer", "rational p/q"],
                    format!("floating-point literal `{}`", &self.src[start..end]),
                ));
            }
            Tok::Int(s)
        } else {
            self.bump();
            match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '-' => {
                    if self.peek() == Some('>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                other => {
                    return Err(DslError::syntax(
                        span(self.pos()),
                        &["a token"],
                        format!("character `{other}`"),
                    ));
                }
            }
        };
        Ok(Token {
            tok,
            span: span(self.pos()),
        })
    }
}

pub fn tokenize(src: &str) -> DslResult<Vec<Token>> {
    let mut lx = Lexer {
        src,
        chars: src.char_indices().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        let t = lx.next_token()?;
        let done = t.tok == Tok::Eof;
        out.push(t);
        if done {
            return Ok(out);
        }
    }
}
