//! Tokenizer for the query language. Every token carries its 1-based line
//! and column; all failures are structured diagnostics, never panics.

use num::bigint::BigInt;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Pipe,
    Amp,
    Tilde,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::Comma => write!(f, "','"),
            Tok::Pipe => write!(f, "'|'"),
            Tok::Amp => write!(f, "'&'"),
            Tok::Tilde => write!(f, "'~'"),
            Tok::Eq => write!(f, "'='"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: Tok,
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    pub fn new(line: u32, col: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            chars.next();
            col += 1;
        };
        match ch {
            ' ' | '\t' | '\r' => bump(&mut chars),
            '#' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '\n' => {
                chars.next();
                out.push(Token {
                    kind: Tok::Newline,
                    line: tline,
                    col: tcol,
                });
                line += 1;
                col = 1;
            }
            ';' => {
                bump(&mut chars);
                out.push(Token {
                    kind: Tok::Newline,
                    line: tline,
                    col: tcol,
                });
            }
            '(' | ')' | '{' | '}' | ',' | '|' | '&' | '~' | '=' | '+' | '-' | '*' | '/' => {
                bump(&mut chars);
                let kind = match ch {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    '|' => Tok::Pipe,
                    '&' => Tok::Amp,
                    '~' => Tok::Tilde,
                    '=' => Tok::Eq,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    _ => Tok::Slash,
                };
                out.push(Token {
                    kind,
                    line: tline,
                    col: tcol,
                });
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| ParseError::new(tline, tcol, "malformed integer"))?;
                out.push(Token {
                    kind: Tok::Int(n),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                // query keywords carry a trailing '?'
                if chars.peek() == Some(&'?') {
                    name.push('?');
                    bump(&mut chars);
                }
                out.push(Token {
                    kind: Tok::Ident(name),
                    line: tline,
                    col: tcol,
                });
            }
            other => {
                return Err(ParseError::new(
                    tline,
                    tcol,
                    format!("unexpected character {other:?}"),
                ));
            }
        }
    }
    out.push(Token {
        kind: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let toks = lex("open? (0,1 in usual").unwrap();
        assert_eq!(toks[0].kind, Tok::Ident("open?".into()));
        assert_eq!(toks[0].col, 1);
        assert_eq!(toks[1].kind, Tok::LParen);
        assert_eq!(toks[1].col, 7);
        // the stray 'in' starts at column 12
        assert_eq!(toks[5].kind, Tok::Ident("in".into()));
        assert_eq!(toks[5].col, 12);
    }

    #[test]
    fn comments_and_semicolons() {
        let toks = lex("QQ # trailing\nII; RR").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                &Tok::Ident("QQ".into()),
                &Tok::Newline,
                &Tok::Ident("II".into()),
                &Tok::Newline,
                &Tok::Ident("RR".into()),
                &Tok::Eof
            ]
        );
    }

    #[test]
    fn rejects_strays_without_panicking() {
        assert!(lex("open? $").is_err());
        assert!(lex("\u{1F600}").is_err());
        assert!(lex("a ? b").is_err()); // isolated '?' is not a token
    }
}
