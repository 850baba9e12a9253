use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    V,
    U,
    SPlus,
    SMinus,
    Dim,
    Mult,
    Pair,
    Ind,
    Dual,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Int(i64),
    Star,
    Plus,
    Minus,
    Eof,
}

impl TokenKind {
    /// Source spelling, used in error messages and by the printer.
    pub fn describe(&self) -> alloc::string::String {
        match self {
            TokenKind::V => "V".into(),
            TokenKind::U => "U".into(),
            TokenKind::SPlus => "S+".into(),
            TokenKind::SMinus => "S-".into(),
            TokenKind::Dim => "dim".into(),
            TokenKind::Mult => "mult".into(),
            TokenKind::Pair => "pair".into(),
            TokenKind::Ind => "ind".into(),
            TokenKind::Dual => "dual".into(),
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
            TokenKind::LBracket => "[".into(),
            TokenKind::RBracket => "]".into(),
            TokenKind::Comma => ",".into(),
            TokenKind::Int(n) => format!("{}", n),
            TokenKind::Star => "*".into(),
            TokenKind::Plus => "+".into(),
            TokenKind::Minus => "-".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

/// A token and the 1-based column of its first character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub column: usize,
}

fn parse_error(column: usize, message: alloc::string::String) -> Error {
    Error::Parse { column, message }
}

/// Splits `src` into tokens, ending with `Eof`. A `-` directly followed by a
/// digit is read as the sign of an integer when it comes right after `[` or
/// `,`, so label lists like `[-2,1]` carry signed integers.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out: Vec<Token> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let after_separator = matches!(
            out.last().map(|t| t.kind),
            Some(TokenKind::LBracket) | Some(TokenKind::Comma)
        );
        let signed = c == '-' && after_separator && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || signed {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: alloc::string::String = chars[start..i].iter().collect();
            let value = text
                .parse::<i64>()
                .map_err(|_| parse_error(column, format!("integer {} out of range", text)))?;
            out.push(Token {
                kind: TokenKind::Int(value),
                column,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: alloc::string::String = chars[start..i].iter().collect();
            let kind = match word.as_str() {
                "V" => TokenKind::V,
                "U" => TokenKind::U,
                "dim" => TokenKind::Dim,
                "mult" => TokenKind::Mult,
                "pair" => TokenKind::Pair,
                "ind" => TokenKind::Ind,
                "dual" => TokenKind::Dual,
                "S" => match chars.get(i) {
                    Some('+') => {
                        i += 1;
                        TokenKind::SPlus
                    }
                    Some('-') => {
                        i += 1;
                        TokenKind::SMinus
                    }
                    _ => return Err(parse_error(column, "expected S+ or S-".into())),
                },
                other => return Err(parse_error(column, format!("unknown identifier '{}'", other))),
            };
            out.push(Token { kind, column });
            continue;
        }
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            ',' => TokenKind::Comma,
            '*' => TokenKind::Star,
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            other => return Err(parse_error(column, format!("illegal character '{}'", other))),
        };
        out.push(Token { kind, column });
        i += 1;
    }
    out.push(Token {
        kind: TokenKind::Eof,
        column: chars.len() + 1,
    });
    Ok(out)
}
