use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use super::ast::Expr;
use super::lexer::{tokenize, Token, TokenKind};
use crate::error::{Error, Result};

/// Recursive descent over
///
/// ```text
/// expr   := term (("+" | "-") term)*
/// term   := factor ("*" factor)*
/// factor := "V" labels | "U" labels | "S+" | "S-"
///         | "dual(" expr ")" | "(" expr ")" | query
/// query  := "dim(" expr ")" | "mult(" expr "," labels ")"
///         | "pair(" expr "," expr ")" | "ind(" labels ")"
/// labels := "[" int ("," int)* "]"
/// ```
///
/// Queries may appear wherever a factor may, so integer results combine
/// with `+`, `-` and `*`.
struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Token {
        self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos];
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, token: Token, expected: &str) -> Result<T> {
        Err(Error::Parse {
            column: token.column,
            message: format!("expected {}, found {}", expected, token.kind.describe()),
        })
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<()> {
        let t = self.peek();
        if t.kind == kind {
            self.bump();
            Ok(())
        } else {
            self.error(t, what)
        }
    }

    fn labels(&mut self) -> Result<Vec<i64>> {
        self.expect(TokenKind::LBracket, "'['")?;
        let mut out = Vec::new();
        loop {
            let t = self.bump();
            match t.kind {
                TokenKind::Int(n) => out.push(n),
                _ => return self.error(t, "integer"),
            }
            let t = self.bump();
            match t.kind {
                TokenKind::Comma => continue,
                TokenKind::RBracket => return Ok(out),
                _ => return self.error(t, "',' or ']'"),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    left = Expr::Sum(Box::new(left), Box::new(self.term()?));
                }
                TokenKind::Minus => {
                    self.bump();
                    left = Expr::Diff(Box::new(left), Box::new(self.term()?));
                }
                _ => return Ok(left),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            left = Expr::Tensor(Box::new(left), Box::new(self.factor()?));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.kind {
            TokenKind::V => Ok(Expr::IrrepChar(self.labels()?)),
            TokenKind::U => Ok(Expr::TorusChar(self.labels()?)),
            TokenKind::SPlus => Ok(Expr::SpinorPlus),
            TokenKind::SMinus => Ok(Expr::SpinorMinus),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::Dual => {
                self.expect(TokenKind::LParen, "'('")?;
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::Dual(Box::new(e)))
            }
            TokenKind::Dim => {
                self.expect(TokenKind::LParen, "'('")?;
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::Dim(Box::new(e)))
            }
            TokenKind::Mult => {
                self.expect(TokenKind::LParen, "'('")?;
                let e = self.expr()?;
                self.expect(TokenKind::Comma, "','")?;
                let l = self.labels()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::Mult(Box::new(e), l))
            }
            TokenKind::Pair => {
                self.expect(TokenKind::LParen, "'('")?;
                let a = self.expr()?;
                self.expect(TokenKind::Comma, "','")?;
                let b = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::PairT(Box::new(a), Box::new(b)))
            }
            TokenKind::Ind => {
                self.expect(TokenKind::LParen, "'('")?;
                let l = self.labels()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(Expr::Ind(l))
            }
            _ => self.error(t, "factor"),
        }
    }
}

/// Parses a full token stream (as produced by [`tokenize`]).
pub fn parse(tokens: &[Token]) -> Result<Expr> {
    match tokens.last() {
        Some(t) if t.kind == TokenKind::Eof => {}
        _ => return Err(Error::InvalidArgument("token stream must end with Eof".into())),
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    let t = p.peek();
    if t.kind != TokenKind::Eof {
        return p.error(t, "end of input");
    }
    Ok(e)
}

/// `parse(tokenize(src))`.
pub fn parse_str(src: &str) -> Result<Expr> {
    parse(&tokenize(src)?)
}
