//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | primary
//! primary := RATIONAL | 'i' | ('sqrt' | 'cbrt' | 'conj') '(' expr ')' | '(' expr ')'
//! ```
//!
//! `RATIONAL` is decimal-free: digits, optionally followed immediately (no
//! whitespace) by `/digits`. With whitespace, `/` is the division operator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Expr, ExprError, GaussianRational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Rational(BigRational),
    Imag,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Token)>, ExprError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            if lx.pos >= lx.src.len() {
                break;
            }
            let start = lx.pos;
            let tok = lx.next_token()?;
            out.push((start, tok));
        }
        Ok(out)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Result<Token, ExprError> {
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Token::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Token::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Token::Star)
            }
            b'/' => {
                self.pos += 1;
                Ok(Token::Slash)
            }
            b'(' => {
                self.pos += 1;
                Ok(Token::LParen)
            }
            b')' => {
                self.pos += 1;
                Ok(Token::RParen)
            }
            b'0'..=b'9' => {
                let num = self.digits();
                // An immediately-following '/digit' makes a rational literal.
                if self.pos + 1 < self.src.len()
                    && self.src[self.pos] == b'/'
                    && self.src[self.pos + 1].is_ascii_digit()
                {
                    self.pos += 1;
                    let den = self.digits();
                    if den.is_zero() {
                        return Err(ExprError::Syntax {
                            pos: self.pos,
                            msg: "rational literal with zero denominator".into(),
                        });
                    }
                    Ok(Token::Rational(BigRational::new(num, den)))
                } else {
                    Ok(Token::Rational(BigRational::from_integer(num)))
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match word {
                    "i" => Ok(Token::Imag),
                    "sqrt" | "cbrt" | "conj" => Ok(Token::Ident(word.to_string())),
                    other => Err(ExprError::Syntax {
                        pos: start,
                        msg: format!("unknown identifier {other:?}"),
                    }),
                }
            }
            other => Err(ExprError::Syntax {
                pos: self.pos,
                msg: format!("unexpected character {:?}", other as char),
            }),
        }
    }

    fn digits(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap()
    }
}

struct Parser {
    toks: Vec<(usize, Token)>,
    idx: usize,
    end: usize,
}

/// Parse an expression; errors carry the byte offset of the offending token.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if let Some((pos, _)) = p.peek_at() {
        return Err(ExprError::Syntax {
            pos,
            msg: "trailing input after expression".into(),
        });
    }
    Ok(e)
}

impl Parser {
    fn peek_at(&self) -> Option<(usize, Token)> {
        self.toks.get(self.idx).cloned()
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.idx)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    lhs = Expr::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            let inner = self.unary()?;
            // Fold unary minus into real literals so "-8" is a literal, which
            // keeps printing and re-parsing structurally stable.
            if let Expr::Lit(g) = &inner {
                if g.is_real() {
                    return Ok(Expr::Lit(GaussianRational::new(
                        -g.re.clone(),
                        BigRational::zero(),
                    )));
                }
            }
            return Ok(Expr::neg(inner));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Rational(r)) => Ok(Expr::Lit(GaussianRational::new(
                r,
                BigRational::zero(),
            ))),
            Some(Token::Imag) => Ok(Expr::Lit(GaussianRational::i())),
            Some(Token::Ident(name)) => {
                let open = self.here();
                match self.bump() {
                    Some(Token::LParen) => {}
                    _ => {
                        return Err(ExprError::Syntax {
                            pos: open,
                            msg: format!("expected '(' after {name}"),
                        })
                    }
                }
                let inner = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Token::RParen) => {}
                    _ => {
                        return Err(ExprError::Syntax {
                            pos: close,
                            msg: format!("unclosed argument of {name}"),
                        })
                    }
                }
                Ok(match name.as_str() {
                    "sqrt" => Expr::sqrt(inner),
                    "cbrt" => Expr::cbrt(inner),
                    _ => Expr::conj(inner),
                })
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ExprError::Syntax {
                        pos: close,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some(tok) => Err(ExprError::Syntax {
                pos,
                msg: format!("unexpected token {tok:?}"),
            }),
            None => Err(ExprError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}
