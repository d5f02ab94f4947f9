//! Textual term syntax for the clonoid commands.
//!
//! Grammar: `expr := term ('+' term)*`, `term := [INT '*'] factor`,
//! `factor := 'x'INT | 'f' '(' expr ')' | '(' expr ')'`. Variables are
//! `x1..xn`; `3*x1` means `x1 + x1 + x1`.

use finloop::clonoid::TermAst;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(u64),
    Var(usize),
    F,
    Plus,
    Star,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            'f' => {
                chars.next();
                tokens.push(Token::F);
            }
            'x' => {
                chars.next();
                let idx = read_int(&mut chars)
                    .ok_or_else(|| CliError::Parse("expected index after `x`".into()))?;
                if idx == 0 {
                    return Err(CliError::Parse("variables are numbered from x1".into()));
                }
                tokens.push(Token::Var(idx as usize - 1));
            }
            '0'..='9' => {
                let v = read_int(&mut chars).unwrap();
                tokens.push(Token::Int(v));
            }
            other => {
                return Err(CliError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}

fn read_int(chars: &mut std::iter::Peekable<std::str::Chars>) -> Option<u64> {
    let mut out: Option<u64> = None;
    while let Some(&c) = chars.peek() {
        if let Some(d) = c.to_digit(10) {
            chars.next();
            out = Some(out.unwrap_or(0) * 10 + d as u64);
        } else {
            break;
        }
    }
    out
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += t.is_some() as usize;
        t
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        match self.next() {
            Some(t) if t == token => Ok(()),
            other => Err(CliError::Parse(format!("expected {what}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<TermAst> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.next();
            acc = acc.add(self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TermAst> {
        if let Some(Token::Int(m)) = self.peek().cloned() {
            self.next();
            self.expect(Token::Star, "`*` after repetition count")?;
            let factor = self.factor()?;
            return Ok(factor.repeat(m));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<TermAst> {
        match self.next() {
            Some(Token::Var(i)) => Ok(TermAst::var(i)),
            Some(Token::F) => {
                self.expect(Token::Open, "`(` after f")?;
                let inner = self.expr()?;
                self.expect(Token::Close, "closing `)`")?;
                Ok(inner.apply())
            }
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect(Token::Close, "closing `)`")?;
                Ok(inner)
            }
            other => Err(CliError::Parse(format!("expected a factor, found {other:?}"))),
        }
    }
}

pub fn parse_term(text: &str) -> Result<TermAst> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        at: 0,
    };
    let term = parser.expr()?;
    if parser.at != parser.tokens.len() {
        return Err(CliError::Parse("trailing input after term".into()));
    }
    Ok(term)
}

/// Renders a term in the same syntax `parse_term` accepts.
pub fn render_term(term: &TermAst) -> String {
    match term {
        TermAst::Var(i) => format!("x{}", i + 1),
        TermAst::Add(a, b) => format!("{} + {}", render_term(a), render_term(b)),
        TermAst::Repeat(m, t) => match **t {
            TermAst::Var(_) | TermAst::Apply(_) => format!("{m}*{}", render_term(t)),
            _ => format!("{m}*({})", render_term(t)),
        },
        TermAst::Apply(t) => format!("f({})", render_term(t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_syntax() {
        let t = parse_term("3*x1 + f(x2 + 2*x1)").unwrap();
        assert_eq!(t.min_arity(), 2);
        let rendered = render_term(&t);
        let again = parse_term(&rendered).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_term("x0").is_err());
        assert!(parse_term("f(x1").is_err());
        assert!(parse_term("x1 +").is_err());
        assert!(parse_term("3 x1").is_err());
        assert!(parse_term("y1").is_err());
    }

    #[test]
    fn nested_applications() {
        let t = parse_term("f(x1 + f(x2))").unwrap();
        assert!(matches!(t, TermAst::Apply(_)));
    }
}
