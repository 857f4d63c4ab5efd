//! Grammar:
//!
//! ```text
//! qe   := [eq ("&" eq)*] "=>" eq | eq
//! eq   := term "=" term | term "<=" term        s <= t  means  s = s ^ t
//! term := join ["->" term]
//! join := meet ("v" meet)*
//! meet := fuse ("^" fuse)*
//! fuse := unary ("*" unary)*
//! unary:= "~" unary | atom
//! atom := "(" term ")" | name "(" [term ("," term)*] ")" | constant | variable
//! ```

use crate::algebra::{QuasiEquation, Signature, Term};
use crate::error::{Error, Result};

/// How the infix sugar maps onto operation names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    /// `*` is `fuse`, `->` is `imp`.
    Plain,
    /// `x -> y` abbreviates `~(x * ~y)`.
    DeMorgan,
    /// Fusion is meet: `*` and `fuse(..)` become `meet`.
    Brouwerian,
}

impl Dialect {
    pub fn for_signature(sig: &Signature) -> Dialect {
        let has = |n: &str| sig.index_of(n).is_some();
        if has("fuse") && has("neg") && !has("imp") {
            Dialect::DeMorgan
        } else if !has("fuse") && has("imp") && has("meet") {
            Dialect::Brouwerian
        } else {
            Dialect::Plain
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Le,
    Amp,
    Implies,
    Arrow,
    Caret,
    Vee,
    Star,
    Tilde,
    End,
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
                continue;
            }
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '&' => (Tok::Amp, 1),
            '^' => (Tok::Caret, 1),
            '*' => (Tok::Star, 1),
            '~' => (Tok::Tilde, 1),
            '=' if next == Some('>') => (Tok::Implies, 2),
            '=' => (Tok::Eq, 1),
            '<' if next == Some('=') => (Tok::Le, 2),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = if word == "v" { Tok::Vee } else { Tok::Ident(word) };
                (tok, j - i)
            }
            other => {
                return Err(Error::Parse {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
        i += len;
        column += len;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    dialect: Dialect,
    sig: Option<&'a Signature>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn is_constant(&self, name: &str) -> bool {
        match self.sig {
            Some(sig) => sig.index_of(name).is_some_and(|i| sig.arity(i) == 0),
            None => name == "e",
        }
    }

    fn fuse_name(&self) -> &'static str {
        if self.dialect == Dialect::Brouwerian {
            "meet"
        } else {
            "fuse"
        }
    }

    fn qe(&mut self) -> Result<QuasiEquation> {
        let mut premises = Vec::new();
        if !self.eat(&Tok::Implies) {
            let first = self.eq()?;
            if !matches!(self.peek(), Tok::Amp | Tok::Implies) {
                self.expect(&Tok::End, "`&`, `=>` or end of input")?;
                return Ok(QuasiEquation {
                    premises,
                    conclusion: first,
                });
            }
            premises.push(first);
            while self.eat(&Tok::Amp) {
                premises.push(self.eq()?);
            }
            self.expect(&Tok::Implies, "`=>`")?;
        }
        let conclusion = self.eq()?;
        self.expect(&Tok::End, "end of input")?;
        Ok(QuasiEquation { premises, conclusion })
    }

    fn eq(&mut self) -> Result<(Term, Term)> {
        let s = self.term()?;
        if self.eat(&Tok::Eq) {
            Ok((s, self.term()?))
        } else if self.eat(&Tok::Le) {
            let t = self.term()?;
            Ok((s.clone(), Term::app("meet", vec![s, t])))
        } else {
            Err(self.error("expected `=` or `<=`"))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let lhs = self.join()?;
        if !self.eat(&Tok::Arrow) {
            return Ok(lhs);
        }
        let rhs = self.term()?;
        Ok(match self.dialect {
            Dialect::DeMorgan => Term::app(
                "neg",
                vec![Term::app("fuse", vec![lhs, Term::app("neg", vec![rhs])])],
            ),
            _ => Term::app("imp", vec![lhs, rhs]),
        })
    }

    fn join(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.eat(&Tok::Vee) {
            t = Term::app("join", vec![t, self.meet()?]);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.fuse()?;
        while self.eat(&Tok::Caret) {
            t = Term::app("meet", vec![t, self.fuse()?]);
        }
        Ok(t)
    }

    fn fuse(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(&Tok::Star) {
            t = Term::app(self.fuse_name(), vec![t, self.unary()?]);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&Tok::Tilde) {
            return Ok(Term::app("neg", vec![self.unary()?]));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        if self.eat(&Tok::LParen) {
            let t = self.term()?;
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(t);
        }
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.error("expected a term"));
        };
        self.pos += 1;
        if self.eat(&Tok::LParen) {
            let mut args = Vec::new();
            if !self.eat(&Tok::RParen) {
                loop {
                    args.push(self.term()?);
                    if self.eat(&Tok::RParen) {
                        break;
                    }
                    self.expect(&Tok::Comma, "`,` or `)`")?;
                }
            }
            let name = if name == "fuse" && self.dialect == Dialect::Brouwerian {
                "meet".to_string()
            } else {
                name
            };
            return Ok(Term::app(name, args));
        }
        if self.is_constant(&name) {
            return Ok(Term::constant(name));
        }
        let ok = name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
            && name.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if !ok {
            self.pos -= 1;
            return Err(self.error(format!("`{name}` is not a variable name")));
        }
        Ok(Term::var(name))
    }
}

fn parser<'a>(text: &str, sig: Option<&'a Signature>) -> Result<Parser<'a>> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        dialect: sig.map_or(Dialect::Plain, Dialect::for_signature),
        sig,
    })
}

/// Parses a quasi-equation. With a signature, its constants are recognized,
/// the dialect follows it and every term is checked against it.
pub fn parse_qe(text: &str, sig: Option<&Signature>) -> Result<QuasiEquation> {
    let qe = parser(text, sig)?.qe()?;
    if let Some(sig) = sig {
        for (s, t) in qe.premises.iter().chain(std::iter::once(&qe.conclusion)) {
            s.check(sig)?;
            t.check(sig)?;
        }
    }
    Ok(qe)
}

pub fn parse_term(text: &str, sig: Option<&Signature>) -> Result<Term> {
    let mut p = parser(text, sig)?;
    let t = p.term()?;
    p.expect(&Tok::End, "end of input")?;
    if let Some(sig) = sig {
        t.check(sig)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sugar_and_premises() {
        let q = parse_qe("x ^ y <= z & e <= x => x = y", None).unwrap();
        assert_eq!(q.premises.len(), 2);
        assert_eq!(q.premises[0].1.to_string(), "(x ^ y) ^ z");
        assert_eq!(q.conclusion, (Term::var("x"), Term::var("y")));
    }

    #[test]
    fn precedence() {
        let t = parse_term("~x * y ^ z v w -> a -> b", None).unwrap();
        assert_eq!(t.to_string(), "(((~x * y) ^ z) v w) -> (a -> b)");
    }

    #[test]
    fn demorgan_arrow_expands() {
        let sig = Signature::new([("fuse", 2), ("meet", 2), ("join", 2), ("neg", 1), ("e", 0)]).unwrap();
        let t = parse_term("x -> y", Some(&sig)).unwrap();
        assert_eq!(t.to_string(), "~(x * ~y)");
    }

    #[test]
    fn errors_carry_position() {
        match parse_qe("x = \n  y $ z", None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_qe("x = ", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_reparses() {
        let t = parse_term("~(x v e) * bot() -> x", None).unwrap();
        assert_eq!(parse_term(&t.to_string(), None).unwrap(), t);
    }
}
