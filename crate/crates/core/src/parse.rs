//! Recursive descent parser for the term grammar
//!
//! ```text
//! term := var | name "(" term ("," term)* ")"
//! var  := "x" digits | letter-name
//! ```
//!
//! Whitespace is insignificant. The letter names `x, y, z, w, u, v` stand for
//! `x1 .. x6`, so `f(y,f(y,x))` and `f(x2,f(x2,x1))` are the same term.

use thiserror::Error;

use crate::term::{
    is_identifier, Equation, Signature, SignatureError, Term, VarIndex, VARIABLE_ALIASES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is neither a variable nor a symbol of the signature")]
    UnknownVariable(String),
    #[error("symbol `{symbol}` expects {expected} arguments, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("trailing input")]
    Trailing,
    #[error("expected `=` between the two sides of an equation")]
    MissingEquals,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => Err(self.err(ParseErrorKind::Unexpected(c))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut end = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_alphabetic() || c == '_'
            } else {
                c.is_alphanumeric() || c == '_' || c == '\''
            };
            if !ok {
                break;
            }
            end = i + c.len_utf8();
        }
        if end == 0 {
            return Err(match rest.chars().next() {
                Some(c) => self.err(ParseErrorKind::Unexpected(c)),
                None => self.err(ParseErrorKind::UnexpectedEnd),
            });
        }
        self.pos += end;
        Ok((start, &rest[..end]))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (start, name) = self.ident()?;
        if self.peek() == Some('(') {
            let op = self.sig.lookup(name).ok_or(ParseError {
                offset: start,
                kind: ParseErrorKind::UnknownSymbol(name.to_string()),
            })?;
            self.expect('(')?;
            let mut args = vec![self.term()?];
            while self.peek() == Some(',') {
                self.expect(',')?;
                args.push(self.term()?);
            }
            self.expect(')')?;
            let expected = self.sig.arity(op);
            if args.len() != expected {
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::ArityMismatch {
                        symbol: name.to_string(),
                        expected,
                        found: args.len(),
                    },
                });
            }
            return Ok(Term::App(op, args.into()));
        }
        if let Some(i) = variable_index(name) {
            return Ok(Term::Var(i));
        }
        let kind = match self.sig.lookup(name) {
            Some(op) => ParseErrorKind::ArityMismatch {
                symbol: name.to_string(),
                expected: self.sig.arity(op),
                found: 0,
            },
            None => ParseErrorKind::UnknownVariable(name.to_string()),
        };
        Err(ParseError {
            offset: start,
            kind,
        })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.err(ParseErrorKind::Trailing)),
        }
    }
}

fn variable_index(name: &str) -> Option<VarIndex> {
    if let Some(i) = VARIABLE_ALIASES.iter().position(|a| *a == name) {
        return Some(i as VarIndex + 1);
    }
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<VarIndex>().ok().filter(|&i| i > 0)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        sig,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `s = t` (`≈` is accepted as well).
pub fn parse_equation(text: &str, sig: &Signature) -> Result<Equation, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        sig,
    };
    let lhs = p.term()?;
    match p.peek() {
        Some('=') => p.expect('=')?,
        Some('≈') => p.expect('≈')?,
        Some(_) => return Err(p.err(ParseErrorKind::MissingEquals)),
        None => return Err(p.err(ParseErrorKind::UnexpectedEnd)),
    }
    let rhs = p.term()?;
    p.finish()?;
    Ok(Equation::new(lhs, rhs))
}

#[derive(Debug, Error)]
pub enum SignatureFileError {
    #[error("line {line}: expected `op <name> <arity>`")]
    Syntax { line: usize },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: SignatureError,
    },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Reads a signature file: one `op <name> <arity>` per line; `#` starts a
/// comment.
pub fn parse_signature(text: &str) -> Result<Signature, SignatureFileError> {
    let mut symbols = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let (name, arity) = match words.as_slice() {
            ["op", name, arity] => match arity.parse::<usize>() {
                Ok(a) => (*name, a),
                Err(_) => return Err(SignatureFileError::Syntax { line: n + 1 }),
            },
            _ => return Err(SignatureFileError::Syntax { line: n + 1 }),
        };
        if !is_identifier(name) {
            return Err(SignatureFileError::Invalid {
                line: n + 1,
                source: SignatureError::BadName(name.to_string()),
            });
        }
        symbols.push((name.to_string(), arity));
    }
    Ok(Signature::new(symbols)?)
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::OpId;

    fn f(a: Term, b: Term) -> Term {
        Term::app(OpId(0), [a, b])
    }

    #[test]
    fn parses_nested_application() {
        let sig = Signature::binary();
        let t = parse_term("f(x1,f(x2,x1))", &sig).unwrap();
        assert_eq!(t, f(Term::Var(1), f(Term::Var(2), Term::Var(1))));
    }

    #[test]
    fn letter_names_alias_indexed_variables() {
        let sig = Signature::binary();
        let a = parse_term(" f( y , f(y,x) ) ", &sig).unwrap();
        let b = parse_term("f(x2,f(x2,x1))", &sig).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let sig = Signature::binary();
        let err = parse_term("f(x1)", &sig).unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::ArityMismatch {
                expected: 2,
                found: 1,
                ..
            }
        ));
        let err = parse_term("f", &sig).unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::ArityMismatch { found: 0, .. }
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let sig = Signature::binary();
        let err = parse_term("f(x1,,x2)", &sig).unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(err.kind, ParseErrorKind::Unexpected(','));
        assert_eq!(
            parse_term("g(x1)", &sig).unwrap_err().kind,
            ParseErrorKind::UnknownSymbol("g".into())
        );
        assert_eq!(
            parse_term("f(x1,x2) x3", &sig).unwrap_err().kind,
            ParseErrorKind::Trailing
        );
        assert!(matches!(
            parse_term("x0", &sig).unwrap_err().kind,
            ParseErrorKind::UnknownVariable(_)
        ));
        assert_eq!(
            parse_term("f(x1,", &sig).unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
    }

    #[test]
    fn equations() {
        let sig = Signature::binary();
        let e = parse_equation("f(x,y) = f(y,x)", &sig).unwrap();
        assert_eq!(e.lhs, f(Term::Var(1), Term::Var(2)));
        assert_eq!(e.rhs, f(Term::Var(2), Term::Var(1)));
        assert!(parse_equation("f(x,y) ≈ x", &sig).is_ok());
        assert_eq!(
            parse_equation("f(x,y) x", &sig).unwrap_err().kind,
            ParseErrorKind::MissingEquals
        );
    }

    #[test]
    fn signature_file() {
        let sig = parse_signature("# type (3,2)\nop g 3\nop f 2  # binary\n\n").unwrap();
        assert_eq!(sig.len(), 2);
        assert_eq!(sig.arity(sig.lookup("g").unwrap()), 3);
        assert!(matches!(
            parse_signature("op f two"),
            Err(SignatureFileError::Syntax { line: 1 })
        ));
        assert!(parse_signature("op f 2\nop f 3").is_err());
    }
}
