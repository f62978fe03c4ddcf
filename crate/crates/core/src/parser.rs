//! Text grammar for potentials.
//!
//! Terms separated by `+`/`-`; a coefficient is an optional integer or `a/b`
//! rational (a residue for prime fields); a word is `xi` factors joined by
//! `*` with optional `^e`; a parenthesized word followed by `~` denotes the
//! sum over all of its rotations. `#` begins a comment line; whitespace is
//! insignificant. Examples:
//!
//! ```text
//! (x1*x2^3)~
//! 3 (x2^3*x1)~ + (x1^5)~
//! x1*x2*x3 + x2*x3*x1 + x3*x1*x2
//! ```

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::free_algebra::{NCPoly, Word};
use crate::potential::{cyclic_symmetrize, Potential};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Tilde,
    LParen,
    RParen,
    Int(i64),
    Gen(usize),
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn skip_ws_and_comments(&mut self) {
        while let Some(&b) = self.src.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.bump();
            } else if b == b'#' {
                while let Some(&c) = self.src.get(self.pos) {
                    if c == b'\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize, usize)> {
        self.skip_ws_and_comments();
        let (line, col) = (self.line, self.col);
        let b = match self.src.get(self.pos).copied() {
            None => return Ok((Tok::Eof, line, col)),
            Some(b) => b,
        };
        let tok = match b {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'/' => {
                self.bump();
                Tok::Slash
            }
            b'~' => {
                self.bump();
                Tok::Tilde
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'x' => {
                self.bump();
                let n = self.integer().map_err(|_| Error::Parse {
                    line,
                    col,
                    msg: "generator needs an index, e.g. x1".into(),
                })?;
                if n < 1 || n > 255 {
                    return Err(Error::Parse {
                        line,
                        col,
                        msg: format!("generator index {n} out of range 1..=255"),
                    });
                }
                Tok::Gen(n as usize)
            }
            b'0'..=b'9' => Tok::Int(self.integer()?),
            other => {
                return Err(self.err(format!("unexpected character '{}'", other as char)));
            }
        };
        Ok((tok, line, col))
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            if b.is_ascii_digit() {
                self.bump();
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer literal too large"))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok, usize, usize)>,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&(Tok, usize, usize)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn advance(&mut self) -> Result<(Tok, usize, usize)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next(),
        }
    }

    fn err_at(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// sum := ['-'] term (('+'|'-') term)*
    fn sum(&mut self) -> Result<NCPoly> {
        let mut acc = NCPoly::zero(self.field);
        let mut negate = false;
        if matches!(self.peek()?.0, Tok::Minus) {
            self.advance()?;
            negate = true;
        }
        loop {
            let term = self.term(negate)?;
            acc = acc.add(&term)?;
            match self.peek()?.0 {
                Tok::Plus => {
                    self.advance()?;
                    negate = false;
                }
                Tok::Minus => {
                    self.advance()?;
                    negate = true;
                }
                Tok::Eof => return Ok(acc),
                _ => {
                    let (_, line, col) = self.advance()?;
                    return Err(self.err_at(line, col, "expected '+', '-' or end of input"));
                }
            }
        }
    }

    /// term := [coeff] factor | coeff
    fn term(&mut self, negate: bool) -> Result<NCPoly> {
        let mut coeff = match self.peek()?.0 {
            Tok::Int(_) => {
                let (tok, _, _) = self.advance()?;
                let a = match tok {
                    Tok::Int(v) => v,
                    _ => unreachable!(),
                };
                if matches!(self.peek()?.0, Tok::Slash) {
                    self.advance()?;
                    let (tok, line, col) = self.advance()?;
                    let b = match tok {
                        Tok::Int(v) => v,
                        _ => return Err(self.err_at(line, col, "expected denominator")),
                    };
                    self.field.from_fraction(a, b).map_err(|e| {
                        self.err_at(line, col, e.to_string())
                    })?
                } else {
                    self.field.from_i64(a)
                }
            }
            _ => self.field.one(),
        };
        if negate {
            coeff = coeff.neg(&self.field);
        }
        match self.peek()?.0 {
            Tok::Gen(_) => {
                let w = self.word()?;
                Ok(NCPoly::monomial(w, coeff, self.field))
            }
            Tok::LParen => {
                let (_, line, col) = self.advance()?;
                let w = self.word()?;
                let (tok, l2, c2) = self.advance()?;
                if tok != Tok::RParen {
                    return Err(self.err_at(l2, c2, "expected ')'"));
                }
                let (tok, l3, c3) = self.advance()?;
                if tok != Tok::Tilde {
                    return Err(self.err_at(l3, c3, "expected '~' after ')'"));
                }
                cyclic_symmetrize(&w, &coeff, self.field).map_err(|_| {
                    self.err_at(line, col, "cannot cyclicize the empty word")
                })
            }
            _ => {
                // bare coefficient: a constant term, rejected later by the
                // degree-window validation
                Ok(NCPoly::monomial(Word::one(), coeff, self.field))
            }
        }
    }

    /// word := atom ('*' atom)* ; atom := xi ['^' e]
    fn word(&mut self) -> Result<Word> {
        let mut letters: Vec<usize> = Vec::new();
        loop {
            let (tok, line, col) = self.advance()?;
            let g = match tok {
                Tok::Gen(g) => g,
                _ => return Err(self.err_at(line, col, "expected a generator like x1")),
            };
            let mut exp = 1i64;
            if matches!(self.peek()?.0, Tok::Caret) {
                self.advance()?;
                let (tok, l2, c2) = self.advance()?;
                exp = match tok {
                    Tok::Int(v) if v >= 1 => v,
                    _ => return Err(self.err_at(l2, c2, "expected a positive exponent")),
                };
            }
            for _ in 0..exp {
                letters.push(g);
            }
            if matches!(self.peek()?.0, Tok::Star) {
                self.advance()?;
            } else {
                break;
            }
        }
        Ok(Word::from_indices(&letters))
    }
}

/// Parses a potential from the grammar. The generator count defaults to the
/// largest index that appears; `n_override` widens (never narrows) it.
/// Validates cyclic invariance and the degree window k >= 3.
pub fn parse_potential(
    text: &str,
    field: FieldSpec,
    n_override: Option<usize>,
) -> Result<Potential> {
    let mut parser = Parser {
        lexer: Lexer::new(text),
        peeked: None,
        field,
    };
    let poly = parser.sum()?;
    let inferred = poly.max_generator_index();
    let n = match n_override {
        Some(n) if n >= inferred => n,
        Some(n) => {
            return Err(Error::IndexOutOfRange { index: inferred, n });
        }
        None => inferred,
    };
    Potential::new(poly, n.max(1))
}

/// Prints a potential in the grammar so it can be re-parsed. One line per
/// term, decreasing deglex order.
pub fn format_potential(f: &Potential) -> String {
    if f.poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in f.poly.terms.iter().rev().enumerate() {
        let cs = c.to_string();
        let (negative, magnitude) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if i > 0 {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        if magnitude == "1" {
            out.push_str(&w.to_string());
        } else {
            out.push_str(&format!("{magnitude} {w}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::example_potential_kgen;

    const F: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn parses_symmetrized_example() {
        let f = parse_potential("(x1^2*x2^2)~", F, None).unwrap();
        let g = example_potential_kgen(2, 4, F).unwrap();
        assert_eq!(f, g);

        let h = parse_potential("(x1*x2^3)~", F, None).unwrap();
        assert_eq!(h.poly.num_terms(), 4);
        assert_eq!((h.k, h.m), (4, 4));
    }

    #[test]
    fn degree_window_guard() {
        // cyclically invariant but k = 2
        let e = parse_potential("x1*x2 + x2*x1", F, None).unwrap_err();
        assert!(matches!(e, Error::DegreeWindow(_)));
    }

    #[test]
    fn mixed_degrees_and_coefficients() {
        let f = parse_potential("3 (x2^3*x1)~ + (x1^5)~", F, None).unwrap();
        assert_eq!((f.k, f.m), (4, 5));
        assert_eq!(f.n, 2);
        let w = Word::from_indices(&[1, 1, 1, 1, 1]);
        assert_eq!(f.poly.terms[&w], F.from_i64(5));
    }

    #[test]
    fn rational_coefficients_and_comments() {
        let f = parse_potential("# a comment\n1/2 (x1*x2*x2)~\n", F, None).unwrap();
        let w = Word::from_indices(&[1, 2, 2]);
        assert_eq!(f.poly.terms[&w], F.from_fraction(1, 2).unwrap());
    }

    #[test]
    fn non_invariant_rejected() {
        let e = parse_potential("x1*x2*x2", F, None).unwrap_err();
        assert!(matches!(e, Error::NotCyclicallyInvariant(_, _)));
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_potential("(x1*x2^3)~ + $", F, None).unwrap_err();
        match e {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 14);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn roundtrip() {
        for f in [
            example_potential_kgen(2, 4, F).unwrap(),
            example_potential_kgen(3, 3, F).unwrap(),
            parse_potential("2 (x1*x2^3)~ - 1/3 (x1^4)~", F, None).unwrap(),
        ] {
            let text = format_potential(&f);
            let back = parse_potential(&text, F, Some(f.n)).unwrap();
            assert_eq!(f, back);
        }
    }

    #[test]
    fn subtraction_and_unary_minus() {
        let f = parse_potential("-(x1*x2^3)~ + 2 (x1^4)~", F, None).unwrap();
        let w = Word::from_indices(&[1, 2, 2, 2]);
        assert_eq!(f.poly.terms[&w], F.from_i64(-1));
    }
}
