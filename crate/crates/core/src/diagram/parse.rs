//! Text syntax for terms.
//!
//! ```text
//! term := par { ";" par }
//! par  := atom { "|" atom }
//! atom := "(" term ")" | gen
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use thiserror::Error;

use super::sort::{sort_check, SortError, Sorting};
use super::term::{Generator, Sort, SortWord, Term};
use crate::field::{parse_ratfunc, parse_rational, FieldError, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: {error}")]
    Sort {
        line: usize,
        col: usize,
        error: SortError,
    },
}

/// Source position of every node in a parsed term, shaped like the term.
#[derive(Debug, Clone)]
pub struct SpanTree {
    pub start: usize,
    pub children: Vec<SpanTree>,
}

impl SpanTree {
    fn leaf(start: usize) -> Self {
        SpanTree {
            start,
            children: Vec::new(),
        }
    }

    /// Byte offset of the subterm at `path` (or of its nearest ancestor).
    pub fn locate(&self, path: &[usize]) -> usize {
        let mut cur = self;
        for &step in path {
            match cur.children.get(step) {
                Some(c) => cur = c,
                None => break,
            }
        }
        cur.start
    }
}

/// 1-based line and column of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
    (line, col)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl<'a> Parser<'a> {
    fn bytes(&self) -> &'a [u8] {
        self.src.as_bytes()
    }

    fn skip_ws(&mut self) {
        let b = self.bytes();
        while self.pos < b.len() {
            match b[self.pos] {
                c if c.is_ascii_whitespace() => self.pos += 1,
                b'#' => {
                    while self.pos < b.len() && b[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err((self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn term(&mut self) -> PResult<(Term, SpanTree)> {
        let (mut t, mut sp) = self.par()?;
        while self.peek() == Some(b';') {
            self.pos += 1;
            let (u, usp) = self.par()?;
            let start = sp.start;
            t = Term::seq(t, u);
            sp = SpanTree {
                start,
                children: vec![sp, usp],
            };
        }
        Ok((t, sp))
    }

    fn par(&mut self) -> PResult<(Term, SpanTree)> {
        let (mut t, mut sp) = self.atom()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let (u, usp) = self.atom()?;
            let start = sp.start;
            t = Term::par(t, u);
            sp = SpanTree {
                start,
                children: vec![sp, usp],
            };
        }
        Ok((t, sp))
    }

    fn atom(&mut self) -> PResult<(Term, SpanTree)> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.term()?;
                self.expect(b')')?;
                Ok(r)
            }
            Some(c) if c.is_ascii_alphabetic() => self.generator(),
            Some(c) => Err((self.pos, format!("unexpected '{}'", c as char))),
            None => Err((self.pos, "unexpected end of input".into())),
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        let b = self.bytes();
        while self.pos < b.len() && b[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos < b.len() && b[self.pos] == b':' {
            self.pos += 1;
            while self.pos < b.len() && b[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            }
        }
        &self.src[start..self.pos]
    }

    /// Consumes `( ... )` and returns the inner text with its offset.
    fn paren_arg(&mut self) -> PResult<(usize, &'a str)> {
        self.expect(b'(')?;
        let start = self.pos;
        let b = self.bytes();
        let mut depth = 1;
        while self.pos < b.len() {
            match b[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner = &self.src[start..self.pos];
                        self.pos += 1;
                        return Ok((start, inner));
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err((start, "unbalanced parentheses".into()))
    }

    fn rational_arg(&mut self) -> PResult<Rational> {
        let (at, inner) = self.paren_arg()?;
        parse_rational(inner).map_err(|e| field_err(at, e))
    }

    fn ratfunc_arg(&mut self) -> PResult<RatFunc> {
        let (at, inner) = self.paren_arg()?;
        parse_ratfunc(inner).map_err(|e| field_err(at, e))
    }

    fn nat(&mut self) -> PResult<usize> {
        self.skip_ws();
        let start = self.pos;
        let b = self.bytes();
        while self.pos < b.len() && b[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| (start, "expected a natural number".to_string()))
    }

    fn generator(&mut self) -> PResult<(Term, SpanTree)> {
        use Generator as G;
        let start = self.pos;
        let w = self.word();
        let g = match w {
            "R" => G::Resistor(self.rational_arg()?),
            "V" => G::VSource(self.rational_arg()?),
            "I" => G::CSource(self.rational_arg()?),
            "L" => G::Inductor(self.rational_arg()?),
            "C" => G::Capacitor(self.rational_arg()?),
            "junc" => G::Junction,
            "cojunc" => G::CoJunction,
            "open" => G::OpenRight,
            "coopen" => G::OpenLeft,
            "voltmeter" => G::Voltmeter,
            "ammeter" => G::Ammeter,
            "cvs" => G::CtrlVSource,
            "ccs" => G::CtrlCSource,
            "copy" => G::Copy,
            "discard" => G::Discard,
            "add" => G::Add,
            "zero" => G::Zero,
            "one" => G::One,
            "cocopy" => G::CoCopy,
            "codiscard" => G::CoDiscard,
            "coadd" => G::CoAdd,
            "cozero" => G::CoZero,
            "scalar" => G::Scalar(self.ratfunc_arg()?),
            "coscalar" => G::CoScalar(self.ratfunc_arg()?),
            "box" => return self.impedance_box(start),
            _ if w.starts_with("id:") => {
                let word = sort_letters(&w[3..]).ok_or((start, format!("bad identity '{w}'")))?;
                return Ok((Term::Id(SortWord(word)), SpanTree::leaf(start)));
            }
            _ if w.starts_with("swap:") => {
                let s = sort_letters(&w[5..]).ok_or((start, format!("bad swap '{w}'")))?;
                if s.len() != 2 {
                    return Err((start, format!("swap needs two sorts, found '{w}'")));
                }
                return Ok((Term::Swap(s[0], s[1]), SpanTree::leaf(start)));
            }
            "" => return Err((start, "expected a generator".into())),
            _ => return Err((start, format!("unknown generator '{w}'"))),
        };
        Ok((Term::Gen(g), SpanTree::leaf(start)))
    }

    fn impedance_box(&mut self, start: usize) -> PResult<(Term, SpanTree)> {
        let explicit = if self.peek() == Some(b'(') {
            self.pos += 1;
            let m = self.nat()?;
            self.expect(b',')?;
            let n = self.nat()?;
            self.expect(b')')?;
            Some((m, n))
        } else {
            None
        };
        self.expect(b'{')?;
        let (payload, psp) = self.term()?;
        self.expect(b'}')?;
        let (m, n) = explicit.unwrap_or((0, 0));
        let t = Term::Gen(Generator::ImpedanceBox {
            m,
            n,
            payload: Box::new(payload),
        });
        Ok((
            t,
            SpanTree {
                start,
                children: vec![psp],
            },
        ))
    }
}

fn sort_letters(s: &str) -> Option<Vec<Sort>> {
    s.chars()
        .map(|c| match c {
            'e' => Some(Sort::Electric),
            'n' => Some(Sort::Info),
            _ => None,
        })
        .collect()
}

fn field_err(at: usize, e: FieldError) -> (usize, String) {
    match e {
        FieldError::Parse { offset, message } => (at + offset, message),
        other => (at, other.to_string()),
    }
}

/// Parses a term, keeping source positions.
pub fn parse_with_spans(text: &str) -> Result<(Term, SpanTree), DiagramError> {
    let mut p = Parser { src: text, pos: 0 };
    let wrap = |(offset, message): (usize, String)| {
        let (line, col) = line_col(text, offset);
        DiagramError::Syntax { line, col, message }
    };
    let r = p.term().map_err(wrap)?;
    if p.peek().is_some() {
        return Err(wrap((p.pos, "trailing input".into())));
    }
    Ok(r)
}

pub fn parse_term(text: &str) -> Result<Term, DiagramError> {
    parse_with_spans(text).map(|(t, _)| t)
}

/// Parses and sort-checks, reporting sort errors at their source position.
pub fn parse_checked(text: &str) -> Result<(Term, Sorting), DiagramError> {
    let (t, spans) = parse_with_spans(text)?;
    match sort_check(&t) {
        Ok(s) => Ok((t, s)),
        Err(error) => {
            let (line, col) = line_col(text, spans.locate(error.path()));
            Err(DiagramError::Sort { line, col, error })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn spec_examples() {
        assert_eq!(
            parse_term("V(5) ; R(2)").unwrap(),
            Term::seq(Term::vsource(q(5)), Term::resistor(q(2)))
        );
        assert_eq!(
            parse_term("box{ scalar(3*x) }").unwrap(),
            Term::boxed(Term::scalar("3*x".parse().unwrap()))
        );
        assert_eq!(
            parse_term("copy ; (id:n | one)").unwrap(),
            Term::seq(Term::copy(), Term::par(Term::id_n(), Term::one()))
        );
    }

    #[test]
    fn rationals_and_functions() {
        assert_eq!(
            parse_term("R(-3/2)").unwrap(),
            Term::resistor(Rational::new((-3).into(), 2.into()))
        );
        let t = parse_term("scalar((3*x^2-1)/(x+2))").unwrap();
        assert_eq!(t, Term::scalar("(3*x^2-1)/(x+2)".parse().unwrap()));
    }

    #[test]
    fn comments_and_layout() {
        let t = parse_term("# a source\nV(1) # then\n ; R(1)").unwrap();
        assert_eq!(t, Term::seq(Term::vsource(q(1)), Term::resistor(q(1))));
    }

    #[test]
    fn box_with_explicit_arity() {
        let t = parse_term("box(0,1){ cozero ; codiscard ; copy }").unwrap();
        match t {
            Term::Gen(Generator::ImpedanceBox { m, n, .. }) => assert_eq!((m, n), (0, 1)),
            _ => panic!(),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_term("R(1) ;\n  frob") {
            Err(DiagramError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_term("R(x)").is_err());
        assert!(parse_term("(R(1)").is_err());
        assert!(parse_term("R(1) R(2)").is_err());
        assert!(parse_term("swap:e").is_err());
    }

    #[test]
    fn sort_errors_have_positions() {
        match parse_checked("copy ;\n R(1)") {
            Err(DiagramError::Sort { line, col, .. }) => assert_eq!((line, col), (2, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wide_identities() {
        assert_eq!(
            parse_term("id:en").unwrap(),
            Term::Id(SortWord(vec![Sort::Electric, Sort::Info]))
        );
        assert_eq!(parse_term("id:").unwrap(), Term::Id(SortWord::empty()));
    }
}
