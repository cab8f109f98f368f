//! One-line constructor expressions such as `blowup(c3; c3, c3, c3)`.
//!
//! ```text
//! expr  := ident | ident '(' args ')'
//! args  := arg (',' arg)*          arg := expr | integer
//! blowup(h; e₁, …, eₙ)             one part per vertex of h
//! blowup(h; e, n)                  h[e]ₙ, n must equal |V(h)|
//! ```

use std::fmt;

use super::{blow_up, c3, dijoin, k_join, qn, transitive};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    C3,
    Tt(usize),
    Qn(usize),
    Rev(Box<Expr>),
    Dijoin(Box<Expr>, Box<Expr>),
    Join(Vec<Expr>),
    Blowup { host: Box<Expr>, parts: Vec<Expr> },
    BlowupUniform { host: Box<Expr>, part: Box<Expr>, count: usize },
}

impl Expr {
    pub fn build(&self) -> Result<Digraph> {
        match self {
            Expr::C3 => Ok(c3()),
            Expr::Tt(n) => checked_order(*n).map(transitive),
            Expr::Qn(n) => checked_order(*n).map(qn),
            Expr::Rev(e) => Ok(e.build()?.reverse()),
            Expr::Dijoin(l, r) => dijoin(&l.build()?, &r.build()?),
            Expr::Join(parts) => k_join(&build_all(parts)?),
            Expr::Blowup { host, parts } => blow_up(&host.build()?, &build_all(parts)?),
            Expr::BlowupUniform { host, part, count } => {
                let h = host.build()?;
                if h.order() != *count {
                    return Err(Error::usage(format!(
                        "uniform blow-up count {count} does not match host order {}",
                        h.order()
                    )));
                }
                let p = part.build()?;
                blow_up(&h, &vec![p; *count])
            }
        }
    }
}

fn checked_order(n: usize) -> Result<usize> {
    if n > crate::f2::MAX_WIDTH {
        Err(Error::TooLarge {
            what: "digraph order",
            got: n,
            limit: crate::f2::MAX_WIDTH,
        })
    } else {
        Ok(n)
    }
}

fn build_all(parts: &[Expr]) -> Result<Vec<Digraph>> {
    parts.iter().map(Expr::build).collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::C3 => f.write_str("c3"),
            Expr::Tt(n) => write!(f, "tt({n})"),
            Expr::Qn(n) => write!(f, "qn({n})"),
            Expr::Rev(e) => write!(f, "rev({e})"),
            Expr::Dijoin(l, r) => write!(f, "dijoin({l}, {r})"),
            Expr::Join(parts) => {
                f.write_str("join(")?;
                write_list(f, parts)?;
                f.write_str(")")
            }
            Expr::Blowup { host, parts } => {
                write!(f, "blowup({host}; ")?;
                write_list(f, parts)?;
                f.write_str(")")
            }
            Expr::BlowupUniform { host, part, count } => write!(f, "blowup({host}; {part}, {count})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Int(usize),
    Open,
    Close,
    Comma,
    Semi,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    /// Next token and its byte offset.
    fn next(&mut self) -> Result<(Tok<'a>, usize)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        let single = match c {
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        let run = |pred: fn(u8) -> bool| bytes[start..].iter().take_while(|&&b| pred(b)).count();
        if c.is_ascii_digit() {
            let len = run(|b| b.is_ascii_digit());
            self.pos += len;
            let text = &self.src[start..start + len];
            let value = text
                .parse()
                .map_err(|_| Error::parse(start, format!("integer {text} out of range")))?;
            return Ok((Tok::Int(value), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let len = run(|b| b.is_ascii_alphanumeric() || b == b'_');
            self.pos += len;
            return Ok((Tok::Ident(&self.src[start..start + len]), start));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Error::parse(start, format!("unexpected character {ch:?}")))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(Tok<'a>, usize)>,
}

enum Arg {
    Expr(Expr, usize),
    Int(usize, usize),
}

impl Arg {
    fn offset(&self) -> usize {
        match self {
            Arg::Expr(_, o) | Arg::Int(_, o) => *o,
        }
    }
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<&(Tok<'a>, usize)> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    fn bump(&mut self) -> Result<(Tok<'a>, usize)> {
        self.peek()?;
        Ok(self.peeked.take().expect("just peeked"))
    }

    fn expect(&mut self, want: Tok<'static>, what: &str) -> Result<usize> {
        let (tok, at) = self.bump()?;
        if tok == want {
            Ok(at)
        } else {
            Err(Error::parse(at, format!("expected {what}, found {}", describe(&tok))))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let (tok, at) = self.bump()?;
        let Tok::Ident(name) = tok else {
            return Err(Error::parse(at, format!("expected a constructor, found {}", describe(&tok))));
        };
        let has_args = matches!(self.peek()?.0, Tok::Open);
        match name {
            "c3" => {
                if has_args {
                    self.bump()?;
                    self.expect(Tok::Close, "')'")?;
                }
                Ok(Expr::C3)
            }
            "tt" | "qn" => {
                let args = self.call_args(at, name)?;
                let n = single_count(name, at, &args)?;
                Ok(if name == "tt" { Expr::Tt(n) } else { Expr::Qn(n) })
            }
            "rev" => {
                let mut exprs = exprs_only(name, self.call_args(at, name)?)?;
                if exprs.len() != 1 {
                    return Err(Error::parse(at, format!("rev takes 1 argument, got {}", exprs.len())));
                }
                Ok(Expr::Rev(Box::new(exprs.remove(0))))
            }
            "dijoin" => {
                let exprs = exprs_only(name, self.call_args(at, name)?)?;
                if exprs.len() != 2 {
                    return Err(Error::parse(at, format!("dijoin takes 2 arguments, got {}", exprs.len())));
                }
                let mut it = exprs.into_iter();
                let (l, r) = (it.next().expect("two"), it.next().expect("two"));
                Ok(Expr::Dijoin(Box::new(l), Box::new(r)))
            }
            "join" => {
                let exprs = exprs_only(name, self.call_args(at, name)?)?;
                if exprs.is_empty() {
                    return Err(Error::parse(at, "join takes at least 1 argument"));
                }
                Ok(Expr::Join(exprs))
            }
            "blowup" => self.blowup(at),
            other => Err(Error::parse(at, format!("unknown constructor {other:?}"))),
        }
    }

    /// `'(' args ')'`, requiring the parenthesis.
    fn call_args(&mut self, at: usize, name: &str) -> Result<Vec<Arg>> {
        let (tok, open_at) = self.bump()?;
        if tok != Tok::Open {
            return Err(Error::parse(open_at, format!("{name} at offset {at} needs arguments in parentheses")));
        }
        let args = self.arg_list()?;
        self.expect(Tok::Close, "')'")?;
        Ok(args)
    }

    fn arg_list(&mut self) -> Result<Vec<Arg>> {
        let mut args = Vec::new();
        if matches!(self.peek()?.0, Tok::Close) {
            return Ok(args);
        }
        loop {
            args.push(self.arg()?);
            if matches!(self.peek()?.0, Tok::Comma) {
                self.bump()?;
            } else {
                return Ok(args);
            }
        }
    }

    fn arg(&mut self) -> Result<Arg> {
        let &(ref tok, at) = self.peek()?;
        if let Tok::Int(v) = *tok {
            self.bump()?;
            Ok(Arg::Int(v, at))
        } else {
            Ok(Arg::Expr(self.expr()?, at))
        }
    }

    fn blowup(&mut self, at: usize) -> Result<Expr> {
        let (tok, open_at) = self.bump()?;
        if tok != Tok::Open {
            return Err(Error::parse(open_at, "blowup needs '(' host ';' parts ')'"));
        }
        let host = self.expr()?;
        self.expect(Tok::Semi, "';' after the blow-up host")?;
        let mut args = self.arg_list()?;
        self.expect(Tok::Close, "')'")?;
        if let Some(Arg::Int(count, count_at)) = args.last() {
            let (count, count_at) = (*count, *count_at);
            if args.len() != 2 {
                return Err(Error::parse(count_at, "uniform blowup takes exactly one part and a count"));
            }
            if count == 0 {
                return Err(Error::parse(count_at, "count must be at least 1"));
            }
            args.pop();
            let part = exprs_only("blowup", args)?.remove(0);
            return Ok(Expr::BlowupUniform {
                host: Box::new(host),
                part: Box::new(part),
                count,
            });
        }
        let parts = exprs_only("blowup", args)?;
        if parts.is_empty() {
            return Err(Error::parse(at, "blowup needs at least one part"));
        }
        Ok(Expr::Blowup {
            host: Box::new(host),
            parts,
        })
    }
}

fn exprs_only(name: &str, args: Vec<Arg>) -> Result<Vec<Expr>> {
    args.into_iter()
        .map(|a| match a {
            Arg::Expr(e, _) => Ok(e),
            Arg::Int(_, at) => Err(Error::parse(at, format!("{name} expects digraph arguments, found an integer"))),
        })
        .collect()
}

fn single_count(name: &str, at: usize, args: &[Arg]) -> Result<usize> {
    match args {
        [Arg::Int(n, n_at)] => {
            if *n == 0 {
                Err(Error::parse(*n_at, "count must be at least 1"))
            } else {
                Ok(*n)
            }
        }
        [other] => Err(Error::parse(other.offset(), format!("{name} expects an integer"))),
        _ => Err(Error::parse(at, format!("{name} takes 1 argument, got {}", args.len()))),
    }
}

fn describe(tok: &Tok<'_>) -> String {
    match tok {
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Int(v) => format!("integer {v}"),
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Semi => "';'".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses a whole constructor expression; trailing input is an error.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        lexer: Lexer { src: text, pos: 0 },
        peeked: None,
    };
    let e = p.expr()?;
    let (tok, at) = p.bump()?;
    if tok != Tok::End {
        return Err(Error::parse(at, format!("unexpected {} after expression", describe(&tok))));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::blow_up;
    use proptest::prelude::*;

    fn offset_of(text: &str) -> usize {
        match parse_expr(text) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn parses_examples() {
        let d = parse_expr("dijoin(c3, tt(3))").unwrap().build().unwrap();
        assert_eq!(d.order(), 6);
        let j = parse_expr(" join( c3 ,c3, c3 ) ").unwrap().build().unwrap();
        assert_eq!(j, blow_up(&transitive(3), &[c3(), c3(), c3()]).unwrap());
        let b = parse_expr("blowup(c3; c3, c3, c3)").unwrap().build().unwrap();
        let u = parse_expr("blowup(c3; c3, 3)").unwrap().build().unwrap();
        assert_eq!(b, u);
        assert_eq!(parse_expr("c3()").unwrap(), Expr::C3);
        assert_eq!(parse_expr("rev(qn(4))").unwrap().build().unwrap(), qn(4).reverse());
    }

    #[test]
    fn error_offsets() {
        assert_eq!(offset_of("qn("), 3);
        assert_eq!(offset_of("foo(1)"), 0);
        assert_eq!(offset_of("dijoin(c3)"), 0);
        assert_eq!(offset_of("tt(c3)"), 3);
        assert_eq!(offset_of("tt(0)"), 3);
        assert_eq!(offset_of("c3 c3"), 3);
        assert_eq!(offset_of("join(c3, $)"), 9);
        assert_eq!(offset_of("blowup(c3, c3)"), 9);
        assert_eq!(offset_of("tt"), 2);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(parse_expr("blowup(c3; c3, c3)").unwrap().build(), Err(Error::Usage(_))));
        assert!(matches!(parse_expr("blowup(c3; c3, 2)").unwrap().build(), Err(Error::Usage(_))));
        assert!(matches!(parse_expr("tt(65)").unwrap().build(), Err(Error::TooLarge { .. })));
        assert!(matches!(
            parse_expr("join(qn(40), qn(40))").unwrap().build(),
            Err(Error::TooLarge { .. })
        ));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::C3),
            (1usize..6).prop_map(Expr::Tt),
            (1usize..6).prop_map(Expr::Qn),
        ];
        leaf.prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Rev(Box::new(e))),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Dijoin(Box::new(l), Box::new(r))),
                prop::collection::vec(inner.clone(), 1..4).prop_map(Expr::Join),
                (inner.clone(), prop::collection::vec(inner.clone(), 1..4))
                    .prop_map(|(h, parts)| Expr::Blowup { host: Box::new(h), parts }),
                (inner.clone(), inner, 1usize..4).prop_map(|(h, p, count)| Expr::BlowupUniform {
                    host: Box::new(h),
                    part: Box::new(p),
                    count
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn pretty_print_round_trips(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e);
        }
    }
}
