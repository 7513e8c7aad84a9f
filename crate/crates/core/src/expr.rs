//! Text syntax for scalar polynomials.
//!
//! ```text
//! expr   := unary (('+' | '-') unary)*
//! unary  := '-' unary | term
//! term   := factor ('*'? factor)*
//! factor := atom ('^' '-'? digits)?
//! atom   := number | number 'i' | 'i' | generator | '(' expr ')'
//! ```
//!
//! Generators are `g<n>`, `alpha<n>` (or `α<n>`), `e<n>`, and the shorthands
//! `a`, `b`, `c` for `g1`, `g2`, `g3`. Runs of shorthand letters juxtapose, so
//! `ab` is `a*b`, and `e0` is the identity word. The printed form of a
//! level-1 [`Poly`] parses back to the same polynomial.

use crate::error::{Error, Result};
use crate::linalg::{c, C64};
use crate::poly::{GroupPoly, MonoidPoly, Poly};
use crate::words::{Alphabet, Gen, Mode, Tag, Word};

/// Parsed expression; offsets are byte positions in the source.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(C64),
    Gen {
        gen: Gen,
        offset: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow {
        base: Box<Expr>,
        exp: i64,
        offset: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Gen(Gen),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    /// Unsigned integer literal text, kept for exponents.
    Int(i64),
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let at = |i: usize| chars.get(i).map(|&(_, ch)| ch);
    let off = |i: usize| chars.get(i).map_or(src.len(), |&(o, _)| o);
    let mut i = 0;
    while i < chars.len() {
        let (o, ch) = chars[i];
        match ch {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((o, Tok::Plus));
                i += 1
            }
            '-' => {
                out.push((o, Tok::Minus));
                i += 1
            }
            '*' => {
                out.push((o, Tok::Star));
                i += 1
            }
            '^' => {
                out.push((o, Tok::Caret));
                i += 1
            }
            '(' => {
                out.push((o, Tok::LParen));
                i += 1
            }
            ')' => {
                out.push((o, Tok::RParen));
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while at(i).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                }
                let mut integral = true;
                if at(i) == Some('.') {
                    integral = false;
                    i += 1;
                    if !at(i).is_some_and(|d| d.is_ascii_digit()) {
                        return Err(perr(off(i), "expected digits after '.'"));
                    }
                    while at(i).is_some_and(|d| d.is_ascii_digit()) {
                        i += 1;
                    }
                }
                let text = &src[o..off(i)];
                let value: f64 = text.parse().map_err(|_| perr(o, "bad number"))?;
                if at(i) == Some('i') {
                    i += 1;
                    out.push((o, Tok::Imag(value)));
                } else if integral {
                    match text.parse::<i64>() {
                        Ok(n) => out.push((o, Tok::Int(n))),
                        Err(_) => out.push((o, Tok::Num(value))),
                    }
                } else {
                    out.push((o, Tok::Num(value)));
                }
                debug_assert!(i > start);
            }
            ch if ch.is_alphabetic() => {
                let start = i;
                while at(i).is_some_and(|l| l.is_alphabetic()) {
                    i += 1;
                }
                let name = &src[o..off(i)];
                let dstart = i;
                while at(i).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                }
                let digits = &src[off(dstart)..off(i)];
                let tag = match name {
                    "g" => Some(Tag::Plain),
                    "alpha" | "α" => Some(Tag::Alpha),
                    "e" => Some(Tag::E),
                    _ => None,
                };
                match (tag, digits.is_empty()) {
                    // e0 is the identity word.
                    (Some(Tag::E), false) if digits.bytes().all(|d| d == b'0') => {
                        out.push((o, Tok::Num(1.0)));
                    }
                    (Some(tag), false) => {
                        let index: u32 = digits
                            .parse()
                            .map_err(|_| perr(off(dstart), "generator index too large"))?;
                        let gen = Gen::new(tag, index)
                            .map_err(|_| perr(off(dstart), "generator index must be at least 1"))?;
                        out.push((o, Tok::Gen(gen)));
                    }
                    (_, true) if name.chars().all(|l| matches!(l, 'a' | 'b' | 'c' | 'i')) => {
                        for (j, l) in name.chars().enumerate() {
                            let t = match l {
                                'i' => Tok::Imag(1.0),
                                'a' => Tok::Gen(Gen::plain(1)),
                                'b' => Tok::Gen(Gen::plain(2)),
                                _ => Tok::Gen(Gen::plain(3)),
                            };
                            out.push((off(start + j), t));
                        }
                    }
                    _ => return Err(perr(o, format!("unknown identifier '{}'", &src[o..off(i)]))),
                }
            }
            other => return Err(perr(o, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.term()
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_) | Tok::Int(_) | Tok::Imag(_) | Tok::Gen(_) | Tok::LParen) => {}
                _ => return Ok(lhs),
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let offset = self.offset();
        self.pos += 1;
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Pow {
                base: Box::new(base),
                exp: if negative { -n } else { n },
                offset,
            }),
            _ => Err(perr(at, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(x)) => Ok(Expr::Num(c(x, 0.0))),
            Some(Tok::Int(n)) => Ok(Expr::Num(c(n as f64, 0.0))),
            Some(Tok::Imag(y)) => Ok(Expr::Num(c(0.0, y))),
            Some(Tok::Gen(gen)) => Ok(Expr::Gen { gen, offset: at }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(perr(close, "expected ')'")),
                }
            }
            Some(_) => Err(perr(at, "expected a number, generator or '('")),
            None => Err(perr(at, "unexpected end of input")),
        }
    }
}

/// Parse text into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(perr(p.offset(), "unexpected token"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluate to a scalar polynomial over `alphabet`.
    pub fn eval<W: Word>(&self, alphabet: &Alphabet) -> Result<Poly<W>> {
        Ok(match self {
            Expr::Num(z) => Poly::one(alphabet.clone(), 1).scale(*z),
            Expr::Gen { gen, offset } => {
                if !alphabet.contains(*gen) {
                    return Err(perr(
                        *offset,
                        format!("generator {gen} is outside the alphabet"),
                    ));
                }
                Poly::monomial(
                    alphabet.clone(),
                    W::from_letters([crate::words::Letter::pos(*gen)])?,
                    c(1.0, 0.0),
                )?
            }
            Expr::Neg(e) => e.eval::<W>(alphabet)?.scale(c(-1.0, 0.0)),
            Expr::Add(a, b) => a.eval::<W>(alphabet)?.add(&b.eval(alphabet)?)?,
            Expr::Sub(a, b) => a.eval::<W>(alphabet)?.sub(&b.eval(alphabet)?)?,
            Expr::Mul(a, b) => a.eval::<W>(alphabet)?.mul(&b.eval(alphabet)?)?,
            Expr::Pow { base, exp, offset } => {
                let b = base.eval::<W>(alphabet)?;
                let n = u32::try_from(exp.unsigned_abs())
                    .map_err(|_| perr(*offset, "exponent too large"))?;
                if *exp >= 0 {
                    return b.pow(n);
                }
                if W::MODE == Mode::Monoid {
                    return Err(perr(*offset, "negative exponent in monoid mode"));
                }
                if b.num_terms() != 1 {
                    return Err(perr(
                        *offset,
                        "negative exponent needs a single nonzero term",
                    ));
                }
                let (w, a) = b.terms().next().expect("one term");
                let mut letters: Vec<_> = w.letters().map(|l| l.inv()).collect();
                letters.reverse();
                let inv =
                    Poly::monomial(alphabet.clone(), W::from_letters(letters)?, a[(0, 0)].inv())?;
                inv.pow(n)?
            }
        })
    }
}

pub fn parse<W: Word>(text: &str, alphabet: &Alphabet) -> Result<Poly<W>> {
    parse_expr(text)?.eval(alphabet)
}

pub fn parse_group(text: &str, alphabet: &Alphabet) -> Result<GroupPoly> {
    parse(text, alphabet)
}

pub fn parse_monoid(text: &str, alphabet: &Alphabet) -> Result<MonoidPoly> {
    parse(text, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_poly, rng};
    use crate::words::{GroupWord, Letter, MonoidWord};

    fn al(k: u32) -> Alphabet {
        Alphabet::plain(k)
    }

    #[test]
    fn group_example() {
        let p = parse_group("1 + 2*g1*g2^-1", &al(2)).unwrap();
        let w = GroupWord::from_letters([Letter::pos(Gen::plain(1)), Letter::neg(Gen::plain(2))])
            .unwrap();
        let want = GroupPoly::from_scalars(
            al(2),
            [(GroupWord::identity(), c(1.0, 0.0)), (w, c(2.0, 0.0))],
        )
        .unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn monoid_rejects_inverse() {
        match parse_monoid("g1^-1", &al(1)) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expansion() {
        let p = parse_monoid("(g1+g2)*(g1+g2)", &al(2)).unwrap();
        assert_eq!(p.num_terms(), 4);
        for w in [[1, 1], [1, 2], [2, 1], [2, 2]] {
            let w = MonoidWord::new(w.iter().map(|&i| Gen::plain(i)).collect());
            assert_eq!(p.scalar(&w), c(1.0, 0.0));
        }
        assert_eq!(parse_monoid("(a+b)(a+b)", &al(2)).unwrap(), p);
    }

    #[test]
    fn precedence() {
        let a2 = al(2);
        assert_eq!(
            parse_group("-g1^2", &a2).unwrap(),
            parse_group("-(g1*g1)", &a2).unwrap()
        );
        assert_eq!(
            parse_group("2 - 3i*ab", &a2).unwrap(),
            parse_group("2 + (-3i)*(g1*g2)", &a2).unwrap()
        );
        assert_eq!(
            parse_group("(2g1)^-2", &a2).unwrap(),
            parse_group("0.25*g1^-2", &a2).unwrap()
        );
        assert_eq!(
            parse_group("g1 g1^-1", &a2).unwrap(),
            GroupPoly::one(a2.clone(), 1)
        );
        let s = parse_group("alpha1*e2", &Alphabet::split(1, 2)).unwrap();
        assert_eq!(s.to_string(), "alpha1*e2");
        assert_eq!(
            parse_group("α1", &Alphabet::split(1, 0))
                .unwrap()
                .to_string(),
            "alpha1"
        );
        assert_eq!(
            parse_monoid("e0", &a2).unwrap(),
            MonoidPoly::one(a2.clone(), 1)
        );
        assert_eq!(
            parse_monoid("3e0 + e0 g1", &a2).unwrap(),
            parse_monoid("3 + g1", &a2).unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let cases = [
            ("1 + ", 4),
            ("g3", 0),
            ("(g1", 3),
            ("g1 $", 3),
            ("x", 0),
            ("g0", 1),
            ("g1^", 3),
            ("(g1+g2)^-1", 7),
        ];
        for (text, want) in cases {
            match parse_group(text, &al(2)) {
                Err(Error::Parse { offset, .. }) => assert_eq!(offset, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn printed_form_round_trips() {
        let mut r = rng(9);
        for _ in 0..50 {
            let p: GroupPoly = random_poly(&mut r, &al(2), 3, 4, 1);
            assert_eq!(parse_group(&p.to_string(), &al(2)).unwrap(), p);
            let q: MonoidPoly = random_poly(&mut r, &al(3), 3, 4, 1);
            assert_eq!(parse_monoid(&q.to_string(), &al(3)).unwrap(), q);
        }
    }
}
