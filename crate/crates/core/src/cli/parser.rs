//! Text syntax for 1-forms, scalars and lines.
//!
//! A form is an expression in `x`, `y`, `dx`, `dy` that is linear in `dx`, `dy`, e.g.
//! `(x^2 + t*y^2) dx + x^2 dy`. Scalars admit rationals, `i`, `zeta(n)` and the parameter `t`.

use crate::algebra::{HomPoly2, Poly3, Scalar};
use crate::error::{Error, Result};
use crate::foliation::HomFoliation;
use crate::prefoliation::{Foliation, GenFoliation, ProjLine};

/// Parsed 1-form `A dx + B dy` in the affine chart.
#[derive(Clone, Debug, PartialEq)]
pub struct FormAst {
    pub a: Poly3,
    pub b: Poly3,
}

impl FormAst {
    /// Homogeneous foliation when `A` and `B` are forms of one degree, general otherwise.
    pub fn to_foliation(&self) -> Result<Foliation> {
        let deg = |p: &Poly3| -> Option<u32> {
            let d = p.total_degree()?;
            (p.homogeneous_part(d) == *p).then_some(d)
        };
        match (deg(&self.a), deg(&self.b)) {
            (Some(da), Some(db)) if da == db && da >= 1 => {
                let n = da as usize;
                let a = self.a.to_hom(n).expect("homogeneous");
                let b = self.b.to_hom(n).expect("homogeneous");
                Ok(Foliation::Hom(HomFoliation::new(a, b)?))
            }
            _ => Ok(Foliation::General(GenFoliation::from_affine(
                &self.a, &self.b,
            )?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut it = text.chars().peekable();
    while let Some(&ch) = it.peek() {
        let (l0, c0) = (line, column);
        let mut bump = |it: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = it.next().expect("peeked");
            if ch == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        if ch.is_whitespace() {
            bump(&mut it);
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while it.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut it));
            }
            out.push(Token {
                tok: Tok::Int(s),
                line: l0,
                column: c0,
            });
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while it.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                s.push(bump(&mut it));
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
        } else if "+-*/^(),".contains(ch) {
            bump(&mut it);
            out.push(Token {
                tok: Tok::Sym(ch),
                line: l0,
                column: c0,
            });
        } else {
            return Err(Error::Parse {
                line: l0,
                column: c0,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(out)
}

/// Value of a subexpression: `f + a dx + b dy`.
#[derive(Clone, Debug)]
struct Val {
    f: Poly3,
    a: Poly3,
    b: Poly3,
}

impl Val {
    fn scalar(p: Poly3) -> Val {
        Val {
            f: p,
            a: Poly3::zero(),
            b: Poly3::zero(),
        }
    }

    fn is_form(&self) -> bool {
        !(self.a.is_zero() && self.b.is_zero())
    }

    fn add(&self, o: &Val) -> Val {
        Val {
            f: self.f.add(&o.f),
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
        }
    }

    fn neg(&self) -> Val {
        Val {
            f: self.f.neg(),
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    allow_xy: bool,
}

impl Parser {
    fn new(text: &str, allow_xy: bool) -> Result<Parser> {
        let toks = lex(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (
            lines.len(),
            lines.last().map_or(0, |l| l.chars().count()) + 1,
        );
        Ok(Parser {
            toks,
            pos: 0,
            end,
            allow_xy,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn err_at<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.toks.get(pos).map_or(self.end, |t| (t.line, t.column));
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s.parse::<u32>();
                let start = self.pos;
                self.pos += 1;
                v.or_else(|_| self.err_at(start, "integer too large"))
            }
            _ => self.err("expected an integer"),
        }
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Val> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut v = self.term()?;
        if neg {
            v = v.neg();
        }
        loop {
            if self.eat('+') {
                v = v.add(&self.term()?);
            } else if self.eat('-') {
                v = v.add(&self.term()?.neg());
            } else {
                return Ok(v);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
        )
    }

    /// term := power (['*'|'/'] power)*, juxtaposition meaning product.
    fn term(&mut self) -> Result<Val> {
        let mut v = self.power()?;
        loop {
            let start = self.pos;
            if self.eat('/') {
                let d = self.power()?;
                v = self.divide(&v, &d, start)?;
            } else if self.eat('*') || self.starts_primary() {
                let o = self.power()?;
                v = self.multiply(&v, &o, start)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn multiply(&self, u: &Val, v: &Val, at: usize) -> Result<Val> {
        if u.is_form() && v.is_form() {
            return self.err_at(at, "product of two differentials");
        }
        Ok(Val {
            f: u.f.mul(&v.f),
            a: u.a.mul(&v.f).add(&v.a.mul(&u.f)),
            b: u.b.mul(&v.f).add(&v.b.mul(&u.f)),
        })
    }

    fn divide(&self, u: &Val, v: &Val, at: usize) -> Result<Val> {
        if v.is_form() {
            return self.err_at(at, "division by a differential");
        }
        if v.f.total_degree() != Some(0) {
            return self.err_at(at, "division by a non-constant");
        }
        let c = v.f.coeff(&[0, 0, 0]);
        let div = |p: &Poly3| -> Result<Poly3> {
            let mut r = Poly3::zero();
            for (e, s) in p.terms() {
                let q = if c.is_const() {
                    Ok(s * &c.inv()?)
                } else {
                    s.checked_div(&c)
                };
                match q {
                    Ok(q) => r.add_term(*e, q),
                    Err(_) => return self.err_at(at, "inexact division by a parametric scalar"),
                }
            }
            Ok(r)
        };
        Ok(Val {
            f: div(&u.f)?,
            a: div(&u.a)?,
            b: div(&u.b)?,
        })
    }

    /// power := primary ['^' int]
    fn power(&mut self) -> Result<Val> {
        let v = self.primary()?;
        let start = self.pos;
        if self.eat('^') {
            let e = self.int()?;
            if v.is_form() {
                return self.err_at(start, "power of a differential");
            }
            return Ok(Val::scalar(v.f.pow(e)));
        }
        Ok(v)
    }

    fn primary(&mut self) -> Result<Val> {
        let start = self.pos;
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let n: num_bigint::BigInt = s.parse().expect("digits");
                let r = crate::algebra::Q::from_integer(n);
                Ok(Val::scalar(Poly3::constant(Scalar::rational(r))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                let c = |s: Scalar| Ok(Val::scalar(Poly3::constant(s)));
                match id.as_str() {
                    "x" | "y" if !self.allow_xy => {
                        self.err_at(start, format!("variable '{id}' not allowed in a scalar"))
                    }
                    "x" => Ok(Val::scalar(Poly3::var(0))),
                    "y" => Ok(Val::scalar(Poly3::var(1))),
                    "dx" | "dy" if !self.allow_xy => self.err_at(
                        start,
                        format!("differential '{id}' not allowed in a scalar"),
                    ),
                    "dx" => Ok(Val {
                        f: Poly3::zero(),
                        a: Poly3::one(),
                        b: Poly3::zero(),
                    }),
                    "dy" => Ok(Val {
                        f: Poly3::zero(),
                        a: Poly3::zero(),
                        b: Poly3::one(),
                    }),
                    "t" => c(Scalar::t()),
                    "i" => c(Scalar::i()),
                    "zeta" => {
                        self.expect('(')?;
                        let at = self.pos;
                        let n = self.int()?;
                        if n == 0 {
                            return self.err_at(at, "zeta order must be positive");
                        }
                        self.expect(')')?;
                        c(Scalar::zeta_pow(n, 1))
                    }
                    s if s.starts_with('d') && s.len() == 2 => {
                        self.err_at(start, format!("unknown basis '{s}'"))
                    }
                    s => self.err_at(start, format!("unknown symbol '{s}'")),
                }
            }
            Some(Tok::Sym(ch)) => self.err(format!(
                "unexpected '{ch}'; expected a number, variable, differential or '('"
            )),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

/// Parses `A dx + B dy`.
pub fn parse_form(text: &str) -> Result<FormAst> {
    let mut p = Parser::new(text, true)?;
    let v = p.expr()?;
    p.finish()?;
    if !v.f.is_zero() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "every term needs a differential dx or dy".into(),
        });
    }
    if v.a.is_zero() && v.b.is_zero() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "zero 1-form".into(),
        });
    }
    Ok(FormAst { a: v.a, b: v.b })
}

/// Parses a scalar expression.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser::new(text, false)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(v.f.coeff(&[0, 0, 0]))
}

/// Parses a line `a,b,c` meaning `a x + b y + c z = 0`.
pub fn parse_line(text: &str) -> Result<ProjLine> {
    let mut p = Parser::new(text, false)?;
    let mut c = Vec::new();
    for k in 0..3 {
        if k > 0 {
            p.expect(',')?;
        }
        c.push(p.expr()?.f.coeff(&[0, 0, 0]));
    }
    p.finish()?;
    let [a, b, cc]: [Scalar; 3] = c.try_into().expect("three coefficients");
    ProjLine::new(a, b, cc).map_err(|_| Error::Parse {
        line: 1,
        column: 1,
        message: "line with all coefficients zero".into(),
    })
}

fn wrap(s: String) -> String {
    format!("({s})")
}

/// Canonical text of `A dx + B dy` for binary forms.
pub fn format_form(a: &HomPoly2, b: &HomPoly2) -> String {
    format_affine(&Poly3::from_hom(a), &Poly3::from_hom(b))
}

/// Canonical text of `A dx + B dy` for affine polynomials.
pub fn format_affine(a: &Poly3, b: &Poly3) -> String {
    let mut parts = Vec::new();
    if !a.is_zero() {
        parts.push(format!("{} dx", wrap(a.fmt_vars(["x", "y", "z"]))));
    }
    if !b.is_zero() {
        parts.push(format!("{} dy", wrap(b.fmt_vars(["x", "y", "z"]))));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Canonical text of a foliation's 1-form.
pub fn format_foliation(f: &Foliation) -> String {
    match f {
        Foliation::Hom(h) => format_form(h.a(), h.b()),
        Foliation::General(g) => {
            let (a, b) = g.affine();
            format_affine(&a, &b)
        }
    }
}

/// Canonical `a,b,c` text of a line.
pub fn format_line(l: &ProjLine) -> String {
    l.coeffs()
        .iter()
        .map(|s| {
            if s.is_compound() {
                wrap(s.to_string())
            } else {
                s.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_form() {
        let f = parse_form("y^2 dx - x^2 dy").unwrap();
        assert_eq!(f.a, Poly3::var(1).pow(2));
        assert_eq!(f.b, Poly3::var(0).pow(2).neg());
        assert!(matches!(f.to_foliation().unwrap(), Foliation::Hom(_)));
    }

    #[test]
    fn parses_parametric_form() {
        let f = parse_form("(x^2 + t*y^2) dx + x^2 dy").unwrap();
        let Foliation::Hom(h) = f.to_foliation().unwrap() else {
            panic!("homogeneous expected")
        };
        assert!(h.is_parametric());
    }

    #[test]
    fn rejects_unknown_basis() {
        let e = parse_form("y dx + dz").unwrap_err();
        match e {
            Error::Parse {
                column, message, ..
            } => {
                assert_eq!(column, 8);
                assert!(message.contains("unknown basis 'dz'"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_missing_differential() {
        assert!(parse_form("x dx + y").is_err());
        assert!(parse_form("dx dy").is_err());
    }

    #[test]
    fn scalar_and_line() {
        let s = parse_scalar("1/3 + zeta(3)^2").unwrap();
        assert_eq!(s, &Scalar::frac(1, 3) + &Scalar::zeta_pow(3, 2));
        let l = parse_line("1,1,-1").unwrap();
        assert_eq!(l, ProjLine::from_ints(1, 1, -1));
        assert!(parse_line("0,0,0").is_err());
        assert!(parse_line("x,1,0").is_err());
    }

    #[test]
    fn round_trip() {
        let a = HomPoly2::new(2, vec![Scalar::one(), Scalar::zero(), Scalar::t()]);
        let b = HomPoly2::new(
            2,
            vec![Scalar::frac(-1, 3), Scalar::zeta_pow(8, 3), Scalar::zero()],
        );
        let s = format_form(&a, &b);
        let f = parse_form(&s).unwrap();
        assert_eq!(f.a, Poly3::from_hom(&a));
        assert_eq!(f.b, Poly3::from_hom(&b));
    }
}
