//! Expression parser for tower-field elements, Witt literals `W(a; b)` and
//! Milnor symbols `{x; y}`, plus the matching renderers.
//!
//! ```text
//! elem   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*          juxtaposition multiplies
//! factor := atom ['^' exp]
//! atom   := int | ident | '(' elem ')' | 'O(' ident ['^' int] ')'
//! exp    := ['-'] int | '(' ['-'] int ['/' int] ')'
//! ```

use super::ring::{Elem, Ring};
use super::series::Series;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer> {
        let b = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let c = b[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let s = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v = src[s..i].parse::<i64>().map_err(|_| perr(s, "integer literal too large"))?;
                toks.push((Tok::Int(v), s));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let s = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(src[s..i].to_string()), s));
            } else if "+-*/^();,{}".contains(c) {
                toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                return Err(perr(i, format!("unexpected character '{c}'")));
            }
        }
        toks.push((Tok::End, src.len()));
        Ok(Lexer { toks })
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Ring, src: &str) -> Result<Self> {
        Ok(Parser { ring, toks: Lexer::new(src)?.toks, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(self.pos(), format!("expected '{c}', found {}", self.describe())))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(perr(self.pos(), format!("expected end of input, found {}", self.describe())))
        }
    }

    fn elem(&mut self) -> Result<Elem> {
        let r = self.ring;
        let mut acc = if self.eat('-') {
            let t = self.term()?;
            r.neg(&t)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = r.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = r.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Elem> {
        let r = self.ring;
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = r.mul(&acc, &f);
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let f = self.factor()?;
                acc = r.div(&acc, &f).map_err(|e| match e {
                    Error::DivisionByZero => perr(pos, "division by zero"),
                    other => other,
                })?;
            } else if self.starts_atom() {
                let f = self.factor()?;
                acc = r.mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.bump() {
            Tok::Int(v) => Ok(if neg { -v } else { v }),
            _ => Err(perr(self.toks[self.i.saturating_sub(1)].1, "expected an integer exponent")),
        }
    }

    /// Exponent as a fraction `num / den`.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.eat('(') {
            let n = self.signed_int()?;
            let d = if self.eat('/') {
                match self.bump() {
                    Tok::Int(v) if v > 0 => v,
                    _ => return Err(perr(self.pos(), "expected a positive denominator")),
                }
            } else {
                1
            };
            self.expect(')')?;
            Ok((n, d))
        } else {
            Ok((self.signed_int()?, 1))
        }
    }

    fn factor(&mut self) -> Result<Elem> {
        let r = self.ring;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let (num, den) = self.exponent()?;
        let mut x = base;
        if den > 1 {
            let p = r.char_p().ok_or_else(|| perr(pos, "fractional exponent needs characteristic p"))? as i64;
            let mut d = den;
            while d > 1 {
                if d % p != 0 {
                    return Err(perr(pos, format!("denominator {den} is not a power of {p}")));
                }
                x = r.pth_root(&x).map_err(|e| perr(pos, e.to_string()))?;
                d /= p;
            }
        }
        r.pow_i64(&x, num).map_err(|_| perr(pos, "negative power of zero"))
    }

    fn atom(&mut self) -> Result<Elem> {
        let r = self.ring;
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(r.from_i64(v)),
            Tok::Ident(name) if name == "O" && *self.peek() == Tok::Sym('(') => {
                self.bump();
                let vpos = self.pos();
                let var = match self.bump() {
                    Tok::Ident(v) => v,
                    _ => return Err(perr(vpos, "expected a Laurent variable inside O(...)")),
                };
                let n = if self.eat('^') { self.signed_int()? } else { 1 };
                self.expect(')')?;
                r.big_o(&var, n).ok_or_else(|| perr(vpos, format!("'{var}' is not the top Laurent variable")))
            }
            Tok::Ident(name) => r.variable(&name).ok_or_else(|| perr(pos, format!("unknown variable '{name}'"))),
            Tok::Sym('(') => {
                let e = self.elem()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(perr(pos, "unexpected end of input, expected a term")),
            Tok::Sym(c) => Err(perr(pos, format!("unexpected '{c}', expected a term"))),
        }
    }

    /// `open elem (sep elem)* close` with `;` or `,` separators.
    fn list(&mut self, open: char, close: char) -> Result<Vec<Elem>> {
        self.expect(open)?;
        let mut out = vec![self.elem()?];
        while self.eat(';') || self.eat(',') {
            out.push(self.elem()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn witt(&mut self) -> Result<Vec<Elem>> {
        match self.peek() {
            Tok::Ident(w) if w == "W" && self.toks[self.i + 1].0 == Tok::Sym('(') => {
                self.bump();
                self.list('(', ')')
            }
            _ => Ok(vec![self.elem()?]),
        }
    }
}

/// Parse a field element.
pub fn parse_elem(ring: &Ring, src: &str) -> Result<Elem> {
    let mut p = Parser::new(ring, src)?;
    let e = p.elem()?;
    p.expect_end()?;
    Ok(e)
}

/// Parse a Witt literal `W(a_{n-1}; ...; a_0)`; a bare expression is a
/// length-one vector. Components are returned left to right.
pub fn parse_witt(ring: &Ring, src: &str) -> Result<Vec<Elem>> {
    let mut p = Parser::new(ring, src)?;
    let w = p.witt()?;
    p.expect_end()?;
    Ok(w)
}

/// Parse a Milnor symbol `{g_1; ...; g_r}`.
pub fn parse_symbol(ring: &Ring, src: &str) -> Result<Vec<Elem>> {
    let mut p = Parser::new(ring, src)?;
    let s = p.list('{', '}')?;
    p.expect_end()?;
    for (k, g) in s.iter().enumerate() {
        if ring.is_zero(g) {
            return Err(perr(0, format!("symbol entry {} is zero", k + 1)));
        }
    }
    Ok(s)
}

/// A point of a split group: items separated by top-level `;`, each a field
/// element (torus coordinate) or a Witt literal.
pub fn parse_group_point(ring: &Ring, src: &str) -> Result<Vec<Vec<Elem>>> {
    let mut p = Parser::new(ring, src)?;
    let mut out = vec![p.witt()?];
    while p.eat(';') {
        out.push(p.witt()?);
    }
    p.expect_end()?;
    Ok(out)
}

pub fn render_witt(ring: &Ring, comps: &[Elem]) -> String {
    let parts: Vec<String> = comps.iter().map(|c| ring.render(c)).collect();
    format!("W({})", parts.join("; "))
}

pub fn render_symbol(ring: &Ring, entries: &[Elem]) -> String {
    let parts: Vec<String> = entries.iter().map(|c| ring.render(c)).collect();
    format!("{{{}}}", parts.join("; "))
}

impl Ring {
    /// `O(var^n)` for the top Laurent variable.
    pub fn big_o(&self, var: &str, n: i64) -> Option<Elem> {
        match self.laurent_ctx() {
            Some(l) if l.var == var => Some(Elem::Ser(Series::big_o(n))),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::descriptor::FieldDescriptor;

    fn ring(s: &str) -> Ring {
        FieldDescriptor::parse(s).unwrap().to_ring().unwrap()
    }

    #[test]
    fn sparse_series() {
        let k = ring("F2((t))");
        let x = parse_elem(&k, "t^-3 + t^-2").unwrap();
        let exps: Vec<i64> = x.as_series().terms(k.base().unwrap()).map(|(e, _)| e).collect();
        assert_eq!(exps, vec![-3, -2]);
    }

    #[test]
    fn examples_from_arithmetic() {
        let k = ring("F2((t))");
        let x = parse_elem(&k, "(t^-1 + 1 + O(t^3)) * t").unwrap();
        assert_eq!(k.render(&x), "1 + t + O(t^4)");
        let fu = ring("F2(u)");
        assert!(fu.is_zero(&parse_elem(&fu, "u + u").unwrap()));
    }

    #[test]
    fn witt_and_symbols() {
        let fx = ring("F2(x)");
        let w = parse_witt(&fx, "W(1/x; 0)").unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(render_witt(&fx, &w), "W(1/(x); 0)");
        let k = ring("F2(u)((t))");
        let s = parse_symbol(&k, "{1 + u*t; u}").unwrap();
        assert_eq!(s.len(), 2);
        let gp = parse_group_point(&fx, "x ; W(1/x,0)").unwrap();
        assert_eq!(gp.len(), 2);
        assert_eq!(gp[1].len(), 2);
    }

    #[test]
    fn round_trips() {
        let cases = [
            ("F2((t))", "t^-3 + t^-2 + O(t^5)"),
            ("F2(u)((t))", "(u + 1)/u*t^-2 + u^3"),
            ("F4((t))", "g*t^-1 + (g + 1)*t"),
            ("F2(u)^perf((t))", "u^(1/4)*t^-1 + u"),
            ("F3((t1))((t2))", "2*t1^-1*t2^-2 + t2"),
        ];
        for (f, src) in cases {
            let k = ring(f);
            let x = parse_elem(&k, src).unwrap();
            let y = parse_elem(&k, &k.render(&x)).unwrap();
            assert!(k.eq(&x, &y), "{f}: {src} vs {}", k.render(&x));
        }
    }

    #[test]
    fn errors_carry_positions() {
        let k = ring("F2((t))");
        match parse_elem(&k, "t^-1 + + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_elem(&k, "z"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_elem(&k, "1/0"), Err(Error::Parse { .. })));
    }
}
