use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use super::{alon, complete, cycle, empty, johnson, universal, Graph, Limits};
use crate::error::{Error, Result};

/// A term of the graph expression language.
///
/// ```text
/// expr := cycle:k | complete:k | empty:k | johnson:p,n | alon:p,q,n
///       | universal:p,n,d | complement(expr) | strong(expr,expr)
///       | lex(expr,expr) | file:path
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphExpr {
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    Johnson { p: u64, n: usize },
    Alon { p: u64, q: u64, n: usize },
    Universal { p: u64, n: usize, d: usize },
    Complement(Box<GraphExpr>),
    Strong(Box<GraphExpr>, Box<GraphExpr>),
    Lex(Box<GraphExpr>, Box<GraphExpr>),
    File(String),
}

impl GraphExpr {
    /// Builds the graph; `file:` leaves are handed to `load`.
    pub fn build_with(
        &self,
        limits: &Limits,
        load: &mut dyn FnMut(&str) -> Result<Graph>,
    ) -> Result<Graph> {
        let check = |n: usize| limits.check_vertices(n as u128);
        Ok(match self {
            GraphExpr::Cycle(k) => {
                check(*k)?;
                cycle(*k)?
            }
            GraphExpr::Complete(k) => {
                check(*k)?;
                complete(*k)
            }
            GraphExpr::Empty(k) => {
                check(*k)?;
                empty(*k)
            }
            GraphExpr::Johnson { p, n } => johnson(*p, *n, limits)?,
            GraphExpr::Alon { p, q, n } => alon(*p, *q, *n, limits)?,
            GraphExpr::Universal { p, n, d } => universal(*p, *n, *d, limits)?,
            GraphExpr::Complement(e) => e.build_with(limits, load)?.complement(),
            GraphExpr::Strong(a, b) => {
                let g = a.build_with(limits, load)?;
                let h = b.build_with(limits, load)?;
                g.strong_product(&h, limits)?
            }
            GraphExpr::Lex(a, b) => {
                let g = a.build_with(limits, load)?;
                let h = b.build_with(limits, load)?;
                g.lex_product(&h, limits)?
            }
            GraphExpr::File(path) => {
                let g = load(path)?;
                check(g.n())?;
                g
            }
        })
    }

    /// Builds the graph without file access.
    pub fn build(&self, limits: &Limits) -> Result<Graph> {
        self.build_with(limits, &mut |p| Err(Error::FileUnsupported(p.to_string())))
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Cycle(k) => write!(f, "cycle:{k}"),
            GraphExpr::Complete(k) => write!(f, "complete:{k}"),
            GraphExpr::Empty(k) => write!(f, "empty:{k}"),
            GraphExpr::Johnson { p, n } => write!(f, "johnson:{p},{n}"),
            GraphExpr::Alon { p, q, n } => write!(f, "alon:{p},{q},{n}"),
            GraphExpr::Universal { p, n, d } => write!(f, "universal:{p},{n},{d}"),
            GraphExpr::Complement(e) => write!(f, "complement({e})"),
            GraphExpr::Strong(a, b) => write!(f, "strong({a},{b})"),
            GraphExpr::Lex(a, b) => write!(f, "lex({a},{b})"),
            GraphExpr::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl FromStr for GraphExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.err("expected a graph name"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let v = self.rest()[..len].parse().map_err(|_| self.err("number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn numbers(&mut self, count: usize) -> Result<alloc::vec::Vec<u64>> {
        self.eat(':')?;
        let mut out = alloc::vec::Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.eat(',')?;
            }
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        let start = self.pos;
        let name = self.ident()?;
        let usz = |x: u64| x as usize;
        Ok(match name {
            "cycle" => GraphExpr::Cycle(usz(self.numbers(1)?[0])),
            "complete" => GraphExpr::Complete(usz(self.numbers(1)?[0])),
            "empty" => GraphExpr::Empty(usz(self.numbers(1)?[0])),
            "johnson" => {
                let v = self.numbers(2)?;
                GraphExpr::Johnson { p: v[0], n: usz(v[1]) }
            }
            "alon" => {
                let v = self.numbers(3)?;
                GraphExpr::Alon { p: v[0], q: v[1], n: usz(v[2]) }
            }
            "universal" => {
                let v = self.numbers(3)?;
                GraphExpr::Universal { p: v[0], n: usz(v[1]), d: usz(v[2]) }
            }
            "complement" => {
                self.eat('(')?;
                let e = self.expr()?;
                self.eat(')')?;
                GraphExpr::Complement(Box::new(e))
            }
            "strong" | "lex" => {
                let strong = name == "strong";
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                if strong {
                    GraphExpr::Strong(Box::new(a), Box::new(b))
                } else {
                    GraphExpr::Lex(Box::new(a), Box::new(b))
                }
            }
            "file" => {
                self.eat(':')?;
                let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
                let path = self.rest()[..len].trim();
                if path.is_empty() {
                    return Err(self.err("empty file path"));
                }
                let path = path.to_string();
                self.pos += len;
                GraphExpr::File(path)
            }
            _ => {
                self.pos = start;
                return Err(self.err("unknown graph name"));
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "cycle:5",
            "complement(strong(cycle:5,empty:2))",
            "lex(johnson:2,8,alon:2,3,7)",
            "universal:2,3,1",
            "strong(file:/tmp/g.txt,complete:1)",
        ] {
            let e: GraphExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        let spaced: GraphExpr = " strong( cycle:5 , cycle:5 ) ".parse().unwrap();
        assert_eq!(spaced.to_string(), "strong(cycle:5,cycle:5)");
    }

    #[test]
    fn parse_errors() {
        for s in ["", "cycle", "cycle:", "wheel:5", "strong(cycle:5)", "cycle:5)", "johnson:2", "file:"] {
            assert!(matches!(s.parse::<GraphExpr>(), Err(Error::Parse { .. })), "{s}");
        }
    }

    #[test]
    fn build_examples() {
        let lim = Limits::default();
        let g = "cycle:5".parse::<GraphExpr>().unwrap().build(&lim).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 5));
        let j = "johnson:2,4".parse::<GraphExpr>().unwrap().build(&lim).unwrap();
        assert_eq!((j.n(), j.edge_count()), (4, 0));
        assert!(matches!(
            "file:x".parse::<GraphExpr>().unwrap().build(&lim),
            Err(Error::FileUnsupported(_))
        ));
        assert!(matches!(
            "alon:4,3,7".parse::<GraphExpr>().unwrap().build(&lim),
            Err(Error::NotPrime(4))
        ));
        let small = Limits { max_vertices: 10, ..lim };
        assert!(matches!("cycle:11".parse::<GraphExpr>().unwrap().build(&small), Err(Error::Guard { .. })));
        let mut loaded = Vec::new();
        let h = "strong(file:a,cycle:3)"
            .parse::<GraphExpr>()
            .unwrap()
            .build_with(&lim, &mut |p| {
                loaded.push(p.to_string());
                Ok(empty(2))
            })
            .unwrap();
        assert_eq!(h.n(), 6);
        assert_eq!(loaded, ["a"]);
    }
}
