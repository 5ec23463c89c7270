//! Expression grammar for elements of `span(ḡ_i) ⊕ N_K[t]`.
//!
//! ```text
//! sum   := term ('+' term)* | '0'
//! term  := atom ('t' ('^' n)?)?
//! atom  := 'g' n | 'c(' n (',' n)* ';' n ')' | '[' sum ',' sum ']' | '(' sum ')'
//! ```
//!
//! `c(I;j)` is the nested commutator with outer letters `I` (increasing,
//! outermost first) around `ḡ_j`; non-GPTW ones are rewritten through
//! repeat removal. A `t^k` suffix applies `h` `k` times. Output of
//! [`crate::lcs::LElem`]'s `Display` is accepted back.

use crate::complexes::{CommIndex, VertexSet};
use crate::error::{Error, Result};
use crate::lcs::{Calculator, LElem, NKtElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Zero,
    Gen(usize),
    Comm(Vec<usize>, usize),
    Bracket(Box<Expr>, Box<Expr>),
    Shift(Box<Expr>, u32),
    Sum(Vec<Expr>),
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates `text` with `calc`.
pub fn eval_str(text: &str, calc: &Calculator) -> Result<LElem> {
    eval(&parse(text)?, calc)
}

pub fn eval(e: &Expr, calc: &Calculator) -> Result<LElem> {
    let k = calc.complex();
    Ok(match e {
        Expr::Zero => LElem::zero(),
        Expr::Gen(i) => {
            if *i == 0 || *i > k.m() {
                return Err(Error::VertexOutOfRange {
                    vertex: *i,
                    m: k.m(),
                });
            }
            LElem::generator(*i)
        }
        Expr::Comm(outer, last) => {
            let set = VertexSet::from_vertices(k.m(), outer.iter().copied().chain([*last]))?;
            if set.len() != outer.len() + 1 {
                return Err(Error::Input(format!(
                    "repeated letter in c({outer:?};{last})"
                )));
            }
            let c = CommIndex::new(set, *last)?;
            if k.is_gptw(c) {
                LElem::from_nkt(NKtElem::symbol(c, 0))
            } else {
                LElem::from_nkt(calc.remove_repeats(&c.letters())?)
            }
        }
        Expr::Bracket(a, b) => calc.bracket_l(&eval(a, calc)?, &eval(b, calc)?)?,
        Expr::Shift(a, n) => {
            let x = eval(a, calc)?;
            if *n > 0 && x.linear != 0 {
                return Err(Error::Domain(
                    "h is defined only on commutators (degree >= 2)".into(),
                ));
            }
            LElem::from_nkt(x.comm.h_pow(*n))
        }
        Expr::Sum(terms) => {
            let mut out = LElem::zero();
            for t in terms {
                out = out.add(&eval(t, calc)?);
            }
            out
        }
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let s: String = self.chars.iter().collect();
        Error::Input(format!("{msg} at offset {} in '{s}'", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
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
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let a = self.atom()?;
        if !self.eat('t') {
            return Ok(a);
        }
        let n = if self.eat('^') { self.number()? } else { 1 };
        let n = u32::try_from(n).map_err(|_| self.error("t-power out of range"))?;
        Ok(Expr::Shift(Box::new(a), n))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Expr::Zero)
            }
            Some('g') => {
                self.pos += 1;
                Ok(Expr::Gen(self.number()?))
            }
            Some('c') => {
                self.pos += 1;
                self.expect('(')?;
                let mut outer = vec![self.number()?];
                while self.eat(',') {
                    outer.push(self.number()?);
                }
                self.expect(';')?;
                let last = self.number()?;
                self.expect(')')?;
                Ok(Expr::Comm(outer, last))
            }
            Some('[') => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(')')?;
                Ok(a)
            }
            _ => Err(self.error("expected g<n>, c(..;..), [..,..] or 0")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::by_name;

    #[test]
    fn parses() {
        assert_eq!(parse("g3").unwrap(), Expr::Gen(3));
        assert_eq!(parse(" c(1, 3;2) ").unwrap(), Expr::Comm(vec![1, 3], 2));
        assert_eq!(
            parse("c(2;1)t^2").unwrap(),
            Expr::Shift(Box::new(Expr::Comm(vec![2], 1)), 2)
        );
        assert_eq!(
            parse("[g1,[g3,g2]]").unwrap(),
            Expr::Bracket(
                Box::new(Expr::Gen(1)),
                Box::new(Expr::Bracket(
                    Box::new(Expr::Gen(3)),
                    Box::new(Expr::Gen(2))
                ))
            )
        );
        for bad in ["", "g", "c(1;)", "[g1,g2", "g1 g2", "x", "c(1,3)"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn evaluates() {
        let k = by_name("k3").unwrap();
        let calc = Calculator::new(&k).unwrap();
        let s = |t: &str| eval_str(t, &calc).unwrap().to_string();
        assert_eq!(s("[g1,[g3,g2]]"), "c(1,3;2)");
        assert_eq!(s("c(1,3;2)"), "c(1,3;2)");
        assert_eq!(s("g1 + g2 + g1"), "g2");
        assert_eq!(s("[g3,g1]"), "0");
        assert_eq!(s("c(2;1)t^2 + c(2;1)t^2"), "0");
        assert!(eval_str("g1t", &calc).is_err());
        assert!(eval_str("g4", &calc).is_err());
        assert!(eval_str("c(1;1)", &calc).is_err());
    }

    #[test]
    fn display_parses_back() {
        let k = by_name("pentagon").unwrap();
        let calc = Calculator::new(&k).unwrap();
        for text in [
            "[g1,[g1,[g3,g2]]]",
            "[c(3;1),c(4,5;2)]t^1 + c(5;3)t^3 + g4",
            "[g2,[g4,[g1,g3]]]",
        ] {
            let x = eval_str(text, &calc).unwrap();
            let y = eval_str(&x.to_string(), &calc).unwrap();
            assert!(calc.equal(&x, &y).unwrap(), "{text}: {x} vs {y}");
        }
    }
}
