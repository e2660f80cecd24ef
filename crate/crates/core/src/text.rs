//! Text form of Clifford polynomials.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') ['-'] term)*
//! term   := (coeff ('*'? factor)*) | (factor ('*'? factor)*)
//! coeff  := int | int '/' posint
//! factor := 'x' posint ('^' posint)? | 'e' '[' posint (',' posint)* ']'
//! ```
//!
//! Whitespace between tokens is ignored. Printing emits terms in descending
//! graded-lex order of monomials and canonical blade order within a monomial,
//! e.g. `3/2 x1^2 x2 e[1,3] - x2`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::poly::{CliffPoly, MultiIndex};
use crate::rational::Rational;

pub fn print_poly(p: &CliffPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (alpha, mv) in p.terms().rev() {
        for (blade, c) in mv.terms() {
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in alpha.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", j + 1)),
                    _ => factors.push(format!("x{}^{}", j + 1, e)),
                }
            }
            if *blade != Blade::SCALAR {
                factors.push(blade.to_string());
            }
            let magnitude = c.abs();
            if !magnitude.is_one() || factors.is_empty() {
                let _ = write!(out, "{magnitude}");
                if !factors.is_empty() {
                    out.push(' ');
                }
            }
            out.push_str(&factors.join(" "));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    X,
    E,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Slash => "`/`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::X => "`x`".into(),
            Tok::E => "`e`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            toks.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
            continue;
        }
        let tok = match c {
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            'x' => Tok::X,
            'e' => Tok::E,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        toks.push((pos, tok));
        i += 1;
    }
    toks.push((chars.len() + 1, Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn posint(&mut self, what: &str) -> Result<(usize, BigInt)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(v) if v.is_positive() => {
                self.bump();
                Ok((pos, v))
            }
            _ => self.fail(&format!("positive integer ({what})")),
        }
    }

    fn index(&mut self, what: &str) -> Result<usize> {
        let (pos, v) = self.posint(what)?;
        let out_of_range = || Error::Parse {
            position: pos,
            message: format!("{what} {v} exceeds dimension {}", self.n),
        };
        let i: usize = (&v).try_into().map_err(|_| out_of_range())?;
        if i > self.n {
            return Err(out_of_range());
        }
        Ok(i)
    }

    fn poly(&mut self) -> Result<CliffPoly> {
        let mut acc = CliffPoly::zero(self.n);
        let mut negate = false;
        loop {
            if *self.peek() == Tok::Minus {
                self.bump();
                negate = !negate;
            }
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => return Ok(acc),
                _ => return self.fail("`+`, `-`, `*`, a factor or end of input"),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<CliffPoly> {
        let mut coeff = Rational::one();
        let mut alpha = vec![0u32; self.n];
        let mut mv = Multivector::one(self.n);
        if let Tok::Int(num) = self.peek().clone() {
            self.bump();
            let mut den = BigInt::one();
            if *self.peek() == Tok::Slash {
                self.bump();
                den = self.posint("denominator")?.1;
            }
            coeff = Rational::new(num, den);
        } else if !matches!(self.peek(), Tok::X | Tok::E) {
            return self.fail("coefficient or factor");
        } else {
            self.factor(&mut alpha, &mut mv)?;
        }
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    if !matches!(self.peek(), Tok::X | Tok::E) {
                        return self.fail("factor `x<i>` or `e[...]` after `*`");
                    }
                }
                Tok::X | Tok::E => {}
                _ => break,
            }
            self.factor(&mut alpha, &mut mv)?;
        }
        Ok(CliffPoly::monomial(MultiIndex::new(alpha), mv.scale(&coeff)))
    }

    fn factor(&mut self, alpha: &mut [u32], mv: &mut Multivector) -> Result<()> {
        match self.bump() {
            Tok::X => {
                let j = self.index("variable index")?;
                let mut exp = 1u32;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let (pos, v) = self.posint("exponent")?;
                    exp = v.try_into().map_err(|_| Error::Parse {
                        position: pos,
                        message: "exponent too large".into(),
                    })?;
                }
                let pos = self.pos();
                alpha[j - 1] = alpha[j - 1].checked_add(exp).ok_or(Error::Parse {
                    position: pos,
                    message: "exponent too large".into(),
                })?;
                Ok(())
            }
            Tok::E => {
                self.expect(Tok::LBracket, "`[` after `e`")?;
                let mut indices = vec![self.index("blade index")?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    let pos = self.pos();
                    let i = self.index("blade index")?;
                    if i <= *indices.last().unwrap() {
                        return Err(Error::Parse {
                            position: pos,
                            message: "blade indices must be strictly increasing".into(),
                        });
                    }
                    indices.push(i);
                }
                self.expect(Tok::RBracket, "`,` or `]`")?;
                let blade = Blade::from_indices(&indices, self.n)?;
                *mv = &*mv * &Multivector::term(self.n, blade, Rational::one());
                Ok(())
            }
            _ => unreachable!("factor called on non-factor token"),
        }
    }
}

/// Parses a polynomial in `n` variables. Errors carry a 1-based character
/// position.
pub fn parse_poly(text: &str, n: usize) -> Result<CliffPoly> {
    if n == 0 || n > crate::clifford::MAX_DIM {
        return Err(Error::InvalidParameter(format!("dimension {n} not supported")));
    }
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, at: 0, n };
    parser.poly()
}
