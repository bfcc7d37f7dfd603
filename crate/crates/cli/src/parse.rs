//! Recursive-descent parser for character coordinates.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? int)?
//! atom  := int | var | '(' expr ')'
//! ```
//!
//! Variables are `t1..td` (`y` = `t1`, `x` = `t2`), `g` for the generator of
//! `F_q` when `q > p`, and `w` for the parameter of a curve.

use swan_core::{BoundaryLaurent, Field};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at {pos}: unknown variable '{name}'")]
    UnknownVariable { pos: usize, name: String },
    #[error("at {pos}: denominator is not a unit times a power of t1")]
    NonUnitDenominator { pos: usize },
    #[error("at {pos}: negative power of a non-unit")]
    NonUnitPower { pos: usize },
}

/// Which coefficient model the expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `t1..td`; `nvars = d - 1` residue variables.
    Surface { d: usize },
    /// Laurent polynomials in `w`, carried as the `d = 1` boundary model.
    Curve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Largest `t`-index mentioned (`x` counts as 2, `y` as 1).
pub fn highest_variable(src: &str) -> usize {
    tokenize(src)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) if s == "x" => Some(2),
            Tok::Ident(s) if s == "y" => Some(1),
            Tok::Ident(s) if s.starts_with('t') => s[1..].parse().ok(),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

pub fn mentions_curve_parameter(src: &str) -> bool {
    tokenize(src)
        .unwrap_or_default()
        .iter()
        .any(|(_, t)| *t == Tok::Ident("w".into()))
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    field: &'a Field,
    model: Model,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        match self.model {
            Model::Surface { d } => d - 1,
            Model::Curve => 0,
        }
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<BoundaryLaurent, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BoundaryLaurent, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                self.at += 1;
                let pos = self.pos();
                let den = self.unary()?;
                let inv = den
                    .unit_inverse()
                    .ok_or(ParseError::NonUnitDenominator { pos })?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BoundaryLaurent, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BoundaryLaurent, ParseError> {
        let pos = self.pos();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Some(Tok::Int(digits)) = self.peek().cloned() else {
            return self.syntax("expected an integer exponent");
        };
        self.at += 1;
        let e: u64 = match digits.parse() {
            Ok(e) => e,
            Err(_) => return self.syntax("exponent too large"),
        };
        if neg {
            let inv = base
                .unit_inverse()
                .ok_or(ParseError::NonUnitPower { pos })?;
            Ok(inv.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom(&mut self) -> Result<BoundaryLaurent, ParseError> {
        let pos = self.pos();
        let nvars = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Int(digits)) => {
                self.at += 1;
                let p = self.field.characteristic();
                let r = digits
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(BoundaryLaurent::constant(self.field, nvars, r as u32))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.variable(&name, pos)
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.syntax(format!("unexpected {}", describe(&t))),
            None => self.syntax("unexpected end of input"),
        }
    }

    fn variable(&self, name: &str, pos: usize) -> Result<BoundaryLaurent, ParseError> {
        let f = self.field;
        let nvars = self.nvars();
        let unknown = || ParseError::UnknownVariable {
            pos,
            name: name.to_string(),
        };
        if name == "g" {
            if f.degree() == 1 {
                return Err(unknown());
            }
            return Ok(BoundaryLaurent::constant(f, nvars, f.generator()));
        }
        match self.model {
            Model::Curve if name == "w" => Ok(BoundaryLaurent::t1_pow(f, 0, 1)),
            Model::Curve => Err(unknown()),
            Model::Surface { d } => {
                let idx: usize = match name {
                    "y" => 1,
                    "x" => 2,
                    s if s.starts_with('t') => s[1..].parse().map_err(|_| unknown())?,
                    _ => return Err(unknown()),
                };
                match idx {
                    1 => Ok(BoundaryLaurent::t1_pow(f, nvars, 1)),
                    i if i >= 2 && i <= d => Ok(BoundaryLaurent::var(f, nvars, i - 2)),
                    _ => Err(unknown()),
                }
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("integer '{s}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
    }
}

/// Parses one coordinate into the boundary model of `model`.
pub fn parse_expression(
    src: &str,
    field: &Field,
    model: Model,
) -> Result<BoundaryLaurent, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.chars().count(),
        field,
        model,
    };
    let value = p.expr()?;
    if p.at < p.toks.len() {
        let t = p.toks[p.at].1.clone();
        return p.syntax(format!("unexpected {}", describe(&t)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use swan_core::MPoly;

    fn surface(src: &str, p: u64, d: usize) -> Result<BoundaryLaurent, ParseError> {
        parse_expression(src, &Field::prime(p).unwrap(), Model::Surface { d })
    }

    #[test]
    fn surface_example() {
        let f = Field::prime(3).unwrap();
        let v = surface("x/y^2", 3, 2).unwrap();
        assert_eq!(v, BoundaryLaurent::from_mpoly(MPoly::var(&f, 1, 0), -2));
        assert_eq!(v.render(), "t2*t1^-2");
        assert!(surface("0", 3, 2).unwrap().is_zero());
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let v = surface("(t2+t3)^2", 2, 3).unwrap();
        assert_eq!(v, surface("t2^2 + t3^2", 2, 3).unwrap());
    }

    #[test]
    fn integers_reduce_mod_p() {
        assert_eq!(surface("7", 3, 2).unwrap(), surface("1", 3, 2).unwrap());
        assert_eq!(surface("-1", 3, 2).unwrap(), surface("2", 3, 2).unwrap());
        assert_eq!(surface("2/2", 3, 2).unwrap(), surface("1", 3, 2).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            surface("x/(y+1)", 3, 2),
            Err(ParseError::NonUnitDenominator { pos: 2 })
        );
        assert_eq!(
            surface("x/x", 3, 2),
            Err(ParseError::NonUnitDenominator { pos: 2 })
        );
        assert_eq!(
            surface("x + z", 3, 2),
            Err(ParseError::UnknownVariable {
                pos: 4,
                name: "z".into()
            })
        );
        assert_eq!(
            surface("t3", 3, 2),
            Err(ParseError::UnknownVariable {
                pos: 0,
                name: "t3".into()
            })
        );
        assert!(matches!(
            surface("(x", 3, 2),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            surface("x^", 3, 2),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            surface("x y", 3, 2),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            surface("x $", 3, 2),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert_eq!(
            surface("x^-1", 3, 2),
            Err(ParseError::NonUnitPower { pos: 0 })
        );
    }

    #[test]
    fn curve_and_extension_fields() {
        let f = Field::new(3, 2).unwrap();
        let v = parse_expression("g*w^-2 + w", &f, Model::Curve).unwrap();
        assert_eq!(v.to_series().unwrap().render(), "g*w^-2 + w");
        assert!(parse_expression("x", &f, Model::Curve).is_err());
        assert!(surface("g", 3, 2).is_err());
    }

    #[test]
    fn variable_scan() {
        assert_eq!(highest_variable("x/y^2"), 2);
        assert_eq!(highest_variable("t4*t1^-1"), 4);
        assert_eq!(highest_variable("3"), 0);
        assert!(mentions_curve_parameter("w^-3 + 1"));
        assert!(!mentions_curve_parameter("x"));
    }
}
