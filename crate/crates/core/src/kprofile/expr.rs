use std::fmt;

use crate::error::{Error, Result};
use crate::Int;

/// Syntax tree of a space built from catalog leaves.
///
/// Text syntax: `point`, `S(k)`, `M(n)`, `CP(k)`, `susp(e)`, `smash(e1,e2)`,
/// `prod(e1,e2)`, `MxSM(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Point,
    Sphere(u32),
    Moore(Int),
    /// Complex projective space `CP^k`.
    ProjectiveSpace(u32),
    Susp(Box<SpaceExpr>),
    Smash(Box<SpaceExpr>, Box<SpaceExpr>),
    Prod(Box<SpaceExpr>, Box<SpaceExpr>),
    MnXSigmaMn(Int),
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Point => write!(f, "point"),
            SpaceExpr::Sphere(k) => write!(f, "S({k})"),
            SpaceExpr::Moore(m) => write!(f, "M({m})"),
            SpaceExpr::ProjectiveSpace(k) => write!(f, "CP({k})"),
            SpaceExpr::Susp(e) => write!(f, "susp({e})"),
            SpaceExpr::Smash(a, b) => write!(f, "smash({a},{b})"),
            SpaceExpr::Prod(a, b) => write!(f, "prod({a},{b})"),
            SpaceExpr::MnXSigmaMn(m) => write!(f, "MxSM({m})"),
        }
    }
}

impl std::str::FromStr for SpaceExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

pub fn parse_expr(text: &str) -> Result<SpaceExpr> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected trailing input '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.chars.get(self.pos).map_or("end of input".to_string(), |c| format!("'{c}'"));
            Err(self.error(format!("expected '{c}', found {found}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a constructor name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<(usize, Int)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a nonnegative integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v = s.parse::<Int>().map_err(|_| Error::Parse { pos: start, msg: format!("integer {s} too large") })?;
        Ok((start, v))
    }

    fn int_arg(&mut self) -> Result<(usize, Int)> {
        self.expect('(')?;
        let v = self.integer()?;
        self.expect(')')?;
        Ok(v)
    }

    fn expr(&mut self) -> Result<SpaceExpr> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "point" => Ok(SpaceExpr::Point),
            "S" => {
                let (at, k) = self.int_arg()?;
                let k =
                    u32::try_from(k).map_err(|_| Error::Parse { pos: at, msg: "sphere dimension too large".into() })?;
                Ok(SpaceExpr::Sphere(k))
            }
            "CP" => {
                let (at, k) = self.int_arg()?;
                if k < 1 {
                    return Err(Error::Parse { pos: at, msg: "CP(k) needs k >= 1".into() });
                }
                let k = u32::try_from(k).map_err(|_| Error::Parse { pos: at, msg: "dimension too large".into() })?;
                Ok(SpaceExpr::ProjectiveSpace(k))
            }
            "M" | "MxSM" => {
                let (at, m) = self.int_arg()?;
                if m < 2 {
                    return Err(Error::Parse { pos: at, msg: format!("Moore parameter must be at least 2, got {m}") });
                }
                Ok(if name == "M" { SpaceExpr::Moore(m) } else { SpaceExpr::MnXSigmaMn(m) })
            }
            "susp" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(SpaceExpr::Susp(Box::new(e)))
            }
            "smash" | "prod" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if name == "smash" { SpaceExpr::Smash(a, b) } else { SpaceExpr::Prod(a, b) })
            }
            other => Err(Error::Parse {
                pos: start,
                msg: format!("unknown constructor '{other}' (expected point, S, M, CP, susp, smash, prod, MxSM)"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["point", "S(2)", "M(3)", "susp(M(4))", "smash(M(2),susp(M(2)))", "prod(S(2),CP(2))", "MxSM(5)"] {
            assert_eq!(parse_expr(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_expr(" prod ( S(2) , S(2) ) ").unwrap().to_string(), "prod(S(2),S(2))");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("smash(M(3) S(2))") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("M(1)"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_expr("torus"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_expr("S(2))"), Err(Error::Parse { pos: 4, .. })));
    }
}
