//! Canonical text form: `n=2;A(1,4,s);A(2,3)` for plain arcs (the `s` flag
//! marks a seam crossing) and `T(i,j)` for through-arcs.

use std::fmt;
use std::str::FromStr;

use super::{Diagram, DiagramError, PlainArc};

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for a in &self.plain {
            write!(f, ";A({},{}{})", a.i, a.j, if a.seam { ",s" } else { "" })?;
        }
        for (i, j) in &self.through {
            write!(f, ";T({i},{j})")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DiagramError> {
        Err(DiagramError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), DiagramError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("number out of range")
            })
    }

    fn pair(&mut self) -> Result<(u32, u32), DiagramError> {
        self.expect(b'(')?;
        let i = self.number()?;
        self.expect(b',')?;
        let j = self.number()?;
        Ok((i, j))
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor {
            s: s.as_bytes(),
            pos: 0,
        };
        c.expect(b'n')?;
        c.expect(b'=')?;
        let n = c.number()?;
        if n == 0 {
            return c.err("n must be positive");
        }
        let (mut plain, mut through) = (Vec::new(), Vec::new());
        while c.peek().is_some() {
            c.expect(b';')?;
            let item = c.pos;
            let kind = c.peek();
            c.pos += 1;
            let (i, j) = match kind {
                Some(b'A') => {
                    let (i, j) = c.pair()?;
                    let seam = if c.peek() == Some(b',') {
                        c.pos += 1;
                        c.expect(b's')?;
                        true
                    } else {
                        false
                    };
                    plain.push(PlainArc::new(i, j, seam));
                    (i, j)
                }
                Some(b'T') => {
                    let p = c.pair()?;
                    through.push(p);
                    p
                }
                _ => {
                    c.pos = item;
                    return c.err("expected `A` or `T`");
                }
            };
            c.expect(b')')?;
            if i == j || i == 0 || j == 0 || i.max(j) > 2 * n {
                c.pos = item;
                return c.err(format!("degenerate or out-of-range arc ({i},{j})"));
            }
        }
        let end = c.pos;
        Diagram::new(n, plain, through).map_err(|e| DiagramError::Parse {
            pos: end,
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["n=1;A(1,2,s)", "n=1;T(1,2)", "n=2;A(1,4,s);T(2,3)", "n=3;A(1,2);A(3,6);A(4,5)"] {
            let d: Diagram = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        // non-canonical input order is accepted and normalized
        let d: Diagram = "n=2;A(3,2);A(4,1)".parse().unwrap();
        assert_eq!(d.to_string(), "n=2;A(1,4);A(2,3)");
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match s.parse::<Diagram>() {
            Err(DiagramError::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("n=1;A(1,1,s)"), 4);
        assert_eq!(pos("m=1"), 0);
        assert_eq!(pos("n=1;A(1,2,t)"), 10);
        assert_eq!(pos("n=1;X(1,2)"), 4);
        assert_eq!(pos("n=1;A(1,2"), 9);
        assert_eq!(pos("n=2;A(1,3);A(2,4)"), 17);
        assert_eq!(pos("n=0"), 3);
    }
}
