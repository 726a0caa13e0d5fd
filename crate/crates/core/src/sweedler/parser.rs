use super::ast::{parse_steps, ActOp, Clause, Expr, Script, Side};
use super::lexer::{lex, Tok, Token};
use crate::error::{Error, Result};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.col))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        Error::parse(l, c, msg)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn clauses(&mut self) -> Result<Vec<Clause>> {
        let mut out = vec![self.clause()?];
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            out.push(self.clause()?);
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected token"));
        }
        Ok(out)
    }

    fn clause(&mut self) -> Result<Clause> {
        let mut sides = vec![self.side()?];
        while self.peek() == Some(&Tok::Equals) {
            self.pos += 1;
            sides.push(self.side()?);
        }
        if sides.len() < 2 {
            return Err(self.err("expected `==`"));
        }
        Ok(Clause { sides })
    }

    fn side(&mut self) -> Result<Side> {
        let mut factors = vec![self.tfactor()?];
        while self.peek() == Some(&Tok::Tensor) {
            self.pos += 1;
            factors.push(self.tfactor()?);
        }
        Ok(Side { factors })
    }

    fn tfactor(&mut self) -> Result<Expr> {
        let left = self.prod()?;
        let op = match self.peek() {
            Some(Tok::ActL) => ActOp::Left,
            Some(Tok::ActR) => ActOp::Right,
            _ => return Ok(left),
        };
        self.pos += 1;
        let right = self.prod()?;
        if matches!(self.peek(), Some(Tok::ActL | Tok::ActR)) {
            return Err(self.err("chained actions need parentheses"));
        }
        Ok(Expr::Act(Box::new(left), op, Box::new(right)))
    }

    fn starts_unary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Var(_) | Tok::Unit(_) | Tok::One | Tok::Func(_) | Tok::LParen)
        )
    }

    fn prod(&mut self) -> Result<Expr> {
        if !self.starts_unary() {
            return Err(self.err("expected an expression"));
        }
        let mut items = vec![];
        while self.starts_unary() {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Prod(items)
        })
    }

    fn unary(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        let mut steps = vec![];
        loop {
            let (raw, kind) = match self.peek() {
                Some(Tok::Sub(r)) => (r.clone(), Script::Sub),
                Some(Tok::Sup(r)) => (r.clone(), Script::Sup),
                _ => break,
            };
            let (l, c) = self.here();
            self.pos += 1;
            let parsed = parse_steps(&raw, kind).map_err(|e| match e {
                Error::Sweedler(m) => Error::parse(l, c, m),
                other => other,
            })?;
            steps.extend(parsed);
        }
        if !steps.is_empty() {
            if matches!(e, Expr::One) {
                return Err(self.err("the scalar 1 takes no scripts"));
            }
            e = match e {
                Expr::Path(base, mut s) => {
                    s.extend(steps);
                    Expr::Path(base, s)
                }
                other => Expr::Path(Box::new(other), steps),
            };
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        let (l, c) = self.here();
        match self.next() {
            Some(Tok::Var(v)) => Ok(Expr::Var(v)),
            Some(Tok::Unit(r)) => Ok(Expr::Unit(r)),
            Some(Tok::One) => Ok(Expr::One),
            Some(Tok::LParen) => {
                let e = self.tfactor()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Func(name)) => {
                self.expect(Tok::LParen, "`(` after function name")?;
                let mut args = vec![self.tfactor()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    args.push(self.tfactor()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                let arity = if name == "sigma" || name == "tau" { 2 } else { 1 };
                if args.len() != arity {
                    return Err(Error::parse(
                        l,
                        c,
                        format!("{name} takes {arity} argument(s), got {}", args.len()),
                    ));
                }
                Ok(Expr::Call(name, args))
            }
            _ => Err(Error::parse(l, c, "expected an expression")),
        }
    }
}

/// Parses `clause (; clause)*` where a clause is `side == side (== side)*`.
pub fn parse_clauses(text: &str, line: usize, col0: usize) -> Result<Vec<Clause>> {
    let toks = lex(text, line, col0)?;
    let end = (line, col0 + text.chars().count());
    Parser { toks, pos: 0, end }.clauses()
}

/// Parses a single tensor expression such as `a_R % x_R`.
pub fn parse_side(text: &str) -> Result<Side> {
    let toks = lex(text, 1, 1)?;
    let end = (1, 1 + text.chars().count());
    let mut p = Parser { toks, pos: 0, end };
    let s = p.side()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected token"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweedler::ast::Step;

    #[test]
    fn nested_paths_merge() {
        let s = parse_side("x'^G_R x_R^g % x''_{Gg}").unwrap();
        assert_eq!(s.factors.len(), 2);
        match &s.factors[0] {
            Expr::Prod(items) => match &items[0] {
                Expr::Path(base, steps) => {
                    assert_eq!(**base, Expr::Var("x'".into()));
                    assert_eq!(steps.len(), 2);
                }
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn actions_bind_looser_than_products() {
        let s = parse_side("x_3 b_{[1]} |> a'_0").unwrap();
        assert!(matches!(&s.factors[0], Expr::Act(l, ActOp::Left, _) if matches!(**l, Expr::Prod(_))));
    }

    #[test]
    fn print_reparses_identically() {
        for text in [
            "(a a')_R % x_R",
            "b_{[1]} |> a_0 % b_{[0]} <| a_{-1}",
            "S(x_1)_1^G % x_{2G} % tau(S(x_1)_2, x_3)",
            "(x_1 |> a)_1 % (x_1 |> a)_{2-1} x_2 % (x_1 |> a)_{20}",
            "1_A % 1_H % 1_B eps(x)",
            "(1_A)_{-1} % (1_A)_0",
        ] {
            let s = parse_side(text).unwrap();
            let again = parse_side(&s.to_string()).unwrap();
            assert_eq!(s, again, "{text} -> {s}");
        }
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_clauses("a_R % x_R == ", 4, 7).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e:?}");
        let e = parse_clauses("sigma(x) == 1_A", 1, 1).unwrap_err();
        assert!(matches!(e, Error::Parse { col: 1, .. }), "{e:?}");
        assert!(parse_clauses("x_{1G} == x", 1, 1).is_ok());
        let c = parse_clauses("a_{2-11} == a", 1, 1).unwrap();
        match &c[0].sides[0].factors[0] {
            Expr::Path(_, steps) => assert_eq!(steps[1], Step::CoLeft(-1)),
            other => panic!("{other:?}"),
        }
    }
}
