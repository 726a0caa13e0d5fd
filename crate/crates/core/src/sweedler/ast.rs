use std::fmt;

use crate::error::{Error, Result};
use crate::space::Role;

/// Maximum number of legs of an iterated comultiplication.
pub const MAX_DELTA_LEGS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Script {
    Sub,
    Sup,
}

/// One step of a Sweedler path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Comultiplication leg `1..=6`.
    Delta(usize),
    /// Left coaction leg: `-1` (H-leg) or `0`.
    CoLeft(i8),
    /// Right coaction leg `[k]`: `[0]` is the module leg.
    CoRight(usize),
    /// Output of the structure-map box named by the tag.
    Tag(String, Script),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActOp {
    /// `|>`
    Left,
    /// `<|`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Unit(Role),
    One,
    Call(String, Vec<Expr>),
    Prod(Vec<Expr>),
    Act(Box<Expr>, ActOp, Box<Expr>),
    Path(Box<Expr>, Vec<Step>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub factors: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub sides: Vec<Side>,
}

/// Parses the text of a script group into steps.
pub fn parse_steps(raw: &str, kind: Script) -> Result<Vec<Step>> {
    let chars: Vec<char> = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: String| Error::Sweedler(format!("script `{raw}`: {m}"));
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if kind == Script::Sup && !c.is_ascii_alphabetic() {
            return Err(bad("superscripts hold map tags only".into()));
        }
        match c {
            '0' => {
                out.push(Step::CoLeft(0));
                i += 1;
            }
            '1'..='9' => {
                let k = c.to_digit(10).unwrap() as usize;
                if k > MAX_DELTA_LEGS {
                    return Err(bad(format!("comultiplication leg {k} exceeds {MAX_DELTA_LEGS}")));
                }
                out.push(Step::Delta(k));
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) != Some(&'1') {
                    return Err(bad("`-` must be followed by `1`".into()));
                }
                out.push(Step::CoLeft(-1));
                i += 2;
            }
            '[' => {
                let close = chars[i..]
                    .iter()
                    .position(|&d| d == ']')
                    .ok_or_else(|| bad("unclosed `[`".into()))?;
                let inner: String = chars[i + 1..i + close].iter().collect();
                let k: usize = inner.parse().map_err(|_| bad(format!("bad coaction leg `[{inner}]`")))?;
                if k > MAX_DELTA_LEGS {
                    return Err(bad(format!("coaction leg [{k}] exceeds {MAX_DELTA_LEGS}")));
                }
                out.push(Step::CoRight(k));
                i += close + 1;
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = c.to_string();
                i += 1;
                while chars.get(i) == Some(&'\'') {
                    name.push('\'');
                    i += 1;
                }
                tag_kind(&name)?;
                out.push(Step::Tag(name, kind));
            }
            _ => return Err(bad(format!("unexpected `{c}`"))),
        }
    }
    Ok(out)
}

/// The structure map a tag refers to: R, G, T or F (either case).
pub fn tag_kind(tag: &str) -> Result<&'static str> {
    match tag.chars().next().map(|c| c.to_ascii_uppercase()) {
        Some('R') => Ok("R"),
        Some('G') => Ok("G"),
        Some('T') => Ok("T"),
        Some('F') => Ok("F"),
        _ => Err(Error::UnknownGenerator(tag.to_string())),
    }
}

fn step_text(s: &Step) -> String {
    match s {
        Step::Delta(k) => k.to_string(),
        Step::CoLeft(k) => k.to_string(),
        Step::CoRight(k) => format!("[{k}]"),
        Step::Tag(t, _) => t.clone(),
    }
}

fn write_steps(f: &mut fmt::Formatter<'_>, steps: &[Step]) -> fmt::Result {
    let mut run = String::new();
    let flush = |f: &mut fmt::Formatter<'_>, run: &mut String| -> fmt::Result {
        if !run.is_empty() {
            write!(f, "_{{{run}}}")?;
            run.clear();
        }
        Ok(())
    };
    for s in steps {
        match s {
            Step::Tag(t, Script::Sup) => {
                flush(f, &mut run)?;
                write!(f, "^{t}")?;
            }
            _ => run.push_str(&step_text(s)),
        }
    }
    flush(f, &mut run)
}

impl Expr {
    fn write_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Act(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }

    /// Canonical key of a compound base used with a path.
    pub fn base_key(&self) -> String {
        match self {
            Expr::Var(v) => v.clone(),
            other => format!("({other})"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Unit(r) => write!(f, "1_{r}"),
            Expr::One => f.write_str("1"),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::Prod(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    e.write_operand(f)?;
                }
                Ok(())
            }
            Expr::Act(l, op, r) => {
                l.write_operand(f)?;
                f.write_str(match op {
                    ActOp::Left => " |> ",
                    ActOp::Right => " <| ",
                })?;
                r.write_operand(f)
            }
            Expr::Path(base, steps) => {
                match base.as_ref() {
                    Expr::Var(v) => f.write_str(v)?,
                    Expr::Call(..) => write!(f, "{base}")?,
                    other => write!(f, "({other})")?,
                }
                write_steps(f, steps)
            }
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" % ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                f.write_str(" == ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_parsing() {
        assert_eq!(
            parse_steps("2-11", Script::Sub).unwrap(),
            vec![Step::Delta(2), Step::CoLeft(-1), Step::Delta(1)]
        );
        assert_eq!(
            parse_steps("1[0]", Script::Sub).unwrap(),
            vec![Step::Delta(1), Step::CoRight(0)]
        );
        assert_eq!(
            parse_steps("T1G", Script::Sub).unwrap(),
            vec![
                Step::Tag("T".into(), Script::Sub),
                Step::Delta(1),
                Step::Tag("G".into(), Script::Sub)
            ]
        );
        assert!(parse_steps("7", Script::Sub).is_err());
        assert!(parse_steps("1", Script::Sup).is_err());
        assert!(matches!(parse_steps("Q", Script::Sub), Err(Error::UnknownGenerator(_))));
    }
}
