//! Sweedler-notation DSL: lexer, parser, string-diagram IR and compiler.

pub mod ast;
pub mod build;
pub mod compile;
pub mod diagram;
pub mod lexer;
pub mod parser;

use std::fmt;

pub use ast::{Clause, Expr, Side, Step};
pub use build::build;
pub use compile::{compile, evaluate, evaluate_with_order, Bindings, Compiled};
pub use diagram::{BoxInst, Diagram, Generator};

use crate::error::{Error, Result};

/// One side compared against another.
#[derive(Clone, Debug)]
pub struct Pair {
    pub lhs: Diagram,
    pub rhs: Diagram,
    pub text: String,
}

/// A labeled condition: one or more pairs of diagrams.
#[derive(Clone, Debug)]
pub struct Equation {
    pub id: String,
    pub clauses: Vec<Clause>,
    pub pairs: Vec<Pair>,
    pub prerequisites: Vec<String>,
}

impl Equation {
    /// Builds the diagrams of parsed clauses. In a chain `s1 == s2 == s3`
    /// each earlier side is compared with the last one.
    pub fn new(id: &str, clauses: Vec<Clause>, prerequisites: Vec<String>) -> Result<Equation> {
        let mut pairs = vec![];
        for c in &clauses {
            let last = c.sides.last().expect("clause has two sides");
            let rhs = build(last).map_err(|e| in_equation(id, e))?;
            for s in &c.sides[..c.sides.len() - 1] {
                let lhs = build(s).map_err(|e| in_equation(id, e))?;
                if lhs.input_names() != rhs.input_names() || lhs.input_roles() != rhs.input_roles() {
                    return Err(Error::RoleMismatch(format!(
                        "{id}: `{s}` has inputs {:?} but `{last}` has {:?}",
                        lhs.input_names(),
                        rhs.input_names()
                    )));
                }
                if lhs.output_roles() != rhs.output_roles() {
                    return Err(Error::RoleMismatch(format!(
                        "{id}: `{s}` and `{last}` have different output roles"
                    )));
                }
                pairs.push(Pair {
                    lhs,
                    rhs: rhs.clone(),
                    text: format!("{s} == {last}"),
                });
            }
        }
        Ok(Equation {
            id: id.to_string(),
            clauses,
            pairs,
            prerequisites,
        })
    }

    /// Parses `ID : clause (; clause)* [requires ID,...]`.
    pub fn parse_line(line: &str, line_no: usize) -> Result<Equation> {
        let colon = line
            .find(':')
            .ok_or_else(|| Error::parse(line_no, 1, "expected `ID :`"))?;
        let id = line[..colon].trim();
        if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || "._-".contains(c)) {
            return Err(Error::parse(line_no, 1, format!("bad condition id `{id}`")));
        }
        let mut body = &line[colon + 1..];
        let mut prerequisites = vec![];
        if let Some(at) = body.find("requires") {
            prerequisites = body[at + "requires".len()..]
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            body = &body[..at];
        }
        let col0 = line[..colon + 1].chars().count() + 1;
        let clauses = parser::parse_clauses(body, line_no, col0)?;
        Equation::new(id, clauses, prerequisites)
    }
}

fn in_equation(id: &str, e: Error) -> Error {
    match e {
        Error::Sweedler(m) => Error::Sweedler(format!("{id}: {m}")),
        Error::RoleMismatch(m) => Error::RoleMismatch(format!("{id}: {m}")),
        Error::DanglingIndex(i, m) => Error::DanglingIndex(i, format!("{id}: {m}")),
        other => other,
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :", self.id)?;
        for (i, c) in self.clauses.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { " ; " })?;
            write!(f, "{c}")?;
        }
        if !self.prerequisites.is_empty() {
            write!(f, " requires {}", self.prerequisites.join(","))?;
        }
        Ok(())
    }
}

/// Parses an equation file: one equation per line, `#` starts a comment.
pub fn parse_equations(text: &str) -> Result<Vec<Equation>> {
    let mut out: Vec<Equation> = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let eq = Equation::parse_line(line, i + 1)?;
        if out.iter().any(|e| e.id == eq.id) {
            return Err(Error::parse(i + 1, 1, format!("duplicate id `{}`", eq.id)));
        }
        out.push(eq);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equation_lines() {
        let eq = Equation::parse_line("LB3 : x^G % (1_H)_G == (1_H)^G % x_G == 1_A % x", 1).unwrap();
        assert_eq!(eq.pairs.len(), 2);
        let eq = Equation::parse_line("BT1 : a_R % (1_H)_R == a % 1_H requires LB1, RB1", 1).unwrap();
        assert_eq!(eq.prerequisites, vec!["LB1", "RB1"]);
        let again = Equation::parse_line(&eq.to_string(), 1).unwrap();
        assert_eq!(again.clauses, eq.clauses);
    }

    #[test]
    fn file_parsing_reports_lines() {
        let text = "# header\nA1 : x == x\n\nA2 : x == a\n";
        let e = parse_equations(text).unwrap_err();
        assert!(matches!(e, Error::RoleMismatch(_)), "{e:?}");
        let e = parse_equations("A1 : x == \n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert_eq!(parse_equations("A1 : x == x # trailing\n").unwrap().len(), 1);
    }
}
