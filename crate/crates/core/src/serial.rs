//! Text serialization of tensors.
//!
//! ```text
//! tensor mult_A : A A -> A {
//!   (1;0,1) = 1;
//!   (0;1,1) = -1/2;
//! }
//! ```
//!
//! Indices are `(out legs ; in legs)`, omitted entries are zero, and `k`
//! stands for the empty list of spaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::space::Space;
use crate::tensor::Tensor;

pub fn write_tensor(name: &str, t: &Tensor) -> String {
    let names = |s: &[Space]| {
        if s.is_empty() {
            "k".to_string()
        } else {
            s.iter().map(|s| s.name.clone()).collect::<Vec<_>>().join(" ")
        }
    };
    let mut out = format!("tensor {name} : {} -> {} {{\n", names(t.domain()), names(t.codomain()));
    for (o, i, v) in t.nonzeros() {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        out.push_str(&format!("  ({};{}) = {};\n", join(&o), join(&i), v.literal()));
    }
    out.push_str("}\n");
    out
}

/// A character cursor with line/column tracking, shared by the text formats.
pub struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Cursor<'a> {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            _src: src,
        }
    }

    pub fn at(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col, msg)
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips whitespace and `#` comments.
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Skips spaces and tabs only.
    pub fn skip_inline(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    pub fn eof(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(d) => Err(self.err(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.err(format!("expected `{c}`, found end of input"))),
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&n) {
            for _ in 0..n.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    /// A word of letters, digits, `_`, `.`, `'`, `^`, `|`.
    pub fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let mut w = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || "_.'^|".contains(c) {
                w.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if w.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.err(format!("expected a name, found `{c}`")),
                None => self.err("expected a name, found end of input"),
            });
        }
        Ok(w)
    }

    /// A scalar literal `[-]n[/d]`.
    pub fn literal(&mut self) -> Result<String> {
        self.skip_ws();
        let mut w = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '-' || c == '/' || c == '+' {
                w.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if w.is_empty() {
            return Err(self.err("expected a scalar literal"));
        }
        Ok(w)
    }

    pub fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let mut w = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            w.push(c);
            self.bump();
        }
        w.parse().map_err(|_| self.err("expected a basis index"))
    }

    /// Rest of the current line, trimmed.
    pub fn rest_of_line(&mut self) -> String {
        let mut w = String::new();
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            w.push(c);
            self.bump();
        }
        w.trim().to_string()
    }

    /// Space names up to (not including) `stop`.
    pub fn space_list(&mut self, spaces: &BTreeMap<String, Space>, stop: &str) -> Result<Vec<Space>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let rest: String = self.chars[self.pos..].iter().take(stop.len()).collect();
            if rest == stop {
                break;
            }
            let (line, col) = self.at();
            let w = self.word()?;
            if w == "k" {
                continue;
            }
            match spaces.get(&w) {
                Some(s) => out.push(s.clone()),
                None => return Err(Error::parse(line, col, format!("unknown space `{w}`"))),
            }
        }
        Ok(out)
    }

    fn index_list(&mut self, stop: char) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(stop) {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }
}

/// Parses the body after the `tensor` keyword.
pub fn parse_tensor_body(
    cur: &mut Cursor<'_>,
    spaces: &BTreeMap<String, Space>,
    field: Field,
) -> Result<(String, Tensor)> {
    let name = cur.word()?;
    cur.expect(':')?;
    let domain = cur.space_list(spaces, "->")?;
    if !cur.eat_str("->") {
        return Err(cur.err("expected `->`"));
    }
    let codomain = cur.space_list(spaces, "{")?;
    cur.expect('{')?;
    let mut t = Tensor::zeros(domain, codomain, field);
    let (cd, dd) = (t.codomain_dims(), t.domain_dims());
    let mut seen = std::collections::BTreeSet::new();
    while !cur.eat('}') {
        let (line, col) = cur.at();
        cur.expect('(')?;
        let out = cur.index_list(';')?;
        cur.expect(';')?;
        let input = cur.index_list(')')?;
        cur.expect(')')?;
        cur.expect('=')?;
        let lit = cur.literal()?;
        cur.expect(';')?;
        let in_range = |idx: &[usize], dims: &[usize]| {
            idx.len() == dims.len() && idx.iter().zip(dims).all(|(i, d)| i < d)
        };
        if !in_range(&out, &cd) || !in_range(&input, &dd) {
            return Err(Error::parse(line, col, "index out of range for the signature"));
        }
        if !seen.insert((out.clone(), input.clone())) {
            return Err(Error::parse(line, col, "duplicate entry"));
        }
        let v = field
            .parse_literal(&lit)
            .map_err(|e| Error::parse(line, col, e.to_string()))?;
        t.set(&out, &input, v);
    }
    Ok((name, t))
}

/// Parses a single `tensor` block.
pub fn parse_tensor(text: &str, spaces: &BTreeMap<String, Space>, field: Field) -> Result<(String, Tensor)> {
    let mut cur = Cursor::new(text);
    let kw = cur.word()?;
    if kw != "tensor" {
        return Err(cur.err(format!("expected `tensor`, found `{kw}`")));
    }
    let r = parse_tensor_body(&mut cur, spaces, field)?;
    if !cur.eof() {
        return Err(cur.err("trailing input after tensor block"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> BTreeMap<String, Space> {
        let h = Space::new("H", vec!["1".into(), "a".into()], Some(0)).unwrap();
        BTreeMap::from([("H".to_string(), h)])
    }

    #[test]
    fn round_trip_rational() {
        let spaces = ctx();
        let h = spaces["H"].clone();
        let q = Field::Rational;
        let mut t = Tensor::zeros(vec![h.clone(), h.clone()], vec![h], q);
        t.set(&[1], &[0, 1], q.parse_literal("-3/6").unwrap());
        t.set(&[0], &[1, 1], q.from_i64(7));
        let text = write_tensor("m", &t);
        assert!(text.contains("-1/2"));
        let (name, back) = parse_tensor(&text, &spaces, q).unwrap();
        assert_eq!(name, "m");
        assert_eq!(back, t);
    }

    #[test]
    fn scalar_tensor_uses_k() {
        let q = Field::Rational;
        let t = Tensor::scalar(q.from_i64(2));
        let text = write_tensor("s", &t);
        assert!(text.starts_with("tensor s : k -> k {"));
        assert_eq!(parse_tensor(&text, &ctx(), q).unwrap().1, t);
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_tensor("tensor m : H -> Z {}", &ctx(), Field::Rational).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 17, .. }), "{err:?}");
        let err = parse_tensor("tensor m : H -> H {\n (2;0) = 1;\n}", &ctx(), Field::Rational)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }
}
