use crate::error::{Error, Result};
use crate::space::Role;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Var(String),
    Unit(Role),
    One,
    Func(String),
    LParen,
    RParen,
    Comma,
    Tensor,
    Equals,
    Semi,
    ActL,
    ActR,
    /// Raw subscript text after `_`, braces removed.
    Sub(String),
    /// Raw superscript text after `^`, braces removed.
    Sup(String),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub const FUNCS: [&str; 6] = ["sigma", "tau", "eps", "SA", "SB", "S"];

/// Tokenizes one expression line. `line`/`col0` locate the text in its file.
pub fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, msg: String| Error::parse(line, col0 + i, msg);
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let push = |out: &mut Vec<Token>, tok: Tok| {
            out.push(Token {
                tok,
                line,
                col: col0 + start,
            })
        };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '(' => {
                push(&mut out, Tok::LParen);
                i += 1;
            }
            ')' => {
                push(&mut out, Tok::RParen);
                i += 1;
            }
            ',' => {
                push(&mut out, Tok::Comma);
                i += 1;
            }
            '%' => {
                push(&mut out, Tok::Tensor);
                i += 1;
            }
            ';' => {
                push(&mut out, Tok::Semi);
                i += 1;
            }
            '=' if chars.get(i + 1) == Some(&'=') => {
                push(&mut out, Tok::Equals);
                i += 2;
            }
            '|' if chars.get(i + 1) == Some(&'>') => {
                push(&mut out, Tok::ActL);
                i += 2;
            }
            '<' if chars.get(i + 1) == Some(&'|') => {
                push(&mut out, Tok::ActR);
                i += 2;
            }
            '_' | '^' => {
                i += 1;
                let raw = if chars.get(i) == Some(&'{') {
                    let close = chars[i..]
                        .iter()
                        .position(|&d| d == '}')
                        .ok_or_else(|| err(start, "unclosed `{` in script".into()))?;
                    let s: String = chars[i + 1..i + close].iter().collect();
                    i += close + 1;
                    s
                } else {
                    // A single script item: digit, [k], or a letter with primes.
                    let mut s = String::new();
                    match chars.get(i) {
                        Some(d) if d.is_ascii_digit() => {
                            s.push(*d);
                            i += 1;
                        }
                        Some('[') => {
                            while let Some(&d) = chars.get(i) {
                                s.push(d);
                                i += 1;
                                if d == ']' {
                                    break;
                                }
                            }
                        }
                        Some(d) if d.is_ascii_alphabetic() => {
                            s.push(*d);
                            i += 1;
                            while chars.get(i) == Some(&'\'') {
                                s.push('\'');
                                i += 1;
                            }
                        }
                        _ => return Err(err(start, format!("empty script after `{c}`"))),
                    }
                    s
                };
                if raw.trim().is_empty() {
                    return Err(err(start, "empty script".into()));
                }
                push(&mut out, if c == '_' { Tok::Sub(raw) } else { Tok::Sup(raw) });
            }
            '1' => {
                let unit = match (chars.get(i + 1), chars.get(i + 2)) {
                    (Some('_'), Some('A')) => Some(Role::A),
                    (Some('_'), Some('H')) => Some(Role::H),
                    (Some('_'), Some('B')) => Some(Role::B),
                    _ => None,
                };
                match unit {
                    Some(r) => {
                        push(&mut out, Tok::Unit(r));
                        i += 3;
                    }
                    None => {
                        push(&mut out, Tok::One);
                        i += 1;
                    }
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_alphabetic() {
                    j += 1;
                }
                let run: String = chars[i..j].iter().collect();
                let mut k = 0;
                while k < run.len() {
                    let rest = &run[k..];
                    if let Some(f) = FUNCS.iter().find(|f| rest.starts_with(**f)) {
                        out.push(Token {
                            tok: Tok::Func(f.to_string()),
                            line,
                            col: col0 + i + k,
                        });
                        k += f.len();
                        continue;
                    }
                    let v = &rest[..1];
                    if !matches!(v, "a" | "x" | "b") {
                        return Err(err(i + k, format!("unknown name `{v}` (variables are a, x, b)")));
                    }
                    let mut name = v.to_string();
                    let at = i + k;
                    k += 1;
                    if k == run.len() {
                        // Primes follow the letter run.
                        while chars.get(j) == Some(&'\'') {
                            name.push('\'');
                            j += 1;
                        }
                    }
                    out.push(Token {
                        tok: Tok::Var(name),
                        line,
                        col: col0 + at,
                    });
                }
                i = j;
            }
            _ => return Err(err(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s, 1, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn splits_variable_runs_and_keeps_keywords() {
        assert_eq!(
            toks("aa' sigma(x_1, x'_{1G})"),
            vec![
                Tok::Var("a".into()),
                Tok::Var("a'".into()),
                Tok::Func("sigma".into()),
                Tok::LParen,
                Tok::Var("x".into()),
                Tok::Sub("1".into()),
                Tok::Comma,
                Tok::Var("x'".into()),
                Tok::Sub("1G".into()),
                Tok::RParen,
            ]
        );
    }

    #[test]
    fn units_scalar_one_and_operators() {
        assert_eq!(
            toks("1_H % 1 |> <| =="),
            vec![Tok::Unit(Role::H), Tok::Tensor, Tok::One, Tok::ActL, Tok::ActR, Tok::Equals]
        );
        assert_eq!(toks("b_[0]"), vec![Tok::Var("b".into()), Tok::Sub("[0]".into())]);
    }

    #[test]
    fn unknown_letters_are_rejected_with_column() {
        let e = lex("a % y", 3, 10).unwrap_err();
        assert_eq!(e, Error::parse(3, 14, "unknown name `y` (variables are a, x, b)"));
    }
}
