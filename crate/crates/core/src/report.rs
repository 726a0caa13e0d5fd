//! Verdicts, witnesses and the run report shared by checkers and the CLI.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::tensor::{check_spaces, multi_indices, render_vector, volume, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "skipped",
        })
    }
}

/// The first input basis tuple on which two maps differ, with both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Basis labels of the input tuple, one per domain leg.
    pub input: Vec<String>,
    pub index: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    /// Which clause of a multi-clause equation failed (0-based).
    pub clause: usize,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let input = if self.input.is_empty() {
            "()".to_string()
        } else {
            self.input.join(" % ")
        };
        write!(f, "at {input}: lhs = {}, rhs = {}", self.lhs, self.rhs)
    }
}

/// Column-wise comparison; the smallest differing input tuple wins.
pub fn first_difference(f: &Tensor, g: &Tensor) -> Result<Option<Witness>> {
    check_spaces(f.codomain(), g.codomain())?;
    check_spaces(f.domain(), g.domain())?;
    let cols = volume(&f.domain_dims());
    let rows = volume(&f.codomain_dims());
    let (fe, ge) = (f.entries(), g.entries());
    let hit = (0..cols)
        .into_par_iter()
        .find_first(|&c| (0..rows).any(|r| fe[r * cols + c] != ge[r * cols + c]));
    let Some(c) = hit else { return Ok(None) };
    let dims = f.domain_dims();
    let index = crate::tensor::unflatten(&dims, c);
    let input = index
        .iter()
        .zip(f.domain())
        .map(|(&i, s)| s.label(i).to_string())
        .collect();
    Ok(Some(Witness {
        input,
        lhs: render_vector(f.codomain(), &f.column(&index)),
        rhs: render_vector(g.codomain(), &g.column(&index)),
        index,
        clause: 0,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionReport {
    pub fn pass(id: impl Into<String>) -> ConditionReport {
        ConditionReport {
            id: id.into(),
            verdict: Verdict::Pass,
            witness: None,
            note: None,
        }
    }

    pub fn fail(id: impl Into<String>, witness: Option<Witness>, note: Option<String>) -> ConditionReport {
        ConditionReport {
            id: id.into(),
            verdict: Verdict::Fail,
            witness,
            note,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> ConditionReport {
        ConditionReport {
            id: id.into(),
            verdict: Verdict::Skipped,
            witness: None,
            note: Some(reason.into()),
        }
    }

    /// Pass when `f == g`, else a failure carrying the first witness.
    pub fn compare(id: impl Into<String>, f: &Tensor, g: &Tensor) -> Result<ConditionReport> {
        Ok(match first_difference(f, g)? {
            None => ConditionReport::pass(id),
            Some(w) => ConditionReport::fail(id, Some(w), None),
        })
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<10} {}", self.id, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, "  {w}")?;
        }
        if let Some(n) = &self.note {
            write!(f, "  ({n})")?;
        }
        Ok(())
    }
}

/// Folds several reports into one verdict under a new id, keeping the first
/// failure's witness.
pub fn conjunction(id: &str, parts: &[ConditionReport]) -> ConditionReport {
    match parts.iter().find(|r| r.verdict == Verdict::Fail) {
        Some(r) => ConditionReport::fail(id, r.witness.clone(), Some(format!("{} fails", r.id))),
        None if parts.iter().any(|r| r.verdict == Verdict::Skipped) => {
            ConditionReport::skipped(id, "a component was skipped")
        }
        None => ConditionReport::pass(id),
    }
}

pub fn all_pass(parts: &[ConditionReport]) -> bool {
    parts.iter().all(ConditionReport::passed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub gate: String,
    pub prerequisites: Vec<ConditionReport>,
    pub main: Vec<ConditionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<ConditionReport>,
    /// `(main all pass) == (oracle passes)`; absent when the prerequisites
    /// fail or there is no oracle.
    pub consistent: Option<bool>,
}

impl GateReport {
    pub fn new(
        gate: &str,
        prerequisites: Vec<ConditionReport>,
        main: Vec<ConditionReport>,
        oracle: Option<ConditionReport>,
    ) -> GateReport {
        let consistent = match &oracle {
            Some(o) if all_pass(&prerequisites) && o.verdict != Verdict::Skipped => {
                Some(all_pass(&main) == o.passed())
            }
            _ => None,
        };
        GateReport {
            gate: gate.to_string(),
            prerequisites,
            main,
            oracle,
            consistent,
        }
    }

    pub fn prerequisites_hold(&self) -> bool {
        all_pass(&self.prerequisites)
    }

    pub fn main_holds(&self) -> bool {
        all_pass(&self.main)
    }

    /// The gate's own verdict: prerequisites and main set all pass.
    pub fn verdict(&self) -> Verdict {
        if self.prerequisites_hold() && self.main_holds() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for GateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gate {}: {}", self.gate, self.verdict())?;
        for r in &self.prerequisites {
            writeln!(f, "  pre  {r}")?;
        }
        for r in &self.main {
            writeln!(f, "  main {r}")?;
        }
        if let Some(o) = &self.oracle {
            writeln!(f, "  oracle {o}")?;
        }
        match self.consistent {
            Some(c) => write!(f, "  iff-consistent: {c}"),
            None => write!(f, "  iff-consistent: n/a"),
        }
    }
}

/// One line of a run report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl From<&ConditionReport> for Record {
    fn from(r: &ConditionReport) -> Record {
        Record {
            id: r.id.clone(),
            verdict: r.verdict,
            witness: r.witness.clone(),
            note: r.note.clone(),
            wall_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub field: String,
    pub records: Vec<Record>,
    pub exit: i32,
}

impl RunReport {
    pub fn new(command: impl Into<String>, field: impl Into<String>, records: Vec<Record>) -> RunReport {
        let exit = if records.iter().any(|r| r.verdict == Verdict::Fail) {
            1
        } else {
            0
        };
        RunReport {
            command: command.into(),
            field: field.into(),
            records,
            exit,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.records.iter().map(|r| r.id.len()).max().unwrap_or(0);
        let mut out = format!("# {}\n# field {}\n", self.command, self.field);
        for r in &self.records {
            out.push_str(&format!("{:<width$}  {:<7}", r.id, r.verdict.to_string()));
            if let Some(t) = r.wall_ms {
                out.push_str(&format!("  {t:.1}ms"));
            }
            if let Some(w) = &r.witness {
                out.push_str(&format!("  {w}"));
            }
            if let Some(n) = &r.note {
                out.push_str(&format!("  ({n})"));
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out
    }
}

/// All input tuples of a domain, in lexicographic order.
pub fn input_tuples(t: &Tensor) -> Vec<Vec<usize>> {
    multi_indices(&t.domain_dims()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::space::Space;

    #[test]
    fn witness_is_smallest_column() {
        let f = Field::Rational;
        let h = Space::new("H", vec!["1".into(), "a".into()], Some(0)).unwrap();
        let id = Tensor::identity(&h, f);
        let sw = Tensor::from_columns(vec![h.clone()], vec![h.clone()], f, |i| vec![(vec![1 - i[0]], f.one())]);
        let w = first_difference(&id, &sw).unwrap().unwrap();
        assert_eq!(w.input, vec!["1".to_string()]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "a"));
        assert!(first_difference(&id, &id).unwrap().is_none());
    }

    #[test]
    fn gate_consistency_flag() {
        let p = ConditionReport::pass("X");
        let q = ConditionReport::fail("Y", None, None);
        let g = GateReport::new("g", vec![p.clone()], vec![q.clone()], Some(q.clone()));
        assert_eq!(g.consistent, Some(true));
        let g = GateReport::new("g", vec![p.clone()], vec![p.clone()], Some(q.clone()));
        assert_eq!(g.consistent, Some(false));
        let g = GateReport::new("g", vec![q.clone()], vec![p.clone()], Some(p));
        assert_eq!(g.consistent, None);
    }

    #[test]
    fn exit_codes() {
        let r = RunReport::new("check", "Q", vec![Record::from(&ConditionReport::pass("LB1"))]);
        assert_eq!(r.exit, 0);
        let r = RunReport::new("check", "Q", vec![Record::from(&ConditionReport::fail("I1", None, None))]);
        assert_eq!(r.exit, 1);
        assert!(r.to_json().contains("\"fail\""));
    }
}
