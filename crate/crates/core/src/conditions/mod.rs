//! The condition registry, exact checks, theorem gates and equivalence suites.

pub mod equivalence;
pub mod gates;
pub mod structural;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bundle::StructureBundle;
use crate::error::{Error, Result};
use crate::report::ConditionReport;
use crate::sweedler::{evaluate, parse_equations, Equation};

pub use equivalence::{equivalence_suite, EquivalenceReport, EQUIVALENCES};
pub use gates::{find_gate, gate, gates, Gate};
pub use structural::{check_comodule_coalgebra, check_module_algebra, check_weak_action, check_yd, Side};

const REGISTRY_TEXT: &str = include_str!("conditions.eqs");
const ANCHOR_TEXT: &str = include_str!("anchors.tsv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anchor {
    pub id: String,
    pub location: String,
    pub anchor: String,
}

/// Names cited by the source without a displayed equation of their own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alias {
    pub name: &'static str,
    pub target: &'static str,
    pub status: &'static str,
}

pub const ALIASES: [Alias; 3] = [
    Alias {
        name: "D4",
        target: "C4",
        status: "unresolved: cited but never displayed; checked as C4",
    },
    Alias {
        name: "D5",
        target: "C5",
        status: "inferred, unverified against source",
    },
    Alias {
        name: "D6",
        target: "C6",
        status: "inferred, unverified against source",
    },
];

pub struct Registry {
    pub equations: Vec<Equation>,
    pub anchors: Vec<Anchor>,
    pub text: &'static str,
}

impl Registry {
    fn load() -> Result<Registry> {
        let equations = parse_equations(REGISTRY_TEXT)?;
        let mut anchors = vec![];
        for (n, line) in ANCHOR_TEXT.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.splitn(3, '\t').collect();
            if cols.len() != 3 {
                return Err(Error::parse(n + 1, 1, "anchor rows need three tab-separated columns"));
            }
            anchors.push(Anchor {
                id: cols[0].to_string(),
                location: cols[1].to_string(),
                anchor: cols[2].to_string(),
            });
        }
        Ok(Registry {
            equations,
            anchors,
            text: REGISTRY_TEXT,
        })
    }

    pub fn ids(&self) -> Vec<&str> {
        self.equations.iter().map(|e| e.id.as_str()).collect()
    }

    /// Looks up an id, following aliases.
    pub fn equation(&self, id: &str) -> Result<&Equation> {
        let target = ALIASES.iter().find(|a| a.name == id).map_or(id, |a| a.target);
        self.equations
            .iter()
            .find(|e| e.id == target)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn anchor(&self, id: &str) -> Option<&Anchor> {
        self.anchors.iter().find(|a| a.id == id)
    }

    /// The DSL line of an id exactly as shipped.
    pub fn source_line(&self, id: &str) -> Option<&'static str> {
        let prefix = format!("{id}:");
        self.text.lines().find(|l| l.starts_with(&prefix))
    }
}

pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Registry::load().expect("shipped registry parses"))
}

/// Every generator an equation references, identities excluded.
pub fn generators(eq: &Equation) -> Vec<String> {
    let mut s = BTreeSet::new();
    for p in &eq.pairs {
        s.extend(p.lhs.generators());
        s.extend(p.rhs.generators());
    }
    s.into_iter().filter(|g| !g.starts_with("id_")).collect()
}

/// Exact check of every clause on every input basis tuple.
pub fn check_equation(eq: &Equation, bundle: &StructureBundle) -> Result<ConditionReport> {
    let need = generators(eq);
    let need: Vec<&str> = need.iter().map(String::as_str).collect();
    bundle.require(&need)?;
    for (k, p) in eq.pairs.iter().enumerate() {
        let l = evaluate(&p.lhs, bundle)?;
        let r = evaluate(&p.rhs, bundle)?;
        let rep = ConditionReport::compare(eq.id.clone(), &l, &r)?;
        if !rep.passed() {
            let mut w = rep.witness.clone();
            if let Some(w) = w.as_mut() {
                w.clause = k;
            }
            let note = (eq.pairs.len() > 1).then(|| format!("clause {}: {}", k + 1, p.text));
            return Ok(ConditionReport::fail(eq.id.clone(), w, note));
        }
    }
    Ok(ConditionReport::pass(eq.id.clone()))
}

/// Checks a registered condition by id (aliases accepted).
pub fn check(id: &str, bundle: &StructureBundle) -> Result<ConditionReport> {
    let eq = registry().equation(id)?;
    let mut r = check_equation(eq, bundle)?;
    if let Some(a) = ALIASES.iter().find(|a| a.name == id) {
        r.id = id.to_string();
        r.note = Some(format!("alias of {} ({})", a.target, a.status));
    }
    Ok(r)
}

/// Parses and checks one ad-hoc equation line.
pub fn check_line(line: &str, bundle: &StructureBundle) -> Result<ConditionReport> {
    check_equation(&Equation::parse_line(line, 1)?, bundle)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcordanceRow {
    pub id: String,
    pub location: String,
    pub anchor: String,
    pub dsl: String,
}

/// Registry rows in shipped order, then the aliases.
pub fn concordance() -> Vec<ConcordanceRow> {
    let reg = registry();
    let mut rows: Vec<ConcordanceRow> = reg
        .equations
        .iter()
        .map(|e| {
            let a = reg.anchor(&e.id);
            ConcordanceRow {
                id: e.id.clone(),
                location: a.map(|a| a.location.clone()).unwrap_or_default(),
                anchor: a.map(|a| a.anchor.clone()).unwrap_or_default(),
                dsl: reg.source_line(&e.id).unwrap_or_default().to_string(),
            }
        })
        .collect();
    for a in ALIASES {
        rows.push(ConcordanceRow {
            id: a.name.to_string(),
            location: format!("alias of {}", a.target),
            anchor: a.status.to_string(),
            dsl: format!("{}: see {}", a.name, a.target),
        });
    }
    rows
}

pub fn concordance_text() -> String {
    let mut out = String::new();
    for r in concordance() {
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.id, r.location, r.anchor, r.dsl));
    }
    out
}

/// The closed id set every registry must cover.
pub fn closed_id_set() -> Vec<String> {
    const RANGES: [(&str, usize, usize); 23] = [
        ("LB", 1, 5),
        ("LTC", 3, 5),
        ("LC", 2, 3),
        ("L", 2, 3),
        ("LU", 1, 5),
        ("LT", 3, 3),
        ("RB", 1, 5),
        ("RTC", 2, 4),
        ("RU", 1, 5),
        ("RF", 2, 3),
        ("R", 2, 3),
        ("RT", 3, 3),
        ("RC", 2, 3),
        ("BT", 1, 4),
        ("TC", 1, 3),
        ("G", 1, 5),
        ("J", 1, 6),
        ("P", 1, 1),
        ("I", 1, 2),
        ("C", 1, 13),
        ("D", 7, 22),
        ("E", 1, 3),
        ("F", 1, 4),
    ];
    let mut out: Vec<String> = RANGES
        .iter()
        .flat_map(|(p, lo, hi)| (*lo..=*hi).map(move |k| format!("{p}{k}")))
        .collect();
    out.push("DB".to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_closed_set() {
        let reg = registry();
        let ids: BTreeSet<&str> = reg.ids().into_iter().collect();
        let want = closed_id_set();
        assert_eq!(ids.len(), want.len());
        for id in &want {
            assert!(ids.contains(id.as_str()), "missing {id}");
            let a = reg.anchor(id).unwrap_or_else(|| panic!("no anchor for {id}"));
            assert!(!a.anchor.is_empty() && !a.location.is_empty());
        }
    }

    #[test]
    fn db_and_d21_compile_alike() {
        let reg = registry();
        let (db, d21) = (reg.equation("DB").unwrap(), reg.equation("D21").unwrap());
        assert_eq!(db.pairs[0].lhs, d21.pairs[0].lhs);
        assert_eq!(db.pairs[0].rhs, d21.pairs[0].rhs);
    }

    #[test]
    fn every_line_reparses() {
        for e in &registry().equations {
            let again = Equation::parse_line(&e.to_string(), 1).unwrap();
            assert_eq!(again.clauses, e.clauses, "{}", e.id);
        }
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(registry().equation("D4").unwrap().id, "C4");
        assert!(matches!(registry().equation("D3"), Err(Error::UnknownId(_))));
    }
}
