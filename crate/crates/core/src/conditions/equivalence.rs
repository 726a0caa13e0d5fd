//! The seven equivalences between long-form and split conditions.

use serde::Serialize;

use crate::bundle::StructureBundle;
use crate::error::Result;

use super::check;

pub const EQUIVALENCES: [(&str, &[&str]); 7] = [
    ("C7", &["D7", "D8"]),
    ("C8", &["D9", "D10"]),
    ("C9", &["D11", "D12"]),
    ("C10", &["D13", "D14"]),
    ("C11", &["D15", "D16"]),
    ("C12", &["D17", "D18"]),
    ("C13", &["D19", "D20", "D21", "D22"]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub long: String,
    pub split: Vec<String>,
    pub long_holds: bool,
    pub split_holds: bool,
    pub equivalent: bool,
}

pub fn equivalence(long: &str, split: &[&str], bundle: &StructureBundle) -> Result<EquivalenceReport> {
    let long_holds = check(long, bundle)?.passed();
    let mut split_holds = true;
    for id in split {
        split_holds &= check(id, bundle)?.passed();
    }
    Ok(EquivalenceReport {
        long: long.to_string(),
        split: split.iter().map(|s| s.to_string()).collect(),
        long_holds,
        split_holds,
        equivalent: long_holds == split_holds,
    })
}

pub fn equivalence_suite(bundle: &StructureBundle) -> Result<Vec<EquivalenceReport>> {
    EQUIVALENCES.iter().map(|(l, s)| equivalence(l, s, bundle)).collect()
}
