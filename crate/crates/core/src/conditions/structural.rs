//! Module, comodule and Yetter-Drinfeld checks on the bundle's actions and
//! coactions, built from inline equation lines.

use serde::{Deserialize, Serialize};

use crate::bundle::StructureBundle;
use crate::error::Result;
use crate::report::ConditionReport;

use super::gates::{check_item, COMODULE_LEFT, COMODULE_RIGHT, MODULE_LEFT, MODULE_RIGHT, WEAK_LEFT, WEAK_RIGHT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Side, String> {
        match s {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(format!("side must be `left` or `right`, got `{s}`")),
        }
    }
}

fn run(items: &[&str], b: &StructureBundle) -> Result<Vec<ConditionReport>> {
    items.iter().map(|i| check_item(i, b)).collect()
}

/// Measuring identities of `act_l` (left) or `act_r` (right).
pub fn check_weak_action(side: Side, b: &StructureBundle) -> Result<Vec<ConditionReport>> {
    run(if side == Side::Left { &WEAK_LEFT } else { &WEAK_RIGHT }, b)
}

/// Weak action plus the module law, i.e. a module algebra.
pub fn check_module_algebra(side: Side, b: &StructureBundle) -> Result<Vec<ConditionReport>> {
    let mut v = check_weak_action(side, b)?;
    v.push(check_item(if side == Side::Left { MODULE_LEFT } else { MODULE_RIGHT }, b)?);
    Ok(v)
}

/// Counital coassociative coaction that is a coalgebra map.
pub fn check_comodule_coalgebra(side: Side, b: &StructureBundle) -> Result<Vec<ConditionReport>> {
    run(if side == Side::Left { &COMODULE_LEFT } else { &COMODULE_RIGHT }, b)
}

/// Module algebra, comodule coalgebra and the compatibilities making the
/// factor a bialgebra in the Yetter-Drinfeld category.
pub fn check_yd(side: Side, b: &StructureBundle) -> Result<Vec<ConditionReport>> {
    let mut v = check_module_algebra(side, b)?;
    v.extend(check_comodule_coalgebra(side, b)?);
    let ids: &[&str] = if side == Side::Left {
        &["F1", "F3", "D8", "D16"]
    } else {
        &["F2", "F4", "D10", "D17"]
    };
    v.extend(run(ids, b)?);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Field;

    #[test]
    fn trivial_structure_is_yd() {
        let e = catalog::trivial_entry([2, 2, 2], Field::Rational).unwrap();
        for side in [Side::Left, Side::Right] {
            for r in check_yd(side, &e.bundle).unwrap() {
                assert!(r.passed(), "{side:?} {}", r.id);
            }
        }
    }

    #[test]
    fn worked_example_actions_measure() {
        let e = catalog::kc2_kc4(Field::Rational).unwrap();
        for side in [Side::Left, Side::Right] {
            assert!(check_weak_action(side, &e.bundle).unwrap().iter().all(|r| r.passed()));
        }
        assert!(crate::conditions::check("D16", &e.bundle).unwrap().passed());
    }

    #[test]
    fn mutated_coaction_breaks_a_condition() {
        let e = catalog::trivial_entry([2, 2, 2], Field::Prime(3)).unwrap();
        let b = e.bundle.mutated("coact_l", &[1, 0], &[0], Field::Prime(3).one()).unwrap();
        let failed: Vec<_> = check_yd(Side::Left, &b).unwrap().into_iter().filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|r| r.witness.is_some()));
    }
}
