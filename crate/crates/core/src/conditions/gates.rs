//! Theorem gates: prerequisites, the main condition set, and the
//! brute-force oracle the main set is claimed to be equivalent to.

use crate::bundle::StructureBundle;
use crate::error::Result;
use crate::products::{construction, oracle};
use crate::report::{conjunction, ConditionReport, GateReport};

use super::{check, check_line};

/// Structural hypotheses with no registered id, written as equation lines.
pub const WEAK_LEFT: [&str; 3] = [
    "weak_l_mult: x |> (a a') == (x_1 |> a) (x_2 |> a')",
    "weak_l_unit: x |> 1_A == eps(x) 1_A",
    "weak_l_one: 1_H |> a == a",
];
pub const WEAK_RIGHT: [&str; 3] = [
    "weak_r_mult: (b b') <| x == (b <| x_1) (b' <| x_2)",
    "weak_r_unit: 1_B <| x == eps(x) 1_B",
    "weak_r_one: b <| 1_H == b",
];
pub const MODULE_LEFT: &str = "module_l: x |> (x' |> a) == x x' |> a";
pub const MODULE_RIGHT: &str = "module_r: (b <| x) <| x' == b <| x x'";
pub const COMODULE_LEFT: [&str; 4] = [
    "comod_l_counit: eps(a_{-1}) a_0 == a",
    "comod_l_coassoc: a_{-11} % a_{-12} % a_0 == a_{-1} % a_{0-1} % a_{00}",
    "comod_l_coalg: a_{-1} % a_{01} % a_{02} == a_{1-1} a_{2-1} % a_{10} % a_{20}",
    "comod_l_eps: a_{-1} eps(a_0) == eps(a) 1_H",
];
pub const COMODULE_RIGHT: [&str; 4] = [
    "comod_r_counit: b_{[0]} eps(b_{[1]}) == b",
    "comod_r_coassoc: b_{[0][0]} % b_{[0][1]} % b_{[1]} == b_{[0]} % b_{[1]1} % b_{[1]2}",
    "comod_r_coalg: b_{[0]1} % b_{[0]2} % b_{[1]} == b_{1[0]} % b_{2[0]} % b_{1[1]} b_{2[1]}",
    "comod_r_eps: eps(b_{[0]}) b_{[1]} == eps(b) 1_H",
];
pub const EPS_TAU: &str = "eps_tau: eps(tau(x, x')) == eps(x) eps(x')";
pub const TAU_TRIVIAL: &str = "tau_trivial: tau(x, x') == eps(x) eps(x') 1_B";
pub const SIGMA_TRIVIAL: &str = "sigma_trivial: sigma(x, x') == eps(x) eps(x') 1_A";
pub const ACT_L_TRIVIAL: &str = "act_l_trivial: x |> a == eps(x) a";
pub const ACT_R_TRIVIAL: &str = "act_r_trivial: b <| x == eps(x) b";
pub const COACT_L_TRIVIAL: &str = "coact_l_trivial: a_{-1} % a_0 == 1_H % a";
pub const COACT_R_TRIVIAL: &str = "coact_r_trivial: b_{[0]} % b_{[1]} == b % 1_H";
/// Normalization and associativity of the crossed product on each side;
/// the smash-coproduct results use them without stating them.
pub const LEFT_ALGEBRA: [&str; 3] = ["LTC3", "LC2", "LC3"];
pub const RIGHT_ALGEBRA: [&str; 3] = ["RTC2", "RC2", "RC3"];

#[derive(Clone, Debug)]
pub struct Gate {
    pub id: &'static str,
    pub title: &'static str,
    /// Registered ids or `name: lhs == rhs` lines.
    pub prerequisites: Vec<&'static str>,
    pub main: Vec<&'static str>,
    /// Construction and the oracles run on it.
    pub oracle: Option<(&'static str, &'static [&'static str])>,
}

fn ids(prefix: &str, lo: usize, hi: usize) -> Vec<&'static str> {
    (lo..=hi)
        .map(|k| &*Box::leak(format!("{prefix}{k}").into_boxed_str()))
        .collect()
}

fn cat<T: Clone>(parts: &[&[T]]) -> Vec<T> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

const ALG: &[&str] = &["assoc", "unit"];
const BIALG: &[&str] = &["bialg"];
const TWO_SIDED_PRE: [&str; 6] = ["LB1", "LB2", "LB3", "RB1", "RB2", "RTC2"];

fn gate_table() -> Vec<Gate> {
    let g = |id, title, prerequisites, main, oracle| Gate {
        id,
        title,
        prerequisites,
        main,
        oracle,
    };
    let yd_pre = || cat(&[&WEAK_LEFT, &WEAK_RIGHT, &COMODULE_LEFT, &COMODULE_RIGHT, &["J1", EPS_TAU], &LEFT_ALGEBRA, &RIGHT_ALGEBRA]);
    vec![
        g("prop1.1", "left crossed product", vec!["LB1"], ids("LB", 2, 5), Some(("left_brzezinski", ALG))),
        g(
            "prop1.1.alt",
            "left crossed product, normalization of G assumed instead of R",
            vec!["LB3"],
            vec!["LB1", "LB2", "LB4", "LB5"],
            Some(("left_brzezinski", ALG)),
        ),
        g(
            "ex1.2",
            "left twisted crossed product",
            vec!["LB1"],
            vec!["LB2", "LTC3", "LTC4", "LTC5"],
            Some(("left_twisted_crossed", ALG)),
        ),
        g(
            "ex1.3",
            "left crossed product with a weak action",
            WEAK_LEFT.to_vec(),
            vec!["LTC3", "LC2", "LC3"],
            Some(("left_crossed", ALG)),
        ),
        g("ex1.4", "left twisted product", vec![], vec!["LTC3", "L2", "L3"], Some(("left_twisted", ALG))),
        g("ex1.5", "left unified product", vec!["LU1"], ids("LU", 2, 5), Some(("left_unified", ALG))),
        g(
            "ex1.6",
            "left twisted tensor product",
            vec![],
            vec!["LB1", "LB2", "LT3"],
            Some(("left_twisted_tensor", ALG)),
        ),
        g("prop2.1", "right crossed product", vec!["RB1"], ids("RB", 2, 5), Some(("right_brzezinski", ALG))),
        g(
            "ex2.2.1",
            "right twisted crossed product",
            vec!["RB1"],
            vec!["RB2", "RTC2", "RTC3", "RTC4"],
            Some(("right_twisted_crossed", ALG)),
        ),
        g("ex2.2.2", "right unified product", vec!["RU1"], ids("RU", 2, 5), Some(("right_unified", ALG))),
        g("ex2.2.3", "right F-twisted product", vec![], vec!["RB3", "RF2", "RF3"], Some(("right_f_twist", ALG))),
        g(
            "ex2.2.4",
            "right twisted tensor product",
            vec![],
            vec!["RB1", "RB2", "RT3"],
            Some(("right_twisted_tensor", ALG)),
        ),
        g(
            "ex2.2.5",
            "right crossed product with a weak action",
            WEAK_RIGHT.to_vec(),
            vec!["RTC2", "RC2", "RC3"],
            Some(("right_crossed", ALG)),
        ),
        g(
            "thm2.3",
            "two-sided crossed product",
            TWO_SIDED_PRE.to_vec(),
            ids("BT", 1, 4),
            Some(("two_sided_crossed", ALG)),
        ),
        g(
            "ex2.5.1",
            "two-sided twisted crossed product",
            vec!["LB1", "LB2", "RB1", "RB2", "LTC3", "RTC2"],
            cat(&[&["BT4"], &ids("TC", 1, 3)]),
            Some(("two_sided_twisted_crossed", ALG)),
        ),
        g(
            "ex2.5.2",
            "two-sided twisted product (sufficiency)",
            vec!["LTC3", "L2", "L3", "RTC2", "R2", "R3"],
            vec![],
            Some(("two_sided_twisted", ALG)),
        ),
        g(
            "ex2.5.3",
            "two-sided twisted tensor product",
            vec!["LB1", "LB2", "LT3", "RB1", "RB2", "RT3"],
            vec!["BT4"],
            Some(("two_sided_twisted_tensor", ALG)),
        ),
        g(
            "ex2.5.4",
            "two-sided crossed product with weak actions (sufficiency)",
            cat(&[&WEAK_LEFT, &WEAK_RIGHT, &["LTC3", "LC2", "LC3", "RTC2", "RC2", "RC3"]]),
            vec![],
            Some(("two_sided_crossed_direct", ALG)),
        ),
        g(
            "thm_bialg_2sec",
            "two-sided crossed product with the tensor product coalgebra",
            cat(&[&TWO_SIDED_PRE, &[EPS_TAU]]),
            ids("G", 1, 5),
            Some(("two_sided_bialgebra", BIALG)),
        ),
        g(
            "cor_J",
            "two-sided product with G built from a cocycle, tensor product coalgebra",
            vec!["LB1", "LB2", "LTC3", "RB1", "RB2", "RTC2", EPS_TAU],
            cat(&[&ids("G", 2, 4), &ids("J", 1, 6)]),
            Some(("two_sided_twisted_crossed_bialgebra", BIALG)),
        ),
        g(
            "cor_P",
            "two-sided crossed product with weak actions, tensor product coalgebra",
            cat(&[&WEAK_LEFT, &WEAK_RIGHT, &["LTC3", "RTC2", "J1", EPS_TAU]]),
            cat(&[&ids("J", 2, 6), &["D4", "F3", "F4", "P1"]]),
            Some(("two_sided_crossed_bialgebra", BIALG)),
        ),
        g(
            "prop_antipode",
            "candidate antipode of the two-sided crossed product bialgebra",
            cat(&[&TWO_SIDED_PRE, &ids("BT", 1, 4), &ids("G", 1, 5)]),
            vec!["I1", "I2"],
            Some(("two_sided_bialgebra", &["antipode"])),
        ),
        g(
            "lem_C",
            "crossed product with the two-sided smash coproduct, long form",
            yd_pre(),
            ids("C", 1, 13),
            Some(("double_crossed_biproduct", BIALG)),
        ),
        g(
            "thm_D",
            "crossed product with the two-sided smash coproduct",
            yd_pre(),
            cat(&[&ids("C", 1, 6), &ids("D", 7, 22)]),
            Some(("double_crossed_biproduct", BIALG)),
        ),
        g(
            "prop_E",
            "one-sided crossed product with the two-sided smash coproduct",
            cat(&[
                &WEAK_LEFT,
                &WEAK_RIGHT,
                &[MODULE_RIGHT],
                &COMODULE_LEFT,
                &COMODULE_RIGHT,
                &["J1", TAU_TRIVIAL],
                &LEFT_ALGEBRA,
            ]),
            cat(&[
                &ids("C", 1, 5),
                &["D7", "D8"],
                &ids("D", 10, 12),
                &ids("D", 15, 17),
                &["D20", "D21"],
                &ids("E", 1, 3),
            ]),
            Some(("double_crossed_biproduct", BIALG)),
        ),
        g(
            "cor_F",
            "smash product with the two-sided smash coproduct",
            cat(&[&WEAK_LEFT, &WEAK_RIGHT, &[MODULE_LEFT, MODULE_RIGHT], &COMODULE_LEFT, &COMODULE_RIGHT]),
            cat(&[&ids("C", 1, 4), &["D8", "D10", "D16", "D17", "D21"], &ids("F", 1, 4)]),
            Some(("double_biproduct", BIALG)),
        ),
        g(
            "cor_left",
            "left crossed product with the left smash coproduct (B trivial)",
            cat(&[
                &WEAK_LEFT,
                &COMODULE_LEFT,
                &["J1"],
                &LEFT_ALGEBRA,
                &[TAU_TRIVIAL, ACT_R_TRIVIAL, COACT_R_TRIVIAL],
            ]),
            cat(&[&ids("C", 1, 4), &["D5", "D7", "D8", "D11", "D12", "D15", "D16"]]),
            Some(("double_crossed_biproduct", BIALG)),
        ),
        g(
            "cor_right",
            "right crossed product with the right smash coproduct (A trivial)",
            cat(&[
                &WEAK_RIGHT,
                &COMODULE_RIGHT,
                &[EPS_TAU],
                &RIGHT_ALGEBRA,
                &[SIGMA_TRIVIAL, ACT_L_TRIVIAL, COACT_L_TRIVIAL],
            ]),
            cat(&[&ids("C", 1, 4), &["D6", "D9", "D10", "D13", "D14", "D17", "D18"]]),
            Some(("double_crossed_biproduct", BIALG)),
        ),
    ]
}

pub fn gates() -> &'static [Gate] {
    static G: std::sync::OnceLock<Vec<Gate>> = std::sync::OnceLock::new();
    G.get_or_init(gate_table)
}

/// Short names for the bialgebra gates.
pub const GATE_ALIASES: [(&str, &str); 3] = [("gate_G", "thm_bialg_2sec"), ("gate_J", "cor_J"), ("gate_P", "cor_P")];

pub fn find_gate(id: &str) -> Option<&'static Gate> {
    let id = GATE_ALIASES.iter().find(|(a, _)| *a == id).map(|(_, g)| *g).unwrap_or(id);
    gates().iter().find(|g| g.id == id)
}

pub fn is_gate(id: &str) -> bool {
    find_gate(id).is_some()
}

/// Checks a registered id or an inline `name: lhs == rhs` line.
pub fn check_item(item: &str, bundle: &StructureBundle) -> Result<ConditionReport> {
    if item.contains("==") {
        check_line(item, bundle)
    } else {
        check(item, bundle)
    }
}

/// Runs the construction's oracles on the bundle, prerequisites unchecked.
pub fn run_oracle(construction_name: &str, oracles: &[&str], bundle: &StructureBundle) -> Result<ConditionReport> {
    let c = construction(construction_name)?;
    let built = c.build_unchecked(bundle)?;
    let mut parts = vec![];
    for o in oracles {
        parts.extend(oracle(o)?.run(&built)?);
    }
    Ok(conjunction(&format!("oracle:{construction_name}"), &parts))
}

/// Evaluates a gate. The oracle is skipped when a prerequisite fails.
pub fn gate(id: &str, bundle: &StructureBundle) -> Result<GateReport> {
    let g = find_gate(id).ok_or_else(|| crate::Error::UnknownId(id.to_string()))?;
    gate_with(g, bundle)
}

pub fn gate_with(g: &Gate, bundle: &StructureBundle) -> Result<GateReport> {
    let pre: Vec<ConditionReport> = g
        .prerequisites
        .iter()
        .map(|p| check_item(p, bundle))
        .collect::<Result<_>>()?;
    let main: Vec<ConditionReport> = g.main.iter().map(|m| check_item(m, bundle)).collect::<Result<_>>()?;
    let oracle = match g.oracle {
        Some((c, os)) if pre.iter().all(ConditionReport::passed) => Some(run_oracle(c, os, bundle)?),
        Some(_) => Some(ConditionReport::skipped("oracle", "prerequisites fail")),
        None => None,
    };
    Ok(GateReport::new(g.id, pre, main, oracle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::registry;
    use crate::products::constructions;
    use crate::sweedler::Equation;

    #[test]
    fn every_gate_item_resolves() {
        for g in gates() {
            for item in g.prerequisites.iter().chain(&g.main) {
                if item.contains("==") {
                    Equation::parse_line(item, 1).unwrap_or_else(|e| panic!("{}: {item}: {e}", g.id));
                } else {
                    registry().equation(item).unwrap_or_else(|e| panic!("{}: {e}", g.id));
                }
            }
            if let Some((c, os)) = g.oracle {
                assert!(constructions().iter().any(|k| k.name() == c), "{}: {c}", g.id);
                for o in os {
                    oracle(o).unwrap();
                }
            }
        }
    }
}
