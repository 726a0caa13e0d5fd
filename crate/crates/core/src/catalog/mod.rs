//! Built-in instances: the cyclic-group example, trivial reductions and
//! seeded random bundles.

pub mod random;

use serde::Serialize;

use crate::bundle::StructureBundle;
use crate::conditions::{self, gates};
use crate::error::{Error, Result};
use crate::products::eval_formula;
use crate::products::lifts::{self, F_FROM_TAU};
use crate::report::Verdict;
use crate::scalar::Field;
use crate::space::Role;
use crate::structures::{cyclic_group, Hopf};
use crate::tensor::Tensor;

pub use random::{random_bundle, RandomSpec};

/// A claimed outcome for a gate or condition on a catalog bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub target: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_input: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_lhs: Option<String>,
    /// Where the claim comes from: `source` for the original text, `derived`
    /// for values worked out by hand.
    pub origin: &'static str,
}

impl Expectation {
    fn new(target: &str, verdict: Verdict, origin: &'static str) -> Expectation {
        Expectation {
            target: target.to_string(),
            verdict,
            witness_input: None,
            witness_lhs: None,
            origin,
        }
    }

    fn witness(mut self, input: &[&str], lhs: &str) -> Expectation {
        self.witness_input = Some(input.iter().map(|s| s.to_string()).collect());
        self.witness_lhs = Some(lhs.to_string());
        self
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub bundle: StructureBundle,
    pub expected: Vec<Expectation>,
}

/// Generator formulas for the trivial data: actions through the counit,
/// coactions through the unit, cocycles and twists trivial.
pub const TRIVIAL_MAPS: [(&str, &str, &[&str]); 12] = [
    ("act_l", "eps(x) a", &["x", "a"]),
    ("act_r", "b eps(x)", &["b", "x"]),
    ("lu_tr", "x eps(a)", &["x", "a"]),
    ("ru_tl", "eps(b) x", &["b", "x"]),
    ("coact_l", "1_H % a", &["a"]),
    ("coact_r", "b % 1_H", &["b"]),
    ("sigma", lifts::SIGMA_TRIVIAL, &["x", "x'"]),
    ("tau", lifts::TAU_TRIVIAL, &["x", "x'"]),
    ("G", lifts::G_TRIVIAL, &["x", "x'"]),
    ("R", lifts::R_TRIVIAL, &["x", "a"]),
    ("T", lifts::T_TRIVIAL, &["b", "x"]),
    ("F", lifts::F_TRIVIAL, &["x", "x'"]),
];

/// A bundle over three Hopf algebras with every other map trivial.
pub fn trivial_bundle(a: &Hopf, h: &Hopf, b: &Hopf) -> Result<StructureBundle> {
    let field = a.bialgebra.algebra.field();
    let mut out = StructureBundle::new(field);
    for (role, hopf) in [(Role::A, a), (Role::H, h), (Role::B, b)] {
        out.set_space(role, hopf.space().renamed(role.name()));
        let renamed = rename_hopf(hopf, role.name())?;
        out.set_hopf(role, &renamed)?;
    }
    for (name, formula, order) in TRIVIAL_MAPS {
        let m = eval_formula(&out, formula, order)?;
        out.set_map(name, m)?;
    }
    Ok(out)
}

/// The same Hopf algebra on a space with another name.
pub fn rename_hopf(h: &Hopf, name: &str) -> Result<Hopf> {
    use crate::structures::{Algebra, Bialgebra, Coalgebra};
    let s = h.space().renamed(name);
    let re = |t: &Tensor| -> Result<Tensor> {
        t.relabel(
            t.domain().iter().map(|_| s.clone()).collect(),
            t.codomain().iter().map(|_| s.clone()).collect(),
        )
    };
    let alg = &h.bialgebra.algebra;
    let coalg = &h.bialgebra.coalgebra;
    Hopf::new(
        Bialgebra::new(
            Algebra::new(s.clone(), re(&alg.mult)?, re(&alg.unit)?)?,
            Coalgebra::new(s.clone(), re(&coalg.comult)?, re(&coalg.counit)?)?,
        )?,
        re(&h.antipode)?,
    )
}

/// Sets a map `H^k`-indexed by a table of basis labels.
fn set_table(b: &mut StructureBundle, name: &str, rows: &[(&[&str], &str)]) -> Result<()> {
    let mut m = b.get(name)?.clone();
    let dom: Vec<_> = m.domain().to_vec();
    let cod = m.codomain().to_vec();
    for (inputs, out) in rows {
        let idx: Vec<usize> = inputs
            .iter()
            .zip(&dom)
            .map(|(l, s)| s.index_of(l).ok_or_else(|| Error::Space(format!("no label `{l}` in {}", s.name))))
            .collect::<Result<_>>()?;
        for o in 0..cod[0].dim() {
            m.set(&[o], &idx, b.field.zero());
        }
        let o = cod[0]
            .index_of(out)
            .ok_or_else(|| Error::Space(format!("no label `{out}` in {}", cod[0].name)))?;
        m.set(&[o], &idx, b.field.one());
    }
    b.set_map(name, m)
}

/// `H = KC2`, `A = B = KC4`, with the action, cocycle tables of the worked
/// example and trivial coactions. `G`, `R`, `T` are the crossed-product
/// specializations and `F` is built from `tau`.
pub fn kc2_kc4(field: Field) -> Result<CatalogEntry> {
    let c4 = cyclic_group("C4", "x", 4, field)?;
    let c2 = cyclic_group("C2", "a", 2, field)?;
    let mut b = trivial_bundle(&c4, &c2, &c4)?;
    set_table(
        &mut b,
        "act_l",
        &[(&["a", "1"], "1"), (&["a", "x"], "x^3"), (&["a", "x^2"], "x^2"), (&["a", "x^3"], "x")],
    )?;
    set_table(
        &mut b,
        "act_r",
        &[(&["1", "a"], "1"), (&["x", "a"], "x^3"), (&["x^2", "a"], "x^2"), (&["x^3", "a"], "x")],
    )?;
    let cocycle = [
        (&["1", "1"][..], "1"),
        (&["1", "a"][..], "1"),
        (&["a", "1"][..], "1"),
        (&["a", "a"][..], "x"),
    ];
    set_table(&mut b, "sigma", &cocycle)?;
    set_table(&mut b, "tau", &cocycle)?;
    let mut b = lifts::two_sided_specialize(&b, "crossed")?;
    b.set_map("F", eval_formula(&b, F_FROM_TAU, &["x", "x'"])?)?;
    use Verdict::*;
    let expected = vec![
        Expectation::new("thm2.3", Pass, "source"),
        Expectation::new("thm_bialg_2sec", Pass, "source"),
        Expectation::new("cor_P", Pass, "source"),
        Expectation::new("I1", Fail, "source").witness(&["a"], "x % 1 % x"),
        Expectation::new("prop_antipode", Fail, "source").witness(&["a"], "x % 1 % x"),
        Expectation::new("D16", Pass, "derived"),
        Expectation::new("D21", Pass, "derived"),
        Expectation::new("BT4", Pass, "derived"),
    ];
    Ok(CatalogEntry {
        name: "kc2_kc4".into(),
        description: "H = KC2, A = B = KC4 with inverting actions, sigma(a,a) = tau(a,a) = x, trivial coactions"
            .into(),
        bundle: b,
        expected,
    })
}

/// Smash data over F2: `A` the dual numbers, `H = KC2 = {1, g}`, `B = KC4`
/// with `g` inverting `B` from the right. Coactions are trivial unless
/// `graded`, in which case `A` gets `t -> g % t`; that keeps `A` a comodule
/// coalgebra and breaks only (D21).
pub fn majid_dual(graded: bool) -> Result<CatalogEntry> {
    let field = Field::Prime(2);
    let a = random::dual_numbers("A", field)?;
    let h = cyclic_group("C2", "g", 2, field)?;
    let c4 = cyclic_group("C4", "x", 4, field)?;
    let mut b = trivial_bundle(&a, &h, &c4)?;
    set_table(
        &mut b,
        "act_r",
        &[(&["1", "g"], "1"), (&["x", "g"], "x^3"), (&["x^2", "g"], "x^2"), (&["x^3", "g"], "x")],
    )?;
    let mut b = lifts::two_sided_specialize(&b, "crossed")?;
    if graded {
        let mut m = b.get("coact_l")?.clone();
        m.set(&[0, 1], &[1], field.zero());
        m.set(&[1, 1], &[1], field.one());
        b.set_map("coact_l", m)?;
    }
    use Verdict::*;
    let expected = if graded {
        vec![
            Expectation::new("cor_F", Fail, "derived"),
            Expectation::new("D21", Fail, "derived").witness(&["t", "x"], "t % x^3"),
        ]
    } else {
        vec![Expectation::new("cor_F", Pass, "derived"), Expectation::new("D21", Pass, "derived")]
    };
    let (name, coaction) = if graded {
        ("majid_dual_graded", "A coacted on by t -> g % t")
    } else {
        ("majid_dual", "trivial coactions")
    };
    Ok(CatalogEntry {
        name: name.into(),
        description: format!("A = F2[t]/t^2, H = KC2, B = KC4 with g inverting B, {coaction}"),
        bundle: b,
        expected,
    })
}

/// Trivial bundles over cyclic group algebras of the given orders.
pub fn trivial_entry(dims: [usize; 3], field: Field) -> Result<CatalogEntry> {
    let g = |name: &str, gen: &str, n: usize| cyclic_group(name, gen, n, field);
    let b = trivial_bundle(&g("A", "g", dims[0])?, &g("H", "h", dims[1])?, &g("B", "k", dims[2])?)?;
    let expected = gates::gates()
        .iter()
        .map(|gt| Expectation::new(gt.id, Verdict::Pass, "derived"))
        .collect();
    Ok(CatalogEntry {
        name: format!("trivial_{}_{}_{}", dims[0], dims[1], dims[2]),
        description: format!(
            "cyclic group algebras of orders {}, {}, {} with trivial actions, coactions, cocycles and twists",
            dims[0], dims[1], dims[2]
        ),
        bundle: b,
        expected,
    })
}

pub fn trivial_family(dims: &[[usize; 3]], field: Field) -> Result<Vec<CatalogEntry>> {
    dims.iter().map(|d| trivial_entry(*d, field)).collect()
}

pub const TRIVIAL_DIMS: [[usize; 3]; 4] = [[1, 1, 1], [2, 2, 2], [2, 2, 1], [1, 2, 3]];

pub fn names() -> Vec<String> {
    let mut v = vec!["kc2_kc4".to_string(), "majid_dual".to_string(), "majid_dual_graded".to_string()];
    v.extend(TRIVIAL_DIMS.iter().map(|d| format!("trivial_{}_{}_{}", d[0], d[1], d[2])));
    v
}

/// A catalog entry by name. The `majid_dual` entries are always over F2.
pub fn entry(name: &str, field: Field) -> Result<CatalogEntry> {
    match name {
        "kc2_kc4" => return kc2_kc4(field),
        "majid_dual" => return majid_dual(false),
        "majid_dual_graded" => return majid_dual(true),
        _ => {}
    }
    let dims: Vec<usize> = name
        .strip_prefix("trivial_")
        .map(|r| r.split('_').filter_map(|d| d.parse().ok()).collect())
        .unwrap_or_default();
    match dims.as_slice() {
        [a, h, b] if (1..=8).contains(a) && (1..=8).contains(h) && (1..=8).contains(b) => trivial_entry([*a, *h, *b], field),
        _ => Err(Error::UnknownConstruction(format!("catalog entry `{name}`"))),
    }
}

/// What running an expectation produced.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub expectation: Expectation,
    pub verdict: Verdict,
    pub witness_input: Option<Vec<String>>,
    pub witness_lhs: Option<String>,
    pub reproduced: bool,
}

pub fn run_expectation(b: &StructureBundle, e: &Expectation) -> Result<Outcome> {
    let (verdict, w) = if gates::is_gate(&e.target) {
        let r = conditions::gate(&e.target, b)?;
        let w = r.main.iter().find(|m| !m.passed()).and_then(|m| m.witness.clone());
        (r.verdict(), w)
    } else {
        let r = conditions::check(&e.target, b)?;
        (r.verdict, r.witness)
    };
    let witness_input = w.as_ref().map(|w| w.input.clone());
    let witness_lhs = w.as_ref().map(|w| w.lhs.clone());
    let reproduced = verdict == e.verdict
        && (e.witness_input.is_none() || e.witness_input == witness_input)
        && (e.witness_lhs.is_none() || e.witness_lhs == witness_lhs);
    Ok(Outcome {
        expectation: e.clone(),
        verdict,
        witness_input,
        witness_lhs,
        reproduced,
    })
}

pub fn run_expectations(entry: &CatalogEntry) -> Result<Vec<Outcome>> {
    entry.expected.iter().map(|e| run_expectation(&entry.bundle, e)).collect()
}
