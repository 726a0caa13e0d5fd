//! Runtime registries of constructions and oracles, selected by name.

use std::sync::OnceLock;

use crate::bundle::StructureBundle;
use crate::conditions;
use crate::error::{Error, Result};
use crate::report::ConditionReport;
use crate::space::Role;
use crate::structures::{check_antipode, check_compatibility};

use super::formula::{algebra_from, coalgebra_from, tensor_coalgebra_formulas, unit_formula, Carrier};
use super::lifts::LiftRecipe;
use super::{sbar, BuiltStructure};

/// A product construction on a structure bundle.
pub trait Construction: Send + Sync {
    fn name(&self) -> &str;
    fn describe(&self) -> &str;
    /// Conditions checked before building; a failure refuses the build.
    fn prerequisites(&self) -> &[&'static str];
    /// The theorem gate whose main conditions make the output lawful.
    fn gate(&self) -> Option<&'static str>;
    /// The bundle the construction reads, after its own specialization.
    fn prepare(&self, bundle: &StructureBundle) -> Result<StructureBundle>;
    /// Builds from a prepared bundle without checking anything.
    fn assemble(&self, prepared: &StructureBundle) -> Result<BuiltStructure>;

    /// Prepares, refuses on a failed prerequisite, then assembles.
    fn build(&self, bundle: &StructureBundle) -> Result<BuiltStructure> {
        let b = self.prepare(bundle)?;
        for id in self.prerequisites() {
            let r = conditions::check(id, &b)?;
            if !r.passed() {
                let detail = r.witness.map(|w| w.to_string()).unwrap_or_else(|| "violated".into());
                return Err(Error::Prerequisite {
                    id: id.to_string(),
                    detail,
                });
            }
        }
        self.assemble(&b)
    }

    fn build_unchecked(&self, bundle: &StructureBundle) -> Result<BuiltStructure> {
        self.assemble(&self.prepare(bundle)?)
    }
}

/// A brute-force judge of a built structure.
pub trait Oracle: Send + Sync {
    fn name(&self) -> &str;
    fn describe(&self) -> &str;
    fn run(&self, s: &BuiltStructure) -> Result<Vec<ConditionReport>>;
}

#[derive(Clone)]
struct FormulaConstruction {
    name: String,
    describe: String,
    roles: &'static [Role],
    lift: LiftRecipe,
    mult: Option<String>,
    comult: Option<(String, String)>,
    with_antipode: bool,
    prerequisites: &'static [&'static str],
    gate: Option<&'static str>,
}

impl FormulaConstruction {
    fn algebra(name: &str, describe: &str, roles: &'static [Role], mult: &str) -> FormulaConstruction {
        FormulaConstruction {
            name: name.to_string(),
            describe: describe.to_string(),
            roles,
            lift: LiftRecipe::default(),
            mult: Some(mult.to_string()),
            comult: None,
            with_antipode: false,
            prerequisites: &[],
            gate: None,
        }
    }

    fn lift(mut self, lift: LiftRecipe) -> Self {
        self.lift = lift;
        self
    }

    fn pre(mut self, p: &'static [&'static str]) -> Self {
        self.prerequisites = p;
        self
    }

    fn gate(mut self, g: &'static str) -> Self {
        self.gate = Some(g);
        self
    }

    fn comult(mut self, d: &str, e: &str) -> Self {
        self.comult = Some((d.to_string(), e.to_string()));
        self
    }

    fn tensor_coalgebra(self) -> Self {
        let (d, e) = tensor_coalgebra_formulas(self.roles);
        self.comult(&d, &e)
    }

    fn antipode(mut self) -> Self {
        self.with_antipode = true;
        self
    }
}

impl Construction for FormulaConstruction {
    fn name(&self) -> &str {
        &self.name
    }

    fn describe(&self) -> &str {
        &self.describe
    }

    fn prerequisites(&self) -> &[&'static str] {
        self.prerequisites
    }

    fn gate(&self) -> Option<&'static str> {
        self.gate
    }

    fn prepare(&self, bundle: &StructureBundle) -> Result<StructureBundle> {
        self.lift.apply(bundle)
    }

    fn assemble(&self, b: &StructureBundle) -> Result<BuiltStructure> {
        let carrier = Carrier::new(b, self.roles)?;
        let mut out = BuiltStructure::new(&self.name, carrier.clone());
        if let Some(m) = &self.mult {
            out.algebra = Some(algebra_from(b, &carrier, m, &unit_formula(self.roles))?);
            out.provenance.push(format!("mult: {m}"));
        }
        if let Some((d, e)) = &self.comult {
            out.coalgebra = Some(coalgebra_from(b, &carrier, d, e)?);
            out.provenance.push(format!("comult: {d}"));
            out.provenance.push(format!("counit: {e}"));
        }
        if self.with_antipode && ["S_A", "S_H", "S_B"].iter().all(|n| b.has(n)) {
            let alg = out.algebra()?.clone();
            out.antipode = Some(sbar(b, &carrier, &alg)?);
            out.provenance.push("antipode: (1 % 1 % SB(b))(1 % S(x) % 1)(SA(a) % 1 % 1)".into());
        }
        out.provenance.insert(0, format!("construction: {}", self.name));
        Ok(out)
    }
}

fn left_gate(kind: &str) -> &'static str {
    match kind {
        "twisted_crossed" => "ex1.2",
        "crossed" => "ex1.3",
        "twisted" => "ex1.4",
        "unified" => "ex1.5",
        _ => "ex1.6",
    }
}

fn right_gate(kind: &str) -> &'static str {
    match kind {
        "twisted_crossed" => "ex2.2.1",
        "unified" => "ex2.2.2",
        "f_twist" => "ex2.2.3",
        "twisted_tensor" => "ex2.2.4",
        "crossed" => "ex2.2.5",
        _ => "prop2.1",
    }
}

fn two_sided_gate(kind: &str) -> &'static str {
    match kind {
        "twisted_crossed" => "ex2.5.1",
        "twisted" => "ex2.5.2",
        "twisted_tensor" => "ex2.5.3",
        _ => "ex2.5.4",
    }
}

/// `two_sided_crossed` is the general product, so the crossed
/// specialization gets a suffix.
pub fn two_sided_lifted_name(kind: &str) -> String {
    if kind == "crossed" {
        "two_sided_crossed_lifted".into()
    } else {
        format!("two_sided_{kind}")
    }
}

fn build_registry() -> Result<Vec<Box<dyn Construction>>> {
    use super::*;
    let mut v: Vec<FormulaConstruction> = vec![
        FormulaConstruction::algebra("left_brzezinski", "general left crossed product on A % H", &AH, LEFT_GENERAL)
            .pre(&["LB1"])
            .gate("prop1.1"),
        FormulaConstruction::algebra("right_brzezinski", "general right crossed product on H % B", &HB, RIGHT_GENERAL)
            .pre(&["RB1"])
            .gate("prop2.1"),
        FormulaConstruction::algebra("two_sided_crossed", "two-sided crossed product on A % H % B", &AHB, TWO_SIDED_GENERAL)
            .pre(&["LB1", "LB2", "LB3", "RB1", "RB2", "RTC2"])
            .gate("thm2.3"),
        FormulaConstruction::algebra(
            "two_sided_bialgebra",
            "two-sided crossed product with the tensor product coalgebra and the candidate antipode",
            &AHB,
            TWO_SIDED_GENERAL,
        )
        .pre(&["LB1", "LB2", "LB3", "RB1", "RB2", "RTC2"])
        .gate("thm_bialg_2sec")
        .tensor_coalgebra()
        .antipode(),
        FormulaConstruction::algebra("smash_product2", "two-sided smash product", &AHB, SMASH_PRODUCT),
        FormulaConstruction::algebra(
            "double_crossed_biproduct",
            "crossed product with the two-sided smash coproduct",
            &AHB,
            lifts::two_sided_direct("crossed")?,
        )
        .comult(SMASH_COPRODUCT, "eps(a) eps(x) eps(b)")
        .gate("thm_D")
        .antipode(),
        FormulaConstruction::algebra("double_biproduct", "smash product with the two-sided smash coproduct", &AHB, SMASH_PRODUCT)
            .comult(SMASH_COPRODUCT, "eps(a) eps(x) eps(b)")
            .gate("prop_E")
            .antipode(),
    ];
    let coal = |name: &str, describe: &str, d: &str, e: &str| {
        let mut c = FormulaConstruction::algebra(name, describe, &AHB, "");
        c.mult = None;
        c.comult(d, e)
    };
    let (td, te) = tensor_coalgebra_formulas(&AHB);
    v.push(coal("smash_coproduct2", "two-sided smash coproduct", SMASH_COPRODUCT, "eps(a) eps(x) eps(b)"));
    v.push(coal("tensor_coalgebra3", "tensor product coalgebra on A % H % B", &td, &te));
    for k in lifts::LEFT_KINDS {
        v.push(
            FormulaConstruction::algebra(&format!("left_{k}"), &format!("left {} product via the general one", k.replace('_', " ")), &AH, LEFT_GENERAL)
                .lift(lifts::left_recipe(k)?)
                .pre(&["LB1"])
                .gate(left_gate(k)),
        );
        v.push(FormulaConstruction::algebra(
            &format!("left_{k}_direct"),
            &format!("left {} product from its own formula", k.replace('_', " ")),
            &AH,
            lifts::left_direct(k)?,
        ));
    }
    for k in lifts::RIGHT_KINDS {
        v.push(
            FormulaConstruction::algebra(&format!("right_{k}"), &format!("right {} product via the general one", k.replace('_', " ")), &HB, RIGHT_GENERAL)
                .lift(lifts::right_recipe(k)?)
                .pre(&["RB1"])
                .gate(right_gate(k)),
        );
        v.push(FormulaConstruction::algebra(
            &format!("right_{k}_direct"),
            &format!("right {} product from its own formula", k.replace('_', " ")),
            &HB,
            lifts::right_direct(k)?,
        ));
    }
    for k in lifts::TWO_SIDED_KINDS {
        v.push(
            FormulaConstruction::algebra(
                &two_sided_lifted_name(k),
                &format!("two-sided {} product via the general one", k.replace('_', " ")),
                &AHB,
                TWO_SIDED_GENERAL,
            )
            .lift(lifts::two_sided_recipe(k)?)
            .gate(two_sided_gate(k)),
        );
        v.push(
            FormulaConstruction::algebra(
                &format!("two_sided_{k}_bialgebra"),
                &format!("two-sided {} product with the tensor product coalgebra", k.replace('_', " ")),
                &AHB,
                TWO_SIDED_GENERAL,
            )
            .lift(lifts::two_sided_recipe(k)?)
            .tensor_coalgebra()
            .antipode(),
        );
        v.push(FormulaConstruction::algebra(
            &format!("two_sided_{k}_direct"),
            &format!("two-sided {} product from its own formula", k.replace('_', " ")),
            &AHB,
            lifts::two_sided_direct(k)?,
        ));
    }
    Ok(v.into_iter().map(|c| Box::new(c) as Box<dyn Construction>).collect())
}

pub fn constructions() -> &'static [Box<dyn Construction>] {
    static REG: OnceLock<Vec<Box<dyn Construction>>> = OnceLock::new();
    REG.get_or_init(|| build_registry().expect("shipped constructions are well formed"))
}

pub fn construction(name: &str) -> Result<&'static dyn Construction> {
    constructions()
        .iter()
        .find(|c| c.name() == name)
        .map(|c| c.as_ref())
        .ok_or_else(|| Error::UnknownConstruction(name.to_string()))
}

type OracleFn = fn(&BuiltStructure) -> Result<Vec<ConditionReport>>;

struct FnOracle {
    name: &'static str,
    describe: &'static str,
    run: OracleFn,
}

impl Oracle for FnOracle {
    fn name(&self) -> &str {
        self.name
    }

    fn describe(&self) -> &str {
        self.describe
    }

    fn run(&self, s: &BuiltStructure) -> Result<Vec<ConditionReport>> {
        (self.run)(s)
    }
}

static ORACLES: [FnOracle; 7] = [
    FnOracle {
        name: "assoc",
        describe: "associativity of the multiplication",
        run: |s| Ok(vec![s.algebra()?.check_assoc()?]),
    },
    FnOracle {
        name: "unit",
        describe: "two-sided unit law",
        run: |s| Ok(vec![s.algebra()?.check_unit()?]),
    },
    FnOracle {
        name: "algebra",
        describe: "associativity and unit",
        run: |s| s.algebra()?.check(),
    },
    FnOracle {
        name: "coassoc",
        describe: "coassociativity of the comultiplication",
        run: |s| Ok(vec![s.coalgebra()?.check_coassoc()?]),
    },
    FnOracle {
        name: "counit",
        describe: "two-sided counit law",
        run: |s| Ok(vec![s.coalgebra()?.check_counit()?]),
    },
    FnOracle {
        name: "bialg",
        describe: "multiplicativity of the comultiplication and counit",
        run: |s| Ok(vec![check_compatibility(s.algebra()?, s.coalgebra()?)?]),
    },
    FnOracle {
        name: "antipode",
        describe: "both convolution identities for the antipode",
        run: |s| Ok(vec![check_antipode(s.algebra()?, s.coalgebra()?, s.antipode()?)?]),
    },
];

pub fn oracles() -> Vec<&'static dyn Oracle> {
    ORACLES.iter().map(|o| o as &dyn Oracle).collect()
}

pub fn oracle(name: &str) -> Result<&'static dyn Oracle> {
    oracles()
        .into_iter()
        .find(|o| o.name() == name)
        .ok_or_else(|| Error::UnknownConstruction(format!("oracle `{name}`")))
}
