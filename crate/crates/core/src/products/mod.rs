//! Product constructions on `A ⊗ H`, `H ⊗ B` and `A ⊗ H ⊗ B`, and the
//! axiom oracles that judge them.

pub mod formula;
pub mod lifts;
pub mod registry;

use crate::bundle::StructureBundle;
use crate::elem::{Elem, SparseMap};
use crate::error::{Error, Result};
use crate::space::Role;
use crate::structures::{Algebra, Coalgebra};
use crate::tensor::{LinMap, Tensor};

pub use formula::{algebra_from, coalgebra_from, eval_formula, Carrier};
pub use registry::{construction, constructions, oracle, oracles, Construction, Oracle};

pub const LEFT_GENERAL: &str = "a a'_R x_R^G % x'_G";
pub const RIGHT_GENERAL: &str = "x_F % x'_T^F b_T b'";
pub const TWO_SIDED_GENERAL: &str = "a a'_R x_{R1}^G % x'_{T1G} % tau(x_{R2}, x'_{T2}) b_T b'";
pub const SMASH_PRODUCT: &str = "a (x_1 |> a') % x_2 x'_1 % (b <| x'_2) b'";
pub const SMASH_COPRODUCT: &str = "a_1 % a_{2-1} x_1 % b_{1[0]} % a_{20} % x_2 b_{1[1]} % b_2";

pub const AH: [Role; 2] = [Role::A, Role::H];
pub const HB: [Role; 2] = [Role::H, Role::B];
pub const AHB: [Role; 3] = [Role::A, Role::H, Role::B];

/// The output of a construction: a carrier with whatever structure maps
/// the construction defines.
#[derive(Clone, Debug)]
pub struct BuiltStructure {
    pub name: String,
    pub carrier: Carrier,
    pub algebra: Option<Algebra>,
    pub coalgebra: Option<Coalgebra>,
    pub antipode: Option<LinMap>,
    pub provenance: Vec<String>,
}

impl BuiltStructure {
    pub fn new(name: &str, carrier: Carrier) -> BuiltStructure {
        BuiltStructure {
            name: name.to_string(),
            carrier,
            algebra: None,
            coalgebra: None,
            antipode: None,
            provenance: vec![],
        }
    }

    pub fn algebra(&self) -> Result<&Algebra> {
        self.algebra.as_ref().ok_or_else(|| Error::MissingRoles(vec!["mult".into(), "unit".into()]))
    }

    pub fn coalgebra(&self) -> Result<&Coalgebra> {
        self.coalgebra
            .as_ref()
            .ok_or_else(|| Error::MissingRoles(vec!["comult".into(), "counit".into()]))
    }

    pub fn antipode(&self) -> Result<&LinMap> {
        self.antipode.as_ref().ok_or_else(|| Error::MissingRoles(vec!["antipode".into()]))
    }

    /// Named structure maps in a fixed order.
    pub fn maps(&self) -> Vec<(&'static str, &LinMap)> {
        let mut out = vec![];
        if let Some(a) = &self.algebra {
            out.push(("mult", &a.mult));
            out.push(("unit", &a.unit));
        }
        if let Some(c) = &self.coalgebra {
            out.push(("comult", &c.comult));
            out.push(("counit", &c.counit));
        }
        if let Some(s) = &self.antipode {
            out.push(("antipode", s));
        }
        out
    }
}

pub fn left_brzezinski(bundle: &StructureBundle) -> Result<Algebra> {
    let c = Carrier::new(bundle, &AH)?;
    algebra_from(bundle, &c, LEFT_GENERAL, "1_A % 1_H")
}

pub fn right_brzezinski(bundle: &StructureBundle) -> Result<Algebra> {
    let c = Carrier::new(bundle, &HB)?;
    algebra_from(bundle, &c, RIGHT_GENERAL, "1_H % 1_B")
}

pub fn two_sided_crossed(bundle: &StructureBundle) -> Result<Algebra> {
    let c = Carrier::new(bundle, &AHB)?;
    algebra_from(bundle, &c, TWO_SIDED_GENERAL, "1_A % 1_H % 1_B")
}

pub fn smash_product2(bundle: &StructureBundle) -> Result<Algebra> {
    let c = Carrier::new(bundle, &AHB)?;
    algebra_from(bundle, &c, SMASH_PRODUCT, "1_A % 1_H % 1_B")
}

pub fn smash_coproduct2(bundle: &StructureBundle) -> Result<Coalgebra> {
    let c = Carrier::new(bundle, &AHB)?;
    coalgebra_from(bundle, &c, SMASH_COPRODUCT, "eps(a) eps(x) eps(b)")
}

pub fn tensor_coalgebra(bundle: &StructureBundle, roles: &[Role]) -> Result<Coalgebra> {
    let c = Carrier::new(bundle, roles)?;
    let (d, e) = formula::tensor_coalgebra_formulas(roles);
    coalgebra_from(bundle, &c, &d, &e)
}

/// `S̄(a ⊗ x ⊗ b) = (1 ⊗ 1 ⊗ S_B b)(1 ⊗ S_H x ⊗ 1)(S_A a ⊗ 1 ⊗ 1)`,
/// multiplied left to right inside `alg`.
pub fn sbar(bundle: &StructureBundle, carrier: &Carrier, alg: &Algebra) -> Result<LinMap> {
    bundle.require(&["S_A", "S_H", "S_B"])?;
    let field = bundle.field;
    let anti: Vec<SparseMap> = ["S_A", "S_H", "S_B"]
        .iter()
        .map(|n| bundle.get(n).map(SparseMap::new))
        .collect::<Result<_>>()?;
    let mult = SparseMap::new(&alg.mult);
    let v = carrier.space.clone();
    // S of one factor, placed in slot `k` with ones elsewhere.
    let placed = |k: usize, i: usize| -> Result<Elem> {
        let mut e = Elem::zero(field, vec![v.clone()]);
        let img = Elem::basis(field, vec![carrier.factors[k].clone()], vec![i]).apply(&anti[k], 0)?;
        for (idx, c) in &img.terms {
            let mut t = Elem::basis(field, vec![v.clone()], vec![carrier.inject(k, idx[0])?]);
            t.terms.insert(vec![carrier.inject(k, idx[0])?], c.clone());
            e = e.plus(&t);
        }
        Ok(e)
    };
    let n = carrier.factors.len();
    let mut cols = Vec::with_capacity(carrier.dim());
    for flat in 0..carrier.dim() {
        let idx = carrier.split(flat);
        let mut acc = placed(n - 1, idx[n - 1])?;
        for k in (0..n - 1).rev() {
            acc = acc.tensor(&placed(k, idx[k])?).apply(&mult, 0)?;
        }
        cols.push(acc.terms.into_iter().collect::<Vec<_>>());
    }
    Ok(Tensor::from_columns(vec![v.clone()], vec![v], field, |i| cols[i[0]].clone()))
}

#[cfg(test)]
mod tests;
