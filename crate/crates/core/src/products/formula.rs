//! Evaluation of product and lift formulas written in the equation language.

use crate::bundle::StructureBundle;
use crate::error::{Error, Result};
use crate::elem::Elem;
use crate::space::{Role, Space};
use crate::structures::{Algebra, Coalgebra};
use crate::sweedler::{build, evaluate, parser::parse_side};
use crate::tensor::LinMap;

/// Evaluates a formula and orders its domain by the variable names in
/// `order`, which must be exactly the formula's free variables.
pub fn eval_formula(bundle: &StructureBundle, text: &str, order: &[&str]) -> Result<LinMap> {
    let d = build(&parse_side(text)?)?;
    let names = d.input_names();
    let mut perm = Vec::with_capacity(order.len());
    for want in order {
        let k = names
            .iter()
            .position(|n| n == want)
            .ok_or_else(|| Error::Sweedler(format!("formula `{text}` does not use `{want}`")))?;
        perm.push(k);
    }
    if perm.len() != names.len() {
        return Err(Error::Sweedler(format!(
            "formula `{text}` uses {names:?}, expected {order:?}"
        )));
    }
    let m = evaluate(&d, bundle)?;
    let cod: Vec<usize> = (0..m.codomain().len()).collect();
    m.permute(&perm, &cod)
}

pub fn var_of(role: Role) -> &'static str {
    match role {
        Role::A => "a",
        Role::H => "x",
        Role::B => "b",
    }
}

/// A product space `F1 ⊗ ... ⊗ Fn` with its factor bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct Carrier {
    pub space: Space,
    pub roles: Vec<Role>,
    pub factors: Vec<Space>,
}

impl Carrier {
    pub fn new(bundle: &StructureBundle, roles: &[Role]) -> Result<Carrier> {
        let factors: Vec<Space> = roles.iter().map(|r| bundle.space_of(*r).cloned()).collect::<Result<_>>()?;
        let name: String = roles.iter().map(|r| r.name()).collect();
        Ok(Carrier {
            space: Space::product(name, &factors),
            roles: roles.to_vec(),
            factors,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Flat carrier index of a factor multi-index.
    pub fn index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.factors).fold(0, |acc, (i, s)| acc * s.dim() + i)
    }

    pub fn split(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, s) in self.factors.iter().enumerate().rev() {
            out[k] = flat % s.dim();
            flat /= s.dim();
        }
        out
    }

    /// Projection of a carrier index onto one factor.
    pub fn project(&self, flat: usize, factor: usize) -> usize {
        self.split(flat)[factor]
    }

    /// Injection of a factor basis element, other factors at their ones.
    pub fn inject(&self, factor: usize, i: usize) -> Result<usize> {
        let mut idx = vec![];
        for (k, s) in self.factors.iter().enumerate() {
            idx.push(if k == factor { i } else { s.one_index()? });
        }
        Ok(self.index(&idx))
    }

    /// Re-reads an element over the factor spaces as one over the carrier.
    pub fn flatten(&self, e: &Elem) -> Result<Elem> {
        crate::tensor::check_spaces(&self.factors, &e.spaces)?;
        let mut out = Elem::zero(e.field, vec![self.space.clone()]);
        for (k, c) in &e.terms {
            out = out.plus(&{
                let mut t = Elem::basis(e.field, vec![self.space.clone()], vec![self.index(k)]);
                t.terms.insert(vec![self.index(k)], c.clone());
                t
            });
        }
        Ok(out)
    }

    /// Reinterprets a map whose domain is `n` copies of the factors (in
    /// factor order, copy by copy) and whose codomain is `m` copies.
    pub fn reshape(&self, map: &LinMap, n: usize, m: usize) -> Result<LinMap> {
        map.reshape(vec![self.space.clone(); n], vec![self.space.clone(); m])
    }

    /// Variable names `a, x, b` for copy 0, `a', x', b'` for copy 1, ...
    pub fn vars(&self, copies: usize) -> Vec<String> {
        let mut out = vec![];
        for c in 0..copies {
            for r in &self.roles {
                out.push(format!("{}{}", var_of(*r), "'".repeat(c)));
            }
        }
        out
    }
}

/// The algebra on a carrier with multiplication and unit given by formulas.
pub fn algebra_from(bundle: &StructureBundle, carrier: &Carrier, mult: &str, unit: &str) -> Result<Algebra> {
    let vars = carrier.vars(2);
    let order: Vec<&str> = vars.iter().map(String::as_str).collect();
    let m = carrier.reshape(&eval_formula(bundle, mult, &order)?, 2, 1)?;
    let u = carrier.reshape(&eval_formula(bundle, unit, &[])?, 0, 1)?;
    Algebra::new(carrier.space.clone(), m, u)
}

/// The coalgebra on a carrier with comultiplication and counit formulas.
pub fn coalgebra_from(bundle: &StructureBundle, carrier: &Carrier, comult: &str, counit: &str) -> Result<Coalgebra> {
    let vars = carrier.vars(1);
    let order: Vec<&str> = vars.iter().map(String::as_str).collect();
    let d = carrier.reshape(&eval_formula(bundle, comult, &order)?, 1, 2)?;
    let e = carrier.reshape(&eval_formula(bundle, counit, &order)?, 1, 0)?;
    Coalgebra::new(carrier.space.clone(), d, e)
}

/// `Δ` and `ε` of the componentwise tensor product coalgebra.
pub fn tensor_coalgebra_formulas(roles: &[Role]) -> (String, String) {
    let leg = |k: usize| -> String {
        roles
            .iter()
            .map(|r| format!("{}_{k}", var_of(*r)))
            .collect::<Vec<_>>()
            .join(" % ")
    };
    let counit = roles
        .iter()
        .map(|r| format!("eps({})", var_of(*r)))
        .collect::<Vec<_>>()
        .join(" ");
    (format!("{} % {}", leg(1), leg(2)), counit)
}

/// The unit `1_X % 1_Y % ...` of a carrier.
pub fn unit_formula(roles: &[Role]) -> String {
    roles.iter().map(|r| format!("1_{r}")).collect::<Vec<_>>().join(" % ")
}
