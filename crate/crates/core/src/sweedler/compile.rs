//! Diagram to contraction plan, and evaluation against concrete maps.

use std::collections::BTreeMap;

use super::diagram::Diagram;
use crate::contract::{contract, ContractionPlan};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::space::{Role, Space};
use crate::tensor::{check_spaces, LinMap, Tensor};

/// Supplies spaces and generator maps to the evaluator.
pub trait Bindings {
    fn field(&self) -> Field;
    fn space(&self, role: Role) -> Result<Space>;
    /// The map bound to a generator name such as `mult_A` or `R`.
    fn map(&self, name: &str) -> Result<LinMap>;

    /// Like `map`, but identities are always available.
    fn generator(&self, name: &str) -> Result<LinMap> {
        if let Some(r) = name.strip_prefix("id_").and_then(Role::parse) {
            if let Ok(m) = self.map(name) {
                return Ok(m);
            }
            return Ok(Tensor::identity(&self.space(r)?, self.field()));
        }
        self.map(name)
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub plan: ContractionPlan,
    /// Generator name of each plan input, in order.
    pub tensors: Vec<String>,
    /// Expected (codomain, domain) roles of each plan input.
    pub roles: Vec<(Vec<Role>, Vec<Role>)>,
}

/// Compiles a valid diagram. Output legs are the diagram outputs followed by
/// the boundary inputs; `dims` gives the dimension of each role.
pub fn compile(d: &Diagram, dims: &dyn Fn(Role) -> usize) -> Result<Compiled> {
    d.validate()?;
    let mut wires = d.wires.clone();
    let mut legs = vec![];
    let mut tensors = vec![];
    let mut roles = vec![];
    for b in &d.boxes {
        legs.push(b.outs.iter().chain(&b.ins).copied().collect::<Vec<_>>());
        tensors.push(b.generator.name.clone());
        roles.push((b.generator.codomain.clone(), b.generator.domain.clone()));
    }
    let boundary: Vec<usize> = d.inputs.iter().map(|(_, w)| *w).collect();
    let mut outputs = vec![];
    for &w in &d.outputs {
        if boundary.contains(&w) {
            // A passthrough wire would repeat its label in the output.
            let r = wires[w];
            wires.push(r);
            let fresh = wires.len() - 1;
            legs.push(vec![fresh, w]);
            tensors.push(format!("id_{r}"));
            roles.push((vec![r], vec![r]));
            outputs.push(fresh);
        } else {
            outputs.push(w);
        }
    }
    let n_codomain = outputs.len();
    outputs.extend(boundary);
    let label_dims: BTreeMap<usize, usize> =
        wires.iter().enumerate().map(|(w, r)| (w, dims(*r))).collect();
    let plan = ContractionPlan::new(legs, outputs, n_codomain, label_dims)?;
    Ok(Compiled {
        plan,
        tensors,
        roles,
    })
}

/// Evaluates a diagram to the linear map it denotes.
pub fn evaluate(d: &Diagram, bindings: &dyn Bindings) -> Result<LinMap> {
    evaluate_with_order(d, bindings, None)
}

/// As `evaluate`; a seed replaces the greedy pairwise order by a random one.
pub fn evaluate_with_order(d: &Diagram, bindings: &dyn Bindings, seed: Option<u64>) -> Result<LinMap> {
    let mut spaces: BTreeMap<Role, Space> = BTreeMap::new();
    for r in Role::ALL {
        if let Ok(s) = bindings.space(r) {
            spaces.insert(r, s);
        }
    }
    let space_of = |r: Role| -> Result<Space> {
        spaces
            .get(&r)
            .cloned()
            .ok_or_else(|| Error::Unbound(format!("space {r}")))
    };
    for r in d.wires.iter() {
        space_of(*r)?;
    }
    let c = compile(d, &|r| spaces.get(&r).map_or(0, |s| s.dim()))?;
    let field = bindings.field();
    let dom: Vec<Space> = d.input_roles().into_iter().map(space_of).collect::<Result<_>>()?;
    let cod: Vec<Space> = d.output_roles().into_iter().map(space_of).collect::<Result<_>>()?;
    if c.tensors.is_empty() {
        return Ok(Tensor::scalar(field.one()));
    }
    let mut maps = vec![];
    for (name, (co, dm)) in c.tensors.iter().zip(&c.roles) {
        let m = bindings.generator(name)?;
        let want_dom: Vec<Space> = dm.iter().map(|r| space_of(*r)).collect::<Result<_>>()?;
        let want_cod: Vec<Space> = co.iter().map(|r| space_of(*r)).collect::<Result<_>>()?;
        check_spaces(&want_dom, m.domain())?;
        check_spaces(&want_cod, m.codomain())?;
        if m.field() != field {
            return Err(Error::Field(format!("map {name} is over {}", m.field())));
        }
        maps.push(m);
    }
    let plan = match seed {
        Some(s) => c.plan.with_random_order(s),
        None => c.plan,
    };
    let refs: Vec<&Tensor> = maps.iter().collect();
    let out = contract(&plan, &refs)?;
    // Contraction takes leg spaces from the inputs; restate the boundary.
    out.relabel(dom, cod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweedler::build::build;
    use crate::sweedler::parser::parse_side;

    /// C2 = {1, g} group algebra as H, nothing else.
    struct C2 {
        h: Space,
    }

    impl Bindings for C2 {
        fn field(&self) -> Field {
            Field::Rational
        }
        fn space(&self, role: Role) -> Result<Space> {
            match role {
                Role::H => Ok(self.h.clone()),
                _ => Err(Error::Unbound(role.to_string())),
            }
        }
        fn map(&self, name: &str) -> Result<LinMap> {
            let f = Field::Rational;
            let h = &self.h;
            match name {
                "comult_H" => Ok(Tensor::from_columns(vec![h.clone()], vec![h.clone(), h.clone()], f, |i| {
                    vec![(vec![i[0], i[0]], f.one())]
                })),
                "counit_H" => Ok(Tensor::from_columns(vec![h.clone()], vec![], f, |_| vec![(vec![], f.one())])),
                "mult_H" => Ok(Tensor::from_columns(vec![h.clone(), h.clone()], vec![h.clone()], f, |i| {
                    vec![(vec![i[0] ^ i[1]], f.one())]
                })),
                _ => Err(Error::Unbound(name.into())),
            }
        }
    }

    fn c2() -> C2 {
        C2 {
            h: Space::new("H", vec!["1".into(), "g".into()], Some(0)).unwrap(),
        }
    }

    #[test]
    fn identity_diagram_is_identity() {
        let d = build(&parse_side("x").unwrap()).unwrap();
        let b = c2();
        let m = evaluate(&d, &b).unwrap();
        assert!(maps_eq(&m, &Tensor::identity(&b.h, Field::Rational)));
        assert!(compile(&d, &|_| 2).unwrap().plan.steps.is_empty());
    }

    #[test]
    fn counit_axiom() {
        let d = build(&parse_side("eps(x_1) x_2").unwrap()).unwrap();
        let b = c2();
        assert!(maps_eq(&evaluate(&d, &b).unwrap(), &Tensor::identity(&b.h, Field::Rational)));
    }

    #[test]
    fn random_orders_agree() {
        let d = build(&parse_side("x_1 x'_2 % x_3 x'_1 % x'_3 x_2").unwrap()).unwrap();
        let b = c2();
        let m = evaluate(&d, &b).unwrap();
        for s in 0..5 {
            assert!(maps_eq(&m, &evaluate_with_order(&d, &b, Some(s)).unwrap()));
        }
        assert_eq!(*m.entry(&[1, 1, 1], &[1, 0]), Field::Rational.one());
    }

    #[test]
    fn unbound_and_scalar() {
        let d = build(&parse_side("S(x)").unwrap()).unwrap();
        assert!(matches!(evaluate(&d, &c2()), Err(Error::Unbound(_))));
        let d = build(&parse_side("1").unwrap()).unwrap();
        assert_eq!(*evaluate(&d, &c2()).unwrap().entry(&[], &[]), Field::Rational.one());
    }

    fn maps_eq(a: &Tensor, b: &Tensor) -> bool {
        crate::tensor::maps_equal(a, b).unwrap().is_equal()
    }
}
