//! String-diagram IR: generator boxes joined by wires.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::space::Role;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub domain: Vec<Role>,
    pub codomain: Vec<Role>,
}

impl Generator {
    /// Looks up a generator by its binding name, e.g. `mult_A`, `R`, `coact_l`.
    pub fn named(name: &str) -> Result<Generator> {
        use Role::*;
        let role_suffix = |s: &str| -> Option<Role> { Role::parse(s) };
        let (domain, codomain) = if let Some((head, tail)) = name.split_once('_') {
            match (head, role_suffix(tail)) {
                ("mult", Some(r)) => (vec![r, r], vec![r]),
                ("unit", Some(r)) => (vec![], vec![r]),
                ("comult", Some(r)) => (vec![r], vec![r, r]),
                ("counit", Some(r)) => (vec![r], vec![]),
                ("id", Some(r)) => (vec![r], vec![r]),
                ("S", Some(r)) => (vec![r], vec![r]),
                _ => match name {
                    "act_l" => (vec![H, A], vec![A]),
                    "act_r" => (vec![B, H], vec![B]),
                    "lu_tr" => (vec![H, A], vec![H]),
                    "ru_tl" => (vec![B, H], vec![H]),
                    "coact_l" => (vec![A], vec![H, A]),
                    "coact_r" => (vec![B], vec![B, H]),
                    _ => return Err(Error::UnknownGenerator(name.to_string())),
                },
            }
        } else {
            match name {
                "G" => (vec![H, H], vec![A, H]),
                "R" => (vec![H, A], vec![A, H]),
                "T" => (vec![B, H], vec![H, B]),
                "F" => (vec![H, H], vec![H, B]),
                "sigma" => (vec![H, H], vec![A]),
                "tau" => (vec![H, H], vec![B]),
                _ => return Err(Error::UnknownGenerator(name.to_string())),
            }
        };
        Ok(Generator {
            name: name.to_string(),
            domain,
            codomain,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxInst {
    pub generator: Generator,
    pub ins: Vec<usize>,
    pub outs: Vec<usize>,
}

/// Boxes are stored in a topological order; wire ids index `wires`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Diagram {
    pub wires: Vec<Role>,
    pub inputs: Vec<(String, usize)>,
    pub boxes: Vec<BoxInst>,
    pub outputs: Vec<usize>,
}

impl Diagram {
    pub fn input_roles(&self) -> Vec<Role> {
        self.inputs.iter().map(|(_, w)| self.wires[*w]).collect()
    }

    pub fn output_roles(&self) -> Vec<Role> {
        self.outputs.iter().map(|w| self.wires[*w]).collect()
    }

    pub fn input_names(&self) -> Vec<String> {
        self.inputs.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn new_wire(&mut self, role: Role) -> usize {
        self.wires.push(role);
        self.wires.len() - 1
    }

    /// Adds a box, creating its output wires.
    pub fn add_box(&mut self, name: &str, ins: Vec<usize>) -> Result<Vec<usize>> {
        let generator = Generator::named(name)?;
        let found: Vec<Role> = ins.iter().map(|w| self.wires[*w]).collect();
        if found != generator.domain {
            return Err(Error::RoleMismatch(format!(
                "{name} expects inputs {:?}, got {:?}",
                generator.domain, found
            )));
        }
        let outs: Vec<usize> = generator.codomain.iter().map(|r| self.new_wire(*r)).collect();
        self.boxes.push(BoxInst {
            generator,
            ins,
            outs: outs.clone(),
        });
        Ok(outs)
    }

    /// The identity on a list of named inputs.
    pub fn identity(inputs: &[(String, Role)]) -> Diagram {
        let mut d = Diagram::default();
        for (n, r) in inputs {
            let w = d.new_wire(*r);
            d.inputs.push((n.clone(), w));
            d.outputs.push(w);
        }
        d
    }

    /// Checks the wiring invariants: one producer and one consumer per wire,
    /// matching roles, and boxes in topological order.
    pub fn validate(&self) -> Result<()> {
        let n = self.wires.len();
        let mut produced = vec![0usize; n];
        let mut consumed = vec![0usize; n];
        let mut ready: BTreeSet<usize> = BTreeSet::new();
        for (_, w) in &self.inputs {
            produced[*w] += 1;
            ready.insert(*w);
        }
        for b in &self.boxes {
            let roles: Vec<Role> = b.ins.iter().map(|w| self.wires[*w]).collect();
            if roles != b.generator.domain {
                return Err(Error::RoleMismatch(format!("inputs of {}", b.generator.name)));
            }
            let roles: Vec<Role> = b.outs.iter().map(|w| self.wires[*w]).collect();
            if roles != b.generator.codomain {
                return Err(Error::RoleMismatch(format!("outputs of {}", b.generator.name)));
            }
            for w in &b.ins {
                if !ready.contains(w) {
                    return Err(Error::Sweedler(format!(
                        "wire {w} feeds {} before it is produced (cycle)",
                        b.generator.name
                    )));
                }
                consumed[*w] += 1;
            }
            for w in &b.outs {
                produced[*w] += 1;
                ready.insert(*w);
            }
        }
        for w in &self.outputs {
            consumed[*w] += 1;
        }
        for w in 0..n {
            if produced[w] != 1 || consumed[w] != 1 {
                return Err(Error::Sweedler(format!(
                    "wire {w} is produced {} and consumed {} times",
                    produced[w], consumed[w]
                )));
            }
        }
        Ok(())
    }

    /// Sequential composition: feeds the outputs of `self` into `next`.
    pub fn then(&self, next: &Diagram) -> Result<Diagram> {
        if self.output_roles() != next.input_roles() {
            return Err(Error::RoleMismatch(format!(
                "cannot compose: outputs {:?} vs inputs {:?}",
                self.output_roles(),
                next.input_roles()
            )));
        }
        let mut d = self.clone();
        let offset = d.wires.len();
        d.wires.extend(next.wires.iter().copied());
        let mut subst: Vec<usize> = (0..next.wires.len()).map(|w| w + offset).collect();
        for ((_, w), out) in next.inputs.iter().zip(&self.outputs) {
            subst[*w] = *out;
        }
        for b in &next.boxes {
            d.boxes.push(BoxInst {
                generator: b.generator.clone(),
                ins: b.ins.iter().map(|w| subst[*w]).collect(),
                outs: b.outs.iter().map(|w| subst[*w]).collect(),
            });
        }
        d.outputs = next.outputs.iter().map(|w| subst[*w]).collect();
        // Drop the now-unused wire slots of next's inputs by compacting.
        Ok(d.compacted())
    }

    fn compacted(&self) -> Diagram {
        let mut used = BTreeSet::new();
        for (_, w) in &self.inputs {
            used.insert(*w);
        }
        for b in &self.boxes {
            used.extend(b.ins.iter().copied());
            used.extend(b.outs.iter().copied());
        }
        used.extend(self.outputs.iter().copied());
        let map: std::collections::BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        Diagram {
            wires: used.iter().map(|w| self.wires[*w]).collect(),
            inputs: self.inputs.iter().map(|(n, w)| (n.clone(), map[w])).collect(),
            boxes: self
                .boxes
                .iter()
                .map(|b| BoxInst {
                    generator: b.generator.clone(),
                    ins: b.ins.iter().map(|w| map[w]).collect(),
                    outs: b.outs.iter().map(|w| map[w]).collect(),
                })
                .collect(),
            outputs: self.outputs.iter().map(|w| map[w]).collect(),
        }
    }

    /// Generator names used, sorted and deduplicated.
    pub fn generators(&self) -> Vec<String> {
        let s: BTreeSet<String> = self.boxes.iter().map(|b| b.generator.name.clone()).collect();
        s.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_table() {
        let g = Generator::named("R").unwrap();
        assert_eq!(g.domain, vec![Role::H, Role::A]);
        assert_eq!(g.codomain, vec![Role::A, Role::H]);
        assert!(Generator::named("unit_H").unwrap().domain.is_empty());
        assert!(Generator::named("counit_B").unwrap().codomain.is_empty());
        assert!(matches!(Generator::named("mult_Z"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn composition_validates() {
        let mut d = Diagram::identity(&[("x".into(), Role::H)]);
        let w = d.outputs[0];
        let outs = d.add_box("comult_H", vec![w]).unwrap();
        d.outputs = outs;
        d.validate().unwrap();
        let mut e = Diagram::identity(&[("p".into(), Role::H), ("q".into(), Role::H)]);
        let ins = e.outputs.clone();
        let o = e.add_box("mult_H", ins).unwrap();
        e.outputs = o;
        let c = d.then(&e).unwrap();
        c.validate().unwrap();
        assert_eq!(c.output_roles(), vec![Role::H]);
        assert_eq!(c.boxes.len(), 2);
    }
}
