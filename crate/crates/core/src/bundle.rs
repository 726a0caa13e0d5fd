//! Named bindings of carrier spaces and structure maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::space::{Role, Space};
use crate::sweedler::compile::Bindings;
use crate::sweedler::diagram::Generator;
use crate::tensor::{check_spaces, LinMap};

#[derive(Clone, Debug, PartialEq)]
pub struct StructureBundle {
    pub field: Field,
    pub spaces: BTreeMap<Role, Space>,
    pub maps: BTreeMap<String, LinMap>,
}

impl StructureBundle {
    pub fn new(field: Field) -> StructureBundle {
        StructureBundle {
            field,
            spaces: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    pub fn set_space(&mut self, role: Role, space: Space) {
        self.spaces.insert(role, space);
    }

    /// Binds a map after checking it against the generator's signature.
    pub fn set_map(&mut self, name: &str, map: LinMap) -> Result<()> {
        let g = Generator::named(name)?;
        let sp = |roles: &[Role]| -> Result<Vec<Space>> {
            roles
                .iter()
                .map(|r| {
                    self.spaces
                        .get(r)
                        .cloned()
                        .ok_or_else(|| Error::MissingRoles(vec![r.to_string()]))
                })
                .collect()
        };
        check_spaces(&sp(&g.domain)?, map.domain())?;
        check_spaces(&sp(&g.codomain)?, map.codomain())?;
        if map.field() != self.field {
            return Err(Error::Field(format!("map {name} is over {}, bundle over {}", map.field(), self.field)));
        }
        self.maps.insert(name.to_string(), map);
        Ok(())
    }

    pub fn with_map(mut self, name: &str, map: LinMap) -> Result<StructureBundle> {
        self.set_map(name, map)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Result<&LinMap> {
        self.maps.get(name).ok_or_else(|| Error::MissingRoles(vec![name.to_string()]))
    }

    pub fn space_of(&self, role: Role) -> Result<&Space> {
        self.spaces
            .get(&role)
            .ok_or_else(|| Error::MissingRoles(vec![role.to_string()]))
    }

    pub fn has(&self, name: &str) -> bool {
        self.maps.contains_key(name)
            || name
                .strip_prefix("id_")
                .and_then(Role::parse)
                .is_some_and(|r| self.spaces.contains_key(&r))
    }

    /// Errors with every missing name when any is unbound.
    pub fn require(&self, names: &[&str]) -> Result<()> {
        let missing: Vec<String> = names.iter().filter(|n| !self.has(n)).map(|n| n.to_string()).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MissingRoles(missing))
        }
    }

    /// A copy with one entry of one map replaced.
    pub fn mutated(&self, name: &str, out: &[usize], input: &[usize], value: Scalar) -> Result<StructureBundle> {
        let mut b = self.clone();
        let m = b
            .maps
            .get_mut(name)
            .ok_or_else(|| Error::MissingRoles(vec![name.to_string()]))?;
        m.set(out, input, value);
        Ok(b)
    }

    pub fn names(&self) -> Vec<String> {
        self.maps.keys().cloned().collect()
    }
}

impl Bindings for StructureBundle {
    fn field(&self) -> Field {
        self.field
    }

    fn space(&self, role: Role) -> Result<Space> {
        self.spaces
            .get(&role)
            .cloned()
            .ok_or_else(|| Error::Unbound(format!("space {role}")))
    }

    fn map(&self, name: &str) -> Result<LinMap> {
        self.maps.get(name).cloned().ok_or_else(|| Error::Unbound(name.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Tensor;

    #[test]
    fn signature_and_missing() {
        let f = Field::Rational;
        let mut b = StructureBundle::new(f);
        let h = Space::numbered("H", 2, Some(0)).unwrap();
        b.set_space(Role::H, h.clone());
        assert!(b.set_map("mult_H", Tensor::identity(&h, f)).is_err());
        b.set_map("S_H", Tensor::identity(&h, f)).unwrap();
        assert!(b.require(&["S_H", "id_H"]).is_ok());
        match b.require(&["tau", "S_H", "sigma"]) {
            Err(Error::MissingRoles(m)) => assert_eq!(m, vec!["tau".to_string(), "sigma".to_string()]),
            other => panic!("{other:?}"),
        }
        let m = b.mutated("S_H", &[1], &[0], f.one()).unwrap();
        assert_ne!(m, b);
    }
}
