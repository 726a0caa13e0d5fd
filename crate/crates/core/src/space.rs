use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite-dimensional space with a named basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub name: String,
    labels: Vec<String>,
    /// Basis index of the distinguished element (`1_H` for a coalgebra with one,
    /// the unit for an algebra), when there is one.
    pub one: Option<usize>,
}

impl Space {
    pub fn new(name: impl Into<String>, labels: Vec<String>, one: Option<usize>) -> Result<Space> {
        let name = name.into();
        if labels.is_empty() {
            return Err(Error::Space(format!("space {name} has dimension 0")));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Space(format!("space {name}: duplicate basis label `{l}`")));
            }
        }
        if let Some(o) = one {
            if o >= labels.len() {
                return Err(Error::Space(format!(
                    "space {name}: distinguished index {o} out of range"
                )));
            }
        }
        Ok(Space { name, labels, one })
    }

    /// Space with labels `e0..e{dim-1}`.
    pub fn numbered(name: impl Into<String>, dim: usize, one: Option<usize>) -> Result<Space> {
        Space::new(name, (0..dim).map(|i| format!("e{i}")).collect(), one)
    }

    /// The one-dimensional ground field as a space.
    pub fn ground(name: impl Into<String>) -> Space {
        Space {
            name: name.into(),
            labels: vec!["1".into()],
            one: Some(0),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn one_index(&self) -> Result<usize> {
        self.one
            .ok_or_else(|| Error::Space(format!("space {} has no distinguished element", self.name)))
    }

    pub fn renamed(&self, name: impl Into<String>) -> Space {
        Space {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Tensor product space with labels joined by `|`; the distinguished
    /// element is the product of the factors' ones when all exist.
    pub fn product(name: impl Into<String>, factors: &[Space]) -> Space {
        let mut labels = vec![String::new()];
        for f in factors {
            let mut next = Vec::with_capacity(labels.len() * f.dim());
            for l in &labels {
                for fl in f.labels() {
                    next.push(if l.is_empty() {
                        fl.clone()
                    } else {
                        format!("{l}|{fl}")
                    });
                }
            }
            labels = next;
        }
        let one = factors
            .iter()
            .try_fold(0usize, |acc, f| f.one.map(|o| acc * f.dim() + o));
        Space {
            name: name.into(),
            labels,
            one,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.dim())
    }
}

/// The three carrier roles of a bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    A,
    H,
    B,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::A, Role::H, Role::B];

    pub fn name(self) -> &'static str {
        match self {
            Role::A => "A",
            Role::H => "H",
            Role::B => "B",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s {
            "A" => Some(Role::A),
            "H" => Some(Role::H),
            "B" => Some(Role::B),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_labels_and_bad_one() {
        assert!(Space::new("H", vec!["1".into(), "1".into()], None).is_err());
        assert!(Space::new("H", vec!["1".into(), "a".into()], Some(2)).is_err());
        assert!(Space::new("H", vec![], None).is_err());
    }

    #[test]
    fn product_labels_and_one() {
        let h = Space::new("H", vec!["1".into(), "a".into()], Some(0)).unwrap();
        let a = Space::new("A", vec!["1".into(), "x".into()], Some(0)).unwrap();
        let p = Space::product("AH", &[a, h]);
        assert_eq!(p.dim(), 4);
        assert_eq!(p.label(1), "1|a");
        assert_eq!(p.one, Some(0));
    }
}
