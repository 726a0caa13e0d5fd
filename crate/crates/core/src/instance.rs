//! Instance files: spaces and structure maps in a declarative text format.
//!
//! ```text
//! # free-form provenance comments
//! field q
//! space H one 1 { 1 a }
//! mult H : H H -> H { (0;0,0) = 1; (1;0,1) = 1; (1;1,0) = 1; (0;1,1) = 1; }
//! unit H : k -> H { (0;) = 1; }
//! map sigma : H H -> A { ... }
//! carrier AHB = A H B
//! ```
//!
//! `mult`, `unit`, `comult`, `counit` and `antipode` blocks name the space
//! they structure; `map` blocks name a generator. Leading `#` lines are
//! kept as provenance.

use std::collections::BTreeMap;

use crate::bundle::StructureBundle;
use crate::error::{Error, Result};
use crate::products::{BuiltStructure, Carrier};
use crate::scalar::Field;
use crate::serial::{parse_tensor_body, write_tensor, Cursor};
use crate::space::{Role, Space};
use crate::structures::{Algebra, Coalgebra};
use crate::tensor::LinMap;

const KINDS: [(&str, &str); 5] = [
    ("mult", "mult_"),
    ("unit", "unit_"),
    ("comult", "comult_"),
    ("counit", "counit_"),
    ("antipode", "S_"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub field: Field,
    pub spaces: Vec<Space>,
    pub maps: Vec<(String, LinMap)>,
    pub carrier: Option<(String, Vec<String>)>,
    pub provenance: Vec<String>,
}

fn space_line(s: &Space) -> String {
    let one = s.one.map(|o| format!(" one {}", s.label(o))).unwrap_or_default();
    format!("space {}{one} {{ {} }}\n", s.name, s.labels().join(" "))
}

fn block(name: &str, m: &LinMap) -> String {
    for (kw, prefix) in KINDS {
        if let Some(space) = name.strip_prefix(prefix) {
            let t = write_tensor(space, m);
            return format!("{kw}{}", &t["tensor".len()..]);
        }
    }
    format!("map{}", &write_tensor(name, m)["tensor".len()..])
}

impl Instance {
    pub fn new(field: Field) -> Instance {
        Instance {
            field,
            spaces: vec![],
            maps: vec![],
            carrier: None,
            provenance: vec![],
        }
    }

    pub fn from_bundle(b: &StructureBundle) -> Instance {
        let mut out = Instance::new(b.field);
        out.spaces = b.spaces.values().cloned().collect();
        out.maps = b.maps.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        out
    }

    pub fn from_built(s: &BuiltStructure) -> Instance {
        let field = s
            .maps()
            .first()
            .map(|(_, m)| m.field())
            .unwrap_or(Field::Rational);
        let mut out = Instance::new(field);
        let c = &s.carrier;
        for f in &c.factors {
            if !out.spaces.iter().any(|s| s.name == f.name) {
                out.spaces.push(f.clone());
            }
        }
        out.spaces.push(c.space.clone());
        let names = c.roles.iter().map(|r| r.name().to_string()).collect();
        out.carrier = Some((c.space.name.clone(), names));
        for (k, m) in s.maps() {
            let name = match k {
                "antipode" => format!("S_{}", c.space.name),
                _ => format!("{k}_{}", c.space.name),
            };
            out.maps.push((name, m.clone()));
        }
        out.provenance = s.provenance.clone();
        out
    }

    pub fn space(&self, name: &str) -> Option<&Space> {
        self.spaces.iter().find(|s| s.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&LinMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// The role spaces and generator maps as a bundle.
    pub fn to_bundle(&self) -> Result<StructureBundle> {
        let mut b = StructureBundle::new(self.field);
        for s in &self.spaces {
            if let Some(r) = Role::parse(&s.name) {
                b.set_space(r, s.clone());
            }
        }
        for (n, m) in &self.maps {
            b.set_map(n, m.clone())?;
        }
        Ok(b)
    }

    /// The built structure on the declared carrier.
    pub fn to_built(&self) -> Result<BuiltStructure> {
        let (name, factors) = self
            .carrier
            .as_ref()
            .ok_or_else(|| Error::MissingRoles(vec!["carrier".into()]))?;
        let space = self
            .space(name)
            .ok_or_else(|| Error::Space(format!("carrier space `{name}` is not declared")))?
            .clone();
        let mut roles = vec![];
        let mut fs = vec![];
        for f in factors {
            roles.push(Role::parse(f).ok_or_else(|| Error::Space(format!("carrier factor `{f}` is not A, H or B")))?);
            fs.push(
                self.space(f)
                    .ok_or_else(|| Error::Space(format!("carrier factor `{f}` is not declared")))?
                    .clone(),
            );
        }
        let carrier = Carrier {
            space: space.clone(),
            roles,
            factors: fs,
        };
        let mut out = BuiltStructure::new(name, carrier);
        let get = |k: &str| self.map(&format!("{k}_{name}")).cloned();
        if let (Some(m), Some(u)) = (get("mult"), get("unit")) {
            out.algebra = Some(Algebra::new(space.clone(), m, u)?);
        }
        if let (Some(d), Some(e)) = (get("comult"), get("counit")) {
            out.coalgebra = Some(Coalgebra::new(space.clone(), d, e)?);
        }
        out.antipode = get("S");
        out.provenance = self.provenance.clone();
        Ok(out)
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        for p in &self.provenance {
            out.push_str(&format!("# {p}\n"));
        }
        out.push_str(&format!("field {}\n", self.field));
        for s in &self.spaces {
            out.push_str(&space_line(s));
        }
        if let Some((n, fs)) = &self.carrier {
            out.push_str(&format!("carrier {n} = {}\n", fs.join(" ")));
        }
        for (n, m) in &self.maps {
            out.push_str(&block(n, m));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let provenance = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim().to_string())
            .collect();
        let mut cur = Cursor::new(text);
        let mut field = None;
        let mut spaces: BTreeMap<String, Space> = BTreeMap::new();
        let mut out = Instance::new(Field::Rational);
        out.provenance = provenance;
        while !cur.eof() {
            let (line, col) = cur.at();
            let kw = cur.word()?;
            match kw.as_str() {
                "field" => {
                    let w = cur.rest_of_line();
                    field = Some(w.parse::<Field>().map_err(|e| Error::parse(line, col, e.to_string()))?);
                }
                "space" => {
                    let name = cur.word()?;
                    let one = if cur.eat_str("one") { Some(cur.word()?) } else { None };
                    cur.expect('{')?;
                    let mut labels = vec![];
                    while !cur.eat('}') {
                        labels.push(cur.word()?);
                    }
                    let one = match one {
                        None => None,
                        Some(l) => Some(
                            labels
                                .iter()
                                .position(|x| *x == l)
                                .ok_or_else(|| Error::parse(line, col, format!("`one {l}` is not a label")))?,
                        ),
                    };
                    let s = Space::new(name.clone(), labels, one).map_err(|e| Error::parse(line, col, e.to_string()))?;
                    if spaces.insert(name.clone(), s.clone()).is_some() {
                        return Err(Error::parse(line, col, format!("space `{name}` declared twice")));
                    }
                    out.spaces.push(s);
                }
                "carrier" => {
                    let name = cur.word()?;
                    cur.expect('=')?;
                    let fs: Vec<String> = cur.rest_of_line().split_whitespace().map(String::from).collect();
                    out.carrier = Some((name, fs));
                }
                _ => {
                    let prefix = match kw.as_str() {
                        "map" => "",
                        k => KINDS
                            .iter()
                            .find(|(kk, _)| *kk == k)
                            .map(|(_, p)| *p)
                            .ok_or_else(|| Error::parse(line, col, format!("unknown block `{kw}`")))?,
                    };
                    let f = field.ok_or_else(|| Error::parse(line, col, "`field` must come before maps"))?;
                    let (name, t) = parse_tensor_body(&mut cur, &spaces, f)?;
                    let full = format!("{prefix}{name}");
                    if out.maps.iter().any(|(n, _)| *n == full) {
                        return Err(Error::parse(line, col, format!("map `{full}` declared twice")));
                    }
                    out.maps.push((full, t));
                }
            }
        }
        out.field = field.ok_or_else(|| Error::parse(1, 1, "missing `field` line"))?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::cyclic_group;

    #[test]
    fn bundle_round_trip() {
        let f = Field::Rational;
        let h = cyclic_group("H", "a", 2, f).unwrap();
        let mut b = StructureBundle::new(f);
        b.set_space(Role::H, h.space().clone());
        b.set_hopf(Role::H, &h).unwrap();
        let mut inst = Instance::from_bundle(&b);
        inst.provenance.push("cyclic group of order 2".into());
        let text = inst.write();
        assert!(text.contains("mult H : H H -> H {"));
        assert!(text.contains("antipode H : H -> H {"));
        let back = Instance::parse(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_bundle().unwrap(), b);
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = Instance::parse("field q\nspace H { 1 a }\nfrob H : H -> H { }\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 1, .. }), "{err:?}");
        let err = Instance::parse("space H { 1 }\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
    }
}
