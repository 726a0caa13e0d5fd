//! Sweedler expression to diagram.
//!
//! Every base (a variable, or a compound expression carrying indices) owns a
//! trie of index paths. A node's children decide which map splits it: numeric
//! legs a comultiplication, `-1`/`0` the left coaction, `[k]` the right
//! coaction, a tag the structure-map box of that name. Tags name one box per
//! side; the box takes the two paths ending in that tag as inputs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ast::{tag_kind, ActOp, Expr, Script, Side, Step};
use super::diagram::Diagram;
use crate::error::{Error, Result};
use crate::space::Role;

/// Canonical boundary order of the variables.
pub const VAR_ORDER: [&str; 9] = ["a", "a'", "a''", "x", "x'", "x''", "b", "b'", "b''"];

pub fn var_role(v: &str) -> Role {
    match v.chars().next() {
        Some('a') => Role::A,
        Some('x') => Role::H,
        _ => Role::B,
    }
}

fn var_rank(v: &str) -> (usize, usize, String) {
    match VAR_ORDER.iter().position(|x| *x == v) {
        Some(p) => (0, p, String::new()),
        None => (1, var_role(v) as usize, v.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Family {
    Delta,
    CoLeft,
    CoRight,
    Tag,
}

fn family(s: &Step) -> Family {
    match s {
        Step::Delta(_) => Family::Delta,
        Step::CoLeft(_) => Family::CoLeft,
        Step::CoRight(_) => Family::CoRight,
        Step::Tag(..) => Family::Tag,
    }
}

struct Node {
    label: String,
    parent: Option<(usize, Step)>,
    children: BTreeMap<Step, usize>,
    leaf: bool,
}

struct Builder {
    nodes: Vec<Node>,
    roots: BTreeMap<String, usize>,
    compound: HashMap<String, Expr>,
    /// Tag name to (input node, script, output node).
    tags: BTreeMap<String, Vec<(usize, Script, usize)>>,
    wire: HashMap<usize, usize>,
    busy: BTreeSet<usize>,
    d: Diagram,
}

fn step_label(s: &Step) -> String {
    match s {
        Step::Delta(k) => k.to_string(),
        Step::CoLeft(k) => k.to_string(),
        Step::CoRight(k) => format!("[{k}]"),
        Step::Tag(t, Script::Sub) => t.clone(),
        Step::Tag(t, Script::Sup) => format!("^{t}"),
    }
}

impl Builder {
    fn root(&mut self, key: &str) -> usize {
        if let Some(&n) = self.roots.get(key) {
            return n;
        }
        self.nodes.push(Node {
            label: key.to_string(),
            parent: None,
            children: BTreeMap::new(),
            leaf: false,
        });
        let n = self.nodes.len() - 1;
        self.roots.insert(key.to_string(), n);
        n
    }

    fn child(&mut self, parent: usize, step: &Step) -> usize {
        if let Some(&c) = self.nodes[parent].children.get(step) {
            return c;
        }
        let label = format!("{}_{}", self.nodes[parent].label, step_label(step));
        self.nodes.push(Node {
            label,
            parent: Some((parent, step.clone())),
            children: BTreeMap::new(),
            leaf: false,
        });
        let c = self.nodes.len() - 1;
        self.nodes[parent].children.insert(step.clone(), c);
        c
    }

    fn mark_leaf(&mut self, n: usize) -> Result<()> {
        if self.nodes[n].leaf {
            return Err(Error::Sweedler(format!(
                "`{}` is used more than once",
                self.nodes[n].label
            )));
        }
        self.nodes[n].leaf = true;
        Ok(())
    }

    /// First pass: register every occurrence.
    fn collect(&mut self, e: &Expr) -> Result<()> {
        match e {
            Expr::Var(v) => {
                let r = self.root(v);
                self.mark_leaf(r)
            }
            Expr::Unit(_) | Expr::One => Ok(()),
            Expr::Call(_, args) => args.iter().try_for_each(|a| self.collect(a)),
            Expr::Prod(items) => items.iter().try_for_each(|a| self.collect(a)),
            Expr::Act(l, _, r) => {
                self.collect(l)?;
                self.collect(r)
            }
            Expr::Path(base, steps) => {
                let key = base.base_key();
                if !matches!(**base, Expr::Var(_)) && !self.compound.contains_key(&key) {
                    self.compound.insert(key.clone(), (**base).clone());
                    self.collect(base)?;
                }
                let mut n = self.root(&key);
                for s in steps {
                    n = self.child(n, s);
                }
                self.mark_leaf(n)
            }
        }
    }

    fn check_tries(&mut self) -> Result<()> {
        for n in 0..self.nodes.len() {
            let node = &self.nodes[n];
            let kids: Vec<&Step> = node.children.keys().collect();
            if kids.is_empty() {
                continue;
            }
            if node.leaf {
                return Err(Error::Sweedler(format!(
                    "`{}` is used both bare and with further indices",
                    node.label
                )));
            }
            let fam = family(kids[0]);
            if kids.iter().any(|s| family(s) != fam) {
                return Err(Error::Sweedler(format!(
                    "`{}` mixes incompatible index kinds",
                    node.label
                )));
            }
            let dangling = |what: String| Error::DanglingIndex(node.label.clone(), what);
            match fam {
                Family::Delta => {
                    let ks: Vec<usize> = kids
                        .iter()
                        .map(|s| if let Step::Delta(k) = s { *k } else { 0 })
                        .collect();
                    let want: Vec<usize> = (1..=ks.len()).collect();
                    if ks.len() < 2 || ks != want {
                        return Err(dangling(format!(
                            "comultiplication legs {ks:?} are not 1..n with n >= 2"
                        )));
                    }
                }
                Family::CoLeft => {
                    if kids.len() != 2 {
                        return Err(dangling("left coaction needs both legs -1 and 0".into()));
                    }
                }
                Family::CoRight => {
                    let ks: Vec<usize> = kids
                        .iter()
                        .map(|s| if let Step::CoRight(k) = s { *k } else { 0 })
                        .collect();
                    let want: Vec<usize> = (0..ks.len()).collect();
                    if ks.len() < 2 || ks != want {
                        return Err(dangling(format!(
                            "right coaction legs {ks:?} are not [0]..[n] with n >= 1"
                        )));
                    }
                }
                Family::Tag => {
                    if kids.len() != 1 {
                        return Err(Error::Sweedler(format!(
                            "`{}` enters two different boxes",
                            node.label
                        )));
                    }
                }
            }
        }
        for n in 0..self.nodes.len() {
            if let Some((p, Step::Tag(t, s))) = self.nodes[n].parent.clone() {
                self.tags.entry(t).or_default().push((p, s, n));
            }
        }
        for (t, uses) in &self.tags {
            match uses.len() {
                2 => {}
                1 => {
                    return Err(Error::DanglingIndex(
                        t.clone(),
                        "a two-input map index occurs on one input only".into(),
                    ))
                }
                k => {
                    return Err(Error::Sweedler(format!(
                        "tag `{t}` occurs on {k} inputs; use a distinct tag per box"
                    )))
                }
            }
        }
        Ok(())
    }

    fn role(&self, w: usize) -> Role {
        self.d.wires[w]
    }

    fn node_wire(&mut self, n: usize) -> Result<usize> {
        if let Some(&w) = self.wire.get(&n) {
            return Ok(w);
        }
        if !self.busy.insert(n) {
            return Err(Error::Sweedler(format!(
                "`{}` depends on itself",
                self.nodes[n].label
            )));
        }
        let r = self.resolve(n);
        self.busy.remove(&n);
        r?;
        Ok(self.wire[&n])
    }

    fn resolve(&mut self, n: usize) -> Result<()> {
        let Some((p, step)) = self.nodes[n].parent.clone() else {
            let key = self.nodes[n].label.clone();
            let w = match self.compound.get(&key).cloned() {
                Some(e) => self.eval(&e)?.ok_or_else(|| {
                    Error::Sweedler(format!("scalar `{key}` cannot carry an index"))
                })?,
                None => {
                    let w = self.d.new_wire(var_role(&key));
                    self.d.inputs.push((key.clone(), w));
                    w
                }
            };
            self.wire.insert(n, w);
            return Ok(());
        };
        let kids: Vec<(Step, usize)> = self.nodes[p]
            .children
            .iter()
            .map(|(s, c)| (s.clone(), *c))
            .collect();
        match family(&step) {
            Family::Delta => {
                let pw = self.node_wire(p)?;
                let legs = self.delta(pw, kids.len())?;
                for ((_, c), w) in kids.iter().zip(legs) {
                    self.wire.insert(*c, w);
                }
            }
            Family::CoLeft => {
                let pw = self.node_wire(p)?;
                if self.role(pw) != Role::A {
                    return Err(Error::RoleMismatch(format!(
                        "left coaction index on `{}` which is not in A",
                        self.nodes[p].label
                    )));
                }
                let outs = self.d.add_box("coact_l", vec![pw])?;
                for (s, c) in &kids {
                    let w = if *s == Step::CoLeft(-1) { outs[0] } else { outs[1] };
                    self.wire.insert(*c, w);
                }
            }
            Family::CoRight => {
                let pw = self.node_wire(p)?;
                if self.role(pw) != Role::B {
                    return Err(Error::RoleMismatch(format!(
                        "right coaction index on `{}` which is not in B",
                        self.nodes[p].label
                    )));
                }
                let outs = self.d.add_box("coact_r", vec![pw])?;
                let h_legs = self.delta(outs[1], kids.len() - 1)?;
                for (s, c) in &kids {
                    let w = match s {
                        Step::CoRight(0) => outs[0],
                        Step::CoRight(k) => h_legs[k - 1],
                        _ => unreachable!(),
                    };
                    self.wire.insert(*c, w);
                }
            }
            Family::Tag => {
                let Step::Tag(t, _) = &step else { unreachable!() };
                self.tag_box(t)?;
            }
        }
        Ok(())
    }

    /// Iterated comultiplication `(Δ⊗id⊗..)∘..∘Δ` with `n` legs.
    fn delta(&mut self, w: usize, n: usize) -> Result<Vec<usize>> {
        let name = format!("comult_{}", self.role(w));
        let mut legs = vec![w];
        for _ in 1..n {
            let first = legs.remove(0);
            let outs = self.d.add_box(&name, vec![first])?;
            let mut next = outs;
            next.extend(legs);
            legs = next;
        }
        Ok(legs)
    }

    fn tag_box(&mut self, tag: &str) -> Result<()> {
        let uses = self.tags[tag].clone();
        let kind = tag_kind(tag)?;
        let (i0, i1) = (uses[0], uses[1]);
        let w0 = self.node_wire(i0.0)?;
        let w1 = self.node_wire(i1.0)?;
        if let (Some(_), Some(_)) = (self.wire.get(&i0.2), self.wire.get(&i1.2)) {
            return Ok(());
        }
        let (r0, r1) = (self.role(w0), self.role(w1));
        let mismatch = || {
            Error::RoleMismatch(format!(
                "box `{tag}` ({kind}) cannot take inputs in {r0} and {r1}"
            ))
        };
        // (first input use, second input use) in the generator's domain order,
        // and which output each use receives.
        let (first, second, out_first, out_second) = match kind {
            "R" => match (r0, r1) {
                (Role::H, Role::A) => (i0, i1, 1, 0),
                (Role::A, Role::H) => (i1, i0, 1, 0),
                _ => return Err(mismatch()),
            },
            "T" => match (r0, r1) {
                (Role::B, Role::H) => (i0, i1, 1, 0),
                (Role::H, Role::B) => (i1, i0, 1, 0),
                _ => return Err(mismatch()),
            },
            "G" | "F" => {
                if (r0, r1) != (Role::H, Role::H) || i0.1 == i1.1 {
                    return Err(mismatch());
                }
                // G takes the superscript first, F the subscript first.
                let first_script = if kind == "G" { Script::Sup } else { Script::Sub };
                let (f, s) = if i0.1 == first_script { (i0, i1) } else { (i1, i0) };
                (f, s, 0, 1)
            }
            _ => return Err(mismatch()),
        };
        let wf = self.wire[&first.0];
        let ws = self.wire[&second.0];
        let outs = self.d.add_box(kind, vec![wf, ws])?;
        self.wire.insert(first.2, outs[out_first]);
        self.wire.insert(second.2, outs[out_second]);
        Ok(())
    }

    fn wire_of(&mut self, e: &Expr) -> Result<usize> {
        self.eval(e)?
            .ok_or_else(|| Error::RoleMismatch(format!("`{e}` is a scalar where an element is needed")))
    }

    /// Second pass: builds boxes; `None` is a scalar.
    fn eval(&mut self, e: &Expr) -> Result<Option<usize>> {
        Ok(match e {
            Expr::Var(v) => {
                let n = self.roots[v.as_str()];
                Some(self.node_wire(n)?)
            }
            Expr::Unit(r) => Some(self.d.add_box(&format!("unit_{r}"), vec![])?[0]),
            Expr::One => None,
            Expr::Call(name, args) => match name.as_str() {
                "sigma" | "tau" => {
                    let x = self.wire_of(&args[0])?;
                    let y = self.wire_of(&args[1])?;
                    Some(self.d.add_box(name, vec![x, y])?[0])
                }
                "eps" => {
                    let x = self.wire_of(&args[0])?;
                    let r = self.role(x);
                    self.d.add_box(&format!("counit_{r}"), vec![x])?;
                    None
                }
                "S" | "SA" | "SB" => {
                    let x = self.wire_of(&args[0])?;
                    let want = match name.as_str() {
                        "S" => Role::H,
                        "SA" => Role::A,
                        _ => Role::B,
                    };
                    if self.role(x) != want {
                        return Err(Error::RoleMismatch(format!("{name} applied to an element of {}", self.role(x))));
                    }
                    Some(self.d.add_box(&format!("S_{want}"), vec![x])?[0])
                }
                other => return Err(Error::UnknownGenerator(other.to_string())),
            },
            Expr::Prod(items) => {
                let mut acc: Option<usize> = None;
                for it in items {
                    if let Some(w) = self.eval(it)? {
                        acc = Some(match acc {
                            None => w,
                            Some(a) => {
                                let (ra, rw) = (self.role(a), self.role(w));
                                if ra != rw {
                                    return Err(Error::RoleMismatch(format!(
                                        "product of elements of {ra} and {rw} in `{e}`"
                                    )));
                                }
                                self.d.add_box(&format!("mult_{ra}"), vec![a, w])?[0]
                            }
                        });
                    }
                }
                acc
            }
            Expr::Act(l, op, r) => {
                let lw = self.wire_of(l)?;
                let rw = self.wire_of(r)?;
                let name = match (op, self.role(lw), self.role(rw)) {
                    (ActOp::Left, Role::H, Role::A) => "act_l",
                    (ActOp::Left, Role::B, Role::H) => "ru_tl",
                    (ActOp::Right, Role::B, Role::H) => "act_r",
                    (ActOp::Right, Role::H, Role::A) => "lu_tr",
                    (_, a, b) => {
                        return Err(Error::RoleMismatch(format!(
                            "no action between {a} and {b} in `{e}`"
                        )))
                    }
                };
                Some(self.d.add_box(name, vec![lw, rw])?[0])
            }
            Expr::Path(base, steps) => {
                let mut n = self.roots[base.base_key().as_str()];
                for s in steps {
                    n = self.nodes[n].children[s];
                }
                Some(self.node_wire(n)?)
            }
        })
    }
}

/// Builds the diagram of one side of an equation.
pub fn build(side: &Side) -> Result<Diagram> {
    let mut b = Builder {
        nodes: vec![],
        roots: BTreeMap::new(),
        compound: HashMap::new(),
        tags: BTreeMap::new(),
        wire: HashMap::new(),
        busy: BTreeSet::new(),
        d: Diagram::default(),
    };
    for f in &side.factors {
        b.collect(f)?;
    }
    b.check_tries()?;
    let mut outs = vec![];
    let mut scalar_factors = 0;
    for f in &side.factors {
        match b.eval(f)? {
            Some(w) => outs.push(w),
            None => scalar_factors += 1,
        }
    }
    if scalar_factors > 0 && side.factors.len() > 1 {
        return Err(Error::Sweedler(format!(
            "scalar tensor factor in `{side}`; multiply it into a neighbour"
        )));
    }
    b.d.outputs = outs;
    // Canonical boundary order.
    b.d.inputs.sort_by_key(|(v, _)| var_rank(v));
    b.d.validate()?;
    Ok(b.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweedler::parser::parse_side;

    fn diagram(s: &str) -> Result<Diagram> {
        build(&parse_side(s).unwrap())
    }

    #[test]
    fn single_r_box() {
        let d = diagram("a_R % x_R").unwrap();
        assert_eq!(d.boxes.len(), 1);
        assert_eq!(d.boxes[0].generator.name, "R");
        assert_eq!(d.output_roles(), vec![Role::A, Role::H]);
        assert_eq!(d.input_names(), vec!["a", "x"]);
    }

    #[test]
    fn product_then_r() {
        let d = diagram("(a a')_R % x_R").unwrap();
        let names: Vec<&str> = d.boxes.iter().map(|b| b.generator.name.as_str()).collect();
        assert_eq!(names, vec!["mult_A", "R"]);
    }

    #[test]
    fn double_biproduct_condition() {
        let d = diagram("b_{[1]} |> a_0 % b_{[0]} <| a_{-1}").unwrap();
        let names = d.generators();
        assert_eq!(names, vec!["act_l", "act_r", "coact_l", "coact_r"]);
        assert_eq!(d.input_names(), vec!["a", "b"]);
        assert_eq!(d.output_roles(), vec![Role::A, Role::B]);
    }

    #[test]
    fn dangling_indices_are_rejected() {
        assert!(matches!(diagram("x_R % a"), Err(Error::DanglingIndex(..))));
        assert!(matches!(diagram("x_1 % x_3"), Err(Error::DanglingIndex(..))));
        assert!(matches!(diagram("b_{[0]} % 1_H"), Err(Error::DanglingIndex(..))));
        assert!(matches!(diagram("x % x_1"), Err(Error::Sweedler(_))));
        assert!(matches!(diagram("a_1 % a_1"), Err(Error::Sweedler(_))));
    }

    #[test]
    fn role_errors() {
        assert!(matches!(diagram("a x"), Err(Error::RoleMismatch(_))));
        assert!(matches!(diagram("x_{-1} % x_0"), Err(Error::RoleMismatch(_))));
        assert!(matches!(diagram("a |> x"), Err(Error::RoleMismatch(_))));
    }

    #[test]
    fn g_box_slots_follow_scripts() {
        let d = diagram("x^G % x'_G").unwrap();
        let g = &d.boxes[0];
        assert_eq!(g.generator.name, "G");
        // first input is x (superscript), its A output is the first factor.
        assert_eq!(g.ins[0], d.inputs[0].1);
        assert_eq!(d.outputs, g.outs);
    }

    #[test]
    fn deep_paths_and_compound_bases() {
        diagram("S(x_1)_1^G % x_{2G} % tau(S(x_1)_2, x_3)").unwrap();
        diagram("x'^G_R x_R^g % x''_{Gg}").unwrap();
        let d = diagram("a_{-1} x_1 a'_{-1} x'_1 % tau(x_4, x'_3) (b_{[0]} <| x'_4) b'_{[0]} % a_0 (x_2 |> a'_0) sigma(x_3, x'_2) % x_5 b_{[1]} x'_5 b'_{[1]}").unwrap();
        assert_eq!(d.inputs.len(), 6);
    }
}
