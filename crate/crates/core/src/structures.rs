//! Algebras, coalgebras, bialgebras and Hopf algebras with exhaustive axiom
//! checks evaluated element by element.

use crate::bundle::StructureBundle;
use crate::elem::{check_on_basis, Elem, SparseMap};
use crate::error::{Error, Result};
use crate::report::ConditionReport;
use crate::scalar::Field;
use crate::space::{Role, Space};
use crate::tensor::{check_spaces, LinMap, Tensor};

pub use crate::conditions::structural::{check_comodule_coalgebra, check_module_algebra, check_weak_action, check_yd, Side};

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    pub space: Space,
    pub mult: LinMap,
    pub unit: LinMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra {
    pub space: Space,
    pub comult: LinMap,
    pub counit: LinMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bialgebra {
    pub algebra: Algebra,
    pub coalgebra: Coalgebra,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hopf {
    pub bialgebra: Bialgebra,
    pub antipode: LinMap,
}

fn sig(m: &LinMap, dom: &[&Space], cod: &[&Space]) -> Result<()> {
    let d: Vec<Space> = dom.iter().map(|s| (*s).clone()).collect();
    let c: Vec<Space> = cod.iter().map(|s| (*s).clone()).collect();
    check_spaces(&d, m.domain())?;
    check_spaces(&c, m.codomain())
}

impl Algebra {
    pub fn new(space: Space, mult: LinMap, unit: LinMap) -> Result<Algebra> {
        sig(&mult, &[&space, &space], &[&space])?;
        sig(&unit, &[], &[&space])?;
        Ok(Algebra { space, mult, unit })
    }

    pub fn field(&self) -> Field {
        self.mult.field()
    }

    /// Unit map sending 1 to the distinguished basis element.
    pub fn unit_at(space: &Space, field: Field) -> Result<LinMap> {
        let one = space.one_index()?;
        Ok(Tensor::from_columns(vec![], vec![space.clone()], field, |_| vec![(vec![one], field.one())]))
    }

    pub fn check_assoc(&self) -> Result<ConditionReport> {
        let m = SparseMap::new(&self.mult);
        let v = &self.space;
        check_on_basis(
            "assoc",
            self.field(),
            &[v.clone(), v.clone(), v.clone()],
            |e| e.apply(&m, 0)?.apply(&m, 0),
            |e| e.apply(&m, 1)?.apply(&m, 0),
        )
    }

    pub fn check_unit(&self) -> Result<ConditionReport> {
        let m = SparseMap::new(&self.mult);
        let one = unit_elem(&self.unit)?;
        let f = self.field();
        let left = check_on_basis("unit", f, std::slice::from_ref(&self.space), |e| one.tensor(e).apply(&m, 0), |e| Ok(e.clone()))?;
        if !left.passed() {
            return Ok(left);
        }
        check_on_basis("unit", f, std::slice::from_ref(&self.space), |e| e.tensor(&one).apply(&m, 0), |e| Ok(e.clone()))
    }

    pub fn check(&self) -> Result<Vec<ConditionReport>> {
        Ok(vec![self.check_assoc()?, self.check_unit()?])
    }
}

/// The element `η(1)`.
fn unit_elem(unit: &LinMap) -> Result<Elem> {
    let s = Elem::basis(unit.field(), vec![], vec![]);
    s.apply(&SparseMap::new(unit), 0)
}

impl Coalgebra {
    pub fn new(space: Space, comult: LinMap, counit: LinMap) -> Result<Coalgebra> {
        sig(&comult, &[&space], &[&space, &space])?;
        sig(&counit, &[&space], &[])?;
        Ok(Coalgebra { space, comult, counit })
    }

    pub fn field(&self) -> Field {
        self.comult.field()
    }

    pub fn check_coassoc(&self) -> Result<ConditionReport> {
        let d = SparseMap::new(&self.comult);
        check_on_basis(
            "coassoc",
            self.field(),
            std::slice::from_ref(&self.space),
            |e| e.apply(&d, 0)?.apply(&d, 0),
            |e| e.apply(&d, 0)?.apply(&d, 1),
        )
    }

    pub fn check_counit(&self) -> Result<ConditionReport> {
        let d = SparseMap::new(&self.comult);
        let c = SparseMap::new(&self.counit);
        let f = self.field();
        let v = [self.space.clone()];
        let left = check_on_basis("counit", f, &v, |e| e.apply(&d, 0)?.apply(&c, 0), |e| Ok(e.clone()))?;
        if !left.passed() {
            return Ok(left);
        }
        check_on_basis("counit", f, &v, |e| e.apply(&d, 0)?.apply(&c, 1), |e| Ok(e.clone()))
    }

    /// `Δ(1) = 1 ⊗ 1` and `ε(1) = 1` for the distinguished element.
    pub fn check_one(&self) -> Result<ConditionReport> {
        let Some(one) = self.space.one else {
            return Ok(ConditionReport::skipped("one", "no distinguished element"));
        };
        let f = self.field();
        let e = Elem::basis(f, vec![self.space.clone()], vec![one]);
        let d = e.apply(&SparseMap::new(&self.comult), 0)?;
        let want = Elem::basis(f, vec![self.space.clone(), self.space.clone()], vec![one, one]);
        if d != want {
            return Ok(ConditionReport::fail("one", None, Some(format!("Δ(1) = {}", d.render()))));
        }
        let c = e.apply(&SparseMap::new(&self.counit), 0)?;
        if c != Elem::basis(f, vec![], vec![]) {
            return Ok(ConditionReport::fail("one", None, Some(format!("ε(1) = {}", c.render()))));
        }
        Ok(ConditionReport::pass("one"))
    }

    pub fn check(&self) -> Result<Vec<ConditionReport>> {
        let mut out = vec![self.check_coassoc()?, self.check_counit()?];
        if self.space.one.is_some() {
            out.push(self.check_one()?);
        }
        Ok(out)
    }
}

/// `Δ(xy) = Δ(x)Δ(y)`, `ε(xy) = ε(x)ε(y)`, `Δ(1) = 1⊗1`, `ε(1) = 1`, checked
/// on the given maps; the carrier need not be associative.
pub fn check_compatibility(alg: &Algebra, coalg: &Coalgebra) -> Result<ConditionReport> {
    check_spaces(std::slice::from_ref(&alg.space), std::slice::from_ref(&coalg.space))?;
    let f = alg.field();
    let v = alg.space.clone();
    let m = SparseMap::new(&alg.mult);
    let d = SparseMap::new(&coalg.comult);
    let c = SparseMap::new(&coalg.counit);
    let pair = [v.clone(), v.clone()];
    let r = check_on_basis(
        "bialg",
        f,
        &pair,
        |e| e.apply(&m, 0)?.apply(&d, 0),
        |e| {
            // Δx ⊗ Δy = x1 x2 y1 y2 -> x1 y1 x2 y2, then multiply pairwise.
            e.apply(&d, 0)?.apply(&d, 2)?.permute(&[0, 2, 1, 3]).apply(&m, 0)?.apply(&m, 1)
        },
    )?;
    if !r.passed() {
        return Ok(r);
    }
    let r = check_on_basis("bialg", f, &pair, |e| e.apply(&m, 0)?.apply(&c, 0), |e| e.apply(&c, 0)?.apply(&c, 0))?;
    if !r.passed() {
        return Ok(r);
    }
    let one = unit_elem(&alg.unit)?;
    let d1 = one.apply(&d, 0)?;
    if d1 != one.tensor(&one) {
        return Ok(ConditionReport::fail("bialg", None, Some(format!("Δ(1) = {}", d1.render()))));
    }
    let c1 = one.apply(&c, 0)?;
    if c1 != Elem::basis(f, vec![], vec![]) {
        return Ok(ConditionReport::fail("bialg", None, Some(format!("ε(1) = {}", c1.render()))));
    }
    Ok(ConditionReport::pass("bialg"))
}

/// `S ∗ id = id ∗ S = η∘ε` on every basis element.
pub fn check_antipode(alg: &Algebra, coalg: &Coalgebra, s: &LinMap) -> Result<ConditionReport> {
    let f = alg.field();
    let v = [alg.space.clone()];
    let m = SparseMap::new(&alg.mult);
    let d = SparseMap::new(&coalg.comult);
    let c = SparseMap::new(&coalg.counit);
    let sm = SparseMap::new(s);
    let one = unit_elem(&alg.unit)?;
    let target = |e: &Elem| -> Result<Elem> {
        let k = e.apply(&c, 0)?;
        Ok(k.tensor(&one))
    };
    let r = check_on_basis("antipode", f, &v, |e| e.apply(&d, 0)?.apply(&sm, 1)?.apply(&m, 0), target)?;
    if !r.passed() {
        return Ok(r);
    }
    check_on_basis("antipode", f, &v, |e| e.apply(&d, 0)?.apply(&sm, 0)?.apply(&m, 0), target)
}

impl Bialgebra {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra) -> Result<Bialgebra> {
        check_spaces(std::slice::from_ref(&algebra.space), std::slice::from_ref(&coalgebra.space))?;
        Ok(Bialgebra { algebra, coalgebra })
    }

    pub fn space(&self) -> &Space {
        &self.algebra.space
    }

    pub fn check(&self) -> Result<Vec<ConditionReport>> {
        let mut out = self.algebra.check()?;
        out.extend(self.coalgebra.check()?);
        out.push(check_compatibility(&self.algebra, &self.coalgebra)?);
        Ok(out)
    }
}

impl Hopf {
    pub fn new(bialgebra: Bialgebra, antipode: LinMap) -> Result<Hopf> {
        let v = bialgebra.space().clone();
        sig(&antipode, &[&v], &[&v])?;
        Ok(Hopf { bialgebra, antipode })
    }

    pub fn space(&self) -> &Space {
        self.bialgebra.space()
    }

    pub fn check(&self) -> Result<Vec<ConditionReport>> {
        let mut out = self.bialgebra.check()?;
        out.push(check_antipode(&self.bialgebra.algebra, &self.bialgebra.coalgebra, &self.antipode)?);
        Ok(out)
    }
}

/// Group Hopf algebra from a Cayley table `table[g][h] = gh`.
pub fn group_algebra(name: &str, labels: Vec<String>, table: &[Vec<usize>], field: Field) -> Result<Hopf> {
    let n = labels.len();
    let bad = |m: String| Error::Infeasible(format!("not a group: {m}"));
    if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(bad("table must be a square over the labels".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| bad("no identity".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(bad(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
    }
    let inv: Vec<usize> = (0..n)
        .map(|g| (0..n).find(|&h| table[g][h] == e).ok_or_else(|| bad(format!("{} has no inverse", labels[g]))))
        .collect::<Result<_>>()?;
    let v = Space::new(name, labels, Some(e))?;
    let one = field.one();
    let mult = Tensor::from_columns(vec![v.clone(), v.clone()], vec![v.clone()], field, |i| {
        vec![(vec![table[i[0]][i[1]]], one.clone())]
    });
    let unit = Algebra::unit_at(&v, field)?;
    let comult = Tensor::from_columns(vec![v.clone()], vec![v.clone(), v.clone()], field, |i| {
        vec![(vec![i[0], i[0]], one.clone())]
    });
    let counit = Tensor::from_columns(vec![v.clone()], vec![], field, |_| vec![(vec![], one.clone())]);
    let s = Tensor::from_columns(vec![v.clone()], vec![v.clone()], field, |i| vec![(vec![inv[i[0]]], one.clone())]);
    Hopf::new(
        Bialgebra::new(Algebra::new(v.clone(), mult, unit)?, Coalgebra::new(v, comult, counit)?)?,
        s,
    )
}

/// Cyclic group `C_n` with labels `1, g, g^2, ...` over a generator name.
pub fn cyclic_group(name: &str, generator: &str, n: usize, field: Field) -> Result<Hopf> {
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => generator.to_string(),
            k => format!("{generator}^{k}"),
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    group_algebra(name, labels, &table, field)
}

impl StructureBundle {
    pub fn set_algebra(&mut self, role: Role, a: &Algebra) -> Result<()> {
        self.set_space(role, a.space.clone());
        self.set_map(&format!("mult_{role}"), a.mult.clone())?;
        self.set_map(&format!("unit_{role}"), a.unit.clone())
    }

    pub fn set_coalgebra(&mut self, role: Role, c: &Coalgebra) -> Result<()> {
        self.set_space(role, c.space.clone());
        self.set_map(&format!("comult_{role}"), c.comult.clone())?;
        self.set_map(&format!("counit_{role}"), c.counit.clone())
    }

    pub fn set_hopf(&mut self, role: Role, h: &Hopf) -> Result<()> {
        self.set_algebra(role, &h.bialgebra.algebra)?;
        self.set_coalgebra(role, &h.bialgebra.coalgebra)?;
        self.set_map(&format!("S_{role}"), h.antipode.clone())
    }

    pub fn algebra(&self, role: Role) -> Result<Algebra> {
        Algebra::new(
            self.space_of(role)?.clone(),
            self.get(&format!("mult_{role}"))?.clone(),
            self.get(&format!("unit_{role}"))?.clone(),
        )
    }

    pub fn coalgebra(&self, role: Role) -> Result<Coalgebra> {
        Coalgebra::new(
            self.space_of(role)?.clone(),
            self.get(&format!("comult_{role}"))?.clone(),
            self.get(&format!("counit_{role}"))?.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn cyclic_groups_are_hopf() {
        let f = Field::Rational;
        for n in [1, 2, 4] {
            let h = cyclic_group("K", "x", n, f).unwrap();
            assert!(h.check().unwrap().iter().all(|r| r.passed()), "C{n}");
        }
        let c4 = cyclic_group("A", "x", 4, f).unwrap();
        let s = &c4.antipode;
        assert_eq!(s.column(&[1]), vec![(vec![3], f.one())]);
    }

    #[test]
    fn zeroed_entry_breaks_assoc_at_xxx() {
        let f = Field::Rational;
        let mut c4 = cyclic_group("A", "x", 4, f).unwrap().bialgebra.algebra;
        c4.mult.set(&[2], &[1, 1], f.zero());
        let r = c4.check_assoc().unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.unwrap();
        // At (x, x, x) both sides vanish; the first failure is one step later.
        assert_eq!(w.input, vec!["x", "x", "x^2"]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("0", "1"));
    }

    #[test]
    fn non_group_rejected() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(group_algebra("X", vec!["e".into(), "z".into()], &t, Field::Rational).is_err());
    }

    #[test]
    fn wrong_antipode_fails() {
        let f = Field::Rational;
        let c4 = cyclic_group("A", "x", 4, f).unwrap();
        let id = Tensor::identity(c4.space(), f);
        let r = check_antipode(&c4.bialgebra.algebra, &c4.bialgebra.coalgebra, &id).unwrap();
        assert_eq!(r.witness.unwrap().input, vec!["x"]);
    }
}
