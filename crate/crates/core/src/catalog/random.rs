//! Seeded random bundles with selected prerequisites holding by construction.
//!
//! Normalization conditions are imposed directly: the affected columns are
//! copied from the trivial map. Multiplicative hypotheses (measuring,
//! module, comodule coalgebra) are met by sampling structured candidates
//! and keeping the first that satisfies them, with the trivial map as the
//! fallback, so every enforced item holds on the output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bundle::StructureBundle;
use crate::conditions::gates;
use crate::error::{Error, Result};
use crate::products::{eval_formula, lifts};
use crate::scalar::{Field, Scalar};
use crate::space::{Role, Space};
use crate::structures::{cyclic_group, group_algebra, Algebra, Bialgebra, Coalgebra, Hopf};
use crate::tensor::{multi_indices, LinMap, Tensor};

use super::trivial_bundle;

/// Items `random_bundle` knows how to enforce.
pub const ENFORCEABLE: &[&str] = &[
    "LB1", "LB2", "LB3", "LTC3", "LC2", "LC3", "LU1", "RB1", "RB2", "RB3", "RTC2", "RC2", "RC3", "RU1", "J1",
    "eps_tau", "weak_l", "weak_r", "module_l", "module_r", "comod_l", "comod_r", "sigma_trivial", "tau_trivial",
    "act_l_trivial", "act_r_trivial", "coact_l_trivial", "coact_r_trivial",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub dims: [usize; 3],
    pub field: Field,
    pub seed: u64,
    pub enforce: Vec<String>,
}

impl RandomSpec {
    pub fn new(dims: [usize; 3], field: Field, seed: u64, enforce: &[&str]) -> RandomSpec {
        RandomSpec {
            dims,
            field,
            seed,
            enforce: enforce.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// The enforcement list covering a gate's prerequisites.
    pub fn for_gate(gate: &str, dims: [usize; 3], field: Field, seed: u64) -> Result<RandomSpec> {
        Ok(RandomSpec {
            dims,
            field,
            seed,
            enforce: enforcement_for_gate(gate)?,
        })
    }

    fn wants(&self, item: &str) -> bool {
        self.enforce.iter().any(|e| e == item)
    }
}

/// Maps a gate's prerequisite items to enforceable names.
pub fn enforcement_for_gate(gate: &str) -> Result<Vec<String>> {
    let g = gates::find_gate(gate).ok_or_else(|| Error::UnknownId(gate.to_string()))?;
    let mut out: Vec<String> = vec![];
    for p in &g.prerequisites {
        let name = p.split(':').next().unwrap_or(p).trim();
        let item = if let Some(rest) = name.strip_prefix("weak_") {
            format!("weak_{}", &rest[..1])
        } else if let Some(rest) = name.strip_prefix("comod_") {
            format!("comod_{}", &rest[..1])
        } else {
            name.to_string()
        };
        if !ENFORCEABLE.contains(&item.as_str()) {
            return Err(Error::Infeasible(format!(
                "gate {gate}: prerequisite {item} cannot be enforced by construction"
            )));
        }
        if !out.contains(&item) {
            out.push(item);
        }
    }
    Ok(out)
}

/// `K[t]/(t^2)` with `t` primitive; a Hopf algebra in characteristic 2.
pub fn dual_numbers(name: &str, field: Field) -> Result<Hopf> {
    if field != Field::Prime(2) {
        return Err(Error::Infeasible("dual numbers with t primitive need characteristic 2".into()));
    }
    let v = Space::new(name, vec!["1".into(), "t".into()], Some(0))?;
    let one = field.one();
    let mult = Tensor::from_columns(vec![v.clone(), v.clone()], vec![v.clone()], field, |i| match (i[0], i[1]) {
        (1, 1) => vec![],
        (p, q) => vec![(vec![p + q], one.clone())],
    });
    let comult = Tensor::from_columns(vec![v.clone()], vec![v.clone(), v.clone()], field, |i| match i[0] {
        0 => vec![(vec![0, 0], one.clone())],
        _ => vec![(vec![1, 0], one.clone()), (vec![0, 1], one.clone())],
    });
    let counit = Tensor::from_columns(vec![v.clone()], vec![], field, |i| {
        if i[0] == 0 {
            vec![(vec![], one.clone())]
        } else {
            vec![]
        }
    });
    let s = Tensor::identity(&v, field);
    Hopf::new(
        Bialgebra::new(
            Algebra::new(v.clone(), mult, Algebra::unit_at(&v, field)?)?,
            Coalgebra::new(v, comult, counit)?,
        )?,
        s,
    )
}

/// Hopf algebras of a given dimension available over `field`.
pub fn hopf_pool(dim: usize, field: Field, name: &str) -> Result<Vec<Hopf>> {
    let mut v = vec![cyclic_group(name, "g", dim, field)?];
    if dim == 2 && field == Field::Prime(2) {
        v.push(dual_numbers(name, field)?);
    }
    if dim == 4 {
        let table: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        let labels = ["1", "u", "v", "uv"].iter().map(|s| s.to_string()).collect();
        v.push(group_algebra(name, labels, &table, field)?);
    }
    Ok(v)
}

fn rand_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => field.from_i64(rng.gen_range(-2..=2)),
    }
}

/// Every entry uniform.
fn rand_dense(shape: &LinMap, rng: &mut ChaCha8Rng) -> LinMap {
    let f = shape.field();
    let cod = shape.codomain_dims();
    Tensor::from_columns(shape.domain().to_vec(), shape.codomain().to_vec(), f, |_| {
        multi_indices(&cod).map(|o| (o, rand_scalar(f, rng))).collect()
    })
}

/// Every column a single random basis vector.
fn rand_basis(shape: &LinMap, rng: &mut ChaCha8Rng) -> LinMap {
    let f = shape.field();
    let cod = shape.codomain_dims();
    Tensor::from_columns(shape.domain().to_vec(), shape.codomain().to_vec(), f, |_| {
        vec![(cod.iter().map(|&d| rng.gen_range(0..d)).collect(), f.one())]
    })
}

/// Copies from `base` every column whose input has the distinguished
/// element on one of `legs`.
fn normalize(m: &LinMap, base: &LinMap, legs: &[usize]) -> Result<LinMap> {
    let ones: Vec<Option<usize>> = m.domain().iter().map(|s| s.one).collect();
    let cod = m.codomain_dims();
    let mut out = m.clone();
    for input in multi_indices(&m.domain_dims()) {
        if legs.iter().any(|&l| ones[l] == Some(input[l])) {
            for o in multi_indices(&cod) {
                out.set(&o, &input, base.entry(&o, &input).clone());
            }
        }
    }
    Ok(out)
}

/// Adjusts the coefficient of the unit so that `eps` of every column equals
/// the product of the counits of the inputs.
fn fix_counit(b: &StructureBundle, m: &LinMap, target: Role) -> Result<LinMap> {
    let eps_t = b.get(&format!("counit_{target}"))?;
    let one = b.space_of(target)?.one_index()?;
    let counits: Vec<&LinMap> = m
        .domain()
        .iter()
        .map(|s| {
            let r = Role::parse(&s.name).ok_or_else(|| Error::Space(format!("space {} has no role", s.name)))?;
            b.get(&format!("counit_{r}"))
        })
        .collect::<Result<_>>()?;
    let mut out = m.clone();
    let f = b.field;
    for input in multi_indices(&m.domain_dims()) {
        let mut want = f.one();
        for (k, &i) in input.iter().enumerate() {
            want = want.mul_ref(counits[k].entry(&[], &[i]));
        }
        let mut have = f.zero();
        for o in 0..m.codomain_dims()[0] {
            have.add_product(m.entry(&[o], &input), eps_t.entry(&[], &[o]));
        }
        let delta = want.add_ref(&have.neg_ref());
        let cur = out.entry(&[one], &input).add_ref(&delta);
        out.set(&[one], &input, cur);
    }
    Ok(out)
}

fn holds(b: &StructureBundle, items: &[&str]) -> Result<bool> {
    for it in items {
        if !gates::check_item(it, b)?.passed() {
            return Ok(false);
        }
    }
    Ok(true)
}

type Dense = Vec<Scalar>;

fn one_hot(f: Field, dim: usize, i: usize) -> Dense {
    let mut v = vec![f.zero(); dim];
    v[i] = f.one();
    v
}

/// `m` applied to dense vectors, one per input leg.
fn apply_dense(m: &LinMap, args: &[&Dense]) -> Dense {
    let f = m.field();
    let mut out = vec![f.zero(); m.codomain_dims()[0]];
    for input in multi_indices(&m.domain_dims()) {
        let mut c = f.one();
        for (k, &i) in input.iter().enumerate() {
            c = c.mul_ref(&args[k][i]);
        }
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().enumerate() {
            v.add_product(&c, m.entry(&[o], &input));
        }
    }
    out
}

/// Basis indices `g` with `Δ(g) = g % g`, if the whole basis is group-like.
fn grouplike_basis(b: &StructureBundle, role: Role) -> Result<Option<Vec<usize>>> {
    let d = b.get(&format!("comult_{role}"))?;
    let n = d.domain_dims()[0];
    for g in 0..n {
        let col = d.column(&[g]);
        if col.len() != 1 || col[0].0 != vec![g, g] || !col[0].1.is_one() {
            return Ok(None);
        }
    }
    Ok(Some((0..n).collect()))
}

/// Invertible elements with known inverses: group-likes, and `1 + e` for
/// basis elements with `e e = 0`.
fn units(b: &StructureBundle, role: Role) -> Result<Vec<(Dense, Dense)>> {
    let f = b.field;
    let mult = b.get(&format!("mult_{role}"))?;
    let comult = b.get(&format!("comult_{role}"))?;
    let s = b.get(&format!("S_{role}"))?;
    let n = mult.codomain_dims()[0];
    let one = b.space_of(role)?.one_index()?;
    let mut out = vec![];
    for e in 0..n {
        let col = comult.column(&[e]);
        let v = one_hot(f, n, e);
        if col.len() == 1 && col[0].0 == vec![e, e] && col[0].1.is_one() {
            out.push((v.clone(), apply_dense(s, &[&v])));
        } else if e != one && apply_dense(mult, &[&v, &v]).iter().all(|c| c.is_zero()) {
            let mut u = one_hot(f, n, one);
            let mut w = u.clone();
            u[e] = f.one();
            w[e] = f.one().neg_ref();
            out.push((u, w));
        }
    }
    Ok(out)
}

const TRIES: usize = 40;

struct Gen {
    rng: ChaCha8Rng,
    b: StructureBundle,
    trivial: StructureBundle,
}

impl Gen {
    fn pick<T: Copy>(&mut self, options: &[T]) -> T {
        *options.choose(&mut self.rng).expect("nonempty options")
    }

    fn set(&mut self, name: &str, m: LinMap) -> Result<()> {
        self.b.set_map(name, m)
    }

    fn base(&self, name: &str) -> Result<LinMap> {
        Ok(self.trivial.get(name)?.clone())
    }

    /// A random map normalized on `legs`, mixing dense and basis columns.
    fn normalized(&mut self, name: &str, legs: &[usize]) -> Result<LinMap> {
        let base = self.base(name)?;
        let raw = if self.rng.gen_bool(0.5) {
            rand_basis(&base, &mut self.rng)
        } else {
            rand_dense(&base, &mut self.rng)
        };
        normalize(&raw, &base, legs)
    }

    /// Samples normalized candidates for `name` until `items` hold.
    fn sample(&mut self, name: &str, legs: &[usize], items: &[&str]) -> Result<bool> {
        for _ in 0..TRIES {
            let m = self.normalized(name, legs)?;
            self.set(name, m)?;
            if holds(&self.b, items)? {
                return Ok(true);
            }
        }
        let base = self.base(name)?;
        self.set(name, base)?;
        Ok(false)
    }

    fn cocycle(&mut self, name: &str, target: Role, normal: bool, counit: bool, trivial: bool) -> Result<()> {
        let mode = if trivial {
            "trivial"
        } else if normal {
            self.pick(&["trivial", "normal", "normal"])
        } else {
            self.pick(&["trivial", "normal", "raw"])
        };
        let mut m = match mode {
            "trivial" => self.base(name)?,
            "normal" => self.normalized(name, &[0, 1])?,
            _ => rand_dense(&self.base(name)?, &mut self.rng),
        };
        if counit {
            m = fix_counit(&self.b, &m, target)?;
        }
        self.set(name, m)
    }

    /// Action `name` on the algebra `target`: trivial, measuring, module,
    /// normalized or raw. Returns whether it is known to measure.
    fn action(&mut self, name: &str, module: &str, enforce_weak: bool, enforce_module: bool, trivial: bool) -> Result<bool> {
        let (h_leg, t_leg) = if name == "act_l" { (0, 1) } else { (1, 0) };
        let mut weak_items: Vec<&str> = gates::WEAK_LEFT.to_vec();
        if name == "act_r" {
            weak_items = gates::WEAK_RIGHT.to_vec();
        }
        let mode = if trivial {
            "trivial"
        } else if enforce_module {
            self.pick(&["trivial", "module", "module"])
        } else if enforce_weak {
            self.pick(&["trivial", "weak", "weak", "module"])
        } else {
            self.pick(&["trivial", "weak", "module", "normal", "raw"])
        };
        match mode {
            "trivial" => {
                let m = self.base(name)?;
                self.set(name, m)?;
                Ok(true)
            }
            "weak" => {
                self.sample(name, &[h_leg, t_leg], &weak_items)?;
                Ok(true)
            }
            "module" => {
                let mut items = weak_items.clone();
                items.push(module);
                self.sample(name, &[h_leg, t_leg], &items)?;
                Ok(true)
            }
            "normal" => {
                let m = self.normalized(name, &[h_leg, t_leg])?;
                self.set(name, m)?;
                Ok(false)
            }
            _ => {
                let m = rand_dense(&self.base(name)?, &mut self.rng);
                self.set(name, m)?;
                Ok(false)
            }
        }
    }

    fn coaction(&mut self, name: &str, items: &[&str], enforce: bool, trivial: bool) -> Result<()> {
        let leg = [0];
        let mode = if trivial {
            "trivial"
        } else if enforce {
            self.pick(&["trivial", "comodule", "comodule"])
        } else {
            self.pick(&["trivial", "comodule", "normal"])
        };
        match mode {
            "trivial" => {
                let m = self.base(name)?;
                self.set(name, m)
            }
            "comodule" => self.sample(name, &leg, items).map(|_| ()),
            _ => {
                let m = self.normalized(name, &leg)?;
                self.set(name, m)
            }
        }
    }

    /// A coboundary cocycle over a group-like basis of `H`: on the left
    /// `μ(g) (g |> μ(h)) μ(gh)^-1`, on the right `ν(gh)^-1 (ν(g) <| h) ν(h)`,
    /// with `μ`, `ν` random units and `μ(1) = ν(1) = 1`.
    fn coboundary(&mut self, left: bool) -> Result<Option<LinMap>> {
        let (target, name, act) = if left { (Role::A, "sigma", "act_l") } else { (Role::B, "tau", "act_r") };
        let Some(basis) = grouplike_basis(&self.b, Role::H)? else {
            return Ok(None);
        };
        let us = units(&self.b, target)?;
        if us.is_empty() {
            return Ok(None);
        }
        let f = self.b.field;
        let one_h = self.b.space_of(Role::H)?.one_index()?;
        let one_t = self.b.space_of(target)?.one_index()?;
        let n = self.b.space_of(target)?.dim();
        let mut mu: Vec<(Dense, Dense)> = vec![];
        for g in &basis {
            if *g == one_h {
                let u = one_hot(f, n, one_t);
                mu.push((u.clone(), u));
            } else {
                mu.push(us[self.rng.gen_range(0..us.len())].clone());
            }
        }
        let mult_h = self.b.get("mult_H")?.clone();
        let mult_t = self.b.get(&format!("mult_{target}"))?.clone();
        let action = self.b.get(act)?.clone();
        let h_dim = basis.len();
        let prod = |g: usize, h: usize| -> usize {
            let col = mult_h.column(&[g, h]);
            col[0].0[0]
        };
        let base = self.base(name)?;
        let mut m = base.clone();
        for g in 0..h_dim {
            for h in 0..h_dim {
                let gh = prod(g, h);
                let hv = one_hot(f, h_dim, h);
                let gv = one_hot(f, h_dim, g);
                let v = if left {
                    let acted = apply_dense(&action, &[&gv, &mu[h].0]);
                    let t = apply_dense(&mult_t, &[&mu[g].0, &acted]);
                    apply_dense(&mult_t, &[&t, &mu[gh].1])
                } else {
                    let acted = apply_dense(&action, &[&mu[g].0, &hv]);
                    let t = apply_dense(&mult_t, &[&mu[gh].1, &acted]);
                    apply_dense(&mult_t, &[&t, &mu[h].0])
                };
                for (o, c) in v.into_iter().enumerate() {
                    m.set(&[o], &[g, h], c);
                }
            }
        }
        Ok(Some(m))
    }

    /// Cocycle and action on one side making the crossed product on that side
    /// normalized and associative.
    fn algebra_side(&mut self, left: bool, extra: &[&str]) -> Result<()> {
        let name = if left { "sigma" } else { "tau" };
        let mut items: Vec<&str> = if left { gates::LEFT_ALGEBRA.to_vec() } else { gates::RIGHT_ALGEBRA.to_vec() };
        items.extend_from_slice(extra);
        if self.pick(&[false, true, true]) {
            if let Some(m) = self.coboundary(left)? {
                self.set(name, m)?;
                if holds(&self.b, &items)? {
                    return Ok(());
                }
            }
        }
        let base = self.base(name)?;
        self.set(name, base)?;
        if !holds(&self.b, &items)? {
            let act = if left { "act_l" } else { "act_r" };
            let base = self.base(act)?;
            self.set(act, base)?;
        }
        Ok(())
    }

    /// Reverts `name` to the trivial map if an enforced item among `items`
    /// fails.
    fn settle(&mut self, name: &str, items: &[&str], enforce: &[String]) -> Result<()> {
        let wanted: Vec<&str> = items.iter().copied().filter(|i| enforce.iter().any(|e| e == i)).collect();
        if !holds(&self.b, &wanted)? {
            let base = self.base(name)?;
            self.set(name, base)?;
        }
        Ok(())
    }

    fn formula(&mut self, name: &str, text: &str, order: &[&str]) -> Result<()> {
        let m = eval_formula(&self.b, text, order)?;
        self.set(name, m)
    }
}

/// A deterministic bundle for `spec`; every enforced item is verified before
/// returning.
pub fn random_bundle(spec: &RandomSpec) -> Result<StructureBundle> {
    if let Field::Rational = spec.field {
        return Err(Error::Infeasible("random bundles are generated over F_p only".into()));
    }
    if spec.dims.iter().any(|&d| d == 0 || d > 4) {
        return Err(Error::Infeasible(format!("dims {:?} must lie in 1..=4", spec.dims)));
    }
    for e in &spec.enforce {
        if !ENFORCEABLE.contains(&e.as_str()) {
            return Err(Error::Infeasible(format!("cannot enforce `{e}`")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut hopfs = vec![];
    for (k, role) in Role::ALL.iter().enumerate() {
        let pool = hopf_pool(spec.dims[k], spec.field, role.name())?;
        hopfs.push(pool.choose(&mut rng).expect("pool is nonempty").clone());
    }
    let trivial = trivial_bundle(&hopfs[0], &hopfs[1], &hopfs[2])?;
    let mut g = Gen {
        rng,
        b: trivial.clone(),
        trivial,
    };
    let w = |s: &str| spec.wants(s);

    let left_alg = w("LC2") || w("LC3");
    let right_alg = w("RC2") || w("RC3");
    let act_l_weak = g.action(
        "act_l",
        gates::MODULE_LEFT,
        w("weak_l") || w("LB2"),
        w("module_l") || w("LC3"),
        w("act_l_trivial"),
    )?;
    let act_r_weak = g.action(
        "act_r",
        gates::MODULE_RIGHT,
        w("weak_r") || w("RB2"),
        w("module_r") || w("RC3"),
        w("act_r_trivial"),
    )?;
    for (name, legs) in [("lu_tr", [0usize, 1]), ("ru_tl", [0, 1])] {
        let mode = if w("LU1") || w("RU1") {
            g.pick(&["trivial", "normal"])
        } else {
            g.pick(&["trivial", "normal", "raw"])
        };
        let m = match mode {
            "trivial" => g.base(name)?,
            "normal" => g.normalized(name, &legs)?,
            _ => rand_dense(&g.base(name)?, &mut g.rng),
        };
        g.set(name, m)?;
    }
    g.coaction("coact_l", &gates::COMODULE_LEFT, w("comod_l"), w("coact_l_trivial"))?;
    g.coaction("coact_r", &gates::COMODULE_RIGHT, w("comod_r"), w("coact_r_trivial"))?;
    if left_alg && !w("sigma_trivial") {
        g.algebra_side(true, if w("J1") { &["J1"] } else { &[] })?;
    } else {
        g.cocycle("sigma", Role::A, w("LTC3") || w("LB3"), w("J1"), w("sigma_trivial"))?;
    }
    if right_alg && !w("tau_trivial") {
        g.algebra_side(false, if w("eps_tau") { &[gates::EPS_TAU] } else { &[] })?;
    } else {
        g.cocycle("tau", Role::B, w("RTC2") || w("RB3"), w("eps_tau"), w("tau_trivial"))?;
    }
    if left_alg {
        g.settle("act_l", &["LC3"], &spec.enforce)?;
    }
    if right_alg {
        g.settle("act_r", &["RC3"], &spec.enforce)?;
    }

    // G: trivial, from sigma, normalized, raw.
    let sigma_normal = holds(&g.b, &["LTC3"])?;
    let mut g_modes = vec!["trivial", "normal"];
    if sigma_normal || !w("LB3") {
        g_modes.push("sigma");
    }
    if !w("LB3") {
        g_modes.push("raw");
    }
    match g.pick(&g_modes) {
        "trivial" => {}
        "sigma" => g.formula("G", lifts::G_FROM_SIGMA, &["x", "x'"])?,
        "normal" => {
            let m = g.normalized("G", &[0, 1])?;
            g.set("G", m)?;
        }
        _ => {
            let m = rand_dense(&g.base("G")?, &mut g.rng);
            g.set("G", m)?;
        }
    }
    g.settle("G", &["LB3"], &spec.enforce)?;
    // R: trivial, crossed, unified, normalized, raw.
    let mut r_modes = vec!["trivial"];
    if act_l_weak {
        r_modes.extend(["crossed", "crossed"]);
    }
    if !w("LB2") {
        r_modes.extend(["normal", "unified"]);
        if !w("LB1") {
            r_modes.push("raw");
        }
    }
    match g.pick(&r_modes) {
        "trivial" => {}
        "crossed" => g.formula("R", lifts::R_CROSSED, &["x", "a"])?,
        "unified" => g.formula("R", lifts::R_UNIFIED, &["x", "a"])?,
        "normal" => {
            let m = g.normalized("R", &[0, 1])?;
            g.set("R", m)?;
        }
        _ => {
            let m = rand_dense(&g.base("R")?, &mut g.rng);
            g.set("R", m)?;
        }
    }
    g.settle("R", &["LB1", "LB2"], &spec.enforce)?;
    // T mirrors R.
    let mut t_modes = vec!["trivial"];
    if act_r_weak {
        t_modes.extend(["crossed", "crossed"]);
    }
    if !w("RB2") {
        t_modes.extend(["normal", "unified"]);
        if !w("RB1") {
            t_modes.push("raw");
        }
    }
    match g.pick(&t_modes) {
        "trivial" => {}
        "crossed" => g.formula("T", lifts::T_CROSSED, &["b", "x"])?,
        "unified" => g.formula("T", lifts::T_UNIFIED, &["b", "x"])?,
        "normal" => {
            let m = g.normalized("T", &[0, 1])?;
            g.set("T", m)?;
        }
        _ => {
            let m = rand_dense(&g.base("T")?, &mut g.rng);
            g.set("T", m)?;
        }
    }
    g.settle("T", &["RB1", "RB2"], &spec.enforce)?;
    // F mirrors G.
    let tau_normal = holds(&g.b, &["RTC2"])?;
    let mut f_modes = vec!["trivial", "normal"];
    if tau_normal || !w("RB3") {
        f_modes.push("tau");
    }
    if !w("RB3") {
        f_modes.push("raw");
    }
    match g.pick(&f_modes) {
        "trivial" => {}
        "tau" => g.formula("F", lifts::F_FROM_TAU, &["x", "x'"])?,
        "normal" => {
            let m = g.normalized("F", &[0, 1])?;
            g.set("F", m)?;
        }
        _ => {
            let m = rand_dense(&g.base("F")?, &mut g.rng);
            g.set("F", m)?;
        }
    }
    g.settle("F", &["RB3"], &spec.enforce)?;

    let out = g.b;
    for e in &spec.enforce {
        let items: Vec<&str> = match e.as_str() {
            "weak_l" => gates::WEAK_LEFT.to_vec(),
            "weak_r" => gates::WEAK_RIGHT.to_vec(),
            "module_l" => vec![gates::MODULE_LEFT],
            "module_r" => vec![gates::MODULE_RIGHT],
            "comod_l" => gates::COMODULE_LEFT.to_vec(),
            "comod_r" => gates::COMODULE_RIGHT.to_vec(),
            "eps_tau" => vec![gates::EPS_TAU],
            "sigma_trivial" => vec![gates::SIGMA_TRIVIAL],
            "tau_trivial" => vec![gates::TAU_TRIVIAL],
            "act_l_trivial" => vec![gates::ACT_L_TRIVIAL],
            "act_r_trivial" => vec![gates::ACT_R_TRIVIAL],
            "coact_l_trivial" => vec![gates::COACT_L_TRIVIAL],
            "coact_r_trivial" => vec![gates::COACT_R_TRIVIAL],
            id => vec![id],
        };
        for it in items {
            let r = gates::check_item(it, &out)?;
            if !r.passed() {
                return Err(Error::Infeasible(format!(
                    "enforcement of {e} failed on seed {}: {}",
                    spec.seed,
                    r.witness.map(|w| w.to_string()).unwrap_or_default()
                )));
            }
        }
    }
    Ok(out)
}
