//! Tensor-network contraction.
//!
//! A plan labels every leg of every input tensor (in storage order: out legs,
//! then in legs). Labels not listed in the output are summed. A label may
//! appear on several legs, including twice on one tensor (a trace). The
//! result has the output labels in order, the first `n_codomain` as out legs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::space::Space;
use crate::tensor::{multi_indices, volume, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    pub legs: Vec<Vec<usize>>,
    pub output: Vec<usize>,
    pub n_codomain: usize,
    pub dims: BTreeMap<usize, usize>,
    /// Pairwise steps over SSA ids: inputs are `0..n`, step `k` creates `n + k`.
    pub steps: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
struct Dense {
    labels: Vec<usize>,
    dims: Vec<usize>,
    data: Vec<Scalar>,
}

impl ContractionPlan {
    /// Validates labels against `dims` and picks a greedy pairwise order by
    /// smallest intermediate.
    pub fn new(
        legs: Vec<Vec<usize>>,
        output: Vec<usize>,
        n_codomain: usize,
        dims: BTreeMap<usize, usize>,
    ) -> Result<ContractionPlan> {
        let mut plan = ContractionPlan {
            legs,
            output,
            n_codomain,
            dims,
            steps: vec![],
        };
        plan.validate()?;
        plan.steps = plan.greedy_steps();
        Ok(plan)
    }

    fn validate(&self) -> Result<()> {
        if self.n_codomain > self.output.len() {
            return Err(Error::Plan("codomain split beyond output length".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &self.output {
            if !seen.insert(*l) {
                return Err(Error::Plan(format!("output label {l} repeated")));
            }
            if !self.legs.iter().any(|t| t.contains(l)) {
                return Err(Error::Plan(format!("output label {l} is on no input leg")));
            }
        }
        for t in &self.legs {
            for l in t {
                if !self.dims.contains_key(l) {
                    return Err(Error::Plan(format!("label {l} has no dimension")));
                }
            }
        }
        Ok(())
    }

    fn label_set(&self) -> Vec<BTreeSet<usize>> {
        self.legs.iter().map(|t| t.iter().copied().collect()).collect()
    }

    fn kept(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>, others: &[&BTreeSet<usize>]) -> BTreeSet<usize> {
        a.union(b)
            .filter(|l| self.output.contains(l) || others.iter().any(|o| o.contains(l)))
            .copied()
            .collect()
    }

    fn size(&self, labels: &BTreeSet<usize>) -> usize {
        labels.iter().map(|l| self.dims[l]).product()
    }

    fn greedy_steps(&self) -> Vec<(usize, usize)> {
        let mut live: Vec<(usize, BTreeSet<usize>)> = self.label_set().into_iter().enumerate().collect();
        let mut next = live.len();
        let mut steps = vec![];
        while live.len() > 1 {
            let mut best: Option<(usize, bool, usize, usize, BTreeSet<usize>)> = None;
            for i in 0..live.len() {
                for j in i + 1..live.len() {
                    let others: Vec<&BTreeSet<usize>> = live
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, (_, s))| s)
                        .collect();
                    let kept = self.kept(&live[i].1, &live[j].1, &others);
                    let size = self.size(&kept);
                    // Prefer pairs that share a label over outer products.
                    let disjoint = live[i].1.is_disjoint(&live[j].1);
                    let key = (size, disjoint);
                    if best.as_ref().is_none_or(|b| (key.1, key.0) < (b.1, b.0)) {
                        best = Some((size, disjoint, i, j, kept));
                    }
                }
            }
            let (_, _, i, j, kept) = best.expect("at least one pair");
            steps.push((live[i].0, live[j].0));
            live.remove(j);
            live.remove(i);
            live.push((next, kept));
            next += 1;
        }
        steps
    }

    /// The same network with a random valid pairwise order.
    pub fn with_random_order(&self, seed: u64) -> ContractionPlan {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut live: Vec<usize> = (0..self.legs.len()).collect();
        let mut next = live.len();
        let mut steps = vec![];
        while live.len() > 1 {
            live.shuffle(&mut rng);
            let a = live.pop().unwrap();
            let b = live.pop().unwrap();
            steps.push((a, b));
            live.push(next);
            next += 1;
        }
        ContractionPlan {
            steps,
            ..self.clone()
        }
    }
}

fn to_dense(t: &Tensor, labels: &[usize]) -> Result<Dense> {
    let mut dims = t.codomain_dims();
    dims.extend(t.domain_dims());
    if dims.len() != labels.len() {
        return Err(Error::Plan(format!(
            "tensor has {} legs but the plan labels {}",
            dims.len(),
            labels.len()
        )));
    }
    Ok(Dense {
        labels: labels.to_vec(),
        dims,
        data: t.entries().to_vec(),
    })
}

impl Dense {
    /// Sums repeated labels into single legs and drops labels not in `keep`.
    fn reduce(&self, keep: &BTreeSet<usize>, field: Field) -> Dense {
        let mut labels: Vec<usize> = vec![];
        for l in &self.labels {
            if keep.contains(l) && !labels.contains(l) {
                labels.push(*l);
            }
        }
        if labels == self.labels {
            return self.clone();
        }
        let dims: Vec<usize> = labels
            .iter()
            .map(|l| self.dims[self.labels.iter().position(|x| x == l).unwrap()])
            .collect();
        let mut data = vec![field.zero(); volume(&dims)];
        let pos: Vec<usize> = labels
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l).unwrap())
            .collect();
        'entries: for (f, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = crate::tensor::unflatten(&self.dims, f);
            // Repeated labels must agree (diagonal).
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    if self.labels[a] == self.labels[b] && idx[a] != idx[b] {
                        continue 'entries;
                    }
                }
            }
            let o = pos.iter().fold(0, |acc, &p| acc * self.dims[p] + idx[p]);
            data[o] = data[o].add_ref(v);
        }
        Dense { labels, dims, data }
    }

    fn pair(&self, other: &Dense, keep: &BTreeSet<usize>, field: Field) -> Dense {
        let shared: Vec<usize> = self
            .labels
            .iter()
            .filter(|l| other.labels.contains(l))
            .copied()
            .collect();
        let mut labels: Vec<usize> = vec![];
        for l in self.labels.iter().chain(&other.labels) {
            if keep.contains(l) && !labels.contains(l) {
                labels.push(*l);
            }
        }
        let dim_of = |l: usize| {
            self.labels
                .iter()
                .position(|&x| x == l)
                .map(|p| self.dims[p])
                .unwrap_or_else(|| other.dims[other.labels.iter().position(|&x| x == l).unwrap()])
        };
        let dims: Vec<usize> = labels.iter().map(|&l| dim_of(l)).collect();
        let spos: Vec<usize> = shared.iter().map(|l| self.labels.iter().position(|x| x == l).unwrap()).collect();
        let opos: Vec<usize> = shared.iter().map(|l| other.labels.iter().position(|x| x == l).unwrap()).collect();

        let mut table: HashMap<Vec<usize>, Vec<(Vec<usize>, &Scalar)>> = HashMap::new();
        for (f, v) in other.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = crate::tensor::unflatten(&other.dims, f);
            let key = opos.iter().map(|&p| idx[p]).collect();
            table.entry(key).or_default().push((idx, v));
        }
        let source: Vec<(bool, usize)> = labels
            .iter()
            .map(|l| match self.labels.iter().position(|x| x == l) {
                Some(p) => (true, p),
                None => (false, other.labels.iter().position(|x| x == l).unwrap()),
            })
            .collect();
        let mut data = vec![field.zero(); volume(&dims)];
        for (f, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = crate::tensor::unflatten(&self.dims, f);
            let key: Vec<usize> = spos.iter().map(|&p| idx[p]).collect();
            let Some(matches) = table.get(&key) else { continue };
            for (oidx, w) in matches {
                let o = source
                    .iter()
                    .zip(&dims)
                    .fold(0, |acc, (&(mine, p), &d)| acc * d + if mine { idx[p] } else { oidx[p] });
                data[o].add_product(v, w);
            }
        }
        Dense { labels, dims, data }
    }
}

/// Runs a plan. Leg dimensions of the inputs must agree on every label.
pub fn contract(plan: &ContractionPlan, inputs: &[&Tensor]) -> Result<Tensor> {
    if inputs.len() != plan.legs.len() {
        return Err(Error::Plan(format!(
            "plan expects {} tensors, got {}",
            plan.legs.len(),
            inputs.len()
        )));
    }
    if inputs.is_empty() {
        return Err(Error::Plan("nothing to contract".into()));
    }
    let field = inputs[0].field();
    // Check dims and collect the space carried by each output label.
    let mut label_space: BTreeMap<usize, Space> = BTreeMap::new();
    for (t, labels) in inputs.iter().zip(&plan.legs) {
        if t.field() != field {
            return Err(Error::Field("inputs from different fields".into()));
        }
        let spaces: Vec<Space> = t.codomain().iter().chain(t.domain()).cloned().collect();
        if spaces.len() != labels.len() {
            return Err(Error::Plan("leg count differs from plan".into()));
        }
        for (s, l) in spaces.iter().zip(labels) {
            let want = plan.dims.get(l).copied();
            if want != Some(s.dim()) {
                return Err(Error::Plan(format!(
                    "dimension mismatch on wire {l}: {} vs {:?}",
                    s.dim(),
                    want
                )));
            }
            label_space.entry(*l).or_insert_with(|| s.clone());
        }
    }

    let mut pool: BTreeMap<usize, Dense> = BTreeMap::new();
    for (k, (t, labels)) in inputs.iter().zip(&plan.legs).enumerate() {
        // Resolve self-traces and diagonals before any pairing.
        let keep: BTreeSet<usize> = plan
            .output
            .iter()
            .copied()
            .chain(
                plan.legs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .flat_map(|(_, l)| l.iter().copied()),
            )
            .collect();
        pool.insert(k, to_dense(t, labels)?.reduce(&keep, field));
    }
    let mut next = inputs.len();
    for &(a, b) in &plan.steps {
        let da = pool.remove(&a).ok_or_else(|| Error::Plan(format!("step uses missing id {a}")))?;
        let db = pool.remove(&b).ok_or_else(|| Error::Plan(format!("step uses missing id {b}")))?;
        let keep: BTreeSet<usize> = plan
            .output
            .iter()
            .copied()
            .chain(pool.values().flat_map(|d| d.labels.iter().copied()))
            .collect();
        pool.insert(next, da.pair(&db, &keep, field));
        next += 1;
    }
    if pool.len() != 1 {
        return Err(Error::Plan("steps do not reduce to a single tensor".into()));
    }
    let last = pool.into_values().next().unwrap();
    let keep: BTreeSet<usize> = plan.output.iter().copied().collect();
    let last = last.reduce(&keep, field);

    // Permute to the requested output order.
    let out_dims: Vec<usize> = plan.output.iter().map(|l| plan.dims[l]).collect();
    let pos: Vec<usize> = plan
        .output
        .iter()
        .map(|l| last.labels.iter().position(|x| x == l).unwrap())
        .collect();
    let mut data = vec![field.zero(); volume(&out_dims)];
    for (o, idx) in multi_indices(&out_dims).enumerate() {
        let mut src = vec![0; last.labels.len()];
        for (k, &p) in pos.iter().enumerate() {
            src[p] = idx[k];
        }
        let f = crate::tensor::flat_index(&last.dims, &src);
        data[o] = last.data[f].clone();
    }
    let spaces: Vec<Space> = plan.output.iter().map(|l| label_space[l].clone()).collect();
    let (cod, dom) = spaces.split_at(plan.n_codomain);
    Tensor::new(dom.to_vec(), cod.to_vec(), field, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Space {
        Space::new("H", vec!["1".into(), "a".into(), "b".into()], Some(0)).unwrap()
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let q = Field::Rational;
        let id = Tensor::identity(&h(), q);
        let plan = ContractionPlan::new(vec![vec![0, 0]], vec![], 0, BTreeMap::from([(0, 3)])).unwrap();
        let t = contract(&plan, &[&id]).unwrap();
        assert_eq!(t.entries(), &[q.from_i64(3)]);
    }

    #[test]
    fn empty_plan_returns_input() {
        let q = Field::Rational;
        let s = h();
        let v = Tensor::new(vec![], vec![s.clone()], q, vec![q.from_i64(1), q.from_i64(-2), q.from_i64(5)]).unwrap();
        let plan = ContractionPlan::new(vec![vec![0]], vec![0], 1, BTreeMap::from([(0, 3)])).unwrap();
        assert!(plan.steps.is_empty());
        assert_eq!(contract(&plan, &[&v]).unwrap(), v);
    }

    #[test]
    fn chain_equals_compose() {
        let q = Field::Rational;
        let s = h();
        let f = Tensor::from_columns(vec![s.clone()], vec![s.clone()], q, |i| {
            vec![(vec![(i[0] + 1) % 3], q.from_i64(2)), (vec![0], q.from_i64(i[0] as i64))]
        });
        // f(out 0, in 1) g(out 1, in 2) -> (0; 2)
        let dims = BTreeMap::from([(0, 3), (1, 3), (2, 3)]);
        let plan = ContractionPlan::new(vec![vec![0, 1], vec![1, 2]], vec![0, 2], 1, dims).unwrap();
        let c = contract(&plan, &[&f, &f]).unwrap();
        assert_eq!(c, f.compose(&f).unwrap());
        for seed in 0..5 {
            assert_eq!(contract(&plan.with_random_order(seed), &[&f, &f]).unwrap(), c);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let q = Field::Rational;
        let id = Tensor::identity(&h(), q);
        let plan = ContractionPlan::new(vec![vec![0, 1]], vec![0, 1], 1, BTreeMap::from([(0, 2), (1, 3)])).unwrap();
        assert!(matches!(contract(&plan, &[&id]), Err(Error::Plan(_))));
    }
}
