//! Dense exact tensors.
//!
//! Every tensor is stored as a linear map: its legs are the codomain
//! ("out") spaces followed by the domain ("in") spaces, row-major. A tensor
//! with no in-legs is a vector, one with no legs at all a scalar.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::space::Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Polarity {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    codomain: Vec<Space>,
    domain: Vec<Space>,
    field: Field,
    entries: Vec<Scalar>,
}

/// A linear map between tensor products of spaces.
pub type LinMap = Tensor;

pub fn dims_of(spaces: &[Space]) -> Vec<usize> {
    spaces.iter().map(Space::dim).collect()
}

pub fn volume(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Row-major flat index.
pub fn flat_index(dims: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), idx.len());
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub fn unflatten(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

/// Iterates all multi-indices over `dims` in lexicographic order.
pub fn multi_indices(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..volume(dims)).map(move |f| unflatten(dims, f))
}

fn spaces_str(spaces: &[Space]) -> String {
    if spaces.is_empty() {
        "k".into()
    } else {
        spaces.iter().map(|s| s.name.clone()).collect::<Vec<_>>().join(" ")
    }
}

/// First position where two space lists disagree.
pub fn check_spaces(expected: &[Space], found: &[Space]) -> Result<()> {
    for leg in 0..expected.len().max(found.len()) {
        let e = expected.get(leg);
        let f = found.get(leg);
        if e != f {
            return Err(Error::Signature {
                leg,
                expected: e.map_or("nothing".into(), |s| s.to_string()),
                found: f.map_or("nothing".into(), |s| s.to_string()),
            });
        }
    }
    Ok(())
}

impl Tensor {
    pub fn new(
        domain: Vec<Space>,
        codomain: Vec<Space>,
        field: Field,
        entries: Vec<Scalar>,
    ) -> Result<Tensor> {
        let n = volume(&dims_of(&codomain)) * volume(&dims_of(&domain));
        if entries.len() != n {
            return Err(Error::Shape(format!(
                "expected {n} entries for {} -> {}, got {}",
                spaces_str(&domain),
                spaces_str(&codomain),
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::Field(format!(
                "entry {bad} is not in the session field {field}"
            )));
        }
        Ok(Tensor {
            codomain,
            domain,
            field,
            entries,
        })
    }

    pub fn zeros(domain: Vec<Space>, codomain: Vec<Space>, field: Field) -> Tensor {
        let n = volume(&dims_of(&codomain)) * volume(&dims_of(&domain));
        Tensor {
            codomain,
            domain,
            field,
            entries: vec![field.zero(); n],
        }
    }

    /// Builds a map from the image of each domain basis tuple, given as a
    /// sparse list of (codomain multi-index, coefficient).
    pub fn from_columns<F>(domain: Vec<Space>, codomain: Vec<Space>, field: Field, mut col: F) -> Tensor
    where
        F: FnMut(&[usize]) -> Vec<(Vec<usize>, Scalar)>,
    {
        let mut t = Tensor::zeros(domain, codomain, field);
        let din = t.domain_dims();
        for input in multi_indices(&din).collect::<Vec<_>>() {
            for (out, c) in col(&input) {
                let e = t.entry_mut(&out, &input);
                *e = e.add_ref(&c);
            }
        }
        t
    }

    pub fn identity(space: &Space, field: Field) -> Tensor {
        Tensor::from_columns(vec![space.clone()], vec![space.clone()], field, |i| {
            vec![(i.to_vec(), field.one())]
        })
    }

    /// `u ⊗ v ↦ v ⊗ u`.
    pub fn swap(left: &Space, right: &Space, field: Field) -> Tensor {
        Tensor::from_columns(
            vec![left.clone(), right.clone()],
            vec![right.clone(), left.clone()],
            field,
            |i| vec![(vec![i[1], i[0]], field.one())],
        )
    }

    /// The scalar tensor (no legs).
    pub fn scalar(value: Scalar) -> Tensor {
        Tensor {
            codomain: vec![],
            domain: vec![],
            field: value.field(),
            entries: vec![value],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain(&self) -> &[Space] {
        &self.domain
    }

    pub fn codomain(&self) -> &[Space] {
        &self.codomain
    }

    pub fn domain_dims(&self) -> Vec<usize> {
        dims_of(&self.domain)
    }

    pub fn codomain_dims(&self) -> Vec<usize> {
        dims_of(&self.codomain)
    }

    /// Legs in storage order with their polarity.
    pub fn signature(&self) -> Vec<(Space, Polarity)> {
        self.codomain
            .iter()
            .map(|s| (s.clone(), Polarity::Out))
            .chain(self.domain.iter().map(|s| (s.clone(), Polarity::In)))
            .collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    fn offset(&self, out: &[usize], input: &[usize]) -> usize {
        let co = flat_index(&self.codomain_dims(), out);
        let ci = flat_index(&self.domain_dims(), input);
        co * volume(&self.domain_dims()) + ci
    }

    pub fn entry(&self, out: &[usize], input: &[usize]) -> &Scalar {
        &self.entries[self.offset(out, input)]
    }

    pub fn entry_mut(&mut self, out: &[usize], input: &[usize]) -> &mut Scalar {
        let o = self.offset(out, input);
        &mut self.entries[o]
    }

    pub fn set(&mut self, out: &[usize], input: &[usize], v: Scalar) {
        *self.entry_mut(out, input) = v;
    }

    /// Entry addressed by a full multi-index (out legs then in legs).
    pub fn at(&self, full: &[usize]) -> &Scalar {
        let k = self.codomain.len();
        self.entry(&full[..k], &full[k..])
    }

    /// Image of one domain basis tuple as a sparse list.
    pub fn column(&self, input: &[usize]) -> Vec<(Vec<usize>, Scalar)> {
        let cod = self.codomain_dims();
        let din = volume(&self.domain_dims());
        let ci = flat_index(&self.domain_dims(), input);
        (0..volume(&cod))
            .filter_map(|co| {
                let e = &self.entries[co * din + ci];
                (!e.is_zero()).then(|| (unflatten(&cod, co), e.clone()))
            })
            .collect()
    }

    /// Nonzero entries as (out multi-index, in multi-index, value).
    pub fn nonzeros(&self) -> Vec<(Vec<usize>, Vec<usize>, Scalar)> {
        let cod = self.codomain_dims();
        let dom = self.domain_dims();
        let din = volume(&dom);
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(f, e)| (unflatten(&cod, f / din), unflatten(&dom, f % din), e.clone()))
            .collect()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Tensor) -> Result<Tensor> {
        check_spaces(&self.domain, &g.codomain)?;
        let rows = volume(&self.codomain_dims());
        let mid = volume(&self.domain_dims());
        let cols = volume(&g.domain_dims());
        let mut out = vec![self.field.zero(); rows * cols];
        for r in 0..rows {
            for m in 0..mid {
                let a = &self.entries[r * mid + m];
                if a.is_zero() {
                    continue;
                }
                for c in 0..cols {
                    let b = &g.entries[m * cols + c];
                    if !b.is_zero() {
                        out[r * cols + c].add_product(a, b);
                    }
                }
            }
        }
        Tensor::new(g.domain.clone(), self.codomain.clone(), self.field, out)
    }

    /// `self ⊗ g`, with domain `dom(self) ++ dom(g)` and codomain likewise.
    pub fn tensor_of(&self, g: &Tensor) -> Tensor {
        let (fo, fi) = (volume(&self.codomain_dims()), volume(&self.domain_dims()));
        let (go, gi) = (volume(&g.codomain_dims()), volume(&g.domain_dims()));
        let mut out = Vec::with_capacity(fo * fi * go * gi);
        for o1 in 0..fo {
            for o2 in 0..go {
                for i1 in 0..fi {
                    for i2 in 0..gi {
                        out.push(self.entries[o1 * fi + i1].mul_ref(&g.entries[o2 * gi + i2]));
                    }
                }
            }
        }
        let mut domain = self.domain.clone();
        domain.extend(g.domain.iter().cloned());
        let mut codomain = self.codomain.clone();
        codomain.extend(g.codomain.iter().cloned());
        Tensor {
            codomain,
            domain,
            field: self.field,
            entries: out,
        }
    }

    /// Same entries, reinterpreted over new spaces of identical dimensions.
    pub fn relabel(&self, domain: Vec<Space>, codomain: Vec<Space>) -> Result<Tensor> {
        if dims_of(&domain) != self.domain_dims() || dims_of(&codomain) != self.codomain_dims() {
            return Err(Error::Shape("relabel must preserve leg dimensions".into()));
        }
        Tensor::new(domain, codomain, self.field, self.entries.clone())
    }

    /// Moves every entry into another field.
    pub fn to_field(&self, field: Field) -> Result<Tensor> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_field(field))
            .collect::<Result<Vec<_>>>()?;
        Tensor::new(self.domain.clone(), self.codomain.clone(), field, entries)
    }

    /// Reorders legs: new domain leg `j` is old domain leg `dom[j]`, likewise
    /// for the codomain.
    pub fn permute(&self, dom: &[usize], cod: &[usize]) -> Result<Tensor> {
        let is_perm = |p: &[usize], n: usize| {
            let mut s: Vec<usize> = p.to_vec();
            s.sort_unstable();
            s == (0..n).collect::<Vec<_>>()
        };
        if !is_perm(dom, self.domain.len()) || !is_perm(cod, self.codomain.len()) {
            return Err(Error::Shape("leg permutation is not a bijection".into()));
        }
        let domain: Vec<Space> = dom.iter().map(|&i| self.domain[i].clone()).collect();
        let codomain: Vec<Space> = cod.iter().map(|&i| self.codomain[i].clone()).collect();
        let mut t = Tensor::zeros(domain, codomain, self.field);
        for (o, i, v) in self.nonzeros() {
            let no: Vec<usize> = cod.iter().map(|&k| o[k]).collect();
            let ni: Vec<usize> = dom.iter().map(|&k| i[k]).collect();
            t.set(&no, &ni, v);
        }
        Ok(t)
    }

    /// Same row-major entries over new spaces of equal total volume, e.g.
    /// `A H B -> A H B` viewed as `V -> V` for `V = A|H|B`.
    pub fn reshape(&self, domain: Vec<Space>, codomain: Vec<Space>) -> Result<Tensor> {
        if volume(&dims_of(&domain)) != volume(&self.domain_dims())
            || volume(&dims_of(&codomain)) != volume(&self.codomain_dims())
        {
            return Err(Error::Shape("reshape must preserve volumes".into()));
        }
        Tensor::new(domain, codomain, self.field, self.entries.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}

/// Outcome of an exact equality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    /// Lexicographically smallest full multi-index (out legs, then in legs)
    /// where the maps differ, with both entries.
    Differ {
        index: Vec<usize>,
        left: Scalar,
        right: Scalar,
    },
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal)
    }
}

pub fn maps_equal(f: &Tensor, g: &Tensor) -> Result<Equality> {
    check_spaces(&f.codomain, &g.codomain)?;
    check_spaces(&f.domain, &g.domain).map_err(|e| match e {
        Error::Signature {
            leg,
            expected,
            found,
        } => Error::Signature {
            leg: leg + f.codomain.len(),
            expected,
            found,
        },
        other => other,
    })?;
    let mut dims = f.codomain_dims();
    dims.extend(f.domain_dims());
    for (k, (a, b)) in f.entries.iter().zip(&g.entries).enumerate() {
        if a != b {
            return Ok(Equality::Differ {
                index: unflatten(&dims, k),
                left: a.clone(),
                right: b.clone(),
            });
        }
    }
    Ok(Equality::Equal)
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::serial::write_tensor("t", self)
        )
    }
}

/// Renders a vector (tensor without in-legs, or a column) using basis labels,
/// e.g. `x|1|x` or `2*x|1 + a|a`.
pub fn render_vector(spaces: &[Space], terms: &[(Vec<usize>, Scalar)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(idx, c)| {
            let label = if spaces.is_empty() {
                "1".to_string()
            } else {
                idx.iter()
                    .zip(spaces)
                    .map(|(&i, s)| s.label(i).to_string())
                    .collect::<Vec<_>>()
                    .join(" % ")
            };
            if c.is_one() {
                label
            } else {
                format!("{}*{}", c.literal(), label)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kc2() -> Space {
        Space::new("H", vec!["1".into(), "a".into()], Some(0)).unwrap()
    }

    #[test]
    fn compose_identity_is_identity() {
        let q = Field::Rational;
        let id = Tensor::identity(&kc2(), q);
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn compose_reports_first_mismatched_leg() {
        let q = Field::Rational;
        let h = kc2();
        let a = Space::new("A", vec!["1".into(), "x".into()], Some(0)).unwrap();
        let err = Tensor::identity(&h, q)
            .compose(&Tensor::identity(&a, q))
            .unwrap_err();
        assert!(matches!(err, Error::Signature { leg: 0, .. }));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let q = Field::Rational;
        let h = kc2();
        let a = Space::new("A", vec!["1".into(), "x".into(), "x2".into()], Some(0)).unwrap();
        let lhs = Tensor::identity(&h, q).tensor_of(&Tensor::identity(&a, q));
        for (out, input, v) in lhs.nonzeros() {
            assert_eq!(out, input);
            assert!(v.is_one());
        }
        assert_eq!(lhs.nonzeros().len(), 6);
    }

    #[test]
    fn identity_versus_swap_witness() {
        let q = Field::Rational;
        let h = kc2();
        let id = Tensor::identity(&h, q);
        let flip = Tensor::from_columns(vec![h.clone()], vec![h.clone()], q, |i| {
            vec![(vec![1 - i[0]], q.one())]
        });
        match maps_equal(&id, &flip).unwrap() {
            Equality::Differ { index, left, right } => {
                assert_eq!(index, vec![0, 0]);
                assert!(left.is_one());
                assert!(right.is_zero());
            }
            Equality::Equal => panic!("maps differ"),
        }
        assert!(maps_equal(&id, &id).unwrap().is_equal());
    }

    #[test]
    fn construction_rejects_wrong_length_and_field() {
        let h = kc2();
        assert!(Tensor::new(vec![h.clone()], vec![h.clone()], Field::Rational, vec![]).is_err());
        let f2 = Field::Prime(2);
        let entries = vec![Field::Rational.one(); 4];
        assert!(Tensor::new(vec![h.clone()], vec![h], f2, entries).is_err());
    }
}
