//! Sparse elements of tensor products and leg-wise map application.
//!
//! This is the box-by-box evaluator used by the axiom oracles. It shares no
//! code with the contraction engine.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{ConditionReport, Witness};
use crate::scalar::{Field, Scalar};
use crate::space::Space;
use crate::tensor::{check_spaces, multi_indices, render_vector, volume, LinMap};

/// A linear map stored as sparse columns.
#[derive(Clone, Debug)]
pub struct SparseMap {
    pub domain: Vec<Space>,
    pub codomain: Vec<Space>,
    dom_dims: Vec<usize>,
    cols: Vec<Vec<(Vec<usize>, Scalar)>>,
}

impl SparseMap {
    pub fn new(m: &LinMap) -> SparseMap {
        let dom_dims = m.domain_dims();
        let cols = multi_indices(&dom_dims).map(|i| m.column(&i)).collect();
        SparseMap {
            domain: m.domain().to_vec(),
            codomain: m.codomain().to_vec(),
            dom_dims,
            cols,
        }
    }

    pub fn column(&self, input: &[usize]) -> &[(Vec<usize>, Scalar)] {
        &self.cols[crate::tensor::flat_index(&self.dom_dims, input)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elem {
    pub field: Field,
    pub spaces: Vec<Space>,
    pub terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Elem {
    pub fn zero(field: Field, spaces: Vec<Space>) -> Elem {
        Elem {
            field,
            spaces,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: Field, spaces: Vec<Space>, index: Vec<usize>) -> Elem {
        let mut e = Elem::zero(field, spaces);
        e.terms.insert(index, field.one());
        e
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        let zero = self.field.zero();
        let slot = self.terms.entry(idx.clone()).or_insert(zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    /// Applies `m` to legs `at .. at + m.domain.len()`.
    pub fn apply(&self, m: &SparseMap, at: usize) -> Result<Elem> {
        let n = m.domain.len();
        if at + n > self.spaces.len() {
            return Err(Error::Shape(format!("map needs legs {at}..{} of {}", at + n, self.spaces.len())));
        }
        check_spaces(&m.domain, &self.spaces[at..at + n])?;
        let mut spaces = self.spaces[..at].to_vec();
        spaces.extend(m.codomain.iter().cloned());
        spaces.extend(self.spaces[at + n..].iter().cloned());
        let mut out = Elem::zero(self.field, spaces);
        for (idx, c) in &self.terms {
            for (o, v) in m.column(&idx[at..at + n]) {
                let mut k = idx[..at].to_vec();
                k.extend(o.iter().copied());
                k.extend(idx[at + n..].iter().copied());
                out.add_term(k, c.mul_ref(v));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Elem) -> Elem {
        let mut spaces = self.spaces.clone();
        spaces.extend(other.spaces.iter().cloned());
        let mut out = Elem::zero(self.field, spaces);
        for (i, c) in &self.terms {
            for (j, d) in &other.terms {
                let mut k = i.clone();
                k.extend(j.iter().copied());
                out.add_term(k, c.mul_ref(d));
            }
        }
        out
    }

    /// New leg `j` is old leg `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Elem {
        let spaces = perm.iter().map(|&p| self.spaces[p].clone()).collect();
        let mut out = Elem::zero(self.field, spaces);
        for (i, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| i[p]).collect(), c.clone());
        }
        out
    }

    pub fn plus(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn render(&self) -> String {
        let terms: Vec<(Vec<usize>, Scalar)> = self.terms.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        render_vector(&self.spaces, &terms)
    }
}

/// Compares two element-level evaluations on every basis tuple of `domain`,
/// in lexicographic order, returning the first difference as a witness.
pub fn check_on_basis<L, R>(id: &str, field: Field, domain: &[Space], lhs: L, rhs: R) -> Result<ConditionReport>
where
    L: Fn(&Elem) -> Result<Elem> + Sync,
    R: Fn(&Elem) -> Result<Elem> + Sync,
{
    let dims: Vec<usize> = domain.iter().map(Space::dim).collect();
    let n = volume(&dims);
    let eval = |flat: usize| -> Result<Option<Witness>> {
        let index = crate::tensor::unflatten(&dims, flat);
        let e = Elem::basis(field, domain.to_vec(), index.clone());
        let (l, r) = (lhs(&e)?, rhs(&e)?);
        if l.terms == r.terms {
            return Ok(None);
        }
        Ok(Some(Witness {
            input: index.iter().zip(domain).map(|(&i, s)| s.label(i).to_string()).collect(),
            index,
            lhs: l.render(),
            rhs: r.render(),
            clause: 0,
        }))
    };
    let hit = (0..n)
        .into_par_iter()
        .map(eval)
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        None => Ok(ConditionReport::pass(id)),
        Some(Err(e)) => Err(e),
        Some(Ok(w)) => Ok(ConditionReport::fail(id, w, None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Tensor;

    fn c2() -> (Space, Tensor) {
        let f = Field::Rational;
        let h = Space::new("H", vec!["1".into(), "a".into()], Some(0)).unwrap();
        let m = Tensor::from_columns(vec![h.clone(), h.clone()], vec![h.clone()], f, |i| {
            vec![(vec![i[0] ^ i[1]], f.one())]
        });
        (h, m)
    }

    #[test]
    fn apply_and_permute() {
        let f = Field::Rational;
        let (h, m) = c2();
        let sm = SparseMap::new(&m);
        let e = Elem::basis(f, vec![h.clone(), h.clone(), h.clone()], vec![1, 1, 0]);
        let r = e.apply(&sm, 0).unwrap();
        assert_eq!(r.render(), "1 % 1");
        let p = e.permute(&[2, 0, 1]);
        assert_eq!(p.render(), "1 % a % a");
        let s = e.plus(&e);
        assert_eq!(s.render(), "2*a % a % 1");
    }

    #[test]
    fn basis_check_finds_first() {
        let f = Field::Rational;
        let (h, m) = c2();
        let sm = SparseMap::new(&m);
        let r = check_on_basis("comm", f, &[h.clone(), h.clone()], |e| e.apply(&sm, 0), |e| {
            e.permute(&[1, 0]).apply(&sm, 0)
        })
        .unwrap();
        assert!(r.passed());
        let r = check_on_basis("bad", f, &[h.clone(), h.clone()], |e| e.apply(&sm, 0), |_| {
            Ok(Elem::basis(f, vec![h.clone()], vec![0]))
        })
        .unwrap();
        assert_eq!(r.witness.unwrap().input, vec!["1".to_string(), "a".to_string()]);
    }
}
