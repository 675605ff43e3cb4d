//! Sparse multilinear maps `V^{⊗n} → W`, stored by their values on basis
//! tuples.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::graded::{GradedMap, GradedSpace, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearMap {
    arity: usize,
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    shift: i32,
    entries: BTreeMap<Vec<usize>, Vector>,
}

impl MultilinearMap {
    pub fn zero(arity: usize, source: Arc<GradedSpace>, target: Arc<GradedSpace>, shift: i32) -> Self {
        assert!(arity >= 1, "multilinear maps have arity at least 1");
        MultilinearMap {
            arity,
            source,
            target,
            shift,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_graded_map(map: &GradedMap) -> Self {
        let mut out = Self::zero(1, map.source().clone(), map.target().clone(), map.shift());
        for i in 0..map.source().total_dim() {
            let v = map.apply_basis(i);
            if !v.is_zero() {
                out.entries.insert(vec![i], v);
            }
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.entries.iter()
    }

    pub fn get(&self, tuple: &[usize]) -> Option<&Vector> {
        self.entries.get(tuple)
    }

    /// Sets the value on a basis tuple, checking the degree rule
    /// `|output| = Σ|inputs| + shift`.
    pub fn insert(&mut self, tuple: Vec<usize>, value: Vector) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::Malformed(format!(
                "tuple of length {} for a map of arity {}",
                tuple.len(),
                self.arity
            )));
        }
        if tuple.iter().any(|&i| i >= self.source.total_dim()) {
            return Err(Error::Malformed("basis index out of range".into()));
        }
        if let Some(d) = self.target.degree_of_vector(&value)? {
            let expected = self.input_degree(&tuple) + self.shift;
            if d != expected {
                return Err(Error::Malformed(format!(
                    "value on ({}) has degree {d}, expected {expected}",
                    self.render_tuple(&tuple)
                )));
            }
        }
        self.set(tuple, value);
        Ok(())
    }

    /// Like [`insert`](Self::insert) without the checks; used by trusted
    /// constructions.
    pub(crate) fn set(&mut self, tuple: Vec<usize>, value: Vector) {
        debug_assert_eq!(tuple.len(), self.arity);
        if value.is_zero() {
            self.entries.remove(&tuple);
        } else {
            self.entries.insert(tuple, value);
        }
    }

    pub fn input_degree(&self, tuple: &[usize]) -> i32 {
        tuple.iter().map(|&i| self.source.degree_of(i)).sum()
    }

    pub fn render_tuple(&self, tuple: &[usize]) -> String {
        tuple
            .iter()
            .map(|&i| self.source.qualified_name(i))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Value on a basis tuple (zero if absent).
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        self.entries.get(tuple).cloned().unwrap_or_default()
    }

    /// Multilinear extension to arbitrary inputs.
    pub fn eval(&self, inputs: &[Vector]) -> Vector {
        assert_eq!(inputs.len(), self.arity, "wrong number of inputs");
        let mut out = Vector::zero();
        if inputs.iter().any(Vector::is_zero) || self.entries.is_empty() {
            return out;
        }
        let combos: usize = inputs.iter().map(Vector::len).product();
        if combos > self.entries.len() {
            for (tuple, value) in &self.entries {
                let mut c = Scalar::from_integer(1.into());
                for (x, &i) in inputs.iter().zip(tuple) {
                    let xi = x.coeff(i);
                    if xi.is_zero() {
                        c = Scalar::zero();
                        break;
                    }
                    c *= xi;
                }
                out.add_scaled(value, &c);
            }
            return out;
        }
        let mut tuple = Vec::with_capacity(self.arity);
        self.expand(inputs, &mut tuple, &Scalar::from_integer(1.into()), &mut out);
        out
    }

    fn expand(&self, inputs: &[Vector], tuple: &mut Vec<usize>, coeff: &Scalar, out: &mut Vector) {
        let k = tuple.len();
        if k == inputs.len() {
            if let Some(v) = self.entries.get(tuple.as_slice()) {
                out.add_scaled(v, coeff);
            }
            return;
        }
        for (&i, c) in inputs[k].iter() {
            tuple.push(i);
            self.expand(inputs, tuple, &(coeff * c), out);
            tuple.pop();
        }
    }

    pub fn scaled(&self, c: &Scalar) -> MultilinearMap {
        let mut out = Self::zero(self.arity, self.source.clone(), self.target.clone(), self.shift);
        if !c.is_zero() {
            for (t, v) in &self.entries {
                out.set(t.clone(), v.scaled(c));
            }
        }
        out
    }

    /// Accumulates `c * value` into the entry for `tuple`.
    pub(crate) fn accumulate(&mut self, tuple: &[usize], value: &Vector, c: &Scalar) {
        if value.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.entries.entry(tuple.to_vec()).or_default();
        entry.add_scaled(value, c);
        if entry.is_zero() {
            self.entries.remove(tuple);
        }
    }

    pub fn first_nonzero(&self) -> Option<(&Vec<usize>, &Vector)> {
        self.entries.iter().next()
    }
}

impl fmt::Debug for MultilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultilinearMap")
            .field("arity", &self.arity)
            .field("shift", &self.shift)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Calls `f` on every `n`-tuple of basis indices of `space` whose degree sum
/// lies in `lo..=hi`, in lexicographic order.
pub fn for_each_tuple(space: &GradedSpace, n: usize, lo: i32, hi: i32, mut f: impl FnMut(&[usize])) {
    let (Some(dmin), Some(dmax)) = (space.min_degree(), space.max_degree()) else {
        return;
    };
    let mut tuple = Vec::with_capacity(n);
    walk(space, n, lo, hi, dmin, dmax, 0, &mut tuple, &mut f);
}

#[allow(clippy::too_many_arguments)]
fn walk(
    space: &GradedSpace,
    n: usize,
    lo: i32,
    hi: i32,
    dmin: i32,
    dmax: i32,
    sum: i32,
    tuple: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    let left = (n - tuple.len()) as i32;
    if sum + left * dmax < lo || sum + left * dmin > hi {
        return;
    }
    if left == 0 {
        f(tuple);
        return;
    }
    for i in 0..space.total_dim() {
        tuple.push(i);
        walk(space, n, lo, hi, dmin, dmax, sum + space.degree_of(i), tuple, f);
        tuple.pop();
    }
}
