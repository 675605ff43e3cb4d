//! A∞-algebras and A∞-morphisms as finite data, with exact verifiers for the
//! Stasheff and morphism identities.
//!
//! Conventions: cohomological grading, `|m_n| = 2 − n`, `|f_n| = 1 − n`, and
//! the Koszul rule `(g ⊗ g')(x ⊗ y) = (−1)^{|g'||x|} g(x) ⊗ g'(y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dg_algebra::DgAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::{cohomology, for_each_tuple, ChainComplex, GradedMap, GradedSpace, MultilinearMap, Vector};
use crate::scalar;

/// `m_1, …, m_cap` on a graded space. Arities above the cap are unknown, not
/// zero.
#[derive(Clone, Debug)]
pub struct AInfinityStructure {
    space: Arc<GradedSpace>,
    ops: BTreeMap<usize, MultilinearMap>,
    arity_cap: usize,
}

impl AInfinityStructure {
    /// `ops[k]` is `m_{k+1}`; the cap is `ops.len()`.
    pub fn new(space: Arc<GradedSpace>, ops: Vec<MultilinearMap>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::Malformed("an A∞-structure needs at least m_1".into()));
        }
        let mut map = BTreeMap::new();
        for (k, m) in ops.into_iter().enumerate() {
            let n = k + 1;
            if m.arity() != n || m.shift() != 2 - n as i32 {
                return Err(Error::Malformed(format!("m_{n} must have arity {n} and degree {}", 2 - n as i32)));
            }
            if **m.source() != *space || **m.target() != *space {
                return Err(Error::Malformed(format!("m_{n} acts on a different space")));
            }
            map.insert(n, m);
        }
        let arity_cap = map.len();
        Ok(AInfinityStructure {
            space,
            ops: map,
            arity_cap,
        })
    }

    /// A dg-algebra as `(d, product, 0, 0, …)`, recorded up to `arity_cap`.
    pub fn from_dg_algebra(a: &DgAlgebra, arity_cap: usize) -> Self {
        let space = a.space().clone();
        let mut ops = vec![
            MultilinearMap::from_graded_map(a.differential()),
            a.product().clone(),
        ];
        for n in 3..=arity_cap.max(2) {
            ops.push(MultilinearMap::zero(n, space.clone(), space.clone(), 2 - n as i32));
        }
        ops.truncate(arity_cap.max(1));
        Self::new(space, ops).expect("dg-algebra data has the right shape")
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn op(&self, n: usize) -> Result<&MultilinearMap> {
        self.ops.get(&n).ok_or(Error::IncompleteStructure(n))
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &MultilinearMap)> {
        self.ops.iter().map(|(&n, m)| (n, m))
    }

    pub fn is_minimal(&self) -> bool {
        self.ops[&1].is_zero()
    }

    /// Smallest `n ≥ 3` within the cap with `m_n ≠ 0`.
    pub fn first_nonzero_higher(&self) -> Option<usize> {
        self.ops.iter().find(|(&n, m)| n >= 3 && !m.is_zero()).map(|(&n, _)| n)
    }

    /// `m_1` as a graded map.
    pub fn m1(&self) -> GradedMap {
        let m = &self.ops[&1];
        GradedMap::from_images(self.space.clone(), self.space.clone(), 1, |i| m.eval_basis(&[i]))
            .expect("m_1 has degree 1")
    }
}

/// The components `f_1, …, f_cap` of an A∞-morphism.
#[derive(Clone, Debug)]
pub struct AInfinityMorphism {
    source: Arc<AInfinityStructure>,
    target: Arc<AInfinityStructure>,
    components: BTreeMap<usize, MultilinearMap>,
    arity_cap: usize,
}

impl AInfinityMorphism {
    /// `components[k]` is `f_{k+1}`.
    pub fn new(
        source: Arc<AInfinityStructure>,
        target: Arc<AInfinityStructure>,
        components: Vec<MultilinearMap>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Malformed("an A∞-morphism needs at least f_1".into()));
        }
        let mut map = BTreeMap::new();
        for (k, f) in components.into_iter().enumerate() {
            let n = k + 1;
            if f.arity() != n || f.shift() != 1 - n as i32 {
                return Err(Error::Malformed(format!("f_{n} must have arity {n} and degree {}", 1 - n as i32)));
            }
            if **f.source() != *source.space || **f.target() != *target.space {
                return Err(Error::Malformed(format!("f_{n} has the wrong source or target")));
            }
            map.insert(n, f);
        }
        let arity_cap = map.len();
        Ok(AInfinityMorphism {
            source,
            target,
            components: map,
            arity_cap,
        })
    }

    /// The identity morphism `(id, 0, 0, …)` up to the structure's cap.
    pub fn identity(a: Arc<AInfinityStructure>) -> Self {
        let s = a.space.clone();
        let mut comps = vec![MultilinearMap::from_graded_map(&GradedMap::identity(s.clone()))];
        for n in 2..=a.arity_cap {
            comps.push(MultilinearMap::zero(n, s.clone(), s.clone(), 1 - n as i32));
        }
        Self::new(a.clone(), a, comps).expect("identity has the right shape")
    }

    pub fn source(&self) -> &Arc<AInfinityStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInfinityStructure> {
        &self.target
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn component(&self, n: usize) -> Result<&MultilinearMap> {
        self.components.get(&n).ok_or(Error::IncompleteStructure(n))
    }
}

/// One tensor factor of a tensor product of maps.
#[derive(Clone, Copy, Debug)]
pub enum Block<'a> {
    Id,
    Map(&'a MultilinearMap),
}

impl Block<'_> {
    fn arity(&self) -> usize {
        match self {
            Block::Id => 1,
            Block::Map(m) => m.arity(),
        }
    }

    fn degree(&self) -> i32 {
        match self {
            Block::Id => 0,
            Block::Map(m) => m.shift(),
        }
    }
}

/// A pure tensor with a sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTensor {
    pub sign: i32,
    pub factors: Vec<Vector>,
}

/// `(−1)^{Σ_j |g_j| · (|x_1| + … + |x_{before block j}|)}` as an exponent
/// parity.
pub fn koszul_parity(block_degrees: &[i32], arities: &[usize], input_degrees: &[i32]) -> i64 {
    let mut passed = 0i64;
    let mut parity = 0i64;
    let mut pos = 0;
    for (&g, &k) in block_degrees.iter().zip(arities) {
        parity += g as i64 * passed;
        for &d in &input_degrees[pos..pos + k] {
            passed += d as i64;
        }
        pos += k;
    }
    parity.rem_euclid(2)
}

/// Evaluates `(g_1 ⊗ … ⊗ g_k)(x_1 ⊗ … ⊗ x_n)` on homogeneous elements.
pub fn koszul_apply(space: &GradedSpace, blocks: &[Block], elements: &[Vector]) -> Result<SignedTensor> {
    let total: usize = blocks.iter().map(Block::arity).sum();
    if total != elements.len() {
        return Err(Error::Malformed(format!(
            "maps take {total} inputs but {} were given",
            elements.len()
        )));
    }
    let mut degrees = Vec::with_capacity(elements.len());
    for x in elements {
        match space.degree_of_vector(x)? {
            Some(d) => degrees.push(d),
            None => {
                return Ok(SignedTensor {
                    sign: 1,
                    factors: blocks.iter().map(|_| Vector::zero()).collect(),
                })
            }
        }
    }
    let gdeg: Vec<i32> = blocks.iter().map(Block::degree).collect();
    let arities: Vec<usize> = blocks.iter().map(Block::arity).collect();
    let parity = koszul_parity(&gdeg, &arities, &degrees);
    let mut pos = 0;
    let mut factors = Vec::with_capacity(blocks.len());
    for b in blocks {
        let k = b.arity();
        factors.push(match b {
            Block::Id => elements[pos].clone(),
            Block::Map(m) => m.eval(&elements[pos..pos + k]),
        });
        pos += k;
    }
    Ok(SignedTensor {
        sign: if parity == 0 { 1 } else { -1 },
        factors,
    })
}

fn degree_window(target: &GradedSpace, shift: i32) -> Option<(i32, i32)> {
    Some((target.min_degree()? - shift, target.max_degree()? - shift))
}

fn prefix_degree(space: &GradedSpace, tuple: &[usize]) -> i64 {
    tuple.iter().map(|&i| space.degree_of(i) as i64).sum()
}

/// `Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t}(Id^r ⊗ m_s ⊗ Id^t)` as an arity-`n` map;
/// the Stasheff identity holds in arity `n` iff it is zero.
pub fn stasheff_defect(m: &AInfinityStructure, n: usize) -> Result<MultilinearMap> {
    if n == 0 {
        return Err(Error::Malformed("arity must be positive".into()));
    }
    for k in 1..=n {
        m.op(k)?;
    }
    let space = m.space.clone();
    let shift = 3 - n as i32;
    let mut out = MultilinearMap::zero(n, space.clone(), space.clone(), shift);
    let Some((lo, hi)) = degree_window(&space, shift) else {
        return Ok(out);
    };
    for_each_tuple(&space, n, lo, hi, |x| {
        let mut acc = Vector::zero();
        for s in 1..=n {
            let inner = &m.ops[&s];
            if inner.is_zero() {
                continue;
            }
            for r in 0..=n - s {
                let t = n - r - s;
                let outer = &m.ops[&(r + 1 + t)];
                if outer.is_zero() {
                    continue;
                }
                let Some(v) = inner.get(&x[r..r + s]) else {
                    continue;
                };
                let parity = (r + s * t) as i64 + (2 - s as i64) * prefix_degree(&space, &x[..r]);
                let inputs = splice(&x[..r], v, &x[r + s..]);
                acc.add_scaled(&outer.eval(&inputs), &scalar::sign(parity));
            }
        }
        out.set(x.to_vec(), acc);
    });
    Ok(out)
}

fn splice(before: &[usize], mid: &Vector, after: &[usize]) -> Vec<Vector> {
    before
        .iter()
        .map(|&i| Vector::basis(i))
        .chain(std::iter::once(mid.clone()))
        .chain(after.iter().map(|&i| Vector::basis(i)))
        .collect()
}

/// First arity `n ≤ up_to` with a nonzero Stasheff defect.
pub fn first_stasheff_failure(m: &AInfinityStructure, up_to: usize) -> Result<Option<(usize, MultilinearMap)>> {
    for n in 1..=up_to {
        let d = stasheff_defect(m, n)?;
        if !d.is_zero() {
            return Ok(Some((n, d)));
        }
    }
    Ok(None)
}

/// Ordered compositions `n = i_1 + … + i_k` with every `i_j ≥ 1`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `u_k = Σ_{t=1}^{k−1} t (i_{k−t} − 1)`.
pub fn u_sign_exponent(parts: &[usize]) -> i64 {
    let k = parts.len();
    (1..k).map(|t| t as i64 * (parts[k - t - 1] as i64 - 1)).sum()
}

/// Left side minus right side of the morphism identity in arity `n`:
/// `Σ (−1)^{r+st} f_{r+1+t}(Id^r ⊗ m_s ⊗ Id^t) − Σ (−1)^{u_k} m_k(f_{i_1} ⊗ … ⊗ f_{i_k})`.
pub fn morphism_defect(f: &AInfinityMorphism, n: usize) -> Result<MultilinearMap> {
    if n == 0 {
        return Err(Error::Malformed("arity must be positive".into()));
    }
    for k in 1..=n {
        f.component(k)?;
        f.source.op(k)?;
        f.target.op(k)?;
    }
    let a = f.source.space.clone();
    let b = f.target.space.clone();
    let shift = 2 - n as i32;
    let mut out = MultilinearMap::zero(n, a.clone(), b.clone(), shift);
    let Some((lo, hi)) = degree_window(&b, shift) else {
        return Ok(out);
    };
    let comps: Vec<(Vec<usize>, i64)> = compositions(n)
        .into_iter()
        .filter(|p| !f.target.ops[&p.len()].is_zero())
        .map(|p| {
            let u = u_sign_exponent(&p);
            (p, u)
        })
        .collect();
    for_each_tuple(&a, n, lo, hi, |x| {
        let mut acc = Vector::zero();
        for s in 1..=n {
            let inner = &f.source.ops[&s];
            if inner.is_zero() {
                continue;
            }
            for r in 0..=n - s {
                let t = n - r - s;
                let outer = &f.components[&(r + 1 + t)];
                if outer.is_zero() {
                    continue;
                }
                let Some(v) = inner.get(&x[r..r + s]) else {
                    continue;
                };
                let parity = (r + s * t) as i64 + (2 - s as i64) * prefix_degree(&a, &x[..r]);
                acc.add_scaled(&outer.eval(&splice(&x[..r], v, &x[r + s..])), &scalar::sign(parity));
            }
        }
        'parts: for (parts, u) in &comps {
            let mut factors = Vec::with_capacity(parts.len());
            let mut parity = *u;
            let mut pos = 0;
            for &i in parts {
                parity += (1 - i as i64) * prefix_degree(&a, &x[..pos]);
                let Some(v) = f.components[&i].get(&x[pos..pos + i]) else {
                    continue 'parts;
                };
                factors.push(v.clone());
                pos += i;
            }
            let value = f.target.ops[&parts.len()].eval(&factors);
            acc.add_scaled(&value, &(-scalar::sign(parity)));
        }
        out.set(x.to_vec(), acc);
    });
    Ok(out)
}

/// First arity `n ≤ up_to` with a nonzero morphism defect.
pub fn first_morphism_failure(f: &AInfinityMorphism, up_to: usize) -> Result<Option<(usize, MultilinearMap)>> {
    for n in 1..=up_to {
        let d = morphism_defect(f, n)?;
        if !d.is_zero() {
            return Ok(Some((n, d)));
        }
    }
    Ok(None)
}

/// Does `f_1` induce an isomorphism on `m_1`-cohomology?
pub fn is_quasi_isomorphism(f: &AInfinityMorphism) -> Result<bool> {
    if !morphism_defect(f, 1)?.is_zero() {
        return Err(Error::NotAMorphism);
    }
    let src = cohomology(&ChainComplex::new(f.source.space.clone(), f.source.m1())?)?;
    let tgt = cohomology(&ChainComplex::new(f.target.space.clone(), f.target.m1())?)?;
    let f1 = &f.components[&1];
    let f1 = GradedMap::from_images(f.source.space.clone(), f.target.space.clone(), 0, |i| f1.eval_basis(&[i]))?;
    let induced = tgt.projection.compose(&f1).compose(&src.inclusion);
    let (hs, ht) = (&src.cohomology, &tgt.cohomology);
    let degrees: std::collections::BTreeSet<i32> = hs.support().chain(ht.support()).collect();
    Ok(degrees.into_iter().all(|d| {
        hs.dim(d) == ht.dim(d) && induced.block_or_zero(d).rank() == hs.dim(d)
    }))
}
