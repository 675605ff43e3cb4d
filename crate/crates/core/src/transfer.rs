//! Homotopy transfer of a dg-algebra structure to its cohomology along a
//! deformation retract, producing the minimal A∞-structure and an
//! A∞-quasi-isomorphism `H → A`.

use std::fmt;
use std::sync::Arc;

use crate::a_infinity::{first_morphism_failure, first_stasheff_failure, AInfinityMorphism, AInfinityStructure};
use crate::dg_algebra::{validate, DgAlgebra};
use crate::error::{Error, Result};
use crate::exact_linear::{cohomology, ContractionData, GradedSpace, MultilinearMap};
use crate::scalar;

pub const DEFAULT_ARITY_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct TransferResult {
    pub structure: Arc<AInfinityStructure>,
    pub morphism: AInfinityMorphism,
    pub contraction: ContractionData,
    pub arity_cap: usize,
}

impl TransferResult {
    pub fn m(&self, n: usize) -> Result<&MultilinearMap> {
        self.structure.op(n)
    }

    pub fn f(&self, n: usize) -> Result<&MultilinearMap> {
        self.morphism.component(n)
    }

    pub fn cohomology(&self) -> &Arc<GradedSpace> {
        &self.contraction.cohomology
    }
}

/// Transfers along the given retract and verifies every Stasheff and
/// morphism identity up to `arity_cap` before returning.
///
/// With `G_1 = −i` and, for `n ≥ 2`,
/// `Λ_n = Σ_{k=1}^{n−1} (−1)^{k+1} m_2(G_k ⊗ G_{n−k})` (Koszul signs
/// included), `G_n = hΛ_n`, the outputs are `m_n = pΛ_n`, `f_1 = i` and
/// `f_n = −G_n`.
pub fn transfer(a: &DgAlgebra, c: &ContractionData, arity_cap: usize) -> Result<TransferResult> {
    if arity_cap < 2 {
        return Err(Error::Malformed("arity cap must be at least 2".into()));
    }
    validate(a).into_result()?;
    if c.complex.space != *a.space() || c.complex.d != *a.differential() {
        return Err(Error::Malformed("contraction is for a different complex".into()));
    }
    c.verify().map_err(|e| Error::Malformed(format!("contraction data: {e}")))?;

    let h = c.cohomology.clone();
    let space = a.space().clone();
    let (top, bottom) = (space.max_degree().unwrap_or(0), space.min_degree().unwrap_or(0));

    let mut g: Vec<MultilinearMap> = Vec::with_capacity(arity_cap + 1);
    g.push(MultilinearMap::zero(1, h.clone(), space.clone(), 0));
    let mut g1 = MultilinearMap::zero(1, h.clone(), space.clone(), 0);
    for k in 0..h.total_dim() {
        g1.set(vec![k], c.representative(k).negated());
    }
    g.push(g1);

    let mut ops = vec![
        MultilinearMap::zero(1, h.clone(), h.clone(), 1),
    ];
    let mut comps = vec![MultilinearMap::from_graded_map(&c.inclusion)];

    for n in 2..=arity_cap {
        let mut lambda = MultilinearMap::zero(n, h.clone(), space.clone(), 2 - n as i32);
        for k in 1..n {
            let (left, right) = (&g[k], &g[n - k]);
            let right_degree = 1 - (n - k) as i64;
            for (lt, lv) in left.entries() {
                let ld = left.input_degree(lt) + left.shift();
                let prefix = h_degree(&h, lt);
                let sign = scalar::sign(k as i64 + 1 + right_degree * prefix);
                for (rt, rv) in right.entries() {
                    let out = ld + right.input_degree(rt) + right.shift();
                    if out < bottom || out > top {
                        continue;
                    }
                    let mut tuple = lt.clone();
                    tuple.extend_from_slice(rt);
                    lambda.accumulate(&tuple, &a.mul(lv, rv), &sign);
                }
            }
        }
        let mut m_n = MultilinearMap::zero(n, h.clone(), h.clone(), 2 - n as i32);
        let mut g_n = MultilinearMap::zero(n, h.clone(), space.clone(), 1 - n as i32);
        let mut f_n = MultilinearMap::zero(n, h.clone(), space.clone(), 1 - n as i32);
        for (t, v) in lambda.entries() {
            m_n.set(t.clone(), c.projection.apply(v));
            let hv = c.homotopy.apply(v);
            f_n.set(t.clone(), hv.negated());
            g_n.set(t.clone(), hv);
        }
        ops.push(m_n);
        comps.push(f_n);
        g.push(g_n);
    }

    let structure = Arc::new(AInfinityStructure::new(h.clone(), ops)?);
    let target = Arc::new(AInfinityStructure::from_dg_algebra(a, arity_cap));
    let morphism = AInfinityMorphism::new(structure.clone(), target, comps)?;

    if let Some((n, defect)) = first_stasheff_failure(&structure, arity_cap)? {
        return Err(Error::SignConventionFault(format!(
            "transferred structure violates the Stasheff identity in arity {n} on ({})",
            defect.first_nonzero().map(|(t, _)| defect.render_tuple(t)).unwrap_or_default()
        )));
    }
    if let Some((n, defect)) = first_morphism_failure(&morphism, arity_cap)? {
        return Err(Error::SignConventionFault(format!(
            "transferred morphism violates the morphism identity in arity {n} on ({})",
            defect.first_nonzero().map(|(t, _)| defect.render_tuple(t)).unwrap_or_default()
        )));
    }
    Ok(TransferResult {
        structure,
        morphism,
        contraction: c.clone(),
        arity_cap,
    })
}

/// Computes the canonical retract and transfers along it.
pub fn transfer_algebra(a: &DgAlgebra, arity_cap: usize) -> Result<TransferResult> {
    validate(a).into_result()?;
    let c = cohomology(&a.complex())?;
    transfer(a, &c, arity_cap)
}

fn h_degree(h: &GradedSpace, tuple: &[usize]) -> i64 {
    tuple.iter().map(|&i| h.degree_of(i) as i64).sum()
}

/// Planar binary rooted tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn internal_edges(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => {
                let inner = |t: &Tree| usize::from(matches!(t, Tree::Node(..)));
                inner(l) + inner(r) + l.internal_edges() + r.internal_edges()
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "•"),
            Tree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// All planar binary trees with `n` leaves, ordered by the size of the left
/// subtree and then recursively.
pub fn tree_summands(n: usize) -> Vec<Tree> {
    assert!(n >= 1, "a tree has at least one leaf");
    if n == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        let rights = tree_summands(n - k);
        for l in tree_summands(k) {
            for r in &rights {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}
