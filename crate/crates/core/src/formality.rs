//! Formality certificates from transferred A∞-structures, the
//! trivial-product induction through unique Massey products, and the span
//! splice from augmented to ordinary cochains.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::dg_algebra::{augmented_complex, induced_cohomology_algebra, validate, DgAlgebra};
use crate::error::{Error, Result};
use crate::exact_linear::{cohomology, for_each_tuple, ChainComplex, ContractionData, GradedMap, GradedSpace, Vector};
use crate::massey::{
    check_vanishing_hypothesis, higher_massey_unique, massey_vanishes, triple_massey, CohomologyClass, MasseyOutcome,
};
use crate::transfer::{transfer, TransferResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArityBound {
    Finite(usize),
    Unbounded,
}

impl fmt::Display for ArityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArityBound::Finite(n) => write!(f, "{n}"),
            ArityBound::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Largest arity `n` for which `m_n` can be nonzero on positive-degree
/// classes for degree reasons: positive inputs of `m_n` land in degree at
/// least `n·d_min + 2 − n`.
pub fn arity_bound(h: &GradedSpace) -> ArityBound {
    let positive: Vec<i32> = h.support().filter(|&d| d > 0).collect();
    let (Some(&dmin), Some(&dmax)) = (positive.first(), positive.last()) else {
        return ArityBound::Finite(2);
    };
    if dmin == 1 {
        return ArityBound::Unbounded;
    }
    let n = ((dmax - 2) / (dmin - 1)).max(2);
    ArityBound::Finite(n as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    FormalUpToCap,
    NonFormal,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FormalUpToCap => "formal-up-to-cap",
            Verdict::NonFormal => "non-formal",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonFormalityWitness {
    /// `m_n(tuple) ≠ 0` while every lower product vanishes on positive
    /// classes, so the unique Massey product of `tuple` is nonzero.
    HigherProduct {
        n: usize,
        tuple: Vec<usize>,
        value: Vector,
        massey: MasseyOutcome,
    },
    /// A triple Massey product of basis classes that does not contain zero.
    TripleMassey { tuple: Vec<usize>, outcome: MasseyOutcome },
}

#[derive(Clone, Debug)]
pub struct FormalityCertificate {
    pub verdict: Verdict,
    /// Highest arity actually transferred and checked.
    pub cap: usize,
    pub requested_cap: usize,
    pub bound: ArityBound,
    /// The formal verdict covers every arity, not only those up to `cap`.
    pub bound_is_absolute: bool,
    /// First `n ≥ 3` with `m_n ≠ 0`, with a tuple and its value.
    pub first_nonzero: Option<(usize, Vec<usize>, Vector)>,
    pub witness: Option<NonFormalityWitness>,
    pub transfer: TransferResult,
}

/// `H^{<0} = 0` and `H⁰` is zero or spanned by the class of the unit with
/// the unit itself as representative; then `m_n` (`n ≥ 3`) vanishes on
/// tuples containing a degree 0 class.
fn unit_is_harmless(a: &DgAlgebra, c: &ContractionData) -> bool {
    let h = &c.cohomology;
    if h.min_degree().is_some_and(|d| d < 0) {
        return false;
    }
    match h.dim(0) {
        0 => true,
        1 => a.unit().is_some_and(|u| c.representative(h.global_index(0, 0)) == *u),
        _ => false,
    }
}

fn effective_cap(bound: ArityBound, absolute: bool, cap: usize) -> usize {
    match bound {
        ArityBound::Finite(b) if absolute => cap.min(b).max(2),
        _ => cap.max(2),
    }
}

fn positive_tuple(h: &GradedSpace, t: &[usize]) -> bool {
    t.iter().all(|&i| h.degree_of(i) > 0)
}

fn classes_of(h: &GradedSpace, tuple: &[usize]) -> Vec<CohomologyClass> {
    tuple.iter().map(|&k| CohomologyClass::basis(h, k)).collect()
}

/// Transfers up to the cap (lowered to the arity bound when that bound is
/// absolute) and classifies by the first nonzero higher product.
pub fn certify_formality(a: &DgAlgebra, cap: usize) -> Result<FormalityCertificate> {
    validate(a).into_result()?;
    let c = cohomology(&a.complex())?;
    let bound = arity_bound(&c.cohomology);
    let harmless = unit_is_harmless(a, &c);
    let absolute = harmless && matches!(bound, ArityBound::Finite(_));
    let eff = effective_cap(bound, absolute, cap);
    let t = transfer(a, &c, eff)?;
    let h = t.cohomology().clone();

    let first = (3..=eff).find_map(|n| {
        let m = t.m(n).ok()?;
        m.first_nonzero().map(|(tuple, v)| (n, tuple.clone(), v.clone()))
    });
    let mut cert = FormalityCertificate {
        verdict: Verdict::FormalUpToCap,
        cap: eff,
        requested_cap: cap,
        bound,
        bound_is_absolute: absolute,
        first_nonzero: first.clone(),
        witness: None,
        transfer: t,
    };
    let Some((n, _, _)) = first else {
        return Ok(cert);
    };
    cert.verdict = Verdict::Inconclusive;
    cert.bound_is_absolute = false;
    let t = &cert.transfer.clone();

    if check_vanishing_hypothesis(t, n).is_ok() {
        let m = t.m(n)?;
        if let Some((tuple, value)) = m.entries().find(|(tuple, _)| positive_tuple(&h, tuple)) {
            let classes = classes_of(&h, tuple);
            let massey = higher_massey_unique(a, t, &classes)?;
            let confirmed = n > 3 || {
                let out = triple_massey(a, &t.contraction, &classes[0], &classes[1], &classes[2])?;
                !massey_vanishes(&h, &out)?
            };
            if confirmed {
                cert.verdict = Verdict::NonFormal;
                cert.witness = Some(NonFormalityWitness::HigherProduct {
                    n,
                    tuple: tuple.clone(),
                    value: value.clone(),
                    massey,
                });
                return Ok(cert);
            }
        }
    }
    if let Some((tuple, outcome)) = nonvanishing_triple(a, &t.contraction)? {
        cert.verdict = Verdict::NonFormal;
        cert.witness = Some(NonFormalityWitness::TripleMassey { tuple, outcome });
    }
    Ok(cert)
}

/// First triple of positive-degree basis classes whose Massey product is
/// defined and does not contain zero.
pub fn nonvanishing_triple(a: &DgAlgebra, c: &ContractionData) -> Result<Option<(Vec<usize>, MasseyOutcome)>> {
    let h = c.cohomology.clone();
    let (Some(lo), Some(hi)) = (h.min_degree(), h.max_degree()) else {
        return Ok(None);
    };
    let mut tuples = Vec::new();
    for_each_tuple(&h, 3, lo + 1, hi + 1, |t| {
        if positive_tuple(&h, t) {
            tuples.push(t.to_vec());
        }
    });
    for tuple in tuples {
        let cl = classes_of(&h, &tuple);
        let out = triple_massey(a, c, &cl[0], &cl[1], &cl[2])?;
        if matches!(out, MasseyOutcome::Obstructed { .. }) {
            continue;
        }
        if !massey_vanishes(&h, &out)? {
            return Ok(Some((tuple, out)));
        }
    }
    Ok(None)
}

/// One step `n` of the induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionStep {
    pub n: usize,
    /// Basis tuples of positive-degree classes whose product degree is
    /// occupied in `H`.
    pub tuples_checked: usize,
    pub massey_products_vanish: bool,
    /// The transferred `m_n` is zero on every tuple.
    pub transferred_vanishes: bool,
    pub nonvanishing: Option<(Vec<usize>, Vector)>,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub certificate: FormalityCertificate,
    pub trace: Vec<InductionStep>,
}

/// For algebras whose reduced cohomology product is trivial: for each
/// `n = 3, …, cap`, computes every unique Massey `n`-product of basis
/// classes with an explicit defining system, and concludes `m_n = 0` when
/// all of them vanish, cross-checking against the transferred `m_n`.
pub fn theorem1_pipeline(a: &DgAlgebra, cap: usize) -> Result<PipelineReport> {
    let ha = induced_cohomology_algebra(a)?;
    if let Some((x, y)) = ha.first_nontrivial_reduced_product() {
        let h = ha.space();
        return Err(Error::NotApplicable(format!(
            "the reduced product is not trivial: {} · {} = {}",
            h.name(x),
            h.name(y),
            h.render(&ha.product.eval_basis(&[x, y]))
        )));
    }
    let c = ha.contraction.clone();
    let bound = arity_bound(&c.cohomology);
    let absolute = unit_is_harmless(a, &c) && matches!(bound, ArityBound::Finite(_));
    let eff = effective_cap(bound, absolute, cap);
    let t = transfer(a, &c, eff)?;
    let h = t.cohomology().clone();
    let (lo, hi) = (h.min_degree().unwrap_or(0), h.max_degree().unwrap_or(0));

    let mut trace = Vec::new();
    let mut verdict = Verdict::FormalUpToCap;
    let mut witness = None;
    for n in 3..=eff {
        check_vanishing_hypothesis(&t, n).map_err(|e| {
            Error::SignConventionFault(format!("induction hypothesis lost at n = {n}: {e}"))
        })?;
        let shift = 2 - n as i32;
        let mut tuples = Vec::new();
        for_each_tuple(&h, n, lo - shift, hi - shift, |tuple| {
            let out = tuple.iter().map(|&i| h.degree_of(i)).sum::<i32>() + shift;
            if positive_tuple(&h, tuple) && h.dim(out) > 0 {
                tuples.push(tuple.to_vec());
            }
        });
        let mut step = InductionStep {
            n,
            tuples_checked: tuples.len(),
            massey_products_vanish: true,
            transferred_vanishes: t.m(n)?.is_zero(),
            nonvanishing: None,
        };
        for tuple in &tuples {
            let outcome = higher_massey_unique(a, &t, &classes_of(&h, tuple))?;
            let MasseyOutcome::Unique { value, .. } = &outcome else {
                return Err(Error::SignConventionFault("unique Massey product expected".into()));
            };
            if !value.is_zero() {
                step.massey_products_vanish = false;
                step.nonvanishing = Some((tuple.clone(), value.clone()));
                witness = Some(NonFormalityWitness::HigherProduct {
                    n,
                    tuple: tuple.clone(),
                    value: t.m(n)?.eval_basis(tuple),
                    massey: outcome.clone(),
                });
                break;
            }
        }
        let positive_part_vanishes = t.m(n)?.entries().all(|(tuple, _)| !positive_tuple(&h, tuple));
        if step.massey_products_vanish != positive_part_vanishes {
            return Err(Error::SignConventionFault(format!(
                "Massey products and transferred m_{n} disagree"
            )));
        }
        let stop = !step.massey_products_vanish;
        if stop {
            verdict = Verdict::NonFormal;
        } else if !step.transferred_vanishes {
            verdict = Verdict::Inconclusive;
        }
        trace.push(step);
        if stop || verdict == Verdict::Inconclusive {
            break;
        }
    }
    let first_nonzero = (3..=eff).find_map(|n| {
        let m = t.m(n).ok()?;
        m.first_nonzero().map(|(tuple, v)| (n, tuple.clone(), v.clone()))
    });
    Ok(PipelineReport {
        certificate: FormalityCertificate {
            verdict,
            cap: eff,
            requested_cap: cap,
            bound,
            bound_is_absolute: absolute && verdict == Verdict::FormalUpToCap,
            first_nonzero,
            witness,
            transfer: t,
        },
        trace,
    })
}

/// Two chain maps out of a common complex.
#[derive(Clone, Debug)]
pub struct DgSpan {
    pub middle: ChainComplex,
    pub left_target: ChainComplex,
    pub left: GradedMap,
    pub right_target: ChainComplex,
    pub right: GradedMap,
}

pub fn is_chain_map(f: &GradedMap, source: &ChainComplex, target: &ChainComplex) -> bool {
    f.shift() == 0
        && **f.source() == *source.space
        && **f.target() == *target.space
        && target.d.compose(f) == f.compose(&source.d)
}

/// Does the chain map `f` induce an isomorphism in every degree?
pub fn induces_isomorphism(f: &GradedMap, source: &ChainComplex, target: &ChainComplex) -> Result<bool> {
    let hs = cohomology(source)?;
    let ht = cohomology(target)?;
    let induced = ht.projection.compose(f).compose(&hs.inclusion);
    let degrees: std::collections::BTreeSet<i32> = hs.cohomology.support().chain(ht.cohomology.support()).collect();
    Ok(degrees.into_iter().all(|d| {
        hs.cohomology.dim(d) == ht.cohomology.dim(d) && induced.block_or_zero(d).rank() == hs.cohomology.dim(d)
    }))
}

impl DgSpan {
    /// Both legs must be chain maps and quasi-isomorphisms.
    pub fn verify(&self) -> Result<()> {
        for (side, f, t) in [("left", &self.left, &self.left_target), ("right", &self.right, &self.right_target)] {
            if !is_chain_map(f, &self.middle, t) {
                return Err(Error::InvalidSpan(format!("{side} leg is not a chain map")));
            }
            if !induces_isomorphism(f, &self.middle, t)? {
                return Err(Error::InvalidSpan(format!("{side} leg is not a quasi-isomorphism")));
            }
        }
        Ok(())
    }
}

/// The span `H̃ ← Ĉ → Ĉ` with `Ĉ` the augmented complex of `a`, the left leg
/// the retraction onto its cohomology and the right leg the identity.
pub fn augmented_span(a: &DgAlgebra) -> Result<DgSpan> {
    let aug = augmented_complex(a)?;
    let c = cohomology(&aug)?;
    Ok(DgSpan {
        left_target: ChainComplex::with_zero_differential(c.cohomology.clone()),
        left: c.projection.clone(),
        right_target: aug.clone(),
        right: GradedMap::identity(aug.space.clone()),
        middle: aug,
    })
}

/// Name of the class inserted in degree 0 by [`splice_span`].
pub const INSERTED_UNIT: &str = "1";

/// Turns a span onto the augmented complex of `a` into a span onto `a`
/// itself: the middle complex loses its negative degrees, the right leg is
/// unchanged in degrees `≥ 0`, and the left leg gains a copy of `K` in
/// degree 0 hit through evaluation of the right leg at the basepoint.
pub fn splice_span(span: &DgSpan, a: &DgAlgebra, basepoint: usize) -> Result<DgSpan> {
    span.verify()?;
    let aug = augmented_complex(a)?;
    if span.right_target != aug {
        return Err(Error::InvalidSpan("right leg must land in the augmented complex".into()));
    }
    if !span.left_target.d.is_zero() {
        return Err(Error::InvalidSpan("left target must have zero differential".into()));
    }
    if basepoint >= a.space().dim(0) {
        return Err(Error::InvalidSpan("basepoint out of range".into()));
    }
    let b = &span.middle.space;
    let nonneg = |s: &GradedSpace| -> BTreeMap<i32, Vec<String>> {
        s.support().filter(|&d| d >= 0).map(|d| (d, s.basis_names(d).to_vec())).collect()
    };
    let middle_space = Arc::new(GradedSpace::new(nonneg(b))?);
    let to_old = |s: &GradedSpace, i: usize| b.global_index(s.degree_of(i), s.local_index(i));
    let d = GradedMap::from_images(middle_space.clone(), middle_space.clone(), 1, |i| {
        span.middle.d.apply_basis(to_old(&middle_space, i))
            .iter()
            .map(|(&k, c)| (middle_space.global_index(b.degree_of(k), b.local_index(k)), c.clone()))
            .collect_vector()
    })?;
    let middle = ChainComplex::new(middle_space.clone(), d)?;

    let target = a.space().clone();
    let aug_space = &aug.space;
    let right = GradedMap::from_images(middle_space.clone(), target.clone(), 0, |i| {
        span.right
            .apply_basis(to_old(&middle_space, i))
            .iter()
            .map(|(&k, c)| (target.global_index(aug_space.degree_of(k), aug_space.local_index(k)), c.clone()))
            .collect_vector()
    })?;

    let reduced = span.left_target.space.clone();
    let mut names: BTreeMap<i32, Vec<String>> = reduced.support().map(|d| (d, reduced.basis_names(d).to_vec())).collect();
    let mut unit_name = INSERTED_UNIT.to_string();
    while reduced.lookup(&unit_name).is_ok() {
        unit_name.push('\'');
    }
    names.entry(0).or_default().insert(0, unit_name);
    let h_space = Arc::new(GradedSpace::new(names)?);
    let unit_index = h_space.global_index(0, 0);
    let point = target.global_index(0, basepoint);
    let left = GradedMap::from_images(middle_space.clone(), h_space.clone(), 0, |i| {
        let old = to_old(&middle_space, i);
        let mut v: Vector = span
            .left
            .apply_basis(old)
            .iter()
            .map(|(&k, c)| {
                let (deg, local) = (reduced.degree_of(k), reduced.local_index(k));
                let shift = usize::from(deg == 0);
                (h_space.global_index(deg, local + shift), c.clone())
            })
            .collect_vector();
        if middle_space.degree_of(i) == 0 {
            v.add_term(unit_index, &right.apply_basis(i).coeff(point));
        }
        v
    })?;
    let out = DgSpan {
        left_target: ChainComplex::with_zero_differential(h_space),
        left,
        right_target: a.complex(),
        right,
        middle,
    };
    out.verify()?;
    Ok(out)
}

trait CollectVector {
    fn collect_vector(self) -> Vector;
}

impl<I: Iterator<Item = (usize, crate::scalar::Scalar)>> CollectVector for I {
    fn collect_vector(self) -> Vector {
        Vector::from_pairs(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::free::{exterior_pair, heisenberg, truncated_polynomial};
    use crate::complexes::simplicial::{cochain_algebra, point, sphere2, torus, wedge_of_two_circles, circle};
    use crate::dg_algebra::{basepoint_functional, reduced_subalgebra};

    #[test]
    fn arity_bounds() {
        let s2 = GradedSpace::from_degrees(&[(2, &["a"][..])]).unwrap();
        assert_eq!(arity_bound(&s2), ArityBound::Finite(2));
        let h = GradedSpace::from_degrees(&[(0, &["1"][..]), (1, &["a"][..])]).unwrap();
        assert_eq!(arity_bound(&h), ArityBound::Unbounded);
        assert_eq!(arity_bound(&GradedSpace::zero_space()), ArityBound::Finite(2));
        // degrees 2..8: n + 2 ≤ 8 gives 6
        let wide = GradedSpace::from_degrees(&[(2, &["a"][..]), (8, &["b"][..])]).unwrap();
        assert_eq!(arity_bound(&wide), ArityBound::Finite(6));
    }

    #[test]
    fn certificates() {
        let cert = certify_formality(&truncated_polynomial(), 8).unwrap();
        assert_eq!(cert.verdict, Verdict::FormalUpToCap);
        assert!(cert.bound_is_absolute);
        let cert = certify_formality(&exterior_pair(), 5).unwrap();
        assert_eq!(cert.verdict, Verdict::FormalUpToCap);
        assert!(!cert.bound_is_absolute);
        let cert = certify_formality(&heisenberg(2), 5).unwrap();
        assert_eq!(cert.verdict, Verdict::NonFormal);
        assert!(matches!(cert.witness, Some(NonFormalityWitness::HigherProduct { n: 3, .. })));
        let cert = certify_formality(&heisenberg(3), 4).unwrap();
        assert_eq!(cert.verdict, Verdict::NonFormal);
        assert!(matches!(cert.witness, Some(NonFormalityWitness::TripleMassey { .. })));
    }

    #[test]
    fn pipeline_on_heisenberg_and_torus() {
        let report = theorem1_pipeline(&heisenberg(2), 6).unwrap();
        assert_eq!(report.certificate.verdict, Verdict::NonFormal);
        assert_eq!(report.trace.len(), 1);
        let t = torus();
        let err = theorem1_pipeline(&cochain_algebra(&t).unwrap(), 4).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn pipeline_on_wedge() {
        let a = cochain_algebra(&wedge_of_two_circles()).unwrap();
        let report = theorem1_pipeline(&a, 6).unwrap();
        assert_eq!(report.certificate.verdict, Verdict::FormalUpToCap);
        assert_eq!(report.trace.len(), 4);
        assert!(report.trace.iter().all(|s| s.massey_products_vanish && s.transferred_vanishes));
    }

    #[test]
    fn sphere_reduced_is_absolutely_formal() {
        let a = cochain_algebra(&sphere2()).unwrap();
        let r = reduced_subalgebra(&a, &basepoint_functional(&a, 0).unwrap()).unwrap();
        let cert = certify_formality(&r, 8).unwrap();
        assert_eq!(cert.verdict, Verdict::FormalUpToCap);
        assert!(cert.bound_is_absolute);
        assert_eq!(cert.cap, 2);
    }

    #[test]
    fn splices() {
        for x in [point(), circle(), wedge_of_two_circles()] {
            let a = cochain_algebra(&x).unwrap();
            let span = augmented_span(&a).unwrap();
            span.verify().unwrap();
            let out = splice_span(&span, &a, 0).unwrap();
            let h = cohomology(&a.complex()).unwrap();
            assert_eq!(out.left_target.space.dim(0), 1);
            for d in 1..=2 {
                assert_eq!(out.left_target.space.dim(d), h.cohomology.dim(d));
            }
        }
    }
}
