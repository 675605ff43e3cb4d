//! Massey products through defining systems.
//!
//! A defining system for `x_1, …, x_n` is a family `a_{i,j}` (`0 ≤ i < j ≤ n`,
//! `(i,j) ≠ (0,n)`) with `[a_{i−1,i}] = x_i` and
//! `d a_{i,j} = Σ_{i<k<j} ā_{i,k} a_{k,j}`, where `ā = (−1)^{|a|} a`. Its value
//! is the class of `a_{0,n} = Σ_{0<k<n} ā_{0,k} a_{k,n}`.

use std::collections::BTreeMap;

use crate::dg_algebra::{span_basis, DgAlgebra};
use crate::error::{Error, Result};
use crate::exact_linear::{kernel_basis, vector_in_span, ContractionData, GradedSpace, Solver, Vector};
use crate::scalar;
use crate::transfer::TransferResult;

/// A homogeneous cohomology class; the degree is explicit so that zero
/// classes still have one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: i32,
    pub vector: Vector,
}

impl CohomologyClass {
    pub fn new(h: &GradedSpace, vector: Vector) -> Result<Self> {
        match h.degree_of_vector(&vector)? {
            Some(degree) => Ok(CohomologyClass { degree, vector }),
            None => Err(Error::Malformed("a zero class needs an explicit degree".into())),
        }
    }

    pub fn with_degree(h: &GradedSpace, degree: i32, vector: Vector) -> Result<Self> {
        match h.degree_of_vector(&vector)? {
            Some(d) if d != degree => Err(Error::Malformed(format!("class has degree {d}, not {degree}"))),
            _ => Ok(CohomologyClass { degree, vector }),
        }
    }

    pub fn zero(degree: i32) -> Self {
        CohomologyClass {
            degree,
            vector: Vector::zero(),
        }
    }

    pub fn basis(h: &GradedSpace, k: usize) -> Self {
        CohomologyClass {
            degree: h.degree_of(k),
            vector: Vector::basis(k),
        }
    }
}

/// `(−1)^{Σ_{j=1}^{n−1} (n−j)|x_j|}` for the degrees `|x_1|, …, |x_n|`.
pub fn epsilon(degrees: &[i32]) -> i32 {
    let n = degrees.len() as i64;
    let e: i64 = degrees
        .iter()
        .take(degrees.len().saturating_sub(1))
        .enumerate()
        .map(|(j, &d)| (n - 1 - j as i64) * d as i64)
        .sum();
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The sign `σ` with `⟨x_1, …, x_n⟩ ∋ σ · m_n(x_1, …, x_n)` for the transferred
/// structure and the defining system conventions above: `(−1)^n ε`.
pub fn detection_sign(degrees: &[i32]) -> i32 {
    if degrees.len().is_multiple_of(2) {
        epsilon(degrees)
    } else {
        -epsilon(degrees)
    }
}

/// Degree of `a_{i,j}`: `|x_{i+1}| + … + |x_j| − (j − i − 1)`.
pub fn cochain_degree(degrees: &[i32], i: usize, j: usize) -> i32 {
    degrees[i..j].iter().sum::<i32>() - (j - i - 1) as i32
}

fn bar(v: &Vector, degree: i32) -> Vector {
    if degree.rem_euclid(2) == 1 {
        v.negated()
    } else {
        v.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    pub classes: Vec<CohomologyClass>,
    pub cochains: BTreeMap<(usize, usize), Vector>,
}

impl DefiningSystem {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.classes.iter().map(|c| c.degree).collect()
    }

    pub fn cochain(&self, i: usize, j: usize) -> Vector {
        self.cochains.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `Σ_{i<k<j} ā_{i,k} a_{k,j}`.
    pub fn product_sum(&self, a: &DgAlgebra, i: usize, j: usize) -> Vector {
        product_sum(a, &self.degrees(), &self.cochains, i, j)
    }

    /// Degree of the Massey product: `Σ|x_i| − (n − 2)`.
    pub fn value_degree(&self) -> i32 {
        cochain_degree(&self.degrees(), 0, self.len()) + 1
    }

    /// Checks every defining equation exactly, in order of increasing `j − i`.
    pub fn validate(&self, a: &DgAlgebra, c: &ContractionData) -> Result<()> {
        let n = self.len();
        if n < 3 {
            return Err(Error::Malformed("Massey products need at least three classes".into()));
        }
        if let Some(&(i, j)) = self.cochains.keys().find(|&&(i, j)| i >= j || j > n || (i, j) == (0, n)) {
            return Err(Error::Malformed(format!("cochain index ({i},{j}) is out of range")));
        }
        let degrees = self.degrees();
        let space = a.space();
        for len in 1..n {
            for i in 0..=n - len {
                let j = i + len;
                if (i, j) == (0, n) {
                    continue;
                }
                let v = self.cochain(i, j);
                let violation = Error::DefiningSystemViolation { i, j };
                match space.degree_of_vector(&v) {
                    Ok(None) => {}
                    Ok(Some(d)) if d == cochain_degree(&degrees, i, j) => {}
                    _ => return Err(violation),
                }
                let ok = if len == 1 {
                    a.d(&v).is_zero() && c.projection.apply(&v) == self.classes[i].vector
                } else {
                    a.d(&v) == self.product_sum(a, i, j)
                };
                if !ok {
                    return Err(violation);
                }
            }
        }
        Ok(())
    }

    /// `a_{0,n}` after validation; it is always a cocycle.
    pub fn top_cochain(&self, a: &DgAlgebra, c: &ContractionData) -> Result<Vector> {
        self.validate(a, c)?;
        let top = self.product_sum(a, 0, self.len());
        if !a.d(&top).is_zero() {
            return Err(Error::SignConventionFault("a_{0,n} of a valid defining system is not closed".into()));
        }
        Ok(top)
    }

    /// The class `[a_{0,n}]` in `H`.
    pub fn value(&self, a: &DgAlgebra, c: &ContractionData) -> Result<Vector> {
        Ok(c.projection.apply(&self.top_cochain(a, c)?))
    }
}

fn product_sum(
    a: &DgAlgebra,
    degrees: &[i32],
    cochains: &BTreeMap<(usize, usize), Vector>,
    i: usize,
    j: usize,
) -> Vector {
    let mut out = Vector::zero();
    for k in i + 1..j {
        let (Some(left), Some(right)) = (cochains.get(&(i, k)), cochains.get(&(k, j))) else {
            continue;
        };
        out.add_assign(&a.mul(&bar(left, cochain_degree(degrees, i, k)), right));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MasseyOutcome {
    /// The product is a single class.
    Unique {
        value: Vector,
        degree: i32,
        sign: i32,
        witness: DefiningSystem,
    },
    /// The triple product `representative + span(indeterminacy)`.
    Coset {
        representative: Vector,
        indeterminacy: Vec<Vector>,
        degree: i32,
        witness: DefiningSystem,
    },
    /// A defining system with `[a_{0,n}] = 0` was found.
    WitnessOfVanishing { degree: i32, witness: DefiningSystem },
    /// No defining system extends past `pair`: the class of the required
    /// right-hand side is nonzero.
    Obstructed { pair: (usize, usize), class: Vector },
}

impl MasseyOutcome {
    pub fn witness(&self) -> Option<&DefiningSystem> {
        match self {
            MasseyOutcome::Unique { witness, .. }
            | MasseyOutcome::Coset { witness, .. }
            | MasseyOutcome::WitnessOfVanishing { witness, .. } => Some(witness),
            MasseyOutcome::Obstructed { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MasseyOutcome::Unique { .. } => "unique",
            MasseyOutcome::Coset { .. } => "coset",
            MasseyOutcome::WitnessOfVanishing { .. } => "witness-of-vanishing",
            MasseyOutcome::Obstructed { .. } => "obstructed",
        }
    }

    /// Is `v` an element of the represented set?
    pub fn contains(&self, h: &GradedSpace, v: &Vector) -> Result<bool> {
        match self {
            MasseyOutcome::Unique { value, .. } => Ok(value == v),
            MasseyOutcome::Coset {
                representative,
                indeterminacy,
                ..
            } => vector_in_span(h, indeterminacy, &(v - representative)),
            MasseyOutcome::WitnessOfVanishing { .. } => Ok(v.is_zero()),
            MasseyOutcome::Obstructed { .. } => Err(Error::UndefinedProduct("no defining system exists".into())),
        }
    }
}

/// Does the Massey set contain zero?
pub fn massey_vanishes(h: &GradedSpace, outcome: &MasseyOutcome) -> Result<bool> {
    match outcome {
        MasseyOutcome::Obstructed { pair: (i, j), .. } => Err(Error::UndefinedProduct(format!(
            "the defining equation for a_({i},{j}) has no solution"
        ))),
        MasseyOutcome::WitnessOfVanishing { .. } => Ok(true),
        _ => outcome.contains(h, &Vector::zero()),
    }
}

fn check_classes(c: &ContractionData, classes: &[CohomologyClass]) -> Result<()> {
    for x in classes {
        CohomologyClass::with_degree(&c.cohomology, x.degree, x.vector.clone())?;
    }
    Ok(())
}

/// Result of extending a defining system one level at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Complete(DefiningSystem),
    Stuck { pair: (usize, usize), class: Vector },
}

/// Builds a defining system level by level from the given representatives of
/// the classes. Each `a_{i,j}` is a preimage found by elimination plus the
/// cocycle returned by `adjust(i, j, degree)`.
pub fn level_by_level(
    a: &DgAlgebra,
    c: &ContractionData,
    classes: &[CohomologyClass],
    representatives: &[Vector],
    mut adjust: impl FnMut(usize, usize, i32) -> Vector,
) -> Result<Extension> {
    check_classes(c, classes)?;
    let n = classes.len();
    if representatives.len() != n {
        return Err(Error::Malformed("one representative per class is required".into()));
    }
    let degrees: Vec<i32> = classes.iter().map(|x| x.degree).collect();
    let solver = Solver::new(a.differential());
    let mut cochains = BTreeMap::new();
    for (i, r) in representatives.iter().enumerate() {
        cochains.insert((i, i + 1), r.clone());
    }
    for len in 2..n {
        for i in 0..=n - len {
            let j = i + len;
            let rhs = product_sum(a, &degrees, &cochains, i, j);
            let class = c.projection.apply(&rhs);
            if !class.is_zero() {
                return Ok(Extension::Stuck { pair: (i, j), class });
            }
            let pre = solver.solve(&rhs)?.ok_or_else(|| {
                Error::SignConventionFault(format!("closed exact cochain for a_({i},{j}) has no preimage"))
            })?;
            cochains.insert((i, j), &pre + &adjust(i, j, cochain_degree(&degrees, i, j)));
        }
    }
    let ds = DefiningSystem {
        classes: classes.to_vec(),
        cochains,
    };
    ds.validate(a, c)?;
    Ok(Extension::Complete(ds))
}

fn canonical_representatives(c: &ContractionData, classes: &[CohomologyClass]) -> Vec<Vector> {
    classes.iter().map(|x| c.inclusion.apply(&x.vector)).collect()
}

/// The triple Massey product with its full indeterminacy, computed by ranging
/// over every choice in a defining system.
pub fn triple_massey(
    a: &DgAlgebra,
    c: &ContractionData,
    x1: &CohomologyClass,
    x2: &CohomologyClass,
    x3: &CohomologyClass,
) -> Result<MasseyOutcome> {
    let classes = [x1.clone(), x2.clone(), x3.clone()];
    let reps = canonical_representatives(c, &classes);
    let ds = match level_by_level(a, c, &classes, &reps, |_, _, _| Vector::zero())? {
        Extension::Complete(ds) => ds,
        Extension::Stuck { pair, class } => return Ok(MasseyOutcome::Obstructed { pair, class }),
    };
    let representative = ds.value(a, c)?;
    let degree = ds.value_degree();
    let degrees = ds.degrees();
    let space = a.space();
    let mut deltas = Vec::new();

    // a_{0,2} + z and a_{1,3} + w for cocycles z, w
    for z in kernel_basis(a.differential(), cochain_degree(&degrees, 0, 2)) {
        deltas.push(c.projection.apply(&a.mul(&bar(&z, cochain_degree(&degrees, 0, 2)), &reps[2])));
    }
    for w in kernel_basis(a.differential(), cochain_degree(&degrees, 1, 3)) {
        deltas.push(c.projection.apply(&a.mul(&bar(&reps[0], degrees[0]), &w)));
    }
    // a_{i−1,i} + d(b) for each basis element b one degree lower
    for k in 0..3 {
        for b in space.indices(degrees[k] - 1) {
            let db = a.d(&Vector::basis(b));
            if db.is_zero() {
                continue;
            }
            let mut shifted = reps.clone();
            shifted[k] = &shifted[k] + &db;
            match level_by_level(a, c, &classes, &shifted, |_, _, _| Vector::zero())? {
                Extension::Complete(other) => deltas.push(&other.value(a, c)? - &representative),
                Extension::Stuck { .. } => {
                    return Err(Error::SignConventionFault(
                        "changing a representative by a coboundary obstructed the product".into(),
                    ))
                }
            }
        }
    }
    let indeterminacy = span_basis(&c.cohomology, &deltas);
    Ok(MasseyOutcome::Coset {
        representative,
        indeterminacy,
        degree,
        witness: ds,
    })
}

/// Checks that `m_k` vanishes on positive-degree classes for `2 ≤ k < n`;
/// reports the smallest offending arity.
pub fn check_vanishing_hypothesis(t: &TransferResult, n: usize) -> Result<()> {
    let h = t.cohomology();
    for k in 1..n {
        let m = t.m(k)?;
        let offending = m
            .entries()
            .find(|(tuple, _)| k == 1 || tuple.iter().all(|&i| h.degree_of(i) > 0));
        if let Some((tuple, _)) = offending {
            return Err(Error::NotApplicable(format!(
                "m_{k} is nonzero on positive-degree classes, e.g. on ({})",
                m.render_tuple(tuple)
            )));
        }
    }
    Ok(())
}

fn require_positive(classes: &[CohomologyClass]) -> Result<()> {
    if let Some(x) = classes.iter().find(|x| x.degree <= 0) {
        return Err(Error::NotApplicable(format!(
            "classes must have positive degree, found one in degree {}",
            x.degree
        )));
    }
    Ok(())
}

/// The unique value of `⟨x_1, …, x_n⟩` when the lower transferred products
/// vanish on positive-degree classes, with an explicit defining system whose
/// value is checked against it.
pub fn higher_massey_unique(
    a: &DgAlgebra,
    t: &TransferResult,
    classes: &[CohomologyClass],
) -> Result<MasseyOutcome> {
    let n = classes.len();
    if n < 3 {
        return Err(Error::Malformed("Massey products need at least three classes".into()));
    }
    let c = &t.contraction;
    check_classes(c, classes)?;
    require_positive(classes)?;
    check_vanishing_hypothesis(t, n)?;
    let degrees: Vec<i32> = classes.iter().map(|x| x.degree).collect();
    let sign = detection_sign(&degrees);
    let inputs: Vec<Vector> = classes.iter().map(|x| x.vector.clone()).collect();
    let value = t.m(n)?.eval(&inputs).scaled(&scalar::int(sign as i64));
    let reps = canonical_representatives(c, classes);
    let witness = match level_by_level(a, c, classes, &reps, |_, _, _| Vector::zero())? {
        Extension::Complete(ds) => ds,
        Extension::Stuck { pair: (i, j), .. } => {
            return Err(Error::SignConventionFault(format!(
                "lower Massey product for a_({i},{j}) does not vanish although the hypothesis holds"
            )))
        }
    };
    let found = witness.value(a, c)?;
    if found != value {
        return Err(Error::SignConventionFault(format!(
            "defining system gives {} but the transferred product gives {}",
            c.cohomology.render(&found),
            c.cohomology.render(&value)
        )));
    }
    Ok(MasseyOutcome::Unique {
        value,
        degree: witness.value_degree(),
        sign,
        witness,
    })
}

/// Basis of `Γ = Σ_{j<n} Im(m_j)` in the given degree. For positive-degree
/// inputs the images are taken on positive-degree classes only, since a unit
/// makes `Im(m_2)` everything.
pub fn gamma_basis(t: &TransferResult, n: usize, degree: i32, positive_only: bool) -> Result<Vec<Vector>> {
    let h = t.cohomology();
    let mut images = Vec::new();
    for j in 1..n {
        let m = t.m(j)?;
        for (tuple, v) in m.entries() {
            if m.input_degree(tuple) + m.shift() != degree {
                continue;
            }
            if positive_only && !tuple.iter().all(|&i| h.degree_of(i) > 0) {
                continue;
            }
            images.push(v.clone());
        }
    }
    Ok(span_basis(h, &images))
}

/// Is `σ m_n(x_1, …, x_n) − [a_{0,n}]` in `Γ`?
pub fn detection_check(
    a: &DgAlgebra,
    t: &TransferResult,
    classes: &[CohomologyClass],
    ds: &DefiningSystem,
) -> Result<bool> {
    let n = classes.len();
    if ds.classes != classes {
        return Err(Error::Malformed("defining system is for different classes".into()));
    }
    let c = &t.contraction;
    let found = ds.value(a, c)?;
    let degrees = ds.degrees();
    let inputs: Vec<Vector> = classes.iter().map(|x| x.vector.clone()).collect();
    let predicted = t.m(n)?.eval(&inputs).scaled(&scalar::int(detection_sign(&degrees) as i64));
    let positive = classes.iter().all(|x| x.degree > 0);
    let gamma = gamma_basis(t, n, ds.value_degree(), positive)?;
    vector_in_span(&c.cohomology, &gamma, &(&predicted - &found))
}

/// Bounded search through defining systems for `n ≥ 4`; never a complete
/// description of the Massey set.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub degree: i32,
    pub values: Vec<Vector>,
    pub vanishing_witness: Option<DefiningSystem>,
    pub obstruction: Option<((usize, usize), Vector)>,
    pub nodes: usize,
    pub complete: bool,
}

impl Exploration {
    pub fn outcome(&self) -> Option<MasseyOutcome> {
        self.vanishing_witness
            .clone()
            .map(|witness| MasseyOutcome::WitnessOfVanishing {
                degree: self.degree,
                witness,
            })
    }
}

pub const DEFAULT_NODE_BUDGET: usize = 20_000;
const MAX_VALUES: usize = 64;

/// Backtracking over `a_{i,j} = particular + Σ c_k i(e_k)` with
/// `c_k ∈ {0, 1, −1}` over a basis `e_k` of the relevant cohomology, visiting
/// at most `budget` partial systems.
pub fn explore_massey(
    a: &DgAlgebra,
    c: &ContractionData,
    classes: &[CohomologyClass],
    budget: usize,
) -> Result<Exploration> {
    check_classes(c, classes)?;
    let n = classes.len();
    if n < 3 {
        return Err(Error::Malformed("Massey products need at least three classes".into()));
    }
    let degrees: Vec<i32> = classes.iter().map(|x| x.degree).collect();
    let pairs: Vec<(usize, usize)> = (2..n).flat_map(|len| (0..=n - len).map(move |i| (i, i + len))).collect();
    let mut cochains = BTreeMap::new();
    for (i, r) in canonical_representatives(c, classes).into_iter().enumerate() {
        cochains.insert((i, i + 1), r);
    }
    let mut search = Search {
        a,
        c,
        classes,
        degrees: &degrees,
        pairs: &pairs,
        solver: Solver::new(a.differential()),
        budget,
        out: Exploration {
            degree: cochain_degree(&degrees, 0, n) + 1,
            values: Vec::new(),
            vanishing_witness: None,
            obstruction: None,
            nodes: 0,
            complete: false,
        },
    };
    search.visit(0, &mut cochains)?;
    Ok(search.out)
}

struct Search<'a> {
    a: &'a DgAlgebra,
    c: &'a ContractionData,
    classes: &'a [CohomologyClass],
    degrees: &'a [i32],
    pairs: &'a [(usize, usize)],
    solver: Solver<'a>,
    budget: usize,
    out: Exploration,
}

impl Search<'_> {
    /// Returns `true` once the search should stop.
    fn visit(&mut self, depth: usize, cochains: &mut BTreeMap<(usize, usize), Vector>) -> Result<bool> {
        self.out.nodes += 1;
        if self.out.nodes > self.budget {
            return Ok(true);
        }
        let n = self.classes.len();
        if depth == self.pairs.len() {
            let top = product_sum(self.a, self.degrees, cochains, 0, n);
            let value = self.c.projection.apply(&top);
            if value.is_zero() && self.out.vanishing_witness.is_none() {
                let ds = DefiningSystem {
                    classes: self.classes.to_vec(),
                    cochains: cochains.clone(),
                };
                ds.validate(self.a, self.c)?;
                self.out.vanishing_witness = Some(ds);
            }
            if !self.out.values.contains(&value) && self.out.values.len() < MAX_VALUES {
                self.out.values.push(value);
            }
            return Ok(self.out.vanishing_witness.is_some());
        }
        let (i, j) = self.pairs[depth];
        let rhs = product_sum(self.a, self.degrees, cochains, i, j);
        let class = self.c.projection.apply(&rhs);
        if !class.is_zero() {
            if self.out.obstruction.is_none() {
                self.out.obstruction = Some(((i, j), class));
            }
            return Ok(false);
        }
        let particular = self
            .solver
            .solve(&rhs)?
            .ok_or_else(|| Error::SignConventionFault(format!("no preimage for a_({i},{j})")))?;
        let deg = cochain_degree(self.degrees, i, j);
        let free: Vec<Vector> = self
            .c
            .cohomology
            .indices(deg)
            .map(|k| self.c.representative(k))
            .collect();
        let mut coeffs = vec![0i64; free.len()];
        loop {
            let mut v = particular.clone();
            for (z, &k) in free.iter().zip(&coeffs) {
                if k != 0 {
                    v.add_scaled(z, &scalar::int(k));
                }
            }
            cochains.insert((i, j), v);
            if self.visit(depth + 1, cochains)? {
                cochains.remove(&(i, j));
                return Ok(true);
            }
            if !next_ternary(&mut coeffs) {
                break;
            }
        }
        cochains.remove(&(i, j));
        Ok(false)
    }
}

/// Advances through `{0, 1, −1}^k` starting from all zeros.
fn next_ternary(coeffs: &mut [i64]) -> bool {
    for c in coeffs.iter_mut() {
        match *c {
            0 => {
                *c = 1;
                return true;
            }
            1 => {
                *c = -1;
                return true;
            }
            _ => *c = 0,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg_algebra::tests::heisenberg;
    use crate::dg_algebra::induced_cohomology_algebra;
    use crate::exact_linear::cohomology;
    use crate::scalar::int;
    use crate::transfer::transfer;

    fn classes(h: &GradedSpace, names: &[&str]) -> Vec<CohomologyClass> {
        names.iter().map(|n| CohomologyClass::basis(h, h.lookup(n).unwrap())).collect()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&[1, 1, 1]), -1);
        assert_eq!(epsilon(&[2, 2, 2]), 1);
        assert_eq!(epsilon(&[2, 4, 6, 8]), 1);
        assert_eq!(detection_sign(&[1, 1, 1]), 1);
        assert_eq!(detection_sign(&[1, 1, 1, 1]), epsilon(&[1, 1, 1, 1]));
    }

    #[test]
    fn heisenberg_triple_product_by_hand() {
        let a = heisenberg(2, "xy");
        let c = cohomology(&a.complex()).unwrap();
        let h = &c.cohomology;
        let xs = classes(h, &["[x]", "[x]", "[y]"]);
        let out = triple_massey(&a, &c, &xs[0], &xs[1], &xs[2]).unwrap();
        let xz = Vector::basis(h.lookup("[xz]").unwrap());
        match &out {
            MasseyOutcome::Coset {
                representative,
                indeterminacy,
                degree,
                witness,
            } => {
                assert_eq!(*representative, xz);
                assert!(indeterminacy.is_empty());
                assert_eq!(*degree, 2);
                // a_{1,3} = −z, a_{0,2} = 0
                let s = a.space();
                assert_eq!(witness.cochain(1, 3), Vector::from_pairs([(s.lookup("z").unwrap(), int(-1))]));
                assert!(witness.cochain(0, 2).is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(!massey_vanishes(h, &out).unwrap());
    }

    #[test]
    fn unique_agrees_with_triple() {
        let a = heisenberg(2, "xy");
        let c = cohomology(&a.complex()).unwrap();
        let t = transfer(&a, &c, 4).unwrap();
        let h = c.cohomology.clone();
        for names in [["[x]", "[x]", "[y]"], ["[y]", "[x]", "[y]"], ["[x]", "[y]", "[y]"]] {
            let xs = classes(&h, &names);
            let unique = higher_massey_unique(&a, &t, &xs).unwrap();
            let triple = triple_massey(&a, &c, &xs[0], &xs[1], &xs[2]).unwrap();
            let MasseyOutcome::Unique { value, witness, .. } = &unique else { panic!() };
            assert!(triple.contains(&h, value).unwrap());
            assert!(detection_check(&a, &t, &xs, witness).unwrap());
        }
    }

    #[test]
    fn torus_is_not_applicable_and_obstructions_are_reported() {
        // the exterior algebra on x, y with zero differential behaves like the torus
        let full = heisenberg(3, "xy");
        let zero = DgAlgebra::with_zero_differential(full.product().clone(), full.unit().cloned()).unwrap();
        let c = cohomology(&zero.complex()).unwrap();
        let t = transfer(&zero, &c, 3).unwrap();
        let xs = classes(&c.cohomology, &["[x]", "[y]", "[x]"]);
        assert!(matches!(higher_massey_unique(&zero, &t, &xs), Err(Error::NotApplicable(_))));
        let out = triple_massey(&zero, &c, &xs[0], &xs[1], &xs[2]).unwrap();
        assert!(matches!(out, MasseyOutcome::Obstructed { pair: (0, 2), .. }));
        assert!(matches!(massey_vanishes(&c.cohomology, &out), Err(Error::UndefinedProduct(_))));
    }

    #[test]
    fn formal_triple_products_contain_zero() {
        let full = heisenberg(3, "xy");
        let zero = DgAlgebra::with_zero_differential(full.product().clone(), full.unit().cloned()).unwrap();
        let c = cohomology(&zero.complex()).unwrap();
        let h = c.cohomology.clone();
        let xs = classes(&h, &["[x]", "[x]", "[x]"]);
        let out = triple_massey(&zero, &c, &xs[0], &xs[1], &xs[2]).unwrap();
        assert!(massey_vanishes(&h, &out).unwrap());
        // indeterminacy is x·H¹ + H¹·x
        let MasseyOutcome::Coset { indeterminacy, .. } = &out else { panic!() };
        let ha = induced_cohomology_algebra(&zero).unwrap();
        let classical: Vec<Vector> = h
            .indices(1)
            .flat_map(|k| {
                [
                    ha.mul(&xs[0].vector, &Vector::basis(k)),
                    ha.mul(&Vector::basis(k), &xs[2].vector),
                ]
            })
            .collect();
        assert_eq!(span_basis(&h, &classical), *indeterminacy);
        let zero_class = CohomologyClass::zero(1);
        let out = triple_massey(&zero, &c, &zero_class, &xs[1], &xs[2]).unwrap();
        assert!(massey_vanishes(&h, &out).unwrap());
    }

    #[test]
    fn validator_names_first_violation() {
        let a = heisenberg(2, "xy");
        let c = cohomology(&a.complex()).unwrap();
        let xs = classes(&c.cohomology, &["[x]", "[x]", "[y]"]);
        let Extension::Complete(mut ds) = level_by_level(&a, &c, &xs, &canonical_representatives(&c, &xs), |_, _, _| Vector::zero()).unwrap() else {
            panic!()
        };
        ds.validate(&a, &c).unwrap();
        let z = a.space().lookup("z").unwrap();
        ds.cochains.insert((1, 3), Vector::basis(z));
        assert_eq!(ds.validate(&a, &c), Err(Error::DefiningSystemViolation { i: 1, j: 3 }));
        ds.cochains.insert((0, 1), Vector::basis(z));
        assert_eq!(ds.validate(&a, &c), Err(Error::DefiningSystemViolation { i: 0, j: 1 }));
    }

    #[test]
    fn explorer_finds_vanishing_for_formal_quadruple() {
        let full = heisenberg(3, "xy");
        let zero = DgAlgebra::with_zero_differential(full.product().clone(), full.unit().cloned()).unwrap();
        let c = cohomology(&zero.complex()).unwrap();
        let xs = classes(&c.cohomology, &["[x]", "[x]", "[x]", "[x]"]);
        let e = explore_massey(&zero, &c, &xs, DEFAULT_NODE_BUDGET).unwrap();
        assert!(!e.complete);
        assert!(e.vanishing_witness.is_some());
        assert!(massey_vanishes(&c.cohomology, &e.outcome().unwrap()).unwrap());
    }
}
