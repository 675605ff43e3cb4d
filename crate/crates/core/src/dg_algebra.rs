//! Finite-dimensional dg-algebras, their cohomology algebras, reductions and
//! augmentations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linear::{
    cohomology, row_space_basis, ChainComplex, ContractionData, GradedMap, GradedSpace, Matrix,
    MultilinearMap, Vector,
};
use crate::scalar::{self, Scalar};

/// A graded space with a degree +1 differential and a degree 0 product,
/// optionally with a unit in degree 0. Non-unital algebras are first class.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    space: Arc<GradedSpace>,
    d: GradedMap,
    product: MultilinearMap,
    unit: Option<Vector>,
}

impl DgAlgebra {
    pub fn new(
        space: Arc<GradedSpace>,
        d: GradedMap,
        product: MultilinearMap,
        unit: Option<Vector>,
    ) -> Result<Self> {
        if d.shift() != 1 || **d.source() != *space || **d.target() != *space {
            return Err(Error::Malformed("differential must be a degree +1 endomorphism".into()));
        }
        if product.arity() != 2
            || product.shift() != 0
            || **product.source() != *space
            || **product.target() != *space
        {
            return Err(Error::Malformed("product must be a degree 0 binary operation".into()));
        }
        if let Some(u) = &unit {
            match space.degree_of_vector(u)? {
                Some(0) => {}
                _ => return Err(Error::Malformed("unit must be a nonzero degree 0 element".into())),
            }
        }
        Ok(DgAlgebra {
            space,
            d,
            product,
            unit,
        })
    }

    /// The algebra with zero differential on the given product.
    pub fn with_zero_differential(product: MultilinearMap, unit: Option<Vector>) -> Result<Self> {
        let space = product.source().clone();
        let d = GradedMap::zero(space.clone(), space.clone(), 1);
        Self::new(space, d, product, unit)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }

    pub fn product(&self) -> &MultilinearMap {
        &self.product
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn complex(&self) -> ChainComplex {
        ChainComplex::new(self.space.clone(), self.d.clone()).expect("validated at construction")
    }

    pub fn d(&self, v: &Vector) -> Vector {
        self.d.apply(v)
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product.eval(&[a.clone(), b.clone()])
    }

    fn mul_basis(&self, a: usize, b: usize) -> Option<&Vector> {
        self.product.get(&[a, b])
    }

    /// `ā = (-1)^{|a|} a` for homogeneous `a`.
    pub fn bar(&self, a: &Vector) -> Result<Vector> {
        Ok(match self.space.degree_of_vector(a)? {
            Some(d) if d.rem_euclid(2) == 1 => a.negated(),
            _ => a.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    SquareZero { element: String },
    Leibniz { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    LeftUnit { element: String },
    RightUnit { element: String },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::SquareZero { element } => write!(f, "d∘d ≠ 0 on {element}"),
            ValidationFailure::Leibniz { left, right } => {
                write!(f, "Leibniz rule fails on ({left}, {right})")
            }
            ValidationFailure::Associativity { a, b, c } => {
                write!(f, "product not associative on ({a}, {b}, {c})")
            }
            ValidationFailure::LeftUnit { element } => write!(f, "1·{element} ≠ {element}"),
            ValidationFailure::RightUnit { element } => write!(f, "{element}·1 ≠ {element}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "all identities hold");
        }
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks `d² = 0`, the Leibniz rule `d(ab) = d(a)b + (-1)^{|a|} a d(b)`,
/// associativity and (if present) the unit laws on all basis tuples. At most
/// one witness is recorded per kind of identity.
pub fn validate(a: &DgAlgebra) -> ValidationReport {
    let space = &a.space;
    let n = space.total_dim();
    let top = space.max_degree().unwrap_or(0);
    let mut failures = Vec::new();

    if let Some(i) = (0..n).find(|&i| !a.d(&a.d.apply_basis(i)).is_zero()) {
        failures.push(ValidationFailure::SquareZero {
            element: space.qualified_name(i),
        });
    }

    'leibniz: for x in 0..n {
        for y in 0..n {
            let (dx, dy) = (space.degree_of(x), space.degree_of(y));
            if dx + dy + 1 > top {
                continue;
            }
            let lhs = a.d(&a.mul_basis(x, y).cloned().unwrap_or_default());
            let mut rhs = a.mul(&a.d.apply_basis(x), &Vector::basis(y));
            rhs.add_scaled(&a.mul(&Vector::basis(x), &a.d.apply_basis(y)), &scalar::sign(dx as i64));
            if lhs != rhs {
                failures.push(ValidationFailure::Leibniz {
                    left: space.qualified_name(x),
                    right: space.qualified_name(y),
                });
                break 'leibniz;
            }
        }
    }

    'assoc: for x in 0..n {
        for y in 0..n {
            let xy = a.mul_basis(x, y);
            for z in 0..n {
                if space.degree_of(x) + space.degree_of(y) + space.degree_of(z) > top {
                    continue;
                }
                let left = match xy {
                    Some(v) => a.mul(v, &Vector::basis(z)),
                    None => Vector::zero(),
                };
                let right = match a.mul_basis(y, z) {
                    Some(v) => a.mul(&Vector::basis(x), v),
                    None => Vector::zero(),
                };
                if left != right {
                    failures.push(ValidationFailure::Associativity {
                        a: space.qualified_name(x),
                        b: space.qualified_name(y),
                        c: space.qualified_name(z),
                    });
                    break 'assoc;
                }
            }
        }
    }

    if let Some(u) = &a.unit {
        for x in 0..n {
            let e = Vector::basis(x);
            if a.mul(u, &e) != e {
                failures.push(ValidationFailure::LeftUnit {
                    element: space.qualified_name(x),
                });
                break;
            }
        }
        for x in 0..n {
            let e = Vector::basis(x);
            if a.mul(&e, u) != e {
                failures.push(ValidationFailure::RightUnit {
                    element: space.qualified_name(x),
                });
                break;
            }
        }
    }
    ValidationReport { failures }
}

/// `H(A)` together with its retract data and the induced product
/// `[a][b] = p(i[a] · i[b])`.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebra {
    pub contraction: ContractionData,
    pub product: MultilinearMap,
}

impl CohomologyAlgebra {
    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.contraction.cohomology
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product.eval(&[a.clone(), b.clone()])
    }

    fn positive_basis(&self) -> Vec<usize> {
        let h = self.space();
        (0..h.total_dim()).filter(|&i| h.degree_of(i) > 0).collect()
    }

    /// First pair of positive-degree basis classes with nonzero product.
    pub fn first_nontrivial_reduced_product(&self) -> Option<(usize, usize)> {
        let pos = self.positive_basis();
        pos.iter()
            .flat_map(|&a| pos.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| self.product.get(&[a, b]).is_some())
    }

    pub fn is_reduced_product_trivial(&self) -> bool {
        self.first_nontrivial_reduced_product().is_none()
    }

    /// Largest `k` such that some product of `k` positive-degree classes is
    /// nonzero; computed by saturating the spans of `k`-fold products.
    pub fn cup_length(&self) -> usize {
        let h = self.space();
        let pos = self.positive_basis();
        let mut current: Vec<Vector> = pos.iter().map(|&i| Vector::basis(i)).collect();
        let mut k = 0;
        while !current.is_empty() {
            k += 1;
            let products: Vec<Vector> = current
                .iter()
                .flat_map(|p| pos.iter().map(move |&x| (p, x)))
                .map(|(p, x)| self.mul(p, &Vector::basis(x)))
                .filter(|v| !v.is_zero())
                .collect();
            current = span_basis(h, &products);
        }
        k
    }

    pub fn is_associative(&self) -> bool {
        let n = self.space().total_dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let ab = self.product.eval_basis(&[a, b]);
                    let bc = self.product.eval_basis(&[b, c]);
                    self.mul(&ab, &Vector::basis(c)) == self.mul(&Vector::basis(a), &bc)
                })
            })
        })
    }
}

/// Echelon basis of the span of homogeneous vectors, degree by degree.
pub(crate) fn span_basis(space: &GradedSpace, vs: &[Vector]) -> Vec<Vector> {
    let mut by_degree: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    for v in vs {
        if let Ok(Some(d)) = space.degree_of_vector(v) {
            by_degree.entry(d).or_default().push(space.to_dense(v, d));
        }
    }
    by_degree
        .into_iter()
        .flat_map(|(d, rows)| {
            row_space_basis(&rows, space.dim(d))
                .into_iter()
                .map(move |r| (d, r))
        })
        .map(|(d, r)| space.from_dense(d, &r))
        .collect()
}

pub fn induced_cohomology_algebra(a: &DgAlgebra) -> Result<CohomologyAlgebra> {
    validate(a).into_result()?;
    let contraction = cohomology(&a.complex())?;
    let product = induced_product(a, &contraction);
    Ok(CohomologyAlgebra {
        contraction,
        product,
    })
}

/// `p(m₂(i ⊗ i))` on basis pairs of `H`.
pub fn induced_product(a: &DgAlgebra, c: &ContractionData) -> MultilinearMap {
    let h = c.cohomology.clone();
    let mut product = MultilinearMap::zero(2, h.clone(), h.clone(), 0);
    let reps: Vec<Vector> = (0..h.total_dim()).map(|k| c.representative(k)).collect();
    for x in 0..h.total_dim() {
        for y in 0..h.total_dim() {
            let v = c.projection.apply(&a.mul(&reps[x], &reps[y]));
            product.set(vec![x, y], v);
        }
    }
    product
}

/// Coordinate functional on `A⁰` picking out one degree 0 basis element; for
/// a simplicial cochain algebra this is evaluation at that vertex.
pub fn basepoint_functional(a: &DgAlgebra, basepoint: usize) -> Result<Vec<Scalar>> {
    let dim = a.space.dim(0);
    if basepoint >= dim {
        return Err(Error::Malformed(format!(
            "basepoint index {basepoint} out of range for {dim} degree 0 basis elements"
        )));
    }
    let mut f = vec![Scalar::zero(); dim];
    f[basepoint] = Scalar::one();
    Ok(f)
}

fn connected_components(a: &DgAlgebra) -> Result<usize> {
    let c = cohomology(&a.complex())?;
    Ok(c.cohomology.dim(0))
}

/// The non-unital subalgebra with `A⁰` replaced by the kernel of an
/// augmentation functional; its cohomology is the reduced cohomology.
pub fn reduced_subalgebra(a: &DgAlgebra, functional: &[Scalar]) -> Result<DgAlgebra> {
    let space = &a.space;
    if functional.len() != space.dim(0) {
        return Err(Error::Malformed("functional length must equal dim A⁰".into()));
    }
    let components = connected_components(a)?;
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    if let Some(u) = &a.unit {
        let at_unit: Scalar = space
            .to_dense(u, 0)
            .iter()
            .zip(functional)
            .map(|(x, f)| x * f)
            .sum();
        if !at_unit.is_one() {
            return Err(Error::Malformed("augmentation must send the unit to 1".into()));
        }
    }
    let kernel = Matrix::from_rows(&[functional.to_vec()], space.dim(0)).kernel();
    let mut basis: BTreeMap<i32, Vec<(String, Vector)>> = BTreeMap::new();
    for deg in space.support() {
        let elems = if deg == 0 {
            kernel
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let vec = space.from_dense(0, v);
                    let name = match vec.iter().collect::<Vec<_>>()[..] {
                        [(&i, c)] if c.is_one() => space.name(i).to_string(),
                        _ => format!("k{k}"),
                    };
                    (name, vec)
                })
                .collect()
        } else {
            space
                .indices(deg)
                .map(|i| (space.name(i).to_string(), Vector::basis(i)))
                .collect()
        };
        basis.insert(deg, elems);
    }
    subalgebra(a, &basis)
}

/// The (non-unital) subalgebra spanned by the given homogeneous vectors,
/// re-expressed in that basis; fails if it is not closed under `d` and the
/// product.
pub fn subalgebra(a: &DgAlgebra, basis: &BTreeMap<i32, Vec<(String, Vector)>>) -> Result<DgAlgebra> {
    let names = basis
        .iter()
        .map(|(&d, v)| (d, v.iter().map(|(n, _)| n.clone()).collect()))
        .collect();
    let sub = Arc::new(GradedSpace::new(names)?);
    let mut embed_blocks = BTreeMap::new();
    for (&d, elems) in basis {
        let cols: Vec<Vec<Scalar>> = elems
            .iter()
            .map(|(_, v)| {
                if a.space.degree_of_vector(v)?.is_some_and(|e| e != d) {
                    return Err(Error::Malformed(format!("basis vector outside degree {d}")));
                }
                Ok(a.space.to_dense(v, d))
            })
            .collect::<Result<_>>()?;
        if !cols.is_empty() {
            embed_blocks.insert(d, Matrix::from_columns(&cols, a.space.dim(d)));
        }
    }
    let embed = GradedMap::new(sub.clone(), a.space.clone(), 0, embed_blocks)?;
    let solver = crate::exact_linear::Solver::new(&embed);
    let pull = |v: &Vector, what: &str| -> Result<Vector> {
        solver
            .solve(v)?
            .ok_or_else(|| Error::Malformed(format!("subspace is not closed under {what}")))
    };
    let images: Vec<Vector> = (0..sub.total_dim()).map(|i| embed.apply_basis(i)).collect();
    let d_images = images
        .iter()
        .map(|v| pull(&a.d(v), "the differential"))
        .collect::<Result<Vec<_>>>()?;
    let d = GradedMap::from_images(sub.clone(), sub.clone(), 1, |i| d_images[i].clone())?;
    let mut product = MultilinearMap::zero(2, sub.clone(), sub.clone(), 0);
    for x in 0..sub.total_dim() {
        for y in 0..sub.total_dim() {
            let v = a.mul(&images[x], &images[y]);
            if !v.is_zero() {
                product.insert(vec![x, y], pull(&v, "the product")?)?;
            }
        }
    }
    DgAlgebra::new(sub, d, product, None)
}

/// Name of the degree −1 basis element of an augmented complex.
pub const AUGMENTATION_NAME: &str = "k";

/// The chain complex `K --ε--> A⁰ → A¹ → ⋯` with `ε(1)` the unit.
pub fn augmented_complex(a: &DgAlgebra) -> Result<ChainComplex> {
    let unit = a
        .unit
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("augmentation needs a unital algebra".into()))?;
    if a.space.dim(-1) > 0 {
        return Err(Error::Malformed("algebra already has degree −1 elements".into()));
    }
    let components = connected_components(a)?;
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    let mut names: BTreeMap<i32, Vec<String>> = a
        .space
        .support()
        .map(|d| (d, a.space.basis_names(d).to_vec()))
        .collect();
    names.insert(-1, vec![AUGMENTATION_NAME.to_string()]);
    let space = Arc::new(GradedSpace::new(names)?);
    // old global index i maps to i + 1 (the new element comes first)
    let shift_up = |v: &Vector| Vector::from_pairs(v.iter().map(|(&i, c)| (i + 1, c.clone())));
    let unit_image = shift_up(unit);
    let d = GradedMap::from_images(space.clone(), space.clone(), 1, |i| {
        if i == 0 {
            unit_image.clone()
        } else {
            shift_up(&a.d.apply_basis(i - 1))
        }
    })?;
    ChainComplex::new(space, d)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar::int;

    /// Λ(x, y, z) truncated above degree `top`, with `dz = dz_target`.
    pub(crate) fn heisenberg(top: i32, dz_target: &str) -> DgAlgebra {
        let mut spec: Vec<(i32, Vec<&str>)> = vec![(0, vec!["1"]), (1, vec!["x", "y", "z"]), (2, vec!["xy", "xz", "yz"])];
        if top >= 3 {
            spec.push((3, vec!["xyz"]));
        }
        let mut basis = BTreeMap::new();
        for (d, n) in &spec {
            basis.insert(*d, n.iter().map(|s| s.to_string()).collect());
        }
        let s = Arc::new(GradedSpace::new(basis).unwrap());
        let monomial = |letters: &str| -> Option<(i64, usize)> {
            // sort letters, tracking the sign of the permutation
            let mut v: Vec<char> = letters.chars().collect();
            let mut sign = 1;
            for i in 0..v.len() {
                for j in 0..v.len() - 1 - i {
                    if v[j] > v[j + 1] {
                        v.swap(j, j + 1);
                        sign = -sign;
                    } else if v[j] == v[j + 1] {
                        return None;
                    }
                }
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                return None;
            }
            let name: String = if v.is_empty() { "1".into() } else { v.into_iter().collect() };
            s.lookup(&name).ok().map(|i| (sign, i))
        };
        let word = |i: usize| if s.name(i) == "1" { String::new() } else { s.name(i).to_string() };
        let mut product = MultilinearMap::zero(2, s.clone(), s.clone(), 0);
        for a in 0..s.total_dim() {
            for b in 0..s.total_dim() {
                if let Some((sign, k)) = monomial(&format!("{}{}", word(a), word(b))) {
                    product.insert(vec![a, b], Vector::from_pairs([(k, int(sign))])).unwrap();
                }
            }
        }
        let dz = Vector::basis(s.lookup(dz_target).unwrap());
        let z = s.lookup("z").unwrap();
        // extend d from generators by the Leibniz rule
        let d_gen = |i: usize| if i == z { dz.clone() } else { Vector::zero() };
        let mut images = Vec::with_capacity(s.total_dim());
        for i in 0..s.total_dim() {
            let w = word(i);
            let mut acc = Vector::zero();
            let letters: Vec<char> = w.chars().collect();
            for (pos, ch) in letters.iter().enumerate() {
                let g = s.lookup(&ch.to_string()).unwrap();
                let dg = d_gen(g);
                if dg.is_zero() {
                    continue;
                }
                let before: String = letters[..pos].iter().collect();
                let after: String = letters[pos + 1..].iter().collect();
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                for (&t, c) in dg.iter() {
                    let mid = word(t);
                    if let Some((sg, k)) = monomial(&format!("{before}{mid}{after}")) {
                        acc.add_term(k, &(c * int(sign * sg)));
                    }
                }
            }
            images.push(acc);
        }
        let d = GradedMap::from_images(s.clone(), s.clone(), 1, |i| images[i].clone()).unwrap();
        DgAlgebra::new(s.clone(), d, product, Some(Vector::basis(0))).unwrap()
    }

    #[test]
    fn heisenberg_algebras_validate() {
        assert!(validate(&heisenberg(2, "xy")).is_valid());
        assert!(validate(&heisenberg(3, "xy")).is_valid());
    }

    #[test]
    fn exterior_algebra_zero_differential_is_valid() {
        let a = heisenberg(3, "xy");
        let zero = DgAlgebra::with_zero_differential(a.product().clone(), a.unit().cloned()).unwrap();
        assert!(validate(&zero).is_valid());
    }

    #[test]
    fn dz_equals_xz_is_still_a_dga_when_truncated() {
        // d(xz) lands in degree 3, which vanishes, so every identity holds.
        assert!(validate(&heisenberg(2, "xz")).is_valid());
    }

    #[test]
    fn dz_equals_xz_breaks_leibniz_in_full_exterior_algebra() {
        let a = heisenberg(3, "xy");
        let s = a.space().clone();
        let (z, xz) = (s.lookup("z").unwrap(), s.lookup("xz").unwrap());
        let d = GradedMap::from_images(s.clone(), s.clone(), 1, |i| {
            if i == z {
                Vector::basis(xz)
            } else {
                a.differential().apply_basis(i)
            }
        })
        .unwrap();
        let broken = DgAlgebra::new(s, d, a.product().clone(), a.unit().cloned()).unwrap();
        let report = validate(&broken);
        assert_eq!(
            report.failures,
            vec![ValidationFailure::Leibniz {
                left: "y".into(),
                right: "z".into()
            }]
        );
    }

    #[test]
    fn square_zero_failure_names_element() {
        let s = Arc::new(GradedSpace::from_degrees(&[(0, &["a"][..]), (1, &["b"][..]), (2, &["c"][..])]).unwrap());
        let d = GradedMap::from_images(s.clone(), s.clone(), 1, |i| if i < 2 { Vector::basis(i + 1) } else { Vector::zero() })
            .unwrap();
        let a = DgAlgebra::new(s.clone(), d, MultilinearMap::zero(2, s.clone(), s, 0), None).unwrap();
        let report = validate(&a);
        assert_eq!(report.failures[0], ValidationFailure::SquareZero { element: "a".into() });
    }

    #[test]
    fn heisenberg_cohomology_products() {
        let truncated = induced_cohomology_algebra(&heisenberg(2, "xy")).unwrap();
        let h = truncated.space().clone();
        let (x, y) = (h.lookup("[x]").unwrap(), h.lookup("[y]").unwrap());
        assert!(truncated.product.get(&[x, y]).is_none());
        assert!(truncated.is_reduced_product_trivial());
        assert_eq!(truncated.cup_length(), 1);
        assert!(truncated.is_associative());

        let full = induced_cohomology_algebra(&heisenberg(3, "xy")).unwrap();
        assert!(!full.is_reduced_product_trivial());
        let h = full.space();
        let (x, yz) = (h.lookup("[x]").unwrap(), h.lookup("[yz]").unwrap());
        assert_eq!(full.product.eval_basis(&[x, yz]), Vector::basis(h.lookup("[xyz]").unwrap()));
    }

    #[test]
    fn zero_differential_product_is_induced_verbatim() {
        let a = heisenberg(3, "xy");
        let zero = DgAlgebra::with_zero_differential(a.product().clone(), a.unit().cloned()).unwrap();
        let h = induced_cohomology_algebra(&zero).unwrap();
        for (t, v) in zero.product().entries() {
            assert_eq!(h.product.eval_basis(t).len(), v.len());
        }
        assert_eq!(h.product.len(), zero.product().len());
        assert_eq!(h.cup_length(), 3);
    }

    #[test]
    fn augmented_point_is_acyclic() {
        let s = Arc::new(GradedSpace::from_degrees(&[(0, &["p"][..])]).unwrap());
        let mut m = MultilinearMap::zero(2, s.clone(), s.clone(), 0);
        m.insert(vec![0, 0], Vector::basis(0)).unwrap();
        let pt = DgAlgebra::with_zero_differential(m, Some(Vector::basis(0))).unwrap();
        let aug = augmented_complex(&pt).unwrap();
        let c = cohomology(&aug).unwrap();
        assert!(c.cohomology.is_zero());
        let reduced = reduced_subalgebra(&pt, &basepoint_functional(&pt, 0).unwrap()).unwrap();
        assert!(reduced.space().is_zero());
    }
}
