//! Graded vector spaces, sparse elements and degree-shifting linear maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A finite-dimensional Z-graded space with an ordered, named basis in each
/// degree. Basis elements also carry a global index: degrees ascending, then
/// the order within the degree.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSpace {
    basis: BTreeMap<i32, Vec<String>>,
    offsets: BTreeMap<i32, usize>,
    index: Vec<(i32, usize)>,
    names: HashMap<String, Vec<usize>>,
}

impl GradedSpace {
    pub fn new(basis: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        let basis: BTreeMap<i32, Vec<String>> =
            basis.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let mut offsets = BTreeMap::new();
        let mut index = Vec::new();
        let mut names: HashMap<String, Vec<usize>> = HashMap::new();
        for (&deg, elems) in &basis {
            offsets.insert(deg, index.len());
            let mut seen = std::collections::HashSet::new();
            for (k, name) in elems.iter().enumerate() {
                if !seen.insert(name.as_str()) {
                    return Err(Error::Malformed(format!(
                        "basis name {name:?} repeated in degree {deg}"
                    )));
                }
                if name.is_empty() || name.contains('@') {
                    return Err(Error::Malformed(format!(
                        "invalid basis name {name:?} in degree {deg}"
                    )));
                }
                names.entry(name.clone()).or_default().push(index.len());
                index.push((deg, k));
            }
        }
        Ok(GradedSpace {
            basis,
            offsets,
            index,
            names,
        })
    }

    /// Convenience constructor from `(degree, names)` pairs.
    pub fn from_degrees<S: AsRef<str>>(spec: &[(i32, &[S])]) -> Result<Self> {
        let mut basis = BTreeMap::new();
        for (d, names) in spec {
            let entry: &mut Vec<String> = basis.entry(*d).or_default();
            entry.extend(names.iter().map(|s| s.as_ref().to_string()));
        }
        Self::new(basis)
    }

    pub fn zero_space() -> Self {
        Self::new(BTreeMap::new()).expect("empty space")
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.basis.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.index.len()
    }

    pub fn is_zero(&self) -> bool {
        self.index.is_empty()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.basis.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.basis.keys().next_back().copied()
    }

    pub fn basis_names(&self, degree: i32) -> &[String] {
        self.basis.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn degree_of(&self, idx: usize) -> i32 {
        self.index[idx].0
    }

    pub fn local_index(&self, idx: usize) -> usize {
        self.index[idx].1
    }

    pub fn global_index(&self, degree: i32, local: usize) -> usize {
        debug_assert!(local < self.dim(degree));
        self.offsets[&degree] + local
    }

    /// Global indices of the basis in the given degree.
    pub fn indices(&self, degree: i32) -> std::ops::Range<usize> {
        match self.offsets.get(&degree) {
            Some(&o) => o..o + self.dim(degree),
            None => 0..0,
        }
    }

    pub fn name(&self, idx: usize) -> &str {
        let (d, k) = self.index[idx];
        &self.basis[&d][k]
    }

    /// The name, qualified with `@degree` when the bare name is ambiguous.
    pub fn qualified_name(&self, idx: usize) -> String {
        let name = self.name(idx);
        if self.names.get(name).map_or(0, Vec::len) > 1 {
            format!("{name}@{}", self.degree_of(idx))
        } else {
            name.to_string()
        }
    }

    /// Resolves `name` or `name@degree` to a global index.
    pub fn lookup(&self, name: &str) -> Result<usize> {
        if let Some((base, deg)) = name.rsplit_once('@') {
            let deg: i32 = deg
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("bad degree qualifier in {name:?}")))?;
            return self
                .basis_names(deg)
                .iter()
                .position(|n| n == base)
                .map(|k| self.global_index(deg, k))
                .ok_or_else(|| Error::Malformed(format!("no basis element {name:?}")));
        }
        match self.names.get(name).map(Vec::as_slice) {
            Some([idx]) => Ok(*idx),
            Some(_) => Err(Error::Malformed(format!(
                "basis name {name:?} is ambiguous; qualify it as {name}@degree"
            ))),
            None => Err(Error::Malformed(format!("no basis element {name:?}"))),
        }
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree_of_vector(&self, v: &Vector) -> Result<Option<i32>> {
        let mut deg = None;
        for (&i, _) in v.iter() {
            if i >= self.total_dim() {
                return Err(Error::Malformed(format!(
                    "basis index {i} outside a space of dimension {}",
                    self.total_dim()
                )));
            }
            let d = self.degree_of(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Inhomogeneous(self.render(v)));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn to_dense(&self, v: &Vector, degree: i32) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim(degree)];
        let range = self.indices(degree);
        for (&i, c) in v.iter() {
            debug_assert!(range.contains(&i), "component outside degree {degree}");
            if range.contains(&i) {
                out[i - range.start] = c.clone();
            }
        }
        out
    }

    pub fn from_dense(&self, degree: i32, coords: &[Scalar]) -> Vector {
        debug_assert_eq!(coords.len(), self.dim(degree));
        let start = self.indices(degree).start;
        Vector::from_pairs(
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (start + k, c.clone())),
        )
    }

    /// Human-readable linear combination, e.g. `xz - 1/2 yz`.
    pub fn render(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (&i, c)) in v.iter().enumerate() {
            let name = if i < self.total_dim() {
                self.qualified_name(i)
            } else {
                format!("#{i}")
            };
            let neg = scalar::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&scalar::format(&abs));
                out.push(' ');
            }
            out.push_str(&name);
        }
        out
    }
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.basis.iter()).finish()
    }
}

/// A sparse element of a graded space, keyed by global basis index.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    coeffs: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Vector::zero();
        v.coeffs.insert(i, Scalar::one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v = Vector::zero();
        for (i, c) in pairs {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(i).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in other.iter() {
            self.add_term(i, &(x * c));
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        for (&i, x) in other.iter() {
            self.add_term(i, x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            coeffs: self.coeffs.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn negated(&self) -> Vector {
        Vector {
            coeffs: self.coeffs.iter().map(|(&i, x)| (i, -x.clone())).collect(),
        }
    }
}

impl std::ops::Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coeffs.iter().map(|(i, c)| (i, scalar::format(c))))
            .finish()
    }
}

/// A linear map raising degree by `shift`, stored as one dense block per
/// source degree. A missing block is the zero map.
#[derive(Clone)]
pub struct GradedMap {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    shift: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn new(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        shift: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        for (&d, m) in &blocks {
            if m.cols() != source.dim(d) || m.rows() != target.dim(d + shift) {
                return Err(Error::Malformed(format!(
                    "block in degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(d + shift),
                    source.dim(d)
                )));
            }
        }
        let blocks = blocks
            .into_iter()
            .filter(|(_, m)| !m.is_zero() && m.rows() > 0 && m.cols() > 0)
            .collect();
        Ok(GradedMap {
            source,
            target,
            shift,
            blocks,
        })
    }

    pub fn zero(source: Arc<GradedSpace>, target: Arc<GradedSpace>, shift: i32) -> Self {
        GradedMap {
            source,
            target,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let blocks = space
            .support()
            .map(|d| (d, Matrix::identity(space.dim(d))))
            .collect();
        GradedMap {
            source: space.clone(),
            target: space,
            shift: 0,
            blocks,
        }
    }

    /// Builds a map from images of basis vectors.
    pub fn from_images(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        shift: i32,
        image: impl Fn(usize) -> Vector,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for d in source.support() {
            let rows = target.dim(d + shift);
            let mut m = Matrix::zeros(rows, source.dim(d));
            for (k, idx) in source.indices(d).enumerate() {
                let v = image(idx);
                if v.is_zero() {
                    continue;
                }
                if target.degree_of_vector(&v)? != Some(d + shift) {
                    return Err(Error::Malformed(format!(
                        "image of {} has the wrong degree",
                        source.name(idx)
                    )));
                }
                let col = target.to_dense(&v, d + shift);
                for (i, c) in col.into_iter().enumerate() {
                    m[(i, k)] = c;
                }
            }
            blocks.insert(d, m);
        }
        Self::new(source, target, shift, blocks)
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

    pub fn block(&self, degree: i32) -> Option<&Matrix> {
        self.blocks.get(&degree)
    }

    /// The block in the given source degree, materialising zeros.
    pub fn block_or_zero(&self, degree: i32) -> Matrix {
        self.blocks.get(&degree).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.target.dim(degree + self.shift), self.source.dim(degree))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn apply_basis(&self, idx: usize) -> Vector {
        let d = self.source.degree_of(idx);
        let Some(m) = self.blocks.get(&d) else {
            return Vector::zero();
        };
        let k = self.source.local_index(idx);
        self.target.from_dense(d + self.shift, &m.column(k))
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, c) in v.iter() {
            let d = self.source.degree_of(i);
            let Some(m) = self.blocks.get(&d) else {
                continue;
            };
            let k = self.source.local_index(i);
            let start = self.target.indices(d + self.shift).start;
            for r in 0..m.rows() {
                let a = &m[(r, k)];
                if !a.is_zero() {
                    out.add_term(start + r, &(a * c));
                }
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        assert!(
            *other.target == *self.source,
            "composition of maps with mismatched spaces"
        );
        let mut blocks = BTreeMap::new();
        for d in other.source.support() {
            let (Some(b), Some(a)) = (other.blocks.get(&d), self.blocks.get(&(d + other.shift)))
            else {
                continue;
            };
            blocks.insert(d, a.mul(b));
        }
        GradedMap::new(
            other.source.clone(),
            self.target.clone(),
            self.shift + other.shift,
            blocks,
        )
        .expect("composed blocks have consistent shapes")
    }

    fn combine(&self, other: &GradedMap, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> GradedMap {
        assert!(
            *self.source == *other.source
                && *self.target == *other.target
                && self.shift == other.shift,
            "adding maps with mismatched shapes"
        );
        let blocks = self
            .source
            .support()
            .map(|d| (d, f(&self.block_or_zero(d), &other.block_or_zero(d))))
            .collect();
        GradedMap::new(self.source.clone(), self.target.clone(), self.shift, blocks)
            .expect("consistent shapes")
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        self.combine(other, Matrix::add)
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.combine(other, Matrix::sub)
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let blocks = self.blocks.iter().map(|(&d, m)| (d, m.scale(c))).collect();
        GradedMap::new(self.source.clone(), self.target.clone(), self.shift, blocks)
            .expect("consistent shapes")
    }

    /// First source degree where the two maps differ, if any.
    pub fn first_difference(&self, other: &GradedMap) -> Option<i32> {
        self.source
            .support()
            .find(|&d| self.block_or_zero(d) != other.block_or_zero(d))
    }
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.shift == other.shift
            && self.first_difference(other).is_none()
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMap")
            .field("shift", &self.shift)
            .field("blocks", &self.blocks)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn space() -> GradedSpace {
        GradedSpace::from_degrees(&[(0, &["1"][..]), (1, &["x", "y"][..]), (2, &["x"][..])]).unwrap()
    }

    #[test]
    fn indexing_and_lookup() {
        let s = space();
        assert_eq!(s.total_dim(), 4);
        assert_eq!(s.indices(1), 1..3);
        assert_eq!(s.lookup("y").unwrap(), 2);
        assert!(s.lookup("x").is_err());
        assert_eq!(s.lookup("x@2").unwrap(), 3);
        assert_eq!(s.qualified_name(3), "x@2");
        assert_eq!(s.qualified_name(2), "y");
    }

    #[test]
    fn rejects_repeated_names() {
        assert!(GradedSpace::from_degrees(&[(1, &["a", "a"][..])]).is_err());
    }

    #[test]
    fn vector_arithmetic_cancels() {
        let mut v = Vector::basis(1);
        v.add_term(1, &int(-1));
        assert!(v.is_zero());
        let w = &Vector::basis(2) - &Vector::basis(1);
        assert_eq!(space().render(&w), "-x@1 + y");
    }

    #[test]
    fn homogeneity() {
        let s = space();
        let v = &Vector::basis(0) + &Vector::basis(1);
        assert!(matches!(s.degree_of_vector(&v), Err(Error::Inhomogeneous(_))));
        assert_eq!(s.degree_of_vector(&Vector::zero()).unwrap(), None);
    }

    #[test]
    fn map_composition() {
        let s = Arc::new(space());
        let id = GradedMap::identity(s.clone());
        let v = &Vector::basis(1) + &Vector::basis(2);
        assert_eq!(id.apply(&v), v);
        let two = id.scale(&int(2));
        assert_eq!(two.compose(&two), id.scale(&int(4)));
        assert!(id.sub(&id).is_zero());
    }
}
