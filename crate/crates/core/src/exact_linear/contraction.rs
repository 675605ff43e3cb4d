//! Cochain complexes and their cohomology as an explicit deformation retract.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::graded::{GradedMap, GradedSpace, Vector};
use super::matrix::{row_space_basis, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A graded space with a degree +1 differential.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    pub space: Arc<GradedSpace>,
    pub d: GradedMap,
}

impl ChainComplex {
    pub fn new(space: Arc<GradedSpace>, d: GradedMap) -> Result<Self> {
        if d.shift() != 1 || **d.source() != *space || **d.target() != *space {
            return Err(Error::Malformed(
                "differential must be a degree +1 endomorphism of the space".into(),
            ));
        }
        Ok(ChainComplex { space, d })
    }

    /// The complex with zero differential.
    pub fn with_zero_differential(space: Arc<GradedSpace>) -> Self {
        let d = GradedMap::zero(space.clone(), space.clone(), 1);
        ChainComplex { space, d }
    }

    /// Checks `d∘d = 0`, naming the first offending basis element.
    pub fn check_square_zero(&self) -> Result<()> {
        for idx in 0..self.space.total_dim() {
            if !self.d.apply(&self.d.apply_basis(idx)).is_zero() {
                return Err(Error::InvalidComplex {
                    degree: self.space.degree_of(idx),
                    element: self.space.qualified_name(idx),
                });
            }
        }
        Ok(())
    }

    pub fn betti(&self, degree: i32) -> usize {
        let n = self.space.dim(degree);
        let rank_out = self.d.block(degree).map_or(0, Matrix::rank);
        let rank_in = self.d.block(degree - 1).map_or(0, Matrix::rank);
        n - rank_out - rank_in
    }
}

/// Deformation retract data `(i, p, h)` exhibiting `H` as a retract of a
/// complex `A`: `p i = 1`, `1 - i p = d h + h d`, and `h i = 0`, `p h = 0`,
/// `h h = 0`.
#[derive(Clone, Debug)]
pub struct ContractionData {
    pub complex: ChainComplex,
    pub cohomology: Arc<GradedSpace>,
    pub inclusion: GradedMap,
    pub projection: GradedMap,
    pub homotopy: GradedMap,
}

impl ContractionData {
    pub fn representative(&self, class: usize) -> Vector {
        self.inclusion.apply_basis(class)
    }

    pub fn betti_numbers(&self) -> BTreeMap<i32, usize> {
        self.cohomology
            .support()
            .map(|d| (d, self.cohomology.dim(d)))
            .collect()
    }

    /// Is the cochain `a` closed and exact?
    pub fn is_exact(&self, a: &Vector) -> bool {
        self.complex.d.apply(a).is_zero() && self.projection.apply(a).is_zero()
    }

    /// Checks every retract identity exactly; returns the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let d = &self.complex.d;
        let (i, p, h) = (&self.inclusion, &self.projection, &self.homotopy);
        let id_h = GradedMap::identity(self.cohomology.clone());
        let id_a = GradedMap::identity(self.complex.space.clone());
        if let Some(deg) = p.compose(i).first_difference(&id_h) {
            return Err(format!("p∘i ≠ id in degree {deg}"));
        }
        let lhs = id_a.sub(&i.compose(p));
        let rhs = d.compose(h).add(&h.compose(d));
        if let Some(deg) = lhs.first_difference(&rhs) {
            return Err(format!("id − i∘p ≠ d∘h + h∘d in degree {deg}"));
        }
        if let Some(deg) = h.compose(i).first_difference(&GradedMap::zero(
            self.cohomology.clone(),
            self.complex.space.clone(),
            -1,
        )) {
            return Err(format!("h∘i ≠ 0 in degree {deg}"));
        }
        if !p.compose(h).is_zero() {
            return Err("p∘h ≠ 0".into());
        }
        if !h.compose(h).is_zero() {
            return Err("h∘h ≠ 0".into());
        }
        if !d.compose(i).is_zero() {
            return Err("a chosen representative is not a cocycle".into());
        }
        Ok(())
    }
}

/// Computes `H(A)` with explicit retract data.
///
/// In each degree `A^n = B^n ⊕ H^n ⊕ C^n`: `C^n` is spanned by the standard
/// basis vectors at the non-pivot columns of the echelonized cocycles,
/// `B^n = d(C^{n-1})`, and `H^n` is the echelon basis of the cocycles reduced
/// modulo `B^n`. `h` inverts `d` from `B^n` onto `C^{n-1}` and vanishes on
/// `H^n ⊕ C^n`.
pub fn cohomology(complex: &ChainComplex) -> Result<ContractionData> {
    complex.check_square_zero()?;
    let space = &complex.space;
    let d = &complex.d;
    let degrees: Vec<i32> = space.support().collect();

    let mut cocycles: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    let mut complement: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for &n in &degrees {
        let z = d.block_or_zero(n).kernel();
        let pivots = leading_columns(&z);
        let c: Vec<usize> = (0..space.dim(n)).filter(|j| !pivots.contains(j)).collect();
        cocycles.insert(n, z);
        complement.insert(n, c);
    }

    let mut h_basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut reps: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    let mut proj_blocks = BTreeMap::new();
    let mut homotopy_blocks = BTreeMap::new();

    for &n in &degrees {
        let dim = space.dim(n);
        let prev_c = complement.get(&(n - 1)).cloned().unwrap_or_default();
        let d_prev = d.block_or_zero(n - 1);
        let boundaries: Vec<Vec<Scalar>> = prev_c.iter().map(|&j| d_prev.column(j)).collect();

        let b_echelon = row_space_basis(&boundaries, dim);
        let b_pivots = leading_columns(&b_echelon);
        let normal_forms: Vec<Vec<Scalar>> = cocycles[&n]
            .iter()
            .map(|z| reduce_modulo(z, &b_echelon, &b_pivots))
            .collect();
        let h_reps = row_space_basis(&normal_forms, dim);

        let mut columns = boundaries.clone();
        columns.extend(h_reps.iter().cloned());
        for &j in &complement[&n] {
            let mut e = vec![Scalar::zero(); dim];
            e[j] = Scalar::one();
            columns.push(e);
        }
        let change = Matrix::from_columns(&columns, dim);
        let inverse = change.inverse().ok_or_else(|| {
            Error::SignConventionFault(format!(
                "boundary/cohomology/complement decomposition is not a basis in degree {n}"
            ))
        })?;

        let nb = boundaries.len();
        let nh = h_reps.len();
        let h_rows: Vec<usize> = (nb..nb + nh).collect();
        let b_rows: Vec<usize> = (0..nb).collect();
        if nh > 0 {
            proj_blocks.insert(n, inverse.select_rows(&h_rows));
        }
        if nb > 0 {
            let mut section = Matrix::zeros(space.dim(n - 1), nb);
            for (k, &j) in prev_c.iter().enumerate() {
                section[(j, k)] = Scalar::one();
            }
            homotopy_blocks.insert(n, section.mul(&inverse.select_rows(&b_rows)));
        }
        let names = h_reps.iter().enumerate().map(|(k, r)| class_name(space, n, k, r)).collect();
        h_basis.insert(n, names);
        reps.insert(n, h_reps);
    }

    let h_space = Arc::new(GradedSpace::new(h_basis)?);
    let mut incl_blocks = BTreeMap::new();
    for (&n, r) in &reps {
        if !r.is_empty() {
            incl_blocks.insert(n, Matrix::from_columns(r, space.dim(n)));
        }
    }
    let inclusion = GradedMap::new(h_space.clone(), space.clone(), 0, incl_blocks)?;
    let projection = GradedMap::new(space.clone(), h_space.clone(), 0, proj_blocks)?;
    let homotopy = GradedMap::new(space.clone(), space.clone(), -1, homotopy_blocks)?;
    Ok(ContractionData {
        complex: complex.clone(),
        cohomology: h_space,
        inclusion,
        projection,
        homotopy,
    })
}

fn leading_columns(echelon_rows: &[Vec<Scalar>]) -> Vec<usize> {
    echelon_rows
        .iter()
        .filter_map(|r| r.iter().position(|x| !x.is_zero()))
        .collect()
}

fn reduce_modulo(v: &[Scalar], echelon: &[Vec<Scalar>], pivots: &[usize]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (row, &p) in echelon.iter().zip(pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (o, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *o -= &f * r;
            }
        }
    }
    out
}

/// `[x]` when the representative is a single basis element, else `h<n>_<k>`.
fn class_name(space: &GradedSpace, degree: i32, k: usize, rep: &[Scalar]) -> String {
    let nonzero: Vec<usize> = (0..rep.len()).filter(|&j| !rep[j].is_zero()).collect();
    if let [j] = nonzero[..] {
        if rep[j].is_one() {
            return format!("[{}]", space.basis_names(degree)[j]);
        }
    }
    format!("h{degree}_{k}")
}
