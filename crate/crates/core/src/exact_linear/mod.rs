//! Exact linear algebra over graded rational vector spaces.

mod contraction;
mod graded;
mod matrix;
mod multilinear;

use std::collections::BTreeMap;

pub use contraction::{cohomology, ChainComplex, ContractionData};
pub use graded::{GradedMap, GradedSpace, Vector};
pub use matrix::{in_span, row_space_basis, Echelon, Matrix};
pub use multilinear::{for_each_tuple, MultilinearMap};

use crate::error::{Error, Result};

/// Some preimage of a homogeneous `target` under `map`, or `None` when there
/// is none. Free variables are set to zero after leftmost-pivot elimination.
pub fn solve(map: &GradedMap, target: &Vector) -> Result<Option<Vector>> {
    Solver::new(map).solve(target)
}

/// Echelonized basis of `ker(map)` in one source degree.
pub fn kernel_basis(map: &GradedMap, degree: i32) -> Vec<Vector> {
    let space = map.source();
    map.block_or_zero(degree)
        .kernel()
        .iter()
        .map(|v| space.from_dense(degree, v))
        .collect()
}

/// Reusable solver for `map(x) = b` that caches one elimination per degree.
pub struct Solver<'a> {
    map: &'a GradedMap,
    cache: std::cell::RefCell<BTreeMap<i32, Echelon>>,
}

impl<'a> Solver<'a> {
    pub fn new(map: &'a GradedMap) -> Self {
        Solver {
            map,
            cache: Default::default(),
        }
    }

    pub fn solve(&self, target: &Vector) -> Result<Option<Vector>> {
        let tspace = self.map.target();
        let Some(deg) = tspace.degree_of_vector(target)? else {
            return Ok(Some(Vector::zero()));
        };
        let src = deg - self.map.shift();
        let sspace = self.map.source();
        if sspace.dim(src) == 0 {
            return Ok(None);
        }
        let mut cache = self.cache.borrow_mut();
        let ech = cache
            .entry(src)
            .or_insert_with(|| self.map.block_or_zero(src).echelon());
        let b = tspace.to_dense(target, deg);
        Ok(matrix::solve_with(ech, sspace.dim(src), &b).map(|x| sspace.from_dense(src, &x)))
    }
}

/// Dense coordinates of homogeneous vectors of one degree; errors if a vector
/// lies in another degree.
pub fn dense_in_degree(space: &GradedSpace, degree: i32, vs: &[Vector]) -> Result<Vec<Vec<crate::scalar::Scalar>>> {
    vs.iter()
        .map(|v| match space.degree_of_vector(v)? {
            Some(d) if d != degree => Err(Error::Malformed(format!(
                "vector of degree {d} where degree {degree} was expected"
            ))),
            _ => Ok(space.to_dense(v, degree)),
        })
        .collect()
}

/// Is `v` (homogeneous) in the span of `vs`?
pub fn vector_in_span(space: &GradedSpace, vs: &[Vector], v: &Vector) -> Result<bool> {
    let Some(deg) = space.degree_of_vector(v)? else {
        return Ok(true);
    };
    let rows: Vec<_> = vs
        .iter()
        .filter(|w| space.degree_of_vector(w).ok().flatten() == Some(deg))
        .map(|w| space.to_dense(w, deg))
        .collect();
    Ok(in_span(&rows, &space.to_dense(v, deg)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use std::sync::Arc;

    fn heisenberg_d() -> (Arc<GradedSpace>, GradedMap) {
        let s = Arc::new(
            GradedSpace::from_degrees(&[(0, &["1"][..]), (1, &["x", "y", "z"][..]), (2, &["xy", "xz", "yz"][..])])
                .unwrap(),
        );
        let (z, xy) = (s.lookup("z").unwrap(), s.lookup("xy").unwrap());
        let d = GradedMap::from_images(s.clone(), s.clone(), 1, |i| {
            if i == z {
                Vector::basis(xy)
            } else {
                Vector::zero()
            }
        })
        .unwrap();
        (s, d)
    }

    #[test]
    fn solve_identity_and_zero() {
        let (s, _) = heisenberg_d();
        let id = GradedMap::identity(s.clone());
        let v = Vector::from_pairs([(1, int(2)), (3, int(-1))]);
        assert_eq!(solve(&id, &v).unwrap(), Some(v));
        let zero = GradedMap::zero(s.clone(), s, 0);
        assert_eq!(solve(&zero, &Vector::zero()).unwrap(), Some(Vector::zero()));
        assert_eq!(solve(&zero, &Vector::basis(1)).unwrap(), None);
    }

    #[test]
    fn solve_heisenberg_boundary() {
        let (s, d) = heisenberg_d();
        let xy = Vector::basis(s.lookup("xy").unwrap());
        let z = solve(&d, &xy).unwrap().unwrap();
        assert_eq!(d.apply(&z), xy);
        assert_eq!(z, Vector::basis(s.lookup("z").unwrap()));
        assert_eq!(solve(&d, &Vector::basis(s.lookup("xz").unwrap())).unwrap(), None);
    }

    #[test]
    fn solve_rejects_inhomogeneous_target() {
        let (s, d) = heisenberg_d();
        let v = &Vector::basis(s.lookup("x").unwrap()) + &Vector::basis(s.lookup("xy").unwrap());
        assert!(solve(&d, &v).is_err());
    }

    #[test]
    fn kernels() {
        let (s, d) = heisenberg_d();
        let k2 = kernel_basis(&d, 2);
        assert_eq!(k2.len(), 3);
        let k1 = kernel_basis(&d, 1);
        assert_eq!(k1, vec![Vector::basis(s.lookup("x").unwrap()), Vector::basis(s.lookup("y").unwrap())]);
        assert!(kernel_basis(&GradedMap::identity(s.clone()), 1).is_empty());
    }
}
