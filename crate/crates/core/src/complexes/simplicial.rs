//! Ordered simplicial complexes and their cochain algebras.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::dg_algebra::{induced_cohomology_algebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::exact_linear::{GradedMap, GradedSpace, MultilinearMap, Vector};
use crate::scalar;

/// Simplices are strictly increasing vertex-index lists, closed under faces,
/// stored by dimension and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    basepoint: usize,
}

impl OrderedSimplicialComplex {
    /// Requires every face of every listed simplex to be listed too.
    pub fn new(vertices: Vec<String>, simplices: Vec<Vec<usize>>, basepoint: usize) -> Result<Self> {
        Self::check_vertices(&vertices, basepoint)?;
        let mut set = BTreeSet::new();
        for s in simplices {
            Self::check_simplex(&vertices, &s)?;
            set.insert(s);
        }
        for (v, _) in vertices.iter().enumerate() {
            set.insert(vec![v]);
        }
        for s in &set {
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if !set.contains(&face) {
                    return Err(Error::MalformedComplex(format!(
                        "face {} of {} is missing",
                        render(&vertices, &face),
                        render(&vertices, s)
                    )));
                }
            }
        }
        Ok(Self::from_set(vertices, set, basepoint))
    }

    /// The smallest complex containing the given simplices.
    pub fn from_facets(vertices: Vec<String>, facets: Vec<Vec<usize>>, basepoint: usize) -> Result<Self> {
        Self::check_vertices(&vertices, basepoint)?;
        let mut set = BTreeSet::new();
        for (v, _) in vertices.iter().enumerate() {
            set.insert(vec![v]);
        }
        for mut f in facets {
            f.sort_unstable();
            Self::check_simplex(&vertices, &f)?;
            for mask in 1u64..(1u64 << f.len()) {
                let face: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                set.insert(face);
            }
        }
        Ok(Self::from_set(vertices, set, basepoint))
    }

    fn from_set(vertices: Vec<String>, set: BTreeSet<Vec<usize>>, basepoint: usize) -> Self {
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        OrderedSimplicialComplex {
            vertices,
            simplices,
            basepoint,
        }
    }

    fn check_vertices(vertices: &[String], basepoint: usize) -> Result<()> {
        if vertices.is_empty() {
            return Err(Error::MalformedComplex("no vertices".into()));
        }
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::MalformedComplex("vertex names must be distinct".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.is_empty() || v.contains(['.', '@'])) {
            return Err(Error::MalformedComplex(format!("invalid vertex name {v:?}")));
        }
        if basepoint >= vertices.len() {
            return Err(Error::MalformedComplex("basepoint out of range".into()));
        }
        Ok(())
    }

    fn check_simplex(vertices: &[String], s: &[usize]) -> Result<()> {
        if s.is_empty() {
            return Err(Error::MalformedComplex("empty simplex".into()));
        }
        if s.iter().any(|&v| v >= vertices.len()) {
            return Err(Error::MalformedComplex("vertex index out of range".into()));
        }
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedComplex(format!(
                "simplex {s:?} is not strictly increasing"
            )));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn with_basepoint(mut self, basepoint: usize) -> Result<Self> {
        if basepoint >= self.vertices.len() {
            return Err(Error::MalformedComplex("basepoint out of range".into()));
        }
        self.basepoint = basepoint;
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.simplices.last().map_or(0, |s| s.len() - 1)
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let set: BTreeSet<&Vec<usize>> = self.simplices.iter().collect();
        self.simplices
            .iter()
            .filter(|s| {
                (0..self.vertices.len()).all(|v| {
                    if s.contains(&v) {
                        return true;
                    }
                    let mut t = (*s).clone();
                    t.push(v);
                    t.sort_unstable();
                    !set.contains(&t)
                })
            })
            .cloned()
            .collect()
    }

    pub fn simplex_name(&self, s: &[usize]) -> String {
        render(&self.vertices, s)
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            let (a, b) = (find(&mut parent, s[0]), find(&mut parent, s[1]));
            parent[a] = b;
        }
        (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }
}

fn render(vertices: &[String], s: &[usize]) -> String {
    s.iter().map(|&v| vertices[v].as_str()).collect::<Vec<_>>().join(".")
}

/// Simplicial cochains with the coboundary `(δφ)(τ) = Σ_i (−1)^i φ(∂_i τ)` and
/// the front-face/back-face cup product
/// `(α ∪ β)(v_0…v_{p+q}) = α(v_0…v_p) β(v_p…v_{p+q})`. Basis elements are the
/// dual cochains of simplices, named by their vertices joined with dots.
pub fn cochain_algebra(x: &OrderedSimplicialComplex) -> Result<DgAlgebra> {
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    for s in &x.simplices {
        basis.entry(s.len() as i32 - 1).or_default().push(x.simplex_name(s));
    }
    let space = Arc::new(GradedSpace::new(basis)?);
    // simplices are stored in the same order as the basis
    let index: HashMap<&[usize], usize> = x.simplices.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();

    let mut images = vec![Vector::zero(); x.simplices.len()];
    for (t, tau) in x.simplices.iter().enumerate() {
        if tau.len() < 2 {
            continue;
        }
        for i in 0..tau.len() {
            let mut face = tau.clone();
            face.remove(i);
            images[index[face.as_slice()]].add_term(t, &scalar::sign(i as i64));
        }
    }
    let d = GradedMap::from_images(space.clone(), space.clone(), 1, |k| images[k].clone())?;

    let mut product = MultilinearMap::zero(2, space.clone(), space.clone(), 0);
    for (r, rho) in x.simplices.iter().enumerate() {
        for split in 0..rho.len() {
            let front = index[&rho[..=split]];
            let back = index[&rho[split..]];
            product.insert(vec![front, back], Vector::basis(r))?;
        }
    }
    let unit = Vector::from_pairs((0..x.vertices.len()).map(|v| (index[[v].as_slice()], scalar::one())));
    DgAlgebra::new(space, d, product, Some(unit))
}

/// Adds two cone points, named `N` and `S` (primed as needed to stay
/// distinct), after the existing vertices.
pub fn suspension(x: &OrderedSimplicialComplex) -> OrderedSimplicialComplex {
    let n = x.vertices.len();
    let mut vertices = x.vertices.clone();
    for base in ["N", "S"] {
        let mut name = base.to_string();
        while vertices.contains(&name) {
            name.push('\'');
        }
        vertices.push(name);
    }
    let mut set: BTreeSet<Vec<usize>> = x.simplices.iter().cloned().collect();
    for cone in [n, n + 1] {
        set.insert(vec![cone]);
        for s in &x.simplices {
            let mut t = s.clone();
            t.push(cone);
            set.insert(t);
        }
    }
    OrderedSimplicialComplex::from_set(vertices, set, x.basepoint)
}

/// Cup length of the cohomology, a lower bound for the
/// Lusternik–Schnirelmann category.
pub fn ls_cat_lower_bound(x: &OrderedSimplicialComplex) -> Result<usize> {
    let components = x.components();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    let h = induced_cohomology_algebra(&cochain_algebra(x)?)?;
    Ok(h.cup_length())
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{prefix}{k}")).collect()
}

pub fn point() -> OrderedSimplicialComplex {
    OrderedSimplicialComplex::from_facets(vec!["p".into()], vec![vec![0]], 0).expect("valid")
}

/// Boundary of a triangle.
pub fn circle() -> OrderedSimplicialComplex {
    OrderedSimplicialComplex::from_facets(names("v", 3), vec![vec![0, 1], vec![1, 2], vec![0, 2]], 0).expect("valid")
}

/// Boundary of a tetrahedron.
pub fn sphere2() -> OrderedSimplicialComplex {
    let facets = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    OrderedSimplicialComplex::from_facets(names("v", 4), facets, 0).expect("valid")
}

pub fn two_points() -> OrderedSimplicialComplex {
    OrderedSimplicialComplex::from_facets(names("v", 2), vec![vec![0], vec![1]], 0).expect("valid")
}

/// Two triangle boundaries sharing vertex `v0`.
pub fn wedge_of_two_circles() -> OrderedSimplicialComplex {
    let facets = vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]];
    OrderedSimplicialComplex::from_facets(names("v", 5), facets, 0).expect("valid")
}

/// `S¹ ∨ S¹ ∨ S²`, all glued at `v0`.
pub fn wedge_circles_sphere() -> OrderedSimplicialComplex {
    let facets = vec![
        vec![0, 1],
        vec![1, 2],
        vec![0, 2],
        vec![0, 3],
        vec![3, 4],
        vec![0, 4],
        vec![0, 5, 6],
        vec![0, 5, 7],
        vec![0, 6, 7],
        vec![5, 6, 7],
    ];
    OrderedSimplicialComplex::from_facets(names("v", 8), facets, 0).expect("valid")
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> OrderedSimplicialComplex {
    let facets = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    OrderedSimplicialComplex::from_facets(names("t", 7), facets, 0).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg_algebra::validate;
    use crate::exact_linear::cohomology;

    fn betti(x: &OrderedSimplicialComplex) -> Vec<(i32, usize)> {
        let c = cohomology(&cochain_algebra(x).unwrap().complex()).unwrap();
        c.betti_numbers().into_iter().collect()
    }

    #[test]
    fn small_complexes() {
        let p = cochain_algebra(&point()).unwrap();
        assert_eq!(p.space().total_dim(), 1);
        let c = cochain_algebra(&circle()).unwrap();
        assert_eq!((c.space().dim(0), c.space().dim(1)), (3, 3));
        assert_eq!(betti(&circle()), vec![(0, 1), (1, 1)]);
        assert_eq!(betti(&sphere2()), vec![(0, 1), (2, 1)]);
        assert_eq!(betti(&wedge_circles_sphere()), vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn torus_has_expected_cohomology_and_cup_length() {
        let t = torus();
        assert_eq!(t.simplices().iter().filter(|s| s.len() == 3).count(), 14);
        assert_eq!(betti(&t), vec![(0, 1), (1, 2), (2, 1)]);
        assert_eq!(ls_cat_lower_bound(&t).unwrap(), 2);
        let a = cochain_algebra(&t).unwrap();
        assert!(validate(&a).is_valid());
        let h = induced_cohomology_algebra(&a).unwrap();
        assert!(h.is_associative());
    }

    #[test]
    fn suspensions() {
        let s = suspension(&two_points());
        assert_eq!(s.vertices().len(), 4);
        assert_eq!(s.facets().len(), 4);
        assert_eq!(betti(&s), vec![(0, 1), (1, 1)]);
        assert_eq!(betti(&suspension(&circle())), vec![(0, 1), (2, 1)]);
        let st = suspension(&torus());
        assert_eq!(betti(&st), vec![(0, 1), (2, 2), (3, 1)]);
        assert_eq!(ls_cat_lower_bound(&st).unwrap(), 1);
        assert_eq!(ls_cat_lower_bound(&point()).unwrap(), 0);
    }

    #[test]
    fn missing_face_is_named() {
        let err = OrderedSimplicialComplex::new(names("v", 3), vec![vec![0, 1, 2], vec![0, 1], vec![1, 2]], 0).unwrap_err();
        assert_eq!(err, Error::MalformedComplex("face v0.v2 of v0.v1.v2 is missing".into()));
        assert_eq!(ls_cat_lower_bound(&two_points()), Err(Error::Disconnected { components: 2 }));
    }
}
