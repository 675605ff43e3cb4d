#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use ainfinity::complexes::{free_algebra, monomial_basis, Generator, OrderedSimplicialComplex, Polynomial};
use ainfinity::dg_algebra::{validate, DgAlgebra};
use ainfinity::exact_linear::{kernel_basis, ChainComplex, ContractionData, GradedMap, GradedSpace, Matrix, MultilinearMap, Vector};
use ainfinity::scalar::{int, Scalar};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn small(rng: &mut StdRng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

/// Random invertible `n × n` matrix: a permuted unit lower-triangular one.
pub fn random_invertible(rng: &mut StdRng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = small(rng, 1);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    l.select_rows(&perm)
}

fn degreewise(space: &Arc<GradedSpace>, mut f: impl FnMut(i32, usize) -> Matrix) -> GradedMap {
    let blocks = space.support().map(|d| (d, f(d, space.dim(d)))).collect();
    GradedMap::new(space.clone(), space.clone(), 0, blocks).expect("square blocks")
}

/// The same algebra written in a random new basis.
pub fn random_basis_change(rng: &mut StdRng, a: &DgAlgebra) -> DgAlgebra {
    let space = a.space().clone();
    let mut inverses = BTreeMap::new();
    let p = degreewise(&space, |d, n| {
        let m = random_invertible(rng, n);
        inverses.insert(d, m.inverse().expect("invertible"));
        m
    });
    let pinv = degreewise(&space, |d, _| inverses[&d].clone());
    let d = p.compose(a.differential()).compose(&pinv);
    let mut product = MultilinearMap::zero(2, space.clone(), space.clone(), 0);
    let n = space.total_dim();
    for i in 0..n {
        for j in 0..n {
            let v = p.apply(&a.mul(&pinv.apply_basis(i), &pinv.apply_basis(j)));
            if !v.is_zero() {
                product.insert(vec![i, j], v).expect("homogeneous product");
            }
        }
    }
    let unit = a.unit().map(|u| p.apply(u));
    DgAlgebra::new(space, d, product, unit).expect("well-formed")
}

/// Truncated free graded-commutative algebra on 1–4 generators of degree
/// 1–3 whose differentials are random cocycles in the earlier generators,
/// written in a random basis. Degrees stay in 0–4 with at most four basis
/// elements per degree.
pub fn random_algebra(rng: &mut StdRng) -> DgAlgebra {
    loop {
        if let Some(a) = try_random_algebra(rng) {
            return a;
        }
    }
}

fn try_random_algebra(rng: &mut StdRng) -> Option<DgAlgebra> {
    let k = rng.gen_range(1..=4);
    let mut degrees: Vec<i32> = (0..k).map(|_| *[1, 1, 2, 3].choose(rng).unwrap()).collect();
    degrees.sort();
    let top = rng.gen_range(2..=4);
    let unital = rng.gen_bool(0.8);
    let names = ["x", "y", "z", "w"];
    let mut gens: Vec<Generator> = Vec::new();
    for (j, &deg) in degrees.iter().enumerate() {
        let mut g = Generator::new(names[j], deg);
        if deg % 2 == 0 {
            g = g.with_max_power(2);
        }
        if j > 0 && deg < top && rng.gen_bool(0.7) {
            let prev = free_algebra(&gens, top, true).ok()?;
            let monomials = monomial_basis(&gens, top, true);
            let cocycles = kernel_basis(prev.differential(), deg + 1);
            let mut v = Vector::zero();
            for c in &cocycles {
                v.add_scaled(c, &small(rng, 2));
            }
            let poly: Polynomial = v.iter().map(|(&i, c)| (c.clone(), monomials[i].clone())).collect();
            g = g.with_d(poly);
        }
        gens.push(g);
    }
    let k = gens.len();
    for g in &mut gens {
        for (_, e) in &mut g.d {
            e.resize(k, 0);
        }
    }
    let a = free_algebra(&gens, top, unital).ok()?;
    let s = a.space();
    if s.support().any(|d| s.dim(d) > 4 || !(0..=4).contains(&d)) {
        return None;
    }
    let a = random_basis_change(rng, &a);
    assert!(validate(&a).is_valid(), "generator produced an invalid algebra");
    Some(a)
}

/// Random complex in degrees −1..=3 with at most four basis elements per
/// degree: a direct sum of acyclic pairs and cohomology, in a random basis.
pub fn random_complex(rng: &mut StdRng) -> ChainComplex {
    let lo = -1;
    let hi = 3;
    let mut ranks = BTreeMap::new();
    let mut betti = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut prev_rank = 0;
    for d in lo..=hi {
        let h = rng.gen_range(0..=2usize).min(4 - prev_rank);
        let r = if d == hi { 0 } else { rng.gen_range(0..=2usize).min(4 - prev_rank - h) };
        betti.insert(d, h);
        ranks.insert(d, r);
        dims.insert(d, prev_rank + h + r);
        prev_rank = r;
    }
    let basis: BTreeMap<i32, Vec<String>> = dims
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(&d, &n)| (d, (0..n).map(|k| format!("e{d}_{k}")).collect()))
        .collect();
    let space = Arc::new(GradedSpace::new(basis).unwrap());
    // basis of degree d: [boundaries (prev rank) | cohomology | sources (rank)]
    let mut blocks = BTreeMap::new();
    for d in lo..hi {
        let (n, m) = (dims[&d], dims[&(d + 1)]);
        let r = ranks[&d];
        let mut block = Matrix::zeros(m, n);
        for t in 0..r {
            block[(t, n - r + t)] = int(1);
        }
        if n > 0 && m > 0 {
            blocks.insert(d, block);
        }
    }
    let std_d = GradedMap::new(space.clone(), space.clone(), 1, blocks).unwrap();
    let mut inverses = BTreeMap::new();
    let p = degreewise(&space, |d, n| {
        let m = random_invertible(rng, n);
        inverses.insert(d, m.inverse().unwrap());
        m
    });
    let pinv = degreewise(&space, |d, _| inverses[&d].clone());
    ChainComplex::new(space, p.compose(&std_d).compose(&pinv)).unwrap()
}

/// Random complex on 3–5 vertices generated by random edges and triangles.
pub fn random_simplicial(rng: &mut StdRng) -> OrderedSimplicialComplex {
    let n = rng.gen_range(3..=5);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for _ in 0..rng.gen_range(1..=6) {
        let size = rng.gen_range(2..=3);
        let mut f: Vec<usize> = (0..n).collect();
        f.shuffle(rng);
        f.truncate(size);
        f.sort();
        facets.push(f);
    }
    OrderedSimplicialComplex::from_facets(vertices, facets, 0).unwrap()
}

/// Dimension of cohomology in each degree from ranks of `d` alone.
pub fn betti_by_rank(complex: &ChainComplex) -> BTreeMap<i32, usize> {
    let s = &complex.space;
    s.support()
        .map(|d| {
            let out = complex.d.block_or_zero(d).rank();
            let inc = complex.d.block_or_zero(d - 1).rank();
            (d, s.dim(d) - out - inc)
        })
        .filter(|&(_, b)| b > 0)
        .collect()
}

/// The five retract identities checked block by block with dense matrices.
pub fn contraction_identities_hold(c: &ContractionData) -> Result<(), String> {
    let s = &c.complex.space;
    let h = &c.cohomology;
    let d = &c.complex.d;
    for deg in s.support().chain(h.support()) {
        let (n, k) = (s.dim(deg), h.dim(deg));
        let i = c.inclusion.block_or_zero(deg);
        let p = c.projection.block_or_zero(deg);
        let hom = c.homotopy.block_or_zero(deg);
        let hom_up = c.homotopy.block_or_zero(deg + 1);
        let d_here = d.block_or_zero(deg);
        let d_down = d.block_or_zero(deg - 1);
        if p.mul(&i) != Matrix::identity(k) {
            return Err(format!("p i ≠ 1 in degree {deg}"));
        }
        let lhs = Matrix::identity(n).sub(&i.mul(&p));
        let rhs = d_down.mul(&hom).add(&hom_up.mul(&d_here));
        if lhs != rhs {
            return Err(format!("1 − i p ≠ d h + h d in degree {deg}"));
        }
        if !hom.mul(&i).is_zero() {
            return Err(format!("h i ≠ 0 in degree {deg}"));
        }
        if !c.projection.block_or_zero(deg - 1).mul(&hom).is_zero() {
            return Err(format!("p h ≠ 0 in degree {deg}"));
        }
        if !c.homotopy.block_or_zero(deg - 1).mul(&hom).is_zero() {
            return Err(format!("h h ≠ 0 in degree {deg}"));
        }
    }
    Ok(())
}
