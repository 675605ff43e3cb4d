//! Truncated free graded-commutative dg-algebras given by generators and the
//! differential on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dg_algebra::DgAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::{GradedMap, GradedSpace, MultilinearMap, Vector};
use crate::scalar::{self, Scalar};

/// A polynomial in the generators: coefficient and exponent vector per term.
pub type Polynomial = Vec<(Scalar, Vec<u32>)>;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    /// Highest allowed power of an even generator; odd ones square to zero.
    pub max_power: Option<u32>,
    pub d: Polynomial,
}

impl Generator {
    pub fn new(name: &str, degree: i32) -> Self {
        Generator {
            name: name.to_string(),
            degree,
            max_power: None,
            d: Vec::new(),
        }
    }

    pub fn with_d(mut self, d: Polynomial) -> Self {
        self.d = d;
        self
    }

    pub fn with_max_power(mut self, p: u32) -> Self {
        self.max_power = Some(p);
        self
    }
}

fn generator_degree(e: &[u32], generators: &[Generator]) -> i32 {
    e.iter().zip(generators).map(|(&p, g)| p as i32 * g.degree).sum()
}

fn power_cap(g: &Generator) -> u32 {
    if g.degree % 2 == 1 {
        1
    } else {
        g.max_power.unwrap_or(u32::MAX)
    }
}

/// Exponent vectors of the basis monomials of [`free_algebra`], in basis
/// order: by degree, then exponent vector descending.
pub fn monomial_basis(generators: &[Generator], top_degree: i32, unital: bool) -> Vec<Vec<u32>> {
    let k = generators.len();
    let degree = |e: &[u32]| generator_degree(e, generators);
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    let mut stack = vec![(0usize, vec![0u32; k])];
    while let Some((i, e)) = stack.pop() {
        if i == k {
            monomials.push(e);
            continue;
        }
        let mut p = 0u32;
        loop {
            let mut f = e.clone();
            f[i] = p;
            if degree(&f) > top_degree || p > power_cap(&generators[i]) {
                break;
            }
            stack.push((i + 1, f));
            p += 1;
        }
    }
    if !unital {
        monomials.retain(|e| e.iter().any(|&p| p > 0));
    }
    monomials.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
    monomials
}

/// `Λ(generators)` modulo everything above `top_degree` and the power
/// bounds. With `unital = false` only the augmentation ideal is kept.
pub fn free_algebra(generators: &[Generator], top_degree: i32, unital: bool) -> Result<DgAlgebra> {
    if generators.iter().any(|g| g.degree < 1) {
        return Err(Error::Malformed("generators must have positive degree".into()));
    }
    let k = generators.len();
    let degree = |e: &[u32]| generator_degree(e, generators);
    let cap = |i: usize| power_cap(&generators[i]);
    let monomials = monomial_basis(generators, top_degree, unital);

    let name = |e: &[u32]| -> String {
        if e.iter().all(|&p| p == 0) {
            return "1".into();
        }
        e.iter()
            .zip(generators)
            .filter(|(&p, _)| p > 0)
            .map(|(&p, g)| if p == 1 { g.name.clone() } else { format!("{}^{p}", g.name) })
            .collect()
    };
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    for e in &monomials {
        basis.entry(degree(e)).or_default().push(name(e));
    }
    let space = Arc::new(GradedSpace::new(basis)?);
    let index: BTreeMap<&Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();

    // product of monomials with the Koszul sign for reordering odd generators
    let mul = |a: &[u32], b: &[u32]| -> Option<(i64, Vec<u32>)> {
        let mut swaps = 0i64;
        for (j, &pb) in b.iter().enumerate() {
            if pb == 0 || generators[j].degree % 2 == 0 {
                continue;
            }
            swaps += (j + 1..k)
                .filter(|&i| a[i] > 0 && generators[i].degree % 2 == 1)
                .count() as i64;
        }
        let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if (0..k).any(|i| e[i] > cap(i)) || degree(&e) > top_degree {
            return None;
        }
        Some((swaps, e))
    };
    let poly_mul = |p: &Polynomial, q: &Polynomial| -> Polynomial {
        let mut out = Vec::new();
        for (c, a) in p {
            for (e, b) in q {
                if let Some((s, m)) = mul(a, b) {
                    out.push((c * e * scalar::sign(s), m));
                }
            }
        }
        out
    };

    for g in generators {
        for (_, e) in &g.d {
            if e.len() != k {
                return Err(Error::Malformed(format!("d({}) has a term of the wrong length", g.name)));
            }
            if degree(e) != g.degree + 1 {
                return Err(Error::Malformed(format!("d({}) must have degree {}", g.name, g.degree + 1)));
            }
        }
    }

    let to_vector = |p: &Polynomial| -> Vector {
        let mut v = Vector::zero();
        for (c, e) in p {
            if let Some(&i) = index.get(e) {
                v.add_term(i, c);
            }
        }
        v
    };

    let mut d_images = Vec::with_capacity(monomials.len());
    for e in &monomials {
        // write the monomial as a word of generators and apply Leibniz
        let word: Vec<usize> = (0..k).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let mut total: Polynomial = Vec::new();
        for (pos, &g) in word.iter().enumerate() {
            if generators[g].d.is_empty() {
                continue;
            }
            let mut left = vec![0u32; k];
            for &h in &word[..pos] {
                left[h] += 1;
            }
            let mut right = vec![0u32; k];
            for &h in &word[pos + 1..] {
                right[h] += 1;
            }
            let passed: i64 = word[..pos].iter().map(|&h| generators[h].degree as i64).sum();
            let lhs = vec![(scalar::sign(passed), left)];
            let term = poly_mul(&poly_mul(&lhs, &generators[g].d), &vec![(scalar::one(), right)]);
            total.extend(term);
        }
        d_images.push(to_vector(&total));
    }
    let d = GradedMap::from_images(space.clone(), space.clone(), 1, |i| d_images[i].clone())?;

    let mut product = MultilinearMap::zero(2, space.clone(), space.clone(), 0);
    for (i, a) in monomials.iter().enumerate() {
        for (j, b) in monomials.iter().enumerate() {
            if let Some((s, e)) = mul(a, b) {
                if let Some(&r) = index.get(&e) {
                    product.insert(vec![i, j], Vector::from_pairs([(r, scalar::sign(s))]))?;
                }
            }
        }
    }
    let unit = if unital { Some(Vector::basis(index[&vec![0u32; k]])) } else { None };
    DgAlgebra::new(space, d, product, unit)
}

/// `Λ(x, y, z)` with `|x| = |y| = |z| = 1` and `dz = xy`, cut off above
/// `top_degree` (2 for the truncated version, 3 for the full one).
pub fn heisenberg(top_degree: i32) -> DgAlgebra {
    let gens = [
        Generator::new("x", 1),
        Generator::new("y", 1),
        Generator::new("z", 1).with_d(vec![(scalar::one(), vec![1, 1, 0])]),
    ];
    free_algebra(&gens, top_degree, true).expect("valid presentation")
}

/// `Λ(x, y)` with zero differential.
pub fn exterior_pair() -> DgAlgebra {
    free_algebra(&[Generator::new("x", 1), Generator::new("y", 1)], 2, true).expect("valid presentation")
}

/// `K[u]/(u³)` with `|u| = 2` and zero differential.
pub fn truncated_polynomial() -> DgAlgebra {
    free_algebra(&[Generator::new("u", 2).with_max_power(2)], 4, true).expect("valid presentation")
}
