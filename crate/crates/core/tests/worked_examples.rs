mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use ainfinity::a_infinity::{is_quasi_isomorphism, koszul_apply, stasheff_defect, AInfinityMorphism, AInfinityStructure, Block};
use ainfinity::complexes::free::{exterior_pair, heisenberg};
use ainfinity::complexes::simplicial::{circle, point, sphere2, torus, two_points, wedge_circles_sphere, wedge_of_two_circles};
use ainfinity::complexes::{cochain_algebra, ls_cat_lower_bound, suspension};
use ainfinity::dg_algebra::{
    augmented_complex, basepoint_functional, induced_cohomology_algebra, reduced_subalgebra, validate, DgAlgebra,
    ValidationFailure,
};
use ainfinity::error::Error;
use ainfinity::exact_linear::{
    cohomology, kernel_basis, solve, ChainComplex, GradedMap, GradedSpace, Matrix, MultilinearMap, Vector,
};
use ainfinity::formality::{
    arity_bound, augmented_span, certify_formality, induces_isomorphism, is_chain_map, splice_span, theorem1_pipeline,
    ArityBound, Verdict,
};
use ainfinity::massey::{
    detection_check, epsilon, higher_massey_unique, massey_vanishes, triple_massey, CohomologyClass, MasseyOutcome,
};
use ainfinity::scalar::{int, one};
use ainfinity::transfer::{transfer_algebra, tree_summands};

fn reduced(x: &ainfinity::complexes::OrderedSimplicialComplex) -> DgAlgebra {
    let a = cochain_algebra(x).unwrap();
    reduced_subalgebra(&a, &basepoint_functional(&a, x.basepoint()).unwrap()).unwrap()
}

fn basis(a: &DgAlgebra, name: &str) -> Vector {
    Vector::basis(a.space().lookup(name).unwrap())
}

#[test]
fn solving_and_kernels() {
    let h = heisenberg(2);
    let s = h.space();
    let id = GradedMap::identity(s.clone());
    assert_eq!(solve(&id, &basis(&h, "x")).unwrap(), Some(basis(&h, "x")));
    assert_eq!(solve(&GradedMap::zero(s.clone(), s.clone(), 0), &Vector::zero()).unwrap(), Some(Vector::zero()));
    assert!(kernel_basis(&id, 1).is_empty());
    let z = solve(h.differential(), &basis(&h, "xy")).unwrap().unwrap();
    assert_eq!(h.d(&z), basis(&h, "xy"));
    assert_eq!(kernel_basis(h.differential(), 2).len(), 3);
    let plane = Arc::new(GradedSpace::from_degrees(&[(0, &["a", "b"][..])]).unwrap());
    assert_eq!(kernel_basis(&GradedMap::zero(plane.clone(), plane, 0), 0).len(), 2);
}

#[test]
fn cohomology_of_small_complexes() {
    let a = exterior_pair();
    let c = cohomology(&a.complex()).unwrap();
    for d in a.space().support() {
        assert_eq!(c.inclusion.block_or_zero(d), Matrix::identity(a.space().dim(d)));
    }
    assert!(c.homotopy.is_zero());

    let c = cohomology(&heisenberg(2).complex()).unwrap();
    assert_eq!(c.betti_numbers(), BTreeMap::from([(0, 1), (1, 2), (2, 2)]));

    let s = Arc::new(GradedSpace::from_degrees(&[(0, &["a"][..]), (1, &["b"][..])]).unwrap());
    let mut blocks = BTreeMap::new();
    blocks.insert(0, Matrix::identity(1));
    let d = GradedMap::new(s.clone(), s.clone(), 1, blocks).unwrap();
    let c = cohomology(&ChainComplex::new(s, d.clone()).unwrap()).unwrap();
    assert!(c.cohomology.is_zero());
    assert_eq!(c.homotopy.block_or_zero(1), Matrix::identity(1));
    assert_eq!(c.homotopy.compose(&d).block_or_zero(0), Matrix::identity(1));
}

#[test]
fn dz_equals_xz_typo() {
    // dz = xz written directly as structure constants on Λ(x, y, z)
    let good = heisenberg(3);
    let s = good.space().clone();
    let (z, xz) = (s.lookup("z").unwrap(), s.lookup("xz").unwrap());
    let d = GradedMap::from_images(s.clone(), s.clone(), 1, |i| if i == z { Vector::basis(xz) } else { Vector::zero() }).unwrap();
    let bad = DgAlgebra::new(s, d, good.product().clone(), good.unit().cloned()).unwrap();
    let report = validate(&bad);
    assert!(!report.is_valid());
    assert!(report.failures.iter().any(|f| matches!(f, ValidationFailure::Leibniz { .. })));
}

#[test]
fn products_on_cohomology() {
    let h = induced_cohomology_algebra(&heisenberg(2)).unwrap();
    let s = h.space();
    let (x, y) = (s.lookup("[x]").unwrap(), s.lookup("[y]").unwrap());
    assert!(h.mul(&Vector::basis(x), &Vector::basis(y)).is_zero());
    assert!(h.is_reduced_product_trivial());

    let t = induced_cohomology_algebra(&cochain_algebra(&torus()).unwrap()).unwrap();
    assert!(!t.is_reduced_product_trivial());
    assert_eq!(t.cup_length(), 2);
    assert!(!induced_cohomology_algebra(&heisenberg(3)).unwrap().is_reduced_product_trivial());
    assert_eq!(induced_cohomology_algebra(&cochain_algebra(&wedge_of_two_circles()).unwrap()).unwrap().cup_length(), 1);
    assert_eq!(induced_cohomology_algebra(&cochain_algebra(&point()).unwrap()).unwrap().cup_length(), 0);

    let zero_d = exterior_pair();
    let hz = induced_cohomology_algebra(&zero_d).unwrap();
    assert_eq!(hz.product.entries().count(), zero_d.product().entries().count());
}

#[test]
fn reduced_and_augmented() {
    assert_eq!(reduced(&point()).space().total_dim(), 0);
    let hc = cohomology(&reduced(&circle()).complex()).unwrap().cohomology;
    assert_eq!((hc.dim(0), hc.dim(1)), (0, 1));
    let hs = cohomology(&reduced(&sphere2()).complex()).unwrap().cohomology;
    assert_eq!(hs.total_dim(), 1);
    assert_eq!(hs.dim(2), 1);

    let aug = augmented_complex(&cochain_algebra(&point()).unwrap()).unwrap();
    assert!(cohomology(&aug).unwrap().cohomology.is_zero());
    let aug = augmented_complex(&cochain_algebra(&circle()).unwrap()).unwrap();
    let h = cohomology(&aug).unwrap().cohomology;
    assert_eq!((h.dim(-1), h.dim(0), h.dim(1)), (0, 0, 1));
    assert!(matches!(
        augmented_complex(&cochain_algebra(&two_points()).unwrap()),
        Err(Error::Disconnected { components: 2 })
    ));
}

#[test]
fn koszul_examples() {
    let a = heisenberg(2);
    let s = a.space();
    let m1 = MultilinearMap::from_graded_map(a.differential());
    let (x, z) = (basis(&a, "x"), basis(&a, "z"));
    let plain = koszul_apply(s, &[Block::Id, Block::Id], &[x.clone(), z.clone()]).unwrap();
    assert_eq!(plain.sign, 1);
    let inner = koszul_apply(s, &[Block::Id, Block::Map(&m1)], &[x.clone(), z.clone()]).unwrap();
    assert_eq!(inner.sign, -1);
    assert_eq!(inner.factors, vec![x.clone(), basis(&a, "xy")]);
    let outer = koszul_apply(s, &[Block::Map(&m1), Block::Id], &[z.clone(), x.clone()]).unwrap();
    assert_eq!(outer.sign, 1);
}

#[test]
fn stasheff_low_arities() {
    let a = heisenberg(3);
    let m = AInfinityStructure::from_dg_algebra(&a, 4);
    for n in 1..=4 {
        assert!(stasheff_defect(&m, n).unwrap().is_zero(), "arity {n}");
    }
}

#[test]
fn quasi_isomorphisms() {
    let a = Arc::new(AInfinityStructure::from_dg_algebra(&heisenberg(2), 3));
    assert!(is_quasi_isomorphism(&AInfinityMorphism::identity(a.clone())).unwrap());
    let zero = MultilinearMap::zero(1, a.space().clone(), a.space().clone(), 0);
    let f = AInfinityMorphism::new(a.clone(), a.clone(), vec![zero]).unwrap();
    assert!(!is_quasi_isomorphism(&f).unwrap());
    let t = transfer_algebra(&heisenberg(2), 3).unwrap();
    assert!(is_quasi_isomorphism(&t.morphism).unwrap());
}

#[test]
fn transfer_examples() {
    let z = transfer_algebra(&exterior_pair(), 6).unwrap();
    for n in 3..=6 {
        assert!(z.m(n).unwrap().is_zero());
        assert!(z.f(n).unwrap().is_zero());
    }
    let w = transfer_algebra(&reduced(&wedge_of_two_circles()), 7).unwrap();
    for n in 2..=7 {
        assert!(w.m(n).unwrap().is_zero(), "m_{n}");
    }
    assert_eq!(tree_summands(2).len(), 1);
    assert_eq!(tree_summands(3).len(), 2);
    assert_eq!(tree_summands(5).len(), 14);
}

#[test]
fn massey_examples() {
    assert_eq!(epsilon(&[1, 1, 1]), -1);
    assert_eq!(epsilon(&[2, 2, 2]), 1);
    assert_eq!(epsilon(&[2, 4, 0, 2, 6]), 1);

    let a = heisenberg(2);
    let c = cohomology(&a.complex()).unwrap();
    let h = c.cohomology.clone();
    let cls = |name: &str| CohomologyClass::basis(&h, h.lookup(name).unwrap());
    let xz = Vector::basis(h.lookup("[xz]").unwrap());
    let out = triple_massey(&a, &c, &cls("[x]"), &cls("[x]"), &cls("[y]")).unwrap();
    match &out {
        MasseyOutcome::Coset { representative, indeterminacy, .. } => {
            assert_eq!(*representative, xz);
            assert!(indeterminacy.is_empty());
        }
        MasseyOutcome::Unique { value, .. } => assert_eq!(*value, xz),
        other => panic!("{other:?}"),
    }
    assert!(!massey_vanishes(&h, &out).unwrap());
    let zero = triple_massey(&a, &c, &CohomologyClass::zero(1), &cls("[x]"), &cls("[y]")).unwrap();
    assert!(massey_vanishes(&h, &zero).unwrap());

    let t = transfer_algebra(&a, 3).unwrap();
    let classes = [cls("[x]"), cls("[x]"), cls("[y]")];
    let unique = higher_massey_unique(&a, &t, &classes).unwrap();
    assert!(unique.contains(&h, &xz).unwrap());
    assert!(detection_check(&a, &t, &classes, unique.witness().unwrap()).unwrap());

    let torus_alg = cochain_algebra(&torus()).unwrap();
    let tt = transfer_algebra(&torus_alg, 3).unwrap();
    let th = tt.cohomology().clone();
    let one_class = (0..th.total_dim()).find(|&k| th.degree_of(k) == 1).unwrap();
    let x = CohomologyClass::basis(&th, one_class);
    let err = higher_massey_unique(&torus_alg, &tt, &[x.clone(), x.clone(), x]).unwrap_err();
    assert!(matches!(err, Error::NotApplicable(_)));

    let wedge = reduced(&wedge_circles_sphere());
    let wt = transfer_algebra(&wedge, 4).unwrap();
    let wh = wt.cohomology().clone();
    let ones: Vec<usize> = (0..wh.total_dim()).filter(|&k| wh.degree_of(k) == 1).collect();
    let classes: Vec<CohomologyClass> = [ones[0], ones[1], ones[0], ones[1]].iter().map(|&k| CohomologyClass::basis(&wh, k)).collect();
    let out = higher_massey_unique(&wedge, &wt, &classes).unwrap();
    assert!(massey_vanishes(&wh, &out).unwrap());

    let coset = MasseyOutcome::Coset {
        representative: xz.clone(),
        indeterminacy: vec![xz.clone()],
        degree: 2,
        witness: unique.witness().unwrap().clone(),
    };
    assert!(massey_vanishes(&h, &coset).unwrap());
}

#[test]
fn formality_examples() {
    let s2 = GradedSpace::from_degrees(&[(2, &["a"][..])]).unwrap();
    assert_eq!(arity_bound(&s2), ArityBound::Finite(2));

    let cert = certify_formality(&exterior_pair(), 6).unwrap();
    assert_eq!(cert.verdict, Verdict::FormalUpToCap);
    let cert = certify_formality(&heisenberg(2), 6).unwrap();
    assert_eq!(cert.verdict, Verdict::NonFormal);
    let cert = certify_formality(&reduced(&wedge_circles_sphere()), 6).unwrap();
    assert_eq!(cert.verdict, Verdict::FormalUpToCap);
    assert!(!cert.bound_is_absolute);

    let report = theorem1_pipeline(&reduced(&wedge_of_two_circles()), 6).unwrap();
    assert_eq!(report.certificate.verdict, Verdict::FormalUpToCap);
    assert!(report.trace.iter().all(|s| s.massey_products_vanish));
    let report = theorem1_pipeline(&heisenberg(2), 6).unwrap();
    assert_eq!(report.trace.last().unwrap().n, 3);
    assert!(report.trace.last().unwrap().nonvanishing.is_some());
    assert!(matches!(
        theorem1_pipeline(&cochain_algebra(&torus()).unwrap(), 4),
        Err(Error::NotApplicable(_))
    ));
}

#[test]
fn splice_examples() {
    for (x, h1) in [(point(), 0), (circle(), 1), (wedge_of_two_circles(), 2)] {
        let a = cochain_algebra(&x).unwrap();
        let out = splice_span(&augmented_span(&a).unwrap(), &a, x.basepoint()).unwrap();
        let h = &out.left_target.space;
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), h1);
        assert_eq!(h.total_dim(), 1 + h1);
    }
}

/// Keeping the degree −1 copy of `K` as an extra summand in degree 0 with
/// zero differential on it leaves a spare cocycle, so the right leg is no
/// longer a quasi-isomorphism.
#[test]
fn direct_sum_splice_is_not_a_quasi_isomorphism() {
    let a = cochain_algebra(&circle()).unwrap();
    let s = a.space();
    let mut names: BTreeMap<i32, Vec<String>> = s.support().map(|d| (d, s.basis_names(d).to_vec())).collect();
    names.get_mut(&0).unwrap().push("k".into());
    let middle = Arc::new(GradedSpace::new(names).unwrap());
    let extra = middle.global_index(0, s.dim(0));
    let embed = |i: usize| middle.global_index(s.degree_of(i), s.local_index(i));
    let back = |j: usize| (j != extra).then(|| s.global_index(middle.degree_of(j), middle.local_index(j)));
    let d = GradedMap::from_images(middle.clone(), middle.clone(), 1, |j| match back(j) {
        Some(i) => Vector::from_pairs(a.differential().apply_basis(i).iter().map(|(&k, c)| (embed(k), c.clone()))),
        None => Vector::zero(),
    })
    .unwrap();
    let middle = ChainComplex::new(middle.clone(), d).unwrap();
    let right = GradedMap::from_images(middle.space.clone(), s.clone(), 0, |j| back(j).map(Vector::basis).unwrap_or_default()).unwrap();
    assert!(is_chain_map(&right, &middle, &a.complex()));
    assert!(!induces_isomorphism(&right, &middle, &a.complex()).unwrap());
    assert_eq!(cohomology(&middle).unwrap().cohomology.dim(0), 2);
}

#[test]
fn topology_front_end() {
    assert_eq!(ls_cat_lower_bound(&torus()).unwrap(), 2);
    assert_eq!(ls_cat_lower_bound(&point()).unwrap(), 0);
    assert!(ls_cat_lower_bound(&suspension(&torus())).unwrap() <= 1);
    assert!(matches!(ls_cat_lower_bound(&two_points()), Err(Error::Disconnected { .. })));
    let sp = suspension(&two_points());
    assert_eq!(sp.vertices().len(), 4);
    let h = cohomology(&cochain_algebra(&sp).unwrap().complex()).unwrap().cohomology;
    assert_eq!((h.dim(0), h.dim(1)), (1, 1));
    let h = cohomology(&cochain_algebra(&suspension(&circle())).unwrap().complex()).unwrap().cohomology;
    assert_eq!((h.dim(0), h.dim(1), h.dim(2)), (1, 0, 1));
    let c = cochain_algebra(&circle()).unwrap();
    assert_eq!((c.space().dim(0), c.space().dim(1)), (3, 3));
    let t = cochain_algebra(&torus()).unwrap();
    assert_eq!(t.space().dim(2), 14);
    assert_eq!(int(1), one());
}
