//! Shipped examples with expected invariants, re-derived by the engine.

use std::collections::BTreeMap;
use std::fmt;

use crate::complexes::free::{exterior_pair, heisenberg, truncated_polynomial};
use crate::complexes::simplicial::{
    circle, cochain_algebra, point, sphere2, suspension, torus, two_points, wedge_circles_sphere,
    wedge_of_two_circles, OrderedSimplicialComplex,
};
use crate::dg_algebra::{basepoint_functional, induced_cohomology_algebra, reduced_subalgebra, validate, DgAlgebra};
use crate::error::{Error, Result};
use crate::exact_linear::Vector;
use crate::formality::{certify_formality, theorem1_pipeline, Verdict};
use crate::massey::{massey_vanishes, triple_massey, CohomologyClass, MasseyOutcome};
use crate::scalar;

#[derive(Clone, Copy)]
pub enum Construction {
    Simplicial(fn() -> OrderedSimplicialComplex),
    Algebra(fn() -> DgAlgebra),
}

/// A triple Massey product with its expected unique value.
#[derive(Clone, Debug)]
pub struct ExpectedMassey {
    pub classes: [&'static str; 3],
    pub value: Vec<(&'static str, i64)>,
    pub zero_indeterminacy: bool,
}

#[derive(Clone, Debug)]
pub struct Expectations {
    pub betti: Vec<(i32, usize)>,
    pub cup_length: usize,
    pub trivial_reduced_product: bool,
    pub formality: Verdict,
    /// Verdict of the trivial-product pipeline; `None` when it must refuse.
    pub pipeline: Option<Verdict>,
    pub massey: Option<ExpectedMassey>,
}

#[derive(Clone)]
pub struct ExampleDescriptor {
    pub name: &'static str,
    pub description: &'static str,
    pub construction: Construction,
    pub expectations: Expectations,
}

impl fmt::Debug for ExampleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExampleDescriptor")
            .field("name", &self.name)
            .field("expectations", &self.expectations)
            .finish()
    }
}

impl ExampleDescriptor {
    pub fn complex(&self) -> Option<OrderedSimplicialComplex> {
        match self.construction {
            Construction::Simplicial(f) => Some(f()),
            Construction::Algebra(_) => None,
        }
    }

    /// Cochain algebra of the complex, or the algebra itself.
    pub fn algebra(&self) -> Result<DgAlgebra> {
        match self.construction {
            Construction::Simplicial(f) => cochain_algebra(&f()),
            Construction::Algebra(f) => Ok(f()),
        }
    }

    /// The algebra whose formality is certified: the reduced cochain
    /// algebra at the basepoint for complexes, the algebra itself otherwise.
    pub fn formality_algebra(&self) -> Result<DgAlgebra> {
        match self.construction {
            Construction::Simplicial(f) => {
                let x = f();
                let a = cochain_algebra(&x)?;
                reduced_subalgebra(&a, &basepoint_functional(&a, x.basepoint())?)
            }
            Construction::Algebra(f) => Ok(f()),
        }
    }
}

fn suspension_of_torus() -> OrderedSimplicialComplex {
    suspension(&torus())
}

fn suspension_of_circle() -> OrderedSimplicialComplex {
    suspension(&circle())
}

fn suspension_of_two_points() -> OrderedSimplicialComplex {
    suspension(&two_points())
}

fn truncated_heisenberg() -> DgAlgebra {
    heisenberg(2)
}

fn full_heisenberg() -> DgAlgebra {
    heisenberg(3)
}

fn heisenberg_witness(zero_indeterminacy: bool) -> Option<ExpectedMassey> {
    Some(ExpectedMassey {
        classes: ["[x]", "[x]", "[y]"],
        value: vec![("[xz]", 1)],
        zero_indeterminacy,
    })
}

pub fn example_corpus() -> Vec<ExampleDescriptor> {
    use Construction::{Algebra, Simplicial};
    use Verdict::{FormalUpToCap as F, Inconclusive as I, NonFormal as NF};
    let e = |betti: &[(i32, usize)], cup_length, trivial, formality, pipeline| Expectations {
        betti: betti.to_vec(),
        cup_length,
        trivial_reduced_product: trivial,
        formality,
        pipeline,
        massey: None,
    };
    vec![
        ExampleDescriptor {
            name: "point",
            description: "a single vertex",
            construction: Simplicial(point),
            expectations: e(&[(0, 1)], 0, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "circle",
            description: "boundary of a triangle",
            construction: Simplicial(circle),
            expectations: e(&[(0, 1), (1, 1)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "sphere2",
            description: "boundary of a tetrahedron",
            construction: Simplicial(sphere2),
            expectations: e(&[(0, 1), (2, 1)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "wedge-s1-s1",
            description: "two triangle boundaries sharing a vertex",
            construction: Simplicial(wedge_of_two_circles),
            expectations: e(&[(0, 1), (1, 2)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "wedge-s1-s1-s2",
            description: "two circles and a tetrahedron boundary sharing a vertex",
            construction: Simplicial(wedge_circles_sphere),
            expectations: e(&[(0, 1), (1, 2), (2, 1)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "torus",
            description: "minimal 7-vertex triangulation of the torus; its transferred m_3 is nonzero but carries no Massey witness",
            construction: Simplicial(torus),
            expectations: e(&[(0, 1), (1, 2), (2, 1)], 2, false, I, None),
        },
        ExampleDescriptor {
            name: "suspension-torus",
            description: "unreduced suspension of the minimal torus",
            construction: Simplicial(suspension_of_torus),
            expectations: e(&[(0, 1), (2, 2), (3, 1)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "suspension-circle",
            description: "suspension of the triangle boundary, a 2-sphere",
            construction: Simplicial(suspension_of_circle),
            expectations: e(&[(0, 1), (2, 1)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "suspension-two-points",
            description: "suspension of two points, a square circle",
            construction: Simplicial(suspension_of_two_points),
            expectations: e(&[(0, 1), (1, 1)], 1, true, F, Some(F)),
        },
        ExampleDescriptor {
            name: "heisenberg-truncated",
            description: "Λ(x, y, z) with dz = xy cut off above degree 2; algebraic stand-in for the Borromean rings",
            construction: Algebra(truncated_heisenberg),
            expectations: Expectations {
                massey: heisenberg_witness(true),
                ..e(&[(0, 1), (1, 2), (2, 2)], 1, true, NF, Some(NF))
            },
        },
        ExampleDescriptor {
            name: "heisenberg",
            description: "Λ(x, y, z) with dz = xy, the cochains of the Heisenberg nilmanifold",
            construction: Algebra(full_heisenberg),
            expectations: Expectations {
                massey: heisenberg_witness(true),
                ..e(&[(0, 1), (1, 2), (2, 2), (3, 1)], 2, false, NF, None)
            },
        },
        ExampleDescriptor {
            name: "exterior-pair",
            description: "Λ(x, y) in degree 1 with zero differential",
            construction: Algebra(exterior_pair),
            expectations: e(&[(0, 1), (1, 2), (2, 1)], 2, false, F, None),
        },
        ExampleDescriptor {
            name: "truncated-polynomial",
            description: "K[u]/(u³) with |u| = 2 and zero differential",
            construction: Algebra(truncated_polynomial),
            expectations: e(&[(0, 1), (2, 1), (4, 1)], 2, false, F, None),
        },
    ]
}

/// One expectation whose recomputed value differs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub field: &'static str,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, found {}", self.field, self.expected, self.found)
    }
}

/// Recomputes every expectation of the entry up to the given arity cap.
pub fn check_expectations(entry: &ExampleDescriptor, cap: usize) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    let mut check = |field, expected: String, found: String| {
        if expected != found {
            out.push(Mismatch { field, expected, found });
        }
    };
    let a = entry.algebra()?;
    let report = validate(&a);
    check("valid", "true".into(), report.is_valid().to_string());
    if !report.is_valid() {
        return Ok(out);
    }
    let h = induced_cohomology_algebra(&a)?;
    let betti: BTreeMap<i32, usize> = h.contraction.betti_numbers().into_iter().filter(|&(_, b)| b > 0).collect();
    let expected: BTreeMap<i32, usize> = entry.expectations.betti.iter().copied().collect();
    check("betti", format!("{expected:?}"), format!("{betti:?}"));
    check("cup_length", entry.expectations.cup_length.to_string(), h.cup_length().to_string());
    check(
        "trivial_reduced_product",
        entry.expectations.trivial_reduced_product.to_string(),
        h.is_reduced_product_trivial().to_string(),
    );

    let fa = entry.formality_algebra()?;
    let cert = certify_formality(&fa, cap)?;
    check("formality", entry.expectations.formality.to_string(), cert.verdict.to_string());
    let pipeline = match theorem1_pipeline(&fa, cap) {
        Ok(r) => r.certificate.verdict.to_string(),
        Err(Error::NotApplicable(_)) => "not-applicable".to_string(),
        Err(e) => return Err(e),
    };
    let expected = entry.expectations.pipeline.map_or("not-applicable".to_string(), |v| v.to_string());
    check("pipeline", expected, pipeline);

    if let Some(m) = &entry.expectations.massey {
        let c = &h.contraction;
        let hs = &c.cohomology;
        let mut classes = Vec::new();
        for name in m.classes {
            classes.push(CohomologyClass::basis(hs, hs.lookup(name)?));
        }
        let mut value = Vector::zero();
        for (name, k) in &m.value {
            value.add_term(hs.lookup(name)?, &scalar::int(*k));
        }
        let outcome = triple_massey(&a, c, &classes[0], &classes[1], &classes[2])?;
        let (found, indeterminacy) = match &outcome {
            MasseyOutcome::Unique { value, .. } => (value.clone(), 0),
            MasseyOutcome::Coset { representative, indeterminacy, .. } => (representative.clone(), indeterminacy.len()),
            MasseyOutcome::WitnessOfVanishing { .. } => (Vector::zero(), 0),
            MasseyOutcome::Obstructed { .. } => (Vector::zero(), usize::MAX),
        };
        check("massey_value", hs.render(&value), hs.render(&found));
        check(
            "massey_zero_indeterminacy",
            m.zero_indeterminacy.to_string(),
            (indeterminacy == 0).to_string(),
        );
        check("massey_nonvanishing", "true".into(), (!massey_vanishes(hs, &outcome)?).to_string());
    }
    Ok(out)
}
