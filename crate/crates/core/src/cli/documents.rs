//! JSON interchange documents for dg-algebras and simplicial complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::OrderedSimplicialComplex;
use crate::dg_algebra::DgAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::{GradedMap, GradedSpace, MultilinearMap, Vector};
use crate::scalar;

pub const ALGEBRA_FORMAT: &str = "ainf-algebra/1";
pub const COMPLEX_FORMAT: &str = "ainf-complex/1";
pub const FIELD: &str = "rationals";

/// Sparse vector: basis name to a `"p/q"` coefficient.
pub type VectorDoc = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub source: String,
    pub target: VectorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: VectorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub format: String,
    pub field: String,
    pub basis: BTreeMap<i32, Vec<String>>,
    #[serde(default)]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default)]
    pub product: Vec<ProductEntry>,
    pub unital: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<VectorDoc>,
    #[serde(default)]
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format: String,
    pub vertices: Vec<String>,
    /// Maximal simplices by vertex name; faces are added automatically.
    pub facets: Vec<Vec<String>>,
    pub basepoint: String,
}

/// Either kind of input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(AlgebraDocument),
    Complex(ComplexDocument),
}

/// 1-based line and column of the first occurrence of `needle`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let Some(pos) = text.find(needle) else {
        return (1, 1);
    };
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(text: &str, needle: &str, message: String) -> Error {
    let (line, column) = locate(text, &format!("\"{needle}\""));
    Error::Parse { line, column, message }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line().max(1),
        column: e.column().max(1),
        message: e.to_string(),
    }
}

/// Parses a document, dispatching on its `format` field.
pub fn parse_document(text: &str) -> Result<Document> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty document".into(),
        });
    }
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let format = value.get("format").and_then(|f| f.as_str()).unwrap_or_default();
    match format {
        ALGEBRA_FORMAT => Ok(Document::Algebra(serde_json::from_str(text).map_err(json_error)?)),
        COMPLEX_FORMAT => Ok(Document::Complex(serde_json::from_str(text).map_err(json_error)?)),
        other => Err(parse_error(
            text,
            "format",
            format!("unknown format {other:?}; expected {ALGEBRA_FORMAT:?} or {COMPLEX_FORMAT:?}"),
        )),
    }
}

fn vector_from_doc(space: &GradedSpace, doc: &VectorDoc, text: &str) -> Result<Vector> {
    let mut v = Vector::zero();
    for (name, c) in doc {
        let idx = space.lookup(name).map_err(|e| parse_error(text, name, e.to_string()))?;
        let c = scalar::parse(c).map_err(|e| parse_error(text, c, e.to_string()))?;
        v.add_term(idx, &c);
    }
    Ok(v)
}

pub fn vector_to_doc(space: &GradedSpace, v: &Vector) -> VectorDoc {
    v.iter().map(|(&i, c)| (space.qualified_name(i), scalar::format(c))).collect()
}

/// Builds the algebra described by a document. `text` is the source, used
/// to position diagnostics.
pub fn algebra_from_document(doc: &AlgebraDocument, text: &str) -> Result<DgAlgebra> {
    if doc.field != FIELD {
        return Err(parse_error(text, "field", format!("unsupported field {:?}", doc.field)));
    }
    let space = Arc::new(GradedSpace::new(doc.basis.clone()).map_err(|e| parse_error(text, "basis", e.to_string()))?);
    let mut images: BTreeMap<usize, Vector> = BTreeMap::new();
    for entry in &doc.differential {
        let idx = space.lookup(&entry.source).map_err(|e| parse_error(text, &entry.source, e.to_string()))?;
        if images.insert(idx, vector_from_doc(&space, &entry.target, text)?).is_some() {
            return Err(parse_error(text, &entry.source, format!("d({}) given twice", entry.source)));
        }
    }
    let d = GradedMap::from_images(space.clone(), space.clone(), 1, |i| images.get(&i).cloned().unwrap_or_default())
        .map_err(|e| parse_error(text, "differential", e.to_string()))?;
    let mut product = MultilinearMap::zero(2, space.clone(), space.clone(), 0);
    for entry in &doc.product {
        let l = space.lookup(&entry.left).map_err(|e| parse_error(text, &entry.left, e.to_string()))?;
        let r = space.lookup(&entry.right).map_err(|e| parse_error(text, &entry.right, e.to_string()))?;
        if product.get(&[l, r]).is_some() {
            return Err(parse_error(
                text,
                &entry.left,
                format!("product {} · {} given twice", entry.left, entry.right),
            ));
        }
        let v = vector_from_doc(&space, &entry.result, text)?;
        product
            .insert(vec![l, r], v)
            .map_err(|e| parse_error(text, &entry.left, e.to_string()))?;
    }
    let unit = match (doc.unital, &doc.unit) {
        (true, Some(u)) => Some(vector_from_doc(&space, u, text)?),
        (true, None) => return Err(parse_error(text, "unital", "a unital algebra needs a \"unit\" vector".into())),
        (false, Some(_)) => return Err(parse_error(text, "unit", "\"unit\" given for a non-unital algebra".into())),
        (false, None) => None,
    };
    if doc.reduced && doc.unital {
        return Err(parse_error(text, "reduced", "a reduced algebra cannot be unital".into()));
    }
    DgAlgebra::new(space, d, product, unit)
}

pub fn algebra_to_document(a: &DgAlgebra, reduced: bool) -> AlgebraDocument {
    let s = a.space();
    let differential = (0..s.total_dim())
        .filter_map(|i| {
            let v = a.differential().apply_basis(i);
            (!v.is_zero()).then(|| DifferentialEntry {
                source: s.qualified_name(i),
                target: vector_to_doc(s, &v),
            })
        })
        .collect();
    let product = a
        .product()
        .entries()
        .filter(|(_, v)| !v.is_zero())
        .map(|(t, v)| ProductEntry {
            left: s.qualified_name(t[0]),
            right: s.qualified_name(t[1]),
            result: vector_to_doc(s, v),
        })
        .collect();
    AlgebraDocument {
        format: ALGEBRA_FORMAT.into(),
        field: FIELD.into(),
        basis: s.support().map(|d| (d, s.basis_names(d).to_vec())).collect(),
        differential,
        product,
        unital: a.unit().is_some(),
        unit: a.unit().map(|u| vector_to_doc(s, u)),
        reduced,
    }
}

pub fn complex_from_document(doc: &ComplexDocument, text: &str) -> Result<OrderedSimplicialComplex> {
    let index: BTreeMap<&str, usize> = doc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if index.len() != doc.vertices.len() {
        return Err(parse_error(text, "vertices", "vertex names must be distinct".into()));
    }
    let vertex = |name: &String| -> Result<usize> {
        index
            .get(name.as_str())
            .copied()
            .ok_or_else(|| parse_error(text, name, format!("unknown vertex {name:?}")))
    };
    let facets = doc
        .facets
        .iter()
        .map(|f| f.iter().map(vertex).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let basepoint = vertex(&doc.basepoint)?;
    OrderedSimplicialComplex::from_facets(doc.vertices.clone(), facets, basepoint)
}

pub fn complex_to_document(x: &OrderedSimplicialComplex) -> ComplexDocument {
    let v = x.vertices();
    ComplexDocument {
        format: COMPLEX_FORMAT.into(),
        vertices: v.to_vec(),
        facets: x.facets().iter().map(|f| f.iter().map(|&i| v[i].clone()).collect()).collect(),
        basepoint: v[x.basepoint()].clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::free::heisenberg;
    use crate::complexes::simplicial::torus;

    #[test]
    fn algebra_round_trip() {
        let a = heisenberg(3);
        let doc = algebra_to_document(&a, false);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let Document::Algebra(parsed) = parse_document(&text).unwrap() else { panic!() };
        assert_eq!(parsed, doc);
        let b = algebra_from_document(&parsed, &text).unwrap();
        assert_eq!(algebra_to_document(&b, false), doc);
    }

    #[test]
    fn complex_round_trip() {
        let doc = complex_to_document(&torus());
        let text = serde_json::to_string(&doc).unwrap();
        let Document::Complex(parsed) = parse_document(&text).unwrap() else { panic!() };
        let x = complex_from_document(&parsed, &text).unwrap();
        assert_eq!(complex_to_document(&x), doc);
        assert_eq!(x.simplices(), torus().simplices());
    }

    #[test]
    fn positioned_diagnostics() {
        assert!(matches!(parse_document("  "), Err(Error::Parse { line: 1, .. })));
        let err = parse_document("{\n  \"format\": \"ainf-algebra/1\",\n  \"field\": 3\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let text = "{\"format\": \"ainf-complex/1\",\n\"vertices\": [\"a\"],\n\"facets\": [[\"a\", \"b\"]], \"basepoint\": \"a\"}";
        let Document::Complex(doc) = parse_document(text).unwrap() else { panic!() };
        let err = complex_from_document(&doc, text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 18, .. }), "{err:?}");
    }
}
