//! Input families: ordered simplicial complexes with their cochain
//! algebras, truncated free graded-commutative algebras, and the example
//! corpus.

pub mod corpus;
pub mod free;
pub mod simplicial;

pub use free::{free_algebra, monomial_basis, Generator, Polynomial};
pub use simplicial::{cochain_algebra, ls_cat_lower_bound, suspension, OrderedSimplicialComplex};
pub use corpus::{check_expectations, example_corpus, ExampleDescriptor, Mismatch};
