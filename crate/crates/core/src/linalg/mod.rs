//! Exact linear algebra for chain complexes: sparse vectors over a field,
//! incremental column reduction, and Smith normal form over the integers.

pub mod field;
pub mod reduce;
pub mod snf;
pub mod sparse;

pub use field::{Field, PrimeField, Rational, Rationals};
pub use reduce::{kernel_basis, rank, Insertion, ReducedSpan};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
pub use sparse::{SparseMatrix, SparseVec};
