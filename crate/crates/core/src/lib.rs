//! Latin squares, transversal representation pairs and the order-10 search model.
//!
//! * [`square`]: column-Latin squares, composition, column inverse, orthogonality.
//! * [`transversal`]: transversal enumeration and disjoint decompositions.
//! * [`myrvold`]: colourings, row and square types, the 28 pair cases.
//! * [`cnf`]: CNF encodings and DIMACS I/O.
//! * [`families`]: all small Latin squares and field-based orthogonal sets.
//! * [`equivalence`]: orthogonal arrays, their graphs and canonical certificates.

pub mod cnf;
pub mod equivalence;
pub mod exact_cover;
pub mod families;
pub mod myrvold;
pub mod square;
pub mod transversal;

pub use myrvold::{Colour, Colouring, PairCase, SquareType, Subsquare};
pub use square::{Permutation, Square, SquareError};
pub use transversal::Transversal;
