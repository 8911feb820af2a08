//! CNF encodings of Latin squares, transversal representation pairs and the
//! colour, subsquare and normal-form constraints of the order-10 search.

pub mod cardinality;
pub mod case;
pub mod dimacs;
pub mod encoder;
pub mod varmap;

use thiserror::Error;

pub use case::{
    encode_case, encode_extension, encode_latin_trp, EncodeOptions, Encoded, LatinEncoding, Manifest, SubsquareChoice,
    TrpEncoding,
};
pub use dimacs::{parse_dimacs, to_dimacs_string, write_dimacs, Dimacs};
pub use encoder::Encoder;
pub use varmap::{SemanticVar, SquareId, VarMap};

/// A DIMACS literal: positive for the variable, negative for its negation, never zero.
pub type Lit = i32;
pub type Clause = Vec<Lit>;

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("cardinality target {target} out of range for {len} literals")]
    TargetOutOfRange { target: usize, len: usize },
    #[error("pair is not a verified transversal representation pair: {0}")]
    InvalidPair(String),
    #[error("case encodings require order 10, found {0}")]
    WrongOrder(usize),
    #[error("malformed DIMACS: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A clause database in DIMACS literal convention.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Appends a clause. Panics on an empty clause, a zero literal, a literal
    /// beyond `num_vars` or a repeated literal.
    pub fn add_clause(&mut self, clause: Clause) {
        assert!(!clause.is_empty(), "empty clause");
        for (idx, &lit) in clause.iter().enumerate() {
            assert!(lit != 0, "zero literal");
            assert!(lit.unsigned_abs() <= self.num_vars, "literal {lit} beyond {}", self.num_vars);
            assert!(!clause[..idx].contains(&lit), "duplicate literal {lit}");
        }
        self.clauses.push(clause);
    }

    /// Evaluates the formula under a total assignment (`assignment[v]` for variable `v`, index 0 unused).
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize] == (l > 0))
        })
    }
}
