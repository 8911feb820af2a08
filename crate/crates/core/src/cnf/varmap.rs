use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Lit;
use crate::myrvold::LEFT_COLUMNS;

/// Square blocks that carry `n³` cell-symbol variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareId {
    P,
    Q,
    /// Composition square `P⁻¹Q`.
    Z,
    /// Third square of an extension instance.
    L,
    /// Composition square `L⁻¹P` of an extension instance.
    ZP,
    /// Composition square `L⁻¹Q` of an extension instance.
    ZQ,
}

impl fmt::Display for SquareId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for SquareId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "P" => SquareId::P,
            "Q" => SquareId::Q,
            "Z" => SquareId::Z,
            "L" => SquareId::L,
            "ZP" => SquareId::ZP,
            "ZQ" => SquareId::ZQ,
            _ => return Err(format!("unknown square {s:?}")),
        })
    }
}

/// What a DIMACS variable means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticVar {
    Cell {
        square: SquareId,
        row: usize,
        col: usize,
        symbol: usize,
    },
    /// Colour flag: dark in the left columns, white in the subsquare columns.
    Colour {
        square: SquareId,
        row: usize,
        col: usize,
    },
    /// `ω₁` (index 1) or `ω₂` (index 2).
    Omega(usize),
    Aux(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub square: SquareId,
    pub first_var: u32,
    pub len: u32,
}

/// Bijection between semantic variables and DIMACS integers.
///
/// Semantic blocks are numbered in registration order and must all be
/// registered before the first auxiliary variable is drawn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarMap {
    order: usize,
    cells: Vec<Block>,
    colours: Vec<Block>,
    omega_first: Option<u32>,
    semantic_vars: u32,
    num_vars: u32,
}

impl VarMap {
    pub fn new(order: usize) -> Self {
        VarMap {
            order,
            cells: Vec::new(),
            colours: Vec::new(),
            omega_first: None,
            semantic_vars: 0,
            num_vars: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn reserve(&mut self, len: u32) -> u32 {
        assert_eq!(
            self.num_vars, self.semantic_vars,
            "semantic variables must be registered before auxiliaries"
        );
        let first = self.num_vars + 1;
        self.num_vars += len;
        self.semantic_vars = self.num_vars;
        first
    }

    pub fn add_square(&mut self, square: SquareId) {
        assert!(self.cell_block(square).is_none(), "{square} registered twice");
        let len = (self.order * self.order * self.order) as u32;
        let first_var = self.reserve(len);
        self.cells.push(Block { square, first_var, len });
    }

    pub fn add_colours(&mut self, square: SquareId) {
        assert!(self.colour_block(square).is_none(), "colours of {square} registered twice");
        let len = (self.order * self.order) as u32;
        let first_var = self.reserve(len);
        self.colours.push(Block { square, first_var, len });
    }

    pub fn add_omegas(&mut self) {
        assert!(self.omega_first.is_none());
        self.omega_first = Some(self.reserve(2));
    }

    pub fn fresh(&mut self) -> Lit {
        self.num_vars += 1;
        self.num_vars as Lit
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn semantic_vars(&self) -> u32 {
        self.semantic_vars
    }

    pub fn cell_blocks(&self) -> &[Block] {
        &self.cells
    }

    pub fn colour_blocks(&self) -> &[Block] {
        &self.colours
    }

    pub fn omega_first(&self) -> Option<u32> {
        self.omega_first
    }

    fn cell_block(&self, square: SquareId) -> Option<&Block> {
        self.cells.iter().find(|b| b.square == square)
    }

    fn colour_block(&self, square: SquareId) -> Option<&Block> {
        self.colours.iter().find(|b| b.square == square)
    }

    pub fn has_square(&self, square: SquareId) -> bool {
        self.cell_block(square).is_some()
    }

    /// `square[row, col] = symbol`.
    pub fn cell(&self, square: SquareId, row: usize, col: usize, symbol: usize) -> Lit {
        let n = self.order;
        debug_assert!(row < n && col < n && symbol < n);
        let block = self
            .cell_block(square)
            .unwrap_or_else(|| panic!("{square} not registered"));
        (block.first_var as usize + (row * n + col) * n + symbol) as Lit
    }

    fn colour(&self, square: SquareId, row: usize, col: usize) -> Lit {
        let block = self
            .colour_block(square)
            .unwrap_or_else(|| panic!("colours of {square} not registered"));
        (block.first_var as usize + row * self.order + col) as Lit
    }

    /// Dark flag, defined for the left columns only.
    pub fn dark(&self, square: SquareId, row: usize, col: usize) -> Lit {
        assert!(col < LEFT_COLUMNS, "no dark variable in column {col}");
        self.colour(square, row, col)
    }

    /// White flag, defined for the subsquare columns only.
    pub fn white(&self, square: SquareId, row: usize, col: usize) -> Lit {
        assert!(col >= LEFT_COLUMNS, "no white variable in column {col}");
        self.colour(square, row, col)
    }

    pub fn omega(&self, index: usize) -> Lit {
        assert!(index == 1 || index == 2);
        let first = self.omega_first.expect("omega variables not registered");
        (first as usize + index - 1) as Lit
    }

    /// Inverse of the numbering. Returns `None` for 0 or variables beyond `num_vars`.
    pub fn resolve(&self, var: u32) -> Option<SemanticVar> {
        if var == 0 || var > self.num_vars {
            return None;
        }
        let n = self.order as u32;
        for b in &self.cells {
            if (b.first_var..b.first_var + b.len).contains(&var) {
                let off = var - b.first_var;
                return Some(SemanticVar::Cell {
                    square: b.square,
                    row: (off / (n * n)) as usize,
                    col: (off / n % n) as usize,
                    symbol: (off % n) as usize,
                });
            }
        }
        for b in &self.colours {
            if (b.first_var..b.first_var + b.len).contains(&var) {
                let off = var - b.first_var;
                return Some(SemanticVar::Colour {
                    square: b.square,
                    row: (off / n) as usize,
                    col: (off % n) as usize,
                });
            }
        }
        if let Some(first) = self.omega_first {
            if var == first || var == first + 1 {
                return Some(SemanticVar::Omega((var - first + 1) as usize));
            }
        }
        Some(SemanticVar::Aux(var))
    }
}

/// Source of fresh auxiliary variables.
pub trait AuxVars {
    fn fresh(&mut self) -> Lit;
}

impl AuxVars for VarMap {
    fn fresh(&mut self) -> Lit {
        VarMap::fresh(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbering_order_and_resolution() {
        let mut vm = VarMap::new(10);
        vm.add_square(SquareId::P);
        vm.add_square(SquareId::Q);
        vm.add_square(SquareId::Z);
        vm.add_colours(SquareId::P);
        vm.add_colours(SquareId::Q);
        vm.add_omegas();
        assert_eq!(vm.cell(SquareId::P, 0, 0, 0), 1);
        assert_eq!(vm.cell(SquareId::P, 9, 9, 9), 1000);
        assert_eq!(vm.cell(SquareId::Q, 0, 0, 0), 1001);
        assert_eq!(vm.cell(SquareId::Z, 0, 0, 0), 2001);
        assert_eq!(vm.dark(SquareId::P, 0, 0), 3001);
        assert_eq!(vm.white(SquareId::Q, 9, 9), 3200);
        assert_eq!(vm.omega(1), 3201);
        assert_eq!(vm.omega(2), 3202);
        let aux = vm.fresh();
        assert_eq!(aux, 3203);

        let mut seen = std::collections::HashSet::new();
        for v in 1..=vm.num_vars() {
            let sem = vm.resolve(v).unwrap();
            assert!(seen.insert(sem));
            let back = match sem {
                SemanticVar::Cell { square, row, col, symbol } => vm.cell(square, row, col, symbol),
                SemanticVar::Colour { square, row, col } if col < LEFT_COLUMNS => vm.dark(square, row, col),
                SemanticVar::Colour { square, row, col } => vm.white(square, row, col),
                SemanticVar::Omega(i) => vm.omega(i),
                SemanticVar::Aux(a) => a as Lit,
            };
            assert_eq!(back, v as Lit);
        }
        assert_eq!(vm.resolve(0), None);
        assert_eq!(vm.resolve(vm.num_vars() + 1), None);
    }

    #[test]
    #[should_panic(expected = "before auxiliaries")]
    fn semantic_after_aux_is_rejected() {
        let mut vm = VarMap::new(4);
        vm.add_square(SquareId::P);
        vm.fresh();
        vm.add_square(SquareId::Q);
    }
}
