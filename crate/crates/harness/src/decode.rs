//! Turning a solver model back into squares, colourings and the subsquare choice.

use mols10_core::cnf::{CnfFormula, Manifest, SquareId, VarMap};
use mols10_core::myrvold::{Colour, Colouring, LEFT_COLUMNS, ORDER};
use mols10_core::{PairCase, Square, SquareError, Subsquare};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DecodeError {
    #[error("model assigns variable {0} twice with opposite values")]
    Contradiction(u32),
    #[error("model mentions variable {0} outside the instance")]
    OutOfRange(u32),
    #[error("model leaves semantic variable {0} unassigned")]
    Unassigned(u32),
    #[error("cell ({row}, {col}) of {square} has {count} true symbol variables")]
    CellMultiplicity {
        square: SquareId,
        row: usize,
        col: usize,
        count: usize,
    },
    #[error("instance has no {0} block")]
    MissingSquare(SquareId),
    #[error(transparent)]
    Square(#[from] SquareError),
}

/// A decoded pair with whatever model structure the instance carried.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decoded {
    pub p: Square,
    pub q: Square,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Square>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours_p: Option<Colouring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours_q: Option<Colouring>,
    /// Subsquares whose flag is true in the model.
    #[serde(default)]
    pub omegas: Vec<Subsquare>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<PairCase>,
}

impl Decoded {
    pub fn bare(p: Square, q: Square) -> Self {
        Decoded {
            p,
            q,
            z: None,
            colours_p: None,
            colours_q: None,
            omegas: Vec::new(),
            case: None,
        }
    }
}

/// Truth values indexed by DIMACS variable (index 0 unused). Variables the
/// model omits are `None`.
pub fn assignment(model: &[i32], num_vars: u32) -> Result<Vec<Option<bool>>, DecodeError> {
    let mut values = vec![None; num_vars as usize + 1];
    for &lit in model {
        let v = lit.unsigned_abs();
        if v == 0 || v > num_vars {
            return Err(DecodeError::OutOfRange(v));
        }
        let slot = &mut values[v as usize];
        if slot.is_some_and(|b| b != (lit > 0)) {
            return Err(DecodeError::Contradiction(v));
        }
        *slot = Some(lit > 0);
    }
    Ok(values)
}

/// Every clause has a literal the model makes true; unassigned literals do not count.
pub fn model_satisfies(formula: &CnfFormula, values: &[Option<bool>]) -> bool {
    formula.clauses.iter().all(|c| {
        c.iter()
            .any(|&l| values.get(l.unsigned_abs() as usize).copied().flatten() == Some(l > 0))
    })
}

fn truth(values: &[Option<bool>], lit: i32) -> Result<bool, DecodeError> {
    let v = lit.unsigned_abs();
    let b = values
        .get(v as usize)
        .copied()
        .flatten()
        .ok_or(DecodeError::Unassigned(v))?;
    Ok(b == (lit > 0))
}

/// Reads one cell block; every cell must have exactly one true symbol.
pub fn decode_square(values: &[Option<bool>], vars: &VarMap, square: SquareId) -> Result<Square, DecodeError> {
    if !vars.has_square(square) {
        return Err(DecodeError::MissingSquare(square));
    }
    let n = vars.order();
    let mut cells = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            let mut found = Vec::new();
            for k in 0..n {
                if truth(values, vars.cell(square, row, col, k))? {
                    found.push(k as u8);
                }
            }
            if found.len() != 1 {
                return Err(DecodeError::CellMultiplicity {
                    square,
                    row,
                    col,
                    count: found.len(),
                });
            }
            cells.push(found[0]);
        }
    }
    Ok(Square::from_cells(n, cells)?)
}

/// Colouring from the flags: white flags in the subsquare columns, dark flags
/// in the left block, and white for small symbols in the left block.
fn decode_colouring(
    values: &[Option<bool>],
    vars: &VarMap,
    square: SquareId,
    decoded: &Square,
) -> Result<Colouring, DecodeError> {
    let mut colours = Vec::with_capacity(ORDER * ORDER);
    for row in 0..ORDER {
        for col in 0..ORDER {
            let colour = if col >= LEFT_COLUMNS {
                if truth(values, vars.white(square, row, col))? {
                    Colour::White
                } else {
                    Colour::Light
                }
            } else if truth(values, vars.dark(square, row, col))? {
                Colour::Dark
            } else if decoded.get(row, col) < mols10_core::myrvold::WHITE_SYMBOLS {
                Colour::White
            } else {
                Colour::Light
            };
            colours.push(colour);
        }
    }
    Ok(Colouring::new(colours).expect("order-10 colouring"))
}

pub fn decode_model(model: &[i32], manifest: &Manifest) -> Result<Decoded, DecodeError> {
    let values = assignment(model, manifest.num_vars)?;
    let vars = &manifest.vars;
    let p = decode_square(&values, vars, SquareId::P)?;
    let q = decode_square(&values, vars, SquareId::Q)?;
    let z = if vars.has_square(SquareId::Z) {
        Some(decode_square(&values, vars, SquareId::Z)?)
    } else {
        None
    };
    let mut decoded = Decoded::bare(p, q);
    decoded.z = z;
    let has_colours = |sq: SquareId| vars.colour_blocks().iter().any(|b| b.square == sq);
    if vars.order() == ORDER && has_colours(SquareId::P) {
        decoded.colours_p = Some(decode_colouring(&values, vars, SquareId::P, &decoded.p)?);
    }
    if vars.order() == ORDER && has_colours(SquareId::Q) {
        decoded.colours_q = Some(decode_colouring(&values, vars, SquareId::Q, &decoded.q)?);
    }
    if vars.omega_first().is_some() {
        for (index, sub) in [(1, Subsquare::Omega1), (2, Subsquare::Omega2)] {
            if truth(&values, vars.omega(index))? {
                decoded.omegas.push(sub);
            }
        }
    }
    decoded.case = manifest.options.map(|o| o.case);
    Ok(decoded)
}
