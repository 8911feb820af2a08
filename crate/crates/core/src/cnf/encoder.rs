//! Clause families over a [`VarMap`]. Each method appends one or more named
//! families to the formula so clause counts can be reported per family.

use super::cardinality::{exactly, exactly_one_pairwise};
use super::case::LatinEncoding;
use super::varmap::{SquareId, VarMap};
use super::{Clause, CnfFormula, Lit};
use crate::myrvold::{SquareType, LEFT_COLUMNS, WHITE_SYMBOLS};
use crate::square::Square;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FamilyCount {
    pub name: String,
    pub clauses: usize,
}

#[derive(Debug, Clone)]
pub struct Encoder {
    vars: VarMap,
    clauses: Vec<Clause>,
    families: Vec<FamilyCount>,
}

impl Encoder {
    pub fn new(vars: VarMap) -> Self {
        Encoder {
            vars,
            clauses: Vec::new(),
            families: Vec::new(),
        }
    }

    pub fn vars(&self) -> &VarMap {
        &self.vars
    }

    pub fn families(&self) -> &[FamilyCount] {
        &self.families
    }

    pub fn family_count(&self, name: &str) -> usize {
        self.families
            .iter()
            .filter(|f| f.name == name)
            .map(|f| f.clauses)
            .sum()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    fn emit(&mut self, family: &str, clauses: impl IntoIterator<Item = Clause>) {
        let before = self.clauses.len();
        self.clauses.extend(clauses);
        let added = self.clauses.len() - before;
        match self.families.iter_mut().find(|f| f.name == family) {
            Some(f) => f.clauses += added,
            None => self.families.push(FamilyCount {
                name: family.to_string(),
                clauses: added,
            }),
        }
    }

    fn exactly(&mut self, family: &str, lits: &[Lit], target: usize) {
        let clauses = exactly(lits, target, &mut self.vars).expect("target within range");
        self.emit(family, clauses);
    }

    fn exactly_one(&mut self, family: &str, lits: &[Lit], mode: LatinEncoding) {
        match mode {
            LatinEncoding::Pairwise => self.emit(family, exactly_one_pairwise(lits)),
            LatinEncoding::Totalizer => self.exactly(family, lits, 1),
        }
    }

    /// Every cell holds one symbol and every row and column holds every symbol once.
    pub fn latin(&mut self, sq: SquareId, mode: LatinEncoding) {
        let n = self.vars.order();
        let family = format!("latin-{sq}");
        for a in 0..n {
            for b in 0..n {
                let lits: Vec<Lit> = (0..n).map(|k| self.vars.cell(sq, a, b, k)).collect();
                self.exactly_one(&family, &lits, mode);
            }
        }
        for col in 0..n {
            for k in 0..n {
                let lits: Vec<Lit> = (0..n).map(|i| self.vars.cell(sq, i, col, k)).collect();
                self.exactly_one(&family, &lits, mode);
            }
        }
        for row in 0..n {
            for k in 0..n {
                let lits: Vec<Lit> = (0..n).map(|j| self.vars.cell(sq, row, j, k)).collect();
                self.exactly_one(&family, &lits, mode);
            }
        }
    }

    /// `(p, q)` is a transversal representation pair, through the Latin
    /// composition square `z = p⁻¹q`. The ternary clauses tie `q[i,j] = p[z[i,j], j]`;
    /// with `redundant` the two derivable directions are added as well.
    pub fn trp_via_composition(
        &mut self,
        p: SquareId,
        q: SquareId,
        z: SquareId,
        mode: LatinEncoding,
        redundant: bool,
    ) {
        let n = self.vars.order();
        let vm = &self.vars;
        let mut forward = Vec::with_capacity(n.pow(4));
        let mut backward = Vec::new();
        let mut determine = Vec::new();
        for i in 0..n {
            for src in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let zv = vm.cell(z, i, j, src);
                        let pv = vm.cell(p, src, j, k);
                        let qv = vm.cell(q, i, j, k);
                        forward.push(vec![-zv, -pv, qv]);
                        if redundant {
                            backward.push(vec![-zv, -qv, pv]);
                            determine.push(vec![-pv, -qv, zv]);
                        }
                    }
                }
            }
        }
        let family = format!("trp-{p}{q}");
        self.emit(&family, forward);
        self.emit(&family, backward);
        self.emit(&family, determine);
        self.latin(z, mode);
    }

    /// Contrapositive of the transversal-representation definition:
    /// `n⁴ C(n, 2)` clauses of length four.
    pub fn trp_direct(&mut self, p: SquareId, q: SquareId) {
        let n = self.vars.order();
        let vm = &self.vars;
        let mut clauses = Vec::with_capacity(n.pow(4) * n * (n - 1) / 2);
        for i in 0..n {
            for i2 in 0..n {
                for j in 0..n {
                    for j2 in j + 1..n {
                        for k in 0..n {
                            for k2 in 0..n {
                                clauses.push(vec![
                                    -vm.cell(p, i, j, k),
                                    -vm.cell(p, i, j2, k2),
                                    -vm.cell(q, i2, j, k),
                                    -vm.cell(q, i2, j2, k2),
                                ]);
                            }
                        }
                    }
                }
            }
        }
        self.emit(&format!("trp-direct-{p}{q}"), clauses);
    }

    /// Colour linkage and type constraints for one square of the given type,
    /// rows pre-assigned to transversal types in sorted order.
    pub fn colours(&mut self, sq: SquareId, square_type: SquareType) {
        let n = self.vars.order();
        let vm = &self.vars;
        let mut linkage = Vec::new();
        for i in 0..n {
            for j in LEFT_COLUMNS..n {
                let w = vm.white(sq, i, j);
                for r in 0..WHITE_SYMBOLS {
                    linkage.push(vec![-vm.cell(sq, i, j, r), w]);
                }
                let mut c = vec![-w];
                c.extend((0..WHITE_SYMBOLS).map(|r| vm.cell(sq, i, j, r)));
                linkage.push(c);
            }
        }
        for i in 0..n {
            for j in 0..LEFT_COLUMNS {
                let mut c = vec![-vm.dark(sq, i, j)];
                c.extend((WHITE_SYMBOLS..n).map(|r| vm.cell(sq, i, j, r)));
                linkage.push(c);
            }
        }
        self.emit(&format!("colour-link-{sq}"), linkage);

        let family = format!("colour-type-{sq}");
        for (i, row_type) in square_type.sorted_row_types().into_iter().enumerate() {
            let darks: Vec<Lit> = (0..LEFT_COLUMNS).map(|j| self.vars.dark(sq, i, j)).collect();
            self.exactly(&family, &darks, row_type.darks());
            let whites: Vec<Lit> = (LEFT_COLUMNS..n).map(|j| self.vars.white(sq, i, j)).collect();
            self.exactly(&family, &whites, row_type.whites());
        }
        for j in 0..LEFT_COLUMNS {
            let darks: Vec<Lit> = (0..n).map(|i| self.vars.dark(sq, i, j)).collect();
            self.exactly(&family, &darks, crate::myrvold::DARK_PER_COLUMN);
        }
    }

    /// A dark symbol in a left column of `p` is dark in the same column of `q`.
    /// `both_directions` adds the converse transfer.
    pub fn colour_consistency(&mut self, p: SquareId, q: SquareId, both_directions: bool) {
        let n = self.vars.order();
        let vm = &self.vars;
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for i in 0..n {
            for i2 in 0..n {
                for j in 0..LEFT_COLUMNS {
                    for k in WHITE_SYMBOLS..n {
                        let pk = vm.cell(p, i, j, k);
                        let qk = vm.cell(q, i2, j, k);
                        let pd = vm.dark(p, i, j);
                        let qd = vm.dark(q, i2, j);
                        forward.push(vec![-pk, -pd, -qk, qd]);
                        if both_directions {
                            backward.push(vec![-pk, -qd, -qk, pd]);
                        }
                    }
                }
            }
        }
        let family = format!("colour-consistency-{p}{q}");
        self.emit(&family, forward);
        self.emit(&family, backward);
    }

    /// White placements in the subsquare columns of `sq` must not take two
    /// cells from one row of the subsquare. Row 0 of both candidate subsquares
    /// is `[0, 1, 2, 3]`; rows 1..4 are guarded by `ω₁` / `ω₂`.
    pub fn subsquare(&mut self, sq: SquareId, omegas: &[(Lit, Square)]) {
        let n = self.vars.order();
        let vm = &self.vars;
        let mut shared = Vec::new();
        for i in 0..n {
            for a in LEFT_COLUMNS..n {
                for b in a + 1..n {
                    shared.push(vec![
                        -vm.cell(sq, i, a, a - LEFT_COLUMNS),
                        -vm.cell(sq, i, b, b - LEFT_COLUMNS),
                    ]);
                }
            }
        }
        let mut guarded = Vec::new();
        for (guard, omega) in omegas {
            for i in 0..n {
                for r in 1..omega.order() {
                    for a in LEFT_COLUMNS..n {
                        for b in a + 1..n {
                            guarded.push(vec![
                                -guard,
                                -vm.cell(sq, i, a, omega.get(r, a - LEFT_COLUMNS)),
                                -vm.cell(sq, i, b, omega.get(r, b - LEFT_COLUMNS)),
                            ]);
                        }
                    }
                }
            }
        }
        let family = format!("subsquare-{sq}");
        self.emit(&family, shared);
        self.emit(&family, guarded);
    }

    /// Adds clauses under an explicit family name.
    pub fn add(&mut self, family: &str, clauses: impl IntoIterator<Item = Clause>) {
        self.emit(family, clauses);
    }

    /// Fixes the first row of `p` to one of the three normal-form rows and
    /// orders same-type rows of `p` and `q` by their first-column symbol.
    pub fn symmetry_breaking(
        &mut self,
        p: SquareId,
        q: SquareId,
        p_type: SquareType,
        q_type: SquareType,
        optional: bool,
    ) {
        let vm = &self.vars;
        let cell = |r, c, s| vm.cell(p, r, c, s);
        let mut units = vec![vec![cell(0, 0, 0)]];
        units.extend((3..=5).map(|j| vec![cell(0, j, j + 1)]));
        units.extend((7..=9).map(|j| vec![cell(0, j, j)]));

        let mut first_row = Vec::new();
        for (sym6, col1, col2) in [(3, 1, 2), (2, 1, 3), (1, 2, 3)] {
            first_row.push(vec![-cell(0, 6, sym6), cell(0, 1, col1)]);
            first_row.push(vec![-cell(0, 6, sym6), cell(0, 2, col2)]);
        }
        if optional {
            first_row.push(vec![-cell(0, 1, 2), cell(0, 2, 3)]);
        }
        self.emit("symmetry-first-row", units);
        self.emit("symmetry-first-row", first_row);

        for (sq, t) in [(p, p_type), (q, q_type)] {
            let lex = self.first_column_order(sq, t);
            self.emit(&format!("symmetry-order-{sq}"), lex);
        }
    }

    fn first_column_order(&self, sq: SquareId, t: SquareType) -> Vec<Clause> {
        let n = self.vars.order();
        let types = t.sorted_row_types();
        let mut clauses = Vec::new();
        for i in 0..n - 1 {
            if types[i] != types[i + 1] {
                continue;
            }
            for k in 0..n {
                for l in 0..k {
                    clauses.push(vec![-self.vars.cell(sq, i, 0, k), -self.vars.cell(sq, i + 1, 0, l)]);
                }
            }
        }
        clauses
    }

    /// Unit clauses fixing every cell of `sq` to `value`.
    pub fn fix_square(&mut self, sq: SquareId, value: &Square) {
        let n = self.vars.order();
        let units: Vec<Clause> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| vec![self.vars.cell(sq, i, j, value.get(i, j))])
            .collect();
        self.emit(&format!("fixed-{sq}"), units);
    }

    pub fn finish(self) -> (CnfFormula, VarMap, Vec<FamilyCount>) {
        let mut formula = CnfFormula::new(self.vars.num_vars());
        for c in self.clauses {
            formula.add_clause(c);
        }
        (formula, self.vars, self.families)
    }
}
