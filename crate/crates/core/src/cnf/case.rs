//! Complete instances: one per pair case, extension instances for fixed pairs,
//! and bare Latin TRP instances at any order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::encoder::{Encoder, FamilyCount};
use super::varmap::{SquareId, VarMap};
use super::{CnfError, CnfFormula};
use crate::myrvold::{PairCase, Subsquare, ORDER};
use crate::square::Square;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatinEncoding {
    Pairwise,
    Totalizer,
}

impl FromStr for LatinEncoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pairwise" => Ok(LatinEncoding::Pairwise),
            "totalizer" => Ok(LatinEncoding::Totalizer),
            _ => Err(format!("unknown Latin encoding {s:?}")),
        }
    }
}

/// Which subsquare the instance commits to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsquareChoice {
    Omega1,
    Omega2,
    Either,
}

impl SubsquareChoice {
    /// File-name tag: `omega1`, `omega2` or `either`.
    pub fn tag(self) -> &'static str {
        match self {
            SubsquareChoice::Omega1 => "omega1",
            SubsquareChoice::Omega2 => "omega2",
            SubsquareChoice::Either => "either",
        }
    }

    pub fn forced(self) -> Option<Subsquare> {
        match self {
            SubsquareChoice::Omega1 => Some(Subsquare::Omega1),
            SubsquareChoice::Omega2 => Some(Subsquare::Omega2),
            SubsquareChoice::Either => None,
        }
    }
}

impl fmt::Display for SubsquareChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SubsquareChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" | "omega1" => Ok(SubsquareChoice::Omega1),
            "2" | "omega2" => Ok(SubsquareChoice::Omega2),
            "either" => Ok(SubsquareChoice::Either),
            _ => Err(format!("unknown subsquare choice {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeOptions {
    pub case: PairCase,
    pub subsquare: SubsquareChoice,
    pub latin: LatinEncoding,
    pub redundant_trp: bool,
    pub symmetry_breaking: bool,
    /// Clauses that only help propagation: the reverse colour transfer and
    /// the extra first-row implication.
    pub optional_clauses: bool,
    /// Dark-colour transfer between the squares. Off only for ablation runs.
    pub colour_consistency: bool,
}

impl EncodeOptions {
    pub fn new(case: PairCase, subsquare: SubsquareChoice) -> Self {
        EncodeOptions {
            case,
            subsquare,
            latin: LatinEncoding::Totalizer,
            redundant_trp: true,
            symmetry_breaking: true,
            optional_clauses: true,
            colour_consistency: true,
        }
    }

    /// `UX-either`, `VX-omega1`, ...
    pub fn instance_name(&self) -> String {
        format!("{}-{}", self.case.id(), self.subsquare.tag())
    }
}

/// What an instance contains and how its variables are laid out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub order: usize,
    pub options: Option<EncodeOptions>,
    pub num_vars: u32,
    pub num_clauses: usize,
    pub vars: VarMap,
    pub families: Vec<FamilyCount>,
}

#[derive(Debug, Clone)]
pub struct Encoded {
    pub formula: CnfFormula,
    pub manifest: Manifest,
}

fn finish(name: String, options: Option<EncodeOptions>, enc: Encoder) -> Encoded {
    let (formula, vars, families) = enc.finish();
    let manifest = Manifest {
        name,
        order: vars.order(),
        options,
        num_vars: formula.num_vars,
        num_clauses: formula.num_clauses(),
        vars,
        families,
    };
    Encoded { formula, manifest }
}

/// The order-10 instance for one pair case.
pub fn encode_case(opts: &EncodeOptions) -> Encoded {
    use SquareId::{P, Q, Z};
    let mut vm = VarMap::new(ORDER);
    vm.add_square(P);
    vm.add_square(Q);
    vm.add_square(Z);
    vm.add_colours(P);
    vm.add_colours(Q);
    vm.add_omegas();
    let (w1, w2) = (vm.omega(1), vm.omega(2));
    let mut enc = Encoder::new(vm);

    enc.latin(P, opts.latin);
    enc.latin(Q, opts.latin);
    enc.trp_via_composition(P, Q, Z, opts.latin, opts.redundant_trp);
    enc.colours(P, opts.case.first);
    enc.colours(Q, opts.case.second);
    if opts.colour_consistency {
        enc.colour_consistency(P, Q, opts.optional_clauses);
    }

    let omegas = [(w1, Subsquare::Omega1.square()), (w2, Subsquare::Omega2.square())];
    enc.subsquare(P, &omegas);
    enc.subsquare(Q, &omegas);
    let mut choice = vec![vec![w1, w2]];
    match opts.subsquare {
        SubsquareChoice::Omega1 => choice.push(vec![w1]),
        SubsquareChoice::Omega2 => choice.push(vec![w2]),
        SubsquareChoice::Either => {}
    }
    enc.add("subsquare-choice", choice);

    if opts.symmetry_breaking {
        enc.symmetry_breaking(P, Q, opts.case.first, opts.case.second, opts.optional_clauses);
    }
    finish(opts.instance_name(), Some(*opts), enc)
}

/// Is there a Latin square `L` forming a transversal representation pair with
/// both `p` and `q`? `p` and `q` are fixed by unit clauses.
pub fn encode_extension(p: &Square, q: &Square, latin: LatinEncoding) -> Result<Encoded, CnfError> {
    let n = p.order();
    if q.order() != n {
        return Err(CnfError::InvalidPair(format!("orders {} and {}", n, q.order())));
    }
    if !p.is_latin() || !q.is_latin() {
        return Err(CnfError::InvalidPair("squares must be Latin".into()));
    }
    if !p.is_trp(q).map_err(|e| CnfError::InvalidPair(e.to_string()))? {
        return Err(CnfError::InvalidPair("rows of the first square are not transversals of the second".into()));
    }
    use SquareId::{L, P, Q, ZP, ZQ};
    let mut vm = VarMap::new(n);
    for sq in [P, Q, L, ZP, ZQ] {
        vm.add_square(sq);
    }
    let mut enc = Encoder::new(vm);
    enc.fix_square(P, p);
    enc.fix_square(Q, q);
    enc.latin(L, latin);
    enc.trp_via_composition(L, P, ZP, latin, true);
    enc.trp_via_composition(L, Q, ZQ, latin, true);
    Ok(finish("extension".into(), None, enc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrpEncoding {
    Composition,
    Direct,
}

/// Two Latin squares `P`, `Q` of order `n` forming a transversal
/// representation pair, with none of the order-10 colour structure.
pub fn encode_latin_trp(n: usize, trp: TrpEncoding, latin: LatinEncoding, redundant: bool) -> Encoded {
    use SquareId::{P, Q, Z};
    let mut vm = VarMap::new(n);
    vm.add_square(P);
    vm.add_square(Q);
    if trp == TrpEncoding::Composition {
        vm.add_square(Z);
    }
    let mut enc = Encoder::new(vm);
    enc.latin(P, latin);
    enc.latin(Q, latin);
    match trp {
        TrpEncoding::Composition => enc.trp_via_composition(P, Q, Z, latin, redundant),
        TrpEncoding::Direct => enc.trp_direct(P, Q),
    }
    let name = match trp {
        TrpEncoding::Composition => format!("latin-trp-{n}-composition"),
        TrpEncoding::Direct => format!("latin-trp-{n}-direct"),
    };
    finish(name, None, enc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::myrvold::SquareType;

    fn case(s: &str) -> PairCase {
        s.parse().unwrap()
    }

    #[test]
    fn deterministic_layout() {
        let opts = EncodeOptions::new(case("UX"), SubsquareChoice::Either);
        let a = encode_case(&opts);
        let b = encode_case(&opts);
        assert_eq!(a.formula, b.formula);
        assert_eq!(a.manifest, b.manifest);
        assert_eq!(a.manifest.name, "UX-either");
        assert_eq!(a.manifest.vars.semantic_vars(), 3202);
        assert_eq!(a.manifest.vars.omega(1), 3201);
    }

    #[test]
    fn omega_units() {
        let w1 = encode_case(&EncodeOptions::new(case("VX"), SubsquareChoice::Omega1));
        assert!(w1.formula.clauses.contains(&vec![3201]));
        assert!(!w1.formula.clauses.contains(&vec![3202]));
        assert!(w1.formula.clauses.contains(&vec![3201, 3202]));
        let either = encode_case(&EncodeOptions::new(case("VX"), SubsquareChoice::Either));
        assert!(!either.formula.clauses.contains(&vec![3201]));
        assert_eq!(w1.formula.num_clauses(), either.formula.num_clauses() + 1);
    }

    #[test]
    fn family_counts() {
        let mut opts = EncodeOptions::new(case("RR"), SubsquareChoice::Omega2);
        opts.latin = LatinEncoding::Pairwise;
        let e = encode_case(&opts);
        let count = |name: &str| {
            e.manifest
                .families
                .iter()
                .find(|f| f.name == name)
                .map_or(0, |f| f.clauses)
        };
        assert_eq!(count("latin-P"), 13_800);
        assert_eq!(count("trp-PQ"), 30_000);
        assert_eq!(count("colour-consistency-PQ"), 7_200);
        // 6 pairs of subsquare columns in each of 10 rows, then 3 guarded rows per omega.
        assert_eq!(count("subsquare-P"), 60 + 2 * 3 * 60);
        // first row: 7 units, 6 conditionals, 1 optional
        assert_eq!(count("symmetry-first-row"), 14);
        // R has two blocks (8 rows, 2 rows): 7 + 1 adjacent pairs with 45 clauses each
        assert_eq!(count("symmetry-order-P"), 8 * 45);
    }

    #[test]
    fn sorted_types_drive_rows() {
        assert_eq!(SquareType::R.sorted_row_types().len(), 10);
    }

    #[test]
    fn extension_requires_trp() {
        let c = Square::cyclic(3);
        assert!(encode_extension(&c, &c, LatinEncoding::Pairwise).is_err());
        let e = Square::identity(3);
        assert!(encode_extension(&c, &e, LatinEncoding::Pairwise).is_err());
        let q = c.compose(&c).unwrap();
        assert!(q.is_latin());
        let enc = encode_extension(&c, &q, LatinEncoding::Pairwise).unwrap();
        let units = enc.formula.clauses.iter().filter(|c| c.len() == 1).count();
        assert_eq!(units, 18);
    }
}
