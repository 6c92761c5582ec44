//! Truth-determining sets, truth-redundancy and truth-relevance of
//! quantifier-free formulas, with optional stuck-value preconditions.
//!
//! Rows of a truth table are numbered so that the first atom is the most
//! significant bit: row `r` assigns atom `j` of `k` the bit `(r >> (k-1-j)) & 1`.
//! The same bit layout is used for atom subsets.
//!
//! [`DeterminationTable`] is the kernel shared with [`crate::mono`]: a set of
//! atoms determines a formula iff the formula is constant on every fiber of
//! rows that agree on the set, where a member with a pinned value only admits
//! rows carrying that value. Atoms outside the set are always free, even when
//! they have a stuck value.

use std::collections::BTreeMap;

use crate::ast::{Atom, Formula};
use crate::error::{Error, Result};

/// Largest atom count for which truth tables are built.
pub const MAX_ATOMS: usize = 20;

/// Largest atom count for which all minimal determining sets are enumerated.
pub const MAX_ENUMERATED_ATOMS: usize = 12;

/// Atoms pinned to a single value.
pub type StuckMap = BTreeMap<Atom, bool>;

/// A total assignment to the atom list of a formula.
pub type Row = Vec<bool>;

/// A quantifier-free formula compiled against a fixed atom list.
#[derive(Debug, Clone)]
pub(crate) enum Expr {
    Atom(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub(crate) fn compile(f: &Formula, atoms: &[Atom]) -> Result<Expr> {
        let bin = |a: &Formula, b: &Formula| -> Result<(Box<Expr>, Box<Expr>)> {
            Ok((Box::new(Expr::compile(a, atoms)?), Box::new(Expr::compile(b, atoms)?)))
        };
        Ok(match f {
            Formula::Atom(a) => Expr::Atom(
                atoms
                    .iter()
                    .position(|x| x == a)
                    .ok_or_else(|| Error::Invalid(format!("atom `{a}` missing from atom list")))?,
            ),
            Formula::Not(a) => Expr::Not(Box::new(Expr::compile(a, atoms)?)),
            Formula::And(a, b) => {
                let (a, b) = bin(a, b)?;
                Expr::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b)?;
                Expr::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = bin(a, b)?;
                Expr::Implies(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(a, b)?;
                Expr::Iff(a, b)
            }
            Formula::ForAll(..) | Formula::Exists(..) => {
                return Err(Error::Invalid(format!("`{f}` is not quantifier-free")))
            }
        })
    }

    pub(crate) fn eval(&self, value: &impl Fn(usize) -> bool) -> bool {
        match self {
            Expr::Atom(i) => value(*i),
            Expr::Not(a) => !a.eval(value),
            Expr::And(a, b) => a.eval(value) && b.eval(value),
            Expr::Or(a, b) => a.eval(value) || b.eval(value),
            Expr::Implies(a, b) => !a.eval(value) || b.eval(value),
            Expr::Iff(a, b) => a.eval(value) == b.eval(value),
        }
    }
}

/// Value of a quantifier-free formula for every row of its atom list.
#[derive(Debug, Clone)]
pub struct DeterminationTable {
    atoms: Vec<Atom>,
    values: Vec<bool>,
}

impl DeterminationTable {
    pub fn new(f: &Formula) -> Result<Self> {
        Self::with_atoms(f, f.atoms())
    }

    pub fn with_atoms(f: &Formula, atoms: Vec<Atom>) -> Result<Self> {
        let k = atoms.len();
        if k > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                count: k,
                max: MAX_ATOMS,
            });
        }
        let expr = Expr::compile(f, &atoms)?;
        let values = (0..1usize << k)
            .map(|row| expr.eval(&|j| (row >> (k - 1 - j)) & 1 == 1))
            .collect();
        Ok(DeterminationTable { atoms, values })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn width(&self) -> usize {
        self.atoms.len()
    }

    pub fn value(&self, row: usize) -> bool {
        self.values[row]
    }

    pub fn bit(&self, atom: usize) -> usize {
        1 << (self.width() - 1 - atom)
    }

    pub fn full_mask(&self) -> usize {
        (1 << self.width()) - 1
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Whether the atoms in `members` determine the value. `pins[j]` restricts
    /// atom `j` to one value, but only when `j` is a member.
    pub fn determines(&self, members: usize, pins: &[Option<bool>]) -> bool {
        let k = self.width();
        let mut pin_mask = 0;
        let mut pin_bits = 0;
        for (j, pin) in pins.iter().enumerate() {
            if let Some(v) = pin {
                let bit = self.bit(j);
                if members & bit != 0 {
                    pin_mask |= bit;
                    if *v {
                        pin_bits |= bit;
                    }
                }
            }
        }
        let mut seen: Vec<Option<bool>> = vec![None; 1 << k];
        for (row, &v) in self.values.iter().enumerate() {
            if row & pin_mask != pin_bits {
                continue;
            }
            let slot = &mut seen[row & members];
            match *slot {
                None => *slot = Some(v),
                Some(prev) if prev != v => return false,
                Some(_) => {}
            }
        }
        true
    }

    /// Atom subset (bitmask) as atom indices in atom order.
    pub fn members(&self, mask: usize) -> Vec<usize> {
        (0..self.width()).filter(|&j| mask & self.bit(j) != 0).collect()
    }

    /// Index of the first atom whose complement set is determining, if any.
    pub fn first_determining_co_singleton(&self, pins: &[Option<bool>]) -> Option<usize> {
        (0..self.width()).find(|&j| self.determines(self.full_mask() & !self.bit(j), pins))
    }
}

/// Determination analysis of one formula under a stuck map.
#[derive(Debug, Clone)]
pub struct PropAnalysis {
    table: DeterminationTable,
    pins: Vec<Option<bool>>,
}

impl PropAnalysis {
    pub fn new(f: &Formula, stuck: &StuckMap) -> Result<Self> {
        if !f.is_quantifier_free() {
            return Err(Error::Invalid(format!("`{f}` is not quantifier-free")));
        }
        let table = DeterminationTable::new(f)?;
        if let Some(a) = stuck.keys().find(|a| !table.atoms().contains(a)) {
            return Err(Error::Invalid(format!("stuck atom `{a}` does not occur in `{f}`")));
        }
        let pins = table.atoms().iter().map(|a| stuck.get(a).copied()).collect();
        Ok(PropAnalysis { table, pins })
    }

    pub fn atoms(&self) -> &[Atom] {
        self.table.atoms()
    }

    pub fn mask_of(&self, set: &[Atom]) -> Result<usize> {
        set.iter().try_fold(0, |mask, a| {
            let j = self
                .atoms()
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| Error::Invalid(format!("atom `{a}` does not occur in the formula")))?;
            Ok(mask | self.table.bit(j))
        })
    }

    pub fn determines(&self, mask: usize) -> bool {
        self.table.determines(mask, &self.pins)
    }

    /// Minimal determining sets, smallest first, then in atom order.
    pub fn minimal_sets(&self) -> Result<Vec<Vec<Atom>>> {
        let k = self.table.width();
        if k > MAX_ENUMERATED_ATOMS {
            return Err(Error::TooManyAtoms {
                count: k,
                max: MAX_ENUMERATED_ATOMS,
            });
        }
        let mut minimal: Vec<Vec<usize>> = (0..1usize << k)
            .filter(|&mask| self.determines(mask))
            .filter(|&mask| {
                self.table
                    .members(mask)
                    .into_iter()
                    .all(|j| !self.determines(mask & !self.table.bit(j)))
            })
            .map(|mask| self.table.members(mask))
            .collect();
        minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(minimal
            .into_iter()
            .map(|set| set.into_iter().map(|j| self.atoms()[j].clone()).collect())
            .collect())
    }

    /// Atoms left out by some determining set. By monotonicity, exactly the
    /// atoms whose complement is determining.
    pub fn redundant(&self) -> Vec<Atom> {
        let full = self.table.full_mask();
        (0..self.table.width())
            .filter(|&j| self.determines(full & !self.table.bit(j)))
            .map(|j| self.atoms()[j].clone())
            .collect()
    }

    pub fn is_relevant(&self) -> bool {
        self.table
            .first_determining_co_singleton(&self.pins)
            .is_none()
    }
}

pub fn truth_table(f: &Formula) -> Result<Vec<(Row, bool)>> {
    if !f.is_quantifier_free() {
        return Err(Error::Invalid(format!("`{f}` is not quantifier-free")));
    }
    let t = DeterminationTable::new(f)?;
    let k = t.width();
    Ok((0..1usize << k)
        .map(|row| {
            let bits = (0..k).map(|j| row & t.bit(j) != 0).collect();
            (bits, t.value(row))
        })
        .collect())
}

pub fn is_truth_determining(f: &Formula, set: &[Atom], stuck: &StuckMap) -> Result<bool> {
    let a = PropAnalysis::new(f, stuck)?;
    Ok(a.determines(a.mask_of(set)?))
}

pub fn truth_determining_sets(f: &Formula, stuck: &StuckMap) -> Result<Vec<Vec<Atom>>> {
    PropAnalysis::new(f, stuck)?.minimal_sets()
}

pub fn t_redundant_atoms(f: &Formula, stuck: &StuckMap) -> Result<Vec<Atom>> {
    Ok(PropAnalysis::new(f, stuck)?.redundant())
}

pub fn is_t_relevant_prop(f: &Formula, stuck: &StuckMap) -> Result<bool> {
    Ok(PropAnalysis::new(f, stuck)?.is_relevant())
}

/// Parses `P=0,Q=1` into a stuck map over 0-ary atoms.
pub fn parse_stuck(text: &str) -> Result<StuckMap> {
    let mut out = StuckMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected NAME=0|1, found `{item}`")))?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            other => return Err(Error::Invalid(format!("stuck value must be 0 or 1, found `{other}`"))),
        };
        out.insert(Atom::prop(name.trim()), value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_formula;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::prop(*n)).collect()
    }

    fn stuck(text: &str) -> StuckMap {
        parse_stuck(text).unwrap()
    }

    #[test]
    fn contradiction_antecedent_table_is_all_true() {
        let t = truth_table(&f("(J & ~J) -> S")).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|(_, v)| *v));
    }

    #[test]
    fn implication_table_rows() {
        let t = truth_table(&f("J -> S")).unwrap();
        let expected = vec![
            (vec![false, false], true),
            (vec![false, true], true),
            (vec![true, false], false),
            (vec![true, true], true),
        ];
        assert_eq!(t, expected);
    }

    #[test]
    fn conjunction_has_one_true_row() {
        let t = truth_table(&f("P & Q")).unwrap();
        assert_eq!(t.iter().filter(|(_, v)| *v).count(), 1);
    }

    #[test]
    fn excluded_middle_is_determined_by_p() {
        let g = f("P | ~P | Q");
        assert!(is_truth_determining(&g, &atoms(&["P"]), &StuckMap::new()).unwrap());
    }

    #[test]
    fn stuck_at_zero_makes_p_determining() {
        let g = f("~P | Q");
        assert!(is_truth_determining(&g, &atoms(&["P"]), &stuck("P=0")).unwrap());
        assert!(!is_truth_determining(&g, &atoms(&["P"]), &stuck("P=1")).unwrap());
        assert!(!is_truth_determining(&g, &atoms(&["Q"]), &stuck("P=1")).unwrap());
        assert_eq!(truth_determining_sets(&g, &stuck("P=0")).unwrap(), vec![atoms(&["P"])]);
        assert_eq!(t_redundant_atoms(&g, &stuck("P=0")).unwrap(), atoms(&["Q"]));
        assert!(t_redundant_atoms(&g, &stuck("P=1")).unwrap().is_empty());
    }

    #[test]
    fn tautology_is_determined_by_nothing() {
        let g = f("P -> (Q -> P)");
        assert_eq!(truth_determining_sets(&g, &StuckMap::new()).unwrap(), vec![vec![]]);
        assert_eq!(t_redundant_atoms(&g, &StuckMap::new()).unwrap(), atoms(&["P", "Q"]));
        assert!(!is_t_relevant_prop(&g, &StuckMap::new()).unwrap());
        assert!(is_truth_determining(&g, &atoms(&["P"]), &StuckMap::new()).unwrap());
    }

    #[test]
    fn conjunction_is_relevant() {
        let g = f("P & Q");
        assert_eq!(
            truth_determining_sets(&g, &StuckMap::new()).unwrap(),
            vec![atoms(&["P", "Q"])]
        );
        assert!(t_redundant_atoms(&g, &StuckMap::new()).unwrap().is_empty());
        assert!(is_t_relevant_prop(&g, &StuckMap::new()).unwrap());
        assert!(!is_t_relevant_prop(&f("P | ~P | Q"), &StuckMap::new()).unwrap());
    }

    #[test]
    fn single_atom_formula_relevant_iff_non_constant() {
        assert!(is_t_relevant_prop(&f("P"), &StuckMap::new()).unwrap());
        assert!(!is_t_relevant_prop(&f("P | ~P"), &StuckMap::new()).unwrap());
    }

    #[test]
    fn rejects_foreign_atoms() {
        let g = f("P & Q");
        assert!(is_truth_determining(&g, &atoms(&["R"]), &StuckMap::new()).is_err());
        assert!(is_t_relevant_prop(&g, &stuck("R=1")).is_err());
        assert!(is_t_relevant_prop(&f("(x)F(x)"), &StuckMap::new()).is_err());
    }

    #[test]
    fn atom_limit() {
        let big = (0..21)
            .map(|i| format!("P{i}"))
            .collect::<Vec<_>>()
            .join(" & ");
        assert!(matches!(
            truth_table(&f(&big)),
            Err(Error::TooManyAtoms { count: 21, .. })
        ));
    }

    #[test]
    fn parse_stuck_errors() {
        assert!(parse_stuck("P=2").is_err());
        assert!(parse_stuck("P").is_err());
        assert!(parse_stuck("").unwrap().is_empty());
    }
}
