//! Relevance and truth for sentences with a single quantified variable.
//!
//! Atoms of a one-variable matrix are either views (they mention the
//! variable and behave as one-place predicates of it) or ground atoms. Under
//! an interpretation, a view in the candidate set that is empty is pinned to
//! 0 and one that is universal is pinned to 1; a mixed view stays free since
//! it could still turn out empty or universal. Ground atoms in the set are
//! pinned to their actual value. Everything outside the set is free.

use std::fmt;

use crate::ast::{Atom, Formula, PrenexSentence};
use crate::classical;
use crate::error::{Error, Result};
use crate::model::Interpretation;
use crate::poly::{RelevanceMode, Verdict};
use crate::prop_relevance::DeterminationTable;

/// An atom read as a one-place predicate of `var`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ViewAtom {
    pub atom: Atom,
    pub var: String,
}

impl ViewAtom {
    pub fn status(&self, m: &Interpretation) -> Result<Status> {
        view_status(m, self)
    }
}

impl fmt::Display for ViewAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.atom.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Empty,
    Universal,
    Mixed,
}

impl Status {
    fn pin(self) -> Option<bool> {
        match self {
            Status::Empty => Some(false),
            Status::Universal => Some(true),
            Status::Mixed => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Views {
    pub views: Vec<ViewAtom>,
    pub grounds: Vec<Atom>,
}

pub fn extract_views(matrix: &Formula, var: &str) -> Result<Views> {
    if !matrix.is_quantifier_free() {
        return Err(Error::Invalid(format!("`{matrix}` is not quantifier-free")));
    }
    let mut views = Vec::new();
    let mut grounds = Vec::new();
    for atom in matrix.atoms() {
        if let Some(other) = atom.args.iter().find(|t| t.is_var() && t.name() != var) {
            return Err(Error::ForeignVariable {
                atom: atom.to_string(),
                expected: var.to_string(),
                found: other.name().to_string(),
            });
        }
        if atom.mentions_var(var) {
            views.push(ViewAtom {
                atom,
                var: var.to_string(),
            });
        } else {
            grounds.push(atom);
        }
    }
    Ok(Views { views, grounds })
}

pub fn view_status(m: &Interpretation, view: &ViewAtom) -> Result<Status> {
    let mut some = false;
    let mut all = true;
    for element in m.universe() {
        if m.predicate_truth(&view.atom.substitute(&view.var, element))? {
            some = true;
        } else {
            all = false;
        }
    }
    Ok(match (some, all) {
        (false, _) => Status::Empty,
        (true, true) => Status::Universal,
        (true, false) => Status::Mixed,
    })
}

/// Determination structure of a one-variable matrix, with pins computed from
/// an interpretation or, without one, no pins at all.
#[derive(Debug, Clone)]
pub struct MonadicAnalysis {
    var: String,
    table: DeterminationTable,
    pins: Vec<Option<bool>>,
}

impl MonadicAnalysis {
    pub fn under(matrix: &Formula, var: &str, m: &Interpretation) -> Result<Self> {
        extract_views(matrix, var)?;
        let table = DeterminationTable::new(matrix)?;
        let pins = table
            .atoms()
            .iter()
            .map(|atom| {
                if atom.mentions_var(var) {
                    let view = ViewAtom {
                        atom: atom.clone(),
                        var: var.to_string(),
                    };
                    Ok(view_status(m, &view)?.pin())
                } else {
                    m.predicate_truth(atom).map(Some)
                }
            })
            .collect::<Result<_>>()?;
        Ok(MonadicAnalysis {
            var: var.to_string(),
            table,
            pins,
        })
    }

    pub fn any_interpretation(matrix: &Formula, var: &str) -> Result<Self> {
        extract_views(matrix, var)?;
        let table = DeterminationTable::new(matrix)?;
        let pins = vec![None; table.width()];
        Ok(MonadicAnalysis {
            var: var.to_string(),
            table,
            pins,
        })
    }

    pub fn new(matrix: &Formula, var: &str, m: &Interpretation, mode: RelevanceMode) -> Result<Self> {
        match mode {
            RelevanceMode::Interp => Self::under(matrix, var, m),
            RelevanceMode::Any => Self::any_interpretation(matrix, var),
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn atoms(&self) -> &[Atom] {
        self.table.atoms()
    }

    pub fn determines(&self, set: &[Atom]) -> Result<bool> {
        let mut mask = 0;
        for a in set {
            let j = self
                .atoms()
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| Error::Invalid(format!("atom `{a}` does not occur in the matrix")))?;
            mask |= self.table.bit(j);
        }
        Ok(self.table.determines(mask, &self.pins))
    }

    /// The first proper subset (a co-singleton) that determines the value.
    /// None means the sentence is t-relevant.
    pub fn determining_proper_subset(&self) -> Option<Vec<Atom>> {
        self.table
            .first_determining_co_singleton(&self.pins)
            .map(|skip| {
                self.atoms()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, a)| a.clone())
                    .collect()
            })
    }

    pub fn is_relevant(&self) -> bool {
        self.determining_proper_subset().is_none()
    }
}

/// Whether the atom set `set` determines the quantified value of a
/// one-variable matrix under `m`. The check is the same for both flavors.
pub fn is_td_under_interpretation(
    matrix: &Formula,
    var: &str,
    set: &[Atom],
    m: &Interpretation,
) -> Result<bool> {
    MonadicAnalysis::under(matrix, var, m)?.determines(set)
}

pub fn is_t_relevant_1var(matrix: &Formula, var: &str, m: &Interpretation) -> Result<bool> {
    Ok(MonadicAnalysis::under(matrix, var, m)?.is_relevant())
}

/// With no interpretation nothing is pinned, so only a non-constant matrix is relevant.
pub fn is_t_relevant_any(matrix: &Formula, var: &str) -> Result<bool> {
    extract_views(matrix, var)?;
    Ok(!DeterminationTable::new(matrix)?.is_constant())
}

fn single_quantifier(s: &PrenexSentence) -> Result<&str> {
    match s.prefix() {
        [q] => Ok(&q.var),
        p => Err(Error::Invalid(format!(
            "expected exactly one quantifier, found {}",
            p.len()
        ))),
    }
}

fn monadic_truth(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<bool> {
    let var = single_quantifier(s)?;
    let relevant = MonadicAnalysis::new(s.matrix(), var, m, mode)?.is_relevant();
    Ok(relevant && classical::eval_classical(&s.to_formula(), m, &Default::default())?)
}

/// Truth for one-quantifier sentences: satisfied and t-relevant. False when
/// the negation is true.
pub fn evaluate_monadic(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<Verdict> {
    m.check_formula(s.matrix())?;
    if monadic_truth(s, m, mode)? {
        Ok(Verdict::True)
    } else if monadic_truth(&s.negate(), m, mode)? {
        Ok(Verdict::False)
    } else {
        Ok(Verdict::Gap)
    }
}
