//! Formula syntax: terms, atoms, formulas and prenex sentences.
//!
//! Identifiers bound by an enclosing quantifier parse as [`Term::Var`]; every
//! other lowercase identifier is a [`Term::Const`] naming a universe element.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub use parse::{parse_formula, parse_prenex};
pub use print::print_formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// A predicate applied to terms. Propositional variables are 0-ary atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Atom::new(name, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    pub fn mentions_var(&self, var: &str) -> bool {
        self.args.iter().any(|t| matches!(t, Term::Var(v) if v == var))
    }

    pub fn substitute(&self, var: &str, constant: &str) -> Atom {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) if v == var => Term::Const(constant.to_string()),
                other => other.clone(),
            })
            .collect();
        Atom {
            pred: self.pred.clone(),
            args,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(t.name())?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(pred, args))
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Atom(Atom::prop(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Self {
        Formula::Not(Box::new(inner))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::ForAll(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn quantified(flavor: Flavor, var: impl Into<String>, body: Formula) -> Self {
        match flavor {
            Flavor::Universal => Formula::forall(var, body),
            Flavor::Existential => Formula::exists(var, body),
        }
    }

    /// Negation with a top-level double negation removed.
    pub fn negated(&self) -> Formula {
        match self {
            Formula::Not(inner) => (**inner).clone(),
            other => Formula::not(other.clone()),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::ForAll(..) | Formula::Exists(..) => false,
        }
    }

    /// Distinct atoms in first-occurrence order (left to right).
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = Vec::new();
        self.visit_atoms(&mut |a| {
            if !out.contains(a) {
                out.push(a.clone());
            }
        });
        out
    }

    pub fn visit_atoms<'a>(&'a self, visit: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => visit(a),
            Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => a.visit_atoms(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_atoms(visit);
                b.visit_atoms(visit);
            }
        }
    }

    /// Predicate symbols with their arity; fails if one symbol has two arities.
    pub fn signature(&self) -> Result<BTreeMap<String, usize>> {
        let mut sig = BTreeMap::new();
        let mut conflict = None;
        self.visit_atoms(&mut |a| {
            if conflict.is_some() {
                return;
            }
            match sig.get(&a.pred) {
                Some(&arity) if arity != a.arity() => {
                    conflict = Some(Error::ArityConflict {
                        pred: a.pred.clone(),
                        first: arity,
                        second: a.arity(),
                    })
                }
                Some(_) => {}
                None => {
                    sig.insert(a.pred.clone(), a.arity());
                }
            }
        });
        match conflict {
            Some(e) => Err(e),
            None => Ok(sig),
        }
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            for t in &a.args {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        });
        out
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom(a) => {
                    for t in &a.args {
                        if let Term::Var(v) = t {
                            if !bound.contains(v) {
                                out.insert(v.clone());
                            }
                        }
                    }
                }
                Formula::Not(a) => go(a, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::ForAll(v, a) | Formula::Exists(v, a) => {
                    bound.push(v.clone());
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Replaces every free occurrence of `var` by the constant `constant`.
    pub fn substitute(&self, var: &str, constant: &str) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(a.substitute(var, constant)),
            Formula::Not(a) => Formula::not(a.substitute(var, constant)),
            Formula::And(a, b) => Formula::and(a.substitute(var, constant), b.substitute(var, constant)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, constant), b.substitute(var, constant)),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute(var, constant), b.substitute(var, constant))
            }
            Formula::Iff(a, b) => Formula::iff(a.substitute(var, constant), b.substitute(var, constant)),
            Formula::ForAll(v, _) | Formula::Exists(v, _) if v == var => self.clone(),
            Formula::ForAll(v, a) => Formula::forall(v.clone(), a.substitute(var, constant)),
            Formula::Exists(v, a) => Formula::exists(v.clone(), a.substitute(var, constant)),
        }
    }

    /// Applies several substitutions; variables are distinct so order is irrelevant.
    pub fn instantiate<'a, I>(&self, bindings: I) -> Formula
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        bindings
            .into_iter()
            .fold(self.clone(), |f, (v, c)| f.substitute(v, c))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

pub fn substitute(f: &Formula, var: &str, constant: &str) -> Formula {
    f.substitute(var, constant)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Universal,
    Existential,
}

impl Flavor {
    pub fn dual(self) -> Flavor {
        match self {
            Flavor::Universal => Flavor::Existential,
            Flavor::Existential => Flavor::Universal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quantifier {
    pub flavor: Flavor,
    pub var: String,
}

impl Quantifier {
    pub fn universal(var: impl Into<String>) -> Self {
        Quantifier {
            flavor: Flavor::Universal,
            var: var.into(),
        }
    }

    pub fn existential(var: impl Into<String>) -> Self {
        Quantifier {
            flavor: Flavor::Existential,
            var: var.into(),
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::Universal => write!(f, "({})", self.var),
            Flavor::Existential => write!(f, "(E{})", self.var),
        }
    }
}

/// A closed sentence split into its quantifier prefix and quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrenexSentence {
    prefix: Vec<Quantifier>,
    matrix: Formula,
}

impl PrenexSentence {
    pub fn new(prefix: Vec<Quantifier>, matrix: Formula) -> Result<Self> {
        if !matrix.is_quantifier_free() {
            return Err(Error::NotPrenex(format!(
                "quantifier below a connective in `{matrix}`"
            )));
        }
        let mut seen = BTreeSet::new();
        for q in &prefix {
            if !seen.insert(q.var.as_str()) {
                return Err(Error::NotPrenex(format!("variable `{}` quantified twice", q.var)));
            }
        }
        if let Some(v) = matrix.free_vars().into_iter().find(|v| !seen.contains(v.as_str())) {
            return Err(Error::FreeVariable(v));
        }
        Ok(PrenexSentence { prefix, matrix })
    }

    pub fn prefix(&self) -> &[Quantifier] {
        &self.prefix
    }

    pub fn matrix(&self) -> &Formula {
        &self.matrix
    }

    pub fn is_all(&self, flavor: Flavor) -> bool {
        self.prefix.iter().all(|q| q.flavor == flavor)
    }

    pub fn to_formula(&self) -> Formula {
        self.prefix
            .iter()
            .rev()
            .fold(self.matrix.clone(), |body, q| {
                Formula::quantified(q.flavor, q.var.clone(), body)
            })
    }

    /// Flips every quantifier and negates the matrix.
    pub fn negate(&self) -> PrenexSentence {
        PrenexSentence {
            prefix: self
                .prefix
                .iter()
                .map(|q| Quantifier {
                    flavor: q.flavor.dual(),
                    var: q.var.clone(),
                })
                .collect(),
            matrix: self.matrix.negated(),
        }
    }

    /// Same sentence with a reordered prefix. `order` is a permutation of indices.
    pub fn with_prefix_order(&self, order: &[usize]) -> PrenexSentence {
        PrenexSentence {
            prefix: order.iter().map(|&i| self.prefix[i].clone()).collect(),
            matrix: self.matrix.clone(),
        }
    }
}

impl fmt::Display for PrenexSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(&self.to_formula()))
    }
}

/// Splits a closed formula of prenex shape into prefix and matrix, verbatim.
pub fn to_prenex_sentence(f: &Formula) -> Result<PrenexSentence> {
    let mut prefix = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::ForAll(v, body) => {
                prefix.push(Quantifier::universal(v.clone()));
                cur = body;
            }
            Formula::Exists(v, body) => {
                prefix.push(Quantifier::existential(v.clone()));
                cur = body;
            }
            _ => break,
        }
    }
    if !cur.is_quantifier_free() {
        return Err(Error::NotPrenex(format!(
            "quantifier below a connective in `{cur}`"
        )));
    }
    PrenexSentence::new(prefix, cur.clone())
}

pub fn prenex_negate(s: &PrenexSentence) -> PrenexSentence {
    s.negate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Formula {
        Formula::prop(name)
    }

    fn fx(pred: &str, args: &[&str]) -> Formula {
        Formula::atom(pred, args.iter().map(|a| Term::var(*a)).collect())
    }

    #[test]
    fn substitute_replaces_free_occurrences_only() {
        let f = fx("F", &["x", "y"]);
        let expected = Formula::atom("F", vec![Term::constant("a"), Term::var("y")]);
        assert_eq!(substitute(&f, "x", "a"), expected);

        let bound = Formula::forall("x", fx("F", &["x"]));
        assert_eq!(substitute(&bound, "x", "a"), bound);

        let imp = Formula::implies(fx("J", &["x"]), fx("S", &["x"]));
        assert_eq!(substitute(&imp, "x", "c").to_string(), "J(c) -> S(c)");
    }

    #[test]
    fn prenex_split_is_verbatim() {
        let f = parse_formula("(x)(Ey)(F(x,y) & G(x,y))").unwrap();
        let s = to_prenex_sentence(&f).unwrap();
        assert_eq!(
            s.prefix(),
            &[Quantifier::universal("x"), Quantifier::existential("y")]
        );
        assert_eq!(s.matrix().to_string(), "F(x,y) & G(x,y)");
        assert_eq!(s.to_formula(), f);
    }

    #[test]
    fn prenex_rejects_nested_quantifiers() {
        for text in ["~(x)F(x)", "(x)F(x) & (y)G(y)", "(x)(F(x) -> (Ey)G(y))"] {
            let f = parse_formula(text).unwrap();
            assert!(
                matches!(to_prenex_sentence(&f), Err(Error::NotPrenex(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn prenex_rejects_open_formulas() {
        let f = Formula::forall("x", fx("F", &["x", "y"]));
        assert_eq!(to_prenex_sentence(&f), Err(Error::FreeVariable("y".into())));
        let dup = Formula::forall("x", Formula::exists("x", fx("F", &["x"])));
        assert!(matches!(to_prenex_sentence(&dup), Err(Error::NotPrenex(_))));
    }

    #[test]
    fn negation_dualizes_prefix() {
        let s = parse_prenex("(x)(y)(F(x,y) -> ~G(x,y))").unwrap();
        let n = prenex_negate(&s);
        assert_eq!(n.to_string(), "(Ex)(Ey)~(F(x,y) -> ~G(x,y))");
        assert_eq!(prenex_negate(&n), s);

        let e = parse_prenex("(Ex)(F(x) & G(x))").unwrap();
        assert_eq!(prenex_negate(&e).to_string(), "(x)~(F(x) & G(x))");

        let neg_matrix = parse_prenex("(x)~F(x)").unwrap();
        assert_eq!(prenex_negate(&neg_matrix).to_string(), "(Ex)F(x)");
        assert_eq!(prenex_negate(&prenex_negate(&neg_matrix)), neg_matrix);
    }

    #[test]
    fn atoms_are_distinct_in_first_occurrence_order() {
        let f = Formula::or(Formula::or(p("P"), Formula::not(p("P"))), p("Q"));
        assert_eq!(f.atoms(), vec![Atom::prop("P"), Atom::prop("Q")]);
    }

    #[test]
    fn signature_detects_arity_conflicts() {
        let f = Formula::and(fx("F", &["x"]), fx("F", &["x", "y"]));
        assert!(matches!(f.signature(), Err(Error::ArityConflict { .. })));
    }
}
