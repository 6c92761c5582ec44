//! Classical two-valued evaluation over finite interpretations.
//!
//! Two independent routes: a direct recursive evaluator with an
//! environment, and a brute-force route that expands every quantifier into
//! an explicit conjunction or disjunction over the universe and then reads
//! the ground formula off its truth table row.

use std::collections::BTreeMap;

use crate::ast::{Formula, Term};
use crate::error::{Error, Result};
use crate::model::Interpretation;
use crate::prop_relevance::Expr;

/// Outer instantiations: variable name to constant name.
pub type Environment = BTreeMap<String, String>;

pub fn eval_classical(f: &Formula, m: &Interpretation, env: &Environment) -> Result<bool> {
    let mut bound: Vec<(String, usize)> = Vec::new();
    for (var, c) in env {
        let idx = m
            .element(c)
            .ok_or_else(|| Error::UnknownConstant(c.clone()))?;
        bound.push((var.clone(), idx));
    }
    eval(f, m, &mut bound)
}

fn eval(f: &Formula, m: &Interpretation, bound: &mut Vec<(String, usize)>) -> Result<bool> {
    Ok(match f {
        Formula::Atom(a) => {
            match m.arity(&a.pred) {
                None => return Err(Error::UndeclaredPredicate(a.pred.clone())),
                Some(declared) if declared != a.arity() => {
                    return Err(Error::ArityMismatch {
                        pred: a.pred.clone(),
                        declared,
                        used: a.arity(),
                    })
                }
                Some(_) => {}
            }
            let mut tuple = Vec::with_capacity(a.arity());
            for t in &a.args {
                let idx = match t {
                    Term::Var(v) => bound
                        .iter()
                        .rev()
                        .find(|(name, _)| name == v)
                        .map(|(_, i)| *i)
                        .ok_or_else(|| Error::FreeVariable(v.clone()))?,
                    Term::Const(c) => m
                        .element(c)
                        .ok_or_else(|| Error::UnknownConstant(c.clone()))?,
                };
                tuple.push(idx);
            }
            m.holds(&a.pred, &tuple)
        }
        Formula::Not(a) => !eval(a, m, bound)?,
        Formula::And(a, b) => eval(a, m, bound)? & eval(b, m, bound)?,
        Formula::Or(a, b) => eval(a, m, bound)? | eval(b, m, bound)?,
        Formula::Implies(a, b) => !eval(a, m, bound)? | eval(b, m, bound)?,
        Formula::Iff(a, b) => eval(a, m, bound)? == eval(b, m, bound)?,
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            let universal = matches!(f, Formula::ForAll(..));
            let mut acc = universal;
            for i in 0..m.size() {
                bound.push((v.clone(), i));
                let r = eval(body, m, bound);
                bound.pop();
                if universal {
                    acc &= r?;
                } else {
                    acc |= r?;
                }
            }
            acc
        }
    })
}

/// Rewrites every quantifier as a conjunction or disjunction of instances.
pub fn expand_quantifiers(f: &Formula, m: &Interpretation) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(a) => Formula::not(expand_quantifiers(a, m)),
        Formula::And(a, b) => Formula::and(expand_quantifiers(a, m), expand_quantifiers(b, m)),
        Formula::Or(a, b) => Formula::or(expand_quantifiers(a, m), expand_quantifiers(b, m)),
        Formula::Implies(a, b) => {
            Formula::implies(expand_quantifiers(a, m), expand_quantifiers(b, m))
        }
        Formula::Iff(a, b) => Formula::iff(expand_quantifiers(a, m), expand_quantifiers(b, m)),
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            let join = if matches!(f, Formula::ForAll(..)) {
                Formula::and
            } else {
                Formula::or
            };
            m.universe()
                .iter()
                .map(|c| expand_quantifiers(&body.substitute(v, c), m))
                .reduce(join)
                .expect("universe is nonempty")
        }
    }
}

pub fn eval_classical_bruteforce(f: &Formula, m: &Interpretation) -> Result<bool> {
    let ground = expand_quantifiers(f, m);
    let atoms = ground.atoms();
    let row = atoms
        .iter()
        .map(|a| m.predicate_truth(a))
        .collect::<Result<Vec<bool>>>()?;
    let expr = Expr::compile(&ground, &atoms)?;
    Ok(expr.eval(&|j| row[j]))
}
