#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use truthrel::{Atom, Formula, Term};

const PREDS: &[(&str, usize)] = &[("P", 0), ("Q", 0), ("F", 1), ("G", 2), ("H", 3)];
const NAMES: &[&str] = &["x", "y", "z", "a", "b"];
const VARS: &[&str] = &["x", "y", "z"];

fn atom() -> impl Strategy<Value = Formula> {
    (0..PREDS.len(), prop::collection::vec(0..NAMES.len(), 3)).prop_map(|(p, names)| {
        let (pred, arity) = PREDS[p];
        let args = names[..arity].iter().map(|&i| Term::constant(NAMES[i])).collect();
        Formula::Atom(Atom::new(pred, args))
    })
}

/// Random formulas of depth at most `depth`. Terms whose name is bound by an
/// enclosing quantifier become variables, the rest constants, which is how
/// the parser reads them.
pub fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    atom()
        .prop_recursive(depth, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
                (0..VARS.len(), inner.clone()).prop_map(|(v, f)| Formula::forall(VARS[v], f)),
                (0..VARS.len(), inner).prop_map(|(v, f)| Formula::exists(VARS[v], f)),
            ]
        })
        .prop_map(|f| bind_terms(&f, &BTreeSet::new()))
}

fn bind_terms(f: &Formula, bound: &BTreeSet<String>) -> Formula {
    let rec = |g: &Formula| Box::new(bind_terms(g, bound));
    match f {
        Formula::Atom(a) => Formula::Atom(Atom::new(
            a.pred.clone(),
            a.args
                .iter()
                .map(|t| {
                    if bound.contains(t.name()) {
                        Term::var(t.name())
                    } else {
                        Term::constant(t.name())
                    }
                })
                .collect(),
        )),
        Formula::Not(g) => Formula::Not(rec(g)),
        Formula::And(l, r) => Formula::And(rec(l), rec(r)),
        Formula::Or(l, r) => Formula::Or(rec(l), rec(r)),
        Formula::Implies(l, r) => Formula::Implies(rec(l), rec(r)),
        Formula::Iff(l, r) => Formula::Iff(rec(l), rec(r)),
        Formula::ForAll(v, g) | Formula::Exists(v, g) => {
            let mut inner = bound.clone();
            inner.insert(v.clone());
            let body = Box::new(bind_terms(g, &inner));
            match f {
                Formula::ForAll(..) => Formula::ForAll(v.clone(), body),
                _ => Formula::Exists(v.clone(), body),
            }
        }
    }
}

pub fn depth(f: &Formula) -> u32 {
    match f {
        Formula::Atom(_) => 0,
        Formula::Not(g) | Formula::ForAll(_, g) | Formula::Exists(_, g) => 1 + depth(g),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            1 + depth(l).max(depth(r))
        }
    }
}
