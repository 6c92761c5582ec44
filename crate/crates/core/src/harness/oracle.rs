//! Definition-level brute force, kept apart from the main evaluator.
//!
//! Nothing here shares the determination kernel, the pin logic, the witness
//! search or the memo table of the main path. Determination enumerates every
//! assignment explicitly, relevance tries every proper subset, and monadic
//! determination ranges over whole worlds (nonempty sets of inhabited rows)
//! rather than single rows. Exponential on purpose; only for small inputs.

use std::collections::HashMap;

use crate::ast::{Atom, Flavor, Formula, PrenexSentence, Quantifier};
use crate::classical::eval_classical_bruteforce;
use crate::error::{Error, Result};
use crate::model::Interpretation;
use crate::mono::Status;
use crate::poly::{Environment, RelevanceMode, Verdict};
use crate::prop_relevance::StuckMap;

/// Largest number of atoms a propositional check will enumerate.
pub const MAX_PROP_ATOMS: usize = 10;
/// Largest number of views a monadic check will enumerate worlds for.
pub const MAX_VIEWS: usize = 4;

type Assignment = HashMap<Atom, bool>;

/// Value of a quantifier-free formula under an explicit atom assignment.
pub fn value(f: &Formula, a: &Assignment) -> Result<bool> {
    Ok(match f {
        Formula::Atom(atom) => *a
            .get(atom)
            .ok_or_else(|| Error::Invalid(format!("no value for `{atom}`")))?,
        Formula::Not(x) => !value(x, a)?,
        Formula::And(x, y) => value(x, a)? && value(y, a)?,
        Formula::Or(x, y) => value(x, a)? || value(y, a)?,
        Formula::Implies(x, y) => !value(x, a)? || value(y, a)?,
        Formula::Iff(x, y) => value(x, a)? == value(y, a)?,
        Formula::ForAll(..) | Formula::Exists(..) => {
            return Err(Error::Invalid(format!("`{f}` is not quantifier-free")))
        }
    })
}

/// Every assignment of the listed atoms, extending `base`.
fn assignments(atoms: &[Atom], base: &Assignment) -> Vec<Assignment> {
    let mut out = vec![base.clone()];
    for atom in atoms {
        out = out
            .into_iter()
            .flat_map(|a| {
                [false, true].map(|v| {
                    let mut a = a.clone();
                    a.insert(atom.clone(), v);
                    a
                })
            })
            .collect();
    }
    out
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..1usize << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn distinct_atoms(f: &Formula) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    f.visit_atoms(&mut |a| {
        if !out.contains(a) {
            out.push(a.clone());
        }
    });
    out
}

/// For every assignment of `set` that agrees with the stuck values of its
/// members, the value is the same whatever the other atoms do.
pub fn prop_determines(f: &Formula, set: &[Atom], stuck: &StuckMap) -> Result<bool> {
    let atoms = distinct_atoms(f);
    if atoms.len() > MAX_PROP_ATOMS {
        return Err(Error::TooManyAtoms {
            count: atoms.len(),
            max: MAX_PROP_ATOMS,
        });
    }
    let rest: Vec<Atom> = atoms.iter().filter(|a| !set.contains(a)).cloned().collect();
    for inside in assignments(set, &Assignment::new()) {
        if set.iter().any(|a| stuck.get(a).is_some_and(|&v| inside[a] != v)) {
            continue;
        }
        let mut seen = None;
        for full in assignments(&rest, &inside) {
            let v = value(f, &full)?;
            if *seen.get_or_insert(v) != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No proper subset of the atoms determines the value.
pub fn prop_relevant(f: &Formula, stuck: &StuckMap) -> Result<bool> {
    let atoms = distinct_atoms(f);
    for s in subsets(&atoms) {
        if s.len() < atoms.len() && prop_determines(f, &s, stuck)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn status(m: &Interpretation, atom: &Atom, var: &str) -> Result<Status> {
    let mut hits = 0;
    for c in m.universe() {
        if m.predicate_truth(&atom.substitute(var, c))? {
            hits += 1;
        }
    }
    Ok(if hits == 0 {
        Status::Empty
    } else if hits == m.size() {
        Status::Universal
    } else {
        Status::Mixed
    })
}

/// Whether `set` fixes the value of `Q var. matrix`.
///
/// A world is a nonempty set of rows over the views (the kinds of object
/// present) together with values for the ground atoms. Members of `set` keep
/// what the interpretation says about them: an empty view is false on every
/// present row, a universal one true, a mixed one unconstrained, a ground
/// atom its actual value. Without an interpretation nothing is kept.
pub fn mono_determines(
    flavor: Flavor,
    matrix: &Formula,
    var: &str,
    set: &[Atom],
    m: Option<&Interpretation>,
) -> Result<bool> {
    let atoms = distinct_atoms(matrix);
    let (views, grounds): (Vec<Atom>, Vec<Atom>) =
        atoms.into_iter().partition(|a| a.mentions_var(var));
    if let Some(a) = views
        .iter()
        .chain(&grounds)
        .find(|a| a.args.iter().any(|t| t.is_var() && t.name() != var))
    {
        return Err(Error::Invalid(format!("`{a}` mentions a second variable")));
    }
    if views.len() > MAX_VIEWS {
        return Err(Error::TooManyAtoms {
            count: views.len(),
            max: MAX_VIEWS,
        });
    }

    let mut view_pin = HashMap::new();
    let mut ground_pin = Assignment::new();
    if let Some(m) = m {
        for a in set {
            if views.contains(a) {
                match status(m, a, var)? {
                    Status::Empty => {
                        view_pin.insert(a.clone(), false);
                    }
                    Status::Universal => {
                        view_pin.insert(a.clone(), true);
                    }
                    Status::Mixed => {}
                }
            } else if grounds.contains(a) {
                ground_pin.insert(a.clone(), m.predicate_truth(a)?);
            }
        }
    }

    let rows: Vec<Assignment> = assignments(&views, &Assignment::new())
        .into_iter()
        .filter(|r| view_pin.iter().all(|(a, v)| r[a] == *v))
        .collect();
    let free_grounds: Vec<Atom> = grounds
        .iter()
        .filter(|g| !ground_pin.contains_key(*g))
        .cloned()
        .collect();

    let mut seen = None;
    for g in assignments(&free_grounds, &ground_pin) {
        let row_values = rows
            .iter()
            .map(|r| {
                let mut full = r.clone();
                full.extend(g.iter().map(|(k, v)| (k.clone(), *v)));
                value(matrix, &full)
            })
            .collect::<Result<Vec<bool>>>()?;
        for world in 1..1usize << rows.len() {
            let mut present = (0..rows.len()).filter(|i| world >> i & 1 == 1);
            let v = match flavor {
                Flavor::Universal => present.all(|i| row_values[i]),
                Flavor::Existential => present.any(|i| row_values[i]),
            };
            if *seen.get_or_insert(v) != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No proper subset of the matrix atoms determines the value.
pub fn mono_relevant(
    flavor: Flavor,
    matrix: &Formula,
    var: &str,
    m: Option<&Interpretation>,
) -> Result<bool> {
    let atoms = distinct_atoms(matrix);
    for s in subsets(&atoms) {
        if s.len() < atoms.len() && mono_determines(flavor, matrix, var, &s, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn instantiate(matrix: &Formula, env: &Environment) -> Formula {
    env.iter()
        .fold(matrix.clone(), |f, (v, c)| f.substitute(v, c))
}

fn bind(env: &Environment, var: &str, c: &str) -> Environment {
    let mut env = env.clone();
    env.insert(var.to_string(), c.to_string());
    env
}

fn restrict(m: &Interpretation, mode: RelevanceMode) -> Option<&Interpretation> {
    match mode {
        RelevanceMode::Interp => Some(m),
        RelevanceMode::Any => None,
    }
}

/// Relevance of `prefix. matrix` with the variables of `env` already fixed.
pub fn relevant(
    prefix: &[Quantifier],
    matrix: &Formula,
    env: &Environment,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<bool> {
    let all = |f: Flavor| prefix.iter().all(|q| q.flavor == f);
    match prefix {
        [] => Err(Error::Invalid("relevance needs at least one quantifier".into())),
        [q] => mono_relevant(q.flavor, &instantiate(matrix, env), &q.var, restrict(m, mode)),
        _ if all(Flavor::Universal) => {
            // one tuple, every direction relevant
            let n = prefix.len();
            let mut tuple = vec![0usize; n];
            loop {
                let mut every = true;
                for i in 0..n {
                    let mut e = env.clone();
                    for (j, q) in prefix.iter().enumerate() {
                        if j != i {
                            e.insert(q.var.clone(), m.universe()[tuple[j]].clone());
                        }
                    }
                    let q = &prefix[i];
                    if !mono_relevant(q.flavor, &instantiate(matrix, &e), &q.var, restrict(m, mode))? {
                        every = false;
                        break;
                    }
                }
                if every {
                    return Ok(true);
                }
                let mut k = 0;
                while k < n && tuple[k] + 1 == m.size() {
                    tuple[k] = 0;
                    k += 1;
                }
                if k == n {
                    return Ok(false);
                }
                tuple[k] += 1;
            }
        }
        _ if all(Flavor::Existential) => {
            let dual: Vec<Quantifier> = prefix.iter().map(|q| Quantifier::universal(&q.var)).collect();
            relevant(&dual, &Formula::not(matrix.clone()), env, m, mode)
        }
        [q, rest @ ..] => {
            for c in m.universe() {
                if relevant(rest, matrix, &bind(env, &q.var, c), m, mode)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Instances of the outermost variable whose remainder is relevant.
pub fn relevant_instances(
    prefix: &[Quantifier],
    matrix: &Formula,
    env: &Environment,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<Vec<String>> {
    let (q, rest) = prefix
        .split_first()
        .ok_or_else(|| Error::Invalid("empty prefix".into()))?;
    let mut out = Vec::new();
    for c in m.universe() {
        if relevant(rest, matrix, &bind(env, &q.var, c), m, mode)? {
            out.push(c.clone());
        }
    }
    Ok(out)
}

fn close(prefix: &[Quantifier], matrix: &Formula, env: &Environment) -> Formula {
    prefix
        .iter()
        .rev()
        .fold(instantiate(matrix, env), |f, q| Formula::quantified(q.flavor, &q.var, f))
}

pub fn satisfied(
    prefix: &[Quantifier],
    matrix: &Formula,
    env: &Environment,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<bool> {
    if prefix.len() <= 1 {
        return eval_classical_bruteforce(&close(prefix, matrix, env), m);
    }
    let q = &prefix[0];
    let t = relevant_instances(prefix, matrix, env, m, mode)?;
    let mut results = Vec::new();
    for c in &t {
        results.push(satisfied(&prefix[1..], matrix, &bind(env, &q.var, c), m, mode)?);
    }
    Ok(match q.flavor {
        Flavor::Universal => !results.is_empty() && results.iter().all(|&r| r),
        Flavor::Existential => results.iter().any(|&r| r),
    })
}

fn is_true(prefix: &[Quantifier], matrix: &Formula, m: &Interpretation, mode: RelevanceMode) -> Result<bool> {
    let env = Environment::new();
    if prefix.is_empty() {
        return eval_classical_bruteforce(matrix, m);
    }
    let sat = satisfied(prefix, matrix, &env, m, mode)?;
    if prefix.iter().all(|q| q.flavor == Flavor::Universal) {
        Ok(sat && relevant(prefix, matrix, &env, m, mode)?)
    } else {
        Ok(sat)
    }
}

fn dual_prefix(prefix: &[Quantifier]) -> Vec<Quantifier> {
    prefix
        .iter()
        .map(|q| Quantifier {
            flavor: q.flavor.dual(),
            var: q.var.clone(),
        })
        .collect()
}

/// Three-valued verdict: true, false when the negation is true, else a gap.
pub fn verdict(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<Verdict> {
    let negated = Formula::not(s.matrix().clone());
    if is_true(s.prefix(), s.matrix(), m, mode)? {
        Ok(Verdict::True)
    } else if is_true(&dual_prefix(s.prefix()), &negated, m, mode)? {
        Ok(Verdict::False)
    } else {
        Ok(Verdict::Gap)
    }
}

/// The single-quantifier rule: true when satisfied and relevant, whatever
/// the flavor.
pub fn monadic_verdict(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<Verdict> {
    let [q] = s.prefix() else {
        return Err(Error::Invalid("expected exactly one quantifier".into()));
    };
    let truth = |flavor: Flavor, matrix: &Formula| -> Result<bool> {
        let closed = Formula::quantified(flavor, &q.var, matrix.clone());
        Ok(eval_classical_bruteforce(&closed, m)?
            && mono_relevant(flavor, matrix, &q.var, restrict(m, mode))?)
    };
    if truth(q.flavor, s.matrix())? {
        Ok(Verdict::True)
    } else if truth(q.flavor.dual(), &Formula::not(s.matrix().clone()))? {
        Ok(Verdict::False)
    } else {
        Ok(Verdict::Gap)
    }
}

/// Relevance of a whole sentence.
pub fn sentence_relevant(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<bool> {
    relevant(s.prefix(), s.matrix(), &Environment::new(), m, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{parse_formula, parse_prenex};
    use crate::model::parse_model;
    use crate::prop_relevance::parse_stuck;

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::prop(*n)).collect()
    }

    #[test]
    fn propositional_cases() {
        let f = parse_formula("P | ~P | Q").unwrap();
        assert!(prop_determines(&f, &atoms(&["P"]), &StuckMap::new()).unwrap());
        let g = parse_formula("~P | Q").unwrap();
        assert!(prop_determines(&g, &atoms(&["P"]), &parse_stuck("P=0").unwrap()).unwrap());
        assert!(!prop_determines(&g, &atoms(&["P"]), &parse_stuck("P=1").unwrap()).unwrap());
        assert!(prop_relevant(&parse_formula("P & Q").unwrap(), &StuckMap::new()).unwrap());
        assert!(!prop_relevant(&parse_formula("P -> (Q -> P)").unwrap(), &StuckMap::new()).unwrap());
    }

    #[test]
    fn monadic_worlds() {
        let children = parse_model("universe: a b c\npred J/1:\npred S/1: a b\n").unwrap();
        let f = parse_formula("(x)(J(x) -> S(x))").unwrap();
        let Formula::ForAll(_, matrix) = f else { unreachable!() };
        let j = distinct_atoms(&matrix)[0].clone();
        let s = distinct_atoms(&matrix)[1].clone();
        assert!(mono_determines(Flavor::Universal, &matrix, "x", &[j], Some(&children)).unwrap());
        assert!(!mono_determines(Flavor::Universal, &matrix, "x", &[s], Some(&children)).unwrap());
        assert!(!mono_relevant(Flavor::Universal, &matrix, "x", Some(&children)).unwrap());
        assert!(mono_relevant(Flavor::Universal, &matrix, "x", None).unwrap());
    }

    #[test]
    fn verdicts_on_small_models() {
        let ex3 = parse_model("universe: a b\npred F/2: (a,a)\npred G/2: (a,a)\n").unwrap();
        let s = parse_prenex("(Ex)(Ey)(F(x,y) & G(x,y))").unwrap();
        assert_eq!(verdict(&s, &ex3, RelevanceMode::Interp).unwrap(), Verdict::True);
        let ex7 = parse_model("universe: a b\npred F/2: (a,a)\npred G/2: (b,b)\n").unwrap();
        let s = parse_prenex("(y)(Ex)(F(x,y) & G(x,y))").unwrap();
        assert_eq!(verdict(&s, &ex7, RelevanceMode::Interp).unwrap(), Verdict::Gap);
    }
}
