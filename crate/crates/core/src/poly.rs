//! Three-valued evaluation of prenex sentences with any number of quantifiers.
//!
//! Relevance is computed by the following recursion on the prefix:
//!
//! * one quantifier: the one-variable test of [`crate::mono`] on the
//!   instantiated matrix;
//! * a universal block `(x1)..(xn)`, `n >= 2`: some single tuple `d1..dn`
//!   makes every one-variable formula `(xi) M[xj := dj, j != i]` relevant;
//! * an existential block: the universal block over the negated matrix;
//! * a mixed prefix: some instance of the outermost variable leaves a
//!   relevant remainder, whatever that quantifier's flavor.
//!
//! Satisfaction quantifies over relevant instances only. A universal
//! quantifier needs at least one relevant instance and all of them
//! satisfied; an existential one needs some relevant instance satisfied. One
//! remaining quantifier is evaluated classically.
//!
//! An all-universal sentence is true when satisfied and relevant, any other
//! sentence when satisfied. A sentence is false when its negation is true.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::ast::{to_prenex_sentence, Flavor, Formula, PrenexSentence, Quantifier, Term};
use crate::classical;
use crate::error::{Error, Result};
use crate::model::Interpretation;
use crate::mono::MonadicAnalysis;
use crate::prop_relevance::DeterminationTable;

pub use crate::classical::Environment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    True,
    False,
    Gap,
}

impl Verdict {
    /// The verdict of the negated sentence.
    pub fn mirror(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Gap => Verdict::Gap,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Gap => "GAP",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "TRUE" => Ok(Verdict::True),
            "FALSE" => Ok(Verdict::False),
            "GAP" => Ok(Verdict::Gap),
            other => Err(Error::Invalid(format!("unknown verdict `{other}`"))),
        }
    }
}

/// Which one-variable relevance test the base case uses: the one under the
/// given interpretation, or the one under any interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RelevanceMode {
    #[default]
    Interp,
    Any,
}

impl FromStr for RelevanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interp" => Ok(RelevanceMode::Interp),
            "any" => Ok(RelevanceMode::Any),
            other => Err(Error::Invalid(format!("unknown relevance mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Verdict,
    Falsehood,
    UniversalTruth,
    OtherTruth,
    MonadicRelevance,
    UniversalBlock,
    ExistentialBlock,
    OuterQuantifier,
    ClassicalSatisfaction,
    UniversalSatisfaction,
    ExistentialSatisfaction,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Verdict => "verdict",
            Rule::Falsehood => "falsehood",
            Rule::UniversalTruth => "truth.universal",
            Rule::OtherTruth => "truth.other",
            Rule::MonadicRelevance => "relevance.monadic",
            Rule::UniversalBlock => "relevance.universal-block",
            Rule::ExistentialBlock => "relevance.existential-block",
            Rule::OuterQuantifier => "relevance.outer",
            Rule::ClassicalSatisfaction => "satisfaction.classical",
            Rule::UniversalSatisfaction => "satisfaction.universal",
            Rule::ExistentialSatisfaction => "satisfaction.existential",
        }
    }
}

/// One rule application in an evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub rule: Rule,
    pub formula: String,
    pub holds: bool,
    pub instances: Option<Vec<String>>,
    pub witness: Option<Vec<(String, String)>>,
    pub note: Option<String>,
    pub children: Vec<TraceNode>,
}

pub type Trace = TraceNode;

impl TraceNode {
    fn new(rule: Rule, formula: String, holds: bool) -> Self {
        TraceNode {
            rule,
            formula,
            holds,
            instances: None,
            witness: None,
            note: None,
            children: Vec::new(),
        }
    }

    /// `<rule-id> <formula> [instances: ..] [witness: ..] => holds|fails [; note]`
    pub fn line(&self) -> String {
        let mut out = format!("{} {}", self.rule.id(), self.formula);
        if let Some(inst) = &self.instances {
            out.push_str(&format!(" [instances: {}]", inst.join(", ")));
        }
        if let Some(w) = &self.witness {
            let w: Vec<String> = w.iter().map(|(v, c)| format!("{v}={c}")).collect();
            out.push_str(&format!(" [witness: {}]", w.join(", ")));
        }
        out.push_str(if self.holds { " => holds" } else { " => fails" });
        if let Some(note) = &self.note {
            out.push_str("; ");
            out.push_str(note);
        }
        out
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_lines(0, &mut out);
        out
    }

    fn collect_lines(&self, depth: usize, out: &mut Vec<String>) {
        out.push(format!("{}{}", "  ".repeat(depth), self.line()));
        for c in &self.children {
            c.collect_lines(depth + 1, out);
        }
    }

    pub fn render(&self) -> String {
        let mut s = self.lines().join("\n");
        s.push('\n');
        s
    }

    /// Depth-first search for nodes produced by `rule`.
    pub fn find_all(&self, rule: Rule) -> Vec<&TraceNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            if n.rule == rule {
                out.push(n);
            }
            stack.extend(n.children.iter().rev());
        }
        out
    }
}

struct Judged {
    holds: bool,
    node: Option<TraceNode>,
}

impl Judged {
    fn plain(holds: bool) -> Self {
        Judged { holds, node: None }
    }
}

/// Splits a prefix into the quantifiers outside the maximal same-flavor
/// suffix and that suffix.
pub fn trailing_block(prefix: &[Quantifier]) -> (&[Quantifier], &[Quantifier]) {
    let Some(last) = prefix.last() else {
        return (prefix, prefix);
    };
    let start = prefix
        .iter()
        .rposition(|q| q.flavor != last.flavor)
        .map_or(0, |i| i + 1);
    prefix.split_at(start)
}

fn bind(env: &Environment, var: &str, c: &str) -> Environment {
    let mut env = env.clone();
    env.insert(var.to_string(), c.to_string());
    env
}

fn render(prefix: &[Quantifier], matrix: &Formula, env: &Environment) -> String {
    let body = matrix.instantiate(env.iter().map(|(v, c)| (v.as_str(), c.as_str())));
    let f = prefix.iter().rev().fold(body, |b, q| {
        Formula::quantified(q.flavor, q.var.clone(), b)
    });
    f.to_string()
}

type CacheKey = (bool, Vec<Quantifier>, Environment);

/// Evaluation state for one matrix over one interpretation. Relevance
/// results are memoized per (prefix, environment).
pub struct Evaluator<'m> {
    model: &'m Interpretation,
    mode: RelevanceMode,
    matrix: Formula,
    negated: Formula,
    cache: HashMap<CacheKey, bool>,
    base: Option<BaseTable>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Fixed(usize),
    Target,
}

enum ArgSource {
    Element(usize),
    Var(String),
}

/// The matrix's determination table, built once. A formula and its negation
/// have the same fibers, so one table serves both.
struct BaseTable {
    table: DeterminationTable,
    args: Vec<(String, Vec<ArgSource>)>,
}

impl BaseTable {
    fn new(matrix: &Formula, model: &Interpretation) -> Option<Self> {
        let table = DeterminationTable::new(matrix).ok()?;
        let args = table
            .atoms()
            .iter()
            .map(|a| {
                let srcs = a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Const(c) => model.element(c).map(ArgSource::Element),
                        Term::Var(v) => Some(ArgSource::Var(v.clone())),
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some((a.pred.clone(), srcs))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(BaseTable { table, args })
    }

    /// Relevance of the one-variable instance, or None when instantiation
    /// merges two atoms and the table no longer matches.
    fn relevant(&self, var: &str, env: &Environment, m: &Interpretation, pinned: bool) -> Option<bool> {
        let mut slots: Vec<(&str, Vec<Slot>)> = Vec::with_capacity(self.args.len());
        for (pred, srcs) in &self.args {
            let mut row = Vec::with_capacity(srcs.len());
            for src in srcs {
                row.push(match src {
                    ArgSource::Element(e) => Slot::Fixed(*e),
                    ArgSource::Var(v) if v == var => Slot::Target,
                    ArgSource::Var(v) => Slot::Fixed(m.element(env.get(v)?)?),
                });
            }
            if slots.iter().any(|(p, r)| *p == pred.as_str() && *r == row) {
                return None;
            }
            slots.push((pred.as_str(), row));
        }
        let pins: Vec<Option<bool>> = if pinned {
            let mut tuple = Vec::new();
            slots
                .iter()
                .map(|(pred, row)| {
                    let (mut some, mut all) = (false, true);
                    for e in 0..m.size() {
                        tuple.clear();
                        tuple.extend(row.iter().map(|s| match s {
                            Slot::Fixed(x) => *x,
                            Slot::Target => e,
                        }));
                        if m.holds(pred, &tuple) {
                            some = true;
                        } else {
                            all = false;
                        }
                        if some && !all {
                            return None;
                        }
                    }
                    Some(some)
                })
                .collect()
        } else {
            vec![None; self.table.width()]
        };
        Some(self.table.first_determining_co_singleton(&pins).is_none())
    }
}

impl<'m> Evaluator<'m> {
    pub fn new(matrix: &Formula, model: &'m Interpretation, mode: RelevanceMode) -> Result<Self> {
        if !matrix.is_quantifier_free() {
            return Err(Error::NotPrenex(format!("matrix `{matrix}` contains a quantifier")));
        }
        model.check_formula(matrix)?;
        Ok(Evaluator {
            model,
            mode,
            matrix: matrix.clone(),
            negated: matrix.negated(),
            cache: HashMap::new(),
            base: BaseTable::new(matrix, model),
        })
    }

    fn matrix_for(&self, neg: bool) -> &Formula {
        if neg {
            &self.negated
        } else {
            &self.matrix
        }
    }

    fn check_scope(&self, prefix: &[Quantifier], env: &Environment) -> Result<()> {
        if let Some(v) = self
            .matrix
            .free_vars()
            .into_iter()
            .find(|v| !prefix.iter().any(|q| q.var == *v) && !env.contains_key(v))
        {
            return Err(Error::FreeVariable(v));
        }
        if let Some(c) = env.values().find(|c| self.model.element(c).is_none()) {
            return Err(Error::UnknownConstant(c.clone()));
        }
        Ok(())
    }

    pub fn is_relevant(&mut self, prefix: &[Quantifier], env: &Environment) -> Result<bool> {
        self.check_scope(prefix, env)?;
        Ok(self.relevant(prefix, env, false, false)?.holds)
    }

    pub fn relevance_trace(&mut self, prefix: &[Quantifier], env: &Environment) -> Result<TraceNode> {
        self.check_scope(prefix, env)?;
        Ok(self
            .relevant(prefix, env, false, true)?
            .node
            .expect("traced"))
    }

    pub fn is_satisfied(&mut self, prefix: &[Quantifier], env: &Environment) -> Result<bool> {
        self.check_scope(prefix, env)?;
        Ok(self.satisfied(prefix, env, false)?.holds)
    }

    /// Instances of `var` (the outermost variable, followed by `rest`) whose
    /// remainder is relevant, in universe order.
    pub fn relevant_instances(
        &mut self,
        var: &str,
        rest: &[Quantifier],
        env: &Environment,
    ) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for c in self.model.universe() {
            let env = bind(env, var, c);
            if self.relevant(rest, &env, false, false)?.holds {
                out.push(c.clone());
            }
        }
        Ok(out)
    }

    fn relevant(
        &mut self,
        prefix: &[Quantifier],
        env: &Environment,
        neg: bool,
        trace: bool,
    ) -> Result<Judged> {
        let key = (neg, prefix.to_vec(), env.clone());
        if !trace {
            if let Some(&hit) = self.cache.get(&key) {
                return Ok(Judged::plain(hit));
            }
        }
        let judged = match prefix {
            [] => return Err(Error::Invalid("relevance needs at least one quantifier".into())),
            [q] => self.monadic(q, env, neg, trace)?,
            _ if prefix.iter().all(|q| q.flavor == Flavor::Universal) => {
                self.universal_block(prefix, env, neg, trace)?
            }
            _ if prefix.iter().all(|q| q.flavor == Flavor::Existential) => {
                let dual: Vec<Quantifier> = prefix
                    .iter()
                    .map(|q| Quantifier::universal(q.var.clone()))
                    .collect();
                let inner = self.universal_block(&dual, env, !neg, trace)?;
                let node = inner.node.map(|child| {
                    let mut n = TraceNode::new(
                        Rule::ExistentialBlock,
                        render(prefix, self.matrix_for(neg), env),
                        inner.holds,
                    );
                    n.witness = child.witness.clone();
                    n.children.push(child);
                    n
                });
                Judged {
                    holds: inner.holds,
                    node,
                }
            }
            [q, rest @ ..] => self.outer(q, rest, env, neg, trace)?,
        };
        self.cache.insert(key, judged.holds);
        Ok(judged)
    }

    fn monadic(&mut self, q: &Quantifier, env: &Environment, neg: bool, trace: bool) -> Result<Judged> {
        if !trace {
            let pinned = self.mode == RelevanceMode::Interp;
            if let Some(holds) = self
                .base
                .as_ref()
                .and_then(|b| b.relevant(&q.var, env, self.model, pinned))
            {
                return Ok(Judged::plain(holds));
            }
        }
        let body = self
            .matrix_for(neg)
            .instantiate(env.iter().map(|(v, c)| (v.as_str(), c.as_str())));
        let analysis = MonadicAnalysis::new(&body, &q.var, self.model, self.mode)?;
        let subset = analysis.determining_proper_subset();
        let holds = subset.is_none();
        let node = trace.then(|| {
            let mut n = TraceNode::new(
                Rule::MonadicRelevance,
                render(std::slice::from_ref(q), self.matrix_for(neg), env),
                holds,
            );
            if let Some(set) = subset {
                let set: Vec<String> = set.iter().map(ToString::to_string).collect();
                n.note = Some(format!("determining set {{{}}}", set.join(",")));
            }
            n
        });
        Ok(Judged { holds, node })
    }

    fn direction_relevant(
        &mut self,
        vars: &[Quantifier],
        i: usize,
        tuple: &[&String],
        env: &Environment,
        neg: bool,
    ) -> Result<bool> {
        let mut env = env.clone();
        for (j, q) in vars.iter().enumerate() {
            if j != i {
                env.insert(q.var.clone(), tuple[j].clone());
            }
        }
        Ok(self.relevant(std::slice::from_ref(&vars[i]), &env, neg, false)?.holds)
    }

    fn universal_block(
        &mut self,
        vars: &[Quantifier],
        env: &Environment,
        neg: bool,
        trace: bool,
    ) -> Result<Judged> {
        let universe = self.model.universe();
        let mut witness = None;
        'search: for tuple in std::iter::repeat_n(universe.iter(), vars.len()).multi_cartesian_product() {
            for i in 0..vars.len() {
                if !self.direction_relevant(vars, i, &tuple, env, neg)? {
                    continue 'search;
                }
            }
            witness = Some(tuple.into_iter().cloned().collect::<Vec<String>>());
            break;
        }
        let holds = witness.is_some();
        if !trace {
            return Ok(Judged::plain(holds));
        }
        let mut node = TraceNode::new(
            Rule::UniversalBlock,
            render(vars, self.matrix_for(neg), env),
            holds,
        );
        match witness {
            Some(tuple) => {
                node.witness = Some(
                    vars.iter()
                        .map(|q| q.var.clone())
                        .zip(tuple.iter().cloned())
                        .collect(),
                );
                for (i, q) in vars.iter().enumerate() {
                    let mut env = env.clone();
                    for (j, other) in vars.iter().enumerate() {
                        if j != i {
                            env.insert(other.var.clone(), tuple[j].clone());
                        }
                    }
                    let child = self.relevant(std::slice::from_ref(q), &env, neg, true)?;
                    node.children.extend(child.node);
                }
            }
            None => node.note = Some(self.explain_missing_witness(vars, env, neg)?),
        }
        Ok(Judged {
            holds,
            node: Some(node),
        })
    }

    fn explain_missing_witness(&mut self, vars: &[Quantifier], env: &Environment, neg: bool) -> Result<String> {
        let universe = self.model.universe();
        let mut missing = Vec::new();
        for i in 0..vars.len() {
            let mut found = false;
            for tuple in std::iter::repeat_n(universe.iter(), vars.len()).multi_cartesian_product() {
                if self.direction_relevant(vars, i, &tuple, env, neg)? {
                    found = true;
                    break;
                }
            }
            if !found {
                missing.push(i);
            }
        }
        if missing.is_empty() {
            return Ok("no witness tuple: no single tuple is relevant in every direction".into());
        }
        let parts: Vec<String> = missing
            .iter()
            .map(|&i| match (vars.len(), i) {
                (2, 0) => format!("no witness column (no t-relevant ({})-instance)", vars[0].var),
                (2, 1) => format!("no witness row (no t-relevant ({})-instance)", vars[1].var),
                _ => format!("no t-relevant ({})-instance", vars[i].var),
            })
            .collect();
        Ok(parts.join("; "))
    }

    fn outer(
        &mut self,
        q: &Quantifier,
        rest: &[Quantifier],
        env: &Environment,
        neg: bool,
        trace: bool,
    ) -> Result<Judged> {
        let mut witness = None;
        for c in self.model.universe() {
            if self.relevant(rest, &bind(env, &q.var, c), neg, false)?.holds {
                witness = Some(c.clone());
                break;
            }
        }
        let holds = witness.is_some();
        if !trace {
            return Ok(Judged::plain(holds));
        }
        let mut prefix = vec![q.clone()];
        prefix.extend_from_slice(rest);
        let mut node = TraceNode::new(
            Rule::OuterQuantifier,
            render(&prefix, self.matrix_for(neg), env),
            holds,
        );
        match witness {
            Some(c) => {
                let child = self.relevant(rest, &bind(env, &q.var, &c), neg, true)?;
                node.witness = Some(vec![(q.var.clone(), c)]);
                node.children.extend(child.node);
            }
            None => node.note = Some(format!("no t-relevant instance of {}", q.var)),
        }
        Ok(Judged {
            holds,
            node: Some(node),
        })
    }

    fn satisfied(&mut self, prefix: &[Quantifier], env: &Environment, trace: bool) -> Result<Judged> {
        let [q, rest @ ..] = prefix else {
            return self.classical(prefix, env, trace);
        };
        if rest.is_empty() {
            return self.classical(prefix, env, trace);
        }
        let instances = self.relevant_instances(&q.var, rest, env)?;
        let mut children = Vec::new();
        let mut witness = None;
        let holds = match q.flavor {
            Flavor::Universal => {
                let mut all = !instances.is_empty();
                for c in &instances {
                    let sub = self.satisfied(rest, &bind(env, &q.var, c), trace)?;
                    children.extend(sub.node);
                    if !sub.holds {
                        all = false;
                        if !trace {
                            break;
                        }
                    }
                }
                all
            }
            Flavor::Existential => {
                for c in &instances {
                    let sub = self.satisfied(rest, &bind(env, &q.var, c), trace)?;
                    children.extend(sub.node);
                    if sub.holds {
                        witness = Some(c.clone());
                        break;
                    }
                }
                witness.is_some()
            }
        };
        let node = trace.then(|| {
            let rule = match q.flavor {
                Flavor::Universal => Rule::UniversalSatisfaction,
                Flavor::Existential => Rule::ExistentialSatisfaction,
            };
            let mut n = TraceNode::new(rule, render(prefix, &self.matrix, env), holds);
            if instances.is_empty() {
                n.note = Some(format!("no t-relevant instance of {}", q.var));
            }
            n.instances = Some(instances);
            n.witness = witness.map(|c| vec![(q.var.clone(), c)]);
            n.children = children;
            n
        });
        Ok(Judged { holds, node })
    }

    fn classical(&mut self, prefix: &[Quantifier], env: &Environment, trace: bool) -> Result<Judged> {
        let f = prefix.iter().rev().fold(self.matrix.clone(), |b, q| {
            Formula::quantified(q.flavor, q.var.clone(), b)
        });
        let holds = classical::eval_classical(&f, self.model, env)?;
        let node = trace.then(|| TraceNode::new(Rule::ClassicalSatisfaction, render(prefix, &self.matrix, env), holds));
        Ok(Judged { holds, node })
    }

    fn truth(&mut self, prefix: &[Quantifier], trace: bool) -> Result<Judged> {
        let env = Environment::new();
        let all_universal = !prefix.is_empty() && prefix.iter().all(|q| q.flavor == Flavor::Universal);
        let sat = self.satisfied(prefix, &env, trace)?;
        if !all_universal {
            let node = sat.node.map(|child| {
                let mut n = TraceNode::new(Rule::OtherTruth, render(prefix, &self.matrix, &env), sat.holds);
                n.children.push(child);
                n
            });
            return Ok(Judged {
                holds: sat.holds,
                node,
            });
        }
        // Relevance is only consulted when the sentence is satisfied, unless tracing.
        let rel = if sat.holds || trace {
            self.relevant(prefix, &env, false, trace)?
        } else {
            Judged::plain(false)
        };
        let holds = sat.holds && rel.holds;
        let node = sat.node.map(|s| {
            let mut n = TraceNode::new(Rule::UniversalTruth, render(prefix, &self.matrix, &env), holds);
            n.witness = rel.node.as_ref().and_then(|r| r.witness.clone());
            n.children.push(s);
            n.children.extend(rel.node);
            n
        });
        Ok(Judged { holds, node })
    }
}

/// Result of evaluating a sentence: the verdict and the rule tree behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub verdict: Verdict,
    pub trace: Trace,
}

fn run(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode, trace: bool) -> Result<(Verdict, Option<TraceNode>)> {
    let mut ev = Evaluator::new(s.matrix(), m, mode)?;
    let truth = ev.truth(s.prefix(), trace)?;
    let mut root = TraceNode::new(Rule::Verdict, s.to_string(), true);
    root.children.extend(truth.node);
    if truth.holds {
        root.note = Some(Verdict::True.to_string());
        return Ok((Verdict::True, trace.then_some(root)));
    }
    let neg = s.negate();
    let mut nev = Evaluator::new(neg.matrix(), m, mode)?;
    let neg_truth = nev.truth(neg.prefix(), trace)?;
    let verdict = if neg_truth.holds { Verdict::False } else { Verdict::Gap };
    if let Some(child) = neg_truth.node {
        let mut f = TraceNode::new(Rule::Falsehood, neg.to_string(), neg_truth.holds);
        f.children.push(child);
        root.children.push(f);
    }
    root.note = Some(verdict.to_string());
    Ok((verdict, trace.then_some(root)))
}

/// Verdict without building a trace.
pub fn verdict(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<Verdict> {
    Ok(run(s, m, mode, false)?.0)
}

pub fn evaluate(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<Evaluation> {
    let (verdict, trace) = run(s, m, mode, true)?;
    Ok(Evaluation {
        verdict,
        trace: trace.expect("traced"),
    })
}

/// A prenex sentence, or the negation of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub negated: bool,
    pub prenex: PrenexSentence,
}

impl Sentence {
    pub fn from_formula(f: &Formula) -> Result<Self> {
        match (to_prenex_sentence(f), f) {
            (Ok(prenex), _) => Ok(Sentence {
                negated: false,
                prenex,
            }),
            (Err(e), Formula::Not(inner)) => match to_prenex_sentence(inner) {
                Ok(prenex) => Ok(Sentence {
                    negated: true,
                    prenex,
                }),
                Err(_) => Err(e),
            },
            (Err(e), _) => Err(e),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Sentence::from_formula(&crate::ast::parse_formula(text)?)
    }
}

/// Evaluates `~S` as the mirror of `S`'s verdict; plain prenex sentences as usual.
pub fn evaluate_sentence(s: &Sentence, m: &Interpretation, mode: RelevanceMode) -> Result<Evaluation> {
    let mut e = evaluate(&s.prenex, m, mode)?;
    if s.negated {
        e.verdict = e.verdict.mirror();
        let mut root = TraceNode::new(Rule::Verdict, format!("~{}", wrap(&s.prenex)), true);
        root.note = Some(format!("{} (mirror of the negated sentence)", e.verdict));
        root.children.push(e.trace);
        e.trace = root;
    }
    Ok(e)
}

fn wrap(s: &PrenexSentence) -> String {
    if s.prefix().is_empty() {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub fn is_t_relevant(
    prefix: &[Quantifier],
    matrix: &Formula,
    env: &Environment,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<bool> {
    Evaluator::new(matrix, m, mode)?.is_relevant(prefix, env)
}

pub fn t_relevant_instances(
    var: &str,
    rest: &[Quantifier],
    matrix: &Formula,
    env: &Environment,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<Vec<String>> {
    let mut ev = Evaluator::new(matrix, m, mode)?;
    let mut prefix = vec![Quantifier::universal(var)];
    prefix.extend_from_slice(rest);
    ev.check_scope(&prefix, env)?;
    ev.relevant_instances(var, rest, env)
}

pub fn is_satisfied(
    prefix: &[Quantifier],
    matrix: &Formula,
    env: &Environment,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<bool> {
    Evaluator::new(matrix, m, mode)?.is_satisfied(prefix, env)
}

/// Relevance of a whole sentence with the rule tree that decides it.
pub fn relevance_report(s: &PrenexSentence, m: &Interpretation, mode: RelevanceMode) -> Result<(bool, TraceNode)> {
    let mut ev = Evaluator::new(s.matrix(), m, mode)?;
    let node = ev.relevance_trace(s.prefix(), &Environment::new())?;
    Ok((node.holds, node))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_prenex;
    use crate::model::parse_model;

    const EX2: &str = "universe: a b c d\npred F/2: (a,a) (a,b)\npred G/2: (a,c) (a,d)\n";
    const EX4: &str = "universe: a b\npred F/2: (a,a)\npred G/2: (a,b)\n";
    const EX4B: &str = "universe: a b\npred F/2: (a,a) (b,a)\npred G/2: (a,a) (b,a)\n";
    const EX6: &str = "universe: a b\npred F/2: (a,a) (a,b)\npred G/2: (a,a) (a,b)\n";
    const EX7: &str = "universe: a b\npred F/2: (a,a)\npred G/2: (b,b)\n";

    fn q(text: &str) -> Vec<Quantifier> {
        parse_prenex(&format!("{text}P")).unwrap().prefix().to_vec()
    }

    fn sentence(text: &str) -> PrenexSentence {
        parse_prenex(text).unwrap()
    }

    #[test]
    fn trailing_blocks() {
        let p = q("(x)(y)");
        assert_eq!(trailing_block(&p), (&p[..0], &p[..]));
        let p = q("(Ex)(y)");
        assert_eq!(trailing_block(&p), (&p[..1], &p[1..]));
        let p = q("(z)(y)(Ex)");
        assert_eq!(trailing_block(&p), (&p[..2], &p[2..]));
    }

    #[test]
    fn universal_block_needs_one_witness_tuple() {
        let m = parse_model(EX2).unwrap();
        let s = sentence("(x)(y)(F(x,y) -> ~G(x,y))");
        let env = Environment::new();
        assert!(!is_t_relevant(s.prefix(), s.matrix(), &env, &m, RelevanceMode::Interp).unwrap());
        let n = s.negate();
        assert!(!is_t_relevant(n.prefix(), n.matrix(), &env, &m, RelevanceMode::Interp).unwrap());
        assert_eq!(
            t_relevant_instances("x", &s.prefix()[1..], s.matrix(), &env, &m, RelevanceMode::Interp).unwrap(),
            vec!["a"]
        );
        assert!(is_satisfied(s.prefix(), s.matrix(), &env, &m, RelevanceMode::Interp).unwrap());
    }

    #[test]
    fn mixed_prefix_relevance() {
        let m = parse_model(EX4B).unwrap();
        let s = sentence("(x)(Ey)(F(x,y) & G(x,y))");
        assert!(is_t_relevant(s.prefix(), s.matrix(), &Environment::new(), &m, RelevanceMode::Interp).unwrap());
    }

    #[test]
    fn column_instances() {
        let s = sentence("(y)(Ex)(F(x,y) & G(x,y))");
        let env = Environment::new();
        let ex7 = parse_model(EX7).unwrap();
        assert!(t_relevant_instances("y", &s.prefix()[1..], s.matrix(), &env, &ex7, RelevanceMode::Interp)
            .unwrap()
            .is_empty());
        assert!(!is_satisfied(s.prefix(), s.matrix(), &env, &ex7, RelevanceMode::Interp).unwrap());
        let ex6 = parse_model(EX6).unwrap();
        assert_eq!(
            t_relevant_instances("y", &s.prefix()[1..], s.matrix(), &env, &ex6, RelevanceMode::Interp).unwrap(),
            vec!["a", "b"]
        );
    }

    #[test]
    fn existential_row_satisfaction() {
        let m = parse_model(EX4).unwrap();
        let s = sentence("(Ex)(y)(F(x,y) -> ~G(x,y))");
        assert!(is_satisfied(s.prefix(), s.matrix(), &Environment::new(), &m, RelevanceMode::Interp).unwrap());
        assert_eq!(verdict(&s, &m, RelevanceMode::Interp).unwrap(), Verdict::True);
    }

    #[test]
    fn verdicts() {
        let cases = [
            (EX2, "(x)(y)(F(x,y) -> ~G(x,y))", Verdict::Gap),
            (EX2, "(Ex)(Ey)(F(x,y) & G(x,y))", Verdict::Gap),
            ("universe: a b\npred F/2: (a,a)\npred G/2: (a,a)\n", "(Ex)(Ey)(F(x,y) & G(x,y))", Verdict::True),
            ("universe: a b\npred F/2: (a,a)\npred G/2: (a,a)\n", "(x)(y)(F(x,y) -> ~G(x,y))", Verdict::False),
            (EX4, "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::True),
            (EX4B, "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::False),
            ("universe: a b\npred F/2: (a,a)\npred G/2:\n", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::Gap),
            (EX6, "(y)(Ex)(F(x,y) & G(x,y))", Verdict::True),
            (
                "universe: a b\npred F/2: (a,a) (a,b)\npred G/2: (b,a) (a,b)\n",
                "(y)(Ex)(F(x,y) & G(x,y))",
                Verdict::False,
            ),
            (EX7, "(y)(Ex)(F(x,y) & G(x,y))", Verdict::Gap),
        ];
        for (model, text, expected) in cases {
            let m = parse_model(model).unwrap();
            let s = sentence(text);
            assert_eq!(verdict(&s, &m, RelevanceMode::Interp).unwrap(), expected, "{text} on {model}");
            assert_eq!(evaluate(&s, &m, RelevanceMode::Interp).unwrap().verdict, expected);
            assert_eq!(verdict(&s.negate(), &m, RelevanceMode::Interp).unwrap(), expected.mirror());
        }
    }

    #[test]
    fn trace_carries_witnesses() {
        let m = parse_model("universe: a b\npred F/2: (a,a)\npred G/2: (a,a)\n").unwrap();
        let s = sentence("(Ex)(Ey)(F(x,y) & G(x,y))");
        let e = evaluate(&s, &m, RelevanceMode::Interp).unwrap();
        let sat = e.trace.find_all(Rule::ExistentialSatisfaction);
        assert_eq!(sat[0].witness, Some(vec![("x".to_string(), "a".to_string())]));
        assert_eq!(sat[0].instances, Some(vec!["a".to_string()]));

        let n = s.negate();
        let e = evaluate(&n, &m, RelevanceMode::Interp).unwrap();
        assert_eq!(e.verdict, Verdict::False);
        assert!(e.trace.lines().iter().any(|l| l.trim_start().starts_with("falsehood ")));
    }

    #[test]
    fn missing_witness_is_explained() {
        let m = parse_model(EX2).unwrap();
        let s = sentence("(x)(y)(F(x,y) -> ~G(x,y))");
        let (rel, node) = relevance_report(&s, &m, RelevanceMode::Interp).unwrap();
        assert!(!rel);
        assert!(node.note.unwrap().contains("no witness column"));
    }

    #[test]
    fn negated_sentences_mirror() {
        let m = parse_model("universe: a b c d e\npred F/1: a b\npred G/1: d e\n").unwrap();
        let s = Sentence::parse("~(Ex)(F(x) & G(x))").unwrap();
        assert!(s.negated);
        assert_eq!(evaluate_sentence(&s, &m, RelevanceMode::Interp).unwrap().verdict, Verdict::True);
        assert!(matches!(Sentence::parse("(x)F(x) & P"), Err(Error::NotPrenex(_))));
    }

    #[test]
    fn scope_errors() {
        let m = parse_model(EX4).unwrap();
        let s = sentence("(x)(y)(F(x,y) -> ~G(x,y))");
        assert_eq!(
            is_t_relevant(&s.prefix()[1..], s.matrix(), &Environment::new(), &m, RelevanceMode::Interp),
            Err(Error::FreeVariable("x".into()))
        );
        let undeclared = sentence("(x)H(x)");
        assert_eq!(
            verdict(&undeclared, &m, RelevanceMode::Interp),
            Err(Error::UndeclaredPredicate("H".into()))
        );
    }

    #[test]
    fn ground_sentence_is_classical() {
        let m = parse_model("universe: a\npred P/0: ()\n").unwrap();
        let s = sentence("P");
        assert_eq!(verdict(&s, &m, RelevanceMode::Interp).unwrap(), Verdict::True);
        assert_eq!(verdict(&s.negate(), &m, RelevanceMode::Interp).unwrap(), Verdict::False);
    }
}
