//! Finite interpretations: a nonempty universe plus closed-world predicate
//! extensions, the text format for them, and exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::ast::{Atom, Formula, Term};
use crate::error::{Error, Result};

/// Predicate symbols with their arities, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    preds: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<I, S>(preds: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<(String, usize)> = Vec::new();
        for (name, arity) in preds {
            let name = name.into();
            if out.iter().any(|(n, _)| *n == name) {
                return Err(Error::DuplicatePredicate(name));
            }
            out.push((name, arity));
        }
        Ok(Signature { preds: out })
    }

    /// Parses `F/2,G/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut preds = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, arity) = item
                .split_once('/')
                .ok_or_else(|| Error::Invalid(format!("expected NAME/ARITY, found `{item}`")))?;
            if !is_pred_name(name) {
                return Err(Error::Invalid(format!("invalid predicate name `{name}`")));
            }
            let arity: usize = arity
                .parse()
                .map_err(|_| Error::Invalid(format!("invalid arity in `{item}`")))?;
            preds.push((name.to_string(), arity));
        }
        Signature::new(preds)
    }

    pub fn preds(&self) -> &[(String, usize)] {
        &self.preds
    }

    pub fn arity(&self, pred: &str) -> Option<usize> {
        self.preds.iter().find(|(n, _)| n == pred).map(|(_, a)| *a)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, a)) in self.preds.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}/{a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Extension {
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
}

/// A universe of named objects plus the extent of every declared predicate.
/// Tuples absent from an extension are false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    universe: Vec<String>,
    index: HashMap<String, usize>,
    extensions: BTreeMap<String, Extension>,
}

fn is_element_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

fn is_pred_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Interpretation {
    pub fn new<I, S>(universe: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::new();
        for (i, name) in universe.iter().enumerate() {
            if !is_element_name(name) {
                return Err(Error::Invalid(format!("invalid element name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("element `{name}` listed twice")));
            }
        }
        Ok(Interpretation {
            universe,
            index,
            extensions: BTreeMap::new(),
        })
    }

    pub fn declare(&mut self, pred: &str, arity: usize) -> Result<()> {
        if self.extensions.contains_key(pred) {
            return Err(Error::DuplicatePredicate(pred.to_string()));
        }
        self.extensions.insert(
            pred.to_string(),
            Extension {
                arity,
                tuples: BTreeSet::new(),
            },
        );
        Ok(())
    }

    /// Adds a tuple (by element names) to a declared predicate.
    pub fn insert(&mut self, pred: &str, tuple: &[&str]) -> Result<()> {
        let idx = tuple
            .iter()
            .map(|n| self.element(n).ok_or_else(|| Error::UnknownConstant(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.insert_indices(pred, idx)
    }

    fn insert_indices(&mut self, pred: &str, tuple: Vec<usize>) -> Result<()> {
        let ext = self
            .extensions
            .get_mut(pred)
            .ok_or_else(|| Error::UndeclaredPredicate(pred.to_string()))?;
        if ext.arity != tuple.len() {
            return Err(Error::ArityMismatch {
                pred: pred.to_string(),
                declared: ext.arity,
                used: tuple.len(),
            });
        }
        ext.tuples.insert(tuple);
        Ok(())
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            preds: self
                .extensions
                .iter()
                .map(|(n, e)| (n.clone(), e.arity))
                .collect(),
        }
    }

    pub fn arity(&self, pred: &str) -> Option<usize> {
        self.extensions.get(pred).map(|e| e.arity)
    }

    /// Element names of a predicate's extension, in universe order.
    pub fn extension(&self, pred: &str) -> Option<Vec<Vec<&str>>> {
        self.extensions.get(pred).map(|e| {
            e.tuples
                .iter()
                .map(|t| t.iter().map(|&i| self.universe[i].as_str()).collect())
                .collect()
        })
    }

    /// Membership test on element indices. The predicate must be declared.
    pub fn holds(&self, pred: &str, tuple: &[usize]) -> bool {
        self.extensions
            .get(pred)
            .is_some_and(|e| e.tuples.contains(tuple))
    }

    /// Classical value of a ground atom.
    pub fn predicate_truth(&self, atom: &Atom) -> Result<bool> {
        let ext = self
            .extensions
            .get(&atom.pred)
            .ok_or_else(|| Error::UndeclaredPredicate(atom.pred.clone()))?;
        if ext.arity != atom.arity() {
            return Err(Error::ArityMismatch {
                pred: atom.pred.clone(),
                declared: ext.arity,
                used: atom.arity(),
            });
        }
        let mut tuple = Vec::with_capacity(atom.arity());
        for t in &atom.args {
            match t {
                Term::Const(c) => tuple.push(
                    self.element(c)
                        .ok_or_else(|| Error::UnknownConstant(c.clone()))?,
                ),
                Term::Var(v) => return Err(Error::FreeVariable(v.clone())),
            }
        }
        Ok(ext.tuples.contains(&tuple))
    }

    /// Checks that every predicate of `f` is declared with the right arity and
    /// every constant names an element.
    pub fn check_formula(&self, f: &Formula) -> Result<()> {
        for (pred, arity) in f.signature()? {
            match self.arity(&pred) {
                None => return Err(Error::UndeclaredPredicate(pred)),
                Some(declared) if declared != arity => {
                    return Err(Error::ArityMismatch {
                        pred,
                        declared,
                        used: arity,
                    })
                }
                Some(_) => {}
            }
        }
        if let Some(c) = f.constants().into_iter().find(|c| self.element(c).is_none()) {
            return Err(Error::UnknownConstant(c));
        }
        Ok(())
    }

    /// The same interpretation with its universe listed in another order.
    /// `order[i]` is the old index of the element placed at position `i`.
    pub fn reordered(&self, order: &[usize]) -> Interpretation {
        assert_eq!(order.len(), self.universe.len());
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let universe: Vec<String> = order.iter().map(|&i| self.universe[i].clone()).collect();
        let index = universe
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let extensions = self
            .extensions
            .iter()
            .map(|(n, e)| {
                let tuples = e
                    .tuples
                    .iter()
                    .map(|t| t.iter().map(|&i| new_index[i]).collect())
                    .collect();
                (
                    n.clone(),
                    Extension {
                        arity: e.arity,
                        tuples,
                    },
                )
            })
            .collect();
        Interpretation {
            universe,
            index,
            extensions,
        }
    }

    /// Compact one-line rendering, e.g. `{e1,e2} F={(e1,e2)} G={}`.
    pub fn summary(&self) -> String {
        let mut out = format!("{{{}}}", self.universe.join(","));
        for (name, ext) in &self.extensions {
            let tuples: Vec<String> = ext
                .tuples
                .iter()
                .map(|t| self.render_tuple(t, true))
                .collect();
            out.push_str(&format!(" {name}={{{}}}", tuples.join(",")));
        }
        out
    }

    fn render_tuple(&self, t: &[usize], parens_for_unary: bool) -> String {
        let names: Vec<&str> = t.iter().map(|&i| self.universe[i].as_str()).collect();
        if t.len() == 1 && !parens_for_unary {
            names[0].to_string()
        } else {
            format!("({})", names.join(","))
        }
    }
}

/// Writes the model file format; [`parse_model`] reads it back.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe: {}", self.universe.join(" "))?;
        for (name, ext) in &self.extensions {
            write!(f, "pred {name}/{}:", ext.arity)?;
            for t in &ext.tuples {
                write!(f, " {}", self.render_tuple(t, false))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn format_model(m: &Interpretation) -> String {
    m.to_string()
}

struct PredLine {
    line: usize,
    name: String,
    arity: usize,
    tuples: Vec<Vec<String>>,
}

fn parse_tuples(line: usize, text: &str) -> Result<Vec<Vec<String>>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('(') {
            let close = inner
                .find(')')
                .ok_or_else(|| Error::model(line, "unterminated tuple"))?;
            let body = &inner[..close];
            let names: Vec<String> = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',').map(|s| s.trim().to_string()).collect()
            };
            if let Some(bad) = names.iter().find(|n| !is_element_name(n)) {
                return Err(Error::model(line, format!("invalid element name `{bad}`")));
            }
            out.push(names);
            rest = inner[close + 1..].trim_start();
        } else {
            let end = rest
                .find(|c: char| c.is_whitespace() || c == '(')
                .unwrap_or(rest.len());
            let name = &rest[..end];
            if !is_element_name(name) {
                return Err(Error::model(line, format!("invalid element name `{name}`")));
            }
            out.push(vec![name.to_string()]);
            rest = rest[end..].trim_start();
        }
    }
    Ok(out)
}

/// Parses the line-oriented model format:
///
/// ```text
/// universe: a b c
/// pred J/1:
/// pred S/1: a b
/// pred F/2: (a,b) (b,c)
/// ```
pub fn parse_model(text: &str) -> Result<Interpretation> {
    let mut universe: Option<Vec<String>> = None;
    let mut preds: Vec<PredLine> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("universe:") {
            if universe.is_some() {
                return Err(Error::model(line, "universe declared twice"));
            }
            universe = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = content.strip_prefix("pred ") {
            let (head, tuples) = rest
                .split_once(':')
                .ok_or_else(|| Error::model(line, "expected `pred Name/arity: tuples`"))?;
            let (name, arity) = head
                .trim()
                .split_once('/')
                .ok_or_else(|| Error::model(line, "expected `Name/arity`"))?;
            let name = name.trim();
            if !is_pred_name(name) {
                return Err(Error::model(line, format!("invalid predicate name `{name}`")));
            }
            let arity: usize = arity
                .trim()
                .parse()
                .map_err(|_| Error::model(line, format!("invalid arity `{}`", arity.trim())))?;
            preds.push(PredLine {
                line,
                name: name.to_string(),
                arity,
                tuples: parse_tuples(line, tuples)?,
            });
        } else {
            return Err(Error::model(line, format!("unrecognized line `{content}`")));
        }
    }
    let universe = universe.ok_or_else(|| Error::model(1, "missing `universe:` line"))?;
    let mut m = Interpretation::new(universe)?;
    for p in preds {
        m.declare(&p.name, p.arity)?;
        for t in &p.tuples {
            let idx = t
                .iter()
                .map(|n| m.element(n).ok_or_else(|| Error::UnknownConstant(n.clone())))
                .collect::<Result<Vec<_>>>()?;
            if idx.len() != p.arity {
                return Err(Error::ArityMismatch {
                    pred: p.name.clone(),
                    declared: p.arity,
                    used: idx.len(),
                });
            }
            m.insert_indices(&p.name, idx)
                .map_err(|e| Error::model(p.line, e.to_string()))?;
        }
    }
    Ok(m)
}

/// Number of models of `sig` over a universe of `size` elements, if it fits.
pub fn model_count(sig: &Signature, size: usize) -> Option<u128> {
    let bits = total_bits(sig, size)?;
    if bits >= 127 {
        return None;
    }
    Some(1u128 << bits)
}

fn total_bits(sig: &Signature, size: usize) -> Option<u32> {
    sig.preds.iter().try_fold(0u32, |acc, (_, arity)| {
        let n = (size as u32).checked_pow(*arity as u32)?;
        acc.checked_add(n)
    })
}

/// Canonical element names `e1..en`.
pub fn canonical_universe(size: usize) -> Vec<String> {
    (1..=size).map(|i| format!("e{i}")).collect()
}

/// All tuples over `size` elements of length `arity`, in lexicographic order.
fn all_tuples(size: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every interpretation of a signature over `e1..en`.
///
/// Model `k` puts tuple `j` of predicate `p` in the extension iff the
/// corresponding bit of `k` is set; the first predicate occupies the low bits.
#[derive(Debug, Clone)]
pub struct ModelEnumeration {
    sig: Signature,
    universe: Vec<String>,
    tuples: Vec<Vec<Vec<usize>>>,
    next: u128,
    count: u128,
}

impl ModelEnumeration {
    pub fn total(&self) -> u128 {
        self.count
    }

    pub fn model_at(&self, k: u128) -> Interpretation {
        let mut m = Interpretation::new(self.universe.clone()).expect("canonical universe");
        let mut shift = 0;
        for ((name, arity), tuples) in self.sig.preds.iter().zip(&self.tuples) {
            m.declare(name, *arity).expect("distinct names");
            for t in tuples {
                if (k >> shift) & 1 == 1 {
                    m.insert_indices(name, t.clone()).expect("arity matches");
                }
                shift += 1;
            }
        }
        m
    }
}

impl Iterator for ModelEnumeration {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.next >= self.count {
            return None;
        }
        let m = self.model_at(self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.count - self.next;
        match usize::try_from(left) {
            Ok(n) => (n, Some(n)),
            Err(_) => (usize::MAX, None),
        }
    }
}

pub fn enumerate_models(sig: &Signature, universe_size: usize) -> Result<ModelEnumeration> {
    if universe_size == 0 {
        return Err(Error::EmptyUniverse);
    }
    let count = model_count(sig, universe_size).ok_or_else(|| {
        Error::Invalid(format!(
            "too many models for {sig} over {universe_size} elements"
        ))
    })?;
    Ok(ModelEnumeration {
        sig: sig.clone(),
        universe: canonical_universe(universe_size),
        tuples: sig
            .preds
            .iter()
            .map(|(_, a)| all_tuples(universe_size, *a))
            .collect(),
        next: 0,
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const CHILDREN: &str = "universe: a b c\npred J/1:\npred S/1: a b\n";

    #[test]
    fn parses_children_model() {
        let m = parse_model(CHILDREN).unwrap();
        assert_eq!(m.universe(), &["a", "b", "c"]);
        assert_eq!(m.extension("J").unwrap(), Vec::<Vec<&str>>::new());
        assert_eq!(m.extension("S").unwrap(), vec![vec!["a"], vec!["b"]]);
        let sa = Atom::new("S", vec![Term::constant("a")]);
        let ja = Atom::new("J", vec![Term::constant("a")]);
        assert!(m.predicate_truth(&sa).unwrap());
        assert!(!m.predicate_truth(&ja).unwrap());
        let sc = Atom::new("S", vec![Term::constant("c")]);
        assert!(!m.predicate_truth(&sc).unwrap());
    }

    #[test]
    fn parses_binary_tuples() {
        let m = parse_model("universe: a b c\npred F/2: (a,b) (b, c)\n").unwrap();
        assert_eq!(m.extension("F").unwrap(), vec![vec!["a", "b"], vec!["b", "c"]]);
    }

    #[test]
    fn zero_ary_predicates() {
        let m = parse_model("universe: a\npred P/0: ()\npred Q/0:\n").unwrap();
        assert!(m.predicate_truth(&Atom::prop("P")).unwrap());
        assert!(!m.predicate_truth(&Atom::prop("Q")).unwrap());
        assert_eq!(parse_model(&format_model(&m)).unwrap(), m);
    }

    #[test]
    fn model_errors() {
        assert_eq!(parse_model("universe:\n"), Err(Error::EmptyUniverse));
        assert_eq!(
            parse_model("universe: a\npred F/1: b\n"),
            Err(Error::UnknownConstant("b".into()))
        );
        assert!(matches!(
            parse_model("universe: a b\npred F/2: a\n"),
            Err(Error::ArityMismatch { declared: 2, used: 1, .. })
        ));
        assert_eq!(
            parse_model("universe: a\npred F/1:\npred F/1: a\n"),
            Err(Error::DuplicatePredicate("F".into()))
        );
        assert!(matches!(
            parse_model("pred F/1:\n"),
            Err(Error::ModelFormat { .. })
        ));
        assert!(matches!(
            parse_model("universe: a\nwhatever\n"),
            Err(Error::ModelFormat { line: 2, .. })
        ));
    }

    #[test]
    fn undeclared_predicate_is_an_error() {
        let m = parse_model(CHILDREN).unwrap();
        let atom = Atom::new("K", vec![Term::constant("a")]);
        assert_eq!(
            m.predicate_truth(&atom),
            Err(Error::UndeclaredPredicate("K".into()))
        );
    }

    #[test]
    fn comments_are_ignored() {
        let m = parse_model("# kids\nuniverse: a b # two\npred S/1: a # asleep\n").unwrap();
        assert_eq!(m.size(), 2);
    }

    #[test]
    fn format_round_trips() {
        let m = parse_model("universe: a b c\npred F/2: (b,c) (a,b)\npred G/1: c\npred H/3:\n").unwrap();
        assert_eq!(parse_model(&format_model(&m)).unwrap(), m);
    }

    #[test]
    fn enumeration_counts() {
        let f1 = Signature::parse("F/1").unwrap();
        let models: Vec<_> = enumerate_models(&f1, 1).unwrap().collect();
        assert_eq!(models.len(), 2);
        assert!(models[0].extension("F").unwrap().is_empty());
        assert_eq!(models[1].extension("F").unwrap(), vec![vec!["e1"]]);

        let fg1 = Signature::parse("F/1,G/1").unwrap();
        assert_eq!(enumerate_models(&fg1, 2).unwrap().count(), 16);
    }

    #[test]
    fn enumeration_is_exhaustive_without_duplicates() {
        let sig = Signature::parse("F/2,G/2").unwrap();
        let mut seen = HashSet::new();
        let mut n = 0;
        for m in enumerate_models(&sig, 2).unwrap() {
            seen.insert(format_model(&m));
            n += 1;
        }
        // 2^(2^2) choices per binary predicate, counted directly
        assert_eq!(n, 256);
        assert_eq!(seen.len(), 256);

        let sig = Signature::parse("F/1,G/2,P/0").unwrap();
        let direct = enumerate_models(&sig, 2).unwrap().map(|m| format_model(&m)).collect::<HashSet<_>>();
        assert_eq!(direct.len() as u128, model_count(&sig, 2).unwrap());
        assert_eq!(direct.len(), 4 * 16 * 2);
    }

    #[test]
    fn reordering_preserves_facts() {
        let m = parse_model("universe: a b c\npred F/2: (a,b) (c,c)\n").unwrap();
        let r = m.reordered(&[2, 0, 1]);
        assert_eq!(r.universe(), &["c", "a", "b"]);
        let fab = Atom::new("F", vec![Term::constant("a"), Term::constant("b")]);
        let fba = Atom::new("F", vec![Term::constant("b"), Term::constant("a")]);
        assert!(r.predicate_truth(&fab).unwrap());
        assert!(!r.predicate_truth(&fba).unwrap());
    }
}
