//! Exhaustive small-model census.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::ast::PrenexSentence;
use crate::error::{Error, Result};
use crate::model::{enumerate_models, model_count, Signature};
use crate::poly::Verdict;

use super::catalog::check_catalog;
use super::properties::{self, token, Failure, Observation, Property, PropertyResult};

/// Largest universe a census accepts unless told otherwise.
pub const DEFAULT_CAP: usize = 3;
/// Largest number of models a census will enumerate.
pub const MAX_MODELS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_size: usize,
    pub cap: usize,
    pub properties: Vec<Property>,
}

impl CensusOptions {
    pub fn new(max_size: usize) -> Self {
        CensusOptions {
            max_size,
            cap: DEFAULT_CAP,
            properties: Vec::new(),
        }
    }

    pub fn with_properties(mut self, properties: Vec<Property>) -> Self {
        self.properties = properties;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceCounts {
    pub sentence: String,
    pub models: u64,
    pub true_count: u64,
    pub false_count: u64,
    pub gap_count: u64,
    /// Gaps split by classical value: (classically true, classically false).
    pub gap_split: (u64, u64),
    pub divergences: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceKind {
    /// The single-variable rule and the recursive rule disagree.
    RuleDisagreement,
    /// An existential sentence is satisfied but not t-relevant.
    SatisfiedNotRelevant,
}

impl DivergenceKind {
    pub fn name(self) -> &'static str {
        match self {
            DivergenceKind::RuleDisagreement => "s2-vs-s3",
            DivergenceKind::SatisfiedNotRelevant => "satisfied-not-relevant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub kind: DivergenceKind,
    pub model: String,
    pub sentence: String,
    pub s2: Verdict,
    pub s3: Verdict,
    pub classical: bool,
}

impl Divergence {
    pub fn line(&self) -> String {
        format!(
            "DIVERGENCE\t{}\t{}\t{}\ts2={}\ts3={}\tclassical={}",
            self.kind.name(),
            self.model,
            self.sentence,
            self.s2,
            self.s3,
            token(self.classical)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub signature: Signature,
    pub max_size: usize,
    pub counts: Vec<SentenceCounts>,
    pub divergences: Vec<Divergence>,
    pub properties: Vec<PropertyResult>,
}

impl CensusReport {
    pub fn models(&self) -> u64 {
        self.counts.first().map_or(0, |c| c.models)
    }

    pub fn violations(&self) -> Vec<&PropertyResult> {
        self.properties.iter().filter(|p| p.is_violation()).collect()
    }

    pub fn property(&self, p: Property) -> Option<&PropertyResult> {
        self.properties.iter().find(|r| r.property == p)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# census {} universe sizes 1-{}, {} models",
            self.signature,
            self.max_size,
            self.models()
        );
        out.push_str("sentence\tmodels\ttrue\tfalse\tgap\tdivergences\n");
        for c in &self.counts {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                c.sentence, c.models, c.true_count, c.false_count, c.gap_count, c.divergences
            );
        }
        out.push_str("# gaps by classical value\n");
        out.push_str("sentence\tgap\tclassically_true\tclassically_false\n");
        for c in &self.counts {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", c.sentence, c.gap_count, c.gap_split.0, c.gap_split.1);
        }
        if !self.divergences.is_empty() {
            out.push_str("# divergences\n");
            for d in &self.divergences {
                out.push_str(&d.line());
                out.push('\n');
            }
        }
        if !self.properties.is_empty() {
            out.push_str("# properties\n");
            out.push_str("property\tdomain\tresult\tcounterexample\n");
            for p in &self.properties {
                out.push_str(&p.line());
                out.push('\n');
            }
        }
        out
    }
}

struct PairResult {
    obs: Observation,
    failures: Vec<Failure>,
}

/// Census without property checks.
pub fn census(catalog: &[PrenexSentence], sig: &Signature, max_size: usize) -> Result<CensusReport> {
    census_with(catalog, sig, &CensusOptions::new(max_size))
}

/// Runs every property over the census domain.
pub fn check_properties(
    sig: &Signature,
    max_size: usize,
    catalog: &[PrenexSentence],
) -> Result<Vec<PropertyResult>> {
    let opts = CensusOptions::new(max_size).with_properties(Property::ALL.to_vec());
    Ok(census_with(catalog, sig, &opts)?.properties)
}

pub fn census_with(catalog: &[PrenexSentence], sig: &Signature, opts: &CensusOptions) -> Result<CensusReport> {
    if opts.max_size > opts.cap {
        return Err(Error::CapExceeded {
            requested: opts.max_size,
            cap: opts.cap,
        });
    }
    if opts.max_size == 0 {
        return Err(Error::EmptyUniverse);
    }
    check_catalog(catalog, sig)?;
    let mut total: u64 = 0;
    for size in 1..=opts.max_size {
        let n = model_count(sig, size)
            .and_then(|n| u64::try_from(n).ok())
            .filter(|n| *n <= MAX_MODELS)
            .ok_or_else(|| {
                Error::Invalid(format!(
                    "{sig} has too many models over {size} elements (limit {MAX_MODELS})"
                ))
            })?;
        total += n;
    }
    if total > MAX_MODELS {
        return Err(Error::Invalid(format!(
            "{sig} has {total} models up to size {} (limit {MAX_MODELS})",
            opts.max_size
        )));
    }

    let selected = &opts.properties;
    let mut counts: Vec<SentenceCounts> = catalog
        .iter()
        .map(|s| SentenceCounts {
            sentence: s.to_string(),
            models: 0,
            true_count: 0,
            false_count: 0,
            gap_count: 0,
            gap_split: (0, 0),
            divergences: 0,
        })
        .collect();
    let mut divergences = Vec::new();
    let mut results: Vec<PropertyResult> = selected
        .iter()
        .map(|&property| PropertyResult {
            property,
            domain: format!(
                "{sig} sizes 1-{} x {} sentences",
                opts.max_size,
                catalog.len()
            ),
            checked: 0,
            failures: 0,
            counterexample: None,
        })
        .collect();
    let record = |results: &mut Vec<PropertyResult>, failures: &[Failure]| {
        for (p, msg) in failures {
            let r = results.iter_mut().find(|r| r.property == *p).expect("selected");
            r.failures += 1;
            r.counterexample.get_or_insert_with(|| msg.clone());
        }
    };

    for s in catalog {
        let failures = properties::check_sentence(s, selected)?;
        record(&mut results, &failures);
    }

    for size in 1..=opts.max_size {
        let models = enumerate_models(sig, size)?;
        let n = models.total() as u64;
        let per_model: Vec<Vec<PairResult>> = (0..n)
            .into_par_iter()
            .map(|k| {
                let m = models.model_at(k as u128);
                catalog
                    .iter()
                    .map(|s| {
                        let obs = properties::observe(s, &m)?;
                        let failures = properties::check(s, &m, &obs, selected)?;
                        Ok(PairResult { obs, failures })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        for (k, row) in per_model.iter().enumerate() {
            let mut summary = None;
            for (i, pair) in row.iter().enumerate() {
                let c = &mut counts[i];
                c.models += 1;
                match pair.obs.verdict {
                    Verdict::True => c.true_count += 1,
                    Verdict::False => c.false_count += 1,
                    Verdict::Gap => {
                        c.gap_count += 1;
                        if pair.obs.classical {
                            c.gap_split.0 += 1;
                        } else {
                            c.gap_split.1 += 1;
                        }
                    }
                }
                let mut flag = |kind| {
                    let model = summary
                        .get_or_insert_with(|| models.model_at(k as u128).summary())
                        .clone();
                    c.divergences += 1;
                    divergences.push(Divergence {
                        kind,
                        model,
                        sentence: catalog[i].to_string(),
                        s2: pair.obs.s2.expect("single quantifier"),
                        s3: pair.obs.verdict,
                        classical: pair.obs.classical,
                    });
                };
                if pair.obs.s2.is_some_and(|s2| s2 != pair.obs.verdict) {
                    flag(DivergenceKind::RuleDisagreement);
                }
                if pair.obs.satisfied_not_relevant {
                    flag(DivergenceKind::SatisfiedNotRelevant);
                }
                record(&mut results, &pair.failures);
            }
        }
        for r in &mut results {
            r.checked += n * catalog.len() as u64;
        }
    }

    Ok(CensusReport {
        signature: sig.clone(),
        max_size: opts.max_size,
        counts,
        divergences,
        properties: results,
    })
}
