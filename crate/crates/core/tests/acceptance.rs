//! Acceptance criteria 1-7. Prints one PASS/FAIL line per criterion.
//!
//! Criterion 5(c) cannot pass: satisfaction ranges over t-relevant instances
//! only, so skipping an irrelevant instance can flip the classical value.
//! The run reports FAIL for it, then checks that every violation is of that
//! kind. The process fails on any other outcome.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestCaseError, TestRunner};
use truthrel::ast::{parse_formula, parse_prenex, print_formula, prenex_negate};
use truthrel::classical::{eval_classical, Environment};
use truthrel::harness::oracle;
use truthrel::harness::{builtin_catalog, census, census_with, fixtures, CensusOptions, DivergenceKind, Property};
use truthrel::model::{enumerate_models, Interpretation, Signature};
use truthrel::mono;
use truthrel::poly::{self, Evaluator, RelevanceMode, Verdict};
use truthrel::prop_relevance::{is_truth_determining, parse_stuck, t_redundant_atoms, truth_table, StuckMap};
use truthrel::{Atom, PrenexSentence, Quantifier};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn prop_suite() -> Check {
    let none = StuckMap::new();
    let p = [Atom::prop("P")];
    for text in ["P | ~P | Q", "P -> (Q -> P)"] {
        let f = parse_formula(text).map_err(err)?;
        ensure(is_truth_determining(&f, &p, &none).map_err(err)?, || format!("{{P}} does not determine `{text}`"))?;
        ensure(oracle::prop_determines(&f, &p, &none).map_err(err)?, || format!("oracle: {{P}} does not determine `{text}`"))?;
    }
    let f = parse_formula("~P | Q").map_err(err)?;
    let q = Atom::prop("Q");
    let at0 = parse_stuck("P=0").map_err(err)?;
    let at1 = parse_stuck("P=1").map_err(err)?;
    ensure(t_redundant_atoms(&f, &at0).map_err(err)?.contains(&q), || "Q not redundant under P=0".into())?;
    ensure(!t_redundant_atoms(&f, &at1).map_err(err)?.contains(&q), || "Q redundant under P=1".into())?;
    ensure(oracle::prop_determines(&f, &p, &at0).map_err(err)?, || "oracle: {P} does not determine under P=0".into())?;
    ensure(!oracle::prop_determines(&f, &p, &at1).map_err(err)?, || "oracle: {P} determines under P=1".into())?;
    Ok("{P} determines P|~P|Q and P->(Q->P); Q redundant in ~P|Q under P=0 only".into())
}

fn column(text: &str) -> Result<Vec<(Vec<bool>, bool)>, String> {
    truth_table(&parse_formula(text).map_err(err)?).map_err(err)
}

fn monadic_suite() -> Check {
    let rows = |v: [bool; 4]| -> Vec<(Vec<bool>, bool)> {
        [(false, false), (false, true), (true, false), (true, true)]
            .iter()
            .zip(v)
            .map(|(&(j, s), out)| (vec![j, s], out))
            .collect()
    };
    ensure(column("(J & ~J) -> S")? == rows([true; 4]), || "(J & ~J) -> S is not 1 on every row".into())?;
    ensure(
        truth_table(&parse_formula("J & ~J").map_err(err)?).map_err(err)?.iter().all(|(_, v)| !v),
        || "J & ~J is not always 0".into(),
    )?;
    ensure(column("J -> S")? == rows([true, true, false, true]), || "J -> S table differs".into())?;

    let children = fixtures::fixture_model("CHILDREN").ok_or("no CHILDREN model")?;
    let sentence = parse_prenex("(x)(J(x) -> S(x))").map_err(err)?;
    let matrix = sentence.matrix();
    let mut got = Vec::new();
    for c in children.universe() {
        let inst = matrix.substitute("x", c);
        let atoms = inst.atoms();
        let j = children.predicate_truth(&atoms[0]).map_err(err)?;
        let s = children.predicate_truth(&atoms[1]).map_err(err)?;
        let v = eval_classical(&inst, &children, &Environment::new()).map_err(err)?;
        got.push((inst.to_string(), j, s, v, 1 + 2 * j as usize + s as usize));
    }
    let want = [
        ("J(a) -> S(a)", false, true, true, 2),
        ("J(b) -> S(b)", false, true, true, 2),
        ("J(c) -> S(c)", false, false, true, 1),
    ];
    ensure(
        got.iter().zip(want).all(|(g, w)| (g.0.as_str(), g.1, g.2, g.3, g.4) == w) && got.len() == 3,
        || format!("ground instances differ: {got:?}"),
    )?;
    let atoms = matrix.atoms();
    ensure(mono::is_td_under_interpretation(matrix, "x", &atoms[..1], &children).map_err(err)?, || "J(x) not determining".into())?;
    ensure(!mono::is_td_under_interpretation(matrix, "x", &atoms[1..], &children).map_err(err)?, || "S(x) determining".into())?;
    let contradiction = parse_prenex("(x)((J(x) & ~J(x)) -> S(x))").map_err(err)?;
    ensure(!mono::is_t_relevant_any(contradiction.matrix(), "x").map_err(err)?, || "(J&~J)->S relevant".into())?;

    let mut n = 0;
    for f in fixtures::fixtures().into_iter().filter(|f| !f.model.starts_with("EX")) {
        f.check()?;
        n += 1;
    }
    let u1b = fixtures::fixture_model("U1B").ok_or("no U1B model")?;
    let v = |text: &str| -> Result<Verdict, String> {
        let s = poly::Sentence::parse(text).map_err(err)?;
        Ok(poly::evaluate_sentence(&s, &u1b, RelevanceMode::Interp).map_err(err)?.verdict)
    };
    ensure(v("(x)~(F(x) & G(x))")? == Verdict::Gap, || "U1b (x)~(F&G) not GAP".into())?;
    ensure(v("(Ex)(F(x) & G(x))")? != Verdict::False, || "U1b (Ex)(F&G) FALSE".into())?;
    ensure(v("(Ex)(F(x) | G(x))")? == Verdict::True, || "U1b (Ex)(F|G) not TRUE".into())?;
    Ok(format!("tables, ground instances and {n} monadic fixtures match"))
}

fn polyadic_suite() -> Check {
    let mut n = 0;
    let mut conditions = 0;
    for f in fixtures::fixtures().into_iter().filter(|f| f.model.starts_with("EX")) {
        f.check()?;
        n += 1;
        conditions += f.conditions.len();
    }
    Ok(format!("{n} fixtures, {conditions} model conditions checked"))
}

const DOMAINS: &[(&str, usize)] = &[("F/2,G/2", 2), ("F/1,G/1", 3)];

fn oracle_equivalence() -> Check {
    let mut parts = Vec::new();
    for &(sig, max) in DOMAINS {
        let sig = Signature::parse(sig).map_err(err)?;
        let catalog = builtin_catalog(&sig);
        let opts = CensusOptions::new(max).with_properties(vec![Property::OracleEquivalence]);
        let r = census_with(&catalog, &sig, &opts).map_err(err)?;
        let p = r.property(Property::OracleEquivalence).ok_or("no result")?;
        ensure(p.passed(), || p.line())?;
        parts.push(format!("{sig} sizes 1-{max}: {} models x {} sentences", r.models(), catalog.len()));
    }
    Ok(parts.join("; "))
}

/// Whether evaluating `prefix` skips an instance whose remainder is not
/// relevant, at any level.
fn skips(ev: &mut Evaluator, prefix: &[Quantifier], env: &Environment, m: &Interpretation) -> Result<bool, String> {
    let [q, rest @ ..] = prefix else { return Ok(false) };
    if rest.is_empty() {
        return Ok(false);
    }
    let t = ev.relevant_instances(&q.var, rest, env).map_err(err)?;
    if t.len() < m.size() {
        return Ok(true);
    }
    for c in m.universe() {
        let mut env = env.clone();
        env.insert(q.var.clone(), c.clone());
        if skips(ev, rest, &env, m)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Counts classical-soundness violations and those not explained by a
/// skipped instance.
fn soundness_analysis(catalog: &[PrenexSentence], sig: &Signature, max: usize) -> Result<(u64, u64), String> {
    let (mut violations, mut unexplained) = (0, 0);
    for size in 1..=max {
        let models = enumerate_models(sig, size).map_err(err)?;
        for k in 0..models.total() {
            let m = models.model_at(k);
            for s in catalog {
                let v = poly::verdict(s, &m, RelevanceMode::Interp).map_err(err)?;
                let classical = eval_classical(&s.to_formula(), &m, &Environment::new()).map_err(err)?;
                let wrong = match v {
                    Verdict::True => !classical,
                    Verdict::False => classical,
                    Verdict::Gap => false,
                };
                if !wrong {
                    continue;
                }
                violations += 1;
                let witness = if v == Verdict::True { s.clone() } else { prenex_negate(s) };
                let mut ev = Evaluator::new(witness.matrix(), &m, RelevanceMode::Interp).map_err(err)?;
                if witness.prefix().len() < 2 || !skips(&mut ev, witness.prefix(), &Environment::new(), &m)? {
                    unexplained += 1;
                }
            }
        }
    }
    Ok((violations, unexplained))
}

enum Status {
    Pass(String),
    Fail(String),
    /// Fails as analyzed; the analysis itself held.
    KnownFail(String),
}

fn property_suites() -> Status {
    match property_suites_inner() {
        Ok(s) => s,
        Err(e) => Status::Fail(e),
    }
}

fn property_suites_inner() -> Result<Status, String> {
    let props = vec![
        Property::Exclusivity,
        Property::Mirror,
        Property::ClassicalSoundness,
        Property::RelevanceDuality,
        Property::BlockCommutation,
    ];
    let mut other = Vec::new();
    let mut soundness = Vec::new();
    let mut unexplained = 0;
    for &(sig, max) in DOMAINS.iter().chain(&[("F/3,G/3", 2)]) {
        let sig = Signature::parse(sig).map_err(err)?;
        let catalog = builtin_catalog(&sig);
        let opts = CensusOptions::new(max).with_properties(props.clone());
        let r = census_with(&catalog, &sig, &opts).map_err(err)?;
        for p in &r.properties {
            if p.property == Property::ClassicalSoundness {
                let (count, bad) = soundness_analysis(&catalog, &sig, max)?;
                if count != p.failures {
                    return Err(format!("{sig}: census counts {} soundness failures, recount {count}", p.failures));
                }
                unexplained += bad;
                soundness.push(format!("{sig} sizes 1-{max}: {count}"));
            } else if !p.passed() {
                other.push(p.line());
            }
        }
    }
    let summary = format!(
        "(a) exclusivity (b) mirror (d) relevance duality (e) block commutation: {}; (c) classical soundness violations {}",
        if other.is_empty() { "0 violations".to_string() } else { other.join(" | ") },
        soundness.join(", ")
    );
    Ok(if !other.is_empty() || unexplained > 0 {
        Status::Fail(format!("{summary}; {unexplained} soundness violations without a skipped instance"))
    } else if soundness.iter().all(|s| s.ends_with(": 0")) {
        Status::Pass(summary)
    } else {
        Status::KnownFail(format!(
            "{summary}; every one comes from satisfaction skipping an instance that is not t-relevant"
        ))
    })
}

fn divergences() -> Check {
    let sig = Signature::parse("F/1,G/1").map_err(err)?;
    let r = census(&builtin_catalog(&sig), &sig, 3).map_err(err)?;
    let text = r.render();
    let mut m = Interpretation::new(["e1"]).map_err(err)?;
    m.declare("F", 1).map_err(err)?;
    m.declare("G", 1).map_err(err)?;
    m.insert("F", &["e1"]).map_err(err)?;
    let note = r.divergences.iter().find(|d| {
        d.kind == DivergenceKind::SatisfiedNotRelevant
            && d.sentence == "(Ex)(F(x) | G(x))"
            && d.model == m.summary()
    });
    let note = note.ok_or("no satisfied-not-relevant line for (Ex)(F(x) | G(x)) with F universal")?;
    ensure(text.contains(&note.line()), || "divergence line missing from the report".into())?;
    let rule = r
        .divergences
        .iter()
        .find(|d| d.kind == DivergenceKind::RuleDisagreement)
        .ok_or("no s2-vs-s3 line")?;
    ensure(text.contains(&rule.line()), || "rule divergence line missing from the report".into())?;
    let out = truthrel::cli::run([
        "truthrel",
        "census",
        "--signature",
        "F/1,G/1",
        "--max-universe",
        "3",
        "--check-properties",
        "exists-satisfied-relevant,s2-s3-agreement",
    ]);
    ensure(out.code == 0, || format!("census exited {}: {}", out.code, out.stderr))?;
    ensure(
        out.stdout.matches("documented divergence").count() == 2,
        || "property report does not mark both divergences".into(),
    )?;
    Ok(format!("{} flagged lines, e.g. {}", r.divergences.len(), note.line()))
}

fn round_trip() -> Check {
    let mut runner = TestRunner::new(Config {
        cases: 10_000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&common::formula(6), |f| {
            if common::depth(&f) > 6 {
                return Err(TestCaseError::fail(format!("depth {} > 6", common::depth(&f))));
            }
            let text = print_formula(&f);
            let back = parse_formula(&text).map_err(|e| TestCaseError::fail(format!("`{text}`: {e}")))?;
            if back != f {
                return Err(TestCaseError::fail(format!("`{text}` parsed back as {back:?}")));
            }
            Ok(())
        })
        .map_err(err)?;
    Ok("10000 random formulas of depth <= 6 round-trip".into())
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, Duration, Box<dyn Fn() -> Status>)> = vec![
        (1, Duration::from_secs(1), Box::new(|| status(prop_suite()))),
        (2, Duration::from_secs(1), Box::new(|| status(monadic_suite()))),
        (3, Duration::from_secs(5), Box::new(|| status(polyadic_suite()))),
        (4, Duration::from_secs(120), Box::new(|| status(oracle_equivalence()))),
        (5, Duration::from_secs(300), Box::new(property_suites)),
        (6, Duration::from_secs(60), Box::new(|| status(divergences()))),
        (7, Duration::from_secs(10), Box::new(|| status(round_trip()))),
    ];
    let mut ok = true;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let slow = took > limit;
        let time = format!("{:.2}s, limit {}s", took.as_secs_f64(), limit.as_secs());
        match outcome {
            Status::Pass(msg) if !slow => println!("PASS criterion {n}: {msg} ({time})"),
            Status::Pass(msg) => {
                ok = false;
                println!("FAIL criterion {n}: too slow; {msg} ({time})");
            }
            Status::KnownFail(msg) => {
                ok &= !slow;
                println!("FAIL criterion {n}: {msg} ({time})");
            }
            Status::Fail(msg) => {
                ok = false;
                println!("FAIL criterion {n}: {msg} ({time})");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn status(c: Check) -> Status {
    match c {
        Ok(msg) => Status::Pass(msg),
        Err(msg) => Status::Fail(msg),
    }
}
