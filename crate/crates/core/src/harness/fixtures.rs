//! Worked examples as executable fixtures.
//!
//! Models for the polyadic examples are reconstructions: each one carries
//! the conditions its picture is described by, and those are checked with
//! the brute-force oracle before any verdict is compared.

use std::fmt::Write as _;

use crate::ast::parse_prenex;
use crate::classical;
use crate::error::{Error, Result};
use crate::model::{parse_model, Interpretation};
use crate::mono;
use crate::poly::{self, Evaluation, RelevanceMode, Sentence, Verdict};

use super::oracle;
use super::Semantics;

/// A named model in the file format.
#[derive(Debug, Clone, Copy)]
pub struct FixtureModel {
    pub name: &'static str,
    pub text: &'static str,
    pub description: &'static str,
}

pub const MODELS: &[FixtureModel] = &[
    FixtureModel {
        name: "CHILDREN",
        text: "universe: a b c\npred J/1:\npred S/1: a b\n",
        description: "three children, none of them John's, two asleep",
    },
    FixtureModel {
        name: "U1",
        text: "universe: a b c d e\npred F/1: a b\npred G/1: d e\n",
        description: "F and G both inhabited, disjoint, some objects in neither",
    },
    FixtureModel {
        name: "E1",
        text: "universe: a b c d e\npred F/1: a b c\npred G/1: c d e\n",
        description: "F and G overlap",
    },
    FixtureModel {
        name: "U1B",
        text: "universe: a b\npred F/1: a\npred G/1:\n",
        description: "F mixed, G empty",
    },
    FixtureModel {
        name: "EX2",
        text: "universe: a b c d\npred F/2: (a,a) (a,b)\npred G/2: (a,c) (a,d)\n",
        description: "one row holds both F and G, no column holds both",
    },
    FixtureModel {
        name: "EX3",
        text: "universe: a b\npred F/2: (a,a)\npred G/2: (a,a)\n",
        description: "a single shared cell",
    },
    FixtureModel {
        name: "EX4",
        text: "universe: a b\npred F/2: (a,a)\npred G/2: (a,b)\n",
        description: "row a holds F and G in different cells",
    },
    FixtureModel {
        name: "EX4B",
        text: "universe: a b\npred F/2: (a,a) (b,a)\npred G/2: (a,a) (b,a)\n",
        description: "every row has a shared cell",
    },
    FixtureModel {
        name: "EX5",
        text: "universe: a b\npred F/2: (a,a)\npred G/2:\n",
        description: "G empty",
    },
    FixtureModel {
        name: "EX6",
        text: "universe: a b\npred F/2: (a,a) (a,b)\npred G/2: (a,a) (a,b)\n",
        description: "every column has a shared cell",
    },
    FixtureModel {
        name: "EX6B",
        text: "universe: a b\npred F/2: (a,a) (a,b)\npred G/2: (b,a) (a,b)\n",
        description: "column a holds F and G in different cells",
    },
    FixtureModel {
        name: "EX7",
        text: "universe: a b\npred F/2: (a,a)\npred G/2: (b,b)\n",
        description: "F and G never share a column",
    },
    FixtureModel {
        name: "EX8",
        text: "universe: a b\npred F/3: (a,a,a)\npred G/3: (b,a,a) (a,b,a) (a,a,b)\n",
        description: "slice z=a is row-and-column relevant and overlap-free; slice z=b irrelevant",
    },
    FixtureModel {
        name: "EX9",
        text: "universe: a b\npred F/3: (a,a,a) (a,a,b) (a,b,a) (a,b,b)\npred G/3: (a,a,a) (a,a,b) (a,b,a) (a,b,b)\n",
        description: "for every z and y the object a is in both F and G",
    },
    FixtureModel {
        name: "EX10",
        text: "universe: a b\npred F/3: (a,a,a) (b,a,a)\npred G/3: (a,a,a) (b,a,b)\n",
        description: "slice z=a has a shared cell; slice z=b is shaped like EX2",
    },
    FixtureModel {
        name: "EX11",
        text: "universe: a b\npred F/3: (a,a,a)\npred G/3: (a,b,a) (a,a,b)\n",
        description: "slice z=a is relevant and overlap-free; slice z=b empty",
    },
    FixtureModel {
        name: "EX12",
        text: "universe: a b\npred F/3: (a,a,a) (b,b,a)\npred G/3: (a,a,b) (b,b,b)\n",
        description: "each slice has one overlap-free relevant row, at a different x",
    },
];

pub fn fixture_model(name: &str) -> Option<Interpretation> {
    MODELS
        .iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .map(|m| parse_model(m.text).expect("fixture models parse"))
}

/// A stated property of a fixture model, checked before its verdicts.
#[derive(Debug, Clone, Copy)]
pub struct Condition {
    pub description: &'static str,
    pub check: fn(&Interpretation) -> Result<bool>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub model: &'static str,
    pub sentence: &'static str,
    pub expected: Verdict,
    pub semantics: Semantics,
    pub mode: RelevanceMode,
    pub note: &'static str,
    pub conditions: Vec<Condition>,
}

fn rel(text: &str, m: &Interpretation) -> Result<bool> {
    oracle::sentence_relevant(&parse_prenex(text)?, m, RelevanceMode::Interp)
}

fn sat(text: &str, m: &Interpretation) -> Result<bool> {
    classical::eval_classical_bruteforce(&parse_prenex(text)?.to_formula(), m)
}

fn any<T>(items: &[T], mut f: impl FnMut(&T) -> Result<bool>) -> Result<bool> {
    for x in items {
        if f(x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn all<T>(items: &[T], mut f: impl FnMut(&T) -> Result<bool>) -> Result<bool> {
    for x in items {
        if !f(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pairs(m: &Interpretation) -> Vec<(String, String)> {
    let u = m.universe();
    u.iter()
        .flat_map(|a| u.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

fn triples(m: &Interpretation) -> Vec<(String, String, String)> {
    let u = m.universe();
    pairs(m)
        .into_iter()
        .flat_map(|(a, b)| u.iter().map(move |c| (a.clone(), b.clone(), c.clone())))
        .collect()
}

fn conditions(model: &str) -> Vec<Condition> {
    let c = |description, check| Condition { description, check };
    match model {
        "U1" => vec![
            c("F and G are both mixed", |m| {
                let f = mono::view_status(m, &view("F(x)"))?;
                let g = mono::view_status(m, &view("G(x)"))?;
                Ok(f == mono::Status::Mixed && g == mono::Status::Mixed)
            }),
            c("no object is in both F and G", |m| sat("(x)~(F(x) & G(x))", m)),
        ],
        "E1" => vec![c("some object is in both F and G", |m| sat("(Ex)(F(x) & G(x))", m))],
        "U1B" => vec![
            c("F is mixed and G is empty", |m| {
                let f = mono::view_status(m, &view("F(x)"))?;
                let g = mono::view_status(m, &view("G(x)"))?;
                Ok(f == mono::Status::Mixed && g == mono::Status::Empty)
            }),
        ],
        "CHILDREN" => vec![
            c("J is empty", |m| Ok(mono::view_status(m, &view("J(x)"))? == mono::Status::Empty)),
            c("S holds of a and b but not c", |m| Ok(sat("S(a) & S(b) & ~S(c)", m)?)),
        ],
        "EX2" => vec![
            c("some row x makes (y)(F(x,y) -> ~G(x,y)) t-relevant", |m| {
                any(m.universe(), |a| rel(&format!("(y)(F({a},y) -> ~G({a},y))"), m))
            }),
            c("no column y makes (x)(F(x,y) -> ~G(x,y)) t-relevant", |m| {
                Ok(!any(m.universe(), |b| rel(&format!("(x)(F(x,{b}) -> ~G(x,{b}))"), m))?)
            }),
            c("F and G do not overlap", |m| sat("(x)(y)(F(x,y) -> ~G(x,y))", m)),
        ],
        "EX3" => vec![c("F and G share a cell", |m| sat("(Ex)(Ey)(F(x,y) & G(x,y))", m))],
        "EX4" => vec![c(
            "some row a makes (y)(F(a,y) -> ~G(a,y)) t-relevant and satisfied",
            |m| {
                any(m.universe(), |a| {
                    let t = format!("(y)(F({a},y) -> ~G({a},y))");
                    Ok(rel(&t, m)? && sat(&t, m)?)
                })
            },
        )],
        "EX4B" => vec![c(
            "every row a makes (Ey)(F(a,y) & G(a,y)) t-relevant and satisfied",
            |m| {
                all(m.universe(), |a| {
                    let t = format!("(Ey)(F({a},y) & G({a},y))");
                    Ok(rel(&t, m)? && sat(&t, m)?)
                })
            },
        )],
        "EX5" => vec![
            c("G is empty", |m| Ok(!sat("(Ex)(Ey)G(x,y)", m)?)),
            c("F is not empty", |m| sat("(Ex)(Ey)F(x,y)", m)),
        ],
        "EX6" => vec![c(
            "every column b makes (Ex)(F(x,b) & G(x,b)) t-relevant and satisfied",
            |m| {
                all(m.universe(), |b| {
                    let t = format!("(Ex)(F(x,{b}) & G(x,{b}))");
                    Ok(rel(&t, m)? && sat(&t, m)?)
                })
            },
        )],
        "EX6B" => vec![c(
            "some column b makes (Ex)(F(x,b) & G(x,b)) t-relevant but unsatisfied",
            |m| {
                any(m.universe(), |b| {
                    let t = format!("(Ex)(F(x,{b}) & G(x,{b}))");
                    Ok(rel(&t, m)? && !sat(&t, m)?)
                })
            },
        )],
        "EX7" => vec![c("no column b makes (Ex)(F(x,b) & G(x,b)) t-relevant", |m| {
            Ok(!any(m.universe(), |b| rel(&format!("(Ex)(F(x,{b}) & G(x,{b}))"), m))?)
        })],
        "EX8" => vec![
            c(
                "for some c there are a, b with (x)(F(x,b,c) -> ~G(x,b,c)) and (y)(F(a,y,c) -> ~G(a,y,c)) t-relevant",
                |m| {
                    any(&triples(m), |(a, b, c)| {
                        Ok(rel(&format!("(x)(F(x,{b},{c}) -> ~G(x,{b},{c}))"), m)?
                            && rel(&format!("(y)(F({a},y,{c}) -> ~G({a},y,{c}))"), m)?)
                    })
                },
            ),
            c(
                "every c making (x)(y)(F(x,y,c) -> ~G(x,y,c)) t-relevant also satisfies it",
                |m| {
                    all(m.universe(), |c| {
                        let t = format!("(x)(y)(F(x,y,{c}) -> ~G(x,y,{c}))");
                        Ok(!rel(&t, m)? || sat(&t, m)?)
                    })
                },
            ),
            c(
                "for the same a, b, c also (z)(F(a,b,z) -> ~G(a,b,z)) is t-relevant",
                |m| {
                    any(&triples(m), |(a, b, c)| {
                        Ok(rel(&format!("(x)(F(x,{b},{c}) -> ~G(x,{b},{c}))"), m)?
                            && rel(&format!("(y)(F({a},y,{c}) -> ~G({a},y,{c}))"), m)?
                            && rel(&format!("(z)(F({a},{b},z) -> ~G({a},{b},z))"), m)?)
                    })
                },
            ),
        ],
        "EX9" => vec![
            c(
                "for every c some b makes (Ex)(F(x,b,c) & G(x,b,c)) t-relevant",
                |m| {
                    all(m.universe(), |c| {
                        any(m.universe(), |b| rel(&format!("(Ex)(F(x,{b},{c}) & G(x,{b},{c}))"), m))
                    })
                },
            ),
            c(
                "every t-relevant (Ex)(F(x,b,c) & G(x,b,c)) is satisfied",
                |m| {
                    all(&pairs(m), |(b, c)| {
                        let t = format!("(Ex)(F(x,{b},{c}) & G(x,{b},{c}))");
                        Ok(!rel(&t, m)? || sat(&t, m)?)
                    })
                },
            ),
        ],
        "EX10" => vec![
            c(
                "some slice c makes (Ex)(Ey)(F(c,x,y) & G(c,x,y)) t-relevant and satisfied",
                |m| {
                    any(m.universe(), |c| {
                        let t = format!("(Ex)(Ey)(F({c},x,y) & G({c},x,y))");
                        Ok(rel(&t, m)? && sat(&t, m)?)
                    })
                },
            ),
            c(
                "some slice c is shaped like EX2: (Ex)(Ey)(F(c,x,y) & G(c,x,y)) not t-relevant, yet some row is",
                |m| {
                    any(m.universe(), |c| {
                        Ok(!rel(&format!("(Ex)(Ey)(F({c},x,y) & G({c},x,y))"), m)?
                            && any(m.universe(), |a| {
                                rel(&format!("(y)(F({c},{a},y) -> ~G({c},{a},y))"), m)
                            })?)
                    })
                },
            ),
            c("every t-relevant slice is satisfied", |m| {
                all(m.universe(), |c| {
                    let t = format!("(Ex)(Ey)(F({c},x,y) & G({c},x,y))");
                    Ok(!rel(&t, m)? || sat(&t, m)?)
                })
            }),
        ],
        "EX11" => vec![c(
            "some slice c makes (x)(y)(F(c,x,y) -> ~G(c,x,y)) t-relevant and satisfied",
            |m| {
                any(m.universe(), |c| {
                    let t = format!("(x)(y)(F({c},x,y) -> ~G({c},x,y))");
                    Ok(rel(&t, m)? && sat(&t, m)?)
                })
            },
        )],
        "EX12" => vec![
            c(
                "every slice c has a row a with (y)(F(c,a,y) -> ~G(c,a,y)) t-relevant and satisfied",
                |m| all(m.universe(), |c| Ok(!good_rows(m, c)?.is_empty())),
            ),
            c("the good rows differ between slices", |m| {
                let rows = m
                    .universe()
                    .iter()
                    .map(|c| good_rows(m, c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(rows.windows(2).all(|w| w[0] != w[1]))
            }),
        ],
        _ => Vec::new(),
    }
}

fn good_rows(m: &Interpretation, c: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for a in m.universe() {
        let t = format!("(y)(F({c},{a},y) -> ~G({c},{a},y))");
        if rel(&t, m)? && sat(&t, m)? {
            out.push(a.clone());
        }
    }
    Ok(out)
}

fn view(text: &str) -> mono::ViewAtom {
    let s = parse_prenex(&format!("(x){text}")).expect("view text");
    mono::ViewAtom {
        atom: s.matrix().atoms()[0].clone(),
        var: "x".into(),
    }
}

struct Case(&'static str, &'static str, Verdict, Semantics, RelevanceMode, &'static str);

const CASES: &[Case] = &[
    Case("U1", "(x)~(F(x) & G(x))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "disjoint inhabited predicates"),
    Case("U1", "(x)(~F(x) | ~G(x))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "disjoint inhabited predicates"),
    Case("U1", "(x)(F(x) -> ~G(x))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "disjoint inhabited predicates"),
    Case("U1", "~(Ex)(F(x) & G(x))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "negated existential form of the same claim"),
    Case("U1", "(x)(F(x) -> ~G(x))", Verdict::True, Semantics::S2, RelevanceMode::Interp, "single-variable rule agrees"),
    Case("E1", "(Ex)(F(x) & G(x))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "overlap present"),
    Case("E1", "(x)(F(x) -> ~G(x))", Verdict::False, Semantics::S2, RelevanceMode::Interp, "overlap makes the disjointness claim false"),
    Case("U1B", "(x)~(F(x) & G(x))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "satisfied but G empty alone decides it"),
    Case("U1B", "(x)(F(x) -> ~G(x))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "none of the disjointness forms is true"),
    Case("U1B", "~(Ex)(F(x) & G(x))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "none of the disjointness forms is true"),
    Case("U1B", "(Ex)(F(x) & G(x))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "the negation of a non-true sentence is not false"),
    Case("U1B", "(Ex)(F(x) | G(x))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "F mixed, so F alone does not decide it"),
    Case("U1B", "(Ex)(F(x) | G(x))", Verdict::True, Semantics::S2, RelevanceMode::Interp, "F mixed, so F alone does not decide it"),
    Case("CHILDREN", "(x)(J(x) -> S(x))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "J stuck at 0 decides it; S is redundant"),
    Case("CHILDREN", "(x)(J(x) -> S(x))", Verdict::Gap, Semantics::S2, RelevanceMode::Interp, "J stuck at 0 decides it; S is redundant"),
    Case("CHILDREN", "(x)((J(x) & ~J(x)) -> S(x))", Verdict::Gap, Semantics::S2, RelevanceMode::Any, "constant matrix, irrelevant under any interpretation"),
    Case("CHILDREN", "(x)((J(x) & ~J(x)) -> S(x))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "constant matrix"),
    Case("EX2", "(x)(y)(F(x,y) -> ~G(x,y))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "no witness column, so not t-relevant"),
    Case("EX2", "(Ex)(Ey)(F(x,y) & G(x,y))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "the negation is a gap too"),
    Case("EX3", "(Ex)(Ey)(F(x,y) & G(x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "a shared cell"),
    Case("EX3", "(x)(y)(F(x,y) -> ~G(x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX4", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "relevant row a is satisfied"),
    Case("EX4", "(x)(Ey)(F(x,y) & G(x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX4B", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "every relevant row overlaps"),
    Case("EX4B", "(x)(Ey)(F(x,y) & G(x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "every relevant row overlaps"),
    Case("EX5", "(Ex)(y)(F(x,y) -> ~G(x,y))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "G empty, no row relevant"),
    Case("EX5", "(x)(Ey)(F(x,y) & G(x,y))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "G empty, no row relevant"),
    Case("EX6", "(y)(Ex)(F(x,y) & G(x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "every relevant column overlaps"),
    Case("EX6", "(Ey)(x)(F(x,y) -> ~G(x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX6B", "(y)(Ex)(F(x,y) & G(x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "a relevant column without overlap"),
    Case("EX6B", "(Ey)(x)(F(x,y) -> ~G(x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "a relevant column without overlap"),
    Case("EX7", "(y)(Ex)(F(x,y) & G(x,y))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "no relevant column; all needs one or more"),
    Case("EX7", "(Ey)(x)(F(x,y) -> ~G(x,y))", Verdict::Gap, Semantics::S3, RelevanceMode::Interp, "no relevant column"),
    Case("EX8", "(z)(x)(y)(F(x,y,z) -> ~G(x,y,z))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "one witness tuple relevant in every direction"),
    Case("EX8", "(Ez)(Ex)(Ey)(F(x,y,z) & G(x,y,z))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX9", "(z)(y)(Ex)(F(x,y,z) & G(x,y,z))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "every relevant instance satisfied"),
    Case("EX9", "(Ez)(Ey)(x)(F(x,y,z) -> ~G(x,y,z))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX10", "(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "gap-shaped slices do not count"),
    Case("EX10", "(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX11", "(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "one relevant slice is satisfied"),
    Case("EX11", "(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
    Case("EX12", "(z)(Ex)(y)(F(z,x,y) -> ~G(z,x,y))", Verdict::True, Semantics::S3, RelevanceMode::Interp, "each slice has its own good row"),
    Case("EX12", "(Ez)(x)(Ey)(F(z,x,y) & G(z,x,y))", Verdict::False, Semantics::S3, RelevanceMode::Interp, "negation of a true sentence"),
];

pub fn fixtures() -> Vec<Fixture> {
    let mut seen: Vec<&str> = Vec::new();
    CASES
        .iter()
        .map(|Case(model, sentence, expected, semantics, mode, note)| {
            let n = seen.iter().filter(|m| *m == model).count() + 1;
            seen.push(model);
            Fixture {
                id: format!("{model}.{n}"),
                model,
                sentence,
                expected: *expected,
                semantics: *semantics,
                mode: *mode,
                note,
                conditions: conditions(model),
            }
        })
        .collect()
}

/// What running a fixture produced.
#[derive(Debug, Clone)]
pub struct FixtureRun {
    pub failed_conditions: Vec<&'static str>,
    pub verdict: Verdict,
    pub trace: Option<String>,
}

impl Fixture {
    pub fn model(&self) -> Interpretation {
        fixture_model(self.model).expect("fixture model exists")
    }

    pub fn run(&self) -> Result<FixtureRun> {
        let m = self.model();
        let mut failed_conditions = Vec::new();
        for c in &self.conditions {
            if !(c.check)(&m)? {
                failed_conditions.push(c.description);
            }
        }
        let (verdict, trace) = evaluate_with(self.semantics, self.sentence, &m, self.mode)?;
        Ok(FixtureRun {
            failed_conditions,
            verdict,
            trace,
        })
    }

    /// Ok when every condition holds and the verdict matches.
    pub fn check(&self) -> std::result::Result<(), String> {
        let run = self.run().map_err(|e| format!("{}: {e}", self.id))?;
        let mut msg = String::new();
        for c in &run.failed_conditions {
            let _ = writeln!(msg, "{} on {}: condition fails: {c}", self.id, self.model);
        }
        if run.verdict != self.expected {
            let _ = writeln!(
                msg,
                "{} on {}: `{}` gave {} but {} was expected ({})",
                self.id, self.model, self.sentence, run.verdict, self.expected, self.note
            );
            if let Some(t) = &run.trace {
                msg.push_str(t);
            }
        }
        if msg.is_empty() {
            Ok(())
        } else {
            Err(msg)
        }
    }
}

/// Evaluates under either rule set; the trace is only available for the
/// recursive rules.
pub fn evaluate_with(
    semantics: Semantics,
    text: &str,
    m: &Interpretation,
    mode: RelevanceMode,
) -> Result<(Verdict, Option<String>)> {
    let s = Sentence::parse(text)?;
    match semantics {
        Semantics::S3 => {
            let Evaluation { verdict, trace } = poly::evaluate_sentence(&s, m, mode)?;
            Ok((verdict, Some(trace.render())))
        }
        Semantics::S2 => {
            if s.prenex.prefix().len() != 1 {
                return Err(Error::Invalid(
                    "the single-variable rule needs exactly one quantifier".into(),
                ));
            }
            let v = mono::evaluate_monadic(&s.prenex, m, mode)?;
            Ok((if s.negated { v.mirror() } else { v }, None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        let failures: Vec<String> = fixtures().iter().filter_map(|f| f.check().err()).collect();
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }

    #[test]
    fn fixture_models_parse_and_are_named_uniquely() {
        for (i, m) in MODELS.iter().enumerate() {
            assert!(parse_model(m.text).is_ok(), "{}", m.name);
            assert!(MODELS[..i].iter().all(|o| o.name != m.name));
        }
        assert!(fixture_model("ex4").is_some());
        assert!(fixture_model("EX99").is_none());
    }

    #[test]
    fn conditions_reject_a_wrong_model() {
        let wrong = parse_model("universe: a b\npred F/2: (a,a)\npred G/2: (a,a)\n").unwrap();
        let failing = conditions("EX2")
            .iter()
            .filter(|c| !(c.check)(&wrong).unwrap())
            .count();
        assert!(failing > 0);
    }
}
