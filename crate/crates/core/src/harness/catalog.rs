//! Sentence catalogs for the census and the property suites.

use crate::ast::{parse_prenex, PrenexSentence};
use crate::error::{Error, Result};
use crate::model::Signature;

pub const MONADIC: &[&str] = &[
    "(x)(F(x) -> ~G(x))",
    "(Ex)(F(x) & G(x))",
    "(x)~(F(x) & G(x))",
    "(Ex)(F(x) | G(x))",
    "(x)(F(x) | G(x))",
    "(Ex)(F(x) & ~G(x))",
    "(x)F(x)",
    "(Ex)F(x)",
    "(x)(F(x) | ~F(x))",
    "(Ex)(F(x) & ~F(x))",
];

pub const DYADIC: &[&str] = &[
    "(x)(y)(F(x,y) -> ~G(x,y))",
    "(Ex)(Ey)(F(x,y) & G(x,y))",
    "(Ex)(y)(F(x,y) -> ~G(x,y))",
    "(x)(Ey)(F(x,y) & G(x,y))",
    "(y)(Ex)(F(x,y) & G(x,y))",
    "(Ey)(x)(F(x,y) -> ~G(x,y))",
];

pub const TRIADIC: &[&str] = &[
    "(x)(y)(z)(F(x,y,z) -> ~G(x,y,z))",
    "(z)(y)(Ex)(F(x,y,z) & G(x,y,z))",
    "(z)(Ex)(Ey)(F(z,x,y) & G(z,x,y))",
    "(Ez)(x)(y)(F(z,x,y) -> ~G(z,x,y))",
    "(z)(Ex)(y)(F(z,x,y) -> ~G(z,x,y))",
];

/// Parses catalog text: one prenex sentence per line, `#` comments.
pub fn parse_catalog(text: &str) -> Result<Vec<PrenexSentence>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_prenex)
        .collect()
}

fn fits(s: &PrenexSentence, sig: &Signature) -> bool {
    s.matrix()
        .signature()
        .is_ok_and(|preds| preds.iter().all(|(p, a)| sig.arity(p) == Some(*a)))
}

/// Every built-in sentence whose predicates all occur in `sig` with the
/// same arity.
pub fn builtin_catalog(sig: &Signature) -> Vec<PrenexSentence> {
    MONADIC
        .iter()
        .chain(DYADIC)
        .chain(TRIADIC)
        .map(|t| parse_prenex(t).expect("built-in sentences parse"))
        .filter(|s| fits(s, sig))
        .collect()
}

/// Rejects sentences that use a predicate outside `sig`.
pub fn check_catalog(catalog: &[PrenexSentence], sig: &Signature) -> Result<()> {
    for s in catalog {
        for (pred, used) in s.matrix().signature()? {
            match sig.arity(&pred) {
                None => return Err(Error::UndeclaredPredicate(pred)),
                Some(declared) if declared != used => {
                    return Err(Error::ArityMismatch { pred, declared, used })
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_filters_by_signature() {
        let sig = Signature::parse("F/1").unwrap();
        let texts: Vec<String> = builtin_catalog(&sig).iter().map(|s| s.to_string()).collect();
        assert_eq!(texts.len(), 4);
        assert!(texts.iter().all(|t| !t.contains('G')));
        assert_eq!(builtin_catalog(&Signature::parse("F/2,G/2").unwrap()).len(), 6);
        assert_eq!(builtin_catalog(&Signature::parse("F/3,G/3").unwrap()).len(), 5);
        assert_eq!(builtin_catalog(&Signature::parse("F/1,G/1").unwrap()).len(), 10);
    }

    #[test]
    fn catalog_text() {
        let c = parse_catalog("# demo\n(x)F(x)\n\n(Ex)G(x)  # trailing\n").unwrap();
        assert_eq!(c.len(), 2);
        assert!(parse_catalog("(x)F(x) & P").is_err());
        let sig = Signature::parse("F/1").unwrap();
        assert_eq!(
            check_catalog(&c, &sig),
            Err(Error::UndeclaredPredicate("G".into()))
        );
    }
}
