use super::Formula;

// Binding strength, loosest first.
const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(_) | Formula::ForAll(..) | Formula::Exists(..) | Formula::Atom(_) => UNARY,
    }
}

/// Renders a formula in the surface syntax accepted by [`super::parse_formula`].
///
/// Parentheses are minimal except that a nested `->` or `<->` operand is
/// always parenthesized, so `P -> (Q -> P)` prints as written.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, IFF, &mut out);
    out
}

fn write(f: &Formula, min: u8, out: &mut String) {
    let wrap = level(f) < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(&a.to_string()),
        Formula::Not(a) => {
            out.push('~');
            write(a, UNARY, out);
        }
        Formula::ForAll(v, a) => {
            out.push('(');
            out.push_str(v);
            out.push(')');
            write(a, UNARY, out);
        }
        Formula::Exists(v, a) => {
            out.push_str("(E");
            out.push_str(v);
            out.push(')');
            write(a, UNARY, out);
        }
        Formula::And(a, b) => binary(a, b, " & ", AND, AND + 1, out),
        Formula::Or(a, b) => binary(a, b, " | ", OR, OR + 1, out),
        Formula::Implies(a, b) => binary(a, b, " -> ", IMP + 1, IMP + 1, out),
        Formula::Iff(a, b) => binary(a, b, " <-> ", IFF + 1, IFF + 1, out),
    }
    if wrap {
        out.push(')');
    }
}

fn binary(a: &Formula, b: &Formula, op: &str, left_min: u8, right_min: u8, out: &mut String) {
    write(a, left_min, out);
    out.push_str(op);
    write(b, right_min, out);
}
