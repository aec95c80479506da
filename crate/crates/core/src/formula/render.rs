use std::fmt;

use super::syntax::{Formula, Mode};

// Binding strength, loosest first.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(f) < min {
        out.write_str("(")?;
        write_formula(f, out)?;
        out.write_str(")")
    } else {
        write_formula(f, out)
    }
}

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Atom(p, args) if args.is_empty() => out.write_str(p),
        Formula::Atom(p, args) => {
            write!(out, "{p}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write!(out, "{a}")?;
            }
            out.write_str(")")
        }
        Formula::Eq(a, b) => write!(out, "{a} = {b}"),
        Formula::Prec(t, xx) => write!(out, "{t} pc {xx}"),
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(a, UNARY, out)
        }
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" & ")?;
            write_at(b, UNARY, out)
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" | ")?;
            write_at(b, AND, out)
        }
        Formula::Implies(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" -> ")?;
            write_at(b, IMP, out)
        }
        Formula::Nec(m, a) | Formula::Poss(m, a) => {
            let op = match (f, m) {
                (Formula::Nec(..), Mode::D) => "[]D ",
                (Formula::Nec(..), Mode::G) => "[]G ",
                (_, Mode::D) => "<>D ",
                (_, Mode::G) => "<>G ",
            };
            out.write_str(op)?;
            write_at(a, UNARY, out)
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let q = match (f, v.is_plural()) {
                (Formula::Forall(..), false) => "forall",
                (Formula::Forall(..), true) => "forallp",
                (_, false) => "exists",
                (_, true) => "existsp",
            };
            write!(out, "{q} {v} ")?;
            write_at(a, UNARY, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}
