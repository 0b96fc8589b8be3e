//! Canonical concrete syntax.
//!
//! Printing is deterministic and round-trips: parsing a printed formula gives
//! back the identical tree. Binary operators associate to the left at the
//! basic level and (for `->`/`<->`) to the right at the outer level, exactly
//! as the parser builds them, so parentheses appear only where a reparse would
//! otherwise produce a different tree — plus around every graded implication
//! that sits inside a larger outer formula, which keeps the two levels
//! visually apart.

use super::{BasicExpr, GradedImplication, OuterFormula, Signature};
use crate::grades::GradeScale;
use std::fmt::Write;

// Basic-level binding strength: atoms bind tightest, then the prefix
// operators, then `&`, then `|`.
const B_ATOM: u8 = 3;
const B_PREFIX: u8 = 2;
const B_AND: u8 = 1;
const B_OR: u8 = 0;

fn basic_rec(e: &BasicExpr, sig: &Signature, min: u8, out: &mut String) {
    let prec = match e {
        BasicExpr::Bot | BasicExpr::Top | BasicExpr::Var(_) => B_ATOM,
        BasicExpr::Not(_) | BasicExpr::Diamond(_, _) => B_PREFIX,
        BasicExpr::And(_, _) => B_AND,
        BasicExpr::Or(_, _) => B_OR,
    };
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match e {
        BasicExpr::Bot => out.push_str("_|_"),
        BasicExpr::Top => out.push('T'),
        BasicExpr::Var(v) => out.push_str(sig.var_name(*v)),
        BasicExpr::Not(inner) => {
            out.push('!');
            basic_rec(inner, sig, B_PREFIX, out);
        }
        BasicExpr::Diamond(dir, inner) => {
            out.push_str(dir.keyword());
            out.push(' ');
            basic_rec(inner, sig, B_PREFIX, out);
        }
        BasicExpr::And(l, r) => {
            basic_rec(l, sig, B_AND, out);
            out.push_str(" & ");
            basic_rec(r, sig, B_AND + 1, out);
        }
        BasicExpr::Or(l, r) => {
            basic_rec(l, sig, B_OR, out);
            out.push_str(" | ");
            basic_rec(r, sig, B_OR + 1, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders a basic expression.
pub fn print_basic(e: &BasicExpr, sig: &Signature) -> String {
    let mut out = String::new();
    basic_rec(e, sig, 0, &mut out);
    out
}

fn implication_side(e: &BasicExpr, sig: &Signature, out: &mut String) {
    // Sides of `=>{c}` are parenthesized unless they are single atoms, so the
    // arrow never competes visually with basic connectives.
    if matches!(e, BasicExpr::Bot | BasicExpr::Top | BasicExpr::Var(_)) {
        basic_rec(e, sig, 0, out);
    } else {
        out.push('(');
        basic_rec(e, sig, 0, out);
        out.push(')');
    }
}

/// Renders a graded implication, e.g. `a =>{1/2} (b & c)`.
pub fn print_implication(gi: &GradedImplication, sig: &Signature, scale: &GradeScale) -> String {
    let mut out = String::new();
    implication_side(&gi.lhs, sig, &mut out);
    let _ = write!(out, " =>{{{}}} ", scale.level_text(gi.grade));
    implication_side(&gi.rhs, sig, &mut out);
    out
}

// Outer-level binding strength. Atoms are parenthesized whenever they occur
// inside a larger formula (any positive `min`), so they need no own level.
const O_NOT: u8 = 4;
const O_AND: u8 = 3;
const O_OR: u8 = 2;
const O_IMPLIES: u8 = 1;
const O_IFF: u8 = 0;

fn outer_rec(f: &OuterFormula, sig: &Signature, scale: &GradeScale, min: u8, out: &mut String) {
    if let OuterFormula::Atom(gi) = f {
        let parens = min > 0;
        if parens {
            out.push('(');
        }
        out.push_str(&print_implication(gi, sig, scale));
        if parens {
            out.push(')');
        }
        return;
    }
    let prec = match f {
        OuterFormula::Atom(_) => unreachable!(),
        OuterFormula::Not(_) => O_NOT,
        OuterFormula::And(_, _) => O_AND,
        OuterFormula::Or(_, _) => O_OR,
        OuterFormula::Implies(_, _) => O_IMPLIES,
        OuterFormula::Iff(_, _) => O_IFF,
    };
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match f {
        OuterFormula::Atom(_) => unreachable!(),
        OuterFormula::Not(inner) => {
            out.push('!');
            outer_rec(inner, sig, scale, O_NOT, out);
        }
        OuterFormula::And(l, r) => {
            outer_rec(l, sig, scale, O_AND, out);
            out.push_str(" & ");
            outer_rec(r, sig, scale, O_AND + 1, out);
        }
        OuterFormula::Or(l, r) => {
            outer_rec(l, sig, scale, O_OR, out);
            out.push_str(" | ");
            outer_rec(r, sig, scale, O_OR + 1, out);
        }
        OuterFormula::Implies(l, r) => {
            // Right-associative: `x -> y -> z` reparses as `x -> (y -> z)`.
            outer_rec(l, sig, scale, O_IMPLIES + 1, out);
            out.push_str(" -> ");
            outer_rec(r, sig, scale, O_IMPLIES, out);
        }
        OuterFormula::Iff(l, r) => {
            outer_rec(l, sig, scale, O_IFF + 1, out);
            out.push_str(" <-> ");
            outer_rec(r, sig, scale, O_IFF, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders an outer formula.
pub fn print_outer(f: &OuterFormula, sig: &Signature, scale: &GradeScale) -> String {
    let mut out = String::new();
    outer_rec(f, sig, scale, 0, &mut out);
    out
}
