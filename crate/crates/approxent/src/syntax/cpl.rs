//! Classical propositional skeletons and a tautology check.
//!
//! Axiom recognition and soundness arguments repeatedly reduce one of the two
//! formula levels to plain propositional logic: a basic expression becomes a
//! [`Prop`] whose atoms are variables and *maximal* closure subexpressions
//! (everything under a `dle`/`dge` stays opaque), and an outer formula becomes
//! a [`Prop`] whose atoms are whole graded implications. [`tautology`] then
//! decides validity by truth table, which is exact and, under the
//! [`MAX_CPL_ATOMS`] cap, fast.

use super::{BasicExpr, GradedImplication, OuterFormula, SyntaxError};

/// Hard cap on distinct atoms per tautology check (2^n assignments).
pub const MAX_CPL_ATOMS: usize = 20;

/// A propositional formula over numbered atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop {
    Atom(usize),
    Bot,
    Top,
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn not(self) -> Prop {
        Prop::Not(Box::new(self))
    }

    pub fn and(self, rhs: Prop) -> Prop {
        Prop::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Prop) -> Prop {
        Prop::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Prop) -> Prop {
        Prop::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Prop) -> Prop {
        Prop::Iff(Box::new(self), Box::new(rhs))
    }

    /// Truth value under the assignment whose bit `i` gives atom `i`.
    pub fn eval(&self, assignment: u32) -> bool {
        match self {
            Prop::Atom(i) => assignment & (1 << i) != 0,
            Prop::Bot => false,
            Prop::Top => true,
            Prop::Not(p) => !p.eval(assignment),
            Prop::And(l, r) => l.eval(assignment) && r.eval(assignment),
            Prop::Or(l, r) => l.eval(assignment) || r.eval(assignment),
            Prop::Implies(l, r) => !l.eval(assignment) || r.eval(assignment),
            Prop::Iff(l, r) => l.eval(assignment) == r.eval(assignment),
        }
    }

    fn max_atom(&self) -> Option<usize> {
        match self {
            Prop::Atom(i) => Some(*i),
            Prop::Bot | Prop::Top => None,
            Prop::Not(p) => p.max_atom(),
            Prop::And(l, r) | Prop::Or(l, r) | Prop::Implies(l, r) | Prop::Iff(l, r) => {
                l.max_atom().max(r.max_atom())
            }
        }
    }
}

/// Decides by truth table whether the formula holds under every assignment
/// to its atoms. Errors if more than [`MAX_CPL_ATOMS`] atoms occur.
pub fn tautology(p: &Prop) -> Result<bool, SyntaxError> {
    let n = p.max_atom().map_or(0, |m| m + 1);
    if n > MAX_CPL_ATOMS {
        return Err(SyntaxError::ResourceLimit {
            what: "tautology checking",
            limit: MAX_CPL_ATOMS,
            unit: "atoms",
        });
    }
    Ok((0..1u32 << n).all(|assignment| p.eval(assignment)))
}

fn intern<K: PartialEq + Clone>(key: &K, atoms: &mut Vec<K>) -> usize {
    match atoms.iter().position(|k| k == key) {
        Some(i) => i,
        None => {
            atoms.push(key.clone());
            atoms.len() - 1
        }
    }
}

/// The propositional skeleton of a basic expression: variables and maximal
/// closure subexpressions become atoms, shared across calls through `atoms`.
pub fn atomize_basic(e: &BasicExpr, atoms: &mut Vec<BasicExpr>) -> Prop {
    match e {
        BasicExpr::Bot => Prop::Bot,
        BasicExpr::Top => Prop::Top,
        BasicExpr::Var(_) | BasicExpr::Diamond(_, _) => Prop::Atom(intern(e, atoms)),
        BasicExpr::Not(inner) => atomize_basic(inner, atoms).not(),
        BasicExpr::And(l, r) => atomize_basic(l, atoms).and(atomize_basic(r, atoms)),
        BasicExpr::Or(l, r) => atomize_basic(l, atoms).or(atomize_basic(r, atoms)),
    }
}

/// Truth-table check of `lhs -> rhs` on the shared skeleton of two basic
/// expressions — the work-horse behind "follows propositionally" side
/// conditions.
pub fn basic_implies_tautology(lhs: &BasicExpr, rhs: &BasicExpr) -> Result<bool, SyntaxError> {
    let mut atoms = Vec::new();
    let l = atomize_basic(lhs, &mut atoms);
    let r = atomize_basic(rhs, &mut atoms);
    tautology(&l.implies(r))
}

/// Truth-table equivalence of two basic expressions on their shared skeleton.
pub fn basic_iff_tautology(lhs: &BasicExpr, rhs: &BasicExpr) -> Result<bool, SyntaxError> {
    let mut atoms = Vec::new();
    let l = atomize_basic(lhs, &mut atoms);
    let r = atomize_basic(rhs, &mut atoms);
    tautology(&l.iff(r))
}

/// The propositional skeleton of an outer formula: graded implications become
/// atoms, identical implications the same atom.
pub fn outer_skeleton(f: &OuterFormula, atoms: &mut Vec<GradedImplication>) -> Prop {
    match f {
        OuterFormula::Atom(gi) => Prop::Atom(intern(gi, atoms)),
        OuterFormula::Not(inner) => outer_skeleton(inner, atoms).not(),
        OuterFormula::And(l, r) => outer_skeleton(l, atoms).and(outer_skeleton(r, atoms)),
        OuterFormula::Or(l, r) => outer_skeleton(l, atoms).or(outer_skeleton(r, atoms)),
        OuterFormula::Implies(l, r) => {
            outer_skeleton(l, atoms).implies(outer_skeleton(r, atoms))
        }
        OuterFormula::Iff(l, r) => outer_skeleton(l, atoms).iff(outer_skeleton(r, atoms)),
    }
}

/// Truth-table check of an outer formula on its graded-implication skeleton.
pub fn outer_tautology(f: &OuterFormula) -> Result<bool, SyntaxError> {
    let mut atoms = Vec::new();
    let p = outer_skeleton(f, &mut atoms);
    tautology(&p)
}
