//! The two-level formula language and its signatures.
//!
//! Formulas come in two strictly separated layers:
//!
//! - [`BasicExpr`]: propositional expressions over declared variables with
//!   `!`, `&`, `|`, the constants `T` / `_|_`, and — in the ordered variants —
//!   the closure operators `dle` (everything at or below some member) and
//!   `dge` (everything at or above some member);
//! - [`OuterFormula`]: classical formulas whose atoms are graded implications
//!   `lhs =>{c} rhs` between basic expressions. Graded implications cannot be
//!   nested: the `=>{c}` arrow is the one-way boundary between the layers.
//!
//! A [`Signature`] declares the variables, grouped into named sorts plus an
//! optional unsorted pool (meaningful only in the product variant), and a
//! [`LogicCtx`] bundles a signature with a grade scale and a [`Variant`].

mod cpl;
mod mec;
mod parse;
mod print;

pub use cpl::{
    atomize_basic, basic_iff_tautology, basic_implies_tautology, outer_skeleton, outer_tautology,
    tautology, Prop, MAX_CPL_ATOMS,
};
pub use mec::{
    disjoint_sorted, enumerate_mecs, is_mec, is_one_sorted_mec, mec_from_pattern, one_sorted,
    same_sort, sorts_of, Mec, MecScope, MAX_MEC_VARS,
};
pub use parse::{parse, parse_basic, parse_outer, Parsed};
pub use print::{print_basic, print_implication, print_outer};

use crate::grades::{Grade, GradeScale, Level};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Which logic the toolkit is running: the plain similarity logic, the
/// chain-ordered extension, or the multi-sort product extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Plain similarity spaces; no closure operators.
    Lae,
    /// Totally ordered (chain) similarity spaces; `dle`/`dge` available.
    Laec,
    /// Component-wise ordered product spaces over sorted variables, with an
    /// optional pool of unsorted variables.
    Laepc,
}

impl Variant {
    /// Lower-case name as used in file headers (`logic lae`).
    pub fn name(self) -> &'static str {
        match self {
            Variant::Lae => "lae",
            Variant::Laec => "laec",
            Variant::Laepc => "laepc",
        }
    }

    /// Parses a file-header name.
    pub fn from_name(s: &str) -> Option<Variant> {
        match s {
            "lae" => Some(Variant::Lae),
            "laec" => Some(Variant::Laec),
            "laepc" => Some(Variant::Laepc),
            _ => None,
        }
    }

    /// True if `dle`/`dge` may occur in basic expressions.
    pub fn has_diamonds(self) -> bool {
        !matches!(self, Variant::Lae)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Index of a sort within a [`Signature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortId(pub u32);

/// Index of a variable within a [`Signature`] (global across sorts).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
struct SortDecl {
    name: String,
    vars: Vec<VarId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct VarDecl {
    name: String,
    sort: Option<SortId>,
}

/// The declared vocabulary: named sorts of variables plus an unsorted pool.
///
/// Declaration order is significant — it fixes the canonical literal order of
/// maximal elementary conjunctions and every deterministic enumeration in the
/// crate. Variables carry global ids; sorted variables additionally know their
/// sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    sorts: Vec<SortDecl>,
    vars: Vec<VarDecl>,
}

/// Errors raised while declaring signatures or manipulating formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },
    #[error("`{name}` is not a legal name (letters, digits and `_`, starting with a letter; `T`, `dle` and `dge` are reserved)")]
    BadName { name: String },
    #[error("duplicate name `{name}`")]
    DuplicateName { name: String },
    #[error("a signature needs at least one sort, and every sort at least one variable")]
    EmptySignature,
    #[error("variant {variant}: {msg}")]
    Variant { variant: Variant, msg: String },
    #[error("grade {level} is not a level of the active scale")]
    UnknownGrade { level: Level },
    #[error("{what} supports at most {limit} {unit}")]
    ResourceLimit { what: &'static str, limit: usize, unit: &'static str },
}

/// Names the concrete syntax claims for itself; no variable or sort may use
/// them.
pub const RESERVED: &[&str] = &["T", "dle", "dge"];

fn check_name(name: &str) -> Result<(), SyntaxError> {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !head_ok || !tail_ok || RESERVED.contains(&name) {
        return Err(SyntaxError::BadName { name: name.to_string() });
    }
    Ok(())
}

impl Signature {
    /// Declares a signature from named sorts and an unsorted pool. Sorted
    /// variables get the lower ids, sort by sort in declaration order; the
    /// unsorted pool follows.
    pub fn new<S: AsRef<str>>(
        sorts: &[(S, Vec<S>)],
        unsorted: &[S],
    ) -> Result<Signature, SyntaxError> {
        if sorts.is_empty() || sorts.iter().any(|(_, vs)| vs.is_empty()) {
            return Err(SyntaxError::EmptySignature);
        }
        let mut sig = Signature { sorts: Vec::new(), vars: Vec::new() };
        let mut seen = BTreeSet::new();
        let claim = |name: &str, seen: &mut BTreeSet<String>| -> Result<(), SyntaxError> {
            check_name(name)?;
            if !seen.insert(name.to_string()) {
                return Err(SyntaxError::DuplicateName { name: name.to_string() });
            }
            Ok(())
        };
        for (sort_name, var_names) in sorts {
            claim(sort_name.as_ref(), &mut seen)?;
            let sort_id = SortId(sig.sorts.len() as u32);
            let mut var_ids = Vec::new();
            for v in var_names {
                claim(v.as_ref(), &mut seen)?;
                let id = VarId(sig.vars.len() as u32);
                sig.vars.push(VarDecl { name: v.as_ref().to_string(), sort: Some(sort_id) });
                var_ids.push(id);
            }
            sig.sorts.push(SortDecl { name: sort_name.as_ref().to_string(), vars: var_ids });
        }
        for v in unsorted {
            claim(v.as_ref(), &mut seen)?;
            sig.vars.push(VarDecl { name: v.as_ref().to_string(), sort: None });
        }
        Ok(sig)
    }

    /// Declares a one-sort signature — the shape used by the plain and chain
    /// variants, where every variable lives in a single anonymous sort.
    pub fn single_sort<S: AsRef<str>>(vars: &[S]) -> Result<Signature, SyntaxError> {
        let names: Vec<&str> = vars.iter().map(|s| s.as_ref()).collect();
        Signature::new(&[("w", names)], &[])
    }

    /// Number of declared variables (sorted and unsorted).
    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    /// Number of declared sorts.
    pub fn n_sorts(&self) -> usize {
        self.sorts.len()
    }

    /// All variable ids in declaration order.
    pub fn vars(&self) -> impl DoubleEndedIterator<Item = VarId> + Clone {
        (0..self.vars.len() as u32).map(VarId)
    }

    /// All sort ids in declaration order.
    pub fn sort_ids(&self) -> impl DoubleEndedIterator<Item = SortId> + Clone {
        (0..self.sorts.len() as u32).map(SortId)
    }

    /// The variables of one sort, in declaration order.
    pub fn vars_of_sort(&self, sort: SortId) -> &[VarId] {
        &self.sorts[sort.0 as usize].vars
    }

    /// All sorted variable ids, sort by sort.
    pub fn sorted_vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.sorts.iter().flat_map(|s| s.vars.iter().copied())
    }

    /// All unsorted variable ids.
    pub fn unsorted_vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.vars().filter(|v| self.sort_of(*v).is_none())
    }

    /// The sort a variable belongs to, or `None` for unsorted variables.
    pub fn sort_of(&self, var: VarId) -> Option<SortId> {
        self.vars[var.0 as usize].sort
    }

    /// The declared name of a variable.
    pub fn var_name(&self, var: VarId) -> &str {
        &self.vars[var.0 as usize].name
    }

    /// The declared name of a sort.
    pub fn sort_name(&self, sort: SortId) -> &str {
        &self.sorts[sort.0 as usize].name
    }

    /// Looks a variable up by name.
    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name).map(|i| VarId(i as u32))
    }

    /// Looks a sort up by name.
    pub fn sort_by_name(&self, name: &str) -> Option<SortId> {
        self.sorts.iter().position(|s| s.name == name).map(|i| SortId(i as u32))
    }
}

/// A variant, signature and grade scale bundled together: everything needed to
/// parse, print, and evaluate formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicCtx {
    pub variant: Variant,
    pub sig: Signature,
    pub scale: GradeScale,
}

impl LogicCtx {
    /// Bundles the parts, enforcing variant-specific signature shape: the
    /// plain and chain variants use exactly one sort and no unsorted pool.
    pub fn new(variant: Variant, sig: Signature, scale: GradeScale) -> Result<LogicCtx, SyntaxError> {
        if variant != Variant::Laepc {
            if sig.n_sorts() != 1 {
                return Err(SyntaxError::Variant {
                    variant,
                    msg: format!("expected exactly one sort, found {}", sig.n_sorts()),
                });
            }
            if sig.unsorted_vars().next().is_some() {
                return Err(SyntaxError::Variant {
                    variant,
                    msg: "unsorted variables are only available in the product variant".into(),
                });
            }
        }
        Ok(LogicCtx { variant, sig, scale })
    }

    /// Renders a basic expression in canonical concrete syntax.
    pub fn print_basic(&self, e: &BasicExpr) -> String {
        print::print_basic(e, &self.sig)
    }

    /// Renders a graded implication in canonical concrete syntax.
    pub fn print_implication(&self, gi: &GradedImplication) -> String {
        print::print_implication(gi, &self.sig, &self.scale)
    }

    /// Renders an outer formula in canonical concrete syntax.
    pub fn print_outer(&self, f: &OuterFormula) -> String {
        print::print_outer(f, &self.sig, &self.scale)
    }
}

/// Which side a closure operator takes: `dle` collects everything at or below
/// members of a set, `dge` everything at or above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiamondDir {
    /// `dle`: downward closure.
    Le,
    /// `dge`: upward closure.
    Ge,
}

impl DiamondDir {
    /// Surface keyword.
    pub fn keyword(self) -> &'static str {
        match self {
            DiamondDir::Le => "dle",
            DiamondDir::Ge => "dge",
        }
    }

    /// The mirror-image operator.
    pub fn flip(self) -> DiamondDir {
        match self {
            DiamondDir::Le => DiamondDir::Ge,
            DiamondDir::Ge => DiamondDir::Le,
        }
    }
}

/// Inner-level propositional expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasicExpr {
    /// `_|_`: the impossible expression.
    Bot,
    /// `T`: the trivial expression.
    Top,
    Var(VarId),
    Not(Box<BasicExpr>),
    And(Box<BasicExpr>, Box<BasicExpr>),
    Or(Box<BasicExpr>, Box<BasicExpr>),
    /// `dle e` / `dge e`; only legal in the ordered variants.
    Diamond(DiamondDir, Box<BasicExpr>),
}

impl BasicExpr {
    pub fn var(v: VarId) -> BasicExpr {
        BasicExpr::Var(v)
    }

    pub fn not(self) -> BasicExpr {
        BasicExpr::Not(Box::new(self))
    }

    pub fn and(self, rhs: BasicExpr) -> BasicExpr {
        BasicExpr::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: BasicExpr) -> BasicExpr {
        BasicExpr::Or(Box::new(self), Box::new(rhs))
    }

    pub fn diamond(self, dir: DiamondDir) -> BasicExpr {
        BasicExpr::Diamond(dir, Box::new(self))
    }

    /// A literal: the variable or its negation.
    pub fn literal(v: VarId, positive: bool) -> BasicExpr {
        if positive {
            BasicExpr::Var(v)
        } else {
            BasicExpr::Var(v).not()
        }
    }

    /// Collects the variables occurring in the expression.
    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    fn collect_vars(&self, acc: &mut BTreeSet<VarId>) {
        match self {
            BasicExpr::Bot | BasicExpr::Top => {}
            BasicExpr::Var(v) => {
                acc.insert(*v);
            }
            BasicExpr::Not(e) | BasicExpr::Diamond(_, e) => e.collect_vars(acc),
            BasicExpr::And(l, r) | BasicExpr::Or(l, r) => {
                l.collect_vars(acc);
                r.collect_vars(acc);
            }
        }
    }

    /// True if a closure operator occurs anywhere in the expression.
    pub fn has_diamond(&self) -> bool {
        match self {
            BasicExpr::Bot | BasicExpr::Top | BasicExpr::Var(_) => false,
            BasicExpr::Diamond(_, _) => true,
            BasicExpr::Not(e) => e.has_diamond(),
            BasicExpr::And(l, r) | BasicExpr::Or(l, r) => l.has_diamond() || r.has_diamond(),
        }
    }

    /// Checks the expression against a variant and signature: closure
    /// operators only in the ordered variants, variables declared.
    pub fn validate(&self, ctx: &LogicCtx) -> Result<(), SyntaxError> {
        if !ctx.variant.has_diamonds() && self.has_diamond() {
            return Err(SyntaxError::Variant {
                variant: ctx.variant,
                msg: "dle/dge require the chain or product variant".into(),
            });
        }
        for v in self.vars() {
            if v.0 as usize >= ctx.sig.n_vars() {
                return Err(SyntaxError::UnknownVariable { name: format!("#{}", v.0) });
            }
        }
        Ok(())
    }
}

/// The level boundary: `lhs =>{grade} rhs`. Not nestable — both sides are
/// basic expressions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedImplication {
    pub lhs: BasicExpr,
    pub grade: Grade,
    pub rhs: BasicExpr,
}

impl GradedImplication {
    pub fn new(lhs: BasicExpr, grade: Grade, rhs: BasicExpr) -> GradedImplication {
        GradedImplication { lhs, grade, rhs }
    }

    pub fn validate(&self, ctx: &LogicCtx) -> Result<(), SyntaxError> {
        if self.grade.0 as usize >= ctx.scale.len() {
            return Err(SyntaxError::UnknownGrade { level: Level::new(i64::from(self.grade.0), 1) });
        }
        self.lhs.validate(ctx)?;
        self.rhs.validate(ctx)
    }
}

/// Outer-level classical formula over graded-implication atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OuterFormula {
    Atom(GradedImplication),
    Not(Box<OuterFormula>),
    And(Box<OuterFormula>, Box<OuterFormula>),
    Or(Box<OuterFormula>, Box<OuterFormula>),
    Implies(Box<OuterFormula>, Box<OuterFormula>),
    Iff(Box<OuterFormula>, Box<OuterFormula>),
}

impl OuterFormula {
    pub fn atom(gi: GradedImplication) -> OuterFormula {
        OuterFormula::Atom(gi)
    }

    pub fn not(self) -> OuterFormula {
        OuterFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: OuterFormula) -> OuterFormula {
        OuterFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: OuterFormula) -> OuterFormula {
        OuterFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: OuterFormula) -> OuterFormula {
        OuterFormula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: OuterFormula) -> OuterFormula {
        OuterFormula::Iff(Box::new(self), Box::new(rhs))
    }

    /// The graded-implication atoms, left to right.
    pub fn atoms(&self) -> Vec<&GradedImplication> {
        let mut acc = Vec::new();
        self.collect_atoms(&mut acc);
        acc
    }

    fn collect_atoms<'a>(&'a self, acc: &mut Vec<&'a GradedImplication>) {
        match self {
            OuterFormula::Atom(gi) => acc.push(gi),
            OuterFormula::Not(f) => f.collect_atoms(acc),
            OuterFormula::And(l, r)
            | OuterFormula::Or(l, r)
            | OuterFormula::Implies(l, r)
            | OuterFormula::Iff(l, r) => {
                l.collect_atoms(acc);
                r.collect_atoms(acc);
            }
        }
    }

    pub fn validate(&self, ctx: &LogicCtx) -> Result<(), SyntaxError> {
        for gi in self.atoms() {
            gi.validate(ctx)?;
        }
        Ok(())
    }
}

/// A finite set of outer formulas, kept in insertion order so that hypothesis
/// numbering in proof scripts and file output stay stable.
pub type Theory = Vec<OuterFormula>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grades::GradeScale;

    #[test]
    fn signature_assigns_ids_in_declaration_order() {
        let sig = Signature::new(&[("price", vec!["b"]), ("fuel", vec!["g"])], &["a"]).unwrap();
        assert_eq!(sig.n_vars(), 3);
        assert_eq!(sig.var_name(VarId(0)), "b");
        assert_eq!(sig.var_name(VarId(2)), "a");
        assert_eq!(sig.sort_of(VarId(0)), Some(SortId(0)));
        assert_eq!(sig.sort_of(VarId(2)), None);
        assert_eq!(sig.vars_of_sort(SortId(1)), &[VarId(1)]);
        assert_eq!(sig.var_by_name("g"), Some(VarId(1)));
        assert_eq!(sig.sort_by_name("fuel"), Some(SortId(1)));
    }

    #[test]
    fn signature_rejects_bad_shapes() {
        assert!(matches!(
            Signature::new::<&str>(&[], &["a"]).unwrap_err(),
            SyntaxError::EmptySignature
        ));
        assert!(matches!(
            Signature::new(&[("s", vec![])], &["a"]).unwrap_err(),
            SyntaxError::EmptySignature
        ));
        assert!(matches!(
            Signature::single_sort(&["p", "p"]).unwrap_err(),
            SyntaxError::DuplicateName { .. }
        ));
        assert!(matches!(
            Signature::single_sort(&["dle"]).unwrap_err(),
            SyntaxError::BadName { .. }
        ));
        assert!(matches!(
            Signature::single_sort(&["1p"]).unwrap_err(),
            SyntaxError::BadName { .. }
        ));
    }

    #[test]
    fn plain_variant_rejects_multi_sort_signatures() {
        let sig = Signature::new(&[("a", vec!["p"]), ("b", vec!["q"])], &[]).unwrap();
        let err = LogicCtx::new(Variant::Lae, sig, GradeScale::godel_three()).unwrap_err();
        assert!(matches!(err, SyntaxError::Variant { variant: Variant::Lae, .. }));

        let sig = Signature::new(&[("s", vec!["p"])], &["u"]).unwrap();
        let err = LogicCtx::new(Variant::Laec, sig, GradeScale::godel_three()).unwrap_err();
        assert!(matches!(err, SyntaxError::Variant { variant: Variant::Laec, .. }));
    }

    #[test]
    fn diamonds_are_rejected_in_the_plain_variant() {
        let sig = Signature::single_sort(&["p"]).unwrap();
        let ctx = LogicCtx::new(Variant::Lae, sig, GradeScale::godel_three()).unwrap();
        let e = BasicExpr::var(VarId(0)).diamond(DiamondDir::Le);
        assert!(matches!(e.validate(&ctx), Err(SyntaxError::Variant { .. })));
        let ok = BasicExpr::var(VarId(0)).not();
        assert!(ok.validate(&ctx).is_ok());
    }

    #[test]
    fn outer_formula_lists_atoms_left_to_right() {
        let p = BasicExpr::var(VarId(0));
        let a = GradedImplication::new(p.clone(), Grade(0), p.clone());
        let b = GradedImplication::new(p.clone(), Grade(1), p.clone().not());
        let f = OuterFormula::atom(a.clone()).implies(OuterFormula::atom(b.clone()).not());
        let atoms = f.atoms();
        assert_eq!(atoms, vec![&a, &b]);
    }
}
