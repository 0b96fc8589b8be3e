//! Evaluations, models, and the satisfaction relation.
//!
//! An [`Evaluation`] assigns each declared variable a set of worlds; the
//! extension of every other basic expression is computed compositionally
//! (`&` intersection, `|` union, `!` complement, `dle`/`dge` the space's
//! closure operators). A [`Model`] bundles a logic context, a space of the
//! matching shape, and an evaluation, and checks the variant's evaluation
//! laws:
//!
//! - in every variant, distinct worlds must be separated by some variable;
//! - in the product variant, the extension of a sorted variable must be a
//!   cylinder over its sort's component, and the extension of an unsorted
//!   variable must be a union of cells of the sorted-variable algebra (with
//!   separation in force the cells are singletons, so any set qualifies once
//!   the sorted variables separate).
//!
//! A graded implication `phi =>{c} psi` is satisfied when every `phi`-world
//! lies in the `c`-neighborhood of the `psi`-extension; outer connectives are
//! classical on top of that.

use crate::grades::Grade;
use crate::spaces::{Space, SpaceError, WorldSet};
use crate::syntax::{
    BasicExpr, GradedImplication, LogicCtx, OuterFormula, SyntaxError, VarId, Variant,
};
use std::fmt;
use thiserror::Error;

/// World sets for each declared variable, indexed by [`VarId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    sets: Vec<WorldSet>,
}

impl Evaluation {
    pub fn new(sets: Vec<WorldSet>) -> Evaluation {
        Evaluation { sets }
    }

    /// Starts from all-empty extensions.
    pub fn empty(n_vars: usize, n_worlds: usize) -> Evaluation {
        Evaluation { sets: vec![WorldSet::empty(n_worlds); n_vars] }
    }

    pub fn n_vars(&self) -> usize {
        self.sets.len()
    }

    pub fn var(&self, v: VarId) -> &WorldSet {
        &self.sets[v.0 as usize]
    }

    pub fn set_var(&mut self, v: VarId, worlds: WorldSet) {
        self.sets[v.0 as usize] = worlds;
    }

    /// The membership profile of one world across all variables, as a bit
    /// vector (bit `j` = world is in the extension of variable `j`).
    fn profile(&self, w: usize) -> u64 {
        assert!(self.sets.len() <= 64);
        self.sets
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, s)| acc | (u64::from(s.contains(w)) << j))
    }
}

/// One evaluation-law violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalViolation {
    /// No variable separates the two distinct worlds.
    NotSeparated { u: usize, v: usize },
    /// A sorted variable's extension is not a cylinder over its component.
    NotCylinder { var: VarId },
    /// An unsorted variable cuts through a cell of the sorted-variable
    /// algebra.
    NotInSortedAlgebra { var: VarId, u: usize, v: usize },
}

impl fmt::Display for EvalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalViolation::NotSeparated { u, v } => {
                write!(f, "no variable separates worlds #{u} and #{v}")
            }
            EvalViolation::NotCylinder { var } => {
                write!(f, "variable #{} is not interpreted by a cylinder", var.0)
            }
            EvalViolation::NotInSortedAlgebra { var, u, v } => write!(
                f,
                "unsorted variable #{} cuts through the sorted cell of worlds #{u} and #{v}",
                var.0
            ),
        }
    }
}

/// Errors raised while assembling or using models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemanticsError {
    #[error("the {variant} variant needs a {expected} space, got a {got} space")]
    SpaceShape { variant: Variant, expected: &'static str, got: &'static str },
    #[error("the space and the context use different grade scales")]
    ScaleMismatch,
    #[error("expected {expected} components (one per sort), got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("expected extensions for {expected} variables, got {got}")]
    VarCount { expected: usize, got: usize },
    #[error("extension of variable #{var} ranges over {got} worlds, space has {expected}")]
    UniverseMismatch { var: u32, expected: usize, got: usize },
    #[error("more than 64 variables are not supported in models")]
    TooManyVars,
    #[error("evaluation laws violated: {}", list_violations(.0))]
    InvalidEvaluation(Vec<EvalViolation>),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

fn list_violations(violations: &[EvalViolation]) -> String {
    let shown: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
    let mut text = shown.join("; ");
    if violations.len() > 4 {
        text.push_str(&format!("; … plus {} more", violations.len() - 4));
    }
    text
}

/// A logic context, a space of the matching shape, and a valid evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    ctx: LogicCtx,
    space: Space,
    eval: Evaluation,
}

impl Model {
    /// Assembles and fully validates a model.
    pub fn new(ctx: LogicCtx, space: Space, eval: Evaluation) -> Result<Model, SemanticsError> {
        let expected = match ctx.variant {
            Variant::Lae => "plain",
            Variant::Laec => "chain",
            Variant::Laepc => "product",
        };
        if space.kind_name() != expected {
            return Err(SemanticsError::SpaceShape {
                variant: ctx.variant,
                expected,
                got: space.kind_name(),
            });
        }
        if space.scale() != &ctx.scale {
            return Err(SemanticsError::ScaleMismatch);
        }
        if let (Variant::Laepc, Space::Product(p)) = (ctx.variant, &space) {
            if p.components().len() != ctx.sig.n_sorts() {
                return Err(SemanticsError::ComponentCount {
                    expected: ctx.sig.n_sorts(),
                    got: p.components().len(),
                });
            }
        }
        if eval.n_vars() != ctx.sig.n_vars() {
            return Err(SemanticsError::VarCount {
                expected: ctx.sig.n_vars(),
                got: eval.n_vars(),
            });
        }
        if eval.n_vars() > 64 {
            return Err(SemanticsError::TooManyVars);
        }
        for v in ctx.sig.vars() {
            let got = eval.var(v).universe();
            if got != space.n_worlds() {
                return Err(SemanticsError::UniverseMismatch {
                    var: v.0,
                    expected: space.n_worlds(),
                    got,
                });
            }
        }
        let model = Model { ctx, space, eval };
        let violations = model.violations();
        if violations.is_empty() {
            Ok(model)
        } else {
            Err(SemanticsError::InvalidEvaluation(violations))
        }
    }

    /// All evaluation-law violations (empty when the model is valid).
    pub fn violations(&self) -> Vec<EvalViolation> {
        let mut out = Vec::new();
        let n = self.space.n_worlds();
        if let Space::Product(p) = &self.space {
            // Cylinder condition for sorted variables.
            for v in self.ctx.sig.vars() {
                if let Some(sort) = self.ctx.sig.sort_of(v) {
                    let ext = self.eval.var(v);
                    let component = &p.components()[sort.0 as usize];
                    let mut projection = WorldSet::empty(component.n_worlds());
                    for w in ext.iter() {
                        projection.insert(p.tuple_of(w)[sort.0 as usize]);
                    }
                    if &p.cylinder(sort.0 as usize, &projection) != ext {
                        out.push(EvalViolation::NotCylinder { var: v });
                    }
                }
            }
            // Unsorted variables must not cut through cells of the
            // sorted-variable algebra (worlds with equal profiles across the
            // sorted variables).
            let sorted_vars: Vec<VarId> = self.ctx.sig.sorted_vars().collect();
            let sorted_profile = |w: usize| {
                sorted_vars
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, v)| {
                        acc | (u64::from(self.eval.var(*v).contains(w)) << j)
                    })
            };
            for u in 0..n {
                for v in u + 1..n {
                    if sorted_profile(u) == sorted_profile(v) {
                        for a in self.ctx.sig.unsorted_vars() {
                            if self.eval.var(a).contains(u) != self.eval.var(a).contains(v) {
                                out.push(EvalViolation::NotInSortedAlgebra { var: a, u, v });
                            }
                        }
                    }
                }
            }
        }
        // Separation by (any) variables, in every variant.
        for u in 0..n {
            for v in u + 1..n {
                if self.eval.profile(u) == self.eval.profile(v) {
                    out.push(EvalViolation::NotSeparated { u, v });
                }
            }
        }
        out
    }

    pub fn ctx(&self) -> &LogicCtx {
        &self.ctx
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn eval(&self) -> &Evaluation {
        &self.eval
    }

    pub fn n_worlds(&self) -> usize {
        self.space.n_worlds()
    }

    /// The extension of a basic expression, computed compositionally.
    pub fn extension(&self, e: &BasicExpr) -> Result<WorldSet, SemanticsError> {
        e.validate(&self.ctx)?;
        Ok(self.extension_unchecked(e))
    }

    fn extension_unchecked(&self, e: &BasicExpr) -> WorldSet {
        let n = self.n_worlds();
        match e {
            BasicExpr::Bot => WorldSet::empty(n),
            BasicExpr::Top => WorldSet::full(n),
            BasicExpr::Var(v) => self.eval.var(*v).clone(),
            BasicExpr::Not(inner) => self.extension_unchecked(inner).complement(),
            BasicExpr::And(l, r) => {
                self.extension_unchecked(l).intersect(&self.extension_unchecked(r))
            }
            BasicExpr::Or(l, r) => {
                self.extension_unchecked(l).union(&self.extension_unchecked(r))
            }
            BasicExpr::Diamond(dir, inner) => {
                let inner = self.extension_unchecked(inner);
                self.space
                    .closure(*dir, &inner)
                    .expect("diamond in a plain space rejected by validation")
            }
        }
    }

    /// Does every `lhs`-world lie within grade-`c` similarity of the `rhs`
    /// extension?
    pub fn satisfies_implication(&self, gi: &GradedImplication) -> Result<bool, SemanticsError> {
        gi.validate(&self.ctx)?;
        let lhs = self.extension_unchecked(&gi.lhs);
        let rhs = self.extension_unchecked(&gi.rhs);
        Ok(lhs.is_subset(&self.space.neighborhood(gi.grade, &rhs)))
    }

    /// Classical satisfaction of an outer formula.
    pub fn satisfies(&self, f: &OuterFormula) -> Result<bool, SemanticsError> {
        f.validate(&self.ctx)?;
        self.sat_outer(f)
    }

    fn sat_outer(&self, f: &OuterFormula) -> Result<bool, SemanticsError> {
        Ok(match f {
            OuterFormula::Atom(gi) => {
                let lhs = self.extension_unchecked(&gi.lhs);
                let rhs = self.extension_unchecked(&gi.rhs);
                lhs.is_subset(&self.space.neighborhood(gi.grade, &rhs))
            }
            OuterFormula::Not(inner) => !self.sat_outer(inner)?,
            OuterFormula::And(l, r) => self.sat_outer(l)? && self.sat_outer(r)?,
            OuterFormula::Or(l, r) => self.sat_outer(l)? || self.sat_outer(r)?,
            OuterFormula::Implies(l, r) => !self.sat_outer(l)? || self.sat_outer(r)?,
            OuterFormula::Iff(l, r) => self.sat_outer(l)? == self.sat_outer(r)?,
        })
    }

    /// Satisfaction of every formula of a theory.
    pub fn satisfies_all(&self, theory: &[OuterFormula]) -> Result<bool, SemanticsError> {
        for f in theory {
            if !self.satisfies(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The highest grade `c` for which `lhs =>{c} rhs` holds — the exact
    /// strength of the connection, if any (`None` means not even grade 0,
    /// i.e. some `lhs`-world sees no `rhs`-world at all: `rhs` is empty
    /// while `lhs` is not).
    pub fn implication_strength(
        &self,
        lhs: &BasicExpr,
        rhs: &BasicExpr,
    ) -> Result<Option<Grade>, SemanticsError> {
        lhs.validate(&self.ctx)?;
        rhs.validate(&self.ctx)?;
        let le = self.extension_unchecked(lhs);
        let re = self.extension_unchecked(rhs);
        let mut best: Option<Grade> = None;
        for w in le.iter() {
            match self.space.base().max_sim_into(w, &re) {
                None => return Ok(None),
                Some(g) => best = Some(best.map_or(g, |b| b.min(g))),
            }
        }
        match best {
            Some(g) => Ok(Some(g)),
            // Empty lhs: the implication holds vacuously at every grade.
            None => Ok(Some(self.ctx.scale.top())),
        }
    }
}
